//! Finite subgroup computation driven by generator lists: breadth-first
//! closure, normal closure, relative elementary and congruence subgroups,
//! mixed commutator subgroups, and exact subgroup comparison.
//!
//! Subgroups are held as hashed sets of packing keys plus a carried
//! generating list. Closures accept generators greedily: a generator
//! already inside the current closure is skipped, and every accepted one
//! at least doubles the subgroup, so carried lists stay logarithmic in
//! the subgroup order. Commutator subgroups then only need generator-pair
//! commutators as seeds, never full pairwise products.
//!
//! All results are set-deterministic: the final member set and the
//! accepted generator list depend only on the (deterministic) input
//! order, never on hash iteration order.

use std::sync::{Arc, Mutex};

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::ideal::IdealSet;
use crate::mat::{
    elementary_level_generators, gl_generators, suslin_generators, Entries, Mat, MatError,
    MatSpace,
};
use crate::ring::RingTable;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("member cap exceeded while computing {label}: {partial} members reached (cap {cap})")]
    MemberCapExceeded {
        label: String,
        partial: usize,
        cap: usize,
    },
    #[error("congruence enumeration needs {required} candidates, cap is {cap}")]
    EnumCapExceeded { required: u128, cap: u64 },
    #[error("generator is not invertible: {0}")]
    GeneratorNotInvertible(String),
    #[error("group sets live over different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("group sets have different dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("members of {0} are not materialized")]
    MembersNotMaterialized(String),
    #[error("cross-check failed for {0}: the two construction routes disagree")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Ideal(#[from] crate::ideal::IdealError),
}

/// Engine limits. `member_cap` bounds any materialized subgroup;
/// `enum_cap` bounds direct congruence enumeration. `cross_check`
/// additionally recomputes relative elementary subgroups through their
/// normal-closure definition and congruence subgroups through the
/// generator route, asserting set equality.
#[derive(Debug, Clone)]
pub struct Caps {
    pub member_cap: usize,
    pub enum_cap: u64,
    pub cross_check: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            member_cap: 1 << 24,
            enum_cap: 1 << 20,
            cross_check: false,
        }
    }
}

/// A finite subgroup of `GL_n(A)`: a hashed member-key set (possibly not
/// yet materialized), a generating list, and a provenance label.
#[derive(Debug, Clone)]
pub struct GroupSet {
    space: MatSpace,
    members: Option<Arc<FxHashSet<u128>>>,
    generators: Vec<Mat>,
    label: String,
}

impl GroupSet {
    pub fn from_generators(
        ring: &Arc<RingTable>,
        n: usize,
        generators: Vec<Mat>,
        label: impl Into<String>,
    ) -> Result<GroupSet, EngineError> {
        let space = MatSpace::new(ring.clone(), n)?;
        for g in &generators {
            if g.ring().fingerprint() != ring.fingerprint() {
                return Err(EngineError::RingMismatch(
                    g.ring().fingerprint().to_string(),
                    ring.fingerprint().to_string(),
                ));
            }
            if g.n() != n {
                return Err(EngineError::DimensionMismatch(g.n(), n));
            }
        }
        Ok(GroupSet {
            space,
            members: None,
            generators,
            label: label.into(),
        })
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        self.space.ring()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn is_materialized(&self) -> bool {
        self.members.is_some()
    }

    /// Member count; requires materialized members.
    pub fn order(&self) -> Option<usize> {
        self.members.as_ref().map(|m| m.len())
    }

    pub fn is_trivial(&self) -> Option<bool> {
        self.order().map(|o| o == 1)
    }

    pub fn contains(&self, mat: &Mat) -> Option<bool> {
        self.members.as_ref().map(|m| m.contains(&mat.key()))
    }

    pub fn member_keys(&self) -> Option<&FxHashSet<u128>> {
        self.members.as_deref()
    }

    /// Member keys in ascending order.
    pub fn sorted_keys(&self) -> Option<Vec<u128>> {
        self.members.as_ref().map(|m| {
            let mut keys: Vec<u128> = m.iter().copied().collect();
            keys.sort_unstable();
            keys
        })
    }

    /// Materialized members as matrices, ascending by key.
    pub fn member_mats(&self) -> Option<Vec<Mat>> {
        let keys = self.sorted_keys()?;
        Some(
            keys.into_iter()
                .map(|k| self.space.mat(self.space.unpack(k)))
                .collect(),
        )
    }

    fn require_members(&self) -> Result<&FxHashSet<u128>, EngineError> {
        self.members
            .as_deref()
            .ok_or_else(|| EngineError::MembersNotMaterialized(self.label.clone()))
    }

    fn check_comparable(&self, other: &GroupSet) -> Result<(), EngineError> {
        if self.ring().fingerprint() != other.ring().fingerprint() {
            return Err(EngineError::RingMismatch(
                self.ring().fingerprint().to_string(),
                other.ring().fingerprint().to_string(),
            ));
        }
        if self.n() != other.n() {
            return Err(EngineError::DimensionMismatch(self.n(), other.n()));
        }
        Ok(())
    }
}

/// Breadth-first subgroup closure state. Members are tracked both as a
/// key set and as an insertion-ordered entry list so frontier expansion
/// never depends on hash iteration order for anything but speed.
struct Bfs<'a> {
    space: &'a MatSpace,
    cap: usize,
    set: FxHashSet<u128>,
    list: Vec<Entries>,
    accepted: Vec<Entries>,
    gen_pairs: Vec<(Entries, Entries)>,
}

impl<'a> Bfs<'a> {
    fn new(space: &'a MatSpace, cap: usize) -> Bfs<'a> {
        let id = space.identity();
        let mut set = FxHashSet::default();
        set.insert(space.key(&id));
        Bfs {
            space,
            cap,
            set,
            list: vec![id],
            accepted: Vec::new(),
            gen_pairs: Vec::new(),
        }
    }

    #[inline]
    fn insert(&mut self, e: Entries) -> Result<bool, EngineError> {
        if self.set.insert(self.space.key(&e)) {
            if self.set.len() > self.cap {
                return Err(EngineError::MemberCapExceeded {
                    label: String::new(),
                    partial: self.set.len(),
                    cap: self.cap,
                });
            }
            self.list.push(e);
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Adds `g` as a generator unless it already lies in the closure.
    /// Returns whether it was accepted. On acceptance the member set is
    /// extended to the closure of the enlarged generating list.
    fn try_add_generator(&mut self, g: Entries) -> Result<bool, EngineError> {
        if self.set.contains(&self.space.key(&g)) {
            return Ok(false);
        }
        let gi = self.space.inverse(&g).ok_or_else(|| {
            EngineError::GeneratorNotInvertible(self.space.mat(g).render())
        })?;
        self.accepted.push(g);
        self.gen_pairs.push((g, gi));
        // Existing members only need products with the new generator;
        // everything discovered after that expands under the full list.
        let snapshot = self.list.len();
        for idx in 0..snapshot {
            let x = self.list[idx];
            self.insert(self.space.mul(&x, &g))?;
            if gi != g {
                self.insert(self.space.mul(&x, &gi))?;
            }
        }
        let mut qi = snapshot;
        while qi < self.list.len() {
            let x = self.list[qi];
            qi += 1;
            for pair_idx in 0..self.gen_pairs.len() {
                let (h, hi) = self.gen_pairs[pair_idx];
                self.insert(self.space.mul(&x, &h))?;
                if hi != h {
                    self.insert(self.space.mul(&x, &hi))?;
                }
            }
        }
        Ok(true)
    }

    fn into_group(self, label: String) -> GroupSet {
        let generators = self
            .accepted
            .iter()
            .map(|&e| self.space.mat(e))
            .collect();
        GroupSet {
            space: self.space.clone(),
            members: Some(Arc::new(self.set)),
            generators,
            label,
        }
    }
}

fn label_err(err: EngineError, label: &str) -> EngineError {
    match err {
        EngineError::MemberCapExceeded { partial, cap, .. } => EngineError::MemberCapExceeded {
            label: label.to_string(),
            partial,
            cap,
        },
        other => other,
    }
}

type SlotCacheKey = (String, Vec<u8>, usize, u8);

/// Subgroup computation engine; holds the caps and provides closure,
/// normal closure, commutator, enumeration, and comparison operations.
/// Relative elementary and congruence subgroups are cached per
/// `(ring, ideal, n)`, so repeated slot realizations are free.
#[derive(Debug, Default)]
pub struct Engine {
    pub caps: Caps,
    slot_cache: Mutex<FxHashMap<SlotCacheKey, GroupSet>>,
}

impl Engine {
    pub fn new(caps: Caps) -> Engine {
        Engine {
            caps,
            slot_cache: Mutex::default(),
        }
    }

    fn cached(
        &self,
        key: SlotCacheKey,
        build: impl FnOnce() -> Result<GroupSet, EngineError>,
    ) -> Result<GroupSet, EngineError> {
        if let Some(hit) = self.slot_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let built = build()?;
        self.slot_cache
            .lock()
            .unwrap()
            .insert(key, built.clone());
        Ok(built)
    }

    fn space(&self, ring: &Arc<RingTable>, n: usize) -> Result<MatSpace, EngineError> {
        Ok(MatSpace::new(ring.clone(), n)?)
    }

    /// Closure of a generator list; the empty list yields the trivial
    /// group. The carried generating list of the result is the greedy
    /// subset of the input that was actually needed.
    pub fn closure(
        &self,
        ring: &Arc<RingTable>,
        n: usize,
        gens: &[Mat],
        label: impl Into<String>,
    ) -> Result<GroupSet, EngineError> {
        let label = label.into();
        let space = self.space(ring, n)?;
        let mut bfs = Bfs::new(&space, self.caps.member_cap);
        for g in gens {
            bfs.try_add_generator(*g.entries())
                .map_err(|e| label_err(e, &label))?;
        }
        Ok(bfs.into_group(label))
    }

    /// Smallest subgroup containing `seed` that is closed under
    /// conjugation by the ambient generators and their inverses.
    pub fn normal_closure(
        &self,
        ring: &Arc<RingTable>,
        n: usize,
        seed: &[Mat],
        ambient: &[Mat],
        label: impl Into<String>,
    ) -> Result<GroupSet, EngineError> {
        let label = label.into();
        let space = self.space(ring, n)?;
        let seed_entries: Vec<Entries> = seed.iter().map(|m| *m.entries()).collect();
        let ambient_entries: Vec<Entries> = ambient.iter().map(|m| *m.entries()).collect();
        let bfs = self
            .normal_closure_impl(&space, seed_entries, &ambient_entries)
            .map_err(|e| label_err(e, &label))?;
        Ok(bfs.into_group(label))
    }

    fn normal_closure_impl<'a>(
        &self,
        space: &'a MatSpace,
        seed: Vec<Entries>,
        ambient: &[Entries],
    ) -> Result<Bfs<'a>, EngineError> {
        let mut bfs = Bfs::new(space, self.caps.member_cap);
        for s in seed {
            bfs.try_add_generator(s)?;
        }
        let mut amb_pairs: Vec<(Entries, Entries)> = Vec::new();
        let mut seen = FxHashSet::default();
        for a in ambient {
            if seen.insert(space.key(a)) && !space.is_identity(a) {
                let ai = space.inverse(a).ok_or_else(|| {
                    EngineError::GeneratorNotInvertible(space.mat(*a).render())
                })?;
                amb_pairs.push((*a, ai));
            }
        }
        // Conjugating every accepted generator into the set suffices:
        // conjugation by a fixed element is a homomorphism, so ^a S = S
        // follows for the whole subgroup. Membership only grows, so no
        // re-sweeping is needed.
        let mut worklist: Vec<Entries> = bfs.accepted.clone();
        let mut qi = 0;
        while qi < worklist.len() {
            let g = worklist[qi];
            qi += 1;
            for &(a, ai) in &amb_pairs {
                let c = space.mul(&space.mul(&a, &g), &ai);
                if bfs.try_add_generator(c)? {
                    worklist.push(c);
                }
                let c = space.mul(&space.mul(&ai, &g), &a);
                if bfs.try_add_generator(c)? {
                    worklist.push(c);
                }
            }
        }
        Ok(bfs)
    }

    /// The mixed commutator subgroup `[H, K]`: the normal closure of the
    /// generator-pair commutators under the combined generator lists.
    pub fn commutator_subgroup(
        &self,
        h: &GroupSet,
        k: &GroupSet,
    ) -> Result<GroupSet, EngineError> {
        h.check_comparable(k)?;
        let label = format!("[{},{}]", h.label, k.label);
        let space = h.space.clone();
        let h_pairs: Vec<(Entries, Entries)> = h
            .generators
            .iter()
            .map(|m| {
                let e = *m.entries();
                space
                    .inverse(&e)
                    .map(|ei| (e, ei))
                    .ok_or_else(|| EngineError::GeneratorNotInvertible(m.render()))
            })
            .collect::<Result<_, _>>()?;
        let k_pairs: Vec<(Entries, Entries)> = k
            .generators
            .iter()
            .map(|m| {
                let e = *m.entries();
                space
                    .inverse(&e)
                    .map(|ei| (e, ei))
                    .ok_or_else(|| EngineError::GeneratorNotInvertible(m.render()))
            })
            .collect::<Result<_, _>>()?;
        let mut seed = Vec::with_capacity(h_pairs.len() * k_pairs.len());
        for &(x, xi) in &h_pairs {
            for &(y, yi) in &k_pairs {
                let comm = space.mul(&space.mul(&space.mul(&x, &y), &xi), &yi);
                seed.push(comm);
            }
        }
        let mut ambient: Vec<Entries> =
            h.generators.iter().map(|m| *m.entries()).collect();
        ambient.extend(k.generators.iter().map(|m| *m.entries()));
        let bfs = self
            .normal_closure_impl(&space, seed, &ambient)
            .map_err(|e| label_err(e, &label))?;
        Ok(bfs.into_group(label))
    }

    /// The relative elementary subgroup `E_n(A, I)` as the closure of the
    /// Suslin generators. With `cross_check` enabled the normal-closure
    /// definition is recomputed and compared.
    pub fn relative_elementary(
        &self,
        ideal: &IdealSet,
        n: usize,
    ) -> Result<GroupSet, EngineError> {
        let ring = ideal.ring();
        let key = (
            ring.fingerprint().to_string(),
            ideal.members().to_vec(),
            n,
            0u8,
        );
        self.cached(key, || {
            let label = format!("E({},{})", ring.fingerprint(), ideal.render());
            let gens: Vec<Mat> = suslin_generators(ideal, n)?
                .into_iter()
                .map(|d| d.into_mat())
                .collect();
            let group = self.closure(ring, n, &gens, label.clone())?;
            if self.caps.cross_check {
                let nc = self.relative_elementary_by_normal_closure(ideal, n)?;
                if !self.subgroup_equal(&group, &nc)? {
                    return Err(EngineError::CrossCheckFailed(label));
                }
            }
            Ok(group)
        })
    }

    /// `E_n(A, I)` through its definition: the normal closure of the
    /// level-`I` elementary matrices inside `E_n(A)`.
    pub fn relative_elementary_by_normal_closure(
        &self,
        ideal: &IdealSet,
        n: usize,
    ) -> Result<GroupSet, EngineError> {
        let ring = ideal.ring();
        let unit_ideal = crate::ideal::ideal_generate(ring, &[ring.one()])?;
        let seed: Vec<Mat> = elementary_level_generators(ideal, n)?
            .into_iter()
            .map(|d| d.into_mat())
            .collect();
        let ambient: Vec<Mat> = elementary_level_generators(&unit_ideal, n)?
            .into_iter()
            .map(|d| d.into_mat())
            .collect();
        let label = format!("NC(E({}),E({}))", ideal.render(), ring.fingerprint());
        self.normal_closure(ring, n, &seed, &ambient, label)
    }

    /// The full elementary subgroup `E_n(A)`.
    pub fn full_elementary(
        &self,
        ring: &Arc<RingTable>,
        n: usize,
    ) -> Result<GroupSet, EngineError> {
        let unit_ideal = crate::ideal::ideal_generate(ring, &[ring.one()])?;
        let gens: Vec<Mat> = elementary_level_generators(&unit_ideal, n)?
            .into_iter()
            .map(|d| d.into_mat())
            .collect();
        self.closure(ring, n, &gens, format!("E({})", ring.fingerprint()))
    }

    /// The congruence subgroup `GL_n(A, I)` by direct enumeration of all
    /// matrices congruent to the identity modulo `I`, filtered by
    /// invertibility. The result carries a reduced generating list
    /// extracted greedily from the member set in key order.
    pub fn congruence_members(
        &self,
        ideal: &IdealSet,
        n: usize,
    ) -> Result<GroupSet, EngineError> {
        let key = (
            ideal.ring().fingerprint().to_string(),
            ideal.members().to_vec(),
            n,
            1u8,
        );
        self.cached(key, || self.congruence_members_uncached(ideal, n))
    }

    fn congruence_members_uncached(
        &self,
        ideal: &IdealSet,
        n: usize,
    ) -> Result<GroupSet, EngineError> {
        let ring = ideal.ring();
        let label = format!("GL({},{})", ring.fingerprint(), ideal.render());
        let space = self.space(ring, n)?;
        let nn = n * n;
        let isize = ideal.members().len() as u128;
        let required = isize.pow(nn as u32);
        if required > self.caps.enum_cap as u128 {
            return Err(EngineError::EnumCapExceeded {
                required,
                cap: self.caps.enum_cap,
            });
        }
        let commutative = ring.is_commutative();
        let diag: Vec<u8> = ideal.members().iter().map(|&m| ring.add(ring.one(), m)).collect();
        let off: Vec<u8> = ideal.members().to_vec();
        let lists: Vec<&[u8]> = (0..nn)
            .map(|p| {
                if p % n == p / n {
                    diag.as_slice()
                } else {
                    off.as_slice()
                }
            })
            .collect();
        let mut set = FxHashSet::default();
        let mut digits = vec![0usize; nn];
        let mut entries = [0u8; 16];
        for (p, list) in lists.iter().enumerate() {
            entries[p] = list[0];
        }
        loop {
            let invertible = if commutative {
                ring.is_unit(space.det(&entries))
            } else {
                space.kernel_invertible(&entries)
            };
            if invertible {
                set.insert(space.key(&entries));
            }
            // odometer over the candidate entry lists
            let mut pos = 0;
            loop {
                if pos == nn {
                    let group = self.finish_enumerated(space, set, label)?;
                    if self.caps.cross_check {
                        self.cross_check_congruence(ideal, n, &group)?;
                    }
                    return Ok(group);
                }
                digits[pos] += 1;
                if digits[pos] < lists[pos].len() {
                    entries[pos] = lists[pos][digits[pos]];
                    break;
                }
                digits[pos] = 0;
                entries[pos] = lists[pos][0];
                pos += 1;
            }
        }
    }

    fn finish_enumerated(
        &self,
        space: MatSpace,
        set: FxHashSet<u128>,
        label: String,
    ) -> Result<GroupSet, EngineError> {
        let mut keys: Vec<u128> = set.iter().copied().collect();
        keys.sort_unstable();
        self.verify_enumerated_closure(&space, &set, &keys, &label)?;
        let generators = self.reduce_generators(&space, &keys)?;
        Ok(GroupSet {
            space,
            members: Some(Arc::new(set)),
            generators,
            label,
        })
    }

    /// Checks that an enumerated set is closed under products and
    /// inverses: exhaustively at small scale, on deterministic samples
    /// above it.
    fn verify_enumerated_closure(
        &self,
        space: &MatSpace,
        set: &FxHashSet<u128>,
        keys: &[u128],
        label: &str,
    ) -> Result<(), EngineError> {
        let size = keys.len();
        let fail = || EngineError::CrossCheckFailed(format!("{label} closure verification"));
        let check_inverse = |k: u128| -> Result<(), EngineError> {
            let e = space.unpack(k);
            let inv = space.inverse(&e).ok_or_else(fail)?;
            if !set.contains(&space.key(&inv)) {
                return Err(fail());
            }
            Ok(())
        };
        let check_product = |a: u128, b: u128| -> Result<(), EngineError> {
            let p = space.mul(&space.unpack(a), &space.unpack(b));
            if !set.contains(&space.key(&p)) {
                return Err(fail());
            }
            Ok(())
        };
        if size <= 1 << 16 {
            for &k in keys {
                check_inverse(k)?;
            }
        }
        if size <= 1 << 9 {
            for &a in keys {
                for &b in keys {
                    check_product(a, b)?;
                }
            }
        } else {
            let mut state = 0x2545f4914f6cdd1du64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state as usize
            };
            for _ in 0..4096 {
                let a = keys[next() % size];
                let b = keys[next() % size];
                check_product(a, b)?;
                if size > 1 << 16 {
                    check_inverse(keys[next() % size])?;
                }
            }
        }
        Ok(())
    }

    fn cross_check_congruence(
        &self,
        ideal: &IdealSet,
        n: usize,
        enumerated: &GroupSet,
    ) -> Result<(), EngineError> {
        let ring = ideal.ring();
        let gens: Vec<Mat> = gl_generators(ideal, n)?
            .into_iter()
            .map(|d| d.into_mat())
            .collect();
        let closed = self.closure(ring, n, &gens, format!("{} via generators", enumerated.label))?;
        if !self.subgroup_equal(enumerated, &closed)? {
            return Err(EngineError::CrossCheckFailed(enumerated.label.clone()));
        }
        Ok(())
    }

    /// Greedy generating list for a known member set, scanning keys in
    /// ascending order.
    fn reduce_generators(
        &self,
        space: &MatSpace,
        sorted_keys: &[u128],
    ) -> Result<Vec<Mat>, EngineError> {
        let mut bfs = Bfs::new(space, self.caps.member_cap);
        for &k in sorted_keys {
            if !bfs.set.contains(&k) {
                bfs.try_add_generator(space.unpack(k))?;
            }
        }
        Ok(bfs.accepted.iter().map(|&e| space.mat(e)).collect())
    }

    /// Materializes the member set of a generator-only group.
    pub fn materialize(&self, gs: &GroupSet) -> Result<GroupSet, EngineError> {
        if gs.is_materialized() {
            return Ok(gs.clone());
        }
        self.closure(gs.ring(), gs.n(), &gs.generators, gs.label.clone())
    }

    /// Exact set equality of two materialized subgroups.
    pub fn subgroup_equal(&self, h: &GroupSet, k: &GroupSet) -> Result<bool, EngineError> {
        h.check_comparable(k)?;
        let hm = h.require_members()?;
        let km = k.require_members()?;
        Ok(hm.len() == km.len() && hm.iter().all(|key| km.contains(key)))
    }

    /// Whether `h` is a subgroup of `k` (as sets, `h ⊆ k`).
    pub fn is_subgroup_of(&self, h: &GroupSet, k: &GroupSet) -> Result<bool, EngineError> {
        h.check_comparable(k)?;
        let hm = h.require_members()?;
        let km = k.require_members()?;
        Ok(hm.len() <= km.len() && hm.iter().all(|key| km.contains(key)))
    }

    /// One element of the symmetric difference, when the sets differ:
    /// the member with the smallest packing key.
    pub fn symmetric_difference_witness(
        &self,
        h: &GroupSet,
        k: &GroupSet,
    ) -> Result<Option<Mat>, EngineError> {
        h.check_comparable(k)?;
        let hm = h.require_members()?;
        let km = k.require_members()?;
        let mut min: Option<u128> = None;
        for &key in hm.iter() {
            if !km.contains(&key) && min.is_none_or(|m| key < m) {
                min = Some(key);
            }
        }
        for &key in km.iter() {
            if !hm.contains(&key) && min.is_none_or(|m| key < m) {
                min = Some(key);
            }
        }
        Ok(min.map(|k| h.space.mat(h.space.unpack(k))))
    }

    /// Structural sanity of a materialized group: identity present,
    /// generators inside, closure under sampled products and inverses.
    pub fn validate_group(&self, gs: &GroupSet) -> Result<(), EngineError> {
        let members = gs.require_members()?;
        let space = &gs.space;
        if !members.contains(&space.key(&space.identity())) {
            return Err(EngineError::CrossCheckFailed(format!(
                "{} missing identity",
                gs.label
            )));
        }
        for g in &gs.generators {
            if !members.contains(&g.key()) {
                return Err(EngineError::CrossCheckFailed(format!(
                    "{} generator outside members",
                    gs.label
                )));
            }
        }
        let mut keys: Vec<u128> = members.iter().copied().collect();
        keys.sort_unstable();
        self.verify_enumerated_closure(space, members, &keys, &gs.label)
    }
}


#[cfg(test)]
mod concurrency_tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn shared_types_are_send_and_sync() {
        assert_send_sync::<crate::ring::RingTable>();
        assert_send_sync::<crate::ideal::IdealSet>();
        assert_send_sync::<crate::mat::Mat>();
        assert_send_sync::<GroupSet>();
        assert_send_sync::<Engine>();
    }

    #[test]
    fn groups_are_shareable_across_threads() {
        let ring = crate::ring::build_ring(&crate::ring::RingSpec::Modular(4)).unwrap();
        let ideal = crate::ideal::ideal_generate(&ring, &[2]).unwrap();
        let engine = std::sync::Arc::new(Engine::default());
        let e = std::sync::Arc::new(engine.relative_elementary(&ideal, 3).unwrap());
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let engine = engine.clone();
                let e = e.clone();
                std::thread::spawn(move || {
                    let c = engine.commutator_subgroup(&e, &e).unwrap();
                    c.sorted_keys().unwrap()
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results[1..] {
            assert_eq!(r, &results[0]);
        }
    }
}
