//! Two-sided ideals as explicit element subsets, with ideal algebra.

use std::sync::Arc;

use thiserror::Error;

use crate::ring::RingTable;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("ideals live over different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("element index {0} is not an element of {1}")]
    UnknownElement(u8, String),
}

/// A two-sided ideal given by its full member set. Always contains 0 and
/// is closed under addition, negation, and multiplication by arbitrary
/// ring elements on both sides. Immutable after construction.
#[derive(Debug, Clone)]
pub struct IdealSet {
    ring: Arc<RingTable>,
    gens: Vec<u8>,
    members: Vec<u8>,
    mask: [u64; 4],
}

impl PartialEq for IdealSet {
    fn eq(&self, other: &Self) -> bool {
        self.ring.fingerprint() == other.ring.fingerprint() && self.members == other.members
    }
}
impl Eq for IdealSet {}

impl IdealSet {
    pub(crate) fn from_members(ring: Arc<RingTable>, mut members: Vec<u8>) -> IdealSet {
        members.sort_unstable();
        members.dedup();
        let mut mask = [0u64; 4];
        for &m in &members {
            mask[(m >> 6) as usize] |= 1u64 << (m & 63);
        }
        IdealSet {
            ring,
            gens: members.clone(),
            members,
            mask,
        }
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    /// The generator list this ideal was built from (members themselves
    /// when it was produced by lattice enumeration or ideal algebra).
    pub fn generators(&self) -> &[u8] {
        &self.gens
    }

    /// Sorted member indices, always starting with 0.
    pub fn members(&self) -> &[u8] {
        &self.members
    }

    #[inline(always)]
    pub fn contains(&self, x: u8) -> bool {
        self.mask[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.members.len() == self.ring.order()
    }

    /// Member names, sorted by element index.
    pub fn member_names(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&m| self.ring.name(m).to_string())
            .collect()
    }

    /// `(g1,g2,...)` over the generator names; `(0)` for the zero ideal.
    pub fn render(&self) -> String {
        let nonzero: Vec<&str> = self
            .gens
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| self.ring.name(g))
            .collect();
        if nonzero.is_empty() {
            "(0)".to_string()
        } else {
            format!("({})", nonzero.join(","))
        }
    }

    fn check_same_ring(&self, other: &IdealSet) -> Result<(), IdealError> {
        if self.ring.fingerprint() != other.ring.fingerprint() {
            return Err(IdealError::RingMismatch(
                self.ring.fingerprint().to_string(),
                other.ring.fingerprint().to_string(),
            ));
        }
        Ok(())
    }
}

/// Smallest two-sided ideal containing `gens`: the closure of
/// `gens ∪ {0}` under addition, negation, and two-sided multiplication,
/// computed by fixed-point iteration. Always terminates on finite rings.
pub fn ideal_generate(ring: &Arc<RingTable>, gens: &[u8]) -> Result<IdealSet, IdealError> {
    let order = ring.order();
    for &g in gens {
        if g as usize >= order {
            return Err(IdealError::UnknownElement(g, ring.fingerprint().to_string()));
        }
    }
    let mut in_set = vec![false; order];
    let mut members: Vec<u8> = Vec::new();
    let mut queue: Vec<u8> = Vec::new();
    let push = |x: u8, in_set: &mut Vec<bool>, members: &mut Vec<u8>, queue: &mut Vec<u8>| {
        if !in_set[x as usize] {
            in_set[x as usize] = true;
            members.push(x);
            queue.push(x);
        }
    };
    push(0, &mut in_set, &mut members, &mut queue);
    for &g in gens {
        push(g, &mut in_set, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop() {
        push(ring.neg(x), &mut in_set, &mut members, &mut queue);
        // sums with everything present so far; later arrivals pick up x
        // from their own turn in the worklist
        let snapshot = members.clone();
        for s in snapshot {
            push(ring.add(x, s), &mut in_set, &mut members, &mut queue);
        }
        for r in ring.elements() {
            push(ring.mul(r, x), &mut in_set, &mut members, &mut queue);
            push(ring.mul(x, r), &mut in_set, &mut members, &mut queue);
        }
    }
    let mut ideal = IdealSet::from_members(ring.clone(), members);
    let mut gens_dedup: Vec<u8> = Vec::new();
    for &g in gens {
        if !gens_dedup.contains(&g) {
            gens_dedup.push(g);
        }
    }
    ideal.gens = gens_dedup;
    Ok(ideal)
}

/// `I + J`: the ideal generated by the union.
pub fn ideal_sum(i: &IdealSet, j: &IdealSet) -> Result<IdealSet, IdealError> {
    i.check_same_ring(j)?;
    let mut gens: Vec<u8> = i.members().to_vec();
    gens.extend_from_slice(j.members());
    ideal_generate(i.ring(), &gens)
}

/// `IJ`: the ideal generated by all products `a*b`, `a` in `I`, `b` in `J`.
pub fn ideal_product(i: &IdealSet, j: &IdealSet) -> Result<IdealSet, IdealError> {
    i.check_same_ring(j)?;
    let ring = i.ring();
    let mut gens = Vec::new();
    for &a in i.members() {
        for &b in j.members() {
            gens.push(ring.mul(a, b));
        }
    }
    ideal_generate(ring, &gens)
}

/// The symmetrized product `IJ + JI`.
pub fn sym_product(i: &IdealSet, j: &IdealSet) -> Result<IdealSet, IdealError> {
    let ij = ideal_product(i, j)?;
    let ji = ideal_product(j, i)?;
    ideal_sum(&ij, &ji)
}
