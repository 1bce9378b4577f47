//! Finite unital rings as explicit operation tables.
//!
//! A [`RingTable`] stores a finite ring by indexing its elements
//! `0..order` with index `0` the zero element and index `1` the identity,
//! together with total addition, multiplication, and negation tables.
//! Rings are described by a [`RingSpec`] and built with [`build_ring`];
//! the supported kinds are residue rings `Z/m`, polynomial quotients
//! `Z/p[x]/(f)` with `f` monic and `p` prime, finite products, and
//! upper-triangular or full matrix rings over a base ring.
//!
//! Element indexing is canonical and deterministic per kind so that
//! packing keys and report output are byte-stable across runs: residues in
//! natural order, polynomial coefficient vectors in little-endian
//! lexicographic order, tuples and matrix entries in lexicographic
//! (row-major) order. For kinds whose lexicographic order does not place
//! the identity at index `1`, the identity is swapped into slot `1` after
//! enumeration.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default cap on the number of ring elements.
pub const DEFAULT_RING_CAP: usize = 64;

/// Hard ceiling implied by `u8` element indices.
pub const MAX_RING_CAP: usize = 255;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    #[error("ring order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("ideal lattice enumeration requires order <= {max}, got {order}")]
    LatticeTooLarge { order: usize, max: usize },
}

/// Description of a finite unital ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    /// Residue ring `Z/m`, `m >= 2`.
    Modular(u64),
    /// `Z/p[x]/(f)` with `p` prime and `f` monic of degree >= 1.
    /// Coefficients are listed in ascending powers and include the leading 1.
    PolyQuotient { p: u64, modulus: Vec<u64> },
    /// Direct product of at least two factors.
    Product(Vec<RingSpec>),
    /// Upper-triangular `k x k` matrices over the base ring, `k >= 2`.
    Triangular { k: usize, base: Box<RingSpec> },
    /// Full `k x k` matrix ring over the base ring, `k >= 2`.
    FullMatrix { k: usize, base: Box<RingSpec> },
}

impl RingSpec {
    /// Product constructor that flattens nested products, so the canonical
    /// rendering re-parses to the same spec.
    pub fn product(factors: Vec<RingSpec>) -> RingSpec {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                RingSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        RingSpec::Product(flat)
    }

    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            RingSpec::Modular(m) => {
                if *m < 2 {
                    return Err(RingError::InvalidSpec(format!(
                        "modulus must be >= 2, got {m} (the zero ring is rejected)"
                    )));
                }
            }
            RingSpec::PolyQuotient { p, modulus } => {
                if *p < 2 || !is_prime(*p) {
                    return Err(RingError::InvalidSpec(format!(
                        "coefficient modulus {p} must be prime"
                    )));
                }
                if modulus.len() < 2 {
                    return Err(RingError::InvalidSpec(
                        "modulus polynomial must have degree >= 1".into(),
                    ));
                }
                if modulus.last().map(|c| c % p) != Some(1) {
                    return Err(RingError::InvalidSpec(
                        "modulus polynomial must be monic".into(),
                    ));
                }
            }
            RingSpec::Product(factors) => {
                if factors.len() < 2 {
                    return Err(RingError::InvalidSpec(
                        "product needs at least two factors".into(),
                    ));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            RingSpec::Triangular { k, base } | RingSpec::FullMatrix { k, base } => {
                if *k < 2 {
                    return Err(RingError::InvalidSpec(format!(
                        "matrix ring size must be >= 2, got {k}"
                    )));
                }
                base.validate()?;
            }
        }
        Ok(())
    }

    /// Canonical text form, matching the spec grammar accepted by the CLI.
    pub fn render(&self) -> String {
        match self {
            RingSpec::Modular(m) => format!("Z/{m}"),
            RingSpec::PolyQuotient { p, modulus } => {
                format!("Z/{p}[x]/({})", render_poly(modulus))
            }
            RingSpec::Product(factors) => factors
                .iter()
                .map(RingSpec::render)
                .collect::<Vec<_>>()
                .join(" x "),
            RingSpec::Triangular { k, base } => format!("UT{k}({})", base.render()),
            RingSpec::FullMatrix { k, base } => format!("M{k}({})", base.render()),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders a coefficient vector (ascending powers) as `c0+c1x+c2x^2+...`,
/// omitting zero terms and unit coefficients.
pub fn render_poly(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = match (k, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}x^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite unital ring realized by indexed elements with exact operation
/// tables. Index 0 is zero and index 1 is one. Immutable after
/// construction and safely shareable across threads.
#[derive(Debug)]
pub struct RingTable {
    spec: RingSpec,
    fingerprint: String,
    order: usize,
    names: Vec<String>,
    /// Extra accepted input names (canonical name is in `names`):
    /// "0", "1", and for matrix kinds the matrix units "Eij".
    aliases: Vec<(String, u8)>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    commutative: bool,
    unit_set: Vec<u8>,
    /// Two-sided inverse per element, where one exists.
    inv: Vec<Option<u8>>,
}

impl PartialEq for RingTable {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}
impl Eq for RingTable {}

impl RingTable {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Canonical spec text; used as the identity of the ring in mismatch
    /// checks and reports.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u8 {
        0
    }

    pub fn one(&self) -> u8 {
        1
    }

    #[inline(always)]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Indices of the two-sided invertible elements, sorted ascending.
    pub fn unit_set(&self) -> &[u8] {
        &self.unit_set
    }

    pub fn is_unit(&self, a: u8) -> bool {
        self.inv[a as usize].is_some()
    }

    /// Two-sided multiplicative inverse, if `a` is a unit.
    pub fn inverse(&self, a: u8) -> Option<u8> {
        self.inv[a as usize]
    }

    pub fn name(&self, a: u8) -> &str {
        &self.names[a as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Resolves an element name, accepting the canonical name or one of the
    /// registered aliases.
    pub fn element_by_name(&self, name: &str) -> Option<u8> {
        let name = name.trim();
        if let Some(idx) = self.names.iter().position(|n| n == name) {
            return Some(idx as u8);
        }
        self.aliases
            .iter()
            .find(|(alias, _)| alias == name)
            .map(|&(_, idx)| idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.order).map(|i| i as u8)
    }
}

/// Intermediate table data before canonical reindexing and validation.
struct RawRing {
    order: usize,
    names: Vec<String>,
    aliases: Vec<(String, u8)>,
    add: Vec<u8>,
    mul: Vec<u8>,
    one: usize,
}

/// Builds the ring described by `spec` under the default element cap.
pub fn build_ring(spec: &RingSpec) -> Result<Arc<RingTable>, RingError> {
    build_ring_with_cap(spec, DEFAULT_RING_CAP)
}

/// Builds the ring described by `spec`, rejecting results with more than
/// `cap` elements. `cap` itself is clamped to [`MAX_RING_CAP`].
pub fn build_ring_with_cap(spec: &RingSpec, cap: usize) -> Result<Arc<RingTable>, RingError> {
    spec.validate()?;
    let cap = cap.min(MAX_RING_CAP);
    let order = spec_order(spec).ok_or_else(|| RingError::InvalidSpec("order overflow".into()))?;
    if order > cap {
        return Err(RingError::CapExceeded { order, cap });
    }
    let mut raw = build_raw(spec, cap)?;
    canonicalize(&mut raw);
    finish(spec.clone(), raw)
}

fn spec_order(spec: &RingSpec) -> Option<usize> {
    match spec {
        RingSpec::Modular(m) => usize::try_from(*m).ok(),
        RingSpec::PolyQuotient { p, modulus } => {
            let d = modulus.len() - 1;
            (*p as usize).checked_pow(u32::try_from(d).ok()?)
        }
        RingSpec::Product(factors) => {
            let mut total = 1usize;
            for f in factors {
                total = total.checked_mul(spec_order(f)?)?;
            }
            Some(total)
        }
        RingSpec::Triangular { k, base } => {
            let positions = k * (k + 1) / 2;
            spec_order(base)?.checked_pow(u32::try_from(positions).ok()?)
        }
        RingSpec::FullMatrix { k, base } => {
            spec_order(base)?.checked_pow(u32::try_from(k * k).ok()?)
        }
    }
}

fn build_raw(spec: &RingSpec, cap: usize) -> Result<RawRing, RingError> {
    match spec {
        RingSpec::Modular(m) => Ok(build_modular(*m as usize)),
        RingSpec::PolyQuotient { p, modulus } => Ok(build_poly_quotient(*p as usize, modulus)),
        RingSpec::Product(factors) => {
            let tables: Result<Vec<_>, _> =
                factors.iter().map(|f| build_ring_with_cap(f, cap)).collect();
            Ok(build_product(&tables?))
        }
        RingSpec::Triangular { k, base } => {
            let base = build_ring_with_cap(base, cap)?;
            Ok(build_matrix_ring(*k, &base, true))
        }
        RingSpec::FullMatrix { k, base } => {
            let base = build_ring_with_cap(base, cap)?;
            Ok(build_matrix_ring(*k, &base, false))
        }
    }
}

fn build_modular(m: usize) -> RawRing {
    let mut add = vec![0u8; m * m];
    let mut mul = vec![0u8; m * m];
    for a in 0..m {
        for b in 0..m {
            add[a * m + b] = ((a + b) % m) as u8;
            mul[a * m + b] = ((a * b) % m) as u8;
        }
    }
    RawRing {
        order: m,
        names: (0..m).map(|i| i.to_string()).collect(),
        aliases: Vec::new(),
        add,
        mul,
        one: 1,
    }
}

fn build_poly_quotient(p: usize, modulus: &[u64]) -> RawRing {
    let d = modulus.len() - 1;
    let order = p.pow(d as u32);
    let modulus: Vec<usize> = modulus.iter().map(|&c| (c % p as u64) as usize).collect();
    // Element `i` has little-endian base-p digits as coefficients.
    let coeffs = |i: usize| -> Vec<usize> {
        let mut v = Vec::with_capacity(d);
        let mut i = i;
        for _ in 0..d {
            v.push(i % p);
            i /= p;
        }
        v
    };
    let index_of = |c: &[usize]| -> usize {
        let mut i = 0;
        for &digit in c.iter().rev() {
            i = i * p + digit;
        }
        i
    };
    let reduce = |mut c: Vec<usize>| -> Vec<usize> {
        // Modulus is monic, so each top coefficient is eliminated directly.
        for k in (d..c.len()).rev() {
            let lead = c[k];
            if lead != 0 {
                for (t, &mc) in modulus.iter().enumerate() {
                    let pos = k - d + t;
                    c[pos] = (c[pos] + p * p - (lead * mc) % p) % p;
                }
            }
        }
        c.truncate(d);
        c
    };
    let mut add = vec![0u8; order * order];
    let mut mul = vec![0u8; order * order];
    for a in 0..order {
        let ca = coeffs(a);
        for b in 0..order {
            let cb = coeffs(b);
            let sum: Vec<usize> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
            add[a * order + b] = index_of(&sum) as u8;
            let mut prod = vec![0usize; 2 * d];
            for (i, &x) in ca.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in cb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            mul[a * order + b] = index_of(&reduce(prod)) as u8;
        }
    }
    let names = (0..order)
        .map(|i| {
            let c: Vec<u64> = coeffs(i).iter().map(|&x| x as u64).collect();
            render_poly(&c)
        })
        .collect();
    let mut aliases = Vec::new();
    if d >= 1 {
        aliases.push(("x".to_string(), index_of(&x_vec(d)) as u8));
    }
    RawRing {
        order,
        names,
        aliases,
        add,
        mul,
        one: 1,
    }
}

fn x_vec(d: usize) -> Vec<usize> {
    let mut v = vec![0; d];
    if d > 1 {
        v[1] = 1;
    }
    v
}

fn build_product(factors: &[Arc<RingTable>]) -> RawRing {
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let order: usize = orders.iter().product();
    // Tuple `t` is stored big-endian: the first factor varies slowest.
    let split = |mut i: usize| -> Vec<u8> {
        let mut t = vec![0u8; orders.len()];
        for k in (0..orders.len()).rev() {
            t[k] = (i % orders[k]) as u8;
            i /= orders[k];
        }
        t
    };
    let join = |t: &[u8]| -> usize {
        let mut i = 0;
        for (k, &x) in t.iter().enumerate() {
            i = i * orders[k] + x as usize;
        }
        i
    };
    let mut add = vec![0u8; order * order];
    let mut mul = vec![0u8; order * order];
    for a in 0..order {
        let ta = split(a);
        for b in 0..order {
            let tb = split(b);
            let sum: Vec<u8> = factors
                .iter()
                .zip(ta.iter().zip(&tb))
                .map(|(f, (&x, &y))| f.add(x, y))
                .collect();
            let prod: Vec<u8> = factors
                .iter()
                .zip(ta.iter().zip(&tb))
                .map(|(f, (&x, &y))| f.mul(x, y))
                .collect();
            add[a * order + b] = join(&sum) as u8;
            mul[a * order + b] = join(&prod) as u8;
        }
    }
    let names = (0..order)
        .map(|i| {
            let t = split(i);
            let parts: Vec<&str> = factors
                .iter()
                .zip(&t)
                .map(|(f, &x)| f.name(x))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let one = join(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());
    RawRing {
        order,
        names,
        aliases: Vec::new(),
        add,
        mul,
        one,
    }
}

fn build_matrix_ring(k: usize, base: &Arc<RingTable>, triangular: bool) -> RawRing {
    // Stored positions in row-major order; for the triangular kind only
    // the upper-triangle positions are stored.
    let positions: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| !triangular || i <= j)
        .collect();
    let bo = base.order();
    let order = bo.pow(positions.len() as u32);
    let split = |mut idx: usize| -> Vec<u8> {
        let mut t = vec![0u8; positions.len()];
        for p in (0..positions.len()).rev() {
            t[p] = (idx % bo) as u8;
            idx /= bo;
        }
        t
    };
    let join = |t: &[u8]| -> usize {
        let mut i = 0;
        for &x in t {
            i = i * bo + x as usize;
        }
        i
    };
    let entry = |t: &[u8], i: usize, j: usize| -> u8 {
        positions
            .iter()
            .position(|&p| p == (i, j))
            .map(|p| t[p])
            .unwrap_or(0)
    };
    let mut add = vec![0u8; order * order];
    let mut mul = vec![0u8; order * order];
    for a in 0..order {
        let ta = split(a);
        for b in 0..order {
            let tb = split(b);
            let sum: Vec<u8> = ta.iter().zip(&tb).map(|(&x, &y)| base.add(x, y)).collect();
            add[a * order + b] = join(&sum) as u8;
            let mut prod = vec![0u8; positions.len()];
            for (p, &(i, j)) in positions.iter().enumerate() {
                let mut acc = base.zero();
                for t in 0..k {
                    acc = base.add(acc, base.mul(entry(&ta, i, t), entry(&tb, t, j)));
                }
                prod[p] = acc;
            }
            mul[a * order + b] = join(&prod) as u8;
        }
    }
    let names = (0..order)
        .map(|idx| {
            let t = split(idx);
            let rows: Vec<String> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| base.name(entry(&t, i, j)).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            format!("[{}]", rows.join(";"))
        })
        .collect();
    let mut one_t = vec![base.zero(); positions.len()];
    for (p, &(i, j)) in positions.iter().enumerate() {
        if i == j {
            one_t[p] = base.one();
        }
    }
    let one = join(&one_t);
    let mut aliases = Vec::new();
    for (p, &(i, j)) in positions.iter().enumerate() {
        let mut t = vec![base.zero(); positions.len()];
        t[p] = base.one();
        aliases.push((format!("E{}{}", i + 1, j + 1), join(&t) as u8));
    }
    RawRing {
        order,
        names,
        aliases,
        add,
        mul,
        one,
    }
}

/// Reindexes so the identity sits at index 1, preserving the canonical
/// order for all other elements.
fn canonicalize(raw: &mut RawRing) {
    let one = raw.one;
    if one == 1 {
        return;
    }
    let order = raw.order;
    let perm: Vec<usize> = (0..order)
        .map(|i| {
            if i == 1 {
                one
            } else if i == one {
                1
            } else {
                i
            }
        })
        .collect();
    // perm is an involution, so it serves as both directions.
    let mut add = vec![0u8; order * order];
    let mut mul = vec![0u8; order * order];
    for a in 0..order {
        for b in 0..order {
            add[a * order + b] = perm[raw.add[perm[a] * order + perm[b]] as usize] as u8;
            mul[a * order + b] = perm[raw.mul[perm[a] * order + perm[b]] as usize] as u8;
        }
    }
    let names = (0..order).map(|i| raw.names[perm[i]].clone()).collect();
    for alias in raw.aliases.iter_mut() {
        alias.1 = perm.iter().position(|&p| p == alias.1 as usize).unwrap() as u8;
    }
    raw.add = add;
    raw.mul = mul;
    raw.names = names;
    raw.one = 1;
}

fn finish(spec: RingSpec, raw: RawRing) -> Result<Arc<RingTable>, RingError> {
    let order = raw.order;
    let mut neg = vec![0u8; order];
    for (a, slot) in neg.iter_mut().enumerate() {
        let mut found = None;
        for b in 0..order {
            if raw.add[a * order + b] == 0 {
                found = Some(b as u8);
                break;
            }
        }
        *slot = found.expect("finite additive group has negatives");
    }
    let mut inv = vec![None; order];
    let mut unit_set = Vec::new();
    for (a, slot) in inv.iter_mut().enumerate() {
        for b in 0..order {
            if raw.mul[a * order + b] == 1 && raw.mul[b * order + a] == 1 {
                *slot = Some(b as u8);
                unit_set.push(a as u8);
                break;
            }
        }
    }
    let mut commutative = true;
    'outer: for a in 0..order {
        for b in 0..order {
            if raw.mul[a * order + b] != raw.mul[b * order + a] {
                commutative = false;
                break 'outer;
            }
        }
    }
    let mut aliases = raw.aliases;
    aliases.push(("0".to_string(), 0));
    aliases.push(("1".to_string(), 1));
    let table = RingTable {
        fingerprint: spec.render(),
        spec,
        order,
        names: raw.names,
        aliases,
        add: raw.add,
        mul: raw.mul,
        neg,
        commutative,
        unit_set,
        inv,
    };
    verify_axioms(&table);
    Ok(Arc::new(table))
}

/// Checks the ring axioms on the finished table: exhaustively for order
/// <= 64, on at least 10^4 deterministically sampled triples above.
/// A violation is a construction bug, so it panics.
fn verify_axioms(t: &RingTable) {
    let order = t.order as u64;
    assert_eq!(t.add(0, 0), 0);
    assert_eq!(t.mul(1, 1), 1);
    for a in t.elements() {
        assert_eq!(t.mul(0, a), 0, "0*x = 0 fails in {}", t.fingerprint);
        assert_eq!(t.mul(a, 0), 0, "x*0 = 0 fails in {}", t.fingerprint);
        assert_eq!(t.mul(1, a), a, "1*x = x fails in {}", t.fingerprint);
        assert_eq!(t.mul(a, 1), a, "x*1 = x fails in {}", t.fingerprint);
        for b in t.elements() {
            assert_eq!(
                t.add(a, b),
                t.add(b, a),
                "additive commutativity fails in {}",
                t.fingerprint
            );
        }
    }
    let check_triple = |a: u8, b: u8, c: u8| {
        assert_eq!(t.add(t.add(a, b), c), t.add(a, t.add(b, c)));
        assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
        assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
        assert_eq!(t.mul(t.add(a, b), c), t.add(t.mul(a, c), t.mul(b, c)));
    };
    if t.order <= 64 {
        for a in t.elements() {
            for b in t.elements() {
                for c in t.elements() {
                    check_triple(a, b, c);
                }
            }
        }
    } else {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..10_000 {
            let a = (next() % order) as u8;
            let b = (next() % order) as u8;
            let c = (next() % order) as u8;
            check_triple(a, b, c);
        }
    }
}

/// Enumerates every two-sided ideal of `ring` by subset closure filtering.
/// Only supported for rings of order <= 16.
pub fn enumerate_ideals(ring: &Arc<RingTable>) -> Result<Vec<crate::ideal::IdealSet>, RingError> {
    const MAX: usize = 16;
    let order = ring.order();
    if order > MAX {
        return Err(RingError::LatticeTooLarge { order, max: MAX });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << order) {
        if mask & 1 == 0 {
            continue; // must contain 0
        }
        let members: Vec<u8> = (0..order as u8).filter(|&i| mask >> i & 1 == 1).collect();
        let in_set = |x: u8| mask >> x & 1 == 1;
        let mut ok = true;
        'check: for &a in &members {
            for &b in &members {
                if !in_set(ring.add(a, b)) {
                    ok = false;
                    break 'check;
                }
            }
            for r in ring.elements() {
                if !in_set(ring.mul(r, a)) || !in_set(ring.mul(a, r)) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            out.push(crate::ideal::IdealSet::from_members(ring.clone(), members));
        }
    }
    Ok(out)
}
