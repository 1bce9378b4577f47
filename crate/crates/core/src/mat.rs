//! Exact `n x n` matrix arithmetic over a [`RingTable`], elementary
//! matrices, invertibility, and generator factories.
//!
//! Matrices carry a canonical packing key: entries in row-major order are
//! packed into a single mixed-radix `u128` with radix equal to the ring
//! order. When the order is a power of two the packing collapses to bit
//! shifts, but the contract is radix-generic.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ideal::IdealSet;
use crate::ring::RingTable;

/// Row-major entry storage; positions `n*n..` are always zero so the
/// packing key is unique.
pub type Entries = [u8; 16];

pub const MIN_DIM: usize = 3;
pub const MAX_DIM: usize = 4;

#[derive(Debug, Error)]
pub enum MatError {
    #[error("matrix dimension must be {MIN_DIM}..={MAX_DIM}, got {0}")]
    DimensionOutOfRange(usize),
    #[error("index ({i},{j}) out of range for dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("elementary matrix position must be off-diagonal, got ({0},{0})")]
    DiagonalPosition(usize),
    #[error("element index {0} is not an element of {1}")]
    UnknownElement(u8, String),
    #[error("matrices live over different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("determinant requires a commutative ring, {0} is not")]
    NonCommutativeDeterminant(String),
    #[error("{0} is not a unit congruent to 1 modulo the ideal")]
    InvalidDiagonalUnit(String),
    #[error("ideal over {0} does not match ring {1}")]
    IdealMismatch(String, String),
}

/// Shared packing and arithmetic context for one `(ring, n)` pair.
/// All engine-level work happens on raw [`Entries`] through this.
#[derive(Debug, Clone)]
pub struct MatSpace {
    ring: Arc<RingTable>,
    n: usize,
    bits: Option<u32>,
    pows: [u128; 16],
}

impl MatSpace {
    pub fn new(ring: Arc<RingTable>, n: usize) -> Result<MatSpace, MatError> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(MatError::DimensionOutOfRange(n));
        }
        let order = ring.order() as u128;
        let bits = if order.is_power_of_two() {
            Some(order.trailing_zeros())
        } else {
            None
        };
        let mut pows = [0u128; 16];
        let mut p = 1u128;
        for slot in pows.iter_mut().take(n * n) {
            *slot = p;
            p = p.wrapping_mul(order);
        }
        Ok(MatSpace {
            ring,
            n,
            bits,
            pows,
        })
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn key(&self, e: &Entries) -> u128 {
        let nn = self.n * self.n;
        if let Some(b) = self.bits {
            let mut k = 0u128;
            for p in (0..nn).rev() {
                k = (k << b) | e[p] as u128;
            }
            k
        } else {
            let mut k = 0u128;
            for (p, &entry) in e.iter().enumerate().take(nn) {
                k += entry as u128 * self.pows[p];
            }
            k
        }
    }

    #[inline(always)]
    pub fn unpack(&self, mut k: u128) -> Entries {
        let nn = self.n * self.n;
        let mut e = [0u8; 16];
        if let Some(b) = self.bits {
            let mask = (1u128 << b) - 1;
            for slot in e.iter_mut().take(nn) {
                *slot = (k & mask) as u8;
                k >>= b;
            }
        } else {
            let order = self.ring.order() as u128;
            for slot in e.iter_mut().take(nn) {
                *slot = (k % order) as u8;
                k /= order;
            }
        }
        e
    }

    pub fn identity(&self) -> Entries {
        let mut e = [0u8; 16];
        for i in 0..self.n {
            e[i * self.n + i] = self.ring.one();
        }
        e
    }

    #[inline]
    pub fn mul(&self, a: &Entries, b: &Entries) -> Entries {
        let n = self.n;
        let r = &*self.ring;
        let mut c = [0u8; 16];
        for i in 0..n {
            let row = i * n;
            for j in 0..n {
                let mut acc = r.mul(a[row], b[j]);
                for k in 1..n {
                    acc = r.add(acc, r.mul(a[row + k], b[k * n + j]));
                }
                c[row + j] = acc;
            }
        }
        c
    }

    pub fn is_identity(&self, e: &Entries) -> bool {
        *e == self.identity()
    }

    /// Exact inverse; `None` when not invertible.
    pub fn inverse(&self, e: &Entries) -> Option<Entries> {
        if self.ring.is_commutative() {
            let d = self.det(e);
            let d_inv = self.ring.inverse(d)?;
            Some(self.adjugate_scaled(e, d_inv))
        } else {
            if !self.kernel_invertible(e) {
                return None;
            }
            // In a finite group the powers of an invertible element cycle
            // through the identity, so x^{ord-1} is the inverse.
            let mut prev = self.identity();
            let mut cur = *e;
            let mut steps = 0u64;
            while !self.is_identity(&cur) {
                prev = cur;
                cur = self.mul(&cur, e);
                steps += 1;
                assert!(steps < 1 << 32, "power iteration failed to terminate");
            }
            Some(prev)
        }
    }

    pub fn is_invertible(&self, e: &Entries) -> bool {
        if self.ring.is_commutative() {
            self.ring.is_unit(self.det(e))
        } else {
            self.kernel_invertible(e)
        }
    }

    /// Invertibility by kernel triviality of left multiplication on `A^n`:
    /// enumerates every vector and requires `x*v = 0` only for `v = 0`.
    /// Finite rings are Dedekind-finite, so injectivity gives a two-sided
    /// inverse.
    pub fn kernel_invertible(&self, e: &Entries) -> bool {
        let n = self.n;
        let order = self.ring.order();
        let r = &*self.ring;
        let mut v = vec![0u8; n];
        loop {
            // advance odometer; skip the zero vector
            let mut pos = 0;
            loop {
                if pos == n {
                    return true;
                }
                v[pos] += 1;
                if (v[pos] as usize) < order {
                    break;
                }
                v[pos] = 0;
                pos += 1;
            }
            let mut zero = true;
            for i in 0..n {
                let mut acc = 0u8;
                for (j, &vj) in v.iter().enumerate() {
                    acc = r.add(acc, r.mul(e[i * n + j], vj));
                }
                if acc != 0 {
                    zero = false;
                    break;
                }
            }
            if zero {
                return false;
            }
        }
    }

    /// Determinant by minor expansion. Only meaningful over commutative
    /// rings; callers on the noncommutative path use `kernel_invertible`.
    pub fn det(&self, e: &Entries) -> u8 {
        let n = self.n;
        let idx: Vec<usize> = (0..n).collect();
        self.det_rec(e, 0, &idx)
    }

    fn det_rec(&self, e: &Entries, row: usize, cols: &[usize]) -> u8 {
        let n = self.n;
        let r = &*self.ring;
        if cols.len() == 1 {
            return e[row * n + cols[0]];
        }
        let mut acc = 0u8;
        for (pos, &c) in cols.iter().enumerate() {
            let a = e[row * n + c];
            if a == 0 {
                continue;
            }
            let rest: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&x| x != c)
                .collect();
            let minor = self.det_rec(e, row + 1, &rest);
            let term = r.mul(a, minor);
            acc = if pos % 2 == 0 {
                r.add(acc, term)
            } else {
                r.sub(acc, term)
            };
        }
        acc
    }

    /// `adj(e) * scale` with `adj[j][i] = (-1)^{i+j} det(minor_ij)`.
    fn adjugate_scaled(&self, e: &Entries, scale: u8) -> Entries {
        let n = self.n;
        let r = &*self.ring;
        let mut out = [0u8; 16];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&x| x != i).collect();
                let cols: Vec<usize> = (0..n).filter(|&x| x != j).collect();
                let minor = self.minor_det(e, &rows, &cols);
                let signed = if (i + j) % 2 == 0 {
                    minor
                } else {
                    r.neg(minor)
                };
                out[j * n + i] = r.mul(signed, scale);
            }
        }
        out
    }

    fn minor_det(&self, e: &Entries, rows: &[usize], cols: &[usize]) -> u8 {
        let n = self.n;
        let r = &*self.ring;
        if rows.len() == 1 {
            return e[rows[0] * n + cols[0]];
        }
        let mut acc = 0u8;
        for (pos, &c) in cols.iter().enumerate() {
            let a = e[rows[0] * n + c];
            if a == 0 {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.minor_det(e, &rows[1..], &rest);
            let term = r.mul(a, minor);
            acc = if pos % 2 == 0 {
                r.add(acc, term)
            } else {
                r.sub(acc, term)
            };
        }
        acc
    }

    pub fn mat(&self, entries: Entries) -> Mat {
        Mat {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        }
    }
}

/// An exact `n x n` matrix over a finite ring, `3 <= n <= 4`.
#[derive(Debug, Clone)]
pub struct Mat {
    ring: Arc<RingTable>,
    n: usize,
    entries: Entries,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.entries == other.entries
            && self.ring.fingerprint() == other.ring.fingerprint()
    }
}
impl Eq for Mat {}

impl std::hash::Hash for Mat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl Mat {
    pub fn identity(ring: Arc<RingTable>, n: usize) -> Result<Mat, MatError> {
        let space = MatSpace::new(ring, n)?;
        Ok(space.mat(space.identity()))
    }

    pub fn from_entries(ring: Arc<RingTable>, n: usize, rows: &[u8]) -> Result<Mat, MatError> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(MatError::DimensionOutOfRange(n));
        }
        if rows.len() != n * n {
            return Err(MatError::DimensionMismatch(rows.len(), n * n));
        }
        let mut entries = [0u8; 16];
        for (p, &x) in rows.iter().enumerate() {
            if x as usize >= ring.order() {
                return Err(MatError::UnknownElement(x, ring.fingerprint().to_string()));
            }
            entries[p] = x;
        }
        Ok(Mat { ring, n, entries })
    }

    pub fn from_key(ring: Arc<RingTable>, n: usize, key: u128) -> Result<Mat, MatError> {
        let space = MatSpace::new(ring, n)?;
        Ok(space.mat(space.unpack(key)))
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    /// Entry at 0-based position `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.n + col]
    }

    pub fn space(&self) -> MatSpace {
        MatSpace::new(self.ring.clone(), self.n).expect("dimension validated at construction")
    }

    /// Canonical mixed-radix packing key; row-major, radix = ring order.
    pub fn key(&self) -> u128 {
        self.space().key(&self.entries)
    }

    pub fn is_identity(&self) -> bool {
        self.space().is_identity(&self.entries)
    }

    fn check_compatible(&self, other: &Mat) -> Result<(), MatError> {
        if self.ring.fingerprint() != other.ring.fingerprint() {
            return Err(MatError::RingMismatch(
                self.ring.fingerprint().to_string(),
                other.ring.fingerprint().to_string(),
            ));
        }
        if self.n != other.n {
            return Err(MatError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_compatible(other)?;
        let space = self.space();
        Ok(space.mat(space.mul(&self.entries, &other.entries)))
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_compatible(other)?;
        let mut entries = [0u8; 16];
        for (p, slot) in entries.iter_mut().enumerate().take(self.n * self.n) {
            *slot = self.ring.add(self.entries[p], other.entries[p]);
        }
        Ok(Mat {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.check_compatible(other)?;
        let mut entries = [0u8; 16];
        for (p, slot) in entries.iter_mut().enumerate().take(self.n * self.n) {
            *slot = self.ring.sub(self.entries[p], other.entries[p]);
        }
        Ok(Mat {
            ring: self.ring.clone(),
            n: self.n,
            entries,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.space().is_invertible(&self.entries)
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        let space = self.space();
        let inv = space.inverse(&self.entries).ok_or(MatError::NotInvertible)?;
        debug_assert!(space.is_identity(&space.mul(&self.entries, &inv)));
        debug_assert!(space.is_identity(&space.mul(&inv, &self.entries)));
        Ok(space.mat(inv))
    }

    pub fn det(&self) -> Result<u8, MatError> {
        if !self.ring.is_commutative() {
            return Err(MatError::NonCommutativeDeterminant(
                self.ring.fingerprint().to_string(),
            ));
        }
        Ok(self.space().det(&self.entries))
    }

    /// True when every entry of `self - identity` lies in `ideal`.
    pub fn congruent_to_identity_mod(&self, ideal: &IdealSet) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { self.ring.one() } else { 0 };
                let diff = self.ring.sub(self.entries[i * n + j], expected);
                if !ideal.contains(diff) {
                    return false;
                }
            }
        }
        true
    }

    /// Report text form: rows separated by `;`, entries by `,`, element
    /// names per the ring's canonical naming.
    pub fn render(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.ring.name(self.entry(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The elementary matrix `e_{i,j}(alpha)`: identity plus `alpha` at the
/// off-diagonal position `(i,j)`. Indices are 1-based as in the relations
/// `(E1)-(E3)`.
pub fn elementary(
    ring: &Arc<RingTable>,
    n: usize,
    i: usize,
    j: usize,
    alpha: u8,
) -> Result<Mat, MatError> {
    if !(MIN_DIM..=MAX_DIM).contains(&n) {
        return Err(MatError::DimensionOutOfRange(n));
    }
    if i == j {
        return Err(MatError::DiagonalPosition(i));
    }
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(MatError::IndexOutOfRange { i, j, n });
    }
    if alpha as usize >= ring.order() {
        return Err(MatError::UnknownElement(alpha, ring.fingerprint().to_string()));
    }
    let space = MatSpace::new(ring.clone(), n)?;
    let mut e = space.identity();
    e[(i - 1) * n + (j - 1)] = alpha;
    Ok(space.mat(e))
}

/// `[x, y] = x y x^{-1} y^{-1}`.
pub fn commutator(x: &Mat, y: &Mat) -> Result<Mat, MatError> {
    let xi = x.inverse()?;
    let yi = y.inverse()?;
    x.mul(y)?.mul(&xi)?.mul(&yi)
}

/// Left conjugate `^x y = x y x^{-1}`.
pub fn conjugate(x: &Mat, y: &Mat) -> Result<Mat, MatError> {
    let xi = x.inverse()?;
    x.mul(y)?.mul(&xi)
}

/// How a generator matrix was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    Elementary {
        i: usize,
        j: usize,
        alpha: u8,
    },
    /// `^(outer_1 ... outer_k) inner` with every factor elementary.
    ConjugatedElementary {
        outer: Vec<(usize, usize, u8)>,
        inner: (usize, usize, u8),
    },
    /// Identity except for a unit at diagonal position `(pos, pos)`.
    DiagonalUnit {
        pos: usize,
        unit: u8,
    },
}

/// A generator together with its evaluated matrix. The matrix always
/// equals the product denoted by the kind; constructors build it by
/// evaluation.
#[derive(Debug, Clone)]
pub struct GenDescriptor {
    kind: GenKind,
    mat: Mat,
}

impl GenDescriptor {
    pub fn kind(&self) -> &GenKind {
        &self.kind
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    pub fn render(&self) -> String {
        let ring = self.mat.ring();
        match &self.kind {
            GenKind::Elementary { i, j, alpha } => {
                format!("e({i},{j};{})", ring.name(*alpha))
            }
            GenKind::ConjugatedElementary { outer, inner } => {
                let frames: Vec<String> = outer
                    .iter()
                    .map(|&(i, j, a)| format!("e({i},{j};{})", ring.name(a)))
                    .collect();
                format!(
                    "^{{{}}}e({},{};{})",
                    frames.join(""),
                    inner.0,
                    inner.1,
                    ring.name(inner.2)
                )
            }
            GenKind::DiagonalUnit { pos, unit } => {
                format!("d({pos};{})", ring.name(*unit))
            }
        }
    }
}

fn check_ideal_ring(ring: &Arc<RingTable>, ideal: &IdealSet) -> Result<(), MatError> {
    if ring.fingerprint() != ideal.ring().fingerprint() {
        return Err(MatError::IdealMismatch(
            ideal.ring().fingerprint().to_string(),
            ring.fingerprint().to_string(),
        ));
    }
    Ok(())
}

fn dedup_by_key(descriptors: Vec<GenDescriptor>) -> Vec<GenDescriptor> {
    let mut seen = std::collections::HashSet::new();
    descriptors
        .into_iter()
        .filter(|d| seen.insert(d.mat.key()))
        .collect()
}

/// Generators of the unrelativized elementary subgroup of level `I`:
/// all `e_{i,j}(alpha)` with `alpha` in the ideal.
pub fn elementary_level_generators(
    ideal: &IdealSet,
    n: usize,
) -> Result<Vec<GenDescriptor>, MatError> {
    let ring = ideal.ring();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for &alpha in ideal.members() {
                out.push(GenDescriptor {
                    kind: GenKind::Elementary { i, j, alpha },
                    mat: elementary(ring, n, i, j, alpha)?,
                });
            }
        }
    }
    Ok(dedup_by_key(out))
}

/// Suslin generators of the relative elementary subgroup `E_n(A, I)`:
/// `^(e_{i,j}(a)) e_{j,i}(alpha)` over all ordered pairs `i != j`, all
/// `a` in the ring, all `alpha` in the ideal. Deduplicated by key.
/// Requires `n >= 3`.
pub fn suslin_generators(ideal: &IdealSet, n: usize) -> Result<Vec<GenDescriptor>, MatError> {
    let ring = ideal.ring();
    check_ideal_ring(ring, ideal)?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            for a in ring.elements() {
                let frame = elementary(ring, n, i, j, a)?;
                let frame_inv = frame.inverse()?;
                for &alpha in ideal.members() {
                    let inner = elementary(ring, n, j, i, alpha)?;
                    let mat = frame.mul(&inner)?.mul(&frame_inv)?;
                    out.push(GenDescriptor {
                        kind: GenKind::ConjugatedElementary {
                            outer: vec![(i, j, a)],
                            inner: (j, i, alpha),
                        },
                        mat,
                    });
                }
            }
        }
    }
    Ok(dedup_by_key(out))
}

/// Generating set for the congruence subgroup `GL_n(A, I)` over a finite
/// (hence semilocal) ring: the Suslin generators together with the
/// one-spot diagonal matrices `diag(.., u, ..)` for units `u` in `1 + I`.
/// The closure of this list is validated against the enumerated
/// congruence subgroup wherever that enumeration is feasible; for larger
/// rings the closure serves as the computational proxy for `GL_n(A, I)`.
pub fn gl_generators(ideal: &IdealSet, n: usize) -> Result<Vec<GenDescriptor>, MatError> {
    let ring = ideal.ring();
    let mut out = suslin_generators(ideal, n)?;
    for pos in 1..=n {
        for &u in ring.unit_set() {
            if !ideal.contains(ring.sub(u, ring.one())) {
                continue;
            }
            let space = MatSpace::new(ring.clone(), n)?;
            let mut e = space.identity();
            e[(pos - 1) * n + (pos - 1)] = u;
            out.push(GenDescriptor {
                kind: GenKind::DiagonalUnit { pos, unit: u },
                mat: space.mat(e),
            });
        }
    }
    Ok(dedup_by_key(out))
}
