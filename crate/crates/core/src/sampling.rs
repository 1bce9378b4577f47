//! Deterministic random sampling of ring elements and matrices, for the
//! identity fuzz suites. All samplers take a caller-provided RNG so runs
//! seeded identically reproduce byte-identically.

use rand::Rng;
use std::sync::Arc;

use crate::ideal::IdealSet;
use crate::mat::{Mat, MatSpace};
use crate::ring::RingTable;

pub fn random_element<R: Rng>(ring: &RingTable, rng: &mut R) -> u8 {
    rng.random_range(0..ring.order()) as u8
}

/// Uniform matrix over the full matrix space.
pub fn random_matrix<R: Rng>(ring: &Arc<RingTable>, n: usize, rng: &mut R) -> Mat {
    let space = MatSpace::new(ring.clone(), n).expect("valid dimension");
    let mut e = [0u8; 16];
    for slot in e.iter_mut().take(n * n) {
        *slot = random_element(ring, rng);
    }
    space.mat(e)
}

/// Uniform element of `GL_n(A)` by rejection sampling.
pub fn random_invertible<R: Rng>(ring: &Arc<RingTable>, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = random_matrix(ring, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Uniform element of the congruence subgroup `GL_n(A, I)` by rejection
/// sampling over `identity + (entries in I)`.
pub fn random_congruence<R: Rng>(ideal: &IdealSet, n: usize, rng: &mut R) -> Mat {
    let ring = ideal.ring();
    let space = MatSpace::new(ring.clone(), n).expect("valid dimension");
    let members = ideal.members();
    loop {
        let mut e = space.identity();
        for slot in e.iter_mut().take(n * n) {
            let noise = members[rng.random_range(0..members.len())];
            *slot = ring.add(*slot, noise);
        }
        let m = space.mat(e);
        if m.is_invertible() {
            return m;
        }
    }
}
