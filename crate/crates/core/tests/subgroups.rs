//! Subgroup closure, normal closure, relative elementary subgroups, and
//! mixed commutator subgroups, checked against independent oracles:
//! classical order formulas for the closures and a brute-force pairwise
//! commutator closure for `[H, K]`.

use std::sync::Arc;

use glcomm_core::mat::MatSpace;
use glcomm_core::{
    build_ring, elementary, ideal_generate, sym_product, Engine, GroupSet, Mat, RingSpec,
    RingTable,
};

fn engine() -> Engine {
    Engine::default()
}

/// Brute-force oracle for `[H, K]`: every pairwise commutator of full
/// member sets, then a naive closure by repeated full product passes.
/// Stays clear of the engine's generator-pair/normal-closure route.
fn brute_force_commutator(h: &GroupSet, k: &GroupSet) -> Vec<u128> {
    let space = MatSpace::new(h.ring().clone(), h.n()).unwrap();
    let hm = h.member_mats().unwrap();
    let km = k.member_mats().unwrap();
    let mut set = std::collections::BTreeSet::new();
    set.insert(space.key(&space.identity()));
    let mut elems: Vec<[u8; 16]> = vec![space.identity()];
    for x in &hm {
        let xi = space.inverse(x.entries()).unwrap();
        for y in &km {
            let yi = space.inverse(y.entries()).unwrap();
            let c = space.mul(
                &space.mul(&space.mul(x.entries(), y.entries()), &xi),
                &yi,
            );
            if set.insert(space.key(&c)) {
                elems.push(c);
            }
        }
    }
    loop {
        let mut grew = false;
        let snapshot = elems.clone();
        for a in &snapshot {
            for b in &snapshot {
                let p = space.mul(a, b);
                if set.insert(space.key(&p)) {
                    elems.push(p);
                    grew = true;
                }
            }
            let ai = space.inverse(a).unwrap();
            if set.insert(space.key(&ai)) {
                elems.push(ai);
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    set.into_iter().collect()
}

fn sorted_keys(g: &GroupSet) -> Vec<u128> {
    g.sorted_keys().unwrap()
}

/// The S_3 permutation matrices inside GL_3.
fn permutation_subgroup(ring: &Arc<RingTable>, eng: &Engine) -> GroupSet {
    let one = ring.one();
    let swap12 = Mat::from_entries(ring.clone(), 3, &[0, one, 0, one, 0, 0, 0, 0, one]).unwrap();
    let cycle = Mat::from_entries(ring.clone(), 3, &[0, one, 0, 0, 0, one, one, 0, 0]).unwrap();
    eng.closure(ring, 3, &[swap12, cycle], "S3").unwrap()
}

#[test]
fn permutation_group_commutator_is_alternating() {
    let ring = build_ring(&RingSpec::Modular(4)).unwrap();
    let eng = engine();
    let s3 = permutation_subgroup(&ring, &eng);
    assert_eq!(s3.order(), Some(6));
    let derived = eng.commutator_subgroup(&s3, &s3).unwrap();
    assert_eq!(derived.order(), Some(3));
    assert_eq!(sorted_keys(&derived), brute_force_commutator(&s3, &s3));
}

#[test]
fn commutator_oracle_on_congruence_pairs() {
    let eng = engine();
    for (spec, gens) in [
        (RingSpec::Modular(4), vec![2u8]),
        (
            RingSpec::PolyQuotient {
                p: 2,
                modulus: vec![0, 0, 1],
            },
            vec![2],
        ),
        (
            RingSpec::Triangular {
                k: 2,
                base: Box::new(RingSpec::Modular(2)),
            },
            vec![2],
        ),
    ] {
        let ring = build_ring(&spec).unwrap();
        let ideal = ideal_generate(&ring, &gens).unwrap();
        let e = eng.relative_elementary(&ideal, 3).unwrap();
        let gl = eng.congruence_members(&ideal, 3).unwrap();
        for (h, k) in [(&e, &gl), (&gl, &e), (&gl, &gl)] {
            let fast = eng.commutator_subgroup(h, k).unwrap();
            assert_eq!(
                sorted_keys(&fast),
                brute_force_commutator(h, k),
                "oracle mismatch for [{},{}]",
                h.label(),
                k.label()
            );
        }
    }
}

#[test]
fn commutator_subgroup_is_symmetric() {
    let eng = engine();
    let ring = build_ring(&RingSpec::Modular(8)).unwrap();
    let i2 = ideal_generate(&ring, &[2]).unwrap();
    let i4 = ideal_generate(&ring, &[4]).unwrap();
    let e2 = eng.relative_elementary(&i2, 3).unwrap();
    let gl4 = eng.congruence_members(&i4, 3).unwrap();
    let hk = eng.commutator_subgroup(&e2, &gl4).unwrap();
    let kh = eng.commutator_subgroup(&gl4, &e2).unwrap();
    assert!(eng.subgroup_equal(&hk, &kh).unwrap());
    let s3 = permutation_subgroup(&ring, &eng);
    let hk = eng.commutator_subgroup(&s3, &gl4).unwrap();
    let kh = eng.commutator_subgroup(&gl4, &s3).unwrap();
    assert!(eng.subgroup_equal(&hk, &kh).unwrap());
}

#[test]
fn suslin_closure_equals_normal_closure_definition() {
    // Generator-set equivalence on three small configurations.
    let eng = engine();
    for (spec, gens) in [
        (RingSpec::Modular(4), vec![2u8]),
        (
            RingSpec::PolyQuotient {
                p: 2,
                modulus: vec![0, 0, 1],
            },
            vec![2],
        ),
        (
            RingSpec::Triangular {
                k: 2,
                base: Box::new(RingSpec::Modular(2)),
            },
            vec![2],
        ),
    ] {
        let ring = build_ring(&spec).unwrap();
        let ideal = ideal_generate(&ring, &gens).unwrap();
        let via_suslin = eng.relative_elementary(&ideal, 3).unwrap();
        let via_normal_closure = eng
            .relative_elementary_by_normal_closure(&ideal, 3)
            .unwrap();
        assert!(
            eng.subgroup_equal(&via_suslin, &via_normal_closure).unwrap(),
            "Suslin-generator closure differs from the normal closure over {}",
            ring.fingerprint()
        );
        eng.validate_group(&via_suslin).unwrap();
    }
}

#[test]
fn containment_chain_for_symmetrized_product() {
    // E(A, IJ+JI) ⊆ [E(I), E(J)] ⊆ [E(A,I), E(A,J)] ⊆ GL(A, IJ+JI)
    // over Z/8 with I = J = (2); the outer bound has order 2^9.
    let eng = engine();
    let ring = build_ring(&RingSpec::Modular(8)).unwrap();
    let i = ideal_generate(&ring, &[2]).unwrap();
    let sym = sym_product(&i, &i).unwrap();

    let e_sym = eng.relative_elementary(&sym, 3).unwrap();
    let level_gens: Vec<Mat> = glcomm_core::elementary_level_generators(&i, 3)
        .unwrap()
        .into_iter()
        .map(|d| d.into_mat())
        .collect();
    let e_level = eng
        .closure(&ring, 3, &level_gens, "E((2)) unrelativized")
        .unwrap();
    let inner = eng.commutator_subgroup(&e_level, &e_level).unwrap();
    let e_rel = eng.relative_elementary(&i, 3).unwrap();
    let outer = eng.commutator_subgroup(&e_rel, &e_rel).unwrap();
    let gl_sym = eng.congruence_members(&sym, 3).unwrap();

    assert_eq!(gl_sym.order(), Some(512));
    assert!(eng.is_subgroup_of(&e_sym, &inner).unwrap());
    assert!(eng.is_subgroup_of(&inner, &outer).unwrap());
    assert!(eng.is_subgroup_of(&outer, &gl_sym).unwrap());
    // substantive: the chain is nontrivial at this scale
    assert!(e_sym.order().unwrap() > 1);
}

#[test]
fn relative_elementary_sits_inside_congruence_subgroup() {
    let eng = engine();
    let ring = build_ring(&RingSpec::Modular(4)).unwrap();
    let i = ideal_generate(&ring, &[2]).unwrap();
    let e = eng.relative_elementary(&i, 3).unwrap();
    let gl = eng.congruence_members(&i, 3).unwrap();
    assert!(eng.is_subgroup_of(&e, &gl).unwrap());
    // E has index 2 here: the determinant of an elementary product is 1,
    // while GL(A,(2)) contains diag(3,1,1).
    assert_eq!(gl.order(), Some(512));
    assert_eq!(e.order(), Some(256));
    let witness = eng.symmetric_difference_witness(&e, &gl).unwrap().unwrap();
    assert!(gl.contains(&witness).unwrap());
    assert!(!e.contains(&witness).unwrap());
}

#[test]
fn commutator_of_relative_elementary_vanishes_when_sym_product_is_zero() {
    let eng = engine();
    let ring = build_ring(&RingSpec::Modular(4)).unwrap();
    let i = ideal_generate(&ring, &[2]).unwrap();
    assert!(sym_product(&i, &i).unwrap().is_zero());
    let e = eng.relative_elementary(&i, 3).unwrap();
    let c = eng.commutator_subgroup(&e, &e).unwrap();
    assert_eq!(c.order(), Some(1));
}

#[test]
fn gl_generator_closure_matches_enumeration_z4() {
    let eng = engine();
    let ring = build_ring(&RingSpec::Modular(4)).unwrap();
    for gens in [vec![2u8], vec![1u8]] {
        let ideal = ideal_generate(&ring, &gens).unwrap();
        let enumerated = eng.congruence_members(&ideal, 3).unwrap();
        let via_gens: Vec<Mat> = glcomm_core::gl_generators(&ideal, 3)
            .unwrap()
            .into_iter()
            .map(|d| d.into_mat())
            .collect();
        let closed = eng
            .closure(&ring, 3, &via_gens, "closure of gl generators")
            .unwrap();
        assert!(eng.subgroup_equal(&enumerated, &closed).unwrap());
    }
    // classical cross-check: |GL_3(Z/4)| = 2^9 * |GL_3(F_2)|
    let unit = ideal_generate(&ring, &[1]).unwrap();
    let gl = eng.congruence_members(&unit, 3).unwrap();
    assert_eq!(gl.order(), Some(512 * 168));
}

#[test]
fn elementary_closure_count_with_elementary_generators() {
    let eng = engine();
    let ring = build_ring(&RingSpec::Modular(2)).unwrap();
    let unit = ideal_generate(&ring, &[1]).unwrap();
    let gens: Vec<Mat> = glcomm_core::elementary_level_generators(&unit, 3)
        .unwrap()
        .into_iter()
        .map(|d| d.into_mat())
        .collect();
    let e = eng.closure(&ring, 3, &gens, "E(Z/2)").unwrap();
    assert_eq!(e.order(), Some(168));
    // carried generator list stays logarithmic
    assert!(e.generators().len() <= 8, "{}", e.generators().len());
}

#[test]
fn suslin_elements_are_valid_elementary_conjugates() {
    let ring = build_ring(&RingSpec::Modular(4)).unwrap();
    let ideal = ideal_generate(&ring, &[2]).unwrap();
    for d in glcomm_core::suslin_generators(&ideal, 3).unwrap() {
        if let glcomm_core::GenKind::ConjugatedElementary { outer, inner } = d.kind() {
            let (i, j, a) = outer[0];
            let frame = elementary(&ring, 3, i, j, a).unwrap();
            let base = elementary(&ring, 3, inner.0, inner.1, inner.2).unwrap();
            let expected = frame
                .mul(&base)
                .unwrap()
                .mul(&frame.inverse().unwrap())
                .unwrap();
            assert_eq!(d.mat(), &expected);
        }
    }
}

#[test]
fn containment_chain_over_zoo_ideal_lattices() {
    // E(A, IJ+JI) ⊆ [E(I), E(J)] ⊆ [E(A,I), E(A,J)] ⊆ GL(A, IJ+JI) for
    // every ideal pair of the small zoo rings whose symmetrized product
    // keeps the congruence bound enumerable.
    let eng = engine();
    let rings = [
        RingSpec::Modular(4),
        RingSpec::Modular(8),
        RingSpec::PolyQuotient { p: 2, modulus: vec![0, 0, 1] },
        RingSpec::Triangular { k: 2, base: Box::new(RingSpec::Modular(2)) },
    ];
    let mut checked = 0usize;
    for spec in rings {
        let ring = build_ring(&spec).unwrap();
        let ideals = glcomm_core::enumerate_ideals(&ring).unwrap();
        for i in &ideals {
            for j in &ideals {
                let sym = sym_product(i, j).unwrap();
                let bound = (sym.members().len() as u128).saturating_pow(9);
                if bound > 1 << 18 {
                    continue;
                }
                let e_sym = eng.relative_elementary(&sym, 3).unwrap();
                // commutator arguments only need generator lists, so the
                // potentially huge level and relative subgroups are never
                // materialized here
                let gen_only = |gens: Vec<Mat>, label: &str| {
                    GroupSet::from_generators(&ring, 3, gens, label).unwrap()
                };
                let level = |ideal: &glcomm_core::IdealSet| -> Vec<Mat> {
                    glcomm_core::elementary_level_generators(ideal, 3)
                        .unwrap()
                        .into_iter()
                        .map(|d| d.into_mat())
                        .collect()
                };
                let suslin = |ideal: &glcomm_core::IdealSet| -> Vec<Mat> {
                    glcomm_core::suslin_generators(ideal, 3)
                        .unwrap()
                        .into_iter()
                        .map(|d| d.into_mat())
                        .collect()
                };
                let e_level_i = gen_only(level(i), "E(I)");
                let e_level_j = gen_only(level(j), "E(J)");
                let inner = eng.commutator_subgroup(&e_level_i, &e_level_j).unwrap();
                let rel_i = gen_only(suslin(i), "E(A,I)");
                let rel_j = gen_only(suslin(j), "E(A,J)");
                let outer = eng.commutator_subgroup(&rel_i, &rel_j).unwrap();
                let gl_sym = eng.congruence_members(&sym, 3).unwrap();
                assert!(eng.is_subgroup_of(&e_sym, &inner).unwrap(),
                    "{} I={} J={}", ring.fingerprint(), i.render(), j.render());
                assert!(eng.is_subgroup_of(&inner, &outer).unwrap(),
                    "{} I={} J={}", ring.fingerprint(), i.render(), j.render());
                assert!(eng.is_subgroup_of(&outer, &gl_sym).unwrap(),
                    "{} I={} J={}", ring.fingerprint(), i.render(), j.render());
                checked += 1;
            }
        }
    }
    assert!(checked >= 25, "checked only {checked} pairs");
}
