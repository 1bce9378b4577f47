//! Verifies the commutator formulas as exact set equalities over slot
//! assignments and bracket arrangements.
//!
//! Slot groups are either relative elementary subgroups (`E`) or
//! congruence subgroups (`GL`) at a given ideal level. A slot is
//! materialized whenever its congruence bound `|I|^(n^2)` fits under the
//! enumeration cap; otherwise it is carried as a generator list only,
//! which is all a commutator evaluation needs. Every commutator node is
//! bounded a priori by the symmetrized-product fold of its slot ideals;
//! a node whose bound exceeds the member cap is reported
//! "not verified at this scale" instead of guessed at.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{Engine, EngineError, GroupSet};
use crate::ideal::{sym_product, IdealError, IdealSet};
use crate::mat::{gl_generators, suslin_generators, Mat, MatError};
use crate::ring::RingTable;
use crate::trees::{enumerate_bracketings, BracketTree, TreeError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Which subgroup a slot contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SlotKind {
    /// Relative elementary subgroup `E_n(A, I)`.
    E,
    /// Congruence subgroup `GL_n(A, I)`.
    #[serde(rename = "GL")]
    Gl,
}

impl SlotKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SlotKind::E => "E",
            SlotKind::Gl => "GL",
        }
    }

    pub fn parse(text: &str) -> Result<SlotKind, VerifyError> {
        match text.trim() {
            "E" | "e" => Ok(SlotKind::E),
            "GL" | "gl" | "Gl" => Ok(SlotKind::Gl),
            other => Err(VerifyError::Config(format!(
                "unknown slot kind {other:?}, expected E or GL"
            ))),
        }
    }
}

/// One slot of a multi-commutator: an ideal level plus a group kind.
#[derive(Debug, Clone)]
pub struct Slot {
    pub ideal: IdealSet,
    pub kind: SlotKind,
}

impl Slot {
    pub fn new(ideal: IdealSet, kind: SlotKind) -> Slot {
        Slot { ideal, kind }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Verified,
    Mismatch,
    NotVerifiedAtThisScale,
}

/// One verified (or refused) case. Serialized field order is the report
/// contract; `witness` is present only on mismatch.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub ring: String,
    pub ideals: Vec<Vec<String>>,
    pub n: usize,
    pub tree: String,
    pub slots: Vec<String>,
    pub status: VerdictStatus,
    pub lhs_order: Option<usize>,
    pub rhs_order: Option<usize>,
    pub equal: Option<bool>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl VerdictRecord {
    pub fn passed(&self) -> bool {
        self.status == VerdictStatus::Verified
    }
}

fn check_same_ring(ideals: &[IdealSet]) -> Result<Arc<RingTable>, VerifyError> {
    let first = ideals
        .first()
        .ok_or_else(|| VerifyError::Config("at least one ideal required".into()))?;
    let ring = first.ring().clone();
    for i in ideals {
        if i.ring().fingerprint() != ring.fingerprint() {
            return Err(VerifyError::Config(format!(
                "ideals live over different rings: {} vs {}",
                ring.fingerprint(),
                i.ring().fingerprint()
            )));
        }
    }
    Ok(ring)
}

/// `|I|^(n^2)`, saturating; the a-priori bound on `|GL_n(A, I)|`.
fn congruence_bound(ideal: &IdealSet, n: usize) -> u128 {
    let size = ideal.members().len() as u128;
    let mut out = 1u128;
    for _ in 0..n * n {
        out = out.saturating_mul(size);
    }
    out
}

/// Realizes a slot group. Materialized (with a reduced generator list)
/// when the congruence bound fits under the enumeration cap; otherwise
/// carried as a generator list only.
pub fn realize_slot(engine: &Engine, slot: &Slot, n: usize) -> Result<GroupSet, VerifyError> {
    let ideal = &slot.ideal;
    let ring = ideal.ring();
    let feasible = congruence_bound(ideal, n) <= engine.caps.enum_cap as u128;
    match slot.kind {
        SlotKind::E => {
            if feasible {
                Ok(engine.relative_elementary(ideal, n)?)
            } else {
                let gens: Vec<Mat> = suslin_generators(ideal, n)?
                    .into_iter()
                    .map(|d| d.into_mat())
                    .collect();
                let label = format!("E({},{})", ring.fingerprint(), ideal.render());
                Ok(GroupSet::from_generators(ring, n, gens, label)?)
            }
        }
        SlotKind::Gl => {
            if feasible {
                Ok(engine.congruence_members(ideal, n)?)
            } else {
                let gens: Vec<Mat> = gl_generators(ideal, n)?
                    .into_iter()
                    .map(|d| d.into_mat())
                    .collect();
                let label = format!("GL({},{})", ring.fingerprint(), ideal.render());
                Ok(GroupSet::from_generators(ring, n, gens, label)?)
            }
        }
    }
}

/// The symmetrized-product fold of the slot ideals over the tree: a leaf
/// contributes its ideal, a node contributes `IJ + JI` of its children.
/// Every evaluation of the tree lies in `GL_n(A, fold)`.
pub fn folded_ideal(tree: &BracketTree, ideals: &[IdealSet]) -> Result<IdealSet, VerifyError> {
    match tree {
        BracketTree::Leaf(s) => ideals
            .get(*s)
            .cloned()
            .ok_or_else(|| VerifyError::Config(format!("slot {s} out of range"))),
        BracketTree::Node(l, r) => {
            let fl = folded_ideal(l, ideals)?;
            let fr = folded_ideal(r, ideals)?;
            Ok(sym_product(&fl, &fr)?)
        }
    }
}

enum Outcome {
    Group(Box<GroupSet>),
    AtScale(String),
}

fn eval_node(engine: &Engine, tree: &BracketTree, slots: &[Slot], n: usize) -> Result<Outcome, VerifyError> {
    match tree {
        BracketTree::Leaf(s) => {
            let slot = slots
                .get(*s)
                .ok_or_else(|| VerifyError::Config(format!("slot {s} out of range")))?;
            Ok(Outcome::Group(Box::new(realize_slot(engine, slot, n)?)))
        }
        BracketTree::Node(l, r) => {
            let ideals: Vec<IdealSet> = slots.iter().map(|s| s.ideal.clone()).collect();
            let fold = folded_ideal(tree, &ideals)?;
            if congruence_bound(&fold, n) > engine.caps.member_cap as u128 {
                return Ok(Outcome::AtScale(tree.render()));
            }
            let lg = match eval_node(engine, l, slots, n)? {
                Outcome::Group(g) => g,
                scale => return Ok(scale),
            };
            let rg = match eval_node(engine, r, slots, n)? {
                Outcome::Group(g) => g,
                scale => return Ok(scale),
            };
            match engine.commutator_subgroup(&lg, &rg) {
                Ok(g) => Ok(Outcome::Group(Box::new(g))),
                Err(EngineError::MemberCapExceeded { .. }) => Ok(Outcome::AtScale(tree.render())),
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// Evaluates a bracket arrangement over the slots: leaves realize their
/// slot group, nodes take mixed commutator subgroups. Cap overruns are
/// reported with the offending subtree identified.
pub fn evaluate_multicommutator(
    engine: &Engine,
    tree: &BracketTree,
    slots: &[Slot],
    n: usize,
) -> Result<GroupSet, VerifyError> {
    let ideals: Vec<IdealSet> = slots.iter().map(|s| s.ideal.clone()).collect();
    check_same_ring(&ideals)?;
    if tree.max_slot() + 1 != slots.len() {
        return Err(VerifyError::Config(format!(
            "tree has {} slots but {} were supplied",
            tree.max_slot() + 1,
            slots.len()
        )));
    }
    match eval_node(engine, tree, slots, n)? {
        Outcome::Group(g) => {
            if g.is_materialized() {
                Ok(*g)
            } else {
                Ok(engine.materialize(&g)?)
            }
        }
        Outcome::AtScale(subtree) => Err(VerifyError::Engine(EngineError::MemberCapExceeded {
            label: format!("subtree {subtree}"),
            partial: 0,
            cap: engine.caps.member_cap,
        })),
    }
}

struct Comparison {
    status: VerdictStatus,
    lhs_order: Option<usize>,
    rhs_order: Option<usize>,
    equal: Option<bool>,
    degenerate: bool,
    witness: Option<String>,
}

fn at_scale_comparison() -> Comparison {
    Comparison {
        status: VerdictStatus::NotVerifiedAtThisScale,
        lhs_order: None,
        rhs_order: None,
        equal: None,
        degenerate: false,
        witness: None,
    }
}

/// Compares two materialized sides. `require_rhs_subset` additionally
/// demands `rhs ⊆ lhs` (the a-priori monotone direction for all-E versus
/// mixed slots); `bound` is the folded-ideal upper bound both sides must
/// respect. Violations of either diagnostic count as mismatches.
fn compare_sides(
    engine: &Engine,
    lhs: &GroupSet,
    rhs: &GroupSet,
    require_rhs_subset: bool,
    bound: Option<&IdealSet>,
) -> Result<Comparison, VerifyError> {
    if let Some(fold) = bound {
        for side in [lhs, rhs] {
            if let Some(bad) = congruence_violation(side, fold) {
                return Ok(Comparison {
                    status: VerdictStatus::Mismatch,
                    lhs_order: lhs.order(),
                    rhs_order: rhs.order(),
                    equal: Some(false),
                    degenerate: false,
                    witness: Some(bad.render()),
                });
            }
        }
    }
    if require_rhs_subset && !engine.is_subgroup_of(rhs, lhs)? {
        let witness = engine
            .symmetric_difference_witness(lhs, rhs)?
            .map(|m| m.render());
        return Ok(Comparison {
            status: VerdictStatus::Mismatch,
            lhs_order: lhs.order(),
            rhs_order: rhs.order(),
            equal: Some(false),
            degenerate: false,
            witness,
        });
    }
    let equal = engine.subgroup_equal(lhs, rhs)?;
    let degenerate = equal && lhs.order() == Some(1) && rhs.order() == Some(1);
    let witness = if equal {
        None
    } else {
        engine
            .symmetric_difference_witness(lhs, rhs)?
            .map(|m| m.render())
    };
    Ok(Comparison {
        status: if equal {
            VerdictStatus::Verified
        } else {
            VerdictStatus::Mismatch
        },
        lhs_order: lhs.order(),
        rhs_order: rhs.order(),
        equal: Some(equal),
        degenerate,
        witness,
    })
}

/// First member violating `side ⊆ GL_n(A, fold)`, if any. Scans whole
/// sets up to 2^16 members, deterministic samples above.
fn congruence_violation(side: &GroupSet, fold: &IdealSet) -> Option<Mat> {
    let keys = side.sorted_keys()?;
    let check: Box<dyn Iterator<Item = u128>> = if keys.len() <= 1 << 16 {
        Box::new(keys.iter().copied())
    } else {
        let len = keys.len();
        let mut state = 0x9e3779b97f4a7c15u64;
        Box::new((0..4096).map(move |_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            keys[state as usize % len]
        }))
    };
    for key in check {
        let mat = Mat::from_key(side.ring().clone(), side.n(), key).ok()?;
        if !mat.congruent_to_identity_mod(fold) {
            return Some(mat);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn record(
    ring: &Arc<RingTable>,
    slot_ideals: &[&IdealSet],
    n: usize,
    tree: String,
    slot_kinds: &[SlotKind],
    cmp: Comparison,
    started: Instant,
) -> VerdictRecord {
    VerdictRecord {
        ring: ring.fingerprint().to_string(),
        ideals: slot_ideals.iter().map(|i| i.member_names()).collect(),
        n,
        tree,
        slots: slot_kinds.iter().map(|k| k.as_str().to_string()).collect(),
        status: cmp.status,
        lhs_order: cmp.lhs_order,
        rhs_order: cmp.rhs_order,
        equal: cmp.equal,
        degenerate: cmp.degenerate,
        witness: cmp.witness,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Evaluates `tree` under `slots` and under the all-E assignment of the
/// same tree, and compares. This is the common body of the generalized,
/// triple, multiple, and arrangement verifiers.
fn verify_tree_against_all_e(
    engine: &Engine,
    tree: &BracketTree,
    ideals: &[IdealSet],
    kinds: &[SlotKind],
    n: usize,
) -> Result<VerdictRecord, VerifyError> {
    let started = Instant::now();
    let ring = check_same_ring(ideals)?;
    if !kinds.contains(&SlotKind::E) {
        return Err(VerifyError::Config(
            "at least one slot must be the elementary subgroup".into(),
        ));
    }
    let slots: Vec<Slot> = ideals
        .iter()
        .zip(kinds)
        .map(|(i, &k)| Slot::new(i.clone(), k))
        .collect();
    let all_e: Vec<Slot> = ideals
        .iter()
        .map(|i| Slot::new(i.clone(), SlotKind::E))
        .collect();
    let fold = folded_ideal(tree, ideals)?;
    let lhs = eval_node(engine, tree, &slots, n)?;
    let rhs = eval_node(engine, tree, &all_e, n)?;
    let cmp = match (lhs, rhs) {
        (Outcome::Group(lhs), Outcome::Group(rhs)) => {
            compare_sides(engine, &lhs, &rhs, true, Some(&fold))?
        }
        _ => at_scale_comparison(),
    };
    let slot_ideals: Vec<&IdealSet> = ideals.iter().collect();
    Ok(record(&ring, &slot_ideals, n, tree.render(), kinds, cmp, started))
}

/// The standard commutator formula: `[E_n(A,I), GL_n(A)] = E_n(A,I)`
/// and `[E_n(A), GL_n(A,I)] = E_n(A,I)`, one record each.
pub fn verify_standard(
    engine: &Engine,
    ideal: &IdealSet,
    n: usize,
) -> Result<Vec<VerdictRecord>, VerifyError> {
    let ring = ideal.ring().clone();
    let unit = crate::ideal::ideal_generate(&ring, &[ring.one()])?;
    let tree = BracketTree::parse("[0,1]").expect("static tree");
    let mut out = Vec::new();
    for (ideals, kinds) in [
        (vec![ideal.clone(), unit.clone()], [SlotKind::E, SlotKind::Gl]),
        (vec![unit.clone(), ideal.clone()], [SlotKind::E, SlotKind::Gl]),
    ] {
        let started = Instant::now();
        let slots: Vec<Slot> = ideals
            .iter()
            .zip(kinds.iter())
            .map(|(i, &k)| Slot::new(i.clone(), k))
            .collect();
        let fold = folded_ideal(&tree, &ideals)?;
        let lhs = eval_node(engine, &tree, &slots, n)?;
        let rhs = match eval_node(
            engine,
            &BracketTree::Leaf(0),
            &[Slot::new(ideal.clone(), SlotKind::E)],
            n,
        )? {
            Outcome::Group(g) if g.is_materialized() => Outcome::Group(g),
            Outcome::Group(g) => match engine.materialize(&g) {
                Ok(g) => Outcome::Group(Box::new(g)),
                Err(EngineError::MemberCapExceeded { .. }) => Outcome::AtScale("E slot".into()),
                Err(e) => return Err(e.into()),
            },
            scale => scale,
        };
        let cmp = match (lhs, rhs) {
            (Outcome::Group(lhs), Outcome::Group(rhs)) => {
                compare_sides(engine, &lhs, &rhs, false, Some(&fold))?
            }
            _ => at_scale_comparison(),
        };
        let slot_ideals: Vec<&IdealSet> = ideals.iter().collect();
        out.push(record(&ring, &slot_ideals, n, tree.render(), &kinds, cmp, started));
    }
    Ok(out)
}

/// The generalized commutator formula:
/// `[E_n(A,I), GL_n(A,J)] = [E_n(A,I), E_n(A,J)]`.
pub fn verify_generalized(
    engine: &Engine,
    ideal_i: &IdealSet,
    ideal_j: &IdealSet,
    n: usize,
) -> Result<VerdictRecord, VerifyError> {
    let tree = BracketTree::parse("[0,1]").expect("static tree");
    verify_tree_against_all_e(
        engine,
        &tree,
        &[ideal_i.clone(), ideal_j.clone()],
        &[SlotKind::E, SlotKind::Gl],
        n,
    )
}

/// The triple formula:
/// `[[E_n(A,I), GL_n(A,J)], GL_n(A,K)] = [[E_n(A,I), E_n(A,J)], E_n(A,K)]`.
pub fn verify_triple(
    engine: &Engine,
    ideal_i: &IdealSet,
    ideal_j: &IdealSet,
    ideal_k: &IdealSet,
    n: usize,
) -> Result<VerdictRecord, VerifyError> {
    let tree = BracketTree::parse("[[0,1],2]").expect("static tree");
    verify_tree_against_all_e(
        engine,
        &tree,
        &[ideal_i.clone(), ideal_j.clone(), ideal_k.clone()],
        &[SlotKind::E, SlotKind::Gl, SlotKind::Gl],
        n,
    )
}

/// The multiple commutator formula in standard form:
/// `[E(A,I_0), GL(A,I_1), ..., GL(A,I_m)] = [E(A,I_0), ..., E(A,I_m)]`.
pub fn verify_multiple(
    engine: &Engine,
    ideals: &[IdealSet],
    n: usize,
) -> Result<VerdictRecord, VerifyError> {
    if ideals.len() < 2 {
        return Err(VerifyError::Config(
            "the multiple formula needs at least two ideals".into(),
        ));
    }
    let m = ideals.len() - 1;
    let tree = BracketTree::standard(m);
    let mut kinds = vec![SlotKind::Gl; ideals.len()];
    kinds[0] = SlotKind::E;
    verify_tree_against_all_e(engine, &tree, ideals, &kinds, n)
}

/// Arrangement verification: for each requested bracketing and each
/// requested slot assignment (default: every single-E placement plus the
/// all-E assignment), compares against the all-E evaluation of the same
/// tree.
pub fn verify_arrangements(
    engine: &Engine,
    ideals: &[IdealSet],
    n: usize,
    tree: Option<&BracketTree>,
    assignments: Option<&[Vec<SlotKind>]>,
) -> Result<Vec<VerdictRecord>, VerifyError> {
    if ideals.len() < 2 {
        return Err(VerifyError::Config(
            "arrangements need at least two ideals".into(),
        ));
    }
    let m = ideals.len() - 1;
    if m > 3 {
        return Err(VerifyError::Config(format!(
            "arrangements support at most 4 slots, got {}",
            m + 1
        )));
    }
    let trees: Vec<BracketTree> = match tree {
        Some(t) => {
            if t.max_slot() != m {
                return Err(VerifyError::Config(format!(
                    "tree {} has {} slots but {} ideals were supplied",
                    t.render(),
                    t.max_slot() + 1,
                    m + 1
                )));
            }
            vec![t.clone()]
        }
        None => enumerate_bracketings(m)?,
    };
    let assignments: Vec<Vec<SlotKind>> = match assignments {
        Some(a) => {
            for kinds in a {
                if kinds.len() != m + 1 {
                    return Err(VerifyError::Config(format!(
                        "slot assignment has {} entries, expected {}",
                        kinds.len(),
                        m + 1
                    )));
                }
            }
            a.to_vec()
        }
        None => {
            let mut all: Vec<Vec<SlotKind>> = (0..=m)
                .map(|e_at| {
                    (0..=m)
                        .map(|s| if s == e_at { SlotKind::E } else { SlotKind::Gl })
                        .collect()
                })
                .collect();
            all.push(vec![SlotKind::E; m + 1]);
            all
        }
    };
    let mut out = Vec::new();
    for t in &trees {
        for kinds in &assignments {
            out.push(verify_tree_against_all_e(engine, t, ideals, kinds, n)?);
        }
    }
    Ok(out)
}
