//! Exact computation in general linear groups over small finite rings.
//!
//! The crate builds finite unital rings as explicit operation tables, their
//! two-sided ideals, and `n x n` matrix groups over them (`3 <= n <= 4`).
//! On top of that it provides:
//!
//! * breadth-first subgroup closure, normal closure, and mixed commutator
//!   subgroups driven by generator lists,
//! * generator factories for relative elementary subgroups (Suslin
//!   generators) and congruence subgroups,
//! * a commutator-identity calculus (group identities, the Hall-Witt
//!   identity and its conjugated variant, the seven-term unipotent
//!   commutator expansion, and the case-by-case rewriting of commutators
//!   of elementary generators),
//! * verifiers that check the standard, generalized, triple, and multiple
//!   commutator formulas as exact set equalities, over every bracket
//!   arrangement of the slots.
//!
//! Everything is exact integer arithmetic on element indices; there are no
//! floating point values anywhere.

pub mod calculus;
pub mod groups;
pub mod ideal;
pub mod mat;
pub mod ring;
pub mod sampling;
pub mod trees;
pub mod verify;

pub use calculus::{
    check_commutator_expansion, check_group_identities, decompose_commutator_generator,
    CalculusError, CommutatorDecomposition, DecompositionCase, ExpansionParts, GenWord,
    IdentityReport, WordFactor,
};
pub use groups::{Caps, Engine, EngineError, GroupSet};
pub use ideal::{ideal_generate, ideal_product, ideal_sum, sym_product, IdealError, IdealSet};
pub use mat::{
    commutator, conjugate, elementary, elementary_level_generators, gl_generators,
    suslin_generators, GenDescriptor, GenKind, Mat, MatError,
};
pub use ring::{build_ring, build_ring_with_cap, enumerate_ideals, RingError, RingSpec, RingTable};
pub use trees::{enumerate_bracketings, BracketTree, TreeError};
pub use verify::{
    evaluate_multicommutator, folded_ideal, realize_slot, verify_arrangements,
    verify_generalized, verify_multiple, verify_standard, verify_triple, Slot, SlotKind,
    VerdictRecord, VerdictStatus, VerifyError,
};
