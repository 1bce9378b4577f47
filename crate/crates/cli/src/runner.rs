//! Verification run configuration and execution: dispatches the theorem
//! selectors, runs the lemma suites, assembles the report, and writes it
//! as JSON.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use thiserror::Error;

use glcomm_core::calculus::{
    check_commutator_expansion_with, check_group_identities_detailed,
    decompose_commutator_generator, product_expansion_left, product_expansion_right,
};
use glcomm_core::sampling::{random_congruence, random_element, random_invertible};
use glcomm_core::{
    build_ring_with_cap, commutator, elementary, sym_product, BracketTree, Caps, Engine,
    EngineError, IdealSet, Mat, MatError, RingError, RingTable, SlotKind, TreeError,
    VerdictRecord, VerifyError,
};

use crate::parse::{parse_ideal_list, parse_ring_spec, ParseError};
use crate::report::{LemmaCheck, ReportConfig, VerifyReport};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Exit code for failures that occur before a report exists.
    /// Parse and configuration problems are 3; a cross-check failure is
    /// a mathematical mismatch, hence 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Engine(EngineError::CrossCheckFailed(_)) => 1,
            RunError::Verify(VerifyError::Engine(EngineError::CrossCheckFailed(_))) => 1,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    Standard,
    Generalized,
    Triple,
    Multiple,
    Arrangements,
    Lemmas,
}

impl TheoremKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremKind::Standard => "standard",
            TheoremKind::Generalized => "generalized",
            TheoremKind::Triple => "triple",
            TheoremKind::Multiple => "multiple",
            TheoremKind::Arrangements => "arrangements",
            TheoremKind::Lemmas => "lemmas",
        }
    }

    pub fn parse(text: &str) -> Result<TheoremKind, RunError> {
        match text {
            "standard" => Ok(TheoremKind::Standard),
            "generalized" => Ok(TheoremKind::Generalized),
            "triple" => Ok(TheoremKind::Triple),
            "multiple" => Ok(TheoremKind::Multiple),
            "arrangements" => Ok(TheoremKind::Arrangements),
            "lemmas" => Ok(TheoremKind::Lemmas),
            other => Err(RunError::Config(format!("unknown theorem selector {other:?}"))),
        }
    }
}

pub const DEFAULT_MEMBER_CAP: usize = 1 << 24;
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// A verification run: either one explicit case (ring + ideals +
/// theorem) or a built-in profile.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ring: Option<String>,
    pub ideals: Option<String>,
    pub n: usize,
    pub theorem: Option<TheoremKind>,
    pub tree: Option<String>,
    pub slots: Option<String>,
    pub member_cap: usize,
    pub enum_cap: u64,
    pub seed: u64,
    pub samples: u64,
    pub quick: bool,
    pub flagship: bool,
    pub timings: bool,
    pub json_path: Option<PathBuf>,
    pub ring_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ring: None,
            ideals: None,
            n: 3,
            theorem: None,
            tree: None,
            slots: None,
            member_cap: DEFAULT_MEMBER_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            quick: false,
            flagship: false,
            timings: false,
            json_path: None,
            ring_cap: glcomm_core::ring::DEFAULT_RING_CAP,
        }
    }
}

/// One case of a built-in profile, written in spec text so the run also
/// exercises the parsers.
struct ProfileCase {
    ring: &'static str,
    ideals: &'static str,
    theorem: TheoremKind,
}

const QUICK_PROFILE: &[ProfileCase] = &[
    ProfileCase { ring: "Z/4", ideals: "(2)", theorem: TheoremKind::Lemmas },
    ProfileCase { ring: "Z/8", ideals: "(2)", theorem: TheoremKind::Lemmas },
    ProfileCase { ring: "Z/2[x]/(x^3)", ideals: "(x)", theorem: TheoremKind::Lemmas },
    ProfileCase { ring: "UT2(Z/2)", ideals: "(E12)", theorem: TheoremKind::Lemmas },
    ProfileCase { ring: "Z/4", ideals: "(2)", theorem: TheoremKind::Standard },
    ProfileCase { ring: "Z/2[x]/(x^2)", ideals: "(x)", theorem: TheoremKind::Standard },
    ProfileCase { ring: "Z/8", ideals: "(2),(2)", theorem: TheoremKind::Generalized },
    ProfileCase { ring: "Z/4", ideals: "(2),(2)", theorem: TheoremKind::Generalized },
    ProfileCase { ring: "UT2(Z/2)", ideals: "(E12),(E12)", theorem: TheoremKind::Generalized },
    ProfileCase { ring: "Z/8", ideals: "(2),(2),(2)", theorem: TheoremKind::Triple },
    ProfileCase { ring: "Z/8", ideals: "(2),(2),(2)", theorem: TheoremKind::Arrangements },
    ProfileCase { ring: "Z/8", ideals: "(2),(2),(2),(2)", theorem: TheoremKind::Multiple },
];

const FLAGSHIP_EXTRA: &[ProfileCase] = &[ProfileCase {
    ring: "Z/16",
    ideals: "(2),(2),(2)",
    theorem: TheoremKind::Triple,
}];

/// Executes the configured run and returns the report. The JSON file, if
/// requested, is written before returning.
pub fn run_verification(config: &RunConfig) -> Result<VerifyReport, RunError> {
    let engine = Engine::new(Caps {
        member_cap: config.member_cap,
        enum_cap: config.enum_cap,
        cross_check: false,
    });
    let mut verdicts: Vec<VerdictRecord> = Vec::new();
    let mut lemma_checks: Vec<LemmaCheck> = Vec::new();
    let mut config_echo = ReportConfig {
        ring: None,
        ideals: Vec::new(),
        n: config.n,
        theorem: config.theorem.map(|t| t.as_str().to_string()),
        tree: config.tree.clone(),
        slots: None,
        member_cap: config.member_cap,
        enum_cap: config.enum_cap,
        seed: config.seed,
        profile: if config.flagship {
            Some("flagship".into())
        } else if config.quick {
            Some("quick".into())
        } else {
            None
        },
        timings: config.timings,
    };

    if config.quick || config.flagship {
        if config.theorem.is_some() || config.ring.is_some() {
            return Err(RunError::Config(
                "profiles run a built-in case list; do not combine with --ring/--theorem".into(),
            ));
        }
        let mut cases: Vec<&ProfileCase> = QUICK_PROFILE.iter().collect();
        if config.flagship {
            cases.extend(FLAGSHIP_EXTRA.iter());
        }
        for case in cases {
            let spec = parse_ring_spec(case.ring)?;
            let ring = build_ring_with_cap(&spec, config.ring_cap)?;
            let ideals = parse_ideal_list(case.ideals, &ring)?;
            run_case(
                &engine,
                case.theorem,
                &ring,
                &ideals,
                config,
                None,
                None,
                &mut verdicts,
                &mut lemma_checks,
            )?;
        }
    } else {
        let theorem = config
            .theorem
            .ok_or_else(|| RunError::Config("--theorem required (or use a profile)".into()))?;
        let ring_text = config
            .ring
            .as_deref()
            .ok_or_else(|| RunError::Config("--ring required".into()))?;
        let spec = parse_ring_spec(ring_text)?;
        let ring = build_ring_with_cap(&spec, config.ring_cap)?;
        let ideal_text = config
            .ideals
            .as_deref()
            .ok_or_else(|| RunError::Config("--ideals required".into()))?;
        let ideals = parse_ideal_list(ideal_text, &ring)?;
        let tree = config
            .tree
            .as_deref()
            .map(BracketTree::parse)
            .transpose()?;
        let slots = config
            .slots
            .as_deref()
            .map(parse_slot_kinds)
            .transpose()?;
        config_echo.ring = Some(spec.render());
        config_echo.ideals = ideals.iter().map(|i| i.render()).collect();
        config_echo.slots = slots
            .as_ref()
            .map(|s| s.iter().map(|k| k.as_str().to_string()).collect());
        run_case(
            &engine,
            theorem,
            &ring,
            &ideals,
            config,
            tree.as_ref(),
            slots.as_deref(),
            &mut verdicts,
            &mut lemma_checks,
        )?;
    }

    let report = VerifyReport::new(config_echo, verdicts, lemma_checks);
    if let Some(path) = &config.json_path {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report)
}

fn parse_slot_kinds(text: &str) -> Result<Vec<SlotKind>, RunError> {
    text.split(',')
        .map(|part| SlotKind::parse(part).map_err(RunError::Verify))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn run_case(
    engine: &Engine,
    theorem: TheoremKind,
    ring: &Arc<RingTable>,
    ideals: &[IdealSet],
    config: &RunConfig,
    tree: Option<&BracketTree>,
    slots: Option<&[SlotKind]>,
    verdicts: &mut Vec<VerdictRecord>,
    lemma_checks: &mut Vec<LemmaCheck>,
) -> Result<(), RunError> {
    let expect = |count: usize| -> Result<(), RunError> {
        if ideals.len() != count {
            return Err(RunError::Config(format!(
                "theorem {:?} needs exactly {count} ideal spec(s), got {}",
                theorem.as_str(),
                ideals.len()
            )));
        }
        Ok(())
    };
    match theorem {
        TheoremKind::Standard => {
            expect(1)?;
            verdicts.extend(glcomm_core::verify_standard(engine, &ideals[0], config.n)?);
        }
        TheoremKind::Generalized => {
            expect(2)?;
            verdicts.push(glcomm_core::verify_generalized(
                engine, &ideals[0], &ideals[1], config.n,
            )?);
        }
        TheoremKind::Triple => {
            expect(3)?;
            verdicts.push(glcomm_core::verify_triple(
                engine, &ideals[0], &ideals[1], &ideals[2], config.n,
            )?);
        }
        TheoremKind::Multiple => {
            if ideals.len() < 2 {
                return Err(RunError::Config(
                    "the multiple formula needs at least two ideals".into(),
                ));
            }
            verdicts.push(glcomm_core::verify_multiple(engine, ideals, config.n)?);
        }
        TheoremKind::Arrangements => {
            let assignments = slots.map(|s| vec![s.to_vec()]);
            verdicts.extend(glcomm_core::verify_arrangements(
                engine,
                ideals,
                config.n,
                tree,
                assignments.as_deref(),
            )?);
        }
        TheoremKind::Lemmas => {
            lemma_checks.extend(run_lemma_suite(engine, ring, ideals, config)?);
        }
    }
    Ok(())
}

fn lemma_record(
    name: &str,
    ring: &RingTable,
    ideals: &[&IdealSet],
    cases: u64,
    failures: u64,
    started: Instant,
) -> LemmaCheck {
    LemmaCheck {
        lemma: name.to_string(),
        ring: ring.fingerprint().to_string(),
        ideals: ideals.iter().map(|i| i.render()).collect(),
        cases,
        failures,
        pass: failures == 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// The lemma suite over one ring: elementary relations, group
/// identities, product expansions, the Suslin-generator equivalence, the
/// symmetrized-product containment chain, the exhaustive commutator
/// decomposition, and the seven-term expansion.
pub fn run_lemma_suite(
    engine: &Engine,
    ring: &Arc<RingTable>,
    ideals: &[IdealSet],
    config: &RunConfig,
) -> Result<Vec<LemmaCheck>, RunError> {
    let n = config.n;
    let samples = config.samples;
    let ideal_i = ideals
        .first()
        .ok_or_else(|| RunError::Config("lemma suite needs at least one ideal".into()))?;
    let ideal_j = ideals.get(1).unwrap_or(ideal_i);
    let mut out = Vec::new();

    // (E1)-(E3) over every index pattern, sampled coefficients
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xe1e2e3);
    let mut failures = 0u64;
    for _ in 0..samples {
        let a = random_element(ring, &mut rng);
        let b = random_element(ring, &mut rng);
        if !elementary_relations_hold(ring, n, a, b)? {
            failures += 1;
        }
    }
    out.push(lemma_record(
        "elementary-relations",
        ring,
        &[],
        samples,
        failures,
        started,
    ));

    // (C1)-(C5), Hall-Witt, and the conjugated variant on random triples
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xc1c5);
    let mut failures = 0u64;
    for _ in 0..samples {
        let x = random_invertible(ring, n, &mut rng);
        let y = random_invertible(ring, n, &mut rng);
        let z = random_invertible(ring, n, &mut rng);
        let report = check_group_identities_detailed(&x, &y, &z)
            .map_err(|e| RunError::Config(e.to_string()))?;
        if !report.all() {
            failures += 1;
        }
    }
    out.push(lemma_record(
        "group-identities",
        ring,
        &[],
        samples,
        failures,
        started,
    ));

    // (C1+)/(C2+) with up to four factors
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xc1b1);
    let mut failures = 0u64;
    let expansion_cases = (samples / 10).max(100);
    for _ in 0..expansion_cases {
        let x = random_invertible(ring, n, &mut rng);
        for k in 1..=4usize {
            let us: Vec<Mat> = (0..k).map(|_| random_invertible(ring, n, &mut rng)).collect();
            let ok = product_expansion_left(&x, &us).map_err(|e| RunError::Config(e.to_string()))?
                && product_expansion_right(&us, &x)
                    .map_err(|e| RunError::Config(e.to_string()))?;
            if !ok {
                failures += 1;
            }
        }
    }
    out.push(lemma_record(
        "product-expansions",
        ring,
        &[],
        expansion_cases * 4,
        failures,
        started,
    ));

    // Suslin-generator equivalence with the normal-closure definition
    let bound = (ideal_i.members().len() as u128).saturating_pow((n * n) as u32);
    if bound <= engine.caps.enum_cap as u128 {
        let started = Instant::now();
        let via_suslin = engine.relative_elementary(ideal_i, n)?;
        let via_nc = engine.relative_elementary_by_normal_closure(ideal_i, n)?;
        let equal = engine.subgroup_equal(&via_suslin, &via_nc)?;
        out.push(lemma_record(
            "suslin-generator-equivalence",
            ring,
            &[ideal_i],
            1,
            u64::from(!equal),
            started,
        ));
    }

    // containment chain E(A,IJ+JI) ⊆ [E(I),E(J)] ⊆ [E(A,I),E(A,J)] ⊆ GL(A,IJ+JI)
    let sym = sym_product(ideal_i, ideal_j).map_err(|e| RunError::Config(e.to_string()))?;
    let sym_bound = (sym.members().len() as u128).saturating_pow((n * n) as u32);
    if sym_bound <= engine.caps.enum_cap as u128 {
        let started = Instant::now();
        let e_sym = engine.relative_elementary(&sym, n)?;
        // commutator arguments need generator lists only; the level and
        // relative subgroups themselves may be far larger than the chain
        let level = |ideal: &IdealSet| -> Result<glcomm_core::GroupSet, RunError> {
            let gens: Vec<Mat> = glcomm_core::elementary_level_generators(ideal, n)?
                .into_iter()
                .map(|d| d.into_mat())
                .collect();
            Ok(glcomm_core::GroupSet::from_generators(ring, n, gens, "E(I)")?)
        };
        let suslin = |ideal: &IdealSet| -> Result<glcomm_core::GroupSet, RunError> {
            let gens: Vec<Mat> = glcomm_core::suslin_generators(ideal, n)?
                .into_iter()
                .map(|d| d.into_mat())
                .collect();
            Ok(glcomm_core::GroupSet::from_generators(ring, n, gens, "E(A,I)")?)
        };
        let inner = engine.commutator_subgroup(&level(ideal_i)?, &level(ideal_j)?)?;
        let outer = engine.commutator_subgroup(&suslin(ideal_i)?, &suslin(ideal_j)?)?;
        let gl_sym = engine.congruence_members(&sym, n)?;
        let chain_holds = engine.is_subgroup_of(&e_sym, &inner)?
            && engine.is_subgroup_of(&inner, &outer)?
            && engine.is_subgroup_of(&outer, &gl_sym)?;
        out.push(lemma_record(
            "containment-chain",
            ring,
            &[ideal_i, ideal_j],
            4,
            u64::from(!chain_holds),
            started,
        ));
    }

    // exhaustive commutator decomposition: all index patterns for n = 3
    // plus the disjoint patterns at n = 4
    let started = Instant::now();
    let mut cases = 0u64;
    for dim in [3usize, 4] {
        for i_p in 1..=dim {
            for j_p in 1..=dim {
                if i_p == j_p {
                    continue;
                }
                for i in 1..=dim {
                    for j in 1..=dim {
                        if i == j {
                            continue;
                        }
                        // at n = 4 only the patterns unrealizable at n = 3
                        let disjoint = i_p != j && j_p != i && i_p != i && j_p != j;
                        if dim == 4 && !disjoint {
                            continue;
                        }
                        for &alpha in ideal_i.members() {
                            for &beta in ideal_j.members() {
                                for a in ring.elements() {
                                    // evaluation equality is asserted inside
                                    decompose_commutator_generator(
                                        ring,
                                        dim,
                                        i_p,
                                        j_p,
                                        alpha,
                                        i,
                                        j,
                                        a,
                                        beta,
                                        Some((ideal_i, ideal_j)),
                                    )
                                    .map_err(|e| RunError::Config(e.to_string()))?;
                                    cases += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(lemma_record(
        "commutator-decomposition",
        ring,
        &[ideal_i, ideal_j],
        cases,
        0,
        started,
    ));

    // seven-term expansion plus entry membership in IJ + JI
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x7e77);
    let mut failures = 0u64;
    for _ in 0..samples {
        let e = random_congruence(ideal_j, n, &mut rng);
        let g = random_congruence(ideal_i, n, &mut rng);
        let check = check_commutator_expansion_with(&e, &g, &sym)
            .map_err(|e| RunError::Config(e.to_string()))?;
        if !check.holds() {
            failures += 1;
        }
    }
    out.push(lemma_record(
        "seven-term-expansion",
        ring,
        &[ideal_i, ideal_j],
        samples,
        failures,
        started,
    ));

    Ok(out)
}

/// (E1), (E2), (E3) over every index pattern at the sampled pair.
fn elementary_relations_hold(
    ring: &Arc<RingTable>,
    n: usize,
    a: u8,
    b: u8,
) -> Result<bool, RunError> {
    let check = |cond: bool| if cond { Ok(()) } else { Err(()) };
    let result: Result<(), ()> = (|| {
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let eij_a = elementary(ring, n, i, j, a).map_err(|_| ())?;
                let eij_b = elementary(ring, n, i, j, b).map_err(|_| ())?;
                let sum = elementary(ring, n, i, j, ring.add(a, b)).map_err(|_| ())?;
                check(eij_a.mul(&eij_b).map_err(|_| ())? == sum)?;
                for k in 1..=n {
                    for l in 1..=n {
                        if k == l {
                            continue;
                        }
                        let ekl_b = elementary(ring, n, k, l, b).map_err(|_| ())?;
                        let c = commutator(&eij_a, &ekl_b).map_err(|_| ())?;
                        if i != l && j != k {
                            check(c.is_identity())?;
                        } else if j == k && i != l {
                            let expected =
                                elementary(ring, n, i, l, ring.mul(a, b)).map_err(|_| ())?;
                            check(c == expected)?;
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    Ok(result.is_ok())
}
