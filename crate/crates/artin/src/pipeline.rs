//! End-to-end decomposition driver and report verification.
//!
//! `decompose` runs the stages in order — radical, center of the quotient,
//! primitive idempotents, simple components with matrix units and
//! representations, lifted basis — and stops at the first stage that cannot
//! complete, recording the failure instead of discarding the earlier
//! results. Input problems (non-associative products, malformed parameter
//! names) are hard errors; stage failures are data.
//!
//! `verify_report` replays the claims of a serialized report against a
//! freshly rebuilt algebra: it does not rerun the decomposition, it checks
//! the reported vectors satisfy the defining equations of each stage.

use malachite::base::num::basic::traits::Zero;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, AssocCheck, Element, ReducedIdealBasis};
use crate::boolsemi::MultiplicationTable;
use crate::center::{center_of, CenterData};
use crate::exactla::{format_rational, Matrix, Rational, RowSpace};
use crate::malcev::{
    apply_parameters, lift_general, LiftOutcome, MalcevConfig, DEFAULT_DENSE_LIMIT,
};
use crate::radical::{dickson_matrix, drazin_matrix, radical_from_trace_matrix, RadicalData};
use crate::report::{
    param_name, parse_param_name, parse_vector, parse_vectors, vector_strings, vectors_strings,
    CenterReport, ComponentReport, DecompositionReport, FailureReport, InputReport, LiftReport,
    RadicalReport, ReportError, SplitInfoReport, SplitReport, REPORT_FORMAT,
};
use crate::rng::SplitMix64;
use crate::split::{
    split_to_idempotents, SplitConfig, SplitOutcome, DEFAULT_KRONECKER_CAP,
    DEFAULT_PRIMITIVE_TRIALS,
};
use crate::wedderburn::{
    assemble_representations, component_from_idempotent, ComponentStatus, RepresentationSet,
    SimpleComponent, WedderburnConfig, DEFAULT_DESCENT_BUDGET,
};

/// Associativity checking policy. `Auto` checks every triple up to
/// dimension 64 and falls back to seeded sampling above that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocMode {
    Auto,
    Exhaustive,
    Sampled(usize),
    Off,
}

impl AssocMode {
    pub fn parse(s: &str) -> Option<AssocMode> {
        match s {
            "auto" => Some(AssocMode::Auto),
            "exhaustive" => Some(AssocMode::Exhaustive),
            "sampled" => Some(AssocMode::Sampled(1000)),
            "off" => Some(AssocMode::Off),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    pub seed: u64,
    pub check_assoc: AssocMode,
    /// Degree bound for minimal-polynomial factoring during splitting.
    pub kronecker_cap: usize,
    /// Random candidate budget for primitive idempotent discovery.
    pub primitive_trials: usize,
    /// Random candidate budget for minimal left ideal discovery.
    pub descent_budget: usize,
    /// Compute the lifted basis (the most expensive stage on large inputs).
    pub lift: bool,
    /// Values for the free lift parameters, e.g. `("x4_2", 1)`.
    pub lift_params: Vec<(String, Rational)>,
    /// Unknown-count ceiling for the dense lifting solver.
    pub dense_limit: usize,
    /// Testing hook: force the dense lifting solver.
    pub force_dense: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            seed: 0,
            check_assoc: AssocMode::Auto,
            kronecker_cap: DEFAULT_KRONECKER_CAP,
            primitive_trials: DEFAULT_PRIMITIVE_TRIALS,
            descent_budget: DEFAULT_DESCENT_BUDGET,
            lift: true,
            lift_params: Vec::new(),
            dense_limit: DEFAULT_DENSE_LIMIT,
            force_dense: false,
        }
    }
}

#[derive(Debug, Clone)]
pub enum DecomposeInput {
    Table {
        table: MultiplicationTable,
        description: String,
    },
    Algebra {
        algebra: Algebra,
        description: String,
    },
}

impl DecomposeInput {
    pub fn table(table: MultiplicationTable, description: impl Into<String>) -> Self {
        DecomposeInput::Table {
            table,
            description: description.into(),
        }
    }

    pub fn algebra(algebra: Algebra, description: impl Into<String>) -> Self {
        DecomposeInput::Algebra {
            algebra,
            description: description.into(),
        }
    }

    pub fn description(&self) -> &str {
        match self {
            DecomposeInput::Table { description, .. } => description,
            DecomposeInput::Algebra { description, .. } => description,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("table is not associative: elements ({i}, {j}, {k}) violate (ab)c = a(bc)")]
    TableNotAssociative { i: usize, j: usize, k: usize },
    #[error("invalid lift parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

/// Where a partial decomposition stopped, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageFailure {
    pub stage: &'static str,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The algebra the stages ran on (identity adjoined when needed).
    pub algebra: Algebra,
    pub description: String,
    pub original_dimension: usize,
    pub identity_adjoined: bool,
    pub associativity_check: String,
    pub seed: u64,
    pub notes: Vec<String>,
    pub radical: Option<RadicalData>,
    pub center: Option<CenterData>,
    pub split: Option<SplitOutcome>,
    pub components: Option<Vec<SimpleComponent>>,
    pub representations: Option<RepresentationSet>,
    pub lift: Option<LiftOutcome>,
    /// Lift after applying the requested parameters (equals the canonical
    /// lift when none were given).
    pub lifted_chosen: Option<Vec<Element>>,
    pub applied_parameters: Vec<(String, Rational)>,
    pub failure: Option<StageFailure>,
}

impl Decomposition {
    /// `dim A / dim radical / dim quotient / component sizes ascending`.
    /// Split components list their matrix size; a component that is simple
    /// but not a matrix algebra over the rationals is rendered as its
    /// dimension with a `*` marker.
    pub fn summary(&self) -> Option<String> {
        let rad = self.radical.as_ref()?;
        let comps = self.components.as_ref()?;
        let sizes = comps.iter().map(|c| (c.matrix_size, c.dim()));
        Some(summary_line(
            self.algebra.dim(),
            rad.radical_dim(),
            rad.quotient_dim(),
            sizes,
        ))
    }
}

fn summary_line(
    dim: usize,
    radical_dim: usize,
    quotient_dim: usize,
    sizes: impl Iterator<Item = (Option<usize>, usize)>,
) -> String {
    let mut rendered: Vec<(usize, bool, String)> = sizes
        .map(|(q, s)| match q {
            Some(q) => (q, false, q.to_string()),
            None => (s, true, format!("{s}*")),
        })
        .collect();
    rendered.sort();
    let joined: Vec<&str> = rendered.iter().map(|(_, _, s)| s.as_str()).collect();
    format!(
        "{} / {} / {} / {}",
        dim,
        radical_dim,
        quotient_dim,
        joined.join(",")
    )
}

fn stage_failure(stage: &'static str, message: impl ToString) -> Option<StageFailure> {
    Some(StageFailure {
        stage,
        message: message.to_string(),
    })
}

/// Run the full decomposition. Returns `Err` only for input problems; a
/// stage that cannot complete leaves its failure in the result.
pub fn decompose(
    input: DecomposeInput,
    opts: &DecomposeOptions,
) -> Result<Decomposition, PipelineError> {
    let mut t = std::time::Instant::now();
    let (mut algebra, table, description) = match input {
        DecomposeInput::Table { table, description } => {
            (table.semigroup_algebra(), Some(table), description)
        }
        DecomposeInput::Algebra {
            algebra,
            description,
        } => (algebra, None, description),
    };
    crate::timing::mark("pipeline: build algebra", t);
    t = std::time::Instant::now();

    let associativity_check = match (&table, opts.check_assoc) {
        (_, AssocMode::Off) => "skipped".to_string(),
        (Some(t), _) => {
            t.check_associative()
                .map_err(|(i, j, k)| PipelineError::TableNotAssociative { i, j, k })?;
            "exhaustive (table)".to_string()
        }
        (None, mode) => {
            let check = match mode {
                AssocMode::Exhaustive => AssocCheck::Exhaustive,
                AssocMode::Sampled(triples) => AssocCheck::Sampled {
                    triples,
                    seed: opts.seed,
                },
                AssocMode::Auto => {
                    if algebra.dim() <= 64 {
                        AssocCheck::Exhaustive
                    } else {
                        AssocCheck::Sampled {
                            triples: 1000,
                            seed: opts.seed,
                        }
                    }
                }
                AssocMode::Off => unreachable!(),
            };
            algebra.check_associativity(check)?;
            match check {
                AssocCheck::Exhaustive => "exhaustive".to_string(),
                AssocCheck::Sampled { triples, .. } => format!("sampled ({triples} triples)"),
                AssocCheck::Off => unreachable!(),
            }
        }
    };

    crate::timing::mark("pipeline: associativity", t);

    let original_dimension = algebra.dim();
    let mut notes = Vec::new();
    let mut identity_adjoined = false;
    if algebra.one().is_none() {
        if let Some(e) = algebra.find_identity() {
            algebra.set_one(Some(e));
        } else {
            algebra = algebra.adjoin_identity();
            identity_adjoined = true;
            notes.push("no identity element; adjoined one as the last basis element".to_string());
        }
    }

    let mut dec = Decomposition {
        algebra,
        description,
        original_dimension,
        identity_adjoined,
        associativity_check,
        seed: opts.seed,
        notes,
        radical: None,
        center: None,
        split: None,
        components: None,
        representations: None,
        lift: None,
        lifted_chosen: None,
        applied_parameters: Vec::new(),
        failure: None,
    };

    // Radical. A table input keeps the fixed-point-count trace matrix,
    // unless an identity had to be adjoined (the table no longer describes
    // the enlarged algebra).
    t = std::time::Instant::now();
    let delta = match (&table, identity_adjoined) {
        (Some(tab), false) => drazin_matrix(tab),
        _ => dickson_matrix(&dec.algebra),
    };
    crate::timing::mark("pipeline: trace matrix", t);
    t = std::time::Instant::now();
    let rad = match radical_from_trace_matrix(&dec.algebra, delta) {
        Ok(r) => r,
        Err(e) => {
            dec.failure = stage_failure("radical", e);
            return Ok(dec);
        }
    };
    dec.radical = Some(rad);
    crate::timing::mark("pipeline: radical + quotient", t);
    t = std::time::Instant::now();

    // Center of the semisimple quotient.
    let center = {
        let rad = dec.radical.as_ref().unwrap();
        center_of(&rad.quotient)
    };
    let center = match center {
        Ok(c) => c,
        Err(e) => {
            dec.failure = stage_failure("center", e);
            return Ok(dec);
        }
    };
    dec.center = Some(center);
    crate::timing::mark("pipeline: center", t);
    t = std::time::Instant::now();

    // Primitive idempotents of the center.
    let split = {
        let center = dec.center.as_ref().unwrap();
        split_to_idempotents(
            &center.algebra,
            &SplitConfig {
                seed: opts.seed,
                kronecker_cap: opts.kronecker_cap,
                primitive_trials: opts.primitive_trials,
            },
        )
    };
    let split = match split {
        Ok(s) => s,
        Err(e) => {
            dec.failure = stage_failure("split", e);
            return Ok(dec);
        }
    };
    if !split.unresolved.is_empty() {
        let mut msgs: Vec<String> = split
            .unresolved
            .iter()
            .map(|u| format!("subspace of dimension {}: {}", u.dim, u.note))
            .collect();
        msgs.sort();
        dec.failure = stage_failure(
            "split",
            format!(
                "{} center subspace(s) were not split: {}",
                split.unresolved.len(),
                msgs.join("; ")
            ),
        );
        dec.split = Some(split);
        return Ok(dec);
    }
    dec.split = Some(split);
    crate::timing::mark("pipeline: split", t);
    t = std::time::Instant::now();

    // Simple components, their matrix units, and representations.
    let mut comps: Vec<SimpleComponent> = Vec::new();
    let mut comp_notes: Vec<String> = Vec::new();
    {
        let rad = dec.radical.as_ref().unwrap();
        let center = dec.center.as_ref().unwrap();
        let split = dec.split.as_ref().unwrap();
        let cfg = WedderburnConfig {
            seed: opts.seed,
            descent_budget: opts.descent_budget,
        };
        for (e_z, info) in split.idempotents.iter().zip(&split.components) {
            let e_q = center.to_ambient(e_z);
            match component_from_idempotent(&rad.quotient, &e_q, info, &cfg) {
                Ok(c) => {
                    if let Some(note) = &c.note {
                        comp_notes.push(format!("component {}: {}", comps.len() + 1, note));
                    }
                    comps.push(c);
                }
                Err(e) => {
                    dec.notes.extend(comp_notes);
                    dec.failure = stage_failure("components", e);
                    return Ok(dec);
                }
            }
        }
    }
    dec.notes.extend(comp_notes);
    crate::timing::mark("pipeline: components", t);
    t = std::time::Instant::now();
    let reps = {
        let rad = dec.radical.as_ref().unwrap();
        assemble_representations(rad.quotient_dim(), &comps)
    };
    dec.components = Some(comps);
    let reps = match reps {
        Ok(r) => r,
        Err(e) => {
            dec.failure = stage_failure("representations", e);
            return Ok(dec);
        }
    };
    dec.representations = Some(reps);
    crate::timing::mark("pipeline: representations", t);

    // Lifted basis.
    if opts.lift {
        t = std::time::Instant::now();
        let lift = {
            let rad = dec.radical.as_ref().unwrap();
            let comps = dec.components.as_ref().unwrap();
            lift_general(
                &dec.algebra,
                rad,
                comps,
                &MalcevConfig {
                    dense_limit: opts.dense_limit,
                    force_dense: opts.force_dense,
                    ..MalcevConfig::default()
                },
            )
        };
        let lift = match lift {
            Ok(l) => l,
            Err(e) => {
                dec.failure = stage_failure("lift", e);
                return Ok(dec);
            }
        };
        if opts.lift_params.is_empty() {
            dec.lifted_chosen = Some(lift.lifted.clone());
        } else {
            let mut assignments = Vec::with_capacity(opts.lift_params.len());
            for (name, value) in &opts.lift_params {
                let (i, l) = parse_param_name(name)
                    .ok_or_else(|| PipelineError::BadParameter(name.clone()))?;
                assignments.push(((i, l), value.clone()));
            }
            let chosen = apply_parameters(&lift, &assignments)
                .map_err(|e| PipelineError::BadParameter(e.to_string()))?;
            dec.lifted_chosen = Some(chosen);
            dec.applied_parameters = opts.lift_params.clone();
        }
        dec.lift = Some(lift);
        crate::timing::mark("pipeline: lift", t);
    }

    Ok(dec)
}

/// Serialize a decomposition. The rendering is deterministic: same input
/// and seed, same bytes.
pub fn build_report(dec: &Decomposition) -> DecompositionReport {
    let input = InputReport {
        description: dec.description.clone(),
        dimension: dec.algebra.dim(),
        original_dimension: dec.original_dimension,
        identity_adjoined: dec.identity_adjoined,
        associativity_check: dec.associativity_check.clone(),
        seed: dec.seed,
    };
    let radical = dec.radical.as_ref().map(|r| RadicalReport {
        radical_dim: r.radical_dim(),
        quotient_dim: r.quotient_dim(),
        radical_basis: vectors_strings(&r.canonical_basis),
        quotient_relations: vectors_strings(&r.reduced.rows),
    });
    let center = dec.center.as_ref().map(|c| {
        let mut structure = Vec::new();
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                for (k, coeff) in c.algebra.structure_row(i, j) {
                    structure.push((i + 1, j + 1, *k as usize + 1, format_rational(coeff)));
                }
            }
        }
        CenterReport {
            center_dim: c.dim(),
            center_basis: vectors_strings(&c.basis),
            center_structure: structure,
        }
    });
    let split = dec
        .split
        .as_ref()
        .zip(dec.center.as_ref())
        .map(|(s, c)| SplitReport {
            idempotents: s
                .idempotents
                .iter()
                .map(|e| vector_strings(&c.to_ambient(e)))
                .collect(),
            components: s
                .components
                .iter()
                .map(|i| SplitInfoReport {
                    center_degree: i.center_degree,
                    center_min_poly: vector_strings(i.center_min_poly.coeffs()),
                })
                .collect(),
        });
    let components = dec.components.as_ref().map(|comps| {
        let rad = dec.radical.as_ref().expect("components imply radical");
        let n = dec.algebra.dim();
        let projected: Vec<Element> = (0..n)
            .map(|t| {
                let mut unit = vec![Rational::ZERO; n];
                unit[t] = malachite::base::num::basic::traits::One::ONE;
                rad.reduced.project(&unit)
            })
            .collect();
        comps
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let representation = dec.representations.as_ref().and_then(|reps| {
                    c.matrix_size?;
                    let mats: Option<Vec<Vec<Vec<String>>>> = projected
                        .iter()
                        .map(|y| {
                            reps.matrix_of(ci, y).map(|m| {
                                (0..m.rows()).map(|r| vector_strings(m.row(r))).collect()
                            })
                        })
                        .collect();
                    mats
                });
                ComponentReport {
                    dimension: c.dim(),
                    status: match c.status {
                        ComponentStatus::Split => "split",
                        ComponentStatus::NonSplitCenter => "non-split-center",
                        ComponentStatus::UnitsNotFound => "units-not-found",
                    }
                    .to_string(),
                    center_degree: c.center_degree,
                    center_min_poly: vector_strings(c.center_min_poly.coeffs()),
                    matrix_size: c.matrix_size,
                    idempotent: vector_strings(&c.idempotent),
                    basis: vectors_strings(&c.basis),
                    matrix_units: c.matrix_units.as_ref().map(|u| vectors_strings(u)),
                    minimal_left_ideal: c.minimal_left_ideal.as_ref().map(|u| vectors_strings(u)),
                    representation,
                    note: c.note.clone(),
                }
            })
            .collect()
    });
    let lift = dec.lift.as_ref().map(|l| LiftReport {
        stages: l.stages,
        params_free: l.params_free(),
        param_names: l
            .free_vars
            .iter()
            .map(|(i, l2)| param_name(*i, *l2))
            .collect(),
        applied_parameters: dec
            .applied_parameters
            .iter()
            .map(|(n, v)| (n.clone(), format_rational(v)))
            .collect(),
        basis: vectors_strings(dec.lifted_chosen.as_ref().unwrap_or(&l.lifted)),
        stage_dims: l.stage_dims.clone(),
    });
    DecompositionReport {
        format: REPORT_FORMAT.to_string(),
        input,
        summary: dec.summary(),
        notes: dec.notes.clone(),
        radical,
        center,
        split,
        components,
        lift,
        failure: dec.failure.as_ref().map(|f| FailureReport {
            stage: f.stage.to_string(),
            message: f.message.clone(),
        }),
    }
}

/// Check a serialized report against a rebuilt input. Returns the list of
/// discrepancies; an empty list means every reported claim checked out.
/// Expensive checks are sampled deterministically on large inputs.
pub fn verify_report(
    input: DecomposeInput,
    report: &DecompositionReport,
) -> Result<Vec<String>, PipelineError> {
    let mut problems: Vec<String> = Vec::new();

    let (mut algebra, table) = match input {
        DecomposeInput::Table { table, .. } => (table.semigroup_algebra(), Some(table)),
        DecomposeInput::Algebra { algebra, .. } => (algebra, None),
    };
    let mut identity_adjoined = false;
    if algebra.one().is_none() {
        if let Some(e) = algebra.find_identity() {
            algebra.set_one(Some(e));
        } else {
            algebra = algebra.adjoin_identity();
            identity_adjoined = true;
        }
    }
    if identity_adjoined != report.input.identity_adjoined {
        problems.push(format!(
            "identity handling differs: input {} an adjoined identity, report says {}",
            if identity_adjoined { "needs" } else { "does not need" },
            report.input.identity_adjoined
        ));
    }
    let n = algebra.dim();
    if n != report.input.dimension {
        problems.push(format!(
            "dimension mismatch: rebuilt algebra has {}, report says {}",
            n, report.input.dimension
        ));
        return Ok(problems);
    }
    let seed = report.input.seed;

    // Radical claims.
    let mut quotient: Option<(Algebra, ReducedIdealBasis)> = None;
    let mut radical_rows: Vec<Element> = Vec::new();
    if let Some(r) = &report.radical {
        let basis = parse_vectors("radical_basis", &r.radical_basis)?;
        if basis.len() != r.radical_dim {
            problems.push("radical_basis length differs from radical_dim".to_string());
        }
        if r.radical_dim + r.quotient_dim != n {
            problems.push("radical_dim + quotient_dim does not equal the dimension".to_string());
        }
        if basis.iter().any(|v| v.len() != n) {
            problems.push("radical_basis vector of wrong width".to_string());
            return Ok(problems);
        }
        let delta = match (&table, identity_adjoined) {
            (Some(t), false) => drazin_matrix(t),
            _ => dickson_matrix(&algebra),
        };
        for (k, v) in basis.iter().enumerate() {
            if delta.mul_vec(v).iter().any(|c| *c != Rational::ZERO) {
                problems.push(format!(
                    "radical basis vector {} is not annihilated by the trace matrix",
                    k + 1
                ));
            }
        }
        let mut span = RowSpace::new();
        for v in &basis {
            span.insert(v);
        }
        if span.dim() != basis.len() {
            problems.push("radical basis vectors are linearly dependent".to_string());
        }
        // Two-sided ideal closure, sampled on large inputs.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        if n <= 64 {
            for i in 0..n {
                for (vk, _) in basis.iter().enumerate() {
                    pairs.push((i, vk));
                }
            }
        } else if !basis.is_empty() {
            let mut rng = SplitMix64::derive(seed, 0x7261642d636c6f73);
            for _ in 0..200 {
                pairs.push((
                    rng.below(n as u64) as usize,
                    rng.below(basis.len() as u64) as usize,
                ));
            }
        }
        for (i, vk) in pairs {
            let left = algebra.mul_basis_left(i, &basis[vk]);
            let right = algebra.mul_basis_right(&basis[vk], i);
            if !span.contains(&left) || !span.contains(&right) {
                problems.push(format!(
                    "radical is not closed under multiplication by basis element {}",
                    i + 1
                ));
                break;
            }
        }
        // The reduced relations must describe the same span, and rebuild
        // the quotient they claim.
        let relations = parse_vectors("quotient_relations", &r.quotient_relations)?;
        match algebra.quotient_by_ideal(&basis, false) {
            Ok((q, red)) => {
                if red.rows != relations {
                    problems.push(
                        "quotient_relations are not the row canonical form of the radical"
                            .to_string(),
                    );
                }
                if q.dim() != r.quotient_dim {
                    problems.push("quotient dimension differs from quotient_dim".to_string());
                } else {
                    let delta_q = dickson_matrix(&q);
                    if delta_q.invert().is_err() {
                        problems.push(
                            "quotient trace matrix is singular; the quotient is not semisimple"
                                .to_string(),
                        );
                    }
                    quotient = Some((q, red));
                }
            }
            Err(e) => problems.push(format!("radical span does not define a quotient: {e}")),
        }
        radical_rows = basis;
    }

    // Center claims.
    if let (Some(c), Some((q, _))) = (&report.center, &quotient) {
        let zs = parse_vectors("center_basis", &c.center_basis)?;
        if zs.len() != c.center_dim {
            problems.push("center_basis length differs from center_dim".to_string());
        }
        let mut span = RowSpace::new();
        for z in &zs {
            if z.len() != q.dim() {
                problems.push("center vector of wrong width".to_string());
                return Ok(problems);
            }
            span.insert(z);
        }
        if span.dim() != zs.len() {
            problems.push("center basis vectors are linearly dependent".to_string());
        }
        for (zk, z) in zs.iter().enumerate() {
            for i in 0..q.dim() {
                if q.mul_basis_left(i, z) != q.mul_basis_right(z, i) {
                    problems.push(format!(
                        "center vector {} does not commute with quotient basis element {}",
                        zk + 1,
                        i + 1
                    ));
                    break;
                }
            }
        }
        // Structure table: z_i z_j must equal the reported expansion.
        let mut expansions = vec![Vec::new(); zs.len() * zs.len()];
        for (i, j, k, coeff) in &c.center_structure {
            if *i == 0 || *j == 0 || *k == 0 || *i > zs.len() || *j > zs.len() || *k > zs.len() {
                problems.push(format!("center_structure entry ({i}, {j}, {k}) out of range"));
                return Ok(problems);
            }
            let coeff = parse_vector("center_structure", std::slice::from_ref(coeff))?;
            expansions[(i - 1) * zs.len() + (j - 1)].push((k - 1, coeff[0].clone()));
        }
        'center: for i in 0..zs.len() {
            for j in 0..zs.len() {
                let lhs = q.multiply(&zs[i], &zs[j])?;
                let mut rhs = vec![Rational::ZERO; q.dim()];
                for (k, coeff) in &expansions[i * zs.len() + j] {
                    for (rv, zv) in rhs.iter_mut().zip(&zs[*k]) {
                        *rv += coeff * zv;
                    }
                }
                if lhs != rhs {
                    problems.push(format!(
                        "center product z{} z{} differs from the reported structure",
                        i + 1,
                        j + 1
                    ));
                    break 'center;
                }
            }
        }
    }

    // Idempotent claims.
    if let (Some(s), Some((q, _))) = (&report.split, &quotient) {
        let es = parse_vectors("idempotents", &s.idempotents)?;
        for (i, e) in es.iter().enumerate() {
            if q.multiply(e, e)? != *e {
                problems.push(format!("idempotent {} does not square to itself", i + 1));
            }
        }
        for i in 0..es.len() {
            for j in 0..es.len() {
                if i != j {
                    let p = q.multiply(&es[i], &es[j])?;
                    if p.iter().any(|c| *c != Rational::ZERO) {
                        problems.push(format!(
                            "idempotents {} and {} are not orthogonal",
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
        if let Some(one) = q.one() {
            let mut sum = vec![Rational::ZERO; q.dim()];
            for e in &es {
                for (sv, ev) in sum.iter_mut().zip(e) {
                    *sv += ev;
                }
            }
            if sum != *one {
                problems.push("idempotents do not sum to the quotient identity".to_string());
            }
        }
    }

    // Component claims.
    if let (Some(comps), Some((q, _))) = (&report.components, &quotient) {
        for (ci, c) in comps.iter().enumerate() {
            let label = format!("component {}", ci + 1);
            let e = parse_vector("component idempotent", &c.idempotent)?;
            let basis = parse_vectors("component basis", &c.basis)?;
            if basis.len() != c.dimension {
                problems.push(format!("{label}: basis length differs from dimension"));
            }
            let mut span = RowSpace::new();
            for x in &basis {
                span.insert(x);
            }
            if span.dim() != basis.len() {
                problems.push(format!("{label}: basis vectors are linearly dependent"));
            }
            for x in basis.iter().take(8) {
                if q.multiply(&e, x)? != *x || q.multiply(x, &e)? != *x {
                    problems.push(format!(
                        "{label}: idempotent is not a two-sided identity on the component"
                    ));
                    break;
                }
            }
            if let Some(units_s) = &c.matrix_units {
                let units = parse_vectors("matrix_units", units_s)?;
                let Some(qsz) = c.matrix_size else {
                    problems.push(format!("{label}: matrix units without a matrix size"));
                    continue;
                };
                if units.len() != qsz * qsz || qsz * qsz != c.dimension {
                    problems.push(format!("{label}: matrix unit count differs from size^2"));
                    continue;
                }
                let mut tuples: Vec<(usize, usize, usize, usize)> = Vec::new();
                if qsz <= 4 {
                    for i in 0..qsz {
                        for j in 0..qsz {
                            for k in 0..qsz {
                                for l in 0..qsz {
                                    tuples.push((i, j, k, l));
                                }
                            }
                        }
                    }
                } else {
                    let mut rng = SplitMix64::derive(seed, 0x756e6974 + ci as u64);
                    for _ in 0..600 {
                        tuples.push((
                            rng.below(qsz as u64) as usize,
                            rng.below(qsz as u64) as usize,
                            rng.below(qsz as u64) as usize,
                            rng.below(qsz as u64) as usize,
                        ));
                    }
                }
                for (i, j, k, l) in tuples {
                    let p = q.multiply(&units[i * qsz + j], &units[k * qsz + l])?;
                    let expected = if j == k {
                        units[i * qsz + l].clone()
                    } else {
                        vec![Rational::ZERO; q.dim()]
                    };
                    if p != expected {
                        problems.push(format!(
                            "{label}: matrix unit relation E{}{} E{}{} failed",
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1
                        ));
                        break;
                    }
                }
                let mut diag = vec![Rational::ZERO; q.dim()];
                for i in 0..qsz {
                    for (dv, uv) in diag.iter_mut().zip(&units[i * qsz + i]) {
                        *dv += uv;
                    }
                }
                if diag != e {
                    problems.push(format!(
                        "{label}: diagonal matrix units do not sum to the idempotent"
                    ));
                }
            }
            // Representation: an exact homomorphism on (sampled) pairs.
            if let Some(rep) = &c.representation {
                let Some(qsz) = c.matrix_size else {
                    problems.push(format!("{label}: representation without a matrix size"));
                    continue;
                };
                if rep.len() != n {
                    problems.push(format!(
                        "{label}: representation has {} matrices for {} basis elements",
                        rep.len(),
                        n
                    ));
                    continue;
                }
                let mut mats: Vec<Matrix> = Vec::with_capacity(n);
                let mut bad = false;
                for rows in rep {
                    if rows.len() != qsz || rows.iter().any(|r| r.len() != qsz) {
                        problems.push(format!("{label}: representation matrix of wrong shape"));
                        bad = true;
                        break;
                    }
                    let parsed: Result<Vec<Vec<Rational>>, ReportError> = rows
                        .iter()
                        .map(|r| parse_vector("representation", r))
                        .collect();
                    mats.push(Matrix::from_rows(parsed?));
                }
                if bad {
                    continue;
                }
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                if n <= 64 {
                    for i in 0..n {
                        for j in 0..n {
                            pairs.push((i, j));
                        }
                    }
                } else {
                    let mut rng = SplitMix64::derive(seed, 0x726570 + ci as u64);
                    for _ in 0..1500 {
                        pairs.push((
                            rng.below(n as u64) as usize,
                            rng.below(n as u64) as usize,
                        ));
                    }
                }
                for (i, j) in pairs {
                    let lhs = mats[i].mul(&mats[j]);
                    let mut rhs = Matrix::zeros(qsz, qsz);
                    for (k, coeff) in algebra.structure_row(i, j) {
                        for rr in 0..qsz {
                            for cc in 0..qsz {
                                *rhs.get_mut(rr, cc) += coeff * mats[*k as usize].get(rr, cc);
                            }
                        }
                    }
                    if lhs != rhs {
                        problems.push(format!(
                            "{label}: representation is not multiplicative at pair ({}, {})",
                            i + 1,
                            j + 1
                        ));
                        break;
                    }
                }
            }
        }
    }

    // Lift claims.
    if let Some(l) = &report.lift {
        let lifted = parse_vectors("lift basis", &l.basis)?;
        if l.param_names.len() != l.params_free {
            problems.push("param_names length differs from params_free".to_string());
        }
        if lifted.iter().any(|v| v.len() != n) {
            problems.push("lifted vector of wrong width".to_string());
            return Ok(problems);
        }
        if !radical_rows.is_empty() || report.radical.is_some() {
            let mut rows = lifted.clone();
            rows.extend(radical_rows.iter().cloned());
            if Matrix::from_rows_with_width(rows, n).rank() != n {
                problems.push(
                    "lifted basis and radical together do not span the algebra".to_string(),
                );
            }
        }
        if let (Some(comps), Some((_, red))) = (&report.components, &quotient) {
            // The lift must project onto the new basis of the quotient.
            let mut new_basis: Vec<Element> = Vec::new();
            for c in comps {
                let cols = match &c.matrix_units {
                    Some(units) => parse_vectors("matrix_units", units)?,
                    None => parse_vectors("component basis", &c.basis)?,
                };
                new_basis.extend(cols);
            }
            if new_basis.len() != lifted.len() {
                problems.push(format!(
                    "lift has {} vectors but the components provide {}",
                    lifted.len(),
                    new_basis.len()
                ));
            } else {
                for (k, (lv, nv)) in lifted.iter().zip(&new_basis).enumerate() {
                    if red.project(lv) != *nv {
                        problems.push(format!(
                            "lifted vector {} does not project onto its quotient basis element",
                            k + 1
                        ));
                        break;
                    }
                }
                // Products of lifted vectors stay in their span: combined
                // with the projection check this pins the structure
                // constants exactly.
                let mut span = RowSpace::new();
                for v in &lifted {
                    span.insert(v);
                }
                if span.dim() != lifted.len() {
                    problems.push("lifted vectors are linearly dependent".to_string());
                } else {
                    let r = lifted.len();
                    let mut pairs: Vec<(usize, usize)> = Vec::new();
                    if r <= 32 {
                        for i in 0..r {
                            for j in 0..r {
                                pairs.push((i, j));
                            }
                        }
                    } else {
                        let mut rng = SplitMix64::derive(seed, 0x6c696674);
                        for _ in 0..400 {
                            pairs.push((
                                rng.below(r as u64) as usize,
                                rng.below(r as u64) as usize,
                            ));
                        }
                    }
                    for (i, j) in pairs {
                        let p = algebra.multiply(&lifted[i], &lifted[j])?;
                        if !span.contains(&p) {
                            problems.push(format!(
                                "product of lifted vectors {} and {} leaves their span",
                                i + 1,
                                j + 1
                            ));
                            break;
                        }
                    }
                }
            }
        }
    }

    // Summary consistency.
    if let (Some(sum), Some(r), Some(comps)) = (&report.summary, &report.radical, &report.components)
    {
        let rebuilt = summary_line(
            n,
            r.radical_dim,
            r.quotient_dim,
            comps.iter().map(|c| (c.matrix_size, c.dimension)),
        );
        if *sum != rebuilt {
            problems.push(format!(
                "summary line {sum:?} differs from the reported data ({rebuilt:?})"
            ));
        }
    }

    Ok(problems)
}
