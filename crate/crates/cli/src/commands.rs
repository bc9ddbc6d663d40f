//! Subcommand implementations. Each returns a rendered report and whether
//! a verifier failed.

use gmdist_core::codes::{bridge_check, evaluation_code, generalized_hamming_weight, LinearCode, ProjectivePointSet};
use gmdist_core::gmd::{
    delta_bruteforce, delta_fast, regularity_index, regularity_lower_bound, stabilization_value, verify_theorems,
    BruteStrategy, Convention, Method, PrimeSetWitness, RegularityMethod, SrFacts, SubspaceWitness, Verdict,
    VerdictStatus,
};
use gmdist_core::schemes::RingProfile;
use gmdist_core::simplicial::{Shellability, SimplicialComplex};
use gmdist_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::Input;
use crate::render::{Rendered, Table};
use crate::suite::{self, Instance};
use crate::CliError;

/// Budget for the shelling search.
pub const SHELLING_BUDGET: u64 = 2_000_000;

pub struct CommandResult {
    pub rendered: Rendered,
    pub verifier_failed: bool,
}

#[derive(Serialize)]
struct PrimeInfo {
    generators: Vec<String>,
    dim: usize,
    multiplicity: i64,
    top: bool,
}

#[derive(Serialize)]
struct RingInfo {
    characteristic: u32,
    variables: Vec<String>,
    generators: Vec<String>,
    dim: usize,
    multiplicity: i64,
    /// Values for `t = 0, 1, ...`.
    hilbert_function: Vec<i64>,
    classification: &'static str,
    reduced_certified: bool,
    warnings: Vec<String>,
    minimal_primes: Vec<PrimeInfo>,
}

fn ring_info(profile: &RingProfile, t_max: usize) -> RingInfo {
    let ring = profile.ideal.ring();
    let fmt = |gs: &[gmdist_core::poly::Polynomial]| gs.iter().map(|g| ring.format(g)).collect::<Vec<_>>();
    RingInfo {
        characteristic: ring.field().p(),
        variables: ring.names().to_vec(),
        generators: fmt(profile.ideal.gens()),
        dim: profile.dim(),
        multiplicity: profile.multiplicity(),
        hilbert_function: (0..=t_max).map(|t| profile.hf(t)).collect(),
        classification: profile.classification.as_str(),
        reduced_certified: profile.reduced_certified,
        warnings: profile.warnings.clone(),
        minimal_primes: profile
            .primes
            .iter()
            .map(|p| PrimeInfo { generators: fmt(p.ideal.gens()), dim: p.dim, multiplicity: p.mult, top: p.is_top })
            .collect(),
    }
}

fn ring_summary(info: &RingInfo) -> Vec<(String, String)> {
    vec![
        ("ring".into(), format!("F_{}[{}]", info.characteristic, info.variables.join(","))),
        ("ideal".into(), format!("({})", info.generators.join(", "))),
        ("dim".into(), info.dim.to_string()),
        ("multiplicity".into(), info.multiplicity.to_string()),
        ("classification".into(), info.classification.into()),
        ("certified".into(), info.reduced_certified.to_string()),
    ]
}

fn require_profile(input: &Input) -> Result<&RingProfile, CliError> {
    input
        .profile()
        .ok_or_else(|| CliError::Core(Error::Hypothesis(format!("a {} input has no ring to analyse", input.kind()))))
}

fn ell_range(ell: Option<usize>, ell_max: usize) -> Vec<usize> {
    match ell {
        Some(l) => vec![l],
        None => (1..=ell_max).collect(),
    }
}

// ---------------------------------------------------------------- delta

pub struct DeltaConfig {
    pub t_max: usize,
    pub ell: Option<usize>,
    pub ell_max: usize,
    pub convention: Convention,
    pub method: Option<Method>,
    pub witnesses: bool,
}

#[derive(Serialize)]
struct CellWitness {
    #[serde(skip_serializing_if = "Option::is_none")]
    subspace: Option<SubspaceWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primes: Option<PrimeSetWitness>,
}

#[derive(Serialize)]
struct DeltaCell {
    t: usize,
    ell: usize,
    value: i64,
    f_empty: bool,
    method: &'static str,
    convention: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fast: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<CellWitness>,
}

#[derive(Serialize)]
struct DeltaReport {
    command: &'static str,
    input: &'static str,
    convention: &'static str,
    method: &'static str,
    t_max: usize,
    ring: RingInfo,
    cells: Vec<DeltaCell>,
    discrepancies: usize,
}

/// Resolves the method: both routes when the decomposition is certified
/// and the convention is the one the prime route computes.
pub fn resolve_method(
    profile: &RingProfile,
    convention: Convention,
    method: Option<Method>,
) -> Result<Method, CliError> {
    let method = method.unwrap_or(if profile.reduced_certified && convention == Convention::FixedDim {
        Method::Both
    } else {
        Method::Brute
    });
    if method != Method::Brute {
        profile.require_certified()?;
        if convention != Convention::FixedDim {
            return Err(Error::Hypothesis(
                "the prime-decomposition route computes the fixed-dim convention only".into(),
            )
            .into());
        }
    }
    Ok(method)
}

pub fn delta(input: &Input, cfg: &DeltaConfig) -> Result<CommandResult, CliError> {
    let profile = require_profile(input)?;
    if cfg.t_max == 0 {
        return Err(Error::Hypothesis("t_max must be at least 1".into()).into());
    }
    let method = resolve_method(profile, cfg.convention, cfg.method)?;
    let ells = ell_range(cfg.ell, cfg.ell_max);
    if ells.contains(&0) {
        return Err(Error::Hypothesis("ℓ must be at least 1".into()).into());
    }
    let mut cells = Vec::new();
    for t in 1..=cfg.t_max {
        for &ell in &ells {
            let brute = match method {
                Method::Fast => None,
                _ => Some(delta_bruteforce(
                    &profile.ideal,
                    &profile.hilbert,
                    t as u32,
                    ell,
                    cfg.convention,
                    BruteStrategy::default(),
                )?),
            };
            let fast = match method {
                Method::Brute => None,
                _ => Some(delta_fast(profile, t, ell)?),
            };
            let value = brute.as_ref().map(|b| b.value).or(fast.as_ref().map(|f| f.value)).expect("one route ran");
            let f_empty =
                brute.as_ref().map(|b| b.f_empty).or(fast.as_ref().map(|f| f.f_empty)).expect("one route ran");
            let agree = match (&brute, &fast) {
                (Some(b), Some(f)) => Some(b.value == f.value && b.f_empty == f.f_empty),
                _ => None,
            };
            let both = method == Method::Both;
            cells.push(DeltaCell {
                t,
                ell,
                value,
                f_empty,
                method: method.as_str(),
                convention: cfg.convention.as_str(),
                brute: brute.as_ref().filter(|_| both).map(|b| b.value),
                fast: fast.as_ref().filter(|_| both).map(|f| f.value),
                agree,
                witness: cfg.witnesses.then(|| CellWitness {
                    subspace: brute.and_then(|b| b.witness),
                    primes: fast.and_then(|f| f.witness),
                }),
            });
        }
    }
    let discrepancies = cells.iter().filter(|c| c.agree == Some(false)).count();
    let report = DeltaReport {
        command: "delta",
        input: input.kind(),
        convention: cfg.convention.as_str(),
        method: method.as_str(),
        t_max: cfg.t_max,
        ring: ring_info(profile, cfg.t_max),
        cells,
        discrepancies,
    };
    let mut headers = vec!["t", "ell", "value", "f_empty", "method", "convention"];
    if method == Method::Both {
        headers.extend(["brute", "fast", "agree"]);
    }
    if cfg.witnesses {
        headers.push("witness");
    }
    let mut table = Table::new(&headers);
    for c in &report.cells {
        let mut row = vec![
            c.t.to_string(),
            c.ell.to_string(),
            c.value.to_string(),
            c.f_empty.to_string(),
            c.method.into(),
            c.convention.into(),
        ];
        if method == Method::Both {
            row.push(c.brute.map_or(String::new(), |v| v.to_string()));
            row.push(c.fast.map_or(String::new(), |v| v.to_string()));
            row.push(c.agree.map_or(String::new(), |v| v.to_string()));
        }
        if let Some(w) = &c.witness {
            let mut parts = Vec::new();
            if let Some(s) = &w.subspace {
                parts.push(format!("<{}>", s.forms.join(", ")));
            }
            if let Some(p) = &w.primes {
                parts.push(format!("primes {:?}", p.primes));
            }
            row.push(parts.join(" "));
        }
        table.push(row);
    }
    let mut summary = ring_summary(&report.ring);
    summary.push(("method".into(), report.method.into()));
    summary.push(("convention".into(), report.convention.into()));
    summary.push(("discrepancies".into(), discrepancies.to_string()));
    Ok(CommandResult { rendered: Rendered::new(&report, summary, table), verifier_failed: discrepancies > 0 })
}

// ------------------------------------------------------------ stabilize

#[derive(Serialize)]
struct StabilizeRow {
    ell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilization_value: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity_method: Option<RegularityMethod>,
    /// Without a certified decomposition: the start of the final constant
    /// run of the brute-force table up to `t_max`.
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity_lower_bound: Option<usize>,
    /// `δ(t, ℓ)` for `t = 1, ...`.
    deltas: Vec<i64>,
}

#[derive(Serialize)]
struct StabilizeReport {
    command: &'static str,
    input: &'static str,
    convention: &'static str,
    method: &'static str,
    ring: RingInfo,
    rows: Vec<StabilizeRow>,
}

pub fn stabilize(input: &Input, ell: Option<usize>, ell_max: usize, t_max: usize) -> Result<CommandResult, CliError> {
    let profile = require_profile(input)?;
    let ells = ell_range(ell, ell_max);
    if ells.contains(&0) {
        return Err(Error::Hypothesis("ℓ must be at least 1".into()).into());
    }
    let certified = profile.reduced_certified;
    let mut rows = Vec::new();
    for &l in &ells {
        if certified {
            let s = stabilization_value(profile, l)?;
            let r = regularity_index(profile, l)?;
            let deltas = (1..=r.value.max(t_max))
                .map(|t| delta_fast(profile, t, l).map(|d| d.value))
                .collect::<Result<_, _>>()?;
            rows.push(StabilizeRow {
                ell: l,
                stabilization_value: Some(s.value),
                case: Some(s.case),
                regularity_index: Some(r.value),
                regularity_method: Some(r.method),
                regularity_lower_bound: None,
                deltas,
            });
        } else {
            let lb = regularity_lower_bound(&profile.ideal, &profile.hilbert, l, t_max.max(1), Convention::FixedDim)?;
            rows.push(StabilizeRow {
                ell: l,
                stabilization_value: None,
                case: None,
                regularity_index: None,
                regularity_method: None,
                regularity_lower_bound: Some(lb.lower_bound),
                deltas: lb.deltas,
            });
        }
    }
    let report = StabilizeReport {
        command: "stabilize",
        input: input.kind(),
        convention: Convention::FixedDim.as_str(),
        method: if certified { "fast" } else { "brute" },
        ring: ring_info(profile, t_max),
        rows,
    };
    let mut table = Table::new(&["ell", "s", "case", "r", "r_method", "r_lower_bound", "deltas"]);
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in &report.rows {
        table.push(vec![
            r.ell.to_string(),
            opt(r.stabilization_value.map(|v| v.to_string())),
            opt(r.case.map(|v| v.to_string())),
            opt(r.regularity_index.map(|v| v.to_string())),
            opt(r.regularity_method.map(|m| serde_json::to_value(m).unwrap().as_str().unwrap().to_string())),
            opt(r.regularity_lower_bound.map(|v| v.to_string())),
            r.deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
        ]);
    }
    let mut summary = ring_summary(&report.ring);
    summary.push(("method".into(), report.method.into()));
    summary.push(("convention".into(), report.convention.into()));
    Ok(CommandResult { rendered: Rendered::new(&report, summary, table), verifier_failed: false })
}

// ------------------------------------------------------------------ ghw

#[derive(Serialize)]
struct CodeInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<u32>,
    length: usize,
    dimension: usize,
    generator: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct GhwRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<u32>,
    ell: usize,
    weight: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<u32>>>,
}

#[derive(Serialize)]
struct GhwReport {
    command: &'static str,
    input: &'static str,
    characteristic: u32,
    codes: Vec<CodeInfo>,
    rows: Vec<GhwRow>,
    discrepancies: usize,
}

fn hierarchy_rows(
    code: &LinearCode,
    t: Option<u32>,
    ell: Option<usize>,
    ell_max: Option<usize>,
    witnesses: bool,
    delta_of: impl Fn(usize) -> Result<Option<i64>, CliError>,
) -> Result<Vec<GhwRow>, CliError> {
    let k = code.dimension();
    let ells: Vec<usize> = match ell {
        Some(l) => vec![l],
        None => (1..=ell_max.map_or(k, |m| m.min(k))).collect(),
    };
    ells.into_iter()
        .map(|l| {
            let g = generalized_hamming_weight(code, l)?;
            let delta = delta_of(l)?;
            Ok(GhwRow {
                t,
                ell: l,
                weight: g.value,
                agree: delta.map(|d| d == g.value as i64),
                delta,
                witness: witnesses.then_some(g.witness),
            })
        })
        .collect()
}

pub fn ghw(
    input: &Input,
    t_max: usize,
    ell: Option<usize>,
    ell_max: Option<usize>,
    witnesses: bool,
) -> Result<CommandResult, CliError> {
    let mut codes = Vec::new();
    let mut rows = Vec::new();
    let characteristic;
    match input {
        Input::Code { code } => {
            characteristic = code.field().p();
            codes.push(CodeInfo {
                t: None,
                length: code.length(),
                dimension: code.dimension(),
                generator: code.generator().row_vecs(),
            });
            rows = hierarchy_rows(code, None, ell, ell_max, witnesses, |_| Ok(None))?;
        }
        Input::Points { points, profile } => {
            characteristic = points.field().p();
            for t in 1..=t_max.max(1) as u32 {
                let code = evaluation_code(points, t)?;
                codes.push(CodeInfo {
                    t: Some(t),
                    length: code.length(),
                    dimension: code.dimension(),
                    generator: code.generator().row_vecs(),
                });
                if ell.is_some_and(|l| l > code.dimension()) {
                    continue;
                }
                rows.extend(hierarchy_rows(&code, Some(t), ell, ell_max, witnesses, |l| {
                    Ok(Some(delta_fast(profile, t as usize, l)?.value))
                })?);
            }
        }
        _ => {
            return Err(Error::Hypothesis("ghw needs a points or generator-matrix input".into()).into());
        }
    }
    let discrepancies = rows.iter().filter(|r| r.agree == Some(false)).count();
    let report = GhwReport { command: "ghw", input: input.kind(), characteristic, codes, rows, discrepancies };
    let mut table = Table::new(&["t", "ell", "weight", "delta", "agree"]);
    for r in &report.rows {
        table.push(vec![
            r.t.map_or(String::new(), |t| t.to_string()),
            r.ell.to_string(),
            r.weight.to_string(),
            r.delta.map_or(String::new(), |d| d.to_string()),
            r.agree.map_or(String::new(), |a| a.to_string()),
        ]);
    }
    let mut summary = vec![("field".to_string(), format!("F_{characteristic}"))];
    for c in &report.codes {
        let label = c.t.map_or("code".to_string(), |t| format!("code t={t}"));
        summary.push((label, format!("[{}, {}]", c.length, c.dimension)));
    }
    summary.push(("discrepancies".into(), discrepancies.to_string()));
    Ok(CommandResult { rendered: Rendered::new(&report, summary, table), verifier_failed: discrepancies > 0 })
}

// -------------------------------------------------------------- sr-info

#[derive(Serialize)]
pub struct SrInfo {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    pub minimal_nonfaces: Vec<Vec<usize>>,
    pub f_vector: Vec<u64>,
    pub pure: bool,
    pub dim: usize,
    pub multiplicity: i64,
    pub depth: usize,
    pub regularity: usize,
    pub projective_dimension: usize,
    pub connected: bool,
    pub shellable: Shellability,
    /// `[i, j, β_{i,j}]` triples.
    pub betti: Vec<[u64; 3]>,
}

fn vertex_list(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn sr_facts(complex: &SimplicialComplex, field: gmdist_core::linalg::Field) -> (SrInfo, SrFacts) {
    let betti = complex.betti_table(field);
    let shellable = complex.is_shellable(SHELLING_BUDGET);
    let info = SrInfo {
        vertices: complex.vertices(),
        facets: complex.facets(),
        minimal_nonfaces: complex.minimal_nonfaces().into_iter().map(vertex_list).collect(),
        f_vector: complex.f_vector(),
        pure: complex.is_pure(),
        dim: complex.ring_dim(),
        multiplicity: complex.top_facet_count() as i64,
        depth: complex.vertices() - betti.projective_dimension(),
        regularity: betti.regularity(),
        projective_dimension: betti.projective_dimension(),
        connected: complex.proj_connected(),
        betti: betti.entries.iter().map(|(&(i, j), &b)| [i as u64, j as u64, b]).collect(),
        shellable,
    };
    let facts = SrFacts {
        depth: info.depth,
        regularity: info.regularity,
        connected: info.connected,
        shellable: match &info.shellable {
            Shellability::Shellable { .. } => Some(true),
            Shellability::NotShellable => Some(false),
            Shellability::Inconclusive { .. } => None,
        },
    };
    (info, facts)
}

#[derive(Serialize)]
struct SrReport {
    command: &'static str,
    characteristic: u32,
    #[serde(flatten)]
    info: SrInfo,
}

pub fn sr_info(input: &Input) -> Result<CommandResult, CliError> {
    let Input::Complex { complex, field, .. } = input else {
        return Err(Error::Hypothesis("sr-info needs a simplicial complex input".into()).into());
    };
    let (info, _) = sr_facts(complex, *field);
    let shell = match &info.shellable {
        Shellability::Shellable { order } => format!("yes, order {order:?}"),
        Shellability::NotShellable => "no".into(),
        Shellability::Inconclusive { visited } => format!("inconclusive after {visited} states"),
    };
    let summary = vec![
        ("field".to_string(), format!("F_{}", field.p())),
        ("vertices".into(), info.vertices.to_string()),
        ("facets".into(), format!("{:?}", info.facets)),
        ("minimal nonfaces".into(), format!("{:?}", info.minimal_nonfaces)),
        ("f-vector".into(), format!("{:?}", info.f_vector)),
        ("pure".into(), info.pure.to_string()),
        ("dim".into(), info.dim.to_string()),
        ("multiplicity".into(), info.multiplicity.to_string()),
        ("depth".into(), info.depth.to_string()),
        ("regularity".into(), info.regularity.to_string()),
        ("connected".into(), info.connected.to_string()),
        ("shellable".into(), shell),
    ];
    let mut table = Table::new(&["i", "j", "betti"]);
    for [i, j, b] in &info.betti {
        table.push(vec![i.to_string(), j.to_string(), b.to_string()]);
    }
    let report = SrReport { command: "sr-info", characteristic: field.p(), info };
    Ok(CommandResult { rendered: Rendered::new(&report, summary, table), verifier_failed: false })
}

// --------------------------------------------------------------- verify

#[derive(Serialize)]
struct InstanceVerdicts {
    name: String,
    kind: &'static str,
    classification: &'static str,
    reduced_certified: bool,
    verdicts: Vec<Verdict>,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    convention: &'static str,
    method: &'static str,
    t_max: usize,
    ell_max: usize,
    instances: Vec<InstanceVerdicts>,
    passed: usize,
    failed: usize,
    skipped: usize,
}

/// Extra checks for point sets: the δ function against generalized
/// Hamming weights of the evaluation codes.
fn bridge_verdict(points: &ProjectivePointSet, profile: &RingProfile, t_max: usize, ell_max: usize) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in 1..=t_max as u32 {
        let k = match evaluation_code(points, t) {
            Ok(c) => c.dimension(),
            Err(e) => {
                failures.push(format!("t={t}: {e}"));
                continue;
            }
        };
        for ell in 1..=ell_max.min(k) {
            checked += 1;
            match bridge_check(points, profile, t, ell) {
                Ok(b) if b.equal => {}
                Ok(b) => failures.push(format!("t={t} ℓ={ell}: δ={} ghw={}", b.delta, b.ghw)),
                Err(e) => failures.push(format!("t={t} ℓ={ell}: {e}")),
            }
        }
    }
    let status = if failures.is_empty() { VerdictStatus::Pass } else { VerdictStatus::Fail };
    let detail = if failures.is_empty() { format!("{checked} instances") } else { failures.join("; ") };
    Verdict { check: "coding_bridge".into(), status, detail }
}

fn verify_instance(inst: &Instance, t_max: usize, ell_max: usize) -> InstanceVerdicts {
    let facts = inst.complex.as_ref().map(|c| sr_facts(c, inst.profile.ideal.ring().field()).1);
    let mut verdicts = verify_theorems(&inst.profile, t_max, ell_max, facts.as_ref());
    if let Some(points) = &inst.points {
        verdicts.push(bridge_verdict(points, &inst.profile, t_max.min(3), ell_max.min(3)));
    }
    InstanceVerdicts {
        name: inst.name.clone(),
        kind: inst.kind(),
        classification: inst.profile.classification.as_str(),
        reduced_certified: inst.profile.reduced_certified,
        verdicts,
    }
}

/// The built-in verification suite.
pub fn builtin_instances(seed: u64) -> Vec<Instance> {
    let mut out = suite::oracle_suite(seed);
    for (name, c) in suite::connected_complexes().into_iter().chain(suite::disconnected_complexes()) {
        if out.iter().any(|i| i.name == name) {
            continue;
        }
        out.push(suite::complex_instance(name, 2, c).expect("valid complex"));
    }
    for (name, pts) in suite::random_point_sets(seed.wrapping_add(1), 4, 8) {
        out.push(suite::points_instance(&name, pts).expect("valid points"));
    }
    out
}

pub fn verify(
    input: Option<Input>,
    name: &str,
    t_max: usize,
    ell_max: usize,
    seed: u64,
) -> Result<CommandResult, CliError> {
    let instances: Vec<Instance> = match input {
        None => builtin_instances(seed),
        Some(Input::Ideal { profile }) => vec![Instance { name: name.into(), profile, complex: None, points: None }],
        Some(Input::Complex { complex, profile, .. }) => {
            vec![Instance { name: name.into(), profile, complex: Some(complex), points: None }]
        }
        Some(Input::Points { points, profile }) => {
            vec![Instance { name: name.into(), profile, complex: None, points: Some(points) }]
        }
        Some(Input::Code { .. }) => {
            return Err(Error::Hypothesis("verify needs an ideal, complex or points input".into()).into());
        }
    };
    let results: Vec<InstanceVerdicts> =
        instances.par_iter().map(|inst| verify_instance(inst, t_max, ell_max)).collect();
    let count = |s: VerdictStatus| results.iter().flat_map(|r| &r.verdicts).filter(|v| v.status == s).count();
    let report = VerifyReport {
        command: "verify",
        convention: Convention::FixedDim.as_str(),
        method: Method::Fast.as_str(),
        t_max,
        ell_max,
        passed: count(VerdictStatus::Pass),
        failed: count(VerdictStatus::Fail),
        skipped: count(VerdictStatus::Skipped),
        instances: results,
    };
    let mut table = Table::new(&["instance", "check", "status", "detail"]);
    for inst in &report.instances {
        for v in &inst.verdicts {
            let status = serde_json::to_value(v.status).unwrap().as_str().unwrap().to_string();
            table.push(vec![inst.name.clone(), v.check.clone(), status, v.detail.clone()]);
        }
    }
    let summary = vec![
        ("instances".to_string(), report.instances.len().to_string()),
        ("passed".into(), report.passed.to_string()),
        ("failed".into(), report.failed.to_string()),
        ("skipped".into(), report.skipped.to_string()),
    ];
    let failed = report.failed > 0;
    Ok(CommandResult { rendered: Rendered::new(&report, summary, table), verifier_failed: failed })
}

// --------------------------------------------------------------- bridge

#[derive(Serialize)]
struct BridgeRow {
    instance: String,
    characteristic: u32,
    points: Vec<Vec<u32>>,
    t: u32,
    ell: usize,
    k: usize,
    delta: i64,
    ghw: usize,
    equal: bool,
}

#[derive(Serialize)]
struct BridgeReport {
    command: &'static str,
    convention: &'static str,
    method: &'static str,
    seed: u64,
    count: usize,
    max_points: usize,
    t_max: usize,
    ell_max: usize,
    rows: Vec<BridgeRow>,
    discrepancies: usize,
}

/// δ of random point sets against generalized Hamming weights.
pub fn bridge(
    seed: u64,
    count: usize,
    max_points: usize,
    t_max: usize,
    ell_max: usize,
) -> Result<CommandResult, CliError> {
    let sets = suite::random_point_sets(seed, count, max_points);
    let per_set: Vec<Result<Vec<BridgeRow>, CliError>> = sets
        .par_iter()
        .map(|(name, x)| {
            let profile = gmdist_core::codes::point_profile(x)?;
            let mut rows = Vec::new();
            for t in 1..=t_max as u32 {
                let k = evaluation_code(x, t)?.dimension();
                for ell in 1..=ell_max.min(k) {
                    let b = bridge_check(x, &profile, t, ell)?;
                    rows.push(BridgeRow {
                        instance: name.clone(),
                        characteristic: x.field().p(),
                        points: x.points().to_vec(),
                        t,
                        ell,
                        k: b.k,
                        delta: b.delta,
                        ghw: b.ghw,
                        equal: b.equal,
                    });
                }
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_set {
        rows.extend(r?);
    }
    let discrepancies = rows.iter().filter(|r| !r.equal).count();
    let report = BridgeReport {
        command: "bridge",
        convention: Convention::FixedDim.as_str(),
        method: Method::Fast.as_str(),
        seed,
        count,
        max_points,
        t_max,
        ell_max,
        rows,
        discrepancies,
    };
    let mut table = Table::new(&["instance", "t", "ell", "k", "delta", "ghw", "equal"]);
    for r in &report.rows {
        table.push(vec![
            r.instance.clone(),
            r.t.to_string(),
            r.ell.to_string(),
            r.k.to_string(),
            r.delta.to_string(),
            r.ghw.to_string(),
            r.equal.to_string(),
        ]);
    }
    let summary = vec![
        ("seed".to_string(), seed.to_string()),
        ("point sets".into(), count.to_string()),
        ("comparisons".into(), report.rows.len().to_string()),
        ("discrepancies".into(), discrepancies.to_string()),
    ];
    Ok(CommandResult { rendered: Rendered::new(&report, summary, table), verifier_failed: discrepancies > 0 })
}
