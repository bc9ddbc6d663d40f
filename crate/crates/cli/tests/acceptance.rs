//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use gmdist_cli::suite::{self, Instance, DEFAULT_SEED};
use gmdist_core::codes::{evaluation_code, generalized_hamming_weight, point_profile, ProjectivePointSet};
use gmdist_core::gmd::{
    certified_iteration, delta_bruteforce, delta_fast, regularity_index, stabilization_value, BruteStrategy, Convention,
};
use gmdist_core::hilbert::{hilbert_function, multiplicity_at};
use gmdist_core::linalg::Field;
use gmdist_core::schemes::RingProfile;
use gmdist_core::simplicial::SimplicialComplex;

const EXAMPLE_LIMIT: Duration = Duration::from_secs(10);
const SUITE_LIMIT: Duration = Duration::from_secs(300);
/// Degrees and subspace dimensions for the two-route comparison.
const ORACLE_T_MAX: usize = 4;
const ORACLE_ELL_MAX: usize = 3;
/// Random point sets for the coding comparison.
const BRIDGE_SETS: usize = 20;
const BRIDGE_MAX_POINTS: usize = 8;
const BRIDGE_T_MAX: u32 = 3;
const BRIDGE_ELL_MAX: usize = 3;
const SR_ELL_MAX: usize = 4;
const HILBERT_T_MAX: usize = 6;

type Outcome = Result<String, String>;

fn run_criterion(id: u8, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let result = match (result, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), l.as_secs())),
        (r, _) => r,
    };
    let ok = result.is_ok();
    let detail = result.unwrap_or_else(|e| e);
    // written to the handle directly so the line survives output capture
    let _ = writeln!(
        std::io::stdout(),
        "{} criterion {id}: {title} ({:.2} s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn ensure(cond: bool, msg: impl FnOnce() -> String, failures: &mut Vec<String>) {
    if !cond {
        failures.push(msg());
    }
}

fn verdict(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_1() -> Outcome {
    let p = suite::first_example().profile;
    let mut f = Vec::new();
    ensure(p.reduced_certified, || format!("not certified: {:?}", p.warnings), &mut f);
    ensure(p.multiplicity() == 6, || format!("e(R) = {}", p.multiplicity()), &mut f);
    let mut mults: Vec<i64> = p.primes.iter().map(|q| q.mult).collect();
    mults.sort_unstable();
    ensure(mults == [1, 1, 4], || format!("prime multiplicities {mults:?}"), &mut f);
    let hf: Vec<i64> = (0..=4).map(|t| p.hf(t)).collect();
    ensure(hf == [1, 3, 5, 6, 6], || format!("Hilbert function {hf:?}"), &mut f);
    let expected = [(1, 1, 4), (5, 5, 4), (6, 6, 5), (7, 6, 5)];
    for (ell, value, case) in expected {
        let s = stabilization_value(&p, ell).map_err(|e| e.to_string())?;
        ensure(s.value == value && s.case == case, || format!("ℓ={ell}: s={} case {}", s.value, s.case), &mut f);
    }
    verdict(f, "e=6, multiplicities {1,1,4}, HF 1,3,5,6,6, s=1,5,6,6 with cases 4,4,5,5".into())
}

fn criterion_2() -> Outcome {
    let p = suite::second_example().profile;
    let mut f = Vec::new();
    ensure(p.reduced_certified, || format!("not certified: {:?}", p.warnings), &mut f);
    ensure(p.multiplicity() == 1, || format!("e(R) = {}", p.multiplicity()), &mut f);
    let plane = &p.primes[0];
    ensure(plane.dim == 2, || format!("dim R/q1 = {}", plane.dim), &mut f);
    for (i, q) in p.primes.iter().enumerate().skip(1) {
        let m = multiplicity_at(&q.hilbert, p.dim()).map_err(|e| e.to_string())?;
        ensure(m == 0, || format!("fixed-dim multiplicity of prime {} = {m}", i + 1), &mut f);
    }
    for (ell, value, case) in [(1, 0, 6), (2, 0, 6), (3, 1, 7)] {
        let s = stabilization_value(&p, ell).map_err(|e| e.to_string())?;
        ensure(s.value == value && s.case == case, || format!("ℓ={ell}: s={} case {}", s.value, s.case), &mut f);
    }
    ensure(plane.mult == 1, || format!("e(R/q1) = {}", plane.mult), &mut f);
    verdict(f, "e=1, dim R/q1=2, line primes 0, s=0,0,1 with cases 6,6,7".into())
}

/// Brute-force table `[t-1][ℓ-1]` per suite member.
struct OracleTables {
    brute: Vec<Vec<Vec<i64>>>,
}

fn criterion_3(suite: &[Instance], tables: &mut OracleTables) -> Outcome {
    let mut f = Vec::new();
    let mut cells = 0;
    ensure(suite.len() >= 12, || format!("suite has {} members", suite.len()), &mut f);
    for inst in suite {
        let p = &inst.profile;
        ensure(p.reduced_certified, || format!("{} not certified", inst.name), &mut f);
        let mut table = Vec::new();
        for t in 1..=ORACLE_T_MAX {
            let mut row = Vec::new();
            for ell in 1..=ORACLE_ELL_MAX {
                let b = delta_bruteforce(
                    &p.ideal,
                    &p.hilbert,
                    t as u32,
                    ell,
                    Convention::FixedDim,
                    BruteStrategy::default(),
                )
                .map_err(|e| format!("{} t={t} ℓ={ell}: {e}", inst.name))?;
                let q = delta_fast(p, t, ell).map_err(|e| e.to_string())?;
                cells += 1;
                ensure(
                    b.value == q.value && b.f_empty == q.f_empty,
                    || format!("{} t={t} ℓ={ell}: brute {} fast {}", inst.name, b.value, q.value),
                    &mut f,
                );
                row.push(b.value);
            }
            table.push(row);
        }
        tables.brute.push(table);
    }
    verdict(f, format!("{} rings, {cells} cells, 0 discrepancies", suite.len()))
}

fn fast_row(p: &RingProfile, ell: usize, t_max: usize) -> Result<Vec<i64>, String> {
    (1..=t_max).map(|t| delta_fast(p, t, ell).map(|d| d.value).map_err(|e| e.to_string())).collect()
}

fn criterion_4(suite: &[Instance], tables: &OracleTables) -> Outcome {
    let mut f = Vec::new();
    let mut checks = 0;
    for (inst, table) in suite.iter().zip(&tables.brute) {
        let p = &inst.profile;
        for ell in 1..=ORACLE_ELL_MAX {
            let col: Vec<i64> = table.iter().map(|r| r[ell - 1]).collect();
            checks += 1;
            ensure(
                col.windows(2).all(|w| w[0] >= w[1]),
                || format!("{} ℓ={ell}: brute row {col:?} increases", inst.name),
                &mut f,
            );
        }
        if p.classification.is_unmixed() {
            for (t, row) in table.iter().enumerate() {
                checks += 1;
                ensure(
                    row.windows(2).all(|w| w[0] <= w[1]),
                    || format!("{} t={}: brute column {row:?} decreases in ℓ", inst.name, t + 1),
                    &mut f,
                );
            }
        }
        for ell in 1..=ORACLE_ELL_MAX {
            let s = stabilization_value(p, ell).map_err(|e| e.to_string())?;
            let r = regularity_index(p, ell).map_err(|e| e.to_string())?;
            let it = certified_iteration(p, ell).map_err(|e| e.to_string())?;
            checks += 3;
            ensure(
                it.limit == s.value,
                || format!("{} ℓ={ell}: s={} but the table settles at {}", inst.name, s.value, it.limit),
                &mut f,
            );
            ensure(
                it.regularity_index == r.value,
                || format!("{} ℓ={ell}: r={} but the table settles at t={}", inst.name, r.value, it.regularity_index),
                &mut f,
            );
            let horizon = r.value + 3;
            let row = fast_row(p, ell, horizon)?;
            ensure(
                row.windows(2).all(|w| w[0] >= w[1]),
                || format!("{} ℓ={ell}: row {row:?} increases", inst.name),
                &mut f,
            );
            for t in r.value..=horizon {
                checks += 1;
                ensure(
                    row[t - 1] == s.value,
                    || format!("{} ℓ={ell} t={t}: δ={} ≠ s={}", inst.name, row[t - 1], s.value),
                    &mut f,
                );
                if t <= ORACLE_T_MAX {
                    checks += 1;
                    let b = tables.brute[suite.iter().position(|i| std::ptr::eq(i, inst)).unwrap()][t - 1][ell - 1];
                    ensure(
                        b == s.value,
                        || format!("{} ℓ={ell} t={t}: brute δ={b} ≠ s={}", inst.name, s.value),
                        &mut f,
                    );
                }
            }
            if r.value >= 2 {
                checks += 1;
                ensure(row[r.value - 2] != s.value, || format!("{} ℓ={ell}: δ(r-1) = s", inst.name), &mut f);
            }
        }
    }
    verdict(f, format!("{checks} checks, 0 violations"))
}

fn criterion_5() -> Outcome {
    let field = Field::new(2).unwrap();
    let mut f = Vec::new();
    let mut used = 0;
    let mut shellable = 0;
    for (name, c) in suite::connected_complexes() {
        let betti = c.betti_table(field);
        let depth = c.vertices() - betti.projective_dimension();
        let reg = betti.regularity();
        if depth < 2 || c.vertices() > 6 {
            continue;
        }
        used += 1;
        let p = c.profile(field).map_err(|e| e.to_string())?;
        let dim = p.dim();
        let r: Vec<usize> = (1..=SR_ELL_MAX)
            .map(|l| regularity_index(&p, l).map(|x| x.value).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        for l in 1..SR_ELL_MAX {
            ensure(
                r[l] <= r[l - 1] + 1,
                || format!("{name}: r({}) = {} > r({l}) + 1 = {}", l + 1, r[l], r[l - 1] + 1),
                &mut f,
            );
        }
        for l in 1..=SR_ELL_MAX {
            ensure(
                r[l - 1] < dim + l,
                || format!("{name}: r({l}) = {} > dim + ℓ - 1 = {}", r[l - 1], dim + l - 1),
                &mut f,
            );
        }
        if c.is_shellable(gmdist_cli::commands::SHELLING_BUDGET).is_shellable() {
            shellable += 1;
            for l in 1..=SR_ELL_MAX {
                ensure(
                    r[l - 1] < reg + l,
                    || format!("{name}: r({l}) = {} > reg + ℓ - 1 = {}", r[l - 1], reg + l - 1),
                    &mut f,
                );
            }
        }
        if name == "triangle boundary" {
            for l in 1..=SR_ELL_MAX {
                ensure(
                    r[l - 1] == l + 1 && dim + l - 1 == l + 1 && reg + l - 1 == l + 1,
                    || format!("triangle: r({l}) = {}, dim {dim}, reg {reg}", r[l - 1]),
                    &mut f,
                );
            }
            // the brute-force table changes exactly at t = ℓ + 1
            for l in 1..=2 {
                let d: Vec<i64> = (l..=l + 2)
                    .map(|t| {
                        delta_bruteforce(
                            &p.ideal,
                            &p.hilbert,
                            t as u32,
                            l,
                            Convention::FixedDim,
                            BruteStrategy::default(),
                        )
                        .map(|b| b.value)
                        .map_err(|e| e.to_string())
                    })
                    .collect::<Result<_, _>>()?;
                ensure(d[0] != d[1] && d[1] == d[2], || format!("triangle brute ℓ={l}: δ(t={l}..) = {d:?}"), &mut f);
            }
        }
    }
    ensure(used >= 8, || format!("only {used} complexes with depth ≥ 2"), &mut f);
    verdict(f, format!("{used} complexes ({shellable} shellable), ℓ ≤ {SR_ELL_MAX}, triangle tight"))
}

fn criterion_6() -> Outcome {
    let field = Field::new(2).unwrap();
    let mut f = Vec::new();
    let all: Vec<(&str, SimplicialComplex)> =
        suite::connected_complexes().into_iter().chain(suite::disconnected_complexes()).collect();
    let mut equivalences = 0;
    for (name, c) in &all {
        let ring = c.ring(field);
        let ideal = c.stanley_reisner_ideal(&ring).map_err(|e| e.to_string())?;
        let p = c.profile(field).map_err(|e| e.to_string())?;
        for t in 0..=HILBERT_T_MAX {
            let faces = c.hilbert_function_from_faces(t) as i64;
            let gb = hilbert_function(&ideal, t as u32) as i64;
            ensure(
                faces == gb && gb == p.hf(t),
                || format!("{name} t={t}: faces {faces}, basis {gb}, series {}", p.hf(t)),
                &mut f,
            );
        }
        if c.ring_dim() >= 2 {
            equivalences += 1;
            let depth = c.depth(field);
            ensure(
                (depth >= 2) == c.proj_connected(),
                || format!("{name}: depth {depth}, connected {}", c.proj_connected()),
                &mut f,
            );
        }
    }
    verdict(f, format!("{equivalences} depth/connectivity equivalences, {} Hilbert cross-checks", all.len()))
}

fn criterion_7() -> Outcome {
    let mut f = Vec::new();
    let mut comparisons = 0;
    let hand = ProjectivePointSet::new(Field::new(2).unwrap(), 2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
    let hp = point_profile(&hand).map_err(|e| e.to_string())?;
    let code = evaluation_code(&hand, 1).map_err(|e| e.to_string())?;
    for (ell, expected) in [(1, 2), (2, 3)] {
        let g = generalized_hamming_weight(&code, ell).map_err(|e| e.to_string())?.value;
        let d = delta_fast(&hp, 1, ell).map_err(|e| e.to_string())?.value;
        ensure(g == expected && d == expected as i64, || format!("P1(F2) ℓ={ell}: ghw {g}, δ {d}"), &mut f);
    }
    let sets = suite::random_point_sets(DEFAULT_SEED, BRIDGE_SETS, BRIDGE_MAX_POINTS);
    let qs: std::collections::BTreeSet<u32> = sets.iter().map(|(_, x)| x.field().p()).collect();
    ensure(qs.len() == 2, || format!("characteristics used: {qs:?}"), &mut f);
    for (name, x) in &sets {
        let p = point_profile(x).map_err(|e| e.to_string())?;
        for t in 1..=BRIDGE_T_MAX {
            let code = evaluation_code(x, t).map_err(|e| e.to_string())?;
            for ell in 1..=BRIDGE_ELL_MAX.min(code.dimension()) {
                let g = generalized_hamming_weight(&code, ell).map_err(|e| e.to_string())?.value;
                let d = delta_fast(&p, t as usize, ell).map_err(|e| e.to_string())?.value;
                comparisons += 1;
                ensure(d == g as i64, || format!("{name} t={t} ℓ={ell}: δ {d}, ghw {g}"), &mut f);
            }
        }
    }
    verdict(f, format!("{} point sets, {comparisons} comparisons, P1(F2) gives 2, 3", sets.len()))
}

fn inputs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs")
}

fn criterion_8() -> Outcome {
    let ex1 = inputs_dir().join("first_example.json");
    let ex1 = ex1.to_str().unwrap();
    let sets = BRIDGE_SETS.to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["delta", ex1, "--t-max", "4", "--ell-max", "7", "--witnesses"],
        vec!["stabilize", ex1, "--ell-max", "7"],
        vec!["bridge", "--count", &sets, "--max-points", "8", "--t-max", "3", "--ell-max", "3"],
    ];
    let mut f = Vec::new();
    for args in &runs {
        let mut outputs = Vec::new();
        for jobs in ["1", "2", "8"] {
            let mut full = vec!["gmdist"];
            full.extend(args.iter().copied());
            full.extend(["--jobs", jobs]);
            let out = gmdist_cli::run(full);
            if out.code != 0 {
                return Err(format!("{} --jobs {jobs} exited {}: {}", args[0], out.code, out.stderr));
            }
            outputs.push(out.stdout);
        }
        ensure(
            outputs.windows(2).all(|w| w[0] == w[1]),
            || format!("{} output depends on the worker count", args[0]),
            &mut f,
        );
    }
    verdict(f, format!("{} reports byte-identical for 1, 2 and 8 workers", runs.len()))
}

#[test]
fn acceptance() {
    let mut ok = Vec::new();
    ok.push(run_criterion(1, "first worked example", Some(EXAMPLE_LIMIT), criterion_1));
    ok.push(run_criterion(2, "second worked example", Some(EXAMPLE_LIMIT), criterion_2));
    let suite = suite::oracle_suite(DEFAULT_SEED);
    let mut tables = OracleTables { brute: Vec::new() };
    ok.push(run_criterion(3, "brute force equals prime formula", Some(SUITE_LIMIT), || {
        criterion_3(&suite, &mut tables)
    }));
    let c4 = if tables.brute.len() == suite.len() {
        run_criterion(4, "table properties", None, || criterion_4(&suite, &tables))
    } else {
        run_criterion(4, "table properties", None, || Err("criterion 3 tables incomplete".into()))
    };
    ok.push(c4);
    ok.push(run_criterion(5, "regularity index bounds", None, criterion_5));
    ok.push(run_criterion(6, "Stanley-Reisner consistency", None, criterion_6));
    ok.push(run_criterion(7, "coding bridge", Some(SUITE_LIMIT), criterion_7));
    ok.push(run_criterion(8, "determinism across worker counts", None, criterion_8));
    let failed: Vec<usize> = ok.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
