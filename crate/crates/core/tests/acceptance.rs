//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines are always printed; exits nonzero on any failure
//! other than the documented unattainable one.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use bgm::catalog::{build, corpus, GroupSpec};
use bgm::cli::{RowStatus, VerifyBundle};
use bgm::cohomology::{b0, schur_multiplier, SubgroupFamily};
use bgm::fastpath::{
    b0_fastpath, gamma_from_group, search_nonzero, two_dim_subspaces, GammaData, FastpathCertificate,
};
use bgm::group::FiniteGroup;
use bgm::rigidity::autc_enumerate;
use bgm::structure::{isoclinic, omega_isoclinism_check};

/// Criteria that cannot hold as stated; they must fail in exactly the
/// documented way.
const KNOWN_UNATTAINABLE: &[u8] = &[9];

struct Outcome {
    passed: bool,
    /// For a known-unattainable criterion: the failure is the documented one.
    expected_failure: bool,
    detail: String,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            passed: true,
            expected_failure: false,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome {
            passed: false,
            expected_failure: false,
            detail: detail.into(),
        }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(detail)
        } else {
            Self::fail(detail)
        }
    }
}

fn g(spec: &str) -> FiniteGroup {
    build(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn cocycle_b0(group: &FiniteGroup) -> Vec<u64> {
    b0(group, SubgroupFamily::Bicyclic)
        .expect("within cohomology caps")
        .invariant_factors()
        .to_vec()
}

fn fastpath_of(group: &FiniteGroup) -> Option<(GammaData, FastpathCertificate)> {
    let gamma = gamma_from_group(group, None).ok()?;
    let cert = b0_fastpath(&gamma).expect("extracted data is valid");
    Some((gamma, cert))
}

fn extraspecial_vanishing() -> Outcome {
    let mut bad = Vec::new();
    for p in [3u64, 5, 7] {
        for n in 1..=3 {
            let gamma = GammaData::symplectic(p, n).unwrap();
            let cert = b0_fastpath(&gamma).unwrap();
            if cert.b0_dim != 0 || !cert.verify() {
                bad.push(format!("p={p},n={n}: dim {}", cert.b0_dim));
            }
        }
    }
    Outcome::check(bad.is_empty(), format!("9 symplectic forms, dimension 0 for all; failures {bad:?}"))
}

fn cross_pipeline() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    // both pipelines on every odd-order p-group of the corpus the fast path accepts
    let mut compared = 0;
    for e in corpus(32).unwrap() {
        let odd_p = e.group.p_group_prime().is_some_and(|p| p != 2);
        let Some((gamma, cert)) = odd_p.then(|| fastpath_of(&e.group)).flatten() else {
            continue;
        };
        compared += 1;
        let cocycle = cocycle_b0(&e.group);
        if cocycle != vec![gamma.p(); cert.b0_dim] {
            ok = false;
            notes.push(format!("{}: cocycle {cocycle:?} vs fast path dim {}", e.spec, cert.b0_dim));
        }
    }
    let es27 = g("extraspecial:p=3,n=1,exp=p");
    let es27_fast = fastpath_of(&es27).map(|(_, c)| c.b0_dim);
    let es27_cocycle = cocycle_b0(&es27);
    ok &= es27_fast == Some(0) && es27_cocycle.is_empty();
    for spec in [
        "extraspecial:p=2,n=2,type=D",
        "extraspecial:p=2,n=2,type=Q",
        "extraspecial:p=3,n=1,exp=p^2",
    ] {
        let b = cocycle_b0(&g(spec));
        if !b.is_empty() {
            ok = false;
            notes.push(format!("{spec}: {b:?}"));
        }
    }
    Outcome::check(
        ok && compared >= 3,
        format!(
            "ES27: cocycle {es27_cocycle:?}, fast path dim {es27_fast:?}; {compared} odd p-groups agree; ES32 D/Q and exponent-9 order 27 give []; {notes:?}"
        ),
    )
}

/// Invariant-factor chains `d₁ | d₂ | …` with product `n` (the cyclic group
/// as the one-element chain).
fn chains(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && acc.last().is_none_or(|&prev| d % prev == 0) {
                acc.push(d);
                go(rest / d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn abelian_oracle() -> Outcome {
    let mut groups = Vec::new();
    for n in 2..=36u64 {
        groups.extend(chains(n));
    }
    let bad: Vec<String> = groups
        .par_iter()
        .filter_map(|ds| {
            let spec = match ds.as_slice() {
                [n] => format!("cyclic:{n}"),
                _ => format!("abelian:[{}]", ds.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            };
            let got = schur_multiplier(&g(&spec)).unwrap().invariant_factors().to_vec();
            let want = common::abelian_schur_closed_form(ds);
            (got != want).then(|| format!("{spec}: {got:?} vs {want:?}"))
        })
        .collect();
    Outcome::check(
        bad.is_empty() && groups.len() > 60,
        format!("{} abelian groups of order 2..36 match the closed form; mismatches {bad:?}", groups.len()),
    )
}

fn theorem_corpus() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("verify.json");
    let status = Command::new(env!("CARGO_BIN_EXE_bgm"))
        .args(["--no-cache", "verify-theorem", "--max-order", "32", "--json-out"])
        .arg(&json)
        .stdout(std::process::Stdio::null())
        .status()
        .expect("bgm runs");
    let bundle: VerifyBundle = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let named = [
        "dihedral:8",
        "quaternion:8",
        "dihedral:16",
        "quaternion:16",
        "semidihedral:16",
        "modular:16",
        "sym:3",
        "sym:4",
        "dicyclic:12",
        "extraspecial:p=2,n=2,type=D",
        "extraspecial:p=2,n=2,type=Q",
    ];
    let missing: Vec<&str> = named
        .iter()
        .copied()
        .filter(|s| !bundle.rows.iter().any(|r| r.spec == *s && r.status == RowStatus::Pass))
        .collect();
    let s = &bundle.summary;
    Outcome::check(
        status.success() && s.fail == 0 && s.skipped == 0 && missing.is_empty(),
        format!(
            "exit {:?}; {} rows: {} pass, {} fail, {} skipped; named groups not passing {missing:?}",
            status.code(),
            s.total,
            s.pass,
            s.fail,
            s.skipped
        ),
    )
}

fn bicyclic_reduction() -> Outcome {
    let entries = corpus(24).unwrap();
    let bad: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let bi = b0(&e.group, SubgroupFamily::Bicyclic).unwrap();
            let all = b0(&e.group, SubgroupFamily::AllAbelian).unwrap();
            (bi.invariant_factors() != all.invariant_factors()).then(|| e.spec.to_string())
        })
        .collect();
    Outcome::check(
        bad.is_empty(),
        format!("{} corpus groups of order <= 24, bicyclic = all abelian; differing {bad:?}", entries.len()),
    )
}

fn direct_products() -> Outcome {
    let entries = corpus(32).unwrap();
    let products: Vec<_> = entries
        .iter()
        .filter_map(|e| match &e.spec {
            GroupSpec::Product(a, b) => Some((e, a.clone(), b.clone())),
            _ => None,
        })
        .collect();
    let bad: Vec<String> = products
        .par_iter()
        .filter_map(|(e, a, b)| {
            let ba = cocycle_b0(&bgm::catalog::make(a).unwrap());
            let bb = cocycle_b0(&bgm::catalog::make(b).unwrap());
            let whole = cocycle_b0(&e.group);
            let combined: Vec<u64> = common::invariant_factors_of(&[ba.clone(), bb.clone()].concat());
            (whole != combined).then(|| format!("{}: {whole:?} vs {ba:?} x {bb:?}", e.spec))
        })
        .collect();
    Outcome::check(
        bad.is_empty() && !products.is_empty(),
        format!("{} corpus products of order <= 32; mismatches {bad:?}", products.len()),
    )
}

fn isoclinism_invariance() -> Outcome {
    let entries = corpus(32).unwrap();
    let b0s: Vec<Vec<u64>> = entries.par_iter().map(|e| cocycle_b0(&e.group)).collect();
    let pairs: Vec<(usize, usize)> = (0..entries.len())
        .flat_map(|i| (i + 1..entries.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&entries[i].group, &entries[j].group);
            match isoclinic(a, b).unwrap() {
                Some(w) => (true, w.verify(a, b) && b0s[i] == b0s[j]),
                None => (false, true),
            }
        })
        .collect();
    let isoclinic_pairs = results.iter().filter(|r| r.0).count();
    let consistent = results.iter().all(|r| r.1);
    let (d8, q8) = (g("dihedral:8"), g("quaternion:8"));
    let witness = isoclinic(&d8, &q8).unwrap().is_some_and(|w| w.verify(&d8, &q8));
    let omega = omega_isoclinism_check(&g("almostextra:p=3,n=1")).unwrap();
    Outcome::check(
        consistent && witness && omega.passed() && isoclinic_pairs > 0,
        format!(
            "{} pairs checked, {isoclinic_pairs} isoclinic, all with verified witness and equal B0: {consistent}; D8/Q8 witness {witness}; omega check {omega:?}",
            pairs.len()
        ),
    )
}

fn rigidity() -> Outcome {
    let mut specs: Vec<String> = ["sym:3", "sym:4", "sym:5"].map(String::from).to_vec();
    specs.extend(
        corpus(16)
            .unwrap()
            .into_iter()
            .filter(|e| e.group.is_p_group())
            .map(|e| e.spec.to_string()),
    );
    specs.extend(
        [
            "extraspecial:p=3,n=1,exp=p",
            "extraspecial:p=3,n=1,exp=p^2",
            "extraspecial:p=2,n=2,type=D",
            "extraspecial:p=2,n=2,type=Q",
        ]
        .map(String::from),
    );
    let bad: Vec<String> = specs
        .par_iter()
        .filter_map(|s| {
            let outc = autc_enumerate(&g(s)).unwrap().outc_order;
            (outc != 1).then(|| format!("{s}: {outc}"))
        })
        .collect();
    Outcome::check(bad.is_empty(), format!("{} groups with outc = 1; others {bad:?}", specs.len()))
}

/// `S²_dec ⊊ S²` by the all-pairs brute force of the test oracle, and the
/// brute force agrees with the certificate.
fn confirmed_nonzero(gamma: &GammaData, cert: &FastpathCertificate) -> bool {
    let brute = common::decomposable_span_bruteforce(gamma);
    cert.b0_dim >= 1 && brute == cert.s2_dec && brute.is_subspace_of(&cert.s2) && brute.dim() < cert.s2.dim()
}

fn positive_control() -> Outcome {
    let budget = 100_000;
    if let Some((gamma, cert)) = search_nonzero(3, 4, 2, budget).unwrap() {
        return Outcome::check(
            confirmed_nonzero(&gamma, &cert),
            format!("search_nonzero(3,4,2) found dim {}", cert.b0_dim),
        );
    }
    // Documented failure: with dimV = 2 every surjective γ has B₀ = 0.
    let expected_count = (3u64.pow(6) - 1) * (3u64.pow(5) - 1) / ((3u64.pow(2) - 1) * (3 - 1));
    let mut count = 0u64;
    let mut nonzero = 0u64;
    for k2 in two_dim_subspaces(6, 3) {
        count += 1;
        let gamma = GammaData::new(3, 4, 2, k2.basis().to_vec()).unwrap();
        if b0_fastpath(&gamma).unwrap().b0_dim != 0 {
            nonzero += 1;
        }
    }
    let exhaustive_zero = count == expected_count && nonzero == 0;

    let fixture: GammaData =
        serde_json::from_str(include_str!("fixtures/gamma_p3_d4_e3.json")).expect("fixture parses");
    fixture.validate().unwrap();
    let fixture_cert = b0_fastpath(&fixture).unwrap();
    let guard = match search_nonzero(3, 4, 3, budget).unwrap() {
        Some((gamma, cert)) => {
            gamma == fixture && confirmed_nonzero(&gamma, &cert) && confirmed_nonzero(&fixture, &fixture_cert)
        }
        None => false,
    };
    Outcome {
        passed: false,
        expected_failure: exhaustive_zero && guard,
        detail: format!(
            "no hit for dimV=2 in {budget} tries (known unattainable: all {count} of {expected_count} surjective dimV=2 data have B0 = 0, {nonzero} nonzero); supplementary dimV=3 guard {}: fixture dim {}, brute-force S2_dec strictly inside S2",
            if guard { "PASS" } else { "FAIL" },
            fixture_cert.b0_dim
        ),
    }
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    let suites = common::standard_suites();
    for (name, run) in &suites {
        if let Err(e) = run() {
            failures.push(format!("{name}: {e}"));
        }
    }
    Outcome::check(
        failures.is_empty(),
        format!("{} suites green; failures {failures:?}", suites.len() - failures.len()),
    )
}

type Criterion = (u8, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let criteria: [Criterion; 10] = [
        (1, "extraspecial vanishing (fast path)", Duration::from_secs(10), extraspecial_vanishing),
        (2, "cross-pipeline oracle", minutes(5), cross_pipeline),
        (3, "abelian Schur multiplier oracle", minutes(2), abelian_oracle),
        (4, "theorem corpus (verify-theorem --max-order 32)", minutes(15), theorem_corpus),
        (5, "bicyclic reduction", minutes(15), bicyclic_reduction),
        (6, "direct products", minutes(15), direct_products),
        (7, "isoclinism invariance", minutes(15), isoclinism_invariance),
        (8, "rigidity", minutes(10), rigidity),
        (9, "positive control", minutes(15), positive_control),
        (10, "property suites", minutes(5), property_suites),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let passed = outcome.passed && in_time;
        println!(
            "criterion {id:>2} {} {name}: {} [{:.1} s, limit {} s]",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        let documented = KNOWN_UNATTAINABLE.contains(&id) && outcome.expected_failure && in_time;
        if !passed && !documented {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected (criterion 9 fails in the documented way)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
