//! Property suites shared by the standalone property tests and the
//! acceptance gate, and oracles written independently of the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use bgm::fastpath::{b0_fastpath, b0_fastpath_with, wedge_dim, DecomposableScan, GammaData};
use bgm::group::{is_isomorphic, quotient, FiniteGroup};
use bgm::linalg::{kernel_mod, snf, FpSubspace, IntMatrix};

pub type SuiteResult = Result<(), String>;

/// Fixed-seed runner, so every suite run sees the same cases.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> SuiteResult {
    r.map_err(|e| e.to_string())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    out
}

/// Invariant factors of `⊕ Z/nᵢ`: split into primary parts, then combine
/// the i-th largest power of each prime.
pub fn invariant_factors_of(cyclic_orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &n in cyclic_orders {
        for (p, q) in prime_powers(n) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, q) in out.iter_mut().zip(powers.iter()) {
            *slot *= q;
        }
    }
    out.reverse();
    out
}

/// `M(Z/d₁ ⊕ … ⊕ Z/d_k) = ⊕_{i<j} Z/gcd(dᵢ, dⱼ)`.
pub fn abelian_schur_closed_form(ds: &[u64]) -> Vec<u64> {
    let mut pieces = Vec::new();
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            pieces.push(gcd(ds[i], ds[j]));
        }
    }
    invariant_factors_of(&pieces)
}

/// Every vector of `(Z/m)^len` reachable from `gens` by addition.
pub fn span_closure(gens: &[Vec<u64>], len: usize, m: u64) -> BTreeSet<Vec<u64>> {
    let mut set = BTreeSet::new();
    set.insert(vec![0u64; len]);
    let mut frontier = vec![vec![0u64; len]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All vectors of `F_p^d` (or `(Z/m)^d`), in lexicographic order.
pub fn all_vectors(m: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `u∧v` in the basis `eᵢ∧eⱼ`, `i < j`, ordered lexicographically by `(i, j)`.
pub fn wedge_lex(u: &[u64], v: &[u64], p: u64) -> Vec<u64> {
    let d = u.len();
    let mut out = Vec::with_capacity(wedge_dim(d));
    for i in 0..d {
        for j in i + 1..d {
            out.push((u[i] * v[j] % p + p - u[j] * v[i] % p) % p);
        }
    }
    out
}

/// Span of all `u∧v` with `γ(u∧v) = 0`, over every pair of vectors.
pub fn decomposable_span_bruteforce(gamma: &GammaData) -> FpSubspace {
    let (p, d) = (gamma.p(), gamma.dim_u());
    let vectors = all_vectors(p, d);
    let mut span = FpSubspace::zero(p, wedge_dim(d));
    for u in &vectors {
        for v in &vectors {
            let w = wedge_lex(u, v, p);
            let killed = gamma
                .matrix()
                .iter()
                .all(|row| row.iter().zip(&w).map(|(a, b)| a * b).sum::<u64>() % p == 0);
            if killed {
                span.insert(&w);
            }
        }
    }
    span
}

fn dot(a: &[u64], b: &[u64], p: u64) -> u64 {
    a.iter().zip(b).map(|(x, y)| x * y % p).sum::<u64>() % p
}

// ---------------------------------------------------------------- linalg

fn int_matrix(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(range, cols), rows)
}

/// `kernel_mod` spans exactly the solutions found by enumerating `(Z/m)^c`.
pub fn kernel_vs_enumeration(cases: u32) -> SuiteResult {
    let strategy = (1usize..=3, 1usize..=3, 2u64..=10)
        .prop_flat_map(|(r, c, m)| (int_matrix(r, c, -6..=6), Just(c), Just(m)));
    finish(runner(cases).run(&strategy, |(rows, cols, m)| {
        let a = IntMatrix::from_rows(cols, &rows);
        let gens = kernel_mod(&a, m);
        let residue = |x: i64| x.rem_euclid(m as i64) as u64;
        let solves = |x: &[u64]| {
            rows.iter()
                .all(|r| r.iter().zip(x).map(|(&a, &b)| residue(a) * b % m).sum::<u64>() % m == 0)
        };
        for g in &gens {
            prop_assert!(solves(g), "generator {g:?} is not in the kernel");
        }
        let expected: BTreeSet<Vec<u64>> = all_vectors(m, cols).into_iter().filter(|x| solves(x)).collect();
        prop_assert_eq!(span_closure(&gens, cols, m), expected);
        Ok(())
    }))
}

/// `U·A·V = D` with `U`, `V` unimodular, `V·V⁻¹ = I` and `D` a divisibility
/// chain of nonnegative diagonal entries.
pub fn snf_round_trip(cases: u32) -> SuiteResult {
    use num_bigint::BigInt;
    let strategy = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (int_matrix(r, c, -9..=9), Just(c)));
    finish(runner(cases).run(&strategy, |(rows, cols)| {
        let a = IntMatrix::from_rows(cols, &rows);
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v).to_nested(), s.d.to_nested());
        prop_assert_eq!(s.v.mul(&s.v_inv).to_nested(), IntMatrix::identity(cols).to_nested());
        let one = BigInt::from(1);
        prop_assert!(s.u.determinant() == one || s.u.determinant() == -one.clone());
        prop_assert!(s.v.determinant() == one || s.v.determinant() == -one);
        for (i, row) in s.d.to_nested().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                prop_assert!(i == j || *x == BigInt::from(0), "off-diagonal entry");
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| *x >= BigInt::from(0)), "negative diagonal entry");
        for w in diag.windows(2) {
            let divides = if w[0] == BigInt::from(0) {
                w[1] == BigInt::from(0)
            } else {
                &w[1] % &w[0] == BigInt::from(0)
            };
            prop_assert!(divides, "diagonal {diag:?} is not a divisibility chain");
        }
        Ok(())
    }))
}

/// `dim S + dim S^⊥ = d`, `S^⊥⊥ = S` and `S ⟂ S^⊥`.
pub fn fp_orthogonal_props(cases: u32) -> SuiteResult {
    let strategy = (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=5, 0usize..=4).prop_flat_map(|(p, d, k)| {
        (Just(p), Just(d), prop::collection::vec(prop::collection::vec(0..p, d), k))
    });
    finish(runner(cases).run(&strategy, |(p, d, gens)| {
        let s = FpSubspace::span(p, d, &gens);
        let o = bgm::linalg::fp_orthogonal(&s);
        prop_assert_eq!(s.dim() + o.dim(), d);
        prop_assert_eq!(&bgm::linalg::fp_orthogonal(&o), &s);
        for a in s.basis() {
            for b in o.basis() {
                prop_assert_eq!(dot(a, b, p), 0);
            }
        }
        for g in &gens {
            prop_assert!(s.contains(g));
        }
        Ok(())
    }))
}

// ---------------------------------------------------------------- groups

fn permutation_gens() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=5, 1usize..=3).prop_flat_map(|(degree, k)| {
        prop::collection::vec(Just((0..degree).collect::<Vec<usize>>()).prop_shuffle(), k)
    })
}

fn check_group(g: &FiniteGroup, gens: &[Vec<usize>]) -> Result<(), TestCaseError> {
    let n = g.order();
    prop_assert!(g.validate().is_ok());
    for x in g.elements() {
        prop_assert_eq!(g.mul(0, x), x);
        prop_assert_eq!(g.mul(x, g.inv(x)), 0);
        prop_assert_eq!(g.exponent() % g.element_order(x), 0);
    }
    let classes = g.conjugacy_classes();
    prop_assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), n);
    prop_assert!(classes.iter().all(|c| n.is_multiple_of(c.len())), "class size does not divide |G|");
    let singletons = classes.iter().filter(|c| c.len() == 1).count();
    let z = g.center();
    prop_assert_eq!(z.order(), singletons);
    let d = g.derived_subgroup();
    prop_assert!(d.is_normal(g));
    let (ab, _) = quotient(g, &d).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(ab.is_abelian());
    prop_assert_eq!(ab.order() * d.order(), n);
    let invariants = g.abelianization_invariants().map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(invariants.iter().product::<u64>(), ab.order() as u64);
    prop_assert!(invariants.windows(2).all(|w| w[1] % w[0] == 0));
    for x in g.elements().step_by(3) {
        let h = g.subgroup_generated(&[x, g.mul(x, x)]);
        prop_assert_eq!(n % h.order(), 0);
    }
    let again = FiniteGroup::from_permutations(gens).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(again.fingerprint(), g.fingerprint());
    let iso = is_isomorphic(g, &again).ok_or_else(|| TestCaseError::fail("not isomorphic to itself"))?;
    prop_assert!(iso.is_homomorphism(g, &again) && iso.is_bijective(&again));
    Ok(())
}

/// Table axioms, class equation, center, derived subgroup and
/// abelianization, Lagrange, and deterministic construction, on random
/// permutation groups of degree at most 5.
pub fn group_invariants(cases: u32) -> SuiteResult {
    finish(runner(cases).run(&permutation_gens(), |gens| {
        let g = FiniteGroup::from_permutations(&gens).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check_group(&g, &gens)
    }))
}

// -------------------------------------------------------------- fastpath

fn gamma_strategy() -> impl Strategy<Value = GammaData> {
    (prop::sample::select(vec![3u64, 5]), 2usize..=4)
        .prop_flat_map(|(p, d)| (Just(p), Just(d), 0usize..=wedge_dim(d).min(3)))
        .prop_flat_map(|(p, d, e)| {
            prop::collection::vec(prop::collection::vec(0..p, wedge_dim(d)), e)
                .prop_map(move |m| GammaData::new(p, d, e, m).expect("shape matches"))
        })
}

/// Certificate chain `K² ⊆ K²_max`, `S²_dec ⊆ S² = (K²)^⊥`, dimension
/// bookkeeping, agreement of the two scans for `p^d ≤ 3⁵`, and agreement
/// with the all-pairs brute force computed here for `p^d ≤ 125`.
pub fn certificate_chain(cases: u32) -> SuiteResult {
    finish(runner(cases).run(&gamma_strategy(), |gamma| {
        let (p, d) = (gamma.p(), gamma.dim_u());
        let w = wedge_dim(d);
        let cert = b0_fastpath(&gamma).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(cert.verify());
        prop_assert!(cert.k2.is_subspace_of(&cert.k2_max));
        prop_assert!(cert.s2_dec.is_subspace_of(&cert.s2));
        prop_assert_eq!(cert.k2.dim() + cert.s2.dim(), w);
        prop_assert_eq!(cert.s2_dec.dim() + cert.k2_max.dim(), w);
        prop_assert_eq!(cert.b0_dim, cert.s2.dim() - cert.s2_dec.dim());
        for a in cert.k2.basis() {
            for b in cert.s2.basis() {
                prop_assert_eq!(dot(a, b, p), 0);
            }
        }
        let size = p.pow(d as u32);
        if size <= 243 {
            let pairs = b0_fastpath_with(&gamma, DecomposableScan::AllPairs)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&pairs, &cert);
        }
        if size <= 125 {
            prop_assert_eq!(&decomposable_span_bruteforce(&gamma), &cert.s2_dec);
        }
        Ok(())
    }))
}

/// The suites behind the "property suites" acceptance criterion, with the
/// case counts used everywhere.
pub fn standard_suites() -> Vec<(&'static str, fn() -> SuiteResult)> {
    vec![
        ("linalg: kernel_mod vs enumeration", || kernel_vs_enumeration(256)),
        ("linalg: SNF round trip", || snf_round_trip(1000)),
        ("linalg: F_p orthogonal complements", || fp_orthogonal_props(256)),
        ("groups: table and subgroup invariants", || group_invariants(128)),
        ("fastpath: certificate chain", || certificate_chain(256)),
    ]
}
