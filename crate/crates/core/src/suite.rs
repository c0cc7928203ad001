//! The reproduction and property suite, shared by the `selftest`
//! subcommand and the acceptance test target.
//!
//! Every case is a deterministic function of a seed. Exact reproductions
//! ignore the seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    equivalence_bounds, monotonicity_check, parallelogram_defect, submult_check_d2, trace_mean_bound,
    tracial_lower_bound,
};
use crate::chs_poly::{baston_bound, expectation_estimate, h_direct, hunter_bound};
use crate::complex_norm::{det_inverse_series, norm_via_det_series, norm_via_quadrature, norm_via_words, default_nodes};
use crate::dispatch::{applicable_methods, compute_norm, norm};
use crate::graph::{chs_distinguish, cospectral, doubled_triangle_pair, singularly_cospectral};
use crate::hermitian_norm::{norm_via_charpoly, norm_via_trace_recursion, NormResult};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::partitions::{binomial, partitions_of};
use crate::sampling;
use crate::scalar::{rel_deviation, Approx, Exact, Ring, Scalar, Value};
use crate::tensor_power::norm_via_tensor;

pub const DEFAULT_SEED: u64 = 20_240_229;

/// Result of running one case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub passed: bool,
    /// Number of individual assertions evaluated.
    pub checks: usize,
    pub failures: usize,
    /// First few failure messages, or a short summary on success.
    pub detail: String,
}

/// One acceptance criterion.
#[derive(Clone, Copy)]
pub struct Case {
    pub number: usize,
    pub group: &'static str,
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(u64, &mut Checker),
}

impl Case {
    pub fn run(&self, seed: u64) -> CaseOutcome {
        let mut c = Checker::default();
        (self.run)(seed.wrapping_add(self.number as u64), &mut c);
        c.finish()
    }

    /// True when `filter` names this case, its group, or its number.
    pub fn matches(&self, filter: &str) -> bool {
        filter == self.name || filter == self.group || filter == self.number.to_string()
    }
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Case").field("number", &self.number).field("name", &self.name).finish()
    }
}

const MAX_REPORTED: usize = 4;

/// Collects pass/fail assertions for one case.
#[derive(Default)]
pub struct Checker {
    checks: usize,
    messages: Vec<String>,
    failures: usize,
    notes: Vec<String>,
}

impl Checker {
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.messages.len() < MAX_REPORTED {
                self.messages.push(message());
            }
        }
    }

    /// Records an error from a computation that should have succeeded.
    pub fn ok<T>(&mut self, r: crate::Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", context()));
                None
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn finish(self) -> CaseOutcome {
        let passed = self.failures == 0;
        let detail = if passed {
            if self.notes.is_empty() {
                format!("{} checks", self.checks)
            } else {
                format!("{} checks; {}", self.checks, self.notes.join("; "))
            }
        } else {
            let mut d = format!("{}/{} checks failed: {}", self.failures, self.checks, self.messages.join("; "));
            if self.failures > self.messages.len() {
                d.push_str("; ...");
            }
            d
        };
        CaseOutcome { passed, checks: self.checks, failures: self.failures, detail }
    }
}

fn ratio(p: i64, q: i64) -> Value {
    Value::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn int_value(v: u128) -> Value {
    Value::Exact(BigRational::from_integer(BigInt::from(v)))
}

fn exact(rows: &[&[i64]]) -> Matrix<Exact> {
    Matrix::from_int_rows(rows).expect("square literal")
}

pub fn fibonacci_matrix() -> Matrix<Exact> {
    exact(&[&[1, 1], &[1, 0]])
}

pub fn cyclic_shift() -> Matrix<Exact> {
    exact(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])
}

pub fn jordan_cell() -> Matrix<Exact> {
    exact(&[&[0, 1], &[0, 0]])
}

/// Two 3x3 matrices with the same determinantal series `1 - 4 z zbar`.
pub fn nilpotent_pair() -> (Matrix<Exact>, Matrix<Exact>) {
    let z = Exact::zero();
    let one = Exact::one();
    let i = Exact::i();
    let a = Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), z.clone()],
        vec![z.clone(), one.clone(), i.clone()],
        vec![z.clone(), i.clone(), -one.clone()],
    ])
    .expect("3x3");
    let b = Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), one.clone()],
        vec![z.clone(), z.clone(), i.clone()],
        vec![one, i, z],
    ])
    .expect("3x3");
    (a, b)
}

fn fibonacci(_: u64, c: &mut Checker) {
    let h = HermitianMatrix::new(fibonacci_matrix()).expect("symmetric");
    let expected: [u128; 6] = [1, 3, 8, 21, 55, 144];
    let mut got = Vec::new();
    for (idx, d) in (2..=12).step_by(2).enumerate() {
        let want = int_value(expected[idx]);
        let mut results: Vec<(&str, crate::Result<NormResult>)> =
            vec![("charpoly", norm_via_charpoly(&h, d)), ("recursion", norm_via_trace_recursion(&h, d))];
        if d <= 6 {
            results.push(("tensor", norm_via_tensor(&h, d)));
        }
        for (name, r) in results {
            if let Some(r) = c.ok(r, || format!("{name} d={d}")) {
                if name == "charpoly" {
                    got.push(r.dth_power.to_string());
                }
                c.check(r.dth_power == want, || format!("{name} d={d}: got {} expected {want}", r.dth_power));
            }
        }
    }
    c.note(format!("values {}", got.join(", ")));
}

fn cyclic(_: u64, c: &mut Checker) {
    let a = cyclic_shift();
    for (d, p, q) in [(2, 3, 2), (4, 3, 2), (6, 29, 20), (8, 99, 70)] {
        let want = ratio(p, q);
        for (name, r) in [("words", norm_via_words(&a, d)), ("detseries", norm_via_det_series(&a, d))] {
            if let Some(r) = c.ok(r, || format!("{name} d={d}")) {
                c.check(r.dth_power == want, || format!("{name} d={d}: got {} expected {want}", r.dth_power));
            }
        }
    }
}

fn graphs(_: u64, c: &mut Checker) {
    let (a, b) = doubled_triangle_pair();
    if let Some(r) = c.ok(chs_distinguish(&a, &b, &[6]), || "distinguish".into()) {
        let row = &r.rows[0];
        c.check(row.left == int_value(120), || format!("block-diagonal d=6: got {}", row.left));
        c.check(row.right == int_value(112), || format!("anti-diagonal d=6: got {}", row.right));
    }
    let ha = HermitianMatrix::new(a).expect("symmetric");
    let hb = HermitianMatrix::new(b).expect("symmetric");
    if let Some(s) = c.ok(singularly_cospectral(&ha, &hb, 1e-10), || "singular values".into()) {
        c.check(s, || "pair is not singularly cospectral".into());
    }
    if let Some(s) = c.ok(cospectral(&ha, &hb, 1e-10), || "eigenvalues".into()) {
        c.check(!s, || "pair is cospectral".into());
    }
}

fn jordan(_: u64, c: &mut Checker) {
    let j = jordan_cell();
    for d in (2..=12).step_by(2) {
        let want = ratio(1, binomial(d as u64, d as u64 / 2) as i64);
        for (name, r) in [("words", norm_via_words(&j, d)), ("detseries", norm_via_det_series(&j, d))] {
            if let Some(r) = c.ok(r, || format!("{name} d={d}")) {
                c.check(r.dth_power == want, || format!("{name} d={d}: got {} expected {want}", r.dth_power));
            }
        }
        if let Some(r) = c.ok(norm_via_quadrature(&j, d, default_nodes(d)), || format!("quadrature d={d}")) {
            let dev = (r.dth_power.to_f64() - want.to_f64()).abs();
            c.check(dev <= 1e-9, || format!("quadrature d={d}: off by {dev:e}"));
        }
    }
}

fn nilpotent(_: u64, c: &mut Checker) {
    let (a, b) = nilpotent_pair();
    let sa = det_inverse_series(&a, 12);
    let sb = det_inverse_series(&b, 12);
    for p in 0..=12 {
        for q in 0..=12 - p {
            c.check(sa.coeff(p, q) == sb.coeff(p, q), || format!("series coefficient ({p},{q}) differs"));
        }
    }
    for d in (2..=12).step_by(2) {
        let k = d / 2;
        let want = ratio(4i64.pow(k as u32), binomial(d as u64, k as u64) as i64);
        for (name, ra, rb) in [
            ("words", norm_via_words(&a, d), norm_via_words(&b, d)),
            ("detseries", norm_via_det_series(&a, d), norm_via_det_series(&b, d)),
        ] {
            let (Some(ra), Some(rb)) = (c.ok(ra, || format!("{name} d={d}")), c.ok(rb, || format!("{name} d={d}"))) else {
                continue;
            };
            c.check(ra.dth_power == rb.dth_power, || format!("{name} d={d}: {} vs {}", ra.dth_power, rb.dth_power));
            c.check(ra.dth_power == want, || format!("{name} d={d}: got {} expected {want}", ra.dth_power));
        }
    }
}

fn compare_all<S: Scalar>(c: &mut Checker, a: &Matrix<S>, d: usize, label: &str) {
    let results: Vec<NormResult> = applicable_methods(a, d)
        .into_iter()
        .filter_map(|m| c.ok(compute_norm(a, d, m, None), || format!("{label} {m} d={d}")))
        .collect();
    c.check(results.len() >= 3, || format!("{label} d={d}: only {} methods ran", results.len()));
    for (i, x) in results.iter().enumerate() {
        for y in &results[i + 1..] {
            let dev = rel_deviation(x.dth_power.to_f64(), y.dth_power.to_f64(), 1e-300);
            c.check(dev <= 1e-8, || format!("{label} d={d}: {} vs {} deviate by {dev:e}", x.method, y.method));
        }
    }
}

fn cross_method(seed: u64, c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..100 {
        let n = rng.gen_range(1..=5);
        let a = sampling::complex_matrix(&mut rng, n);
        for d in [2, 4, 6] {
            compare_all(c, &a, d, &format!("complex #{k}"));
        }
    }
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let h = sampling::hermitian_matrix(&mut rng, n);
        for d in [2, 4, 6] {
            compare_all(c, h.inner(), d, &format!("hermitian #{k}"));
        }
    }
}

fn value(c: &mut Checker, a: &Matrix<Approx>, d: usize) -> f64 {
    c.ok(norm(a, d), || format!("norm d={d}")).map_or(f64::NAN, |r| r.value)
}

fn norm_axioms(seed: u64, c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = [2, 4, 6];
    for k in 0..100 {
        let n = rng.gen_range(1..=4);
        let d = degrees[k % 3];
        let a = sampling::complex_matrix(&mut rng, n);
        let s = Approx::from_polar(rng.gen_range(0.05..4.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let base = value(c, &a, d);
        let scaled = value(c, &a.scale(&s), d);
        let dev = rel_deviation(scaled, s.norm() * base, 1e-300);
        c.check(dev <= 1e-10, || format!("homogeneity #{k} d={d}: deviation {dev:e}"));
        c.check(base > 0.0, || format!("nonzero matrix #{k} has norm {base}"));
        let adj = value(c, &a.adjoint(), d);
        let dev = rel_deviation(adj, base, 1e-300);
        c.check(dev <= 1e-10, || format!("adjoint #{k} d={d}: deviation {dev:e}"));
    }
    for k in 0..1000 {
        let n = rng.gen_range(1..=4);
        let d = degrees[k % 3];
        let a = sampling::complex_matrix(&mut rng, n);
        let b = sampling::complex_matrix(&mut rng, n);
        let lhs = value(c, &(&a + &b), d);
        let rhs = value(c, &a, d) + value(c, &b, d);
        c.check(lhs <= rhs + 1e-10, || format!("triangle #{k} d={d}: {lhs} > {rhs}"));
    }
    for n in 1..=4 {
        for d in degrees {
            let z = Matrix::<Exact>::zeros(n);
            if let Some(r) = c.ok(norm(&z, d), || "zero matrix".into()) {
                c.check(r.dth_power == int_value(0), || format!("zero matrix n={n} d={d}: {}", r.dth_power));
            }
        }
    }
    for k in 0..100 {
        let n = rng.gen_range(1..=5);
        let d = degrees[k % 3];
        let h = sampling::hermitian_matrix(&mut rng, n);
        let u = sampling::unitary(&mut rng, n);
        let Some(g) = c.ok(h.conjugate_by(&u), || "conjugation".into()) else { continue };
        let dev = rel_deviation(value(c, g.inner(), d), value(c, h.inner(), d), 1e-300);
        c.check(dev <= 1e-10, || format!("unitary invariance #{k} d={d}: deviation {dev:e}"));
    }
}

fn inequalities(seed: u64, c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = [2, 4, 6];

    for k in 0..100 {
        let n = rng.gen_range(1..=4);
        let d = degrees[k % 3];
        let s = Approx::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let scalar = Matrix::<Approx>::identity(n).scale(&s);
        if let Some(r) = c.ok(tracial_lower_bound(&scalar, d), || "tracial".into()) {
            c.check(r.satisfied && r.equality_case, || format!("tracial cI #{k}: {r:?}"));
        }
        // 1x1 matrices are multiples of the identity
        let a = sampling::complex_matrix(&mut rng, n.max(2));
        if let Some(r) = c.ok(tracial_lower_bound(&a, d), || "tracial".into()) {
            c.check(r.satisfied && !r.equality_case, || format!("tracial #{k}: {r:?}"));
        }
        if let Some(r) = c.ok(trace_mean_bound(&a, d), || "trace mean".into()) {
            c.check(r.satisfied, || format!("trace mean #{k}: {r:?}"));
        }
    }

    for k in 0..100 {
        let n = rng.gen_range(1..=4);
        let h = sampling::hermitian_matrix(&mut rng, n);
        let a = sampling::complex_matrix(&mut rng, n);
        for (p, q) in [(2, 4), (4, 6), (2, 6)] {
            if let Some(r) = c.ok(monotonicity_check(h.inner(), p, q, true), || "monotonicity".into()) {
                c.check(r.satisfied, || format!("hermitian monotonicity #{k} ({p},{q}): {r:?}"));
            }
            if let Some(r) = c.ok(monotonicity_check(&a, p, q, false), || "monotonicity".into()) {
                c.check(r.satisfied, || format!("complex monotonicity #{k} ({p},{q}): {r:?}"));
            }
        }
    }

    for k in 0..100 {
        let n = rng.gen_range(1..=5);
        let h = sampling::hermitian_matrix(&mut rng, n);
        let a = sampling::complex_matrix(&mut rng, n);
        for d in [2, 4, 6, 8] {
            if let Some(r) = c.ok(equivalence_bounds(h.inner(), d), || "equivalence".into()) {
                let lower_ok = r.lower.as_ref().is_some_and(|l| l.satisfied);
                c.check(lower_ok && r.upper.satisfied, || format!("equivalence #{k} d={d}: {r:?}"));
            }
            if let Some(r) = c.ok(equivalence_bounds(&a, d), || "equivalence".into()) {
                c.check(r.upper.satisfied, || format!("complexified equivalence #{k} d={d}: {r:?}"));
            }
        }
    }
    for n in 1..=4 {
        for d in [2, 4, 6, 8] {
            if let Some(r) = c.ok(equivalence_bounds(&Matrix::<Exact>::identity(n), d), || "equivalence".into()) {
                c.check(r.upper.equality_case, || format!("identity n={n} d={d} not tight: {r:?}"));
            }
        }
    }

    for k in 0..100 {
        let n = rng.gen_range(1..=5);
        let x = sampling::real_vector(&mut rng, n);
        for d in [2, 4, 6] {
            let (Some(h), Some(lo), Some(mid)) = (
                c.ok(h_direct(d, &x), || "h_d".into()),
                c.ok(hunter_bound(d, &x), || "hunter".into()),
                c.ok(baston_bound(d, &x), || "baston".into()),
            ) else {
                continue;
            };
            let tol = 1e-12 * h.abs().max(1e-300);
            c.check(lo <= mid + tol && mid <= h + tol, || format!("vector #{k} d={d}: {lo} <= {mid} <= {h} fails"));
        }
    }

    let j = jordan_cell();
    if let Some(r) = c.ok(submult_check_d2(&j, &j.adjoint()), || "submultiplicativity".into()) {
        c.check(r.satisfied && r.equality_case, || format!("J J*: {r:?}"));
    }
    for k in 0..100 {
        let n = rng.gen_range(1..=4);
        let a = sampling::complex_matrix(&mut rng, n);
        let b = sampling::complex_matrix(&mut rng, n);
        if let Some(r) = c.ok(submult_check_d2(&a, &b), || "submultiplicativity".into()) {
            c.check(r.satisfied, || format!("submultiplicativity #{k}: {r:?}"));
        }
    }
}

fn parallelogram(seed: u64, c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..100 {
        let n = rng.gen_range(1..=4);
        let a = sampling::complex_matrix(&mut rng, n);
        let b = sampling::complex_matrix(&mut rng, n);
        if let Some(defect) = c.ok(parallelogram_defect(&a, &b, 2), || "defect".into()) {
            c.check(defect.abs() <= 1e-9, || format!("d=2 pair #{k}: defect {defect:e}"));
        }
    }
    let e0 = exact(&[&[1, 0], &[0, 0]]);
    let e1 = exact(&[&[0, 0], &[0, 1]]);
    for d in [4usize, 6, 8] {
        let want = ((d + 1) as f64).powf(2.0 / d as f64) - 3.0;
        if let Some(defect) = c.ok(parallelogram_defect(&e0, &e1, d), || "defect".into()) {
            c.check((defect - want).abs() <= 1e-9 && defect.abs() > 1e-3, || {
                format!("diagonal pair d={d}: defect {defect} expected {want}")
            });
        }
    }
}

fn monte_carlo(seed: u64, c: &mut Checker) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let n = rng.gen_range(1..=4);
        let d = if k % 2 == 0 { 2 } else { 4 };
        let x = sampling::real_vector(&mut rng, n);
        let case_seed = rng.gen();
        let (Some(est), Some(h)) = (
            c.ok(expectation_estimate(d, &x, 1_000_000, case_seed), || "estimate".into()),
            c.ok(h_direct(d, &x), || "h_d".into()),
        ) else {
            continue;
        };
        let z = (est.mean - h).abs() / est.std_error;
        worst = worst.max(z);
        c.check(z <= 5.0, || format!("case #{k} n={n} d={d}: {z:.2} standard errors"));
    }
    c.note(format!("largest deviation {worst:.2} standard errors"));
}

/// `p(d)` for `d = 1..=20`.
const PARTITION_COUNTS: [usize; 20] = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627];

fn combinatorics(_: u64, c: &mut Checker) {
    for d in 1..=20 {
        let parts = partitions_of(d);
        c.check(parts.len() == PARTITION_COUNTS[d - 1], || format!("p({d}) = {}", parts.len()));
        let total = parts.iter().fold(BigRational::from_integer(BigInt::from(0)), |acc, p| {
            acc + BigRational::new(BigInt::from(1), BigInt::from(p.z_weight()))
        });
        c.check(total == BigRational::from_integer(BigInt::from(1)), || format!("d={d}: sum of 1/z is {total}"));
    }
    let weights: Vec<u128> = partitions_of(4).iter().map(|p| p.z_weight()).collect();
    c.check(weights == [4, 3, 8, 4, 24], || format!("z-weights of partitions of 4: {weights:?}"));
}

/// All cases in criterion order.
pub fn cases() -> Vec<Case> {
    vec![
        Case { number: 1, group: "reproductions", name: "fibonacci", summary: "Fibonacci matrix against 1, 3, 8, 21, 55, 144 on the exact path", run: fibonacci },
        Case { number: 2, group: "reproductions", name: "cyclic-shift", summary: "3x3 cyclic shift gives 3/2, 3/2, 29/20, 99/70", run: cyclic },
        Case { number: 3, group: "graphs", name: "doubled-triangles", summary: "120 vs 112 at d = 6; singularly cospectral, not cospectral", run: graphs },
        Case { number: 4, group: "reproductions", name: "jordan-cell", summary: "||J||_d^d = 1/binom(d, d/2) for d <= 12", run: jordan },
        Case { number: 5, group: "reproductions", name: "nilpotent-pair", summary: "identical determinantal series and norms", run: nilpotent },
        Case { number: 6, group: "properties", name: "cross-method", summary: "all applicable methods agree within 1e-8", run: cross_method },
        Case { number: 7, group: "properties", name: "norm-axioms", summary: "homogeneity, triangle inequality, definiteness, invariances", run: norm_axioms },
        Case { number: 8, group: "inequalities", name: "inequalities", summary: "tracial, monotonicity, equivalence, Hunter/Baston, submultiplicativity", run: inequalities },
        Case { number: 9, group: "inequalities", name: "parallelogram", summary: "parallelogram law holds only at d = 2", run: parallelogram },
        Case { number: 10, group: "probability", name: "monte-carlo", summary: "exponential-moment identity within 5 standard errors", run: monte_carlo },
        Case { number: 11, group: "combinatorics", name: "partitions", summary: "sum of 1/z, partition counts, z-weights of partitions of 4", run: combinatorics },
    ]
}

/// Cases matching any filter; all cases when `filters` is empty.
pub fn select(filters: &[String]) -> Vec<Case> {
    cases().into_iter().filter(|c| filters.is_empty() || filters.iter().any(|f| c.matches(f))).collect()
}
