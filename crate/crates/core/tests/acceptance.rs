//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qneg::builtin::builtin_qrep;
use qneg::negativity::{ceiling_negativity, sum_negativity_exhaustive, sum_negativity_stochastic, NegativityReport};
use qneg::operators::{random_pure_state, DensityMatrix, HermitianOperator, C64};
use qneg::qrep::{born_lhs_rhs, reconstruct, represent, validate_qrep, Povm, QRep};
use qneg::sic::ceiling_bounds;
use qneg::stationary::{local_max_certificate, max_stationary_sum_negativity, stationary_values, CLUSTER_TOL};
use qneg::sweep::{conjecture_sweep, SweepOptions};
use qneg::wh::{check_wh_fiducial_d3, wh_orbit, wh_qrep, WhSampleParams};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

struct Checks(Vec<String>);

impl Checks {
    fn new() -> Self {
        Self(Vec::new())
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let ok = (got - want).abs() <= tol;
        if !ok {
            self.0.push(format!("{what}: got {got:.15}, want {want:.15} (tol {tol:e})"));
        }
    }

    fn that(&mut self, what: &str, ok: bool) {
        if !ok {
            self.0.push(what.to_string());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        if self.0.is_empty() {
            Ok(summary)
        } else {
            Err(format!("{}; {}", self.0.join("; "), summary))
        }
    }
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn exhaustive(label: &str) -> (NegativityReport, Duration) {
    let q = builtin_qrep(label).unwrap();
    let t = Instant::now();
    let r = sum_negativity_exhaustive(&q, threads()).unwrap();
    (r, t.elapsed())
}

fn c1() -> Outcome {
    let want = (3f64.sqrt() - 1.0) / 4.0;
    let mut c = Checks::new();
    let mut slowest = Duration::ZERO;
    for label in ["d2-qplus", "d2-qminus"] {
        let (r, t) = exhaustive(label);
        slowest = slowest.max(t);
        c.close(&format!("{label} N^1"), r.value, want, 1e-10);
        c.close(&format!("{label} N^inf"), ceiling_negativity(&builtin_qrep(label).unwrap()).value, want, 1e-10);
        c.that(&format!("{label} exhaustive"), r.exhaustive && r.subsets_scanned == 15);
        c.that(&format!("{label} runtime {t:?}"), t < Duration::from_secs(1));
    }
    c.finish(format!("N^1 = N^inf = {want:.10}, 15 subsets, {slowest:.2?}"))
}

fn c2() -> Outcome {
    let mut c = Checks::new();
    let b = ceiling_bounds(3).unwrap();
    let mut slowest = Duration::ZERO;
    for (label, ceil) in [("d3-hesse-qplus", 1.0 / 3.0), ("d3-hesse-qminus", 1.0 / 9.0)] {
        let (r, t) = exhaustive(label);
        slowest = slowest.max(t);
        c.close(&format!("{label} N^1"), r.value, 1.0 / 3.0, 1e-10);
        c.that(&format!("{label} scanned {}", r.subsets_scanned), r.subsets_scanned == 511);
        c.that(&format!("{label} runtime {t:?}"), t < Duration::from_secs(1));
        let n_inf = ceiling_negativity(&builtin_qrep(label).unwrap()).value;
        c.close(&format!("{label} N^inf"), n_inf, ceil, 1e-10);
        let bound = if ceil > 0.2 { b.n_plus } else { b.n_minus };
        c.close(&format!("{label} N^inf vs bound"), n_inf, bound, 1e-10);
    }
    c.finish(format!("N^1(Q+-) = 1/3, N+ = 1/3, N- = 1/9, {slowest:.2?}"))
}

fn c3() -> Outcome {
    let mut c = Checks::new();
    let qmax = exhaustive("qmax").0.value;
    let qmin = exhaustive("qmin").0.value;
    c.close("Qmax", qmax, 2.0 / 9.0 * (7f64.sqrt() - 1.0), 1e-10);
    c.close("Qmin", qmin, (2.0 * (PI / 9.0).cos() - 1.0) / 3.0, 1e-10);
    c.that("Qmax differs from 1/3", (qmax - 1.0 / 3.0).abs() > 1e-3);
    c.that("Qmin differs from 1/3", (qmin - 1.0 / 3.0).abs() > 1e-3);
    c.finish(format!("Qmax {qmax:.12}, Qmin {qmin:.12}, both != 1/3"))
}

fn c4() -> Outcome {
    let mut c = Checks::new();
    let r7 = 7f64.sqrt();
    let best = max_stationary_sum_negativity(3).unwrap();
    c.close("max value", best.value(), 2.0 / 9.0 * (r7 - 1.0), 1e-12);
    c.that("argmax (2, 0)", (best.n, best.m) == (2, 0));
    let s = stationary_values(3, 2, 0).unwrap();
    c.close("a", s.a, (1.0 - r7) / 9.0, 1e-12);
    c.close("b", s.b, (7.0 + 2.0 * r7) / 63.0, 1e-12);
    let q = builtin_qrep("qmax").unwrap();
    let cert = local_max_certificate(&exhaustive("qmax").0, &q, CLUSTER_TOL).unwrap();
    c.that("Qmax certified", cert.certified);
    c.that("Qmax global-max witness", cert.global_max_witness);
    c.finish(format!("bound {:.12} at (n, m) = (2, 0); Qmax {}", best.value(), cert.verdict()))
}

/// Quartic whose root is the smallest partial-sum eigenvalue of d = 4 `Q-`.
fn d4_quartic(x: f64) -> f64 {
    let s5 = 5f64.sqrt();
    -1293.0 / 32.0 + 293.0 * s5 / 32.0 - (5.0 * (22.0 + 29.0 * s5)).sqrt()
        + (129.0 / 8.0 - 35.0 * s5 / 8.0 + (2.0 * (31.0 + 17.0 * s5)).sqrt()) * x
        + 21.0 / 2.0 * x * x
        - 7.0 * x.powi(3)
        + x.powi(4)
}

fn c5() -> Outcome {
    let mut c = Checks::new();
    let s5 = 5f64.sqrt();
    let surd = -(5.0 + s5 - 2.0 * (2.0 * (1.0 + s5)).sqrt() - 2.0 * (23.0 - 2.0 * s5 + 2.0 * (-22.0 + 10.0 * s5).sqrt()).sqrt()) / 16.0;
    c.close("surd vs 0.420967", surd, 0.420967, 1e-6);

    let (rp, tp) = exhaustive("d4-qplus");
    let (rm, tm) = exhaustive("d4-qminus");
    c.close("N^1(Q+)", rp.value, 0.5, 1e-8);
    c.close("N^1(Q-) vs 0.420967", rm.value, 0.420967, 1e-6);
    c.close("N^1(Q-) vs surd", rm.value, surd, 1e-8);
    for (r, t) in [(&rp, tp), (&rm, tm)] {
        c.that(&format!("{} scanned {}", r.label, r.subsets_scanned), r.subsets_scanned == 65535);
        c.that(&format!("{} runtime {t:?}", r.label), t < Duration::from_secs(10));
    }

    let qp = builtin_qrep("d4-qplus").unwrap();
    let cert = local_max_certificate(&rp, &qp, CLUSTER_TOL).unwrap();
    let centers: Vec<f64> = cert.clusters.iter().map(|k| k.center).collect();
    c.that(&format!("Q+ clusters {centers:?}"), centers.len() == 2);
    if centers.len() == 2 {
        c.close("Q+ negative cluster", centers[0], -0.125, 1e-8);
        c.close("Q+ positive cluster", centers[1], 0.125, 1e-8);
    }

    let qm = builtin_qrep("d4-qminus").unwrap();
    let lambda = qm.partial_sum(&rm.achieving_subset).eigenvalues()[0];
    let residual = d4_quartic(lambda).abs();
    c.that(&format!("|quartic(lambda)| = {residual:e}"), residual < 1e-6);
    c.finish(format!(
        "Q+ {:.12}, Q- {:.12}, lambda {lambda:.10}, |poly| {residual:.1e}, {:.2?}",
        rp.value,
        rm.value,
        tp + tm
    ))
}

fn c6() -> Outcome {
    let mut c = Checks::new();
    let (rp, tp) = exhaustive("d5-qplus");
    let (rm, tm) = exhaustive("d5-qminus");
    c.close("N^1(Q+)", rp.value, 0.584277, 1e-5);
    c.close("N^1(Q-)", rm.value, 0.501957, 1e-5);
    for r in [&rp, &rm] {
        c.that(&format!("{} scanned {}", r.label, r.subsets_scanned), r.subsets_scanned == (1 << 25) - 1);
    }
    let total = tp + tm;
    c.that(&format!("runtime {total:?}"), total <= Duration::from_secs(30 * 60));
    c.finish(format!(
        "Q+ {:.9}, Q- {:.9}, 2^25 - 1 subsets each, {total:.2?} on {} thread(s)",
        rp.value,
        rm.value,
        threads()
    ))
}

fn c7() -> Outcome {
    let mut c = Checks::new();
    let q = builtin_qrep("d8-hoggar-qminus").unwrap();
    let seeds = 100_000;
    let t = Instant::now();
    let r = sum_negativity_stochastic(&q, seeds, 0, 1e-12).unwrap();
    let elapsed = t.elapsed();
    c.that(&format!("value {:.15} >= 7/8 - 1e-6", r.value), r.value >= 7.0 / 8.0 - 1e-6);
    c.that("non-exhaustive", !r.exhaustive && r.seeds_used == seeds);
    let cert = local_max_certificate(&r, &q, CLUSTER_TOL).unwrap();
    let shape: Vec<(usize, f64)> = cert.clusters.iter().map(|k| (k.count, k.center)).collect();
    c.that(&format!("clusters {shape:?}"), shape.len() == 2);
    if shape.len() == 2 {
        c.that("28 negative entries", shape[0].0 == 28);
        c.that("36 positive entries", shape[1].0 == 36);
        c.close("negative value", shape[0].1, -1.0 / 32.0, 1e-6);
        c.close("positive value", shape[1].1, 5.0 / 96.0, 1e-6);
    }
    c.that("certificate fires", cert.certified);
    c.that(&format!("runtime {elapsed:?}"), elapsed <= Duration::from_secs(3600));
    c.finish(format!("best {:.15} over {seeds} seeds, 28 x -1/32 and 36 x 5/96, {}, {elapsed:.2?}", r.value, cert.verdict()))
}

fn small_qreps(d: usize) -> Vec<QRep> {
    let labels: &[&str] = match d {
        2 => &["d2-qplus", "d2-qminus"],
        3 => &["d3-hesse-qplus", "d3-hesse-qminus", "qmin", "qmax"],
        _ => &["d4-qplus", "d4-qminus"],
    };
    labels.iter().map(|l| builtin_qrep(l).unwrap()).collect()
}

fn random_wh(rng: &mut ChaCha8Rng) -> (WhSampleParams, HermitianOperator) {
    let (p, f) = WhSampleParams::sample_random(rng);
    (p, f.to_operator())
}

/// Random 3x3 Hermitian matrix with the given trace.
fn random_hermitian(rng: &mut ChaCha8Rng, trace: f64) -> HermitianOperator {
    let mut h = nalgebra::DMatrix::from_fn(3, 3, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    h = &h + h.adjoint();
    let shift = (trace - (h[(0, 0)] + h[(1, 1)] + h[(2, 2)]).re) / 3.0;
    for r in 0..3 {
        h[(r, r)] += C64::new(shift, 0.0);
    }
    HermitianOperator::new(h).unwrap()
}

fn c8() -> Outcome {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // (a) pure states sit on the sphere of radius sqrt(1/d)
    let mut worst_a: f64 = 0.0;
    for d in 2..=4 {
        let fixed = small_qreps(d);
        for i in 0..1000u64 {
            let q = if d == 3 && i % 2 == 1 {
                wh_qrep(&random_wh(&mut rng).1, "wh").unwrap()
            } else {
                fixed[rng.random_range(0..fixed.len())].clone()
            };
            let psi = random_pure_state(d, rng.random()).unwrap();
            let n = q.represent_pure(&psi).unwrap().l2_norm();
            worst_a = worst_a.max((n - (1.0 / d as f64).sqrt()).abs());
        }
    }
    c.that(&format!("(a) worst sphere deviation {worst_a:e}"), worst_a < 1e-9);

    // (b) reconstruction
    let mut worst_b: f64 = 0.0;
    for d in 2..=4 {
        let qs = small_qreps(d);
        for _ in 0..1000 {
            let q = &qs[rng.random_range(0..qs.len())];
            let rho = DensityMatrix::random(d, rng.random()).unwrap();
            let back = reconstruct(&represent(&rho, q).unwrap(), q).unwrap();
            worst_b = worst_b.max(back.max_abs_diff(rho.op()));
        }
    }
    c.that(&format!("(b) worst roundtrip {worst_b:e}"), worst_b < 1e-9);

    // (c) Born rule through the Q-rep
    let mut worst_c: f64 = 0.0;
    for d in 2..=4 {
        let qs = small_qreps(d);
        for _ in 0..1000 {
            let q = &qs[rng.random_range(0..qs.len())];
            let rho = DensityMatrix::random(d, rng.random()).unwrap();
            let g = Povm::random(d, rng.random_range(1..=2 * d), rng.random()).unwrap();
            let (lhs, rhs) = born_lhs_rhs(&rho, q, &g).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                worst_c = worst_c.max((a - b).abs());
            }
        }
    }
    c.that(&format!("(c) worst Born-rule gap {worst_c:e}"), worst_c < 1e-9);

    // (d) stochastic lower bound meets the exhaustive value
    let mut worst_d: f64 = 0.0;
    for d in 2..=4 {
        for q in small_qreps(d) {
            let e = sum_negativity_exhaustive(&q, 1).unwrap().value;
            let s = sum_negativity_stochastic(&q, 1000, 5, 1e-12).unwrap().value;
            c.that(&format!("(d) {} stochastic {s} > exhaustive {e}", q.label()), s <= e + 1e-12);
            worst_d = worst_d.max((e - s).abs());
        }
    }
    c.that(&format!("(d) worst stochastic gap {worst_d:e}"), worst_d <= 1e-9);

    // (e) ceiling negativity between the SIC bounds
    let b = ceiling_bounds(3).unwrap();
    let mut outside = 0;
    for _ in 0..1000 {
        let (_, m) = random_wh(&mut rng);
        let n = ceiling_negativity(&wh_qrep(&m, "wh").unwrap()).value;
        if n < b.n_minus - 1e-9 || n > b.n_plus + 1e-9 {
            outside += 1;
        }
    }
    c.that(&format!("(e) {outside} WH Q-reps outside [n-, n+]"), outside == 0);

    // (f) fiducial conditions agree with the Q-rep conditions
    let mut disagree = 0;
    let mut valid = 0;
    for i in 0..1000 {
        let m = match i % 3 {
            0 => random_wh(&mut rng).1,
            1 => {
                let base = random_wh(&mut rng).1;
                let scale = 10f64.powf(rng.random_range(-6.0..-1.0));
                let h = random_hermitian(&mut rng, 0.0);
                HermitianOperator::new(base.matrix() + h.matrix() * C64::new(scale, 0.0)).unwrap()
            }
            _ => random_hermitian(&mut rng, 1.0),
        };
        let by_conditions = check_wh_fiducial_d3(&m).unwrap().passed();
        let by_qrep = validate_qrep(&wh_orbit(&m, 3).unwrap()).unwrap().passed();
        valid += usize::from(by_qrep);
        if by_conditions != by_qrep {
            disagree += 1;
        }
    }
    c.that(&format!("(f) {disagree} of 1000 candidates disagree"), disagree == 0);

    // (g) thread count does not change the exhaustive report
    let mut differ = Vec::new();
    for label in ["d4-qplus", "d4-qminus", "qmin"] {
        let q = builtin_qrep(label).unwrap();
        let runs: Vec<NegativityReport> = [1, 4, 8].iter().map(|&t| sum_negativity_exhaustive(&q, t).unwrap()).collect();
        let key = |r: &NegativityReport| {
            (
                r.value.to_bits(),
                r.achieving_subset.clone(),
                r.eigensolves,
                r.achieving_state.amplitudes().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>(),
            )
        };
        if runs.iter().any(|r| key(r) != key(&runs[0])) {
            differ.push(label);
        }
    }
    c.that(&format!("(g) thread counts change {differ:?}"), differ.is_empty());

    c.finish(format!(
        "(a) {worst_a:.1e} (b) {worst_b:.1e} (c) {worst_c:.1e} (d) {worst_d:.1e} (e) 0 outside (f) agree, {valid} valid (g) identical for 1/4/8 threads"
    ))
}

fn c9() -> Outcome {
    let mut c = Checks::new();
    let t = Instant::now();
    let r = conjecture_sweep(&SweepOptions {
        samples: 10_000,
        threads: threads(),
        ..Default::default()
    })
    .unwrap();
    c.that(&format!("{} of 10000 samples below the bound", r.violations), r.violations == 0);
    c.that(
        &format!("refined minimum {:.12} is {:+.3e} from the bound", r.refined_min, r.refined_min - r.bound),
        r.refined_min >= r.bound - 1e-9,
    );
    c.that(
        &format!("refined minimum within 1e-6 of the bound and Q^min spectrum (gap {:.2e})", r.spectrum_gap),
        r.recovers_qmin_class(1e-6, 1e-3),
    );
    c.finish(format!(
        "bound {:.12}, sample min {:.12}, refined min {:.12}, {:.2?}",
        r.bound,
        r.sample_min,
        r.refined_min,
        t.elapsed()
    ))
}

fn main() {
    // libtest-style filtering: `cargo test --test acceptance -- 5 7`
    let wanted: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [Criterion; 9] = [
        (1, "d=2 SIC Q+-", c1),
        (2, "d=3 Hesse SIC", c2),
        (3, "d=3 Qmax/Qmin", c3),
        (4, "d=3 global bound", c4),
        (5, "d=4 SIC Q+-", c5),
        (6, "d=5 SIC Q+-", c6),
        (7, "d=8 Hoggar Q-", c7),
        (8, "property suites", c8),
        (9, "WH lower-bound sweep", c9),
    ];
    let mut failed = Vec::new();
    for (n, name, f) in criteria {
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        match f() {
            Ok(detail) => println!("criterion {n} PASS [{name}] {detail}"),
            Err(detail) => {
                println!("criterion {n} FAIL [{name}] {detail}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
