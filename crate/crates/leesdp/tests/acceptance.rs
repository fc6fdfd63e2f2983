//! Acceptance suite: one test per release criterion, each printing a
//! single PASS/FAIL line (run with `--nocapture` to see them on success).
//!
//! Criteria 6 and 7 need an external SDPA-compatible solver; they are
//! skipped (with a visible SKIP line) when none is configured.  Everything
//! else runs on every `cargo test`.

use leesdp::repsets::{irreducible_count, representative_data};
use leesdp::sdp::{build_program, BoundParams, Route, Variant};
use leesdp::symmetry::{ColumnClasses, OrbitTable};
use leesdp::verify::{check_block_coefficients, feasibility_transfer, reduction_soundness};
use leesdp::words::{alpha_circular_power, brute_force_optimum, Metric};
use std::time::Instant;

mod common;

fn report(criterion: &str, ok: bool, detail: &str) {
    println!("criterion {criterion}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn skip(criterion: &str, why: &str) {
    println!("criterion {criterion}: SKIP — {why}");
}

/// Criterion 1: the variable counts of the reduced programs across
/// `q ∈ {5, 7}`, `n ≤ 5`, `d ∈ {2, 3}`, inside five minutes.
///
/// The `(7, 1, 2)` cell is 4 here although published tabulations of these
/// counts list 3: the triple with circular gaps `(2, 2, 3)` is a fourth
/// feasible orbit at that parameter, so the suite pins the enumerated
/// value.
#[test]
fn criterion_1_variable_counts() {
    let t0 = Instant::now();
    let expected: &[(u32, u32, [usize; 5])] = &[
        (5, 2, [2, 9, 48, 214, 799]),
        (7, 2, [4, 43, 423, 3161, 19023]),
        (7, 3, [2, 12, 137, 1316, 9745]),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for q in [5u32, 7] {
        for n in 1..=5usize {
            let table = OrbitTable::build(q, n).unwrap();
            for &(eq, d, cells) in expected {
                if eq != q {
                    continue;
                }
                let got = table.feasible_up_to(d, Metric::LeeInf, 3).len();
                let want = cells[n - 1];
                if got != want {
                    ok = false;
                    detail.push_str(&format!("({q},{n},{d}): {got} ≠ {want}! "));
                }
            }
        }
    }
    let dt = t0.elapsed();
    ok &= dt.as_secs() < 300;
    detail.push_str(&format!("15 cells in {dt:.2?}"));
    report("1 (variable counts)", ok, &detail);
}

/// Criterion 2: the representative data spans the right spaces for every
/// alphabet size 2..=12 — the two parts cover `R^q`, the squared
/// dimensions add up to the number of column classes, and the number of
/// irreducible constituents is `⌊q/2⌋ + 1`.
#[test]
fn criterion_2_representative_dimensions() {
    let mut ok = true;
    let mut detail = String::new();
    for q in 2..=12u32 {
        let r = representative_data(q);
        let classes = ColumnClasses::new(q);
        let good = r.m1 + r.m2 == q as usize
            && r.m1 * r.m1 + r.m2 * r.m2 == classes.len()
            && irreducible_count(q) == (q / 2 + 1) as usize
            && r.b1.len() == r.m1
            && r.b2.len() == r.m2;
        if !good {
            ok = false;
            detail.push_str(&format!("q={q} inconsistent! "));
        }
    }
    detail.push_str("m1+m2=q and m1²+m2²=|Π| for q=2..12");
    report("2 (representative dimensions)", ok, &detail);
}

/// Criterion 3: every reduced block coefficient agrees exactly with the
/// explicit tensor expansion, and positive semidefiniteness transfers both
/// ways on sampled assignments, for `q ∈ {5, 6, 7}` and `n ∈ {1, 2, 3}`,
/// inside ten minutes.
#[test]
fn criterion_3_reduction_checks() {
    let t0 = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    let mut entries = 0usize;
    let mut trials = 0usize;
    for q in [5u32, 6, 7] {
        for n in [1usize, 2, 3] {
            match check_block_coefficients(q, n) {
                Ok(r) => {
                    entries += r.anchored_entries + r.unanchored_entries + r.cosine_entries
                }
                Err(e) => {
                    ok = false;
                    detail.push_str(&format!("coefficients q={q} n={n}: {e}! "));
                }
            }
            if (q as u64).pow(n as u32) <= 343 {
                match reduction_soundness(q, n, 50, 0x5eed + q as u64 * 10 + n as u64) {
                    Ok(r) => trials += r.trials,
                    Err(e) => {
                        ok = false;
                        detail.push_str(&format!("soundness q={q} n={n}: {e}! "));
                    }
                }
            }
        }
    }
    let dt = t0.elapsed();
    ok &= dt.as_secs() < 600;
    detail.push_str(&format!("{entries} entries exact, {trials} sound trials in {dt:.2?}"));
    report("3 (reduction checks)", ok, &detail);
}

/// Criterion 4: moment vectors of brute-force optima are accepted by every
/// block of the generated program in exact arithmetic, and the objective
/// recovers the code size.
#[test]
fn criterion_4_feasibility_transfer() {
    let cases: &[(u32, usize, u32, Metric)] = &[
        (5, 1, 2, Metric::LeeInf),
        (5, 2, 2, Metric::LeeInf),
        (5, 3, 2, Metric::LeeInf),
        (7, 1, 2, Metric::LeeInf),
        (7, 2, 2, Metric::LeeInf),
        (7, 3, 2, Metric::LeeInf),
        (5, 2, 4, Metric::Lee),
        (7, 2, 5, Metric::Lee),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for &(q, n, d, metric) in cases {
        match feasibility_transfer(q, n, d, metric) {
            Ok(r) => detail.push_str(&format!(
                "{}({q},{n},{d})={} ",
                metric.name(),
                r.optimum
            )),
            Err(e) => {
                ok = false;
                detail.push_str(&format!("({q},{n},{d},{}): {e}! ", metric.name()));
            }
        }
    }
    report("4 (feasibility transfer)", ok, &detail);
}

/// Criterion 5: exact brute-force optima for known circular-graph
/// independence numbers, each within a minute.
#[test]
fn criterion_5_oracle_values() {
    let cases: &[(u32, u32, usize, usize)] = &[
        // (d, q, n, expected alpha)
        (2, 5, 3, 10),
        (2, 7, 2, 10),
        (2, 7, 3, 33),
        (3, 7, 3, 8),
    ];
    let mut detail = String::new();
    let mut ok = true;
    for &(d, q, n, expect) in cases {
        let t0 = std::time::Instant::now();
        let (alpha, _) = alpha_circular_power(d, q, n, None).unwrap();
        let dt = t0.elapsed();
        detail.push_str(&format!("alpha(C({d},{q})^{n}) = {alpha} [{dt:.2?}] "));
        ok &= alpha == expect && dt.as_secs() < 60;
    }
    // the Lee-metric oracle is exercised at the same scale
    let (a, _) = leesdp::words::brute_force_optimum(5, 2, 3, Metric::Lee, None).unwrap();
    ok &= a == 5;
    detail.push_str(&format!("A^L_5(2,3) = {a}"));
    report("5 (oracle values)", ok, &detail);
}

fn params(
    q: u32,
    n: usize,
    d: u32,
    metric: Metric,
    variant: Variant,
    scale: bool,
) -> BoundParams {
    BoundParams { q, n, d, metric, variant, route: Route::Auto, scale }
}

/// Criterion 6: solver-certified bound values.  The pair bound for
/// `q = 5, d = 2` is `√5ⁿ`; two third-level values are pinned to published
/// precision; three Lee-metric programs floor to known bounds.
#[test]
fn criterion_6_solver_bounds() {
    if common::solver().is_none() {
        skip("6 (solver bounds)", "set LEESDP_SOLVER to enable");
        return;
    }
    let mut ok = true;
    let mut detail = String::new();

    for n in 1..=4usize {
        let p = build_program(&params(5, n, 2, Metric::LeeInf, Variant::B2, false)).unwrap();
        let want = 5f64.powf(n as f64 / 2.0);
        match common::solve(&p) {
            Ok(r) => {
                let good = (r.bound - want).abs() <= 0.005 * want.max(1.0);
                ok &= good;
                detail.push_str(&format!("B2(5,{n},2)={:.4}{} ", r.bound, tick(good)));
            }
            Err(e) => {
                ok = false;
                detail.push_str(&format!("B2(5,{n},2): {e}! "));
            }
        }
    }

    for (q, n, want) in [(7u32, 2usize, 10.260f64), (5, 3, 10.915)] {
        let p = build_program(&params(q, n, 2, Metric::LeeInf, Variant::B3, false)).unwrap();
        match common::solve(&p) {
            Ok(r) => {
                let good = (r.bound - want).abs() <= 0.005;
                ok &= good;
                detail.push_str(&format!("B3({q},{n},2)={:.4}{} ", r.bound, tick(good)));
            }
            Err(e) => {
                ok = false;
                detail.push_str(&format!("B3({q},{n},2): {e}! "));
            }
        }
    }

    for (q, n, d, want) in [(5u32, 4usize, 5u32, 10i128), (6, 3, 4, 14), (7, 4, 5, 49)] {
        let p = build_program(&params(q, n, d, Metric::Lee, Variant::B3, true)).unwrap();
        match common::solve(&p) {
            Ok(r) => {
                let good = r.floored == want;
                ok &= good;
                detail.push_str(&format!(
                    "B3^L({q},{n},{d})={:.3}→{}{} ",
                    r.bound,
                    r.floored,
                    tick(good)
                ));
            }
            Err(e) => {
                ok = false;
                detail.push_str(&format!("B3^L({q},{n},{d}): {e}! "));
            }
        }
    }

    report("6 (solver bounds)", ok, &detail);
}

fn tick(good: bool) -> &'static str {
    if good {
        ""
    } else {
        "✗"
    }
}

/// Criterion 7: the sandwich `α ≤ ⌊B₃⌋ ≤ B₂` between the exact optimum and
/// the two relaxation levels, on parameters small enough for all three.
#[test]
fn criterion_7_bound_sandwich() {
    if common::solver().is_none() {
        skip("7 (bound sandwich)", "set LEESDP_SOLVER to enable");
        return;
    }
    let cases: &[(u32, usize, u32, Metric)] = &[
        (5, 2, 2, Metric::LeeInf),
        (7, 2, 2, Metric::LeeInf),
        (5, 2, 4, Metric::Lee),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for &(q, n, d, metric) in cases {
        let (alpha, _) = brute_force_optimum(q, n, d, metric, None).unwrap();
        let b3 = common::solve(&build_program(&params(q, n, d, metric, Variant::B3, false)).unwrap());
        let b2 = common::solve(&build_program(&params(q, n, d, metric, Variant::B2, false)).unwrap());
        match (b3, b2) {
            (Ok(b3), Ok(b2)) => {
                let good = alpha as i128 <= b3.floored && b3.bound <= b2.bound + 1e-6;
                ok &= good;
                detail.push_str(&format!(
                    "({q},{n},{d},{}): {alpha} ≤ ⌊{:.3}⌋ ≤ {:.3}{} ",
                    metric.name(),
                    b3.bound,
                    b2.bound,
                    tick(good)
                ));
            }
            (b3, b2) => {
                ok = false;
                if let Err(e) = b3 {
                    detail.push_str(&format!("B3({q},{n},{d}): {e}! "));
                }
                if let Err(e) = b2 {
                    detail.push_str(&format!("B2({q},{n},{d}): {e}! "));
                }
            }
        }
    }
    report("7 (bound sandwich)", ok, &detail);
}
