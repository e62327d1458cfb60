//! Acceptance suite: one PASS/FAIL line per criterion at its stated tolerance.

use std::time::Instant;

use bmfactor::dunkl::{dunkl_apply, dunkl_laplacian, mul_by_one_minus_x2, mul_by_x, sigma};
use bmfactor::factors::{
    build_pencil_f, factor_gegenbauer_dunkl, factor_hermite_dunkl, pencil_largest_positive_root,
};
use bmfactor::inequality::inequality;
use bmfactor::oracle::{rayleigh_factor, rayleigh_factor_capped, MomentForm};
use bmfactor::orthopoly::{connection_check, orthogonal_poly};
use bmfactor::poly::reflect;
use bmfactor::sweep::{self, Execution};
use bmfactor::table2::{table2, TABLE2_TOLERANCE};
use bmfactor::verify::{
    bracket_check, max_eigen_residual, run_grid, BracketStatus, VerifyConfig, DEFAULT_LAMBDAS, DEFAULT_MUS,
};
use bmfactor::{Family, OperatorSpec, Polynomial, Result, WeightSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_poly(rng: &mut impl Rng, degree: usize) -> Polynomial {
    Polynomial::new((0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn golden_table() -> Result<Outcome> {
    let start = Instant::now();
    let rows = table2(Execution::Parallel)?;
    let elapsed = start.elapsed().as_secs_f64();
    let failing: Vec<String> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            let nu = match (r.nu2, r.golden.nu2) {
                (Some(a), Some(b)) => format!("nu2 {a:.4} vs {b:.4}"),
                (None, Some(b)) => format!("nu2 none vs {b:.4}"),
                (Some(a), None) => format!("nu2 {a:.4} vs none"),
                (None, None) => "nu2 none".to_string(),
            };
            format!(
                "({}, {}): {nu}, M3 {:.4} vs {:.4}, M4 {:.4} vs {:.4}",
                r.lambda, r.mu, r.m3, r.golden.m3, r.m4, r.golden.m4
            )
        })
        .collect();
    let pass = failing.is_empty() && elapsed < 1.0;
    Ok(outcome(
        pass,
        format!(
            "{}/{} rows within {TABLE2_TOLERANCE:e} in {elapsed:.3}s{}{}",
            rows.len() - failing.len(),
            rows.len(),
            if failing.is_empty() { "" } else { "; mismatches: " },
            failing.join("; ")
        ),
    ))
}

fn f2_closed_form() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for l in [0.2, 0.5, 1.0, 2.0] {
        let root = pencil_largest_positive_root(&build_pencil_f(3, l)?)?.root.unwrap_or(0.0);
        let disc: f64 = 16.0 * l.powi(4) + 292.0 * l.powi(3) + 232.0 * l * l + 57.0 * l + 9.0;
        let formula = (8.0 * l * l + 20.0 * l + 12.0 + 2.0 * disc.sqrt()) / ((2.0 * l + 1.0) * (2.0 * l + 3.0));
        let e = rel(root, formula);
        worst = worst.max(e);
        parts.push(format!("lambda={l}: pencil {root:.9} formula {formula:.9}"));
    }
    Ok(outcome(worst <= 1e-9, format!("max rel err {worst:.3e}; {}", parts.join(", "))))
}

fn classical_reductions() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let h = WeightSpec::hermite(0.0)?;
    for n in (2..=12).step_by(2) {
        let target = (2.0 * n as f64).sqrt();
        worst = worst.max(rel(rayleigh_factor(n, &h, &OperatorSpec::classical(false))?.factor, target));
        worst = worst.max(rel(factor_hermite_dunkl(n, 0.0)?.factor, target));
    }
    for mu in [0.0, 0.5, 1.0, 3.0] {
        let g = WeightSpec::gegenbauer(0.0, mu)?;
        for n in 1..=12 {
            let nf = n as f64;
            let target = (nf * (nf + 2.0 * mu)).sqrt();
            worst = worst.max(rel(rayleigh_factor(n, &g, &OperatorSpec::classical(true))?.factor, target));
            worst = worst.max(rel(factor_gegenbauer_dunkl(n, 0.0, mu)?.factor, target));
        }
    }
    Ok(outcome(worst <= 1e-7, format!("max rel err {worst:.3e}")))
}

fn theorem_oracle_agreement() -> Result<Outcome> {
    let start = Instant::now();
    let records = run_grid(&VerifyConfig::default(), Execution::Parallel)?;
    let elapsed = start.elapsed().as_secs_f64();
    let worst = records.iter().max_by(|a, b| a.rel_err.total_cmp(&b.rel_err)).expect("non-empty grid");
    Ok(outcome(
        worst.rel_err <= 1e-7 && elapsed < 30.0,
        format!(
            "{} points, max rel err {:.3e} at {} lambda={} mu={} n={}, {elapsed:.2}s",
            records.len(),
            worst.rel_err,
            worst.kind,
            worst.lambda,
            worst.mu,
            worst.n
        ),
    ))
}

fn dunkl_branch_logic() -> Result<Outcome> {
    let (l, mu) = (4.5, 3.0);
    let n0 = 20usize;
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for n in (2..=24).step_by(2) {
        let r = factor_gegenbauer_dunkl(n, l, mu)?;
        let nf = n as f64;
        let closed = nf * (nf + 2.0 * l + 2.0 * mu);
        let (expected_sq, expected_deg) = if n < n0 { (closed + 2.0 * (n0 as f64 - nf), n - 1) } else { (closed, n) };
        ok &= rel(r.factor_sq, expected_sq) <= 1e-14 && r.extremal.degree() == Some(expected_deg);
        let w = WeightSpec::gegenbauer(l, mu)?;
        let oracle = rayleigh_factor_capped(n, &w, &OperatorSpec::dunkl(true), 24)?;
        worst = worst.max(rel(r.factor, oracle.factor));
    }
    Ok(outcome(
        ok && worst <= 1e-7,
        format!("branches as expected: {ok}; oracle max rel err {worst:.3e} for even n in 2..=24"),
    ))
}

fn bracket() -> Result<Outcome> {
    let mut bad = Vec::new();
    for l in DEFAULT_LAMBDAS {
        for n in (1..=11).step_by(2) {
            let b = bracket_check(n, l)?;
            if b.status != BracketStatus::Strict {
                bad.push(format!("n={n} lambda={l} ({:?}: M={:.12} lower={:.12})", b.status, b.value, b.lower));
            }
        }
    }
    let detail = if bad.is_empty() {
        "strict for all odd n <= 11".to_string()
    } else {
        format!("not strict at {}", bad.join(", "))
    };
    Ok(outcome(bad.is_empty(), detail))
}

fn eigen_residuals() -> Result<Outcome> {
    let mut lambdas = vec![0.0];
    lambdas.extend(DEFAULT_LAMBDAS);
    let residual = max_eigen_residual(&lambdas, &DEFAULT_MUS, 12);
    let mut connection: f64 = 0.0;
    for &l in &lambdas {
        for n in 0..=8 {
            connection = connection.max(connection_check(Family::Hermite, n, l, 0.0));
            for mu in DEFAULT_MUS {
                connection = connection.max(connection_check(Family::Gegenbauer, n, l, mu));
            }
        }
    }
    Ok(outcome(
        residual <= 1e-9 && connection <= 1e-10,
        format!("max scaled residual {residual:.3e}, max connection discrepancy {connection:.3e}"),
    ))
}

#[derive(Default)]
struct InequalityTally {
    reports: usize,
    min_gap: f64,
    worst_identity: f64,
    worst_equality: f64,
}

fn characterization_suite() -> Result<Outcome> {
    let mut lambdas = vec![0.0];
    lambdas.extend(DEFAULT_LAMBDAS);
    let mut points = Vec::new();
    for &l in &lambdas {
        for n in 1..=10 {
            points.push((WeightSpec::hermite(l)?, n));
            for mu in DEFAULT_MUS {
                points.push((WeightSpec::gegenbauer(l, mu)?, n));
            }
        }
    }
    let per_point = |&(w, n): &(WeightSpec, usize)| -> Result<InequalityTally> {
        let seed = (w.lambda * 1e3) as u64 ^ ((w.mu + 1.0) * 1e6) as u64 ^ ((n as u64) << 40);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = InequalityTally { min_gap: f64::INFINITY, ..Default::default() };
        for _ in 0..1000 {
            let deg = rng.gen_range(0..=n);
            let p = random_poly(&mut rng, deg);
            let r = inequality(&p, n, &w)?;
            t.reports += 1;
            t.min_gap = t.min_gap.min(r.gap / r.scale());
            t.worst_identity = t.worst_identity.max(rel(r.gap, r.residual_sq));
        }
        let r = inequality(&orthogonal_poly(&w, n), n, &w)?;
        t.worst_equality = r.gap.abs() / r.scale();
        Ok(t)
    };
    let tallies: Vec<InequalityTally> =
        sweep::map(Execution::Parallel, &points, per_point).into_iter().collect::<Result<_>>()?;
    let total = tallies.iter().map(|t| t.reports).sum::<usize>();
    let min_gap = tallies.iter().map(|t| t.min_gap).fold(f64::INFINITY, f64::min);
    let identity = tallies.iter().map(|t| t.worst_identity).fold(0.0, f64::max);
    let equality = tallies.iter().map(|t| t.worst_equality).fold(0.0, f64::max);
    Ok(outcome(
        min_gap >= -1e-8 && equality <= 1e-8 && identity <= 1e-8,
        format!(
            "{} points, {total} random polynomials; min gap/scale {min_gap:.3e}; \
             max |gap|/scale at orthogonal polynomial {equality:.3e}; max rel err gap vs residual norm {identity:.3e}",
            points.len()
        ),
    ))
}

/// `|lhs - rhs|` relative to Cauchy–Schwarz bounds of both sides; the left side alone
/// vanishes identically when `q` is constant.
fn bilinear_err(lhs: f64, rhs: f64, scale: f64) -> f64 {
    let size = scale.max(lhs.abs()).max(rhs.abs());
    if size == 0.0 {
        return 0.0;
    }
    (lhs - rhs).abs() / size
}

fn bilinear_identities() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = [0.0f64; 5];
    let names = ["(1-x^2)p'q' by parts", "Dunkl Gegenbauer", "Dunkl Hermite", "sigma/x", "even part/x"];
    for trial in 0..400 {
        let l = [0.0, 0.1, 0.5, 1.0, 2.0, 4.5][trial % 6];
        let mu = DEFAULT_MUS[(trial / 6) % 6];
        let dp = rng.gen_range(0..=8);
        let dq = rng.gen_range(0..=8);
        let p = random_poly(&mut rng, dp);
        let q = random_poly(&mut rng, dq);
        let g = WeightSpec::gegenbauer(l, mu)?;
        let h = WeightSpec::hermite(l)?;
        let ig = MomentForm::new(&g);
        let ih = MomentForm::new(&h);

        // ∫(1-x²)p'q' w = ∫[(2λ+2μ+1)x p' - (1-x²)p'' - (2λ/x)p'] q w
        let p1 = p.derivative();
        let lhs = ig.inner(&p1, &q.derivative(), true);
        let terms = [
            (2.0 * l + 2.0 * mu + 1.0) * ig.inner(&mul_by_x(&p1), &q, false),
            -ig.inner(&mul_by_one_minus_x2(&p1.derivative()), &q, false),
            -2.0 * l * ig.inner_over_x(&p1, &q, false),
        ];
        let rhs = terms.iter().sum();
        let scale = (ig.norm_sq(&p1, true) * ig.norm_sq(&q.derivative(), true)).sqrt()
            + terms.iter().map(|t| t.abs()).sum::<f64>();
        worst[0] = worst[0].max(bilinear_err(lhs, rhs, scale));

        // ∫(1-x²)D p D q w = ∫ q[(2μ+1)x D p - (1-x²)D²p] w
        let dpl = dunkl_apply(&p, l);
        let dql = dunkl_apply(&q, l);
        let lhs = ig.inner(&dpl, &dql, true);
        let inner = &mul_by_x(&dpl).scale(2.0 * mu + 1.0) - &mul_by_one_minus_x2(&dunkl_laplacian(&p, l));
        let rhs = ig.inner(&inner, &q, false);
        let scale = (ig.norm_sq(&dpl, true) * ig.norm_sq(&dql, true)).sqrt()
            + (ig.norm_sq(&inner, false) * ig.norm_sq(&q, false)).sqrt();
        worst[1] = worst[1].max(bilinear_err(lhs, rhs, scale));

        // ∫ D p D q w = ∫ q[2x D p - D²p] w
        let lhs = ih.inner(&dpl, &dql, false);
        let inner = &mul_by_x(&dpl).scale(2.0) - &dunkl_laplacian(&p, l);
        let rhs = ih.inner(&inner, &q, false);
        let scale = (ih.norm_sq(&dpl, false) * ih.norm_sq(&dql, false)).sqrt()
            + (ih.norm_sq(&inner, false) * ih.norm_sq(&q, false)).sqrt();
        worst[2] = worst[2].max(bilinear_err(lhs, rhs, scale));

        for ip in [&ig, &ih] {
            // 2∫ q σ(p)/x AW = ∫ σ(p)σ(q) AW
            let (sp, sq) = (sigma(&p), sigma(&q));
            let lhs = 2.0 * ip.inner_over_x(&q, &sp, true);
            let rhs = ip.inner(&sp, &sq, true);
            let scale = (ip.norm_sq(&sp, true) * ip.norm_sq(&sq, true)).sqrt();
            worst[3] = worst[3].max(bilinear_err(lhs, rhs, scale));

            // ∫ q (p(x)+p(-x))/x AW = ∫ p σ(q) AW
            let lhs = ip.inner_over_x(&q, &(&p + &reflect(&p)), true);
            let rhs = ip.inner(&p, &sq, true);
            let scale = (ip.norm_sq(&p, true) * ip.norm_sq(&sq, true)).sqrt();
            worst[4] = worst[4].max(bilinear_err(lhs, rhs, scale));
        }
    }
    let max = worst.iter().cloned().fold(0.0, f64::max);
    let detail = names.iter().zip(worst).map(|(n, w)| format!("{n} {w:.2e}")).collect::<Vec<_>>().join(", ");
    Ok(outcome(max <= 1e-9, format!("400 random pairs, max rel err: {detail}")))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("golden factor table", golden_table),
        ("closed-form F2 root", f2_closed_form),
        ("classical reductions", classical_reductions),
        ("theorem-oracle agreement", theorem_oracle_agreement),
        ("Dunkl branch logic", dunkl_branch_logic),
        ("odd-degree Hermite bracket", bracket),
        ("eigen-relation residuals", eigen_residuals),
        ("characterization inequality", characterization_suite),
        ("bilinear identities", bilinear_identities),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!("criterion {id} [{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
