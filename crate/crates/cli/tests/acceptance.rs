//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines are always printed; exits non-zero if any criterion fails.

use std::process::{Command, Output};

use jacobi_analogues::classical::jacobi;
use jacobi_analogues::hypergeom::f_a_value;
use jacobi_analogues::verify::{
    run_suite, sample_points, series_residual, CheckMode, SuiteConfig, ORACLE_POINTS,
};
use jacobi_analogues::weierstrass::{
    sig3_dn3_closed, sig4_c2_closed, sig4_d_closed, sig4_invariants,
};
use jacobi_analogues::{
    phi_oracle, AnalogueFn, AnalogueSet, HypergeomParams, ModulusParams, TruncatedSeries,
};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const IDENTITY_TOL: f64 = 1e-10;
const CLASSICAL_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-9;
const SERIES_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-9;
const ORDER: usize = 32;

/// Outcome of one criterion: whether it passed and a short measurement.
struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn bound(worst: f64, tol: f64) -> Self {
        Self {
            pass: worst < tol,
            detail: format!("max {worst:.3e} < {tol:.0e}"),
        }
    }
}

type Criterion = fn() -> Outcome;

fn set(a: BigRational, kappa: f64) -> AnalogueSet {
    AnalogueSet::build(&ModulusParams::new(a, kappa).unwrap(), ORDER).unwrap()
}

fn rat(n: u32) -> BigRational {
    BigRational::new(1.into(), n.into())
}

/// Random `(a, z)` with `a ∈ [0, 1]` and `|z| ≤ 1`; points with
/// `|sin^2 z| ≥ 0.9` are redrawn so the Gauss series converges briskly.
/// On the unit disk `|cos z| ≥ cos 1 > 0.5`.
fn hypergeometric_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0f64;
    let mut drawn = 0;
    while drawn < 100 {
        let a: f64 = rng.gen_range(0.0..=1.0);
        let z = Complex64::from_polar(
            rng.gen::<f64>().sqrt(),
            rng.gen_range(0.0..std::f64::consts::TAU),
        );
        let sin2 = z.sin() * z.sin();
        if sin2.norm() >= 0.9 {
            continue;
        }
        drawn += 1;
        let lhs = f_a_value(&HypergeomParams::new(a).unwrap(), sin2).unwrap();
        let rhs = (z * (2.0 * a)).cos() / z.cos();
        assert!(z.cos().norm() > 0.5);
        worst = worst.max((lhs - rhs).norm());
    }
    Outcome::bound(worst, IDENTITY_TOL)
}

fn classical_anchor() -> Outcome {
    let mut worst = 0f64;
    for kappa in [0.3, 0.8] {
        let s = set(BigRational::from_integer(0.into()), kappa);
        for i in -30..=30 {
            let u = f64::from(i) * 0.01;
            let j = jacobi(u, kappa);
            let z = Complex64::new(u, 0.0);
            for (f, want) in [
                (AnalogueFn::S, j.sn),
                (AnalogueFn::C, j.cn),
                (AnalogueFn::D, j.dn),
            ] {
                worst = worst.max((s.eval(f, z).unwrap() - want).norm());
            }
        }
    }
    Outcome::bound(worst, CLASSICAL_TOL)
}

fn identity_suite() -> Outcome {
    let report = run_suite(&SuiteConfig::default());
    let failed: Vec<_> = report
        .failures()
        .map(|c| format!("{}@{}", c.id, c.a_label()))
        .collect();
    let exact = report
        .checks
        .iter()
        .filter(|c| c.mode == CheckMode::ExactRational)
        .collect::<Vec<_>>();
    let exact_zero = exact.iter().all(|c| c.max_residual == 0.0);
    let required = [
        "s_n_identity",
        "odd_factorization",
        "q_prime_zero",
        "chebyshev_closed_forms",
        "polar_arithmetic",
        "sig3_discriminant",
        "sig4_cubic_root_exact",
        "phi_derivative",
        "d_ode",
        "even_composition",
        "even_partial_ode",
        "even_nabla_ode",
        "odd_composition",
        "odd_partial_ode",
        "odd_nabla_ode",
    ];
    let missing: Vec<_> = required
        .iter()
        .filter(|id| !report.checks.iter().any(|c| c.id == **id))
        .collect();
    Outcome {
        pass: failed.is_empty() && exact_zero && missing.is_empty(),
        detail: format!(
            "{} checks, {} exact, failed {:?}, missing {:?}",
            report.checks.len(),
            exact.len(),
            failed,
            missing
        ),
    }
}

fn signature4_closed_forms() -> Outcome {
    let mut worst = 0f64;
    let mut invariants_ok = true;
    for kappa in [0.3, 0.6, 0.8] {
        let inv = sig4_invariants(kappa).unwrap();
        let k2 = kappa * kappa;
        invariants_ok &= (inv.g2 - (4.0 / 3.0 - k2)).abs() < 1e-15
            && (inv.g3 - (8.0 / 27.0 - k2 / 3.0)).abs() < 1e-15;
        let s = set(rat(4), kappa);
        for u in sample_points(s.shared_radius()) {
            let d = s.eval(AnalogueFn::D, u).unwrap();
            let c = s.eval(AnalogueFn::C, u).unwrap();
            worst = worst.max((sig4_d_closed(kappa, u).unwrap() - d).norm());
            worst = worst.max((sig4_c2_closed(kappa, u).unwrap() - c * c).norm());
        }
    }
    let mut out = Outcome::bound(worst, CLOSED_FORM_TOL);
    out.pass &= invariants_ok;
    out
}

fn signature3_closed_form() -> Outcome {
    let (mut closed, mut linear) = (0f64, 0f64);
    for kappa in [0.3, 0.6, 0.8] {
        let s = set(rat(6), kappa);
        for u in sample_points(s.shared_radius()) {
            let delta = s.eval(AnalogueFn::Delta, u).unwrap();
            let nabla = s.eval(AnalogueFn::Nabla, u).unwrap();
            closed = closed.max((sig3_dn3_closed(kappa, u).unwrap() - delta).norm());
            linear = linear.max((delta - (4.0 * nabla - 3.0)).norm());
        }
    }
    Outcome {
        pass: closed < CLOSED_FORM_TOL && linear < SERIES_TOL,
        detail: format!(
            "closed form {closed:.3e} < {CLOSED_FORM_TOL:.0e}, linear {linear:.3e} < {SERIES_TOL:.0e}"
        ),
    }
}

fn signature4_delta_squared() -> Outcome {
    let mut worst = 0f64;
    for kappa in SuiteConfig::default().kappas {
        let s = set(rat(4), kappa);
        let two_nabla_minus_one = s
            .nabla()
            .scale_real(2.0)
            .add_constant(Complex64::new(-1.0, 0.0));
        let lhs: TruncatedSeries = two_nabla_minus_one.square().div(s.nabla()).unwrap();
        worst = worst.max(series_residual(&lhs, &s.delta().square()));
    }
    Outcome::bound(worst, SERIES_TOL)
}

fn oracle_consistency() -> Outcome {
    let config = SuiteConfig::default();
    let mut worst = 0f64;
    for a in &config.a_values {
        for &kappa in &config.kappas {
            let s = set(a.clone(), kappa);
            for u in ORACLE_POINTS {
                let series = s.eval(AnalogueFn::Phi, Complex64::new(u, 0.0)).unwrap();
                let oracle = phi_oracle(s.params(), u).unwrap();
                worst = worst.max((series - oracle).norm());
            }
        }
    }
    Outcome::bound(worst, ORACLE_TOL)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi-analogues"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn without_timestamp(json: &[u8]) -> Vec<u8> {
    let text = String::from_utf8(json.to_vec()).unwrap();
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .flat_map(|l| l.bytes().chain(std::iter::once(b'\n')))
        .collect()
}

fn determinism_and_interface() -> Outcome {
    let first = cli(&["verify", "--format", "json"]);
    let second = cli(&["verify", "--format", "json"]);
    let identical = first.status.code() == Some(0)
        && second.status.code() == Some(0)
        && without_timestamp(&first.stdout) == without_timestamp(&second.stdout);

    let forced = cli(&[
        "verify", "--a", "1/4", "--kappa", "0.6", "--tol", "0", "--format", "json",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&forced.stdout).unwrap();
    let failed_series = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["mode"] == "series-coefficientwise" && c["pass"] == false);
    let forced_ok = forced.status.code() == Some(1) && failed_series;

    let bad = cli(&["verify", "--a", "1/4", "--kappa", "1.5"]);
    let stderr = String::from_utf8_lossy(&bad.stderr);
    let bad_ok = bad.status.code() == Some(2)
        && stderr.contains("kappa must lie in (0,1)")
        && stderr.lines().count() == 1;

    Outcome {
        pass: identical && forced_ok && bad_ok,
        detail: format!(
            "identical runs {identical}, --tol 0 exits 1 {forced_ok}, bad kappa exits 2 {bad_ok}"
        ),
    }
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("hypergeometric identity", hypergeometric_identity),
        ("classical anchor at a = 0", classical_anchor),
        ("identity suite on the default grid", identity_suite),
        ("signature-4 closed forms", signature4_closed_forms),
        ("signature-3 closed form", signature3_closed_form),
        ("signature-4 delta squared", signature4_delta_squared),
        ("amplitude oracle consistency", oracle_consistency),
        ("determinism and exit codes", determinism_and_interface),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        all &= outcome.pass;
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {tag}: {name}: {}", i + 1, outcome.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
