//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use entdist::config::SweepConfig;
use entdist::output::{write_csv, OutputRow};
use entdist_core::compare::{chain_check, ChainOutcome, ComparisonPoint};
use entdist_core::fock_oracle::{
    apply_loss, check_twinbeam_decomposition, kraus_completeness_residual, LossChannel, TruncatedBipartiteDensity,
};
use entdist_core::locc::{twinbeam_to_maxent, vidal_probability};
use entdist_core::states::{ebit_vector, TwinBeam};
use entdist_core::{ConversionQuery, SchmidtSpectrum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Verdict {
            ok,
            detail: detail.into(),
        }
    }
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Verdict,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        name: "lossy_ebit_mixture",
        budget: Duration::from_secs(1),
        run: lossy_ebit_mixture,
    },
    Criterion {
        name: "twin_beam_decomposition",
        budget: Duration::from_secs(30),
        run: twin_beam_decomposition,
    },
    Criterion {
        name: "kraus_completeness_and_energy",
        budget: Duration::from_secs(10),
        run: kraus_and_energy,
    },
    Criterion {
        name: "threshold_theorem",
        budget: Duration::from_secs(1),
        run: threshold_theorem,
    },
    Criterion {
        name: "closed_form_matches_general_locc",
        budget: Duration::from_secs(5),
        run: closed_form_vs_general,
    },
    Criterion {
        name: "inequality_chain",
        budget: Duration::from_secs(5),
        run: inequality_chain,
    },
    Criterion {
        name: "ebits_dominate_default_sweep",
        budget: Duration::from_secs(1),
        run: ebits_dominate,
    },
    Criterion {
        name: "derived_point_values",
        budget: Duration::from_secs(1),
        run: derived_point,
    },
    Criterion {
        name: "golden_sweep_csv",
        budget: Duration::MAX,
        run: golden_sweep,
    },
    Criterion {
        name: "oracle_check_trunc_30_exits_0",
        budget: Duration::MAX,
        run: oracle_check_exit,
    },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let mut v = (c.run)();
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            v.ok = false;
            v.detail = format!("{} [over time budget {:?}]", v.detail, c.budget);
        }
        if !v.ok {
            failures += 1;
        }
        let tag = if v.ok { "PASS" } else { "FAIL" };
        println!("{tag} {} ({:.3} s) {}", c.name, elapsed.as_secs_f64(), v.detail);
    }
    println!("acceptance: {} passed, {failures} failed", CRITERIA.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn lossy_ebit_mixture() -> Verdict {
    let psi = ebit_vector(4).unwrap();
    let rho = TruncatedBipartiteDensity::from_pure(&psi).unwrap();
    let mut worst: f64 = 0.0;
    for k in 1..=9 {
        let eta = 0.1 * k as f64;
        let ch = LossChannel::new(eta).unwrap();
        let out = apply_loss(&rho, &ch, &ch);
        let mut expected = psi.projector() * Complex64::new(eta, 0.0);
        expected[(0, 0)] += Complex64::new(1.0 - eta, 0.0);
        worst = worst.max((out.matrix() - expected).norm());
    }
    Verdict::new(
        worst <= 1e-10,
        format!("max frobenius residual {worst:.3e} (tol 1e-10)"),
    )
}

fn twin_beam_decomposition() -> Verdict {
    const DIM: usize = 30;
    let mut failed = Vec::new();
    let mut lines = Vec::new();
    for lambda in [0.2, 0.5, 0.75] {
        for eta in [0.25, 0.5, 0.75] {
            let tb = TwinBeam::new(lambda).unwrap();
            let ch = LossChannel::new(eta).unwrap();
            // q = (1 - lambda^2) / (1 - eta lambda^2).
            let q = (1.0 - lambda * lambda) / (1.0 - eta * lambda * lambda);
            match check_twinbeam_decomposition(tb, &ch, DIM) {
                Ok(d) => {
                    let ok = d.overlap >= 1.0 - 1e-10
                        && d.sigma_min_eig >= -1e-10
                        && (d.sigma_trace - (1.0 - q)).abs() <= 1e-8;
                    lines.push(format!(
                        "    lambda={lambda} eta={eta}: overlap={:.12} survivor_lambda={:.6} (expected {:.6}) \
                         q_measured={:.9} q={q:.9} sigma_trace={:.9} sigma_min_eig={:.3e}",
                        d.overlap, d.survivor_lambda, d.reference_lambda, d.q_measured, d.sigma_trace, d.sigma_min_eig
                    ));
                    if !ok {
                        failed.push(format!("({lambda},{eta})"));
                    }
                }
                Err(e) => {
                    lines.push(format!("    lambda={lambda} eta={eta}: {e}"));
                    failed.push(format!("({lambda},{eta})"));
                }
            }
        }
    }
    for l in &lines {
        println!("{l}");
    }
    if failed.is_empty() {
        Verdict::new(true, "all 9 points within tolerance")
    } else {
        Verdict::new(
            false,
            format!(
                "{} of 9 points fail: {} (loss on both arms leaves a survivor with gain eta*lambda, not sqrt(eta)*lambda)",
                failed.len(),
                failed.join(" ")
            ),
        )
    }
}

fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let rho = &g * g.adjoint();
    let rho = &rho / rho.trace();
    (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0)
}

fn kraus_and_energy() -> Verdict {
    let mut worst_completeness: f64 = 0.0;
    for eta in [0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
        let ch = LossChannel::new(eta).unwrap();
        for k in 0..=10 {
            worst_completeness = worst_completeness.max(kraus_completeness_residual(&ch, k, 2 * k + 1).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_energy: f64 = 0.0;
    for _ in 0..100 {
        let (da, db) = (rng.gen_range(2..6), rng.gen_range(2..6));
        let rho = TruncatedBipartiteDensity::new(da, db, random_density(&mut rng, da * db)).unwrap();
        let a = LossChannel::new(rng.gen_range(0.0..=1.0)).unwrap();
        let b = LossChannel::new(rng.gen_range(0.0..=1.0)).unwrap();
        let out = apply_loss(&rho, &a, &b);
        worst_energy = worst_energy
            .max((out.mean_photons_a() - a.eta() * rho.mean_photons_a()).abs())
            .max((out.mean_photons_b() - b.eta() * rho.mean_photons_b()).abs());
    }
    Verdict::new(
        worst_completeness <= 1e-12 && worst_energy <= 1e-10,
        format!("completeness residual {worst_completeness:.3e} (tol 1e-12), energy residual {worst_energy:.3e} (tol 1e-10)"),
    )
}

fn grid_x() -> Vec<f64> {
    (0..=7).map(|i| i as f64 * 0.05).collect()
}

fn grid_m() -> Vec<usize> {
    (1..=32).map(|k| 2 * k).collect()
}

fn threshold_theorem() -> Verdict {
    let mut mismatches = 0;
    let mut points = 0;
    for x in grid_x() {
        for m in grid_m() {
            let r = twinbeam_to_maxent(x, m).unwrap();
            points += 1;
            if Some(r.p_star) != r.p_prime {
                mismatches += 1;
            }
        }
    }
    let mut strict = 0;
    for i in 8..=19 {
        let x = i as f64 * 0.05;
        for m in grid_m() {
            let r = twinbeam_to_maxent(x, m).unwrap();
            if r.p_star < r.p_prime.unwrap() {
                strict += 1;
            }
        }
    }
    Verdict::new(
        mismatches == 0 && strict > 0,
        format!(
            "p*=p' exactly at {}/{points} points with x<=1/e; p*<p' at {strict} points with x>1/e",
            points - mismatches
        ),
    )
}

fn truncated_geometric(x: f64, terms: usize) -> SchmidtSpectrum {
    let raw: Vec<f64> = (0..terms).map(|n| (1.0 - x) * x.powi(n as i32)).collect();
    let total: f64 = raw.iter().sum();
    SchmidtSpectrum::explicit(raw.into_iter().map(|c| c / total).collect()).unwrap()
}

fn closed_form_vs_general() -> Verdict {
    let mut worst: f64 = 0.0;
    for x in grid_x() {
        let source = truncated_geometric(x, 200);
        for m in grid_m() {
            let general = vidal_probability(&ConversionQuery {
                source: source.clone(),
                target: SchmidtSpectrum::uniform(m).unwrap(),
            })
            .unwrap();
            let closed = twinbeam_to_maxent(x, m).unwrap();
            worst = worst.max((general.p_star - closed.p_star).abs());
        }
    }
    Verdict::new(
        worst <= 1e-10,
        format!("max |p*_general - p*_closed| {worst:.3e} (tol 1e-10)"),
    )
}

fn inequality_chain() -> Verdict {
    let axis: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
    let mut points = 0;
    let mut bad = Vec::new();
    for &eta in &axis {
        for &lambda in &axis {
            for n in 1..=8 {
                let p = ComparisonPoint::evaluate(eta, lambda, n).unwrap();
                points += 1;
                if chain_check(&p) != ChainOutcome::Holds {
                    bad.push(format!("({eta},{lambda},{n})"));
                }
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "chain holds at {}/{points} points{}",
            points - bad.len(),
            first_few(&bad)
        ),
    )
}

fn first_few(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!(
            "; failing: {}",
            bad.iter().take(5).cloned().collect::<Vec<_>>().join(" ")
        )
    }
}

fn ebits_dominate() -> Verdict {
    let grid = SweepConfig::builtin().into_grid().unwrap();
    let points = grid.evaluate().unwrap();
    let mut bad = Vec::new();
    for p in &points {
        if p.p_b.partial_cmp(&p.p_c) != Some(std::cmp::Ordering::Greater) {
            bad.push(format!("p_b<=p_C at ({},{},{})", p.eta, p.lambda, p.n));
        }
    }
    // Rows come ordered by (eta, lambda, N), so each line is a contiguous run.
    for pair in points.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.eta == b.eta
            && a.lambda == b.lambda
            && b.ln_advantage().partial_cmp(&a.ln_advantage()) != Some(std::cmp::Ordering::Greater)
        {
            bad.push(format!("not increasing at ({},{},{})", b.eta, b.lambda, b.n));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!("{} rows checked{}", points.len(), first_few(&bad)),
    )
}

fn derived_point() -> Verdict {
    // eta = 1/2, lambda = 1/2, N = 1, M = 2:
    //   p_b = eta^N = 1/2
    //   q = (1 - lambda^2) / (1 - eta lambda^2) = (3/4) / (7/8) = 6/7
    //   x = eta lambda^2 = 1/8
    //   p* = min over i in {0, 1} of M x^i / (M - i) = min(1, 2 (1/8) / 1) = 1/4
    //   p_C = q p* = 6/28 = 3/14
    //   ln r = (1 - 2^N) ln x + N ln(eta / 2) = ln 8 + ln(1/4) = ln 2, so r = 2
    let p = ComparisonPoint::evaluate(0.5, 0.5, 1).unwrap();
    let r = p.ratio.map(|r| r.r).unwrap_or(f64::INFINITY);
    let checks = [
        ("p_b", p.p_b, 0.5),
        ("q", p.q, 6.0 / 7.0),
        ("p_star", p.p_star, 0.25),
        ("p_C", p.p_c, 3.0 / 14.0),
        ("r", r, 2.0),
    ];
    let worst = checks
        .iter()
        .map(|(_, got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    let detail = checks
        .iter()
        .map(|(name, got, _)| format!("{name}={got:.15}"))
        .collect::<Vec<_>>()
        .join(" ");
    Verdict::new(
        worst <= 1e-12,
        format!("{detail}; max deviation {worst:.3e} (tol 1e-12)"),
    )
}

fn golden_sweep() -> Verdict {
    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/default_sweep.csv");
    let golden = match fs::read(&golden_path) {
        Ok(g) => g,
        Err(e) => return Verdict::new(false, format!("cannot read golden file: {e}")),
    };
    let out = Command::new(env!("CARGO_BIN_EXE_entdist"))
        .arg("sweep")
        .output()
        .unwrap();
    let cli_matches = out.status.success() && out.stdout == golden;

    let grid = SweepConfig::builtin().into_grid().unwrap();
    let rows: Vec<OutputRow> = grid.evaluate().unwrap().iter().map(OutputRow::from).collect();
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let lib_matches = buf == golden;

    Verdict::new(
        cli_matches && lib_matches,
        format!(
            "{} bytes; cli match {cli_matches}, library match {lib_matches}",
            golden.len()
        ),
    )
}

fn oracle_check_exit() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_entdist"))
        .args(["oracle-check", "--trunc", "30"])
        .output()
        .unwrap();
    let code = out.status.code();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let failing: Vec<&str> = stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    for l in &failing {
        println!("    {l}");
    }
    Verdict::new(
        code == Some(0),
        format!("exit code {code:?}, {} failing checks", failing.len()),
    )
}
