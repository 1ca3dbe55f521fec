//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! `cargo test -p jackbessel-cli --test acceptance`

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use jackbessel::experiment::parse_grid;
use jackbessel::selftest::{self, default_ks, GramSetup, Measured};
use jackbessel::vk::{VKParams, VKParamsPlus};
use jackbessel::JackParam;

const SEED: u64 = 20_260_415;

struct Outcome {
    passed: bool,
    line: String,
}

fn all(parts: &[(&str, Measured)]) -> Outcome {
    let passed = parts.iter().all(|(_, m)| m.passed);
    let line = parts
        .iter()
        .map(|(name, m)| format!("{name}: worst {:.3e} (tol {:.1e}); {}", m.worst, m.tolerance, m.detail))
        .collect::<Vec<_>>()
        .join(" | ");
    Outcome { passed, line }
}

fn timed(passed: bool, took: Duration, budget: Duration, line: String) -> Outcome {
    let within = took <= budget;
    Outcome { passed: passed && within, line: format!("{line}; {:.1} s of {} s", took.as_secs_f64(), budget.as_secs()) }
}

fn ks_with_three() -> Vec<JackParam> {
    let mut ks = default_ks();
    ks.push(JackParam::from_ratio(3, 1).unwrap());
    ks
}

fn c1() -> Outcome {
    let start = Instant::now();
    let m = selftest::normalization(&ks_with_three(), 6, 8, 20, SEED);
    let o = all(&[("sum of C_κ against p_1^m", m)]);
    timed(o.passed, start.elapsed(), Duration::from_secs(30), o.line)
}

fn c2() -> Outcome {
    all(&[("Gram-Schmidt oracle", selftest::oracle_equivalence(&default_ks(), 6))])
}

fn c3() -> Outcome {
    all(&[("C_κ(1_r)/C_κ(1_n)", selftest::ones_ratio(&default_ks(), 8, 8))])
}

fn c4() -> Outcome {
    all(&[("g coefficients", selftest::g_identities(&default_ks(), 5, 6, SEED + 4))])
}

fn c5() -> Outcome {
    let ks = default_ks();
    all(&[
        ("Cauchy", selftest::cauchy_identity(&ks, 5, 2, 8, SEED + 5)),
        ("type A reduction", selftest::reduction_identity(&ks, 5, 6, SEED + 5)),
    ])
}

fn c6() -> Outcome {
    all(&[
        ("scalar J_B", selftest::scalar_reduction()),
        ("rank one J_A", selftest::rank_one_exponential(&default_ks(), 10, SEED + 6)),
    ])
}

fn c7() -> Outcome {
    let ks = default_ks();
    let setup = GramSetup::default();
    all(&[
        ("J_A", selftest::positive_definite(false, &ks, setup, SEED + 7)),
        ("J_B", selftest::positive_definite(true, &ks, setup, SEED + 7)),
        ("limits", selftest::positive_definite_limits(&ks, setup, SEED + 7)),
    ])
}

fn c8() -> Outcome {
    let start = Instant::now();
    let omega = VKParams::new(vec![0.5, 0.25], 1.0, 0.25).unwrap();
    let grid = parse_grid("grid:-2:2:5x2", SEED).unwrap();
    let m = selftest::convergence_a(&default_ks(), &omega, &[8, 16, 32, 64], &grid);
    let o = all(&[("sup_err(64)/sup_err(8)", m)]);
    timed(o.passed, start.elapsed(), Duration::from_secs(120), o.line)
}

fn c9() -> Outcome {
    let omega = VKParamsPlus::new(vec![0.5], 1.0).unwrap();
    let grid = parse_grid("grid:0:2:5x2:chamber", SEED).unwrap();
    let m = selftest::convergence_b(&[(1, "n"), (2, "n"), (4, "2n")], &omega, &[8, 16, 32, 64], &grid);
    all(&[("sup_err(64)/sup_err(8)", m)])
}

fn c10() -> Outcome {
    let m = selftest::gamma_hat(&selftest::sample_omegas(), &selftest::sample_omegas_plus(), &[8, 16, 32, 64]);
    all(&[("γ̂", m)])
}

fn c11() -> Outcome {
    let ks = default_ks();
    let omegas = selftest::sample_omegas();
    all(&[
        ("series Ψ̂", selftest::series_product(&ks, &omegas[..1], 10, SEED + 11)),
        ("log-derivative", selftest::log_derivative(&ks, 20, SEED + 11)),
        ("moments", selftest::moments(&ks, 6, 6, SEED + 11)),
    ])
}

fn c12() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_jackbessel")).args(["selftest", "--seed", "1"]).output();
    let took = start.elapsed();
    match out {
        Ok(out) => {
            let code = out.status.code();
            let line = format!("selftest exit {code:?}");
            timed(code == Some(0), took, Duration::from_secs(300), line)
        }
        Err(e) => Outcome { passed: false, line: format!("could not start the binary: {e}") },
    }
}

fn main() -> ExitCode {
    // the libtest flags cargo forwards are irrelevant here
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Jack normalization", c1),
        ("oracle equivalence", c2),
        ("ones ratio", c3),
        ("g identities", c4),
        ("Cauchy and reduction identities", c5),
        ("scalar reduction", c6),
        ("positive definiteness", c7),
        ("type A convergence trend", c8),
        ("type B convergence trend", c9),
        ("γ̂ diagnostics", c10),
        ("limit-object identities", c11),
        ("full selftest", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| Outcome { passed: false, line: "panicked".into() });
        if !o.passed {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.line);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
