//! `mukai` — exact calculator for the lattice side of spherical-twist
//! involutions on moduli of sheaves on polarized K3 surfaces.
//!
//! Every subcommand prints a report in `table`, `json` or `csv` form.
//! Exit codes: 0 success, 1 domain error (or failed verification),
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mukai_core::{
    apply_word, build_family_instance, check_slope_monotonicity, check_stability_intervals,
    classify_invariant, compile_word, derive_admissible_configs, enumerate_families,
    markman_instances, normalize_twist, pell_for_moduli, pell_minimal, picard_data,
    verify_reflection_identity, EquivalenceWord, Genus, MukaiInvolution, MukaiVector,
};

mod report;
mod word;

use report::{
    ActReport, FixedReport, Format, NormalizeReport, Outcome, PicardReport, Report, VerifyCheck,
    VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "mukai",
    version,
    about = "Exact Mukai-lattice calculator: equivalence actions, involution families, \
             Picard data and Diophantine verification for moduli of sheaves on K3 surfaces"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Write the report to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("not an integer: `{s}`"))
}

#[derive(Subcommand)]
enum Command {
    /// Apply a word of lattice isometries to a Mukai vector
    Act {
        /// Genus of the polarization (H² = 2g−2)
        #[arg(long)]
        g: i64,
        /// Semicolon-separated generators, applied left to right:
        /// dual, shift, tensor:d, reflect:r,c,s
        #[arg(long, value_parser = word::parse_word)]
        word: EquivalenceWord,
        /// Vector as r,c,s
        #[arg(long, value_parser = word::parse_vector)]
        v: MukaiVector,
    },
    /// Report the linear fixed-vector condition for an involution datum
    Fixed {
        #[arg(long)]
        g: i64,
        /// Spherical vector of the datum, (1,0,1) or (2,1,g/2)
        #[arg(long, value_parser = word::parse_vector)]
        s: MukaiVector,
        /// Twist degree of the datum, 0 or 1
        #[arg(long)]
        d: i64,
        #[arg(long, value_parser = word::parse_vector)]
        v: MukaiVector,
    },
    /// Build one family instance (--g0/--k) or enumerate a grid
    /// (--g0-max/--k-max)
    Family {
        #[arg(long)]
        g0: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        g0_max: Option<i64>,
        #[arg(long)]
        k_max: Option<i64>,
    },
    /// List the Markman instances (r, H, r) at a genus
    Markman {
        #[arg(long)]
        g: i64,
    },
    /// Picard basis, Gram matrix and discriminant for a family instance
    Picard {
        #[arg(long)]
        g0: i64,
        #[arg(long)]
        k: i64,
    },
    /// Possible invariant lattices of the involution on a family instance
    Classify {
        #[arg(long)]
        g0: i64,
        #[arg(long)]
        k: i64,
    },
    /// Run the verification sweeps: slope intervals, slope monotonicity,
    /// reflection identity, involutivity
    Verify {
        /// Sweep the slope intervals for all 0 ≤ k ≤ this bound
        #[arg(long, default_value_t = 100)]
        k_max: i64,
        /// Family grid bound on g0 for the reflection-identity sweep
        #[arg(long, default_value_t = 20)]
        grid_g0_max: i64,
        /// Family grid bound on k for the reflection-identity sweep
        #[arg(long, default_value_t = 4)]
        grid_k_max: i64,
        /// Random vectors per genus and datum for the involutivity sweep
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        /// Seed for the deterministic random sweep
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Genera for the involutivity sweep
        #[arg(long = "g", value_delimiter = ',', default_value = "2,6,10,14,22")]
        genera: Vec<i64>,
    },
    /// Minimal solution of z² − D·y² = 1, for --d or for D = (g−1)(n−1)
    Pell {
        #[arg(long, value_parser = parse_bigint)]
        d: Option<BigInt>,
        #[arg(long)]
        g: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
    },
    /// Conjugate a raw datum (s, d, v) so the twist degree lands in {0, 1}
    Normalize {
        #[arg(long)]
        g: i64,
        #[arg(long, value_parser = word::parse_vector)]
        s: MukaiVector,
        #[arg(long, value_parser = parse_bigint)]
        d: BigInt,
        #[arg(long, value_parser = word::parse_vector)]
        v: MukaiVector,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    validate_flag_combos(&cli.command);
    let Cli {
        format,
        output,
        command,
    } = cli;
    match run(command) {
        Ok(outcome) => {
            let text = outcome.report.render(format);
            if let Some(path) = output {
                if let Err(err) = std::fs::write(&path, &text) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

/// Flag combinations that clap groups express poorly; violations are usage
/// errors (exit 2).
fn validate_flag_combos(command: &Command) {
    let usage_error = |msg: &str| -> ! {
        Cli::command()
            .error(clap::error::ErrorKind::ArgumentConflict, msg)
            .exit()
    };
    match command {
        Command::Family {
            g0,
            k,
            g0_max,
            k_max,
        } => {
            let single = g0.is_some() || k.is_some();
            let sweep = g0_max.is_some() || k_max.is_some();
            if single && sweep {
                usage_error("give either --g0/--k or --g0-max/--k-max, not both");
            }
            if single && (g0.is_none() || k.is_none()) {
                usage_error("--g0 and --k go together");
            }
            if sweep && (g0_max.is_none() || k_max.is_none()) {
                usage_error("--g0-max and --k-max go together");
            }
            if !single && !sweep {
                usage_error("family needs --g0/--k or --g0-max/--k-max");
            }
        }
        Command::Pell { d, g, n } => {
            let from_moduli = g.is_some() || n.is_some();
            if d.is_some() && from_moduli {
                usage_error("give either --d or --g/--n, not both");
            }
            if from_moduli && (g.is_none() || n.is_none()) {
                usage_error("--g and --n go together");
            }
            if d.is_none() && !from_moduli {
                usage_error("pell needs --d or --g/--n");
            }
        }
        _ => {}
    }
}

fn genus(g: i64) -> Result<Genus, String> {
    Genus::new(g).map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Act { g, word, v } => {
            let g = genus(g)?;
            let result = apply_word(&word, &v, g).map_err(|e| e.to_string())?;
            let matrix = compile_word(&word, g).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(Report::Act(ActReport {
                g,
                word,
                v,
                result,
                matrix,
            })))
        }
        Command::Fixed { g, s, d, v } => {
            let g = genus(g)?;
            let phi = MukaiInvolution::new(s.clone(), d, g).map_err(|e| e.to_string())?;
            let outcome = phi.fixedness_report(&v);
            Ok(Outcome::ok(Report::Fixed(FixedReport {
                g,
                s,
                d,
                v,
                outcome,
            })))
        }
        Command::Family {
            g0,
            k,
            g0_max,
            k_max,
        } => {
            let list = match (g0, k) {
                (Some(g0), Some(k)) => {
                    vec![build_family_instance(g0, k).map_err(|e| e.to_string())?]
                }
                _ => enumerate_families(g0_max.unwrap_or(0), k_max.unwrap_or(0)),
            };
            Ok(Outcome::ok(Report::Family(list)))
        }
        Command::Markman { g } => {
            let g = genus(g)?;
            Ok(Outcome::ok(Report::Markman(markman_instances(g))))
        }
        Command::Picard { g0, k } => {
            let inst = build_family_instance(g0, k).map_err(|e| e.to_string())?;
            let data = picard_data(&inst).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(Report::Picard(PicardReport {
                g0,
                k,
                g: inst.g,
                v: inst.v,
                data,
            })))
        }
        Command::Classify { g0, k } => {
            let inst = build_family_instance(g0, k).map_err(|e| e.to_string())?;
            let result = classify_invariant(&inst).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(Report::Classify(result)))
        }
        Command::Verify {
            k_max,
            grid_g0_max,
            grid_k_max,
            samples,
            seed,
            genera,
        } => {
            let report = run_verify(k_max, grid_g0_max, grid_k_max, samples, seed, &genera)?;
            let exit_code = if report.passed { 0 } else { 1 };
            Ok(Outcome {
                report: Report::Verify(report),
                exit_code,
            })
        }
        Command::Pell { d, g, n } => {
            let solution = match d {
                Some(d) => pell_minimal(&d).map_err(|e| e.to_string())?,
                None => {
                    let g = genus(g.expect("validated"))?;
                    pell_for_moduli(g, n.expect("validated")).map_err(|e| e.to_string())?
                }
            };
            Ok(Outcome::ok(Report::Pell(solution)))
        }
        Command::Normalize { g, s, d, v } => {
            let g = genus(g)?;
            let normalized = normalize_twist(&s, &d, &v, g).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(Report::Normalize(NormalizeReport {
                g,
                normalized,
            })))
        }
    }
}

fn run_verify(
    k_max: i64,
    grid_g0_max: i64,
    grid_k_max: i64,
    samples: u32,
    seed: u64,
    genera: &[i64],
) -> Result<VerifyReport, String> {
    if k_max < 0 {
        return Err("--k-max must be nonnegative".into());
    }
    let mut checks = Vec::new();

    let mut ranges = 0usize;
    let mut violations = 0usize;
    for k in 0..=k_max {
        let rep = check_stability_intervals(k);
        ranges += rep.checked_ranges.len();
        violations += rep.violations.len();
    }
    checks.push(VerifyCheck {
        name: "slope-intervals",
        passed: violations == 0,
        details: format!("k <= {k_max}: {ranges} intervals swept, {violations} violations"),
    });

    let mono_bound = k_max.max(1);
    let mono = check_slope_monotonicity(mono_bound);
    checks.push(VerifyCheck {
        name: "slope-monotonicity",
        passed: mono,
        details: format!(
            "(k+1)/(2k+1) strictly decreasing and mu(F) < mu(E) for k <= {mono_bound}"
        ),
    });

    let grid = enumerate_families(grid_g0_max, grid_k_max);
    let mut failures = 0usize;
    for inst in &grid {
        let check = verify_reflection_identity(inst).map_err(|e| e.to_string())?;
        if !check.holds {
            failures += 1;
        }
    }
    checks.push(VerifyCheck {
        name: "reflection-identity",
        passed: failures == 0,
        details: format!(
            "{} instances (g0 <= {grid_g0_max}, k <= {grid_k_max}), {failures} failures",
            grid.len()
        ),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0usize;
    let mut broken = 0usize;
    for &gv in genera {
        let g = genus(gv)?;
        for phi in derive_admissible_configs(g) {
            for _ in 0..samples {
                let v = MukaiVector::new(
                    rng.gen_range(-1_000_000i64..=1_000_000),
                    rng.gen_range(-1_000_000i64..=1_000_000),
                    rng.gen_range(-1_000_000i64..=1_000_000),
                );
                tested += 1;
                if phi.apply(&phi.apply(&v)) != v {
                    broken += 1;
                }
            }
        }
    }
    checks.push(VerifyCheck {
        name: "involutivity",
        passed: broken == 0,
        details: format!(
            "{tested} random applications across genera {genera:?}, {broken} failures"
        ),
    });

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { passed, checks })
}
