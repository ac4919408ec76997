//! Command-line surface: the full sign pipeline plus the individual tools.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 precondition failure,
//! 3 missing data.

mod parse;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use orthoeps::ellcurve::{subgroup_closure, tate_algorithm, torsion_subgroup, velu_quotient};
use orthoeps::epsengine::{fibral_ratio_bounded, global_sign, CurveJob};
use orthoeps::error::Error;
use orthoeps::exactmath::gauss::{gauss_sum, real_sign};
use orthoeps::fibermodel::{validate_fiber, FiberDescription};
use orthoeps::groupsrep::DEFAULT_GROUP_BOUND;
use orthoeps::tameness::kwon_check;
use rand::{Rng, SeedableRng};

#[derive(Parser)]
#[command(name = "orthoeps", version, about = "Sign of the global epsilon constant for tame torsion actions on elliptic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OutputMode {
    Text,
    Json,
}

#[derive(Args)]
struct CommonOut {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    output: OutputMode,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline: tameness, quotient, fibral ratios, global sign.
    Analyze {
        /// Curve as [a1,a2,a3,a4,a6].
        curve: String,
        /// Kernel generators, e.g. "(0,0)" or "[0,0]"; repeatable.
        #[arg(long = "kernel", required = true)]
        kernel: Vec<String>,
        /// Virtual representation as JSON, inline or @file.
        #[arg(long = "rep")]
        rep: String,
        /// Manual fiber descriptions (JSON file with a list), replacing
        /// pipeline fibers at their primes.
        #[arg(long = "fibers")]
        fibers: Option<std::path::PathBuf>,
        /// Archimedean sign override (+1 or -1).
        #[arg(long = "eps-infinity", allow_hyphen_values = true)]
        eps_infinity: Option<String>,
        /// Bound for exhaustive subgroup enumeration.
        #[arg(long = "max-group", default_value_t = DEFAULT_GROUP_BOUND)]
        max_group: u64,
        /// Re-run the pipeline on stacked copies of the representation and
        /// check multiplicativity of the sign; 0 disables.
        #[arg(long = "self-check", default_value_t = 0)]
        self_check: u32,
        /// Seed for the self-check sampling.
        #[arg(long = "seed", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Kodaira type and local minimal model at a prime.
    Tate {
        curve: String,
        p: u64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Quotient curve by the subgroup generated by the given points.
    Velu {
        curve: String,
        points: Vec<String>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// The full torsion subgroup with its invariant factors.
    Torsion {
        curve: String,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Numerical tameness of the kernel generated by the given points.
    Tameness {
        curve: String,
        points: Vec<String>,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Normalized Gauss sum of a multiplicative character of F_p.
    Gauss {
        p: u64,
        /// "quadratic", "cubic", "trivial", or "order" / "order:exponent".
        character: String,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Validate a fiber description and evaluate its fibral ratio.
    FiberEval {
        /// Fiber description JSON file.
        #[arg(long = "fibers")]
        fibers: std::path::PathBuf,
        /// Virtual representation as JSON, inline or @file.
        #[arg(long = "rep")]
        rep: String,
        #[arg(long = "max-group", default_value_t = DEFAULT_GROUP_BOUND)]
        max_group: u64,
        #[command(flatten)]
        out: CommonOut,
    },
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<Error>() {
        Some(Error::MissingLocalData(_))
        | Some(Error::MissingInput(_))
        | Some(Error::MissingCharacter) => 3,
        Some(_) => 2,
        None => 1, // parse and usage problems
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // keep clap's message but force usage errors onto exit code 1
            let _ = e.print();
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            std::process::exit(if benign { 0 } else { 1 });
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Analyze {
            curve,
            kernel,
            rep,
            fibers,
            eps_infinity,
            max_group,
            self_check,
            seed,
            out,
        } => {
            let w = parse::curve(&curve)?;
            let generators = kernel
                .iter()
                .map(|s| parse::point(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let rep = parse::rep(&rep)?;
            let mut job = CurveJob::new(w, generators, rep.clone());
            job.max_group = max_group;
            if let Some(path) = fibers {
                job.fiber_overrides = parse::fiber_overrides(&path)?;
            }
            if let Some(s) = eps_infinity {
                job.eps_infinity_override = Some(parse::sign(&s)?);
            }
            let report = global_sign(&job).map_err(anyhow::Error::new)?;
            match out.output {
                OutputMode::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                OutputMode::Text => print_report_text(&report),
            }
            if self_check > 0 {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..self_check {
                    let m = rng.gen_range(2..=4);
                    let mut stacked = job.clone();
                    stacked.rep = rep.scaled(m);
                    let sr = global_sign(&stacked).map_err(anyhow::Error::new)?;
                    let expect = report.w.pow(m as u32);
                    anyhow::ensure!(
                        sr.w == expect,
                        "self-check failed: W({m}V) = {} but W(V)^{m} = {expect}",
                        sr.w
                    );
                }
                println!("self-check: multiplicativity holds on {self_check} stacked samples");
            }
            Ok(())
        }
        Command::Tate { curve, p, out } => {
            let w = parse::curve(&curve)?;
            let data = tate_algorithm(&w, p).map_err(anyhow::Error::new)?;
            match out.output {
                OutputMode::Json => println!("{}", serde_json::to_string_pretty(&data)?),
                OutputMode::Text => {
                    let split = match data.split {
                        Some(true) => " split",
                        Some(false) => " nonsplit",
                        None => "",
                    };
                    println!(
                        "{}{split}, v(disc)={}, components={}, minimal={}",
                        data.kodaira, data.vdisc, data.ncomponents, data.minimal_model
                    );
                }
            }
            Ok(())
        }
        Command::Velu { curve, points, out } => {
            let w = parse::curve(&curve)?;
            let gens = points
                .iter()
                .map(|s| parse::point(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let kernel = subgroup_closure(&w, &gens, 256).map_err(anyhow::Error::new)?;
            let q = velu_quotient(&w, &kernel).map_err(anyhow::Error::new)?;
            match out.output {
                OutputMode::Json => println!("{}", serde_json::to_string(&q)?),
                OutputMode::Text => println!("{q}"),
            }
            Ok(())
        }
        Command::Torsion { curve, out } => {
            let w = parse::curve(&curve)?;
            let t = torsion_subgroup(&w).map_err(anyhow::Error::new)?;
            match out.output {
                OutputMode::Json => println!("{}", serde_json::to_string_pretty(&t)?),
                OutputMode::Text => {
                    let pts: Vec<String> = t.points.iter().map(|p| p.to_string()).collect();
                    println!("order {}: {}", t.order(), pts.join(", "));
                    println!(
                        "structure: {}",
                        t.structure
                            .iter()
                            .map(|n| format!("Z/{n}"))
                            .collect::<Vec<_>>()
                            .join(" x ")
                    );
                }
            }
            Ok(())
        }
        Command::Tameness { curve, points, out } => {
            let w = parse::curve(&curve)?;
            let gens = points
                .iter()
                .map(|s| parse::point(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let kernel = subgroup_closure(&w, &gens, 256).map_err(anyhow::Error::new)?;
            let report = kwon_check(&w, &kernel).map_err(anyhow::Error::new)?;
            match out.output {
                OutputMode::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                OutputMode::Text => {
                    println!(
                        "kernel order {} ({}), overall: {}",
                        report.group_order,
                        report
                            .structure
                            .iter()
                            .map(|n| format!("Z/{n}"))
                            .collect::<Vec<_>>()
                            .join(" x "),
                        if report.overall { "tame" } else { "NOT tame" }
                    );
                    for v in &report.per_prime {
                        println!(
                            "  p={}: reduction {} ({}), sylow order {} distinct-smooth: {}",
                            v.p,
                            v.kodaira,
                            if v.condition_reduction { "ok" } else { "fails" },
                            v.sylow_order,
                            if v.condition_sylow_smooth { "ok" } else { "fails" }
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Gauss { p, character, out } => {
            let chi = parse::character(p, &character)?;
            if chi.is_trivial() {
                match out.output {
                    OutputMode::Json => println!("{{\"normalized\":\"1\",\"algebraic\":\"1\"}}"),
                    OutputMode::Text => println!("1 (normalized); 1 (algebraic, by convention)"),
                }
                return Ok(());
            }
            let tau = gauss_sum(&chi).map_err(anyhow::Error::new)?;
            let canonical = tau.canonicalize();
            // purely imaginary units print as +-i: value^2 = -1
            let imaginary_unit = {
                let sq = tau.mul(&tau).map_err(anyhow::Error::new)?;
                if sq.as_sign() == Some(-1) {
                    let (_, im) = canonical.algebraic.embed(1);
                    Some(if im > 0.0 { "i" } else { "-i" })
                } else {
                    None
                }
            };
            let normalized = match (real_sign(&tau), imaginary_unit) {
                (Ok(1), _) => "+1".to_string(),
                (Ok(_), _) => "-1".to_string(),
                (Err(_), Some(im)) => im.to_string(),
                (Err(_), None) if canonical.half_power == 0 => canonical.algebraic.to_string(),
                (Err(_), None) => format!(
                    "({}) * {}^({}/2)",
                    canonical.algebraic, canonical.base, canonical.half_power
                ),
            };
            let closed_form = if chi.order() == 2 {
                Some(if p % 4 == 1 {
                    format!("sqrt({p})")
                } else {
                    format!("i*sqrt({p})")
                })
            } else {
                None
            };
            match out.output {
                OutputMode::Json => {
                    let mut obj = serde_json::json!({
                        "p": p,
                        "order": chi.order(),
                        "exponent": chi.exponent(),
                        "normalized": normalized,
                        "algebraic": tau.algebraic.to_string(),
                        "cyclotomic_order": tau.algebraic.order(),
                    });
                    if let Some(cf) = closed_form {
                        obj["closed_form"] = serde_json::json!(cf);
                    }
                    println!("{}", serde_json::to_string_pretty(&obj)?);
                }
                OutputMode::Text => {
                    match closed_form {
                        Some(cf) => println!("{normalized} (normalized); {cf} (algebraic)"),
                        None => println!(
                            "{normalized} (normalized); {} (algebraic, order {})",
                            tau.algebraic,
                            tau.algebraic.order()
                        ),
                    };
                }
            }
            Ok(())
        }
        Command::FiberEval { fibers, rep, max_group, out } => {
            let text = std::fs::read_to_string(&fibers)
                .with_context(|| format!("reading {}", fibers.display()))?;
            let fd = FiberDescription::from_json(&text).map_err(anyhow::Error::new)?;
            let rep = parse::rep(&rep)?;
            let validation = validate_fiber(&fd);
            if !validation.valid {
                return Err(anyhow::Error::new(Error::InvalidFiber(
                    validation.problems.join("; "),
                )));
            }
            let factor =
                fibral_ratio_bounded(&fd, &rep, max_group).map_err(anyhow::Error::new)?;
            match out.output {
                OutputMode::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "validation": validation,
                            "factor": factor,
                        }))?
                    )
                }
                OutputMode::Text => {
                    println!("fiber at p={} valid; ratio = {:+}", fd.p, factor.sign);
                    for (label, value) in &factor.breakdown {
                        println!("  {label}: {value}");
                    }
                }
            }
            Ok(())
        }
    }
}

fn print_report_text(report: &orthoeps::epsengine::EpsilonReport) {
    println!(
        "curve {} (disc {}), quotient {} (disc {})",
        report.curve, report.disc_curve, report.quotient, report.disc_quotient
    );
    println!(
        "torsion structure: {}",
        report
            .torsion_structure
            .iter()
            .map(|n| format!("Z/{n}"))
            .collect::<Vec<_>>()
            .join(" x ")
    );
    println!(
        "representation: orthogonal={} dim0={} trivial-det={}; tame: {}",
        report.valid.orthogonal,
        report.valid.dimension_zero,
        report.valid.trivial_determinant,
        report.tame.overall
    );
    println!(
        "determinant trivial for all inertia subgroups: {}",
        report.det_trivial_shortcut
    );
    for place in &report.places {
        println!(
            "  p={}: curve {}, quotient {}, fibral ratio {:+} ({})",
            place.p, place.kodaira_x, place.kodaira_y, place.ratio, place.source
        );
    }
    println!("eps_infinity = {:+}", report.eps_infinity);
    println!("W = {:+}", report.w);
    for a in &report.assumptions {
        println!("assumption: {a}");
    }
}
