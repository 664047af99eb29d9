use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::json;

use gonality::constructions::{gonality_interval_components, gonality_interval_irreducible, Construction};
use gonality::oracle::{min_gonality_search, Budget};
use gonality::{dot, fixtures, samples, strata, AdmissibleCover, CurveGraph, Mode};

#[derive(Parser)]
#[command(name = "gonality", version, about = "Admissible covers of nodal curves: validation, gluing, strata and search")]
struct Cli {
    /// Worker threads for the oracle (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a cover; exits 0 iff it is valid.
    Validate {
        path: Option<PathBuf>,
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Allow non-simple branching and an unstable target.
        #[arg(long)]
        relaxed: bool,
    },
    /// Apply a construction descriptor, or a seeded random instance of one.
    Construct {
        descriptor: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "descriptor")]
        sample: Option<Sample>,
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for cover.json and report.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gonality interval for an irreducible curve or from component gonalities.
    Bounds {
        #[arg(long, requires = "ktilde")]
        irreducible: bool,
        #[arg(long)]
        ktilde: Option<u32>,
        /// Comma-separated component gonalities.
        #[arg(long, value_delimiter = ',', conflicts_with = "irreducible")]
        components: Vec<u32>,
        #[arg(long)]
        delta: u32,
    },
    /// Boundary stratum of a cover.
    Stratum {
        #[arg(long)]
        cover: PathBuf,
    },
    /// Smallest degree of a cover of a curve within the search budget.
    Search {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Limits as `R=<rational components>,T=<target components>`.
        #[arg(long, default_value = "R=4,T=4", value_parser = parse_budget)]
        budget: Budget,
    },
    /// Graphviz rendering of a curve or a cover.
    ExportDot {
        #[arg(long, conflicts_with = "cover", required_unless_present = "cover")]
        curve: Option<PathBuf>,
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild and validate the bundled worked examples.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=5))]
        id: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sample {
    Distinct,
    Equal,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("GONALITY_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<gonality::Error>() {
            return if matches!(err, gonality::Error::BudgetExceeded(_)) { 4 } else { 3 };
        }
        if cause.is::<serde_json::Error>() || cause.is::<std::io::Error>() {
            return 2;
        }
    }
    3
}

fn read<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_budget(s: &str) -> Result<Budget, String> {
    let mut b = Budget::default();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{part}`"))?;
        let n: u64 = value.trim().parse().map_err(|_| format!("`{value}` is not a number"))?;
        match key.trim() {
            "R" => b.rational = n as u32,
            "T" => b.target_vertices = n as u32,
            "W" => b.work = n,
            other => return Err(format!("unknown budget key `{other}` (use R, T or W)")),
        }
    }
    Ok(b)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Validate { path, cover, relaxed } => {
            let Some(path) = path.or(cover) else { bail!("give a cover file") };
            let cov: AdmissibleCover = read(&path)?;
            let report = cov.validate(if relaxed { Mode::Relaxed } else { Mode::Strict });
            println!("{}", report.to_string().trim_end());
            Ok(if report.valid { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Construct { descriptor, sample, genus, degree, seed, out } => {
            let construction = match (descriptor, sample) {
                (Some(path), _) => read::<Construction>(&path)?,
                (None, Some(kind)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let (first, second) = ("n1".to_string(), "n2".to_string());
                    match kind {
                        Sample::Distinct => Construction::GlueDistinct {
                            cover: samples::random_distinct_input(&mut rng, genus, degree, true),
                            first,
                            second,
                        },
                        Sample::Equal => {
                            if degree < 2 {
                                bail!(gonality::Error::Precondition("equal-image gluing needs degree >= 2".into()));
                            }
                            Construction::GlueEqual {
                                cover: samples::random_equal_input(&mut rng, genus, degree, true),
                                first,
                                second,
                            }
                        }
                    }
                }
                (None, None) => bail!("give a descriptor file or --sample"),
            };
            let report = construction.apply()?;
            let summary = json!({
                "degree": report.output.degree,
                "genus": report.output.genus_of_source()?,
                "branch_points": report.output.target.branch_legs().count(),
                "degree_delta": report.degree_delta,
                "genus_delta": report.genus_delta,
                "branch_delta": report.branch_delta,
                "added_source_vertices": report.added_source_vertices,
                "added_target_vertices": report.added_target_vertices,
                "valid": report.output.is_valid(Mode::Strict),
            });
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    write(&dir.join("cover.json"), &report.output.to_json())?;
                    write(&dir.join("report.json"), &serde_json::to_string_pretty(&summary)?)?;
                }
                None => println!("{}", report.output.to_json()),
            }
            eprintln!("{summary}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { irreducible, ktilde, components, delta } => {
            let (lo, hi) = if irreducible {
                gonality_interval_irreducible(ktilde.unwrap_or_default(), delta)?
            } else if !components.is_empty() {
                gonality_interval_components(&components, delta)?
            } else {
                bail!("give --irreducible --ktilde K or --components K1,K2,...");
            };
            println!("[{lo},{hi}]");
            Ok(ExitCode::SUCCESS)
        }
        Command::Stratum { cover } => {
            let cov: AdmissibleCover = read(&cover)?;
            println!("{}", serde_json::to_string(&strata::classify_stratum(&cov)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { curve, kmax, budget } => {
            let c: CurveGraph = read(&curve)?;
            let outcome = min_gonality_search(&c, kmax, &budget)?;
            let report = json!({ "kmax": kmax, "budget": budget, "outcome": outcome });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportDot { curve, cover, out } => {
            let text = match (curve, cover) {
                (Some(path), _) => dot::curve_to_dot(&read(&path)?),
                (None, Some(path)) => dot::cover_to_dot(&read(&path)?),
                (None, None) => unreachable!("clap requires one of --curve, --cover"),
            };
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Figures { id, out } => {
            let ids: Vec<u32> = id.map_or((1..=5).collect(), |i| vec![i]);
            let mut all_valid = true;
            for i in ids {
                let report = fixtures::figure(i)?;
                let cov = &report.output;
                let valid = cov.is_valid(Mode::Strict);
                all_valid &= valid;
                println!(
                    "figure {i}: degree {}, genus {}, branch points {}, source components {}, target components {}, {}",
                    cov.degree,
                    cov.genus_of_source()?,
                    cov.target.branch_legs().count(),
                    cov.source.vertices.len(),
                    cov.target.curve.vertices.len(),
                    if valid { "valid" } else { "INVALID" }
                );
                if let Some(dir) = &out {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    write(&dir.join(format!("figure{i}.json")), &cov.to_json())?;
                    write(&dir.join(format!("figure{i}.dot")), &dot::cover_to_dot(cov))?;
                }
            }
            Ok(if all_valid { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
    }
}
