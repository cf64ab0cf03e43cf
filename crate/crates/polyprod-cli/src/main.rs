use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyprod_core::engine::{self, SeparationReport};
use polyprod_core::exactlinalg::CoefficientRing;
use polyprod_core::kalgebra::ProductFlavor;
use polyprod_core::koszul_oracle::{self, OracleReport};
use polyprod_core::pairs::{disk_sphere, parse_pair_spec, PairData};
use polyprod_core::par::Parallelism;
use polyprod_core::simplicial::{random_complex, rp2, SimplicialComplex};
use polyprod_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "polyprod", version, about = "Cohomology of polyhedral products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Additive structure: graded groups with torsion.
    Groups(Job),
    /// Full cup-product ring.
    Ring(Job),
    /// Quotient-ring presentation for pairs with onto restriction.
    Sr(Job),
    /// Compare engine and Koszul-model rings for (D², S¹).
    OracleCheck(Job),
    /// Basis-free ring invariants.
    Fingerprint(Job),
    /// Search small complexes for two pairs whose rings differ only multiplicatively.
    Separate(Job),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Job {
    /// Complex JSON file, a named complex (hexagon, polygon:N, simplex:N,
    /// empty:N, rp2) or `random`.
    #[arg(long)]
    complex: Option<String>,
    /// Pair spec (`builtin:name:params` or a JSON file); one per vertex or one for all.
    #[arg(long = "pair")]
    pairs: Vec<String>,
    /// Z, Q or Fp:<p>.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Complex-side product; defaults to the most specific admissible one.
    #[arg(long)]
    flavor: Option<String>,
    /// Seed for `--complex random`.
    #[arg(long)]
    seed: Option<u64>,
    /// Vertex count for random complexes; upper bound for `separate`.
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Number of random complexes.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Primes for fingerprint ranks.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    primes: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run single-threaded.
    #[arg(long)]
    sequential: bool,
}

impl Job {
    fn par(&self) -> Parallelism {
        if self.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        }
    }

    fn coefficients(&self) -> Result<CoefficientRing> {
        self.ring.parse()
    }

    fn flavor(&self) -> Result<Option<ProductFlavor>> {
        self.flavor.as_deref().filter(|f| *f != "auto").map(str::parse).transpose()
    }

    fn complexes(&self) -> Result<Vec<SimplicialComplex>> {
        let name = self.complex.as_deref().ok_or_else(|| Error::Parse("--complex is required".into()))?;
        if name == "random" {
            let seed = self.seed.ok_or_else(|| Error::Parse("--complex random needs --seed".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            return Ok((0..self.trials).map(|_| random_complex(&mut rng, self.m)).collect());
        }
        Ok(vec![named_complex(name)?])
    }

    fn pair_data(&self) -> Result<Vec<PairData>> {
        self.pairs.iter().map(|s| load_pair(s)).collect()
    }
}

fn count(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("expected a vertex count, got '{s}'")))
}

fn named_complex(name: &str) -> Result<SimplicialComplex> {
    let (head, arg) = name.split_once(':').unwrap_or((name, ""));
    match head {
        "hexagon" => Ok(SimplicialComplex::polygon(6)),
        "polygon" => Ok(SimplicialComplex::polygon(count(arg)?)),
        "simplex" => Ok(SimplicialComplex::simplex(count(arg)?)),
        "empty" => Ok(SimplicialComplex::empty_face(count(arg)?)),
        "rp2" => Ok(rp2()),
        _ => {
            let text = fs::read_to_string(name).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
            SimplicialComplex::from_json(&text)
        }
    }
}

fn load_pair(spec: &str) -> Result<PairData> {
    if let Some(p) = parse_pair_spec(spec)? {
        return Ok(p);
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    PairData::from_json(&text)
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

#[derive(Serialize)]
struct OracleTrial {
    complex: String,
    report: OracleReport,
}

/// Returns the report text and whether the command succeeded.
fn run(command: &Command) -> Result<(String, bool)> {
    match command {
        Command::Groups(job) => {
            let (k, pairs) = (single(job)?, job.pair_data()?);
            let table = engine::groups(&k, &pairs, job.coefficients()?, job.par())?;
            Ok((
                match job.format {
                    Format::Json => json(&table),
                    Format::Csv => table.to_csv(),
                },
                true,
            ))
        }
        Command::Ring(job) => {
            let (k, pairs) = (single(job)?, job.pair_data()?);
            let r = engine::ring(&k, &pairs, job.flavor()?, job.coefficients()?, job.par())?;
            Ok((ring_output(job, &r.presentation), true))
        }
        Command::Sr(job) => {
            let (k, pairs) = (single(job)?, job.pair_data()?);
            let r = engine::stanley_reisner(&k, &pairs, job.coefficients()?)?;
            Ok((ring_output(job, &r), true))
        }
        Command::OracleCheck(job) => {
            let pairs = if job.pairs.is_empty() { vec![disk_sphere(2)?] } else { job.pair_data()? };
            let flavor = Some(job.flavor()?.unwrap_or(ProductFlavor::Universal));
            let mut trials = Vec::new();
            for k in job.complexes()? {
                let e = engine::ring(&k, &pairs, flavor, job.coefficients()?, job.par())?;
                let o = koszul_oracle::koszul_ring(&k, job.coefficients()?, job.par())?;
                trials.push(OracleTrial {
                    complex: k.to_json(),
                    report: koszul_oracle::check(&e.presentation, &o, &pairs),
                });
            }
            let ok = trials.iter().all(|t| t.report.agrees());
            Ok((json(&trials), ok))
        }
        Command::Fingerprint(job) => {
            let (k, pairs) = (single(job)?, job.pair_data()?);
            let fp = engine::fingerprint(&k, &pairs, job.flavor()?, &job.primes, job.par())?;
            Ok((json(&fp), true))
        }
        Command::Separate(job) => {
            let pairs = job.pair_data()?;
            let [first, second] = pairs.as_slice() else {
                return Err(Error::Parse("separate takes exactly two --pair specs".into()));
            };
            let report: SeparationReport = engine::separate(first, second, 1..=job.m, &job.primes, job.par())?;
            Ok((json(&report), true))
        }
    }
}

fn single(job: &Job) -> Result<SimplicialComplex> {
    let mut ks = job.complexes()?;
    if ks.len() != 1 {
        return Err(Error::Parse("this command takes a single complex".into()));
    }
    Ok(ks.remove(0))
}

fn ring_output(job: &Job, r: &polyprod_core::ring::RingPresentation) -> String {
    match job.format {
        Format::Json => r.to_json(),
        Format::Csv => r.betti_csv(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((text, ok)) => {
            let out = match &cli.command {
                Command::Groups(j)
                | Command::Ring(j)
                | Command::Sr(j)
                | Command::OracleCheck(j)
                | Command::Fingerprint(j)
                | Command::Separate(j) => j.out.clone(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => println!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: oracle mismatch");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                Error::Validation(_) => 3,
                Error::Consistency(_) => 4,
            })
        }
    }
}
