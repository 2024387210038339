//! Command-line surface. All randomness flows from `--seed`; identical
//! invocations produce byte-identical output. Exit codes: 0 success,
//! 1 verification or runtime failure, 2 usage errors.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use baxter_core::coalescent::{baxter_from_walk, CoalescentProcess};
use baxter_core::permutation::{enumerate_baxter, PermutonHistogram};
use baxter_core::walk::{enumerate_walks, sample_uniform_excursion, DEFAULT_MAX_ATTEMPTS};
use baxter_core::{BipolarMap, Permutation, QuadrantWalk};

use baxter_lab::io::{
    histogram_to_csv, map_from_json, map_to_json, permutation_from_json, permutation_to_json,
    read_jsonl, walk_from_json, walk_to_json,
};
use baxter_lab::runner::estimate_pattern_parallel;
use baxter_lab::seeded_rng;

#[derive(Parser)]
#[command(
    name = "baxter-lab",
    about = "Baxter permutations, quadrant walks, bipolar orientations and coalescent-walk processes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FromKind {
    Walk,
    Map,
    Coalescent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ToKind {
    Walk,
    Map,
    Permutation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Walk,
    Baxter,
}

#[derive(Subcommand)]
enum Command {
    /// Sample uniform Baxter permutations through the rejection pipeline
    /// (walk -> coalescent-walk process -> permutation). Realized sizes are
    /// reported on stderr.
    SampleBaxter {
        /// Smallest accepted size.
        #[arg(long)]
        min: usize,
        /// Largest accepted size.
        #[arg(long)]
        max: usize,
        /// Number of permutations to sample.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Rejection attempts per sample before giving up.
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
        /// Output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert between families along the bijections (JSONL in, JSONL out).
    Convert {
        #[arg(long, value_enum)]
        from: FromKind,
        #[arg(long, value_enum)]
        to: ToKind,
        /// Input path (stdin when absent).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively verify that the two composite bijections agree on every
    /// walk up to the given size and that they reach every Baxter
    /// permutation; prints one count per size.
    VerifyDiagram {
        #[arg(long)]
        max_size: usize,
    },
    /// List a family exhaustively at a given size (JSONL).
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean permuton histogram of a permutation file (CSV, one row per
    /// x-cell).
    Permuton {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo estimate of a coalescent-Baxter-permuton pattern
    /// probability (JSONL record on stdout).
    EstimatePattern {
        /// Pattern size (must match --pattern).
        #[arg(long)]
        k: usize,
        /// The pattern in one-line notation, comma separated, e.g. "2,1".
        #[arg(long)]
        pattern: String,
        /// Target walk size (sampled within ten percent).
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean consecutive-pattern density over a permutation file (CSV:
    /// pattern, density, stderr).
    Density {
        #[arg(long)]
        pattern: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, AnyError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_input(input: &Option<PathBuf>) -> Result<Box<dyn BufRead>, AnyError> {
    Ok(match input {
        Some(path) => Box::new(BufReader::new(File::open(path)?)),
        None => Box::new(BufReader::new(io::stdin().lock())),
    })
}

fn parse_pattern(k: usize, text: &str) -> Result<Permutation, AnyError> {
    let values: Result<Vec<u32>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<u32>())
        .collect();
    let values = values.map_err(|_| format!("cannot parse pattern {text:?}"))?;
    let p = Permutation::from_one_line(values)?;
    if p.len() != k {
        return Err(format!("pattern size {} does not match --k {k}", p.len()).into());
    }
    Ok(p)
}

fn run(command: Command) -> Result<(), AnyError> {
    match command {
        Command::SampleBaxter {
            min,
            max,
            count,
            seed,
            max_attempts,
            out,
        } => {
            let mut writer = open_output(&out)?;
            for idx in 0..count {
                let mut rng = seeded_rng(seed, idx as u64);
                let walk = sample_uniform_excursion(min, max, max_attempts, &mut rng)?;
                let sigma = baxter_from_walk(&walk);
                eprintln!("sample {idx}: size {}", sigma.len());
                writeln!(writer, "{}", permutation_to_json(&sigma))?;
            }
            writer.flush()?;
            Ok(())
        }
        Command::Convert {
            from,
            to,
            input,
            out,
        } => {
            let reader = open_input(&input)?;
            let mut writer = open_output(&out)?;
            let mut lineno = 0usize;
            for line in reader.lines() {
                let line = line?;
                lineno += 1;
                let trimmed = line.trim();
                if trimmed.is_empty() {
                    continue;
                }
                let converted = convert_line(from, to, trimmed, lineno)?;
                writeln!(writer, "{converted}")?;
            }
            writer.flush()?;
            Ok(())
        }
        Command::VerifyDiagram { max_size } => {
            if max_size == 0 || max_size > 8 {
                return Err("--max-size must be between 1 and 8".into());
            }
            for n in 1..=max_size {
                let walks = enumerate_walks(n)?;
                let mut images = std::collections::BTreeSet::new();
                for w in &walks {
                    let via_map = BipolarMap::from_walk(w).to_baxter();
                    let via_process = CoalescentProcess::from_walk(w).to_permutation();
                    if via_map != via_process {
                        println!(
                            "size {n}: MISMATCH on walk {}",
                            walk_to_json(w)
                        );
                        return Err("diagram does not commute".into());
                    }
                    images.insert(via_process.values().to_vec());
                }
                let baxter = enumerate_baxter(n)?;
                if images.len() != walks.len()
                    || baxter.len() != walks.len()
                    || !baxter
                        .iter()
                        .all(|p| images.contains(p.values()))
                {
                    println!("size {n}: image does not match the Baxter class");
                    return Err("bijection check failed".into());
                }
                println!("size {n}: {} walks <-> {} Baxter permutations", walks.len(), baxter.len());
            }
            Ok(())
        }
        Command::Enumerate { family, size, out } => {
            let mut writer = open_output(&out)?;
            match family {
                Family::Walk => {
                    for w in enumerate_walks(size)? {
                        writeln!(writer, "{}", walk_to_json(&w))?;
                    }
                }
                Family::Baxter => {
                    for p in enumerate_baxter(size)? {
                        writeln!(writer, "{}", permutation_to_json(&p))?;
                    }
                }
            }
            writer.flush()?;
            Ok(())
        }
        Command::Permuton { input, grid, out } => {
            let reader = BufReader::new(File::open(&input)?);
            let perms = read_jsonl(reader, permutation_from_json)?;
            if perms.is_empty() {
                return Err("input contains no permutations".into());
            }
            let histograms: Vec<_> = perms
                .iter()
                .map(|p| p.permuton_histogram(grid))
                .collect::<Result<_, _>>()?;
            let mean = PermutonHistogram::mean_of(&histograms);
            let mut writer = open_output(&out)?;
            writer.write_all(histogram_to_csv(&mean).as_bytes())?;
            writer.flush()?;
            Ok(())
        }
        Command::EstimatePattern {
            k,
            pattern,
            n,
            samples,
            seed,
            max_attempts,
            out,
        } => {
            let pat = parse_pattern(k, &pattern)?;
            let est = estimate_pattern_parallel(&pat, n, samples, max_attempts, seed)?;
            #[derive(serde::Serialize)]
            struct EstimateWire {
                k: usize,
                pattern: Vec<u32>,
                n: usize,
                samples: u64,
                estimate: f64,
                stderr: f64,
                seed: u64,
            }
            let record = serde_json::to_string(&EstimateWire {
                k,
                pattern: est.pattern,
                n: est.n,
                samples: est.samples,
                estimate: est.estimate,
                stderr: est.stderr,
                seed,
            })?;
            let mut writer = open_output(&out)?;
            writeln!(writer, "{record}")?;
            writer.flush()?;
            Ok(())
        }
        Command::Density {
            pattern,
            input,
            out,
        } => {
            let values: Result<Vec<u32>, _> =
                pattern.split(',').map(|p| p.trim().parse::<u32>()).collect();
            let pat = Permutation::from_one_line(
                values.map_err(|_| format!("cannot parse pattern {pattern:?}"))?,
            )?;
            let reader = BufReader::new(File::open(&input)?);
            let perms = read_jsonl(reader, permutation_from_json)?;
            if perms.is_empty() {
                return Err("input contains no permutations".into());
            }
            let densities: Vec<f64> = perms
                .iter()
                .map(|p| baxter_core::locallim::consecutive_pattern_density(p, &pat))
                .collect::<Result<_, _>>()?;
            let mean = baxter_lab::stats::mean(&densities);
            let se = if densities.len() > 1 {
                baxter_lab::stats::stderr_of_mean(&densities)
            } else {
                0.0
            };
            let label: String = pat.values().iter().map(|v| v.to_string()).collect();
            let mut writer = open_output(&out)?;
            writeln!(writer, "pattern,density,stderr")?;
            writeln!(writer, "{label},{mean},{se}")?;
            writer.flush()?;
            Ok(())
        }
    }
}

fn convert_line(
    from: FromKind,
    to: ToKind,
    line: &str,
    lineno: usize,
) -> Result<String, AnyError> {
    // Coalescent-walk processes are serialized as their driving walk.
    let walk: QuadrantWalk = match from {
        FromKind::Walk | FromKind::Coalescent => walk_from_json(line, lineno)?,
        FromKind::Map => map_from_json(line, lineno)?.to_walk(),
    };
    Ok(match to {
        ToKind::Walk => walk_to_json(&walk),
        ToKind::Map => map_to_json(&BipolarMap::from_walk(&walk)),
        ToKind::Permutation => permutation_to_json(&baxter_from_walk(&walk)),
    })
}
