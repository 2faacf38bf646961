use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use grrlab::census::{self, CensusRecord, Experiment, RunConfig};
use grrlab::gfq::prime_power;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Json,
    Csv,
    Md,
}

/// Census experiments on cubic graphical regular representations of PSL(2,q).
#[derive(Debug, Parser)]
#[command(name = "grrlab", version)]
struct Args {
    /// Experiment to run
    #[arg(value_parser = parse_experiment)]
    experiment: Experiment,

    /// Field orders: a comma list (`5,7,8`) or a range (`5..31`) of prime powers
    #[arg(long = "q", value_parser = parse_qs)]
    qs: Option<QList>,

    /// Sample size for sampled experiments
    #[arg(long, default_value_t = 0)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Directory for cached group tables (GRRLAB_CACHE takes precedence)
    #[arg(long)]
    cache: Option<PathBuf>,

    /// Test generation by closure instead of the maximality certificate
    #[arg(long)]
    no_shortcut: bool,
}

#[derive(Clone, Debug)]
struct QList(Vec<u32>);

fn parse_experiment(s: &str) -> Result<Experiment, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
        format!("expected one of: {}", names.join(", "))
    })
}

fn parse_qs(s: &str) -> Result<QList, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let qs = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        (a..=b).filter(|&q| prime_power(q).is_some()).collect()
    } else {
        let qs = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        if let Some(bad) = qs.iter().find(|&&q| prime_power(q).is_none()) {
            return Err(format!("{bad} is not a prime power"));
        }
        qs
    };
    if qs.is_empty() {
        return Err("no prime powers selected".into());
    }
    Ok(QList(qs))
}

fn default_qs(exp: Experiment) -> Vec<u32> {
    match exp {
        Experiment::Q7Impossibility => vec![7],
        Experiment::FindGrr => vec![5, 8, 9, 11, 13, 16, 17, 19, 25, 27],
        Experiment::ValidZ => vec![11, 13, 16, 17, 19, 23, 25, 27, 29, 31],
        Experiment::GrrFraction => vec![31, 61, 127],
        Experiment::MixedSets => vec![5, 7, 8, 9, 11, 13],
        Experiment::Remark => vec![7, 8, 13],
        Experiment::Structure => vec![7, 8, 9, 11, 13],
        Experiment::Crosscheck => vec![5, 7, 8, 9, 13],
        Experiment::UnitaryWitness => vec![7, 11, 19, 23],
        Experiment::Positivity => (5..=4096).filter(|&q| prime_power(q).is_some()).collect(),
    }
}

fn write_report(records: &[CensusRecord], emit: Emit, w: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    match emit {
        Emit::Json => {
            for r in records {
                serde_json::to_writer(&mut *w, r)?;
                writeln!(w)?;
            }
        }
        Emit::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["experiment", "q", "p", "f", "d", "seed", "status", "details", "reproducer"])?;
            for r in records {
                csv.write_record(row(r))?;
            }
            csv.flush()?;
        }
        Emit::Md => {
            writeln!(w, "| experiment | q | p | f | d | seed | status | details | reproducer |")?;
            writeln!(w, "|---|---|---|---|---|---|---|---|---|")?;
            for r in records {
                let cells: Vec<String> = row(r).into_iter().map(|c| c.replace('|', "\\|")).collect();
                writeln!(w, "| {} |", cells.join(" | "))?;
            }
        }
    }
    Ok(())
}

fn row(r: &CensusRecord) -> [String; 9] {
    let status = serde_json::to_value(r.status).expect("status serializes");
    [
        r.experiment.name().to_string(),
        r.q.to_string(),
        r.p.to_string(),
        r.f.to_string(),
        r.d.to_string(),
        r.seed.to_string(),
        status.as_str().unwrap_or_default().to_string(),
        r.details.to_string(),
        r.reproducer.as_ref().map(|v| v.to_string()).unwrap_or_default(),
    ]
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build_global() {
        log::warn!("thread pool already configured: {e}");
    }
    let cache = std::env::var_os("GRRLAB_CACHE").map(PathBuf::from).or(args.cache);
    let cfg = RunConfig { samples: args.samples, seed: args.seed, shortcut: !args.no_shortcut, cache };
    let qs = args.qs.map(|l| l.0).unwrap_or_else(|| default_qs(args.experiment));

    let mut records = Vec::with_capacity(qs.len());
    for q in qs {
        let start = Instant::now();
        match census::run(args.experiment, q, &cfg) {
            Ok(r) => {
                log::info!("{} q={q}: {:?} in {:.2?}", args.experiment, r.status, start.elapsed());
                records.push(r);
            }
            Err(e) => {
                eprintln!("error: {} q={q}: {e}", args.experiment);
                return ExitCode::from(2);
            }
        }
    }

    let written = match &args.out {
        Some(path) => {
            File::create(path).map_err(Into::into).and_then(|mut f| write_report(&records, args.emit, &mut f))
        }
        None => write_report(&records, args.emit, &mut io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }
    if records.iter().all(CensusRecord::confirmed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
