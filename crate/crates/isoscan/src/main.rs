use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isoscan::curves::{split_label, CurveSpec, Source};
use isoscan::profile::{parse_coefficients, Profile};
use isoscan::records::{read_records, scan_to_file, ScanConfig, DEFAULT_BLOCK, DEFAULT_SEED};
use isoscan::render;
use isoscan::{CliError, Result};
use isoscan_core::elliptic::{reduce, RationalCurve};
use isoscan_core::scanner::{defect_table, estimate_c, CurvePair, Side};
use isoscan_core::theory::{cm_predict, predict, CoefficientVector};
use isoscan_core::torsion_isogeny::{build_volcano, kohel_height, two_isogeny_class};

/// Anomalous primes of rationally 2-isogenous elliptic curves.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    /// Allow fetching curves from the LMFDB when they are not cached.
    #[arg(long, global = true)]
    allow_network: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Pair {
    /// Label (400.g1) or coefficients [a1,a2,a3,a4,a6].
    #[arg(long)]
    e1: CurveSpecArg,
    #[arg(long)]
    e2: CurveSpecArg,
}

#[derive(Args)]
struct Model {
    #[arg(long)]
    profile1: PathBuf,
    #[arg(long)]
    profile2: PathBuf,
    /// c_4, c_8, c_16 for E, overriding the profile file.
    #[arg(long)]
    c: Option<String>,
    /// c'_4, c'_8, c'_16 for E'.
    #[arg(long)]
    cp: Option<String>,
}

#[derive(Clone)]
struct CurveSpecArg(CurveSpec);

impl std::str::FromStr for CurveSpecArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse().map(CurveSpecArg).map_err(|e: CliError| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the first N good primes and write JSON Lines records.
    Scan {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, default_value_t = DEFAULT_BLOCK)]
        block_size: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Defect histogram of a scan file.
    Report { file: PathBuf },
    /// Estimated coefficients c_{2^m} and c'_{2^m} with 99% intervals.
    EstimateC {
        file: PathBuf,
        /// Only this level (2..=5).
        #[arg(long)]
        m: Option<u32>,
        /// Treat levels with no A_m primes as c = 0 (-I known absent).
        #[arg(long)]
        no_minus_i: bool,
    },
    /// Exact predicted proportion of anomalous primes.
    Predict {
        #[command(flatten)]
        model: Model,
    },
    /// Observed against expected defect counts.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        model: Model,
    },
    /// The proportion for a CM pair (0 or 1/12) with the reason.
    CmClassify {
        #[arg(long, required_unless_present = "class")]
        e1: Option<CurveSpecArg>,
        #[arg(long, requires = "e1")]
        e2: Option<CurveSpecArg>,
        /// An isogeny class label such as 49.a; every 2-isogenous pair in it is classified.
        #[arg(long, conflicts_with_all = ["e1", "e2"])]
        class: Option<String>,
    },
    /// The 2-isogeny volcano of a reduction.
    Volcano {
        #[arg(long)]
        e: CurveSpecArg,
        #[arg(long)]
        p: u64,
        /// Work over F_{p^2}.
        #[arg(long)]
        squared: bool,
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Download a curve or class into the local cache.
    FetchLmfdb {
        #[arg(long)]
        label: String,
    },
}

fn curve_pair(src: &Source, pair: &Pair) -> Result<CurvePair> {
    let e = src.resolve(&pair.e1.0)?;
    let ep = src.resolve(&pair.e2.0)?;
    Ok(CurvePair::new(e, ep)?)
}

fn coefficients(model: &Model, p1: &Profile, p2: &Profile) -> Result<CoefficientVector> {
    let pick = |flag: &Option<String>, p: &Profile, which: &str| match flag {
        Some(s) => parse_coefficients(s),
        None => p.c.clone().ok_or_else(|| CliError::validation(format!("no coefficients for {which}: add \"c\" to its profile or pass --{which}"))),
    };
    Ok(CoefficientVector::new(pick(&model.c, p1, "c")?, pick(&model.cp, p2, "cp")?)?)
}

fn load_model(model: &Model) -> Result<(Profile, Profile, CoefficientVector)> {
    let p1 = Profile::load(&model.profile1)?;
    let p2 = Profile::load(&model.profile2)?;
    if p1.image.cm || p2.image.cm {
        return Err(CliError::validation("CM profiles: use cm-classify"));
    }
    let c = coefficients(model, &p1, &p2)?;
    Ok((p1, p2, c))
}

fn cm_line(e: &RationalCurve, ep: &RationalCurve) -> Result<String> {
    let r = cm_predict(e, ep)?;
    Ok(format!("{} / {}: {}  ({})", e.name(), ep.name(), r.value, r.reason))
}

fn run(cli: Cli) -> Result<()> {
    let src = Source::from_env(cli.allow_network);
    match cli.cmd {
        Command::Scan { pair, n, seed, threads, block_size, out } => {
            if n == 0 {
                return Err(CliError::validation("--n must be at least 1"));
            }
            let pair = curve_pair(&src, &pair)?;
            let cfg = ScanConfig { n, seed, threads, block_size };
            let o = scan_to_file(&pair, &cfg, &out)?;
            eprintln!("{}: {} records ({} resumed, {} new)", out.display(), o.resumed + o.written, o.resumed, o.written);
        }
        Command::Report { file } => {
            let recs = read_records(&file)?;
            print!("{}", render::defect_report(&defect_table(&recs, None)?));
        }
        Command::EstimateC { file, m, no_minus_i } => {
            let recs = read_records(&file)?;
            let levels: Vec<u32> = match m {
                Some(m) if (2..=5).contains(&m) => vec![m],
                Some(m) => return Err(CliError::validation(format!("--m must be in 2..=5, got {m}"))),
                None => (2..=5).collect(),
            };
            let est: Vec<_> = levels
                .iter()
                .flat_map(|&m| [Side::E, Side::Ep].map(|s| estimate_c(&recs, m, s).resolve_empty(no_minus_i)))
                .collect();
            print!("{}", render::coefficient_report(&est));
        }
        Command::Predict { model } => {
            let (p1, p2, c) = load_model(&model)?;
            print!("{}", render::prediction_report(&predict(&p1.image, &p2.image, &c)?));
        }
        Command::Compare { file, model } => {
            let (p1, p2, c) = load_model(&model)?;
            let recs = read_records(&file)?;
            print!("{}", render::defect_report(&defect_table(&recs, Some((&p1.image, &p2.image, &c)))?));
        }
        Command::CmClassify { e1, e2, class } => {
            if let Some(class) = class {
                if !matches!(split_label(&class), Some((_, None))) {
                    return Err(CliError::validation(format!("{class} is not an isogeny class label")));
                }
                let curves = src.class(&class)?;
                // Classes with odd-degree isogenies split into several 2-isogeny components.
                let mut seen = vec![false; curves.len()];
                let mut lines = 0;
                for start in 0..curves.len() {
                    if seen[start] {
                        continue;
                    }
                    let g = two_isogeny_class(&curves[start]);
                    let named = |i: usize| curves.iter().find(|c| g.index_of(c) == Some(i)).cloned().unwrap_or_else(|| g.curves[i].clone());
                    for (k, c) in curves.iter().enumerate() {
                        seen[k] |= g.index_of(c).is_some();
                    }
                    for &(i, k) in &g.edges {
                        println!("{}", cm_line(&named(i), &named(k))?);
                        lines += 1;
                    }
                }
                if lines == 0 {
                    return Err(CliError::validation(format!("{class} has no rational 2-isogeny")));
                }
            } else {
                let (e1, e2) = (e1.expect("clap"), e2.ok_or_else(|| CliError::validation("--e2 is required with --e1"))?);
                println!("{}", cm_line(&src.resolve(&e1.0)?, &src.resolve(&e2.0)?)?);
            }
        }
        Command::Volcano { e, p, squared, dot } => {
            let curve = src.resolve(&e.0)?;
            let red = reduce(&curve, p, if squared { 2 } else { 1 })?;
            let v = build_volcano(&red)?;
            let q = if squared { (p as u128) * (p as u128) } else { p as u128 };
            let h = kohel_height(v.trace, q)?;
            print!("{}", render::volcano_report(&v, Some(h)));
            if let Some(path) = dot {
                std::fs::write(path, render::volcano_dot(&v))?;
            }
            if h != v.height {
                return Err(CliError::Internal(format!("volcano height {} but Kohel height {h}", v.height)));
            }
        }
        Command::FetchLmfdb { label } => {
            let t = src.fetch(&label)?;
            for k in t.keys() {
                println!("{k}");
            }
            eprintln!("cached in {}", src.cache_dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
