use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use twisted_rs::decoding::{brute_force_decode, decode, Engine, DEFAULT_BRUTE_BUDGET};
use twisted_rs::dual::dual_twisted;
use twisted_rs::equivalence::{
    full_single_twist_domain, grs_eta_census, is_grs_generator, schur_square_dim, sumset_lower_bound,
};
use twisted_rs::mds::{first_zero_minor, mds_check, MdsMethod};
use twisted_rs::sim::{emit_table, run_sweep, SimConfig, TableFormat, PAPER_SCALE_TRIALS};
use twisted_rs::{sample_random_code, CodeParams, Elem, FieldConfig, TwistedCode};

#[derive(Parser)]
#[command(name = "trs", version, about = "Twisted Reed-Solomon code toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Star,
    Plus,
    Auto,
}

#[derive(Copy, Clone, ValueEnum)]
enum EngineArg {
    Popov,
    Linear,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a code description and print its parameters.
    Construct {
        #[arg(long)]
        params: PathBuf,
        /// Include the canonical generator matrix.
        #[arg(long)]
        emit_generator: bool,
    },
    /// MDS test by minors or by the closed-form criteria.
    MdsCheck {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Parameters of the dual twisted code.
    Dual {
        #[arg(long)]
        params: PathBuf,
        /// Accept points forming a multiplicative group together with 0.
        #[arg(long)]
        allow_zero_point: bool,
        /// Include the parity-check matrix.
        #[arg(long)]
        dump_h: bool,
    },
    /// GRS test and Schur square dimension.
    GrsCheck {
        #[arg(long)]
        params: PathBuf,
    },
    /// Classify every twist vector of a domain on the points of a base code.
    EtaCensus {
        #[arg(long)]
        base: PathBuf,
        /// `all` for every single twist, or a JSON file holding a list of eta vectors.
        #[arg(long, default_value = "all")]
        eta_domain: String,
    },
    /// Decode a received word.
    Decode {
        #[arg(long)]
        params: PathBuf,
        /// JSON array of element encodings.
        #[arg(long)]
        received: PathBuf,
        #[arg(long, default_value_t = 2)]
        zeta: usize,
        #[arg(long, value_enum, default_value = "popov")]
        engine: EngineArg,
        /// Maximal number of hook guesses for the brute-force engine.
        #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
        budget: u64,
    },
    /// Monte-Carlo estimate of decoding radii.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Use 1000 trials per cell.
        #[arg(long)]
        paper_scale: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the TSV table to standard output.
        #[arg(long)]
        table: bool,
    },
    /// Randomized search for MDS random twisted codes; reports what it finds.
    MdsSearch {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long, default_value_t = 100)]
        tries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_code(path: &Path) -> Result<TwistedCode> {
    let params: CodeParams = read_json(path)?;
    Ok(params.build()?)
}

fn print<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn to_elems(code: &TwistedCode, xs: &[u64]) -> Result<Vec<Elem>> {
    xs.iter().map(|&x| Ok(code.field().elem(x)?)).collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct { params, emit_generator } => {
            let code = load_code(&params)?;
            let mut out = json!({
                "params": code.params(),
                "n": code.len(),
                "k": code.k(),
                "ell": code.ell(),
                "basis": code.basis_polys().iter().map(|p| p.to_ints()).collect::<Vec<_>>(),
            });
            if emit_generator {
                out["generator"] = json!(code.generator_canonical().to_ints());
            }
            print(&out)
        }
        Command::MdsCheck { params, method } => {
            let code = load_code(&params)?;
            let method = match method {
                MethodArg::Exhaustive => MdsMethod::Exhaustive,
                MethodArg::Star => MdsMethod::Star,
                MethodArg::Plus => MdsMethod::Plus,
                MethodArg::Auto => MdsMethod::Auto,
            };
            print(&mds_check(&code, method)?)
        }
        Command::Dual { params, allow_zero_point, dump_h } => {
            let code = load_code(&params)?;
            let d = dual_twisted(&code, allow_zero_point)?;
            let mut out = json!({
                "dual": d.params,
                "code": d.dual.params(),
                "scale": d.scale.iter().map(|e| e.to_int()).collect::<Vec<_>>(),
            });
            if dump_h {
                out["h"] = json!(d.h.to_ints());
            }
            print(&out)
        }
        Command::GrsCheck { params } => {
            let code = load_code(&params)?;
            let g = code.generator_canonical();
            print(&json!({
                "mds": first_zero_minor(&g).is_none(),
                "grs": is_grs_generator(&g),
                "schur_square_dim": schur_square_dim(&g),
                "sumset_lower_bound": sumset_lower_bound(&code),
            }))
        }
        Command::EtaCensus { base, eta_domain } => {
            let code = load_code(&base)?;
            let domain = if eta_domain == "all" {
                if code.ell() != 1 {
                    bail!("--eta-domain all needs a single-twist base code");
                }
                full_single_twist_domain(&code)
            } else {
                let lists: Vec<Vec<u64>> = read_json(Path::new(&eta_domain))?;
                lists.iter().map(|v| to_elems(&code, v)).collect::<Result<_>>()?
            };
            print(&grs_eta_census(&code, &domain)?)
        }
        Command::Decode { params, received, zeta, engine, budget } => {
            let code = load_code(&params)?;
            let raw: Vec<u64> = read_json(&received)?;
            let recv = to_elems(&code, &raw)?;
            let out = match engine {
                EngineArg::Popov => decode(&code, &recv, zeta, Engine::Popov)?,
                EngineArg::Linear => decode(&code, &recv, zeta, Engine::Linear)?,
                EngineArg::Brute => brute_force_decode(&code, &recv, budget)?,
            };
            print(&out)
        }
        Command::Simulate { config, paper_scale, seed, out, table } => {
            let mut cfg: SimConfig = read_json(&config)?;
            if paper_scale {
                cfg.trials = PAPER_SCALE_TRIALS;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = run_sweep(&cfg)?;
            let json = emit_table(&report, TableFormat::Json);
            match out {
                Some(path) => fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?,
                None if !table => println!("{json}"),
                None => {}
            }
            if table {
                print!("{}", emit_table(&report, TableFormat::Tsv));
            }
            Ok(())
        }
        Command::MdsSearch { p, m, n, k, ell, tries, seed } => {
            let field = FieldConfig { p, m, modulus: None }.build()?;
            let mut found = Vec::new();
            for i in 0..tries {
                let code = sample_random_code(&field, n, k, ell, seed.wrapping_add(i as u64))?;
                if first_zero_minor(&code.generator_canonical()).is_none() {
                    found.push(code.params());
                }
            }
            print(&json!({ "tries": tries, "mds_found": found.len(), "codes": found }))
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
