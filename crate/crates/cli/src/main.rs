use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simpack::oracle::Window;
use simpack_cli::commands::{self, Format};
use simpack_cli::input::{load_packing, parse_rational, read_json, DirectionDoc, SimilarityDoc};
use simpack_cli::{CliError, Outcome, EXIT_INPUT, EXIT_OK};

#[derive(Parser)]
#[command(name = "simpack", version, about = "Similarity isometries of planar point packings, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PackingArgs {
    /// Built-in packing: rect12, hex, hex-shifted, ex34, ex22
    #[arg(long)]
    preset: Option<String>,
    /// Packing document (JSON file or inline JSON)
    #[arg(long)]
    packing: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a similarity maps the packing onto a subpacking
    Analyze {
        #[command(flatten)]
        packing: PackingArgs,
        /// Similarity document, e.g. '{"z":[1,1],"scale":"2"}'
        #[arg(long)]
        similarity: String,
    },
    /// Reproduce a scaling-factor table (t1..t5)
    Table {
        name: String,
        /// Sampled z per congruence class
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Explicit z as a,b (repeatable); overrides --samples
        #[arg(long = "z", value_parser = parse_pair, allow_hyphen_values = true)]
        z: Vec<[i64; 2]>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Draw the packing and its image as SVG
    Render {
        #[command(flatten)]
        packing: PackingArgs,
        #[arg(long)]
        similarity: Option<String>,
        /// x0,y0,x1,y1 in ring coordinates
        #[arg(long, default_value = "-3,-3,3,3", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        packing_only: bool,
    },
    /// Cross-check the engine against brute-force enumeration
    Verify {
        #[command(flatten)]
        packing: PackingArgs,
        #[arg(long, conflicts_with_all = ["direction", "random"])]
        similarity: Option<String>,
        /// Direction document, e.g. '{"z":[1,1],"conj":false}'
        #[arg(long, conflicts_with = "random")]
        direction: Option<String>,
        #[arg(long, default_value_t = 9)]
        p_bound: u64,
        #[arg(long, default_value_t = 1)]
        q_bound: u64,
        /// Number of random instances per ring
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Period lattice and reduction to the fewest components
    Periods {
        #[command(flatten)]
        packing: PackingArgs,
    },
}

fn parse_pair(s: &str) -> Result<[i64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok([p(a)?, p(b)?])
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Input(format!("window {s:?} needs x0,y0,x1,y1")));
    }
    let v = parts.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>, _>>()?;
    let [x0, y0, x1, y1] = <[_; 4]>::try_from(v).expect("four parts");
    Window::new(x0, y0, x1, y1).ok_or_else(|| CliError::Input(format!("window {s:?} has no area")))
}

fn load(p: &PackingArgs) -> Result<simpack::PointPacking, CliError> {
    load_packing(p.preset.as_deref(), p.packing.as_deref())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze { packing, similarity } => {
            let packing = load(&packing)?;
            let s = read_json::<SimilarityDoc>(&similarity)?.to_similarity(packing.ring())?;
            Ok(commands::analyze(&packing, &s))
        }
        Command::Table { name, samples, z, format } => {
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            commands::table(&name, samples, &z, format)
        }
        Command::Render { packing, similarity, window, out, packing_only } => {
            let packing = load(&packing)?;
            let window = parse_window(&window)?;
            let s = match (&similarity, packing_only) {
                (_, true) => None,
                (Some(doc), false) => Some(read_json::<SimilarityDoc>(doc)?.to_similarity(packing.ring())?),
                (None, false) => return Err(CliError::Input("render needs --similarity or --packing-only".into())),
            };
            let svg = match commands::render_svg(&packing, s.as_ref(), &window) {
                Ok(svg) => svg,
                Err(outcome) => return Ok(outcome),
            };
            match out {
                Some(path) => {
                    fs::write(&path, svg)?;
                    Ok(Outcome::new(EXIT_OK, String::new()))
                }
                None => Ok(Outcome::new(EXIT_OK, svg)),
            }
        }
        Command::Verify { packing, similarity, direction, p_bound, q_bound, random, seed } => {
            if let Some(n) = random {
                return Ok(commands::verify_random(n, seed));
            }
            let packing = load(&packing)?;
            match (similarity, direction) {
                (Some(doc), None) => {
                    let s = read_json::<SimilarityDoc>(&doc)?.to_similarity(packing.ring())?;
                    Ok(commands::verify_similarity(&packing, &s))
                }
                (None, Some(doc)) => {
                    let d = read_json::<DirectionDoc>(&doc)?.to_direction(packing.ring())?;
                    commands::verify_direction(&packing, &d, p_bound, q_bound)
                }
                _ => Err(CliError::Input("verify needs --similarity, --direction or --random".into())),
            }
        }
        Command::Periods { packing } => Ok(commands::periods_cmd(&load(&packing)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
