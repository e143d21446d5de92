mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use k3strata::{AbelianSlopeProfile, AmplenessVariant, HeightValue, Parity, RationalSlope};

const DEFAULT_FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures");

#[derive(Debug, Parser)]
#[command(
    name = "k3strata",
    version,
    about = "Height strata of K3 surfaces, Kummer polarizations and degree coverage"
)]
pub struct Cli {
    /// Output format. CSV drops nested fields such as witnesses.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH", global = true)]
    output: Option<PathBuf>,

    /// Worker threads for batch work (0 = one per core).
    #[arg(long, env = "K3STRATA_THREADS", default_value_t = 0, global = true)]
    threads: usize,

    /// Regenerate the brute-force fixture file `derived.json` in DIR.
    #[arg(long, value_name = "DIR", num_args = 0..=1, default_missing_value = DEFAULT_FIXTURES)]
    seed_fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polygons and heights.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Kummer slopes, polarization degrees and ampleness.
    #[command(subcommand)]
    Kummer(KummerCmd),
    /// Sums of squares, residue coverage and degree thresholds.
    #[command(subcommand)]
    Coverage(CoverageCmd),
    /// Point counts of elliptic curves over prime fields.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Kummer surfaces of products of elliptic curves.
    #[command(subcommand)]
    Surface(SurfaceCmd),
}

#[derive(Debug, Subcommand)]
pub enum PolygonCmd {
    /// Height and class of a K3 Newton polygon.
    Classify(PolygonInput),
    /// The K3 Newton polygon of a given height.
    FromHeight {
        /// 1..10 or `infinite`.
        #[arg(long, value_parser = parse_height)]
        height: HeightValue,
    },
}

#[derive(Debug, Args)]
pub struct PolygonInput {
    /// Comma separated slopes, each optionally with a multiplicity: `1/2x2,1x18,3/2x2`.
    #[arg(long, value_parser = parse_slope, value_delimiter = ',', conflicts_with = "input")]
    pub slopes: Option<Vec<(RationalSlope, u32)>>,
    #[arg(long, default_value_t = 2)]
    pub weight: u32,
    #[arg(long, default_value_t = 22)]
    pub rank: u32,
    /// JSON polygon file (`-` for stdin); read from stdin when no slopes are given.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum KummerCmd {
    /// Slopes of the Kummer surface of an abelian surface.
    Slopes {
        /// `ordinary`, `p-rank-one`, `supersingular` or four slopes `0,1/2,1/2,1`.
        #[arg(long, value_parser = parse_profile)]
        profile: AbelianSlopeProfile,
    },
    /// Polarization degree `d` of the Kummer class.
    Degree(ParamArgs),
    /// Ampleness of the Kummer class on the blow-up.
    CheckAmpleness {
        #[command(flatten)]
        params: ParamArgs,
        /// `general`, `non-product` or `min-elliptic:M`.
        #[arg(long, value_parser = parse_variant, default_value = "non-product")]
        variant: AmplenessVariant,
    },
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub dprime: u32,
    /// Sixteen comma separated parts, or a single value used for all of them.
    #[arg(long, value_delimiter = ',', required = true)]
    pub parts: Vec<u32>,
}

#[derive(Debug, Subcommand)]
pub enum CoverageCmd {
    /// Residues mod M reachable as sums of K squares with parts in [1, B].
    Residues {
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 16)]
        parts: u32,
        #[arg(long)]
        max_part: u32,
    },
    /// Whether sixteen squares with parts in [1, B] cover every residue mod 162.
    VerifyLemmaRes {
        #[arg(long, default_value_t = 4)]
        max_part: u32,
    },
    /// Whether sixteen squares with parts below n/2 cover every residue mod 2n^2.
    VerifyRemark {
        #[arg(long)]
        n: u32,
        /// Check every n up to this value as well.
        #[arg(long)]
        to: Option<u32>,
    },
    /// Degree threshold with one witness per residue class.
    Threshold {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dprime_min: u32,
        #[arg(long)]
        max_part: u32,
        #[arg(long, value_parser = parse_variant, default_value = "non-product")]
        variant: AmplenessVariant,
    },
    /// Degrees `2n^2 d' - sum n_j^2` over a range of d'.
    Degrees {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dprime_min: u32,
        /// Defaults to `--dprime-min`.
        #[arg(long)]
        dprime_max: Option<u32>,
        #[arg(long, conflicts_with = "parts", required_unless_present = "parts")]
        max_part: Option<u32>,
        /// Fixed parts instead of a bound.
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<u32>>,
        #[arg(long, value_parser = parse_parity)]
        parity: Option<Parity>,
        /// Keep only degrees prime to P.
        #[arg(long, value_name = "P")]
        coprime_to: Option<u64>,
    },
    /// The three degree families with their thresholds and ampleness audits.
    ReportPaperBounds,
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Count points of `y^2 = x^3 + a x + b` over F_p. Without `--p`, reads
    /// JSON lines `{"p":..,"a":..,"b":..}` from `--input` or stdin.
    Count {
        #[arg(long, requires_all = ["a", "b"], conflicts_with = "input")]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// Stratum of a Kummer surface, from two curves or from an abelian slope profile.
    Classify {
        #[arg(long, requires_all = ["a1", "b1", "a2", "b2"], conflicts_with_all = ["profile", "artin"])]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        a1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b1: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        a2: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b2: Option<i64>,
        #[arg(long, value_parser = parse_profile, required_unless_present = "p")]
        profile: Option<AbelianSlopeProfile>,
        /// Artin invariant of the Kummer surface, needed when it is supersingular.
        #[arg(long)]
        artin: Option<u32>,
    },
}

fn parse_slope(item: &str) -> Result<(RationalSlope, u32), String> {
    let (slope, mult) = match item.split_once(['x', '*']) {
        Some((slope, mult)) => (
            slope,
            mult.trim()
                .parse::<u32>()
                .map_err(|e| format!("{item:?}: {e}"))?,
        ),
        None => (item, 1),
    };
    Ok((
        slope.parse::<RationalSlope>().map_err(|e| e.to_string())?,
        mult,
    ))
}

fn parse_height(s: &str) -> Result<HeightValue, String> {
    s.parse().map_err(|e: k3strata::PolygonError| e.to_string())
}

fn parse_profile(s: &str) -> Result<AbelianSlopeProfile, String> {
    s.parse().map_err(|e: k3strata::KummerError| e.to_string())
}

fn parse_variant(s: &str) -> Result<AmplenessVariant, String> {
    s.parse().map_err(|e: k3strata::KummerError| e.to_string())
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    s.parse()
        .map_err(|e: k3strata::CoverageError| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
