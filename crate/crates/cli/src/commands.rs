use std::fs;
use std::io::{BufRead, Read};
use std::path::{Path, PathBuf};

use k3strata::coverage::{
    reachable_residues, remark_part_bound, verify_lemma_res_with_bound, PARTS,
};
use k3strata::kummer::classify_profile;
use k3strata::oracle::derived_fixtures;
use k3strata::*;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::emit::{self, Outcome, Table};
use crate::{
    Cli, Command, CoverageCmd, CurveCmd, KummerCmd, ParamArgs, PolygonCmd, PolygonInput, SurfaceCmd,
};

pub enum Failure {
    /// Bad flags or unreadable input; exit code 2.
    Usage(String),
    /// A module error or a failed check; exit code 1.
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Self::Usage(m) | Self::Domain(m) => m,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Self::Domain(e.to_string())
            }
        }
    )*};
}

domain_from!(PolygonError, KummerError, CoverageError, FieldError);

fn to_json<T: serde::Serialize>(value: &T) -> Result<Value, Failure> {
    serde_json::to_value(value).map_err(|e| Failure::Domain(format!("SerializationError: {e}")))
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("--threads: {e}")))?;

    if let Some(dir) = &cli.seed_fixtures {
        let path = seed_fixtures(dir)?;
        if cli.command.is_none() {
            eprintln!(
                "wrote {}",
                fs::canonicalize(&path).unwrap_or(path).display()
            );
        }
    }
    let command = match cli.command {
        Some(c) => c,
        None if cli.seed_fixtures.is_some() => return Ok(()),
        None => {
            return Err(Failure::Usage(
                "a subcommand is required (see --help)".into(),
            ))
        }
    };
    let outcome = match command {
        Command::Polygon(c) => polygon(c)?,
        Command::Kummer(c) => kummer(c)?,
        Command::Coverage(c) => coverage(c)?,
        Command::Curve(c) => curve(c)?,
        Command::Surface(c) => surface(c)?,
    };
    let bytes = emit::render(&outcome, cli.format).map_err(Failure::Domain)?;
    emit::write(&bytes, cli.output.as_deref())
        .map_err(|e| Failure::Usage(format!("--output: {e}")))?;
    match outcome.failure {
        Some(msg) => Err(Failure::Domain(msg)),
        None => Ok(()),
    }
}

fn seed_fixtures(dir: &Path) -> Result<PathBuf, Failure> {
    let usage =
        |e: std::io::Error| Failure::Usage(format!("--seed-fixtures {}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(usage)?;
    let path = dir.join("derived.json");
    let mut bytes = serde_json::to_vec_pretty(&to_json(&derived_fixtures())?)
        .map_err(|e| Failure::Domain(format!("SerializationError: {e}")))?;
    bytes.push(b'\n');
    fs::write(&path, bytes).map_err(usage)?;
    Ok(path)
}

fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("--input {}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolygonJson {
    Segments {
        weight: Option<u32>,
        rank: Option<u32>,
        segments: Vec<(i64, i64, u32)>,
    },
    Slopes {
        weight: Option<u32>,
        rank: Option<u32>,
        slopes: Vec<String>,
    },
}

fn read_polygon(input: PolygonInput) -> Result<NewtonPolygon, Failure> {
    if let Some(slopes) = input.slopes {
        return Ok(make_newton(input.weight, input.rank, slopes)?);
    }
    let text = read_input(input.input.as_deref())?;
    let parsed: PolygonJson = serde_json::from_str(&text).map_err(|e| {
        Failure::Usage(format!(
            "--input: expected {{\"segments\": [[num, den, mult], ...]}} or {{\"slopes\": [\"1/2\", ...]}}: {e}"
        ))
    })?;
    let (weight, rank, slopes) = match parsed {
        PolygonJson::Segments {
            weight,
            rank,
            segments,
        } => {
            let slopes = segments
                .into_iter()
                .map(|(n, d, m)| Ok((RationalSlope::new(n, d)?, m)))
                .collect::<Result<Vec<_>, PolygonError>>()?;
            (weight, rank, slopes)
        }
        PolygonJson::Slopes {
            weight,
            rank,
            slopes,
        } => {
            let slopes = slopes
                .iter()
                .map(|s| Ok((s.parse::<RationalSlope>()?, 1)))
                .collect::<Result<Vec<_>, PolygonError>>()?;
            (weight, rank, slopes)
        }
    };
    Ok(make_newton(
        weight.unwrap_or(input.weight),
        rank.unwrap_or(input.rank),
        slopes,
    )?)
}

fn polygon(cmd: PolygonCmd) -> Result<Outcome, Failure> {
    match cmd {
        PolygonCmd::Classify(input) => {
            let np = read_polygon(input)?;
            let class = classify(&np)?;
            Ok(Outcome::json(json!({
                "class": class,
                "height": class.height(),
            })))
        }
        PolygonCmd::FromHeight { height } => {
            let np = newton_from_height(height);
            Ok(Outcome::json(json!({
                "height": height,
                "polygon": to_json(&np)?,
                "display": np.to_string(),
                "lies_above_hodge": lies_above(&np, &hodge_k3())?,
            })))
        }
    }
}

fn params(args: &ParamArgs) -> Result<KummerParams, Failure> {
    Ok(match args.parts.as_slice() {
        [v] => KummerParams::uniform(args.n, args.dprime, *v)?,
        parts => KummerParams::from_slice(args.n, args.dprime, parts)?,
    })
}

fn kummer(cmd: KummerCmd) -> Result<Outcome, Failure> {
    match cmd {
        KummerCmd::Slopes { profile } => {
            let np = kummer_slopes(&profile);
            let class = classify(&np)?;
            let slopes: Vec<String> = np.slopes().iter().map(ToString::to_string).collect();
            Ok(Outcome::json(json!({
                "profile": profile.to_string(),
                "p_rank": profile.p_rank(),
                "slopes": slopes,
                "polygon": to_json(&np)?,
                "display": np.to_string(),
                "class": class,
                "height": class.height(),
            })))
        }
        KummerCmd::Degree(args) => {
            let p = params(&args)?;
            Ok(Outcome::json(
                json!({ "d": to_json(&polarization_degree(&p))? }),
            ))
        }
        KummerCmd::CheckAmpleness {
            params: args,
            variant,
        } => {
            let report = check_ampleness(&params(&args)?, variant);
            Ok(Outcome::json(to_json(&report)?))
        }
    }
}

fn coverage(cmd: CoverageCmd) -> Result<Outcome, Failure> {
    match cmd {
        CoverageCmd::Residues {
            modulus,
            parts,
            max_part,
        } => Ok(Outcome::json(to_json(&reachable_residues(
            modulus, parts, max_part,
        )?)?)),
        CoverageCmd::VerifyLemmaRes { max_part } => {
            let set = reachable_residues(162, PARTS, max_part)?;
            let verified = verify_lemma_res_with_bound(max_part);
            let mut out = Outcome::json(json!({
                "modulus": 162,
                "parts": PARTS,
                "max_part": max_part,
                "reachable": set.len(),
                "missing": set.missing(),
                "verified": verified,
            }));
            if !verified {
                out.failure = Some(incomplete(&set));
            }
            Ok(out)
        }
        CoverageCmd::VerifyRemark { n, to: None } => {
            let bound = remark_part_bound(n)?;
            let modulus = 2 * u64::from(n) * u64::from(n);
            let set = reachable_residues(modulus, PARTS, bound)?;
            let verified = verify_remark(n)?;
            let mut out = Outcome::json(json!({
                "n": n,
                "part_bound": bound,
                "modulus": modulus,
                "reachable": set.len(),
                "missing": set.missing(),
                "verified": verified,
            }));
            if !verified {
                out.failure = Some(incomplete(&set));
            }
            Ok(out)
        }
        CoverageCmd::VerifyRemark { n, to: Some(to) } => {
            if to < n {
                return Err(Failure::Usage(format!("--to {to} is below --n {n}")));
            }
            let rows = k3strata::coverage::verify_remark_range(n..=to)?;
            let failed: Vec<u32> = rows.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
            let json = Value::Array(
                rows.iter()
                    .map(|(n, ok)| json!({"n": n, "verified": ok}))
                    .collect(),
            );
            let mut out = Outcome::json(json);
            if !failed.is_empty() {
                out.failure = Some(format!(
                    "IncompleteResidueCoverage: residues missed for n in {failed:?}"
                ));
            }
            Ok(out)
        }
        CoverageCmd::Threshold {
            n,
            dprime_min,
            max_part,
            variant,
        } => {
            let r = k3strata::coverage::coverage_threshold_with(n, dprime_min, max_part, variant)?;
            let mut out = Outcome::json(to_json(&r)?);
            out.table = Some(Table {
                columns: cols(&[
                    "n",
                    "dprime_min",
                    "part_bound",
                    "modulus",
                    "threshold",
                    "exact_threshold",
                    "witness_count",
                ]),
                rows: vec![vec![
                    r.n.to_string(),
                    r.dprime_min.to_string(),
                    r.part_bound.to_string(),
                    r.modulus.to_string(),
                    r.threshold.to_string(),
                    r.exact_threshold.to_string(),
                    r.witnesses.len().to_string(),
                ]],
            });
            let bad = r.invalid_witnesses();
            if !bad.is_empty() {
                out.failure = Some(format!("InvalidWitness: residues {bad:?}"));
            }
            Ok(out)
        }
        CoverageCmd::Degrees {
            n,
            dprime_min,
            dprime_max,
            max_part,
            parts,
            parity,
            coprime_to,
        } => {
            let parts = match (parts, max_part) {
                (Some(p), _) => PartChoice::Fixed(p),
                (None, Some(b)) => PartChoice::Bounded(b),
                (None, None) => {
                    return Err(Failure::Usage(
                        "one of --max-part or --parts is required".into(),
                    ))
                }
            };
            let query = DegreeQuery {
                n,
                dprime: dprime_min..=dprime_max.unwrap_or(dprime_min),
                parts,
                parity,
                coprime_to,
            };
            let set = achievable_degrees(&query)?;
            Ok(Outcome::json(json!({
                "n": n,
                "dprime_min": query.dprime.start(),
                "dprime_max": query.dprime.end(),
                "parts": to_json(&query.parts)?,
                "parity": to_json(&query.parity)?,
                "coprime_to": query.coprime_to,
                "count": set.degrees.len(),
                "degrees": to_json(&set.degrees)?,
            })))
        }
        CoverageCmd::ReportPaperBounds => {
            let report = paper_bounds_report();
            let rows = report
                .families
                .iter()
                .map(|f| {
                    vec![
                        f.family.to_string(),
                        f.n.to_string(),
                        f.dprime_min.to_string(),
                        f.part_bound.to_string(),
                        f.threshold.to_string(),
                        f.witness_count.to_string(),
                    ]
                })
                .collect();
            let mut out = Outcome::json(to_json(&report)?);
            out.table = Some(Table {
                columns: cols(&[
                    "family",
                    "n",
                    "dprime_min",
                    "part_bound",
                    "threshold",
                    "witness_count",
                ]),
                rows,
            });
            Ok(out)
        }
    }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn incomplete(set: &ResidueSet) -> String {
    CoverageError::IncompleteResidueCoverage {
        modulus: set.modulus(),
        missing: set.missing(),
    }
    .to_string()
}

#[derive(Deserialize)]
struct CurveLine {
    p: u64,
    a: i64,
    b: i64,
}

fn curve_of(p: u64, a: i64, b: i64) -> Result<EllipticCurveData, FieldError> {
    EllipticCurveData::new(PrimeFieldSpec::new(p)?, a, b)
}

/// Count row for one curve; profile, height and stratum describe the
/// Kummer surface of `E x E`.
fn curve_row(e: &EllipticCurveData) -> Result<Value, Failure> {
    let s = classify_kummer_of_product(e, e)?;
    let f = s.curves[0].frobenius;
    Ok(json!({
        "p": e.field().p(),
        "a": e.a(),
        "b": e.b(),
        "count": f.point_count,
        "trace": f.trace,
        "supersingular": f.supersingular,
        "profile": s.kummer.profile.name(),
        "height": s.kummer.height,
        "stratum": s.kummer.stratum.to_string(),
    }))
}

fn curve(cmd: CurveCmd) -> Result<Outcome, Failure> {
    let CurveCmd::Count { p, a, b, input } = cmd;
    if let (Some(p), Some(a), Some(b)) = (p, a, b) {
        return Ok(Outcome::json(curve_row(&curve_of(p, a, b)?)?));
    }
    let text = read_input(input.as_deref())?;
    let mut curves = Vec::new();
    for (i, line) in text.as_bytes().lines().enumerate() {
        let line = line.map_err(|e| Failure::Usage(format!("--input: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        let c: CurveLine = serde_json::from_str(&line)
            .map_err(|e| Failure::Usage(format!("--input line {}: {e}", i + 1)))?;
        let e = curve_of(c.p, c.a, c.b)
            .map_err(|e| Failure::Domain(format!("{e} (line {})", i + 1)))?;
        curves.push(e);
    }
    let rows = curves
        .par_iter()
        .map(curve_row)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Outcome::json(Value::Array(rows)))
}

fn surface(cmd: SurfaceCmd) -> Result<Outcome, Failure> {
    let SurfaceCmd::Classify {
        p,
        a1,
        b1,
        a2,
        b2,
        profile,
        artin,
    } = cmd;
    if let (Some(p), Some(a1), Some(b1), Some(a2), Some(b2)) = (p, a1, b1, a2, b2) {
        let s = classify_kummer_of_product(&curve_of(p, a1, b1)?, &curve_of(p, a2, b2)?)?;
        return Ok(Outcome::json(to_json(&s)?));
    }
    let profile = profile
        .ok_or_else(|| Failure::Usage("--profile or --p with two curves is required".into()))?;
    let sigma0 = artin.map(ArtinInvariant::new).transpose()?;
    Ok(Outcome::json(to_json(&classify_profile(
        &profile, sigma0,
    )?)?))
}
