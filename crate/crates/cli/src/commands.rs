use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use polarlab::ensembles::{self, BoundaryDraws, GeneratedInstance};
use polarlab::extrema;
use polarlab::verifier::{self, CampaignConfig, TrialParams, Verdict, VerificationRecord};
use polarlab::{Error, Instance, LacunaryKind, PolyClass, Polynomial, TheoremId, ZeroSide};
use serde::Serialize;
use serde_json::json;

use crate::args::{
    CampaignArgs, ClassKind, Cli, ExtremaArgs, Extremal, Format, GenArgs, InstanceArgs, TrialArgs,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_IO: u8 = 74;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Io(_) => EXIT_IO,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonDivisor { .. }
            | Error::BadAnnulus { .. }
            | Error::NonPositiveRadius(_)
            | Error::NonPositiveTolerance(_)
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            Error::PreconditionViolated(report) => {
                let failed: Vec<&str> = report
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(name, _)| name.as_str())
                    .collect();
                Failure::Data(format!("preconditions not met: {}", failed.join("; ")))
            }
            other => Failure::Data(other.to_string()),
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn csv_err(e: csv::Error) -> Failure {
    if e.is_io_error() {
        Failure::Io(e.to_string())
    } else {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    use crate::args::Command::*;
    match &cli.command {
        Gen(a) => gen(cli, a),
        Bound(a) => bound(cli, a),
        Extrema(a) => extrema_cmd(cli, a),
        Verify(a) => verify(cli, a),
        Campaign(a) => campaign(cli, a),
        Tightness(a) => tightness(cli, a),
    }
}

/// Machine output: pretty JSON `{config, result}`, or CSV preceded by the
/// config as a `#` comment line.
fn emit<T: Serialize>(
    cli: &Cli,
    result: &T,
    csv_body: impl FnOnce() -> Result<String, Failure>,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let text = match cli.format {
        Format::Json => {
            let doc = json!({ "config": cli, "result": result });
            serde_json::to_string_pretty(&doc).map_err(|e| Failure::Data(e.to_string()))? + "\n"
        }
        Format::Csv => {
            let config = serde_json::to_string(cli).map_err(|e| Failure::Data(e.to_string()))?;
            format!("# config: {config}\n{}", csv_body()?)
        }
    };
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Io(format!("stdout: {e}")))?;
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| io_err(path, e))?;
    }
    Ok(())
}

fn records_csv(records: &[VerificationRecord]) -> Result<String, Failure> {
    let mut buf = Vec::new();
    verifier::write_csv(records, &mut buf).map_err(csv_err)?;
    String::from_utf8(buf).map_err(|e| Failure::Data(e.to_string()))
}

fn exit_for(records: &[VerificationRecord]) -> u8 {
    if records
        .iter()
        .any(|r| r.verdict == Verdict::ViolationProven)
    {
        EXIT_VIOLATION
    } else if records.iter().any(|r| r.is_unexplained()) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn table_row(r: &VerificationRecord) -> String {
    format!(
        "{:<11} {:>6} {:>3} {:>16.9e} {:>16.9e} {:>12.3e} {:>10.3e}  {:?}",
        r.theorem_id.to_string(),
        r.seed,
        r.n,
        r.lhs.value,
        r.rhs,
        r.slack,
        r.cert_radius,
        r.verdict
    )
}

fn table_header() -> String {
    format!(
        "{:<11} {:>6} {:>3} {:>16} {:>16} {:>12} {:>10}  verdict",
        "theorem", "seed", "n", "lhs", "rhs", "slack", "radius"
    )
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path) -> Result<Polynomial<f64>, Failure> {
    let value = read_json(path)?;
    serde_json::from_value(value).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

/// Builds the instance named by the source flags. `side` is the fallback
/// zero side when neither the file nor `--side` fixes one.
fn load_instance(args: &InstanceArgs, side: ZeroSide) -> Result<Instance, Failure> {
    let side = args.side.map(ZeroSide::from).unwrap_or(side);
    if let Some(path) = &args.poly {
        let value = read_json(path)?;
        let mut instance = match serde_json::from_value::<GeneratedInstance<f64>>(value.clone()) {
            Ok(inst) => inst,
            Err(_) => {
                let poly: Polynomial<f64> = serde_json::from_value(value)
                    .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
                let lac = poly.classify_lacunary(polarlab::poly::DEFAULT_SNAP_TOL)?;
                let label = path
                    .file_stem()
                    .map_or("poly".to_string(), |s| s.to_string_lossy().into_owned());
                GeneratedInstance {
                    poly,
                    zeros: Vec::new(),
                    poly_class: PolyClass {
                        kind: LacunaryKind::Top(lac.mu),
                        k: 1.0,
                        side,
                    },
                    seed: 0,
                    label,
                }
            }
        };
        if let Some(k) = args.k {
            instance.poly_class.k = k;
        }
        if let Some(s) = args.side {
            instance.poly_class.side = s.into();
        }
        return Ok(instance);
    }
    let n = require(args.n, "n")?;
    let k = args.k.unwrap_or(1.0);
    let index = args.index.unwrap_or(1);
    let instance = match (args.extremal, args.class) {
        (Some(Extremal::Binomial), _) => ensembles::extremal_binomial(n, k)?,
        (Some(Extremal::Block), _) => ensembles::extremal_block(n, index, k, side)?,
        (None, Some(ClassKind::Top)) => {
            ensembles::random_top_lacunary(n, index, k, args.seed, 1.0)?
        }
        (None, Some(ClassKind::Bottom)) => ensembles::random_bottom_lacunary_zerofree(
            n,
            index,
            k,
            args.k_max.unwrap_or(2.0 * k),
            args.seed,
            1.0,
            BoundaryDraws::Exclude,
        )?,
        (None, None) => return Err(Failure::Usage("no polynomial source given".into())),
    };
    Ok(instance)
}

fn gen(cli: &Cli, a: &GenArgs) -> Outcome {
    fs::create_dir_all(&a.out).map_err(|e| io_err(&a.out, e))?;
    let mut instances = Vec::new();
    match (a.extremal, a.class) {
        (Some(kind), _) => {
            let side = a
                .side
                .map(ZeroSide::from)
                .unwrap_or(ZeroSide::ZerosInsideClosedDisk);
            let (inst, name) = match kind {
                Extremal::Binomial => (
                    ensembles::extremal_binomial(a.n, a.k)?,
                    format!("extremal_binomial_n{}_k{}.json", a.n, a.k),
                ),
                Extremal::Block => (
                    ensembles::extremal_block(a.n, a.index, a.k, side)?,
                    format!("extremal_block_n{}_idx{}_k{}.json", a.n, a.index, a.k),
                ),
            };
            instances.push((inst, name));
        }
        (None, Some(class)) => {
            if a.count == 0 {
                return Err(Failure::Usage("--count must be at least 1".into()));
            }
            for i in 0..a.count {
                let seed = a.seed.wrapping_add(i as u64);
                let inst = match class {
                    ClassKind::Top => {
                        ensembles::random_top_lacunary(a.n, a.index, a.k, seed, a.leading_scale)?
                    }
                    ClassKind::Bottom => ensembles::random_bottom_lacunary_zerofree(
                        a.n,
                        a.index,
                        a.k,
                        a.k_max.unwrap_or(2.0 * a.k),
                        seed,
                        a.leading_scale,
                        BoundaryDraws::Exclude,
                    )?,
                };
                let tag = match class {
                    ClassKind::Top => "top",
                    ClassKind::Bottom => "bottom",
                };
                instances.push((
                    inst,
                    format!("{tag}_n{}_idx{}_seed{seed}.json", a.n, a.index),
                ));
            }
        }
        (None, None) => return Err(Failure::Usage("give --extremal or --class".into())),
    }

    let mut files = Vec::new();
    for (inst, name) in &instances {
        let path = a.out.join(name);
        let text = serde_json::to_string_pretty(inst).map_err(|e| Failure::Data(e.to_string()))?;
        fs::write(&path, text + "\n").map_err(|e| io_err(&path, e))?;
        eprintln!("wrote {} ({})", path.display(), inst.label);
        files.push(path);
    }
    let csv = || Ok(files.iter().map(|p| format!("{}\n", p.display())).collect());
    emit(cli, &json!({ "files": files }), csv, None)?;
    Ok(EXIT_OK)
}

fn trial_setup(a: &TrialArgs) -> Result<(Instance, TrialParams), Failure> {
    let side = a
        .theorem
        .zero_side()
        .unwrap_or(ZeroSide::ZerosInsideClosedDisk);
    let instance = load_instance(&a.instance, side)?;
    let alpha_abs = crate::args::parse_alpha(&a.alpha).map_err(Failure::Usage)?;
    let params = TrialParams {
        r: a.r,
        big_r: a.big_r,
        alpha_abs,
        index: a.instance.index.filter(|_| a.theorem.lacunary().is_some()),
    };
    Ok((instance, params))
}

#[derive(Serialize)]
struct BoundView<'a> {
    theorem_id: TheoremId,
    direction: polarlab::Direction,
    value: f64,
    /// Half-width of the value's range over the input enclosures.
    value_spread: f64,
    precondition_report: &'a [(String, bool)],
    n: usize,
    index: Option<usize>,
    k: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    alpha_abs: f64,
    poly: &'a Polynomial<f64>,
}

fn bound(cli: &Cli, a: &TrialArgs) -> Outcome {
    let (instance, params) = trial_setup(a)?;
    let rec = verifier::run_trial(a.theorem, &instance, &params, a.eps)?;
    let view = BoundView {
        theorem_id: a.theorem,
        direction: a.theorem.direction(),
        value: rec.rhs,
        value_spread: rec.rhs_spread,
        precondition_report: &rec.precondition_report,
        n: rec.n,
        index: rec.index,
        k: rec.k,
        r: rec.r,
        big_r: rec.big_r,
        alpha_abs: rec.alpha_abs,
        poly: &instance.poly,
    };
    eprintln!(
        "{} {:?}: {:.12e} +/- {:.1e}",
        a.theorem, view.direction, view.value, view.value_spread
    );
    let csv = || {
        Ok(format!(
            "theorem_id,direction,value,value_spread\n{},{:?},{:e},{:e}\n",
            a.theorem, view.direction, view.value, view.value_spread
        ))
    };
    emit(cli, &view, csv, a.out.as_ref())?;
    Ok(EXIT_OK)
}

fn extrema_cmd(cli: &Cli, a: &ExtremaArgs) -> Outcome {
    let poly = read_poly(&a.poly)?;
    let cert = extrema::extremum(&poly, a.radius, a.eps, a.kind.into())?;
    eprintln!(
        "{:?} |p| on |z| = {}: {:.12e} +/- {:.1e} at angle {:.6}",
        cert.kind, cert.radius, cert.value, cert.error_radius, cert.witness_angle
    );
    let csv = || {
        Ok(format!(
            "kind,radius,value,error_radius,witness_angle\n{:?},{:e},{:e},{:e},{:e}\n",
            cert.kind, cert.radius, cert.value, cert.error_radius, cert.witness_angle
        )
        .to_lowercase())
    };
    emit(cli, &cert, csv, a.out.as_ref())?;
    Ok(EXIT_OK)
}

fn verify(cli: &Cli, a: &TrialArgs) -> Outcome {
    let (instance, params) = trial_setup(a)?;
    let rec = verifier::run_trial(a.theorem, &instance, &params, a.eps)?;
    eprintln!("{}\n{}", table_header(), table_row(&rec));
    if rec.verdict == Verdict::Inconclusive && rec.is_equality_case() {
        eprintln!("slack within the certification radius: consistent with equality");
    }
    let records = [rec];
    emit(cli, &records[0], || records_csv(&records), a.out.as_ref())?;
    Ok(exit_for(&records))
}

fn tightness(cli: &Cli, a: &TrialArgs) -> Outcome {
    let (instance, params) = trial_setup(a)?;
    let t = verifier::tightness(a.theorem, &instance, &params, a.eps)?;
    eprintln!(
        "{}: relative gap {:.3e} (certification radius {:.3e})",
        a.theorem, t.gap, t.relative_radius
    );
    let csv = || {
        Ok(format!(
            "theorem_id,gap,relative_radius,lhs,rhs\n{},{:e},{:e},{:e},{:e}\n",
            a.theorem, t.gap, t.relative_radius, t.record.lhs.value, t.record.rhs
        ))
    };
    emit(cli, &t, csv, a.out.as_ref())?;
    Ok(exit_for(std::slice::from_ref(&t.record)))
}

fn campaign(cli: &Cli, a: &CampaignArgs) -> Outcome {
    let config = CampaignConfig {
        theorem: a.theorem,
        trials: a.trials,
        base_seed: a.seed,
        eps: a.eps,
        nmax: a.nmax,
        resolve_eps: Some(a.resolve_eps.unwrap_or(a.eps / 100.0)),
    };
    let (report, records) = verifier::run_campaign(&config)?;

    if let Some(path) = &a.out {
        let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
        verifier::write_csv(&records, file).map_err(csv_err)?;
    }
    if let Some(path) = &a.emit_plot_data {
        let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
        verifier::write_plot_data(&records, file).map_err(csv_err)?;
    }

    eprintln!(
        "{}: {} trials, {} confirmed, {} inconclusive ({} equality cases), {} violations, {:.2}s",
        report.theorem_id,
        report.trials,
        report.confirmed,
        report.inconclusive,
        report.inconclusive_equality,
        report.violation_proven,
        report.duration_secs
    );
    eprintln!(
        "min slack {:.6e} at seed {} ({})",
        report.min_slack, report.min_slack_seed, report.min_slack_label
    );
    let violations: Vec<&VerificationRecord> = records
        .iter()
        .filter(|r| r.verdict == Verdict::ViolationProven)
        .collect();
    if !violations.is_empty() {
        eprintln!("proven violations:\n{}", table_header());
        for r in &violations {
            eprintln!("{}", table_row(r));
        }
    }

    let result = json!({ "report": report, "violations": violations });
    emit(cli, &result, || records_csv(&records), None)?;
    Ok(exit_for(&records))
}
