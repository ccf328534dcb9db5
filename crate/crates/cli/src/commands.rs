//! Command pipelines and the JSON result document.

use std::fmt;
use std::sync::Arc;

use hilbnef_core::chern::{discriminant, mumford_slope, ChernCharacter, Slice};
use hilbnef_core::dp1::{self, Dp1Report};
use hilbnef_core::gieseker::{gieseker_wall_with, CriticalDivisorSet, GiesekerWallResult};
use hilbnef_core::hilb::{
    extremality_certificate, intersect, nef_divisor_from_wall, pic_rank1_nef, Extremality,
    HilbCurveClass, HilbDivisorClass, NefStatus,
};
use hilbnef_core::rational::to_pq;
use hilbnef_core::walls::higher_rank_bound;
use hilbnef_core::{Certificate, DivisorClass, Rational, SurfaceData, Wall};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, PresetName, SurfaceConfig};
use crate::workers::{critical_set, worker_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Wall,
    Nef,
    Critdiv,
    Dp1,
}

/// Everything needed to reproduce a result; echoed in every document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: Command,
    pub surface: SurfaceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nef_ray: Option<Vec<i64>>,
}

impl Request {
    pub fn new(command: Command, surface: SurfaceConfig, n: Option<i64>) -> Self {
        Request {
            command,
            surface,
            n,
            twist: None,
            nef_ray: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Engine(hilbnef_core::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Usage(e) => f.write_str(e),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<hilbnef_core::Error> for CliError {
    fn from(e: hilbnef_core::Error) -> Self {
        CliError::Engine(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::Inconclusive => 2,
        }
    }
}

pub struct Outcome {
    pub document: ResultDocument,
    pub verdict: Verdict,
    pub summary: String,
}

impl Outcome {
    pub fn json(&self) -> String {
        self.document.to_json()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallDoc {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_sq: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
}

impl WallDoc {
    pub fn new(w: &Wall) -> Self {
        let (kind, center, radius_sq, beta) = match w {
            Wall::Semicircle { center, radius_sq } => {
                ("semicircle", Some(to_pq(center)), Some(to_pq(radius_sq)), None)
            }
            Wall::Vertical(b) => ("vertical", None, None, Some(to_pq(b))),
            Wall::Everywhere => ("everywhere", None, None, None),
            Wall::Empty => ("empty", None, None, None),
        };
        WallDoc { kind, center, radius_sq, beta }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalDoc {
    pub count: usize,
    pub includes_minus_d: bool,
    pub degenerate: bool,
    pub members: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivisorDoc {
    pub l_part: Vec<String>,
    pub b_half: String,
}

impl DivisorDoc {
    pub fn new(d: &HilbDivisorClass) -> Self {
        DivisorDoc {
            l_part: pqs(&d.l_part),
            b_half: to_pq(&d.b_half_coeff),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCurveDoc {
    pub kind: &'static str,
    pub class: Vec<i64>,
    pub genus: String,
    pub pairing: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalityDoc {
    pub kind: &'static str,
    pub witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub eta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub varrho: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<String>,
    pub h_squared: String,
    pub h_dot_d: String,
    pub d_squared: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckDoc {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dp1Doc {
    pub nef_ray: Vec<i64>,
    pub default_ray: bool,
    pub predicate_count: usize,
    pub n2_extras: Vec<Vec<i64>>,
    pub expected_divisor: DivisorDoc,
    pub all_passed: bool,
    pub checks: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub input: Request,
    pub surface: String,
    pub polarization: Vec<String>,
    pub twist: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall: Option<WallDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<&'static str>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan_holder_unique: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub destabilizers: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_divisors: Option<CriticalDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nef_divisor: Option<DivisorDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_curve: Option<DualCurveDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremality: Option<ExtremalityDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dp1: Option<Dp1Doc>,
    pub diagnostics: Diagnostics,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

pub fn pqs(c: &DivisorClass) -> Vec<String> {
    c.coords.iter().map(to_pq).collect()
}

pub fn ints(c: &DivisorClass) -> Vec<i64> {
    c.to_ints().expect("integral class")
}

/// A built surface and slice for one request.
pub struct Setup {
    pub surface: Arc<SurfaceData>,
    pub slice: Slice,
    pub default_twist: bool,
}

fn require_n(req: &Request) -> Result<i64, CliError> {
    req.n
        .ok_or_else(|| CliError::Usage(format!("{:?} needs --n", req.command).to_lowercase()))
}

fn class_arg(surface: &SurfaceData, v: &[i64], what: &str) -> Result<DivisorClass, CliError> {
    if v.len() != surface.rank() {
        return Err(CliError::Usage(format!(
            "{what} has length {}, expected {}",
            v.len(),
            surface.rank()
        )));
    }
    Ok(DivisorClass::from_ints(v))
}

pub fn setup(req: &Request) -> Result<Setup, CliError> {
    let surface = Arc::new(req.surface.build()?);
    let is_dp1 = req.surface.preset() == PresetName::Dp1;
    let default = if is_dp1 {
        surface.canonical.clone()
    } else if surface.rank() == 1 && surface.effective_generators.len() == 1 {
        -&surface.effective_generators[0]
    } else if req.twist.is_none() {
        return Err(CliError::Usage("this surface has no default twist; pass --twist".into()));
    } else {
        DivisorClass::zero(surface.rank())
    };
    let twist = match &req.twist {
        Some(t) => class_arg(&surface, t, "twist")?,
        None => default.clone(),
    };
    if req.nef_ray.is_some() && !is_dp1 {
        return Err(CliError::Usage("--nef-ray only applies to the dp1 preset".into()));
    }
    let h = if is_dp1 {
        let n = require_n(req)?;
        let ray = nef_ray(req, &surface)?;
        dp1::dp1_slice(surface.clone(), n, &ray)?.h
    } else {
        surface.ample_reference.clone()
    };
    let slice = Slice::new(surface.clone(), h, twist.clone())?;
    Ok(Setup {
        surface,
        slice,
        default_twist: req.twist.is_none() || twist == default,
    })
}

fn nef_ray(req: &Request, surface: &SurfaceData) -> Result<DivisorClass, CliError> {
    match &req.nef_ray {
        Some(r) => class_arg(surface, r, "nef ray"),
        None => Ok(dp1::default_nef_ray()),
    }
}

fn diagnostics(slice: &Slice, n: Option<i64>) -> Diagnostics {
    let v = n.map(|n| ChernCharacter::ideal_sheaf(n, slice.surface.rank()));
    Diagnostics {
        eta: to_pq(&hilbnef_core::gieseker::eta(slice)),
        varrho: n.map(|n| to_pq(&higher_rank_bound(n, slice))),
        discriminant: v
            .as_ref()
            .and_then(|v| discriminant(v, slice).ok())
            .map(|d| to_pq(&d)),
        slope: v
            .as_ref()
            .and_then(|v| mumford_slope(v, slice).finite().map(to_pq)),
        h_squared: to_pq(&slice.d),
        h_dot_d: to_pq(&slice.h_dot_d()),
        d_squared: to_pq(&slice.d_squared()),
    }
}

fn base_document(req: &Request, setup: &Setup, n: Option<i64>) -> ResultDocument {
    ResultDocument {
        input: req.clone(),
        surface: setup.surface.name.clone(),
        polarization: pqs(&setup.slice.h),
        twist: pqs(&setup.slice.d_twist),
        wall: None,
        certificate: None,
        degenerate: setup.slice.is_degenerate(),
        jordan_holder_unique: None,
        destabilizers: Vec::new(),
        critical_divisors: None,
        nef_divisor: None,
        status: None,
        dual_curve: None,
        extremality: None,
        dp1: None,
        diagnostics: diagnostics(&setup.slice, n),
    }
}

fn critical_doc(c: &CriticalDivisorSet) -> CriticalDoc {
    CriticalDoc {
        count: c.len(),
        includes_minus_d: c.includes_minus_d,
        degenerate: c.degenerate,
        members: c.members.iter().map(ints).collect(),
        predicted_count: None,
    }
}

fn fill_wall(doc: &mut ResultDocument, r: &GiesekerWallResult) {
    doc.wall = Some(WallDoc::new(&r.wall));
    doc.certificate = Some(r.certificate.name());
    doc.degenerate = r.degenerate;
    doc.jordan_holder_unique = Some(r.jordan_holder_unique);
    doc.destabilizers = r.destabilizers.iter().map(ints).collect();
}

fn wall_summary(r: &GiesekerWallResult) -> String {
    let w = match &r.wall {
        Wall::Semicircle { center, radius_sq } => {
            format!("center {} radius^2 {}", to_pq(center), to_pq(radius_sq))
        }
        other => WallDoc::new(other).kind.to_string(),
    };
    format!("n = {}: Gieseker wall {w} [{}]", r.n, r.certificate.name())
}

pub fn run(req: &Request) -> Result<Outcome, CliError> {
    match req.command {
        Command::Wall => cmd_wall(req),
        Command::Nef => cmd_nef(req),
        Command::Critdiv => cmd_critdiv(req),
        Command::Dp1 => cmd_dp1(req),
    }
}

/// Re-runs the request echoed in a result document.
pub fn replay(document: &str) -> Result<Outcome, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(document).map_err(|e| CliError::Usage(format!("document: {e}")))?;
    let input = value
        .get("input")
        .cloned()
        .ok_or_else(|| CliError::Usage("document has no input".into()))?;
    let req: Request =
        serde_json::from_value(input).map_err(|e| CliError::Usage(format!("input: {e}")))?;
    run(&req)
}

fn wall_result(setup: &Setup, n: i64) -> Result<(GiesekerWallResult, CriticalDivisorSet), CliError> {
    let crdiv = critical_set(&setup.slice, worker_count())?;
    let r = gieseker_wall_with(&setup.slice, n, &crdiv)?;
    Ok((r, crdiv))
}

pub fn cmd_wall(req: &Request) -> Result<Outcome, CliError> {
    let n = require_n(req)?;
    let setup = setup(req)?;
    let (r, _) = wall_result(&setup, n)?;
    let mut doc = base_document(req, &setup, Some(n));
    fill_wall(&mut doc, &r);
    let verdict = if r.certificate.is_certified() {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(Outcome {
        document: doc,
        verdict,
        summary: wall_summary(&r),
    })
}

fn extremality_doc(e: &Extremality, n: i64) -> ExtremalityDoc {
    ExtremalityDoc {
        kind: e.name(),
        witness: e.witness(n),
        description: match e {
            Extremality::PresetSeries { description, .. } => Some(description.clone()),
            _ => None,
        },
    }
}

fn dual_curve(surface: &SurfaceData, div: &HilbDivisorClass, l: &DivisorClass, n: i64) -> DualCurveDoc {
    let pencil = HilbCurveClass::pencil(surface, l.clone());
    let genus = match &pencil {
        HilbCurveClass::Pencil { genus, .. } => genus.clone(),
        _ => unreachable!(),
    };
    DualCurveDoc {
        kind: "pencil",
        class: ints(l),
        genus: to_pq(&genus),
        pairing: to_pq(&intersect(div, &pencil, n, surface)),
    }
}

pub fn cmd_nef(req: &Request) -> Result<Outcome, CliError> {
    let n = require_n(req)?;
    let setup = setup(req)?;
    let s = &setup.surface;
    let mut doc = base_document(req, &setup, Some(n));
    let rank_one = s.rank() == 1 && s.effective_generators.len() == 1 && setup.default_twist;
    let (divisor, status, extremality, destabilizer, summary) = if rank_one {
        let a = s.effective_generators[0].to_ints().expect("integral generator")[0];
        let res = pic_rank1_nef(&setup.surface, n, a)?;
        let summary = match &res.wall {
            Some(r) => {
                fill_wall(&mut doc, r);
                wall_summary(r)
            }
            None => format!("n = {n}: 2n <= D², the wall is not certified"),
        };
        (res.divisor, res.status, res.extremality, s.effective_generators[0].clone(), summary)
    } else {
        let (r, _) = wall_result(&setup, n)?;
        fill_wall(&mut doc, &r);
        let summary = wall_summary(&r);
        let Some(center) = r.wall.center().cloned().filter(|_| r.certificate.is_certified()) else {
            doc.status = Some(NefStatus::Unknown.name());
            return Ok(Outcome {
                document: doc,
                verdict: Verdict::Inconclusive,
                summary: format!("{summary}; no nef divisor"),
            });
        };
        let divisor = nef_divisor_from_wall(&center, &setup.slice);
        let l = r.destabilizers[0].clone();
        let ext = extremality_certificate(s, &l, n);
        let status = if ext.is_certified() {
            NefStatus::NefAndExtremal
        } else {
            NefStatus::NefOnly
        };
        (divisor, status, ext, l, summary)
    };
    doc.dual_curve = Some(dual_curve(s, &divisor, &destabilizer, n));
    doc.nef_divisor = Some(DivisorDoc::new(&divisor));
    doc.status = Some(status.name());
    doc.extremality = Some(extremality_doc(&extremality, n));
    let verdict = if status == NefStatus::Unknown {
        Verdict::Inconclusive
    } else {
        Verdict::Certified
    };
    let l_part: Vec<String> = pqs(&divisor.l_part);
    Ok(Outcome {
        document: doc,
        verdict,
        summary: format!(
            "{summary}\nnef divisor l_part [{}] b_half {} ({}, {})",
            l_part.join(", "),
            to_pq(&divisor.b_half_coeff),
            status.name(),
            extremality.name()
        ),
    })
}

pub fn cmd_critdiv(req: &Request) -> Result<Outcome, CliError> {
    let setup = setup(req)?;
    let crdiv = critical_set(&setup.slice, worker_count())?;
    let mut doc = base_document(req, &setup, req.n);
    let mut cd = critical_doc(&crdiv);
    if req.surface.preset() == PresetName::Dp1 && setup.default_twist {
        let n = require_n(req)?;
        let ray = nef_ray(req, &setup.surface)?;
        cd.predicted_count = Some(dp1::lemma_critical_set(&setup.surface, n, &ray).0.len());
    }
    doc.critical_divisors = Some(cd);
    let verdict = if crdiv.degenerate {
        Verdict::Inconclusive
    } else {
        Verdict::Certified
    };
    Ok(Outcome {
        document: doc,
        verdict,
        summary: format!(
            "{} critical divisor(s){}",
            crdiv.len(),
            if crdiv.degenerate { " (degenerate twist)" } else { "" }
        ),
    })
}

pub fn dp1_report(req: &Request) -> Result<(Setup, Dp1Report), CliError> {
    let n = require_n(req)?;
    if req.surface.preset() != PresetName::Dp1 {
        return Err(CliError::Usage("dp1 runs on the dp1 preset".into()));
    }
    if req.twist.is_some() {
        return Err(CliError::Usage("dp1 always twists by K".into()));
    }
    let setup = setup(req)?;
    let ray = nef_ray(req, &setup.surface)?;
    let crdiv = critical_set(&setup.slice, worker_count())?;
    let report = dp1::verify_dp1_theorems_with(&setup.slice, n, &ray, crdiv)?;
    Ok((setup, report))
}

pub fn cmd_dp1(req: &Request) -> Result<Outcome, CliError> {
    let (setup, report) = dp1_report(req)?;
    let n = report.n;
    let mut doc = base_document(req, &setup, Some(n));
    fill_wall(&mut doc, &report.wall);
    doc.critical_divisors = Some(critical_doc(&report.critical));
    doc.nef_divisor = Some(DivisorDoc::new(&report.nef_divisor));
    let default_ray = report.nef_ray == dp1::default_nef_ray();
    doc.dp1 = Some(Dp1Doc {
        nef_ray: ints(&report.nef_ray),
        default_ray,
        predicate_count: report.predicate_set.len(),
        n2_extras: report.n2_extras.iter().map(ints).collect(),
        expected_divisor: DivisorDoc::new(&report.expected_divisor),
        all_passed: report.all_passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckDoc {
                name: c.name,
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
    });
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let verdict = if failed.is_empty() && report.wall.certificate != Certificate::Inconclusive {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    let label = if default_ray { "" } else { " (non-default ray: engine output)" };
    let summary = format!(
        "{}\ndp1 n = {n}{label}: {}/{} checks passed{}",
        wall_summary(&report.wall),
        report.checks.len() - failed.len(),
        report.checks.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failed: {}", failed.join(", "))
        }
    );
    Ok(Outcome {
        document: doc,
        verdict,
        summary,
    })
}

/// Decimal rendering for presentation only.
pub fn decimal(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}
