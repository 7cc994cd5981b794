//! Trials, campaigns and tightness measurements.
//!
//! A trial certifies the left-hand side of one bound on one instance,
//! evaluates the right-hand side from certified extrema, and classifies the
//! signed slack against the combined certification radius.

use std::io::Write;
use std::time::Instant;

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundResult, Direction, TheoremId};
use crate::ensembles::{self, BoundaryDraws, GeneratedInstance};
use crate::error::{Error, Precondition, Result};
use crate::extrema::{self, CertifiedExtremum, ExtremumKind};
use crate::poly::{LacunaryKind, PolyClass, Polynomial, ZeroSide, DEFAULT_SNAP_TOL};

/// Samples for the plain-sampling cross-check of proven violations.
pub const ORACLE_SAMPLES: usize = 1_000_000;

/// Relative slack allowed when checking ground-truth zeros against the
/// declared disk, and the looser one for zeros found numerically.
const GROUND_TRUTH_ZERO_TOL: f64 = 1e-12;
const COMPUTED_ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialParams {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub alpha_abs: f64,
    /// Lacunary index to use; taken from the instance when absent.
    pub index: Option<usize>,
}

impl Default for TrialParams {
    fn default() -> Self {
        Self {
            r: 1.0,
            big_r: 1.0,
            alpha_abs: 1.0,
            index: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Confirmed,
    Inconclusive,
    ViolationProven,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub theorem_id: TheoremId,
    pub label: String,
    pub seed: u64,
    pub n: usize,
    pub index: Option<usize>,
    pub k: f64,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub alpha_abs: f64,
    pub lhs: CertifiedExtremum<f64>,
    pub rhs: f64,
    /// Half-width of the range of the RHS over its input enclosures.
    pub rhs_spread: f64,
    /// `lhs - rhs` for lower bounds, `rhs - lhs` for upper bounds.
    pub slack: f64,
    /// `lhs.error_radius + rhs_spread`.
    pub cert_radius: f64,
    pub verdict: Verdict,
    pub precondition_report: Vec<Precondition>,
    /// For proven violations: whether plain sampling agrees.
    pub oracle_confirms: Option<bool>,
}

impl VerificationRecord {
    /// `|slack| <= 2 * cert_radius`: what equality looks like in floating point.
    pub fn consistent_with_equality(&self) -> bool {
        self.slack.abs() <= 2.0 * self.cert_radius
    }

    pub fn relative_gap(&self) -> f64 {
        let scale = self.lhs.value.abs().max(self.rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.lhs.value - self.rhs).abs() / scale
        }
    }

    /// Instances where a zero slack is expected: the labelled extremal
    /// constructions, and single-block polynomials `a z^n + c` (lacunary
    /// index equal to the degree), which attain several of the bounds.
    pub fn is_equality_case(&self) -> bool {
        self.label.starts_with("extremal") || self.index == Some(self.n)
    }

    /// An Inconclusive verdict that equality does not explain.
    pub fn is_unexplained(&self) -> bool {
        self.verdict == Verdict::Inconclusive && !self.is_equality_case()
    }
}

fn classify(slack: f64, radius: f64) -> Verdict {
    if slack >= radius {
        Verdict::Confirmed
    } else if slack <= -radius {
        Verdict::ViolationProven
    } else {
        Verdict::Inconclusive
    }
}

/// What a theorem's left-hand side is.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Lhs {
    Modulus,
    Derivative,
    Polar,
}

/// Circles a theorem reads: its LHS, and the max/min inputs to the RHS.
#[derive(Debug, Clone, Copy)]
struct Layout {
    lhs: Lhs,
    lhs_radius: f64,
    max_radius: f64,
    min_radius: Option<f64>,
}

fn layout(theorem: TheoremId, params: &TrialParams, k: f64) -> Layout {
    use TheoremId::*;
    let (r, big_r) = (params.r, params.big_r);
    let (lhs, lhs_radius, max_radius, min_radius) = match theorem {
        Bernstein1 | ErdosLax2 | Turan3 | Govil4 | Govil5 | Malik6 => {
            (Lhs::Derivative, 1.0, 1.0, None)
        }
        AzizShah7 => (Lhs::Derivative, big_r, r, Some(k)),
        AzizShah8 => (Lhs::Derivative, 1.0, 1.0, Some(k)),
        ThmA9 | ThmB10 => (Lhs::Polar, 1.0, 1.0, Some(k)),
        Thm1_11 | Thm2_14 => (Lhs::Polar, big_r, r, Some(k)),
        Cor1_13 => (Lhs::Polar, big_r, r, Some(1.0)),
        Remark2_12 | Remark4 => (Lhs::Derivative, big_r, r, Some(k)),
        Lemma21_15 => (Lhs::Modulus, r, big_r, Some(k)),
        Growth18 => (Lhs::Modulus, big_r, r, Some(k)),
    };
    Layout {
        lhs,
        lhs_radius,
        max_radius,
        min_radius,
    }
}

/// Certified extremum that also covers the degenerate circle `|z| = 0`.
fn circle_extremum(
    p: &Polynomial<f64>,
    radius: f64,
    eps: f64,
    kind: ExtremumKind,
) -> Result<CertifiedExtremum<f64>> {
    if radius == 0.0 {
        return Ok(CertifiedExtremum {
            value: p.coeff(0).norm(),
            error_radius: 0.0,
            witness_angle: 0.0,
            kind,
            radius,
        });
    }
    extrema::extremum(p, radius, eps, kind)
}

/// Smallest tolerance worth asking for on a circle: well above the
/// evaluation roundoff of `p` there.
fn tolerance_floor(p: &Polynomial<f64>, radius: f64) -> f64 {
    1e3 * f64::EPSILON
        * p.weighted_abs_sum(radius.max(0.0), 0)
            .max(f64::MIN_POSITIVE)
}

struct RhsInputs {
    n: usize,
    class: PolyClass<f64>,
    params: TrialParams,
    abs_an: f64,
    abs_anmu: f64,
}

impl RhsInputs {
    fn evaluate(&self, theorem: TheoremId, max_in: f64, min_in: f64) -> Result<BoundResult<f64>> {
        use TheoremId::*;
        let TrialParams {
            r,
            big_r,
            alpha_abs,
            ..
        } = self.params;
        let (n, class) = (self.n, &self.class);
        let mu = class.kind.index();
        match theorem {
            Bernstein1 | ErdosLax2 | Turan3 | Govil4 | Govil5 | Malik6 => {
                bounds::classical_bound(theorem, n, class, max_in)
            }
            AzizShah7 => bounds::aziz_shah7_upper(n, class, r, big_r, max_in, min_in),
            AzizShah8 => bounds::aziz_shah8_lower(n, class, max_in, min_in),
            ThmA9 => {
                let a = bounds::a_mu(n, class.k, mu, self.abs_an, self.abs_anmu, min_in)?;
                bounds::thm_a_lower(n, class, alpha_abs, max_in, min_in, a)
            }
            ThmB10 => bounds::thm_b_upper(n, class, alpha_abs, max_in, min_in),
            Thm1_11 => {
                let a =
                    bounds::a_mu_prime(n, class.k, mu, big_r, self.abs_an, self.abs_anmu, min_in)?;
                bounds::thm1_lower(n, class, r, big_r, alpha_abs, max_in, min_in, a)
            }
            Remark2_12 => bounds::remark2_lower(n, class, r, big_r, max_in, min_in),
            Cor1_13 => {
                let a = bounds::a_mu_dprime(n, big_r, mu, self.abs_an, self.abs_anmu, min_in)?;
                bounds::cor1_lower(n, class, r, big_r, alpha_abs, max_in, min_in, a)
            }
            Thm2_14 => bounds::thm2_upper(n, class, r, big_r, alpha_abs, max_in, min_in),
            Remark4 => bounds::remark4_upper(n, class, r, big_r, max_in, min_in),
            Lemma21_15 => bounds::lemma21_growth_lower(n, class, r, big_r, max_in, min_in),
            Growth18 => bounds::growth18_lower(n, class, r, big_r, max_in, min_in),
        }
    }

    /// RHS at the centre, plus its largest deviation over the corners of
    /// the input enclosures (max at its ends, min at its ends and centre),
    /// split by input. A corner where the formula degenerates counts as
    /// unbounded deviation.
    fn evaluate_with_spread(
        &self,
        theorem: TheoremId,
        max_in: &CertifiedExtremum<f64>,
        min_in: Option<&CertifiedExtremum<f64>>,
    ) -> Result<Spread> {
        let min_value = min_in.map_or(0.0, |m| m.value);
        let central = self.evaluate(theorem, max_in.value, min_value)?;
        let deviation = |mx: f64, mn: f64| -> Result<f64> {
            match self.evaluate(theorem, mx, mn) {
                Ok(b) => Ok((b.value - central.value).abs()),
                Err(Error::DegenerateDenominator(_)) => Ok(f64::INFINITY),
                Err(e) => Err(e),
            }
        };
        let maxs = [max_in.lower(), max_in.upper()];
        let mins: Vec<f64> = match min_in {
            Some(m) => vec![m.lower(), m.value, m.upper()],
            None => vec![min_value],
        };
        let mut by_max = 0.0f64;
        for &mx in &maxs {
            by_max = by_max.max(deviation(mx, min_value)?);
        }
        let mut by_min = 0.0f64;
        for &mn in &mins {
            by_min = by_min.max(deviation(max_in.value, mn)?);
        }
        let mut total = 0.0f64;
        for &mx in &maxs {
            for &mn in &mins {
                total = total.max(deviation(mx, mn)?);
            }
        }
        Ok(Spread {
            bound: central,
            total,
            by_max,
            by_min,
        })
    }
}

struct Spread {
    bound: BoundResult<f64>,
    total: f64,
    by_max: f64,
    by_min: f64,
}

/// Rounds of tolerance tightening for the RHS inputs.
const TIGHTEN_ROUNDS: usize = 6;

/// Next tolerance for an input whose enclosure moves the RHS by `spread`.
fn tightened(current: f64, spread: f64, target: f64, floor: f64) -> f64 {
    let next = if spread.is_finite() {
        target / (spread / current)
    } else {
        current * 1e-3
    };
    next.min(current / 2.0).max(floor)
}

/// Resolves the lacunary class a theorem is evaluated with.
fn theorem_class(
    theorem: TheoremId,
    instance: &GeneratedInstance<f64>,
    params: &TrialParams,
) -> Result<PolyClass<f64>> {
    let k = instance.poly_class.k;
    let side = theorem.zero_side().unwrap_or(instance.poly_class.side);
    let kind = match theorem.lacunary() {
        None => LacunaryKind::Top(1),
        Some(make) => {
            let want_top = make(1) == LacunaryKind::Top(1);
            let declared = match (instance.poly_class.kind, want_top) {
                (LacunaryKind::Top(i), true) | (LacunaryKind::Bottom(i), false) => Some(i),
                _ => None,
            };
            let index = match params.index.or(declared) {
                Some(i) => i,
                None => {
                    let lac = instance.poly.classify_lacunary(DEFAULT_SNAP_TOL)?;
                    if want_top {
                        lac.mu
                    } else {
                        lac.m_idx
                    }
                }
            };
            make(index)
        }
    };
    Ok(PolyClass { kind, k, side })
}

/// Class-membership checks against the polynomial itself.
fn membership_report(
    theorem: TheoremId,
    instance: &GeneratedInstance<f64>,
    class: &PolyClass<f64>,
) -> Result<Vec<Precondition>> {
    let mut report = Vec::new();
    let p = &instance.poly;
    if theorem.lacunary().is_some() {
        report.push((
            "lacunary shape holds".to_string(),
            class.lacunary_holds(p, DEFAULT_SNAP_TOL),
        ));
    }
    if let Some(side) = theorem.zero_side() {
        let (zeros, tol, name) = if instance.zeros.len() == p.degree() {
            (
                instance.zeros.clone(),
                GROUND_TRUTH_ZERO_TOL,
                "zero side (ground truth)",
            )
        } else {
            (p.roots()?, COMPUTED_ZERO_TOL, "zero side (computed roots)")
        };
        let k = class.k;
        let ok = zeros.iter().all(|w| match side {
            ZeroSide::ZerosInsideClosedDisk => w.norm() <= k * (1.0 + tol),
            ZeroSide::ZeroFreeOpenDisk => w.norm() >= k * (1.0 - tol),
        });
        report.push((name.to_string(), ok));
    }
    Ok(report)
}

/// Runs one bound on one instance.
pub fn run_trial(
    theorem: TheoremId,
    instance: &GeneratedInstance<f64>,
    params: &TrialParams,
    eps: f64,
) -> Result<VerificationRecord> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveTolerance(eps));
    }
    let p = &instance.poly;
    p.require_leading(DEFAULT_SNAP_TOL)?;
    let n = p.degree();
    let class = theorem_class(theorem, instance, params)?;
    let membership = membership_report(theorem, instance, &class)?;
    if membership.iter().any(|(_, ok)| !ok) {
        return Err(Error::PreconditionViolated(membership));
    }

    let layout = layout(theorem, params, class.k);
    let lhs_poly = match layout.lhs {
        Lhs::Modulus => p.clone(),
        Lhs::Derivative => p.derivative(),
        Lhs::Polar => p.polar_derivative(Complex::new(params.alpha_abs, 0.0))?,
    };
    let mu = class.kind.index();
    let inputs = RhsInputs {
        n,
        class,
        params: *params,
        abs_an: p.leading().norm(),
        abs_anmu: p.coeff(n.saturating_sub(mu)).norm(),
    };

    // Input extrema at eps, then tightened by the RHS sensitivity so their
    // combined effect on the RHS stays near eps.
    let max_floor = tolerance_floor(p, layout.max_radius);
    let min_floor = layout.min_radius.map_or(0.0, |rho| tolerance_floor(p, rho));
    let mut max_eps = eps;
    let mut min_eps = eps;
    let mut max_in = circle_extremum(p, layout.max_radius, max_eps, ExtremumKind::Max)?;
    let mut min_in = layout
        .min_radius
        .map(|rho| circle_extremum(p, rho, min_eps, ExtremumKind::Min))
        .transpose()?;
    let mut round = 0;
    let spread = loop {
        round += 1;
        let last = round >= TIGHTEN_ROUNDS;
        let (by_max, by_min) = match inputs.evaluate_with_spread(theorem, &max_in, min_in.as_ref())
        {
            Ok(s) if s.total <= eps || last => break s,
            Ok(s) => (s.by_max, s.by_min),
            // an input enclosure too wide for the formula; the central
            // value sits on the wrong side of a denominator
            Err(Error::DegenerateDenominator(_)) if !last && min_eps > min_floor => {
                (0.0, f64::INFINITY)
            }
            Err(e) => return Err(e),
        };
        let mut changed = false;
        if by_max > eps / 2.0 && max_eps > max_floor {
            max_eps = tightened(max_eps, by_max, eps / 2.0, max_floor);
            max_in = circle_extremum(p, layout.max_radius, max_eps, ExtremumKind::Max)?;
            changed = true;
        }
        if let (Some(rho), true) = (layout.min_radius, by_min > eps / 2.0 && min_eps > min_floor) {
            min_eps = tightened(min_eps, by_min, eps / 2.0, min_floor);
            min_in = Some(circle_extremum(p, rho, min_eps, ExtremumKind::Min)?);
            changed = true;
        }
        if !changed {
            round = TIGHTEN_ROUNDS;
        }
    };
    let bound = spread.bound;
    let spread = spread.total;

    let lhs = circle_extremum(&lhs_poly, layout.lhs_radius, eps, ExtremumKind::Max)?;
    let slack = match bound.direction {
        Direction::LowerBound => lhs.value - bound.value,
        Direction::UpperBound => bound.value - lhs.value,
    };
    let cert_radius = lhs.error_radius + spread;
    let verdict = classify(slack, cert_radius);
    let oracle_confirms = (verdict == Verdict::ViolationProven).then(|| {
        let sampled = extrema::sampled_extremum(
            &lhs_poly,
            layout.lhs_radius,
            ORACLE_SAMPLES,
            ExtremumKind::Max,
        );
        match bound.direction {
            Direction::LowerBound => sampled < bound.value,
            Direction::UpperBound => sampled > bound.value,
        }
    });

    let mut precondition_report = membership;
    precondition_report.extend(bound.precondition_report);
    Ok(VerificationRecord {
        theorem_id: theorem,
        label: instance.label.clone(),
        seed: instance.seed,
        n,
        index: theorem.lacunary().map(|_| mu),
        k: class.k,
        r: params.r,
        big_r: params.big_r,
        alpha_abs: params.alpha_abs,
        lhs,
        rhs: bound.value,
        rhs_spread: spread,
        slack,
        cert_radius,
        verdict,
        precondition_report,
        oracle_confirms,
    })
}

/// Relative gap between certified LHS and RHS, for equality checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tightness {
    pub gap: f64,
    /// Certification radius on the same relative scale as `gap`.
    pub relative_radius: f64,
    pub record: VerificationRecord,
}

pub fn tightness(
    theorem: TheoremId,
    instance: &GeneratedInstance<f64>,
    params: &TrialParams,
    eps: f64,
) -> Result<Tightness> {
    let record = run_trial(theorem, instance, params, eps)?;
    let scale = record.lhs.value.max(record.rhs);
    let relative_radius = if scale > 0.0 {
        record.cert_radius / scale
    } else {
        0.0
    };
    Ok(Tightness {
        gap: record.relative_gap(),
        relative_radius,
        record,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub theorem: TheoremId,
    pub trials: usize,
    pub base_seed: u64,
    pub eps: f64,
    pub nmax: usize,
    /// Re-run inconclusive trials at this tolerance.
    pub resolve_eps: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapStats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub theorem_id: TheoremId,
    pub trials: usize,
    pub confirmed: usize,
    pub inconclusive: usize,
    pub violation_proven: usize,
    /// Inconclusive at `eps` but decided at `resolve_eps`.
    pub resolved: usize,
    /// Inconclusive records on equality-case instances.
    pub inconclusive_equality: usize,
    pub min_slack: f64,
    pub min_slack_seed: u64,
    pub min_slack_label: String,
    pub relative_gap: GapStats,
    /// Violations the plain-sampling cross-check did not reproduce.
    pub oracle_disagreements: usize,
    pub rejection_rate: f64,
    pub duration_secs: f64,
}

/// A sampled trial: the instance, its parameters, and how many parameter
/// draws were rejected on the way.
#[derive(Debug, Clone)]
pub struct TrialSetup {
    pub instance: GeneratedInstance<f64>,
    pub params: TrialParams,
    pub rejections: usize,
}

fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// Uniform on `(0, hi]`.
fn positive<R: Rng>(rng: &mut R, hi: f64) -> f64 {
    hi * (1.0 - rng.gen::<f64>())
}

fn sorted_pair<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> (f64, f64) {
    let a = uniform(rng, lo, hi);
    let b = uniform(rng, lo, hi);
    (a.min(b), a.max(b))
}

fn exp_factor<R: Rng>(rng: &mut R) -> f64 {
    let e: f64 = Exp1.sample(rng);
    1.0 + e
}

/// Draws the instance and parameters of trial `seed`.
///
/// `k` is uniform over the theorem's admissible range intersected with
/// `[0.1, 3]`; `r <= R` come from a sorted uniform pair; `|alpha|` is the
/// theorem's lower limit times `1 + Exp(1)`. The circle-pair lower bounds
/// draw `(k, r, R)` by rejection from `(0, 1.5]^3`.
pub fn trial_setup(theorem: TheoremId, nmax: usize, seed: u64) -> Result<TrialSetup> {
    use TheoremId::*;
    if nmax == 0 {
        return Err(Error::InvalidArgument("nmax must be at least 1".into()));
    }
    let mut rng = ensembles::rng_for(seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = rng.gen_range(1..=nmax);
    let index = if theorem.lacunary().is_some() {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        divisors[rng.gen_range(0..divisors.len())]
    } else {
        1
    };
    let mut rejections = 0;
    let mut params = TrialParams {
        index: theorem.lacunary().map(|_| index),
        ..TrialParams::default()
    };
    let muf = index as i32;

    let k = match theorem {
        Bernstein1 | AzizShah7 | Lemma21_15 => uniform(&mut rng, 0.1, 3.0),
        ErdosLax2 | Govil5 | Malik6 | ThmB10 | Thm2_14 | Remark4 => uniform(&mut rng, 1.0, 3.0),
        Turan3 | Govil4 | AzizShah8 | ThmA9 => uniform(&mut rng, 0.1, 1.0),
        Thm1_11 | Remark2_12 => loop {
            let (k, a, b) = (
                positive(&mut rng, 1.5),
                positive(&mut rng, 1.5),
                positive(&mut rng, 1.5),
            );
            let (r, big_r) = (a.min(b), a.max(b));
            if (0.1..=1.0).contains(&k) && r * big_r >= k * k {
                params.r = r;
                params.big_r = big_r;
                break k;
            }
            rejections += 1;
        },
        Cor1_13 => loop {
            let (a, b) = (positive(&mut rng, 1.5), positive(&mut rng, 1.5));
            let (r, big_r) = (a.min(b), a.max(b));
            if r * big_r >= 1.0 {
                params.r = r;
                params.big_r = big_r;
                break 1.0;
            }
            rejections += 1;
        },
        Growth18 => loop {
            let (k, a, b) = (
                positive(&mut rng, 3.0),
                positive(&mut rng, 3.0),
                positive(&mut rng, 3.0),
            );
            let (r, big_r) = (a.min(b), a.max(b));
            if k >= 0.1 && r >= k {
                params.r = r;
                params.big_r = big_r;
                break k;
            }
            rejections += 1;
        },
    };

    match theorem {
        AzizShah7 => {
            let (r, big_r) = sorted_pair(&mut rng, 0.0, k);
            params.r = r.max(f64::MIN_POSITIVE);
            params.big_r = big_r.max(params.r);
        }
        Thm2_14 | Remark4 | Lemma21_15 => {
            let (r, big_r) = sorted_pair(&mut rng, 0.0, k);
            params.r = r;
            params.big_r = big_r;
            if theorem == Remark4 && params.r == 0.0 {
                params.r = f64::MIN_POSITIVE;
            }
        }
        _ => {}
    }

    params.alpha_abs = match theorem {
        ThmA9 => k.powi(muf) * exp_factor(&mut rng),
        ThmB10 => exp_factor(&mut rng),
        Thm1_11 => k.powi(muf) / params.big_r.powi(muf - 1) * exp_factor(&mut rng),
        Cor1_13 => 1.0 / params.big_r.powi(muf - 1) * exp_factor(&mut rng),
        Thm2_14 => params.big_r * exp_factor(&mut rng),
        _ => 1.0,
    };

    let zero_free = theorem.zero_side() == Some(ZeroSide::ZeroFreeOpenDisk);
    let instance = if zero_free {
        ensembles::random_bottom_lacunary_zerofree(
            n,
            index,
            k,
            2.0 * k,
            seed,
            1.0,
            BoundaryDraws::Exclude,
        )?
    } else {
        ensembles::random_top_lacunary(n, index, k, seed, 1.0)?
    };
    Ok(TrialSetup {
        instance,
        params,
        rejections,
    })
}

/// Runs `config.trials` seeded trials and aggregates them. Records come
/// back in seed order regardless of how the trials were scheduled.
pub fn run_campaign(config: &CampaignConfig) -> Result<(CampaignReport, Vec<VerificationRecord>)> {
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let outcomes: Vec<(VerificationRecord, usize, bool)> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let seed = config.base_seed.wrapping_add(i as u64);
            let setup = trial_setup(config.theorem, config.nmax, seed)?;
            let mut record = run_trial(config.theorem, &setup.instance, &setup.params, config.eps)?;
            let mut resolved = false;
            if let (Verdict::Inconclusive, Some(fine)) = (record.verdict, config.resolve_eps) {
                let again = run_trial(config.theorem, &setup.instance, &setup.params, fine)?;
                resolved = again.verdict != Verdict::Inconclusive;
                record = again;
            }
            Ok((record, setup.rejections, resolved))
        })
        .collect::<Result<_>>()?;

    let mut report = CampaignReport {
        theorem_id: config.theorem,
        trials: config.trials,
        confirmed: 0,
        inconclusive: 0,
        violation_proven: 0,
        resolved: 0,
        inconclusive_equality: 0,
        min_slack: f64::INFINITY,
        min_slack_seed: 0,
        min_slack_label: String::new(),
        relative_gap: GapStats {
            min: f64::INFINITY,
            mean: 0.0,
            max: 0.0,
        },
        oracle_disagreements: 0,
        rejection_rate: 0.0,
        duration_secs: 0.0,
    };
    let mut rejections = 0usize;
    let mut records = Vec::with_capacity(outcomes.len());
    for (record, rejected, resolved) in outcomes {
        match record.verdict {
            Verdict::Confirmed => report.confirmed += 1,
            Verdict::Inconclusive => {
                report.inconclusive += 1;
                if record.is_equality_case() {
                    report.inconclusive_equality += 1;
                }
            }
            Verdict::ViolationProven => report.violation_proven += 1,
        }
        if resolved {
            report.resolved += 1;
        }
        if record.oracle_confirms == Some(false) {
            report.oracle_disagreements += 1;
        }
        // seed order makes the first minimum the smallest seed
        if record.slack < report.min_slack {
            report.min_slack = record.slack;
            report.min_slack_seed = record.seed;
            report.min_slack_label = record.label.clone();
        }
        let gap = record.relative_gap();
        report.relative_gap.min = report.relative_gap.min.min(gap);
        report.relative_gap.max = report.relative_gap.max.max(gap);
        report.relative_gap.mean += gap / config.trials as f64;
        rejections += rejected;
        records.push(record);
    }
    report.rejection_rate = rejections as f64 / (rejections + config.trials) as f64;
    report.duration_secs = start.elapsed().as_secs_f64();
    Ok((report, records))
}

#[derive(Serialize)]
struct CsvRow<'a> {
    theorem_id: String,
    seed: u64,
    n: usize,
    mu_or_m: Option<usize>,
    k: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    alpha_abs: f64,
    lhs: f64,
    lhs_eps: f64,
    rhs: f64,
    slack: f64,
    verdict: &'a str,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "Confirmed",
        Verdict::Inconclusive => "Inconclusive",
        Verdict::ViolationProven => "ViolationProven",
    }
}

/// One CSV row per record: `theorem_id, seed, n, mu_or_m, k, r, R,
/// alpha_abs, lhs, lhs_eps, rhs, slack, verdict`.
pub fn write_csv<W: Write>(records: &[VerificationRecord], writer: W) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(writer);
    for rec in records {
        out.serialize(CsvRow {
            theorem_id: rec.theorem_id.to_string(),
            seed: rec.seed,
            n: rec.n,
            mu_or_m: rec.index,
            k: rec.k,
            r: rec.r,
            big_r: rec.big_r,
            alpha_abs: rec.alpha_abs,
            lhs: rec.lhs.value,
            lhs_eps: rec.lhs.error_radius,
            rhs: rec.rhs,
            slack: rec.slack,
            verdict: verdict_name(rec.verdict),
        })?;
    }
    out.flush()?;
    Ok(())
}

/// Parameter/slack columns for external plotting.
pub fn write_plot_data<W: Write>(
    records: &[VerificationRecord],
    writer: W,
) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record([
        "seed",
        "n",
        "k",
        "r",
        "R",
        "alpha_abs",
        "slack",
        "relative_slack",
    ])?;
    for rec in records {
        let scale = rec
            .lhs
            .value
            .abs()
            .max(rec.rhs.abs())
            .max(f64::MIN_POSITIVE);
        out.write_record(&[
            rec.seed.to_string(),
            rec.n.to_string(),
            rec.k.to_string(),
            rec.r.to_string(),
            rec.big_r.to_string(),
            rec.alpha_abs.to_string(),
            rec.slack.to_string(),
            (rec.slack / scale).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
