//! Right-hand sides of the derivative, polar-derivative and growth bounds.
//!
//! Every evaluator is a pure function of already-certified circle extrema
//! and scalar parameters. Preconditions are checked up front and reported
//! by name; a failed check means no value is produced.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Precondition, Result};
use crate::poly::{LacunaryKind, PolyClass, ZeroSide};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    Bernstein1,
    ErdosLax2,
    Turan3,
    Govil4,
    Govil5,
    Malik6,
    AzizShah7,
    AzizShah8,
    ThmA9,
    ThmB10,
    #[serde(rename = "Thm1_11")]
    Thm1_11,
    #[serde(rename = "Remark2_12")]
    Remark2_12,
    #[serde(rename = "Cor1_13")]
    Cor1_13,
    #[serde(rename = "Thm2_14")]
    Thm2_14,
    Remark4,
    #[serde(rename = "Lemma21_15")]
    Lemma21_15,
    Growth18,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::Bernstein1,
        TheoremId::ErdosLax2,
        TheoremId::Turan3,
        TheoremId::Govil4,
        TheoremId::Govil5,
        TheoremId::Malik6,
        TheoremId::AzizShah7,
        TheoremId::AzizShah8,
        TheoremId::ThmA9,
        TheoremId::ThmB10,
        TheoremId::Thm1_11,
        TheoremId::Remark2_12,
        TheoremId::Cor1_13,
        TheoremId::Thm2_14,
        TheoremId::Remark4,
        TheoremId::Lemma21_15,
        TheoremId::Growth18,
    ];

    /// Short lowercase name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            TheoremId::Bernstein1 => "bernstein1",
            TheoremId::ErdosLax2 => "erdoslax2",
            TheoremId::Turan3 => "turan3",
            TheoremId::Govil4 => "govil4",
            TheoremId::Govil5 => "govil5",
            TheoremId::Malik6 => "malik6",
            TheoremId::AzizShah7 => "azizshah7",
            TheoremId::AzizShah8 => "azizshah8",
            TheoremId::ThmA9 => "thma",
            TheoremId::ThmB10 => "thmb",
            TheoremId::Thm1_11 => "thm1",
            TheoremId::Remark2_12 => "remark2",
            TheoremId::Cor1_13 => "cor1",
            TheoremId::Thm2_14 => "thm2",
            TheoremId::Remark4 => "remark4",
            TheoremId::Lemma21_15 => "lemma21",
            TheoremId::Growth18 => "growth18",
        }
    }

    pub fn direction(self) -> Direction {
        use TheoremId::*;
        match self {
            Bernstein1 | ErdosLax2 | Malik6 | AzizShah7 | ThmB10 | Thm2_14 | Remark4 => {
                Direction::UpperBound
            }
            Turan3 | Govil4 | Govil5 | AzizShah8 | ThmA9 | Thm1_11 | Remark2_12 | Cor1_13
            | Lemma21_15 | Growth18 => Direction::LowerBound,
        }
    }

    /// Side of the zero constraint the bound is stated for, if any.
    pub fn zero_side(self) -> Option<ZeroSide> {
        use TheoremId::*;
        match self {
            Bernstein1 => None,
            Turan3 | Govil4 | Govil5 | AzizShah8 | ThmA9 | Thm1_11 | Remark2_12 | Cor1_13
            | Growth18 => Some(ZeroSide::ZerosInsideClosedDisk),
            ErdosLax2 | Malik6 | AzizShah7 | ThmB10 | Thm2_14 | Remark4 | Lemma21_15 => {
                Some(ZeroSide::ZeroFreeOpenDisk)
            }
        }
    }

    /// Lacunary shape the bound is stated for; `None` for the classical
    /// bounds that take no index.
    pub fn lacunary(self) -> Option<fn(usize) -> LacunaryKind> {
        use TheoremId::*;
        match self {
            Bernstein1 | ErdosLax2 | Turan3 | Govil4 | Govil5 | Malik6 => None,
            AzizShah8 | ThmA9 | Thm1_11 | Remark2_12 | Cor1_13 | Growth18 => {
                Some(LacunaryKind::Top)
            }
            AzizShah7 | ThmB10 | Thm2_14 | Remark4 | Lemma21_15 => Some(LacunaryKind::Bottom),
        }
    }

    pub fn uses_alpha(self) -> bool {
        matches!(
            self,
            TheoremId::ThmA9
                | TheoremId::ThmB10
                | TheoremId::Thm1_11
                | TheoremId::Cor1_13
                | TheoremId::Thm2_14
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TheoremId::Thm1_11 => "Thm1_11",
            TheoremId::Remark2_12 => "Remark2_12",
            TheoremId::Cor1_13 => "Cor1_13",
            TheoremId::Thm2_14 => "Thm2_14",
            TheoremId::Lemma21_15 => "Lemma21_15",
            other => return write!(f, "{other:?}"),
        };
        f.write_str(name)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts the short name or the full identifier, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.short_name() == wanted || id.to_string().to_ascii_lowercase() == wanted)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    LowerBound,
    UpperBound,
}

/// The quantity a bound estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Target<T> {
    MaxPolarOnCircle(T),
    MaxDerivOnCircle(T),
    MaxModulusOnCircle(T),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult<T> {
    pub theorem_id: TheoremId,
    pub direction: Direction,
    pub target: Target<T>,
    pub value: T,
    pub precondition_report: Vec<Precondition>,
}

/// The coefficient-dependent correction ratios of the refined lower bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AQuantities<T> {
    pub a_mu: T,
    pub a_mu_prime: T,
    pub a_mu_dprime: T,
}

impl<T: Scalar> AQuantities<T> {
    /// `min_k` is the minimum of `|p|` on `|z| = k`, `min_1` on `|z| = 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn compute(
        n: usize,
        k: T,
        mu: usize,
        big_r: T,
        abs_an: T,
        abs_anmu: T,
        min_k: T,
        min_1: T,
    ) -> Result<Self> {
        Ok(Self {
            a_mu: a_mu(n, k, mu, abs_an, abs_anmu, min_k)?,
            a_mu_prime: a_mu_prime(n, k, mu, big_r, abs_an, abs_anmu, min_k)?,
            a_mu_dprime: a_mu_dprime(n, big_r, mu, abs_an, abs_anmu, min_1)?,
        })
    }
}

fn num<T: Scalar>(n: usize) -> T {
    T::from_usize_lossy(n)
}

fn positive_denominator<T: Scalar>(den: T) -> Result<()> {
    if den > T::zero() && den.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateDenominator(den.to_f64_lossy()))
    }
}

pub fn a_mu<T: Scalar>(n: usize, k: T, mu: usize, abs_an: T, abs_anmu: T, m_min: T) -> Result<T> {
    a_mu_prime(n, k, mu, T::one(), abs_an, abs_anmu, m_min)
}

pub fn a_mu_prime<T: Scalar>(
    n: usize,
    k: T,
    mu: usize,
    big_r: T,
    abs_an: T,
    abs_anmu: T,
    m_min: T,
) -> Result<T> {
    if !(k > T::zero()) || !(big_r > T::zero()) {
        return Err(Error::InvalidArgument("k and R must be positive".into()));
    }
    let (nf, muf) = (num::<T>(n), num::<T>(mu));
    let excess = abs_an - m_min / k.powi(n as i32);
    let den = nf * big_r * excess * k.powi(mu as i32 - 1) + muf * abs_anmu;
    positive_denominator(den)?;
    let numer = nf * excess * k.powi(2 * mu as i32) / big_r.powi(mu as i32)
        + muf * abs_anmu * k.powi(mu as i32 - 1) / big_r.powi(mu as i32 - 1);
    Ok(numer / den)
}

pub fn a_mu_dprime<T: Scalar>(
    n: usize,
    big_r: T,
    mu: usize,
    abs_an: T,
    abs_anmu: T,
    m_min: T,
) -> Result<T> {
    if !(big_r > T::zero()) {
        return Err(Error::InvalidArgument("R must be positive".into()));
    }
    let (nf, muf) = (num::<T>(n), num::<T>(mu));
    let excess = abs_an - m_min;
    let den = nf * big_r * excess + muf * abs_anmu;
    positive_denominator(den)?;
    let numer = nf / big_r.powi(mu as i32) * excess + muf / big_r.powi(mu as i32 - 1) * abs_anmu;
    Ok(numer / den)
}

/// Collects named preconditions; refuses if any failed.
struct Checks {
    report: Vec<Precondition>,
}

impl Checks {
    fn new() -> Self {
        Self { report: Vec::new() }
    }

    fn require(&mut self, name: &str, ok: bool) -> &mut Self {
        self.report.push((name.to_string(), ok));
        self
    }

    fn side<T: Scalar>(&mut self, class: &PolyClass<T>, side: ZeroSide) -> &mut Self {
        let name = match side {
            ZeroSide::ZerosInsideClosedDisk => "zeros in |z| <= k",
            ZeroSide::ZeroFreeOpenDisk => "no zeros in |z| < k",
        };
        self.require(name, class.side == side)
    }

    fn kind<T: Scalar>(&mut self, class: &PolyClass<T>, top: bool, n: usize) -> &mut Self {
        let (name, ok) = match (class.kind, top) {
            (LacunaryKind::Top(_), true) => ("top-lacunary class", true),
            (LacunaryKind::Bottom(_), false) => ("bottom-lacunary class", true),
            (_, true) => ("top-lacunary class", false),
            (_, false) => ("bottom-lacunary class", false),
        };
        self.require(name, ok);
        let idx = class.kind.index();
        self.require("1 <= index <= n", idx >= 1 && idx <= n)
    }

    fn extrema<T: Scalar>(&mut self, values: &[T]) -> &mut Self {
        let ok = values.iter().all(|v| v.is_finite() && *v >= T::zero());
        self.require("extrema finite and non-negative", ok)
    }

    fn finish(&mut self) -> Result<Vec<Precondition>> {
        let report = std::mem::take(&mut self.report);
        if report.iter().all(|(_, ok)| *ok) {
            Ok(report)
        } else {
            Err(Error::PreconditionViolated(report))
        }
    }
}

fn result<T: Scalar>(
    theorem_id: TheoremId,
    target: Target<T>,
    value: T,
    precondition_report: Vec<Precondition>,
) -> Result<BoundResult<T>> {
    if !value.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "{theorem_id} evaluated to a non-finite value"
        )));
    }
    Ok(BoundResult {
        theorem_id,
        direction: theorem_id.direction(),
        target,
        value,
        precondition_report,
    })
}

/// The six classical bounds on `max_{|z|=1} |p'|` in terms of
/// `max_{|z|=1} |p|`. For `Bernstein1` the class is ignored.
pub fn classical_bound<T: Scalar>(
    theorem_id: TheoremId,
    n: usize,
    class: &PolyClass<T>,
    max_on_unit: T,
) -> Result<BoundResult<T>> {
    let (nf, k, one) = (num::<T>(n), class.k, T::one());
    let mut checks = Checks::new();
    checks.require("n >= 1", n >= 1).extrema(&[max_on_unit]);
    let factor = match theorem_id {
        TheoremId::Bernstein1 => nf,
        TheoremId::ErdosLax2 => {
            checks
                .side(class, ZeroSide::ZeroFreeOpenDisk)
                .require("k >= 1", k >= one);
            nf / T::lit(2.0)
        }
        TheoremId::Turan3 => {
            checks
                .side(class, ZeroSide::ZerosInsideClosedDisk)
                .require("k <= 1", k <= one);
            nf / T::lit(2.0)
        }
        TheoremId::Govil4 => {
            checks
                .side(class, ZeroSide::ZerosInsideClosedDisk)
                .require("0 < k <= 1", k > T::zero() && k <= one);
            nf / (one + k)
        }
        TheoremId::Govil5 => {
            checks
                .side(class, ZeroSide::ZerosInsideClosedDisk)
                .require("k >= 1", k >= one);
            nf / (one + k.powi(n as i32))
        }
        TheoremId::Malik6 => {
            checks
                .side(class, ZeroSide::ZeroFreeOpenDisk)
                .require("k >= 1", k >= one);
            nf / (one + k)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "{other} is not a classical bound"
            )))
        }
    };
    let report = checks.finish()?;
    result(
        theorem_id,
        Target::MaxDerivOnCircle(one),
        factor * max_on_unit,
        report,
    )
}

/// `n R^{mu-1} (R^mu + k^mu)^{n/mu - 1} / (r^mu + k^mu)^{n/mu}` times
/// `(max_r - min_k)`, an upper bound on `max_{|z|=R} |p'|`.
pub fn aziz_shah7_upper<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    max_r: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let report = Checks::new()
        .side(class, ZeroSide::ZeroFreeOpenDisk)
        .kind(class, false, n)
        .require("0 < r <= R <= k", r > T::zero() && r <= big_r && big_r <= k)
        .extrema(&[max_r, min_k])
        .finish()?;
    let mu = class.kind.index();
    let value = growth_factor(n, mu, k, r, big_r) * (max_r - min_k);
    result(
        TheoremId::AzizShah7,
        Target::MaxDerivOnCircle(big_r),
        value,
        report,
    )
}

/// `n R^{mu-1} (R^mu + k^mu)^{n/mu - 1} / (r^mu + k^mu)^{n/mu}`.
fn growth_factor<T: Scalar>(n: usize, mu: usize, k: T, r: T, big_r: T) -> T {
    let (nf, muf) = (num::<T>(n), num::<T>(mu));
    let km = k.powi(mu as i32);
    let outer = big_r.powi(mu as i32) + km;
    let inner = r.powi(mu as i32) + km;
    nf * big_r.powi(mu as i32 - 1) * outer.powf(nf / muf - T::one()) / inner.powf(nf / muf)
}

/// `n / (1 + k^mu) (max_1 + min_k / k^{n-mu})`, a lower bound on
/// `max_{|z|=1} |p'|`.
pub fn aziz_shah8_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    max_1: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let report = Checks::new()
        .side(class, ZeroSide::ZerosInsideClosedDisk)
        .kind(class, true, n)
        .require("0 < k <= 1", k > T::zero() && k <= T::one())
        .extrema(&[max_1, min_k])
        .finish()?;
    let mu = class.kind.index();
    let km = k.powi(mu as i32);
    let value = num::<T>(n) / (T::one() + km) * (max_1 + min_k / k.powi((n - mu) as i32));
    result(
        TheoremId::AzizShah8,
        Target::MaxDerivOnCircle(T::one()),
        value,
        report,
    )
}

/// Four-term lower bound on `max_{|z|=1} |D_alpha p|` for polynomials with
/// all zeros in `|z| <= k <= 1`.
pub fn thm_a_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    abs_alpha: T,
    max_1: T,
    min_k: T,
    a_mu: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let mu = class.kind.index();
    let km = k.powi(mu as i32);
    let report = Checks::new()
        .side(class, ZeroSide::ZerosInsideClosedDisk)
        .kind(class, true, n)
        .require("0 < k <= 1", k > T::zero() && k <= T::one())
        .require("|alpha| >= k^mu", abs_alpha >= km)
        .require("A_mu finite", a_mu.is_finite())
        .extrema(&[max_1, min_k])
        .finish()?;
    let nf = num::<T>(n);
    let one = T::one();
    let den = one + km;
    let value = nf * (abs_alpha - km) / den * max_1
        + nf * (abs_alpha + one) / (k.powi((n - mu) as i32) * den) * min_k
        + nf * (km - a_mu) / den * max_1
        + nf * (a_mu - km) / (k.powi(n as i32) * den) * min_k;
    result(
        TheoremId::ThmA9,
        Target::MaxPolarOnCircle(one),
        value,
        report,
    )
}

/// `n / (1 + k^mu) [(|alpha| + k^mu) max_1 - (|alpha| - 1) min_k]`, an upper
/// bound on `max_{|z|=1} |D_alpha p|` for `p != 0` in `|z| < k`, `k >= 1`.
pub fn thm_b_upper<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    abs_alpha: T,
    max_1: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let one = T::one();
    let report = Checks::new()
        .side(class, ZeroSide::ZeroFreeOpenDisk)
        .kind(class, false, n)
        .require("k >= 1", k >= one)
        .require("|alpha| >= 1", abs_alpha >= one)
        .extrema(&[max_1, min_k])
        .finish()?;
    let km = k.powi(class.kind.index() as i32);
    let value = num::<T>(n) / (one + km) * ((abs_alpha + km) * max_1 - (abs_alpha - one) * min_k);
    result(
        TheoremId::ThmB10,
        Target::MaxPolarOnCircle(one),
        value,
        report,
    )
}

/// Which minimum enters the last term of the circle-pair polar bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LastTermMin {
    OnK,
    OnR,
}

#[allow(clippy::too_many_arguments)]
fn thm1_value<T: Scalar>(
    n: usize,
    k: T,
    mu: usize,
    r: T,
    big_r: T,
    abs_alpha: T,
    max_r: T,
    min_k: T,
    min_last: T,
    a_prime: T,
) -> T {
    let (nf, muf) = (num::<T>(n), num::<T>(mu));
    let km = k.powi(mu as i32);
    let rm = big_r.powi(mu as i32);
    let rm1 = big_r.powi(mu as i32 - 1);
    let outer = rm + km;
    let inner = r.powi(mu as i32) + km;
    let ratio = outer.powf(nf / muf - T::one()) / inner.powf(nf / muf);
    let bracket = (big_r / r).powi(n as i32) - (outer / inner).powf(nf / muf);
    nf * (rm1 * abs_alpha - km) * ratio * max_r
        + nf * (rm1 * abs_alpha + rm) / (k.powi((n - mu) as i32) * outer) * min_k
        + nf * (km - rm * a_prime) * ratio * max_r
        + nf * big_r.powi(n as i32) * (rm * a_prime - km) / (k.powi(n as i32) * outer) * min_k
        + nf * rm1 / outer * (abs_alpha - big_r * a_prime) * bracket * min_last
}

#[allow(clippy::too_many_arguments)]
fn thm1_checked<T: Scalar>(
    theorem_id: TheoremId,
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    abs_alpha: T,
    max_r: T,
    min_k: T,
    last: (LastTermMin, T),
    a_prime: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let mu = class.kind.index();
    let one = T::one();
    let mut checks = Checks::new();
    checks
        .side(class, ZeroSide::ZerosInsideClosedDisk)
        .kind(class, true, n)
        .require("0 < k <= 1", k > T::zero() && k <= one);
    let k_eff = if theorem_id == TheoremId::Cor1_13 {
        one
    } else {
        k
    };
    let (alpha_name, r_name) = if theorem_id == TheoremId::Cor1_13 {
        ("|alpha| >= 1 / R^(mu-1)", "rR >= 1")
    } else {
        ("|alpha| >= k^mu / R^(mu-1)", "rR >= k^2")
    };
    checks
        .require("0 < r <= R", r > T::zero() && r <= big_r)
        .require(r_name, r * big_r >= k_eff * k_eff)
        .require(
            alpha_name,
            abs_alpha >= k_eff.powi(mu as i32) / big_r.powi(mu as i32 - 1),
        )
        .require("A-quantity finite", a_prime.is_finite())
        .extrema(&[max_r, min_k, last.1]);
    let report = checks.finish()?;
    let min_last = match last.0 {
        LastTermMin::OnK => min_k,
        LastTermMin::OnR => last.1,
    };
    let value = thm1_value(
        n, k_eff, mu, r, big_r, abs_alpha, max_r, min_k, min_last, a_prime,
    );
    result(theorem_id, Target::MaxPolarOnCircle(big_r), value, report)
}

/// Five-term lower bound on `max_{|z|=R} |D_alpha p|` in terms of
/// `max_{|z|=r} |p|` and `min_{|z|=k} |p|`.
#[allow(clippy::too_many_arguments)]
pub fn thm1_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    abs_alpha: T,
    max_r: T,
    min_k: T,
    a_mu_prime: T,
) -> Result<BoundResult<T>> {
    thm1_checked(
        TheoremId::Thm1_11,
        n,
        class,
        r,
        big_r,
        abs_alpha,
        max_r,
        min_k,
        (LastTermMin::OnK, min_k),
        a_mu_prime,
    )
}

/// Variant of [`thm1_lower`] whose last term uses `min_{|z|=R} |p|`, as
/// written at the end of the proof. Kept for comparison only.
#[allow(clippy::too_many_arguments)]
pub fn thm1_lower_proof_display<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    abs_alpha: T,
    max_r: T,
    min_k: T,
    min_big_r: T,
    a_mu_prime: T,
) -> Result<BoundResult<T>> {
    thm1_checked(
        TheoremId::Thm1_11,
        n,
        class,
        r,
        big_r,
        abs_alpha,
        max_r,
        min_k,
        (LastTermMin::OnR, min_big_r),
        a_mu_prime,
    )
}

/// The `|alpha| -> infinity` limit of [`thm1_lower`] divided by `|alpha|`:
/// a lower bound on `max_{|z|=R} |p'|`.
pub fn remark2_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    max_r: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let mu = class.kind.index();
    let report = Checks::new()
        .side(class, ZeroSide::ZerosInsideClosedDisk)
        .kind(class, true, n)
        .require("0 < k <= 1", k > T::zero() && k <= T::one())
        .require("0 < r <= R", r > T::zero() && r <= big_r)
        .require("rR >= k^2", r * big_r >= k * k)
        .extrema(&[max_r, min_k])
        .finish()?;
    let (nf, muf) = (num::<T>(n), num::<T>(mu));
    let km = k.powi(mu as i32);
    let rm1 = big_r.powi(mu as i32 - 1);
    let outer = big_r.powi(mu as i32) + km;
    let inner = r.powi(mu as i32) + km;
    let bracket = (big_r / r).powi(n as i32) - (outer / inner).powf(nf / muf);
    let value = growth_factor(n, mu, k, r, big_r) * max_r
        + nf * rm1 / (k.powi((n - mu) as i32) * outer) * min_k
        + nf * rm1 / outer * bracket * min_k;
    result(
        TheoremId::Remark2_12,
        Target::MaxDerivOnCircle(big_r),
        value,
        report,
    )
}

/// [`thm1_lower`] at `k = 1` with `A''_mu`; `min_1` is the minimum of `|p|`
/// on the unit circle.
#[allow(clippy::too_many_arguments)]
pub fn cor1_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    abs_alpha: T,
    max_r: T,
    min_1: T,
    a_mu_dprime: T,
) -> Result<BoundResult<T>> {
    thm1_checked(
        TheoremId::Cor1_13,
        n,
        class,
        r,
        big_r,
        abs_alpha,
        max_r,
        min_1,
        (LastTermMin::OnK, min_1),
        a_mu_dprime,
    )
}

/// Upper bound on `max_{|z|=R} |D_alpha p|` for `p != 0` in `|z| < k`,
/// `k >= 1`, `0 <= r <= R <= k`.
#[allow(clippy::too_many_arguments)]
pub fn thm2_upper<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    abs_alpha: T,
    max_r: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let report = Checks::new()
        .side(class, ZeroSide::ZeroFreeOpenDisk)
        .kind(class, false, n)
        .require("k >= 1", k >= T::one())
        .require(
            "0 <= r <= R <= k",
            r >= T::zero() && r <= big_r && big_r <= k,
        )
        .require("|alpha| >= R", abs_alpha >= big_r)
        .extrema(&[max_r, min_k])
        .finish()?;
    let m = class.kind.index();
    let (nf, mf) = (num::<T>(n), num::<T>(m));
    let km = k.powi(m as i32);
    let outer = big_r.powi(m as i32) + km;
    let growth = (outer / (r.powi(m as i32) + km)).powf(nf / mf);
    let rm1a = big_r.powi(m as i32 - 1) * abs_alpha;
    let value = nf * (rm1a + km) / outer * (growth * max_r - (growth - T::one()) * min_k)
        - nf * (rm1a - big_r.powi(m as i32)) / outer * min_k;
    result(
        TheoremId::Thm2_14,
        Target::MaxPolarOnCircle(big_r),
        value,
        report,
    )
}

/// The `|alpha| -> infinity` limit of [`thm2_upper`] divided by `|alpha|`.
pub fn remark4_upper<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    max_r: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let report = Checks::new()
        .side(class, ZeroSide::ZeroFreeOpenDisk)
        .kind(class, false, n)
        .require("k >= 1", k >= T::one())
        .require("0 < r <= R <= k", r > T::zero() && r <= big_r && big_r <= k)
        .extrema(&[max_r, min_k])
        .finish()?;
    let m = class.kind.index();
    let value = growth_factor(n, m, k, r, big_r) * (max_r - min_k);
    result(
        TheoremId::Remark4,
        Target::MaxDerivOnCircle(big_r),
        value,
        report,
    )
}

/// Lower bound on `max_{|z|=r} |p|` from `max_{|z|=R} |p|` and
/// `min_{|z|=k} |p|` for `p != 0` in `|z| < k`, `0 <= r <= R <= k`.
pub fn lemma21_growth_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    max_big_r: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let report = Checks::new()
        .side(class, ZeroSide::ZeroFreeOpenDisk)
        .kind(class, false, n)
        .require("k > 0", k > T::zero())
        .require(
            "0 <= r <= R <= k",
            r >= T::zero() && r <= big_r && big_r <= k,
        )
        .extrema(&[max_big_r, min_k])
        .finish()?;
    let m = class.kind.index();
    let (nf, mf) = (num::<T>(n), num::<T>(m));
    let km = k.powi(m as i32);
    let shrink = ((r.powi(m as i32) + km) / (big_r.powi(m as i32) + km)).powf(nf / mf);
    let value = shrink * max_big_r + (T::one() - shrink) * min_k;
    result(
        TheoremId::Lemma21_15,
        Target::MaxModulusOnCircle(r),
        value,
        report,
    )
}

/// Lower bound on `max_{|z|=R} |p|` from `max_{|z|=r} |p|` and
/// `min_{|z|=k} |p|` for polynomials with all zeros in `|z| <= k`.
///
/// Obtained by applying [`lemma21_growth_lower`] to the conjugate
/// reciprocal on radii `1/R <= 1/r <= 1/k`, so it needs `k <= r`.
pub fn growth18_lower<T: Scalar>(
    n: usize,
    class: &PolyClass<T>,
    r: T,
    big_r: T,
    max_r: T,
    min_k: T,
) -> Result<BoundResult<T>> {
    let k = class.k;
    let report = Checks::new()
        .side(class, ZeroSide::ZerosInsideClosedDisk)
        .kind(class, true, n)
        .require("k > 0", k > T::zero())
        .require("0 < r <= R", r > T::zero() && r <= big_r)
        .require("k <= r", k <= r)
        .extrema(&[max_r, min_k])
        .finish()?;
    let mu = class.kind.index();
    let (nf, muf) = (num::<T>(n), num::<T>(mu));
    let km = k.powi(mu as i32);
    let growth = ((big_r.powi(mu as i32) + km) / (r.powi(mu as i32) + km)).powf(nf / muf);
    let value = growth * max_r + ((big_r / r).powi(n as i32) - growth) * min_k;
    result(
        TheoremId::Growth18,
        Target::MaxModulusOnCircle(big_r),
        value,
        report,
    )
}
