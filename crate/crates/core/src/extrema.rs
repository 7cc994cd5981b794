//! Certified max and min of `|p|` on a circle `|z| = R`.
//!
//! Along the circle `f(theta) = |p(R e^{i theta})|` is `L`-Lipschitz with
//! `L = sum j |a_j| R^j`, and `g = f^2` has `|g''| <= 2 (S0 S2 + S1^2)` where
//! `Sk = sum j^k |a_j| R^j`. A cell `[a, b]` with sampled ends therefore has
//! two rigorous bounds on its interior extremum:
//!
//! * first order:  `max f <= (f(a) + f(b) + L h) / 2`,
//! * second order: `max g <= max(g(a), g(b)) + C h^2 / 8`,
//!
//! and symmetrically for the minimum. Cells are bisected breadth-first
//! until every surviving cell is within `2 eps` of the incumbent. The
//! golden-section pass at the end only moves the witness.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Hard cap on polynomial evaluations per extremum.
pub const MAX_EVALUATIONS: u64 = 100_000_000;

const GOLDEN_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

/// Enclosure `[value - error_radius, value + error_radius]` of an extremum
/// of `|p|` on `|z| = radius`, with the angle where it was observed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedExtremum<T> {
    pub value: T,
    pub error_radius: T,
    pub witness_angle: T,
    pub kind: ExtremumKind,
    pub radius: T,
}

impl<T: Scalar> CertifiedExtremum<T> {
    /// Lower end of the enclosure, clamped at zero.
    pub fn lower(&self) -> T {
        (self.value - self.error_radius).max(T::zero())
    }

    pub fn upper(&self) -> T {
        self.value + self.error_radius
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lower() && x <= self.upper()
    }
}

/// `L = sum j |a_j| R^j`, a bound on `|d/dtheta p(R e^{i theta})|`.
pub fn theta_lipschitz<T: Scalar>(p: &Polynomial<T>, radius: T) -> Result<T> {
    check_radius(radius)?;
    Ok(p.weighted_abs_sum(radius, 1))
}

pub fn max_modulus<T: Scalar>(
    p: &Polynomial<T>,
    radius: T,
    eps: T,
) -> Result<CertifiedExtremum<T>> {
    certify(p, radius, eps, ExtremumKind::Max)
}

pub fn min_modulus<T: Scalar>(
    p: &Polynomial<T>,
    radius: T,
    eps: T,
) -> Result<CertifiedExtremum<T>> {
    certify(p, radius, eps, ExtremumKind::Min)
}

pub fn extremum<T: Scalar>(
    p: &Polynomial<T>,
    radius: T,
    eps: T,
    kind: ExtremumKind,
) -> Result<CertifiedExtremum<T>> {
    certify(p, radius, eps, kind)
}

/// Plain uniform sampling of `|p|` on the circle. No certificate; used as a
/// cross-check on proven violations.
pub fn sampled_extremum<T: Scalar>(
    p: &Polynomial<T>,
    radius: T,
    samples: usize,
    kind: ExtremumKind,
) -> T {
    let step = T::TAU() / T::from_usize_lossy(samples);
    let values = (0..samples).map(|i| modulus_at(p, radius, step * T::from_usize_lossy(i)));
    match kind {
        ExtremumKind::Max => values.fold(T::neg_infinity(), T::max),
        ExtremumKind::Min => values.fold(T::infinity(), T::min),
    }
}

fn check_radius<T: Scalar>(radius: T) -> Result<()> {
    if radius > T::zero() && radius.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius(radius.to_f64_lossy()))
    }
}

fn modulus_at<T: Scalar>(p: &Polynomial<T>, radius: T, theta: T) -> T {
    p.eval(Complex::from_polar(radius, theta)).norm()
}

#[derive(Clone, Copy)]
struct Cell<T> {
    a: T,
    b: T,
    fa: T,
    fb: T,
}

/// Orientation helper: for `Min` everything is mirrored so the search code
/// only ever maximizes "better" values.
struct Goal {
    kind: ExtremumKind,
}

impl Goal {
    fn better<T: Scalar>(&self, x: T, y: T) -> bool {
        match self.kind {
            ExtremumKind::Max => x > y,
            ExtremumKind::Min => x < y,
        }
    }

    /// Most optimistic value `|p|` can take inside the cell.
    fn cell_bound<T: Scalar>(&self, cell: &Cell<T>, lipschitz: T, curvature: T) -> T {
        let h = cell.b - cell.a;
        let two = T::lit(2.0);
        let eighth = T::lit(0.125);
        match self.kind {
            ExtremumKind::Max => {
                let first = (cell.fa + cell.fb + lipschitz * h) / two;
                let g = (cell.fa * cell.fa).max(cell.fb * cell.fb);
                let second = (g + curvature * h * h * eighth).sqrt();
                first.min(second)
            }
            ExtremumKind::Min => {
                let first = (cell.fa + cell.fb - lipschitz * h) / two;
                let g = (cell.fa * cell.fa).min(cell.fb * cell.fb);
                let second = (g - curvature * h * h * eighth).max(T::zero()).sqrt();
                first.max(second).max(T::zero())
            }
        }
    }

    /// Whether `bound` is within `slack` of `best` so the cell can be closed.
    fn settled<T: Scalar>(&self, bound: T, best: T, slack: T) -> bool {
        match self.kind {
            ExtremumKind::Max => bound <= best + slack,
            ExtremumKind::Min => bound >= best - slack,
        }
    }
}

fn certify<T: Scalar>(
    p: &Polynomial<T>,
    radius: T,
    eps: T,
    kind: ExtremumKind,
) -> Result<CertifiedExtremum<T>> {
    check_radius(radius)?;
    if !(eps > T::zero() && eps.is_finite()) {
        return Err(Error::NonPositiveTolerance(eps.to_f64_lossy()));
    }
    let goal = Goal { kind };
    let s0 = p.weighted_abs_sum(radius, 0);
    let lipschitz = p.weighted_abs_sum(radius, 1);
    let s2 = p.weighted_abs_sum(radius, 2);
    let curvature = T::lit(2.0) * (s0 * s2 + lipschitz * lipschitz);
    let slack = T::lit(2.0) * eps;

    let initial = 64usize.max(16 * (p.degree() + 1));
    let step = T::TAU() / T::from_usize_lossy(initial);
    let samples: Vec<T> = (0..=initial)
        .map(|i| {
            let theta = if i == initial {
                T::zero()
            } else {
                step * T::from_usize_lossy(i)
            };
            modulus_at(p, radius, theta)
        })
        .collect();
    let mut evaluations = initial as u64;

    // grid incumbent, ties to the smallest angle
    let mut best = samples[0];
    let mut best_theta = T::zero();
    let mut best_width = step;
    for (i, &f) in samples.iter().enumerate().take(initial) {
        if goal.better(f, best) {
            best = f;
            best_theta = step * T::from_usize_lossy(i);
        }
    }

    let mut active: Vec<Cell<T>> = (0..initial)
        .map(|i| Cell {
            a: step * T::from_usize_lossy(i),
            b: step * T::from_usize_lossy(i + 1),
            fa: samples[i],
            fb: samples[i + 1],
        })
        .collect();
    // most optimistic bound over cells closed so far
    let mut closed_bound = best;

    while !active.is_empty() {
        let mut next = Vec::new();
        let mut midpoints = Vec::new();
        for cell in &active {
            let bound = goal.cell_bound(cell, lipschitz, curvature);
            if goal.settled(bound, best, slack) {
                if goal.better(bound, closed_bound) {
                    closed_bound = bound;
                }
                continue;
            }
            let mid = (cell.a + cell.b) / T::lit(2.0);
            if !(mid > cell.a && mid < cell.b) {
                // cell no longer splits in this precision
                return Err(Error::ToleranceUnreachable {
                    eps: eps.to_f64_lossy(),
                    cap: MAX_EVALUATIONS,
                });
            }
            midpoints.push((*cell, mid));
        }
        evaluations += midpoints.len() as u64;
        if evaluations > MAX_EVALUATIONS {
            return Err(Error::ToleranceUnreachable {
                eps: eps.to_f64_lossy(),
                cap: MAX_EVALUATIONS,
            });
        }
        // evaluate the whole level, then update the incumbent in angle order
        let mut level: Vec<(Cell<T>, T, T)> = midpoints
            .into_iter()
            .map(|(cell, mid)| (cell, mid, modulus_at(p, radius, mid)))
            .collect();
        level.sort_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal));
        for &(cell, mid, fm) in &level {
            if goal.better(fm, best) {
                best = fm;
                best_theta = mid;
                best_width = (cell.b - cell.a) / T::lit(2.0);
            }
        }
        for (cell, mid, fm) in level {
            next.push(Cell {
                a: cell.a,
                b: mid,
                fa: cell.fa,
                fb: fm,
            });
            next.push(Cell {
                a: mid,
                b: cell.b,
                fa: fm,
                fb: cell.fb,
            });
        }
        active = next;
    }

    // the certificate: true extremum lies between `best` and `closed_bound`
    let (refined_theta, refined) = golden_refine(p, radius, &goal, best_theta, best_width, best);
    let witness = refined;
    let (lo, hi) = match kind {
        ExtremumKind::Max => (witness, closed_bound.max(witness)),
        ExtremumKind::Min => (closed_bound.min(witness), witness),
    };
    let value = (lo + hi) / T::lit(2.0);
    let mut angle = refined_theta % T::TAU();
    if angle < T::zero() {
        angle += T::TAU();
    }
    Ok(CertifiedExtremum {
        value,
        error_radius: eps,
        witness_angle: angle,
        kind,
        radius,
    })
}

/// Golden-section search on `[theta - width, theta + width]`. Returns the
/// original point unless a strictly better one is found.
fn golden_refine<T: Scalar>(
    p: &Polynomial<T>,
    radius: T,
    goal: &Goal,
    theta: T,
    width: T,
    value: T,
) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut a = theta - width;
    let mut b = theta + width;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = modulus_at(p, radius, c);
    let mut fd = modulus_at(p, radius, d);
    for _ in 0..GOLDEN_ITERATIONS {
        if goal.better(fc, fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = modulus_at(p, radius, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = modulus_at(p, radius, d);
        }
    }
    let (t, f) = if goal.better(fc, fd) {
        (c, fc)
    } else {
        (d, fd)
    };
    if goal.better(f, value) {
        (t, f)
    } else {
        (theta, value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(p: &Polynomial<f64>, r: f64, kind: ExtremumKind) -> f64 {
        // independent oracle: 10^6 uniform angles
        let n = 1_000_000;
        let it = (0..n).map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            p.eval(Complex::from_polar(r, t)).norm()
        });
        match kind {
            ExtremumKind::Max => it.fold(0.0, f64::max),
            ExtremumKind::Min => it.fold(f64::INFINITY, f64::min),
        }
    }

    #[test]
    fn lipschitz_examples() {
        let zn = Polynomial::<f64>::monomial(4, Complex::new(1.0, 0.0));
        assert!((theta_lipschitz(&zn, 1.5).unwrap() - 4.0 * 1.5f64.powi(4)).abs() < 1e-12);
        assert_eq!(
            theta_lipschitz(&Polynomial::<f64>::from_real(&[3.0]), 2.0).unwrap(),
            0.0
        );
        let p = Polynomial::<f64>::from_real(&[1.0, 1.0, 1.0]);
        assert_eq!(theta_lipschitz(&p, 1.0).unwrap(), 3.0);
        assert_eq!(theta_lipschitz(&p, 0.0), Err(Error::NonPositiveRadius(0.0)));
    }

    #[test]
    fn argument_errors() {
        let p = Polynomial::<f64>::from_real(&[1.0, 1.0]);
        assert_eq!(
            max_modulus(&p, -1.0, 1e-6),
            Err(Error::NonPositiveRadius(-1.0))
        );
        assert_eq!(
            min_modulus(&p, 1.0, 0.0),
            Err(Error::NonPositiveTolerance(0.0))
        );
    }

    #[test]
    fn monomial_has_constant_modulus() {
        let zn = Polynomial::<f64>::monomial(5, Complex::new(1.0, 0.0));
        for r in [0.5f64, 1.0, 2.0] {
            let mx = max_modulus(&zn, r, 1e-9).unwrap();
            let mn = min_modulus(&zn, r, 1e-9).unwrap();
            assert!(mx.contains(r.powi(5)));
            assert!(mn.contains(r.powi(5)));
        }
    }

    #[test]
    fn max_examples() {
        let p = Polynomial::<f64>::from_real(&[1.0, 2.0, 1.0]);
        let mx = max_modulus(&p, 1.0, 1e-8).unwrap();
        assert!((mx.value - 4.0).abs() <= 1e-8);
        let theta = mx
            .witness_angle
            .min(std::f64::consts::TAU - mx.witness_angle);
        assert!(theta < 1e-3, "witness {}", mx.witness_angle);

        let q = Polynomial::<f64>::from_real(&[1.0, 1.0, 1.0]);
        let mx = max_modulus(&q, 1.0, 1e-6).unwrap();
        assert!(mx.contains(dense(&q, 1.0, ExtremumKind::Max)));
        assert!((mx.value - 3.0).abs() <= 1e-6);
    }

    #[test]
    fn min_examples() {
        let n = 4;
        let k: f64 = 1.2;
        let mut coeffs = vec![0.0; n + 1];
        coeffs[0] = k.powi(n as i32);
        coeffs[n] = 1.0;
        let p = Polynomial::<f64>::from_real(&coeffs);
        let mn = min_modulus(&p, k, 1e-8).unwrap();
        assert_eq!(mn.lower(), 0.0);
        assert!(mn.value <= 1e-8);

        let cube = Polynomial::<f64>::from_real(&[8.0, 12.0, 6.0, 1.0]);
        let mn = min_modulus(&cube, 1.0, 1e-8).unwrap();
        assert!((mn.value - 1.0).abs() <= 1e-8);
        assert!(mn.contains(dense(&cube, 1.0, ExtremumKind::Min)));
    }

    #[test]
    fn witness_matches_value() {
        let p = Polynomial::<f64>::new(vec![
            Complex::new(0.3, -1.0),
            Complex::new(2.0, 0.5),
            Complex::new(-1.0, 1.0),
            Complex::new(0.0, 0.7),
        ]);
        for kind in [ExtremumKind::Max, ExtremumKind::Min] {
            let e = extremum(&p, 1.3, 1e-7, kind).unwrap();
            let at = p.eval(Complex::from_polar(1.3, e.witness_angle)).norm();
            assert!((at - e.value).abs() <= e.error_radius);
            assert!((0.0..std::f64::consts::TAU).contains(&e.witness_angle));
        }
    }

    #[test]
    fn deterministic() {
        let p = Polynomial::<f64>::from_real(&[0.2, -1.0, 0.0, 3.0, 0.5]);
        let a = max_modulus(&p, 0.9, 1e-8).unwrap();
        let b = max_modulus(&p, 0.9, 1e-8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_precision() {
        let p = Polynomial::<f32>::from_real(&[1.0, 2.0, 1.0]);
        let mx = max_modulus(&p, 1.0, 1e-3).unwrap();
        assert!((mx.value - 4.0).abs() <= 1e-3);
    }

    #[test]
    fn sampled_matches_certified() {
        let p = Polynomial::<f64>::from_real(&[1.0, 1.0, 1.0]);
        let s = sampled_extremum(&p, 1.0, 10_000, ExtremumKind::Max);
        assert!((s - 3.0).abs() < 1e-12);
    }
}
