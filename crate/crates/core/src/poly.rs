//! Dense complex polynomials in ascending-power order and the constraint
//! classes (lacunary shape, zero location) the bounds are stated for.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::de::{self, DeserializeOwned};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default relative threshold below which a coefficient counts as zero.
pub const DEFAULT_SNAP_TOL: f64 = 1e-12;

/// `p(z) = a_0 + a_1 z + ... + a_n z^n`.
///
/// The declared degree is `coeffs.len() - 1`; trailing zeros are kept so a
/// caller can tell a degenerate leading coefficient apart from a genuinely
/// lower degree (see [`Polynomial::require_leading`]).
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> Polynomial<T> {
    /// Builds a polynomial from ascending coefficients. An empty vector is
    /// read as the zero constant.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        if coeffs.is_empty() {
            return Self::constant(Complex::new(T::zero(), T::zero()));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `c z^n`.
    pub fn monomial(n: usize, c: Complex<T>) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `leading * prod (z - w)` over the given zeros.
    pub fn from_zeros(zeros: &[Complex<T>], leading: Complex<T>) -> Result<Self> {
        if leading.norm() == T::zero() {
            return Err(Error::ZeroLeading);
        }
        let mut coeffs = vec![leading];
        for &w in zeros {
            // multiply by (z - w) in place, highest power first
            coeffs.push(Complex::new(T::zero(), T::zero()));
            for j in (0..coeffs.len()).rev() {
                let shifted = if j > 0 { coeffs[j - 1] } else { zero() };
                coeffs[j] = shifted - w * coeffs[j];
            }
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs[self.degree()]
    }

    /// Coefficient of `z^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Complex<T> {
        self.coeffs.get(j).copied().unwrap_or_else(zero)
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    /// Fails with `DegreeMismatch` when `|a_n| <= tol * max |a_j|`.
    pub fn require_leading(&self, tol: T) -> Result<()> {
        let scale = self.max_abs_coeff();
        if self.leading().norm() <= tol * scale || scale == T::zero() {
            return Err(Error::DegreeMismatch {
                declared: self.degree(),
            });
        }
        Ok(())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::constant(zero());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * T::from_usize_lossy(j))
            .collect();
        Self { coeffs }
    }

    /// `D_alpha p(z) = n p(z) + (alpha - z) p'(z)`, returned with degree
    /// `n - 1`: the `z^n` terms cancel identically and are not formed.
    pub fn polar_derivative(&self, alpha: Complex<T>) -> Result<Self> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::DegreeZero);
        }
        // coefficient of z^j: (n - j) a_j + alpha (j + 1) a_{j+1}
        let coeffs = (0..n)
            .map(|j| {
                let own = self.coeffs[j] * T::from_usize_lossy(n - j);
                let next = self.coeffs[j + 1] * T::from_usize_lossy(j + 1);
                own + alpha * next
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// `q(z) = z^n conj(p(1 / conj z))`: coefficients reversed and conjugated.
    pub fn conjugate_reciprocal(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// `sum_j j^power |a_j| R^j`. Power 0 bounds `|p|` on `|z| = R`, power 1
    /// bounds `|d/dtheta p(R e^{i theta})|`, power 2 the second angular
    /// derivative.
    pub fn weighted_abs_sum(&self, radius: T, power: i32) -> T {
        let mut rj = T::one();
        let mut total = T::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            let weight = T::from_usize_lossy(j).powi(power);
            total += weight * c.norm() * rj;
            rj *= radius;
        }
        total
    }

    /// Reads off the lacunary indices with a relative zero threshold.
    ///
    /// `mu` is the largest index with `a_{n-1}, ..., a_{n-mu+1}` all below
    /// threshold, `m_idx` the largest with `a_1, ..., a_{m_idx-1}` below
    /// threshold. The returned view has those sub-threshold coefficients
    /// replaced by exact zeros.
    pub fn classify_lacunary(&self, tol: T) -> Result<Lacunarity<T>> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::DegreeZero);
        }
        let threshold = tol * self.max_abs_coeff();
        let negligible = |j: usize| self.coeffs[j].norm() <= threshold;

        let mut mu = 1;
        while mu < n && negligible(n - mu) {
            mu += 1;
        }
        let mut m_idx = 1;
        while m_idx < n && negligible(m_idx) {
            m_idx += 1;
        }

        let mut snapped = self.coeffs.clone();
        for c in snapped.iter_mut().take(n).skip(n - mu + 1) {
            *c = zero();
        }
        for c in snapped.iter_mut().take(m_idx).skip(1) {
            *c = zero();
        }
        Ok(Lacunarity {
            mu,
            m_idx,
            snapped: Self { coeffs: snapped },
        })
    }

    /// All complex zeros by Aberth-Ehrlich iteration.
    ///
    /// Only used to check the zero-location side of user-supplied
    /// polynomials; generated instances carry their zeros.
    pub fn roots(&self) -> Result<Vec<Complex<T>>> {
        self.require_leading(T::lit(DEFAULT_SNAP_TOL))?;
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        let monic: Vec<Complex<T>> = self.coeffs.iter().map(|&c| c / lead).collect();
        let monic = Self { coeffs: monic };
        let deriv = monic.derivative();

        // Fujiwara-type radius for the starting circle
        let radius = (0..n)
            .map(|j| {
                monic.coeffs[j]
                    .norm()
                    .powf(T::one() / T::from_usize_lossy(n - j))
            })
            .fold(T::zero(), T::max)
            .max(T::lit(1e-3));
        let offset = T::lit(0.4);
        let two_pi = T::TAU();
        let mut z: Vec<Complex<T>> = (0..n)
            .map(|j| {
                let theta = two_pi * T::from_usize_lossy(j) / T::from_usize_lossy(n) + offset;
                Complex::from_polar(radius, theta)
            })
            .collect();

        let tol = T::epsilon() * T::lit(64.0);
        let max_iter = 500;
        for _ in 0..max_iter {
            let mut converged = true;
            for i in 0..n {
                let pz = monic.eval(z[i]);
                // at the roundoff level of p near z: a multiple root cannot
                // be located any better
                let noise = T::epsilon() * T::lit(16.0) * monic.weighted_abs_sum(z[i].norm(), 0);
                if pz.norm() <= noise {
                    continue;
                }
                let ratio = pz / deriv.eval(z[i]);
                let repulsion = (0..n)
                    .filter(|&j| j != i)
                    .fold(zero(), |acc: Complex<T>, j| acc + (z[i] - z[j]).inv());
                let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
                if !step.re.is_finite() || !step.im.is_finite() {
                    continue;
                }
                z[i] -= step;
                if step.norm() > tol * (T::one() + z[i].norm()) {
                    converged = false;
                }
            }
            if converged {
                return Ok(z);
            }
        }
        Err(Error::NoConvergence(max_iter))
    }
}

/// Output of [`Polynomial::classify_lacunary`].
#[derive(Debug, Clone, PartialEq)]
pub struct Lacunarity<T> {
    pub mu: usize,
    pub m_idx: usize,
    pub snapped: Polynomial<T>,
}

fn zero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        self.scale(Complex::new(-T::one(), T::zero()))
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        let mut out = vec![zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr<T> {
    coeffs: Vec<CoeffRepr<T>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr<T> {
    Pair([T; 2]),
    Real(T),
}

impl<T: Scalar + Serialize> Serialize for Polynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| CoeffRepr::Pair([c.re, c.im]))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar + DeserializeOwned> Deserialize<'de> for Polynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::<T>::deserialize(deserializer)?;
        if repr.coeffs.is_empty() {
            return Err(de::Error::custom("coeffs must not be empty"));
        }
        let coeffs = repr
            .coeffs
            .into_iter()
            .map(|c| match c {
                CoeffRepr::Pair([re, im]) => Complex::new(re, im),
                CoeffRepr::Real(re) => Complex::new(re, T::zero()),
            })
            .collect();
        Ok(Polynomial { coeffs })
    }
}

/// Which end of the coefficient sequence carries the run of zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LacunaryKind {
    /// `a_n z^n + sum_{nu = mu}^{n} a_{n-nu} z^{n-nu}`: `a_{n-1} .. a_{n-mu+1}` vanish.
    Top(usize),
    /// `a_0 + sum_{nu = m}^{n} a_nu z^nu`: `a_1 .. a_{m-1}` vanish.
    Bottom(usize),
}

impl LacunaryKind {
    pub fn index(self) -> usize {
        match self {
            LacunaryKind::Top(i) | LacunaryKind::Bottom(i) => i,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroSide {
    /// All zeros in `|z| <= k`.
    #[serde(rename = "inside")]
    ZerosInsideClosedDisk,
    /// No zeros in `|z| < k`.
    #[serde(rename = "zerofree")]
    ZeroFreeOpenDisk,
}

impl ZeroSide {
    /// Whether a zero of the given modulus is allowed for disk radius `k`.
    pub fn admits<T: Scalar>(self, modulus: T, k: T) -> bool {
        match self {
            ZeroSide::ZerosInsideClosedDisk => modulus <= k,
            ZeroSide::ZeroFreeOpenDisk => modulus >= k,
        }
    }
}

/// Declared constraint bundle for a polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyClass<T> {
    pub kind: LacunaryKind,
    pub k: T,
    pub side: ZeroSide,
}

impl<T: Scalar> PolyClass<T> {
    pub fn top(mu: usize, k: T, side: ZeroSide) -> Self {
        Self {
            kind: LacunaryKind::Top(mu),
            k,
            side,
        }
    }

    pub fn bottom(m_idx: usize, k: T, side: ZeroSide) -> Self {
        Self {
            kind: LacunaryKind::Bottom(m_idx),
            k,
            side,
        }
    }

    /// Whether `p` has the lacunary shape this class declares, after
    /// snapping coefficients below `tol * max |a_j|`.
    pub fn lacunary_holds(&self, p: &Polynomial<T>, tol: T) -> bool {
        let Ok(lac) = p.classify_lacunary(tol) else {
            return false;
        };
        match self.kind {
            LacunaryKind::Top(mu) => lac.mu >= mu,
            LacunaryKind::Bottom(m) => lac.m_idx >= m,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr<T> {
    kind: String,
    index: usize,
    k: T,
    side: ZeroSide,
}

impl<T: Scalar + Serialize> Serialize for PolyClass<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = match self.kind {
            LacunaryKind::Top(_) => "top",
            LacunaryKind::Bottom(_) => "bottom",
        };
        ClassRepr {
            kind: kind.to_string(),
            index: self.kind.index(),
            k: self.k,
            side: self.side,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar + DeserializeOwned> Deserialize<'de> for PolyClass<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ClassRepr::<T>::deserialize(deserializer)?;
        if repr.index == 0 {
            return Err(de::Error::custom("lacunary index must be at least 1"));
        }
        let kind = match repr.kind.as_str() {
            "top" => LacunaryKind::Top(repr.index),
            "bottom" => LacunaryKind::Bottom(repr.index),
            other => return Err(de::Error::unknown_variant(other, &["top", "bottom"])),
        };
        Ok(PolyClass {
            kind,
            k: repr.k,
            side: repr.side,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let one = Polynomial::from_real(&[1.0]);
        assert_eq!(one.eval(c(5.0, 2.0)), c(1.0, 0.0));
        let cube = Polynomial::monomial(3, c(1.0, 0.0));
        assert_eq!(cube.eval(c(2.0, 0.0)), c(8.0, 0.0));
        // (i + 0.5)^2 = 0.25 + i - 1
        let sq = Polynomial::from_real(&[0.25, 1.0, 1.0]);
        let v = sq.eval(c(0.0, 1.0));
        assert!((v - c(-0.75, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            Polynomial::from_real(&[3.0]).derivative(),
            Polynomial::from_real(&[0.0])
        );
        let d = Polynomial::monomial(5, c(1.0, 0.0)).derivative();
        assert_eq!(d, Polynomial::monomial(4, c(5.0, 0.0)));
        assert_eq!(
            Polynomial::from_real(&[0.25, 1.0, 1.0]).derivative(),
            Polynomial::from_real(&[1.0, 2.0])
        );
    }

    #[test]
    fn polar_derivative_examples() {
        let alpha = c(0.3, -2.0);
        let z = Polynomial::from_real(&[0.0, 1.0]);
        assert_eq!(
            z.polar_derivative(alpha).unwrap(),
            Polynomial::constant(alpha)
        );
        let z2 = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(
            z2.polar_derivative(c(1.0, 0.0)).unwrap(),
            Polynomial::from_real(&[0.0, 2.0])
        );
        let z6 = Polynomial::monomial(6, c(1.0, 0.0));
        assert_eq!(
            z6.polar_derivative(alpha).unwrap(),
            Polynomial::monomial(5, alpha * 6.0)
        );
        assert_eq!(
            Polynomial::from_real(&[2.0]).polar_derivative(alpha),
            Err(Error::DegreeZero)
        );
    }

    #[test]
    fn conjugate_reciprocal_examples() {
        let p = Polynomial::from_real(&[2.0, 1.0]);
        assert_eq!(p.conjugate_reciprocal(), Polynomial::from_real(&[1.0, 2.0]));
        let zn = Polynomial::monomial(4, c(1.0, 0.0));
        assert_eq!(zn.conjugate_reciprocal().coeffs()[0], c(1.0, 0.0));
        assert!(zn.conjugate_reciprocal().coeffs()[1..]
            .iter()
            .all(|a| a.norm() == 0.0));
        let q = Polynomial::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0)]);
        assert_eq!(q.conjugate_reciprocal().conjugate_reciprocal(), q);
    }

    #[test]
    fn from_zeros_examples() {
        let k = 0.7;
        assert_eq!(
            Polynomial::from_zeros(&[c(-k, 0.0)], c(1.0, 0.0)).unwrap(),
            Polynomial::from_real(&[k, 1.0])
        );
        assert_eq!(
            Polynomial::from_zeros(&[], c(2.0, -1.0)).unwrap(),
            Polynomial::constant(c(2.0, -1.0))
        );
        assert_eq!(
            Polynomial::<f64>::from_zeros(&[c(1.0, 0.0)], c(0.0, 0.0)),
            Err(Error::ZeroLeading)
        );
        // n-th roots of -k^n expand to z^n + k^n
        let n = 5;
        let k: f64 = 1.3;
        let zeros: Vec<_> = (0..n)
            .map(|j| Complex::from_polar(k, std::f64::consts::PI * (2 * j + 1) as f64 / n as f64))
            .collect();
        let p = Polynomial::from_zeros(&zeros, c(1.0, 0.0)).unwrap();
        let mut expected = vec![c(0.0, 0.0); n + 1];
        expected[0] = c(k.powi(n as i32), 0.0);
        expected[n] = c(1.0, 0.0);
        for (a, b) in p.coeffs().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn classify_examples() {
        let even = Polynomial::from_real(&[1.0, 0.0, 2.0, 0.0, 1.0]);
        let lac = even.classify_lacunary(1e-12).unwrap();
        assert_eq!((lac.mu, lac.m_idx), (2, 2));
        let p = Polynomial::from_real(&[1.0, 3.0, 0.0, 0.0, 1.0]);
        let lac = p.classify_lacunary(1e-12).unwrap();
        assert_eq!((lac.mu, lac.m_idx), (3, 1));
        let lin = Polynomial::from_real(&[1.0, 1.0]);
        let lac = lin.classify_lacunary(1e-12).unwrap();
        assert_eq!((lac.mu, lac.m_idx), (1, 1));
    }

    #[test]
    fn classify_snaps_residue() {
        let p = Polynomial::from_real(&[1.0, 3e-17, 2.0, -4e-17, 1.0]);
        let lac = p.classify_lacunary(1e-12).unwrap();
        assert_eq!((lac.mu, lac.m_idx), (2, 2));
        assert_eq!(
            lac.snapped,
            Polynomial::from_real(&[1.0, 0.0, 2.0, 0.0, 1.0])
        );
    }

    #[test]
    fn require_leading_rejects_degenerate() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1e-20]);
        assert_eq!(
            p.require_leading(1e-12),
            Err(Error::DegreeMismatch { declared: 2 })
        );
        assert!(Polynomial::from_real(&[1.0, 2.0])
            .require_leading(1e-12)
            .is_ok());
    }

    #[test]
    fn roots_recover_zeros() {
        let zeros = vec![c(0.5, 0.1), c(-1.2, 0.0), c(0.0, 2.0), c(0.3, -0.7)];
        let p = Polynomial::from_zeros(&zeros, c(2.0, 1.0)).unwrap();
        let found = p.roots().unwrap();
        for w in &zeros {
            let nearest = found
                .iter()
                .map(|r| (r - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-10, "{w} missed by {nearest}");
        }
    }

    #[test]
    fn json_form() {
        let p = Polynomial::new(vec![c(0.1, -0.2), c(1.0 / 3.0, 0.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":[[0.1,-0.2],[0.3333333333333333,0.0]]}"#);
        let back: Polynomial<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Polynomial<f64>>(r#"{"coeffs":[]}"#).is_err());
        let real: Polynomial<f64> = serde_json::from_str(r#"{"coeffs":[1, 2.5]}"#).unwrap();
        assert_eq!(real, Polynomial::from_real(&[1.0, 2.5]));
    }

    #[test]
    fn class_json_form() {
        let class = PolyClass::bottom(2, 1.5, ZeroSide::ZeroFreeOpenDisk);
        let s = serde_json::to_string(&class).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"bottom","index":2,"k":1.5,"side":"zerofree"}"#
        );
        let back: PolyClass<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, class);
    }

    #[test]
    fn works_in_single_precision() {
        let p = Polynomial::<f32>::from_real(&[0.25, 1.0, 1.0]);
        let v = p.eval(Complex::new(0.0, 1.0));
        assert!((v - Complex::new(-0.75f32, 1.0)).norm() < 1e-6);
    }
}
