//! Polynomials that belong to a constraint class by construction: the
//! extremal families where the bounds are attained, and seeded random
//! draws with prescribed zero location and lacunary shape.
//!
//! For index `>= 2` the random generators only produce polynomials in
//! `z^index` (products of blocks `z^index + c`), a strict subset of the
//! lacunary class that is exact without any projection step.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{self, DeserializeOwned};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{PolyClass, Polynomial, ZeroSide};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance<T> {
    pub poly: Polynomial<T>,
    /// Ground-truth zeros, with multiplicity.
    pub zeros: Vec<Complex<T>>,
    pub poly_class: PolyClass<T>,
    pub seed: u64,
    pub label: String,
}

/// Whether random zero-free draws may put zeros exactly on `|z| = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryDraws {
    Allow,
    /// Draw moduli strictly above `k`, so `min_{|z|=k} |p| > 0`.
    #[default]
    Exclude,
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Moves `w` radially by a few ulps until its computed modulus sits on the
/// requested side of `k`. Only ever needed for zeros placed on the circle.
fn settle<T: Scalar>(mut w: Complex<T>, k: T, side: ZeroSide) -> Complex<T> {
    let nudge = T::epsilon();
    for _ in 0..64 {
        if side.admits(w.norm(), k) {
            break;
        }
        let factor = match side {
            ZeroSide::ZerosInsideClosedDisk => T::one() - nudge,
            ZeroSide::ZeroFreeOpenDisk => T::one() + nudge,
        };
        w *= factor;
    }
    w
}

fn binomial(n: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `(z^idx + k^idx)^(n/idx)`; all zeros lie on `|z| = k`, so the instance is
/// valid for either side and is both top- and bottom-lacunary with `idx`.
pub fn extremal_block<T: Scalar>(
    n: usize,
    idx: usize,
    k: T,
    side: ZeroSide,
) -> Result<GeneratedInstance<T>> {
    if idx == 0 || n == 0 || !n.is_multiple_of(idx) {
        return Err(Error::NonDivisor { n, index: idx });
    }
    if !(k > T::zero()) {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let q = n / idx;
    let kk = k.powi(idx as i32);
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); n + 1];
    for j in 0..=q {
        let c = T::lit(binomial(q, j)) * kk.powi((q - j) as i32);
        coeffs[idx * j] = Complex::new(c, T::zero());
    }
    let mut zeros = Vec::with_capacity(n);
    for _ in 0..q {
        for l in 0..idx {
            let theta = T::PI() * T::from_usize_lossy(2 * l + 1) / T::from_usize_lossy(idx);
            zeros.push(settle(Complex::from_polar(k, theta), k, side));
        }
    }
    Ok(GeneratedInstance {
        poly: Polynomial::new(coeffs),
        zeros,
        poly_class: match side {
            ZeroSide::ZerosInsideClosedDisk => PolyClass::top(idx, k, side),
            ZeroSide::ZeroFreeOpenDisk => PolyClass::bottom(idx, k, side),
        },
        seed: 0,
        label: format!("extremal_block(n={n},idx={idx})"),
    })
}

/// `(z + k)^n` with an `n`-fold zero at `-k`.
pub fn extremal_binomial<T: Scalar>(n: usize, k: T) -> Result<GeneratedInstance<T>> {
    if !(k > T::zero()) {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let coeffs = (0..=n)
        .map(|j| Complex::new(T::lit(binomial(n, j)) * k.powi((n - j) as i32), T::zero()))
        .collect();
    Ok(GeneratedInstance {
        poly: Polynomial::new(coeffs),
        zeros: vec![Complex::new(-k, T::zero()); n],
        poly_class: PolyClass::top(1, k, ZeroSide::ZerosInsideClosedDisk),
        seed: 0,
        label: format!("extremal_binomial(n={n})"),
    })
}

fn unit<T: Scalar, R: Rng>(rng: &mut R) -> Complex<T> {
    let phi: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex::from_polar(T::one(), T::lit(phi))
}

fn check_index(n: usize, index: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if index == 0 || index > n || (index >= 2 && !n.is_multiple_of(index)) {
        return Err(Error::NonDivisor { n, index });
    }
    Ok(())
}

/// Zeros `w` with `w^index = -c`, each of modulus `|c|^(1/index)`.
fn block_zeros<T: Scalar>(c: Complex<T>, index: usize, k: T, side: ZeroSide) -> Vec<Complex<T>> {
    let idx = T::from_usize_lossy(index);
    let modulus = c.norm().powf(T::one() / idx);
    let base = (-c).arg();
    (0..index)
        .map(|l| {
            let theta = (base + T::TAU() * T::from_usize_lossy(l)) / idx;
            settle(Complex::from_polar(modulus, theta), k, side)
        })
        .collect()
}

fn block_product<T: Scalar>(
    blocks: &[Complex<T>],
    index: usize,
    leading: Complex<T>,
) -> Polynomial<T> {
    blocks
        .iter()
        .fold(Polynomial::constant(leading), |acc, &c| {
            let mut b = vec![Complex::new(T::zero(), T::zero()); index + 1];
            b[0] = c;
            b[index] = Complex::new(T::one(), T::zero());
            &acc * &Polynomial::new(b)
        })
}

/// Random member of the top-lacunary class with all zeros in `|z| <= k`.
///
/// `mu = 1`: `n` zeros uniform in area over the closed disk. `mu >= 2`:
/// `n / mu` block values uniform over the disk of radius `k^mu`, and
/// `p = leading * prod (z^mu + c_j)`.
pub fn random_top_lacunary<T: Scalar>(
    n: usize,
    mu: usize,
    k: T,
    seed: u64,
    leading_scale: T,
) -> Result<GeneratedInstance<T>> {
    check_index(n, mu)?;
    if !(k > T::zero()) {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let side = ZeroSide::ZerosInsideClosedDisk;
    let mut rng = rng_for(seed);
    let leading = unit::<T, _>(&mut rng) * leading_scale;
    let (poly, zeros) = if mu == 1 {
        let zeros: Vec<Complex<T>> = (0..n)
            .map(|_| {
                let rho = k * T::lit(rng.gen::<f64>()).sqrt();
                settle(unit::<T, _>(&mut rng) * rho, k, side)
            })
            .collect();
        (Polynomial::from_zeros(&zeros, leading)?, zeros)
    } else {
        let outer = k.powi(mu as i32);
        let blocks: Vec<Complex<T>> = (0..n / mu)
            .map(|_| {
                let rho = outer * T::lit(rng.gen::<f64>()).sqrt();
                unit::<T, _>(&mut rng) * rho
            })
            .collect();
        let zeros = blocks
            .iter()
            .flat_map(|&c| block_zeros(c, mu, k, side))
            .collect();
        (block_product(&blocks, mu, leading), zeros)
    };
    Ok(GeneratedInstance {
        poly,
        zeros,
        poly_class: PolyClass::top(mu, k, side),
        seed,
        label: format!("random_top(n={n},mu={mu})"),
    })
}

/// Random member of the bottom-lacunary class with no zeros in `|z| < k`.
///
/// `m_idx = 1`: zero moduli uniform in `[k, k_max]`. `m_idx >= 2`: block
/// moduli uniform in `[k^m, k_max^m]`.
pub fn random_bottom_lacunary_zerofree<T: Scalar>(
    n: usize,
    m_idx: usize,
    k: T,
    k_max: T,
    seed: u64,
    leading_scale: T,
    boundary: BoundaryDraws,
) -> Result<GeneratedInstance<T>> {
    check_index(n, m_idx)?;
    if !(k > T::zero()) {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if !(k_max > k) {
        return Err(Error::BadAnnulus {
            k: k.to_f64_lossy(),
            k_max: k_max.to_f64_lossy(),
        });
    }
    let side = ZeroSide::ZeroFreeOpenDisk;
    let mut rng = rng_for(seed);
    let leading = unit::<T, _>(&mut rng) * leading_scale;
    let fraction = |rng: &mut ChaCha8Rng| -> T {
        let u: f64 = rng.gen();
        T::lit(match boundary {
            BoundaryDraws::Allow => u,
            BoundaryDraws::Exclude => 1.0 - u,
        })
    };
    let (poly, zeros) = if m_idx == 1 {
        let zeros: Vec<Complex<T>> = (0..n)
            .map(|_| {
                let rho = k + (k_max - k) * fraction(&mut rng);
                settle(unit::<T, _>(&mut rng) * rho, k, side)
            })
            .collect();
        (Polynomial::from_zeros(&zeros, leading)?, zeros)
    } else {
        let (lo, hi) = (k.powi(m_idx as i32), k_max.powi(m_idx as i32));
        let blocks: Vec<Complex<T>> = (0..n / m_idx)
            .map(|_| {
                let s = lo + (hi - lo) * fraction(&mut rng);
                unit::<T, _>(&mut rng) * s
            })
            .collect();
        let zeros = blocks
            .iter()
            .flat_map(|&c| block_zeros(c, m_idx, k, side))
            .collect();
        (block_product(&blocks, m_idx, leading), zeros)
    };
    Ok(GeneratedInstance {
        poly,
        zeros,
        poly_class: PolyClass::bottom(m_idx, k, side),
        seed,
        label: format!("random_bottom(n={n},m={m_idx})"),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Scalar + Serialize",
    deserialize = "T: Scalar + serde::de::DeserializeOwned"
))]
struct InstanceRepr<T> {
    coeffs: Vec<[T; 2]>,
    zeros: Vec<[T; 2]>,
    class: PolyClass<T>,
    seed: u64,
    label: String,
}

fn pairs<T: Scalar>(v: &[Complex<T>]) -> Vec<[T; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

fn unpairs<T: Scalar>(v: Vec<[T; 2]>) -> Vec<Complex<T>> {
    v.into_iter().map(|[re, im]| Complex::new(re, im)).collect()
}

impl<T: Scalar + Serialize> Serialize for GeneratedInstance<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceRepr {
            coeffs: pairs(self.poly.coeffs()),
            zeros: pairs(&self.zeros),
            class: self.poly_class,
            seed: self.seed,
            label: self.label.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar + DeserializeOwned> Deserialize<'de> for GeneratedInstance<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = InstanceRepr::<T>::deserialize(deserializer)?;
        if repr.coeffs.is_empty() {
            return Err(de::Error::custom("coeffs must not be empty"));
        }
        Ok(GeneratedInstance {
            poly: Polynomial::new(unpairs(repr.coeffs)),
            zeros: unpairs(repr.zeros),
            poly_class: repr.class,
            seed: repr.seed,
            label: repr.label,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LacunaryKind;

    #[test]
    fn block_examples() {
        let inst = extremal_block(2, 1, 0.5f64, ZeroSide::ZerosInsideClosedDisk).unwrap();
        assert_eq!(inst.poly, Polynomial::from_real(&[0.25, 1.0, 1.0]));
        for w in &inst.zeros {
            assert!((w - Complex::new(-0.5, 0.0)).norm() < 1e-15);
        }
        let inst = extremal_block(6, 2, 1.0f64, ZeroSide::ZeroFreeOpenDisk).unwrap();
        assert_eq!(
            inst.poly,
            Polynomial::from_real(&[1.0, 0.0, 3.0, 0.0, 3.0, 0.0, 1.0])
        );
        assert!(inst.zeros.iter().all(|w| w.norm() >= 1.0));
        let inst = extremal_block(4, 4, 2.0f64, ZeroSide::ZerosInsideClosedDisk).unwrap();
        assert_eq!(
            inst.poly,
            Polynomial::from_real(&[16.0, 0.0, 0.0, 0.0, 1.0])
        );
        assert!(inst.zeros.iter().all(|w| w.norm() <= 2.0));
        assert_eq!(
            extremal_block(5, 2, 1.0f64, ZeroSide::ZerosInsideClosedDisk),
            Err(Error::NonDivisor { n: 5, index: 2 })
        );
    }

    #[test]
    fn binomial_examples() {
        let inst = extremal_binomial(1, 0.3f64).unwrap();
        assert_eq!(inst.poly, Polynomial::from_real(&[0.3, 1.0]));
        let inst = extremal_binomial(3, 2.0f64).unwrap();
        assert_eq!(inst.poly, Polynomial::from_real(&[8.0, 12.0, 6.0, 1.0]));
        let inst = extremal_binomial(5, 0.5f64).unwrap();
        assert_eq!(inst.zeros.len(), 5);
        assert!(inst.zeros.iter().all(|w| w.norm() == 0.5));
    }

    #[test]
    fn top_lacunary_structure() {
        for seed in 0..20 {
            let inst = random_top_lacunary(4, 2, 1.0f64, seed, 1.0).unwrap();
            let c = inst.poly.coeffs();
            assert_eq!(c[3].norm(), 0.0);
            assert_eq!(c[1].norm(), 0.0);
            assert!(inst.zeros.iter().all(|w| w.norm() <= 1.0));
            assert_eq!(inst.poly_class.kind, LacunaryKind::Top(2));
        }
        let inst = random_top_lacunary(1, 1, 0.4f64, 9, 1.0).unwrap();
        assert_eq!(inst.zeros.len(), 1);
        assert!(inst.zeros[0].norm() <= 0.4);
        assert!(random_top_lacunary(0, 1, 1.0f64, 0, 1.0).is_err());
        assert_eq!(
            random_top_lacunary(6, 4, 1.0f64, 0, 1.0),
            Err(Error::NonDivisor { n: 6, index: 4 })
        );
    }

    #[test]
    fn area_uniform_disk_law() {
        // E|w|^2 = k^2 / 2 for area-uniform zeros
        let mut total = 0.0;
        let mut count = 0usize;
        for seed in 0..10_000u64 {
            let inst = random_top_lacunary(1, 1, 1.0f64, seed, 1.0).unwrap();
            total += inst.zeros[0].norm_sqr();
            count += 1;
        }
        let mean = total / count as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean |w|^2 = {mean}");
    }

    #[test]
    fn bottom_zero_free_structure() {
        let inst =
            random_bottom_lacunary_zerofree(1, 1, 2.0f64, 4.0, 3, 1.0, BoundaryDraws::Exclude)
                .unwrap();
        let w = inst.zeros[0].norm();
        assert!((2.0..=4.0).contains(&w));
        for seed in 0..20 {
            let inst = random_bottom_lacunary_zerofree(
                4,
                2,
                2.0f64,
                4.0,
                seed,
                1.0,
                BoundaryDraws::Exclude,
            )
            .unwrap();
            assert_eq!(inst.poly.coeffs()[1].norm(), 0.0);
            assert!(inst.zeros.iter().all(|w| w.norm() >= 2.0));
        }
        assert_eq!(
            random_bottom_lacunary_zerofree(2, 1, 2.0f64, 2.0, 0, 1.0, BoundaryDraws::Allow),
            Err(Error::BadAnnulus { k: 2.0, k_max: 2.0 })
        );
    }

    #[test]
    fn reproducible() {
        let a = random_top_lacunary(6, 3, 0.8f64, 42, 2.0).unwrap();
        let b = random_top_lacunary(6, 3, 0.8f64, 42, 2.0).unwrap();
        assert_eq!(a, b);
        let c = random_top_lacunary(6, 3, 0.8f64, 43, 2.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn instance_json() {
        let inst = random_top_lacunary(4, 2, 0.9f64, 5, 1.0).unwrap();
        let s = serde_json::to_string(&inst).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["class"]["kind"], "top");
        assert_eq!(v["class"]["index"], 2);
        assert_eq!(v["class"]["side"], "inside");
        assert_eq!(v["seed"], 5);
        let back: GeneratedInstance<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, inst);
    }
}
