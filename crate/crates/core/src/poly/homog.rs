use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{cyclotomic, IntPoly};
use crate::nt::euler_phi;

/// Homogeneous polynomial in `(X, Y)` of a fixed degree `d`:
/// `coeffs[i]` multiplies `X^i Y^(d-i)`. Always holds `d + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl HomPoly {
    pub fn new(degree: usize, mut coeffs: Vec<BigInt>) -> Self {
        assert!(
            coeffs.len() <= degree + 1,
            "too many coefficients for degree"
        );
        coeffs.resize(degree + 1, BigInt::zero());
        HomPoly { degree, coeffs }
    }

    /// `Y^d · p(X/Y)`; requires `deg p <= d`.
    pub fn homogenize(p: &IntPoly, degree: usize) -> Self {
        Self::new(degree, p.coeffs().to_vec())
    }

    /// `(XY)^k`
    pub fn xy_power(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); 2 * k + 1];
        c[k] = BigInt::one();
        Self::new(2 * k, c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^d`.
    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.degree]
    }

    /// The polynomial `P(X, 1)`.
    pub fn dehomogenize(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut ypow = BigInt::one();
        // Horner in X, carrying Y powers from the top.
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c * &ypow;
            ypow *= y;
        }
        acc
    }

    /// `P(Y, X)`
    pub fn swap(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        HomPoly {
            degree: self.degree,
            coeffs: c,
        }
    }

    /// `+1` if symmetric, `-1` if antisymmetric, `None` otherwise. The zero
    /// polynomial counts as symmetric.
    pub fn symmetry_type(&self) -> Option<i8> {
        let s = self.swap();
        if s == *self {
            Some(1)
        } else if s == -self {
            Some(-1)
        } else {
            None
        }
    }

    /// `P(X^q, Y^q)`
    pub fn compose_power(&self, q: usize) -> Self {
        let mut c = vec![BigInt::zero(); self.degree * q + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i * q] = v.clone();
        }
        Self::new(self.degree * q, c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Evaluates a symmetric form at a pair `(a, b)` given only through
    /// `e1 = a + b` and `e2 = ab`, using power sums `a^j + b^j`.
    pub fn eval_symmetric(&self, e1: &BigInt, e2: &BigInt) -> Option<BigInt> {
        if self.symmetry_type() != Some(1) {
            return None;
        }
        let d = self.degree;
        // p[j] = a^j + b^j by Newton's recurrence.
        let mut p = vec![BigInt::from(2), e1.clone()];
        for j in 2..=d {
            let next = e1 * &p[j - 1] - e2 * &p[j - 2];
            p.push(next);
        }
        let mut e2pow = BigInt::one();
        let mut acc = BigInt::zero();
        for i in 0..=d / 2 {
            let c = &self.coeffs[i];
            if 2 * i == d {
                acc += c * &e2pow;
            } else {
                acc += c * &e2pow * &p[d - 2 * i];
            }
            e2pow *= e2;
        }
        Some(acc)
    }
}

impl std::ops::Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl std::ops::Mul for &HomPoly {
    type Output = HomPoly;
    fn mul(self, rhs: &HomPoly) -> HomPoly {
        let mut c = vec![BigInt::zero(); self.degree + rhs.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        HomPoly::new(self.degree + rhs.degree, c)
    }
}

impl std::ops::Sub for &HomPoly {
    type Output = HomPoly;
    fn sub(self, rhs: &HomPoly) -> HomPoly {
        assert_eq!(
            self.degree, rhs.degree,
            "subtracting forms of different degree"
        );
        HomPoly {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..=self.degree).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let j = self.degree - i;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if !mag.is_one() || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "Y")?,
                _ => write!(f, "Y^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for HomPoly {
    /// Coefficient strings, `X^0 Y^d` first.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// `Φ_n(X, Y) = Y^{φ(n)} Φ_n(X / Y)`.
pub fn homogenized_cyclotomic(n: u64) -> HomPoly {
    HomPoly::homogenize(&cyclotomic(n), euler_phi(n) as usize)
}

/// The integer `Φ_n(γ, δ)` for a Lehmer pair, tagged with its index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogValue {
    pub n: u64,
    #[serde(serialize_with = "crate::nt::ser_bigint")]
    pub value: BigInt,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: usize, c: &[i64]) -> HomPoly {
        HomPoly::new(d, c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn eval_matches_brute_force() {
        let f = h(3, &[2, -1, 0, 5]);
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                let brute: i64 = (0..=3)
                    .map(|i| [2, -1, 0, 5][i] * x.pow(i as u32) * y.pow(3 - i as u32))
                    .sum();
                assert_eq!(
                    f.eval(&BigInt::from(x), &BigInt::from(y)),
                    BigInt::from(brute)
                );
            }
        }
    }

    #[test]
    fn symmetry() {
        assert_eq!(h(2, &[1, 3, 1]).symmetry_type(), Some(1));
        assert_eq!(h(1, &[-1, 1]).symmetry_type(), Some(-1));
        assert_eq!(h(1, &[2, 1]).symmetry_type(), None);
        assert_eq!(homogenized_cyclotomic(5).symmetry_type(), Some(1));
    }

    #[test]
    fn symmetric_eval_from_invariants() {
        // a, b = 2, 3: e1 = 5, e2 = 6
        let f = h(4, &[1, 3, -2, 3, 1]);
        let direct = f.eval(&BigInt::from(2), &BigInt::from(3));
        assert_eq!(
            f.eval_symmetric(&BigInt::from(5), &BigInt::from(6)),
            Some(direct)
        );
        let odd = h(3, &[1, 4, 4, 1]);
        let direct = odd.eval(&BigInt::from(-1), &BigInt::from(7));
        assert_eq!(
            odd.eval_symmetric(&BigInt::from(6), &BigInt::from(-7)),
            Some(direct)
        );
        assert_eq!(
            h(1, &[-1, 1]).eval_symmetric(&BigInt::one(), &BigInt::one()),
            None
        );
    }

    #[test]
    fn display() {
        assert_eq!(h(2, &[1, 3, 1]).to_string(), "X^2 + 3XY + Y^2");
        assert_eq!(h(1, &[-1, 1]).to_string(), "X - Y");
    }
}
