use num_bigint::BigInt;

use super::IntPoly;
use crate::nt::{divisors, euler_phi, moebius};

/// `Φ_n` as the Möbius product of `(X^d - 1)^{μ(n/d)}`, with the negative
/// exponents handled by exact division.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic(0)");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors(n) {
        match moebius(n / d) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPoly::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    // den is a product of monic polynomials, so the division is over Z.
    let phi = num
        .div_exact_monic(&den)
        .expect("Möbius product is an exact quotient");
    debug_assert_eq!(phi.degree(), Some(euler_phi(n) as usize));
    phi
}

/// Both sides of `Φ_m(X) Φ_m(-X) = (-1)^{φ(m)} Φ_{m/(m,2)}(X^2)^e`, computed
/// independently, with `e = 2` when `4 | m` and `1` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectIdentity {
    pub lhs: IntPoly,
    pub rhs: IntPoly,
    pub e: u32,
}

impl ReflectIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn reflect_identity(m: u64) -> ReflectIdentity {
    let phi = cyclotomic(m);
    let lhs = &phi * &phi.scale_var(-1);
    let e = if m.is_multiple_of(4) { 2 } else { 1 };
    let half = if m.is_multiple_of(2) { m / 2 } else { m };
    let mut rhs = cyclotomic(half).compose_power(2).pow(e);
    if euler_phi(m) % 2 == 1 {
        rhs = rhs.scale(&BigInt::from(-1));
    }
    ReflectIdentity { lhs, rhs, e }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(5), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(7), p(&[1, 1, 1, 1, 1, 1, 1]));
        // (X^5 - 1)/(X - 1) by long division
        let five = IntPoly::x_pow_minus_one(5)
            .div_exact_monic(&p(&[-1, 1]))
            .unwrap();
        assert_eq!(cyclotomic(5), five);
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        let c = cyclotomic(105);
        assert!(c.coeffs().iter().any(|x| *x == BigInt::from(-2)));
    }

    #[test]
    fn divisor_product_is_x_n_minus_one() {
        for n in 1..=300u64 {
            let c = cyclotomic(n);
            assert!(c.is_monic());
            assert_eq!(c.degree(), Some(euler_phi(n) as usize));
            let prod = divisors(n)
                .into_iter()
                .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
        }
        assert!(cyclotomic(1).leading().unwrap().is_one());
    }

    #[test]
    fn reflection_examples() {
        let r = reflect_identity(1);
        assert_eq!(r.lhs, p(&[1, 0, -1]));
        assert!(r.holds());
        assert_eq!(r.e, 1);

        let r = reflect_identity(3);
        assert_eq!(r.lhs, p(&[1, 0, 1, 0, 1]));
        assert!(r.holds());

        let r = reflect_identity(4);
        assert_eq!(r.e, 2);
        assert_eq!(r.lhs, p(&[1, 0, 1]).pow(2));
        assert!(r.holds());
    }

    #[test]
    fn reflection_up_to_200() {
        for m in 1..=200 {
            assert!(reflect_identity(m).holds(), "m = {m}");
        }
    }
}
