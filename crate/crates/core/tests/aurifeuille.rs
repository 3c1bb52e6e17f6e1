use msetforge::aurifeuille::{
    applicable, aurifeuillian_pair, expected_symmetry, q_of, two_squares, verify_pair,
};
use msetforge::lehmer::{phi_value, primitive_divisors, LehmerParams};
use msetforge::nt::{euler_phi, factorize, is_squarefree_i64, FactorBudget};
use msetforge::poly::HomPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

fn grid() -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for n in 3..=60u64 {
        for k in -15i64..=15 {
            if is_squarefree_i64(k) && applicable(n, k).unwrap().is_some() {
                out.push((n, k));
            }
        }
    }
    out
}

#[test]
fn every_applicable_pair_verifies() {
    let cases = grid();
    assert!(cases.len() > 50);
    for (n, k) in cases {
        let p = aurifeuillian_pair(n, k).unwrap();
        assert!(verify_pair(&p), "({n}, {k})");
        let d = euler_phi(n) as usize / 2;
        assert_eq!(p.f.degree(), d);
        assert_eq!(p.g.degree(), d - q_of(n) as usize);
        assert_eq!((p.s_f, p.s_g), expected_symmetry(n, k));
        assert_eq!(p.s_g, k.signum() as i8 * p.s_f);
    }
}

#[test]
fn common_divisor_check_on_small_box() {
    for (n, k) in grid() {
        let p = aurifeuillian_pair(n, k).unwrap();
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                assert!(
                    p.common_divisor_ok(&BigInt::from(x), &BigInt::from(y)),
                    "({n}, {k}) at ({x}, {y})"
                );
            }
        }
    }
}

fn compose(h: &HomPoly, q: usize) -> HomPoly {
    h.compose_power(q)
}

#[test]
fn scaling_law() {
    for (n, m, k) in [
        (45u64, 15u64, 5i64),
        (9, 3, -3),
        (27, 3, -3),
        (50, 10, -5),
        (63, 21, -7),
    ] {
        let q = q_of(n) as usize;
        assert_eq!(n, q as u64 * m);
        let big = aurifeuillian_pair(n, k).unwrap();
        let small = aurifeuillian_pair(m, k).unwrap();
        assert_eq!(big.f, compose(&small.f, q), "F at ({n}, {k})");
        let g = compose(&small.g, q);
        assert!(big.g == g || big.g == -&g, "G at ({n}, {k})");
    }
}

#[test]
fn sums_of_two_squares() {
    let params = LehmerParams::from_i64(5, 1).unwrap();
    let one = BigInt::one();
    for ell in [20u64, 40, 60, 80, 100, 120] {
        let t = two_squares(&params, ell, 5, &one).unwrap();
        let sum = &t.a * &t.a + &t.b * &t.b;
        assert_eq!(sum, phi_value(&params, ell).unwrap());
        // odd primes of A² + B² not dividing A are ≡ 1 (mod 4)
        let fac = factorize(&sum, &FactorBudget::default()).unwrap();
        for (p, _) in fac.factors {
            if p.is_odd() && !t.a.is_multiple_of(&p) {
                assert_eq!(p.mod_floor(&BigInt::from(4)), one, "ell = {ell}, p = {p}");
            }
        }
        for p in primitive_divisors(&params, ell).unwrap().primes {
            if p.is_odd() {
                assert_eq!(p.mod_floor(&BigInt::from(4)), one);
            }
        }
    }
    let t = two_squares(&params, 40, 5, &one).unwrap();
    assert_eq!((t.a.abs(), t.b.abs()), (BigInt::from(44), BigInt::from(15)));
}

#[test]
fn other_discriminants() {
    // R = 7: 7·3 = 21
    let params = LehmerParams::from_i64(7, 1).unwrap();
    let t = two_squares(&params, 84, 21, &BigInt::one()).unwrap();
    assert_eq!(&t.a * &t.a + &t.b * &t.b, phi_value(&params, 84).unwrap());
    // R = 9: 9·5 = 45 = 5·3²
    let params = LehmerParams::from_i64(9, 1).unwrap();
    let t = two_squares(&params, 20, 5, &BigInt::from(3)).unwrap();
    assert_eq!(&t.a * &t.a + &t.b * &t.b, phi_value(&params, 20).unwrap());
}
