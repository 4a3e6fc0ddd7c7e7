//! Generalized Euler numbers E_k^{(m;a)} by two independent routes, and the
//! generating-function identity tying them to the periodic character.
//!
//! Route one expands m sh((a+1)z)/sh(mz) as a power series in z over exact
//! rationals; route two evaluates the Bernoulli-polynomial form of
//! m L(-2k, chi_{2m}^{(a)}). The two must agree exactly, entry by entry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::numeric::{bernoulli_polynomial, PeriodicChar};
use crate::qseries::FormalSeries;

/// Which construction produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerRoute {
    GeneratingFunction,
    Bernoulli,
}

/// E_k^{(m;a)} for k = 0..=k_max.
#[derive(Debug, Clone)]
pub struct EulerNumberTable {
    pub m: u32,
    pub a: u32,
    pub route: EulerRoute,
    pub values: Vec<BigRational>,
}

/// Euler numbers from the generating function
/// m sh((a+1)z)/sh(mz) = sum_k E_k^{(m;a)} z^{2k}/(2k)!.
///
/// Only even powers of z exist (the ratio of two odd functions), so the
/// division runs over series in u = z^2.
pub fn euler_numbers_gf(m: u32, a: u32, k_max: usize) -> Result<EulerNumberTable> {
    PeriodicChar::new(m, a)?; // validates the (m, a) range

    // sh(cz)/z = sum_j c^{2j+1} u^j / (2j+1)!  with u = z^2
    let odd_exp_series = |c: i64| -> Vec<BigRational> {
        let mut out = Vec::with_capacity(k_max + 1);
        let mut factorial = BigInt::one();
        let mut cpow = BigInt::from(c);
        for j in 0..=k_max {
            if j > 0 {
                factorial *= BigInt::from(2 * j) * BigInt::from(2 * j + 1);
                cpow = &cpow * BigInt::from(c) * BigInt::from(c);
            }
            out.push(BigRational::new(cpow.clone(), factorial.clone()));
        }
        out
    };

    let num = odd_exp_series(i64::from(a) + 1);
    let den = odd_exp_series(i64::from(m));

    // series division: q[j] = (num[j] - sum_{i<j} q[i] den[j-i]) / den[0], den[0] = m
    let mut quot: Vec<BigRational> = Vec::with_capacity(k_max + 1);
    for j in 0..=k_max {
        let mut acc = num[j].clone();
        for (i, q) in quot.iter().enumerate() {
            acc -= q * &den[j - i];
        }
        quot.push(acc / &den[0]);
    }

    // E_k = (2k)! * m * quot[k]
    let mut values = Vec::with_capacity(k_max + 1);
    let mut factorial = BigInt::one();
    for (k, q) in quot.iter().enumerate() {
        if k > 0 {
            factorial *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
        }
        values.push(q * BigRational::from(factorial.clone()) * BigRational::from(BigInt::from(m)));
    }

    Ok(EulerNumberTable {
        m,
        a,
        route: EulerRoute::GeneratingFunction,
        values,
    })
}

/// Single Euler number from the Bernoulli route:
/// E_k^{(m;a)} = -m (2m)^{2k}/(2k+1) (B_{2k+1}((m-1-a)/2m) - B_{2k+1}((m+1+a)/2m)).
pub fn euler_numbers_bernoulli(m: u32, a: u32, k: usize) -> Result<BigRational> {
    PeriodicChar::new(m, a)?;
    let two_m = BigInt::from(2 * m);
    let x_plus = BigRational::new(BigInt::from(m - 1 - a), two_m.clone());
    let x_minus = BigRational::new(BigInt::from(m + 1 + a), two_m.clone());
    let diff = bernoulli_polynomial(2 * k + 1, &x_plus) - bernoulli_polynomial(2 * k + 1, &x_minus);
    let mut scale = BigRational::new(BigInt::from(-i64::from(m)), BigInt::from(2 * k as i64 + 1));
    for _ in 0..2 * k {
        scale *= BigRational::from(two_m.clone());
    }
    Ok(scale * diff)
}

/// Full table via the Bernoulli route.
pub fn euler_table_bernoulli(m: u32, a: u32, k_max: usize) -> Result<EulerNumberTable> {
    let values = (0..=k_max)
        .map(|k| euler_numbers_bernoulli(m, a, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(EulerNumberTable {
        m,
        a,
        route: EulerRoute::Bernoulli,
        values,
    })
}

/// Verifies, as formal series in w = e^{-z} up to `order`, that
/// sh((a+1)z)/sh(mz) = sum_n chi_{2m}^{(a)}(n) w^n.
///
/// Multiplying numerator and denominator by e^{-mz} turns the left side
/// into (w^{m-1-a} - w^{m+1+a})/(1 - w^{2m}); the division is exact over
/// integers and the quotient's coefficients must be the character table.
pub fn chi_generating_check(m: u32, a: u32, order: i64) -> Result<bool> {
    let chi = PeriodicChar::new(m, a)?;
    let mut num = FormalSeries::zero(1, order);
    num.add_term(i64::from(m - 1 - a), &BigInt::one());
    num.add_term(i64::from(m + 1 + a), &BigInt::from(-1));
    let mut den = FormalSeries::zero(1, order);
    den.add_term(0, &BigInt::one());
    den.add_term(i64::from(2 * m), &BigInt::from(-1));
    let quot = num.div_exact(&den)?;
    for n in 0..order {
        if quot.coeff(n, 1) != BigInt::from(chi.eval(n)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn gf(m: u32, a: u32, k_max: usize) -> Vec<BigRational> {
        euler_numbers_gf(m, a, k_max).unwrap().values
    }

    #[test]
    fn m2_table_is_secant_numbers() {
        assert_eq!(gf(2, 0, 3), vec![rat(1, 1), rat(-1, 1), rat(5, 1), rat(-61, 1)]);
    }

    #[test]
    fn m3_tables() {
        assert_eq!(gf(3, 0, 3), vec![rat(1, 1), rat(-8, 3), rat(32, 1), rat(-896, 1)]);
        assert_eq!(gf(3, 1, 3), vec![rat(2, 1), rat(-10, 3), rat(34, 1), rat(-910, 1)]);
    }

    #[test]
    fn m4_tables() {
        assert_eq!(gf(4, 0, 3), vec![rat(1, 1), rat(-5, 1), rat(109, 1), rat(-5465, 1)]);
        assert_eq!(gf(4, 1, 3), vec![rat(2, 1), rat(-8, 1), rat(160, 1), rat(-7808, 1)]);
        assert_eq!(gf(4, 2, 3), vec![rat(3, 1), rat(-7, 1), rat(119, 1), rat(-5587, 1)]);
    }

    #[test]
    fn bernoulli_route_constant_term_is_a_plus_1() {
        for m in 2..=8u32 {
            for a in 0..=m - 2 {
                assert_eq!(
                    euler_numbers_bernoulli(m, a, 0).unwrap(),
                    rat(i64::from(a) + 1, 1)
                );
            }
        }
    }

    #[test]
    fn bernoulli_equals_gf_for_5_3_2() {
        // the generating-function route fixes the value first
        let oracle = gf(5, 3, 2)[2].clone();
        assert_eq!(euler_numbers_bernoulli(5, 3, 2).unwrap(), oracle);
    }

    #[test]
    fn routes_agree_exactly_to_k20() {
        for m in 2..=6u32 {
            for a in 0..=m - 2 {
                let g = gf(m, a, 20);
                for (k, value) in g.iter().enumerate() {
                    assert_eq!(
                        &euler_numbers_bernoulli(m, a, k).unwrap(),
                        value,
                        "routes disagree at (m,a,k) = ({m},{a},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn e1_closed_form() {
        // E_1 = (1+a)((1+a)^2 - m^2)/3 from the displayed z^2 coefficient
        for m in 2..=6u32 {
            for a in 0..=m - 2 {
                let c = i64::from(a) + 1;
                let expect = rat(c * (c * c - i64::from(m) * i64::from(m)), 3);
                assert_eq!(gf(m, a, 1)[1], expect);
            }
        }
    }

    #[test]
    fn chi_generating_function_matches_character() {
        assert!(chi_generating_check(2, 0, 20).unwrap());
        assert!(chi_generating_check(3, 1, 20).unwrap());
        for m in 2..=6u32 {
            assert!(chi_generating_check(m, m - 2, 20).unwrap());
        }
    }

    #[test]
    fn chi_generating_check_oracle() {
        // oracle for (2,0): (w - w^3)/(1 - w^4) expanded geometrically:
        // (w - w^3) * sum_j w^{4j} -> +1 at 1,5,9..., -1 at 3,7,11...
        let chi = PeriodicChar::new(2, 0).unwrap();
        for n in 0..40i64 {
            let mut expect = 0i8;
            if n % 4 == 1 {
                expect = 1;
            } else if n % 4 == 3 {
                expect = -1;
            }
            assert_eq!(chi.eval(n), expect);
        }
    }
}
