//! K_m^{(a)}(x) and its closed form.
//!
//! The defining sum runs over c_1, ..., c_{m-1} >= 0:
//!
//!   K_m^{(a)}(x) = sum (-1)^{c_{m-1}} q^{c_{m-1}(c_{m-1}+1)/2}
//!                  x^{c_1+...+c_{m-1}}
//!                  q^{c_1^2+...+c_{m-2}^2 + c_{a+1}+...+c_{m-2}}
//!                  prod_i [c_{i+1} + delta_{i,a} choose c_i].
//!
//! It is accumulated by an interface-indexed sweep from the innermost index
//! outward: G_i(v) collects everything below level i given c_{i+1} = v, so
//! shared prefixes are multiplied once. Truncation never drops a reachable
//! term: exponents only grow outward, so a leaf dies only when its own
//! minimal exponent already exceeds the q-order.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{QlfError, Result};
use crate::numeric::PeriodicChar;
use crate::qseries::{gauss_binomial, BiSeries, FormalSeries};

/// Parameters of a K-series build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KSeriesSpec {
    pub m: u32,
    pub a: u32,
    pub q_order: i64,
    pub x_order: usize,
}

impl KSeriesSpec {
    pub fn new(m: u32, a: u32, q_order: i64, x_order: usize) -> Result<Self> {
        PeriodicChar::new(m, a)?;
        if q_order < 1 || x_order < 1 {
            return Err(QlfError::InvalidParameter(
                "q_order and x_order must be positive".into(),
            ));
        }
        Ok(KSeriesSpec {
            m,
            a,
            q_order,
            x_order,
        })
    }
}

fn tri(c: i64) -> i64 {
    c * (c + 1) / 2
}

/// The nested-sum side of the main identity.
pub fn k_series(spec: &KSeriesSpec) -> Result<BiSeries> {
    let KSeriesSpec {
        m,
        a,
        q_order,
        x_order,
    } = *spec;
    let mut out = BiSeries::zero(1, q_order, x_order);

    // outermost index bound: tri(c) <= q_order
    let mut v_max = 0i64;
    while tri(v_max + 1) <= q_order {
        v_max += 1;
    }

    if m == 2 {
        // single index: coefficient of x^c is (-1)^c q^{c(c+1)/2}
        for c in 0..=v_max {
            if (c as usize) >= x_order {
                break;
            }
            let sign = if c % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
            out.add_term(c as usize, tri(c), &sign);
        }
        return Ok(out);
    }

    // G_i(v): the sum over c_1..c_i given interface c_{i+1} = v.
    // Interface values range up to v_max (+1 past the shifted level i = a).
    let levels = (m - 2) as usize;
    let interface_cap = v_max + 1;
    let mut g: Vec<BiSeries> = Vec::new();
    for i in 1..=levels {
        let delta = if i as u32 == a { 1i64 } else { 0 };
        let linear = i as u32 > a; // q^{c_i^2 + c_i} past the shifted level
        let mut next: Vec<BiSeries> = Vec::with_capacity(interface_cap as usize + 1);
        for v in 0..=interface_cap {
            let mut acc = BiSeries::zero(1, q_order, x_order);
            for c in 0..=(v + delta) {
                let e = c * c + if linear { c } else { 0 };
                if e > q_order || (c as usize) >= x_order {
                    break;
                }
                let binom = gauss_binomial((v + delta) as u32, c);
                if binom.is_zero() {
                    continue;
                }
                if i == 1 {
                    // leaf: binom itself, shifted
                    let term = binom.mul_monomial(e, 1).truncated(q_order);
                    let mut t = BiSeries::zero(1, q_order, x_order);
                    t.add_series(c as usize, &term);
                    acc = acc.add(&t);
                } else {
                    let inner = &g[c as usize];
                    let shifted = inner.mul_monomial(&BigInt::one(), e, 1, c as usize);
                    // multiply by the binomial polynomial, degree by degree
                    let mut t = BiSeries::zero(1, q_order, x_order);
                    for d in 0..x_order {
                        let s = shifted.coeff(d);
                        if s.is_zero() {
                            continue;
                        }
                        t.add_series(d, &s.mul(&binom).truncated(q_order));
                    }
                    acc = acc.add(&t);
                }
            }
            next.push(acc);
        }
        g = next;
    }

    for v in 0..=v_max {
        if tri(v) > q_order {
            break;
        }
        let sign = if v % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
        let outer = g[v as usize].mul_monomial(&sign, tri(v), 1, v as usize);
        out = out.add(&outer);
    }
    Ok(out)
}

/// The closed-form side: sum over n >= 0 of
/// chi_{2m}^{(a)}(n) q^{(n^2-(m-1-a)^2)/4m} x^{(n-(m-1-a))/2}.
///
/// Exponents are integral by construction (n = m-1-a or m+1+a mod 2m); a
/// non-integral exponent aborts as an internal self-diagnostic.
pub fn k_rhs(spec: &KSeriesSpec) -> Result<BiSeries> {
    let KSeriesSpec {
        m,
        a,
        q_order,
        x_order,
    } = *spec;
    let chi = PeriodicChar::new(m, a)?;
    let mut out = BiSeries::zero(1, q_order, x_order);
    let b = i64::from(m - 1 - a);
    let mm = i64::from(m);
    let mut n = 0i64;
    loop {
        let c = chi.eval(n);
        if c != 0 {
            let num_q = n * n - b * b;
            let num_x = n - b;
            if num_q % (4 * mm) != 0 || num_x % 2 != 0 {
                return Err(QlfError::Internal(format!(
                    "non-integral exponent at n = {n} for (m,a) = ({m},{a})"
                )));
            }
            let eq = num_q / (4 * mm);
            let dx = (num_x / 2) as usize;
            if eq > q_order && dx >= x_order {
                break;
            }
            out.add_term(dx, eq, &BigInt::from(c));
        }
        // past this point every support n has q-exponent > q_order
        if n > b && (n * n - b * b) / (4 * mm) > q_order {
            break;
        }
        n += 1;
    }
    Ok(out)
}

/// Outcome of a coefficientwise identity check.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub m: u32,
    pub a: u32,
    pub q_order: i64,
    pub x_order: usize,
    pub passed: bool,
    /// (x-degree, exponent numerator, exponent denominator) of the first
    /// mismatch, when there is one.
    pub first_discrepancy: Option<(usize, i64, i64)>,
}

/// Coefficientwise equality of [`k_series`] and [`k_rhs`] below the
/// truncation orders. Failure is a report outcome, not an error.
pub fn verify_main_identity(spec: &KSeriesSpec) -> Result<IdentityReport> {
    let lhs = k_series(spec)?;
    let rhs = k_rhs(spec)?;
    let disc = lhs.first_discrepancy(&rhs);
    Ok(IdentityReport {
        m: spec.m,
        a: spec.a,
        q_order: spec.q_order,
        x_order: spec.x_order,
        passed: disc.is_none(),
        first_discrepancy: disc,
    })
}

/// Checks the q-difference equation
/// K(x) = 1 - q^{a+1} x^{a+1} + x^m q^{2m-1-a} K(q^2 x) on [`k_series`].
pub fn verify_difference_equation(spec: &KSeriesSpec) -> Result<IdentityReport> {
    let k = k_series(spec)?;
    let mut rhs = BiSeries::zero(1, spec.q_order, spec.x_order);
    rhs.add_term(0, 0, &BigInt::one());
    rhs.add_term(
        spec.a as usize + 1,
        i64::from(spec.a) + 1,
        &BigInt::from(-1),
    );
    let shifted = k.shift_x_by_q2().mul_monomial(
        &BigInt::one(),
        2 * i64::from(spec.m) - 1 - i64::from(spec.a),
        1,
        spec.m as usize,
    );
    let rhs = rhs.add(&shifted);
    let disc = k.first_discrepancy(&rhs);
    Ok(IdentityReport {
        m: spec.m,
        a: spec.a,
        q_order: spec.q_order,
        x_order: spec.x_order,
        passed: disc.is_none(),
        first_discrepancy: disc,
    })
}

/// The x-derivative-at-1 resummation of the main identity:
///
///   4 q^{(m-1-a)^2/4m} sum (c_1+...+c_{m-1} + (m-1-a)/2) (...)
///
/// which must equal the weight-3/2 theta series Phi_m^{(a)}. Computed from
/// the x-degree decomposition of [`k_series`]: the x^d coefficient carries
/// weight 4d + 2(m-1-a).
pub fn phi_weighted_series(m: u32, a: u32, q_order: i64) -> Result<FormalSeries> {
    // x-degrees reachable below q_order: sum c_i <= sqrt((m-1) q_order) + slack
    let x_order = ((((m - 1) as f64) * q_order as f64).sqrt() as usize) + m as usize + 3;
    let spec = KSeriesSpec::new(m, a, q_order, x_order)?;
    let k = k_series(&spec)?;
    let mut acc = FormalSeries::zero(1, q_order);
    let b = i64::from(m - 1 - a);
    for d in 0..x_order {
        let coeff = k.coeff(d);
        if coeff.is_zero() {
            continue;
        }
        acc = acc.add(&coeff.scale(&BigInt::from(4 * d as i64 + 2 * b)));
    }
    Ok(acc.mul_monomial(b * b, 4 * i64::from(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_kseries_collapses_to_single_index() {
        // coefficient of x^c is (-1)^c q^{c(c+1)/2}, derived by collapsing
        // the definition to its only index
        let spec = KSeriesSpec::new(2, 0, 80, 12).unwrap();
        let k = k_series(&spec).unwrap();
        for c in 0..12usize {
            let s = k.coeff(c);
            assert_eq!(s.num_terms(), 1, "x^{c} coefficient should be a monomial");
            let expect = if c % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.coeff(tri(c as i64), 1), BigInt::from(expect));
        }
    }

    #[test]
    fn m2_rhs_leading_terms() {
        // 1 - q x + q^3 x^2 - q^6 x^3 from n = 1, 3, 5, 7 by hand
        let spec = KSeriesSpec::new(2, 0, 40, 8).unwrap();
        let rhs = k_rhs(&spec).unwrap();
        assert_eq!(rhs.coeff(0).coeff(0, 1), BigInt::from(1));
        assert_eq!(rhs.coeff(1).coeff(1, 1), BigInt::from(-1));
        assert_eq!(rhs.coeff(2).coeff(3, 1), BigInt::from(1));
        assert_eq!(rhs.coeff(3).coeff(6, 1), BigInt::from(-1));
    }

    #[test]
    fn rhs_constant_term_is_one() {
        for m in 2..=6u32 {
            for a in 0..=m - 2 {
                let spec = KSeriesSpec::new(m, a, 30, 8).unwrap();
                let rhs = k_rhs(&spec).unwrap();
                assert_eq!(rhs.coeff(0).coeff(0, 1), BigInt::one());
            }
        }
    }

    #[test]
    fn kseries_constant_term_is_one() {
        for m in 2..=5u32 {
            for a in 0..=m - 2 {
                let spec = KSeriesSpec::new(m, a, 20, 6).unwrap();
                let k = k_series(&spec).unwrap();
                assert_eq!(k.coeff(0).coeff(0, 1), BigInt::one());
            }
        }
    }

    #[test]
    fn main_identity_small_grid() {
        for m in 2..=5u32 {
            for a in 0..=m - 2 {
                let spec = KSeriesSpec::new(m, a, 50, 20).unwrap();
                let report = verify_main_identity(&spec).unwrap();
                assert!(
                    report.passed,
                    "main identity fails at (m,a) = ({m},{a}): {:?}",
                    report.first_discrepancy
                );
            }
        }
    }

    #[test]
    fn m3_a0_specialization_at_x1() {
        // 1 - q + q^5 - q^8 + q^16 - q^21 (+ ...) after dropping the
        // q^{1/3} prefactor convention
        let spec = KSeriesSpec::new(3, 0, 30, 14).unwrap();
        let s = k_series(&spec).unwrap().eval_x_at_one();
        let expect: &[(i64, i64)] = &[(0, 1), (1, -1), (5, 1), (8, -1), (16, 1), (21, -1)];
        for &(k, c) in expect {
            assert_eq!(s.coeff(k, 1), BigInt::from(c), "coefficient of q^{k}");
        }
    }

    #[test]
    fn m3_a1_rhs_at_x1() {
        // 1 - q^2 + q^4 - q^10 + q^14 - q^24
        let spec = KSeriesSpec::new(3, 1, 30, 14).unwrap();
        let s = k_rhs(&spec).unwrap().eval_x_at_one();
        let expect: &[(i64, i64)] = &[(0, 1), (2, -1), (4, 1), (10, -1), (14, 1), (24, -1)];
        for &(k, c) in expect {
            assert_eq!(s.coeff(k, 1), BigInt::from(c), "coefficient of q^{k}");
        }
    }

    #[test]
    fn difference_equation_small_grid() {
        for (m, a) in [(2, 0), (3, 0), (3, 1), (4, 2)] {
            let spec = KSeriesSpec::new(m, a, 40, 16).unwrap();
            let report = verify_difference_equation(&spec).unwrap();
            assert!(report.passed, "difference equation fails at ({m},{a})");
        }
    }

    #[test]
    fn perturbed_identity_is_detected() {
        let spec = KSeriesSpec::new(3, 0, 30, 10).unwrap();
        let lhs = k_series(&spec).unwrap();
        let mut rhs = k_rhs(&spec).unwrap();
        rhs.add_term(2, 7, &BigInt::one()); // deliberate perturbation
        let disc = lhs.first_discrepancy(&rhs);
        assert_eq!(disc, Some((2, 7, 1)));
    }

    #[test]
    fn phi_weighted_m2_leading_terms() {
        // 2 q^{1/8} (1 - 3q + 5q^3 - 7q^6 + ...)
        let s = phi_weighted_series(2, 0, 40).unwrap();
        let expect: &[(i64, i64)] = &[(1, 2), (9, -6), (25, 10), (49, -14)];
        for &(k, c) in expect {
            assert_eq!(s.coeff(k, 8), BigInt::from(c), "coefficient of q^{k}/8");
        }
    }

    #[test]
    fn phi_weighted_m3_a1_and_m4_a1() {
        // 2 q^{1/12} (1 - 5q^2 + 7q^4 - 11q^10 + ...)
        let s = phi_weighted_series(3, 1, 30).unwrap();
        for (k, c) in [(1i64, 2i64), (25, -10), (49, 14), (121, -22)] {
            assert_eq!(s.coeff(k, 12), BigInt::from(c));
        }
        // 4 q^{1/4} (1 - 3q^2 + 5q^6 - 7q^12 + ...)
        let s = phi_weighted_series(4, 1, 30).unwrap();
        for (k, c) in [(4i64, 4i64), (36, -12), (100, 20), (196, -28)] {
            assert_eq!(s.coeff(k, 16), BigInt::from(c));
        }
    }
}
