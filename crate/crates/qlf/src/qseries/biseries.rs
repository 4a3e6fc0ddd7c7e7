//! Series in x whose coefficients are q-series: the carrier for
//! K_m^{(a)}(x) and its q-difference equation.

use num_bigint::BigInt;

use crate::qseries::FormalSeries;

/// Association x-degree -> coefficient q-series, truncated at `x_order`.
///
/// All coefficient series share one exponent grid and q-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    denom: i64,
    q_order: i64,
    x_order: usize,
    coeffs: Vec<FormalSeries>,
}

impl BiSeries {
    pub fn zero(denom: i64, q_order: i64, x_order: usize) -> Self {
        BiSeries {
            denom,
            q_order,
            x_order,
            coeffs: vec![FormalSeries::zero(denom, q_order); x_order],
        }
    }

    pub fn q_order(&self) -> i64 {
        self.q_order
    }

    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Coefficient series of x^d (zero series if d >= x_order).
    pub fn coeff(&self, d: usize) -> FormalSeries {
        self.coeffs
            .get(d)
            .cloned()
            .unwrap_or_else(|| FormalSeries::zero(self.denom, self.q_order))
    }

    /// Add c * q^{k/denom} x^d.
    pub fn add_term(&mut self, d: usize, k: i64, c: &BigInt) {
        if d < self.x_order {
            self.coeffs[d].add_term(k, c);
        }
    }

    /// Add a whole q-series at x-degree d.
    pub fn add_series(&mut self, d: usize, s: &FormalSeries) {
        if d < self.x_order {
            self.coeffs[d] = self.coeffs[d].add(s);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let x_order = self.x_order.min(rhs.x_order);
        let q_order = self.q_order.min(rhs.q_order);
        let mut out = BiSeries::zero(lcm(self.denom, rhs.denom), q_order, x_order);
        for d in 0..x_order {
            out.coeffs[d] = self.coeff(d).add(&rhs.coeff(d)).truncated(q_order);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let x_order = self.x_order.min(rhs.x_order);
        let q_order = self.q_order.min(rhs.q_order);
        let mut out = BiSeries::zero(lcm(self.denom, rhs.denom), q_order, x_order);
        for d in 0..x_order {
            out.coeffs[d] = self.coeff(d).sub(&rhs.coeff(d)).truncated(q_order);
        }
        out
    }

    /// Substitute x -> q^{2} x (the q-difference equation's shift):
    /// coefficient of x^d picks up q^{2d}.
    pub fn shift_x_by_q2(&self) -> Self {
        let mut out = BiSeries::zero(self.denom, self.q_order, self.x_order);
        for d in 0..self.x_order {
            out.coeffs[d] = self.coeffs[d].mul_monomial(2 * d as i64, 1);
        }
        out
    }

    /// Multiply by c * q^{k/dq} x^{dx}.
    pub fn mul_monomial(&self, c: &BigInt, k: i64, dq: i64, dx: usize) -> Self {
        let mut out = BiSeries::zero(lcm(self.denom, dq), self.q_order, self.x_order);
        for d in 0..self.x_order {
            if d + dx >= self.x_order {
                break;
            }
            out.coeffs[d + dx] = self.coeffs[d].scale(c).mul_monomial(k, dq);
        }
        out
    }

    /// Specialize x -> 1: sum of all coefficient series.
    pub fn eval_x_at_one(&self) -> FormalSeries {
        let mut acc = FormalSeries::zero(self.denom, self.q_order);
        for s in &self.coeffs {
            acc = acc.add(s);
        }
        acc
    }

    /// First (x-degree, q-exponent-numerator, grid) where the series differ
    /// below the common truncation, if any.
    pub fn first_discrepancy(&self, rhs: &Self) -> Option<(usize, i64, i64)> {
        let x_order = self.x_order.min(rhs.x_order);
        for d in 0..x_order {
            if let Some((k, den)) = self.coeff(d).first_discrepancy(&rhs.coeff(d)) {
                return Some((d, k, den));
            }
        }
        None
    }

    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_discrepancy(rhs).is_none()
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    use num_integer::Integer;
    a / a.gcd(&b) * b
}
