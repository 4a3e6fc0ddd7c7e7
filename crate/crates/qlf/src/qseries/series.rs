//! Sparse truncated Laurent series in q^{1/D} with exact BigInt
//! coefficients.
//!
//! A term is c * q^{k/D} stored as (k -> c); terms with k/D >= order are
//! truncated away and never represented. Binary operations rescale both
//! operands to lcm(D1, D2) and propagate min(order1, order2). Exponents may
//! be negative (the multivariate recurrences substitute x -> q^{-1} x); the
//! well-ordering is guaranteed by the callers' bounded substitutions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{QlfError, Result};
use crate::numeric::{HPComplex, HPReal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    /// Exponent denominator D: the series lives in powers of q^{1/D}.
    denom: i64,
    /// Truncation order in whole-q units: stored k satisfy k < order * D.
    order: i64,
    /// exponent numerator k -> coefficient, no zeros stored.
    coeffs: BTreeMap<i64, BigInt>,
}

impl FormalSeries {
    pub fn zero(denom: i64, order: i64) -> Self {
        assert!(denom >= 1, "denominator must be positive");
        FormalSeries {
            denom,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        let mut s = FormalSeries::zero(1, order);
        s.set_term(0, BigInt::one());
        s
    }

    /// The monomial c * q^{k/d}.
    pub fn monomial(c: BigInt, k: i64, d: i64, order: i64) -> Self {
        let mut s = FormalSeries::zero(d, order);
        s.set_term(k, c);
        s
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Iterate (exponent numerator, coefficient) in increasing exponent.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    /// Largest stored exponent numerator, if any term exists.
    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of q^{k/d} (zero if absent); d must divide into the grid.
    pub fn coeff(&self, k: i64, d: i64) -> BigInt {
        assert!(d >= 1);
        if self.denom % d == 0 {
            let scale = self.denom / d;
            self.coeffs.get(&(k * scale)).cloned().unwrap_or_default()
        } else {
            // target grid is finer than stored: exact only when rescalable
            let l = lcm(self.denom, d);
            let kk = k * (l / d);
            if kk % (l / self.denom) == 0 {
                self.coeffs
                    .get(&(kk / (l / self.denom)))
                    .cloned()
                    .unwrap_or_default()
            } else {
                BigInt::zero()
            }
        }
    }

    /// Set (or clear) the coefficient at k/denom, respecting truncation.
    pub fn set_term(&mut self, k: i64, c: BigInt) {
        if k >= self.order.saturating_mul(self.denom) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    /// Add c at exponent k/denom.
    pub fn add_term(&mut self, k: i64, c: &BigInt) {
        if c.is_zero() || k >= self.order.saturating_mul(self.denom) {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Rescale to a coarser/finer grid with denominator `new_denom`
    /// (must be a multiple of a grid the series actually lives on).
    pub fn with_denom(&self, new_denom: i64) -> Self {
        assert!(new_denom >= 1);
        if new_denom == self.denom {
            return self.clone();
        }
        let l = lcm(self.denom, new_denom);
        assert_eq!(
            l, new_denom,
            "cannot rescale a denominator-{} series onto grid 1/{}",
            self.denom, new_denom
        );
        let scale = new_denom / self.denom;
        let mut out = FormalSeries::zero(new_denom, self.order);
        for (k, c) in &self.coeffs {
            out.set_term(k * scale, c.clone());
        }
        out
    }

    /// Minimal denominator representation (gcd of stored numerators and D).
    pub fn normalized(&self) -> Self {
        let mut g = self.denom;
        for k in self.coeffs.keys() {
            g = g.gcd(k);
            if g == 1 {
                return self.clone();
            }
        }
        let mut out = FormalSeries::zero(self.denom / g, self.order);
        for (k, c) in &self.coeffs {
            out.set_term(k / g, c.clone());
        }
        out
    }

    /// Truncate to a smaller order.
    pub fn truncated(&self, order: i64) -> Self {
        let mut out = FormalSeries::zero(self.denom, order.min(self.order));
        for (k, c) in &self.coeffs {
            out.set_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = FormalSeries::zero(self.denom, self.order);
        for (k, c) in &self.coeffs {
            out.coeffs.insert(*k, -c);
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = lcm(self.denom, rhs.denom);
        let order = self.order.min(rhs.order);
        let mut out = self.with_denom(d).truncated(order);
        let sr = d / rhs.denom;
        for (k, c) in &rhs.coeffs {
            out.add_term(k * sr, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = lcm(self.denom, rhs.denom);
        let order = self.order.min(rhs.order);
        let cap = order.saturating_mul(d);
        let a = self.with_denom(d);
        let b = rhs.with_denom(d);
        let mut out = FormalSeries::zero(d, order);
        // iterate the sparser operand outside
        let (small, large) = if a.coeffs.len() <= b.coeffs.len() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        for (ka, ca) in &small.coeffs {
            for (kb, cb) in &large.coeffs {
                let k = ka + kb;
                if k >= cap {
                    // BTreeMap iteration is ascending: later kb only larger
                    break;
                }
                out.add_term(k, &(ca * cb));
            }
        }
        out
    }

    /// Integer scalar multiple.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return FormalSeries::zero(self.denom, self.order);
        }
        let mut out = FormalSeries::zero(self.denom, self.order);
        for (k, v) in &self.coeffs {
            out.coeffs.insert(*k, v * c);
        }
        out
    }

    /// Multiply by the monomial q^{k/d}.
    pub fn mul_monomial(&self, k: i64, d: i64) -> Self {
        let dd = lcm(self.denom, d);
        let a = self.with_denom(dd);
        let shift = k * (dd / d);
        let mut out = FormalSeries::zero(dd, a.order);
        for (kk, c) in &a.coeffs {
            out.set_term(kk + shift, c.clone());
        }
        out
    }

    /// Substitute q -> q^{p/r} (exponent scaling by the positive rational p/r).
    pub fn substitute_power(&self, p: i64, r: i64) -> Self {
        assert!(p >= 1 && r >= 1);
        let g = p.gcd(&r);
        let (p, r) = (p / g, r / g);
        let d = self.denom * r;
        // order in whole-q units scales by p/r; keep the guaranteed window
        let order = self.order.saturating_mul(p) / r + i64::from(self.order.saturating_mul(p) % r != 0);
        let mut out = FormalSeries::zero(d, order.max(1));
        for (k, c) in &self.coeffs {
            out.set_term(k * p, c.clone());
        }
        out
    }

    /// Exact long division; fails if a step's leading coefficient does not
    /// divide, or if rhs is zero.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(QlfError::SeriesDivision("division by zero series".into()));
        }
        let d = lcm(self.denom, rhs.denom);
        let order = self.order.min(rhs.order);
        let a = self.with_denom(d).truncated(order);
        let b = rhs.with_denom(d).truncated(order);
        let (&kb, cb0) = b.coeffs.iter().next().unwrap();
        let cap = order.saturating_mul(d);

        let mut rem = a.coeffs;
        let mut out = FormalSeries::zero(d, order);
        while let Some((&ka, _)) = rem.iter().next() {
            let kq = ka - kb;
            if kq >= cap {
                // every further quotient exponent is >= cap: done
                break;
            }
            let ca = rem.get(&ka).unwrap().clone();
            let (qc, r) = ca.div_rem(cb0);
            if !r.is_zero() {
                return Err(QlfError::SeriesDivision(format!(
                    "leading coefficient {cb0} does not divide {ca} at exponent {ka}/{d}"
                )));
            }
            out.coeffs.insert(kq, qc.clone());
            for (kk, cc) in &b.coeffs {
                let k = kq + kk;
                if k >= cap + kb {
                    // such terms can only ever feed quotient exponents >= cap
                    break;
                }
                let e = rem.entry(k).or_insert_with(BigInt::zero);
                *e -= &qc * cc;
                if e.is_zero() {
                    rem.remove(&k);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FormalSeries::one(self.order).with_denom(self.denom);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// First exponent (numerator over `denom()`) where the two series
    /// disagree below the common order, if any.
    pub fn first_discrepancy(&self, rhs: &Self) -> Option<(i64, i64)> {
        let d = lcm(self.denom, rhs.denom);
        let order = self.order.min(rhs.order);
        let a = self.with_denom(d).truncated(order);
        let b = rhs.with_denom(d).truncated(order);
        let mut keys: Vec<i64> = a.coeffs.keys().chain(b.coeffs.keys()).cloned().collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let ca = a.coeffs.get(&k).cloned().unwrap_or_default();
            let cb = b.coeffs.get(&k).cloned().unwrap_or_default();
            if ca != cb {
                return Some((k, d));
            }
        }
        None
    }

    /// Agreement below the common truncation order.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.first_discrepancy(rhs).is_none()
    }

    /// Specialize q -> 1 (exact coefficient sum).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Evaluate numerically at q = e^{2 pi i tau}.
    pub fn eval_at_tau(&self, tau: &HPComplex, prec: u32) -> HPComplex {
        // q^{k/D} = exp(2 pi i tau k / D)
        let two_pi_i = HPComplex::new(
            HPReal::with_val(prec, 0),
            crate::numeric::pi(prec) * HPReal::with_val(prec, 2),
        );
        let base = two_pi_i.mul(&tau.with_prec(prec));
        let mut acc = HPComplex::zero(prec);
        for (k, c) in &self.coeffs {
            let ratio = HPReal::with_val(prec, *k) / HPReal::with_val(prec, self.denom);
            let term = base.scale(&ratio).exp();
            acc = acc.add(&term.mul(&HPComplex::from_bigint(c, prec)));
        }
        acc
    }

    /// CSV dump: columns exponent_numerator, denom, coefficient.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("exponent_numerator,denom,coefficient\n");
        for (k, c) in &self.coeffs {
            s.push_str(&format!("{},{},{}\n", k, self.denom, c));
        }
        s
    }

    /// JSON dump: array of [k, D, "c"] triples with exact decimal strings.
    pub fn to_json_triples(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(k, c)| {
                    serde_json::json!([*k, self.denom, c.to_string()])
                })
                .collect(),
        )
    }

    /// Parse the CSV format produced by [`FormalSeries::to_csv`].
    pub fn from_csv(text: &str, order: i64) -> Result<Self> {
        let mut denom = 1i64;
        let mut triples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("exponent_numerator")) {
                continue;
            }
            let parts: Vec<&str> = line.split(',').collect();
            if parts.len() != 3 {
                return Err(QlfError::InvalidParameter(format!(
                    "csv line {} must have 3 columns",
                    i + 1
                )));
            }
            let k: i64 = parts[0]
                .trim()
                .parse()
                .map_err(|e| QlfError::InvalidParameter(format!("bad exponent: {e}")))?;
            let d: i64 = parts[1]
                .trim()
                .parse()
                .map_err(|e| QlfError::InvalidParameter(format!("bad denom: {e}")))?;
            let c: BigInt = parts[2]
                .trim()
                .parse()
                .map_err(|e| QlfError::InvalidParameter(format!("bad coefficient: {e}")))?;
            denom = lcm(denom, d);
            triples.push((k, d, c));
        }
        let mut out = FormalSeries::zero(denom, order);
        for (k, d, c) in triples {
            out.add_term(k * (denom / d), &c);
        }
        Ok(out)
    }

    /// Human-readable leading terms, for reports and debugging.
    pub fn display_terms(&self, max_terms: usize) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().take(max_terms) {
            if *k == 0 {
                parts.push(format!("{c}"));
            } else if self.denom == 1 {
                parts.push(format!("{c}*q^{k}"));
            } else {
                parts.push(format!("{c}*q^({}/{})", k, self.denom));
            }
        }
        if self.coeffs.len() > max_terms {
            parts.push("...".into());
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / a.gcd(&b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(order: i64) -> FormalSeries {
        // 1 + q + q^2 + ...
        let mut s = FormalSeries::zero(1, order);
        for k in 0..order {
            s.set_term(k, BigInt::one());
        }
        s
    }

    #[test]
    fn one_minus_q_times_geometric_is_one() {
        let order = 50;
        let mut one_minus_q = FormalSeries::one(order);
        one_minus_q.set_term(1, BigInt::from(-1));
        let prod = one_minus_q.mul(&geom(order));
        assert!(prod.agrees_with(&FormalSeries::one(order)));
    }

    #[test]
    fn fractional_grid_reconciliation() {
        // q^{1/8} * q^{1/12} = q^{5/24}
        let a = FormalSeries::monomial(BigInt::one(), 1, 8, 10);
        let b = FormalSeries::monomial(BigInt::one(), 1, 12, 10);
        let p = a.mul(&b);
        assert_eq!(p.denom(), 24);
        assert_eq!(p.coeff(5, 24), BigInt::one());
    }

    #[test]
    fn division_roundtrip() {
        let order = 40;
        let mut den = FormalSeries::one(order);
        den.set_term(1, BigInt::from(-3));
        den.set_term(2, BigInt::from(2));
        let mut num = FormalSeries::one(order);
        num.set_term(3, BigInt::from(7));
        let q = num.mul(&den);
        let back = q.div_exact(&den).unwrap();
        assert!(back.agrees_with(&num));
    }

    #[test]
    fn division_rejects_nondividing_lead() {
        let order = 10;
        let num = FormalSeries::one(order);
        let den = FormalSeries::monomial(BigInt::from(2), 0, 1, order);
        assert!(num.div_exact(&den).is_err());
    }

    #[test]
    fn csv_roundtrip() {
        let mut s = FormalSeries::zero(8, 20);
        s.set_term(1, BigInt::from(2));
        s.set_term(9, BigInt::from(-2));
        s.set_term(25, BigInt::from(123456789012345678i64));
        let back = FormalSeries::from_csv(&s.to_csv(), 20).unwrap();
        assert!(s.agrees_with(&back));
        assert_eq!(back.denom(), 8);
    }
}
