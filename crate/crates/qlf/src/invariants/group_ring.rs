//! Exact carrier for Z[zeta_M]-valued sums: integer coefficient vectors in
//! the group ring Z[x]/(x^M - 1). Evaluating x at the primitive M-th root
//! e^{2 pi i/M} recovers the complex value; the vector itself is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numeric::{unit_phase_int, HPComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    modulus: usize,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus >= 1);
        GroupRingElement {
            modulus,
            coeffs: vec![BigInt::zero(); modulus],
        }
    }

    pub fn one(modulus: usize) -> Self {
        Self::monomial(modulus, 0)
    }

    /// x^{e mod M}.
    pub fn monomial(modulus: usize, e: i64) -> Self {
        let mut g = Self::zero(modulus);
        let idx = e.rem_euclid(modulus as i64) as usize;
        g.coeffs[idx] = BigInt::one();
        g
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        out
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.modulus, rhs.modulus);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }

    /// Add c * x^{e mod M}.
    pub fn add_monomial(&mut self, e: i64, c: &BigInt) {
        let idx = e.rem_euclid(self.modulus as i64) as usize;
        self.coeffs[idx] += c;
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        GroupRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Multiply by x^{shift}: a rotation of the coefficient vector.
    pub fn rotate(&self, shift: i64) -> Self {
        let m = self.modulus as i64;
        let s = shift.rem_euclid(m) as usize;
        let mut out = Self::zero(self.modulus);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[(j + s) % self.modulus] = c.clone();
            }
        }
        out
    }

    /// Schoolbook product with exponent reduction mod M.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus;
        let mut out = Self::zero(m);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % m;
                out.coeffs[k] += a * b;
            }
        }
        out
    }

    /// Substitute x -> e^{2 pi i/M}.
    pub fn eval(&self, prec: u32) -> HPComplex {
        let mut acc = HPComplex::zero(prec);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = unit_phase_int(2 * j as i64, self.modulus as i64, prec);
            acc = acc.add(&root.mul(&HPComplex::from_bigint(c, prec)));
        }
        acc
    }
}

/// An exact invariant value: scale * (group-ring element evaluated at the
/// primitive M-th root). The scale keeps prefactors like -1/(4mN) exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue {
    pub element: GroupRingElement,
    pub scale: BigRational,
}

impl ExactValue {
    pub fn eval(&self, prec: u32) -> HPComplex {
        self.element.eval(prec).scale_rational(&self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::pow2;

    #[test]
    fn rotation_is_monomial_multiplication() {
        let mut g = GroupRingElement::zero(8);
        g.add_monomial(2, &BigInt::from(3));
        g.add_monomial(7, &BigInt::from(-1));
        let rotated = g.rotate(3);
        let direct = g.mul(&GroupRingElement::monomial(8, 3));
        assert_eq!(rotated, direct);
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        // 1 + x + ... + x^{M-1} evaluates to 0
        let m = 12;
        let mut g = GroupRingElement::zero(m);
        for j in 0..m as i64 {
            g.add_monomial(j, &BigInt::one());
        }
        let v = g.eval(192);
        assert!(v.abs() < pow2(-180, 192));
    }

    #[test]
    fn eval_is_ring_homomorphism() {
        let prec = 192;
        let mut a = GroupRingElement::zero(10);
        a.add_monomial(1, &BigInt::from(2));
        a.add_monomial(4, &BigInt::from(-5));
        let mut b = GroupRingElement::zero(10);
        b.add_monomial(3, &BigInt::from(7));
        b.add_monomial(9, &BigInt::from(1));
        let lhs = a.mul(&b).eval(prec);
        let rhs = a.eval(prec).mul(&b.eval(prec));
        assert!(lhs.dist(&rhs) < pow2(-170, prec));
    }
}
