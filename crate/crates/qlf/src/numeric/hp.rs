//! Arbitrary-precision real and complex scalars.
//!
//! `HPReal` re-exports `rug::Float` (MPFR) as the real scalar; `HPComplex`
//! is a rectangular pair of them. Every value carries its own precision in
//! bits; binary operations work at the maximum of the operand precisions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Real scalar with explicit binary precision (MPFR-backed).
pub type HPReal = Float;

/// pi at the requested precision.
pub fn pi(prec: u32) -> HPReal {
    Float::with_val(prec, Constant::Pi)
}

/// Exact rational converted to a float at the requested precision.
pub fn real_from_rational(r: &BigRational, prec: u32) -> HPReal {
    let conv = |z: &BigInt| {
        rug::Integer::from_str_radix(&z.to_str_radix(16), 16).expect("bigint radix conversion")
    };
    let q = rug::Rational::from((conv(r.numer()), conv(r.denom())));
    Float::with_val(prec, &q)
}

/// Decimal rendering with the full precision of the value, deterministic.
pub fn real_to_decimal(x: &HPReal) -> String {
    // digits = ceil(prec * log10(2)) + 2 keeps round-tripping lossless
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    let s = x.to_string_radix(10, Some(digits));
    s
}

/// Complex scalar in rectangular form.
///
/// Invariant: both parts carry the same precision.
#[derive(Debug, Clone, PartialEq)]
pub struct HPComplex {
    pub re: HPReal,
    pub im: HPReal,
}

impl HPComplex {
    pub fn new(re: HPReal, im: HPReal) -> Self {
        let prec = re.prec().max(im.prec());
        HPComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn zero(prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, 0),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn one(prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, 1),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, n),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        let z =
            rug::Integer::from_str_radix(&n.to_str_radix(16), 16).expect("bigint conversion");
        HPComplex {
            re: Float::with_val(prec, &z),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        HPComplex {
            re: real_from_rational(r, prec),
            im: Float::with_val(prec, 0),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        HPComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        HPComplex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        HPComplex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        HPComplex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }

    pub fn neg(&self) -> Self {
        let prec = self.prec();
        HPComplex {
            re: Float::with_val(prec, -&self.re),
            im: Float::with_val(prec, -&self.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        let re = Float::with_val(prec, &self.re * &rhs.re)
            - Float::with_val(prec, &self.im * &rhs.im);
        let im = Float::with_val(prec, &self.re * &rhs.im)
            + Float::with_val(prec, &self.im * &rhs.re);
        HPComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        let den = Float::with_val(prec, &rhs.re * &rhs.re)
            + Float::with_val(prec, &rhs.im * &rhs.im);
        let num = self.mul(&rhs.conj());
        HPComplex {
            re: Float::with_val(prec, &num.re / &den),
            im: Float::with_val(prec, &num.im / &den),
        }
    }

    pub fn scale(&self, s: &HPReal) -> Self {
        let prec = self.prec().max(s.prec());
        HPComplex {
            re: Float::with_val(prec, &self.re * s),
            im: Float::with_val(prec, &self.im * s),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        let prec = self.prec();
        HPComplex {
            re: Float::with_val(prec, &self.re * s),
            im: Float::with_val(prec, &self.im * s),
        }
    }

    pub fn scale_rational(&self, s: &BigRational) -> Self {
        self.scale(&real_from_rational(s, self.prec()))
    }

    pub fn norm_sqr(&self) -> HPReal {
        let prec = self.prec();
        Float::with_val(prec, &self.re * &self.re) + Float::with_val(prec, &self.im * &self.im)
    }

    pub fn abs(&self) -> HPReal {
        self.norm_sqr().sqrt()
    }

    /// Distance |self - rhs|.
    pub fn dist(&self, rhs: &Self) -> HPReal {
        self.sub(rhs).abs()
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let r = Float::with_val(prec, &self.re).exp();
        let c = Float::with_val(prec, &self.im).cos();
        let s = Float::with_val(prec, &self.im).sin();
        HPComplex {
            re: Float::with_val(prec, &r * &c),
            im: Float::with_val(prec, &r * &s),
        }
    }

    /// Principal logarithm: imaginary part in (-pi, pi].
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        let modulus = self.abs();
        let arg = Float::with_val(prec, &self.im).atan2(&self.re);
        HPComplex {
            re: modulus.ln(),
            im: arg,
        }
    }

    /// Principal branch power z^s for real s: exp(s ln z).
    pub fn pow_real(&self, s: &HPReal) -> Self {
        let l = self.ln();
        HPComplex {
            re: Float::with_val(l.prec().max(s.prec()), &l.re * s),
            im: Float::with_val(l.prec().max(s.prec()), &l.im * s),
        }
        .exp()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let half = Float::with_val(self.prec(), 0.5f64);
        self.pow_real(&half)
    }

    /// Integer power by repeated squaring.
    pub fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = HPComplex::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// e^{i pi r} for exact rational r, with the angle reduced mod 2 exactly
/// before any rounding. This keeps huge exponents (k^2 for k ~ 2mN) lossless.
pub fn unit_phase(r: &BigRational, prec: u32) -> HPComplex {
    let two = BigRational::from(BigInt::from(2));
    let mut red = r.clone() - (r / &two).floor() * &two;
    if red.is_negative() {
        red += &two;
    }
    let theta = real_from_rational(&red, prec) * pi(prec);
    HPComplex {
        re: theta.clone().cos(),
        im: theta.sin(),
    }
}

/// e^{i pi p/q} for machine-sized integers.
pub fn unit_phase_int(p: i64, q: i64, prec: u32) -> HPComplex {
    unit_phase(
        &BigRational::new(BigInt::from(p), BigInt::from(q)),
        prec,
    )
}

/// 2^(-k) as a float, for residual thresholds 2^{-(prec-slack)}.
pub fn pow2(k: i64, prec: u32) -> HPReal {
    Float::with_val(prec, 2).pow(Float::with_val(prec, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn phase_reduction_is_exact_for_large_numerators() {
        let prec = 192;
        // e^{i pi (k^2)/q} with k^2 huge must equal the reduced angle value
        let k: i64 = 123_456_789;
        let q: i64 = 840;
        let big = rat(k, 1) * rat(k, q);
        let direct = unit_phase(&big, prec);
        let red = ((k % (2 * q)) * (k % (2 * q))) % (2 * q);
        let small = unit_phase_int(red, q, prec);
        assert!(direct.dist(&small) < pow2(-(prec as i64) + 8, prec));
    }

    #[test]
    fn exp_ln_roundtrip() {
        let prec = 256;
        let z = HPComplex::from_f64(0.3, 1.2, prec);
        let back = z.ln().exp();
        assert!(z.dist(&back) < pow2(-240, prec));
    }

    #[test]
    fn principal_sqrt_of_minus_i() {
        let prec = 128;
        // sqrt(-i) = e^{-i pi/4}
        let z = HPComplex::from_f64(0.0, -1.0, prec);
        let expect = unit_phase_int(-1, 4, prec);
        assert!(z.sqrt().dist(&expect) < pow2(-120, prec));
    }

    #[test]
    fn mul_div_consistency() {
        let prec = 200;
        let a = HPComplex::from_f64(1.5, -2.25, prec);
        let b = HPComplex::from_f64(-0.75, 0.125, prec);
        let c = a.mul(&b).div(&b);
        assert!(c.dist(&a) < pow2(-180, prec));
    }
}
