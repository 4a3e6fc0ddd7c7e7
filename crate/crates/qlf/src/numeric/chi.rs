//! The odd periodic function chi_{2m}^{(a)}: +1 at n = m-1-a, -1 at
//! n = m+1+a (mod 2m), 0 elsewhere. It drives every theta series, L-value
//! and generalized Euler number in the crate.

use crate::error::{QlfError, Result};

/// chi_{2m}^{(a)} with modulus f = 2m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicChar {
    m: u32,
    a: u32,
}

impl PeriodicChar {
    pub fn new(m: u32, a: u32) -> Result<Self> {
        if m < 2 {
            return Err(QlfError::InvalidParameter(format!("m must be >= 2, got {m}")));
        }
        if a > m - 2 {
            return Err(QlfError::InvalidParameter(format!(
                "a must satisfy 0 <= a <= m-2 = {}, got {a}",
                m - 2
            )));
        }
        Ok(PeriodicChar { m, a })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// The modulus f = 2m.
    pub fn modulus(&self) -> u32 {
        2 * self.m
    }

    /// Table value of chi at n (n reduced mod 2m, negatives allowed).
    pub fn eval(&self, n: i64) -> i8 {
        let f = i64::from(self.modulus());
        let r = n.rem_euclid(f) as u32;
        if r == self.m - 1 - self.a {
            1
        } else if r == self.m + 1 + self.a {
            -1
        } else {
            0
        }
    }
}

/// chi_{2m}^{(a)}(n); convenience wrapper over [`PeriodicChar::eval`].
pub fn chi_eval(char: &PeriodicChar, n: i64) -> i8 {
    char.eval(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_is_primitive_character_mod_4() {
        let chi = PeriodicChar::new(2, 0).unwrap();
        assert_eq!(chi.eval(1), 1);
        assert_eq!(chi.eval(3), -1);
        assert_eq!(chi.eval(2), 0);
        assert_eq!(chi.eval(0), 0);
    }

    #[test]
    fn m3_tables() {
        let chi0 = PeriodicChar::new(3, 0).unwrap();
        assert_eq!(chi0.eval(2), 1);
        assert_eq!(chi0.eval(4), -1);
        let chi1 = PeriodicChar::new(3, 1).unwrap();
        assert_eq!(chi1.eval(1), 1);
        assert_eq!(chi1.eval(5), -1);
    }

    #[test]
    fn plus_one_at_m_minus_1_minus_a() {
        for m in 2..=8u32 {
            for a in 0..=m - 2 {
                let chi = PeriodicChar::new(m, a).unwrap();
                assert_eq!(chi.eval(i64::from(m - 1 - a)), 1);
            }
        }
    }

    #[test]
    fn periodicity_oddness_and_zero_mean() {
        for m in 2..=8u32 {
            for a in 0..=m - 2 {
                let chi = PeriodicChar::new(m, a).unwrap();
                let f = i64::from(chi.modulus());
                let mut sum = 0i64;
                for n in -f..=2 * f {
                    assert_eq!(chi.eval(n + f), chi.eval(n));
                    assert_eq!(chi.eval(f - n), -chi.eval(n));
                }
                for n in 1..=f {
                    sum += i64::from(chi.eval(n));
                }
                assert_eq!(sum, 0);
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PeriodicChar::new(1, 0).is_err());
        assert!(PeriodicChar::new(3, 2).is_err());
    }
}
