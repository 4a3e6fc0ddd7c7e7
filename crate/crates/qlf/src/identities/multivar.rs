//! Multivariate K_m^{(a)}(x_1, ..., x_{m-1}) and the q-difference
//! recurrences it satisfies.
//!
//! The x_i are tracked as distinct formal markers of bounded degree; the
//! substitutions x_i -> q^{+-1} x_i shift the q-exponent of a monomial by
//! its degree in x_i, so coefficient completeness below the q-order
//! degrades by at most the total degree. Comparisons account for that
//! margin explicitly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{QlfError, Result};
use crate::numeric::PeriodicChar;
use crate::qseries::{gauss_binomial, BiSeries, FormalSeries};

/// Parameters of a multivariate K build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiKSpec {
    pub m: u32,
    pub a: u32,
    pub q_order: i64,
    /// Per-variable truncation degree.
    pub deg_cap: u8,
}

impl MultiKSpec {
    pub fn new(m: u32, a: u32, q_order: i64, deg_cap: u8) -> Result<Self> {
        PeriodicChar::new(m, a)?;
        if m < 3 {
            return Err(QlfError::InvalidParameter(
                "the multivariate engine needs m >= 3 (m = 2 has no interior variables)".into(),
            ));
        }
        Ok(MultiKSpec {
            m,
            a,
            q_order,
            deg_cap,
        })
    }
}

/// Sparse multivariate series: monomial (degree vector) -> q-series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    q_order: i64,
    deg_cap: u8,
    terms: BTreeMap<Vec<u8>, FormalSeries>,
}

impl MultiSeries {
    pub fn zero(nvars: usize, q_order: i64, deg_cap: u8) -> Self {
        MultiSeries {
            nvars,
            q_order,
            deg_cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, q_order: i64, deg_cap: u8) -> Self {
        let mut s = Self::zero(nvars, q_order, deg_cap);
        s.add_series(vec![0; nvars], &FormalSeries::one(q_order));
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_series(&mut self, mono: Vec<u8>, series: &FormalSeries) {
        debug_assert_eq!(mono.len(), self.nvars);
        if mono.iter().any(|&d| d > self.deg_cap) || series.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(mono)
            .or_insert_with(|| FormalSeries::zero(series.denom(), self.q_order));
        *entry = entry.add(series);
        if entry.is_zero() {
            // keep the map free of zero entries
            let keys: Vec<Vec<u8>> = self
                .terms
                .iter()
                .filter(|(_, s)| s.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in keys {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (mono, s) in &rhs.terms {
            out.add_series(mono.clone(), s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.q_order, self.deg_cap);
        for (mono, s) in &self.terms {
            out.terms.insert(mono.clone(), s.neg());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Multiply by c * q^{k} * prod x_j^{e_j}.
    pub fn mul_monomial(&self, c: &BigInt, k: i64, var_shift: &[u8]) -> Self {
        let mut out = Self::zero(self.nvars, self.q_order, self.deg_cap);
        for (mono, s) in &self.terms {
            let mut m2 = mono.clone();
            let mut fits = true;
            for (d, e) in m2.iter_mut().zip(var_shift) {
                let nd = *d as u16 + u16::from(*e);
                if nd > u16::from(self.deg_cap) {
                    fits = false;
                    break;
                }
                *d = nd as u8;
            }
            if fits {
                out.add_series(m2, &s.scale(c).mul_monomial(k, 1));
            }
        }
        out
    }

    /// Substitute x_j -> q^{e_j} x_j for every variable at once: the
    /// monomial with degree d_j in x_j picks up q^{sum e_j d_j}.
    pub fn substitute(&self, exps: &[i64]) -> Self {
        debug_assert_eq!(exps.len(), self.nvars);
        let mut out = Self::zero(self.nvars, self.q_order, self.deg_cap);
        for (mono, s) in &self.terms {
            let shift: i64 = mono
                .iter()
                .zip(exps)
                .map(|(&d, &e)| i64::from(d) * e)
                .sum();
            out.add_series(mono.clone(), &s.mul_monomial(shift, 1));
        }
        out
    }

    /// Specialize every x_i to the same x.
    pub fn collapse_to_biseries(&self, x_order: usize) -> BiSeries {
        let mut out = BiSeries::zero(1, self.q_order, x_order);
        for (mono, s) in &self.terms {
            let total: usize = mono.iter().map(|&d| usize::from(d)).sum();
            out.add_series(total, s);
        }
        out
    }

    /// First disagreement on monomials with per-variable degree <= deg
    /// and q-exponent below q_order - margin_per_degree * total_degree.
    pub fn first_discrepancy(
        &self,
        rhs: &Self,
        deg: u8,
        margin_per_degree: i64,
    ) -> Option<(Vec<u8>, i64, i64)> {
        let mut keys: Vec<Vec<u8>> = self
            .terms
            .keys()
            .chain(rhs.terms.keys())
            .cloned()
            .collect();
        keys.sort();
        keys.dedup();
        let zero = FormalSeries::zero(1, self.q_order);
        for mono in keys {
            if mono.iter().any(|&d| d > deg) {
                continue;
            }
            let total: i64 = mono.iter().map(|&d| i64::from(d)).sum();
            let window = self.q_order - margin_per_degree * total;
            if window <= 0 {
                continue;
            }
            let a = self.terms.get(&mono).unwrap_or(&zero).truncated(window);
            let b = rhs.terms.get(&mono).unwrap_or(&zero).truncated(window);
            if let Some((k, d)) = a.first_discrepancy(&b) {
                return Some((mono, k, d));
            }
        }
        None
    }
}

fn tri(c: i64) -> i64 {
    c * (c + 1) / 2
}

/// Build K_m^{(aa)}(x_1, ..., x_{m-1}) truncated in q and per-variable
/// degree. `aa` is the character shift of the build, independent of the
/// spec's `a` so the recurrences can instantiate every variant they relate.
pub fn multi_k(spec: &MultiKSpec, aa: u32) -> Result<MultiSeries> {
    if aa > spec.m - 2 {
        return Err(QlfError::InvalidParameter(format!(
            "character shift {aa} out of range for m = {}",
            spec.m
        )));
    }
    let nvars = (spec.m - 1) as usize;
    let cap = i64::from(spec.deg_cap);
    let mut out = MultiSeries::zero(nvars, spec.q_order, spec.deg_cap);

    // depth-first over c_{m-1}, c_{m-2}, ..., c_1 with hoisted partial
    // products; a branch dies when its own minimal q-exponent passes the
    // order or a degree passes the cap
    struct Frame<'a> {
        spec: &'a MultiKSpec,
        aa: u32,
        out: &'a mut MultiSeries,
    }
    fn descend(
        f: &mut Frame,
        level: usize, // index i of c_i currently being chosen
        upper: i64,   // c_{i+1} (+ delta already applied upstream)
        mono: &mut Vec<u8>,
        partial: &FormalSeries,
        min_exp: i64,
    ) {
        let delta = if level as u32 == f.aa { 1 } else { 0 };
        let hi = (upper + delta).min(i64::from(f.spec.deg_cap));
        for c in 0..=hi {
            let own = c * c + if level as u32 > f.aa { c } else { 0 };
            if min_exp + own > f.spec.q_order {
                break;
            }
            let binom = gauss_binomial((upper + delta) as u32, c);
            if binom.is_zero() {
                continue;
            }
            mono[level - 1] = c as u8;
            let next = partial.mul(&binom).mul_monomial(own, 1);
            if level == 1 {
                f.out.add_series(mono.clone(), &next);
            } else {
                descend(f, level - 1, c, mono, &next, min_exp + own);
            }
        }
        mono[level - 1] = 0;
    }

    let nl = nvars; // outermost variable index
    let mut frame = Frame {
        spec,
        aa,
        out: &mut out,
    };
    for c in 0..=cap.min(i64::MAX) {
        let own = tri(c);
        if own > spec.q_order {
            break;
        }
        let sign = if c % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
        let partial = FormalSeries::monomial(sign, own, 1, spec.q_order);
        let mut mono = vec![0u8; nvars];
        mono[nl - 1] = c as u8;
        if nvars == 1 {
            frame.out.add_series(mono, &partial);
        } else {
            descend(&mut frame, nl - 1, c, &mut mono, &partial, own);
        }
    }
    Ok(out)
}

/// One recurrence's outcome.
#[derive(Debug, Clone)]
pub struct RecurrenceCheck {
    pub name: String,
    pub passed: bool,
    pub first_discrepancy: Option<(Vec<u8>, i64, i64)>,
}

/// Report over all recurrences checked for one (m, a).
#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub m: u32,
    pub a: u32,
    pub q_order: i64,
    pub deg_cap: u8,
    pub checks: Vec<RecurrenceCheck>,
}

impl RecurrenceReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Instantiates the multivariate K and confirms, coefficientwise:
///
/// * the two Pascal-step recurrences relating K^{(a)} to K^{(0)}, K^{(a-1)}
///   (for a >= 1),
/// * the outer-index peel-off K^{(0)} = 1 - q x_{m-1} K^{(m-2)}(q x),
/// * their two compositions closing the q-difference equation,
/// * the recursive expansions of K^{(a)} into a sum of K^{(0)} terms
///   (for a >= 1),
/// * and the collapse x_i = x back to the univariate series.
pub fn verify_multivariate_recurrences(
    m: u32,
    a: u32,
    q_order: i64,
    deg_cap: u8,
) -> Result<RecurrenceReport> {
    let spec = MultiKSpec::new(m, a, q_order, deg_cap)?;
    let nv = (m - 1) as usize;
    let cmp_deg = deg_cap - 1;
    let mut checks = Vec::new();

    let k = |aa: u32| multi_k(&spec, aa);
    let one = MultiSeries::one(nv, q_order, deg_cap);

    let mut push = |name: &str, lhs: &MultiSeries, rhs: &MultiSeries| {
        let disc = lhs.first_discrepancy(rhs, cmp_deg, 1);
        checks.push(RecurrenceCheck {
            name: name.into(),
            passed: disc.is_none(),
            first_discrepancy: disc,
        });
    };

    // substitution vector builders; variables are 1-indexed in the math
    let subst = |pairs: &[(usize, i64)]| -> Vec<i64> {
        let mut v = vec![0i64; nv];
        for &(var, e) in pairs {
            v[var - 1] = e;
        }
        v
    };
    let vshift = |var: usize| -> Vec<u8> {
        let mut v = vec![0u8; nv];
        v[var - 1] = 1;
        v
    };

    let ka = k(a)?;
    let k0 = k(0)?;

    if a >= 1 {
        // maru_1: K^{(a)}(x) = K^{(0)}(q^{-1}x_1..q^{-1}x_{a-1}, x_a..)
        //                      + q x_a K^{(a-1)}(x_1..x_{a-1}, q x_a, x_{a+1}..)
        let t1 = k0.substitute(&subst(
            &(1..a as usize).map(|i| (i, -1)).collect::<Vec<_>>(),
        ));
        let t2 = k(a - 1)?
            .substitute(&subst(&[(a as usize, 1)]))
            .mul_monomial(&BigInt::one(), 1, &vshift(a as usize));
        push("maru_1", &ka, &t1.add(&t2));

        // maru_2: K^{(a)}(x) = K^{(0)}(q^{-1}x_1..q^{-1}x_a, x_{a+1}..)
        //                      + q x_a K^{(a-1)}(x_1..x_a, q x_{a+1}, x_{a+2}..)
        let t1 = k0.substitute(&subst(
            &(1..=a as usize).map(|i| (i, -1)).collect::<Vec<_>>(),
        ));
        let t2 = k(a - 1)?
            .substitute(&subst(&[(a as usize + 1, 1)]))
            .mul_monomial(&BigInt::one(), 1, &vshift(a as usize));
        push("maru_2", &ka, &t1.add(&t2));
    }

    // maru_3: K^{(0)}(x) = 1 - q x_{m-1} K^{(m-2)}(q x_1, ..., q x_{m-1})
    let all_up: Vec<i64> = vec![1; nv];
    let t = k(m - 2)?
        .substitute(&all_up)
        .mul_monomial(&BigInt::one(), 1, &vshift(nv));
    push("maru_3", &k0, &one.sub(&t));

    // comp_1: sum_{j=0}^{m-2} q^j (x_{m-j}...x_{m-1})
    //         K^{(0)}(q^{-1}x_1..q^{-1}x_{m-2-j}, x_{m-1-j}, q x_{m-j}..)
    //       = 1 - q^{m-1} x_1...x_{m-1} K^{(0)}(q x)
    let mut lhs = MultiSeries::zero(nv, q_order, deg_cap);
    for j in 0..=(m - 2) as usize {
        let mut exps = vec![0i64; nv];
        let mut shift = vec![0u8; nv];
        for (i, e) in exps.iter_mut().enumerate() {
            let var = i + 1;
            if var <= nv - 1 - j {
                *e = -1;
            } else if var >= nv + 1 - j {
                *e = 1;
            }
        }
        for (i, s) in shift.iter_mut().enumerate() {
            if i + 1 >= nv + 1 - j {
                *s = 1;
            }
        }
        lhs = lhs.add(&k0.substitute(&exps).mul_monomial(&BigInt::one(), j as i64, &shift));
    }
    let rhs = one.sub(
        &k0.substitute(&all_up)
            .mul_monomial(&BigInt::one(), i64::from(m) - 1, &vec![1u8; nv]),
    );
    push("comp_1", &lhs, &rhs);

    // comp_2 (multiplied through by x_{m-1}):
    //   x_{m-1} sum_{j=0}^{m-2} q^j (x_{m-1-j}...x_{m-2})
    //     K^{(0)}(q^{-1}x_1..q^{-1}x_{m-2-j}, x_{m-1-j}, q x_{m-j}..)
    // = 1 - K^{(0)}(q^{-1}x_1, ..., q^{-1}x_{m-1})
    let mut lhs = MultiSeries::zero(nv, q_order, deg_cap);
    for j in 0..=(m - 2) as usize {
        let mut exps = vec![0i64; nv];
        for (i, e) in exps.iter_mut().enumerate() {
            let var = i + 1;
            if var <= nv - 1 - j {
                *e = -1;
            } else if var >= nv + 1 - j {
                *e = 1;
            }
        }
        // coefficient x_{m-1} * x_{m-1-j}...x_{m-2}
        let mut shift = vec![0u8; nv];
        shift[nv - 1] += 1;
        for v in (nv - j).max(1)..=nv.saturating_sub(1) {
            if j > 0 && v >= nv - j {
                shift[v - 1] += 1;
            }
        }
        lhs = lhs.add(&k0.substitute(&exps).mul_monomial(&BigInt::one(), j as i64, &shift));
    }
    let all_down: Vec<i64> = vec![-1; nv];
    let rhs = one.sub(&k0.substitute(&all_down));
    push("comp_2", &lhs, &rhs);

    if a >= 1 {
        // a_and_0_1: K^{(a)}(x_1..x_a, q x_{a+1}..q x_{m-1})
        //   = sum_{j=0}^{a} q^j (x_{a-j+1}...x_a)
        //     K^{(0)}(q^{-1}x_1..q^{-1}x_{a-j-1}, x_{a-j}, q x_{a-j+1}..q x_{m-1})
        let au = a as usize;
        let lhs = ka.substitute(&subst(
            &(au + 1..=nv).map(|i| (i, 1)).collect::<Vec<_>>(),
        ));
        let mut rhs = MultiSeries::zero(nv, q_order, deg_cap);
        for j in 0..=au {
            let mut exps = vec![0i64; nv];
            for (i, e) in exps.iter_mut().enumerate() {
                let var = i + 1;
                if var + j + 1 <= au {
                    *e = -1; // var <= a-j-1
                } else if var > au - j {
                    *e = 1; // var >= a-j+1
                }
            }
            let mut shift = vec![0u8; nv];
            for v in au - j + 1..=au {
                shift[v - 1] = 1;
            }
            rhs = rhs.add(&k0.substitute(&exps).mul_monomial(&BigInt::one(), j as i64, &shift));
        }
        push("a_and_0_1", &lhs, &rhs);

        // a_and_0_2: K^{(a)}(x_1..x_{a+1}, q x_{a+2}..q x_{m-1})
        //   = sum_{j=0}^{a} q^j (x_{a-j+1}...x_a)
        //     K^{(0)}(q^{-1}x_1..q^{-1}x_{a-j}, x_{a-j+1}, q x_{a-j+2}..q x_{m-1})
        let lhs = ka.substitute(&subst(
            &(au + 2..=nv).map(|i| (i, 1)).collect::<Vec<_>>(),
        ));
        let mut rhs = MultiSeries::zero(nv, q_order, deg_cap);
        for j in 0..=au {
            let mut exps = vec![0i64; nv];
            for (i, e) in exps.iter_mut().enumerate() {
                let var = i + 1;
                if var + j <= au {
                    *e = -1; // var <= a-j
                } else if var > au - j + 1 {
                    *e = 1; // var >= a-j+2
                }
            }
            let mut shift = vec![0u8; nv];
            for v in au - j + 1..=au {
                shift[v - 1] = 1;
            }
            rhs = rhs.add(&k0.substitute(&exps).mul_monomial(&BigInt::one(), j as i64, &shift));
        }
        push("a_and_0_2", &lhs, &rhs);
    }

    // collapse: setting every x_i = x reproduces the univariate series
    {
        let x_order = usize::from(deg_cap) * nv + 1;
        let uni = crate::identities::k_series(&crate::identities::KSeriesSpec::new(
            m, a, q_order, x_order,
        )?)?;
        let collapsed = ka.collapse_to_biseries(x_order);
        // compare only total degrees fully captured by the per-variable cap
        let safe_deg = usize::from(cmp_deg);
        let mut disc = None;
        for d in 0..=safe_deg {
            if let Some((kk, dd)) = collapsed.coeff(d).first_discrepancy(&uni.coeff(d)) {
                disc = Some((vec![d as u8], kk, dd));
                break;
            }
        }
        checks.push(RecurrenceCheck {
            name: "collapse_to_univariate".into(),
            passed: disc.is_none(),
            first_discrepancy: disc,
        });
    }

    Ok(RecurrenceReport {
        m,
        a,
        q_order,
        deg_cap,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_a1_all_recurrences_hold() {
        let report = verify_multivariate_recurrences(3, 1, 40, 9).unwrap();
        assert!(
            report.all_passed(),
            "failed checks: {:?}",
            report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .collect::<Vec<_>>()
        );
        assert!(report.checks.iter().any(|c| c.name == "maru_1"));
        assert!(report.checks.iter().any(|c| c.name == "maru_3"));
    }

    #[test]
    fn m4_a2_compositions_hold() {
        let report = verify_multivariate_recurrences(4, 2, 30, 8).unwrap();
        assert!(
            report.all_passed(),
            "failed checks: {:?}",
            report
                .checks
                .iter()
                .filter(|c| !c.passed)
                .collect::<Vec<_>>()
        );
        assert!(report.checks.iter().any(|c| c.name == "comp_1"));
        assert!(report.checks.iter().any(|c| c.name == "comp_2"));
    }

    #[test]
    fn m4_a0_and_m5_grid() {
        for (m, a) in [(4u32, 0u32), (4, 1), (5, 2)] {
            let report = verify_multivariate_recurrences(m, a, 24, 7).unwrap();
            assert!(report.all_passed(), "(m,a) = ({m},{a})");
        }
    }

    #[test]
    fn m2_is_rejected() {
        assert!(verify_multivariate_recurrences(2, 0, 20, 6).is_err());
    }
}
