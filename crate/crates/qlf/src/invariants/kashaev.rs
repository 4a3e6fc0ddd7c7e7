//! Kashaev's invariant for T(2,2m) by the nested omega-sum and by the O(N)
//! theta sum, plus the generalized omega-series Y_m^{(a)}.
//!
//! Nested sum (m >= 2):
//!
//!   <T(2,2m)>_N = N sum_{N-1 >= c_{m-1} >= ... >= c_1 >= 0}
//!                 (-1)^{c_{m-1}} omega^{c_{m-1}(c_{m-1}+1)/2}
//!                 prod_i omega^{c_i(c_i+1)} [c_{i+1} choose c_i]
//!
//! iterated innermost-index-first with partial products hoisted per outer
//! prefix; the Hopf link m = 1 short-circuits to N. Summation is
//! sequential and deterministic.
//!
//! Theta sum:
//!
//!   <T(2,2m)>_N = -(1/4mN) e^{-(m-1)^2 pi i/(2mN)}
//!                 sum_{k=0}^{2mN} k^2 chi_{2m}^{(0)}(k) e^{k^2 pi i/(2mN)}
//!
//! Y_m^{(a)} generalizes the nested sum with shifted binomials
//! [c_{i+1} + delta_{i,a} choose c_i]; its indices run over the full
//! binomial support (c_i <= c_{i+1} + delta_{i,a}, outermost <= N-1).
//! Capping every index at N-1, as a literal reading of the defining
//! display would, drops the boundary terms with c_i = N that carry
//! [N choose N] = 1, and the rational-point identity
//! Phi~(1/N) = phase * Y visibly fails by exactly that contribution.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{QlfError, Result};
use crate::invariants::group_ring::{ExactValue, GroupRingElement};
use crate::invariants::root_context::RootContext;
use crate::numeric::{unit_phase, HPComplex, PeriodicChar};

/// Which formula produced an invariant value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Nested,
    Theta,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Nested => "nested",
            Method::Theta => "theta",
        }
    }
}

/// A computed invariant value with optional exact backend result.
#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub m: u32,
    pub n: u32,
    pub method: Method,
    pub value: HPComplex,
    pub exact: Option<ExactValue>,
    /// |complex value - evaluated exact value| when both backends ran.
    pub backend_residual: Option<f64>,
}

fn check_backend(value: &HPComplex, exact: &Option<ExactValue>, prec: u32) -> Option<f64> {
    exact
        .as_ref()
        .map(|e| value.dist(&e.eval(prec + 32)).to_f64())
}

/// Kashaev's invariant by the nested sum. m = 1 is the Hopf link with
/// value N; m >= 2 runs the decreasing-chain sum.
pub fn kashaev_nested(m: u32, ctx: &RootContext) -> Result<InvariantResult> {
    if m < 1 {
        return Err(QlfError::InvalidParameter("m must be >= 1".into()));
    }
    let n = ctx.n();
    let prec = ctx.work_prec();
    if m == 1 {
        let value = HPComplex::from_int(i64::from(n), prec);
        let exact = ctx.exact_enabled().then(|| ExactValue {
            element: GroupRingElement::monomial(ctx.ring_modulus(), 0),
            scale: BigRational::from(BigInt::from(n)),
        });
        let backend_residual = check_backend(&value, &exact, ctx.precision_bits());
        return Ok(InvariantResult {
            m,
            n,
            method: Method::Nested,
            value: value.with_prec(ctx.precision_bits()),
            exact,
            backend_residual,
        });
    }

    let levels = (m - 1) as usize;
    let mut total = HPComplex::zero(prec);

    // complex backend: depth-first, innermost index last, partial products
    // hoisted per outer prefix
    fn descend_complex(
        ctx: &RootContext,
        level: usize,
        upper: i64,
        partial: &HPComplex,
        total: &mut HPComplex,
    ) {
        if level == 0 {
            *total = total.add(partial);
            return;
        }
        for c in 0..=upper {
            let factor = ctx
                .omega_pow(c * (c + 1))
                .mul(&ctx.binomial_at_omega(upper as u32, c));
            let next = partial.mul(&factor);
            descend_complex(ctx, level - 1, c, &next, total);
        }
    }

    for c in 0..i64::from(n) {
        let sign = if c % 2 == 0 { 1 } else { -1 };
        let partial = ctx.omega_half_triangle(c).scale_int(sign);
        descend_complex(ctx, levels - 1, c, &partial, &mut total);
    }
    let value = total.scale_int(i64::from(n));

    let exact = if ctx.exact_enabled() {
        let modulus = ctx.ring_modulus();
        let mut total = GroupRingElement::zero(modulus);
        fn descend_exact(
            ctx: &RootContext,
            level: usize,
            upper: i64,
            partial: &GroupRingElement,
            total: &mut GroupRingElement,
        ) {
            if level == 0 {
                total.add_assign(partial);
                return;
            }
            for c in 0..=upper {
                let binom = ctx.binomial_at_omega_exact(upper as u32, c);
                let next = partial.rotate(2 * c * (c + 1)).mul(&binom);
                descend_exact(ctx, level - 1, c, &next, total);
            }
        }
        for c in 0..i64::from(n) {
            let sign = BigInt::from(if c % 2 == 0 { 1 } else { -1 });
            let partial = GroupRingElement::monomial(modulus, c * (c + 1)).scale(&sign);
            descend_exact(ctx, levels - 1, c, &partial, &mut total);
        }
        Some(ExactValue {
            element: total,
            scale: BigRational::from(BigInt::from(n)),
        })
    } else {
        None
    };

    let backend_residual = check_backend(&value, &exact, ctx.precision_bits());
    Ok(InvariantResult {
        m,
        n,
        method: Method::Nested,
        value: value.with_prec(ctx.precision_bits()),
        exact,
        backend_residual,
    })
}

/// Kashaev's invariant by the theta-sum expression; O(N) terms.
pub fn kashaev_theta(m: u32, ctx: &RootContext) -> Result<InvariantResult> {
    if m < 2 {
        return Err(QlfError::InvalidParameter(
            "the theta expression needs m >= 2 (m = 1 is the Hopf link)".into(),
        ));
    }
    let n = ctx.n();
    let prec = ctx.work_prec();
    let chi = PeriodicChar::new(m, 0)?;
    let two_mn = 2 * i64::from(m) * i64::from(n);

    let mut sum = HPComplex::zero(prec);
    for k in 0..=two_mn {
        let c = chi.eval(k);
        if c == 0 {
            continue;
        }
        // e^{k^2 pi i/(2mN)}, reduced exactly
        let phase = unit_phase(
            &BigRational::new(BigInt::from(k) * BigInt::from(k), BigInt::from(two_mn)),
            prec,
        );
        sum = sum.add(&phase.scale_int(k * k * i64::from(c)));
    }
    let b = i64::from(m - 1) * i64::from(m - 1);
    let pref = unit_phase(&BigRational::new(BigInt::from(-b), BigInt::from(two_mn)), prec);
    let scale = BigRational::new(BigInt::from(-1), BigInt::from(2 * two_mn));
    let value = sum.mul(&pref).scale_rational(&scale);

    let exact = if ctx.exact_enabled() {
        // group ring mod 4mN with generator xi = e^{i pi/(2mN)}
        let modulus = (2 * two_mn) as usize;
        let mut element = GroupRingElement::zero(modulus);
        for k in 0..=two_mn {
            let c = chi.eval(k);
            if c == 0 {
                continue;
            }
            element.add_monomial(k * k, &BigInt::from(k * k * i64::from(c)));
        }
        let element = element.rotate(-b);
        Some(ExactValue {
            element,
            scale: scale.clone(),
        })
    } else {
        None
    };

    let backend_residual = check_backend(&value, &exact, ctx.precision_bits());
    Ok(InvariantResult {
        m,
        n,
        method: Method::Theta,
        value: value.with_prec(ctx.precision_bits()),
        exact,
        backend_residual,
    })
}

/// The omega-series Y_m^{(a)}(omega), summed over the binomials' support.
pub fn y_series(m: u32, a: u32, ctx: &RootContext) -> Result<HPComplex> {
    PeriodicChar::new(m, a)?;
    let n = i64::from(ctx.n());
    let prec = ctx.work_prec();
    let mut total = HPComplex::zero(prec);

    if m == 2 {
        for c in 0..n {
            let sign = if c % 2 == 0 { 1 } else { -1 };
            total = total.add(&ctx.omega_half_triangle(c).scale_int(sign));
        }
        return Ok(total);
    }

    fn descend(
        ctx: &RootContext,
        a: u32,
        level: usize,
        upper: i64,
        partial: &HPComplex,
        total: &mut HPComplex,
    ) {
        if level == 0 {
            *total = total.add(partial);
            return;
        }
        let delta = if level as u32 == a { 1 } else { 0 };
        let linear = level as u32 > a;
        for c in 0..=(upper + delta) {
            let e = c * c + if linear { c } else { 0 };
            let factor = ctx
                .omega_pow(e)
                .mul(&ctx.binomial_at_omega((upper + delta) as u32, c));
            let next = partial.mul(&factor);
            descend(ctx, a, level - 1, c, &next, total);
        }
    }

    let levels = (m - 1) as usize;
    for c in 0..n {
        let sign = if c % 2 == 0 { 1 } else { -1 };
        let partial = ctx.omega_half_triangle(c).scale_int(sign);
        descend(ctx, a, levels - 1, c, &partial, &mut total);
    }
    Ok(total)
}

/// Exact-backend Y_m^{(a)} in Z[x]/(x^{2N}-1).
pub fn y_series_exact(m: u32, a: u32, ctx: &RootContext) -> Result<GroupRingElement> {
    PeriodicChar::new(m, a)?;
    let n = i64::from(ctx.n());
    let modulus = ctx.ring_modulus();
    let mut total = GroupRingElement::zero(modulus);

    if m == 2 {
        for c in 0..n {
            let sign = BigInt::from(if c % 2 == 0 { 1 } else { -1 });
            total.add_assign(&GroupRingElement::monomial(modulus, c * (c + 1)).scale(&sign));
        }
        return Ok(total);
    }

    fn descend(
        ctx: &RootContext,
        a: u32,
        level: usize,
        upper: i64,
        partial: &GroupRingElement,
        total: &mut GroupRingElement,
    ) {
        if level == 0 {
            total.add_assign(partial);
            return;
        }
        let delta = if level as u32 == a { 1 } else { 0 };
        let linear = level as u32 > a;
        for c in 0..=(upper + delta) {
            let e = c * c + if linear { c } else { 0 };
            let binom = ctx.binomial_at_omega_exact((upper + delta) as u32, c);
            if binom.is_zero() {
                continue;
            }
            let next = partial.rotate(2 * e).mul(&binom);
            descend(ctx, a, level - 1, c, &next, total);
        }
    }

    let levels = (m - 1) as usize;
    for c in 0..n {
        let sign = BigInt::from(if c % 2 == 0 { 1 } else { -1 });
        let partial = GroupRingElement::monomial(modulus, c * (c + 1)).scale(&sign);
        descend(ctx, a, levels - 1, c, &partial, &mut total);
    }
    Ok(total)
}
