//! Closed forms of the six fractions in the singular modulus, together
//! with the parametrizations and polynomial equations that certify
//! them.
//!
//! The centerpiece is the Rogers-Ramanujan chain: with `k = k_r`,
//! `k₂₅ = k_{25r}` and the degree-5 multiplier `M₅ = K(k₂₅)/K(k)`,
//!
//! ```text
//! a_r = (k'/k'₂₅)² √(k/k₂₅) M₅⁻³,
//! R(q) = (-11/2 - a_r/2 + √(125 + 22 a_r + a_r²)/2)^(1/5),
//! ```
//!
//! because `a_r` equals `R⁻⁵ - 11 - R⁵`.  Everything else here feeds or
//! cross-checks that chain and its analogues for H, V, S, Q, M:
//!
//! * [`m5_polyroot`] — `M₅` as a root of
//!   `(5M-1)⁵(1-M) = 256 k² k'² M`, selected against the `K`-ratio;
//! * [`theorem22_chain`] — the free-parameter route `L → w → (k, k₂₅)`
//!   that evaluates `R` *without knowing `r` in advance*;
//! * [`p_param_roundtrip`] / [`p_from_r`] — the algebraic
//!   parametrization `p → (W, T, w, k)` and its inversion at a singular
//!   point, with the degree-12 polynomials satisfied by `p` and by
//!   `x = √(k/w) = (k/k₂₅)^(1/4)`;
//! * [`w_sextic_solve`] / [`g_sextic_residual`] — sextics satisfied by
//!   `w = √(k k₂₅)` and by `G = (R⁻⁵ - 11 - R⁵)^(1/3)`;
//! * [`rr_deriv_closed`] — two independent closed forms of `dR/dq`;
//! * [`h_closed`], [`cubic_closed`], [`k81_from_v3`], [`s_closed`],
//!   [`q_closed`], [`m_closed`] — radical closed forms of the other
//!   fractions, each with a built-in algebraic round-trip check.

use rug::Float;

use crate::cfrac::FractionKind;
use crate::elliptic::{modulus_from_r, Modulus, SingularPoint};
use crate::error::{Error, Result};
use crate::numerics::{real_roots, RealPoly};
use crate::precision::PrecisionContext;
use crate::qseries;

/// Residual tolerance multiplier for internal algebraic round-trips.
///
/// Chains of a dozen radicals accumulate a few dozen ulps; 1000·eps
/// leaves comfortable slack while still catching any real formula
/// error, which would miss by many orders of magnitude.
const CHAIN_TOL: u32 = 1000;

/// Root-selection window as a fraction of the certified bits: a
/// polynomial root must agree with its oracle to `2^-(working_bits/4)`
/// to be accepted (roots of the catalog polynomials are separated by
/// far more than that).
fn selection_tol(ctx: &PrecisionContext) -> Float {
    ctx.two_pow(-((ctx.working_bits() / 4) as i32))
}

fn chain_guard(ctx: &PrecisionContext, got: &Float, expect: &Float, what: &str) -> Result<()> {
    let diff = ctx.rel_diff(got, expect);
    let tol = ctx.real(CHAIN_TOL) * ctx.eps();
    if diff > tol {
        return Err(Error::ChainInconsistent(format!(
            "{what}: relative deviation {:.3e}",
            diff.to_f64()
        )));
    }
    Ok(())
}

/// The Rogers-Ramanujan closed-form chain at one singular point.
#[derive(Debug)]
pub struct RRChain {
    /// Singular data at `r`.
    pub point: SingularPoint,
    /// Singular data at `25r`.
    pub point25: SingularPoint,
    /// Degree-5 multiplier `K(k₂₅)/K(k)`.
    pub m5: Float,
    /// The combination `a_r = (k'/k'₂₅)² √(k/k₂₅) M₅⁻³ = R⁻⁵-11-R⁵`.
    pub a: Float,
    /// The fraction value `R(e^(-π√r))`.
    pub value: Float,
}

/// Evaluate the Rogers-Ramanujan fraction in closed form from the
/// singular moduli at `r` and `25r`.
///
/// # Errors
///
/// Propagates modulus construction errors (`r ≤ 0`, nome underflow,
/// internal cross-check failures).
pub fn rr_chain(ctx: &PrecisionContext, r: &Float) -> Result<RRChain> {
    let point = modulus_from_r(ctx, r)?;
    let r25 = ctx.real(25u32) * r;
    let point25 = modulus_from_r(ctx, &r25)?;

    let m5 = point25.modulus().big_k(ctx)? / point.modulus().big_k(ctx)?;
    let kp_ratio = ctx.powi(&(ctx.real(point.kprime()) / point25.kprime()), 2);
    let k_ratio = (ctx.real(point.k()) / point25.k()).sqrt();
    let a = kp_ratio * k_ratio / ctx.powi(&m5, 3);
    let value = rr_from_a(ctx, &a)?;
    Ok(RRChain {
        point,
        point25,
        m5,
        a,
        value,
    })
}

/// Solve `R⁻⁵ - 11 - R⁵ = a` for the positive fifth root:
/// `R = (-11/2 - a/2 + √(125 + 22a + a²)/2)^(1/5)`.
///
/// # Errors
///
/// [`Error::Domain`] if the inner expression is not positive (happens
/// only for `a < -16.47…`, i.e. outside the image of real `q`).
pub fn rr_from_a(ctx: &PrecisionContext, a: &Float) -> Result<Float> {
    let disc = (ctx.real(125u32) + ctx.real(22u32) * a + ctx.powi(a, 2)).sqrt();
    let inner = (disc - a - 11u32) / 2u32;
    ctx.pow_frac(&inner, 1, 5)
}

/// The degree-6 polynomial `(5M-1)⁵(1-M) - 256 k² k'² M` in `M`,
/// expanded to
/// `-1 + (26 - 256k²k'²)M - 275M² + 1500M³ - 4375M⁴ + 6250M⁵ - 3125M⁶`.
pub fn m5_polynomial(ctx: &PrecisionContext, modulus: &Modulus) -> RealPoly {
    let kk = ctx.powi(modulus.k(), 2) * ctx.powi(modulus.kprime(), 2);
    RealPoly::new(vec![
        ctx.real(-1i32),
        ctx.real(26u32) - ctx.real(256u32) * kk,
        ctx.real(-275i32),
        ctx.real(1500u32),
        ctx.real(-4375i32),
        ctx.real(6250u32),
        ctx.real(-3125i32),
    ])
}

/// `M₅` obtained from its defining polynomial rather than from the
/// `K`-ratio.
#[derive(Debug)]
pub struct M5Root {
    /// The multiplier value.
    pub value: Float,
    /// `|P(value)|` for the defining sextic.
    pub residual: Float,
    /// True when the sextic root is tangent (even multiplicity) so that
    /// sign-change isolation is impossible and the `K`-ratio value was
    /// certified against the polynomial instead.
    pub tangent: bool,
}

/// Solve `(5M-1)⁵(1-M) = 256 k² k'² M` for the multiplier in `(1/5, 1)`
/// and reconcile it with the `K`-ratio oracle.
///
/// # Algorithm
///
/// The sextic depends on the moduli only through `k²k'²`, so reflected
/// parameters (`r` and `1/r`) share one polynomial with several roots
/// in `(1/5, 1)`; the root closest to `K(k_{25r})/K(k_r)` is selected.
/// At `r = 1` (where `k = k'`) the multiplier `(2+√5)/5` is a *double*
/// root — the sextic is tangent to the axis — so isolation by sign
/// change must fail; in that case the `K`-ratio value is certified by a
/// direct residual bound and returned with `tangent = true`.
///
/// # Errors
///
/// [`Error::NoMatchingRoot`] if no root (nor the tangency) matches the
/// oracle.
pub fn m5_polyroot(ctx: &PrecisionContext, r: &Float) -> Result<M5Root> {
    let point = modulus_from_r(ctx, r)?;
    let r25 = ctx.real(25u32) * r;
    let point25 = modulus_from_r(ctx, &r25)?;
    let oracle = point25.modulus().big_k(ctx)? / point.modulus().big_k(ctx)?;

    let poly = m5_polynomial(ctx, point.modulus());
    let lo = ctx.rational(1, 5);
    let hi = ctx.real(1u32);
    match real_roots(ctx, &poly, &lo, &hi) {
        Ok(roots) => {
            let tol = selection_tol(ctx) * (ctx.real(1u32) + ctx.real(oracle.abs_ref()));
            let best = roots
                .into_iter()
                .min_by(|a, b| {
                    let da = ctx.real(&a.value - &oracle).abs();
                    let db = ctx.real(&b.value - &oracle).abs();
                    da.partial_cmp(&db).expect("finite root distances")
                })
                .ok_or_else(|| {
                    Error::NoMatchingRoot(format!(
                        "multiplier sextic has no root in (1/5, 1) at r = {:.6}",
                        r.to_f64()
                    ))
                })?;
            let dist = ctx.real(&best.value - &oracle).abs();
            if dist > tol {
                return Err(Error::NoMatchingRoot(format!(
                    "nearest sextic root {:.10} is {:.3e} away from the K-ratio {:.10}",
                    best.value.to_f64(),
                    dist.to_f64(),
                    oracle.to_f64()
                )));
            }
            Ok(M5Root {
                value: best.value,
                residual: best.residual,
                tangent: false,
            })
        }
        Err(Error::PrecisionExhausted(_)) => {
            // Tangent case: certify the K-ratio against the polynomial.
            let (value, scale) = poly.eval_with_scale(ctx, &oracle);
            let resid = ctx.real(value.abs_ref());
            let bound = ctx.real(scale) * ctx.real(ctx.eps().sqrt_ref());
            if resid > bound {
                return Err(Error::NoMatchingRoot(format!(
                    "sextic is tangent but the K-ratio residual {:.3e} is not small",
                    resid.to_f64()
                )));
            }
            Ok(M5Root {
                value: oracle,
                residual: resid,
                tangent: true,
            })
        }
        Err(e) => Err(e),
    }
}

/// Result of the free-parameter evaluation chain `L → w → (k, k₂₅) → R`.
#[derive(Debug)]
pub struct LChain {
    /// The free parameter.
    pub l: Float,
    /// `w = √(L(18+L) / (6(64+3L)))`, which equals `√(k·k₂₅)`.
    pub w: Float,
    /// The modulus `k` with `k = k_r` for the induced `r`.
    pub k: Float,
    /// The companion modulus `k₂₅ = k_{25r}`.
    pub k25: Float,
    /// The induced parameter `r = K²(k')/K²(k)`.
    pub r: Float,
    /// `A_L = k³(1-k²) M₅⁻³ / (k²w - w⁵)`, which equals `R⁻⁵-11-R⁵`.
    pub a: Float,
    /// The Rogers-Ramanujan value `R(e^(-π√r))`.
    pub value: Float,
}

/// Evaluate `R` from a free positive parameter `L`, without knowing the
/// singular parameter `r` in advance.
///
/// # Algorithm
///
/// ```text
/// w = √(L(18+L)/(6(64+3L))),   M = (18+L)/(64+3L),
/// σ = (L/M)^(1/6) - 4(M/L)^(1/6),   t = √(2/3) σ,
/// √(k₂₅/w) = √(w/k) = (t + √(4+t²))/2,
/// ```
///
/// so `k = w/u²` and `k₂₅ = w·u²` with `u` the quoted radical; then
/// `r = K²(k')/K²(k)`, `M₅ = K(k₂₅)/K(k)`,
/// `A_L = k³(1-k²)M₅⁻³/(k²w - w⁵)` and `R` follows from [`rr_from_a`].
/// The inverse relation `L = -9 + 9w² + √3·√(27 + 74w² + 27w⁴)` is
/// checked as a round-trip guard.
///
/// # Errors
///
/// [`Error::Domain`] for `L ≤ 0` or if the induced `k` leaves `(0, 1)`;
/// [`Error::ChainInconsistent`] if the round-trip fails.
pub fn theorem22_chain(ctx: &PrecisionContext, l: &Float) -> Result<LChain> {
    if !(l.is_finite() && l.is_sign_positive() && *l != 0u32) {
        return Err(Error::Domain(format!("parameter L must be positive, got {l}")));
    }
    let m = (ctx.real(18u32) + l) / (ctx.real(64u32) + ctx.real(3u32) * l);
    let w = ((ctx.real(l) * (ctx.real(18u32) + l))
        / (ctx.real(6u32) * (ctx.real(64u32) + ctx.real(3u32) * l)))
    .sqrt();
    let ratio = ctx.real(l) / &m;
    let sigma = ctx.pow_frac(&ratio, 1, 6)? - ctx.real(4u32) * ctx.pow_frac(&ratio, -1, 6)?;
    let t = (ctx.rational(2, 3)).sqrt() * sigma;
    let u = (ctx.real(&t) + (ctx.powi(&t, 2) + 4u32).sqrt()) / 2u32;

    let k = ctx.real(&w) / ctx.powi(&u, 2);
    let k25 = ctx.real(&w) * ctx.powi(&u, 2);
    let modulus = Modulus::new(ctx, ctx.real(&k))?;
    let modulus25 = Modulus::new(ctx, ctx.real(&k25))?;

    // Round-trip guard: w determines L back again.
    let w2 = ctx.powi(&w, 2);
    let l_back = ctx.real(-9i32)
        + ctx.real(9u32) * &w2
        + ctx.real(3u32).sqrt()
            * ((ctx.real(27u32) + ctx.real(74u32) * &w2 + ctx.real(27u32) * ctx.powi(&w2, 2))
                .sqrt());
    chain_guard(ctx, &l_back, l, "L recovered from w")?;

    let big_k = modulus.big_k(ctx)?;
    let r = ctx.powi(&(modulus.big_k_prime(ctx)? / &big_k), 2);
    let m5 = modulus25.big_k(ctx)? / &big_k;
    let denom = ctx.powi(&k, 2) * &w - ctx.powi(&w, 5);
    let a = ctx.powi(&k, 3) * (ctx.real(1u32) - ctx.powi(&k, 2))
        / (ctx.powi(&m5, 3) * denom);
    let value = rr_from_a(ctx, &a)?;
    Ok(LChain {
        l: ctx.real(l),
        w,
        k,
        k25,
        r,
        a,
        value,
    })
}

/// The algebraic parametrization `p → (W, T, w, k*, k, x)`.
#[derive(Debug)]
pub struct PParam {
    /// The parameter `p`.
    pub p: Float,
    /// `W = -1 + 4p² + √(1 - 2p² + 16p⁴)`.
    pub w_cap: Float,
    /// `T = -1 + 64p⁶ + √(1 + 88p⁶ + 4096p¹²)`.
    pub t_cap: Float,
    /// `w = 6^(3/2) p³ / T`.
    pub w: Float,
    /// `k* = W²/(6p²) = k/w`.
    pub k_star: Float,
    /// `k = k* · w`.
    pub k: Float,
    /// `x = W/(√6 p) = √(k*) = (k/k₂₅)^(1/4)`.
    pub x: Float,
}

/// Self-consistency relations shared by the forward map and the
/// inversion.
fn p_param_guards(ctx: &PrecisionContext, pp: &PParam) -> Result<()> {
    let PParam {
        p,
        w_cap,
        t_cap,
        w,
        k,
        ..
    } = pp;
    // p from T: p = (T(2+T)/(216+128T))^(1/6).
    let frac_t = ctx.real(t_cap) * (ctx.real(2u32) + t_cap)
        / (ctx.real(216u32) + ctx.real(128u32) * t_cap);
    let p_t = ctx.pow_frac(&frac_t, 1, 6)?;
    chain_guard(ctx, &p_t, p, "p recovered from T")?;
    // p from W: p = (W(W+2)/(8W+6))^(1/2).
    let frac_w = ctx.real(w_cap) * (ctx.real(w_cap) + 2u32)
        / (ctx.real(8u32) * w_cap + 6u32);
    let p_w = frac_w.sqrt();
    chain_guard(ctx, &p_w, p, "p recovered from W")?;
    // w = 6k(W+2)/((6+8W)W).
    let w_alt = ctx.real(6u32) * k * (ctx.real(w_cap) + 2u32)
        / ((ctx.real(6u32) + ctx.real(8u32) * w_cap) * ctx.real(w_cap));
    chain_guard(ctx, &w_alt, w, "w recovered from k and W")?;
    // T = √6 W² p / k.
    let t_alt = ctx.real(6u32).sqrt() * ctx.powi(w_cap, 2) * ctx.real(p) / k;
    chain_guard(ctx, &t_alt, t_cap, "T recovered from W, p, k")?;
    // The quintic-radical relation satisfied by (W, k).
    let resid = eq35_residual(ctx, w_cap, k)?;
    let scale = eq35_scale(ctx, w_cap, k)?;
    let bound = ctx.real(&scale) * ctx.real(CHAIN_TOL) * ctx.eps();
    if ctx.real(resid.abs_ref()) > bound {
        return Err(Error::ChainInconsistent(format!(
            "(W, k) radical relation residual {:.3e} exceeds scale allowance",
            resid.to_f64()
        )));
    }
    Ok(())
}

/// Forward algebraic map from `p ∈ (0, 1/2)`, with every inverse
/// relation round-tripped.
///
/// This is pure algebra: the produced `k` need not lie in `(0, 1)` (no
/// singular point is constructed from it).
///
/// # Errors
///
/// [`Error::Domain`] outside `(0, 1/2)`; [`Error::ChainInconsistent`]
/// if any round-trip fails.
pub fn p_param_roundtrip(ctx: &PrecisionContext, p: &Float) -> Result<PParam> {
    if !(p.is_finite() && p.is_sign_positive() && *p != 0u32 && *p < 0.5f64) {
        return Err(Error::Domain(format!(
            "forward parametrization needs p in (0, 1/2), got {p}"
        )));
    }
    let p2 = ctx.powi(p, 2);
    let p6 = ctx.powi(p, 6);
    let w_cap = ctx.real(-1i32)
        + ctx.real(4u32) * &p2
        + (ctx.real(1u32) - ctx.real(2u32) * &p2 + ctx.real(16u32) * ctx.powi(&p2, 2)).sqrt();
    let t_cap = ctx.real(-1i32)
        + ctx.real(64u32) * &p6
        + (ctx.real(1u32) + ctx.real(88u32) * &p6 + ctx.real(4096u32) * ctx.powi(&p6, 2))
            .sqrt();
    let w = ctx.pow_frac(&ctx.real(6u32), 3, 2)? * ctx.powi(p, 3) / &t_cap;
    let k_star = ctx.powi(&w_cap, 2) / (ctx.real(6u32) * &p2);
    let k = ctx.real(&k_star) * &w;
    let x = ctx.real(&w_cap) / (ctx.real(6u32).sqrt() * p);
    let pp = PParam {
        p: ctx.real(p),
        w_cap,
        t_cap,
        w,
        k_star,
        k,
        x,
    };
    p_param_guards(ctx, &pp)?;
    Ok(pp)
}

/// Invert the parametrization at a singular point: from `k = k_r` and
/// `k₂₅ = k_{25r}` recover `(p, W, T, w, x)`.
///
/// # Algorithm
///
/// `w = √(k k₂₅)`, `k* = k/w`; `W` is the positive root of
/// `8W² + 6(1-k*)W - 12k* = 0` (equivalent to `k* = W²/(6p²)` with
/// `p² = W(W+2)/(8W+6)`); then `p`, `T`, `x` follow and every forward
/// relation is round-tripped.
///
/// # Errors
///
/// Propagates modulus errors and round-trip failures.
pub fn p_from_r(ctx: &PrecisionContext, r: &Float) -> Result<PParam> {
    let point = modulus_from_r(ctx, r)?;
    let r25 = ctx.real(25u32) * r;
    let point25 = modulus_from_r(ctx, &r25)?;
    let k = ctx.real(point.k());
    let w = (ctx.real(&k) * point25.k()).sqrt();
    let k_star = ctx.real(&k) / &w;

    // 8W² + 6(1-k*)W - 12k* = 0, W > 0.
    let b = ctx.real(6u32) * (ctx.real(1u32) - &k_star);
    let disc = (ctx.powi(&b, 2) + ctx.real(384u32) * &k_star).sqrt();
    let w_cap = (disc - b) / 16u32;

    let p = (ctx.real(&w_cap) * (ctx.real(&w_cap) + 2u32)
        / (ctx.real(8u32) * &w_cap + 6u32))
        .sqrt();
    let t_cap = ctx.real(6u32).sqrt() * ctx.powi(&w_cap, 2) * ctx.real(&p) / &k;
    let x = ctx.real(&w_cap) / (ctx.real(6u32).sqrt() * &p);
    let pp = PParam {
        p,
        w_cap,
        t_cap,
        w,
        k_star,
        k,
        x,
    };
    p_param_guards(ctx, &pp)?;
    // x = (k/k₂₅)^(1/4), independently of the W-route.
    let ratio = ctx.real(pp.k.clone()) / point25.k();
    let x_alt = ctx.pow_frac(&ratio, 1, 4)?;
    chain_guard(ctx, &x_alt, &pp.x, "x recovered from the modulus quotient")?;
    Ok(pp)
}

/// Residual of the radical relation tying `W` to `k`:
/// `-108k²u^(5/2) + √6 k W²(1 - 64u³) + 3W⁴ u^(1/2)` with
/// `u = W(W+2)/(8W+6)`.
pub fn eq35_residual(ctx: &PrecisionContext, w_cap: &Float, k: &Float) -> Result<Float> {
    let (t0, t1, t2) = eq35_terms(ctx, w_cap, k)?;
    Ok(t0 + t1 + t2)
}

/// Magnitude scale `Σ|terms|` of [`eq35_residual`], for tolerance
/// calibration.
pub fn eq35_scale(ctx: &PrecisionContext, w_cap: &Float, k: &Float) -> Result<Float> {
    let (t0, t1, t2) = eq35_terms(ctx, w_cap, k)?;
    Ok(ctx.real(t0.abs_ref()) + ctx.real(t1.abs_ref()) + ctx.real(t2.abs_ref()))
}

fn eq35_terms(
    ctx: &PrecisionContext,
    w_cap: &Float,
    k: &Float,
) -> Result<(Float, Float, Float)> {
    let u = ctx.real(w_cap) * (ctx.real(w_cap) + 2u32)
        / (ctx.real(8u32) * w_cap + 6u32);
    let t0 = ctx.real(-108i32) * ctx.powi(k, 2) * ctx.pow_frac(&u, 5, 2)?;
    let t1 = ctx.real(6u32).sqrt()
        * ctx.real(k)
        * ctx.powi(w_cap, 2)
        * (ctx.real(1u32) - ctx.real(64u32) * ctx.powi(&u, 3));
    let t2 = ctx.real(3u32) * ctx.powi(w_cap, 4) * ctx.real(u.sqrt_ref());
    Ok((t0, t1, t2))
}

/// The degree-12 polynomial in `p` equivalent to the radical relation
/// of [`eq35_residual`], with coefficients in `k` and `k'² = 1 - k²`.
pub fn p_polynomial(ctx: &PrecisionContext, k: &Float) -> RealPoly {
    let k2 = ctx.powi(k, 2);
    let kp2 = ctx.real(1u32) - &k2;
    let s6 = ctx.real(6u32).sqrt();
    let skk = ctx.real(&s6) * k * &kp2; // √6·k·k'²
    RealPoly::new(vec![
        ctx.real(&k2),
        ctx.real(2u32) * &skk,
        ctx.real(-24i32) * &k2,
        ctx.real(-10i32) * &skk,
        ctx.real(240u32) * &k2,
        ctx.real(32u32) * &skk,
        ctx.real(54u32) - ctx.real(1388u32) * &k2 + ctx.real(54u32) * ctx.powi(&k2, 2),
        ctx.real(-128i32) * &skk,
        ctx.real(3840u32) * &k2,
        ctx.real(640u32) * &skk,
        ctx.real(-6144i32) * &k2,
        ctx.real(-2048i32) * &skk,
        ctx.real(4096u32) * &k2,
    ])
}

/// The degree-12 polynomial in `x = (k/k₂₅)^(1/4)`, coefficients in
/// `k` and `k'²`:
///
/// ```text
/// k² + 4k'²k x - 6k² x² + 20k'²k x³ + 15k² x⁴ - 16k'²k x⁵
///    + (16 - 52k² + 16k⁴) x⁶ + 16k'²k x⁷ + 15k² x⁸ - 20k'²k x⁹
///    - 6k² x¹⁰ - 4k'²k x¹¹ + k² x¹²
/// ```
///
/// The `x⁴` coefficient is `15k²` (not a bare 15): the polynomial is
/// anti-palindromic under `x ↦ -1/x` — coefficients pair as
/// `c_i ↔ ± c_{12-i}` — and the `x⁸` coefficient `15k²` forces its
/// mirror.  This corrected coefficient is what vanishes (to working
/// precision) at the parametrization's root; see the verifier entry
/// `x_poly_37` for how the discrepancy with the traditionally printed
/// statement is reported.
pub fn x_polynomial(ctx: &PrecisionContext, k: &Float) -> RealPoly {
    let k2 = ctx.powi(k, 2);
    let kp2 = ctx.real(1u32) - &k2;
    let kkp = ctx.real(k) * &kp2; // k·k'²
    RealPoly::new(vec![
        ctx.real(&k2),
        ctx.real(4u32) * &kkp,
        ctx.real(-6i32) * &k2,
        ctx.real(20u32) * &kkp,
        ctx.real(15u32) * &k2,
        ctx.real(-16i32) * &kkp,
        ctx.real(16u32) - ctx.real(52u32) * &k2 + ctx.real(16u32) * ctx.powi(&k2, 2),
        ctx.real(16u32) * &kkp,
        ctx.real(15u32) * &k2,
        ctx.real(-20i32) * &kkp,
        ctx.real(-6i32) * &k2,
        ctx.real(-4i32) * &kkp,
        ctx.real(&k2),
    ])
}

/// The sextic satisfied by `w = √(k k₂₅)` with coefficients in `k`:
///
/// ```text
/// k⁶ + k³(10k² - 16)w + 15k⁴w² - 20k³w³ + 15k²w⁴ + k(10 - 16k²)w⁵ + w⁶
/// ```
pub fn w_sextic_poly(ctx: &PrecisionContext, k: &Float) -> RealPoly {
    let k2 = ctx.powi(k, 2);
    let k3 = ctx.powi(k, 3);
    RealPoly::new(vec![
        ctx.powi(k, 6),
        ctx.real(&k3) * (ctx.real(10u32) * &k2 - 16u32),
        ctx.real(15u32) * ctx.powi(k, 4),
        ctx.real(-20i32) * &k3,
        ctx.real(15u32) * &k2,
        ctx.real(k) * (ctx.real(10u32) - ctx.real(16u32) * &k2),
        ctx.real(1u32),
    ])
}

/// A selected root of the `w`-sextic, with the companions that were
/// rejected.
#[derive(Debug)]
pub struct WSexticRoot {
    /// The root agreeing with `√(k_r k_{25r})`.
    pub value: Float,
    /// `|P(value)|`.
    pub residual: Float,
    /// Other real roots of the sextic in `(0, 1)` — the sextic also
    /// vanishes at `√(k_r k_{r/25})`, so selection matters.
    pub other_roots: Vec<Float>,
}

/// Solve the `w`-sextic at a singular point and select the root
/// matching the oracle `w = √(k_r k_{25r})`.
///
/// # Errors
///
/// [`Error::NoMatchingRoot`] if no root lies within the selection
/// window of the oracle.
pub fn w_sextic_solve(ctx: &PrecisionContext, r: &Float) -> Result<WSexticRoot> {
    let point = modulus_from_r(ctx, r)?;
    let r25 = ctx.real(25u32) * r;
    let point25 = modulus_from_r(ctx, &r25)?;
    let oracle = (ctx.real(point.k()) * point25.k()).sqrt();

    let poly = w_sextic_poly(ctx, point.k());
    let lo = ctx.real(ctx.eps());
    let hi = ctx.real(1u32);
    let roots = real_roots(ctx, &poly, &lo, &hi)?;
    let tol = selection_tol(ctx) * (ctx.real(1u32) + ctx.real(oracle.abs_ref()));
    let mut value: Option<(Float, Float)> = None;
    let mut other = Vec::new();
    for root in roots {
        let dist = ctx.real(&root.value - &oracle).abs();
        if dist <= tol && value.is_none() {
            value = Some((root.value, root.residual));
        } else {
            other.push(root.value);
        }
    }
    let (value, residual) = value.ok_or_else(|| {
        Error::NoMatchingRoot(format!(
            "w-sextic has no root near √(k k₂₅) = {:.10} at r = {:.6}",
            oracle.to_f64(),
            r.to_f64()
        ))
    })?;
    Ok(WSexticRoot {
        value,
        residual,
        other_roots: other,
    })
}

/// The sextic certificate tying `G = (R⁻⁵ - 11 - R⁵)^(1/3)` to the
/// moduli.
#[derive(Debug)]
pub struct GSextic {
    /// `G = a_r^(1/3)`.
    pub g: Float,
    /// `c = k'² (k*)⁵ / ((k*)⁴ - k²)` with `k* = k/w`.
    pub c: Float,
    /// Signed residual of the sextic at `(c, G)`.
    pub residual: Float,
    /// `Σ|terms|`, for tolerance calibration.
    pub scale: Float,
}

/// Evaluate the sextic
///
/// ```text
/// 3125c² - 6250c^(5/3)G + 4375c^(4/3)G² - 1500cG³ + 275c^(2/3)G⁴
///        + 2c^(1/3)(128k'²k² - 13)G⁵ + G⁶
/// ```
///
/// which vanishes when `G³ = R⁻⁵ - 11 - R⁵` at the singular point.
///
/// # Errors
///
/// Propagates the Rogers-Ramanujan chain; [`Error::Domain`] if the
/// `c`-denominator `(k*)⁴ - k²` is not positive (it always is at
/// singular points, where `k* > 1 > k`).
pub fn g_sextic_residual(ctx: &PrecisionContext, r: &Float) -> Result<GSextic> {
    let chain = rr_chain(ctx, r)?;
    let k = chain.point.k();
    let kp = chain.point.kprime();
    let w = (ctx.real(k) * chain.point25.k()).sqrt();
    let k_star = ctx.real(k) / &w;
    let denom = ctx.powi(&k_star, 4) - ctx.powi(k, 2);
    if !(denom.is_sign_positive() && denom != 0u32) {
        return Err(Error::Domain(format!(
            "(k*)⁴ - k² = {:.3e} is not positive",
            denom.to_f64()
        )));
    }
    let c = ctx.powi(kp, 2) * ctx.powi(&k_star, 5) / denom;
    let g = ctx.pow_frac(&chain.a, 1, 3)?;

    let c13 = ctx.pow_frac(&c, 1, 3)?;
    let c23 = ctx.powi(&c13, 2);
    let c43 = ctx.powi(&c23, 2);
    let c53 = ctx.real(&c43) * &c13;
    let terms = [
        ctx.real(3125u32) * ctx.powi(&c, 2),
        ctx.real(-6250i32) * &c53 * &g,
        ctx.real(4375u32) * &c43 * ctx.powi(&g, 2),
        ctx.real(-1500i32) * &c * ctx.powi(&g, 3),
        ctx.real(275u32) * &c23 * ctx.powi(&g, 4),
        ctx.real(2u32)
            * &c13
            * (ctx.real(128u32) * ctx.powi(kp, 2) * ctx.powi(k, 2) - 13u32)
            * ctx.powi(&g, 5),
        ctx.powi(&g, 6),
    ];
    let mut residual = ctx.real(0u32);
    let mut scale = ctx.real(0u32);
    for t in terms {
        residual += &t;
        scale += ctx.real(t.abs_ref());
    }
    Ok(GSextic {
        g,
        c,
        residual,
        scale,
    })
}

/// The two closed-form routes to `dR/dq`.
#[derive(Debug)]
pub struct RRDerivative {
    /// Via Euler's function:
    /// `R'(q) = (1/5) q^(-5/6) f(-q)⁴ R (R⁻⁵-11-R⁵)^(1/6)`.
    pub eta_route: Float,
    /// Via the elliptic integral:
    /// `R' = 2^(4/3)k^(5/12)k'^(5/3) / (5k₂₅^(1/12)k'₂₅^(1/3)√M₅) · R K²(k)/(π²q)`.
    pub elliptic_route: Float,
}

/// Compute `dR/dq` at a singular point by both closed routes and check
/// their agreement.
///
/// # Errors
///
/// [`Error::ChainInconsistent`] if the two routes disagree beyond the
/// chain tolerance.
pub fn rr_deriv_closed(ctx: &PrecisionContext, r: &Float) -> Result<RRDerivative> {
    let chain = rr_chain(ctx, r)?;
    let nome = chain.point.nome();
    let q = nome.q();

    // Route 1: q^(-5/6) f(-q)⁴ R (R⁻⁵ - 11 - R⁵)^(1/6) / 5.
    let f4 = ctx.powi(&qseries::f_minus(ctx, q)?, 4);
    let sixth = ctx.pow_frac(&chain.a, 1, 6)?;
    let eta_route = nome.pow(ctx, -5, 6)? * f4 * ctx.real(&chain.value) * sixth / 5u32;

    // Route 2: the elliptic prefactor times R K²(k) / (π² q).
    let k = chain.point.k();
    let kp = chain.point.kprime();
    let k25 = chain.point25.k();
    let kp25 = chain.point25.kprime();
    let num = ctx.pow_frac(&ctx.real(2u32), 4, 3)?
        * ctx.pow_frac(k, 5, 12)?
        * ctx.pow_frac(kp, 5, 3)?;
    let den = ctx.real(5u32)
        * ctx.pow_frac(k25, 1, 12)?
        * ctx.pow_frac(kp25, 1, 3)?
        * ctx.real(chain.m5.sqrt_ref());
    let big_k = chain.point.modulus().big_k(ctx)?;
    let elliptic_route = num / den * ctx.real(&chain.value) * ctx.powi(&big_k, 2)
        / (ctx.powi(&ctx.pi(), 2) * ctx.real(q));

    chain_guard(
        ctx,
        &eta_route,
        &elliptic_route,
        "dR/dq via Euler's function vs via K",
    )?;
    Ok(RRDerivative {
        eta_route,
        elliptic_route,
    })
}

/// Closed form of the Ramanujan-Göllnitz-Gordon fraction:
/// with `P = k/(1-k')`, `H = √(P²+1) - P`; round-tripped through the
/// inverse `k = 4(H - H³)/(1 + H²)²`.
///
/// # Errors
///
/// Propagates modulus errors; [`Error::ChainInconsistent`] on a failed
/// round-trip.
pub fn h_closed(ctx: &PrecisionContext, r: &Float) -> Result<Float> {
    let point = modulus_from_r(ctx, r)?;
    let p = ctx.real(point.k()) / (ctx.real(1u32) - point.kprime());
    let h = (ctx.powi(&p, 2) + 1u32).sqrt() - &p;
    let k_back = k_from_h(ctx, &h);
    chain_guard(ctx, &k_back, point.k(), "k recovered from H")?;
    Ok(h)
}

/// The inverse of [`h_closed`]'s radical: `k = 4(H - H³)/(1 + H²)²`.
pub fn k_from_h(ctx: &PrecisionContext, h: &Float) -> Float {
    let num = ctx.real(4u32) * (ctx.real(h) - ctx.powi(h, 3));
    let den = ctx.powi(&(ctx.real(1u32) + ctx.powi(h, 2)), 2);
    num / den
}

/// Closed form of Ramanujan's cubic fraction:
/// `V = 2^(-1/3) k₉^(1/4) k'^(1/6) / (k^(1/12) k'₉^(1/2))` with
/// `k₉ = k_{9r}`; round-tripped through
/// `k² = (1-T)(3+T)³ / ((1+T)(3-T)³)`, `T = √(1-8V³)`.
///
/// # Errors
///
/// Propagates modulus errors; [`Error::ChainInconsistent`] on a failed
/// round-trip.
pub fn cubic_closed(ctx: &PrecisionContext, r: &Float) -> Result<Float> {
    let point = modulus_from_r(ctx, r)?;
    let r9 = ctx.real(9u32) * r;
    let point9 = modulus_from_r(ctx, &r9)?;

    let v = ctx.pow_frac(&ctx.real(2u32), -1, 3)?
        * ctx.pow_frac(point9.k(), 1, 4)?
        * ctx.pow_frac(point.kprime(), 1, 6)?
        / (ctx.pow_frac(point.k(), 1, 12)? * ctx.real(point9.kprime().sqrt_ref()));

    let t = (ctx.real(1u32) - ctx.real(8u32) * ctx.powi(&v, 3)).sqrt();
    let k2 = (ctx.real(1u32) - &t) * ctx.powi(&(ctx.real(3u32) + &t), 3)
        / ((ctx.real(1u32) + &t) * ctx.powi(&(ctx.real(3u32) - &t), 3));
    let k_back = k2.sqrt();
    chain_guard(ctx, &k_back, point.k(), "k recovered from V")?;
    Ok(v)
}

/// The modulus `k_{81r}` predicted from `v₃ = V(q³)` by
///
/// ```text
/// k_{81r} = ((1 + 2v₃² - √(1-8v₃³)) / (1 + 2v₃² + √(1-8v₃³)))² k_r
/// ```
///
/// returned alongside the directly constructed value.
#[derive(Debug)]
pub struct K81Pair {
    /// The radical prediction above.
    pub predicted: Float,
    /// `k_{81r}` from theta constants at `exp(-9π√r)`.
    pub direct: Float,
}

/// Predict `k_{81r}` from the cubic fraction at `q³` and compare with
/// the direct construction.
///
/// # Errors
///
/// Propagates modulus and cubic-chain errors (including nome underflow
/// at `81r` for large `r`).
pub fn k81_from_v3(ctx: &PrecisionContext, r: &Float) -> Result<K81Pair> {
    let point = modulus_from_r(ctx, r)?;
    // V(q³) corresponds to the parameter 9r.
    let r9 = ctx.real(9u32) * r;
    let v3 = cubic_closed(ctx, &r9)?;
    let s = (ctx.real(1u32) - ctx.real(8u32) * ctx.powi(&v3, 3)).sqrt();
    let core = ctx.real(1u32) + ctx.real(2u32) * ctx.powi(&v3, 2);
    let ratio = (ctx.real(&core) - &s) / (core + &s);
    let predicted = ctx.powi(&ratio, 2) * point.k();

    let r81 = ctx.real(81u32) * r;
    let direct = ctx.real(modulus_from_r(ctx, &r81)?.k());
    Ok(K81Pair { predicted, direct })
}

/// Closed form of the octic-prefactor fraction: `S = k^(1/4)/√2`.
///
/// # Errors
///
/// Propagates modulus errors.
pub fn s_closed(ctx: &PrecisionContext, r: &Float) -> Result<Float> {
    let point = modulus_from_r(ctx, r)?;
    Ok(ctx.pow_frac(point.k(), 1, 4)? / ctx.real(2u32).sqrt())
}

/// Closed form of the `Q` fraction: `Q = k K(k) / (2π)`.
///
/// # Errors
///
/// Propagates modulus errors.
pub fn q_closed(ctx: &PrecisionContext, r: &Float) -> Result<Float> {
    let point = modulus_from_r(ctx, r)?;
    let big_k = point.modulus().big_k(ctx)?;
    Ok(ctx.real(point.k()) * big_k / (ctx.real(2u32) * ctx.pi()))
}

/// Closed form of the `M` fraction: `M = √(k_{r/4} K(k_{r/4}) / (2π))`,
/// i.e. the square root of [`q_closed`] at `r/4` (consistent with
/// `Q(q) = M(q²)²`).
///
/// # Errors
///
/// Propagates modulus errors.
pub fn m_closed(ctx: &PrecisionContext, r: &Float) -> Result<Float> {
    let quarter_r = ctx.real(r) / 4u32;
    Ok(q_closed(ctx, &quarter_r)?.sqrt())
}

/// Dispatch the closed-form route for any fraction kind.
///
/// # Errors
///
/// Propagates the per-kind chains.
pub fn fraction_closed(ctx: &PrecisionContext, kind: FractionKind, r: &Float) -> Result<Float> {
    match kind {
        FractionKind::R => Ok(rr_chain(ctx, r)?.value),
        FractionKind::H => h_closed(ctx, r),
        FractionKind::V => cubic_closed(ctx, r),
        FractionKind::S => s_closed(ctx, r),
        FractionKind::Q => q_closed(ctx, r),
        FractionKind::M => m_closed(ctx, r),
    }
}
