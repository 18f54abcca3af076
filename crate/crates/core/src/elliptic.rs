//! Complete elliptic integrals, singular moduli, and the gamma function.
//!
//! The chain implemented here runs: a positive rational `r` determines
//! the nome `q = exp(-π√r)`; theta constants at that nome determine the
//! *singular modulus* `k_r = θ₂²/θ₃²` and its complement
//! `k'_r = θ₄²/θ₃²`, the unique pair with
//!
//! ```text
//! K(k'_r) / K(k_r) = √r,        k_r² + k'_r² = 1,
//! ```
//!
//! where `K` is the complete elliptic integral of the first kind,
//! computed from the arithmetic-geometric mean as
//! `K(k) = π / (2 agm(1, k'))` (DLMF §19.8).  Singular moduli are what
//! turn the continued fractions of this crate into algebraic numbers.
//!
//! Every constructed modulus is cross-checked on the spot against an
//! independent product representation of `k_r` and against the defining
//! `K`-ratio, so a [`SingularPoint`] can be trusted downstream without
//! re-verification.
//!
//! [`gamma`] (Spouge's method) supplies the `Γ(1/4)`-family constants
//! that appear in closed-form evaluations at `r = 1, 2, 4`.

use rug::Float;

use crate::error::{Error, Result};
use crate::nome::Nome;
use crate::precision::PrecisionContext;
use crate::qseries;

/// Iteration cap for the AGM; quadratic convergence needs only
/// `O(log working_bits)` steps, so hitting this indicates bad input.
const MAX_AGM_ITER: u32 = 512;

/// Arithmetic-geometric mean of two positive numbers.
///
/// # Errors
///
/// [`Error::Domain`] unless both arguments are finite and positive;
/// [`Error::NonConvergent`] if the quadratic iteration somehow fails to
/// settle within [`MAX_AGM_ITER`] steps.
pub fn agm(ctx: &PrecisionContext, a: &Float, b: &Float) -> Result<Float> {
    for (name, v) in [("first", a), ("second", b)] {
        if !(v.is_finite() && v.is_sign_positive() && *v != 0u32) {
            return Err(Error::Domain(format!(
                "agm needs positive arguments; {name} argument is {v}"
            )));
        }
    }
    let mut x = ctx.real(a);
    let mut y = ctx.real(b);
    let eps = ctx.eps();
    for _ in 0..MAX_AGM_ITER {
        let diff = ctx.real(&x - &y).abs();
        let scale = ctx.real(x.abs_ref());
        if diff <= ctx.real(&eps) * scale {
            return Ok((x + y) / 2u32);
        }
        let mean = (ctx.real(&x) + &y) / 2u32;
        let geo = (ctx.real(&x) * &y).sqrt();
        x = mean;
        y = geo;
    }
    Err(Error::NonConvergent(
        "agm failed to converge (inputs of wildly different scale?)".into(),
    ))
}

/// Complete elliptic integral of the first kind `K(k)`, for modulus
/// `0 ≤ k < 1`, via `K(k) = π / (2 agm(1, √(1-k²)))`.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 ≤ k < 1`.
pub fn ell_k(ctx: &PrecisionContext, k: &Float) -> Result<Float> {
    if !(k.is_finite() && *k >= 0u32 && *k < 1u32) {
        return Err(Error::Domain(format!("modulus must lie in [0, 1), got {k}")));
    }
    // (1-k)(1+k) avoids cancellation for k near 1.
    let comp = (ctx.real(1u32) - k).sqrt() * (ctx.real(1u32) + k).sqrt();
    if comp == 0u32 {
        return Err(Error::Domain("modulus rounds to 1; K diverges".into()));
    }
    let m = agm(ctx, &ctx.real(1u32), &comp)?;
    Ok(ctx.pi() / (ctx.real(2u32) * m))
}

/// An elliptic modulus `k` paired with its complement `k' = √(1-k²)`.
#[derive(Debug, Clone)]
pub struct Modulus {
    k: Float,
    kprime: Float,
}

impl Modulus {
    /// Build from `k ∈ (0, 1)`, deriving the complement.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless `0 < k < 1`.
    pub fn new(ctx: &PrecisionContext, k: Float) -> Result<Self> {
        if !(k.is_finite() && k.is_sign_positive() && k != 0u32 && k < 1u32) {
            return Err(Error::Domain(format!("modulus must lie in (0, 1), got {k}")));
        }
        let kprime = (ctx.real(1u32) - &k).sqrt() * (ctx.real(1u32) + &k).sqrt();
        Ok(Self { k, kprime })
    }

    /// Build from both members, checking `k² + k'² = 1`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if either lies outside `(0, 1)`;
    /// [`Error::ChainInconsistent`] if the Pythagorean identity fails by
    /// more than `100 · eps`.
    pub fn from_parts(ctx: &PrecisionContext, k: Float, kprime: Float) -> Result<Self> {
        for v in [&k, &kprime] {
            if !(v.is_finite() && v.is_sign_positive() && *v != 0u32 && *v < 1u32) {
                return Err(Error::Domain(format!("modulus part {v} outside (0, 1)")));
            }
        }
        let resid = ctx.real(ctx.powi(&k, 2) + ctx.powi(&kprime, 2) - 1u32).abs();
        let tol = ctx.real(100u32) * ctx.eps();
        if resid > tol {
            return Err(Error::ChainInconsistent(format!(
                "k² + k'² - 1 = {:.3e} for k = {:.8}, k' = {:.8}",
                resid.to_f64(),
                k.to_f64(),
                kprime.to_f64()
            )));
        }
        Ok(Self { k, kprime })
    }

    /// The modulus `k`.
    pub fn k(&self) -> &Float {
        &self.k
    }

    /// The complementary modulus `k'`.
    pub fn kprime(&self) -> &Float {
        &self.kprime
    }

    /// The pair with the roles of `k` and `k'` exchanged, i.e. the
    /// modulus of the complementary integral.
    pub fn complement(&self) -> Modulus {
        Modulus {
            k: self.kprime.clone(),
            kprime: self.k.clone(),
        }
    }

    /// `K(k)`, as `π / (2 agm(1, k'))` with the stored complement.
    pub fn big_k(&self, ctx: &PrecisionContext) -> Result<Float> {
        let m = agm(ctx, &ctx.real(1u32), &self.kprime)?;
        Ok(ctx.pi() / (ctx.real(2u32) * m))
    }

    /// `K(k')`, as `π / (2 agm(1, k))` with the stored `k`.
    ///
    /// Feeding the AGM the stored small member keeps full relative
    /// accuracy when `k'` sits within a few ulp of 1 (large `r`);
    /// reconstructing `√(1 - k'²)` there would forfeit half the working
    /// precision to cancellation.
    pub fn big_k_prime(&self, ctx: &PrecisionContext) -> Result<Float> {
        let m = agm(ctx, &ctx.real(1u32), &self.k)?;
        Ok(ctx.pi() / (ctx.real(2u32) * m))
    }
}

/// A singular point: `r`, its nome, and the singular modulus pair.
#[derive(Debug, Clone)]
pub struct SingularPoint {
    r: Float,
    nome: Nome,
    modulus: Modulus,
}

impl SingularPoint {
    /// The parameter `r` with `q = exp(-π√r)`.
    pub fn r(&self) -> &Float {
        &self.r
    }

    /// The nome at this point.
    pub fn nome(&self) -> &Nome {
        &self.nome
    }

    /// The singular modulus pair `(k_r, k'_r)`.
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Shorthand for `k_r`.
    pub fn k(&self) -> &Float {
        self.modulus.k()
    }

    /// Shorthand for `k'_r`.
    pub fn kprime(&self) -> &Float {
        self.modulus.kprime()
    }
}

/// Compute the singular point for `r > 0`.
///
/// # Algorithm
///
/// `q = exp(-π√r)`; then `k = (θ₂/θ₃)²` and `k' = (θ₄/θ₃)²`.  Before
/// returning, three independent consistency checks must pass at working
/// precision:
///
/// 1. `k² + k'² = 1`;
/// 2. the product form
///    `k = 8√q Φ(q)¹² / (1 + √(1 + 64 q Φ(q)²⁴))`
///    with `Φ(q) = Π (1 + qⁿ)`;
/// 3. the defining ratio `K(k') / K(k) = √r`.
///
/// # Errors
///
/// [`Error::Domain`] for `r ≤ 0`; [`Error::PrecisionExhausted`] when
/// the nome underflows (`π√r > working_bits · ln 2`);
/// [`Error::ChainInconsistent`] if a consistency check fails.
pub fn modulus_from_r(ctx: &PrecisionContext, r: &Float) -> Result<SingularPoint> {
    if !(r.is_finite() && r.is_sign_positive() && *r != 0u32) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    let sqrt_r = ctx.real(r.sqrt_ref());
    let ln_q = -(ctx.pi() * &sqrt_r);
    let nome = Nome::from_ln_q(ctx, ln_q)?;

    let t2 = qseries::theta2(ctx, &nome)?;
    let t3 = qseries::theta3(ctx, &nome)?;
    let t4 = qseries::theta4(ctx, &nome)?;
    let k = ctx.powi(&(ctx.real(&t2) / &t3), 2);
    let kprime = ctx.powi(&(ctx.real(&t4) / &t3), 2);
    let modulus = Modulus::from_parts(ctx, k, kprime)?;

    // Check 2: the infinite-product route to the same modulus.
    let phi12 = ctx.powi(&qseries::phi_cap(ctx, nome.q())?, 12);
    let sqrt_q = nome.pow(ctx, 1, 2)?;
    let inner = ctx.real(1u32)
        + ctx.real(64u32) * ctx.real(nome.q()) * ctx.powi(&phi12, 2);
    let k_prod = ctx.real(8u32) * sqrt_q * phi12 / (ctx.real(1u32) + inner.sqrt());
    let dk = ctx.real(modulus.k() - &k_prod).abs();
    let tol = ctx.real(100u32) * ctx.eps();
    if dk > tol {
        return Err(Error::ChainInconsistent(format!(
            "theta and product routes to k_r disagree by {:.3e} at r = {:.6}",
            dk.to_f64(),
            r.to_f64()
        )));
    }

    // Check 3: the defining K-ratio.
    let ratio = modulus.big_k_prime(ctx)? / modulus.big_k(ctx)?;
    let dr = ctx.real(&ratio - &sqrt_r).abs();
    let rtol = ctx.real(100u32) * ctx.eps() * ctx.real(&sqrt_r);
    if dr > rtol {
        return Err(Error::ChainInconsistent(format!(
            "K(k')/K(k) - √r = {:.3e} at r = {:.6}",
            dr.to_f64(),
            r.to_f64()
        )));
    }

    Ok(SingularPoint {
        r: ctx.real(r),
        nome,
        modulus,
    })
}

/// The degree-`n` multiplier `M_n(r) = K(k_{n²r}) / K(k_r)`.
///
/// # Errors
///
/// Propagates modulus construction errors; [`Error::Domain`] if
/// `n == 0`.
pub fn multiplier(ctx: &PrecisionContext, n: u32, r: &Float) -> Result<Float> {
    if n == 0 {
        return Err(Error::Domain("multiplier degree must be positive".into()));
    }
    let base = modulus_from_r(ctx, r)?;
    let scaled_r = ctx.real(r) * ctx.real(n) * ctx.real(n);
    let lifted = modulus_from_r(ctx, &scaled_r)?;
    Ok(lifted.modulus().big_k(ctx)? / base.modulus().big_k(ctx)?)
}

/// Ascending Landen step on moduli: from `k_r` to
/// `k_{4r} = (1 - k') / (1 + k')`, with complement `2√k' / (1 + k')`.
///
/// # Errors
///
/// Propagates [`Modulus::from_parts`] errors (which would indicate a
/// numerical inconsistency, as the step is algebraically exact).
pub fn landen_4r(ctx: &PrecisionContext, m: &Modulus) -> Result<Modulus> {
    let kp = m.kprime();
    let denom = ctx.real(1u32) + kp;
    let k4 = (ctx.real(1u32) - kp) / &denom;
    let k4p = ctx.real(2u32) * ctx.real(kp.sqrt_ref()) / &denom;
    Modulus::from_parts(ctx, k4, k4p)
}

/// `Γ(x)` for `x > 0` by Spouge's method.
///
/// # Algorithm
///
/// With `z = x - 1` and shift parameter `a`,
///
/// ```text
/// Γ(x) = (z + a)^(z + 1/2) e^-(z + a) [ √(2π) + Σ_{j=1}^{a-1} c_j / (z + j) ],
/// c_j = (-1)^(j-1) (a - j)^(j - 1/2) e^(a - j) / (j - 1)!,
/// ```
///
/// whose relative error is about `√a (2π)^-(a + 1/2)`; `a` is chosen so
/// that this sits below the certified tolerance, and the alternating
/// coefficient sum is evaluated with `~1.5a` extra bits to absorb its
/// internal cancellation.
///
/// # Errors
///
/// [`Error::Domain`] unless `x > 0`.
pub fn gamma(ctx: &PrecisionContext, x: &Float) -> Result<Float> {
    if !(x.is_finite() && x.is_sign_positive() && *x != 0u32) {
        return Err(Error::Domain(format!("gamma requires x > 0, got {x}")));
    }
    // (a + 1/2) log2(2π) ≥ working_bits + slack  ⇒  a ≈ bits / 2.651.
    let a = (f64::from(ctx.working_bits()) / 2.651).ceil() as u32 + 3;
    let ictx = ctx.boosted((a as f64 * 1.5) as u32 + 64);

    let z = ictx.real(x) - 1u32;
    let two_pi = ictx.real(2u32) * ictx.pi();
    let mut sum = ictx.real(two_pi.sqrt_ref());
    let mut factorial = ictx.real(1u32); // (j-1)! running
    for j in 1..a {
        if j > 1 {
            factorial *= ictx.real(j - 1);
        }
        let amj = ictx.real(a - j);
        // (a-j)^(j-1/2) e^(a-j), via exp of a log to keep one rounding.
        let power = (ictx.real(amj.ln_ref()) * (ictx.real(j) - ictx.rational(1, 2))
            + &amj)
            .exp();
        let c = power / &factorial;
        let term = c / (ictx.real(&z) + ictx.real(j));
        if j % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let za = ictx.real(&z) + ictx.real(a);
    let prefactor = (ictx.real(za.ln_ref()) * (ictx.real(&z) + ictx.rational(1, 2)) - &za).exp();
    Ok(ctx.real(prefactor * sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn assert_close(ctx: &PrecisionContext, a: &Float, b: &Float, what: &str) {
        let diff = ctx.rel_diff(a, b);
        let tol = ctx.real(100u32) * ctx.eps();
        assert!(diff < tol, "{what}: rel diff {:.3e}", diff.to_f64());
    }

    fn assert_frozen(ctx: &PrecisionContext, a: &Float, digits: &str, what: &str) {
        let b = ctx.parse_decimal(digits).unwrap();
        assert_close(ctx, a, &b, what);
    }

    #[test]
    fn agm_frozen_value() {
        let ctx = ctx();
        let got = agm(&ctx, &ctx.real(1u32), &ctx.real(2u32).sqrt()).unwrap();
        assert_frozen(
            &ctx,
            &got,
            "1.19814023473559220743992249228032387822721266321565155826367495294640521",
            "agm(1, √2)",
        );
    }

    #[test]
    fn agm_is_symmetric_and_homogeneous() {
        let ctx = ctx();
        let a = ctx.rational(7, 3);
        let b = ctx.rational(2, 5);
        let ab = agm(&ctx, &a, &b).unwrap();
        let ba = agm(&ctx, &b, &a).unwrap();
        assert_close(&ctx, &ab, &ba, "agm symmetry");
        let scaled = agm(&ctx, &(ctx.real(3u32) * &a), &(ctx.real(3u32) * &b)).unwrap();
        let triple = ctx.real(3u32) * &ab;
        assert_close(&ctx, &scaled, &triple, "agm homogeneity");
    }

    #[test]
    fn big_k_frozen_values() {
        let ctx = ctx();
        let half = ctx.rational(1, 2);
        assert_frozen(
            &ctx,
            &ell_k(&ctx, &half).unwrap(),
            "1.6857503548125960428712036577990769895008008941410890441199482978934337",
            "K(1/2)",
        );
        let invsqrt2 = ctx.real(2u32).sqrt().recip();
        assert_frozen(
            &ctx,
            &ell_k(&ctx, &invsqrt2).unwrap(),
            "1.85407467730137191843385034719526004621759882352176690558592804505602178",
            "K(1/√2)",
        );
        // K(0) = π/2.
        let k0 = ell_k(&ctx, &ctx.real(0u32)).unwrap();
        let half_pi = ctx.pi() / 2u32;
        assert_close(&ctx, &k0, &half_pi, "K(0)");
    }

    #[test]
    fn singular_moduli_frozen_values() {
        let ctx = ctx();
        let k1 = modulus_from_r(&ctx, &ctx.real(1u32)).unwrap();
        assert_frozen(
            &ctx,
            k1.k(),
            "0.707106781186547524400844362104849039284835937688474036588339868995366239",
            "k_1 = 1/√2",
        );
        let k2 = modulus_from_r(&ctx, &ctx.real(2u32)).unwrap();
        assert_frozen(
            &ctx,
            k2.k(),
            "0.414213562373095048801688724209698078569671875376948073176679737990732478",
            "k_2 = √2 - 1",
        );
        let k4 = modulus_from_r(&ctx, &ctx.real(4u32)).unwrap();
        assert_frozen(
            &ctx,
            k4.k(),
            "0.171572875253809902396622551580603842860656249246103853646640524018535043",
            "k_4 = 3 - 2√2",
        );
        let k25 = modulus_from_r(&ctx, &ctx.real(25u32)).unwrap();
        assert_frozen(
            &ctx,
            k25.k(),
            "0.00155281187966126322494154469833136994364891077949135054303557076402626428",
            "k_25",
        );
    }

    #[test]
    fn complementary_reflection() {
        let ctx = ctx();
        // k'_r = k_{1/r}: check at r = 4 vs r = 1/4.
        let p4 = modulus_from_r(&ctx, &ctx.real(4u32)).unwrap();
        let pq = modulus_from_r(&ctx, &ctx.rational(1, 4)).unwrap();
        assert_close(&ctx, p4.kprime(), pq.k(), "k'_4 = k_{1/4}");
        assert_close(&ctx, p4.k(), pq.kprime(), "k_4 = k'_{1/4}");
    }

    #[test]
    fn landen_step_matches_direct_construction() {
        let ctx = ctx();
        let p1 = modulus_from_r(&ctx, &ctx.real(1u32)).unwrap();
        let stepped = landen_4r(&ctx, p1.modulus()).unwrap();
        let direct = modulus_from_r(&ctx, &ctx.real(4u32)).unwrap();
        assert_close(&ctx, stepped.k(), direct.k(), "Landen k_1 → k_4");
        assert_close(
            &ctx,
            stepped.kprime(),
            direct.kprime(),
            "Landen complement",
        );
        // And the K-multiplier that goes with it: K(k_4) = (1+k'_1)/2 · K(k_1).
        let lhs = direct.modulus().big_k(&ctx).unwrap();
        let rhs = (ctx.real(1u32) + p1.kprime()) / 2u32 * p1.modulus().big_k(&ctx).unwrap();
        assert_close(&ctx, &lhs, &rhs, "Landen K relation");
    }

    #[test]
    fn multiplier_at_degree_two() {
        let ctx = ctx();
        // M_2(1) = K(k_4)/K(k_1) = (1 + k'_1)/2 by the Landen relation.
        let m = multiplier(&ctx, 2, &ctx.real(1u32)).unwrap();
        let p1 = modulus_from_r(&ctx, &ctx.real(1u32)).unwrap();
        let expect = (ctx.real(1u32) + p1.kprime()) / 2u32;
        assert_close(&ctx, &m, &expect, "M_2(1)");
    }

    #[test]
    fn nome_underflow_is_reported() {
        let ctx = ctx();
        // π√r > 256 ln 2 for r ≈ 3200.
        let res = modulus_from_r(&ctx, &ctx.real(4000u32));
        assert!(matches!(res, Err(Error::PrecisionExhausted(_))), "{res:?}");
    }

    #[test]
    fn gamma_special_values() {
        let ctx = ctx();
        // Γ(1/2) = √π.
        let g_half = gamma(&ctx, &ctx.rational(1, 2)).unwrap();
        let sqrt_pi = ctx.pi().sqrt();
        assert_close(&ctx, &g_half, &sqrt_pi, "Γ(1/2)");
        // Γ(5) = 24.
        let g5 = gamma(&ctx, &ctx.real(5u32)).unwrap();
        assert_close(&ctx, &g5, &ctx.real(24u32), "Γ(5)");
        // Functional equation at x = 3/10.
        let x = ctx.rational(3, 10);
        let lhs = gamma(&ctx, &(ctx.real(&x) + 1u32)).unwrap();
        let rhs = ctx.real(&x) * gamma(&ctx, &x).unwrap();
        assert_close(&ctx, &lhs, &rhs, "Γ(x+1) = xΓ(x)");
    }

    #[test]
    fn gamma_frozen_values() {
        let ctx = ctx();
        let g54 = gamma(&ctx, &ctx.rational(5, 4)).unwrap();
        assert_frozen(
            &ctx,
            &ctx.powi(&g54, 4),
            "0.674969789311173012118949843735498535657052004772265478746048543396260963",
            "Γ(5/4)⁴",
        );
        assert_frozen(
            &ctx,
            &gamma(&ctx, &ctx.rational(9, 8)).unwrap(),
            "0.941742699849701488087403730151891703076302448518634492622890987222082957",
            "Γ(9/8)",
        );
        assert_frozen(
            &ctx,
            &gamma(&ctx, &ctx.rational(5, 8)).unwrap(),
            "1.4345188480905567756360197394564231366322077722066673307706798580950942",
            "Γ(5/8)",
        );
    }

    #[test]
    fn gamma_quarter_against_lemniscatic_k() {
        let ctx = ctx();
        // K(1/√2) = Γ(1/4)² / (4√π): two fully independent routes.
        let g = gamma(&ctx, &ctx.rational(1, 4)).unwrap();
        let lhs = ctx.powi(&g, 2) / (ctx.real(4u32) * ctx.pi().sqrt());
        let invsqrt2 = ctx.real(2u32).sqrt().recip();
        let rhs = ell_k(&ctx, &invsqrt2).unwrap();
        assert_close(&ctx, &lhs, &rhs, "Γ(1/4)²/(4√π) = K(1/√2)");
    }
}
