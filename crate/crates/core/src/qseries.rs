//! q-series and q-product building blocks: Pochhammer products, Euler's
//! function, Jacobi theta constants, and the classical `φ`, `ψ`, `M`
//! products of Ramanujan's notation.
//!
//! Conventions (all for a nome `0 < q ≤ 0.9`):
//!
//! * `(a; q)_n = Π_{k=0}^{n-1} (1 - a q^k)`, `(a; q)_∞` its limit;
//! * `f(-q) = (q; q)_∞` (Euler's function);
//! * `Φ(q) = Π_{n≥1} (1 + q^n) = 1 / (q; q²)_∞`;
//! * `φ(q) = Σ_{n∈ℤ} q^(n²) = θ₃(q)`,  `ψ(q) = Σ_{n≥0} q^(n(n+1)/2)`;
//! * `θ₂(q) = 2 q^(1/4) Σ_{n≥0} q^(n(n+1))`,
//!   `θ₃(q) = 1 + 2 Σ_{n≥1} q^(n²)`,
//!   `θ₄(q) = 1 + 2 Σ_{n≥1} (-1)^n q^(n²)`  (DLMF §20.2 at z = 0);
//! * `M(q) = q^(1/8) (q²; q²)_∞ / (q; q²)_∞ = θ₂(√q) / 2`.
//!
//! Series and products are summed by [`sum_to_tolerance`], whose
//! geometric tail bound is valid here because every term ratio is a
//! positive power of `q`.  Fractional powers of the nome always come
//! from a [`Nome`], i.e. from `exp(ln q · a/b)`, never from re-rooting a
//! rounded `q`.

use rug::Float;

use crate::error::{Error, Result};
use crate::nome::{Nome, MAX_NOME};
use crate::numerics::{sum_to_tolerance, SumMode};
use crate::precision::PrecisionContext;

/// Reject nomes outside `(0, MAX_NOME]`.
fn check_q(q: &Float) -> Result<()> {
    if !(q.is_finite() && q.is_sign_positive() && *q != 0u32) {
        return Err(Error::Domain(format!("nome must lie in (0, 1), got {q}")));
    }
    if *q > MAX_NOME {
        return Err(Error::Domain(format!(
            "nome {q:.6} exceeds {MAX_NOME}; apply a modular transformation first"
        )));
    }
    Ok(())
}

/// q-Pochhammer symbol `(a; q)_n`, or `(a; q)_∞` when `n` is `None`.
///
/// # Errors
///
/// For the infinite product, [`Error::Domain`] unless `|q| ≤ MAX_NOME`
/// or if some factor `1 - a q^k` is not strictly positive (the products
/// used in this crate are all positive; a non-positive factor signals a
/// caller error).
pub fn qpoch(ctx: &PrecisionContext, a: &Float, q: &Float, n: Option<u64>) -> Result<Float> {
    match n {
        Some(n) => {
            let mut acc = ctx.real(1u32);
            let mut apk = ctx.real(a);
            for _ in 0..n {
                acc *= ctx.real(1u32) - &apk;
                apk *= q;
            }
            Ok(acc)
        }
        None => {
            let aq = ctx.real(q.abs_ref());
            if aq > MAX_NOME {
                return Err(Error::Domain(format!(
                    "|q| = {:.6} exceeds {MAX_NOME} in an infinite product",
                    aq.to_f64()
                )));
            }
            let mut apk = ctx.real(a);
            sum_to_tolerance(ctx, SumMode::Product, |_| {
                let delta = -ctx.real(&apk);
                apk *= q;
                delta
            })
        }
    }
}

/// Euler's function `f(-q) = (q; q)_∞`.
///
/// Up to the factor `q^(1/24)` this is the Dedekind eta function of the
/// nome; it is the backbone of the Rogers-Ramanujan product
/// representations.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 < q ≤ MAX_NOME`.
pub fn f_minus(ctx: &PrecisionContext, q: &Float) -> Result<Float> {
    check_q(q)?;
    qpoch(ctx, q, q, None)
}

/// `Φ(q) = Π_{n≥1} (1 + q^n)`.
///
/// # Properties
///
/// Euler's identity `Φ(q) · (q; q²)_∞ = 1` (partitions into distinct
/// parts vs. odd parts) is enforced as a property test.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 < q ≤ MAX_NOME`.
pub fn phi_cap(ctx: &PrecisionContext, q: &Float) -> Result<Float> {
    check_q(q)?;
    let minus_q = -ctx.real(q);
    qpoch(ctx, &minus_q, q, None)
}

/// `φ(q) = θ₃(q) = 1 + 2 Σ_{n≥1} q^(n²)`.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 < q ≤ MAX_NOME`.
pub fn phi(ctx: &PrecisionContext, q: &Float) -> Result<Float> {
    check_q(q)?;
    theta_series(ctx, q, false)
}

/// `ψ(q) = Σ_{n≥0} q^(n(n+1)/2)`, the theta constant on triangular
/// numbers; equals `(q²; q²)_∞ / (q; q²)_∞` by Gauss.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 < q ≤ MAX_NOME`.
pub fn psi(ctx: &PrecisionContext, q: &Float) -> Result<Float> {
    check_q(q)?;
    // Exponents n(n+1)/2 grow by n at step n.
    let mut pw = ctx.real(1u32);
    let mut fac = ctx.real(q);
    sum_to_tolerance(ctx, SumMode::Series, |n| {
        if n == 0 {
            return ctx.real(1u32);
        }
        pw *= &fac;
        fac *= q;
        // fac held q^n; after the update pw = q^(n(n+1)/2).
        ctx.real(&pw)
    })
}

/// Shared body of `θ₃` (plain) and `θ₄` (alternating).
fn theta_series(ctx: &PrecisionContext, q: &Float, alternating: bool) -> Result<Float> {
    let q2 = ctx.powi(q, 2);
    let mut pw = ctx.real(1u32); // q^(n²)
    let mut odd = ctx.real(q); // q^(2n-1) for the next n
    sum_to_tolerance(ctx, SumMode::Series, |n| {
        if n == 0 {
            return ctx.real(1u32);
        }
        pw *= &odd;
        odd *= &q2;
        let t = ctx.real(2u32) * &pw;
        if alternating && n % 2 == 1 {
            -t
        } else {
            t
        }
    })
}

/// Jacobi theta constant `θ_j(q)` for `j ∈ {2, 3, 4}` (argument zero).
///
/// `θ₂` involves `q^(1/4)`, hence the [`Nome`] argument.
///
/// # Errors
///
/// [`Error::Domain`] for `j ∉ {2, 3, 4}`.
pub fn theta(ctx: &PrecisionContext, j: u8, nome: &Nome) -> Result<Float> {
    match j {
        2 => theta2(ctx, nome),
        3 => theta3(ctx, nome),
        4 => theta4(ctx, nome),
        _ => Err(Error::Domain(format!("theta index {j} not in {{2, 3, 4}}"))),
    }
}

/// `θ₂(q) = 2 q^(1/4) Σ_{n≥0} q^(n(n+1))`.
pub fn theta2(ctx: &PrecisionContext, nome: &Nome) -> Result<Float> {
    let q = nome.q();
    check_q(q)?;
    let q2 = ctx.powi(q, 2);
    // Exponents n(n+1) grow by 2n at step n.
    let mut pw = ctx.real(1u32);
    let mut fac = ctx.real(&q2);
    let sum = sum_to_tolerance(ctx, SumMode::Series, |n| {
        if n == 0 {
            return ctx.real(1u32);
        }
        pw *= &fac;
        fac *= &q2;
        ctx.real(&pw)
    })?;
    let quarter = nome.pow(ctx, 1, 4)?;
    Ok(ctx.real(2u32) * quarter * sum)
}

/// `θ₃(q) = 1 + 2 Σ_{n≥1} q^(n²)`.
pub fn theta3(ctx: &PrecisionContext, nome: &Nome) -> Result<Float> {
    phi(ctx, nome.q())
}

/// `θ₄(q) = 1 + 2 Σ_{n≥1} (-1)^n q^(n²)`.
pub fn theta4(ctx: &PrecisionContext, nome: &Nome) -> Result<Float> {
    let q = nome.q();
    check_q(q)?;
    theta_series(ctx, q, true)
}

/// The building-block product
/// `M(q) = q^(1/8) (q²; q²)_∞ / (q; q²)_∞ = θ₂(√q) / 2`.
///
/// Squared quotients of `M` at powers of the nome produce the
/// Göllnitz-Gordon fraction's companion `M²(q²)/M²(q⁴)`, and `M` itself
/// is one of the five fractions' product routes.
///
/// # Errors
///
/// [`Error::Domain`] unless `0 < q ≤ MAX_NOME`.
pub fn m_building(ctx: &PrecisionContext, nome: &Nome) -> Result<Float> {
    let q = nome.q();
    check_q(q)?;
    let q2 = ctx.powi(q, 2);
    let num = qpoch(ctx, &q2, &q2, None)?;
    let den = qpoch(ctx, q, &q2, None)?;
    let eighth = nome.pow(ctx, 1, 8)?;
    Ok(eighth * num / den)
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

    fn e_minus_pi(ctx: &PrecisionContext) -> Nome {
        Nome::from_ln_q(ctx, -ctx.pi()).unwrap()
    }

    #[test]
    fn finite_pochhammer_expands() {
        let ctx = ctx();
        let a = ctx.rational(1, 3);
        let q = ctx.rational(1, 2);
        let got = qpoch(&ctx, &a, &q, Some(3)).unwrap();
        // (1 - 1/3)(1 - 1/6)(1 - 1/12) = (2/3)(5/6)(11/12) = 55/108
        assert_close(&ctx, &got, &ctx.rational(55, 108), "(1/3; 1/2)_3");
    }

    #[test]
    fn euler_distinct_odd_identity() {
        let ctx = ctx();
        let q = ctx.rational(3, 10);
        let q2 = ctx.powi(&q, 2);
        let lhs = phi_cap(&ctx, &q).unwrap() * qpoch(&ctx, &q, &q2, None).unwrap();
        assert_close(&ctx, &lhs, &ctx.real(1u32), "Φ(q)·(q; q²)_∞ = 1");
    }

    #[test]
    fn theta3_triple_product() {
        let ctx = ctx();
        // θ₃(q) = (q²; q²)_∞ (-q; q²)_∞² (Jacobi triple product).
        let nome = Nome::from_q(&ctx, ctx.rational(1, 4)).unwrap();
        let q = nome.q();
        let q2 = ctx.powi(q, 2);
        let minus_q = -ctx.real(q);
        let prod = qpoch(&ctx, &q2, &q2, None).unwrap()
            * ctx.powi(&qpoch(&ctx, &minus_q, &q2, None).unwrap(), 2);
        let series = theta3(&ctx, &nome).unwrap();
        assert_close(&ctx, &series, &prod, "triple product for θ₃");
    }

    #[test]
    fn theta4_triple_product() {
        let ctx = ctx();
        // θ₄(q) = (q²; q²)_∞ (q; q²)_∞².
        let nome = Nome::from_q(&ctx, ctx.rational(2, 5)).unwrap();
        let q = nome.q();
        let q2 = ctx.powi(q, 2);
        let prod = qpoch(&ctx, &q2, &q2, None).unwrap()
            * ctx.powi(&qpoch(&ctx, q, &q2, None).unwrap(), 2);
        let series = theta4(&ctx, &nome).unwrap();
        assert_close(&ctx, &series, &prod, "triple product for θ₄");
    }

    #[test]
    fn psi_gauss_product() {
        let ctx = ctx();
        let q = ctx.rational(2, 5);
        let q2 = ctx.powi(&q, 2);
        let prod = qpoch(&ctx, &q2, &q2, None).unwrap() / qpoch(&ctx, &q, &q2, None).unwrap();
        let series = psi(&ctx, &q).unwrap();
        assert_close(&ctx, &series, &prod, "Gauss product for ψ");
    }

    #[test]
    fn jacobi_quartic_identity() {
        let ctx = ctx();
        // θ₃⁴ = θ₂⁴ + θ₄⁴ at q = e^-π.
        let nome = e_minus_pi(&ctx);
        let t2 = theta2(&ctx, &nome).unwrap();
        let t3 = theta3(&ctx, &nome).unwrap();
        let t4 = theta4(&ctx, &nome).unwrap();
        let lhs = ctx.powi(&t3, 4);
        let rhs = ctx.powi(&t2, 4) + ctx.powi(&t4, 4);
        assert_close(&ctx, &lhs, &rhs, "θ₃⁴ = θ₂⁴ + θ₄⁴");
    }

    #[test]
    fn frozen_values_at_e_minus_pi() {
        let ctx = ctx();
        let nome = e_minus_pi(&ctx);
        let q = nome.q();
        assert_frozen(
            &ctx,
            &f_minus(&ctx, q).unwrap(),
            "0.954918789987674103751233978110291077632715373807805283148799191676094036",
            "f(-q) at q = e^-π",
        );
        assert_frozen(
            &ctx,
            &phi_cap(&ctx, q).unwrap(),
            "1.04525021435471194254759501220356206800342478215558691550052098525711758",
            "Φ(q) at q = e^-π",
        );
        assert_frozen(
            &ctx,
            &psi(&ctx, q).unwrap(),
            "1.0432946242937774014676634999226130154147213908603485820626535189237935",
            "ψ(q) at q = e^-π",
        );
        assert_frozen(
            &ctx,
            &theta3(&ctx, &nome).unwrap(),
            "1.08643481121330801457531612151022345707020570724521888592079031598185673",
            "θ₃ at q = e^-π",
        );
        // At q = e^-π the lemniscatic symmetry forces θ₂ = θ₄.
        let t2 = theta2(&ctx, &nome).unwrap();
        let t4 = theta4(&ctx, &nome).unwrap();
        assert_frozen(
            &ctx,
            &t2,
            "0.913579138156116821407242593401222089701963916393469033419696531265908009",
            "θ₂ at q = e^-π",
        );
        assert_close(&ctx, &t2, &t4, "θ₂ = θ₄ at q = e^-π");
        assert_frozen(
            &ctx,
            &m_building(&ctx, &nome).unwrap(),
            "0.704465818365610063996627665611155155035505600029433636206970750693451757",
            "M(q) at q = e^-π",
        );
    }

    #[test]
    fn m_is_half_theta2_of_sqrt_q() {
        let ctx = ctx();
        let nome = e_minus_pi(&ctx);
        let half_ln = ctx.real(nome.ln_q()) / 2u32;
        let sqrt_nome = Nome::from_ln_q(&ctx, half_ln).unwrap();
        let lhs = m_building(&ctx, &nome).unwrap();
        let rhs = theta2(&ctx, &sqrt_nome).unwrap() / 2u32;
        assert_close(&ctx, &lhs, &rhs, "M(q) = θ₂(√q)/2");
    }

    #[test]
    fn rejects_large_nome() {
        let ctx = ctx();
        let q = ctx.real(0.95f64);
        assert!(f_minus(&ctx, &q).is_err());
        assert!(phi(&ctx, &q).is_err());
        assert!(qpoch(&ctx, &q, &q, None).is_err());
        // Finite products are fine at any q.
        assert!(qpoch(&ctx, &q, &q, Some(4)).is_ok());
    }
}
