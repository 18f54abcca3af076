//! The nome `q` together with its logarithm.
//!
//! The fractions and theta constants in this crate constantly need
//! *fractional* powers of the nome — `q^(1/5)`, `q^(1/8)`, `q^(1/24)` and
//! so on.  When `q = exp(-π√r)` the numerically clean way to produce
//! them is `exp(ln q · a/b)` with `ln q = -π√r` known exactly at working
//! precision, never by re-extracting a logarithm from an already rounded
//! `q`.  [`Nome`] bundles `q` with `ln q` so every consumer takes powers
//! the same way.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Largest nome accepted by the series/product kernels.
///
/// Above this the q-series converge too slowly for the tolerance model
/// (thousands of terms with heavy cancellation), so callers are told to
/// use a modular transformation instead.
pub const MAX_NOME: f64 = 0.9;

/// A nome `q ∈ (0, 1)` with its natural logarithm.
#[derive(Debug, Clone)]
pub struct Nome {
    q: Float,
    ln_q: Float,
}

impl Nome {
    /// Build from a plain value of `q`, computing `ln q` once.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless `0 < q ≤ MAX_NOME`.
    pub fn from_q(ctx: &PrecisionContext, q: Float) -> Result<Self> {
        if !(q.is_finite() && q.is_sign_positive() && q != 0u32) {
            return Err(Error::Domain(format!("nome must lie in (0, 1), got {q}")));
        }
        if q > MAX_NOME {
            return Err(Error::Domain(format!(
                "nome {q:.6} exceeds {MAX_NOME}; apply a modular transformation first"
            )));
        }
        let ln_q = ctx.real(q.ln_ref());
        Ok(Self { q, ln_q })
    }

    /// Build from a known logarithm (e.g. `ln q = -π√r`), computing `q`
    /// by a single exponential.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `ln_q ≥ 0`; [`Error::PrecisionExhausted`] if
    /// `q` would underflow the certified range, i.e. `q < 2^-working_bits`.
    pub fn from_ln_q(ctx: &PrecisionContext, ln_q: Float) -> Result<Self> {
        if !ln_q.is_finite() || !ln_q.is_sign_negative() || ln_q == 0u32 {
            return Err(Error::Domain(format!(
                "ln q must be negative and finite, got {ln_q}"
            )));
        }
        // q < 2^-w  ⇔  ln q < -w ln 2
        let ln2 = ctx.real(2u32).ln();
        let floor = -(ctx.real(ctx.working_bits()) * ln2);
        if ln_q < floor {
            return Err(Error::PrecisionExhausted(format!(
                "nome exp({ln_q:.3e}) underflows 2^-{} at this precision",
                ctx.working_bits()
            )));
        }
        let q = ctx.real(ln_q.exp_ref());
        if q > MAX_NOME {
            return Err(Error::Domain(format!(
                "nome {q:.6} exceeds {MAX_NOME}; apply a modular transformation first"
            )));
        }
        Ok(Self { q, ln_q })
    }

    /// The nome itself.
    pub fn q(&self) -> &Float {
        &self.q
    }

    /// Natural logarithm of the nome (negative).
    pub fn ln_q(&self) -> &Float {
        &self.ln_q
    }

    /// `q^(num/den)` via `exp(ln q · num/den)`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `den == 0`.
    pub fn pow(&self, ctx: &PrecisionContext, num: i64, den: u64) -> Result<Float> {
        if den == 0 {
            return Err(Error::Domain("nome power with zero denominator".into()));
        }
        let scaled = ctx.real(&self.ln_q) * ctx.rational(num, den);
        Ok(scaled.exp())
    }

    /// The nome raised to a positive integer: `q^m` as a new [`Nome`]
    /// (so `ln` stays exact under the map `q ↦ q^m`).
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `m == 0`; [`Error::PrecisionExhausted`] if
    /// `q^m` underflows.
    pub fn power_nome(&self, ctx: &PrecisionContext, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("q^0 is not a valid nome".into()));
        }
        let ln_q = ctx.real(&self.ln_q) * ctx.real(m);
        Self::from_ln_q(ctx, ln_q)
    }
}
