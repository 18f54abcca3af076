//! The six continued fractions and their q-product companions.
//!
//! Each fraction has the shape
//!
//! ```text
//! F(q) = prefactor(q) / (b₀ + a₁/(b₁ + a₂/(b₂ + …)))
//! ```
//!
//! with a fractional-power prefactor and partial terms that are
//! polynomials in `q`:
//!
//! | kind | prefactor | b₀    | aₙ (n ≥ 1)            | bₙ (n ≥ 1)        |
//! |------|-----------|-------|------------------------|-------------------|
//! | R    | `q^(1/5)` | 1     | `qⁿ`                   | 1                 |
//! | H    | `q^(1/2)` | 1+q   | `q^(2n)`               | `1 + q^(2n+1)`    |
//! | V    | `q^(1/3)` | 1     | `qⁿ + q^(2n)`          | 1                 |
//! | S    | `q^(1/8)` | 1     | `qⁿ` (+ `q^(n/2)` for even n) | 1          |
//! | Q    | `q^(1/2)` | 1−q   | `q (1 − q^(2n−1))²`    | `(1−q)(q^(2n)+1)` |
//! | M    | `q^(1/8)` | 1     | `−qⁿ`                  | `1 + qⁿ`          |
//!
//! R is the Rogers-Ramanujan fraction, H the Ramanujan-Göllnitz-Gordon
//! fraction, V Ramanujan's cubic fraction; S, Q and M are the companion
//! fractions with octic, quadratic and octic prefactors whose closed
//! forms are plain radicals in the singular modulus.
//!
//! Two independent evaluation routes are provided: the recurrence itself
//! ([`fraction_direct`], backward evaluation with depth doubling) and
//! the equivalent q-product / theta-quotient ([`fraction_oracle`]).
//! Note that the partial numerators of Q do *not* tend to zero
//! (`aₙ → q`), so Q converges only linearly — at rate `q` — where the
//! other five converge superlinearly; the depth-doubling loop absorbs
//! the difference.

use rug::Float;

use crate::error::{Error, Result};
use crate::nome::Nome;
use crate::precision::PrecisionContext;
use crate::qseries;

/// Hard ceiling on the truncation depth of [`eval_cf`].
pub const MAX_DEPTH: u64 = 1 << 20;

/// Starting truncation depth for the doubling loop.
const INITIAL_DEPTH: u64 = 64;

/// Which continued fraction to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FractionKind {
    /// Rogers-Ramanujan fraction `R(q)`, prefactor `q^(1/5)`.
    R,
    /// Ramanujan-Göllnitz-Gordon fraction `H(q)`, prefactor `q^(1/2)`.
    H,
    /// Ramanujan's cubic fraction `V(q)`, prefactor `q^(1/3)`.
    V,
    /// The octic-prefactor fraction `S(q)`, with `S = √(k_r) / √2 · …`
    /// closed form `S(q)⁴ = k_r / 4` at singular points.
    S,
    /// The fraction `Q(q) = M(q²)²`, prefactor `q^(1/2)`.
    Q,
    /// The theta-quotient fraction `M(q) = q^(1/8)(q²;q²)_∞/(q;q²)_∞`.
    M,
}

impl FractionKind {
    /// All six kinds, in display order.
    pub const ALL: [FractionKind; 6] = [
        FractionKind::R,
        FractionKind::H,
        FractionKind::V,
        FractionKind::S,
        FractionKind::Q,
        FractionKind::M,
    ];

    /// Parse the command-line token (`rr`, `h`, `v`, `s`, `q`, `m`).
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] for an unknown token.
    pub fn parse(token: &str) -> Result<Self> {
        match token.to_ascii_lowercase().as_str() {
            "rr" | "r" => Ok(FractionKind::R),
            "h" => Ok(FractionKind::H),
            "v" => Ok(FractionKind::V),
            "s" => Ok(FractionKind::S),
            "q" => Ok(FractionKind::Q),
            "m" => Ok(FractionKind::M),
            other => Err(Error::Domain(format!(
                "unknown fraction {other:?}; expected one of rr, h, v, s, q, m"
            ))),
        }
    }

    /// Canonical command-line token.
    pub fn token(&self) -> &'static str {
        match self {
            FractionKind::R => "rr",
            FractionKind::H => "h",
            FractionKind::V => "v",
            FractionKind::S => "s",
            FractionKind::Q => "q",
            FractionKind::M => "m",
        }
    }

    /// The exponent `1/d` of the fractional prefactor `q^(1/d)`.
    pub fn prefactor_denominator(&self) -> u64 {
        match self {
            FractionKind::R => 5,
            FractionKind::H | FractionKind::Q => 2,
            FractionKind::V => 3,
            FractionKind::S | FractionKind::M => 8,
        }
    }
}

impl std::fmt::Display for FractionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// A concrete continued fraction `prefactor / (b₀ + K(aₙ/bₙ))`.
pub struct CFSpec {
    /// The fractional-power prefactor.
    pub prefactor: Float,
    /// Leading partial denominator `b₀`.
    pub b0: Float,
    /// Partial numerators `aₙ`, `n ≥ 1`.
    pub a: Box<dyn Fn(u64) -> Float>,
    /// Partial denominators `bₙ`, `n ≥ 1`.
    pub b: Box<dyn Fn(u64) -> Float>,
}

/// How deep [`eval_cf`] had to truncate and the last doubling delta.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    /// Accepted truncation depth.
    pub depth: u64,
    /// `|value(depth) - value(depth/2)|` at acceptance.
    pub last_delta: Float,
}

/// Truncated value of `b₀ + a₁/(b₁ + … + a_d/b_d)` by backward
/// recurrence, before the prefactor is applied.
fn eval_truncated(ctx: &PrecisionContext, spec: &CFSpec, depth: u64) -> Result<Float> {
    debug_assert!(depth >= 1);
    let mut h = (spec.b)(depth);
    for n in (1..depth).rev() {
        if h == 0u32 {
            return Err(Error::NonConvergent(format!(
                "zero convergent at depth {n} of {depth}"
            )));
        }
        h = (spec.b)(n) + (spec.a)(n + 1) / h;
    }
    if h == 0u32 {
        return Err(Error::NonConvergent("zero leading convergent".into()));
    }
    Ok(ctx.real(&spec.b0) + (spec.a)(1) / h)
}

/// Evaluate a continued fraction to working tolerance by doubling the
/// truncation depth until successive values agree.
///
/// # Errors
///
/// [`Error::NonConvergent`] if agreement is not reached by
/// [`MAX_DEPTH`], or if a convergent vanishes (which the fractions of
/// this crate never produce for a valid nome).
pub fn eval_cf(ctx: &PrecisionContext, spec: &CFSpec) -> Result<(Float, ConvergenceReport)> {
    let eps = ctx.eps();
    let mut depth = INITIAL_DEPTH;
    let mut prev = eval_truncated(ctx, spec, depth)?;
    while depth <= MAX_DEPTH / 2 {
        depth *= 2;
        let cur = eval_truncated(ctx, spec, depth)?;
        let delta = ctx.real(&cur - &prev).abs();
        let scale = ctx.real(cur.abs_ref());
        let bound = if scale > 1u32 {
            ctx.real(&eps) * scale
        } else {
            ctx.real(&eps)
        };
        if delta <= bound {
            let value = ctx.real(&spec.prefactor) / cur;
            return Ok((
                value,
                ConvergenceReport {
                    depth,
                    last_delta: delta,
                },
            ));
        }
        prev = cur;
    }
    Err(Error::NonConvergent(format!(
        "continued fraction not settled at depth {MAX_DEPTH}"
    )))
}

/// Build the [`CFSpec`] of a fraction at a given nome.
///
/// # Errors
///
/// Propagates prefactor (fractional-power) domain errors.
pub fn cf_spec(ctx: &PrecisionContext, kind: FractionKind, nome: &Nome) -> Result<CFSpec> {
    let q = ctx.real(nome.q());
    let prefactor = nome.pow(ctx, 1, kind.prefactor_denominator() as i64 as u64)?;
    let c = *ctx;
    Ok(match kind {
        FractionKind::R => CFSpec {
            prefactor,
            b0: ctx.real(1u32),
            a: {
                let q = q.clone();
                Box::new(move |n| c.powi(&q, n as i32))
            },
            b: Box::new(move |_| c.real(1u32)),
        },
        FractionKind::H => CFSpec {
            prefactor,
            b0: ctx.real(1u32) + &q,
            a: {
                let q = q.clone();
                Box::new(move |n| c.powi(&q, 2 * n as i32))
            },
            b: {
                let q = q.clone();
                Box::new(move |n| c.real(1u32) + c.powi(&q, 2 * n as i32 + 1))
            },
        },
        FractionKind::V => CFSpec {
            prefactor,
            b0: ctx.real(1u32),
            a: {
                let q = q.clone();
                Box::new(move |n| c.powi(&q, n as i32) + c.powi(&q, 2 * n as i32))
            },
            b: Box::new(move |_| c.real(1u32)),
        },
        FractionKind::S => CFSpec {
            prefactor,
            b0: ctx.real(1u32),
            a: {
                let q = q.clone();
                Box::new(move |n| {
                    let mut t = c.powi(&q, n as i32);
                    if n % 2 == 0 {
                        t += c.powi(&q, (n / 2) as i32);
                    }
                    t
                })
            },
            b: Box::new(move |_| c.real(1u32)),
        },
        FractionKind::Q => CFSpec {
            prefactor,
            b0: ctx.real(1u32) - &q,
            a: {
                let q = q.clone();
                Box::new(move |n| {
                    let inner = c.real(1u32) - c.powi(&q, 2 * n as i32 - 1);
                    c.real(&q) * c.powi(&inner, 2)
                })
            },
            b: {
                let q = q.clone();
                Box::new(move |n| {
                    (c.real(1u32) - &q) * (c.powi(&q, 2 * n as i32) + 1u32)
                })
            },
        },
        FractionKind::M => CFSpec {
            prefactor,
            b0: ctx.real(1u32),
            a: {
                let q = q.clone();
                Box::new(move |n| -c.powi(&q, n as i32))
            },
            b: {
                let q = q.clone();
                Box::new(move |n| c.real(1u32) + c.powi(&q, n as i32))
            },
        },
    })
}

/// Evaluate a fraction by its own recurrence (depth-doubled backward
/// evaluation).
///
/// # Errors
///
/// Propagates [`eval_cf`] and prefactor errors.
pub fn fraction_direct(ctx: &PrecisionContext, kind: FractionKind, nome: &Nome) -> Result<Float> {
    let spec = cf_spec(ctx, kind, nome)?;
    Ok(eval_cf(ctx, &spec)?.0)
}

/// Same as [`fraction_direct`] but also returns the convergence report.
pub fn fraction_direct_with_report(
    ctx: &PrecisionContext,
    kind: FractionKind,
    nome: &Nome,
) -> Result<(Float, ConvergenceReport)> {
    let spec = cf_spec(ctx, kind, nome)?;
    eval_cf(ctx, &spec)
}

/// Evaluate a fraction by its q-product / theta-quotient representation
/// — an independent oracle for the recurrence.
///
/// # Algorithm
///
/// * R: `1/R - 1 - R = f(-q^(1/5)) / (q^(1/5) f(-q⁵))`, solved for the
///   positive root;
/// * H: `1/H - H = M²(q²)/M²(q⁴)`, solved for the positive root;
/// * V: `q^(1/3) (q; q²)_∞ / (q³; q⁶)_∞³`;
/// * S: `q^(1/8) (-q²; q²)_∞ / (-q; q²)_∞`;
/// * Q: `q^(1/2) (q⁴; q⁴)_∞² / (q²; q⁴)_∞²`;
/// * M: `q^(1/8) (q²; q²)_∞ / (q; q²)_∞`.
///
/// # Errors
///
/// [`Error::Domain`] when an auxiliary nome (e.g. `q^(1/5)`) leaves the
/// convergence range of the product kernels.
pub fn fraction_oracle(ctx: &PrecisionContext, kind: FractionKind, nome: &Nome) -> Result<Float> {
    let q = nome.q();
    match kind {
        FractionKind::R => {
            let fifth_ln = ctx.real(nome.ln_q()) / 5u32;
            let q15 = Nome::from_ln_q(ctx, fifth_ln)?;
            let q5 = nome.power_nome(ctx, 5)?;
            let rho = qseries::f_minus(ctx, q15.q())?
                / (ctx.real(q15.q()) * qseries::f_minus(ctx, q5.q())?);
            // R² + (1+ρ)R - 1 = 0, R > 0.
            let s = ctx.real(1u32) + rho;
            let disc = (ctx.powi(&s, 2) + 4u32).sqrt();
            Ok((disc - s) / 2u32)
        }
        FractionKind::H => {
            let m2 = qseries::m_building(ctx, &nome.power_nome(ctx, 2)?)?;
            let m4 = qseries::m_building(ctx, &nome.power_nome(ctx, 4)?)?;
            let m = ctx.powi(&(m2 / m4), 2);
            // H² + mH - 1 = 0, H > 0.
            let disc = (ctx.powi(&m, 2) + 4u32).sqrt();
            Ok((disc - m) / 2u32)
        }
        FractionKind::V => {
            let q2 = ctx.powi(q, 2);
            let q3 = ctx.powi(q, 3);
            let q6 = ctx.powi(q, 6);
            let num = qseries::qpoch(ctx, q, &q2, None)?;
            let den = ctx.powi(&qseries::qpoch(ctx, &q3, &q6, None)?, 3);
            Ok(nome.pow(ctx, 1, 3)? * num / den)
        }
        FractionKind::S => {
            let q2 = ctx.powi(q, 2);
            let m_q2 = -ctx.real(&q2);
            let m_q = -ctx.real(q);
            let num = qseries::qpoch(ctx, &m_q2, &q2, None)?;
            let den = qseries::qpoch(ctx, &m_q, &q2, None)?;
            Ok(nome.pow(ctx, 1, 8)? * num / den)
        }
        FractionKind::Q => {
            let q2 = ctx.powi(q, 2);
            let q4 = ctx.powi(q, 4);
            let num = ctx.powi(&qseries::qpoch(ctx, &q4, &q4, None)?, 2);
            let den = ctx.powi(&qseries::qpoch(ctx, &q2, &q4, None)?, 2);
            Ok(nome.pow(ctx, 1, 2)? * num / den)
        }
        FractionKind::M => qseries::m_building(ctx, nome),
    }
}

/// Central finite-difference derivative `dR/dq` of the Rogers-Ramanujan
/// fraction, an *independent but low-accuracy* oracle for the two
/// closed-form derivative routes.
///
/// # Algorithm
///
/// Step `h = 2^-(working_bits/3)` balances truncation (`O(h²)`) against
/// cancellation (`O(eps/h)`), leaving a relative error of order
/// `2^-(2·working_bits/3)` — about `1e-38` at 192 bits.
///
/// # Errors
///
/// [`Error::Domain`] if `working_bits < 192` (the balance above would
/// not reach even double-precision accuracy) or if `q ± h` leaves the
/// nome range.
pub fn rr_derivative_fd(ctx: &PrecisionContext, nome: &Nome) -> Result<Float> {
    if ctx.working_bits() < 192 {
        return Err(Error::Domain(format!(
            "finite-difference derivative needs ≥ 192 working bits, have {}",
            ctx.working_bits()
        )));
    }
    let h = ctx.two_pow(-((ctx.working_bits() / 3) as i32));
    let q_plus = Nome::from_q(ctx, ctx.real(nome.q()) + &h)?;
    let q_minus = Nome::from_q(ctx, ctx.real(nome.q()) - &h)?;
    let r_plus = fraction_direct(ctx, FractionKind::R, &q_plus)?;
    let r_minus = fraction_direct(ctx, FractionKind::R, &q_minus)?;
    Ok((r_plus - r_minus) / (ctx.real(2u32) * h))
}
