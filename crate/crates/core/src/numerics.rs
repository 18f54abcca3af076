//! Generic numerical kernels: tolerance-driven summation of series and
//! infinite products, dense real polynomials, and root isolation with
//! Newton polishing.
//!
//! The summation routine assumes terms that *eventually decay at least
//! geometrically* — true of every q-series and q-product in this crate
//! for `q` below [`crate::nome::MAX_NOME`] — and bounds the dropped tail
//! by the geometric series with the last observed decay ratio.
//!
//! Root isolation is deliberately conservative: it reports roots only
//! where a sign change certifies one, and converts "the polynomial dips
//! to zero without crossing" into [`Error::PrecisionExhausted`] so that
//! tangencies (double roots) are surfaced instead of silently missed.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Iteration budget for [`sum_to_tolerance`], as a multiple of
/// `working_bits`.  A geometrically convergent series at ratio ≤ 0.9
/// needs about `working_bits / log2(1/0.9) ≈ 6.6 · working_bits` terms,
/// so ten times the working precision is a comfortable ceiling.
const MAX_TERMS_PER_BIT: u64 = 10;

/// Consecutive sub-tolerance terms required before summation stops.
///
/// Two in a row protects series with strided or alternating patterns
/// (e.g. theta series whose odd-index terms vanish) from stopping on an
/// accidental zero.
const QUIET_TERMS: u32 = 2;

/// Newton iteration budget for [`polish_root`].
const MAX_NEWTON_STEPS: u32 = 256;

/// Number of initial panels used by [`real_roots`] before bisection.
const SCAN_PANELS: u32 = 512;

/// How terms are combined by [`sum_to_tolerance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMode {
    /// Terms are added: `Σ term(n)`.
    Series,
    /// Terms are *perturbations* of unity and multiplied:
    /// `Π (1 + term(n))`.
    Product,
}

/// Sum a series or accumulate an infinite product until the geometric
/// tail bound drops below the context tolerance.
///
/// `term(n)` is called for `n = 0, 1, 2, …`.  In [`SumMode::Product`]
/// each term is the perturbation `δ_n` and the factor applied is
/// `1 + δ_n`.
///
/// # Algorithm
///
/// After each term the decay ratio `ρ = |t_n| / |t_{n-1}|` (clamped to
/// 0.99) bounds the dropped tail by `|t_n| · ρ / (1 - ρ)`.  Summation
/// stops once `|t_n| + tail ≤ eps · max(1, |acc|)` for
/// [`QUIET_TERMS`] consecutive terms.
///
/// # Errors
///
/// * [`Error::NonConvergent`] after `10 · working_bits` terms.
/// * [`Error::Domain`] if a product factor is not strictly positive.
pub fn sum_to_tolerance<F>(ctx: &PrecisionContext, mode: SumMode, mut term: F) -> Result<Float>
where
    F: FnMut(u64) -> Float,
{
    let budget = MAX_TERMS_PER_BIT * u64::from(ctx.working_bits());
    let eps = ctx.eps();
    let ratio_cap = ctx.real(0.99f64);

    let mut acc = match mode {
        SumMode::Series => ctx.real(0u32),
        SumMode::Product => ctx.real(1u32),
    };
    let mut prev_mag: Option<Float> = None;
    let mut quiet = 0u32;

    for n in 0..budget {
        let t = term(n);
        debug_assert_eq!(t.prec(), ctx.working_bits());
        match mode {
            SumMode::Series => acc += &t,
            SumMode::Product => {
                let factor = ctx.real(1u32) + &t;
                if !(factor.is_sign_positive() && factor != 0u32) {
                    return Err(Error::Domain(format!(
                        "product factor 1 + ({t:.6e}) is not positive at index {n}"
                    )));
                }
                acc *= factor;
            }
        }

        let mag = ctx.real(t.abs_ref());
        // Geometric tail bound from the observed decay ratio.
        let tail = match &prev_mag {
            Some(p) if *p != 0u32 => {
                let mut ratio = ctx.real(&mag) / p;
                if ratio > ratio_cap {
                    ratio = ratio_cap.clone();
                }
                let denom = ctx.real(1u32) - &ratio;
                ctx.real(&mag) * ratio / denom
            }
            _ => ctx.real(&mag),
        };

        let scale = match mode {
            SumMode::Series => {
                let a = ctx.real(acc.abs_ref());
                if a > 1u32 {
                    a
                } else {
                    ctx.real(1u32)
                }
            }
            // For products the perturbations are measured against unity.
            SumMode::Product => ctx.real(1u32),
        };
        let bound = ctx.real(&eps) * scale;
        if ctx.real(&mag) + tail <= bound {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(acc);
            }
        } else {
            quiet = 0;
        }
        prev_mag = Some(mag);
    }

    Err(Error::NonConvergent(format!(
        "no convergence within {budget} terms (last magnitude {:.3e})",
        prev_mag.map(|m| m.to_f64()).unwrap_or(f64::NAN)
    )))
}

/// Dense univariate polynomial with real coefficients, constant term
/// first.
#[derive(Debug, Clone)]
pub struct RealPoly {
    coeffs: Vec<Float>,
}

impl RealPoly {
    /// Build from ascending coefficients `c_0 + c_1 x + … + c_d x^d`.
    pub fn new(coeffs: Vec<Float>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Self { coeffs }
    }

    /// Degree, ignoring trailing zero coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != 0u32)
            .unwrap_or(0)
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, ctx: &PrecisionContext, x: &Float) -> Float {
        let mut acc = ctx.real(0u32);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation together with the magnitude scale `Σ |c_i| |x|^i`,
    /// which bounds the rounding error of the evaluation itself and
    /// calibrates "how close to zero is zero" for residual checks.
    pub fn eval_with_scale(&self, ctx: &PrecisionContext, x: &Float) -> (Float, Float) {
        let ax = ctx.real(x.abs_ref());
        let mut acc = ctx.real(0u32);
        let mut scale = ctx.real(0u32);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
            scale = scale * &ax + ctx.real(c.abs_ref());
        }
        (acc, scale)
    }

    /// Formal derivative.
    pub fn derivative(&self, ctx: &PrecisionContext) -> RealPoly {
        if self.coeffs.len() <= 1 {
            return RealPoly::new(vec![ctx.real(0u32)]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ctx.real(c) * ctx.real(i as u64))
            .collect();
        RealPoly::new(coeffs)
    }
}

/// A certified simple real root found by [`real_roots`].
#[derive(Debug, Clone)]
pub struct RootInterval {
    /// Polished root value.
    pub value: Float,
    /// Lower end of the isolating bracket.
    pub lo: Float,
    /// Upper end of the isolating bracket.
    pub hi: Float,
    /// `|P(value)|` after polishing.
    pub residual: Float,
}

/// Isolate every *simple* real root of `poly` in `[lo, hi]`.
///
/// # Algorithm
///
/// The interval is scanned on [`SCAN_PANELS`] equal panels; each panel
/// with a sign change is narrowed by dyadic bisection (at most
/// `working_bits` halvings) and finished with [`polish_root`].
///
/// # Errors
///
/// * [`Error::Domain`] if `lo ≥ hi`.
/// * [`Error::PrecisionExhausted`] if no sign change exists but the
///   polynomial dips below `sqrt(eps)` relative to its coefficient
///   scale — the signature of a root of even multiplicity (tangency)
///   that sign-based isolation cannot certify at this precision.
pub fn real_roots(
    ctx: &PrecisionContext,
    poly: &RealPoly,
    lo: &Float,
    hi: &Float,
) -> Result<Vec<RootInterval>> {
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
    }
    let span = ctx.real(hi - lo);
    let step = ctx.real(&span) / ctx.real(SCAN_PANELS);

    let mut points = Vec::with_capacity(SCAN_PANELS as usize + 1);
    for i in 0..=SCAN_PANELS {
        let x = if i == SCAN_PANELS {
            ctx.real(hi)
        } else {
            ctx.real(lo) + ctx.real(&step) * ctx.real(i)
        };
        let p = poly.eval(ctx, &x);
        points.push((x, p));
    }

    let mut roots = Vec::new();

    for pair in points.windows(2) {
        let (xa, pa) = &pair[0];
        let (xb, pb) = &pair[1];

        if *pa == 0u32 {
            // Exact grid hit; record directly.
            push_unique(ctx, &mut roots, ctx.real(xa), xa, xb, poly);
            continue;
        }
        if pa.is_sign_positive() == pb.is_sign_positive() {
            continue;
        }
        // Dyadic bisection of the bracketing panel.
        let mut a = ctx.real(xa);
        let mut b = ctx.real(xb);
        let mut pa_sign = pa.is_sign_positive();
        for _ in 0..ctx.working_bits() {
            let mid = (ctx.real(&a) + &b) / 2u32;
            let pm = poly.eval(ctx, &mid);
            if pm == 0u32 {
                a = ctx.real(&mid);
                b = mid;
                break;
            }
            if pm.is_sign_positive() == pa_sign {
                a = mid;
            } else {
                b = mid;
            }
            let width = ctx.real(&b) - &a;
            let floor = ctx.real(&span) * ctx.eps();
            if width <= floor {
                break;
            }
            pa_sign = poly.eval(ctx, &a).is_sign_positive();
        }
        let mid = (ctx.real(&a) + &b) / 2u32;
        let value = polish_root(ctx, poly, &mid)?;
        push_unique(ctx, &mut roots, value, &a, &b, poly);
    }

    // Tangency sweep: at a root of even multiplicity P does not change
    // sign, but P' does.  Locate each critical point of P on the grid
    // and refuse if |P| there is indistinguishable from zero (relative
    // to the coefficient scale) while no certified root sits nearby.
    let threshold = ctx.real(ctx.eps().sqrt_ref());
    let deriv = poly.derivative(ctx);
    let dvals: Vec<Float> = points.iter().map(|(x, _)| deriv.eval(ctx, x)).collect();
    for i in 0..points.len() - 1 {
        let (da, db) = (&dvals[i], &dvals[i + 1]);
        if *da == 0u32 || da.is_sign_positive() == db.is_sign_positive() {
            // A critical point exactly on the grid is covered by the
            // exact-hit branch above when P also vanishes there.
            continue;
        }
        // Bisect P' to the critical point.
        let mut a = ctx.real(&points[i].0);
        let mut b = ctx.real(&points[i + 1].0);
        let a_sign = da.is_sign_positive();
        for _ in 0..ctx.working_bits() {
            let mid = (ctx.real(&a) + &b) / 2u32;
            let dm = deriv.eval(ctx, &mid);
            if dm == 0u32 {
                a = ctx.real(&mid);
                b = mid;
                break;
            }
            if dm.is_sign_positive() == a_sign {
                a = mid;
            } else {
                b = mid;
            }
        }
        let crit = (ctx.real(&a) + &b) / 2u32;
        let (pv, scale) = poly.eval_with_scale(ctx, &crit);
        let scale = if scale > 1u32 { scale } else { ctx.real(1u32) };
        let rel = ctx.real(pv.abs_ref()) / scale;
        if rel > threshold {
            continue;
        }
        let near_known = roots.iter().any(|r| {
            let d = ctx.real(&crit - &r.value).abs();
            let tol = ctx.real(&threshold) * (ctx.real(1u32) + ctx.real(crit.abs_ref()));
            d <= tol
        });
        if !near_known {
            return Err(Error::PrecisionExhausted(format!(
                "|P| dips to {:.3e} of scale at the critical point x ≈ {:.10} without a sign \
                 change: root of even multiplicity cannot be certified at this precision",
                rel.to_f64(),
                crit.to_f64()
            )));
        }
    }

    roots.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite roots"));
    Ok(roots)
}

/// Append a polished root unless it duplicates one already found
/// (adjacent panels can bracket the same root after bisection drift).
fn push_unique(
    ctx: &PrecisionContext,
    roots: &mut Vec<RootInterval>,
    value: Float,
    lo: &Float,
    hi: &Float,
    poly: &RealPoly,
) {
    let tol = ctx.real(ctx.eps().sqrt_ref());
    for r in roots.iter() {
        let d = ctx.real(&value - &r.value).abs();
        let scale = ctx.real(1u32) + ctx.real(value.abs_ref());
        if d <= ctx.real(&tol) * scale {
            return;
        }
    }
    let residual = ctx.real(poly.eval(ctx, &value).abs_ref());
    roots.push(RootInterval {
        value,
        lo: ctx.real(lo),
        hi: ctx.real(hi),
        residual,
    });
}

/// Newton-polish a root of `poly` from `seed`.
///
/// The seed must lie close to a *simple* root; the iteration is confined
/// to the trust region `|x - seed| ≤ (1 + |seed|) / 2`.
///
/// # Errors
///
/// * [`Error::Diverged`] if the iterate leaves the trust region, the
///   derivative vanishes, or [`MAX_NEWTON_STEPS`] are exhausted without
///   the step size dropping below `eps · (1 + |x|)`.
pub fn polish_root(ctx: &PrecisionContext, poly: &RealPoly, seed: &Float) -> Result<Float> {
    let deriv = poly.derivative(ctx);
    let trust = (ctx.real(1u32) + ctx.real(seed.abs_ref())) / 2u32;
    let eps = ctx.eps();

    let mut x = ctx.real(seed);
    let mut quiet = 0u32;
    for _ in 0..MAX_NEWTON_STEPS {
        let p = poly.eval(ctx, &x);
        if p == 0u32 {
            return Ok(x);
        }
        let dp = deriv.eval(ctx, &x);
        if dp == 0u32 {
            return Err(Error::Diverged(format!(
                "derivative vanished at x = {:.10}",
                x.to_f64()
            )));
        }
        let step = p / dp;
        x -= &step;
        let drift = ctx.real(&x - seed).abs();
        if drift > trust {
            return Err(Error::Diverged(format!(
                "Newton iterate escaped the trust region of seed {:.10}",
                seed.to_f64()
            )));
        }
        let scale = ctx.real(1u32) + ctx.real(x.abs_ref());
        if ctx.real(step.abs_ref()) <= ctx.real(&eps) * scale {
            quiet += 1;
            if quiet >= 2 {
                return Ok(x);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Diverged(format!(
        "no convergence within {MAX_NEWTON_STEPS} Newton steps from seed {:.10}",
        seed.to_f64()
    )))
}
