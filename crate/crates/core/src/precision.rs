//! Working-precision bookkeeping.
//!
//! Every public operation in this crate computes at a caller-chosen
//! binary precision and certifies results against a tolerance derived
//! from it.  [`PrecisionContext`] packages the two numbers involved:
//!
//! * `working_bits` — the MPFR mantissa size used for all arithmetic;
//! * `guard_bits`   — headroom subtracted before quoting accuracy, so
//!   that the certified unit `eps = 2^-(working_bits - guard_bits)`
//!   absorbs the rounding noise of multi-step algorithms.
//!
//! All [`rug::Float`] values produced by this crate are minted through a
//! context, so binary operations (which inherit the precision of their
//! left operand) stay at `working_bits` throughout.

use rug::{ops::Pow, Float, Rational};

use crate::error::{Error, Result};

/// Smallest supported working precision, in bits.
///
/// Below this the guard allowance would consume most of the mantissa and
/// tolerance bookkeeping becomes meaningless.
pub const MIN_WORKING_BITS: u32 = 64;

/// Default working precision: roughly 77 decimal digits.
pub const DEFAULT_WORKING_BITS: u32 = 256;

/// Default guard allowance.
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// Carries the working precision and derives tolerances from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    working_bits: u32,
    guard_bits: u32,
}

impl PrecisionContext {
    /// Context with the given working precision and the default guard
    /// allowance.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `working_bits < MIN_WORKING_BITS`.
    pub fn new(working_bits: u32) -> Result<Self> {
        Self::with_guard(working_bits, DEFAULT_GUARD_BITS)
    }

    /// Context with explicit guard allowance.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `working_bits < MIN_WORKING_BITS` or the
    /// guard does not leave at least `MIN_WORKING_BITS / 2` certified
    /// bits.
    pub fn with_guard(working_bits: u32, guard_bits: u32) -> Result<Self> {
        if working_bits < MIN_WORKING_BITS {
            return Err(Error::Domain(format!(
                "working precision {working_bits} bits is below the minimum {MIN_WORKING_BITS}"
            )));
        }
        if guard_bits + MIN_WORKING_BITS / 2 > working_bits {
            return Err(Error::Domain(format!(
                "guard allowance {guard_bits} bits leaves too little of {working_bits}"
            )));
        }
        Ok(Self {
            working_bits,
            guard_bits,
        })
    }

    /// The MPFR mantissa size used for arithmetic.
    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    /// Bits of headroom excluded from certified accuracy.
    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Certified unit of accuracy: `2^-(working_bits - guard_bits)`.
    pub fn eps(&self) -> Float {
        let exp = -((self.working_bits - self.guard_bits) as i32);
        Float::with_val(self.working_bits, 1u32) << exp
    }

    /// A context with `extra` additional working bits and the same guard,
    /// for transient internal boosts (e.g. gamma-function coefficients).
    pub fn boosted(&self, extra: u32) -> Self {
        Self {
            working_bits: self.working_bits + extra,
            guard_bits: self.guard_bits,
        }
    }

    /// Mint a value at working precision from anything MPFR can assign
    /// (integers, `f64`, another `Float`, parse incompletes, …).
    pub fn real<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits, value)
    }

    /// Exact small rational `num / den` at working precision.
    pub fn rational(&self, num: i64, den: u64) -> Float {
        debug_assert!(den != 0, "rational denominator must be nonzero");
        Float::with_val(self.working_bits, Rational::from((num, den)))
    }

    /// π at working precision.
    pub fn pi(&self) -> Float {
        Float::with_val(self.working_bits, rug::float::Constant::Pi)
    }

    /// Exact power of two `2^exp` at working precision.
    pub fn two_pow(&self, exp: i32) -> Float {
        Float::with_val(self.working_bits, 1u32) << exp
    }

    /// Parse a decimal string at working precision.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if the string is not a valid decimal number.
    pub fn parse_decimal(&self, s: &str) -> Result<Float> {
        let incomplete = Float::parse(s)
            .map_err(|e| Error::Domain(format!("cannot parse {s:?} as a real number: {e}")))?;
        Ok(Float::with_val(self.working_bits, incomplete))
    }

    /// Parse `"a/b"`, an integer, or a decimal string *exactly*, then
    /// round once to working precision.
    ///
    /// `"1/4"`, `"4"`, `"2.5"` are all accepted; the rational forms incur
    /// a single rounding.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] on malformed input or a zero denominator.
    pub fn parse_ratio(&self, s: &str) -> Result<Float> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad numerator in {s:?}")))?;
            let den: u64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
            if den == 0 {
                return Err(Error::Domain(format!("zero denominator in {s:?}")));
            }
            Ok(self.rational(num, den))
        } else {
            self.parse_decimal(s)
        }
    }

    /// Relative difference `|a - b| / max(1, |b|)` at working precision.
    pub fn rel_diff(&self, a: &Float, b: &Float) -> Float {
        let diff = Float::with_val(self.working_bits, a - b).abs();
        let scale = Float::with_val(self.working_bits, b.abs_ref());
        if scale > 1u32 {
            diff / scale
        } else {
            diff
        }
    }

    /// `x^(num/den)` for positive `x`, via a single `exp(ln x · num/den)`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `x <= 0` or `den == 0`.
    pub fn pow_frac(&self, x: &Float, num: i64, den: u64) -> Result<Float> {
        if den == 0 {
            return Err(Error::Domain("fractional power with zero denominator".into()));
        }
        if !(x.is_sign_positive() && *x != 0u32) || x.is_nan() {
            return Err(Error::Domain(format!(
                "fractional power of non-positive value {x}"
            )));
        }
        let ln = Float::with_val(self.working_bits, x.ln_ref());
        let scaled = ln * self.rational(num, den);
        Ok(scaled.exp())
    }

    /// Positive square root with a domain check.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `x < 0`.
    pub fn sqrt(&self, x: &Float) -> Result<Float> {
        if x.is_sign_negative() && *x != 0u32 {
            return Err(Error::Domain(format!("square root of negative value {x}")));
        }
        Ok(Float::with_val(self.working_bits, x.sqrt_ref()))
    }

    /// Integer power that preserves working precision.
    pub fn powi(&self, x: &Float, n: i32) -> Float {
        Float::with_val(self.working_bits, x.pow(n))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            working_bits: DEFAULT_WORKING_BITS,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_matches_guarded_exponent() {
        let ctx = PrecisionContext::new(256).unwrap();
        let eps = ctx.eps();
        let expect = ctx.two_pow(-224);
        assert_eq!(eps, expect);
    }

    #[test]
    fn rejects_tiny_precision() {
        assert!(PrecisionContext::new(32).is_err());
        assert!(PrecisionContext::with_guard(64, 40).is_err());
    }

    #[test]
    fn parses_rationals_and_decimals() {
        let ctx = PrecisionContext::default();
        let q = ctx.parse_ratio("1/4").unwrap();
        assert_eq!(q, ctx.rational(1, 4));
        let d = ctx.parse_ratio("2.5").unwrap();
        assert_eq!(d, ctx.real(2.5f64));
        assert!(ctx.parse_ratio("1/0").is_err());
        assert!(ctx.parse_ratio("x").is_err());
    }

    #[test]
    fn pow_frac_agrees_with_sqrt() {
        let ctx = PrecisionContext::default();
        let x = ctx.real(2u32);
        let a = ctx.pow_frac(&x, 1, 2).unwrap();
        let b = ctx.sqrt(&x).unwrap();
        let diff = ctx.rel_diff(&a, &b);
        assert!(diff < ctx.eps(), "2^(1/2) vs sqrt(2): {diff}");
    }

    #[test]
    fn pow_frac_rejects_negative_base() {
        let ctx = PrecisionContext::default();
        let x = ctx.real(-1i32);
        assert!(ctx.pow_frac(&x, 1, 3).is_err());
    }
}
