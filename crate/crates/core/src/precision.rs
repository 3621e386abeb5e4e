//! Working-precision context and the complex value type used by every kernel.
//!
//! All arithmetic runs at `digits + guard_digits` decimal digits; public
//! results are meaningful to roughly `digits`. A single context is threaded
//! through a whole call tree so intermediate precisions never mix.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Assign, Complex, Float};

/// Bits per decimal digit, rounded up generously.
const LOG2_10: f64 = 3.321928094887362;

/// Significant decimal digits of working precision plus internal guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Context with the default guard of 10 digits. `digits` must be >= 15.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, 10)
    }

    pub fn with_guard(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::InvalidInput(format!(
                "precision must be at least 15 digits, got {digits}"
            )));
        }
        if guard_digits < 5 {
            return Err(Error::InvalidInput(format!(
                "guard must be at least 5 digits, got {guard_digits}"
            )));
        }
        Ok(PrecisionContext {
            digits,
            guard_digits,
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Binary working precision for all internal arithmetic.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.guard_digits) as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// Total decimal digits carried internally.
    pub fn work_digits(&self) -> u32 {
        self.digits + self.guard_digits
    }

    /// Same `digits`, `extra` more decimal digits of working precision.
    pub fn deepen(&self, extra: u32) -> PrecisionContext {
        PrecisionContext {
            digits: self.digits,
            guard_digits: self.guard_digits + extra,
        }
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    pub fn complex<T>(&self, v: T) -> Complex
    where
        Complex: Assign<T>,
    {
        Complex::with_val(self.bits(), v)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn czero(&self) -> Complex {
        Complex::new(self.bits())
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    pub fn two_pi(&self) -> Float {
        self.pi() * 2u32
    }

    pub fn ln_pi(&self) -> Float {
        self.pi().ln()
    }

    pub fn ln_two_pi(&self) -> Float {
        self.two_pi().ln()
    }

    pub fn ln2(&self) -> Float {
        Float::with_val(self.bits(), Constant::Log2)
    }

    /// 10^(-digits): the resolution below which points are treated as
    /// coinciding with a pole or zero.
    pub fn resolution(&self) -> Float {
        let mut r = self.float(10);
        r.pow_assign_i32(-(self.digits as i32));
        r
    }

    /// 10^(-e) at working precision.
    pub fn pow10(&self, e: i32) -> Float {
        let mut r = self.float(10);
        r.pow_assign_i32(e);
        r
    }

    /// Parse a decimal number at working precision.
    pub fn parse_float(&self, s: &str) -> Result<Float> {
        let incomplete = Float::parse(s)
            .map_err(|_| Error::InvalidInput(format!("cannot parse number {s:?}")))?;
        let f = Float::with_val(self.bits(), incomplete);
        if !f.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite number {s:?}")));
        }
        Ok(f)
    }
}

trait PowAssignI32 {
    fn pow_assign_i32(&mut self, e: i32);
}

impl PowAssignI32 for Float {
    fn pow_assign_i32(&mut self, e: i32) {
        use rug::ops::Pow;
        let p = self.clone().pow(e);
        self.assign(p);
    }
}

/// Complex number at the context's working precision. Construction checks
/// finiteness so NaN/overflow cannot escape an operation silently.
#[derive(Debug, Clone, PartialEq)]
pub struct CValue(Complex);

impl CValue {
    /// Wrap a finished computation, rejecting non-finite components.
    pub fn checked(c: Complex, what: &str) -> Result<CValue> {
        if c.real().is_finite() && c.imag().is_finite() {
            Ok(CValue(c))
        } else {
            Err(Error::NonFinite(what.to_string()))
        }
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn as_complex(&self) -> &Complex {
        &self.0
    }

    pub fn into_complex(self) -> Complex {
        self.0
    }

    /// |self| as a real at the same precision.
    pub fn abs(&self) -> Float {
        Float::with_val(self.0.real().prec(), self.0.abs_ref())
    }
}

impl From<CValue> for Complex {
    fn from(v: CValue) -> Complex {
        v.0
    }
}

/// Format with `digits` significant decimal digits, locale-independent.
pub fn format_float(f: &Float, digits: u32) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.to_string_radix(10, Some(digits as usize))
}

/// Format at full working precision so that parse(format(x)) == x.
pub fn format_float_exact(f: &Float) -> String {
    f.to_string_radix(10, None)
}
