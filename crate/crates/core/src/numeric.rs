//! Exact scalars over ℚ and ℚ(i), the binary64 complex type, and the
//! tolerance policy shared by the float cross-checks.
//!
//! Exact and float scalars never mix implicitly. The only bridge is
//! [`GaussianRational::to_complex`] (and [`rational_to_f64`]), which rounds
//! each component to the nearest binary64 and refuses to overflow.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// binary64 complex number used by every float path.
pub type ComplexF = Complex64;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest binary64 to `x`; errors instead of returning an infinity.
pub fn rational_to_f64(x: &Rational) -> Result<f64> {
    let v = x.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::FloatOverflow(format_rational(x)))
    }
}

/// Exact rational value of a finite double.
pub fn f64_to_rational(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or(Error::NonFinite("f64_to_rational"))
}

/// Canonical `"p/q"` text form (the denominator is always written).
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"`, `"p"`, or a plain decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok(Rational::from_integer(n));
    }
    // Decimal literal: split mantissa digits so the value is exact.
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').ok_or_else(bad)?;
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || (whole.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let v = Rational::new(digits, scale);
    Ok(if neg { -v } else { v })
}

/// Bit length of the larger of numerator and denominator.
pub fn rational_bits(x: &Rational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

/// Exact element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// `i * s` for real `s`.
    pub fn imag(s: Rational) -> Self {
        Self { re: Rational::zero(), im: s }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(Self { re: num.re / &n, im: num.im / n })
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Correctly rounded per component.
    pub fn to_complex(&self) -> Result<ComplexF> {
        Ok(ComplexF::new(rational_to_f64(&self.re)?, rational_to_f64(&self.im)?))
    }

    pub fn bits(&self) -> u64 {
        rational_bits(&self.re).max(rational_bits(&self.im))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::from_real(re)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self { re: Rational::one(), im: Rational::zero() }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Panics on a zero divisor; use [`GaussianRational::checked_div`] when the
/// divisor is not known to be nonzero.
impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        self.checked_div(&rhs).expect("division by zero in GaussianRational")
    }
}

/// Tolerances for the float cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TolerancePolicy {
    pub root_residual_tol: f64,
    pub contour_margin: f64,
    pub max_iterations: usize,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { root_residual_tol: 1e-9, contour_margin: 1e-3, max_iterations: 200 }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(self.root_residual_tol) && ok(self.contour_margin) && self.max_iterations > 0 {
            Ok(())
        } else {
            Err(Error::InvalidParameter("tolerance policy fields must be strictly positive".into()))
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.root_residual_tol = tol;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn norm_of_gaussian_integer() {
        let x = GaussianRational::from_ints(1, 2);
        let y = GaussianRational::from_ints(1, -2);
        assert_eq!(&x * &y, GaussianRational::from_ints(5, 0));
    }

    #[test]
    fn conj_negates_imaginary_part() {
        assert_eq!(g((3, 2), (1, 4)).conj(), g((3, 2), (-1, 4)));
    }

    #[test]
    fn quotient_by_conjugate() {
        let q = GaussianRational::from_ints(1, 1).checked_div(&GaussianRational::from_ints(1, -1)).unwrap();
        assert_eq!(q, GaussianRational::i());
        assert_eq!(&q * &GaussianRational::from_ints(1, -1), GaussianRational::from_ints(1, 1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = GaussianRational::one().checked_div(&GaussianRational::zero());
        assert_eq!(r, Err(Error::DivisionByZero));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(g((1, 2), (0, 1)).to_complex().unwrap(), ComplexF::new(0.5, 0.0));
        assert_eq!(g((1, 3), (0, 1)).to_complex().unwrap(), ComplexF::new(1.0 / 3.0, 0.0));
        assert_eq!(GaussianRational::zero().to_complex().unwrap(), ComplexF::new(0.0, 0.0));
    }

    #[test]
    fn float_conversion_overflow() {
        let huge = Rational::from_integer(num_traits::pow(BigInt::from(2), 1100));
        assert!(matches!(GaussianRational::from_real(huge).to_complex(), Err(Error::FloatOverflow(_))));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rational(&int(0)), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn default_policy() {
        let p = TolerancePolicy::default();
        assert_eq!(p.root_residual_tol, 1e-9);
        assert_eq!(p.contour_margin, 1e-3);
        assert_eq!(p.max_iterations, 200);
        assert!(p.validate().is_ok());
        assert!(p.with_tol(0.0).validate().is_err());
    }

    fn arb_rat() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_gr() -> impl Strategy<Value = GaussianRational> {
        (arb_rat(), arb_rat()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    /// Distance in units in the last place between two finite doubles.
    fn ulps(a: f64, b: f64) -> u64 {
        let key = |x: f64| {
            let b = x.to_bits() as i64;
            if b < 0 {
                i64::MIN - b
            } else {
                b
            }
        };
        key(a).abs_diff(key(b))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_gr(), y in arb_gr(), z in arb_gr()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), GaussianRational::one());
            }
            prop_assert_eq!(&x - &x, GaussianRational::zero());
        }

        #[test]
        fn conj_is_an_involutive_automorphism(x in arb_gr(), y in arb_gr()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
            prop_assert!(!x.norm_sqr().is_negative());
        }

        // Same-sign components: the sum of two correctly rounded values is
        // within one ulp of the correctly rounded sum. With cancellation the
        // ulp distance is unbounded, so the signs are matched here.
        #[test]
        fn float_conversion_is_additive_to_one_ulp(
            a in 0i64..(1 << 20), b in 1i64..997, c in 0i64..(1 << 20), d in 1i64..997,
            e in 0i64..(1 << 20), f in 1i64..997, g2 in 0i64..(1 << 20), h in 1i64..997,
            neg_re in any::<bool>(), neg_im in any::<bool>(),
        ) {
            let s_re = if neg_re { -1 } else { 1 };
            let s_im = if neg_im { -1 } else { 1 };
            let x = GaussianRational::new(rat(s_re * a, b), rat(s_im * e, f));
            let y = GaussianRational::new(rat(s_re * c, d), rat(s_im * g2, h));
            let exact = (&x + &y).to_complex().unwrap();
            let summed = x.to_complex().unwrap() + y.to_complex().unwrap();
            prop_assert!(ulps(exact.re, summed.re) <= 1, "re {} vs {}", exact.re, summed.re);
            prop_assert!(ulps(exact.im, summed.im) <= 1, "im {} vs {}", exact.im, summed.im);
        }
    }
}
