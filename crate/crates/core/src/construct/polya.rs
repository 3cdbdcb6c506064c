use crate::error::{Error, Result};
use crate::numeric::ComplexF;
use crate::poly::FloatPoly;

/// Below this `|cos(b + alpha a)|` the leading coefficient of the shift is
/// treated as exactly zero and the degree drops by one.
pub const DEGREE_DROP_COS_TOL: f64 = 1e-12;

/// Pólya shift of `G(z) = e^{alpha z} F(z)`:
/// `G(z - ia) e^{-ib} + G(z + ia) e^{ib} = e^{alpha z} H(z)`, returning the
/// polynomial part `H = F(z - ia) e^{-ib'} + F(z + ia) e^{ib'}` with
/// `b' = b + alpha a`.
///
/// The leading coefficient of `H` is `2 c_n cos(b')`. When `|cos(b')|` is
/// below [`DEGREE_DROP_COS_TOL`] it is set to zero, so the degree drop is
/// structural rather than a rounding-sized coefficient. A real `F` gives a
/// real `H` and the result is stored with zero imaginary parts.
pub fn polya_shift(f: &FloatPoly, a: f64, b: f64, alpha: f64) -> Result<FloatPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("polya_shift"));
    }
    if !(a.is_finite() && a > 0.0) || !b.is_finite() || !alpha.is_finite() {
        return Err(Error::InvalidParameter("polya_shift needs finite a > 0, b, alpha".into()));
    }
    let phase = b + alpha * a;
    let rot = ComplexF::from_polar(1.0, phase);
    let down = f.shift(&ComplexF::new(0.0, -a)).scale(&rot.conj());
    let up = f.shift(&ComplexF::new(0.0, a)).scale(&rot);
    let mut coeffs = (&down + &up).into_coeffs();
    coeffs.resize(f.coeffs().len(), ComplexF::new(0.0, 0.0));
    if f.coeffs().iter().all(|c| c.im == 0.0) {
        coeffs.iter_mut().for_each(|c| c.im = 0.0);
    }
    if phase.cos().abs() < DEGREE_DROP_COS_TOL {
        if let Some(last) = coeffs.last_mut() {
            *last = ComplexF::new(0.0, 0.0);
        }
    }
    Ok(FloatPoly::new(coeffs))
}
