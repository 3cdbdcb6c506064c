//! Float root finding and zero counting.
//!
//! These are cross-checks for the exact certificates, never a substitute:
//! [`find_roots`] reports `converged = false` instead of returning roots it
//! could not verify by residual.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{ComplexF, TolerancePolicy};
use crate::poly::FloatPoly;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    #[serde(with = "crate::json::complex_vec")]
    pub roots: Vec<ComplexF>,
    pub residuals: Vec<f64>,
    pub converged: bool,
}

impl RootSet {
    pub fn max_imag_residual(&self) -> Result<f64> {
        self.check()?;
        Ok(self.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max))
    }

    pub fn max_circle_residual(&self) -> Result<f64> {
        self.check()?;
        Ok(self.roots.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max))
    }

    /// The root with the largest `key`, used as a certificate witness.
    pub fn worst_by(&self, key: impl Fn(&ComplexF) -> f64) -> Option<ComplexF> {
        self.roots.iter().copied().max_by(|a, b| key(a).total_cmp(&key(b)))
    }

    fn check(&self) -> Result<()> {
        if self.converged {
            Ok(())
        } else {
            Err(Error::NotConverged)
        }
    }
}

pub fn max_imag_residual(r: &RootSet) -> Result<f64> {
    r.max_imag_residual()
}

pub fn max_circle_residual(r: &RootSet) -> Result<f64> {
    r.max_circle_residual()
}

/// Backward-error residual `|p(z)| / sum |c_k| |z|^k`.
pub fn relative_residual(p: &FloatPoly, z: ComplexF) -> f64 {
    let value = p.eval(&z).norm();
    let r = z.norm();
    let scale = p.coeffs().iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    if scale == 0.0 {
        0.0
    } else {
        value / scale
    }
}

/// All roots of `p` by Aberth-Ehrlich simultaneous iteration.
///
/// Exact zero roots (vanishing low-order coefficients) are split off first.
/// Starting points sit on a circle sized from the coefficient bound with a
/// small angular offset so that real polynomials do not start on a symmetric
/// configuration.
pub fn find_roots(p: &FloatPoly, policy: &TolerancePolicy) -> Result<RootSet> {
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidParameter("find_roots needs degree >= 1".into())),
    };
    if !p.is_finite() {
        return Err(Error::NonFinite("find_roots input"));
    }
    let coeffs = p.coeffs();
    let zeros_at_origin = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = FloatPoly::new(coeffs[zeros_at_origin..].to_vec());
    let m = n - zeros_at_origin;

    let mut roots = vec![ComplexF::new(0.0, 0.0); zeros_at_origin];
    if m > 0 {
        roots.extend(aberth(&reduced, m, policy.max_iterations));
    }
    let residuals: Vec<f64> = roots.iter().map(|&z| relative_residual(p, z)).collect();
    let converged = roots.iter().all(|z| z.re.is_finite() && z.im.is_finite())
        && residuals.iter().all(|&r| r < policy.root_residual_tol);
    Ok(RootSet { roots, residuals, converged })
}

fn aberth(p: &FloatPoly, n: usize, max_iterations: usize) -> Vec<ComplexF> {
    let dp = p.derivative();
    let c = p.coeffs();
    let lead = c[n].norm();
    // Fujiwara-style bound on root moduli.
    let bound = (0..n).map(|k| (c[k].norm() / lead).powf(1.0 / (n - k) as f64)).fold(0.0, f64::max);
    let radius = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<ComplexF> = (0..n).map(|k| ComplexF::from_polar(radius, TAU * k as f64 / n as f64 + 0.4)).collect();
    let mut settled = vec![false; n];
    let mut extra_sweeps = 2;
    for _ in 0..max_iterations {
        for i in 0..n {
            if settled[i] {
                continue;
            }
            let zi = z[i];
            let pv = p.eval(&zi);
            if pv.norm() == 0.0 {
                settled[i] = true;
                continue;
            }
            let dv = dp.eval(&zi);
            let repulsion: ComplexF = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = zi - z[j];
                    if d.norm() == 0.0 {
                        ComplexF::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let newton = if dv.norm() == 0.0 {
                // Stationary point: kick off it.
                ComplexF::new(1e-3 * (1.0 + zi.norm()), 1e-3)
            } else {
                pv / dv
            };
            let w = newton / (ComplexF::new(1.0, 0.0) - newton * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] = zi - w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                settled[i] = true;
            }
        }
        if settled.iter().all(|&s| s) {
            // A couple of full polishing sweeps once every root has settled.
            if extra_sweeps == 0 {
                break;
            }
            extra_sweeps -= 1;
            settled.iter_mut().for_each(|s| *s = false);
        }
    }
    z
}

/// Something whose zeros can be counted on a contour.
pub trait Analytic {
    fn value(&self, z: ComplexF) -> ComplexF;
    fn derivative(&self, z: ComplexF) -> ComplexF;
}

impl Analytic for FloatPoly {
    fn value(&self, z: ComplexF) -> ComplexF {
        self.eval(&z)
    }
    fn derivative(&self, z: ComplexF) -> ComplexF {
        FloatPoly::derivative(self).eval(&z)
    }
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourBox {
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_lo: f64,
    pub im_hi: f64,
}

impl ContourBox {
    pub fn new(re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> Result<Self> {
        let b = Self { re_lo, re_hi, im_lo, im_hi };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_lo, self.re_hi, self.im_lo, self.im_hi].iter().all(|x| x.is_finite());
        if finite && self.re_lo < self.re_hi && self.im_lo < self.im_hi {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("degenerate box {self:?}")))
        }
    }

    /// Reflection through the real axis.
    pub fn mirrored(&self) -> Self {
        Self { re_lo: self.re_lo, re_hi: self.re_hi, im_lo: -self.im_hi, im_hi: -self.im_lo }
    }

    /// Counter-clockwise corners starting bottom-left.
    fn corners(&self) -> [ComplexF; 4] {
        [
            ComplexF::new(self.re_lo, self.im_lo),
            ComplexF::new(self.re_hi, self.im_lo),
            ComplexF::new(self.re_hi, self.im_hi),
            ComplexF::new(self.re_lo, self.im_hi),
        ]
    }
}

const SEGMENTS_PER_EDGE: usize = 64;
const MIN_SEGMENT: f64 = 1e-10;
const MAX_EVALUATIONS: usize = 2_000_000;

struct Tracker<'a, F: ?Sized> {
    f: &'a F,
    margin: f64,
    evaluations: usize,
}

impl<F: Analytic + ?Sized> Tracker<'_, F> {
    /// Value at `z` and a Newton estimate of the distance to the nearest zero.
    fn sample(&mut self, z: ComplexF) -> Result<(ComplexF, f64)> {
        self.evaluations += 1;
        if self.evaluations > MAX_EVALUATIONS {
            return Err(Error::SubdivisionLimit);
        }
        let v = self.f.value(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite("contour sample"));
        }
        let d = self.f.derivative(z).norm();
        let dist = if d == 0.0 { f64::INFINITY } else { v.norm() / d };
        if v.norm() == 0.0 || dist < self.margin {
            return Err(Error::ZeroNearContour { re: z.re, im: z.im, margin: self.margin });
        }
        Ok((v, dist))
    }

    /// Total change of argument along the segment `a -> b`.
    fn phase(&mut self, a: ComplexF, fa: (ComplexF, f64), b: ComplexF, fb: (ComplexF, f64)) -> Result<f64> {
        let delta = (fb.0 / fa.0).arg();
        let len = (b - a).norm();
        if delta.abs() <= FRAC_PI_2 && len <= 0.5 * fa.1.min(fb.1) {
            return Ok(delta);
        }
        if len < MIN_SEGMENT {
            return Err(Error::SubdivisionLimit);
        }
        let mid = (a + b) * 0.5;
        let fm = self.sample(mid)?;
        Ok(self.phase(a, fa, mid, fm)? + self.phase(mid, fm, b, fb)?)
    }
}

/// Number of zeros of `f` inside `b`, by tracking the argument of `f` around
/// the boundary. Each segment's argument increment must stay within π/2 and
/// the segment must be short relative to the estimated distance to the
/// nearest zero; otherwise it is bisected.
pub fn count_zeros_box<F: Analytic + ?Sized>(f: &F, b: &ContourBox, policy: &TolerancePolicy) -> Result<i64> {
    b.validate()?;
    let mut tracker = Tracker { f, margin: policy.contour_margin, evaluations: 0 };
    let corners = b.corners();
    let mut total = 0.0;
    for e in 0..4 {
        let (start, end) = (corners[e], corners[(e + 1) % 4]);
        let mut prev = start;
        let mut fprev = tracker.sample(prev)?;
        for k in 1..=SEGMENTS_PER_EDGE {
            let t = k as f64 / SEGMENTS_PER_EDGE as f64;
            let next = start + (end - start) * t;
            let fnext = tracker.sample(next)?;
            total += tracker.phase(prev, fprev, next, fnext)?;
            prev = next;
            fprev = fnext;
        }
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 1e-6 {
        return Err(Error::SubdivisionLimit);
    }
    Ok(rounded as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn fp(c: &[(f64, f64)]) -> FloatPoly {
        Poly::new(c.iter().map(|&(a, b)| ComplexF::new(a, b)).collect())
    }

    fn sorted_by_re(mut v: Vec<ComplexF>) -> Vec<ComplexF> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn roots_of_z2_plus_1() {
        let r = find_roots(&fp(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]), &TolerancePolicy::default()).unwrap();
        assert!(r.converged);
        let mut ims: Vec<f64> = r.roots.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-12 && (ims[1] - 1.0).abs() < 1e-12);
        assert!(r.roots.iter().all(|z| z.re.abs() < 1e-12));
        assert!((r.max_imag_residual().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn roots_of_linear() {
        let r = find_roots(&fp(&[(2.0, 0.0), (-2.0, 0.0)]), &TolerancePolicy::default()).unwrap();
        assert!((r.roots[0] - ComplexF::new(1.0, 0.0)).norm() < 1e-14);
        assert!(r.max_imag_residual().unwrap() < 1e-14);
    }

    #[test]
    fn roots_of_2z2_minus_1() {
        let r = find_roots(&fp(&[(-1.0, 0.0), (0.0, 0.0), (2.0, 0.0)]), &TolerancePolicy::default()).unwrap();
        let roots = sorted_by_re(r.roots.clone());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((roots[0].re + h).abs() < 1e-12 && (roots[1].re - h).abs() < 1e-12);
        assert!(r.max_imag_residual().unwrap() < 1e-12);
    }

    #[test]
    fn circle_residuals() {
        let pol = TolerancePolicy::default();
        let r = find_roots(&fp(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]), &pol).unwrap();
        assert!(r.max_circle_residual().unwrap() < 1e-12);
        let r = find_roots(&fp(&[(-2.0, 0.0), (1.0, 0.0)]), &pol).unwrap();
        assert!((r.max_circle_residual().unwrap() - 1.0).abs() < 1e-12);
        let r = find_roots(&fp(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]), &pol).unwrap();
        assert!(r.max_circle_residual().unwrap() < 1e-12);
    }

    #[test]
    fn zero_roots_are_split_off() {
        // z^2 (z - 3)
        let r =
            find_roots(&fp(&[(0.0, 0.0), (0.0, 0.0), (-3.0, 0.0), (1.0, 0.0)]), &TolerancePolicy::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn unconverged_set_refuses_metrics() {
        let r = RootSet { roots: vec![], residuals: vec![], converged: false };
        assert_eq!(r.max_imag_residual(), Err(Error::NotConverged));
        assert_eq!(r.max_circle_residual(), Err(Error::NotConverged));
    }

    #[test]
    fn constant_input_is_rejected() {
        assert!(find_roots(&fp(&[(1.0, 0.0)]), &TolerancePolicy::default()).is_err());
    }

    #[test]
    fn count_in_box_for_polynomial() {
        let p = fp(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let pol = TolerancePolicy::default();
        let upper = ContourBox::new(-2.0, 2.0, 0.5, 2.0).unwrap();
        assert_eq!(count_zeros_box(&p, &upper, &pol).unwrap(), 1);
        let big = ContourBox::new(-3.0, 3.0, -3.0, 3.0).unwrap();
        assert_eq!(count_zeros_box(&p, &big, &pol).unwrap(), 2);
    }

    #[test]
    fn zero_on_contour_is_detected() {
        let p = fp(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let b = ContourBox::new(-2.0, 2.0, 1.0, 2.0).unwrap();
        assert!(matches!(count_zeros_box(&p, &b, &TolerancePolicy::default()), Err(Error::ZeroNearContour { .. })));
    }

    #[test]
    fn degenerate_box() {
        assert!(ContourBox::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ContourBox::new(0.0, 1.0, f64::NAN, 1.0).is_err());
    }
}
