//! Hermite-Biehler polynomials `w = p + i q` with all roots in the open upper
//! half-plane, certified through the interlacing of `p` and `q`.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{certify_interlacing, Certificate, Locus, Verdict};
use crate::error::{Error, Result};
use crate::numeric::{int, rat, ComplexF, Rational, TolerancePolicy};
use crate::poly::{ExactPoly, RPoly};
use crate::roots::find_roots;

#[derive(Debug, Clone, PartialEq)]
pub struct HBPoly {
    omega: ExactPoly,
    p: RPoly,
    q: RPoly,
    certificate: Certificate,
}

impl HBPoly {
    pub fn omega(&self) -> &ExactPoly {
        &self.omega
    }

    pub fn omega_star(&self) -> ExactPoly {
        self.omega.star()
    }

    pub fn p(&self) -> &RPoly {
        &self.p
    }

    pub fn q(&self) -> &RPoly {
        &self.q
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn degree(&self) -> usize {
        self.omega.degree().unwrap_or(0)
    }

    pub fn verify_numeric(&self, policy: &TolerancePolicy) -> Result<bool> {
        hb_verify_numeric(&self.omega, policy)
    }
}

/// `p q' - p' q`.
pub fn wronskian(p: &RPoly, q: &RPoly) -> RPoly {
    &(p * &q.derivative()) - &(&p.derivative() * q)
}

/// Builds `p + i q` after certifying that `p` and `q` interlace and that the
/// Wronskian `p q' - p' q` is positive.
pub fn hb_from_pair(p: &RPoly, q: &RPoly) -> Result<HBPoly> {
    if p.degree().unwrap_or(0) == 0 && q.degree().unwrap_or(0) == 0 {
        return Err(Error::Degenerate("p and q are both constant; w has no roots".into()));
    }
    let inter = certify_interlacing(p, q)?;
    if !inter.passed() {
        let at = inter.witness.map(|w| format!(" near {}", w.re)).unwrap_or_default();
        return Err(Error::NotInterlacing(format!("{}{at}", inter.notes)));
    }
    // Strict interlacing with simple roots keeps the Wronskian away from zero
    // on the whole real line, so one evaluation fixes its sign.
    let w = wronskian(p, q);
    let mut sample = int(0);
    let mut value = w.eval(&sample);
    while value.is_zero() {
        sample += int(1);
        value = w.eval(&sample);
    }
    if value.is_negative() {
        return Err(Error::WrongWronskianSign);
    }
    let omega = ExactPoly::from_real_imag(p, q);
    let degree = omega.degree().unwrap_or(0);
    let certificate = Certificate {
        verdict: Verdict::Pass,
        locus: Locus::UpperHalfPlane,
        degree,
        count: degree,
        witness: None,
        notes: format!("interlacing pair, Wronskian {value} > 0 at {sample}"),
    };
    Ok(HBPoly { omega, p: p.clone(), q: q.clone(), certificate })
}

const VERIFY_SAMPLES: usize = 64;
const VERIFY_SEED: u64 = 0x4842_5645_5249_4659;

/// Float cross-check of upper-half-plane membership: every numeric root has
/// `Im > tol`, and `|w(z) / w*(z)| < 1` at pseudo-random points above the
/// real axis.
pub fn hb_verify_numeric(omega: &ExactPoly, policy: &TolerancePolicy) -> Result<bool> {
    let f = omega.to_float()?;
    let Some(d) = f.degree() else {
        return Err(Error::ZeroPolynomial("hb_verify_numeric"));
    };
    if d == 0 {
        return Ok(false);
    }
    let roots = find_roots(&f, policy)?;
    if !roots.converged {
        return Err(Error::NotConverged);
    }
    if roots.roots.iter().any(|z| z.im <= policy.root_residual_tol) {
        return Ok(false);
    }
    let reach = roots.roots.iter().map(|z| z.norm()).fold(1.0, f64::max) * 2.0;
    let star = f.star();
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    for _ in 0..VERIFY_SAMPLES {
        let x = rng.random_range(-reach..reach);
        let y = reach * 10f64.powf(rng.random_range(-2.0..0.0));
        let z = ComplexF::new(x, y);
        let ratio = f.eval(&z).norm() / star.eval(&z).norm();
        if !(ratio < 1.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_distinct_rationals(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let span = 6 * count as i64 + 6;
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let r = rat(rng.random_range(-span..=span), rng.random_range(1..=4));
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort();
    out
}

fn random_positive(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(1..=9), rng.random_range(1..=4))
}

/// Deterministic random Hermite-Biehler polynomial of the given degree.
///
/// Draws `2d - 1` or `2d` distinct rationals, deals them alternately to `p`
/// and `q` (so the roots interlace strictly), gives both positive leading
/// coefficients, and negates `q` if the Wronskian comes out negative.
pub fn hb_random(degree: usize, seed: u64) -> Result<HBPoly> {
    if degree == 0 {
        return Err(Error::InvalidParameter("hb_random needs degree >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = if rng.random_bool(0.5) { 2 * degree } else { 2 * degree - 1 };
    let points = random_distinct_rationals(&mut rng, count);
    let p_roots: Vec<Rational> = points.iter().step_by(2).cloned().collect();
    let q_roots: Vec<Rational> = points.iter().skip(1).step_by(2).cloned().collect();
    let p = RPoly::from_roots(random_positive(&mut rng), &p_roots);
    let mut q = RPoly::from_roots(random_positive(&mut rng), &q_roots);
    if wronskian(&p, &q).eval(&int(0)).is_negative() {
        q = -&q;
    }
    hb_from_pair(&p, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::GaussianRational;
    use crate::poly::Poly;

    fn rp(c: &[i64]) -> RPoly {
        Poly::new(c.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn chebyshev_pair() {
        let w = hb_from_pair(&rp(&[1]), &rp(&[0, 1])).unwrap();
        assert_eq!(
            w.omega(),
            &ExactPoly::new(vec![GaussianRational::from_ints(1, 0), GaussianRational::from_ints(0, 1)])
        );
        assert!(w.omega().eval(&GaussianRational::i()).is_zero());
        assert!(w.certificate().passed());
        assert_eq!(w.certificate().locus, Locus::UpperHalfPlane);
    }

    #[test]
    fn z_minus_i() {
        let w = hb_from_pair(&rp(&[0, 1]), &rp(&[-1])).unwrap();
        assert!(w.omega().eval(&GaussianRational::i()).is_zero());
    }

    #[test]
    fn rejects_non_interlacing() {
        assert!(matches!(hb_from_pair(&rp(&[-1, 0, 1]), &rp(&[-3, 1])), Err(Error::NotInterlacing(_))));
    }

    #[test]
    fn rejects_wrong_sign_and_degenerate() {
        assert_eq!(hb_from_pair(&rp(&[0, 1]), &rp(&[1])), Err(Error::WrongWronskianSign));
        assert!(matches!(hb_from_pair(&rp(&[1]), &rp(&[2])), Err(Error::Degenerate(_))));
        assert!(hb_from_pair(&rp(&[1]), &RPoly::zero()).is_err());
        assert_eq!(hb_from_pair(&rp(&[1, -2, 1]), &rp(&[0, 1])), Err(Error::NotSquarefree));
    }

    #[test]
    fn numeric_verification() {
        let pol = TolerancePolicy::default();
        let ep = |c: &[(i64, i64)]| ExactPoly::new(c.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect());
        assert!(hb_verify_numeric(&ep(&[(0, -1), (1, 0)]), &pol).unwrap());
        assert!(hb_verify_numeric(&ep(&[(1, 0), (0, 1)]), &pol).unwrap());
        assert!(!hb_verify_numeric(&ep(&[(0, 1), (1, 0)]), &pol).unwrap());
        assert!(!hb_verify_numeric(&ep(&[(3, 0)]), &pol).unwrap());
    }

    #[test]
    fn random_linear() {
        let w = hb_random(1, 7).unwrap();
        assert_eq!(w.degree(), 1);
        assert!(w.certificate().passed());
        let c = w.omega().coeffs();
        // w = lead * z + b with root -b/lead in the upper half-plane
        let root = (-&c[0]).checked_div(&c[1]).unwrap();
        assert!(root.im > Rational::zero());
    }

    #[test]
    fn random_cubic_verifies() {
        for seed in 0..20 {
            let w = hb_random(3, seed).unwrap();
            assert_eq!(w.degree(), 3);
            assert!(w.certificate().passed());
            assert!(w.verify_numeric(&TolerancePolicy::default()).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(hb_random(1, 42).unwrap(), hb_random(1, 42).unwrap());
        assert_eq!(hb_random(4, 9).unwrap(), hb_random(4, 9).unwrap());
        assert!(hb_random(0, 1).is_err());
    }
}
