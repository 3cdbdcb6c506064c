//! Builders for the sums of products: `H_n(s, z)` by subset expansion and by
//! recursion, the multivariate evaluator `P_n(s; x)`, the circle polynomial,
//! the Lee-Yang polynomial, the orthogonal-polynomial `H_2`, the Pólya shift,
//! and exponential sums.

mod circle;
mod expsum;
mod hn;
mod ortho;
mod polya;

pub use circle::{circle_poly, lee_yang_eval, lee_yang_poly, lee_yang_solve_last, CouplingMatrix};
pub use expsum::{exp_sum_build, exp_sum_eval, ExpSum, ExpTerm};
pub use hn::{build_hn_recursive, build_hn_subset, build_hn_subset_at, eval_pn, omega_ratios, pn_solve_last};
pub use ortho::{orthogonal_h2, three_term_step};
pub use polya::{polya_shift, DEGREE_DROP_COS_TOL};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hb::HBPoly;
use crate::numeric::{format_rational, rational_to_f64, ComplexF, GaussianRational, Rational};
use crate::poly::ExactPoly;

/// Caps on `n` for the `2^n`-term expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub exact_cap: usize,
    pub float_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { exact_cap: 12, float_cap: 20 }
    }
}

impl Limits {
    pub fn check_exact(&self, n: usize) -> Result<()> {
        if n > self.exact_cap {
            Err(Error::CapExceeded { n, cap: self.exact_cap })
        } else {
            Ok(())
        }
    }

    pub fn check_float(&self, n: usize) -> Result<()> {
        if n > self.float_cap {
            Err(Error::CapExceeded { n, cap: self.float_cap })
        } else {
            Ok(())
        }
    }
}

/// `G(z) = c z^q e^{alpha z} prod (1 - z / alpha_m)`: real on the real axis
/// with only real zeros.
///
/// A polynomial given by its monic roots, such as `z - 1`, is stored by
/// absorbing signs into `c`: `z - 1 = -1 * (1 - z)`, so `c = -1`,
/// `roots = [1]`. See [`RealRootedG::from_leading_and_roots`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealRootedG {
    c: Rational,
    q: u32,
    alpha: Rational,
    roots: Vec<Rational>,
}

impl RealRootedG {
    pub fn new(c: Rational, q: u32, alpha: Rational, roots: Vec<Rational>) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidParameter("G: c must be nonzero".into()));
        }
        if roots.iter().any(Zero::is_zero) {
            return Err(Error::InvalidParameter("G: zeros at the origin belong in q, not in roots".into()));
        }
        Ok(Self { c, q, alpha, roots })
    }

    /// `lead * prod (z - r)`, with zero roots moved into `q`.
    pub fn from_leading_and_roots(lead: Rational, roots: &[Rational]) -> Result<Self> {
        let q = roots.iter().filter(|r| r.is_zero()).count() as u32;
        let nonzero: Vec<Rational> = roots.iter().filter(|r| !r.is_zero()).cloned().collect();
        // z - r = (-r) (1 - z/r)
        let c = nonzero.iter().fold(lead, |acc, r| acc * (-r));
        Self::new(c, q, Rational::zero(), nonzero)
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn with_alpha(mut self, alpha: Rational) -> Self {
        self.alpha = alpha;
        self
    }

    /// Real zeros counted with multiplicity, including the origin.
    pub fn zero_count(&self) -> usize {
        self.q as usize + self.roots.len()
    }

    pub fn is_exact(&self) -> bool {
        self.alpha.is_zero()
    }

    fn require_exact(&self) -> Result<()> {
        if self.is_exact() {
            Ok(())
        } else {
            Err(Error::NonzeroAlphaInExactMode(format_rational(&self.alpha)))
        }
    }

    /// Exact value at a point of ℚ(i); requires `alpha = 0`.
    pub fn eval_exact(&self, z: &GaussianRational) -> Result<GaussianRational> {
        self.require_exact()?;
        let one = GaussianRational::one();
        let mut acc = GaussianRational::from_real(self.c.clone());
        for _ in 0..self.q {
            acc = &acc * z;
        }
        for r in &self.roots {
            let ratio = GaussianRational::new(&z.re / r, &z.im / r);
            acc = &acc * &(&one - &ratio);
        }
        Ok(acc)
    }

    /// Float value, including the `e^{alpha z}` factor.
    pub fn eval_float(&self, z: ComplexF) -> ComplexF {
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let alpha = self.alpha.to_f64().unwrap_or(f64::NAN);
        let mut acc = ComplexF::new(c, 0.0) * z.powu(self.q) * (z * alpha).exp();
        for r in &self.roots {
            let r = r.to_f64().unwrap_or(f64::NAN);
            acc *= ComplexF::new(1.0, 0.0) - z / r;
        }
        acc
    }

    /// The polynomial factor `c z^q prod (1 - z/alpha_m)`.
    pub fn polynomial_part(&self) -> ExactPoly {
        let one = GaussianRational::one();
        let base = ExactPoly::monomial(GaussianRational::from_real(self.c.clone()), self.q as usize);
        self.roots.iter().fold(base, |acc, r| {
            let factor = ExactPoly::new(vec![one.clone(), GaussianRational::from_real(-(Rational::one() / r))]);
            &acc * &factor
        })
    }

    /// Float copy of `alpha`.
    pub fn alpha_f64(&self) -> Result<f64> {
        rational_to_f64(&self.alpha)
    }
}

/// `G(i s)`, exact in ℚ(i).
pub fn eval_g_imaginary(g: &RealRootedG, s: &Rational) -> Result<GaussianRational> {
    g.eval_exact(&GaussianRational::imag(s.clone()))
}

/// `G(i s)` in float mode, `e^{i alpha s}` included.
pub fn eval_g_imaginary_float(g: &RealRootedG, s: f64) -> ComplexF {
    g.eval_float(ComplexF::new(0.0, s))
}

/// Full input of the main construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    g: RealRootedG,
    a: Vec<Rational>,
    omegas: Vec<HBPoly>,
}

impl Instance {
    pub fn new(g: RealRootedG, a: Vec<Rational>, omegas: Vec<HBPoly>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameter("instance needs n >= 1".into()));
        }
        if a.len() != omegas.len() {
            return Err(Error::LengthMismatch { expected: a.len(), got: omegas.len() });
        }
        if let Some(bad) = a.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidParameter(format!("a_k must be positive, got {}", format_rational(bad))));
        }
        Ok(Self { g, a, omegas })
    }

    pub fn g(&self) -> &RealRootedG {
        &self.g
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn omegas(&self) -> &[HBPoly] {
        &self.omegas
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }
}
