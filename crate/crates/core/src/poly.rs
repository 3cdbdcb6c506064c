//! Dense univariate polynomials over ℚ, ℚ(i), and binary64 complex numbers.
//!
//! Coefficients are stored ascending by degree with trailing zeros trimmed
//! eagerly, so the zero polynomial is the empty vector and a cancelled
//! leading term shows up as a drop in [`Poly::degree`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{rational_bits, ComplexF, GaussianRational, Rational};

/// Coefficient field. Arithmetic goes through borrowed methods so generic
/// code does not need higher-ranked operator bounds.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync + 'static {
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `rhs` must be nonzero.
    fn over(&self, rhs: &Self) -> Self;
    fn from_u64(n: u64) -> Self;
    fn conj(&self) -> Self;
}

impl Coeff for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_u64(n: u64) -> Self {
        Rational::from_integer(n.into())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Coeff for GaussianRational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn over(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("division by zero coefficient")
    }
    fn from_u64(n: u64) -> Self {
        GaussianRational::from_real(Rational::from_integer(n.into()))
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
}

impl Coeff for ComplexF {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn over(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn from_u64(n: u64) -> Self {
        ComplexF::new(n as f64, 0.0)
    }
    fn conj(&self) -> Self {
        ComplexF::conj(self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

/// Exact polynomial over ℚ(i).
pub type ExactPoly = Poly<GaussianRational>;
/// Float polynomial over binary64 complex numbers.
pub type FloatPoly = Poly<ComplexF>;
/// Real polynomial with rational coefficients.
pub type RPoly = Poly<Rational>;

impl<K: Coeff> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut v = vec![K::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The identity polynomial `z`.
    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    /// `z - r`.
    pub fn linear_root(r: K) -> Self {
        Self::new(vec![r.negated(), K::one()])
    }

    /// `c * prod (z - r)`.
    pub fn from_roots(c: K, roots: &[K]) -> Self {
        roots.iter().fold(Self::constant(c), |acc, r| &acc * &Self::linear_root(r.clone()))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn eval(&self, z: &K) -> K {
        self.coeffs.iter().rev().fold(K::zero(), |acc, c| acc.times(z).plus(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.times(&K::from_u64(k as u64))).collect())
    }

    /// `w*(z) = conj(w(conj z))`: conjugate every coefficient.
    pub fn star(&self) -> Self {
        Self::new(self.coeffs.iter().map(Coeff::conj).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => {
                let inv = K::one().over(l);
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial("div_rem"))?;
        let lead = d.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].over(&lead);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].minus(&c.times(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm, with each
    /// remainder made monic to keep coefficient growth in check.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd"));
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// `p(z + w)`.
    pub fn shift(&self, w: &K) -> Self {
        // Horner in the polynomial ring: ((c_n)(z+w) + c_{n-1})(z+w) + ...
        let step = Self::new(vec![w.clone(), K::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::constant(c.clone()))
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_part"));
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// Yun's squarefree decomposition: returns `(f_1, f_2, ...)`, monic and
    /// pairwise coprime, with `p = lead * f_1 * f_2^2 * f_3^3 * ...`.
    /// Valid in characteristic zero.
    pub fn squarefree_decomposition(&self) -> Result<Vec<Self>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_decomposition"));
        }
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.div_rem(&a0)?.0;
        let mut c = df.div_rem(&a0)?.0;
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d)?;
            out.push(a.clone());
            b = b.div_rem(&a)?.0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_rem(&a)?.0;
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        Ok(out)
    }

    pub fn map<L: Coeff>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<L: Coeff>(&self, f: impl Fn(&K) -> Result<L>) -> Result<Poly<L>> {
        Ok(Poly::new(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }
}

impl<K: Coeff> Default for Poly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Coeff> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl<'a, K: Coeff> Add<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).plus(&rhs.coeff(k))).collect())
    }
}

impl<'a, K: Coeff> Sub<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).minus(&rhs.coeff(k))).collect())
    }
}

impl<'a, K: Coeff> Mul<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out)
    }
}

impl<K: Coeff> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(Coeff::negated).collect())
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl<K: Coeff> $tr for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, rhs: Poly<K>) -> Poly<K> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

impl RPoly {
    pub fn to_exact(&self) -> ExactPoly {
        self.map(|c| GaussianRational::from_real(c.clone()))
    }

    pub fn to_float(&self) -> Result<FloatPoly> {
        self.try_map(|c| Ok(ComplexF::new(crate::numeric::rational_to_f64(c)?, 0.0)))
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(rational_bits).max().unwrap_or(0)
    }
}

impl ExactPoly {
    /// Splits `w = p + i q` into real polynomials.
    pub fn split_real_imag(&self) -> (RPoly, RPoly) {
        (
            Poly::new(self.coeffs.iter().map(|c| c.re.clone()).collect()),
            Poly::new(self.coeffs.iter().map(|c| c.im.clone()).collect()),
        )
    }

    /// `p + i q`.
    pub fn from_real_imag(p: &RPoly, q: &RPoly) -> Self {
        let n = p.coeffs.len().max(q.coeffs.len());
        Self::new((0..n).map(|k| GaussianRational::new(p.coeff(k), q.coeff(k))).collect())
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_real)
    }

    /// The real polynomial, if every coefficient is real.
    pub fn as_real(&self) -> Option<RPoly> {
        self.is_real().then(|| self.split_real_imag().0)
    }

    pub fn to_float(&self) -> Result<FloatPoly> {
        self.try_map(GaussianRational::to_complex)
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(GaussianRational::bits).max().unwrap_or(0)
    }
}

impl FloatPoly {
    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// A polynomial of either backend, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum CPoly {
    Exact(ExactPoly),
    Float(FloatPoly),
}

impl CPoly {
    pub fn backend(&self) -> &'static str {
        match self {
            CPoly::Exact(_) => "exact",
            CPoly::Float(_) => "float",
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            CPoly::Exact(p) => p.degree(),
            CPoly::Float(p) => p.degree(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (CPoly::Exact(a), CPoly::Exact(b)) => Ok(CPoly::Exact(a + b)),
            (CPoly::Float(a), CPoly::Float(b)) => Ok(CPoly::Float(a + b)),
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (CPoly::Exact(a), CPoly::Exact(b)) => Ok(CPoly::Exact(a - b)),
            (CPoly::Float(a), CPoly::Float(b)) => Ok(CPoly::Float(a - b)),
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (CPoly::Exact(a), CPoly::Exact(b)) => Ok(CPoly::Exact(a * b)),
            (CPoly::Float(a), CPoly::Float(b)) => Ok(CPoly::Float(a * b)),
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn star(&self) -> Self {
        match self {
            CPoly::Exact(p) => CPoly::Exact(p.star()),
            CPoly::Float(p) => CPoly::Float(p.star()),
        }
    }

    pub fn to_float(&self) -> Result<FloatPoly> {
        match self {
            CPoly::Exact(p) => p.to_float(),
            CPoly::Float(p) => Ok(p.clone()),
        }
    }

    pub fn into_exact(self) -> Result<ExactPoly> {
        match self {
            CPoly::Exact(p) => Ok(p),
            CPoly::Float(_) => Err(Error::RequiresExact("this operation")),
        }
    }
}
