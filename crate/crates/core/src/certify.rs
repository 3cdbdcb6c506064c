//! Exact zero-locus certificates.
//!
//! Real-rootedness is decided by Sturm sequences over ℚ after squarefree
//! decomposition; unit-circle location is reduced to real-rootedness through
//! the Cayley map `t = (1 + iz) / (1 - iz)`; interlacing of two real-rooted
//! polynomials is decided by isolating the roots of one with dyadic
//! bisection and counting the roots of the other in the gaps.
//!
//! Float root finding appears here only to attach a witness to a FAIL.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{rational_to_f64, ComplexF, GaussianRational, Rational, TolerancePolicy};
use crate::poly::{ExactPoly, FloatPoly, RPoly};
use crate::roots::find_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    RealLine,
    UnitCircle,
    UpperHalfPlane,
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Locus::RealLine => "real_line",
            Locus::UnitCircle => "unit_circle",
            Locus::UpperHalfPlane => "upper_half_plane",
        })
    }
}

/// Outcome of an exact zero-locus check. `count` includes multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub locus: Locus,
    pub degree: usize,
    pub count: usize,
    #[serde(with = "crate::json::complex_opt")]
    pub witness: Option<ComplexF>,
    pub notes: String,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn judge(locus: Locus, degree: usize, count: usize, notes: String) -> Self {
        let verdict = if count == degree { Verdict::Pass } else { Verdict::Fail };
        Self { verdict, locus, degree, count, witness: None, notes }
    }

    fn fail(locus: Locus, degree: usize, count: usize, notes: String) -> Self {
        Self { verdict: Verdict::Fail, locus, degree, count, witness: None, notes }
    }
}

/// Point of the extended real line used as a Sturm interval endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

impl Bound {
    fn cmp_order(&self, other: &Bound) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (At(a), At(b)) => a.cmp(b),
        }
    }
}

impl From<Rational> for Bound {
    fn from(x: Rational) -> Self {
        Bound::At(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SturmChain {
    pub chain: Vec<RPoly>,
}

pub fn sturm_chain(p: &RPoly) -> Result<SturmChain> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("sturm_chain"));
    }
    let mut chain = vec![p.clone()];
    let dp = p.derivative();
    if !dp.is_zero() {
        chain.push(dp);
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
    }
    Ok(SturmChain { chain })
}

fn sign_at(p: &RPoly, x: &Bound) -> i8 {
    let s = |v: &Rational| match v.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    match (x, p.lead()) {
        (_, None) => 0,
        (Bound::At(v), _) => s(&p.eval(v)),
        (Bound::PosInf, Some(l)) => s(l),
        (Bound::NegInf, Some(l)) => {
            let d = p.degree().unwrap_or(0);
            if d % 2 == 0 {
                s(l)
            } else {
                -s(l)
            }
        }
    }
}

impl SturmChain {
    /// The last nonzero entry is constant iff the input is squarefree.
    pub fn is_squarefree(&self) -> bool {
        self.chain.last().and_then(RPoly::degree) == Some(0)
    }

    pub fn variations(&self, x: &Bound) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> Result<usize> {
        if lo.cmp_order(hi) != Ordering::Less {
            return Err(Error::EmptyInterval);
        }
        Ok(self.variations(lo) - self.variations(hi))
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.chain.iter().map(RPoly::max_coeff_bits).max().unwrap_or(0)
    }
}

/// Number of distinct real roots of a squarefree `p` in `(lo, hi]`.
pub fn count_real_roots(p: &RPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let chain = sturm_chain(p)?;
    if !chain.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    chain.count(lo, hi)
}

/// Side statistics of a certification run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CertStats {
    /// Largest numerator/denominator bit length seen in any Sturm chain.
    pub sturm_bits: u64,
    /// Largest root multiplicity found by the squarefree decomposition.
    pub max_multiplicity: usize,
}

fn float_witness(h: &ExactPoly, key: impl Fn(&ComplexF) -> f64) -> Option<ComplexF> {
    let f = h.to_float().ok()?;
    if f.degree().unwrap_or(0) == 0 {
        return None;
    }
    let roots = find_roots(&f, &TolerancePolicy::default()).ok()?;
    roots.worst_by(key)
}

pub fn certify_real_rooted(h: &ExactPoly) -> Result<Certificate> {
    certify_real_rooted_with_stats(h).map(|(c, _)| c)
}

/// Real-rootedness certificate with multiplicity bookkeeping.
pub fn certify_real_rooted_with_stats(h: &ExactPoly) -> Result<(Certificate, CertStats)> {
    let degree = h.degree().ok_or(Error::ZeroPolynomial("certify_real_rooted"))?;
    let mut stats = CertStats::default();
    let normalized = h.monic();
    let Some(real) = normalized.as_real() else {
        let mut cert = Certificate::fail(
            Locus::RealLine,
            degree,
            0,
            "nonreal coefficient after dividing by the leading coefficient".into(),
        );
        cert.witness = float_witness(h, |z| z.im.abs());
        return Ok((cert, stats));
    };
    let mut count = 0;
    for (i, factor) in real.squarefree_decomposition()?.iter().enumerate() {
        let chain = sturm_chain(factor)?;
        stats.sturm_bits = stats.sturm_bits.max(chain.max_coeff_bits());
        stats.max_multiplicity = i + 1;
        count += (i + 1) * chain.count(&Bound::NegInf, &Bound::PosInf)?;
    }
    let notes = match stats.max_multiplicity {
        0 => "constant".to_string(),
        1 => "all roots simple".to_string(),
        k => format!("repeated roots present (max multiplicity {k})"),
    };
    let mut cert = Certificate::judge(Locus::RealLine, degree, count, notes);
    if !cert.passed() {
        cert.witness = float_witness(h, |z| z.im.abs());
    }
    Ok((cert, stats))
}

/// `(1 - iz)^d * p((1 + iz) / (1 - iz))`, which carries roots of `p` on the
/// unit circle (other than `t = -1`) to real roots.
pub fn cayley_transform(p: &ExactPoly, d: usize) -> ExactPoly {
    let plus = ExactPoly::new(vec![GaussianRational::one(), GaussianRational::i()]);
    let minus = plus.star();
    let mut plus_pow = vec![ExactPoly::one()];
    let mut minus_pow = vec![ExactPoly::one()];
    for k in 1..=d {
        plus_pow.push(&plus_pow[k - 1] * &plus);
        minus_pow.push(&minus_pow[k - 1] * &minus);
    }
    p.coeffs()
        .iter()
        .enumerate()
        .fold(ExactPoly::zero(), |acc, (k, c)| &acc + &(&plus_pow[k] * &minus_pow[d - k]).scale(c))
}

pub fn certify_unit_circle(p: &ExactPoly) -> Result<Certificate> {
    certify_unit_circle_with_stats(p).map(|(c, _)| c)
}

pub fn certify_unit_circle_with_stats(p: &ExactPoly) -> Result<(Certificate, CertStats)> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial("certify_unit_circle"))?;
    let minus_one = -GaussianRational::one();
    let t_plus_one = ExactPoly::new(vec![GaussianRational::one(), GaussianRational::one()]);
    let mut deflated = p.clone();
    let mut at_minus_one = 0;
    while deflated.degree().unwrap_or(0) > 0 && deflated.eval(&minus_one).is_zero() {
        deflated = deflated.div_rem(&t_plus_one)?.0;
        at_minus_one += 1;
    }
    let d = deflated.degree().unwrap_or(0);
    let image = cayley_transform(&deflated, d);
    let (inner, stats) = certify_real_rooted_with_stats(&image)?;
    let on_circle = at_minus_one + if inner.passed() { inner.count } else { inner.count.min(d) };
    let notes = format!(
        "t = -1 with multiplicity {at_minus_one}; Cayley image: {} ({})",
        if inner.passed() { "real-rooted" } else { "not real-rooted" },
        inner.notes
    );
    let mut cert = if inner.passed() {
        Certificate::judge(Locus::UnitCircle, degree, on_circle, notes)
    } else {
        Certificate::fail(Locus::UnitCircle, degree, on_circle, notes)
    };
    if !cert.passed() {
        cert.witness = float_witness(p, |z| (z.norm() - 1.0).abs());
    }
    Ok((cert, stats))
}

/// Sturm counts plus a cached chain for a squarefree real-rooted polynomial.
struct Isolator {
    chain: SturmChain,
}

impl Isolator {
    fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.chain.count(&Bound::At(lo.clone()), &Bound::At(hi.clone())).unwrap_or(0)
    }
}

/// A power of two strictly above every root modulus (Cauchy bound).
fn dyadic_root_bound(p: &RPoly) -> Rational {
    let lead = p.lead().cloned().unwrap_or_else(Rational::one).abs();
    let max = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
    let bound = Rational::one() + max;
    let mut b = Rational::one();
    while b <= bound {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_integer(BigInt::from(2))
}

/// Disjoint intervals `(lo, hi]`, one per root of `p`, in increasing order,
/// refined until none contains a root of `avoid`. The two polynomials must
/// be coprime.
fn isolate_avoiding(p: &Isolator, avoid: &Isolator, bound: &Rational) -> Vec<(Rational, Rational)> {
    let mut pending = vec![(-bound.clone(), bound.clone())];
    let mut out = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        match p.count(&lo, &hi) {
            0 => {}
            1 if avoid.count(&lo, &hi) == 0 => out.push((lo, hi)),
            _ => {
                let mid = midpoint(&lo, &hi);
                pending.push((lo, mid.clone()));
                pending.push((mid, hi));
            }
        }
    }
    out.sort();
    out
}

/// Exact interlacing check for two real polynomials with simple roots whose
/// degrees differ by at most one.
pub fn certify_interlacing(p: &RPoly, q: &RPoly) -> Result<Certificate> {
    let (dp, dq) = match (p.degree(), q.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ZeroPolynomial("certify_interlacing")),
    };
    if dp.abs_diff(dq) > 1 {
        return Err(Error::DegreeGap(dp.abs_diff(dq)));
    }
    let cp = sturm_chain(p)?;
    let cq = sturm_chain(q)?;
    if !cp.is_squarefree() || !cq.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let degree = dp + dq;
    let np = cp.count(&Bound::NegInf, &Bound::PosInf)?;
    let nq = cq.count(&Bound::NegInf, &Bound::PosInf)?;
    if np != dp || nq != dq {
        let mut cert = Certificate::fail(
            Locus::RealLine,
            degree,
            np + nq,
            format!("not real-rooted: {np} of {dp} and {nq} of {dq} real roots"),
        );
        let bad = if np != dp { p } else { q };
        cert.witness = float_witness(&bad.to_exact(), |z| z.im.abs());
        return Ok(cert);
    }
    if p.gcd(q)?.degree() != Some(0) {
        return Ok(Certificate::fail(Locus::RealLine, degree, np + nq, "common root".into()));
    }
    let (hi, lo) = if np >= nq {
        (Isolator { chain: cp }, Isolator { chain: cq })
    } else {
        (Isolator { chain: cq }, Isolator { chain: cp })
    };
    let bound = dyadic_root_bound(p).max(dyadic_root_bound(q));
    let intervals = isolate_avoiding(&hi, &lo, &bound);
    for w in intervals.windows(2) {
        let (gap_lo, gap_hi) = (&w[0].1, &w[1].0);
        let inside = if gap_lo < gap_hi { lo.count(gap_lo, gap_hi) } else { 0 };
        if inside != 1 {
            let mut cert = Certificate::fail(
                Locus::RealLine,
                degree,
                np + nq,
                format!("{inside} roots of the lower-degree polynomial between consecutive roots of the other"),
            );
            let x = rational_to_f64(&midpoint(&w[0].0, &w[1].1)).unwrap_or(f64::NAN);
            cert.witness = x.is_finite().then_some(ComplexF::new(x, 0.0));
            return Ok(cert);
        }
    }
    Ok(Certificate::judge(Locus::RealLine, degree, np + nq, "strictly interlacing".into()))
}

/// True iff `gcd(h, h')` is a nonzero constant.
pub fn check_simple(h: &ExactPoly) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial("check_simple"));
    }
    Ok(h.gcd(&h.derivative())?.degree() == Some(0))
}

/// Float roots of the squarefree part of `h`. Repeated roots are
/// ill-conditioned in binary64, while the squarefree part has the same zero
/// set and simple roots.
pub fn squarefree_float_roots(h: &ExactPoly, policy: &TolerancePolicy) -> Result<crate::roots::RootSet> {
    let sf = h.squarefree_part()?;
    let f: FloatPoly = sf.to_float()?;
    find_roots(&f, policy)
}
