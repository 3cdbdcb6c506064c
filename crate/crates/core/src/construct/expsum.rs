use serde::{Deserialize, Serialize};

use super::{Limits, RealRootedG};
use crate::error::{Error, Result};
use crate::numeric::ComplexF;
use crate::roots::Analytic;

/// One term `coeff * e^{i freq z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub coeff: ComplexF,
    pub freq: f64,
}

/// `sum_j coeff_j e^{i freq_j z}` with ascending frequencies and nonzero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpSum {
    terms: Vec<ExpTerm>,
}

impl ExpSum {
    /// Sorts by frequency, merges exactly equal frequencies and drops zero
    /// coefficients. Near-equal frequencies stay separate.
    pub fn new(mut terms: Vec<ExpTerm>) -> Result<Self> {
        if terms.iter().any(|t| !t.freq.is_finite() || !t.coeff.re.is_finite() || !t.coeff.im.is_finite()) {
            return Err(Error::NonFinite("exponential sum term"));
        }
        terms.sort_by(|x, y| x.freq.total_cmp(&y.freq));
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                // -0.0 and 0.0 compare equal here
                Some(last) if last.freq == t.freq => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != ComplexF::new(0.0, 0.0));
        Ok(Self { terms: merged })
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Analytic for ExpSum {
    fn value(&self, z: ComplexF) -> ComplexF {
        exp_sum_eval(self, z)
    }

    fn derivative(&self, z: ComplexF) -> ComplexF {
        self.terms.iter().map(|t| t.coeff * ComplexF::new(0.0, t.freq) * (ComplexF::new(0.0, t.freq) * z).exp()).sum()
    }
}

/// `sum over sign vectors sigma of G(i sigma.a) e^{i (sigma.b) z}`, the same
/// sign vector used in both places. Terms are generated in ascending subset
/// order with bit `k` set meaning `+a_k, +b_k`.
pub fn exp_sum_build(g: &RealRootedG, a: &[f64], b: &[f64], limits: &Limits) -> Result<ExpSum> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: b.len() });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("exponential sum needs n >= 1".into()));
    }
    limits.check_float(n)?;
    if a.iter().chain(b).any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::InvalidParameter("a_k and b_k must be finite and positive".into()));
    }
    let mut terms = Vec::with_capacity(1 << n);
    for mask in 0..1usize << n {
        let (mut s, mut f) = (0.0, 0.0);
        for k in 0..n {
            if mask >> k & 1 == 1 {
                s += a[k];
                f += b[k];
            } else {
                s -= a[k];
                f -= b[k];
            }
        }
        terms.push(ExpTerm { coeff: g.eval_float(ComplexF::new(0.0, s)), freq: f });
    }
    ExpSum::new(terms)
}

pub fn exp_sum_eval(e: &ExpSum, z: ComplexF) -> ComplexF {
    e.terms.iter().map(|t| t.coeff * (ComplexF::new(0.0, t.freq) * z).exp()).sum()
}
