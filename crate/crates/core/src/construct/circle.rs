use num_traits::{One, Signed, Zero};

use super::{Limits, RealRootedG};
use crate::error::{Error, Result};
use crate::numeric::{format_rational, rational_to_f64, ComplexF, GaussianRational, Rational};
use crate::poly::ExactPoly;

/// `P_n(t) = sum over sign vectors sigma of G(sigma . (i a)) t^{#plus signs}`.
pub fn circle_poly(g: &RealRootedG, a: &[Rational], limits: &Limits) -> Result<ExactPoly> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidParameter("circle_poly needs n >= 1".into()));
    }
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidParameter("a_k must be positive".into()));
    }
    limits.check_exact(n)?;
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    for mask in 0..1usize << n {
        let offset = a.iter().enumerate().fold(
            Rational::zero(),
            |acc, (k, ak)| {
                if mask >> k & 1 == 1 {
                    acc + ak
                } else {
                    acc - ak
                }
            },
        );
        let j = mask.count_ones() as usize;
        coeffs[j] = &coeffs[j] + &g.eval_exact(&GaussianRational::imag(offset))?;
    }
    Ok(ExactPoly::new(coeffs))
}

/// Symmetric coupling matrix with off-diagonal entries in `(-1, 1)`; the
/// diagonal is ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    entries: Vec<Vec<Rational>>,
}

impl CouplingMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidParameter("coupling matrix needs n >= 1".into()));
        }
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, got: row.len() });
        }
        let one = Rational::one();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] != entries[j][i] {
                    return Err(Error::CouplingNotSymmetric { i, j });
                }
                if entries[i][j].abs() >= one {
                    return Err(Error::CouplingOutOfRange { i, j, value: format_rational(&entries[i][j]) });
                }
            }
        }
        Ok(Self { entries })
    }

    /// Matrix with every off-diagonal entry equal to `value`.
    pub fn uniform(n: usize, value: Rational) -> Result<Self> {
        Self::new(vec![vec![value; n]; n])
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// `prod_{i in S, j not in S} A_ij`.
    fn coupling(&self, mask: usize) -> Rational {
        let n = self.n();
        let mut acc = Rational::one();
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            for j in (0..n).filter(|j| mask >> j & 1 == 0) {
                acc *= &self.entries[i][j];
            }
        }
        acc
    }
}

/// Diagonal restriction `P(t, ..., t)` of the Lee-Yang polynomial.
pub fn lee_yang_poly(m: &CouplingMatrix, limits: &Limits) -> Result<ExactPoly> {
    let n = m.n();
    limits.check_exact(n)?;
    let mut coeffs = vec![Rational::zero(); n + 1];
    for mask in 0..1usize << n {
        coeffs[mask.count_ones() as usize] += m.coupling(mask);
    }
    Ok(ExactPoly::new(coeffs.into_iter().map(GaussianRational::from_real).collect()))
}

/// The multivariate Lee-Yang polynomial at `x`, summed in ascending subset
/// order.
pub fn lee_yang_eval(m: &CouplingMatrix, x: &[ComplexF]) -> Result<ComplexF> {
    let n = m.n();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    let mut total = ComplexF::new(0.0, 0.0);
    for mask in 0..1usize << n {
        let weight = rational_to_f64(&m.coupling(mask))?;
        let monomial: ComplexF = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| x[k]).product();
        total += monomial * weight;
    }
    Ok(total)
}

/// Solves the Lee-Yang polynomial for its last variable given the others.
pub fn lee_yang_solve_last(m: &CouplingMatrix, prefix: &[ComplexF]) -> Result<ComplexF> {
    let n = m.n();
    if prefix.len() + 1 != n {
        return Err(Error::LengthMismatch { expected: n - 1, got: prefix.len() });
    }
    let mut x = prefix.to_vec();
    x.push(ComplexF::new(0.0, 0.0));
    let constant = lee_yang_eval(m, &x)?;
    x[n - 1] = ComplexF::new(1.0, 0.0);
    let slope = lee_yang_eval(m, &x)? - constant;
    if slope.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(-constant / slope)
}
