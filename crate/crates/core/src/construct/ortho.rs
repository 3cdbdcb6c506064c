use num_traits::{Signed, Zero};

use super::{build_hn_subset, Instance, Limits, RealRootedG};
use crate::error::{Error, Result};
use crate::hb::hb_from_pair;
use crate::numeric::{format_rational, int, Rational};
use crate::poly::{ExactPoly, RPoly};

/// `(A z + B) p_{n-1} - C p_{n-2}`.
pub fn three_term_step(p_km2: &RPoly, p_km1: &RPoly, a: &Rational, b: &Rational, c: &Rational) -> RPoly {
    let linear = RPoly::new(vec![b.clone(), a.clone()]);
    &(&linear * p_km1) - &p_km2.scale(c)
}

/// `H_2` for `G(z) = -z`, `a = (A/4, C/4)`, `w_1 = p_{n-2} + i p_{n-1}` and
/// `w_2 = z - (-B/A + i)`. Equals `(A z + B) p_{n-1} - C p_{n-2}`.
pub fn orthogonal_h2(p_km2: &RPoly, p_km1: &RPoly, a: &Rational, b: &Rational, c: &Rational) -> Result<ExactPoly> {
    if !a.is_positive() || !c.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "recurrence needs A > 0 and C > 0, got A = {}, C = {}",
            format_rational(a),
            format_rational(c)
        )));
    }
    let w1 = hb_from_pair(p_km2, p_km1)?;
    let w2 = hb_from_pair(&RPoly::new(vec![b / a, int(1)]), &RPoly::constant(int(-1)))?;
    let g = RealRootedG::new(int(-1), 1, Rational::zero(), vec![])?;
    let four = int(4);
    let inst = Instance::new(g, vec![a / &four, c / &four], vec![w1, w2])?;
    build_hn_subset(&inst, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;
    use crate::poly::Poly;

    fn rp(c: &[i64]) -> RPoly {
        Poly::new(c.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn chebyshev_step() {
        let h = orthogonal_h2(&rp(&[1]), &rp(&[0, 1]), &int(2), &int(0), &int(1)).unwrap();
        assert_eq!(h, rp(&[-1, 0, 2]).to_exact());
    }

    #[test]
    fn legendre_step() {
        let h = orthogonal_h2(&rp(&[1]), &rp(&[0, 1]), &rat(3, 2), &int(0), &rat(1, 2)).unwrap();
        assert_eq!(h, RPoly::new(vec![rat(-1, 2), int(0), rat(3, 2)]).to_exact());
    }

    #[test]
    fn nonzero_b_matches_recurrence() {
        let (p0, p1) = (rp(&[1]), rp(&[-1, 1]));
        let (a, b, c) = (int(1), rat(-3, 2), rat(1, 3));
        let h = orthogonal_h2(&p0, &p1, &a, &b, &c).unwrap();
        assert_eq!(h, three_term_step(&p0, &p1, &a, &b, &c).to_exact());
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert!(orthogonal_h2(&rp(&[1]), &rp(&[0, 1]), &int(2), &int(0), &int(-1)).is_err());
        assert!(orthogonal_h2(&rp(&[1]), &rp(&[0, 1]), &int(0), &int(0), &int(1)).is_err());
        // w_1 = p1 + i p0 has its root in the lower half-plane
        assert_eq!(orthogonal_h2(&rp(&[0, 1]), &rp(&[1]), &int(2), &int(0), &int(1)), Err(Error::WrongWronskianSign));
    }
}
