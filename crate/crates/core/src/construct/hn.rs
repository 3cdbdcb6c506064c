use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Instance, Limits};
use crate::error::{Error, Result};
use crate::numeric::{ComplexF, GaussianRational, Rational};
use crate::poly::ExactPoly;

/// Offset `s + sum_{k in S} a_k - sum_{k not in S} a_k` for subset bitmask
/// `mask` (bit k set means k is in S).
fn subset_offset(a: &[Rational], s: &Rational, mask: usize) -> Rational {
    a.iter().enumerate().fold(s.clone(), |acc, (k, ak)| if mask >> k & 1 == 1 { acc + ak } else { acc - ak })
}

/// `H_n(i s, z)` as the literal sum over all `2^n` subsets.
pub fn build_hn_subset_at(inst: &Instance, s: &Rational, limits: &Limits) -> Result<ExactPoly> {
    let n = inst.n();
    limits.check_exact(n)?;
    // products[mask] = prod_{k in S} w_k prod_{k not in S} w_k*, built one
    // factor at a time over masks of the first k bits
    let mut products = vec![ExactPoly::one()];
    for w in inst.omegas() {
        let star = w.omega_star();
        let mut next = Vec::with_capacity(products.len() * 2);
        next.extend(products.iter().map(|p| p * &star));
        next.extend(products.iter().map(|p| p * w.omega()));
        products = next;
    }
    let mut total = ExactPoly::zero();
    for (mask, product) in products.iter().enumerate() {
        let offset = subset_offset(inst.a(), s, mask);
        let weight = inst.g().eval_exact(&GaussianRational::imag(offset))?;
        if !weight.is_zero() {
            total = &total + &product.scale(&weight);
        }
    }
    Ok(total)
}

/// `H_n(z) = H_n(0, z)`.
pub fn build_hn_subset(inst: &Instance, limits: &Limits) -> Result<ExactPoly> {
    build_hn_subset_at(inst, &Rational::zero(), limits)
}

/// `H_n(i s, z)` by the recursion
/// `H_k(t) = H_{k-1}(t - a_k) w_k* + H_{k-1}(t + a_k) w_k`, `H_0(t) = G(i t)`,
/// memoized on `(k, t)` so coinciding offsets are built once.
pub fn build_hn_recursive(inst: &Instance, s: &Rational, limits: &Limits) -> Result<ExactPoly> {
    limits.check_exact(inst.n())?;
    let stars: Vec<ExactPoly> = inst.omegas().iter().map(|w| w.omega_star()).collect();
    let mut memo: HashMap<(usize, Rational), ExactPoly> = HashMap::new();
    recurse(inst, &stars, inst.n(), s.clone(), &mut memo)
}

fn recurse(
    inst: &Instance,
    stars: &[ExactPoly],
    level: usize,
    offset: Rational,
    memo: &mut HashMap<(usize, Rational), ExactPoly>,
) -> Result<ExactPoly> {
    if level == 0 {
        return Ok(ExactPoly::constant(inst.g().eval_exact(&GaussianRational::imag(offset))?));
    }
    let key = (level, offset);
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let k = level - 1;
    let ak = &inst.a()[k];
    let lower = recurse(inst, stars, k, &key.1 - ak, memo)?;
    let upper = recurse(inst, stars, k, &key.1 + ak, memo)?;
    let out = &(&lower * &stars[k]) + &(&upper * inst.omegas()[k].omega());
    memo.insert(key, out.clone());
    Ok(out)
}

fn g_at(inst: &Instance, point: &GaussianRational) -> Result<ComplexF> {
    if inst.g().is_exact() {
        inst.g().eval_exact(point)?.to_complex()
    } else {
        Ok(inst.g().eval_float(point.to_complex()?))
    }
}

/// `P_n(s; x) = sum_S G(s - i sum_{S'} a + i sum_S a) prod_{l in S} x_l`,
/// summed in ascending subset order.
pub fn eval_pn(inst: &Instance, s: &GaussianRational, x: &[ComplexF]) -> Result<ComplexF> {
    let n = inst.n();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    let mut total = ComplexF::new(0.0, 0.0);
    for mask in 0..1usize << n {
        let offset = subset_offset(inst.a(), &Rational::zero(), mask);
        let point = s + &GaussianRational::imag(offset);
        let monomial: ComplexF = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| x[k]).product();
        total += g_at(inst, &point)? * monomial;
    }
    Ok(total)
}

/// Solves `P_n(s; x_1, ..., x_n) = 0` for `x_n`, given the first `n - 1`
/// coordinates. `P_n` is affine in `x_n`.
pub fn pn_solve_last(inst: &Instance, s: &GaussianRational, prefix: &[ComplexF]) -> Result<ComplexF> {
    let n = inst.n();
    if prefix.len() + 1 != n {
        return Err(Error::LengthMismatch { expected: n - 1, got: prefix.len() });
    }
    let mut x = prefix.to_vec();
    x.push(ComplexF::new(0.0, 0.0));
    let constant = eval_pn(inst, s, &x)?;
    x[n - 1] = ComplexF::new(1.0, 0.0);
    let slope = eval_pn(inst, s, &x)? - constant;
    if slope.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok(-constant / slope)
}

/// `w_k(z) / w_k*(z)` for every omega, and the product of the `w_k*(z)`.
pub fn omega_ratios(inst: &Instance, z: ComplexF) -> Result<(Vec<ComplexF>, ComplexF)> {
    let mut ratios = Vec::with_capacity(inst.n());
    let mut star_product = ComplexF::one();
    for w in inst.omegas() {
        let f = w.omega().to_float()?;
        let num = f.eval(&z);
        let den = f.star().eval(&z);
        ratios.push(num / den);
        star_product *= den;
    }
    Ok((ratios, star_product))
}
