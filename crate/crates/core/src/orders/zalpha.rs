//! Membership in the subring `Z[alpha]` of `K`, certified by explicit
//! integer polynomials in `alpha`.
//!
//! `Z[alpha]` itself is not finitely generated when `alpha` is not integral,
//! so we test the increasing lattices `L_N = Z{1, alpha, ..., alpha^N}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::lattice::{scale_to_integers, Lattice};
use crate::qint::QuadRat;

/// `sum c_i * alpha^i`.
pub fn eval_poly(coeffs: &[BigInt], alpha: &QuadRat) -> QuadRat {
    let t = alpha.tag();
    coeffs.iter().rev().fold(QuadRat::zero(t), |acc, c| {
        &(&acc * alpha) + &QuadRat::from_int(t, c.clone())
    })
}

/// Writes the nonzero terms, highest degree first, e.g.
/// `5900521*a^6+12400457*a^5+2969`.
pub fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let term = match i {
            0 => mag.to_string(),
            1 => format!("{mag}*{var}"),
            _ => format!("{mag}*{var}^{i}"),
        };
        out.push_str(sign);
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn coords(z: &QuadRat) -> (BigRational, BigRational) {
    (z.x().clone(), z.y().clone())
}

/// Solves `target = sum_{i in support} c_i * powers[i]`, choosing among all
/// solutions the one whose last coefficient lies in `(-K/2, K/2]`, where `K`
/// is the last coordinate of the relation vector.
fn solve_on_support(powers: &[QuadRat], support: &[usize], target: &QuadRat) -> Option<Vec<BigInt>> {
    let mut vs: Vec<(BigRational, BigRational)> = support.iter().map(|&i| coords(&powers[i])).collect();
    vs.push(coords(target));
    let (ints, _) = scale_to_integers(&vs);
    let (target_v, gens) = ints.split_last().expect("target pushed");
    let lat = Lattice::from_generators(gens);
    let mut sol = lat.solve(&target_v.0, &target_v.1)?;
    if let [k] = lat.kernel() {
        let k_last = k.last().expect("non-empty support").clone();
        if !k_last.is_zero() {
            let m = k_last.abs();
            let last = sol.last().expect("non-empty support").clone();
            // shift = round-up of last / k_last landing in (-m/2, m/2]
            let mut r = last.mod_floor(&m);
            if &r * 2 > m {
                r -= &m;
            }
            let steps = (&last - &r) / &k_last;
            for (s, kv) in sol.iter_mut().zip(k) {
                *s -= &steps * kv;
            }
        }
    }
    Some(sol)
}

/// Finds integers `(c_0, ..., c_N)`, `N <= n_max`, with `x = sum c_i alpha^i`,
/// for the least such `N`. Among the solutions, terms supported on
/// `{0, N-1, N}` are preferred. `None` means only that no expression of
/// degree `<= n_max` exists.
pub fn zalpha_membership(x: &QuadRat, alpha: &QuadRat, n_max: usize) -> Option<Vec<BigInt>> {
    let t = alpha.tag();
    t.check_same(&x.tag()).expect("same field");
    let mut powers = vec![QuadRat::one(t)];
    for n in 0..=n_max {
        if n > 0 {
            let next = &powers[n - 1] * alpha;
            powers.push(next);
        }
        let mut vs: Vec<(BigRational, BigRational)> = powers.iter().map(coords).collect();
        vs.push(coords(x));
        let (ints, _) = scale_to_integers(&vs);
        let (target, gens) = ints.split_last().expect("target pushed");
        let lat = Lattice::from_generators(gens);
        let Some(general) = lat.solve(&target.0, &target.1) else {
            continue;
        };
        let support: Vec<usize> = match n {
            0 => vec![0],
            1 => vec![0, 1],
            _ => vec![0, n - 1, n],
        };
        let coeffs = match solve_on_support(&powers, &support, x) {
            Some(c) => {
                let mut full = vec![BigInt::zero(); n + 1];
                for (&i, v) in support.iter().zip(c) {
                    full[i] = v;
                }
                full
            }
            None => general,
        };
        debug_assert_eq!(&eval_poly(&coeffs, alpha), x);
        return Some(coeffs);
    }
    None
}
