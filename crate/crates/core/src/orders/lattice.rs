//! Integer lattices in `Z^2` given by generators, reduced to Hermite normal
//! form with unimodular transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A generator `(x, y)` together with its coefficient vector over the
/// original generators.
#[derive(Clone, Debug)]
struct Tracked {
    x: BigInt,
    y: BigInt,
    coeffs: Vec<BigInt>,
}

impl Tracked {
    fn combine(s: &BigInt, p: &Tracked, t: &BigInt, q: &Tracked) -> Tracked {
        Tracked {
            x: s * &p.x + t * &q.x,
            y: s * &p.y + t * &q.y,
            coeffs: p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(u, v)| s * u + t * v)
                .collect(),
        }
    }

    fn negated(mut self) -> Tracked {
        self.x = -self.x;
        self.y = -self.y;
        for c in &mut self.coeffs {
            *c = -&*c;
        }
        self
    }
}

/// HNF of a sublattice of `Z^2`: the lattice is `Z*(a, 0) + Z*(b, c)` with
/// `a >= 0`, `c >= 0`, and `0 <= b < a` when `a > 0`. A zero `a` or `c`
/// drops that basis vector, so rank 0 and 1 are representable.
#[derive(Clone, Debug)]
pub struct Lattice {
    a: Option<Tracked>,
    pivot: Option<Tracked>,
    kernel: Vec<Vec<BigInt>>,
    n_gens: usize,
}

impl Lattice {
    pub fn from_generators(gens: &[(BigInt, BigInt)]) -> Lattice {
        let n = gens.len();
        let mut lat = Lattice {
            a: None,
            pivot: None,
            kernel: Vec::new(),
            n_gens: n,
        };
        for (i, (x, y)) in gens.iter().enumerate() {
            let mut coeffs = vec![BigInt::zero(); n];
            coeffs[i] = BigInt::one();
            lat.push(Tracked {
                x: x.clone(),
                y: y.clone(),
                coeffs,
            });
        }
        lat.reduce_b();
        lat
    }

    fn push(&mut self, v: Tracked) {
        if v.y.is_zero() {
            self.push_axis(v);
            return;
        }
        let v = if v.y.is_negative() { v.negated() } else { v };
        let Some(p) = self.pivot.take() else {
            self.pivot = Some(v);
            return;
        };
        let e = p.y.extended_gcd(&v.y);
        let g = e.gcd;
        let new_pivot = Tracked::combine(&e.x, &p, &e.y, &v);
        let rest = Tracked::combine(&(&v.y / &g), &p, &(-(&p.y / &g)), &v);
        debug_assert!(rest.y.is_zero());
        self.pivot = Some(new_pivot);
        self.push_axis(rest);
    }

    fn push_axis(&mut self, v: Tracked) {
        if v.x.is_zero() {
            self.kernel.push(v.coeffs);
            return;
        }
        let v = if v.x.is_negative() { v.negated() } else { v };
        let Some(a) = self.a.take() else {
            self.a = Some(v);
            return;
        };
        let e = a.x.extended_gcd(&v.x);
        let g = e.gcd;
        let new_a = Tracked::combine(&e.x, &a, &e.y, &v);
        let rest = Tracked::combine(&(&v.x / &g), &a, &(-(&a.x / &g)), &v);
        debug_assert!(rest.x.is_zero() && rest.y.is_zero());
        self.a = Some(new_a);
        self.kernel.push(rest.coeffs);
    }

    fn reduce_b(&mut self) {
        if let (Some(a), Some(p)) = (&self.a, &mut self.pivot) {
            let q = p.x.div_floor(&a.x);
            if !q.is_zero() {
                *p = Tracked::combine(&BigInt::one(), p, &(-q), a);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.a.is_some() as usize + self.pivot.is_some() as usize
    }

    /// `(a, b, c)`; absent basis vectors report zero.
    pub fn hnf(&self) -> (BigInt, BigInt, BigInt) {
        let a = self.a.as_ref().map(|v| v.x.clone()).unwrap_or_default();
        let (b, c) = self
            .pivot
            .as_ref()
            .map(|p| (p.x.clone(), p.y.clone()))
            .unwrap_or_default();
        (a, b, c)
    }

    /// Integer relations among the generators; a basis of the full relation
    /// lattice.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.kernel
    }

    /// Coordinates of `(x, y)` in the HNF basis, if it lies in the lattice.
    fn basis_coords(&self, x: &BigInt, y: &BigInt) -> Option<(BigInt, BigInt)> {
        let (kp, rest_x) = match &self.pivot {
            Some(p) => {
                let (k, r) = y.div_rem(&p.y);
                if !r.is_zero() {
                    return None;
                }
                let rest = x - &k * &p.x;
                (k, rest)
            }
            None if y.is_zero() => (BigInt::zero(), x.clone()),
            None => return None,
        };
        let ka = match &self.a {
            Some(a) => {
                let (k, r) = rest_x.div_rem(&a.x);
                if !r.is_zero() {
                    return None;
                }
                k
            }
            None if rest_x.is_zero() => BigInt::zero(),
            None => return None,
        };
        Some((ka, kp))
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        self.basis_coords(x, y).is_some()
    }

    /// Some integer combination of the generators equal to `(x, y)`.
    pub fn solve(&self, x: &BigInt, y: &BigInt) -> Option<Vec<BigInt>> {
        let (ka, kp) = self.basis_coords(x, y)?;
        let mut out = vec![BigInt::zero(); self.n_gens];
        for (k, v) in [(&ka, &self.a), (&kp, &self.pivot)] {
            if let Some(v) = v {
                for (o, c) in out.iter_mut().zip(&v.coeffs) {
                    *o += k * c;
                }
            }
        }
        Some(out)
    }
}

/// Clears denominators: returns integer vectors and the common scale.
pub fn scale_to_integers(vs: &[(BigRational, BigRational)]) -> (Vec<(BigInt, BigInt)>, BigInt) {
    let mut l = BigInt::one();
    for (x, y) in vs {
        l = l.lcm(x.denom()).lcm(y.denom());
    }
    let ints = vs
        .iter()
        .map(|(x, y)| {
            let sx = x * BigRational::from_integer(l.clone());
            let sy = y * BigRational::from_integer(l.clone());
            (sx.to_integer(), sy.to_integer())
        })
        .collect();
    (ints, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> (BigInt, BigInt) {
        (x.into(), y.into())
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn hnf_basics() {
        let l = Lattice::from_generators(&[v(4, 0), v(6, 2), v(1, 4)]);
        assert_eq!(l.rank(), 2);
        // covolume is the gcd of the 2x2 minors 8, 16, 22
        let (a, b, c) = l.hnf();
        assert_eq!(&a * &c, BigInt::from(2));
        assert!(b >= BigInt::zero() && b < a);
    }

    #[test]
    fn membership_and_solve() {
        let gens = [v(3, 1), v(1, 3), v(2, 2)];
        let l = Lattice::from_generators(&gens);
        for (x, y) in [(4, 4), (5, 7), (0, 8), (-2, 2)] {
            let inside = l.contains(&x.into(), &y.into());
            let r = -10i64..=10;
            let brute = r.clone().any(|i| {
                r.clone().any(|j| {
                    r.clone()
                        .any(|k| 3 * i + j + 2 * k == x && i + 3 * j + 2 * k == y)
                })
            });
            assert_eq!(inside, brute, "({x}, {y})");
            if let Some(c) = l.solve(&x.into(), &y.into()) {
                let sx: BigInt = c.iter().zip(&gens).map(|(k, g)| k * &g.0).sum();
                let sy: BigInt = c.iter().zip(&gens).map(|(k, g)| k * &g.1).sum();
                assert_eq!((sx, sy), (BigInt::from(x), BigInt::from(y)));
            }
        }
    }

    #[test]
    fn kernel_relations() {
        let gens = [v(3, 1), v(1, 3), v(2, 2)];
        let l = Lattice::from_generators(&gens);
        assert_eq!(l.kernel().len(), 1);
        let k = &l.kernel()[0];
        let sx: BigInt = k.iter().zip(&gens).map(|(c, g)| c * &g.0).sum();
        let sy: BigInt = k.iter().zip(&gens).map(|(c, g)| c * &g.1).sum();
        assert!(sx.is_zero() && sy.is_zero());
        // primitive: (1, 1, -2) up to sign
        assert!(k == &ints(&[1, 1, -2]) || k == &ints(&[-1, -1, 2]));
    }

    #[test]
    fn low_rank() {
        let l = Lattice::from_generators(&[v(2, 0), v(3, 0)]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.hnf(), (1.into(), 0.into(), 0.into()));
        assert!(!l.contains(&1.into(), &1.into()));
        let z = Lattice::from_generators(&[v(0, 0)]);
        assert_eq!(z.rank(), 0);
        assert!(z.contains(&0.into(), &0.into()));
        let line = Lattice::from_generators(&[v(2, 4), v(-1, -2)]);
        assert_eq!(line.rank(), 1);
        assert!(line.contains(&3.into(), &6.into()));
        assert!(!line.contains(&3.into(), &5.into()));
    }
}
