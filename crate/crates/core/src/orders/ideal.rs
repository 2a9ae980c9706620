//! Integral and fractional ideals of `O_d`, prime splitting, factorisation of
//! principal ideals, principality tests and Bezout witnesses.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::Lattice;
use super::OrdersError;
use crate::qint::{exact_sqrt, FieldTag, QuadInt, QuadRat};

/// Trial divisions allowed when factoring a norm.
pub const TRIAL_DIVISION_BUDGET: u64 = 10_000_000;

/// A nonzero ideal of `O_d` with Z-basis `{a, b + c*w}`, `a, c > 0`,
/// `0 <= b < a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealHNF {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: i64,
}

impl IdealHNF {
    /// Validates the HNF shape and closure under `w`.
    pub fn new(
        tag: FieldTag,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self, OrdersError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if !a.is_positive() || !c.is_positive() || b.is_negative() || b >= a {
            return Err(OrdersError::NotHnf(format!("[[{a}, {b}], [0, {c}]]")));
        }
        let id = IdealHNF { a, b, c, d: tag.d() };
        let w = QuadInt::omega(tag);
        if !id.basis().iter().all(|e| id.contains(&(&w * e))) {
            return Err(OrdersError::NotAnIdeal(id.to_string()));
        }
        Ok(id)
    }

    /// The ideal generated by the given elements.
    pub fn from_generators(tag: FieldTag, gens: &[QuadInt]) -> Result<Self, OrdersError> {
        let w = QuadInt::omega(tag);
        let vecs: Vec<(BigInt, BigInt)> = gens
            .iter()
            .flat_map(|g| [g.clone(), &w * g])
            .map(|z| (z.a().clone(), z.b().clone()))
            .collect();
        let lat = Lattice::from_generators(&vecs);
        if lat.rank() < 2 {
            return Err(OrdersError::ZeroIdeal);
        }
        let (a, b, c) = lat.hnf();
        Ok(IdealHNF { a, b, c, d: tag.d() })
    }

    pub fn principal(g: &QuadInt) -> Result<Self, OrdersError> {
        Self::from_generators(g.tag(), std::slice::from_ref(g))
    }

    pub fn unit(tag: FieldTag) -> Self {
        IdealHNF {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: tag.d(),
        }
    }

    pub fn tag(&self) -> FieldTag {
        FieldTag::new(self.d).expect("ideal built from a valid tag")
    }

    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn basis(&self) -> [QuadInt; 2] {
        let t = self.tag();
        [
            QuadInt::new(t, self.a.clone(), 0),
            QuadInt::new(t, self.b.clone(), self.c.clone()),
        ]
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm().is_one()
    }

    pub fn contains(&self, z: &QuadInt) -> bool {
        let (x, y) = (z.a(), z.b());
        let (k, r) = y.div_rem(&self.c);
        r.is_zero() && (x - &k * &self.b).is_multiple_of(&self.a)
    }

    pub fn mul(&self, other: &IdealHNF) -> IdealHNF {
        let t = self.tag();
        t.check_same(&other.tag()).expect("ideals over one field");
        let gens: Vec<QuadInt> = self
            .basis()
            .iter()
            .flat_map(|x| other.basis().into_iter().map(move |y| x * &y))
            .collect();
        Self::from_generators(t, &gens).expect("product of nonzero ideals")
    }

    pub fn pow(&self, k: u32) -> IdealHNF {
        let mut acc = IdealHNF::unit(self.tag());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn conj(&self) -> IdealHNF {
        let gens: Vec<QuadInt> = self.basis().iter().map(|z| z.conj()).collect();
        Self::from_generators(self.tag(), &gens).expect("conjugate of a nonzero ideal")
    }

    /// `k * self` for a positive integer `k`.
    pub fn scale(&self, k: &BigInt) -> IdealHNF {
        assert!(k.is_positive());
        IdealHNF {
            a: &self.a * k,
            b: &self.b * k,
            c: &self.c * k,
            d: self.d,
        }
    }

    /// Largest integer `g` with `self = g * J` for an ideal `J`.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// Exact division by an integer dividing the content.
    fn unscale(&self, k: &BigInt) -> IdealHNF {
        debug_assert!(self.content().is_multiple_of(k));
        IdealHNF {
            a: &self.a / k,
            b: &self.b / k,
            c: &self.c / k,
            d: self.d,
        }
    }

    /// Some generator if the ideal is principal; the least one in the
    /// canonical element order. Searches elements of norm `N(I)` using
    /// `4N = (2x + t*y)^2 + |D|*y^2`.
    pub fn generator(&self) -> Option<QuadInt> {
        let tag = self.tag();
        let n4: BigInt = self.norm() * 4;
        let abs_d = BigInt::from(tag.disc().unsigned_abs());
        let t = BigInt::from(tag.omega_trace());
        let y_max: BigInt = (&n4 / &abs_d).sqrt();
        let mut best: Option<QuadInt> = None;
        let mut y = -y_max.clone();
        while y <= y_max {
            if let Some(s) = exact_sqrt(&(&n4 - &abs_d * &y * &y)) {
                for s in [s.clone(), -s] {
                    let twice_x = s - &t * &y;
                    if twice_x.is_even() {
                        let z = QuadInt::new(tag, twice_x / 2, y.clone());
                        if self.contains(&z) && best.as_ref().is_none_or(|b| z < *b) {
                            best = Some(z);
                        }
                    }
                }
            }
            y += 1;
        }
        best
    }
}

impl fmt::Display for IdealHNF {
    /// Two-element form `(a, b + c*w)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tag();
        let second = QuadInt::new(t, self.b.clone(), self.c.clone());
        write!(f, "({}, {})", self.a, second)
    }
}

/// `(1/den) * ideal`, with `gcd(den, content(ideal)) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractionalIdeal {
    den: BigInt,
    ideal: IdealHNF,
}

impl FractionalIdeal {
    pub fn new(ideal: IdealHNF, den: impl Into<BigInt>) -> Result<Self, OrdersError> {
        let den = den.into();
        if !den.is_positive() {
            return Err(OrdersError::ZeroIdeal);
        }
        let g = ideal.content().gcd(&den);
        Ok(FractionalIdeal {
            ideal: ideal.unscale(&g),
            den: den / g,
        })
    }

    pub fn integral(ideal: IdealHNF) -> Self {
        FractionalIdeal {
            den: BigInt::one(),
            ideal,
        }
    }

    /// The principal fractional ideal `(x)`.
    pub fn principal(x: &QuadRat) -> Result<Self, OrdersError> {
        if x.is_zero() {
            return Err(OrdersError::ZeroIdeal);
        }
        let m = x.denominator();
        let beta = (x * &QuadRat::from_int(x.tag(), m.clone()))
            .to_quad_int()
            .expect("scaled by the denominator");
        Self::new(IdealHNF::principal(&beta)?, m)
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn numerator(&self) -> &IdealHNF {
        &self.ideal
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(self.ideal.norm(), &self.den * &self.den)
    }

    pub fn mul(&self, other: &FractionalIdeal) -> FractionalIdeal {
        Self::new(self.ideal.mul(&other.ideal), &self.den * &other.den).expect("nonzero")
    }

    /// `(I/m)^-1 = m * conj(I) / N(I)`.
    pub fn inverse(&self) -> FractionalIdeal {
        Self::new(self.ideal.conj().scale(&self.den), self.ideal.norm()).expect("nonzero")
    }

    pub fn pow(&self, k: i64) -> FractionalIdeal {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = FractionalIdeal::integral(IdealHNF::unit(self.ideal.tag()));
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Some generator if principal.
    pub fn generator(&self) -> Option<QuadRat> {
        let g = self.ideal.generator()?;
        let t = g.tag();
        Some(&g.to_quad_rat() * &QuadRat::from_ratio(t, BigRational::new(BigInt::one(), self.den.clone())))
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.ideal)
        } else {
            write!(f, "{}/{}", self.ideal, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub ideal: IdealHNF,
    pub p: BigInt,
    pub splitting: Splitting,
}

impl PrimeIdeal {
    pub fn ramification_index(&self) -> u32 {
        if self.splitting == Splitting::Ramified {
            2
        } else {
            1
        }
    }

    pub fn residue_degree(&self) -> u32 {
        if self.splitting == Splitting::Inert {
            2
        } else {
            1
        }
    }
}

/// Primes of `O_d` above the rational prime `p`, from the roots of the
/// minimal polynomial `x^2 - t*x + n` of `w` modulo `p`, in increasing
/// root order.
pub fn primes_above(p: &BigInt, tag: FieldTag) -> Result<Vec<PrimeIdeal>, OrdersError> {
    if !is_prime(p) {
        return Err(OrdersError::NotPrime(p.clone()));
    }
    let t = BigInt::from(tag.omega_trace());
    let n = BigInt::from(tag.omega_norm());
    let pu = p.to_u64().ok_or_else(|| OrdersError::NormTooLargeToFactor(p.clone()))?;
    let roots: Vec<BigInt> = (0..pu)
        .map(BigInt::from)
        .filter(|r| (r * r - &t * r + &n).is_multiple_of(p))
        .collect();
    let make = |r: &BigInt| -> Result<IdealHNF, OrdersError> {
        let gens = [
            QuadInt::from_int(tag, p.clone()),
            QuadInt::new(tag, -r, 1),
        ];
        IdealHNF::from_generators(tag, &gens)
    };
    let out = match roots.len() {
        0 => vec![PrimeIdeal {
            ideal: IdealHNF::from_generators(tag, &[QuadInt::from_int(tag, p.clone())])?,
            p: p.clone(),
            splitting: Splitting::Inert,
        }],
        1 => vec![PrimeIdeal {
            ideal: make(&roots[0])?,
            p: p.clone(),
            splitting: Splitting::Ramified,
        }],
        _ => roots
            .iter()
            .map(|r| {
                Ok(PrimeIdeal {
                    ideal: make(r)?,
                    p: p.clone(),
                    splitting: Splitting::Split,
                })
            })
            .collect::<Result<_, OrdersError>>()?,
    };
    Ok(out)
}

fn is_prime(p: &BigInt) -> bool {
    if p < &BigInt::from(2) {
        return false;
    }
    let mut k = BigInt::from(2);
    while &k * &k <= *p {
        if p.is_multiple_of(&k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Prime factors of `|n|` by trial division, each with multiplicity.
pub fn factor_integer(n: &BigInt, budget: &mut u64) -> Result<Vec<(BigInt, u32)>, OrdersError> {
    let orig = n.abs();
    let mut n = orig.clone();
    let mut out = Vec::new();
    let mut k = BigInt::from(2);
    while &k * &k <= n {
        if *budget == 0 {
            return Err(OrdersError::NormTooLargeToFactor(orig));
        }
        *budget -= 1;
        let mut e = 0;
        while n.is_multiple_of(&k) {
            n /= &k;
            e += 1;
        }
        if e > 0 {
            out.push((k.clone(), e));
        }
        k += if k == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Ok(out)
}

/// `(x) = prod P^e` with `e != 0`; positive exponents form S+, negative S-.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredIdeal {
    pub tag: FieldTag,
    pub factors: Vec<(IdealHNF, i64)>,
}

impl FactoredIdeal {
    pub fn product(&self) -> FractionalIdeal {
        self.factors.iter().fold(
            FractionalIdeal::integral(IdealHNF::unit(self.tag)),
            |acc, (p, e)| acc.mul(&FractionalIdeal::integral(p.clone()).pow(*e)),
        )
    }

    pub fn positive_part(&self) -> impl Iterator<Item = &(IdealHNF, i64)> {
        self.factors.iter().filter(|(_, e)| *e > 0)
    }

    pub fn negative_part(&self) -> impl Iterator<Item = &(IdealHNF, i64)> {
        self.factors.iter().filter(|(_, e)| *e < 0)
    }
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("(1)");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Largest `k` with `z` in `P^k`, for nonzero integral `z`.
fn valuation(z: &QuadInt, prime: &PrimeIdeal) -> i64 {
    let mut k = 0;
    let mut power = prime.ideal.clone();
    while power.contains(z) {
        k += 1;
        power = power.mul(&prime.ideal);
    }
    k
}

/// Prime factorisation of the principal fractional ideal `(x)`.
pub fn factor_principal(x: &QuadRat) -> Result<FactoredIdeal, OrdersError> {
    if x.is_zero() {
        return Err(OrdersError::ZeroIdeal);
    }
    let tag = x.tag();
    let m = x.denominator();
    let beta = (x * &QuadRat::from_int(tag, m.clone()))
        .to_quad_int()
        .expect("scaled by the denominator");
    let m_elt = QuadInt::from_int(tag, m.clone());
    let mut budget = TRIAL_DIVISION_BUDGET;
    let mut ps: Vec<BigInt> = factor_integer(&beta.norm(), &mut budget)?
        .into_iter()
        .chain(factor_integer(&m, &mut budget)?)
        .map(|(p, _)| p)
        .collect();
    ps.sort();
    ps.dedup();
    let mut factors = Vec::new();
    for p in &ps {
        for prime in primes_above(p, tag)? {
            let e = valuation(&beta, &prime) - valuation(&m_elt, &prime);
            if e != 0 {
                factors.push((prime.ideal, e));
            }
        }
    }
    Ok(FactoredIdeal { tag, factors })
}

/// `(x, y)` with `x*g1 + y*g2 = 1`, from integer row reduction of
/// `{g1, w*g1, g2, w*g2}`.
pub fn bezout(g1: &QuadInt, g2: &QuadInt) -> Result<(QuadInt, QuadInt), OrdersError> {
    let tag = g1.tag();
    tag.check_same(&g2.tag())?;
    let w = QuadInt::omega(tag);
    let gens = [g1.clone(), &w * g1, g2.clone(), &w * g2];
    let vecs: Vec<(BigInt, BigInt)> = gens.iter().map(|z| (z.a().clone(), z.b().clone())).collect();
    let lat = Lattice::from_generators(&vecs);
    let c = lat
        .solve(&BigInt::one(), &BigInt::zero())
        .ok_or_else(|| OrdersError::NotCoprime(g1.to_string(), g2.to_string()))?;
    let x = QuadInt::new(tag, c[0].clone(), c[1].clone());
    let y = QuadInt::new(tag, c[2].clone(), c[3].clone());
    assert!((&(&x * g1) + &(&y * g2)) == QuadInt::one(tag), "bezout witness check");
    Ok((x, y))
}
