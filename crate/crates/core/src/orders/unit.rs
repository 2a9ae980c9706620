//! Units of infinite order in `Z[alpha]` for non-integral `alpha`.
//!
//! Write `alpha^h = g1/g2` with coprime integral `g1, g2`, where `h` is the
//! class number (or 1 for rational `alpha`). A Bezout relation
//! `x*g1 + y*g2 = 1` gives `1/g2 = x*alpha^h + y`, so `g2` becomes a unit
//! once `O_d` is adjoined. Some power `g2^k` then lies in `Z[alpha]`
//! together with its inverse; its norm exceeds 1, so it has infinite order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::forms::class_number;
use super::ideal::{bezout, factor_principal, FractionalIdeal, IdealHNF};
use super::zalpha::{eval_poly, zalpha_membership};
use super::OrdersError;
use crate::qint::{QuadInt, QuadRat};

pub const DEFAULT_POWER_BUDGET: u32 = 6;
pub const DEFAULT_N_MAX: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate {
    pub alpha: QuadRat,
    pub h: u64,
    pub gamma1: QuadInt,
    pub gamma2: QuadInt,
    /// `x*gamma1 + y*gamma2 = 1`.
    pub bezout_x: QuadInt,
    pub bezout_y: QuadInt,
    pub k: u32,
    /// `gamma2^k`.
    pub unit: QuadRat,
    pub unit_poly: Vec<BigInt>,
    pub inverse: QuadRat,
    pub inverse_poly: Vec<BigInt>,
    pub norm: BigRational,
}

/// State reached by a failed search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialUnitSearch {
    pub h: u64,
    pub gamma2_candidates: Vec<String>,
    pub power_budget: u32,
    pub n_max: usize,
    pub reason: String,
}

impl UnitCertificate {
    /// Re-checks every claim with exact arithmetic.
    pub fn verify(&self) -> Result<(), OrdersError> {
        let t = self.alpha.tag();
        let fail = |m: &str| Err(OrdersError::InvalidCertificate(m.to_string()));
        let g1 = self.gamma1.to_quad_rat();
        let g2 = self.gamma2.to_quad_rat();
        if self.alpha.pow(self.h as i64)? != g1.checked_div(&g2)? {
            return fail("alpha^h != gamma1/gamma2");
        }
        if &(&self.bezout_x * &self.gamma1) + &(&self.bezout_y * &self.gamma2) != QuadInt::one(t) {
            return fail("bezout relation");
        }
        if self.unit != g2.pow(self.k as i64)? {
            return fail("unit != gamma2^k");
        }
        if !(&self.unit * &self.inverse).is_one() {
            return fail("unit * inverse != 1");
        }
        if eval_poly(&self.unit_poly, &self.alpha) != self.unit {
            return fail("unit polynomial");
        }
        if eval_poly(&self.inverse_poly, &self.alpha) != self.inverse {
            return fail("inverse polynomial");
        }
        if self.norm != self.unit.norm() {
            return fail("norm");
        }
        if self.norm.is_one() {
            return fail("norm is 1");
        }
        Ok(())
    }

    pub fn to_record(&self) -> UnitCertificateRecord {
        let s = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect();
        UnitCertificateRecord {
            d: self.alpha.tag().d(),
            alpha: self.alpha.to_string(),
            h: self.h,
            gamma1: self.gamma1.to_quad_rat().to_string(),
            gamma2: self.gamma2.to_quad_rat().to_string(),
            bezout_x: self.bezout_x.to_quad_rat().to_string(),
            bezout_y: self.bezout_y.to_quad_rat().to_string(),
            k: self.k,
            unit: self.unit.to_string(),
            unit_poly: s(&self.unit_poly),
            inverse: self.inverse.to_string(),
            inverse_poly: s(&self.inverse_poly),
            norm: self.norm.to_string(),
        }
    }

    pub fn from_record(r: &UnitCertificateRecord) -> Result<Self, OrdersError> {
        let t = crate::qint::FieldTag::new(r.d)?;
        let q = |s: &str| QuadRat::parse(t, s);
        let z = |s: &str| -> Result<QuadInt, OrdersError> {
            q(s)?.to_quad_int().ok_or_else(|| OrdersError::InvalidCertificate(format!("{s} is not integral")))
        };
        let ints = |v: &[String]| -> Result<Vec<BigInt>, OrdersError> {
            v.iter()
                .map(|c| c.parse::<BigInt>().map_err(|e| OrdersError::InvalidCertificate(e.to_string())))
                .collect()
        };
        let norm = q(&r.norm)?;
        let cert = UnitCertificate {
            alpha: q(&r.alpha)?,
            h: r.h,
            gamma1: z(&r.gamma1)?,
            gamma2: z(&r.gamma2)?,
            bezout_x: z(&r.bezout_x)?,
            bezout_y: z(&r.bezout_y)?,
            k: r.k,
            unit: q(&r.unit)?,
            unit_poly: ints(&r.unit_poly)?,
            inverse: q(&r.inverse)?,
            inverse_poly: ints(&r.inverse_poly)?,
            norm: norm.x().clone(),
        };
        cert.verify()?;
        Ok(cert)
    }
}

/// JSON form; every number is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCertificateRecord {
    pub d: i64,
    pub alpha: String,
    pub h: u64,
    pub gamma1: String,
    pub gamma2: String,
    pub bezout_x: String,
    pub bezout_y: String,
    pub k: u32,
    pub unit: String,
    pub unit_poly: Vec<String>,
    pub inverse: String,
    pub inverse_poly: Vec<String>,
    pub norm: String,
}

/// `h` and a generator of the ideal that `gamma2` must generate, if that
/// ideal is principal.
fn denominator_generator(alpha: &QuadRat) -> Result<(u64, Option<QuadInt>), OrdersError> {
    let t = alpha.tag();
    if alpha.is_rational() {
        return Ok((1, Some(QuadInt::from_int(t, alpha.x().denom().clone()))));
    }
    let factored = factor_principal(alpha)?;
    let h = class_number(t);
    let j = factored
        .negative_part()
        .fold(FractionalIdeal::integral(IdealHNF::unit(t)), |acc, (p, e)| {
            acc.mul(&FractionalIdeal::integral(p.pow((e.unsigned_abs() * h) as u32)))
        });
    Ok((h, j.generator().and_then(|g| g.to_quad_int())))
}

/// Searches a unit of infinite order in `Z[alpha]`. Generator candidates
/// for `gamma2` are tried in order: the canonical generator, its unit
/// multiples, then the conjugates; the least `k` over all candidates wins.
pub fn find_infinite_unit(
    alpha: &QuadRat,
    power_budget: u32,
    n_max: usize,
) -> Result<UnitCertificate, OrdersError> {
    if alpha.is_integral() {
        return Err(OrdersError::NoDenominator(alpha.to_string()));
    }
    let t = alpha.tag();
    let (h, base) = denominator_generator(alpha)?;
    let partial = |names: Vec<String>, reason: &str| {
        OrdersError::BudgetExceeded(Box::new(PartialUnitSearch {
            h,
            gamma2_candidates: names,
            power_budget,
            n_max,
            reason: reason.to_string(),
        }))
    };
    let base = base.ok_or_else(|| partial(vec![], "denominator ideal is not principal"))?;
    let mut candidates: Vec<QuadInt> = vec![base.clone()];
    for g in [base.clone(), base.conj()] {
        for u in QuadInt::units(t) {
            let c = &u * &g;
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
    }

    let alpha_h = alpha.pow(h as i64)?;
    let mut usable = Vec::new();
    for g2 in &candidates {
        let Some(g1) = (&alpha_h * &g2.to_quad_rat()).to_quad_int() else {
            continue;
        };
        let Ok((x, y)) = bezout(&g1, g2) else {
            continue;
        };
        let inv_g2 = QuadRat::one(t).checked_div(&g2.to_quad_rat())?;
        let lhs = &(&x.to_quad_rat() * &alpha_h) + &y.to_quad_rat();
        if lhs != inv_g2 {
            continue;
        }
        usable.push((g1, g2.clone(), x, y, inv_g2));
    }
    let names: Vec<String> = usable.iter().map(|u| u.1.to_string()).collect();
    if usable.is_empty() {
        return Err(partial(
            candidates.iter().map(|c| c.to_string()).collect(),
            "no coprime gamma1/gamma2 split of alpha^h",
        ));
    }
    for k in 1..=power_budget {
        for (g1, g2, x, y, inv_g2) in &usable {
            let unit = g2.to_quad_rat().pow(k as i64)?;
            let inverse = inv_g2.pow(k as i64)?;
            let Some(inverse_poly) = zalpha_membership(&inverse, alpha, n_max) else {
                continue;
            };
            let Some(unit_poly) = zalpha_membership(&unit, alpha, n_max) else {
                continue;
            };
            let cert = UnitCertificate {
                alpha: alpha.clone(),
                h,
                gamma1: g1.clone(),
                gamma2: g2.clone(),
                bezout_x: x.clone(),
                bezout_y: y.clone(),
                k,
                norm: unit.norm(),
                unit,
                unit_poly,
                inverse,
                inverse_poly,
            };
            cert.verify()?;
            return Ok(cert);
        }
    }
    Err(partial(names, "no power of gamma2 within the budget lies in Z[alpha]"))
}

/// `|norm(u)| > 1` for a certificate; the norm is positive in imaginary fields.
pub fn has_infinite_order(cert: &UnitCertificate) -> bool {
    cert.norm.is_positive() && !cert.norm.is_one() && !cert.norm.is_zero()
}
