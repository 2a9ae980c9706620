//! Frieze patterns stored on one fundamental period.
//!
//! A frieze of height `n` has entries `c(i, j)` for `i <= j <= i + n + 3`,
//! with borders `c(i,i) = 0`, `c(i,i+1) = 1`, `c(i,i+n+2) = 1`,
//! `c(i,i+n+3) = 0`, and every adjacent 2x2 block of determinant 1. The
//! pattern is `(n+3)`-periodic: `c(i+n+3, j+n+3) = c(i, j)`. Rows
//! `0..n+3` are stored; any other row is resolved by periodicity.
//!
//! The diagonal of an entry is `j - i`. The quiddity cycle sits on diagonal 2
//! and the interior entries on diagonals `2..=n+1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eta::{omega_strings, parse_omega_strings, EtaError, QuiddityCycle};
use crate::qint::{Domain, FieldTag, QuadError, QuadInt, QuadRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FriezeError {
    #[error("not a quiddity cycle: the eta-product is not -id")]
    NotAQuiddityCycle,
    #[error("a quiddity cycle of length {0} does not define a frieze (need length >= 3)")]
    InvalidLength(usize),
    #[error("twisting needs odd height, got {0}")]
    EvenHeight(usize),
    #[error("sign lemma precondition violated at ({i}, {j}): entry {entry}")]
    PreconditionViolated { i: i64, j: i64, entry: String },
    #[error("row data does not match height {0}")]
    Shape(usize),
    #[error("record class {recorded:?} disagrees with recomputed class {computed:?}")]
    ClassMismatch {
        recorded: FriezeClass,
        computed: FriezeClass,
    },
    #[error(transparent)]
    Eta(#[from] EtaError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FriezeClass {
    ConwayCoxeter,
    TwistedConwayCoxeter,
    NonIntegral,
    ContainsZero,
    OtherIntegral,
}

impl FriezeClass {
    pub const ALL: [FriezeClass; 5] = [
        FriezeClass::ConwayCoxeter,
        FriezeClass::TwistedConwayCoxeter,
        FriezeClass::NonIntegral,
        FriezeClass::ContainsZero,
        FriezeClass::OtherIntegral,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FriezeClass::ConwayCoxeter => "ConwayCoxeter",
            FriezeClass::TwistedConwayCoxeter => "TwistedConwayCoxeter",
            FriezeClass::NonIntegral => "NonIntegral",
            FriezeClass::ContainsZero => "ContainsZero",
            FriezeClass::OtherIntegral => "OtherIntegral",
        }
    }
}

impl fmt::Display for FriezeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which diagonals (`j - i` even or odd) a sign change applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagonalParity {
    Even,
    Odd,
}

impl DiagonalParity {
    fn matches(self, diag: i64) -> bool {
        (diag.rem_euclid(2) == 0) == (self == DiagonalParity::Even)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub unimodular: bool,
    pub tame: bool,
    pub nonzero: bool,
    pub glide: bool,
}

impl ValidationReport {
    pub fn all(&self) -> bool {
        self.unimodular && self.tame && self.nonzero && self.glide
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: FriezeClass,
    /// For twisted friezes: the diagonal parity whose negation gives the
    /// Conway-Coxeter frieze.
    pub untwist_parity: Option<DiagonalParity>,
}

/// Signs of the entries on diagonals `1..=n+2` (borders of ones included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignGrid {
    height: usize,
    eps: Vec<Vec<i8>>,
}

impl SignGrid {
    pub fn eps(&self, i: i64, j: i64) -> i8 {
        let p = (self.height + 3) as i64;
        let k = j - i;
        assert!((1..=self.height as i64 + 2).contains(&k), "({i}, {j}) outside the sign grid");
        self.eps[i.rem_euclid(p) as usize][(k - 1) as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignLemmaReport {
    /// Every adjacent 2x2 block has an even number of negative entries.
    pub blocks: bool,
    /// `eps(i,i+2) eps(i+1,i+2) eps(i,i+l+1) eps(i+1,i+l+1) = 1` for `1 <= l <= n+1`.
    pub diagonal_products: bool,
    /// All quiddity entries share one sign.
    pub constant_quiddity_sign: bool,
    /// That sign, when constant.
    pub quiddity_sign: Option<i8>,
}

impl SignLemmaReport {
    pub fn all(&self) -> bool {
        self.blocks && self.diagonal_products && self.constant_quiddity_sign
    }
}

/// A frieze pattern anchored at row 0: rotations of the quiddity cycle give
/// different patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FriezePattern {
    tag: FieldTag,
    height: usize,
    rows: Vec<Vec<QuadRat>>,
}

impl FriezePattern {
    /// Builds the pattern from its quiddity cycle `(c(0,2), ..., c(n+2,n+4))`
    /// with `c(i,j+1) = c(j-1,j+1) c(i,j) - c(i,j-1)`.
    pub fn from_quiddity(cycle: &QuiddityCycle) -> Result<FriezePattern, FriezeError> {
        let m = cycle.len();
        if m < 3 {
            return Err(FriezeError::InvalidLength(m));
        }
        if !cycle.is_quiddity_cycle() {
            return Err(FriezeError::NotAQuiddityCycle);
        }
        let tag = cycle.tag();
        let n = m - 3;
        let rows = (0..m)
            .map(|i| {
                let mut row = Vec::with_capacity(n + 4);
                row.push(QuadRat::zero(tag));
                row.push(QuadRat::one(tag));
                for k in 1..=n + 2 {
                    let q = cycle.get(i + k - 1);
                    let next = &(q * &row[k]) - &row[k - 1];
                    row.push(next);
                }
                row
            })
            .collect();
        let f = FriezePattern {
            tag,
            height: n,
            rows,
        };
        debug_assert!(f.borders_ok());
        Ok(f)
    }

    /// Raw constructor for externally supplied (possibly invalid) data.
    /// `rows[i][k]` holds `c(i, i+k)` for `i < n+3`, `k <= n+3`.
    pub fn from_rows(
        tag: FieldTag,
        height: usize,
        rows: Vec<Vec<QuadRat>>,
    ) -> Result<FriezePattern, FriezeError> {
        if rows.len() != height + 3 || rows.iter().any(|r| r.len() != height + 4) {
            return Err(FriezeError::Shape(height));
        }
        Ok(FriezePattern { tag, height, rows })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn period(&self) -> usize {
        self.height + 3
    }

    pub fn rows(&self) -> &[Vec<QuadRat>] {
        &self.rows
    }

    /// `c(i, j)` for any `i`, or `None` off the strip `0 <= j - i <= n + 3`.
    pub fn entry(&self, i: i64, j: i64) -> Option<&QuadRat> {
        let k = j - i;
        if k < 0 || k > self.height as i64 + 3 {
            return None;
        }
        let p = self.period() as i64;
        Some(&self.rows[i.rem_euclid(p) as usize][k as usize])
    }

    fn at(&self, i: i64, j: i64) -> &QuadRat {
        self.entry(i, j)
            .unwrap_or_else(|| panic!("({i}, {j}) is off the frieze strip"))
    }

    /// Returns a copy with `c(i, j)` (and its periodic translates) replaced.
    pub fn with_entry(&self, i: i64, j: i64, value: QuadRat) -> FriezePattern {
        let mut out = self.clone();
        let p = self.period() as i64;
        out.rows[i.rem_euclid(p) as usize][(j - i) as usize] = value;
        out
    }

    /// Interior positions `(i, j)` of one period: rows `0..n+3`, diagonals `2..=n+1`.
    pub fn interior_positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let n = self.height as i64;
        (0..n + 3).flat_map(move |i| (2..=n + 1).map(move |k| (i, i + k)))
    }

    pub fn interior_entries(&self) -> impl Iterator<Item = &QuadRat> + '_ {
        self.interior_positions().map(|(i, j)| self.at(i, j))
    }

    fn borders_ok(&self) -> bool {
        let n = self.height;
        self.rows
            .iter()
            .all(|r| r[0].is_zero() && r[1].is_one() && r[n + 2].is_one() && r[n + 3].is_zero())
    }

    fn unimodular(&self) -> bool {
        let n = self.height as i64;
        self.borders_ok()
            && (0..n + 3).all(|i| {
                (i + 1..=n + i + 2).all(|j| {
                    let det = &(self.at(i, j) * self.at(i + 1, j + 1))
                        - &(self.at(i, j + 1) * self.at(i + 1, j));
                    det.is_one()
                })
            })
    }

    /// All 3x3 blocks lying inside the strip have vanishing determinant.
    fn tame(&self) -> bool {
        let n = self.height as i64;
        (0..n + 3).all(|i| {
            (i + 2..=i + n + 1).all(|j| {
                let m = |a: i64, b: i64| self.at(i + a, j + b);
                let minor = |r1: i64, r2: i64, c1: i64, c2: i64| {
                    &(m(r1, c1) * m(r2, c2)) - &(m(r1, c2) * m(r2, c1))
                };
                let det = &(&(m(0, 0) * &minor(1, 2, 1, 2)) - &(m(0, 1) * &minor(1, 2, 0, 2)))
                    + &(m(0, 2) * &minor(1, 2, 0, 1));
                det.is_zero()
            })
        })
    }

    fn glide(&self) -> bool {
        let n = self.height as i64;
        (0..n + 3).all(|i| (i..=n + i + 3).all(|j| self.at(i, j) == self.at(j, n + i + 3)))
    }

    pub fn is_nonzero(&self) -> bool {
        self.interior_entries().all(|e| !e.is_zero())
    }

    /// Exhaustive exact checks over one period.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            unimodular: self.unimodular(),
            tame: self.tame(),
            nonzero: self.is_nonzero(),
            glide: self.glide(),
        }
    }

    /// Negates every entry on the diagonals of the given parity.
    pub fn negate_diagonals(&self, parity: DiagonalParity) -> FriezePattern {
        let mut out = self.clone();
        for row in out.rows.iter_mut() {
            for (k, e) in row.iter_mut().enumerate() {
                if parity.matches(k as i64) {
                    *e = -&*e;
                }
            }
        }
        out
    }

    /// Negates the quiddity diagonal and every second diagonal from it.
    /// Only odd heights keep the borders intact.
    pub fn twist(&self) -> Result<FriezePattern, FriezeError> {
        if self.height % 2 == 0 {
            return Err(FriezeError::EvenHeight(self.height));
        }
        Ok(self.negate_diagonals(DiagonalParity::Even))
    }

    /// Borders intact and every interior entry a positive rational integer.
    pub fn is_conway_coxeter(&self) -> bool {
        self.borders_ok()
            && self
                .interior_entries()
                .all(|e| e.is_rational_integer() && e.x().is_positive())
    }

    pub fn classify_detailed(&self) -> Classification {
        let plain = |class| Classification {
            class,
            untwist_parity: None,
        };
        if !self.is_nonzero() {
            return plain(FriezeClass::ContainsZero);
        }
        if !self
            .rows
            .iter()
            .flatten()
            .all(QuadRat::is_rational_integer)
        {
            return plain(FriezeClass::NonIntegral);
        }
        if self.is_conway_coxeter() {
            return plain(FriezeClass::ConwayCoxeter);
        }
        for parity in [DiagonalParity::Even, DiagonalParity::Odd] {
            if self.negate_diagonals(parity).is_conway_coxeter() {
                return Classification {
                    class: FriezeClass::TwistedConwayCoxeter,
                    untwist_parity: Some(parity),
                };
            }
        }
        plain(FriezeClass::OtherIntegral)
    }

    pub fn classify(&self) -> FriezeClass {
        self.classify_detailed().class
    }

    pub fn extract_quiddity(&self) -> QuiddityCycle {
        let entries = self.rows.iter().map(|r| r[2].clone()).collect();
        QuiddityCycle::new(self.tag, entries).expect("frieze has at least three rows")
    }

    /// Signs of the entries on diagonals `1..=n+2`. Requires every interior
    /// entry to be real with `abs_sq > 1/2`.
    pub fn sign_grid(&self) -> Result<SignGrid, FriezeError> {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for (i, j) in self.interior_positions() {
            let e = self.at(i, j);
            if !e.is_rational() || e.abs_sq() <= half {
                return Err(FriezeError::PreconditionViolated {
                    i,
                    j,
                    entry: e.to_string(),
                });
            }
        }
        let n = self.height;
        let eps = self
            .rows
            .iter()
            .map(|r| {
                (1..=n + 2)
                    .map(|k| if r[k].x().is_positive() { 1 } else { -1 })
                    .collect()
            })
            .collect();
        Ok(SignGrid { height: n, eps })
    }

    pub fn check_sign_lemma(&self) -> Result<SignLemmaReport, FriezeError> {
        let g = self.sign_grid()?;
        let n = self.height as i64;
        let p = n + 3;
        let blocks = (0..p).all(|i| {
            (i + 2..=n + i + 1).all(|j| {
                g.eps(i, j) * g.eps(i + 1, j) * g.eps(i, j + 1) * g.eps(i + 1, j + 1) == 1
            })
        });
        let diagonal_products = (0..p).all(|i| {
            (1..=n + 1).all(|l| {
                g.eps(i, i + 2) * g.eps(i + 1, i + 2) * g.eps(i, i + l + 1) * g.eps(i + 1, i + l + 1)
                    == 1
            })
        });
        let first = g.eps(0, 2);
        let constant = (0..p).all(|i| g.eps(i, i + 2) == first);
        Ok(SignLemmaReport {
            blocks,
            diagonal_products,
            constant_quiddity_sign: constant,
            quiddity_sign: constant.then_some(first),
        })
    }

    /// Staircase layout of one period, one row per line.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| entry_symbol(e, self.tag)).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        let pad = |s: &str| format!("{:>w$}", s, w = width);
        let mut out = String::new();
        for (i, row) in cells.iter().enumerate() {
            let mut line = " ".repeat((width + 1) * i);
            line.push_str(&row.iter().map(|c| pad(c)).collect::<Vec<_>>().join(" "));
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_record(&self, domain: Domain) -> FriezeRecord {
        FriezeRecord {
            d: domain.label(),
            height: self.height,
            quiddity: self
                .extract_quiddity()
                .entries()
                .iter()
                .map(omega_strings)
                .collect(),
            class: self.classify(),
        }
    }

    /// Rebuilds a frieze from its record; the recorded class must match.
    pub fn from_record(rec: &FriezeRecord) -> Result<(Domain, FriezePattern), FriezeError> {
        let domain = Domain::parse_label(&rec.d)?;
        let tag = domain.tag();
        let entries = rec
            .quiddity
            .iter()
            .map(|[a, b]| parse_omega_strings(tag, a, b))
            .collect::<Result<Vec<_>, _>>()?;
        let f = FriezePattern::from_quiddity(&QuiddityCycle::new(tag, entries)?)?;
        if f.height != rec.height {
            return Err(FriezeError::Shape(rec.height));
        }
        let computed = f.classify();
        if computed != rec.class {
            return Err(FriezeError::ClassMismatch {
                recorded: rec.class,
                computed,
            });
        }
        Ok((domain, f))
    }
}

impl fmt::Display for FriezePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// JSON form: `{d, height, quiddity: [[a,b],...], class}` with `w`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FriezeRecord {
    pub d: String,
    pub height: usize,
    pub quiddity: Vec<[String; 2]>,
    pub class: FriezeClass,
}

/// Text for one frieze cell. Exceptional fields use `ω`/`ω̄`; other entries
/// fall back to the canonical `a+b*w` form.
pub fn entry_symbol(e: &QuadRat, tag: FieldTag) -> String {
    let Some(z) = e.to_quad_int() else {
        return e.to_string();
    };
    if z.is_rational_integer() || !tag.is_exceptional() {
        return z.to_string();
    }
    let w = QuadInt::omega(tag);
    let wbar = w.conj();
    for (base, sym) in [(&w, "ω"), (&wbar, "ω̄")] {
        // z = k * base with integer k?
        if let Some(k) = z.div_exact(base).filter(QuadInt::is_rational_integer) {
            return match k.a().to_string().as_str() {
                "1" => sym.to_string(),
                "-1" => format!("-{sym}"),
                s => format!("{s}{sym}"),
            };
        }
    }
    let b = z.b();
    let sign = if b.is_negative() { '-' } else { '+' };
    let coef = if b.abs() == BigInt::from(1) {
        String::new()
    } else {
        b.abs().to_string()
    };
    format!("{}{}{}ω", z.a(), sign, coef)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zt() -> FieldTag {
        FieldTag::gaussian()
    }

    fn cc(values: &[i64]) -> FriezePattern {
        FriezePattern::from_quiddity(&QuiddityCycle::from_ints(zt(), values)).unwrap()
    }

    fn ints(f: &FriezePattern, i: usize) -> Vec<i64> {
        f.rows()[i]
            .iter()
            .map(|e| {
                assert!(e.is_rational_integer());
                i64::try_from(e.x().to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn height_zero_frieze() {
        let f = cc(&[1, 1, 1]);
        assert_eq!(f.height(), 0);
        assert_eq!(ints(&f, 0), vec![0, 1, 1, 0]);
        assert!(f.validate().all());
        assert_eq!(f.classify(), FriezeClass::ConwayCoxeter);
        assert_eq!(f.extract_quiddity(), QuiddityCycle::from_ints(zt(), &[1, 1, 1]));
    }

    #[test]
    fn height_one_rows() {
        let f = cc(&[1, 2, 1, 2]);
        let interior: Vec<i64> = (0..4).map(|i| ints(&f, i)[2]).collect();
        assert_eq!(interior, vec![1, 2, 1, 2]);
        assert!(f.validate().all());
    }

    #[test]
    fn rejects_non_quiddity() {
        let c = QuiddityCycle::from_ints(zt(), &[1, 2, 2, 2]);
        assert_eq!(
            FriezePattern::from_quiddity(&c),
            Err(FriezeError::NotAQuiddityCycle)
        );
        let c = QuiddityCycle::from_ints(zt(), &[0, 0]);
        assert_eq!(FriezePattern::from_quiddity(&c), Err(FriezeError::InvalidLength(2)));
    }

    #[test]
    fn twisted_height_one() {
        let f = cc(&[-1, -2, -1, -2]);
        assert!(f.validate().all());
        let c = f.classify_detailed();
        assert_eq!(c.class, FriezeClass::TwistedConwayCoxeter);
        assert_eq!(c.untwist_parity, Some(DiagonalParity::Even));
        let r = f.check_sign_lemma().unwrap();
        assert!(r.all());
        assert_eq!(r.quiddity_sign, Some(-1));
    }

    #[test]
    fn twist_and_untwist() {
        let f = cc(&[1, 2, 1, 2]);
        let t = f.twist().unwrap();
        assert_eq!(t.extract_quiddity(), QuiddityCycle::from_ints(zt(), &[-1, -2, -1, -2]));
        assert!(t.validate().all());
        assert_eq!(t.twist().unwrap(), f);
        assert_eq!(cc(&[3, 1, 2, 2, 1]).twist(), Err(FriezeError::EvenHeight(2)));
    }

    #[test]
    fn corruption_breaks_unimodularity() {
        let f = cc(&[3, 1, 2, 2, 1]);
        let bumped = f.entry(0, 3).unwrap() + &QuadRat::one(zt());
        let g = f.with_entry(0, 3, bumped);
        assert!(!g.validate().unimodular);
    }

    #[test]
    fn sign_lemma_threshold() {
        // (1/2, 4, 1/2, 4) is a quiddity cycle over Q
        let t = zt();
        let half = QuadRat::from_parts(t, (1, 2), (0, 1));
        let four = QuadRat::from_int(t, 4);
        let c = QuiddityCycle::new(t, vec![half.clone(), four.clone(), half, four]).unwrap();
        let f = FriezePattern::from_quiddity(&c).unwrap();
        assert!(matches!(
            f.check_sign_lemma(),
            Err(FriezeError::PreconditionViolated { .. })
        ));
        assert_eq!(f.classify(), FriezeClass::NonIntegral);
    }

    #[test]
    fn glide_symmetry_on_pentagon() {
        let f = cc(&[3, 1, 2, 2, 1]);
        let n = f.height() as i64;
        for i in 0..5 {
            for j in i..=n + i + 3 {
                assert_eq!(f.entry(i, j), f.entry(j, n + i + 3));
            }
        }
    }

    #[test]
    fn record_round_trip() {
        let f = cc(&[-1, -2, -1, -2]);
        let rec = f.to_record(Domain::Integers);
        assert_eq!(rec.d, "Z");
        let json = serde_json::to_string(&rec).unwrap();
        let back: FriezeRecord = serde_json::from_str(&json).unwrap();
        let (dom, g) = FriezePattern::from_record(&back).unwrap();
        assert_eq!(dom, Domain::Integers);
        assert_eq!(g, f);
    }

    #[test]
    fn pretty_uses_omega_symbols() {
        let t = FieldTag::new(-11).unwrap();
        let w = QuadInt::omega(t);
        let c = QuiddityCycle::from_quad_ints(
            t,
            &[w.clone(), w.conj(), w.clone(), w.conj(), w.clone(), w.conj()],
        )
        .unwrap();
        let f = FriezePattern::from_quiddity(&c).unwrap();
        let text = f.pretty();
        let first: Vec<&str> = text.lines().next().unwrap().split_whitespace().collect();
        assert_eq!(first, vec!["0", "1", "ω", "2", "ω", "1", "0"]);
        let second: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
        assert_eq!(second, vec!["0", "1", "ω̄", "2", "ω̄", "1", "0"]);
    }
}
