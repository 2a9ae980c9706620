//! Exhaustive search for non-zero frieze patterns of a fixed height over `Z`
//! or `O_d`, with quiddity entries restricted to `abs_sq <= bound`.
//!
//! The search walks quiddity prefixes `q_0, ..., q_{n-1}` depth first. Frieze
//! entries are continuants of consecutive quiddity windows, so every window
//! of length `<= n` inside the prefix is an interior entry and must be
//! non-zero; a zero kills the branch. The remaining three entries are forced:
//! the row-0 entry `c(0, n+2) = K(q_0..q_n)` must equal 1, which fixes `q_n`
//! by one exact division, and the closing matrix fixes `q_{n+1}` and `q_{n+2}`.
//! Accepted cycles are re-checked with exact big-integer arithmetic.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eta::QuiddityCycle;
use crate::frieze::{FriezeClass, FriezePattern, FriezeRecord};
use crate::qint::{elements_up_to, Domain, FieldTag, QuadInt, QuadRat};

/// Largest height the search accepts.
pub const MAX_HEIGHT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("quiddity bound {0} is below 4")]
    BoundTooSmall(String),
    #[error("height {0} exceeds the supported maximum {MAX_HEIGHT}")]
    HeightTooLarge(usize),
    #[error("worker count must be positive")]
    NoWorkers,
    #[error("intermediate value overflowed 128-bit arithmetic")]
    Overflow,
    #[error("no census supplied")]
    EmptyInput,
    #[error("censuses over different rings: {0} and {1}")]
    MixedDomains(String, String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("invalid census record: {0}")]
    Record(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Positivity {
    All,
    /// Only positive rational integers as quiddity entries.
    PositiveOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub domain: Domain,
    pub height: usize,
    pub quiddity_bound_sq: BigRational,
    pub positivity: Positivity,
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(
        domain: Domain,
        height: usize,
        quiddity_bound_sq: BigRational,
        positivity: Positivity,
        workers: usize,
    ) -> Result<Self, EnumerateError> {
        let cfg = SearchConfig {
            domain,
            height,
            quiddity_bound_sq,
            positivity,
            workers,
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Bound `(n+1)^2`, complete for `Z` in both sign modes.
    pub fn integers(height: usize, positivity: Positivity) -> Self {
        let b = (height as i64 + 1).pow(2).max(4);
        SearchConfig {
            domain: Domain::Integers,
            height,
            quiddity_bound_sq: BigRational::from_integer(b.into()),
            positivity,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn check(&self) -> Result<(), EnumerateError> {
        if self.quiddity_bound_sq < BigRational::from_integer(4.into()) {
            return Err(EnumerateError::BoundTooSmall(self.quiddity_bound_sq.to_string()));
        }
        if self.height > MAX_HEIGHT {
            return Err(EnumerateError::HeightTooLarge(self.height));
        }
        if self.workers == 0 {
            return Err(EnumerateError::NoWorkers);
        }
        Ok(())
    }

    /// Whether the bound provably captures every non-zero frieze: true for
    /// `Z` and for non-exceptional `O_d` once the bound reaches `(n+1)^2`.
    pub fn is_complete(&self) -> bool {
        let needed = BigRational::from_integer(BigInt::from(self.height as i64 + 1).pow(2));
        let exceptional = match self.domain {
            Domain::Integers => false,
            Domain::Quadratic(t) => t.is_exceptional(),
        };
        !exceptional && self.quiddity_bound_sq >= needed
    }

    fn completeness_note(&self) -> String {
        match self.domain {
            Domain::Integers if self.is_complete() => format!(
                "complete: quiddity entries of non-zero integral friezes of height {} have |c| <= {}",
                self.height,
                self.height + 1
            ),
            Domain::Quadratic(t) if self.is_complete() => format!(
                "complete: over O_{} every non-zero frieze is integral, so |c| <= {}",
                t.d(),
                self.height + 1
            ),
            Domain::Quadratic(t) if t.is_exceptional() => format!(
                "bound-relative: all friezes over O_{} with quiddity entries of abs_sq <= {}; no a-priori bound is known",
                t.d(),
                self.quiddity_bound_sq
            ),
            _ => format!(
                "bound-relative: quiddity entries with abs_sq <= {} only; {} is needed for completeness",
                self.quiddity_bound_sq,
                (self.height + 1).pow(2)
            ),
        }
    }
}

/// Result of one search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub domain: Domain,
    pub height: usize,
    pub positivity: Positivity,
    pub bound_used: BigRational,
    /// Sorted by quiddity, entrywise in canonical element order.
    pub friezes: Vec<FriezePattern>,
    pub counts: BTreeMap<FriezeClass, usize>,
    pub complete: bool,
    pub completeness_note: String,
}

// ---------------------------------------------------------------------------
// fixed-width ring arithmetic for the hot loop

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Elt {
    a: i128,
    b: i128,
}

#[derive(Clone, Copy, Debug)]
struct Ring {
    trace: i128,
    norm_w: i128,
}

impl Ring {
    fn new(tag: FieldTag) -> Self {
        Ring {
            trace: tag.omega_trace() as i128,
            norm_w: tag.omega_norm() as i128,
        }
    }

    fn mul(&self, x: Elt, y: Elt) -> Option<Elt> {
        let bb = x.b.checked_mul(y.b)?;
        Some(Elt {
            a: x.a.checked_mul(y.a)?.checked_sub(self.norm_w.checked_mul(bb)?)?,
            b: x.a
                .checked_mul(y.b)?
                .checked_add(x.b.checked_mul(y.a)?)?
                .checked_add(self.trace.checked_mul(bb)?)?,
        })
    }

    fn sub(&self, x: Elt, y: Elt) -> Option<Elt> {
        Some(Elt {
            a: x.a.checked_sub(y.a)?,
            b: x.b.checked_sub(y.b)?,
        })
    }

    fn norm(&self, x: Elt) -> Option<i128> {
        x.a.checked_mul(x.a)?
            .checked_add(self.trace.checked_mul(x.a)?.checked_mul(x.b)?)?
            .checked_add(self.norm_w.checked_mul(x.b)?.checked_mul(x.b)?)
    }

    fn conj(&self, x: Elt) -> Option<Elt> {
        Some(Elt {
            a: x.a.checked_add(self.trace.checked_mul(x.b)?)?,
            b: x.b.checked_neg()?,
        })
    }

    /// `Ok(None)` when the quotient is not in the ring.
    fn div_exact(&self, x: Elt, y: Elt) -> Result<Option<Elt>, EnumerateError> {
        let n = self.norm(y).ok_or(EnumerateError::Overflow)?;
        let p = self
            .conj(y)
            .and_then(|c| self.mul(x, c))
            .ok_or(EnumerateError::Overflow)?;
        if p.a % n == 0 && p.b % n == 0 {
            Ok(Some(Elt {
                a: p.a / n,
                b: p.b / n,
            }))
        } else {
            Ok(None)
        }
    }
}

const ZERO: Elt = Elt { a: 0, b: 0 };
const ONE: Elt = Elt { a: 1, b: 0 };

fn to_elt(z: &QuadInt) -> Elt {
    Elt {
        a: z.a().to_i128().expect("candidate fits in i128"),
        b: z.b().to_i128().expect("candidate fits in i128"),
    }
}

struct Searcher {
    ring: Ring,
    height: usize,
    candidates: Vec<Elt>,
    bound: i128,
    bound_is_integer: bool,
    bound_q: BigRational,
    positive_only: bool,
}

impl Searcher {
    fn admissible(&self, z: Elt) -> Result<bool, EnumerateError> {
        if z == ZERO {
            return Ok(false);
        }
        if self.positive_only && (z.b != 0 || z.a <= 0) {
            return Ok(false);
        }
        let n = self.ring.norm(z).ok_or(EnumerateError::Overflow)?;
        if self.bound_is_integer {
            Ok(n <= self.bound)
        } else {
            Ok(BigRational::from_integer(n.into()) <= self.bound_q)
        }
    }

    /// `windows[s]` holds `(K(q_s..q_e), K(q_s..q_{e-1}))` for the current
    /// end `e`, where `K` is the continuant.
    fn extend(&self, windows: &[(Elt, Elt)], q: Elt) -> Result<Vec<(Elt, Elt)>, EnumerateError> {
        let mut next = Vec::with_capacity(windows.len() + 1);
        for &(k, prev) in windows {
            let v = self
                .ring
                .mul(q, k)
                .and_then(|x| self.ring.sub(x, prev))
                .ok_or(EnumerateError::Overflow)?;
            next.push((v, k));
        }
        next.push((q, ONE));
        Ok(next)
    }

    /// Interior windows (length `<= n`) ending at the newest entry are non-zero.
    fn windows_nonzero(&self, windows: &[(Elt, Elt)]) -> bool {
        let len = windows.len();
        windows
            .iter()
            .enumerate()
            .filter(|(s, _)| len - s <= self.height)
            .all(|(_, (k, _))| *k != ZERO)
    }

    fn search_from(
        &self,
        prefix: &mut Vec<Elt>,
        windows: &[(Elt, Elt)],
        out: &mut Vec<Vec<Elt>>,
    ) -> Result<(), EnumerateError> {
        let n = self.height;
        if prefix.len() == n {
            return self.close(prefix, windows, out);
        }
        for &q in &self.candidates {
            let next = self.extend(windows, q)?;
            if !self.windows_nonzero(&next) {
                continue;
            }
            prefix.push(q);
            self.search_from(prefix, &next, out)?;
            prefix.pop();
        }
        Ok(())
    }

    /// Forces `q_n`, `q_{n+1}`, `q_{n+2}` and checks the full cycle.
    fn close(
        &self,
        prefix: &[Elt],
        windows: &[(Elt, Elt)],
        out: &mut Vec<Vec<Elt>>,
    ) -> Result<(), EnumerateError> {
        let n = self.height;
        // K(q_0..q_{n-1}) and K(q_0..q_{n-2})
        let (k_n, k_nm1) = if n == 0 { (ONE, ZERO) } else { windows[0] };
        if k_n == ZERO {
            return Ok(());
        }
        let numer = Elt {
            a: k_nm1.a.checked_add(1).ok_or(EnumerateError::Overflow)?,
            b: k_nm1.b,
        };
        let Some(q_n) = self.ring.div_exact(numer, k_n)? else {
            return Ok(());
        };
        if !self.admissible(q_n)? {
            return Ok(());
        }
        let windows = self.extend(windows, q_n)?;
        if !self.windows_nonzero(&windows) {
            return Ok(());
        }
        // closing entries: x = K(q_0..q_{n-1}), y = K(q_1..q_n)
        let x = k_n;
        let y = if n == 0 { ONE } else { windows[1].0 };
        if !self.admissible(x)? || !self.admissible(y)? {
            return Ok(());
        }
        let mut cycle = prefix.to_vec();
        cycle.extend([q_n, x, y]);
        if self.all_interior_nonzero(&cycle)? {
            out.push(cycle);
        }
        Ok(())
    }

    fn all_interior_nonzero(&self, cycle: &[Elt]) -> Result<bool, EnumerateError> {
        let m = cycle.len();
        let n = self.height;
        for i in 0..m {
            let (mut prev, mut cur) = (ZERO, ONE);
            for k in 0..n {
                let q = cycle[(i + k) % m];
                let next = self
                    .ring
                    .mul(q, cur)
                    .and_then(|v| self.ring.sub(v, prev))
                    .ok_or(EnumerateError::Overflow)?;
                if next == ZERO {
                    return Ok(false);
                }
                prev = cur;
                cur = next;
            }
        }
        Ok(true)
    }
}

/// Runs the search. Output is sorted and independent of the worker count.
pub fn enumerate_friezes(cfg: &SearchConfig) -> Result<CensusResult, EnumerateError> {
    enumerate_friezes_with_progress(cfg, &|_, _| {})
}

/// As [`enumerate_friezes`], calling `progress(done, total)` after each
/// top-level branch finishes.
pub fn enumerate_friezes_with_progress(
    cfg: &SearchConfig,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<CensusResult, EnumerateError> {
    cfg.check()?;
    let tag = cfg.domain.tag();
    let positive_only = cfg.positivity == Positivity::PositiveOnly;
    let integers_only = matches!(cfg.domain, Domain::Integers);
    let candidates: Vec<Elt> = elements_up_to(tag, &cfg.quiddity_bound_sq)
        .iter()
        .filter(|z| !z.is_zero())
        .filter(|z| !integers_only || z.is_rational_integer())
        .filter(|z| !positive_only || (z.is_rational_integer() && z.a() > &BigInt::zero()))
        .map(to_elt)
        .collect();
    let bound_is_integer = cfg.quiddity_bound_sq.is_integer();
    let searcher = Searcher {
        ring: Ring::new(tag),
        height: cfg.height,
        candidates,
        bound: if bound_is_integer {
            cfg.quiddity_bound_sq.to_integer().to_i128().unwrap_or(i128::MAX)
        } else {
            0
        },
        bound_is_integer,
        bound_q: cfg.quiddity_bound_sq.clone(),
        positive_only,
    };

    let branches: Vec<Option<Elt>> = if cfg.height == 0 {
        vec![None]
    } else {
        searcher.candidates.iter().copied().map(Some).collect()
    };
    let total = branches.len();
    let done = AtomicUsize::new(0);
    let run_branch = |first: &Option<Elt>| -> Result<Vec<Vec<Elt>>, EnumerateError> {
        let mut out = Vec::new();
        match first {
            None => searcher.search_from(&mut Vec::new(), &[], &mut out)?,
            Some(q) => {
                let w = searcher.extend(&[], *q)?;
                if searcher.windows_nonzero(&w) {
                    searcher.search_from(&mut vec![*q], &w, &mut out)?;
                }
            }
        }
        let k = done.fetch_add(1, Ordering::SeqCst) + 1;
        progress(k, total);
        Ok(out)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| EnumerateError::ThreadPool(e.to_string()))?;
    let parts: Vec<Result<Vec<Vec<Elt>>, EnumerateError>> =
        pool.install(|| branches.par_iter().map(run_branch).collect());

    let mut cycles: Vec<Vec<QuadInt>> = Vec::new();
    for part in parts {
        for c in part? {
            cycles.push(c.iter().map(|e| QuadInt::new(tag, e.a, e.b)).collect());
        }
    }
    cycles.sort();
    cycles.dedup();

    let friezes: Vec<FriezePattern> = cycles
        .iter()
        .map(|c| {
            let cycle = QuiddityCycle::from_quad_ints(tag, c).expect("tags agree");
            let f = FriezePattern::from_quiddity(&cycle)
                .expect("search only accepts quiddity cycles");
            debug_assert!(f.validate().all());
            f
        })
        .collect();
    let counts = histogram(&friezes);
    Ok(CensusResult {
        domain: cfg.domain,
        height: cfg.height,
        positivity: cfg.positivity,
        bound_used: cfg.quiddity_bound_sq.clone(),
        friezes,
        counts,
        complete: cfg.is_complete(),
        completeness_note: cfg.completeness_note(),
    })
}

fn histogram(friezes: &[FriezePattern]) -> BTreeMap<FriezeClass, usize> {
    let mut counts: BTreeMap<FriezeClass, usize> = FriezeClass::ALL.iter().map(|&c| (c, 0)).collect();
    for f in friezes {
        *counts.entry(f.classify()).or_insert(0) += 1;
    }
    counts
}

/// Class histogram of a census. Panics if any frieze is `OtherIntegral`,
/// which the integral classification rules out.
pub fn count_by_class(result: &CensusResult) -> BTreeMap<FriezeClass, usize> {
    let counts = histogram(&result.friezes);
    assert_eq!(
        counts[&FriezeClass::OtherIntegral],
        0,
        "integral non-zero frieze that is neither Conway-Coxeter nor twisted"
    );
    counts
}

/// The subring generated by all entries of the given censuses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubringReport {
    Integers,
    /// The order `Z[f*w]` of conductor `f` in `O_d`; `f = 1` is `O_d` itself.
    Order { tag: FieldTag, conductor: BigInt },
}

impl SubringReport {
    pub fn is_maximal_order(&self) -> bool {
        matches!(self, SubringReport::Order { conductor, .. } if *conductor == BigInt::from(1))
    }

    /// Membership of a field element in the reported subring.
    pub fn contains(&self, z: &QuadRat) -> bool {
        match self {
            SubringReport::Integers => z.is_rational_integer(),
            SubringReport::Order { conductor, .. } => match z.to_quad_int() {
                Some(q) => q.b().is_multiple_of(conductor),
                None => false,
            },
        }
    }
}

impl std::fmt::Display for SubringReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubringReport::Integers => f.write_str("Z"),
            SubringReport::Order { tag, conductor } if *conductor == BigInt::from(1) => {
                write!(f, "O_{}", tag.d())
            }
            SubringReport::Order { tag, conductor } => {
                write!(f, "Z[{}*w] in O_{}", conductor, tag.d())
            }
        }
    }
}

pub fn frieze_subring_report(results: &[CensusResult]) -> Result<SubringReport, EnumerateError> {
    let first = results.first().ok_or(EnumerateError::EmptyInput)?;
    if let Some(other) = results.iter().find(|r| r.domain != first.domain) {
        return Err(EnumerateError::MixedDomains(
            first.domain.label(),
            other.domain.label(),
        ));
    }
    let mut g = BigInt::zero();
    for f in results.iter().flat_map(|r| &r.friezes) {
        for e in f.rows().iter().flatten() {
            let z = e.to_quad_int().expect("census entries are integral");
            g = g.gcd(z.b());
        }
    }
    let report = if g.is_zero() {
        SubringReport::Integers
    } else {
        SubringReport::Order {
            tag: first.domain.tag(),
            conductor: g,
        }
    };
    debug_assert!(results
        .iter()
        .flat_map(|r| &r.friezes)
        .all(|f| f.rows().iter().flatten().all(|e| report.contains(e))));
    Ok(report)
}

// ---------------------------------------------------------------------------
// serialisation

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub d: String,
    pub height: usize,
    pub positivity: Positivity,
    pub bound_sq: String,
    pub complete: bool,
    pub completeness_note: String,
    pub counts: BTreeMap<FriezeClass, usize>,
    pub friezes: Vec<FriezeRecord>,
}

impl CensusResult {
    pub fn to_record(&self) -> CensusRecord {
        CensusRecord {
            d: self.domain.label(),
            height: self.height,
            positivity: self.positivity,
            bound_sq: self.bound_used.to_string(),
            complete: self.complete,
            completeness_note: self.completeness_note.clone(),
            counts: self.counts.clone(),
            friezes: self.friezes.iter().map(|f| f.to_record(self.domain)).collect(),
        }
    }

    /// Rebuilds a census from JSON data, re-deriving every frieze.
    pub fn from_record(rec: &CensusRecord) -> Result<CensusResult, EnumerateError> {
        let bad = |e: String| EnumerateError::Record(e);
        let domain = Domain::parse_label(&rec.d).map_err(|e| bad(e.to_string()))?;
        let bound = QuadRat::parse(domain.tag(), &rec.bound_sq).map_err(|e| bad(e.to_string()))?;
        let friezes = rec
            .friezes
            .iter()
            .map(|fr| {
                FriezePattern::from_record(fr)
                    .map(|(_, f)| f)
                    .map_err(|e| bad(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let counts = histogram(&friezes);
        if counts != rec.counts {
            return Err(bad("class counts do not match the friezes".into()));
        }
        Ok(CensusResult {
            domain,
            height: rec.height,
            positivity: rec.positivity,
            bound_used: bound.x().clone(),
            friezes,
            counts,
            complete: rec.complete,
            completeness_note: rec.completeness_note.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn quiddities(r: &CensusResult) -> Vec<Vec<String>> {
        r.friezes
            .iter()
            .map(|f| {
                f.extract_quiddity()
                    .to_quad_ints()
                    .unwrap()
                    .iter()
                    .map(|z| z.to_string())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            SearchConfig::new(Domain::Integers, 1, q(3), Positivity::All, 1),
            Err(EnumerateError::BoundTooSmall(_))
        ));
        assert!(matches!(
            SearchConfig::new(Domain::Integers, 1, q(4), Positivity::All, 0),
            Err(EnumerateError::NoWorkers)
        ));
    }

    #[test]
    fn positive_height_two() {
        let r = enumerate_friezes(&SearchConfig::integers(2, Positivity::PositiveOnly)).unwrap();
        assert_eq!(r.friezes.len(), 5);
        assert!(r.complete);
    }

    #[test]
    fn height_zero() {
        let r = enumerate_friezes(&SearchConfig::integers(0, Positivity::All)).unwrap();
        assert_eq!(quiddities(&r), vec![vec!["1", "1", "1"]]);
    }

    #[test]
    fn minus_five_height_one() {
        let t = FieldTag::new(-5).unwrap();
        let cfg = SearchConfig::new(Domain::Quadratic(t), 1, q(16), Positivity::All, 1).unwrap();
        let r = enumerate_friezes(&cfg).unwrap();
        let mut got = quiddities(&r);
        got.sort();
        let mut want: Vec<Vec<String>> = [[1, 2, 1, 2], [2, 1, 2, 1], [-1, -2, -1, -2], [-2, -1, -2, -1]]
            .iter()
            .map(|c| c.iter().map(|v| v.to_string()).collect())
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert!(r.complete);
    }

    #[test]
    fn minus_two_contains_figure_cycle() {
        let t = FieldTag::new(-2).unwrap();
        let cfg = SearchConfig::new(Domain::Quadratic(t), 1, q(16), Positivity::All, 1).unwrap();
        let r = enumerate_friezes(&cfg).unwrap();
        let w = QuadInt::omega(t);
        let want = vec![w.clone(), w.conj(), w.clone(), w.conj()];
        assert!(r
            .friezes
            .iter()
            .any(|f| f.extract_quiddity().to_quad_ints().unwrap() == want));
        assert!(!r.complete);
    }

    #[test]
    fn class_counts() {
        let r = enumerate_friezes(&SearchConfig::integers(1, Positivity::All)).unwrap();
        let c = count_by_class(&r);
        assert_eq!(c[&FriezeClass::ConwayCoxeter], 2);
        assert_eq!(c[&FriezeClass::TwistedConwayCoxeter], 2);
        let r = enumerate_friezes(&SearchConfig::integers(2, Positivity::All)).unwrap();
        let c = count_by_class(&r);
        assert_eq!(c[&FriezeClass::ConwayCoxeter], 5);
        assert_eq!(c[&FriezeClass::TwistedConwayCoxeter], 0);
    }

    #[test]
    fn subring_reports() {
        let run = |d: i64| {
            let t = FieldTag::new(d).unwrap();
            (1..=2)
                .map(|n| {
                    enumerate_friezes(
                        &SearchConfig::new(Domain::Quadratic(t), n, q(16), Positivity::All, 2)
                            .unwrap(),
                    )
                    .unwrap()
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(frieze_subring_report(&run(-10)).unwrap(), SubringReport::Integers);
        assert!(frieze_subring_report(&run(-2)).unwrap().is_maximal_order());
        assert_eq!(frieze_subring_report(&[]), Err(EnumerateError::EmptyInput));
    }

    #[test]
    fn census_record_round_trip() {
        let r = enumerate_friezes(&SearchConfig::integers(3, Positivity::All)).unwrap();
        let json = serde_json::to_string(&r.to_record()).unwrap();
        let rec: CensusRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(CensusResult::from_record(&rec).unwrap(), r);
    }

    #[test]
    fn fixed_width_ring_matches_big_arithmetic() {
        let t = FieldTag::new(-7).unwrap();
        let ring = Ring::new(t);
        let x = QuadInt::new(t, 3, -2);
        let y = QuadInt::new(t, -1, 5);
        let p = ring.mul(to_elt(&x), to_elt(&y)).unwrap();
        assert_eq!(QuadInt::new(t, p.a, p.b), &x * &y);
        assert_eq!(ring.norm(to_elt(&x)).unwrap(), x.norm().to_i128().unwrap());
        let prod = to_elt(&(&x * &y));
        assert_eq!(ring.div_exact(prod, to_elt(&y)).unwrap(), Some(to_elt(&x)));
    }
}
