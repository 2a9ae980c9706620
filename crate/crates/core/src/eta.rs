//! The `eta`-matrix calculus on quiddity cycles.
//!
//! `eta(c) = [[c, -1], [1, 0]]`. A cyclic sequence `(c_1, ..., c_m)` is a
//! quiddity cycle when `eta(c_1) * ... * eta(c_m) = -id`. Three local rewrites
//! shorten a cycle while preserving the product up to sign:
//!
//! - `RemoveOne`: `eta(a) eta(1) eta(b) = eta(a-1) eta(b-1)`
//! - `RemoveMinusOne`: `eta(a) eta(-1) eta(b) = -eta(a+1) eta(b+1)`
//! - `MergeZero`: `eta(a) eta(0) eta(b) = -eta(a+b)`
//!
//! Positions are 0-based and cyclic. A rewrite at position `p` of a cycle of
//! length `m` touches the neighbours `l = p-1 (mod m)` and `r = p+1 (mod m)`.
//! The surviving entries keep their relative order; for `MergeZero` the merged
//! value sits in the slot of `l` and `r` is dropped.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qint::{FieldTag, QuadError, QuadInt, QuadRat};

/// A 2x2 matrix over `Q(sqrt(d))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub m11: QuadRat,
    pub m12: QuadRat,
    pub m21: QuadRat,
    pub m22: QuadRat,
}

impl Mat2 {
    pub fn identity(tag: FieldTag) -> Self {
        Mat2 {
            m11: QuadRat::one(tag),
            m12: QuadRat::zero(tag),
            m21: QuadRat::zero(tag),
            m22: QuadRat::one(tag),
        }
    }

    pub fn eta(c: &QuadRat) -> Self {
        let tag = c.tag();
        Mat2 {
            m11: c.clone(),
            m12: -QuadRat::one(tag),
            m21: QuadRat::one(tag),
            m22: QuadRat::zero(tag),
        }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            m11: &self.m11 * &o.m11 + &self.m12 * &o.m21,
            m12: &self.m11 * &o.m12 + &self.m12 * &o.m22,
            m21: &self.m21 * &o.m11 + &self.m22 * &o.m21,
            m22: &self.m21 * &o.m12 + &self.m22 * &o.m22,
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            m11: -&self.m11,
            m12: -&self.m12,
            m21: -&self.m21,
            m22: -&self.m22,
        }
    }

    pub fn det(&self) -> QuadRat {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn is_identity(&self) -> bool {
        self.m11.is_one() && self.m12.is_zero() && self.m21.is_zero() && self.m22.is_one()
    }

    pub fn is_neg_identity(&self) -> bool {
        self.neg().is_identity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("a cycle needs at least one entry")]
    Empty,
    #[error("entry has d = {found}, cycle has d = {expected}")]
    FieldMismatch { expected: i64, found: i64 },
    #[error("not a quiddity cycle: the eta-product is not -id")]
    NotAQuiddityCycle,
    #[error("position {position} out of range for a cycle of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("rule {rule} needs a cycle of length at least 3, got {len}")]
    TooShort { rule: RewriteRule, len: usize },
    #[error("rule {rule} does not apply to entry {entry} at position {position}")]
    RuleMismatch {
        rule: RewriteRule,
        position: usize,
        entry: String,
    },
    #[error("cycle entry {entry} is not in the ring of integers")]
    NotIntegral { entry: String },
    #[error("reduction stuck at {cycle}: no entry 1 and no non-adjacent pair from {{-1, 0}}")]
    Stuck {
        cycle: QuiddityCycle,
        partial: Box<ReductionTrace>,
    },
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// A finite cyclic sequence of field elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuiddityCycle {
    tag: FieldTag,
    entries: Vec<QuadRat>,
}

impl QuiddityCycle {
    pub fn new(tag: FieldTag, entries: Vec<QuadRat>) -> Result<Self, EtaError> {
        if entries.is_empty() {
            return Err(EtaError::Empty);
        }
        if let Some(bad) = entries.iter().find(|e| e.tag() != tag) {
            return Err(EtaError::FieldMismatch {
                expected: tag.d(),
                found: bad.tag().d(),
            });
        }
        Ok(QuiddityCycle { tag, entries })
    }

    pub fn from_ints(tag: FieldTag, values: &[i64]) -> Self {
        let entries = values.iter().map(|&v| QuadRat::from_int(tag, v)).collect();
        QuiddityCycle::new(tag, entries).expect("non-empty integer cycle")
    }

    pub fn from_quad_ints(tag: FieldTag, values: &[QuadInt]) -> Result<Self, EtaError> {
        QuiddityCycle::new(tag, values.iter().map(QuadInt::to_quad_rat).collect())
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn entries(&self) -> &[QuadRat] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &QuadRat {
        &self.entries[i % self.entries.len()]
    }

    /// The cycle read from position `k` onward.
    pub fn rotated(&self, k: usize) -> QuiddityCycle {
        let mut e = self.entries.clone();
        let m = e.len();
        e.rotate_left(k % m);
        QuiddityCycle {
            tag: self.tag,
            entries: e,
        }
    }

    /// Ordered product `eta(c_0) * ... * eta(c_{m-1})`.
    pub fn eta_product(&self) -> Mat2 {
        self.entries
            .iter()
            .fold(Mat2::identity(self.tag), |acc, c| acc.mul(&Mat2::eta(c)))
    }

    pub fn is_quiddity_cycle(&self) -> bool {
        self.entries.len() >= 2 && self.eta_product().is_neg_identity()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(QuadRat::is_integral)
    }

    pub fn to_quad_ints(&self) -> Option<Vec<QuadInt>> {
        self.entries.iter().map(QuadRat::to_quad_int).collect()
    }

    pub fn to_record(&self) -> CycleRecord {
        CycleRecord {
            d: self.tag.d(),
            entries: self.entries.iter().map(omega_strings).collect(),
        }
    }

    pub fn from_record(rec: &CycleRecord) -> Result<Self, EtaError> {
        let tag = FieldTag::new(rec.d)?;
        let entries = rec
            .entries
            .iter()
            .map(|[a, b]| parse_omega_strings(tag, a, b))
            .collect::<Result<Vec<_>, _>>()?;
        QuiddityCycle::new(tag, entries)
    }
}

impl fmt::Display for QuiddityCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match e.to_quad_int() {
                Some(z) => write!(f, "{z}")?,
                None => write!(f, "{e}")?,
            }
        }
        write!(f, ")")
    }
}

/// `w`-coordinates as decimal strings (`"p"` or `"p/q"`).
pub(crate) fn omega_strings(z: &QuadRat) -> [String; 2] {
    let (a, b) = z.omega_coords();
    [a.to_string(), b.to_string()]
}

pub(crate) fn parse_omega_strings(tag: FieldTag, a: &str, b: &str) -> Result<QuadRat, QuadError> {
    let p = |s: &str| -> Result<BigRational, QuadError> {
        let z = QuadRat::parse(tag, s)?;
        if z.is_rational() {
            Ok(z.x().clone())
        } else {
            Err(QuadError::Parse {
                input: s.to_string(),
                reason: "coordinate must be rational".into(),
            })
        }
    };
    Ok(QuadRat::from_omega_coords(tag, p(a)?, p(b)?))
}

/// JSON form of a cycle: `d` plus `w`-coordinate string pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub d: i64,
    pub entries: Vec<[String; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RewriteRule {
    /// `eta(a) eta(1) eta(b) = eta(a-1) eta(b-1)`
    RemoveOne,
    /// `eta(a) eta(-1) eta(b) = -eta(a+1) eta(b+1)`
    RemoveMinusOne,
    /// `eta(a) eta(0) eta(b) = -eta(a+b)`
    MergeZero,
}

impl RewriteRule {
    fn pivot_value(self) -> i64 {
        match self {
            RewriteRule::RemoveOne => 1,
            RewriteRule::RemoveMinusOne => -1,
            RewriteRule::MergeZero => 0,
        }
    }

    pub fn flips_sign(self) -> bool {
        !matches!(self, RewriteRule::RemoveOne)
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RewriteRule::RemoveOne => "remove-one",
            RewriteRule::RemoveMinusOne => "remove-minus-one",
            RewriteRule::MergeZero => "merge-zero",
        };
        f.write_str(s)
    }
}

fn neighbours(m: usize, p: usize) -> (usize, usize) {
    ((p + m - 1) % m, (p + 1) % m)
}

fn removed_positions(rule: RewriteRule, m: usize, p: usize) -> Vec<usize> {
    let (_, r) = neighbours(m, p);
    match rule {
        RewriteRule::MergeZero => vec![p, r],
        _ => vec![p],
    }
}

/// Applies one rewrite at `position`. Returns the new cycle and whether the
/// rule introduced a global sign.
pub fn rewrite_step(
    cycle: &QuiddityCycle,
    rule: RewriteRule,
    position: usize,
) -> Result<(QuiddityCycle, bool), EtaError> {
    let m = cycle.len();
    if position >= m {
        return Err(EtaError::PositionOutOfRange { position, len: m });
    }
    if m < 3 {
        return Err(EtaError::TooShort { rule, len: m });
    }
    let tag = cycle.tag;
    let pivot = &cycle.entries[position];
    if *pivot != QuadRat::from_int(tag, rule.pivot_value()) {
        return Err(EtaError::RuleMismatch {
            rule,
            position,
            entry: pivot.to_string(),
        });
    }
    let (l, r) = neighbours(m, position);
    let mut work = cycle.entries.clone();
    let one = QuadRat::one(tag);
    match rule {
        RewriteRule::RemoveOne => {
            work[l] = &work[l] - &one;
            work[r] = &work[r] - &one;
        }
        RewriteRule::RemoveMinusOne => {
            work[l] = &work[l] + &one;
            work[r] = &work[r] + &one;
        }
        RewriteRule::MergeZero => {
            work[l] = &work[l] + &work[r];
        }
    }
    let removed = removed_positions(rule, m, position);
    let entries = work
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, e)| e)
        .collect();
    Ok((QuiddityCycle { tag, entries }, rule.flips_sign()))
}

/// Inverse of [`rewrite_step`]: produces the cycle `before` such that
/// `rewrite_step(before, rule, position)` yields `after`. `position` indexes
/// the longer cycle. `split` is the value given to the right neighbour when
/// undoing `MergeZero` (ignored otherwise).
pub fn inverse_rewrite(
    after: &QuiddityCycle,
    rule: RewriteRule,
    position: usize,
    split: &QuadRat,
) -> Result<QuiddityCycle, EtaError> {
    let tag = after.tag;
    let m = after.len() + if rule == RewriteRule::MergeZero { 2 } else { 1 };
    if position >= m {
        return Err(EtaError::PositionOutOfRange { position, len: m });
    }
    if m < 3 {
        return Err(EtaError::TooShort { rule, len: m });
    }
    let removed = removed_positions(rule, m, position);
    let (l, r) = neighbours(m, position);
    let mut slots: Vec<QuadRat> = vec![QuadRat::zero(tag); m];
    let mut it = after.entries.iter();
    for (i, slot) in slots.iter_mut().enumerate() {
        if !removed.contains(&i) {
            *slot = it.next().expect("slot count matches").clone();
        }
    }
    let one = QuadRat::one(tag);
    slots[position] = QuadRat::from_int(tag, rule.pivot_value());
    match rule {
        RewriteRule::RemoveOne => {
            slots[l] = &slots[l] + &one;
            slots[r] = &slots[r] + &one;
        }
        RewriteRule::RemoveMinusOne => {
            slots[l] = &slots[l] - &one;
            slots[r] = &slots[r] - &one;
        }
        RewriteRule::MergeZero => {
            slots[l] = &slots[l] - split;
            slots[r] = split.clone();
        }
    }
    Ok(QuiddityCycle {
        tag,
        entries: slots,
    })
}

/// Two indices with `abs_sq < 4`; for cycles longer than 3 they are not
/// cyclically adjacent. The leftmost such pair is returned.
pub fn small_entry_witnesses(cycle: &QuiddityCycle) -> Result<(usize, usize), EtaError> {
    if !cycle.is_quiddity_cycle() {
        return Err(EtaError::NotAQuiddityCycle);
    }
    let four = BigRational::from_integer(4.into());
    let small: Vec<usize> = (0..cycle.len())
        .filter(|&i| cycle.entries[i].abs_sq() < four)
        .collect();
    let m = cycle.len();
    let found = small.iter().enumerate().find_map(|(n, &j)| {
        small[n + 1..]
            .iter()
            .find(|&&k| m <= 3 || (k - j >= 2 && !(j == 0 && k == m - 1)))
            .map(|&k| (j, k))
    });
    Ok(found.unwrap_or_else(|| {
        panic!("quiddity cycle {cycle} has no two non-adjacent entries of absolute value < 2")
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub rule: RewriteRule,
    pub position: usize,
    pub before: QuiddityCycle,
    pub after: QuiddityCycle,
    pub sign_flip: bool,
}

impl ReductionStep {
    /// The value needed by [`inverse_rewrite`] to undo this step.
    pub fn split(&self) -> QuadRat {
        let (_, r) = neighbours(self.before.len(), self.position);
        self.before.entries[r].clone()
    }
}

/// The record of a reduction from `original` down to `terminal`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionTrace {
    pub original: QuiddityCycle,
    pub steps: Vec<ReductionStep>,
    pub terminal: QuiddityCycle,
}

impl ReductionTrace {
    /// Re-applies every step from the original cycle and checks the snapshots.
    pub fn replay(&self) -> Result<QuiddityCycle, EtaError> {
        let mut cur = self.original.clone();
        for s in &self.steps {
            if s.before != cur {
                return Err(EtaError::NotAQuiddityCycle);
            }
            let (next, flip) = rewrite_step(&cur, s.rule, s.position)?;
            if next != s.after || flip != s.sign_flip {
                return Err(EtaError::NotAQuiddityCycle);
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Rebuilds the original cycle from the terminal one by inverse rewrites.
    pub fn unwind(&self) -> Result<QuiddityCycle, EtaError> {
        let mut cur = self.terminal.clone();
        for s in self.steps.iter().rev() {
            cur = inverse_rewrite(&cur, s.rule, s.position, &s.split())?;
        }
        Ok(cur)
    }

    /// Product of the sign flips over the whole trace (`true` means `-1`).
    pub fn net_sign_flip(&self) -> bool {
        self.steps.iter().filter(|s| s.sign_flip).count() % 2 == 1
    }

    pub fn to_record(&self) -> TraceRecord {
        TraceRecord {
            original: self.original.to_record(),
            steps: self
                .steps
                .iter()
                .map(|s| StepRecord {
                    rule: s.rule,
                    position: s.position,
                    sign_flip: s.sign_flip,
                    before: s.before.to_record(),
                    after: s.after.to_record(),
                })
                .collect(),
            terminal: self.terminal.to_record(),
        }
    }

    /// Parses a record and checks it by replaying every step.
    pub fn from_record(rec: &TraceRecord) -> Result<Self, EtaError> {
        let steps = rec
            .steps
            .iter()
            .map(|s| {
                Ok(ReductionStep {
                    rule: s.rule,
                    position: s.position,
                    sign_flip: s.sign_flip,
                    before: QuiddityCycle::from_record(&s.before)?,
                    after: QuiddityCycle::from_record(&s.after)?,
                })
            })
            .collect::<Result<Vec<_>, EtaError>>()?;
        let trace = ReductionTrace {
            original: QuiddityCycle::from_record(&rec.original)?,
            steps,
            terminal: QuiddityCycle::from_record(&rec.terminal)?,
        };
        if trace.replay()? != trace.terminal {
            return Err(EtaError::NotAQuiddityCycle);
        }
        Ok(trace)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub rule: RewriteRule,
    pub position: usize,
    pub sign_flip: bool,
    pub before: CycleRecord,
    pub after: CycleRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub original: CycleRecord,
    pub steps: Vec<StepRecord>,
    pub terminal: CycleRecord,
}

fn is_terminal(c: &QuiddityCycle) -> bool {
    let tag = c.tag;
    match c.len() {
        2 => c.entries.iter().all(QuadRat::is_zero),
        3 => c.entries.iter().all(|e| *e == QuadRat::one(tag)),
        _ => false,
    }
}

/// Reduces an integral quiddity cycle to `(0,0)` or `(1,1,1)`.
///
/// Strategy: remove the leftmost entry equal to 1; failing that, take the
/// leftmost non-adjacent pair of entries from `{-1, 0}` and remove both, so
/// the two sign flips cancel. Over `O_d` with `d` outside
/// [`EXCEPTIONAL_D`](crate::qint::EXCEPTIONAL_D) this always succeeds; for
/// the exceptional fields it may stop with [`EtaError::Stuck`].
pub fn reduce_to_canonical(cycle: &QuiddityCycle) -> Result<ReductionTrace, EtaError> {
    if !cycle.is_quiddity_cycle() {
        return Err(EtaError::NotAQuiddityCycle);
    }
    if let Some(bad) = cycle.entries.iter().find(|e| !e.is_integral()) {
        return Err(EtaError::NotIntegral {
            entry: bad.to_string(),
        });
    }
    let tag = cycle.tag;
    let one = QuadRat::one(tag);
    let minus_one = -QuadRat::one(tag);
    let mut steps = Vec::new();
    let mut cur = cycle.clone();
    let push = |cur: &QuiddityCycle, rule, position, steps: &mut Vec<ReductionStep>| {
        let (next, sign_flip) =
            rewrite_step(cur, rule, position).expect("reduction picks applicable rewrites");
        steps.push(ReductionStep {
            rule,
            position,
            before: cur.clone(),
            after: next.clone(),
            sign_flip,
        });
        next
    };
    while !is_terminal(&cur) {
        let m = cur.len();
        let stuck = |cur: &QuiddityCycle, steps: &Vec<ReductionStep>| EtaError::Stuck {
            cycle: cur.clone(),
            partial: Box::new(ReductionTrace {
                original: cycle.clone(),
                steps: steps.clone(),
                terminal: cur.clone(),
            }),
        };
        if m < 4 {
            return Err(stuck(&cur, &steps));
        }
        if let Some(p) = cur.entries.iter().position(|e| *e == one) {
            cur = push(&cur, RewriteRule::RemoveOne, p, &mut steps);
            continue;
        }
        let rule_at = |e: &QuadRat| {
            if e.is_zero() {
                Some(RewriteRule::MergeZero)
            } else if *e == minus_one {
                Some(RewriteRule::RemoveMinusOne)
            } else {
                None
            }
        };
        let cands: Vec<(usize, RewriteRule)> = cur
            .entries
            .iter()
            .enumerate()
            .filter_map(|(i, e)| rule_at(e).map(|r| (i, r)))
            .collect();
        let pair = cands.iter().enumerate().find_map(|(n, &(j, rj))| {
            cands[n + 1..]
                .iter()
                .find(|&&(k, _)| k - j >= 2 && !(j == 0 && k == m - 1))
                .map(|&(k, rk)| ((j, rj), (k, rk)))
        });
        let Some(((j, rj), (k, rk))) = pair else {
            return Err(stuck(&cur, &steps));
        };
        let mid = push(&cur, rj, j, &mut steps);
        let shift = removed_positions(rj, m, j).iter().filter(|&&i| i < k).count();
        cur = push(&mid, rk, k - shift, &mut steps);
    }
    Ok(ReductionTrace {
        original: cycle.clone(),
        steps,
        terminal: cur,
    })
}

/// Small integer helper used by tests and generators: `true` iff the cycle
/// entries are all rational integers.
pub fn is_rational_integer_cycle(c: &QuiddityCycle) -> bool {
    c.entries.iter().all(QuadRat::is_rational_integer)
}

impl Mat2 {
    /// `true` iff `self == sign * other` with `sign = -1` when `flipped`.
    pub fn equals_up_to(&self, other: &Mat2, flipped: bool) -> bool {
        if flipped {
            *self == other.neg()
        } else {
            self == other
        }
    }
}

/// Generates a quiddity cycle from `(1,1,1)` or `(0,0)` by a sequence of
/// inverse rewrites driven by `choices`. Each choice is
/// `(rule selector, position seed, split value)`. Sign-flipping inverses are
/// always applied in pairs so the result is again a quiddity cycle.
pub fn grow_cycle(
    tag: FieldTag,
    start_with_triangle: bool,
    choices: &[(u8, usize, i64)],
    max_len: usize,
) -> QuiddityCycle {
    let mut cur = if start_with_triangle {
        QuiddityCycle::from_ints(tag, &[1, 1, 1])
    } else {
        QuiddityCycle::from_ints(tag, &[0, 0])
    };
    let mut iter = choices.iter().peekable();
    while let Some(&(sel, seed, split)) = iter.next() {
        let grow_by = match sel % 4 {
            0 | 1 => 1,
            2 => 2,
            _ => 3,
        };
        if cur.len() + grow_by > max_len {
            continue;
        }
        let splitv = QuadRat::from_int(tag, split);
        match sel % 4 {
            0 | 1 => {
                let p = seed % (cur.len() + 1);
                cur = inverse_rewrite(&cur, RewriteRule::RemoveOne, p, &splitv)
                    .expect("inverse rewrite in range");
            }
            2 => {
                // two RemoveMinusOne inverses
                for _ in 0..2 {
                    let p = seed % (cur.len() + 1);
                    cur = inverse_rewrite(&cur, RewriteRule::RemoveMinusOne, p, &splitv)
                        .expect("inverse rewrite in range");
                }
            }
            _ => {
                // one MergeZero inverse paired with a RemoveMinusOne inverse
                let p = seed % (cur.len() + 2);
                cur = inverse_rewrite(&cur, RewriteRule::MergeZero, p, &splitv)
                    .expect("inverse rewrite in range");
                let q = (seed / 3 + 1) % (cur.len() + 1);
                cur = inverse_rewrite(&cur, RewriteRule::RemoveMinusOne, q, &splitv)
                    .expect("inverse rewrite in range");
            }
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FieldTag {
        FieldTag::gaussian()
    }

    #[test]
    fn eta_has_unit_determinant() {
        let t = FieldTag::new(-13).unwrap();
        let c = QuadRat::from_parts(t, (-2, 47), (5, 47));
        assert!(Mat2::eta(&c).det().is_one());
    }

    #[test]
    fn short_quiddity_cycles() {
        assert!(QuiddityCycle::from_ints(z(), &[1, 1, 1]).is_quiddity_cycle());
        assert!(QuiddityCycle::from_ints(z(), &[0, 0]).is_quiddity_cycle());
        assert!(!QuiddityCycle::from_ints(z(), &[1, 1]).is_quiddity_cycle());
        assert!(QuiddityCycle::from_ints(z(), &[1, 2, 1, 2]).is_quiddity_cycle());
        assert!(!QuiddityCycle::from_ints(z(), &[1, 2, 2, 2]).is_quiddity_cycle());
    }

    #[test]
    fn sqrt_minus_two_cycle() {
        let t = FieldTag::new(-2).unwrap();
        let w = QuadInt::omega(t);
        let c = QuiddityCycle::from_quad_ints(t, &[w.clone(), w.conj(), w.clone(), w.conj()])
            .unwrap();
        assert!(c.is_quiddity_cycle());
    }

    #[test]
    fn remove_one_example() {
        let c = QuiddityCycle::from_ints(z(), &[1, 2, 1, 2]);
        let (next, flip) = rewrite_step(&c, RewriteRule::RemoveOne, 2).unwrap();
        assert_eq!(next, QuiddityCycle::from_ints(z(), &[1, 1, 1]));
        assert!(!flip);
        assert_eq!(next.eta_product(), c.eta_product());
    }

    #[test]
    fn merge_zero_on_three_zeros() {
        let c = QuiddityCycle::from_ints(z(), &[0, 0, 0]);
        let (next, flip) = rewrite_step(&c, RewriteRule::MergeZero, 1).unwrap();
        assert_eq!(next, QuiddityCycle::from_ints(z(), &[0]));
        assert!(flip);
        assert!(next.eta_product().equals_up_to(&c.eta_product(), true));
    }

    #[test]
    fn remove_minus_one_flips_sign() {
        let c = QuiddityCycle::from_ints(z(), &[-1, -1, -1, 3, 5]);
        let (next, flip) = rewrite_step(&c, RewriteRule::RemoveMinusOne, 1).unwrap();
        assert_eq!(next, QuiddityCycle::from_ints(z(), &[0, 0, 3, 5]));
        assert!(flip);
        assert!(next.eta_product().equals_up_to(&c.eta_product(), true));
    }

    #[test]
    fn wraparound_rewrites_preserve_products() {
        let c = QuiddityCycle::from_ints(z(), &[1, 3, 1, 2, 2]);
        let (next, _) = rewrite_step(&c, RewriteRule::RemoveOne, 0).unwrap();
        assert_eq!(next, QuiddityCycle::from_ints(z(), &[2, 1, 2, 1]));
        assert!(next.is_quiddity_cycle());
        let c = QuiddityCycle::from_ints(z(), &[0, 4, 7, 9]);
        let (next, _) = rewrite_step(&c, RewriteRule::MergeZero, 0).unwrap();
        assert_eq!(next, QuiddityCycle::from_ints(z(), &[7, 13]));
    }

    #[test]
    fn rewrite_errors() {
        let c = QuiddityCycle::from_ints(z(), &[1, 2, 1, 2]);
        assert!(matches!(
            rewrite_step(&c, RewriteRule::MergeZero, 0),
            Err(EtaError::RuleMismatch { .. })
        ));
        assert!(matches!(
            rewrite_step(&c, RewriteRule::RemoveOne, 4),
            Err(EtaError::PositionOutOfRange { .. })
        ));
        let c = QuiddityCycle::from_ints(z(), &[0, 0]);
        assert!(matches!(
            rewrite_step(&c, RewriteRule::MergeZero, 0),
            Err(EtaError::TooShort { .. })
        ));
    }

    #[test]
    fn inverse_rewrite_undoes_each_rule() {
        let c = QuiddityCycle::from_ints(z(), &[4, -1, 0, 2, -1, 7]);
        for (rule, p) in [
            (RewriteRule::RemoveMinusOne, 1),
            (RewriteRule::MergeZero, 2),
            (RewriteRule::RemoveMinusOne, 4),
        ] {
            let (after, _) = rewrite_step(&c, rule, p).unwrap();
            let (_, r) = neighbours(c.len(), p);
            let back = inverse_rewrite(&after, rule, p, &c.entries[r]).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn witnesses() {
        assert_eq!(
            small_entry_witnesses(&QuiddityCycle::from_ints(z(), &[1, 1, 1])).unwrap(),
            (0, 1)
        );
        assert_eq!(
            small_entry_witnesses(&QuiddityCycle::from_ints(z(), &[1, 2, 1, 2])).unwrap(),
            (0, 2)
        );
        let t = FieldTag::new(-11).unwrap();
        let w = QuadInt::omega(t);
        let c = QuiddityCycle::from_quad_ints(
            t,
            &[w.clone(), w.conj(), w.clone(), w.conj(), w.clone(), w.conj()],
        )
        .unwrap();
        let (j, k) = small_entry_witnesses(&c).unwrap();
        assert!(k - j >= 2 && !(j == 0 && k == 5));
        assert!(matches!(
            small_entry_witnesses(&QuiddityCycle::from_ints(z(), &[1, 1])),
            Err(EtaError::NotAQuiddityCycle)
        ));
    }

    #[test]
    fn reduce_examples() {
        let tr = reduce_to_canonical(&QuiddityCycle::from_ints(z(), &[1, 2, 1, 2])).unwrap();
        assert_eq!(tr.steps.len(), 1);
        assert_eq!(tr.terminal, QuiddityCycle::from_ints(z(), &[1, 1, 1]));

        let tr = reduce_to_canonical(&QuiddityCycle::from_ints(z(), &[0, 0])).unwrap();
        assert!(tr.steps.is_empty());

        let tr = reduce_to_canonical(&QuiddityCycle::from_ints(z(), &[-1, -2, -1, -2])).unwrap();
        assert_eq!(tr.terminal, QuiddityCycle::from_ints(z(), &[0, 0]));
        assert!(!tr.net_sign_flip());
        assert_eq!(tr.replay().unwrap(), tr.terminal);
        assert_eq!(tr.unwind().unwrap(), tr.original);

        let t = FieldTag::new(-2).unwrap();
        let w = QuadInt::omega(t);
        let c = QuiddityCycle::from_quad_ints(t, &[w.clone(), w.conj(), w.clone(), w.conj()])
            .unwrap();
        assert!(matches!(reduce_to_canonical(&c), Err(EtaError::Stuck { .. })));
    }

    #[test]
    fn grown_cycles_are_quiddity_cycles() {
        let c = grow_cycle(z(), true, &[(3, 7, 2), (2, 1, 0), (0, 4, 0), (3, 2, -3)], 12);
        assert!(c.is_quiddity_cycle(), "{c}");
        let tr = reduce_to_canonical(&c).unwrap();
        assert_eq!(tr.unwind().unwrap(), c);
    }

    #[test]
    fn trace_json_round_trip() {
        let c = grow_cycle(z(), false, &[(0, 1, 0), (2, 3, 0), (1, 0, 0)], 12);
        let tr = reduce_to_canonical(&c).unwrap();
        let json = serde_json::to_string(&tr.to_record()).unwrap();
        let rec: TraceRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(ReductionTrace::from_record(&rec).unwrap(), tr);
    }
}
