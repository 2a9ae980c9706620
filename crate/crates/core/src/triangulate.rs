//! Triangulations of a labelled convex polygon and the Conway-Coxeter
//! correspondence with positive integral friezes.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eta::QuiddityCycle;
use crate::frieze::{FriezeClass, FriezePattern};
use crate::qint::FieldTag;

pub const MIN_GON: usize = 3;
pub const MAX_GON: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("polygon size {0} outside {MIN_GON}..={MAX_GON}")]
    OutOfRange(usize),
    #[error("frieze is not Conway-Coxeter (class {0})")]
    NotConwayCoxeter(FriezeClass),
    #[error("invalid triangulation: {0}")]
    Invalid(String),
}

/// A set of `N - 3` pairwise non-crossing diagonals of the `N`-gon with
/// vertices `0..N` in convex position. Diagonals are stored as `(a, b)`, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangulation {
    n_gon: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

/// Strict interior crossing of two chords.
pub fn chords_cross(p: (usize, usize), q: (usize, usize)) -> bool {
    let (a, b) = (p.0.min(p.1), p.0.max(p.1));
    let (c, d) = (q.0.min(q.1), q.0.max(q.1));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl Triangulation {
    pub fn new(
        n_gon: usize,
        diagonals: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TriangulationError> {
        let diagonals: BTreeSet<(usize, usize)> = diagonals
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let t = Triangulation { n_gon, diagonals };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), TriangulationError> {
        let n = self.n_gon;
        if n < MIN_GON {
            return Err(TriangulationError::OutOfRange(n));
        }
        if self.diagonals.len() != n - 3 {
            return Err(TriangulationError::Invalid(format!(
                "expected {} diagonals, got {}",
                n - 3,
                self.diagonals.len()
            )));
        }
        for &(a, b) in &self.diagonals {
            if b >= n || b - a < 2 || (a == 0 && b == n - 1) {
                return Err(TriangulationError::Invalid(format!("({a}, {b}) is not a diagonal")));
            }
        }
        let ds: Vec<_> = self.diagonals.iter().copied().collect();
        for (i, &p) in ds.iter().enumerate() {
            if let Some(&q) = ds[i + 1..].iter().find(|&&q| chords_cross(p, q)) {
                return Err(TriangulationError::Invalid(format!("{p:?} crosses {q:?}")));
            }
        }
        Ok(())
    }

    pub fn n_gon(&self) -> usize {
        self.n_gon
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    /// Triangles at each vertex: one more than the incident diagonals.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut counts = vec![1; self.n_gon];
        for &(a, b) in &self.diagonals {
            counts[a] += 1;
            counts[b] += 1;
        }
        counts
    }

    pub fn quiddity(&self) -> QuiddityCycle {
        let values: Vec<i64> = self.triangle_counts().iter().map(|&c| c as i64).collect();
        QuiddityCycle::from_ints(FieldTag::gaussian(), &values)
    }

    pub fn frieze(&self) -> FriezePattern {
        FriezePattern::from_quiddity(&self.quiddity())
            .expect("triangulation quiddities are quiddity cycles")
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .diagonals
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "{}-gon [{}]", self.n_gon, parts.join(", "))
    }
}

/// Catalan number `C_k`.
pub fn catalan(k: u64) -> u128 {
    (0..k).fold(1u128, |c, i| c * 2 * (2 * i as u128 + 1) / (i as u128 + 2))
}

/// All triangulations of the `n_gon`, sorted by diagonal list.
pub fn enumerate_triangulations(n_gon: usize) -> Result<Vec<Triangulation>, TriangulationError> {
    if !(MIN_GON..=MAX_GON).contains(&n_gon) {
        return Err(TriangulationError::OutOfRange(n_gon));
    }
    let mut out: Vec<Triangulation> = sub_triangulations(0, n_gon - 1)
        .into_iter()
        .map(|diagonals| Triangulation { n_gon, diagonals })
        .collect();
    out.sort();
    Ok(out)
}

/// Diagonal sets triangulating the sub-polygon on vertices `lo..=hi`; the
/// edge `(lo, hi)` lies in a triangle with some apex `k`.
fn sub_triangulations(lo: usize, hi: usize) -> Vec<BTreeSet<(usize, usize)>> {
    if hi - lo < 2 {
        return vec![BTreeSet::new()];
    }
    let mut out = Vec::new();
    for k in lo + 1..hi {
        let left = sub_triangulations(lo, k);
        let right = sub_triangulations(k, hi);
        for l in &left {
            for r in &right {
                let mut s: BTreeSet<(usize, usize)> = l.union(r).copied().collect();
                if k - lo >= 2 {
                    s.insert((lo, k));
                }
                if hi - k >= 2 {
                    s.insert((k, hi));
                }
                out.push(s);
            }
        }
    }
    out
}

/// Inverse of the Conway-Coxeter map by ear removal: a vertex with quiddity 1
/// is an ear; cutting it adds the diagonal between its neighbours and lowers
/// their counts by one. The smallest-index ear goes first.
pub fn triangulation_of_cc_frieze(f: &FriezePattern) -> Result<Triangulation, TriangulationError> {
    let class = f.classify();
    if class != FriezeClass::ConwayCoxeter {
        return Err(TriangulationError::NotConwayCoxeter(class));
    }
    let n_gon = f.period();
    let mut q: Vec<i64> = f
        .extract_quiddity()
        .entries()
        .iter()
        .map(|e| i64::try_from(e.x().to_integer()).expect("small quiddity entry"))
        .collect();
    let mut alive: Vec<usize> = (0..n_gon).collect();
    let mut diagonals = BTreeSet::new();
    while alive.len() > 3 {
        let m = alive.len();
        let pos = (0..m)
            .find(|&p| q[alive[p]] == 1)
            .ok_or(TriangulationError::NotConwayCoxeter(class))?;
        let u = alive[(pos + m - 1) % m];
        let w = alive[(pos + 1) % m];
        diagonals.insert((u.min(w), u.max(w)));
        q[u] -= 1;
        q[w] -= 1;
        alive.remove(pos);
    }
    if alive.iter().any(|&v| q[v] != 1) {
        return Err(TriangulationError::NotConwayCoxeter(class));
    }
    Triangulation::new(n_gon, diagonals)
}
