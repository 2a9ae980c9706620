//! Positive definite binary quadratic forms and class numbers.

use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::qint::FieldTag;

/// `a*x^2 + b*x*y + c*y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQuadraticForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `|b| <= a <= c`, and `b >= 0` if `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Reduced forms of discriminant `disc(tag)`, sorted.
pub fn reduced_forms(tag: FieldTag) -> Vec<BinaryQuadraticForm> {
    let disc = tag.disc();
    let abs_d = disc.unsigned_abs() as i64;
    // reduced forms have a <= sqrt(|D|/3)
    let a_max = (abs_d / 3).sqrt() + 1;
    let mut out = Vec::new();
    for a in 1..=a_max {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryQuadraticForm { a, b, c: num / (4 * a) };
            if f.is_reduced() {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

/// Class number of `O_d`.
pub fn class_number(tag: FieldTag) -> u64 {
    reduced_forms(tag).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> u64 {
        class_number(FieldTag::new(d).unwrap())
    }

    #[test]
    fn small_class_numbers() {
        assert_eq!(h(-1), 1);
        assert_eq!(h(-13), 2);
        assert_eq!(h(-5), 2);
        assert_eq!(h(-14), 4);
        assert_eq!(h(-23), 3);
        let forms = reduced_forms(FieldTag::new(-5).unwrap());
        assert_eq!(
            forms,
            vec![
                BinaryQuadraticForm { a: 1, b: 0, c: 5 },
                BinaryQuadraticForm { a: 2, b: 2, c: 3 }
            ]
        );
    }

    #[test]
    fn reduced_forms_have_the_discriminant() {
        for d in [-3, -7, -30, -71, -163] {
            let t = FieldTag::new(d).unwrap();
            for f in reduced_forms(t) {
                assert_eq!(f.discriminant(), t.disc());
                assert!(f.is_reduced());
            }
        }
    }

    #[test]
    fn reduction_rule_edges() {
        assert!(!BinaryQuadraticForm { a: 2, b: -2, c: 3 }.is_reduced());
        assert!(!BinaryQuadraticForm { a: 3, b: -1, c: 3 }.is_reduced());
        assert!(BinaryQuadraticForm { a: 3, b: 1, c: 3 }.is_reduced());
    }
}
