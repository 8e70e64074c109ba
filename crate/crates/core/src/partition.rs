//! Integer partitions and the box combinatorics used by Schubert calculus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// A weakly decreasing sequence of positive parts. Trailing zeros are
/// trimmed on construction, so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition (class of the fundamental cycle).
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts into weakly decreasing order and trims zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    /// Accepts the parts only if they are already weakly decreasing.
    pub fn from_parts(parts: &[u32]) -> Option<Self> {
        parts
            .windows(2)
            .all(|w| w[0] >= w[1])
            .then(|| Partition::new(parts.to_vec()))
    }

    pub fn row(n: u32) -> Self {
        Partition::new(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.0.len() <= rows && self.part(0) <= cols
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Reversed complement `mu_i = cols - lambda_{rows+1-i}` inside the box.
    pub fn complement_in_box(&self, rows: usize, cols: u32) -> Result<Partition, AlgebraError> {
        if !self.fits_box(rows, cols) {
            return Err(AlgebraError::OutsideBox {
                partition: self.to_string(),
                rows,
                cols,
            });
        }
        let parts = (0..rows).map(|i| cols - self.part(rows - 1 - i)).collect();
        Ok(Partition::new(parts))
    }

    /// All partitions inside the box of the given weight.
    pub fn all_in_box(rows: usize, cols: u32, weight: usize) -> Vec<Partition> {
        fn go(rows: usize, max: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition::new(cur.clone()));
                return;
            }
            if cur.len() == rows {
                return;
            }
            for p in (1..=max.min(left as u32)).rev() {
                cur.push(p);
                go(rows, p, left - p as usize, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, weight, &mut Vec::new(), &mut out);
        out
    }
}

/// Free-function form of [`Partition::complement_in_box`].
pub fn complement_in_box(lambda: &Partition, rows: usize, cols: u32) -> Result<Partition, AlgebraError> {
    lambda.complement_in_box(rows, cols)
}

/// Free-function form of [`Partition::conjugate`].
pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
