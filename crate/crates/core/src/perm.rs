//! Permutations of `0..degree`.
//!
//! Composition is left-to-right throughout the crate: `p.compose(&q)` applies
//! `p` first and then `q`, so points are acted on from the right
//! (`x^(pq) = (x^p)^q`). Every coset and action computation relies on this.
//!
//! Externally, points are 1-based: cycle strings such as `"(1 2 3)(4 5)"` and
//! JSON image arrays `[2, 3, 1, 5, 4]` both use points `1..=degree`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a bijection on 1..={degree}: {images:?}")]
    NotBijection { degree: usize, images: Vec<usize> },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears in more than one cycle")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation `{0}`")]
    Malformed(String),
}

/// A bijection of `{0, …, degree-1}` stored as its image array.
///
/// `Ord` is lexicographic on the image array, which is the order used to pick
/// canonical coset representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(PermError::NotBijection {
                    degree: n,
                    images: images.iter().map(|x| x + 1).collect(),
                });
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based images (the external convention).
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut zero = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(PermError::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            zero.push(x - 1);
        }
        Self::from_images(zero)
    }

    /// Parses disjoint-cycle notation with 1-based points, e.g. `"(1 2 3)(4 5)"`.
    /// `"()"` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Malformed(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::Malformed(text.to_string()))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(text.to_string()))?;
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange { point, degree });
                }
                if used[point - 1] {
                    return Err(PermError::RepeatedPoint(point));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image array.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Apply `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked [`compose`](Self::compose) for callers that already know the
    /// degrees agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Least `k >= 1` with `self^k = id` (lcm of the cycle lengths).
    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }

    /// Non-trivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_string())
    }
}

/// External form of a permutation: cycle notation or a 1-based image array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Cycles(String),
    Images(Vec<usize>),
}

impl PermSpec {
    pub fn resolve(&self, degree: usize) -> Result<Permutation, PermError> {
        match self {
            PermSpec::Cycles(s) => Permutation::parse_cycles(s, degree),
            PermSpec::Images(v) => {
                if v.len() != degree {
                    return Err(PermError::DegreeMismatch(v.len(), degree));
                }
                Permutation::from_one_based(v)
            }
        }
    }
}

impl From<&Permutation> for PermSpec {
    fn from(p: &Permutation) -> Self {
        PermSpec::Cycles(p.to_cycle_string())
    }
}

impl FromStr for PermSpec {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(PermSpec::Cycles(s.to_string()))
    }
}
