//! Permutations of `{0, …, n-1}` and their cycle notation.
//!
//! Composition applies the right factor first: `compose(p, q)(x) = p(q(x))`.
//! Cycle notation is 1-indexed on input and output; everything internal is
//! 0-indexed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PermError;

/// A bijection of `{0, …, degree-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        assert!(degree >= 1, "permutation degree must be positive");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Permutation, PermError> {
        if images.is_empty() {
            return Err(PermError::ZeroDegree);
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            let p = p as usize;
            if p >= n {
                return Err(PermError::PointOutOfRange { point: p + 1, degree: n });
            }
            if seen[p] {
                return Err(PermError::RepeatedPoint { point: p + 1 });
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&q| self.images[q as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point,
    /// ordered by that point. 0-indexed.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// 1-indexed cycle notation, `"()"` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;

    fn try_from(images: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

/// Parses 1-indexed cycle notation such as `"(1 2 3)(4 5)"`.
///
/// Whitespace and commas inside a cycle separate points. `"()"` or an empty
/// string is the identity. A point may appear at most once across all cycles.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    if degree == 0 {
        return Err(PermError::ZeroDegree);
    }
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut rest = text.trim();

    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(PermError::MalformedCycle(format!(
                "expected '(' at {:?}",
                truncate(rest)
            )));
        };
        let Some(close) = after_open.find(')') else {
            return Err(PermError::MalformedCycle(format!(
                "unbalanced parentheses in {:?}",
                text
            )));
        };
        let body = &after_open[..close];
        if body.contains('(') {
            return Err(PermError::MalformedCycle(format!(
                "nested '(' in {:?}",
                text
            )));
        }
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let point: usize = tok.parse().map_err(|_| {
                PermError::MalformedCycle(format!("non-numeric token {:?}", tok))
            })?;
            if point == 0 || point > degree {
                return Err(PermError::PointOutOfRange { point, degree });
            }
            if used[point - 1] {
                return Err(PermError::RepeatedPoint { point });
            }
            used[point - 1] = true;
            cycle.push(point - 1);
        }
        for (k, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(k + 1) % cycle.len()] as u32;
        }
        rest = after_open[close + 1..].trim_start();
    }
    Ok(Permutation { images })
}

fn truncate(s: &str) -> String {
    s.chars().take(16).collect()
}
