//! Permutations on `{0, …, n-1}`.
//!
//! The composition convention is fixed once and for all: products read
//! left to right, `(p * q)(x) = q(p(x))`. Every word evaluation in this
//! crate uses the same convention.

use crate::{Error, Result};
use std::fmt;

/// A permutation of `{0, …, n-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from an image array, checking bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        if images.is_empty() {
            return Err(Error::Validation("permutation of degree 0".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Validation(format!(
                    "image array {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Left-to-right product: `(self * other)(x) = other(self(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// `g * self * g^{-1}` in the left-to-right convention.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut p = self.clone();
        let mut k = 1u64;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Builds a permutation of the given degree from disjoint cycles,
    /// e.g. `Perm::from_cycles(&[vec![0, 1, 2], vec![3, 4]], 5)`.
    pub fn from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::Validation(format!(
                        "cycle point {} out of range for degree {}",
                        from.max(to),
                        degree
                    )));
                }
                if touched[from] {
                    return Err(Error::Validation(format!(
                        "point {} appears in two cycles",
                        from
                    )));
                }
                touched[from] = true;
                images[from] = to;
            }
        }
        Perm::new(images)
    }

    /// Parses cycle notation like `"(0 1 2)(3 4)"`. `"()"` and `""` both
    /// denote the identity. Commas are accepted as separators.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Perm::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let rest2 = rest.trim_start();
            if !rest2.starts_with('(') {
                return Err(Error::Validation(format!("bad cycle notation {:?}", s)));
            }
            let close = rest2
                .find(')')
                .ok_or_else(|| Error::Validation(format!("unclosed cycle in {:?}", s)))?;
            let body = &rest2[1..close];
            let points: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Validation(format!("bad cycle point {:?}", t)))
                })
                .collect::<Result<_>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = &rest2[close + 1..];
        }
        Perm::from_cycles(&cycles, degree)
    }

    /// Disjoint cycle decomposition, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation string; the identity renders as `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for cycle in cycles {
            s.push('(');
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&p.to_string());
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        let p = Perm::parse_cycles("(0 1)", 3).unwrap();
        let q = Perm::parse_cycles("(1 2)", 3).unwrap();
        // (p*q)(0) = q(p(0)) = q(1) = 2
        assert_eq!(p.compose(&q).apply(0), 2);
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["(0 1 2)(3 4)", "(0 1)", "()"] {
            let p = Perm::parse_cycles(s, 5).unwrap();
            assert_eq!(p.to_cycle_string(), s);
        }
        let comma = Perm::parse_cycles("(0,1,2)", 3).unwrap();
        assert_eq!(comma.to_cycle_string(), "(0 1 2)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![]).is_err());
        assert!(Perm::parse_cycles("(0 1)(1 2)", 3).is_err());
    }

    #[test]
    fn order_and_inverse() {
        let p = Perm::parse_cycles("(0 1 2)(3 4)", 5).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).is_identity());
    }
}
