//! Permutations of `{0, 1, ..., degree-1}` stored as image arrays.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation on a fixed number of points.
///
/// `images[i]` is the image of point `i`. Composition is left-to-right:
/// `(a * b)(i) = b(a(i))`, so `a.compose(&b)` means "apply `a`, then `b`".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// The identity permutation on `degree` points.
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from an explicit image array. Fails unless it is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            let i = img as usize;
            if i >= n || seen[i] {
                return Err(Error::Parse(format!(
                    "image array {:?} is not a permutation",
                    images
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint-or-not cycles; points not mentioned are fixed.
    /// Cycles are applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Self> {
        let mut p = Permutation::identity(degree);
        for cycle in cycles {
            let mut c = Permutation::identity(degree);
            if cycle.len() >= 2 {
                for w in 0..cycle.len() {
                    let from = cycle[w] as usize;
                    let to = cycle[(w + 1) % cycle.len()];
                    if from >= degree || to as usize >= degree {
                        return Err(Error::Parse(format!(
                            "cycle point out of range for degree {degree}"
                        )));
                    }
                    if c.images[from] != from as u16 {
                        return Err(Error::Parse(format!("repeated point in cycle {:?}", cycle)));
                    }
                    c.images[from] = to;
                }
                let mut check = vec![false; degree];
                for &img in &c.images {
                    if check[img as usize] {
                        return Err(Error::Parse(format!("cycle {:?} is not injective", cycle)));
                    }
                    check[img as usize] = true;
                }
            } else if let Some(&pt) = cycle.first() {
                if pt as usize >= degree {
                    return Err(Error::Parse(format!(
                        "cycle point {pt} out of range for degree {degree}"
                    )));
                }
            }
            p = p.compose(&c);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// Image of a single point.
    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u16 == img)
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().compose(self).compose(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Cycle decomposition, fixed points omitted, cycles led by their least
    /// point and sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start as u16 {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u16);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Extend to a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        for i in self.images.len()..degree {
            images.push(i as u16);
        }
        Permutation { images }
    }

    /// Shift all points up by `offset` inside a larger degree.
    pub fn shift(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &img) in self.images.iter().enumerate() {
            images[i + offset] = img + offset as u16;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
