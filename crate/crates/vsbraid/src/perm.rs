//! Permutations in one-line notation and the ℤ×Sₙ target group.
//!
//! Composition is fixed left-to-right everywhere: (p·q)(x) = q(p(x)), so
//! evaluating a word multiplies letter images in reading order.

use std::fmt;

use thiserror::Error;

use crate::target::TargetGroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..{0}")]
    NotBijective(usize),
    #[error("bad permutation text `{0}`")]
    BadText(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation of {1..m} in one-line notation (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation { images: (0..m).collect() }
    }

    /// One-line notation with 1-based entries.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x < 1 || x > m || seen[x - 1] {
                return Err(PermError::NotBijective(m));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x - 1).collect() })
    }

    /// The transposition (a b) in S_m, 1-based.
    pub fn transposition(m: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    /// The adjacent transposition (i i+1) in S_m.
    pub fn adjacent(m: usize, i: usize) -> Permutation {
        Permutation::transposition(m, i, i + 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of x (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Left-to-right composition: (p·q)(x) = q(p(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// Conjugate g⁻¹·self·g under left-to-right composition.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Number of inversions: pairs i < j with p(i) > p(j).
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut lens = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    /// All m! permutations in lexicographic one-line order.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..m).collect();
        loop {
            out.push(Permutation { images: current.clone() });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// Accepts one-line `[3,1,2]` or cycle notation `(1 3 2)(4 5)` (degree
    /// required for cycles).
    pub fn parse(text: &str, degree: usize) -> Result<Permutation, PermError> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let images: Result<Vec<usize>, _> =
                inner.split(',').map(|t| t.trim().parse::<usize>()).collect();
            let images = images.map_err(|_| PermError::BadText(text.to_string()))?;
            return Permutation::from_images(images);
        }
        if text.starts_with('(') {
            let mut p = Permutation::identity(degree);
            for cycle in text.split(')') {
                let cycle = cycle.trim();
                if cycle.is_empty() {
                    continue;
                }
                let cycle = cycle
                    .strip_prefix('(')
                    .ok_or_else(|| PermError::BadText(text.to_string()))?;
                let entries: Result<Vec<usize>, _> = cycle
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>())
                    .collect();
                let entries = entries.map_err(|_| PermError::BadText(text.to_string()))?;
                if entries.iter().any(|&x| x < 1 || x > degree) {
                    return Err(PermError::NotBijective(degree));
                }
                let mut cycle_perm = Permutation::identity(degree);
                for w in entries.windows(2) {
                    cycle_perm.images[w[0] - 1] = w[1] - 1;
                }
                if let (Some(&last), Some(&first)) = (entries.last(), entries.first()) {
                    if entries.len() > 1 {
                        cycle_perm.images[last - 1] = first - 1;
                    }
                }
                p = p.compose(&cycle_perm);
            }
            return Ok(p);
        }
        Err(PermError::BadText(text.to_string()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// The symmetric group S_m as a homomorphism target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricGroup {
    pub degree: usize,
}

impl TargetGroup for SymmetricGroup {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn multiply(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn render(&self, a: &Permutation) -> String {
        a.to_string()
    }
}

/// An element (shift, perm) of ℤ×Sₙ with componentwise multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZxSnElem {
    pub shift: i64,
    pub perm: Permutation,
}

impl fmt::Display for ZxSnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.shift, self.perm)
    }
}

/// The group ℤ×Sₙ as a homomorphism target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZxSn {
    pub degree: usize,
}

impl ZxSn {
    pub fn elem(&self, shift: i64, perm: Permutation) -> ZxSnElem {
        assert_eq!(perm.degree(), self.degree);
        ZxSnElem { shift, perm }
    }
}

impl TargetGroup for ZxSn {
    type Elem = ZxSnElem;

    fn identity(&self) -> ZxSnElem {
        ZxSnElem { shift: 0, perm: Permutation::identity(self.degree) }
    }

    fn multiply(&self, a: &ZxSnElem, b: &ZxSnElem) -> ZxSnElem {
        ZxSnElem { shift: a.shift + b.shift, perm: a.perm.compose(&b.perm) }
    }

    fn invert(&self, a: &ZxSnElem) -> ZxSnElem {
        ZxSnElem { shift: -a.shift, perm: a.perm.inverse() }
    }

    fn render(&self, a: &ZxSnElem) -> String {
        a.to_string()
    }
}
