//! Free-group words and automorphisms: the substitution engine behind the
//! braid representations used to separate forbidden relations.

use std::fmt;

use thiserror::Error;

use crate::target::TargetGroup;
use crate::word::reduce_runs;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("claimed inverse does not invert the automorphism")]
    NotInverse,
}

/// A freely reduced word over a free-group basis x₁..x_k (the last basis
/// element plays the role of the extra letter y in the extended
/// representation).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeGroupWord {
    rank: usize,
    letters: Vec<(usize, i64)>,
}

impl FreeGroupWord {
    pub fn identity(rank: usize) -> FreeGroupWord {
        FreeGroupWord { rank, letters: Vec::new() }
    }

    pub fn gen(rank: usize, basis: usize, exp: i64) -> FreeGroupWord {
        assert!(basis < rank);
        FreeGroupWord { rank, letters: reduce_runs([(basis, exp)]) }
    }

    pub fn from_letters(rank: usize, raw: impl IntoIterator<Item = (usize, i64)>) -> FreeGroupWord {
        let letters = reduce_runs(raw);
        assert!(letters.iter().all(|&(b, _)| b < rank));
        FreeGroupWord { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &FreeGroupWord) -> FreeGroupWord {
        assert_eq!(self.rank, other.rank);
        FreeGroupWord {
            rank: self.rank,
            letters: reduce_runs(self.letters.iter().chain(other.letters.iter()).cloned()),
        }
    }

    pub fn invert(&self) -> FreeGroupWord {
        FreeGroupWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&(b, e)| (b, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> FreeGroupWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = FreeGroupWord::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    /// Renders with an optional distinguished last letter `y`.
    pub fn render(&self, extended: bool) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let name = |b: usize| {
            if extended && b == self.rank - 1 {
                "y".to_string()
            } else {
                format!("x{}", b + 1)
            }
        };
        self.letters
            .iter()
            .map(|&(b, e)| if e == 1 { name(b) } else { format!("{}^{}", name(b), e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

/// An automorphism of a free group, stored with a verified inverse: both
/// compositions must fix every basis element.
#[derive(Debug, Clone)]
pub struct FreeGroupAutomorphism {
    rank: usize,
    images: Vec<FreeGroupWord>,
    inv_images: Vec<FreeGroupWord>,
}

impl PartialEq for FreeGroupAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for FreeGroupAutomorphism {}

impl FreeGroupAutomorphism {
    pub fn identity(rank: usize) -> FreeGroupAutomorphism {
        let images: Vec<FreeGroupWord> = (0..rank).map(|b| FreeGroupWord::gen(rank, b, 1)).collect();
        FreeGroupAutomorphism { rank, images: images.clone(), inv_images: images }
    }

    /// Builds an automorphism from basis images and claimed inverse images,
    /// checking both composites fix the basis.
    pub fn new(
        images: Vec<FreeGroupWord>,
        inv_images: Vec<FreeGroupWord>,
    ) -> Result<FreeGroupAutomorphism, AutError> {
        let rank = images.len();
        if inv_images.len() != rank {
            return Err(AutError::RankMismatch(rank, inv_images.len()));
        }
        let f = FreeGroupAutomorphism { rank, images, inv_images };
        for b in 0..rank {
            let x = FreeGroupWord::gen(rank, b, 1);
            if f.apply(&f.inverse().apply(&x)) != x || f.inverse().apply(&f.apply(&x)) != x {
                return Err(AutError::NotInverse);
            }
        }
        Ok(f)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, basis: usize) -> &FreeGroupWord {
        &self.images[basis]
    }

    /// Substitutes basis images into the word and freely reduces.
    pub fn apply(&self, w: &FreeGroupWord) -> FreeGroupWord {
        assert_eq!(w.rank(), self.rank);
        let mut acc = FreeGroupWord::identity(self.rank);
        for &(b, e) in w.letters() {
            acc = acc.concat(&self.images[b].pow(e));
        }
        acc
    }

    /// Apply-then-apply, matching word-concatenation order: the composite of
    /// the word uv acts as u first, then v.
    pub fn compose(&self, then: &FreeGroupAutomorphism) -> FreeGroupAutomorphism {
        assert_eq!(self.rank, then.rank);
        let images: Vec<FreeGroupWord> = self.images.iter().map(|w| then.apply(w)).collect();
        let inv_images: Vec<FreeGroupWord> =
            then.inv_images.iter().map(|w| self.inverse().apply(w)).collect();
        FreeGroupAutomorphism { rank: self.rank, images, inv_images }
    }

    pub fn inverse(&self) -> FreeGroupAutomorphism {
        FreeGroupAutomorphism {
            rank: self.rank,
            images: self.inv_images.clone(),
            inv_images: self.images.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(b, w)| w.letters() == [(b, 1)])
    }
}

/// Aut(F_k) as a homomorphism target; equality is structural equality of
/// the freely reduced basis images (exact).
#[derive(Debug, Clone, Copy)]
pub struct AutGroup {
    pub rank: usize,
    /// Marks the last basis letter as the distinguished `y` for rendering.
    pub extended: bool,
}

impl TargetGroup for AutGroup {
    type Elem = FreeGroupAutomorphism;

    fn identity(&self) -> FreeGroupAutomorphism {
        FreeGroupAutomorphism::identity(self.rank)
    }

    fn multiply(&self, a: &FreeGroupAutomorphism, b: &FreeGroupAutomorphism) -> FreeGroupAutomorphism {
        a.compose(b)
    }

    fn invert(&self, a: &FreeGroupAutomorphism) -> FreeGroupAutomorphism {
        a.inverse()
    }

    fn render(&self, a: &FreeGroupAutomorphism) -> String {
        let name = |b: usize| {
            if self.extended && b == self.rank - 1 {
                "y".to_string()
            } else {
                format!("x{}", b + 1)
            }
        };
        let parts: Vec<String> = (0..self.rank)
            .map(|b| format!("{} -> {}", name(b), a.image(b).render(self.extended)))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn sample_auts(rank: usize) -> Vec<FreeGroupAutomorphism> {
        // a conjugation-style map and a swap
        let conj = FreeGroupAutomorphism::new(
            vec![
                FreeGroupWord::from_letters(rank, [(0, 1), (1, 1), (0, -1)]),
                FreeGroupWord::gen(rank, 0, 1),
            ],
            vec![
                FreeGroupWord::gen(rank, 1, 1),
                FreeGroupWord::from_letters(rank, [(1, -1), (0, 1), (1, 1)]),
            ],
        )
        .unwrap();
        let swap = FreeGroupAutomorphism::new(
            vec![FreeGroupWord::gen(rank, 1, 1), FreeGroupWord::gen(rank, 0, 1)],
            vec![FreeGroupWord::gen(rank, 1, 1), FreeGroupWord::gen(rank, 0, 1)],
        )
        .unwrap();
        vec![conj, swap]
    }

    #[test]
    fn apply_substitutes() {
        let f = &sample_auts(2)[0];
        // x1 ↦ x1 x2 x1^-1, x2 ↦ x1 applied to x2^-1 gives x1^-1
        let w = FreeGroupWord::gen(2, 1, -1);
        assert_eq!(f.apply(&w), FreeGroupWord::gen(2, 0, -1));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        for f in sample_auts(2) {
            assert!(f.compose(&f.inverse()).is_identity());
            assert!(f.inverse().compose(&f).is_identity());
        }
    }

    #[test]
    fn bad_inverse_rejected() {
        let err = FreeGroupAutomorphism::new(
            vec![FreeGroupWord::gen(2, 0, 1), FreeGroupWord::gen(2, 0, 1)],
            vec![FreeGroupWord::gen(2, 0, 1), FreeGroupWord::gen(2, 1, 1)],
        );
        assert_eq!(err.unwrap_err(), AutError::NotInverse);
    }

    #[test]
    fn apply_preserves_reduction_and_compose_associates() {
        let auts = sample_auts(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let letters: Vec<(usize, i64)> = (0..rng.gen_range(0..8))
                .map(|_| (rng.gen_range(0..2), if rng.gen() { 1 } else { -1 }))
                .collect();
            let w = FreeGroupWord::from_letters(2, letters);
            let f = &auts[rng.gen_range(0..2)];
            let g = &auts[rng.gen_range(0..2)];
            let h = &auts[rng.gen_range(0..2)];
            let out = f.apply(&w);
            assert_eq!(out, FreeGroupWord::from_letters(2, out.letters().to_vec()));
            assert_eq!(f.compose(g).compose(h).apply(&w), f.compose(&g.compose(h)).apply(&w));
            // word-order composition: (uv)(x) = v(u(x))
            assert_eq!(f.compose(g).apply(&w), g.apply(&f.apply(&w)));
        }
    }
}
