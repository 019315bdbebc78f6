//! Generator maps, homomorphism verification, the φ-triple family, and the
//! exponent-sum invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{Permutation, SymmetricGroup, ZxSn};
use crate::presentation::{build_presentation, GroupFamily, Presentation, Relator};
use crate::target::{Integers, TargetGroup};
use crate::word::{Family, Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("no image assigned to generator `{0}`")]
    UnknownGenerator(String),
    #[error("epsilon values must be 0 or 1")]
    InvalidEpsilon,
    #[error("triple classification requires n >= 3 (the n=2 statement is separate)")]
    StrandTooSmall,
    #[error("word contains a named letter `{0}`; exponent sums are defined for braid words")]
    NamedLetter(String),
    #[error(transparent)]
    Presentation(#[from] crate::presentation::PresentationError),
}

/// An assignment of target elements to the generators of a presentation.
#[derive(Debug, Clone)]
pub struct GeneratorMap<G: TargetGroup> {
    pub source: Presentation,
    pub group: G,
    pub images: BTreeMap<Gen, G::Elem>,
}

/// One relation the map failed to preserve, with both sides of the original
/// L = R form evaluated.
#[derive(Debug, Clone)]
pub struct RelatorFailure<E> {
    pub relator: Relator,
    pub lhs_image: E,
    pub rhs_image: E,
}

/// Result of checking every relator of the source presentation.
#[derive(Debug, Clone)]
pub struct HomReport<E> {
    pub failures: Vec<RelatorFailure<E>>,
}

impl<E> HomReport<E> {
    pub fn is_homomorphism(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<G: TargetGroup> GeneratorMap<G> {
    pub fn new(source: Presentation, group: G, images: BTreeMap<Gen, G::Elem>) -> Self {
        GeneratorMap { source, group, images }
    }

    /// Product of letter images in word order; g⁻¹ evaluates as image(g)⁻¹.
    pub fn eval(&self, w: &Word) -> Result<G::Elem, HomError> {
        let mut acc = self.group.identity();
        for l in w.letters() {
            let img = self
                .images
                .get(&l.gen)
                .ok_or_else(|| HomError::UnknownGenerator(l.gen.to_string()))?;
            acc = self.group.multiply(&acc, &self.group.power(img, l.exp));
        }
        Ok(acc)
    }

    /// Evaluates every relator; a relator fails iff its image differs from
    /// the target identity.
    pub fn verify(&self) -> Result<HomReport<G::Elem>, HomError> {
        let mut failures = Vec::new();
        for r in &self.source.relators {
            let lhs = self.eval(&r.lhs)?;
            let rhs = self.eval(&r.rhs)?;
            if lhs != rhs {
                failures.push(RelatorFailure { relator: r.clone(), lhs_image: lhs, rhs_image: rhs });
            }
        }
        Ok(HomReport { failures })
    }

    pub fn is_homomorphism(&self) -> Result<bool, HomError> {
        Ok(self.verify()?.is_homomorphism())
    }
}

/// An ε-triple (ε₁, ε₂, ε₃) selecting images for σ, τ, v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple(pub u8, pub u8, pub u8);

impl Triple {
    pub const ALL: [Triple; 8] = [
        Triple(0, 0, 0),
        Triple(0, 0, 1),
        Triple(0, 1, 0),
        Triple(0, 1, 1),
        Triple(1, 0, 0),
        Triple(1, 0, 1),
        Triple(1, 1, 0),
        Triple(1, 1, 1),
    ];

    /// The triples whose kernels split the group over Sₙ.
    pub const SEMIDIRECT: [Triple; 3] = [Triple(1, 1, 1), Triple(1, 0, 1), Triple(0, 0, 1)];

    pub fn eps(self, family: Family) -> u8 {
        match family {
            Family::Classical => self.0,
            Family::Singular => self.1,
            Family::Virtual => self.2,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0, self.1, self.2)
    }
}

impl FromStr for Triple {
    type Err = HomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(HomError::InvalidEpsilon),
            })
            .collect::<Result<_, _>>()?;
        if digits.len() != 3 {
            return Err(HomError::InvalidEpsilon);
        }
        Ok(Triple(digits[0], digits[1], digits[2]))
    }
}

/// The map φ_{ε₁,ε₂,ε₃}: σᵢ ↦ (i i+1)^ε₁, τᵢ ↦ (i i+1)^ε₂, vᵢ ↦ (i i+1)^ε₃
/// into Sₙ, over any registry family's presentation.
pub fn phi_triple(
    family: GroupFamily,
    n: usize,
    triple: Triple,
) -> Result<GeneratorMap<SymmetricGroup>, HomError> {
    if triple.0 > 1 || triple.1 > 1 || triple.2 > 1 {
        return Err(HomError::InvalidEpsilon);
    }
    let source = build_presentation(family, n)?;
    let group = SymmetricGroup { degree: n };
    let mut images = BTreeMap::new();
    for g in &source.generators {
        if let Gen::Braid { family: f, index } = g {
            let img = if triple.eps(*f) == 1 {
                Permutation::adjacent(n, *index)
            } else {
                Permutation::identity(n)
            };
            images.insert(g.clone(), img);
        }
    }
    Ok(GeneratorMap::new(source, group, images))
}

/// Runs verify over all 8 triples and returns the passing set. Requires
/// n ≥ 3; at n = 2 all eight triples pass and callers use that statement
/// directly.
pub fn classify_triples(family: GroupFamily, n: usize) -> Result<BTreeSet<Triple>, HomError> {
    if n < 3 {
        return Err(HomError::StrandTooSmall);
    }
    let mut passing = BTreeSet::new();
    for t in Triple::ALL {
        if phi_triple(family, n, t)?.is_homomorphism()? {
            passing.insert(t);
        }
    }
    Ok(passing)
}

/// The separation map into ℤ×Sₙ: σᵢ ↦ (0, id), τᵢ ↦ (1, id),
/// vᵢ ↦ (0, (i i+1)).
pub fn zxsn_projection(family: GroupFamily, n: usize) -> Result<GeneratorMap<ZxSn>, HomError> {
    let source = build_presentation(family, n)?;
    let group = ZxSn { degree: n };
    let mut images = BTreeMap::new();
    for g in &source.generators {
        if let Gen::Braid { family: f, index } = g {
            let img = match f {
                Family::Classical => group.identity(),
                Family::Singular => group.elem(1, Permutation::identity(n)),
                Family::Virtual => group.elem(0, Permutation::adjacent(n, *index)),
            };
            images.insert(g.clone(), img);
        }
    }
    Ok(GeneratorMap::new(source, group, images))
}

/// Exponent-sum map onto ℤ: counts the selected families with weight 1.
pub fn exponent_projection(
    family: GroupFamily,
    n: usize,
    counted: &[Family],
) -> Result<GeneratorMap<Integers>, HomError> {
    let source = build_presentation(family, n)?;
    let mut images = BTreeMap::new();
    for g in &source.generators {
        if let Gen::Braid { family: f, .. } = g {
            images.insert(g.clone(), if counted.contains(f) { 1 } else { 0 });
        }
    }
    Ok(GeneratorMap::new(source, Integers, images))
}

/// The classical, singular, combined exponent sums and the virtual parity of
/// a braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentData {
    pub exp_c: i64,
    pub exp_s: i64,
    pub exp_cs: i64,
    pub parity: u8,
}

impl fmt::Display for ExponentData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "expC={} expS={} expCS={} parity={}",
            self.exp_c, self.exp_s, self.exp_cs, self.parity
        )
    }
}

/// Letter-exponent sums per family; virtual exponents reduced mod 2.
pub fn exponent_sums(w: &Word) -> Result<ExponentData, HomError> {
    let mut exp_c = 0i64;
    let mut exp_s = 0i64;
    let mut parity = 0i64;
    for l in w.letters() {
        match &l.gen {
            Gen::Braid { family: Family::Classical, .. } => exp_c += l.exp,
            Gen::Braid { family: Family::Singular, .. } => exp_s += l.exp,
            Gen::Braid { family: Family::Virtual, .. } => parity += l.exp,
            Gen::Named(name) => return Err(HomError::NamedLetter(name.clone())),
        }
    }
    Ok(ExponentData { exp_c, exp_s, exp_cs: exp_c + exp_s, parity: (parity.rem_euclid(2)) as u8 })
}
