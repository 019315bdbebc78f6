//! Semidirect-product decomposition over the symmetric group, purity tests,
//! the free-group braid representations, and certified separation of the
//! forbidden relations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::autfree::{AutGroup, FreeGroupAutomorphism, FreeGroupWord};
use crate::hom::{phi_triple, zxsn_projection, GeneratorMap, HomError, Triple};
use crate::homcount::{search_separating_quotient, HomcountError};
use crate::perm::Permutation;
use crate::presentation::{build_presentation, GroupFamily, Relator, RelatorTag};
use crate::target::{SmallGroup, TargetGroup};
use crate::word::{Gen, Word};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("triple {0} does not define a semidirect decomposition")]
    NotSemidirect(Triple),
    #[error("relation id {0} is out of range 1..=4")]
    BadRelation(u8),
    #[error("index {i} out of range 1..={max}")]
    BadIndex { i: usize, max: usize },
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Homcount(#[from] HomcountError),
    #[error(transparent)]
    Presentation(#[from] crate::presentation::PresentationError),
}

/// The canonical section of the strand permutation: a word in virtual
/// letters obtained by repeatedly swapping the first descent, one letter per
/// inversion.
pub fn section(p: &Permutation, strands: usize) -> Word {
    let letters = crate::nu6::Nu6::adjacent_word(p)
        .into_iter()
        .map(|i| (Gen::v(i), 1i64));
    Word::from_letters(strands, letters)
}

/// A word split as (kernel element) · (virtual section of its permutation).
#[derive(Debug, Clone)]
pub struct DecompositionResult {
    pub pure: Word,
    pub perm: Permutation,
    pub triple: Triple,
    pub section_word: Word,
}

/// Splits `w` over the φ-triple homomorphism: the permutation part is the
/// φ-image, the section is its virtual word, and the pure part is
/// w · section⁻¹ (freely reduced, so the recomposition is exact at the
/// free-word level).
pub fn decompose(w: &Word, triple: Triple) -> Result<DecompositionResult, StructureError> {
    if !Triple::SEMIDIRECT.contains(&triple) {
        return Err(StructureError::NotSemidirect(triple));
    }
    let phi = phi_triple(GroupFamily::VSG, w.strands(), triple)?;
    decompose_with(&phi, triple, w)
}

/// Decomposition against a prebuilt φ map (callers running many words reuse
/// the map).
pub fn decompose_with(
    phi: &GeneratorMap<crate::perm::SymmetricGroup>,
    triple: Triple,
    w: &Word,
) -> Result<DecompositionResult, StructureError> {
    let perm = phi.eval(w)?;
    let section_word = section(&perm, w.strands());
    let pure = w.concat(&section_word.invert()).expect("same strands");
    debug_assert!(phi.eval(&pure)?.is_identity());
    Ok(DecompositionResult { pure, perm, triple, section_word })
}

/// Membership in the kernel of the φ-triple map for the given family; the
/// triple must define a homomorphism there.
pub fn is_pure(w: &Word, family: GroupFamily, triple: Triple) -> Result<bool, StructureError> {
    let phi = phi_triple(family, w.strands(), triple)?;
    if !phi.is_homomorphism()? {
        return Err(StructureError::Hom(HomError::InvalidEpsilon));
    }
    Ok(phi.eval(w)?.is_identity())
}

/// Which free-group representation to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepName {
    /// Aut(Fₙ): σᵢ conjugates, vᵢ swaps; kills the first welded relation.
    Welded,
    /// Aut(Fₙ₊₁) with an extra stable letter conjugating the virtual swap.
    Extended,
}

fn identity_aut(rank: usize) -> FreeGroupAutomorphism {
    FreeGroupAutomorphism::identity(rank)
}

fn sigma_aut(rank: usize, i: usize) -> FreeGroupAutomorphism {
    // x_i ↦ x_i x_{i+1} x_i^-1, x_{i+1} ↦ x_i
    let a = i - 1;
    let mut images: Vec<FreeGroupWord> =
        (0..rank).map(|b| FreeGroupWord::gen(rank, b, 1)).collect();
    images[a] = FreeGroupWord::from_letters(rank, [(a, 1), (a + 1, 1), (a, -1)]);
    images[a + 1] = FreeGroupWord::gen(rank, a, 1);
    let mut inverses: Vec<FreeGroupWord> =
        (0..rank).map(|b| FreeGroupWord::gen(rank, b, 1)).collect();
    inverses[a] = FreeGroupWord::gen(rank, a + 1, 1);
    inverses[a + 1] = FreeGroupWord::from_letters(rank, [(a + 1, -1), (a, 1), (a + 1, 1)]);
    FreeGroupAutomorphism::new(images, inverses).expect("braid action is invertible")
}

fn swap_aut(rank: usize, i: usize) -> FreeGroupAutomorphism {
    let a = i - 1;
    let mut images: Vec<FreeGroupWord> =
        (0..rank).map(|b| FreeGroupWord::gen(rank, b, 1)).collect();
    images[a] = FreeGroupWord::gen(rank, a + 1, 1);
    images[a + 1] = FreeGroupWord::gen(rank, a, 1);
    FreeGroupAutomorphism::new(images.clone(), images).expect("a swap is an involution")
}

fn twisted_swap_aut(rank: usize, i: usize) -> FreeGroupAutomorphism {
    // x_i ↦ y x_{i+1} y^-1, x_{i+1} ↦ y^-1 x_i y, with y the last letter
    let a = i - 1;
    let y = rank - 1;
    let mut images: Vec<FreeGroupWord> =
        (0..rank).map(|b| FreeGroupWord::gen(rank, b, 1)).collect();
    images[a] = FreeGroupWord::from_letters(rank, [(y, 1), (a + 1, 1), (y, -1)]);
    images[a + 1] = FreeGroupWord::from_letters(rank, [(y, -1), (a, 1), (y, 1)]);
    FreeGroupAutomorphism::new(images.clone(), images).expect("the twisted swap is an involution")
}

/// The first welded relation v_i σ_{i+1} σ_i = σ_{i+1} σ_i v_{i+1} as
/// relators over the classical/virtual alphabet.
fn welded_relators(n: usize) -> Vec<Relator> {
    (1..=n.saturating_sub(2))
        .map(|i| {
            let lhs = Word::from_letters(
                n,
                [(Gen::v(i), 1), (Gen::s(i + 1), 1), (Gen::s(i), 1)],
            );
            let rhs = Word::from_letters(
                n,
                [(Gen::s(i + 1), 1), (Gen::s(i), 1), (Gen::v(i + 1), 1)],
            );
            Relator::new(RelatorTag::Q1, lhs, rhs)
        })
        .collect()
}

/// Builds the welded or extended representation as a generator map. The
/// source presentation is the group the representation is verified against:
/// the virtual braid group plus the first welded relation, or the virtual
/// braid group itself. Singular generators map to the identity, so words in
/// the full alphabet evaluate through the τ-killing projection.
pub fn builtin_representation(
    name: RepName,
    n: usize,
) -> Result<GeneratorMap<AutGroup>, StructureError> {
    let vb = build_presentation(GroupFamily::VB, n)?;
    let (source, rank) = match name {
        RepName::Welded => {
            let mut p = vb.quotient(welded_relators(n));
            p.family = GroupFamily::Custom;
            (p, n)
        }
        RepName::Extended => (vb, n + 1),
    };
    let group = AutGroup { rank, extended: name == RepName::Extended };
    let mut images: BTreeMap<Gen, FreeGroupAutomorphism> = BTreeMap::new();
    for i in 1..n {
        images.insert(Gen::s(i), sigma_aut(rank, i));
        let v = match name {
            RepName::Welded => swap_aut(rank, i),
            RepName::Extended => twisted_swap_aut(rank, i),
        };
        images.insert(Gen::v(i), v);
        images.insert(Gen::t(i), identity_aut(rank));
    }
    Ok(GeneratorMap::new(source, group, images))
}

/// Which strategy separated a forbidden relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorKind {
    ZxSn,
    AutRep,
    QuotientSearch,
}

impl fmt::Display for SeparatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeparatorKind::ZxSn => "ZxSn",
            SeparatorKind::AutRep => "AutRep",
            SeparatorKind::QuotientSearch => "QuotientSearch",
        };
        write!(f, "{s}")
    }
}

/// Outcome of one forbidden-relation separation.
#[derive(Debug, Clone)]
pub struct ForbiddenReport {
    pub relation: u8,
    pub index: usize,
    pub separator: SeparatorKind,
    pub lhs: Word,
    pub rhs: Word,
    pub lhs_image: String,
    pub rhs_image: String,
    pub separated: bool,
}

/// The two sides of forbidden relation 1..4 at index i.
pub fn forbidden_sides(n: usize, relation: u8, i: usize) -> Result<(Word, Word), StructureError> {
    if !(1..=4).contains(&relation) {
        return Err(StructureError::BadRelation(relation));
    }
    if n < 3 || i < 1 || i > n - 2 {
        return Err(StructureError::BadIndex { i, max: n.saturating_sub(2) });
    }
    let w = |letters: &[(Gen, i64)]| Word::from_letters(n, letters.iter().cloned());
    let (lhs, rhs) = match relation {
        1 => (
            w(&[(Gen::v(i), 1), (Gen::s(i + 1), 1), (Gen::s(i), 1)]),
            w(&[(Gen::s(i + 1), 1), (Gen::s(i), 1), (Gen::v(i + 1), 1)]),
        ),
        2 => (
            w(&[(Gen::v(i + 1), 1), (Gen::s(i), 1), (Gen::s(i + 1), 1)]),
            w(&[(Gen::s(i), 1), (Gen::s(i + 1), 1), (Gen::v(i), 1)]),
        ),
        3 => (
            w(&[(Gen::v(i), 1), (Gen::t(i + 1), 1), (Gen::t(i), 1)]),
            w(&[(Gen::t(i + 1), 1), (Gen::t(i), 1), (Gen::v(i + 1), 1)]),
        ),
        4 => (
            w(&[(Gen::v(i + 1), 1), (Gen::t(i), 1), (Gen::t(i + 1), 1)]),
            w(&[(Gen::t(i), 1), (Gen::t(i + 1), 1), (Gen::v(i), 1)]),
        ),
        _ => unreachable!(),
    };
    Ok((lhs, rhs))
}

/// Certifies that a forbidden relation fails in the group: the singular
/// relations separate under the ℤ×Sₙ projection, the classical ones under a
/// verified free-group representation, with a finite-quotient search as the
/// fallback.
pub fn forbidden_check(n: usize, relation: u8, i: usize) -> Result<ForbiddenReport, StructureError> {
    let (lhs, rhs) = forbidden_sides(n, relation, i)?;
    if relation >= 3 {
        let psi = zxsn_projection(GroupFamily::VSG, n)?;
        debug_assert!(psi.is_homomorphism()?);
        let li = psi.eval(&lhs)?;
        let ri = psi.eval(&rhs)?;
        return Ok(ForbiddenReport {
            relation,
            index: i,
            separator: SeparatorKind::ZxSn,
            lhs_image: li.to_string(),
            rhs_image: ri.to_string(),
            separated: li != ri,
            lhs,
            rhs,
        });
    }
    let rep = match relation {
        1 => builtin_representation(RepName::Extended, n)?,
        _ => builtin_representation(RepName::Welded, n)?,
    };
    if rep.is_homomorphism()? {
        let li = rep.eval(&lhs)?;
        let ri = rep.eval(&rhs)?;
        if li != ri {
            return Ok(ForbiddenReport {
                relation,
                index: i,
                separator: SeparatorKind::AutRep,
                lhs_image: rep.group.render(&li),
                rhs_image: rep.group.render(&ri),
                separated: true,
                lhs,
                rhs,
            });
        }
    }
    // fallback: deterministic search over small symmetric quotients
    let p = build_presentation(GroupFamily::VSG, n)?;
    let targets = [SmallGroup::symmetric(3), SmallGroup::symmetric(4)];
    match search_separating_quotient(&p, &lhs, &rhs, &targets)? {
        Some(wit) => Ok(ForbiddenReport {
            relation,
            index: i,
            separator: SeparatorKind::QuotientSearch,
            lhs_image: format!("{} in {}", wit.a_image, wit.target),
            rhs_image: format!("{} in {}", wit.b_image, wit.target),
            separated: true,
            lhs,
            rhs,
        }),
        None => Ok(ForbiddenReport {
            relation,
            index: i,
            separator: SeparatorKind::QuotientSearch,
            lhs_image: String::new(),
            rhs_image: String::new(),
            separated: false,
            lhs,
            rhs,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;
    use rand::{Rng, SeedableRng};

    #[test]
    fn section_values() {
        assert_eq!(section(&Permutation::adjacent(2, 1), 2), parse_word("v1", 2).unwrap());
        assert!(section(&Permutation::identity(3), 3).is_identity());
        let p = Permutation::parse("[3,1,2]", 3).unwrap();
        let w = section(&p, 3);
        assert_eq!(w.unit_len(), 2);
        // section image recomposes to the permutation
        let phi = phi_triple(GroupFamily::VSG, 3, Triple(1, 1, 1)).unwrap();
        assert_eq!(phi.eval(&w).unwrap(), p);
    }

    #[test]
    fn section_exhaustive_s4() {
        let phi = phi_triple(GroupFamily::VSG, 4, Triple(1, 1, 1)).unwrap();
        for p in Permutation::all(4) {
            let w = section(&p, 4);
            assert_eq!(w.unit_len(), p.inversions());
            assert_eq!(phi.eval(&w).unwrap(), p);
        }
    }

    #[test]
    fn decompose_examples() {
        let v = parse_word("v1", 2).unwrap();
        let d = decompose(&v, Triple(1, 1, 1)).unwrap();
        assert!(d.pure.is_identity());
        assert_eq!(d.perm, Permutation::adjacent(2, 1));

        let s = parse_word("s1", 2).unwrap();
        let d = decompose(&s, Triple(1, 1, 1)).unwrap();
        assert_eq!(d.pure, parse_word("s1 v1^-1", 2).unwrap());
        // the pure part equals s1 v1 in the group
        let engine = crate::freeproduct::vsg2_engine();
        assert_eq!(
            crate::freeproduct::fp_normalize(&d.pure, &engine).unwrap(),
            crate::freeproduct::fp_normalize(&parse_word("s1 v1", 2).unwrap(), &engine).unwrap()
        );

        let sq = parse_word("s1^2", 2).unwrap();
        let d = decompose(&sq, Triple(1, 1, 1)).unwrap();
        assert_eq!(d.pure, sq);
        assert!(d.perm.is_identity());

        assert!(decompose(&s, Triple(1, 1, 0)).is_err());
    }

    #[test]
    fn decomposition_round_trip_sampled() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let n = rng.gen_range(2..=5);
            let len = rng.gen_range(0..20);
            let gens: Vec<Gen> = (1..n)
                .flat_map(|i| [Gen::s(i), Gen::t(i), Gen::v(i)])
                .collect();
            let letters: Vec<(Gen, i64)> = (0..len)
                .map(|_| {
                    (gens[rng.gen_range(0..gens.len())].clone(), if rng.gen() { 1 } else { -1 })
                })
                .collect();
            let w = Word::from_letters(n, letters);
            for triple in Triple::SEMIDIRECT {
                let d = decompose(&w, triple).unwrap();
                let back = d.pure.concat(&d.section_word).unwrap();
                assert_eq!(back, w);
                let phi = phi_triple(GroupFamily::VSG, n, triple).unwrap();
                assert!(phi.eval(&d.pure).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn purity_examples() {
        let a12 = parse_word("s1 v1", 2).unwrap();
        assert!(is_pure(&a12, GroupFamily::VSG, Triple(1, 1, 1)).unwrap());
        let t = parse_word("t1", 2).unwrap();
        assert!(is_pure(&t, GroupFamily::VSG, Triple(1, 0, 1)).unwrap());
        let v = parse_word("v1", 2).unwrap();
        assert!(!is_pure(&v, GroupFamily::VSG, Triple(1, 1, 1)).unwrap());
    }

    #[test]
    fn representations_verify() {
        for n in [2, 3, 4] {
            let welded = builtin_representation(RepName::Welded, n).unwrap();
            assert!(welded.is_homomorphism().unwrap(), "welded at n={n}");
            let extended = builtin_representation(RepName::Extended, n).unwrap();
            assert!(extended.is_homomorphism().unwrap(), "extended at n={n}");
        }
    }

    #[test]
    fn welded_satisfies_first_welded_relation_only() {
        let rep = builtin_representation(RepName::Welded, 3).unwrap();
        let (l1, r1) = forbidden_sides(3, 1, 1).unwrap();
        assert_eq!(rep.eval(&l1).unwrap(), rep.eval(&r1).unwrap());
        let (l2, r2) = forbidden_sides(3, 2, 1).unwrap();
        assert_ne!(rep.eval(&l2).unwrap(), rep.eval(&r2).unwrap());
    }

    #[test]
    fn welded_image_of_sigma_then_swap() {
        let rep = builtin_representation(RepName::Welded, 2).unwrap();
        let w = parse_word("s1 v1", 2).unwrap();
        let img = rep.eval(&w).unwrap();
        // x1 ↦ x2 x1 x2^-1, x2 ↦ x2 ... applying σ then the swap
        assert_eq!(img.image(0), &FreeGroupWord::from_letters(2, [(1, 1), (0, 1), (1, -1)]));
        assert_eq!(img.image(1), &FreeGroupWord::gen(2, 1, 1));
    }

    #[test]
    fn forbidden_relations_all_separate() {
        for n in [3, 4] {
            for relation in 1..=4u8 {
                for i in 1..=n - 2 {
                    let report = forbidden_check(n, relation, i).unwrap();
                    assert!(report.separated, "relation {relation} at i={i}, n={n}");
                    let expected = match relation {
                        1 => SeparatorKind::AutRep,
                        2 => SeparatorKind::AutRep,
                        _ => SeparatorKind::ZxSn,
                    };
                    assert_eq!(report.separator, expected);
                }
            }
        }
    }

    #[test]
    fn forbidden_singular_images_match_projection() {
        let report = forbidden_check(3, 3, 1).unwrap();
        assert_eq!(report.lhs_image, "(2, [2,1,3])");
        assert_eq!(report.rhs_image, "(2, [1,3,2])");
    }

    #[test]
    fn forbidden_argument_validation() {
        assert!(forbidden_check(3, 5, 1).is_err());
        assert!(forbidden_check(3, 1, 2).is_err());
        assert!(forbidden_check(2, 1, 1).is_err());
    }
}
