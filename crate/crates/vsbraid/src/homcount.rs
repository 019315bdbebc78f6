//! Exact homomorphism counting into small finite groups (an isomorphism
//! fingerprint) and deterministic search for separating quotients.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freeproduct::{Factor, FactorSpec};
use crate::presentation::{Presentation, Relator};
use crate::target::{SmallGroup, TargetGroup};
use crate::word::{Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomcountError {
    #[error("search space {0} exceeds the bound {1}")]
    SearchSpaceExceeded(u128, u128),
}

const SEARCH_BOUND: u128 = 500_000_000;

fn eval_partial(w: &Word, gens: &[Gen], images: &[Option<usize>], g: &SmallGroup) -> Option<usize> {
    let mut acc = g.identity();
    for l in w.letters() {
        let idx = gens.iter().position(|x| x == &l.gen)?;
        let img = images[idx]?;
        acc = g.multiply(&acc, &g.power(&img, l.exp));
    }
    Some(acc)
}

struct Dfs<'a> {
    p: &'a Presentation,
    g: &'a SmallGroup,
    /// relators ready to check once generator k is assigned
    ready_at: Vec<Vec<&'a Relator>>,
}

impl<'a> Dfs<'a> {
    fn new(p: &'a Presentation, g: &'a SmallGroup) -> Dfs<'a> {
        let mut ready_at: Vec<Vec<&Relator>> = vec![Vec::new(); p.generators.len().max(1)];
        for r in &p.relators {
            let max_idx = r
                .word
                .letters()
                .iter()
                .filter_map(|l| p.generators.iter().position(|x| x == &l.gen))
                .max();
            match max_idx {
                Some(k) => ready_at[k].push(r),
                None => ready_at[0].push(r), // empty relator: always satisfied
            }
        }
        Dfs { p, g, ready_at }
    }

    fn relators_hold_at(&self, k: usize, images: &[Option<usize>]) -> bool {
        let id = self.g.identity();
        for r in &self.ready_at[k] {
            match eval_partial(&r.word, &self.p.generators, images, self.g) {
                Some(v) if v == id => {}
                Some(_) => return false,
                None => unreachable!("relator support assigned by construction"),
            }
        }
        true
    }

    fn count(&self, k: usize, images: &mut Vec<Option<usize>>) -> u64 {
        if k == self.p.generators.len() {
            return 1;
        }
        let mut total = 0;
        for e in 0..self.g.order() {
            images[k] = Some(e);
            if self.relators_hold_at(k, images) {
                total += self.count(k + 1, images);
            }
        }
        images[k] = None;
        total
    }
}

/// Exact count of generator assignments satisfying all relators, via
/// depth-first enumeration with incremental relator pruning.
pub fn count_homs(p: &Presentation, g: &SmallGroup) -> Result<u64, HomcountError> {
    let space = (g.order() as u128).pow(p.generators.len() as u32);
    if space > SEARCH_BOUND {
        return Err(HomcountError::SearchSpaceExceeded(space, SEARCH_BOUND));
    }
    if p.generators.is_empty() {
        return Ok(1);
    }
    let dfs = Dfs::new(p, g);
    let mut images = vec![None; p.generators.len()];
    Ok(dfs.count(0, &mut images))
}

/// Hom counts into the standard fingerprint targets S₃ and S₄.
pub fn fingerprint(p: &Presentation) -> Result<Vec<(String, u64)>, HomcountError> {
    let mut out = Vec::new();
    for m in [3usize, 4] {
        let g = SmallGroup::symmetric(m);
        out.push((g.name.clone(), count_homs(p, &g)?));
    }
    Ok(out)
}

/// Independent oracle for hom counts out of a free product: the product over
/// factors of the per-factor counts, each computed by brute enumeration.
pub fn free_product_hom_count(spec: &FactorSpec, g: &SmallGroup) -> u64 {
    let mut total: u64 = 1;
    for factor in &spec.factors {
        total *= match factor {
            Factor::Free { rank } => (g.order() as u64).pow(*rank as u32),
            Factor::Abelian { free_rank, torsion } => {
                let rank = free_rank + torsion.len();
                let mut images: Vec<usize> = Vec::with_capacity(rank);
                count_abelian_tuples(g, *free_rank, torsion, &mut images)
            }
        };
    }
    total
}

fn count_abelian_tuples(
    g: &SmallGroup,
    free_rank: usize,
    torsion: &[u64],
    images: &mut Vec<usize>,
) -> u64 {
    let rank = free_rank + torsion.len();
    if images.len() == rank {
        return 1;
    }
    let k = images.len();
    let mut total = 0;
    'outer: for e in 0..g.order() {
        for &prev in images.iter() {
            if g.multiply(&e, &prev) != g.multiply(&prev, &e) {
                continue 'outer;
            }
        }
        if k >= free_rank {
            let d = torsion[k - free_rank] as i64;
            if g.power(&e, d) != g.identity() {
                continue;
            }
        }
        images.push(e);
        total += count_abelian_tuples(g, free_rank, torsion, images);
        images.pop();
    }
    total
}

/// A verified homomorphism separating two words, found by search.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    pub target: String,
    pub images: BTreeMap<Gen, String>,
    pub a_image: String,
    pub b_image: String,
}

/// Deterministic search over the target list and generator assignments for
/// the first verified homomorphism with eval(a) ≠ eval(b). Absence of a
/// result is inconclusive.
pub fn search_separating_quotient(
    p: &Presentation,
    a: &Word,
    b: &Word,
    targets: &[SmallGroup],
) -> Result<Option<SeparationWitness>, HomcountError> {
    for g in targets {
        let space = (g.order() as u128).pow(p.generators.len() as u32);
        if space > SEARCH_BOUND {
            return Err(HomcountError::SearchSpaceExceeded(space, SEARCH_BOUND));
        }
        let dfs = Dfs::new(p, g);
        let mut images = vec![None; p.generators.len()];
        if let Some(found) = separate(&dfs, 0, &mut images, a, b) {
            let rendered: BTreeMap<Gen, String> = p
                .generators
                .iter()
                .zip(&found)
                .map(|(gen, e)| (gen.clone(), g.render(&e.unwrap())))
                .collect();
            let ai = eval_partial(a, &p.generators, &found, g).unwrap();
            let bi = eval_partial(b, &p.generators, &found, g).unwrap();
            return Ok(Some(SeparationWitness {
                target: g.name.clone(),
                images: rendered,
                a_image: g.render(&ai),
                b_image: g.render(&bi),
            }));
        }
    }
    Ok(None)
}

fn separate(
    dfs: &Dfs<'_>,
    k: usize,
    images: &mut Vec<Option<usize>>,
    a: &Word,
    b: &Word,
) -> Option<Vec<Option<usize>>> {
    if k == dfs.p.generators.len() {
        let ai = eval_partial(a, &dfs.p.generators, images, dfs.g)?;
        let bi = eval_partial(b, &dfs.p.generators, images, dfs.g)?;
        if ai != bi {
            return Some(images.clone());
        }
        return None;
    }
    for e in 0..dfs.g.order() {
        images[k] = Some(e);
        if dfs.relators_hold_at(k, images) {
            if let Some(found) = separate(dfs, k + 1, images, a, b) {
                return Some(found);
            }
        }
    }
    images[k] = None;
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_presentation, GroupFamily, RelatorTag};
    use crate::word::{parse_word, parse_word_over};

    fn custom(gens: &[&str], rels: &[&str]) -> Presentation {
        let gens: Vec<Gen> = gens.iter().map(|g| Gen::named(g)).collect();
        let rels = rels
            .iter()
            .map(|r| {
                let w = parse_word_over(r, 2, &gens).unwrap();
                Relator::from_word(RelatorTag::Derived, w)
            })
            .collect();
        Presentation::custom(2, gens, rels)
    }

    #[test]
    fn involution_count_into_s3() {
        // identity plus the three transpositions
        let p = custom(&["a"], &["a^2"]);
        let s3 = SmallGroup::symmetric(3);
        assert_eq!(count_homs(&p, &s3).unwrap(), 4);
    }

    #[test]
    fn z2_free_z_count_is_108() {
        let p = custom(&["x", "y", "z"], &["x y x^-1 y^-1"]);
        let s3 = SmallGroup::symmetric(3);
        assert_eq!(count_homs(&p, &s3).unwrap(), 108);
        let spec: FactorSpec = "Z^2 * Z".parse().unwrap();
        assert_eq!(free_product_hom_count(&spec, &s3), 108);
    }

    #[test]
    fn vsg2_counts_match_free_product_oracle() {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        let spec: FactorSpec = "Z^2 * Z_2".parse().unwrap();
        for m in [3, 4] {
            let g = SmallGroup::symmetric(m);
            assert_eq!(count_homs(&p, &g).unwrap(), free_product_hom_count(&spec, &g));
        }
    }

    #[test]
    fn oracle_values_for_small_specs() {
        let s3 = SmallGroup::symmetric(3);
        let s4 = SmallGroup::symmetric(4);
        let check = |text: &str, c3: u64, c4: u64| {
            let spec: FactorSpec = text.parse().unwrap();
            assert_eq!(free_product_hom_count(&spec, &s3), c3, "{text} into S3");
            assert_eq!(free_product_hom_count(&spec, &s4), c4, "{text} into S4");
        };
        check("Z^2 * Z", 108, 2880);
        check("Z^2 * Z_2", 72, 1200);
        check("Z^2 * Z^2", 324, 14400);
        check("Z^2 * Z_2 * Z_2", 288, 12000);
        check("F2 * Z_2 * Z_2", 576, 57600);
    }

    #[test]
    fn search_space_bound() {
        let p = custom(&["a", "b", "c", "d", "e", "f", "g", "h"], &[]);
        let s4 = SmallGroup::symmetric(4);
        // 24^8 exceeds the bound
        assert!(matches!(count_homs(&p, &s4), Err(HomcountError::SearchSpaceExceeded(..))));
    }

    #[test]
    fn separate_singular_generators() {
        let p = build_presentation(GroupFamily::VSG, 3).unwrap();
        let a = parse_word("t1", 3).unwrap();
        let b = parse_word("t2", 3).unwrap();
        let targets = [SmallGroup::symmetric(3)];
        let w = search_separating_quotient(&p, &a, &b, &targets).unwrap().unwrap();
        assert_ne!(w.a_image, w.b_image);
        // equal words are never separated
        let none = search_separating_quotient(&p, &a, &a, &targets).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn braid_quotient_tau_commutator_survives_in_s3() {
        // in VSG_3 with classical generators killed, [t1, v1] maps to a
        // nontrivial element of some S3 quotient
        let n = 3;
        let p = build_presentation(GroupFamily::VSG, n).unwrap();
        let extra: Vec<Relator> = (1..n)
            .map(|i| Relator::from_word(RelatorTag::Derived, Word::gen(n, Gen::s(i), 1)))
            .collect();
        let q = p.quotient(extra);
        let a = parse_word("t1 v1 t1^-1 v1^-1", n).unwrap();
        let b = Word::identity(n);
        let targets = [SmallGroup::symmetric(3)];
        let w = search_separating_quotient(&q, &a, &b, &targets).unwrap().unwrap();
        assert_eq!(w.b_image, "[1,2,3]");
        assert_ne!(w.a_image, w.b_image);
    }
}
