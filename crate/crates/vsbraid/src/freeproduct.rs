//! Free products of abelian and free factors: exact word problem via the
//! alternating-syllable normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::hom::GeneratorMap;
use crate::presentation::{build_presentation, GroupFamily, Presentation, Relator, RelatorTag};
use crate::target::TargetGroup;
use crate::word::{reduce_runs, Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("bad factor spec `{0}`")]
    BadSpec(String),
    #[error("generator `{0}` has no factor assignment")]
    Unassigned(String),
}

/// One free-product factor: finitely generated abelian, or free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Abelian { free_rank: usize, torsion: Vec<u64> },
    Free { rank: usize },
}

impl Factor {
    pub fn rank(&self) -> usize {
        match self {
            Factor::Abelian { free_rank, torsion } => free_rank + torsion.len(),
            Factor::Free { rank } => *rank,
        }
    }
}

/// An ordered list of factors; the ambient group is their free product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    pub factors: Vec<Factor>,
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| match fac {
                Factor::Abelian { free_rank: 1, torsion } if torsion.is_empty() => "Z".to_string(),
                Factor::Abelian { free_rank, torsion } if torsion.is_empty() => {
                    format!("Z^{free_rank}")
                }
                Factor::Abelian { free_rank: 0, torsion } if torsion.len() == 1 => {
                    format!("Z_{}", torsion[0])
                }
                Factor::Abelian { free_rank, torsion } => {
                    let t: Vec<String> = torsion.iter().map(|d| format!("Z_{d}")).collect();
                    format!("(Z^{free_rank} x {})", t.join(" x "))
                }
                Factor::Free { rank } => format!("F{rank}"),
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

impl FromStr for FactorSpec {
    type Err = FactorError;

    /// Grammar: factor := "Z" ["^" int] | "Z_" int | "F" int, separated by "*".
    fn from_str(s: &str) -> Result<FactorSpec, FactorError> {
        let mut factors = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let bad = || FactorError::BadSpec(part.to_string());
            if let Some(d) = part.strip_prefix("Z_") {
                let d: u64 = d.parse().map_err(|_| bad())?;
                factors.push(Factor::Abelian { free_rank: 0, torsion: vec![d] });
            } else if let Some(r) = part.strip_prefix("Z^") {
                let r: usize = r.parse().map_err(|_| bad())?;
                factors.push(Factor::Abelian { free_rank: r, torsion: vec![] });
            } else if part == "Z" {
                factors.push(Factor::Abelian { free_rank: 1, torsion: vec![] });
            } else if let Some(r) = part.strip_prefix('F') {
                let r: usize = r.parse().map_err(|_| bad())?;
                factors.push(Factor::Free { rank: r });
            } else {
                return Err(bad());
            }
        }
        if factors.is_empty() {
            return Err(FactorError::BadSpec(s.to_string()));
        }
        Ok(FactorSpec { factors })
    }
}

/// An element of one factor: an exponent vector with torsion coordinates
/// reduced, or a reduced free word over the factor basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorElem {
    Abelian(Vec<i64>),
    Free(Vec<(usize, i64)>),
}

/// Alternating-syllable normal form: adjacent syllables come from distinct
/// factors and no syllable is the factor identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeProductElement {
    pub syllables: Vec<(usize, FactorElem)>,
}

impl FreeProductElement {
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }
}

impl fmt::Display for FreeProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (fi, e) in &self.syllables {
            match e {
                FactorElem::Abelian(v) => {
                    let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    parts.push(format!("{}:({})", fi, coords.join(",")));
                }
                FactorElem::Free(w) => {
                    let letters: Vec<String> = w
                        .iter()
                        .map(|(b, e)| {
                            if *e == 1 {
                                format!("x{}", b + 1)
                            } else {
                                format!("x{}^{}", b + 1, e)
                            }
                        })
                        .collect();
                    parts.push(format!("{}:{}", fi, letters.join(" ")));
                }
            }
        }
        write!(f, "{}", parts.join(" | "))
    }
}

/// The free product of the factors in a spec, with exact arithmetic.
#[derive(Debug, Clone)]
pub struct FreeProduct {
    pub spec: FactorSpec,
}

impl FreeProduct {
    pub fn new(spec: FactorSpec) -> FreeProduct {
        FreeProduct { spec }
    }

    fn factor_is_identity(&self, e: &FactorElem) -> bool {
        match e {
            FactorElem::Abelian(v) => v.iter().all(|&x| x == 0),
            FactorElem::Free(w) => w.is_empty(),
        }
    }

    fn reduce_abelian(&self, fi: usize, v: &mut [i64]) {
        if let Factor::Abelian { free_rank, torsion } = &self.spec.factors[fi] {
            for (t, d) in torsion.iter().enumerate() {
                let i = free_rank + t;
                v[i] = v[i].rem_euclid(*d as i64);
            }
        }
    }

    fn factor_multiply(&self, fi: usize, a: &FactorElem, b: &FactorElem) -> FactorElem {
        match (a, b) {
            (FactorElem::Abelian(x), FactorElem::Abelian(y)) => {
                let mut v: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                self.reduce_abelian(fi, &mut v);
                FactorElem::Abelian(v)
            }
            (FactorElem::Free(x), FactorElem::Free(y)) => {
                FactorElem::Free(reduce_runs(x.iter().chain(y.iter()).cloned()))
            }
            _ => panic!("factor element kind mismatch"),
        }
    }

    fn factor_invert(&self, fi: usize, a: &FactorElem) -> FactorElem {
        match a {
            FactorElem::Abelian(x) => {
                let mut v: Vec<i64> = x.iter().map(|p| -p).collect();
                self.reduce_abelian(fi, &mut v);
                FactorElem::Abelian(v)
            }
            FactorElem::Free(x) => FactorElem::Free(x.iter().rev().map(|(b, e)| (*b, -e)).collect()),
        }
    }

    /// A single-syllable element: basis generator `j` of factor `fi` raised
    /// to `exp`.
    pub fn generator(&self, fi: usize, j: usize, exp: i64) -> FreeProductElement {
        let rank = self.spec.factors[fi].rank();
        assert!(j < rank, "factor basis index out of range");
        let e = match &self.spec.factors[fi] {
            Factor::Abelian { .. } => {
                let mut v = vec![0i64; rank];
                v[j] = exp;
                self.reduce_abelian(fi, &mut v);
                FactorElem::Abelian(v)
            }
            Factor::Free { .. } => FactorElem::Free(reduce_runs([(j, exp)])),
        };
        if self.factor_is_identity(&e) {
            FreeProductElement { syllables: vec![] }
        } else {
            FreeProductElement { syllables: vec![(fi, e)] }
        }
    }

    fn push_syllable(&self, acc: &mut Vec<(usize, FactorElem)>, fi: usize, e: FactorElem) {
        if self.factor_is_identity(&e) {
            return;
        }
        match acc.last() {
            Some((top, _)) if *top == fi => {
                let (_, prev) = acc.pop().unwrap();
                let merged = self.factor_multiply(fi, &prev, &e);
                if !self.factor_is_identity(&merged) {
                    acc.push((fi, merged));
                }
            }
            _ => acc.push((fi, e)),
        }
    }
}

impl TargetGroup for FreeProduct {
    type Elem = FreeProductElement;

    fn identity(&self) -> FreeProductElement {
        FreeProductElement { syllables: vec![] }
    }

    fn multiply(&self, a: &FreeProductElement, b: &FreeProductElement) -> FreeProductElement {
        let mut acc: Vec<(usize, FactorElem)> = Vec::new();
        for (fi, e) in a.syllables.iter().chain(b.syllables.iter()) {
            self.push_syllable(&mut acc, *fi, e.clone());
        }
        FreeProductElement { syllables: acc }
    }

    fn invert(&self, a: &FreeProductElement) -> FreeProductElement {
        let syllables =
            a.syllables.iter().rev().map(|(fi, e)| (*fi, self.factor_invert(*fi, e))).collect();
        FreeProductElement { syllables }
    }

    fn render(&self, a: &FreeProductElement) -> String {
        a.to_string()
    }
}

/// Standard presentation of a free product: per-factor generators named
/// `f<i>g<j>`, with commutators and torsion powers for abelian factors and
/// nothing for free factors. Returns the presentation and the assignment of
/// each generator to its factor element.
pub fn standard_presentation(
    spec: &FactorSpec,
    strands: usize,
) -> (Presentation, GeneratorMap<FreeProduct>) {
    let group = FreeProduct::new(spec.clone());
    let mut gens: Vec<Gen> = Vec::new();
    let mut images: BTreeMap<Gen, FreeProductElement> = BTreeMap::new();
    let mut relators: Vec<Relator> = Vec::new();
    for (fi, factor) in spec.factors.iter().enumerate() {
        let rank = factor.rank();
        let names: Vec<Gen> = (0..rank).map(|j| Gen::named(&format!("f{fi}g{j}"))).collect();
        for (j, g) in names.iter().enumerate() {
            gens.push(g.clone());
            images.insert(g.clone(), group.generator(fi, j, 1));
        }
        if let Factor::Abelian { free_rank, torsion } = factor {
            for a in 0..rank {
                for b in (a + 1)..rank {
                    let lhs =
                        Word::from_letters(strands, [(names[a].clone(), 1), (names[b].clone(), 1)]);
                    let rhs =
                        Word::from_letters(strands, [(names[b].clone(), 1), (names[a].clone(), 1)]);
                    relators.push(Relator::new(RelatorTag::Derived, lhs, rhs));
                }
            }
            for (t, d) in torsion.iter().enumerate() {
                let g = names[free_rank + t].clone();
                let w = Word::gen(strands, g, *d as i64);
                relators.push(Relator::from_word(RelatorTag::Derived, w));
            }
        }
    }
    let p = Presentation::custom(strands, gens, relators);
    let map = GeneratorMap::new(p.clone(), group, images);
    (p, map)
}

/// Normalizes a word through a generator → factor-element assignment:
/// the exact word problem in the free product.
pub fn fp_normalize(
    w: &Word,
    map: &GeneratorMap<FreeProduct>,
) -> Result<FreeProductElement, crate::hom::HomError> {
    map.eval(w)
}

/// The exact word-problem engine for the two-strand group: ℤ² ∗ ℤ₂ with
/// σ₁, τ₁ spanning the abelian factor and v₁ the involution.
pub fn vsg2_engine() -> GeneratorMap<FreeProduct> {
    let spec: FactorSpec = "Z^2 * Z_2".parse().unwrap();
    let group = FreeProduct::new(spec);
    let source = build_presentation(GroupFamily::VSG, 2).unwrap();
    let mut images = BTreeMap::new();
    images.insert(Gen::s(1), group.generator(0, 0, 1));
    images.insert(Gen::t(1), group.generator(0, 1, 1));
    images.insert(Gen::v(1), group.generator(1, 0, 1));
    GeneratorMap::new(source, group, images)
}

/// Renders a normal form from the two-strand engine back as a canonical
/// braid word: each ℤ² syllable as `s1^a t1^b`, each ℤ₂ syllable as `v1`.
pub fn render_vsg2_normal_form(e: &FreeProductElement) -> String {
    if e.syllables.is_empty() {
        return "e".to_string();
    }
    let mut parts = Vec::new();
    for (fi, elem) in &e.syllables {
        match (fi, elem) {
            (0, FactorElem::Abelian(v)) => {
                if v[0] == 1 {
                    parts.push("s1".to_string());
                } else if v[0] != 0 {
                    parts.push(format!("s1^{}", v[0]));
                }
                if v[1] == 1 {
                    parts.push("t1".to_string());
                } else if v[1] != 0 {
                    parts.push(format!("t1^{}", v[1]));
                }
            }
            (1, FactorElem::Abelian(v)) => {
                debug_assert_eq!(v[0], 1);
                parts.push("v1".to_string());
            }
            _ => unreachable!("two-strand engine has exactly two factors"),
        }
    }
    parts.join(" ")
}

/// Searches for a factor generator failing to commute with `x`; free
/// products of nontrivial groups have trivial center, so a witness exists
/// for every nontrivial element when there are at least two factors.
pub fn noncommuting_witness(group: &FreeProduct, x: &FreeProductElement) -> Option<(usize, usize)> {
    for (fi, factor) in group.spec.factors.iter().enumerate() {
        for j in 0..factor.rank() {
            let g = group.generator(fi, j, 1);
            let xg = group.multiply(x, &g);
            let gx = group.multiply(&g, x);
            if xg != gx {
                return Some((fi, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;
    use rand::{Rng, SeedableRng};

    #[test]
    fn spec_parsing_round_trip() {
        for text in ["Z^2 * Z_2", "F2 * Z_2 * Z_2", "Z^2 * Z^2", "Z^2 * Z", "Z_2"] {
            let spec: FactorSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("Q * Z".parse::<FactorSpec>().is_err());
    }

    #[test]
    fn vsg2_normal_forms() {
        let engine = vsg2_engine();
        // v1 s1 t1 s1^-1 v1 v1 collapses to v1 t1
        let w = parse_word("v1 s1 t1 s1^-1 v1 v1", 2).unwrap();
        let nf = fp_normalize(&w, &engine).unwrap();
        assert_eq!(render_vsg2_normal_form(&nf), "v1 t1");
        // v1 v1 is the identity
        let vv = parse_word("v1 v1", 2).unwrap();
        assert!(fp_normalize(&vv, &engine).unwrap().is_identity());
        let vinv = parse_word("v1^-1", 2).unwrap();
        let v = parse_word("v1", 2).unwrap();
        assert_eq!(fp_normalize(&vinv, &engine).unwrap(), fp_normalize(&v, &engine).unwrap());
        // abelian collection
        let sts = parse_word("s1 t1 s1", 2).unwrap();
        let nf = fp_normalize(&sts, &engine).unwrap();
        assert_eq!(render_vsg2_normal_form(&nf), "s1^2 t1");
        assert_eq!(nf.syllables.len(), 1);
    }

    #[test]
    fn engine_is_invariant_under_relators() {
        use crate::presentation::{apply_relation, InsertDirection};
        let engine = vsg2_engine();
        let p = engine.source.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let gens = [Gen::s(1), Gen::t(1), Gen::v(1)];
        for _ in 0..10_000 {
            let len = rng.gen_range(0..12);
            let letters: Vec<(Gen, i64)> = (0..len)
                .map(|_| (gens[rng.gen_range(0..3)].clone(), if rng.gen() { 1 } else { -1 }))
                .collect();
            let w = Word::from_letters(2, letters);
            let r = &p.relators[rng.gen_range(0..p.relators.len())];
            let pos = rng.gen_range(0..=w.unit_len());
            let dir = if rng.gen() { InsertDirection::Forward } else { InsertDirection::Inverse };
            let rot = rng.gen_range(0..r.word.unit_len().max(1));
            let w2 = apply_relation(&w, r, pos, dir, rot).unwrap();
            assert_eq!(
                fp_normalize(&w, &engine).unwrap(),
                fp_normalize(&w2, &engine).unwrap(),
                "word {w} vs {w2}"
            );
        }
    }

    #[test]
    fn inverse_law() {
        let engine = vsg2_engine();
        let group = engine.group.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let gens = [Gen::s(1), Gen::t(1), Gen::v(1)];
        for _ in 0..500 {
            let len = rng.gen_range(0..10);
            let letters: Vec<(Gen, i64)> = (0..len)
                .map(|_| (gens[rng.gen_range(0..3)].clone(), if rng.gen() { 1 } else { -1 }))
                .collect();
            let w = Word::from_letters(2, letters);
            let x = fp_normalize(&w, &engine).unwrap();
            let xi = fp_normalize(&w.invert(), &engine).unwrap();
            assert!(group.multiply(&x, &xi).is_identity());
        }
    }

    #[test]
    fn standard_presentation_structure() {
        let spec: FactorSpec = "Z^2 * Z_2".parse().unwrap();
        let (p, map) = standard_presentation(&spec, 2);
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relators.len(), 2); // one commutator, one torsion power
        assert!(map.is_homomorphism().unwrap());
        let spec: FactorSpec = "F2 * Z_2 * Z_2".parse().unwrap();
        let (p, map) = standard_presentation(&spec, 2);
        assert_eq!(p.generators.len(), 4);
        assert_eq!(p.relators.len(), 2); // two torsion powers, free factor relation-free
        assert!(map.is_homomorphism().unwrap());
    }

    #[test]
    fn torsion_reduction() {
        let spec: FactorSpec = "Z_2".parse().unwrap();
        let g = FreeProduct::new(spec);
        let x = g.generator(0, 0, 1);
        assert!(g.multiply(&x, &x).is_identity());
        assert_eq!(g.generator(0, 0, -1), x);
        assert!(g.generator(0, 0, 4).is_identity());
    }

    #[test]
    fn free_factor_words() {
        let spec: FactorSpec = "F2 * Z".parse().unwrap();
        let g = FreeProduct::new(spec);
        let a = g.generator(0, 0, 1);
        let b = g.generator(0, 1, 1);
        let z = g.generator(1, 0, 1);
        let w = g.multiply(&g.multiply(&a, &b), &g.multiply(&z, &g.invert(&b)));
        assert_eq!(w.syllables.len(), 3);
        let back = g.multiply(&w, &g.invert(&w));
        assert!(back.is_identity());
    }

    #[test]
    fn noncommuting_witness_exists() {
        let spec: FactorSpec = "Z^2 * Z_2".parse().unwrap();
        let g = FreeProduct::new(spec);
        let x = g.multiply(&g.generator(0, 0, 1), &g.generator(1, 0, 1));
        assert!(noncommuting_witness(&g, &x).is_some());
    }
}
