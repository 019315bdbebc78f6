//! Bounded word-problem search in a finitely presented group.
//!
//! A successful trivialization is a proof (every move preserves the group
//! element); a failed abelianization membership test is a proof of
//! nontriviality; everything else is reported unknown. Certificates built on
//! this engine reject on unknown rather than approximate.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::matrix::{hermite_rows, IntMatrix};
use crate::presentation::Presentation;
use crate::word::{Gen, Word};

/// Outcome of a triviality decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Words in the search core are interned: letter ±(id+1) is generator id
/// with exponent ±1.
type IWord = Vec<i32>;

fn reduce_ints(raw: impl IntoIterator<Item = i32>) -> IWord {
    let mut out: IWord = Vec::new();
    for x in raw {
        match out.last() {
            Some(&top) if top == -x => {
                out.pop();
            }
            _ => out.push(x),
        }
    }
    out
}

fn cyclic_reduce_ints(u: &[i32]) -> IWord {
    let mut start = 0;
    let mut end = u.len();
    while end - start >= 2 && u[start] == -u[end - 1] {
        start += 1;
        end -= 1;
    }
    u[start..end].to_vec()
}

/// A reusable word-problem engine for one presentation.
pub struct Trivializer {
    generators: Vec<Gen>,
    gen_ids: BTreeMap<Gen, usize>,
    /// Generator eliminations harvested from length-one and length-two
    /// relators (g = 1, g = h^±).
    subst: BTreeMap<Gen, Word>,
    /// All cyclic rotations of the surviving relators and their inverses.
    forms: Vec<IWord>,
    /// Short forms that may be inserted anywhere (involution squares etc.).
    insertable: Vec<IWord>,
    max_form_len: usize,
    /// Hermite form of the relator exponent lattice, for the definitive
    /// nontriviality test.
    ab_lattice: IntMatrix,
    ab_pivots: Vec<usize>,
}

impl Trivializer {
    pub fn new(p: &Presentation) -> Trivializer {
        let strands = p.strands;
        let mut relators: Vec<Word> = p.relators.iter().map(|r| r.word.clone()).collect();
        let mut subst: BTreeMap<Gen, Word> = BTreeMap::new();
        loop {
            relators = relators
                .iter()
                .map(|r| r.substitute(&subst).cyclic_reduce())
                .filter(|r| !r.is_identity())
                .collect();
            let mut new_sub: Option<(Gen, Word)> = None;
            for r in &relators {
                let units: Vec<(Gen, i64)> =
                    r.unit_letters().map(|(g, s)| (g.clone(), s)).collect();
                if units.len() == 1 {
                    new_sub = Some((units[0].0.clone(), Word::identity(strands)));
                    break;
                }
                if units.len() == 2 && units[0].0 != units[1].0 {
                    let (g, e1) = units[0].clone();
                    let (h, e2) = units[1].clone();
                    // g^{e1} h^{e2} = 1: eliminate the larger generator
                    let sub = if g > h {
                        (g, Word::gen(strands, h, -e1 * e2))
                    } else {
                        (h, Word::gen(strands, g, -e1 * e2))
                    };
                    new_sub = Some(sub);
                    break;
                }
            }
            match new_sub {
                Some((g, w)) => {
                    let single: BTreeMap<Gen, Word> = [(g.clone(), w.clone())].into();
                    for v in subst.values_mut() {
                        *v = v.substitute(&single);
                    }
                    subst.insert(g, w);
                }
                None => break,
            }
        }

        let generators = p.generators.clone();
        let gen_ids: BTreeMap<Gen, usize> =
            generators.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let intern = |w: &Word| -> IWord {
            w.unit_letters()
                .map(|(g, s)| {
                    let id = gen_ids[g] as i32 + 1;
                    if s > 0 {
                        id
                    } else {
                        -id
                    }
                })
                .collect()
        };

        let mut seen: HashSet<IWord> = HashSet::new();
        let mut forms: Vec<IWord> = Vec::new();
        for r in &relators {
            for base in [r.clone(), r.invert()] {
                for rot in base.rotations() {
                    let units = intern(&rot);
                    if !units.is_empty() && seen.insert(units.clone()) {
                        forms.push(units);
                    }
                }
            }
        }
        forms.sort();
        let insertable: Vec<IWord> = forms.iter().filter(|f| f.len() <= 2).cloned().collect();
        let max_form_len = forms.iter().map(|f| f.len()).max().unwrap_or(0);

        let ab = crate::abelian::exponent_matrix(p);
        let (ab_lattice, ab_pivots) = hermite_rows(&ab);

        Trivializer {
            generators,
            gen_ids,
            subst,
            forms,
            insertable,
            max_form_len,
            ab_lattice,
            ab_pivots,
        }
    }

    /// Exponent-vector membership in the relator lattice; failure proves the
    /// word nontrivial.
    fn abelian_test(&self, w: &Word) -> bool {
        let mut x: Vec<BigInt> =
            self.generators.iter().map(|g| BigInt::from(w.exponent_of(g))).collect();
        for (row, &col) in self.ab_pivots.iter().enumerate() {
            if x[col].is_zero() {
                continue;
            }
            let pivot = self.ab_lattice.get(row, col);
            if !(&x[col] % pivot).is_zero() {
                return false;
            }
            let f = &x[col] / pivot;
            for j in 0..self.ab_lattice.cols {
                x[j] = &x[j] - &f * self.ab_lattice.get(row, j);
            }
        }
        x.iter().all(|v| v.is_zero())
    }

    fn successors(&self, units: &IWord, cap: usize, out: &mut Vec<IWord>) {
        // subword rewrites: match a prefix of a relator form, replace it by
        // the inverse of the rest
        for i in 0..units.len() {
            for form in &self.forms {
                let mut m = 0;
                while m < form.len() && i + m < units.len() && units[i + m] == form[m] {
                    m += 1;
                }
                for s in 1..=m {
                    let tail = &form[s..];
                    if units.len() - s + tail.len() > cap {
                        continue;
                    }
                    let raw = units[..i]
                        .iter()
                        .copied()
                        .chain(tail.iter().rev().map(|&x| -x))
                        .chain(units[i + s..].iter().copied());
                    out.push(cyclic_reduce_ints(&reduce_ints(raw)));
                }
            }
        }
        // insertions of short identity-valued forms
        for i in 0..=units.len() {
            for form in &self.insertable {
                if units.len() + form.len() > cap {
                    continue;
                }
                let raw = units[..i]
                    .iter()
                    .copied()
                    .chain(form.iter().copied())
                    .chain(units[i..].iter().copied());
                out.push(cyclic_reduce_ints(&reduce_ints(raw)));
            }
        }
    }

    /// Best-first search for a trivialization by relator rewrites.
    fn search(&self, w: &Word, budget: usize) -> bool {
        let prepared = w.substitute(&self.subst).cyclic_reduce();
        let start: IWord = prepared
            .unit_letters()
            .map(|(g, s)| {
                let id = *self
                    .gen_ids
                    .get(g)
                    .unwrap_or_else(|| panic!("letter `{g}` outside the presentation"))
                    as i32
                    + 1;
                if s > 0 {
                    id
                } else {
                    -id
                }
            })
            .collect();
        if start.is_empty() {
            return true;
        }
        let cap = start.len().max(self.max_form_len) + 6;
        let mut heap: BinaryHeap<Reverse<(usize, u64, IWord)>> = BinaryHeap::new();
        let mut visited: HashSet<IWord> = HashSet::new();
        let mut order = 0u64;
        visited.insert(start.clone());
        heap.push(Reverse((start.len(), order, start)));
        let mut expansions = 0usize;
        let mut succ = Vec::new();
        while let Some(Reverse((_, _, node))) = heap.pop() {
            if node.is_empty() {
                return true;
            }
            if expansions >= budget {
                return false;
            }
            expansions += 1;
            succ.clear();
            self.successors(&node, cap, &mut succ);
            for s in succ.drain(..) {
                if s.is_empty() {
                    return true;
                }
                if s.len() <= cap && visited.insert(s.clone()) {
                    order += 1;
                    heap.push(Reverse((s.len(), order, s)));
                }
            }
        }
        false
    }

    /// Decides triviality of `w` in the presented group within the given
    /// node budget.
    pub fn decide(&self, w: &Word, budget: usize) -> Triviality {
        if !self.abelian_test(w) {
            return Triviality::Nontrivial;
        }
        if self.search(w, budget) {
            Triviality::Trivial
        } else {
            Triviality::Unknown
        }
    }

    /// Decides equality of two words in the presented group.
    pub fn words_equal(&self, a: &Word, b: &Word, budget: usize) -> Triviality {
        let d = a.concat(&b.invert()).expect("equal strand counts");
        self.decide(&d, budget)
    }
}

/// One-shot triviality decision.
pub fn decide_triviality(p: &Presentation, w: &Word, budget: usize) -> Triviality {
    Trivializer::new(p).decide(w, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_presentation, GroupFamily, Relator, RelatorTag};
    use crate::word::parse_word;

    const BUDGET: usize = 20_000;

    #[test]
    fn relators_are_trivial() {
        let p = build_presentation(GroupFamily::VSG, 3).unwrap();
        let t = Trivializer::new(&p);
        for r in &p.relators {
            assert_eq!(t.decide(&r.word, BUDGET), Triviality::Trivial, "{}", r.word);
        }
    }

    #[test]
    fn conjugates_and_products_of_relators() {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        let t = Trivializer::new(&p);
        let w = parse_word("s1 v1^2 s1^-1 t1 s1 t1^-1 s1^-1", 2).unwrap();
        assert_eq!(t.decide(&w, BUDGET), Triviality::Trivial);
    }

    #[test]
    fn abelianization_separates() {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        let t = Trivializer::new(&p);
        assert_eq!(t.decide(&parse_word("s1", 2).unwrap(), BUDGET), Triviality::Nontrivial);
        assert_eq!(t.decide(&parse_word("v1", 2).unwrap(), BUDGET), Triviality::Nontrivial);
        // v1^2 is trivial even though v1 is not
        assert_eq!(t.decide(&parse_word("v1^2", 2).unwrap(), BUDGET), Triviality::Trivial);
    }

    #[test]
    fn commutator_needs_search() {
        // [s1, t1] is trivial in VSG_2 but invisible to the abelian test alone
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        let t = Trivializer::new(&p);
        let w = parse_word("t1 s1 t1^-1 s1^-1", 2).unwrap();
        assert_eq!(t.decide(&w, BUDGET), Triviality::Trivial);
    }

    #[test]
    fn killed_generators_collapse() {
        // adding s_i = 1 to VSG_3 makes t1 = t2 provable
        let p = build_presentation(GroupFamily::VSG, 3).unwrap();
        let extra: Vec<Relator> = (1..3)
            .map(|i| Relator::from_word(RelatorTag::Derived, Word::gen(3, Gen::s(i), 1)))
            .collect();
        let q = p.quotient(extra);
        let t = Trivializer::new(&q);
        let a = parse_word("t1", 3).unwrap();
        let b = parse_word("t2", 3).unwrap();
        assert_eq!(t.words_equal(&a, &b, BUDGET), Triviality::Trivial);
        // the braid-quotient commutator [t1, v1] is NOT provably trivial:
        // there is a quotient where it survives
        let c = parse_word("t1 v1 t1^-1 v1^-1", 3).unwrap();
        assert_ne!(t.decide(&c, BUDGET), Triviality::Trivial);
    }

    #[test]
    fn braid_quotient_commutator_resolves_at_n4() {
        // with four strands the far commuting relations make [t1, v1] trivial
        // in the braid quotient
        let n = 4;
        let p = build_presentation(GroupFamily::VSG, n).unwrap();
        let extra: Vec<Relator> = (1..n)
            .map(|i| Relator::from_word(RelatorTag::Derived, Word::gen(n, Gen::s(i), 1)))
            .collect();
        let q = p.quotient(extra);
        let t = Trivializer::new(&q);
        let c = parse_word("t1 v1 t1^-1 v1^-1", n).unwrap();
        assert_eq!(t.decide(&c, BUDGET), Triviality::Trivial);
        let c2 = parse_word("t1 v2 t1^-1 v2^-1", n).unwrap();
        assert_eq!(t.decide(&c2, BUDGET), Triviality::Trivial);
    }

    #[test]
    fn coxeter_cube_of_adjacent_virtuals() {
        // (v1 v2)^3 dies in VSG_3
        let p = build_presentation(GroupFamily::VSG, 3).unwrap();
        let t = Trivializer::new(&p);
        let w = parse_word("v1 v2 v1 v2 v1 v2", 3).unwrap();
        assert_eq!(t.decide(&w, BUDGET), Triviality::Trivial);
    }
}
