//! Tietze simplification of presentations with a replayable move trace and
//! a substitution map expressing every original generator in the survivors.

use std::collections::BTreeMap;

use crate::presentation::{Presentation, Relator, RelatorTag};
use crate::word::{Gen, Word};

/// Maximum relator length eligible for generator elimination.
const ELIMINATION_LENGTH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeMove {
    CyclicReduceRelator { index: usize },
    DeleteTrivialRelator { index: usize },
    DeduplicateRelator { index: usize, kept: usize },
    EliminateGenerator { gen: Gen, relator_index: usize, replacement: Word },
}

/// Ordered list of applied moves; replaying it on the input reproduces the
/// output.
#[derive(Debug, Clone, Default)]
pub struct TietzeTrace {
    pub moves: Vec<TietzeMove>,
}

#[derive(Debug, Clone)]
pub struct TietzeResult {
    pub presentation: Presentation,
    pub trace: TietzeTrace,
    /// Original generator → word over the surviving generators.
    pub substitution: BTreeMap<Gen, Word>,
    pub budget_exhausted: bool,
}

struct State {
    strands: usize,
    gens: Vec<Gen>,
    relators: Vec<Word>,
    subst: BTreeMap<Gen, Word>,
    trace: TietzeTrace,
}

impl State {
    /// One simplification step; returns false at the fixpoint.
    fn step(&mut self) -> bool {
        // cyclic reduction
        for (i, r) in self.relators.iter().enumerate() {
            let c = r.cyclic_reduce();
            if &c != r {
                self.relators[i] = c;
                self.trace.moves.push(TietzeMove::CyclicReduceRelator { index: i });
                return true;
            }
        }
        // trivial relators
        for (i, r) in self.relators.iter().enumerate() {
            if r.is_identity() {
                self.relators.remove(i);
                self.trace.moves.push(TietzeMove::DeleteTrivialRelator { index: i });
                return true;
            }
        }
        // duplicates up to rotation and inversion
        for i in 0..self.relators.len() {
            for j in (i + 1)..self.relators.len() {
                if self.relators[i].cyclically_equivalent(&self.relators[j]) {
                    self.relators.remove(j);
                    self.trace.moves.push(TietzeMove::DeduplicateRelator { index: j, kept: i });
                    return true;
                }
            }
        }
        // generator elimination: shortest eligible relator first, then the
        // generator with fewest total occurrences, latest in generator order
        let mut order: Vec<usize> = (0..self.relators.len()).collect();
        order.sort_by_key(|&i| (self.relators[i].unit_len(), i));
        for ri in order {
            let r = &self.relators[ri];
            if r.unit_len() > ELIMINATION_LENGTH_CAP {
                continue;
            }
            let mut candidates: Vec<(usize, usize)> = Vec::new(); // (total occurrences, gen idx)
            for (gi, g) in self.gens.iter().enumerate() {
                if r.occurrences(g) == 1 {
                    let total: usize = self.relators.iter().map(|w| w.occurrences(g)).sum();
                    candidates.push((total, gi));
                }
            }
            if candidates.is_empty() {
                continue;
            }
            let &(_, gi) = candidates
                .iter()
                .min_by_key(|&&(total, gi)| (total, std::cmp::Reverse(gi)))
                .unwrap();
            let gen = self.gens[gi].clone();
            // split r = p · g^e · q, so g = (p⁻¹ q⁻¹)^e
            let units: Vec<(Gen, i64)> = r.unit_letters().map(|(g, s)| (g.clone(), s)).collect();
            let pos = units.iter().position(|(g, _)| g == &gen).unwrap();
            let e = units[pos].1;
            let p = Word::from_letters(self.strands, units[..pos].iter().cloned());
            let q = Word::from_letters(self.strands, units[pos + 1..].iter().cloned());
            let solved = p.invert().concat(&q.invert()).expect("same strands");
            let replacement = if e > 0 { solved } else { solved.invert() };

            let single: BTreeMap<Gen, Word> = [(gen.clone(), replacement.clone())].into();
            for v in self.subst.values_mut() {
                *v = v.substitute(&single);
            }
            self.subst.insert(gen.clone(), replacement.clone());
            self.relators.remove(ri);
            for w in self.relators.iter_mut() {
                *w = w.substitute(&single);
            }
            self.gens.remove(gi);
            self.trace.moves.push(TietzeMove::EliminateGenerator {
                gen,
                relator_index: ri,
                replacement,
            });
            return true;
        }
        false
    }
}

/// Applies cyclic reduction, deletion of trivial and duplicate relators, and
/// elimination of single-occurrence generators to a fixpoint or until the
/// move budget runs out.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeResult {
    let mut st = State {
        strands: p.strands,
        gens: p.generators.clone(),
        relators: p.relators.iter().map(|r| r.word.clone()).collect(),
        subst: BTreeMap::new(),
        trace: TietzeTrace::default(),
    };
    let mut budget_exhausted = false;
    loop {
        if st.trace.moves.len() >= budget {
            budget_exhausted = true;
            break;
        }
        if !st.step() {
            break;
        }
    }
    let relators: Vec<Relator> = st
        .relators
        .iter()
        .map(|w| Relator::from_word(RelatorTag::Derived, w.clone()))
        .collect();
    let presentation = Presentation::custom(st.strands, st.gens, relators);
    TietzeResult {
        presentation,
        trace: st.trace,
        substitution: st.subst,
        budget_exhausted,
    }
}

/// Replays a trace against the input presentation, reproducing the output.
pub fn replay(p: &Presentation, trace: &TietzeTrace) -> Presentation {
    let strands = p.strands;
    let mut gens = p.generators.clone();
    let mut relators: Vec<Word> = p.relators.iter().map(|r| r.word.clone()).collect();
    for mv in &trace.moves {
        match mv {
            TietzeMove::CyclicReduceRelator { index } => {
                relators[*index] = relators[*index].cyclic_reduce();
            }
            TietzeMove::DeleteTrivialRelator { index } => {
                relators.remove(*index);
            }
            TietzeMove::DeduplicateRelator { index, .. } => {
                relators.remove(*index);
            }
            TietzeMove::EliminateGenerator { gen, relator_index, replacement } => {
                let single: BTreeMap<Gen, Word> = [(gen.clone(), replacement.clone())].into();
                relators.remove(*relator_index);
                for w in relators.iter_mut() {
                    *w = w.substitute(&single);
                }
                gens.retain(|g| g != gen);
            }
        }
    }
    let relators: Vec<Relator> =
        relators.iter().map(|w| Relator::from_word(RelatorTag::Derived, w.clone())).collect();
    Presentation::custom(strands, gens, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianization;
    use crate::word::parse_word_over;

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
    fn eliminates_redundant_generator() {
        let p = custom(&["a", "b"], &["a b"]);
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.presentation.generators, vec![Gen::named("a")]);
        assert!(out.presentation.relators.is_empty());
        // b was eliminated as a^-1
        assert_eq!(out.substitution[&Gen::named("b")].to_string(), "a^-1");
    }

    #[test]
    fn already_simplified_is_unchanged() {
        let p = custom(&["a", "b"], &["a b a^-1 b^-1"]);
        let out = tietze_simplify(&p, 100);
        assert!(out.trace.moves.is_empty());
        assert_eq!(out.presentation.generators, p.generators);
        assert_eq!(out.presentation.relators[0].word, p.relators[0].word);
    }

    #[test]
    fn dedup_and_trivial_removal() {
        let p = custom(&["a", "b"], &["a b a^-1 b^-1", "b a b^-1 a^-1", "e"]);
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.presentation.relators.len(), 1);
    }

    #[test]
    fn replay_reproduces_output() {
        let cases = [
            custom(&["a", "b"], &["a b"]),
            custom(&["a", "b", "c"], &["a c b a^-1 c^-1 b^-1", "c^2", "c^2"]),
            custom(&["x", "y", "z"], &["x y z^-1", "z x y x^-1 y^-1 z^-1"]),
        ];
        for p in cases {
            let out = tietze_simplify(&p, 1000);
            assert!(!out.budget_exhausted);
            let replayed = replay(&p, &out.trace);
            assert_eq!(replayed.generators, out.presentation.generators);
            let a: Vec<Word> = replayed.relators.iter().map(|r| r.word.clone()).collect();
            let b: Vec<Word> = out.presentation.relators.iter().map(|r| r.word.clone()).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn abelianization_is_preserved() {
        let cases = [
            custom(&["a", "b", "c"], &["a c b a^-1 c^-1 b^-1"]),
            custom(&["a", "b", "c", "d"], &["a b c^-1", "d^2", "c a b"]),
        ];
        for p in cases {
            let out = tietze_simplify(&p, 1000);
            assert_eq!(abelianization(&p), abelianization(&out.presentation));
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = custom(&["a", "b", "c"], &["a b", "b c", "e", "e", "e"]);
        let out = tietze_simplify(&p, 1);
        assert!(out.budget_exhausted);
    }

    #[test]
    fn substitution_composes_through_chained_eliminations() {
        // a goes first (single occurrence), then c (latest on the tie with b)
        let p = custom(&["a", "b", "c"], &["a b", "b c"]);
        let out = tietze_simplify(&p, 100);
        assert_eq!(out.presentation.generators, vec![Gen::named("b")]);
        let a = &out.substitution[&Gen::named("a")];
        let c = &out.substitution[&Gen::named("c")];
        assert_eq!(a.to_string(), "b^-1");
        assert_eq!(c.to_string(), "b^-1");
    }
}
