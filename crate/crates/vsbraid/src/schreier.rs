//! Coset tables for kernels of homomorphisms to finite groups and the
//! Reidemeister–Schreier rewriting process.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::collections::VecDeque;
use std::hash::Hash;

use thiserror::Error;

use crate::hom::GeneratorMap;
use crate::presentation::Presentation;
use crate::target::TargetGroup;
use crate::word::{Family, Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchreierError {
    #[error("the defining map is not a homomorphism")]
    NotHomomorphism,
    #[error("word leaves the identity coset; not a kernel element")]
    NotInKernel,
}

/// Cosets of the kernel of a finite-image homomorphism, identified with the
/// reachable image elements. The transversal is a Schreier (prefix-closed)
/// set of representative words built breadth-first.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub source: Presentation,
    /// Representative word per coset, in discovery order; coset 0 is the
    /// identity with the empty word.
    pub transversal: Vec<Word>,
    /// action[c][g] = coset of transversal[c] · generators[g]
    action: Vec<Vec<usize>>,
    /// inverse action: action_inv[c][g] · generators[g] = c
    action_inv: Vec<Vec<usize>>,
}

/// Traversal priority used when discovering cosets: virtual generators
/// first, then classical, then singular, indices ascending. This choice of
/// breadth-first order reproduces the transversals {1, v₁} and {1, σ₁} used
/// in the two-strand kernel computations.
fn bfs_order(p: &Presentation) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..p.generators.len()).collect();
    let key = |g: &Gen| match g {
        Gen::Braid { family: Family::Virtual, index } => (0usize, *index, String::new()),
        Gen::Braid { family: Family::Classical, index } => (1, *index, String::new()),
        Gen::Braid { family: Family::Singular, index } => (2, *index, String::new()),
        Gen::Named(name) => (3, 0, name.clone()),
    };
    idx.sort_by_key(|&i| key(&p.generators[i]));
    idx
}

/// Builds the coset table of ker(m) for a verified homomorphism with finite
/// image.
pub fn coset_table_from_hom<G>(m: &GeneratorMap<G>) -> Result<CosetTable, SchreierError>
where
    G: TargetGroup,
    G::Elem: Hash,
{
    if !m.is_homomorphism().map_err(|_| SchreierError::NotHomomorphism)? {
        return Err(SchreierError::NotHomomorphism);
    }
    let p = &m.source;
    let n = p.strands;
    let order = bfs_order(p);
    let mut elems: Vec<G::Elem> = vec![m.group.identity()];
    let mut index: HashMap<G::Elem, usize> = HashMap::new();
    index.insert(m.group.identity(), 0);
    let mut transversal = vec![Word::identity(n)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for &gi in &order {
            let g = &p.generators[gi];
            let img = &m.images[g];
            let next = m.group.multiply(&elems[c], img);
            if !index.contains_key(&next) {
                let idx = elems.len();
                index.insert(next.clone(), idx);
                elems.push(next);
                let rep = transversal[c]
                    .concat(&Word::gen(n, g.clone(), 1))
                    .expect("same strand count");
                transversal.push(rep);
                queue.push_back(idx);
            }
        }
    }
    let count = elems.len();
    let mut action = vec![vec![0usize; p.generators.len()]; count];
    for c in 0..count {
        for (gi, g) in p.generators.iter().enumerate() {
            let next = m.group.multiply(&elems[c], &m.images[g]);
            action[c][gi] = index[&next];
        }
    }
    let mut action_inv = vec![vec![0usize; p.generators.len()]; count];
    for c in 0..count {
        for gi in 0..p.generators.len() {
            action_inv[action[c][gi]][gi] = c;
        }
    }
    Ok(CosetTable { source: p.clone(), transversal, action, action_inv })
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.transversal.len()
    }

    pub fn act(&self, coset: usize, gen_index: usize) -> usize {
        self.action[coset][gen_index]
    }

    pub fn act_inv(&self, coset: usize, gen_index: usize) -> usize {
        self.action_inv[coset][gen_index]
    }

    /// Coset reached by a word from the identity coset.
    pub fn coset_of(&self, w: &Word) -> usize {
        let mut c = 0;
        for (g, sign) in w.unit_letters() {
            let gi = self.source.generator_index(g).expect("generator of the presentation");
            c = if sign > 0 { self.act(c, gi) } else { self.act_inv(c, gi) };
        }
        c
    }
}

/// A subgroup generator S_{λ,g} = (λg)·(rep(λg))⁻¹ with its derived name.
#[derive(Debug, Clone)]
pub struct SchreierGenerator {
    pub lambda_index: usize,
    pub lambda: Word,
    pub gen: Gen,
    /// The defining word in the ambient group, freely reduced.
    pub word: Word,
    /// Derived label `S<coset>_<gen>` used in the rewritten presentation.
    pub name: Gen,
    /// True when λ·g freely reduces to a transversal word, so the generator
    /// is the identity and can be deleted.
    pub removable: bool,
}

/// One Schreier generator per (transversal element, presentation generator),
/// in transversal-then-registry order.
pub fn schreier_generators(t: &CosetTable) -> Vec<SchreierGenerator> {
    let n = t.source.strands;
    let mut out = Vec::new();
    for (li, lambda) in t.transversal.iter().enumerate() {
        for (gi, g) in t.source.generators.iter().enumerate() {
            let target = t.act(li, gi);
            let lg = lambda.concat(&Word::gen(n, g.clone(), 1)).expect("same strands");
            let word = lg.concat(&t.transversal[target].invert()).expect("same strands");
            let removable = lg == t.transversal[target];
            let name = Gen::Named(format!("S{li}_{g}"));
            out.push(SchreierGenerator {
                lambda_index: li,
                lambda: lambda.clone(),
                gen: g.clone(),
                word,
                name,
                removable,
            });
        }
    }
    out
}

/// The raw rewritten presentation: one relator per (original relator,
/// transversal element) pair, over the full Schreier alphabet.
#[derive(Debug, Clone)]
pub struct RewrittenPresentation {
    pub generators: Vec<SchreierGenerator>,
    pub relators: Vec<Word>,
    /// (original relator index, transversal index) per rewritten relator.
    pub origins: Vec<(usize, usize)>,
}

/// Rewrites a kernel word over the Schreier alphabet by scanning letters and
/// tracking the current coset.
pub fn rewrite_kernel_word(
    t: &CosetTable,
    gens: &[SchreierGenerator],
    w: &Word,
) -> Result<Word, SchreierError> {
    let n = t.source.strands;
    let by_pair: BTreeMap<(usize, usize), &SchreierGenerator> = gens
        .iter()
        .map(|s| ((s.lambda_index, t.source.generator_index(&s.gen).unwrap()), s))
        .collect();
    let mut c = 0usize;
    let mut letters: Vec<(Gen, i64)> = Vec::new();
    for (g, sign) in w.unit_letters() {
        let gi = t.source.generator_index(g).expect("generator of the presentation");
        if sign > 0 {
            let s = by_pair[&(c, gi)];
            letters.push((s.name.clone(), 1));
            c = t.act(c, gi);
        } else {
            let back = t.act_inv(c, gi);
            let s = by_pair[&(back, gi)];
            letters.push((s.name.clone(), -1));
            c = back;
        }
    }
    if c != 0 {
        return Err(SchreierError::NotInKernel);
    }
    Ok(Word::from_letters(n, letters))
}

/// Standard Reidemeister–Schreier rewriting of every conjugated relator
/// λ·r·λ⁻¹.
pub fn rewrite_relators(t: &CosetTable) -> RewrittenPresentation {
    let generators = schreier_generators(t);
    let n = t.source.strands;
    let mut relators = Vec::new();
    let mut origins = Vec::new();
    for (ri, r) in t.source.relators.iter().enumerate() {
        for li in 0..t.transversal.len() {
            let lambda = &t.transversal[li];
            let conj = lambda
                .concat(&r.word)
                .and_then(|w| w.concat(&lambda.invert()))
                .expect("same strands");
            let rewritten =
                rewrite_kernel_word(t, &generators, &conj).expect("conjugated relator is in the kernel");
            let _ = n;
            relators.push(rewritten);
            origins.push((ri, li));
        }
    }
    RewrittenPresentation { generators, relators, origins }
}
