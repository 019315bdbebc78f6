//! A fixed representative ν₆ of the exceptional outer automorphism class of
//! S₆, constructed by deterministic search and stored with its verification
//! certificate.

use crate::perm::{Permutation, SymmetricGroup};
use crate::target::SmallGroup;

/// ν₆ given by the images of the five adjacent transpositions. Each image is
/// a fixed-point-free involution of cycle type 2+2+2, which no inner
/// automorphism can produce.
#[derive(Debug, Clone)]
pub struct Nu6 {
    pub images: Vec<Permutation>,
}

/// All involutions of S₆ with cycle type 2+2+2, in lexicographic one-line
/// order.
fn triple_transpositions() -> Vec<Permutation> {
    Permutation::all(6)
        .into_iter()
        .filter(|p| p.cycle_type() == vec![2, 2, 2])
        .collect()
}

fn coxeter_compatible(chosen: &[Permutation], next: &Permutation) -> bool {
    let k = chosen.len(); // index of `next`
    for (i, t) in chosen.iter().enumerate() {
        let prod = t.compose(next);
        let want = if k - i == 1 { 3 } else { 2 };
        if prod.order() != want {
            return false;
        }
    }
    true
}

fn search(candidates: &[Permutation], chosen: &mut Vec<Permutation>) -> Option<Vec<Permutation>> {
    if chosen.len() == 5 {
        return Some(chosen.clone());
    }
    for c in candidates {
        if coxeter_compatible(chosen, c) {
            chosen.push(c.clone());
            if let Some(found) = search(candidates, chosen) {
                return Some(found);
            }
            chosen.pop();
        }
    }
    None
}

/// Constructs ν₆ by ordered search over 2+2+2 involutions with incremental
/// Coxeter-relation pruning. The result is deterministic.
pub fn outer_automorphism_s6() -> Nu6 {
    let candidates = triple_transpositions();
    assert_eq!(candidates.len(), 15);
    let images =
        search(&candidates, &mut Vec::new()).expect("the exceptional automorphism exists");
    let nu = Nu6 { images };
    debug_assert!(nu.generates_s6());
    nu
}

impl Nu6 {
    /// Reduced decomposition of a permutation into adjacent transpositions:
    /// repeatedly swap the first descent. The word length is the inversion
    /// count.
    pub fn adjacent_word(p: &Permutation) -> Vec<usize> {
        let m = p.degree();
        let mut arr: Vec<usize> = (1..=m).map(|x| p.apply(x)).collect();
        let mut word = Vec::new();
        loop {
            let Some(i) = (0..m - 1).find(|&i| arr[i] > arr[i + 1]) else { break };
            word.push(i + 1); // 1-based transposition index
            arr.swap(i, i + 1);
        }
        word
    }

    /// Image of an arbitrary permutation under ν₆.
    pub fn apply(&self, p: &Permutation) -> Permutation {
        let mut acc = Permutation::identity(6);
        for i in Nu6::adjacent_word(p) {
            acc = acc.compose(&self.images[i - 1]);
        }
        acc
    }

    /// The Coxeter relations of S₆ hold on the images.
    pub fn satisfies_coxeter(&self) -> bool {
        let mut ok = true;
        for i in 0..5 {
            ok &= self.images[i].compose(&self.images[i]).is_identity();
            for j in (i + 1)..5 {
                let want = if j - i == 1 { 3 } else { 2 };
                ok &= self.images[i].compose(&self.images[j]).order() == want;
            }
        }
        ok
    }

    /// The images generate the whole of S₆, so the induced endomorphism is
    /// an automorphism.
    pub fn generates_s6(&self) -> bool {
        SmallGroup::from_generators("closure", &self.images).order() == 720
    }

    /// Searches all 720 candidates for a conjugator realizing the given
    /// images of the adjacent transpositions.
    pub fn find_conjugator(images: &[Permutation]) -> Option<Permutation> {
        for g in Permutation::all(6) {
            let all = (0..5).all(|i| {
                Permutation::adjacent(6, i + 1).conjugate_by(&g) == images[i]
            });
            if all {
                return Some(g);
            }
        }
        None
    }

    /// True when no inner automorphism matches ν₆ on the generators.
    pub fn is_non_inner(&self) -> bool {
        Nu6::find_conjugator(&self.images).is_none()
    }

    /// The square ν₆∘ν₆ must be inner; returns its conjugator.
    pub fn square_conjugator(&self) -> Option<Permutation> {
        let squared: Vec<Permutation> = self.images.iter().map(|t| self.apply(t)).collect();
        Nu6::find_conjugator(&squared)
    }
}

/// The composite ν₆ ∘ φ-triple on six strands, as a generator map.
pub fn nu6_compose_phi(
    family: crate::presentation::GroupFamily,
    triple: crate::hom::Triple,
) -> Result<crate::hom::GeneratorMap<SymmetricGroup>, crate::hom::HomError> {
    let nu = outer_automorphism_s6();
    let phi = crate::hom::phi_triple(family, 6, triple)?;
    let mut images = phi.images.clone();
    for (_, img) in images.iter_mut() {
        *img = nu.apply(img);
    }
    Ok(crate::hom::GeneratorMap::new(phi.source, phi.group, images))
}
