//! Cross-module property suites: free-word algebra laws, invariance of
//! homomorphism images under relator moves, and stability of the triple
//! classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vsbraid::hom::{classify_triples, phi_triple, zxsn_projection, Triple};
use vsbraid::presentation::{apply_relation, build_presentation, GroupFamily, InsertDirection};
use vsbraid::word::{format_word, parse_word, Gen, Word};

fn random_raw(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Vec<(Gen, i64)> {
    let gens: Vec<Gen> = (1..n).flat_map(|i| [Gen::s(i), Gen::t(i), Gen::v(i)]).collect();
    (0..rng.gen_range(0..=max_len))
        .map(|_| (gens[rng.gen_range(0..gens.len())].clone(), if rng.gen() { 1 } else { -1 }))
        .collect()
}

#[test]
fn free_reduction_is_confluent() {
    // reducing a concatenation of raw sequences agrees with concatenating
    // the reductions
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=5);
        let raw_a = random_raw(&mut rng, n, 12);
        let raw_b = random_raw(&mut rng, n, 12);
        let direct =
            Word::from_letters(n, raw_a.iter().cloned().chain(raw_b.iter().cloned()));
        let stepwise = Word::from_letters(n, raw_a.clone())
            .concat(&Word::from_letters(n, raw_b.clone()))
            .unwrap();
        assert_eq!(direct, stepwise);
    }
}

#[test]
fn parse_format_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..5_000 {
        let n = rng.gen_range(2..=6);
        let w = Word::from_letters(n, random_raw(&mut rng, n, 20));
        let text = format_word(&w);
        assert_eq!(parse_word(&text, n).unwrap(), w);
    }
}

#[test]
fn relator_moves_preserve_homomorphism_images() {
    // inserting relator conjugates never changes the image under a verified
    // homomorphism
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for n in [2usize, 3, 4] {
        let p = build_presentation(GroupFamily::VSG, n).unwrap();
        let phi = phi_triple(GroupFamily::VSG, n, Triple(1, 1, 1)).unwrap();
        let psi = zxsn_projection(GroupFamily::VSG, n).unwrap();
        for _ in 0..3_000 {
            let w = Word::from_letters(n, random_raw(&mut rng, n, 16));
            let r = &p.relators[rng.gen_range(0..p.relators.len())];
            let pos = rng.gen_range(0..=w.unit_len());
            let dir = if rng.gen() { InsertDirection::Forward } else { InsertDirection::Inverse };
            let rot = rng.gen_range(0..r.word.unit_len().max(1));
            let w2 = apply_relation(&w, r, pos, dir, rot).unwrap();
            assert_eq!(phi.eval(&w).unwrap(), phi.eval(&w2).unwrap());
            assert_eq!(psi.eval(&w).unwrap(), psi.eval(&w2).unwrap());
        }
    }
}

#[test]
fn evaluation_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let phi = phi_triple(GroupFamily::VSG, 4, Triple(1, 1, 1)).unwrap();
    let psi = zxsn_projection(GroupFamily::VSG, 4).unwrap();
    for _ in 0..3_000 {
        let a = Word::from_letters(4, random_raw(&mut rng, 4, 12));
        let b = Word::from_letters(4, random_raw(&mut rng, 4, 12));
        let ab = a.concat(&b).unwrap();
        assert_eq!(
            phi.eval(&ab).unwrap(),
            phi.eval(&a).unwrap().compose(&phi.eval(&b).unwrap())
        );
        let (pa, pb) = (psi.eval(&a).unwrap(), psi.eval(&b).unwrap());
        let pab = psi.eval(&ab).unwrap();
        assert_eq!(pab.shift, pa.shift + pb.shift);
        assert_eq!(pab.perm, pa.perm.compose(&pb.perm));
    }
}

#[test]
fn classification_is_stable_in_the_strand_count() {
    let want = classify_triples(GroupFamily::VSG, 3).unwrap();
    for n in 4..=8 {
        assert_eq!(classify_triples(GroupFamily::VSG, n).unwrap(), want, "n={n}");
    }
}
