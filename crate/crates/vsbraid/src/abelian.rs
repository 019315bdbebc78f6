//! Abelianization via Smith normal form and the class-2 lower-central-series
//! quotient Γ₂/Γ₃ computed from relator images in the free class-2 nilpotent
//! group.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::{hermite_rows, smith_normal_form, IntMatrix};
use crate::presentation::Presentation;
use crate::target::TargetGroup;
use crate::word::Word;

/// Invariant factors of a finitely generated abelian group in canonical
/// form: free rank plus torsion orders in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Cokernel invariants of the row lattice of `rows` inside ℤ^cols.
    /// Tall matrices are Hermite-reduced first (same row lattice) so the
    /// transform verification stays small; the transforms are checked
    /// unconditionally.
    pub fn from_relation_matrix(rows: &IntMatrix) -> AbelianInvariants {
        let reduced;
        let input = if rows.rows > rows.cols {
            reduced = hermite_rows(rows).0;
            &reduced
        } else {
            rows
        };
        let snf = smith_normal_form(input);
        assert!(snf.verify(input), "SNF transform verification failed");
        let torsion: Vec<BigInt> =
            snf.diagonal[..snf.rank].iter().filter(|d| !d.is_one()).cloned().collect();
        AbelianInvariants { free_rank: input.cols - snf.rank, torsion }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The |relators| × |generators| exponent matrix of a presentation.
pub fn exponent_matrix(p: &Presentation) -> IntMatrix {
    let k = p.generators.len();
    let mut m = IntMatrix::zero(p.relators.len(), k);
    for (r, rel) in p.relators.iter().enumerate() {
        for (j, g) in p.generators.iter().enumerate() {
            m.set(r, j, BigInt::from(rel.word.exponent_of(g)));
        }
    }
    m
}

/// Cokernel invariants of the relator exponent matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    AbelianInvariants::from_relation_matrix(&exponent_matrix(p))
}

/// An element of the free class-2 nilpotent group on k generators: the
/// abelian part a ∈ ℤᵏ and the commutator part b ∈ ℤ^{k(k−1)/2} over basic
/// commutators [g_j, g_i], j > i, ordered lexicographically by (j, i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2Elem {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
}

/// The free class-2 nilpotent group on k generators as a target group.
#[derive(Debug, Clone, Copy)]
pub struct Class2Group {
    pub k: usize,
}

impl Class2Group {
    pub fn commutator_rank(&self) -> usize {
        self.k * (self.k - 1) / 2
    }

    /// Index of the basic commutator [g_j, g_i] with j > i (0-based).
    pub fn pair_index(&self, j: usize, i: usize) -> usize {
        debug_assert!(j > i);
        j * (j - 1) / 2 + i
    }

    pub fn generator(&self, i: usize) -> Class2Elem {
        let mut a = vec![BigInt::zero(); self.k];
        a[i] = BigInt::one();
        Class2Elem { a, b: vec![BigInt::zero(); self.commutator_rank()] }
    }

    /// Collection form Λ(a, a′): coefficient a_j·a′_i at [g_j, g_i].
    fn lambda(&self, a: &[BigInt], a2: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.commutator_rank()];
        for j in 1..self.k {
            if a[j].is_zero() {
                continue;
            }
            for i in 0..j {
                if a2[i].is_zero() {
                    continue;
                }
                out[self.pair_index(j, i)] = &a[j] * &a2[i];
            }
        }
        out
    }

    /// Bilinear commutator bracket: [x, y] has coefficient x_j·y_i − x_i·y_j
    /// at [g_j, g_i].
    pub fn bracket(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.commutator_rank()];
        for j in 1..self.k {
            for i in 0..j {
                out[self.pair_index(j, i)] = &x[j] * &y[i] - &x[i] * &y[j];
            }
        }
        out
    }
}

impl TargetGroup for Class2Group {
    type Elem = Class2Elem;

    fn identity(&self) -> Class2Elem {
        Class2Elem {
            a: vec![BigInt::zero(); self.k],
            b: vec![BigInt::zero(); self.commutator_rank()],
        }
    }

    fn multiply(&self, x: &Class2Elem, y: &Class2Elem) -> Class2Elem {
        let a: Vec<BigInt> = x.a.iter().zip(&y.a).map(|(p, q)| p + q).collect();
        let lam = self.lambda(&x.a, &y.a);
        let b: Vec<BigInt> = x.b.iter().zip(&y.b).zip(lam).map(|((p, q), l)| p + q + l).collect();
        Class2Elem { a, b }
    }

    fn invert(&self, x: &Class2Elem) -> Class2Elem {
        let a: Vec<BigInt> = x.a.iter().map(|p| -p).collect();
        let lam = self.lambda(&x.a, &x.a);
        let b: Vec<BigInt> = x.b.iter().zip(lam).map(|(p, l)| -p + l).collect();
        Class2Elem { a, b }
    }

    fn render(&self, x: &Class2Elem) -> String {
        format!("(a={:?}, b={:?})", x.a, x.b)
    }
}

/// Evaluates a word in the free class-2 nilpotent group on the given
/// generator list.
pub fn eval_class2(w: &Word, gens: &[crate::word::Gen]) -> Class2Elem {
    let group = Class2Group { k: gens.len() };
    let mut acc = group.identity();
    for l in w.letters() {
        let idx = gens
            .iter()
            .position(|g| g == &l.gen)
            .expect("word letter outside the presentation generators");
        let g = group.generator(idx);
        acc = group.multiply(&acc, &group.power(&g, l.exp));
    }
    acc
}

/// Γ₂/Γ₃ data of a finitely presented group.
#[derive(Debug, Clone)]
pub struct Class2Quotient {
    pub generator_count: usize,
    pub abelianization: AbelianInvariants,
    pub gamma2_mod_gamma3: AbelianInvariants,
    /// Class-2 images (a_r, b_r) of the relators.
    pub relator_images: Vec<Class2Elem>,
}

/// Computes Γ₂/Γ₃ from the relator lattice in the free class-2 group.
///
/// The lattice of relator consequences inside the commutator subgroup is
/// generated by the brackets [gᵢ, ρ_r] together with one correction row per
/// relation among the abelian parts: for a kernel vector m of the exponent
/// matrix, the commutator part of ∏ ρ_r^{m_r} (which carries the quadratic
/// collection terms of the product).
pub fn class2_quotient(p: &Presentation) -> Class2Quotient {
    let gens = &p.generators;
    let k = gens.len();
    let group = Class2Group { k };
    let cap = group.commutator_rank();
    let images: Vec<Class2Elem> = p.relators.iter().map(|r| eval_class2(&r.word, gens)).collect();

    // rows of the consequence sublattice inside Γ₂(free class-2) = Z^cap
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for img in &images {
        for i in 0..k {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            let br = group.bracket(&e, &img.a);
            if br.iter().any(|v| !v.is_zero()) {
                rows.push(br);
            }
        }
    }
    // kernel relations among the abelian parts, with collection terms
    let r_count = images.len();
    let mut amat = IntMatrix::zero(r_count, k);
    for (r, img) in images.iter().enumerate() {
        for j in 0..k {
            amat.set(r, j, img.a[j].clone());
        }
    }
    for m in integer_kernel_basis(&amat) {
        let mut acc = group.identity();
        for (r, img) in images.iter().enumerate() {
            if m[r].is_zero() {
                continue;
            }
            let e: i64 = (&m[r]).try_into().expect("kernel coefficient fits i64");
            acc = group.multiply(&acc, &group.power(img, e));
        }
        debug_assert!(acc.a.iter().all(|v| v.is_zero()));
        if acc.b.iter().any(|v| !v.is_zero()) {
            rows.push(acc.b);
        }
    }

    let mut lattice = IntMatrix::zero(rows.len(), cap);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            lattice.set(i, j, v.clone());
        }
    }
    let gamma = AbelianInvariants::from_relation_matrix(&lattice);
    let ab = AbelianInvariants::from_relation_matrix(&amat);

    Class2Quotient {
        generator_count: k,
        abelianization: ab,
        gamma2_mod_gamma3: gamma,
        relator_images: images,
    }
}

/// Basis of { m : m·A = 0 } ⊂ ℤ^rows, via row reduction with a tracked
/// unimodular transform.
fn integer_kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let rows = a.rows;
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pr = 0;
    for col in 0..m.cols {
        if pr == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in pr..rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                match best {
                    Some(b) if m.get(b, col).abs() <= m.get(i, col).abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(pr, b);
            u.swap_rows(pr, b);
            let mut cleared = true;
            for i in pr + 1..rows {
                if !m.get(i, col).is_zero() {
                    let f = -(m.get(i, col) / m.get(pr, col));
                    m.add_row_multiple(i, pr, &f);
                    u.add_row_multiple(i, pr, &f);
                    if !m.get(i, col).is_zero() {
                        cleared = false;
                    }
                }
            }
            if cleared {
                break;
            }
        }
        if pr < rows && !m.get(pr, col).is_zero() {
            pr += 1;
        }
    }
    (pr..rows).map(|i| u.row(i).to_vec()).collect()
}

/// Second route to cokernel invariants used as a cross-check: Hermite
/// reduction first, then SNF of the reduced basis.
pub fn cokernel_via_hermite(rows: &IntMatrix) -> AbelianInvariants {
    let (h, _) = hermite_rows(rows);
    AbelianInvariants::from_relation_matrix(&h)
}
