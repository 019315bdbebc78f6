//! The minimal capability contract every homomorphism target implements,
//! plus finite table-backed groups for counting and search.

use std::collections::HashMap;
use std::fmt::Debug;

use crate::perm::Permutation;

/// Identity, multiplication, inversion, and structural equality. One
/// verification engine serves every concrete target through this trait.
pub trait TargetGroup {
    type Elem: Clone + Eq + Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn power(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let base = if e < 0 { self.invert(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..e.unsigned_abs() {
            acc = self.multiply(&acc, &base);
        }
        acc
    }
}

/// The integers under addition (exponent-sum targets).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers;

impl TargetGroup for Integers {
    type Elem = i64;

    fn identity(&self) -> i64 {
        0
    }
    fn multiply(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn invert(&self, a: &i64) -> i64 {
        -a
    }
    fn render(&self, a: &i64) -> String {
        a.to_string()
    }
    fn power(&self, a: &i64, e: i64) -> i64 {
        a * e
    }
}

/// A finite group realized as a permutation group with a full multiplication
/// table. Elements are indices into a lexicographically sorted element list,
/// so enumeration order is deterministic.
#[derive(Debug, Clone)]
pub struct SmallGroup {
    pub name: String,
    elems: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl SmallGroup {
    /// Closure of a generating set of permutations.
    pub fn from_generators(name: &str, gens: &[Permutation]) -> SmallGroup {
        assert!(!gens.is_empty());
        let degree = gens[0].degree();
        let mut elems = vec![Permutation::identity(degree)];
        let mut frontier = elems.clone();
        while let Some(e) = frontier.pop() {
            for g in gens {
                let prod = e.compose(g);
                if !elems.contains(&prod) {
                    elems.push(prod.clone());
                    frontier.push(prod);
                }
            }
        }
        elems.sort();
        let index: HashMap<Permutation, usize> =
            elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let inverse: Vec<usize> = elems.iter().map(|a| index[&a.inverse()]).collect();
        SmallGroup { name: name.to_string(), elems, index, table, inverse }
    }

    /// The full symmetric group S_m.
    pub fn symmetric(m: usize) -> SmallGroup {
        let gens: Vec<Permutation> = (1..m).map(|i| Permutation::adjacent(m, i)).collect();
        SmallGroup::from_generators(&format!("S{m}"), &gens)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }
}

impl TargetGroup for SmallGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.index[&Permutation::identity(self.elems[0].degree())]
    }
    fn multiply(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
    fn invert(&self, a: &usize) -> usize {
        self.inverse[*a]
    }
    fn render(&self, a: &usize) -> String {
        self.elems[*a].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_table() {
        let s3 = SmallGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let id = s3.identity();
        assert_eq!(id, 0); // identity is lexicographically first
        for a in 0..6 {
            assert_eq!(s3.multiply(&a, &s3.invert(&a)), id);
        }
    }

    #[test]
    fn integers_power() {
        let z = Integers;
        assert_eq!(z.power(&3, -2), -6);
    }

    #[test]
    fn klein_subgroup() {
        let a = Permutation::parse("(1 2)(3 4)", 4).unwrap();
        let b = Permutation::parse("(1 3)(2 4)", 4).unwrap();
        let v4 = SmallGroup::from_generators("V4", &[a, b]);
        assert_eq!(v4.order(), 4);
    }
}
