//! Arbitrary-precision integer matrices: Smith normal form with verified
//! unimodular transforms, Hermite row form, and row-lattice membership.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense rows × cols matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f · row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f + self.get(dst, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f · col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f + self.get(i, dst);
            self.set(i, dst, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    pub fn multiply(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses whitespace/row-per-line integer text into a matrix.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, String> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<i64>, _> = line.split_whitespace().map(|t| t.parse()).collect();
        rows.push(row.map_err(|e| format!("bad entry: {e}"))?);
    }
    if rows.is_empty() {
        return Err("empty matrix".to_string());
    }
    let c = rows[0].len();
    if rows.iter().any(|r| r.len() != c) {
        return Err("ragged rows".to_string());
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// D = P·A·Q with P, Q unimodular, D diagonal with the divisibility chain.
#[derive(Debug, Clone)]
pub struct SNFResult {
    pub diagonal: Vec<BigInt>,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub rank: usize,
}

impl SNFResult {
    /// Verifies P·A·Q = diag and that both transforms have determinant ±1.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        if !self.p.is_unimodular() || !self.q.is_unimodular() {
            return false;
        }
        let d = self.p.multiply(a).multiply(&self.q);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let expected = if i == j && i < self.diagonal.len() {
                    self.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                if *d.get(i, j) != expected {
                    return false;
                }
            }
        }
        // divisibility chain over the nonzero part
        for w in self.diagonal[..self.rank].windows(2) {
            if (&w[1] % &w[0]) != BigInt::zero() {
                return false;
            }
        }
        true
    }
}

fn find_pivot(m: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.rows {
        for j in k..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((bi, bj)) if m.get(*bi, *bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with deterministic pivoting: smallest nonzero absolute
/// value first, row-major tie-break.
pub fn smith_normal_form(a: &IntMatrix) -> SNFResult {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut p = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);
    let bound = rows.min(cols);
    let mut k = 0;
    while k < bound {
        let Some((pi, pj)) = find_pivot(&d, k) else { break };
        d.swap_rows(k, pi);
        p.swap_rows(k, pi);
        d.swap_cols(k, pj);
        q.swap_cols(k, pj);
        'reduce: loop {
            // clear the pivot column
            for i in k + 1..rows {
                if !d.get(i, k).is_zero() {
                    let f = -(d.get(i, k) / d.get(k, k));
                    d.add_row_multiple(i, k, &f);
                    p.add_row_multiple(i, k, &f);
                    if !d.get(i, k).is_zero() {
                        // remainder is smaller than the pivot: promote it
                        d.swap_rows(i, k);
                        p.swap_rows(i, k);
                        continue 'reduce;
                    }
                }
            }
            // clear the pivot row
            for j in k + 1..cols {
                if !d.get(k, j).is_zero() {
                    let f = -(d.get(k, j) / d.get(k, k));
                    d.add_col_multiple(j, k, &f);
                    q.add_col_multiple(j, k, &f);
                    if !d.get(k, j).is_zero() {
                        d.swap_cols(j, k);
                        q.swap_cols(j, k);
                        continue 'reduce;
                    }
                }
            }
            // divisibility fix-up: fold a non-divisible entry into the pivot row
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        d.add_row_multiple(k, i, &BigInt::one());
                        p.add_row_multiple(k, i, &BigInt::one());
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if d.get(k, k).is_negative() {
            d.negate_col(k);
            q.negate_col(k);
        }
        k += 1;
    }
    let mut diagonal = Vec::with_capacity(bound);
    for i in 0..bound {
        diagonal.push(d.get(i, i).clone());
    }
    let rank = diagonal.iter().take_while(|x| !x.is_zero()).count();
    SNFResult { diagonal, p, q, rank }
}

/// Integer row echelon form of the row lattice: unimodular row operations
/// only, zero rows dropped, pivots positive. Returns the echelon matrix and
/// the pivot column of each remaining row.
pub fn hermite_rows(a: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivot_cols = Vec::new();
    let mut pr = 0; // next pivot row
    for col in 0..m.cols {
        if pr == m.rows {
            break;
        }
        loop {
            // smallest nonzero entry in this column at or below pr
            let mut best: Option<usize> = None;
            for i in pr..m.rows {
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
            let mut cleared = true;
            for i in pr + 1..m.rows {
                if !m.get(i, col).is_zero() {
                    let f = -(m.get(i, col) / m.get(pr, col));
                    m.add_row_multiple(i, pr, &f);
                    if !m.get(i, col).is_zero() {
                        cleared = false;
                    }
                }
            }
            if cleared {
                break;
            }
        }
        if pr < m.rows && !m.get(pr, col).is_zero() {
            if m.get(pr, col).is_negative() {
                m.negate_row(pr);
            }
            pivot_cols.push(col);
            pr += 1;
        }
    }
    let mut out = IntMatrix::zero(pr, m.cols);
    for i in 0..pr {
        for j in 0..m.cols {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    (out, pivot_cols)
}

/// Tests membership of `x` in the integer row lattice of `a`.
pub fn in_row_lattice(a: &IntMatrix, x: &[BigInt]) -> bool {
    assert_eq!(a.cols, x.len());
    let (h, pivots) = hermite_rows(a);
    let mut rem: Vec<BigInt> = x.to_vec();
    for (row, &col) in pivots.iter().enumerate() {
        if rem[col].is_zero() {
            continue;
        }
        let pivot = h.get(row, col);
        if !(&rem[col] % pivot).is_zero() {
            return false;
        }
        let f = &rem[col] / pivot;
        for j in 0..h.cols {
            rem[j] = &rem[j] - &f * h.get(row, j);
        }
    }
    rem.iter().all(|v| v.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent elementary-divisor oracle: dₖ = gcd(k-minors)/gcd((k−1)-minors).
    fn minor_gcd_divisors(a: &IntMatrix) -> Vec<BigInt> {
        fn gcd(a: BigInt, b: BigInt) -> BigInt {
            if b.is_zero() {
                a.abs()
            } else {
                gcd(b.clone(), a % b)
            }
        }
        fn combos(items: &[usize], k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if items.len() < k {
                return vec![];
            }
            let mut out = Vec::new();
            for (i, &x) in items.iter().enumerate() {
                for mut rest in combos(&items[i + 1..], k - 1) {
                    rest.insert(0, x);
                    out.push(rest);
                }
            }
            out
        }
        fn minors(a: &IntMatrix, k: usize) -> BigInt {
            let rows: Vec<usize> = (0..a.rows).collect();
            let cols: Vec<usize> = (0..a.cols).collect();
            let mut g = BigInt::zero();
            for rsel in combos(&rows, k) {
                for csel in combos(&cols, k) {
                    let mut sub = IntMatrix::zero(k, k);
                    for (i, &r) in rsel.iter().enumerate() {
                        for (j, &c) in csel.iter().enumerate() {
                            sub.set(i, j, a.get(r, c).clone());
                        }
                    }
                    g = gcd(g, sub.determinant());
                }
            }
            g
        }
        let bound = a.rows.min(a.cols);
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=bound {
            let g = minors(a, k);
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    #[test]
    fn snf_scalar() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal, vec![BigInt::from(2)]);
        assert!(r.verify(&a));
    }

    #[test]
    fn snf_2x2() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let r = smith_normal_form(&a);
        assert_eq!(r.diagonal, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(r.verify(&a));
        assert_eq!(minor_gcd_divisors(&a), r.diagonal);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(3, 2);
        let r = smith_normal_form(&a);
        assert_eq!(r.rank, 0);
        assert!(r.diagonal.iter().all(|d| d.is_zero()));
        assert!(r.verify(&a));
    }

    #[test]
    fn snf_matches_minor_oracle() {
        let cases = vec![
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
            vec![vec![0, 2], vec![3, 0]],
            vec![vec![6, 10], vec![10, 6]],
            vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 0]],
            vec![vec![3, 3, 3], vec![3, 3, 3]],
            vec![vec![-6, 111, -36, 6], vec![5, -672, 210, 74], vec![0, -255, 81, 24]],
        ];
        for rows in cases {
            let a = IntMatrix::from_rows(&rows);
            let r = smith_normal_form(&a);
            assert!(r.verify(&a), "verify failed for\n{a}");
            let nonzero: Vec<BigInt> = r.diagonal[..r.rank].to_vec();
            assert_eq!(minor_gcd_divisors(&a), nonzero, "oracle mismatch for\n{a}");
        }
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        assert_eq!(a.determinant(), BigInt::from(5));
        assert!(IntMatrix::identity(4).is_unimodular());
    }

    #[test]
    fn hermite_and_membership() {
        let a = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![2, 3, 0]]);
        let (h, pivots) = hermite_rows(&a);
        assert_eq!(h.rows, 2);
        assert_eq!(pivots, vec![0, 1]);
        let x = [BigInt::from(4), BigInt::from(3), BigInt::zero()];
        assert!(in_row_lattice(&a, &x));
        let y = [BigInt::from(1), BigInt::zero(), BigInt::zero()];
        assert!(!in_row_lattice(&a, &y));
        let z = [BigInt::zero(), BigInt::zero(), BigInt::from(1)];
        assert!(!in_row_lattice(&a, &z));
    }

    #[test]
    fn parse_matrix_text() {
        let a = parse_matrix("1 2\n3 4\n").unwrap();
        assert_eq!(*a.get(1, 0), BigInt::from(3));
        assert!(parse_matrix("1 2\n3\n").is_err());
    }
}
