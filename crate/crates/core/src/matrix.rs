//! Square matrices over ℤ[x^{±1}, y^{±1}] and their exact determinants.
//!
//! [`determinant`] works in two phases. First it pivots on unit entries
//! (`±x^a y^b`) of a sparse copy of the matrix; each such step is an ordinary
//! Gaussian step that stays inside the Laurent ring. The matrices built by this
//! crate are very sparse and rich in monomial entries, so this phase usually
//! removes most rows. Whatever is left is shifted row by row into ℤ[x, y] and
//! finished with fraction-free (Bareiss) elimination using exact polynomial
//! division, after which the recorded row shifts are divided back out.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::laurent::{LaurentPoly, Monomial};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![LaurentPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            entries.extend(row);
        }
        PolyMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Block-diagonal matrix with the given square blocks in order.
    pub fn block_diagonal<'a>(blocks: impl IntoIterator<Item = &'a PolyMatrix>) -> Self {
        let blocks: Vec<&PolyMatrix> = blocks.into_iter().collect();
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n;
        }
        m
    }

    /// Counts of nonzero entries per row and per column.
    pub fn nonzero_profile(&self) -> (Vec<usize>, Vec<usize>) {
        let mut rows = vec![0; self.n];
        let mut cols = vec![0; self.n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, col) in cols.iter_mut().enumerate() {
                if !self.get(i, j).is_zero() {
                    *row += 1;
                    *col += 1;
                }
            }
        }
        (rows, cols)
    }

    /// True if every entry is 0 or 1 and every row and column holds exactly one 1.
    pub fn is_permutation(&self) -> bool {
        let one = LaurentPoly::one();
        if !self.entries.iter().all(|e| e.is_zero() || *e == one) {
            return false;
        }
        let (rows, cols) = self.nonzero_profile();
        rows.iter().chain(cols.iter()).all(|&k| k == 1)
    }

    pub fn determinant(&self) -> LaurentPoly {
        determinant(self)
    }
}

impl std::ops::Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch");
        PolyMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant over ℤ[x^{±1}, y^{±1}]. The 0×0 determinant is 1.
pub fn determinant(m: &PolyMatrix) -> LaurentPoly {
    let mut sparse = SparseMatrix::from_dense(m);
    let mut factor = LaurentPoly::one();
    while let Some((r, c)) = sparse.cheapest_unit_pivot() {
        let (pivot, negate) = sparse.eliminate(r, c);
        factor = factor * pivot;
        if negate {
            factor = -factor;
        }
    }
    if sparse.has_empty_row() {
        return LaurentPoly::zero();
    }
    let rest = sparse.into_dense();
    if rest.is_empty() {
        return factor;
    }
    factor * bareiss(rest)
}

struct SparseMatrix {
    rows: Vec<BTreeMap<usize, LaurentPoly>>,
    col_rows: Vec<BTreeSet<usize>>,
    live_rows: BTreeSet<usize>,
    live_cols: BTreeSet<usize>,
}

impl SparseMatrix {
    fn from_dense(m: &PolyMatrix) -> Self {
        let n = m.size();
        let mut rows = vec![BTreeMap::new(); n];
        let mut col_rows = vec![BTreeSet::new(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, col) in col_rows.iter_mut().enumerate() {
                let e = m.get(i, j);
                if !e.is_zero() {
                    row.insert(j, e.clone());
                    col.insert(i);
                }
            }
        }
        SparseMatrix {
            rows,
            col_rows,
            live_rows: (0..n).collect(),
            live_cols: (0..n).collect(),
        }
    }

    /// Unit entry minimising the Markowitz fill estimate; ties go to the
    /// smallest (row, column).
    fn cheapest_unit_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &self.live_rows {
            let row_cost = self.rows[r].len().saturating_sub(1);
            for (&c, v) in &self.rows[r] {
                if !v.is_unit() {
                    continue;
                }
                let cost = row_cost * (self.col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, c));
                    if cost == 0 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Clears column `c` with the unit at `(r, c)` and drops row `r` and
    /// column `c`. Returns the pivot and whether the Laplace sign is negative.
    fn eliminate(&mut self, r: usize, c: usize) -> (LaurentPoly, bool) {
        let pos_r = self.live_rows.range(..r).count();
        let pos_c = self.live_cols.range(..c).count();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot = pivot_row[&c].clone();
        let inv = pivot.unit_inverse().expect("pivot is a unit");

        let targets: Vec<usize> = self.col_rows[c]
            .iter()
            .copied()
            .filter(|&i| i != r)
            .collect();
        for i in targets {
            let a = self.rows[i].remove(&c).expect("column index in sync");
            let f = &a * &inv;
            for (&j, v) in &pivot_row {
                if j == c {
                    continue;
                }
                let delta = &f * v;
                let entry = self.rows[i].entry(j).or_insert_with(LaurentPoly::zero);
                *entry -= &delta;
                if entry.is_zero() {
                    self.rows[i].remove(&j);
                    self.col_rows[j].remove(&i);
                } else {
                    self.col_rows[j].insert(i);
                }
            }
        }
        for &j in pivot_row.keys() {
            self.col_rows[j].remove(&r);
        }
        self.col_rows[c].clear();
        self.live_rows.remove(&r);
        self.live_cols.remove(&c);
        (pivot, (pos_r + pos_c) % 2 == 1)
    }

    fn has_empty_row(&self) -> bool {
        self.live_rows.iter().any(|&r| self.rows[r].is_empty())
    }

    fn into_dense(self) -> Vec<Vec<LaurentPoly>> {
        let cols: Vec<usize> = self.live_cols.iter().copied().collect();
        self.live_rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|c| {
                        self.rows[r]
                            .get(c)
                            .cloned()
                            .unwrap_or_else(LaurentPoly::zero)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Fraction-free elimination. Each row is first multiplied by the monomial
/// that moves its smallest exponents to 0, so every intermediate value lies in
/// ℤ[x, y] and Bareiss' divisions are exact polynomial divisions there.
fn bareiss(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    let (mut shift_x, mut shift_y) = (0i64, 0i64);
    for row in &mut a {
        let min_x = row.iter().filter_map(|e| e.min_x_exponent()).min();
        let min_y = row.iter().filter_map(|e| e.min_y_exponent()).min();
        let (Some(mx), Some(my)) = (min_x, min_y) else {
            return LaurentPoly::zero();
        };
        for e in row.iter_mut() {
            *e = e.shift(-mx, -my);
        }
        shift_x += mx;
        shift_y += my;
    }

    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].len());
        let Some(p) = pivot_row else {
            return LaurentPoly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = &pivot_row[k] * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &(&lead * &pivot_row[j]);
                }
                row[j] = if prev.is_one() {
                    v
                } else {
                    exact_quotient(&v, &prev)
                };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].shift(shift_x, shift_y);
    if negate {
        -det
    } else {
        det
    }
}

/// Quotient of `num` by `den` in ℤ[x, y]. Both must have nonnegative
/// exponents and the division must be exact; anything else is a bug in the
/// elimination and panics.
fn exact_quotient(num: &LaurentPoly, den: &LaurentPoly) -> LaurentPoly {
    if num.is_zero() {
        return LaurentPoly::zero();
    }
    let (dm, dc) = den.leading_term().expect("division by zero polynomial");
    if den.len() == 1 {
        let terms = num.terms().map(|(m, c)| {
            assert!(m.divisible_by(dm), "inexact monomial division");
            let (q, r) = c.div_rem(dc);
            assert!(r.is_zero(), "inexact coefficient division");
            (Monomial::new(m.x - dm.x, m.y - dm.y), q)
        });
        return LaurentPoly::from_terms(terms);
    }
    let dc = dc.clone();
    let den_terms: Vec<(Monomial, BigInt)> = den.terms().map(|(m, c)| (m, c.clone())).collect();
    let mut rem: BTreeMap<Monomial, BigInt> = num.terms().map(|(m, c)| (m, c.clone())).collect();
    let mut quotient = Vec::new();
    while let Some((&lm, lc)) = rem.last_key_value() {
        assert!(lm.divisible_by(dm), "inexact polynomial division");
        let (qc, r) = lc.div_rem(&dc);
        assert!(r.is_zero(), "inexact polynomial division");
        let qm = Monomial::new(lm.x - dm.x, lm.y - dm.y);
        for (m, c) in &den_terms {
            let key = m.times(qm);
            let entry = rem.entry(key).or_insert_with(BigInt::zero);
            *entry -= c * &qc;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.push((qm, qc));
    }
    LaurentPoly::from_terms(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cofactor_determinant;

    fn mono(c: i64, a: i64, b: i64) -> LaurentPoly {
        LaurentPoly::monomial(c, a, b)
    }

    #[test]
    fn empty_matrix_has_determinant_one() {
        assert!(determinant(&PolyMatrix::zero(0)).is_one());
    }

    #[test]
    fn identity_determinant() {
        assert!(determinant(&PolyMatrix::identity(2)).is_one());
        assert!(determinant(&PolyMatrix::identity(7)).is_one());
    }

    #[test]
    fn singular_monomial_matrix() {
        let m = PolyMatrix::from_rows(vec![
            vec![LaurentPoly::x(), LaurentPoly::y()],
            vec![mono(1, 0, -1), mono(1, -1, 0)],
        ]);
        assert!(determinant(&m).is_zero());
    }

    #[test]
    fn non_unit_entries_go_through_bareiss() {
        let one = LaurentPoly::one();
        let a = LaurentPoly::x() + &one;
        let b = mono(2, 0, 1) + mono(1, -1, 0);
        let c = mono(3, 0, -2) - &one;
        let d = LaurentPoly::x() - LaurentPoly::y();
        let m = PolyMatrix::from_rows(vec![
            vec![a.clone(), b.clone(), c.clone()],
            vec![d.clone(), a.clone(), b.clone()],
            vec![c.clone(), d.clone(), a.clone() * LaurentPoly::constant(2)],
        ]);
        assert_eq!(determinant(&m), cofactor_determinant(&m));
    }

    #[test]
    fn exact_quotient_recovers_factor() {
        let p = LaurentPoly::x() + LaurentPoly::monomial(3, 0, 1) + LaurentPoly::constant(-2);
        let q = LaurentPoly::x() * LaurentPoly::x() - LaurentPoly::y() + LaurentPoly::one();
        assert_eq!(exact_quotient(&(&p * &q), &q), p);
        assert_eq!(exact_quotient(&(&p * &mono(-2, 1, 3)), &mono(-2, 1, 3)), p);
    }

    #[test]
    #[should_panic(expected = "inexact")]
    fn inexact_division_panics() {
        let p = LaurentPoly::x() + LaurentPoly::one();
        let q = LaurentPoly::y() + LaurentPoly::one();
        exact_quotient(&p, &q);
    }

    #[test]
    fn permutation_check() {
        assert!(PolyMatrix::identity(3).is_permutation());
        assert!(!PolyMatrix::zero(2).is_permutation());
        assert!(PolyMatrix::zero(0).is_permutation());
    }
}
