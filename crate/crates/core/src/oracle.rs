//! Cofactor-expansion determinant.
//!
//! Laplace expansion along successive rows, memoised on the set of columns
//! already used, so an n×n matrix costs O(2^n · n) ring operations. This
//! shares no code with [`crate::matrix::determinant`] beyond polynomial
//! arithmetic and serves as its reference in tests and in `selftest`.

use std::collections::HashMap;

use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;

/// Panics for matrices larger than 24×24.
pub fn cofactor_determinant(m: &PolyMatrix) -> LaurentPoly {
    let n = m.size();
    assert!(n <= 24, "cofactor expansion is limited to 24x24");
    let mut memo = HashMap::new();
    expand(m, 0, &mut memo)
}

fn expand(m: &PolyMatrix, used: u32, memo: &mut HashMap<u32, LaurentPoly>) -> LaurentPoly {
    let n = m.size();
    let row = used.count_ones() as usize;
    if row == n {
        return LaurentPoly::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut total = LaurentPoly::zero();
    let mut free_before = 0;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = m.get(row, col);
        if !entry.is_zero() {
            let minor = expand(m, used | (1 << col), memo);
            let term = entry * &minor;
            if free_before % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
        free_before += 1;
    }
    memo.insert(used, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let x = LaurentPoly::x();
        let y = LaurentPoly::y();
        let m = PolyMatrix::from_rows(vec![
            vec![x.clone(), y.clone()],
            vec![LaurentPoly::constant(3), LaurentPoly::one()],
        ]);
        assert_eq!(cofactor_determinant(&m), x - y * LaurentPoly::constant(3));
    }

    #[test]
    fn permutation_sign() {
        // cyclic shift of three elements is even, of four is odd
        let cyc = |n: usize| {
            let mut m = PolyMatrix::zero(n);
            for i in 0..n {
                m.set(i, (i + 1) % n, LaurentPoly::one());
            }
            m
        };
        assert_eq!(cofactor_determinant(&cyc(3)), LaurentPoly::one());
        assert_eq!(cofactor_determinant(&cyc(4)), LaurentPoly::constant(-1));
    }
}
