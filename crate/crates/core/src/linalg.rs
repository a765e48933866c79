//! Dense linear algebra over F_p.

use crate::field::{FieldElement, PrimeField};

/// Basis of `{x | A x = 0}` for an `m × n` matrix given by rows. The basis
/// vectors come from the reduced row echelon form, one per free column.
pub(crate) fn nullspace(
    f: &PrimeField,
    rows: &[Vec<FieldElement>],
    n: usize,
) -> Vec<Vec<FieldElement>> {
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(k) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, k);
        let inv = f.inv(a[r][c]).unwrap();
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m {
            if i != r && a[i][c] != 0 {
                let t = a[i][c];
                for j in 0..n {
                    let s = f.mul(t, a[r][j]);
                    a[i][j] = f.sub(a[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(a[i][free]);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one_matrix() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let k = nullspace(&f, &rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &rows {
                let s = row
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (a, b)| f.add(acc, f.mul(*a, *b)));
                assert_eq!(s, 0);
            }
        }
    }
}
