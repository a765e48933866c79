//! Matrices over `R`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{same_ring, RingRef};
use crate::submodule::Submodule;
use crate::vector::FreeVector;

/// A dense `rows × cols` matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PolyMatrix {
    pub fn new(ring: &RingRef, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(ring, e.ring())) {
            return Err(Error::ContextMismatch);
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(ring: &RingRef, rows: usize, cols: &[FreeVector]) -> Result<Self> {
        let mut m = Self::zero(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.rank() != rows {
                return Err(Error::RankMismatch {
                    expected: rows,
                    found: c.rank(),
                });
            }
            for (i, e) in c.components().into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn zero(ring: &RingRef, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn diagonal(ring: &RingRef, diag: &[Polynomial]) -> Self {
        let n = diag.len();
        let mut m = Self::zero(ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn column(&self, j: usize) -> FreeVector {
        let comps: Vec<Polynomial> = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
        FreeVector::from_polys(&self.ring, &comps).unwrap()
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column span as a submodule of `R^rows`.
    pub fn image(&self) -> Submodule {
        Submodule::new(&self.ring, self.rows, self.columns()).unwrap()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &FreeVector) -> Result<FreeVector> {
        if v.rank() != self.cols {
            return Err(Error::RankMismatch {
                expected: self.cols,
                found: v.rank(),
            });
        }
        if !same_ring(&self.ring, v.ring()) {
            return Err(Error::ContextMismatch);
        }
        let mut acc = FreeVector::zero(&self.ring, self.rows);
        for (j, c) in v.components().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.checked_add(&self.column(j).mul_poly(c))?;
            }
        }
        Ok(acc)
    }

    /// `self · K` as a submodule of `R^rows`.
    pub fn apply(&self, k: &Submodule) -> Result<Submodule> {
        let gens = k
            .gens()
            .iter()
            .map(|g| self.mul_vec(g))
            .collect::<Result<Vec<_>>>()?;
        Submodule::new(&self.ring, self.rows, gens)
    }

    pub fn scale(&self, f: &Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * f).collect(),
        }
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.checked_sub(b))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    /// Entrywise `p^e`-th powers.
    pub fn frobenius(&self, e: u32) -> Result<PolyMatrix> {
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|x| x.frobenius_pow(e))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Self::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Top-left `k × k` block.
    pub fn leading_block(&self, k: usize) -> PolyMatrix {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    /// Determinant: cofactor expansion up to size 3, fraction-free Bareiss
    /// elimination beyond.
    pub fn det(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        if self.rows <= 3 {
            Ok(self.det_expand())
        } else {
            Ok(self.det_bareiss())
        }
    }

    fn det_expand(&self) -> Polynomial {
        let n = self.rows;
        match n {
            0 => Polynomial::one(&self.ring),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = Polynomial::zero(&self.ring);
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let rows: Vec<usize> = (1..n).collect();
                    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let minor = self.submatrix(&rows, &cols).det_expand();
                    let term = a * &minor;
                    acc = if j % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                acc
            }
        }
    }

    fn det_bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = (0..n).map(|i| self.row(i)).collect();
        let mut sign = false;
        let mut prev = Polynomial::one(&self.ring);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = !sign;
                    }
                    None => return Polynomial::zero(&self.ring),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = Polynomial::zero(&self.ring);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -&d
        } else {
            d
        }
    }

    /// Adjugate: `adj(M) · M = M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "adjugate of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut out = Self::zero(&self.ring, n, n);
        if n == 1 {
            out.set(0, 0, Polynomial::one(&self.ring));
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { minor } else { -&minor });
            }
        }
        Ok(out)
    }

    /// All `k × k` minors.
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        let mut out = Vec::new();
        if k == 0 || k > self.rows || k > self.cols {
            return out;
        }
        for rows in combinations(self.rows, k) {
            for cols in combinations(self.cols, k) {
                let d = self.submatrix(&rows, &cols).det().unwrap();
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring};
    use crate::text::parse_polynomial;

    fn mat(r: &RingRef, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_polynomial(r, s).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinants_agree() {
        let r = Ring::new(7, &["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        let m = mat(
            &r,
            &[
                &["x", "y", "0", "1"],
                &["1", "z", "x*y", "0"],
                &["0", "2", "y", "x"],
                &["z^2", "0", "1", "y"],
            ],
        );
        assert_eq!(m.det_bareiss(), m.det_expand());
        let adj = m.adjugate().unwrap();
        let d = m.det().unwrap();
        assert_eq!(adj.mul(&m).unwrap(), PolyMatrix::identity(&r, 4).scale(&d));
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let r = Ring::new(5, &["x"], MonomialOrder::GrevLex).unwrap();
        let m = mat(
            &r,
            &[
                &["0", "1", "0", "0"],
                &["1", "0", "0", "0"],
                &["0", "0", "x", "1"],
                &["0", "0", "1", "x"],
            ],
        );
        assert_eq!(m.det_bareiss(), m.det_expand());
        assert_eq!(m.det().unwrap().to_string(), "4*x^2+1");
    }

    #[test]
    fn display_and_products() {
        let r = Ring::new(2, &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let u = mat(&r, &[&["x", "0"], &["0", "y"]]);
        assert_eq!(u.to_string(), "[[x,0],[0,y]]");
        assert_eq!(u.frobenius(1).unwrap(), u.mul(&u).unwrap());
        assert_eq!(u.minors(2), vec![parse_polynomial(&r, "x*y").unwrap()]);
    }
}
