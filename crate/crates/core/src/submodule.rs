//! Submodules of free modules and the ideal operations built on them.
//!
//! Every [`Submodule`] carries its reduced Gröbner basis, computed at
//! construction, so equality is structural. Derived operations (intersection,
//! colon, lifting, preimages) are computed inside a larger free module: the
//! position-over-term order eliminates the leading block of positions exactly
//! as a block order eliminates variables.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{reduced_basis, Reducer};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Monomial, MonomialOrder, RingRef};
use crate::vector::FreeVector;

const SATURATION_CAP: usize = 64;

/// A finitely generated submodule of `R^rank`, stored by its reduced Gröbner
/// basis.
#[derive(Clone)]
pub struct Submodule {
    ring: RingRef,
    rank: usize,
    gb: Arc<Vec<FreeVector>>,
}

/// Ideals are rank-one submodules.
pub type Ideal = Submodule;

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && same_ring(&self.ring, &other.ring) && self.gb == other.gb
    }
}

impl Eq for Submodule {}

impl Hash for Submodule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.gb.hash(state);
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Submodule {
    pub fn new(ring: &RingRef, rank: usize, gens: Vec<FreeVector>) -> Result<Self> {
        for g in &gens {
            if !same_ring(ring, g.ring()) {
                return Err(Error::ContextMismatch);
            }
            if g.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: g.rank(),
                });
            }
        }
        Ok(Self::from_gens(ring, rank, &gens))
    }

    fn from_gens(ring: &RingRef, rank: usize, gens: &[FreeVector]) -> Self {
        Submodule {
            ring: ring.clone(),
            rank,
            gb: Arc::new(reduced_basis(ring, rank, gens)),
        }
    }

    /// Wraps a list already known to be a reduced Gröbner basis.
    fn from_reduced(ring: &RingRef, rank: usize, gb: Vec<FreeVector>) -> Self {
        debug_assert!(gb.iter().all(|g| g.rank() == rank));
        Submodule {
            ring: ring.clone(),
            rank,
            gb: Arc::new(gb),
        }
    }

    /// The ideal generated by `gens`.
    pub fn ideal(ring: &RingRef, gens: &[Polynomial]) -> Result<Ideal> {
        let mut vs = Vec::with_capacity(gens.len());
        for g in gens {
            if !same_ring(ring, g.ring()) {
                return Err(Error::ContextMismatch);
            }
            vs.push(FreeVector::from_poly(g));
        }
        Ok(Self::from_gens(ring, 1, &vs))
    }

    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        Self::from_reduced(ring, rank, Vec::new())
    }

    /// All of `R^rank`; the unit ideal when `rank == 1`.
    pub fn full(ring: &RingRef, rank: usize) -> Self {
        Self::from_reduced(
            ring,
            rank,
            (0..rank).map(|i| FreeVector::unit(ring, rank, i)).collect(),
        )
    }

    /// `I * R^rank` for an ideal `I`.
    pub fn extend(ideal: &Ideal, rank: usize) -> Self {
        assert_eq!(ideal.rank, 1);
        let mut gb = Vec::with_capacity(rank * ideal.gb.len());
        for i in 0..rank {
            for g in ideal.gb.iter() {
                gb.push(g.embed(rank, i));
            }
        }
        Self::from_reduced(&ideal.ring, rank, gb)
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The reduced Gröbner basis, sorted descending by leading term.
    #[inline]
    pub fn gens(&self) -> &[FreeVector] {
        &self.gb
    }

    /// Generators of a rank-one submodule as polynomials.
    pub fn polys(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1, "not an ideal");
        self.gb.iter().map(|g| g.as_poly()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.gb.is_empty()
    }

    /// True for `R^rank` (the unit ideal at rank one).
    pub fn is_full(&self) -> bool {
        self.gb.len() == self.rank
            && self
                .gb
                .iter()
                .all(|g| g.terms().len() == 1 && g.terms()[0].1.is_one())
    }

    fn check_vec(&self, v: &FreeVector) -> Result<()> {
        if !same_ring(&self.ring, v.ring()) {
            return Err(Error::ContextMismatch);
        }
        if v.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: v.rank(),
            });
        }
        Ok(())
    }

    fn check(&self, other: &Submodule) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        self.check_vec(v)?;
        Ok(Reducer::new(self.gb.iter()).normal_form(v))
    }

    pub fn contains(&self, v: &FreeVector) -> bool {
        self.check_vec(v).is_ok() && Reducer::new(self.gb.iter()).top_reduce(v).is_zero()
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.rank == 1 && self.contains(&FreeVector::from_poly(f))
    }

    pub fn reduce_poly(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(self.rank, 1);
        Reducer::new(self.gb.iter())
            .normal_form(&FreeVector::from_poly(f))
            .as_poly()
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.check(other).is_ok() && self.gb.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check(other)?;
        if other.is_subset_of(self) {
            return Ok(self.clone());
        }
        if self.is_subset_of(other) {
            return Ok(other.clone());
        }
        let mut gens: Vec<FreeVector> = self.gb.to_vec();
        gens.extend(other.gb.iter().cloned());
        Ok(Self::from_gens(&self.ring, self.rank, &gens))
    }

    /// Adds generators.
    pub fn add_gens(&self, more: &[FreeVector]) -> Result<Submodule> {
        for v in more {
            self.check_vec(v)?;
        }
        let mut gens: Vec<FreeVector> = self.gb.to_vec();
        gens.extend(more.iter().filter(|v| !self.contains(v)).cloned());
        if gens.len() == self.gb.len() {
            return Ok(self.clone());
        }
        Ok(Self::from_gens(&self.ring, self.rank, &gens))
    }

    /// `I + (f)` for an ideal.
    pub fn add_poly(&self, f: &Polynomial) -> Result<Ideal> {
        self.add_gens(&[FreeVector::from_poly(f)])
    }

    /// `f * self`.
    pub fn scale(&self, f: &Polynomial) -> Submodule {
        let gens: Vec<FreeVector> = self.gb.iter().map(|g| g.mul_poly(f)).collect();
        Self::from_gens(&self.ring, self.rank, &gens)
    }

    /// Product of an ideal and a submodule.
    pub fn mul_ideal(&self, ideal: &Ideal) -> Submodule {
        let mut gens = Vec::new();
        for f in ideal.polys() {
            for g in self.gb.iter() {
                gens.push(g.mul_poly(&f));
            }
        }
        Self::from_gens(&self.ring, self.rank, &gens)
    }

    /// Entrywise Frobenius power of the generators.
    pub fn frobenius(&self, e: u32) -> Result<Submodule> {
        let gens = self
            .gb
            .iter()
            .map(|g| g.frobenius(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(&self.ring, self.rank, &gens))
    }

    /// Gröbner basis of `gens` inside `R^big`, returning the elements whose
    /// first `cut` components vanish, restricted to the remaining block.
    fn eliminate_block(ring: &RingRef, big: usize, cut: usize, gens: &[FreeVector]) -> Submodule {
        let gb = reduced_basis(ring, big, gens);
        let kept = gb
            .iter()
            .filter(|g| g.lead_position().unwrap() >= cut)
            .map(|g| g.slice(cut..big))
            .collect();
        Self::from_reduced(ring, big - cut, kept)
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check(other)?;
        if self.is_subset_of(other) {
            return Ok(self.clone());
        }
        if other.is_subset_of(self) {
            return Ok(other.clone());
        }
        let a = self.rank;
        let mut gens = Vec::new();
        for g in self.gb.iter() {
            gens.push(g.embed(2 * a, 0).checked_add(&g.embed(2 * a, a))?);
        }
        for g in other.gb.iter() {
            gens.push(g.embed(2 * a, 0));
        }
        Ok(Self::eliminate_block(&self.ring, 2 * a, a, &gens))
    }

    /// `(self : f) = {w | f w ∈ self}`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Submodule> {
        if !same_ring(&self.ring, f.ring()) {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(Self::full(&self.ring, self.rank));
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let a = self.rank;
        let mut gens = Vec::new();
        for i in 0..a {
            let e = FreeVector::unit(&self.ring, a, i);
            gens.push(
                e.mul_poly(f)
                    .embed(2 * a, 0)
                    .checked_add(&e.embed(2 * a, a))?,
            );
        }
        for g in self.gb.iter() {
            gens.push(g.embed(2 * a, 0));
        }
        Ok(Self::eliminate_block(&self.ring, 2 * a, a, &gens))
    }

    /// `(self : J) = {w | J w ⊆ self}` for an ideal `J`; the zero ideal gives
    /// the whole free module.
    pub fn quotient(&self, j: &Ideal) -> Result<Submodule> {
        if j.rank != 1 {
            return Err(Error::RankMismatch {
                expected: 1,
                found: j.rank,
            });
        }
        let mut acc = Self::full(&self.ring, self.rank);
        for f in j.polys() {
            let q = self.quotient_by(&f)?;
            acc = acc.intersect(&q)?;
        }
        Ok(acc)
    }

    /// `(self :_R w) = {r ∈ R | r w ∈ self}`.
    pub fn colon_vector(&self, w: &FreeVector) -> Result<Ideal> {
        self.check_vec(w)?;
        if self.contains(w) {
            return Ok(Self::full(&self.ring, 1));
        }
        let a = self.rank;
        let mut gens =
            vec![w
                .embed(a + 1, 0)
                .checked_add(&FreeVector::unit(&self.ring, a + 1, a))?];
        for g in self.gb.iter() {
            gens.push(g.embed(a + 1, 0));
        }
        Ok(Self::eliminate_block(&self.ring, a + 1, a, &gens))
    }

    /// `(self :_R W) = {r ∈ R | r W ⊆ self}`.
    pub fn module_quotient(&self, w: &Submodule) -> Result<Ideal> {
        self.check(w)?;
        let mut acc = Self::full(&self.ring, 1);
        for g in w.gb.iter() {
            let c = self.colon_vector(g)?;
            acc = acc.intersect(&c)?;
        }
        Ok(acc)
    }

    /// Annihilator of `R^rank / self`.
    pub fn annihilator(&self) -> Ideal {
        let mut acc = Self::full(&self.ring, 1);
        for i in 0..self.rank {
            let c = self
                .colon_vector(&FreeVector::unit(&self.ring, self.rank, i))
                .expect("same ring");
            acc = acc.intersect(&c).expect("same ring");
        }
        acc
    }

    /// `(self : a^∞)`.
    pub fn saturate(&self, a: &Polynomial) -> Result<Submodule> {
        if a.is_zero() {
            return Err(Error::Precondition("cannot saturate at zero".into()));
        }
        let mut cur = self.clone();
        for _ in 0..SATURATION_CAP {
            let next = cur.quotient_by(a)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::ResourceCap(format!(
            "saturation did not stabilise within {SATURATION_CAP} steps"
        )))
    }

    /// Cofactors `c` with `h = Σ c_k gens[k]`, or `None` if `h` is not in the
    /// span of `gens`.
    pub fn lift(h: &FreeVector, gens: &[FreeVector]) -> Option<Vec<Polynomial>> {
        let ring = h.ring();
        let a = h.rank();
        let m = gens.len();
        let big = a + m;
        let vs: Vec<FreeVector> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                g.embed(big, 0)
                    .checked_add(&FreeVector::unit(ring, big, a + k))
                    .unwrap()
            })
            .collect();
        let gb = reduced_basis(ring, big, &vs);
        let nf = Reducer::new(gb.iter()).normal_form(&h.embed(big, 0));
        if !nf.vanishes_on(0..a) {
            return None;
        }
        Some(nf.slice(a..big).components().iter().map(|c| -c).collect())
    }

    /// `{y ∈ R^cols.len() | Σ y_j cols[j] ∈ self}`.
    pub fn preimage(&self, cols: &[FreeVector]) -> Result<Submodule> {
        for c in cols {
            self.check_vec(c)?;
        }
        let a = self.rank;
        let b = cols.len();
        let mut gens = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            gens.push(c.embed(a + b, 0).checked_add(&FreeVector::unit(
                &self.ring,
                a + b,
                a + j,
            ))?);
        }
        for g in self.gb.iter() {
            gens.push(g.embed(a + b, 0));
        }
        Ok(Self::eliminate_block(&self.ring, a + b, a, &gens))
    }

    /// Krull dimension of `R / self` for a proper ideal.
    pub fn krull_dimension(&self) -> Result<usize> {
        assert_eq!(self.rank, 1, "not an ideal");
        if self.is_full() {
            return Err(Error::UnitIdeal("unit ideal has no dimension"));
        }
        Ok(self.max_independent_set().len())
    }

    /// A maximal-size set of variables independent modulo the leading ideal,
    /// the lexicographically smallest among those of maximal size.
    pub fn max_independent_set(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .gb
            .iter()
            .map(|g| {
                g.lead_monomial()
                    .unwrap()
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut best: Option<u64> = None;
        for size in (0..=n).rev() {
            for mask in subsets_of_size(n, size) {
                if supports.iter().all(|s| s & !mask != 0) {
                    best = Some(mask);
                    break;
                }
            }
            if best.is_some() {
                break;
            }
        }
        let mask = best.unwrap_or(0);
        (0..n).filter(|i| mask & (1 << i) != 0).collect()
    }

    /// `self ∩ F_p[vars not in elim]`, returned in the same ring.
    pub fn eliminate(&self, elim: &[usize]) -> Ideal {
        assert_eq!(self.rank, 1, "not an ideal");
        if elim.is_empty() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = elim.to_vec();
        perm.extend((0..n).filter(|i| !elim.contains(i)));
        let names: Vec<String> = perm.iter().map(|&i| self.ring.names()[i].clone()).collect();
        let big = self
            .ring
            .with_vars(names, MonomialOrder::Elimination(elim.len()));
        let to_big = |m: &Monomial| {
            let e: Vec<u32> = perm.iter().map(|&i| m.exponents()[i]).collect();
            Monomial::from_exponents(&e)
        };
        let gens: Vec<FreeVector> = self.gb.iter().map(|g| g.map_ring(&big, to_big)).collect();
        let gb = reduced_basis(&big, 1, &gens);
        let back = |m: &Monomial| {
            let mut e = vec![0u32; n];
            for (k, &i) in perm.iter().enumerate() {
                e[i] = m.exponents()[k];
            }
            Monomial::from_exponents(&e)
        };
        let kept: Vec<FreeVector> = gb
            .iter()
            .filter(|g| {
                g.lead_monomial().unwrap().exponents()[..elim.len()]
                    .iter()
                    .all(|&e| e == 0)
            })
            .map(|g| g.map_ring(&self.ring, back))
            .collect();
        Self::from_gens(&self.ring, 1, &kept)
    }

    /// Moves an ideal into a ring with the same variables and another order.
    pub fn reorder(&self, target: &RingRef) -> Submodule {
        let gens: Vec<FreeVector> = self
            .gb
            .iter()
            .map(|g| g.map_ring(target, |m| m.clone()))
            .collect();
        Self::from_gens(target, self.rank, &gens)
    }

    /// Canonical generator strings, used for sorting and keys.
    pub fn key(&self) -> Vec<String> {
        if self.rank == 1 {
            return self.gb.iter().map(|g| g.as_poly().to_string()).collect();
        }
        self.gb.iter().map(|g| g.to_string()).collect()
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 1 {
            if self.gb.is_empty() {
                return write!(f, "(0)");
            }
            let parts: Vec<String> = self.gb.iter().map(|g| g.as_poly().to_string()).collect();
            write!(f, "({})", parts.join(", "))
        } else {
            if self.gb.is_empty() {
                return write!(f, "<0>");
            }
            let parts: Vec<String> = self.gb.iter().map(|g| g.to_string()).collect();
            write!(f, "<{}>", parts.join(", "))
        }
    }
}

/// `normal_form` as a free function.
pub fn normal_form(v: &FreeVector, g: &Submodule) -> Result<FreeVector> {
    g.normal_form(v)
}

/// Submodule generated by `gens`, with its reduced Gröbner basis.
pub fn buchberger(ring: &RingRef, rank: usize, gens: Vec<FreeVector>) -> Result<Submodule> {
    Submodule::new(ring, rank, gens)
}

pub fn submodule_equal(a: &Submodule, b: &Submodule) -> bool {
    a == b
}
