//! Elements of free modules `R^α`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Monomial, RingRef};

/// A term `c * m * e_pos` of a free-module element.
pub(crate) type MTerm = (u32, Monomial, FieldElement);

/// Position-over-term comparison: a lower position is larger, ties are broken
/// by the ring order.
#[inline]
pub(crate) fn cmp_pot(ring: &RingRef, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.cmp_monomials(a.1, b.1))
}

/// A vector of `rank` polynomials, stored as one sorted term list.
#[derive(Clone)]
pub struct FreeVector {
    ring: RingRef,
    rank: usize,
    terms: Vec<MTerm>,
}

impl PartialEq for FreeVector {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for FreeVector {}

impl Hash for FreeVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.terms.hash(state);
    }
}

impl fmt::Debug for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FreeVector {
    pub fn zero(ring: &RingRef, rank: usize) -> Self {
        FreeVector {
            ring: ring.clone(),
            rank,
            terms: Vec::new(),
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(ring: &RingRef, rank: usize, i: usize) -> Self {
        assert!(i < rank);
        FreeVector {
            ring: ring.clone(),
            rank,
            terms: vec![(i as u32, Monomial::one(ring.nvars()), 1)],
        }
    }

    pub fn from_poly(f: &Polynomial) -> Self {
        Self::from_polys(f.ring(), std::slice::from_ref(f)).expect("single polynomial")
    }

    pub fn from_polys(ring: &RingRef, comps: &[Polynomial]) -> Result<Self> {
        let mut terms = Vec::new();
        for (i, c) in comps.iter().enumerate() {
            if !same_ring(ring, c.ring()) {
                return Err(Error::ContextMismatch);
            }
            terms.extend(c.terms().iter().map(|(m, a)| (i as u32, m.clone(), *a)));
        }
        Ok(FreeVector {
            ring: ring.clone(),
            rank: comps.len(),
            terms,
        })
    }

    pub(crate) fn from_sorted_terms(ring: &RingRef, rank: usize, terms: Vec<MTerm>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| { cmp_pot(ring, (w[0].0, &w[0].1), (w[1].0, &w[1].1)) == Ordering::Greater }));
        FreeVector {
            ring: ring.clone(),
            rank,
            terms,
        }
    }

    pub(crate) fn from_unsorted_terms(ring: &RingRef, rank: usize, mut terms: Vec<MTerm>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| cmp_pot(ring, (b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for (p, m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == p && last.1 == m => last.2 = f.add(last.2, c),
                _ => out.push((p, m, f.reduce(c))),
            }
        }
        out.retain(|t| t.2 != 0);
        FreeVector {
            ring: ring.clone(),
            rank,
            terms: out,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub(crate) fn terms(&self) -> &[MTerm] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub(crate) fn lead(&self) -> Option<&MTerm> {
        self.terms.first()
    }

    /// Position of the leading term.
    pub fn lead_position(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0 as usize)
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn component(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0 as usize == i)
            .map(|t| (t.1.clone(), t.2))
            .collect();
        Polynomial::from_sorted(&self.ring, terms)
    }

    pub fn components(&self) -> Vec<Polynomial> {
        let mut out: Vec<Vec<(Monomial, FieldElement)>> = vec![Vec::new(); self.rank];
        for (p, m, c) in &self.terms {
            out[*p as usize].push((m.clone(), *c));
        }
        out.into_iter()
            .map(|t| Polynomial::from_sorted(&self.ring, t))
            .collect()
    }

    /// Polynomial of a rank-one vector.
    pub fn as_poly(&self) -> Polynomial {
        debug_assert_eq!(self.rank, 1);
        self.component(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    fn check(&self, other: &FreeVector) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    /// `self + c * m * other` in a single merge.
    pub(crate) fn add_scaled_shifted(
        &self,
        c: FieldElement,
        m: &Monomial,
        other: &FreeVector,
    ) -> FreeVector {
        merge(&self.ring, self.rank, &self.terms, c, m, &other.terms)
    }

    pub fn checked_add(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        Ok(self.add_scaled_shifted(1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_sub(&self, other: &FreeVector) -> Result<FreeVector> {
        self.check(other)?;
        let m1 = self.ring.field().neg(1);
        Ok(self.add_scaled_shifted(m1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn scale(&self, c: FieldElement) -> FreeVector {
        let f = self.ring.field();
        let c = f.reduce(c);
        if c == 0 {
            return FreeVector::zero(&self.ring, self.rank);
        }
        FreeVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(p, m, a)| (*p, m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: FieldElement) -> FreeVector {
        let f = self.ring.field();
        let c = f.reduce(c);
        if c == 0 {
            return FreeVector::zero(&self.ring, self.rank);
        }
        FreeVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(p, a, b)| (*p, a.mul(m), f.mul(*b, c)))
                .collect(),
        }
    }

    /// Scalar multiple `f * self`.
    pub fn mul_poly(&self, f: &Polynomial) -> FreeVector {
        assert!(same_ring(&self.ring, f.ring()));
        let mut acc = FreeVector::zero(&self.ring, self.rank);
        for (m, c) in f.terms() {
            acc = acc.add_scaled_shifted(*c, m, self);
        }
        acc
    }

    pub fn monic(&self) -> FreeVector {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(self.ring.field().inv(t.2).expect("nonzero")),
        }
    }

    /// Entrywise `p^e`-th power.
    pub fn frobenius(&self, e: u32) -> Result<FreeVector> {
        let q = self.ring.frobenius_exponent(e)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (p, m, c) in &self.terms {
            terms.push((*p, m.try_scale(q)?, *c));
        }
        Ok(FreeVector::from_sorted_terms(&self.ring, self.rank, terms))
    }

    /// Places the vector into `R^new_rank` starting at position `offset`.
    pub fn embed(&self, new_rank: usize, offset: usize) -> FreeVector {
        assert!(offset + self.rank <= new_rank);
        FreeVector {
            ring: self.ring.clone(),
            rank: new_rank,
            terms: self
                .terms
                .iter()
                .map(|(p, m, c)| (*p + offset as u32, m.clone(), *c))
                .collect(),
        }
    }

    /// Components `range`, renumbered from zero.
    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeVector {
        let lo = range.start as u32;
        FreeVector {
            ring: self.ring.clone(),
            rank: range.len(),
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&(t.0 as usize)))
                .map(|(p, m, c)| (*p - lo, m.clone(), *c))
                .collect(),
        }
    }

    /// True when every component in `range` vanishes.
    pub fn vanishes_on(&self, range: std::ops::Range<usize>) -> bool {
        !self.terms.iter().any(|t| range.contains(&(t.0 as usize)))
    }

    /// Rewrites into another ring with the same number of variables.
    pub fn map_ring(
        &self,
        target: &RingRef,
        mut f: impl FnMut(&Monomial) -> Monomial,
    ) -> FreeVector {
        FreeVector::from_unsorted_terms(
            target,
            self.rank,
            self.terms.iter().map(|(p, m, c)| (*p, f(m), *c)).collect(),
        )
    }
}

pub(crate) fn merge(
    ring: &RingRef,
    rank: usize,
    a: &[MTerm],
    c: FieldElement,
    m: &Monomial,
    b: &[MTerm],
) -> FreeVector {
    let f = ring.field();
    if c == 0 || b.is_empty() {
        return FreeVector::from_sorted_terms(ring, rank, a.to_vec());
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut bj: Option<MTerm> = b.first().map(|t| (t.0, t.1.mul(m), f.mul(t.2, c)));
    loop {
        match (a.get(i), bj.as_ref()) {
            (None, None) => break,
            (Some(x), None) => {
                out.extend_from_slice(&a[i..]);
                let _ = x;
                break;
            }
            (None, Some(_)) => {
                out.push(bj.take().unwrap());
                j += 1;
                bj = b.get(j).map(|t| (t.0, t.1.mul(m), f.mul(t.2, c)));
            }
            (Some(x), Some(y)) => match cmp_pot(ring, (x.0, &x.1), (y.0, &y.1)) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = b.get(j).map(|t| (t.0, t.1.mul(m), f.mul(t.2, c)));
                }
                Ordering::Equal => {
                    let s = f.add(x.2, y.2);
                    if s != 0 {
                        out.push((x.0, x.1.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(|t| (t.0, t.1.mul(m), f.mul(t.2, c)));
                }
            },
        }
    }
    FreeVector {
        ring: ring.clone(),
        rank,
        terms: out,
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring};
    use crate::text::parse_polynomial;

    #[test]
    fn components_round_trip() {
        let r = Ring::new(5, &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let a = parse_polynomial(&r, "x^2+y").unwrap();
        let b = parse_polynomial(&r, "3*x*y").unwrap();
        let v = FreeVector::from_polys(&r, &[a.clone(), Polynomial::zero(&r), b.clone()]).unwrap();
        assert_eq!(v.components(), vec![a, Polynomial::zero(&r), b]);
        assert_eq!(v.lead_position(), Some(0));
        assert_eq!(v.to_string(), "[x^2+y, 0, 3*x*y]");
        assert_eq!(v.slice(1..3).embed(3, 1).slice(2..3), v.slice(2..3));
    }

    #[test]
    fn position_dominates_degree() {
        let r = Ring::new(2, &["x"], MonomialOrder::GrevLex).unwrap();
        let x = Polynomial::var(&r, 0);
        let v = FreeVector::from_polys(&r, &[Polynomial::one(&r), x.pow(5)]).unwrap();
        assert_eq!(v.lead_position(), Some(0));
        assert!(v.lead_monomial().unwrap().is_one());
    }
}
