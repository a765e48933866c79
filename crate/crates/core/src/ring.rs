//! Ring contexts, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Exponent vector of a monomial; its length is the variable count of the ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two monomials. Panics on exponent overflow; exponents in this
    /// crate only grow large through [`Monomial::try_scale`], which is checked.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("exponent overflow")
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).ok_or(Error::Overflow)?;
        }
        Ok(Monomial(out))
    }

    /// Multiplies every exponent by `k` (the monomial raised to the `k`-th power).
    pub fn try_scale(&self, k: u64) -> Result<Monomial> {
        let mut out = self.0.clone();
        for a in out.iter_mut() {
            let v = (*a as u64).checked_mul(k).ok_or(Error::Overflow)?;
            *a = u32::try_from(v).map_err(|_| Error::Overflow)?;
        }
        Ok(Monomial(out))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

/// Monomial orders supported by the Gröbner machinery.
///
/// `Elimination(k)` makes the first `k` variables an elimination block: any
/// monomial involving them is larger than every monomial free of them. Both
/// blocks are internally ordered by grevlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Elimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.0.len());
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elim{}", k),
        }
    }
}

/// The ambient polynomial ring F_p[x_1, ..., x_n] together with its term order.
///
/// Rings are immutable and shared through `Arc`; every polynomial, vector and
/// module points back at exactly one ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new<S: AsRef<str>>(p: u64, names: &[S], order: MonomialOrder) -> Result<RingRef> {
        let field = PrimeField::new(p)?;
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Precondition(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(Ring {
            field,
            names,
            order,
        }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(Ring {
            field: self.field,
            names: self.names.clone(),
            order,
        })
    }

    /// Same field, new variable list.
    pub fn with_vars(&self, names: Vec<String>, order: MonomialOrder) -> RingRef {
        Arc::new(Ring {
            field: self.field,
            names,
            order,
        })
    }

    /// `p^e`, checked.
    pub fn frobenius_exponent(&self, e: u32) -> Result<u64> {
        self.characteristic()
            .checked_pow(e)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::Overflow)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ring p={} vars={} order={}",
            self.characteristic(),
            self.names.join(","),
            self.order
        )
    }
}

/// Structural identity check used by every binary operation.
#[inline]
pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Elimination(1),
            MonomialOrder::Elimination(2),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(a in mono(), b in mono(), c in mono()) {
            for o in orders() {
                let ab = o.compare(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ab, o.compare(&b, &a).reverse());
                // multiplicative
                prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c)), ab);
                // 1 is minimal
                prop_assert_ne!(o.compare(&Monomial::one(3), &a), Ordering::Greater);
            }
        }
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination(1);
        let t = Monomial::from_exponents(&[1, 0, 0]);
        let big = Monomial::from_exponents(&[0, 9, 9]);
        assert_eq!(o.compare(&t, &big), Ordering::Greater);
    }

    #[test]
    fn grevlex_tiebreak() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        let xz = Monomial::from_exponents(&[1, 0, 1]);
        let yy = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(o.compare(&xz, &yy), Ordering::Less);
    }

    #[test]
    fn scale_overflow_is_reported() {
        let m = Monomial::from_exponents(&[u32::MAX / 2, 0]);
        assert_eq!(m.try_scale(4), Err(Error::Overflow));
    }
}
