//! Sparse multivariate polynomials over F_p in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::ring::{same_ring, Monomial, RingRef};

/// A polynomial stored as terms in strictly descending order with respect to
/// the ring's monomial order, without zero coefficients. Two equal
/// polynomials are therefore structurally identical.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: u64) -> Self {
        let c = ring.field().reduce(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), 1)],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: FieldElement) -> Self {
        let c = ring.field().reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, FieldElement)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = f.reduce(c);
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusted constructor: terms already sorted, merged and nonzero.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<(Monomial, FieldElement)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_unit() && self.terms[0].1 == 1
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            Some(0)
        } else if self.is_unit() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|t| t.0.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.0.exponents()[i] > 0))
            .collect()
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some(first) => it.fold(first.0.clone(), |acc, t| acc.gcd(&t.0)),
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn assert_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials belong to different rings"
        );
    }

    /// `self + c * m * other`, merging in one pass.
    pub(crate) fn add_scaled_shifted(
        &self,
        c: FieldElement,
        m: &Monomial,
        other: &Polynomial,
    ) -> Polynomial {
        let f = self.ring.field();
        let ring = &self.ring;
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |j: usize| -> (Monomial, FieldElement) {
            let (om, oc) = &other.terms[j];
            (om.mul(m), f.mul(*oc, c))
        };
        let mut pending = if j < other.terms.len() {
            Some(shifted(j))
        } else {
            None
        };
        while i < self.terms.len() || pending.is_some() {
            match (&self.terms.get(i), &pending) {
                (Some(a), Some(b)) => match ring.cmp_monomials(&a.0, &b.0) {
                    Ordering::Greater => {
                        out.push((*a).clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = (j < other.terms.len()).then(|| shifted(j));
                    }
                    Ordering::Equal => {
                        let s = f.add(a.1, b.1);
                        if s != 0 {
                            out.push((a.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = (j < other.terms.len()).then(|| shifted(j));
                    }
                },
                (Some(a), None) => {
                    out.push((*a).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = (j < other.terms.len()).then(|| shifted(j));
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial::from_sorted(ring, out)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = self.ring.field();
        let c = f.reduce(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: FieldElement) -> Polynomial {
        let f = self.ring.field();
        let c = f.reduce(c);
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), f.mul(*b, c)))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .ring
            .field()
            .inv(self.leading_coeff())
            .expect("nonzero");
        self.scale(inv)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled_shifted(1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let minus_one = self.ring.field().neg(1);
        Ok(self.add_scaled_shifted(minus_one, &Monomial::one(self.ring.nvars()), other))
    }

    /// Product in canonical form; fails when the operands live in different rings.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let f = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), f.mul(*ca, *cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f^(p^e)`, computed by scaling exponents: over F_p every coefficient is
    /// fixed by Frobenius and the cross terms of the multinomial vanish.
    pub fn frobenius_pow(&self, e: u32) -> Result<Polynomial> {
        let q = self.ring.frobenius_exponent(e)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.try_scale(q)?, *c));
        }
        // scaling every exponent by q preserves the (multiplicative) order
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    /// Division by a single polynomial: returns `(q, r)` with `self = q*g + r`
    /// and no term of `r` divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero(self.ring.characteristic()));
        }
        let f = self.ring.field();
        let (glm, glc) = (&g.terms[0].0, g.terms[0].1);
        let ginv = f.inv(glc)?;
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut cur = self.clone();
        while let Some((m, c)) = cur.terms.first().cloned() {
            if glm.divides(&m) {
                let qm = glm.quotient_of(&m);
                let qc = f.mul(c, ginv);
                cur = cur.add_scaled_shifted(f.neg(qc), &qm, g);
                q.push((qm, qc));
            } else {
                r.push((m, c));
                cur.terms.remove(0);
            }
        }
        Ok((
            Polynomial::from_terms(&self.ring, q),
            Polynomial::from_sorted(&self.ring, r),
        ))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(g).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let f = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let k = f.mul(*c, f.reduce(e as u64));
            if k == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exps_mut()[var] -= 1;
            terms.push((m2, k));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        self.assert_ring(value);
        let mut acc = Polynomial::zero(&self.ring);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.ring)];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.exps_mut()[var] = 0;
            acc = acc.add_scaled_shifted(*c, &rest, &powers[e]);
        }
        acc
    }

    /// Transfers the polynomial into `target`, rewriting each monomial with `f`.
    pub fn map_monomials(
        &self,
        target: &RingRef,
        mut f: impl FnMut(&Monomial) -> Monomial,
    ) -> Polynomial {
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (f(m), *c)).collect())
    }

    /// Moves the polynomial into a ring with the same variables but possibly a
    /// different order.
    pub fn reorder(&self, target: &RingRef) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        self.map_monomials(target, |m| m.clone())
    }

    /// Evaluates variable `var` at a field element.
    pub fn eval_var(&self, var: usize, value: FieldElement) -> Polynomial {
        self.substitute(var, &Polynomial::constant(&self.ring, value))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_ring(rhs);
        self.checked_add(rhs).unwrap()
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_ring(rhs);
        self.checked_sub(rhs).unwrap()
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_ring(rhs);
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.field().neg(1))
    }
}

/// Product of two polynomials over the same ring.
pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.checked_mul(g)
}

/// `f^(p^e)` for `e >= 1`.
pub fn frobenius_pow(f: &Polynomial, e: u32) -> Result<Polynomial> {
    if e == 0 {
        return Err(Error::Precondition(
            "Frobenius exponent must be positive".into(),
        ));
    }
    f.frobenius_pow(e)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", c)?;
            } else if *c == 1 {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", c, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring};
    use proptest::prelude::*;

    fn ring(p: u64, n: usize) -> RingRef {
        let names: Vec<String> = ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Ring::new(p, &names, MonomialOrder::GrevLex).unwrap()
    }

    fn parse(r: &RingRef, s: &str) -> Polynomial {
        crate::text::parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn freshman_dream_char_two() {
        let r = ring(2, 2);
        let f = parse(&r, "x+y");
        assert_eq!((&f * &f).to_string(), "x^2+y^2");
    }

    #[test]
    fn multiply_by_zero() {
        let r = ring(5, 2);
        let f = parse(&r, "x^2+3*y");
        assert!((&f * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn product_over_f3() {
        let r = ring(3, 1);
        let f = parse(&r, "x+1");
        let g = parse(&r, "x+2");
        assert_eq!(poly_mul(&f, &g).unwrap(), parse(&r, "x^2+2"));
    }

    #[test]
    fn cross_ring_product_is_rejected() {
        let a = ring(3, 2);
        let b = ring(5, 2);
        let f = Polynomial::var(&a, 0);
        let g = Polynomial::var(&b, 0);
        assert_eq!(poly_mul(&f, &g), Err(Error::ContextMismatch));
    }

    #[test]
    fn frobenius_examples() {
        let r2 = ring(2, 2);
        assert_eq!(
            frobenius_pow(&parse(&r2, "x+y"), 1).unwrap(),
            parse(&r2, "x^2+y^2")
        );
        assert!(frobenius_pow(&Polynomial::one(&r2), 3).unwrap().is_one());
        let r3 = ring(3, 2);
        let f = parse(&r3, "x+2*y");
        let cube = &(&f * &f) * &f;
        assert_eq!(frobenius_pow(&f, 1).unwrap(), cube);
        assert_eq!(cube, parse(&r3, "x^3+2*y^3"));
    }

    #[test]
    fn frobenius_overflow() {
        let r = ring(3, 1);
        let f = Polynomial::monomial(&r, Monomial::from_exponents(&[1 << 20]), 1);
        assert_eq!(f.frobenius_pow(15), Err(Error::Overflow));
    }

    #[test]
    fn exact_division() {
        let r = ring(3, 2);
        let f = parse(&r, "x^2*y+x*y^2");
        assert_eq!(f.exact_div(&parse(&r, "x+y")).unwrap(), parse(&r, "x*y"));
        assert!(f.exact_div(&parse(&r, "x+1")).is_none());
    }

    fn arb_poly(p: u64, n: usize) -> impl Strategy<Value = Polynomial> {
        let r = ring(p, n);
        proptest::collection::vec((proptest::collection::vec(0u32..=4, n), 0u64..p), 0..6).prop_map(
            move |ts| {
                let terms = ts
                    .into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= 4)
                    .map(|(e, c)| (Monomial::from_exponents(&e), c))
                    .collect();
                Polynomial::from_terms(&r, terms)
            },
        )
    }

    fn repeated_power(f: &Polynomial, k: u64) -> Polynomial {
        let mut acc = Polynomial::one(f.ring());
        for _ in 0..k {
            acc = &acc * f;
        }
        acc
    }

    proptest! {
        #[test]
        fn frobenius_is_additive(
            (f, g) in prop_oneof![
                (arb_poly(2, 3), arb_poly(2, 3)),
                (arb_poly(3, 2), arb_poly(3, 2)),
                (arb_poly(5, 1), arb_poly(5, 1)),
            ],
            e in 1u32..=2,
        ) {
            let lhs = (&f + &g).frobenius_pow(e).unwrap();
            let rhs = &f.frobenius_pow(e).unwrap() + &g.frobenius_pow(e).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frobenius_matches_repeated_product(f in arb_poly(3, 2)) {
            prop_assert_eq!(f.frobenius_pow(1).unwrap(), repeated_power(&f, 3));
        }

        #[test]
        fn frobenius_matches_repeated_squaring(f in arb_poly(2, 3)) {
            prop_assert_eq!(f.frobenius_pow(2).unwrap(), f.pow(4));
        }

        #[test]
        fn normalisation_is_idempotent(f in arb_poly(5, 3)) {
            let again = Polynomial::from_terms(f.ring(), f.terms().to_vec());
            prop_assert_eq!(&again, &f);
            prop_assert_eq!(again.terms(), f.terms());
        }

        #[test]
        fn div_rem_reconstructs(f in arb_poly(3, 2), g in arb_poly(3, 2)) {
            prop_assume!(!g.is_zero());
            let (q, r) = f.div_rem(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
        }
    }
}
