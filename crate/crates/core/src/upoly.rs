//! Dense univariate polynomials over F_p and their factorization.
//!
//! Factorization runs squarefree decomposition followed by Berlekamp's
//! algorithm. Small fields split deterministically by trying every constant;
//! large fields use random splitting driven by a fixed-seed generator, so the
//! output is reproducible either way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::linalg::nullspace;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingRef};

/// Field sizes up to this bound split Berlekamp subalgebras by exhaustive
/// search over constants.
const EXHAUSTIVE_SPLIT_LIMIT: u64 = 97;

/// Coefficients from low to high degree, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly {
    field: PrimeField,
    c: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(field: PrimeField, mut c: Vec<FieldElement>) -> Self {
        for x in c.iter_mut() {
            *x = field.reduce(*x);
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { field, c }
    }

    pub fn zero(field: PrimeField) -> Self {
        UPoly {
            field,
            c: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        UPoly { field, c: vec![1] }
    }

    pub fn x(field: PrimeField) -> Self {
        UPoly {
            field,
            c: vec![0, 1],
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree; the zero polynomial reports 0 as well, check `is_zero` first.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let f = self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| f.add(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        UPoly::new(f, c)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let f = self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| f.sub(*self.c.get(i).unwrap_or(&0), *o.c.get(i).unwrap_or(&0)))
            .collect();
        UPoly::new(f, c)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(*a, *b));
            }
        }
        UPoly::new(f, c)
    }

    pub fn scale(&self, k: FieldElement) -> UPoly {
        UPoly::new(
            self.field,
            self.c.iter().map(|a| self.field.mul(*a, k)).collect(),
        )
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lc()).unwrap())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        if self.c.len() < d.c.len() {
            return (UPoly::zero(f), self.clone());
        }
        let inv = f.inv(d.lc()).unwrap();
        let mut r = self.c.clone();
        let dn = d.c.len() - 1;
        let mut q = vec![0; r.len() - dn];
        for k in (0..q.len()).rev() {
            let t = f.mul(r[k + dn], inv);
            q[k] = t;
            if t != 0 {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = f.sub(r[k + j], f.mul(t, *b));
                }
            }
        }
        (UPoly::new(f, q), UPoly::new(f, r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        let f = self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(*a, f.reduce(i as u64)))
            .collect();
        UPoly::new(f, c)
    }

    /// `self^k mod m`.
    pub fn pow_mod(&self, mut k: u64, m: &UPoly) -> UPoly {
        let mut base = self.rem(m);
        let mut acc = UPoly::one(self.field).rem(m);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// `g` with `g^p = self`, valid when the derivative vanishes.
    fn pth_root(&self) -> UPoly {
        let p = self.field.characteristic() as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        UPoly::new(self.field, c)
    }

    pub fn to_polynomial(&self, ring: &RingRef, var: usize) -> Polynomial {
        let terms = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0)
            .map(|(i, a)| {
                let mut m = Monomial::one(ring.nvars());
                m.exps_mut()[var] = i as u32;
                (m, *a)
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Reads a polynomial involving at most variable `var`.
    pub fn from_polynomial(f: &Polynomial, var: usize) -> Result<UPoly> {
        let field = *f.ring().field();
        let mut c = vec![0; f.degree_in(var) as usize + 1];
        for (m, a) in f.terms() {
            if m.exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != var && e > 0)
            {
                return Err(Error::Precondition("polynomial is not univariate".into()));
            }
            c[m.exponents()[var] as usize] = *a;
        }
        Ok(UPoly::new(field, c))
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = Π g^m`, every `g` squarefree.
pub fn squarefree_decomposition(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let f = f.monic();
    let p = f.field.characteristic() as u32;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Irreducible factors of a monic squarefree polynomial.
pub fn berlekamp(f: &UPoly) -> Vec<UPoly> {
    let d = f.degree();
    if d <= 1 {
        return vec![f.monic()];
    }
    let field = f.field;
    let p = field.characteristic();
    // rows x^{ip} mod f
    let xp = UPoly::x(field).pow_mod(p, f);
    let mut rows = Vec::with_capacity(d);
    let mut cur = UPoly::one(field);
    for _ in 0..d {
        let mut row = cur.c.clone();
        row.resize(d, 0);
        rows.push(row);
        cur = cur.mul(&xp).rem(f);
    }
    // v (Q - I) = 0  <=>  (Q - I)^T v^T = 0
    let mut qt = vec![vec![0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut v = rows[j][i];
            if i == j {
                v = field.sub(v, 1);
            }
            qt[i][j] = v;
        }
    }
    let basis: Vec<UPoly> = nullspace(&field, &qt, d)
        .into_iter()
        .map(|v| UPoly::new(field, v))
        .collect();
    let r = basis.len();
    if r == 1 {
        return vec![f.monic()];
    }
    let mut factors = vec![f.monic()];
    if p <= EXHAUSTIVE_SPLIT_LIMIT {
        for v in basis.iter().filter(|v| v.degree() > 0) {
            let mut next = Vec::new();
            for g in factors {
                if g.degree() <= 1 {
                    next.push(g);
                    continue;
                }
                let mut rest = g;
                for c in 0..p {
                    if rest.degree() == 0 {
                        break;
                    }
                    let h = rest.gcd(&v.sub(&UPoly::new(field, vec![c])));
                    if h.degree() > 0 && h.degree() < rest.degree() {
                        rest = rest.div_rem(&h).0.monic();
                        next.push(h);
                    }
                }
                if rest.degree() > 0 {
                    next.push(rest);
                }
            }
            factors = next;
            if factors.len() == r {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ d as u64);
        while factors.len() < r {
            let mut v = UPoly::zero(field);
            for b in &basis {
                v = v.add(&b.scale(rng.gen_range(0..p)));
            }
            let mut next = Vec::new();
            for g in factors {
                if g.degree() <= 1 {
                    next.push(g);
                    continue;
                }
                let w = v.pow_mod((p - 1) / 2, &g).sub(&UPoly::one(field));
                let h = g.gcd(&w);
                if h.degree() > 0 && h.degree() < g.degree() {
                    next.push(g.div_rem(&h).0.monic());
                    next.push(h);
                } else {
                    next.push(g);
                }
            }
            factors = next;
        }
    }
    factors
}

/// Complete factorization `f = unit · Π g^m` into monic irreducibles, sorted
/// by degree and then coefficients.
pub fn factor(f: &UPoly) -> (FieldElement, Vec<(UPoly, u32)>) {
    if f.is_zero() {
        return (0, Vec::new());
    }
    let unit = f.lc();
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(&f.monic()) {
        for h in berlekamp(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.c.iter().rev().cmp(b.0.c.iter().rev()))
    });
    (unit, out)
}

/// Factorization of a univariate [`Polynomial`]; errors on multivariate input.
pub fn factor_univariate(f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let support = f.support();
    if support.len() > 1 {
        return Err(Error::Precondition("polynomial is not univariate".into()));
    }
    let Some(&var) = support.first() else {
        return Ok(Vec::new());
    };
    let u = UPoly::from_polynomial(f, var)?;
    Ok(factor(&u)
        .1
        .into_iter()
        .map(|(g, m)| (g.to_polynomial(f.ring(), var), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring};
    use crate::text::parse_polynomial;
    use proptest::prelude::*;

    fn fac(p: u64, s: &str) -> Vec<(String, u32)> {
        let r = Ring::new(p, &["x"], MonomialOrder::GrevLex).unwrap();
        factor_univariate(&parse_polynomial(&r, s).unwrap())
            .unwrap()
            .into_iter()
            .map(|(g, m)| (g.to_string(), m))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(fac(2, "x^2+x"), vec![("x".into(), 1), ("x+1".into(), 1)]);
        assert_eq!(fac(3, "x^2"), vec![("x".into(), 2)]);
        assert_eq!(fac(2, "x^4+x^2+1"), vec![("x^2+x+1".into(), 2)]);
        assert_eq!(
            fac(5, "x^4+4"),
            vec![
                ("x+1".into(), 1),
                ("x+2".into(), 1),
                ("x+3".into(), 1),
                ("x+4".into(), 1)
            ]
        );
    }

    #[test]
    fn rejects_multivariate() {
        let r = Ring::new(2, &["x", "y"], MonomialOrder::GrevLex).unwrap();
        assert!(factor_univariate(&parse_polynomial(&r, "x*y+1").unwrap()).is_err());
    }

    #[test]
    fn large_prime_splits() {
        // x^3 - x over F_p splits completely
        assert_eq!(fac_large("x^3-x").len(), 3);
        // 10009 is 1 mod 4, so -1 is a square
        assert_eq!(fac_large("x^2+1").len(), 2);
        assert_eq!(fac_large("x^2+x+1").len(), 2);
    }

    fn fac_large(s: &str) -> Vec<(Polynomial, u32)> {
        let r = Ring::new(10009, &["x"], MonomialOrder::GrevLex).unwrap();
        factor_univariate(&parse_polynomial(&r, s).unwrap()).unwrap()
    }

    fn irreducible_by_brute_force(g: &UPoly) -> bool {
        // no factor of degree <= deg/2, p small
        let f = g.field;
        let p = f.characteristic();
        let d = g.degree();
        for k in 1..=d / 2 {
            let total = p.pow(k as u32);
            for code in 0..total {
                let mut c = Vec::with_capacity(k + 1);
                let mut t = code;
                for _ in 0..k {
                    c.push(t % p);
                    t /= p;
                }
                c.push(1);
                let h = UPoly::new(f, c);
                if g.rem(&h).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn reconstruction(
            p in prop::sample::select(vec![2u64, 3, 5]),
            coeffs in proptest::collection::vec(0u64..5, 1..13),
        ) {
            let field = PrimeField::new(p).unwrap();
            let f = UPoly::new(field, coeffs);
            prop_assume!(!f.is_zero());
            let (unit, fs) = factor(&f);
            let mut prod = UPoly::new(field, vec![unit]);
            for (g, m) in &fs {
                prop_assert!(g.degree() >= 1);
                prop_assert_eq!(g.lc(), 1);
                if g.degree() <= 6 {
                    prop_assert!(irreducible_by_brute_force(g));
                }
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            prop_assert_eq!(prod, f);
        }
    }
}
