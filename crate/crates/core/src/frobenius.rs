//! Frobenius powers, the `I_e` operation, star-closure and the stable kernel.
//!
//! `R` is free over `R^{p^e}` on the monomials with all exponents below
//! `p^e`. Writing `v = Σ_b u_b^{[p^e]} b` in that basis, `I_e(v)` is the
//! submodule generated by the `u_b`, and `I_e` is additive over sums of
//! submodules, so it is computed generator by generator.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingRef};
use crate::session::Session;
use crate::submodule::{Ideal, Submodule};
use crate::vector::FreeVector;

/// `v = Σ_b (u_b)^{[p^e]} · b` with basis monomials `b` as keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusBasisExpansion {
    pub e: u32,
    pub entries: BTreeMap<Monomial, FreeVector>,
}

impl FrobeniusBasisExpansion {
    /// Rebuilds the expanded vector.
    pub fn reconstruct(&self, ring: &RingRef, rank: usize) -> Result<FreeVector> {
        let mut acc = FreeVector::zero(ring, rank);
        for (b, u) in &self.entries {
            acc = acc.checked_add(&u.frobenius(self.e)?.mul_monomial(b, 1))?;
        }
        Ok(acc)
    }
}

/// Submodule generated by the `p^e`-th powers of the generators.
pub fn frobenius_power_module(k: &Submodule, e: u32) -> Result<Submodule> {
    if e == 0 {
        return Err(Error::Precondition(
            "Frobenius exponent must be positive".into(),
        ));
    }
    k.frobenius(e)
}

pub fn ie_expand(v: &FreeVector, e: u32) -> Result<FrobeniusBasisExpansion> {
    if e == 0 {
        return Err(Error::Precondition("I_e needs e >= 1".into()));
    }
    let ring = v.ring();
    let q = ring.frobenius_exponent(e)? as u32;
    let mut buckets: BTreeMap<Monomial, Vec<(u32, Monomial, u64)>> = BTreeMap::new();
    for (pos, m, c) in v.terms() {
        let quo: Vec<u32> = m.exponents().iter().map(|&a| a / q).collect();
        let rem: Vec<u32> = m.exponents().iter().map(|&a| a % q).collect();
        buckets
            .entry(Monomial::from_exponents(&rem))
            .or_default()
            .push((*pos, Monomial::from_exponents(&quo), *c));
    }
    let entries = buckets
        .into_iter()
        .map(|(b, terms)| (b, FreeVector::from_unsorted_terms(ring, v.rank(), terms)))
        .collect();
    Ok(FrobeniusBasisExpansion { e, entries })
}

/// The smallest `L` with `K ⊆ L^{[p^e]}`.
pub fn ie_operation(k: &Submodule, e: u32) -> Result<Submodule> {
    if e == 0 {
        return Err(Error::Precondition("I_e needs e >= 1".into()));
    }
    let parts: Vec<Vec<FreeVector>> = k
        .gens()
        .par_iter()
        .map(|g| ie_expand(g, e).map(|x| x.entries.into_values().collect()))
        .collect::<Result<_>>()?;
    Submodule::new(k.ring(), k.rank(), parts.into_iter().flatten().collect())
}

/// `I_e` of the principal ideal `(u)`.
pub fn ie_poly(u: &Polynomial, e: u32) -> Result<Ideal> {
    let ideal = Submodule::ideal(u.ring(), std::slice::from_ref(u))?;
    ie_operation(&ideal, e)
}

/// The smallest `W ⊇ V` with `U W ⊆ W^{[p^e]}`, as the limit of
/// `V_{i+1} = I_e(U V_i) + V_i`.
pub fn star_closure(session: &Session, v: &Submodule, u: &PolyMatrix, e: u32) -> Result<Submodule> {
    if !u.is_square() || u.rows() != v.rank() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix acting on rank {}",
            u.rows(),
            u.cols(),
            v.rank()
        )));
    }
    let mut cur = v.clone();
    for _ in 0..session.limits.star_cap {
        if cur.is_full() {
            return Ok(cur);
        }
        let next = ie_operation(&u.apply(&cur)?, e)?.sum(&cur)?;
        if next == cur {
            check_stable(&cur, u, e)?;
            return Ok(cur);
        }
        cur = next;
    }
    Err(session.cap("star-closure iterations", session.limits.star_cap))
}

/// Star-closure of an ideal under a single polynomial.
pub fn star_closure_poly(session: &Session, v: &Ideal, u: &Polynomial, e: u32) -> Result<Ideal> {
    let m = PolyMatrix::new(u.ring(), 1, 1, vec![u.clone()])?;
    star_closure(session, v, &m, e)
}

fn check_stable(w: &Submodule, u: &PolyMatrix, e: u32) -> Result<()> {
    let uw = u.apply(w)?;
    if uw.is_zero() {
        return Ok(());
    }
    let wq = w.frobenius(e)?;
    if uw.is_subset_of(&wq) {
        Ok(())
    } else {
        Err(Error::Contract("star-closure is not U-stable".into()))
    }
}

/// The stable value `𝒦` of `K_1 = I_1(U R^α)`, `K_{e+1} = I_1(U K_e)`.
#[derive(Clone, Debug)]
pub struct StableKernel {
    /// `𝒦` itself.
    pub module: Submodule,
    /// First `e` with `K_e = K_{e+1}`.
    pub index: u32,
    /// `K_1, …, K_index`.
    pub chain: Vec<Submodule>,
}

pub fn stable_kernel(session: &Session, u: &PolyMatrix) -> Result<StableKernel> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(
            "stable kernel of a non-square matrix".into(),
        ));
    }
    let mut cur = ie_operation(&u.image(), 1)?;
    let mut chain = vec![cur.clone()];
    for _ in 0..session.limits.kernel_cap {
        let next = ie_operation(&u.apply(&cur)?, 1)?;
        if next == cur {
            return Ok(StableKernel {
                module: cur,
                index: chain.len() as u32,
                chain,
            });
        }
        cur = next;
        chain.push(cur.clone());
    }
    Err(session.cap("stable-kernel iterations", session.limits.kernel_cap))
}

/// `U^{[p^{e-1}]} ··· U^{[p]} U`.
pub fn frobenius_product(u: &PolyMatrix, e: u32) -> Result<PolyMatrix> {
    let mut acc = u.clone();
    for k in 1..e {
        acc = u.frobenius(k)?.mul(&acc)?;
    }
    Ok(acc)
}

/// `I_e(U^{[p^{e-1}]} ··· U R^α)` straight from the definition.
pub fn stable_kernel_direct(u: &PolyMatrix, e: u32) -> Result<Submodule> {
    ie_operation(&frobenius_product(u, e)?.image(), e)
}

/// `(I^{[p^e]} : I)`.
pub fn fedder_colon(i: &Ideal, e: u32) -> Result<Ideal> {
    if i.is_full() {
        return Err(Error::UnitIdeal("Fedder colon of the unit ideal"));
    }
    frobenius_power_module(i, e)?.quotient(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring};
    use crate::text::parse_polynomial;

    fn ring(p: u64) -> RingRef {
        Ring::new(p, &["x", "y"], MonomialOrder::GrevLex).unwrap()
    }

    fn poly(r: &RingRef, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    fn id(r: &RingRef, gens: &[&str]) -> Ideal {
        let ps: Vec<Polynomial> = gens.iter().map(|s| poly(r, s)).collect();
        Submodule::ideal(r, &ps).unwrap()
    }

    fn mat(r: &RingRef, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter()
                .map(|row| row.iter().map(|s| poly(r, s)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn frobenius_powers_of_modules() {
        let r = ring(2);
        assert_eq!(
            frobenius_power_module(&id(&r, &["x", "y^2"]), 1).unwrap(),
            id(&r, &["x^2", "y^4"])
        );
        assert!(frobenius_power_module(&Submodule::zero(&r, 1), 2)
            .unwrap()
            .is_zero());
        let v = FreeVector::from_polys(&r, &[poly(&r, "x"), poly(&r, "y")]).unwrap();
        let m = Submodule::new(&r, 2, vec![v]).unwrap();
        let w = FreeVector::from_polys(&r, &[poly(&r, "x^2"), poly(&r, "y^2")]).unwrap();
        assert_eq!(
            frobenius_power_module(&m, 1).unwrap(),
            Submodule::new(&r, 2, vec![w]).unwrap()
        );
    }

    #[test]
    fn expansions() {
        let r = ring(2);
        let show = |s: &str| -> Vec<(String, String)> {
            let v = FreeVector::from_poly(&poly(&r, s));
            let ex = ie_expand(&v, 1).unwrap();
            assert_eq!(ex.reconstruct(&r, 1).unwrap(), v);
            ex.entries
                .iter()
                .map(|(b, u)| (r.format_monomial(b), u.as_poly().to_string()))
                .collect()
        };
        assert_eq!(show("x^3*y"), vec![("x*y".into(), "x".into())]);
        assert_eq!(show("x^2"), vec![("1".into(), "x".into())]);
        let mut got = show("x^3+y^3");
        got.sort();
        assert_eq!(
            got,
            vec![("x".into(), "x".into()), ("y".into(), "y".into())]
        );
    }

    #[test]
    fn ie_examples() {
        let r = ring(2);
        assert_eq!(
            ie_operation(&id(&r, &["x^3*y"]), 1).unwrap(),
            id(&r, &["x"])
        );
        assert!(ie_operation(&id(&r, &["x*y"]), 1).unwrap().is_full());
        for c in 1..=6u32 {
            let got = ie_operation(&id(&r, &[&format!("x^{c}")]), 1).unwrap();
            let want = if c / 2 == 0 {
                Submodule::full(&r, 1)
            } else {
                id(&r, &[&format!("x^{}", c / 2)])
            };
            assert_eq!(got, want, "c = {c}");
        }
    }

    #[test]
    fn star_examples() {
        let r = ring(2);
        let s = Session::default();
        let x = poly(&r, "x");
        let y = poly(&r, "y");
        assert_eq!(
            star_closure_poly(&s, &id(&r, &["x"]), &x, 1).unwrap(),
            id(&r, &["x"])
        );
        assert!(star_closure_poly(&s, &id(&r, &["x"]), &y, 1)
            .unwrap()
            .is_full());
        let v = id(&r, &["x^2+y", "y^3"]);
        assert_eq!(
            star_closure_poly(&s, &v, &Polynomial::zero(&r), 1).unwrap(),
            v
        );
    }

    #[test]
    fn stable_kernel_examples() {
        let r = ring(2);
        let s = Session::default();
        let k = stable_kernel(&s, &mat(&r, &[&["x^2"]])).unwrap();
        assert_eq!(k.module, id(&r, &["x"]));
        assert!(stable_kernel(&s, &mat(&r, &[&["x*y"]]))
            .unwrap()
            .module
            .is_full());
        assert!(stable_kernel(&s, &mat(&r, &[&["0"]]))
            .unwrap()
            .module
            .is_zero());
    }

    #[test]
    fn stable_kernel_recursion_matches_definition() {
        let r = ring(2);
        let s = Session::default();
        let u = mat(&r, &[&["x^2", "y"], &["x*y", "0"]]);
        let k = stable_kernel(&s, &u).unwrap();
        let mut cur = ie_operation(&u.image(), 1).unwrap();
        for e in 1..=3 {
            assert_eq!(stable_kernel_direct(&u, e).unwrap(), cur, "e = {e}");
            cur = ie_operation(&u.apply(&cur).unwrap(), 1).unwrap();
        }
        assert_eq!(k.chain[0], stable_kernel_direct(&u, 1).unwrap());
    }

    #[test]
    fn fedder_examples() {
        let r = ring(2);
        assert_eq!(fedder_colon(&id(&r, &["x"]), 1).unwrap(), id(&r, &["x"]));
        assert!(fedder_colon(&Submodule::zero(&r, 1), 1).unwrap().is_full());
        assert_eq!(
            fedder_colon(&id(&r, &["x", "y"]), 1).unwrap(),
            id(&r, &["x^2", "y^2", "x*y"])
        );
    }
}
