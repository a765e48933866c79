//! Multivariate factorization over F_p.
//!
//! Cheap reductions come first (monomial content, p-th roots, squarefree
//! splitting through gcds with partial derivatives, content with respect to
//! each variable); whatever remains is factored through a Kronecker
//! substitution into one variable, recombining univariate factors in order of
//! increasing degree.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Polynomial;
use crate::ring::Monomial;
use crate::submodule::Submodule;
use crate::upoly::{factor as factor_upoly, UPoly};

/// Largest Kronecker image degree attempted.
const KRONECKER_DEGREE_CAP: u64 = 4096;
/// Largest number of univariate factor combinations tried.
const RECOMBINATION_CAP: usize = 1 << 16;

/// Monic greatest common divisor, via `(f) ∩ (g) = (lcm)`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_unit() || g.is_unit() {
        return Polynomial::one(f.ring());
    }
    if let Some(q) = f.exact_div(g) {
        let _ = q;
        return g.monic();
    }
    if let Some(q) = g.exact_div(f) {
        let _ = q;
        return f.monic();
    }
    let ring = f.ring();
    let a = Submodule::ideal(ring, std::slice::from_ref(f)).unwrap();
    let b = Submodule::ideal(ring, std::slice::from_ref(g)).unwrap();
    let l = a.intersect(&b).unwrap().polys();
    debug_assert_eq!(l.len(), 1);
    (f * g)
        .exact_div(&l[0])
        .expect("lcm divides the product")
        .monic()
}

/// Factorization `f = unit · Π g^m` into monic irreducibles, sorted by total
/// degree and then by printed form.
pub fn factor_polynomial(f: &Polynomial) -> Result<(FieldElement, Vec<(Polynomial, u32)>)> {
    if f.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut out = Vec::new();
    factor_into(&f.monic(), 1, &mut out)?;
    let mut merged: Vec<(Polynomial, u32)> = Vec::new();
    for (g, m) in out {
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some(entry) => entry.1 += m,
            None => merged.push((g, m)),
        }
    }
    merged.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
    Ok((f.leading_coeff(), merged))
}

fn factor_into(f: &Polynomial, mult: u32, out: &mut Vec<(Polynomial, u32)>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let ring = f.ring();
    let n = ring.nvars();
    let content = f.monomial_content();
    if !content.is_one() {
        for (i, &e) in content.exponents().iter().enumerate() {
            if e > 0 {
                out.push((Polynomial::var(ring, i), e * mult));
            }
        }
        let rest = f
            .exact_div(&Polynomial::monomial(ring, content, 1))
            .expect("content divides");
        return factor_into(&rest.monic(), mult, out);
    }
    let support = f.support();
    if support.len() == 1 {
        let var = support[0];
        let (_, fs) = factor_upoly(&UPoly::from_polynomial(f, var)?);
        for (g, m) in fs {
            out.push((g.to_polynomial(ring, var), m * mult));
        }
        return Ok(());
    }
    let derivs: Vec<Polynomial> = (0..n).map(|i| f.derivative(i)).collect();
    if derivs.iter().all(|d| d.is_zero()) {
        let p = ring.characteristic() as u32;
        let root = f.map_monomials(ring, |m| {
            let e: Vec<u32> = m.exponents().iter().map(|&e| e / p).collect();
            Monomial::from_exponents(&e)
        });
        return factor_into(&root, mult * p, out);
    }
    for d in derivs.iter().filter(|d| !d.is_zero()) {
        let g = poly_gcd(f, d);
        if !g.is_constant() {
            let h = f.exact_div(&g).expect("gcd divides");
            factor_into(&g, mult, out)?;
            return factor_into(&h.monic(), mult, out);
        }
    }
    for &v in &support {
        let c = content_in(f, v);
        if !c.is_constant() {
            let h = f.exact_div(&c).expect("content divides");
            factor_into(&c, mult, out)?;
            return factor_into(&h.monic(), mult, out);
        }
    }
    if support.iter().any(|&v| f.degree_in(v) == 1) {
        out.push((f.monic(), mult));
        return Ok(());
    }
    let mut rest = f.clone();
    while !rest.is_constant() {
        let g = kronecker_smallest_factor(&rest)?;
        rest = rest.exact_div(&g).expect("factor divides").monic();
        out.push((g, mult));
    }
    Ok(())
}

/// Content of `f` viewed as a polynomial in `var`.
fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let ring = f.ring();
    let mut coeffs: Vec<Vec<(Monomial, FieldElement)>> =
        vec![Vec::new(); f.degree_in(var) as usize + 1];
    for (m, c) in f.terms() {
        let k = m.exponents()[var] as usize;
        let mut m2 = m.clone();
        m2.exps_mut()[var] = 0;
        coeffs[k].push((m2, *c));
    }
    let mut g = Polynomial::zero(ring);
    for c in coeffs.into_iter().filter(|c| !c.is_empty()) {
        g = poly_gcd(&g, &Polynomial::from_terms(ring, c));
        if g.is_unit() {
            break;
        }
    }
    g
}

/// Smallest-degree irreducible factor of a squarefree, content-free `f`.
fn kronecker_smallest_factor(f: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    let n = ring.nvars();
    let bounds: Vec<u64> = (0..n).map(|i| f.degree_in(i) as u64 + 1).collect();
    let mut weights = Vec::with_capacity(n);
    let mut w = 1u64;
    for &b in &bounds {
        weights.push(w);
        w = w.checked_mul(b).ok_or(Error::Overflow)?;
    }
    if w > KRONECKER_DEGREE_CAP {
        return Err(Error::ResourceCap(format!(
            "factorization of {f} needs a Kronecker image of degree {w}"
        )));
    }
    let image = |g: &Polynomial| -> UPoly {
        let mut c = vec![0; w as usize];
        for (m, a) in g.terms() {
            let k: u64 = m
                .exponents()
                .iter()
                .zip(&weights)
                .map(|(&e, &wt)| e as u64 * wt)
                .sum();
            c[k as usize] = *a;
        }
        UPoly::new(*ring.field(), c)
    };
    let preimage = |u: &UPoly| -> Option<Polynomial> {
        let mut terms = Vec::new();
        for (k, &a) in u.coeffs().iter().enumerate() {
            if a == 0 {
                continue;
            }
            if k as u64 >= w {
                return None;
            }
            let e: Vec<u32> = (0..n)
                .map(|i| ((k as u64 / weights[i]) % bounds[i]) as u32)
                .collect();
            terms.push((Monomial::from_exponents(&e), a));
        }
        Some(Polynomial::from_terms(ring, terms))
    };
    let kf = image(f);
    let (_, ufs) = factor_upoly(&kf);
    let total = kf.degree();
    // exponent vectors over the univariate factors, by increasing degree
    let mut combos: Vec<(usize, Vec<u32>)> = vec![(0, vec![0; ufs.len()])];
    let mut idx = 0;
    let mut seen = std::collections::HashSet::new();
    let mut order: Vec<(usize, Vec<u32>)> = Vec::new();
    while idx < combos.len() {
        let (deg, v) = combos[idx].clone();
        idx += 1;
        for k in 0..ufs.len() {
            if v[k] < ufs[k].1 {
                let mut v2 = v.clone();
                v2[k] += 1;
                let d2 = deg + ufs[k].0.degree();
                if d2 * 2 <= total && seen.insert(v2.clone()) {
                    combos.push((d2, v2.clone()));
                    order.push((d2, v2));
                    if order.len() > RECOMBINATION_CAP {
                        return Err(Error::ResourceCap(format!(
                            "too many factor combinations while factoring {f}"
                        )));
                    }
                }
            }
        }
    }
    order.sort();
    for (_, v) in order {
        let mut prod = UPoly::one(*ring.field());
        for (k, &e) in v.iter().enumerate() {
            for _ in 0..e {
                prod = prod.mul(&ufs[k].0);
            }
        }
        if let Some(c) = preimage(&prod) {
            if c.is_constant() {
                continue;
            }
            if f.exact_div(&c).is_some() {
                return Ok(c.monic());
            }
        }
    }
    Ok(f.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring, RingRef};
    use crate::text::parse_polynomial;

    fn ring(p: u64) -> RingRef {
        Ring::new(p, &["x", "y", "z"], MonomialOrder::GrevLex).unwrap()
    }

    fn fac(p: u64, s: &str) -> Vec<(String, u32)> {
        let r = ring(p);
        let f = parse_polynomial(&r, s).unwrap();
        let (unit, fs) = factor_polynomial(&f).unwrap();
        let mut prod = Polynomial::constant(&r, unit);
        for (g, m) in &fs {
            prod = &prod * &g.pow(*m as u64);
        }
        assert_eq!(prod, f, "reconstruction of {s}");
        fs.into_iter().map(|(g, m)| (g.to_string(), m)).collect()
    }

    #[test]
    fn gcds() {
        let r = ring(3);
        let f = parse_polynomial(&r, "x^2*y-y^3").unwrap();
        let g = parse_polynomial(&r, "x*y+y^2").unwrap();
        assert_eq!(poly_gcd(&f, &g).to_string(), "x*y+y^2");
        let g = parse_polynomial(&r, "x*z+y*z").unwrap();
        assert_eq!(poly_gcd(&f, &g).to_string(), "x+y");
    }

    #[test]
    fn examples() {
        assert_eq!(fac(2, "x^2+y^2"), vec![("x+y".into(), 2)]);
        assert_eq!(fac(3, "x*y+x*z"), vec![("x".into(), 1), ("y+z".into(), 1)]);
        assert_eq!(
            fac(5, "x^2-y^2"),
            vec![("x+4*y".into(), 1), ("x+y".into(), 1)]
        );
        assert_eq!(
            fac(3, "x^2*y^2+2"),
            vec![("x*y+1".into(), 1), ("x*y+2".into(), 1)]
        );
        assert_eq!(fac(2, "x^2+y^3"), vec![("y^3+x^2".into(), 1)]);
        assert_eq!(
            fac(3, "x^2*z-y^2*z"),
            vec![("x+2*y".into(), 1), ("x+y".into(), 1), ("z".into(), 1)]
        );
    }

    #[test]
    fn nonlinear_factors_are_found() {
        let f = fac(2, "(x^2+y*z+1)*(x*y^2+z^2+x)");
        assert_eq!(f.len(), 2);
        let g = fac(3, "(x^2+y^2+1)^2*(x^3+y)");
        assert_eq!(g.iter().map(|t| t.1).collect::<Vec<_>>(), vec![2, 1]);
    }
}
