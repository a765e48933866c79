//! Minimal primes, primality and singular loci.
//!
//! Decomposition is recursive splitting. A node first removes variables that
//! occur linearly with a constant coefficient, then splits on any Gröbner
//! basis element that factors. Irreducible principal ideals are prime. In
//! dimension zero the ideal is made radical through minimal polynomials of
//! the variables and primality is read off the Frobenius-fixed subalgebra of
//! the quotient. In positive dimension a maximal independent set `u` is
//! chosen, the ideal is split into its contraction from `F_p(u)[x]` and the
//! part containing the leading coefficients, and the contraction is certified
//! prime by a primitive element whose eliminant is irreducible of full
//! degree.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::factor::factor_polynomial;
use crate::field::FieldElement;
use crate::groebner::{computations, reduced_basis};
use crate::linalg::nullspace;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::{Monomial, MonomialOrder, RingRef};
use crate::session::Session;
use crate::submodule::{Ideal, Submodule};
use crate::upoly::{factor as factor_upoly, UPoly};
use crate::vector::FreeVector;

/// Largest quotient algebra handled by the dimension-zero step.
const QUOTIENT_DIM_CAP: usize = 4096;

/// A prime ideal together with the step that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeRecord {
    pub ideal: Ideal,
    pub provenance: String,
    pub certified: bool,
}

impl PrimeRecord {
    pub fn new(ideal: Ideal, provenance: impl Into<String>) -> Self {
        PrimeRecord {
            ideal,
            provenance: provenance.into(),
            certified: true,
        }
    }
}

/// Canonical order on ideals: number of generators, then generator strings.
pub fn sort_ideals(v: &mut [Ideal]) {
    v.sort_by_cached_key(|i| (i.gens().len(), i.key()));
}

/// Removes duplicates and non-minimal members, returning canonical order.
pub fn minimalize(mut v: Vec<Ideal>) -> Vec<Ideal> {
    sort_ideals(&mut v);
    v.dedup();
    let mut out: Vec<Ideal> = Vec::new();
    for (k, p) in v.iter().enumerate() {
        let redundant = v
            .iter()
            .enumerate()
            .any(|(j, q)| j != k && q != p && q.is_subset_of(p));
        if !redundant {
            out.push(p.clone());
        }
    }
    out
}

/// The minimal primes of a proper ideal, canonically sorted.
pub fn minimal_primes(session: &Session, ideal: &Ideal) -> Result<Vec<PrimeRecord>> {
    Ok(minimal_prime_ideals(session, ideal)?
        .into_iter()
        .map(|p| PrimeRecord::new(p, "minprimes"))
        .collect())
}

/// Same as [`minimal_primes`] without the records.
pub fn minimal_prime_ideals(session: &Session, ideal: &Ideal) -> Result<Vec<Ideal>> {
    if ideal.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: ideal.rank(),
        });
    }
    if ideal.is_full() {
        return Err(Error::UnitIdeal("the unit ideal has no minimal primes"));
    }
    primes_over(session, ideal)
}

/// Minimal primes, with the unit ideal mapped to the empty set.
pub(crate) fn primes_over(session: &Session, ideal: &Ideal) -> Result<Vec<Ideal>> {
    let mut d = Decomposer {
        session,
        start: computations(),
        cache: HashMap::new(),
    };
    let res = d.decompose(ideal);
    session.record_gb(computations() - d.start);
    res
}

pub fn is_prime(session: &Session, ideal: &Ideal) -> Result<bool> {
    let ps = minimal_prime_ideals(session, ideal)?;
    Ok(ps.len() == 1 && ps[0] == *ideal)
}

/// `P + (c×c minors of the Jacobian of the reduced basis of P)` where `c` is
/// the height of `P`; its zero set is the singular locus of `R/P`. The ring
/// itself is regular, so `P = 0` gives the unit ideal.
pub fn singular_locus_ideal(_session: &Session, p: &Ideal) -> Result<Ideal> {
    let ring = p.ring();
    if p.is_full() {
        return Err(Error::UnitIdeal("singular locus of the zero ring"));
    }
    if p.is_zero() {
        return Ok(Submodule::full(ring, 1));
    }
    let n = ring.nvars();
    let c = n - p.krull_dimension()?;
    let gens = p.polys();
    let rows: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..n).map(|i| g.derivative(i)).collect())
        .collect();
    let jac = PolyMatrix::from_rows(ring, rows)?;
    let minors = jac.minors(c);
    let mut all = gens;
    all.extend(minors);
    Submodule::ideal(ring, &all)
}

struct Decomposer<'a> {
    session: &'a Session,
    start: usize,
    cache: HashMap<Ideal, Vec<Ideal>>,
}

impl Decomposer<'_> {
    fn tick(&self) -> Result<()> {
        let used = computations() - self.start;
        if used > self.session.limits.max_gb {
            Err(self.session.cap(
                "Gröbner computations in prime decomposition",
                self.session.limits.max_gb,
            ))
        } else {
            Ok(())
        }
    }

    fn decompose(&mut self, ideal: &Ideal) -> Result<Vec<Ideal>> {
        self.tick()?;
        if ideal.is_full() {
            return Ok(Vec::new());
        }
        if ideal.is_zero() {
            return Ok(vec![ideal.clone()]);
        }
        if let Some(v) = self.cache.get(ideal) {
            return Ok(v.clone());
        }
        let res = minimalize(self.decompose_inner(ideal)?);
        self.cache.insert(ideal.clone(), res.clone());
        Ok(res)
    }

    fn union(&mut self, parts: impl IntoIterator<Item = Ideal>) -> Result<Vec<Ideal>> {
        let mut out = Vec::new();
        for part in parts {
            out.extend(self.decompose(&part)?);
        }
        Ok(out)
    }

    fn decompose_inner(&mut self, ideal: &Ideal) -> Result<Vec<Ideal>> {
        let ring = ideal.ring().clone();
        let gens = ideal.polys();

        if let Some((k, var)) = linear_variable(&gens) {
            let g = &gens[k];
            let c = g
                .terms()
                .iter()
                .find(|(m, _)| m.exponents()[var] > 0)
                .unwrap()
                .1;
            let value = (&Polynomial::var(&ring, var) - &g.scale(ring.field().inv(c)?)).clone();
            let rest: Vec<Polynomial> = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, h)| h.substitute(var, &value))
                .collect();
            let smaller = Submodule::ideal(&ring, &rest)?;
            let primes = self.decompose(&smaller)?;
            return primes.iter().map(|p| p.add_poly(g)).collect();
        }

        let mut all_irreducible = true;
        for g in &gens {
            match factor_polynomial(g) {
                Ok((_, fs)) => {
                    if fs.len() > 1 || fs[0].1 > 1 {
                        let parts = fs
                            .iter()
                            .map(|(f, _)| ideal.add_poly(f))
                            .collect::<Result<Vec<_>>>()?;
                        return self.union(parts);
                    }
                }
                Err(Error::ResourceCap(_)) => all_irreducible = false,
                Err(e) => return Err(e),
            }
        }
        if gens.len() == 1 && all_irreducible {
            return Ok(vec![ideal.clone()]);
        }

        let u = ideal.max_independent_set();
        if u.is_empty() {
            self.zero_dimensional(ideal)
        } else {
            self.positive_dimensional(ideal, &u)
        }
    }

    fn zero_dimensional(&mut self, ideal: &Ideal) -> Result<Vec<Ideal>> {
        let ring = ideal.ring().clone();
        let q = Quotient::new(ideal)?;
        for j in 0..ring.nvars() {
            let m = q.min_poly(&Polynomial::var(&ring, j));
            let (_, fs) = factor_upoly(&m);
            if fs.len() > 1 || fs[0].1 > 1 {
                let parts = fs
                    .iter()
                    .map(|(f, _)| ideal.add_poly(&f.to_polynomial(&ring, j)))
                    .collect::<Result<Vec<_>>>()?;
                return self.union(parts);
            }
        }
        // radical now; a field iff the Frobenius-fixed subalgebra is F_p
        let fixed = q.frobenius_fixed();
        if fixed.len() <= 1 {
            return Ok(vec![ideal.clone()]);
        }
        let a = fixed
            .iter()
            .map(|v| q.element(v))
            .find(|a| !a.is_constant())
            .ok_or_else(|| {
                Error::Contract("fixed subalgebra without a non-constant element".into())
            })?;
        let m = q.min_poly(&a);
        let (_, roots) = factor_upoly(&m);
        let parts = roots
            .iter()
            .map(|(f, _)| {
                // f = t - c
                let c = ring.field().neg(f.coeffs()[0]);
                ideal.add_poly(&(&a - &Polynomial::constant(&ring, c)))
            })
            .collect::<Result<Vec<_>>>()?;
        self.union(parts)
    }

    fn positive_dimensional(&mut self, ideal: &Ideal, u: &[usize]) -> Result<Vec<Ideal>> {
        let ring = ideal.ring().clone();
        let block = BlockView::new(&ring, u);
        let gb = block.basis(ideal);
        let mut lcs: Vec<Polynomial> = Vec::new();
        for g in &gb {
            let lc = block.leading_coefficient(g);
            if !lc.is_constant() && !lcs.contains(&lc) {
                lcs.push(lc);
            }
        }
        let mut out = Vec::new();
        let contracted = if lcs.is_empty() {
            ideal.clone()
        } else {
            let h = lcs.iter().fold(Polynomial::one(&ring), |acc, f| &acc * f);
            out.extend(self.decompose(&ideal.add_poly(&h)?)?);
            ideal.saturate(&h)?
        };
        if contracted.is_full() {
            return Ok(out);
        }
        out.extend(self.contracted(&contracted, &block)?);
        Ok(out)
    }

    /// Primes of an ideal `J = J F_p(u)[x] ∩ R`.
    fn contracted(&mut self, j: &Ideal, block: &BlockView) -> Result<Vec<Ideal>> {
        let ring = j.ring().clone();
        let dim_k = block.dimension_over_k(j)?;
        let x = block.x.clone();
        for &xi in &x {
            let others: Vec<usize> = x.iter().copied().filter(|&v| v != xi).collect();
            let e = j.eliminate(&others);
            if let Some(res) = self.try_eliminant(j, &e, xi, dim_k, |f| f.clone())? {
                return Ok(res);
            }
        }
        // primitive elements x_i + c x_j
        let extended = {
            let mut names = ring.names().to_vec();
            names.push(fresh_name(&ring));
            ring.with_vars(names, MonomialOrder::GrevLex)
        };
        let n = ring.nvars();
        let lift = |f: &Polynomial| {
            f.map_monomials(&extended, |m| {
                let mut e = m.exponents().to_vec();
                e.push(0);
                Monomial::from_exponents(&e)
            })
        };
        let mut multipliers: Vec<Polynomial> = (1..ring.characteristic().min(8))
            .map(|c| Polynomial::constant(&ring, c))
            .collect();
        for &uk in &block.u {
            for k in 1..=2 {
                multipliers.push(Polynomial::var(&ring, uk).pow(k));
            }
        }
        let jt_gens: Vec<Polynomial> = j.polys().iter().map(lift).collect();
        for (a, &xi) in x.iter().enumerate() {
            for &xj in &x[a + 1..] {
                for c in &multipliers {
                    self.tick()?;
                    let t = &Polynomial::var(&ring, xi) + &(c * &Polynomial::var(&ring, xj));
                    let mut gens = jt_gens.clone();
                    gens.push(&Polynomial::var(&extended, n) - &lift(&t));
                    let jt = Submodule::ideal(&extended, &gens)?;
                    let e = jt.eliminate(&x);
                    // map T back to t inside R
                    let back = |f: &Polynomial| -> Polynomial {
                        let mut acc = Polynomial::zero(&ring);
                        for (m, coef) in f.terms() {
                            let mut e = m.exponents().to_vec();
                            let k = e.pop().unwrap();
                            let base =
                                Polynomial::monomial(&ring, Monomial::from_exponents(&e), *coef);
                            acc = &acc + &(&base * &t.pow(k as u64));
                        }
                        acc
                    };
                    if let Some(res) = self.try_eliminant(j, &e, n, dim_k, back)? {
                        return Ok(res);
                    }
                }
            }
        }
        Err(Error::ResourceCap(format!(
            "could not certify the components of {j}"
        )))
    }

    /// Uses a principal eliminant in `var` either to split `j` or to certify
    /// it prime. `back` maps eliminant factors into `R`.
    fn try_eliminant(
        &mut self,
        j: &Ideal,
        e: &Ideal,
        var: usize,
        dim_k: usize,
        back: impl Fn(&Polynomial) -> Polynomial,
    ) -> Result<Option<Vec<Ideal>>> {
        let gens = e.polys();
        if gens.len() != 1 {
            return Ok(None);
        }
        let fs = match factor_polynomial(&gens[0]) {
            Ok((_, fs)) => fs,
            Err(Error::ResourceCap(_)) => return Ok(None),
            Err(err) => return Err(err),
        };
        let fx: Vec<&(Polynomial, u32)> = fs.iter().filter(|(f, _)| f.degree_in(var) > 0).collect();
        if fx.is_empty() {
            return Ok(None);
        }
        if fx.len() > 1 || fx[0].1 > 1 {
            let parts = fx
                .iter()
                .map(|(f, _)| j.add_poly(&back(f)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(self.union(parts)?));
        }
        if fx[0].0.degree_in(var) as usize == dim_k {
            return Ok(Some(vec![j.clone()]));
        }
        Ok(None)
    }
}

fn fresh_name(ring: &RingRef) -> String {
    let mut k = 0;
    loop {
        let name = format!("_t{k}");
        if ring.var_index(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

/// A Gröbner element with some variable occurring only in a term `c * x`.
fn linear_variable(gens: &[Polynomial]) -> Option<(usize, usize)> {
    for (k, g) in gens.iter().enumerate() {
        for var in g.support() {
            let mut with = g.terms().iter().filter(|(m, _)| m.exponents()[var] > 0);
            let first = with.next().unwrap();
            if with.next().is_none() && first.0.degree() == 1 {
                return Some((k, var));
            }
        }
    }
    None
}

/// The block order with the non-independent variables `x` above `u`.
struct BlockView {
    ring: RingRef,
    block: RingRef,
    perm: Vec<usize>,
    x: Vec<usize>,
    u: Vec<usize>,
}

impl BlockView {
    fn new(ring: &RingRef, u: &[usize]) -> Self {
        let n = ring.nvars();
        let x: Vec<usize> = (0..n).filter(|i| !u.contains(i)).collect();
        let mut perm = x.clone();
        perm.extend_from_slice(u);
        let names = perm.iter().map(|&i| ring.names()[i].clone()).collect();
        let block = ring.with_vars(names, MonomialOrder::Elimination(x.len()));
        BlockView {
            ring: ring.clone(),
            block,
            perm,
            x,
            u: u.to_vec(),
        }
    }

    fn to_block(&self, m: &Monomial) -> Monomial {
        let e: Vec<u32> = self.perm.iter().map(|&i| m.exponents()[i]).collect();
        Monomial::from_exponents(&e)
    }

    fn from_block(&self, m: &Monomial) -> Monomial {
        let mut e = vec![0u32; self.perm.len()];
        for (k, &i) in self.perm.iter().enumerate() {
            e[i] = m.exponents()[k];
        }
        Monomial::from_exponents(&e)
    }

    /// Reduced basis in the block order, as polynomials of the block ring.
    fn basis(&self, ideal: &Ideal) -> Vec<Polynomial> {
        let gens: Vec<FreeVector> = ideal
            .gens()
            .iter()
            .map(|g| g.map_ring(&self.block, |m| self.to_block(m)))
            .collect();
        reduced_basis(&self.block, 1, &gens)
            .iter()
            .map(|g| g.as_poly())
            .collect()
    }

    /// Coefficient in `F_p[u]` of the leading `x`-monomial, in the original ring.
    fn leading_coefficient(&self, g: &Polynomial) -> Polynomial {
        let k = self.x.len();
        let lead_x = &g.leading_monomial().unwrap().exponents()[..k];
        let terms = g
            .terms()
            .iter()
            .filter(|(m, _)| &m.exponents()[..k] == lead_x)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                for v in e.iter_mut().take(k) {
                    *v = 0;
                }
                (self.from_block(&Monomial::from_exponents(&e)), *c)
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// `dim_K F_p(u)[x] / J` from the leading `x`-monomials.
    fn dimension_over_k(&self, j: &Ideal) -> Result<usize> {
        let k = self.x.len();
        let leads: Vec<Vec<u32>> = self
            .basis(j)
            .iter()
            .map(|g| g.leading_monomial().unwrap().exponents()[..k].to_vec())
            .collect();
        count_standard(&leads, k)
    }
}

/// Number of exponent vectors in `k` variables divisible by none of `leads`.
fn count_standard(leads: &[Vec<u32>], k: usize) -> Result<usize> {
    let divisible = |e: &[u32]| leads.iter().any(|l| l.iter().zip(e).all(|(a, b)| a <= b));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([vec![0u32; k]]);
    while let Some(e) = queue.pop_front() {
        if divisible(&e) || !seen.insert(e.clone()) {
            continue;
        }
        if seen.len() > QUOTIENT_DIM_CAP {
            return Err(Error::ResourceCap("quotient algebra too large".into()));
        }
        for i in 0..k {
            let mut e2 = e.clone();
            e2[i] += 1;
            queue.push_back(e2);
        }
    }
    Ok(seen.len())
}

/// `R/I` for a zero-dimensional `I`, as an F_p-vector space on the standard
/// monomials.
struct Quotient<'a> {
    ideal: &'a Ideal,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<'a> Quotient<'a> {
    fn new(ideal: &'a Ideal) -> Result<Self> {
        let n = ideal.ring().nvars();
        let leads: Vec<Vec<u32>> = ideal
            .gens()
            .iter()
            .map(|g| g.lead_monomial().unwrap().exponents().to_vec())
            .collect();
        let divisible = |e: &[u32]| leads.iter().any(|l| l.iter().zip(e).all(|(a, b)| a <= b));
        let mut index = HashMap::new();
        let mut basis = Vec::new();
        let mut queue = VecDeque::from([vec![0u32; n]]);
        while let Some(e) = queue.pop_front() {
            let m = Monomial::from_exponents(&e);
            if divisible(&e) || index.contains_key(&m) {
                continue;
            }
            if basis.len() >= QUOTIENT_DIM_CAP {
                return Err(Error::ResourceCap("quotient algebra too large".into()));
            }
            index.insert(m.clone(), basis.len());
            basis.push(m);
            for i in 0..n {
                let mut e2 = e.clone();
                e2[i] += 1;
                queue.push_back(e2);
            }
        }
        Ok(Quotient {
            ideal,
            basis,
            index,
        })
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.ideal.reduce_poly(f)
    }

    fn coords(&self, f: &Polynomial) -> Vec<FieldElement> {
        let mut v = vec![0; self.basis.len()];
        for (m, c) in self.reduce(f).terms() {
            v[self.index[m]] = *c;
        }
        v
    }

    fn element(&self, v: &[FieldElement]) -> Polynomial {
        let ring = self.ideal.ring();
        Polynomial::from_terms(
            ring,
            v.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (self.basis[i].clone(), *c))
                .collect(),
        )
    }

    fn pow(&self, a: &Polynomial, mut k: u64) -> Polynomial {
        let mut base = self.reduce(a);
        let mut acc = self.reduce(&Polynomial::one(a.ring()));
        while k > 0 {
            if k & 1 == 1 {
                acc = self.reduce(&(&acc * &base));
            }
            k >>= 1;
            if k > 0 {
                base = self.reduce(&(&base * &base));
            }
        }
        acc
    }

    /// Minimal polynomial of `a` over F_p.
    fn min_poly(&self, a: &Polynomial) -> UPoly {
        let field = *self.ideal.ring().field();
        let d = self.basis.len();
        // echelon rows: (vector, combination, pivot)
        let mut rows: Vec<(Vec<FieldElement>, Vec<FieldElement>, usize)> = Vec::new();
        let mut power = self.reduce(&Polynomial::one(a.ring()));
        let a = self.reduce(a);
        for k in 0..=d {
            let mut v = self.coords(&power);
            let mut combo = vec![0; k + 1];
            combo[k] = 1;
            for (rv, rc, piv) in &rows {
                let t = v[*piv];
                if t != 0 {
                    for (x, y) in v.iter_mut().zip(rv) {
                        *x = field.sub(*x, field.mul(t, *y));
                    }
                    for (i, y) in rc.iter().enumerate() {
                        combo[i] = field.sub(combo[i], field.mul(t, *y));
                    }
                }
            }
            match v.iter().position(|&c| c != 0) {
                None => return UPoly::new(field, combo).monic(),
                Some(piv) => {
                    let inv = field.inv(v[piv]).unwrap();
                    for x in v.iter_mut() {
                        *x = field.mul(*x, inv);
                    }
                    for x in combo.iter_mut() {
                        *x = field.mul(*x, inv);
                    }
                    rows.push((v, combo, piv));
                }
            }
            power = self.reduce(&(&power * &a));
        }
        unreachable!("powers of an element of a {d}-dimensional algebra are dependent")
    }

    /// Basis of `{a | a^p = a}`.
    fn frobenius_fixed(&self) -> Vec<Vec<FieldElement>> {
        let ring = self.ideal.ring();
        let field = *ring.field();
        let p = ring.characteristic();
        let d = self.basis.len();
        let mut cols = Vec::with_capacity(d);
        for (i, b) in self.basis.iter().enumerate() {
            let bp = self.pow(&Polynomial::monomial(ring, b.clone(), 1), p);
            let mut c = self.coords(&bp);
            c[i] = field.sub(c[i], 1);
            cols.push(c);
        }
        let rows: Vec<Vec<FieldElement>> = (0..d)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        nullspace(&field, &rows, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::text::parse_polynomial;

    fn ring(p: u64, vars: &[&str]) -> RingRef {
        Ring::new(p, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn id(r: &RingRef, gens: &[&str]) -> Ideal {
        let ps: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(r, s).unwrap())
            .collect();
        Submodule::ideal(r, &ps).unwrap()
    }

    fn mp(r: &RingRef, gens: &[&str]) -> Vec<String> {
        let s = Session::default();
        minimal_prime_ideals(&s, &id(r, gens))
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn spec_examples() {
        let r = ring(3, &["x", "y", "z"]);
        assert_eq!(mp(&r, &["x^2"]), vec!["(x)"]);
        assert_eq!(mp(&r, &["x*y", "x*z"]), vec!["(x)", "(y, z)"]);
        let r2 = ring(2, &["x", "y"]);
        assert_eq!(mp(&r2, &["x^2+y^2"]), vec!["(x+y)"]);
    }

    #[test]
    fn unit_ideal_is_an_error() {
        let r = ring(2, &["x"]);
        let s = Session::default();
        assert!(matches!(
            minimal_primes(&s, &Submodule::full(&r, 1)),
            Err(Error::UnitIdeal(_))
        ));
    }

    #[test]
    fn zero_dimensional_splitting() {
        // F_9 ⊗ F_9 is not a field
        let r = ring(3, &["x", "y"]);
        assert_eq!(
            mp(&r, &["x^2+1", "y^2+1"]),
            vec!["(y^2+1, x+2*y)", "(y^2+1, x+y)"]
        );
        // a field extension
        assert_eq!(mp(&r, &["x^2+1", "y-x"]).len(), 1);
        let r2 = ring(2, &["x", "y"]);
        assert_eq!(mp(&r2, &["x^2+x+1", "y^2+y+1"]).len(), 2);
    }

    #[test]
    fn positive_dimensional() {
        let r = ring(5, &["x", "y", "z"]);
        // twisted cubic is prime
        let tc = ["x*z-y^2", "y*z-x^3", "z^2-x^2*y"];
        assert_eq!(mp(&r, &tc).len(), 1);
        let s = Session::default();
        assert!(is_prime(&s, &id(&r, &tc)).unwrap());
        assert_eq!(
            mp(&r, &["x*y", "y*z", "x*z"]),
            vec!["(x, y)", "(x, z)", "(y, z)"]
        );
        assert_eq!(mp(&r, &["x^2-y^2*z"]), vec!["(y^2*z+4*x^2)"]);
        assert_eq!(mp(&r, &["x^2-y^2"]), vec!["(x+4*y)", "(x+y)"]);
    }

    #[test]
    fn primitive_element_split() {
        let r = ring(3, &["x", "y", "z"]);
        assert_eq!(
            mp(&r, &["x^2-z", "y^2-z"]),
            vec!["(y^2+2*z, x+2*y)", "(y^2+2*z, x+y)"]
        );
        let r = ring(2, &["x", "y", "z", "w"]);
        assert_eq!(mp(&r, &["x^2+z*w", "y^2+z"]).len(), 1);
    }

    #[test]
    fn primality() {
        let r = ring(2, &["x", "y"]);
        let s = Session::default();
        assert!(is_prime(&s, &id(&r, &["x"])).unwrap());
        assert!(!is_prime(&s, &id(&r, &["x^2"])).unwrap());
        assert!(!is_prime(&s, &id(&r, &["x*y"])).unwrap());
        assert!(is_prime(&s, &Submodule::zero(&r, 1)).unwrap());
    }

    #[test]
    fn singular_loci() {
        let s = Session::default();
        let r = ring(3, &["x", "y"]);
        let j = singular_locus_ideal(&s, &id(&r, &["x^2-y^3"])).unwrap();
        assert_eq!(
            minimal_prime_ideals(&s, &j).unwrap(),
            vec![id(&r, &["x", "y"])]
        );
        assert!(singular_locus_ideal(&s, &Submodule::zero(&r, 1))
            .unwrap()
            .is_full());
        let smooth = singular_locus_ideal(&s, &id(&r, &["x-y^2"])).unwrap();
        assert!(smooth.is_full());
    }

    #[test]
    fn cap_is_reported() {
        let r = ring(5, &["x", "y", "z"]);
        let s = Session::new(crate::session::Limits {
            max_gb: 0,
            ..Default::default()
        });
        let res = minimal_prime_ideals(&s, &id(&r, &["x*y", "y*z", "x*z"]));
        assert!(matches!(res, Err(Error::ResourceCap(_))));
    }
}
