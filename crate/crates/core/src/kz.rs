//! `U`-special primes for an `α×α` matrix `U` (Frobenius exponent one).
//!
//! The worklist starts at `(0)`. For each prime `P` with `𝒦 ⊄ PR^α` the step
//! below produces a finite candidate set guaranteed to contain every
//! `U`-special prime minimally over `P`; candidates are then checked
//! directly, so the enumeration never reports a non-special prime.
//!
//! Completeness is not guaranteed. When the localizing element of a reduction
//! is a zero divisor modulo `W^{[p]}` the recursion can land on a matrix with
//! zero stable kernel and drop primes; `[[0,0],[y^2,x*y]]` over `F_2[x,y]`
//! loses `(x+y)` this way. For degenerate `U` such as `[[0,0],[0,1]]` the set
//! of special primes with `𝒦 ⊄ PR^α` is infinite and only a finite part is
//! returned.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::frobenius::{
    fedder_colon, frobenius_product, ie_operation, stable_kernel, star_closure,
};
use crate::ks::{ks_closure, ks_run, ks_step, KSProblem};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::primes::{minimalize, primes_over, sort_ideals, PrimeRecord};
use crate::session::Session;
use crate::submodule::{Ideal, Submodule};
use crate::vector::FreeVector;

/// Upper bound on the power of `a1` tried per entry of `U`.
const MU_CAP: u32 = 64;

#[derive(Clone, Debug)]
pub struct KZProblem {
    pub u: PolyMatrix,
    /// `𝒦`, the stable value of `I_e(U^{[p^{e-1}]} ··· U R^α)`.
    pub kernel: Submodule,
}

impl KZProblem {
    pub fn new(session: &Session, u: PolyMatrix) -> Result<Self> {
        if !u.is_square() || u.rows() == 0 {
            return Err(Error::DimensionMismatch(
                "U must be square and non-empty".into(),
            ));
        }
        let kernel = stable_kernel(session, &u)?.module;
        if kernel.is_zero() {
            return Err(Error::Precondition(
                "the stable kernel of U is zero; every prime is special".into(),
            ));
        }
        Ok(KZProblem { u, kernel })
    }

    pub fn alpha(&self) -> usize {
        self.u.rows()
    }
}

/// `numerator / base^exp` over `R_base`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedMatrix {
    pub numerator: PolyMatrix,
    pub denom_base: Polynomial,
    pub denom_exp: u32,
}

impl LocalizedMatrix {
    pub fn new(numerator: PolyMatrix, denom_base: Polynomial, denom_exp: u32) -> Result<Self> {
        if denom_base.is_zero() {
            return Err(Error::DivisionByZero(0));
        }
        let mut m = LocalizedMatrix {
            numerator,
            denom_base,
            denom_exp,
        };
        m.normalize();
        Ok(m)
    }

    /// Cancels common factors of the base while the exponent is positive.
    pub fn normalize(&mut self) {
        if self.denom_base.is_unit() {
            if let Some(c) = self.denom_base.constant_value() {
                let f = self.denom_base.ring().field();
                let inv = f.inv(f.pow(c, self.denom_exp as u64)).expect("unit");
                self.numerator = self.numerator.map_entries(|x| x.scale(inv));
            }
            self.denom_exp = 0;
            return;
        }
        while self.denom_exp > 0 {
            let divided: Option<Vec<Polynomial>> = self
                .numerator
                .entries()
                .iter()
                .map(|x| x.exact_div(&self.denom_base))
                .collect();
            match divided {
                Some(d) => {
                    self.numerator = PolyMatrix::new(
                        self.numerator.ring(),
                        self.numerator.rows(),
                        self.numerator.cols(),
                        d,
                    )
                    .expect("same shape");
                    self.denom_exp -= 1;
                }
                None => break,
            }
        }
    }

    /// `base^ν · self` with `ν` the smallest exponent giving entries in `R`.
    pub fn cleared(&self) -> (PolyMatrix, u32) {
        (self.numerator.clone(), self.denom_exp)
    }
}

/// `ann(R^α / (P R^α)^{★U}) = P`.
pub fn is_u_special(session: &Session, p: &Ideal, u: &PolyMatrix) -> Result<bool> {
    if p.is_full() {
        return Err(Error::UnitIdeal("special ideals are proper"));
    }
    let w = star_closure(session, &Submodule::extend(p, u.rows()), u, 1)?;
    Ok(w.annihilator() == *p)
}

fn entry_order(a: &(usize, Polynomial), b: &(usize, Polynomial)) -> Ordering {
    let ring = a.1.ring();
    a.1.total_degree()
        .cmp(&b.1.total_degree())
        .then_with(|| match (a.1.leading_monomial(), b.1.leading_monomial()) {
            (Some(x), Some(y)) => ring.cmp_monomials(x, y),
            _ => Ordering::Equal,
        })
        .then(a.0.cmp(&b.0))
}

/// Smallest entry outside `P`; returns `(generator index, row, entry)`.
fn pick_entry(gens: &[FreeVector], p: &Ideal) -> Option<(usize, usize, Polynomial)> {
    gens.first()?;
    let ncols = gens.len();
    let mut cands = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        for (i, c) in g.components().into_iter().enumerate() {
            if !c.is_zero() && !p.contains_poly(&c) {
                cands.push((i * ncols + k, c));
            }
        }
    }
    let best = cands.into_iter().min_by(entry_order)?;
    Some((best.0 % ncols, best.0 / ncols, best.1))
}

/// Moves the entry `a` of the generator `w` of `W` to a unit in the last
/// coordinate: returns `U1 = a^ν X^{[p]} U X^{-1}` and `W1 = X W_a ∩ R^α`.
pub fn unit_entry_reduction(
    w: &Submodule,
    a: &Polynomial,
    u: &PolyMatrix,
) -> Result<(PolyMatrix, Submodule)> {
    if a.is_zero() {
        return Err(Error::Precondition("pivot entry is zero".into()));
    }
    let ring = w.ring().clone();
    let alpha = w.rank();
    let (gen, row) = w
        .gens()
        .iter()
        .find_map(|g| {
            let comps = g.components();
            let i = comps.iter().position(|c| c == a)?;
            Some((g.clone(), i))
        })
        .ok_or_else(|| Error::Precondition(format!("no generator has the entry {a}")))?;
    let p = ring.characteristic();
    let last = alpha - 1;
    let mut perm = PolyMatrix::identity(&ring, alpha);
    if row != last {
        perm.set(row, row, Polynomial::zero(&ring));
        perm.set(last, last, Polynomial::zero(&ring));
        perm.set(row, last, Polynomial::one(&ring));
        perm.set(last, row, Polynomial::one(&ring));
    }
    let wp = perm.mul_vec(&gen)?.components();
    // X = Xn·perm / a, X^{-1} = perm^T · Xinv.
    let mut xn = PolyMatrix::identity(&ring, alpha).scale(a);
    let mut xinv = PolyMatrix::identity(&ring, alpha);
    for i in 0..last {
        xn.set(i, last, -&wp[i]);
        xinv.set(i, last, wp[i].clone());
    }
    xn.set(last, last, Polynomial::one(&ring));
    xinv.set(last, last, a.clone());
    let num = xn
        .frobenius(1)?
        .mul(&perm)?
        .mul(u)?
        .mul(&perm.transpose())?
        .mul(&xinv)?;
    let loc = LocalizedMatrix::new(num, a.clone(), p as u32)?;
    let (u1, _nu) = loc.cleared();
    let moved = xn.mul(&perm)?.apply(w)?;
    let w1 = moved.saturate(a)?;
    if !w1.contains(&FreeVector::unit(&ring, alpha, last)) {
        return Err(Error::Contract(
            "reduction lost the last unit vector".into(),
        ));
    }
    if !u1.apply(&w1)?.is_subset_of(&w1.frobenius(1)?) {
        return Err(Error::Contract(
            "reduced matrix does not preserve W1".into(),
        ));
    }
    Ok((u1, w1))
}

/// `g ∈ (P^{[p]} : P) \ P^{[p]}` generating the colon modulo `P^{[p]}` after
/// inverting `a1 ∉ P`.
pub fn rank_one_generator(p: &Ideal) -> Result<(Polynomial, Polynomial)> {
    let ring = p.ring().clone();
    let pq = p.frobenius(1)?;
    let colon = fedder_colon(p, 1)?;
    let hs = colon.polys();
    for g in &hs {
        if pq.contains_poly(g) {
            continue;
        }
        let base = pq.add_poly(g)?;
        let mut a1 = Polynomial::one(&ring);
        let mut ok = true;
        for h in &hs {
            if base.contains_poly(h) {
                continue;
            }
            let j = base.quotient_by(h)?;
            match j.polys().into_iter().find(|c| !p.contains_poly(c)) {
                Some(c) => a1 = &a1 * &c,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok((g.clone(), a1));
        }
    }
    Err(Error::Contract("rank-one generator not found".into()))
}

/// `(μ, V)` with `a1^μ U ≡ g V` modulo `P^{[p]}`.
pub fn congruent_decomposition(
    u: &PolyMatrix,
    p: &Ideal,
    g: &Polynomial,
    a1: &Polynomial,
) -> Result<(u32, PolyMatrix)> {
    let ring = p.ring().clone();
    let pq = p.frobenius(1)?;
    let mut lift_gens = vec![FreeVector::from_poly(g)];
    lift_gens.extend(pq.gens().iter().cloned());
    let target = pq.add_poly(g)?;
    let mut parts = Vec::with_capacity(u.entries().len());
    for x in u.entries() {
        let mut w = 0;
        let mut cur = x.clone();
        while !target.contains_poly(&cur) {
            w += 1;
            if w > MU_CAP {
                return Err(Error::Contract(format!(
                    "no power of {a1} moves {x} into (g) + P^[p]"
                )));
            }
            cur = &cur * a1;
        }
        let cof = Submodule::lift(&FreeVector::from_poly(&cur), &lift_gens)
            .ok_or_else(|| Error::Contract("membership lift failed".into()))?;
        parts.push((w, cof[0].clone()));
    }
    let mu = parts.iter().map(|t| t.0).max().unwrap_or(0);
    let entries = parts
        .into_iter()
        .map(|(w, r)| &r * &a1.pow((mu - w) as u64))
        .collect();
    let v = PolyMatrix::new(&ring, u.rows(), u.cols(), entries)?;
    let check = u.scale(&a1.pow(mu as u64)).sub(&v.scale(g))?;
    if !check.entries().iter().all(|c| pq.contains_poly(c)) {
        return Err(Error::Contract("congruence a1^μ U ≡ g V fails".into()));
    }
    Ok((mu, v))
}

/// `y` with `V y ∈ P R^α` and `y ∉ P R^α`.
pub fn kernel_vector_mod_p(v: &PolyMatrix, p: &Ideal) -> Result<FreeVector> {
    let pr = Submodule::extend(p, v.rows());
    let k = pr.preimage(&v.columns())?;
    let pc = Submodule::extend(p, v.cols());
    k.gens()
        .iter()
        .find(|y| !pc.contains(y))
        .cloned()
        .ok_or_else(|| Error::Contract("every kernel vector lies in P R^α".into()))
}

/// Completes `y` to `X^{-1}` with `y` as last column and unit vectors
/// elsewhere; returns `(X^{-1}, det)` with the determinant outside `P`.
fn complete_kernel_vector(y: &FreeVector, p: &Ideal) -> Result<(PolyMatrix, Polynomial)> {
    let ring = y.ring().clone();
    let alpha = y.rank();
    let comps = y.components();
    let cands: Vec<(usize, Polynomial)> = comps
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero() && !p.contains_poly(c))
        .map(|(i, c)| (i, c.clone()))
        .collect();
    let (skip, _) = cands
        .into_iter()
        .min_by(entry_order)
        .ok_or_else(|| Error::Contract("kernel vector vanishes modulo P".into()))?;
    let mut cols: Vec<FreeVector> = (0..alpha)
        .filter(|&j| j != skip)
        .map(|j| FreeVector::unit(&ring, alpha, j))
        .collect();
    cols.push(y.clone());
    let xinv = PolyMatrix::from_columns(&ring, alpha, &cols)?;
    let det = xinv.det()?;
    if p.contains_poly(&det) {
        return Err(Error::Contract("completion is singular modulo P".into()));
    }
    Ok((xinv, det))
}

struct Kz<'a> {
    session: &'a Session,
    memo: RefCell<HashMap<String, Vec<Ideal>>>,
}

impl<'a> Kz<'a> {
    fn new(session: &'a Session) -> Self {
        Kz {
            session,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn ann_primes(&self, p: &Ideal, a: &Polynomial, u: &PolyMatrix) -> Result<Vec<Ideal>> {
        let pa = p.add_poly(a)?;
        if pa.is_full() {
            return Ok(Vec::new());
        }
        let w = star_closure(self.session, &Submodule::extend(&pa, u.rows()), u, 1)?;
        let ann = w.annihilator();
        self.session
            .trace(|| format!("kz ann of ((P + {a})R^α)^★ = {ann}"));
        primes_over(self.session, &ann)
    }

    /// Primes special for `U` (unfiltered for a zero kernel in recursion).
    fn run(&self, u: &PolyMatrix) -> Result<Vec<Ideal>> {
        let key = u.to_string();
        if let Some(v) = self.memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let out = self.run_uncached(u)?;
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn run_uncached(&self, u: &PolyMatrix) -> Result<Vec<Ideal>> {
        let ring = u.ring().clone();
        if u.rows() == 1 {
            let x = u.get(0, 0);
            if x.is_zero() {
                return Ok(Vec::new());
            }
            let prob = KSProblem::new(x.clone(), 1)?;
            return Ok(ks_run(self.session, &prob)?.ideals());
        }
        let kernel = stable_kernel(self.session, u)?.module;
        if kernel.is_zero() {
            return Ok(Vec::new());
        }
        let alpha = u.rows();
        let depth_cap = ring.nvars();
        let mut found: Vec<(Ideal, usize)> = vec![(Submodule::zero(&ring, 1), 0)];
        let mut done: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut expansions = 0;
        loop {
            found.sort_by_cached_key(|(i, _)| (i.gens().len(), i.key()));
            let Some((p, depth)) = found
                .iter()
                .find(|(p, _)| !done.contains(&p.key()))
                .cloned()
            else {
                break;
            };
            done.insert(p.key());
            if kernel.is_subset_of(&Submodule::extend(&p, alpha)) {
                continue;
            }
            expansions += 1;
            self.session.check_expansions(expansions)?;
            if depth > depth_cap {
                return Err(Error::Contract(format!(
                    "prime chain longer than the dimension at {p}"
                )));
            }
            for q in self.step(&p, u)? {
                if !found.iter().any(|(f, _)| *f == q) {
                    self.session.trace(|| format!("kz {p} -> {q}"));
                    found.push((q, depth + 1));
                }
            }
        }
        let mut out: Vec<Ideal> = found
            .into_iter()
            .map(|(p, _)| p)
            .filter(|p| !kernel.is_subset_of(&Submodule::extend(p, alpha)))
            .collect();
        sort_ideals(&mut out);
        Ok(out)
    }

    fn step(&self, p: &Ideal, u: &PolyMatrix) -> Result<Vec<Ideal>> {
        let alpha = u.rows();
        if alpha == 1 {
            let prob = KSProblem::new(u.get(0, 0).clone(), 1)?;
            return ks_step(self.session, p, &prob);
        }
        let pr = Submodule::extend(p, alpha);
        let w = star_closure(self.session, &pr, u, 1)?;
        let mut cands = Vec::new();
        if let Some((_, _, a)) = pick_entry(w.gens(), p) {
            self.session.trace(|| format!("kz {p}: case 1, a = {a}"));
            cands.extend(self.ann_primes(p, &a, u)?);
            let (u1, _) = unit_entry_reduction(&w, &a, u)?;
            cands.extend(self.run(&u1.leading_block(alpha - 1))?);
        } else {
            let (g, a1) = rank_one_generator(p)?;
            let (mu, v) = congruent_decomposition(u, p, &g, &a1)?;
            let d = v.det()?;
            self.session
                .trace(|| format!("kz {p}: case 2, g = {g}, a1 = {a1}, mu = {mu}, d = {d}"));
            if !a1.is_constant() {
                cands.extend(self.ann_primes(p, &a1, u)?);
            }
            if p.contains_poly(&d) {
                let y = kernel_vector_mod_p(&v, p)?;
                let (xinv, a2) = complete_kernel_vector(&y, p)?;
                self.session
                    .trace(|| format!("kz {p}: case 2a, y = {y}, a2 = {a2}"));
                if !a2.is_constant() {
                    cands.extend(self.ann_primes(p, &a2, u)?);
                }
                let pexp = p.ring().characteristic() as u32;
                let num = xinv.adjugate()?.frobenius(1)?.mul(u)?.mul(&xinv)?;
                let (mut u1, _) = LocalizedMatrix::new(num, a2, pexp)?.cleared();
                let pq = p.frobenius(1)?;
                for i in 0..alpha {
                    if !pq.contains_poly(u1.get(i, alpha - 1)) {
                        return Err(Error::Contract("last column of U1 is not in P^[p]".into()));
                    }
                    u1.set(i, alpha - 1, Polynomial::zero(p.ring()));
                }
                cands.extend(self.last_column_zero_branch(p, &u1)?);
            } else {
                self.session.trace(|| format!("kz {p}: case 2b"));
                cands.extend(self.ann_primes(p, &d, u)?);
                let prob = KSProblem::new(g.clone(), 1)?;
                cands.extend(ks_closure(self.session, &prob)?);
            }
        }
        self.filter(p, u, cands)
    }

    fn last_column_zero_branch(&self, p: &Ideal, u1: &PolyMatrix) -> Result<Vec<Ideal>> {
        let alpha = u1.rows();
        let ring = p.ring().clone();
        let u0 = u1.leading_block(alpha - 1);
        let sk = stable_kernel(self.session, &u0)?;
        let p0 = Submodule::extend(p, alpha - 1);
        let mut cands = Vec::new();
        if sk.module.is_subset_of(&p0) {
            let e = sk
                .chain
                .iter()
                .position(|k| k.is_subset_of(&p0))
                .map(|i| i as u32 + 1)
                .unwrap_or(sk.index);
            let last = frobenius_product(u1, e)?.row(alpha - 1);
            let pq = p.frobenius(e)?;
            self.session
                .trace(|| format!("kz {p}: last-column branch (i), e = {e}"));
            for gi in &last[..alpha - 1] {
                if gi.is_zero() || pq.contains_poly(gi) {
                    continue;
                }
                let prob = KSProblem::new(gi.clone(), e)?;
                cands.extend(ks_closure(self.session, &prob)?);
            }
        } else {
            let above: Vec<Ideal> = self
                .run(&u0)?
                .into_iter()
                .filter(|q| q != p && p.is_subset_of(q))
                .collect();
            let mut tau = Submodule::full(&ring, 1);
            for q in minimalize(above) {
                tau = tau.intersect(&q)?;
            }
            let tk = sk.module.mul_ideal(&tau);
            let lifted: Vec<FreeVector> = tk.gens().iter().map(|v| v.embed(alpha, 0)).collect();
            let l = Submodule::new(&ring, alpha, lifted)?;
            let m = star_closure(self.session, &ie_operation(&u1.apply(&l)?, 1)?, u1, 1)?;
            let (_, _, a) = pick_entry(m.gens(), p)
                .ok_or_else(|| Error::Contract("all entries of M' lie in P".into()))?;
            self.session
                .trace(|| format!("kz {p}: last-column branch (ii), tau = {tau}, a' = {a}"));
            cands.extend(self.ann_primes(p, &a, u1)?);
            let (u2, _) = unit_entry_reduction(&m, &a, u1)?;
            cands.extend(self.run(&u2.leading_block(alpha - 1))?);
        }
        Ok(cands)
    }

    fn filter(&self, p: &Ideal, u: &PolyMatrix, mut cands: Vec<Ideal>) -> Result<Vec<Ideal>> {
        sort_ideals(&mut cands);
        cands.dedup();
        let mut out = Vec::new();
        for q in cands {
            if q == *p || !p.is_subset_of(&q) {
                continue;
            }
            if is_u_special(self.session, &q, u)? {
                out.push(q);
            }
        }
        Ok(out)
    }
}

/// Special primes strictly above `P` found by one expansion.
pub fn kz_step(session: &Session, p: &Ideal, prob: &KZProblem) -> Result<Vec<Ideal>> {
    Kz::new(session).step(p, &prob.u)
}

/// All `U`-special primes `P` with `𝒦 ⊄ P R^α`, canonically sorted.
pub fn kz_run(session: &Session, prob: &KZProblem) -> Result<Vec<PrimeRecord>> {
    Ok(Kz::new(session)
        .run(&prob.u)?
        .into_iter()
        .map(|p| PrimeRecord::new(p, "kz"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring, RingRef};
    use crate::text::parse_polynomial;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::new(2, vars, MonomialOrder::GrevLex).unwrap()
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

    fn run(u: PolyMatrix) -> Vec<String> {
        let s = Session::default();
        let prob = KZProblem::new(&s, u).unwrap();
        kz_run(&s, &prob)
            .unwrap()
            .iter()
            .map(|p| p.ideal.to_string())
            .collect()
    }

    #[test]
    fn special_examples() {
        let s = Session::default();
        let r = ring(&["x", "y"]);
        let u = mat(&r, &[&["x"]]);
        assert!(is_u_special(&s, &id(&r, &["x"]), &u).unwrap());
        assert!(!is_u_special(&s, &id(&r, &["y"]), &u).unwrap());
        assert!(is_u_special(&s, &Submodule::zero(&r, 1), &u).unwrap());
    }

    #[test]
    fn rank_one_examples() {
        let r1 = ring(&["x"]);
        let (g, a1) = rank_one_generator(&id(&r1, &["x"])).unwrap();
        assert_eq!((g.to_string(), a1.to_string()), ("x".into(), "1".into()));
        let r = ring(&["x", "y"]);
        let (g, a1) = rank_one_generator(&id(&r, &["x", "y"])).unwrap();
        assert_eq!((g.to_string(), a1.to_string()), ("x*y".into(), "1".into()));
        let (g, a1) = rank_one_generator(&Submodule::zero(&r, 1)).unwrap();
        assert!(g.is_one() && a1.is_one());
    }

    #[test]
    fn congruence_examples() {
        let r = ring(&["x"]);
        let p = id(&r, &["x"]);
        let x = poly(&r, "x");
        let one = Polynomial::one(&r);
        let (mu, v) = congruent_decomposition(&mat(&r, &[&["x"]]), &p, &x, &one).unwrap();
        assert_eq!((mu, v.to_string()), (0, "[[1]]".into()));
        let (_, v) = congruent_decomposition(&mat(&r, &[&["x^2"]]), &p, &x, &one).unwrap();
        assert!(p
            .frobenius(1)
            .unwrap()
            .contains_poly(&(&(v.get(0, 0) * &x) - &poly(&r, "x^2"))));
        let (_, v) = congruent_decomposition(&mat(&r, &[&["0"]]), &p, &x, &one).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn kernel_vectors() {
        let r = ring(&["x", "y"]);
        let p = id(&r, &["x"]);
        let y = kernel_vector_mod_p(&mat(&r, &[&["x", "0"], &["0", "1"]]), &p).unwrap();
        assert_eq!(y.to_string(), "[1, 0]");
        let y = kernel_vector_mod_p(&mat(&r, &[&["1", "1"], &["1", "1"]]), &p).unwrap();
        assert_eq!(y.to_string(), "[1, 1]");
        let y = kernel_vector_mod_p(&mat(&r, &[&["0"]]), &p).unwrap();
        assert_eq!(y.to_string(), "[1]");
    }

    #[test]
    fn unit_entry_examples() {
        let r = ring(&["x", "y"]);
        let a = poly(&r, "x+1");
        let u = mat(&r, &[&["x", "y"], &["0", "y"]]);
        for gen in [vec!["0", "x+1"], vec!["x+1", "0"], vec!["y", "x+1"]] {
            let v =
                FreeVector::from_polys(&r, &gen.iter().map(|s| poly(&r, s)).collect::<Vec<_>>())
                    .unwrap();
            let w = Submodule::new(&r, 2, vec![v]).unwrap();
            let w = w.sum(&u.apply(&w).unwrap()).unwrap();
            let stable = star_closure(&Session::default(), &w, &u, 1).unwrap();
            let Some(gen) = stable.gens().iter().find(|g| g.components().contains(&a)) else {
                continue;
            };
            let one = Submodule::new(&r, 2, vec![gen.clone()]).unwrap();
            let (_, w1) = unit_entry_reduction(&one, &a, &u)
                .unwrap_or_else(|_| unit_entry_reduction(&stable, &a, &u).unwrap());
            assert!(w1.contains(&FreeVector::unit(&r, 2, 1)));
        }
    }

    #[test]
    fn localized_normalization() {
        let r = ring(&["x"]);
        let m = mat(&r, &[&["x^2", "x^3"]]);
        let l = LocalizedMatrix::new(m, poly(&r, "x"), 3).unwrap();
        assert_eq!(l.denom_exp, 1);
        assert_eq!(l.numerator.to_string(), "[[1,x]]");
    }

    #[test]
    fn golden_runs() {
        let r1 = ring(&["x"]);
        assert_eq!(run(mat(&r1, &[&["x"]])), vec!["(0)", "(x)"]);
        let r = ring(&["x", "y"]);
        assert_eq!(
            run(mat(&r, &[&["x*y"]])),
            vec!["(0)", "(x)", "(y)", "(x, y)"]
        );
        assert_eq!(
            run(mat(&r, &[&["x", "0"], &["0", "y"]])),
            vec!["(0)", "(x)", "(y)"]
        );
    }

    #[test]
    fn kernel_filter() {
        let r1 = ring(&["x"]);
        assert_eq!(run(mat(&r1, &[&["x^2"]])), vec!["(0)"]);
    }

    #[test]
    fn zero_kernel_rejected() {
        let r = ring(&["x"]);
        let s = Session::default();
        assert!(KZProblem::new(&s, mat(&r, &[&["0", "1"], &["0", "0"]])).is_err());
    }
}
