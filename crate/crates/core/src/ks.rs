//! Compatible primes of `φ = π_e(F^e_* u ·)`.
//!
//! A prime `P` is compatible exactly when `u P ⊆ P^{[p^e]}`. Starting from
//! `(0)`, each compatible prime `P` is expanded to the minimal primes of two
//! star-closed ideals: the closure of the singular-locus ideal of `R/P`, and
//! the closure of `B = ((u) + P^{[q]}) : (P^{[q]} : P)`. Every compatible
//! prime strictly above `P` contains one of them. Primes containing
//! `I_e(uR)` are kept as stepping stones and dropped at output time.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::frobenius::{ie_poly, star_closure_poly};
use crate::poly::Polynomial;
use crate::primes::{primes_over, singular_locus_ideal, sort_ideals, PrimeRecord};
use crate::session::Session;
use crate::submodule::{Ideal, Submodule};

#[derive(Clone, Debug)]
pub struct KSProblem {
    pub u: Polynomial,
    pub e: u32,
    /// When set, every ideal is replaced by its saturation at this element
    /// and primes containing it are discarded.
    pub localize_at: Option<Polynomial>,
}

impl KSProblem {
    pub fn new(u: Polynomial, e: u32) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::Precondition(
                "u = 0 makes every prime compatible".into(),
            ));
        }
        if e == 0 {
            return Err(Error::Precondition("e must be positive".into()));
        }
        Ok(KSProblem {
            u,
            e,
            localize_at: None,
        })
    }

    pub fn localized(mut self, a: Polynomial) -> Self {
        self.localize_at = Some(a);
        self
    }
}

#[derive(Clone, Debug)]
pub struct KSResult {
    pub primes: Vec<PrimeRecord>,
    pub excluded_locus: Ideal,
}

impl KSResult {
    pub fn ideals(&self) -> Vec<Ideal> {
        self.primes.iter().map(|p| p.ideal.clone()).collect()
    }
}

/// `u P ⊆ P^{[p^e]}`.
pub fn is_compatible(p: &Ideal, u: &Polynomial, e: u32) -> Result<bool> {
    if u.is_zero() {
        return Ok(true);
    }
    let pq = p.frobenius(e)?;
    Ok(p.polys().iter().all(|g| pq.contains_poly(&(u * g))))
}

fn localize(prob: &KSProblem, i: &Ideal) -> Result<Ideal> {
    match &prob.localize_at {
        Some(a) => i.saturate(a),
        None => Ok(i.clone()),
    }
}

fn primes_of_closure(session: &Session, prob: &KSProblem, i: &Ideal) -> Result<Vec<Ideal>> {
    let i = localize(prob, i)?;
    if i.is_full() {
        return Ok(Vec::new());
    }
    let closed = localize(prob, &star_closure_poly(session, &i, &prob.u, prob.e)?)?;
    if closed.is_full() {
        return Ok(Vec::new());
    }
    let mut ps = primes_over(session, &closed)?;
    if let Some(a) = &prob.localize_at {
        ps.retain(|p| !p.contains_poly(a));
    }
    Ok(ps)
}

/// Compatible primes minimally containing one of the two closures above `P`,
/// restricted to those strictly containing `P`.
pub fn ks_step(session: &Session, p: &Ideal, prob: &KSProblem) -> Result<Vec<Ideal>> {
    let ring = p.ring();
    let mut found = Vec::new();
    let j = singular_locus_ideal(session, p)?;
    if !j.is_full() {
        session.trace(|| format!("ks {p}: singular locus {j}"));
        found.extend(primes_of_closure(session, prob, &j)?);
    }
    let pq = p.frobenius(prob.e)?;
    let colon = pq.quotient(p)?;
    let b = Submodule::ideal(ring, std::slice::from_ref(&prob.u))?
        .sum(&pq)?
        .quotient(&colon)?;
    session.trace(|| format!("ks {p}: B = {b}"));
    found.extend(primes_of_closure(session, prob, &b)?);
    found.retain(|q| q != p && p.is_subset_of(q));
    sort_ideals(&mut found);
    found.dedup();
    Ok(found)
}

/// All primes reachable from `(0)`, including those containing `I_e(uR)`.
pub(crate) fn ks_closure(session: &Session, prob: &KSProblem) -> Result<Vec<Ideal>> {
    let ring = prob.u.ring();
    let zero = Submodule::zero(ring, 1);
    let mut found: Vec<Ideal> = vec![zero];
    let mut done: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut expansions = 0;
    loop {
        sort_ideals(&mut found);
        let Some(p) = found.iter().find(|p| !done.contains(&p.key())).cloned() else {
            break;
        };
        expansions += 1;
        session.check_expansions(expansions)?;
        done.insert(p.key());
        for q in ks_step(session, &p, prob)? {
            if !found.contains(&q) {
                session.trace(|| format!("ks {p} -> {q}"));
                found.push(q);
            }
        }
    }
    Ok(found)
}

/// Compatible primes not containing `I_e(uR)`, canonically sorted.
pub fn ks_run(session: &Session, prob: &KSProblem) -> Result<KSResult> {
    let excluded = ie_poly(&prob.u, prob.e)?;
    let mut primes = ks_closure(session, prob)?;
    primes.retain(|p| !excluded.is_subset_of(p));
    if let Some(a) = &prob.localize_at {
        primes.retain(|p| !p.contains_poly(a));
    }
    Ok(KSResult {
        primes: primes
            .into_iter()
            .map(|p| PrimeRecord::new(p, "ks"))
            .collect(),
        excluded_locus: excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Ring, RingRef};
    use crate::text::parse_polynomial;

    fn ring(vars: &[&str]) -> RingRef {
        Ring::new(2, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn id(r: &RingRef, gens: &[&str]) -> Ideal {
        let ps: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse_polynomial(r, s).unwrap())
            .collect();
        Submodule::ideal(r, &ps).unwrap()
    }

    fn run(r: &RingRef, u: &str) -> Vec<String> {
        let s = Session::default();
        let prob = KSProblem::new(parse_polynomial(r, u).unwrap(), 1).unwrap();
        ks_run(&s, &prob)
            .unwrap()
            .primes
            .iter()
            .map(|p| p.ideal.to_string())
            .collect()
    }

    #[test]
    fn compatibility() {
        let r = ring(&["x", "y"]);
        let x = parse_polynomial(&r, "x").unwrap();
        assert!(is_compatible(&id(&r, &["x"]), &x, 1).unwrap());
        assert!(!is_compatible(&id(&r, &["y"]), &x, 1).unwrap());
        assert!(is_compatible(&id(&r, &["y"]), &Polynomial::zero(&r), 1).unwrap());
    }

    #[test]
    fn steps() {
        let r = ring(&["x", "y"]);
        let s = Session::default();
        let prob = KSProblem::new(parse_polynomial(&r, "x*y").unwrap(), 1).unwrap();
        let show = |v: Vec<Ideal>| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(
            show(ks_step(&s, &Submodule::zero(&r, 1), &prob).unwrap()),
            vec!["(x)", "(y)"]
        );
        assert_eq!(
            show(ks_step(&s, &id(&r, &["x"]), &prob).unwrap()),
            vec!["(x, y)"]
        );
        assert!(ks_step(&s, &id(&r, &["x", "y"]), &prob).unwrap().is_empty());
    }

    #[test]
    fn golden_runs() {
        assert_eq!(
            run(&ring(&["x", "y"]), "x*y"),
            vec!["(0)", "(x)", "(y)", "(x, y)"]
        );
        assert_eq!(run(&ring(&["x"]), "x^2"), vec!["(0)"]);
        assert_eq!(run(&ring(&["x"]), "1"), vec!["(0)"]);
    }

    #[test]
    fn zero_u_rejected() {
        let r = ring(&["x"]);
        assert!(KSProblem::new(Polynomial::zero(&r), 1).is_err());
    }
}
