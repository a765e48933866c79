//! Corank-positive primes of an F-finite F-module given by root data.
//!
//! The module is `lim(coker A → coker A^{[p]} → …)` with maps induced by
//! `U`. A prime `P` has positive corank when `(im A + P R^α)^{★U}` stays
//! proper after localizing at `P`, which is decided through the support
//! criterion `ann(R^α / W) ⊆ P` without localizing.

use crate::error::{Error, Result};
use crate::frobenius::star_closure;
use crate::kz::{kz_run, KZProblem};
use crate::matrix::PolyMatrix;
use crate::primes::PrimeRecord;
use crate::session::Session;
use crate::submodule::{Ideal, Submodule};

/// Presentation `coker A` together with `U` satisfying `U im A ⊆ im A^{[p]}`.
/// Injectivity of the induced map is assumed, not checked.
#[derive(Clone, Debug)]
pub struct RootData {
    pub a: PolyMatrix,
    pub u: PolyMatrix,
}

impl RootData {
    pub fn alpha(&self) -> usize {
        self.u.rows()
    }
}

pub fn validate_root(a: PolyMatrix, u: PolyMatrix) -> Result<RootData> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch("U must be square".into()));
    }
    if a.rows() != u.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows but U is {}x{}",
            a.rows(),
            u.rows(),
            u.cols()
        )));
    }
    let target = a.frobenius(1)?.image();
    for col in a.columns() {
        if !target.contains(&u.mul_vec(&col)?) {
            return Err(Error::Precondition(format!(
                "U maps the column {col} of A outside im A^[p]"
            )));
        }
    }
    Ok(RootData { a, u })
}

/// `(im A + P R^α)^{★U}`.
pub fn root_closure(session: &Session, rd: &RootData, p: &Ideal) -> Result<Submodule> {
    let v = rd.a.image().sum(&Submodule::extend(p, rd.alpha()))?;
    star_closure(session, &v, &rd.u, 1)
}

/// Primes of the special-prime enumeration for `U` where the closure of
/// `im A + P R^α` is supported at `P`.
pub fn corank_positive_primes(session: &Session, rd: &RootData) -> Result<Vec<PrimeRecord>> {
    let prob = KZProblem::new(session, rd.u.clone())?;
    let mut out = Vec::new();
    for rec in kz_run(session, &prob)? {
        let w = root_closure(session, rd, &rec.ideal)?;
        let ann = w.annihilator();
        let keep = ann.is_subset_of(&rec.ideal);
        session.trace(|| format!("corank {}: ann = {ann}, keep = {keep}", rec.ideal));
        if keep {
            out.push(PrimeRecord::new(rec.ideal, "corank"));
        }
    }
    Ok(out)
}
