//! Frobenius-special and compatible prime ideals of polynomial rings over F_p.
//!
//! The crate is layered bottom-up: field and polynomial arithmetic, Gröbner
//! bases for ideals and submodules of free modules, prime decomposition, the
//! Frobenius operations (`I_e`, star-closure, stable kernel), and finally the
//! prime-enumeration algorithms for compatible primes of a single map
//! ([`ks`]) and for `U`-special primes of a matrix ([`kz`]), with the corank
//! application in [`fmodules`].

pub mod error;
pub mod factor;
pub mod field;
pub mod fmodules;
pub mod frobenius;
pub(crate) mod groebner;
pub mod ks;
pub mod kz;
pub(crate) mod linalg;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod ring;
pub mod session;
pub mod submodule;
pub mod text;
pub mod upoly;
pub mod vector;

pub use error::{Error, Result};
pub use field::{field_inverse, FieldElement, PrimeField};
pub use fmodules::{corank_positive_primes, root_closure, validate_root, RootData};
pub use frobenius::{
    fedder_colon, frobenius_power_module, ie_expand, ie_operation, stable_kernel, star_closure,
    FrobeniusBasisExpansion, StableKernel,
};
pub use ks::{is_compatible, ks_run, ks_step, KSProblem, KSResult};
pub use kz::{
    congruent_decomposition, is_u_special, kernel_vector_mod_p, kz_run, kz_step,
    rank_one_generator, unit_entry_reduction, KZProblem, LocalizedMatrix,
};
pub use matrix::PolyMatrix;
pub use poly::{frobenius_pow, poly_mul, Polynomial};
pub use primes::{is_prime, minimal_primes, singular_locus_ideal, PrimeRecord};
pub use ring::{Monomial, MonomialOrder, Ring, RingRef};
pub use session::{Limits, Session};
pub use submodule::{buchberger, normal_form, submodule_equal, Ideal, Submodule};
pub use text::parse_polynomial;
pub use vector::FreeVector;
