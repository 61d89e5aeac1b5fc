//! Exact verification of Menon-type identities for Dirichlet characters
//! and even functions.
//!
//! Left-hand sides are evaluated by direct enumeration, right-hand sides by
//! closed form, and the two are compared exactly in the cyclotomic ring
//! `ℤ[ζ_L]`.
//!
//! ```
//! use menon::{characters, verify, IdentityId, Params};
//!
//! // Σ_{k=1..n} (k−1, n) χ(k) = φ(n) τ(n/d) for every character mod 12
//! for i in 0..characters(12).unwrap().len() {
//!     let report = verify(IdentityId::ZhaoCao, &Params::new(12).chi(i)).unwrap();
//!     assert!(report.equal);
//! }
//! ```
//!
//! The guide in `book/` covers each module in turn.

pub mod arith;
pub mod bench;
pub mod chargroup;
pub mod cyclotomic;
pub mod error;
pub mod evenfn;
pub mod identities;
pub mod sweep;

pub use chargroup::{characters, DirichletCharacter, UnitGroup};
pub use cyclotomic::CyclotomicInteger;
pub use error::{Error, Result};
pub use evenfn::{EvenFnSpec, EvenFunction};
pub use identities::{
    verify, verify_with, ArithFn, IdentityId, IdentityReport, ModulusContext, Params,
};
pub use sweep::{run_sweep, ShiftPolicy, SweepConfig};

macro_rules! book_chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        )*
    };
}

book_chapters! {
    book_introduction => "introduction.md",
    book_arithmetic => "arithmetic.md",
    book_cyclotomic => "cyclotomic.md",
    book_characters => "characters.md",
    book_even_functions => "even_functions.md",
    book_identities => "identities.md",
    book_sweeps => "sweeps.md",
    book_cli => "cli.md",
}
