//! Ruling polynomials and augmentation numbers of bordered Legendrian graphs.
//!
//! A diagram is a left-to-right sequence of slice events ([`front`]), read
//! from the `.lgr` language ([`dsl`]). Normal rulings and their polynomial
//! live in [`rulings`], the border and vertex DGAs in [`dga`], and point
//! counts over finite fields in [`augcount`].

pub mod algebra;
pub mod augcount;
pub mod dga;
pub mod dsl;
pub mod front;
pub mod fuzz;
pub mod rulings;

pub use algebra::ExactRational;

/// Ruling polynomials with integer coefficients.
pub type QZPolynomial = algebra::QZPoly<i64>;

/// Source of the six-valent example: three nested eyes meeting at one vertex.
pub const SIX_VALENT_SOURCE: &str = include_str!("../data/six_valent.lgr");

/// The parsed six-valent example.
pub fn six_valent() -> front::FrontDiagram {
    dsl::parse(SIX_VALENT_SOURCE).expect("bundled example parses")
}

/// Sizes the global thread pool from `LEGR_THREADS`, if set. Returns the
/// requested count when it was applied.
pub fn configure_threads() -> Option<usize> {
    let n: usize = std::env::var("LEGR_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok().map(|_| n)
}
