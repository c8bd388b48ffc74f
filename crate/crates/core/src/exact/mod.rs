//! Exact arithmetic substrate: rationals, weighted polynomials, linear algebra
//! over `Q`, and graded series.

mod linalg;
mod parse;
mod poly;
mod ring;
mod series;

pub use linalg::{integer_rank, primitive_integer_vector, span_dim, EchelonBasis, QMatrix};
pub use parse::{parse_polynomial, parse_rational};
pub use poly::{jacobian_det, WeightedPolynomial};
pub use ring::{graded_monomials, slice_dim, Exponents, WeightedRing};
pub use series::{
    series_product, BigradedHilbert, GradedHilbert, Hilbert, SeriesFactor, TrigradedHilbert,
    TruncatedSeries,
};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `p/q` form used in JSON output; the denominator is always written.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
