use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::ring::{Exponents, WeightedRing};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse polynomial over the rationals in a [`WeightedRing`].
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolynomial {
    ring: WeightedRing,
    terms: BTreeMap<Exponents, Rational>,
}

impl WeightedPolynomial {
    pub fn zero(ring: &WeightedRing) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &WeightedRing, c: Rational) -> Self {
        Self::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn one(ring: &WeightedRing) -> Self {
        Self::constant(ring, Rational::one())
    }

    /// `c * x^exps`. Panics if the exponent vector has the wrong length.
    pub fn monomial(ring: &WeightedRing, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(ring: &WeightedRing, i: usize) -> Self {
        Self::monomial(ring, ring.variable(i), Rational::one())
    }

    pub fn from_terms<I>(ring: &WeightedRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &WeightedRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiply by the monomial `x^exps`.
    pub fn shift(&self, exps: &[u32]) -> Self {
        Self {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the zero-based variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Weighted degree if every term has the same weight; `None` for zero or
    /// mixed-weight polynomials.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| self.ring.degree_of(e));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.ring.degree_of(e)).max()
    }

    /// Coefficient vector against an ordered monomial basis.
    ///
    /// Returns `None` if a term falls outside the basis.
    pub fn coords(&self, index: &std::collections::HashMap<Exponents, usize>, len: usize) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); len];
        for (e, c) in &self.terms {
            let &i = index.get(e)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Same coefficients viewed in another ring with the same number of variables.
    pub fn with_ring(&self, ring: &WeightedRing) -> Result<Self> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, ring)));
        }
        Ok(Self {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Terms in canonical display order: weighted degree descending, then lex descending.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| {
            self.ring
                .degree_of(b)
                .cmp(&self.ring.degree_of(a))
                .then_with(|| b.cmp(a))
        });
        t
    }
}

/// Determinant of the Jacobian matrix `(d p_i / d x_j)`.
pub fn jacobian_det(polys: &[WeightedPolynomial]) -> Result<WeightedPolynomial> {
    let first = polys.first().ok_or(Error::Arity {
        expected: 1,
        got: 0,
    })?;
    let ring = first.ring().clone();
    if polys.len() != ring.nvars() {
        return Err(Error::Arity {
            expected: ring.nvars(),
            got: polys.len(),
        });
    }
    for p in polys {
        first.check_ring(p)?;
    }
    let n = ring.nvars();
    let matrix: Vec<Vec<WeightedPolynomial>> = polys
        .iter()
        .map(|p| (0..n).map(|j| p.derivative(j)).collect())
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(&ring, &matrix, 0, &cols))
}

/// Cofactor expansion along row `row` over the remaining columns `cols`.
fn laplace(
    ring: &WeightedRing,
    m: &[Vec<WeightedPolynomial>],
    row: usize,
    cols: &[usize],
) -> WeightedPolynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = WeightedPolynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(ring, m, row + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl Add for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn add(self, rhs: Self) -> WeightedPolynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn sub(self, rhs: Self) -> WeightedPolynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn mul(self, rhs: Self) -> WeightedPolynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn neg(self) -> WeightedPolynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for WeightedPolynomial {
    /// Writes an expression accepted by [`super::parse_polynomial`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            let unit = abs.is_one();
            if !unit || is_const {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if x == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ring3() -> WeightedRing {
        WeightedRing::standard(3).unwrap()
    }

    #[test]
    fn identity_jacobian() {
        let r = ring3();
        let xs: Vec<_> = (0..3).map(|i| WeightedPolynomial::var(&r, i)).collect();
        assert_eq!(jacobian_det(&xs).unwrap(), WeightedPolynomial::one(&r));
    }

    #[test]
    fn diagonal_jacobian() {
        let r = ring3();
        let x1 = WeightedPolynomial::var(&r, 0);
        let polys = vec![x1.pow(2), WeightedPolynomial::var(&r, 1), WeightedPolynomial::var(&r, 2)];
        assert_eq!(jacobian_det(&polys).unwrap(), x1.scale(&q(2)));
    }

    #[test]
    fn repeated_row_vanishes() {
        let r = ring3();
        let x: Vec<_> = (0..3).map(|i| WeightedPolynomial::var(&r, i)).collect();
        let f = &(&x[0].pow(3) + &x[1].pow(2)) + &(&x[0] * &x[2]);
        let h = &x[1] * &x[2].pow(2);
        assert!(jacobian_det(&[f.clone(), f, h]).unwrap().is_zero());
    }

    #[test]
    fn jacobian_arity_and_ring_errors() {
        let r = ring3();
        let x = WeightedPolynomial::var(&r, 0);
        assert!(matches!(jacobian_det(&[x.clone(), x.clone()]), Err(Error::Arity { .. })));
        let other = WeightedRing::new(vec![1, 1, 2]).unwrap();
        let y = WeightedPolynomial::var(&other, 0);
        assert!(matches!(jacobian_det(&[x.clone(), x, y]), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn homogeneity() {
        let r = WeightedRing::new(vec![6, 10, 15]).unwrap();
        let x: Vec<_> = (0..3).map(|i| WeightedPolynomial::var(&r, i)).collect();
        let f = &(&x[0].pow(5) + &x[1].pow(3)) + &x[2].pow(2);
        assert_eq!(f.homogeneous_degree(), Some(30));
        let g = &f + &x[0];
        assert_eq!(g.homogeneous_degree(), None);
        assert_eq!(WeightedPolynomial::zero(&r).homogeneous_degree(), None);
    }

    #[test]
    fn display_round_trip_shape() {
        let r = ring3();
        let x: Vec<_> = (0..3).map(|i| WeightedPolynomial::var(&r, i)).collect();
        let f = &(&x[0].pow(2).scale(&q(3)) - &x[1]) + &WeightedPolynomial::constant(&r, Rational::new(1.into(), 2.into()));
        assert_eq!(f.to_string(), "3*x1^2 - x2 + 1/2");
    }
}
