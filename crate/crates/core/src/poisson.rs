//! Jacobian Poisson brackets on surfaces and brute-force zeroth Poisson homology.
//!
//! A surface `X = {f_1 = .. = f_{n-2} = 0}` in `C^n` carries the bracket
//! `{g, h} = det d(f_1, .., f_{n-2}, g, h) / d(x_1, .., x_n)`. For `n = 3` this is
//! `{x_1, x_2} = f_{x_3}` and its cyclic permutations. `HP_0` is computed weight by
//! weight inside the ambient slice `C[x]_w`: one rank computation over the span of
//! the ideal slice and all monomial brackets landing in weight `w`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    graded_monomials, jacobian_det, slice_dim, EchelonBasis, Exponents, GradedHilbert, Rational,
    WeightedPolynomial, WeightedRing,
};

/// Default cap on the estimated memory of one weight slice.
pub const DEFAULT_BUDGET: u64 = 1 << 30;

/// Rough bytes needed to eliminate in a slice of dimension `dim`.
fn slice_cost(dim: usize) -> u64 {
    (dim as u64).saturating_mul(dim as u64).saturating_mul(32)
}

/// Complete-intersection surface with its Jacobian Poisson structure.
#[derive(Clone, Debug)]
pub struct SurfaceVariety {
    ring: WeightedRing,
    defining: Vec<WeightedPolynomial>,
    degrees: Vec<i64>,
    bracket_degree: i64,
    /// `{x_i, x_j}` for `i < j`, indexed `[i][j]`.
    pair_brackets: Vec<Vec<WeightedPolynomial>>,
}

impl SurfaceVariety {
    /// Surface cut out by `n - 2` quasi-homogeneous equations in `n` variables.
    pub fn new(ring: &WeightedRing, defining: Vec<WeightedPolynomial>) -> Result<Self> {
        let n = ring.nvars();
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "a surface needs at least 3 ambient variables, got {n}"
            )));
        }
        if defining.len() != n - 2 {
            return Err(Error::Arity {
                expected: n - 2,
                got: defining.len(),
            });
        }
        let mut degrees = Vec::with_capacity(defining.len());
        for f in &defining {
            if f.ring() != ring {
                return Err(Error::RingMismatch(format!("{} vs {}", f.ring(), ring)));
            }
            let d = f.homogeneous_degree().ok_or_else(|| Error::NotQuasiHomogeneous {
                weights: ring.weights().to_vec(),
            })?;
            degrees.push(d);
        }
        let bracket_degree = degrees.iter().sum::<i64>() - ring.weight_sum();
        let mut pair_brackets = vec![vec![WeightedPolynomial::zero(ring); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let mut rows = defining.clone();
                rows.push(WeightedPolynomial::var(ring, i));
                rows.push(WeightedPolynomial::var(ring, j));
                pair_brackets[i][j] = jacobian_det(&rows)?;
            }
        }
        Ok(Self {
            ring: ring.clone(),
            defining,
            degrees,
            bracket_degree,
            pair_brackets,
        })
    }

    /// Hypersurface `{f = 0}` in `C^3`.
    pub fn hypersurface(f: WeightedPolynomial) -> Result<Self> {
        let ring = f.ring().clone();
        Self::new(&ring, vec![f])
    }

    pub fn ring(&self) -> &WeightedRing {
        &self.ring
    }

    pub fn defining(&self) -> &[WeightedPolynomial] {
        &self.defining
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `sum m_i - sum a_j`; `{g, h}` has weight `|g| + |h| + bracket_degree`.
    pub fn bracket_degree(&self) -> i64 {
        self.bracket_degree
    }

    /// Weight of the top of the graded Jacobi ring, `sum (m - 2 a_i)`, for
    /// hypersurfaces. `None` for higher codimension.
    pub fn jacobi_socle_degree(&self) -> Option<i64> {
        if self.defining.len() != 1 {
            return None;
        }
        let m = self.degrees[0];
        Some(self.ring.weights().iter().map(|&a| m - 2 * a as i64).sum())
    }

    /// `{g, h}` as the full Jacobian determinant, not reduced modulo the ideal.
    pub fn bracket(&self, g: &WeightedPolynomial, h: &WeightedPolynomial) -> Result<WeightedPolynomial> {
        if g.ring() != &self.ring || h.ring() != &self.ring {
            return Err(Error::RingMismatch(format!(
                "bracket arguments must live in {}",
                self.ring
            )));
        }
        let mut rows = self.defining.clone();
        rows.push(g.clone());
        rows.push(h.clone());
        jacobian_det(&rows)
    }

    /// `{x^a, x^b}` by the Leibniz expansion over the precomputed `{x_i, x_j}`.
    pub fn monomial_bracket(&self, a: &[u32], b: &[u32]) -> WeightedPolynomial {
        let n = self.ring.nvars();
        let mut out = WeightedPolynomial::zero(&self.ring);
        for i in 0..n {
            for j in i + 1..n {
                let coeff = a[i] as i64 * b[j] as i64 - a[j] as i64 * b[i] as i64;
                if coeff == 0 || self.pair_brackets[i][j].is_zero() {
                    continue;
                }
                let mut shift: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                shift[i] -= 1;
                shift[j] -= 1;
                let term = self.pair_brackets[i][j]
                    .shift(&shift)
                    .scale(&Rational::from_integer(coeff.into()));
                out = &out + &term;
            }
        }
        out
    }

    /// Whether `p` lies in the ideal `(f_1, .., f_{n-2})`, tested slice by slice.
    pub fn in_ideal(&self, p: &WeightedPolynomial) -> bool {
        let mut by_weight: HashMap<i64, WeightedPolynomial> = HashMap::new();
        for (e, c) in p.terms() {
            by_weight
                .entry(self.ring.degree_of(e))
                .or_insert_with(|| WeightedPolynomial::zero(&self.ring))
                .add_term(e.clone(), c.clone());
        }
        by_weight.into_iter().all(|(w, part)| {
            let (basis, index) = slice_basis(&self.ring, w);
            let mut span = EchelonBasis::new(basis.len());
            self.insert_ideal_slice(&mut span, &index, w);
            let v = part.coords(&index, basis.len()).expect("homogeneous part");
            span.contains_rational(&v)
        })
    }

    fn insert_ideal_slice(&self, span: &mut EchelonBasis, index: &HashMap<Exponents, usize>, w: i64) {
        for (f, &m) in self.defining.iter().zip(&self.degrees) {
            for mono in graded_monomials(&self.ring, w - m) {
                if span.is_full() {
                    return;
                }
                let v = f.shift(&mono).coords(index, span.ambient_dim()).expect("in slice");
                span.insert_rational(&v);
            }
        }
    }

    /// Dimension of `HP_0` in weight `w`.
    pub fn hp0_slice(&self, w: i64, budget: u64) -> Result<u64> {
        let dim = slice_dim(&self.ring, w);
        if dim == 0 {
            return Ok(0);
        }
        let needed = slice_cost(dim);
        if needed > budget {
            return Err(Error::Budget {
                weight: w,
                needed,
                budget,
            });
        }
        let (basis, index) = slice_basis(&self.ring, w);
        let mut span = EchelonBasis::new(basis.len());
        self.insert_ideal_slice(&mut span, &index, w);

        // Brackets of nonconstant monomials g < h with |g| + |h| = w - bracket_degree.
        let target = w - self.bracket_degree;
        let mut wg = 1;
        while 2 * wg <= target && !span.is_full() {
            let left = graded_monomials(&self.ring, wg);
            let right = graded_monomials(&self.ring, target - wg);
            for (gi, g) in left.iter().enumerate() {
                let start = if wg == target - wg { gi + 1 } else { 0 };
                for h in &right[start.min(right.len())..] {
                    if span.is_full() {
                        break;
                    }
                    let b = self.monomial_bracket(g, h);
                    if b.is_zero() {
                        continue;
                    }
                    let v = b.coords(&index, basis.len()).expect("bracket lands in slice");
                    span.insert_rational(&v);
                }
            }
            wg += 1;
        }
        Ok((basis.len() - span.dim()) as u64)
    }

    /// `HP_0(O(X))` in weights `0..=w_max`.
    ///
    /// Weights are computed independently and in parallel; the result does not
    /// depend on the thread count.
    pub fn hp0_dims(&self, w_max: i64, budget: u64) -> Result<Hp0Profile> {
        if w_max < 0 {
            return Err(Error::InvalidArgument(format!("w_max must be >= 0, got {w_max}")));
        }
        let dims = self.hp0_range(0, w_max, budget)?;
        Ok(Hp0Profile::from_slices(&dims, w_max))
    }

    fn hp0_range(&self, lo: i64, hi: i64, budget: u64) -> Result<Vec<(i64, u64)>> {
        (lo..=hi)
            .into_par_iter()
            .map(|w| self.hp0_slice(w, budget).map(|d| (w, d)))
            .collect()
    }

    /// Stabilization window used by [`Self::hp0_auto`]: `max a_i + sum m_i`.
    pub fn default_window(&self) -> i64 {
        self.ring.max_weight() as i64 + self.degrees.iter().sum::<i64>()
    }

    /// Computes `HP_0` until `window` consecutive zero weights follow the last
    /// nonzero one and the Jacobi socle degree has been passed.
    ///
    /// The stopping rule is a heuristic; the profile records it so callers can
    /// ask for a larger window.
    pub fn hp0_auto(&self, window: Option<i64>, budget: u64) -> Result<Hp0Profile> {
        let window = window.unwrap_or_else(|| self.default_window()).max(1);
        let floor = self.jacobi_socle_degree().unwrap_or(0).max(0);
        let mut slices: Vec<(i64, u64)> = Vec::new();
        let mut last_nonzero: i64 = -1;
        let mut next = 0i64;
        loop {
            let stop = (last_nonzero + window).max(floor);
            if next > stop {
                return Ok(Hp0Profile::from_slices(&slices, next - 1));
            }
            let chunk = self.hp0_range(next, stop, budget)?;
            for &(w, d) in &chunk {
                if d > 0 {
                    last_nonzero = w;
                }
            }
            slices.extend(chunk);
            next = stop + 1;
        }
    }

    /// Graded dimensions of the Jacobi ring `C[x]/(df)` in weights `0..=w_max`,
    /// by linear algebra. Hypersurfaces only.
    pub fn jacobi_dims(&self, w_max: i64) -> Result<GradedHilbert> {
        let f = self.single_equation()?;
        let partials: Vec<(WeightedPolynomial, i64)> = (0..self.ring.nvars())
            .map(|i| f.derivative(i))
            .filter(|p| !p.is_zero())
            .map(|p| {
                let d = p.homogeneous_degree().expect("derivative of homogeneous f");
                (p, d)
            })
            .collect();
        let dims: Vec<(i64, u64)> = (0..=w_max.max(-1))
            .into_par_iter()
            .map(|w| {
                let (basis, index) = slice_basis(&self.ring, w);
                let mut span = EchelonBasis::new(basis.len());
                for (p, d) in &partials {
                    for mono in graded_monomials(&self.ring, w - d) {
                        if span.is_full() {
                            break;
                        }
                        let v = p.shift(&mono).coords(&index, basis.len()).expect("in slice");
                        span.insert_rational(&v);
                    }
                }
                (w, (basis.len() - span.dim()) as u64)
            })
            .collect();
        Ok(GradedHilbert::from_pairs(&dims))
    }

    fn single_equation(&self) -> Result<&WeightedPolynomial> {
        match self.defining.as_slice() {
            [f] => Ok(f),
            _ => Err(Error::InvalidArgument(
                "operation is defined for hypersurfaces in C^3 only".into(),
            )),
        }
    }

    /// Decides whether `{f = 0}` has an isolated singularity at the origin.
    ///
    /// The Jacobi ring is finite-dimensional iff it vanishes in every weight of
    /// `(W, W + max a_i]`, `W` the socle degree: beyond that window every monomial
    /// is a variable times a monomial already in the ideal.
    pub fn is_isolated(&self) -> Result<IsolationCertificate> {
        self.single_equation()?;
        let socle = self.jacobi_socle_degree().expect("hypersurface");
        let hi = socle + self.ring.max_weight() as i64;
        let lo = socle.max(-1);
        let dims = self.jacobi_dims(hi)?;
        let isolated = ((lo + 1)..=hi).all(|w| dims.coeff(w) == 0);
        Ok(IsolationCertificate {
            isolated,
            window: (lo, hi),
            jacobi_dims: dims,
        })
    }
}

fn slice_basis(ring: &WeightedRing, w: i64) -> (Vec<Exponents>, HashMap<Exponents, usize>) {
    let basis = graded_monomials(ring, w);
    let index = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    (basis, index)
}

/// Outcome of [`SurfaceVariety::is_isolated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolationCertificate {
    pub isolated: bool,
    /// Half-open weight window `(lo, hi]` in which the Jacobi ring was required to vanish.
    pub window: (i64, i64),
    /// Jacobi-ring dimensions in weights `0..=hi`.
    pub jacobi_dims: GradedHilbert,
}

/// Graded dimensions of `HP_0(O(X))` together with how far they were checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hp0Profile {
    pub dims: GradedHilbert,
    pub total: u64,
    pub certified_through: i64,
    /// Consecutive zero weights observed after the last nonzero weight.
    pub stabilization_window: i64,
}

impl Hp0Profile {
    fn from_slices(slices: &[(i64, u64)], certified_through: i64) -> Self {
        let dims = GradedHilbert::from_pairs(slices);
        let last = dims.max_exponent().unwrap_or(-1);
        Self {
            total: dims.total(),
            dims,
            certified_through,
            stabilization_window: certified_through - last,
        }
    }
}

impl Serialize for Hp0Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Hp0Profile", 4)?;
        st.serialize_field("weights", &self.dims.pairs())?;
        st.serialize_field("total", &self.total)?;
        st.serialize_field("certified_through", &self.certified_through)?;
        st.serialize_field("window", &self.stabilization_window)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_polynomial;

    fn surface(f: &str, weights: &[u32]) -> SurfaceVariety {
        let ring = WeightedRing::new(weights.to_vec()).unwrap();
        SurfaceVariety::hypersurface(parse_polynomial(f, &ring).unwrap()).unwrap()
    }

    #[test]
    fn quadric_bracket() {
        let x = surface("x1^2+x2^2+x3^2", &[1, 1, 1]);
        let r = x.ring().clone();
        let b = x
            .bracket(&WeightedPolynomial::var(&r, 0), &WeightedPolynomial::var(&r, 1))
            .unwrap();
        assert_eq!(b, parse_polynomial("2*x3", &r).unwrap());
        assert_eq!(x.monomial_bracket(&[1, 0, 0], &[0, 1, 0]), b);
    }

    #[test]
    fn bracket_is_alternating_and_f_is_central() {
        let x = surface("x1^3 + x1*x2^2 + x3^2", &[2, 2, 3]);
        let r = x.ring().clone();
        let g = parse_polynomial("x1*x3 + x2*x3", &r).unwrap();
        let h = parse_polynomial("x2^2 - 3*x1^2", &r).unwrap();
        assert!(x.bracket(&g, &g).unwrap().is_zero());
        let f = x.defining()[0].clone();
        assert!(x.bracket(&f, &h).unwrap().is_zero());
        let gh = x.bracket(&g, &h).unwrap();
        let hg = x.bracket(&h, &g).unwrap();
        assert_eq!(gh, -&hg);
        assert_eq!(gh.homogeneous_degree(), Some(5 + 4 + x.bracket_degree()));
    }

    #[test]
    fn a1_hp0() {
        let x = surface("x1^2+x2^2+x3^2", &[2, 2, 2]);
        let p = x.hp0_auto(None, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.dims, GradedHilbert::from_pairs(&[(0, 1)]));
        assert_eq!(p.total, 1);
        assert!(p.certified_through >= p.stabilization_window);
    }

    #[test]
    fn elliptic_e6_hp0_at_zero() {
        let x = surface("x1^3+x2^3+x3^3", &[1, 1, 1]);
        let p = x.hp0_dims(7, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.dims, GradedHilbert::from_pairs(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(p.stabilization_window, 4);
    }

    #[test]
    fn isolation() {
        assert!(surface("x1^2+x2^2+x3^2", &[1, 1, 1]).is_isolated().unwrap().isolated);
        assert!(!surface("x1^2*x2", &[1, 1, 1]).is_isolated().unwrap().isolated);
        let e6 = surface("x1^3+x2^3+x3^3+x1*x2*x3", &[1, 1, 1]);
        let cert = e6.is_isolated().unwrap();
        assert!(cert.isolated);
        assert_eq!(
            cert.jacobi_dims,
            GradedHilbert::from_pairs(&[(0, 1), (1, 3), (2, 3), (3, 1)])
        );
        // lambda^3 = -27 is the singular member of the family.
        assert!(!surface("x1^3+x2^3+x3^3-3*x1*x2*x3", &[1, 1, 1]).is_isolated().unwrap().isolated);
    }

    #[test]
    fn rejects_non_quasi_homogeneous() {
        let ring = WeightedRing::standard(3).unwrap();
        let f = parse_polynomial("x1^2 + x2^3 + x3", &ring).unwrap();
        assert!(matches!(
            SurfaceVariety::hypersurface(f),
            Err(Error::NotQuasiHomogeneous { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let x = surface("x1^3+x2^3+x3^3", &[1, 1, 1]);
        match x.hp0_dims(6, 1000) {
            Err(Error::Budget { budget, .. }) => assert_eq!(budget, 1000),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_intersection_a1() {
        // x4 = 0 and a quadric: the A1 surface sitting inside C^4.
        let ring = WeightedRing::new(vec![2, 2, 2, 2]).unwrap();
        let f1 = parse_polynomial("x4", &ring).unwrap();
        let f2 = parse_polynomial("x1^2+x2^2+x3^2", &ring).unwrap();
        let x = SurfaceVariety::new(&ring, vec![f1, f2]).unwrap();
        assert_eq!(x.bracket_degree(), -2);
        let p = x.hp0_auto(None, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.dims, GradedHilbert::from_pairs(&[(0, 1)]));
        assert!(x.is_isolated().is_err());
    }
}
