//! Vector matroids, Tutte polynomials and the hypertoric Poisson-de Rham formula.
//!
//! For a flat `F` of the arrangement matroid `M`, the restriction `A^F` is the
//! contraction `M/F` and the localization `A_F` is the restriction `M|F`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{integer_rank, BigradedHilbert, QMatrix};

/// Subset of the ground set, as a bitmask over column indices.
pub type ElementSet = u64;

const MAX_ELEMENTS: usize = 64;

fn bits(set: ElementSet) -> impl Iterator<Item = usize> {
    (0..MAX_ELEMENTS).filter(move |&i| set >> i & 1 == 1)
}

/// Matroid of the columns of an integer matrix.
#[derive(Debug)]
pub struct VectorMatroid {
    /// Column vectors.
    columns: Vec<Vec<BigInt>>,
    dim: usize,
    ranks: Mutex<HashMap<ElementSet, usize>>,
}

impl Clone for VectorMatroid {
    fn clone(&self) -> Self {
        Self::from_columns(self.columns.clone(), self.dim)
    }
}

impl VectorMatroid {
    fn from_columns(columns: Vec<Vec<BigInt>>, dim: usize) -> Self {
        Self {
            columns,
            dim,
            ranks: Mutex::new(HashMap::new()),
        }
    }

    /// Matroid on the columns of `rows` (array of rows). All rows must have the
    /// same length; at most 64 columns.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument("matrix rows have unequal lengths".into()));
        }
        if ncols > MAX_ELEMENTS {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_ELEMENTS} columns are supported, got {ncols}"
            )));
        }
        let columns = (0..ncols)
            .map(|c| rows.iter().map(|r| BigInt::from(r[c])).collect())
            .collect();
        Ok(Self::from_columns(columns, rows.len()))
    }

    /// Columns of an integer kernel basis of `rows`: the Gale dual side.
    fn kernel_matroid(rows: &[Vec<i64>], ncols: usize) -> Result<Self> {
        let kernel = if rows.is_empty() {
            (0..ncols)
                .map(|i| (0..ncols).map(|j| BigInt::from(i64::from(i == j))).collect())
                .collect()
        } else {
            QMatrix::from_integer_rows(rows).kernel_basis()
        };
        let dim = kernel.len();
        let columns = (0..ncols)
            .map(|c| kernel.iter().map(|r: &Vec<BigInt>| r[c].clone()).collect())
            .collect();
        Ok(Self::from_columns(columns, dim))
    }

    /// Arrangement matroid from a `k x n` torus weight matrix: the hyperplane
    /// normals are the columns of a basis of its kernel, in dimension `n - k`.
    pub fn from_weights(weights: &[Vec<i64>]) -> Result<Self> {
        let probe = Self::from_rows(weights)?;
        let k = weights.len();
        let rank = probe.rank(probe.ground());
        if rank < k {
            return Err(Error::RankDeficient { rank, dim: k });
        }
        Self::kernel_matroid(weights, probe.len())
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Dimension of the ambient space of the column vectors.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn ground(&self) -> ElementSet {
        if self.len() == MAX_ELEMENTS {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Integer representation of the column vectors, one row per ambient coordinate.
    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|r| {
                self.columns
                    .iter()
                    .map(|c| c[r].to_i64().expect("entry fits i64"))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self, set: ElementSet) -> usize {
        if set == 0 {
            return 0;
        }
        if let Some(&r) = self.ranks.lock().expect("rank cache poisoned").get(&set) {
            return r;
        }
        let rows: Vec<Vec<BigInt>> = bits(set).map(|c| self.columns[c].clone()).collect();
        let r = integer_rank(rows);
        self.ranks.lock().expect("rank cache poisoned").insert(set, r);
        r
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn closure(&self, set: ElementSet) -> ElementSet {
        let r = self.rank(set);
        bits(self.ground())
            .filter(|&e| set >> e & 1 == 1 || self.rank(set | 1 << e) == r)
            .fold(0, |acc, e| acc | 1 << e)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(1 << e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(self.ground() & !(1 << e)) < self.full_rank()
    }

    /// Every flat, found as the closure of an independent set; ordered by rank,
    /// then by bitmask.
    pub fn flats(&self) -> Vec<Flat> {
        let mut found = BTreeSet::new();
        let mut stack: Vec<(ElementSet, usize)> = vec![(0, 0)];
        while let Some((indep, next)) = stack.pop() {
            found.insert(self.closure(indep));
            let r = self.rank(indep);
            for e in next..self.len() {
                let bigger = indep | 1 << e;
                if self.rank(bigger) == r + 1 {
                    stack.push((bigger, e + 1));
                }
            }
        }
        let mut flats: Vec<Flat> = found
            .into_iter()
            .map(|set| Flat {
                elements: set,
                rank: self.rank(set),
            })
            .collect();
        flats.sort_by_key(|f| (f.rank, f.elements));
        flats
    }

    /// Dual matroid, represented by an integer kernel basis of the matrix.
    pub fn dual(&self) -> Self {
        Self::kernel_matroid(&self.matrix_rows(), self.len()).expect("kernel of a valid matrix")
    }

    /// Tutte polynomial by deletion-contraction, memoized on (ground, contracted) pairs.
    pub fn tutte(&self) -> TuttePoly {
        self.minor_tutte(self.ground(), 0)
    }

    /// Tutte polynomial of the minor with ground set `ground` obtained by contracting
    /// `contracted` (disjoint from `ground`) and deleting everything else.
    pub fn minor_tutte(&self, ground: ElementSet, contracted: ElementSet) -> TuttePoly {
        let mut memo = HashMap::new();
        self.dc(ground, contracted, &mut memo)
    }

    fn minor_rank(&self, set: ElementSet, contracted: ElementSet) -> usize {
        self.rank(set | contracted) - self.rank(contracted)
    }

    fn dc(
        &self,
        ground: ElementSet,
        contracted: ElementSet,
        memo: &mut HashMap<(ElementSet, ElementSet), TuttePoly>,
    ) -> TuttePoly {
        if ground == 0 {
            return TuttePoly::one();
        }
        if let Some(t) = memo.get(&(ground, contracted)) {
            return t.clone();
        }
        let e = ground.trailing_zeros() as usize;
        let rest = ground & !(1 << e);
        let out = if self.minor_rank(1 << e, contracted) == 0 {
            self.dc(rest, contracted, memo).shift(0, 1)
        } else if self.minor_rank(rest, contracted) < self.minor_rank(ground, contracted) {
            self.dc(rest, contracted | 1 << e, memo).shift(1, 0)
        } else {
            let del = self.dc(rest, contracted, memo);
            let con = self.dc(rest, contracted | 1 << e, memo);
            del.add(&con)
        };
        memo.insert((ground, contracted), out.clone());
        out
    }

    /// `sum_{S subset E} (x-1)^(r(E)-r(S)) (y-1)^(|S|-r(S))`, expanded over all subsets.
    pub fn tutte_corank_nullity(&self) -> TuttePoly {
        let ground = self.ground();
        let full = self.full_rank();
        let mut signed: BTreeMap<(u32, u32), i128> = BTreeMap::new();
        let mut sub: ElementSet = 0;
        loop {
            let r = self.rank(sub);
            let corank = (full - r) as u32;
            let nullity = sub.count_ones() - r as u32;
            for i in 0..=corank {
                for j in 0..=nullity {
                    let sign = if (corank - i + nullity - j).is_multiple_of(2) { 1 } else { -1 };
                    let c = sign * binom(corank, i) * binom(nullity, j);
                    *signed.entry((i, j)).or_insert(0) += c;
                }
            }
            if sub == ground {
                break;
            }
            sub = (sub.wrapping_sub(ground)) & ground;
        }
        let mut t = TuttePoly::default();
        for ((i, j), c) in signed {
            assert!(c >= 0, "corank-nullity expansion produced a negative coefficient");
            if c > 0 {
                t.coeffs.insert((i, j), c as u64);
            }
        }
        t
    }

    /// Whether all nonzero maximal minors agree up to sign, checked exhaustively;
    /// `None` when there are too many minors to check.
    pub fn is_unimodular(&self) -> Option<bool> {
        let r = self.full_rank();
        let n = self.len();
        if n > 20 {
            return None;
        }
        if r == 0 {
            return Some(true);
        }
        let rows = self.matrix_rows();
        // Project to r independent coordinates so maximal minors are square.
        let mut basis_rows: Vec<Vec<i64>> = Vec::new();
        for row in &rows {
            let mut trial = basis_rows.clone();
            trial.push(row.clone());
            if QMatrix::from_integer_rows(&trial).rank() == trial.len() {
                basis_rows = trial;
            }
        }
        let mut seen: Option<BigInt> = None;
        let mut ok = true;
        for_each_subset_of_size(n, r, &mut |cols| {
            let sub: Vec<Vec<BigInt>> = basis_rows
                .iter()
                .map(|row| cols.iter().map(|&c| BigInt::from(row[c])).collect())
                .collect();
            let d = det(sub).abs();
            if d.is_zero() {
                return;
            }
            match &seen {
                None => seen = Some(d),
                Some(s) if *s != d => ok = false,
                _ => {}
            }
        });
        Some(ok)
    }
}

fn for_each_subset_of_size(n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::new(), visit);
}

/// Integer determinant by Bareiss elimination.
fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn binom(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub elements: ElementSet,
    pub rank: usize,
}

impl Flat {
    pub fn size(&self) -> u32 {
        self.elements.count_ones()
    }

    pub fn element_list(&self) -> Vec<usize> {
        bits(self.elements).collect()
    }
}

/// Tutte polynomial `sum c_ij x^i y^j` with nonnegative coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TuttePoly {
    coeffs: BTreeMap<(u32, u32), u64>,
}

impl TuttePoly {
    pub fn one() -> Self {
        Self::from_terms([((0, 0), 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), u64)>>(terms: I) -> Self {
        let mut t = Self::default();
        for (k, c) in terms {
            if c > 0 {
                *t.coeffs.entry(k).or_insert(0) += c;
            }
        }
        t
    }

    pub fn coeff(&self, i: u32, j: u32) -> u64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &u64)> {
        self.coeffs.iter()
    }

    /// `T(1, 1)`, the number of bases.
    pub fn num_bases(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// `T(y, x)`.
    pub fn swapped(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&(i, j), &c)| ((j, i), c)))
    }

    fn shift(&self, di: u32, dj: u32) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&(i, j), &c)| ((i + di, j + dj), c)))
    }

    fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.coeffs.iter().chain(&other.coeffs).map(|(&k, &c)| (k, c)))
    }

    /// Coefficients of `T(x, 0)`: `(i, c_i0)`.
    pub fn at_y_zero(&self) -> Vec<(u32, u64)> {
        self.coeffs.iter().filter(|((_, j), _)| *j == 0).map(|(&(i, _), &c)| (i, c)).collect()
    }

    /// Coefficients of `T(0, y)`: `(j, c_0j)`.
    pub fn at_x_zero(&self) -> Vec<(u32, u64)> {
        self.coeffs.iter().filter(|((i, _), _)| *i == 0).map(|(&(_, j), &c)| (j, c)).collect()
    }
}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = BigradedHilbert::from_terms(
            self.coeffs.iter().map(|(&(i, j), &c)| ([i as i64, j as i64], c)),
        );
        f.write_str(&h.display_with(["x", "y"]))
    }
}

impl Serialize for TuttePoly {
    /// `[[i, j, coeff], ...]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (&(i, j), &c) in &self.coeffs {
            seq.serialize_element(&(i, j, c))?;
        }
        seq.end()
    }
}

/// Result of the hypertoric flats formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypertoricHpdr {
    /// Keys `[x, y]`: `x` homological degree, `y` weight.
    pub series: BigradedHilbert,
    pub dim_x: u32,
    pub flats: usize,
    /// Flats whose localization is coloop-free, i.e. that index symplectic leaves.
    pub coloop_free_flats: usize,
    /// Exhaustive unimodularity check of the normals, when feasible.
    pub unimodular: Option<bool>,
}

/// `y^(-dim X) sum_F T_{M/F}(x^2, 0) T_{M|F}(0, y^-2) y^(2|F|)` over all flats.
///
/// Flats whose localization has a coloop contribute zero; this is asserted.
pub fn hpdr_hypertoric(m: &VectorMatroid) -> Result<HypertoricHpdr> {
    let rank = m.full_rank();
    if rank < m.ambient_dim() {
        return Err(Error::RankDeficient {
            rank,
            dim: m.ambient_dim(),
        });
    }
    let dim_x = 2 * m.ambient_dim() as u32;
    let flats = m.flats();
    let mut series = BigradedHilbert::new();
    let mut coloop_free = 0;
    for flat in &flats {
        let f = flat.elements;
        let restriction = m.minor_tutte(m.ground() & !f, f);
        let localization = m.minor_tutte(f, 0);
        let has_coloop = bits(f).any(|e| m.rank(f & !(1 << e)) < m.rank(f));
        let left = BigradedHilbert::from_terms(
            restriction.at_y_zero().into_iter().map(|(i, c)| ([2 * i as i64, 0], c)),
        );
        let right = BigradedHilbert::from_terms(localization.at_x_zero().into_iter().map(|(j, c)| {
            ([0, 2 * flat.size() as i64 - 2 * j as i64 - dim_x as i64], c)
        }));
        let term = left.mul(&right);
        if has_coloop {
            assert!(term.is_empty(), "flat with a coloop contributed a nonzero term");
        } else {
            coloop_free += 1;
        }
        series = series.add(&term);
    }
    Ok(HypertoricHpdr {
        series,
        dim_x,
        flats: flats.len(),
        coloop_free_flats: coloop_free,
        unimodular: m.is_unimodular(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(r: usize, n: usize) -> VectorMatroid {
        // Vandermonde rows: every r x r minor is nonzero.
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| (1..=n as i64).map(|j| j.pow(i as u32)).collect())
            .collect();
        VectorMatroid::from_rows(&rows).unwrap()
    }

    #[test]
    fn flats_of_u12() {
        let m = VectorMatroid::from_rows(&[vec![1, 1]]).unwrap();
        let f: Vec<_> = m.flats().iter().map(|f| f.elements).collect();
        assert_eq!(f, vec![0b00, 0b11]);
    }

    #[test]
    fn flats_of_free_matroid() {
        let m = VectorMatroid::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        let f: Vec<_> = m.flats().iter().map(|f| f.elements).collect();
        assert_eq!(f, vec![0b00, 0b01, 0b10, 0b11]);
    }

    #[test]
    fn loops_lie_in_every_flat() {
        let m = VectorMatroid::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(m.is_loop(2));
        assert!(m.flats().iter().all(|f| f.elements & 0b100 != 0));
    }

    #[test]
    fn tutte_base_cases() {
        let coloop = VectorMatroid::from_rows(&[vec![1]]).unwrap();
        assert_eq!(coloop.tutte(), TuttePoly::from_terms([((1, 0), 1)]));
        let lp = VectorMatroid::from_rows(&[vec![0]]).unwrap();
        assert_eq!(lp.tutte(), TuttePoly::from_terms([((0, 1), 1)]));
        let u12 = uniform(1, 2);
        assert_eq!(u12.tutte(), TuttePoly::from_terms([((1, 0), 1), ((0, 1), 1)]));
        for m in 2..6 {
            let expected = TuttePoly::from_terms(
                std::iter::once(((1, 0), 1)).chain((1..m).map(|j| ((0, j as u32), 1))),
            );
            let u = uniform(1, m);
            assert_eq!(u.tutte(), expected);
            assert_eq!(u.tutte_corank_nullity(), expected);
        }
    }

    #[test]
    fn uniform_flat_counts() {
        for n in 1..7usize {
            for r in 1..=n {
                let expected: u64 = (0..r).map(|i| binom(n as u32, i as u32) as u64).sum::<u64>() + 1;
                assert_eq!(uniform(r, n).flats().len() as u64, expected, "U({r},{n})");
            }
        }
    }

    #[test]
    fn hypertoric_a1() {
        let m = VectorMatroid::from_rows(&[vec![1, 1]]).unwrap();
        let h = hpdr_hypertoric(&m).unwrap();
        assert_eq!(h.series, BigradedHilbert::from_terms([([0, 0], 1), ([2, -2], 1)]));
        assert_eq!(h.dim_x, 2);
        let w = VectorMatroid::from_weights(&[vec![1, 1]]).unwrap();
        assert_eq!(hpdr_hypertoric(&w).unwrap().series, h.series);
    }

    #[test]
    fn hypertoric_point() {
        let m = VectorMatroid::from_rows(&[]).unwrap();
        assert_eq!(hpdr_hypertoric(&m).unwrap().series, BigradedHilbert::one());
        let w = VectorMatroid::from_weights(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(hpdr_hypertoric(&w).unwrap().series, BigradedHilbert::one());
    }

    #[test]
    fn hypertoric_rank_deficient() {
        let m = VectorMatroid::from_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(hpdr_hypertoric(&m), Err(Error::RankDeficient { rank: 1, dim: 2 })));
        assert!(VectorMatroid::from_weights(&[vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn unimodularity() {
        assert_eq!(uniform(1, 4).is_unimodular(), Some(true));
        assert_eq!(VectorMatroid::from_rows(&[vec![1, 2]]).unwrap().is_unimodular(), Some(false));
    }
}
