//! Multipartition counts and symmetric-power generating functions.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{series_product, BigradedHilbert, GradedHilbert, SeriesFactor, TruncatedSeries};
use crate::kostka::partitions_cached;
use crate::singularity::{DuValRecord, Grading};

/// Cache of `a_n(i)`, the coefficient of `t^n` in `prod_{m>=1} (1 - t^m)^(-i)`.
///
/// Rows are filled by truncated series multiplication. Concurrent callers may
/// race to fill the same entries; fills are idempotent.
#[derive(Debug, Default)]
pub struct MultipartitionCounter {
    /// `table[i][n] = a_n(i)`; every row has the same length.
    table: RwLock<Vec<Vec<u64>>>,
}

impl MultipartitionCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize, i: usize) -> u64 {
        {
            let t = self.table.read().expect("counter lock poisoned");
            if let Some(v) = t.get(i).and_then(|row| row.get(n)) {
                return *v;
            }
        }
        let mut t = self.table.write().expect("counter lock poisoned");
        let have_n = t.first().map_or(0, Vec::len);
        let want_n = (n + 1).max(have_n);
        let want_i = (i + 1).max(t.len());
        if want_n > have_n {
            t.clear();
        }
        let partitions = partition_numbers(want_n);
        while t.len() < want_i {
            let row = match t.last() {
                None => {
                    let mut r = vec![0u64; want_n];
                    r[0] = 1;
                    r
                }
                Some(prev) => convolve(prev, &partitions),
            };
            t.push(row);
        }
        t[i][n]
    }

    /// Largest `n` and `i` with cached values, if any.
    pub fn extent(&self) -> Option<(usize, usize)> {
        let t = self.table.read().expect("counter lock poisoned");
        let n = t.first()?.len();
        Some((n - 1, t.len() - 1))
    }
}

/// `p(0), .., p(len - 1)` from `prod 1/(1 - t^m)`.
fn partition_numbers(len: usize) -> Vec<u64> {
    let mut p = vec![0u64; len];
    if len == 0 {
        return p;
    }
    p[0] = 1;
    for m in 1..len {
        for k in m..len {
            p[k] = p[k].checked_add(p[k - m]).expect("partition number overflow");
        }
    }
    p
}

fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    let len = a.len();
    (0..len)
        .map(|k| {
            (0..=k)
                .map(|j| a[j].checked_mul(b[k - j]).expect("multipartition overflow"))
                .fold(0u64, |acc, x| acc.checked_add(x).expect("multipartition overflow"))
        })
        .collect()
}

fn global_counter() -> &'static MultipartitionCounter {
    static COUNTER: OnceLock<MultipartitionCounter> = OnceLock::new();
    COUNTER.get_or_init(MultipartitionCounter::new)
}

/// Number of `i`-multipartitions of `n`.
pub fn a(n: usize, i: usize) -> u64 {
    global_counter().get(n, i)
}

/// Counts `i`-tuples of partitions of total size `n` by running over every
/// composition `n = n_1 + .. + n_i` and the explicit partition lists of each part.
pub fn a_by_enumeration(n: usize, i: usize) -> u64 {
    if i == 0 {
        return u64::from(n == 0);
    }
    let lists: Vec<u64> = (0..=n).map(|k| partitions_cached(k as u32).len() as u64).collect();
    let mut total = 0u64;
    let mut sizes = vec![0usize; i];
    compositions(n, 0, &mut sizes, &mut |sizes| {
        total += sizes.iter().map(|&k| lists[k]).product::<u64>();
    });
    total
}

fn compositions(rest: usize, slot: usize, sizes: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if slot + 1 == sizes.len() {
        sizes[slot] = rest;
        visit(sizes);
        return;
    }
    for k in 0..=rest {
        sizes[slot] = k;
        compositions(rest - k, slot + 1, sizes, visit);
    }
}

/// `dim HP_0(O(S^n Y)) = a_n(dim H^top(Y))`.
pub fn hp0_sympow_dim(h_top: usize, n: usize) -> u64 {
    a(n, h_top)
}

/// `prod_i prod_{j>=0} 1 / (1 - t^(n_i + j*step) s^(j+1))` up to `s^order`, where
/// `n_i` runs over the exponents of `jacobi` with multiplicity.
pub fn hp0_sympow_series(jacobi: &GradedHilbert, step: i64, order: usize) -> Result<TruncatedSeries<1>> {
    if step <= 0 {
        return Err(Error::InvalidArgument(format!("t-step must be positive, got {step}")));
    }
    let mut factors = Vec::new();
    for n_i in jacobi.exponents() {
        for j in 0..order as u32 {
            factors.push(SeriesFactor::geometric(j + 1, [n_i + j as i64 * step]));
        }
    }
    series_product(&factors, order)
}

/// A series tagged with the grading its exponents are expressed in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedSeries<const N: usize> {
    pub grading: Grading,
    pub step: i64,
    pub series: TruncatedSeries<N>,
}

/// `HP_0` of the symmetric powers of a du Val surface, with `step = |f|` in `grading`.
pub fn duval_hp0_sympow_series(record: &DuValRecord, grading: Grading, order: usize) -> Result<GradedSeries<1>> {
    let step = record.fdegree_in(grading);
    Ok(GradedSeries {
        grading,
        step,
        series: hp0_sympow_series(&record.jacobi_weights(grading), step, order)?,
    })
}

/// Trigraded Poisson-de Rham series of `S^n Y` for du Val `Y`.
///
/// Coefficients of `s^n` are keyed `[t, u]` (weight, homological degree). The
/// `HP_0` factors are multiplied by `prod_{j>=0} 1/(1 - s^(j+1) t^-2 u^(2j+2))`, the
/// class of `s^j * u` having homological degree `2j + 2`.
pub fn hpdr_sympow_duval_series(record: &DuValRecord, grading: Grading, order: usize) -> Result<GradedSeries<2>> {
    let step = record.fdegree_in(grading);
    let mut factors = Vec::new();
    for j in 0..order as u32 {
        factors.push(SeriesFactor::geometric(j + 1, [-2, 2 * j as i64 + 2]));
        for n_i in record.jacobi_weights(grading).exponents() {
            factors.push(SeriesFactor::geometric(j + 1, [n_i + j as i64 * step, 0]));
        }
    }
    Ok(GradedSeries {
        grading,
        step,
        series: series_product(&factors, order)?,
    })
}

/// Jordan block sizes `phi(i, j)` in a twistor deformation of a du Val surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistorOrders {
    /// `(cohomological index, block) -> order`; blocks are numbered from 1.
    pub phi: BTreeMap<(u32, u32), u64>,
    /// Weight of the symplectic form (C2 grading).
    pub d: i64,
    pub dim_x: u32,
    pub coxeter_number: i64,
}

impl TwistorOrders {
    /// `phi(2, j)` in block order.
    pub fn top_orders(&self) -> Vec<u64> {
        self.phi
            .iter()
            .filter(|((i, _), _)| *i == self.dim_x)
            .map(|(_, &v)| v)
            .collect()
    }

    /// `y^(-d dimX/2) sum x^i y^(d phi(dimX - i, j))`; keys `[x, y]`.
    pub fn reconstruction(&self) -> BigradedHilbert {
        let shift = -self.d * self.dim_x as i64 / 2;
        BigradedHilbert::from_terms(self.phi.iter().map(|(&(k, _), &v)| {
            ([(self.dim_x - k) as i64, shift + self.d * v as i64], 1)
        }))
    }
}

/// `phi(2, j) = n_j / 2 + 1` over the C2-graded Jacobi weights, and `phi(0, 1) = 0`.
pub fn twistor_orders_duval(record: &DuValRecord) -> Result<TwistorOrders> {
    let mut phi = BTreeMap::new();
    phi.insert((0, 1), 0);
    for (j, w) in record.jacobi_weights(Grading::C2).exponents().into_iter().enumerate() {
        if w % 2 != 0 || w < 0 {
            return Err(Error::InvalidArgument(format!(
                "{}: C2 Jacobi weight {w} is not a nonnegative even number",
                record.label()
            )));
        }
        phi.insert((2, j as u32 + 1), (w / 2 + 1) as u64);
    }
    Ok(TwistorOrders {
        phi,
        d: 2,
        dim_x: 2,
        coxeter_number: record.coxeter_number,
    })
}

/// Maps a trigraded coefficient keyed `[t, u]` to `[x, y]` with `x = u`, `y = t`.
pub fn relabel_tu_to_xy(h: &BigradedHilbert) -> BigradedHilbert {
    h.map_exponents(|e| [e[1], e[0]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularity::duval_record;

    #[test]
    fn small_values() {
        for i in 0..5 {
            assert_eq!(a(0, i), 1);
        }
        assert_eq!(a(3, 0), 0);
        assert_eq!(a(5, 1), 7);
        assert_eq!(a(2, 2), 5);
        assert_eq!(a_by_enumeration(2, 2), 5);
        assert_eq!(a_by_enumeration(5, 1), 7);
        assert_eq!(a_by_enumeration(0, 0), 1);
        assert_eq!(a_by_enumeration(1, 0), 0);
    }

    #[test]
    fn partition_numbers_prefix() {
        let p: Vec<u64> = (0..10).map(|n| a(n, 1)).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn counter_extends_both_directions() {
        let c = MultipartitionCounter::new();
        assert_eq!(c.extent(), None);
        assert_eq!(c.get(3, 1), 3);
        assert_eq!(c.get(10, 1), 42);
        assert_eq!(c.get(2, 4), 14);
        assert_eq!(c.extent(), Some((10, 4)));
        assert_eq!(c.get(3, 1), 3);
    }

    #[test]
    fn sympow_dims() {
        assert_eq!(hp0_sympow_dim(1, 2), 2);
        assert_eq!(hp0_sympow_dim(7, 0), 1);
        assert_eq!(hp0_sympow_dim(2, 3), 10);
    }

    #[test]
    fn a1_series_in_c2() {
        let s = hp0_sympow_series(&GradedHilbert::from_pairs(&[(0, 1)]), 4, 2).unwrap();
        assert_eq!(s.coeff(1), &GradedHilbert::from_pairs(&[(0, 1)]));
        assert_eq!(s.coeff(2), &GradedHilbert::from_pairs(&[(0, 1), (4, 1)]));
        let z = hp0_sympow_series(&GradedHilbert::from_pairs(&[(0, 1)]), 4, 0).unwrap();
        assert_eq!(z.specialize(), vec![1]);
        assert!(hp0_sympow_series(&GradedHilbert::one(), 0, 2).is_err());
    }

    #[test]
    fn a1_trigraded_first_coefficient() {
        let r = duval_record("A1").unwrap();
        let s = hpdr_sympow_duval_series(&r, Grading::C2, 3).unwrap();
        assert_eq!(
            s.series.coeff(1),
            &BigradedHilbert::from_terms([([0, 0], 1), ([-2, 2], 1)])
        );
        let totals = s.series.specialize();
        assert_eq!(totals, (0..=3).map(|n| a(n, 2)).collect::<Vec<_>>());
    }

    #[test]
    fn twistor_a1_and_e8() {
        let t = twistor_orders_duval(&duval_record("A1").unwrap()).unwrap();
        assert_eq!(t.phi[&(2, 1)], 1);
        assert_eq!(t.phi[&(0, 1)], 0);
        assert_eq!(
            t.reconstruction(),
            BigradedHilbert::from_terms([([0, 0], 1), ([2, -2], 1)])
        );
        let t = twistor_orders_duval(&duval_record("E8").unwrap()).unwrap();
        assert_eq!(t.top_orders(), vec![1, 7, 11, 13, 17, 19, 23, 29]);
    }
}
