//! Type-A tableau combinatorics.
//!
//! The graded multiplicity of the `S_n`-irreducible `chi_lambda` in `H^{2k}` of the
//! flag variety is realized as the number of standard tableaux of shape `lambda`
//! with major index `k`. The Kostka polynomial in reversed grading is then
//! `K_lambda(t) = sum_T t^(dim B - maj T)`, `dim B = n(n-1)/2`.
//!
//! Springer convention: `chi_lambda` corresponds to the nilpotent orbit of Jordan
//! type `lambda` with trivial local system. The regular orbit `(n)` and the zero
//! orbit `(1^n)` both give `HP_0 = C` under this convention, and the transposed
//! convention does not.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{BigradedHilbert, GradedHilbert};

/// Integer partition `lambda_1 >= .. >= lambda_k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: u32) -> Self {
        Self(if n == 0 { vec![] } else { vec![n] })
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Self(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let cols = self.0.first().copied().unwrap_or(0);
        Self(
            (1..=cols)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// All partitions of `n`, lexicographically decreasing: `(n), (n-1,1), ..`.
    pub fn all(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        gen_partitions(n, n, &mut current, &mut out);
        out
    }

    /// `n! / prod hooks`, the number of standard tableaux.
    pub fn hook_length_count(&self) -> u128 {
        let conj = self.transpose();
        let n = self.size() as u128;
        let mut num: u128 = (1..=n).product();
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len as usize {
                let arm = len as usize - c - 1;
                let leg = conj.0[c] as usize - r - 1;
                num /= (arm + leg + 1) as u128;
            }
        }
        num
    }
}

fn gen_partitions(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        current.push(p);
        gen_partitions(rest - p, p, current, out);
        current.pop();
    }
}

/// Memoized partition lists, shared across threads.
pub fn partitions_cached(n: u32) -> std::sync::Arc<Vec<Partition>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<Partition>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("partition cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| std::sync::Arc::new(Partition::all(n)))
        .clone()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    /// Accepts `3,2,1`, `(3,2,1)` or `[3, 2, 1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad partition part `{}`", p.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Standard Young tableau: rows of entries `1..=n`, increasing along rows and
/// down columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Row index of each entry, `row_of[k - 1]` for entry `k`.
    fn row_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.shape.size() as usize];
        for (r, row) in self.rows.iter().enumerate() {
            for &k in row {
                out[k as usize - 1] = r;
            }
        }
        out
    }

    /// Descents: `i` such that `i + 1` lies in a strictly lower row.
    pub fn descents(&self) -> Vec<u32> {
        let row_of = self.row_of();
        (1..row_of.len())
            .filter(|&i| row_of[i] > row_of[i - 1])
            .map(|i| i as u32)
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.shape.size() as usize;
        let mut seen = vec![false; n + 1];
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != self.shape.0[r] as usize {
                return false;
            }
            for (c, &k) in row.iter().enumerate() {
                if k == 0 || k as usize > n || seen[k as usize] {
                    return false;
                }
                seen[k as usize] = true;
                if c > 0 && row[c - 1] >= k {
                    return false;
                }
                if r > 0 && self.rows[r - 1][c] >= k {
                    return false;
                }
            }
        }
        true
    }
}

/// Sum of descents.
pub fn maj(t: &StandardTableau) -> u32 {
    t.descents().iter().sum()
}

/// All standard tableaux of `shape`, ordered by the row sequence of entries
/// `1, 2, .., n` read lexicographically.
pub fn syt(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.size() as usize;
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); shape.len()];
    place(shape, 1, n as u32, &mut rows, &mut out);
    out
}

fn place(shape: &Partition, next: u32, n: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<StandardTableau>) {
    if next > n {
        out.push(StandardTableau {
            shape: shape.clone(),
            rows: rows.clone(),
        });
        return;
    }
    for r in 0..rows.len() {
        let len = rows[r].len();
        let fits_row = len < shape.0[r] as usize;
        let fits_col = r == 0 || rows[r - 1].len() > len;
        if fits_row && fits_col {
            rows[r].push(next);
            place(shape, next + 1, n, rows, out);
            rows[r].pop();
        }
    }
}

/// `n(n-1)/2`, the dimension of the type-A flag variety.
pub fn flag_dim(n: u32) -> i64 {
    n as i64 * (n as i64 - 1) / 2
}

/// Kostka polynomial `K_lambda(t) = sum_T t^(dim B - maj T)`.
pub fn kostka(shape: &Partition) -> GradedHilbert {
    kostka_with(shape, |t| maj(t) as i64)
}

/// [`kostka`] with the tableau statistic supplied by the caller.
pub fn kostka_with(shape: &Partition, stat: impl Fn(&StandardTableau) -> i64) -> GradedHilbert {
    let top = flag_dim(shape.size());
    GradedHilbert::from_terms(syt(shape).iter().map(|t| ([top - stat(t)], 1)))
}

/// `sum_lambda K_lambda(x^2) K_lambda(y^-2)` over partitions of `n`; keys `[x, y]`.
pub fn lusztig_nilcone(n: u32) -> Result<BigradedHilbert> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let mut out = BigradedHilbert::new();
    for lambda in Partition::all(n) {
        let k = kostka(&lambda);
        let kx = k.map_exponents(|e| [2 * e[0], 0]);
        let ky = k.map_exponents(|e| [0, -2 * e[0]]);
        out = out.add(&kx.mul(&ky));
    }
    Ok(out)
}

/// Dimension `n^2 - sum (lambda'_i)^2` of the nilpotent orbit of Jordan type `lambda`.
pub fn orbit_dim(lambda: &Partition) -> i64 {
    let n = lambda.size() as i64;
    n * n - lambda.transpose().0.iter().map(|&c| (c as i64).pow(2)).sum::<i64>()
}

/// Hilbert series in `y` of `HP_0` of the Slodowy slice to the orbit of Jordan
/// type `lambda` in `sl_n`: `y^(dim G.e) K_lambda(y^-2)`.
pub fn walgebra_hp0(lambda: &Partition) -> GradedHilbert {
    walgebra_hp0_with(lambda, |t| maj(t) as i64)
}

pub fn walgebra_hp0_with(lambda: &Partition, stat: impl Fn(&StandardTableau) -> i64) -> GradedHilbert {
    let shift = orbit_dim(lambda);
    kostka_with(lambda, stat).map_exponents(|e| [shift - 2 * e[0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partitions_of_five() {
        let all = Partition::all(5);
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], p(&[5]));
        assert_eq!(all[1], p(&[4, 1]));
        assert_eq!(all[6], p(&[1, 1, 1, 1, 1]));
        assert_eq!(Partition::all(0), vec![Partition::empty()]);
    }

    #[test]
    fn parse_and_transpose() {
        assert_eq!("(3,1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("[2, 2]".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
    }

    #[test]
    fn tableaux_counts() {
        assert_eq!(syt(&Partition::row(4)).len(), 1);
        assert_eq!(syt(&Partition::column(4)).len(), 1);
        assert_eq!(syt(&p(&[2, 1])).len(), 2);
        assert_eq!(p(&[2, 1]).hook_length_count(), 2);
        assert!(syt(&p(&[3, 2, 1])).iter().all(StandardTableau::is_valid));
    }

    #[test]
    fn major_index() {
        assert_eq!(maj(&syt(&Partition::row(5))[0]), 0);
        assert_eq!(maj(&syt(&Partition::column(5))[0]), 10);
        let mut m: Vec<u32> = syt(&p(&[2, 1])).iter().map(maj).collect();
        m.sort();
        assert_eq!(m, vec![1, 2]);
    }

    #[test]
    fn kostka_small() {
        assert_eq!(kostka(&p(&[2])), GradedHilbert::from_pairs(&[(1, 1)]));
        assert_eq!(kostka(&p(&[1, 1])), GradedHilbert::from_pairs(&[(0, 1)]));
        assert_eq!(kostka(&p(&[2, 1])), GradedHilbert::from_pairs(&[(1, 1), (2, 1)]));
        assert_eq!(kostka(&p(&[3, 1])), GradedHilbert::from_pairs(&[(3, 1), (4, 1), (5, 1)]));
    }

    #[test]
    fn lusztig_small() {
        assert_eq!(
            lusztig_nilcone(2).unwrap(),
            BigradedHilbert::from_terms([([0, 0], 1), ([2, -2], 1)])
        );
        let expected = BigradedHilbert::from_terms([
            ([0, 0], 1),
            ([2, -2], 1),
            ([2, -4], 1),
            ([4, -2], 1),
            ([4, -4], 1),
            ([6, -6], 1),
        ]);
        assert_eq!(lusztig_nilcone(3).unwrap(), expected);
        assert_eq!(lusztig_nilcone(4).unwrap().total(), 24);
        assert!(lusztig_nilcone(0).is_err());
    }

    #[test]
    fn walgebra_anchors() {
        for n in 1..=6 {
            assert_eq!(walgebra_hp0(&Partition::row(n)), GradedHilbert::one(), "regular, n={n}");
            assert_eq!(walgebra_hp0(&Partition::column(n)), GradedHilbert::one(), "zero, n={n}");
        }
        assert_eq!(walgebra_hp0(&p(&[2, 1])), GradedHilbert::from_pairs(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn transposed_convention_fails_anchors() {
        // Using the orbit of the transposed Jordan type breaks the regular anchor.
        let lambda = Partition::row(3);
        let shift = orbit_dim(&lambda.transpose());
        let wrong = kostka(&lambda).map_exponents(|e| [shift - 2 * e[0]]);
        assert_ne!(wrong, GradedHilbert::one());
    }
}
