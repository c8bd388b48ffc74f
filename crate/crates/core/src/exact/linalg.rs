use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let q: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(&q)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(r, k, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        span_dim(&self.to_rows())
    }

    /// Basis of `{v : self * v = 0}`, each vector scaled to coprime integers.
    ///
    /// Built from the reduced row echelon form; one vector per free column,
    /// in increasing free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let factor = a[i][c].clone();
                for j in 0..self.cols {
                    let delta = &factor * &a[r][j];
                    a[i][j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -a[row][f].clone();
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }
}

/// Scales a rational vector to coprime integers with a positive leading entry.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    if !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Dimension of the span of `vectors`.
///
/// Rows are cleared of denominators and eliminated fraction-free; the pivot
/// in each column is the first nonzero row in input order.
pub fn span_dim(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let len = first.len();
    assert!(vectors.iter().all(|v| v.len() == len), "vectors of unequal length");
    integer_rank(vectors.iter().map(|v| clear_denominators(v)).collect())
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let Some(ncols) = a.first().map(Vec::len) else {
        return 0;
    };
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                // Bareiss: every intermediate entry is a minor, so this division is exact.
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Incrementally built row echelon basis with primitive integer rows.
///
/// Rows are keyed by their pivot (first nonzero) column. Reduction against the
/// basis in increasing pivot order never reintroduces an eliminated pivot.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    len: usize,
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.len, "vector length");
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let g = v[p].gcd(&row[p]);
            let mv = &row[p] / &g;
            let mr = &v[p] / &g;
            for j in 0..self.len {
                if row[j].is_zero() {
                    if !v[j].is_zero() {
                        v[j] *= &mv;
                    }
                } else {
                    v[j] = &v[j] * &mv - &mr * &row[j];
                }
            }
            make_primitive(&mut v);
        }
        v
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        self.reduce(clear_denominators(v)).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.insert(p, v);
                true
            }
            None => false,
        }
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        self.insert(clear_denominators(v))
    }
}
