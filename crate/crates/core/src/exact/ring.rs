use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per ring variable.
pub type Exponents = Vec<u32>;

/// Polynomial ring `Q[x1..xn]` with positive integer weights `|xi| = ai`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedRing {
    weights: Vec<u32>,
}

impl WeightedRing {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing(format!(
                "weights must be positive, got {weights:?}"
            )));
        }
        Ok(Self { weights })
    }

    /// Standard grading, every variable of weight one.
    pub fn standard(nvars: usize) -> Result<Self> {
        Self::new(vec![1; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().map(|&a| a as i64).sum()
    }

    /// Weighted degree `sum ei * ai` of an exponent vector.
    pub fn degree_of(&self, exps: &[u32]) -> i64 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &a)| e as i64 * a as i64)
            .sum()
    }

    /// Same variables with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: u32) -> Result<Self> {
        Self::new(self.weights.iter().map(|&a| a * factor).collect())
    }

    pub fn variable(&self, i: usize) -> Exponents {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        e
    }
}

impl fmt::Display for WeightedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, a) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}:{}", i + 1, a)?;
        }
        write!(f, "]")
    }
}

/// All exponent vectors of weighted degree exactly `w`.
///
/// The order is lexicographic descending on the exponent vector (largest power
/// of `x1` first), which is the graded-lex order restricted to one weight slice.
/// Brute-force matrices index their columns by this order.
pub fn graded_monomials(ring: &WeightedRing, w: i64) -> Vec<Exponents> {
    let mut out = Vec::new();
    if w < 0 {
        return out;
    }
    let mut current = vec![0u32; ring.nvars()];
    fill(ring.weights(), 0, w, &mut current, &mut out);
    out
}

fn fill(weights: &[u32], var: usize, rest: i64, current: &mut Exponents, out: &mut Vec<Exponents>) {
    let a = weights[var] as i64;
    if var + 1 == weights.len() {
        if rest % a == 0 {
            current[var] = (rest / a) as u32;
            out.push(current.clone());
        }
        return;
    }
    let mut e = rest / a;
    loop {
        current[var] = e as u32;
        fill(weights, var + 1, rest - e * a, current, out);
        if e == 0 {
            break;
        }
        e -= 1;
    }
    current[var] = 0;
}

/// Number of monomials of weight `w`, by a coin-change count (no enumeration).
pub fn slice_dim(ring: &WeightedRing, w: i64) -> usize {
    if w < 0 {
        return 0;
    }
    let w = w as usize;
    let mut ways = vec![0usize; w + 1];
    ways[0] = 1;
    for &a in ring.weights() {
        let a = a as usize;
        for k in a..=w {
            ways[k] += ways[k - a];
        }
    }
    ways[w]
}
