use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// Finitely supported nonnegative integer function on `Z^N`.
///
/// Used for Hilbert series in one, two or three gradings. Keys are exponent
/// tuples; zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Hilbert<const N: usize> {
    coeffs: BTreeMap<[i64; N], u64>,
}

pub type GradedHilbert = Hilbert<1>;
pub type BigradedHilbert = Hilbert<2>;
pub type TrigradedHilbert = Hilbert<3>;

impl<const N: usize> Hilbert<N> {
    pub fn new() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series `1`.
    pub fn one() -> Self {
        Self::monomial([0; N], 1)
    }

    pub fn monomial(exps: [i64; N], c: u64) -> Self {
        let mut h = Self::new();
        h.add_term(exps, c);
        h
    }

    pub fn from_terms<I: IntoIterator<Item = ([i64; N], u64)>>(terms: I) -> Self {
        let mut h = Self::new();
        for (e, c) in terms {
            h.add_term(e, c);
        }
        h
    }

    pub fn add_term(&mut self, exps: [i64; N], c: u64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(exps).or_insert(0);
        *slot = slot.checked_add(c).expect("Hilbert coefficient overflow");
    }

    pub fn get(&self, exps: &[i64; N]) -> u64 {
        self.coeffs.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64; N], &u64)> {
        self.coeffs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at all variables equal to one.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.coeffs {
            out.add_term(*e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (e1, &c1) in &self.coeffs {
            for (e2, &c2) in &other.coeffs {
                let mut e = [0i64; N];
                for k in 0..N {
                    e[k] = e1[k].checked_add(e2[k]).expect("exponent overflow");
                }
                out.add_term(e, c1.checked_mul(c2).expect("Hilbert coefficient overflow"));
            }
        }
        out
    }

    /// Multiplies by the monomial with exponents `exps` and coefficient `c`.
    pub fn mul_monomial(&self, exps: &[i64; N], c: u64) -> Self {
        self.mul(&Self::monomial(*exps, c))
    }

    /// Relabels exponents; colliding keys are summed.
    pub fn map_exponents<const M: usize>(&self, f: impl Fn(&[i64; N]) -> [i64; M]) -> Hilbert<M> {
        Hilbert::from_terms(self.coeffs.iter().map(|(e, &c)| (f(e), c)))
    }

    /// Formats as a polynomial in the given variable names, e.g. `1 + x^2*y^-2`.
    pub fn display_with(&self, vars: [&str; N]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, &c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let mut factors = Vec::new();
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    _ => factors.push(format!("{}^{}", vars[i], x)),
                }
            }
            if factors.is_empty() {
                let _ = write!(s, "{c}");
            } else if c == 1 {
                s.push_str(&factors.join("*"));
            } else {
                let _ = write!(s, "{c}*{}", factors.join("*"));
            }
        }
        s
    }
}

impl GradedHilbert {
    /// Builds from `(exponent, coefficient)` pairs.
    pub fn from_pairs(pairs: &[(i64, u64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(e, c)| ([e], c)))
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn pairs(&self) -> Vec<(i64, u64)> {
        self.coeffs.iter().map(|(e, &c)| (e[0], c)).collect()
    }

    pub fn coeff(&self, w: i64) -> u64 {
        self.get(&[w])
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().map(|e| e[0])
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().map(|e| e[0])
    }

    /// Expanded multiset of exponents, e.g. `[0, 2, 2, 4]`.
    pub fn exponents(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .flat_map(|(e, &c)| std::iter::repeat_n(e[0], c as usize))
            .collect()
    }
}

impl<const N: usize> Serialize for Hilbert<N> {
    /// `[[e1, .., eN, coeff], ...]` in increasing exponent order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Row<'a, const N: usize>(&'a [i64; N], u64);
        impl<const N: usize> Serialize for Row<'_, N> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(N + 1))?;
                for e in self.0 {
                    seq.serialize_element(e)?;
                }
                seq.serialize_element(&self.1)?;
                seq.end()
            }
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, &c) in &self.coeffs {
            seq.serialize_element(&Row(e, c))?;
        }
        seq.end()
    }
}

/// Power series in a distinguished variable `s`, truncated after `s^order`,
/// whose coefficients are Hilbert series in the remaining `N` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<const N: usize> {
    order: usize,
    coeffs: Vec<Hilbert<N>>,
}

impl<const N: usize> TruncatedSeries<N> {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Hilbert::new(); order + 1];
        coeffs[0] = Hilbert::one();
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `s^k`; panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &Hilbert<N> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Hilbert<N>] {
        &self.coeffs
    }

    /// Sets every non-`s` variable to one: the list of totals per power of `s`.
    pub fn specialize(&self) -> Vec<u64> {
        self.coeffs.iter().map(Hilbert::total).collect()
    }

    pub fn map_exponents<const M: usize>(&self, f: impl Fn(&[i64; N]) -> [i64; M] + Copy) -> TruncatedSeries<M> {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|h| h.map_exponents(f)).collect(),
        }
    }
}

impl<const N: usize> Serialize for TruncatedSeries<N> {
    /// `[[s_power, hilbert], ...]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (k, h) in self.coeffs.iter().enumerate() {
            seq.serialize_element(&(k, h))?;
        }
        seq.end()
    }
}

/// One factor `1/(1 - m)` (geometric) or `1 + m` of a product, where the monomial
/// `m = s^s_exp * prod vars^exps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesFactor<const N: usize> {
    pub s_exp: u32,
    pub exps: [i64; N],
    pub geometric: bool,
}

impl<const N: usize> SeriesFactor<N> {
    pub fn geometric(s_exp: u32, exps: [i64; N]) -> Self {
        Self {
            s_exp,
            exps,
            geometric: true,
        }
    }

    pub fn linear(s_exp: u32, exps: [i64; N]) -> Self {
        Self {
            s_exp,
            exps,
            geometric: false,
        }
    }
}

/// Expands a product of factors up to `s^order`.
///
/// Factors with `s_exp > order` are dropped since they cannot contribute.
pub fn series_product<const N: usize>(
    factors: &[SeriesFactor<N>],
    order: usize,
) -> Result<TruncatedSeries<N>> {
    if factors.iter().any(|f| f.s_exp == 0) {
        return Err(Error::NonTruncating);
    }
    let mut out = TruncatedSeries::one(order);
    for f in factors {
        let step = f.s_exp as usize;
        if step > order {
            continue;
        }
        let m = Hilbert::monomial(f.exps, 1);
        if f.geometric {
            // c_k <- c_k + m * c_{k-step}, ascending so the update feeds itself.
            for k in step..=order {
                let add = out.coeffs[k - step].mul(&m);
                out.coeffs[k] = out.coeffs[k].add(&add);
            }
        } else {
            for k in (step..=order).rev() {
                let add = out.coeffs[k - step].mul(&m);
                out.coeffs[k] = out.coeffs[k].add(&add);
            }
        }
    }
    Ok(out)
}
