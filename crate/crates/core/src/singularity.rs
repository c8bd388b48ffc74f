//! Closed-form invariants of isolated quasi-homogeneous surface singularities.
//!
//! # Gradings
//!
//! The listed du Val equations give the Poisson bracket weight `-2` in type A but
//! `-1` in types D and E. Every weighted output therefore names one of three
//! gradings:
//!
//! * [`Grading::Listed`]: the weights `a_i` of the equations as written.
//! * [`Grading::C2`]: induced from `C^2` (linear coordinates of weight one), so the
//!   bracket always has weight `-2`. Listed weights are doubled in types D, E.
//! * [`Grading::Paper`]: the normalization in which the Jacobi weights are
//!   `d_i - 2`, `d_i` the Weyl group degrees; the bracket has weight `-1`.
//!
//! Jacobi weights satisfy `listed = |bracket degree| * paper` and `c2 = 2 * paper`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    parse_polynomial, BigradedHilbert, GradedHilbert, Rational, WeightedPolynomial, WeightedRing,
};
use crate::poisson::SurfaceVariety;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Listed,
    C2,
    Paper,
}

impl Grading {
    pub const ALL: [Grading; 3] = [Grading::Listed, Grading::C2, Grading::Paper];

    pub fn name(self) -> &'static str {
        match self {
            Grading::Listed => "listed",
            Grading::C2 => "c2",
            Grading::Paper => "paper",
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Grading {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "listed" => Ok(Grading::Listed),
            "c2" => Ok(Grading::C2),
            "paper" => Ok(Grading::Paper),
            _ => Err(Error::InvalidArgument(format!(
                "unknown grading `{s}` (expected listed, c2 or paper)"
            ))),
        }
    }
}

/// Graded dimensions of `C[x]/(df)` for a generic quasi-homogeneous `f` of
/// degree `m` in weights `a`: `prod (1 - t^(m - a_i)) / (1 - t^(a_i))`.
pub fn jacobi_hilbert(weights: &[u32], m: i64) -> Result<GradedHilbert> {
    if weights.is_empty() || weights.contains(&0) {
        return Err(Error::InvalidArgument(format!("bad weights {weights:?}")));
    }
    if let Some(&a) = weights.iter().find(|&&a| m - a as i64 <= 0) {
        return Err(Error::InvalidArgument(format!(
            "degree {m} must exceed every weight, got weight {a}"
        )));
    }
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for &a in weights {
        num = mul_binomial(&num, (m - a as i64) as usize);
        den = mul_binomial(&den, a as usize);
    }
    let qdeg = num.len() - den.len();
    // den has constant term 1, so power-series division is exact in Z.
    let mut quot = vec![0i128; qdeg + 1];
    for k in 0..=qdeg {
        let mut c = num[k];
        for j in 1..=k.min(den.len() - 1) {
            c -= den[j] * quot[k - j];
        }
        quot[k] = c;
    }
    let mut check = vec![0i128; num.len()];
    for (i, &q) in quot.iter().enumerate() {
        for (j, &d) in den.iter().enumerate() {
            check[i + j] += q * d;
        }
    }
    if check != num || quot.iter().any(|&c| c < 0) {
        return Err(Error::NotIsolated);
    }
    Ok(GradedHilbert::from_terms(
        quot.iter()
            .enumerate()
            .map(|(k, &c)| ([k as i64], c as u64)),
    ))
}

/// `p(t) * (1 - t^k)`.
fn mul_binomial(p: &[i128], k: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + k];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + k] -= c;
    }
    out
}

/// Milnor number `prod (m - a_i) / a_i`, when it is an integer.
pub fn milnor_number(weights: &[u32], m: i64) -> Option<u64> {
    let num: i128 = weights.iter().map(|&a| (m - a as i64) as i128).product();
    let den: i128 = weights.iter().map(|&a| a as i128).product();
    (num > 0 && num % den == 0).then(|| (num / den) as u64)
}

/// Whether `dim_w = dim_{top - w}` for all `w`.
pub fn is_palindromic(h: &GradedHilbert, top: i64) -> bool {
    h.terms().all(|(e, &c)| h.get(&[top - e[0]]) == c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DuValType {
    /// `A_k`, `k >= 1`.
    A(u32),
    /// `D_k`, `k >= 4`.
    D(u32),
    E6,
    E7,
    E8,
}

impl DuValType {
    /// A_1..A_5, D_4, D_5, E_6, E_7, E_8.
    pub fn standard_list() -> Vec<DuValType> {
        let mut v: Vec<_> = (1..=5).map(DuValType::A).collect();
        v.extend([DuValType::D(4), DuValType::D(5), DuValType::E6, DuValType::E7, DuValType::E8]);
        v
    }

    pub fn rank(self) -> u32 {
        match self {
            DuValType::A(k) | DuValType::D(k) => k,
            DuValType::E6 => 6,
            DuValType::E7 => 7,
            DuValType::E8 => 8,
        }
    }

    pub fn weyl_degrees(self) -> Vec<i64> {
        let mut d: Vec<i64> = match self {
            DuValType::A(k) => (2..=k as i64 + 1).collect(),
            DuValType::D(k) => (1..k as i64).map(|i| 2 * i).chain([k as i64]).collect(),
            DuValType::E6 => vec![2, 5, 6, 8, 9, 12],
            DuValType::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            DuValType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        };
        d.sort_unstable();
        d
    }

    pub fn coxeter_number(self) -> i64 {
        match self {
            DuValType::A(k) => k as i64 + 1,
            DuValType::D(k) => 2 * k as i64 - 2,
            DuValType::E6 => 12,
            DuValType::E7 => 18,
            DuValType::E8 => 30,
        }
    }

    /// Weights and equation in the listed coordinates.
    fn listed(self) -> ([u32; 3], String) {
        match self {
            DuValType::A(k) => {
                let m = k + 1;
                ([2, m, m], format!("x1^{m} + x2^2 + x3^2"))
            }
            DuValType::D(k) => {
                let m = k - 2;
                ([2, m, m + 1], format!("x1^{} + x1*x2^2 + x3^2", m + 1))
            }
            DuValType::E6 => ([3, 4, 6], "x1^4 + x2^3 + x3^2".into()),
            DuValType::E7 => ([4, 6, 9], "x1^3*x2 + x2^3 + x3^2".into()),
            DuValType::E8 => ([6, 10, 15], "x1^5 + x2^3 + x3^2".into()),
        }
    }
}

impl fmt::Display for DuValType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DuValType::A(k) => write!(f, "A{k}"),
            DuValType::D(k) => write!(f, "D{k}"),
            DuValType::E6 => write!(f, "E6"),
            DuValType::E7 => write!(f, "E7"),
            DuValType::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for DuValType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let t = s.trim().replace('_', "");
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let k: u32 = chars.as_str().parse().map_err(|_| unknown())?;
        match (letter, k) {
            ('A', k) if k >= 1 => Ok(DuValType::A(k)),
            ('D', k) if k >= 4 => Ok(DuValType::D(k)),
            ('E', 6) => Ok(DuValType::E6),
            ('E', 7) => Ok(DuValType::E7),
            ('E', 8) => Ok(DuValType::E8),
            _ => Err(unknown()),
        }
    }
}

/// Classification data of one du Val singularity.
#[derive(Clone, Debug)]
pub struct DuValRecord {
    pub kind: DuValType,
    pub weights: [u32; 3],
    pub equation: WeightedPolynomial,
    pub fdegree: i64,
    pub weyl_degrees: Vec<i64>,
    pub coxeter_number: i64,
    pub milnor: u64,
    /// `fdegree - sum weights`: -2 in type A, -1 in types D, E.
    pub bracket_degree: i64,
    /// Jacobi weights recomputed from the weight data, in listed coordinates.
    jacobi_listed: GradedHilbert,
}

impl DuValRecord {
    pub fn new(kind: DuValType) -> Result<Self> {
        let (weights, eq) = kind.listed();
        let ring = WeightedRing::new(weights.to_vec())?;
        let equation = parse_polynomial(&eq, &ring)?;
        let fdegree = equation
            .homogeneous_degree()
            .ok_or_else(|| Error::NotQuasiHomogeneous {
                weights: weights.to_vec(),
            })?;
        let jacobi_listed = jacobi_hilbert(&weights, fdegree)?;
        let bracket_degree = fdegree - ring.weight_sum();
        Ok(Self {
            kind,
            weights,
            equation,
            fdegree,
            weyl_degrees: kind.weyl_degrees(),
            coxeter_number: kind.coxeter_number(),
            milnor: jacobi_listed.total(),
            bracket_degree,
            jacobi_listed,
        })
    }

    pub fn label(&self) -> String {
        self.kind.to_string()
    }

    /// Factor by which listed weights are multiplied to reach `grading`, as a
    /// fraction `(num, den)`.
    fn scale(&self, grading: Grading) -> (i64, i64) {
        let b = self.bracket_degree.abs();
        match grading {
            Grading::Listed => (1, 1),
            Grading::C2 => (2, b),
            Grading::Paper => (1, b),
        }
    }

    fn rescale(&self, x: i64, grading: Grading) -> Option<i64> {
        let (num, den) = self.scale(grading);
        let v = x * num;
        (v % den == 0).then_some(v / den)
    }

    /// Variable weights in `grading`, if integral (paper weights in type A
    /// with odd `m` are not).
    pub fn weights_in(&self, grading: Grading) -> Option<[u32; 3]> {
        let mut out = [0u32; 3];
        for (o, &a) in out.iter_mut().zip(&self.weights) {
            *o = self.rescale(a as i64, grading)? as u32;
        }
        Some(out)
    }

    /// `|f|` in `grading`. Also the `t`-step of the symmetric-power product.
    pub fn fdegree_in(&self, grading: Grading) -> i64 {
        self.rescale(self.fdegree, grading)
            .expect("fdegree is divisible by the bracket degree")
    }

    /// Jacobi Hilbert series in `grading`.
    pub fn jacobi_weights(&self, grading: Grading) -> GradedHilbert {
        GradedHilbert::from_terms(self.jacobi_listed.terms().map(|(e, &c)| {
            let w = self
                .rescale(e[0], grading)
                .expect("Jacobi weights are multiples of the bracket degree");
            ([w], c)
        }))
    }

    /// Jacobi weights recomputed from the equation equal `|bracket degree| * (d_i - 2)`.
    pub fn self_check(&self) -> bool {
        let b = self.bracket_degree.abs();
        let expected = GradedHilbert::from_terms(self.weyl_degrees.iter().map(|&d| ([b * (d - 2)], 1)));
        let paper = GradedHilbert::from_terms(self.weyl_degrees.iter().map(|&d| ([d - 2], 1)));
        expected == self.jacobi_listed
            && paper == self.jacobi_weights(Grading::Paper)
            && self.milnor as usize == self.weyl_degrees.len()
    }

    /// The surface `{f = 0}` with its Jacobian Poisson structure in `grading`.
    pub fn surface(&self, grading: Grading) -> Result<SurfaceVariety> {
        let weights = self.weights_in(grading).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} has non-integral weights in the {grading} grading",
                self.label()
            ))
        })?;
        let ring = WeightedRing::new(weights.to_vec())?;
        SurfaceVariety::hypersurface(self.equation.with_ring(&ring)?)
    }

    pub fn report(&self, grading: Grading) -> DuValReport {
        DuValReport {
            label: self.label(),
            grading,
            weights: self.weights_in(grading),
            equation: self.equation.to_string(),
            fdegree: self.fdegree_in(grading),
            weyl_degrees: self.weyl_degrees.clone(),
            coxeter_number: self.coxeter_number,
            jacobi_weights: self.jacobi_weights(grading).exponents(),
            milnor: self.milnor,
        }
    }
}

/// JSON form of a [`DuValRecord`] in one grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DuValReport {
    pub label: String,
    pub grading: Grading,
    pub weights: Option<[u32; 3]>,
    pub equation: String,
    pub fdegree: i64,
    pub weyl_degrees: Vec<i64>,
    pub coxeter_number: i64,
    pub jacobi_weights: Vec<i64>,
    pub milnor: u64,
}

pub fn duval_record(label: &str) -> Result<DuValRecord> {
    DuValRecord::new(label.parse()?)
}

/// Simple elliptic families, all with bracket degree zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticFamily {
    E6,
    E7,
    E8,
}

impl EllipticFamily {
    pub const ALL: [EllipticFamily; 3] = [EllipticFamily::E6, EllipticFamily::E7, EllipticFamily::E8];

    pub fn weights(self) -> [u32; 3] {
        match self {
            EllipticFamily::E6 => [1, 1, 1],
            EllipticFamily::E7 => [1, 1, 2],
            EllipticFamily::E8 => [1, 2, 3],
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            EllipticFamily::E6 => 3,
            EllipticFamily::E7 => 4,
            EllipticFamily::E8 => 6,
        }
    }

    pub fn equation(self, lambda: &Rational) -> Result<WeightedPolynomial> {
        let ring = WeightedRing::new(self.weights().to_vec())?;
        let base = match self {
            EllipticFamily::E6 => "x1^3 + x2^3 + x3^3",
            EllipticFamily::E7 => "x1^4 + x2^4 + x3^2",
            EllipticFamily::E8 => "x1^6 + x2^3 + x3^2",
        };
        let f = parse_polynomial(base, &ring)?;
        let cross = WeightedPolynomial::monomial(&ring, vec![1, 1, 1], lambda.clone());
        Ok(&f + &cross)
    }

    pub fn surface(self, lambda: &Rational) -> Result<SurfaceVariety> {
        SurfaceVariety::hypersurface(self.equation(lambda)?)
    }
}

impl fmt::Display for EllipticFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticFamily::E6 => write!(f, "E6~"),
            EllipticFamily::E7 => write!(f, "E7~"),
            EllipticFamily::E8 => write!(f, "E8~"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LedgerStatus {
    /// Established for quasi-homogeneous singularities.
    Theorem,
    Conjectural,
}

/// Multiplicities of the delta-function module `delta` in a composition series
/// of the canonical D-module `M(X)`, for an isolated singularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionLedger {
    pub ic_count: u64,
    /// Copies of `delta` below the intersection cohomology module.
    pub delta_below: u64,
    /// Copies of `delta` on top of the indecomposable summand.
    pub delta_top_ind: u64,
    /// Copies of `delta` split off as a direct summand.
    pub delta_summand: u64,
    pub b1_link: u64,
    pub status: LedgerStatus,
}

impl CompositionLedger {
    /// Ledger for an isolated singularity with Milnor number `milnor`, reduced
    /// genus `genus` and first Betti number of the link `b1_link`.
    pub fn new(milnor: u64, genus: u64, b1_link: u64, quasi_homogeneous: bool) -> Result<Self> {
        if genus > milnor {
            return Err(Error::InvalidArgument(format!(
                "reduced genus {genus} exceeds Milnor number {milnor}"
            )));
        }
        Ok(Self {
            ic_count: 1,
            delta_below: b1_link,
            delta_top_ind: genus,
            delta_summand: milnor - genus,
            b1_link,
            status: if quasi_homogeneous {
                LedgerStatus::Theorem
            } else {
                LedgerStatus::Conjectural
            },
        })
    }

    pub fn delta_total(&self) -> u64 {
        self.delta_below + self.delta_top_ind + self.delta_summand
    }

    /// Both presentations of `M(X)` count the same deltas.
    pub fn is_consistent(&self, milnor: u64) -> bool {
        self.delta_total() == milnor + self.b1_link && self.delta_top_ind + self.delta_summand == milnor
    }

    pub fn is_semisimple(&self) -> bool {
        self.delta_below == 0 && self.delta_top_ind == 0
    }
}

/// Invariants of the cone over a smooth plane curve of degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeCurve {
    pub degree: u64,
    pub genus: u64,
    pub milnor: u64,
    pub b1_link: u64,
    pub ledger: CompositionLedger,
}

pub fn cone_curve(d: u64) -> Result<ConeCurve> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "cone over a degree-{d} curve is smooth or empty; need d >= 2"
        )));
    }
    let genus = (d - 1) * (d - 2) / 2;
    let milnor = (d - 1).pow(3);
    let b1_link = 2 * genus;
    Ok(ConeCurve {
        degree: d,
        genus,
        milnor,
        b1_link,
        ledger: CompositionLedger::new(milnor, genus, b1_link, true)?,
    })
}

/// Dimensions of Poisson-de Rham homology in degrees 0, 1, 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HpdrProfile {
    pub dims: [u64; 3],
}

impl HpdrProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.dims[0] as i64 - self.dims[1] as i64 + self.dims[2] as i64
    }
}

/// Top cohomology shifted to degrees `2 - *`, plus `C^{mu_s}` in degree zero for
/// each singular point.
pub fn hpdr_surface(betti: [u64; 3], milnors: &[u64]) -> HpdrProfile {
    let mu: u64 = milnors.iter().sum();
    HpdrProfile {
        dims: [betti[2] + mu, betti[1], betti[0]],
    }
}

/// Rank of the vector bundle of `HP_0` over a smoothing: `b_2 + sum mu_s`.
pub fn smoothing_rank(betti2: u64, milnors: &[u64]) -> u64 {
    betti2 + milnors.iter().sum::<u64>()
}

/// Upper bound on the number of irreducible finite-dimensional representations
/// of any quantization: `dim HP_0`.
pub fn irrep_bound(hp0_total: u64) -> u64 {
    hp0_total
}

/// Bigraded `HP^DR` of a du Val surface from its `HP_0` series in the C2 grading:
/// `HP_0` in homological degree 0 (exponent of `x`) plus `C` in degree 2 and
/// weight `-2`. Keys are `[x, y]` with `y` the weight.
pub fn duval_hpdr_bigraded(hp0_c2: &GradedHilbert) -> BigradedHilbert {
    let mut out = hp0_c2.map_exponents(|e| [0, e[0]]);
    out.add_term([2, -2], 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_type_a() {
        for m in 2..8u32 {
            let h = jacobi_hilbert(&[2, m, m], 2 * m as i64).unwrap();
            assert_eq!(h.total(), (m - 1) as u64);
        }
    }

    #[test]
    fn jacobi_cone_over_curve() {
        for d in 2..7i64 {
            let h = jacobi_hilbert(&[1, 1, 1], d).unwrap();
            assert_eq!(h.total() as i64, (d - 1).pow(3));
        }
        assert_eq!(
            jacobi_hilbert(&[1, 1, 1], 3).unwrap(),
            GradedHilbert::from_pairs(&[(0, 1), (1, 3), (2, 3), (3, 1)])
        );
    }

    #[test]
    fn jacobi_rejects_non_isolated_data() {
        // weights (2,2,3) in degree 5: no pure power of x3 has degree 5.
        assert_eq!(jacobi_hilbert(&[2, 2, 3], 5), Err(Error::NotIsolated));
        assert!(jacobi_hilbert(&[1, 2], 2).is_err());
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&[6, 10, 15], 30), Some(8));
        assert_eq!(milnor_number(&[2, 2, 3], 5), None);
        assert_eq!(milnor_number(&[1, 1, 2], 3), Some(2));
    }

    #[test]
    fn duval_e8() {
        let r = duval_record("E8").unwrap();
        assert_eq!(r.weyl_degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
        assert_eq!(r.milnor, 8);
        assert_eq!(r.jacobi_weights(Grading::Paper).exponents(), vec![0, 6, 10, 12, 16, 18, 22, 28]);
        assert_eq!(r.jacobi_weights(Grading::C2).exponents(), vec![0, 12, 20, 24, 32, 36, 44, 56]);
        assert_eq!(r.fdegree_in(Grading::C2), 60);
        assert!(r.self_check());
    }

    #[test]
    fn duval_a1_and_d4() {
        let a1 = duval_record("A1").unwrap();
        assert_eq!(a1.milnor, 1);
        assert_eq!(a1.coxeter_number, 2);
        assert_eq!(a1.jacobi_weights(Grading::Paper).exponents(), vec![0]);
        assert_eq!(a1.fdegree_in(Grading::C2), 4);
        let d4 = duval_record("D_4").unwrap();
        assert_eq!(d4.weyl_degrees, vec![2, 4, 4, 6]);
        assert_eq!(d4.milnor, 4);
        assert_eq!(d4.jacobi_weights(Grading::Listed).exponents(), vec![0, 2, 2, 4]);
        assert!(duval_record("E9").is_err());
        assert!(duval_record("D3").is_err());
        assert!(duval_record("").is_err());
    }

    #[test]
    fn all_records_self_check_and_are_palindromic() {
        for kind in DuValType::standard_list().into_iter().chain([DuValType::A(9), DuValType::D(7)]) {
            let r = DuValRecord::new(kind).unwrap();
            assert!(r.self_check(), "{kind}");
            let socle: i64 = r.weights.iter().map(|&a| r.fdegree - 2 * a as i64).sum();
            assert!(is_palindromic(&r.jacobi_weights(Grading::Listed), socle), "{kind}");
        }
    }

    #[test]
    fn paper_weights_may_be_fractional() {
        let a2 = duval_record("A2").unwrap();
        assert_eq!(a2.weights_in(Grading::Paper), None);
        assert!(a2.surface(Grading::Paper).is_err());
        assert_eq!(a2.weights_in(Grading::C2), Some([2, 3, 3]));
    }

    #[test]
    fn cone_curve_ledgers() {
        let c = cone_curve(3).unwrap();
        assert_eq!((c.genus, c.milnor), (1, 8));
        assert_eq!((c.ledger.delta_below, c.ledger.delta_top_ind, c.ledger.delta_summand), (2, 1, 7));
        let c = cone_curve(2).unwrap();
        assert_eq!((c.genus, c.milnor), (0, 1));
        assert!(c.ledger.is_semisimple());
        let c = cone_curve(4).unwrap();
        assert_eq!((c.ledger.delta_below, c.ledger.delta_top_ind, c.ledger.delta_summand), (6, 3, 24));
        assert!(c.ledger.is_consistent(c.milnor));
        assert!(cone_curve(1).is_err());
    }

    #[test]
    fn hpdr_and_smoothing() {
        assert_eq!(hpdr_surface([1, 0, 0], &[8]).dims, [8, 0, 1]);
        assert_eq!(hpdr_surface([1, 0, 1], &[]).dims, [1, 0, 1]);
        assert_eq!(hpdr_surface([1, 0, 0], &[1, 1]).dims, [2, 0, 1]);
        assert_eq!(smoothing_rank(0, &[8]), 8);
        assert_eq!(smoothing_rank(5, &[]), 5);
        assert_eq!(smoothing_rank(2, &[3, 5]), 10);
        for x in [0, 1, 8] {
            assert_eq!(irrep_bound(x), x);
        }
        let p = hpdr_surface([1, 2, 3], &[4, 5]);
        assert_eq!(p.euler_characteristic(), (1 - 2 + 3) + 9);
    }

    #[test]
    fn grading_names() {
        for g in Grading::ALL {
            assert_eq!(g.name().parse::<Grading>().unwrap(), g);
        }
        assert!("weird".parse::<Grading>().is_err());
    }
}
