//! Registered cross-checks: each compares two independent computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ptrace_core::exact::{graded_monomials, BigradedHilbert, GradedHilbert, WeightedPolynomial};
use ptrace_core::kostka::{kostka, lusztig_nilcone, maj, walgebra_hp0_with, Partition, StandardTableau};
use ptrace_core::matroid::{hpdr_hypertoric, VectorMatroid};
use ptrace_core::poisson::SurfaceVariety;
use ptrace_core::singularity::{
    cone_curve, duval_hpdr_bigraded, jacobi_hilbert, DuValRecord, DuValType, EllipticFamily, Grading,
};
use ptrace_core::sympow::{
    a, a_by_enumeration, duval_hp0_sympow_series, hpdr_sympow_duval_series, relabel_tu_to_xy, twistor_orders_duval,
};
use ptrace_core::Result;

use crate::report::{CheckResult, Report};
use crate::duval_hp0;

fn outcome(ok: bool, pass: impl FnOnce() -> String, fail: impl FnOnce() -> String) -> std::result::Result<String, String> {
    if ok {
        Ok(pass())
    } else {
        Err(fail())
    }
}

/// Brute-force `HP_0` of a du Val surface against the Jacobi closed form.
pub fn duval_bracket(record: &DuValRecord, budget: u64) -> Result<CheckResult> {
    let (brute, _) = duval_hp0(record, Grading::Listed, budget)?;
    let closed = jacobi_hilbert(&record.weights, record.fdegree)?;
    let label = record.label();
    Ok(CheckResult::new(
        &format!("bracket-vs-closed-form {label}"),
        "hp0-brute-force vs jacobi-hilbert",
        outcome(
            brute == closed && brute.total() == record.milnor,
            || format!("{label}: total {} = mu", brute.total()),
            || format!("{label}: brute force {:?} vs closed form {:?}", brute.pairs(), closed.pairs()),
        ),
    ))
}

/// Brute-force `HP_0` of an isolated hypersurface against the Jacobi closed form.
pub fn surface_bracket(surface: &SurfaceVariety, brute: &GradedHilbert) -> Result<CheckResult> {
    let weights: Vec<u32> = surface.ring().weights().to_vec();
    let closed = jacobi_hilbert(&weights, surface.degrees()[0])?;
    Ok(CheckResult::new(
        "bracket-vs-closed-form",
        "hp0-brute-force vs jacobi-hilbert",
        outcome(
            *brute == closed,
            || format!("total {}", brute.total()),
            || format!("brute force {:?} vs closed form {:?}", brute.pairs(), closed.pairs()),
        ),
    ))
}

pub fn elliptic_anchor(budget: u64) -> Result<CheckResult> {
    let expected = GradedHilbert::from_pairs(&[(0, 1), (1, 3), (2, 3), (3, 1)]);
    let mut bad = Vec::new();
    for lambda in [0, 1] {
        let s = EllipticFamily::E6.surface(&BigRational::from_integer(BigInt::from(lambda)))?;
        let p = s.hp0_auto(None, budget)?;
        if p.dims != expected {
            bad.push(format!("lambda={lambda}: {:?}", p.dims.pairs()));
        }
    }
    Ok(CheckResult::new(
        "elliptic-e6-anchor",
        "hp0-brute-force vs jacobi-hilbert",
        outcome(bad.is_empty(), || "(1,3,3,1) at lambda 0 and 1".into(), || bad.join("; ")),
    ))
}

pub fn multipartitions(n_max: usize, i_max: usize) -> CheckResult {
    let bad: Vec<String> = (0..=n_max)
        .flat_map(|n| (0..=i_max).map(move |i| (n, i)))
        .filter(|&(n, i)| a(n, i) != a_by_enumeration(n, i))
        .map(|(n, i)| format!("a({n},{i})"))
        .collect();
    CheckResult::new(
        "product-vs-enumeration",
        "multipartition-product vs multipartition-enumeration",
        outcome(
            bad.is_empty(),
            || format!("n <= {n_max}, i <= {i_max}"),
            || format!("mismatch at {}", bad.join(", ")),
        ),
    )
}

/// Total dimensions of both symmetric-power series against `a_n(mu)` and `a_n(mu+1)`.
pub fn sympow_specializations(record: &DuValRecord, grading: Grading, order: usize) -> Result<CheckResult> {
    let mu = record.milnor as usize;
    let hp0 = duval_hp0_sympow_series(record, grading, order)?.series.specialize();
    let dr = hpdr_sympow_duval_series(record, grading, order)?.series.specialize();
    let want0: Vec<u64> = (0..=order).map(|n| a_by_enumeration(n, mu)).collect();
    let want1: Vec<u64> = (0..=order).map(|n| a_by_enumeration(n, mu + 1)).collect();
    let label = record.label();
    Ok(CheckResult::new(
        &format!("sympow-specialization {label}"),
        "sympow-hp0-product at t=1 vs multipartition-enumeration",
        outcome(
            hp0 == want0 && dr == want1,
            || format!("{label}: s-order {order}"),
            || format!("{label}: {hp0:?} vs {want0:?}, {dr:?} vs {want1:?}"),
        ),
    )
    .weak(order == 0))
}

pub fn kostka_counts(n_max: u32) -> CheckResult {
    let bad: Vec<String> = (0..=n_max)
        .flat_map(Partition::all)
        .filter(|l| u128::from(kostka(l).total()) != l.hook_length_count())
        .map(|l| l.to_string())
        .collect();
    CheckResult::new(
        "kostka-at-one",
        "kostka-maj vs hook-length-formula",
        outcome(bad.is_empty(), || format!("|lambda| <= {n_max}"), || bad.join(", ")),
    )
}

/// `sum_lambda K_lambda(1)^2 = n!`.
pub fn lusztig_total(n: u32) -> Result<CheckResult> {
    let l = lusztig_nilcone(n)?;
    let fact: u64 = (1..=u64::from(n)).product();
    let mut c = CheckResult::new(
        "lusztig-total",
        "lusztig-sum at x=y=1 vs n!",
        outcome(l.total() == fact, || format!("{fact}"), || format!("{} vs {fact}", l.total())),
    );
    if n == 2 {
        let anchor = BigradedHilbert::from_terms([([0, 0], 1), ([2, -2], 1)]);
        if l != anchor {
            c = CheckResult::new("lusztig-total", "lusztig-sum vs 1 + x^2*y^-2", Err(format!("{l:?}")));
        }
    }
    Ok(c)
}

/// W-algebra of the subregular orbit of `sl_n` against brute-force `A_{n-1}` in the C2 grading.
pub fn kostka_vs_duval(n: u32, stat: &dyn Fn(&StandardTableau) -> i64, budget: u64) -> Result<CheckResult> {
    let lambda = Partition::new(vec![n - 1, 1])?;
    let w = walgebra_hp0_with(&lambda, stat);
    let record = DuValRecord::new(DuValType::A(n - 1))?;
    let (brute, _) = duval_hp0(&record, Grading::C2, budget)?;
    Ok(CheckResult::new(
        &format!("kostka-vs-duval A{}", n - 1),
        "walgebra-kostka vs hp0-brute-force",
        outcome(
            w == brute,
            || format!("{:?}", brute.pairs()),
            || format!("walgebra {:?} vs A{} {:?}", w.pairs(), n - 1, brute.pairs()),
        ),
    ))
}

/// Flats formula on `U_{1,m}` against du Val `A_{m-1}` Poisson-de Rham data.
pub fn hypertoric_vs_duval(m: usize, budget: u64) -> Result<CheckResult> {
    let u = VectorMatroid::from_rows(&[vec![1; m]])?;
    let h = hpdr_hypertoric(&u)?.series;
    let record = DuValRecord::new(DuValType::A(m as u32 - 1))?;
    let (brute, _) = duval_hp0(&record, Grading::C2, budget)?;
    let duval = duval_hpdr_bigraded(&brute);
    Ok(CheckResult::new(
        &format!("hypertoric-vs-duval U(1,{m})"),
        "hypertoric-flats-sum vs hp0-brute-force",
        outcome(h == duval, || format!("{} terms", h.len()), || format!("{h:?} vs {duval:?}")),
    ))
}

pub fn tutte_oracle(m: &VectorMatroid) -> CheckResult {
    let dc = m.tutte();
    let cn = m.tutte_corank_nullity();
    let dual = m.dual().tutte();
    CheckResult::new(
        "deletion-contraction-vs-corank-nullity",
        "tutte-deletion-contraction vs tutte-corank-nullity",
        outcome(
            dc == cn && dual == dc.swapped(),
            || format!("T = {dc}"),
            || format!("deletion-contraction {dc}, corank-nullity {cn}, dual {dual}"),
        ),
    )
}

pub fn random_tutte(trials: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..trials {
        let cols = rng.gen_range(1..=8);
        let rows = rng.gen_range(1..=4);
        let matrix: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if !tutte_oracle(&VectorMatroid::from_rows(&matrix)?).passed {
            bad.push(format!("{matrix:?}"));
        }
    }
    Ok(CheckResult::new(
        "deletion-contraction-vs-corank-nullity",
        "tutte-deletion-contraction vs tutte-corank-nullity",
        outcome(bad.is_empty(), || format!("{trials} random matrices"), || bad.join("; ")),
    ))
}

pub fn cone_ledger(d: u64) -> Result<CheckResult> {
    let c = cone_curve(d)?;
    let l = &c.ledger;
    let first = l.delta_summand + l.delta_top_ind + l.delta_below;
    let second = c.milnor + 2 * c.genus;
    Ok(CheckResult::new(
        &format!("cone-curve-ledger d={d}"),
        "composition-series vs delta-count",
        outcome(
            first == second && l.is_consistent(c.milnor),
            || format!("{first} deltas"),
            || format!("{first} vs {second}"),
        ),
    ))
}

pub fn twistor(record: &DuValRecord) -> Result<CheckResult> {
    let t = twistor_orders_duval(record)?;
    let tri = hpdr_sympow_duval_series(record, Grading::C2, 1)?;
    let coeff = relabel_tu_to_xy(tri.series.coeff(1));
    let rec = t.reconstruction();
    let label = record.label();
    Ok(CheckResult::new(
        &format!("twistor-reconstruction {label}"),
        "twistor-orders vs sympow-hpdr-product",
        outcome(
            rec == coeff && t.phi.get(&(0, 1)) == Some(&0),
            || format!("{label}: orders {:?}", t.top_orders()),
            || format!("{label}: {rec:?} vs {coeff:?}"),
        ),
    ))
}

fn random_homogeneous(surface: &SurfaceVariety, rng: &mut StdRng, max_w: i64) -> WeightedPolynomial {
    let ring = surface.ring();
    loop {
        let monos = graded_monomials(ring, rng.gen_range(0..=max_w));
        let terms = monos.into_iter().filter_map(|e| {
            let c: i64 = rng.gen_range(-3..=3);
            (c != 0).then(|| (e, BigRational::from_integer(BigInt::from(c))))
        });
        let p = WeightedPolynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Jacobi identity modulo the defining ideal on random homogeneous triples.
pub fn jacobi_identity(surface: &SurfaceVariety, triples: usize, seed: u64) -> Result<CheckResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let max_w = 2 * surface.ring().max_weight() as i64;
    let mut failures = 0;
    for _ in 0..triples {
        let f = random_homogeneous(surface, &mut rng, max_w);
        let g = random_homogeneous(surface, &mut rng, max_w);
        let h = random_homogeneous(surface, &mut rng, max_w);
        let fg = surface.bracket(&f, &g)?;
        let gh = surface.bracket(&g, &h)?;
        let hf = surface.bracket(&h, &f)?;
        let sum = surface
            .bracket(&f, &gh)?
            .try_add(&surface.bracket(&g, &hf)?)?
            .try_add(&surface.bracket(&h, &fg)?)?;
        if !surface.in_ideal(&sum) {
            failures += 1;
        }
    }
    Ok(CheckResult::new(
        "jacobi-identity",
        "jacobian-bracket vs ideal membership",
        outcome(
            failures == 0,
            || format!("{triples} random triples"),
            || format!("{failures} of {triples} triples fail"),
        ),
    ))
}

/// Options for [`verify_with`]; the tableau statistic is replaceable for mutation testing.
pub struct VerifyOptions<'a> {
    pub order: usize,
    pub budget: u64,
    pub stat: &'a dyn Fn(&StandardTableau) -> i64,
}

/// The full registered suite with the standard tableau statistic.
pub fn verify_all(order: usize, budget: u64) -> Result<Report> {
    verify_with(&VerifyOptions {
        order,
        budget,
        stat: &|t| maj(t) as i64,
    })
}

pub fn verify_with(opts: &VerifyOptions<'_>) -> Result<Report> {
    let mut r = Report::new("verify");
    r.input("order", opts.order);
    r.provenance.grading = Some(Grading::C2.to_string());
    let records: Vec<DuValRecord> = DuValType::standard_list()
        .into_iter()
        .map(DuValRecord::new)
        .collect::<Result<_>>()?;
    for rec in &records {
        r.check(duval_bracket(rec, opts.budget)?);
    }
    r.check(elliptic_anchor(opts.budget)?);
    r.check(multipartitions(20, 5));
    for rec in &records {
        r.check(sympow_specializations(rec, Grading::C2, opts.order)?);
    }
    r.check(kostka_counts(8));
    r.check(lusztig_total(2)?);
    for n in 2..=5 {
        r.check(kostka_vs_duval(n, opts.stat, opts.budget)?);
    }
    for m in 2..=5 {
        r.check(hypertoric_vs_duval(m, opts.budget)?);
    }
    r.check(random_tutte(100, 0x7475_7474)?);
    for d in 2..=6 {
        r.check(cone_ledger(d)?);
    }
    for rec in &records {
        r.check(twistor(rec)?);
    }
    for (i, rec) in records.iter().enumerate() {
        let mut c = jacobi_identity(&rec.surface(Grading::Listed)?, 50, i as u64)?;
        c.name = format!("jacobi-identity {}", rec.label());
        r.check(c);
    }
    let passed = r.provenance.checks.iter().filter(|c| c.passed).count();
    r.value("checks_passed", "check-count", passed);
    r.value("checks_total", "check-count", r.provenance.checks.len());
    Ok(r.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledgers_and_multipartitions_pass() {
        assert!(multipartitions(8, 3).passed);
        assert!((2..5).all(|d| cone_ledger(d).unwrap().passed));
        assert!(cone_ledger(1).is_err());
    }

    #[test]
    fn zero_order_is_weak() {
        let rec = DuValRecord::new(DuValType::A(1)).unwrap();
        let c = sympow_specializations(&rec, Grading::C2, 0).unwrap();
        assert!(c.passed && c.weak);
        assert!(!sympow_specializations(&rec, Grading::C2, 3).unwrap().weak);
    }
}
