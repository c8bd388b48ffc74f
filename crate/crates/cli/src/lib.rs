//! Request dispatch and report assembly for the `ptrace` command-line tool.

pub mod args;
pub mod checks;
pub mod report;

use std::io::Read;

use thiserror::Error;

use ptrace_core::exact::{parse_polynomial, parse_rational, GradedHilbert, WeightedRing};
use ptrace_core::kostka::{kostka, lusztig_nilcone, orbit_dim, walgebra_hp0, Partition};
use ptrace_core::matroid::{hpdr_hypertoric, VectorMatroid};
use ptrace_core::poisson::{Hp0Profile, SurfaceVariety, DEFAULT_BUDGET};
use ptrace_core::singularity::{
    cone_curve, hpdr_surface, jacobi_hilbert, DuValRecord, DuValType, EllipticFamily, Grading,
};
use ptrace_core::sympow::{a, duval_hp0_sympow_series, hpdr_sympow_duval_series, twistor_orders_duval};

pub use checks::{verify_all, verify_with, VerifyOptions};
pub use report::{Certification, CheckResult, Report, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ptrace_core::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 usage, 2 parse, 3 resource budget.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(ptrace_core::Error::Parse { .. }) => 2,
            CliError::Core(ptrace_core::Error::Budget { .. }) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arrangement {
    /// Hyperplane normals, one row per ambient coordinate.
    Normals(Vec<Vec<i64>>),
    /// Torus weight matrix; the normals are its Gale dual.
    Weights(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    DuVal { label: String, hp0: bool },
    Surface { equation: String, weights: Vec<u32>, hp0: bool, wmax: Option<i64> },
    CiSurface { equations: Vec<String>, weights: Vec<u32>, wmax: Option<i64> },
    Sympow { label: String, order: usize },
    Nilcone { n: u32 },
    Slice { partition: Partition },
    Elliptic { family: String, lambda: String, wmax: Option<i64> },
    Hypertoric { arrangement: Arrangement },
    Multipartition { n: usize, i: usize },
    ConeCurve { d: u64 },
    Verify { order: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub grading: Grading,
    pub format: Format,
    pub verify: bool,
    pub budget: u64,
}

impl Request {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            grading: Grading::Listed,
            format: Format::Text,
            verify: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Reads a polynomial payload, taking `-` to mean standard input.
pub fn read_payload(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s.trim().to_string())
    } else {
        Ok(src.to_string())
    }
}

/// Multiplier `(num, den)` from listed weights to `grading`, for bracket degree `b`.
fn grading_scale(grading: Grading, b: i64) -> Result<(i64, i64)> {
    match grading {
        Grading::Listed => Ok((1, 1)),
        _ if b == 0 => Err(CliError::Usage(format!(
            "the {grading} grading needs a nonzero bracket degree; use --grading listed"
        ))),
        Grading::C2 => Ok((2, b.abs())),
        Grading::Paper => Ok((1, b.abs())),
    }
}

fn regrade(h: &GradedHilbert, grading: Grading, b: i64) -> Result<GradedHilbert> {
    let (num, den) = grading_scale(grading, b)?;
    let mut out = GradedHilbert::new();
    for (e, &c) in h.terms() {
        let v = e[0] * num;
        if v % den != 0 {
            return Err(CliError::Usage(format!("weight {} is not integral in the {grading} grading", e[0])));
        }
        out.add_term([v / den], c);
    }
    Ok(out)
}

/// Brute-force `HP_0` of a du Val surface, computed in listed coordinates and
/// re-expressed in `grading`.
pub fn duval_hp0(record: &DuValRecord, grading: Grading, budget: u64) -> ptrace_core::Result<(GradedHilbert, Hp0Profile)> {
    let profile = record.surface(Grading::Listed)?.hp0_auto(None, budget)?;
    let dims = regrade(&profile.dims, grading, record.bracket_degree).map_err(|e| match e {
        CliError::Core(c) => c,
        other => ptrace_core::Error::InvalidArgument(other.to_string()),
    })?;
    Ok((dims, profile))
}

fn certification(p: &Hp0Profile, rule: &str) -> Certification {
    Certification {
        certified_through: p.certified_through,
        stabilization_window: p.stabilization_window,
        rule: rule.into(),
    }
}

/// Parses `1,1,1` into weights.
pub fn weights_arg(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for part in s.split(',') {
        let t = part.trim();
        let w = t.parse::<u32>().map_err(|_| ptrace_core::Error::Parse {
            pos,
            msg: format!("expected a positive integer weight, found {t:?}"),
        })?;
        out.push(w);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Parses a JSON-style integer matrix such as `[[1,1],[0,1]]`.
pub fn matrix_arg(s: &str) -> Result<Vec<Vec<i64>>> {
    serde_json::from_str(s).map_err(|e| {
        let line_start: usize = s.split('\n').take(e.line().saturating_sub(1)).map(|l| l.len() + 1).sum();
        CliError::Core(ptrace_core::Error::Parse {
            pos: line_start + e.column().saturating_sub(1),
            msg: format!("invalid integer matrix: {e}"),
        })
    })
}

/// Dispatches to the owning module and, with `verify`, attaches the registered checks.
pub fn run(req: &Request) -> Result<Report> {
    let report = match &req.command {
        Command::DuVal { label, hp0 } => run_duval(req, label, *hp0)?,
        Command::Surface { equation, weights, hp0, wmax } => run_surface(req, equation, weights, *hp0, *wmax)?,
        Command::CiSurface { equations, weights, wmax } => run_ci_surface(req, equations, weights, *wmax)?,
        Command::Sympow { label, order } => run_sympow(req, label, *order)?,
        Command::Nilcone { n } => run_nilcone(req, *n)?,
        Command::Slice { partition } => run_slice(req, partition)?,
        Command::Elliptic { family, lambda, wmax } => run_elliptic(req, family, lambda, *wmax)?,
        Command::Hypertoric { arrangement } => run_hypertoric(req, arrangement)?,
        Command::Multipartition { n, i } => run_multipartition(req, *n, *i),
        Command::ConeCurve { d } => run_cone_curve(req, *d)?,
        Command::Verify { order } => verify_all(*order, req.budget)?,
    };
    Ok(report.finish())
}

fn run_duval(req: &Request, label: &str, hp0: bool) -> Result<Report> {
    let rec = DuValRecord::new(label.parse::<DuValType>()?)?;
    let g = req.grading;
    let mut r = Report::new("duval");
    r.input("label", rec.label()).input("grading", g);
    r.provenance.grading = Some(g.to_string());
    let info = rec.report(g);
    r.value("equation", "duval-normal-form", &info.equation)
        .value("weights", "duval-normal-form", info.weights)
        .value("fdegree", "duval-normal-form", info.fdegree)
        .value("bracket_degree", "jacobian-bracket-degree", rec.bracket_degree)
        .value("milnor", "milnor-product", rec.milnor)
        .value("coxeter_number", "weyl-degrees", rec.coxeter_number)
        .value("weyl_degrees", "weyl-degrees", &rec.weyl_degrees)
        .value("jacobi_weights", "jacobi-hilbert", &info.jacobi_weights);
    r.table(Table::from_hilbert("jacobi", "jacobi-hilbert", g.name(), ["t"], &rec.jacobi_weights(g)));
    if hp0 || req.verify {
        let (dims, profile) = duval_hp0(&rec, g, req.budget)?;
        r.table(Table::from_hilbert("hp0", "hp0-brute-force", g.name(), ["t"], &dims));
        r.provenance.certification = Some(certification(&profile, "socle floor plus default window"));
    }
    if info.weights.is_none() {
        r.warn(format!("{} weights are not integral in the {g} grading", rec.label()));
    }
    if req.verify {
        r.check(checks::duval_bracket(&rec, req.budget)?);
        r.check(CheckResult::new(
            "weyl-degrees",
            "jacobi-hilbert vs weyl-degrees",
            if rec.self_check() { Ok("d_i - 2".into()) } else { Err("mismatch".into()) },
        ));
    }
    Ok(r)
}

fn surface_report(
    req: &Request,
    r: &mut Report,
    surface: &SurfaceVariety,
    wmax: Option<i64>,
) -> Result<GradedHilbert> {
    let b = surface.bracket_degree();
    let profile = match wmax {
        Some(w) => surface.hp0_dims(w, req.budget)?,
        None => surface.hp0_auto(None, req.budget)?,
    };
    let rule = match wmax {
        Some(_) => "explicit --wmax".to_string(),
        None => format!("socle floor plus window {}", surface.default_window()),
    };
    r.table(Table::from_hilbert(
        "hp0",
        "hp0-brute-force",
        req.grading.name(),
        ["t"],
        &regrade(&profile.dims, req.grading, b)?,
    ));
    r.value("hp0_total", "hp0-brute-force", profile.total);
    r.provenance.certification = Some(certification(&profile, &rule));
    Ok(profile.dims)
}

fn run_surface(req: &Request, equation: &str, weights: &[u32], hp0: bool, wmax: Option<i64>) -> Result<Report> {
    let ring = WeightedRing::new(weights.to_vec())?;
    let f = parse_polynomial(&read_payload(equation)?, &ring)?;
    let surface = SurfaceVariety::hypersurface(f.clone())?;
    let g = req.grading;
    let b = surface.bracket_degree();
    grading_scale(g, b)?;
    let mut r = Report::new("surface");
    r.input("f", &f).input("weights", ring);
    r.provenance.grading = Some(g.to_string());
    let m = surface.degrees()[0];
    r.value("fdegree", "weighted-degree", m).value("bracket_degree", "jacobian-bracket-degree", b);
    let cert = surface.is_isolated()?;
    r.value("isolated", "jacobi-ring-vanishing", cert.isolated);
    let mut closed = None;
    if cert.isolated {
        let j = jacobi_hilbert(weights, m)?;
        r.value("milnor", "milnor-product", j.total());
        r.table(Table::from_hilbert("jacobi", "jacobi-hilbert", g.name(), ["t"], &regrade(&j, g, b)?));
        closed = Some(j);
    } else {
        r.warn(format!(
            "singularity is not isolated: the Jacobi ring is nonzero in weights ({}, {}]; outside the hypotheses of the closed forms",
            cert.window.0, cert.window.1
        ));
    }
    if hp0 || req.verify {
        let dims = surface_report(req, &mut r, &surface, wmax)?;
        if req.verify {
            if closed.is_some() {
                r.check(checks::surface_bracket(&surface, &dims)?);
            } else {
                r.warn("no closed form to compare against");
            }
        }
    }
    if req.verify {
        r.check(checks::jacobi_identity(&surface, 10, 0)?);
    }
    Ok(r)
}

fn run_ci_surface(req: &Request, equations: &[String], weights: &[u32], wmax: Option<i64>) -> Result<Report> {
    let ring = WeightedRing::new(weights.to_vec())?;
    let polys = equations
        .iter()
        .map(|e| Ok(parse_polynomial(&read_payload(e)?, &ring)?))
        .collect::<Result<Vec<_>>>()?;
    let surface = SurfaceVariety::new(&ring, polys.clone())?;
    let g = req.grading;
    grading_scale(g, surface.bracket_degree())?;
    let mut r = Report::new("ci-surface");
    for (i, p) in polys.iter().enumerate() {
        r.input(&format!("f{}", i + 1), p);
    }
    r.input("weights", ring);
    r.provenance.grading = Some(g.to_string());
    r.value("degrees", "weighted-degree", surface.degrees())
        .value("bracket_degree", "jacobian-bracket-degree", surface.bracket_degree());
    surface_report(req, &mut r, &surface, wmax)?;
    r.warn("isolation is not certified for complete intersections; the window rule is heuristic");
    if req.verify {
        r.check(checks::jacobi_identity(&surface, 10, 0)?);
    }
    Ok(r)
}

fn run_elliptic(req: &Request, family: &str, lambda: &str, wmax: Option<i64>) -> Result<Report> {
    let fam = match family.to_ascii_uppercase().trim_start_matches('~') {
        "E6" => EllipticFamily::E6,
        "E7" => EllipticFamily::E7,
        "E8" => EllipticFamily::E8,
        other => return Err(ptrace_core::Error::UnknownLabel(other.to_string()).into()),
    };
    let lam = parse_rational(lambda)?;
    let surface = fam.surface(&lam)?;
    let mut r = Report::new("elliptic");
    r.input("family", family).input("lambda", lambda).input("f", fam.equation(&lam)?);
    r.provenance.grading = Some(Grading::Listed.to_string());
    let sub = Request {
        grading: Grading::Listed,
        ..req.clone()
    };
    let cert = surface.is_isolated()?;
    r.value("isolated", "jacobi-ring-vanishing", cert.isolated);
    if !cert.isolated {
        r.warn("lambda is a singular member of the family; outside the hypotheses of the closed forms");
    }
    let dims = surface_report(&sub, &mut r, &surface, wmax)?;
    if req.verify && cert.isolated {
        r.check(checks::surface_bracket(&surface, &dims)?);
    }
    Ok(r)
}

fn run_sympow(req: &Request, label: &str, order: usize) -> Result<Report> {
    if order == 0 {
        return Err(CliError::Usage("--order must be positive".into()));
    }
    let rec = DuValRecord::new(label.parse::<DuValType>()?)?;
    let g = req.grading;
    let mut r = Report::new("sympow");
    r.input("label", rec.label()).input("grading", g).input("order", order);
    r.provenance.grading = Some(g.to_string());
    let hp0 = duval_hp0_sympow_series(&rec, g, order)?;
    let dr = hpdr_sympow_duval_series(&rec, g, order)?;
    r.value("step", "sympow-hp0-product", hp0.step);
    r.table(Table::from_series("hp0", "sympow-hp0-product", g.name(), ["t"], &hp0.series));
    r.table(Table::from_series("hpdr", "sympow-hpdr-product", g.name(), ["t", "u"], &dr.series));
    let tw = twistor_orders_duval(&rec)?;
    let phi: Vec<(u32, u32, u64)> = tw.phi.iter().map(|(&(i, j), &v)| (i, j, v)).collect();
    r.value("twistor_orders", "twistor-orders", phi)
        .value("twistor_top_orders", "twistor-orders", tw.top_orders());
    if req.verify {
        r.check(checks::sympow_specializations(&rec, g, order)?);
        r.check(checks::twistor(&rec)?);
    }
    Ok(r)
}

fn run_nilcone(req: &Request, n: u32) -> Result<Report> {
    let l = lusztig_nilcone(n)?;
    let mut r = Report::new("nilcone");
    r.input("n", n);
    r.provenance.grading = Some(Grading::C2.to_string());
    r.table(Table::from_hilbert("hpdr", "lusztig-sum", Grading::C2.name(), ["x", "y"], &l));
    if req.verify {
        r.check(checks::lusztig_total(n)?);
        r.check(checks::kostka_counts(n));
        if n == 2 {
            r.check(checks::hypertoric_vs_duval(2, req.budget)?);
        }
    }
    Ok(r)
}

fn run_slice(req: &Request, lambda: &Partition) -> Result<Report> {
    let mut r = Report::new("slice");
    r.input("partition", lambda);
    r.provenance.grading = Some(Grading::C2.to_string());
    r.value("orbit_dim", "orbit-dimension", orbit_dim(lambda));
    r.table(Table::from_hilbert("kostka", "kostka-maj", "t", ["t"], &kostka(lambda)));
    r.table(Table::from_hilbert("hp0", "walgebra-kostka", Grading::C2.name(), ["y"], &walgebra_hp0(lambda)));
    if req.verify {
        r.check(checks::kostka_counts(lambda.size()));
        let parts = lambda.parts();
        let n = lambda.size();
        if n >= 2 && parts == [n - 1, 1] {
            r.check(checks::kostka_vs_duval(n, &|t| ptrace_core::kostka::maj(t) as i64, req.budget)?);
        }
    }
    Ok(r)
}

fn run_hypertoric(req: &Request, arrangement: &Arrangement) -> Result<Report> {
    let mut r = Report::new("hypertoric");
    let m = match arrangement {
        Arrangement::Normals(rows) => {
            r.input("normals", serde_json::to_string(rows).expect("matrix"));
            VectorMatroid::from_rows(rows)?
        }
        Arrangement::Weights(rows) => {
            r.input("weights", serde_json::to_string(rows).expect("matrix"));
            VectorMatroid::from_weights(rows)?
        }
    };
    r.provenance.grading = Some(Grading::C2.to_string());
    let h = hpdr_hypertoric(&m)?;
    r.value("dim_x", "hypertoric-flats-sum", h.dim_x)
        .value("flats", "matroid-flats", h.flats)
        .value("coloop_free_flats", "matroid-flats", h.coloop_free_flats);
    let tutte = m.tutte();
    let mut t = Table::new("tutte", "tutte-deletion-contraction", "none", &["x", "y"]);
    for (&(i, j), &c) in tutte.terms() {
        t.push(vec![i64::from(i), i64::from(j)], c);
    }
    r.table(t);
    r.table(Table::from_hilbert("hpdr", "hypertoric-flats-sum", Grading::C2.name(), ["x", "y"], &h.series));
    if h.unimodular == Some(false) {
        r.warn("arrangement is not unimodular; the cone has orbifold singularities");
    }
    if req.verify {
        r.check(checks::tutte_oracle(&m));
        let uniform_rank_one = m.ambient_dim() == 1 && (0..m.len()).all(|e| !m.is_loop(e));
        if uniform_rank_one && m.len() >= 2 {
            r.check(checks::hypertoric_vs_duval(m.len(), req.budget)?);
        }
    }
    Ok(r)
}

fn run_multipartition(req: &Request, n: usize, i: usize) -> Report {
    let mut r = Report::new("multipartition");
    r.input("n", n).input("i", i);
    let mut t = Table::new("a", "multipartition-product", "none", &["n"]);
    for k in 0..=n {
        t.push(vec![k as i64], a(k, i));
    }
    r.table(t);
    if req.verify {
        r.check(checks::multipartitions(n, i));
    }
    r
}

fn run_cone_curve(req: &Request, d: u64) -> Result<Report> {
    let c = cone_curve(d)?;
    let mut r = Report::new("cone-curve");
    r.input("d", d);
    r.value("genus", "plane-curve-genus", c.genus)
        .value("milnor", "milnor-product", c.milnor)
        .value("b1_link", "link-betti", c.b1_link)
        .value("ledger", "composition-series", c.ledger)
        .value("delta_total", "composition-series", c.ledger.delta_total());
    let prof = hpdr_surface([1, 0, 0], &[c.milnor]);
    r.value("hpdr_dims", "hpdr-surface", prof.dims);
    if req.verify {
        r.check(checks::cone_ledger(d)?);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse_with_positions() {
        assert_eq!(weights_arg("1, 2,3").unwrap(), vec![1, 2, 3]);
        let e = weights_arg("1,x").unwrap_err();
        assert!(matches!(e, CliError::Core(ptrace_core::Error::Parse { pos: 2, .. })));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn matrix_parse() {
        assert_eq!(matrix_arg("[[1,1]]").unwrap(), vec![vec![1, 1]]);
        let e = matrix_arg("[[1,1]").unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn regrade_scales() {
        let h = GradedHilbert::from_pairs(&[(0, 1), (6, 1)]);
        assert_eq!(regrade(&h, Grading::C2, -1).unwrap(), GradedHilbert::from_pairs(&[(0, 1), (12, 1)]));
        assert_eq!(regrade(&h, Grading::Paper, -2).unwrap(), GradedHilbert::from_pairs(&[(0, 1), (3, 1)]));
        assert!(regrade(&h, Grading::C2, 0).is_err());
    }

    #[test]
    fn budget_error_maps_to_three() {
        let mut req = Request::new(Command::DuVal { label: "E8".into(), hp0: true });
        req.budget = 10;
        let e = run(&req).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }
}
