use std::f64::consts::PI;
use std::path::Path;

use serde_json::{Map, Value};
use spectral_core::heat::{
    carslaw_integral, corner_coefficient, corner_sum_regular_ngon, counting_function,
    heat_trace_eigensum, polygon_heat_expansion, weyl_ratio, BoundaryCondition, BoxSpec,
};
use spectral_core::lattice::{
    certificate_isospectral, e16_basis, e8xe8_basis, gram_of_basis, orthogonal_decompose,
    torus_spectrum, CertificateReport, TorusSpectrum,
};
use spectral_core::polygeom::{hausdorff_distance_grid, holes_from_chi, staircase_polygon};
use spectral_core::quadrature::QuadratureConfig;
use spectral_core::rational::{self, Rational};

use crate::cli::{Bc, CornerArgs, HeatTraceArgs, PolygeomArgs};
use crate::error::{exit, CliError};
use crate::files::{load_cloud, load_complex, load_lattice, load_polygon};
use crate::output::{Cell, Format, Report};
use crate::parse;

/// What a subcommand produced: the report, its preferred format and the
/// exit code to finish with.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub default_format: Format,
    pub code: u8,
}

impl Outcome {
    fn csv(report: Report) -> Self {
        Self {
            report,
            default_format: Format::Csv,
            code: exit::OK,
        }
    }
}

/// Numeric settings shared by the subcommands.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub quadrature: QuadratureConfig,
    pub tail_tol: f64,
}

impl Settings {
    pub fn new(tol: Option<f64>) -> Result<Self, CliError> {
        let mut quadrature = QuadratureConfig::default();
        let mut tail_tol = 1e-12;
        if let Some(tol) = tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Input(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
            quadrature.abs_tol = tol;
            quadrature.rel_tol = tol;
            tail_tol = tol;
        }
        Ok(Self {
            quadrature,
            tail_tol,
        })
    }
}

fn input<T>(r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(CliError::Input)
}

fn rational_value(r: &Rational) -> Value {
    if rational::is_integer(r) {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::from(r.to_string())
}

fn certificate_json(c: &CertificateReport) -> Value {
    let mut m = Map::new();
    m.insert("dim".into(), Value::from(c.dim));
    m.insert("det_p".into(), rational_value(&c.det_p));
    m.insert("det_q".into(), rational_value(&c.det_q));
    m.insert("level_p".into(), Value::from(c.level_p));
    m.insert("level_q".into(), Value::from(c.level_q));
    m.insert("mu0".into(), rational_value(&c.mu0));
    m.insert("t_bound".into(), rational_value(&c.t_bound));
    m.insert("checked_ts".into(), Value::from(c.checked_ts.clone()));
    m.insert("counts_p".into(), Value::from(c.counts_p.clone()));
    m.insert("counts_q".into(), Value::from(c.counts_q.clone()));
    m.insert("verdict".into(), Value::from(c.verdict.as_str()));
    m.insert(
        "first_discrepancy".into(),
        c.first_discrepancy
            .map_or(Value::Null, |d| Value::from(d.to_string())),
    );
    Value::Object(m)
}

fn spectrum_json(s: &TorusSpectrum) -> Value {
    Value::Array(
        s.lines
            .iter()
            .map(|l| {
                let mut m = Map::new();
                m.insert("norm_sq".into(), rational_value(&l.norm_sq));
                m.insert("multiplicity".into(), Value::from(l.multiplicity));
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn milnor_verify(cutoff: Option<&str>) -> Result<Outcome, CliError> {
    let (a, b) = (e16_basis(), e8xe8_basis());
    let (p, q) = (gram_of_basis(&a), gram_of_basis(&b));
    let certificate = certificate_isospectral(&p, &q)?;
    let summands = [
        orthogonal_decompose(&p)?.len(),
        orthogonal_decompose(&q)?.len(),
    ];
    let isospectral = certificate.is_isospectral();
    let verdict = match (isospectral, summands[0] != summands[1]) {
        (true, true) => "isospectral, non-isometric",
        (true, false) => "isospectral, isometry undecided",
        (false, _) => "not isospectral",
    };
    let mut expected = isospectral && summands == [1, 2];

    let mut m = Map::new();
    m.insert("certificate".into(), certificate_json(&certificate));
    m.insert("isospectral".into(), Value::from(isospectral));
    m.insert("summands".into(), Value::from(summands.to_vec()));
    m.insert("verdict".into(), Value::from(verdict));
    if let Some(text) = cutoff {
        let cutoff = input(parse::exact(text))?;
        let sa = torus_spectrum(&a, &cutoff)?;
        let sb = torus_spectrum(&b, &cutoff)?;
        let equal = sa.lines == sb.lines;
        expected &= equal;
        let mut s = Map::new();
        s.insert("cutoff".into(), rational_value(&cutoff));
        s.insert("equal".into(), Value::from(equal));
        s.insert("lines".into(), spectrum_json(&sa));
        m.insert("spectrum".into(), Value::Object(s));
    }
    if !expected {
        eprintln!("error: E16 and E8+E8 did not give the expected verdict ({verdict})");
    }
    Ok(Outcome {
        report: Report::Record(m),
        default_format: Format::Json,
        code: if expected { exit::OK } else { exit::INVARIANT },
    })
}

pub fn torus_spectrum_cmd(path: &Path, cutoff: &str) -> Result<Outcome, CliError> {
    let basis = load_lattice(path)?;
    let cutoff = input(parse::exact(cutoff))?;
    let spectrum = torus_spectrum(&basis, &cutoff)?;
    let rows = spectrum
        .lines
        .iter()
        .map(|l| {
            vec![
                Cell::Text(l.norm_sq.to_string()),
                l.multiplicity.into(),
                l.eigenvalue().into(),
            ]
        })
        .collect();
    Ok(Outcome::csv(Report::Table {
        header: vec!["norm_sq_exact", "multiplicity", "eigenvalue"],
        rows,
    }))
}

pub fn isospec(a: &Path, b: &Path) -> Result<Outcome, CliError> {
    let p = gram_of_basis(&load_lattice(a)?);
    let q = gram_of_basis(&load_lattice(b)?);
    let certificate = certificate_isospectral(&p, &q)?;
    let Value::Object(m) = certificate_json(&certificate) else {
        unreachable!("certificate_json builds an object")
    };
    Ok(Outcome {
        report: Report::Record(m),
        default_format: Format::Json,
        code: if certificate.is_isospectral() {
            exit::OK
        } else {
            exit::NEGATIVE
        },
    })
}

/// Exact sides when every entry parses as a rational, floats otherwise.
fn box_spec(sides: &[String]) -> Result<BoxSpec, CliError> {
    if sides.is_empty() {
        return Err(CliError::Input("a box needs at least one side".into()));
    }
    if let Ok(exact) = sides
        .iter()
        .map(|s| parse::exact(s))
        .collect::<Result<Vec<_>, _>>()
    {
        return Ok(BoxSpec::rational(exact)?);
    }
    let floats = sides
        .iter()
        .map(|s| parse::positive_f64(s))
        .collect::<Result<Vec<_>, _>>();
    Ok(BoxSpec::new(input(floats)?)?)
}

pub fn weyl(sides: &[String], bc: Bc, lambdas: &[String]) -> Result<Outcome, CliError> {
    let b = box_spec(sides)?;
    let bc = BoundaryCondition::from(bc);
    let mut rows = Vec::with_capacity(lambdas.len());
    for text in lambdas {
        let lambda = input(parse::nonnegative_f64(text))?;
        let n = counting_function(&b, bc, lambda)?;
        let ratio = if lambda == 0.0 {
            0.0
        } else {
            weyl_ratio(&b, bc, lambda)?
        };
        rows.push(vec![lambda.into(), n.into(), ratio.into()]);
    }
    Ok(Outcome::csv(Report::Table {
        header: vec!["lambda", "N", "ratio"],
        rows,
    }))
}

pub fn corner(args: &CornerArgs, s: &Settings) -> Result<Outcome, CliError> {
    let cfg = &s.quadrature;
    if !args.ngon.is_empty() {
        let mut rows = Vec::with_capacity(args.ngon.len());
        for &n in &args.ngon {
            let sum = corner_sum_regular_ngon(n, cfg)?;
            rows.push(vec![n.into(), sum.into(), (sum - 1.0 / 6.0).abs().into()]);
        }
        return Ok(Outcome::csv(Report::Table {
            header: vec!["N", "corner_sum", "deviation"],
            rows,
        }));
    }
    let mut rows = Vec::with_capacity(args.theta.len());
    for text in &args.theta {
        let theta = input(parse::angle(text))?;
        if !(theta > PI / 2.0 && theta <= PI) {
            return Err(CliError::Input(format!(
                "theta {text} = {theta} is outside the valid interval (pi/2, pi]"
            )));
        }
        rows.push(vec![
            theta.into(),
            carslaw_integral(theta, cfg)?.into(),
            corner_coefficient(theta, cfg)?.into(),
        ]);
    }
    Ok(Outcome::csv(Report::Table {
        header: vec!["theta", "integral", "coefficient"],
        rows,
    }))
}

/// `(4πt)^{-n/2}(V ∓ √(πt)·S/2)`, minus for Dirichlet.
fn box_expansion(b: &BoxSpec, bc: BoundaryCondition, t: f64) -> f64 {
    let sign = match bc {
        BoundaryCondition::Dirichlet => -1.0,
        BoundaryCondition::Neumann => 1.0,
    };
    let lead = (4.0 * PI * t).powf(-0.5 * b.dim() as f64);
    lead * (b.volume() + sign * 0.5 * (PI * t).sqrt() * b.boundary_measure())
}

pub fn heat_trace(args: &HeatTraceArgs, s: &Settings) -> Result<Outcome, CliError> {
    let ts = args
        .t
        .iter()
        .map(|t| parse::positive_f64(t))
        .collect::<Result<Vec<_>, _>>();
    let ts = input(ts)?;
    if let Some(path) = &args.polygon {
        let polygon = load_polygon(path)?;
        let e = polygon_heat_expansion(&polygon, &s.quadrature)?;
        let mut rows = Vec::with_capacity(ts.len());
        for t in ts {
            rows.push(vec![
                t.into(),
                e.area_term(t).into(),
                e.perimeter_term(t).into(),
                e.corner_constant.into(),
                e.evaluate(t)?.into(),
            ]);
        }
        return Ok(Outcome::csv(Report::Table {
            header: vec![
                "t",
                "area_term",
                "perimeter_term",
                "corner_constant",
                "expansion",
            ],
            rows,
        }));
    }
    let b = box_spec(&args.sides)?;
    let bc = BoundaryCondition::from(args.bc);
    let mut rows = Vec::with_capacity(ts.len());
    for t in ts {
        let trace = heat_trace_eigensum(&b, bc, t, s.tail_tol)?;
        let expansion = box_expansion(&b, bc, t);
        rows.push(vec![
            t.into(),
            trace.value.into(),
            expansion.into(),
            (trace.value - expansion).into(),
        ]);
    }
    Ok(Outcome::csv(Report::Table {
        header: vec!["t", "eigensum", "expansion", "residual"],
        rows,
    }))
}

pub fn polygeom(args: &PolygeomArgs) -> Result<Outcome, CliError> {
    if let Some(k) = args.staircase {
        let st = staircase_polygon(k)?;
        let spacing = match &args.spacing {
            Some(text) => input(parse::positive_f64(text))?,
            None => (0.01f64).min(0.1 / f64::from(k)),
        };
        let row = vec![
            u64::from(k).into(),
            (st.polygon.len() as u64).into(),
            st.polygon.perimeter().into(),
            st.hausdorff_to_disk(spacing)?.into(),
            st.max_tip_angle()?.into(),
        ];
        return Ok(Outcome::csv(Report::Table {
            header: vec![
                "k",
                "sides",
                "perimeter",
                "hausdorff_to_disk",
                "max_spike_angle",
            ],
            rows: vec![row],
        }));
    }
    if let [a, b] = args.hausdorff.as_slice() {
        let d = hausdorff_distance_grid(&load_cloud(a)?, &load_cloud(b)?);
        return Ok(Outcome::csv(Report::Table {
            header: vec!["hausdorff"],
            rows: vec![vec![d.into()]],
        }));
    }
    let Some(path) = &args.euler else {
        return Err(CliError::Input(
            "one of --staircase, --hausdorff or --euler is required".into(),
        ));
    };
    let c = load_complex(path)?;
    let chi = c.euler_characteristic();
    let holes = holes_from_chi(chi)?;
    let row = vec![
        c.vertices().into(),
        c.edges().into(),
        c.faces().into(),
        chi.into(),
        holes.into(),
    ];
    Ok(Outcome::csv(Report::Table {
        header: vec!["V", "E", "F", "chi", "holes"],
        rows: vec![row],
    }))
}
