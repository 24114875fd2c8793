//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use spectral_cli::commands::milnor_verify;
use spectral_cli::output::Report;
use spectral_core::heat::{
    a0_predictor, bracketing_check, carslaw_integral, corner_sum_regular_ngon, dominating_integral,
    heat_trace_eigensum, weyl_ratio, BoundaryCondition, BoxSpec, SubBox,
};
use spectral_core::lattice::{
    representation_number, representation_table, torus_spectrum, GramMatrix, LatticeBasis,
};
use spectral_core::matrix::RatMatrix;
use spectral_core::polygeom::staircase_polygon;
use spectral_core::quadrature::QuadratureConfig;
use spectral_core::rational::{self, int, ratio, Rational};

/// Reference value of the bound integral from a 30-digit quadrature.
const DOMINATING_ORACLE: f64 = 1.13239634563239;

type Check = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn milnor() -> Verdict {
    let start = Instant::now();
    let outcome = match milnor_verify(None) {
        Ok(o) => o,
        Err(e) => return verdict(false, format!("error: {e}")),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let Report::Record(m) = &outcome.report else {
        return verdict(false, "report is not a record".into());
    };
    let c = &m["certificate"];
    let checks = [
        c["det_p"] == 1 && c["det_q"] == 1,
        c["level_p"] == 1 && c["level_q"] == 1,
        c["t_bound"] == "5/3",
        c["checked_ts"] == serde_json::json!([0, 1]),
        c["counts_p"] == c["counts_q"] && c["counts_p"][1] == 0,
        m["isospectral"] == Value::Bool(true),
        m["summands"] == serde_json::json!([1, 2]),
        m["verdict"] == "isospectral, non-isometric",
        outcome.code == 0,
        elapsed <= 10.0,
    ];
    verdict(
        checks.iter().all(|&c| c),
        format!(
            "det 1=1, level 1=1, R(1) {}={}, summands {}, {:.2}s",
            c["counts_p"][1], c["counts_q"][1], m["summands"], elapsed
        ),
    )
}

fn weyl() -> Verdict {
    let start = Instant::now();
    let dir = BoundaryCondition::Dirichlet;
    let square = BoxSpec::unit(2).unwrap();
    let cube = BoxSpec::unit(3).unwrap();
    let s = weyl_ratio(&square, dir, 1e6).unwrap();
    let c = weyl_ratio(&cube, dir, 1e4).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let square_ok = (s - 1.0).abs() <= 5e-3;
    let cube_ok = (c - 1.0).abs() <= 2e-2;
    verdict(
        square_ok && cube_ok && elapsed <= 30.0,
        format!(
            "square |ratio-1| = {:.3e} (<= 5e-3: {square_ok}), cube |ratio-1| = {:.3e} (<= 2e-2: {cube_ok}), {:.2}s",
            (s - 1.0).abs(),
            (c - 1.0).abs(),
            elapsed
        ),
    )
}

fn corner_integral() -> Verdict {
    let cfg = QuadratureConfig::default();
    let i = carslaw_integral(PI, &cfg).unwrap();
    let d = dominating_integral(&cfg).unwrap();
    let exact = (i - 2.0 / 3.0).abs() <= 1e-10;
    let near = (d - 1.1).abs() <= 0.05;
    let oracle = (d - DOMINATING_ORACLE).abs() <= 1e-10;
    verdict(
        exact && near && oracle,
        format!(
            "I(pi) - 2/3 = {:.2e}, bound integral = {d:.14}",
            i - 2.0 / 3.0
        ),
    )
}

fn one_sixth() -> Verdict {
    let cfg = QuadratureConfig::default();
    let dev = |n| (corner_sum_regular_ngon(n, &cfg).unwrap() - 1.0 / 6.0).abs();
    let at_100 = dev(100);
    let sweep: Vec<f64> = [10, 20, 40, 80, 160].into_iter().map(dev).collect();
    let decreasing = sweep.windows(2).all(|w| w[1] < w[0]);
    let a0 = (0..=5).all(|h| a0_predictor(h) == ratio(1 - h as i64, 6));
    verdict(
        at_100 <= 2e-3 && decreasing && a0,
        format!("deviation at N=100 {at_100:.3e}, sweep decreasing {decreasing}, a0 exact {a0}"),
    )
}

fn heat_constant() -> Verdict {
    let square = BoxSpec::unit(2).unwrap();
    let constant = |t: f64| {
        let trace = heat_trace_eigensum(&square, BoundaryCondition::Dirichlet, t, 1e-12).unwrap();
        trace.value - 1.0 / (4.0 * PI * t) + 1.0 / (2.0 * (PI * t).sqrt())
    };
    let values: Vec<f64> = [0.02, 0.01, 0.005].into_iter().map(constant).collect();
    let reference = values[2];
    let spread = values
        .iter()
        .map(|v| (v - reference).abs())
        .fold(0.0, f64::max);
    verdict(
        spread <= 1e-4,
        format!("constants {values:.8?}, spread {spread:.2e}"),
    )
}

fn bracketing() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut violations = 0;
    for _ in 0..10 {
        let sides = vec![
            ratio(rng.gen_range(1..16), rng.gen_range(1..6)),
            ratio(rng.gen_range(1..16), rng.gen_range(1..6)),
        ];
        let axis = rng.gen_range(0..2);
        let cut = &sides[axis] * ratio(rng.gen_range(1..10), 10);
        let mut first = sides.clone();
        first[axis] = cut.clone();
        let mut second = sides.clone();
        second[axis] = &sides[axis] - &cut;
        let mut origin = vec![int(0), int(0)];
        origin[axis] = cut;
        let parts = [
            SubBox {
                origin: vec![int(0), int(0)],
                sides: first,
            },
            SubBox {
                origin,
                sides: second,
            },
        ];
        let b = BoxSpec::rational(sides).unwrap();
        violations += bracketing_check(&b, &parts, 50).unwrap().violations.len();
    }
    verdict(
        violations == 0,
        format!("10 rectangles, k <= 50, {violations} violations"),
    )
}

/// Columns with even coordinate sums, so `AᵀA` is an even form.
fn random_even_basis(rng: &mut ChaCha8Rng) -> RatMatrix {
    loop {
        let n = rng.gen_range(1..=4);
        let columns: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
                if c.iter().sum::<i64>() % 2 != 0 {
                    c[0] += 1;
                }
                c.into_iter().map(int).collect()
            })
            .collect();
        let a = RatMatrix::from_columns(columns).unwrap();
        if a.det() != int(0) {
            return a;
        }
    }
}

/// `#{x : xᵀGx = t}` for `t <= max_t` over the box `|xᵢ|² <= max_t·(G⁻¹)ᵢᵢ`.
fn brute_force(g: &GramMatrix, max_t: u64) -> Vec<u64> {
    let n = g.dim();
    let inv = g.inverse();
    let radius: Vec<i64> = (0..n)
        .map(|i| (max_t as f64 * rational::to_f64(&inv.entries()[(i, i)])).sqrt() as i64 + 1)
        .collect();
    let mut counts = vec![0u64; max_t as usize + 1];
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let v = g.value(&x);
        if v <= int(max_t as i64) {
            counts[rational::floor(&v).try_into().unwrap_or(0usize)] += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return counts;
            }
            if x[i] < radius[i] {
                x[i] += 1;
                break;
            }
            x[i] = -radius[i];
            i += 1;
        }
    }
}

fn oracle_equivalence() -> Verdict {
    const MAX_T: u64 = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut count_mismatch = 0;
    let mut spectrum_mismatch = 0;
    for _ in 0..50 {
        let a = random_even_basis(&mut rng);
        let g = GramMatrix::new(&a.transpose() * &a).unwrap();
        let brute = brute_force(&g, MAX_T);
        if (0..=MAX_T).any(|t| representation_number(&g, t).unwrap() != brute[t as usize]) {
            count_mismatch += 1;
        }
        // Γ = A^{-T}Zⁿ has dual A·Zⁿ, whose Gram matrix is g.
        let lattice = LatticeBasis::new(a.inverse().unwrap().transpose()).unwrap();
        let spectrum = torus_spectrum(&lattice, &int(MAX_T as i64)).unwrap();
        let table = representation_table(&g, MAX_T).unwrap();
        let expected: Vec<(Rational, u64, f64)> = table
            .entries()
            .filter(|&(_, c)| c > 0)
            .map(|(t, c)| (int(t as i64), c, 4.0 * PI * PI * t as f64))
            .collect();
        let got: Vec<(Rational, u64, f64)> = spectrum
            .lines
            .iter()
            .map(|l| (l.norm_sq.clone(), l.multiplicity, l.eigenvalue()))
            .collect();
        if got != expected {
            spectrum_mismatch += 1;
        }
    }
    verdict(
        count_mismatch == 0 && spectrum_mismatch == 0,
        format!(
            "50 forms, t <= {MAX_T}: {count_mismatch} count mismatches, {spectrum_mismatch} spectrum mismatches"
        ),
    )
}

fn staircase() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [7u32, 10] {
        let st = staircase_polygon(k).unwrap();
        let kf = f64::from(k);
        let expected = 2f64.powi(k as i32) / kf;
        let perimeter = st.polygon.perimeter();
        let edge_err = st
            .polygon
            .edges()
            .map(|(a, b)| ((b[0] - a[0]).hypot(b[1] - a[1]) - 1.0 / kf).abs())
            .fold(0.0, f64::max);
        let spacing = (0.01f64).min(0.1 / kf);
        let d = st.hausdorff_to_disk(spacing).unwrap();
        let ok =
            (perimeter - expected).abs() <= 1e-12 * expected && edge_err <= 1e-12 && d <= 1.0 / kf;
        pass &= ok;
        parts.push(format!(
            "k={k}: perimeter {perimeter:.12} vs {expected:.12}, max edge error {edge_err:.1e}, d_H {d:.4} <= {:.4}",
            1.0 / kf
        ));
    }
    verdict(pass, parts.join("; "))
}

fn main() {
    let criteria: [Check; 8] = [
        ("1 milnor reproduction", milnor),
        ("2 weyl law", weyl),
        ("3 corner integral", corner_integral),
        ("4 one-sixth limit", one_sixth),
        ("5 heat-trace constant", heat_constant),
        ("6 bracketing", bracketing),
        ("7 oracle equivalence", oracle_equivalence),
        ("8 staircase", staircase),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        println!(
            "{} {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
