use proptest::prelude::*;
use spectral_core::lattice::{
    certificate_isospectral, level, orthogonal_decompose, representation_table, torus_spectrum,
    Discrepancy, GramMatrix, LatticeBasis,
};
use spectral_core::matrix::RatMatrix;
use spectral_core::rational::{int, to_f64};

fn rat_matrix(rows: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect(),
    )
    .expect("rectangular")
}

fn gram(rows: &[Vec<i64>]) -> GramMatrix {
    GramMatrix::new(rat_matrix(rows)).expect("positive definite")
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| {
            (0..b[0].len())
                .map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum())
                .collect()
        })
        .collect()
}

fn det_i64(a: &[Vec<i64>]) -> i64 {
    let m = rat_matrix(a).det();
    to_f64(&m).round() as i64
}

/// Unimodular matrix built from elementary column operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, k, negate) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            for row in u.iter_mut() {
                row[j] += k * row[i];
            }
        }
        if negate {
            for row in u.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    u
}

fn brute_force_counts(g: &[Vec<i64>], max_t: u64) -> Vec<u64> {
    let n = g.len();
    let inv = rat_matrix(g).inverse().expect("nonsingular");
    // x_i² ≤ q(x)·(G⁻¹)_ii on the ellipsoid q(x) ≤ max_t.
    let bounds: Vec<i64> = (0..n)
        .map(|i| (max_t as f64 * to_f64(&inv[(i, i)])).sqrt().floor() as i64 + 1)
        .collect();
    let mut counts = vec![0u64; max_t as usize + 1];
    let mut x = vec![0i64; n];
    fn rec(d: usize, x: &mut Vec<i64>, b: &[i64], g: &[Vec<i64>], c: &mut Vec<u64>) {
        if d == x.len() {
            let mut q = 0i64;
            for i in 0..x.len() {
                for j in 0..x.len() {
                    q += x[i] * g[i][j] * x[j];
                }
            }
            if (q as usize) < c.len() {
                c[q as usize] += 1;
            }
            return;
        }
        for v in -b[d]..=b[d] {
            x[d] = v;
            rec(d + 1, x, b, g, c);
        }
    }
    rec(0, &mut x, &bounds, g, &mut counts);
    counts
}

fn basis_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_filter("nonsingular", |b| det_i64(b) != 0)
}

fn ops_strategy() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2, any::<bool>()), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representation_numbers_match_brute_force(b in basis_strategy(3), max_t in 0u64..25) {
        let g = mul(&transpose(&b), &b);
        let table = representation_table(&gram(&g), max_t).unwrap();
        prop_assert_eq!(table.counts().to_vec(), brute_force_counts(&g, max_t));
    }

    #[test]
    fn representation_numbers_are_basis_invariant(b in basis_strategy(3), ops in ops_strategy()) {
        let g = mul(&transpose(&b), &b);
        let u = unimodular(3, &ops);
        let h = mul(&mul(&transpose(&u), &g), &u);
        let a = representation_table(&gram(&g), 20).unwrap();
        let c = representation_table(&gram(&h), 20).unwrap();
        prop_assert_eq!(a.counts(), c.counts());
        let even = |m: &[Vec<i64>]| gram(&m.iter().map(|r| r.iter().map(|v| 2 * v).collect()).collect::<Vec<_>>());
        prop_assert_eq!(level(&even(&g)).unwrap(), level(&even(&h)).unwrap());
        prop_assert_eq!(gram(&g).det(), gram(&h).det());
    }

    #[test]
    fn signed_permutations_preserve_counts(
        b in basis_strategy(3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
        signs in prop::collection::vec(any::<bool>(), 3),
    ) {
        let g = mul(&transpose(&b), &b);
        let p: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| if perm[j] == i { if signs[j] { -1 } else { 1 } } else { 0 }).collect())
            .collect();
        let h = mul(&mul(&transpose(&p), &g), &p);
        let a = representation_table(&gram(&g), 15).unwrap();
        let c = representation_table(&gram(&h), 15).unwrap();
        prop_assert_eq!(a.counts(), c.counts());
    }

    #[test]
    fn torus_spectrum_is_the_dual_theta_series(a in basis_strategy(2), cutoff in 0i64..30) {
        // With basis (Aᵀ)⁻¹ the dual lattice is spanned by A.
        let inv_t = rat_matrix(&a).inverse().unwrap().transpose();
        let basis = LatticeBasis::new(inv_t).unwrap();
        let spectrum = torus_spectrum(&basis, &int(cutoff)).unwrap();
        let dual = mul(&transpose(&a), &a);
        let table = representation_table(&gram(&dual), cutoff as u64).unwrap();
        let expected: Vec<(i64, u64)> = table
            .entries()
            .filter(|&(_, c)| c > 0)
            .map(|(t, c)| (t as i64, c))
            .collect();
        let got: Vec<(i64, u64)> = spectrum
            .lines
            .iter()
            .map(|l| (to_f64(&l.norm_sq) as i64, l.multiplicity))
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn block_structure_survives_basis_change(
        b1 in basis_strategy(2),
        b2 in basis_strategy(2),
        ops in ops_strategy(),
    ) {
        let g1 = mul(&transpose(&b1), &b1);
        let g2 = mul(&transpose(&b2), &b2);
        let mut g = vec![vec![0i64; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                g[i][j] = g1[i][j];
                g[i + 2][j + 2] = g2[i][j];
            }
        }
        let u = unimodular(4, &ops);
        let h = mul(&mul(&transpose(&u), &g), &u);
        let plain = orthogonal_decompose(&gram(&g)).unwrap();
        let hidden = orthogonal_decompose(&gram(&h)).unwrap();
        prop_assert!(plain.len() >= 2);
        let ranks = |d: &spectral_core::lattice::Decomposition| {
            let mut r: Vec<usize> = d.summands.iter().map(|s| s.rank()).collect();
            r.sort();
            r
        };
        prop_assert_eq!(ranks(&plain), ranks(&hidden));
        let det: spectral_core::Rational = hidden.summands.iter().map(|s| s.gram.det()).product();
        prop_assert_eq!(det, gram(&h).det());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificate_agrees_with_extended_brute_force(
        p in (1i64..5, -4i64..=4, 1i64..5),
        q in (1i64..5, -4i64..=4, 1i64..5),
    ) {
        let make = |(a, b, c): (i64, i64, i64)| vec![vec![2 * a, b], vec![b, 2 * c]];
        let (gp, gq) = (make(p), make(q));
        prop_assume!(4 * p.0 * p.2 > p.1 * p.1 && 4 * q.0 * q.2 > q.1 * q.1);
        let report = certificate_isospectral(&gram(&gp), &gram(&gq)).unwrap();
        let horizon = 2 * (to_f64(&report.t_bound).floor() as u64);
        let bp = brute_force_counts(&gp, horizon);
        let bq = brute_force_counts(&gq, horizon);
        prop_assert_eq!(&report.counts_p[..], &bp[..report.counts_p.len()]);
        match report.first_discrepancy {
            None => prop_assert_eq!(bp, bq),
            Some(Discrepancy::RepresentationNumber(t)) => {
                prop_assert_ne!(bp[t as usize], bq[t as usize]);
            }
            Some(_) => {}
        }
    }
}

#[test]
fn rational_form_brute_force() {
    // 2x² + 2xy + 3y² scaled by 1/2 is not integral; the integer form is checked instead.
    let g = vec![vec![2, 1], vec![1, 3]];
    let table = representation_table(&gram(&g), 40).unwrap();
    assert_eq!(table.counts().to_vec(), brute_force_counts(&g, 40));
}
