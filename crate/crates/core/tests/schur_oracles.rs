use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sumrule::cyclo::{CycloNum, Rational};
use sumrule::sample;
use sumrule::schur::{self, Partition};
use sumrule::solver::ExactMatrix;

fn q() -> CycloNum {
    CycloNum::omega()
}

/// `s_λ(1^m) = ∏ (m + c(u)) / h(u)` over the cells of λ.
fn hook_content(parts: &[usize], m: usize) -> Rational {
    let conj: Vec<usize> = (0..parts.first().copied().unwrap_or(0))
        .map(|j| parts.iter().filter(|&&p| p > j).count())
        .collect();
    let mut num = Rational::one();
    let mut den = Rational::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let content = m as i64 + j as i64 - i as i64;
            let hook = (row - j - 1) + (conj[j] - i - 1) + 1;
            num = &num * &Rational::from_integer(content);
            den = &den * &Rational::from_integer(hook as i64);
        }
    }
    &num * &den.recip().unwrap()
}

fn partitions() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..5, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.retain(|&p| p > 0);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn all_ones_matches_hook_content(parts in partitions(), m in 1usize..7) {
        let lambda = Partition::new(parts.clone()).unwrap();
        let got = schur::schur_eval(&lambda, &vec![CycloNum::one(); m]);
        prop_assert_eq!(got, CycloNum::from(hook_content(&parts, m)));
    }

    #[test]
    fn tableaux_match_determinants(parts in partitions(), seed in 0u64..1000) {
        let lambda = Partition::new(parts).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::random_point(&mut rng, 4);
        let poly = schur::schur_polynomial(&lambda, 4).unwrap();
        prop_assert_eq!(poly.eval(&x).unwrap(), schur::schur_bialternant(&lambda, &x));
        prop_assert_eq!(schur::schur_jacobi_trudi(&lambda, &x), schur::schur_bialternant(&lambda, &x));
    }
}

#[test]
fn one_row_and_one_column_shapes() {
    let x: Vec<CycloNum> = [2, 3, 5].iter().map(|&k| CycloNum::from_int(k)).collect();
    // h_2 = sum over x_i x_j (i ≤ j); e_2 = sum over x_i x_j (i < j)
    let mut h2 = CycloNum::zero();
    let mut e2 = CycloNum::zero();
    for i in 0..3 {
        for j in i..3 {
            let p = &x[i] * &x[j];
            h2 += &p;
            if i < j {
                e2 += &p;
            }
        }
    }
    assert_eq!(schur::schur_eval(&Partition::new(vec![2]).unwrap(), &x), h2);
    assert_eq!(schur::schur_eval(&Partition::new(vec![1, 1]).unwrap(), &x), e2);
    assert_eq!(h2, CycloNum::from_int(69));
    assert_eq!(e2, CycloNum::from_int(31));
}

#[test]
fn partition_function_at_ones_counts_asms() {
    let asm = [1i64, 2, 7, 42, 429, 7436, 218_348];
    for n in 1..=7 {
        let z = schur::z_partition_function(n, &vec![CycloNum::one(); 2 * n]).unwrap();
        let want = 3i64.pow((n * (n - 1) / 2) as u32) * asm[n - 1];
        assert_eq!(z, CycloNum::from_int(want), "n={n}");
    }
}

#[test]
fn y_shapes() {
    assert_eq!(schur::y_partition(3).parts(), &[2, 2, 1, 1]);
    assert_eq!(schur::y_partition(1).parts(), &[] as &[usize]);
    for n in 1..=6 {
        assert_eq!(schur::y_partition(n).size(), n * (n - 1));
    }
}

#[test]
fn partition_function_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let z = sample::random_point(&mut rng, 8);
    let base = schur::z_partition_function(4, &z).unwrap();
    for i in 0..7 {
        let mut s = z.clone();
        s.swap(i, i + 1);
        assert_eq!(schur::z_partition_function(4, &s).unwrap(), base);
    }
}

/// `F_n(t)` as a ratio of determinants with the extra row `t`.
fn f_by_cramer(w: &[CycloNum], t: &CycloNum, n: usize) -> CycloNum {
    let mut exps: Vec<u32> = (0..3 * n as u32).filter(|e| e % 3 != 1).collect();
    let small = ExactMatrix::from_fn(2 * n, 2 * n, |i, j| w[i].pow(exps[j]));
    exps.push(3 * n as u32);
    let mut pts = w.to_vec();
    pts.push(t.clone());
    let big = ExactMatrix::from_fn(2 * n + 1, 2 * n + 1, |i, j| pts[i].pow(exps[j]));
    &big.determinant() * &small.determinant().inv().unwrap()
}

#[test]
fn f_poly_equals_determinant_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 1..=3 {
        let z = sample::random_rationals(&mut rng, 2 * n);
        let w: Vec<CycloNum> = z.iter().map(|zi| &q() * &CycloNum::from(zi.clone())).collect();
        let f = schur::f_poly(n, &z).unwrap();
        for k in 0..4 {
            let t = CycloNum::from_ints(2 * k + 1, k - 3);
            assert_eq!(f.eval(std::slice::from_ref(&t)).unwrap(), f_by_cramer(&w, &t, n), "n={n}");
        }
    }
}

/// Pointwise T–Q residual for a given eigenvalue function.
fn tq_residual(n: usize, z: &[CycloNum], eig: impl Fn(&CycloNum) -> CycloNum, qp: &sumrule::mpoly::MPoly, t: &CycloNum) -> CycloNum {
    let qinv = CycloNum::omega_sq();
    let ev = |x: &CycloNum| qp.eval(std::slice::from_ref(x)).unwrap();
    let p1: CycloNum = z.iter().map(|zi| &(&qinv * t) - &(&q() * zi)).product();
    let p2: CycloNum = z.iter().map(|zi| t - zi).product();
    let c1 = q().powi(1 - n as i32).unwrap();
    let c2 = q().powi(n as i32 - 1).unwrap();
    let rhs = -&(&(&(&c1 * &p1) * &ev(&(&qinv * t))) + &(&(&c2 * &p2) * &ev(&(&q() * t))));
    &(&eig(t) * &ev(t)) - &rhs
}

#[test]
fn tq_holds_pointwise_and_fails_with_wrong_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let qinv = CycloNum::omega_sq();
    for n in 1..=3 {
        let zr = sample::random_rationals(&mut rng, 2 * n);
        let z: Vec<CycloNum> = zr.iter().cloned().map(CycloNum::from).collect();
        let qp = schur::q_poly(n, &zr).unwrap();
        let right = |t: &CycloNum| z.iter().map(|zi| &(&q() * t) - &(&qinv * zi)).product::<CycloNum>();
        let wrong = |t: &CycloNum| z.iter().map(|zi| &(&qinv * t) - &(&q() * zi)).product::<CycloNum>();
        for k in 1..4 {
            let t = CycloNum::from_ints(k, 2 * k + 1);
            assert!(tq_residual(n, &z, right, &qp, &t).is_zero(), "n={n}");
            assert!(!tq_residual(n, &z, wrong, &qp, &t).is_zero(), "n={n}");
        }
    }
}

#[test]
fn tq_suite_passes() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for n in 1..=3 {
        let z = sample::random_rationals(&mut rng, 2 * n);
        assert!(schur::check_tq(n, &z).unwrap().pass);
    }
}

#[test]
fn bethe_ansatz_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for n in 1..=schur::ABA_CAP {
        let z = sample::random_rationals(&mut rng, 2 * n);
        let a = schur::aba_residual(n, &z).unwrap();
        assert!(a.pass(), "n={n}: {a:?}");
        assert_eq!(a.roots.len(), n);
    }
    let z = sample::random_rationals(&mut rng, 2 * (schur::ABA_CAP + 1));
    assert!(schur::aba_residual(schur::ABA_CAP + 1, &z).is_err());
}

#[test]
fn invalid_partitions_are_rejected() {
    assert!(Partition::new(vec![1, 3]).is_err());
    assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    let p: Partition = serde_json::from_str("[3,1,0]").unwrap();
    assert_eq!(p.parts(), &[3, 1]);
}
