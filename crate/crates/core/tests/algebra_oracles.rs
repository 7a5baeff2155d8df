use std::collections::HashMap;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumrule::cyclo::{self, CycloNum, Eisenstein, Rational};
use sumrule::mpoly::{self, MPoly};
use sumrule::sample;
use sumrule::solver::modular::{self, KernelOptions};
use sumrule::solver::ExactMatrix;

fn cyclo_num() -> impl Strategy<Value = CycloNum> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
        .prop_map(|(a, da, b, db)| CycloNum::new(Rational::new(a, da), Rational::new(b, db)))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn complex_embedding_is_a_ring_map(a in cyclo_num(), b in cyclo_num()) {
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
        prop_assert!(close((&a - &b).to_complex(), a.to_complex() - b.to_complex()));
        if !b.is_zero() {
            prop_assert!(close((&a * &b.inv().unwrap()).to_complex(), a.to_complex() / b.to_complex()));
        }
    }

    #[test]
    fn norm_is_the_complex_modulus(a in cyclo_num()) {
        prop_assert!((a.norm().to_f64() - a.to_complex().norm_sqr()).abs() < 1e-9 * (1.0 + a.norm().to_f64()));
        prop_assert_eq!(&a * &a.conj(), CycloNum::from(a.norm()));
    }

    #[test]
    fn text_and_json_round_trip(a in cyclo_num()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CycloNum>(&s).unwrap(), a);
    }

    #[test]
    fn eisenstein_matches_exact_arithmetic(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
        let x = CycloNum::from_ints(a, b);
        let y = CycloNum::from_ints(c, d);
        let (ex, ey) = (Eisenstein::from_cyclo(&x).unwrap(), Eisenstein::from_cyclo(&y).unwrap());
        prop_assert_eq!(ex.checked_mul(ey).unwrap().to_cyclo(), &x * &y);
        prop_assert_eq!(ex.checked_sub(ey).unwrap().to_cyclo(), &x - &y);
    }
}

#[test]
fn roots_of_unity() {
    let q = CycloNum::omega();
    let z = cyclo::sixth_root();
    assert_eq!(q.pow(3), CycloNum::one());
    assert_eq!(&(&CycloNum::one() + &q) + &q.pow(2), CycloNum::zero());
    assert_eq!(z.pow(2), q);
    assert_eq!(z.pow(6), CycloNum::one());
    assert_eq!(&z * &cyclo::sixth_root_inv(), CycloNum::one());
    assert!(close(z.to_complex(), Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)));
    assert_eq!(-&(&q + &q.pow(2)), CycloNum::one());
    assert!(CycloNum::zero().inv().is_err());
    assert!(Eisenstein::from_cyclo(&CycloNum::from(Rational::new(1, 2))).is_none());
}

#[test]
fn parse_forms() {
    assert_eq!("3/2".parse::<CycloNum>().unwrap(), CycloNum::from(Rational::new(3, 2)));
    assert_eq!("1,-2".parse::<CycloNum>().unwrap(), CycloNum::from_ints(1, -2));
    assert!("x".parse::<CycloNum>().is_err());
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u8, terms: usize) -> MPoly {
    MPoly::from_terms(
        nvars,
        (0..terms).map(|_| {
            let exp: Vec<u8> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (exp, CycloNum::from_ints(rng.gen_range(-9..10), rng.gen_range(-9..10)))
        }),
    )
}

#[test]
fn evaluation_is_multiplicative_and_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let a = random_poly(&mut rng, 3, 3, 6);
        let b = random_poly(&mut rng, 3, 3, 6);
        let x = sample::random_point(&mut rng, 3);
        let (va, vb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        assert_eq!((&a * &b).eval(&x).unwrap(), &va * &vb);
        assert_eq!((&a + &b).eval(&x).unwrap(), &va + &vb);
        assert_eq!((&a - &a).num_terms(), 0);
    }
}

#[test]
fn large_polynomials_evaluate_termwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let p = random_poly(&mut rng, 4, 4, 60);
    let x = sample::random_point(&mut rng, 4);
    let termwise: CycloNum = p
        .terms()
        .map(|(m, c)| {
            m.0.iter()
                .zip(&x)
                .fold(c.clone(), |acc, (&e, xi)| &acc * &xi.pow(e as u32))
        })
        .sum();
    assert_eq!(p.eval(&x).unwrap(), termwise);
    assert!(p.eval(&x[..3]).is_err());
}

#[test]
fn grid_interpolation_recovers_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let bounds = [2u32, 3, 1];
    let grid: Vec<Vec<Rational>> = bounds
        .iter()
        .map(|&d| (0..=d as i64).map(|k| Rational::new(2 * k + 1, 3)).collect())
        .collect();
    for _ in 0..5 {
        let p = MPoly::from_terms(
            3,
            (0..8).map(|_| {
                let exp: Vec<u8> = bounds.iter().map(|&d| rng.gen_range(0..=d as u8)).collect();
                (exp, CycloNum::from_ints(rng.gen_range(-5..6), rng.gen_range(-5..6)))
            }),
        );
        let mut values = HashMap::new();
        for i in 0..3 {
            for j in 0..4 {
                for k in 0..2 {
                    let pt: Vec<CycloNum> = [&grid[0][i], &grid[1][j], &grid[2][k]]
                        .iter()
                        .map(|r| CycloNum::from((*r).clone()))
                        .collect();
                    values.insert(vec![i, j, k], p.eval(&pt).unwrap());
                }
            }
        }
        assert_eq!(mpoly::interpolate_grid(&values, &bounds, &grid).unwrap(), p);
        values.remove(&vec![0, 0, 0]);
        assert!(mpoly::interpolate_grid(&values, &bounds, &grid).is_err());
    }
}

#[test]
fn substitution_matches_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let p = random_poly(&mut rng, 3, 3, 10);
    let x = sample::random_point(&mut rng, 3);
    let sub = p.substitute_value(1, &x[1]);
    assert_eq!(sub.eval(&x).unwrap(), p.eval(&x).unwrap());
    let c = CycloNum::omega_sq();
    let scaled = p.substitute_scaled(2, 0, &c);
    let mut y = x.clone();
    y[2] = &c * &x[0];
    assert_eq!(scaled.eval(&x).unwrap(), p.eval(&y).unwrap());
    let swapped = p.swap_vars(0, 2);
    let mut z = x.clone();
    z.swap(0, 2);
    assert_eq!(swapped.eval(&x).unwrap(), p.eval(&z).unwrap());
}

fn leibniz(m: &[Vec<CycloNum>]) -> CycloNum {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.len();
    let mut total = CycloNum::zero();
    for p in perms(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term: CycloNum = (0..n).map(|i| m[i][p[i]].clone()).product();
        if inversions % 2 == 1 {
            term = -term;
        }
        total += &term;
    }
    total
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<CycloNum>> {
    (0..n)
        .map(|_| (0..n).map(|_| CycloNum::from_ints(rng.gen_range(-4..5), rng.gen_range(-4..5))).collect())
        .collect()
}

#[test]
fn determinant_matches_permutation_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for n in 1..=5 {
        let rows = random_matrix(&mut rng, n);
        assert_eq!(ExactMatrix::from_rows(rows.clone()).determinant(), leibniz(&rows), "n={n}");
    }
}

#[test]
fn inverse_and_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let m = ExactMatrix::from_rows(random_matrix(&mut rng, 4));
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv), ExactMatrix::identity(4));
    let b: Vec<CycloNum> = (0..4).map(CycloNum::from_int).collect();
    let x = m.solve(&b).unwrap();
    assert_eq!(m.mul_vec(&x), b);
}

/// A corank-one matrix: random rows orthogonal to a chosen vector.
fn corank_one(rng: &mut ChaCha8Rng, n: usize) -> (ExactMatrix, Vec<CycloNum>) {
    let v: Vec<CycloNum> = (0..n)
        .map(|k| CycloNum::from_ints(k as i64 + 1, rng.gen_range(-3..4)))
        .collect();
    let mut rows = random_matrix(rng, n);
    for row in rows.iter_mut() {
        let partial: CycloNum = row[..n - 1].iter().zip(&v).map(|(a, b)| a * b).sum();
        row[n - 1] = -&(&partial * &v[n - 1].inv().unwrap());
    }
    (ExactMatrix::from_rows(rows), v)
}

#[test]
fn modular_kernel_matches_exact_nullspace() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for n in 2..=6 {
        let (m, v) = corank_one(&mut rng, n);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1, "n={n}");
        let flat: Vec<CycloNum> = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
        let k = modular::certified_kernel(&flat, n, 0, &v[0], KernelOptions::default(), |c| {
            m.mul_vec(c).iter().all(CycloNum::is_zero)
        })
        .unwrap();
        assert_eq!(k, v, "n={n}");
    }
}

#[test]
fn modular_kernel_rejects_full_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let m = ExactMatrix::from_rows(random_matrix(&mut rng, 4));
    assert_ne!(m.determinant(), CycloNum::zero());
    let flat: Vec<CycloNum> = (0..4).flat_map(|i| m.row(i).to_vec()).collect();
    let r = modular::certified_kernel(&flat, 4, 0, &CycloNum::one(), KernelOptions::default(), |c| {
        m.mul_vec(c).iter().all(CycloNum::is_zero)
    });
    assert!(r.is_err());
}

#[test]
fn field_arithmetic_inverts() {
    for &p in modular::primes().iter().take(3) {
        assert_eq!(p % 3, 2);
        let f = modular::Field::new(p);
        let x = CycloNum::from_ints(12345, -678);
        let xr = modular::Reduce::reduce(&x, &f).unwrap();
        let inv = f.inv(xr).unwrap();
        let one = modular::Reduce::reduce(&CycloNum::one(), &f).unwrap();
        assert_eq!(f.mul(xr, inv), one);
    }
}
