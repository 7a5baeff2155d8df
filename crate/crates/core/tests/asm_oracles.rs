use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sumrule::asm::{self, ASMatrix, WeightAssignment};
use sumrule::cyclo::{self, CycloNum, Rational};
use sumrule::sample;
use sumrule::schur;

fn is_asm(m: &[Vec<i8>]) -> bool {
    let n = m.len();
    let line_ok = |it: &mut dyn Iterator<Item = i8>| {
        let nz: Vec<i8> = it.filter(|&x| x != 0).collect();
        nz.iter().sum::<i8>() == 1 && nz.first() == Some(&1) && nz.windows(2).all(|w| w[0] != w[1])
    };
    (0..n).all(|r| line_ok(&mut m[r].iter().copied())) && (0..n).all(|c| line_ok(&mut (0..n).map(|r| m[r][c])))
}

fn brute_force_asms(n: usize) -> HashSet<Vec<Vec<i8>>> {
    let cells = n * n;
    let mut out = HashSet::new();
    for code in 0..3usize.pow(cells as u32) {
        let mut c = code;
        let mut m = vec![vec![0i8; n]; n];
        for k in 0..cells {
            m[k / n][k % n] = (c % 3) as i8 - 1;
            c /= 3;
        }
        if is_asm(&m) {
            out.insert(m);
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=3 {
        let want = brute_force_asms(n);
        let got: HashSet<Vec<Vec<i8>>> = asm::enumerate_asm(n)
            .unwrap()
            .iter()
            .map(|m| m.entries().to_vec())
            .collect();
        assert_eq!(got, want, "n={n}");
    }
}

#[test]
fn product_formula_sequence() {
    let known: [u64; 10] = [1, 2, 7, 42, 429, 7436, 218_348, 10_850_216, 911_835_460, 129_534_272_700];
    for (k, &a) in known.iter().enumerate() {
        assert_eq!(asm::asm_product_formula(k + 1), a.into());
    }
}

fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}

/// Number of `n × n` ASMs whose top-row 1 sits in column `k`.
fn refined_asm_number(n: u64, k: u64) -> u128 {
    let mut num = factorial(n + k - 2) / (factorial(k - 1) * factorial(n - 1)) * factorial(2 * n - k - 1);
    let mut den = factorial(n - k);
    for j in 0..n - 1 {
        num *= factorial(3 * j + 1);
        den *= factorial(n + j);
    }
    assert_eq!(num % den, 0);
    num / den
}

#[test]
fn refined_marginals_match_closed_form() {
    for n in 1..=5usize {
        let table = asm::refined_counts(n).unwrap();
        for k in 1..=n {
            let want = refined_asm_number(n as u64, k as u64);
            let top: u64 = table[k - 1].iter().sum();
            let bottom: u64 = table.iter().map(|row| row[k - 1]).sum();
            assert_eq!(top as u128, want, "n={n} k={k}");
            assert_eq!(bottom as u128, want, "n={n} k={k}");
        }
    }
}

#[test]
fn six_vertex_images_are_distinct_dwbc_configurations() {
    for n in 1..=5 {
        let all = asm::enumerate_asm(n).unwrap();
        let mut seen = HashSet::new();
        for m in &all {
            let cfg = m.to_six_vertex();
            assert!(cfg.ice_rule() && cfg.domain_wall());
            assert!(seen.insert((cfg.right.clone(), cfg.up.clone())));
        }
        assert_eq!(asm::count_dwbc_configs(n).unwrap(), all.len() as u64);
    }
}

#[test]
fn invalid_matrices_are_rejected() {
    assert!(ASMatrix::new(vec![vec![1, 1], vec![0, 0]]).is_err());
    assert!(ASMatrix::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).is_ok());
    assert!(ASMatrix::new(vec![vec![1, 0, 0], vec![-1, 1, 1], vec![1, 0, 0]]).is_err());
    assert!(ASMatrix::new(vec![vec![1, 0], vec![0]]).is_err());
}

/// Six-vertex sum over every arrow configuration, built edge by edge.
/// Edges are `true` when pointing right or up.
fn six_vertex_sum(n: usize, x: &[CycloNum]) -> CycloNum {
    let s = cyclo::sixth_root();
    let si = cyclo::sixth_root_inv();
    let weight = |r: usize, c: usize, l: bool, rt: bool, t: bool, b: bool| -> CycloNum {
        let (xw, xz) = (&x[r], &x[n + c]);
        let (w, z) = (xw * xw, xz * xz);
        if l != rt || t != b {
            &(&(&CycloNum::omega_sq() - &CycloNum::omega()) * xw) * xz
        } else if l == t {
            &(&si * &w) - &(&s * &z)
        } else {
            &(&si * &z) - &(&s * &w)
        }
    };
    // rows top to bottom; `top[c]` is the edge above the current row
    fn rows(
        n: usize,
        r: usize,
        top: Vec<bool>,
        weight: &dyn Fn(usize, usize, bool, bool, bool, bool) -> CycloNum,
    ) -> CycloNum {
        if r == n {
            return if top.iter().all(|&u| !u) { CycloNum::one() } else { CycloNum::zero() };
        }
        let mut total = CycloNum::zero();
        for bits in 0..1u32 << n {
            let bottom: Vec<bool> = (0..n).map(|c| bits >> c & 1 == 1).collect();
            let mut left = true;
            let mut w = CycloNum::one();
            for c in 0..n {
                // incoming: left edge pointing right, top pointing down, bottom pointing up
                let (t, b) = (top[c], bottom[c]);
                let incoming_so_far = left as usize + !t as usize + b as usize;
                if incoming_so_far == 0 || incoming_so_far == 3 {
                    w = CycloNum::zero();
                    break;
                }
                let rt = incoming_so_far == 2;
                w = &w * &weight(r, c, left, rt, t, b);
                left = rt;
            }
            if w.is_zero() || left {
                continue;
            }
            total += &(&w * &rows(n, r + 1, bottom, weight));
        }
        total
    }
    rows(n, 0, vec![true; n], &weight)
}

#[test]
fn dwbc_oracle_triangle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let qq = &CycloNum::omega_sq() - &CycloNum::omega();
    for n in 1..=4 {
        for _ in 0..3 {
            let xr = sample::random_rationals(&mut rng, 2 * n);
            let x: Vec<CycloNum> = xr.iter().cloned().map(CycloNum::from).collect();
            let x2: Vec<CycloNum> = x.iter().map(|v| v * v).collect();
            let mut norm = &x.iter().cloned().product::<CycloNum>() * &qq.pow(n as u32);
            if (n * (n - 1) / 2) % 2 == 1 {
                norm = -norm;
            }
            let raw = six_vertex_sum(n, &x);
            let schur_side = schur::schur_eval(&schur::y_partition(n), &x2);
            let brute = asm::dwbc_bruteforce(n, &xr).unwrap();
            assert_eq!(&raw * &norm.inv().unwrap(), schur_side, "n={n}");
            assert_eq!(brute, schur_side, "n={n}");
            assert_eq!(asm::dwbc_with(n, &xr, WeightAssignment::ParallelIsB).unwrap(), brute);
        }
    }
}

#[test]
fn refined_identity_at_random_and_unit_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for n in 1..=4 {
        for _ in 0..3 {
            let tu = sample::random_point(&mut rng, 2);
            assert!(asm::refined_generating_check(n, &tu[0], &tu[1]).unwrap().pass);
        }
        let one = CycloNum::one();
        let (lhs, rhs) = asm::refined_sides(n, &one, &one).unwrap();
        let an = CycloNum::from(Rational::from_integer(asm::asm_product_formula(n)));
        assert_eq!(lhs, an);
        assert_eq!(rhs, an);
    }
    let pole = -CycloNum::omega();
    assert!(asm::refined_sides(2, &pole, &CycloNum::one()).is_err());
}

#[test]
fn caps_are_enforced() {
    assert!(asm::enumerate_asm(asm::ENUM_CAP + 1).is_err());
    let x = vec![Rational::one(); 2 * (asm::DWBC_CAP + 1)];
    assert!(asm::dwbc_bruteforce(asm::DWBC_CAP + 1, &x).is_err());
    assert!(asm::dwbc_bruteforce(2, &x[..3]).is_err());
}

#[test]
fn csv_has_header_and_rows() {
    let csv = asm::refined_csv(&asm::refined_counts(3).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "j,k=1,k=2,k=3");
    assert_eq!(lines.len(), 4);
}
