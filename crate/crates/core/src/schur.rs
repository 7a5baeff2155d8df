//! Schur functions at exact points, the domain-wall partition function
//! `Z_n = s_{Y_n}`, and the Bethe-root polynomials `F_n`, `Q_n`.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloNum, Rational};
use crate::error::{Error, Result};
use crate::groundstate;
use crate::linkpat;
use crate::mpoly::MPoly;
use crate::report::CheckReport;
use crate::sample;
use crate::solver::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {parts:?} are not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// `Y_n = (n−1, n−1, n−2, n−2, …, 1, 1)`.
pub fn y_partition(n: usize) -> Partition {
    let parts = (1..n).rev().flat_map(|k| [k, k]).collect();
    Partition { parts }
}

/// `Ỹ_n = (n, n−1, n−1, …, 1, 1)`.
pub fn y_tilde_partition(n: usize) -> Partition {
    let mut parts = vec![n];
    parts.extend(y_partition(n).parts);
    Partition { parts }
}

fn pairwise_distinct(x: &[CycloNum]) -> bool {
    x.iter().enumerate().all(|(i, a)| x[..i].iter().all(|b| a != b))
}

/// `s_λ(x)`: bialternant for distinct values, Jacobi–Trudi otherwise.
pub fn schur_eval(lambda: &Partition, x: &[CycloNum]) -> CycloNum {
    if lambda.len() > x.len() {
        return CycloNum::zero();
    }
    if pairwise_distinct(x) {
        schur_bialternant(lambda, x)
    } else {
        schur_jacobi_trudi(lambda, x)
    }
}

pub fn schur_bialternant(lambda: &Partition, x: &[CycloNum]) -> CycloNum {
    let n = x.len();
    if lambda.len() > n {
        return CycloNum::zero();
    }
    let powers: Vec<Vec<CycloNum>> = x
        .iter()
        .map(|xi| {
            let top = lambda.parts.first().copied().unwrap_or(0) + n;
            let mut p = Vec::with_capacity(top);
            let mut acc = CycloNum::one();
            for _ in 0..top {
                p.push(acc.clone());
                acc = &acc * xi;
            }
            p
        })
        .collect();
    let num = ExactMatrix::from_fn(n, n, |i, j| {
        let lj = lambda.parts.get(j).copied().unwrap_or(0);
        powers[i][lj + n - 1 - j].clone()
    })
    .determinant();
    let vandermonde: CycloNum = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| &x[i] - &x[j])
        .product();
    &num * &vandermonde.inv().expect("distinct values")
}

/// Complete homogeneous sums `h_0..=h_max` of `x`.
pub fn complete_homogeneous(x: &[CycloNum], max: usize) -> Vec<CycloNum> {
    let mut h = vec![CycloNum::zero(); max + 1];
    h[0] = CycloNum::one();
    for xi in x {
        for k in 1..=max {
            let add = xi * &h[k - 1];
            h[k] += &add;
        }
    }
    h
}

pub fn schur_jacobi_trudi(lambda: &Partition, x: &[CycloNum]) -> CycloNum {
    let l = lambda.len();
    if l > x.len() {
        return CycloNum::zero();
    }
    if l == 0 {
        return CycloNum::one();
    }
    let h = complete_homogeneous(x, lambda.parts[0] + l);
    ExactMatrix::from_fn(l, l, |i, j| {
        let k = lambda.parts[i] as isize - i as isize + j as isize;
        if k < 0 {
            CycloNum::zero()
        } else {
            h[k as usize].clone()
        }
    })
    .determinant()
}

pub const TABLEAU_CAP: usize = 1_000_000;

/// `s_λ(x_1, …, x_m)` as a polynomial, summed over semistandard tableaux.
pub fn schur_polynomial(lambda: &Partition, nvars: usize) -> Result<MPoly> {
    if lambda.len() > nvars {
        return Ok(MPoly::zero(nvars));
    }
    let count = schur_eval(lambda, &vec![CycloNum::one(); nvars]);
    if count.a > Rational::from(TABLEAU_CAP as i64) {
        return Err(Error::SizeCap {
            what: "tableau enumeration",
            n: lambda.size(),
            cap: TABLEAU_CAP,
        });
    }
    let cells: Vec<(usize, usize)> = lambda
        .parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut fill: Vec<Vec<usize>> = lambda.parts.iter().map(|&len| vec![0; len]).collect();
    let mut counts: HashMap<Vec<u8>, i64> = HashMap::new();
    let mut exp = vec![0u8; nvars];
    fill_cell(&cells, 0, nvars, &mut fill, &mut exp, &mut counts);
    Ok(MPoly::from_terms(
        nvars,
        counts.into_iter().map(|(e, k)| (e, CycloNum::from_int(k))),
    ))
}

fn fill_cell(
    cells: &[(usize, usize)],
    k: usize,
    nvars: usize,
    fill: &mut [Vec<usize>],
    exp: &mut [u8],
    counts: &mut HashMap<Vec<u8>, i64>,
) {
    let Some(&(r, c)) = cells.get(k) else {
        *counts.entry(exp.to_vec()).or_insert(0) += 1;
        return;
    };
    let lo_row = if c > 0 { fill[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..nvars {
        fill[r][c] = v;
        exp[v] += 1;
        fill_cell(cells, k + 1, nvars, fill, exp, counts);
        exp[v] -= 1;
    }
}

/// `Z_n(z_1, …, z_{2n}) = s_{Y_n}(z)`.
pub fn z_partition_function(n: usize, z: &[CycloNum]) -> Result<CycloNum> {
    if z.len() != 2 * n {
        return Err(Error::ArityMismatch {
            expected: 2 * n,
            got: z.len(),
        });
    }
    Ok(schur_eval(&y_partition(n), z))
}

fn json_point(z: &[CycloNum]) -> serde_json::Value {
    serde_json::to_value(z).unwrap_or_default()
}

/// `Z_n|_{z_{i+1}=q²z_i} = ∏_{j≠i,i+1}(q z_i − z_j) Z_{n−1}(z without z_i, z_{i+1})`
/// at random points.
pub fn check_z_recursion<G: Rng + ?Sized>(n: usize, i: usize, rng: &mut G, points: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("Z recursion n={n} i={i}"));
    for _ in 0..points {
        let mut z = sample::random_point(rng, 2 * n);
        z[i] = &CycloNum::omega_sq() * &z[i - 1];
        let zi = z[i - 1].clone();
        let rest: Vec<CycloNum> = z
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i - 1 && j != i)
            .map(|(_, x)| x.clone())
            .collect();
        let prefactor: CycloNum = rest.iter().map(|zj| &(&CycloNum::omega() * &zi) - zj).product();
        let lhs = schur_eval(&y_partition(n), &z);
        let rhs = &prefactor * &schur_eval(&y_partition(n - 1), &rest);
        rep.push_with("random point", lhs == rhs, Some(json_point(&z)));
    }
    rep
}

fn to_cyclo(z: &[Rational]) -> Vec<CycloNum> {
    z.iter().cloned().map(CycloNum::from).collect()
}

/// The monic degree-`3n` polynomial with no `t^{3k+1}` terms (`k < n`)
/// vanishing at every `w_i = q z_i`.
pub fn f_poly(n: usize, z: &[Rational]) -> Result<MPoly> {
    if z.len() != 2 * n {
        return Err(Error::ArityMismatch {
            expected: 2 * n,
            got: z.len(),
        });
    }
    let w: Vec<CycloNum> = to_cyclo(z).iter().map(|zi| &CycloNum::omega() * zi).collect();
    let exps: Vec<usize> = (0..3 * n).filter(|e| e % 3 != 1).collect();
    let m = ExactMatrix::from_fn(2 * n, 2 * n, |i, j| w[i].pow(exps[j] as u32));
    let rhs: Vec<CycloNum> = w.iter().map(|wi| -wi.pow(3 * n as u32)).collect();
    let a = m.solve(&rhs).map_err(|_| Error::DegenerateDenominator)?;
    let mut coeffs = vec![CycloNum::zero(); 3 * n + 1];
    for (e, c) in exps.iter().zip(a) {
        coeffs[*e] = c;
    }
    coeffs[3 * n] = CycloNum::one();
    Ok(MPoly::from_univariate(&coeffs))
}

/// `Q_n(t) = F_n(t) / ∏(t − q z_i)`, remainder required to vanish.
pub fn q_poly(n: usize, z: &[Rational]) -> Result<MPoly> {
    let f = f_poly(n, z)?;
    let d = to_cyclo(z)
        .iter()
        .map(|zi| MPoly::from_univariate(&[-(&CycloNum::omega() * zi), CycloNum::one()]))
        .fold(MPoly::one(1), |acc, p| &acc * &p);
    let (quot, rem) = f.div_rem_univariate(&d)?;
    if !rem.is_zero() {
        return Err(Error::NonzeroRemainder);
    }
    Ok(quot)
}

fn linear_product(roots: impl Iterator<Item = (CycloNum, CycloNum)>) -> MPoly {
    roots
        .map(|(a, b)| MPoly::from_univariate(&[b, a]))
        .fold(MPoly::one(1), |acc, p| &acc * &p)
}

/// Checks at one point: the functional identity for
/// `F_n`, the vanishing coefficients, roots at `q z_i`, exact division,
/// the T–Q equation with `𝒯_n(t) = ∏(qt − q⁻¹z_i)`, and `Q_n` against the
/// Schur ratio `s_{Y_{n+1}}(w, t) / s_{Ỹ_n}(w)` at a few values of `t`.
pub fn check_tq(n: usize, z: &[Rational]) -> Result<CheckReport> {
    let q = CycloNum::omega();
    let q2 = CycloNum::omega_sq();
    let zc = to_cyclo(z);
    let mut rep = CheckReport::new(format!("T-Q n={n}"));
    let cx = Some(serde_json::to_value(z).unwrap_or_default());

    let f = f_poly(n, z)?;
    let combo = &(&f + &f.scale_argument(&q).scale(&q2)) + &f.scale_argument(&q2).scale(&q);
    rep.push_with("F(t) + q²F(qt) + qF(q²t) = 0", combo.is_zero(), cx.clone());
    let coeffs = f.univariate_coeffs();
    let gaps = (0..n).all(|k| coeffs.get(3 * k + 1).is_none_or(CycloNum::is_zero));
    rep.push_with("a_{3k+1} = 0", gaps, cx.clone());
    rep.push_with("identity and coefficient condition agree", gaps == combo.is_zero(), cx.clone());
    let roots = zc.iter().all(|zi| f.eval(&[&q * zi]).is_ok_and(|v| v.is_zero()));
    rep.push_with("F(q z_i) = 0", roots, cx.clone());

    let qp = match q_poly(n, z) {
        Ok(p) => p,
        Err(Error::NonzeroRemainder) => {
            rep.push_with("division remainder-free", false, cx);
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    rep.push("division remainder-free", true);
    rep.push_with("deg Q = n", qp.degree_in(0) as usize == n, cx.clone());

    let eig = linear_product(zc.iter().map(|zi| (q.clone(), -(&q2 * zi))));
    let left = &eig * &qp;
    let c1 = q.powi(1 - n as i32)?;
    let c2 = q.powi(n as i32 - 1)?;
    let p1 = linear_product(zc.iter().map(|zi| (q2.clone(), -(&q * zi))));
    let p2 = linear_product(zc.iter().map(|zi| (CycloNum::one(), -zi.clone())));
    let right = -&(&(&p1 * &qp.scale_argument(&q2)).scale(&c1) + &(&p2 * &qp.scale_argument(&q)).scale(&c2));
    rep.push_with("T-Q equation", left == right, cx.clone());

    let w: Vec<CycloNum> = zc.iter().map(|zi| &q * zi).collect();
    let den = schur_eval(&y_tilde_partition(n), &w);
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let den_inv = den.inv()?;
    let ratio_ok = (0..=n as i64).all(|k| {
        let t = CycloNum::from_ints(k * 7 + 3, 1 - k);
        let mut wt = w.clone();
        wt.push(t.clone());
        let ratio = &schur_eval(&y_partition(n + 1), &wt) * &den_inv;
        qp.eval(&[t]).is_ok_and(|v| v == ratio)
    });
    rep.push_with("Q = Schur ratio", ratio_ok, cx);
    Ok(rep)
}

/// Floating-point outcome of the Bethe-ansatz construction.
#[derive(Clone, Debug, Serialize)]
pub struct AbaResidual {
    pub n: usize,
    pub roots: Vec<[f64; 2]>,
    /// `‖T P − 𝒯 P‖ / ‖𝒯 P‖` at a few values of the spectral parameter.
    pub residual: f64,
    /// Relative mismatch between the Rayleigh quotient and `𝒯(t)`.
    pub eigenvalue_error: f64,
    /// Sine of the angle between `P` and the embedded groundstate.
    pub angle: f64,
}

pub const ABA_CAP: usize = 3;
pub const ABA_TOLERANCE: f64 = 1e-9;

impl AbaResidual {
    pub fn pass(&self) -> bool {
        self.residual < ABA_TOLERANCE && self.eigenvalue_error < ABA_TOLERANCE && self.angle < ABA_TOLERANCE
    }
}

fn polish_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    let scale = 1.0 + monic.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut r: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * scale).collect();
    // Durand–Kerner
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let denom: Complex64 = (0..d).filter(|&j| j != i).map(|j| r[i] - r[j]).product();
            if denom.norm() == 0.0 {
                return Err(Error::RootFinding);
            }
            let step = eval(r[i]) / denom;
            r[i] -= step;
            delta = delta.max(step.norm() / (1.0 + r[i].norm()));
        }
        if delta < 1e-15 {
            return Ok(r);
        }
    }
    let worst = r.iter().map(|&x| eval(x).norm()).fold(0.0, f64::max);
    if worst < 1e-10 * scale.powi(d as i32) {
        Ok(r)
    } else {
        Err(Error::RootFinding)
    }
}

const QC: Complex64 = Complex64::new(-0.5, 0.866_025_403_784_438_6);

fn monodromy_c(t: Complex64, z: &[Complex64], up: &mut [Complex64], down: &mut [Complex64]) {
    let qi = QC.conj();
    for (b, &zi) in z.iter().enumerate() {
        let alpha = QC * zi - qi * t;
        let beta = zi - t;
        let gt = (QC - qi) * t;
        let gz = (QC - qi) * zi;
        let bit = 1usize << b;
        for s in (0..up.len()).filter(|s| s & bit == 0) {
            let s2 = s | bit;
            let (uu, ud, du, dd) = (up[s], down[s], up[s2], down[s2]);
            up[s] = alpha * uu;
            down[s] = beta * ud + gt * du;
            up[s2] = gz * ud + beta * du;
            down[s2] = alpha * dd;
        }
    }
}

fn b_apply(t: Complex64, z: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let mut up = vec![Complex64::new(0.0, 0.0); v.len()];
    let mut down = v.to_vec();
    monodromy_c(t, z, &mut up, &mut down);
    up
}

fn transfer_c(t: Complex64, z: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    let zero = vec![Complex64::new(0.0, 0.0); v.len()];
    let (mut au, mut ad) = (v.to_vec(), zero.clone());
    monodromy_c(t, z, &mut au, &mut ad);
    let (mut du, mut dd) = (zero, v.to_vec());
    monodromy_c(t, z, &mut du, &mut dd);
    au.iter().zip(&dd).map(|(a, d)| -QC * a - QC.conj() * d).collect()
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Builds `∏ B(t_i)|↑…↑⟩` from numerical roots of `Q_n` and measures how
/// well it is a transfer-matrix eigenvector proportional to the groundstate.
pub fn aba_residual(n: usize, z: &[Rational]) -> Result<AbaResidual> {
    if n > ABA_CAP {
        return Err(Error::SizeCap {
            what: "Bethe ansatz check",
            n,
            cap: ABA_CAP,
        });
    }
    let qp = q_poly(n, z)?;
    let coeffs: Vec<Complex64> = qp.univariate_coeffs().iter().map(CycloNum::to_complex).collect();
    let roots = polish_roots(&coeffs)?;
    let zc: Vec<Complex64> = z.iter().map(|x| Complex64::new(x.to_f64(), 0.0)).collect();
    let dim = 1usize << (2 * n);
    let mut p = vec![Complex64::new(0.0, 0.0); dim];
    p[0] = Complex64::new(1.0, 0.0);
    for &ti in &roots {
        p = b_apply(ti, &zc, &p);
    }
    let pn = norm(&p);
    if pn == 0.0 {
        return Err(Error::RootFinding);
    }

    let mut residual = 0.0f64;
    let mut eigenvalue_error = 0.0f64;
    for t in [0.37, 1.9, -2.3] {
        let tc = Complex64::new(t, 0.0);
        let lambda: Complex64 = zc.iter().map(|&zi| QC * tc - QC.conj() * zi).product();
        let tp = transfer_c(tc, &zc, &p);
        let lp: Vec<Complex64> = p.iter().map(|x| lambda * x).collect();
        let diff: Vec<Complex64> = tp.iter().zip(&lp).map(|(a, b)| a - b).collect();
        residual = residual.max(norm(&diff) / norm(&lp));
        let rayleigh: Complex64 =
            p.iter().zip(&tp).map(|(a, b)| a.conj() * b).sum::<Complex64>() / (pn * pn);
        eigenvalue_error = eigenvalue_error.max((rayleigh - lambda).norm() / lambda.norm());
    }

    let zq: Vec<CycloNum> = to_cyclo(z);
    let psi = groundstate::psi_point_auto(n, &zq)?;
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    for (pi, c) in linkpat::enumerate(n).iter().zip(&psi.values) {
        let cc = c.to_complex();
        for (k, x) in pi.spin_embed().iter().enumerate() {
            if !x.is_zero() {
                e[k] += cc * x.to_complex();
            }
        }
    }
    let overlap: Complex64 = e.iter().zip(&p).map(|(a, b)| a.conj() * b).sum();
    let c = overlap / norm(&e).powi(2);
    let perp: Vec<Complex64> = p.iter().zip(&e).map(|(a, b)| a - c * b).collect();
    let angle = norm(&perp) / pn;

    Ok(AbaResidual {
        n,
        roots: roots.iter().map(|r| [r.re, r.im]).collect(),
        residual,
        eigenvalue_error,
        angle,
    })
}
