//! The groundstate vector Ψ_n: exact eigenvectors at numeric points,
//! polynomial reconstruction by interpolation, and the structural checks
//! run against the reconstructed components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cyclo::{CycloNum, Eisenstein, Rational, RingElem, SmallEisenstein};
use crate::error::{Error, Result};
use crate::linkpat::{self, LinkPattern};
use crate::mpoly::{self, MPoly};
use crate::report::CheckReport;
use crate::sample;
use crate::solver::modular::{self, KernelOptions, Reduce};
use crate::tmatrix::{self, LinkOperator};

/// Largest n reconstructed symbolically by default.
pub const SYMBOLIC_CAP: usize = 4;
/// Largest n reconstructed when long runs are explicitly allowed.
pub const LONG_SYMBOLIC_CAP: usize = 5;

fn q() -> CycloNum {
    CycloNum::omega()
}

fn qinv() -> CycloNum {
    CycloNum::omega_sq()
}

fn lin(nvars: usize, i: usize, a: CycloNum, j: usize, b: CycloNum) -> MPoly {
    MPoly::linear(nvars, &[(i, a), (j, b)])
}

/// Product formula for the fully nested component.
pub fn base_component(n: usize) -> MPoly {
    let m = 2 * n;
    let mut p = MPoly::one(m);
    for i in 0..n {
        for j in i + 1..n {
            p = &p * &lin(m, i, q(), j, -qinv());
        }
    }
    for i in n..m {
        for j in i + 1..m {
            p = &p * &lin(m, j, qinv(), i, -q());
        }
    }
    p
}

/// [`base_component`] evaluated at a point without building the polynomial.
pub fn base_value(n: usize, z: &[CycloNum]) -> CycloNum {
    let mut acc = CycloNum::one();
    for i in 0..n {
        for j in i + 1..n {
            acc *= &(&(&q() * &z[i]) - &(&qinv() * &z[j]));
        }
    }
    for i in n..2 * n {
        for j in i + 1..2 * n {
            acc *= &(&(&qinv() * &z[j]) - &(&q() * &z[i]));
        }
    }
    acc
}

/// Exact eigenvector at one specialization of the spectral parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointVector {
    pub n: usize,
    pub z: Vec<CycloNum>,
    pub t: CycloNum,
    /// Components in canonical pattern order.
    pub values: Vec<CycloNum>,
}

impl PointVector {
    pub fn value(&self, pi: &LinkPattern) -> &CycloNum {
        let basis = tmatrix::link_basis(self.n);
        &self.values[linkpat::index_of(&basis.patterns, pi)]
    }
}

/// Candidate spectral parameters `t = 1, 2, 3, …`, skipping values equal to
/// some `z_i`.
pub fn t_schedule(z: &[CycloNum]) -> impl Iterator<Item = Rational> + '_ {
    (1i64..).map(Rational::from).filter(move |t| {
        let tc = CycloNum::from(t.clone());
        !z.contains(&tc)
    })
}

pub fn psi_point(n: usize, z: &[Rational], t: &Rational) -> Result<PointVector> {
    let zc: Vec<CycloNum> = z.iter().cloned().map(CycloNum::from).collect();
    psi_point_at(n, &zc, &CycloNum::from(t.clone()))
}

/// Eigenvector at `(t, z)` normalized by the fully nested component.
pub fn psi_point_at(n: usize, z: &[CycloNum], t: &CycloNum) -> Result<PointVector> {
    if z.len() != 2 * n {
        return Err(Error::ArityMismatch {
            expected: 2 * n,
            got: z.len(),
        });
    }
    if n > tmatrix::SPIN_CAP {
        return Err(Error::SizeCap {
            what: "eigenvector",
            n,
            cap: tmatrix::SPIN_CAP,
        });
    }
    let basis = tmatrix::link_basis(n);
    let c = basis.patterns.len();
    let i0 = linkpat::index_of(&basis.patterns, &LinkPattern::fully_nested(n));
    let norm = base_value(n, z);
    if norm.is_zero() {
        return Err(Error::Pole("fully nested component vanishes at this point".into()));
    }

    let mut all = z.to_vec();
    all.push(t.clone());
    let d = tmatrix::common_denominator(&all);
    if let Some(scaled) = tmatrix::scaled_eisenstein(&all, &d) {
        let small: Option<Vec<SmallEisenstein>> =
            scaled.iter().map(|&e| SmallEisenstein::from_eisenstein(e)).collect();
        if let Some(small) = small {
            let (zs, ts) = small.split_at(2 * n);
            if let Some(values) = kernel_in_ring(&basis, &ts[0], zs, c, i0, &norm)? {
                return Ok(PointVector {
                    n,
                    z: z.to_vec(),
                    t: t.clone(),
                    values,
                });
            }
        }
        let (zs, ts) = scaled.split_at(2 * n);
        if let Some(values) = kernel_in_ring(&basis, &ts[0], zs, c, i0, &norm)? {
            return Ok(PointVector {
                n,
                z: z.to_vec(),
                t: t.clone(),
                values,
            });
        }
    }
    let values = kernel_in_ring(&basis, t, z, c, i0, &norm)?.expect("exact field never overflows");
    Ok(PointVector {
        n,
        z: z.to_vec(),
        t: t.clone(),
        values,
    })
}

fn kernel_in_ring<R: RingElem + Reduce>(
    basis: &tmatrix::LinkBasis,
    t: &R,
    z: &[R],
    c: usize,
    i0: usize,
    norm: &CycloNum,
) -> Result<Option<Vec<CycloNum>>> {
    let Some(mut m) = tmatrix::link_matrix_ring(basis, t, z)? else {
        return Ok(None);
    };
    let q = R::omega();
    let qi = R::omega_sq();
    let mut lambda = R::one();
    for zi in z {
        let f = q.try_mul(t).and_then(|a| a.try_sub(&qi.try_mul(zi)?));
        match f.and_then(|f| lambda.try_mul(&f)) {
            Some(x) => lambda = x,
            None => return Ok(None),
        }
    }
    for i in 0..c {
        match m[i * c + i].try_sub(&lambda) {
            Some(x) => m[i * c + i] = x,
            None => return Ok(None),
        }
    }
    let v = modular::certified_kernel(&m, c, i0, norm, KernelOptions::default(), |v| annihilates(&m, v, c))?;
    Ok(Some(v))
}

/// Exact test of `A v = 0`, in machine integers when possible.
fn annihilates<R: RingElem>(a: &[R], v: &[CycloNum], c: usize) -> bool {
    let ve: Option<Vec<R>> = v
        .iter()
        .map(|x| Eisenstein::from_cyclo(x).and_then(R::from_eisenstein))
        .collect();
    if let Some(ve) = ve {
        let fast = (0..c).try_fold(true, |ok, i| {
            let mut acc = R::zero();
            for j in 0..c {
                acc = acc.try_mul_add(&a[i * c + j], &ve[j])?;
            }
            Some(ok && acc.is_zero())
        });
        if let Some(ok) = fast {
            return ok;
        }
    }
    let entries: Vec<CycloNum> = a.iter().map(RingElem::to_cyclo).collect();
    if entries.iter().all(|x| x.a.is_integer() && x.b.is_integer()) {
        return annihilates_integral(&entries, v, c);
    }
    (0..c).all(|i| {
        let s: CycloNum = (0..c)
            .filter(|&j| !entries[i * c + j].is_zero() && !v[j].is_zero())
            .map(|j| &entries[i * c + j] * &v[j])
            .sum();
        s.is_zero()
    })
}

/// `A v = 0` for integral `A`, after clearing the denominators of `v`.
fn annihilates_integral(a: &[CycloNum], v: &[CycloNum], c: usize) -> bool {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
    let scaled = |r: &Rational| r.numer() * (&l / r.denom());
    let vi: Vec<(BigInt, BigInt)> = v.iter().map(|x| (scaled(&x.a), scaled(&x.b))).collect();
    (0..c).all(|i| {
        let (mut sa, mut sb) = (BigInt::zero(), BigInt::zero());
        for (e, (x, y)) in a[i * c..(i + 1) * c].iter().zip(&vi) {
            if e.is_zero() {
                continue;
            }
            let (p, q) = (e.a.numer(), e.b.numer());
            // (p + qω)(x + yω) = px − qy + (py + qx − qy)ω
            let qy = q * y;
            sa += p * x - &qy;
            sb += p * y + q * x - qy;
        }
        sa.is_zero() && sb.is_zero()
    })
}

/// [`psi_point_at`] with `t` taken from [`t_schedule`], retrying on a
/// degenerate kernel.
pub fn psi_point_auto(n: usize, z: &[CycloNum]) -> Result<PointVector> {
    let mut last = None;
    for t in t_schedule(z).take(8) {
        match psi_point_at(n, z, &CycloNum::from(t)) {
            Err(e @ Error::DegenerateKernel { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("schedule is non-empty"))
}

/// The exact polynomial components of Ψ_n.
#[derive(Clone, Debug, PartialEq)]
pub struct Groundstate {
    pub n: usize,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<MPoly>,
}

impl Groundstate {
    pub fn component(&self, pi: &LinkPattern) -> &MPoly {
        &self.components[linkpat::index_of(&self.patterns, pi)]
    }

    pub fn eval(&self, z: &[CycloNum]) -> Result<Vec<CycloNum>> {
        self.components.iter().map(|p| p.eval(z)).collect()
    }

    /// Components at `z_1 = … = z_{2n} = 1`.
    pub fn all_ones(&self) -> Vec<CycloNum> {
        self.eval(&vec![CycloNum::one(); 2 * self.n])
            .expect("arity matches")
    }
}

#[derive(Serialize, Deserialize)]
struct GroundstateJson {
    n: usize,
    patterns: Vec<LinkPattern>,
    components: Vec<MPoly>,
}

impl Serialize for Groundstate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroundstateJson {
            n: self.n,
            patterns: self.patterns.clone(),
            components: self.components.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Groundstate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GroundstateJson::deserialize(d)?;
        if j.patterns.len() != j.components.len() {
            return Err(serde::de::Error::custom("pattern and component counts differ"));
        }
        Ok(Groundstate {
            n: j.n,
            patterns: j.patterns,
            components: j.components,
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SymbolicOptions {
    /// Permit `n = LONG_SYMBOLIC_CAP` (millions of kernel solves).
    pub allow_long: bool,
}

/// Reconstructs Ψ_n by sampling on a tensor grid with `z_{2n} = 1` and
/// `n` nodes per remaining variable, then interpolating and
/// re-homogenizing.
pub fn psi_symbolic(n: usize, opts: SymbolicOptions) -> Result<Groundstate> {
    let cap = if opts.allow_long { LONG_SYMBOLIC_CAP } else { SYMBOLIC_CAP };
    if n == 0 || n > cap {
        return Err(Error::SizeCap {
            what: "symbolic groundstate",
            n,
            cap,
        });
    }
    let patterns = linkpat::enumerate(n);
    if n == 1 {
        return Ok(Groundstate {
            n,
            patterns,
            components: vec![MPoly::one(2)],
        });
    }
    let free = 2 * n - 1;
    let nodes: Vec<Rational> = (1..=n as i64).map(Rational::from).collect();
    let grid = vec![nodes; free];
    let dims = vec![n; free];
    let total: usize = dims.iter().product();

    let points: Vec<Vec<CycloNum>> = {
        let mut idx = vec![0usize; free];
        let mut out = Vec::with_capacity(total);
        for _ in 0..total {
            let mut z: Vec<CycloNum> = idx.iter().map(|&k| CycloNum::from_int(k as i64 + 1)).collect();
            z.push(CycloNum::one());
            out.push(z);
            mpoly::increment(&mut idx, &dims);
        }
        out
    };
    let values: Vec<Vec<CycloNum>> = points
        .par_iter()
        .map(|z| psi_point_auto(n, z).map(|p| p.values))
        .collect::<Result<_>>()?;

    let degree = (n * (n - 1)) as u32;
    let components = (0..patterns.len())
        .into_par_iter()
        .map(|k| {
            let data: Vec<CycloNum> = values.iter().map(|v| v[k].clone()).collect();
            let integral: Option<Vec<Eisenstein>> = data.iter().map(Eisenstein::from_cyclo).collect();
            let dehom = match integral.and_then(|d| mpoly::interpolate_tensor_integral(d, &grid)) {
                Some(p) => p,
                None => mpoly::interpolate_tensor(data, &grid)?,
            };
            dehom.homogenize(degree, (n - 1) as u32)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Groundstate {
        n,
        patterns,
        components,
    };
    // off-grid spot check of the eigenvector equation
    let z: Vec<CycloNum> = (0..2 * n as i64)
        .map(|k| CycloNum::from_rational(Rational::new(2 * k + 3, 2)))
        .collect();
    let t = CycloNum::from_rational(Rational::new(1, 3));
    if !eigen_residual_vanishes(&g, &t, &z)? {
        return Err(Error::VerificationFailed(
            "interpolated components are not an eigenvector off the grid".into(),
        ));
    }
    Ok(g)
}

fn eigen_residual_vanishes(g: &Groundstate, t: &CycloNum, z: &[CycloNum]) -> Result<bool> {
    let m = tmatrix::transfer_link(t, z)?;
    let v = g.eval(z)?;
    let lambda = tmatrix::eigenvalue(t, z);
    Ok(m.apply(&v).iter().zip(&v).all(|(a, b)| *a == b * &lambda))
}

pub fn sum_components(g: &Groundstate) -> MPoly {
    g.components
        .iter()
        .fold(MPoly::zero(2 * g.n), |acc, p| &acc + p)
}

/// Closed forms of the components for n = 2 and n = 3, in canonical order.
pub fn reference_components(n: usize) -> Option<Groundstate> {
    let m = 2 * n;
    // (q z_i − z_j) and (z_i − q z_j), 1-indexed
    let a = |i: usize, j: usize| lin(m, i - 1, q(), j - 1, CycloNum::from_int(-1));
    let b = |i: usize, j: usize| lin(m, i - 1, CycloNum::one(), j - 1, -q());
    let prod = |fs: Vec<MPoly>| fs.iter().fold(MPoly::one(m), |acc, f| &acc * f);
    let chords = |c: &[(usize, usize)]| LinkPattern::from_chords(c).expect("valid pattern");
    let q2 = CycloNum::omega_sq();
    let entries: Vec<(LinkPattern, MPoly)> = match n {
        2 => vec![
            (chords(&[(1, 4), (2, 3)]), prod(vec![a(2, 1), b(3, 4)]).scale(&q2)),
            (chords(&[(1, 2), (3, 4)]), prod(vec![a(3, 2), b(4, 1)]).scale(&q2)),
        ],
        3 => vec![
            (
                chords(&[(1, 6), (2, 5), (3, 4)]),
                prod(vec![a(2, 1), a(3, 2), a(3, 1), b(4, 5), b(5, 6), b(4, 6)]),
            ),
            (
                chords(&[(1, 4), (2, 3), (5, 6)]),
                prod(vec![a(4, 3), a(5, 4), a(5, 3), b(6, 1), b(1, 2), b(6, 2)]),
            ),
            (
                chords(&[(1, 2), (3, 6), (4, 5)]),
                prod(vec![a(3, 2), a(4, 3), a(4, 2), b(5, 6), b(6, 1), b(5, 1)]),
            ),
            (
                chords(&[(1, 2), (3, 4), (5, 6)]),
                &prod(vec![b(2, 3), b(4, 5), a(1, 6)])
                    * &(&prod(vec![b(1, 2), b(3, 4), b(5, 6)]) + &prod(vec![b(4, 1), b(2, 5), b(6, 3)])),
            ),
            (
                chords(&[(1, 6), (2, 3), (4, 5)]),
                &prod(vec![b(3, 4), b(5, 6), a(2, 1)])
                    * &(&prod(vec![b(2, 3), b(4, 5), b(6, 1)]) + &prod(vec![b(5, 2), b(3, 6), b(1, 4)])),
            ),
        ],
        _ => return None,
    };
    let patterns = linkpat::enumerate(n);
    let mut components = vec![MPoly::zero(m); patterns.len()];
    for (pi, p) in entries {
        components[linkpat::index_of(&patterns, &pi)] = p;
    }
    Some(Groundstate {
        n,
        patterns,
        components,
    })
}

pub fn check_reference(g: &Groundstate) -> CheckReport {
    let mut r = CheckReport::new("reference components");
    if let Some(want) = reference_components(g.n) {
        for (k, pi) in g.patterns.iter().enumerate() {
            r.push(format!("{pi}"), g.components[k] == want.components[k]);
        }
    }
    r
}

pub fn check_degrees(g: &Groundstate) -> CheckReport {
    let n = g.n;
    let mut r = CheckReport::new("degrees");
    let want = (n * (n - 1)) as u32;
    let bound = (2 * n * n * (n + 1)) as u32;
    let mut max_partial = 0;
    for (pi, p) in g.patterns.iter().zip(&g.components) {
        let d = p.is_homogeneous();
        let partial = p.max_partial_degree();
        max_partial = max_partial.max(partial);
        r.push_with(
            format!("{pi} homogeneous of degree {want}"),
            d == Some(want) && want <= bound,
            Some(json!({ "degree": d })),
        );
        r.push_with(
            format!("{pi} partial degree <= {}", n - 1),
            partial <= (n - 1) as u32,
            Some(json!({ "partial": partial })),
        );
    }
    r.push_with(
        format!("largest partial degree is {}", n - 1),
        max_partial == (n - 1) as u32,
        Some(json!({ "max": max_partial })),
    );
    r
}

pub fn check_symmetric_sum(g: &Groundstate) -> CheckReport {
    let mut r = CheckReport::new("symmetric sum");
    let w = sum_components(g);
    for i in 0..2 * g.n - 1 {
        r.push(format!("swap z{} z{}", i + 1, i + 2), w.is_symmetric_under_swap(i, i + 1));
    }
    r
}

/// `(T − Λ) Ψ = 0` at random off-grid points.
pub fn check_eigen_residual<R: Rng + ?Sized>(g: &Groundstate, rng: &mut R, points: usize, t_values: usize) -> CheckReport {
    let mut r = CheckReport::new("eigenvector equation");
    for p in 0..points {
        let z = sample::random_point(rng, 2 * g.n);
        for k in 0..t_values {
            let t = CycloNum::from(sample::random_rationals(rng, 1).remove(0));
            let ok = eigen_residual_vanishes(g, &t, &z).unwrap_or(false);
            r.push_with(format!("point {p}, t #{k}"), ok, Some(json!({ "z": z, "t": t })));
        }
    }
    r
}

/// Ψ_{n−1} with variables lifted into 2n slots, skipping `z_i, z_{i+1}`.
fn lift(p: &MPoly, i: usize) -> MPoly {
    let m = p.nvars();
    let map: Vec<usize> = (0..m).map(|v| if v < i - 1 { v } else { v + 2 }).collect();
    p.rename_vars(&map, m + 2)
}

/// `∏_{k ∉ skip} (q z_i − z_k)` as a polynomial in `m` variables.
fn recursion_prefactor(m: usize, i: usize, skip: &[usize]) -> MPoly {
    (1..=m)
        .filter(|k| !skip.contains(k))
        .fold(MPoly::one(m), |acc, k| {
            &acc * &lin(m, i - 1, q(), k - 1, CycloNum::from_int(-1))
        })
}

/// Adjacent recursion at `z_{i+1} = q² z_i`, `1 ≤ i < 2n`.
pub fn check_recursion_adjacent(g: &Groundstate, g_prev: &Groundstate, i: usize) -> CheckReport {
    let n = g.n;
    let m = 2 * n;
    let mut r = CheckReport::new(format!("adjacent recursion i={i}"));
    assert!(i >= 1 && i < m && g_prev.n + 1 == n);
    let pre = recursion_prefactor(m, i, &[i, i + 1]);
    for (pi, p) in g.patterns.iter().zip(&g.components) {
        let specialized = p.substitute_scaled(i, i - 1, &CycloNum::omega_sq());
        match pi.remove_arch(i) {
            None if !pi.has_little_arch(i) => {
                r.push(format!("{pi} vanishes"), specialized.is_zero());
            }
            None => {
                // n = 1 target: Ψ_0 = 1
                r.push(format!("{pi} reduces"), specialized == pre);
            }
            Some(small) => {
                let want = &pre * &lift(g_prev.component(&small), i);
                r.push(format!("{pi} reduces to {small}"), specialized == want);
            }
        }
    }
    r
}

/// Exchange relation between `Ψ(z)` and `Ψ(s_i z)`, `1 ≤ i ≤ 2n` (cyclic).
pub fn check_exchange(g: &Groundstate, i: usize) -> CheckReport {
    let n = g.n;
    let m = 2 * n;
    let j = i % m + 1;
    let (vi, vj) = (i - 1, j - 1);
    let mut r = CheckReport::new(format!("exchange i={i}"));
    let swapped: Vec<MPoly> = g.components.iter().map(|p| p.swap_vars(vi, vj)).collect();
    let lhs_f = lin(m, vj, q(), vi, -qinv());
    let id_f = lin(m, vi, q(), vj, -qinv());
    let e_f = lin(m, vi, CycloNum::one(), vj, CycloNum::from_int(-1));
    let mut glued = vec![MPoly::zero(m); g.patterns.len()];
    for (k, pi) in g.patterns.iter().enumerate() {
        let (img, _) = pi.e_apply(i);
        let t = linkpat::index_of(&g.patterns, &img);
        glued[t] = &glued[t] + &swapped[k];
    }
    for (k, pi) in g.patterns.iter().enumerate() {
        let lhs = &lhs_f * &g.components[k];
        let rhs = &(&id_f * &swapped[k]) + &(&e_f * &glued[k]);
        r.push(format!("{pi}"), lhs == rhs);
    }
    r
}

/// Vanishing at `z_j = q² z_i` for `i` before `j` in one run, and
/// symmetry of the cofactor under adjacent in-run swaps.
pub fn check_factorization<R: Rng + ?Sized>(g: &Groundstate, rng: &mut R) -> CheckReport {
    let n = g.n;
    let m = 2 * n;
    let mut r = CheckReport::new("factorization");
    for (pi, p) in g.patterns.iter().zip(&g.components) {
        let runs = pi.sequence_decomposition().runs;
        for run in &runs {
            for a in 0..run.len() {
                for b in a + 1..run.len() {
                    let (i, j) = (run[a], run[b]);
                    let specialized = p.substitute_scaled(j - 1, i - 1, &CycloNum::omega_sq());
                    r.push(format!("{pi} vanishes at z{j} = q^2 z{i}"), specialized.is_zero());
                }
            }
        }
        // cofactor symmetry: Ψ(z)·P(s z) = Ψ(s z)·P(z)
        let denominator = |z: &[CycloNum]| -> CycloNum {
            let mut acc = CycloNum::one();
            for run in &runs {
                for a in 0..run.len() {
                    for b in a + 1..run.len() {
                        acc *= &(&(&q() * &z[run[a] - 1]) - &(&qinv() * &z[run[b] - 1]));
                    }
                }
            }
            acc
        };
        for run in &runs {
            for w in run.windows(2) {
                let (i, j) = (w[0], w[1]);
                let ok = (0..3).all(|_| {
                    let z = sample::random_point(rng, m);
                    let mut sz = z.clone();
                    sz.swap(i - 1, j - 1);
                    let lhs = &p.eval(&z).expect("arity") * &denominator(&sz);
                    let rhs = &p.eval(&sz).expect("arity") * &denominator(&z);
                    lhs == rhs
                });
                r.push(format!("{pi} cofactor symmetric in z{i}, z{j}"), ok);
            }
        }
    }
    r
}

/// Rotation covariance and the inversion/reflection relation.
pub fn check_cyclic_reflection(g: &Groundstate) -> CheckReport {
    let n = g.n;
    let m = 2 * n;
    let mut r = CheckReport::new("rotation and reflection");
    let shift: Vec<usize> = (0..m).map(|k| (k + m - 1) % m).collect();
    for (pi, p) in g.patterns.iter().zip(&g.components) {
        let rotated = g.component(&pi.rotate()).rename_vars(&shift, m);
        r.push(format!("{pi} rotation"), rotated == *p);
        let inverted = g.component(&pi.reflect()).invert_reversed((n - 1) as u8);
        r.push(format!("{pi} reflection"), inverted.as_ref() == Some(p));
    }
    r
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// For every pattern and every assignment of the exponents `0..n−1` to its
/// chords, the monomial `∏ (z_i z_j)^{e}` has coefficient 1 in that
/// component and 0 in all others.
pub fn check_monomial_property(g: &Groundstate) -> CheckReport {
    let n = g.n;
    let mut r = CheckReport::new("distinguished monomials");
    let perms = permutations(n);
    for (k, pi) in g.patterns.iter().enumerate() {
        let chords = pi.chords();
        for sigma in &perms {
            let mut exp = vec![0u8; 2 * n];
            for (c, &(i, j)) in chords.iter().enumerate() {
                exp[i - 1] = sigma[c] as u8;
                exp[j - 1] = sigma[c] as u8;
            }
            let ok = g.components.iter().enumerate().all(|(l, p)| {
                let c = p.coeff_of(&exp).expect("arity");
                if l == k {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            });
            r.push_with(format!("{pi} exponents {exp:?}"), ok, Some(json!({ "exp": exp })));
        }
    }
    r
}

/// The normalized eigenvector does not depend on `t`.
pub fn check_t_independence(n: usize, z: &[CycloNum]) -> Result<CheckReport> {
    let mut r = CheckReport::new("t independence");
    let ts: Vec<Rational> = t_schedule(z).take(3).collect();
    let first = psi_point_at(n, z, &CycloNum::from(ts[0].clone()))?;
    for t in &ts[1..] {
        let other = psi_point_at(n, z, &CycloNum::from(t.clone()))?;
        r.push_with(
            format!("t={} vs t={}", ts[0], t),
            other.values == first.values,
            Some(json!({ "z": z })),
        );
    }
    Ok(r)
}

/// Ψ_n at a point with `z_{i+1} = q² z_i` (cyclic `i`), predicted from
/// Ψ_{n−1}.
fn adjacent_prediction(g_prev: &Groundstate, patterns: &[LinkPattern], i: usize, z: &[CycloNum]) -> Result<Vec<CycloNum>> {
    let m = z.len();
    if i == m {
        // rotate so that the pair sits at positions 1, 2
        let mut y = vec![z[m - 1].clone()];
        y.extend_from_slice(&z[..m - 1]);
        let rotated = adjacent_prediction(g_prev, patterns, 1, &y)?;
        return Ok(patterns
            .iter()
            .map(|pi| rotated[linkpat::index_of(patterns, &pi.rotate())].clone())
            .collect());
    }
    let pre: CycloNum = (0..m)
        .filter(|&k| k != i - 1 && k != i)
        .map(|k| &(&q() * &z[i - 1]) - &z[k])
        .product();
    let rest: Vec<CycloNum> = (0..m)
        .filter(|&k| k != i - 1 && k != i)
        .map(|k| z[k].clone())
        .collect();
    patterns
        .iter()
        .map(|pi| {
            if !pi.has_little_arch(i) {
                return Ok(CycloNum::zero());
            }
            match pi.remove_arch(i) {
                Some(small) => Ok(&pre * &g_prev.component(&small).eval(&rest)?),
                None => Ok(pre.clone()),
            }
        })
        .collect()
}

/// General recursion at `z_j = q² z_i`, reduced to the adjacent case by
/// transporting `z_j` next to `z_i` with exchange relations; plus the
/// summed identity against the product prefactor.
pub fn check_recursion_general<R: Rng + ?Sized>(
    g: &Groundstate,
    g_prev: &Groundstate,
    i: usize,
    j: usize,
    rng: &mut R,
) -> Result<CheckReport> {
    let n = g.n;
    let m = 2 * n;
    assert!(i != j && (1..=m).contains(&i) && (1..=m).contains(&j));
    let mut r = CheckReport::new(format!("general recursion i={i} j={j}"));
    let q2 = CycloNum::omega_sq();

    for p in 0..2 {
        let mut z = sample::random_point(rng, m);
        z[j - 1] = &q2 * &z[i - 1];
        let direct = g.eval(&z)?;

        // move z_j backwards (cyclically) until it sits at position i+1:
        // Ψ(w) = c⁻¹ Ř_a(w_a, w_{a+1}) Ψ(s_a w), c = q w_{a+1} − q⁻¹ w_a
        let mut w = z.clone();
        let mut pos = j;
        let mut ops: Vec<(LinkOperator, CycloNum)> = Vec::new();
        let target = i % m + 1;
        while pos != target {
            let a = if pos == 1 { m } else { pos - 1 };
            let b = a % m + 1;
            let (wa, wb) = (w[a - 1].clone(), w[b - 1].clone());
            let c = &(&q() * &wb) - &(&qinv() * &wa);
            ops.push((tmatrix::rcheck_link(a, &wa, &wb, n), c.inv()?));
            w.swap(a - 1, b - 1);
            pos = a;
        }
        let mut v = adjacent_prediction(g_prev, &g.patterns, i, &w)?;
        for (op, cinv) in ops.iter().rev() {
            v = op.apply(&v).iter().map(|x| x * cinv).collect();
        }
        r.push_with(
            format!("components at point {p}"),
            v == direct,
            Some(json!({ "z": z })),
        );
    }

    let w = sum_components(g);
    let specialized = w.substitute_scaled(j - 1, i - 1, &q2);
    let others: Vec<usize> = (0..m).filter(|&k| k != i - 1 && k != j - 1).collect();
    let mut map = vec![0usize; m - 2];
    for (slot, &k) in others.iter().enumerate() {
        map[slot] = k;
    }
    let w_prev = sum_components(g_prev).rename_vars(&map, m);
    let want = &recursion_prefactor(m, i, &[i, j]) * &w_prev;
    r.push("summed components", specialized == want);
    Ok(r)
}
