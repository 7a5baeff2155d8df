//! Sparse multivariate polynomials over Q(ω).
//!
//! Exponent vectors are stored as `u8` per variable; terms live in a
//! `BTreeMap` keyed by graded-lexicographic order so iteration and
//! serialization are canonical.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclo::{CycloNum, Eisenstein, Rational};
use crate::solver::ExactMatrix;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, CycloNum>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycloNum) -> Self {
        MPoly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, CycloNum::one())
    }

    /// The variable `z_{var}` (0-indexed).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MPoly::monomial(nvars, e, CycloNum::one())
    }

    pub fn monomial(nvars: usize, exp: Vec<u8>, c: CycloNum) -> Self {
        assert_eq!(exp.len(), nvars, "exponent vector length");
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exp), c);
        }
        p
    }

    /// `c1·z_i + c2·z_j`, the linear forms every factor in this crate uses.
    pub fn linear(nvars: usize, coeffs: &[(usize, CycloNum)]) -> Self {
        let mut p = MPoly::zero(nvars);
        for (v, c) in coeffs {
            p.add_term(MPoly::var(nvars, *v).terms.into_keys().next().unwrap(), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u8>, CycloNum)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycloNum)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got,
            });
        }
        Ok(())
    }

    pub fn eval(&self, point: &[CycloNum]) -> Result<CycloNum> {
        self.check_arity(point.len())?;
        if self.terms.len() > 16 {
            return Ok(self.eval_integral(point));
        }
        let maxdeg: Vec<usize> = (0..self.nvars).map(|v| self.degree_in(v) as usize).collect();
        let powers: Vec<Vec<CycloNum>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut pw = Vec::with_capacity(d + 1);
                pw.push(CycloNum::one());
                for k in 1..=d {
                    let next = &pw[k - 1] * x;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = CycloNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[v][e as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Evaluation with the point and coefficients scaled to integers,
    /// grouping terms by total degree.
    fn eval_integral(&self, point: &[CycloNum]) -> CycloNum {
        type Pair = (BigInt, BigInt);
        fn mul(x: &Pair, y: &Pair) -> Pair {
            let bd = &x.1 * &y.1;
            (&x.0 * &y.0 - &bd, &x.0 * &y.1 + &x.1 * &y.0 - bd)
        }
        let scaled = |r: &Rational, l: &BigInt| r.numer() * (l / r.denom());
        let l = point.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
        let cl = self.terms.values().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
        let powers: Vec<Vec<Pair>> = point
            .iter()
            .enumerate()
            .map(|(v, x)| {
                let base = (scaled(&x.a, &l), scaled(&x.b, &l));
                let d = self.degree_in(v) as usize;
                let mut pw: Vec<Pair> = vec![(BigInt::one(), BigInt::zero())];
                for k in 1..=d {
                    let next = mul(&pw[k - 1], &base);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut by_degree: BTreeMap<u32, Pair> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t: Pair = (scaled(&c.a, &cl), scaled(&c.b, &cl));
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = mul(&t, &powers[v][e as usize]);
                }
            }
            let slot = by_degree
                .entry(m.degree())
                .or_insert_with(|| (BigInt::zero(), BigInt::zero()));
            slot.0 += t.0;
            slot.1 += t.1;
        }
        let mut acc = CycloNum::zero();
        for (d, (a, b)) in by_degree {
            let den = &cl * l.pow(d);
            acc += &CycloNum::new(Rational::new(a, den.clone()), Rational::new(b, den));
        }
        acc
    }

    pub fn coeff_of(&self, exp: &[u8]) -> Result<CycloNum> {
        self.check_arity(exp.len())?;
        Ok(self
            .terms
            .get(&Monomial(exp.to_vec()))
            .cloned()
            .unwrap_or_else(CycloNum::zero))
    }

    /// Total degree if every term has the same one; `None` otherwise or for
    /// the zero polynomial.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var] as u32).max().unwrap_or(0)
    }

    pub fn max_partial_degree(&self) -> u32 {
        (0..self.nvars).map(|v| self.degree_in(v)).max().unwrap_or(0)
    }

    /// Renames variables: old variable `v` becomes `map[v]` in a polynomial
    /// with `nvars` variables. Collisions multiply the variables together.
    pub fn rename_vars(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = MPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u8; nvars];
            for (v, &k) in m.0.iter().enumerate() {
                e[map[v]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..self.nvars).collect();
        map.swap(i, j);
        self.rename_vars(&map, self.nvars)
    }

    pub fn is_symmetric_under_swap(&self, i: usize, j: usize) -> bool {
        i == j || *self == self.swap_vars(i, j)
    }

    /// Substitutes `z_var := c · z_source`. The result keeps the same number
    /// of variables and no longer depends on `z_var`.
    pub fn substitute_scaled(&self, var: usize, source: usize, c: &CycloNum) -> Self {
        assert_ne!(var, source);
        let mut out = MPoly::zero(self.nvars);
        let mut powers = vec![CycloNum::one()];
        for (m, x) in &self.terms {
            let k = m.0[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * c;
                powers.push(next);
            }
            let mut e = m.0.clone();
            e[source] += e[var];
            e[var] = 0;
            out.add_term(Monomial(e), x * &powers[k]);
        }
        out
    }

    /// Substitutes a constant for one variable (the variable is kept, with
    /// exponent zero everywhere).
    pub fn substitute_value(&self, var: usize, value: &CycloNum) -> Self {
        let mut out = MPoly::zero(self.nvars);
        let mut powers = vec![CycloNum::one()];
        for (m, x) in &self.terms {
            let k = m.0[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut e = m.0.clone();
            e[var] = 0;
            out.add_term(Monomial(e), x * &powers[k]);
        }
        out
    }

    /// Appends one variable and homogenizes to total degree `degree` with it.
    /// Fails if some term exceeds `degree` or would need the new variable to
    /// a power above `max_new`.
    pub fn homogenize(&self, degree: u32, max_new: u32) -> Result<Self> {
        let mut out = MPoly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > degree || degree - d > max_new {
                return Err(Error::HomogenizationMismatch { degree });
            }
            let mut e = m.0.clone();
            e.push((degree - d) as u8);
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// `∏ z_k^d · P(1/z_N, …, 1/z_1)`; requires every partial degree `≤ d`.
    pub fn invert_reversed(&self, d: u8) -> Option<Self> {
        let n = self.nvars;
        let mut out = MPoly::zero(n);
        for (m, c) in &self.terms {
            let mut e = vec![0u8; n];
            for k in 0..n {
                e[k] = d.checked_sub(m.0[n - 1 - k])?;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }

    fn to_json_repr(&self) -> MPolyJson {
        MPolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    // ---- univariate helpers (nvars == 1) ----

    /// Coefficients `c_0..c_d` of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Vec<CycloNum> {
        assert_eq!(self.nvars, 1, "univariate polynomial expected");
        let d = self.degree_in(0) as usize;
        let mut out = vec![CycloNum::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        out
    }

    pub fn from_univariate(coeffs: &[CycloNum]) -> Self {
        MPoly::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u8], c.clone())),
        )
    }

    /// Univariate `P(c·t)`.
    pub fn scale_argument(&self, c: &CycloNum) -> Self {
        let coeffs = self.univariate_coeffs();
        let mut pw = CycloNum::one();
        let mut out = Vec::with_capacity(coeffs.len());
        for a in &coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        MPoly::from_univariate(&out)
    }

    /// Univariate long division; returns (quotient, remainder).
    pub fn div_rem_univariate(&self, divisor: &MPoly) -> Result<(MPoly, MPoly)> {
        let mut rem = self.univariate_coeffs();
        let d = divisor.univariate_coeffs();
        let Some(lead) = d.last() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = lead.inv()?;
        let dd = d.len() - 1;
        if rem.len() <= dd {
            return Ok((MPoly::zero(1), self.clone()));
        }
        let mut quot = vec![CycloNum::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.iter().enumerate() {
                    let t = &c * dj;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((MPoly::from_univariate(&quot), MPoly::from_univariate(&rem)))
    }
}

/// Reconstructs the unique polynomial with partial degree `≤ degree_bounds[v]`
/// in each variable from its values on a tensor grid.
///
/// `values` is keyed by node-index tuples; `grid[v]` lists the nodes of
/// variable `v` and must hold exactly `degree_bounds[v] + 1` distinct values.
pub fn interpolate_grid(
    values: &HashMap<Vec<usize>, CycloNum>,
    degree_bounds: &[u32],
    grid: &[Vec<Rational>],
) -> Result<MPoly> {
    check_grid(degree_bounds, grid)?;
    let dims: Vec<usize> = grid.iter().map(Vec::len).collect();
    let total: usize = dims.iter().product();
    let mut dense = Vec::with_capacity(total);
    let mut idx = vec![0usize; dims.len()];
    for _ in 0..total {
        let v = values
            .get(&idx)
            .ok_or_else(|| Error::MissingGridPoint(idx.clone()))?;
        dense.push(v.clone());
        increment(&mut idx, &dims);
    }
    interpolate_tensor(dense, grid)
}

fn check_grid(degree_bounds: &[u32], grid: &[Vec<Rational>]) -> Result<()> {
    if degree_bounds.len() != grid.len() {
        return Err(Error::ArityMismatch {
            expected: degree_bounds.len(),
            got: grid.len(),
        });
    }
    for (v, (nodes, &b)) in grid.iter().zip(degree_bounds).enumerate() {
        if nodes.len() != b as usize + 1 {
            return Err(Error::GridShape {
                var: v,
                got: nodes.len(),
                need: b as usize + 1,
            });
        }
        for i in 0..nodes.len() {
            if nodes[..i].contains(&nodes[i]) {
                return Err(Error::DuplicateNode { var: v });
            }
        }
    }
    Ok(())
}

/// Row-major odometer (last variable fastest).
pub(crate) fn increment(idx: &mut [usize], dims: &[usize]) {
    for v in (0..dims.len()).rev() {
        idx[v] += 1;
        if idx[v] < dims[v] {
            return;
        }
        idx[v] = 0;
    }
}

/// Tensor-grid interpolation on a dense row-major value array (last
/// variable fastest). Each variable is processed in turn: every fibre is
/// replaced by the monomial coefficients of its Newton interpolant.
pub fn interpolate_tensor(mut data: Vec<CycloNum>, grid: &[Vec<Rational>]) -> Result<MPoly> {
    let dims: Vec<usize> = grid.iter().map(Vec::len).collect();
    let total: usize = dims.iter().product();
    if data.len() != total {
        return Err(Error::ArityMismatch {
            expected: total,
            got: data.len(),
        });
    }
    for v in 0..dims.len() {
        for i in 0..dims[v] {
            if grid[v][..i].contains(&grid[v][i]) {
                return Err(Error::DuplicateNode { var: v });
            }
        }
    }
    let nvars = dims.len();
    let mut strides = vec![1usize; nvars];
    for v in (0..nvars.saturating_sub(1)).rev() {
        strides[v] = strides[v + 1] * dims[v + 1];
    }
    let mut fibre = Vec::new();
    for v in 0..nvars {
        let m = dims[v];
        let nodes: Vec<CycloNum> = grid[v].iter().cloned().map(CycloNum::from).collect();
        // inverse node differences for the divided-difference table
        let mut inv = vec![vec![Rational::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    inv[i][j] = (&grid[v][i] - &grid[v][j]).recip()?;
                }
            }
        }
        let stride = strides[v];
        for start in 0..total {
            if !(start / stride).is_multiple_of(m) {
                continue;
            }
            fibre.clear();
            fibre.extend((0..m).map(|k| data[start + k * stride].clone()));
            newton_to_monomial(&mut fibre, &nodes, &inv);
            for (k, c) in fibre.drain(..).enumerate() {
                data[start + k * stride] = c;
            }
        }
    }
    let mut p = MPoly::zero(nvars);
    let mut idx = vec![0usize; nvars];
    for c in data {
        if !c.is_zero() {
            p.terms
                .insert(Monomial(idx.iter().map(|&k| k as u8).collect()), c);
        }
        increment(&mut idx, &dims);
    }
    Ok(p)
}

/// Same as [`interpolate_tensor`] for Eisenstein-integer data on integer
/// nodes, using scaled inverse Vandermonde matrices in checked `i128`.
/// Returns `None` on overflow or non-integer nodes.
pub fn interpolate_tensor_integral(mut data: Vec<Eisenstein>, grid: &[Vec<Rational>]) -> Option<MPoly> {
    let dims: Vec<usize> = grid.iter().map(Vec::len).collect();
    let total: usize = dims.iter().product();
    if data.len() != total || grid.iter().flatten().any(|x| !x.is_integer()) {
        return None;
    }
    let nvars = dims.len();
    let mut strides = vec![1usize; nvars];
    for v in (0..nvars.saturating_sub(1)).rev() {
        strides[v] = strides[v + 1] * dims[v + 1];
    }
    let mut denom = BigInt::one();
    let mut fibre = Vec::new();
    for v in 0..nvars {
        let m = dims[v];
        let vand = ExactMatrix::from_fn(m, m, |i, k| CycloNum::from(grid[v][i].clone()).pow(k as u32));
        let inv = vand.inverse().ok()?;
        let l = (0..m)
            .flat_map(|i| (0..m).map(move |k| (i, k)))
            .fold(BigInt::one(), |acc, (i, k)| acc.lcm(inv.get(i, k).a.denom()));
        let w: Vec<i128> = (0..m * m)
            .map(|idx| {
                let x = &inv.get(idx / m, idx % m).a;
                (x.numer() * (&l / x.denom())).to_i128()
            })
            .collect::<Option<_>>()?;
        denom *= &l;
        let stride = strides[v];
        for start in 0..total {
            if !(start / stride).is_multiple_of(m) {
                continue;
            }
            fibre.clear();
            fibre.extend((0..m).map(|k| data[start + k * stride]));
            for k in 0..m {
                let mut acc = Eisenstein::ZERO;
                for (i, y) in fibre.iter().enumerate() {
                    let c = w[k * m + i];
                    if c != 0 && !y.is_zero() {
                        acc = acc.checked_add(Eisenstein::new(c, 0).checked_mul(*y)?)?;
                    }
                }
                data[start + k * stride] = acc;
            }
        }
    }
    let dr = Rational::new(BigInt::one(), denom);
    let mut p = MPoly::zero(nvars);
    let mut idx = vec![0usize; nvars];
    for c in data {
        if !c.is_zero() {
            p.terms.insert(
                Monomial(idx.iter().map(|&k| k as u8).collect()),
                c.to_cyclo().scale(&dr),
            );
        }
        increment(&mut idx, &dims);
    }
    Some(p)
}

/// In place: values at `nodes` → monomial coefficients of the interpolant.
fn newton_to_monomial(vals: &mut [CycloNum], nodes: &[CycloNum], inv: &[Vec<Rational>]) {
    let m = vals.len();
    // divided differences, vals[k] = f[x_0..x_k]
    for level in 1..m {
        for k in (level..m).rev() {
            if vals[k] == vals[k - 1] {
                vals[k] = CycloNum::zero();
            } else {
                let diff = &vals[k] - &vals[k - 1];
                vals[k] = diff.scale(&inv[k][k - level]);
            }
        }
    }
    // Horner expansion of the Newton form
    let mut coeffs = vec![CycloNum::zero(); m];
    coeffs[0] = vals[m - 1].clone();
    let mut len = 1;
    for k in (0..m - 1).rev() {
        // coeffs ← coeffs·(x − x_k) + vals[k]
        let xk = &nodes[k];
        for j in (0..=len).rev() {
            let shifted = if j > 0 { coeffs[j - 1].clone() } else { CycloNum::zero() };
            let own = if j < len {
                if xk.is_zero() || coeffs[j].is_zero() {
                    CycloNum::zero()
                } else {
                    &coeffs[j] * xk
                }
            } else {
                CycloNum::zero()
            };
            coeffs[j] = &shifted - &own;
        }
        len += 1;
        coeffs[0] += &vals[k];
    }
    for (v, c) in vals.iter_mut().zip(coeffs) {
        *v = c;
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u8>,
    coeff: CycloNum,
}

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MPolyJson::deserialize(d)?;
        if let Some(t) = j.terms.iter().find(|t| t.exp.len() != j.nvars) {
            return Err(serde::de::Error::custom(format!(
                "exponent {:?} does not have {} entries",
                t.exp, j.nvars
            )));
        }
        Ok(MPoly::from_terms(
            j.nvars,
            j.terms.into_iter().map(|t| (t.exp, t.coeff)),
        ))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·z{}", v + 1)?,
                    _ => write!(f, "·z{}^{}", v + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e: Vec<u8> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&CycloNum::from_int(-1))
    }
}

macro_rules! forward_poly {
    ($tr:ident, $f:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $f(self, o: MPoly) -> MPoly {
                (&self).$f(&o)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, o: &MPoly) -> MPoly {
                (&self).$f(o)
            }
        }
    };
}

forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);
