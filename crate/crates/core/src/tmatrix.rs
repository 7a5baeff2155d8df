//! R-matrices, Temperley–Lieb operators and the periodic transfer matrix,
//! in the spin basis and in the link-pattern basis.
//!
//! The link-basis transfer matrix is obtained from the spin chain: each
//! embedded link pattern is propagated through the monodromy and the image
//! is decomposed back onto the embedded patterns. Operators are built at
//! numeric specializations only.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::cyclo::{CycloNum, Eisenstein, Rational, RingElem};
use crate::error::{Error, Result};
use crate::linkpat::{self, LinkPattern};
use crate::report::CheckReport;
use crate::sample;
use crate::solver::ExactMatrix;

pub const SPIN_CAP: usize = 6;

fn q() -> CycloNum {
    CycloNum::omega()
}

fn qinv() -> CycloNum {
    CycloNum::omega_sq()
}

/// The 4×4 R-matrix in the basis ↑↑, ↑↓, ↓↑, ↓↓ (site, auxiliary).
pub fn r_matrix_spin(z: &CycloNum, t: &CycloNum) -> [[CycloNum; 4]; 4] {
    let alpha = &(&q() * z) - &(&qinv() * t);
    let beta = z - t;
    let qq = &q() - &qinv();
    let zero = CycloNum::zero;
    [
        [alpha.clone(), zero(), zero(), zero()],
        [zero(), beta.clone(), &qq * t, zero()],
        [zero(), &qq * z, beta, zero()],
        [zero(), zero(), zero(), alpha],
    ]
}

struct SiteWeights<R> {
    alpha: R,
    beta: R,
    gamma_t: R,
    gamma_z: R,
}

fn site_weights<R: RingElem>(z: &R, t: &R) -> Option<SiteWeights<R>> {
    let q = R::omega();
    let qi = R::omega_sq();
    let qq = q.try_sub(&qi)?;
    Some(SiteWeights {
        alpha: q.try_mul(z)?.try_sub(&qi.try_mul(t)?)?,
        beta: z.try_sub(t)?,
        gamma_t: qq.try_mul(t)?,
        gamma_z: qq.try_mul(z)?,
    })
}

/// `x·a + y·b`, skipping zero factors.
#[inline]
fn lin2<R: RingElem>(a: &R, x: &R, b: &R, y: &R) -> Option<R> {
    let mut acc = R::zero();
    if !x.is_zero() {
        acc = a.try_mul(x)?;
    }
    if !y.is_zero() {
        acc = acc.try_mul_add(b, y)?;
    }
    Some(acc)
}

/// Applies `R_{2n,0} ⋯ R_{1,0}` to `up ⊗ ↑ + down ⊗ ↓` (auxiliary space
/// last), returning the new auxiliary-↑ and auxiliary-↓ parts.
fn propagate<R: RingElem>(
    weights: &[SiteWeights<R>],
    mut up: Vec<R>,
    mut down: Vec<R>,
) -> Option<(Vec<R>, Vec<R>)> {
    let dim = up.len();
    for (b, w) in weights.iter().enumerate() {
        let bit = 1usize << b;
        for s in (0..dim).filter(|s| s & bit == 0) {
            let s2 = s | bit;
            let (uu, ud, du, dd) = (&up[s], &down[s], &up[s2], &down[s2]);
            if uu.is_zero() && ud.is_zero() && du.is_zero() && dd.is_zero() {
                continue;
            }
            let n_uu = if uu.is_zero() { R::zero() } else { w.alpha.try_mul(uu)? };
            let n_ud = lin2(&w.beta, ud, &w.gamma_t, du)?;
            let n_du = lin2(&w.gamma_z, ud, &w.beta, du)?;
            let n_dd = if dd.is_zero() { R::zero() } else { w.alpha.try_mul(dd)? };
            up[s] = n_uu;
            down[s] = n_ud;
            up[s2] = n_du;
            down[s2] = n_dd;
        }
    }
    Some((up, down))
}

/// Monodromy blocks acting on a spin vector: returns `(A v, C v)` when
/// `aux_in_down` is false and `(B v, D v)` otherwise.
pub fn apply_monodromy<R: RingElem>(t: &R, z: &[R], v: &[R], aux_in_down: bool) -> Option<(Vec<R>, Vec<R>)> {
    let weights = z
        .iter()
        .map(|zi| site_weights(zi, t))
        .collect::<Option<Vec<_>>>()?;
    let zeros = vec![R::zero(); v.len()];
    if aux_in_down {
        propagate(&weights, zeros, v.to_vec())
    } else {
        propagate(&weights, v.to_vec(), zeros)
    }
}

/// `T v = (−q A − q⁻¹ D) v`.
pub fn apply_transfer<R: RingElem>(t: &R, z: &[R], v: &[R]) -> Option<Vec<R>> {
    let weights = z
        .iter()
        .map(|zi| site_weights(zi, t))
        .collect::<Option<Vec<_>>>()?;
    apply_transfer_weights(&weights, v)
}

fn apply_transfer_weights<R: RingElem>(weights: &[SiteWeights<R>], v: &[R]) -> Option<Vec<R>> {
    let zeros = vec![R::zero(); v.len()];
    let (a, _) = propagate(weights, v.to_vec(), zeros.clone())?;
    let (_, d) = propagate(weights, zeros, v.to_vec())?;
    let mq = R::omega().try_neg()?;
    let mqi = R::omega_sq().try_neg()?;
    a.iter()
        .zip(&d)
        .map(|(x, y)| lin2(&mq, x, &mqi, y))
        .collect()
}

/// Sparse operator on the `2^{2n}`-dimensional spin space.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinOperator {
    pub dim: usize,
    pub entries: BTreeMap<(usize, usize), CycloNum>,
}

impl SpinOperator {
    pub fn zero(dim: usize) -> Self {
        SpinOperator {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SpinOperator::zero(dim);
        for i in 0..dim {
            m.entries.insert((i, i), CycloNum::one());
        }
        m
    }

    pub fn from_columns(cols: Vec<Vec<CycloNum>>) -> Self {
        let dim = cols.len();
        let mut m = SpinOperator::zero(dim);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                if !x.is_zero() {
                    m.entries.insert((i, j), x);
                }
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> CycloNum {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(CycloNum::zero)
    }

    pub fn apply(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        let mut out = vec![CycloNum::zero(); self.dim];
        for (&(i, j), x) in &self.entries {
            if !v[j].is_zero() {
                out[i] += &(x * &v[j]);
            }
        }
        out
    }

    pub fn mul(&self, o: &SpinOperator) -> SpinOperator {
        let mut by_row: HashMap<usize, Vec<(usize, &CycloNum)>> = HashMap::new();
        for (&(k, j), x) in &o.entries {
            by_row.entry(k).or_default().push((j, x));
        }
        let mut acc: BTreeMap<(usize, usize), CycloNum> = BTreeMap::new();
        for (&(i, k), x) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, y) in row {
                    *acc.entry((i, j)).or_insert_with(CycloNum::zero) += &(x * y);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SpinOperator {
            dim: self.dim,
            entries: acc,
        }
    }

    pub fn add_scaled(&self, o: &SpinOperator, c: &CycloNum) -> SpinOperator {
        let mut acc = self.entries.clone();
        for (&k, x) in &o.entries {
            *acc.entry(k).or_insert_with(CycloNum::zero) += &(x * c);
        }
        acc.retain(|_, v| !v.is_zero());
        SpinOperator {
            dim: self.dim,
            entries: acc,
        }
    }

    pub fn scale(&self, c: &CycloNum) -> SpinOperator {
        SpinOperator::zero(self.dim).add_scaled(self, c)
    }

    /// Whether every entry connects configurations with equal numbers of
    /// up spins.
    pub fn conserves_magnetization(&self) -> bool {
        self.entries
            .keys()
            .all(|&(i, j)| i.count_ones() == j.count_ones())
    }
}

impl fmt::Debug for SpinOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpinOperator({}, {} entries)", self.dim, self.entries.len())
    }
}

fn check_sites(z: &[CycloNum]) -> Result<usize> {
    if z.is_empty() || z.len() % 2 == 1 {
        return Err(Error::ArityMismatch {
            expected: 2 * (z.len() / 2 + 1),
            got: z.len(),
        });
    }
    Ok(z.len() / 2)
}

/// The transfer matrix on the full spin space.
pub fn transfer_spin(t: &CycloNum, z: &[CycloNum]) -> Result<SpinOperator> {
    let n = check_sites(z)?;
    if n > SPIN_CAP {
        return Err(Error::SizeCap {
            what: "spin transfer matrix",
            n,
            cap: SPIN_CAP,
        });
    }
    let dim = 1usize << (2 * n);
    let cols = (0..dim)
        .map(|j| {
            let mut e = vec![CycloNum::zero(); dim];
            e[j] = CycloNum::one();
            apply_transfer(t, z, &e).expect("exact field never overflows")
        })
        .collect();
    Ok(SpinOperator::from_columns(cols))
}

/// Temperley–Lieb generator on spin sites `i, i+1` (`1 ≤ i < 2n`):
/// `[[−q, 1], [1, −q⁻¹]]` on the ↑↓, ↓↑ block, zero elsewhere.
pub fn e_spin(i: usize, n: usize) -> SpinOperator {
    assert!(i >= 1 && i < 2 * n, "open-chain site expected");
    let dim = 1usize << (2 * n);
    let (b1, b2) = (1usize << (i - 1), 1usize << i);
    let mut m = SpinOperator::zero(dim);
    for s in (0..dim).filter(|s| s & (b1 | b2) == 0) {
        let ud = s | b2; // site i up, site i+1 down
        let du = s | b1;
        m.entries.insert((ud, ud), -q());
        m.entries.insert((ud, du), CycloNum::one());
        m.entries.insert((du, ud), CycloNum::one());
        m.entries.insert((du, du), -qinv());
    }
    m
}

/// `Ř_i(z, w) = (qz − q⁻¹w) I + (z − w) e_i` on the spin chain.
pub fn rcheck_spin(i: usize, z: &CycloNum, w: &CycloNum, n: usize) -> SpinOperator {
    let dim = 1usize << (2 * n);
    let c = &(&q() * z) - &(&qinv() * w);
    SpinOperator::identity(dim)
        .scale(&c)
        .add_scaled(&e_spin(i, n), &(z - w))
}

/// Dense operator on the link-pattern basis (canonical pattern order).
#[derive(Clone, PartialEq, Eq)]
pub struct LinkOperator {
    n: usize,
    dim: usize,
    entries: Vec<CycloNum>,
}

impl LinkOperator {
    pub fn zero(n: usize) -> Self {
        let dim = linkpat::catalan(n);
        LinkOperator {
            n,
            dim,
            entries: vec![CycloNum::zero(); dim * dim],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinkOperator::zero(n);
        for i in 0..m.dim {
            m.entries[i * m.dim + i] = CycloNum::one();
        }
        m
    }

    pub fn from_entries(n: usize, entries: Vec<CycloNum>) -> Self {
        let dim = linkpat::catalan(n);
        assert_eq!(entries.len(), dim * dim);
        LinkOperator { n, dim, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloNum::is_zero)
    }

    pub fn apply(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        self.to_matrix().mul_vec(v)
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).clone())
    }

    fn from_matrix(n: usize, m: &ExactMatrix) -> Self {
        let dim = m.rows();
        LinkOperator {
            n,
            dim,
            entries: (0..dim).flat_map(|i| m.row(i).to_vec()).collect(),
        }
    }

    pub fn mul(&self, o: &LinkOperator) -> LinkOperator {
        LinkOperator::from_matrix(self.n, &self.to_matrix().mul(&o.to_matrix()))
    }

    pub fn sub(&self, o: &LinkOperator) -> LinkOperator {
        LinkOperator {
            n: self.n,
            dim: self.dim,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_scaled(&self, o: &LinkOperator, c: &CycloNum) -> LinkOperator {
        LinkOperator {
            n: self.n,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + &(b * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloNum) -> LinkOperator {
        LinkOperator::zero(self.n).add_scaled(self, c)
    }
}

impl fmt::Debug for LinkOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinkOperator n={}", self.n)?;
        for i in 0..self.dim {
            writeln!(f, "  {:?}", &self.entries[i * self.dim..(i + 1) * self.dim])?;
        }
        Ok(())
    }
}

impl Serialize for LinkOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[CycloNum]> = (0..self.dim)
            .map(|i| &self.entries[i * self.dim..(i + 1) * self.dim])
            .collect();
        rows.serialize(s)
    }
}

/// `e_i` on link patterns, cyclic `i` allowed; closed loops weigh 1.
pub fn e_link(i: usize, n: usize) -> LinkOperator {
    let basis = link_basis(n);
    let mut m = LinkOperator::zero(n);
    for (j, pi) in basis.patterns.iter().enumerate() {
        let (img, _) = pi.e_apply(i);
        let r = linkpat::index_of(&basis.patterns, &img);
        m.entries[r * m.dim + j] += &CycloNum::one();
    }
    m
}

/// `Ř_i(z, w) = (qz − q⁻¹w) I + (z − w) e_i` on link patterns.
pub fn rcheck_link(i: usize, z: &CycloNum, w: &CycloNum, n: usize) -> LinkOperator {
    let c = &(&q() * z) - &(&qinv() * w);
    LinkOperator::identity(n)
        .scale(&c)
        .add_scaled(&e_link(i, n), &(z - w))
}

/// Per-size data for moving between the spin and link bases.
pub struct LinkBasis {
    pub n: usize,
    pub patterns: Vec<LinkPattern>,
    pub embeds: Vec<Vec<(usize, Eisenstein)>>,
    /// Canonical spin configuration of each pattern.
    pub configs: Vec<usize>,
    /// Inverse of the embedding restricted to the canonical configurations.
    pub selector_inv: Vec<Eisenstein>,
}

/// Cached [`LinkBasis`] for half-size `n`.
pub fn link_basis(n: usize) -> Arc<LinkBasis> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<LinkBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return b.clone();
    }
    let b = Arc::new(build_link_basis(n));
    cache.lock().unwrap().insert(n, b.clone());
    b
}

fn build_link_basis(n: usize) -> LinkBasis {
    let patterns = linkpat::enumerate(n);
    let embeds: Vec<Vec<(usize, Eisenstein)>> =
        patterns.iter().map(|p| p.spin_embed_sparse()).collect();
    let configs: Vec<usize> = patterns.iter().map(LinkPattern::canonical_config).collect();
    let c = patterns.len();
    let sel = ExactMatrix::from_fn(c, c, |r, col| {
        embeds[col]
            .iter()
            .find(|(idx, _)| *idx == configs[r])
            .map_or_else(CycloNum::zero, |(_, x)| x.to_cyclo())
    });
    let inv = sel
        .inverse()
        .expect("embedded patterns are independent on their canonical configurations");
    let selector_inv = (0..c)
        .flat_map(|i| inv.row(i).to_vec())
        .map(|x| Eisenstein::from_cyclo(&x).expect("selector inverse is integral"))
        .collect();
    LinkBasis {
        n,
        patterns,
        embeds,
        configs,
        selector_inv,
    }
}

/// Link-basis transfer matrix (row-major) in the ring `R`, or `None` on
/// overflow. Fails if the embedded subspace is not preserved.
pub fn link_matrix_ring<R: RingElem>(basis: &LinkBasis, t: &R, z: &[R]) -> Result<Option<Vec<R>>> {
    let Some(weights) = z
        .iter()
        .map(|zi| site_weights(zi, t))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(None);
    };
    let c = basis.patterns.len();
    let dim = 1usize << (2 * basis.n);
    let sel_inv: Vec<R> = basis
        .selector_inv
        .iter()
        .map(|&e| R::from_eisenstein(e).expect("small integers fit"))
        .collect();
    let mut images = Vec::with_capacity(c);
    let mut selected = vec![R::zero(); c * c];
    for (col, emb) in basis.embeds.iter().enumerate() {
        let mut v = vec![R::zero(); dim];
        for &(idx, x) in emb {
            v[idx] = R::from_eisenstein(x).expect("units fit");
        }
        let Some(tv) = apply_transfer_weights(&weights, &v) else {
            return Ok(None);
        };
        for (r, &cfg) in basis.configs.iter().enumerate() {
            selected[r * c + col] = tv[cfg].clone();
        }
        images.push(tv);
    }
    // M = S⁻¹ · (T E)_S
    let mut m = vec![R::zero(); c * c];
    for i in 0..c {
        for k in 0..c {
            let a = &sel_inv[i * c + k];
            if a.is_zero() {
                continue;
            }
            for j in 0..c {
                let b = &selected[k * c + j];
                if b.is_zero() {
                    continue;
                }
                let Some(x) = m[i * c + j].try_mul_add(a, b) else {
                    return Ok(None);
                };
                m[i * c + j] = x;
            }
        }
    }
    // T E = E M on the whole spin space
    for (col, tv) in images.iter().enumerate() {
        let mut rebuilt = vec![R::zero(); dim];
        for (r, emb) in basis.embeds.iter().enumerate() {
            let coef = &m[r * c + col];
            if coef.is_zero() {
                continue;
            }
            for &(idx, x) in emb {
                let xr = R::from_eisenstein(x).expect("units fit");
                let Some(y) = rebuilt[idx].try_mul_add(coef, &xr) else {
                    return Ok(None);
                };
                rebuilt[idx] = y;
            }
        }
        for (a, b) in rebuilt.iter().zip(tv) {
            match a.try_sub(b) {
                None => return Ok(None),
                Some(d) if !d.is_zero() => return Err(Error::StabilityViolation),
                _ => {}
            }
        }
    }
    Ok(Some(m))
}

/// Least common multiple of all denominators appearing in the values.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a CycloNum>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()))
}

/// Values scaled by `d` as Eisenstein integers, if they fit.
pub fn scaled_eisenstein(values: &[CycloNum], d: &BigInt) -> Option<Vec<Eisenstein>> {
    let dr = CycloNum::from_rational(Rational::from_integer(d.clone()));
    values
        .iter()
        .map(|x| Eisenstein::from_cyclo(&(x * &dr)))
        .collect()
}

/// The transfer matrix restricted to (and expressed in) the link basis.
pub fn transfer_link(t: &CycloNum, z: &[CycloNum]) -> Result<LinkOperator> {
    let n = check_sites(z)?;
    if n > SPIN_CAP {
        return Err(Error::SizeCap {
            what: "link transfer matrix",
            n,
            cap: SPIN_CAP,
        });
    }
    let basis = link_basis(n);
    // T is homogeneous of degree 2n jointly in (t, z): clear denominators,
    // work over Z[ω], then rescale
    let mut all = z.to_vec();
    all.push(t.clone());
    let d = common_denominator(&all);
    if let Some(scaled) = scaled_eisenstein(&all, &d) {
        if let Some(m) = link_matrix_ring(&basis, &scaled[2 * n], &scaled[..2 * n])? {
            let f = Rational::new(BigInt::one(), d.pow(2 * n as u32));
            return Ok(LinkOperator::from_entries(
                n,
                m.iter().map(|x| x.to_cyclo().scale(&f)).collect(),
            ));
        }
    }
    let m = link_matrix_ring(&basis, t, z)?.expect("exact field never overflows");
    Ok(LinkOperator::from_entries(n, m))
}

/// `∏ (q t − q⁻¹ z_i)`.
pub fn eigenvalue(t: &CycloNum, z: &[CycloNum]) -> CycloNum {
    z.iter()
        .map(|zi| &(&q() * t) - &(&qinv() * zi))
        .product()
}

/// `φ_i`: inserts the little arch `(i, i+1)` into every pattern of half-size
/// `n−1`, as a map from link vectors of size `n−1` to size `n`.
pub fn phi_link(i: usize, n: usize, v: &[CycloNum]) -> Result<Vec<CycloNum>> {
    let small = link_basis(n - 1);
    let big = link_basis(n);
    let mut out = vec![CycloNum::zero(); big.patterns.len()];
    for (pi, x) in small.patterns.iter().zip(v) {
        let img = pi.phi_embed(i)?;
        out[linkpat::index_of(&big.patterns, &img)] += x;
    }
    Ok(out)
}

fn point_json(z: &[CycloNum]) -> serde_json::Value {
    serde_json::to_value(z).unwrap_or_default()
}

/// Yang–Baxter relation `Ř_i(b,c)Ř_{i+1}(a,c)Ř_i(a,b) = Ř_{i+1}(a,b)Ř_i(a,c)Ř_{i+1}(b,c)`
/// in the link basis for every `i`, and in the spin basis when `n ≤ 2`.
pub fn check_yang_baxter<G: Rng + ?Sized>(n: usize, rng: &mut G, points: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("yang-baxter n={n}"));
    for _ in 0..points {
        let p = sample::random_point(rng, 3);
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        for i in 1..2 * n - 1 {
            let r = |j, x, y| rcheck_link(j, x, y, n);
            let lhs = r(i, b, c).mul(&r(i + 1, a, c)).mul(&r(i, a, b));
            let rhs = r(i + 1, a, b).mul(&r(i, a, c)).mul(&r(i + 1, b, c));
            rep.push_with(format!("link i={i}"), lhs == rhs, Some(point_json(&p)));
            if n <= 2 {
                let r = |j, x, y| rcheck_spin(j, x, y, n);
                let lhs = r(i, b, c).mul(&r(i + 1, a, c)).mul(&r(i, a, b));
                let rhs = r(i + 1, a, b).mul(&r(i, a, c)).mul(&r(i + 1, b, c));
                rep.push_with(format!("spin i={i}"), lhs == rhs, Some(point_json(&p)));
            }
        }
    }
    rep
}

/// `Ř_i(z,w)Ř_i(w,z) = (qz − q⁻¹w)(qw − q⁻¹z)·I` for every `i`, cyclic included.
pub fn check_unitarity<G: Rng + ?Sized>(n: usize, rng: &mut G, points: usize) -> CheckReport {
    let mut rep = CheckReport::new(format!("unitarity n={n}"));
    for _ in 0..points {
        let p = sample::random_point(rng, 2);
        let (z, w) = (&p[0], &p[1]);
        let k = &(&(&q() * z) - &(&qinv() * w)) * &(&(&q() * w) - &(&qinv() * z));
        let id = LinkOperator::identity(n).scale(&k);
        for i in 1..=2 * n {
            let prod = rcheck_link(i, z, w, n).mul(&rcheck_link(i, w, z, n));
            rep.push_with(format!("i={i}"), prod == id, Some(point_json(&p)));
        }
    }
    rep
}

/// Interlacing `T(…, z_i, z_{i+1}, …) Ř_i(z_i, z_{i+1}) = Ř_i(z_i, z_{i+1}) T(…, z_{i+1}, z_i, …)`.
pub fn check_interlacing<G: Rng + ?Sized>(n: usize, rng: &mut G, points: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("interlacing n={n}"));
    for _ in 0..points {
        let p = sample::random_point(rng, 2 * n + 1);
        let (t, z) = (&p[2 * n], &p[..2 * n]);
        let tz = transfer_link(t, z)?;
        for i in 1..2 * n {
            let mut zs = z.to_vec();
            zs.swap(i - 1, i);
            let ts = transfer_link(t, &zs)?;
            let r = rcheck_link(i, &z[i - 1], &z[i], n);
            rep.push_with(format!("i={i}"), tz.mul(&r) == r.mul(&ts), Some(point_json(&p)));
        }
    }
    Ok(rep)
}

/// `T_n(t | …, z_i, q²z_i, …) φ_i = (q²t − z_i)(t − z_i) φ_i T_{n−1}(t | …)`,
/// checked on every basis vector.
pub fn check_phi_intertwining<G: Rng + ?Sized>(n: usize, rng: &mut G, points: usize) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("phi intertwining n={n}"));
    let dim = linkpat::catalan(n - 1);
    for _ in 0..points {
        let p = sample::random_point(rng, 2 * n - 1);
        let (t, w) = (&p[2 * n - 2], &p[..2 * n - 2]);
        let small = transfer_link(t, w)?;
        for i in 1..2 * n {
            let zi = &p[(i - 1) % (2 * n - 1)];
            let mut z = w.to_vec();
            z.insert(i - 1, zi.clone());
            z.insert(i, &CycloNum::omega_sq() * zi);
            let big = transfer_link(t, &z)?;
            let k = &(&(&CycloNum::omega_sq() * t) - zi) * &(t - zi);
            let ok = (0..dim).all(|j| {
                let mut e = vec![CycloNum::zero(); dim];
                e[j] = CycloNum::one();
                let lhs = phi_link(i, n, &e).map(|v| big.apply(&v));
                let rhs = phi_link(i, n, &small.apply(&e))
                    .map(|v| v.iter().map(|x| x * &k).collect::<Vec<_>>());
                matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
            });
            rep.push_with(format!("i={i}"), ok, Some(point_json(&z)));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: i64) -> CycloNum {
        CycloNum::from_int(a)
    }

    fn r(a: i64, b: i64) -> CycloNum {
        CycloNum::from_rational(Rational::new(a, b))
    }

    fn zs(v: &[i64]) -> Vec<CycloNum> {
        v.iter().map(|&x| c(x)).collect()
    }

    #[test]
    fn r_matrix_entries() {
        let m = r_matrix_spin(&c(2), &c(2));
        assert!(m[1][1].is_zero() && m[2][2].is_zero());
        assert_eq!(m[0][0], &(&q() * &c(2)) - &(&qinv() * &c(2)));
        let m = r_matrix_spin(&c(5), &c(3));
        assert_eq!(m[1][2], &(&q() - &qinv()) * &c(3));
        assert_eq!(m[2][1], &(&q() - &qinv()) * &c(5));
    }

    #[test]
    fn spin_rcheck_unitarity() {
        let (z, w) = (c(2), c(3));
        let a = rcheck_spin(1, &z, &w, 1);
        let b = rcheck_spin(1, &w, &z, 1);
        let k = &(&(&q() * &z) - &(&qinv() * &w)) * &(&(&q() * &w) - &(&qinv() * &z));
        assert_eq!(a.mul(&b), SpinOperator::identity(4).scale(&k));
    }

    #[test]
    fn n1_transfer_fixes_the_single_pattern() {
        let (t, z) = (r(7, 2), zs(&[2, 5]));
        let tm = transfer_spin(&t, &z).unwrap();
        assert!(tm.conserves_magnetization());
        let v = LinkPattern::little_arches(1).spin_embed();
        let lambda = eigenvalue(&t, &z);
        let tv = tm.apply(&v);
        let lv: Vec<CycloNum> = v.iter().map(|x| x * &lambda).collect();
        assert_eq!(tv, lv);
        let m = transfer_link(&t, &z).unwrap();
        assert_eq!(m.get(0, 0), &lambda);
    }

    #[test]
    fn spin_transfer_commutes() {
        let z = vec![r(1, 2), c(2), r(3, 5), c(7)];
        let a = transfer_spin(&c(3), &z).unwrap();
        let b = transfer_spin(&r(11, 3), &z).unwrap();
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn link_transfer_commutes() {
        let z = zs(&[1, 2, 3, 5, 7, 11]);
        let a = transfer_link(&c(3), &z).unwrap();
        let b = transfer_link(&r(13, 2), &z).unwrap();
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn homogeneous_point_eigenvector() {
        let z = zs(&[1, 1, 1, 1]);
        let t = c(1);
        let m = transfer_link(&t, &z).unwrap();
        let v = vec![c(3), c(3)];
        let lambda = eigenvalue(&t, &z);
        assert_eq!(m.apply(&v), v.iter().map(|x| x * &lambda).collect::<Vec<_>>());
    }

    #[test]
    fn embedded_e_matches_link_action() {
        for n in 2..=3 {
            for pi in linkpat::enumerate(n) {
                let v = pi.spin_embed();
                for i in 1..2 * n {
                    let (img, _) = pi.e_apply(i);
                    assert_eq!(e_spin(i, n).apply(&v), img.spin_embed(), "{pi:?} e_{i}");
                }
            }
        }
    }

    #[test]
    fn rcheck_special_values() {
        let z = r(3, 2);
        let w = &CycloNum::omega_sq() * &z;
        let a = rcheck_link(2, &z, &w, 2);
        assert_eq!(a, e_link(2, 2).scale(&(&z - &w)));
        let b = rcheck_link(1, &z, &z, 2);
        assert_eq!(b, LinkOperator::identity(2).scale(&(&(&q() - &qinv()) * &z)));
    }

    #[test]
    fn operator_identities() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            assert!(check_unitarity(n, &mut rng, 2).pass);
            assert!(check_interlacing(n, &mut rng, 1).unwrap().pass, "n={n}");
            if n >= 2 {
                assert!(check_yang_baxter(n, &mut rng, 2).pass);
                let r = check_phi_intertwining(n, &mut rng, 1).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn transfer_json_is_dense() {
        let m = transfer_link(&c(1), &zs(&[1, 1, 1, 1])).unwrap();
        let js = serde_json::to_value(&m).unwrap();
        assert_eq!(js.as_array().unwrap().len(), 2);
        assert_eq!(js[0].as_array().unwrap().len(), 2);
    }
}
