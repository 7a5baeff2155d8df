//! Multimodular kernel extraction.
//!
//! For a square matrix whose kernel is expected to be one-dimensional, the
//! kernel vector is computed modulo several primes `p ≡ 2 (mod 3)` (so that
//! `F_p[ω]` is the field `F_{p²}`), lifted by Chinese remaindering and
//! rational reconstruction, and accepted only after an exact certificate
//! supplied by the caller.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::{CycloNum, Eisenstein, Rational, SmallEisenstein};
use crate::error::{Error, Result};

/// Element `a + bω` of `F_p[ω]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

/// Arithmetic modulo an odd prime `p < 2^62`, with Montgomery reduction.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
    /// `−p⁻¹ mod 2^64`
    pinv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 62, "odd modulus below 2^62 expected");
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field {
            p,
            pinv: inv.wrapping_neg(),
            r2,
        }
    }

    /// `t · 2^{−64} mod p` for `t < p · 2^64`.
    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mulmod(&self, x: u64, y: u64) -> u64 {
        let t = self.redc(x as u128 * y as u128);
        self.redc(t as u128 * self.r2 as u128)
    }

    #[inline]
    fn addmod(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn submod(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    fn powmod(&self, mut x: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, x);
            }
            x = self.mulmod(x, x);
            e >>= 1;
        }
        acc
    }

    fn invmod(&self, x: u64) -> Option<u64> {
        (x != 0).then(|| self.powmod(x, self.p - 2))
    }

    pub fn zero(&self) -> Fp2 {
        Fp2 { a: 0, b: 0 }
    }

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: self.addmod(x.a, y.a),
            b: self.addmod(x.b, y.b),
        }
    }

    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            a: self.submod(x.a, y.a),
            b: self.submod(x.b, y.b),
        }
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let ac = self.mulmod(x.a, y.a);
        let bd = self.mulmod(x.b, y.b);
        let ad = self.mulmod(x.a, y.b);
        let bc = self.mulmod(x.b, y.a);
        Fp2 {
            a: self.submod(ac, bd),
            b: self.submod(self.addmod(ad, bc), bd),
        }
    }

    pub fn inv(&self, x: Fp2) -> Option<Fp2> {
        // conj = (a − b) − bω, norm = a² − ab + b²
        let n = self.addmod(
            self.submod(self.mulmod(x.a, x.a), self.mulmod(x.a, x.b)),
            self.mulmod(x.b, x.b),
        );
        let ni = self.invmod(n)?;
        Some(Fp2 {
            a: self.mulmod(self.submod(x.a, x.b), ni),
            b: self.mulmod(self.submod(0, x.b), ni),
        })
    }

    fn reduce_int(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = x.mod_floor(&p);
        r.to_u64().expect("residue fits")
    }

    pub fn reduce_rational(&self, r: &Rational) -> Option<u64> {
        let n = self.reduce_int(r.numer());
        if r.is_integer() {
            return Some(n);
        }
        let d = self.invmod(self.reduce_int(r.denom()))?;
        Some(self.mulmod(n, d))
    }

    fn reduce_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.p as i128) as u64
    }
}

/// Values that can be reduced into `F_p[ω]`.
pub trait Reduce {
    /// `None` when a denominator vanishes modulo `p`.
    fn reduce(&self, f: &Field) -> Option<Fp2>;
}

impl Reduce for CycloNum {
    fn reduce(&self, f: &Field) -> Option<Fp2> {
        Some(Fp2 {
            a: f.reduce_rational(&self.a)?,
            b: f.reduce_rational(&self.b)?,
        })
    }
}

impl Reduce for SmallEisenstein {
    fn reduce(&self, f: &Field) -> Option<Fp2> {
        Some(Fp2 {
            a: f.reduce_i128(self.a as i128),
            b: f.reduce_i128(self.b as i128),
        })
    }
}

impl Reduce for Eisenstein {
    fn reduce(&self, f: &Field) -> Option<Fp2> {
        Some(Fp2 {
            a: f.reduce_i128(self.a),
            b: f.reduce_i128(self.b),
        })
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let f = Field::new(n);
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mulmod(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

const PRIME_POOL: usize = 64;

/// Primes `p ≡ 2 (mod 3)` just below `2^62`, largest first.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut c = (1u64 << 62) - 1;
        while c % 3 != 2 {
            c -= 1;
        }
        while out.len() < PRIME_POOL {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 3;
        }
        out
    })
}

enum ModKernel {
    Vector(Vec<Fp2>),
    Rank(usize),
}

/// Kernel of a square matrix mod p when its rank is exactly `n − 1`.
fn kernel_mod(mut m: Vec<Fp2>, n: usize, f: &Field) -> ModKernel {
    let mut pivots = Vec::with_capacity(n);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| m[i * n + c] != f.zero()) else {
            continue;
        };
        if p != r {
            for j in 0..n {
                m.swap(p * n + j, r * n + j);
            }
        }
        let inv = f.inv(m[r * n + c]).expect("nonzero in a field");
        for j in c..n {
            m[r * n + j] = f.mul(m[r * n + j], inv);
        }
        for i in 0..n {
            if i == r {
                continue;
            }
            let factor = m[i * n + c];
            if factor == f.zero() {
                continue;
            }
            for j in c..n {
                let x = m[r * n + j];
                if x != f.zero() {
                    m[i * n + j] = f.sub(m[i * n + j], f.mul(factor, x));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if r != n - 1 {
        return ModKernel::Rank(r);
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut v = vec![f.zero(); n];
    v[free] = Fp2 { a: 1, b: 0 };
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = f.sub(f.zero(), m[row * n + free]);
    }
    ModKernel::Vector(v)
}

/// Wang's rational reconstruction of `u mod m`.
fn rational_reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    if s1.sign() == Sign::Minus {
        r1 = -r1;
        s1 = -s1;
    }
    Some(Rational::new(r1, s1))
}

/// Rational reconstruction for a single-word modulus.
fn rational_reconstruct_small(u: u64, m: u64) -> Option<Rational> {
    let bound = ((m / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, u as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound || num_integer::gcd(r1, s1) != 1 {
        return None;
    }
    if s1 < 0 {
        r1 = -r1;
        s1 = -s1;
    }
    Some(Rational::new(r1, s1))
}

/// Integer square root (floor) via Newton iteration.
fn isqrt(x: &BigInt) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let mut y = BigInt::one() << ((x.bits() / 2) + 1);
    loop {
        let z = (&y + x / &y) >> 1;
        if z >= y {
            return y;
        }
        y = z;
    }
}

/// Settings for [`certified_kernel`].
#[derive(Clone, Copy, Debug)]
pub struct KernelOptions {
    /// Give up reconstruction after this many primes.
    pub max_primes: usize,
    /// Consecutive primes with the wrong rank before declaring degeneracy.
    pub degenerate_after: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            max_primes: 48,
            degenerate_after: 3,
        }
    }
}

/// Exact kernel vector of the `n×n` row-major matrix `m`, normalized so that
/// entry `norm_index` equals `norm_value`.
///
/// `certify` receives each reconstructed candidate and must check the
/// kernel equation exactly; the returned vector is always one that passed.
/// A modular rank of `n − 1` bounds the true rank from below, so together
/// with a certified nonzero vector the kernel is proven one-dimensional.
pub fn certified_kernel<T: Reduce>(
    m: &[T],
    n: usize,
    norm_index: usize,
    norm_value: &CycloNum,
    opts: KernelOptions,
    mut certify: impl FnMut(&[CycloNum]) -> bool,
) -> Result<Vec<CycloNum>> {
    assert_eq!(m.len(), n * n, "square matrix expected");
    if n == 1 {
        let v = vec![norm_value.clone()];
        return if certify(&v) {
            Ok(v)
        } else {
            Err(Error::DegenerateKernel { dim: 0 })
        };
    }
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); 2 * n];
    let mut used = 0;
    let mut wrong_rank = 0;
    for &p in primes() {
        if used >= opts.max_primes {
            break;
        }
        let f = Field::new(p);
        let Some(reduced) = m.iter().map(|x| x.reduce(&f)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let Some(target) = norm_value.reduce(&f) else {
            continue;
        };
        let v = match kernel_mod(reduced, n, &f) {
            ModKernel::Rank(r) => {
                wrong_rank += 1;
                if wrong_rank >= opts.degenerate_after {
                    return Err(Error::DegenerateKernel { dim: n - r });
                }
                continue;
            }
            ModKernel::Vector(v) => v,
        };
        wrong_rank = 0;
        let Some(scale) = f.inv(v[norm_index]) else {
            continue;
        };
        let scale = f.mul(scale, target);
        used += 1;
        let v: Vec<Fp2> = v.iter().map(|x| f.mul(*x, scale)).collect();

        if used == 1 {
            let candidate: Option<Vec<CycloNum>> = v
                .iter()
                .map(|y| {
                    Some(CycloNum::new(
                        rational_reconstruct_small(y.a, p)?,
                        rational_reconstruct_small(y.b, p)?,
                    ))
                })
                .collect();
            if let Some(c) = candidate {
                if certify(&c) {
                    return Ok(c);
                }
            }
        }

        // CRT: x ≡ old (mod M), x ≡ r (mod p)
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(f.invmod(f.reduce_int(&modulus)).expect("coprime moduli"));
        for (k, y) in v.iter().enumerate() {
            for (slot, r) in [(2 * k, y.a), (2 * k + 1, y.b)] {
                let old = &residues[slot];
                let diff = (BigInt::from(r) - old).mod_floor(&pb);
                let t = (diff * &m_inv).mod_floor(&pb);
                residues[slot] = old + &modulus * t;
            }
        }
        modulus *= &pb;

        let bound = isqrt(&(&modulus >> 1));
        let candidate: Option<Vec<CycloNum>> = (0..n)
            .map(|k| {
                let a = rational_reconstruct(&residues[2 * k], &modulus, &bound)?;
                let b = rational_reconstruct(&residues[2 * k + 1], &modulus, &bound)?;
                Some(CycloNum::new(a, b))
            })
            .collect();
        if let Some(c) = candidate {
            if certify(&c) {
                return Ok(c);
            }
        }
    }
    Err(Error::Reconstruction { primes: used })
}
