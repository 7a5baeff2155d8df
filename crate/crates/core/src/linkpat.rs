//! Planar link patterns on 2n cyclically ordered points and the
//! Temperley–Lieb action on them.
//!
//! Points are 1-indexed in the public API; the successor of `2n` is `1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloNum, Eisenstein, RingElem};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    // 0-indexed partners; lexicographic order on this array is the
    // canonical pattern order
    pairing: Vec<u8>,
}

/// Maximal runs of consecutive points not separated by a little arch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceDecomposition {
    pub runs: Vec<Vec<usize>>,
}

impl SequenceDecomposition {
    /// Index of the run containing point `i`.
    pub fn run_of(&self, i: usize) -> usize {
        self.runs
            .iter()
            .position(|r| r.contains(&i))
            .expect("every point lies in a run")
    }
}

pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c as usize
}

impl LinkPattern {
    /// Builds a pattern from a 1-indexed partner array.
    pub fn new(pairing: &[usize]) -> Result<Self> {
        let m = pairing.len();
        if m == 0 || m % 2 == 1 || m > 254 {
            return Err(Error::InvalidPattern(format!("{m} points")));
        }
        let mut p = Vec::with_capacity(m);
        for (i, &j) in pairing.iter().enumerate() {
            if j == 0 || j > m {
                return Err(Error::InvalidPattern(format!("partner {j} out of range")));
            }
            if j == i + 1 || pairing[j - 1] != i + 1 {
                return Err(Error::InvalidPattern(format!("{pairing:?} is not an involution without fixed points")));
            }
            p.push((j - 1) as u8);
        }
        let lp = LinkPattern { pairing: p };
        if !lp.is_planar() {
            return Err(Error::InvalidPattern(format!("{pairing:?} is not planar")));
        }
        Ok(lp)
    }

    /// Builds a pattern from 1-indexed chords.
    pub fn from_chords(chords: &[(usize, usize)]) -> Result<Self> {
        let m = 2 * chords.len();
        let mut p = vec![0usize; m];
        for &(i, j) in chords {
            if i == 0 || j == 0 || i > m || j > m || p[i - 1] != 0 || p[j - 1] != 0 {
                return Err(Error::InvalidPattern(format!("bad chord list {chords:?}")));
            }
            p[i - 1] = j;
            p[j - 1] = i;
        }
        LinkPattern::new(&p)
    }

    /// `i ↔ 2n+1−i`.
    pub fn fully_nested(n: usize) -> Self {
        let m = 2 * n;
        LinkPattern {
            pairing: (0..m).map(|i| (m - 1 - i) as u8).collect(),
        }
    }

    /// `(1 2)(3 4)…(2n−1 2n)`.
    pub fn little_arches(n: usize) -> Self {
        LinkPattern {
            pairing: (0..2 * n).map(|i| (i ^ 1) as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn size(&self) -> usize {
        self.pairing.len()
    }

    /// Partner of point `i` (1-indexed).
    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i - 1] as usize + 1
    }

    pub fn pairing(&self) -> Vec<usize> {
        self.pairing.iter().map(|&j| j as usize + 1).collect()
    }

    /// Chords `(i, π(i))` with `i < π(i)`, 1-indexed, sorted by `i`.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (0..self.size())
            .filter(|&i| (self.pairing[i] as usize) > i)
            .map(|i| (i + 1, self.pairing[i] as usize + 1))
            .collect()
    }

    pub fn is_planar(&self) -> bool {
        let chords = self.chords();
        for (a, &(i, j)) in chords.iter().enumerate() {
            for &(k, l) in &chords[a + 1..] {
                let inside = |x: usize| i < x && x < j;
                if inside(k) != inside(l) {
                    return false;
                }
            }
        }
        true
    }

    fn next(&self, i: usize) -> usize {
        i % self.size() + 1
    }

    /// Whether `i` and its cyclic successor are joined.
    pub fn has_little_arch(&self, i: usize) -> bool {
        self.partner(i) == self.next(i)
    }

    /// All `i` such that `(i, i+1)` is an arch (cyclically).
    pub fn little_arch_sites(&self) -> Vec<usize> {
        (1..=self.size()).filter(|&i| self.has_little_arch(i)).collect()
    }

    /// Temperley–Lieb generator `e_i` (gluing `i` and its cyclic successor).
    /// The flag reports whether a closed loop was produced.
    pub fn e_apply(&self, i: usize) -> (LinkPattern, bool) {
        let a = i - 1;
        let b = self.next(i) - 1;
        if self.pairing[a] as usize == b {
            return (self.clone(), true);
        }
        let (pa, pb) = (self.pairing[a], self.pairing[b]);
        let mut p = self.pairing.clone();
        p[a] = b as u8;
        p[b] = a as u8;
        p[pa as usize] = pb;
        p[pb as usize] = pa;
        (LinkPattern { pairing: p }, false)
    }

    /// `rπ(i+1) = π(i)+1`.
    pub fn rotate(&self) -> Self {
        let m = self.size();
        let mut p = vec![0u8; m];
        for i in 0..m {
            p[(i + 1) % m] = ((self.pairing[i] as usize + 1) % m) as u8;
        }
        LinkPattern { pairing: p }
    }

    pub fn rotate_inv(&self) -> Self {
        let m = self.size();
        let mut p = vec![0u8; m];
        for i in 0..m {
            p[(i + m - 1) % m] = ((self.pairing[i] as usize + m - 1) % m) as u8;
        }
        LinkPattern { pairing: p }
    }

    /// Mirror image `i ↔ 2n+1−i`.
    pub fn reflect(&self) -> Self {
        let m = self.size();
        let mut p = vec![0u8; m];
        for i in 0..m {
            p[m - 1 - i] = (m - 1 - self.pairing[i] as usize) as u8;
        }
        LinkPattern { pairing: p }
    }

    /// Inserts a little arch joining the new points `i` and `i+1`
    /// (`1 ≤ i ≤ 2n+1` for a pattern of half-size `n`), relabelling the
    /// old points after it.
    pub fn phi_embed(&self, i: usize) -> Result<Self> {
        let m = self.size();
        if i == 0 || i > m + 1 {
            return Err(Error::InvalidPattern(format!("insertion point {i} out of range")));
        }
        let shift = |x: usize| if x + 1 >= i { x + 2 } else { x };
        let mut p = vec![0u8; m + 2];
        for x in 0..m {
            p[shift(x)] = shift(self.pairing[x] as usize) as u8;
        }
        p[i - 1] = i as u8;
        p[i] = (i - 1) as u8;
        Ok(LinkPattern { pairing: p })
    }

    /// Removes the little arch `(i, i+1)` with `1 ≤ i < 2n`, relabelling;
    /// inverse of [`phi_embed`](Self::phi_embed).
    pub fn remove_arch(&self, i: usize) -> Option<Self> {
        let m = self.size();
        if i == 0 || i >= m || self.partner(i) != i + 1 || m == 2 {
            return None;
        }
        let squeeze = |x: usize| if x > i { x - 2 } else { x };
        let mut p = vec![0u8; m - 2];
        for x in (0..m).filter(|&x| x != i - 1 && x != i) {
            p[squeeze(x)] = squeeze(self.pairing[x] as usize) as u8;
        }
        Some(LinkPattern { pairing: p })
    }

    /// Runs of points between little arches, starting with the run that
    /// contains point 1 and proceeding cyclically.
    pub fn sequence_decomposition(&self) -> SequenceDecomposition {
        let m = self.size();
        let cuts = self.little_arch_sites();
        let mut runs: Vec<Vec<usize>> = Vec::new();
        // start right after the last cut before (or at) point m
        let start = *cuts.last().expect("every pattern has a little arch") % m + 1;
        let mut cur = Vec::new();
        let mut x = start;
        for _ in 0..m {
            cur.push(x);
            if self.has_little_arch(x) {
                runs.push(std::mem::take(&mut cur));
            }
            x = self.next(x);
        }
        let first = runs.iter().position(|r| r.contains(&1)).unwrap();
        runs.rotate_left(first);
        SequenceDecomposition { runs }
    }

    /// Spin configuration with `↑` at each chord opener and `↓` at each
    /// closer (bit `b` set ⇔ site `b+1` down).
    pub fn canonical_config(&self) -> usize {
        self.chords().iter().fold(0, |acc, &(_, j)| acc | 1 << (j - 1))
    }

    /// Sparse spin embedding: the tensor product over chords `(j, k)` of
    /// `q^{1/2} ↑_j↓_k − q^{−1/2} ↓_j↑_k`.
    pub fn spin_embed_sparse<R: RingElem>(&self) -> Vec<(usize, R)> {
        // q^{1/2} = 1 + ω and −q^{−1/2} = ω
        let zeta = R::one().try_add(&R::omega()).expect("small constant");
        let mzinv = R::omega();
        let mut out = vec![(0usize, R::one())];
        for (j, k) in self.chords() {
            let mut next = Vec::with_capacity(out.len() * 2);
            for (idx, c) in &out {
                next.push((idx | 1 << (k - 1), c.try_mul(&zeta).expect("unit product")));
                next.push((idx | 1 << (j - 1), c.try_mul(&mzinv).expect("unit product")));
            }
            out = next;
        }
        out.sort_by_key(|e| e.0);
        out
    }

    /// Dense spin embedding, a vector of length `2^{2n}`.
    pub fn spin_embed(&self) -> Vec<CycloNum> {
        let mut v = vec![CycloNum::zero(); 1 << self.size()];
        for (i, c) in self.spin_embed_sparse::<Eisenstein>() {
            v[i] = c.to_cyclo();
        }
        v
    }
}

/// All link patterns of half-size `n` in canonical (lexicographic) order.
pub fn enumerate(n: usize) -> Vec<LinkPattern> {
    fn rec(p: &mut Vec<u8>, open: &mut Vec<u8>, pos: usize, m: usize, out: &mut Vec<LinkPattern>) {
        if pos == m {
            out.push(LinkPattern { pairing: p.clone() });
            return;
        }
        let remaining = m - pos;
        // close the innermost open chord
        if let Some(&o) = open.last() {
            open.pop();
            p[pos] = o;
            p[o as usize] = pos as u8;
            rec(p, open, pos + 1, m, out);
            open.push(o);
        }
        // open a new chord
        if open.len() < remaining - 1 {
            open.push(pos as u8);
            rec(p, open, pos + 1, m, out);
            open.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(catalan(n));
    rec(&mut vec![0; 2 * n], &mut Vec::new(), 0, 2 * n, &mut out);
    out.sort();
    out
}

/// Position of `pi` in the canonical list.
pub fn index_of(patterns: &[LinkPattern], pi: &LinkPattern) -> usize {
    patterns
        .binary_search(pi)
        .expect("pattern belongs to the enumerated basis")
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.chords() {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for LinkPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let chords: Vec<[usize; 2]> = self.chords().into_iter().map(|(i, j)| [i, j]).collect();
        chords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let chords: Vec<(usize, usize)> = Vec::deserialize(d)?;
        LinkPattern::from_chords(&chords).map_err(serde::de::Error::custom)
    }
}
