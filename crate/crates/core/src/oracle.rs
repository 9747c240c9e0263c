//! Exhaustive ground truth: codeword enumeration, weight distributions, distances, exact
//! locality and recovery-set inventories.
//!
//! A code over GF(q), q = p^s, with a k-row generator matrix is enumerated as the GF(p)-span
//! of the s·k rows θ^e·g_i. Messages are visited in p-ary modular Gray-code order, so each
//! step adds a single row. The message space is split into contiguous segments that can be
//! processed independently and merged in order.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::krawtchouk;
use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::field::{Alphabet, Gf};
use crate::linalg::{self, Matrix};
use crate::par::Exec;

/// Default ceiling on the number of enumerated words.
pub const DEFAULT_CEILING: u128 = 1 << 28;
/// Longest supported code length; supports are stored as 128-bit masks.
pub const MAX_LENGTH: usize = 128;
/// Support cap that keeps only the supports of minimum nonzero weight.
pub const MIN_WEIGHT_ONLY: usize = usize::MAX;

/// A linear code over a small alphabet, given by a basis of generator rows.
#[derive(Clone, Debug)]
pub struct SymbolCode {
    pub n: usize,
    pub alphabet: Arc<Alphabet>,
    pub rows: Vec<Vec<u8>>,
}

impl SymbolCode {
    /// `rows` must be linearly independent.
    pub fn new(n: usize, alphabet: Arc<Alphabet>, rows: Vec<Vec<u8>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        Ok(SymbolCode { n, alphabet, rows })
    }

    /// The cyclic code itself.
    pub fn primal(code: &CyclicCode) -> Result<Self> {
        SymbolCode::new(code.n(), code.alphabet()?, code.to_symbols(&code.generator_matrix())?)
    }

    /// The dual of a cyclic code, generated by its parity-check matrix.
    pub fn dual(code: &CyclicCode) -> Result<Self> {
        SymbolCode::new(code.n(), code.alphabet()?, code.to_symbols(&code.parity_check_matrix())?)
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn q(&self) -> u64 {
        self.alphabet.size() as u64
    }

    /// q^k, saturating.
    pub fn size(&self) -> u128 {
        let q = self.q() as u128;
        (0..self.k()).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX)
    }

    /// Rows of the expansion over the prime field: θ^e · g_i for each basis element θ^e.
    fn prime_rows(&self) -> Vec<Vec<u8>> {
        let a = &self.alphabet;
        let mut out = Vec::with_capacity(self.rows.len() * a.prime_basis().len());
        for row in &self.rows {
            for &t in a.prime_basis() {
                out.push(row.iter().map(|&x| a.mul(t, x)).collect());
            }
        }
        out
    }
}

/// Mergeable result of one enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    /// Number of codewords of each weight 0..=n.
    pub hist: Vec<u64>,
    /// Union of the supports of all codewords of each weight.
    pub cover: Vec<u128>,
    /// Support → number of codewords with that support, for nonzero weights up to the cap.
    pub low: BTreeMap<u128, u64>,
    /// Weight of the supports in `low` under [`MIN_WEIGHT_ONLY`]; `usize::MAX` otherwise.
    pub low_weight: usize,
}

impl Tally {
    fn new(n: usize) -> Self {
        Tally { hist: vec![0; n + 1], cover: vec![0; n + 1], low: BTreeMap::new(), low_weight: usize::MAX }
    }

    #[inline]
    fn visit(&mut self, weight: usize, support: u128, cap: usize) {
        self.hist[weight] += 1;
        self.cover[weight] |= support;
        if weight == 0 {
            return;
        }
        if cap == MIN_WEIGHT_ONLY {
            if weight < self.low_weight {
                self.low.clear();
                self.low_weight = weight;
            }
            if weight == self.low_weight {
                *self.low.entry(support).or_insert(0) += 1;
            }
        } else if weight <= cap {
            *self.low.entry(support).or_insert(0) += 1;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.hist.iter_mut().zip(other.hist) {
            *a += b;
        }
        for (a, b) in self.cover.iter_mut().zip(other.cover) {
            *a |= b;
        }
        if other.low_weight < self.low_weight {
            self.low = other.low;
            self.low_weight = other.low_weight;
        } else if other.low_weight == self.low_weight {
            for (s, c) in other.low {
                *self.low.entry(s).or_insert(0) += c;
            }
        }
        self
    }

    pub fn total(&self) -> u128 {
        self.hist.iter().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight, if any nonzero codeword exists.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.hist.len()).find(|&w| self.hist[w] > 0)
    }
}

/// Enumeration engine with a size ceiling and an execution mode.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub ceiling: u128,
    pub exec: Exec,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { ceiling: DEFAULT_CEILING, exec: Exec::default() }
    }
}

fn digits(mut x: u128, p: u128, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let d = (x % p) as u8;
            x /= p;
            d
        })
        .collect()
}

fn mask_of(word: &[u8]) -> u128 {
    word.iter().enumerate().filter(|(_, &x)| x != 0).fold(0u128, |m, (i, _)| m | (1u128 << i))
}

impl Oracle {
    pub fn new(ceiling: u128, exec: Exec) -> Self {
        Oracle { ceiling, exec }
    }

    pub fn check_size(&self, code: &SymbolCode) -> Result<()> {
        let words = code.size();
        if words > self.ceiling {
            return Err(Error::EnumerationCeiling { words, ceiling: self.ceiling });
        }
        if code.n > MAX_LENGTH {
            return Err(Error::InvalidParameters(format!("oracle supports lengths up to {MAX_LENGTH}")));
        }
        Ok(())
    }

    pub fn can_enumerate(&self, code: &SymbolCode) -> bool {
        self.check_size(code).is_ok()
    }

    /// Enumerates every codeword, recording supports of nonzero words of weight ≤ `cap`.
    pub fn enumerate(&self, code: &SymbolCode, cap: usize) -> Result<Tally> {
        self.check_size(code)?;
        let p = code.alphabet.characteristic() as u128;
        let rows = code.prime_rows();
        let total = code.size();
        let segments = (self.exec.segments() as u128).clamp(1, total.max(1));
        let bounds: Vec<(u128, u128)> =
            (0..segments).map(|s| (total * s / segments, total * (s + 1) / segments)).collect();
        let n = code.n;
        let tallies = if p == 2 && code.alphabet.size() == 2 {
            let masks: Vec<u128> = rows.iter().map(|r| mask_of(r)).collect();
            self.exec.map(bounds, |(a, b)| binary_segment(&masks, n, a, b, cap))
        } else {
            let alphabet = &code.alphabet;
            self.exec.map(bounds, |(a, b)| general_segment(&rows, alphabet, n, p, a, b, cap))
        };
        Ok(tallies.into_iter().fold(Tally::new(n), Tally::merge))
    }

    pub fn weight_distribution(&self, code: &SymbolCode) -> Result<Vec<u64>> {
        Ok(self.enumerate(code, 0)?.hist)
    }
}

fn binary_segment(rows: &[u128], n: usize, start: u128, end: u128, cap: usize) -> Tally {
    let mut tally = Tally::new(n);
    if start >= end {
        return tally;
    }
    let gray = start ^ (start >> 1);
    let mut word = rows.iter().enumerate().filter(|(j, _)| gray >> j & 1 == 1).fold(0u128, |w, (_, &r)| w ^ r);
    let mut i = start;
    loop {
        tally.visit(word.count_ones() as usize, word, cap);
        if i + 1 == end {
            break;
        }
        word ^= rows[i.trailing_ones() as usize];
        i += 1;
    }
    tally
}

fn general_segment(
    rows: &[Vec<u8>],
    alphabet: &Alphabet,
    n: usize,
    p: u128,
    start: u128,
    end: u128,
    cap: usize,
) -> Tally {
    let mut tally = Tally::new(n);
    if start >= end {
        return tally;
    }
    let sparse: Vec<Vec<(usize, u8)>> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect())
        .collect();
    let len = rows.len();
    let mut counter = digits(start, p, len + 1);
    let mut word = vec![0u8; n];
    for j in 0..len {
        let g = (counter[j] as u128 + p - counter[j + 1] as u128) % p;
        for _ in 0..g {
            for &(pos, x) in &sparse[j] {
                word[pos] = alphabet.add(word[pos], x);
            }
        }
    }
    let mut support = mask_of(&word);
    let mut weight = support.count_ones() as usize;
    let top = (p - 1) as u8;
    let mut i = start;
    loop {
        tally.visit(weight, support, cap);
        if i + 1 == end {
            break;
        }
        let mut t = 0;
        while counter[t] == top {
            counter[t] = 0;
            t += 1;
        }
        counter[t] += 1;
        for &(pos, x) in &sparse[t] {
            let old = word[pos];
            let new = alphabet.add(old, x);
            word[pos] = new;
            match (old == 0, new == 0) {
                (true, false) => {
                    weight += 1;
                    support |= 1u128 << pos;
                }
                (false, true) => {
                    weight -= 1;
                    support &= !(1u128 << pos);
                }
                _ => {}
            }
        }
        i += 1;
    }
    tally
}

/// Every codeword, re-encoding each message from scratch (message digits base q, row-major).
pub fn naive_codewords(code: &SymbolCode) -> Vec<Vec<u8>> {
    let q = code.q() as u128;
    let a = &code.alphabet;
    (0..code.size())
        .map(|m| {
            let msg = digits(m, q, code.k());
            let mut word = vec![0u8; code.n];
            for (row, &c) in code.rows.iter().zip(&msg) {
                if c == 0 {
                    continue;
                }
                for (w, &x) in word.iter_mut().zip(row) {
                    *w = a.add(*w, a.mul(c, x));
                }
            }
            word
        })
        .collect()
}

pub fn naive_weight_distribution(code: &SymbolCode) -> Vec<u64> {
    let mut hist = vec![0u64; code.n + 1];
    for w in naive_codewords(code) {
        hist[w.iter().filter(|&&x| x != 0).count()] += 1;
    }
    hist
}

/// Weight distribution of the dual from the primal one, as exact integers. Errors if the
/// division by |C| is not exact, which cannot happen for a genuine weight distribution.
pub fn macwilliams_exact(hist: &[u64], q: u64) -> Result<Vec<BigInt>> {
    let n = hist.len() - 1;
    let size: BigInt = hist.iter().map(|&c| BigInt::from(c)).sum();
    (0..=n)
        .map(|j| {
            let s: BigInt = (0..=n)
                .filter(|&i| hist[i] != 0)
                .map(|i| BigInt::from(hist[i]) * krawtchouk(q, n, j, i))
                .sum();
            if !(&s % &size).is_zero() || s.is_negative() {
                return Err(Error::InvalidParameters("not a weight distribution of a linear code".into()));
            }
            Ok(s / &size)
        })
        .collect()
}

/// [`macwilliams_exact`] narrowed to u64; errors when a count does not fit.
pub fn macwilliams(hist: &[u64], q: u64) -> Result<Vec<u64>> {
    macwilliams_exact(hist, q)?
        .into_iter()
        .map(|c| c.to_u64().ok_or_else(|| Error::InvalidParameters("weight count exceeds 64 bits".into())))
        .collect()
}

fn first_nonzero_big(b: &[BigInt]) -> Option<usize> {
    (1..b.len()).find(|&w| !b[w].is_zero())
}

/// Per-coordinate locality of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactLocality {
    /// max_i r_i; `None` if some coordinate lies in no dual support.
    pub r: Option<usize>,
    /// r_i = min{wt(c) − 1 : c ∈ C⊥, c_i ≠ 0}.
    pub per_coordinate: Vec<Option<usize>>,
    /// "dual-enumeration" or "macwilliams" (cyclic codes only).
    pub method: String,
}

/// Dual codewords whose support contains a coordinate, grouped by support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoverySet {
    /// The support minus the designated coordinate.
    pub set: Vec<usize>,
    /// Number of dual codewords with this support.
    pub words: u64,
}

/// Brute-force summary of a cyclic code.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    pub k: usize,
    pub d_min: Option<usize>,
    pub weight_distribution: Option<Vec<u64>>,
    pub d_dual: Option<usize>,
    pub dual_weight_distribution: Option<Vec<u64>>,
    pub r_exact: Option<usize>,
    pub locality_method: Option<String>,
    /// Dual codewords of weight d⊥ covering each coordinate.
    pub recovery_words_per_coordinate: Option<Vec<u64>>,
    /// Distinct supports of weight d⊥ covering each coordinate.
    pub recovery_sets_per_coordinate: Option<Vec<u64>>,
    pub enumerated_words: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

impl Oracle {
    fn tally_pair(&self, code: &CyclicCode, cap_dual: usize) -> Result<(Option<Tally>, Option<Tally>)> {
        let primal = SymbolCode::primal(code)?;
        let dual = SymbolCode::dual(code)?;
        let t_dual = if self.can_enumerate(&dual) { Some(self.enumerate(&dual, cap_dual)?) } else { None };
        let t_primal = if t_dual.is_none() || primal.size() <= dual.size() {
            if self.can_enumerate(&primal) {
                Some(self.enumerate(&primal, 0)?)
            } else {
                None
            }
        } else {
            None
        };
        if t_primal.is_none() && t_dual.is_none() {
            return Err(Error::EnumerationCeiling { words: primal.size().min(dual.size()), ceiling: self.ceiling });
        }
        Ok((t_primal, t_dual))
    }

    /// Primal and dual weight distributions, enumerating the smaller enumerable side.
    pub fn distributions(&self, code: &CyclicCode) -> Result<(Vec<u64>, Vec<u64>)> {
        let primal = SymbolCode::primal(code)?;
        let dual = SymbolCode::dual(code)?;
        let q = code.q();
        let (small, small_is_primal) = if primal.size() <= dual.size() { (primal, true) } else { (dual, false) };
        let hist = self.weight_distribution(&small)?;
        let other = macwilliams(&hist, q)?;
        Ok(if small_is_primal { (hist, other) } else { (other, hist) })
    }

    /// Minimum distance of the primal (`dual == false`) or dual side, enumerating the smaller one.
    fn side_distance(&self, code: &CyclicCode, dual: bool) -> Result<Option<usize>> {
        let primal_code = SymbolCode::primal(code)?;
        let dual_code = SymbolCode::dual(code)?;
        let (want, other) = if dual { (dual_code, primal_code) } else { (primal_code, dual_code) };
        if want.size() <= other.size() {
            let hist = self.weight_distribution(&want)?;
            return Ok((1..hist.len()).find(|&w| hist[w] > 0));
        }
        let hist = self.weight_distribution(&other)?;
        Ok(first_nonzero_big(&macwilliams_exact(&hist, code.q())?))
    }

    pub fn min_distance(&self, code: &CyclicCode) -> Result<Option<usize>> {
        self.side_distance(code, false)
    }

    pub fn dual_distance(&self, code: &CyclicCode) -> Result<Option<usize>> {
        self.side_distance(code, true)
    }

    /// Locality from a dual enumeration of an arbitrary linear code (the dual is given).
    pub fn locality_of_dual(&self, dual: &SymbolCode) -> Result<ExactLocality> {
        let t = self.enumerate(dual, 0)?;
        Ok(locality_from_cover(&t, dual.n))
    }

    /// Exact locality of a cyclic code. Falls back to d⊥ − 1 via the MacWilliams transform
    /// when only the primal side is enumerable.
    pub fn exact_locality(&self, code: &CyclicCode) -> Result<ExactLocality> {
        let dual = SymbolCode::dual(code)?;
        if self.can_enumerate(&dual) {
            let loc = self.locality_of_dual(&dual)?;
            debug_assert!(loc.per_coordinate.windows(2).all(|w| w[0] == w[1]));
            return Ok(loc);
        }
        let d = self.dual_distance(code)?;
        let r = d.map(|d| d - 1);
        Ok(ExactLocality { r, per_coordinate: vec![r; code.n()], method: "macwilliams".into() })
    }

    /// Recovery sets of coordinate `i`: supports of dual words of weight ≤ `max_weight`
    /// containing `i`, with `i` removed. Sorted by size, then lexicographically.
    pub fn recovery_sets(&self, dual: &SymbolCode, i: usize, max_weight: usize) -> Result<Vec<RecoverySet>> {
        if i >= dual.n {
            return Err(Error::InvalidParameters(format!("coordinate {i} out of range")));
        }
        let t = self.enumerate(dual, max_weight)?;
        Ok(recovery_sets_from(&t, i))
    }

    /// Full oracle report for a cyclic code.
    pub fn report(&self, code: &CyclicCode) -> Result<OracleReport> {
        let clock = Instant::now();
        let primal = SymbolCode::primal(code)?;
        let dual = SymbolCode::dual(code)?;
        let q = code.q();
        let n = code.n();
        let (t_primal, t_dual) = self.tally_pair(code, MIN_WEIGHT_ONLY)?;
        let first = |h: &[u64]| (1..h.len()).find(|&w| h[w] > 0);
        let narrow = |b: Vec<BigInt>| b.iter().map(|c| c.to_u64()).collect::<Option<Vec<u64>>>();
        let (a, b, d_min, d_dual) = match (&t_primal, &t_dual) {
            (Some(tp), Some(td)) => (Some(tp.hist.clone()), Some(td.hist.clone()), first(&tp.hist), first(&td.hist)),
            (Some(tp), None) => {
                let big = macwilliams_exact(&tp.hist, q)?;
                (Some(tp.hist.clone()), narrow(big.clone()), first(&tp.hist), first_nonzero_big(&big))
            }
            (None, Some(td)) => {
                let big = macwilliams_exact(&td.hist, q)?;
                (narrow(big.clone()), Some(td.hist.clone()), first_nonzero_big(&big), first(&td.hist))
            }
            (None, None) => unreachable!(),
        };
        let (loc, words, sets) = match &t_dual {
            Some(td) => {
                let loc = locality_from_cover(td, n);
                let (w, s) = match d_dual {
                    Some(dd) => {
                        let mut words = vec![0u64; n];
                        let mut sets = vec![0u64; n];
                        for (&supp, &c) in td.low.iter().filter(|(s, _)| s.count_ones() as usize == dd) {
                            for (i, (w, s)) in words.iter_mut().zip(sets.iter_mut()).enumerate() {
                                if supp >> i & 1 == 1 {
                                    *w += c;
                                    *s += 1;
                                }
                            }
                        }
                        (Some(words), Some(sets))
                    }
                    None => (None, None),
                };
                (loc, w, s)
            }
            None => {
                let r = d_dual.map(|d| d - 1);
                (ExactLocality { r, per_coordinate: vec![r; n], method: "macwilliams".into() }, None, None)
            }
        };
        let enumerated = t_primal.as_ref().map_or(0, |_| primal.size()) + t_dual.as_ref().map_or(0, |_| dual.size());
        Ok(OracleReport {
            n,
            k: code.k(),
            d_min,
            weight_distribution: a,
            d_dual,
            dual_weight_distribution: b,
            r_exact: loc.r,
            locality_method: Some(loc.method),
            recovery_words_per_coordinate: words,
            recovery_sets_per_coordinate: sets,
            enumerated_words: enumerated,
            runtime_ms: Some(clock.elapsed().as_millis()),
        })
    }
}

fn locality_from_cover(t: &Tally, n: usize) -> ExactLocality {
    let per: Vec<Option<usize>> =
        (0..n).map(|i| (1..t.cover.len()).find(|&w| t.cover[w] >> i & 1 == 1).map(|w| w - 1)).collect();
    let r = per.iter().try_fold(0usize, |acc, x| x.map(|v| acc.max(v)));
    ExactLocality { r, per_coordinate: per, method: "dual-enumeration".into() }
}

pub fn recovery_sets_from(t: &Tally, i: usize) -> Vec<RecoverySet> {
    let mut out: Vec<RecoverySet> = t
        .low
        .iter()
        .filter(|(s, _)| *s >> i & 1 == 1)
        .map(|(&s, &c)| RecoverySet {
            set: (0..MAX_LENGTH).filter(|&j| j != i && s >> j & 1 == 1).collect(),
            words: c,
        })
        .collect();
    out.sort_by(|a, b| a.set.len().cmp(&b.set.len()).then_with(|| a.set.cmp(&b.set)));
    out
}

/// A largest family of pairwise-disjoint sets: exhaustive for at most 20 candidates,
/// greedy (smallest first) otherwise. Returns indices into `sets`.
pub fn disjoint_family(sets: &[Vec<usize>]) -> Vec<usize> {
    let masks: Vec<u128> = sets.iter().map(|s| s.iter().fold(0u128, |m, &j| m | 1u128 << j)).collect();
    if sets.len() <= 20 {
        let mut best = Vec::new();
        let mut cur = Vec::new();
        fn search(i: usize, used: u128, masks: &[u128], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
            if cur.len() + (masks.len() - i) <= best.len() {
                return;
            }
            if i == masks.len() {
                *best = cur.clone();
                return;
            }
            if masks[i] & used == 0 {
                cur.push(i);
                search(i + 1, used | masks[i], masks, cur, best);
                cur.pop();
            }
            search(i + 1, used, masks, cur, best);
        }
        search(0, 0, &masks, &mut cur, &mut best);
        return best;
    }
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| (sets[i].len(), sets[i].clone()));
    let mut used = 0u128;
    let mut out = Vec::new();
    for i in order {
        if masks[i] & used == 0 {
            used |= masks[i];
            out.push(i);
        }
    }
    out.sort_unstable();
    out
}

/// Converts locator-field rows with subfield entries into symbol indices.
pub fn symbols_of(rows: &Matrix, alphabet: &Alphabet) -> Result<Vec<Vec<u8>>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| alphabet.index_of(x).ok_or(Error::OutsideSubfield)).collect())
        .collect()
}

/// Reduces a spanning set to a basis (rows in locator-field encoding).
pub fn basis_of(rows: &Matrix, field: &crate::field::FieldTable) -> Matrix {
    linalg::rref(rows, field).0
}

/// Expands symbol indices back into field elements.
pub fn elements_of(word: &[u8], alphabet: &Alphabet) -> Vec<Gf> {
    word.iter().map(|&x| alphabet.element(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::SymbolField;

    fn binary(n: usize, reps: &[i64]) -> CyclicCode {
        CyclicCode::new(n, SymbolField::binary(), reps).unwrap()
    }

    #[test]
    fn hamming_and_simplex() {
        let o = Oracle::default();
        let h = binary(7, &[1]);
        let hist = o.weight_distribution(&SymbolCode::primal(&h).unwrap()).unwrap();
        assert_eq!(hist, vec![1, 0, 0, 7, 7, 0, 0, 1]);
        let simplex = o.weight_distribution(&SymbolCode::dual(&h).unwrap()).unwrap();
        assert_eq!(simplex, vec![1, 0, 0, 0, 7, 0, 0, 0]);
        let all: Vec<i64> = (0..7).collect();
        let zero = binary(7, &all);
        assert_eq!(o.weight_distribution(&SymbolCode::primal(&zero).unwrap()).unwrap(), vec![1, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn segmentation_is_deterministic() {
        let c = binary(21, &[0, 1, 7]);
        let dual = SymbolCode::dual(&c).unwrap();
        let seq = Oracle::new(DEFAULT_CEILING, Exec::Sequential).enumerate(&dual, 21).unwrap();
        let par = Oracle::new(DEFAULT_CEILING, Exec::Parallel).enumerate(&dual, 21).unwrap();
        assert_eq!(seq, par);
        let t = CyclicCode::new(13, SymbolField::new(3, 1), &[1]).unwrap();
        let code = SymbolCode::primal(&t).unwrap();
        let seq = Oracle::new(DEFAULT_CEILING, Exec::Sequential).enumerate(&code, 13).unwrap();
        let par = Oracle::new(DEFAULT_CEILING, Exec::Parallel).enumerate(&code, 13).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn ceiling_is_enforced() {
        let c = binary(45, &[0, 3, 5, 9]);
        let o = Oracle::new(1 << 20, Exec::Sequential);
        let err = o.weight_distribution(&SymbolCode::primal(&c).unwrap()).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn repetition_code_locality() {
        let all_but_zero: Vec<i64> = (1..9).collect();
        let rep = binary(9, &all_but_zero);
        assert_eq!(rep.k(), 1);
        let o = Oracle::default();
        let dual = SymbolCode::dual(&rep).unwrap();
        let loc = o.exact_locality(&rep).unwrap();
        assert_eq!(loc.r, Some(1));
        let sets = o.recovery_sets(&dual, 0, 2).unwrap();
        assert!(sets.iter().all(|s| s.set.len() == 1));
        assert_eq!(sets.len(), 8);
    }

    #[test]
    fn disjoint_family_search() {
        let sets = vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![5]];
        assert_eq!(disjoint_family(&sets), vec![0, 2, 3]);
    }
}
