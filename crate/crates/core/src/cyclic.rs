//! Cyclic codes described by their defining sets of zeros.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, multiplicative_order};
use crate::error::{Error, Result};
use crate::field::{coset_of, Alphabet, FieldTable, Gf};
use crate::linalg::{self, Matrix};
use crate::poly::{generator_from_zeros, DensePoly};

/// The symbol field GF(p^m) of a code, identified by characteristic and degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolField {
    pub p: u32,
    pub m: u32,
}

impl SymbolField {
    pub fn new(p: u32, m: u32) -> Self {
        SymbolField { p, m }
    }

    pub fn binary() -> Self {
        SymbolField { p: 2, m: 1 }
    }

    pub fn order(self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

/// Closes `reps` under multiplication by q modulo n and returns the sorted exponent set.
pub fn complete_defining_set(n: usize, q: u64, reps: &[i64]) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::InvalidParameters("length must be positive".into()));
    }
    if gcd(n as u64, q) != 1 {
        return Err(Error::NotCoprime { n: n as u64, q });
    }
    let mut out = BTreeSet::new();
    for &r in reps {
        if r < 0 || r as usize >= n {
            return Err(Error::ExponentOutOfRange { exponent: r, n });
        }
        out.extend(coset_of(r as usize, n, q));
    }
    Ok(out.into_iter().collect())
}

/// BCH run certificate: `{start + i·stride : 0 ≤ i < run} ⊆ Z`, so `d ≥ run + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchCertificate {
    pub bound: usize,
    pub start: usize,
    pub stride: usize,
    pub run: usize,
}

/// A cyclic code of length n over GF(q), q = p^s, with zeros α^i for i in `zeros`, where
/// α = g^((Q−1)/n) in the locator field GF(Q).
#[derive(Clone)]
pub struct CyclicCode {
    n: usize,
    symbol: SymbolField,
    locator: Arc<FieldTable>,
    alpha: Gf,
    zeros: Vec<usize>,
    alphabet: OnceLock<Arc<Alphabet>>,
}

impl std::fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CyclicCode")
            .field("n", &self.n)
            .field("q", &self.symbol.order())
            .field("locator_degree", &self.locator.degree())
            .field("zeros", &self.zeros)
            .finish()
    }
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.symbol == other.symbol
            && self.locator.spec() == other.locator.spec()
            && self.zeros == other.zeros
    }
}

impl CyclicCode {
    /// Code whose defining set is the closure of `reps`, over the smallest locator field.
    pub fn new(n: usize, symbol: SymbolField, reps: &[i64]) -> Result<Self> {
        let q = checked_pow(symbol.p as u64, symbol.m)
            .ok_or(Error::FieldTooLarge { p: symbol.p, m: symbol.m, ceiling: u64::MAX })?;
        let zeros = complete_defining_set(n, q, reps)?;
        let ord = multiplicative_order(q, n as u64).ok_or(Error::NotCoprime { n: n as u64, q })?;
        let degree = u32::try_from(ord * symbol.m as u64)
            .map_err(|_| Error::FieldTooLarge { p: symbol.p, m: u32::MAX, ceiling: crate::field::ORDER_CEILING })?;
        let locator = FieldTable::cached(symbol.p, degree)?;
        CyclicCode::with_locator(n, symbol, locator, zeros)
    }

    /// Code with an explicit locator field and complete defining set.
    pub fn with_locator(n: usize, symbol: SymbolField, locator: Arc<FieldTable>, zeros: Vec<usize>) -> Result<Self> {
        if locator.characteristic() != symbol.p || !locator.degree().is_multiple_of(symbol.m) {
            return Err(Error::NotSubfield { sub: symbol.m, top: locator.degree() });
        }
        let q = symbol.order();
        if gcd(n as u64, q) != 1 {
            return Err(Error::NotCoprime { n: n as u64, q });
        }
        let alpha = locator.nth_root_of_unity(n as u64)?;
        let mut zeros = zeros;
        zeros.sort_unstable();
        zeros.dedup();
        if let Some(&z) = zeros.iter().find(|&&z| z >= n) {
            return Err(Error::ExponentOutOfRange { exponent: z as i64, n });
        }
        let set: BTreeSet<usize> = zeros.iter().copied().collect();
        if zeros.iter().any(|&z| !set.contains(&((z as u64 * q % n as u64) as usize))) {
            return Err(Error::NotClosed { n, q });
        }
        Ok(CyclicCode { n, symbol, locator, alpha, zeros, alphabet: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.zeros.len()
    }

    pub fn q(&self) -> u64 {
        self.symbol.order()
    }

    pub fn symbol(&self) -> SymbolField {
        self.symbol
    }

    pub fn locator(&self) -> &Arc<FieldTable> {
        &self.locator
    }

    /// Degree of the locator field over the symbol field.
    pub fn extension_degree(&self) -> u32 {
        self.locator.degree() / self.symbol.m
    }

    pub fn alpha(&self) -> Gf {
        self.alpha
    }

    /// α^e for any integer e.
    pub fn alpha_pow(&self, e: i64) -> Gf {
        self.locator.pow(self.alpha, e.rem_euclid(self.n as i64) as u64)
    }

    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub fn is_zero(&self, i: i64) -> bool {
        self.zeros.binary_search(&(i.rem_euclid(self.n as i64) as usize)).is_ok()
    }

    /// Smallest element of every cyclotomic coset in the defining set.
    pub fn representatives(&self) -> Vec<usize> {
        let q = self.q();
        let mut reps: Vec<usize> = self
            .zeros
            .iter()
            .filter(|&&z| coset_of(z, self.n, q).into_iter().min() == Some(z))
            .copied()
            .collect();
        reps.sort_unstable();
        reps
    }

    pub fn alphabet(&self) -> Result<Arc<Alphabet>> {
        if let Some(a) = self.alphabet.get() {
            return Ok(a.clone());
        }
        let a = Arc::new(Alphabet::new(&self.locator, self.symbol.m)?);
        Ok(self.alphabet.get_or_init(|| a).clone())
    }

    pub fn generator_polynomial(&self) -> DensePoly {
        generator_from_zeros(&self.locator, self.alpha, &self.zeros)
    }

    /// h(x) = (x^n − 1) / g(x).
    pub fn check_polynomial(&self) -> DensePoly {
        let f = &self.locator;
        let (h, r) = DensePoly::x_n_minus_one(f, self.n)
            .div_rem(&self.generator_polynomial(), f)
            .expect("generator is nonzero");
        debug_assert!(r.is_zero());
        h
    }

    fn shifts(&self, poly: &DensePoly, count: usize) -> Matrix {
        (0..count)
            .map(|i| {
                let mut row = vec![Gf::ZERO; self.n];
                for (j, &c) in poly.coeffs.iter().enumerate() {
                    row[(i + j) % self.n] = c;
                }
                row
            })
            .collect()
    }

    /// k × n generator matrix from shifts of g(x); entries lie in the symbol field.
    pub fn generator_matrix(&self) -> Matrix {
        self.shifts(&self.generator_polynomial(), self.k())
    }

    /// (n − k) × n parity-check matrix from shifts of the reciprocal of h(x).
    pub fn parity_check_matrix(&self) -> Matrix {
        self.shifts(&self.check_polynomial().reciprocal(), self.n - self.k())
    }

    /// Rows (1, α^j, α^{2j}, …) for every j with −j ∉ Z; over the locator field they span
    /// the code extended to that field.
    pub fn vandermonde_rows(&self) -> Vec<(usize, Vec<Gf>)> {
        (0..self.n)
            .filter(|&j| !self.is_zero(-(j as i64)))
            .map(|j| (j, (0..self.n).map(|i| self.alpha_pow((i * j) as i64)).collect()))
            .collect()
    }

    /// Matrix in compact symbol indices, for enumeration.
    pub fn to_symbols(&self, rows: &Matrix) -> Result<Vec<Vec<u8>>> {
        let a = self.alphabet()?;
        rows.iter()
            .map(|r| r.iter().map(|&x| a.index_of(x).ok_or(Error::OutsideSubfield)).collect())
            .collect()
    }

    pub fn dual_defining_set(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            (0..self.n).filter(|i| !self.is_zero(*i as i64)).map(|i| (self.n - i) % self.n).collect();
        out.sort_unstable();
        out
    }

    pub fn dual(&self) -> CyclicCode {
        CyclicCode::with_locator(self.n, self.symbol, self.locator.clone(), self.dual_defining_set())
            .expect("dual of a valid code is valid")
    }

    /// Whether `word` (locator-field encoding) has symbol-field entries and vanishes on Z.
    pub fn contains(&self, word: &[Gf]) -> bool {
        if word.len() != self.n || word.iter().any(|&c| !self.locator.in_subfield(c, self.symbol.m)) {
            return false;
        }
        let poly = DensePoly::new(word.to_vec());
        self.zeros.iter().all(|&z| poly.evaluate(self.alpha_pow(z as i64), &self.locator).is_zero())
    }

    /// Whether `word` (entries anywhere in the locator field) is orthogonal to every row of
    /// the generator matrix.
    pub fn orthogonal_to_code(&self, word: &[Gf]) -> bool {
        word.len() == self.n
            && self
                .generator_matrix()
                .iter()
                .all(|row| linalg::dot(row, word, &self.locator).is_zero())
    }

    /// BCH bound using a single stride b.
    pub fn bch_bound_stride(&self, b: usize) -> Result<BchCertificate> {
        let n = self.n;
        if b == 0 || gcd(b as u64, n as u64) != 1 {
            return Err(Error::BadStride { b, n });
        }
        let mut best = BchCertificate { bound: 1, start: 0, stride: b, run: 0 };
        for start in 0..n {
            let mut run = 0;
            while run < n && self.is_zero((start + run * b) as i64) {
                run += 1;
            }
            if run > best.run {
                best = BchCertificate { bound: run + 1, start, stride: b, run };
            }
        }
        Ok(best)
    }

    /// BCH bound maximized over all strides coprime to n; ties go to the smaller stride,
    /// then the smaller start. A run covering all of Z_n (the zero code) reports n + 1.
    pub fn bch_bound(&self) -> BchCertificate {
        let strides: Vec<usize> = (1..=self.n.max(1)).filter(|&b| gcd(b as u64, self.n as u64) == 1).collect();
        let mut best: Option<BchCertificate> = None;
        for b in strides {
            let c = self.bch_bound_stride(b).expect("stride is coprime");
            if best.is_none_or(|cur| c.run > cur.run) {
                best = Some(c);
            }
        }
        best.unwrap_or(BchCertificate { bound: 1, start: 0, stride: 1, run: 0 })
    }

    /// Subfield subcode over GF(p^target): the zeros close under ×p^target and the locator
    /// field is kept.
    pub fn subfield_subcode(&self, target: u32) -> Result<CyclicCode> {
        if target == 0 || !self.symbol.m.is_multiple_of(target) {
            return Err(Error::NotSubfield { sub: target, top: self.symbol.m });
        }
        let sub = SymbolField::new(self.symbol.p, target);
        let reps: Vec<i64> = self.zeros.iter().map(|&z| z as i64).collect();
        let zeros = complete_defining_set(self.n, sub.order(), &reps)?;
        CyclicCode::with_locator(self.n, sub, self.locator.clone(), zeros)
    }

    /// Generators of tr(C) over GF(p^target): tr(θ^e · row) for a basis {θ^e} of the
    /// symbol field over the target and every generator row. Rows are reduced to a basis.
    pub fn trace_code(&self, target: u32) -> Result<Matrix> {
        if target == 0 || !self.symbol.m.is_multiple_of(target) {
            return Err(Error::NotSubfield { sub: target, top: self.symbol.m });
        }
        let f = &self.locator;
        let s = self.symbol.m;
        let theta = f.subfield_elements(s)?.get(2).copied().unwrap_or(Gf::ONE);
        let mut rows = Vec::new();
        for row in self.generator_matrix() {
            for e in 0..(s / target) {
                let g = f.pow(theta, e as u64);
                let traced: Result<Vec<Gf>> =
                    row.iter().map(|&x| f.relative_trace(f.mul(g, x), s, target)).collect();
                rows.push(traced?);
            }
        }
        Ok(linalg::rref(&rows, f).0)
    }
}

/// Cyclic shift by `t` positions to the right.
pub fn shift<T: Copy>(word: &[T], t: usize) -> Vec<T> {
    let n = word.len();
    (0..n).map(|i| word[(i + n - t % n) % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{orthogonal, rank, same_row_space};

    fn binary(n: usize, reps: &[i64]) -> CyclicCode {
        CyclicCode::new(n, SymbolField::binary(), reps).unwrap()
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(complete_defining_set(45, 2, &[0, 3, 5, 9]).unwrap().len(), 15);
        assert_eq!(complete_defining_set(63, 2, &[3, 27]).unwrap().len(), 9);
        assert!(complete_defining_set(10, 3, &[]).unwrap().is_empty());
        assert!(matches!(complete_defining_set(15, 2, &[15]), Err(Error::ExponentOutOfRange { .. })));
        assert!(matches!(complete_defining_set(15, 2, &[-1]), Err(Error::ExponentOutOfRange { .. })));
        let z = complete_defining_set(45, 2, &[0, 3, 5, 9]).unwrap();
        let again: Vec<i64> = z.iter().map(|&x| x as i64).collect();
        assert_eq!(complete_defining_set(45, 2, &again).unwrap(), z);
    }

    #[test]
    fn dual_representatives() {
        let c = binary(45, &[0, 3, 5, 9]);
        assert_eq!(c.k(), 30);
        assert_eq!(c.dual().representatives(), vec![1, 3, 7, 15]);
        let c2 = binary(21, &[0, 1, 7]);
        assert_eq!(c2.k(), 12);
        assert_eq!(c2.dual().representatives(), vec![1, 3, 9]);
        let all: Vec<i64> = (0..21).collect();
        assert!(binary(21, &all).dual_defining_set().is_empty());
    }

    #[test]
    fn hamming_matrices() {
        let c = binary(7, &[1]);
        assert_eq!(c.zeros(), &[1, 2, 4]);
        let f = c.locator();
        let g = c.generator_matrix();
        let h = c.parity_check_matrix();
        assert_eq!((g.len(), h.len()), (4, 3));
        assert_eq!(rank(&g, f), 4);
        assert_eq!(rank(&h, f), 3);
        assert!(orthogonal(&g, &h, f));
        assert_eq!(c.bch_bound_stride(1).unwrap().bound, 3);
        let whole = binary(7, &[]);
        assert_eq!(rank(&whole.generator_matrix(), f), 7);
    }

    #[test]
    fn bch_designed_distance() {
        let f16 = SymbolField::new(2, 4);
        let c = CyclicCode::new(15, f16, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.bch_bound().bound, 6);
        assert!(matches!(c.bch_bound_stride(3), Err(Error::BadStride { .. })));
    }

    #[test]
    fn vandermonde_rows_span_code() {
        let q16 = SymbolField::new(2, 4);
        let c = CyclicCode::new(15, q16, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 0]).unwrap();
        let rows: Vec<Vec<Gf>> = c.vandermonde_rows().into_iter().map(|(_, r)| r).collect();
        assert_eq!(rows.len(), c.k());
        assert!(same_row_space(&rows, &c.generator_matrix(), c.locator()));
        for r in &rows {
            assert!(c.contains(r));
        }
    }

    #[test]
    fn subfield_subcode_of_rs_is_hamming() {
        let rs = CyclicCode::new(7, SymbolField::new(2, 3), &[1, 2]).unwrap();
        let sub = rs.subfield_subcode(1).unwrap();
        assert_eq!(sub.zeros(), &[1, 2, 4]);
        assert_eq!(sub.k(), 4);
        for row in sub.generator_matrix() {
            assert!(rs.contains(&row));
        }
        assert!(rs.subfield_subcode(2).is_err());
    }

    #[test]
    fn generator_shifts_are_codewords() {
        let c = binary(21, &[0, 1, 7]);
        for row in c.generator_matrix() {
            for t in 0..21 {
                assert!(c.contains(&shift(&row, t)));
            }
        }
    }
}
