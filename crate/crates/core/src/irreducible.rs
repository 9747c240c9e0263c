//! Irreducible cyclic codes in trace form
//! V = {(T(γ), T(γβ), …, T(γβ^{s−1})) : γ ∈ GF(q^m)} and their weight structure.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, multiplicative_order};
use crate::cyclic::SymbolField;
use crate::error::{Error, Result};
use crate::field::{Alphabet, FieldTable, Gf};
use crate::oracle::{basis_of, naive_codewords, symbols_of, SymbolCode};

/// Largest q^m for which the full codeword set is materialized.
pub const ENUMERATION_CEILING: u64 = 1 << 22;

/// Trace code of length s generated by β, with γ ranging over the degree-`top` subfield of
/// `field` and the trace taken down to the degree-`sub` subfield GF(q).
#[derive(Clone, Debug)]
pub struct IrreducibleSpec {
    field: Arc<FieldTable>,
    sub: u32,
    top: u32,
    s: usize,
    beta: Gf,
    t: u64,
}

impl IrreducibleSpec {
    /// β a primitive s-th root of unity, m = ord_s(q).
    pub fn new(q: SymbolField, s: usize) -> Result<Self> {
        Self::degenerate(q, s, s)
    }

    /// β of order t | s inside GF(q^m), m = ord_s(q).
    pub fn degenerate(q: SymbolField, s: usize, t: usize) -> Result<Self> {
        if t == 0 || !s.is_multiple_of(t) {
            return Err(Error::InvalidParameters(format!("order {t} does not divide length {s}")));
        }
        let m = multiplicative_order(q.order(), s as u64)
            .ok_or(Error::NotCoprime { n: s as u64, q: q.order() })? as u32;
        let field = FieldTable::cached(q.p, q.m * m)?;
        let beta = field.nth_root_of_unity(t as u64)?;
        Self::from_root(field, q.m, q.m * m, s, beta)
    }

    /// Explicit β in an existing field; `sub | top` and β must lie in the degree-`top` subfield.
    pub fn from_root(field: Arc<FieldTable>, sub: u32, top: u32, s: usize, beta: Gf) -> Result<Self> {
        if sub == 0 || !top.is_multiple_of(sub) || !field.degree().is_multiple_of(top) {
            return Err(Error::NotSubfield { sub, top });
        }
        if !field.in_subfield(beta, top) {
            return Err(Error::OutsideSubfield);
        }
        let t = field.element_order(beta)?;
        if s == 0 || !(s as u64).is_multiple_of(t) {
            return Err(Error::InvalidParameters(format!("β has order {t}, which does not divide s = {s}")));
        }
        Ok(IrreducibleSpec { field, sub, top, s, beta, t })
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        (self.field.characteristic() as u64).pow(self.sub)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Degree of the γ-field over GF(q).
    pub fn m(&self) -> u32 {
        self.top / self.sub
    }

    pub fn beta(&self) -> Gf {
        self.beta
    }

    /// Multiplicative order of β.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// N = (q^m − 1)/t.
    pub fn index(&self) -> u64 {
        (self.q().pow(self.m()) - 1) / self.t
    }

    /// Degree over GF(q) of the field generated by β: ord_t(q).
    pub fn effective_m(&self) -> u32 {
        multiplicative_order(self.q(), self.t).expect("t divides q^m − 1") as u32
    }

    pub fn alphabet(&self) -> Result<Arc<Alphabet>> {
        Ok(Arc::new(Alphabet::new(&self.field, self.sub)?))
    }

    /// (T(γβ^i))_{i<s}.
    pub fn word(&self, gamma: Gf) -> Result<Vec<Gf>> {
        let f = &self.field;
        let mut x = gamma;
        let mut out = Vec::with_capacity(self.s);
        for _ in 0..self.s {
            out.push(f.relative_trace(x, self.top, self.sub)?);
            x = f.mul(x, self.beta);
        }
        Ok(out)
    }

    /// A GF(q)-basis of V as symbol rows.
    pub fn code(&self) -> Result<SymbolCode> {
        let zeta = self.field.subfield_elements(self.top)?.get(2).copied().unwrap_or(Gf::ONE);
        let spanning: Vec<Vec<Gf>> =
            (0..self.m()).map(|i| self.word(self.field.pow(zeta, i as u64))).collect::<Result<_>>()?;
        let basis = basis_of(&spanning, &self.field);
        let alphabet = self.alphabet()?;
        let rows = symbols_of(&basis, &alphabet)?;
        SymbolCode::new(self.s, alphabet, rows)
    }
}

/// Every distinct codeword of V, as symbol indices.
pub fn irreducible_code(spec: &IrreducibleSpec) -> Result<Vec<Vec<u8>>> {
    let size = checked_pow(spec.q(), spec.m()).unwrap_or(u64::MAX);
    if size > ENUMERATION_CEILING {
        return Err(Error::EnumerationCeiling { words: size as u128, ceiling: ENUMERATION_CEILING as u128 });
    }
    Ok(naive_codewords(&spec.code()?))
}

/// Weight structure expected from the gcd condition on gcd((q^m − 1)/(q − 1), N), evaluated
/// for the field generated by β and scaled by the repetition factor s/t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightPrediction {
    ConstantWeight { weight: u64, words: u64, repetition: u64 },
    TwoWeight { low: u64, high: u64, words_each: u64, repetition: u64 },
    NoPrediction { gcd: u64 },
}

impl WeightPrediction {
    /// Nonzero (weight, count) pairs.
    pub fn weights(&self) -> Vec<(u64, u64)> {
        match *self {
            WeightPrediction::ConstantWeight { weight, words, .. } => vec![(weight, words)],
            WeightPrediction::TwoWeight { low, high, words_each, .. } => vec![(low, words_each), (high, words_each)],
            WeightPrediction::NoPrediction { .. } => Vec::new(),
        }
    }

    /// Whether `hist` has exactly the predicted nonzero weights. Vacuously true without a
    /// prediction.
    pub fn matches(&self, hist: &[u64]) -> bool {
        if let WeightPrediction::NoPrediction { .. } = self {
            return true;
        }
        let mut expected = vec![0u64; hist.len()];
        expected[0] = 1;
        for (w, c) in self.weights() {
            match expected.get_mut(w as usize) {
                Some(slot) => *slot += c,
                None => return false,
            }
        }
        expected == hist
    }
}

pub fn predicted_weights(spec: &IrreducibleSpec) -> WeightPrediction {
    let q = spec.q();
    let m = spec.effective_m();
    let qm = q.pow(m);
    let big_n = (qm - 1) / spec.t;
    let rep = spec.s as u64 / spec.t;
    let g = gcd((qm - 1) / (q - 1), big_n);
    match g {
        1 => WeightPrediction::ConstantWeight { weight: rep * (q - 1) * q.pow(m - 1) / big_n, words: qm - 1, repetition: rep },
        2 if m.is_multiple_of(2) => {
            let h = q.pow(m / 2);
            let den = big_n * q;
            WeightPrediction::TwoWeight {
                low: rep * (q - 1) * (qm - h) / den,
                high: rep * (q - 1) * (qm + h) / den,
                words_each: (qm - 1) / 2,
                repetition: rep,
            }
        }
        _ => WeightPrediction::NoPrediction { gcd: g },
    }
}

/// s·(1 − (q^{m−1} − 1)/(q^m − 1)), the average nonzero weight of V.
pub fn averaging_distance_bound(q: u64, s: u64, m: u32) -> BigRational {
    let qm = BigInt::from(q).pow(m);
    let qm1 = BigInt::from(q).pow(m.saturating_sub(1));
    let one = BigInt::one();
    let frac = BigRational::new(qm1 - &one, qm - &one);
    BigRational::from_integer(BigInt::from(s)) * (BigRational::one() - frac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{naive_weight_distribution, Oracle};
    use crate::cyclic::shift;
    use num_traits::ToPrimitive;
    use std::collections::BTreeSet;

    fn hist(words: &[Vec<u8>], n: usize) -> Vec<u64> {
        let mut h = vec![0u64; n + 1];
        for w in words {
            h[w.iter().filter(|&&x| x != 0).count()] += 1;
        }
        h
    }

    #[test]
    fn binary_simplex() {
        let spec = IrreducibleSpec::new(SymbolField::binary(), 7).unwrap();
        assert_eq!((spec.m(), spec.t(), spec.index()), (3, 7, 1));
        let words = irreducible_code(&spec).unwrap();
        assert_eq!(words.len(), 8);
        assert_eq!(hist(&words, 7), vec![1, 0, 0, 0, 7, 0, 0, 0]);
        assert!(spec.word(Gf::ZERO).unwrap().iter().all(|x| x.is_zero()));
        let p = predicted_weights(&spec);
        assert_eq!(p, WeightPrediction::ConstantWeight { weight: 4, words: 7, repetition: 1 });
        assert!(p.matches(&hist(&words, 7)));
    }

    #[test]
    fn degenerate_root_gives_repetition() {
        let spec = IrreducibleSpec::degenerate(SymbolField::binary(), 21, 7).unwrap();
        assert_eq!(spec.m(), 6);
        let words = irreducible_code(&spec).unwrap();
        assert_eq!(words.len(), 8);
        let short = irreducible_code(&IrreducibleSpec::new(SymbolField::binary(), 7).unwrap()).unwrap();
        let short: BTreeSet<Vec<u8>> = short.into_iter().collect();
        for w in &words {
            assert_eq!(&w[..7], &w[7..14]);
            assert_eq!(&w[..7], &w[14..]);
        }
        assert_eq!(hist(&words, 21)[12], 7);
        assert!(predicted_weights(&spec).matches(&hist(&words, 21)));
        // Same root, different γ-field sizes.
        let tops: BTreeSet<Vec<u8>> = words.iter().map(|w| w[..7].to_vec()).collect();
        assert_eq!(tops.len(), short.len());
    }

    #[test]
    fn ternary_two_weight() {
        let spec = IrreducibleSpec::new(SymbolField::new(3, 1), 4).unwrap();
        assert_eq!((spec.m(), spec.index()), (2, 2));
        let words = irreducible_code(&spec).unwrap();
        assert_eq!(words.len(), 9);
        let h = hist(&words, 4);
        assert_eq!(h, vec![1, 0, 4, 0, 4]);
        let p = predicted_weights(&spec);
        assert_eq!(p, WeightPrediction::TwoWeight { low: 2, high: 4, words_each: 4, repetition: 1 });
        assert!(p.matches(&h));
    }

    #[test]
    fn length_forty_ternary() {
        let spec = IrreducibleSpec::new(SymbolField::new(3, 1), 40).unwrap();
        let h = Oracle::default().weight_distribution(&spec.code().unwrap()).unwrap();
        let p = predicted_weights(&spec);
        assert_eq!(p.weights(), vec![(24, 40), (30, 40)]);
        assert!(p.matches(&h));
    }

    #[test]
    fn gcd_three_has_no_prediction() {
        // q = 2, m = 6, t = 21: N = 3 and gcd(63, 3) = 3.
        let spec = IrreducibleSpec::new(SymbolField::binary(), 21).unwrap();
        assert_eq!(spec.index(), 3);
        assert_eq!(predicted_weights(&spec), WeightPrediction::NoPrediction { gcd: 3 });
        assert!(predicted_weights(&spec).matches(&[1, 2, 3]));
    }

    #[test]
    fn trace_collapse_to_subfield() {
        let field = FieldTable::cached(2, 12).unwrap();
        let beta = field.nth_root_of_unity(7).unwrap();
        let sets: Vec<BTreeSet<Vec<u8>>> = [3u32, 6, 12]
            .iter()
            .map(|&top| {
                let spec = IrreducibleSpec::from_root(field.clone(), 1, top, 7, beta).unwrap();
                let full: BTreeSet<Vec<u8>> = field
                    .subfield_elements(top)
                    .unwrap()
                    .into_iter()
                    .map(|g| spec.word(g).unwrap().iter().map(|x| x.0 as u8).collect())
                    .collect();
                let basis: BTreeSet<Vec<u8>> = irreducible_code(&spec).unwrap().into_iter().collect();
                assert_eq!(full, basis);
                full
            })
            .collect();
        assert_eq!(sets[0], sets[1]);
        assert_eq!(sets[0], sets[2]);
    }

    #[test]
    fn codes_are_cyclic() {
        for (q, s) in [(SymbolField::binary(), 15usize), (SymbolField::new(3, 1), 8), (SymbolField::new(2, 2), 5)] {
            let spec = IrreducibleSpec::new(q, s).unwrap();
            let words: BTreeSet<Vec<u8>> = irreducible_code(&spec).unwrap().into_iter().collect();
            assert_eq!(words.len() as u64, spec.q().pow(spec.m()));
            for w in &words {
                assert!(words.contains(&shift(w, 1)));
            }
        }
    }

    #[test]
    fn averaging_bound_values() {
        let b = averaging_distance_bound(2, 7, 3);
        assert_eq!(b, BigRational::from_integer(4.into()));
        let b = averaging_distance_bound(3, 4, 2);
        assert_eq!(b, BigRational::from_integer(3.into()));
        assert_eq!(averaging_distance_bound(5, 4, 1), BigRational::from_integer(4.into()));
        for (q, s) in [(2u64, 7usize), (3, 4), (2, 15), (3, 8), (2, 9), (3, 13)] {
            let spec = IrreducibleSpec::new(SymbolField::new(q as u32, 1), s).unwrap();
            let h = naive_weight_distribution(&spec.code().unwrap());
            let d = (1..h.len()).find(|&w| h[w] > 0).unwrap();
            let bound = averaging_distance_bound(q, s as u64, spec.m()).floor().to_integer().to_usize().unwrap();
            assert!(d <= bound, "q={q} s={s}: d={d} > {bound}");
        }
    }
}
