//! Reed–Solomon-like LRC codes and their cyclic counterparts.
//!
//! Codewords are evaluations of f_a(x) = Σ a_{ij} p(x)^j x^i with p(x) = x^{r+1}, which is
//! constant on each coset of the order-(r+1) subgroup H of GF(q)*. The cyclic variant uses
//! the n-th roots of unity as evaluation points and is described by its zeros L ∪ D.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::bounds::singleton_like;
use crate::cyclic::{CyclicCode, SymbolField};
use crate::error::{Error, Result};
use crate::field::{FieldTable, Gf};
use crate::linalg::Matrix;
use crate::poly::DensePoly;

/// Checks (r+1) | n, r | k, 1 ≤ r ≤ k < n and returns (ν, μ).
fn lrc_shape(n: usize, k: usize, r: usize) -> Result<(usize, usize)> {
    if r == 0 || k == 0 || r > k || k >= n {
        return Err(Error::InvalidParameters(format!("need 1 ≤ r ≤ k < n, got n={n} k={k} r={r}")));
    }
    if !n.is_multiple_of(r + 1) {
        return Err(Error::InvalidParameters(format!("r + 1 = {} does not divide n = {n}", r + 1)));
    }
    if !k.is_multiple_of(r) {
        return Err(Error::InvalidParameters(format!("r = {r} does not divide k = {k}")));
    }
    let (nu, mu) = (n / (r + 1), k / r);
    if mu > nu {
        return Err(Error::InvalidParameters(format!("k/r = {mu} exceeds n/(r+1) = {nu}")));
    }
    Ok((nu, mu))
}

/// Exponents of the monomials x^{j(r+1)+i}, 0 ≤ i < r, 0 ≤ j < μ, in increasing order:
/// {0, …, μ(r+1) − 2} without the residues ≡ r mod (r+1).
pub fn message_exponents(k: usize, r: usize) -> Vec<usize> {
    let mu = k / r;
    (0..mu).flat_map(|j| (0..r).map(move |i| j * (r + 1) + i)).collect()
}

/// Σ a_t x^{e_t} over [`message_exponents`]; `a[j·r + i]` multiplies x^{j(r+1)+i}.
pub fn cyclic_lrc_polynomial_form(n: usize, k: usize, r: usize, a: &[Gf]) -> Result<DensePoly> {
    lrc_shape(n, k, r)?;
    if a.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: a.len() });
    }
    let exps = message_exponents(k, r);
    let mut coeffs = vec![Gf::ZERO; exps.last().map_or(0, |e| e + 1)];
    for (&e, &c) in exps.iter().zip(a) {
        coeffs[e] = c;
    }
    Ok(DensePoly::new(coeffs))
}

/// Evaluation-map LRC code over GF(q).
#[derive(Clone, Debug)]
pub struct RsLrcCode {
    field: Arc<FieldTable>,
    n: usize,
    k: usize,
    r: usize,
    points: Vec<Gf>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    cyclic: bool,
}

impl RsLrcCode {
    /// With n | q − 1 the points are 1, α, …, α^{n−1} for α of order n (the cyclic case);
    /// otherwise the first ν cosets g^i·H of H in GF(q)*, listed coset by coset.
    pub fn new(field: Arc<FieldTable>, n: usize, k: usize, r: usize) -> Result<Self> {
        let (nu, _) = lrc_shape(n, k, r)?;
        let q1 = field.order() - 1;
        if (n as u64) > q1 {
            return Err(Error::InvalidParameters(format!("n = {n} exceeds q − 1 = {q1}")));
        }
        if !q1.is_multiple_of(r as u64 + 1) {
            return Err(Error::NoRootOfUnity { n: r as u64 + 1, order: q1 });
        }
        let cyclic = q1.is_multiple_of(n as u64);
        let (points, blocks): (Vec<Gf>, Vec<Vec<usize>>) = if cyclic {
            let alpha = field.nth_root_of_unity(n as u64)?;
            let pts = (0..n).map(|t| field.pow(alpha, t as u64)).collect();
            let blocks = (0..nu).map(|i| (0..=r).map(|j| i + j * nu).collect()).collect();
            (pts, blocks)
        } else {
            let h = field.nth_root_of_unity(r as u64 + 1)?;
            let g = field.primitive();
            let pts = (0..nu)
                .flat_map(|i| (0..=r).map(move |j| (i, j)))
                .map(|(i, j)| field.mul(field.pow(g, i as u64), field.pow(h, j as u64)))
                .collect();
            let blocks = (0..nu).map(|i| (0..=r).map(|j| i * (r + 1) + j).collect()).collect();
            (pts, blocks)
        };
        let mut block_of = vec![0; n];
        for (b, members) in blocks.iter().enumerate() {
            for &t in members {
                block_of[t] = b;
            }
        }
        Ok(RsLrcCode { field, n, k, r, points, blocks, block_of, cyclic })
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn nu(&self) -> usize {
        self.n / (self.r + 1)
    }

    pub fn mu(&self) -> usize {
        self.k / self.r
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn points(&self) -> &[Gf] {
        &self.points
    }

    /// The partition A_1, …, A_ν as coordinate indices.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, t: usize) -> usize {
        self.block_of[t]
    }

    /// p(x) = x^{r+1}.
    pub fn good_polynomial(&self) -> DensePoly {
        DensePoly::monomial(Gf::ONE, self.r + 1)
    }

    /// f_a(x) with `a[j·r + i]` the coefficient of p(x)^j x^i.
    pub fn message_polynomial(&self, a: &[Gf]) -> Result<DensePoly> {
        cyclic_lrc_polynomial_form(self.n, self.k, self.r, a)
    }

    pub fn encode(&self, a: &[Gf]) -> Result<Vec<Gf>> {
        let f = self.message_polynomial(a)?;
        Ok(self.points.iter().map(|&x| f.evaluate(x, &self.field)).collect())
    }

    /// Encodings of the unit messages.
    pub fn generator_matrix(&self) -> Matrix {
        (0..self.k)
            .map(|t| {
                let mut e = vec![Gf::ZERO; self.k];
                e[t] = Gf::ONE;
                self.encode(&e).expect("unit message has the right length")
            })
            .collect()
    }

    /// Recovers the erased symbol at `pos` by interpolating the other r symbols of its block
    /// with a polynomial of degree ≤ r − 1.
    pub fn repair(&self, word: &[Option<Gf>], pos: usize) -> Result<Gf> {
        if word.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: word.len() });
        }
        let block = &self.blocks[self.block_of[pos]];
        let helpers: Vec<usize> = block.iter().copied().filter(|&t| t != pos).collect();
        let mut xs = Vec::with_capacity(self.r);
        let mut ys = Vec::with_capacity(self.r);
        for &t in &helpers {
            match word[t] {
                Some(y) => {
                    xs.push(self.points[t]);
                    ys.push(y);
                }
                None => return Err(Error::Repair(format!("positions {pos} and {t} are both erased in one block"))),
            }
        }
        lagrange_at(&xs, &ys, self.points[pos], &self.field)
    }

    /// The cyclic code with the same codewords: zeros are the exponents −e for e not among
    /// the message exponents.
    pub fn as_cyclic(&self) -> Result<CyclicCode> {
        if !self.cyclic {
            return Err(Error::InvalidParameters("evaluation points are not the n-th roots of unity".into()));
        }
        let exps: BTreeSet<usize> = message_exponents(self.k, self.r).into_iter().collect();
        let zeros: Vec<usize> = (0..self.n).filter(|j| !exps.contains(j)).map(|j| (self.n - j) % self.n).collect();
        let spec = self.field.spec();
        CyclicCode::with_locator(self.n, SymbolField::new(spec.p, spec.m), self.field.clone(), zeros)
    }
}

/// Value at `x` of the unique polynomial of degree < len(xs) through the points.
pub fn lagrange_at(xs: &[Gf], ys: &[Gf], x: Gf, field: &FieldTable) -> Result<Gf> {
    let mut acc = Gf::ZERO;
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let mut num = Gf::ONE;
        let mut den = Gf::ONE;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                num = field.mul(num, field.sub(x, xj));
                den = field.mul(den, field.sub(xi, xj));
            }
        }
        acc = field.add(acc, field.mul(yi, field.div(num, den)?));
    }
    Ok(acc)
}

/// Recovers `word[pos]` from a dual codeword `w` with `w[pos] ≠ 0`:
/// c_pos = −w_pos^{−1} Σ_{t ≠ pos} w_t c_t.
pub fn repair_with_dual_word(word: &[Option<Gf>], pos: usize, w: &[Gf], field: &FieldTable) -> Result<Gf> {
    if w[pos].is_zero() {
        return Err(Error::Repair(format!("dual word does not cover position {pos}")));
    }
    let mut acc = Gf::ZERO;
    for (t, &wt) in w.iter().enumerate() {
        if t == pos || wt.is_zero() {
            continue;
        }
        let c = word[t].ok_or_else(|| Error::Repair(format!("helper position {t} is erased")))?;
        acc = field.add(acc, field.mul(wt, c));
    }
    Ok(field.neg(field.div(acc, w[pos])?))
}

/// Parameters of the zero-set construction L ∪ D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Params {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub q: SymbolField,
    /// Residue class of L modulo r + 1.
    pub l: usize,
    /// Stride of D, coprime to n.
    pub b: usize,
    /// First exponent of D; must lie in L.
    pub j: usize,
}

impl Theorem1Params {
    /// Defaults l = 1, b = 1, j = l.
    pub fn new(n: usize, k: usize, r: usize, q: SymbolField) -> Self {
        Theorem1Params { n, k, r, q, l: 1, b: 1, j: 1 }
    }

    pub fn with_l(mut self, l: usize) -> Self {
        self.l = l;
        self.j = l;
        self
    }

    pub fn with_b(mut self, b: usize) -> Self {
        self.b = b;
        self
    }

    pub fn with_j(mut self, j: usize) -> Self {
        self.j = j;
        self
    }
}

/// The zero sets of a constructed code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Zeros {
    pub l_set: Vec<usize>,
    pub d_set: Vec<usize>,
    pub overlap: usize,
}

/// L = {i : i ≡ l mod (r+1)} and D = {j + s·b : 0 ≤ s ≤ n − μ(r+1)}, exponents mod n.
pub fn theorem1_zeros(p: &Theorem1Params) -> Result<Theorem1Zeros> {
    let (_, mu) = lrc_shape(p.n, p.k, p.r)?;
    if p.l > p.r {
        return Err(Error::InvalidParameters(format!("l = {} exceeds r = {}", p.l, p.r)));
    }
    if p.b == 0 || gcd(p.b as u64, p.n as u64) != 1 {
        return Err(Error::BadStride { b: p.b, n: p.n });
    }
    if p.j >= p.n || p.j % (p.r + 1) != p.l {
        return Err(Error::InvalidParameters(format!("start exponent {} is not in L", p.j)));
    }
    let l_set: Vec<usize> = (0..p.n).filter(|i| i % (p.r + 1) == p.l).collect();
    let d: BTreeSet<usize> = (0..=p.n - mu * (p.r + 1)).map(|s| (p.j + s * p.b) % p.n).collect();
    let overlap = l_set.iter().filter(|i| d.contains(i)).count();
    Ok(Theorem1Zeros { l_set, d_set: d.into_iter().collect(), overlap })
}

/// The cyclic code with zeros L ∪ D over GF(q), n | q − 1.
pub fn theorem1_code(p: &Theorem1Params) -> Result<CyclicCode> {
    let z = theorem1_zeros(p)?;
    let q = p.q.order();
    if !(q - 1).is_multiple_of(p.n as u64) {
        return Err(Error::NoRootOfUnity { n: p.n as u64, order: q - 1 });
    }
    let union: BTreeSet<usize> = z.l_set.iter().chain(&z.d_set).copied().collect();
    if union.len() != p.n - p.k {
        return Err(Error::DefiningSetSize { expected: p.n - p.k, achieved: union.len(), overlap: z.overlap });
    }
    let locator = FieldTable::cached(p.q.p, p.q.m)?;
    CyclicCode::with_locator(p.n, p.q, locator, union.into_iter().collect())
}

/// Zeros D ∪ L̄ of the evaluation code: D = {1, …, n − μ(r+1) + 1} and
/// L̄ = {n − (μ − l)(r+1) + 1 : 1 ≤ l ≤ μ − 1}.
pub fn lemma1_defining_set(n: usize, k: usize, r: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let (_, mu) = lrc_shape(n, k, r)?;
    let d: Vec<usize> = (1..=n - mu * (r + 1) + 1).collect();
    let lbar: Vec<usize> = (1..mu).map(|l| n - (mu - l) * (r + 1) + 1).collect();
    Ok((d, lbar))
}

/// n − k − ⌈k/r⌉ + 2.
pub fn optimal_distance(n: usize, k: usize, r: usize) -> Result<usize> {
    singleton_like(n, k, r)
}
