//! Dense univariate polynomials over a [`FieldTable`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTable, Gf};

/// Coefficients lowest degree first; the zero polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DensePoly {
    pub coeffs: Vec<Gf>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<Gf>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly { coeffs: vec![Gf::ONE] }
    }

    pub fn monomial(c: Gf, degree: usize) -> Self {
        let mut coeffs = vec![Gf::ZERO; degree + 1];
        coeffs[degree] = c;
        DensePoly::new(coeffs)
    }

    /// x^n − 1
    pub fn x_n_minus_one(field: &FieldTable, n: usize) -> Self {
        let mut coeffs = vec![Gf::ZERO; n + 1];
        coeffs[0] = field.neg(Gf::ONE);
        coeffs[n] = Gf::ONE;
        DensePoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    pub fn leading(&self) -> Option<Gf> {
        self.coeffs.last().copied()
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn add(&self, other: &Self, field: &FieldTable) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        DensePoly::new((0..len).map(|i| field.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self, field: &FieldTable) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        DensePoly::new((0..len).map(|i| field.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Gf, field: &FieldTable) -> Self {
        DensePoly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self, field: &FieldTable) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![Gf::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        DensePoly::new(out)
    }

    /// Product reduced modulo x^n − 1.
    pub fn mul_mod_xn1(&self, other: &Self, n: usize, field: &FieldTable) -> Self {
        let prod = self.mul(other, field);
        let mut out = vec![Gf::ZERO; n];
        for (i, &c) in prod.coeffs.iter().enumerate() {
            out[i % n] = field.add(out[i % n], c);
        }
        DensePoly::new(out)
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self, field: &FieldTable) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::ZeroElement("polynomial quotient"))?;
        let inv = field.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((DensePoly::zero(), self.clone()));
        }
        let mut quot = vec![Gf::ZERO; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = field.mul(rem[shift + dd], inv);
            if c.is_zero() {
                continue;
            }
            quot[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = field.sub(rem[shift + i], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((DensePoly::new(quot), DensePoly::new(rem)))
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: Gf, field: &FieldTable) -> Gf {
        self.coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// x^deg · f(1/x).
    pub fn reciprocal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        DensePoly::new(c)
    }

    /// ∏ (x − root).
    pub fn from_roots(roots: impl IntoIterator<Item = Gf>, field: &FieldTable) -> Self {
        roots.into_iter().fold(DensePoly::one(), |acc, r| {
            acc.mul(&DensePoly::new(vec![field.neg(r), Gf::ONE]), field)
        })
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Gf::ONE)
    }

    /// Whether every coefficient lies in GF(p^d).
    pub fn over_subfield(&self, field: &FieldTable, d: u32) -> bool {
        self.coeffs.iter().all(|&c| field.in_subfield(c, d))
    }
}

/// Minimal polynomial of β over GF(p^base_degree), computed inside `field`.
pub fn minimal_polynomial(field: &FieldTable, beta: Gf, base_degree: u32) -> Result<DensePoly> {
    if beta.is_zero() {
        return Err(Error::ZeroElement("minimal polynomial in this convention"));
    }
    if base_degree == 0 || !field.degree().is_multiple_of(base_degree) {
        return Err(Error::NotSubfield { sub: base_degree, top: field.degree() });
    }
    let q = (field.characteristic() as u64).pow(base_degree);
    let mut conjugates = vec![beta];
    let mut y = field.pow(beta, q);
    while y != beta {
        conjugates.push(y);
        y = field.pow(y, q);
    }
    Ok(DensePoly::from_roots(conjugates, field))
}

/// ∏_{i ∈ zeros} (x − α^i) for an exponent set that is closed under ×q mod n.
pub fn generator_from_zeros(field: &FieldTable, alpha: Gf, zeros: &[usize]) -> DensePoly {
    DensePoly::from_roots(zeros.iter().map(|&i| field.pow(alpha, i as u64)), field)
}
