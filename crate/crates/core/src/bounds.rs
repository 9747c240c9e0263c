//! Upper bounds on the dimension and size of codes with locality.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// d ≤ n − k − ⌈k/r⌉ + 2.
pub fn singleton_like(n: usize, k: usize, r: usize) -> Result<usize> {
    if r == 0 || k == 0 || r > k || k > n {
        return Err(Error::InvalidParameters(format!("need 1 ≤ r ≤ k ≤ n, got n={n} k={k} r={r}")));
    }
    Ok(n + 2 - k - k.div_ceil(r))
}

/// Largest k with d ≤ n − k − ⌈k/r⌉ + 2.
pub fn singleton_like_dimension(n: usize, d: usize, r: usize) -> Result<usize> {
    if r == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameters(format!("need r ≥ 1 and 1 ≤ d ≤ n, got n={n} d={d} r={r}")));
    }
    Ok((1..=n).rev().find(|&k| k + k.div_ceil(r) + d <= n + 2).unwrap_or(0))
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Largest k with q^k ≤ x.
fn floor_log(q: u64, x: &BigUint) -> usize {
    let mut k = 0;
    let mut pow = BigUint::from(q);
    while &pow <= x {
        k += 1;
        pow *= q;
    }
    k
}

/// Individual closed-form upper bounds on k_q(n, d).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBounds {
    pub singleton: usize,
    pub hamming: usize,
    pub griesmer: usize,
    pub plotkin: Option<usize>,
    /// k_2(n−1, d−1) for binary codes with even d.
    pub puncture: Option<usize>,
    pub value: usize,
}

pub fn dimension_bounds(n: usize, d: usize, q: u64) -> DimensionBounds {
    assert!(d >= 1 && d <= n, "need 1 ≤ d ≤ n");
    let singleton = n - d + 1;
    let t = (d - 1) / 2;
    let ball: BigUint = (0..=t).map(|i| binom(n, i) * BigUint::from(q - 1).pow(i as u32)).sum();
    let hamming = floor_log(q, &(BigUint::from(q).pow(n as u32) / ball));
    let mut griesmer = 0;
    let mut len = 0u64;
    loop {
        let qi = BigUint::from(q).pow(griesmer as u32);
        let term = (BigUint::from(d) + &qi - BigUint::one()) / qi;
        len += term.to_u64().unwrap_or(u64::MAX);
        if len > n as u64 {
            break;
        }
        griesmer += 1;
    }
    // Plotkin: qd > (q − 1)n ⇒ M ≤ ⌊qd / (qd − (q−1)n)⌋
    let (qd, qn) = (q as u128 * d as u128, (q as u128 - 1) * n as u128);
    let plotkin = (qd > qn).then(|| floor_log(q, &BigUint::from(qd / (qd - qn))));
    let puncture = (q == 2 && d.is_multiple_of(2) && d >= 2 && n >= 2).then(|| k_upper(n - 1, d - 1, q));
    let value = [Some(singleton), Some(hamming), Some(griesmer), plotkin, puncture].into_iter().flatten().min().unwrap();
    DimensionBounds { singleton, hamming, griesmer, plotkin, puncture, value }
}

/// Upper bound on the largest dimension of a q-ary linear [n, k, d] code.
pub fn k_upper(n: usize, d: usize, q: u64) -> usize {
    if d <= 1 {
        return n;
    }
    if d > n {
        return 0;
    }
    dimension_bounds(n, d, q).value
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShorteningTerm {
    pub t: usize,
    pub value: usize,
}

/// Named bound with its inputs and witnesses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub r: usize,
    pub q: u64,
    /// Upper bound on the dimension k.
    pub k_bound: usize,
    /// Upper bound on the code size as an exact rational, when the bound is on size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log2_size: Option<f64>,
    /// Minimizing t for the shortening bound (smallest), and all minimizers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub minimizers: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub terms: Vec<ShorteningTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp: Option<LpSummary>,
}

impl BoundReport {
    fn new(name: &str, n: usize, d: usize, r: usize, q: u64, k_bound: usize) -> Self {
        BoundReport {
            name: name.into(),
            n,
            d,
            r,
            q,
            k_bound,
            size: None,
            log2_size: None,
            t: None,
            minimizers: Vec::new(),
            terms: Vec::new(),
            lp: None,
        }
    }
}

pub fn singleton_report(n: usize, d: usize, r: usize, q: u64) -> Result<BoundReport> {
    Ok(BoundReport::new("singleton-like", n, d, r, q, singleton_like_dimension(n, d, r)?))
}

/// min over 1 ≤ t ≤ ⌊n/(r+1)⌋ with n − t(r+1) ≥ d of t·r + k_q(n − t(r+1), d).
pub fn shortening_bound(n: usize, d: usize, r: usize, q: u64) -> Result<BoundReport> {
    if r == 0 || d == 0 {
        return Err(Error::InvalidParameters("need r ≥ 1 and d ≥ 1".into()));
    }
    let terms: Vec<ShorteningTerm> = (1..=n / (r + 1))
        .filter(|&t| n - t * (r + 1) >= d)
        .map(|t| ShorteningTerm { t, value: t * r + k_upper(n - t * (r + 1), d, q) })
        .collect();
    let best = terms
        .iter()
        .map(|t| t.value)
        .min()
        .ok_or_else(|| Error::InvalidParameters(format!("no t with n − t(r+1) ≥ d for n={n} d={d} r={r}")))?;
    let minimizers: Vec<usize> = terms.iter().filter(|t| t.value == best).map(|t| t.t).collect();
    let mut rep = BoundReport::new("shortening", n, d, r, q, best);
    rep.t = minimizers.first().copied();
    rep.minimizers = minimizers;
    rep.terms = terms;
    Ok(rep)
}

/// K_k(i) = Σ_j (−1)^j (q−1)^{k−j} C(i, j) C(n−i, k−j).
pub fn krawtchouk(q: u64, n: usize, k: usize, i: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k.min(i) {
        if k - j > n - i {
            continue;
        }
        let term = BigInt::from(binom(i, j) * binom(n - i, k - j)) * BigInt::from(q - 1).pow((k - j) as u32);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Eq,
    Ge,
    Le,
}

/// max c·x subject to A x (sense) b, x ≥ 0, over exact rationals.
#[derive(Clone, Debug)]
pub struct RationalLp {
    pub objective: Vec<BigRational>,
    pub rows: Vec<Vec<BigRational>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub objective: BigRational,
    pub x: Vec<BigRational>,
    /// Dual multipliers of the constraints, certifying optimality.
    pub y: Vec<BigRational>,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSummary {
    pub optimum: String,
    pub support: Vec<(usize, String)>,
    pub pivots: usize,
    pub dual_verified: bool,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

struct Tableau {
    /// m rows of [A | b]
    a: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    ncols: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.a[row][col].recip();
        for x in self.a[row].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.a[row].clone();
        for (i, r) in self.a.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let c = r[col].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Maximizes cost·x over the current basis with Bland's rule; `allowed` masks columns.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> Result<()> {
        let rhs = self.ncols;
        loop {
            // reduced cost of column j: cost_j − Σ_i cost_{basis_i} a_ij
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.a[i][j].is_zero() {
                        rc -= &cost[b] * &self.a[i][j];
                    }
                }
                rc.is_positive()
            });
            let Some(col) = entering else { return Ok(()) };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col].is_positive() {
                    let ratio = &self.a[i][rhs] / &self.a[i][col];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = best else { return Err(Error::Unbounded) };
            self.pivot(row, col);
        }
    }
}

impl RationalLp {
    /// Two-phase simplex with Bland's rule on a dense tableau.
    pub fn solve(&self) -> Result<LpSolution> {
        let m = self.rows.len();
        let nv = self.objective.len();
        let slack_cols: Vec<Option<usize>> = {
            let mut next = nv;
            self.senses
                .iter()
                .map(|s| match s {
                    Sense::Eq => None,
                    _ => {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let ns = slack_cols.iter().flatten().count();
        let art0 = nv + ns;
        let ncols = art0 + m;
        let mut a = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = vec![BigRational::zero(); ncols + 1];
            for (j, v) in self.rows[i].iter().enumerate() {
                row[j] = v.clone();
            }
            if let Some(s) = slack_cols[i] {
                row[s] = if self.senses[i] == Sense::Ge { rat(-1) } else { rat(1) };
            }
            row[ncols] = self.rhs[i].clone();
            if row[ncols].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[art0 + i] = rat(1);
            a.push(row);
        }
        let mut tab = Tableau { a, basis: (art0..art0 + m).collect(), ncols, pivots: 0 };
        // phase 1: maximize −Σ artificials
        let mut cost1 = vec![BigRational::zero(); ncols];
        for c in cost1.iter_mut().skip(art0) {
            *c = rat(-1);
        }
        let all = vec![true; ncols];
        tab.optimize(&cost1, &all)?;
        let infeas: BigRational =
            tab.basis.iter().enumerate().filter(|(_, &b)| b >= art0).map(|(i, _)| tab.a[i][ncols].clone()).sum();
        if infeas.is_positive() {
            return Err(Error::Infeasible);
        }
        // drive remaining artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tab.a.len() {
            if tab.basis[i] >= art0 {
                if let Some(col) = (0..art0).find(|&j| !tab.a[i][j].is_zero()) {
                    tab.pivot(i, col);
                } else {
                    tab.a.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
        let mut cost2 = vec![BigRational::zero(); ncols];
        for (c, o) in cost2.iter_mut().zip(&self.objective) {
            *c = o.clone();
        }
        let allowed: Vec<bool> = (0..ncols).map(|j| j < art0).collect();
        tab.optimize(&cost2, &allowed)?;
        let mut x = vec![BigRational::zero(); nv];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < nv {
                x[b] = tab.a[i][ncols].clone();
            }
        }
        let objective: BigRational = x.iter().zip(&self.objective).map(|(a, b)| a * b).sum();
        let y = self.dual_multipliers(&tab.basis, &slack_cols, nv)?;
        Ok(LpSolution { objective, x, y, pivots: tab.pivots })
    }

    /// Solves Bᵀ y = c_B for the final basis, in terms of the original constraints.
    fn dual_multipliers(&self, basis: &[usize], slack_cols: &[Option<usize>], nv: usize) -> Result<Vec<BigRational>> {
        let m = self.rows.len();
        // column j of the standard-form matrix, in original row orientation
        let column = |j: usize| -> Vec<BigRational> {
            if j < nv {
                return self.rows.iter().map(|r| r[j].clone()).collect();
            }
            (0..m)
                .map(|i| {
                    if slack_cols[i] == Some(j) {
                        if self.senses[i] == Sense::Ge {
                            rat(-1)
                        } else {
                            rat(1)
                        }
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        };
        let cost = |j: usize| if j < nv { self.objective[j].clone() } else { BigRational::zero() };
        // system: for each basic column j, Σ_i y_i A_ij = c_j
        let mut sys: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|&j| {
                let mut row = column(j);
                row.push(cost(j));
                row
            })
            .collect();
        let y = solve_least(&mut sys, m).ok_or(Error::Infeasible)?;
        Ok(y)
    }

    /// Checks primal feasibility of `x`, dual feasibility of `y`, and equal objectives.
    pub fn verify(&self, sol: &LpSolution) -> bool {
        let nv = self.objective.len();
        if sol.x.iter().any(|v| v.is_negative()) {
            return false;
        }
        for (i, row) in self.rows.iter().enumerate() {
            let lhs: BigRational = row.iter().zip(&sol.x).map(|(a, b)| a * b).sum();
            let ok = match self.senses[i] {
                Sense::Eq => lhs == self.rhs[i],
                Sense::Ge => lhs >= self.rhs[i],
                Sense::Le => lhs <= self.rhs[i],
            };
            if !ok {
                return false;
            }
            // sign of dual multipliers for a maximization problem
            let ok = match self.senses[i] {
                Sense::Eq => true,
                Sense::Ge => !sol.y[i].is_positive(),
                Sense::Le => !sol.y[i].is_negative(),
            };
            if !ok {
                return false;
            }
        }
        for j in 0..nv {
            let col: BigRational = self.rows.iter().zip(&sol.y).map(|(r, y)| &r[j] * y).sum();
            if col < self.objective[j] {
                return false;
            }
        }
        let dual_obj: BigRational = self.rhs.iter().zip(&sol.y).map(|(b, y)| b * y).sum();
        dual_obj == sol.objective
    }
}

/// Solves a consistent square-or-overdetermined system with `m` unknowns; free unknowns are 0.
fn solve_least(sys: &mut [Vec<BigRational>], m: usize) -> Option<Vec<BigRational>> {
    let rows = sys.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..rows).find(|&i| !sys[i][c].is_zero()) else { continue };
        sys.swap(r, p);
        let inv = sys[r][c].recip();
        for x in sys[r].iter_mut() {
            *x *= &inv;
        }
        let prow = sys[r].clone();
        for (i, row) in sys.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if sys[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); m];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = sys[i][m].clone();
    }
    Some(y)
}

/// The LP for cyclic codes of length n, distance d and dual distance r + 1.
///
/// Variables a_d..a_n ≥ 0; Σ a_i K_k(i) = −C(n,k)(q−1)^k for k = 1..r (no dual words of
/// weight ≤ r) and ≥ for k = r+1..n.
pub fn lp_program(n: usize, d: usize, r: usize, q: u64) -> RationalLp {
    let vars: Vec<usize> = (d..=n).collect();
    let mut rows = Vec::new();
    let mut senses = Vec::new();
    let mut rhs = Vec::new();
    for k in 1..=n {
        rows.push(vars.iter().map(|&i| BigRational::from_integer(krawtchouk(q, n, k, i))).collect());
        senses.push(if k <= r { Sense::Eq } else { Sense::Ge });
        let b = BigInt::from(binom(n, k)) * BigInt::from(q - 1).pow(k as u32);
        rhs.push(BigRational::from_integer(-b));
    }
    RationalLp { objective: vec![rat(1); vars.len()], rows, senses, rhs }
}

fn log2_rational(x: &BigRational) -> f64 {
    let (num, den) = (x.numer(), x.denom());
    let shift = num.bits().saturating_sub(60) as i64 - den.bits().saturating_sub(60) as i64;
    let nf = (num >> num.bits().saturating_sub(60)).to_f64().unwrap_or(f64::NAN);
    let df = (den >> den.bits().saturating_sub(60)).to_f64().unwrap_or(f64::NAN);
    (nf / df).log2() + shift as f64
}

/// Delsarte LP bound on the size of a q-ary cyclic code with distance d and locality r.
pub fn lp_bound(n: usize, d: usize, r: usize, q: u64) -> Result<BoundReport> {
    if d == 0 || d > n || r + 1 > n {
        return Err(Error::InvalidParameters(format!("need 1 ≤ d ≤ n and r + 1 ≤ n, got n={n} d={d} r={r}")));
    }
    let lp = lp_program(n, d, r, q);
    let sol = lp.solve()?;
    let dual_verified = lp.verify(&sol);
    if !dual_verified {
        return Err(Error::CertificateRejected("LP optimum failed the duality check".into()));
    }
    let size = &sol.objective + BigRational::one();
    let log2 = log2_rational(&size);
    // k ≤ log_q(size), computed exactly
    let floor = size.floor().to_integer().to_biguint().unwrap_or_default();
    let k_bound = floor_log(q, &floor);
    let mut rep = BoundReport::new("lp", n, d, r, q, k_bound);
    rep.size = Some(size.to_string());
    rep.log2_size = Some(log2);
    rep.lp = Some(LpSummary {
        optimum: sol.objective.to_string(),
        support: sol
            .x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (d + j, v.to_string()))
            .collect(),
        pivots: sol.pivots,
        dual_verified,
    });
    Ok(rep)
}

/// Exact value of a rational LP optimum as (numerator, denominator) strings, for reports.
pub fn rational_parts(x: &BigRational) -> (String, String) {
    let g = x.numer().gcd(x.denom());
    ((x.numer() / &g).to_string(), (x.denom() / &g).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singleton_forms() {
        assert_eq!(singleton_like(45, 30, 8).unwrap(), 13);
        assert_eq!(singleton_like(20, 7, 7).unwrap(), 20 - 7 + 1);
        assert!(singleton_like(10, 3, 4).is_err());
        for (n, k, r) in [(15, 4, 2), (12, 6, 3), (45, 30, 8)] {
            let d = singleton_like(n, k, r).unwrap();
            assert!(singleton_like_dimension(n, d, r).unwrap() >= k);
        }
    }

    #[test]
    fn small_dimension_bounds() {
        assert_eq!(k_upper(18, 4, 2), 12);
        assert_eq!(k_upper(7, 3, 2), 4);
        assert_eq!(k_upper(9, 1, 2), 9);
        assert_eq!(k_upper(21, 3, 2), 16);
    }

    #[test]
    fn krawtchouk_values() {
        for i in 0..=10 {
            assert_eq!(krawtchouk(2, 10, 0, i), BigInt::one());
            assert_eq!(krawtchouk(2, 10, 1, i), BigInt::from(10 - 2 * i as i64));
        }
        // orthogonality: Σ_i C(n,i)(q−1)^i K_k(i) K_l(i) = δ_kl q^n C(n,k)(q−1)^k
        let (n, q) = (10usize, 3u64);
        for k in 0..=n {
            for l in 0..=n {
                let s: BigInt = (0..=n)
                    .map(|i| {
                        BigInt::from(binom(n, i)) * BigInt::from(q - 1).pow(i as u32) * krawtchouk(q, n, k, i)
                            * krawtchouk(q, n, l, i)
                    })
                    .sum();
                let expected = if k == l {
                    BigInt::from(q).pow(n as u32) * BigInt::from(binom(n, k)) * BigInt::from(q - 1).pow(k as u32)
                } else {
                    BigInt::zero()
                };
                assert_eq!(s, expected);
            }
        }
    }

    #[test]
    fn tiny_lp() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6  → (8/5, 6/5), value 14/5
        let lp = RationalLp {
            objective: vec![rat(1), rat(1)],
            rows: vec![vec![rat(1), rat(2)], vec![rat(3), rat(1)]],
            senses: vec![Sense::Le, Sense::Le],
            rhs: vec![rat(4), rat(6)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, BigRational::new(BigInt::from(14), BigInt::from(5)));
        assert!(lp.verify(&sol));
        let unbounded = RationalLp {
            objective: vec![rat(1)],
            rows: vec![vec![rat(1)]],
            senses: vec![Sense::Ge],
            rhs: vec![rat(1)],
        };
        assert!(matches!(unbounded.solve(), Err(Error::Unbounded)));
        let infeasible = RationalLp {
            objective: vec![rat(1)],
            rows: vec![vec![rat(1)], vec![rat(1)]],
            senses: vec![Sense::Le, Sense::Ge],
            rhs: vec![rat(1), rat(2)],
        };
        assert!(matches!(infeasible.solve(), Err(Error::Infeasible)));
    }

    proptest! {
        #[test]
        fn krawtchouk_recurrence(n in 2usize..14, q in prop::sample::select(vec![2u64, 3, 4, 5]), x in 0usize..14, k in 1usize..13) {
            prop_assume!(x <= n && k < n);
            let lhs = BigInt::from(k + 1) * krawtchouk(q, n, k + 1, x);
            let a = BigInt::from((n - k) as u64 * (q - 1) + k as u64) - BigInt::from(q * x as u64);
            let rhs = a * krawtchouk(q, n, k, x)
                - BigInt::from((q - 1) * (n - k + 1) as u64) * krawtchouk(q, n, k - 1, x);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn k_upper_respects_known_codes(m in 2u32..7) {
            // Hamming [2^m − 1, 2^m − 1 − m, 3] codes exist
            let n = (1usize << m) - 1;
            prop_assert!(k_upper(n, 3, 2) >= n - m as usize);
        }
    }
}
