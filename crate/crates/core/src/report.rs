//! Code specification files, combined analysis reports, defining-set search and the
//! reproduction table of published examples.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::bounds::{lp_bound, shortening_bound};
use crate::cyclic::{BchCertificate, CyclicCode, SymbolField};
use crate::error::{Error, Result};
use crate::field::{cyclotomic_cosets, FieldTable};
use crate::irreducible::{irreducible_code, IrreducibleSpec};
use crate::locality::{
    binary_coset_locality, coset_locality, disjoint_pair, distance_upper_bound, locality_certificates,
    qary_coset_locality, recovery_intersection, symdiff_dual_vector, ternary_two_weight_locality,
    DistanceSummary, LocalityCertificate, ResidueClass,
};
use crate::lrc_rs::{optimal_distance, theorem1_code, theorem1_zeros, RsLrcCode, Theorem1Params, Theorem1Zeros};
use crate::oracle::{disjoint_family, Oracle, OracleReport, SymbolCode, DEFAULT_CEILING};
use crate::par::Exec;

/// `{n, q: {p, m}, zeros, label}`; `zeros` lists coset representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub n: usize,
    pub q: SymbolField,
    pub zeros: Vec<usize>,
    #[serde(default)]
    pub label: String,
}

impl CodeSpecFile {
    pub fn new(n: usize, q: SymbolField, zeros: Vec<usize>, label: &str) -> Self {
        CodeSpecFile { n, q, zeros, label: label.into() }
    }

    pub fn from_code(code: &CyclicCode, label: &str) -> Self {
        CodeSpecFile::new(code.n(), code.symbol(), code.representatives(), label)
    }

    pub fn to_code(&self) -> Result<CyclicCode> {
        let reps: Vec<i64> = self.zeros.iter().map(|&z| z as i64).collect();
        CyclicCode::new(self.n, self.q, &reps)
    }

    /// Canonical text: pretty-printed JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CodeSpecFile = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        spec.to_code()?;
        Ok(spec)
    }
}

/// Settings shared by the analysis entry points.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub ceiling: u128,
    pub exec: Exec,
    /// Skip the oracle entirely.
    pub certificates_only: bool,
    pub include_runtime: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { ceiling: DEFAULT_CEILING, exec: Exec::default(), certificates_only: false, include_runtime: false }
    }
}

impl AnalyzeOptions {
    pub fn oracle(&self) -> Oracle {
        Oracle::new(self.ceiling, self.exec)
    }
}

/// Everything known about one cyclic code.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub spec: CodeSpecFile,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub locator_degree: u32,
    pub defining_set: Vec<usize>,
    /// Coefficients of g(x), lowest degree first, as field-element encodings.
    pub generator_polynomial: Vec<u32>,
    pub bch: BchCertificate,
    pub dual_representatives: Vec<usize>,
    pub certificates: Vec<LocalityCertificate>,
    pub best_locality_bound: Option<usize>,
    pub distance: DistanceSummary,
    pub oracle: Option<OracleReport>,
}

/// Runs every analysis on `spec`. Certificates that contradict the oracle are rejected.
pub fn analyze(spec: &CodeSpecFile, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let code = spec.to_code()?;
    let certificates = locality_certificates(&code)?;
    let distance = distance_upper_bound(&code)?;
    let oracle = if opts.certificates_only {
        None
    } else {
        let mut rep = opts.oracle().report(&code)?;
        if !opts.include_runtime {
            rep.runtime_ms = None;
        }
        Some(rep)
    };
    if let Some(o) = &oracle {
        if let (Some(r), Some(c)) = (o.r_exact, certificates.first()) {
            if c.bound_r < r {
                return Err(Error::CertificateRejected(format!("certified r ≤ {} but the oracle finds r = {r}", c.bound_r)));
            }
        }
        if let (Some(d), Some(u)) = (o.d_min, distance.best_upper()) {
            if u < d || distance.bch.bound > d {
                return Err(Error::CertificateRejected(format!("distance bounds [{}, {u}] exclude d = {d}", distance.bch.bound)));
            }
        }
    }
    let dual = code.dual();
    Ok(AnalysisReport {
        spec: spec.clone(),
        n: code.n(),
        k: code.k(),
        q: code.q(),
        locator_degree: code.locator().degree(),
        defining_set: code.zeros().to_vec(),
        generator_polynomial: code.generator_polynomial().coeffs.iter().map(|c| c.0).collect(),
        bch: code.bch_bound(),
        dual_representatives: dual.representatives(),
        best_locality_bound: certificates.first().map(|c| c.bound_r),
        certificates,
        distance,
        oracle,
    })
}

/// Output of `construct theorem1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub spec: CodeSpecFile,
    pub params: Theorem1Params,
    pub zeros: Theorem1Zeros,
    pub k: usize,
    pub optimal_distance: usize,
    pub bch: BchCertificate,
    pub certificate: Option<LocalityCertificate>,
    pub oracle: Option<OracleReport>,
}

pub fn construct_theorem1(params: &Theorem1Params, opts: &AnalyzeOptions) -> Result<Theorem1Report> {
    let zeros = theorem1_zeros(params)?;
    let code = theorem1_code(params)?;
    let certificate = coset_locality(&code, params.r)?;
    let oracle = if opts.certificates_only {
        None
    } else {
        match opts.oracle().report(&code) {
            Ok(mut r) => {
                if !opts.include_runtime {
                    r.runtime_ms = None;
                }
                Some(r)
            }
            Err(e) if e.is_resource_limit() => None,
            Err(e) => return Err(e),
        }
    };
    Ok(Theorem1Report {
        spec: CodeSpecFile::from_code(&code, "theorem1"),
        params: *params,
        zeros,
        k: code.k(),
        optimal_distance: optimal_distance(params.n, params.k, params.r)?,
        bch: code.bch_bound(),
        certificate,
        oracle,
    })
}

/// Output of `construct rs-lrc`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RsLrcReport {
    pub q: SymbolField,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub cyclic: bool,
    pub points: Vec<u32>,
    pub blocks: Vec<Vec<usize>>,
    pub optimal_distance: usize,
    pub spec: Option<CodeSpecFile>,
    pub d_min: Option<usize>,
}

pub fn construct_rs_lrc(q: SymbolField, n: usize, k: usize, r: usize, opts: &AnalyzeOptions) -> Result<RsLrcReport> {
    let field = FieldTable::cached(q.p, q.m)?;
    let code = RsLrcCode::new(field.clone(), n, k, r)?;
    let d_min = if opts.certificates_only {
        None
    } else {
        let alphabet = std::sync::Arc::new(crate::field::Alphabet::new(&field, q.m)?);
        let rows = crate::oracle::symbols_of(&code.generator_matrix(), &alphabet)?;
        let sc = SymbolCode::new(n, alphabet, rows)?;
        let oracle = opts.oracle();
        if oracle.can_enumerate(&sc) {
            oracle.enumerate(&sc, 0)?.min_weight()
        } else {
            None
        }
    };
    let spec = if code.is_cyclic() { Some(CodeSpecFile::from_code(&code.as_cyclic()?, "rs-lrc")) } else { None };
    Ok(RsLrcReport {
        q,
        n,
        k,
        r,
        cyclic: code.is_cyclic(),
        points: code.points().iter().map(|p| p.0).collect(),
        blocks: code.blocks().to_vec(),
        optimal_distance: optimal_distance(n, k, r)?,
        spec,
        d_min,
    })
}

/// Filters for [`search`].
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct SearchConstraints {
    pub min_k: Option<usize>,
    pub max_k: Option<usize>,
    pub max_r: Option<usize>,
    pub min_d: Option<usize>,
    /// Require two coordinate-partition recovery sets of coordinate 0 that are disjoint.
    pub disjoint_recovery: bool,
    /// Enumeration ceiling for exact locality; certificates only when `None`.
    pub exact_ceiling: Option<u128>,
}

/// One defining set returned by [`search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub zeros: Vec<usize>,
    pub k: usize,
    pub r: Option<usize>,
    pub r_method: String,
    pub d_lower: usize,
}

/// Largest number of candidate defining sets [`search`] visits.
pub const SEARCH_LIMIT: u128 = 1 << 20;

/// Cheap certified locality bound: class partitions, averaging over irreducible subcodes
/// and (in characteristic 2) pairs of classes.
fn quick_locality(n: usize, q: u64, zeros: &[bool]) -> Option<usize> {
    let contains = |p: usize, l: usize| (l..n).step_by(p).all(|i| zeros[i]);
    let divs: Vec<usize> = crate::arith::divisors(n).into_iter().filter(|&s| s > 1).collect();
    let mut best: Option<usize> = None;
    let mut offer = |b: usize| best = Some(best.map_or(b, |x: usize| x.min(b)));
    for &s in &divs {
        for c in 0..s {
            if contains(s, c) {
                offer(crate::locality::averaging_locality_bound(q, s, c).min(s - 1));
            }
        }
    }
    if q.is_multiple_of(2) {
        let classes: Vec<ResidueClass> = divs.iter().flat_map(|&p| (0..p).map(move |l| ResidueClass { p, l })).collect();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                let odd = (0..n).all(|x| ((x % a.p == a.l) != (x % b.p == b.l)) <= zeros[x]);
                let w = crate::locality::symdiff_exact_weight(&[*a, *b]).unwrap_or(0);
                if odd && w > 0 {
                    offer(w - 1);
                }
            }
        }
    }
    best
}

fn has_disjoint_partitions(n: usize, zeros: &[bool]) -> bool {
    let divs: Vec<usize> = crate::arith::divisors(n)
        .into_iter()
        .filter(|&s| s > 1 && (0..s).any(|c| (c..n).step_by(s).all(|i| zeros[i])))
        .collect();
    divs.iter().enumerate().any(|(i, &a)| divs[i + 1..].iter().any(|&b| num_integer::lcm(n / a, n / b) == n))
}

/// Unions of cyclotomic cosets meeting the constraints, ranked by larger k, then smaller r,
/// then larger BCH bound, then the defining set.
pub fn search(n: usize, q: SymbolField, constraints: &SearchConstraints, exec: Exec) -> Result<Vec<SearchHit>> {
    let qo = q.order();
    if n == 0 || n > 105 || !matches!(qo, 2..=4) {
        return Err(Error::InvalidParameters("search supports n ≤ 105 and q ∈ {2, 3, 4}".into()));
    }
    let cosets = cyclotomic_cosets(n, qo)?;
    let size = 1u128.checked_shl(cosets.len() as u32).unwrap_or(u128::MAX);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size, limit: SEARCH_LIMIT });
    }
    let locator = {
        let ord = crate::arith::multiplicative_order(qo, n as u64).ok_or(Error::NotCoprime { n: n as u64, q: qo })?;
        FieldTable::cached(q.p, q.m * ord as u32)?
    };
    let masks: Vec<u128> = (0..size).collect();
    let results = exec.map(masks, |mask| -> Result<Option<SearchHit>> {
        let mut zeros = vec![false; n];
        for (i, c) in cosets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &m in &c.members {
                    zeros[m] = true;
                }
            }
        }
        let k = zeros.iter().filter(|&&z| !z).count();
        if constraints.min_k.is_some_and(|m| k < m) || constraints.max_k.is_some_and(|m| k > m) {
            return Ok(None);
        }
        if constraints.disjoint_recovery && !has_disjoint_partitions(n, &zeros) {
            return Ok(None);
        }
        let set: Vec<usize> = (0..n).filter(|&i| zeros[i]).collect();
        let mut r = quick_locality(n, qo, &zeros);
        let mut r_method = "certificate".to_string();
        if let Some(ceiling) = constraints.exact_ceiling {
            let code = CyclicCode::with_locator(n, q, locator.clone(), set.clone())?;
            let oracle = Oracle::new(ceiling, Exec::Sequential);
            match oracle.dual_distance(&code) {
                Ok(d) => {
                    r = d.map(|d| d - 1);
                    r_method = "oracle".into();
                }
                Err(e) if e.is_resource_limit() => {}
                Err(e) => return Err(e),
            }
        }
        if let Some(max_r) = constraints.max_r {
            if r.is_none_or(|r| r > max_r) {
                return Ok(None);
            }
        }
        let code = CyclicCode::with_locator(n, q, locator.clone(), set.clone())?;
        let d_lower = code.bch_bound().bound.min(n);
        if constraints.min_d.is_some_and(|m| d_lower < m) {
            return Ok(None);
        }
        Ok(Some(SearchHit { zeros: code.representatives(), k, r, r_method, d_lower }))
    });
    let mut hits: Vec<SearchHit> = results.into_iter().filter_map(|r| r.transpose()).collect::<Result<_>>()?;
    hits.sort_by(|a, b| {
        b.k.cmp(&a.k)
            .then_with(|| a.r.unwrap_or(usize::MAX).cmp(&b.r.unwrap_or(usize::MAX)))
            .then_with(|| b.d_lower.cmp(&a.d_lower))
            .then_with(|| a.zeros.cmp(&b.zeros))
    });
    Ok(hits)
}

/// Outcome of one reproduction check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail,
    ExpectedDivergence,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedDivergence => "EXPECTED-DIVERGENCE",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub quantity: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

/// One line of the binary-code table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub zeros: Vec<usize>,
    pub coset: String,
    pub z: u32,
    pub r_bound: usize,
    pub r_exact: Option<usize>,
    pub w: u64,
    pub dual_zeros: Vec<usize>,
    pub d_dual: Option<usize>,
    pub shortening: Option<usize>,
    pub lp: Option<usize>,
    pub locator_degree: u32,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PaperReport {
    pub table: Vec<TableRow>,
    pub checks: Vec<Check>,
}

impl PaperReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, id: &str, quantity: &str, expected: T, observed: T) {
        let status = if expected == observed { Status::Pass } else { Status::Fail };
        self.push(id, quantity, format!("{expected:?}"), format!("{observed:?}"), status);
    }

    fn divergence<T: PartialEq + std::fmt::Debug>(&mut self, id: &str, quantity: &str, claimed: T, observed: T) {
        let status = if claimed == observed { Status::Pass } else { Status::ExpectedDivergence };
        self.push(id, quantity, format!("{claimed:?}"), format!("{observed:?}"), status);
    }

    fn push(&mut self, id: &str, quantity: &str, expected: String, observed: String, status: Status) {
        self.checks.push(Check { id: id.into(), quantity: quantity.into(), expected, observed, status });
    }

    fn error(&mut self, id: &str, e: &Error) {
        self.push(id, "evaluation", "ok".into(), e.to_string(), Status::Fail);
    }

    /// Plain-text table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("   n   k   d  Z                    coset   z  r     r*  w  Z(dual)                     d'  SH  LP\n");
        for r in &self.table {
            out.push_str(&format!(
                "{:>4} {:>3} {:>3}  {:<20} {:<7} {:>2}  ≤{:<3} {:>3} {:>2}  {:<27} {:>2} {:>3} {:>3}\n",
                r.n,
                r.k,
                opt(r.d),
                format!("{:?}", r.zeros),
                r.coset,
                r.z,
                r.r_bound,
                opt(r.r_exact),
                r.w,
                format!("{:?}", r.dual_zeros),
                opt(r.d_dual),
                opt(r.shortening),
                opt(r.lp),
            ));
        }
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!("{:<20} {:<22} {:<9} expected {:<14} observed {}\n", c.id, c.quantity, c.status.to_string(), c.expected, c.observed));
        }
        out
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}

fn binary(n: usize, reps: &[i64]) -> Result<CyclicCode> {
    CyclicCode::new(n, SymbolField::binary(), reps)
}

/// Reproduces the published examples and the binary-code table.
pub fn verify_paper(opts: &AnalyzeOptions) -> PaperReport {
    let mut rep = PaperReport::default();
    let oracle = opts.oracle();
    let steps: [(&str, fn(&mut PaperReport, &Oracle) -> Result<()>); 12] = [
        ("theorem1", verify_theorem1),
        ("example-45", verify_example_45),
        ("example-21", verify_example_21),
        ("table", verify_table),
        ("ternary-80", verify_ternary),
        ("degenerate-63", verify_degenerate),
        ("symdiff-45", verify_symdiff_45),
        ("symdiff-105", verify_symdiff_105),
        ("remark-63", verify_two_partitions),
        ("family-15", verify_family),
        ("bounds", verify_bounds),
        ("irreducible", verify_irreducible),
    ];
    for (id, step) in steps {
        let clock = Instant::now();
        if let Err(e) = step(&mut rep, &oracle) {
            rep.error(id, &e);
        }
        if opts.include_runtime {
            rep.push(id, "runtime-ms", "-".into(), clock.elapsed().as_millis().to_string(), Status::Pass);
        }
    }
    rep
}

fn verify_theorem1(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let p = Theorem1Params::new(15, 4, 2, SymbolField::new(2, 4)).with_l(0);
    let code = theorem1_code(&p)?;
    let z = theorem1_zeros(&p)?;
    rep.check("theorem1-15-4-2", "|D|,|L|,|L∪D|", (10, 5, 11), (z.d_set.len(), z.l_set.len(), code.zeros().len()));
    rep.check("theorem1-15-4-2", "d", Some(11), o.min_distance(&code)?);
    rep.check("theorem1-15-4-2", "r", Some(2), o.exact_locality(&code)?.r);
    let p = Theorem1Params::new(12, 6, 3, SymbolField::new(13, 1));
    let code = theorem1_code(&p)?;
    rep.check("theorem1-12-6-3", "d", Some(6), o.min_distance(&code)?);
    Ok(())
}

fn verify_example_45(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let code = binary(45, &[0, 3, 5, 9])?;
    rep.check("example-45", "k", 30, code.k());
    rep.check("example-45", "dual zeros", vec![1, 3, 7, 15], code.dual().representatives());
    rep.check("example-45", "d_dual", Some(9), o.dual_distance(&code)?);
    rep.check("example-45", "coset bound r", Some(8), coset_locality(&code, 8)?.map(|c| c.bound_r));
    rep.check("example-45", "r", Some(8), o.exact_locality(&code)?.r);
    Ok(())
}

fn verify_example_21(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let code = binary(21, &[0, 1, 7])?;
    rep.check("example-21", "[n,k,d]", (21, 12, Some(4)), (code.n(), code.k(), o.min_distance(&code)?));
    rep.check("example-21", "dual zeros", vec![1, 3, 9], code.dual().representatives());
    rep.check("example-21", "d_dual", Some(6), o.dual_distance(&code)?);
    rep.check("example-21", "coset bound r", Some(6), coset_locality(&code, 6)?.map(|c| c.bound_r));
    rep.check("example-21", "r", Some(5), o.exact_locality(&code)?.r);
    rep.check("example-21", "SH, LP", (14, 15), (shortening_bound(21, 4, 5, 2)?.k_bound, lp_bound(21, 4, 5, 2)?.k_bound));
    Ok(())
}

fn verify_table(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    struct Row {
        n: usize,
        reps: &'static [i64],
        z: u32,
        k: usize,
        d: usize,
        r: usize,
        w: u64,
        dual: &'static [usize],
        d_dual: usize,
        sh: Option<usize>,
        lp: Option<usize>,
        locator: u32,
    }
    let rows = [
        Row { n: 35, reps: &[1, 15], z: 3, k: 20, d: 3, r: 3, w: 4, dual: &[0, 1, 7, 15], d_dual: 4, sh: Some(25), lp: Some(29), locator: 12 },
        Row { n: 45, reps: &[1], z: 4, k: 33, d: 3, r: 7, w: 8, dual: &[0, 1, 3, 5, 9, 15, 21], d_dual: 8, sh: Some(37), lp: Some(39), locator: 12 },
        Row { n: 27, reps: &[1, 9], z: 2, k: 7, d: 6, r: 1, w: 2, dual: &[0, 3], d_dual: 2, sh: None, lp: None, locator: 18 },
        Row { n: 63, reps: &[1, 9, 11, 15, 23], z: 3, k: 36, d: 3, r: 3, w: 4, dual: &[0, 1, 7, 9, 11, 15, 21, 23], d_dual: 4, sh: None, lp: None, locator: 6 },
    ];
    for row in rows {
        let id = format!("table-{}", row.n);
        let code = binary(row.n, row.reps)?;
        let cert = binary_coset_locality(&code, row.z)?;
        let report = o.report(&code)?;
        let dual_zeros = code.dual().representatives();
        let (sh, lp) = match (row.sh, row.lp) {
            (Some(_), Some(_)) => (Some(shortening_bound(row.n, row.d, row.r, 2)?.k_bound), Some(lp_bound(row.n, row.d, row.r, 2)?.k_bound)),
            _ => (None, None),
        };
        rep.check(&id, "k", row.k, code.k());
        rep.check(&id, "d", Some(row.d), report.d_min);
        rep.check(&id, "locator degree", row.locator, code.locator().degree());
        rep.check(&id, "dual zeros", row.dual.to_vec(), dual_zeros.clone());
        rep.check(&id, "d_dual", Some(row.d_dual), report.d_dual);
        rep.check(&id, "certified r", row.r, cert.bound_r);
        rep.check(&id, "r", Some(row.r), report.r_exact);
        rep.check(&id, "w", row.w, cert.count_per_symbol);
        let oracle_sets = report.recovery_sets_per_coordinate.as_ref().and_then(|v| v.first().copied());
        rep.check(&id, "oracle sets ≥ w", true, oracle_sets.is_some_and(|c| c >= row.w));
        if row.sh.is_some() {
            rep.check(&id, "SH, LP", (row.sh, row.lp), (sh, lp));
        }
        if row.n == 63 {
            let field = code.locator();
            let mut pairs = Vec::new();
            let mut triples = Vec::new();
            let m = cert.recovery_sets.len();
            for i in 0..m {
                for j in i + 1..m {
                    pairs.push(recovery_intersection(&cert, &[i, j], row.z, field)?.recovery_intersection);
                    for k in j + 1..m {
                        triples.push(recovery_intersection(&cert, &[i, j, k], row.z, field)?.recovery_intersection);
                    }
                }
            }
            rep.check(&id, "pair intersections", true, pairs.iter().all(|&x| x == 1));
            rep.check(&id, "triple intersections", true, triples.iter().all(|&x| x == 0));
        }
        rep.table.push(TableRow {
            n: row.n,
            k: code.k(),
            d: report.d_min,
            zeros: code.representatives(),
            coset: format!("α^{}G_{}", cert.detail.split_whitespace().nth(1).unwrap_or("?"), (1usize << row.z) - 1),
            z: row.z,
            r_bound: cert.bound_r,
            r_exact: report.r_exact,
            w: cert.count_per_symbol,
            dual_zeros,
            d_dual: report.d_dual,
            shortening: sh,
            lp,
            locator_degree: code.locator().degree(),
        });
    }
    Ok(())
}

fn verify_ternary(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let code = CyclicCode::new(80, SymbolField::new(3, 1), &[1, 2, 41])?;
    rep.check("ternary-80", "k", 68, code.k());
    let cert = ternary_two_weight_locality(&code, 40)?;
    rep.check("ternary-80", "certified d_dual ≤", 24, cert.bound_r + 1);
    rep.check("ternary-80", "recovery sets", 24, cert.count_per_symbol);
    rep.check("ternary-80", "set size", Some(23), cert.recovery_sets.iter().map(|s| s.len()).max());
    let dual = SymbolCode::dual(&code)?;
    let sets = o.recovery_sets(&dual, 0, 24)?;
    let words_23: u64 = sets.iter().filter(|s| s.set.len() == 23).map(|s| s.words).sum();
    let d_dual = o.dual_distance(&code)?;
    rep.check("ternary-80", "oracle d_dual ≤ 24", true, d_dual.is_some_and(|d| d <= 24));
    rep.check("ternary-80", "oracle words of size 23", true, words_23 >= 24);
    Ok(())
}

fn verify_degenerate(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let code = binary(63, &[3, 27])?;
    rep.check("degenerate-63", "k", 54, code.k());
    let cert = qary_coset_locality(&code, 21)?;
    rep.check("degenerate-63", "certified r", 11, cert.bound_r);
    let spec = IrreducibleSpec::degenerate(SymbolField::binary(), 21, 7)?;
    let words = irreducible_code(&spec)?;
    let repeated = words.iter().all(|w| w[..7] == w[7..14] && w[..7] == w[14..]);
    let weights: std::collections::BTreeSet<usize> = words.iter().map(|w| w.iter().filter(|&&x| x != 0).count()).collect();
    rep.check("degenerate-63", "V", (true, vec![0, 12]), (repeated, weights.into_iter().collect()));
    rep.check("degenerate-63", "d_dual", Some(12), o.dual_distance(&code)?);
    rep.check("degenerate-63", "r", Some(11), o.exact_locality(&code)?.r);
    Ok(())
}

fn verify_symdiff_45(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let code = binary(45, &[3, 5, 9, 21])?;
    let classes = [ResidueClass { p: 3, l: 0 }, ResidueClass { p: 5, l: 0 }];
    let cert = symdiff_dual_vector(&code, &classes)?;
    rep.check("symdiff-45", "weight f", 6, cert.weight);
    rep.check("symdiff-45", "support f", vec![9, 15, 18, 27, 30, 36], cert.coefficients.keys().copied().collect());
    let dual = code.dual();
    rep.check("symdiff-45", "dual [n,k,d]", (45, 18, Some(6)), (45, dual.k(), o.dual_distance(&code)?));
    Ok(())
}

fn verify_symdiff_105(rep: &mut PaperReport, _: &Oracle) -> Result<()> {
    let code = binary(105, &[0, 3, 5, 7, 9, 25, 49])?;
    rep.check("symdiff-105", "dual k", 45, code.dual().k());
    let classes = [ResidueClass { p: 3, l: 0 }, ResidueClass { p: 5, l: 0 }, ResidueClass { p: 7, l: 0 }];
    let cert = symdiff_dual_vector(&code, &classes)?;
    rep.check("symdiff-105", "weight f", 13, cert.weight);
    rep.check("symdiff-105", "r ≤", 12, cert.bound_r);
    let two = coset_locality_bound_any(&code)?;
    rep.check("symdiff-105", "coset bound", Some(104), two);
    Ok(())
}

fn coset_locality_bound_any(code: &CyclicCode) -> Result<Option<usize>> {
    let mut best = None;
    for s in crate::arith::divisors(code.n()).into_iter().filter(|&s| s > 1) {
        if let Some(c) = coset_locality(code, s - 1)? {
            best = Some(best.map_or(c.bound_r, |b: usize| b.min(c.bound_r)));
        }
    }
    Ok(best)
}

fn verify_two_partitions(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let code = binary(63, &[0, 7, 9, 21, 27])?;
    let a = coset_locality(&code, 6)?.ok_or_else(|| Error::Hypothesis("no class modulo 7".into()))?;
    let b = coset_locality(&code, 8)?.ok_or_else(|| Error::Hypothesis("no class modulo 9".into()))?;
    let pair = disjoint_pair(&a, &b).map(|(x, y)| (x.len(), y.len()));
    rep.check("remark-63", "disjoint set sizes", Some((6, 8)), pair);
    let dual = SymbolCode::dual(&code)?;
    let sets: Vec<Vec<usize>> = o.recovery_sets(&dual, 0, 9)?.into_iter().map(|s| s.set).collect();
    let sizes: Vec<Vec<usize>> = sets.iter().filter(|s| s.len() == 6 || s.len() == 8).cloned().collect();
    let fam = disjoint_family(&sizes);
    let found = fam.iter().any(|&i| sizes[i].len() == 6) && fam.iter().any(|&i| sizes[i].len() == 8);
    rep.check("remark-63", "oracle disjoint 6 and 8", true, found);
    Ok(())
}

fn verify_family(rep: &mut PaperReport, o: &Oracle) -> Result<()> {
    let p = 3usize;
    let n = p * (p + 2);
    let reps: Vec<i64> = (0..n as i64).filter(|&i| i == 0 || (i % p as i64 != 0 && i % (p as i64 + 2) != 0)).collect();
    let code = CyclicCode::new(n, SymbolField::new(2, 4), &reps)?;
    let s = distance_upper_bound(&code)?;
    rep.check("family-15", "upper bound d", Some(2 * p), s.best_upper());
    rep.check("family-15", "BCH d", 2 * p, s.bch.bound);
    rep.check("family-15", "d", Some(2 * p), o.min_distance(&code)?);
    rep.divergence("family-15", "k", 2 * p + 1, code.k());
    Ok(())
}

fn verify_bounds(rep: &mut PaperReport, _: &Oracle) -> Result<()> {
    rep.check("bounds", "SH(45,4,8)", 36, shortening_bound(45, 4, 8, 2)?.k_bound);
    rep.check("bounds", "SH(35,3,3)", 25, shortening_bound(35, 3, 3, 2)?.k_bound);
    rep.check("bounds", "SH(45,3,7)", 37, shortening_bound(45, 3, 7, 2)?.k_bound);
    let lp = lp_bound(45, 4, 8, 2)?;
    let log2 = lp.log2_size.unwrap_or(f64::NAN);
    rep.check("bounds", "LP(45,4,8) log2", "38.48".to_string(), format!("{log2:.2}"));
    rep.check("bounds", "LP(45,4,8) k", 38, lp.k_bound);
    rep.check("bounds", "LP(35,3,3) k", 29, lp_bound(35, 3, 3, 2)?.k_bound);
    rep.check("bounds", "LP(45,3,7) k", 39, lp_bound(45, 3, 7, 2)?.k_bound);
    Ok(())
}

fn verify_irreducible(rep: &mut PaperReport, _: &Oracle) -> Result<()> {
    let spec = IrreducibleSpec::new(SymbolField::binary(), 7)?;
    let words = irreducible_code(&spec)?;
    let weights: Vec<usize> = words.iter().map(|w| w.iter().filter(|&&x| x != 0).count()).filter(|&w| w > 0).collect();
    rep.check("irreducible", "simplex weights", (7, true), (weights.len(), weights.iter().all(|&w| w == 4)));
    rep.check("irreducible", "gcd(21, 63)", 21, gcd(21, 63) as usize);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let spec = CodeSpecFile::new(45, SymbolField::binary(), vec![0, 3, 5, 9], "example");
        let text = spec.to_json();
        let back = CodeSpecFile::from_json(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_json(), text);
        assert!(CodeSpecFile::from_json("{\"n\": 45}").is_err());
        assert!(CodeSpecFile::from_json(&text.replace("45", "44")).is_err());
    }

    #[test]
    fn analyze_example() {
        let spec = CodeSpecFile::new(21, SymbolField::binary(), vec![0, 1, 7], "example");
        let a = analyze(&spec, &AnalyzeOptions::default()).unwrap();
        assert_eq!(a.k, 12);
        assert_eq!(a.oracle.as_ref().unwrap().r_exact, Some(5));
        assert_eq!(a.best_locality_bound, Some(6));
        let again = analyze(&spec, &AnalyzeOptions::default()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn search_small() {
        let hits = search(7, SymbolField::binary(), &SearchConstraints::default(), Exec::Sequential).unwrap();
        assert_eq!(hits.len(), 8);
        assert_eq!(hits[0].k, 7);
        assert!(hits[0].zeros.is_empty());
        let c = SearchConstraints { max_r: Some(5), exact_ceiling: Some(1 << 12), ..Default::default() };
        let hits = search(21, SymbolField::binary(), &c, Exec::default()).unwrap();
        assert!(hits.iter().any(|h| h.zeros == vec![0, 1, 7] && h.r == Some(5)));
        assert!(matches!(search(106, SymbolField::binary(), &c, Exec::Sequential), Err(Error::InvalidParameters(_))));
    }
}
