//! Upper bounds on locality and minimum distance of cyclic codes, each backed by explicit
//! dual (or primal) codewords that are checked against the code before being reported.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, multiplicative_order};
use crate::cyclic::{shift, BchCertificate, CyclicCode};
use crate::error::{Error, Result};
use crate::field::{FieldTable, Gf};
use crate::irreducible::{averaging_distance_bound, IrreducibleSpec};
use crate::linalg::{self, Matrix};
use crate::lrc_rs::repair_with_dual_word;
use crate::oracle::elements_of;

/// Where a locality bound comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Z contains a full residue class modulo r + 1.
    CosetPartition,
    /// Binary code, Z contains a class modulo 2^z − 1: simplex subcode of the dual.
    BinarySimplex,
    /// Z contains a class modulo s: averaging over the irreducible subcode of the dual.
    IrreducibleAveraging,
    /// Ternary code with a two-weight irreducible subcode of the dual.
    TernaryTwoWeight,
    /// Odd-multiplicity union of residue classes contained in Z.
    SymmetricDifference,
}

/// A locality bound together with the dual codewords that witness it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalityCertificate {
    pub source: Source,
    pub bound_r: usize,
    pub detail: String,
    pub witness_support: Vec<usize>,
    /// Entries of the witness on its support (locator-field encoding).
    pub witness_values: Vec<Gf>,
    /// Recovery sets of coordinate 0; coordinate i uses the sets shifted by i.
    pub recovery_sets: Vec<Vec<usize>>,
    pub count_per_symbol: u64,
    /// Dual words aligned with `recovery_sets`; each covers coordinate 0.
    #[serde(skip)]
    pub recovery_words: Vec<Vec<Gf>>,
}

impl LocalityCertificate {
    /// Recovery sets of coordinate `i`.
    pub fn recovery_sets_for(&self, i: usize, n: usize) -> Vec<Vec<usize>> {
        self.recovery_sets
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|&j| (j + i) % n).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Recovers `word[pos]` from the first recovery set of `pos` (arithmetic in `field`).
    pub fn repair(&self, word: &[Option<Gf>], pos: usize, field: &FieldTable) -> Result<Gf> {
        let w = self.recovery_words.first().ok_or_else(|| Error::Repair("certificate has no recovery words".into()))?;
        repair_with_dual_word(word, pos, &shift(w, pos), field)
    }

    /// The witness as a length-`n` word.
    pub fn witness_word(&self, n: usize) -> Vec<Gf> {
        let mut witness = vec![Gf::ZERO; n];
        for (&t, &v) in self.witness_support.iter().zip(&self.witness_values) {
            witness[t] = v;
        }
        witness
    }

    /// Re-checks every stored word against `code`.
    pub fn verify(&self, code: &CyclicCode) -> Result<()> {
        let gen = code.generator_matrix();
        let witness = self.witness_word(code.n());
        check_dual_word(&witness, &gen, code.locator(), self.bound_r + 1)?;
        if self.recovery_sets.len() != self.recovery_words.len() {
            return Err(Error::CertificateRejected("recovery sets and words are misaligned".into()));
        }
        for (set, w) in self.recovery_sets.iter().zip(&self.recovery_words) {
            check_dual_word(w, &gen, code.locator(), self.bound_r + 1)?;
            let mut supp = support(w);
            if supp.first() != Some(&0) {
                return Err(Error::CertificateRejected("recovery word does not cover coordinate 0".into()));
            }
            supp.remove(0);
            if &supp != set || set.len() > self.bound_r {
                return Err(Error::CertificateRejected(format!("recovery set {set:?} does not match its word")));
            }
        }
        Ok(())
    }
}

fn support(w: &[Gf]) -> Vec<usize> {
    w.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

fn check_dual_word(w: &[Gf], gen: &Matrix, field: &FieldTable, max_weight: usize) -> Result<()> {
    let wt = w.iter().filter(|x| !x.is_zero()).count();
    if wt == 0 {
        return Err(Error::CertificateRejected("witness is the zero word".into()));
    }
    if wt > max_weight {
        return Err(Error::CertificateRejected(format!("witness weight {wt} exceeds {max_weight}")));
    }
    if gen.iter().any(|row| !linalg::dot(row, w, field).is_zero()) {
        return Err(Error::CertificateRejected("witness is not orthogonal to the code".into()));
    }
    Ok(())
}

/// Builds and verifies a certificate from a witness and a family of dual words whose
/// cyclic shifts supply the recovery sets of coordinate 0.
fn certify(
    code: &CyclicCode,
    source: Source,
    bound_r: usize,
    detail: String,
    witness: Vec<Gf>,
    family: &[Vec<Gf>],
    count: Option<u64>,
) -> Result<LocalityCertificate> {
    let n = code.n();
    let mut by_support: BTreeMap<Vec<usize>, Vec<Gf>> = BTreeMap::new();
    for w in family {
        for e in support(w) {
            let s = shift(w, (n - e) % n);
            let mut supp = support(&s);
            supp.remove(0);
            by_support.entry(supp).or_insert(s);
        }
    }
    let mut pairs: Vec<(Vec<usize>, Vec<Gf>)> = by_support.into_iter().collect();
    pairs.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let count_per_symbol = count.unwrap_or(pairs.len() as u64);
    let witness_support = support(&witness);
    let witness_values = witness_support.iter().map(|&t| witness[t]).collect();
    let (recovery_sets, recovery_words) = pairs.into_iter().unzip();
    let cert = LocalityCertificate {
        source,
        bound_r,
        detail,
        witness_support,
        witness_values,
        recovery_sets,
        count_per_symbol,
        recovery_words,
    };
    cert.verify(code)?;
    Ok(cert)
}

/// Exponent classes {i : i ≡ c (mod s)} contained in Z, for s | n.
pub fn contained_classes(code: &CyclicCode, s: usize) -> Vec<usize> {
    let n = code.n();
    if s == 0 || !n.is_multiple_of(s) {
        return Vec::new();
    }
    (0..s).filter(|&c| (c..n).step_by(s).all(|i| code.is_zero(i as i64))).collect()
}

/// The weight-(r+1) vector with entries β^{l·j} at positions j·ν (β = α^ν), when Z contains
/// the class l modulo r + 1; its ν shifts partition the coordinates.
pub fn coset_locality(code: &CyclicCode, r_candidate: usize) -> Result<Option<LocalityCertificate>> {
    let n = code.n();
    let s = r_candidate + 1;
    if r_candidate == 0 || !n.is_multiple_of(s) {
        return Err(Error::InvalidParameters(format!("r + 1 = {s} does not divide n = {n}")));
    }
    let Some(&l) = contained_classes(code, s).first() else { return Ok(None) };
    let nu = n / s;
    let mut v = vec![Gf::ZERO; n];
    for j in 0..s {
        v[j * nu] = code.alpha_pow((l * j * nu) as i64);
    }
    let detail = format!("class {l} mod {s}");
    certify(code, Source::CosetPartition, r_candidate, detail, v.clone(), &[v], None).map(Some)
}

/// All coset certificates over the divisors of n.
pub fn coset_certificates(code: &CyclicCode) -> Result<Vec<LocalityCertificate>> {
    let mut out = Vec::new();
    for s in divisors(code.n()).into_iter().filter(|&s| s > 1) {
        if let Some(c) = coset_locality(code, s - 1)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Words of the irreducible subcode (T(γ β^{c j}))_{j<s} placed at positions j·(n/s).
fn irreducible_subcode(code: &CyclicCode, s: usize, c: usize) -> Result<(IrreducibleSpec, Vec<Vec<Gf>>)> {
    let n = code.n();
    let nu = n / s;
    let q = code.q();
    let sub = code.symbol().m;
    let m = multiplicative_order(q, s as u64).ok_or(Error::NotCoprime { n: s as u64, q })? as u32;
    let beta = code.alpha_pow((nu * c) as i64);
    let spec = IrreducibleSpec::from_root(code.locator().clone(), sub, sub * m, s, beta)?;
    let alphabet = spec.alphabet()?;
    let words = crate::irreducible::irreducible_code(&spec)?
        .into_iter()
        .map(|w| {
            let mut full = vec![Gf::ZERO; n];
            for (j, x) in elements_of(&w, &alphabet).into_iter().enumerate() {
                full[j * nu] = x;
            }
            full
        })
        .collect();
    Ok((spec, words))
}

fn weight(w: &[Gf]) -> usize {
    w.iter().filter(|x| !x.is_zero()).count()
}

/// Binary codes whose zeros contain a class c modulo 2^z − 1 with gcd(c, 2^z − 1) = 1: the
/// dual contains a simplex code, giving r ≤ 2^{z−1} − 1 with 2^{z−1} recovery sets.
pub fn binary_coset_locality(code: &CyclicCode, z: u32) -> Result<LocalityCertificate> {
    if code.q() != 2 {
        return Err(Error::InvalidParameters("binary code required".into()));
    }
    let s = (1usize << z) - 1;
    if z < 2 || !code.n().is_multiple_of(s) {
        return Err(Error::InvalidParameters(format!("2^{z} − 1 does not divide n = {}", code.n())));
    }
    let c = contained_classes(code, s)
        .into_iter()
        .find(|&c| gcd(c as u64, s as u64) == 1)
        .ok_or_else(|| Error::Hypothesis(format!("no class coprime to {s} modulo {s} lies in Z")))?;
    let (_, words) = irreducible_subcode(code, s, c)?;
    let w = 1usize << (z - 1);
    let family: Vec<Vec<Gf>> = words.into_iter().filter(|v| weight(v) == w).collect();
    if family.len() != s {
        return Err(Error::CertificateRejected(format!("expected {s} simplex words of weight {w}, found {}", family.len())));
    }
    let witness = family.iter().find(|v| !v[0].is_zero()).cloned().expect("simplex words cover every coordinate");
    let detail = format!("class {c} mod {s}, z = {z}");
    let cert = certify(code, Source::BinarySimplex, w - 1, detail, witness, &family, None)?;
    if cert.count_per_symbol != w as u64 {
        return Err(Error::CertificateRejected(format!("{} recovery sets, expected {w}", cert.count_per_symbol)));
    }
    Ok(cert)
}

/// ⌈X⌉ − 1 for X = g·t·(1 − (q^{m−1} − 1)/(q^m − 1)), g = gcd(c, s), t = s/g, m = ord_t(q).
pub fn averaging_locality_bound(q: u64, s: usize, c: usize) -> usize {
    let g = gcd(c as u64, s as u64);
    let t = s as u64 / g;
    let m = multiplicative_order(q, t).unwrap_or(1) as u32;
    let x = averaging_distance_bound(q, t, m) * num_rational::BigRational::from_integer(g.into());
    let ceil = x.ceil().to_integer();
    usize::try_from(ceil).expect("bound fits") - 1
}

/// Any code whose zeros contain a residue class modulo s | n: r < g·t·(1 − …), witnessed by
/// a minimum-weight word of the irreducible subcode of the dual.
pub fn qary_coset_locality(code: &CyclicCode, s: usize) -> Result<LocalityCertificate> {
    let n = code.n();
    if s < 2 || !n.is_multiple_of(s) {
        return Err(Error::InvalidParameters(format!("s = {s} does not divide n = {n}")));
    }
    let classes = contained_classes(code, s);
    let c = classes
        .iter()
        .copied()
        .min_by_key(|&c| (averaging_locality_bound(code.q(), s, c), c))
        .ok_or_else(|| Error::Hypothesis(format!("no class modulo {s} lies in Z")))?;
    let bound = averaging_locality_bound(code.q(), s, c);
    let (_, words) = irreducible_subcode(code, s, c)?;
    let dmin = words.iter().map(|w| weight(w)).filter(|&w| w > 0).min().expect("subcode is nonzero");
    let family: Vec<Vec<Gf>> = words.into_iter().filter(|w| weight(w) == dmin).collect();
    let witness = family.iter().find(|v| !v[0].is_zero()).cloned().expect("cyclic subcode covers coordinate 0");
    let detail = format!("class {c} mod {s}, minimum subcode weight {dmin}");
    certify(code, Source::IrreducibleAveraging, bound, detail, witness, &family, None)
}

/// Ternary codes with Z ⊇ class c modulo t, gcd(c, t) = 1, m = ord_t(3) even and
/// gcd((3^m − 1)/2, N) = 2: recovery sets of size < 2(3^m − 3^{m/2})/(3N).
pub fn ternary_two_weight_locality(code: &CyclicCode, t: usize) -> Result<LocalityCertificate> {
    if code.q() != 3 {
        return Err(Error::InvalidParameters("ternary code required".into()));
    }
    let n = code.n();
    if t < 2 || !n.is_multiple_of(t) {
        return Err(Error::InvalidParameters(format!("t = {t} does not divide n = {n}")));
    }
    let m = multiplicative_order(3, t as u64).ok_or(Error::NotCoprime { n: t as u64, q: 3 })? as u32;
    if !m.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("ord_{t}(3) = {m} is odd")));
    }
    let qm = 3u64.pow(m);
    let big_n = (qm - 1) / t as u64;
    if gcd((qm - 1) / 2, big_n) != 2 {
        return Err(Error::Hypothesis(format!("gcd((3^{m} − 1)/2, {big_n}) ≠ 2")));
    }
    let c = contained_classes(code, t)
        .into_iter()
        .find(|&c| gcd(c as u64, t as u64) == 1)
        .ok_or_else(|| Error::Hypothesis(format!("no class coprime to {t} modulo {t} lies in Z")))?;
    let w = (2 * (qm - 3u64.pow(m / 2)) / (3 * big_n)) as usize;
    let count = 3u64.pow(m - 1) - 3u64.pow(m / 2 - 1);
    let (_, words) = irreducible_subcode(code, t, c)?;
    let family: Vec<Vec<Gf>> = words.into_iter().filter(|v| weight(v) == w).collect();
    let covering = family.iter().filter(|v| !v[0].is_zero()).count() as u64;
    if covering != count {
        return Err(Error::CertificateRejected(format!("{covering} weight-{w} words cover coordinate 0, expected {count}")));
    }
    let witness = family.iter().find(|v| !v[0].is_zero()).cloned().expect("count is positive");
    let detail = format!("class {c} mod {t}, m = {m}, N = {big_n}, weight {w}");
    certify(code, Source::TernaryTwoWeight, w - 1, detail, witness, &family, Some(count))
}

/// One residue class {i : i ≡ l (mod p)} with p | n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ResidueClass {
    pub p: usize,
    pub l: usize,
}

/// f = Σ ε_i p_i^{−1} f_i with f_i(x) = Σ_{j<p_i} (α^{l_i} x)^{j n/p_i}; ε_i = +1 except
/// ε_2 = −1 in odd characteristic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymDiffCertificate {
    pub classes: Vec<ResidueClass>,
    /// Coefficients of f by exponent (locator-field encoding).
    pub coefficients: BTreeMap<usize, Gf>,
    pub weight: usize,
    pub formula_weight: usize,
    pub bound_r: usize,
}

impl SymDiffCertificate {
    pub fn word(&self, n: usize) -> Vec<Gf> {
        let mut w = vec![Gf::ZERO; n];
        for (&e, &c) in &self.coefficients {
            w[e] = c;
        }
        w
    }
}

fn g2(a: &ResidueClass, b: &ResidueClass) -> usize {
    gcd(gcd(a.p as u64, b.p as u64), (a.l as i64 - b.l as i64).unsigned_abs()) as usize
}

fn g3(a: &ResidueClass, b: &ResidueClass, c: &ResidueClass) -> usize {
    gcd(
        gcd(gcd(a.p as u64, b.p as u64), c.p as u64),
        gcd((a.l as i64 - b.l as i64).unsigned_abs(), (b.l as i64 - c.l as i64).unsigned_abs()),
    ) as usize
}

/// Inclusion–exclusion upper bound on the weight of the class polynomial in characteristic 2:
/// Σ p_i − 2 Σ gcd(p_i, p_j, l_i − l_j) (+ 4 gcd of all three).
pub fn symdiff_formula(classes: &[ResidueClass]) -> usize {
    match classes {
        [a, b] => (a.p + b.p).saturating_sub(2 * g2(a, b)),
        [a, b, c] => (a.p + b.p + c.p + 4 * g3(a, b, c)).saturating_sub(2 * (g2(a, b) + g2(a, c) + g2(b, c))),
        _ => classes.iter().map(|c| c.p).sum(),
    }
}

/// Exact weight of the class polynomial in characteristic 2, when it has a closed form:
/// any two classes, or three classes with a common offset.
pub fn symdiff_exact_weight(classes: &[ResidueClass]) -> Option<usize> {
    let g = |a: &ResidueClass, b: &ResidueClass| gcd(a.p as u64, b.p as u64) as usize;
    match classes {
        [a, b] => Some(a.p + b.p - g(a, b) - g2(a, b)),
        [a, b, c] if a.l == b.l && b.l == c.l => Some(a.p + b.p + c.p + 4 * g3(a, b, c) - 2 * (g2(a, b) + g2(a, c) + g2(b, c))),
        _ => None,
    }
}

/// Exponents lying in an odd number of the classes.
pub fn odd_multiplicity(n: usize, classes: &[ResidueClass]) -> Vec<usize> {
    (0..n).filter(|&i| classes.iter().filter(|c| i % c.p == c.l % c.p).count() % 2 == 1).collect()
}

/// Σ ε_i p_i^{−1} (α^{sign·l_i} x)^{j n/p_i} as an exponent → coefficient map.
fn class_polynomial(code: &CyclicCode, classes: &[ResidueClass], sign: i64) -> Result<BTreeMap<usize, Gf>> {
    let f = code.locator();
    let n = code.n();
    let odd = f.characteristic() != 2;
    let mut coeffs: BTreeMap<usize, Gf> = BTreeMap::new();
    for (idx, c) in classes.iter().enumerate() {
        let mut scale = f.inv(f.from_int(c.p as i64))?;
        if odd && idx == 1 {
            scale = f.neg(scale);
        }
        for j in 0..c.p {
            let e = j * (n / c.p);
            let v = f.mul(scale, code.alpha_pow(sign * (c.l * e) as i64));
            let slot = coeffs.entry(e).or_insert(Gf::ZERO);
            *slot = f.add(*slot, v);
        }
    }
    coeffs.retain(|_, v| !v.is_zero());
    Ok(coeffs)
}

fn validate_classes(code: &CyclicCode, classes: &[ResidueClass]) -> Result<()> {
    let n = code.n();
    if !(2..=3).contains(&classes.len()) {
        return Err(Error::InvalidParameters("two or three residue classes are required".into()));
    }
    if classes.len() == 3 && code.locator().characteristic() != 2 {
        return Err(Error::InvalidParameters("three classes require characteristic 2".into()));
    }
    if let Some(c) = classes.iter().find(|c| c.p == 0 || !n.is_multiple_of(c.p)) {
        return Err(Error::InvalidParameters(format!("p = {} does not divide n = {n}", c.p)));
    }
    Ok(())
}

/// Dual word from residue classes whose odd-multiplicity union lies in Z.
pub fn symdiff_dual_vector(code: &CyclicCode, classes: &[ResidueClass]) -> Result<SymDiffCertificate> {
    validate_classes(code, classes)?;
    let classes: Vec<ResidueClass> = classes.iter().map(|c| ResidueClass { p: c.p, l: c.l % c.p }).collect();
    let n = code.n();
    if let Some(i) = odd_multiplicity(n, &classes).into_iter().find(|&i| !code.is_zero(i as i64)) {
        return Err(Error::Hypothesis(format!("exponent {i} lies in an odd number of classes but not in Z")));
    }
    let coefficients = class_polynomial(code, &classes, 1)?;
    if coefficients.is_empty() {
        return Err(Error::Degenerate("the class polynomials cancel completely".into()));
    }
    let cert = SymDiffCertificate {
        weight: coefficients.len(),
        formula_weight: symdiff_formula(&classes),
        bound_r: coefficients.len() - 1,
        classes,
        coefficients,
    };
    let word = cert.word(n);
    check_dual_word(&word, &code.generator_matrix(), code.locator(), n)?;
    if code.locator().characteristic() == 2 {
        if cert.weight > cert.formula_weight {
            return Err(Error::CertificateRejected(format!(
                "weight {} exceeds the counting bound {}",
                cert.weight, cert.formula_weight
            )));
        }
        if let Some(w) = symdiff_exact_weight(&cert.classes).filter(|&w| w != cert.weight) {
            return Err(Error::CertificateRejected(format!("weight {} differs from the exact count {w}", cert.weight)));
        }
    }
    Ok(cert)
}

/// The symmetric-difference certificate as a locality certificate.
pub fn symdiff_locality(code: &CyclicCode, classes: &[ResidueClass]) -> Result<LocalityCertificate> {
    let cert = symdiff_dual_vector(code, classes)?;
    let word = cert.word(code.n());
    let detail = cert.classes.iter().map(|c| format!("{} mod {}", c.l, c.p)).collect::<Vec<_>>().join(" △ ");
    certify(code, Source::SymmetricDifference, cert.bound_r, detail, word.clone(), &[word], None)
}

/// Bitset over exponents 0..n.
#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn class(n: usize, c: ResidueClass) -> Bits {
        let mut b = vec![0u64; n.div_ceil(64)];
        for i in (c.l..n).step_by(c.p) {
            b[i / 64] |= 1 << (i % 64);
        }
        Bits(b)
    }

    fn from_set(n: usize, set: impl IntoIterator<Item = usize>) -> Bits {
        let mut b = vec![0u64; n.div_ceil(64)];
        for i in set {
            b[i / 64] |= 1 << (i % 64);
        }
        Bits(b)
    }

    fn xor(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a ^ b).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn disjoint(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == 0)
    }
}

/// Longest length for which three-class combinations are scanned.
pub const TRIPLE_SCAN_LIMIT: usize = 128;

/// Candidate class tuples (pairs, and triples in characteristic 2 for n ≤ 128), with their
/// odd-multiplicity masks, filtered by `keep` and ordered by the weight of the class
/// polynomial with exponent sign `sign`. Tuples whose polynomial vanishes are dropped.
fn scan_classes(code: &CyclicCode, sign: i64, keep: impl Fn(&Bits) -> bool) -> Result<Vec<(usize, Vec<ResidueClass>)>> {
    let n = code.n();
    let divs: Vec<usize> = divisors(n).into_iter().filter(|&p| p > 1).collect();
    let classes: Vec<(ResidueClass, Bits)> = divs
        .iter()
        .flat_map(|&p| (0..p).map(move |l| ResidueClass { p, l }))
        .map(|c| (c, Bits::class(n, c)))
        .collect();
    let mut found = Vec::new();
    for (i, (a, ba)) in classes.iter().enumerate() {
        for (b, bb) in &classes[i + 1..] {
            let x = ba.xor(bb);
            if !x.is_zero() && keep(&x) {
                found.push(vec![*a, *b]);
            }
        }
    }
    if code.locator().characteristic() == 2 && n <= TRIPLE_SCAN_LIMIT {
        for (i, (a, ba)) in classes.iter().enumerate() {
            for (j, (b, bb)) in classes.iter().enumerate().skip(i + 1) {
                let ab = ba.xor(bb);
                for (c, bc) in &classes[j + 1..] {
                    let x = ab.xor(bc);
                    if !x.is_zero() && keep(&x) {
                        found.push(vec![*a, *b, *c]);
                    }
                }
            }
        }
    }
    let mut weighted = Vec::with_capacity(found.len());
    for classes in found {
        let w = class_polynomial(code, &classes, sign)?.len();
        if w > 0 {
            weighted.push((w, classes));
        }
    }
    weighted.sort();
    Ok(weighted)
}

/// Smallest-weight symmetric-difference locality certificate found by scanning all pairs
/// (and, in characteristic 2, triples) of residue classes.
pub fn best_symdiff_locality(code: &CyclicCode) -> Result<Option<LocalityCertificate>> {
    let n = code.n();
    let z = Bits::from_set(n, code.zeros().iter().copied());
    for (_, classes) in scan_classes(code, 1, |x| x.subset_of(&z))? {
        match symdiff_locality(code, &classes) {
            Ok(c) => return Ok(Some(c)),
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Every certificate the scans produce, sorted by bound (then by source).
pub fn locality_certificates(code: &CyclicCode) -> Result<Vec<LocalityCertificate>> {
    let n = code.n();
    let mut out = coset_certificates(code)?;
    for s in divisors(n).into_iter().filter(|&s| s > 1) {
        if contained_classes(code, s).is_empty() {
            continue;
        }
        if code.q() == 2 && (s + 1).is_power_of_two() {
            match binary_coset_locality(code, (s + 1).trailing_zeros()) {
                Ok(c) => out.push(c),
                Err(Error::Hypothesis(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match qary_coset_locality(code, s) {
            Ok(c) => out.push(c),
            Err(Error::EnumerationCeiling { .. }) => {}
            Err(e) => return Err(e),
        }
        if code.q() == 3 {
            match ternary_two_weight_locality(code, s) {
                Ok(c) => out.push(c),
                Err(Error::Hypothesis(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    if let Some(c) = best_symdiff_locality(code)? {
        out.push(c);
    }
    out.sort_by(|a, b| a.bound_r.cmp(&b.bound_r).then(a.source.cmp(&b.source)).then(a.detail.cmp(&b.detail)));
    Ok(out)
}

/// Exact and predicted intersection of recovery-set supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub rank: usize,
    /// 2^{z − rank}.
    pub bound: usize,
    /// |∩ S_i| over full supports, coordinate 0 included.
    pub support_intersection: usize,
    /// The same with coordinate 0 removed.
    pub recovery_intersection: usize,
}

/// Intersections of the supports of the simplex words behind a binary certificate.
pub fn recovery_intersection(cert: &LocalityCertificate, indices: &[usize], z: u32, field: &FieldTable) -> Result<Intersection> {
    if indices.is_empty() {
        return Err(Error::InvalidParameters("index set is empty".into()));
    }
    if cert.source != Source::BinarySimplex {
        return Err(Error::InvalidParameters("intersection bounds apply to simplex certificates".into()));
    }
    let words: Vec<Vec<Gf>> = indices
        .iter()
        .map(|&i| cert.recovery_words.get(i).cloned().ok_or_else(|| Error::InvalidParameters(format!("no recovery set {i}"))))
        .collect::<Result<_>>()?;
    let rank = linalg::rank(&words, field);
    let n = words[0].len();
    let common = (0..n).filter(|&t| words.iter().all(|w| !w[t].is_zero())).count();
    Ok(Intersection {
        rank,
        bound: 1usize << (z as usize).saturating_sub(rank),
        support_intersection: common,
        recovery_intersection: common.saturating_sub(1),
    })
}

/// How an upper bound on d was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceSource {
    /// Z misses a whole residue class modulo m.
    AvoidedClass,
    /// Z misses the odd-multiplicity union of several classes.
    AvoidedSymmetricDifference,
}

/// d ≤ `bound`, witnessed by a codeword over the symbol field.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceBound {
    pub bound: usize,
    pub source: DistanceSource,
    pub classes: Vec<ResidueClass>,
    pub formula_weight: usize,
    pub witness_support: Vec<usize>,
    pub witness_values: Vec<Gf>,
}

/// Lower (BCH) and upper bounds on d, exact when they meet.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceSummary {
    pub bch: BchCertificate,
    pub upper: Vec<DistanceBound>,
    pub exact: Option<usize>,
}

impl DistanceSummary {
    pub fn best_upper(&self) -> Option<usize> {
        self.upper.iter().map(|b| b.bound).min()
    }
}

/// Traces an extension-field codeword of a code with Galois-closed zeros down to the
/// symbol field, using the first γ that gives a nonzero word.
fn trace_to_symbols(code: &CyclicCode, word: &[Gf]) -> Result<Option<Vec<Gf>>> {
    let f = code.locator();
    let top = f.degree();
    let sub = code.symbol().m;
    if word.iter().all(|&x| f.in_subfield(x, sub)) {
        return Ok(Some(word.to_vec()));
    }
    for k in 0..top as u64 {
        let gamma = f.exp(k);
        let traced: Vec<Gf> = word.iter().map(|&x| f.relative_trace(f.mul(gamma, x), top, sub)).collect::<Result<_>>()?;
        if traced.iter().any(|x| !x.is_zero()) {
            return Ok(Some(traced));
        }
    }
    Ok(None)
}

fn distance_bound(code: &CyclicCode, source: DistanceSource, classes: Vec<ResidueClass>) -> Result<Option<DistanceBound>> {
    let n = code.n();
    let coeffs = class_polynomial(code, &classes, -1)?;
    if coeffs.is_empty() {
        return Ok(None);
    }
    let mut word = vec![Gf::ZERO; n];
    for (&e, &c) in &coeffs {
        word[e] = c;
    }
    let Some(traced) = trace_to_symbols(code, &word)? else { return Ok(None) };
    if !code.contains(&traced) {
        return Err(Error::CertificateRejected("distance witness is not a codeword".into()));
    }
    let witness_support = support(&traced);
    Ok(Some(DistanceBound {
        bound: witness_support.len(),
        source,
        formula_weight: if classes.len() == 1 { classes[0].p } else { symdiff_formula(&classes) },
        witness_values: witness_support.iter().map(|&t| traced[t]).collect(),
        witness_support,
        classes,
    }))
}

/// Upper bounds on d from residue classes avoided by Z, with BCH for the lower side.
pub fn distance_upper_bound(code: &CyclicCode) -> Result<DistanceSummary> {
    let n = code.n();
    let z = Bits::from_set(n, code.zeros().iter().copied());
    let mut upper = Vec::new();
    if let Some(c) = divisors(n)
        .into_iter()
        .filter(|&m| m > 1)
        .flat_map(|p| (0..p).map(move |l| ResidueClass { p, l }))
        .find(|&c| Bits::class(n, c).disjoint(&z))
    {
        upper.extend(distance_bound(code, DistanceSource::AvoidedClass, vec![c])?);
    }
    for (_, classes) in scan_classes(code, -1, |x| x.disjoint(&z))? {
        if classes.len() == 3 && code.locator().characteristic() != 2 {
            continue;
        }
        if let Some(b) = distance_bound(code, DistanceSource::AvoidedSymmetricDifference, classes)? {
            upper.push(b);
            break;
        }
    }
    upper.sort_by(|a, b| a.bound.cmp(&b.bound).then(a.source.cmp(&b.source)));
    let bch = code.bch_bound();
    let best = upper.first().map(|b| b.bound);
    let exact = best.filter(|&u| u == bch.bound);
    Ok(DistanceSummary { bch, upper, exact })
}

/// Whether the recovery sets of two certificates for coordinate 0 include a disjoint pair.
pub fn disjoint_pair(a: &LocalityCertificate, b: &LocalityCertificate) -> Option<(Vec<usize>, Vec<usize>)> {
    for x in &a.recovery_sets {
        let xs: BTreeSet<usize> = x.iter().copied().collect();
        if let Some(y) = b.recovery_sets.iter().find(|y| y.iter().all(|j| !xs.contains(j))) {
            return Some((x.clone(), y.clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::SymbolField;
    use crate::oracle::Oracle;

    fn binary(n: usize, reps: &[i64]) -> CyclicCode {
        CyclicCode::new(n, SymbolField::binary(), reps).unwrap()
    }

    #[test]
    fn lemma2_shifts_partition() {
        let code = binary(45, &[0, 3, 5, 9]);
        let cert = coset_locality(&code, 8).unwrap().unwrap();
        assert_eq!(cert.bound_r, 8);
        assert_eq!(cert.recovery_sets.len(), 1);
        let mut seen = [false; 45];
        for i in 0..5 {
            let mut block = cert.recovery_sets_for(i, 45)[0].clone();
            block.push(i);
            for t in block {
                assert!(!seen[t]);
                seen[t] = true;
            }
        }
        assert!(seen.iter().all(|&x| x));
        assert!(coset_locality(&code, 4).unwrap().is_none());
    }

    #[test]
    fn lemma2_with_nonzero_class() {
        let q16 = SymbolField::new(2, 4);
        let code = CyclicCode::new(15, q16, &[1, 4, 7, 10, 13, 2]).unwrap();
        let cert = coset_locality(&code, 2).unwrap().unwrap();
        assert!(cert.detail.starts_with("class 1"));
        assert!(cert.witness_values.iter().any(|&v| v != Gf::ONE));
    }

    #[test]
    fn simplex_certificates() {
        let code = binary(35, &[1, 15]);
        let cert = binary_coset_locality(&code, 3).unwrap();
        assert_eq!((cert.bound_r, cert.count_per_symbol), (3, 4));
        let code = binary(27, &[1, 9]);
        let cert = binary_coset_locality(&code, 2).unwrap();
        assert_eq!((cert.bound_r, cert.count_per_symbol), (1, 2));
        assert!(matches!(binary_coset_locality(&binary(35, &[3]), 3), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn degenerate_averaging() {
        let code = binary(63, &[3, 27]);
        assert_eq!(averaging_locality_bound(2, 21, 3), 11);
        let cert = qary_coset_locality(&code, 21).unwrap();
        assert_eq!(cert.bound_r, 11);
        assert_eq!(cert.witness_support.len(), 12);
        assert_eq!(averaging_locality_bound(2, 7, 1), 3);
        assert_eq!(averaging_locality_bound(5, 4, 1), 3);
    }

    #[test]
    fn symdiff_example() {
        let code = binary(45, &[3, 5, 9, 21]);
        let classes = [ResidueClass { p: 3, l: 0 }, ResidueClass { p: 5, l: 0 }];
        let cert = symdiff_dual_vector(&code, &classes).unwrap();
        assert_eq!(cert.weight, 6);
        assert_eq!(cert.coefficients.keys().copied().collect::<Vec<_>>(), vec![9, 15, 18, 27, 30, 36]);
        let same = [ResidueClass { p: 3, l: 1 }, ResidueClass { p: 3, l: 1 }];
        assert!(matches!(symdiff_dual_vector(&code, &same), Err(Error::Degenerate(_))));
        let best = best_symdiff_locality(&code).unwrap().unwrap();
        assert_eq!(best.bound_r, 5);
    }

    #[test]
    fn symdiff_hypothesis_failure() {
        let code = binary(45, &[3, 5]);
        let classes = [ResidueClass { p: 3, l: 0 }, ResidueClass { p: 5, l: 0 }];
        assert!(matches!(symdiff_dual_vector(&code, &classes), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn family_distance() {
        let n = 15;
        let zeros: Vec<i64> = (0..n as i64).filter(|&i| i == 0 || (i % 3 != 0 && i % 5 != 0)).collect();
        let code = CyclicCode::new(n, SymbolField::binary(), &zeros).unwrap();
        assert_eq!(code.k(), 6);
        let s = distance_upper_bound(&code).unwrap();
        assert_eq!(s.bch.bound, 6);
        assert_eq!(s.best_upper(), Some(6));
        assert_eq!(s.exact, Some(6));
        assert_eq!(Oracle::default().min_distance(&code).unwrap(), Some(6));
    }

    #[test]
    fn empty_zero_set() {
        let code = binary(15, &[]);
        let s = distance_upper_bound(&code).unwrap();
        let class = s.upper.iter().find(|b| b.source == DistanceSource::AvoidedClass).unwrap();
        assert_eq!(class.bound, 3);
        assert!(s.best_upper().unwrap() >= Oracle::default().min_distance(&code).unwrap().unwrap());
        assert_eq!(s.bch.bound, 1);
    }

    #[test]
    fn intersections_of_simplex_sets() {
        let code = binary(63, &[1, 9, 11, 15, 23]);
        let cert = binary_coset_locality(&code, 3).unwrap();
        let field = FieldTable::cached(2, 6).unwrap();
        let one = recovery_intersection(&cert, &[0], 3, &field).unwrap();
        assert_eq!(one.support_intersection, 4);
        for i in 0..4 {
            for j in i + 1..4 {
                let x = recovery_intersection(&cert, &[i, j], 3, &field).unwrap();
                assert_eq!(x.recovery_intersection, 1);
                assert!(x.support_intersection <= x.bound);
                for k in j + 1..4 {
                    let y = recovery_intersection(&cert, &[i, j, k], 3, &field).unwrap();
                    assert_eq!((y.rank, y.recovery_intersection), (3, 0));
                }
            }
        }
        assert!(recovery_intersection(&cert, &[], 3, &field).is_err());
    }

    #[test]
    fn repair_through_certificate() {
        let code = binary(21, &[0, 1, 7]);
        let cert = coset_locality(&code, 6).unwrap().unwrap();
        let gen = code.generator_matrix();
        let f = code.locator();
        let word: Vec<Gf> = (0..21).map(|t| gen.iter().take(3).fold(Gf::ZERO, |a, r| f.add(a, r[t]))).collect();
        let partial: Vec<Option<Gf>> = word.iter().map(|&x| Some(x)).collect();
        for pos in 0..21 {
            let mut w = partial.clone();
            w[pos] = None;
            assert_eq!(cert.repair(&w, pos, f).unwrap(), word[pos]);
        }
    }
}
