use cyclrc::bounds::{lp_bound, shortening_bound};
use cyclrc::cyclic::{CyclicCode, SymbolField};
use cyclrc::field::cyclotomic_cosets;
use cyclrc::locality::{locality_certificates, symdiff_dual_vector, symdiff_exact_weight, symdiff_formula, ResidueClass};
use cyclrc::lrc_rs::{theorem1_code, Theorem1Params};
use cyclrc::oracle::{naive_weight_distribution, SymbolCode};
use cyclrc::{Error, Exec, Oracle};
use proptest::prelude::*;

const LENGTHS: [usize; 8] = [15, 21, 27, 35, 45, 63, 85, 105];

fn code_from_mask(n: usize, symbol: SymbolField, mask: u64) -> CyclicCode {
    let cosets = cyclotomic_cosets(n, symbol.order()).unwrap();
    let reps: Vec<i64> =
        cosets.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, c)| c.rep as i64).collect();
    CyclicCode::new(n, symbol, &reps).unwrap()
}

fn class_strategy() -> impl Strategy<Value = (usize, Vec<ResidueClass>)> {
    (prop::sample::select(LENGTHS.to_vec()), any::<u64>(), any::<bool>()).prop_map(|(n, seed, triple)| {
        let divs: Vec<usize> = (2..=n).filter(|p| n % p == 0).collect();
        let pick = |s: u64| divs[(s % divs.len() as u64) as usize];
        let (p1, p2, p3) = (pick(seed), pick(seed >> 8), pick(seed >> 16));
        let classes = if triple {
            let shared = seed >> 63 == 1;
            let l = |shift: u32, p: usize| if shared { (seed >> 24) as usize % p1.min(p2).min(p3) } else { (seed >> shift) as usize % p };
            vec![ResidueClass { p: p1, l: l(24, p1) }, ResidueClass { p: p2, l: l(32, p2) }, ResidueClass { p: p3, l: l(40, p3) }]
        } else {
            vec![ResidueClass { p: p1, l: (seed >> 24) as usize % p1 }, ResidueClass { p: p2, l: (seed >> 40) as usize % p2 }]
        };
        (n, classes)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symdiff_formula_matches_weight((n, classes) in class_strategy()) {
        let odd = cyclrc::locality::odd_multiplicity(n, &classes);
        prop_assume!(!odd.is_empty());
        let reps: Vec<i64> = odd.iter().map(|&i| i as i64).collect();
        let code = CyclicCode::new(n, SymbolField::binary(), &reps).unwrap();
        let exact = symdiff_exact_weight(&classes);
        let weight = match symdiff_dual_vector(&code, &classes) {
            Ok(cert) => {
                prop_assert!(code.orthogonal_to_code(&cert.word(n)));
                cert.weight
            }
            Err(Error::Degenerate(_)) => 0,
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(weight <= symdiff_formula(&classes));
        if let Some(w) = exact {
            prop_assert_eq!(weight, w);
        }
        if let [a, b] = classes.as_slice() {
            let aligned = (a.l as i64 - b.l as i64).rem_euclid(cyclrc::arith::gcd(a.p as u64, b.p as u64) as i64) == 0;
            if aligned {
                prop_assert_eq!(weight, symdiff_formula(&classes));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shortening_bound_is_monotone(n in 6usize..40, d in 2usize..6, r in 1usize..6) {
        prop_assume!(r + d <= n);
        let k = |n, d| shortening_bound(n, d, r, 2).map(|b| b.k_bound);
        if let (Ok(a), Ok(b)) = (k(n, d), k(n + 1, d)) {
            prop_assert!(a <= b, "n: {} > {}", a, b);
        }
        if let (Ok(a), Ok(b)) = (k(n, d), k(n, d + 1)) {
            prop_assert!(b <= a, "d: {} < {}", a, b);
        }
    }

    #[test]
    fn certificates_never_beat_the_oracle(n in prop::sample::select(vec![15usize, 21, 27, 35, 45]), mask in any::<u64>()) {
        let code = code_from_mask(n, SymbolField::binary(), mask);
        let oracle = Oracle::new(1 << 22, Exec::Parallel);
        let exact = match oracle.exact_locality(&code) {
            Ok(l) => l.r,
            Err(e) if e.is_resource_limit() => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for cert in locality_certificates(&code).unwrap() {
            cert.verify(&code).unwrap();
            let r = exact.expect("a certificate implies a covering dual word");
            prop_assert!(cert.bound_r >= r, "{:?} claims {} < {}", cert.source, cert.bound_r, r);
        }
    }

    #[test]
    fn nonbinary_certificates_never_beat_the_oracle(
        (n, symbol) in prop::sample::select(vec![(8usize, SymbolField::new(3, 1)), (20, SymbolField::new(3, 1)), (15, SymbolField::new(2, 2)), (21, SymbolField::new(2, 2))]),
        mask in any::<u64>(),
    ) {
        let code = code_from_mask(n, symbol, mask);
        let oracle = Oracle::new(1 << 22, Exec::Parallel);
        let Ok(exact) = oracle.exact_locality(&code) else { return Ok(()) };
        for cert in locality_certificates(&code).unwrap() {
            prop_assert!(cert.bound_r >= exact.r.unwrap());
        }
    }

    #[test]
    fn duality_and_bch(n in prop::sample::select(vec![7usize, 9, 15, 21, 31, 35]), mask in any::<u64>()) {
        let code = code_from_mask(n, SymbolField::binary(), mask);
        let dual = code.dual();
        prop_assert_eq!(code.k() + dual.k(), n);
        prop_assert_eq!(dual.dual().zeros().to_vec(), code.zeros().to_vec());
        let oracle = Oracle::new(1 << 22, Exec::Parallel);
        if let Ok(Some(d)) = oracle.min_distance(&code) {
            prop_assert!(code.bch_bound().bound <= d);
        }
    }

    #[test]
    fn gray_enumeration_matches_naive(
        (n, symbol) in prop::sample::select(vec![(7usize, SymbolField::binary()), (15, SymbolField::binary()), (8, SymbolField::new(3, 1)), (5, SymbolField::new(2, 2)), (6, SymbolField::new(7, 1))]),
        mask in any::<u64>(),
    ) {
        let code = code_from_mask(n, symbol, mask);
        let sc = SymbolCode::primal(&code).unwrap();
        prop_assume!(sc.size() <= 1 << 12);
        let oracle = Oracle::new(1 << 12, Exec::Parallel);
        prop_assert_eq!(oracle.weight_distribution(&sc).unwrap(), naive_weight_distribution(&sc));
    }

    #[test]
    fn theorem1_locality_is_r(
        (q, n, r) in prop::sample::select(vec![
            (SymbolField::new(13, 1), 12usize, 3usize),
            (SymbolField::new(13, 1), 12, 2),
            (SymbolField::new(13, 1), 12, 1),
            (SymbolField::new(2, 4), 15, 2),
            (SymbolField::new(2, 4), 15, 4),
            (SymbolField::new(3, 2), 8, 3),
            (SymbolField::new(11, 1), 10, 4),
        ]),
        mu in 1usize..4,
    ) {
        let k = mu * r;
        prop_assume!(k + mu <= n);
        let code = theorem1_code(&Theorem1Params::new(n, k, r, q)).unwrap();
        let smaller = k.min(n - k) as f64 * (q.order() as f64).log2();
        prop_assume!(smaller <= 24.0);
        let oracle = Oracle::new(1 << 24, Exec::Parallel);
        prop_assert_eq!(oracle.exact_locality(&code).unwrap().r, Some(r));
        let g = code.generator_matrix();
        for row in &g {
            let mut shifted = row.clone();
            shifted.rotate_right(1);
            prop_assert!(code.contains(&shifted));
        }
    }
}

#[test]
fn suite_codes_respect_dimension_bounds() {
    let oracle = Oracle::new(1 << 28, Exec::Parallel);
    let codes = [
        (45, vec![0i64, 3, 5, 9]),
        (21, vec![0, 1, 7]),
        (35, vec![1, 15]),
        (45, vec![1]),
        (27, vec![1, 9]),
        (45, vec![3, 5, 9, 21]),
    ];
    for (n, reps) in codes {
        let code = CyclicCode::new(n, SymbolField::binary(), &reps).unwrap();
        let rep = oracle.report(&code).unwrap();
        let (d, r) = (rep.d_min.unwrap(), rep.r_exact.unwrap());
        let sh = shortening_bound(n, d, r, 2).unwrap().k_bound;
        let lp = lp_bound(n, d, r, 2).unwrap().k_bound;
        assert!(code.k() <= sh, "n={n}: k={} > SH={sh}", code.k());
        assert!(code.k() <= lp, "n={n}: k={} > LP={lp}", code.k());
    }
}
