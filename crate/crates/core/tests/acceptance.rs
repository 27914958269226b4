#![allow(clippy::needless_range_loop)]

//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion 5 grades the published worked-example values for the [10, 6]
//! code. Three of its sub-items are known to disagree with this
//! implementation (and with each other): the published codeword is not a
//! member of the code under any convention we could construct, and the
//! exhaustive distances are d_H = 5, d_R = 3 rather than the published 4, 4.
//! Those sub-items are asserted as published and fail honestly; the fact
//! base is recorded in the test output.

use orecode_core::bounds::{self, Mode};
use orecode_core::code::{self, rank_weight, Metric, SkewCode};
use orecode_core::equiv::{self, TrinomialShape};
use orecode_core::field::{FieldAutomorphism, FieldElement, FiniteField, SubfieldEmbedding};
use orecode_core::frame::{DefiningSet, ExtensionFrame, FrameOptions};
use orecode_core::skew::SkewPoly;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

fn ring(p: u64, s: u32, r: u32) -> FieldAutomorphism {
    let f = FiniteField::new(p, s, None).unwrap();
    FieldAutomorphism::new(f, r).unwrap()
}

fn worked_example() -> (FieldAutomorphism, SkewPoly, SkewPoly) {
    let base = FiniteField::new(2, 6, Some(&[1, 1, 0, 1, 1, 0, 1])).unwrap();
    let aut = FieldAutomorphism::new(base.clone(), 1).unwrap();
    let w = |k: u64| base.generator_pow(k);
    let z = base.zero();
    let f = SkewPoly::from_coeffs(
        &aut,
        vec![w(54), w(7), w(60), z, w(42), w(46), w(12), z, w(39), w(40), base.one()],
    );
    let g = SkewPoly::from_coeffs(&aut, vec![w(33), w(23), w(46), w(52), base.one()]);
    (aut, f, g)
}

fn random_nonzero(ctx: &FieldAutomorphism, rng: &mut StdRng, max_deg: usize) -> SkewPoly {
    let f = ctx.field();
    loop {
        let d = rng.random_range(0..=max_deg);
        let coeffs = (0..=d).map(|_| f.from_index(rng.random_range(0..f.order()))).collect();
        let p = SkewPoly::from_coeffs(ctx, coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

fn passed(n: u32, name: &str) {
    println!("acceptance criterion {n} ({name}): PASS");
}

#[test]
fn criterion_01_ore_ring_suite() {
    let t0 = Instant::now();
    let contexts = [
        ring(2, 2, 0),
        ring(2, 2, 1),
        ring(2, 3, 0),
        ring(2, 3, 1),
        ring(2, 3, 2),
        ring(3, 2, 0),
        ring(3, 2, 1),
    ];
    let mut rng = StdRng::seed_from_u64(1);
    for ctx in &contexts {
        for _ in 0..10_000 {
            let a = random_nonzero(ctx, &mut rng, 6);
            let b = random_nonzero(ctx, &mut rng, 6);
            // degree additivity
            assert_eq!(a.mul(&b).degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
            // division round-trips, both sides
            let (q, r) = a.right_divmod(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            let (ql, rl) = a.left_divmod(&b).unwrap();
            assert_eq!(b.mul(&ql).add(&rl), a);
            // gcrd / lclm degree identity and the Bezout cofactors
            let (d, u, v) = SkewPoly::gcrd_extended(&a, &b).unwrap();
            assert_eq!(u.mul(&a).add(&v.mul(&b)), d);
            let m = SkewPoly::lclm(&a, &b).unwrap();
            assert_eq!(
                m.degree().unwrap() + d.degree().unwrap(),
                a.degree().unwrap() + b.degree().unwrap()
            );
            assert!(d.right_divides(&a) && d.right_divides(&b));
            assert!(a.right_divides(&m) && b.right_divides(&m));
        }
    }
    println!("criterion 1 runtime: {:.1?}", t0.elapsed());
    passed(1, "Ore ring suite");
}

#[test]
fn criterion_02_evaluation_consistency() {
    let mut rng = StdRng::seed_from_u64(2);
    for ctx in [ring(2, 2, 1), ring(2, 3, 1), ring(3, 2, 1)] {
        let f = ctx.field();
        for _ in 0..1000 {
            let p = random_nonzero(&ctx, &mut rng, 8);
            let a = f.from_index(rng.random_range(0..f.order()));
            let lin = SkewPoly::from_coeffs(&ctx, vec![f.neg(a), f.one()]);
            let rem = p.right_divmod(&lin).unwrap().1.coeff(0);
            assert_eq!(p.evaluate_right(a), rem);
        }
    }
    passed(2, "evaluation consistency");
}

#[test]
fn criterion_03_worked_example_exponent() {
    let (_, f, _) = worked_example();
    assert_eq!(f.right_exponent(f.default_exponent_cap()).unwrap(), 12);
    passed(3, "worked-example exponent");
}

const BIG_MODULUS: [u64; 13] = [1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1];
const PUBLISHED_ORBITS: [&str; 6] = [
    "x^2 + g^38*x + g^58",
    "x^2 + g^13*x + g^53",
    "x^2 + g^26*x + g^43",
    "x^2 + g^52*x + g^23",
    "x^2 + g^41*x + g^46",
    "x^2 + g^19*x + g^29",
];

fn matching_frame(aut: &FieldAutomorphism) -> Option<ExtensionFrame> {
    for embed in 0..aut.field().degree() as usize {
        let opts = FrameOptions {
            big_modulus: Some(BIG_MODULUS.to_vec()),
            embed_index: Some(embed),
            ..Default::default()
        };
        let frame = ExtensionFrame::build(aut, 12, &opts).unwrap();
        let got: Vec<String> = (0..6).map(|i| frame.orbit_min_poly(i).unwrap().display()).collect();
        if got.iter().map(String::as_str).eq(PUBLISHED_ORBITS) {
            return Some(frame);
        }
    }
    None
}

#[test]
fn criterion_04_worked_example_frame() {
    let (aut, _, _) = worked_example();
    let frame = matching_frame(&aut).expect("one conjugate embedding must reproduce the published orbit polynomials");
    assert_eq!(frame.exponent(), 12);
    assert_eq!(frame.orbit_length(), 2);
    // twelve linear factors fold back to x^12 - 1 exactly
    let factors = frame.factor_unity();
    assert_eq!(factors.len(), 12);
    let fold = factors
        .into_iter()
        .reduce(|acc, lin| SkewPoly::lclm(&acc, &lin).unwrap())
        .unwrap();
    assert_eq!(fold, SkewPoly::x_pow_minus_one(frame.big_ring(), 12));
    // the six orbit polynomials are quadratic with base-field coefficients,
    // and seen over the big field each is the minimal polynomial of its own
    // vanishing set (a W-polynomial)
    for i in 0..6 {
        let m = frame.orbit_min_poly(i).unwrap();
        assert_eq!(m.degree(), Some(2));
        assert_eq!(m.context().field().id(), aut.field().id());
        let lifted = frame.embed_poly(&m);
        assert!(lifted.is_w_polynomial(), "orbit polynomial {i}");
    }
    passed(4, "worked-example frame and orbit polynomials");
}

/// Exact minimum Hamming distance through support-subset null spaces; fully
/// independent of the projective scan.
fn dmin_by_supports(field: &Arc<FiniteField>, rows: &[Vec<FieldElement>]) -> usize {
    let n = rows[0].len();
    let k = rows.len();
    for w in 1..=n {
        let mut subset: Vec<usize> = (0..w).collect();
        loop {
            let off: Vec<usize> = (0..n).filter(|j| !subset.contains(j)).collect();
            let mut mat: Vec<Vec<FieldElement>> =
                off.iter().map(|&j| (0..k).map(|i| rows[i][j]).collect()).collect();
            let mut rank = 0;
            for col in 0..k {
                if let Some(p) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) {
                    mat.swap(rank, p);
                    let inv = field.inv(mat[rank][col]).unwrap();
                    for c in 0..k {
                        mat[rank][c] = field.mul(mat[rank][c], inv);
                    }
                    for r in 0..mat.len() {
                        if r != rank && !mat[r][col].is_zero() {
                            let fc = mat[r][col];
                            for c in 0..k {
                                let t = field.mul(fc, mat[rank][c]);
                                mat[r][c] = field.sub(mat[r][c], t);
                            }
                        }
                    }
                    rank += 1;
                }
            }
            if rank < k {
                return w;
            }
            let mut i = w;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                subset[i] += 1;
                if subset[i] <= n - (w - i) {
                    for j in i + 1..w {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
            if subset[0] > n - w {
                break;
            }
        }
    }
    n + 1
}

#[test]
fn criterion_05_worked_example_code() {
    let t0 = Instant::now();
    let (aut, f, g) = worked_example();
    let base = aut.field().clone();
    let frame = matching_frame(&aut).expect("matching embedding");
    let mut failures: Vec<String> = Vec::new();

    let t = frame.defining_set(&g).unwrap();
    let expect_t: BTreeSet<u64> = [2, 3, 8, 9].into_iter().collect();
    assert_eq!(t.indices(), &expect_t, "defining set");
    assert!(t.is_mu_closed());
    assert_eq!(t.representatives(), [2, 3].into_iter().collect::<BTreeSet<u64>>());
    // the converse direction recovers the published generator from its set
    assert_eq!(frame.generator_from_defining_set(&expect_t).unwrap(), g);

    let lenient = bounds::roos_search(&t, 3, Mode::Lenient);
    assert_eq!(lenient.value(), 4, "lenient certificate value");
    let strict = bounds::roos_search(&t, 3, Mode::Strict);
    assert_eq!(strict.value(), 3, "strict certificate value");
    assert_eq!(bounds::bch_search(&t).value(), 3, "strict BCH value");

    let code_obj = SkewCode::build(&f, &g).unwrap();
    assert_eq!((code_obj.length(), code_obj.dimension()), (10, 6));
    // the twisted shift of every basis codeword stays in the code
    for row in code_obj.generator_matrix().unwrap() {
        let shifted = code_obj.polycyclic_shift(&row).unwrap();
        assert!(code_obj.contains(&shifted));
    }

    let w = |k: u64| base.generator_pow(k);
    let z = base.zero();
    let c = vec![z, z, base.one(), z, z, z, w(37), w(57), z, w(7)];
    let emb = Arc::new(SubfieldEmbedding::new(base.clone(), 1, None).unwrap());
    let rank_c = rank_weight(&c, &emb);
    if rank_c != 4 {
        failures.push(format!("published vector rank weight: expected 4, got {rank_c}"));
    }
    if !code_obj.contains(&c) {
        failures.push("published codeword is not a member of the code".into());
    }

    // deep exhaustive scans against the published [10, 6, 4] values
    let dh = code_obj.min_distance(&Metric::Hamming, code::DEFAULT_DISTANCE_BUDGET).unwrap();
    assert!(dh.exhaustive, "Hamming scan fits the default budget");
    println!("criterion 5 measured d_H = {}", dh.minimum);
    if dh.minimum != 4 {
        failures.push(format!("exhaustive d_H: published 4, measured {}", dh.minimum));
    }
    // independent oracle for the measured Hamming value
    let oracle = dmin_by_supports(&base, &code_obj.generator_matrix().unwrap());
    assert_eq!(oracle, dh.minimum, "support-subset oracle agrees with the scan");

    let dr = code_obj
        .min_distance(&Metric::Rank(emb.clone()), code::DEFAULT_DISTANCE_BUDGET)
        .unwrap();
    assert!(dr.exhaustive);
    println!("criterion 5 measured d_R = {}", dr.minimum);
    // both measured minima come with verifying witness codewords
    assert!(code_obj.contains(&dh.witness));
    assert_eq!(code::hamming_weight(&dh.witness), dh.minimum);
    assert!(code_obj.contains(&dr.witness));
    assert_eq!(rank_weight(&dr.witness, &emb), dr.minimum);
    if dr.minimum != 4 {
        failures.push(format!("exhaustive d_R over GF(2): published 4, measured {}", dr.minimum));
    }
    // the measured rank distance is pinned from both sides: the strict BCH
    // certificate gives >= 3 and the rank Singleton bound gives <= 3
    assert!(dr.minimum >= strict.value() as usize, "strict certificate soundness");
    assert!(
        code_obj.dimension() * 6 <= 10 * (6 - dr.minimum + 1),
        "rank Singleton bound must admit the measured value"
    );
    println!("criterion 5 runtime: {:.1?}", t0.elapsed());

    if failures.is_empty() {
        passed(5, "worked-example code");
    } else {
        for fail in &failures {
            println!("acceptance criterion 5 (worked-example code): FAIL: {fail}");
        }
        panic!(
            "criterion 5: {} published value(s) not reproduced: {}",
            failures.len(),
            failures.join("; ")
        );
    }
}

/// All mu-closed subsets of Z_e as unions of (i + mu Z_e)-orbits.
fn mu_closed_sets(mu: u64, e: u64) -> Vec<BTreeSet<u64>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << mu) {
        let mut set = BTreeSet::new();
        for i in 0..mu {
            if mask >> i & 1 == 1 {
                let mut j = i;
                loop {
                    set.insert(j);
                    j = (j + mu) % e;
                    if j == i {
                        break;
                    }
                }
            }
        }
        out.push(set);
    }
    out
}

#[test]
fn criterion_06_bound_soundness() {
    let t0 = Instant::now();
    let contexts = [ring(2, 2, 1), ring(2, 3, 1), ring(2, 3, 2), ring(3, 2, 1)];
    let mut frames_checked = 0;
    let mut lenient_hamming_overclaims = 0u32;
    let mut lenient_rank_overclaims = 0u32;
    for aut in &contexts {
        let mu = aut.order() as u64;
        let fixed_t = if aut.frobenius_power() == 0 {
            aut.field().degree()
        } else {
            let r = aut.frobenius_power() as u64;
            let s = aut.field().degree() as u64;
            (gcd(r, s)) as u32
        };
        let emb = Arc::new(SubfieldEmbedding::new(aut.field().clone(), fixed_t, None).unwrap());
        let mut e = mu;
        while e <= 8 {
            let frame = ExtensionFrame::build(aut, e, &FrameOptions::default()).unwrap();
            frames_checked += 1;
            let modulus = SkewPoly::x_pow_minus_one(aut, e as usize);
            for set in mu_closed_sets(mu, e) {
                let g = frame.generator_from_defining_set(&set).unwrap();
                assert_eq!(g.degree(), Some(set.len()));
                assert_eq!(frame.defining_set(&g).unwrap().indices(), &set);
                let k = e as usize - set.len();
                if k == 0 {
                    continue;
                }
                let code_obj = SkewCode::build(&modulus, &g.monic()).unwrap();
                let dh = code_obj.min_distance(&Metric::Hamming, u64::MAX).unwrap();
                let dr = code_obj.min_distance(&Metric::Rank(emb.clone()), u64::MAX).unwrap();
                assert!(dh.exhaustive && dr.exhaustive);
                // d_R <= d_H <= n - k + 1 always
                assert!(dr.minimum <= dh.minimum);
                assert!(dh.minimum <= e as usize - k + 1);
                // every strict certificate value lower-bounds both distances
                let t = DefiningSet::new(e, mu, set.clone()).unwrap();
                for cert in [
                    bounds::bch_search(&t),
                    bounds::ht_search(&t, 3),
                    bounds::roos_search(&t, 3, Mode::Strict),
                ] {
                    assert!(bounds::verify_certificate(&cert, &t), "search output verifies");
                    assert!(
                        cert.value() as usize <= dh.minimum,
                        "Hamming soundness: value {} vs d_H {} (e={e}, T={set:?}, {cert:?})",
                        cert.value(),
                        dh.minimum
                    );
                    assert!(
                        cert.value() as usize <= dr.minimum,
                        "rank soundness: value {} vs d_R {} (e={e}, T={set:?}, {cert:?})",
                        cert.value(),
                        dr.minimum
                    );
                }
                // the designed-distance sandwich where both sides exist
                let reps = t.representatives();
                if !set.is_empty() {
                    assert!(dr.minimum <= reps.len() + 1, "d_R <= |S_T| + 1");
                }
                // lenient certificates carry no guarantee; cross-check them
                // against brute force and count the over-claims (they happen
                // in both metrics on this grid, which is why only strict
                // certificates feed the assertions above)
                let lenient = bounds::roos_search(&t, 3, Mode::Lenient);
                if lenient.value() as usize > dh.minimum {
                    lenient_hamming_overclaims += 1;
                }
                if lenient.value() as usize > dr.minimum {
                    lenient_rank_overclaims += 1;
                }
            }
            e += mu;
        }
    }
    println!(
        "criterion 6: {frames_checked} frames checked; lenient over-claims observed: {lenient_hamming_overclaims} Hamming, {lenient_rank_overclaims} rank; in {:.1?}",
        t0.elapsed()
    );
    passed(6, "bound soundness");
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn criterion_07_class_count_table() {
    let gf4 = ring(2, 2, 1);
    assert_eq!(equiv::count_hamming_classes(&gf4, 5, 3, false), 3);
    assert_eq!(equiv::count_hamming_classes(&gf4, 7, 5, false), 3);
    assert_eq!(equiv::count_hamming_classes(&gf4, 4, 2, false), 9);
    assert_eq!(equiv::count_hamming_classes(&gf4, 6, 2, false), 9);
    assert_eq!(equiv::count_hamming_classes(&gf4, 5, 2, false), 3);
    assert_eq!(equiv::count_hamming_classes(&gf4, 4, 3, false), 3);
    let gf8 = ring(2, 3, 1);
    for (n, l) in [(5u64, 3u64), (4, 3), (7, 3), (5, 1)] {
        if gcd(n, 3) == 1 && gcd(n - l, 3) == 1 {
            assert_eq!(equiv::count_hamming_classes(&gf8, n, l, false), 7);
        }
    }
    let gf9 = ring(3, 2, 1);
    assert_eq!(equiv::count_hamming_classes(&gf9, 5, 3, false), 8);
    assert_eq!(equiv::count_hamming_classes(&gf9, 7, 1, false), 8);
    for s in [2u32, 3, 4, 5] {
        for r in 1..s {
            if gcd(r as u64, s as u64) == 1 {
                let aut = ring(2, s, r);
                let expect = ((1u64 << s) - 1).pow(2);
                assert_eq!(equiv::count_rank_classes(&aut, 5, 3, 2), expect);
                assert_eq!(equiv::count_rank_classes(&aut, 7, 2, 2), expect);
            }
        }
    }
    passed(7, "class counts against the published tables");
}

/// Brute-force orbit count of the alpha-action on (F_q^*)^m for the given
/// support, with alpha ranging over the nonzero elements of `alphas`.
fn brute_orbits(
    aut: &FieldAutomorphism,
    n: u64,
    support: &[u64],
    alphas: &[FieldElement],
) -> u64 {
    let f = aut.field();
    let units: Vec<FieldElement> = f.elements_by_log().collect();
    let m = support.len();
    let total = units.len().pow(m as u32);
    let mut seen = vec![false; total];
    let unit_pos = |x: FieldElement| units.iter().position(|&u| u == x).unwrap();
    let tuple_index = |tuple: &[FieldElement]| -> usize {
        tuple.iter().fold(0usize, |acc, &x| acc * units.len() + unit_pos(x))
    };
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..total {
        if seen[start] {
            continue;
        }
        count += 1;
        // decode the tuple
        let mut rest = start;
        let mut tuple = vec![f.one(); m];
        for slot in (0..m).rev() {
            tuple[slot] = units[rest % units.len()];
            rest /= units.len();
        }
        stack.push(tuple);
        while let Some(tup) = stack.pop() {
            let idx = tuple_index(&tup);
            if seen[idx] {
                continue;
            }
            seen[idx] = true;
            for &alpha in alphas {
                let moved: Vec<FieldElement> = tup
                    .iter()
                    .zip(support.iter())
                    .map(|(&a, &i)| {
                        f.mul(a, aut.norm(aut.apply(alpha, i as i64), (n - i) as i64).unwrap())
                    })
                    .collect();
                if !seen[tuple_index(&moved)] {
                    stack.push(moved);
                }
            }
        }
    }
    count
}

#[test]
fn criterion_08_formula_vs_orbit() {
    let t0 = Instant::now();
    // Hamming: every automorphism of GF(4), GF(8), GF(9), trinomial supports
    for (p, s) in [(2u64, 2u32), (2, 3), (3, 2)] {
        for r in 0..s {
            let aut = ring(p, s, r);
            let units: Vec<FieldElement> = aut.field().elements_by_log().collect();
            for n in 2..=6u64 {
                for l in 1..n {
                    let brute = brute_orbits(&aut, n, &[0, l], &units);
                    assert_eq!(
                        brute,
                        equiv::count_hamming_classes(&aut, n, l, false),
                        "q={}, r={r}, n={n}, l={l}",
                        aut.field().order()
                    );
                }
            }
        }
    }
    // rank over GF(4) inside GF(16) with sigma = tau^2
    let gf16 = ring(2, 4, 2);
    assert_eq!(gf16.fixed_size(), 4);
    let emb = gf16.fixed_subfield().unwrap();
    let sub_units: Vec<FieldElement> =
        emb.subfield().elements_by_log().map(|b| emb.to_sup(b)).collect();
    for n in 2..=6u64 {
        for l in 1..n {
            let brute = brute_orbits(&gf16, n, &[0, l], &sub_units);
            assert_eq!(brute, equiv::count_rank_classes(&gf16, n, l, 4), "rank n={n}, l={l}");
        }
    }
    // support of size 3 over GF(4), n = 6
    let gf4 = ring(2, 2, 1);
    let units: Vec<FieldElement> = gf4.field().elements_by_log().collect();
    for support in [[0u64, 2, 4], [0, 1, 5], [1, 3, 4]] {
        let brute = brute_orbits(&gf4, 6, &support, &units) as u128;
        assert_eq!(brute, equiv::count_general_classes(&gf4, 6, &support, None));
    }
    println!("criterion 8 runtime: {:.1?}", t0.elapsed());
    passed(8, "count formulas equal brute-force orbit counts");
}

#[test]
fn criterion_09_isometry_verification() {
    let t0 = Instant::now();
    let aut = ring(2, 2, 1);
    let f = aut.field().clone();
    let units: Vec<FieldElement> = f.elements_by_log().collect();
    let mut triples = 0u64;
    for n in 2..=6u64 {
        let all_polys: Option<Vec<SkewPoly>> = if n <= 4 {
            let total = 4u64.pow(n as u32);
            Some(
                (0..total)
                    .map(|pack| {
                        let coeffs: Vec<FieldElement> = (0..n)
                            .map(|i| f.from_index((pack >> (2 * i)) & 3))
                            .collect();
                        SkewPoly::from_coeffs(&aut, coeffs)
                    })
                    .collect(),
            )
        } else {
            None
        };
        for l in 1..n {
            for &b0 in &units {
                for &bl in &units {
                    let dst = TrinomialShape::new(n, l, b0, bl).unwrap();
                    let dst_mod = dst.modulus(&aut);
                    for &alpha in &units {
                        triples += 1;
                        // src determined by the witness equations
                        let a0 = f.div(b0, aut.norm(alpha, n as i64).unwrap()).unwrap();
                        let al = f
                            .div(bl, aut.norm(aut.apply(alpha, l as i64), (n - l) as i64).unwrap())
                            .unwrap();
                        let src = TrinomialShape::new(n, l, a0, al).unwrap();
                        let src_mod = src.modulus(&aut);
                        // multiplicativity: exhaustive over all reduced pairs
                        // for n <= 4; for larger n over all monomial pairs
                        // (additivity reduces the general case to monomials)
                        // plus seeded random pairs
                        match &all_polys {
                            Some(polys) => {
                                for pa in polys {
                                    for pb in polys {
                                        assert!(
                                            equiv::phi_preserves_product(alpha, &src_mod, &dst_mod, pa, pb),
                                            "n={n} l={l} alpha={} dst=({:?},{:?})",
                                            f.format_element(alpha),
                                            f.format_element(b0),
                                            f.format_element(bl)
                                        );
                                    }
                                }
                            }
                            None => {
                                for i in 0..n as usize {
                                    for &ci in &units {
                                        let ma = SkewPoly::monomial(&aut, ci, i);
                                        for j in 0..n as usize {
                                            for &cj in &units {
                                                let mb = SkewPoly::monomial(&aut, cj, j);
                                                assert!(equiv::phi_preserves_product(
                                                    alpha, &src_mod, &dst_mod, &ma, &mb
                                                ));
                                            }
                                        }
                                    }
                                }
                                assert!(equiv::random_multiplicativity_check(
                                    &aut, alpha, &src_mod, &dst_mod, 10_000, 9
                                ));
                            }
                        }
                        // transported codes keep their weight enumerators
                        for g in code::right_divisors(&dst_mod, 1 << 16).unwrap() {
                            let code_obj = SkewCode::build(&dst_mod, &g).unwrap();
                            if code_obj.dimension() == 0 {
                                continue;
                            }
                            let moved = equiv::transport_code(&code_obj, alpha, &src_mod).unwrap();
                            assert_eq!(moved.dimension(), code_obj.dimension());
                            assert_eq!(
                                code_obj.weight_enumerator(&Metric::Hamming).unwrap(),
                                moved.weight_enumerator(&Metric::Hamming).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }
    // rank witnesses additionally preserve rank enumerators: GF(16)/GF(4)
    let gf16 = ring(2, 4, 2);
    let emb16 = Arc::new(gf16.fixed_subfield().unwrap());
    let f16 = gf16.field().clone();
    let rank_metric = Metric::Rank(emb16.clone());
    let mut rank_checked = 0;
    for &alpha_sub in &emb16.subfield().elements_by_log().collect::<Vec<_>>() {
        let alpha = emb16.to_sup(alpha_sub);
        for i in 0..3u64 {
            let b0 = f16.generator_pow(i);
            let bl = f16.generator_pow(2 * i + 1);
            let dst = TrinomialShape::new(3, 1, b0, bl).unwrap();
            let dst_mod = dst.modulus(&gf16);
            let a0 = f16.div(b0, gf16.norm(alpha, 3).unwrap()).unwrap();
            let al = f16.div(bl, gf16.norm(gf16.apply(alpha, 1), 2).unwrap()).unwrap();
            let src_mod = TrinomialShape::new(3, 1, a0, al).unwrap().modulus(&gf16);
            for g in code::right_divisors(&dst_mod, 1 << 16).unwrap() {
                let code_obj = SkewCode::build(&dst_mod, &g).unwrap();
                if code_obj.dimension() == 0 {
                    continue;
                }
                let moved = equiv::transport_code(&code_obj, alpha, &src_mod).unwrap();
                assert_eq!(
                    code_obj.weight_enumerator(&rank_metric).unwrap(),
                    moved.weight_enumerator(&rank_metric).unwrap()
                );
                rank_checked += 1;
            }
        }
    }
    assert!(rank_checked > 0);
    println!("criterion 9: {triples} witnesses verified in {:.1?}", t0.elapsed());
    passed(9, "isometry verification");
}

#[test]
fn criterion_10_characterization_agreement() {
    let aut = ring(2, 2, 1);
    let f = aut.field().clone();
    let emb = aut.fixed_subfield().unwrap();
    let units: Vec<FieldElement> = f.elements_by_log().collect();
    for n in 2..=5u64 {
        for l in 1..n {
            for &a0 in &units {
                for &al in &units {
                    for &b0 in &units {
                        for &bl in &units {
                            let src = TrinomialShape::new(n, l, a0, al).unwrap();
                            let dst = TrinomialShape::new(n, l, b0, bl).unwrap();
                            let via_gcrd = equiv::fixed_subfield_gcrd_witness(&aut, &src, &dst).unwrap();
                            let direct = equiv::trinomial_rank_witness(&aut, &src, &dst, &emb).unwrap();
                            assert_eq!(
                                via_gcrd.is_some(),
                                direct.is_some(),
                                "n={n} l={l} ({:?},{:?}) -> ({:?},{:?})",
                                f.format_element(a0),
                                f.format_element(al),
                                f.format_element(b0),
                                f.format_element(bl)
                            );
                        }
                    }
                }
            }
        }
    }
    passed(10, "gcrd-root test agrees with direct rank-witness search");
}

#[test]
fn criterion_11_mrd_designed_instance() {
    let aut = ring(2, 2, 1);
    let emb = Arc::new(aut.fixed_subfield().unwrap());
    let mut found = false;
    let mu = aut.order() as u64;
    for e in [2u64, 4] {
        let frame = ExtensionFrame::build(&aut, e, &FrameOptions::default()).unwrap();
        let modulus = SkewPoly::x_pow_minus_one(&aut, e as usize);
        for set in mu_closed_sets(mu, e) {
            if set.is_empty() || set.len() == e as usize {
                continue;
            }
            let t = DefiningSet::new(e, mu, set.clone()).unwrap();
            let cert = bounds::roos_search(&t, 3, Mode::Strict);
            if !bounds::mrd_designed_check(&t, &cert).unwrap() {
                continue;
            }
            // declared: confirm by brute force
            let g = frame.generator_from_defining_set(&set).unwrap();
            let code_obj = SkewCode::build(&modulus, &g).unwrap();
            let dr = code_obj.min_distance(&Metric::Rank(emb.clone()), u64::MAX).unwrap();
            let dh = code_obj.min_distance(&Metric::Hamming, u64::MAX).unwrap();
            let reps = t.representatives();
            // the designed sandwich: value <= d_R <= |S_T| + 1 with equality
            assert!(cert.value() as usize <= dr.minimum);
            assert!(dr.minimum <= reps.len() + 1);
            assert_eq!(dr.minimum, cert.value() as usize, "declared MRD distance");
            let (_, is_mrd) = code::singleton_check(&code_obj, dh.minimum, dr.minimum, &emb);
            assert!(is_mrd, "e={e}, T={set:?} declared but not MRD");
            found = true;
        }
    }
    assert!(found, "at least one designed MRD instance must exist");
    passed(11, "designed MRD instance confirmed by brute force");
}
