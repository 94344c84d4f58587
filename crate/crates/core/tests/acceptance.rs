//! End-to-end acceptance gate. Each test pins one cross-check between the
//! matrix engines and an independent closed form, exactly and with zero
//! tolerance; random instances come from fixed seeds so reruns are
//! byte-identical. Run with `-- --nocapture` to see one line per criterion.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use pascaldet::scalar::{choose2, neg_one_pow};
use pascaldet::{
    alternate_signs, antisymmetric_pascal, build, char_poly, conjecture33_harness, det,
    det_condensation, det_oracle_cofactor, det_sequence, detect, detect_banded_recursion,
    enumerate_even_tree, generate, generic_order, interleave_even, next_even_beta, oracle_det,
    rank, recursion_order_bound, sqrt_det_antisymmetric, symmetric_order_guess,
    sympletric_extensions, theorem31_coeffs, transfer_matrix_22, verify, verify_identity,
    BandedPeriodicSpec, DenseMatrix, FamilySpec, IdentityTag, Int, MatrixSpec, NamedSequence,
    OracleFamily, RecursionReport, Scalar, SequenceSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(v: i64) -> Scalar {
    Scalar::from(v)
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from(x)).collect()
}

fn pass(num: u32, started: Instant, budget_secs: Option<u64>, what: &str) {
    let elapsed = started.elapsed();
    if let Some(b) = budget_secs {
        assert!(
            elapsed.as_secs_f64() < b as f64,
            "criterion {num:02} fail: exceeded the {b}s budget ({elapsed:.2?})"
        );
    }
    println!("criterion {num:02} pass ({elapsed:.2?}): {what}");
}

/// Shifted Pascal determinants equal the binomial product formula for all
/// 0 <= s,t <= 4, 1 <= n <= 12, and n -> det is a polynomial of degree s*t
/// (finite differences of order s*t + 1 vanish).
#[test]
fn criterion_01_shifted_pascal_product_formula() {
    let t0 = Instant::now();
    for sh in 0..=4usize {
        for th in 0..=4usize {
            let family = OracleFamily::Thm11 { s: sh, t: th };
            for n in 1..=12 {
                let m = build(&MatrixSpec::PascalShifted { s: sh, t: th }, n).unwrap();
                assert_eq!(
                    det(&m),
                    oracle_det(&family, n).unwrap(),
                    "s={sh} t={th} n={n}"
                );
            }
            let deg = sh * th;
            let mut vals: Vec<Scalar> = (1..=deg + 5)
                .map(|n| oracle_det(&family, n).unwrap())
                .collect();
            for _ in 0..=deg {
                vals = vals.windows(2).map(|p| &p[1] - &p[0]).collect();
            }
            assert_eq!(vals.len(), 4);
            assert!(
                vals.iter().all(Scalar::is_zero),
                "degree above {deg} at s={sh} t={th}: {vals:?}"
            );
        }
    }
    pass(
        1,
        t0,
        Some(10),
        "shifted Pascal dets match the product formula; degree s*t confirmed",
    );
}

/// Inverse-binomial determinants equal the reciprocal product formula for
/// 0 <= s,t <= 3, 1 <= n <= 10, with sign (-1)^{C(n,2)}.
#[test]
fn criterion_02_inverse_binomial_reciprocal_formula() {
    let t0 = Instant::now();
    for sh in 0..=3usize {
        for th in 0..=3usize {
            let family = OracleFamily::Thm13 { s: sh, t: th };
            for n in 1..=10 {
                let m = build(&MatrixSpec::InverseBinomial { s: sh, t: th }, n).unwrap();
                let d = det(&m);
                assert_eq!(d, oracle_det(&family, n).unwrap(), "s={sh} t={th} n={n}");
                let unsigned = &d * &neg_one_pow(choose2(n as i64));
                assert!(
                    unsigned.numer() > &Int::from(0),
                    "sign law broken at s={sh} t={th} n={n}: {d}"
                );
            }
        }
    }
    pass(
        2,
        t0,
        Some(10),
        "inverse-binomial dets match the reciprocal formula with alternating sign",
    );
}

/// For 50 random parameter tuples in [-5,5]^7 the determinant sequence of the
/// triangle with order-2 column/row recurrences satisfies the printed order-2
/// recursion for n = 3..15, and detection recovers it with order at most 2.
#[test]
fn criterion_03_order_two_recursion_coefficients() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for trial in 0..50 {
        let v: Vec<i64> = (0..7).map(|_| rng.gen_range(-5..=5)).collect();
        let (g0, a1, b1) = (s(v[0]), s(v[1]), s(v[2]));
        let (aa1, aa2, bb1, bb2) = (s(v[3]), s(v[4]), s(v[5]), s(v[6]));
        let alpha = SequenceSpec::LinearRecurrence {
            coeffs: vec![aa1.clone(), aa2.clone()],
            initial: vec![g0.clone(), a1.clone()],
        };
        let beta = SequenceSpec::LinearRecurrence {
            coeffs: vec![bb1.clone(), bb2.clone()],
            initial: vec![g0.clone(), b1.clone()],
        };
        let family = FamilySpec::Matrix(MatrixSpec::GeneralizedPascal { alpha, beta });
        let w = det_sequence(&family, 15).unwrap().dets();
        let (d1, d2) = theorem31_coeffs(&g0, &a1, &b1, &aa1, &aa2, &bb1, &bb2);

        assert_eq!(w[0], g0, "tuple {v:?}");
        assert_eq!(w[1], &(&g0 * &(&a1 + &b1)) - &(&a1 * &b1), "tuple {v:?}");
        for n in 3..=15usize {
            let rhs = &(&d1 * &w[n - 2]) + &(&d2 * &w[n - 3]);
            assert_eq!(w[n - 1], rhs, "tuple {v:?} order {n}");
        }
        let printed = RecursionReport {
            d: 2,
            coeffs: vec![d1.clone(), d2.clone()],
            step: 1,
            valid_from: 3,
            verified_extra: 13,
        };
        assert!(verify(&w, &printed), "tuple {v:?}");

        let report = detect(&w, 1, 2, 4).unwrap();
        assert!(report.d <= 2, "trial {trial} tuple {v:?}: d={}", report.d);
        assert!(verify(&w, &report), "tuple {v:?}");
        if report.d == 2 {
            assert_eq!(report.coeffs, vec![d1, d2], "tuple {v:?}");
        }
    }
    pass(
        3,
        t0,
        Some(30),
        "order-2 recursion coefficients hold and are re-detected on 50 random tuples",
    );
}

/// The symmetric central-binomial triangle: factored determinant values for
/// n <= 33 multiplied out, zeros exactly at even n and n = 5 mod 6, and the
/// rank pattern (n, n-1, n-2) for n <= 36.
#[test]
fn criterion_04_central_binomial_triangle_table() {
    let t0 = Instant::now();
    let c = |b: i64, e: i64| Scalar::from(b).pow(e);
    let table: Vec<(usize, Scalar)> = vec![
        (1, s(1)),
        (3, s(-4)),
        (7, s(-64)),
        (9, s(2304)),
        (13, &c(2, 16) * &c(3, 6)),
        (15, -(&c(2, 26) * &c(3, 6))),
        (19, -(&(&c(2, 30) * &c(3, 2)) * &c(103, 4))),
        (21, &(&c(2, 24) * &c(103, 4)) * &c(4229, 2)),
        (
            25,
            &(&(&(&c(2, 24) * &c(3, 4)) * &c(31, 4)) * &c(431, 4)) * &c(4229, 2),
        ),
        (
            27,
            -(&(&(&(&(&c(2, 26) * &c(3, 6)) * &c(31, 4)) * &c(59, 2)) * &c(431, 4))
                * &c(11701, 2)),
        ),
        (
            31,
            -(&(&(&(&c(2, 30) * &c(3, 10)) * &c(59, 2)) * &c(11701, 2)) * &c(4893589, 4)),
        ),
        (
            33,
            &(&(&(&(&c(2, 32) * &c(3, 12)) * &c(11, 2)) * &c(2017, 2)) * &c(28349, 2))
                * &c(4893589, 4),
        ),
    ];
    let spec = MatrixSpec::GeneralizedPascal {
        alpha: SequenceSpec::Named {
            name: NamedSequence::CentralBinomial,
        },
        beta: SequenceSpec::Named {
            name: NamedSequence::CentralBinomial,
        },
    };
    let w = det_sequence(&FamilySpec::Matrix(spec.clone()), 33)
        .unwrap()
        .dets();
    let expected: BTreeMap<usize, Scalar> = table.into_iter().collect();
    for n in 1..=33usize {
        match expected.get(&n) {
            Some(v) => assert_eq!(&w[n - 1], v, "order {n}"),
            None => assert!(w[n - 1].is_zero(), "order {n} should vanish: {}", w[n - 1]),
        }
    }
    for n in 1..=36usize {
        let m = build(&spec, n).unwrap();
        let expected_rank = match (n % 2, n % 6) {
            (_, 1) | (_, 3) => n,
            (0, _) => n - 1,
            _ => n - 2,
        };
        assert_eq!(rank(&m), expected_rank, "order {n}");
    }
    pass(
        4,
        t0,
        Some(60),
        "central-binomial triangle dets (n<=33) and ranks (n<=36) match the table",
    );
}

/// Antisymmetric triangles over (0,1,1,...) and (0,1,2,3,...) have
/// determinant 1 at every even order up to 40 (0 at odd orders), and the
/// geometric / two-term-recurrence columns give A^{2(n-1)} resp.
/// (A - AB + B)^{2(n-1)} at order 2n <= 20.
#[test]
fn criterion_05_antisymmetric_unimodular_and_geometric() {
    let t0 = Instant::now();
    let mut ones = vec![Scalar::zero()];
    ones.extend(std::iter::repeat_n(Scalar::one(), 39));
    let nats: Vec<Scalar> = (0..40).map(s).collect();
    for order in 1..=40usize {
        let d = det(&antisymmetric_pascal(&ones, order).unwrap());
        assert_eq!(d, oracle_det(&OracleFamily::Prop51Ones, order).unwrap());
        let d = det(&antisymmetric_pascal(&nats, order).unwrap());
        assert_eq!(d, oracle_det(&OracleFamily::Prop51Naturals, order).unwrap());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut cases: Vec<(i64, i64)> = (0..3).map(|_| (rng.gen_range(-4..=4), 0)).collect();
    cases.extend((0..3).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-4..=4))));
    for (a, b) in cases {
        let mut al = ints(&[0, 1]);
        while al.len() < 20 {
            let next = &(&s(a + b) * &al[al.len() - 1]) - &(&s(a * b) * &al[al.len() - 2]);
            al.push(next);
        }
        let family = OracleFamily::Ex54SymplecticGeometric { a: s(a), b: s(b) };
        for order in 1..=20usize {
            let d = det(&antisymmetric_pascal(&al, order).unwrap());
            assert_eq!(d, oracle_det(&family, order).unwrap(), "A={a} B={b} order={order}");
        }
    }
    pass(
        5,
        t0,
        None,
        "antisymmetric unimodular columns and geometric columns match closed forms",
    );
}

/// Square roots of the antisymmetrized Catalan-triangle determinants match
/// the binomial-ratio product for k <= 5, n <= 6; the n=1 row is Catalan
/// (1,1,2,5,14); and the k = 2,3,4 columns match their printed polynomials.
#[test]
fn criterion_06_antisymmetric_catalan_square_roots() {
    let t0 = Instant::now();
    for k in 0..=5usize {
        let family = OracleFamily::Thm53Sqrt { k };
        for n in 1..=6usize {
            let m = build(&MatrixSpec::TK { k }, 2 * n).unwrap();
            let r = sqrt_det_antisymmetric(&m).unwrap();
            assert_eq!(r, oracle_det(&family, n).unwrap(), "k={k} n={n}");
        }
    }
    let row: Vec<Scalar> = (0..5)
        .map(|k| oracle_det(&OracleFamily::Thm53Sqrt { k }, 1).unwrap())
        .collect();
    assert_eq!(row, ints(&[1, 1, 2, 5, 14]));
    for n in 0..=6i64 {
        let at = |k: usize| oracle_det(&OracleFamily::Thm53Sqrt { k }, n as usize).unwrap();
        assert_eq!(at(2), s(n + 1), "n={n}");
        assert_eq!(at(3), Scalar::ratio((2 * n + 3) * (n + 1) * (n + 2), 6), "n={n}");
        assert_eq!(
            at(4),
            Scalar::ratio(
                (2 * n + 5) * (2 * n + 3) * (n + 3) * (n + 2) * (n + 2) * (n + 1),
                180
            ),
            "n={n}"
        );
    }
    pass(
        6,
        t0,
        None,
        "antisymmetric Catalan square roots match products, Catalan row, and polynomials",
    );
}

/// Square roots of the symplectic Catalan and central-binomial triangle
/// determinants: r_C(1..10) equals the frozen row and r_B = 2^{n-1} r_C.
#[test]
fn criterion_07_symplectic_catalan_binomial_roots() {
    let t0 = Instant::now();
    let rc_expected: [i64; 10] = [
        1, 2, 6, 31, 286, 4600, 130664, 6619840, 591478944, 93683332808,
    ];
    let cat = generate(
        &SequenceSpec::Named {
            name: NamedSequence::CatalanShiftedSymplectic,
        },
        20,
    )
    .unwrap();
    let cb = generate(
        &SequenceSpec::Named {
            name: NamedSequence::BinomialShiftedSymplectic,
        },
        20,
    )
    .unwrap();
    for n in 1..=10usize {
        let rc = sqrt_det_antisymmetric(&antisymmetric_pascal(&cat, 2 * n).unwrap()).unwrap();
        assert_eq!(rc, s(rc_expected[n - 1]), "n={n}");
        let rb = sqrt_det_antisymmetric(&antisymmetric_pascal(&cb, 2 * n).unwrap()).unwrap();
        assert_eq!(rb, &Scalar::from(2).pow(n as i64 - 1) * &rc, "n={n}");
    }
    let report = verify_identity(&IdentityTag::Ex55Ratio { n_max: 10 }).unwrap();
    assert!(report.holds);
    pass(
        7,
        t0,
        Some(30),
        "symplectic Catalan/binomial square roots match the frozen row and ratio",
    );
}

/// Depth-6 enumeration of the even unimodular tree reproduces all 16 rows of
/// the center table bit-exactly; determinant 1 is rechecked at every even
/// order along every enumerated branch.
#[test]
fn criterion_08_even_tree_enumeration_table() {
    let t0 = Instant::now();
    #[rustfmt::skip]
    let table: Vec<(Vec<i64>, Vec<i64>, i64)> = vec![
        (vec![1, 1, 1, 1, 1],      vec![0, 0, 0, 0, 0],      0),
        (vec![1, 1, 1, 1, -1],     vec![0, 0, 0, 0, 0],      -100),
        (vec![1, 1, 1, -1, -41],   vec![0, 0, 0, 0, -42],    32658),
        (vec![1, 1, 1, -1, -43],   vec![0, 0, 0, 0, -42],    -39754),
        (vec![1, 1, -1, -7, 69],   vec![0, 0, 0, -8, 68],    434748),
        (vec![1, 1, -1, -7, 67],   vec![0, 0, 0, -8, 68],    -400344),
        (vec![1, 1, -1, -9, -253], vec![0, 0, 0, -8, -254],  12922350),
        (vec![1, 1, -1, -9, -255], vec![0, 0, 0, -8, -254],  -13258926),
        (vec![1, -1, 3, 1, 241],   vec![0, 0, 2, 0, 240],    13257990),
        (vec![1, -1, 3, 1, 239],   vec![0, 0, 2, 0, 240],    -12923278),
        (vec![1, -1, 3, -1, -73],  vec![0, 0, 2, 0, -74],    400664),
        (vec![1, -1, 3, -1, -75],  vec![0, 0, 2, 0, -74],    -434420),
        (vec![1, -1, 1, 1, 37],    vec![0, 0, 2, 0, 36],     39594),
        (vec![1, -1, 1, 1, 35],    vec![0, 0, 2, 0, 36],     -32810),
        (vec![1, -1, 1, -1, 3],    vec![0, 0, 2, 0, 2],      92),
        (vec![1, -1, 1, -1, 1],    vec![0, 0, 2, 0, 2],      0),
    ];
    let paths = enumerate_even_tree(6, 1).unwrap();
    assert_eq!(paths.len(), 32);
    assert_eq!(paths.chunks(2).count(), table.len());
    for (pair, (betas, centers, next)) in paths.chunks(2).zip(&table) {
        let (a, b) = (&pair[0], &pair[1]);
        // consecutive leaves are siblings: same five choices, same centers
        assert_eq!(a.choices[..5], b.choices[..5]);
        assert_eq!(a.centers, b.centers);
        assert_eq!((a.choices[5], b.choices[5]), (1, -1));

        let expected_betas: Vec<Int> = betas.iter().map(|&v| Int::from(v)).collect();
        let expected_centers: Vec<Int> = centers.iter().map(|&v| Int::from(v)).collect();
        assert_eq!(&a.prefix()[..5], &expected_betas[..], "row {betas:?}");
        assert_eq!(&a.centers[..5], &expected_centers[..], "row {betas:?}");
        assert_eq!(a.centers[5], Int::from(*next), "row {betas:?}");
        assert_eq!(next_even_beta(&a.prefix()[..5]).unwrap(), Int::from(*next));

        for path in [a, b] {
            let terms: Vec<Scalar> = path
                .prefix()
                .iter()
                .map(|v| Scalar::from_int(v.clone()))
                .collect();
            for l in 1..=6usize {
                let alpha = interleave_even(&terms[..l]);
                let d = det(&antisymmetric_pascal(&alpha, 2 * l).unwrap());
                assert!(d.is_one(), "row {betas:?} order {}: det {d}", 2 * l);
            }
        }
    }
    pass(
        8,
        t0,
        Some(10),
        "even-tree enumeration reproduces all 16 center rows with unimodular nodes",
    );
}

/// Sympletric determinant sequences of the Fibonacci and 6-periodic columns
/// equal (0, 1, 2, 4, ..., 2^{n-2}) for n <= 16, and the integer extension
/// solver reproduces all 16 printed continuation pairs.
#[test]
fn criterion_09_sympletric_doubling_and_extensions() {
    let t0 = Instant::now();
    let fib = generate(
        &SequenceSpec::Named {
            name: NamedSequence::Fibonacci,
        },
        16,
    )
    .unwrap();
    let per6 = generate(
        &SequenceSpec::Periodic {
            pattern: ints(&[0, 1, 1, 0, -1, -1]),
        },
        16,
    )
    .unwrap();
    for terms in [&fib, &per6] {
        for n in 1..=16usize {
            let m = build(
                &MatrixSpec::GeneralizedPascal {
                    alpha: SequenceSpec::Explicit {
                        terms: terms[..n].to_vec(),
                    },
                    beta: SequenceSpec::Explicit {
                        terms: alternate_signs(&terms[..n]),
                    },
                },
                n,
            )
            .unwrap();
            let expected = if n == 1 {
                Scalar::zero()
            } else {
                Scalar::from(2).pow(n as i64 - 2)
            };
            assert_eq!(det(&m), expected, "order {n}");
        }
    }

    #[rustfmt::skip]
    let rows: Vec<(Vec<i64>, i64, i64)> = vec![
        (vec![0, 1, 1, 2, 5, 13, 34],  85,  4),
        (vec![0, 1, 1, 2, 5, 13, 28],  79,  4),
        (vec![0, 1, 1, 2, 5, 9, 20],   77,  38),
        (vec![0, 1, 1, 2, 5, 9, 2],    -193, 110),
        (vec![0, 1, 1, 2, 3, 5, 10],   19,  6),
        (vec![0, 1, 1, 2, 3, 5, 8],    12,  1),
        (vec![0, 1, 1, 2, 3, 3, 10],   -3,  6),
        (vec![0, 1, 1, 2, 3, 3, -2],   9,   30),
        (vec![0, 1, 1, 0, 1, 3, 4],    -31, 38),
        (vec![0, 1, 1, 0, 1, 3, -14],  167, 110),
        (vec![0, 1, 1, 0, 1, -1, 2],   1,   4),
        (vec![0, 1, 1, 0, 1, -1, -4],  -17, 4),
        (vec![0, 1, 1, 0, -1, 1, 10],  33,  6),
        (vec![0, 1, 1, 0, -1, 1, -2],  -27, 30),
        (vec![0, 1, 1, 0, -1, -1, 2],  3,   6),
        (vec![0, 1, 1, 0, -1, -1, 0],  2,   1),
    ];
    for (prefix, v, w) in rows {
        let ints_prefix: Vec<Int> = prefix.iter().map(|&x| Int::from(x)).collect();
        let mut expected = vec![Int::from(v + w), Int::from(v - w)];
        expected.sort();
        expected.dedup();
        expected.reverse();
        assert_eq!(
            sympletric_extensions(&ints_prefix).unwrap(),
            expected,
            "prefix {prefix:?}"
        );
    }
    pass(
        9,
        t0,
        None,
        "sympletric doubling sequences and all 16 extension pairs reproduced",
    );
}

/// For 50 random banded periodic specs (s,t <= 2, p <= 3, finitely
/// perturbed) the detected recursion order stays within C(s+t, s) with at
/// least five verified spare terms per residue class; for full pentadiagonal
/// constant bands the detected characteristic polynomial divides that of the
/// 6x6 transfer matrix.
#[test]
fn criterion_10_banded_recursion_order_bound() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for trial in 0..50 {
        let sh = rng.gen_range(0..=2usize);
        let th = rng.gen_range(0..=2usize);
        let p = rng.gen_range(1..=3usize);
        let mut bands = BTreeMap::new();
        for offset in -(sh as i64)..=(th as i64) {
            let band: Vec<Scalar> = (0..p).map(|_| s(rng.gen_range(-3..=3))).collect();
            bands.insert(offset, band);
        }
        let perturbation: Vec<(usize, usize, Scalar)> = (0..rng.gen_range(0..=2))
            .map(|_| {
                (
                    rng.gen_range(0..4usize),
                    rng.gen_range(0..4usize),
                    s(rng.gen_range(-3..=3)),
                )
            })
            .collect();
        let spec = BandedPeriodicSpec {
            s: sh,
            t: th,
            p,
            bands,
            perturbation,
            support: None,
        };
        let bound = recursion_order_bound(sh, th);
        let n_budget = p * (2 * bound + 1) + 5 * p + 12;
        let report = detect_banded_recursion(&spec, n_budget)
            .unwrap_or_else(|e| panic!("trial {trial} (s={sh} t={th} p={p}): {e}"));
        assert!(
            report.d <= bound,
            "trial {trial}: order {} above bound {bound}",
            report.d
        );
        assert!(report.verified_extra >= 5, "trial {trial}");
    }

    for trial in 0..8 {
        let nz = |rng: &mut ChaCha8Rng| loop {
            let v = rng.gen_range(-3..=3i64);
            if v != 0 {
                return v;
            }
        };
        let (a, e) = (nz(&mut rng), nz(&mut rng));
        let (b, c, d) = (
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
        );
        let spec = BandedPeriodicSpec::constant_pentadiagonal(a, b, c, d, e);
        let report = detect_banded_recursion(&spec, 2 * 13 + 5 + 12).unwrap();
        let detected = report.char_poly();
        let transfer = char_poly(&transfer_matrix_22(&s(a), &s(b), &s(c), &s(d), &s(e))).unwrap();
        assert!(
            detected.divides(&transfer),
            "trial {trial} bands ({a},{b},{c},{d},{e}): ({detected}) does not divide ({transfer})"
        );
    }
    pass(
        10,
        t0,
        Some(60),
        "banded recursion orders within C(s+t,s); pentadiagonal char polys divide transfer",
    );
}

/// Diagonal-construction determinants: geometric-diagonal closed form for
/// random parameters, the rescaling identity, power-distance matrices, and
/// the degenerate u2 = 0 product formula, all against the engine.
#[test]
fn criterion_11_diagonal_construction_formulas() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for _ in 0..10 {
        let v: Vec<i64> = (0..5).map(|_| rng.gen_range(-3..=3)).collect();
        let (u1, u2, l1, l2, x) = (s(v[0]), s(v[1]), s(v[2]), s(v[3]), s(v[4]));
        let spec = MatrixSpec::DiagonalConstruction {
            gamma: SequenceSpec::Geometric {
                first: Scalar::one(),
                ratio: x.clone(),
            },
            u1: u1.clone(),
            u2: u2.clone(),
            l1: l1.clone(),
            l2: l2.clone(),
        };
        let family = OracleFamily::Prop82Diagonal { u1, u2, l1, l2, x };
        for n in 1..=10 {
            let d = det(&build(&spec, n).unwrap());
            assert_eq!(d, oracle_det(&family, n).unwrap(), "params {v:?} n={n}");
        }
    }

    for _ in 0..10 {
        let pick = [1i64, 2, 3, -2];
        let lambda = s(pick[rng.gen_range(0..4)]);
        let mu = s(pick[rng.gen_range(0..4)]);
        let gamma: Vec<i64> = (0..8).map(|_| rng.gen_range(-4..=4)).collect();
        let tag = IdentityTag::Prop81Scaling {
            lambda,
            mu,
            gamma: SequenceSpec::explicit_ints(&gamma),
            u1: s(rng.gen_range(-3..=3)),
            u2: s(rng.gen_range(-3..=3)),
            l1: s(rng.gen_range(-3..=3)),
            l2: s(rng.gen_range(-3..=3)),
            n_max: 7,
        };
        let report = verify_identity(&tag).unwrap();
        assert!(report.holds, "{:?}", report.first_failure);
    }

    for a in -4..=4i64 {
        let family = OracleFamily::PowerDistance { a: s(a) };
        for n in 1..=8 {
            let d = det(&build(&MatrixSpec::PowerDistance { a: s(a) }, n).unwrap());
            assert_eq!(d, oracle_det(&family, n).unwrap(), "a={a} n={n}");
        }
    }

    for _ in 0..10 {
        let gamma: Vec<i64> = (0..8).map(|_| rng.gen_range(-4..=4)).collect();
        let (u1, l1, l2) = (
            s(rng.gen_range(-3..=3)),
            s(rng.gen_range(-3..=3)),
            s(rng.gen_range(-3..=3)),
        );
        let spec = MatrixSpec::DiagonalConstruction {
            gamma: SequenceSpec::explicit_ints(&gamma),
            u1: u1.clone(),
            u2: Scalar::zero(),
            l1: l1.clone(),
            l2: l2.clone(),
        };
        let family = OracleFamily::DiagonalDegenerateU2 {
            gamma: SequenceSpec::explicit_ints(&gamma),
            u1,
            l1,
            l2,
        };
        for n in 1..=8 {
            let d = det(&build(&spec, n).unwrap());
            assert_eq!(d, oracle_det(&family, n).unwrap(), "gamma {gamma:?} n={n}");
        }
    }
    pass(
        11,
        t0,
        None,
        "diagonal-construction closed forms, scaling, power-distance, degenerate case",
    );
}

#[allow(clippy::too_many_arguments)]
fn order_three_symmetric_taps(a0: i64, a1: i64, a2: i64, q1: i64, q2: i64, q3: i64) -> [i64; 3] {
    // shift rho and the two leading coefficients of the conjectured order-5
    // recursion for a symmetric triangle with an order-3 column recurrence
    let rho = -q3 * a0 + (-2 + 2 * q1 + q2 + q3) * a1 - a2;
    let d1 = q3 * (1 - 2 * q1 - 2 * q2 - q3) * a0
        + (10 - 10 * q1 - q2 + q3 + 4 * q1 * q1 + 2 * q1 * q2) * a1
        + (5 - 4 * q1 - 2 * q2) * a2;
    let sm = 2 * q1 + q2 + q3;
    let c00 = -q3 * q3 * (2 - 2 * q1 + 2 * q2 + q3 + q1 * q1);
    let c11 = -40 + 80 * q1 + 16 * q2 + 4 * q3 - 64 * q1 * q1 - 2 * q2 * q2 - q3 * q3
        - 28 * q1 * q2
        - 20 * q1 * q3
        - 2 * q2 * q3
        + 2 * q1 * sm * (6 * q1 + q2 + q3)
        - q1 * q1 * sm * sm;
    let c22 = -10 + 12 * q1 + 6 * q2 + 8 * q3 - sm * sm;
    let c01 = -q3
        * (16 - 28 * q1 + 16 * q1 * q1 - 2 * q2 * q2 - q3 * q3 + 2 * q1 * q3
            - 3 * q2 * q3
            - 2 * q1 * q1 * sm);
    let c02 = -q3 * (8 - 10 * q1 - 3 * q3 + 2 * q1 * sm);
    let c12 = 2 * (-20 + 32 * q1 + 10 * q2 + 9 * q3
        - 18 * q1 * q1
        - q2 * q2
        - q3 * q3
        - 11 * q1 * q2
        - 12 * q1 * q3
        - 2 * q2 * q3
        + q1 * sm * sm);
    let d2 = c00 * a0 * a0
        + c11 * a1 * a1
        + c22 * a2 * a2
        + c01 * a0 * a1
        + c02 * a0 * a2
        + c12 * a1 * a2;
    [rho, d1, d2]
}

/// Conjectured order-5 recursions: the 3-periodic symmetric triangle (budget
/// n <= 14) and the order-3-recurrence symmetric triangle (budget n <= 16),
/// each at six random integer instantiations. Any mismatch is collected and
/// reported in the failure message rather than skipped.
#[test]
fn criterion_12_conjectured_order_five_recursions() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let mut findings: Vec<String> = Vec::new();

    for _ in 0..6 {
        let (a0, a1, a2, q1, q2, q3) = (
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
        );
        let alpha = SequenceSpec::LinearRecurrence {
            coeffs: ints(&[q1, q2, q3]),
            initial: ints(&[a0, a1, a2]),
        };
        let family = FamilySpec::Matrix(MatrixSpec::GeneralizedPascal {
            alpha: alpha.clone(),
            beta: alpha,
        });
        let w = det_sequence(&family, 16).unwrap().dets();
        if w[0] != s(a0)
            || w[1] != s(2 * a0 * a1 - a1 * a1)
            || w[2] != s((2 * a1 - a2) * (a0 * (2 * a1 + a2) - 2 * a1 * a1))
        {
            findings.push(format!(
                "closed forms broken at ({a0},{a1},{a2};{q1},{q2},{q3})"
            ));
            continue;
        }
        let [rho, d1, d2] = order_three_symmetric_taps(a0, a1, a2, q1, q2, q3);
        let (rho, d1, d2) = (s(rho), s(d1), s(d2));
        let taps = [
            d1.clone(),
            d2.clone(),
            &rho * &d2,
            &rho.pow(3) * &d1,
            -rho.pow(5),
        ];
        for n in 6..=16usize {
            let mut rhs = Scalar::zero();
            for (i, tap) in taps.iter().enumerate() {
                rhs = &rhs + &(tap * &w[n - 2 - i]);
            }
            if w[n - 1] != rhs {
                findings.push(format!(
                    "order-3 symmetric ({a0},{a1},{a2};{q1},{q2},{q3}): n={n} det {} vs {rhs}",
                    w[n - 1]
                ));
            }
        }
    }

    for _ in 0..6 {
        let (a0, a1, a2) = (
            rng.gen_range(-4..=4i64),
            rng.gen_range(-4..=4i64),
            rng.gen_range(-4..=4i64),
        );
        let alpha = SequenceSpec::Periodic {
            pattern: ints(&[a0, a1, a2]),
        };
        let family = FamilySpec::Matrix(MatrixSpec::GeneralizedPascal {
            alpha: alpha.clone(),
            beta: alpha,
        });
        let w = det_sequence(&family, 14).unwrap().dets();
        let d1 = s(11 * a1 + 5 * a2);
        let d2 = s(-(3 * a0 * a0
            + 37 * a1 * a1
            + 3 * a2 * a2
            + 15 * a0 * a1
            + 5 * a0 * a2
            + 24 * a1 * a2));
        let q = s(a0 + a1 + a2);
        let taps = [
            d1.clone(),
            d2.clone(),
            -(&q * &d2),
            -(&q.pow(3) * &d1),
            q.pow(5),
        ];
        for n in 6..=14usize {
            let mut rhs = Scalar::zero();
            for (i, tap) in taps.iter().enumerate() {
                rhs = &rhs + &(tap * &w[n - 2 - i]);
            }
            if w[n - 1] != rhs {
                findings.push(format!(
                    "3-periodic symmetric ({a0},{a1},{a2}): n={n} det {} vs {rhs}",
                    w[n - 1]
                ));
            }
        }
    }

    assert!(
        findings.is_empty(),
        "conjectured recursions failed:\n{}",
        findings.join("\n")
    );
    pass(
        12,
        t0,
        None,
        "conjectured order-5 recursions hold at 12 random instantiations",
    );
}

fn draw_minimal_recurrence(rng: &mut ChaCha8Rng, order: usize, g0: i64) -> SequenceSpec {
    // redraw until the generated sequence admits no recursion shorter than
    // its declared order; the order-d detector doubles as the minimality test
    for _ in 0..200 {
        let mut coeffs: Vec<i64> = (0..order).map(|_| rng.gen_range(-3..=3)).collect();
        if coeffs[order - 1] == 0 {
            coeffs[order - 1] = 1;
        }
        let mut initial = vec![g0];
        initial.extend((1..order).map(|_| rng.gen_range(-3..=3)));
        let spec = SequenceSpec::LinearRecurrence {
            coeffs: ints(&coeffs),
            initial: ints(&initial),
        };
        let terms = generate(&spec, 2 * order + 5).unwrap();
        if let Ok(report) = detect(&terms, 1, order, 2) {
            if report.d == order {
                return spec;
            }
        }
    }
    panic!("no minimal order-{order} sequence found");
}

/// Detected determinant-recursion orders equal the generic prediction
/// C(a+b-2, a-1) for all shapes a,b <= 3, and the symmetric orders for
/// a <= 4 are (3^{a-1}+1)/2 = 1, 2, 5, 14.
#[test]
fn criterion_13_generic_and_symmetric_orders() {
    let t0 = Instant::now();
    assert_eq!(
        [1, 2, 5, 14],
        [
            symmetric_order_guess(1),
            symmetric_order_guess(2),
            symmetric_order_guess(3),
            symmetric_order_guess(4)
        ]
    );

    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let shapes = [
        (1usize, 1usize),
        (1, 2),
        (2, 1),
        (1, 3),
        (3, 1),
        (2, 2),
        (2, 3),
        (3, 2),
        (3, 3),
    ];
    for &(a, b) in &shapes {
        let g0 = *[1i64, 2, 3, -1, -2, -3]
            .get(rng.gen_range(0..6))
            .unwrap();
        let (alpha, beta) = loop {
            let alpha = draw_minimal_recurrence(&mut rng, a, g0);
            let beta = draw_minimal_recurrence(&mut rng, b, g0);
            if alpha != beta {
                break (alpha, beta);
            }
        };
        let expected = generic_order(a, b);
        let outcome = conjecture33_harness(&alpha, &beta, expected, 3 * expected + 8)
            .unwrap_or_else(|e| panic!("shape ({a},{b}): {e}"));
        assert_eq!(outcome.annotation.generic_order, expected);
        assert!(
            outcome.annotation.matches_generic,
            "shape ({a},{b}) {alpha:?} {beta:?}: detected {} vs generic {expected}",
            outcome.report.d
        );
    }

    for a in 1..=4usize {
        let expected = symmetric_order_guess(a);
        let n_budget = if a == 4 { 33 } else { 3 * expected + 8 };
        for _ in 0..2 {
            let g0 = *[1i64, 2, 3, -1, -2, -3]
                .get(rng.gen_range(0..6))
                .unwrap();
            let alpha = draw_minimal_recurrence(&mut rng, a, g0);
            let outcome = conjecture33_harness(&alpha, &alpha.clone(), expected, n_budget)
                .unwrap_or_else(|e| panic!("symmetric a={a}: {e}"));
            assert_eq!(outcome.annotation.symmetric_expected, Some(expected));
            assert_eq!(
                outcome.annotation.matches_symmetric,
                Some(true),
                "symmetric a={a} {alpha:?}: detected {} vs {expected}",
                outcome.report.d
            );
        }
    }
    pass(
        13,
        t0,
        Some(180),
        "generic orders C(a+b-2,a-1) and symmetric orders 1,2,5,14 all detected",
    );
}

/// Engine property suite: elimination, condensation, and cofactor expansion
/// agree on 200 random integer matrices of order <= 8; integer matrices have
/// integer determinants; odd-order antisymmetric determinants vanish.
#[test]
fn criterion_14_determinant_engine_cross_checks() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(114);
    for trial in 0..200 {
        let n = rng.gen_range(1..=8usize);
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| s(rng.gen_range(-9..=9))).collect())
            .collect();
        let m = DenseMatrix::from_rows(rows);
        let d = det(&m);
        let (cond, _fallback) = det_condensation(&m);
        let cof = det_oracle_cofactor(&m).unwrap();
        assert_eq!(d, cond, "trial {trial} order {n}");
        assert_eq!(d, cof, "trial {trial} order {n}");
        assert!(d.is_integer(), "trial {trial} order {n}: {d}");
    }
    for trial in 0..40 {
        let n = 2 * rng.gen_range(0..=3usize) + 1;
        let mut rows = vec![vec![Scalar::zero(); n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in i + 1..n {
                let v = s(rng.gen_range(-9..=9));
                rows[i][j] = v.clone();
                rows[j][i] = -v;
            }
        }
        let m = DenseMatrix::from_rows(rows);
        assert!(det(&m).is_zero(), "trial {trial} order {n}");
    }
    pass(
        14,
        t0,
        None,
        "three determinant engines agree; integrality and odd antisymmetric vanishing hold",
    );
}
