mod common;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use ringdiag::edr::{find_pq, hermite_row, smith_nxm, PQWitness};
use ringdiag::neat::{clean_decompose, clean_split, idempotents, is_neat, neat_witness};
use ringdiag::ring::{bezout_certificate, normalize_associate};
use ringdiag::stable_range::sr2_reduce;
use ringdiag::toeplitz::{toeplitz_diag_2x2, toeplitz_invert, toeplitz_row_reduce, ToeplitzMatrix};
use ringdiag::{parse_element, Element, Matrix, Ring, SearchBounds};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]))
}

fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        (2u64..=30).prop_map(Ring::Modular),
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(Ring::PolyOverPrimeField),
        prop::sample::select(vec![2u64, 3, 5]).prop_map(Ring::IntegersLocalizedAt),
    ]
}

fn element(ring: Ring) -> BoxedStrategy<Element> {
    match ring {
        Ring::Integers => (-60i64..=60).prop_map(move |k| ring.from_i64(k)).boxed(),
        Ring::Modular(n) => (0..n).prop_map(move |k| ring.residue(k)).boxed(),
        Ring::PolyOverPrimeField(p) => prop::collection::vec(0..p, 0..=4)
            .prop_map(move |cs| {
                let mut text: Vec<String> = cs.iter().enumerate().map(|(i, c)| format!("{c}*x^{i}")).collect();
                text.push("0".into());
                parse_element(ring, &text.join("+")).unwrap()
            })
            .boxed(),
        Ring::IntegersLocalizedAt(p) => (-40i64..=40, 1u64..=20)
            .prop_filter("denominator prime to p", move |&(_, d)| d % p != 0)
            .prop_map(move |(n, d)| parse_element(ring, &format!("{n}/{d}")).unwrap())
            .boxed(),
    }
}

fn ring_and<const K: usize>() -> impl Strategy<Value = (Ring, [Element; K])> {
    ring().prop_flat_map(|r| (Just(r), prop::array::uniform::<_, K>(element(r))))
}

fn bounds() -> SearchBounds {
    SearchBounds { integer_bound: 2000, poly_degree: 3, tuple_rank: 400 }
}

#[test]
fn ring_axioms() {
    runner(400)
        .run(&ring_and::<3>(), |(r, [a, b, c])| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(-&a), r.zero());
            prop_assert_eq!(&a * &r.one(), a.clone());
            prop_assert_eq!(parse_element(r, &a.to_string()).unwrap(), a);
            Ok(())
        })
        .unwrap();
}

#[test]
fn bezout_certificates_verify() {
    runner(400)
        .run(&ring_and::<2>(), |(_, [a, b])| {
            let c = bezout_certificate(&a, &b).unwrap();
            c.verify().unwrap();
            prop_assert_eq!(&(&c.p * &a) + &(&c.q * &b), c.d.clone());
            prop_assert_eq!(normalize_associate(&c.d).0, c.d.clone());
            let (canon, u) = normalize_associate(&a);
            prop_assert!(u.is_unit());
            prop_assert_eq!(&u * &a, canon);
            Ok(())
        })
        .unwrap();
}

#[test]
fn toeplitz_inverses_stay_toeplitz() {
    runner(400)
        .run(&ring_and::<3>(), |(r, [a, b, c])| {
            let t = ToeplitzMatrix::new(a, b, c);
            match toeplitz_invert(&t) {
                Ok(inv) => {
                    prop_assert!(t.det().is_unit());
                    prop_assert_eq!(&t.to_matrix() * &inv.to_matrix(), Matrix::identity(r, 2));
                }
                Err(e) => {
                    prop_assert!(!t.det().is_unit());
                    prop_assert_eq!(e.code(), "NotInvertible");
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn hermite_rows_reduce() {
    runner(300)
        .run(&ring_and::<2>(), |(r, [a, b])| {
            let h = hermite_row(&a, &b).unwrap();
            h.verify().unwrap();
            let row = Matrix::from_rows(r, vec![vec![a, b]]).unwrap();
            let out = &row * &h.matrix;
            prop_assert_eq!(out.get(0, 1), &r.zero());
            prop_assert_eq!(&h.matrix * &h.inverse, Matrix::identity(r, 2));
            Ok(())
        })
        .unwrap();
}

#[test]
fn toeplitz_row_reduction_over_finite_rings() {
    let strat = (2u64..=30).prop_flat_map(|n| (Just(n), 0..n, 0..n));
    runner(300)
        .run(&strat, |(n, a, b)| {
            let r = Ring::Modular(n);
            if let Ok(red) = toeplitz_row_reduce(&r.residue(a), &r.residue(b), &bounds()) {
                red.verify().unwrap();
                prop_assert!(red.matrix.det().is_unit());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn integer_smith_forms_match_determinant_divisors() {
    let strat = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-15i64..=15, c), r));
    runner(200)
        .run(&strat, |raw| {
            let z = Ring::Integers;
            let m = Matrix::from_rows(z, raw.iter().map(|r| r.iter().map(|&k| z.from_i64(k)).collect()).collect()).unwrap();
            let cert = smith_nxm(&m, &bounds()).unwrap();
            cert.verify().unwrap();
            prop_assert!(cert.result.is_diagonal());
            let got: Vec<BigInt> = cert.diagonal().iter().map(|e| e.as_bigint().unwrap().abs()).collect();
            let big: Vec<Vec<BigInt>> = raw.iter().map(|r| r.iter().map(|&k| BigInt::from(k)).collect()).collect();
            prop_assert_eq!(got, common::invariant_factors(&big));
            Ok(())
        })
        .unwrap();
}

#[test]
fn smith_forms_replay_in_every_ring() {
    let strat = ring().prop_flat_map(|r| {
        (1usize..=3, 1usize..=3).prop_flat_map(move |(rows, cols)| {
            (Just(r), prop::collection::vec(prop::collection::vec(element(r), cols), rows))
        })
    });
    runner(150)
        .run(&strat, |(r, rows)| {
            let m = Matrix::from_rows(r, rows).unwrap();
            let cert = smith_nxm(&m, &bounds()).unwrap();
            cert.verify().unwrap();
            let d = cert.diagonal();
            for w in d.windows(2) {
                if !w[0].is_zero() {
                    prop_assert!(bezout_certificate(&w[0], &w[1]).unwrap().d == w[0], "{} does not divide {}", w[0], w[1]);
                } else {
                    prop_assert!(w[1].is_zero());
                }
            }
            Ok(())
        })
        .unwrap();
}

fn toeplitz_diag_holds(m: &Matrix) -> Result<(), TestCaseError> {
    let diag = toeplitz_diag_2x2(m, &bounds()).unwrap();
    diag.verify().unwrap();
    let g = m.entries().iter().skip(1).fold(m.get(0, 0).clone(), |g, e| bezout_certificate(&g, e).unwrap().d);
    prop_assert_eq!(&diag.e1, &g);
    let det = m.det();
    let prod = &diag.e1 * &diag.e2;
    prop_assert_eq!(normalize_associate(&prod).0, normalize_associate(&det).0);
    Ok(())
}

#[test]
fn toeplitz_diagonalization_small_modular() {
    let strat = (2u64..=20).prop_flat_map(|n| (Just(n), prop::array::uniform4(0..n)));
    runner(400)
        .run(&strat, |(n, e)| {
            let r = Ring::Modular(n);
            toeplitz_diag_holds(&Matrix::square2(r.residue(e[0]), r.residue(e[1]), r.residue(e[2]), r.residue(e[3])))
        })
        .unwrap();
}

#[test]
fn toeplitz_diagonalization_localized() {
    let r = Ring::IntegersLocalizedAt(5);
    runner(150)
        .run(&prop::array::uniform4(element(r)), |[a, b, c, d]| toeplitz_diag_holds(&Matrix::square2(a, b, c, d)))
        .unwrap();
}

#[test]
fn pq_witnesses_recertify() {
    let strat = (2u64..=24).prop_flat_map(|n| (Just(n), 0..n, 0..n, 0..n));
    runner(300)
        .run(&strat, |(n, a, b, c)| {
            let r = Ring::Modular(n);
            let (a, b, c) = (r.residue(a), r.residue(b), r.residue(c));
            if bezout_certificate(&bezout_certificate(&a, &b).unwrap().d, &c).unwrap().d.is_unit() {
                if let Ok(w) = find_pq(&a, &b, &c, &bounds()) {
                    w.verify().unwrap();
                    prop_assert!(PQWitness::holds(&a, &b, &c, &w.p, &w.q));
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn sr2_shifts_reach_unimodular_pairs() {
    runner(200)
        .run(&ring_and::<3>(), |(_, [a, b, c])| {
            if let Ok(shifts) = sr2_reduce(&[a.clone(), b.clone(), c.clone()], &bounds()) {
                let x = &a + &(&shifts[0] * &c);
                let y = &b + &(&shifts[1] * &c);
                prop_assert!(bezout_certificate(&x, &y).unwrap().d.is_unit());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn neat_witnesses_verify() {
    runner(300)
        .run(&ring_and::<3>(), |(_, [a, b, c])| {
            if let Ok(w) = neat_witness(&a, &b, &c) {
                w.verify().unwrap();
                prop_assert!(!a.is_zero());
                prop_assert_eq!(&w.r * &w.s, a.clone());
            }
            prop_assert!(!is_neat(&a) || !a.is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn clean_quotients_of_integers() {
    let strat = (2i64..=400, 0i64..=400, 0i64..400);
    runner(300)
        .run(&strat, |(c, a, x)| {
            let z = Ring::Integers;
            let (ci, ai) = (z.from_i64(c), z.from_i64(a));
            let w = neat_witness(&ci, &ai, &z.from_i64(1 - a)).unwrap();
            let d = clean_decompose(&w.r, &w.s, &ai, &z.from_i64(x)).unwrap();
            d.verify().unwrap();
            prop_assert_eq!(d.quotient_order, c as u64);
            prop_assert_eq!((d.idempotent + d.unit) % c as u64, (x % c) as u64);
            Ok(())
        })
        .unwrap();
}

#[test]
fn idempotents_are_complete() {
    runner(100)
        .run(&(1u64..=300), |m| {
            let brute: Vec<u64> = (0..m).filter(|&e| e * e % m == e).collect();
            let mut got = idempotents(m);
            got.sort_unstable();
            prop_assert_eq!(got, brute);
            for x in 0..m {
                let (e, u) = clean_split(x, m).unwrap();
                prop_assert_eq!((e + u) % m, x);
            }
            Ok(())
        })
        .unwrap();
}
