use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nilcone::linalg::{charpoly_coeffs, jordan_type, rat, RationalMatrix, SeriesMatrix};
use nilcone::liealg::{jordan_nilpotent, series_matrix_from_coeffs};
use nilcone::partition::Partition;
use nilcone::series::{TruncatedSeries, Valuation};

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// A series with terms at exponents `lead..lead+len` and precision just above.
fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
    (-3i64..=3, prop::collection::vec(small_rational(), 0..6), 0i64..3).prop_map(|(lead, coeffs, extra)| {
        let precision = lead + coeffs.len() as i64 + extra;
        let pairs = coeffs.into_iter().enumerate().map(|(i, c)| (lead + i as i64, c));
        TruncatedSeries::new(pairs, precision).unwrap()
    })
}

/// The same series known to `extra` more terms, with arbitrary new terms.
fn extend(s: &TruncatedSeries, tail: &[BigRational]) -> TruncatedSeries {
    let p = s.precision();
    let pairs = s
        .terms()
        .map(|(e, c)| (e, c.clone()))
        .chain(tail.iter().enumerate().map(|(i, c)| (p + i as i64, c.clone())));
    TruncatedSeries::new(pairs, p + tail.len() as i64).unwrap()
}

fn arb_int_matrix(m: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-5i64..=5, m * m).prop_map(move |v| RationalMatrix::from_flat(m, v.into_iter().map(rat).collect()).unwrap())
}

/// A pole-free series matrix with integer coefficients at `z^0..z^(len-1)`.
fn arb_series_matrix(m: usize, len: usize) -> impl Strategy<Value = SeriesMatrix> {
    prop::collection::vec(arb_int_matrix(m), len)
        .prop_map(move |coeffs| series_matrix_from_coeffs(m, 0, &coeffs, len as i64).unwrap())
}

proptest! {
    #[test]
    fn valuation_is_additive_on_products(a in arb_series(), b in arb_series()) {
        let prod = &a * &b;
        if let (Valuation::Exact(x), Valuation::Exact(y)) = (a.valuation(), b.valuation()) {
            if prod.precision() > x + y {
                prop_assert_eq!(prod.valuation(), Valuation::Exact(x + y));
            }
        }
    }

    #[test]
    fn valuation_of_sum_is_at_least_the_min(a in arb_series(), b in arb_series()) {
        let lower = a.valuation().lower_bound().min(b.valuation().lower_bound());
        let sum = &a + &b;
        prop_assert!(sum.valuation().lower_bound() >= lower.min(sum.precision()));
    }

    #[test]
    fn precision_never_overstates(
        a in arb_series(),
        b in arb_series(),
        ta in prop::collection::vec(small_rational(), 0..4),
        tb in prop::collection::vec(small_rational(), 0..4),
    ) {
        let (a2, b2) = (extend(&a, &ta), extend(&b, &tb));
        prop_assert!((&a + &b).agrees_with(&(&a2 + &b2)));
        prop_assert!((&a * &b).agrees_with(&(&a2 * &b2)));
        prop_assert!((&a - &b).agrees_with(&(&a2 - &b2)));
    }

    #[test]
    fn charpoly_is_homogeneous(
        (mm, k) in (1usize..=4).prop_flat_map(|m| (arb_series_matrix(m, 5), 0i64..3)),
    ) {
        let f = charpoly_coeffs(&mm).unwrap();
        let g = charpoly_coeffs(&mm.shift(k)).unwrap();
        for (j, (fj, gj)) in f.iter().zip(&g).enumerate() {
            let shift = (j as i64 + 1) * k;
            match (fj.valuation(), gj.valuation()) {
                (Valuation::Exact(a), Valuation::Exact(b)) => prop_assert_eq!(b, a + shift),
                (fv, gv) => prop_assert!(gv.lower_bound() >= (fv.lower_bound() + shift).min(gj.precision())),
            }
            // F_j(z^k M) = z^(jk) F_j(M) on every exponent known to both.
            prop_assert!(gj.agrees_with(&fj.shift(shift)));
        }
    }

    #[test]
    fn charpoly_is_conjugation_invariant(
        mat in (1usize..=4).prop_flat_map(|m| (arb_series_matrix(m, 4), arb_int_matrix(m))),
    ) {
        let (mm, p) = mat;
        let Some(p_inv) = p.inverse() else { return Ok(()) };
        let size = mm.size();
        let pc = SeriesMatrix::from_rational(&p, 4);
        let pic = SeriesMatrix::from_rational(&p_inv, 4);
        let conj = pc.mul(&mm).unwrap().mul(&pic).unwrap();
        prop_assert_eq!(conj.size(), size);
        let f = charpoly_coeffs(&mm).unwrap();
        let g = charpoly_coeffs(&conj).unwrap();
        for (fj, gj) in f.iter().zip(&g) {
            prop_assert!(fj.agrees_with(gj));
        }
    }

    #[test]
    fn jets_determine_coefficients(
        m in 1usize..=3,
        k in 0usize..=4,
        base in prop::collection::vec(prop::collection::vec(-9i64..=9, 9), 7),
        tail in prop::collection::vec(prop::collection::vec(-9i64..=9, 9), 7),
    ) {
        let precision = 7i64;
        let to_mats = |rows: &[Vec<i64>]| -> Vec<RationalMatrix> {
            rows.iter().map(|r| RationalMatrix::from_flat(m, r[..m * m].iter().map(|&x| rat(x)).collect()).unwrap()).collect()
        };
        let a = series_matrix_from_coeffs(m, 0, &to_mats(&base), precision).unwrap();
        let d = series_matrix_from_coeffs(m, k as i64 + 1, &to_mats(&tail[..(precision as usize - k - 1)]), precision).unwrap();
        let b = a.add(&d).unwrap();
        let fa = charpoly_coeffs(&a).unwrap();
        let fb = charpoly_coeffs(&b).unwrap();
        for (x, y) in fa.iter().zip(&fb) {
            for e in 0..=k as i64 {
                prop_assert_eq!(x.coeff(e), y.coeff(e));
            }
        }
    }

    #[test]
    fn jordan_type_inverts_jordan_nilpotent(parts in prop::collection::vec(1usize..=5, 0..6)) {
        let mu = Partition::new(parts).unwrap();
        prop_assert_eq!(jordan_type(&jordan_nilpotent(&mu)).unwrap(), mu);
    }
}
