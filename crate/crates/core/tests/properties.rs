use proptest::prelude::*;

use agconv::ag_code::{cl_code, CurveKind, OnePointCurve};
use agconv::convolutional::{
    free_distance_exact, free_distance_truncated, generalized_singleton, split_construction,
    verify_reduced_basic, ConvolutionalCode, FreeDistanceLimits, PolyMatrix, SplitSpec,
};
use agconv::dump::{read_matrix, read_poly_matrix, write_matrix, write_poly_matrix};
use agconv::field::FiniteField;
use agconv::matrix::Matrix;
use agconv::poly::Poly;

const SMALL_ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

fn gf(q: u64) -> FiniteField {
    FiniteField::with_order(q).unwrap()
}

fn field_and_elements(count: usize) -> impl Strategy<Value = (u64, Vec<u32>)> {
    prop::sample::select(vec![2u64, 3, 4, 8, 25, 27, 64, 243, 256, 1024, 3125])
        .prop_flat_map(move |q| (Just(q), prop::collection::vec(0..q as u32, count)))
}

/// Random curve code parameters with `m` in the admissible range.
fn curve_case() -> impl Strategy<Value = (CurveKind, u32, u32)> {
    prop_oneof![
        (
            prop::sample::select(vec![4u32, 8, 9, 16]),
            any::<prop::sample::Index>()
        )
            .prop_map(|(q, i)| { (CurveKind::Rational, q, 1 + i.index(q as usize - 2) as u32) }),
        (
            prop::sample::select(vec![2u32, 4]),
            any::<prop::sample::Index>()
        )
            .prop_map(|(q, i)| {
                let lo = q - 1;
                let hi = 2 * q * q;
                (
                    CurveKind::CurveA,
                    q,
                    lo + i.index((hi - lo) as usize) as u32,
                )
            }),
        (
            prop::sample::select(vec![2u32, 8]),
            any::<prop::sample::Index>()
        )
            .prop_map(|(q, i)| {
                let lo = (2 * q).saturating_sub(3);
                let hi = 3 * q * q - 2 * q;
                (
                    CurveKind::CurveB,
                    q,
                    lo.max(1) + i.index((hi - lo.max(1)) as usize) as u32,
                )
            }),
    ]
}

fn poly_matrix(q: u64, rows: usize, cols: usize, deg: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(0..q as u32, deg + 1), rows * cols).prop_map(
        move |entries| {
            let f = gf(q);
            let polys: Vec<Poly> = entries.into_iter().map(Poly::from_coeffs).collect();
            PolyMatrix::new(&f, polys.chunks(cols).map(<[Poly]>::to_vec).collect()).unwrap()
        },
    )
}

fn family_code(kind: CurveKind, q: u32, m: u32, l: usize) -> ConvolutionalCode {
    let curve = OnePointCurve::new(kind, q).unwrap();
    let code = cl_code(&curve, m, None).unwrap();
    split_construction(&SplitSpec::unit_memory(curve.field(), code.generator().clone(), l).unwrap())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((q, v) in field_and_elements(3)) {
        let f = gf(q);
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, b), f.mul_reference(a, b));
        if b != 0 {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn dual_is_orthogonal((kind, q, m) in curve_case()) {
        let curve = OnePointCurve::new(kind, q).unwrap();
        let code = cl_code(&curve, m, None).unwrap();
        let dual = code.dual();
        prop_assert_eq!(code.k() + dual.k(), code.n());
        let prod = code.generator().mul(curve.field(), &dual.generator().transpose()).unwrap();
        prop_assert!(prod.is_zero());
    }

    #[test]
    fn riemann_roch_dimension((kind, q, m) in curve_case()) {
        let curve = OnePointCurve::new(kind, q).unwrap();
        prop_assert_eq!(curve.rr_basis(m).len() as u32, m + 1 - curve.genus());
        prop_assert_eq!(cl_code(&curve, m, None).unwrap().k() as u32, m + 1 - curve.genus());
    }

    #[test]
    fn family_splits_are_reduced_basic((kind, q, m) in curve_case(), frac in 0.0f64..1.0) {
        let k = (m + 1 - OnePointCurve::new(kind, q).unwrap().genus()) as usize;
        prop_assume!(k >= 2);
        let l = 1 + ((k / 2 - 1) as f64 * frac) as usize;
        let c = family_code(kind, q, m, l);
        let v = verify_reduced_basic(&c);
        prop_assert!(v.basic && v.reduced);
        prop_assert_eq!((c.k(), c.degree(), c.memory()), (k - l, l, 1));
    }

    #[test]
    fn basic_routes_agree(g in (prop::sample::select(vec![2u64, 3]), 1usize..=3, 0usize..=3)
        .prop_flat_map(|(q, rows, extra)| poly_matrix(q, rows, rows + extra, 2)))
    {
        let by_gcd = g.minor_gcd();
        if let Some(basic) = g.basic_by_evaluation(1 << 12) { prop_assert_eq!(basic, by_gcd.degree() == Some(0)) }
    }

    #[test]
    fn encoding_is_linear(
        (q, r) in prop::sample::select(vec![(4u32, 2u32), (8, 3), (8, 5), (16, 6)]),
        seed in prop::collection::vec(0u32..16, 24),
        scale in 1u32..16,
    ) {
        let c = family_code(CurveKind::Rational, q, r, 1);
        let f = c.field().clone();
        let k = c.k();
        let msg = |offset: usize| -> Vec<Poly> {
            (0..k)
                .map(|i| Poly::from_coeffs((0..3).map(|t| seed[(offset + 3 * i + t) % seed.len()] % q).collect()))
                .collect()
        };
        let (u, w) = (msg(0), msg(7));
        let s = scale % q;
        let combo: Vec<Poly> = u.iter().zip(&w).map(|(a, b)| a.add(&f, &b.scale(&f, s))).collect();
        let lhs = c.encode(&combo).unwrap();
        let (eu, ew) = (c.encode(&u).unwrap(), c.encode(&w).unwrap());
        for j in 0..c.n() {
            prop_assert_eq!(&lhs[j], &eu[j].add(&f, &ew[j].scale(&f, s)));
        }
        let deg_u = u.iter().filter_map(Poly::degree).max();
        let deg_v = eu.iter().filter_map(Poly::degree).max();
        if let (Some(du), Some(dv)) = (deg_u, deg_v) {
            prop_assert!(dv <= du + c.memory());
        }
    }

    #[test]
    fn block_dump_round_trip(
        (q, rows, cols, data) in prop::sample::select(SMALL_ORDERS.to_vec())
            .prop_flat_map(|q| (Just(q), 1usize..5, 1usize..7))
            .prop_flat_map(|(q, r, c)| (Just(q), Just(r), Just(c), prop::collection::vec(0..q as u32, r * c)))
    ) {
        let m = Matrix::from_flat(rows, cols, data).unwrap();
        let mut buf = Vec::new();
        write_matrix(&mut buf, q as u32, &m).unwrap();
        prop_assert_eq!(read_matrix(&buf[..]).unwrap(), (q as u32, m));
    }

    #[test]
    fn poly_dump_round_trip(
        g in (prop::sample::select(SMALL_ORDERS.to_vec()), 1usize..4, 1usize..6, 0usize..4)
            .prop_flat_map(|(q, r, c, d)| poly_matrix(q, r, c, d))
    ) {
        let mut buf = Vec::new();
        write_poly_matrix(&mut buf, &g).unwrap();
        prop_assert_eq!(read_poly_matrix(&buf[..]).unwrap(), g);
    }

    #[test]
    fn singleton_degenerates_to_block_bound(n in 2usize..200, k_frac in 0.0f64..1.0) {
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        prop_assert_eq!(generalized_singleton(n, k, 0), n - k + 1);
    }

    #[test]
    fn truncated_search_bounds_state_graph(
        (q, h) in prop::sample::select(vec![2u64, 3, 4])
            .prop_flat_map(|q| (Just(q), prop::collection::vec(0..q as u32, 4 * 7)))
    ) {
        let f = gf(q);
        let m = Matrix::from_flat(4, 7, h).unwrap();
        prop_assume!(m.rank(&f) == 4);
        let c = split_construction(&SplitSpec::unit_memory(&f, m, 1).unwrap()).unwrap();
        let exact = free_distance_exact(&c, &FreeDistanceLimits::default()).unwrap().distance().unwrap();
        let t = free_distance_truncated(&c, 3, 1 << 16).unwrap().unwrap();
        prop_assert!(exact <= t.distance);
        prop_assert!(exact <= c.singleton_bound());
    }
}
