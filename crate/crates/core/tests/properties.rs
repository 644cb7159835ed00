//! Property tests over random posets and modules.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posetbocs::bocs::PosetBocs;
use posetbocs::burt_butler::{BasicLeft, LeftFrame, RealizedAlgebra, Side};
use posetbocs::incidence::{incidence_algebra, RowBalanced};
use posetbocs::qh::QhAlgebra;
use posetbocs::quiver::{hasse_presentation, right_quiver};
use posetbocs::remarks::{p_min0, socle_commutes_with_res0};
use posetbocs::{Field, Mat, Marking, Poset, Subspace, F101, F3, F7, Q};

fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| Poset::random(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn mat<F: Field>(rows: &[Vec<i64>]) -> Mat<F> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn random_posets_are_partial_orders(p in poset(7)) {
        for a in p.elements() {
            prop_assert!(p.leq(a, a));
            for b in p.elements() {
                prop_assert!(!(p.lt(a, b) && p.lt(b, a)));
                for c in p.elements() {
                    prop_assert!(!(p.leq(a, b) && p.leq(b, c)) || p.leq(a, c));
                }
            }
        }
        prop_assert_eq!(&p.opposite().opposite(), &p);
        prop_assert_eq!(&Poset::parse(&p.to_text()).unwrap(), &p);
        let q = p_min0(&p);
        for i in p.elements() {
            prop_assert_eq!(q.lt(i, p.n() + 1), p.is_minimal(i));
        }
    }

    #[test]
    fn prime_field_inverses(x in -1000i64..1000) {
        let a = F101::from_i64(x);
        if let Some(b) = a.inverse() {
            prop_assert_eq!(a * b, F101::from_i64(1));
        } else {
            prop_assert_eq!(x.rem_euclid(101), 0);
        }
    }

    #[test]
    fn rank_nullity(rows in small_mat(4, 5)) {
        let m = mat::<Q>(&rows);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.len(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x == &Q::from_i64(0)));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in small_mat(3, 5), b in small_mat(3, 5)) {
        let conv = |r: &Vec<Vec<i64>>| r.iter().map(|v| v.iter().map(|&x| F7::from_i64(x)).collect::<Vec<_>>()).collect::<Vec<_>>();
        let (u, w) = (Subspace::span(5, conv(&a)), Subspace::span(5, conv(&b)));
        let (s, i) = (u.sum(&w).unwrap(), u.intersect(&w).unwrap());
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u).unwrap() && i.is_subspace_of(&w).unwrap());
    }

    #[test]
    fn incidence_algebra_and_hasse_presentation(p in poset(5)) {
        let kp = incidence_algebra::<F3>(&p);
        prop_assert_eq!(kp.dim(), p.n() + p.card_lt());
        let h = hasse_presentation::<F3>(&p).unwrap();
        h.check().unwrap();
        prop_assert_eq!(h.quiver.path_algebra_dim().unwrap(), kp.dim());
    }

    #[test]
    fn row_balanced_dimension(p in poset(5)) {
        let rb = RowBalanced::<F3>::new(&p, &Marking::default_for(&p)).unwrap();
        prop_assert_eq!(rb.algebra.dim(), 1 + p.card_lt());
        prop_assert!(rb.check_row_sums());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn realized_dimensions_and_right_quiver(p in poset(4)) {
        let b = PosetBocs::<F3>::new(&p).unwrap();
        b.check_all().unwrap();
        let mk = Marking::default_for(&p);
        let r = RealizedAlgebra::new(&b, Side::Right, &mk).unwrap();
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        prop_assert_eq!(r.dim(), 1 + 2 * p.n() + p.card_lt());
        prop_assert_eq!(l.dim(), 1 + 2 * p.n() + 4 * p.card_lt());
        let q = right_quiver::<F3>(&p).unwrap();
        prop_assert_eq!(q.quiver.path_algebra_dim().unwrap(), r.dim());
        let bl = BasicLeft::new(&l, &p, &mk).unwrap();
        prop_assert_eq!(bl.algebra.frame().len(), p.n() + 1);
    }

    #[test]
    fn left_modules_without_trace_have_compatible_socles(p in poset(3), seed in any::<u64>()) {
        let b = PosetBocs::<F3>::new(&p).unwrap();
        let mk = Marking::default_for(&p);
        let l = RealizedAlgebra::new(&b, Side::Left, &mk).unwrap();
        let frame = LeftFrame::new(&l, &p, &mk).unwrap();
        let qh = QhAlgebra::left(&p, &b, &l, &frame).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = qh.coinduce(&qh.base.random(5, &mut rng).unwrap()).unwrap();
        m.check().unwrap();
        if qh.trace0(&m).unwrap().dim() == 0 {
            prop_assert!(socle_commutes_with_res0(&qh, &m).unwrap());
        }
        // Hom(P(i), M) is the weight space of the idempotent
        for i in 0..=p.n() {
            prop_assert_eq!(qh.projective(i).unwrap().hom_dim(&m), m.weight_dim(&qh.idem[i]).unwrap());
        }
    }
}
