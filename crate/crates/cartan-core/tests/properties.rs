use cartan_core::barratt_eccles::{be_boundary, c_boundary, BeChain, CChain, CTuple, Operation};
use cartan_core::resolution::{iota, iota_chain, w_boundary, WGen};
use cartan_core::simplicial::{aw, boundary, ez, shi, Cochain, FiniteSet, PointSeq, Product, SimplicialObject};
use cartan_core::suites::random_be_tuple;
use cartan_core::symmetric::Perm;
use cartan_core::FormalSum;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(r: usize) -> impl Strategy<Value = Perm> {
    Just((1..=r).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(&v).unwrap())
}

fn sum() -> impl Strategy<Value = FormalSum<u8, i64>> {
    prop::collection::vec((0u8..6, -4i64..5), 0..8).prop_map(|v| v.into_iter().collect())
}

/// A nondecreasing vertex sequence of length `d + 1` in `0..=m`.
fn monotone(m: usize, d: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=m, d + 1).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

fn random_cochain(x: &FiniteSet, d: usize, vals: &[i64]) -> Cochain<i64> {
    let values = x.cells(d).zip(vals.iter().cycle()).map(|(c, &v)| (c, v)).collect();
    Cochain::from_values(d, values)
}

proptest! {
    #[test]
    fn formal_sums_form_a_module(a in sum(), b in sum(), c in -3i64..4) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) - b.clone(), a.clone());
        prop_assert_eq!((a.clone() + b.clone()).scaled(&c), a.scaled(&c) + b.scaled(&c));
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(a.reduce_mod(&3).reduce_mod(&3), a.reduce_mod(&3));
        prop_assert!(a.scaled(&3).is_zero_mod(&3));
    }

    #[test]
    fn permutations_form_a_group((x, y, z) in (1usize..7).prop_flat_map(|r| (perm(r), perm(r), perm(r)))) {
        prop_assert_eq!(x.compose(&y).compose(&z), x.compose(&y.compose(&z)));
        prop_assert!(x.compose(&x.inverse()).is_identity());
        prop_assert_eq!(x.compose(&y).sign(), x.sign() * y.sign());
        prop_assert_eq!(Perm::from_cycles(&x.cycles(), x.arity()).unwrap(), x);
    }

    #[test]
    fn barratt_eccles_boundary_squares_to_zero(r in 1usize..5, n in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assume!(r > 1 || n == 0);
        let x = BeChain::<i64>::basis(random_be_tuple(&mut rng, r, n));
        prop_assert!(be_boundary(&be_boundary(&x)).is_zero());
    }

    #[test]
    fn iota_is_a_chain_map(r in 2usize..6, k in 0usize..5, n in 1usize..7) {
        let g = WGen::new(k % r, n);
        let lhs = c_boundary(&iota::<i64>(r, g));
        let rhs = iota_chain(r, &w_boundary::<i64>(r, g));
        prop_assert_eq!(lhs, rhs);
        let c: CChain = iota(r, g);
        prop_assert!(c_boundary(&c_boundary(&c)).is_zero());
    }

    #[test]
    fn phi_is_a_chain_map(
        r in 2usize..4,
        n in 0usize..4,
        seed in any::<u64>(),
        degs in prop::collection::vec(0usize..3, 3),
        vals in prop::collection::vec(-2i64..3, 1..6),
    ) {
        let host = FiniteSet::standard_simplex(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = BeChain::<i64>::basis(random_be_tuple(&mut rng, r, n));
        let cs: Vec<Cochain> = degs[..r].iter().enumerate().map(|(i, &d)| random_cochain(&host, d, &vals[i % vals.len()..])).collect();
        let ins: Vec<&Cochain> = cs.iter().collect();
        let op = Operation::new(r, n as i64, &x);
        prop_assume!(matches!(op.output_degree(&ins), Some(d) if d < 3));
        let lhs = op.hom_boundary(&ins, &host);
        let dx = be_boundary(&x);
        let rhs = if dx.is_zero() { Cochain::zero(lhs.degree) } else { Operation::new(r, n as i64 - 1, &dx).apply(&ins, &host) };
        prop_assert_eq!(lhs.values, rhs.values);
    }

    #[test]
    fn coboundary_squares_to_zero(d in 0usize..2, vals in prop::collection::vec(-3i64..4, 1..8)) {
        let x = FiniteSet::boundary_of_simplex(3);
        let c = random_cochain(&x, d, &vals);
        prop_assert!(c.coboundary(&x).coboundary(&x).is_zero());
    }

    #[test]
    fn cup_satisfies_leibniz(da in 0usize..2, db in 0usize..2, va in prop::collection::vec(-2i64..3, 1..6), vb in prop::collection::vec(-2i64..3, 1..6)) {
        let x = FiniteSet::standard_simplex(3);
        let (a, b) = (random_cochain(&x, da, &va), random_cochain(&x, db, &vb));
        let lhs = a.cup(&b, &x).coboundary(&x);
        let mut rhs = a.coboundary(&x).cup(&b, &x);
        let sign = if da % 2 == 0 { 1 } else { -1 };
        rhs.add_scaled(&a.cup(&b.coboundary(&x), &x), &sign);
        prop_assert_eq!(lhs.values, rhs.values);
    }

    #[test]
    fn contraction_on_random_simplices(
        (a, b) in (0usize..3, 0usize..3, 0usize..5).prop_flat_map(|(m, n, d)| (monotone(m, d), monotone(n, d)))
    ) {
        let xy = Product::new(PointSeq::<usize>::new(), PointSeq::<usize>::new());
        let z = FormalSum::<_, i64>::basis((a, b));
        // degenerate simplices are zero in the normalized complex
        prop_assume!(!xy.is_degenerate(z.keys().next().unwrap()));
        let mut lhs = ez(&xy, &aw(&xy, &z));
        lhs -= &z;
        let mut rhs = boundary(&xy, &shi(&xy, &z));
        rhs += &shi(&xy, &boundary(&xy, &z));
        prop_assert_eq!(lhs, rhs);
        let t = aw(&xy, &z);
        prop_assert_eq!(aw(&xy, &ez(&xy, &t)), t);
    }

    #[test]
    fn c_tuples_have_nilpotent_boundary(v in prop::collection::vec(0usize..4, 1..7)) {
        let t = CTuple::new(&v);
        prop_assume!(!t.is_degenerate());
        let x = CChain::<i64>::basis(t.clone());
        prop_assert!(c_boundary(&c_boundary(&x)).is_zero());
    }
}
