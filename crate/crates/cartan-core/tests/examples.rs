use cartan_core::barratt_eccles::{c_boundary, delta_aw_c, phi_apply, unit, BeChain, CChain, CTuple};
use cartan_core::cartan::{cartan_lift, k3, zeta, CartanError, RelatorCache};
use cartan_core::cohomology::is_coboundary;
use cartan_core::resolution::{cup_ri, iota, w_boundary, w_coproduct, WGen};
use cartan_core::simplicial::{Cochain, FiniteSet};
use cartan_core::steenrod::{nu, steenrod_rep, SteenrodError};
use cartan_core::symmetric::{f_hom, g_hom, tau, Perm};

fn ct(v: &[usize]) -> CTuple {
    CTuple::new(v)
}

#[test]
fn iota_rows() {
    assert_eq!(iota::<i64>(2, WGen::e(2)).to_string(), "(0,1,0)");
    assert_eq!(iota::<i64>(3, WGen::e(2)).to_string(), "(0,1,2) + (0,2,0)");
    assert_eq!(iota::<i64>(3, WGen::e(3)).to_string(), "(0,1,0,1) + (0,1,2,0)");
    assert!(iota::<i64>(1, WGen::e(1)).is_zero());
}

#[test]
fn resolution_low_degrees() {
    assert_eq!(w_boundary::<i64>(3, WGen::e(1)).to_string(), "-e0 + ρe0");
    assert!(w_boundary::<i64>(3, WGen::e(0)).is_zero());
    assert_eq!(w_coproduct::<i64>(3, WGen::e(0)).len(), 1);
    // e0⊗e2 + e2⊗e0 + three pairs ρ^s e1 ⊗ ρ^t e1
    assert_eq!(w_coproduct::<i64>(3, WGen::e(2)).len(), 5);
}

#[test]
fn little_c_boundary_and_diagonal() {
    let x = CChain::<i64>::basis(ct(&[0, 1, 0]));
    assert_eq!(c_boundary(&x), CChain::basis(ct(&[1, 0])) + CChain::basis(ct(&[0, 1])));
    let d = delta_aw_c(&CChain::<i64>::basis(ct(&[0, 1])));
    assert_eq!(d.to_string(), "(0)⊗(0,1) + (0,1)⊗(1)");
}

#[test]
fn tau_and_conjugation() {
    assert_eq!(tau(3).images(), vec![1, 3, 5, 2, 4, 6]);
    for r in 2..=7 {
        assert_eq!(f_hom(r, 1).compose(&tau(r)), tau(r).compose(&g_hom(r, 1)));
    }
    assert_eq!(f_hom(2, 1), Perm::from_cycles("(1,3)(2,4)", 4).unwrap());
    assert_eq!(g_hom(2, 1), Perm::from_cycles("(1,2)(3,4)", 4).unwrap());
}

#[test]
fn cup_on_an_edge() {
    let x = FiniteSet::standard_simplex(1);
    let v0 = Cochain::<i64>::dual(x.cell_of_vertices(&[0]).unwrap());
    let e = Cochain::<i64>::dual(x.cell_of_vertices(&[0, 1]).unwrap());
    let edge = x.cell_of_vertices(&[0, 1]).unwrap();
    assert_eq!(phi_apply(&BeChain::basis(unit(2)), &[&v0, &e], &x).value(edge), 1);
    assert_eq!(cup_ri(2, 0, &[&v0, &e], &x).value(edge), 1);
}

#[test]
fn k3_first_rows() {
    assert!(k3::<i64>(3, WGen::e(0)).is_zero());
    assert!(!k3::<i64>(3, WGen::e(2)).is_zero());
    assert!(k3::<i64>(2, WGen::e(4)).is_zero());
}

#[test]
fn normalization_constants() {
    assert_eq!((nu::<i64>(0, 3), nu::<i64>(1, 3), nu::<i64>(2, 3)), (1, 1, -1));
    assert_eq!(nu::<i64>(1, 5), 2);
}

#[test]
fn cartan_on_a_point_vanishes() {
    let pt = FiniteSet::standard_simplex(0);
    let u = Cochain::<i64>::dual(pt.cells(0).next().unwrap());
    assert!(cartan_lift(3, 0, &u, &u, &pt).unwrap().reduce_mod(&3).is_zero());
    let cache = RelatorCache::new();
    assert!(zeta(&cache, 3, 0, &u, &u, &pt).unwrap().is_zero());
}

#[test]
fn bad_inputs_are_rejected() {
    let x = FiniteSet::standard_simplex(1);
    let v = Cochain::<i64>::dual(x.cells(0).next().unwrap());
    assert_eq!(cartan_lift(3, 0, &v, &v, &x), Err(CartanError::Steenrod(SteenrodError::NotCocycle(3))));
    assert_eq!(steenrod_rep(0, 0, 4, &v, &x), Err(SteenrodError::NotOddPrime(4)));
    assert_eq!(steenrod_rep(0, 2, 3, &v, &x), Err(SteenrodError::BadBockstein(2)));
}

#[test]
fn spheres_have_nontrivial_fundamental_classes() {
    for n in 1..=3 {
        let s = FiniteSet::boundary_of_simplex(n + 1);
        let a = Cochain::<i64>::dual(s.cells(n).next().unwrap());
        let cert = is_coboundary(&a, &s, 3).unwrap();
        assert!(!cert.is_coboundary() && cert.check(&a, &s, 3));
    }
}
