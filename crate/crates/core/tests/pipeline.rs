use lva_core::fock::{element_from_json, integrality_check, reduce_mod_p, to_h_basis, to_s_basis, FockElement, Verdict};
use lva_core::harness::random_element;
use lva_core::lattice::{Lattice, LatticeVector};
use lva_core::rational::{q, qf};
use lva_core::symfunc::{change_basis, jacobi_trudi, schur_by_vertex, Basis, Partition};
use lva_core::vertexops::{
    divided_power, divided_power_iterated, garland_apply, mode_window, y_general_mode, y_lattice_mode, VertexWord,
};

fn spaces() -> Vec<(Lattice, LatticeVector)> {
    let rect = Lattice::new(vec![vec![2, 0], vec![0, 4]]).unwrap();
    vec![
        (Lattice::a1(), LatticeVector::zero(1)),
        (Lattice::a1(), LatticeVector::from_json(&serde_json::json!(["1/2"])).unwrap()),
        (Lattice::a2(), LatticeVector::zero(2)),
        (Lattice::a2(), LatticeVector::from_json(&serde_json::json!(["1/3", "2/3"])).unwrap()),
        (rect, LatticeVector::zero(2)),
    ]
}

#[test]
fn vertex_schur_functions_are_single_schur_terms() {
    for lambda in Partition::up_to(5) {
        let s = change_basis(&schur_by_vertex(&lambda), Basis::S);
        assert_eq!(s.len(), 1, "{lambda}");
        assert_eq!(s.coeff(&lambda), q(1));
        assert!(schur_by_vertex(&lambda).same_function(&jacobi_trudi(&lambda)));
    }
}

#[test]
fn elements_survive_every_json_layout() {
    for (i, (lattice, coset)) in spaces().iter().enumerate() {
        let e = random_element(lattice, coset, 4, 11 + i as u64).unwrap();
        let from_p = FockElement::from_json(lattice, &e.to_json()).unwrap();
        let from_h = element_from_json(lattice, &to_h_basis(&e).to_json()).unwrap();
        let from_s = element_from_json(lattice, &to_s_basis(&e).to_json()).unwrap();
        assert_eq!(from_p, e);
        assert_eq!(from_h, e);
        assert_eq!(from_s, e);
    }
}

#[test]
fn closed_divided_powers_agree_with_iteration() {
    for (i, (lattice, coset)) in spaces().iter().enumerate() {
        let e = random_element(lattice, coset, 3, 40 + i as u64).unwrap();
        let e0: Vec<i64> = (0..lattice.rank()).map(|j| i64::from(j == 0)).collect();
        let alpha = LatticeVector::from_ints(&e0);
        let word = VertexWord::charge(&e0);
        for r in 1..=3 {
            for n in mode_window(lattice, &word, r, &e, 3) {
                let closed = divided_power(lattice, &word, n, r, &e).unwrap();
                let iterated = divided_power_iterated(lattice, &word, n, r, &e).unwrap();
                assert_eq!(closed, iterated, "space {i}, r = {r}, n = {n}");
                assert!(integrality_check(&closed).is_integral(), "space {i}, r = {r}, n = {n}");
                if r == 1 {
                    assert_eq!(closed, y_lattice_mode(lattice, &alpha, n, &e).unwrap());
                }
            }
        }
    }
}

#[test]
fn modes_compose_through_the_vacuum() {
    let a1 = Lattice::a1();
    let alpha = LatticeVector::from_ints(&[1]);
    let vac = FockElement::vacuum(1);
    // e^α_{-1} 1 = e^α, then e^{-α}_{1} e^α = 1
    let ea = y_lattice_mode(&a1, &alpha, -1, &vac).unwrap();
    assert_eq!(ea, FockElement::exp(&a1, &alpha).unwrap());
    let back = y_lattice_mode(&a1, &LatticeVector::from_ints(&[-1]), 1, &ea).unwrap();
    assert_eq!(back, vac);
    // α(-1)e^α as a word acting at n = -1 on the vacuum
    let word = VertexWord::new(vec![(vec![1], 1)], vec![1]).unwrap();
    let w = y_general_mode(&a1, &word, -1, &vac).unwrap();
    let h = to_h_basis(&w);
    assert_eq!(h.terms.len(), 1);
    assert_eq!(h.terms.values().next(), Some(&q(1)));
}

#[test]
fn garland_of_the_first_row_multiplies_by_complete_homogeneous() {
    let a2 = Lattice::a2();
    let alpha = LatticeVector::from_ints(&[1, 1]);
    let vac = FockElement::vacuum(2);
    for n in 0..=4 {
        let g = garland_apply(&a2, &alpha, 1, n, &vac).unwrap();
        assert!(integrality_check(&g).is_integral());
        assert_eq!(g.max_degree(), n);
    }
}

#[test]
fn outputs_reduce_modulo_small_primes() {
    let a2 = Lattice::a2();
    let e = random_element(&a2, &LatticeVector::zero(2), 4, 5).unwrap();
    let word = VertexWord::charge(&[1, 1]);
    let out = divided_power(&a2, &word, -3, 2, &e).unwrap();
    assert!(integrality_check(&out).is_integral());
    for p in [2, 3, 5] {
        reduce_mod_p(&out, p).unwrap();
    }
    let half = e.scale(&qf(1, 2));
    match integrality_check(&half) {
        Verdict::NotIntegral { coeff, .. } => assert_eq!(coeff.denom().to_string(), "2"),
        Verdict::Integral => panic!("halved element reported integral"),
    }
    // reduction is only defined on the integral form
    for p in [2, 3, 5] {
        assert!(reduce_mod_p(&half, p).is_err());
    }
}
