//! Elements of `V_L` and of its modules `V_{L+γ}`, the integral basis,
//! grading and reduction mod `p`.

mod element;
mod hbasis;
mod mono;
mod poly;

pub use element::FockElement;
pub use hbasis::{
    element_from_json, from_keyed, grade, integrality_check, reduce_mod_p, to_h_basis, to_s_basis, HBasisKey,
    KeyedElement, ModPElement, Verdict,
};
pub use mono::PSMonomial;
pub use poly::Poly;
pub(crate) use poly::compositions;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Lattice, LatticeVector};
    use crate::rational::{q, qf, Q};
    use crate::symfunc::{Basis, Partition};
    use proptest::prelude::*;

    fn key(parts: &[&[u32]], off: &[i64]) -> HBasisKey {
        HBasisKey {
            parts: parts.iter().map(|p| Partition::new(p.to_vec()).unwrap()).collect(),
            offset: off.to_vec(),
        }
    }

    fn alpha_mode(n: u32, c: Q) -> FockElement {
        let mut e = FockElement::zero(1);
        e.add_term(PSMonomial::var(0, n), vec![0], c);
        e
    }

    #[test]
    fn h_basis_examples() {
        let h = to_h_basis(&alpha_mode(1, q(1)));
        assert_eq!(h.terms.len(), 1);
        assert_eq!(h.terms[&key(&[&[1]], &[0])], q(1));

        let h = to_h_basis(&alpha_mode(2, q(1)));
        assert_eq!(h.terms.len(), 2);
        assert_eq!(h.terms[&key(&[&[2]], &[0])], q(2));
        assert_eq!(h.terms[&key(&[&[1, 1]], &[0])], q(-1));

        let h = to_h_basis(&FockElement::vacuum(1));
        assert_eq!(h.terms.len(), 1);
        assert_eq!(h.terms[&key(&[&[]], &[0])], q(1));
    }

    #[test]
    fn integrality_examples() {
        assert!(integrality_check(&alpha_mode(2, q(1))).is_integral());
        match integrality_check(&alpha_mode(1, qf(1, 2))) {
            Verdict::NotIntegral { coeff, .. } => assert_eq!(coeff, qf(1, 2)),
            Verdict::Integral => panic!("expected a witness"),
        }
        assert!(integrality_check(&FockElement::vacuum(2)).is_integral());
    }

    #[test]
    fn grade_examples() {
        let a1 = Lattice::a1();
        let mut e = FockElement::zero(1);
        e.add_term(PSMonomial::var(0, 1), vec![1], q(1));
        let g = grade(&a1, &e);
        assert_eq!(g.len(), 1);
        assert!(g.contains_key(&(q(2), LatticeVector::from_ints(&[1]))));

        let g = grade(&a1, &FockElement::vacuum(1));
        assert!(g.contains_key(&(q(0), LatticeVector::from_ints(&[0]))));

        let half = LatticeVector(vec![qf(1, 2)]);
        let e = FockElement::exp(&a1, &half).unwrap();
        let g = grade(&a1, &e);
        assert!(g.contains_key(&(qf(1, 4), half)));
    }

    #[test]
    fn mod_p_examples() {
        let r = reduce_mod_p(&alpha_mode(2, q(1)), 2).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[&key(&[&[1, 1]], &[0])], 1);

        let r = reduce_mod_p(&FockElement::vacuum(1), 5).unwrap();
        assert_eq!(r.terms[&key(&[&[]], &[0])], 1);

        let r = reduce_mod_p(&alpha_mode(1, q(3)), 3).unwrap();
        assert!(r.is_zero());

        assert!(reduce_mod_p(&alpha_mode(1, qf(1, 2)), 3).is_err());
        assert!(reduce_mod_p(&FockElement::vacuum(1), 4).is_err());
    }

    #[test]
    fn coset_validation() {
        let a1 = Lattice::a1();
        assert!(FockElement::zero_in(&a1, &LatticeVector(vec![qf(1, 3)])).is_err());
        let m = FockElement::exp(&a1, &LatticeVector(vec![qf(3, 2)])).unwrap();
        assert_eq!(m.coset(), &LatticeVector(vec![qf(1, 2)]));
        assert_eq!(m.terms()[0].1, LatticeVector(vec![qf(3, 2)]));
        assert!(m.offset_of(&LatticeVector(vec![q(1)])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a2 = Lattice::a2();
        let coset = a2.dual_coset_reps()[1].clone();
        let mut e = FockElement::zero_in(&a2, &coset).unwrap();
        e.add_term(PSMonomial::from_factors(vec![(0, 1, 2), (1, 3, 1)]), vec![1, -1], qf(-3, 2));
        e.add_term(PSMonomial::one(), vec![0, 0], q(4));
        let j = e.to_json();
        assert_eq!(FockElement::from_json(&a2, &j).unwrap(), e);
        assert_eq!(j["terms"][0]["monomial"], serde_json::json!([]));
        assert_eq!(element_from_json(&a2, &to_h_basis(&e).to_json()).unwrap(), e);
        assert_eq!(element_from_json(&a2, &to_s_basis(&e).to_json()).unwrap(), e);
        assert_eq!(element_from_json(&a2, &j).unwrap(), e);
        let mut bad = to_h_basis(&e).to_json();
        bad["terms"][0]["hkey"] = serde_json::json!([[3, [1]]]);
        assert!(element_from_json(&a2, &bad).is_err());
    }

    fn arb_element(rank: usize) -> impl Strategy<Value = FockElement> {
        let term = (
            prop::collection::vec((0..rank, 1u32..=3, 1u32..=2), 0..3),
            prop::collection::vec(-1i64..=1, rank),
            -6i64..=6,
            1i64..=4,
        );
        prop::collection::vec(term, 0..5).prop_map(move |ts| {
            let mut e = FockElement::zero(rank);
            for (f, off, n, d) in ts {
                e.add_term(PSMonomial::from_factors(f), off, qf(n, d));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn h_expansion_round_trips(e in arb_element(2)) {
            prop_assert_eq!(from_keyed(&to_h_basis(&e)), e.clone());
            prop_assert_eq!(from_keyed(&to_s_basis(&e)), e);
        }

        #[test]
        fn h_and_s_integrality_agree(e in arb_element(2)) {
            prop_assert_eq!(to_h_basis(&e).is_integral(), to_s_basis(&e).is_integral());
        }

        #[test]
        fn grade_partitions_element(e in arb_element(2)) {
            let a2 = Lattice::a2();
            let g = grade(&a2, &e);
            let mut sum = e.zero_like();
            for piece in g.values() {
                sum = sum.add(piece);
            }
            prop_assert_eq!(sum, e);
        }
    }

    #[test]
    fn s_basis_keys() {
        let s = to_s_basis(&alpha_mode(2, q(1)));
        assert_eq!(s.basis, Basis::S);
        // p_2 = s_(2) - s_(1,1)
        assert_eq!(s.terms[&key(&[&[2]], &[0])], q(1));
        assert_eq!(s.terms[&key(&[&[1, 1]], &[0])], q(-1));
    }
}
