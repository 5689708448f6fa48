//! Operator actions on Fock space: Heisenberg modes, lattice and general
//! vertex operator modes, divided powers, Garland operators and exponentials.

mod divided;
mod garland;
mod modes;
mod word;

pub use divided::{divided_power, divided_power_iterated, divided_power_sum, exp_mode, mode_window, support_top};
pub use garland::{garland_apply, garland_poly, instantiate};
pub use modes::{h_series, heis_mode, y_general_mode, y_lattice_mode};
pub use word::{a_mode_coeff, ModeSign, VertexWord};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{grade, integrality_check, FockElement, PSMonomial};
    use crate::lattice::{Lattice, LatticeVector};
    use crate::rational::{factorial, q, qf, Q};
    use crate::symfunc::{change_basis, h_in_p, p_in_h, Basis, SymPoly};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(v)
    }

    fn e(lat: &Lattice, eta: &[i64]) -> FockElement {
        FockElement::exp(lat, &lv(eta)).unwrap()
    }

    fn mono(f: &[(usize, u32, u32)]) -> PSMonomial {
        PSMonomial::from_factors(f.to_vec())
    }

    fn single(m: PSMonomial, off: &[i64], c: Q) -> FockElement {
        let mut x = FockElement::zero(off.len());
        x.add_term(m, off.to_vec(), c);
        x
    }

    #[test]
    fn a_mode_coeff_examples() {
        assert_eq!(a_mode_coeff(ModeSign::Plus, 1, 0), BigInt::from(1));
        assert_eq!(a_mode_coeff(ModeSign::Minus, 2, 3), BigInt::from(2));
        assert_eq!(a_mode_coeff(ModeSign::Plus, 2, 1), BigInt::from(-2));
        assert_eq!(a_mode_coeff(ModeSign::Minus, 1, 0), BigInt::from(0));
        assert_eq!(a_mode_coeff(ModeSign::Plus, 1, -1), BigInt::from(0));
        assert_eq!(a_mode_coeff(ModeSign::Minus, 3, 2), BigInt::from(0));
    }

    #[test]
    fn heis_mode_examples() {
        let a1 = Lattice::a1();
        let vac = FockElement::vacuum(1);
        let a = lv(&[1]);
        let x = heis_mode(&a1, &a, -1, &vac).unwrap();
        assert_eq!(x, single(mono(&[(0, 1, 1)]), &[0], q(1)));
        assert_eq!(heis_mode(&a1, &a, 1, &x).unwrap(), vac.scale(&q(2)));
        assert_eq!(heis_mode(&a1, &a, 0, &e(&a1, &[1])).unwrap(), e(&a1, &[1]).scale(&q(2)));
        assert!(heis_mode(&a1, &LatticeVector(vec![qf(1, 2)]), 1, &vac).is_err());
    }

    #[test]
    fn heisenberg_commutator() {
        let a2 = Lattice::a2();
        let u = single(mono(&[(0, 1, 2), (1, 2, 1)]), &[1, 0], q(3));
        let (a, b) = (lv(&[1, 0]), lv(&[1, 2]));
        for (m, n) in [(1, -1), (2, -2), (1, -2), (2, 1)] {
            let ab = heis_mode(&a2, &a, m, &heis_mode(&a2, &b, n, &u).unwrap()).unwrap();
            let ba = heis_mode(&a2, &b, n, &heis_mode(&a2, &a, m, &u).unwrap()).unwrap();
            let expect = if m == -n { u.scale(&q(m * a2.pairing(&a, &b).unwrap().to_integer().try_into().unwrap_or(0i64))) } else { u.zero_like() };
            assert_eq!(ab.sub(&ba), expect, "m={m} n={n}");
        }
    }

    #[test]
    fn h_series_matches_symmetric_functions() {
        for m in 0..6 {
            assert_eq!(h_series(&[1, -2], m), instantiate(&h_in_p(m), &[1, -2]));
        }
    }

    #[test]
    fn y_lattice_mode_examples() {
        let a1 = Lattice::a1();
        let vac = FockElement::vacuum(1);
        let a = lv(&[1]);
        assert_eq!(y_lattice_mode(&a1, &a, -1, &vac).unwrap(), e(&a1, &[1]));
        assert_eq!(y_lattice_mode(&a1, &a, -2, &vac).unwrap(), single(mono(&[(0, 1, 1)]), &[1], q(1)));
        assert_eq!(y_lattice_mode(&a1, &a, 1, &e(&a1, &[-1])).unwrap(), vac);
        assert!(y_lattice_mode(&a1, &a, 0, &vac).unwrap().is_zero());
    }

    #[test]
    fn lattice_mode_creates_complete_homogeneous() {
        // Y(e^α,z)1 = Σ h_{α,-m} z^m e^α
        let a2 = Lattice::a2();
        let vac = FockElement::vacuum(2);
        for m in 0..5u32 {
            let got = y_lattice_mode(&a2, &lv(&[1, 1]), -(m as i64) - 1, &vac).unwrap();
            let mut want = FockElement::zero(2);
            want.add_poly(&[1, 1], &h_series(&[1, 1], m), &q(1));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn general_mode_examples() {
        let a1 = Lattice::a1();
        let vac = FockElement::vacuum(1);
        let v = VertexWord::new(vec![(vec![1], 1)], vec![1]).unwrap();
        let got = y_general_mode(&a1, &v, -2, &vac).unwrap();
        let mut want = single(mono(&[(0, 1, 2)]), &[1], q(1));
        want.add_term(mono(&[(0, 2, 1)]), vec![1], q(1));
        assert_eq!(got, want);

        let pure = VertexWord::charge(&[1]);
        let u = single(mono(&[(0, 1, 1), (0, 2, 1)]), &[-1], q(2));
        for n in -4..3 {
            assert_eq!(
                y_general_mode(&a1, &pure, n, &u).unwrap(),
                y_lattice_mode(&a1, &lv(&[1]), n, &u).unwrap()
            );
        }
    }

    #[test]
    fn general_mode_on_charge_zero_reduces_to_heisenberg() {
        let a2 = Lattice::a2();
        let mut u = single(mono(&[(0, 1, 2), (1, 3, 1)]), &[1, -1], q(2));
        u.add_term(mono(&[(1, 1, 1)]), vec![0, 0], q(-5));
        let alpha = [1, -1];
        let first = VertexWord::new(vec![(alpha.to_vec(), 1)], vec![0, 0]).unwrap();
        let second = VertexWord::new(vec![(alpha.to_vec(), 2)], vec![0, 0]).unwrap();
        for n in -3..4 {
            let h = heis_mode(&a2, &lv(&alpha), n, &u).unwrap();
            assert_eq!(y_general_mode(&a2, &first, n, &u).unwrap(), h);
            // Y(α(-2)1, z) = ∂α(z)
            let h = heis_mode(&a2, &lv(&alpha), n - 1, &u).unwrap().scale(&q(-n));
            assert_eq!(y_general_mode(&a2, &second, n, &u).unwrap(), h);
        }
    }

    #[test]
    fn divided_power_examples() {
        let a1 = Lattice::a1();
        let vac = FockElement::vacuum(1);
        let ea = VertexWord::charge(&[1]);
        assert!(divided_power(&a1, &ea, -1, 2, &vac).unwrap().is_zero());
        assert_eq!(divided_power(&a1, &ea, -2, 2, &vac).unwrap(), e(&a1, &[2]).scale(&q(-1)));
        let v = VertexWord::new(vec![(vec![1], 2)], vec![1]).unwrap();
        let u = single(mono(&[(0, 1, 1)]), &[-1], q(3));
        assert_eq!(divided_power(&a1, &v, -1, 1, &u).unwrap(), y_general_mode(&a1, &v, -1, &u).unwrap());
    }

    #[test]
    fn product_route_matches_iteration() {
        let cases: Vec<(Lattice, Vec<i64>, FockElement)> = vec![
            (Lattice::a1(), vec![1], single(mono(&[(0, 1, 2)]), &[-1], q(1))),
            (Lattice::a1(), vec![-1], single(mono(&[(0, 2, 1)]), &[1], q(2))),
            (Lattice::a2(), vec![1, 1], single(mono(&[(0, 1, 1), (1, 1, 1)]), &[0, -1], q(1))),
            (Lattice::new(vec![vec![2, 0], vec![0, 4]]).unwrap(), vec![1, -1], single(mono(&[(1, 2, 1)]), &[-1, 1], q(1))),
        ];
        for (lat, alpha, u) in cases {
            let w = VertexWord::charge(&alpha);
            for r in 2..=3 {
                for n in mode_window(&lat, &w, r, &u, 3) {
                    let a = divided_power(&lat, &w, n, r, &u).unwrap();
                    let b = divided_power_iterated(&lat, &w, n, r, &u).unwrap();
                    assert_eq!(a, b, "alpha={alpha:?} r={r} n={n}");
                }
            }
        }
    }

    #[test]
    fn module_action_on_half_coset() {
        let a1 = Lattice::a1();
        let half = LatticeVector(vec![qf(1, 2)]);
        let u = FockElement::exp(&a1, &half).unwrap();
        // ⟨α, α/2⟩ = 1: Y(e^α,z)e^{α/2} = z E^-(-α,z) e^{3α/2}
        let got = y_lattice_mode(&a1, &lv(&[1]), -2, &u).unwrap();
        assert_eq!(got, FockElement::exp(&a1, &LatticeVector(vec![qf(3, 2)])).unwrap());
        let w = VertexWord::charge(&[1]);
        for n in mode_window(&a1, &w, 2, &u, 3) {
            assert_eq!(
                divided_power(&a1, &w, n, 2, &u).unwrap(),
                divided_power_iterated(&a1, &w, n, 2, &u).unwrap()
            );
        }
    }

    #[test]
    fn support_top_is_sharp_for_vacuum() {
        let a1 = Lattice::a1();
        let vac = FockElement::vacuum(1);
        let w = VertexWord::charge(&[1]);
        assert_eq!(support_top(&a1, &w, 1, &vac), Some(-1));
        assert_eq!(support_top(&a1, &w, 2, &vac), Some(-2));
        // coefficient of (z_1 z_2)^2 in (z_1 - z_2)^2 E^-(z_1) E^-(z_2), halved
        let mut want = single(mono(&[(0, 2, 1)]), &[2], qf(1, 2));
        want.add_term(mono(&[(0, 1, 2)]), vec![2], qf(-1, 2));
        assert_eq!(divided_power(&a1, &w, -3, 2, &vac).unwrap(), want);
    }

    #[test]
    fn garland_examples() {
        for n in 0..6 {
            assert_eq!(garland_poly(1, n).unwrap(), SymPoly::generator(Basis::H, n).add(&SymPoly::zero(Basis::H)));
        }
        assert_eq!(garland_poly(2, 1).unwrap(), p_in_h(2));
        let p2 = SymPoly::generator(Basis::P, 2);
        let p4 = SymPoly::generator(Basis::P, 4);
        let want = change_basis(&p2.mul(&p2).add(&p4).scale(&qf(1, 2)), Basis::H);
        let got = garland_poly(2, 2).unwrap();
        assert_eq!(got, want);
        assert!(got.is_integral());
        assert_eq!(garland_poly(3, 0).unwrap(), SymPoly::one(Basis::H));
        assert!(garland_poly(0, 1).is_err());
    }

    #[test]
    fn garland_integrality() {
        for k in 1..=4 {
            for n in 0..=6 {
                assert!(garland_poly(k, n).unwrap().is_integral(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn garland_apply_examples() {
        let a1 = Lattice::a1();
        let vac = FockElement::vacuum(1);
        let a = lv(&[1]);
        assert_eq!(garland_apply(&a1, &a, 1, 1, &vac).unwrap(), single(mono(&[(0, 1, 1)]), &[0], q(1)));
        assert_eq!(garland_apply(&a1, &a, 2, 1, &vac).unwrap(), single(mono(&[(0, 2, 1)]), &[0], q(1)));
        let u = single(mono(&[(0, 3, 1)]), &[1], q(4));
        assert_eq!(garland_apply(&a1, &a, 3, 0, &u).unwrap(), u);
    }

    #[test]
    fn exp_mode_examples() {
        let a1 = Lattice::a1();
        let w = VertexWord::charge(&[1]);
        let u = e(&a1, &[-1]);
        let got = exp_mode(&a1, &w, 1, 5, &u, 10).unwrap();
        assert_eq!(got, u.add(&FockElement::vacuum(1).scale(&q(5))));
        assert_eq!(exp_mode(&a1, &w, 1, 0, &u, 10).unwrap(), u);
        let back = exp_mode(&a1, &w, 1, -5, &got, 10).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn exp_mode_reports_cap() {
        // y_{-1} raises the charge forever
        let a1 = Lattice::a1();
        let w = VertexWord::charge(&[0]);
        let v = VertexWord::new(vec![(vec![1], 1)], vec![0]).unwrap();
        assert!(exp_mode(&a1, &w, -1, 1, &FockElement::vacuum(1), 3).is_err());
        match exp_mode(&a1, &v, -1, 1, &FockElement::vacuum(1), 3) {
            Err(crate::Error::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 3);
                assert_eq!(partial.len(), 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn divided_sum_matches_iteration_when_commuting() {
        let lat = Lattice::new(vec![vec![2, 0], vec![0, 4]]).unwrap();
        let words = [VertexWord::charge(&[1, 0]), VertexWord::charge(&[0, 1])];
        let u = single(mono(&[(0, 1, 1)]), &[-1, 0], q(1));
        for n in [-1, -2, -3] {
            for r in 1..=3usize {
                let direct = {
                    let mut cur = u.clone();
                    for _ in 0..r {
                        let mut next = cur.zero_like();
                        for w in &words {
                            next = next.add(&y_general_mode(&lat, w, n, &cur).unwrap());
                        }
                        cur = next;
                    }
                    cur.scale(&(Q::from_integer(1.into()) / Q::from_integer(factorial(r as u64))))
                };
                assert_eq!(divided_sum(&lat, &words, n, r, &u), direct, "n={n} r={r}");
            }
        }
    }

    fn divided_sum(lat: &Lattice, w: &[VertexWord], n: i64, r: usize, u: &FockElement) -> FockElement {
        divided_power_sum(lat, w, n, r, u).unwrap()
    }

    /// `(a_{-1} b)_n = Σ_j a(-1-j) b_{n+j} + Σ_j b_{n-1-j} a(j)` for a
    /// Heisenberg field `a`, truncated where every term vanishes.
    fn normal_ordered(
        lat: &Lattice,
        alpha: &[i64],
        b: &dyn Fn(i64, &FockElement) -> FockElement,
        n: i64,
        u: &FockElement,
    ) -> FockElement {
        let mut out = u.zero_like();
        for j in 0..24 {
            let x = b(n + j, u);
            out = out.add(&heis_mode(lat, &lv(alpha), -1 - j, &x).unwrap());
            let y = heis_mode(lat, &lv(alpha), j, u).unwrap();
            out = out.add(&b(n - 1 - j, &y));
        }
        out
    }

    #[test]
    fn general_mode_matches_normal_ordered_products() {
        let a2 = Lattice::a2();
        let word = VertexWord::new(vec![(vec![1, 0], 1), (vec![0, 1], 1)], vec![1, 0]).unwrap();
        let eps = |n: i64, u: &FockElement| y_lattice_mode(&a2, &lv(&[1, 0]), n, u).unwrap();
        let inner = |n: i64, u: &FockElement| normal_ordered(&a2, &[0, 1], &eps, n, u);
        let u = e(&a2, &[1, 1]).mul_poly(&crate::fock::Poly::linear(&[0, 1], 1));
        for n in -3..=1 {
            let want = normal_ordered(&a2, &[1, 0], &inner, n, &u);
            assert_eq!(y_general_mode(&a2, &word, n, &u).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn paired_heisenberg_word_has_a_non_integral_divided_square() {
        // ε1(-1)ε2(-1)e^{ε1} on A2 with u = ε2(-1)e^{ε1+ε2}: v_{-1}^2 u / 2 has the
        // coefficient -23/2 on ε1(-1)e^{3ε1+ε2}
        let a2 = Lattice::a2();
        let word = VertexWord::new(vec![(vec![1, 0], 1), (vec![0, 1], 1)], vec![1, 0]).unwrap();
        let u = e(&a2, &[1, 1]).mul_poly(&crate::fock::Poly::linear(&[0, 1], 1));
        assert!(integrality_check(&u).is_integral());
        let once = y_general_mode(&a2, &word, -1, &u).unwrap();
        assert!(integrality_check(&once).is_integral());
        let out = divided_power(&a2, &word, -1, 2, &u).unwrap();
        match integrality_check(&out) {
            crate::fock::Verdict::NotIntegral { key, coeff } => {
                assert_eq!(key.offset, vec![3, 1]);
                assert_eq!(coeff, qf(-23, 2));
            }
            v => panic!("expected a non-integral coefficient, got {v:?}"),
        }
        // the same word with orthogonal directions stays integral
        let z4 = Lattice::new(vec![vec![2, 0], vec![0, 4]]).unwrap();
        let u = e(&z4, &[1, 1]).mul_poly(&crate::fock::Poly::linear(&[0, 1], 1));
        for n in mode_window(&z4, &word, 2, &u, 3) {
            assert!(integrality_check(&divided_power(&z4, &word, n, 2, &u).unwrap()).is_integral());
        }
    }

    #[test]
    fn word_json_round_trip() {
        let v = VertexWord::new(vec![(vec![1, 0], 1), (vec![0, 1], 2)], vec![1, 0]).unwrap();
        assert_eq!(VertexWord::from_json(&v.to_json()).unwrap(), v);
        let j = serde_json::json!({"heis": [], "gamma": [1]});
        assert_eq!(VertexWord::from_json(&j).unwrap(), VertexWord::charge(&[1]));
        assert!(VertexWord::from_json(&serde_json::json!({"heis":[{"alpha":[1],"n":0}],"gamma":[1]})).is_err());
        assert!(VertexWord::from_json(&serde_json::json!({"gamma":[0.5]})).is_err());
    }

    fn arb_elem() -> impl Strategy<Value = FockElement> {
        let term = (prop::collection::vec((0usize..2, 1u32..=3, 1u32..=2), 0..3), prop::collection::vec(-1i64..=1, 2), -4i64..=4);
        prop::collection::vec(term, 1..4).prop_map(|ts| {
            let mut x = FockElement::zero(2);
            for (f, off, c) in ts {
                x.add_term(PSMonomial::from_factors(f), off, q(c));
            }
            x
        })
    }

    fn arb_word() -> impl Strategy<Value = VertexWord> {
        (prop::collection::vec((prop::collection::vec(-1i64..=1, 2), 1u32..=2), 0..3), prop::collection::vec(-1i64..=1, 2))
            .prop_map(|(h, g)| VertexWord::new(h, g).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn charge_and_weight_shift(u in arb_elem(), v in arb_word(), dn in 0i64..3) {
            let a2 = Lattice::a2();
            let n = support_top(&a2, &v, 1, &u).unwrap_or(0) - dn;
            let out = y_general_mode(&a2, &v, n, &u).unwrap();
            let shift = q(v.weight(&a2) - n - 1);
            let gamma = LatticeVector::from_ints(v.gamma());
            let in_grades = grade(&a2, &u);
            for ((w, charge), _) in grade(&a2, &out) {
                let src = charge.sub(&gamma);
                let wsrc = &w - &shift;
                prop_assert!(in_grades.contains_key(&(wsrc, src)));
            }
        }

        #[test]
        fn modes_are_linear(u in arb_elem(), w in arb_elem(), v in arb_word(), n in -4i64..2, c in -3i64..=3) {
            let a2 = Lattice::a2();
            let lhs = y_general_mode(&a2, &v, n, &u.add(&w.scale(&q(c)))).unwrap();
            let rhs = y_general_mode(&a2, &v, n, &u).unwrap().add(&y_general_mode(&a2, &v, n, &w).unwrap().scale(&q(c)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn divided_power_times_factorial_is_composition(u in arb_elem(), v in arb_word(), dn in 0i64..2, r in 1usize..=2) {
            let a2 = Lattice::a2();
            let n = support_top(&a2, &v, r, &u).unwrap_or(0) - dn;
            let mut it = u.clone();
            for _ in 0..r {
                it = y_general_mode(&a2, &v, n, &it).unwrap();
            }
            let dp = divided_power(&a2, &v, n, r, &u).unwrap();
            prop_assert_eq!(dp.scale(&Q::from_integer(factorial(r as u64))), it);
        }

        #[test]
        fn lattice_divided_powers_stay_integral(u in arb_elem(), a in prop::collection::vec(-2i64..=2, 2), dn in 0i64..3, r in 2usize..=3) {
            prop_assume!(a.iter().any(|&x| x != 0));
            let a2 = Lattice::a2();
            let w = VertexWord::charge(&a);
            let n = support_top(&a2, &w, r, &u).unwrap_or(0) - dn;
            let out = divided_power(&a2, &w, n, r, &u).unwrap();
            prop_assert!(integrality_check(&out).is_integral());
        }
    }
}
