//! Property suites over randomly generated exact matrices and small
//! incidence comodules.

use std::sync::Arc;

use proptest::prelude::*;

use coalg::coalgebra::{DualElement, Side};
use coalg::comodule::hom_space;
use coalg::exactlin::{kernel_basis, rref, subspace_ops, Field, Matrix, Scalar, SubspaceBasis};
use coalg::incidence::{build_incidence, e_r_injective, FinitePoset};

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Q),
        Just(Field::Fp(2)),
        Just(Field::Fp(3)),
        Just(Field::Fp(7)),
    ]
}

fn arb_matrix() -> impl Strategy<Value = Matrix> {
    (arb_field(), 1usize..5, 1usize..5).prop_flat_map(|(field, rows, cols)| {
        proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |cells| {
            let mut m = Matrix::zero(rows, cols, field);
            for (idx, v) in cells.iter().enumerate() {
                m.set(idx / cols, idx % cols, Scalar::from_int(*v, field))
                    .unwrap();
            }
            m
        })
    })
}

fn arb_vectors(ambient: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, ambient), 0..count)
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in arb_matrix()) {
        let (r1, p1) = rref(&m);
        let (r2, p2) = rref(&r1);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn rank_nullity(m in arb_matrix()) {
        let rank = m.rank();
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for v in &kernel {
            let image = m.mul_vec(v).unwrap();
            prop_assert!(image.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn grassmann_identity(
        field in arb_field(),
        us in arb_vectors(4, 4),
        vs in arb_vectors(4, 4),
    ) {
        let lift = |vecs: Vec<Vec<i64>>| {
            let scalars: Vec<Vec<Scalar>> = vecs
                .iter()
                .map(|v| v.iter().map(|x| Scalar::from_int(*x, field)).collect())
                .collect();
            SubspaceBasis::from_vectors(4, field, &scalars).unwrap()
        };
        let u = lift(us);
        let v = lift(vs);
        let (sum, meet, u_in_v, v_in_u) = subspace_ops(&u, &v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert_eq!(u_in_v, sum.dim() == v.dim());
        prop_assert_eq!(v_in_u, sum.dim() == u.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Hom dimensions over a random small poset agree with the closed
    /// form and every basis morphism commutes with sampled dual actions.
    #[test]
    fn hom_invariants_on_random_posets(
        n in 1usize..5,
        edge_bits in proptest::collection::vec(any::<bool>(), 6),
        j_pick in 0usize..16,
        v_pick in 0usize..16,
    ) {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let mut covers = Vec::new();
        let mut bit = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if edge_bits[bit % edge_bits.len()] {
                    covers.push((a, b));
                }
                bit += 1;
            }
        }
        let p = FinitePoset::new(elements, covers).unwrap();
        let c = Arc::new(build_incidence(&p, Field::Q));
        for x in 0..n {
            let ex = e_r_injective(&p, &c, x).unwrap();
            prop_assert!(ex.validate().passed());
            for u in 0..n {
                let eu = e_r_injective(&p, &c, u).unwrap();
                let h = hom_space(&ex, &eu).unwrap();
                let closed = coalg::incidence::closed_form_hom_dim(&p, x, u).unwrap();
                prop_assert_eq!(h.dim(), closed);
                // f(j⇀v) = j⇀f(v) on a sampled dual element and vector
                let j = DualElement::dual_basis(j_pick % c.dim(), c.dim(), Field::Q);
                let mut v = vec![Scalar::zero(Field::Q); ex.dim()];
                if ex.dim() > 0 {
                    v[v_pick % ex.dim()] = Scalar::one(Field::Q);
                }
                for f in &h.basis {
                    let lhs = f.matrix.mul_vec(&ex.dual_action(&j, &v).unwrap()).unwrap();
                    let rhs = eu.dual_action(&j, &f.matrix.mul_vec(&v).unwrap()).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    /// socle is a subcomodule annihilated by the radical; soc(soc) = soc.
    #[test]
    fn socle_invariants(
        n in 1usize..5,
        edge_bits in proptest::collection::vec(any::<bool>(), 6),
    ) {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let mut covers = Vec::new();
        let mut bit = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if edge_bits[bit % edge_bits.len()] {
                    covers.push((a, b));
                }
                bit += 1;
            }
        }
        let p = FinitePoset::new(elements, covers).unwrap();
        let c = Arc::new(build_incidence(&p, Field::Q));
        let m = coalg::comodule::Comodule::regular(&c, Side::Right);
        let soc = m.socle().unwrap();
        // socle of C equals the coradical
        let cor = c.coradical().unwrap();
        let (_, _, a_in_b, b_in_a) = subspace_ops(&soc, &cor.basis).unwrap();
        prop_assert!(a_in_b && b_in_a);
        let s = m.restrict_to(&soc).unwrap();
        prop_assert!(s.validate().passed());
        prop_assert_eq!(s.socle().unwrap().dim(), soc.dim());
        // annihilated by the radical
        let rad = c.dual_radical().unwrap();
        for jv in rad.basis.vectors() {
            let j = DualElement { coeffs: jv.clone() };
            for v in soc.vectors() {
                let moved = m.dual_action(&j, v).unwrap();
                prop_assert!(moved.iter().all(Scalar::is_zero));
            }
        }
    }
}
