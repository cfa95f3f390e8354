use proptest::prelude::*;
use rand::Rng;
use ternion_geometry::geometry::{decompose_semilinear, homothety_matrix, induced_map, trial_rng};
use ternion_geometry::linalg::{Budget, SemilinearMap, Subspace};
use ternion_geometry::model::{block6, block6_pattern, classify, cyclic_span, phi, phi_inverse};
use ternion_geometry::{Catalog, Elem, Exec, Field, SubmoduleType, Ternion, TernionMatrix2, TernionPair};

const ORDERS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 25];

fn field(q: u64) -> Field {
    Field::with_order(q, None).unwrap()
}

fn elem(f: &Field, i: u64) -> Elem {
    Elem((i % f.q() as u64) as u8)
}

fn pair(f: &Field, i: u64) -> TernionPair {
    TernionPair::from_index(i % TernionPair::count(f), f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(qi in 0usize..ORDERS.len(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
        }
        for s in f.automorphisms() {
            prop_assert_eq!(s.apply(f.mul(a, b)), f.mul(s.apply(a), s.apply(b)));
            prop_assert_eq!(s.apply(f.add(a, b)), f.add(s.apply(a), s.apply(b)));
        }
    }

    #[test]
    fn ternions_form_an_algebra(qi in 0usize..ORDERS.len(), seed in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let mut rng = trial_rng(seed, 0);
        let (a, b, c) = (Ternion::random(&mut rng, &f), Ternion::random(&mut rng, &f), Ternion::random(&mut rng, &f));
        prop_assert_eq!(a.mul(b, &f).mul(c, &f), a.mul(b.mul(c, &f), &f));
        prop_assert_eq!(a.mul(b.add(c, &f), &f), a.mul(b, &f).add(a.mul(c, &f), &f));
        prop_assert_eq!(a.mul(Ternion::ONE, &f), a);
        prop_assert_eq!(a.is_unit(), a.inverse(&f).is_ok());
        if let Ok(inv) = a.inverse(&f) {
            prop_assert_eq!(a.mul(inv, &f), Ternion::ONE);
        }
    }

    #[test]
    fn phi_round_trips(qi in 0usize..ORDERS.len(), i in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let v = pair(&f, i);
        prop_assert_eq!(phi_inverse(&phi(&v)), v);
    }

    /// Generators differing by a unit span the same submodule.
    #[test]
    fn unit_multiples_share_a_span(qi in 0usize..ORDERS.len(), i in any::<u64>(), seed in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let v = pair(&f, i);
        let u = Ternion::random_unit(&mut trial_rng(seed, 1), &f);
        let w = v.left_mul(u, &f);
        prop_assert_eq!(cyclic_span(&v, &f), cyclic_span(&w, &f));
        prop_assert_eq!(classify(&v, &f), classify(&w, &f));
    }

    /// `GL2(T)` acts on spans through block-6 lifts and preserves the type.
    #[test]
    fn gl2_action_is_equivariant(qi in 0usize..ORDERS.len(), i in any::<u64>(), seed in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let v = pair(&f, i);
        let s = TernionMatrix2::random_invertible(&mut trial_rng(seed, 2), &f);
        let lift = SemilinearMap::linear(block6(&s), &f).unwrap();
        prop_assert_eq!(lift.image(&cyclic_span(&v, &f), &f), cyclic_span(&v.act_right(&s, &f), &f));
        prop_assert_eq!(classify(&v, &f), classify(&v.act_right(&s, &f), &f));
        prop_assert_eq!(block6_pattern(&block6(&s)), Some(s));
    }

    #[test]
    fn block6_is_multiplicative(qi in 0usize..ORDERS.len(), seed in any::<u64>()) {
        let f = field(ORDERS[qi]);
        let mut rng = trial_rng(seed, 3);
        let s = TernionMatrix2::random_invertible(&mut rng, &f);
        let t = TernionMatrix2::random_invertible(&mut rng, &f);
        prop_assert_eq!(block6(&s.mul(&t, &f)), block6(&s).mul(&block6(&t), &f).unwrap());
    }

    #[test]
    fn modular_law_for_dimensions(qi in 0usize..4, seed in any::<u64>(), k1 in 1usize..6, k2 in 1usize..6) {
        let f = field(ORDERS[qi]);
        let mut rng = trial_rng(seed, 4);
        let mut random_space = |k: usize| {
            Subspace::from_vectors(6, (0..k).map(|_| {
                let mut v = [Elem::ZERO; ternion_geometry::linalg::MAX_DIM];
                for e in v.iter_mut().take(6) {
                    *e = Elem(rng.gen_range(0..f.q()) as u8);
                }
                v
            }), &f)
        };
        let (u, w) = (random_space(k1), random_space(k2));
        prop_assert_eq!(u.dim() + w.dim(), u.dim_join(&w, &f) + u.dim_meet(&w, &f));
        prop_assert_eq!(u.annihilator(&f).dim(), 6 - u.dim());
        prop_assert_eq!(u.annihilator(&f).annihilator(&f), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Composing a block-6 lift with a homothety and a field automorphism
    /// gives a map that factors back into the same pieces.
    #[test]
    fn decomposition_recovers_its_factors(qi in 0usize..3, seed in any::<u64>()) {
        let q = [4u64, 8, 9][qi];
        let f = field(q);
        let c = Catalog::build(&f, &Budget::unlimited(), Exec::default()).unwrap();
        let mut rng = trial_rng(seed, 5);
        let s = TernionMatrix2::random_invertible(&mut rng, &f);
        let autos = f.automorphisms();
        let sigma = autos[rng.gen_range(0..autos.len())].clone();
        let a = Elem(rng.gen_range(0..f.q()) as u8);
        let b = Elem(rng.gen_range(1..f.q()) as u8);
        let m = SemilinearMap::new(homothety_matrix(a, b), sigma.clone(), &f)
            .unwrap()
            .then(&induced_map(&s, &f.identity_automorphism(), &f).unwrap(), &f)
            .unwrap();
        let d = decompose_semilinear(&m, &c).unwrap();
        prop_assert_eq!(&d.sigma, &sigma);
        prop_assert_eq!((d.a, d.b, d.s), (a, b, s));
        prop_assert!(d.round_trip(&m, &f, 50, seed));
        for t in SubmoduleType::NONZERO {
            for z in c.set(t).iter().take(5) {
                prop_assert_eq!(c.type_of(&m.image(z, &f)), Some(t));
            }
        }
    }
}
