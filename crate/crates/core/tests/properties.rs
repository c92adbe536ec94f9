use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use nilhecke::connective::{CkContext, CKScalar};
use nilhecke::poly::{ddx, reflect, Poly};
use nilhecke::ring::{AlgebraicInteger, NumberRing, Scalar};
use nilhecke::rootdata::RootDatum;
use nilhecke::structconst::StructureConstants;
use nilhecke::twisted::{Dual, Transition, QW};
use nilhecke::weyl::{ElemId, WeylGroup};

const TYPES: [&str; 5] = ["A3", "B3", "G2", "H3", "I2(7)"];

fn datum(k: usize) -> Arc<RootDatum> {
    RootDatum::parse(TYPES[k % TYPES.len()]).unwrap()
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u16..3, n), -5i64..=5), 0..5)
        .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(m, c)| (m, Scalar::int(c)))))
}

fn typed_poly() -> impl Strategy<Value = (Arc<RootDatum>, Poly)> {
    (0..TYPES.len()).prop_flat_map(|k| {
        let d = datum(k);
        let n = d.rank();
        (Just(d), poly_strategy(n))
    })
}

fn sign_product(a: Ordering, b: Ordering) -> Ordering {
    match (a, b) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
        _ if a == b => Ordering::Greater,
        _ => Ordering::Less,
    }
}

fn b3() -> &'static StructureConstants {
    static SC: OnceLock<StructureConstants> = OnceLock::new();
    SC.get_or_init(|| StructureConstants::for_type("B3").unwrap())
}

fn a2_transition() -> &'static Transition {
    static T: OnceLock<Transition> = OnceLock::new();
    T.get_or_init(|| Transition::build(&WeylGroup::generate(&RootDatum::parse("A2").unwrap()).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz((d, f) in typed_poly(), g_seed in any::<u64>(), i in 0usize..3) {
        let n = d.rank();
        let i = i % n;
        let g = Poly::var(n, (g_seed % n as u64) as usize).pow(2).mul_ref(&Poly::linear(&vec![Scalar::one(); n]));
        let lhs = ddx(&d, i, &f.mul_ref(&g));
        let mut rhs = ddx(&d, i, &f).mul_ref(&g);
        rhs.add_assign(&reflect(&d, i, &f).mul_ref(&ddx(&d, i, &g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_differences_square_to_zero((d, f) in typed_poly(), i in 0usize..3) {
        let i = i % d.rank();
        prop_assert!(ddx(&d, i, &ddx(&d, i, &f)).is_zero());
        prop_assert_eq!(reflect(&d, i, &reflect(&d, i, &f)), f);
    }

    #[test]
    fn braid_relations((d, f) in typed_poly()) {
        for i in 0..d.rank() {
            for j in i + 1..d.rank() {
                let m = d.coxeter_exponent(i, j).unwrap() as usize;
                let run = |a: usize, b: usize| {
                    (0..m).fold(f.clone(), |acc, k| ddx(&d, if k % 2 == 0 { a } else { b }, &acc))
                };
                prop_assert_eq!(run(i, j), run(j, i));
            }
        }
    }

    #[test]
    fn exact_divide_inverts_mul(m in prop::sample::select(vec![5u32, 7, 8, 9, 12]),
                                a in prop::collection::vec(-9i64..=9, 1..6),
                                b in prop::collection::vec(-9i64..=9, 1..6)) {
        let r = NumberRing::new(m).unwrap();
        let deg = r.degree();
        let a = AlgebraicInteger::new(&r, &a[..a.len().min(deg)]).unwrap();
        let b = AlgebraicInteger::new(&r, &b[..b.len().min(deg)]).unwrap();
        prop_assume!(!b.to_scalar().is_zero());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.exact_divide(&b).unwrap(), a.clone());
        prop_assert_eq!(sign_product(a.sign(), b.sign()), ab.sign());
        prop_assert_eq!(ab.to_scalar(), &a.to_scalar() * &b.to_scalar());
    }

    #[test]
    fn reflections_permute_roots(k in 0..TYPES.len(), lam in prop::collection::vec(-6i64..=6, 3)) {
        let d = datum(k);
        let n = d.rank();
        let lam: Vec<Scalar> = lam[..n].iter().map(|&x| Scalar::int(x)).collect();
        for i in 0..n {
            prop_assert_eq!(d.reflect(i, &d.reflect(i, &lam)), lam.clone());
        }
        let roots = d.all_roots();
        for b in 0..d.positive_roots().len() {
            let s = d.root_reflection(b);
            for r in &roots {
                prop_assert!(d.root_index(&s.apply(r)).is_some());
            }
            let (idx, positive) = d.root_index(&s.apply(&d.positive_roots()[b])).unwrap();
            prop_assert!(idx == b && !positive);
        }
    }

    #[test]
    fn hecke_action_is_a_module(w in 0usize..6, word1 in prop::collection::vec(0usize..2, 0..4),
                                word2 in prop::collection::vec(0usize..2, 0..4)) {
        let t = a2_transition();
        let g = t.group();
        let f = Dual::xi(t, ElemId(w as u32));
        let z1 = QW::y_word(g, &word1);
        let z2 = QW::x_word(g, &word2).add(g, &QW::delta(g, g.simple(0)));
        let lhs = f.hecke(g, &z1.mul(g, &z2));
        let rhs = f.hecke(g, &z2).hecke(g, &z1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn structure_constants_shape(w in 0usize..48, u in 0usize..48, v in 0usize..48) {
        let sc = b3();
        let g = sc.group();
        let (w, u, v) = (ElemId(w as u32), ElemId(u as u32), ElemId(v as u32));
        let p = sc.p(w, u, v);
        prop_assert_eq!(&p, &sc.p(w, v, u));
        if !p.is_zero() {
            prop_assert!(g.bruhat_leq(u, w) && g.bruhat_leq(v, w));
            prop_assert!(p.is_homogeneous());
            let deg = g.length(u) + g.length(v) - g.length(w);
            prop_assert_eq!(p.degree(), Some(deg as u32));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formal_group_law(a in prop::collection::vec(-4i32..=4, 2), b in prop::collection::vec(-4i32..=4, 2)) {
        let sum: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let (xa, xb) = (CKScalar::x(&a), CKScalar::x(&b));
        prop_assert_eq!(CKScalar::x(&sum), xa.add(&xb).sub(&xa.mul(&xb).shift_t(1)));
    }

    #[test]
    fn divided_difference_of_x(spec in prop::sample::select(vec!["A2", "B2", "G2"]),
                               lam in prop::collection::vec(-4i32..=4, 2), i in 0usize..2) {
        let ctx = CkContext::for_type(spec).unwrap();
        let d = ctx.group().datum().clone();
        let lam_s: Vec<Scalar> = lam.iter().map(|&x| Scalar::int(x as i64)).collect();
        let k = d.simple_pairing(i, &lam_s).as_integer().unwrap() as i32;
        let alpha = ctx.root(i).to_vec();
        let shifted = |j: i32| -> Vec<i32> { lam.iter().zip(&alpha).map(|(l, a)| -l + j * a).collect() };
        // sum_{j=1..k} e^{-lam + j alpha} for k > 0, -sum_{j=0..-k-1} e^{-lam - j alpha} otherwise
        let mut want = CKScalar::zero(2);
        if k > 0 {
            for j in 1..=k {
                want = want.add(&CKScalar::exp(&shifted(j)));
            }
        } else {
            for j in 0..-k {
                want = want.sub(&CKScalar::exp(&shifted(-j)));
            }
        }
        prop_assert_eq!(ctx.divided_difference(i, &CKScalar::x(&lam)).unwrap(), want);
    }
}
