use gindex::algebra::{rat, DiffPolynomial, MonomialKey, TruncSeries, UniPoly};
use gindex::combinat::{inv_seqs, psi, psi_inverse, type_of_seq};
use gindex::grammars::{random_grammar, random_poly, u_dg_expansion_check};
use gindex::operator::{expand_recurrence, PTable};
use gindex::tableaux::{g_index, g_index_k, ktableaux_of, rho, rho_fiber, syt_all};
use gindex::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(UniPoly::from_ints)
}

const ORDER: usize = 8;

fn small_series() -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec((-5i64..=5, 1i64..=3), ORDER)
        .prop_map(|v| TruncSeries::new(v.into_iter().map(|(a, b)| rat(a, b)).collect(), ORDER))
}

fn unit_series() -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(-3i64..=3, ORDER - 1).prop_map(|v| {
        let mut c = vec![rat(1, 1)];
        c.extend(v.into_iter().map(|a| rat(a, 1)));
        TruncSeries::new(c, ORDER)
    })
}

fn small_rational() -> impl Strategy<Value = gindex::BigRational> {
    (-4i64..=4, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

/// Polynomials in `c, c1, c2` with an optional `f_k` on every term.
fn diff_poly(with_f: bool) -> impl Strategy<Value = DiffPolynomial> {
    prop::collection::vec(
        (-4i64..=4, 0u32..3, 0u32..3, 0u32..3, 0u32..3),
        0..4,
    )
    .prop_map(move |terms| {
        let mut p = DiffPolynomial::zero();
        for (c, a0, a1, a2, f) in terms {
            let key = MonomialKey::new([(0, a0), (1, a1), (2, a2)], with_f.then_some(f));
            p.add_term(key, BigInt::from(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn poly_ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&(&a * &b)).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn series_ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn rational_powers_add(base in unit_series(), p in small_rational(), q in small_rational()) {
        let lhs = &base.pow_rational(&p).unwrap() * &base.pow_rational(&q).unwrap();
        let rhs = base.pow_rational(&(p + q)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_cd_is_linear(p in diff_poly(true), q in diff_poly(true)) {
        prop_assert_eq!((&p + &q).apply_cd(), &p.apply_cd() + &q.apply_cd());
    }

    #[test]
    fn derivative_obeys_leibniz(p in diff_poly(false), q in diff_poly(true)) {
        let pq = p.try_mul(&q).unwrap();
        let lhs = pq.derivative();
        let rhs = &p.derivative().try_mul(&q).unwrap() + &p.try_mul(&q.derivative()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_form_round_trips(p in diff_poly(true)) {
        let back: DiffPolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn grammar_leibniz_and_expansion(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = random_grammar(&mut rng);
        let a = random_poly(&mut rng, &g);
        let b = random_poly(&mut rng, &g);
        let lhs = g.derive(&(&a * &b)).unwrap();
        let rhs = &(&g.derive(&a).unwrap() * &b) + &(&a * &g.derive(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(g.derive(&gindex::grammars::MPoly::constant(BigInt::from(5))).unwrap().is_zero());
        prop_assert!(u_dg_expansion_check(&g, &a, &b, 3).unwrap());
    }

    #[test]
    fn psi_round_trip(perm in Just((1..=6u32).collect::<Vec<_>>()).prop_shuffle()) {
        let e = psi(&perm).unwrap();
        prop_assert_eq!(psi_inverse(&e), perm);
    }
}

#[test]
fn homogeneity_up_to_nine() {
    for n in 1..=9 {
        assert!(expand_recurrence(n).unwrap().is_homogeneous(), "n = {n}");
    }
}

#[test]
fn inversion_types_are_consistent() {
    let table = PTable::new();
    for n in 1..=7usize {
        let mut counts = std::collections::HashMap::new();
        for e in inv_seqs(n) {
            *counts.entry(type_of_seq(&e)).or_insert(0u64) += 1;
        }
        for (t, c) in counts {
            assert_eq!(table.p(&t), BigInt::from(c), "{t}");
        }
    }
}

#[test]
fn g_values_are_positive_and_fibers_project() {
    for n in 1..=6 {
        for t in syt_all(n) {
            assert!(g_index(&t).values().iter().all(|&g| g >= 1));
            for z in rho_fiber(&t) {
                assert_eq!(rho(&z), t);
            }
        }
        for ty in gindex::combinat::types_of(n) {
            for z in ktableaux_of(&ty) {
                let g = g_index_k(&z);
                for &b in z.bottom() {
                    assert_eq!(g.get(b), 1);
                }
            }
        }
    }
}
