use proptest::prelude::*;

use keller_core::factor::{
    divides, factor, factor_univariate, gcd_multi, is_irreducible, is_squarefree, normalize, squarefree_decompose,
};
use keller_core::groebner::{buchberger, normal_form, Subring};
use keller_core::harness::gen::Gen;
use keller_core::harness::{algebraic_solution_space, sqf_closed_check_subring, witness_search, WitnessKind};
use keller_core::jacobian::{dgcd, is_algebraically_independent, is_keller, jacobian_determinant, jacobian_minors};
use keller_core::linalg::rank;
use keller_core::{
    parse_poly, substitute, Monomial, MonomialOrder, PolyMap, PolyRing, Polynomial, Rational, Ring,
};

fn ring_n(n: usize) -> Ring {
    PolyRing::parse_vars(["x", "x,y", "x,y,z"][n - 1]).unwrap()
}

fn poly_in(ring: Ring, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=4), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                &ring,
                terms.into_iter().map(|(e, a, b)| (Monomial(e), Rational::new(a.into(), b.into()).unwrap())),
            )
        },
    )
}

fn poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly_in(ring_n(n), max_exp, max_terms)
}

fn nonzero(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_exp, max_terms).prop_filter("nonconstant", |p| !p.is_constant())
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(a, b)| Rational::new(a.into(), b.into()).unwrap()), n)
}

fn w_of(f: &PolyMap, coeffs: &[(Vec<u32>, i64)]) -> Polynomial {
    let src = f.source_ring();
    let r = f.arity();
    Polynomial::from_terms(
        &src,
        coeffs.iter().map(|(e, c)| (Monomial(e.iter().cycle().take(r).copied().collect()), Rational::from_i64(*c))),
    )
}

fn coeff_rows(polys: &[Polynomial]) -> Vec<Vec<Rational>> {
    let mut mons: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.clone())).collect();
    mons.sort();
    mons.dedup();
    polys.iter().map(|p| mons.iter().map(|m| p.coefficient(m)).collect()).collect()
}

fn cols(rows: &[Vec<Rational>]) -> usize {
    rows.first().map_or(0, Vec::len)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn print_parse_round_trip(n in 1usize..=3, seed in any::<u64>()) {
        let mut gen = Gen::new(seed);
        let r = ring_n(n);
        let p = gen.poly(&r, 6, 6, 50);
        let q = &p.scale(&Rational::new(1.into(), (1 + seed % 7).into()).unwrap()) - &Polynomial::one(&r);
        for p in [p, q] {
            prop_assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
        }
    }

    #[test]
    fn parse_is_total(s in "[xyz0-9+*^() /-]{0,24}") {
        let r = ring_n(3);
        if let Err(e) = parse_poly(&s, &r) {
            prop_assert!(e.position <= s.len());
        }
    }

    #[test]
    fn rational_division_is_exact(a in (-1000i64..=1000, 1i64..=50), b in (-1000i64..=1000, 1i64..=50)) {
        let a = Rational::new(a.0.into(), a.1.into()).unwrap();
        let b = Rational::new(b.0.into(), b.1.into()).unwrap();
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn leibniz(p in poly(3, 3, 5), q in poly(3, 3, 5), i in 0usize..3) {
        let d = |p: &Polynomial| p.partial_derivative(i).unwrap();
        prop_assert_eq!(d(&(&p * &q)), &(&p * &d(&q)) + &(&q * &d(&p)));
    }

    #[test]
    fn substitution_is_a_homomorphism(
        images in prop::collection::vec(poly(2, 2, 3), 2),
        w1 in poly(2, 2, 4),
        w2 in poly(2, 2, 4),
        a in point(2),
    ) {
        let r = ring_n(2);
        let src = PolyRing::witness_ring(2);
        let (w1, w2) = (w1.embed(&src, &[0, 1]), w2.embed(&src, &[0, 1]));
        let s = |w: &Polynomial| substitute(w, &images, &r).unwrap();
        prop_assert_eq!(s(&(&w1 * &w2)), &s(&w1) * &s(&w2));
        prop_assert_eq!(s(&(&w1 + &w2)), &s(&w1) + &s(&w2));
        let at: Vec<Rational> = images.iter().map(|f| f.evaluate(&a).unwrap()).collect();
        prop_assert_eq!(s(&w1).evaluate(&a).unwrap(), w1.evaluate(&at).unwrap());
    }

    #[test]
    fn divides_gives_exact_quotient(p in nonzero(2, 2, 3), h in poly(2, 2, 3)) {
        let q = &p * &h;
        let quotient = divides(&p, &q).unwrap().expect("p divides p*h");
        prop_assert_eq!(&p * &quotient, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn gcd_divides_both_and_scales(p in nonzero(2, 2, 3), q in nonzero(2, 2, 3), h in nonzero(2, 1, 2)) {
        let g = gcd_multi(&p, &q).unwrap();
        prop_assert!(divides(&g, &p).unwrap().is_some());
        prop_assert!(divides(&g, &q).unwrap().is_some());
        let scaled = gcd_multi(&(&h * &p), &(&h * &q)).unwrap();
        prop_assert_eq!(normalize(&(&h * &g)), normalize(&scaled));
    }

    #[test]
    fn squarefree_decomposition(p in nonconstant(2, 2, 3), q in nonconstant(2, 1, 2)) {
        let p = &p * &q.pow(2);
        let sd = squarefree_decompose(&p).unwrap();
        prop_assert_eq!(sd.expand(&p), p.clone());
        for (i, (a, _)) in sd.parts.iter().enumerate() {
            prop_assert!(is_squarefree(a).unwrap());
            for (b, _) in &sd.parts[i + 1..] {
                prop_assert!(gcd_multi(a, b).unwrap().is_constant());
            }
        }
        prop_assert!(!is_squarefree(&p).unwrap());
    }

    #[test]
    fn univariate_factorization(p in nonconstant(1, 6, 4)) {
        let fz = factor_univariate(&p).unwrap();
        prop_assert_eq!(fz.expand(&p), p);
        for (q, _) in &fz.factors {
            prop_assert!(is_irreducible(q).unwrap());
        }
    }

    #[test]
    fn minor_antisymmetry_and_dgcd_invariance(
        f in prop::collection::vec(nonconstant(3, 2, 3), 2),
        c in prop::sample::select(vec![-3i64, -1, 2, 5]),
    ) {
        let fwd = PolyMap::new(f.clone()).unwrap();
        let swapped = PolyMap::new(vec![f[1].clone(), f[0].clone()]).unwrap();
        let (a, b) = (jacobian_minors(&fwd), jacobian_minors(&swapped));
        for (cols, m) in &a.minors {
            prop_assert_eq!(b.get(cols).unwrap(), &-m);
        }
        let scaled = PolyMap::new(vec![f[0].scale(&Rational::from_i64(c)), f[1].clone()]).unwrap();
        match dgcd(&fwd) {
            Ok(d) => {
                prop_assert_eq!(&dgcd(&swapped).unwrap().value, &d.value);
                prop_assert_eq!(&dgcd(&scaled).unwrap().value, &d.value);
                if d.is_constant_nonzero {
                    prop_assert!(is_algebraically_independent(&fwd));
                }
            }
            Err(_) => prop_assert!(a.all_zero()),
        }
    }

    #[test]
    fn chain_rule(phi in prop::collection::vec(poly(2, 2, 3), 2), psi in prop::collection::vec(poly(2, 2, 3), 2)) {
        let r = ring_n(2);
        let phi = PolyMap::new(phi).unwrap();
        let psi = PolyMap::new(psi).unwrap();
        let composed = psi.then(&phi).unwrap();
        let outer = jacobian_determinant(&phi).unwrap();
        let through = substitute(&outer, psi.images(), &r).unwrap();
        prop_assert_eq!(jacobian_determinant(&composed).unwrap(), &through * &jacobian_determinant(&psi).unwrap());
    }

    #[test]
    fn keller_maps_compose_and_preserve_squarefree(seed in any::<u64>(), n in 1usize..=3) {
        let mut gen = Gen::new(seed);
        let r = ring_n(n);
        let a = gen.keller_map(&r, 3, 4);
        let b = gen.keller_map(&r, 3, 4);
        prop_assert!(is_keller(&a.then(&b).unwrap()).unwrap());
        let w = gen.squarefree(&a.source_ring(), 3, 3);
        prop_assert!(is_squarefree(&a.substitute(&w).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn squarefree_agrees_with_multiplicities(seed in any::<u64>(), n in 1usize..=3) {
        let mut gen = Gen::new(seed);
        let r = ring_n(n);
        let mut p = Polynomial::one(&r);
        for _ in 0..1 + gen.index(3) {
            p = &p * &gen.irreducible(&r, 2, 3).pow(1 + gen.index(2) as u32);
        }
        let fz = factor(&p).unwrap();
        prop_assert_eq!(fz.expand(&p), p.clone());
        let sd = squarefree_decompose(&p).unwrap();
        let expected = fz.factors.iter().all(|(_, e)| *e == 1);
        prop_assert_eq!(is_squarefree(&p).unwrap(), expected);
        prop_assert_eq!(sd.parts.iter().all(|(_, e)| *e == 1), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(nonzero(2, 2, 3), 1..=3), h in poly(2, 3, 5)) {
        let gb = buchberger(&gens, MonomialOrder::GrLex).unwrap();
        let once = normal_form(&h, &gb).unwrap();
        prop_assert_eq!(normal_form(&once, &gb).unwrap(), once);
        for g in &gens {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn membership_round_trip_and_permutation(
        f in prop::collection::vec(nonconstant(2, 2, 2), 2..=3),
        w in prop::collection::vec((prop::collection::vec(0u32..=2, 3), -3i64..=3), 1..=3),
        other in poly(2, 2, 3),
    ) {
        let r = ring_n(2);
        let sub = Subring::new(f.clone()).unwrap();
        let w = Polynomial::from_terms(
            sub.source_ring(),
            w.iter().map(|(e, c)| (Monomial(e[..f.len()].to_vec()), Rational::from_i64(*c))),
        );
        let h = substitute(&w, &f, &r).unwrap();
        let res = sub.membership(&h).unwrap();
        prop_assert!(res.is_member());
        prop_assert_eq!(substitute(res.representation.as_ref().unwrap(), &f, &r).unwrap(), h);
        let mut rev = f.clone();
        rev.reverse();
        let sub_rev = Subring::new(rev).unwrap();
        prop_assert_eq!(sub_rev.contains(&other).unwrap(), sub.contains(&other).unwrap());
    }

    #[test]
    fn witnesses_are_sound(f in prop::collection::vec(nonconstant(2, 2, 3), 1..=2), k in 0usize..4) {
        let map = PolyMap::new(f).unwrap();
        let minors = jacobian_minors(&map);
        let Some(m) = minors.values().find(|m| !m.is_constant()) else { return Ok(()); };
        let fz = factor(m).unwrap();
        let g = &fz.factors[k % fz.factors.len()].0;
        let res = witness_search(&map, g, 3, WitnessKind::SquareFree).unwrap();
        if let Some(w) = &res.witness {
            let image = map.substitute(w).unwrap();
            let q = divides(&g.pow(2), &image).unwrap().expect("g^2 divides w(f)");
            prop_assert_eq!(&q, res.certificate.as_ref().unwrap());
            prop_assert!(res.to_certificate(&map, g).unwrap().verify().unwrap());
        }
    }

    #[test]
    fn solution_space_contains_subring_elements(
        f in nonconstant(2, 1, 3),
        w in prop::collection::vec((vec![0u32..=2], -3i64..=3), 1..=3),
    ) {
        let map = PolyMap::new(vec![f]).unwrap();
        let w = w_of(&map, &w);
        let h = map.substitute(&w).unwrap();
        let h = &h - &Polynomial::constant(h.ring(), h.coefficient(&Monomial::one(2)));
        prop_assume!(!h.is_constant() && h.total_degree().unwrap() <= 3);
        let basis = algebraic_solution_space(&map, 3);
        let rows = coeff_rows(&basis.iter().cloned().chain([h]).collect::<Vec<_>>());
        let (without, with) = (&rows[..basis.len()], &rows[..]);
        prop_assert_eq!(rank(without, cols(with)), rank(with, cols(with)));
    }

    #[test]
    fn falsifier_counterexamples_reverify(
        exps in prop::collection::vec(2u32..=4, 2..=3),
        w in prop::collection::vec((prop::collection::vec(0u32..=2, 3), 1i64..=3), 1..=3),
    ) {
        let r = ring_n(1);
        let gens: Vec<Polynomial> = exps.iter().map(|&e| Polynomial::var(&r, 0).unwrap().pow(e)).collect();
        let sub = Subring::new(gens.clone()).unwrap();
        let w = Polynomial::from_terms(
            sub.source_ring(),
            w.iter().map(|(e, c)| (Monomial(e[..gens.len()].to_vec()), Rational::from_i64(*c))),
        );
        let rep = sqf_closed_check_subring(&sub, &[w]).unwrap();
        prop_assert!(rep.reverify().unwrap());
        for c in &rep.counterexamples {
            let text = serde_json::to_string(c).unwrap();
            prop_assert!(keller_core::harness::Certificate::verify_json(&text).unwrap());
        }
    }
}

#[test]
fn int_gcd_exhaustive() {
    use keller_core::int_gcd;
    use num_bigint::BigInt;
    fn euclid(mut a: i64, mut b: i64) -> i64 {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    for a in -1000i64..=1000 {
        for b in -1000i64..=1000 {
            let g = int_gcd(&BigInt::from(a), &BigInt::from(b));
            assert_eq!(g, BigInt::from(euclid(a, b)), "gcd({a}, {b})");
        }
    }
}
