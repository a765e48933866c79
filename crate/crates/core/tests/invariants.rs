use fspecial::factor::factor_polynomial;
use fspecial::*;
use proptest::prelude::*;

fn ring(p: u64, n: usize) -> RingRef {
    let names = ["x", "y", "z"];
    Ring::new(p, &names[..n], MonomialOrder::GrevLex).unwrap()
}

fn arb_poly(r: RingRef, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = r.nvars();
    let p = r.characteristic();
    proptest::collection::vec((proptest::collection::vec(0..=deg, n), 1..p), 0..=terms).prop_map(
        move |ts| {
            let terms = ts
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                .map(|(e, c)| (Monomial::from_exponents(&e), c))
                .collect();
            Polynomial::from_terms(&r, terms)
        },
    )
}

fn arb_ideal(r: RingRef, gens: usize, deg: u32) -> impl Strategy<Value = Ideal> {
    proptest::collection::vec(arb_poly(r.clone(), deg, 3), 1..=gens)
        .prop_map(move |g| Submodule::ideal(&r, &g).unwrap())
}

fn arb_module(r: RingRef, rank: usize, gens: usize, deg: u32) -> impl Strategy<Value = Submodule> {
    proptest::collection::vec(
        proptest::collection::vec(arb_poly(r.clone(), deg, 2), rank),
        1..=gens,
    )
    .prop_map(move |vs| {
        let vs = vs
            .into_iter()
            .map(|c| FreeVector::from_polys(&r, &c).unwrap())
            .collect();
        Submodule::new(&r, rank, vs).unwrap()
    })
}

fn arb_matrix(r: RingRef, n: usize, deg: u32) -> impl Strategy<Value = PolyMatrix> {
    proptest::collection::vec(arb_poly(r.clone(), deg, 2), n * n)
        .prop_map(move |e| PolyMatrix::new(&r, n, n, e).unwrap())
}

fn f2xy() -> RingRef {
    ring(2, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_lie_in_their_ideal(gens in proptest::collection::vec(arb_poly(ring(3, 3), 3, 3), 1..4)) {
        let r = ring(3, 3);
        let i = Submodule::ideal(&r, &gens).unwrap();
        for g in &gens {
            prop_assert!(i.contains_poly(g));
        }
        prop_assert_eq!(Submodule::ideal(&r, &i.polys()).unwrap(), i);
    }

    #[test]
    fn intersection_and_sum(i in arb_ideal(f2xy(), 2, 3), j in arb_ideal(f2xy(), 2, 3)) {
        let meet = i.intersect(&j).unwrap();
        let join = i.sum(&j).unwrap();
        prop_assert!(meet.is_subset_of(&i) && meet.is_subset_of(&j));
        prop_assert!(i.is_subset_of(&join) && j.is_subset_of(&join));
        for f in i.polys() {
            for g in j.polys() {
                prop_assert!(meet.contains_poly(&(&f * &g)));
            }
        }
    }

    #[test]
    fn quotient_and_saturation(i in arb_ideal(f2xy(), 3, 3), f in arb_poly(f2xy(), 2, 2)) {
        prop_assume!(!f.is_zero());
        let q = i.quotient_by(&f).unwrap();
        prop_assert!(i.is_subset_of(&q));
        for g in q.polys() {
            prop_assert!(i.contains_poly(&(&g * &f)));
        }
        let s = i.saturate(&f).unwrap();
        prop_assert_eq!(s.saturate(&f).unwrap(), s.clone());
        prop_assert_eq!(s.quotient_by(&f).unwrap(), s);
    }

    #[test]
    fn module_intersection(a in arb_module(f2xy(), 2, 2, 2), b in arb_module(f2xy(), 2, 2, 2)) {
        let meet = a.intersect(&b).unwrap();
        prop_assert!(meet.is_subset_of(&a) && meet.is_subset_of(&b));
        let back = Submodule::new(a.ring(), 2, a.gens().to_vec()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn lift_reconstructs(m in arb_module(f2xy(), 2, 3, 2), cs in proptest::collection::vec(arb_poly(f2xy(), 1, 2), 3)) {
        let gens = m.gens().to_vec();
        let mut h = FreeVector::zero(m.ring(), 2);
        for (g, c) in gens.iter().zip(&cs) {
            h = h.checked_add(&g.mul_poly(c)).unwrap();
        }
        let lift = Submodule::lift(&h, &gens).expect("member");
        let mut back = FreeVector::zero(m.ring(), 2);
        for (g, c) in gens.iter().zip(&lift) {
            back = back.checked_add(&g.mul_poly(c)).unwrap();
        }
        prop_assert_eq!(back, h);
    }

    #[test]
    fn ie_sandwich(k in arb_module(f2xy(), 2, 2, 4), e in 1u32..=2) {
        let l = ie_operation(&k, e).unwrap();
        prop_assert!(k.is_subset_of(&l.frobenius(e).unwrap()));
        prop_assert_eq!(ie_operation(&l.frobenius(e).unwrap(), e).unwrap(), l);
    }

    #[test]
    fn ie_in_characteristic_three(k in arb_ideal(ring(3, 2), 2, 4)) {
        let l = ie_operation(&k, 1).unwrap();
        prop_assert!(k.is_subset_of(&l.frobenius(1).unwrap()));
        let two = ie_operation(&k, 2).unwrap();
        prop_assert_eq!(ie_operation(&l, 1).unwrap(), two);
    }

    #[test]
    fn star_closure_is_stable_and_minimal_fixed_point(v in arb_module(f2xy(), 2, 2, 2), u in arb_matrix(f2xy(), 2, 2)) {
        let s = Session::default();
        let w = star_closure(&s, &v, &u, 1).unwrap();
        prop_assert!(v.is_subset_of(&w));
        prop_assert!(u.apply(&w).unwrap().is_subset_of(&w.frobenius(1).unwrap()));
        prop_assert_eq!(star_closure(&s, &w, &u, 1).unwrap(), w.clone());
        let full = Submodule::full(v.ring(), 2);
        prop_assert!(w.is_subset_of(&full));
    }

    #[test]
    fn stable_kernel_is_fixed(u in arb_matrix(f2xy(), 2, 2)) {
        let s = Session::default();
        let sk = stable_kernel(&s, &u).unwrap();
        prop_assert_eq!(ie_operation(&u.apply(&sk.module).unwrap(), 1).unwrap(), sk.module.clone());
        prop_assert_eq!(sk.chain.len() as u32, sk.index);
    }

    #[test]
    fn minimal_primes_cover_the_ideal(i in arb_ideal(f2xy(), 2, 3)) {
        prop_assume!(!i.is_full());
        let s = Session::default();
        let ps = minimal_primes(&s, &i).unwrap();
        prop_assert!(!ps.is_empty());
        for p in &ps {
            prop_assert!(i.is_subset_of(&p.ideal));
            prop_assert!(is_prime(&s, &p.ideal).unwrap());
        }
        // Some power of the product of the primes lands in I.
        let mut prod = Submodule::full(i.ring(), 1);
        for p in &ps {
            prod = prod.mul_ideal(&p.ideal);
        }
        let mut power = prod.clone();
        let mut ok = false;
        for _ in 0..12 {
            if power.is_subset_of(&i) {
                ok = true;
                break;
            }
            power = power.mul_ideal(&prod);
        }
        prop_assert!(ok);
    }

    #[test]
    fn factorization_reconstructs(f in arb_poly(ring(3, 2), 4, 4)) {
        prop_assume!(!f.is_zero());
        let (unit, fs) = factor_polynomial(&f).unwrap();
        let mut acc = Polynomial::constant(f.ring(), unit);
        for (g, k) in fs {
            acc = &acc * &g.pow(k as u64);
        }
        prop_assert_eq!(acc, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ks_output_is_sound(u in arb_poly(f2xy(), 3, 3)) {
        prop_assume!(!u.is_zero());
        let s = Session::default();
        let res = ks_run(&s, &KSProblem::new(u.clone(), 1).unwrap()).unwrap();
        prop_assert!(res.primes.iter().any(|p| p.ideal.is_zero()));
        for p in &res.primes {
            prop_assert!(is_compatible(&p.ideal, &u, 1).unwrap());
            prop_assert!(!res.excluded_locus.is_subset_of(&p.ideal));
        }
    }

    #[test]
    fn kz_output_is_sound(u in arb_matrix(f2xy(), 2, 2)) {
        let s = Session::default();
        let Ok(prob) = KZProblem::new(&s, u.clone()) else { return Ok(()) };
        let out = kz_run(&s, &prob).unwrap();
        for p in &out {
            prop_assert!(is_u_special(&s, &p.ideal, &u).unwrap());
            prop_assert!(!prob.kernel.is_subset_of(&Submodule::extend(&p.ideal, 2)));
            for q in kz_step(&s, &p.ideal, &prob).unwrap() {
                prop_assert!(p.ideal.is_subset_of(&q) && p.ideal != q);
            }
        }
    }
}

#[test]
fn monomial_minimal_primes_match_supports() {
    let r = ring(2, 3);
    let s = Session::default();
    let cases = [
        ("x*y, y*z", vec!["(y)", "(x, z)"]),
        ("x^2, x*y^3, z", vec!["(z, x)"]),
        ("x*y*z", vec!["(x)", "(y)", "(z)"]),
    ];
    for (src, want) in cases {
        let gens: Vec<Polynomial> = src
            .split(", ")
            .map(|g| parse_polynomial(&r, g).unwrap())
            .collect();
        let i = Submodule::ideal(&r, &gens).unwrap();
        let mut got: Vec<Ideal> = minimal_primes(&s, &i)
            .unwrap()
            .into_iter()
            .map(|p| p.ideal)
            .collect();
        let mut want: Vec<Ideal> = want
            .iter()
            .map(|w| {
                let g: Vec<Polynomial> = w
                    .trim_matches(|c| c == '(' || c == ')')
                    .split(", ")
                    .map(|g| parse_polynomial(&r, g).unwrap())
                    .collect();
                Submodule::ideal(&r, &g).unwrap()
            })
            .collect();
        primes::sort_ideals(&mut got);
        primes::sort_ideals(&mut want);
        assert_eq!(got, want, "{src}");
    }
}
