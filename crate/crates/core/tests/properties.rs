mod common;

use common::*;
use coxeter_growth::algebra::{gram_matrix, RootVector, Sign, DEFAULT_DEGREE_CAP};
use coxeter_growth::diagram::{parse_diagram, CoxeterDiagram, Label};
use coxeter_growth::growth::{rational_series, spectral_radius_trace, Enclosure};
use coxeter_growth::{build_shortlex, count_words, small_roots, RootAction, TransferMatrix};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn label_strategy() -> impl Strategy<Value = Label> {
    prop_oneof![
        Just(Label::Finite(2)),
        Just(Label::Finite(3)),
        Just(Label::Finite(4)),
        Just(Label::Finite(5)),
        Just(Label::Finite(6)),
        Just(Label::Infinity),
    ]
}

/// Arbitrary diagram of rank 2..=5 (not necessarily connected).
fn diagram_strategy() -> impl Strategy<Value = CoxeterDiagram> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(label_strategy(), n * (n - 1) / 2).prop_map(move |labels| {
            let mut edges = Vec::new();
            let mut it = labels.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j, it.next().unwrap()));
                }
            }
            CoxeterDiagram::from_edges(n, &edges).unwrap()
        })
    })
}

fn spanned_strategy() -> impl Strategy<Value = CoxeterDiagram> {
    any::<u64>().prop_map(|seed| random_spanned(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn reflections_are_isometric_involutions(d in diagram_strategy(), seed in any::<u64>()) {
        let form = gram_matrix(&d, DEFAULT_DEGREE_CAP).unwrap();
        let f = form.field();
        let n = d.rank();
        let mut s = seed;
        let mut coord = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); f.from_int(((s >> 40) % 7) as i64 - 3) };
        let u = RootVector((0..n).map(|_| coord()).collect());
        let v = RootVector((0..n).map(|_| coord()).collect());
        for i in 0..n {
            let su = form.apply_reflection(i, &u).unwrap();
            prop_assert_eq!(&form.apply_reflection(i, &su).unwrap(), &u);
            let sv = form.apply_reflection(i, &v).unwrap();
            prop_assert_eq!(form.inner(&su, &sv).unwrap(), form.inner(&u, &v).unwrap());
        }
    }

    #[test]
    fn gram_entries(d in diagram_strategy()) {
        let form = gram_matrix(&d, DEFAULT_DEGREE_CAP).unwrap();
        let f = form.field();
        for i in 0..d.rank() {
            prop_assert_eq!(form.entry(i, i), &f.one());
            for j in 0..d.rank() {
                if i == j { continue; }
                let expected = match d.label(i, j) {
                    Label::Infinity => -1.0,
                    Label::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                };
                prop_assert!((f.to_f64(form.entry(i, j)) - expected).abs() < 1e-12);
                prop_assert_eq!(form.entry(i, j), form.entry(j, i));
            }
        }
    }

    #[test]
    fn small_roots_closed_and_minimal(d in diagram_strategy()) {
        let s = small_roots(&d, DEFAULT_DEGREE_CAP, 100_000).unwrap();
        let form = s.form();
        let f = form.field();
        let mut generated = vec![false; s.len()];
        for r in 0..s.len() {
            let root = s.root(r);
            for i in 0..d.rank() {
                let ip = form.inner_simple(root, i).unwrap();
                let image = form.apply_reflection(i, root).unwrap();
                let strictly_between = f.sign(&ip) == Sign::Negative && f.sign(&(ip.clone() + f.one())) == Sign::Positive;
                match s.act(i, r) {
                    RootAction::NegativeSelf => prop_assert_eq!(r, s.simple_index(i)),
                    RootAction::Index(t) => {
                        prop_assert_eq!(s.root(t), &image);
                        if strictly_between {
                            generated[t] = true;
                        }
                    }
                    RootAction::NotSmall => {
                        prop_assert!(s.index_of(&image).is_none());
                        // closure: the strict inequality always yields a member
                        prop_assert!(!strictly_between);
                    }
                }
                if r != s.simple_index(i) {
                    prop_assert_eq!(f.sign(&(ip - f.one())), Sign::Negative);
                }
            }
        }
        // minimality: every non-simple member arises from a closure step
        for (r, &ok) in generated.iter().enumerate().skip(d.rank()) {
            prop_assert!(ok, "root {} is not generated", r);
        }
        // simple roots come first
        for i in 0..d.rank() {
            prop_assert_eq!(s.root(i), &form.simple_root(i));
        }
    }

    #[test]
    fn word_counts_independent_of_generator_order(d in spanned_strategy(), perm in permutation(5)) {
        let p = pipeline(&d);
        let order: Vec<usize> = perm.into_iter().filter(|&g| g < d.rank()).collect();
        let a = build_shortlex(&p.roots, &order, 1 << 20).unwrap();
        prop_assert_eq!(count_words(&a, 10), count_words(&p.shortlex, 10));
    }

    #[test]
    fn count_bounds(d in spanned_strategy()) {
        let p = pipeline(&d);
        let n = d.rank() as u64;
        let w = count_words(&p.shortlex, 12);
        let g = count_words(&p.geo, 12);
        for k in 1..=12u32 {
            let k_ = k as usize;
            let free = BigUint::from(n) * BigUint::from(n - 1).pow(k - 1);
            prop_assert!(free >= g[k_]);
            prop_assert!(g[k_] >= w[k_]);
            prop_assert!(w[k_] >= BigUint::from(1u32));
        }
    }

    #[test]
    fn relabelling_preserves_counts(d in spanned_strategy(), perm in permutation(5)) {
        let perm: Vec<usize> = perm.into_iter().filter(|&g| g < d.rank()).collect();
        let e = d.relabel(&perm).unwrap();
        let (p, q) = (pipeline(&d), pipeline(&e));
        prop_assert_eq!(count_words(&p.shortlex, 10), count_words(&q.shortlex, 10));
        prop_assert_eq!(count_words(&p.geo, 10), count_words(&q.geo, 10));
        prop_assert_eq!(p.roots.len(), q.roots.len());
    }

    #[test]
    fn enclosures_are_nested(d in spanned_strategy()) {
        let p = pipeline(&d);
        let m = TransferMatrix::from_automaton(&p.geo);
        let mut seen: Vec<Enclosure> = Vec::new();
        let tol = BigRational::new(BigInt::from(1), BigInt::from(10u64.pow(12)));
        let last = spectral_radius_trace(&m, &tol, 1_000_000, |e| seen.push(e.clone())).unwrap();
        prop_assert!(last.converged);
        for pair in seen.windows(2) {
            prop_assert!(pair[1].lo >= pair[0].lo && pair[1].hi <= pair[0].hi);
            prop_assert!(pair[1].lo <= pair[1].hi);
        }
    }

    #[test]
    fn transfer_matrix_counts(d in spanned_strategy()) {
        let p = pipeline(&d);
        for a in [&p.geo, &p.shortlex] {
            prop_assert_eq!(TransferMatrix::from_automaton(a).counts(6), count_words(a, 6));
        }
    }

    #[test]
    fn growth_series_expands_to_counts(d in spanned_strategy()) {
        let p = pipeline(&d);
        for a in [&p.geo, &p.shortlex] {
            let s = rational_series(a, 512).unwrap();
            let direct: Vec<BigInt> = count_words(a, 20).into_iter().map(BigInt::from).collect();
            prop_assert_eq!(s.taylor(21), direct);
            prop_assert_eq!(s.denominator.coeff(0), BigInt::from(1));
        }
    }

    #[test]
    fn dot_output_is_deterministic(d in spanned_strategy()) {
        let (p, q) = (pipeline(&d), pipeline(&d));
        prop_assert_eq!(p.geo.export_dot().unwrap(), q.geo.export_dot().unwrap());
        prop_assert_eq!(p.shortlex.export_dot().unwrap(), q.shortlex.export_dot().unwrap());
        prop_assert_eq!(d.to_dot(), q.diagram.to_dot());
    }

    #[test]
    fn text_round_trip(d in diagram_strategy()) {
        let parsed = parse_diagram(&d.to_text()).unwrap();
        prop_assert_eq!(parsed.to_coxeter(), d);
    }
}

#[test]
fn geometric_conversion_commutes_with_text() {
    for name in ["ideal_triangle", "pentagon", "quadrilateral"] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let parsed = parse_diagram(&text).unwrap();
        let d = parsed.to_coxeter();
        assert_eq!(parse_diagram(&d.to_text()).unwrap().to_coxeter(), d, "{name}");
        assert_eq!(parsed.rank(), d.rank());
    }
}
