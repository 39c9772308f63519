mod common;

use common::*;
use coxeter_growth::perron_certificate;
use coxeter_growth::roots::Escape;

fn assert_none(what: &str, name: &str, v: Vec<String>) {
    assert!(v.is_empty(), "{what} violated on {name}: {v:?}");
}

#[test]
fn hiking() {
    for (name, d) in corpus() {
        assert_none("hiking", &name, hiking_violations(&pipeline(&d)));
    }
}

#[test]
fn stabiliser() {
    for (name, d) in corpus() {
        assert_none("stabiliser", &name, stabiliser_violations(&pipeline(&d)));
    }
}

#[test]
fn cycling() {
    for (name, d) in corpus() {
        assert_none("cycling", &name, cycling_violations(&pipeline(&d)));
    }
}

#[test]
fn hydra() {
    for (name, d) in corpus() {
        assert_none("hydra", &name, hydra_violations(&pipeline(&d)));
    }
}

#[test]
fn aperiodic_cores() {
    for (name, d) in corpus() {
        let p = pipeline(&d);
        if p.tree.is_none() {
            continue;
        }
        for a in [&p.geo, &p.shortlex] {
            assert_eq!(a.accept_core().period().unwrap(), 1, "{name} {}", a.kind());
            assert!(perron_certificate(a).is_certified(), "{name} {}", a.kind());
        }
    }
}

#[test]
fn stabiliser_on_a_path() {
    // m12 = m23 = m34 = inf, all other pairs commute
    let p = pipeline(&coxeter_growth::parse_diagram("rank 4\nedge 1 2 inf\nedge 2 3 inf\nedge 3 4 inf\n").unwrap().to_coxeter());
    let stab = p.roots.stabilizer_roots(1, 2).unwrap();
    assert!(stab.iter().all(|&r| p.roots.cycle_escape(1, 2, r).unwrap() == Escape::Fixed));
    assert!(stabiliser_violations(&p).is_empty());
    // simple roots of generators commuting with neither are not fixed
    assert!(!stab.contains(&p.roots.simple_index(1)));
}

#[test]
fn only_pair_sum_on_the_pair_support() {
    for (name, d) in corpus() {
        let p = pipeline(&d);
        let Some(l) = &p.labelling else { continue };
        let (a, b) = (l.vertex_with(0), l.vertex_with(1));
        for r in p.roots.stabilizer_roots(a, b).unwrap() {
            let v = p.roots.root(r);
            if v.support().iter().all(|&k| k == a || k == b) {
                let f = p.roots.form().field();
                assert!(v[a] == f.one() && v[b] == f.one(), "{name}: root {r}");
            }
        }
    }
}
