use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relprob::events::to_absolute;
use relprob::{
    catalog, sample, validate, ClassedRpf, DenseRpf, Magnitude, MagnitudeTable, Violation,
};

fn ratios() -> Vec<Magnitude> {
    vec![
        Magnitude::Zero,
        Magnitude::from_linear(0.5).unwrap(),
        Magnitude::ONE,
        Magnitude::from_linear(2.0).unwrap(),
        Magnitude::Infinity,
    ]
}

fn catalog_grid() -> Vec<(String, DenseRpf)> {
    let mut out = vec![
        ("empty".into(), catalog::empty()),
        ("unit".into(), catalog::unit()),
    ];
    for k in 0..=8 {
        out.push((format!("uniform {k}"), catalog::uniform(k)));
        out.push((format!("indeterminate {k}"), catalog::indeterminate(k)));
        for c in 0..k {
            out.push((format!("certain {k} {c}"), catalog::certain(k, c).unwrap()));
        }
        for r in ratios() {
            out.push((
                format!("geometric {k} {r}"),
                catalog::finite_geometric(k, r).unwrap(),
            ));
        }
    }
    for n in 0..=10 {
        for p in [0.1, 0.3, 0.5, 0.9] {
            out.push((
                format!("binomial {n} {p}"),
                catalog::binomial(n, p).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn every_catalog_entry_is_valid() {
    for (name, p) in catalog_grid() {
        let report = validate(p.table());
        assert!(report.is_valid(), "{name}: {report}");
    }
}

#[test]
fn perturbed_entries_are_caught_with_the_right_witness() {
    for (name, p) in catalog_grid().into_iter().filter(|(_, p)| p.k() > 0) {
        let k = p.k();
        let h = k / 2;
        let mut t = p.table().clone();
        t.set(h, h, Magnitude::Finite(2e-6));
        assert_eq!(
            validate(&t).first(),
            Some(&Violation::Identity { outcome: h }),
            "{name}"
        );

        let finite = (0..k * k)
            .map(|x| (x / k, x % k))
            .find(|&(i, j)| i != j && p[(i, j)].is_finite_positive());
        if let Some((i, j)) = finite {
            let mut t = p.table().clone();
            let bumped = Magnitude::Finite(p[(i, j)].log_value().unwrap() + 2e-6);
            t.set(i, j, bumped);
            assert_eq!(
                validate(&t).first(),
                Some(&Violation::Inverse {
                    i: i.min(j),
                    j: i.max(j)
                }),
                "{name}"
            );
        }
    }
}

#[test]
fn binomial_matches_the_pmf() {
    fn choose(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }
    for n in 0..=10u64 {
        for p in [0.05f64, 0.3, 0.5, 0.77] {
            let pmf: Vec<f64> = (0..=n)
                .map(|h| choose(n, h) * p.powi(h as i32) * (1.0 - p).powi((n - h) as i32))
                .collect();
            let total: f64 = pmf.iter().sum();
            let pmf: Vec<f64> = pmf.iter().map(|x| x / total).collect();
            let want = catalog::from_absolute(&pmf).unwrap();
            assert!(
                catalog::binomial(n as usize, p).unwrap().approx_eq(&want),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn geometric_matches_normalized_powers() {
    for k in 1..=8 {
        for r in [0.5f64, 1.0, 2.0, 3.0] {
            let w: Vec<f64> = (0..k).map(|i| r.powi(i)).collect();
            let total: f64 = w.iter().sum();
            let d: Vec<f64> = w.iter().map(|x| x / total).collect();
            let g =
                catalog::finite_geometric(k as usize, Magnitude::from_linear(r).unwrap()).unwrap();
            assert!(g.approx_eq(&catalog::from_absolute(&d).unwrap()));
            let back = to_absolute(&g).unwrap();
            for (a, b) in back.probs().iter().zip(&d) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn classed_round_trip_on_everything() {
    let mut inputs: Vec<DenseRpf> = catalog_grid().into_iter().map(|(_, p)| p).collect();
    inputs.push(catalog::from_absolute(&[0.5, 0.5, 0.0, 0.0]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let k = rng.random_range(0..=7);
        inputs.push(sample::any_rpf(&mut rng, k));
        inputs.push(sample::totally_comparable(&mut rng, k));
    }
    for p in inputs {
        let classed = ClassedRpf::from_dense(&p);
        assert!(classed.to_dense().approx_eq(&p));
        // canonical: re-deriving from the reconstruction changes nothing
        let again = ClassedRpf::from_dense(&classed.to_dense());
        assert_eq!(again.assignment(), classed.assignment());
        assert_eq!(again.class_order(), classed.class_order());
    }
}

#[test]
fn cross_class_entries_share_one_variant() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..100 {
        let k = rng.random_range(1..=7);
        let p = sample::any_rpf(&mut rng, k);
        let classes = p.possibility_classes();
        for a in 0..classes.members.len() {
            for b in 0..classes.members.len() {
                let mut seen: Option<Magnitude> = None;
                for &i in &classes.members[a] {
                    for &j in &classes.members[b] {
                        let v = p[(i, j)];
                        if a == b {
                            assert!(v.is_finite_positive());
                        } else if let Some(s) = seen {
                            assert!(s.same_variant(v));
                            assert!(!v.is_finite_positive());
                        }
                        seen = Some(v);
                    }
                }
            }
        }
    }
}

#[test]
fn classification_is_self_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let k = rng.random_range(0..=7);
        let p = sample::any_rpf(&mut rng, k);
        let report = p.classify();
        let brute_tc = p.table().entries().iter().all(|m| !m.is_wildcard());
        assert_eq!(report.totally_comparable, brute_tc);
        let brute_anchors: Vec<usize> = (0..k)
            .filter(|&a| (0..k).all(|h| p[(a, h)].is_positive()))
            .collect();
        assert_eq!(report.anchors, brute_anchors);
        assert_eq!(report.anchored, !brute_anchors.is_empty());
        assert_eq!(report.totally_mutually_possible, report.classes.len() <= 1);
        if report.totally_comparable && k > 0 {
            assert!(report.anchored);
            // a total order: every pair of classes is related one way
            let c = report.classes.len();
            assert_eq!(report.class_dag.len(), c * (c - 1) / 2);
        }
    }
}

#[test]
fn two_outcomes_are_determined_by_one_entry() {
    let choices = [
        Magnitude::Zero,
        Magnitude::from_linear(0.5).unwrap(),
        Magnitude::ONE,
        Magnitude::from_linear(2.0).unwrap(),
        Magnitude::Infinity,
        Magnitude::Wildcard,
    ];
    for &x in &choices {
        for &y in &choices {
            let t =
                MagnitudeTable::from_rows(vec![vec![Magnitude::ONE, x], vec![y, Magnitude::ONE]])
                    .unwrap();
            assert_eq!(validate(&t).is_valid(), y == x.inverse(), "{x} {y}");
        }
    }
}

proptest! {
    #[test]
    fn generated_rpfs_validate(seed in any::<u64>(), k in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(validate(sample::any_rpf(&mut rng, k).table()).is_valid());
    }

    #[test]
    fn from_absolute_round_trips(seed in any::<u64>(), k in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zeros = rng.random_range(0..k.min(2));
        let d = sample::simplex_point(&mut rng, k, zeros);
        let p = catalog::from_absolute(&d).unwrap();
        prop_assert!(p.is_totally_comparable());
        let back = to_absolute(&p).unwrap();
        for (a, b) in back.probs().iter().zip(&d) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn several_zeros_lose_comparability_but_stay_anchored(seed in any::<u64>(), k in 3usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zeros = rng.random_range(2..k);
        let p = catalog::from_absolute(&sample::simplex_point(&mut rng, k, zeros)).unwrap();
        prop_assert!(!p.is_totally_comparable());
        prop_assert!(!p.find_anchors().is_empty());
    }
}
