mod support;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{random_tq, real_at};
use tqnet::{SemiringKind, SemiringSpec, TemporalQuantity, Triple, Value};

fn q(s: &str) -> TemporalQuantity {
    s.parse().unwrap()
}

fn golden_a() -> TemporalQuantity {
    q("[(1, 5, 2), (6, 8, 1), (11, 12, 3), (14, 16, 2), (17, 18, 5), (19, 20, 1)]")
}

fn golden_b() -> TemporalQuantity {
    q("[(2, 3, 4), (4, 7, 3), (9, 10, 2), (13, 15, 5), (16, 21, 1)]")
}

#[test]
fn golden_sum_and_product() {
    let c = SemiringSpec::combinatorial();
    let s = golden_a().sum(&c, &golden_b()).unwrap();
    let p = golden_a().prod(&c, &golden_b()).unwrap();
    assert_eq!(
        s,
        q("[(1, 2, 2), (2, 3, 6), (3, 4, 2), (4, 5, 5), (5, 6, 3), (6, 7, 4), (7, 8, 1), (9, 10, 2), \
           (11, 12, 3), (13, 14, 5), (14, 15, 7), (15, 16, 2), (16, 17, 1), (17, 18, 6), (18, 19, 1), \
           (19, 20, 2), (20, 21, 1)]")
    );
    assert_eq!(p, q("[(2, 3, 8), (4, 5, 6), (6, 7, 3), (14, 15, 10), (17, 18, 5), (19, 20, 1)]"));
    assert_eq!(golden_a().total().unwrap(), 23.0);
    assert_eq!(golden_b().total().unwrap(), 30.0);
    assert_eq!(s.total().unwrap(), 53.0);
}

/// Pointwise oracle: evaluate both operands at every instant.
fn pointwise(spec: &SemiringSpec, a: &TemporalQuantity, b: &TemporalQuantity, t: i64, sum: bool) -> Option<f64> {
    let (x, y) = (real_at(a, t), real_at(b, t));
    let r = match (x, y, sum) {
        (Some(x), Some(y), true) => Some(spec.add(&Value::Real(x), &Value::Real(y)).unwrap()),
        (Some(x), None, true) | (None, Some(x), true) => Some(Value::Real(x)),
        (Some(x), Some(y), false) => Some(spec.mul(&Value::Real(x), &Value::Real(y)).unwrap()),
        _ => None,
    };
    r.and_then(|v| v.as_real())
}

#[test]
fn operations_match_pointwise_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let specs = [
        SemiringSpec::combinatorial(),
        SemiringSpec::shortest_path(),
        SemiringSpec::maxmin(),
        SemiringSpec::pathfinder(2.0, None).unwrap(),
    ];
    for _ in 0..500 {
        let a = random_tq(&mut rng, 6, 30, 5);
        let b = random_tq(&mut rng, 6, 30, 5);
        for spec in &specs {
            let s = a.sum(spec, &b).unwrap();
            let p = a.prod(spec, &b).unwrap();
            for t in -1..31 {
                let ws = pointwise(spec, &a, &b, t, true);
                let wp = pointwise(spec, &a, &b, t, false).filter(|x| !(spec.is_absorptive() && spec.is_zero(&Value::Real(*x))));
                assert_eq!(real_at(&s, t), ws, "{spec} sum at {t}: {a} + {b} = {s}");
                assert_eq!(real_at(&p, t), wp, "{spec} prod at {t}: {a} * {b} = {p}");
            }
        }
    }
}

#[test]
fn results_are_in_standard_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let a = random_tq(&mut rng, 8, 40, 2);
        let b = random_tq(&mut rng, 8, 40, 2);
        let c = SemiringSpec::combinatorial();
        for r in [a.sum(&c, &b).unwrap(), a.prod(&c, &b).unwrap()] {
            for w in r.triples().windows(2) {
                assert!(w[0].finish <= w[1].start);
                assert!(w[0].finish < w[1].start || w[0].value != w[1].value, "{r}");
            }
        }
    }
}

#[test]
fn length_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let c = SemiringSpec::combinatorial();
    for _ in 0..2_000 {
        let a = random_tq(&mut rng, 10, 60, 4);
        let b = random_tq(&mut rng, 10, 60, 4);
        let (la, lb) = (a.len(), b.len());
        let s = a.sum(&c, &b).unwrap();
        let p = a.prod(&c, &b).unwrap();
        assert!(s.len() <= (2 * (la + lb)).saturating_sub(1));
        assert!(p.len() <= (la + lb).saturating_sub(1));
    }
}

#[test]
fn parse_and_display_round_trip() {
    for text in [
        "[]",
        "[(1, 5, 2), (6, 8, 1.5)]",
        "[(0, 3, true)]",
        "[(0, 3, inf)]",
        "[(0, 2, (2, 3)), (2, 4, (inf, 0))]",
    ] {
        let a = q(text);
        assert_eq!(a.to_string().parse::<TemporalQuantity>().unwrap(), a);
    }
}

#[test]
fn unsorted_input_is_rejected() {
    let bad = vec![
        Triple::new(5, 6, Value::Real(1.0)),
        Triple::new(1, 2, Value::Real(1.0)),
    ];
    assert!(TemporalQuantity::new(bad).is_err());
    assert!(TemporalQuantity::new(vec![Triple::new(3, 3, Value::Real(1.0))]).is_err());
}

proptest! {
    #[test]
    fn sum_commutes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_tq(&mut rng, 5, 20, 3);
        let b = random_tq(&mut rng, 5, 20, 3);
        for kind in [SemiringKind::Combinatorial, SemiringKind::ShortestPath, SemiringKind::MaxMin] {
            let spec = SemiringSpec::new(kind);
            prop_assert_eq!(a.sum(&spec, &b).unwrap(), b.sum(&spec, &a).unwrap());
        }
    }

    #[test]
    fn product_distributes_over_sum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_tq(&mut rng, 4, 20, 3);
        let b = random_tq(&mut rng, 4, 20, 3);
        let c = random_tq(&mut rng, 4, 20, 3);
        for kind in [SemiringKind::Combinatorial, SemiringKind::ShortestPath, SemiringKind::MaxMin] {
            let s = SemiringSpec::new(kind);
            let left = a.prod(&s, &b.sum(&s, &c).unwrap()).unwrap();
            let right = a.prod(&s, &b).unwrap().sum(&s, &a.prod(&s, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }

    #[test]
    fn inverse_is_involutive_on_nonzero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_tq(&mut rng, 5, 20, 4);
        prop_assert_eq!(a.invert().unwrap().invert().unwrap(), a);
    }
}
