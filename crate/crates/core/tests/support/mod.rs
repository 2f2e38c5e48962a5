//! Glue between random networks, the static slice oracles and the temporal
//! implementation. Each `check_*` compares one measure at every instant of
//! the horizon and reports the first disagreement.

#![allow(dead_code)]

use rand::Rng;
use tqnet::analysis::{self, ClosenessType, ClusteringType, Direction};
use tqnet::{SemiringSpec, TemporalMatrix, TemporalQuantity, TimeHorizon, Triple, Value};
use tqnet_testkit::{self as kit, approx_eq, RandomNetwork, Slice};

pub type Check = Result<(), String>;

/// The network as a matrix over `spec` on `[0, horizon)`.
pub fn to_matrix(net: &RandomNetwork, spec: SemiringSpec) -> TemporalMatrix {
    let horizon = TimeHorizon::new(0, net.horizon).unwrap();
    let mut m = TemporalMatrix::square(net.n, spec, horizon);
    for (&(u, v), triples) in &net.arcs {
        let tq = TemporalQuantity::new(
            triples
                .iter()
                .map(|&(s, f, w)| Triple::new(s, f, weight(&spec, w)))
                .collect(),
        )
        .unwrap();
        m.set(u, v, tq).unwrap();
    }
    m
}

fn weight(spec: &SemiringSpec, w: u32) -> Value {
    match spec.kind() {
        tqnet::SemiringKind::Reachability => Value::Bool(true),
        _ => Value::Real(w as f64),
    }
}

/// Real reading of a value at `t`; `true` counts as 1.
pub fn real_at(a: &TemporalQuantity, t: i64) -> Option<f64> {
    match a.value_at(t)? {
        Value::Real(x) => Some(*x),
        Value::Bool(b) => Some(if *b { 1.0 } else { 0.0 }),
        Value::Geo(_) => None,
    }
}

/// A random quantity with up to `k` triples on `[0, horizon)` and integer
/// values in `1..=max`.
pub fn random_tq<R: Rng>(rng: &mut R, k: usize, horizon: i64, max: u32) -> TemporalQuantity {
    let triples = kit::random_intervals(rng, k, horizon)
        .into_iter()
        .map(|(s, f)| Triple::new(s, f, Value::Real(rng.random_range(1..=max) as f64)))
        .collect();
    TemporalQuantity::new(triples).unwrap()
}

fn slices(net: &RandomNetwork) -> impl Iterator<Item = (i64, Slice)> + '_ {
    (0..net.horizon).map(move |t| (t, net.slice(t)))
}

fn exact(what: &str, t: i64, idx: String, got: Option<f64>, want: Option<f64>) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what} at t={t} {idx}: got {got:?}, want {want:?}"))
    }
}

fn close(what: &str, t: i64, idx: String, got: f64, want: f64) -> Check {
    if approx_eq(got, want) {
        Ok(())
    } else {
        Err(format!("{what} at t={t} {idx}: got {got}, want {want}"))
    }
}

pub fn check_degrees(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    let out = analysis::degrees(&a, Direction::Out).map_err(|e| e.to_string())?;
    let inn = analysis::degrees(&a, Direction::In).map_err(|e| e.to_string())?;
    for (t, s) in slices(net) {
        let (wo, wi) = (kit::out_degrees(&s), kit::in_degrees(&s));
        for v in 0..net.n {
            exact("outdegree", t, format!("v={v}"), real_at(out.get(v), t), wo[v])?;
            exact("indegree", t, format!("v={v}"), real_at(inn.get(v), t), wi[v])?;
        }
    }
    Ok(())
}

pub fn check_products(net: &RandomNetwork) -> Check {
    let comb = to_matrix(net, SemiringSpec::combinatorial());
    let sp = to_matrix(net, SemiringSpec::shortest_path());
    let pc = comb.prod(&comb).map_err(|e| e.to_string())?;
    let ps = sp.prod(&sp).map_err(|e| e.to_string())?;
    for (t, s) in slices(net) {
        let (wc, ws) = (kit::product_sum_times(&s, &s), kit::product_min_plus(&s, &s));
        for u in 0..net.n {
            for v in 0..net.n {
                exact("sum-times product", t, format!("({u},{v})"), real_at(pc.get(u, v), t), wc[u][v])?;
                exact("min-plus product", t, format!("({u},{v})"), real_at(ps.get(u, v), t), ws[u][v])?;
            }
        }
    }
    Ok(())
}

pub fn check_closure(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::reachability());
    let strict = a.closure(true).map_err(|e| e.to_string())?;
    let full = a.closure(false).map_err(|e| e.to_string())?;
    for (t, s) in slices(net) {
        let r = kit::strict_reachability(&s);
        for u in 0..net.n {
            for v in 0..net.n {
                let want = r[u][v].then_some(1.0);
                exact("strict closure", t, format!("({u},{v})"), real_at(strict.get(u, v), t), want)?;
                let want = (r[u][v] || u == v).then_some(1.0);
                exact("closure", t, format!("({u},{v})"), real_at(full.get(u, v), t), want)?;
            }
        }
    }
    Ok(())
}

pub fn check_partitions(net: &RandomNetwork, seed: u64) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    let (_, weak) = analysis::weak_connectivity(&a, seed).map_err(|e| e.to_string())?;
    let (_, strong) = analysis::strong_connectivity(&a, seed).map_err(|e| e.to_string())?;
    for (t, s) in slices(net) {
        let wl: Vec<Option<u64>> = (0..net.n).map(|u| weak.label_at(u, t)).collect();
        if !kit::same_partition(&wl, &kit::weak_classes(&s)) {
            return Err(format!("weak partition at t={t}: labels {wl:?}"));
        }
        let sl: Vec<Option<u64>> = (0..net.n).map(|u| strong.label_at(u, t)).collect();
        if !kit::same_partition(&sl, &kit::strong_classes(&s)) {
            return Err(format!("strong partition at t={t}: labels {sl:?}"));
        }
    }
    Ok(())
}

pub fn check_closeness(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    for (kind, k) in [(ClosenessType::Output, 1), (ClosenessType::All, 2), (ClosenessType::Input, 3)] {
        let c = analysis::closeness(&a, kind).map_err(|e| e.to_string())?;
        for (t, s) in slices(net) {
            let want = kit::closeness(&s, k);
            for v in 0..net.n {
                let got = real_at(c.get(v), t).unwrap_or(0.0);
                close(&format!("closeness type {k}"), t, format!("v={v}"), got, want[v].unwrap_or(0.0))?;
            }
        }
    }
    Ok(())
}

pub fn check_betweenness(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    let b = analysis::betweenness(&a).map_err(|e| e.to_string())?;
    for (t, s) in slices(net) {
        let want = kit::betweenness(&s);
        for v in 0..net.n {
            let got = real_at(b.get(v), t).unwrap_or(0.0);
            close("betweenness", t, format!("v={v}"), got, want[v].unwrap_or(0.0))?;
        }
    }
    Ok(())
}

pub fn check_clustering(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    let overall = slices(net).map(|(_, s)| kit::max_degree(&s)).max().unwrap_or(0);
    for kind in [ClusteringType::Standard, ClusteringType::TemporalMax, ClusteringType::OverallMax] {
        let c = analysis::clus_coef(&a, kind).map_err(|e| e.to_string())?;
        for (t, s) in slices(net) {
            let delta = match kind {
                ClusteringType::Standard => None,
                ClusteringType::TemporalMax => Some(kit::max_degree(&s)),
                ClusteringType::OverallMax => Some(overall),
            };
            let want = kit::clustering(&s, delta);
            for v in 0..net.n {
                let got = real_at(c.get(v), t).unwrap_or(0.0);
                close(&format!("clustering type {}", kind as u8), t, format!("v={v}"), got, want[v])?;
            }
        }
    }
    Ok(())
}

/// The `(r, q)` pairs compared against the static Pathfinder oracle.
pub const PATHFINDER_PARAMS: [(f64, Option<u64>); 4] =
    [(1.0, None), (2.0, None), (f64::INFINITY, None), (1.0, Some(2))];

pub fn check_pathfinder(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    for (r, q) in PATHFINDER_PARAMS {
        let pf = analysis::path_finder(&a, r, q).map_err(|e| e.to_string())?;
        for (t, s) in slices(net) {
            let kept = kit::pathfinder_kept(&s, r, q.map(|q| q as usize));
            for u in 0..net.n {
                for v in 0..net.n {
                    let want = s[u][v].filter(|_| kept[u][v]);
                    exact(&format!("pathfinder r={r} q={q:?}"), t, format!("({u},{v})"), real_at(pf.get(u, v), t), want)?;
                }
            }
        }
    }
    Ok(())
}

pub fn check_pathfinder_idempotent(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    for (r, q) in PATHFINDER_PARAMS {
        let once = analysis::path_finder(&a, r, q).map_err(|e| e.to_string())?;
        let twice = analysis::path_finder(&once, r, q).map_err(|e| e.to_string())?;
        for u in 0..net.n {
            for v in 0..net.n {
                if once.get(u, v) != twice.get(u, v) {
                    return Err(format!("pathfinder r={r} q={q:?} not idempotent at ({u},{v})"));
                }
            }
        }
    }
    Ok(())
}

/// Slack for the `[0, 1]` attraction bound under floating rounding.
pub const ATTRACTION_SLACK: f64 = 1e-12;

pub fn check_attraction_bounds(net: &RandomNetwork) -> Check {
    let a = to_matrix(net, SemiringSpec::combinatorial());
    let att = analysis::attraction(&a).map_err(|e| e.to_string())?;
    for (v, q) in att.iter().enumerate() {
        for tr in q.iter() {
            let x = tr.value.as_real().ok_or("attraction value is not real")?;
            if !(-ATTRACTION_SLACK..=1.0 + ATTRACTION_SLACK).contains(&x) {
                return Err(format!("attraction of v={v} on [{}, {}) is {x}", tr.start, tr.finish));
            }
        }
    }
    Ok(())
}

/// All slice-oracle comparisons, by name.
pub fn equivalence_checks() -> Vec<(&'static str, fn(&RandomNetwork) -> Check)> {
    vec![
        ("degrees", check_degrees),
        ("products", check_products),
        ("closure", check_closure),
        ("partitions", |n| check_partitions(n, analysis::DEFAULT_SEED)),
        ("closeness", check_closeness),
        ("betweenness", check_betweenness),
        ("clustering", check_clustering),
        ("pathfinder", check_pathfinder),
    ]
}

/// A random element of the semiring's domain, including its special values.
pub fn random_value<R: Rng>(rng: &mut R, spec: &SemiringSpec) -> Value {
    use tqnet::{Geodesic, SemiringKind as K};
    let special = rng.random_bool(0.1);
    match spec.kind() {
        K::Combinatorial if special => Value::Real(0.0),
        K::Combinatorial => Value::Real(rng.random_range(-100.0..100.0)),
        K::Reachability => Value::Bool(rng.random_bool(0.5)),
        K::ShortestPath | K::Pathfinder if special => {
            Value::Real(if rng.random_bool(0.5) { 0.0 } else { f64::INFINITY })
        }
        K::ShortestPath | K::Pathfinder => Value::Real(rng.random_range(0.0..100.0)),
        K::MaxMin if special => {
            Value::Real(if rng.random_bool(0.5) { f64::NEG_INFINITY } else { f64::INFINITY })
        }
        K::MaxMin => Value::Real(rng.random_range(-100.0..100.0)),
        K::Geodetic if special => {
            if rng.random_bool(0.5) { spec.zero() } else { spec.one() }
        }
        K::Geodetic => Value::Geo(Geodesic::new(rng.random_range(1..20), rng.random_range(1..50))),
    }
}

fn magnitude(xs: &[&Value]) -> f64 {
    xs.iter().filter_map(|x| x.as_real()).filter(|x| x.is_finite()).map(f64::abs).fold(1.0, f64::max)
}

fn same(law: &str, spec: &SemiringSpec, got: Value, want: Value, scale: f64) -> Check {
    let ok = match (got, want) {
        (Value::Real(a), Value::Real(b)) => {
            a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= kit::TOLERANCE * scale.max(a.abs()).max(b.abs()))
        }
        (a, b) => a == b,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{spec}: {law}: {got} != {want}"))
    }
}

/// Checks the semiring axioms on `count` random triples: exact for discrete
/// domains, within the relative tolerance for reals.
pub fn check_semiring_laws<R: Rng>(rng: &mut R, spec: &SemiringSpec, count: usize) -> Check {
    let add = |a: &Value, b: &Value| spec.add(a, b).map_err(|e| e.to_string());
    let mul = |a: &Value, b: &Value| spec.mul(a, b).map_err(|e| e.to_string());
    let (zero, one) = (spec.zero(), spec.one());
    for _ in 0..count {
        let x = random_value(rng, spec);
        let y = random_value(rng, spec);
        let z = random_value(rng, spec);
        let m = magnitude(&[&x, &y, &z]);
        let sum_scale = 3.0 * m;
        let prod_scale = m * m * m;
        same("sum associates", spec, add(&add(&x, &y)?, &z)?, add(&x, &add(&y, &z)?)?, sum_scale)?;
        same("sum commutes", spec, add(&x, &y)?, add(&y, &x)?, sum_scale)?;
        same("zero is neutral", spec, add(&x, &zero)?, x, m)?;
        same("product associates", spec, mul(&mul(&x, &y)?, &z)?, mul(&x, &mul(&y, &z)?)?, prod_scale)?;
        same("one is left neutral", spec, mul(&one, &x)?, x, m)?;
        same("one is right neutral", spec, mul(&x, &one)?, x, m)?;
        same("zero annihilates left", spec, mul(&zero, &x)?, zero, m)?;
        same("zero annihilates right", spec, mul(&x, &zero)?, zero, m)?;
        same(
            "left distributivity",
            spec,
            mul(&x, &add(&y, &z)?)?,
            add(&mul(&x, &y)?, &mul(&x, &z)?)?,
            2.0 * m * m,
        )?;
        same(
            "right distributivity",
            spec,
            mul(&add(&x, &y)?, &z)?,
            add(&mul(&x, &z)?, &mul(&y, &z)?)?,
            2.0 * m * m,
        )?;
        // geodetic: one (+) one = (0, 2)
        if spec.is_absorptive() && !(spec.kind() == tqnet::SemiringKind::Geodetic && x == one) {
            same("absorption", spec, add(&one, &x)?, one, m)?;
        }
    }
    Ok(())
}

/// The six semirings checked by the axiom suite.
pub fn law_semirings() -> Vec<SemiringSpec> {
    vec![
        SemiringSpec::combinatorial(),
        SemiringSpec::reachability(),
        SemiringSpec::shortest_path(),
        SemiringSpec::maxmin(),
        SemiringSpec::geodetic(),
        SemiringSpec::pathfinder(2.0, None).unwrap(),
    ]
}
