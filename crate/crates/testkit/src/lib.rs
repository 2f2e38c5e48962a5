//! Random temporal networks and static per-slice reference computations.
//!
//! Everything here works on plain adjacency data for a single instant and
//! uses textbook algorithms (BFS, relaxation, union of reachability sets), so
//! it shares no code with the temporal implementation it is compared with.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;

/// Weight matrix of one time slice: `adj[u][v]` is the arc weight, if any.
pub type Slice = Vec<Vec<Option<f64>>>;

/// Relative tolerance for comparing real results.
pub const TOLERANCE: f64 = 1e-9;

pub fn approx_eq(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    (a - b).abs() <= TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug, Clone, Copy)]
pub struct NetworkParams {
    pub max_nodes: usize,
    pub horizon: i64,
    pub max_intervals: usize,
    pub max_weight: u32,
}

impl Default for NetworkParams {
    fn default() -> Self {
        NetworkParams {
            max_nodes: 8,
            horizon: 16,
            max_intervals: 3,
            max_weight: 5,
        }
    }
}

/// A random loop-free directed temporal network on `[0, horizon)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomNetwork {
    pub n: usize,
    pub horizon: i64,
    /// `(from, to) -> [(start, finish, weight)]`, sorted and disjoint.
    pub arcs: BTreeMap<(usize, usize), Vec<(i64, i64, u32)>>,
}

impl RandomNetwork {
    pub fn generate<R: Rng>(rng: &mut R, params: &NetworkParams) -> Self {
        let n = rng.random_range(2..=params.max_nodes.max(2));
        let density = rng.random_range(0.15..0.6);
        let mut arcs = BTreeMap::new();
        for u in 0..n {
            for v in 0..n {
                if u == v || !rng.random_bool(density) {
                    continue;
                }
                let k = rng.random_range(1..=params.max_intervals);
                let intervals = random_intervals(rng, k, params.horizon);
                if intervals.is_empty() {
                    continue;
                }
                let triples = intervals
                    .into_iter()
                    .map(|(s, f)| (s, f, rng.random_range(1..=params.max_weight)))
                    .collect();
                arcs.insert((u, v), triples);
            }
        }
        RandomNetwork {
            n,
            horizon: params.horizon,
            arcs,
        }
    }

    /// The static network active at instant `t`.
    pub fn slice(&self, t: i64) -> Slice {
        let mut adj = vec![vec![None; self.n]; self.n];
        for (&(u, v), triples) in &self.arcs {
            if let Some(&(_, _, w)) = triples.iter().find(|&&(s, f, _)| s <= t && t < f) {
                adj[u][v] = Some(w as f64);
            }
        }
        adj
    }
}

/// Up to `k` sorted, disjoint, non-empty intervals inside `[0, horizon)`.
/// Consecutive intervals may touch.
pub fn random_intervals<R: Rng>(rng: &mut R, k: usize, horizon: i64) -> Vec<(i64, i64)> {
    let mut points: Vec<i64> = (0..2 * k).map(|_| rng.random_range(0..=horizon)).collect();
    points.sort_unstable();
    points
        .chunks(2)
        .map(|p| (p[0], p[1]))
        .filter(|(s, f)| s < f)
        .collect()
}

pub fn out_degrees(adj: &Slice) -> Vec<Option<f64>> {
    adj.iter()
        .map(|row| row.iter().flatten().copied().reduce(|a, b| a + b))
        .collect()
}

pub fn in_degrees(adj: &Slice) -> Vec<Option<f64>> {
    (0..adj.len())
        .map(|v| adj.iter().filter_map(|row| row[v]).reduce(|a, b| a + b))
        .collect()
}

/// `(+, *)` product; an entry is undefined when no `k` has both factors.
pub fn product_sum_times(a: &Slice, b: &Slice) -> Slice {
    product(a, b, |x, y| x * y, |x, y| x + y)
}

/// `(min, +)` product.
pub fn product_min_plus(a: &Slice, b: &Slice) -> Slice {
    product(a, b, |x, y| x + y, f64::min)
}

fn product(a: &Slice, b: &Slice, mul: impl Fn(f64, f64) -> f64, add: impl Fn(f64, f64) -> f64) -> Slice {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len())
                        .filter_map(|k| Some(mul(a[i][k]?, b[k][j]?)))
                        .reduce(&add)
                })
                .collect()
        })
        .collect()
}

/// `r[u][v]`: some nonempty walk leads from `u` to `v`.
pub fn strict_reachability(adj: &Slice) -> Vec<Vec<bool>> {
    let n = adj.len();
    (0..n)
        .map(|u| {
            let mut seen = vec![false; n];
            let mut queue: VecDeque<usize> = VecDeque::new();
            for v in 0..n {
                if adj[u][v].is_some() && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if adj[x][y].is_some() && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
        .collect()
}

fn classes_from_relation(rel: &[Vec<bool>]) -> Vec<Option<Vec<usize>>> {
    (0..rel.len())
        .map(|u| rel[u][u].then(|| (0..rel.len()).filter(|&v| rel[u][v]).collect()))
        .collect()
}

/// Weak components among the nodes with at least one incident arc; `None`
/// for isolated nodes. Each entry lists the members of the node's class.
pub fn weak_classes(adj: &Slice) -> Vec<Option<Vec<usize>>> {
    let n = adj.len();
    let mut sym = adj.clone();
    for u in 0..n {
        for v in 0..n {
            if adj[u][v].is_some() {
                sym[v][u] = Some(1.0);
            }
        }
    }
    classes_from_relation(&strict_reachability(&sym))
}

/// Strong components among the nodes lying on a cycle.
pub fn strong_classes(adj: &Slice) -> Vec<Option<Vec<usize>>> {
    let r = strict_reachability(adj);
    let n = adj.len();
    let mutual: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| r[u][v] && r[v][u]).collect())
        .collect();
    classes_from_relation(&mutual)
}

/// Checks that `labels` (one per node, `None` when unlabelled) induces
/// exactly the classes in `expected`.
pub fn same_partition(labels: &[Option<u64>], expected: &[Option<Vec<usize>>]) -> bool {
    if labels.len() != expected.len() {
        return false;
    }
    for u in 0..labels.len() {
        match (&labels[u], &expected[u]) {
            (None, None) => {}
            (Some(lu), Some(members)) => {
                for v in 0..labels.len() {
                    let together = labels[v] == Some(*lu);
                    if together != members.contains(&v) {
                        return false;
                    }
                }
            }
            _ => return false,
        }
    }
    true
}

/// Minimum weight over nonempty walks, by repeated edge relaxation.
pub fn shortest_distances(adj: &Slice) -> Vec<Vec<f64>> {
    let n = adj.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for s in 0..n {
        for v in 0..n {
            if let Some(w) = adj[s][v] {
                d[s][v] = d[s][v].min(w);
            }
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                if d[s][x].is_infinite() {
                    continue;
                }
                for y in 0..n {
                    if let Some(w) = adj[x][y] {
                        if d[s][x] + w < d[s][y] {
                            d[s][y] = d[s][x] + w;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    d
}

/// Closeness of type 1 (output), 2 (all) or 3 (input); `None` for `n < 2`.
pub fn closeness(adj: &Slice, kind: u8) -> Vec<Option<f64>> {
    let n = adj.len();
    if n < 2 {
        return vec![None; n];
    }
    let d = shortest_distances(adj);
    let k = (2 - (kind as i64 - 2).abs()) as f64 * (n - 1) as f64;
    (0..n)
        .map(|v| {
            let mut sum = 0.0;
            for u in (0..n).filter(|&u| u != v) {
                if kind < 3 {
                    sum += d[v][u];
                }
                if kind > 1 {
                    sum += d[u][v];
                }
            }
            Some(if sum.is_infinite() { 0.0 } else { k / sum })
        })
        .collect()
}

/// Hop distances and shortest-path counts from every source, by BFS.
pub fn geodesics(adj: &Slice) -> (Vec<Vec<Option<u64>>>, Vec<Vec<u64>>) {
    let n = adj.len();
    let mut dist = vec![vec![None; n]; n];
    let mut count = vec![vec![0u64; n]; n];
    for s in 0..n {
        let mut queue = VecDeque::new();
        for v in 0..n {
            if adj[s][v].is_some() {
                dist[s][v] = Some(1);
                count[s][v] = 1;
                queue.push_back(v);
            }
        }
        while let Some(x) = queue.pop_front() {
            let dx = dist[s][x].expect("queued nodes have a distance");
            for y in 0..n {
                if adj[x][y].is_none() {
                    continue;
                }
                match dist[s][y] {
                    None => {
                        dist[s][y] = Some(dx + 1);
                        count[s][y] = count[s][x];
                        queue.push_back(y);
                    }
                    Some(dy) if dy == dx + 1 => count[s][y] += count[s][x],
                    _ => {}
                }
            }
        }
    }
    (dist, count)
}

/// Betweenness; 0 when no geodesic passes the node, `None` for `n < 3`.
pub fn betweenness(adj: &Slice) -> Vec<Option<f64>> {
    let n = adj.len();
    if n < 3 {
        return vec![None; n];
    }
    let (d, c) = geodesics(adj);
    let norm = ((n - 1) * (n - 2)) as f64;
    (0..n)
        .map(|v| {
            let mut r = 0.0;
            for u in (0..n).filter(|&u| u != v) {
                for w in (0..n).filter(|&w| w != v && w != u) {
                    if let (Some(uv), Some(vw), Some(uw)) = (d[u][v], d[v][w], d[u][w]) {
                        if uv + vw == uw {
                            r += (c[u][v] * c[v][w]) as f64 / c[u][w] as f64;
                        }
                    }
                }
            }
            Some(r / norm)
        })
        .collect()
}

/// Neighbour sets in the undirected skeleton, loops ignored.
pub fn neighbours(adj: &Slice) -> Vec<Vec<usize>> {
    let n = adj.len();
    (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && (adj[v][u].is_some() || adj[u][v].is_some()))
                .collect()
        })
        .collect()
}

/// Largest skeleton degree in the slice.
pub fn max_degree(adj: &Slice) -> usize {
    neighbours(adj).iter().map(Vec::len).max().unwrap_or(0)
}

/// Clustering coefficients; `delta` is `None` for the standard coefficient
/// and the normalising maximum degree for the corrected ones.
pub fn clustering(adj: &Slice, delta: Option<usize>) -> Vec<f64> {
    let nb = neighbours(adj);
    nb.iter()
        .map(|ns| {
            let k = ns.len();
            if k < 2 {
                return 0.0;
            }
            let arcs = ns
                .iter()
                .flat_map(|&x| ns.iter().map(move |&y| (x, y)))
                .filter(|&(x, y)| x != y && adj[x][y].is_some())
                .count() as f64;
            let fac = match delta {
                None => (k * (k - 1)) as f64,
                Some(d) => (d * (k - 1)) as f64,
            };
            arcs / fac
        })
        .collect()
}

/// The r-norm `(a^r + b^r)^(1/r)`.
pub fn r_norm(a: f64, b: f64, r: f64) -> f64 {
    if r.is_infinite() {
        a.max(b)
    } else {
        (a.powf(r) + b.powf(r)).powf(1.0 / r)
    }
}

/// Arcs kept by the Pathfinder procedure: those whose weight is not beaten by
/// any walk of at most `q` arcs (`None`: any length).
pub fn pathfinder_kept(adj: &Slice, r: f64, q: Option<usize>) -> Vec<Vec<bool>> {
    let n = adj.len();
    let w: Vec<Vec<f64>> = adj
        .iter()
        .map(|row| row.iter().map(|x| x.unwrap_or(f64::INFINITY)).collect())
        .collect();
    let steps = q.unwrap_or(n).min(n.max(1));
    let mut best = w.clone();
    for _ in 1..steps {
        let mut next = best.clone();
        for u in 0..n {
            for k in 0..n {
                if best[u][k].is_infinite() {
                    continue;
                }
                for v in 0..n {
                    if w[k][v].is_finite() {
                        next[u][v] = next[u][v].min(r_norm(best[u][k], w[k][v], r));
                    }
                }
            }
        }
        best = next;
    }
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| adj[u][v].is_some() && approx_eq(best[u][v], w[u][v]))
                .collect()
        })
        .collect()
}
