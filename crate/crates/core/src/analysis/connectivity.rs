use std::collections::hash_map::Entry;
use std::collections::HashMap;

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::require_square;
use crate::error::{Error, Result};
use crate::semiring::{SemiringSpec, Value};
use crate::tmatrix::{Side, TemporalMatrix, TemporalPartition, TemporalVector};
use crate::tq::{TemporalQuantity, Time, Triple};

/// Seed used for the class-label shuffle when none is given.
pub const DEFAULT_SEED: u64 = 42;

const MAX_ATTEMPTS: u32 = 32;

/// Largest label keeping every row sum exactly representable in an `f64`.
const LABEL_LIMIT: u64 = 1 << 53;

/// Weak connectivity: the strict reachability closure of the symmetrized
/// pattern, with the corresponding temporal partition.
pub fn weak_connectivity(a: &TemporalMatrix, seed: u64) -> Result<(TemporalMatrix, TemporalPartition)> {
    require_square(a)?;
    let w = a
        .binary_in(SemiringSpec::reachability())
        .symmetrize()?
        .closure(true)?;
    let p = eq_mat_to_part(&w, seed)?;
    Ok((w, p))
}

/// Strong connectivity: mutual strict reachability, with the corresponding
/// temporal partition.
pub fn strong_connectivity(a: &TemporalMatrix, seed: u64) -> Result<(TemporalMatrix, TemporalPartition)> {
    require_square(a)?;
    let r = a.binary_in(SemiringSpec::reachability()).closure(true)?;
    let s = r.intersect(&r.transpose())?;
    let p = eq_mat_to_part(&s, seed)?;
    Ok((s, p))
}

/// Turns a temporal equivalence matrix into a partition by summing shuffled
/// distinct labels over each row. The labels are redrawn until every distinct
/// row set gets a distinct sum, so the renumbered result does not depend on
/// `seed`.
pub fn eq_mat_to_part(e: &TemporalMatrix, seed: u64) -> Result<TemporalPartition> {
    let n = require_square(e)?;
    let comb = SemiringSpec::combinatorial();
    let e = e.binary_in(comb);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let labels = draw_labels(n, attempt, &mut rng);
        let v = TemporalVector::new(
            labels
                .iter()
                .map(|&x| e.horizon().full(Value::Real(x as f64)))
                .collect(),
            comb,
            *e.horizon(),
        );
        let p = e.vec_mul(&v, Side::Right)?;
        if sums_are_injective(&e, &p) {
            return Ok(renumber_partition(&TemporalPartition::new(p.into_entries())));
        }
    }
    Err(Error::Unsupported(format!(
        "no collision-free class labelling found in {MAX_ATTEMPTS} attempts"
    )))
}

fn draw_labels(n: usize, attempt: u32, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if attempt == 0 {
        let mut labels: Vec<u64> = (1..=n as u64).collect();
        labels.shuffle(rng);
        return labels;
    }
    let cap = (LABEL_LIMIT / n.max(1) as u64).max(n as u64);
    let range = (n as u64)
        .saturating_mul(1u64 << (2 * attempt).min(62))
        .min(cap);
    index::sample(rng, range as usize, n)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect()
}

/// Whether each row sum identifies a single member set over the whole time
/// window.
fn sums_are_injective(e: &TemporalMatrix, p: &TemporalVector) -> bool {
    let n = e.rows();
    let mut owner: HashMap<u64, Vec<usize>> = HashMap::new();
    for u in 0..n {
        let mut cuts: Vec<Time> = (0..n)
            .flat_map(|j| e.get(u, j).iter().flat_map(|t| [t.start, t.finish]))
            .collect();
        cuts.sort_unstable();
        cuts.dedup();
        for w in cuts.windows(2) {
            let t = w[0];
            let members: Vec<usize> = (0..n).filter(|&j| e.get(u, j).value_at(t).is_some()).collect();
            if members.is_empty() {
                continue;
            }
            let Some(Value::Real(sum)) = p.get(u).value_at(t) else {
                return false;
            };
            match owner.entry(sum.to_bits()) {
                Entry::Occupied(o) if *o.get() != members => return false,
                Entry::Occupied(_) => {}
                Entry::Vacant(slot) => {
                    slot.insert(members);
                }
            }
        }
    }
    true
}

fn label_key(v: &Value) -> (u8, u64, u64) {
    match *v {
        Value::Real(x) => (0, x.to_bits(), 0),
        Value::Bool(b) => (1, b as u64, 0),
        Value::Geo(g) => (
            2,
            match g.dist {
                crate::semiring::Hops::Finite(d) => d,
                crate::semiring::Hops::Unreachable => u64::MAX,
            },
            g.count,
        ),
    }
}

/// Relabels classes `1, 2, ...` in order of first appearance, scanning nodes
/// in order and each node's triples in time order.
pub fn renumber_partition(p: &TemporalPartition) -> TemporalPartition {
    let mut seen: HashMap<(u8, u64, u64), f64> = HashMap::new();
    let classes = p
        .iter()
        .map(|a| {
            let triples = a
                .iter()
                .map(|t| {
                    let next = seen.len() as f64 + 1.0;
                    let label = *seen.entry(label_key(&t.value)).or_insert(next);
                    Triple::new(t.start, t.finish, Value::Real(label))
                })
                .collect();
            TemporalQuantity::new(triples).expect("relabelling keeps the triple order")
        })
        .collect();
    TemporalPartition::new(classes)
}
