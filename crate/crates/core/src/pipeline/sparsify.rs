use super::Polarity;
use crate::graph::{Graph, VertexSet};
use crate::oracle::{find_induced_budgeted, Embedding, SearchOutcome};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// Hosts up to this size are also searched exhaustively for a clean subset.
pub const EXHAUSTIVE_MAX_N: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SparsifyResult {
    /// In the given polarity, the graph induced on `set` has maximum degree
    /// at most `ε'·|set|`.
    CleanSide { set: VertexSet, polarity: Polarity },
    /// Induced copy of the pattern in the given polarity of the host.
    Witness { embedding: Embedding, polarity: Polarity },
}

/// Best subset found when no clean side of the required size exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsifyFailure {
    pub best: VertexSet,
    pub polarity: Polarity,
    pub required: usize,
    /// Smallest `maxdeg − ε'|S|` seen over peeled sets of at least the required size.
    pub excess: Option<Rational>,
}

/// Looks for the pattern in both polarities, then for a large vertex set on
/// which one polarity has maximum degree at most `eps_degree` times its size.
///
/// `pattern_budget` bounds each of the two backtracking searches; zero skips
/// them. With `threads > 1` the two searches run concurrently.
pub fn sparsify(
    g0: &Graph,
    eps_degree: &Rational,
    pattern: &Graph,
    pattern_budget: u64,
    min_size: usize,
    threads: usize,
) -> Result<SparsifyResult, SparsifyFailure> {
    if pattern_budget > 0 {
        if let Some((embedding, polarity)) = search_both(g0, pattern, pattern_budget, threads) {
            return Ok(SparsifyResult::Witness { embedding, polarity });
        }
    }
    let bound = Bound::new(eps_degree);
    let mut best: Option<(VertexSet, Polarity)> = None;
    let mut consider = |cand: Option<(VertexSet, Polarity)>| {
        if let Some((set, pol)) = cand {
            if best.as_ref().is_none_or(|(b, _)| set.len() > b.len()) {
                best = Some((set, pol));
            }
        }
    };
    consider(peel(g0, &bound, Order::Balanced));
    consider(peel(g0, &bound, Order::MaxDegree));
    consider(peel(g0, &bound, Order::MinDegree));
    if g0.n() <= EXHAUSTIVE_MAX_N {
        consider(exhaustive(g0, &bound));
    }
    let (set, polarity) = best.unwrap_or((VertexSet::new(), Polarity::Original));
    if set.len() >= min_size && !set.is_empty() && bound.holds(g0, &set, polarity) {
        return Ok(SparsifyResult::CleanSide { set, polarity });
    }
    Err(SparsifyFailure { best: set, polarity, required: min_size, excess: smallest_excess(g0, eps_degree, min_size) })
}

fn search_both(g0: &Graph, pattern: &Graph, budget: u64, threads: usize) -> Option<(Embedding, Polarity)> {
    let co_pattern = pattern.complement();
    let (original, complemented) = if threads > 1 {
        std::thread::scope(|s| {
            let handle = s.spawn(|| find_induced_budgeted(g0, &co_pattern, budget));
            let original = find_induced_budgeted(g0, pattern, budget);
            (original, handle.join().unwrap_or(SearchOutcome::BudgetExhausted))
        })
    } else {
        (find_induced_budgeted(g0, pattern, budget), find_induced_budgeted(g0, &co_pattern, budget))
    };
    match (original, complemented) {
        (SearchOutcome::Found(e), _) => Some((e, Polarity::Original)),
        (_, SearchOutcome::Found(e)) => Some((e, Polarity::Complemented)),
        _ => None,
    }
}

// Exact test `deg ≤ p/q · s`, i.e. `deg·q ≤ p·s`.
struct Bound {
    p: BigInt,
    q: BigInt,
}

impl Bound {
    fn new(r: &Rational) -> Self {
        Bound { p: r.numer().clone(), q: r.denom().clone() }
    }

    fn ok(&self, deg: usize, size: usize) -> bool {
        BigInt::from(deg) * &self.q <= &self.p * BigInt::from(size)
    }

    fn holds(&self, g: &Graph, set: &VertexSet, polarity: Polarity) -> bool {
        let s = set.len();
        set.iter().all(|v| {
            let deg = g.degree_into(v, set);
            let deg = match polarity {
                Polarity::Original => deg,
                Polarity::Complemented => s - 1 - deg,
            };
            self.ok(deg, s)
        })
    }
}

#[derive(Clone, Copy)]
enum Order {
    /// Remove the vertex maximising `min(degree, co-degree)`.
    Balanced,
    MaxDegree,
    MinDegree,
}

// Removes vertices one at a time and returns the first (largest) remaining
// set that is clean in some polarity the order tracks.
fn peel(g: &Graph, bound: &Bound, order: Order) -> Option<(VertexSet, Polarity)> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut size = n;
    while size > 0 {
        let (lo, hi) = (queue.first()?.0, queue.last()?.0);
        let original = bound.ok(hi, size);
        let complemented = bound.ok(size - 1 - lo, size);
        let hit = match order {
            Order::Balanced if original => Some(Polarity::Original),
            Order::Balanced if complemented => Some(Polarity::Complemented),
            Order::MaxDegree if original => Some(Polarity::Original),
            Order::MinDegree if complemented => Some(Polarity::Complemented),
            _ => None,
        };
        if let Some(pol) = hit {
            return Some(((0..n).filter(|&v| alive[v]).collect(), pol));
        }
        let &(_, victim) = match order {
            Order::MaxDegree => queue.last()?,
            Order::MinDegree => queue.first()?,
            Order::Balanced => {
                let mid = (size - 1) / 2;
                let below = queue.range(..(mid + 1, 0)).next_back();
                let above = queue.range((mid + 1, 0)..).next();
                let key = |e: &&(usize, usize)| e.0.min(size - 1 - e.0);
                match (below, above) {
                    (Some(b), Some(a)) if key(&a) > key(&b) => a,
                    (Some(b), _) => b,
                    (None, a) => a?,
                }
            }
        };
        queue.remove(&(deg[victim], victim));
        alive[victim] = false;
        size -= 1;
        for &u in g.neighbours(victim) {
            if alive[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    None
}

fn exhaustive(g: &Graph, bound: &Bound) -> Option<(VertexSet, Polarity)> {
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|v| g.neighbours(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let mut best: Option<(u32, Polarity)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|(b, _)| b.count_ones() as usize >= size) {
            continue;
        }
        let degs = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| (adj[v] & mask).count_ones() as usize);
        let (mut lo, mut hi) = (usize::MAX, 0);
        for d in degs {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if bound.ok(hi, size) {
            best = Some((mask, Polarity::Original));
        } else if bound.ok(size - 1 - lo, size) {
            best = Some((mask, Polarity::Complemented));
        }
    }
    best.map(|(mask, pol)| ((0..n).filter(|&v| mask >> v & 1 == 1).collect(), pol))
}

fn smallest_excess(g: &Graph, eps: &Rational, min_size: usize) -> Option<Rational> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut best: Option<Rational> = None;
    for size in (min_size.max(1)..=n).rev() {
        let (lo, hi) = (queue.first()?.0, queue.last()?.0);
        let worst = hi.min(size - 1 - lo);
        let excess = rational::int(worst) - eps * rational::int(size);
        if best.as_ref().is_none_or(|b| excess < *b) {
            best = Some(excess);
        }
        let &(_, victim) = queue.last()?;
        queue.remove(&(deg[victim], victim));
        alive[victim] = false;
        for &u in g.neighbours(victim) {
            if alive[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    best
}
