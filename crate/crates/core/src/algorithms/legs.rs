use super::{path_grow, AlgoError, Outcome, PathGrowResult};
use crate::graph::{make_caterpillar, CaterpillarShape, Graph, VertexSet};
use crate::oracle::{Certificate, Embedding};
use crate::rational::{self, Rational};
use crate::structures::JuniorCaterpillar;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::VecDeque;

/// Grows a connected `B ⊆ pool`, one vertex at a time in breadth-first order
/// from the smallest neighbour of `v` in `pool`, until `|N[B]| ≥ threshold`.
///
/// As soon as `|B| ≥ pair_size` the pair `(B, V ∖ N[B])` is returned instead
/// (when the second side is nonempty).
pub fn grow_bud(
    g: &Graph,
    pool: &VertexSet,
    v: usize,
    threshold: &Rational,
    pair_size: &Rational,
) -> Result<Outcome<VertexSet>, AlgoError> {
    let n = g.n();
    let Some(start) = g.neighbours(v).iter().copied().find(|&u| pool.contains(u)) else {
        return Err(AlgoError::Precondition(format!("vertex {v} has no neighbour in the pool")));
    };
    let mut in_pool = vec![false; n];
    for u in pool {
        in_pool[u] = true;
    }
    let mut seen = vec![false; n];
    let mut covered = vec![false; n];
    let mut covered_count = 0usize;
    let mut bud = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(x) = queue.pop_front() {
        bud.push(x);
        for &u in std::iter::once(&x).chain(g.neighbours(x)) {
            if !covered[u] {
                covered[u] = true;
                covered_count += 1;
            }
            if in_pool[u] && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
        if rational::at_least(bud.len(), pair_size) && covered_count < n {
            let b: VertexSet = bud.into_iter().collect();
            let rest: VertexSet = (0..n).filter(|&u| !covered[u]).collect();
            return Ok(Outcome::Pair(Certificate::anti_pair(b, rest, n)));
        }
        if rational::at_least(covered_count, threshold) {
            return Ok(Outcome::Found(bud.into_iter().collect()));
        }
    }
    Err(AlgoError::Infeasible(format!(
        "component of the pool reached from {v} has closed neighbourhood {covered_count} < {}",
        rational::format(threshold)
    )))
}

/// One leg-attachment step, kept so the bounds can be recounted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudRecord {
    pub k: usize,
    pub root: usize,
    pub bud: VertexSet,
    pub c: VertexSet,
    pub d: VertexSet,
    /// Leg vertices in order away from `root`.
    pub leg: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegsFound {
    pub embedding: Embedding,
    pub records: Vec<BudRecord>,
}

/// Extends a junior caterpillar with `d` legs of `t` vertices at each path
/// vertex, giving an induced copy of the template caterpillar of `shape`.
pub fn attach_legs(
    g: &Graph,
    jc: &JuniorCaterpillar,
    shape: CaterpillarShape,
    eps: &Rational,
) -> Result<Outcome<LegsFound>, AlgoError> {
    shape.validate().map_err(|e| AlgoError::Precondition(e.to_string()))?;
    let n = g.n();
    let (h, d, t) = (shape.h, shape.d, shape.t);
    if jc.path.len() != h || jc.buds.len() != h || jc.buds.iter().any(|row| row.len() != d) {
        return Err(AlgoError::Precondition(format!("junior caterpillar does not match shape {shape}")));
    }
    if jc.vertex_set().last().is_some_and(|v| v >= n) {
        return Err(AlgoError::Precondition("junior caterpillar leaves the graph".into()));
    }
    let eps_n = eps * rational::int(n);
    if rational::int(g.max_degree()) > eps_n {
        return Err(AlgoError::Precondition(format!("maximum degree {} exceeds εn", g.max_degree())));
    }
    let template = make_caterpillar(shape).map_err(|e| AlgoError::Precondition(e.to_string()))?;
    let leg_count = h * d;
    if leg_count == 0 || t == 0 {
        let embedding = Embedding::new(jc.path.clone());
        embedding.check_induced(g, &template.graph).map_err(AlgoError::Internal)?;
        return Ok(Outcome::Found(LegsFound { embedding, records: Vec::new() }));
    }

    let hdt = h * d * t;
    let scaled = |factor: BigInt| Rational::from_integer(factor) * &eps_n;
    let spine: VertexSet = jc.path.iter().copied().collect();
    let mut covered = g.closed_neighbourhood(&spine);
    let mut records = Vec::with_capacity(leg_count);
    for k in 1..=leg_count {
        let (i, j) = ((k - 1) / d, (k - 1) % d);
        let root = jc.path[i];
        let pool = &jc.buds[i][j].vertices;
        let threshold = scaled(BigInt::from(10 * hdt) << k);
        let bud = match grow_bud(g, pool, root, &threshold, &eps_n) {
            Ok(Outcome::Found(b)) => b,
            Ok(Outcome::Pair(cert)) => return Ok(Outcome::Pair(cert)),
            Err(AlgoError::Infeasible(why)) => return fallback(g, pool).ok_or(AlgoError::Infeasible(why)),
            Err(e) => return Err(e),
        };
        let c = g.neighbourhood(&bud).difference(&covered);
        if !rational::at_least(c.len(), &scaled(BigInt::from(9 * hdt))) {
            return fallback(g, &bud).ok_or_else(|| AlgoError::Infeasible(format!("|C^{k}| = {} too small", c.len())));
        }
        covered = covered.union(&g.closed_neighbourhood(&bud));
        records.push(BudRecord { k, root, bud, c, d: VertexSet::new(), leg: Vec::new() });
    }

    let delta = rational::floor_usize(&eps_n).max(1);
    let mut blocked = VertexSet::new();
    for rec in records.iter_mut().rev() {
        let mut dk = rec.bud.union(&rec.c).difference(&blocked);
        dk.insert(rec.root);
        if !rational::at_least(dk.len(), &scaled(BigInt::from(8 * hdt))) || dk.len() <= (t + 3) * delta {
            return fallback(g, &rec.bud)
                .ok_or_else(|| AlgoError::Infeasible(format!("|D^{}| = {} too small", rec.k, dk.len())));
        }
        let (sub, back) = g.induced(&dk);
        let root = dk.as_slice().binary_search(&rec.root).unwrap_or(0);
        match path_grow(&sub, root, t + 1, delta)? {
            PathGrowResult::Pair(a, b) => {
                let lift = |s: &VertexSet| s.iter().map(|x| back[x]).collect::<VertexSet>();
                return Ok(Outcome::Pair(Certificate::anti_pair(lift(&a), lift(&b), n)));
            }
            PathGrowResult::Path(p) => rec.leg = p[1..].iter().map(|&x| back[x]).collect(),
        }
        let leg: VertexSet = rec.leg.iter().copied().collect();
        blocked = blocked.union(&g.closed_neighbourhood(&leg));
        rec.d = dk;
    }

    let mut map = jc.path.clone();
    for rec in &records {
        map.extend_from_slice(&rec.leg);
    }
    let embedding = Embedding::new(map);
    embedding.check_induced(g, &template.graph).map_err(AlgoError::Internal)?;
    Ok(Outcome::Found(LegsFound { embedding, records }))
}

fn fallback(g: &Graph, b: &VertexSet) -> Option<Outcome<LegsFound>> {
    let rest = g.vertices().difference(&g.closed_neighbourhood(b));
    (!rest.is_empty()).then(|| Outcome::Pair(Certificate::anti_pair(b.clone(), rest, g.n())))
}
