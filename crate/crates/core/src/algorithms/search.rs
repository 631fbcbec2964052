use super::{fern_to_junior, AlgoError, Outcome};
use crate::graph::{balanced_split, components, largest_component, ColouredGraph, VertexSet};
use crate::oracle::Certificate;
use crate::rational::{self, Rational};
use crate::structures::{grows_on, is_colour_compatible, validate_fern, Bud, Fern, JuniorCaterpillar};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

/// Colour count and bud parameter for one recursion level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelParams {
    pub classes: usize,
    #[serde(with = "rational")]
    pub alpha: Rational,
}

/// Snapshot of the iterative procedure at one recursion level after `k` steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchState {
    pub level: usize,
    pub k: usize,
    #[serde(with = "rational")]
    pub alpha: Rational,
    /// Active class indices, ascending.
    pub active: Vec<usize>,
    pub working: BTreeMap<usize, VertexSet>,
    /// Ferns growing on each active working set.
    pub ferns: BTreeMap<usize, Vec<Fern>>,
}

impl SearchState {
    fn initial(cg: &ColouredGraph, level: usize, alpha: Rational) -> Self {
        let active: Vec<usize> = (0..cg.class_count()).collect();
        SearchState {
            level,
            k: 0,
            alpha,
            working: active.iter().map(|&i| (i, cg.class(i).clone())).collect(),
            ferns: active.iter().map(|&i| (i, Vec::new())).collect(),
            active,
        }
    }

    pub fn family(&self, i: usize) -> &[Fern] {
        self.ferns.get(&i).map_or(&[], Vec::as_slice)
    }

    pub fn bud_count(&self) -> usize {
        self.ferns.values().flatten().map(Fern::len).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }

    fn should_stop(&self) -> bool {
        let arity = self.level + 1;
        self.active.len() <= 1 || self.active.iter().all(|&i| (1..arity).contains(&self.family(i).len()))
    }

    /// Rechecks the six maintained properties and `|I^k| = ℓ0 − k`, naming
    /// the first one that fails.
    pub fn check(&self, cg: &ColouredGraph) -> Result<(), String> {
        let g = cg.graph();
        if self.active.len() + self.k != cg.class_count() {
            return Err(format!("|I^k| = {} but ℓ0 − k = {}", self.active.len(), cg.class_count() as isize - self.k as isize));
        }
        let pow = num_traits::pow(BigInt::from(3), self.k);
        for &i in &self.active {
            if BigInt::from(self.working[&i].len()) * &pow < BigInt::from(cg.class(i).len()) {
                return Err(format!("P1: |W_{i}| = {} is below 3^-{} |V_{i}|", self.working[&i].len(), self.k));
            }
        }
        for (&i, family) in &self.ferns {
            for (x, fern) in family.iter().enumerate() {
                validate_fern(cg, fern, &self.alpha).map_err(|v| format!("P2: fern {x} of family {i}: {v}"))?;
                if !grows_on(cg, fern, &self.working[&i]) {
                    return Err(format!("P2: fern {x} of family {i} does not grow on W_{i}"));
                }
            }
        }
        if self.bud_count() != self.k {
            return Err(format!("P3: {} buds after {} steps", self.bud_count(), self.k));
        }
        let buds = self.ferns.values().flatten().flat_map(|f| f.nodes.iter().map(|n| &n.bud.vertices));
        if !is_colour_compatible(buds.chain(self.working.values()), cg) {
            return Err("P3: buds and working sets are not colour-compatible".into());
        }
        let sets: Vec<(usize, VertexSet)> =
            self.ferns.iter().flat_map(|(&i, fam)| fam.iter().map(move |f| (i, f.vertex_set()))).collect();
        for &i in &self.active {
            if let Some((j, _)) = sets.iter().find(|(j, vs)| *j != i && !g.anti_adjacent(&self.working[&i], vs)) {
                return Err(format!("P4: W_{i} touches a fern of family {j}"));
            }
        }
        for (x, (_, a)) in sets.iter().enumerate() {
            if sets[x + 1..].iter().any(|(_, b)| !g.anti_adjacent(a, b)) {
                return Err("P5: two ferns are not anti-adjacent".into());
            }
        }
        let arity = self.level + 1;
        let full = self.active.iter().filter(|&&i| self.family(i).len() == arity).count();
        if self.active.iter().any(|&i| self.family(i).len() > arity) || full > 1 {
            return Err(format!("P6: family sizes exceed {arity} or {full} families are full"));
        }
        Ok(())
    }
}

/// Searches an `(α, h, d)` junior caterpillar in `cg`, recursing on `d`.
///
/// `levels[d']` gives the colour count and bud parameter for level `d'`.
/// `observer` sees the coloured graph of the current level and each state
/// snapshot, the initial one included.
pub fn junior_search(
    cg: &ColouredGraph,
    h: usize,
    d: usize,
    levels: &[LevelParams],
    observer: &mut dyn FnMut(&ColouredGraph, &SearchState),
) -> Result<Outcome<JuniorCaterpillar>, AlgoError> {
    if h == 0 {
        return Err(AlgoError::Precondition("h must be positive".into()));
    }
    let Some(params) = levels.get(d) else {
        return Err(AlgoError::Precondition(format!("no parameters for level {d}")));
    };
    if cg.class_count() == 0 || cg.classes().iter().any(VertexSet::is_empty) {
        return Err(AlgoError::Precondition("colour classes must be nonempty".into()));
    }

    let mut state = SearchState::initial(cg, d, params.alpha.clone());
    observer(cg, &state);
    while !state.should_stop() {
        if let Some(cert) = step(cg, &mut state)? {
            return Ok(Outcome::Pair(cert));
        }
        observer(cg, &state);
    }

    if let Some(fern) = state.ferns.values().flatten().find(|f| f.height() >= h) {
        return fern_to_junior(cg, fern, h, d).map(Outcome::Found);
    }
    if d == 0 {
        return Err(AlgoError::TooFewClasses { needed: h + 1, available: cg.class_count() });
    }
    let needed = levels[d - 1].classes;
    if state.active.len() < needed {
        return Err(AlgoError::TooFewClasses { needed, available: state.active.len() });
    }
    let chosen = &state.active[..needed];
    let sub = cg
        .recoloured(chosen.iter().map(|i| state.working[i].clone()).collect())
        .map_err(|e| AlgoError::Internal(e.to_string()))?;
    let mut jc = match junior_search(&sub, h, d - 1, levels, observer)? {
        Outcome::Pair(cert) => return Ok(Outcome::Pair(cert)),
        Outcome::Found(jc) => jc,
    };
    for (row, &v) in jc.buds.iter_mut().zip(&jc.path) {
        let class = sub.colour_of(v).map(|c| chosen[c]);
        let root = class.and_then(|a| state.family(a).first()).map(|f| f.root().clone());
        row.push(root.ok_or_else(|| AlgoError::Internal(format!("no fern for path vertex {v}")))?);
    }
    Ok(Outcome::Found(jc))
}

// One step of the procedure; `Some` when a pair is harvested instead.
fn step(cg: &ColouredGraph, state: &mut SearchState) -> Result<Option<Certificate>, AlgoError> {
    let g = cg.graph();
    let n = g.n();
    let arity = state.level + 1;
    let a = state
        .active
        .iter()
        .copied()
        .find(|&i| state.family(i).len() == arity)
        .or_else(|| state.active.iter().copied().find(|&i| state.family(i).is_empty()))
        .ok_or_else(|| AlgoError::Internal("no class to expand".into()))?;
    let wa = &state.working[&a];

    let a0 = largest_component(g, wa);
    if 2 * a0.len() <= wa.len() {
        let (x, y) = balanced_split(&components(g, wa))
            .ok_or_else(|| AlgoError::Internal(format!("W_{a} is empty")))?;
        return Ok(Some(Certificate::anti_pair(x, y, n)));
    }
    let n_a0 = g.neighbourhood(&a0);
    for &i in state.active.iter().filter(|&&i| i != a) {
        let rest = state.working[&i].difference(&n_a0);
        if 2 * rest.len() > state.working[&i].len() {
            return Ok(Some(Certificate::anti_pair(a0, rest, n)));
        }
    }

    let mut owner = vec![usize::MAX; n];
    for &i in state.active.iter().filter(|&&i| i != a) {
        for v in &state.working[&i] {
            owner[v] = i;
        }
    }
    let mut in_a0 = vec![false; n];
    for v in &a0 {
        in_a0[v] = true;
    }
    let mut hits = vec![0usize; cg.class_count()];
    let mut marked = vec![false; n];
    let mut grown = Vec::new();
    let mut queue = VecDeque::new();
    if let Some(s) = a0.first() {
        in_a0[s] = false;
        queue.push_back(s);
    }
    let mut b = None;
    while let Some(x) = queue.pop_front() {
        grown.push(x);
        for &u in g.neighbours(x) {
            if in_a0[u] {
                in_a0[u] = false;
                queue.push_back(u);
            }
            if owner[u] != usize::MAX && !marked[u] {
                marked[u] = true;
                hits[owner[u]] += 1;
            }
        }
        b = state.active.iter().copied().find(|&i| i != a && 3 * hits[i] >= state.working[&i].len());
        if b.is_some() {
            break;
        }
    }
    let b = b.ok_or_else(|| AlgoError::Internal("growth exhausted A_0 without a target class".into()))?;
    let grown: VertexSet = grown.into_iter().collect();

    state.active.retain(|&i| i != a);
    state.working.remove(&a);
    for (&i, w) in state.working.iter_mut() {
        let keep = |v: &usize| marked[*v] == (i == b);
        *w = w.iter().filter(keep).collect();
    }
    let children = state.ferns.remove(&a).unwrap_or_default();
    let fern = Fern::graft(arity, Bud { vertices: grown, witness_colour: b }, children);
    state.ferns.entry(b).or_default().push(fern);
    state.k += 1;

    let pow = num_traits::pow(BigInt::from(3), state.k);
    for &i in &state.active {
        if BigInt::from(state.working[&i].len()) * &pow < BigInt::from(cg.class(i).len()) {
            return Err(AlgoError::NotClean(format!(
                "W_{i} shrank to {} of {} at step {}; some vertex has too many neighbours in class {i}",
                state.working[&i].len(),
                cg.class(i).len(),
                state.k
            )));
        }
    }
    Ok(None)
}
