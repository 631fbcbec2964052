use super::{Embedding, OracleError};
use crate::graph::Graph;

/// Host size cap for [`find_induced_naive`].
pub const NAIVE_SEARCH_MAX_HOST: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Embedding),
    Absent,
    /// The node budget ran out before the search space was exhausted.
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Embedding> {
        match self {
            SearchOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// Some induced embedding of `pattern` into `host`, or `None` when there is none.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    find_induced_budgeted(host, pattern, u64::MAX).found()
}

/// Backtracking search that gives up after `budget` search nodes.
///
/// Pattern vertices are placed highest degree first, then always preferring a
/// vertex with the most already-placed neighbours. Candidates come from the
/// host neighbourhood of a placed neighbour when there is one, in ascending
/// id order, and must match the pattern's degree lower bound and its
/// adjacency to every placed vertex.
pub fn find_induced_budgeted(host: &Graph, pattern: &Graph, budget: u64) -> SearchOutcome {
    let k = pattern.n();
    if k == 0 {
        return SearchOutcome::Found(Embedding::new(Vec::new()));
    }
    if k > host.n() {
        return SearchOutcome::Absent;
    }
    let plan = Plan::new(pattern);
    let mut search = Search {
        host,
        pattern,
        plan: &plan,
        map: vec![usize::MAX; k],
        used: vec![false; host.n()],
        budget,
    };
    match search.extend(0) {
        Step::Found => SearchOutcome::Found(Embedding::new(search.map)),
        Step::Exhausted => SearchOutcome::Absent,
        Step::OutOfBudget => SearchOutcome::BudgetExhausted,
    }
}

struct Plan {
    order: Vec<usize>,
    // For position i: earlier pattern vertices and whether each is adjacent to order[i].
    constraints: Vec<Vec<(usize, bool)>>,
    anchor: Vec<Option<usize>>,
}

impl Plan {
    fn new(pattern: &Graph) -> Self {
        let k = pattern.n();
        let mut placed = vec![false; k];
        let mut placed_nbrs = vec![0usize; k];
        let mut order = Vec::with_capacity(k);
        for _ in 0..k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (placed_nbrs[v], pattern.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex remains");
            placed[next] = true;
            for &u in pattern.neighbours(next) {
                placed_nbrs[u] += 1;
            }
            order.push(next);
        }
        let constraints = (0..k)
            .map(|i| order[..i].iter().map(|&q| (q, pattern.has_edge(order[i], q))).collect())
            .collect();
        let anchor = (0..k)
            .map(|i| order[..i].iter().copied().find(|&q| pattern.has_edge(order[i], q)))
            .collect();
        Plan { order, constraints, anchor }
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    plan: &'a Plan,
    map: Vec<usize>,
    used: Vec<bool>,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize) -> Step {
        if pos == self.plan.order.len() {
            return Step::Found;
        }
        let p = self.plan.order[pos];
        let need = self.pattern.degree(p);
        let candidates: Vec<usize> = match self.plan.anchor[pos] {
            Some(q) => self.host.neighbours(self.map[q]).to_vec(),
            None => (0..self.host.n()).collect(),
        };
        for c in candidates {
            if self.used[c] || self.host.degree(c) < need {
                continue;
            }
            let consistent = self.plan.constraints[pos]
                .iter()
                .all(|&(q, adjacent)| self.host.has_edge(c, self.map[q]) == adjacent);
            if !consistent {
                continue;
            }
            if self.budget == 0 {
                return Step::OutOfBudget;
            }
            self.budget -= 1;
            self.map[p] = c;
            self.used[c] = true;
            match self.extend(pos + 1) {
                Step::Exhausted => {}
                other => return other,
            }
            self.used[c] = false;
            self.map[p] = usize::MAX;
        }
        Step::Exhausted
    }
}

/// Exhaustive enumeration of injective maps in lexicographic order; the
/// reference answer for [`find_induced`]. Hosts above
/// [`NAIVE_SEARCH_MAX_HOST`] vertices are refused.
pub fn find_induced_naive(host: &Graph, pattern: &Graph) -> Result<Option<Embedding>, OracleError> {
    if host.n() > NAIVE_SEARCH_MAX_HOST {
        return Err(OracleError::TooLarge { n: host.n(), max: NAIVE_SEARCH_MAX_HOST });
    }
    let k = pattern.n();
    if k > host.n() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(k);
    let mut used = vec![false; host.n()];
    Ok(naive_rec(host, pattern, &mut map, &mut used).then(|| Embedding::new(map)))
}

fn naive_rec(host: &Graph, pattern: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if map.len() == pattern.n() {
        return (0..pattern.n())
            .all(|u| (u + 1..pattern.n()).all(|v| pattern.has_edge(u, v) == host.has_edge(map[u], map[v])));
    }
    for c in 0..host.n() {
        if used[c] {
            continue;
        }
        used[c] = true;
        map.push(c);
        if naive_rec(host, pattern, map, used) {
            return true;
        }
        map.pop();
        used[c] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_caterpillar, CaterpillarShape};

    #[test]
    fn c5_contains_p4_only() {
        let c5 = Graph::cycle(5);
        let e = find_induced(&c5, &Graph::path(4)).expect("P4 in C5");
        assert!(e.check_induced(&c5, &Graph::path(4)).is_ok());
        assert!(find_induced(&c5, &Graph::complete(3)).is_none());
        assert!(find_induced(&c5, &Graph::path(5)).is_none());
        assert!(find_induced_naive(&c5, &Graph::path(4)).unwrap().is_some());
        assert!(find_induced_naive(&c5, &Graph::path(5)).unwrap().is_none());
    }

    #[test]
    fn naive_trivia() {
        assert!(find_induced_naive(&Graph::empty(3), &Graph::empty(1)).unwrap().is_some());
        assert!(find_induced_naive(&Graph::empty(3), &Graph::complete(2)).unwrap().is_none());
        assert_eq!(
            find_induced_naive(&Graph::empty(11), &Graph::empty(1)),
            Err(OracleError::TooLarge { n: 11, max: 10 })
        );
    }

    #[test]
    fn finds_template_inside_larger_template() {
        let small = make_caterpillar(CaterpillarShape::new(2, 1, 2).unwrap()).unwrap().graph;
        let big = make_caterpillar(CaterpillarShape::new(3, 2, 3).unwrap()).unwrap().graph;
        let e = find_induced(&big, &small).unwrap();
        assert!(e.check_induced(&big, &small).is_ok());
    }

    #[test]
    fn budget_is_respected() {
        let host = Graph::complete(30).disjoint_union(&Graph::complete(30));
        assert_eq!(find_induced_budgeted(&host, &Graph::path(4), 1000), SearchOutcome::BudgetExhausted);
        assert_eq!(find_induced_budgeted(&Graph::cycle(6), &Graph::complete(3), 1000), SearchOutcome::Absent);
    }

    #[test]
    fn deterministic() {
        let g = Graph::cycle(9);
        assert_eq!(find_induced(&g, &Graph::path(5)), find_induced(&g, &Graph::path(5)));
    }
}
