use super::OracleError;
use crate::graph::{Graph, VertexSet};

pub const BRUTE_FORCE_PAIR_MAX_N: usize = 20;

/// Anti-adjacent disjoint pair maximising `min(|A|, |B|)`.
///
/// Enumerates every nonempty `A`; the best partner of a fixed `A` is all of
/// `V ∖ N[A]`, so maximising over `A` is exhaustive. The first optimum in
/// increasing bitmask order is returned.
pub fn max_anti_pair_bruteforce(g: &Graph) -> Result<Option<(VertexSet, VertexSet)>, OracleError> {
    let n = g.n();
    if n > BRUTE_FORCE_PAIR_MAX_N {
        return Err(OracleError::TooLarge { n, max: BRUTE_FORCE_PAIR_MAX_N });
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).iter().fold(1u32 << v, |m, &u| m | 1 << u))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<(u32, u32, u32)> = None;
    for a in 1..=full {
        let mut covered = 0u32;
        let mut rest = a;
        while rest != 0 {
            covered |= closed[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        let b = full & !covered;
        if b == 0 {
            continue;
        }
        let score = a.count_ones().min(b.count_ones());
        if best.is_none_or(|(s, _, _)| score > s) {
            best = Some((score, a, b));
        }
    }
    let to_set = |mask: u32| (0..n).filter(|&v| mask >> v & 1 == 1).collect::<VertexSet>();
    Ok(best.map(|(_, a, b)| (to_set(a), to_set(b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (a, b) = max_anti_pair_bruteforce(&g).unwrap().unwrap();
        assert_eq!(a.len().min(b.len()), 2);
        assert!(g.anti_adjacent(&a, &b));
    }

    #[test]
    fn complete_graph_has_none() {
        assert_eq!(max_anti_pair_bruteforce(&Graph::complete(5)).unwrap(), None);
    }

    #[test]
    fn edgeless_balanced() {
        let (a, b) = max_anti_pair_bruteforce(&Graph::empty(6)).unwrap().unwrap();
        assert_eq!(a.len().min(b.len()), 3);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(max_anti_pair_bruteforce(&Graph::empty(21)), Err(OracleError::TooLarge { .. })));
    }
}
