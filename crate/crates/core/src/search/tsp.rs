// Classic min-cost tour by depth-first branch and bound, kept as the
// contrast case: partial tour costs bound the full cost, so whole subtrees
// are discarded without being enumerated.
//
// Every rotation of a closed route has the same cost, so the search fixes
// vertex 0 as the start. Children are visited in index order and only a
// strictly cheaper tour replaces the incumbent, so the reported tour is the
// lexicographically first optimal one starting at vertex 0.

use super::{SearchConfig, SearchError};
use crate::instance::Instance;
use crate::route::{Route, MAX_ENUMERABLE_V};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspResult {
    pub best_tour: Route,
    pub best_cost: u64,
    pub nodes_expanded: u64,
    pub nodes_pruned: u64,
}

struct Search<'a> {
    instance: &'a Instance,
    v: usize,
    /// Cheapest edge leaving each vertex.
    min_out: Vec<u64>,
    best_cost: u64,
    best_order: Vec<usize>,
    expanded: u64,
    pruned: u64,
}

impl Search<'_> {
    fn expand(&mut self, path: &mut Vec<usize>, visited: &mut [bool], acc: u64, remaining_out: u64) {
        self.expanded += 1;
        let last = *path.last().unwrap();
        if path.len() == self.v {
            let total = acc + self.instance.cost(last, path[0]);
            if total < self.best_cost {
                self.best_cost = total;
                self.best_order.clone_from(path);
            }
            return;
        }
        // `remaining_out` covers every vertex that still has to be left,
        // `last` included.
        for next in 0..self.v {
            if visited[next] {
                continue;
            }
            let acc_next = acc + self.instance.cost(last, next);
            let rest = remaining_out - self.min_out[last];
            if acc_next + rest >= self.best_cost {
                self.pruned += 1;
                continue;
            }
            visited[next] = true;
            path.push(next);
            self.expand(path, visited, acc_next, rest);
            path.pop();
            visited[next] = false;
        }
    }
}

/// Exact minimum-cost closed route over all `V!` directed routes.
pub fn solve_tsp_branch_and_bound(instance: &Instance) -> Result<TspResult, SearchError> {
    let v = instance.v();
    let limit = SearchConfig::default().vertex_limit;
    if v > limit {
        return Err(SearchError::Capacity { v, limit });
    }
    let min_out: Vec<u64> =
        (0..v).map(|i| (0..v).filter(|&j| j != i).map(|j| instance.cost(i, j)).min().unwrap()).collect();
    let mut search =
        Search { instance, v, best_cost: u64::MAX, best_order: Vec::new(), expanded: 0, pruned: 0, min_out };
    let mut visited = vec![false; v];
    visited[0] = true;
    let remaining_out = search.min_out.iter().sum();
    search.expand(&mut vec![0], &mut visited, 0, remaining_out);

    Ok(TspResult {
        best_tour: Route::from_order(search.best_order)?,
        best_cost: search.best_cost,
        nodes_expanded: search.expanded,
        nodes_pruned: search.pruned,
    })
}

/// Minimum tour cost by scoring every one of the `V!` routes. Reference
/// answer for the branch-and-bound solver.
pub fn brute_force_tsp(instance: &Instance) -> Result<(Route, u64), SearchError> {
    let v = instance.v();
    if v > MAX_ENUMERABLE_V {
        return Err(SearchError::Capacity { v, limit: MAX_ENUMERABLE_V });
    }
    let mut best: Option<(u64, u64)> = None;
    crate::route::enumerate_routes(v)?.for_each_order(|rank, order| {
        let c = instance.tour_cost(order);
        if best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, rank));
        }
    });
    let (cost, rank) = best.unwrap();
    Ok((crate::route::rank_to_route(rank, v)?, cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_random_instance, make_example_instance};

    #[test]
    fn example_optimum() {
        let inst = make_example_instance();
        let r = solve_tsp_branch_and_bound(&inst).unwrap();
        assert_eq!(r.best_cost, 10);
        assert_eq!(inst.route_name(r.best_tour.order()), "ABCD");
        assert_eq!(inst.tour_cost(&[0, 1, 3, 2]), 15);
        assert_eq!(inst.tour_cost(r.best_tour.order()), r.best_cost);
    }

    #[test]
    fn equal_weights() {
        let v = 6;
        let costs = (0..v).map(|i| (0..v).map(|j| if i == j { 0 } else { 7 }).collect()).collect();
        let labels = (0..v).map(crate::instance::auto_label).collect();
        let inst = Instance::new(labels, costs, "sha1", &"f".repeat(40), false).unwrap();
        assert_eq!(solve_tsp_branch_and_bound(&inst).unwrap().best_cost, 42);
    }

    #[test]
    fn matches_brute_force_and_prunes() {
        for seed in 0..20 {
            let directed = seed % 2 == 0;
            let inst = generate_random_instance(3 + (seed as usize % 6), 1..=100, seed, directed).unwrap();
            let bb = solve_tsp_branch_and_bound(&inst).unwrap();
            let (_, cost) = brute_force_tsp(&inst).unwrap();
            assert_eq!(bb.best_cost, cost, "seed {seed}");
            if inst.v() >= 6 {
                assert!(bb.nodes_pruned > 0);
            }
        }
    }

    #[test]
    fn capacity() {
        let inst = generate_random_instance(14, 1..=9, 0, false).unwrap();
        assert!(matches!(solve_tsp_branch_and_bound(&inst), Err(SearchError::Capacity { .. })));
    }
}
