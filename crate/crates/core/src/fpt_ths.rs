//! Exact hitting sets of bounded size by enumerating connected candidate sets
//! inside bounded-radius balls of the simplex adjacency graph.

use crate::complex::{Chain, Complex, Graph};
use crate::error::{input, Result};
use crate::feasibility::{ThsRowChecker, ThsVerifier};
use crate::par;

/// Calls `visit` on every connected node set of size at most `k` that
/// contains `v` and uses only nodes marked in `allowed` (all nodes when
/// `None`). Each set is visited exactly once, in the order its members were
/// added; extensions try the lowest-index candidate first. Returning `false`
/// from `visit` stops the enumeration.
pub fn for_each_connected_set<F>(g: &Graph, v: usize, k: usize, allowed: Option<&[bool]>, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if k == 0 || allowed.is_some_and(|a| !a[v]) {
        return;
    }
    let mut banned = vec![false; g.node_count()];
    let mut set = vec![v];
    let ext: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&u| allowed.is_none_or(|a| a[u]))
        .collect();
    banned[v] = true;
    extend(g, k, allowed, &mut set, ext, &mut banned, &mut visit);
}

/// `banned` marks the current set, every candidate already branched on, and
/// everything excluded by an ancestor; `ext` is sorted.
fn extend<F>(
    g: &Graph,
    k: usize,
    allowed: Option<&[bool]>,
    set: &mut Vec<usize>,
    mut ext: Vec<usize>,
    banned: &mut [bool],
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if !visit(set) {
        return false;
    }
    if set.len() == k {
        return true;
    }
    let mut processed = Vec::new();
    let mut keep_going = true;
    while !ext.is_empty() {
        let u = ext.remove(0);
        let mut next = ext.clone();
        for &w in g.neighbors(u) {
            if !banned[w] && w != u && allowed.is_none_or(|a| a[w]) && ext.binary_search(&w).is_err() {
                if let Err(pos) = next.binary_search(&w) {
                    next.insert(pos, w);
                }
            }
        }
        banned[u] = true;
        processed.push(u);
        set.push(u);
        keep_going = extend(g, k, allowed, set, next, banned, visit);
        set.pop();
        if !keep_going {
            break;
        }
    }
    for u in processed {
        banned[u] = false;
    }
    keep_going
}

/// Every connected set of size at most `k` containing `v`, as sorted index lists.
pub fn enumerate_connected_sets(g: &Graph, v: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_connected_set(g, v, k, None, |s| {
        let mut s = s.to_vec();
        s.sort_unstable();
        out.push(s);
        true
    });
    out
}

/// How candidate sets are tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FeasibilityRoute {
    /// Homology basis of the complement checked against the boundary space.
    #[default]
    Colspace,
    /// Cycle restricted to the candidate rows.
    RestrictedRows,
}

#[derive(Clone, Debug)]
pub struct FptConfig {
    pub k: usize,
    pub parallel: bool,
    /// Collect every minimum solution, not only the first in index order.
    pub count_all: bool,
    pub route: FeasibilityRoute,
    /// Restricts candidates to the marked `r`-simplices.
    pub candidates: Option<Vec<bool>>,
}

impl FptConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            parallel: crate::parallel_available(),
            count_all: false,
            route: FeasibilityRoute::default(),
            candidates: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FptStats {
    /// Connected candidates enumerated at each center (all sizes up to `k`).
    pub per_center: Vec<u64>,
    pub candidates: u64,
    pub checked: u64,
    /// Maximum degree of the simplex adjacency graph.
    pub max_degree: usize,
    /// `binom(k + k * max_degree, k)`, the per-center enumeration bound.
    pub envelope: u128,
}

#[derive(Clone, Debug)]
pub struct FptOutcome {
    /// A minimum feasible set of size at most `k`, smallest in index order.
    pub solution: Option<Chain>,
    /// All minimum feasible sets when `count_all` is set.
    pub all_minimum: Vec<Chain>,
    pub stats: FptStats,
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Candidate sets for one center, grouped by size and sorted.
fn center_candidates(g: &Graph, center: usize, k: usize, allowed: Option<&[bool]>) -> Vec<Vec<Vec<usize>>> {
    let ball = g.ball(center, k);
    let mask: Vec<bool> = (0..g.node_count())
        .map(|u| ball[u] && u >= center && allowed.is_none_or(|a| a[u]))
        .collect();
    let mut by_size = vec![Vec::new(); k + 1];
    for_each_connected_set(g, center, k, Some(&mask), |s| {
        let mut s = s.to_vec();
        s.sort_unstable();
        by_size[s.len()].push(s);
        true
    });
    for level in &mut by_size {
        level.sort_unstable();
    }
    by_size
}

/// Minimum hitting set of size at most `config.k` for the non-bounding cycle `zeta`.
///
/// Every `r`-simplex is used as a ball center. A candidate set is enumerated
/// only at the center equal to its smallest index, so each connected set is
/// tested at most once. Levels are scanned by increasing size, and the first
/// level with a feasible set decides the answer.
pub fn solve_ths_fpt(k: &Complex, zeta: &Chain, config: &FptConfig) -> Result<FptOutcome> {
    if config.k == 0 {
        return input("the size bound must be at least 1");
    }
    let r = zeta.dim();
    let verifier = ThsVerifier::new(k, zeta)?;
    let rows = ThsRowChecker::new(k, zeta)?;
    let g = k.r_adjacency(r)?;
    if let Some(mask) = &config.candidates {
        if mask.len() != k.count(r) {
            return input("candidate mask has the wrong length");
        }
    }
    let allowed = config.candidates.as_deref();
    let n = k.count(r);
    let centers: Vec<usize> = (0..n).filter(|&c| allowed.is_none_or(|a| a[c])).collect();
    let groups: Vec<Vec<Vec<Vec<usize>>>> = par::map(&centers, config.parallel, |&c| {
        center_candidates(&g, c, config.k, allowed)
    });

    let mut stats = FptStats {
        per_center: vec![0; n],
        max_degree: g.max_degree(),
        envelope: binomial(config.k + config.k * g.max_degree(), config.k),
        ..FptStats::default()
    };
    for (&c, levels) in centers.iter().zip(&groups) {
        let count: usize = levels.iter().map(Vec::len).sum();
        stats.per_center[c] = count as u64;
        stats.candidates += count as u64;
    }

    let feasible = |s: &[usize]| -> Result<bool> {
        Ok(match config.route {
            FeasibilityRoute::Colspace => verifier.check(&Chain::from_indices(k, r, s)?)?.verdict,
            FeasibilityRoute::RestrictedRows => rows.is_feasible(s),
        })
    };

    for size in 1..=config.k {
        if config.count_all {
            let level: Vec<&Vec<usize>> = groups.iter().flat_map(|levels| levels[size].iter()).collect();
            let hits = par::map(&level, config.parallel, |s| feasible(s));
            stats.checked += level.len() as u64;
            let mut found: Vec<Vec<usize>> = Vec::new();
            for (s, hit) in level.into_iter().zip(hits) {
                if hit? {
                    found.push(s.clone());
                }
            }
            if !found.is_empty() {
                found.sort_unstable();
                let all: Vec<Chain> = found
                    .iter()
                    .map(|s| Chain::from_indices(k, r, s))
                    .collect::<Result<_>>()?;
                return Ok(FptOutcome {
                    solution: all.first().cloned(),
                    all_minimum: all,
                    stats,
                });
            }
            continue;
        }
        let firsts = par::map(&groups, config.parallel, |levels| {
            let mut checked = 0u64;
            for s in &levels[size] {
                checked += 1;
                match feasible(s) {
                    Ok(true) => return (checked, Some(Ok(s.clone()))),
                    Ok(false) => {}
                    Err(e) => return (checked, Some(Err(e))),
                }
            }
            (checked, None)
        });
        let mut best: Option<Vec<usize>> = None;
        for (checked, hit) in firsts {
            stats.checked += checked;
            if let Some(hit) = hit {
                let s = hit?;
                if best.as_ref().is_none_or(|b| s < *b) {
                    best = Some(s);
                }
            }
        }
        if let Some(s) = best {
            return Ok(FptOutcome {
                solution: Some(Chain::from_indices(k, r, &s)?),
                all_minimum: Vec::new(),
                stats,
            });
        }
    }
    Ok(FptOutcome {
        solution: None,
        all_minimum: Vec::new(),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges)
    }

    #[test]
    fn connected_set_examples() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(enumerate_connected_sets(&path, 0, 2), vec![vec![0], vec![0, 1]]);
        let triangle = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let mut sets = enumerate_connected_sets(&triangle, 0, 3);
        sets.sort();
        assert_eq!(sets, vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![0, 2]]);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(enumerate_connected_sets(&star, 0, 2).len(), 4);
    }

    #[test]
    fn component_graph_bounds() {
        let c = canonical::component_graph();
        let (k, z) = (&c.complex, c.cycle.as_ref().unwrap());
        let found = solve_ths_fpt(k, z, &FptConfig::new(4)).unwrap();
        assert_eq!(found.solution.unwrap().len(), 4);
        assert!(solve_ths_fpt(k, z, &FptConfig::new(3)).unwrap().solution.is_none());
    }

    #[test]
    fn torus_routes_agree() {
        let c = canonical::csaszar_torus();
        let (k, z) = (&c.complex, c.cycle.as_ref().unwrap());
        assert!(solve_ths_fpt(k, z, &FptConfig::new(1)).unwrap().solution.is_none());
        let colspace = solve_ths_fpt(k, z, &FptConfig::new(6)).unwrap();
        let fast = solve_ths_fpt(
            k,
            z,
            &FptConfig {
                route: FeasibilityRoute::RestrictedRows,
                ..FptConfig::new(6)
            },
        )
        .unwrap();
        assert_eq!(colspace.solution, fast.solution);
        assert_eq!(colspace.solution.unwrap().len(), 6);
        for (&count, _) in colspace.stats.per_center.iter().zip(0..) {
            assert!(count as u128 <= colspace.stats.envelope);
        }
    }
}
