//! Brute-force ground truth: literal enumeration of homologous cycles and
//! boundary preimages, and exhaustive minimum searches.

use std::collections::HashSet;

use itertools::Itertools;

use crate::complex::{Chain, Complex};
use crate::error::{input, resource, Result};
use crate::feasibility::{BntRowChecker, Method, ThsRowChecker, ThsVerifier};
use crate::fpt_ths::binomial;
use crate::gf2::{Gf2Vector, SpanBasis};
use crate::homology::homology_basis;
use crate::par;

/// Caps on brute-force work, checked before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of chains or candidate subsets one call may visit.
    pub max_enumeration: u64,
    /// Largest candidate size a subset search may reach, on top of `kmax`.
    pub max_subset_size: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_enumeration: 1 << 22,
            max_subset_size: 16,
        }
    }
}

impl OracleBudget {
    fn check_power(&self, exponent: usize, what: &str) -> Result<()> {
        if exponent >= 63 || (1u64 << exponent) > self.max_enumeration {
            return resource(format!(
                "{what} has 2^{exponent} elements, budget is {}",
                self.max_enumeration
            ));
        }
        Ok(())
    }
}

/// Result of an exhaustive minimum search.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub solution: Option<Chain>,
    pub route: Method,
    /// Number of candidate sets tested.
    pub checked: u64,
    pub diagnostic: Option<String>,
}

/// Visits `start + span(generators)` in Gray-code order, once per element.
fn gray_walk(start: &Gf2Vector, generators: &[Gf2Vector], mut visit: impl FnMut(&Gf2Vector)) {
    let mut cur = start.clone();
    visit(&cur);
    let total = 1u64 << generators.len();
    for i in 1..total {
        cur.xor_assign(&generators[i.trailing_zeros() as usize]);
        visit(&cur);
    }
}

fn independent_columns(cols: Vec<Gf2Vector>, len: usize) -> Vec<Gf2Vector> {
    let mut basis = SpanBasis::new(len);
    cols.into_iter().filter(|c| basis.insert(c.clone())).collect()
}

/// Every cycle homologous to `zeta`, one per element of the boundary space.
pub fn enumerate_homologous(k: &Complex, zeta: &Chain, budget: &OracleBudget) -> Result<Vec<Chain>> {
    k.check_chain(zeta)?;
    let r = zeta.dim();
    let gens = if r < k.hi() {
        independent_columns(k.boundary_matrix(r + 1)?.columns(), k.count(r))
    } else if k.is_truncated_above() {
        return input(format!("dimension {} is outside the window", r + 1));
    } else {
        Vec::new()
    };
    budget.check_power(gens.len(), "the homology class")?;
    let mut out = Vec::with_capacity(1 << gens.len());
    gray_walk(zeta.support(), &gens, |v| out.push(Chain::new(r, v.clone())));
    Ok(out)
}

/// Every `(r+1)`-chain whose boundary is `zeta`.
pub fn enumerate_boundary_chains(k: &Complex, zeta: &Chain, budget: &OracleBudget) -> Result<Vec<Chain>> {
    k.check_chain(zeta)?;
    let r = zeta.dim();
    let boundary = k.boundary_matrix(r + 1)?;
    let Some(x0) = boundary.solve(zeta.support())? else {
        return input("the given chain is not a boundary");
    };
    let kernel = boundary.kernel_vectors();
    budget.check_power(kernel.len(), "the preimage coset")?;
    let mut out = Vec::with_capacity(1 << kernel.len());
    gray_walk(&x0, &kernel, |v| out.push(Chain::new(r + 1, v.clone())));
    Ok(out)
}

const BATCH: usize = 1 << 14;

/// Smallest subset of `0..n` of size at most `kmax` accepted by `feasible`,
/// by size and then lexicographically.
fn first_feasible_subset<F>(
    n: usize,
    kmax: usize,
    budget: &OracleBudget,
    parallel: bool,
    feasible: F,
) -> Result<(Option<Vec<usize>>, u64)>
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    if kmax > budget.max_subset_size {
        return resource(format!(
            "subset size {kmax} exceeds the budget of {}",
            budget.max_subset_size
        ));
    }
    let total: u128 = (0..=kmax.min(n)).map(|s| binomial(n, s)).sum();
    if total > budget.max_enumeration as u128 {
        return resource(format!(
            "{total} candidate subsets exceed the budget of {}",
            budget.max_enumeration
        ));
    }
    let mut checked = 0u64;
    for size in 0..=kmax.min(n) {
        let mut combos = (0..n).combinations(size);
        loop {
            let batch: Vec<Vec<usize>> = combos.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            if let Some(i) = par::position_first(&batch, parallel, |s| feasible(s)) {
                checked += i as u64 + 1;
                return Ok((Some(batch[i].clone()), checked));
            }
            checked += batch.len() as u64;
        }
    }
    Ok((None, checked))
}

/// Below this many homologous cycles the literal definition is used directly.
const ENUMERATION_LIMIT: usize = 1 << 10;

/// Smallest set of at most `kmax` `r`-simplices meeting every cycle
/// homologous to `zeta`.
///
/// Small classes are tested literally against every homologous cycle; larger
/// ones use the row-restriction test.
pub fn brute_ths(
    k: &Complex,
    zeta: &Chain,
    kmax: usize,
    budget: &OracleBudget,
    parallel: bool,
) -> Result<OracleOutcome> {
    ThsVerifier::new(k, zeta)?;
    let r = zeta.dim();
    let rows = ThsRowChecker::new(k, zeta)?;
    let rank = if r < k.hi() {
        k.boundary_matrix(r + 1)?.rank()
    } else {
        0
    };
    let (found, checked, route) = if rank <= ENUMERATION_LIMIT.trailing_zeros() as usize {
        let cycles: Vec<Gf2Vector> = enumerate_homologous(k, zeta, budget)?
            .into_iter()
            .map(|c| c.support().clone())
            .collect();
        let n = k.count(r);
        let (found, checked) = first_feasible_subset(n, kmax, budget, parallel, |s| {
            let set = Gf2Vector::from_indices(n, s.iter().copied());
            cycles.iter().all(|c| c.intersects(&set))
        })?;
        (found, checked, Method::Enumeration)
    } else {
        let (found, checked) = first_feasible_subset(k.count(r), kmax, budget, parallel, |s| rows.is_feasible(s))?;
        (found, checked, Method::RestrictedRows)
    };
    Ok(OracleOutcome {
        solution: found.map(|s| Chain::from_indices(k, r, &s)).transpose()?,
        route,
        checked,
        diagnostic: None,
    })
}

/// Smallest set of at most `kmax` `(r+1)`-simplices meeting every chain whose
/// boundary is `zeta`. The zero chain is always a preimage of the zero
/// cycle, so that case has no solution and is reported in the diagnostic.
pub fn brute_bnt(
    k: &Complex,
    zeta: &Chain,
    kmax: usize,
    budget: &OracleBudget,
    parallel: bool,
) -> Result<OracleOutcome> {
    let r = zeta.dim();
    if zeta.is_empty() {
        k.check_chain(zeta)?;
        return Ok(OracleOutcome {
            solution: None,
            route: Method::Enumeration,
            checked: 0,
            diagnostic: Some("the zero cycle is the boundary of the empty chain; no set can hit it".into()),
        });
    }
    let rows = BntRowChecker::new(k, zeta)?;
    let n = k.count(r + 1);
    let (found, checked, route) = if rows.cycle_rank() <= ENUMERATION_LIMIT.trailing_zeros() as usize {
        let chains: Vec<Gf2Vector> = enumerate_boundary_chains(k, zeta, budget)?
            .into_iter()
            .map(|c| c.support().clone())
            .collect();
        let (found, checked) = first_feasible_subset(n, kmax, budget, parallel, |s| {
            let set = Gf2Vector::from_indices(n, s.iter().copied());
            chains.iter().all(|c| c.intersects(&set))
        })?;
        (found, checked, Method::Enumeration)
    } else {
        let (found, checked) = first_feasible_subset(n, kmax, budget, parallel, |s| rows.is_feasible(s))?;
        (found, checked, Method::RestrictedRows)
    };
    Ok(OracleOutcome {
        solution: found.map(|s| Chain::from_indices(k, r + 1, &s)).transpose()?,
        route,
        checked,
        diagnostic: None,
    })
}

/// Smallest set of `r`-simplices after whose removal some class of `H_r` has
/// no representative: a set works exactly when it hits every representative
/// of at least one basis class.
pub fn brute_global_ths(
    k: &Complex,
    r: usize,
    kmax: usize,
    budget: &OracleBudget,
    parallel: bool,
) -> Result<OracleOutcome> {
    let basis = homology_basis(k, r)?;
    if basis.rank() == 0 {
        return input(format!("H_{r} is trivial; there is no class to destroy"));
    }
    let checkers: Vec<ThsRowChecker<'_>> = basis
        .cycles()
        .iter()
        .map(|c| ThsRowChecker::new(k, c))
        .collect::<Result<_>>()?;
    let (found, checked) = first_feasible_subset(k.count(r), kmax, budget, parallel, |s| {
        checkers.iter().any(|c| c.is_feasible(s))
    })?;
    Ok(OracleOutcome {
        solution: found.map(|s| Chain::from_indices(k, r, &s)).transpose()?,
        route: Method::RestrictedRows,
        checked,
        diagnostic: None,
    })
}

/// Smallest set of `(r+1)`-simplices whose removal lowers the rank of the
/// `(r+1)`-th boundary matrix.
pub fn brute_global_bnt(
    k: &Complex,
    r: usize,
    kmax: usize,
    budget: &OracleBudget,
    parallel: bool,
) -> Result<OracleOutcome> {
    let boundary = k.boundary_matrix(r + 1)?;
    let full = boundary.rank();
    if full == 0 {
        return input(format!("the {}-th boundary map is zero", r + 1));
    }
    let (found, checked) = first_feasible_subset(k.count(r + 1), kmax, budget, parallel, |s| {
        let mut drop = vec![false; boundary.cols()];
        for &j in s {
            drop[j] = true;
        }
        let kept: Vec<usize> = (0..boundary.cols()).filter(|&j| !drop[j]).collect();
        boundary.select_columns(&kept).rank() < full
    })?;
    Ok(OracleOutcome {
        solution: found.map(|s| Chain::from_indices(k, r + 1, &s)).transpose()?,
        route: Method::RankProfile,
        checked,
        diagnostic: None,
    })
}

/// Every simple cycle of the 1-skeleton, as edge sets.
pub fn simple_cycles(k: &Complex, budget: &OracleBudget) -> Result<Vec<Gf2Vector>> {
    let n = k.count(0);
    let m = k.count(1);
    let mut found: HashSet<Gf2Vector> = HashSet::new();
    let mut path_edges: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];

    fn other_end(k: &Complex, e: usize, v: usize) -> usize {
        let f = k.facets(1, e);
        if f[0] == v {
            f[1]
        } else {
            f[0]
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: &Complex,
        start: usize,
        v: usize,
        m: usize,
        path_edges: &mut Vec<usize>,
        on_path: &mut [bool],
        found: &mut HashSet<Gf2Vector>,
        cap: u64,
    ) -> bool {
        for &e in k.cofacets(0, v) {
            let u = other_end(k, e, v);
            if u == start && path_edges.len() >= 2 && path_edges.last() != Some(&e) {
                let mut c = Gf2Vector::from_indices(m, path_edges.iter().copied());
                c.flip(e);
                found.insert(c);
                if found.len() as u64 > cap {
                    return false;
                }
            } else if u > start && !on_path[u] {
                on_path[u] = true;
                path_edges.push(e);
                let ok = extend(k, start, u, m, path_edges, on_path, found, cap);
                path_edges.pop();
                on_path[u] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    for s in 0..n {
        on_path[s] = true;
        let ok = extend(
            k,
            s,
            s,
            m,
            &mut path_edges,
            &mut on_path,
            &mut found,
            budget.max_enumeration,
        );
        on_path[s] = false;
        if !ok {
            return resource("too many simple cycles for the enumeration budget");
        }
    }
    let mut out: Vec<Gf2Vector> = found.into_iter().collect();
    out.sort_by_key(|c| c.ones().collect::<Vec<_>>());
    Ok(out)
}

/// Minimum total weight of a basis of `H_1`, by branch and bound over all
/// subsets of simple cycles.
pub fn brute_min_homology_basis_weight(k: &Complex, budget: &OracleBudget) -> Result<u64> {
    let basis = homology_basis(k, 1)?;
    let beta = basis.rank();
    if beta == 0 {
        return Ok(0);
    }
    let mut cycles: Vec<(u64, Gf2Vector)> = simple_cycles(k, budget)?
        .into_iter()
        .map(|c| {
            let chain = Chain::new(1, c);
            let w = chain.weight(k);
            basis.coordinates(&chain).map(|x| (w, x))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, x)| !x.is_zero())
        .collect();
    cycles.sort_by_key(|(w, _)| *w);

    struct Search<'a> {
        cycles: &'a [(u64, Gf2Vector)],
        beta: usize,
        best: u64,
        nodes: u64,
        cap: u64,
    }

    impl Search<'_> {
        fn go(&mut self, from: usize, chosen: &mut Vec<Gf2Vector>, weight: u64) -> bool {
            self.nodes += 1;
            if self.nodes > self.cap {
                return false;
            }
            if chosen.len() == self.beta {
                self.best = self.best.min(weight);
                return true;
            }
            let missing = (self.beta - chosen.len()) as u64;
            for i in from..self.cycles.len() {
                let (w, x) = &self.cycles[i];
                if weight + missing * w >= self.best {
                    break;
                }
                let mut span = SpanBasis::new(x.len());
                for c in chosen.iter() {
                    span.insert(c.clone());
                }
                if span.contains(x) {
                    continue;
                }
                chosen.push(x.clone());
                let ok = self.go(i + 1, chosen, weight + w);
                chosen.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let mut search = Search {
        cycles: &cycles,
        beta,
        best: u64::MAX,
        nodes: 0,
        cap: budget.max_enumeration,
    };
    if !search.go(0, &mut Vec::new(), 0) {
        return resource("basis search exceeded the enumeration budget");
    }
    if search.best == u64::MAX {
        return input("simple cycles do not span the first homology");
    }
    Ok(search.best)
}
