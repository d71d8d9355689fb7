//! Approximate boundary nontrivialization by repeated greedy set cover over
//! odd combinations of boundary preimages.

use crate::complex::{Chain, Complex};
use crate::error::{input, internal, resource, Result};
use crate::feasibility::{is_bnt_feasible, FeasibilityReport};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::homology::cycle_rank;

/// A set cover instance: rows are sets, columns are elements, and a one
/// means the set contains the element.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub incidence: Gf2Matrix,
}

impl CoverInstance {
    /// Builds the instance whose elements are the given chains and whose sets
    /// are the simplices (rows) of their common index space.
    pub fn from_chains(rows: usize, chains: &[Gf2Vector]) -> Result<Self> {
        let mut incidence = Gf2Matrix::zeros(rows, chains.len());
        for (j, c) in chains.iter().enumerate() {
            if c.len() != rows {
                return input("chain length does not match the number of sets");
            }
            for i in c.ones() {
                incidence.set(i, j, true);
            }
        }
        Ok(Self { incidence })
    }
}

/// Repeatedly picks the row covering the most uncovered columns, lowest row
/// on ties. Returns the rows in selection order.
pub fn greedy_set_cover(inst: &CoverInstance) -> Result<Vec<usize>> {
    let m = &inst.incidence;
    let rows: Vec<Gf2Vector> = m.row_vectors();
    let mut coverable = Gf2Vector::zeros(m.cols());
    for r in &rows {
        let mut fresh = r.clone();
        fresh.and_not_assign(&coverable);
        coverable.xor_assign(&fresh);
    }
    if coverable.count_ones() != m.cols() {
        return input("some element is contained in no set");
    }
    let mut uncovered = coverable;
    let mut chosen = Vec::new();
    while !uncovered.is_zero() {
        let (best, gain) = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.and_count(&uncovered)))
            .fold((0, 0), |acc, (i, g)| if g > acc.1 { (i, g) } else { acc });
        if gain == 0 {
            return internal("greedy cover stalled with elements left");
        }
        uncovered.and_not_assign(&rows[best]);
        chosen.push(best);
    }
    Ok(chosen)
}

#[derive(Clone, Copy, Debug)]
pub struct BntConfig {
    /// Largest allowed preimage-set size; the cover has `2^(cap-1)` columns at most.
    pub beta_cap: usize,
}

/// No configuration may raise the preimage-set size beyond this.
pub const HARD_BETA_CAP: usize = 30;

impl Default for BntConfig {
    fn default() -> Self {
        Self { beta_cap: 20 }
    }
}

#[derive(Clone, Debug)]
pub struct BntIteration {
    /// Number of preimages collected so far.
    pub preimages: usize,
    /// Number of odd combinations covered in this round.
    pub combinations: usize,
    pub cover: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BntOutcome {
    pub solution: Chain,
    pub iterations: Vec<BntIteration>,
    /// `dim Z_{r+1} + 1`, the bound on the number of rounds.
    pub iteration_bound: usize,
    pub certificate: FeasibilityReport,
}

/// All sums of an odd number of the given chains.
pub fn odd_combinations(chains: &[Gf2Vector], len: usize) -> Vec<Gf2Vector> {
    let mut out = Vec::with_capacity(1usize << chains.len().saturating_sub(1));
    let mut cur = Gf2Vector::zeros(len);
    let mut parity = false;
    for i in 1..(1u64 << chains.len()) {
        cur.xor_assign(&chains[i.trailing_zeros() as usize]);
        parity = !parity;
        if parity {
            out.push(cur.clone());
        }
    }
    out
}

/// Makes the bounding `r`-cycle `zeta` non-bounding by deleting
/// `(r+1)`-simplices chosen through greedy covers.
///
/// Each round solves the boundary equation without the current cover,
/// records the solution in the original simplex indexing, and recomputes the
/// cover over all odd combinations of the recorded solutions.
pub fn solve_bnt_greedy(k: &Complex, zeta: &Chain, config: &BntConfig) -> Result<BntOutcome> {
    if config.beta_cap > HARD_BETA_CAP {
        return input(format!(
            "beta cap {} exceeds the hard limit {HARD_BETA_CAP}",
            config.beta_cap
        ));
    }
    let r = zeta.dim();
    k.check_chain(zeta)?;
    if zeta.is_empty() {
        return input("the zero cycle is the boundary of the empty chain and cannot be made non-bounding");
    }
    let full = k.boundary_matrix(r + 1)?;
    if full.solve(zeta.support())?.is_none() {
        return input("the given chain is not a boundary");
    }
    let n = k.count(r + 1);
    let iteration_bound = cycle_rank(k, r + 1)? + 1;
    if iteration_bound > config.beta_cap {
        return resource(format!(
            "up to {iteration_bound} preimages may be needed; the cap is {}",
            config.beta_cap
        ));
    }

    let mut preimages: Vec<Gf2Vector> = Vec::new();
    let mut cover: Vec<usize> = Vec::new();
    let mut iterations = Vec::new();
    loop {
        let removed = Gf2Vector::from_indices(n, cover.iter().copied());
        let (reduced, kept) = k.boundary_matrix_without(r + 1, &removed)?;
        let Some(x) = reduced.solve(zeta.support())? else {
            break;
        };
        if iterations.len() == iteration_bound {
            return internal("greedy loop exceeded its iteration bound");
        }
        preimages.push(Gf2Vector::from_indices(n, x.ones().map(|j| kept[j])));
        let ys = odd_combinations(&preimages, n);
        cover = greedy_set_cover(&CoverInstance::from_chains(n, &ys)?)?;
        iterations.push(BntIteration {
            preimages: preimages.len(),
            combinations: ys.len(),
            cover: cover.clone(),
        });
    }
    let solution = Chain::from_indices(k, r + 1, &cover)?;
    let certificate = is_bnt_feasible(k, zeta, &solution)?;
    if !certificate.verdict {
        return internal("greedy output leaves a preimage of the cycle");
    }
    Ok(BntOutcome {
        solution,
        iterations,
        iteration_bound,
        certificate,
    })
}
