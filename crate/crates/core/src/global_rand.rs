//! Randomized solvers for the global variants: draw a random class (or a
//! random boundary), solve the fixed-cycle problem for it, and keep the
//! smallest set that passes the global verifier.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed + trial)`, so every trial replays on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bnt_greedy::{solve_bnt_greedy, BntConfig};
use crate::complex::{Chain, Complex};
use crate::error::{input, Result};
use crate::feasibility::{is_global_bnt_solution, is_global_ths_solution};
use crate::fpt_ths::{solve_ths_fpt, FptConfig};
use crate::gf2::{Gf2Vector, SpanBasis};
use crate::homology::homology_basis;
use crate::par;

pub const DEFAULT_TRIALS: usize = 16;

/// Generator used for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

/// Uniform nonzero vector of length `len`; zero draws are rejected.
pub fn nonzero_vector(rng: &mut impl Rng, len: usize) -> Gf2Vector {
    loop {
        let bits: Vec<bool> = (0..len).map(|_| rng.random::<bool>()).collect();
        let v = Gf2Vector::from_bools(&bits);
        if !v.is_zero() {
            return v;
        }
    }
}

fn combine(generators: &[Gf2Vector], coefficients: &Gf2Vector, len: usize) -> Gf2Vector {
    let mut out = Gf2Vector::zeros(len);
    for i in coefficients.ones() {
        out.xor_assign(&generators[i]);
    }
    out
}

/// A random non-bounding `r`-cycle: a uniform nonzero combination of a
/// homology basis. Returns the cycle and its coordinates.
pub fn random_nontrivial_cycle(k: &Complex, r: usize, rng: &mut impl Rng) -> Result<(Chain, Gf2Vector)> {
    let basis = homology_basis(k, r)?;
    if basis.rank() == 0 {
        return input(format!("H_{r} is trivial; there is no non-bounding cycle to draw"));
    }
    let gens: Vec<Gf2Vector> = basis.cycles().iter().map(|c| c.support().clone()).collect();
    let x = nonzero_vector(rng, gens.len());
    Ok((Chain::new(r, combine(&gens, &x, k.count(r))), x))
}

/// A basis of the `r`-boundary space: the independent columns of the
/// `(r+1)`-th boundary matrix, scanned left to right.
pub fn boundary_space_basis(k: &Complex, r: usize) -> Result<Vec<Gf2Vector>> {
    let mut span = SpanBasis::new(k.count(r));
    Ok(k.boundary_matrix(r + 1)?
        .columns()
        .into_iter()
        .filter(|c| span.insert(c.clone()))
        .collect())
}

/// A random nonzero bounding `r`-cycle. Returns the cycle and its coordinates
/// in [`boundary_space_basis`].
pub fn random_bounding_cycle(k: &Complex, r: usize, rng: &mut impl Rng) -> Result<(Chain, Gf2Vector)> {
    let gens = boundary_space_basis(k, r)?;
    if gens.is_empty() {
        return input(format!("the {}-th boundary map is zero", r + 1));
    }
    let x = nonzero_vector(rng, gens.len());
    Ok((Chain::new(r, combine(&gens, &x, k.count(r))), x))
}

/// What happened in one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u64,
    /// Coordinates of the drawn cycle.
    pub coordinates: Vec<bool>,
    /// Set returned by the fixed-cycle solver, as simplex indices.
    pub subroutine: Option<Vec<usize>>,
    /// Whether that set passed the global verifier.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomizedRun {
    pub seed: u64,
    pub trials: usize,
    pub records: Vec<TrialRecord>,
    /// Smallest verified set over all trials, ties broken by index order.
    pub best: Option<Chain>,
}

fn finish(k: &Complex, dim: usize, seed: u64, trials: usize, records: Vec<TrialRecord>) -> Result<RandomizedRun> {
    let best = records
        .iter()
        .filter(|t| t.verified)
        .filter_map(|t| t.subroutine.as_ref())
        .min_by(|a, b| (a.len(), *a).cmp(&(b.len(), *b)))
        .map(|s| Chain::from_indices(k, dim, s))
        .transpose()?;
    Ok(RandomizedRun {
        seed,
        trials,
        records,
        best,
    })
}

fn bits(v: &Gf2Vector) -> Vec<bool> {
    (0..v.len()).map(|i| v.get(i)).collect()
}

/// Randomized global hitting set: each trial draws a nontrivial class, solves
/// it with the bounded-size search, and checks the result globally.
pub fn solve_global_ths(k: &Complex, r: usize, config: &FptConfig, seed: u64, trials: usize) -> Result<RandomizedRun> {
    if homology_basis(k, r)?.rank() == 0 {
        return input(format!("H_{r} is trivial; there is no class to destroy"));
    }
    let inner = FptConfig {
        parallel: false,
        ..config.clone()
    };
    let records = par::map_range(trials, config.parallel, |t| -> Result<TrialRecord> {
        let mut rng = trial_rng(seed, t as u64);
        let (zeta, x) = random_nontrivial_cycle(k, r, &mut rng)?;
        let found = solve_ths_fpt(k, &zeta, &inner)?.solution;
        let verified = match &found {
            Some(s) => is_global_ths_solution(k, r, s)?.verdict,
            None => false,
        };
        Ok(TrialRecord {
            trial: t as u64,
            coordinates: bits(&x),
            subroutine: found.map(|s| s.indices()),
            verified,
        })
    });
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    finish(k, r, seed, trials, records)
}

/// Randomized global boundary nontrivialization: each trial draws a nonzero
/// boundary, runs the greedy solver on it, and checks the result globally.
pub fn solve_global_bnt(
    k: &Complex,
    r: usize,
    config: &BntConfig,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<RandomizedRun> {
    if boundary_space_basis(k, r)?.is_empty() {
        return input(format!("the {}-th boundary map is zero", r + 1));
    }
    let records = par::map_range(trials, parallel, |t| -> Result<TrialRecord> {
        let mut rng = trial_rng(seed, t as u64);
        let (zeta, x) = random_bounding_cycle(k, r, &mut rng)?;
        let out = solve_bnt_greedy(k, &zeta, config)?;
        let verified = is_global_bnt_solution(k, r, &out.solution)?.verdict;
        Ok(TrialRecord {
            trial: t as u64,
            coordinates: bits(&x),
            subroutine: Some(out.solution.indices()),
            verified,
        })
    });
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;
    finish(k, r + 1, seed, trials, records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical;
    use crate::fpt_ths::FeasibilityRoute;

    #[test]
    fn draws_are_deterministic() {
        let t = canonical::csaszar_torus().complex;
        let a = random_nontrivial_cycle(&t, 1, &mut trial_rng(42, 0)).unwrap();
        let b = random_nontrivial_cycle(&t, 1, &mut trial_rng(42, 0)).unwrap();
        assert_eq!(a, b);
        assert!(!homology_basis(&t, 1).unwrap().is_bounding(&a.0).unwrap());

        let s = canonical::tetra_sphere().complex;
        assert!(random_nontrivial_cycle(&s, 1, &mut trial_rng(1, 0)).is_err());
        assert_eq!(boundary_space_basis(&s, 1).unwrap().len(), 3);
        let (z, _) = random_bounding_cycle(&s, 1, &mut trial_rng(7, 3)).unwrap();
        assert!(s.boundary_matrix(2).unwrap().solve(z.support()).unwrap().is_some());

        let annulus = canonical::annulus().complex;
        let basis = homology_basis(&annulus, 1).unwrap();
        for t in 0..5 {
            let (z, _) = random_nontrivial_cycle(&annulus, 1, &mut trial_rng(9, t)).unwrap();
            assert_eq!(&z, &basis.cycles()[0]);
        }
    }

    #[test]
    fn global_runs() {
        let t = canonical::csaszar_torus().complex;
        let config = FptConfig {
            route: FeasibilityRoute::RestrictedRows,
            ..FptConfig::new(6)
        };
        let run = solve_global_ths(&t, 1, &config, 5, 4).unwrap();
        assert!(run.best.is_some());
        assert_eq!(run, solve_global_ths(&t, 1, &config, 5, 4).unwrap());
        assert!(solve_global_ths(&t, 1, &FptConfig::new(2), 5, 3)
            .unwrap()
            .best
            .is_none());

        let s = canonical::tetra_sphere().complex;
        let run = solve_global_bnt(&s, 1, &BntConfig::default(), 11, 10, true).unwrap();
        assert_eq!(run.best.unwrap().len(), 2);
        assert!(solve_global_bnt(&s, 1, &BntConfig::default(), 11, 0, true)
            .unwrap()
            .best
            .is_none());
    }
}
