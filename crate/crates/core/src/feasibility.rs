//! Verifiers for hitting sets, boundary nontrivialization, and their global
//! variants.
//!
//! Each verifier reports the ranks it computed. Besides the column-space
//! tests, [`ThsRowChecker`] and [`BntRowChecker`] decide the same questions by
//! restricting to the rows of the candidate set; solvers use them in inner
//! loops and the test suite checks them against the column-space route.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use crate::complex::{Chain, Complex};
use crate::error::{input, internal, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, SpanBasis, SparseEchelon};
use crate::homology::{betti, homology_basis};

/// Which decision procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// `zeta` tested against `[basis(K_S) | boundary(K)]`.
    Colspace,
    /// `zeta` restricted to the rows of `S`, tested against the restricted boundary.
    RestrictedRows,
    /// Surjectivity of `H_r(K_S) -> H_r(K)` by rank comparison.
    RankProfile,
    /// Solvability of the boundary equation without the columns of `S`.
    BoundarySolve,
    /// Literal enumeration of homologous cycles or boundary preimages.
    Enumeration,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Colspace => "colspace",
            Method::RestrictedRows => "restricted-rows",
            Method::RankProfile => "rank-profile",
            Method::BoundarySolve => "boundary-solve",
            Method::Enumeration => "enumeration",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub verdict: bool,
    pub ranks: BTreeMap<&'static str, usize>,
    pub method: Method,
    pub elapsed: Duration,
}

impl FeasibilityReport {
    fn new(verdict: bool, method: Method, start: Instant) -> Self {
        Self {
            verdict,
            ranks: BTreeMap::new(),
            method,
            elapsed: start.elapsed(),
        }
    }

    fn rank(mut self, name: &'static str, value: usize) -> Self {
        self.ranks.insert(name, value);
        self
    }
}

fn check_same_dim(k: &Complex, chain: &Chain, dim: usize, what: &str) -> Result<()> {
    k.check_chain(chain)?;
    if chain.dim() != dim {
        return input(format!("{what} has dimension {}, expected {dim}", chain.dim()));
    }
    Ok(())
}

fn upper_boundary(k: &Complex, r: usize) -> Result<Gf2Matrix> {
    if r == k.hi() {
        if k.is_truncated_above() {
            return input(format!("dimension {} is outside the window", r + 1));
        }
        return Ok(Gf2Matrix::zeros(k.count(r), 0));
    }
    k.boundary_matrix(r + 1)
}

/// Checks hitting-set candidates for one fixed non-bounding cycle.
///
/// Construction validates the cycle once; [`ThsVerifier::check`] then runs the
/// column-space test for any number of candidate sets.
#[derive(Clone, Debug)]
pub struct ThsVerifier<'a> {
    complex: &'a Complex,
    zeta: Chain,
    upper: Gf2Matrix,
}

impl<'a> ThsVerifier<'a> {
    pub fn new(k: &'a Complex, zeta: &Chain) -> Result<Self> {
        let r = zeta.dim();
        k.check_chain(zeta)?;
        let basis = homology_basis(k, r)?;
        if !k.is_cycle(zeta)? {
            return input("the given chain is not a cycle");
        }
        if basis.is_bounding(zeta)? {
            return input("the given cycle bounds; every hitting-set question is vacuous");
        }
        Ok(Self {
            complex: k,
            zeta: zeta.clone(),
            upper: upper_boundary(k, r)?,
        })
    }

    pub fn complex(&self) -> &'a Complex {
        self.complex
    }

    pub fn zeta(&self) -> &Chain {
        &self.zeta
    }

    /// Whether `s` meets every cycle homologous to the stored cycle.
    pub fn check(&self, s: &Chain) -> Result<FeasibilityReport> {
        let start = Instant::now();
        let k = self.complex;
        let r = self.zeta.dim();
        check_same_dim(k, s, r, "candidate set")?;
        let (ks, map) = k.remove_closure(s)?;
        let basis = homology_basis(&ks, r)?;
        let lifted: Vec<Gf2Vector> = basis
            .cycles()
            .iter()
            .map(|c| Gf2Vector::from_indices(k.count(r), c.support().ones().map(|i| map.old_index(r, i))))
            .collect();
        let a = Gf2Matrix::from_columns(k.count(r), &lifted)?;
        let m = a.hstack(&self.upper)?;
        let rank_m = m.rank();
        let rank_mz = m.with_column(self.zeta.support())?.rank();
        Ok(FeasibilityReport::new(rank_mz != rank_m, Method::Colspace, start)
            .rank("beta_r(K_S)", basis.rank())
            .rank("rank(M)", rank_m)
            .rank("rank([M|zeta])", rank_mz))
    }
}

/// Whether `s` meets every `r`-cycle homologous to `zeta`.
pub fn is_ths_feasible(k: &Complex, zeta: &Chain, s: &Chain) -> Result<FeasibilityReport> {
    ThsVerifier::new(k, zeta)?.check(s)
}

/// Whether removing `s` makes `H_r(K_S) -> H_r(K)` fail to be surjective.
pub fn is_global_ths_solution(k: &Complex, r: usize, s: &Chain) -> Result<FeasibilityReport> {
    let start = Instant::now();
    check_same_dim(k, s, r, "candidate set")?;
    let beta = betti(k, r)?;
    let upper = upper_boundary(k, r)?;
    let (ks, map) = k.remove_closure(s)?;
    let basis = homology_basis(&ks, r)?;
    let lifted: Vec<Gf2Vector> = basis
        .cycles()
        .iter()
        .map(|c| Gf2Vector::from_indices(k.count(r), c.support().ones().map(|i| map.old_index(r, i))))
        .collect();
    let image_rank = upper.relative_rank(&Gf2Matrix::from_columns(k.count(r), &lifted)?)?;
    let rank_clause = image_rank < beta;
    let betti_clause = basis.rank() < beta;
    if betti_clause && !rank_clause {
        return internal("fewer classes after removal but the induced map is still onto");
    }
    Ok(
        FeasibilityReport::new(rank_clause || betti_clause, Method::RankProfile, start)
            .rank("beta_r(K)", beta)
            .rank("beta_r(K_S)", basis.rank())
            .rank("rank(image)", image_rank),
    )
}

/// Whether no `(r+1)`-chain avoiding `s` has boundary `zeta`.
pub fn is_bnt_feasible(k: &Complex, zeta: &Chain, s: &Chain) -> Result<FeasibilityReport> {
    let start = Instant::now();
    let r = zeta.dim();
    k.check_chain(zeta)?;
    check_same_dim(k, s, r + 1, "candidate set")?;
    let full = k.boundary_matrix(r + 1)?;
    if full.solve(zeta.support())?.is_none() {
        return input("the given chain is not a boundary");
    }
    let (reduced, _) = k.boundary_matrix_without(r + 1, s.support())?;
    let solvable = reduced.solve(zeta.support())?.is_some();
    Ok(FeasibilityReport::new(!solvable, Method::BoundarySolve, start)
        .rank("rank(boundary)", full.rank())
        .rank("rank(boundary without S)", reduced.rank()))
}

/// Whether dropping the columns of `s` strictly shrinks the `r`-boundary space.
pub fn is_global_bnt_solution(k: &Complex, r: usize, s: &Chain) -> Result<FeasibilityReport> {
    let start = Instant::now();
    check_same_dim(k, s, r + 1, "candidate set")?;
    let full = k.boundary_matrix(r + 1)?;
    let (reduced, _) = k.boundary_matrix_without(r + 1, s.support())?;
    if full.relative_rank(&reduced)? != 0 {
        return internal("column space grew after removing columns");
    }
    let (full_rank, reduced_rank) = (full.rank(), reduced.rank());
    Ok(
        FeasibilityReport::new(reduced_rank < full_rank, Method::RankProfile, start)
            .rank("rank(boundary)", full_rank)
            .rank("rank(boundary without S)", reduced_rank),
    )
}

/// Boundary nontrivialization for candidate sets drawn from a fixed pool of
/// `(r+1)`-simplices, using sparse elimination only.
///
/// Every column outside the pool is reduced once; the cycle and the pool
/// columns are kept as normal forms modulo that span, so each query is a
/// span test among at most `pool.len() + 1` short vectors.
#[derive(Clone, Debug)]
pub struct PoolBntChecker {
    pool: Vec<usize>,
    target: Vec<u32>,
    columns: Vec<Vec<u32>>,
}

impl PoolBntChecker {
    pub fn new(k: &Complex, zeta: &Chain, pool: &[usize]) -> Result<Self> {
        let r = zeta.dim();
        k.check_chain(zeta)?;
        let n = k.count(r + 1);
        if !k.window().contains(r + 1) {
            return input(format!("dimension {} is outside the window", r + 1));
        }
        let mut in_pool = vec![false; n];
        for &j in pool {
            if j >= n || in_pool[j] {
                return input(format!("pool index {j} is out of range or repeated"));
            }
            in_pool[j] = true;
        }
        let column = |j: usize| -> Vec<u32> { k.facets(r + 1, j).iter().map(|&i| i as u32).collect() };
        let mut rest = SparseEchelon::new();
        for j in (0..n).filter(|&j| !in_pool[j]) {
            rest.insert(column(j));
        }
        let zeta_idx: Vec<u32> = zeta.support().ones().map(|i| i as u32).collect();
        let checker = Self {
            pool: pool.to_vec(),
            target: rest.normal_form(&zeta_idx),
            columns: pool.iter().map(|&j| rest.normal_form(&column(j))).collect(),
        };
        if !checker.solvable_without(&vec![false; pool.len()]) {
            return input("the given chain is not a boundary");
        }
        Ok(checker)
    }

    pub fn pool(&self) -> &[usize] {
        &self.pool
    }

    fn solvable_without(&self, dropped: &[bool]) -> bool {
        let mut span = SparseEchelon::new();
        for (c, _) in self.columns.iter().zip(dropped).filter(|(_, d)| !**d) {
            span.insert(c.clone());
        }
        span.contains(&self.target)
    }

    /// Whether removing `s` (simplex indices, all from the pool) leaves no
    /// preimage of the cycle.
    pub fn is_feasible(&self, s: &[usize]) -> Result<bool> {
        let mut dropped = vec![false; self.pool.len()];
        for j in s {
            match self.pool.iter().position(|p| p == j) {
                Some(pos) => dropped[pos] = true,
                None => return input(format!("simplex {j} is not in the candidate pool")),
            }
        }
        Ok(!self.solvable_without(&dropped))
    }
}

/// Small XOR basis over candidate-local bit positions.
struct WordBasis {
    rows: Vec<u64>,
}

impl WordBasis {
    fn new() -> Self {
        Self {
            rows: Vec::with_capacity(64),
        }
    }

    fn reduce(&self, mut v: u64) -> u64 {
        for &b in &self.rows {
            v = v.min(v ^ b);
        }
        v
    }

    fn insert(&mut self, v: u64) {
        let v = self.reduce(v);
        if v != 0 {
            let pos = self.rows.partition_point(|&b| b > v);
            self.rows.insert(pos, v);
        }
    }
}

/// `target` restricted to `rows` lies in the span of `columns` restricted to
/// `rows`, where `columns_of(row)` lists the columns with a one in that row.
fn restricted_in_span<'c, F>(rows: &[usize], target: &Gf2Vector, columns_of: F, scratch: &mut Vec<(usize, u64)>) -> bool
where
    F: Fn(usize) -> &'c [usize],
{
    if rows.len() <= 64 {
        scratch.clear();
        let mut t = 0u64;
        for (bit, &row) in rows.iter().enumerate() {
            if target.get(row) {
                t |= 1 << bit;
            }
            for &c in columns_of(row) {
                scratch.push((c, 1 << bit));
            }
        }
        if t == 0 {
            return true;
        }
        scratch.sort_unstable_by_key(|&(c, _)| c);
        let mut basis = WordBasis::new();
        let mut i = 0;
        while i < scratch.len() {
            let c = scratch[i].0;
            let mut word = 0;
            while i < scratch.len() && scratch[i].0 == c {
                word ^= scratch[i].1;
                i += 1;
            }
            basis.insert(word);
        }
        return basis.reduce(t) == 0;
    }
    let mut index = std::collections::HashMap::new();
    let mut cols: Vec<Gf2Vector> = Vec::new();
    let mut t = Gf2Vector::zeros(rows.len());
    for (bit, &row) in rows.iter().enumerate() {
        if target.get(row) {
            t.set(bit, true);
        }
        for &c in columns_of(row) {
            let slot = *index.entry(c).or_insert_with(|| {
                cols.push(Gf2Vector::zeros(rows.len()));
                cols.len() - 1
            });
            cols[slot].flip(bit);
        }
    }
    let mut basis = SpanBasis::new(rows.len());
    for c in cols {
        basis.insert(c);
    }
    basis.contains(&t)
}

/// Hitting-set test by row restriction: some cycle homologous to `zeta`
/// avoids `S` exactly when `zeta` restricted to `S` is a combination of the
/// boundary columns restricted to `S`.
#[derive(Clone, Debug)]
pub struct ThsRowChecker<'a> {
    complex: &'a Complex,
    zeta: Gf2Vector,
    r: usize,
}

impl<'a> ThsRowChecker<'a> {
    /// The cycle is not validated here; pair with [`ThsVerifier::new`].
    pub fn new(k: &'a Complex, zeta: &Chain) -> Result<Self> {
        k.check_chain(zeta)?;
        let r = zeta.dim();
        if !k.has_complete_cofacets(r) {
            return input(format!("dimension {} is outside the window", r + 1));
        }
        Ok(Self {
            complex: k,
            zeta: zeta.support().clone(),
            r,
        })
    }

    /// Whether the simplex index set `s` (distinct indices) is feasible.
    pub fn is_feasible(&self, s: &[usize]) -> bool {
        let mut scratch = Vec::new();
        self.is_feasible_with(s, &mut scratch)
    }

    pub(crate) fn is_feasible_with(&self, s: &[usize], scratch: &mut Vec<(usize, u64)>) -> bool {
        let empty: &[usize] = &[];
        let k = self.complex;
        let r = self.r;
        let upper_exists = r < k.hi();
        !restricted_in_span(
            s,
            &self.zeta,
            |row| if upper_exists { k.cofacets(r, row) } else { empty },
            scratch,
        )
    }

    pub fn report(&self, s: &Chain) -> Result<FeasibilityReport> {
        let start = Instant::now();
        check_same_dim(self.complex, s, self.r, "candidate set")?;
        let verdict = self.is_feasible(&s.indices());
        Ok(FeasibilityReport::new(verdict, Method::RestrictedRows, start).rank("|S|", s.len()))
    }
}

/// Boundary-nontrivialization test by row restriction: with `x0` one preimage
/// of `zeta` and `Z` the `(r+1)`-cycles, some preimage avoids `S` exactly when
/// `x0` restricted to `S` lies in `Z` restricted to `S`.
#[derive(Clone, Debug)]
pub struct BntRowChecker {
    particular: Gf2Vector,
    rows: Vec<Vec<usize>>,
    cycle_rank: usize,
}

impl BntRowChecker {
    pub fn new(k: &Complex, zeta: &Chain) -> Result<Self> {
        let r = zeta.dim();
        k.check_chain(zeta)?;
        let boundary = k.boundary_matrix(r + 1)?;
        let Some(particular) = boundary.solve(zeta.support())? else {
            return input("the given chain is not a boundary");
        };
        let kernel = boundary.kernel_vectors();
        let mut rows = vec![Vec::new(); k.count(r + 1)];
        for (j, z) in kernel.iter().enumerate() {
            for i in z.ones() {
                rows[i].push(j);
            }
        }
        Ok(Self {
            particular,
            rows,
            cycle_rank: kernel.len(),
        })
    }

    /// Dimension of the `(r+1)`-cycle space; the preimage coset has `2^cycle_rank` elements.
    pub fn cycle_rank(&self) -> usize {
        self.cycle_rank
    }

    pub fn particular(&self) -> &Gf2Vector {
        &self.particular
    }

    pub fn is_feasible(&self, s: &[usize]) -> bool {
        let mut scratch = Vec::new();
        !restricted_in_span(s, &self.particular, |row| &self.rows[row], &mut scratch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical;
    use crate::complex::Simplex;

    fn chain(k: &Complex, dim: usize, simplices: &[&[u32]]) -> Chain {
        let s: Vec<Simplex> = simplices.iter().map(|v| Simplex::new(v.to_vec()).unwrap()).collect();
        Chain::from_simplices(k, dim, &s).unwrap()
    }

    #[test]
    fn component_graph_examples() {
        let c = canonical::component_graph();
        let (k, z) = (&c.complex, c.cycle.as_ref().unwrap());
        let all = chain(k, 0, &[&[4], &[5], &[6], &[7]]);
        let three = chain(k, 0, &[&[4], &[5], &[6]]);
        assert!(is_ths_feasible(k, z, &all).unwrap().verdict);
        assert!(!is_ths_feasible(k, z, &three).unwrap().verdict);
        assert!(!is_ths_feasible(k, z, &Chain::zero(k, 0).unwrap()).unwrap().verdict);
        let rows = ThsRowChecker::new(k, z).unwrap();
        assert!(rows.is_feasible(&all.indices()));
        assert!(!rows.is_feasible(&three.indices()));
    }

    #[test]
    fn bounding_cycle_rejected() {
        let c = canonical::tetra_sphere();
        let err = is_ths_feasible(
            &c.complex,
            c.cycle.as_ref().unwrap(),
            &Chain::zero(&c.complex, 1).unwrap(),
        );
        assert!(matches!(err, Err(crate::Error::Input(_))));
    }

    #[test]
    fn bnt_sphere_examples() {
        let c = canonical::tetra_sphere();
        let (k, z) = (&c.complex, c.cycle.as_ref().unwrap());
        let one = chain(k, 2, &[&[0, 1, 2]]);
        let two = chain(k, 2, &[&[0, 1, 2], &[0, 1, 3]]);
        let none = Chain::zero(k, 2).unwrap();
        assert!(!is_bnt_feasible(k, z, &one).unwrap().verdict);
        assert!(is_bnt_feasible(k, z, &two).unwrap().verdict);
        assert!(!is_bnt_feasible(k, z, &none).unwrap().verdict);
        let rows = BntRowChecker::new(k, z).unwrap();
        assert_eq!(rows.cycle_rank(), 1);
        assert!(!rows.is_feasible(&one.indices()));
        assert!(rows.is_feasible(&two.indices()));

        assert!(!is_global_bnt_solution(k, 1, &none).unwrap().verdict);
        assert!(!is_global_bnt_solution(k, 1, &one).unwrap().verdict);
        assert!(is_global_bnt_solution(k, 1, &two).unwrap().verdict);
    }

    #[test]
    fn global_ths_examples() {
        let t = canonical::csaszar_torus().complex;
        assert!(
            !is_global_ths_solution(&t, 1, &Chain::zero(&t, 1).unwrap())
                .unwrap()
                .verdict
        );
        let eta = crate::homology::min_cohomology_basis(&t, false).unwrap()[0]
            .cochain
            .clone();
        let report = is_global_ths_solution(&t, 1, &eta).unwrap();
        assert!(report.verdict);
        assert_eq!(report.ranks["beta_r(K)"], 2);

        let s = canonical::tetra_sphere().complex;
        let all = Chain::from_indices(&s, 1, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(!is_global_ths_solution(&s, 1, &all).unwrap().verdict);
    }

    #[test]
    fn pool_checker_matches_boundary_solve() {
        let k = canonical::csaszar_torus().complex;
        let zeta = k.boundary(&Chain::from_indices(&k, 2, &[0, 3]).unwrap()).unwrap();
        let pool: Vec<usize> = (0..9).collect();
        let checker = PoolBntChecker::new(&k, &zeta, &pool).unwrap();
        for a in 0..9 {
            for b in a..9 {
                let s: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
                let dense = is_bnt_feasible(&k, &zeta, &Chain::from_indices(&k, 2, &s).unwrap()).unwrap();
                assert_eq!(checker.is_feasible(&s).unwrap(), dense.verdict, "{s:?}");
            }
        }
        assert!(checker.is_feasible(&[20]).is_err());
        let cycle = canonical::csaszar_torus().cycle.unwrap();
        assert!(PoolBntChecker::new(&k, &cycle, &pool).is_err());
    }
}
