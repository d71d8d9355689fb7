//! Hitting sets on closed surfaces via a minimum cohomology basis, and the
//! cocycle tests that characterise minimal solutions there.

use crate::complex::{evaluate, Chain, Complex, Graph};
use crate::error::{internal, precondition, Result};
use crate::feasibility::{FeasibilityReport, ThsVerifier};
use crate::homology::{is_coboundary, min_cohomology_basis};

#[derive(Clone, Debug)]
pub struct SurfaceThsResult {
    pub solution: Chain,
    pub weight: u64,
    /// Position of the chosen cocycle in the weight-sorted cohomology basis.
    pub basis_index: usize,
    pub certificate: FeasibilityReport,
}

/// Minimum hitting set for a non-bounding 1-cycle on a closed surface, with
/// every edge weighing one.
pub fn solve_ths_surface(k: &Complex, zeta: &Chain, parallel: bool) -> Result<SurfaceThsResult> {
    solve_ths_surface_weighted(&k.with_unit_weights(), zeta, parallel)
}

/// Like [`solve_ths_surface`] but using the edge weights stored in `k`.
pub fn solve_ths_surface_weighted(k: &Complex, zeta: &Chain, parallel: bool) -> Result<SurfaceThsResult> {
    if !k.is_closed_surface() {
        return precondition("the complex is not a closed surface");
    }
    let verifier = ThsVerifier::new(k, zeta)?;
    let basis = min_cohomology_basis(k, parallel)?;
    for (i, eta) in basis.into_iter().enumerate() {
        if evaluate(&eta.cochain, zeta)? {
            let certificate = verifier.check(&eta.cochain)?;
            if !certificate.verdict {
                return internal("selected cocycle does not hit every homologous cycle");
            }
            return Ok(SurfaceThsResult {
                solution: eta.cochain,
                weight: eta.weight,
                basis_index: i,
                certificate,
            });
        }
    }
    internal("no basis cocycle evaluates to one on a non-bounding cycle")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleClass {
    NotCocycle,
    Trivial,
    Nontrivial,
}

/// Whether `eta` is a cocycle and a coboundary.
pub fn classify_cocycle(k: &Complex, eta: &Chain) -> Result<CocycleClass> {
    if !k.is_closed_surface() {
        return precondition("the complex is not a closed surface");
    }
    if !k.coboundary(eta)?.is_empty() {
        return Ok(CocycleClass::NotCocycle);
    }
    Ok(if is_coboundary(k, eta)? {
        CocycleClass::Trivial
    } else {
        CocycleClass::Nontrivial
    })
}

/// Whether `eta` is a nonempty cocycle whose edges span a connected subgraph
/// of the dual graph.
pub fn is_connected_cocycle(k: &Complex, eta: &Chain) -> Result<bool> {
    let dual = k.dual_graph()?;
    if eta.is_empty() || !k.coboundary(eta)?.is_empty() {
        return Ok(false);
    }
    let edges: Vec<(usize, usize)> = eta.support().ones().map(|e| dual.edges[e]).collect();
    let g = Graph::from_edges(dual.nodes, &edges);
    let mut nodes: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    Ok(g.induces_connected(&nodes))
}
