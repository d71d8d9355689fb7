//! Betti numbers, homology bases with a coordinate functional, minimum-weight
//! homology bases of 1-cycles, and minimum cohomology bases on surfaces.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::complex::{Chain, Complex, Simplex, Window};
use crate::error::{input, internal, precondition, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, SpanBasis};
use crate::par;

fn check_homology_dim(k: &Complex, p: usize) -> Result<()> {
    if !k.window().contains(p) {
        return input(format!("dimension {p} is outside the window [{}, {}]", k.lo(), k.hi()));
    }
    if p == k.hi() && k.is_truncated_above() {
        return input(format!(
            "homology in dimension {p} needs dimension {} in the window",
            p + 1
        ));
    }
    Ok(())
}

/// Boundary matrix `p + 1`, or the empty map when `p` is the complete top.
fn upper_boundary(k: &Complex, p: usize) -> Result<Gf2Matrix> {
    if p == k.hi() {
        Ok(Gf2Matrix::zeros(k.count(p), 0))
    } else {
        k.boundary_matrix(p + 1)
    }
}

/// The `p`-th Betti number over Z2 (unreduced at the bottom of the window).
pub fn betti(k: &Complex, p: usize) -> Result<usize> {
    check_homology_dim(k, p)?;
    let cycles = k.count(p) - k.boundary_matrix(p)?.rank();
    Ok(cycles - upper_boundary(k, p)?.rank())
}

/// Dimension of the `p`-cycle space.
pub fn cycle_rank(k: &Complex, p: usize) -> Result<usize> {
    Ok(k.count(p) - k.boundary_matrix(p)?.rank())
}

/// A basis of `H_p` together with a coordinate functional for arbitrary cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    dim: usize,
    cycles: Vec<Chain>,
    reducer: SpanBasis,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cycles(&self) -> &[Chain] {
        &self.cycles
    }

    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Coordinates `c` with `z + sum c_i * basis_i` a boundary.
    pub fn coordinates(&self, z: &Chain) -> Result<Gf2Vector> {
        if z.dim() != self.dim || z.support().len() != self.reducer.ambient_len() {
            return input("chain does not belong to this homology basis");
        }
        let (rest, combo) = self.reducer.reduce_tracked(z.support());
        if !rest.is_zero() {
            return input("chain is not a cycle");
        }
        Ok(combo.gather(&(0..self.cycles.len()).collect::<Vec<_>>()))
    }

    /// Whether the cycle `z` is a boundary.
    pub fn is_bounding(&self, z: &Chain) -> Result<bool> {
        Ok(self.coordinates(z)?.is_zero())
    }

    /// The basis cycles as the columns of a matrix.
    pub fn matrix(&self) -> Gf2Matrix {
        let cols: Vec<Gf2Vector> = self.cycles.iter().map(|c| c.support().clone()).collect();
        Gf2Matrix::from_columns(self.reducer.ambient_len(), &cols).expect("cycle lengths agree")
    }
}

/// A deterministic homology basis in dimension `p`.
///
/// Boundaries are inserted first, then cycle-space basis vectors in kernel
/// order; every cycle vector that is independent of what came before becomes a
/// basis element.
pub fn homology_basis(k: &Complex, p: usize) -> Result<HomologyBasis> {
    check_homology_dim(k, p)?;
    let boundary = k.boundary_matrix(p)?;
    let kernel = boundary.kernel_vectors();
    let upper = upper_boundary(k, p)?;
    let beta = kernel.len() - upper.rank();
    let mut reducer = SpanBasis::with_tags(k.count(p), beta + 1);
    for col in upper.columns() {
        reducer.insert_tagged(col, beta);
    }
    let mut cycles = Vec::with_capacity(beta);
    for z in kernel {
        if cycles.len() == beta {
            break;
        }
        if reducer.insert_tagged(z.clone(), cycles.len()) {
            cycles.push(Chain::new(p, z));
        }
    }
    if cycles.len() != beta {
        return internal("homology basis construction found too few cycles");
    }
    Ok(HomologyBasis {
        dim: p,
        cycles,
        reducer,
    })
}

/// A 1-cochain (or 1-cycle) with its total edge weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCocycle {
    pub cochain: Chain,
    pub weight: u64,
}

struct ShortestPathTree {
    parent_edge: Vec<Option<usize>>,
}

fn shortest_path_tree(k: &Complex, root: usize) -> ShortestPathTree {
    let n = k.count(0);
    let mut dist = vec![u64::MAX; n];
    let mut parent_edge = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[root] = 0;
    heap.push(Reverse((0u64, root)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &e in k.cofacets(0, v) {
            let f = k.facets(1, e);
            let u = if f[0] == v { f[1] } else { f[0] };
            let nd = d + k.edge_weight(e);
            if !done[u] && nd < dist[u] {
                dist[u] = nd;
                parent_edge[u] = Some(e);
                heap.push(Reverse((nd, u)));
            }
        }
    }
    ShortestPathTree { parent_edge }
}

fn tree_path(k: &Complex, tree: &ShortestPathTree, mut v: usize, out: &mut Gf2Vector) {
    while let Some(e) = tree.parent_edge[v] {
        out.flip(e);
        let f = k.facets(1, e);
        v = if f[0] == v { f[1] } else { f[0] };
    }
}

fn chain_weight(k: &Complex, support: &Gf2Vector) -> u64 {
    support.ones().map(|e| k.edge_weight(e)).sum()
}

/// A minimum-weight basis of `H_1` for a connected complex.
///
/// Candidates are the cycles closed by one non-tree edge in a shortest-path
/// tree rooted at each vertex; they are sorted by weight and then by their
/// edge-index sequence, and kept greedily while their homology coordinates
/// stay independent. Every candidate is a simple cycle.
pub fn min_homology_basis(k: &Complex, parallel: bool) -> Result<Vec<WeightedCocycle>> {
    if k.lo() != 0 || !k.window().contains(1) {
        return input("minimum homology basis needs dimensions 0 and 1 in the window");
    }
    if !k.is_connected() {
        return precondition("minimum homology basis requires a connected complex");
    }
    let basis = homology_basis(k, 1)?;
    if basis.rank() == 0 {
        return Ok(Vec::new());
    }
    let per_root: Vec<Vec<Gf2Vector>> = par::map_range(k.count(0), parallel, |root| {
        let tree = shortest_path_tree(k, root);
        let mut in_tree = vec![false; k.count(1)];
        for e in tree.parent_edge.iter().flatten() {
            in_tree[*e] = true;
        }
        (0..k.count(1))
            .filter(|&e| !in_tree[e])
            .map(|e| {
                let f = k.facets(1, e);
                let mut cycle = Gf2Vector::zeros(k.count(1));
                tree_path(k, &tree, f[0], &mut cycle);
                tree_path(k, &tree, f[1], &mut cycle);
                cycle.flip(e);
                cycle
            })
            .collect()
    });
    let candidates: Vec<(u64, Vec<usize>)> = per_root
        .into_iter()
        .flatten()
        .map(|c| (chain_weight(k, &c), c.ones().collect()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let beta = basis.rank();
    let mut chosen = Vec::with_capacity(beta);
    let mut span = SpanBasis::new(beta);
    for (weight, edges) in candidates {
        let chain = Chain::from_indices(k, 1, &edges)?;
        let coords = basis.coordinates(&chain)?;
        if span.insert(coords) {
            chosen.push(WeightedCocycle { cochain: chain, weight });
            if chosen.len() == beta {
                break;
            }
        }
    }
    if chosen.len() != beta {
        return internal("candidate cycles do not span the first homology");
    }
    Ok(chosen)
}

/// The subdivided dual of a closed surface.
#[derive(Clone, Debug)]
pub struct DualSubdivision {
    pub complex: Complex,
    /// For every edge of `complex`, the primal edge it is dual to, or `None`
    /// for cone edges.
    pub primal_edge: Vec<Option<usize>>,
    pub infinite_weight: u64,
}

/// Dual cell complex of a closed surface with every dual 2-cell coned off.
///
/// Vertex ids: triangle `t` becomes vertex `t`, the cone point of primal
/// vertex `v` is `n_2 + v`. Dual edges carry the primal edge weight; cone
/// edges carry a weight larger than any cycle of finite edges.
pub fn dual_subdivided(k: &Complex) -> Result<DualSubdivision> {
    let dual = k.dual_graph()?;
    let n2 = k.count(2) as u32;
    let cone = |v: usize| n2 + v as u32;
    let mut tops = Vec::with_capacity(2 * k.count(1));
    for (e, &(t1, t2)) in dual.edges.iter().enumerate() {
        for &v in k.facets(1, e) {
            tops.push(Simplex::from_unsorted(vec![cone(v), t1 as u32, t2 as u32])?);
        }
    }
    let edge_count = dual.edges.len() + 3 * k.count(2);
    let max_weight = (0..k.count(1)).map(|e| k.edge_weight(e)).max().unwrap_or(0);
    let infinite_weight = 1 + (edge_count as u64) * (1 + max_weight);
    let mut weights = Vec::with_capacity(edge_count);
    for (e, &(t1, t2)) in dual.edges.iter().enumerate() {
        weights.push((t1 as u32, t2 as u32, k.edge_weight(e)));
    }
    for t in 0..k.count(2) {
        let tri = k.simplex(2, t);
        for v in tri.vertices() {
            let vi = k
                .index_of(&Simplex::from_sorted_unchecked(vec![*v]))
                .expect("vertex of a stored triangle");
            weights.push((t as u32, cone(vi), infinite_weight));
        }
    }
    let complex = Complex::build(&tops, Window::new(0, 2)?, Some(&weights))?;
    if complex.count(1) != edge_count {
        return internal("subdivided dual has an unexpected edge count");
    }
    let mut primal_edge = vec![None; complex.count(1)];
    for (e, &(t1, t2)) in dual.edges.iter().enumerate() {
        let s = Simplex::from_unsorted(vec![t1 as u32, t2 as u32])?;
        let idx = complex.index_of(&s).expect("dual edge present");
        primal_edge[idx] = Some(e);
    }
    Ok(DualSubdivision {
        complex,
        primal_edge,
        infinite_weight,
    })
}

/// Whether the edges of `eta`, read in the dual graph, form one simple cycle.
pub fn is_single_dual_cycle(k: &Complex, eta: &Chain) -> Result<bool> {
    let dual = k.dual_graph()?;
    let edges: Vec<(usize, usize)> = eta.support().ones().map(|e| dual.edges[e]).collect();
    if edges.is_empty() {
        return Ok(false);
    }
    let mut degree = vec![0usize; dual.nodes];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    if degree.iter().any(|&d| d != 0 && d != 2) {
        return Ok(false);
    }
    let g = crate::complex::Graph::from_edges(dual.nodes, &edges);
    let nodes: Vec<usize> = (0..dual.nodes).filter(|&t| degree[t] > 0).collect();
    Ok(g.induces_connected(&nodes) && edges.len() == nodes.len())
}

/// Whether `eta` lies in the image of the vertex coboundary.
pub fn is_coboundary(k: &Complex, eta: &Chain) -> Result<bool> {
    k.check_chain(eta)?;
    if eta.dim() != 1 || k.lo() != 0 {
        return input("coboundary test is implemented for 1-cochains with vertices in the window");
    }
    k.boundary_matrix(1)?.transpose().in_colspace(eta.support())
}

/// A minimum-weight basis of 1-dimensional cohomology of a closed surface,
/// sorted by ascending weight.
pub fn min_cohomology_basis(k: &Complex, parallel: bool) -> Result<Vec<WeightedCocycle>> {
    let sub = dual_subdivided(k)?;
    let cycles = min_homology_basis(&sub.complex, parallel)?;
    let mut out = Vec::with_capacity(cycles.len());
    for c in cycles {
        let mut primal = Vec::with_capacity(c.cochain.len());
        for e in c.cochain.support().ones() {
            match sub.primal_edge[e] {
                Some(p) => primal.push(p),
                None => return internal("minimum dual cycle uses a cone edge"),
            }
        }
        let eta = Chain::from_indices(k, 1, &primal)?;
        if !k.coboundary(&eta)?.is_empty() {
            return internal("dual cycle does not map to a cocycle");
        }
        if is_coboundary(k, &eta)? {
            return internal("dual basis cycle maps to a trivial cocycle");
        }
        if !is_single_dual_cycle(k, &eta)? {
            return internal("dual basis cycle is not a single dual circle");
        }
        let weight = eta.weight(k);
        out.push(WeightedCocycle { cochain: eta, weight });
    }
    out.sort_by_key(|w| (w.weight, w.cochain.indices()));
    Ok(out)
}
