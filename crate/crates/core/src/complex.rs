//! Dimension-windowed simplicial complexes, chains, and the graphs derived
//! from facet/cofacet incidence.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{input, precondition, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

pub type Vertex = u32;

/// A simplex given by its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Validates that `vertices` is non-empty and strictly increasing.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return input("a simplex needs at least one vertex");
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return input(format!("duplicate vertex {} in simplex {:?}", w[0], vertices));
            }
            if w[0] > w[1] {
                return input(format!("vertices of simplex {vertices:?} are not increasing"));
            }
        }
        Ok(Self(vertices))
    }

    /// Sorts `vertices` first; still rejects repeated vertices.
    pub fn from_unsorted(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        Self::new(vertices)
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// The face obtained by dropping the vertex at position `i`.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// All codimension-one faces, dropping vertices in position order.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(|i| self.facet(i))
    }

    /// All faces of dimension `d` (at most the simplex itself), lexicographic.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Simplex> {
        if d > self.dim() {
            return Vec::new();
        }
        use itertools::Itertools;
        self.0.iter().copied().combinations(d + 1).map(Simplex).collect()
    }

    /// `self` with vertex `v` added.
    pub fn join(&self, v: Vertex) -> Result<Simplex> {
        let mut w = self.0.clone();
        w.push(v);
        Simplex::from_unsorted(w)
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Inclusive range of stored dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return input(format!("empty dimension window [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, d: usize) -> bool {
        self.lo <= d && d <= self.hi
    }
}

#[derive(Clone, Debug, Default)]
struct Level {
    simplices: Vec<Simplex>,
    lookup: HashMap<Simplex, usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

/// A simplicial complex storing only the dimensions inside its window.
///
/// Within a dimension, simplices are indexed in lexicographic vertex order.
#[derive(Clone, Debug)]
pub struct Complex {
    window: Window,
    levels: Vec<Level>,
    weights: Option<Vec<u64>>,
    truncated_above: bool,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window
            && self.truncated_above == other.truncated_above
            && self.weights == other.weights
            && self
                .levels
                .iter()
                .map(|l| &l.simplices)
                .eq(other.levels.iter().map(|l| &l.simplices))
    }
}

impl Eq for Complex {}

/// Old-to-new simplex index correspondence produced by
/// [`Complex::remove_closure`].
#[derive(Clone, Debug)]
pub struct IndexMap {
    lo: usize,
    forward: Vec<Vec<Option<usize>>>,
    backward: Vec<Vec<usize>>,
}

impl IndexMap {
    /// New index of old simplex `old` in dimension `d`, if it survived.
    pub fn new_index(&self, d: usize, old: usize) -> Option<usize> {
        self.forward[d - self.lo][old]
    }

    /// Old index of surviving simplex `new` in dimension `d`.
    pub fn old_index(&self, d: usize, new: usize) -> usize {
        self.backward[d - self.lo][new]
    }

    pub fn survivors(&self, d: usize) -> &[usize] {
        &self.backward[d - self.lo]
    }
}

/// An undirected simple graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { adj }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// The subgraph keeping only edges whose endpoints both satisfy `keep`.
    pub fn restricted(&self, keep: &[bool]) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if keep[v] {
                    list.iter().copied().filter(|&u| keep[u]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Graph { adj }
    }

    /// Nodes within `radius` hops of `center`, as a membership mask.
    pub fn ball(&self, center: usize, radius: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[center] = true;
        let mut frontier = vec![center];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        next.push(u);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        seen
    }

    /// Whether `nodes` induces a connected subgraph. The empty set is not connected.
    pub fn induces_connected(&self, nodes: &[usize]) -> bool {
        let Some(&start) = nodes.first() else {
            return false;
        };
        let members: HashSet<usize> = nodes.iter().copied().collect();
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if members.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == members.len()
    }
}

/// Dual graph of a closed surface: one node per triangle, one edge per
/// primal edge joining its two triangles. `edges[e]` is the dual of primal edge `e`.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.nodes, &self.edges)
    }
}

impl Complex {
    /// Builds the complex generated by `tops`, storing every face whose
    /// dimension lies in `window`. `weights` assigns non-negative integer
    /// weights to edges; unlisted edges get weight 1.
    pub fn build(tops: &[Simplex], window: Window, weights: Option<&[(Vertex, Vertex, u64)]>) -> Result<Complex> {
        let mut seen_tops = HashSet::with_capacity(tops.len());
        for t in tops {
            if !seen_tops.insert(t) {
                return input(format!("duplicate simplex {t:?}"));
            }
        }
        let span = window.hi - window.lo + 1;
        let mut sets: Vec<HashSet<Simplex>> = vec![HashSet::new(); span];
        let mut truncated_above = false;
        for t in tops {
            if t.dim() > window.hi {
                truncated_above = true;
            }
            for d in window.lo..=window.hi.min(t.dim()) {
                let set = &mut sets[d - window.lo];
                if d == t.dim() {
                    set.insert(t.clone());
                } else {
                    set.extend(t.faces_of_dim(d));
                }
            }
        }
        let simplices = sets
            .into_iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut k = Self::from_sorted_levels(window, simplices, truncated_above);
        if let Some(ws) = weights {
            k.assign_weights(ws)?;
        }
        Ok(k)
    }

    fn from_sorted_levels(window: Window, simplices: Vec<Vec<Simplex>>, truncated_above: bool) -> Complex {
        let mut levels: Vec<Level> = simplices
            .into_iter()
            .map(|simplices| {
                let lookup = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
                Level {
                    facets: vec![Vec::new(); simplices.len()],
                    cofacets: vec![Vec::new(); simplices.len()],
                    simplices,
                    lookup,
                }
            })
            .collect();
        for li in 1..levels.len() {
            let (below, above) = levels.split_at_mut(li);
            let lower = &mut below[li - 1];
            let upper = &mut above[0];
            for (i, s) in upper.simplices.iter().enumerate() {
                let mut fs: Vec<usize> = s
                    .facets()
                    .map(|f| *lower.lookup.get(&f).expect("facet closure violated"))
                    .collect();
                fs.sort_unstable();
                for &f in &fs {
                    lower.cofacets[f].push(i);
                }
                upper.facets[i] = fs;
            }
        }
        Complex {
            window,
            levels,
            weights: None,
            truncated_above,
        }
    }

    fn assign_weights(&mut self, ws: &[(Vertex, Vertex, u64)]) -> Result<()> {
        if !self.window.contains(1) {
            return input("edge weights given but dimension 1 is outside the window");
        }
        let mut weights = vec![1u64; self.count(1)];
        for &(a, b, w) in ws {
            let s = Simplex::from_unsorted(vec![a, b])?;
            let Some(i) = self.index_of(&s) else {
                return input(format!("weight given for non-edge {a} {b}"));
            };
            weights[i] = w;
        }
        self.weights = Some(weights);
        Ok(())
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn lo(&self) -> usize {
        self.window.lo
    }

    pub fn hi(&self) -> usize {
        self.window.hi
    }

    /// Whether some generating simplex had dimension above the window, so the
    /// top stored dimension is missing its cofaces.
    pub fn is_truncated_above(&self) -> bool {
        self.truncated_above
    }

    fn level(&self, d: usize) -> Option<&Level> {
        self.window.contains(d).then(|| &self.levels[d - self.window.lo])
    }

    fn level_or_err(&self, d: usize) -> Result<&Level> {
        match self.level(d) {
            Some(l) => Ok(l),
            None => input(format!(
                "dimension {d} is outside the window [{}, {}]",
                self.window.lo, self.window.hi
            )),
        }
    }

    /// Number of stored `d`-simplices (0 outside the window).
    pub fn count(&self, d: usize) -> usize {
        self.level(d).map_or(0, |l| l.simplices.len())
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.level(d).map_or(&[], |l| &l.simplices)
    }

    pub fn simplex(&self, d: usize, i: usize) -> &Simplex {
        &self.levels[d - self.window.lo].simplices[i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.level(s.dim())?.lookup.get(s).copied()
    }

    /// Facet indices (dimension `d - 1`) of simplex `i` of dimension `d`.
    pub fn facets(&self, d: usize, i: usize) -> &[usize] {
        &self.levels[d - self.window.lo].facets[i]
    }

    /// Cofacet indices (dimension `d + 1`) of simplex `i` of dimension `d`.
    pub fn cofacets(&self, d: usize, i: usize) -> &[usize] {
        &self.levels[d - self.window.lo].cofacets[i]
    }

    /// Whether the `(d+1)`-skeleton above dimension `d` is fully known, so
    /// cofacet lists in dimension `d` are complete.
    pub fn has_complete_cofacets(&self, d: usize) -> bool {
        self.window.contains(d) && (d < self.window.hi || !self.truncated_above)
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn edge_weight(&self, e: usize) -> u64 {
        self.weights.as_ref().map_or(1, |w| w[e])
    }

    pub fn edge_weights(&self) -> Vec<u64> {
        (0..self.count(1)).map(|e| self.edge_weight(e)).collect()
    }

    /// The same complex with every edge weight set to one.
    pub fn with_unit_weights(&self) -> Complex {
        let mut k = self.clone();
        k.weights = None;
        k
    }

    /// The same complex with the given per-edge weights (edge index order).
    pub fn with_edge_weights(&self, weights: Vec<u64>) -> Result<Complex> {
        if weights.len() != self.count(1) {
            return input(format!("{} weights given for {} edges", weights.len(), self.count(1)));
        }
        let mut k = self.clone();
        k.weights = Some(weights);
        Ok(k)
    }

    /// The `p`-th boundary matrix: rows are `(p-1)`-simplices, columns are
    /// `p`-simplices. At the bottom of the window it is the zero map with no rows.
    pub fn boundary_matrix(&self, p: usize) -> Result<Gf2Matrix> {
        let level = self.level_or_err(p)?;
        if p == self.window.lo {
            return Ok(Gf2Matrix::zeros(0, level.simplices.len()));
        }
        let mut m = Gf2Matrix::zeros(self.count(p - 1), level.simplices.len());
        for (j, fs) in level.facets.iter().enumerate() {
            for &i in fs {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Boundary matrix with the listed columns left out.
    pub fn boundary_matrix_without(&self, p: usize, dropped: &Gf2Vector) -> Result<(Gf2Matrix, Vec<usize>)> {
        let full = self.boundary_matrix(p)?;
        if dropped.len() != full.cols() {
            return input("dropped-column mask has the wrong length");
        }
        let kept: Vec<usize> = (0..full.cols()).filter(|&j| !dropped.get(j)).collect();
        Ok((full.select_columns(&kept), kept))
    }

    /// Boundary of a chain, computed from incidence lists.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        let p = c.dim();
        self.check_chain(c)?;
        if p == self.window.lo {
            return input(format!(
                "dimension {p} is the bottom of the window; its boundary is not stored"
            ));
        }
        let mut out = Gf2Vector::zeros(self.count(p - 1));
        for j in c.support().ones() {
            for &i in self.facets(p, j) {
                out.flip(i);
            }
        }
        Ok(Chain::new(p - 1, out))
    }

    /// Coboundary of a cochain, computed from incidence lists.
    pub fn coboundary(&self, c: &Chain) -> Result<Chain> {
        let p = c.dim();
        self.check_chain(c)?;
        if p == self.window.hi {
            return input(format!(
                "dimension {p} is the top of the window; its coboundary is not stored"
            ));
        }
        let mut out = Gf2Vector::zeros(self.count(p + 1));
        for j in c.support().ones() {
            for &i in self.cofacets(p, j) {
                out.flip(i);
            }
        }
        Ok(Chain::new(p + 1, out))
    }

    /// Whether `c` is a cycle. Chains at the bottom of the window always are.
    pub fn is_cycle(&self, c: &Chain) -> Result<bool> {
        if c.dim() == self.window.lo {
            self.check_chain(c)?;
            return Ok(true);
        }
        Ok(self.boundary(c)?.is_empty())
    }

    pub fn check_chain(&self, c: &Chain) -> Result<()> {
        let level = self.level_or_err(c.dim())?;
        if c.support().len() != level.simplices.len() {
            return input(format!(
                "chain of dimension {} has length {}, complex has {} simplices there",
                c.dim(),
                c.support().len(),
                level.simplices.len()
            ));
        }
        Ok(())
    }

    /// Removes the simplices of `s` and all their cofaces inside the window.
    /// Returns the remaining complex and the old-to-new index map.
    pub fn remove_closure(&self, s: &Chain) -> Result<(Complex, IndexMap)> {
        self.check_chain(s)?;
        let lo = self.window.lo;
        let mut removed: Vec<Vec<bool>> = self.levels.iter().map(|l| vec![false; l.simplices.len()]).collect();
        for i in s.support().ones() {
            removed[s.dim() - lo][i] = true;
        }
        for d in s.dim()..self.window.hi {
            let (cur, next) = removed.split_at_mut(d - lo + 1);
            for (i, &gone) in cur[d - lo].iter().enumerate() {
                if gone {
                    for &c in self.cofacets(d, i) {
                        next[0][c] = true;
                    }
                }
            }
        }
        let mut forward = Vec::with_capacity(self.levels.len());
        let mut backward = Vec::with_capacity(self.levels.len());
        for flags in &removed {
            let mut f = vec![None; flags.len()];
            let mut b = Vec::new();
            for (i, &gone) in flags.iter().enumerate() {
                if !gone {
                    f[i] = Some(b.len());
                    b.push(i);
                }
            }
            forward.push(f);
            backward.push(b);
        }
        let levels: Vec<Level> = self
            .levels
            .iter()
            .enumerate()
            .map(|(li, level)| {
                let simplices: Vec<Simplex> = backward[li].iter().map(|&i| level.simplices[i].clone()).collect();
                let lookup = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
                let facets = backward[li]
                    .iter()
                    .map(|&i| {
                        level.facets[i]
                            .iter()
                            .map(|&f| forward[li - 1][f].expect("face of a surviving simplex was removed"))
                            .collect()
                    })
                    .collect();
                let cofacets = backward[li]
                    .iter()
                    .map(|&i| level.cofacets[i].iter().filter_map(|&c| forward[li + 1][c]).collect())
                    .collect();
                Level {
                    simplices,
                    lookup,
                    facets,
                    cofacets,
                }
            })
            .collect();
        let weights = if self.window.contains(1) {
            self.weights
                .as_ref()
                .map(|w| backward[1 - lo].iter().map(|&e| w[e]).collect())
        } else {
            None
        };
        Ok((
            Complex {
                window: self.window,
                levels,
                weights,
                truncated_above: self.truncated_above,
            },
            IndexMap { lo, forward, backward },
        ))
    }

    /// Graph on `r`-simplices joining two simplices that share a cofacet.
    /// One hop here is two hops in the Hasse graph.
    pub fn r_adjacency(&self, r: usize) -> Result<Graph> {
        self.level_or_err(r)?;
        if !self.has_complete_cofacets(r) {
            return input(format!("dimension {} is outside the window", r + 1));
        }
        if r == self.window.hi {
            return Ok(Graph {
                adj: vec![Vec::new(); self.count(r)],
            });
        }
        let upper = &self.levels[r + 1 - self.window.lo];
        let mut adj = vec![Vec::new(); self.count(r)];
        for fs in &upper.facets {
            for &a in fs {
                for &b in fs {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Whether every edge has exactly two triangles, there are no
    /// higher-dimensional simplices, and every vertex link is one cycle.
    pub fn is_closed_surface(&self) -> bool {
        if self.window.lo != 0 || self.window.hi < 2 || self.truncated_above {
            return false;
        }
        if self.count(3) > 0 || self.count(0) == 0 {
            return false;
        }
        if (0..self.count(1)).any(|e| self.cofacets(1, e).len() != 2) {
            return false;
        }
        (0..self.count(0)).all(|v| self.vertex_link_is_cycle(v))
    }

    fn vertex_link_is_cycle(&self, v: usize) -> bool {
        let vid = self.simplex(0, v).vertices()[0];
        let mut link: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        let mut triangles = 0usize;
        for &e in self.cofacets(0, v) {
            for &t in self.cofacets(1, e) {
                let tri = self.simplex(2, t);
                // each triangle at v is reached through two of its edges
                let others: Vec<Vertex> = tri.vertices().iter().copied().filter(|&x| x != vid).collect();
                let key = (others[0], others[1]);
                link.entry(key.0).or_default().push(key.1);
                link.entry(key.1).or_default().push(key.0);
                triangles += 1;
            }
        }
        if triangles == 0 {
            return false;
        }
        for list in link.values_mut() {
            list.sort_unstable();
            list.dedup();
            if list.len() != 2 {
                return false;
            }
        }
        let start = *link.keys().next().expect("non-empty link");
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &link[&x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == link.len()
    }

    /// The dual graph of a closed surface.
    pub fn dual_graph(&self) -> Result<DualGraph> {
        if !self.is_closed_surface() {
            return precondition("dual graph requires a closed surface");
        }
        let edges = (0..self.count(1))
            .map(|e| {
                let t = self.cofacets(1, e);
                (t[0], t[1])
            })
            .collect();
        Ok(DualGraph {
            nodes: self.count(2),
            edges,
        })
    }

    /// Whether the 1-skeleton is connected (requires dimensions 0 and 1 in the window).
    pub fn is_connected(&self) -> bool {
        if !self.window.contains(0) {
            return false;
        }
        let n = self.count(0);
        if n == 0 {
            return false;
        }
        let edges: Vec<(usize, usize)> = if self.window.contains(1) {
            (0..self.count(1))
                .map(|e| {
                    let f = self.facets(1, e);
                    (f[0], f[1])
                })
                .collect()
        } else {
            Vec::new()
        };
        let g = Graph::from_edges(n, &edges);
        g.induces_connected(&(0..n).collect::<Vec<_>>())
    }

    /// Records that generators above the window existed but were not listed.
    pub(crate) fn mark_truncated_above(&mut self) {
        self.truncated_above = true;
    }

    /// Total number of stored simplices.
    pub fn size(&self) -> usize {
        self.levels.iter().map(|l| l.simplices.len()).sum()
    }

    /// Every stored simplex that has no stored cofacet, by dimension then index.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in self.window.lo..=self.window.hi {
            for i in 0..self.count(d) {
                if d == self.window.hi || self.cofacets(d, i).is_empty() {
                    out.push(self.simplex(d, i).clone());
                }
            }
        }
        out
    }
}

/// A set of `p`-simplices of one complex, read as a chain or a cochain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain {
    dim: usize,
    support: Gf2Vector,
}

impl Chain {
    pub fn new(dim: usize, support: Gf2Vector) -> Self {
        Self { dim, support }
    }

    pub fn zero(k: &Complex, dim: usize) -> Result<Chain> {
        k.level_or_err(dim)?;
        Ok(Self::new(dim, Gf2Vector::zeros(k.count(dim))))
    }

    /// Chain on the listed simplex indices; repeated indices cancel.
    pub fn from_indices(k: &Complex, dim: usize, indices: &[usize]) -> Result<Chain> {
        k.level_or_err(dim)?;
        let n = k.count(dim);
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return input(format!("simplex index {bad} out of range for dimension {dim}"));
        }
        Ok(Self::new(dim, Gf2Vector::from_indices(n, indices.iter().copied())))
    }

    /// Chain on the listed simplices, all of dimension `dim` and present in `k`.
    pub fn from_simplices(k: &Complex, dim: usize, simplices: &[Simplex]) -> Result<Chain> {
        let mut idx = Vec::with_capacity(simplices.len());
        for s in simplices {
            if s.dim() != dim {
                return input(format!("simplex {s:?} does not have dimension {dim}"));
            }
            match k.index_of(s) {
                Some(i) => idx.push(i),
                None => return input(format!("simplex {s:?} is not in the complex")),
            }
        }
        Self::from_indices(k, dim, &idx)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &Gf2Vector {
        &self.support
    }

    pub fn indices(&self) -> Vec<usize> {
        self.support.ones().collect()
    }

    pub fn simplices<'a>(&self, k: &'a Complex) -> Vec<&'a Simplex> {
        self.support.ones().map(|i| k.simplex(self.dim, i)).collect()
    }

    /// Number of simplices in the chain.
    pub fn len(&self) -> usize {
        self.support.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_zero()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.get(i)
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.dim != other.dim || self.support.len() != other.support.len() {
            return input("cannot add chains of different dimensions or complexes");
        }
        Ok(Self::new(self.dim, &self.support ^ &other.support))
    }

    pub fn weight(&self, k: &Complex) -> u64 {
        if self.dim == 1 {
            self.support.ones().map(|e| k.edge_weight(e)).sum()
        } else {
            self.len() as u64
        }
    }
}

/// The value `eta(zeta)`: parity of the number of shared simplices.
pub fn evaluate(eta: &Chain, zeta: &Chain) -> Result<bool> {
    if eta.dim != zeta.dim || eta.support.len() != zeta.support.len() {
        return input("cochain and chain differ in dimension or complex");
    }
    Ok(eta.support.dot(&zeta.support))
}
