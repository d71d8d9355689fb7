//! Reduction instances from multicolored clique: the hitting-set complex
//! K(G), S-subdivisions, and the boundary-nontrivialization complex L(G).
//!
//! Both generators label vertices as follows. Graph vertices, sorted by id,
//! become `0..n`; color `c` becomes `n + c - 1`; every further vertex comes
//! from a counter and is recorded in the legend with its provenance.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::complex::{Chain, Complex, Simplex, Vertex, Window};
use crate::error::{input, internal, Result};

/// A vertex-colored graph with colors `1..=k`, every color used and no edge
/// inside a color class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    ids: Vec<u32>,
    colors: Vec<u32>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl ColoredGraph {
    /// `vertices` are `(id, color)` pairs; `edges` refer to ids.
    pub fn new(vertices: &[(u32, u32)], edges: &[(u32, u32)]) -> Result<Self> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.is_empty() {
            return input("the graph has no vertices");
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return input(format!("vertex {} is listed twice", w[0].0));
        }
        let ids: Vec<u32> = sorted.iter().map(|p| p.0).collect();
        let colors: Vec<u32> = sorted.iter().map(|p| p.1).collect();
        let k = *colors.iter().max().expect("nonempty");
        let used: BTreeSet<u32> = colors.iter().copied().collect();
        if used.len() != k as usize || used.contains(&0) {
            return input(format!("colors must be exactly 1..={k}, found {used:?}"));
        }
        let pos = |id: u32| ids.binary_search(&id).ok();
        let mut adjacency = vec![BTreeSet::new(); ids.len()];
        let mut out = BTreeSet::new();
        for &(a, b) in edges {
            let (Some(x), Some(y)) = (pos(a), pos(b)) else {
                return input(format!("edge {a} {b} uses an unknown vertex"));
            };
            if x == y {
                return input(format!("self-loop at vertex {a}"));
            }
            if colors[x] == colors[y] {
                return input(format!("edge {a} {b} joins two vertices of color {}", colors[x]));
            }
            if !out.insert((x.min(y), x.max(y))) {
                return input(format!("edge {a} {b} is listed twice"));
            }
            adjacency[x].insert(y);
            adjacency[y].insert(x);
        }
        Ok(Self {
            ids,
            colors,
            edges: out.into_iter().collect(),
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    /// Number of colors `k`.
    pub fn color_count(&self) -> usize {
        *self.colors.iter().max().expect("nonempty") as usize
    }

    /// Original id of the vertex at position `i`.
    pub fn id(&self, i: usize) -> u32 {
        self.ids[i]
    }

    pub fn color(&self, i: usize) -> u32 {
        self.colors[i]
    }

    /// Edges as position pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// Positions of the vertices with color `c`.
    pub fn class(&self, c: u32) -> Vec<usize> {
        (0..self.ids.len()).filter(|&i| self.colors[i] == c).collect()
    }

    /// `(id, color)` pairs sorted by id.
    pub fn vertices(&self) -> Vec<(u32, u32)> {
        self.ids.iter().copied().zip(self.colors.iter().copied()).collect()
    }
}

/// A clique with one vertex of each color, as positions in color order,
/// found by exhaustive search over the color classes.
pub fn find_multicolored_clique(g: &ColoredGraph) -> Option<Vec<usize>> {
    let classes: Vec<Vec<usize>> = (1..=g.color_count() as u32).map(|c| g.class(c)).collect();
    let mut chosen = Vec::with_capacity(classes.len());
    fn extend(g: &ColoredGraph, classes: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
        let Some(class) = classes.get(chosen.len()) else {
            return true;
        };
        for &v in class {
            if chosen.iter().all(|&u| g.has_edge(u, v)) {
                chosen.push(v);
                if extend(g, classes, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(g, &classes, &mut chosen).then_some(chosen)
}

/// What a simplex of a gadget stands for. Vertex fields hold original graph ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// The simplex spanned by all graph vertices.
    Base,
    /// A simplex of the input cycle through the dummy vertex, missing `excluded`.
    DummyFace {
        excluded: u32,
    },
    Sigma {
        color: u32,
    },
    Tau {
        color: u32,
        other: u32,
        vertex: u32,
    },
    Alpha {
        color: u32,
        vertex: u32,
    },
    /// Vertex `vertices.0` has color `colors.0`; the pair is stored with the smaller color first.
    Beta {
        colors: (u32, u32),
        vertices: (u32, u32),
    },
    Undesirable,
    /// A simplex added to make an undesirable simplex expensive to remove.
    Penalty,
    /// A facet of a penalty simplex other than the undesirable one it guards.
    Inadmissible,
}

impl Role {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Role::Base | Role::Alpha { .. } | Role::Beta { .. })
    }

    pub fn is_undesirable(&self) -> bool {
        matches!(self, Role::Undesirable | Role::DummyFace { .. })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Base => write!(f, "V"),
            Role::DummyFace { excluded } => write!(f, "V-{excluded}+d"),
            Role::Sigma { color } => write!(f, "sigma_{color}"),
            Role::Tau { color, other, vertex } => write!(f, "tau_{{{color},{other}}}^{vertex}"),
            Role::Alpha { color, vertex } => write!(f, "alpha_{color}^{vertex}"),
            Role::Beta { colors, vertices } => {
                write!(
                    f,
                    "beta_{{{},{}}}^{{{},{}}}",
                    colors.0, colors.1, vertices.0, vertices.1
                )
            }
            Role::Undesirable => write!(f, "undesirable"),
            Role::Penalty => write!(f, "penalty"),
            Role::Inadmissible => write!(f, "inadmissible"),
        }
    }
}

fn beta_role(g: &ColoredGraph, a: usize, b: usize) -> Role {
    let (x, y) = if g.color(a) < g.color(b) { (a, b) } else { (b, a) };
    Role::Beta {
        colors: (g.color(x), g.color(y)),
        vertices: (g.id(x), g.id(y)),
    }
}

/// Names and roles for a generated complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Legend {
    /// Provenance of every vertex, e.g. `v7`, `c2`, `d`, `u3/12`.
    pub vertex_names: BTreeMap<Vertex, String>,
    /// `roles[&d][i]` is the role of the `i`-th `d`-simplex.
    pub roles: BTreeMap<usize, Vec<Role>>,
}

impl Legend {
    pub fn role(&self, dim: usize, index: usize) -> Option<&Role> {
        self.roles.get(&dim).and_then(|r| r.get(index))
    }

    /// Index of the first `dim`-simplex with role `role`.
    pub fn find(&self, dim: usize, role: &Role) -> Option<usize> {
        self.roles.get(&dim)?.iter().position(|r| r == role)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    HittingSet,
    Nontrivialization,
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub complex: Complex,
    /// The non-bounding cycle for hitting set, the bounding cycle otherwise.
    pub input_chain: Chain,
    /// Size of the solutions that correspond to multicolored cliques.
    pub parameter: usize,
    pub m: usize,
    /// `|V|^3`, the multiplicity the hardness argument assumes.
    pub reference_m: u64,
    pub legend: Legend,
    pub warnings: Vec<String>,
}

impl GadgetInstance {
    /// Dimension of the simplices a solution consists of.
    pub fn solution_dim(&self) -> usize {
        match self.kind {
            GadgetKind::HittingSet => self.input_chain.dim(),
            GadgetKind::Nontrivialization => self.input_chain.dim() + 1,
        }
    }

    /// Marks the admissible simplices of the solution dimension.
    pub fn admissible_mask(&self) -> Vec<bool> {
        self.legend.roles[&self.solution_dim()]
            .iter()
            .map(Role::is_admissible)
            .collect()
    }

    pub fn admissible(&self) -> Vec<usize> {
        self.admissible_mask()
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
            .collect()
    }

    /// The solution built from a multicolored clique: its vertices and edges
    /// as `alpha` and `beta` simplices, plus the base simplex for hitting set.
    pub fn clique_solution(&self, g: &ColoredGraph, clique: &[usize]) -> Result<Chain> {
        let mut roles: Vec<Role> = clique
            .iter()
            .map(|&v| Role::Alpha {
                color: g.color(v),
                vertex: g.id(v),
            })
            .collect();
        for (&a, &b) in clique.iter().tuple_combinations() {
            roles.push(beta_role(g, a, b));
        }
        if self.kind == GadgetKind::HittingSet {
            roles.push(Role::Base);
        }
        let dim = self.solution_dim();
        let mut idx = Vec::with_capacity(roles.len());
        for role in &roles {
            match self.legend.find(dim, role) {
                Some(i) => idx.push(i),
                None => {
                    return input(format!(
                        "the gadget has no simplex {role}; is the set a clique of this graph?"
                    ))
                }
            }
        }
        Chain::from_indices(&self.complex, dim, &idx)
    }
}

/// Whether a solver's answer agrees with the clique question: a solution of
/// size at most the parameter exists exactly when `g` has a multicolored clique.
pub fn verify_gadget_answer(g: &ColoredGraph, gadget: &GadgetInstance, solution: Option<&Chain>) -> bool {
    let found = solution.is_some_and(|s| s.len() <= gadget.parameter);
    found == find_multicolored_clique(g).is_some()
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn penalty_warning(m: usize, parameter: usize) -> Vec<String> {
    if m <= parameter {
        vec![format!(
            "m = {m} is at most the parameter {parameter}; solutions using inadmissible simplices may be competitive"
        )]
    } else {
        Vec::new()
    }
}

fn simplex(mut vs: Vec<Vertex>) -> Simplex {
    vs.sort_unstable();
    Simplex::new(vs).expect("generated simplices have distinct vertices")
}

/// The hitting-set complex K(G).
///
/// With `r = |V| - 1`, the `(r+1)`-simplices are `sigma_c = V + c` for every
/// color, `tau = V - v + {color(v), c}` for every vertex and foreign color,
/// and `m` penalty cofacets `omega + u` for every undesirable `r`-simplex
/// `omega`. The cycle is `V` together with the simplices `V - u + d`, which
/// have no other cofacets and are therefore penalized as well.
pub fn gen_ths_gadget(g: &ColoredGraph, m: usize) -> Result<GadgetInstance> {
    if m == 0 {
        return input("the penalty multiplicity must be at least 1");
    }
    let n = g.vertex_count();
    let k = g.color_count();
    let r = n - 1;
    let color_vertex = |c: u32| n as Vertex + c - 1;
    let dummy = (n + k) as Vertex;
    let mut next = dummy + 1;
    let mut names = base_names(g);
    names.insert(dummy, "d".to_string());
    let base: Vec<Vertex> = (0..n as Vertex).collect();
    let without = |drop: usize, add: &[Vertex]| -> Simplex {
        let mut vs: Vec<Vertex> = base.iter().copied().filter(|&v| v != drop as Vertex).collect();
        vs.extend_from_slice(add);
        simplex(vs)
    };

    let mut r_roles: BTreeMap<Simplex, Role> = BTreeMap::new();
    let mut mark = |s: Simplex, role: Role| -> Result<()> {
        match r_roles.get(&s) {
            Some(old) if old.is_admissible() != role.is_admissible() => {
                internal(format!("simplex {s:?} is both {old} and {role}"))
            }
            Some(_) => Ok(()),
            None => {
                r_roles.insert(s, role);
                Ok(())
            }
        }
    };
    let mut tops: Vec<(Simplex, Role)> = Vec::new();

    mark(simplex(base.clone()), Role::Base)?;
    for u in 0..n {
        mark(without(u, &[dummy]), Role::DummyFace { excluded: g.id(u) })?;
    }
    for c in 1..=k as u32 {
        let mut vs = base.clone();
        vs.push(color_vertex(c));
        tops.push((simplex(vs), Role::Sigma { color: c }));
        for u in 0..n {
            let role = if g.color(u) == c {
                Role::Alpha {
                    color: c,
                    vertex: g.id(u),
                }
            } else {
                Role::Undesirable
            };
            mark(without(u, &[color_vertex(c)]), role)?;
        }
    }
    for v in 0..n {
        let i = g.color(v);
        for j in (1..=k as u32).filter(|&j| j != i) {
            let (ci, cj) = (color_vertex(i), color_vertex(j));
            tops.push((
                without(v, &[ci, cj]),
                Role::Tau {
                    color: i,
                    other: j,
                    vertex: g.id(v),
                },
            ));
            mark(without(v, &[cj]), Role::Undesirable)?;
            mark(
                without(v, &[ci]),
                Role::Alpha {
                    color: i,
                    vertex: g.id(v),
                },
            )?;
            for u in (0..n).filter(|&u| u != v) {
                let mut vs: Vec<Vertex> = base
                    .iter()
                    .copied()
                    .filter(|&w| w != v as Vertex && w != u as Vertex)
                    .collect();
                vs.extend([ci, cj]);
                let role = if g.color(u) == j && g.has_edge(u, v) {
                    beta_role(g, u, v)
                } else {
                    Role::Undesirable
                };
                mark(simplex(vs), role)?;
            }
        }
    }

    let undesirable: Vec<Simplex> = r_roles
        .iter()
        .filter(|(_, role)| role.is_undesirable())
        .map(|(s, _)| s.clone())
        .collect();
    for (w, omega) in undesirable.iter().enumerate() {
        for l in 0..m {
            let u = next;
            next += 1;
            names.insert(u, format!("u{l}/{w}"));
            let mut vs = omega.vertices().to_vec();
            vs.push(u);
            tops.push((simplex(vs), Role::Penalty));
        }
    }
    let expected = k + n * (k - 1) + m * undesirable.len();
    if tops.len() != expected {
        return internal(format!("generated {} top simplices, expected {expected}", tops.len()));
    }

    let window = Window::new(r.saturating_sub(1), r + 1)?;
    let top_simplices: Vec<Simplex> = tops.iter().map(|(s, _)| s.clone()).collect();
    let complex = Complex::build(&top_simplices, window, None)?;
    let zeta_simplices: Vec<Simplex> = r_roles
        .iter()
        .filter(|(_, role)| matches!(role, Role::Base | Role::DummyFace { .. }))
        .map(|(s, _)| s.clone())
        .collect();
    let zeta = Chain::from_simplices(&complex, r, &zeta_simplices)?;
    if !complex.is_cycle(&zeta)? {
        return internal("the generated input chain is not a cycle");
    }
    if complex.boundary_matrix(r + 1)?.solve(zeta.support())?.is_some() {
        return internal("the generated input cycle bounds");
    }

    let top_roles: HashMap<&Simplex, &Role> = tops.iter().map(|(s, role)| (s, role)).collect();
    let mut roles = BTreeMap::new();
    roles.insert(
        r,
        complex
            .simplices(r)
            .iter()
            .map(|s| r_roles.get(s).cloned().unwrap_or(Role::Inadmissible))
            .collect(),
    );
    roles.insert(
        r + 1,
        complex.simplices(r + 1).iter().map(|s| top_roles[s].clone()).collect(),
    );

    let parameter = binom2(k + 1) + 1;
    Ok(GadgetInstance {
        kind: GadgetKind::HittingSet,
        complex,
        input_chain: zeta,
        parameter,
        m,
        reference_m: (n as u64).pow(3),
        legend: Legend {
            vertex_names: names,
            roles,
        },
        warnings: penalty_warning(m, parameter),
    })
}

fn base_names(g: &ColoredGraph) -> BTreeMap<Vertex, String> {
    let n = g.vertex_count();
    let mut names: BTreeMap<Vertex, String> = (0..n).map(|i| (i as Vertex, format!("v{}", g.id(i)))).collect();
    for c in 1..=g.color_count() {
        names.insert((n + c - 1) as Vertex, format!("c{c}"));
    }
    names
}

/// Result of an S-subdivision of one simplex.
#[derive(Clone, Debug)]
pub struct SSubdivision {
    /// Vertices of the subdivided simplex, lowest first.
    pub original: Vec<Vertex>,
    /// Vertices added by the stellar subdivisions, in creation order.
    pub added: Vec<Vertex>,
    /// The top simplices of the subdivision.
    pub tops: Vec<Simplex>,
    /// The lexicographically highest top simplex at the end.
    pub distinguished: Simplex,
}

impl SSubdivision {
    /// Vertices sharing a top simplex with `v`, including `v`.
    pub fn star_vertices(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.tops
            .iter()
            .filter(|t| t.contains(v))
            .flat_map(|t| t.vertices().iter().copied())
            .collect()
    }

    /// Whether no vertex of the distinguished simplex has an original vertex in its star.
    pub fn star_avoids_original(&self) -> bool {
        self.distinguished
            .vertices()
            .iter()
            .all(|&v| self.star_vertices(v).iter().all(|w| !self.original.contains(w)))
    }

    pub fn complex(&self) -> Result<Complex> {
        Complex::build(&self.tops, Window::new(0, self.original.len() - 1)?, None)
    }
}

/// Subdivides the simplex on `order` (ranked lowest first) `2(d+1)` times,
/// each time taking a stellar subdivision of the lexicographically highest
/// top simplex with a new vertex ranked above all others. New vertices come
/// from `next` and must exceed every vertex of `order`, so ranks and ids agree.
pub fn s_subdivide_on(order: &[Vertex], next: &mut Vertex) -> Result<SSubdivision> {
    if order.len() < 2 {
        return input("S-subdivision needs a simplex of dimension at least 1");
    }
    if order.windows(2).any(|w| w[0] >= w[1]) || order.last().is_some_and(|&l| l >= *next) {
        return input("vertices must be increasing and below the next fresh vertex");
    }
    let d = order.len() - 1;
    let highest = |tops: &[Vec<Vertex>]| -> usize {
        (0..tops.len())
            .max_by(|&a, &b| tops[a].iter().rev().cmp(tops[b].iter().rev()))
            .expect("nonempty")
    };
    let mut tops: Vec<Vec<Vertex>> = vec![order.to_vec()];
    let mut added = Vec::with_capacity(2 * (d + 1));
    for _ in 0..2 * (d + 1) {
        let w = *next;
        *next += 1;
        added.push(w);
        let omega = tops.swap_remove(highest(&tops));
        for x in &omega {
            let mut t: Vec<Vertex> = omega.iter().copied().filter(|y| y != x).collect();
            t.push(w);
            tops.push(t);
        }
    }
    let distinguished = Simplex::new(tops[highest(&tops)].clone())?;
    let mut tops: Vec<Simplex> = tops.into_iter().map(Simplex::new).collect::<Result<_>>()?;
    tops.sort_unstable();
    Ok(SSubdivision {
        original: order.to_vec(),
        added,
        tops,
        distinguished,
    })
}

/// S-subdivision of the `d`-simplex on `0..=d`; new vertices are `d+1, d+2, ...`.
pub fn s_subdivide(d: usize) -> Result<SSubdivision> {
    let order: Vec<Vertex> = (0..=d as Vertex).collect();
    let mut next = d as Vertex + 1;
    s_subdivide_on(&order, &mut next)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Joins two classes, keeping the smaller representative.
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
    }
}

/// Builder state for L(G): top simplices with roles, plus the distinguished
/// copies waiting to be identified.
struct BntParts {
    next: Vertex,
    names: BTreeMap<Vertex, String>,
    tops: Vec<(Vec<Vertex>, Role)>,
    undesirable: Vec<Vec<Vertex>>,
    copies: BTreeMap<Role, Vec<Vec<Vertex>>>,
}

impl BntParts {
    fn fresh(&mut self, name: String) -> Vertex {
        let v = self.next;
        self.next += 1;
        self.names.insert(v, name);
        v
    }

    /// S-subdivides `face`; its distinguished simplex becomes a copy of `role`.
    fn subdivide(&mut self, face: Vec<Vertex>, role: Role, site: &str) -> Result<()> {
        let start = self.next;
        let sub = s_subdivide_on(&face, &mut self.next)?;
        for (i, v) in (start..self.next).enumerate() {
            self.names.insert(v, format!("s{i}@{site}/{role}"));
        }
        if !sub.star_avoids_original() {
            return internal("S-subdivision left the distinguished simplex touching the original vertices");
        }
        for t in &sub.tops {
            if *t != sub.distinguished {
                self.undesirable.push(t.vertices().to_vec());
                self.tops.push((t.vertices().to_vec(), Role::Undesirable));
            }
        }
        let d = sub.distinguished.vertices().to_vec();
        self.tops.push((d.clone(), role.clone()));
        self.copies.entry(role).or_default().push(d);
        Ok(())
    }

    fn plain(&mut self, face: Vec<Vertex>) {
        self.undesirable.push(face.clone());
        self.tops.push((face, Role::Undesirable));
    }
}

/// The boundary-nontrivialization complex L(G).
///
/// One manifold per color is built from the facets of `V + c` other than
/// `V`, and one sphere per vertex and foreign color from the boundary of a
/// fresh copy of `V - v + {color(v), c}`. Facets standing for `alpha` and
/// `beta` are S-subdivided, every other top simplex gets `m` penalty cones,
/// and the distinguished copies of each `alpha` and `beta` are identified.
/// The input cycle is the boundary of `V`.
pub fn gen_bnt_gadget(g: &ColoredGraph, m: usize) -> Result<GadgetInstance> {
    if m == 0 {
        return input("the penalty multiplicity must be at least 1");
    }
    let n = g.vertex_count();
    if n < 2 {
        return input("the boundary of a single vertex is zero; the graph needs at least two vertices");
    }
    let k = g.color_count();
    let r = n - 1;
    let color_vertex = |c: u32| n as Vertex + c - 1;
    let mut parts = BntParts {
        next: (n + k) as Vertex,
        names: base_names(g),
        tops: Vec::new(),
        undesirable: Vec::new(),
        copies: BTreeMap::new(),
    };

    for c in 1..=k as u32 {
        for u in 0..n {
            let mut face: Vec<Vertex> = (0..n as Vertex).filter(|&w| w != u as Vertex).collect();
            face.push(color_vertex(c));
            if g.color(u) == c {
                let role = Role::Alpha {
                    color: c,
                    vertex: g.id(u),
                };
                parts.subdivide(face, role, &format!("sigma{c}"))?;
            } else {
                parts.plain(face);
            }
        }
    }

    let mut t = 0usize;
    for i in 1..=k as u32 {
        for v in g.class(i) {
            for j in (1..=k as u32).filter(|&j| j != i) {
                t += 1;
                let mut copy: BTreeMap<usize, Vertex> = BTreeMap::new();
                for u in (0..n).filter(|&u| u != v) {
                    let id = parts.fresh(format!("v{}@t{t}", g.id(u)));
                    copy.insert(u, id);
                }
                let (lo, hi) = (i.min(j), i.max(j));
                let c_lo = parts.fresh(format!("c{lo}@t{t}"));
                let c_hi = parts.fresh(format!("c{hi}@t{t}"));
                let (ci, cj) = if i < j { (c_lo, c_hi) } else { (c_hi, c_lo) };
                let mut all: Vec<Vertex> = copy.values().copied().collect();
                all.extend([c_lo, c_hi]);
                let site = format!("t{t}");
                for &x in &all {
                    let face: Vec<Vertex> = all.iter().copied().filter(|&y| y != x).collect();
                    let original = copy.iter().find(|(_, &id)| id == x).map(|(&u, _)| u);
                    if x == cj {
                        parts.subdivide(
                            face,
                            Role::Alpha {
                                color: i,
                                vertex: g.id(v),
                            },
                            &site,
                        )?;
                    } else if let Some(u) = original.filter(|&u| g.color(u) == j && g.has_edge(u, v)) {
                        parts.subdivide(face, beta_role(g, u, v), &site)?;
                    } else {
                        debug_assert!(x == ci || original.is_some());
                        parts.plain(face);
                    }
                }
            }
        }
    }

    let undesirable = std::mem::take(&mut parts.undesirable);
    for (w, omega) in undesirable.iter().enumerate() {
        for l in 0..m {
            let u = parts.fresh(format!("u{l}/{w}"));
            for x in omega {
                let mut face: Vec<Vertex> = omega.iter().copied().filter(|y| y != x).collect();
                face.push(u);
                parts.tops.push((face, Role::Penalty));
            }
        }
    }

    let total = parts.next as usize;
    let mut uf = UnionFind::new(total);
    let mut merged = 0usize;
    for list in parts.copies.values() {
        merged += list.len() - 1;
        for other in &list[1..] {
            for (&a, &b) in list[0].iter().zip(other) {
                uf.union(a as usize, b as usize);
            }
        }
    }
    check_star_disjoint(&parts.tops, &mut uf, total)?;

    let mut images: BTreeMap<Simplex, Role> = BTreeMap::new();
    for (face, role) in &parts.tops {
        let mapped: Vec<Vertex> = face.iter().map(|&v| uf.find(v as usize) as Vertex).collect();
        let Ok(s) = Simplex::from_unsorted(mapped) else {
            return internal("identification collapsed a simplex");
        };
        if s.dim() != r {
            return internal("identification changed a simplex dimension");
        }
        if let Some(old) = images.insert(s, role.clone()) {
            if old != *role || !role.is_admissible() {
                return internal(format!("identification merged distinct simplices ({old} and {role})"));
            }
        }
    }
    if images.len() != parts.tops.len() - merged {
        return internal(format!(
            "{} simplices after identification, expected {}",
            images.len(),
            parts.tops.len() - merged
        ));
    }

    let mut names = parts.names;
    names.retain(|&v, _| uf.find(v as usize) == v as usize);
    let tops: Vec<Simplex> = images.keys().cloned().collect();
    let window = Window::new(r.saturating_sub(2), r)?;
    let complex = Complex::build(&tops, window, None)?;
    let base = simplex((0..n as Vertex).collect());
    let boundary: Vec<Simplex> = base.facets().collect();
    let zeta = Chain::from_simplices(&complex, r - 1, &boundary)?;
    let mut roles = BTreeMap::new();
    roles.insert(
        r,
        complex
            .simplices(r)
            .iter()
            .map(|s| images[s].clone())
            .collect::<Vec<_>>(),
    );

    let parameter = binom2(k + 1);
    Ok(GadgetInstance {
        kind: GadgetKind::Nontrivialization,
        complex,
        input_chain: zeta,
        parameter,
        m,
        reference_m: (n as u64).pow(3),
        legend: Legend {
            vertex_names: names,
            roles,
        },
        warnings: penalty_warning(m, parameter),
    })
}

/// Vertices identified with each other must have vertex-disjoint stars
/// before the identification.
fn check_star_disjoint(tops: &[(Vec<Vertex>, Role)], uf: &mut UnionFind, total: usize) -> Result<()> {
    let mut classes: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for v in 0..total {
        let rep = uf.find(v);
        if rep != v {
            classes
                .entry(rep)
                .or_insert_with(|| vec![rep as Vertex])
                .push(v as Vertex);
        }
    }
    let watched: HashSet<Vertex> = classes.values().flatten().copied().collect();
    let mut stars: HashMap<Vertex, BTreeSet<Vertex>> = HashMap::new();
    for (face, _) in tops {
        for v in face.iter().filter(|v| watched.contains(v)) {
            stars.entry(*v).or_default().extend(face.iter().copied());
        }
    }
    for members in classes.values() {
        for (a, b) in members.iter().tuple_combinations() {
            if !stars[a].is_disjoint(&stars[b]) {
                return internal(format!("vertices {a} and {b} are identified but their stars meet"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::{is_bnt_feasible, is_ths_feasible, PoolBntChecker, ThsRowChecker};
    use crate::fpt_ths::{solve_ths_fpt, FeasibilityRoute, FptConfig};

    fn edge_graph() -> ColoredGraph {
        ColoredGraph::new(&[(10, 1), (20, 2)], &[(10, 20)]).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(ColoredGraph::new(&[(1, 1), (2, 1)], &[(1, 2)]).is_err());
        assert!(ColoredGraph::new(&[(1, 1), (2, 3)], &[]).is_err());
        assert!(ColoredGraph::new(&[(1, 1), (1, 2)], &[]).is_err());
        assert!(ColoredGraph::new(&[(1, 1), (2, 2)], &[(1, 3)]).is_err());
        assert!(ColoredGraph::new(&[], &[]).is_err());
        let g = ColoredGraph::new(&[(5, 2), (3, 1), (4, 3)], &[(3, 5), (5, 4)]).unwrap();
        assert_eq!(g.id(0), 3);
        assert_eq!(g.color_count(), 3);
        assert!(find_multicolored_clique(&g).is_none());
        let tri = ColoredGraph::new(&[(1, 1), (2, 2), (3, 3)], &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(find_multicolored_clique(&tri), Some(vec![0, 1, 2]));
    }

    #[test]
    fn ths_gadget_on_an_edge() {
        let g = edge_graph();
        let gadget = gen_ths_gadget(&g, 5).unwrap();
        assert_eq!(gadget.parameter, 4);
        assert_eq!(gadget.complex.window(), Window { lo: 0, hi: 2 });
        assert_eq!(gadget.input_chain.len(), 3);
        // a=0 b=1 color1=2 color2=3 d=4
        let admissible: Vec<Vec<Vertex>> = gadget
            .admissible()
            .into_iter()
            .map(|i| gadget.complex.simplex(1, i).vertices().to_vec())
            .collect();
        assert_eq!(admissible, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
        let tops: Vec<String> = (0..gadget.complex.count(2))
            .filter_map(|i| gadget.legend.role(2, i))
            .filter(|r| !matches!(r, Role::Penalty))
            .map(ToString::to_string)
            .collect();
        assert_eq!(tops.len(), 4);
        let s = gadget.clique_solution(&g, &[0, 1]).unwrap();
        assert_eq!(s.len(), 4);
        assert!(
            is_ths_feasible(&gadget.complex, &gadget.input_chain, &s)
                .unwrap()
                .verdict
        );
        assert!(gadget.warnings.is_empty());
        assert_eq!(gen_ths_gadget(&g, 2).unwrap().warnings.len(), 1);
    }

    #[test]
    fn ths_gadget_without_an_edge() {
        let g = ColoredGraph::new(&[(1, 1), (2, 2)], &[]).unwrap();
        let gadget = gen_ths_gadget(&g, 6).unwrap();
        let config = FptConfig {
            candidates: Some(gadget.admissible_mask()),
            route: FeasibilityRoute::RestrictedRows,
            ..FptConfig::new(gadget.parameter)
        };
        let out = solve_ths_fpt(&gadget.complex, &gadget.input_chain, &config).unwrap();
        assert!(out.solution.is_none());
        assert!(verify_gadget_answer(&g, &gadget, None));
    }

    #[test]
    fn ths_gadget_single_vertex() {
        let g = ColoredGraph::new(&[(7, 1)], &[]).unwrap();
        let gadget = gen_ths_gadget(&g, 3).unwrap();
        assert_eq!(gadget.parameter, 2);
        let s = gadget.clique_solution(&g, &[0]).unwrap();
        let rows = ThsRowChecker::new(&gadget.complex, &gadget.input_chain).unwrap();
        assert!(rows.is_feasible(&s.indices()));
        assert!(verify_gadget_answer(&g, &gadget, Some(&s)));
    }

    #[test]
    fn s_subdivision_counts() {
        for d in 1..=4usize {
            let sub = s_subdivide(d).unwrap();
            assert_eq!(sub.tops.len(), 2 * d * (d + 1) + 1);
            assert_eq!(sub.added.len(), 2 * (d + 1));
            let k = sub.complex().unwrap();
            assert_eq!(k.count(0), 3 * (d + 1));
            let top: Vec<Vertex> = (2 * (d as Vertex + 1)..3 * (d as Vertex + 1)).collect();
            assert_eq!(sub.distinguished.vertices(), top.as_slice());
            assert!(sub.star_avoids_original());
        }
        assert!(s_subdivide(0).is_err());
    }

    #[test]
    fn bnt_gadget_on_an_edge() {
        let g = edge_graph();
        let gadget = gen_bnt_gadget(&g, 5).unwrap();
        assert_eq!(gadget.parameter, 3);
        assert_eq!(gadget.solution_dim(), 1);
        let (k, zeta) = (&gadget.complex, &gadget.input_chain);
        let admissible = gadget.admissible();
        assert_eq!(admissible.len(), 3);
        let s = gadget.clique_solution(&g, &[0, 1]).unwrap();
        assert_eq!(s.indices(), admissible);
        assert!(is_bnt_feasible(k, zeta, &s).unwrap().verdict);
        let pool = PoolBntChecker::new(k, zeta, &admissible).unwrap();
        assert!(pool.is_feasible(&admissible).unwrap());
        for drop in 0..3 {
            let fewer: Vec<usize> = admissible.iter().copied().filter(|&i| i != admissible[drop]).collect();
            let dense = is_bnt_feasible(k, zeta, &Chain::from_indices(k, 1, &fewer).unwrap()).unwrap();
            assert_eq!(pool.is_feasible(&fewer).unwrap(), dense.verdict);
            assert!(!dense.verdict);
        }
        // each color manifold: 4 undesirable edges from its subdivided facet and
        // 1 plain edge; each sphere: 4 + 4 from two subdivided facets and 1 plain
        let penalties = gadget.legend.roles[&1].iter().filter(|r| **r == Role::Penalty).count();
        let undesirable = gadget.legend.roles[&1]
            .iter()
            .filter(|r| **r == Role::Undesirable)
            .count();
        assert_eq!(penalties, undesirable * 5 * 2);
        assert_eq!(undesirable, 2 * (4 + 1) + 2 * (4 + 4 + 1));
        assert!(gen_bnt_gadget(&ColoredGraph::new(&[(1, 1)], &[]).unwrap(), 3).is_err());
    }
}
