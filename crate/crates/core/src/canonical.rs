//! Deterministic named complexes used as fixtures and by the `gen` command.

use crate::complex::{Chain, Complex, Simplex, Vertex, Window};
use crate::error::{input, Result};
use crate::homology::{homology_basis, min_homology_basis};

/// A generated complex with an optional distinguished chain.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub name: String,
    pub complex: Complex,
    pub cycle: Option<Chain>,
}

pub const NAMES: &[&str] = &[
    "tetra-sphere",
    "octa-sphere",
    "csaszar-torus",
    "genus-g",
    "annulus",
    "component-graph",
    "planar-holes",
];

fn tri(a: Vertex, b: Vertex, c: Vertex) -> Simplex {
    Simplex::from_unsorted(vec![a, b, c]).expect("distinct vertices")
}

fn edge(a: Vertex, b: Vertex) -> Simplex {
    Simplex::from_unsorted(vec![a, b]).expect("distinct vertices")
}

fn surface(tops: &[Simplex]) -> Complex {
    Complex::build(tops, Window { lo: 0, hi: 2 }, None).expect("valid triangulation")
}

fn cycle_through(k: &Complex, vertices: &[Vertex]) -> Chain {
    let edges: Vec<Simplex> = (0..vertices.len())
        .map(|i| edge(vertices[i], vertices[(i + 1) % vertices.len()]))
        .collect();
    Chain::from_simplices(k, 1, &edges).expect("cycle edges exist")
}

/// Boundary of a tetrahedron; the chain is the boundary of triangle `0 1 2`.
pub fn tetra_sphere() -> Canonical {
    let k = surface(&[tri(0, 1, 2), tri(0, 1, 3), tri(0, 2, 3), tri(1, 2, 3)]);
    let cycle = cycle_through(&k, &[0, 1, 2]);
    Canonical {
        name: "tetra-sphere".into(),
        complex: k,
        cycle: Some(cycle),
    }
}

/// Octahedron with poles 0 and 5; the chain is the equator `1 2 3 4`.
pub fn octa_sphere() -> Canonical {
    let mut tops = Vec::new();
    for i in 0..4u32 {
        let a = 1 + i;
        let b = 1 + (i + 1) % 4;
        tops.push(tri(0, a, b));
        tops.push(tri(5, a, b));
    }
    let k = surface(&tops);
    let cycle = cycle_through(&k, &[1, 2, 3, 4]);
    Canonical {
        name: "octa-sphere".into(),
        complex: k,
        cycle: Some(cycle),
    }
}

fn csaszar_triangles() -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for i in 0..7u32 {
        out.push([i, (i + 1) % 7, (i + 3) % 7]);
        out.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    out
}

/// A nontrivial 1-cycle: the triangle loop `0 1 2` when it is nontrivial,
/// otherwise the first element of a minimum homology basis.
fn nontrivial_cycle(k: &Complex, preferred: &[Vertex]) -> Option<Chain> {
    let basis = homology_basis(k, 1).ok()?;
    if basis.rank() == 0 {
        return None;
    }
    let edges: Vec<Simplex> = (0..preferred.len())
        .map(|i| edge(preferred[i], preferred[(i + 1) % preferred.len()]))
        .collect();
    if let Ok(c) = Chain::from_simplices(k, 1, &edges) {
        if basis.is_bounding(&c) == Ok(false) {
            return Some(c);
        }
    }
    min_homology_basis(k, false).ok()?.into_iter().next().map(|w| w.cochain)
}

/// The seven-vertex torus.
pub fn csaszar_torus() -> Canonical {
    let tops: Vec<Simplex> = csaszar_triangles().iter().map(|t| tri(t[0], t[1], t[2])).collect();
    let k = surface(&tops);
    let cycle = nontrivial_cycle(&k, &[0, 1, 2]);
    Canonical {
        name: "csaszar-torus".into(),
        complex: k,
        cycle,
    }
}

/// Orientable closed surface of genus `g >= 1`, a chain of seven-vertex tori
/// joined along triangles `2 4 5` and `0 1 3` of consecutive copies.
pub fn genus(g: usize) -> Result<Canonical> {
    if g == 0 {
        return Ok(Canonical {
            name: "genus-0".into(),
            ..tetra_sphere()
        });
    }
    let base = csaszar_triangles();
    let mut tops = Vec::new();
    let mut prev: Option<[Vertex; 7]> = None;
    let mut next_id: Vertex = 0;
    for j in 0..g {
        let mut ids = [0 as Vertex; 7];
        for (v, id) in ids.iter_mut().enumerate() {
            *id = match (prev, v) {
                (Some(p), 0) => p[2],
                (Some(p), 1) => p[4],
                (Some(p), 3) => p[5],
                _ => {
                    next_id += 1;
                    next_id - 1
                }
            };
        }
        for t in &base {
            let mut s = *t;
            s.sort_unstable();
            if j > 0 && s == [0, 1, 3] {
                continue;
            }
            if j + 1 < g && s == [2, 4, 5] {
                continue;
            }
            tops.push(tri(ids[t[0] as usize], ids[t[1] as usize], ids[t[2] as usize]));
        }
        prev = Some(ids);
    }
    let k = surface(&tops);
    let cycle = nontrivial_cycle(&k, &[0, 1, 2]);
    Ok(Canonical {
        name: format!("genus-{g}"),
        complex: k,
        cycle,
    })
}

/// Triangulated annulus: inner triangle `0 1 2`, outer hexagon `3..=8`.
/// The chain is the inner boundary.
pub fn annulus() -> Canonical {
    let a = |i: u32| i % 3;
    let o = |i: u32| 3 + i % 6;
    let mut tops = Vec::new();
    for i in 0..3u32 {
        tops.push(tri(a(i), o(2 * i), o(2 * i + 1)));
        tops.push(tri(a(i), o(2 * i + 1), a(i + 1)));
        tops.push(tri(a(i + 1), o(2 * i + 1), o(2 * i + 2)));
    }
    let k = surface(&tops);
    let cycle = cycle_through(&k, &[0, 1, 2]);
    Canonical {
        name: "annulus".into(),
        complex: k,
        cycle: Some(cycle),
    }
}

/// A graph with three components of 3, 4 and 5 vertices; the chain is
/// vertex 4 of the four-vertex component.
pub fn component_graph() -> Canonical {
    let edges = [
        (1, 2),
        (1, 3),
        (4, 7),
        (6, 5),
        (4, 5),
        (6, 7),
        (8, 10),
        (8, 11),
        (9, 11),
        (9, 12),
        (10, 9),
        (12, 8),
    ];
    let tops: Vec<Simplex> = edges.iter().map(|&(a, b)| edge(a, b)).collect();
    let k = Complex::build(&tops, Window { lo: 0, hi: 1 }, None).expect("valid graph");
    let v4 = Simplex::new(vec![4]).expect("vertex");
    let cycle = Chain::from_simplices(&k, 0, &[v4]).expect("vertex present");
    Canonical {
        name: "component-graph".into(),
        complex: k,
        cycle: Some(cycle),
    }
}

/// A planar disk with a hexagonal hole, built from three concentric hexagons
/// (`0..6` inner, `6..12` middle, `12..18` outer). One segment of the outer
/// band is left out, so the narrowest cut around the hole has three edges.
/// The chain is the hole boundary.
pub fn planar_holes() -> Canonical {
    let ring = |r: u32, i: u32| 6 * r + i % 6;
    let mut tops = Vec::new();
    for layer in 0..2u32 {
        for i in 0..6u32 {
            if layer == 1 && i == 0 {
                continue;
            }
            let (x0, x1) = (ring(layer, i), ring(layer, i + 1));
            let (y0, y1) = (ring(layer + 1, i), ring(layer + 1, i + 1));
            tops.push(tri(x0, x1, y0));
            tops.push(tri(x1, y0, y1));
        }
    }
    let k = surface(&tops);
    let cycle = cycle_through(&k, &[0, 1, 2, 3, 4, 5]);
    Canonical {
        name: "planar-holes".into(),
        complex: k,
        cycle: Some(cycle),
    }
}

/// Looks up a generator by name. `genus` is only used by `genus-g`.
pub fn by_name(name: &str, genus_param: usize) -> Result<Canonical> {
    Ok(match name {
        "tetra-sphere" => tetra_sphere(),
        "octa-sphere" => octa_sphere(),
        "csaszar-torus" => csaszar_torus(),
        "genus-g" => genus(genus_param)?,
        "annulus" => annulus(),
        "component-graph" => component_graph(),
        "planar-holes" => planar_holes(),
        other => {
            return input(format!(
                "unknown complex {other:?}; expected one of {}",
                NAMES.join(", ")
            ))
        }
    })
}
