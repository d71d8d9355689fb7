//! Line-oriented text formats.
//!
//! `.scx` describes a complex:
//!
//! ```text
//! # tetrahedron boundary
//! dim 2
//! window 0 2
//! top 0 1 2
//! simplex 2 0 1 3
//! weight 0 1 5
//! ```
//!
//! `dim` is the dimension of the complex and defaults to the largest listed
//! simplex. `window` defaults to `0 dim`; a `dim` above the window means
//! higher simplices exist but are not stored. `top` lists a generating
//! simplex, `simplex d ...` does the same with its dimension spelled out, and
//! `weight u v w` sets an edge weight (unlisted edges weigh 1).
//!
//! `.chn` holds a chain: a `chain <dim>` header, then one simplex per line.
//! `.cg` holds a colored graph: `vertex <id> <color>` and `edge <u> <v>` lines.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::complex::{Chain, Complex, Simplex, Vertex, Window};
use crate::error::{input, Result};
use crate::gadgets::ColoredGraph;

/// Non-empty, non-comment lines with their 1-based numbers, split into words.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn number<T: FromStr>(line: usize, word: &str) -> Result<T> {
    word.parse()
        .or_else(|_| input(format!("line {line}: expected a non-negative integer, found {word:?}")))
}

fn numbers<T: FromStr>(line: usize, words: &[&str]) -> Result<Vec<T>> {
    words.iter().map(|w| number(line, w)).collect()
}

fn simplex_at(line: usize, vertices: Vec<Vertex>) -> Result<Simplex> {
    if vertices.is_empty() {
        return input(format!("line {line}: a simplex needs at least one vertex"));
    }
    Simplex::from_unsorted(vertices).or_else(|e| input(format!("line {line}: {e}")))
}

fn arity(line: usize, words: &[&str], n: usize) -> Result<()> {
    if words.len() != n {
        return input(format!("line {line}: `{}` takes {} arguments", words[0], n - 1));
    }
    Ok(())
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    let mut dim: Option<usize> = None;
    let mut window: Option<(usize, usize, usize)> = None;
    let mut tops: Vec<(usize, Simplex)> = Vec::new();
    let mut weights = Vec::new();
    for (line, words) in lines(text) {
        match words[0] {
            "dim" => {
                arity(line, &words, 2)?;
                if dim.is_some() {
                    return input(format!("line {line}: repeated `dim`"));
                }
                dim = Some(number(line, words[1])?);
            }
            "window" => {
                arity(line, &words, 3)?;
                if window.is_some() {
                    return input(format!("line {line}: repeated `window`"));
                }
                window = Some((line, number(line, words[1])?, number(line, words[2])?));
            }
            "top" => tops.push((line, simplex_at(line, numbers(line, &words[1..])?)?)),
            "simplex" => {
                if words.len() < 2 {
                    return input(format!("line {line}: `simplex` needs a dimension"));
                }
                let d: usize = number(line, words[1])?;
                let s = simplex_at(line, numbers(line, &words[2..])?)?;
                if s.dim() != d {
                    return input(format!(
                        "line {line}: declared dimension {d} but {} vertices",
                        s.dim() + 1
                    ));
                }
                tops.push((line, s));
            }
            "weight" => {
                arity(line, &words, 4)?;
                let (a, b): (Vertex, Vertex) = (number(line, words[1])?, number(line, words[2])?);
                weights.push((line, a, b, number(line, words[3])?));
            }
            other => return input(format!("line {line}: unknown keyword {other:?}")),
        }
    }
    let top_dim = tops.iter().map(|(_, s)| s.dim()).max();
    let dim = match (dim, top_dim) {
        (Some(d), Some(t)) if t > d => {
            let line = tops.iter().find(|(_, s)| s.dim() > d).map_or(0, |(l, _)| *l);
            return input(format!("line {line}: simplex of dimension {t} exceeds `dim {d}`"));
        }
        (Some(d), _) => d,
        (None, Some(t)) => t,
        (None, None) => return input("the complex lists no simplices and no `dim`"),
    };
    let (lo, hi) = match window {
        Some((line, lo, hi)) => {
            if lo > hi || hi > dim {
                return input(format!("line {line}: window {lo} {hi} is not inside 0..={dim}"));
            }
            (lo, hi)
        }
        None => (0, dim),
    };
    for (line, s) in &tops {
        if s.dim() < lo || s.dim() > hi {
            return input(format!(
                "line {line}: simplex of dimension {} lies outside the window {lo} {hi}",
                s.dim()
            ));
        }
    }
    let simplices: Vec<Simplex> = tops.into_iter().map(|(_, s)| s).collect();
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = simplices.iter().find(|s| !seen.insert(*s)) {
        return input(format!("duplicate simplex {:?}", dup.vertices()));
    }
    let ws: Vec<(Vertex, Vertex, u64)> = weights.iter().map(|&(_, a, b, w)| (a, b, w)).collect();
    let mut k = Complex::build(
        &simplices,
        Window::new(lo, hi)?,
        (!ws.is_empty()).then_some(ws.as_slice()),
    )?;
    if dim > hi {
        k.mark_truncated_above();
    }
    Ok(k)
}

fn join(vs: &[Vertex]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Canonical text for `k`: maximal stored simplices in index order, then
/// every edge weight if the complex is weighted.
pub fn emit_complex(k: &Complex) -> String {
    let mut out = String::new();
    let dim = if k.is_truncated_above() { k.hi() + 1 } else { k.hi() };
    let _ = writeln!(out, "dim {dim}");
    let _ = writeln!(out, "window {} {}", k.lo(), k.hi());
    for s in k.maximal_simplices() {
        let _ = writeln!(out, "top {}", join(s.vertices()));
    }
    if k.is_weighted() {
        for (e, s) in k.simplices(1).iter().enumerate() {
            let v = s.vertices();
            let _ = writeln!(out, "weight {} {} {}", v[0], v[1], k.edge_weight(e));
        }
    }
    out
}

pub fn parse_chain(text: &str, k: &Complex) -> Result<Chain> {
    let mut it = lines(text);
    let Some((line, header)) = it.next() else {
        return input("empty chain file; expected `chain <dim>`");
    };
    if header[0] != "chain" || header.len() != 2 {
        return input(format!("line {line}: expected `chain <dim>`"));
    }
    let dim: usize = number(line, header[1])?;
    if !k.window().contains(dim) {
        return input(format!(
            "line {line}: dimension {dim} is outside the window {} {}",
            k.lo(),
            k.hi()
        ));
    }
    let mut indices = Vec::new();
    for (line, words) in it {
        let s = simplex_at(line, numbers(line, &words)?)?;
        if s.dim() != dim {
            return input(format!("line {line}: expected a {dim}-simplex"));
        }
        match k.index_of(&s) {
            Some(i) => indices.push(i),
            None => return input(format!("line {line}: simplex {:?} is not in the complex", s.vertices())),
        }
    }
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return input("a simplex is listed twice in the chain");
    }
    Chain::from_indices(k, dim, &indices)
}

pub fn emit_chain(c: &Chain, k: &Complex) -> String {
    let mut out = format!("chain {}\n", c.dim());
    for s in c.simplices(k) {
        let _ = writeln!(out, "{}", join(s.vertices()));
    }
    out
}

pub fn parse_colored_graph(text: &str) -> Result<ColoredGraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (line, words) in lines(text) {
        match words[0] {
            "vertex" => {
                arity(line, &words, 3)?;
                vertices.push((number(line, words[1])?, number(line, words[2])?));
            }
            "edge" => {
                arity(line, &words, 3)?;
                edges.push((number(line, words[1])?, number(line, words[2])?));
            }
            other => return input(format!("line {line}: unknown keyword {other:?}")),
        }
    }
    ColoredGraph::new(&vertices, &edges)
}

pub fn emit_colored_graph(g: &ColoredGraph) -> String {
    let mut out = String::new();
    for (id, color) in g.vertices() {
        let _ = writeln!(out, "vertex {id} {color}");
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "edge {} {}", g.id(a), g.id(b));
    }
    out
}
