//! End-to-end acceptance checks. Each criterion prints one pass/fail line;
//! the process exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z2cut::bnt_greedy::{solve_bnt_greedy, BntConfig};
use z2cut::canonical::{self, Canonical};
use z2cut::complex::{evaluate, Chain, Complex, Simplex, Window};
use z2cut::feasibility::{
    is_bnt_feasible, is_global_bnt_solution, is_global_ths_solution, is_ths_feasible, PoolBntChecker, ThsRowChecker,
};
use z2cut::fpt_ths::{solve_ths_fpt, FeasibilityRoute, FptConfig};
use z2cut::gadgets::{
    find_multicolored_clique, gen_bnt_gadget, gen_ths_gadget, s_subdivide, verify_gadget_answer, ColoredGraph,
};
use z2cut::gf2::{Gf2Matrix, Gf2Vector};
use z2cut::global_rand::{solve_global_bnt, solve_global_ths};
use z2cut::homology::{homology_basis, min_cohomology_basis, min_homology_basis};
use z2cut::oracle::{
    brute_bnt, brute_min_homology_basis_weight, brute_ths, enumerate_boundary_chains, enumerate_homologous,
    OracleBudget,
};
use z2cut::surface_ths::{classify_cocycle, is_connected_cocycle, solve_ths_surface, CocycleClass};

type Outcome = Result<String, String>;

/// Name, `(id, color)` vertices, edges, and whether a multicolored clique exists.
type GraphFixture = (&'static str, Vec<(u32, u32)>, Vec<(u32, u32)>, bool);

/// Criterion number, check, and time limit.
type Criterion = (usize, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: z2cut::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn budget() -> OracleBudget {
    OracleBudget::default()
}

fn rows_config(k: usize) -> FptConfig {
    FptConfig {
        route: FeasibilityRoute::RestrictedRows,
        ..FptConfig::new(k)
    }
}

fn cycle(c: &Canonical) -> Result<Chain, String> {
    c.cycle
        .clone()
        .ok_or_else(|| format!("{} has no distinguished chain", c.name))
}

fn random_chain(k: &Complex, dim: usize, rng: &mut ChaCha8Rng, density: f64) -> Chain {
    let bits: Vec<bool> = (0..k.count(dim)).map(|_| rng.random_bool(density)).collect();
    Chain::new(dim, Gf2Vector::from_bools(&bits))
}

/// `zeta` plus the boundary of a random `(r+1)`-chain.
fn perturb(k: &Complex, zeta: &Chain, rng: &mut ChaCha8Rng) -> Result<Chain, String> {
    if zeta.dim() >= k.hi() {
        return Ok(zeta.clone());
    }
    let b = ok(k.boundary(&random_chain(k, zeta.dim() + 1, rng, 0.5)))?;
    ok(zeta.add(&b))
}

/// One representative per nonzero class of `H_r`.
fn class_representatives(k: &Complex, r: usize) -> Result<Vec<Chain>, String> {
    let basis = ok(homology_basis(k, r))?;
    let gens = basis.cycles();
    let mut out = Vec::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut z = ok(Chain::zero(k, r))?;
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                z = ok(z.add(g))?;
            }
        }
        out.push(z);
    }
    Ok(out)
}

fn graph_complex(edges: &[(u32, u32)]) -> Complex {
    let tops: Vec<Simplex> = edges
        .iter()
        .map(|&(a, b)| Simplex::from_unsorted(vec![a, b]).unwrap())
        .collect();
    Complex::build(&tops, Window::new(0, 1).unwrap(), None).unwrap()
}

/// Triangle `0 1 2` with `apexes` cones over its boundary: a wedge of
/// `apexes` spheres sharing one disk.
fn stacked_spheres(apexes: u32) -> Complex {
    let mut tops = vec![Simplex::new(vec![0, 1, 2]).unwrap()];
    for a in 3..3 + apexes {
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            tops.push(Simplex::new(vec![x, y, a]).unwrap());
        }
    }
    Complex::build(&tops, Window::new(0, 2).unwrap(), None).unwrap()
}

/// Optimum found by the oracle, certified by failure one size below.
fn brute_ths_optimum(k: &Complex, zeta: &Chain, kmax: usize) -> Result<Option<usize>, String> {
    let Some(s) = ok(brute_ths(k, zeta, kmax, &budget(), true))?.solution else {
        return Ok(None);
    };
    Ok(Some(s.len()))
}

fn criterion_1() -> Outcome {
    let c = canonical::component_graph();
    let (k, z) = (&c.complex, cycle(&c)?);
    let fpt = ok(solve_ths_fpt(k, &z, &FptConfig::new(4)))?;
    let size = fpt.solution.as_ref().map(Chain::len);
    ensure!(size == Some(4), "solve_ths_fpt(k=4) returned {size:?}");
    let brute = brute_ths_optimum(k, &z, 4)?;
    ensure!(brute == Some(4), "brute_ths returned {brute:?}");
    ensure!(
        ok(solve_ths_fpt(k, &z, &FptConfig::new(3)))?.solution.is_none(),
        "k=3 found a solution"
    );
    ensure!(
        brute_ths_optimum(k, &z, 3)?.is_none(),
        "brute_ths found a set of size 3"
    );
    Ok("optimum 4, k=3 infeasible".into())
}

fn criterion_2() -> Outcome {
    for c in [canonical::tetra_sphere(), canonical::octa_sphere()] {
        let (k, z) = (&c.complex, cycle(&c)?);
        let brute = ok(brute_bnt(k, &z, 4, &budget(), true))?.solution.map(|s| s.len());
        ensure!(brute == Some(2), "{}: brute_bnt optimum {brute:?}", c.name);
        let greedy = ok(solve_bnt_greedy(k, &z, &BntConfig::default()))?;
        ensure!(
            greedy.solution.len() == 2,
            "{}: greedy size {}",
            c.name,
            greedy.solution.len()
        );
        ensure!(
            ok(is_bnt_feasible(k, &z, &greedy.solution))?.verdict,
            "{}: greedy infeasible",
            c.name
        );
    }
    Ok("both spheres: optimum 2, greedy 2".into())
}

fn criterion_3() -> Outcome {
    let c = canonical::planar_holes();
    let (k, z) = (&c.complex, cycle(&c)?);
    let opt = brute_ths_optimum(k, &z, 3)?;
    ensure!(opt == Some(3), "brute_ths optimum {opt:?}");
    ensure!(brute_ths_optimum(k, &z, 2)?.is_none(), "a 2-edge cut exists");
    Ok("optimum 3".into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for c in [canonical::csaszar_torus(), ok(canonical::genus(2))?] {
        let k = &c.complex;
        for class in class_representatives(k, 1)? {
            let reps = [
                class.clone(),
                perturb(k, &class, &mut rng)?,
                perturb(k, &class, &mut rng)?,
            ];
            let first = ok(solve_ths_surface(k, &reps[0], false))?;
            let w = first.weight as usize;
            let opt = brute_ths_optimum(k, &class, w)?;
            ensure!(opt == Some(w), "{}: surface weight {w}, brute {opt:?}", c.name);
            ensure!(
                brute_ths_optimum(k, &class, w - 1)?.is_none(),
                "{}: brute beats weight {w}",
                c.name
            );
            for z in &reps {
                let out = ok(solve_ths_surface(k, z, true))?;
                let eta = &out.solution;
                ensure!(out.weight as usize == w, "{}: representative changed weight", c.name);
                ensure!(
                    ok(classify_cocycle(k, eta))? == CocycleClass::Nontrivial,
                    "{}: output is not a nontrivial cocycle",
                    c.name
                );
                ensure!(
                    ok(is_connected_cocycle(k, eta))?,
                    "{}: output cocycle is disconnected",
                    c.name
                );
                ensure!(ok(is_ths_feasible(k, z, eta))?.verdict, "{}: output infeasible", c.name);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} representatives"))
}

/// Complexes whose upper boundary rank is at most 10, with the dimension of
/// the cycles to test.
fn small_rank_complexes() -> Vec<(String, Complex, usize)> {
    let tetra = canonical::tetra_sphere().complex;
    vec![
        ("component-graph".into(), canonical::component_graph().complex, 0),
        ("annulus".into(), canonical::annulus().complex, 1),
        ("tetra-sphere".into(), tetra.clone(), 2),
        ("octa-sphere".into(), canonical::octa_sphere().complex, 2),
        ("stacked-spheres-4".into(), stacked_spheres(4), 2),
        (
            "k4-graph".into(),
            graph_complex(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            1,
        ),
        (
            "theta-with-tail".into(),
            graph_complex(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (3, 4), (4, 5)]),
            0,
        ),
    ]
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0;
    for (name, k, r) in small_rank_complexes() {
        let rank = if r < k.hi() {
            ok(k.boundary_matrix(r + 1))?.rank()
        } else {
            0
        };
        ensure!(rank <= 10, "{name}: rank {rank}");
        let basis = ok(homology_basis(&k, r))?;
        ensure!(basis.rank() > 0, "{name}: H_{r} is trivial");
        for _ in 0..100 {
            let coords: Vec<bool> = loop {
                let v: Vec<bool> = (0..basis.rank()).map(|_| rng.random()).collect();
                if v.iter().any(|&b| b) {
                    break v;
                }
            };
            let mut z = ok(Chain::zero(&k, r))?;
            for (i, g) in basis.cycles().iter().enumerate() {
                if coords[i] {
                    z = ok(z.add(g))?;
                }
            }
            let z = perturb(&k, &z, &mut rng)?;
            let density = rng.random_range(0.05..0.6);
            let s = random_chain(&k, r, &mut rng, density);
            let reps = ok(enumerate_homologous(&k, &z, &budget()))?;
            let literal = reps.iter().all(|c| c.support().intersects(s.support()));
            let verdict = ok(is_ths_feasible(&k, &z, &s))?.verdict;
            ensure!(
                verdict == literal,
                "{name}: colspace {verdict} vs enumeration {literal}"
            );
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, zero disagreements"))
}

/// Connected cocycles drawn from cohomology generators, vertex stars and
/// their sums.
fn cocycle_pool(k: &Complex, rng: &mut ChaCha8Rng) -> Result<Vec<Chain>, String> {
    let gens: Vec<Chain> = ok(min_cohomology_basis(k, false))?
        .into_iter()
        .map(|w| w.cochain)
        .collect();
    let stars: Vec<Chain> = (0..k.count(0))
        .map(|v| k.coboundary(&Chain::from_indices(k, 0, &[v]).unwrap()))
        .collect::<z2cut::Result<_>>()
        .map_err(|e| e.to_string())?;
    let mut candidates = gens.clone();
    candidates.extend(stars.iter().cloned());
    for g in &gens {
        for s in stars.iter().take(6) {
            candidates.push(ok(g.add(s))?);
        }
    }
    for _ in 0..40 {
        let mut c = gens[rng.random_range(0..gens.len())].clone();
        for _ in 0..rng.random_range(0..3) {
            c = ok(c.add(&stars[rng.random_range(0..stars.len())]))?;
        }
        candidates.push(c);
    }
    let mut pool = Vec::new();
    for c in candidates {
        if ok(is_connected_cocycle(k, &c))? && !pool.contains(&c) {
            pool.push(c);
        }
    }
    Ok(pool)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut cocycles, mut evaluations) = (0, 0);
    for c in [canonical::csaszar_torus(), ok(canonical::genus(2))?] {
        let k = &c.complex;
        let pool = cocycle_pool(k, &mut rng)?;
        ensure!(
            pool.len() >= 10,
            "{}: pool has only {} connected cocycles",
            c.name,
            pool.len()
        );
        let classes = class_representatives(k, 1)?;
        for eta in &pool {
            for z in classes.iter().take(3) {
                let constant = ok(evaluate(eta, z))?;
                for _ in 0..200 {
                    let moved = perturb(k, z, &mut rng)?;
                    ensure!(ok(evaluate(eta, &moved))? == constant, "{}: evaluation changed", c.name);
                    evaluations += 1;
                }
                let feasible = ok(is_ths_feasible(k, z, eta))?.verdict;
                ensure!(
                    constant == feasible,
                    "{}: evaluation {constant} but feasibility {feasible}",
                    c.name
                );
            }
            cocycles += 1;
        }
    }
    Ok(format!(
        "{cocycles} cocycles, {evaluations} evaluations, zero violations"
    ))
}

struct FptCase {
    name: String,
    complex: Complex,
    cycle: Chain,
    k: usize,
}

fn fpt_cases() -> Result<Vec<FptCase>, String> {
    let mut cases = Vec::new();
    let mut add = |name: &str, complex: &Complex, cycle: &Chain, ks: &[usize]| {
        for &k in ks {
            cases.push(FptCase {
                name: format!("{name} k={k}"),
                complex: complex.clone(),
                cycle: cycle.clone(),
                k,
            });
        }
    };
    let cg = canonical::component_graph();
    add("component-graph", &cg.complex, &cycle(&cg)?, &[1, 3, 4, 5]);
    let theta = graph_complex(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (3, 4), (4, 5)]);
    for (i, z) in class_representatives(&theta, 1)?.iter().enumerate() {
        add(&format!("theta class {i}"), &theta, z, &[1, 2]);
    }
    let k4 = graph_complex(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    for (i, z) in class_representatives(&k4, 1)?.iter().take(4).enumerate() {
        add(&format!("k4 class {i}"), &k4, z, &[1, 2]);
    }
    let annulus = canonical::annulus();
    add("annulus", &annulus.complex, &cycle(&annulus)?, &[2, 3]);
    let planar = canonical::planar_holes();
    add("planar-holes", &planar.complex, &cycle(&planar)?, &[2, 3]);
    let torus = canonical::csaszar_torus().complex;
    for (i, z) in class_representatives(&torus, 1)?.iter().enumerate() {
        add(&format!("torus class {i}"), &torus, z, &[5, 6]);
    }
    for (name, vertices, edges) in [
        ("edge", vec![(1, 1), (2, 2)], vec![(1, 2)]),
        ("no edge", vec![(1, 1), (2, 2)], vec![]),
    ] {
        let g = ok(ColoredGraph::new(&vertices, &edges))?;
        let gadget = ok(gen_ths_gadget(&g, 6))?;
        let p = gadget.parameter;
        add(
            &format!("ths gadget ({name})"),
            &gadget.complex,
            &gadget.input_chain,
            &[p - 1, p],
        );
    }
    Ok(cases)
}

fn criterion_7() -> Outcome {
    let cases = fpt_cases()?;
    ensure!(cases.len() >= 30, "only {} instances", cases.len());
    for case in &cases {
        let out = ok(solve_ths_fpt(&case.complex, &case.cycle, &rows_config(case.k)))?;
        let brute = brute_ths_optimum(&case.complex, &case.cycle, case.k)?;
        let fpt = out.solution.as_ref().map(Chain::len);
        ensure!(fpt == brute, "{}: fpt {fpt:?} vs brute {brute:?}", case.name);
        let worst = out.stats.per_center.iter().max().copied().unwrap_or(0);
        ensure!(
            u128::from(worst) <= out.stats.envelope,
            "{}: {worst} candidates at one center, envelope {}",
            case.name,
            out.stats.envelope
        );
    }
    Ok(format!("{} instances agree", cases.len()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut instances: Vec<(String, Complex, Chain)> = Vec::new();
    for c in [canonical::tetra_sphere(), canonical::octa_sphere()] {
        let z = cycle(&c)?;
        instances.push((c.name.clone(), c.complex, z));
    }
    let mut complexes = vec![
        ("csaszar-torus".to_string(), canonical::csaszar_torus().complex),
        ("annulus".to_string(), canonical::annulus().complex),
        ("octa-sphere".to_string(), canonical::octa_sphere().complex),
    ];
    for a in [2, 3, 5, 6] {
        complexes.push((format!("stacked-spheres-{a}"), stacked_spheres(a)));
    }
    for (name, k) in complexes {
        for _ in 0..4 {
            let z = ok(k.boundary(&random_chain(&k, 2, &mut rng, 0.3)))?;
            if !z.is_empty() {
                instances.push((name.clone(), k.clone(), z));
            }
        }
    }
    let mut compared = 0;
    for (name, k, z) in &instances {
        let out = ok(solve_bnt_greedy(k, z, &BntConfig::default()))?;
        ensure!(
            out.iterations.len() <= out.iteration_bound,
            "{name}: {} rounds, bound {}",
            out.iterations.len(),
            out.iteration_bound
        );
        ensure!(
            ok(is_bnt_feasible(k, z, &out.solution))?.verdict,
            "{name}: output infeasible"
        );
        let coset = 1u64 << (out.iteration_bound - 1);
        if coset <= 64 {
            let preimages = ok(enumerate_boundary_chains(k, z, &budget()))?;
            ensure!(
                preimages.len() as u64 == coset,
                "{name}: coset has {} chains",
                preimages.len()
            );
            ensure!(
                preimages.iter().all(|c| c.support().intersects(out.solution.support())),
                "{name}: a preimage avoids the greedy set"
            );
            let opt = ok(brute_bnt(k, z, out.solution.len(), &budget(), true))?
                .solution
                .map(|s| s.len())
                .ok_or(format!("{name}: oracle found nothing up to the greedy size"))?;
            let bound = ((coset as f64).ln() + 1.0) * opt as f64;
            ensure!(
                out.solution.len() as f64 <= bound,
                "{name}: greedy {} exceeds {bound:.2}",
                out.solution.len()
            );
            compared += 1;
        }
    }
    Ok(format!(
        "{} instances, {compared} compared with the optimum",
        instances.len()
    ))
}

fn criterion_9() -> Outcome {
    const TRIALS: usize = 200;
    let torus = canonical::csaszar_torus().complex;
    let run = ok(solve_global_ths(&torus, 1, &rows_config(6), 9, TRIALS))?;
    let ths_rate = run.records.iter().filter(|t| t.verified).count() as f64 / TRIALS as f64;
    ensure!(ths_rate >= 0.40, "global THS success rate {ths_rate:.2}");
    for t in run.records.iter().filter(|t| t.verified) {
        let s = ok(Chain::from_indices(&torus, 1, t.subroutine.as_deref().unwrap_or(&[])))?;
        ensure!(
            ok(is_global_ths_solution(&torus, 1, &s))?.verdict,
            "trial {} fails re-verification",
            t.trial
        );
    }
    let best = run.best.ok_or("no global THS set")?;
    ensure!(
        ok(is_global_ths_solution(&torus, 1, &best))?.verdict,
        "best THS set fails"
    );

    let sphere = canonical::tetra_sphere().complex;
    let run = ok(solve_global_bnt(&sphere, 1, &BntConfig::default(), 9, TRIALS, true))?;
    let bnt_rate = run.records.iter().filter(|t| t.verified).count() as f64 / TRIALS as f64;
    ensure!(bnt_rate >= 0.40, "global BNT success rate {bnt_rate:.2}");
    for t in run.records.iter().filter(|t| t.verified) {
        let s = ok(Chain::from_indices(&sphere, 2, t.subroutine.as_deref().unwrap_or(&[])))?;
        ensure!(
            ok(is_global_bnt_solution(&sphere, 1, &s))?.verdict,
            "trial {} fails re-verification",
            t.trial
        );
    }
    let best = run.best.ok_or("no global BNT set")?;
    ensure!(
        ok(is_global_bnt_solution(&sphere, 1, &best))?.verdict,
        "best BNT set fails"
    );
    Ok(format!("success rates {ths_rate:.2} (ths) and {bnt_rate:.2} (bnt)"))
}

/// The nine colored graphs, with the expected clique answer.
fn gadget_fixtures() -> Vec<GraphFixture> {
    vec![
        ("edge", vec![(1, 1), (2, 2)], vec![(1, 2)], true),
        ("two isolated vertices", vec![(1, 1), (2, 2)], vec![], false),
        ("path 1-2-1", vec![(1, 1), (2, 2), (3, 1)], vec![(1, 2), (2, 3)], true),
        ("no edges, colors 1 2 2", vec![(1, 1), (2, 2), (3, 2)], vec![], false),
        (
            "triangle",
            vec![(1, 1), (2, 2), (3, 3)],
            vec![(1, 2), (2, 3), (1, 3)],
            true,
        ),
        ("path 1-2-3", vec![(1, 1), (2, 2), (3, 3)], vec![(1, 2), (2, 3)], false),
        (
            "triangle with pendant",
            vec![(1, 1), (2, 2), (3, 3), (4, 1)],
            vec![(1, 2), (2, 3), (1, 3), (2, 4)],
            true,
        ),
        (
            "four-cycle",
            vec![(1, 1), (2, 2), (3, 3), (4, 2)],
            vec![(1, 2), (2, 3), (3, 4), (4, 1)],
            false,
        ),
        (
            "five vertices",
            vec![(1, 1), (2, 1), (3, 2), (4, 2), (5, 3)],
            vec![(1, 3), (2, 4), (3, 5), (2, 5), (4, 5)],
            true,
        ),
    ]
}

/// Clique existence by checking every choice of one vertex per color.
fn exhaustive_clique(g: &ColoredGraph) -> bool {
    (1..=g.color_count() as u32)
        .map(|c| g.class(c))
        .multi_cartesian_product()
        .any(|pick| pick.iter().tuple_combinations().all(|(&a, &b)| g.has_edge(a, b)))
}

/// Smallest subset of `pool`, of size at most `kmax`, accepted by `feasible`.
fn smallest_subset(pool: &[usize], kmax: usize, mut feasible: impl FnMut(&[usize]) -> bool) -> Option<usize> {
    (1..=kmax.min(pool.len())).find(|&size| pool.iter().copied().combinations(size).any(|s| feasible(&s)))
}

fn criterion_10() -> Outcome {
    let mut dense_checks = 0;
    for (name, vertices, edges, expected) in gadget_fixtures() {
        let g = ok(ColoredGraph::new(&vertices, &edges))?;
        let clique = exhaustive_clique(&g);
        ensure!(clique == expected, "{name}: fixture expects clique {expected}");
        let found = find_multicolored_clique(&g);
        ensure!(
            found.is_some() == clique,
            "{name}: backtracking disagrees with exhaustive search"
        );

        let pairs = g.color_count() * (g.color_count() + 1) / 2;
        let ths = ok(gen_ths_gadget(&g, pairs + 3))?;
        let p = ths.parameter;
        let config = FptConfig {
            candidates: Some(ths.admissible_mask()),
            ..rows_config(p)
        };
        let fpt = ok(solve_ths_fpt(&ths.complex, &ths.input_chain, &config))?.solution;
        ensure!(
            fpt.is_some() == clique,
            "{name}: THS gadget answer {} vs clique {clique}",
            fpt.is_some()
        );
        ensure!(
            verify_gadget_answer(&g, &ths, fpt.as_ref()),
            "{name}: THS answer rejected"
        );
        let rows = ok(ThsRowChecker::new(&ths.complex, &ths.input_chain))?;
        let brute = smallest_subset(&ths.admissible(), p, |s| rows.is_feasible(s));
        ensure!(
            brute == fpt.as_ref().map(Chain::len),
            "{name}: admissible brute {brute:?} vs fpt"
        );
        if let Some(c) = &found {
            let s = ok(ths.clique_solution(&g, c))?;
            ensure!(s.len() == p, "{name}: clique set has {} simplices", s.len());
            ensure!(
                rows.report(&s).map(|r| r.verdict).unwrap_or(false),
                "{name}: clique set infeasible"
            );
            if ths.complex.count(ths.solution_dim() + 1) <= 400 {
                ensure!(
                    ok(is_ths_feasible(&ths.complex, &ths.input_chain, &s))?.verdict,
                    "{name}: dense check fails"
                );
                dense_checks += 1;
            }
        }

        let bnt = ok(gen_bnt_gadget(&g, pairs + 2))?;
        let p = bnt.parameter;
        let pool = bnt.admissible();
        let checker = ok(PoolBntChecker::new(&bnt.complex, &bnt.input_chain, &pool))?;
        let brute = smallest_subset(&pool, p, |s| checker.is_feasible(s).unwrap_or(false));
        ensure!(
            brute.is_some() == clique,
            "{name}: BNT gadget answer {} vs clique {clique}",
            brute.is_some()
        );
        if let Some(c) = &found {
            let s = ok(bnt.clique_solution(&g, c))?;
            ensure!(s.len() == p, "{name}: BNT clique set has {} simplices", s.len());
            ensure!(
                ok(checker.is_feasible(&s.indices()))?,
                "{name}: BNT clique set infeasible"
            );
            ensure!(
                verify_gadget_answer(&g, &bnt, Some(&s)),
                "{name}: BNT clique set rejected"
            );
            if bnt.complex.count(bnt.solution_dim()) <= 3000 {
                ensure!(
                    ok(is_bnt_feasible(&bnt.complex, &bnt.input_chain, &s))?.verdict,
                    "{name}: dense BNT check fails"
                );
                dense_checks += 1;
            }
        }
    }
    Ok(format!(
        "9 graphs agree for both gadgets, {dense_checks} dense cross-checks"
    ))
}

fn criterion_11() -> Outcome {
    for d in 1..=4 {
        let s = ok(s_subdivide(d))?;
        let expected = 2 * d * (d + 1) + 1;
        ensure!(
            s.tops.len() == expected,
            "d={d}: {} top simplices, expected {expected}",
            s.tops.len()
        );
        ensure!(s.added.len() == 2 * (d + 1), "d={d}: {} subdivisions", s.added.len());
        ensure!(s.star_avoids_original(), "d={d}: a star meets an original vertex");
        for v in s.distinguished.vertices() {
            let star = s.star_vertices(*v);
            ensure!(
                s.original.iter().all(|o| !star.contains(o)),
                "d={d}: star of {v} contains an original vertex"
            );
        }
    }
    Ok("d = 1..4 exact".into())
}

fn boundary_squares_vanish(k: &Complex) -> Result<bool, String> {
    for p in k.lo() + 2..=k.hi() {
        let lower = ok(k.boundary_matrix(p - 1))?;
        let upper = ok(k.boundary_matrix(p))?;
        if !ok(lower.mul(&upper))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_12() -> Outcome {
    let mut complexes: Vec<(String, Complex)> = canonical::NAMES
        .iter()
        .map(|n| canonical::by_name(n, 3).map(|c| (n.to_string(), c.complex)))
        .collect::<z2cut::Result<_>>()
        .map_err(|e| e.to_string())?;
    for a in [1, 4] {
        complexes.push((format!("stacked-spheres-{a}"), stacked_spheres(a)));
    }
    for d in 1..=4 {
        complexes.push((format!("s-subdivision-{d}"), ok(ok(s_subdivide(d))?.complex())?));
    }
    for (name, vertices, edges, _) in gadget_fixtures().into_iter().take(4) {
        let g = ok(ColoredGraph::new(&vertices, &edges))?;
        complexes.push((format!("ths gadget ({name})"), ok(gen_ths_gadget(&g, 4))?.complex));
        complexes.push((format!("bnt gadget ({name})"), ok(gen_bnt_gadget(&g, 4))?.complex));
    }
    let constructed = complexes.len();
    for (name, k) in &complexes {
        ensure!(boundary_squares_vanish(k)?, "{name}: boundary of boundary is nonzero");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..1000 {
        let (rows, cols) = (rng.random_range(1..40), rng.random_range(1..40));
        let density = rng.random_range(0.05..0.7);
        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.random_bool(density));
            }
        }
        let kernel = m.kernel_vectors();
        ensure!(
            m.rank() + kernel.len() == cols,
            "rank-nullity fails on a {rows}x{cols} matrix"
        );
        ensure!(m.rank() == m.transpose().rank(), "row and column rank differ");
        for v in &kernel {
            ensure!(ok(m.mul_vec(v))?.is_zero(), "kernel vector is not in the kernel");
        }
    }

    let mut bases = 0;
    let weighted = canonical::csaszar_torus()
        .complex
        .with_edge_weights((0..21).map(|i| 1 + (i * 7 % 5)).collect());
    let mut candidates: Vec<(String, Complex)> = complexes
        .into_iter()
        .chain([
            ("weighted torus".to_string(), ok(weighted)?),
            (
                "k5 graph".to_string(),
                graph_complex(&(0..5).tuple_combinations().collect::<Vec<_>>()),
            ),
        ])
        .collect();
    candidates.retain(|(_, k)| k.lo() == 0 && k.hi() >= 1 && k.count(1) <= 25 && k.is_connected());
    for (name, k) in &candidates {
        let fast: u64 = ok(min_homology_basis(k, false))?.iter().map(|w| w.weight).sum();
        let slow = ok(brute_min_homology_basis_weight(k, &budget()))?;
        ensure!(fast == slow, "{name}: basis weight {fast}, brute force {slow}");
        bases += 1;
    }
    Ok(format!("{constructed} complexes, 1000 matrices, {bases} minimum bases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(1)),
        (3, criterion_3, Duration::from_secs(60)),
        (4, criterion_4, Duration::from_secs(30)),
        (5, criterion_5, Duration::from_secs(60)),
        (6, criterion_6, Duration::from_secs(60)),
        (7, criterion_7, Duration::from_secs(120)),
        (8, criterion_8, Duration::from_secs(60)),
        (9, criterion_9, Duration::from_secs(60)),
        (10, criterion_10, Duration::from_secs(300)),
        (11, criterion_11, Duration::from_secs(10)),
        (12, criterion_12, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (n, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {n}: pass ({detail}; {elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: fail ({why}; {elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        println!("all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
