//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cubeskel::embedding::{
    all_graph_embeddings, find_graph_embedding, labelling_from_embedding, search_graph_embedding,
    verify_labelling_by_component, SearchOutcome, SimpleGraph,
};
use cubeskel::format::serialize_complex;
use cubeskel::generators::{corpus, GeneratorSpec};
use cubeskel::homology::{betti_gf2, boundary_matrices, cohomology_profile, relative_profile};
use cubeskel::linalg::{smith_normal_form, IntMatrix};
use cubeskel::manifold::{facelike_characterization, is_homology_manifold, is_orientable};
use cubeskel::reconstruction::{
    enumerate_candidates, reconstruct_auto, reconstruct_auto_with, reconstruct_with_report, Mode,
    Reconstruction, ReconstructionConfig,
};
use cubeskel::{CubeWord, CubicalComplex, HomologyProfile, Ring};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
  ($cond:expr, $($msg:tt)+) => {
    if !$cond {
      return Err(format!($($msg)+));
    }
  };
}

fn boundary(n: usize) -> CubicalComplex {
    CubicalComplex::cube_boundary(n).unwrap()
}

fn torus2() -> CubicalComplex {
    boundary(2).product(&boundary(2)).unwrap()
}

fn torus3() -> CubicalComplex {
    torus2().product(&boundary(2)).unwrap()
}

fn s2_x_s1() -> CubicalComplex {
    boundary(3).product(&boundary(2)).unwrap()
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> std::result::Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{label} took {elapsed:.2?}, limit {limit:.0?}"))
    }
}

/// Every ambient `(k+1)`-face whose facets all lie in `skel`, by direct sweep.
fn candidates_by_sweep(skel: &CubicalComplex, k: usize) -> Vec<CubeWord> {
    let n = skel.ambient_dim();
    CubeWord::full(n)
        .unwrap()
        .subfaces()
        .filter(|f| f.dim() == k + 1 && f.facets().all(|(g, _)| skel.contains(&g)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn run_fixed(m: &CubicalComplex, k: usize, d: usize, mode: Mode) -> Reconstruction {
    reconstruct_with_report(&m.skeleton(k), &ReconstructionConfig::new(k, d, mode)).unwrap()
}

fn criterion_1() -> Outcome {
    let target = GeneratorSpec::BoundaryCube(4).generate_complex().unwrap();
    let skel = target.skeleton(2);
    let start = Instant::now();
    let r =
        reconstruct_with_report(&skel, &ReconstructionConfig::new(2, 3, Mode::Standard)).unwrap();
    let elapsed = start.elapsed();
    ensure!(
        serialize_complex(&r.complex) == serialize_complex(&target),
        "reconstruction differs from the 4-cube boundary"
    );
    let verdicts = &r.steps[0].verdicts;
    ensure!(
        verdicts.len() == 8,
        "expected 8 candidates, got {}",
        verdicts.len()
    );
    ensure!(
        verdicts.iter().all(|v| v.accepted),
        "not every candidate accepted"
    );
    ensure!(
        enumerate_candidates(&skel, 2).unwrap() == candidates_by_sweep(&skel, 2),
        "enumeration disagrees with sweep"
    );
    within("reconstruction", elapsed, Duration::from_secs(1))?;
    Ok(format!("8/8 accepted, byte-identical, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let target = torus3();
    ensure!(target.len() == 512, "3-torus has {} faces", target.len());
    let skel = target.skeleton(2);
    let start = Instant::now();
    let r =
        reconstruct_with_report(&skel, &ReconstructionConfig::new(2, 3, Mode::Standard)).unwrap();
    let elapsed = start.elapsed();
    ensure!(r.complex == target, "reconstruction is not the 3-torus");
    let accepted: BTreeSet<CubeWord> = r.steps[0].accepted().copied().collect();
    let cubes: BTreeSet<CubeWord> = target.faces_of_dim(3).copied().collect();
    ensure!(
        cubes.len() == 64 && accepted == cubes,
        "accepted {} faces, expected the 64 edge products",
        accepted.len()
    );
    ensure!(
        enumerate_candidates(&skel, 2).unwrap() == candidates_by_sweep(&skel, 2),
        "enumeration disagrees with sweep"
    );
    within("reconstruction", elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "{} candidates, 64 accepted, 512 faces, {elapsed:.2?}",
        r.steps[0].verdicts.len()
    ))
}

fn criterion_3() -> Outcome {
    let target = s2_x_s1();
    let skel = target.skeleton(2);
    ensure!(
        skel.ambient_dim() == 5,
        "ambient dimension {}",
        skel.ambient_dim()
    );
    let r =
        reconstruct_with_report(&skel, &ReconstructionConfig::new(2, 3, Mode::Standard)).unwrap();
    let verdicts = &r.steps[0].verdicts;
    ensure!(
        verdicts.len() == 28,
        "expected 28 candidates, got {}",
        verdicts.len()
    );
    let swept = candidates_by_sweep(&skel, 2);
    ensure!(
        verdicts.iter().map(|v| v.face).collect::<Vec<_>>() == swept,
        "candidates disagree with sweep"
    );
    let rejected: BTreeSet<String> = verdicts
        .iter()
        .filter(|v| !v.accepted)
        .map(|v| v.face.to_string())
        .collect();
    let solid: BTreeSet<String> = ["***00", "***01", "***10", "***11"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    ensure!(rejected == solid, "rejected {rejected:?}");
    let accepted: BTreeSet<CubeWord> = r.steps[0].accepted().copied().collect();
    let products: BTreeSet<CubeWord> = target.faces_of_dim(3).copied().collect();
    ensure!(
        accepted.len() == 24 && accepted == products,
        "accepted set is not the 24 square-by-edge faces"
    );
    ensure!(
        r.complex == target,
        "final complex differs from the product"
    );
    Ok("28 candidates, 4 solid cubes rejected, 24 accepted".into())
}

fn criterion_4() -> Outcome {
    let target = boundary(5);
    let skel = target.skeleton(2);
    let start = Instant::now();
    let gf2 =
        reconstruct_with_report(&skel, &ReconstructionConfig::new(2, 4, Mode::TightGf2)).unwrap();
    let int = reconstruct_with_report(&skel, &ReconstructionConfig::new(2, 4, Mode::TightInteger))
        .unwrap();
    let elapsed = start.elapsed();
    ensure!(
        gf2.complex == target,
        "tight GF(2) run differs from the 5-cube boundary"
    );
    ensure!(
        int.complex == target,
        "tight integer run differs from the 5-cube boundary"
    );
    within("both tight runs", elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "both rings rebuild the 5-cube boundary, {elapsed:.2?}"
    ))
}

fn criterion_5() -> Outcome {
    let s = boundary(3);
    let results = reconstruct_auto(&s, 2, 4).unwrap();
    ensure!(
        results == vec![(2, s.clone())],
        "auto results: {:?}",
        results
            .iter()
            .map(|(d, c)| (d, c.len()))
            .collect::<Vec<_>>()
    );
    let report = reconstruct_auto_with(&s, 2, 4, None, 1).unwrap();
    let solid = CubicalComplex::full_cube(3).unwrap();
    for a in &report.attempts {
        ensure!(
            a.result.complex != solid,
            "d = {} produced the solid cube",
            a.d
        );
    }
    ensure!(
        report.attempts.iter().any(|a| a.d == 3 && !a.is_manifold),
        "d = 3 attempt missing or accepted"
    );
    ensure!(
        !is_homology_manifold(&solid).is_manifold,
        "solid cube passed the manifold check"
    );
    Ok("only (2, boundary of I^3); d = 3 branch rejected".into())
}

fn criterion_6() -> Outcome {
    let runs = [
        (boundary(4), run_fixed(&boundary(4), 2, 3, Mode::Standard)),
        (torus3(), run_fixed(&torus3(), 2, 3, Mode::Standard)),
        (s2_x_s1(), run_fixed(&s2_x_s1(), 2, 3, Mode::Standard)),
        (boundary(5), run_fixed(&boundary(5), 2, 4, Mode::TightGf2)),
        (
            boundary(5),
            run_fixed(&boundary(5), 2, 4, Mode::TightInteger),
        ),
    ];
    let mut instances = 0;
    let mut face_like = 0;
    for (m, r) in &runs {
        for step in &r.steps {
            for v in step.verdicts.iter().filter(|v| v.boundary_present) {
                let s = CubicalComplex::boundary_of_word(&v.face);
                let k = v.face.dim() - 1;
                for host in [m.clone(), m.skeleton(k + 1), m.skeleton(k)] {
                    let fl = facelike_characterization(&host, &s, k)
                        .map_err(|e| format!("{}: {e}", v.face))?;
                    instances += 1;
                    face_like += fl as usize;
                }
            }
        }
    }
    ensure!(instances >= 100, "only {instances} instances");
    Ok(format!(
        "{instances} instances, {face_like} face-like, zero exceptions"
    ))
}

/// Every face-like subcomplex of `m`, found by sweeping vertex subsets;
/// face-like subcomplexes are full, so each is induced by its vertices.
fn all_facelike_subcomplexes(m: &CubicalComplex) -> Vec<CubicalComplex> {
    let vertices: Vec<CubeWord> = m.vertices().copied().collect();
    assert!(vertices.len() <= 16, "sweep is for small complexes");
    let mut out = Vec::new();
    for mask in 1u32..1 << vertices.len() {
        let keep: BTreeSet<CubeWord> = vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| *v)
            .collect();
        let faces: Vec<CubeWord> = m
            .faces()
            .filter(|f| f.vertices().all(|v| keep.contains(&v)))
            .copied()
            .collect();
        let g = CubicalComplex::from_closed_faces(m.ambient_dim(), faces).unwrap();
        if g.vertices().count() == keep.len() && m.is_face_like(&g).unwrap() {
            out.push(g);
        }
    }
    out
}

fn duality_holds(
    m: &CubicalComplex,
    d: usize,
    g: &CubicalComplex,
    ring: Ring,
) -> std::result::Result<(), String> {
    let rest = m.delete(g).unwrap();
    let rel: HomologyProfile = relative_profile(m, &rest, ring).unwrap();
    let coh: HomologyProfile = cohomology_profile(g, ring).unwrap();
    for j in 0..=d {
        let lhs = rel.degree(j as isize);
        let rhs = coh.degree((d - j) as isize);
        if lhs != rhs {
            return Err(format!(
                "ring {ring}, degree {j}: relative {lhs} vs cohomology {rhs} for {:?}",
                g.maximal_faces()
            ));
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut summary = Vec::new();
    for (name, m, d) in [
        ("boundary of I^3", boundary(3), 2),
        ("boundary of I^4", boundary(4), 3),
        ("2-torus", torus2(), 2),
    ] {
        ensure!(is_orientable(&m).unwrap(), "{name} should be orientable");
        let family = all_facelike_subcomplexes(&m);
        let sets: BTreeSet<_> = family.iter().map(|g| g.face_set().clone()).collect();
        let hats: BTreeSet<_> = m
            .faces()
            .map(|f| CubicalComplex::hat(f).face_set().clone())
            .collect();
        ensure!(
            hats.is_subset(&sets),
            "{name}: some induced face is missing from the sweep"
        );
        let spheres = family
            .iter()
            .filter(|g| !hats.contains(g.face_set()) && is_sphere(g))
            .count();
        for g in &family {
            duality_holds(&m, d, g, Ring::Gf2)?;
            duality_holds(&m, d, g, Ring::Integer)?;
        }
        summary.push(format!(
            "{name} {} ({} hats, {spheres} other spheres)",
            family.len(),
            hats.len()
        ));
    }
    Ok(format!(
        "all face-like subcomplexes, both rings, zero exceptions: {}",
        summary.join("; ")
    ))
}

/// Whether `g` has the GF(2) homology of a sphere of its dimension.
fn is_sphere(g: &CubicalComplex) -> bool {
    let b = betti_gf2(g).betti_vector();
    let d = b.len() - 1;
    b.iter()
        .enumerate()
        .all(|(j, &x)| x == usize::from(j == 0 || j == d) * if d == 0 { 2 } else { 1 })
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors as ratios of successive gcds of `i x i` minors.
fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<u64> {
    let (rows, cols) = (a.len(), a[0].len());
    let subsets = |n: usize, size: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    };
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for size in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, size) {
            for cs in subsets(cols, size) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| a[r][c] as i128).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        factors.push((g / prev) as u64);
        prev = g;
    }
    factors
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let expected: [(&str, CubicalComplex, Vec<usize>); 4] = [
        ("boundary of I^3", boundary(3), vec![1, 0, 1]),
        ("2-torus", torus2(), vec![1, 2, 1]),
        ("S^2 x S^1", s2_x_s1(), vec![1, 1, 1, 1]),
        ("3-torus", torus3(), vec![1, 3, 3, 1]),
    ];
    for (name, c, betti) in &expected {
        let got = betti_gf2(c).betti_vector();
        ensure!(got == *betti, "{name}: betti {got:?}, expected {betti:?}");
    }
    let mut complexes = 0;
    for (name, c) in corpus() {
        for ring in [Ring::Gf2, Ring::Integer] {
            ensure!(
                boundary_matrices(&c, ring).composition_vanishes().unwrap(),
                "boundary squared nonzero on {name} over {ring}"
            );
        }
        complexes += 1;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for trial in 0..200 {
        let rows: Vec<Vec<i64>> = (0..5)
            .map(|_| (0..5).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows).unwrap()).unwrap();
        let oracle = invariant_factors_by_minors(&rows);
        ensure!(
            snf == oracle,
            "matrix {trial} {rows:?}: snf {snf:?} vs minors {oracle:?}"
        );
    }
    let elapsed = start.elapsed();
    within("homology checks", elapsed, Duration::from_secs(10))?;
    Ok(format!("betti oracles, boundary squared zero on {complexes} complexes, 200 SNF matrices, {elapsed:.2?}"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for (name, g) in [
        ("C3", SimpleGraph::cycle(3).unwrap()),
        ("K2,3", SimpleGraph::complete_bipartite(2, 3)),
    ] {
        match search_graph_embedding(&g, 6) {
            SearchOutcome::Found(e) => return Err(format!("{name} embedded in dimension {}", e.n)),
            SearchOutcome::OddCycle(_) | SearchOutcome::NoneUpTo(_) => {}
        }
        for n in 0..=4 {
            ensure!(
                all_graph_embeddings(&g, n).is_empty(),
                "{name} has an embedding in dimension {n} by exhaustive search"
            );
        }
    }
    let mut graphs: Vec<(String, SimpleGraph, usize)> = vec![
        ("C4".into(), SimpleGraph::cycle(4).unwrap(), 2),
        ("C6".into(), SimpleGraph::cycle(6).unwrap(), 3),
        (
            "G(boundary of I^3)".into(),
            SimpleGraph::of_complex(&boundary(3)).0,
            3,
        ),
    ];
    for (name, c) in corpus() {
        let n = c.ambient_dim();
        graphs.push((format!("G({name})"), SimpleGraph::of_complex(&c).0, n));
    }
    for (name, g, n) in &graphs {
        let emb = find_graph_embedding(g, *n)
            .ok_or_else(|| format!("{name}: no embedding for n <= {n}"))?;
        ensure!(emb.is_valid_for(g), "{name}: invalid embedding");
        let lab = labelling_from_embedding(&emb, g).unwrap();
        ensure!(
            verify_labelling_by_component(g, &lab).unwrap(),
            "{name}: labelling failed verification"
        );
    }
    let square = SimpleGraph::of_complex(&CubicalComplex::full_cube(2).unwrap()).0;
    let all = all_graph_embeddings(&square, 4);
    ensure!(
        all.len() == 24 * 8,
        "{} embeddings of G(I^2) into G(I^4), expected 192",
        all.len()
    );
    for e in &all {
        let words: Vec<CubeWord> = e
            .codes
            .iter()
            .map(|&c| CubeWord::vertex(4, c).unwrap())
            .collect();
        let join = CubeWord::join_of(&words).unwrap();
        ensure!(join.dim() == 2, "image {:?} is not a face", e.codes);
    }
    let elapsed = start.elapsed();
    within("embedding checks", elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{} graphs embedded, 192 square images all faces, {elapsed:.2?}",
        graphs.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut manifolds: Vec<(String, CubicalComplex, usize)> = (0..=4)
        .map(|d| (format!("boundary of I^{}", d + 1), boundary(d + 1), d))
        .collect();
    manifolds.push(("2-torus".into(), torus2(), 2));
    manifolds.push(("3-torus".into(), torus3(), 3));
    manifolds.push(("S^2 x S^1".into(), s2_x_s1(), 3));
    for (name, c, d) in &manifolds {
        let r = is_homology_manifold(c);
        ensure!(
            r.is_manifold && r.dimension == Some(*d),
            "{name}: {}",
            r.reason
        );
    }
    let w = |s: &str| -> CubeWord { s.parse().unwrap() };
    let solid_square = CubicalComplex::full_cube(2).unwrap();
    let wedge_circles = CubicalComplex::closure(
        4,
        [
            "0*00", "*000", "1*00", "*100", "000*", "00*0", "001*", "00*1",
        ]
        .map(w),
    )
    .unwrap();
    let wedge_squares = CubicalComplex::closure(4, [w("**00"), w("00**")]).unwrap();
    for (name, c) in [
        ("solid square", solid_square),
        ("wedge of square circles", wedge_circles),
        ("wedge of solid squares", wedge_squares),
    ] {
        ensure!(
            !is_homology_manifold(&c).is_manifold,
            "{name} passed the manifold check"
        );
    }
    let mut oriented = 0;
    for (name, c) in corpus() {
        if is_homology_manifold(&c).is_manifold {
            ensure!(is_orientable(&c).unwrap(), "{name} is not orientable");
            oriented += 1;
        }
    }
    Ok(format!(
        "{} manifolds recognised, 3 non-manifolds rejected, {oriented} corpus manifolds orientable",
        manifolds.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("reconstruct 3-sphere from 2-skeleton", criterion_1),
        ("reconstruct 3-torus from 2-skeleton", criterion_2),
        ("reject spurious solid cubes in S^2 x S^1", criterion_3),
        ("tight reconstruction of boundary of I^5", criterion_4),
        ("auto mode on boundary of I^3", criterion_5),
        ("face-like iff not a bounding sphere", criterion_6),
        ("duality suite", criterion_7),
        ("homology engine oracles", criterion_8),
        ("hypercube embeddability", criterion_9),
        ("manifold checks", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
