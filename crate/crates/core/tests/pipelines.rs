use cubeskel::generators::{corpus, even_cycle, GeneratorSpec};
use cubeskel::homology::betti_gf2;
use cubeskel::manifold::is_homology_manifold;
use cubeskel::reconstruction::{enumerate_candidates, reconstruct, Mode, ReconstructionConfig};
use cubeskel::{CubeWord, CubicalComplex, Error};
use proptest::prelude::*;

fn spec(s: &str) -> GeneratorSpec {
    GeneratorSpec::parse_tokens(&s.split_whitespace().collect::<Vec<_>>()).unwrap()
}

fn b(n: usize) -> CubicalComplex {
    CubicalComplex::cube_boundary(n).unwrap()
}

#[test]
fn generator_examples() {
    assert_eq!(
        spec("boundary-cube 3").generate_complex().unwrap().len(),
        26
    );
    let t = spec("product boundary-cube 2 boundary-cube 2")
        .generate_complex()
        .unwrap();
    assert_eq!((t.ambient_dim(), t.f_vector()), (4, vec![16, 32, 16]));
    let hexagon = spec("cbs 0-1,1-2,0-2").generate_complex().unwrap();
    assert_eq!((hexagon.ambient_dim(), hexagon.f_vector()), (3, vec![6, 6]));
    assert_eq!(even_cycle(4).unwrap(), b(2));
    assert_eq!(even_cycle(6).unwrap(), hexagon);
    assert!(matches!(even_cycle(7), Err(Error::Parameter(_))));
    assert!(matches!(even_cycle(2), Err(Error::Parameter(_))));
}

#[test]
fn generator_specs_round_trip_through_text() {
    for text in [
        "cube 3",
        "skeleton-of 2 boundary-cube 4",
        "product product boundary-cube 2 boundary-cube 2 boundary-cube 2",
        "disjoint-union boundary-cube 3 even-cycle 6",
        "cbs 0-1-2,0-1-3",
        "graph-k23",
    ] {
        let s = spec(text);
        assert_eq!(s.to_string(), text);
    }
}

#[test]
fn corpus_invariants() {
    for (name, c) in corpus() {
        assert!(c.is_closed(), "{name} not closed");
        let s = spec(&name);
        for k in 0..=c.dim().unwrap_or(0) {
            assert_eq!(
                GeneratorSpec::skeleton_of(s.clone(), k)
                    .generate_complex()
                    .unwrap(),
                c.skeleton(k),
                "{name} k={k}"
            );
        }
        if let GeneratorSpec::Product(x, y) = &s {
            let (bx, by) = (
                betti_gf2(&x.generate_complex().unwrap()),
                betti_gf2(&y.generate_complex().unwrap()),
            );
            let mut expected = vec![0; bx.len() + by.len() - 1];
            for (i, p) in bx.betti_vector().iter().enumerate() {
                for (j, q) in by.betti_vector().iter().enumerate() {
                    expected[i + j] += p * q;
                }
            }
            assert_eq!(betti_gf2(&c).betti_vector(), expected, "{name}");
        }
    }
}

#[test]
fn disjoint_union_is_two_components() {
    let u = spec("disjoint-union boundary-cube 3 boundary-cube 2")
        .generate_complex()
        .unwrap();
    let parts = u.components();
    assert_eq!(parts.len(), 2);
    assert_eq!(u.len(), 26 + 8);
    assert_eq!(betti_gf2(&u).betti_vector(), vec![2, 1, 1]);
}

#[test]
fn reconstruction_recovers_and_is_idempotent() {
    let cases: Vec<(CubicalComplex, usize, usize, Mode)> = vec![
        (b(3), 2, 2, Mode::Standard),
        (b(4), 2, 3, Mode::Standard),
        (b(5), 3, 4, Mode::Standard),
        (b(5), 2, 4, Mode::TightGf2),
        (b(3).product(&b(2)).unwrap(), 2, 3, Mode::Standard),
        (b(2).product(&b(2)).unwrap(), 2, 2, Mode::Standard),
        (
            b(2).product(&b(2)).unwrap().product(&b(2)).unwrap(),
            2,
            3,
            Mode::Standard,
        ),
    ];
    for (m, k, d, mode) in cases {
        let cfg = ReconstructionConfig::new(k, d, mode);
        let once = reconstruct(&m.skeleton(k), &cfg).unwrap();
        assert_eq!(once, m, "k={k} d={d} {mode}");
        assert_eq!(once.skeleton(k), m.skeleton(k));
        assert_eq!(reconstruct(&once.skeleton(k), &cfg).unwrap(), once);
        assert_eq!(
            reconstruct(&m.skeleton(k), &cfg.with_jobs(4)).unwrap(),
            once
        );
        assert!(is_homology_manifold(&once).is_manifold);
    }
}

#[test]
fn out_of_range_configurations_are_contract_errors() {
    let skel = b(5).skeleton(2);
    for cfg in [
        ReconstructionConfig::new(2, 4, Mode::Standard),
        ReconstructionConfig::new(1, 1, Mode::Standard),
        ReconstructionConfig::new(2, 3, Mode::TightGf2),
    ] {
        assert!(
            matches!(reconstruct(&skel, &cfg), Err(Error::Contract(_))),
            "{cfg:?}"
        );
    }
}

fn sweep(skel: &CubicalComplex, k: usize) -> Vec<CubeWord> {
    let mut v: Vec<CubeWord> = CubeWord::full(skel.ambient_dim())
        .unwrap()
        .subfaces()
        .filter(|f| f.dim() == k + 1 && f.facets().all(|(g, _)| skel.contains(&g)))
        .collect();
    v.sort();
    v
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(64))]

  #[test]
  fn candidates_match_ambient_sweep(mask in prop::collection::vec(any::<bool>(), 80), k in 1usize..3) {
    let squares: Vec<CubeWord> = CubeWord::full(5).unwrap().subfaces().filter(|f| f.dim() == k).collect();
    let gens = squares.iter().zip(mask.iter().cycle()).filter(|(_, keep)| **keep).map(|(f, _)| *f);
    let skel = CubicalComplex::closure(5, gens).unwrap();
    prop_assert_eq!(enumerate_candidates(&skel, k).unwrap(), sweep(&skel, k));
  }
}
