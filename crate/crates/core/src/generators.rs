//! Named complexes and graphs used by tests, the CLI and documentation.
//!
//! Specs are written in prefix form, e.g.
//! `product boundary-cube 2 boundary-cube 2` or `skeleton-of 2 boundary-cube 4`.

use std::fmt;

use crate::complex::CubicalComplex;
use crate::embedding::SimpleGraph;
use crate::error::{Error, Result};
use crate::word::{CubeWord, MAX_AMBIENT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Cube(usize),
    BoundaryCube(usize),
    SkeletonOf(Box<GeneratorSpec>, usize),
    EvenCycle(usize),
    Product(Box<GeneratorSpec>, Box<GeneratorSpec>),
    DisjointUnion(Box<GeneratorSpec>, Box<GeneratorSpec>),
    /// Cubical barycentric subdivision of the simplicial complex with these facets.
    Cbs(Vec<Vec<usize>>),
    GraphC3,
    GraphK23,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Complex(CubicalComplex),
    Graph(SimpleGraph),
}

impl Generated {
    pub fn into_complex(self) -> Result<CubicalComplex> {
        match self {
            Generated::Complex(c) => Ok(c),
            Generated::Graph(_) => Err(Error::Parameter(
                "expected a complex family, got a graph family".into(),
            )),
        }
    }
}

pub const FAMILIES: [&str; 9] = [
    "cube",
    "boundary-cube",
    "skeleton-of",
    "even-cycle",
    "product",
    "disjoint-union",
    "cbs",
    "graph-c3",
    "graph-k23",
];

impl GeneratorSpec {
    pub fn product(a: GeneratorSpec, b: GeneratorSpec) -> Self {
        GeneratorSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn skeleton_of(a: GeneratorSpec, k: usize) -> Self {
        GeneratorSpec::SkeletonOf(Box::new(a), k)
    }

    pub fn disjoint_union(a: GeneratorSpec, b: GeneratorSpec) -> Self {
        GeneratorSpec::DisjointUnion(Box::new(a), Box::new(b))
    }

    /// Parses a whole token list; trailing tokens are an error.
    pub fn parse_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let toks: Vec<&str> = tokens.iter().map(|t| t.as_ref()).collect();
        let mut pos = 0;
        let spec = Self::parse_at(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Parameter(format!(
                "unexpected trailing parameters: {}",
                toks[pos..].join(" ")
            )));
        }
        Ok(spec)
    }

    fn parse_at(toks: &[&str], pos: &mut usize) -> Result<Self> {
        let family = *toks
            .get(*pos)
            .ok_or_else(|| Error::Parameter("missing generator family".into()))?;
        *pos += 1;
        let mut number = |what: &str| -> Result<usize> {
            let t = toks
                .get(*pos)
                .ok_or_else(|| Error::Parameter(format!("{family}: missing {what}")))?;
            *pos += 1;
            t.parse().map_err(|_| {
                Error::Parameter(format!(
                    "{family}: {what} must be a natural number, got {t:?}"
                ))
            })
        };
        Ok(match family {
            "cube" => GeneratorSpec::Cube(number("dimension")?),
            "boundary-cube" => GeneratorSpec::BoundaryCube(number("dimension")?),
            "even-cycle" => GeneratorSpec::EvenCycle(number("length")?),
            "skeleton-of" => {
                let k = number("k")?;
                GeneratorSpec::skeleton_of(Self::parse_at(toks, pos)?, k)
            }
            "product" => {
                let a = Self::parse_at(toks, pos)?;
                GeneratorSpec::product(a, Self::parse_at(toks, pos)?)
            }
            "disjoint-union" => {
                let a = Self::parse_at(toks, pos)?;
                GeneratorSpec::disjoint_union(a, Self::parse_at(toks, pos)?)
            }
            "cbs" => {
                let t = toks.get(*pos).ok_or_else(|| {
                    Error::Parameter("cbs: missing facet list like 0-1,1-2,0-2".into())
                })?;
                *pos += 1;
                GeneratorSpec::Cbs(parse_facets(t)?)
            }
            "graph-c3" => GeneratorSpec::GraphC3,
            "graph-k23" => GeneratorSpec::GraphK23,
            other => {
                return Err(Error::Parameter(format!(
                    "unknown family {other:?}; expected one of {}",
                    FAMILIES.join(", ")
                )))
            }
        })
    }

    pub fn generate(&self) -> Result<Generated> {
        use GeneratorSpec::*;
        let complex = |s: &GeneratorSpec| s.generate()?.into_complex();
        Ok(Generated::Complex(match self {
            Cube(n) => CubicalComplex::full_cube(checked_ambient(*n)?)?,
            BoundaryCube(n) => CubicalComplex::cube_boundary(checked_ambient(*n)?)?,
            SkeletonOf(a, k) => complex(a)?.skeleton(*k),
            EvenCycle(len) => even_cycle(*len)?,
            Product(a, b) => complex(a)?.product(&complex(b)?)?,
            DisjointUnion(a, b) => disjoint_union(&complex(a)?, &complex(b)?)?,
            Cbs(facets) => cubical_barycentric_subdivision(facets)?,
            GraphC3 => return Ok(Generated::Graph(SimpleGraph::cycle(3)?)),
            GraphK23 => return Ok(Generated::Graph(SimpleGraph::complete_bipartite(2, 3))),
        }))
    }

    pub fn generate_complex(&self) -> Result<CubicalComplex> {
        self.generate()?.into_complex()
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorSpec::*;
        match self {
            Cube(n) => write!(f, "cube {n}"),
            BoundaryCube(n) => write!(f, "boundary-cube {n}"),
            SkeletonOf(a, k) => write!(f, "skeleton-of {k} {a}"),
            EvenCycle(n) => write!(f, "even-cycle {n}"),
            Product(a, b) => write!(f, "product {a} {b}"),
            DisjointUnion(a, b) => write!(f, "disjoint-union {a} {b}"),
            Cbs(facets) => {
                let parts: Vec<String> = facets
                    .iter()
                    .map(|s| {
                        s.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join("-")
                    })
                    .collect();
                write!(f, "cbs {}", parts.join(","))
            }
            GraphC3 => write!(f, "graph-c3"),
            GraphK23 => write!(f, "graph-k23"),
        }
    }
}

fn checked_ambient(n: usize) -> Result<usize> {
    if n > MAX_AMBIENT {
        return Err(Error::Parameter(format!(
            "dimension {n} exceeds {MAX_AMBIENT}"
        )));
    }
    Ok(n)
}

fn parse_facets(t: &str) -> Result<Vec<Vec<usize>>> {
    t.split(',')
        .map(|facet| {
            facet
                .split('-')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parameter(format!("cbs: bad vertex {v:?} in {t:?}")))
                })
                .collect()
        })
        .collect()
}

/// `2m`-cycle: `∂I²` for `2m = 4`, otherwise the subdivided boundary of an `m`-gon.
pub fn even_cycle(len: usize) -> Result<CubicalComplex> {
    if !len.is_multiple_of(2) || len < 4 {
        return Err(Error::Parameter(format!(
            "even-cycle needs an even length >= 4, got {len} (odd cycles do not embed in a cube)"
        )));
    }
    if len == 4 {
        return CubicalComplex::cube_boundary(2);
    }
    let m = len / 2;
    let edges: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    cubical_barycentric_subdivision(&edges)
}

/// Cubical barycentric subdivision in `I^m` (`m` = number of input vertices).
/// A simplex maps to its 0/1 indicator vector, and the interval `[σ, τ]`
/// becomes the face with ones on `σ` and stars on `τ \ σ`.
pub fn cubical_barycentric_subdivision(facets: &[Vec<usize>]) -> Result<CubicalComplex> {
    let m = facets.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
    checked_ambient(m)?;
    let mut gens = Vec::new();
    for facet in facets {
        if facet.is_empty() {
            return Err(Error::Parameter("cbs: empty facet".into()));
        }
        let mask = facet.iter().fold(0u64, |acc, &v| acc | 1 << v);
        if mask.count_ones() as usize != facet.len() {
            return Err(Error::Parameter(format!(
                "cbs: repeated vertex in facet {facet:?}"
            )));
        }
        for &v in facet {
            gens.push(CubeWord::from_masks(m, mask & !(1 << v), 1 << v)?);
        }
    }
    CubicalComplex::closure(m, gens)
}

/// `A` in `I^(a+b+1)` as `w·0^b·0` and `B` as `0^a·w·1`; the last
/// coordinate keeps the two parts vertex-disjoint.
pub fn disjoint_union(a: &CubicalComplex, b: &CubicalComplex) -> Result<CubicalComplex> {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let n = checked_ambient(na + nb + 1)?;
    let zeros = |k: usize| CubeWord::from_masks(k, 0, 0);
    let tag0 = zeros(nb)?.concat(&CubeWord::vertex(1, 0)?)?;
    let tag1 = CubeWord::vertex(1, 1)?;
    let mut faces = Vec::with_capacity(a.len() + b.len());
    for f in a.faces() {
        faces.push(f.concat(&tag0)?);
    }
    let pad = zeros(na)?;
    for f in b.faces() {
        faces.push(pad.concat(f)?.concat(&tag1)?);
    }
    CubicalComplex::from_closed_faces(n, faces)
}

/// The named complexes exercised by the test suites.
pub fn corpus() -> Vec<(String, CubicalComplex)> {
    use GeneratorSpec::*;
    let b = |n| BoundaryCube(n);
    let specs = vec![
        Cube(0),
        Cube(1),
        Cube(2),
        Cube(3),
        b(2),
        b(3),
        b(4),
        b(5),
        GeneratorSpec::product(b(2), b(2)),
        GeneratorSpec::product(GeneratorSpec::product(b(2), b(2)), b(2)),
        GeneratorSpec::product(b(3), b(2)),
        GeneratorSpec::product(b(2), Cube(1)),
        EvenCycle(6),
        EvenCycle(8),
        Cbs(vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
        Cbs(vec![vec![0, 1, 2]]),
        GeneratorSpec::disjoint_union(b(3), b(3)),
        GeneratorSpec::skeleton_of(b(4), 2),
    ];
    specs
        .into_iter()
        .map(|s| {
            let c = s.generate_complex().expect("corpus specs are valid");
            (s.to_string(), c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_cube_face_count() {
        assert_eq!(
            GeneratorSpec::BoundaryCube(3)
                .generate_complex()
                .unwrap()
                .len(),
            26
        );
    }

    #[test]
    fn torus_f_vector() {
        let spec =
            GeneratorSpec::parse_tokens(&["product", "boundary-cube", "2", "boundary-cube", "2"])
                .unwrap();
        let t = spec.generate_complex().unwrap();
        assert_eq!(t.ambient_dim(), 4);
        assert_eq!(t.f_vector(), [16, 32, 16]);
    }

    #[test]
    fn cbs_of_triangle_boundary_is_hexagon() {
        let c = GeneratorSpec::parse_tokens(&["cbs", "0-1,1-2,0-2"])
            .unwrap()
            .generate_complex()
            .unwrap();
        assert_eq!(c.ambient_dim(), 3);
        assert_eq!(c.f_vector(), [6, 6]);
    }

    #[test]
    fn cbs_of_triangle_is_subdivided_disk() {
        let c = cubical_barycentric_subdivision(&[vec![0, 1, 2]]).unwrap();
        // 7 simplices; intervals of length 1 and 2: 9 + 3
        assert_eq!(c.f_vector(), [7, 9, 3]);
    }

    #[test]
    fn even_cycles() {
        assert_eq!(
            even_cycle(4).unwrap(),
            CubicalComplex::cube_boundary(2).unwrap()
        );
        assert_eq!(even_cycle(8).unwrap().f_vector(), [8, 8]);
        assert!(matches!(even_cycle(5), Err(Error::Parameter(_))));
        assert!(even_cycle(2).is_err());
    }

    #[test]
    fn disjoint_union_is_disjoint() {
        let b3 = CubicalComplex::cube_boundary(3).unwrap();
        let u = disjoint_union(&b3, &b3).unwrap();
        assert_eq!(u.ambient_dim(), 7);
        assert_eq!(u.len(), 52);
        assert_eq!(u.components().len(), 2);
    }

    #[test]
    fn skeleton_family_matches_skeleton_op() {
        let spec =
            GeneratorSpec::parse_tokens(&["skeleton-of", "2", "boundary-cube", "4"]).unwrap();
        let direct = CubicalComplex::cube_boundary(4).unwrap().skeleton(2);
        assert_eq!(spec.generate_complex().unwrap(), direct);
    }

    #[test]
    fn graph_families() {
        match GeneratorSpec::GraphK23.generate().unwrap() {
            Generated::Graph(g) => assert_eq!((g.vertex_count(), g.edges().len()), (5, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(GeneratorSpec::GraphC3.generate_complex().is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(GeneratorSpec::parse_tokens(&["cube"]).is_err());
        assert!(GeneratorSpec::parse_tokens(&["cube", "x"]).is_err());
        assert!(GeneratorSpec::parse_tokens(&["cube", "2", "3"]).is_err());
        assert!(GeneratorSpec::parse_tokens(&["sphere", "2"]).is_err());
        assert!(GeneratorSpec::parse_tokens::<&str>(&[]).is_err());
    }

    #[test]
    fn display_round_trips() {
        for (name, _) in corpus() {
            let toks: Vec<&str> = name.split_whitespace().collect();
            assert_eq!(
                GeneratorSpec::parse_tokens(&toks).unwrap().to_string(),
                name
            );
        }
    }
}
