//! Cubical complexes as downward-closed sets of words inside a fixed `I^n`.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::word::{CubeWord, MAX_AMBIENT};

/// A subcomplex of `I^n`: a finite, downward-closed set of nonempty faces.
///
/// Iteration order is the canonical word order (`0 < 1 < *`, left to right).
/// The empty complex is a valid value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicalComplex {
    ambient_dim: usize,
    faces: BTreeSet<CubeWord>,
}

impl CubicalComplex {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            faces: BTreeSet::new(),
        }
    }

    /// Smallest complex containing every generator.
    pub fn closure<I>(ambient_dim: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = CubeWord>,
    {
        if ambient_dim > MAX_AMBIENT {
            return Err(Error::Structural(format!(
                "ambient dimension {ambient_dim} exceeds the supported maximum {MAX_AMBIENT}"
            )));
        }
        let mut faces = BTreeSet::new();
        for g in generators {
            if g.ambient_dim() != ambient_dim {
                return Err(Error::Structural(format!(
                    "generator {g} has length {} but the ambient dimension is {ambient_dim}",
                    g.ambient_dim()
                )));
            }
            if faces.contains(&g) {
                continue;
            }
            faces.extend(g.subfaces());
        }
        Ok(Self { ambient_dim, faces })
    }

    /// Builds a complex from a face set that must already be downward closed.
    pub fn from_closed_faces<I>(ambient_dim: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = CubeWord>,
    {
        let faces: BTreeSet<CubeWord> = faces.into_iter().collect();
        if let Some(bad) = faces.iter().find(|f| f.ambient_dim() != ambient_dim) {
            return Err(Error::Structural(format!(
                "face {bad} does not live in I^{ambient_dim}"
            )));
        }
        let c = Self { ambient_dim, faces };
        if let Some((f, g)) = c.first_missing_facet() {
            return Err(Error::Structural(format!(
                "face {f} is present but its facet {g} is not"
            )));
        }
        Ok(c)
    }

    pub(crate) fn from_faces_unchecked(ambient_dim: usize, faces: BTreeSet<CubeWord>) -> Self {
        debug_assert!(Self {
            ambient_dim,
            faces: faces.clone()
        }
        .first_missing_facet()
        .is_none());
        Self { ambient_dim, faces }
    }

    /// `I^n` itself.
    pub fn full_cube(n: usize) -> Result<Self> {
        Self::closure(n, [CubeWord::full(n)?])
    }

    /// `∂I^n`: every face of `I^n` except the top one.
    pub fn cube_boundary(n: usize) -> Result<Self> {
        Ok(Self::boundary_of_word(&CubeWord::full(n)?))
    }

    /// All proper nonempty subfaces of `f`, as a complex in `f`'s ambient cube.
    pub fn boundary_of_word(f: &CubeWord) -> Self {
        let faces = f.subfaces().filter(|g| g != f).collect();
        Self {
            ambient_dim: f.ambient_dim(),
            faces,
        }
    }

    /// `F̂`: the face `f` with all its subfaces.
    pub fn hat(f: &CubeWord) -> Self {
        Self {
            ambient_dim: f.ambient_dim(),
            faces: f.subfaces().collect(),
        }
    }

    fn first_missing_facet(&self) -> Option<(CubeWord, CubeWord)> {
        self.faces.iter().find_map(|f| {
            f.facets()
                .map(|(g, _)| g)
                .find(|g| !self.faces.contains(g))
                .map(|g| (*f, g))
        })
    }

    /// Re-checks downward closure. Always true for values built through this API.
    pub fn is_closed(&self) -> bool {
        self.first_missing_facet().is_none()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: &CubeWord) -> bool {
        self.faces.contains(f)
    }

    pub fn faces(&self) -> impl Iterator<Item = &CubeWord> + '_ {
        self.faces.iter()
    }

    pub fn face_set(&self) -> &BTreeSet<CubeWord> {
        &self.faces
    }

    pub fn faces_of_dim(&self, j: usize) -> impl Iterator<Item = &CubeWord> + '_ {
        self.faces.iter().filter(move |f| f.dim() == j)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &CubeWord> + '_ {
        self.faces_of_dim(0)
    }

    /// Largest face dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.dim()).max()
    }

    /// Face counts by dimension, `(f_0, f_1, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut fv = vec![0; self.dim().map_or(0, |d| d + 1)];
        for f in &self.faces {
            fv[f.dim()] += 1;
        }
        fv
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Faces not contained in any larger face, in canonical order.
    pub fn maximal_faces(&self) -> Vec<CubeWord> {
        let n = self.ambient_dim;
        let mut covered: HashSet<CubeWord> = HashSet::new();
        for f in &self.faces {
            for p in f.star_positions() {
                let bit = 1u64 << p;
                covered.insert(CubeWord::from_masks_unchecked(
                    n,
                    f.stars() & !bit,
                    f.ones() | bit,
                ));
                covered.insert(CubeWord::from_masks_unchecked(
                    n,
                    f.stars() & !bit,
                    f.ones(),
                ));
            }
        }
        self.faces
            .iter()
            .filter(|f| !covered.contains(f))
            .copied()
            .collect()
    }

    /// Whether every maximal face has the top dimension.
    pub fn is_pure(&self) -> bool {
        let Some(d) = self.dim() else { return true };
        self.maximal_faces().iter().all(|f| f.dim() == d)
    }

    pub fn is_subcomplex_of(&self, other: &CubicalComplex) -> bool {
        self.ambient_dim == other.ambient_dim && self.faces.is_subset(&other.faces)
    }

    pub(crate) fn require_subcomplex(&self, sub: &CubicalComplex, what: &str) -> Result<()> {
        if sub.ambient_dim != self.ambient_dim {
            return Err(Error::Structural(format!(
                "{what}: ambient dimensions differ ({} vs {})",
                sub.ambient_dim, self.ambient_dim
            )));
        }
        if let Some(f) = sub.faces.iter().find(|f| !self.faces.contains(f)) {
            return Err(Error::Structural(format!(
                "{what}: face {f} is not in the ambient complex"
            )));
        }
        Ok(())
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> CubicalComplex {
        let faces = self
            .faces
            .iter()
            .filter(|f| f.dim() <= k)
            .copied()
            .collect();
        Self {
            ambient_dim: self.ambient_dim,
            faces,
        }
    }

    /// `self \ g`: faces sharing no vertex with `g`.
    pub fn delete(&self, g: &CubicalComplex) -> Result<CubicalComplex> {
        self.require_subcomplex(g, "delete")?;
        let removed: HashSet<CubeWord> = g.vertices().copied().collect();
        Ok(self.delete_vertices(&removed))
    }

    pub(crate) fn delete_vertices(&self, removed: &HashSet<CubeWord>) -> CubicalComplex {
        let faces = self
            .faces
            .iter()
            .filter(|f| {
                if (1usize << f.dim()) <= removed.len() {
                    !f.vertices().any(|v| removed.contains(&v))
                } else {
                    !removed.iter().any(|v| f.contains_vertex(v))
                }
            })
            .copied()
            .collect();
        Self {
            ambient_dim: self.ambient_dim,
            faces,
        }
    }

    /// Face-like test: each face of `self` meets `V(g)` in nothing or in the
    /// full vertex set of a face of `g`.
    pub fn is_face_like(&self, g: &CubicalComplex) -> Result<bool> {
        self.require_subcomplex(g, "is_face_like")?;
        let gv: Vec<CubeWord> = g.vertices().copied().collect();
        for f in &self.faces {
            let under: Vec<CubeWord> = gv
                .iter()
                .filter(|v| f.contains_vertex(v))
                .copied()
                .collect();
            let Some(join) = CubeWord::join_of(&under) else {
                continue;
            };
            // `under` is the vertex set of `join` exactly when it has 2^dim members.
            if !g.contains(&join) || under.len() != 1usize << join.dim() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fullness: `g` contains every face of `self` all of whose vertices lie in `g`.
    pub fn is_full_subcomplex(&self, g: &CubicalComplex) -> Result<bool> {
        self.require_subcomplex(g, "is_full_subcomplex")?;
        let gv: HashSet<CubeWord> = g.vertices().copied().collect();
        Ok(self
            .faces
            .iter()
            .all(|f| g.contains(f) || !f.vertices().all(|v| gv.contains(&v))))
    }

    /// Product complex in `I^(a+b)`; words are concatenated.
    pub fn product(&self, other: &CubicalComplex) -> Result<CubicalComplex> {
        let n = self.ambient_dim + other.ambient_dim;
        if n > MAX_AMBIENT {
            return Err(Error::Structural(format!(
                "product ambient dimension {n} exceeds the supported maximum {MAX_AMBIENT}"
            )));
        }
        let mut faces = BTreeSet::new();
        for a in &self.faces {
            for b in &other.faces {
                faces.insert(a.concat(b)?);
            }
        }
        Ok(Self {
            ambient_dim: n,
            faces,
        })
    }

    /// Adds faces whose boundaries are already present.
    pub(crate) fn with_added_faces(&self, added: &[CubeWord]) -> CubicalComplex {
        let mut faces = self.faces.clone();
        faces.extend(added.iter().copied());
        Self::from_faces_unchecked(self.ambient_dim, faces)
    }

    /// Connected components of the vertex-edge graph, ordered by smallest vertex.
    pub fn components(&self) -> Vec<CubicalComplex> {
        let verts: Vec<CubeWord> = self.vertices().copied().collect();
        let index: HashMap<CubeWord, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.faces_of_dim(1) {
            let mut ends = e.vertices();
            let a = index[&ends.next().unwrap()];
            let b = index[&ends.next().unwrap()];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut parts: Vec<BTreeSet<CubeWord>> = Vec::new();
        // Vertices come in canonical order, so components are numbered by smallest vertex.
        for i in 0..verts.len() {
            let r = find(&mut parent, i);
            if let std::collections::hash_map::Entry::Vacant(e) = slot.entry(r) {
                e.insert(parts.len());
                parts.push(BTreeSet::new());
            }
        }
        for f in &self.faces {
            let v = CubeWord::from_masks_unchecked(self.ambient_dim, 0, f.ones());
            let r = find(&mut parent, index[&v]);
            parts[slot[&r]].insert(*f);
        }
        parts
            .into_iter()
            .map(|faces| Self {
                ambient_dim: self.ambient_dim,
                faces,
            })
            .collect()
    }
}

/// A complex together with one of its faces.
#[derive(Debug, Clone, Copy)]
pub struct FacePair<'a> {
    complex: &'a CubicalComplex,
    face: CubeWord,
}

impl<'a> FacePair<'a> {
    pub fn new(complex: &'a CubicalComplex, face: CubeWord) -> Result<Self> {
        if !complex.contains(&face) {
            return Err(Error::Structural(format!(
                "face {face} is not in the complex"
            )));
        }
        Ok(Self { complex, face })
    }

    pub fn complex(&self) -> &'a CubicalComplex {
        self.complex
    }

    pub fn face(&self) -> CubeWord {
        self.face
    }

    /// `F̂`.
    pub fn hat(&self) -> CubicalComplex {
        CubicalComplex::hat(&self.face)
    }

    /// `∂F̂`: the proper subfaces of the face.
    pub fn boundary(&self) -> CubicalComplex {
        CubicalComplex::boundary_of_word(&self.face)
    }
}
