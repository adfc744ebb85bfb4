//! Homology-manifold recognition, orientability, and the face-like
//! characterization of cube-boundary subcomplexes.

use std::fmt;

use crate::complex::CubicalComplex;
use crate::error::{Error, Result};
use crate::homology::{relative_profile, BoundaryMatrixSet, HomologyProfile, Ring};
use crate::word::CubeWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldReport {
    pub is_manifold: bool,
    pub dimension: Option<usize>,
    pub orientable: Option<bool>,
    pub failing_face: Option<CubeWord>,
    /// Why the check failed, empty on success.
    pub reason: String,
    /// One report per connected component when there is more than one.
    pub per_component: Vec<ManifoldReport>,
}

impl ManifoldReport {
    fn failure(dimension: Option<usize>, face: Option<CubeWord>, reason: String) -> Self {
        Self {
            is_manifold: false,
            dimension,
            orientable: None,
            failing_face: face,
            reason,
            per_component: vec![],
        }
    }
}

impl fmt::Display for ManifoldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "manifold {}",
            if self.is_manifold { "yes" } else { "no" }
        )?;
        match self.dimension {
            Some(d) => writeln!(f, "dimension {d}")?,
            None => writeln!(f, "dimension -")?,
        }
        match self.orientable {
            Some(o) => writeln!(f, "orientable {}", if o { "yes" } else { "no" })?,
            None => writeln!(f, "orientable -")?,
        }
        if let Some(face) = &self.failing_face {
            writeln!(f, "failing-face {face}")?;
        }
        if !self.reason.is_empty() {
            writeln!(f, "reason {}", self.reason)?;
        }
        for (i, c) in self.per_component.iter().enumerate() {
            writeln!(
                f,
                "component {i} manifold {} dimension {}",
                if c.is_manifold { "yes" } else { "no" },
                c.dimension.map_or("-".to_string(), |d| d.to_string())
            )?;
        }
        Ok(())
    }
}

/// Faces of `c` that do not contain `f`.
pub fn notstar(c: &CubicalComplex, f: &CubeWord) -> CubicalComplex {
    let faces = c.faces().filter(|g| !f.is_subface_of(g)).copied().collect();
    CubicalComplex::from_faces_unchecked(c.ambient_dim(), faces)
}

/// Local homology `H_*(|c|, |c| - b_f)` at the barycenter of `f`.
pub fn local_profile(c: &CubicalComplex, f: &CubeWord, ring: Ring) -> Result<HomologyProfile> {
    if !c.contains(f) {
        return Err(Error::Structural(format!("face {f} is not in the complex")));
    }
    star_profile(c, f, ring)
}

// Same groups as relative_profile(c, notstar(c, f)): the quotient chain
// complex is spanned by the open star of `f`.
fn star_profile(c: &CubicalComplex, f: &CubeWord, ring: Ring) -> Result<HomologyProfile> {
    let star = c.faces().filter(|g| f.is_subface_of(g));
    BoundaryMatrixSet::from_faces(ring, star).homology(c.dim().map_or(0, |d| d + 1), None)
}

/// Local homology via the explicit pair `(c, notstar(f))`.
pub fn local_profile_via_pair(
    c: &CubicalComplex,
    f: &CubeWord,
    ring: Ring,
) -> Result<HomologyProfile> {
    if !c.contains(f) {
        return Err(Error::Structural(format!("face {f} is not in the complex")));
    }
    relative_profile(c, &notstar(c, f), ring)
}

fn is_sphere_pattern(p: &HomologyProfile, d: usize) -> bool {
    p.degrees()
        .iter()
        .enumerate()
        .all(|(j, g)| g.torsion.is_empty() && g.betti == usize::from(j == d))
        && p.betti(d as isize) == 1
}

/// Checks purity, then the GF(2) local homology at every face.
pub fn is_homology_manifold(c: &CubicalComplex) -> ManifoldReport {
    let Some(d) = c.dim() else {
        return ManifoldReport::failure(None, None, "empty complex".into());
    };
    if let Some(low) = c.maximal_faces().into_iter().find(|f| f.dim() != d) {
        return ManifoldReport::failure(
            Some(d),
            Some(low),
            format!("not pure: maximal face {low} has dimension {}", low.dim()),
        );
    }
    for f in c.faces() {
        let p = star_profile(c, f, Ring::Gf2).expect("GF(2) homology cannot overflow");
        if !is_sphere_pattern(&p, d) {
            return ManifoldReport::failure(
                Some(d),
                Some(*f),
                format!("local homology {p} at {f} is not the {d}-sphere pattern"),
            );
        }
    }
    let comps = c.components();
    let orientable = orientable_unchecked(&comps, d).ok();
    let per_component = if comps.len() > 1 {
        comps
            .iter()
            .map(|k| ManifoldReport {
                is_manifold: true,
                dimension: Some(d),
                orientable: orientable_unchecked(std::slice::from_ref(k), d).ok(),
                failing_face: None,
                reason: String::new(),
                per_component: vec![],
            })
            .collect()
    } else {
        vec![]
    };
    ManifoldReport {
        is_manifold: true,
        dimension: Some(d),
        orientable,
        failing_face: None,
        reason: String::new(),
        per_component,
    }
}

// Integer H_d of each component must be Z.
fn orientable_unchecked(components: &[CubicalComplex], d: usize) -> Result<bool> {
    for comp in components {
        let faces = comp.faces().filter(|f| f.dim() + 1 >= d);
        let set = BoundaryMatrixSet::from_faces(Ring::Integer, faces);
        let top = set.homology(d + 1, None)?.degree(d as isize);
        if top.betti != 1 || !top.torsion.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orientability of a homology manifold; errors if `c` is not one.
pub fn is_orientable(c: &CubicalComplex) -> Result<bool> {
    let report = is_homology_manifold(c);
    let Some(d) = report.dimension.filter(|_| report.is_manifold) else {
        return Err(Error::Contract(format!(
            "is_orientable needs a homology manifold: {}",
            report.reason
        )));
    };
    orientable_unchecked(&c.components(), d)
}

/// For `s ≅ ∂I^{k+1}` inside `c`: returns whether `s` is face-like, after
/// checking that this agrees with "s is not the boundary of a face of c".
pub fn facelike_characterization(c: &CubicalComplex, s: &CubicalComplex, k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::Contract(format!(
            "facelike_characterization needs k >= 1, got {k}"
        )));
    }
    c.require_subcomplex(s, "facelike_characterization")?;
    let top = CubeWord::join_of(s.vertices())
        .filter(|j| j.dim() == k + 1 && CubicalComplex::boundary_of_word(j) == *s)
        .ok_or_else(|| {
            Error::Structural(format!(
                "subcomplex is not the boundary of a {}-cube",
                k + 1
            ))
        })?;
    let face_like = c.is_face_like(s)?;
    let bounds = c
        .faces_of_dim(k + 1)
        .any(|f| CubicalComplex::boundary_of_word(f) == *s);
    if face_like == bounds {
        return Err(Error::Contradiction(format!(
            "sphere spanned by {top}: face-like={face_like} but bounds-a-face={bounds}"
        )));
    }
    Ok(face_like)
}
