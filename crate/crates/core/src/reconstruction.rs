//! Rebuilding a cubical homology manifold from one of its skeleta.
//!
//! Going from the `k`-skeleton to the `(k+1)`-skeleton means deciding which
//! subcomplexes isomorphic to `∂I^{k+1}` bound a face. Inside `I^n` every
//! such subcomplex is the boundary of an ambient `(k+1)`-face, so the
//! candidates are found by sweeping ambient faces. A candidate `S` is kept
//! when deleting it leaves homology unchanged in degrees `d-k` and
//! `d-k-1` (standard criterion), or in degree `r-1` alone when `d = 2r`
//! and the caller vouches that the middle homology vanishes (tight
//! criterion).
//!
//! Candidates of one degree are judged against the same frozen skeleton and
//! added together, so the result does not depend on evaluation order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::complex::CubicalComplex;
use crate::error::{Error, Result};
use crate::homology::{homology_upto, DegreeGroup, HomologyProfile, Ring};
use crate::manifold::is_homology_manifold;
use crate::word::CubeWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Standard,
    TightGf2,
    TightInteger,
}

impl Mode {
    fn tight_ring(self) -> Option<Ring> {
        match self {
            Mode::Standard => None,
            Mode::TightGf2 => Some(Ring::Gf2),
            Mode::TightInteger => Some(Ring::Integer),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Standard => "standard",
            Mode::TightGf2 => "tight-gf2",
            Mode::TightInteger => "tight-int",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetDim {
    Fixed(usize),
    /// Try every admissible dimension up to `d_max`.
    Auto {
        d_max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionConfig {
    pub k: usize,
    pub d: TargetDim,
    pub mode: Mode,
    /// Worker threads for candidate evaluation; 1 runs inline.
    pub jobs: usize,
}

impl ReconstructionConfig {
    pub fn new(k: usize, d: usize, mode: Mode) -> Self {
        Self {
            k,
            d: TargetDim::Fixed(d),
            mode,
            jobs: 1,
        }
    }

    pub fn auto(k: usize, d_max: usize, mode: Mode) -> Self {
        Self {
            k,
            d: TargetDim::Auto { d_max },
            mode,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Contract(format!("k >= 2 violated: k = {}", self.k)));
        }
        let TargetDim::Fixed(d) = self.d else {
            return Ok(());
        };
        match self.mode {
            Mode::Standard if self.k < d / 2 + 1 => Err(Error::Contract(format!(
                "k >= floor(d/2) + 1 violated: k = {}, d = {d} (standard mode)",
                self.k
            ))),
            Mode::TightGf2 | Mode::TightInteger if d != 2 * self.k || d < 4 => {
                Err(Error::Contract(format!(
                    "d = 2k >= 4 violated: k = {}, d = {d} ({} mode)",
                    self.k, self.mode
                )))
            }
            _ => Ok(()),
        }
    }
}

/// One compared homology degree: `H_j(M \ S)` against `H_j(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparedDegree {
    pub degree: isize,
    pub deleted: DegreeGroup,
    pub full: DegreeGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub face: CubeWord,
    pub boundary_present: bool,
    pub accepted: bool,
    pub ring: Ring,
    pub compared: Vec<ComparedDegree>,
}

impl fmt::Display for CandidateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.boundary_present, self.accepted) {
            (false, _) => "absent",
            (true, true) => "accept",
            (true, false) => "reject",
        };
        write!(f, "{} {status} {}", self.face, self.ring)?;
        for c in &self.compared {
            write!(f, " H{}:{}/{}", c.degree, c.deleted, c.full)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    Standard,
    Tight(Ring),
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::Standard => f.write_str("standard"),
            Criterion::Tight(r) => write!(f, "tight-{r}"),
        }
    }
}

/// Verdicts for every candidate of one degree step `k -> k+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub degree: usize,
    pub criterion: Criterion,
    pub verdicts: Vec<CandidateVerdict>,
}

impl StepReport {
    pub fn accepted(&self) -> impl Iterator<Item = &CubeWord> + '_ {
        self.verdicts.iter().filter(|v| v.accepted).map(|v| &v.face)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub complex: CubicalComplex,
    pub steps: Vec<StepReport>,
}

/// Ambient `(k+1)`-faces whose whole boundary lies in `skel`, in canonical order.
pub fn enumerate_candidates(skel: &CubicalComplex, k: usize) -> Result<Vec<CubeWord>> {
    if let Some(d) = skel.dim().filter(|&d| d > k) {
        return Err(Error::Contract(format!(
            "enumerate_candidates expects dimension <= {k}, got {d}"
        )));
    }
    let n = skel.ambient_dim();
    let mut seen = BTreeSet::new();
    for g in skel.faces_of_dim(k) {
        for p in (0..n).filter(|&p| g.stars() >> p & 1 == 0) {
            let bit = 1u64 << p;
            seen.insert(CubeWord::from_masks_unchecked(
                n,
                g.stars() | bit,
                g.ones() & !bit,
            ));
        }
    }
    Ok(seen
        .into_iter()
        .filter(|f| boundary_present(skel, f))
        .collect())
}

fn boundary_present(skel: &CubicalComplex, f: &CubeWord) -> bool {
    f.facets().all(|(g, _)| skel.contains(&g))
}

fn deleted(skel: &CubicalComplex, f: &CubeWord) -> CubicalComplex {
    let verts: HashSet<CubeWord> = f.vertices().collect();
    skel.delete_vertices(&verts)
}

// Profiles of the frozen skeleton, shared by every candidate of a step.
struct Baseline<'a> {
    skel: &'a CubicalComplex,
    ring: Ring,
    degrees: Vec<isize>,
    max_degree: usize,
    profile: HomologyProfile,
}

impl<'a> Baseline<'a> {
    fn new(skel: &'a CubicalComplex, ring: Ring, degrees: Vec<isize>) -> Result<Self> {
        let max_degree = degrees.iter().copied().max().unwrap_or(0).max(0) as usize;
        let profile = homology_upto(skel, ring, max_degree)?;
        Ok(Self {
            skel,
            ring,
            degrees,
            max_degree,
            profile,
        })
    }

    fn judge(&self, f: &CubeWord) -> Result<CandidateVerdict> {
        if !boundary_present(self.skel, f) {
            return Ok(CandidateVerdict {
                face: *f,
                boundary_present: false,
                accepted: false,
                ring: self.ring,
                compared: vec![],
            });
        }
        let rest = homology_upto(&deleted(self.skel, f), self.ring, self.max_degree)?;
        let compared: Vec<ComparedDegree> = self
            .degrees
            .iter()
            .map(|&j| ComparedDegree {
                degree: j,
                deleted: rest.degree(j),
                full: self.profile.degree(j),
            })
            .collect();
        let accepted = compared.iter().all(|c| c.deleted == c.full);
        Ok(CandidateVerdict {
            face: *f,
            boundary_present: true,
            accepted,
            ring: self.ring,
            compared,
        })
    }
}

fn check_candidate_shape(f: &CubeWord, skel: &CubicalComplex, k: usize) -> Result<()> {
    if f.ambient_dim() != skel.ambient_dim() || f.dim() != k + 1 {
        return Err(Error::Contract(format!(
            "candidate {f} is not a {}-face of I^{}",
            k + 1,
            skel.ambient_dim()
        )));
    }
    Ok(())
}

fn standard_degrees(k: usize, d: usize) -> Result<Vec<isize>> {
    if k < 2 {
        return Err(Error::Contract(format!("k >= 2 violated: k = {k}")));
    }
    if d < k {
        return Err(Error::Contract(format!(
            "d >= k violated: d = {d}, k = {k}"
        )));
    }
    if d - k > k - 1 {
        return Err(Error::Contract(format!(
            "d - k <= k - 1 violated: d = {d}, k = {k}"
        )));
    }
    let top = (d - k) as isize;
    let degrees = vec![top, top - 1];
    assert!(
        degrees.iter().all(|&j| j < k as isize),
        "compared degree exceeds k - 1"
    );
    Ok(degrees)
}

fn tight_degrees(r: usize) -> Result<Vec<isize>> {
    if r < 2 {
        return Err(Error::Contract(format!("r >= 2 violated: r = {r}")));
    }
    Ok(vec![r as isize - 1])
}

/// Standard face criterion over GF(2): `S = ∂f` bounds a face of the
/// `d`-manifold iff deleting it preserves `H_{d-k}` and `H_{d-k-1}`.
pub fn face_criterion(
    skel: &CubicalComplex,
    f: &CubeWord,
    k: usize,
    d: usize,
) -> Result<CandidateVerdict> {
    let degrees = standard_degrees(k, d)?;
    check_candidate_shape(f, skel, k)?;
    Baseline::new(skel, Ring::Gf2, degrees)?.judge(f)
}

/// Tight criterion for `d = 2r`: compares `H_{r-1}` only, over `ring`.
/// The vanishing (GF(2)) or finiteness (integer, orientable) of `H_r` is
/// the caller's claim and is not checked.
pub fn face_criterion_tight(
    skel: &CubicalComplex,
    f: &CubeWord,
    r: usize,
    ring: Ring,
) -> Result<CandidateVerdict> {
    let degrees = tight_degrees(r)?;
    check_candidate_shape(f, skel, r)?;
    Baseline::new(skel, ring, degrees)?.judge(f)
}

fn run_step(
    skel: &CubicalComplex,
    k: usize,
    d: usize,
    criterion: Criterion,
    pool: Option<&rayon::ThreadPool>,
) -> Result<StepReport> {
    let candidates = enumerate_candidates(skel, k)?;
    let baseline = match criterion {
        Criterion::Standard => Baseline::new(skel, Ring::Gf2, standard_degrees(k, d)?)?,
        Criterion::Tight(ring) => Baseline::new(skel, ring, tight_degrees(k)?)?,
    };
    let verdicts = match pool {
        Some(pool) => pool.install(|| {
            candidates
                .par_iter()
                .map(|f| baseline.judge(f))
                .collect::<Result<Vec<_>>>()
        })?,
        None => candidates
            .iter()
            .map(|f| baseline.judge(f))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(StepReport {
        degree: k,
        criterion,
        verdicts,
    })
}

/// Runs the degree steps `k -> k+1 -> ... -> d`, keeping per-step verdicts.
pub fn reconstruct_with_report(
    skel: &CubicalComplex,
    cfg: &ReconstructionConfig,
) -> Result<Reconstruction> {
    cfg.validate()?;
    let TargetDim::Fixed(d) = cfg.d else {
        return Err(Error::Contract(
            "reconstruct needs a fixed dimension; use reconstruct_auto".into(),
        ));
    };
    if let Some(dim) = skel.dim().filter(|&dim| dim > cfg.k) {
        return Err(Error::Contract(format!(
            "input has dimension {dim} > k = {}",
            cfg.k
        )));
    }
    let pool = if cfg.jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.jobs)
                .build()
                .map_err(|e| Error::Contract(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut complex = skel.clone();
    let mut steps = Vec::new();
    for cur in cfg.k..d {
        let criterion = match cfg.mode.tight_ring() {
            Some(ring) if cur == cfg.k => Criterion::Tight(ring),
            _ => Criterion::Standard,
        };
        let step = run_step(&complex, cur, d, criterion, pool.as_ref())?;
        let added: Vec<CubeWord> = step.accepted().copied().collect();
        complex = complex.with_added_faces(&added);
        steps.push(step);
    }
    Ok(Reconstruction { complex, steps })
}

pub fn reconstruct(skel: &CubicalComplex, cfg: &ReconstructionConfig) -> Result<CubicalComplex> {
    Ok(reconstruct_with_report(skel, cfg)?.complex)
}

/// Outcome of one dimension tried in auto mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoAttempt {
    pub d: usize,
    pub mode: Mode,
    pub is_manifold: bool,
    pub result: Reconstruction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoReport {
    pub attempts: Vec<AutoAttempt>,
    /// Whether the input skeleton is itself a homology manifold.
    pub input_manifold: Option<usize>,
    /// Consistent `(d, manifold)` pairs, ascending in `d`.
    pub results: Vec<(usize, CubicalComplex)>,
}

/// Tries `d = k ..= d_max`. Dimensions with `k >= floor(d/2)+1` use the
/// standard criterion; `d = 2k` is tried only when `tight` names the ring
/// whose hypothesis the caller asserts. A reconstruction is kept when it
/// is a homology manifold of dimension `d`. The input itself is reported
/// when it is already a manifold.
pub fn reconstruct_auto_with(
    skel: &CubicalComplex,
    k: usize,
    d_max: usize,
    tight: Option<Ring>,
    jobs: usize,
) -> Result<AutoReport> {
    if k < 2 {
        return Err(Error::Contract(format!("k >= 2 violated: k = {k}")));
    }
    let mut attempts = Vec::new();
    let mut results: Vec<(usize, CubicalComplex)> = Vec::new();
    for d in k..=d_max {
        let mode = if k > d / 2 {
            Mode::Standard
        } else {
            match tight {
                Some(Ring::Gf2) if d == 2 * k => Mode::TightGf2,
                Some(Ring::Integer) if d == 2 * k => Mode::TightInteger,
                _ => continue,
            }
        };
        let cfg = ReconstructionConfig::new(k, d, mode).with_jobs(jobs);
        let result = reconstruct_with_report(skel, &cfg)?;
        let report = is_homology_manifold(&result.complex);
        let ok = report.is_manifold && report.dimension == Some(d);
        if ok {
            results.push((d, result.complex.clone()));
        }
        attempts.push(AutoAttempt {
            d,
            mode,
            is_manifold: ok,
            result,
        });
    }
    let own = is_homology_manifold(skel);
    let input_manifold = own.dimension.filter(|_| own.is_manifold);
    if let Some(d) = input_manifold {
        if !results.iter().any(|(e, _)| *e == d) {
            results.push((d, skel.clone()));
        }
    }
    results.sort_by_key(|(d, _)| *d);
    Ok(AutoReport {
        attempts,
        input_manifold,
        results,
    })
}

pub fn reconstruct_auto(
    skel: &CubicalComplex,
    k: usize,
    d_max: usize,
) -> Result<Vec<(usize, CubicalComplex)>> {
    Ok(reconstruct_auto_with(skel, k, d_max, None, 1)?.results)
}
