//! Hypercube embeddings of graphs and of abstract cubical complexes.
//!
//! A connected graph sits inside the hypercube graph `G(I^n)` exactly when
//! its edges admit labels in `1..=n` such that every cycle sees each label
//! an even number of times and every path sees some label an odd number of
//! times. Labels are checked with spanning-tree codes: a vertex's code is
//! the XOR of its tree-path labels, fundamental cycles must close with zero
//! parity, and the path condition is equivalent to codes being distinct.
//!
//! The embedding search is a bounded backtracking over `{0,1}^n` codes.
//! Because any graph embedding of a cube graph lands on a face, a graph
//! embedding lifts to an embedding of the whole complex.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::complex::CubicalComplex;
use crate::error::{Error, Result};
use crate::word::{CubeWord, MAX_AMBIENT};

/// Undirected graph without loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Structural(format!(
                    "edge {u} {v} out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::Structural(format!("loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Structural(format!("duplicate edge {u} {v}")));
            }
        }
        let edges: Vec<(usize, usize)> = seen.into_iter().collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self {
            vertex_count,
            edges,
            adjacency,
        })
    }

    pub fn cycle(len: usize) -> Result<Self> {
        if len < 3 {
            return Err(Error::Parameter(format!(
                "cycle length must be at least 3, got {len}"
            )));
        }
        Self::new(len, (0..len).map(|i| (i, (i + 1) % len)))
    }

    pub fn path(edge_count: usize) -> Self {
        Self::new(edge_count + 1, (0..edge_count).map(|i| (i, i + 1))).expect("paths are simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::new(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))))
            .expect("complete bipartite graphs are simple")
    }

    /// The graph `G(c)`; vertex `i` is the `i`-th vertex of `c` in canonical order.
    pub fn of_complex(c: &CubicalComplex) -> (Self, Vec<CubeWord>) {
        let verts: Vec<CubeWord> = c.vertices().copied().collect();
        let index: HashMap<CubeWord, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges = c.faces_of_dim(1).map(|e| {
            let mut ends = e.vertices();
            (index[&ends.next().unwrap()], index[&ends.next().unwrap()])
        });
        (
            Self::new(verts.len(), edges).expect("complex graphs are simple"),
            verts,
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertex sets of connected components, each in BFS order from its smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut order = vec![s];
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        order.push(v);
                    }
                }
            }
            out.push(order);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// An odd cycle as a closed vertex walk `v0 .. vk` (without repeating `v0`),
    /// or `None` when the graph is bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        let mut color = vec![usize::MAX; self.vertex_count];
        let mut parent = vec![usize::MAX; self.vertex_count];
        for comp in self.components() {
            let root = comp[0];
            color[root] = 0;
            for &u in &comp {
                for &v in &self.adjacency[u] {
                    if color[v] == usize::MAX {
                        color[v] = 1 - color[u];
                        parent[v] = u;
                    }
                }
            }
            for &u in &comp {
                for &v in &self.adjacency[u] {
                    if color[u] == color[v] {
                        return Some(self.close_cycle(&parent, u, v));
                    }
                }
            }
        }
        None
    }

    fn close_cycle(&self, parent: &[usize], u: usize, v: usize) -> Vec<usize> {
        let chain = |mut x: usize| {
            let mut c = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                c.push(x);
            }
            c
        };
        let (cu, cv) = (chain(u), chain(v));
        let on_v: HashSet<usize> = cv.iter().copied().collect();
        let lca_pos = cu
            .iter()
            .position(|x| on_v.contains(x))
            .expect("same component");
        let lca = cu[lca_pos];
        let mut cycle: Vec<usize> = cu[..=lca_pos].to_vec();
        let v_pos = cv.iter().position(|&x| x == lca).unwrap();
        cycle.extend(cv[..v_pos].iter().rev());
        cycle
    }
}

/// Labels in `1..=n` for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabelling {
    labels: BTreeMap<(usize, usize), u32>,
}

impl EdgeLabelling {
    pub fn new(labels: impl IntoIterator<Item = ((usize, usize), u32)>) -> Self {
        Self {
            labels: labels
                .into_iter()
                .map(|((u, v), l)| ((u.min(v), u.max(v)), l))
                .collect(),
        }
    }

    /// Labels listed in the order of `g.edges()`.
    pub fn from_edge_order(g: &SimpleGraph, labels: &[u32]) -> Result<Self> {
        if labels.len() != g.edges().len() {
            return Err(Error::Structural(format!(
                "{} labels for {} edges",
                labels.len(),
                g.edges().len()
            )));
        }
        Ok(Self::new(
            g.edges().iter().copied().zip(labels.iter().copied()),
        ))
    }

    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        self.labels.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.labels.iter().map(|(e, l)| (*e, *l))
    }
}

/// Vertex codes in `{0,1}^n`; bit `i` is coordinate `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeEmbedding {
    pub n: usize,
    pub codes: Vec<u64>,
}

impl HypercubeEmbedding {
    /// Injective, and adjacent vertices differ in exactly one bit.
    pub fn is_valid_for(&self, g: &SimpleGraph) -> bool {
        let range = if self.n >= 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        self.codes.len() == g.vertex_count()
            && self.codes.iter().all(|c| c & !range == 0)
            && self.codes.iter().collect::<HashSet<_>>().len() == self.codes.len()
            && g.edges()
                .iter()
                .all(|&(u, v)| (self.codes[u] ^ self.codes[v]).count_ones() == 1)
    }

    pub fn code_string(&self, v: usize) -> String {
        (0..self.n)
            .map(|i| {
                if self.codes[v] >> i & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

/// Checks both labelling conditions on a connected graph.
pub fn verify_labelling(g: &SimpleGraph, lab: &EdgeLabelling) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Structural(
            "verify_labelling needs a connected graph".into(),
        ));
    }
    let mut bit_of = HashMap::new();
    for &(u, v) in g.edges() {
        let l = lab
            .label(u, v)
            .ok_or_else(|| Error::Structural(format!("edge {u} {v} has no label")))?;
        if l == 0 || l as usize > MAX_AMBIENT {
            return Err(Error::Structural(format!(
                "label {l} on edge {u} {v} outside 1..={MAX_AMBIENT}"
            )));
        }
        bit_of.insert((u, v), 1u64 << (l - 1));
    }
    let bit = |u: usize, v: usize| bit_of[&(u.min(v), u.max(v))];
    let Some(order) = g.components().into_iter().next() else {
        return Ok(true);
    };
    let mut code: Vec<Option<u64>> = vec![None; g.vertex_count()];
    code[order[0]] = Some(0);
    for &u in &order {
        let cu = code[u].expect("BFS order visits parents first");
        for &v in g.neighbors(u) {
            match code[v] {
                None => code[v] = Some(cu ^ bit(u, v)),
                // Non-tree edge: the fundamental cycle must have even label counts.
                Some(cv) => {
                    if cu ^ cv ^ bit(u, v) != 0 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    let distinct: HashSet<u64> = code.iter().map(|c| c.unwrap()).collect();
    Ok(distinct.len() == g.vertex_count())
}

/// [`verify_labelling`] applied to each connected component separately.
pub fn verify_labelling_by_component(g: &SimpleGraph, lab: &EdgeLabelling) -> Result<bool> {
    for comp in g.components() {
        let local: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for &(u, v) in g.edges().iter().filter(|(u, _)| local.contains_key(u)) {
            let l = lab
                .label(u, v)
                .ok_or_else(|| Error::Structural(format!("edge {u} {v} has no label")))?;
            edges.push((local[&u], local[&v]));
            labels.push(((local[&u], local[&v]), l));
        }
        let sub = SimpleGraph::new(comp.len(), edges)?;
        if !verify_labelling(&sub, &EdgeLabelling::new(labels))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of a bounded embedding search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(HypercubeEmbedding),
    /// Not bipartite, so no hypercube of any dimension works.
    OddCycle(Vec<usize>),
    /// Exhausted every `n <= n_max`.
    NoneUpTo(usize),
}

impl SearchOutcome {
    pub fn embedding(&self) -> Option<&HypercubeEmbedding> {
        match self {
            SearchOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

pub fn find_graph_embedding(g: &SimpleGraph, n_max: usize) -> Option<HypercubeEmbedding> {
    search_graph_embedding(g, n_max).embedding().cloned()
}

/// Smallest-`n` embedding into `G(I^n)` for `n <= n_max`, if any.
pub fn search_graph_embedding(g: &SimpleGraph, n_max: usize) -> SearchOutcome {
    let n_max = n_max.min(MAX_AMBIENT);
    let v = g.vertex_count();
    if v == 0 {
        return SearchOutcome::Found(HypercubeEmbedding {
            n: 0,
            codes: vec![],
        });
    }
    if let Some(cycle) = g.odd_cycle() {
        return SearchOutcome::OddCycle(cycle);
    }
    let log_bound = (usize::BITS - (v - 1).leading_zeros()) as usize;
    let start = g.max_degree().max(log_bound);
    let search = Search::new(g);
    for n in start..=n_max {
        if let Some(codes) = search.run(n) {
            return SearchOutcome::Found(HypercubeEmbedding { n, codes });
        }
    }
    SearchOutcome::NoneUpTo(n_max)
}

struct Search<'a> {
    g: &'a SimpleGraph,
    order: Vec<usize>,
    // BFS parent for non-roots, None for component roots.
    parent: Vec<Option<usize>>,
    component: Vec<usize>,
    dist: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let mut order = Vec::new();
        let mut parent = vec![None; g.vertex_count()];
        let mut component = vec![0; g.vertex_count()];
        for (ci, comp) in g.components().into_iter().enumerate() {
            let mut placed: HashSet<usize> = HashSet::new();
            for &u in &comp {
                component[u] = ci;
                parent[u] = g.neighbors(u).iter().copied().find(|w| placed.contains(w));
                placed.insert(u);
                order.push(u);
            }
        }
        let dist = (0..g.vertex_count()).map(|s| g.distances_from(s)).collect();
        Self {
            g,
            order,
            parent,
            component,
            dist,
        }
    }

    fn run(&self, n: usize) -> Option<Vec<u64>> {
        let mut codes = vec![None; self.g.vertex_count()];
        let mut used = HashSet::new();
        if self.place(0, n, 0, &mut codes, &mut used) {
            Some(codes.into_iter().map(|c| c.unwrap()).collect())
        } else {
            None
        }
    }

    fn fits(&self, v: usize, c: u64, codes: &[Option<u64>], used: &HashSet<u64>) -> bool {
        if used.contains(&c) {
            return false;
        }
        self.order.iter().all(|&u| match codes[u] {
            Some(cu) if self.component[u] == self.component[v] => {
                let h = (c ^ cu).count_ones() as usize;
                let d = self.dist[u][v];
                h <= d && h % 2 == d % 2
            }
            _ => true,
        })
    }

    // Codes of placed vertices vanish on coordinates >= `m`, so new
    // coordinates are introduced lowest-first.
    fn place(
        &self,
        i: usize,
        n: usize,
        m: usize,
        codes: &mut Vec<Option<u64>>,
        used: &mut HashSet<u64>,
    ) -> bool {
        let Some(&v) = self.order.get(i) else {
            return true;
        };
        let mut options: Vec<(u64, usize)> = Vec::new();
        match self.parent[v] {
            Some(p) => {
                let cp = codes[p].unwrap();
                for b in 0..n.min(m + 1) {
                    options.push((cp ^ (1 << b), m.max(b + 1)));
                }
            }
            None if i == 0 => options.push((0, 0)),
            None => {
                for x in 0..1u64 << m {
                    for t in 0..=n - m {
                        let fresh = if t == 0 { 0 } else { ((1u64 << t) - 1) << m };
                        options.push((x | fresh, m + t));
                    }
                }
            }
        }
        for (c, m2) in options {
            if !self.fits(v, c, codes, used) {
                continue;
            }
            codes[v] = Some(c);
            used.insert(c);
            if self.place(i + 1, n, m2, codes, used) {
                return true;
            }
            used.remove(&c);
            codes[v] = None;
        }
        false
    }
}

/// Every embedding of `g` into `G(I^n)`, without symmetry reduction.
pub fn all_graph_embeddings(g: &SimpleGraph, n: usize) -> Vec<HypercubeEmbedding> {
    fn go(
        g: &SimpleGraph,
        n: usize,
        v: usize,
        codes: &mut Vec<u64>,
        out: &mut Vec<HypercubeEmbedding>,
    ) {
        if v == g.vertex_count() {
            out.push(HypercubeEmbedding {
                n,
                codes: codes.clone(),
            });
            return;
        }
        for c in 0..1u64 << n {
            if codes.contains(&c) {
                continue;
            }
            if g.neighbors(v)
                .iter()
                .filter(|&&u| u < v)
                .all(|&u| (codes[u] ^ c).count_ones() == 1)
            {
                codes.push(c);
                go(g, n, v + 1, codes, out);
                codes.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Label each edge by the coordinate (1-based) its endpoint codes differ in.
pub fn labelling_from_embedding(
    emb: &HypercubeEmbedding,
    g: &SimpleGraph,
) -> Result<EdgeLabelling> {
    let mut labels = Vec::with_capacity(g.edges().len());
    for &(u, v) in g.edges() {
        let diff = emb.codes[u] ^ emb.codes[v];
        if diff.count_ones() != 1 {
            return Err(Error::Contradiction(format!(
                "codes of edge {u} {v} differ in {} coordinates",
                diff.count_ones()
            )));
        }
        labels.push(((u, v), diff.trailing_zeros() + 1));
    }
    Ok(EdgeLabelling::new(labels))
}

/// A cubical complex given only by vertex sets of its faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractCubicalComplex {
    pub vertex_count: usize,
    /// Every face (vertices and edges included) as a sorted vertex list.
    pub faces: Vec<Vec<usize>>,
}

impl AbstractCubicalComplex {
    /// Forgets the words of `c`; vertex `i` is the `i`-th vertex in canonical order.
    pub fn from_complex(c: &CubicalComplex) -> Self {
        let index: HashMap<CubeWord, usize> =
            c.vertices().enumerate().map(|(i, v)| (*v, i)).collect();
        let faces = c
            .faces()
            .map(|f| {
                let mut vs: Vec<usize> = f.vertices().map(|v| index[&v]).collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        Self {
            vertex_count: index.len(),
            faces,
        }
    }

    pub fn graph(&self) -> Result<SimpleGraph> {
        SimpleGraph::new(
            self.vertex_count,
            self.faces
                .iter()
                .filter(|f| f.len() == 2)
                .map(|f| (f[0], f[1])),
        )
    }
}

/// Maps every face through a graph embedding and checks that its image
/// spans an ambient face of the right dimension.
pub fn lift_to_complex_embedding(
    c: &AbstractCubicalComplex,
    emb: &HypercubeEmbedding,
) -> Result<CubicalComplex> {
    let g = c.graph()?;
    if !emb.is_valid_for(&g) {
        return Err(Error::Contradiction(
            "codes are not a graph embedding of the 1-skeleton".into(),
        ));
    }
    let mut words = Vec::with_capacity(c.faces.len());
    for face in &c.faces {
        let Some(&first) = face.first() else {
            return Err(Error::Contradiction("empty face".into()));
        };
        let base = emb.codes[first];
        let stars = face
            .iter()
            .fold(0u64, |acc, &v| acc | (emb.codes[v] ^ base));
        let dim = stars.count_ones() as usize;
        if dim >= 64 || face.len() != 1usize << dim {
            return Err(Error::Contradiction(format!(
                "image of face {face:?} does not span a {dim}-face"
            )));
        }
        words.push(CubeWord::from_masks(emb.n, stars, base & !stars)?);
    }
    CubicalComplex::from_closed_faces(emb.n, words)
        .map_err(|e| Error::Contradiction(format!("lifted faces are not closed: {e}")))
}
