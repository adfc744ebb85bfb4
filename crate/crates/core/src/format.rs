//! Text formats for complexes (`.cub`) and graphs (`.graph`).
//!
//! Complex files start with `ambient <n>` followed by one face word per
//! line. Graph files start with `vertices <n>` followed by `u v` edge
//! lines. In both, `#` starts a comment and blank lines are ignored.
//! Serialization of a complex writes only its maximal faces, in canonical
//! order, so equal complexes produce identical bytes.

use crate::complex::CubicalComplex;
use crate::embedding::SimpleGraph;
use crate::error::{Error, Result};
use crate::word::CubeWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedComplex {
    pub complex: CubicalComplex,
    /// Whether downward closure had to add faces that were not listed.
    pub closure_added: bool,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, keyword: &str) -> Result<usize> {
    let (line, text) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: format!("missing '{keyword} <n>' header"),
    })?;
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(n), None) if k == keyword => n.parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad {keyword} count {n:?}"),
        }),
        _ => Err(Error::Parse {
            line,
            message: format!("expected '{keyword} <n>', got {text:?}"),
        }),
    }
}

pub fn parse_complex(text: &str) -> Result<ParsedComplex> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "ambient")?;
    let mut listed = Vec::new();
    for (line, l) in lines {
        let w: CubeWord = l.parse().map_err(|e: Error| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        if w.ambient_dim() != n {
            return Err(Error::Parse {
                line,
                message: format!("face {l} has length {} but ambient is {n}", w.ambient_dim()),
            });
        }
        listed.push(w);
    }
    let complex = CubicalComplex::closure(n, listed.iter().copied()).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    let distinct: std::collections::BTreeSet<CubeWord> = listed.into_iter().collect();
    let closure_added = complex.len() != distinct.len();
    Ok(ParsedComplex {
        complex,
        closure_added,
    })
}

pub fn serialize_complex(c: &CubicalComplex) -> String {
    let mut out = format!("ambient {}\n", c.ambient_dim());
    for f in c.maximal_faces() {
        out.push_str(&f.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "vertices")?;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, l) in lines {
        let nums: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = nums[..] else {
            return Err(Error::Parse {
                line,
                message: format!("expected 'u v', got {l:?}"),
            });
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("bad vertex index {s:?}"),
            })
        };
        let (u, v) = (parse(u)?, parse(v)?);
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("vertex index out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("loop at vertex {u}"),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge {u} {v}"),
            });
        }
        edges.push((u, v));
    }
    SimpleGraph::new(n, edges)
}

pub fn serialize_graph(g: &SimpleGraph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
