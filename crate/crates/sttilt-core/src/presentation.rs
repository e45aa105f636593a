//! Quiver presentations of bound-quiver algebras.
//!
//! A presentation consists of a finite quiver (vertices and labeled arrows)
//! together with a list of relations, each a linear combination of paths of
//! length at least two sharing no constraint other than composability.  The
//! path-composition convention throughout the crate is *diagrammatic*: the
//! path `[a, b]` means "first traverse `a`, then `b`", so it is composable
//! exactly when `tgt(a) == src(b)`, and it runs from `src(a)` to `tgt(b)`.
//!
//! Presentations serialize to a stable JSON shape (see [`Presentation::to_json`])
//! used by the CLI and the on-disk cache.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A labeled arrow of a quiver. `src`/`tgt` are vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// One scalar-weighted path appearing in a relation.
///
/// `path` holds arrow indices into [`Presentation::arrows`], in diagrammatic
/// order (first arrow traversed first).
#[derive(Debug, Clone, PartialEq)]
pub struct RelationTerm {
    pub coeff: Scalar,
    pub path: Vec<usize>,
}

/// A bound-quiver presentation `KQ / I`.
///
/// Invariants enforced by [`Presentation::validate`]:
/// * arrow endpoints are valid vertex indices;
/// * every relation term is a composable path of length ≥ 2 with a nonzero
///   coefficient (so the ideal is admissible-shaped: inside the square of the
///   arrow ideal);
/// * arrow names are distinct and nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub field: FieldSpec,
    /// Vertex names; the index in this list is the vertex id used everywhere.
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Each relation is a sum of terms set to zero.
    pub relations: Vec<Vec<RelationTerm>>,
    /// Optional truncation bound: when set, all paths strictly longer than
    /// this are additionally forced to zero (see `build_algebra` docs).
    pub max_path_length: Option<usize>,
}

/// JSON wire form of a [`Presentation`]. Coefficients travel as strings
/// (`"1"`, `"-2/3"`, …) so exact rationals survive the round trip.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PresentationJson {
    field: FieldSpec,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Vec<RelationTermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_path_length: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RelationTermJson {
    coeff: String,
    /// Arrow *names*, in diagrammatic order.
    path: Vec<String>,
}

impl Presentation {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Look up an arrow index by name.
    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Source vertex of a (nonempty, composable) path of arrow indices.
    pub fn path_src(&self, path: &[usize]) -> usize {
        self.arrows[path[0]].src
    }

    /// Target vertex of a (nonempty, composable) path of arrow indices.
    pub fn path_tgt(&self, path: &[usize]) -> usize {
        self.arrows[*path.last().expect("nonempty path")].tgt
    }

    /// Render a path of arrow indices as the concatenation of arrow names.
    pub fn path_label(&self, path: &[usize]) -> String {
        let mut s = String::new();
        for &a in path {
            let _ = write!(s, "{}", self.arrows[a].name);
        }
        s
    }

    /// Check all structural invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::InvalidSpec("presentation has no vertices".into()));
        }
        let mut names: HashSet<&str> = HashSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidSpec(format!("vertex {i} has an empty name")));
            }
            if !names.insert(v.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate vertex name `{v}`")));
            }
        }
        let mut arrow_names: HashSet<&str> = HashSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.name.is_empty() {
                return Err(Error::InvalidSpec(format!("arrow {i} has an empty name")));
            }
            if !arrow_names.insert(a.name.as_str()) {
                return Err(Error::InvalidSpec(format!("duplicate arrow name `{}`", a.name)));
            }
            if a.src >= n || a.tgt >= n {
                return Err(Error::InvalidSpec(format!(
                    "arrow `{}` has endpoint out of range ({} -> {}, {} vertices)",
                    a.name, a.src, a.tgt, n
                )));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            if rel.is_empty() {
                return Err(Error::InvalidSpec(format!("relation {ri} has no terms")));
            }
            for term in rel {
                if term.coeff.field() != self.field {
                    return Err(Error::InvalidSpec(format!(
                        "relation {ri} has a coefficient from the wrong field"
                    )));
                }
                if term.coeff.is_zero() {
                    return Err(Error::InvalidSpec(format!(
                        "relation {ri} has a zero coefficient; drop the term instead"
                    )));
                }
                if term.path.len() < 2 {
                    return Err(Error::NonAdmissible(format!(
                        "relation {ri} contains a term of path length {} (< 2), so the \
                         ideal is not inside the square of the arrow ideal",
                        term.path.len()
                    )));
                }
                for &a in &term.path {
                    if a >= self.arrows.len() {
                        return Err(Error::InvalidSpec(format!(
                            "relation {ri} references arrow index {a} out of range"
                        )));
                    }
                }
                for w in term.path.windows(2) {
                    let (a, b) = (&self.arrows[w[0]], &self.arrows[w[1]]);
                    if a.tgt != b.src {
                        return Err(Error::InconsistentPath(format!(
                            "relation {ri}: `{}` (…->{}) cannot be followed by `{}` ({}->…)",
                            a.name, self.vertices[a.tgt], b.name, self.vertices[b.src]
                        )));
                    }
                }
            }
        }
        if let Some(b) = self.max_path_length {
            if b == 0 {
                return Err(Error::InvalidSpec(
                    "max_path_length must be at least 1 (0 would kill every arrow)".into(),
                ));
            }
        }
        Ok(())
    }

    /// Serialize to the stable JSON wire form (arrow names in paths, string
    /// coefficients). The output is deterministic: field order is fixed and
    /// no maps are involved.
    pub fn to_json(&self) -> String {
        let wire = PresentationJson {
            field: self.field,
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            relations: self
                .relations
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|t| RelationTermJson {
                            coeff: t.coeff.to_string(),
                            path: t.path.iter().map(|&a| self.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            max_path_length: self.max_path_length,
        };
        serde_json::to_string_pretty(&wire).expect("presentation serializes")
    }

    /// Parse the JSON wire form and validate the result.
    pub fn from_json(s: &str) -> Result<Presentation> {
        let wire: PresentationJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidSpec(format!("bad presentation JSON: {e}")))?;
        let mut relations = Vec::with_capacity(wire.relations.len());
        let arrow_idx = |name: &str| -> Result<usize> {
            wire.arrows
                .iter()
                .position(|a| a.name == name)
                .ok_or_else(|| Error::InvalidSpec(format!("relation references unknown arrow `{name}`")))
        };
        for rel in &wire.relations {
            let mut terms = Vec::with_capacity(rel.len());
            for t in rel {
                let coeff = wire.field.parse(&t.coeff)?;
                let path = t.path.iter().map(|n| arrow_idx(n)).collect::<Result<Vec<_>>>()?;
                terms.push(RelationTerm { coeff, path });
            }
            relations.push(terms);
        }
        let p = Presentation {
            field: wire.field,
            vertices: wire.vertices,
            arrows: wire.arrows,
            relations,
            max_path_length: wire.max_path_length,
        };
        p.validate()?;
        Ok(p)
    }

    /// Content hash of the presentation (hex SHA-256 of the canonical JSON).
    /// Two presentations with the same hash are byte-identical on the wire.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(self.to_json().as_bytes());
        let out = h.finalize();
        let mut s = String::with_capacity(64);
        for b in out {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

/// Convenience builder used by the family constructors and tests: vertices by
/// name, arrows as `(name, src, tgt)`, relations as `(coeff_str, [arrow names])`
/// terms over the given field.
pub fn presentation(
    field: FieldSpec,
    vertices: &[&str],
    arrows: &[(&str, usize, usize)],
    relations: &[Vec<(&str, Vec<&str>)>],
) -> Presentation {
    let arrows: Vec<Arrow> = arrows
        .iter()
        .map(|&(name, src, tgt)| Arrow { name: name.into(), src, tgt })
        .collect();
    let idx = |name: &str| -> usize {
        arrows
            .iter()
            .position(|a| a.name == name)
            .unwrap_or_else(|| panic!("unknown arrow `{name}` in relation"))
    };
    let relations = relations
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|(c, path)| RelationTerm {
                    coeff: field.parse(c).expect("valid coefficient literal"),
                    path: path.iter().map(|n| idx(n)).collect(),
                })
                .collect()
        })
        .collect();
    let p = Presentation {
        field,
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        arrows,
        relations,
        max_path_length: None,
    };
    p.validate().expect("builder produces valid presentations");
    p
}
