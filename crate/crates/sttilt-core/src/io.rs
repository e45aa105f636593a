//! JSON, DOT, and text serialization for computed posets, plus the
//! content-addressed result cache used by the CLI.
//!
//! Two document shapes cover the interchange needs:
//!
//! * [`PosetDocument`] — a computed support τ-tilting poset with full labels:
//!   the content hash of the presentation it came from, one entry per element
//!   carrying its indecomposable summands (g-vector plus the projective
//!   multiplicities in each degree) and its support, and the Hasse covering
//!   relation.  Elements keep the canonical enumeration order (sorted by
//!   g-vector matrix), so equal runs serialize to byte-identical documents no
//!   matter how the search was scheduled.
//! * [`AbstractPosetDocument`] — a bare poset (element count plus covering
//!   relation) for stored fixtures and for analysing posets that did not come
//!   from an algebra.
//!
//! [`SketchDocument`] additionally serializes the loop-free quiver skeletons
//! produced by reconstruction.
//!
//! DOT rendering follows the Hasse-quiver convention used throughout the
//! crate: every arrow points from the covering (larger) element to the
//! covered (smaller) one, so the maximum sits at the top of the drawing.
//!
//! [`Cache`] maps a computation key — presentation content hash plus the
//! crate version — to a serialized document.  Repeated `compute` calls over
//! the same input return the stored bytes unchanged, and results can never
//! leak across code versions because the version is part of the key.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, LabeledPoset, RigidPairKey};
use crate::reconstruct::QuiverSketch;
use crate::silting::{support_of, LabeledSttiltPoset};

/// Crate version baked into every cache key so a release never reuses
/// results written by a different one.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of a byte string.
fn hex_sha256(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        let _ = write!(s, "{b:02x}");
    }
    s
}

// ---------------------------------------------------------------------------
// Labeled poset documents
// ---------------------------------------------------------------------------

/// One indecomposable summand of a two-term object: its g-vector and the
/// multiset of projectives in each degree, keyed by vertex name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    /// g-vector, indexed like [`PosetDocument::vertices`].
    pub g: Vec<i64>,
    /// Degree-0 projective multiplicities.
    pub p0: BTreeMap<String, usize>,
    /// Degree −1 projective multiplicities.
    pub p1: BTreeMap<String, usize>,
}

/// One element of a computed poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    /// Canonical id; equals the element's position in the document.
    pub id: usize,
    pub summands: Vec<SummandDoc>,
    /// Vertex names in the support of the corresponding τ-tilting pair.
    pub support: Vec<String>,
}

/// A computed support τ-tilting poset, fully labeled and deterministic on
/// the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    /// Content hash of the presentation the poset was computed from.
    pub algebra_hash: String,
    /// Vertex names; they fix the coordinate order of every `g` below.
    pub vertices: Vec<String>,
    pub elements: Vec<ElementDoc>,
    /// Covering relation; pairs run covering → covered.
    pub hasse: Vec<(usize, usize)>,
}

impl PosetDocument {
    /// Build the document for an enumeration run.  The run's element order
    /// is already canonical (sorted by g-vector matrix) and is kept as-is.
    pub fn from_run(run: &LabeledSttiltPoset, algebra_hash: String) -> PosetDocument {
        let names = &run.algebra.vertex_names;
        let count = |verts: &[usize]| -> BTreeMap<String, usize> {
            let mut m = BTreeMap::new();
            for &v in verts {
                *m.entry(names[v].clone()).or_insert(0) += 1;
            }
            m
        };
        let elements = run
            .elements
            .iter()
            .enumerate()
            .map(|(id, e)| ElementDoc {
                id,
                summands: e
                    .summands
                    .iter()
                    .map(|s| SummandDoc { g: s.g_vector(), p0: count(&s.p0), p1: count(&s.p1) })
                    .collect(),
                support: support_of(e).into_iter().map(|v| names[v].clone()).collect(),
            })
            .collect();
        PosetDocument {
            algebra_hash,
            vertices: names.clone(),
            elements,
            hasse: run.hasse.clone(),
        }
    }

    /// Check internal consistency: contiguous ids, g-vectors of the right
    /// length, known vertex names, covering pairs in range.
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        let rank = self.vertices.len();
        let known = |name: &String| self.vertices.contains(name);
        for (pos, e) in self.elements.iter().enumerate() {
            if e.id != pos {
                return Err(Error::InvalidSpec(format!(
                    "element at position {pos} carries id {}; ids must be contiguous",
                    e.id
                )));
            }
            for s in &e.summands {
                if s.g.len() != rank {
                    return Err(Error::InvalidSpec(format!(
                        "element {pos} has a g-vector of length {} over {rank} vertices",
                        s.g.len()
                    )));
                }
                if let Some(v) = s.p0.keys().chain(s.p1.keys()).find(|v| !known(v)) {
                    return Err(Error::InvalidSpec(format!(
                        "element {pos} references unknown vertex `{v}`"
                    )));
                }
            }
            if let Some(v) = e.support.iter().find(|v| !known(v)) {
                return Err(Error::InvalidSpec(format!(
                    "element {pos} has unknown vertex `{v}` in its support"
                )));
            }
        }
        for &(a, b) in &self.hasse {
            if a >= n || b >= n {
                return Err(Error::InvalidSpec(format!(
                    "hasse pair ({a}, {b}) out of range for {n} elements"
                )));
            }
        }
        Ok(())
    }

    /// Rebuild the analysis form: abstract poset, per-element summand keys,
    /// and per-element supports as vertex indices.
    pub fn to_labeled(&self) -> Result<LabeledPoset> {
        self.validate()?;
        let poset = FinitePoset::from_hasse(self.elements.len(), &self.hasse)?;
        let keys: Vec<RigidPairKey> = self
            .elements
            .iter()
            .map(|e| e.summands.iter().map(|s| s.g.clone()).collect())
            .collect();
        let index: BTreeMap<&str, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let supports = self
            .elements
            .iter()
            .map(|e| e.support.iter().map(|v| index[v.as_str()]).collect())
            .collect();
        Ok(LabeledPoset { poset, keys, supports, rank: self.vertices.len() })
    }

    /// Deterministic JSON (field order fixed, maps are ordered).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("poset document serializes")
    }

    /// Parse and validate a document.
    pub fn from_json(s: &str) -> Result<PosetDocument> {
        let doc: PosetDocument = serde_json::from_str(s)
            .map_err(|e| Error::InvalidSpec(format!("bad poset JSON: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    /// DOT rendering of the Hasse quiver; node labels carry the support.
    pub fn to_dot(&self) -> String {
        dot_digraph("sttilt", self.elements.len(), &self.hasse, |i| {
            let e = &self.elements[i];
            if e.support.is_empty() {
                format!("{i}")
            } else {
                format!("{i}: {}", e.support.join(" "))
            }
        })
    }

    /// Human-readable summary plus one adjacency line per element.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "support tau-tilting poset of algebra {} ({} vertices)",
            &self.algebra_hash[..self.algebra_hash.len().min(12)],
            self.vertices.len()
        );
        let _ = writeln!(s, "elements {}  covers {}", self.elements.len(), self.hasse.len());
        for e in &self.elements {
            let below: Vec<String> = self
                .hasse
                .iter()
                .filter(|&&(a, _)| a == e.id)
                .map(|&(_, b)| format!("x{b}"))
                .collect();
            let _ = writeln!(
                s,
                "x{} -> {}   support {{{}}}",
                e.id,
                if below.is_empty() { "-".to_string() } else { below.join(" ") },
                e.support.join(" ")
            );
        }
        s
    }
}

// ---------------------------------------------------------------------------
// Abstract poset documents
// ---------------------------------------------------------------------------

/// A bare finite poset on `0..elements`, given by its covering relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractPosetDocument {
    pub elements: usize,
    /// Covering relation; pairs run covering → covered.
    pub hasse: Vec<(usize, usize)>,
}

impl AbstractPosetDocument {
    pub fn from_poset(p: &FinitePoset) -> AbstractPosetDocument {
        AbstractPosetDocument { elements: p.len(), hasse: p.hasse().to_vec() }
    }

    /// Rebuild the poset, validating that the pairs form a covering relation.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_hasse(self.elements, &self.hasse)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("abstract poset serializes")
    }

    pub fn from_json(s: &str) -> Result<AbstractPosetDocument> {
        serde_json::from_str(s).map_err(|e| Error::InvalidSpec(format!("bad poset JSON: {e}")))
    }

    pub fn to_dot(&self) -> String {
        dot_digraph("poset", self.elements, &self.hasse, |i| format!("{i}"))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "poset: elements {}  covers {}", self.elements, self.hasse.len());
        for i in 0..self.elements {
            let below: Vec<String> = self
                .hasse
                .iter()
                .filter(|&&(a, _)| a == i)
                .map(|&(_, b)| format!("x{b}"))
                .collect();
            let _ = writeln!(
                s,
                "x{i} -> {}",
                if below.is_empty() { "-".to_string() } else { below.join(" ") }
            );
        }
        s
    }
}

// ---------------------------------------------------------------------------
// Quiver sketch documents
// ---------------------------------------------------------------------------

/// Wire form of a reconstructed quiver skeleton: vertex count plus arrows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SketchDocument {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl SketchDocument {
    pub fn from_sketch(q: &QuiverSketch) -> SketchDocument {
        SketchDocument { vertices: q.n, arrows: q.arrows.iter().copied().collect() }
    }

    pub fn to_sketch(&self) -> Result<QuiverSketch> {
        for &(s, t) in &self.arrows {
            if s >= self.vertices || t >= self.vertices {
                return Err(Error::InvalidSpec(format!(
                    "arrow ({s}, {t}) out of range for {} vertices",
                    self.vertices
                )));
            }
            if s == t {
                return Err(Error::InvalidSpec(format!("loop at vertex {s} is not allowed")));
            }
        }
        Ok(QuiverSketch { n: self.vertices, arrows: self.arrows.iter().copied().collect() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sketch serializes")
    }

    pub fn from_json(s: &str) -> Result<SketchDocument> {
        serde_json::from_str(s).map_err(|e| Error::InvalidSpec(format!("bad sketch JSON: {e}")))
    }

    pub fn to_dot(&self) -> String {
        dot_digraph("quiver", self.vertices, &self.arrows, |i| format!("{i}"))
    }
}

/// Render a digraph in DOT.  Node `i` is named `x{i}`; each pair `(a, b)`
/// becomes the arrow `x{a} -> x{b}`, so for Hasse input the drawing runs
/// from larger to smaller, maximum on top.
fn dot_digraph(
    name: &str,
    n: usize,
    edges: &[(usize, usize)],
    label: impl Fn(usize) -> String,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {name} {{");
    for i in 0..n {
        let _ = writeln!(s, "  x{i} [label=\"{}\"];", label(i));
    }
    for &(a, b) in edges {
        let _ = writeln!(s, "  x{a} -> x{b};");
    }
    s.push_str("}\n");
    s
}

// ---------------------------------------------------------------------------
// Result cache
// ---------------------------------------------------------------------------

/// On-disk content-addressed store for serialized computation results.
///
/// Entries are plain files named `{key}.json`; writes go through a temporary
/// file and a rename so a crashed run never leaves a truncated entry behind.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// A cache rooted at an explicit directory (created lazily on first put).
    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// Resolve the cache directory: an explicit path wins, then the
    /// `STTILT_CACHE_DIR` environment variable, then `sttilt-cache` under
    /// the system temporary directory.
    pub fn resolve(explicit: Option<&Path>) -> Cache {
        if let Some(d) = explicit {
            return Cache::at(d);
        }
        match std::env::var("STTILT_CACHE_DIR") {
            Ok(d) if !d.is_empty() => Cache::at(d),
            _ => Cache::at(std::env::temp_dir().join("sttilt-cache")),
        }
    }

    /// Root directory of this cache.
    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key for a poset computation.  The presentation hash already covers
    /// the quiver, the relations, and the ground field; adding the crate
    /// version keeps results from crossing releases.
    pub fn compute_key(presentation_hash: &str) -> String {
        hex_sha256(format!("compute\n{presentation_hash}\n{CODE_VERSION}\n").as_bytes())
    }

    fn entry(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored bytes for a key, if present and readable.
    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.entry(key)).ok()
    }

    /// Store bytes under a key, atomically replacing any previous entry.
    pub fn put(&self, key: &str, value: &str) -> Result<()> {
        let ctx = |e: std::io::Error| Error::Io(format!("cache at {}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(ctx)?;
        let tmp = self.dir.join(format!(".{key}.tmp{}", std::process::id()));
        fs::write(&tmp, value).map_err(ctx)?;
        fs::rename(&tmp, self.entry(key)).map_err(ctx)?;
        Ok(())
    }
}
