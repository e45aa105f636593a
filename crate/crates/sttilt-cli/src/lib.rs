//! Command-line front end for support τ-tilting poset computations.
//!
//! Every subcommand is a pure function from a [`JobConfig`] to a
//! [`CmdOutput`]: the rendered stdout payload plus a verdict that the binary
//! turns into an exit code.  The convention is
//!
//! * exit `0` — success, and for decision commands the answer is *yes*
//!   (isomorphic / equivalent / member);
//! * exit `1` — the command ran fine and the answer is *no*;
//! * exit `2` — an error, reported as a single JSON object on stderr (see
//!   [`error_json`]).
//!
//! Inputs are file paths: algebra presentations, computed poset documents,
//! bare posets, and family/fixture specifications, all JSON.  Every command
//! honours `--format json|dot|text`; `compute` additionally maintains a
//! content-addressed result cache so repeated runs over the same
//! presentation return byte-identical documents without re-enumeration.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sttilt_core::algebra::{build_algebra, min_factor};
use sttilt_core::families::{family_algebra, FamilySpec};
use sttilt_core::fixtures::{fixture_poset, FixtureSpec};
use sttilt_core::io::{AbstractPosetDocument, Cache, PosetDocument, SketchDocument};
use sttilt_core::poset::{poset_isomorphisms, realizability_obstruction, FinitePoset, ObstructionVerdict};
use sttilt_core::presentation::Presentation;
use sttilt_core::reconstruct::{equiv_check, qstar_from_poset, theta_membership, EquivOutcome};
use sttilt_core::silting::enumerate_sttilt;
use sttilt_core::{Error, FieldSpec, Result};

/// One CLI invocation: the subcommand (with its input paths) plus the
/// global knobs shared by every command.
#[derive(Debug, Parser)]
#[command(name = "sttilt", version, about = "Support τ-tilting posets of bound-quiver algebras")]
pub struct JobConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Ground field: `rational`, `prime` (a fixed large default), or
    /// `prime:<p>`.  Overrides the field stored in algebra inputs.
    #[arg(long, global = true, value_parser = parse_field_spec)]
    pub field: Option<FieldSpec>,

    /// Abort enumeration once the poset exceeds this many elements.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_elements: usize,

    /// Worker threads for the mutation search (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Output format for stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Result cache directory (default: `$STTILT_CACHE_DIR`, else a
    /// `sttilt-cache` directory under the system temp dir).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Disable the result cache for this run.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the support τ-tilting poset of a presented algebra.
    Compute {
        /// Path to a presentation JSON file.
        algebra: PathBuf,
    },
    /// Summarize a poset: size, extrema, regularity, lattice property, and
    /// the counting obstruction.
    Analyze {
        /// Path to a poset JSON file (computed document or bare poset).
        poset: PathBuf,
    },
    /// Recover the loop-free arrow skeleton of the quiver from a poset.
    Reconstruct {
        /// Path to a poset JSON file (computed document or bare poset).
        poset: PathBuf,
    },
    /// Decide whether two posets are isomorphic; print a witness map.
    Compare {
        left: PathBuf,
        right: PathBuf,
    },
    /// Decide whether two presented algebras are related by a vertex
    /// bijection preserving quiver, projective supports, and spanning paths.
    Equiv {
        left: PathBuf,
        right: PathBuf,
    },
    /// Emit the presentation of a named algebra family member.
    Family {
        /// Path to a family specification JSON file.
        spec: PathBuf,
    },
    /// Emit a stored or parametrized fixture poset.
    Fixture {
        /// Path to a fixture specification JSON file.
        spec: PathBuf,
    },
    /// Compute the minimal factor algebra (diagonal radical killed) and its
    /// canonical monomial presentation.
    Minimize {
        /// Path to a presentation JSON file.
        algebra: PathBuf,
    },
    /// Decide membership in the reconstructible class: spanning-path
    /// condition plus a tree partition with lattice quotients.
    Theta {
        /// Path to a presentation JSON file.
        algebra: PathBuf,
    },
}

/// Output format of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// What a successfully executed command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    /// Rendered payload for stdout (already in the requested format).
    pub stdout: String,
    /// Decision verdict; `false` makes the binary exit 1.  Commands that
    /// produce artifacts rather than decisions always set `true`.
    pub verdict: bool,
}

impl CmdOutput {
    fn artifact(stdout: String) -> CmdOutput {
        CmdOutput { stdout, verdict: true }
    }
}

/// Parse `--field` values: `rational`, `prime`, or `prime:<p>`.
pub fn parse_field_spec(s: &str) -> std::result::Result<FieldSpec, String> {
    match s {
        "rational" => return Ok(FieldSpec::Rational),
        "prime" => return Ok(FieldSpec::Prime { p: FieldSpec::DEFAULT_PRIME }),
        _ => {}
    }
    let Some(rest) = s.strip_prefix("prime:") else {
        return Err(format!("expected `rational`, `prime`, or `prime:<p>`, got `{s}`"));
    };
    let p: u64 = rest.parse().map_err(|_| format!("cannot parse prime order `{rest}`"))?;
    if p > u32::MAX as u64 {
        return Err(format!("prime order {p} is too large (must fit in 32 bits)"));
    }
    if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(format!("{p} is not prime"));
    }
    Ok(FieldSpec::Prime { p })
}

/// Run one job.  `Ok` carries the stdout payload and the verdict; `Err`
/// means exit code 2 with [`error_json`] on stderr.
pub fn run(cfg: &JobConfig) -> Result<CmdOutput> {
    if let Some(n) = cfg.jobs {
        // First caller wins; later invocations in the same process keep the
        // already-built pool, which is the right behaviour for tests.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match &cfg.command {
        Command::Compute { algebra } => cmd_compute(cfg, algebra),
        Command::Analyze { poset } => cmd_analyze(cfg, poset),
        Command::Reconstruct { poset } => cmd_reconstruct(cfg, poset),
        Command::Compare { left, right } => cmd_compare(cfg, left, right),
        Command::Equiv { left, right } => cmd_equiv(cfg, left, right),
        Command::Family { spec } => cmd_family(cfg, spec),
        Command::Fixture { spec } => cmd_fixture(cfg, spec),
        Command::Minimize { algebra } => cmd_minimize(cfg, algebra),
        Command::Theta { algebra } => cmd_theta(cfg, algebra),
    }
}

/// Structured error report printed to stderr on exit code 2: a single JSON
/// object `{"error": {"kind", "message"}}`.
pub fn error_json(e: &Error) -> String {
    let kind = match e {
        Error::NonAdmissible(_) => "non-admissible",
        Error::InconsistentPath(_) => "inconsistent-path",
        Error::FieldTooSmall { .. } => "field-too-small",
        Error::Condition1Violated { .. } => "generator-set-condition",
        Error::NotTwoTermReducible(_) => "not-two-term-reducible",
        Error::SplitFailure { .. } => "split-failure",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::CycleDetected { .. } => "cycle-detected",
        Error::NotLattice { .. } => "not-lattice",
        Error::PairingFailed(_) => "pairing-failed",
        Error::KeyNotRealized => "key-not-realized",
        Error::NotFound(_) => "not-found",
        Error::Ambiguous(_) => "ambiguous",
        Error::InvalidSpec(_) => "invalid-spec",
        Error::Io(_) => "io",
    };
    json!({ "error": { "kind": kind, "message": e.to_string() } }).to_string()
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Load a presentation, optionally re-grounding it in another field.  The
/// override swaps the `field` member of the wire form and re-parses, so
/// every coefficient literal is re-interpreted in the requested field.
fn load_presentation(path: &Path, field: Option<FieldSpec>) -> Result<Presentation> {
    let text = read_file(path)?;
    match field {
        None => Presentation::from_json(&text),
        Some(f) => Presentation::from_json(&reground(&text, f)?),
    }
}

fn reground(presentation_json: &str, field: FieldSpec) -> Result<String> {
    let mut v: serde_json::Value = serde_json::from_str(presentation_json)
        .map_err(|e| Error::InvalidSpec(format!("bad presentation JSON: {e}")))?;
    v["field"] =
        serde_json::to_value(field).map_err(|e| Error::InvalidSpec(format!("bad field: {e}")))?;
    Ok(v.to_string())
}

/// A poset input: either a fully labeled computed document or a bare poset.
enum LoadedPoset {
    Labeled(PosetDocument),
    Bare(AbstractPosetDocument),
}

impl LoadedPoset {
    fn poset(&self) -> Result<FinitePoset> {
        match self {
            LoadedPoset::Labeled(doc) => {
                FinitePoset::from_hasse(doc.elements.len(), &doc.hasse)
            }
            LoadedPoset::Bare(doc) => doc.to_poset(),
        }
    }
}

fn load_poset(path: &Path) -> Result<LoadedPoset> {
    let text = read_file(path)?;
    match PosetDocument::from_json(&text) {
        Ok(doc) => Ok(LoadedPoset::Labeled(doc)),
        Err(labeled_err) => match AbstractPosetDocument::from_json(&text) {
            Ok(doc) => Ok(LoadedPoset::Bare(doc)),
            Err(_) => Err(Error::InvalidSpec(format!(
                "{}: not a poset document ({labeled_err})",
                path.display()
            ))),
        },
    }
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

/// DOT form of a presented quiver: named vertices, labeled arrows (loops
/// and parallel arrows included).
fn quiver_dot(p: &Presentation) -> String {
    let mut s = String::from("digraph quiver {\n");
    for (i, name) in p.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{i} [label=\"{name}\"];");
    }
    for a in &p.arrows {
        let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", a.src, a.tgt, a.name);
    }
    s.push_str("}\n");
    s
}

/// Text form of a presentation: field, vertices, arrows, relations.
fn presentation_text(p: &Presentation) -> String {
    let mut s = String::new();
    let field = match p.field {
        FieldSpec::Rational => "rational".to_string(),
        FieldSpec::Prime { p } => format!("prime:{p}"),
    };
    let _ = writeln!(s, "field {field}");
    let _ = writeln!(s, "vertices {}", p.vertices.join(" "));
    for a in &p.arrows {
        let _ = writeln!(s, "arrow {}: {} -> {}", a.name, p.vertices[a.src], p.vertices[a.tgt]);
    }
    for rel in &p.relations {
        let terms: Vec<String> = rel
            .iter()
            .map(|t| {
                let path = p.path_label(&t.path);
                let c = t.coeff.to_string();
                if c == "1" {
                    path
                } else {
                    format!("{c}·{path}")
                }
            })
            .collect();
        let _ = writeln!(s, "relation {} = 0", terms.join(" + "));
    }
    s
}

/// The common Hasse degree when the poset is regular.
fn regular_degree(p: &FinitePoset) -> Option<usize> {
    let d = p.dip(0).len() + p.dis(0).len();
    if p.is_regular(d) {
        Some(d)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Enumerate the poset of the presented algebra and emit it.  Successful
/// results are cached under the presentation's content hash plus the crate
/// version; a cache hit is returned byte-for-byte.
pub fn cmd_compute(cfg: &JobConfig, algebra: &Path) -> Result<CmdOutput> {
    let p = load_presentation(algebra, cfg.field)?;
    let cache = if cfg.no_cache { None } else { Some(Cache::resolve(cfg.cache_dir.as_deref())) };
    let key = Cache::compute_key(&p.content_hash());

    let json = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(hit) => {
            let doc = PosetDocument::from_json(&hit)?;
            if doc.elements.len() > cfg.max_elements {
                // Mirror what a fresh run would do instead of answering
                // from the cache with more elements than the caller allows.
                return Err(Error::CapExceeded { cap: cfg.max_elements });
            }
            hit
        }
        None => {
            let built = Arc::new(build_algebra(&p)?);
            let run = enumerate_sttilt(&built, cfg.max_elements)?;
            let doc = PosetDocument::from_run(&run, p.content_hash());
            let json = doc.to_json();
            if let Some(c) = &cache {
                c.put(&key, &json)?;
            }
            json
        }
    };
    let stdout = match cfg.format {
        Format::Json => json,
        Format::Dot => PosetDocument::from_json(&json)?.to_dot(),
        Format::Text => PosetDocument::from_json(&json)?.to_text(),
    };
    Ok(CmdOutput::artifact(stdout))
}

/// Summarize a poset: counts, extrema, connectivity, regularity, lattice
/// property, and the counting obstruction verdict.
pub fn cmd_analyze(cfg: &JobConfig, path: &Path) -> Result<CmdOutput> {
    let loaded = load_poset(path)?;
    let poset = loaded.poset()?;
    let obstruction = match realizability_obstruction(&poset) {
        Ok(ObstructionVerdict::Pass) => json!("pass"),
        Ok(ObstructionVerdict::Fail { bottom_sizes, top_sizes }) => {
            json!({ "bottom_sizes": bottom_sizes, "top_sizes": top_sizes })
        }
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    let mut report = json!({
        "elements": poset.len(),
        "covers": poset.hasse().len(),
        "minimum": poset.unique_min(),
        "maximum": poset.unique_max(),
        "connected": poset.is_connected(),
        "lattice": poset.is_lattice(),
        "regular_degree": regular_degree(&poset),
        "obstruction": obstruction,
    });
    if let LoadedPoset::Labeled(doc) = &loaded {
        report["algebra_hash"] = json!(doc.algebra_hash);
        report["rank"] = json!(doc.vertices.len());
    }
    let stdout = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        Format::Dot => match &loaded {
            LoadedPoset::Labeled(doc) => doc.to_dot(),
            LoadedPoset::Bare(doc) => doc.to_dot(),
        },
        Format::Text => {
            let mut s = String::new();
            let fmt_opt = |v: Option<usize>| v.map_or("none".into(), |x| format!("x{x}"));
            let _ = writeln!(s, "elements {}", poset.len());
            let _ = writeln!(s, "covers {}", poset.hasse().len());
            let _ = writeln!(s, "minimum {}", fmt_opt(poset.unique_min()));
            let _ = writeln!(s, "maximum {}", fmt_opt(poset.unique_max()));
            let _ = writeln!(s, "connected {}", poset.is_connected());
            let _ = writeln!(s, "lattice {}", poset.is_lattice());
            let _ = writeln!(
                s,
                "regular {}",
                regular_degree(&poset).map_or("no".into(), |d| d.to_string())
            );
            let _ = writeln!(s, "obstruction {obstruction}");
            s
        }
    };
    Ok(CmdOutput::artifact(stdout))
}

/// Recover the loop-free arrow skeleton from a poset.
pub fn cmd_reconstruct(cfg: &JobConfig, path: &Path) -> Result<CmdOutput> {
    let poset = load_poset(path)?.poset()?;
    let sketch = qstar_from_poset(&poset)?;
    let doc = SketchDocument::from_sketch(&sketch);
    let stdout = match cfg.format {
        Format::Json => doc.to_json(),
        Format::Dot => doc.to_dot(),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "vertices {}", doc.vertices);
            for (a, b) in &doc.arrows {
                let _ = writeln!(s, "arrow {a} -> {b}");
            }
            s
        }
    };
    Ok(CmdOutput::artifact(stdout))
}

/// Poset isomorphism test; verdict `false` (exit 1) when not isomorphic.
pub fn cmd_compare(cfg: &JobConfig, left: &Path, right: &Path) -> Result<CmdOutput> {
    let p1 = load_poset(left)?.poset()?;
    let p2 = load_poset(right)?.poset()?;
    let maps = poset_isomorphisms(&p1, &p2);
    let (stdout, verdict) = match maps.first() {
        Some(map) => {
            let s = match cfg.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "isomorphic": true, "map": map }))
                        .expect("report serializes")
                }
                _ => {
                    let mut s = String::from("isomorphic\n");
                    for (a, b) in map.iter().enumerate() {
                        let _ = writeln!(s, "x{a} -> x{b}");
                    }
                    s
                }
            };
            (s, true)
        }
        None => {
            let s = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&json!({ "isomorphic": false }))
                    .expect("report serializes"),
                _ => "not isomorphic\n".to_string(),
            };
            (s, false)
        }
    };
    Ok(CmdOutput { stdout, verdict })
}

/// Vertex-bijection equivalence of two presented algebras; verdict `false`
/// (exit 1) with a structured mismatch report when none exists.
pub fn cmd_equiv(cfg: &JobConfig, left: &Path, right: &Path) -> Result<CmdOutput> {
    let p1 = load_presentation(left, cfg.field)?;
    let p2 = load_presentation(right, cfg.field)?;
    match equiv_check(&p1, &p2)? {
        EquivOutcome::Equivalent { vertex_map } => {
            // Pair each loop-free arrow of the left quiver with the unique
            // arrow of the right quiver between the image endpoints.
            let mut arrow_map: Vec<(String, String)> = Vec::new();
            for a in p1.arrows.iter().filter(|a| a.src != a.tgt) {
                let (s, t) = (vertex_map[a.src], vertex_map[a.tgt]);
                let image = p2
                    .arrows
                    .iter()
                    .find(|b| b.src == s && b.tgt == t)
                    .expect("equivalence matches loop-free skeletons");
                arrow_map.push((a.name.clone(), image.name.clone()));
            }
            let stdout = match cfg.format {
                Format::Json => {
                    let vm: serde_json::Map<String, serde_json::Value> = vertex_map
                        .iter()
                        .enumerate()
                        .map(|(i, &w)| (p1.vertices[i].clone(), json!(p2.vertices[w])))
                        .collect();
                    let am: serde_json::Map<String, serde_json::Value> =
                        arrow_map.iter().map(|(a, b)| (a.clone(), json!(b))).collect();
                    serde_json::to_string_pretty(&json!({
                        "equivalent": true,
                        "vertex_map": vm,
                        "arrow_map": am,
                    }))
                    .expect("report serializes")
                }
                _ => {
                    let mut s = String::from("equivalent\n");
                    for (i, &w) in vertex_map.iter().enumerate() {
                        let _ = writeln!(s, "vertex {} -> {}", p1.vertices[i], p2.vertices[w]);
                    }
                    for (a, b) in &arrow_map {
                        let _ = writeln!(s, "arrow {a} -> {b}");
                    }
                    s
                }
            };
            Ok(CmdOutput { stdout, verdict: true })
        }
        EquivOutcome::NotEquivalent { reason } => {
            let stdout = match cfg.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({ "equivalent": false, "reason": reason }))
                        .expect("report serializes")
                }
                _ => format!("not equivalent: {reason}\n"),
            };
            Ok(CmdOutput { stdout, verdict: false })
        }
    }
}

/// Emit the presentation of a family member.
pub fn cmd_family(cfg: &JobConfig, spec: &Path) -> Result<CmdOutput> {
    let text = read_file(spec)?;
    let fam: FamilySpec = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidSpec(format!("bad family spec: {e}")))?;
    let p = family_algebra(cfg.field.unwrap_or(FieldSpec::Rational), &fam)?;
    let stdout = match cfg.format {
        Format::Json => p.to_json(),
        Format::Dot => quiver_dot(&p),
        Format::Text => presentation_text(&p),
    };
    Ok(CmdOutput::artifact(stdout))
}

/// Emit a fixture poset.
pub fn cmd_fixture(cfg: &JobConfig, spec: &Path) -> Result<CmdOutput> {
    let text = read_file(spec)?;
    let fx: FixtureSpec = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidSpec(format!("bad fixture spec: {e}")))?;
    let poset = fixture_poset(&fx)?;
    let doc = AbstractPosetDocument::from_poset(&poset);
    let stdout = match cfg.format {
        Format::Json => doc.to_json(),
        Format::Dot => doc.to_dot(),
        Format::Text => doc.to_text(),
    };
    Ok(CmdOutput::artifact(stdout))
}

/// Emit the canonical presentation of the minimal factor algebra.
pub fn cmd_minimize(cfg: &JobConfig, algebra: &Path) -> Result<CmdOutput> {
    let p = load_presentation(algebra, cfg.field)?;
    let a = build_algebra(&p)?;
    let mf = min_factor(&p, &a)?;
    let stdout = match cfg.format {
        Format::Json => mf.presentation.to_json(),
        Format::Dot => quiver_dot(&mf.presentation),
        Format::Text => {
            let mut s = presentation_text(&mf.presentation);
            let _ = writeln!(s, "dimension {} (from {})", mf.algebra.dim(), a.dim());
            s
        }
    };
    Ok(CmdOutput::artifact(stdout))
}

/// Membership in the reconstructible class; verdict `false` (exit 1) when
/// the algebra is not a member.
pub fn cmd_theta(cfg: &JobConfig, algebra: &Path) -> Result<CmdOutput> {
    let p = load_presentation(algebra, cfg.field)?;
    let a = Arc::new(build_algebra(&p)?);
    let member = theta_membership(&p, &a, cfg.max_elements)?;
    let stdout = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&json!({ "member": member }))
            .expect("report serializes"),
        _ => format!("member {member}\n"),
    };
    Ok(CmdOutput { stdout, verdict: member })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_parsing_accepts_the_documented_forms() {
        assert_eq!(parse_field_spec("rational").unwrap(), FieldSpec::Rational);
        assert_eq!(
            parse_field_spec("prime").unwrap(),
            FieldSpec::Prime { p: FieldSpec::DEFAULT_PRIME }
        );
        assert_eq!(parse_field_spec("prime:7").unwrap(), FieldSpec::Prime { p: 7 });
        assert!(parse_field_spec("prime:9").is_err());
        assert!(parse_field_spec("prime:1").is_err());
        assert!(parse_field_spec("real").is_err());
        assert!(parse_field_spec("prime:99999999999999").is_err());
    }

    #[test]
    fn cli_parses_global_flags_anywhere() {
        let cfg = JobConfig::try_parse_from([
            "sttilt",
            "compute",
            "alg.json",
            "--field",
            "prime:5",
            "--max-elements",
            "500",
            "--format",
            "dot",
            "--no-cache",
        ])
        .unwrap();
        assert_eq!(cfg.field, Some(FieldSpec::Prime { p: 5 }));
        assert_eq!(cfg.max_elements, 500);
        assert_eq!(cfg.format, Format::Dot);
        assert!(cfg.no_cache);
        assert!(matches!(cfg.command, Command::Compute { .. }));
    }

    #[test]
    fn default_flags_match_the_documented_contract() {
        let cfg = JobConfig::try_parse_from(["sttilt", "analyze", "p.json"]).unwrap();
        assert_eq!(cfg.field, None);
        assert_eq!(cfg.max_elements, 100_000);
        assert_eq!(cfg.format, Format::Json);
        assert!(!cfg.no_cache);
        assert_eq!(cfg.cache_dir, None);
        assert_eq!(cfg.jobs, None);
    }

    #[test]
    fn error_json_is_a_single_structured_object() {
        let e = Error::CapExceeded { cap: 10 };
        let s = error_json(&e);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["error"]["kind"], "cap-exceeded");
        assert!(v["error"]["message"].as_str().unwrap().contains("10"));
        assert!(!s.contains('\n'));
    }
}
