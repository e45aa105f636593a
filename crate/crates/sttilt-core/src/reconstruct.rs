//! Quiver reconstruction from an abstract poset, and the support/path-set
//! equivalence test between two presented algebras.
//!
//! A support τ-tilting poset remembers a surprising amount of the algebra it
//! came from.  Writing `X_i = Λ/(1 − e_i)` for the atoms (the covers of the
//! minimum), three purely order-theoretic observations drive this module:
//!
//! * for each pair of atoms `X_i ≠ X_j` there is a unique element standing in
//!   for `Λ/(1 − e_i − e_j)`: it lies above both atoms, covers exactly two
//!   elements, and no element except the minimum lies below everything it
//!   covers ([`pair_top_element`]);
//! * whether that element *covers* `X_i` and/or `X_j` decides whether the
//!   quiver has arrows `i → j` and/or `j → i`, recovering the loop-free arrow
//!   skeleton up to multiplicities ([`qstar_from_poset`]);
//! * the same predicate applied to an arbitrary atom subset `V` finds the top
//!   element of the `V`-supported part of the poset, and intersecting over
//!   all such tops recovers every element's support ([`supports_from_poset`]).
//!
//! The second half compares two *presented* algebras: [`equiv_check`] looks
//! for a vertex bijection that identifies the loop-free quivers, the supports
//! of the indecomposable projectives, and the sets of two-sided spanning
//! paths — relation coefficients are deliberately ignored, because algebras
//! differing only in coefficients share their poset.  [`condition2_check`]
//! searches for a partition of the quiver into connected blocks whose block
//! quiver is a tree while every one- and two-block quotient algebra has a
//! lattice poset, and [`theta_membership`] combines that with the spanning
//! path condition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::algebra::{
    build_algebra, condition1_check, g_sets, restrict_to_vertices, BasedAlgebra, GSets,
};
use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::presentation::Presentation;
use crate::silting::enumerate_sttilt;

// ---------------------------------------------------------------------------
// Quiver sketches
// ---------------------------------------------------------------------------

/// A loop-free directed graph without parallel arrows: the part of a Gabriel
/// quiver that an abstract support τ-tilting poset determines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSketch {
    /// Number of vertices; arrows use indices `0..n`.
    pub n: usize,
    /// Arrows as `(source, target)` pairs with `source ≠ target`.
    pub arrows: BTreeSet<(usize, usize)>,
}

impl QuiverSketch {
    /// The loop-free, multiplicity-free skeleton of a presented quiver.
    pub fn from_presentation(p: &Presentation) -> QuiverSketch {
        let arrows =
            p.arrows.iter().filter(|a| a.src != a.tgt).map(|a| (a.src, a.tgt)).collect();
        QuiverSketch { n: p.n_vertices(), arrows }
    }

    /// Rename vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> QuiverSketch {
        QuiverSketch {
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| (perm[s], perm[t])).collect(),
        }
    }

    /// Digraph isomorphism by degree-pruned backtracking.
    pub fn isomorphic_to(&self, other: &QuiverSketch) -> bool {
        if self.n != other.n || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let sig = |q: &QuiverSketch| -> Vec<(usize, usize)> {
            let mut s = vec![(0usize, 0usize); q.n];
            for &(a, b) in &q.arrows {
                s[a].0 += 1;
                s[b].1 += 1;
            }
            s
        };
        let s1 = sig(self);
        let s2 = sig(other);
        let mut m1 = s1.clone();
        let mut m2 = s2.clone();
        m1.sort_unstable();
        m2.sort_unstable();
        if m1 != m2 {
            return false;
        }
        let cands: Vec<Vec<usize>> = (0..self.n)
            .map(|v| (0..self.n).filter(|&w| s2[w] == s1[v]).collect())
            .collect();
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend_iso(other, &cands, &mut map, &mut used, 0)
    }

    fn extend_iso(
        &self,
        other: &QuiverSketch,
        cands: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
    ) -> bool {
        if v == self.n {
            return true;
        }
        'next: for &w in &cands[v] {
            if used[w] {
                continue;
            }
            for u in 0..v {
                if self.arrows.contains(&(u, v)) != other.arrows.contains(&(map[u], w))
                    || self.arrows.contains(&(v, u)) != other.arrows.contains(&(w, map[u]))
                {
                    continue 'next;
                }
            }
            map[v] = w;
            used[w] = true;
            if self.extend_iso(other, cands, map, used, v + 1) {
                return true;
            }
            used[w] = false;
        }
        false
    }
}

// ---------------------------------------------------------------------------
// Reconstruction from an abstract poset
// ---------------------------------------------------------------------------

/// Does the minimum remain the only common lower bound of `elems`?
fn only_common_lower_bound_is_min(p: &FinitePoset, elems: &[usize], min: usize) -> bool {
    (0..p.len()).all(|y| y == min || !elems.iter().all(|&d| p.ge(d, y)))
}

fn unique_min_of(p: &FinitePoset) -> Result<usize> {
    p.unique_min().ok_or_else(|| Error::NotFound("poset has no unique minimum".into()))
}

/// The unique element standing in for `Λ/(1 − e_i − e_j)`: above both atoms,
/// covering exactly two elements, with no common lower bound of its covered
/// elements other than the minimum.  When the join of the two atoms exists it
/// must agree with the result (cross-checked).
///
/// `xi`, `xj` are distinct atoms given as poset element ids.
pub fn pair_top_element(p: &FinitePoset, xi: usize, xj: usize) -> Result<usize> {
    let min = unique_min_of(p)?;
    let atoms = p.dip(min);
    if xi == xj || !atoms.contains(&xi) || !atoms.contains(&xj) {
        return Err(Error::InvalidSpec(format!(
            "pair top requested for ({xi}, {xj}), which are not two distinct atoms"
        )));
    }
    let mut found = Vec::new();
    for t in 0..p.len() {
        if p.ge(t, xi)
            && p.ge(t, xj)
            && p.dis(t).len() == 2
            && only_common_lower_bound_is_min(p, p.dis(t), min)
        {
            found.push(t);
        }
    }
    match found.as_slice() {
        [] => Err(Error::NotFound(format!("no pair top exists over atoms {xi} and {xj}"))),
        [t] => {
            if let Ok(join) = p.join(xi, xj) {
                if join != *t {
                    return Err(Error::Ambiguous(format!(
                        "pair top {t} disagrees with the join {join} of atoms {xi} and {xj}"
                    )));
                }
            }
            Ok(*t)
        }
        many => Err(Error::Ambiguous(format!(
            "{} candidates for the pair top over atoms {xi} and {xj}",
            many.len()
        ))),
    }
}

/// The top element of the part of the poset supported inside the atom set
/// `v` (given as positions into `atoms`): it lies above every chosen atom,
/// covers exactly `|v|` elements, and only the minimum sits below everything
/// it covers.  The empty set yields the minimum itself.
pub fn top_of_support(p: &FinitePoset, atoms: &[usize], v: &BTreeSet<usize>) -> Result<usize> {
    let min = unique_min_of(p)?;
    if v.is_empty() {
        return Ok(min);
    }
    if v.iter().any(|&pos| pos >= atoms.len()) {
        return Err(Error::InvalidSpec("support position out of atom range".into()));
    }
    let mut found = Vec::new();
    for t in 0..p.len() {
        if v.iter().all(|&pos| p.ge(t, atoms[pos]))
            && p.dis(t).len() == v.len()
            && only_common_lower_bound_is_min(p, p.dis(t), min)
        {
            found.push(t);
        }
    }
    match found.as_slice() {
        [] => Err(Error::NotFound(format!("no top element for the atom set {v:?}"))),
        [t] => Ok(*t),
        many => {
            Err(Error::Ambiguous(format!("{} top candidates for the atom set {v:?}", many.len())))
        }
    }
}

/// Recover the loop-free arrow skeleton of the quiver from the abstract
/// poset.  Vertices are atom positions (atoms sorted by element id); for each
/// atom pair the classification asks whether the pair top covers the atoms:
/// covering both means no arrows, covering only `X_j` means a single arrow
/// `i → j`, covering neither means arrows both ways.
pub fn qstar_from_poset(p: &FinitePoset) -> Result<QuiverSketch> {
    let min = unique_min_of(p)?;
    let atoms: Vec<usize> = p.dip(min).to_vec();
    let n = atoms.len();
    let mut arrows = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let t = pair_top_element(p, atoms[i], atoms[j])?;
            let covers_i = p.dip(atoms[i]).contains(&t);
            let covers_j = p.dip(atoms[j]).contains(&t);
            match (covers_i, covers_j) {
                (true, true) => {}
                (false, true) => {
                    arrows.insert((i, j));
                }
                (true, false) => {
                    arrows.insert((j, i));
                }
                (false, false) => {
                    arrows.insert((i, j));
                    arrows.insert((j, i));
                }
            }
        }
    }
    Ok(QuiverSketch { n, arrows })
}

/// Recover every element's support as a set of atom positions: compute the
/// top element of each atom subset, then assign each element the smallest
/// subset whose top lies above it (the intersection of all candidates, which
/// must itself be a candidate).
pub fn supports_from_poset(p: &FinitePoset) -> Result<Vec<BTreeSet<usize>>> {
    let min = unique_min_of(p)?;
    let atoms: Vec<usize> = p.dip(min).to_vec();
    let n = atoms.len();
    let mut tops: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for mask in 0..(1usize << n) {
        let v: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let t = top_of_support(p, &atoms, &v)?;
        tops.insert(v, t);
    }
    let mut out = Vec::with_capacity(p.len());
    for t in 0..p.len() {
        let mut supp: BTreeSet<usize> = (0..n).collect();
        for (v, &top) in &tops {
            if p.ge(top, t) {
                supp = supp.intersection(v).copied().collect();
            }
        }
        if !p.ge(tops[&supp], t) {
            return Err(Error::Ambiguous(format!(
                "support candidates for element {t} are not closed under intersection"
            )));
        }
        out.push(supp);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Support/path-set equivalence of presented algebras
// ---------------------------------------------------------------------------

/// Outcome of [`equiv_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivOutcome {
    /// A vertex bijection passes all three tests; `vertex_map[i]` is the
    /// image of vertex `i` of the first presentation.
    Equivalent { vertex_map: Vec<usize> },
    /// No vertex bijection works; the reason names the furthest obstruction.
    NotEquivalent { reason: String },
}

fn require_condition1(gs: &GSets) -> Result<()> {
    let report = condition1_check(gs);
    match report.violations.first() {
        None => Ok(()),
        Some(&(i, j)) => Err(Error::Condition1Violated { i, j }),
    }
}

/// Loop-free arrow endpoints; refuses parallel arrows between distinct
/// vertices, for which path renaming by endpoints would be ill-defined.
fn loop_free_endpoints(p: &Presentation) -> Result<BTreeSet<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    for a in &p.arrows {
        if a.src == a.tgt {
            continue;
        }
        if !seen.insert((a.src, a.tgt)) {
            return Err(Error::Ambiguous(format!(
                "parallel arrows {} → {} are outside the scope of the equivalence test",
                a.src, a.tgt
            )));
        }
    }
    Ok(seen)
}

/// Support of each indecomposable projective: `{j : e_i Λ e_j ≠ 0}`.
fn projective_supports(a: &BasedAlgebra) -> Vec<BTreeSet<usize>> {
    let n = a.n_vertices();
    (0..n).map(|i| (0..n).filter(|&j| !a.block(i, j).is_empty()).collect()).collect()
}

/// Spanning paths per ordered vertex pair, as endpoint sequences (legal
/// because parallel arrows have been ruled out).
fn spanning_path_sets(
    p: &Presentation,
    gs: &GSets,
) -> BTreeMap<(usize, usize), BTreeSet<Vec<(usize, usize)>>> {
    let mut out = BTreeMap::new();
    for pair in &gs.pairs {
        if pair.block_dim == 0 {
            continue;
        }
        let paths: BTreeSet<Vec<(usize, usize)>> = pair
            .g_paths
            .iter()
            .map(|w| w.iter().map(|&aid| (p.arrows[aid].src, p.arrows[aid].tgt)).collect())
            .collect();
        out.insert((pair.src, pair.tgt), paths);
    }
    out
}

fn for_each_bijection(
    cands: &[Vec<usize>],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    v: usize,
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if v == cands.len() {
        return accept(map);
    }
    for &w in &cands[v] {
        if used[w] {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if for_each_bijection(cands, map, used, v + 1, accept) {
            return true;
        }
        used[w] = false;
    }
    false
}

/// Decide whether two presented algebras are related by a vertex bijection
/// that identifies the loop-free quivers, the projective supports, and the
/// two-sided spanning path sets.  Relation coefficients are not compared.
/// Both algebras must satisfy the spanning-path condition on every nonzero
/// off-diagonal block ([`Error::Condition1Violated`] otherwise).
pub fn equiv_check(p1: &Presentation, p2: &Presentation) -> Result<EquivOutcome> {
    let a1 = build_algebra(p1)?;
    let a2 = build_algebra(p2)?;
    let gs1 = g_sets(p1, &a1);
    let gs2 = g_sets(p2, &a2);
    require_condition1(&gs1)?;
    require_condition1(&gs2)?;
    let n = p1.n_vertices();
    if n != p2.n_vertices() {
        return Ok(EquivOutcome::NotEquivalent {
            reason: format!("vertex counts differ: {n} vs {}", p2.n_vertices()),
        });
    }
    let skel1 = loop_free_endpoints(p1)?;
    let skel2 = loop_free_endpoints(p2)?;
    if skel1.len() != skel2.len() {
        return Ok(EquivOutcome::NotEquivalent {
            reason: "the loop-free quivers are not isomorphic".to_string(),
        });
    }
    let supp1 = projective_supports(&a1);
    let supp2 = projective_supports(&a2);
    let paths1 = spanning_path_sets(p1, &gs1);
    let paths2 = spanning_path_sets(p2, &gs2);

    // Per-vertex signatures prune the bijection search.
    let sig = |skel: &BTreeSet<(usize, usize)>, supp: &[BTreeSet<usize>], v: usize| {
        let outdeg = skel.iter().filter(|&&(s, _)| s == v).count();
        let indeg = skel.iter().filter(|&&(_, t)| t == v).count();
        (outdeg, indeg, supp[v].len())
    };
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let s = sig(&skel1, &supp1, v);
            (0..n).filter(|&w| sig(&skel2, &supp2, w) == s).collect()
        })
        .collect();

    let mut best_stage = 0usize;
    let mut witness: Option<Vec<usize>> = None;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for_each_bijection(&cands, &mut map, &mut used, 0, &mut |sigma| {
        let quiver_ok = skel1.iter().all(|&(s, t)| skel2.contains(&(sigma[s], sigma[t])));
        if !quiver_ok {
            return false;
        }
        best_stage = best_stage.max(1);
        let supports_ok = (0..n).all(|i| {
            let mapped: BTreeSet<usize> = supp1[i].iter().map(|&x| sigma[x]).collect();
            mapped == supp2[sigma[i]]
        });
        if !supports_ok {
            return false;
        }
        best_stage = best_stage.max(2);
        let paths_ok = paths1.len() == paths2.len()
            && paths1.iter().all(|((i, j), set)| {
                let mapped: BTreeSet<Vec<(usize, usize)>> = set
                    .iter()
                    .map(|w| w.iter().map(|&(s, t)| (sigma[s], sigma[t])).collect())
                    .collect();
                paths2.get(&(sigma[*i], sigma[*j])) == Some(&mapped)
            });
        if !paths_ok {
            return false;
        }
        witness = Some(sigma.to_vec());
        true
    });
    if let Some(vertex_map) = witness {
        return Ok(EquivOutcome::Equivalent { vertex_map });
    }
    let reason = match best_stage {
        0 => "the loop-free quivers are not isomorphic".to_string(),
        1 => "projective supports do not correspond under any quiver isomorphism".to_string(),
        _ => "spanning path sets do not correspond under any support-preserving isomorphism"
            .to_string(),
    };
    Ok(EquivOutcome::NotEquivalent { reason })
}

// ---------------------------------------------------------------------------
// Tree-partition condition
// ---------------------------------------------------------------------------

/// Hard bound on the number of vertices for the partition search: the number
/// of set partitions grows faster than exponentially.
pub const PARTITION_VERTEX_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairVerdict {
    Lattice,
    NotLattice,
    TooBig,
}

/// Lattice verdicts for vertex-subset quotients `Λ/(1 − Σ_{v ∈ S} e_v)`,
/// memoized by subset because many partitions share block unions.
struct PairMemo<'a> {
    algebra: &'a Arc<BasedAlgebra>,
    cap: usize,
    memo: BTreeMap<Vec<usize>, PairVerdict>,
}

impl<'a> PairMemo<'a> {
    fn new(algebra: &'a Arc<BasedAlgebra>, cap: usize) -> Self {
        PairMemo { algebra, cap, memo: BTreeMap::new() }
    }

    fn verdict(&mut self, verts: Vec<usize>) -> Result<PairVerdict> {
        if let Some(&v) = self.memo.get(&verts) {
            return Ok(v);
        }
        let q = restrict_to_vertices(self.algebra, &verts);
        let v = match enumerate_sttilt(&Arc::new(q.algebra), self.cap) {
            Ok(run) => {
                let poset = FinitePoset::from_hasse(run.len(), &run.hasse)?;
                if poset.is_lattice() {
                    PairVerdict::Lattice
                } else {
                    PairVerdict::NotLattice
                }
            }
            Err(Error::CapExceeded { .. }) => PairVerdict::TooBig,
            Err(e) => return Err(e),
        };
        self.memo.insert(verts, v);
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PartitionOutcome {
    Satisfies,
    Fails,
    /// Some block-pair poset exceeded the element cap, so the partition can
    /// be neither certified nor refuted.
    Undecided,
}

/// Is the full subquiver on `verts` connected (arrows taken undirected)?
fn subset_connected(p: &Presentation, verts: &[usize]) -> bool {
    if verts.is_empty() {
        return false;
    }
    let inside: BTreeSet<usize> = verts.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([verts[0]]);
    seen.insert(verts[0]);
    while let Some(v) = queue.pop_front() {
        for a in &p.arrows {
            let step = if a.src == v {
                a.tgt
            } else if a.tgt == v {
                a.src
            } else {
                continue;
            };
            if inside.contains(&step) && seen.insert(step) {
                queue.push_back(step);
            }
        }
    }
    seen.len() == verts.len()
}

/// Tree test for the block quiver: arrows between distinct blocks count with
/// multiplicity, so the underlying multigraph must be connected with exactly
/// `blocks − 1` edges.
fn block_quiver_is_tree(p: &Presentation, assign: &[usize], blocks: usize) -> bool {
    let mut parent: Vec<usize> = (0..blocks).collect();
    fn root(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut edges = 0usize;
    for a in &p.arrows {
        let (ba, bb) = (assign[a.src], assign[a.tgt]);
        if ba == bb {
            continue;
        }
        edges += 1;
        let (ra, rb) = (root(&mut parent, ba), root(&mut parent, bb));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let components = (0..blocks).filter(|&b| root(&mut parent, b) == b).count();
    edges == blocks.saturating_sub(1) && components == 1
}

fn partition_outcome(
    p: &Presentation,
    memo: &mut PairMemo,
    blocks: &[Vec<usize>],
) -> Result<PartitionOutcome> {
    if blocks.iter().any(|b| !subset_connected(p, b)) {
        return Ok(PartitionOutcome::Fails);
    }
    let n = p.n_vertices();
    let mut assign = vec![usize::MAX; n];
    for (bid, block) in blocks.iter().enumerate() {
        for &v in block {
            assign[v] = bid;
        }
    }
    if !block_quiver_is_tree(p, &assign, blocks.len()) {
        return Ok(PartitionOutcome::Fails);
    }
    // Every one- and two-block quotient must carry a lattice poset.  The
    // diagonal cases keep the single-block partition meaningful and are
    // automatic whenever the corresponding two-block poset is finite.
    let mut undecided = false;
    for a in 0..blocks.len() {
        for b in a..blocks.len() {
            let mut union: Vec<usize> = blocks[a].iter().chain(&blocks[b]).copied().collect();
            union.sort_unstable();
            union.dedup();
            match memo.verdict(union)? {
                PairVerdict::Lattice => {}
                PairVerdict::NotLattice => return Ok(PartitionOutcome::Fails),
                PairVerdict::TooBig => undecided = true,
            }
        }
    }
    Ok(if undecided { PartitionOutcome::Undecided } else { PartitionOutcome::Satisfies })
}

/// Check one explicit partition (blocks of vertex ids) against the
/// tree/lattice requirements used by [`condition2_check`], without
/// searching.  `Err(CapExceeded)` when a block-pair poset cannot be
/// enumerated within `cap`, so the partition cannot be decided.
pub fn verify_partition(
    p: &Presentation,
    algebra: &Arc<BasedAlgebra>,
    blocks: &[Vec<usize>],
    cap: usize,
) -> Result<bool> {
    let n = p.n_vertices();
    let mut seen = vec![false; n];
    for &v in blocks.iter().flatten() {
        if v >= n || seen[v] {
            return Err(Error::InvalidSpec(format!(
                "blocks do not partition the vertex set at vertex {v}"
            )));
        }
        seen[v] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::InvalidSpec("blocks do not cover the vertex set".into()));
    }
    let mut memo = PairMemo::new(algebra, cap);
    match partition_outcome(p, &mut memo, blocks)? {
        PartitionOutcome::Satisfies => Ok(true),
        PartitionOutcome::Fails => Ok(false),
        PartitionOutcome::Undecided => Err(Error::CapExceeded { cap }),
    }
}

/// Restricted-growth encoding of a set partition packed into a `u64` nibble
/// per vertex, most significant nibble first so integer order is the
/// lexicographic order on assignments.  Sound for `n ≤ 12 < 16`.
fn encode_rgs(assign: &[usize]) -> u64 {
    assign.iter().fold(0u64, |acc, &b| (acc << 4) | b as u64)
}

fn enumerate_rgs(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn rec(assign: &mut Vec<usize>, i: usize, used: usize, out: &mut Vec<u64>) {
        if i == assign.len() {
            out.push(encode_rgs(assign));
            return;
        }
        for b in 0..=used {
            assign[i] = b;
            rec(assign, i + 1, used.max(b + 1), out);
        }
    }
    rec(&mut assign, 1.min(n), 1.min(n), &mut out);
    if n == 0 {
        out.clear();
    }
    out
}

fn decode_rgs(code: u64, n: usize) -> Vec<Vec<usize>> {
    let mut assign = vec![0usize; n];
    for (i, slot) in assign.iter_mut().enumerate() {
        *slot = ((code >> (4 * (n - 1 - i))) & 0xF) as usize;
    }
    let blocks = assign.iter().max().map_or(0, |&m| m + 1);
    let mut out = vec![Vec::new(); blocks];
    for (v, &b) in assign.iter().enumerate() {
        out[b].push(v);
    }
    out
}

/// Search for a partition of the vertex set into connected full subquivers
/// whose block quiver is a tree while every one- and two-block quotient
/// algebra has a lattice poset.  Candidates are tried finest-first (largest
/// block size ascending, then block count descending, then lexicographic),
/// so the reported partition is a finest satisfying one.  Returns `Ok(None)`
/// when every candidate definitively fails; raises
/// [`Error::CapExceeded`] when no candidate succeeds but some could not be
/// decided within the element cap.
pub fn condition2_check(
    p: &Presentation,
    algebra: &Arc<BasedAlgebra>,
    cap: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    let n = p.n_vertices();
    if n == 0 {
        return Err(Error::InvalidSpec("empty quiver".into()));
    }
    if n > PARTITION_VERTEX_CAP {
        return Err(Error::CapExceeded { cap: PARTITION_VERTEX_CAP });
    }
    let mut codes = enumerate_rgs(n);
    codes.sort_by_cached_key(|&code| {
        let blocks = decode_rgs(code, n);
        let max_block = blocks.iter().map(Vec::len).max().unwrap_or(0);
        (max_block, usize::MAX - blocks.len(), code)
    });
    let mut memo = PairMemo::new(algebra, cap);
    let mut undecided = false;
    for code in codes {
        let blocks = decode_rgs(code, n);
        match partition_outcome(p, &mut memo, &blocks)? {
            PartitionOutcome::Satisfies => return Ok(Some(blocks)),
            PartitionOutcome::Fails => {}
            PartitionOutcome::Undecided => undecided = true,
        }
    }
    if undecided {
        Err(Error::CapExceeded { cap })
    } else {
        Ok(None)
    }
}

/// Conjunction of the spanning-path condition on blocks and the
/// tree-partition condition.  A spanning-path failure decides membership
/// negatively without running the partition search.
pub fn theta_membership(
    p: &Presentation,
    algebra: &Arc<BasedAlgebra>,
    cap: usize,
) -> Result<bool> {
    let gs = g_sets(p, algebra);
    if !condition1_check(&gs).holds {
        return Ok(false);
    }
    Ok(condition2_check(p, algebra, cap)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::presentation;
    use crate::scalar::FieldSpec;
    use crate::silting::support_of;

    const Q: FieldSpec = FieldSpec::Rational;

    fn a2() -> Presentation {
        presentation(Q, &["1", "2"], &[("a", 0, 1)], &[])
    }

    fn a2_rev() -> Presentation {
        presentation(Q, &["1", "2"], &[("a", 1, 0)], &[])
    }

    fn a3() -> Presentation {
        presentation(Q, &["1", "2", "3"], &[("a", 0, 1), ("b", 1, 2)], &[])
    }

    fn semisimple2() -> Presentation {
        presentation(Q, &["1", "2"], &[], &[])
    }

    fn preproj_a2() -> Presentation {
        presentation(
            Q,
            &["1", "2"],
            &[("a", 0, 1), ("b", 1, 0)],
            &[vec![("1", vec!["a", "b"])], vec![("1", vec!["b", "a"])]],
        )
    }

    fn kronecker() -> Presentation {
        presentation(Q, &["1", "2"], &[("x", 0, 1), ("y", 0, 1)], &[])
    }

    fn cyclic3() -> Presentation {
        presentation(
            Q,
            &["1", "2", "3"],
            &[("a", 0, 1), ("b", 1, 2), ("c", 2, 0)],
            &[
                vec![("1", vec!["a", "b"])],
                vec![("1", vec!["b", "c"])],
                vec![("1", vec!["c", "a"])],
            ],
        )
    }

    fn arc(p: &Presentation) -> Arc<BasedAlgebra> {
        Arc::new(build_algebra(p).unwrap())
    }

    /// Engine poset plus per-element supports (vertex sets).
    fn poset_of(p: &Presentation) -> (FinitePoset, Vec<BTreeSet<usize>>) {
        let run = enumerate_sttilt(&arc(p), 1000).unwrap();
        let fp = FinitePoset::from_hasse(run.len(), &run.hasse).unwrap();
        let supports =
            run.elements.iter().map(|e| support_of(e).into_iter().collect()).collect();
        (fp, supports)
    }

    /// Atom position → algebra vertex, read off the engine's labels.
    fn atom_to_vertex(fp: &FinitePoset, supports: &[BTreeSet<usize>]) -> Vec<usize> {
        let min = fp.unique_min().unwrap();
        fp.dip(min)
            .iter()
            .map(|&atom| {
                assert_eq!(supports[atom].len(), 1);
                *supports[atom].iter().next().unwrap()
            })
            .collect()
    }

    fn pentagon() -> FinitePoset {
        FinitePoset::from_hasse(5, &[(4, 2), (4, 3), (2, 1), (3, 0), (1, 0)]).unwrap()
    }

    fn square() -> FinitePoset {
        FinitePoset::from_hasse(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap()
    }

    #[test]
    fn pair_top_and_arrows_on_the_pentagon() {
        let p = pentagon();
        // Atoms are 1 (under the long side) and 3 (also a coatom).
        assert_eq!(pair_top_element(&p, 1, 3).unwrap(), 4);
        let sk = qstar_from_poset(&p).unwrap();
        assert_eq!(sk.n, 2);
        // The top covers atom 3 but not atom 1: one arrow, position 0 → 1.
        assert_eq!(sk.arrows.iter().copied().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(matches!(pair_top_element(&p, 1, 2), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn the_square_reconstructs_with_no_arrows() {
        let p = square();
        assert_eq!(pair_top_element(&p, 1, 2).unwrap(), 3);
        let sk = qstar_from_poset(&p).unwrap();
        assert!(sk.arrows.is_empty());
        let supports = supports_from_poset(&p).unwrap();
        assert_eq!(supports[0], BTreeSet::new());
        assert_eq!(supports[1], BTreeSet::from([0]));
        assert_eq!(supports[2], BTreeSet::from([1]));
        assert_eq!(supports[3], BTreeSet::from([0, 1]));
    }

    #[test]
    fn engine_posets_round_trip_to_their_quivers() {
        for pres in [a2(), a3(), preproj_a2(), cyclic3(), semisimple2()] {
            let (fp, supports) = poset_of(&pres);
            let sk = qstar_from_poset(&fp).unwrap();
            let perm = atom_to_vertex(&fp, &supports);
            assert_eq!(
                sk.relabel(&perm),
                QuiverSketch::from_presentation(&pres),
                "round trip failed for {:?}",
                pres.vertices
            );
        }
    }

    #[test]
    fn reconstructed_supports_match_the_engine_labels() {
        for pres in [a2(), a3(), preproj_a2(), cyclic3()] {
            let (fp, engine) = poset_of(&pres);
            let recon = supports_from_poset(&fp).unwrap();
            let perm = atom_to_vertex(&fp, &engine);
            for t in 0..fp.len() {
                let mapped: BTreeSet<usize> = recon[t].iter().map(|&pos| perm[pos]).collect();
                assert_eq!(mapped, engine[t], "support mismatch at element {t}");
            }
        }
    }

    #[test]
    fn equiv_check_accepts_itself_and_relabelings() {
        match equiv_check(&a2(), &a2()).unwrap() {
            EquivOutcome::Equivalent { vertex_map } => assert_eq!(vertex_map, vec![0, 1]),
            other => panic!("expected equivalence, got {other:?}"),
        }
        match equiv_check(&a2(), &a2_rev()).unwrap() {
            EquivOutcome::Equivalent { vertex_map } => assert_eq!(vertex_map, vec![1, 0]),
            other => panic!("expected equivalence, got {other:?}"),
        }
        assert!(matches!(
            equiv_check(&a2_rev(), &a2()).unwrap(),
            EquivOutcome::Equivalent { .. }
        ));
    }

    #[test]
    fn equiv_check_rejects_mismatched_quivers() {
        match equiv_check(&a2(), &semisimple2()).unwrap() {
            EquivOutcome::NotEquivalent { reason } => assert!(reason.contains("quiver")),
            other => panic!("expected a mismatch, got {other:?}"),
        }
        assert!(matches!(
            equiv_check(&a3(), &cyclic3()).unwrap(),
            EquivOutcome::NotEquivalent { .. }
        ));
        assert!(matches!(
            equiv_check(&a2(), &a3()).unwrap(),
            EquivOutcome::NotEquivalent { .. }
        ));
    }

    #[test]
    fn kronecker_violates_the_spanning_path_condition() {
        assert!(matches!(
            equiv_check(&kronecker(), &kronecker()),
            Err(Error::Condition1Violated { .. })
        ));
    }

    #[test]
    fn sketch_isomorphism_detects_relabeled_cycles() {
        let c3 = QuiverSketch { n: 3, arrows: BTreeSet::from([(0, 1), (1, 2), (2, 0)]) };
        let c3b = QuiverSketch { n: 3, arrows: BTreeSet::from([(1, 0), (0, 2), (2, 1)]) };
        assert!(c3.isomorphic_to(&c3b));
        assert!(c3.isomorphic_to(&c3));
        let path = QuiverSketch::from_presentation(&a3());
        assert!(!c3.isomorphic_to(&path));
    }

    #[test]
    fn partition_search_prefers_the_finest_certificate() {
        // Tree quivers certify with singleton blocks.
        let found = condition2_check(&a2(), &arc(&a2()), 100).unwrap();
        assert_eq!(found, Some(vec![vec![0], vec![1]]));
        let found = condition2_check(&a3(), &arc(&a3()), 100).unwrap();
        assert_eq!(found, Some(vec![vec![0], vec![1], vec![2]]));
        // A doubled arrow (two-cycle) forces the blocks to merge.
        let found = condition2_check(&preproj_a2(), &arc(&preproj_a2()), 100).unwrap();
        assert_eq!(found, Some(vec![vec![0, 1]]));
        // The oriented three-cycle admits no proper tree split.
        let found = condition2_check(&cyclic3(), &arc(&cyclic3()), 100).unwrap();
        assert_eq!(found, Some(vec![vec![0, 1, 2]]));
    }

    #[test]
    fn disconnected_quivers_never_satisfy_the_tree_condition() {
        assert_eq!(condition2_check(&semisimple2(), &arc(&semisimple2()), 100).unwrap(), None);
    }

    #[test]
    fn undecidable_partitions_surface_as_cap_errors() {
        // Both the parallel-arrow split and the single block fail or stall:
        // the single block needs the (infinite) poset of the Kronecker
        // algebra, so the search must report the cap instead of deciding.
        assert!(matches!(
            condition2_check(&kronecker(), &arc(&kronecker()), 12),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn explicit_partitions_verify_independently_of_the_search() {
        assert!(verify_partition(&a3(), &arc(&a3()), &[vec![0], vec![1], vec![2]], 100).unwrap());
        assert!(verify_partition(&a3(), &arc(&a3()), &[vec![0, 1, 2]], 100).unwrap());
        assert!(verify_partition(&a3(), &arc(&a3()), &[vec![0, 1], vec![2]], 100).unwrap());
        // Singletons fail for the doubled arrow: the block quiver is a
        // two-cycle, not a tree.
        assert!(!verify_partition(&preproj_a2(), &arc(&preproj_a2()), &[vec![0], vec![1]], 100)
            .unwrap());
        assert!(matches!(
            verify_partition(&a3(), &arc(&a3()), &[vec![0], vec![1]], 100),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn theta_membership_matches_the_worked_examples() {
        assert!(theta_membership(&preproj_a2(), &arc(&preproj_a2()), 100).unwrap());
        assert!(theta_membership(&a3(), &arc(&a3()), 100).unwrap());
        assert!(theta_membership(&cyclic3(), &arc(&cyclic3()), 100).unwrap());
        // The Kronecker algebra fails the spanning-path condition, so the
        // verdict is negative without running the partition search.
        assert!(!theta_membership(&kronecker(), &arc(&kronecker()), 100).unwrap());
    }
}
