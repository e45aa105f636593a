//! Finite-poset analytics.
//!
//! [`FinitePoset`] stores a poset as its Hasse quiver (arrows run from the
//! covering element to the covered one) together with eagerly computed
//! reachability closures kept as bitset rows, so order tests, joins, meets
//! and interval extraction are cheap even at a few thousand elements.
//!
//! On top of the abstract poset the module provides the structure used by
//! support τ-tilting analysis: atom/coatom pairing, the κ±/υ±
//! correspondence between forks of the Hasse quiver and summand-key sets of
//! a labeled run, key filtering with the interval ("strong fullness")
//! verification, Hasse-quiver isomorphism and automorphism search, and the
//! counting obstruction that can reject a poset as non-realizable.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::silting::{support_of, LabeledSttiltPoset};

/// Compact bitset used for reachability rows.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn or_with(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

}

/// A finite poset given by its Hasse quiver; covering → covered.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    n: usize,
    hasse: Vec<(usize, usize)>,
    /// `down[a]` = {b : a ≥ b}, including `a`.
    down: Vec<Bits>,
    /// `up[a]` = {b : b ≥ a}, including `a`.
    up: Vec<Bits>,
    /// Direct predecessors (elements covering `a`).
    dip: Vec<Vec<usize>>,
    /// Direct successors (elements covered by `a`).
    dis: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Build from a covering relation.  Fails with [`Error::CycleDetected`]
    /// on cyclic input and [`Error::InvalidSpec`] when an edge is not a
    /// cover (i.e. the input is not a transitive reduction) or indices are
    /// out of range.
    pub fn from_hasse(n: usize, edges: &[(usize, usize)]) -> Result<FinitePoset> {
        let mut hasse: Vec<(usize, usize)> = edges.to_vec();
        hasse.sort_unstable();
        hasse.dedup();
        for &(a, b) in &hasse {
            if a >= n || b >= n {
                return Err(Error::InvalidSpec(format!(
                    "hasse edge ({a}, {b}) out of range for {n} elements"
                )));
            }
            if a == b {
                return Err(Error::CycleDetected { element: a });
            }
        }
        let mut dip = vec![Vec::new(); n];
        let mut dis = vec![Vec::new(); n];
        for &(a, b) in &hasse {
            dis[a].push(b);
            dip[b].push(a);
        }
        // Topological order (sources first) by Kahn's algorithm.
        let mut indeg: Vec<usize> = dip.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &w in &dis[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != n {
            let element = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::CycleDetected { element });
        }
        // Downward closure: process sinks first.
        let mut down = vec![Bits::new(n); n];
        for &v in topo.iter().rev() {
            down[v].set(v);
            let mut acc = down[v].clone();
            for &w in &dis[v] {
                acc.or_with(&down[w]);
            }
            down[v] = acc;
        }
        let mut up = vec![Bits::new(n); n];
        for a in 0..n {
            for b in down[a].ones() {
                up[b].set(a);
            }
        }
        // Each edge must be a genuine cover: no intermediate element.
        for &(a, b) in &hasse {
            for c in down[a].ones() {
                if c != a && c != b && down[c].get(b) {
                    return Err(Error::InvalidSpec(format!(
                        "edge ({a}, {b}) is not a cover: {a} > {c} > {b}"
                    )));
                }
            }
        }
        Ok(FinitePoset { n, hasse, down, up, dip, dis })
    }

    /// Build from a full order matrix (`m[a][b]` ⟺ a ≥ b) by transitive
    /// reduction.  The matrix must be reflexive, antisymmetric and
    /// transitive.
    pub fn from_order_matrix(m: &[Vec<bool>]) -> Result<FinitePoset> {
        let n = m.len();
        for (a, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidSpec("order matrix is not square".into()));
            }
            if !row[a] {
                return Err(Error::InvalidSpec(format!("order not reflexive at {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && m[a][b] && m[b][a] {
                    return Err(Error::CycleDetected { element: a });
                }
            }
        }
        // Covers: a > b with no c strictly between.
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !m[a][b] {
                    continue;
                }
                let has_mid =
                    (0..n).any(|c| c != a && c != b && m[a][c] && m[c][b]);
                if !has_mid {
                    edges.push((a, b));
                }
            }
        }
        let poset = FinitePoset::from_hasse(n, &edges)?;
        // Reject non-transitive input: its closure would disagree.
        for a in 0..n {
            for b in 0..n {
                if poset.ge(a, b) != m[a][b] {
                    return Err(Error::InvalidSpec(format!(
                        "order matrix is not transitive at pair ({a}, {b})"
                    )));
                }
            }
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Covering relation, sorted; arrows run covering → covered.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Reflexive order test `a ≥ b`.
    pub fn ge(&self, a: usize, b: usize) -> bool {
        self.down[a].get(b)
    }

    /// Full order matrix (`m[a][b]` ⟺ a ≥ b).
    pub fn order_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.ge(a, b)).collect())
            .collect()
    }

    /// Elements covering `a`.
    pub fn dip(&self, a: usize) -> &[usize] {
        &self.dip[a]
    }

    /// Elements covered by `a`.
    pub fn dis(&self, a: usize) -> &[usize] {
        &self.dis[a]
    }

    pub fn downset(&self, a: usize) -> Vec<usize> {
        self.down[a].ones().collect()
    }

    pub fn upset(&self, a: usize) -> Vec<usize> {
        self.up[a].ones().collect()
    }

    pub fn downset_size(&self, a: usize) -> usize {
        self.down[a].count()
    }

    pub fn upset_size(&self, a: usize) -> usize {
        self.up[a].count()
    }

    /// The interval `[lo, hi]` = {x : lo ≤ x ≤ hi}, ascending ids.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.down[hi]
            .ones()
            .filter(|&x| self.up[lo].get(x))
            .collect()
    }

    /// The unique minimum, if any.
    pub fn unique_min(&self) -> Option<usize> {
        (0..self.n).find(|&m| (0..self.n).all(|x| self.ge(x, m)))
    }

    /// The unique maximum, if any.
    pub fn unique_max(&self) -> Option<usize> {
        (0..self.n).find(|&m| (0..self.n).all(|x| self.ge(m, x)))
    }

    /// Every element has exactly `n` Hasse neighbours.
    pub fn is_regular(&self, n: usize) -> bool {
        (0..self.n).all(|v| self.dip[v].len() + self.dis[v].len() == n)
    }

    /// Is the Hasse diagram connected as an undirected graph?
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.dip[v].iter().chain(&self.dis[v]) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Least upper bound of `a` and `b`.
    pub fn join(&self, a: usize, b: usize) -> Result<usize> {
        let mut ubs = self.up[a].clone();
        for (w, o) in ubs.words.iter_mut().zip(&self.up[b].words) {
            *w &= o;
        }
        let candidates: Vec<usize> = ubs.ones().collect();
        candidates
            .iter()
            .copied()
            .find(|&u| candidates.iter().all(|&v| self.ge(v, u)))
            .ok_or(Error::NotLattice { a, b, kind: "join" })
    }

    /// Greatest lower bound of `a` and `b`.
    pub fn meet(&self, a: usize, b: usize) -> Result<usize> {
        let mut lbs = self.down[a].clone();
        for (w, o) in lbs.words.iter_mut().zip(&self.down[b].words) {
            *w &= o;
        }
        let candidates: Vec<usize> = lbs.ones().collect();
        candidates
            .iter()
            .copied()
            .find(|&u| candidates.iter().all(|&v| self.ge(u, v)))
            .ok_or(Error::NotLattice { a, b, kind: "meet" })
    }

    /// First join/meet failure, if any.
    pub fn check_lattice(&self) -> Result<()> {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                self.join(a, b)?;
                self.meet(a, b)?;
            }
        }
        Ok(())
    }

    pub fn is_lattice(&self) -> bool {
        self.check_lattice().is_ok()
    }

    /// The opposite poset (all covers reversed).
    pub fn opposite(&self) -> FinitePoset {
        let edges: Vec<(usize, usize)> =
            self.hasse.iter().map(|&(a, b)| (b, a)).collect();
        FinitePoset::from_hasse(self.n, &edges)
            .expect("reversing a covering relation preserves covers")
    }
}

// ---------------------------------------------------------------------------
// Atoms, coatoms and the realizability obstruction
// ---------------------------------------------------------------------------

/// Atoms paired with coatoms: `pairing[c]` is the position `i` in `atoms`
/// such that the coatom `coatoms[c]` lies above every atom except `atoms[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomCoatomPairing {
    pub atoms: Vec<usize>,
    pub coatoms: Vec<usize>,
    pub pairing: Vec<usize>,
}

/// Identify atoms (covers of the minimum) and coatoms (covered by the
/// maximum) and pair each coatom `Z` with the unique atom index `i` such
/// that `Z ≥ X_k` for every `k ≠ i`.
pub fn atoms_coatoms(p: &FinitePoset) -> Result<AtomCoatomPairing> {
    let min = p
        .unique_min()
        .ok_or_else(|| Error::PairingFailed("poset has no unique minimum".into()))?;
    let max = p
        .unique_max()
        .ok_or_else(|| Error::PairingFailed("poset has no unique maximum".into()))?;
    let mut atoms = p.dip(min).to_vec();
    atoms.sort_unstable();
    let mut coatoms = p.dis(max).to_vec();
    coatoms.sort_unstable();
    if atoms.len() != coatoms.len() {
        return Err(Error::PairingFailed(format!(
            "{} atoms vs {} coatoms",
            atoms.len(),
            coatoms.len()
        )));
    }
    let mut pairing = Vec::with_capacity(coatoms.len());
    let mut hit = vec![false; atoms.len()];
    for &z in &coatoms {
        let indices: Vec<usize> = (0..atoms.len())
            .filter(|&i| (0..atoms.len()).all(|k| k == i || p.ge(z, atoms[k])))
            .collect();
        match indices.as_slice() {
            [i] => {
                if hit[*i] {
                    return Err(Error::PairingFailed(format!(
                        "two coatoms pair with atom index {i}"
                    )));
                }
                hit[*i] = true;
                pairing.push(*i);
            }
            [] => {
                return Err(Error::PairingFailed(format!(
                    "coatom {z} lies above no suitable co-atom index"
                )))
            }
            _ => {
                return Err(Error::PairingFailed(format!(
                    "coatom {z} admits {} candidate indices",
                    indices.len()
                )))
            }
        }
    }
    Ok(AtomCoatomPairing { atoms, coatoms, pairing })
}

/// Outcome of the counting obstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionVerdict {
    Pass,
    /// Sorted multisets of bottom-interval and top-interval sizes that
    /// failed to agree.
    Fail { bottom_sizes: Vec<usize>, top_sizes: Vec<usize> },
}

/// Necessary condition for a poset to arise from support τ-tilting data:
/// for every pair of atom indices `{i, j}`, the bottom interval
/// `[min, X_i ∨ X_j]` and the top interval `[Z_i ∧ Z_j, max]` are sizes of
/// posets that a dual pair of algebra quotients would realize, so the two
/// multisets of sizes (over all pairs) must coincide.  A pass proves
/// nothing; a fail is a certificate of non-realizability.
pub fn realizability_obstruction(p: &FinitePoset) -> Result<ObstructionVerdict> {
    let pairing = atoms_coatoms(p)?;
    let n = pairing.atoms.len();
    // Coatom paired with atom index i.
    let mut coatom_of = vec![usize::MAX; n];
    for (c, &i) in pairing.pairing.iter().enumerate() {
        coatom_of[i] = pairing.coatoms[c];
    }
    let mut bottom_sizes = Vec::new();
    let mut top_sizes = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let join = p.join(pairing.atoms[i], pairing.atoms[j])?;
            bottom_sizes.push(p.downset_size(join));
            let meet = p.meet(coatom_of[i], coatom_of[j])?;
            top_sizes.push(p.upset_size(meet));
        }
    }
    bottom_sizes.sort_unstable();
    top_sizes.sort_unstable();
    if bottom_sizes == top_sizes {
        Ok(ObstructionVerdict::Pass)
    } else {
        Ok(ObstructionVerdict::Fail { bottom_sizes, top_sizes })
    }
}

// ---------------------------------------------------------------------------
// Labeled posets: κ±/υ± and key filtering
// ---------------------------------------------------------------------------

/// A set of indecomposable-summand g-vectors (module and shifted-projective
/// parts mixed; the sign pattern distinguishes them).
pub type RigidPairKey = BTreeSet<Vec<i64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A fork of the Hasse quiver: a base element together with prongs chosen
/// among its direct predecessors (`Plus`) or successors (`Minus`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    pub sign: Sign,
    pub base: usize,
    pub prongs: Vec<usize>,
}

/// A support τ-tilting poset reduced to analysis data: the abstract poset,
/// per-element summand keys, and per-element supports.
#[derive(Debug, Clone)]
pub struct LabeledPoset {
    pub poset: FinitePoset,
    pub keys: Vec<RigidPairKey>,
    pub supports: Vec<Vec<usize>>,
    /// Number of summands per element (= number of vertices).
    pub rank: usize,
}

impl LabeledPoset {
    pub fn from_run(run: &LabeledSttiltPoset) -> Result<LabeledPoset> {
        let poset = FinitePoset::from_hasse(run.elements.len(), &run.hasse)?;
        let keys = run
            .elements
            .iter()
            .map(|e| e.g_matrix().into_iter().collect())
            .collect();
        let supports = run.elements.iter().map(support_of).collect();
        Ok(LabeledPoset { poset, keys, supports, rank: run.algebra.n_vertices() })
    }

    fn members_of(&self, key: &RigidPairKey) -> Vec<usize> {
        (0..self.keys.len())
            .filter(|&i| key.is_subset(&self.keys[i]))
            .collect()
    }
}

/// The key shared by a fork: intersection of the summand keys of its base
/// and prongs.  A fork with ℓ prongs yields a key of size `rank − ℓ`.
pub fn kappa(lp: &LabeledPoset, fork: &Fork) -> RigidPairKey {
    let neighbours: &[usize] = match fork.sign {
        Sign::Plus => lp.poset.dip(fork.base),
        Sign::Minus => lp.poset.dis(fork.base),
    };
    for p in &fork.prongs {
        assert!(neighbours.contains(p), "prong {p} is not a direct neighbour");
    }
    let mut key = lp.keys[fork.base].clone();
    for &p in &fork.prongs {
        key = key.intersection(&lp.keys[p]).cloned().collect();
    }
    key
}

/// Minimum of the elements whose key contains `key`.
pub fn stmin(lp: &LabeledPoset, key: &RigidPairKey) -> Result<usize> {
    let members = lp.members_of(key);
    if members.is_empty() {
        return Err(Error::KeyNotRealized);
    }
    members
        .iter()
        .copied()
        .find(|&m| members.iter().all(|&x| lp.poset.ge(x, m)))
        .ok_or_else(|| Error::Ambiguous("key filter has no unique minimum".into()))
}

/// Maximum of the elements whose key contains `key`.
pub fn stmax(lp: &LabeledPoset, key: &RigidPairKey) -> Result<usize> {
    let members = lp.members_of(key);
    if members.is_empty() {
        return Err(Error::KeyNotRealized);
    }
    members
        .iter()
        .copied()
        .find(|&m| members.iter().all(|&x| lp.poset.ge(m, x)))
        .ok_or_else(|| Error::Ambiguous("key filter has no unique maximum".into()))
}

/// Rebuild the fork carrying `key`: the base is the extreme element of the
/// key filter and the prongs are its neighbours that stay in the filter.
pub fn upsilon(lp: &LabeledPoset, sign: Sign, key: &RigidPairKey) -> Result<Fork> {
    let members = lp.members_of(key);
    if members.is_empty() {
        return Err(Error::KeyNotRealized);
    }
    let base = match sign {
        Sign::Plus => stmin(lp, key)?,
        Sign::Minus => stmax(lp, key)?,
    };
    let neighbours: &[usize] = match sign {
        Sign::Plus => lp.poset.dip(base),
        Sign::Minus => lp.poset.dis(base),
    };
    let mut prongs: Vec<usize> = neighbours
        .iter()
        .copied()
        .filter(|v| members.contains(v))
        .collect();
    prongs.sort_unstable();
    Ok(Fork { sign, base, prongs })
}

/// All elements whose key contains `key`, as a sub-poset.  Verifies that the
/// member set is exactly the interval `[stmin, stmax]` and that the induced
/// Hasse quiver is a full subquiver of the ambient one (strong fullness).
/// Returns the member ids (ascending) and the sub-poset on positions.
pub fn sttilt_filter(
    lp: &LabeledPoset,
    key: &RigidPairKey,
) -> Result<(Vec<usize>, FinitePoset)> {
    let members = lp.members_of(key);
    if members.is_empty() {
        return Err(Error::KeyNotRealized);
    }
    let lo = stmin(lp, key)?;
    let hi = stmax(lp, key)?;
    let interval = lp.poset.interval(lo, hi);
    if members != interval {
        return Err(Error::Ambiguous(
            "key filter is not an interval of the ambient poset".into(),
        ));
    }
    let pos: HashMap<usize, usize> =
        members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    // Induced order restricted to the members.
    let order: Vec<Vec<bool>> = members
        .iter()
        .map(|&a| members.iter().map(|&b| lp.poset.ge(a, b)).collect())
        .collect();
    let sub = FinitePoset::from_order_matrix(&order)?;
    // Strong fullness: the sub-poset's covers are ambient covers.
    let ambient: BTreeSet<(usize, usize)> = lp
        .poset
        .hasse()
        .iter()
        .filter(|(a, b)| pos.contains_key(a) && pos.contains_key(b))
        .map(|&(a, b)| (pos[&a], pos[&b]))
        .collect();
    let induced: BTreeSet<(usize, usize)> = sub.hasse().iter().copied().collect();
    if ambient != induced {
        return Err(Error::Ambiguous(
            "key filter is not a strongly full subquiver".into(),
        ));
    }
    Ok((members, sub))
}

/// Every fork of a labeled poset (both signs, every subset of neighbours,
/// including the empty fork at each base).  Intended for exhaustive
/// property checks on small posets.
pub fn all_forks(lp: &LabeledPoset) -> Vec<Fork> {
    let mut out = Vec::new();
    for base in 0..lp.poset.len() {
        for (sign, neigh) in [
            (Sign::Plus, lp.poset.dip(base)),
            (Sign::Minus, lp.poset.dis(base)),
        ] {
            let k = neigh.len();
            for mask in 0..(1u32 << k) {
                let mut prongs: Vec<usize> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| neigh[i])
                    .collect();
                prongs.sort_unstable();
                out.push(Fork { sign, base, prongs });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Isomorphism and automorphism search
// ---------------------------------------------------------------------------

type Signature = (usize, usize, usize, usize, usize, usize);

fn signatures(p: &FinitePoset) -> Vec<Signature> {
    let n = p.len();
    // Longest chain lengths to a source above / sink below.
    let mut depth_from_top = vec![0usize; n];
    let mut height_from_bottom = vec![0usize; n];
    // Process in topological order (dip before the element).
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| p.upset_size(v));
    for &v in &order {
        depth_from_top[v] = p
            .dip(v)
            .iter()
            .map(|&u| depth_from_top[u] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut rorder = order.clone();
    rorder.sort_by_key(|&v| p.downset_size(v));
    for &v in &rorder {
        height_from_bottom[v] = p
            .dis(v)
            .iter()
            .map(|&u| height_from_bottom[u] + 1)
            .max()
            .unwrap_or(0);
    }
    (0..n)
        .map(|v| {
            (
                depth_from_top[v],
                height_from_bottom[v],
                p.dip(v).len(),
                p.dis(v).len(),
                p.downset_size(v),
                p.upset_size(v),
            )
        })
        .collect()
}

/// All order isomorphisms `p1 → p2`, each as the image vector of the
/// elements of `p1`.  Poset isomorphisms coincide with Hasse-quiver
/// isomorphisms, so the search matches covers with invariant pruning.
pub fn poset_isomorphisms(p1: &FinitePoset, p2: &FinitePoset) -> Vec<Vec<usize>> {
    if p1.len() != p2.len() || p1.hasse().len() != p2.hasse().len() {
        return Vec::new();
    }
    let n = p1.len();
    if n == 0 {
        return vec![Vec::new()];
    }
    let sig1 = signatures(p1);
    let sig2 = signatures(p2);
    let mut class_count: BTreeMap<Signature, i64> = BTreeMap::new();
    for s in &sig1 {
        *class_count.entry(*s).or_insert(0) += 1;
    }
    for s in &sig2 {
        *class_count.entry(*s).or_insert(0) -= 1;
    }
    if class_count.values().any(|&c| c != 0) {
        return Vec::new();
    }
    // Candidate targets per element, most constrained elements first.
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| sig2[w] == sig1[v]).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (candidates[v].len(), v));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut found = Vec::new();
    fn extend(
        k: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        p1: &FinitePoset,
        p2: &FinitePoset,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            found.push(image.clone());
            return;
        }
        let v = order[k];
        'next: for &w in &candidates[v] {
            if used[w] {
                continue;
            }
            for &u in &order[..k] {
                let fu = image[u];
                let e12 = p1.dis(u).contains(&v);
                let e21 = p1.dis(v).contains(&u);
                if e12 != p2.dis(fu).contains(&w) || e21 != p2.dis(w).contains(&fu) {
                    continue 'next;
                }
            }
            image[v] = w;
            used[w] = true;
            extend(k + 1, order, candidates, p1, p2, image, used, found);
            image[v] = usize::MAX;
            used[w] = false;
        }
    }
    extend(0, &order, &candidates, p1, p2, &mut image, &mut used, &mut found);
    found.sort_unstable();
    found
}

/// All automorphisms of a poset and the group order.
pub fn automorphism_group(p: &FinitePoset) -> (Vec<Vec<usize>>, usize) {
    let autos = poset_isomorphisms(p, p);
    let order = autos.len();
    (autos, order)
}
