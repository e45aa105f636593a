//! Two-term complexes of projectives and their homotopy-category calculus.
//!
//! A [`TwoTermComplex`] is a complex `P⁻¹ → P⁰` of finitely generated
//! projective right modules over a [`BasedAlgebra`], stored as summand vertex
//! lists plus a differential matrix.  A map `P(j) → P(i)` is an element of
//! the Peirce block `e_i Λ e_j` acting by left multiplication, so matrices of
//! algebra elements compose like ordinary matrices with algebra
//! multiplication in place of scalar products.
//!
//! The module implements the linear-algebra layer everything else rests on:
//! bases of chain maps and of null-homotopic chain maps
//! ([`hom_chain_basis`]), the vanishing test `Hom(T, S[1]) = 0`
//! ([`hom_shift1_vanishes`]) which is both the silting partial order and the
//! rigidity test, minimization of two- and three-term complexes by cancelling
//! differential entries that are units in the local corner algebras
//! ([`minimize`], [`minimize_three`]), mapping cones, direct-summand
//! stripping with split idempotent search ([`strip_summand`]), endomorphism
//! rings modulo homotopy with a radical computation
//! ([`end_over_radical_dim`]), minimal projective presentations of cyclic
//! modules ([`min_presentation`]), and the bipartite-tree shape test
//! ([`qf_tree_check`]).

use std::sync::Arc;

use crate::algebra::{BasedAlgebra, Elem};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};

/// A complex of projectives concentrated in (cohomological) degrees −1 and 0.
///
/// `p1`/`p0` list the vertices of the projective summands in degrees −1 and
/// 0; `d` is the differential `P⁻¹ → P⁰` with `d[r][c] ∈ e_{p0[r]} Λ e_{p1[c]}`
/// (rows indexed by target summands, columns by source summands).
#[derive(Debug, Clone)]
pub struct TwoTermComplex {
    pub algebra: Arc<BasedAlgebra>,
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub d: Vec<Vec<Elem>>,
}

/// A complex of projectives in degrees −2, −1, 0 (used transiently for
/// mapping cones during mutation and summand stripping).
#[derive(Debug, Clone)]
pub struct ThreeTermComplex {
    pub algebra: Arc<BasedAlgebra>,
    pub p2: Vec<usize>,
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    /// `P⁻² → P⁻¹`, rows indexed by `p1`.
    pub d2: Vec<Vec<Elem>>,
    /// `P⁻¹ → P⁰`, rows indexed by `p0`.
    pub d1: Vec<Vec<Elem>>,
}

/// A chain map between two-term complexes: `f0: S⁰ → T⁰`, `f1: S⁻¹ → T⁻¹`
/// with `f0 ∘ d_S = d_T ∘ f1`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub f0: Vec<Vec<Elem>>,
    pub f1: Vec<Vec<Elem>>,
}

/// Zero matrix of shape `tgt × src` over the algebra.
pub fn zero_map(a: &BasedAlgebra, tgt: &[usize], src: &[usize]) -> Vec<Vec<Elem>> {
    vec![vec![a.zero_elem(); src.len()]; tgt.len()]
}

/// Identity matrix on a sum of projectives (diagonal idempotents).
pub fn identity_map(a: &BasedAlgebra, verts: &[usize]) -> Vec<Vec<Elem>> {
    let mut m = zero_map(a, verts, verts);
    for (k, &v) in verts.iter().enumerate() {
        m[k][k] = a.idempotent(v);
    }
    m
}

/// Compose matrices of algebra elements: `g ∘ f` where `g` has shape
/// `t × m` and `f` has shape `m × s`.
pub fn compose_maps(a: &BasedAlgebra, g: &[Vec<Elem>], f: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let t = g.len();
    let s = if f.is_empty() { 0 } else { f[0].len() };
    let m = f.len();
    let mut out = vec![vec![a.zero_elem(); s]; t];
    for r in 0..t {
        debug_assert_eq!(g[r].len(), m);
        for c in 0..s {
            let mut acc = a.zero_elem();
            for k in 0..m {
                if a.is_zero_elem(&g[r][k]) || a.is_zero_elem(&f[k][c]) {
                    continue;
                }
                let prod = a.mul(&g[r][k], &f[k][c]);
                for (idx, coeff) in prod.iter().enumerate() {
                    if !coeff.is_zero() {
                        acc[idx] = acc[idx].add(coeff);
                    }
                }
            }
            out[r][c] = acc;
        }
    }
    out
}

fn map_is_zero(a: &BasedAlgebra, m: &[Vec<Elem>]) -> bool {
    m.iter().flatten().all(|e| a.is_zero_elem(e))
}

fn assert_entries_in_blocks(a: &BasedAlgebra, tgt: &[usize], src: &[usize], m: &[Vec<Elem>]) {
    debug_assert_eq!(m.len(), tgt.len());
    for (r, row) in m.iter().enumerate() {
        debug_assert_eq!(row.len(), src.len());
        for (c, e) in row.iter().enumerate() {
            for (k, coeff) in e.iter().enumerate() {
                if !coeff.is_zero() {
                    debug_assert_eq!(a.basis[k].src, tgt[r], "entry outside its block");
                    debug_assert_eq!(a.basis[k].tgt, src[c], "entry outside its block");
                }
            }
        }
    }
}

impl TwoTermComplex {
    pub fn new(
        algebra: Arc<BasedAlgebra>,
        p1: Vec<usize>,
        p0: Vec<usize>,
        d: Vec<Vec<Elem>>,
    ) -> Self {
        assert_entries_in_blocks(&algebra, &p0, &p1, &d);
        TwoTermComplex { algebra, p1, p0, d }
    }

    /// The stalk complex `[0 → P(i)]`.
    pub fn projective(algebra: Arc<BasedAlgebra>, i: usize) -> Self {
        let d = vec![Vec::new()];
        TwoTermComplex { algebra, p1: Vec::new(), p0: vec![i], d }
    }

    /// The shifted projective `[P(i) → 0]`.
    pub fn shifted_projective(algebra: Arc<BasedAlgebra>, i: usize) -> Self {
        TwoTermComplex { algebra, p1: vec![i], p0: Vec::new(), d: Vec::new() }
    }

    pub fn zero(algebra: Arc<BasedAlgebra>) -> Self {
        TwoTermComplex { algebra, p1: Vec::new(), p0: Vec::new(), d: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_empty() && self.p1.is_empty()
    }

    /// The class `[P⁰] − [P⁻¹]` in the Grothendieck group of projectives,
    /// as per-vertex multiplicities.
    pub fn g_vector(&self) -> Vec<i64> {
        let mut g = vec![0i64; self.algebra.n_vertices()];
        for &v in &self.p0 {
            g[v] += 1;
        }
        for &v in &self.p1 {
            g[v] -= 1;
        }
        g
    }

    /// Direct sum, summands of `self` first.
    pub fn direct_sum(&self, other: &TwoTermComplex) -> TwoTermComplex {
        let a = &self.algebra;
        let p1: Vec<usize> = self.p1.iter().chain(&other.p1).copied().collect();
        let p0: Vec<usize> = self.p0.iter().chain(&other.p0).copied().collect();
        let mut d = zero_map(a, &p0, &p1);
        for (r, row) in self.d.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                d[r][c] = e.clone();
            }
        }
        let (ro, co) = (self.p0.len(), self.p1.len());
        for (r, row) in other.d.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                d[ro + r][co + c] = e.clone();
            }
        }
        TwoTermComplex { algebra: Arc::clone(&self.algebra), p1, p0, d }
    }

    /// Human-readable shape like `[P_2 → P_1 ⊕ P_1]`.
    pub fn describe(&self) -> String {
        let names = |vs: &[usize]| -> String {
            if vs.is_empty() {
                "0".to_string()
            } else {
                vs.iter()
                    .map(|&v| format!("P_{}", self.algebra.vertex_names[v]))
                    .collect::<Vec<_>>()
                    .join(" ⊕ ")
            }
        };
        format!("[{} → {}]", names(&self.p1), names(&self.p0))
    }
}

/// Direct sum of a list of complexes over the same algebra.
pub fn sum_of(algebra: &Arc<BasedAlgebra>, parts: &[TwoTermComplex]) -> TwoTermComplex {
    let mut acc = TwoTermComplex::zero(Arc::clone(algebra));
    for p in parts {
        acc = acc.direct_sum(p);
    }
    acc
}

impl ThreeTermComplex {
    pub fn new(
        algebra: Arc<BasedAlgebra>,
        p2: Vec<usize>,
        p1: Vec<usize>,
        p0: Vec<usize>,
        d2: Vec<Vec<Elem>>,
        d1: Vec<Vec<Elem>>,
    ) -> Self {
        assert_entries_in_blocks(&algebra, &p1, &p2, &d2);
        assert_entries_in_blocks(&algebra, &p0, &p1, &d1);
        let c = ThreeTermComplex { algebra, p2, p1, p0, d2, d1 };
        debug_assert!(map_is_zero(&c.algebra, &compose_maps(&c.algebra, &c.d1, &c.d2)));
        c
    }
}

/// The mapping cone of a chain map `f: X → Y` of two-term complexes:
/// degrees −2, −1, 0 are `X⁻¹`, `X⁰ ⊕ Y⁻¹`, `Y⁰`.
pub fn cone(x: &TwoTermComplex, y: &TwoTermComplex, f: &ChainMap) -> ThreeTermComplex {
    let a = &x.algebra;
    let p2 = x.p1.clone();
    let p1: Vec<usize> = x.p0.iter().chain(&y.p1).copied().collect();
    let p0 = y.p0.clone();
    // d2 = [−d_X ; f1] stacked over the X⁰ and Y⁻¹ row groups.
    let mut d2 = zero_map(a, &p1, &p2);
    for (r, row) in x.d.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            d2[r][c] = e.iter().map(Scalar::neg).collect();
        }
    }
    let off = x.p0.len();
    for (r, row) in f.f1.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            d2[off + r][c] = e.clone();
        }
    }
    // d1 = [f0 | d_Y] split over the X⁰ and Y⁻¹ column groups.
    let mut d1 = zero_map(a, &p0, &p1);
    for (r, row) in f.f0.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            d1[r][c] = e.clone();
        }
    }
    for (r, row) in y.d.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            d1[r][off + c] = e.clone();
        }
    }
    ThreeTermComplex::new(Arc::clone(&x.algebra), p2, p1, p0, d2, d1)
}

// ---------------------------------------------------------------------------
// Hom computations
// ---------------------------------------------------------------------------

/// Coordinates on `Hom(⊕P(src), ⊕P(tgt)) = ⊕ e_{tgt} Λ e_{src}`.
struct HomCoords {
    tgt: Vec<usize>,
    src: Vec<usize>,
    /// Global coordinate → (row, col, basis index of the algebra).
    entries: Vec<(usize, usize, usize)>,
}

impl HomCoords {
    fn build(a: &BasedAlgebra, tgt: &[usize], src: &[usize]) -> Self {
        let mut entries = Vec::new();
        for (r, &tv) in tgt.iter().enumerate() {
            for (c, &sv) in src.iter().enumerate() {
                for &k in a.block(tv, sv) {
                    entries.push((r, c, k));
                }
            }
        }
        HomCoords { tgt: tgt.to_vec(), src: src.to_vec(), entries }
    }

    fn dim(&self) -> usize {
        self.entries.len()
    }

    fn encode(&self, m: &[Vec<Elem>]) -> Vec<Scalar> {
        self.entries.iter().map(|&(r, c, k)| m[r][c][k].clone()).collect()
    }

    fn decode(&self, a: &BasedAlgebra, coords: &[Scalar]) -> Vec<Vec<Elem>> {
        let mut m = zero_map(a, &self.tgt, &self.src);
        for (g, &(r, c, k)) in self.entries.iter().enumerate() {
            if !coords[g].is_zero() {
                m[r][c][k] = coords[g].clone();
            }
        }
        m
    }
}

/// Flat-coordinate chain map data for a pair of complexes (maps `s → t`
/// when built by [`ChainSystem::build`]`(s, t)`).
struct ChainSystem {
    h0: HomCoords,
    h1: HomCoords,
    /// Basis of the space of chain maps, flat `(f0 | f1)` coordinates.
    chain_basis: Vec<Vec<Scalar>>,
    /// Spanning set (echelon) of the null-homotopic chain maps.
    null_basis: Vec<Vec<Scalar>>,
}

impl ChainSystem {
    /// Chain maps `s → t`: pairs `(f0, f1)` with `f0 ∘ d_s = d_t ∘ f1`.
    fn build(s: &TwoTermComplex, t: &TwoTermComplex) -> ChainSystem {
        let a = &*s.algebra;
        let field = a.field;
        let h0 = HomCoords::build(a, &t.p0, &s.p0);
        let h1 = HomCoords::build(a, &t.p1, &s.p1);
        let cond = HomCoords::build(a, &t.p0, &s.p1);
        let unknowns = h0.dim() + h1.dim();
        // Rows of the condition matrix: value of f0∘d_s − d_t∘f1 at each
        // condition coordinate, per unknown basis vector.
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(unknowns);
        for g in 0..h0.dim() {
            let mut flat = vec![field.zero(); h0.dim()];
            flat[g] = field.one();
            let f0 = h0.decode(a, &flat);
            let img = compose_maps(a, &f0, &s.d);
            cols.push(cond.encode(&img));
        }
        for g in 0..h1.dim() {
            let mut flat = vec![field.zero(); h1.dim()];
            flat[g] = field.one();
            let f1 = h1.decode(a, &flat);
            let img = compose_maps(a, &t.d, &f1);
            cols.push(cond.encode(&img).iter().map(Scalar::neg).collect());
        }
        // Solve (f0∘d_s − d_t∘f1) = 0: nullspace of the (cond × unknowns)
        // matrix whose columns are the images above.
        let mut rows = vec![vec![field.zero(); unknowns]; cond.dim()];
        for (u, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                rows[r][u] = v.clone();
            }
        }
        let chain_basis = if cond.dim() == 0 {
            // No condition: all of Hom⁰ ⊕ Hom⁻¹.
            (0..unknowns)
                .map(|g| {
                    let mut v = vec![field.zero(); unknowns];
                    v[g] = field.one();
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(field, &rows).nullspace()
        };
        // Null-homotopic maps: (d_t∘h, h∘d_s) for h: s⁰ → t⁻¹.
        let hh = HomCoords::build(a, &t.p1, &s.p0);
        let mut null_space = Subspace::new(field, unknowns);
        let mut null_basis = Vec::new();
        for g in 0..hh.dim() {
            let mut flat = vec![field.zero(); hh.dim()];
            flat[g] = field.one();
            let h = hh.decode(a, &flat);
            let f0 = compose_maps(a, &t.d, &h);
            let f1 = compose_maps(a, &h, &s.d);
            let mut v = h0.encode(&f0);
            v.extend(h1.encode(&f1));
            if null_space.insert(&v) {
                null_basis.push(v);
            }
        }
        ChainSystem { h0, h1, chain_basis, null_basis }
    }

    fn decode_pair(&self, a: &BasedAlgebra, flat: &[Scalar]) -> ChainMap {
        let (c0, c1) = flat.split_at(self.h0.dim());
        ChainMap { f0: self.h0.decode(a, c0), f1: self.h1.decode(a, c1) }
    }

    fn encode_pair(&self, m: &ChainMap) -> Vec<Scalar> {
        let mut v = self.h0.encode(&m.f0);
        v.extend(self.h1.encode(&m.f1));
        v
    }
}

/// Bases of the chain maps `t → s` and of the null-homotopic ones among
/// them. The quotient is `Hom_{K^b}(t, s)`.
pub fn hom_chain_basis(t: &TwoTermComplex, s: &TwoTermComplex) -> (Vec<ChainMap>, Vec<ChainMap>) {
    let sys = ChainSystem::build(t, s);
    let a = &*t.algebra;
    let chain = sys.chain_basis.iter().map(|v| sys.decode_pair(a, v)).collect();
    let null = sys.null_basis.iter().map(|v| sys.decode_pair(a, v)).collect();
    (chain, null)
}

/// Chain maps `t → s` whose homotopy classes form a basis of
/// `Hom_{K^b}(t, s)` (coset representatives for the null-homotopic span).
pub fn hom_basis_mod_homotopy(t: &TwoTermComplex, s: &TwoTermComplex) -> Vec<ChainMap> {
    let sys = ChainSystem::build(t, s);
    let a = &*t.algebra;
    let field = a.field;
    let n = sys.h0.dim() + sys.h1.dim();
    let mut span = Subspace::new(field, n);
    for v in &sys.null_basis {
        span.insert(v);
    }
    let mut reps = Vec::new();
    for v in &sys.chain_basis {
        if span.insert(v) {
            reps.push(sys.decode_pair(a, v));
        }
    }
    reps
}

/// The dimension of `Hom_{K^b}(t, s)` (chain maps modulo homotopy).
pub fn hom_dim(t: &TwoTermComplex, s: &TwoTermComplex) -> usize {
    let sys = ChainSystem::build(t, s);
    let field = t.algebra.field;
    let n = sys.h0.dim() + sys.h1.dim();
    let mut space = Subspace::new(field, n);
    for v in &sys.null_basis {
        space.insert(v);
    }
    let null_dim = space.dim();
    for v in &sys.chain_basis {
        space.insert(v);
    }
    space.dim() - null_dim
}

/// Does `Hom_{K^b}(t, s[1])` vanish?  True iff every module map
/// `t⁻¹ → s⁰` factors as `h0 ∘ d_t + d_s ∘ h1`.  This is the partial-order
/// test `t ≥ s` and (applied to presentations) the rigidity test.
pub fn hom_shift1_vanishes(t: &TwoTermComplex, s: &TwoTermComplex) -> bool {
    let a = &*t.algebra;
    let field = a.field;
    let target = HomCoords::build(a, &s.p0, &t.p1);
    if target.dim() == 0 {
        return true;
    }
    let h0 = HomCoords::build(a, &s.p0, &t.p0);
    let h1 = HomCoords::build(a, &s.p1, &t.p1);
    let mut image = Subspace::new(field, target.dim());
    let mut covered = 0usize;
    for g in 0..h0.dim() {
        let mut flat = vec![field.zero(); h0.dim()];
        flat[g] = field.one();
        let m = h0.decode(a, &flat);
        let img = compose_maps(a, &m, &t.d);
        if image.insert(&target.encode(&img)) {
            covered += 1;
            if covered == target.dim() {
                return true;
            }
        }
    }
    for g in 0..h1.dim() {
        let mut flat = vec![field.zero(); h1.dim()];
        flat[g] = field.one();
        let m = h1.decode(a, &flat);
        let img = compose_maps(a, &s.d, &m);
        if image.insert(&target.encode(&img)) {
            covered += 1;
            if covered == target.dim() {
                return true;
            }
        }
    }
    false
}

/// Presilting test: `Hom(t, t[1]) = 0`.
pub fn is_presilting(t: &TwoTermComplex) -> bool {
    hom_shift1_vanishes(t, t)
}

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

fn drop_row(m: &mut Vec<Vec<Elem>>, r: usize) {
    m.remove(r);
}

fn drop_col(m: &mut [Vec<Elem>], c: usize) {
    for row in m.iter_mut() {
        row.remove(c);
    }
}

/// Find a differential entry that is a unit in its corner algebra (same
/// source and target vertex, nonzero idempotent coefficient).
fn find_unit(_a: &BasedAlgebra, tgt: &[usize], src: &[usize], m: &[Vec<Elem>]) -> Option<(usize, usize)> {
    for (r, row) in m.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if tgt[r] == src[c] && !e[tgt[r]].is_zero() {
                return Some((r, c));
            }
        }
    }
    None
}

/// Cancel the unit pivot `d[r0][c0]` of a two-term differential by row and
/// column operations, then drop the contractible summand pair.
fn cancel_two_term(t: &mut TwoTermComplex, r0: usize, c0: usize) {
    let a = Arc::clone(&t.algebra);
    let v = t.p0[r0];
    let u = t.d[r0][c0].clone();
    let uinv = a.local_inverse(&u, v).expect("pivot is a unit");
    // Column operations: clear the pivot row.
    for c in 0..t.p1.len() {
        if c == c0 || a.is_zero_elem(&t.d[r0][c]) {
            continue;
        }
        let tfac = a.mul(&uinv, &t.d[r0][c]).iter().map(Scalar::neg).collect::<Vec<_>>();
        for r in 0..t.p0.len() {
            let add = a.mul(&t.d[r][c0], &tfac);
            for (k, x) in add.iter().enumerate() {
                if !x.is_zero() {
                    t.d[r][c][k] = t.d[r][c][k].add(x);
                }
            }
        }
    }
    // Row operations: clear the pivot column.
    for r in 0..t.p0.len() {
        if r == r0 || a.is_zero_elem(&t.d[r][c0]) {
            continue;
        }
        let sfac = a.mul(&t.d[r][c0], &uinv).iter().map(Scalar::neg).collect::<Vec<_>>();
        for c in 0..t.p1.len() {
            let add = a.mul(&sfac, &t.d[r0][c]);
            for (k, x) in add.iter().enumerate() {
                if !x.is_zero() {
                    t.d[r][c][k] = t.d[r][c][k].add(x);
                }
            }
        }
    }
    drop_row(&mut t.d, r0);
    drop_col(&mut t.d, c0);
    t.p0.remove(r0);
    t.p1.remove(c0);
}

/// Minimize a two-term complex: cancel all differential entries invertible
/// in their corner algebra.  The homotopy class is preserved; the result has
/// all entries in the radical.
pub fn minimize(t: &TwoTermComplex) -> TwoTermComplex {
    let mut out = t.clone();
    while let Some((r0, c0)) = find_unit(&out.algebra, &out.p0, &out.p1, &out.d) {
        cancel_two_term(&mut out, r0, c0);
    }
    out
}

/// Minimize a three-term complex down to two terms.  Errors with
/// [`Error::NotTwoTermReducible`] when a degree −2 part survives, i.e. the
/// homotopy class genuinely needs three terms.
pub fn minimize_three(c: &ThreeTermComplex) -> Result<TwoTermComplex> {
    let a = Arc::clone(&c.algebra);
    let mut p2 = c.p2.clone();
    let mut p1 = c.p1.clone();
    let mut p0 = c.p0.clone();
    let mut d2 = c.d2.clone();
    let mut d1 = c.d1.clone();
    loop {
        if let Some((r0, c0)) = find_unit(&a, &p0, &p1, &d1) {
            // Pivot in d1: clear its row (column ops, compensated in d2's
            // rows) and column (row ops, no compensation downstream).
            let v = p0[r0];
            let u = d1[r0][c0].clone();
            let uinv = a.local_inverse(&u, v).expect("pivot is a unit");
            for cc in 0..p1.len() {
                if cc == c0 || a.is_zero_elem(&d1[r0][cc]) {
                    continue;
                }
                let tfac: Vec<Scalar> =
                    a.mul(&uinv, &d1[r0][cc]).iter().map(Scalar::neg).collect();
                for r in 0..p0.len() {
                    let add = a.mul(&d1[r][c0], &tfac);
                    for (k, x) in add.iter().enumerate() {
                        if !x.is_zero() {
                            d1[r][cc][k] = d1[r][cc][k].add(x);
                        }
                    }
                }
                // Basis change of P⁻¹: row c0 of d2 picks up −t · row cc.
                let tneg: Vec<Scalar> = tfac.iter().map(Scalar::neg).collect();
                for s in 0..p2.len() {
                    let add = a.mul(&tneg, &d2[cc][s]);
                    for (k, x) in add.iter().enumerate() {
                        if !x.is_zero() {
                            d2[c0][s][k] = d2[c0][s][k].add(x);
                        }
                    }
                }
            }
            for r in 0..p0.len() {
                if r == r0 || a.is_zero_elem(&d1[r][c0]) {
                    continue;
                }
                let sfac: Vec<Scalar> =
                    a.mul(&d1[r][c0], &uinv).iter().map(Scalar::neg).collect();
                for cc in 0..p1.len() {
                    let add = a.mul(&sfac, &d1[r0][cc]);
                    for (k, x) in add.iter().enumerate() {
                        if !x.is_zero() {
                            d1[r][cc][k] = d1[r][cc][k].add(x);
                        }
                    }
                }
            }
            // d∘d = 0 forces the cleared summand's d2 row to vanish.
            debug_assert!(d2[c0].iter().all(|e| a.is_zero_elem(e)));
            drop_row(&mut d1, r0);
            drop_col(&mut d1, c0);
            drop_row(&mut d2, c0);
            p0.remove(r0);
            p1.remove(c0);
            continue;
        }
        if let Some((r1, c2)) = find_unit(&a, &p1, &p2, &d2) {
            // Pivot in d2: clear its row (column ops on d2, nothing
            // upstream) and column (row ops, compensated in d1's columns).
            let v = p1[r1];
            let u = d2[r1][c2].clone();
            let uinv = a.local_inverse(&u, v).expect("pivot is a unit");
            for cc in 0..p2.len() {
                if cc == c2 || a.is_zero_elem(&d2[r1][cc]) {
                    continue;
                }
                let tfac: Vec<Scalar> =
                    a.mul(&uinv, &d2[r1][cc]).iter().map(Scalar::neg).collect();
                for r in 0..p1.len() {
                    let add = a.mul(&d2[r][c2], &tfac);
                    for (k, x) in add.iter().enumerate() {
                        if !x.is_zero() {
                            d2[r][cc][k] = d2[r][cc][k].add(x);
                        }
                    }
                }
            }
            for r in 0..p1.len() {
                if r == r1 || a.is_zero_elem(&d2[r][c2]) {
                    continue;
                }
                let sfac: Vec<Scalar> =
                    a.mul(&d2[r][c2], &uinv).iter().map(Scalar::neg).collect();
                for cc in 0..p2.len() {
                    let add = a.mul(&sfac, &d2[r1][cc]);
                    for (k, x) in add.iter().enumerate() {
                        if !x.is_zero() {
                            d2[r][cc][k] = d2[r][cc][k].add(x);
                        }
                    }
                }
                // Basis change of P⁻¹: column r1 of d1 picks up −(col r)·s.
                let sneg: Vec<Scalar> = sfac.iter().map(Scalar::neg).collect();
                for rr in 0..p0.len() {
                    let add = a.mul(&d1[rr][r], &sneg);
                    for (k, x) in add.iter().enumerate() {
                        if !x.is_zero() {
                            d1[rr][r1][k] = d1[rr][r1][k].add(x);
                        }
                    }
                }
            }
            // d∘d = 0 forces the cleared summand's d1 column to vanish.
            debug_assert!((0..p0.len()).all(|rr| a.is_zero_elem(&d1[rr][r1])));
            drop_row(&mut d2, r1);
            drop_col(&mut d2, c2);
            drop_col(&mut d1, r1);
            p1.remove(r1);
            p2.remove(c2);
            continue;
        }
        break;
    }
    if !p2.is_empty() {
        return Err(Error::NotTwoTermReducible(format!(
            "degree −2 part of rank {} survives minimization",
            p2.len()
        )));
    }
    Ok(TwoTermComplex { algebra: a, p1, p0, d: d1 })
}

// ---------------------------------------------------------------------------
// Summand stripping and endomorphism rings
// ---------------------------------------------------------------------------

/// Scalar "top" of a module map: the matrix of idempotent coefficients,
/// zero wherever source and target vertices differ.
fn top_matrix(a: &BasedAlgebra, tgt: &[usize], src: &[usize], m: &[Vec<Elem>]) -> Matrix {
    let mut out = Matrix::zeros(a.field, tgt.len(), src.len());
    for (r, &tv) in tgt.iter().enumerate() {
        for (c, &sv) in src.iter().enumerate() {
            if tv == sv {
                out.set(r, c, m[r][c][tv].clone());
            }
        }
    }
    out
}

fn top_invertible(a: &BasedAlgebra, tgt: &[usize], src: &[usize], m: &[Vec<Elem>]) -> bool {
    if tgt.len() != src.len() {
        return false;
    }
    top_matrix(a, tgt, src, m).rank() == tgt.len()
}

/// Is the chain endomorphism `u` of the minimal complex `x` an isomorphism?
/// For minimal complexes this is detected on the scalar tops of both
/// components (homotopy perturbations cannot change the tops because the
/// differential entries lie in the radical).
fn is_chain_automorphism(x: &TwoTermComplex, u: &ChainMap) -> bool {
    let a = &*x.algebra;
    top_invertible(a, &x.p0, &x.p0, &u.f0) && top_invertible(a, &x.p1, &x.p1, &u.f1)
}

/// Compose chain maps `g ∘ f` where `f: A → B`, `g: B → C`.
pub fn compose_chain(a: &BasedAlgebra, g: &ChainMap, f: &ChainMap) -> ChainMap {
    ChainMap { f0: compose_maps(a, &g.f0, &f.f0), f1: compose_maps(a, &g.f1, &f.f1) }
}

/// Split off as many copies of the indecomposable `x` from `c` as possible.
///
/// Returns the number of copies stripped and the complementary summand.
/// Both inputs must be minimal; `x` must be indecomposable.  The search
/// relies on the bilinear pairing `Hom(c,x) × Hom(x,c) → End(x)/rad`: `x`
/// is a summand iff some basis pair `(p, s)` has `p∘s` an automorphism.
pub fn strip_summand(c: &TwoTermComplex, x: &TwoTermComplex) -> Result<(usize, TwoTermComplex)> {
    let a = Arc::clone(&c.algebra);
    let mut current = c.clone();
    let mut count = 0usize;
    'strip: loop {
        if current.p0.len() < x.p0.len() || current.p1.len() < x.p1.len() {
            return Ok((count, current));
        }
        let (into, _) = hom_chain_basis(x, &current);
        let (back, _) = hom_chain_basis(&current, x);
        for s in &into {
            for p in &back {
                let u = compose_chain(&a, p, s);
                if is_chain_automorphism(x, &u) {
                    // x splits off along s; the complement is the cone of s
                    // (a split monomorphism), minimized back to two terms.
                    let cn = cone(x, &current, s);
                    current = minimize_three(&cn).map_err(|_| Error::SplitFailure {
                        dim: x.p0.len() + x.p1.len(),
                    })?;
                    count += 1;
                    continue 'strip;
                }
            }
        }
        return Ok((count, current));
    }
}

/// Dimension of `End_{K^b}(t) / rad` over the ground field.
///
/// Computes the endomorphism ring modulo homotopy as a based algebra, then
/// its radical via the trace form of the regular representation.  The trace
/// criterion needs characteristic 0 or `p > dim End`; otherwise
/// [`Error::FieldTooSmall`] is returned.
pub fn end_over_radical_dim(t: &TwoTermComplex) -> Result<usize> {
    let a = &*t.algebra;
    let field = a.field;
    let sys = ChainSystem::build(t, t);
    let n = sys.h0.dim() + sys.h1.dim();
    let mut null = Subspace::new(field, n);
    for v in &sys.null_basis {
        null.insert(v);
    }
    // Coset representatives: reduced chain-basis vectors, kept when
    // independent modulo the null-homotopic subspace.
    let mut span = Subspace::new(field, n);
    for v in &sys.null_basis {
        span.insert(v);
    }
    let mut reps: Vec<Vec<Scalar>> = Vec::new();
    for v in &sys.chain_basis {
        if span.insert(v) {
            reps.push(null.reduce(v.clone()));
        }
    }
    let dim = reps.len();
    if dim == 0 {
        return Ok(0);
    }
    if let FieldSpec::Prime { p } = field {
        if (p as u128) <= (dim as u128) {
            return Err(Error::FieldTooSmall { p, dim });
        }
    }
    // Express a reduced vector in the rep basis.
    let mut cols = Matrix::zeros(field, n, dim);
    for (j, r) in reps.iter().enumerate() {
        for (i, v) in r.iter().enumerate() {
            cols.set(i, j, v.clone());
        }
    }
    let express = |v: &[Scalar]| -> Vec<Scalar> {
        cols.solve(v).expect("reduced vector lies in the span of representatives")
    };
    // Structure constants of End on the representatives.
    let rep_maps: Vec<ChainMap> = reps.iter().map(|r| sys.decode_pair(a, r)).collect();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = compose_chain(a, &rep_maps[i], &rep_maps[j]);
            let flat = sys.encode_pair(&prod);
            table[i][j] = express(&null.reduce(flat));
        }
    }
    // Trace form of the regular representation.
    let mut gram = Matrix::zeros(field, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            // Tr(L_{r_i} L_{r_j}) = Σ_k coefficient of r_k in r_i (r_j r_k).
            let mut tr = field.zero();
            for k in 0..dim {
                let mut acc = vec![field.zero(); dim];
                for (m, cjk) in table[j][k].iter().enumerate() {
                    if cjk.is_zero() {
                        continue;
                    }
                    for (q, cim) in table[i][m].iter().enumerate() {
                        if !cim.is_zero() {
                            acc[q] = acc[q].add(&cjk.mul(cim));
                        }
                    }
                }
                tr = tr.add(&acc[k]);
            }
            gram.set(i, j, tr);
        }
    }
    let rad_dim = gram.nullspace().len();
    Ok(dim - rad_dim)
}

/// Certify that a minimal complex is indecomposable: its endomorphism ring
/// modulo homotopy and radical must be one-dimensional.
pub fn certify_indecomposable(t: &TwoTermComplex) -> Result<bool> {
    Ok(end_over_radical_dim(t)? == 1)
}

// ---------------------------------------------------------------------------
// Minimal presentations and shape checks
// ---------------------------------------------------------------------------

/// Minimal projective presentation of the cyclic module
/// `M = e_iΛ / (Σ gens·Λ)` as a two-term complex `[⊕P(v_t) → P(i)]`.
///
/// The generators must lie in `e_i·rad Λ`.  The cover of the submodule is
/// selected greedily so that the chosen block components form a basis of
/// `N/N·rad`, which is exactly the projective-cover condition; the result is
/// minimal by construction.
pub fn min_presentation(algebra: &Arc<BasedAlgebra>, i: usize, gens: &[Elem]) -> TwoTermComplex {
    let a = &**algebra;
    let field = a.field;
    let dim = a.dim();
    for g in gens {
        debug_assert_eq!(a.mul(&a.idempotent(i), g), *g, "generator lies in e_iΛ");
        debug_assert!(
            (0..a.n_vertices()).all(|v| g[v].is_zero()),
            "generator lies in the radical"
        );
    }
    // N·rad = span of g·b over radical basis elements b.
    let mut nrad = Subspace::new(field, dim);
    for g in gens {
        for k in a.radical_indices() {
            let mut unit = a.zero_elem();
            unit[k] = field.one();
            let prod = a.mul(g, &unit);
            if !a.is_zero_elem(&prod) {
                nrad.insert(&prod);
            }
        }
    }
    // Select block components of the generators covering N / N·rad.
    let mut sel = nrad.clone();
    let mut p1: Vec<usize> = Vec::new();
    let mut entries: Vec<Elem> = Vec::new();
    for g in gens {
        for j in 0..a.n_vertices() {
            let comp = a.mul(g, &a.idempotent(j));
            if a.is_zero_elem(&comp) {
                continue;
            }
            if sel.insert(&comp) {
                p1.push(j);
                entries.push(comp);
            }
        }
    }
    let d = vec![entries];
    TwoTermComplex::new(Arc::clone(algebra), p1, vec![i], d)
}

/// Shape test for an indecomposable minimal two-term complex: build the
/// bipartite graph on degree −1 and degree 0 summands with one edge per
/// nonzero differential entry, and check that it is a tree.
pub fn qf_tree_check(t: &TwoTermComplex) -> bool {
    let a = &*t.algebra;
    let n1 = t.p1.len();
    let n0 = t.p0.len();
    let nodes = n1 + n0;
    if nodes == 0 {
        return false;
    }
    let mut edges = Vec::new();
    for (r, row) in t.d.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if !a.is_zero_elem(e) {
                edges.push((c, n1 + r));
            }
        }
    }
    if edges.len() != nodes - 1 {
        return false;
    }
    // Connectivity by union-find.
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut comps = nodes;
    for (u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            comps -= 1;
        }
    }
    comps == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presentation::presentation;

    const Q: FieldSpec = FieldSpec::Rational;

    fn a2() -> Arc<BasedAlgebra> {
        Arc::new(
            build_algebra(&presentation(Q, &["1", "2"], &[("a", 0, 1)], &[])).unwrap(),
        )
    }

    fn kxk() -> Arc<BasedAlgebra> {
        Arc::new(build_algebra(&presentation(Q, &["1", "2"], &[], &[])).unwrap())
    }

    /// The minimal presentation of the simple S₁ over A₂: [P₂ --α--> P₁].
    fn s_s1(alg: &Arc<BasedAlgebra>) -> TwoTermComplex {
        let alpha = alg.arrow_elems[0].clone();
        TwoTermComplex::new(Arc::clone(alg), vec![1], vec![0], vec![vec![alpha]])
    }

    #[test]
    fn g_vectors_of_stalks_and_presentations() {
        let alg = a2();
        assert_eq!(TwoTermComplex::projective(Arc::clone(&alg), 0).g_vector(), vec![1, 0]);
        assert_eq!(
            TwoTermComplex::shifted_projective(Arc::clone(&alg), 1).g_vector(),
            vec![0, -1]
        );
        assert_eq!(s_s1(&alg).g_vector(), vec![1, -1]);
    }

    #[test]
    fn chain_maps_between_stalk_complexes() {
        let alg = a2();
        let p0 = TwoTermComplex::projective(Arc::clone(&alg), 0);
        let (chain, null) = hom_chain_basis(&p0, &p0);
        assert_eq!(chain.len(), 1); // e_1Λe_1 = K
        assert!(null.is_empty());
        let two = kxk();
        let q1 = TwoTermComplex::projective(Arc::clone(&two), 0);
        let q2 = TwoTermComplex::projective(Arc::clone(&two), 1);
        let (chain, null) = hom_chain_basis(&q1, &q2);
        assert!(chain.is_empty());
        assert!(null.is_empty());
    }

    #[test]
    fn chain_map_direction_is_first_argument_as_source() {
        let alg = a2();
        let t = s_s1(&alg);
        let p1 = TwoTermComplex::projective(Arc::clone(&alg), 0);
        // Maps [0→P₁] → [P₂→P₁]: no commuting condition, dimension 1.
        let (chain, null) = hom_chain_basis(&p1, &t);
        assert_eq!(chain.len(), 1);
        assert!(null.is_empty());
        // Maps [P₂→P₁] → [0→P₁]: the condition φ⁰∘α = 0 kills everything.
        let (chain, _) = hom_chain_basis(&t, &p1);
        assert!(chain.is_empty());
    }

    #[test]
    fn shift_vanishing_matches_the_order_convention() {
        let alg = a2();
        let t = s_s1(&alg);
        let p2 = TwoTermComplex::projective(Arc::clone(&alg), 1);
        assert!(!hom_shift1_vanishes(&t, &p2));
        assert!(hom_shift1_vanishes(&p2, &t));
        // Λ (empty degree −1) is above everything.
        let lam = TwoTermComplex::projective(Arc::clone(&alg), 0)
            .direct_sum(&TwoTermComplex::projective(Arc::clone(&alg), 1));
        assert!(hom_shift1_vanishes(&lam, &t));
        assert!(hom_shift1_vanishes(&lam, &lam));
        // [P→0] against [0→P] fails: the identity does not factor.
        let down = TwoTermComplex::shifted_projective(Arc::clone(&alg), 0);
        let up = TwoTermComplex::projective(Arc::clone(&alg), 0);
        assert!(!hom_shift1_vanishes(&down, &up));
    }

    #[test]
    fn presilting_examples() {
        let two = kxk();
        let q1 = TwoTermComplex::projective(Arc::clone(&two), 0);
        let q1s = TwoTermComplex::shifted_projective(Arc::clone(&two), 0);
        assert!(is_presilting(&q1));
        assert!(is_presilting(&q1s));
        // [0→P₁] ⊕ [P₁→0] is not presilting: the identity gives a map to
        // the shift.
        assert!(!is_presilting(&q1.direct_sum(&q1s)));
    }

    #[test]
    fn minimize_cancels_identity_components() {
        let alg = a2();
        let e0 = alg.idempotent(0);
        let idc = TwoTermComplex::new(Arc::clone(&alg), vec![0], vec![0], vec![vec![e0]]);
        let m = minimize(&idc);
        assert!(m.is_zero());
        // A minimal complex passes through unchanged.
        let t = s_s1(&alg);
        let m = minimize(&t);
        assert_eq!(m.p0, t.p0);
        assert_eq!(m.p1, t.p1);
        // Mixed: [P₁ ⊕ P₂ → P₁] with (e₁, α) minimizes to [P₂ → 0]… no:
        // cancelling the e₁ pivot leaves [P₂ → 0] with differential α
        // adjusted; concretely the complement of the contractible part.
        let e0 = alg.idempotent(0);
        let alpha = alg.arrow_elems[0].clone();
        let c = TwoTermComplex::new(
            Arc::clone(&alg),
            vec![0, 1],
            vec![0],
            vec![vec![e0, alpha]],
        );
        let m = minimize(&c);
        assert_eq!(m.p0, Vec::<usize>::new());
        assert_eq!(m.p1, vec![1]);
    }

    #[test]
    fn three_term_minimization_clears_split_cones() {
        let alg = a2();
        let t = s_s1(&alg);
        // Cone of the identity map of t must minimize to the zero complex.
        let id = ChainMap {
            f0: identity_map(&alg, &t.p0),
            f1: identity_map(&alg, &t.p1),
        };
        let cn = cone(&t, &t, &id);
        let m = minimize_three(&cn).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn strip_summand_counts_copies() {
        let alg = a2();
        let t = s_s1(&alg);
        let double = t.direct_sum(&t);
        let (count, rest) = strip_summand(&double, &t).unwrap();
        assert_eq!(count, 2);
        assert!(rest.is_zero());
        let p2 = TwoTermComplex::projective(Arc::clone(&alg), 1);
        let (count, rest) = strip_summand(&t, &p2).unwrap();
        assert_eq!(count, 0);
        assert_eq!(rest.p0, t.p0);
        // Mixed sum: strip one of the two kinds.
        let mix = t.direct_sum(&p2);
        let (count, rest) = strip_summand(&mix, &p2).unwrap();
        assert_eq!(count, 1);
        assert_eq!(rest.g_vector(), t.g_vector());
    }

    #[test]
    fn endomorphism_ring_certifies_indecomposability() {
        let alg = a2();
        let t = s_s1(&alg);
        assert!(certify_indecomposable(&t).unwrap());
        let p1 = TwoTermComplex::projective(Arc::clone(&alg), 0);
        assert!(certify_indecomposable(&p1).unwrap());
        let lam = p1.direct_sum(&TwoTermComplex::projective(Arc::clone(&alg), 1));
        // End(Λ) = Λ has a 2-dimensional semisimple quotient.
        assert_eq!(end_over_radical_dim(&lam).unwrap(), 2);
        assert!(!certify_indecomposable(&lam).unwrap());
    }

    #[test]
    fn minimal_presentation_of_simples_and_trivial_input() {
        let alg = a2();
        let empty = min_presentation(&alg, 0, &[]);
        assert!(empty.p1.is_empty());
        assert_eq!(empty.p0, vec![0]);
        // S₁ = P₁/αΛ.
        let pres = min_presentation(&alg, 0, &[alg.arrow_elems[0].clone()]);
        assert_eq!(pres.p0, vec![0]);
        assert_eq!(pres.p1, vec![1]);
        assert_eq!(pres.d[0][0], alg.arrow_elems[0]);
        // Redundant generators collapse: α and another copy of α.
        let pres2 = min_presentation(
            &alg,
            0,
            &[alg.arrow_elems[0].clone(), alg.arrow_elems[0].clone()],
        );
        assert_eq!(pres2.p1, vec![1]);
    }

    #[test]
    fn minimal_presentation_drops_radical_multiples() {
        // A₃ without relations: generators {a, ab} of a submodule of P₁;
        // ab ∈ aΛ is redundant, the cover is P₂ alone.
        let alg = Arc::new(
            build_algebra(&presentation(
                Q,
                &["1", "2", "3"],
                &[("a", 0, 1), ("b", 1, 2)],
                &[],
            ))
            .unwrap(),
        );
        let a_el = alg.arrow_elems[0].clone();
        let ab = alg.mul(&alg.arrow_elems[0], &alg.arrow_elems[1]);
        let pres = min_presentation(&alg, 0, &[a_el, ab]);
        assert_eq!(pres.p1, vec![1]);
    }

    #[test]
    fn bipartite_shape_test() {
        let alg = a2();
        assert!(qf_tree_check(&TwoTermComplex::projective(Arc::clone(&alg), 0)));
        assert!(qf_tree_check(&s_s1(&alg)));
        // Zero differential with two summands: disconnected, not a tree.
        let disc = TwoTermComplex::new(
            Arc::clone(&alg),
            vec![1],
            vec![0],
            vec![vec![alg.zero_elem()]],
        );
        assert!(!qf_tree_check(&disc));
    }

    #[test]
    fn minimization_preserves_hom_answers() {
        let alg = a2();
        let t = s_s1(&alg);
        let padded = t
            .direct_sum(&minimize(&TwoTermComplex::new(
                Arc::clone(&alg),
                vec![],
                vec![],
                vec![],
            )))
            .direct_sum(&TwoTermComplex::new(
                Arc::clone(&alg),
                vec![1],
                vec![1],
                vec![vec![alg.idempotent(1)]],
            ));
        let m = minimize(&padded);
        assert_eq!(m.g_vector(), t.g_vector());
        let p2 = TwoTermComplex::projective(Arc::clone(&alg), 1);
        assert_eq!(
            hom_shift1_vanishes(&padded, &p2),
            hom_shift1_vanishes(&m, &p2)
        );
        assert_eq!(hom_dim(&padded, &p2), hom_dim(&m, &p2));
    }
}
