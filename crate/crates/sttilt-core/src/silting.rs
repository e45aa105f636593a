//! Two-term silting objects and mutation-driven enumeration of the support
//! τ-tilting poset.
//!
//! A [`SiltingObject`] is a basic two-term silting object in the homotopy
//! category of projectives, stored as its list of indecomposable minimal
//! summands (sorted by g-vector, which identifies a summand uniquely).  The
//! bijection with support τ-tilting pairs sends a pair `(M, P)` to
//! `P_M ⊕ P[1]` where `P_M` is the minimal presentation of `M`; the
//! [`support_of`] accessor recovers the support from the shifted-projective
//! summands.
//!
//! [`left_mutation`] replaces one summand using a left approximation by the
//! others: form the map into the sum of all Hom-basis targets, take its
//! mapping cone, minimize to two terms, strip the approximation junk, and
//! certify the remaining summand indecomposable.  A mutation whose cone is
//! not two-term reducible ascends in the poset instead; callers treat
//! [`Error::NotTwoTermReducible`] as "this direction goes up".
//!
//! [`enumerate_sttilt`] breadth-first searches downward from the algebra
//! object.  Every element other than the maximum has an upper neighbour, so
//! downward mutation from the maximum reaches the whole (finite) poset, and
//! the discovered edges are exactly the Hasse arrows (larger → smaller).
//! Frontier elements are mutated in parallel and merged deterministically;
//! final element ids are canonically ordered by g-vector matrix so output is
//! stable across runs and thread counts.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::BasedAlgebra;
use crate::complex::{
    certify_indecomposable, cone, hom_basis_mod_homotopy, hom_shift1_vanishes, minimize_three,
    strip_summand, ChainMap, TwoTermComplex,
};
use crate::error::{Error, Result};

/// A basic two-term silting object, summands sorted by g-vector.
#[derive(Debug, Clone)]
pub struct SiltingObject {
    pub algebra: Arc<BasedAlgebra>,
    pub summands: Vec<TwoTermComplex>,
}

impl SiltingObject {
    fn sorted(algebra: Arc<BasedAlgebra>, mut summands: Vec<TwoTermComplex>) -> Self {
        summands.sort_by_key(|s| s.g_vector());
        SiltingObject { algebra, summands }
    }

    /// The algebra itself, `⊕_i [0 → P(i)]` — the maximum of the poset.
    pub fn algebra_object(algebra: &Arc<BasedAlgebra>) -> Self {
        let summands = (0..algebra.n_vertices())
            .map(|i| TwoTermComplex::projective(Arc::clone(algebra), i))
            .collect();
        Self::sorted(Arc::clone(algebra), summands)
    }

    /// The shifted algebra, `⊕_i [P(i) → 0]` — the minimum of the poset.
    pub fn shifted_algebra(algebra: &Arc<BasedAlgebra>) -> Self {
        let summands = (0..algebra.n_vertices())
            .map(|i| TwoTermComplex::shifted_projective(Arc::clone(algebra), i))
            .collect();
        Self::sorted(Arc::clone(algebra), summands)
    }

    /// Sorted list of summand g-vectors; a complete isomorphism invariant,
    /// used as the deduplication key during enumeration.
    pub fn g_matrix(&self) -> Vec<Vec<i64>> {
        self.summands.iter().map(|s| s.g_vector()).collect()
    }

    /// Full silting test: `n` summands, pairwise (and self) rigid.
    pub fn is_silting(&self) -> bool {
        if self.summands.len() != self.algebra.n_vertices() {
            return false;
        }
        self.summands
            .iter()
            .all(|a| self.summands.iter().all(|b| hom_shift1_vanishes(a, b)))
    }
}

/// The support of the corresponding support τ-tilting pair: all vertices
/// except those whose shifted projective `[P(i) → 0]` is a summand.
pub fn support_of(t: &SiltingObject) -> Vec<usize> {
    let n = t.algebra.n_vertices();
    let mut out_of_support = vec![false; n];
    for s in &t.summands {
        if s.p0.is_empty() && s.p1.len() == 1 {
            out_of_support[s.p1[0]] = true;
        }
    }
    (0..n).filter(|&i| !out_of_support[i]).collect()
}

/// Order test `t ≥ s`, summand-by-summand: `Hom(t, s[1]) = 0`.
pub fn ge(t: &SiltingObject, s: &SiltingObject) -> bool {
    t.summands
        .iter()
        .all(|a| s.summands.iter().all(|b| hom_shift1_vanishes(a, b)))
}

/// Left mutation of `t` at its `k`-th summand.
///
/// Builds the left approximation `f: t_k → ⊕_{j≠k} t_j^{hom dim}` from a
/// Hom-basis modulo homotopy, takes the mapping cone, minimizes, strips the
/// summands lying in `add(t/t_k)`, and certifies the remainder
/// indecomposable.  Returns [`Error::NotTwoTermReducible`] when the cone
/// genuinely needs three terms — exactly the directions that ascend in the
/// poset — and [`Error::SplitFailure`] if the certified remainder is not
/// indecomposable (which would contradict the mutation being well-defined).
pub fn left_mutation(t: &SiltingObject, k: usize) -> Result<SiltingObject> {
    let algebra = &t.algebra;
    let tk = &t.summands[k];
    let others: Vec<&TwoTermComplex> = t
        .summands
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, s)| s)
        .collect();
    // Approximation target and map: one copy of t_j per Hom-basis element.
    let mut target = TwoTermComplex::zero(Arc::clone(algebra));
    let mut f0: Vec<Vec<crate::algebra::Elem>> = Vec::new();
    let mut f1: Vec<Vec<crate::algebra::Elem>> = Vec::new();
    for x in &others {
        for m in hom_basis_mod_homotopy(tk, x) {
            f0.extend(m.f0);
            f1.extend(m.f1);
            target = target.direct_sum(x);
        }
    }
    let f = ChainMap { f0, f1 };
    let cn = cone(tk, &target, &f);
    let mut rest = minimize_three(&cn)?;
    for x in &others {
        let (_, r) = strip_summand(&rest, x)?;
        rest = r;
    }
    if rest.is_zero() || !certify_indecomposable(&rest)? {
        return Err(Error::SplitFailure { dim: rest.p0.len() + rest.p1.len() });
    }
    let mut summands: Vec<TwoTermComplex> = others.into_iter().cloned().collect();
    summands.push(rest);
    let out = SiltingObject::sorted(Arc::clone(algebra), summands);
    debug_assert!(out.is_silting());
    Ok(out)
}

/// The support τ-tilting poset with its elements still carrying their
/// complexes.  `hasse` edges run from the larger element to the smaller.
#[derive(Debug, Clone)]
pub struct LabeledSttiltPoset {
    pub algebra: Arc<BasedAlgebra>,
    pub elements: Vec<SiltingObject>,
    pub hasse: Vec<(usize, usize)>,
}

impl LabeledSttiltPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the maximum (the algebra object).
    pub fn top(&self) -> usize {
        self.index_of(&SiltingObject::algebra_object(&self.algebra).g_matrix())
            .expect("the algebra object is always an element")
    }

    /// Index of the minimum (the shifted algebra).
    pub fn bottom(&self) -> usize {
        self.index_of(&SiltingObject::shifted_algebra(&self.algebra).g_matrix())
            .expect("the shifted algebra is always an element")
    }

    pub fn index_of(&self, key: &Vec<Vec<i64>>) -> Option<usize> {
        self.elements.iter().position(|e| &e.g_matrix() == key)
    }
}

/// Enumerate the whole support τ-tilting poset by downward mutation from
/// the algebra object.  Fails with [`Error::CapExceeded`] once more than
/// `cap` elements have been discovered (the poset may be infinite).
pub fn enumerate_sttilt(algebra: &Arc<BasedAlgebra>, cap: usize) -> Result<LabeledSttiltPoset> {
    let n = algebra.n_vertices();
    let start = SiltingObject::algebra_object(algebra);
    let mut ids: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
    let mut elements: Vec<SiltingObject> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    ids.insert(start.g_matrix(), 0);
    elements.push(start);
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let batch: Vec<(usize, Vec<Result<SiltingObject>>)> = frontier
            .par_iter()
            .map(|&idx| {
                let t = &elements[idx];
                (idx, (0..n).map(|k| left_mutation(t, k)).collect())
            })
            .collect();
        let mut next: Vec<usize> = Vec::new();
        for (idx, results) in batch {
            for r in results {
                match r {
                    Err(Error::NotTwoTermReducible(_)) => continue,
                    Err(e) => return Err(e),
                    Ok(obj) => {
                        let key = obj.g_matrix();
                        let to = match ids.get(&key) {
                            Some(&id) => id,
                            None => {
                                let id = elements.len();
                                ids.insert(key, id);
                                elements.push(obj);
                                next.push(id);
                                id
                            }
                        };
                        edges.push((idx, to));
                    }
                }
            }
            if elements.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
        frontier = next;
    }
    // Canonical ids: sort elements by g-matrix so output is independent of
    // traversal order.
    let mut order: Vec<usize> = (0..elements.len()).collect();
    let keys: Vec<Vec<Vec<i64>>> = elements.iter().map(|e| e.g_matrix()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut rank = vec![0usize; elements.len()];
    for (new_id, &old) in order.iter().enumerate() {
        rank[old] = new_id;
    }
    let mut sorted_elements: Vec<Option<SiltingObject>> = elements.into_iter().map(Some).collect();
    let elements: Vec<SiltingObject> = order
        .iter()
        .map(|&old| sorted_elements[old].take().expect("each id moved once"))
        .collect();
    let mut hasse: Vec<(usize, usize)> =
        edges.into_iter().map(|(a, b)| (rank[a], rank[b])).collect();
    hasse.sort_unstable();
    hasse.dedup();
    Ok(LabeledSttiltPoset { algebra: Arc::clone(algebra), elements, hasse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::presentation::presentation;
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rational;

    fn arc(p: crate::presentation::Presentation) -> Arc<BasedAlgebra> {
        Arc::new(build_algebra(&p).unwrap())
    }

    fn a2() -> Arc<BasedAlgebra> {
        arc(presentation(Q, &["1", "2"], &[("a", 0, 1)], &[]))
    }

    fn keys(p: &LabeledSttiltPoset) -> Vec<Vec<Vec<i64>>> {
        p.elements.iter().map(|e| e.g_matrix()).collect()
    }

    #[test]
    fn mutating_the_algebra_object_descends() {
        let alg = a2();
        let lam = SiltingObject::algebra_object(&alg);
        // Summands sorted by g-vector: [0→P₂] = (0,1) before [0→P₁] = (1,0).
        assert_eq!(lam.g_matrix(), vec![vec![0, 1], vec![1, 0]]);
        // Mutating at [0→P₂] replaces it by the presentation of S₁.
        let m = left_mutation(&lam, 0).unwrap();
        assert_eq!(m.g_matrix(), vec![vec![1, -1], vec![1, 0]]);
        // Mutating at [0→P₁] sends P₁ to its shift (no Hom towards P₂).
        let m = left_mutation(&lam, 1).unwrap();
        assert_eq!(m.g_matrix(), vec![vec![-1, 0], vec![0, 1]]);
    }

    #[test]
    fn mutating_the_shifted_algebra_always_ascends() {
        let alg = a2();
        let bottom = SiltingObject::shifted_algebra(&alg);
        for k in 0..2 {
            match left_mutation(&bottom, k) {
                Err(Error::NotTwoTermReducible(_)) => {}
                other => panic!("expected an ascending direction, got {other:?}"),
            }
        }
    }

    #[test]
    fn sttilt_poset_of_a2_is_the_pentagon() {
        let alg = a2();
        let p = enumerate_sttilt(&alg, 100).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.hasse.len(), 5);
        let ks = keys(&p);
        assert!(ks.contains(&vec![vec![0, 1], vec![1, 0]])); // Λ
        assert!(ks.contains(&vec![vec![-1, 0], vec![0, -1]])); // Λ[1]
        assert!(ks.contains(&vec![vec![1, -1], vec![1, 0]]));
        assert!(ks.contains(&vec![vec![0, -1], vec![1, -1]]));
        assert!(ks.contains(&vec![vec![-1, 0], vec![0, 1]]));
        // Every element has total degree 2 in the Hasse quiver.
        let mut deg = vec![0usize; p.len()];
        for &(a, b) in &p.hasse {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d == 2));
        // Top and bottom resolve to the right g-matrices.
        assert_eq!(keys(&p)[p.top()], vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(keys(&p)[p.bottom()], vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn semisimple_two_vertex_poset_is_the_square() {
        let alg = arc(presentation(Q, &["1", "2"], &[], &[]));
        let p = enumerate_sttilt(&alg, 100).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.hasse.len(), 4);
    }

    #[test]
    fn linear_a3_has_catalan_many_elements() {
        let alg = arc(presentation(
            Q,
            &["1", "2", "3"],
            &[("a", 0, 1), ("b", 1, 2)],
            &[],
        ));
        let p = enumerate_sttilt(&alg, 100).unwrap();
        assert_eq!(p.len(), 14);
        let mut deg = vec![0usize; p.len()];
        for &(a, b) in &p.hasse {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d == 3));
    }

    #[test]
    fn preprojective_a2_has_six_elements() {
        let alg = arc(presentation(
            Q,
            &["1", "2"],
            &[("a", 0, 1), ("b", 1, 0)],
            &[vec![("1", vec!["a", "b"])], vec![("1", vec!["b", "a"])]],
        ));
        let p = enumerate_sttilt(&alg, 100).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.hasse.len(), 6);
    }

    #[test]
    fn supports_track_shifted_summands() {
        let alg = a2();
        let p = enumerate_sttilt(&alg, 100).unwrap();
        let supports: Vec<Vec<usize>> =
            p.elements.iter().map(support_of).collect();
        // Λ has full support, Λ[1] empty support.
        assert_eq!(supports[p.top()], vec![0, 1]);
        assert_eq!(supports[p.bottom()], Vec::<usize>::new());
        let mut sizes: Vec<usize> = supports.iter().map(|s| s.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![0, 1, 1, 2, 2]);
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let alg = a2();
        match enumerate_sttilt(&alg, 3) {
            Err(Error::CapExceeded { cap: 3 }) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn order_test_agrees_with_reachability() {
        let alg = a2();
        let p = enumerate_sttilt(&alg, 100).unwrap();
        // Transitive closure of the Hasse quiver.
        let m = p.len();
        let mut reach = vec![vec![false; m]; m];
        for i in 0..m {
            reach[i][i] = true;
        }
        // Repeated relaxation is fine at this size.
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &p.hasse {
                for j in 0..m {
                    if reach[b][j] && !reach[a][j] {
                        reach[a][j] = true;
                        changed = true;
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                assert_eq!(
                    ge(&p.elements[i], &p.elements[j]),
                    reach[i][j],
                    "order mismatch at ({i}, {j})"
                );
            }
        }
    }
}
