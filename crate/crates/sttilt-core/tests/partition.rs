//! Integration checks for the tree-partition machinery on algebras built
//! from several two-vertex blocks joined by bridge arrows.
//!
//! The main example glues five commutation-square blocks (vertices
//! `1a ⇄ 2a` with both 2-cycles zero) along a tree of four bridges.  The
//! partition into the five blocks satisfies every requirement: each block
//! is connected, the block quiver is a tree, and every one- and two-block
//! quotient algebra has a finite lattice poset — so the algebra lies in the
//! class the reconstruction theory covers.

use std::sync::Arc;

use sttilt_core::algebra::{build_algebra, condition1_check, g_sets};
use sttilt_core::presentation::{presentation, Presentation};
use sttilt_core::reconstruct::{condition2_check, theta_membership, verify_partition};
use sttilt_core::silting::enumerate_sttilt;
use sttilt_core::FieldSpec;

const Q: FieldSpec = FieldSpec::Rational;

/// Five blocks `1a ⇄ 2a` (arrows `xa`, `ya`, both 2-cycles zero) joined by
/// bridges `al: 2_1 → 1_2`, `be: 2_1 → 1_3`, `ga: 2_3 → 1_4`,
/// `de: 2_5 → 1_3`; the block quiver is the tree 2 ← 1 → 3 ← 5, 3 → 4.
fn five_block_algebra() -> Presentation {
    let vertices: Vec<String> = (1..=5).flat_map(|a| [format!("1_{a}"), format!("2_{a}")]).collect();
    let vertex_refs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    // Block a occupies vertex ids 2(a−1) and 2(a−1)+1.
    for a in 0..5 {
        arrows.push((format!("x{}", a + 1), 2 * a, 2 * a + 1));
        arrows.push((format!("y{}", a + 1), 2 * a + 1, 2 * a));
    }
    arrows.push(("al".into(), 1, 2)); // 2_1 → 1_2
    arrows.push(("be".into(), 1, 4)); // 2_1 → 1_3
    arrows.push(("ga".into(), 5, 6)); // 2_3 → 1_4
    arrows.push(("de".into(), 9, 4)); // 2_5 → 1_3
    let arrow_tuples: Vec<(&str, usize, usize)> =
        arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
    let mut relations: Vec<Vec<(&str, Vec<&str>)>> = Vec::new();
    let xy: Vec<(String, String)> =
        (1..=5).map(|a| (format!("x{a}"), format!("y{a}"))).collect();
    for (x, y) in &xy {
        relations.push(vec![("1", vec![x.as_str(), y.as_str()])]);
        relations.push(vec![("1", vec![y.as_str(), x.as_str()])]);
    }
    presentation(Q, &vertex_refs, &arrow_tuples, &relations)
}

#[test]
fn the_five_block_partition_is_verified() {
    let p = five_block_algebra();
    let algebra = Arc::new(build_algebra(&p).unwrap());
    assert_eq!(algebra.n_vertices(), 10);

    let blocks: Vec<Vec<usize>> = (0..5).map(|a| vec![2 * a, 2 * a + 1]).collect();
    assert!(verify_partition(&p, &algebra, &blocks, 5_000).unwrap());
}

#[test]
fn partitions_violating_each_requirement_are_rejected() {
    let p = five_block_algebra();
    let algebra = Arc::new(build_algebra(&p).unwrap());

    // A block that is not connected as a full subquiver (two far-apart
    // vertices) fails immediately.
    let disconnected = vec![
        vec![0, 7],
        vec![1, 2, 3],
        vec![4, 5],
        vec![6],
        vec![8, 9],
    ];
    assert!(!verify_partition(&p, &algebra, &disconnected, 5_000).unwrap());

    // Splitting a 2-cycle across two blocks puts both of its arrows between
    // the same pair of blocks, so the block quiver is no longer a tree.
    let split_cycle = vec![
        vec![0],
        vec![1],
        vec![2, 3],
        vec![4, 5],
        vec![6, 7],
        vec![8, 9],
    ];
    assert!(!verify_partition(&p, &algebra, &split_cycle, 5_000).unwrap());

    // Not a partition at all: overlapping blocks are a specification error.
    let overlapping = vec![vec![0, 1], vec![1, 2, 3], vec![4, 5, 6, 7], vec![8, 9]];
    assert!(verify_partition(&p, &algebra, &overlapping, 5_000).is_err());
}

#[test]
fn the_search_finds_a_finest_partition_and_membership_holds() {
    let p = five_block_algebra();
    let algebra = Arc::new(build_algebra(&p).unwrap());

    // The spanning-path condition holds on every nonzero block.
    let gs = g_sets(&p, &algebra);
    assert!(condition1_check(&gs).holds);

    // The finest satisfying partition is exactly the five blocks: no block
    // may be split because `1a ⇄ 2a` is a 2-cycle inside one block of the
    // quiver, and a singleton split would put it across two blocks.
    let found = condition2_check(&p, &algebra, 5_000).unwrap().expect("a partition exists");
    let mut sorted: Vec<Vec<usize>> = found;
    sorted.sort();
    let expected: Vec<Vec<usize>> = (0..5).map(|a| vec![2 * a, 2 * a + 1]).collect();
    assert_eq!(sorted, expected);

    assert!(theta_membership(&p, &algebra, 5_000).unwrap());
}

#[test]
fn the_poset_of_one_block_with_a_pendant_vertex_is_small_and_regular() {
    // One commutation block plus a pendant vertex reached by a bridge: the
    // three-vertex witness that two-block quotients stay finite lattices.
    let p = presentation(
        Q,
        &["1_1", "2_1", "1_2"],
        &[("x", 0, 1), ("y", 1, 0), ("al", 1, 2)],
        &[vec![("1", vec!["x", "y"])], vec![("1", vec!["y", "x"])]],
    );
    let algebra = Arc::new(build_algebra(&p).unwrap());
    let run = enumerate_sttilt(&algebra, 5_000).unwrap();
    let poset = sttilt_core::poset::FinitePoset::from_hasse(run.len(), &run.hasse).unwrap();
    assert!(poset.is_regular(3));
    assert!(poset.is_lattice());
}
