//! Frozen reference posets.
//!
//! Four families of posets recur throughout the test surface and the CLI:
//!
//! * **Two chains** `two-chains(ℓ, ℓ′)`: a minimum `s`, a maximum `t`, and
//!   two disjoint chains of ℓ and ℓ′ interior elements between them.  These
//!   are exactly the finite connected 2-regular lattices, and every one of
//!   them is the support τ-tilting poset of a two-vertex algebra (see
//!   [`crate::families::FamilySpec::TwoPoint`]).
//! * **Boolean cubes** `boolean(m)`: subsets of an `m`-element set ordered
//!   by inclusion — the support τ-tilting poset of a product of `m` copies
//!   of the ground field.
//! * **`realizable26`**: a stored 26-element connected 3-regular lattice.
//!   It is realized by the three-vertex catalogue entry 3
//!   ([`crate::families::FamilySpec::Catalogue3`]), and it is the standing
//!   example for the reconstruction walk-through: from the bare poset one
//!   recovers the support classes and the arrow skeleton 1 ⇄ 2 ⇄ 3, 1 → 3.
//! * **`non-realizable30`**: a stored 30-element connected 3-regular
//!   lattice that is *not* a support τ-tilting poset.  It fails the
//!   atom/coatom interval-count test ([`realizability_obstruction`]): the
//!   multiset of downset sizes of joins of atom pairs is {5, 6, 6}, while
//!   the multiset of upset sizes of meets of coatom pairs is {6, 6, 6}.  In
//!   a support τ-tilting poset both multisets count the same algebra
//!   invariants (two-vertex support subposets at the bottom, two-simple
//!   quotient posets at the top, exchanged by the duality with the opposite
//!   algebra), so they must agree.  Products of this poset with boolean
//!   cubes give non-realizable `n`-regular examples for every `n ≥ 3`.
//!
//! The two stored Hasse tables are reviewed data: each is guarded by a
//! SHA-256 checksum recomputed on every construction, so accidental edits
//! fail loudly rather than silently shifting every downstream result.
//!
//! [`realizability_obstruction`]: crate::poset::realizability_obstruction

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A named reference poset, buildable without any algebra input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fixture", rename_all = "kebab-case")]
pub enum FixtureSpec {
    /// Minimum, maximum, and two disjoint chains of `l` and `lp` interior
    /// elements between them: `2 + l + lp` elements in total.
    TwoChains { l: usize, lp: usize },
    /// The boolean cube `{0 < 1}^m` with `2^m` elements.
    Boolean { m: usize },
    /// Stored 26-element 3-regular lattice; realizable (catalogue entry 3).
    Realizable26,
    /// Stored 30-element 3-regular lattice; fails the interval-count
    /// obstruction, hence not a support τ-tilting poset.
    NonRealizable30,
}

/// Number of elements of the poset [`fixture_poset`] produces for `spec`.
pub fn fixture_len(spec: &FixtureSpec) -> usize {
    match *spec {
        FixtureSpec::TwoChains { l, lp } => 2 + l + lp,
        FixtureSpec::Boolean { m } => 1 << m,
        FixtureSpec::Realizable26 => 26,
        FixtureSpec::NonRealizable30 => 30,
    }
}

/// Build the poset a specification names.
///
/// Element `0` is always the minimum and `n − 1` the maximum; stored
/// fixtures keep the numbering of their source drawings, which satisfies
/// the same convention.
pub fn fixture_poset(spec: &FixtureSpec) -> Result<FinitePoset> {
    match *spec {
        FixtureSpec::TwoChains { l, lp } => two_chains(l, lp),
        FixtureSpec::Boolean { m } => boolean(m),
        FixtureSpec::Realizable26 => stored(26, &HASSE_26, SHA_26),
        FixtureSpec::NonRealizable30 => stored(30, &HASSE_30, SHA_30),
    }
}

fn two_chains(l: usize, lp: usize) -> Result<FinitePoset> {
    if l == 0 || lp == 0 {
        return Err(Error::InvalidSpec(format!(
            "two-chains needs at least one interior element per chain, got ({l}, {lp})"
        )));
    }
    let n = 2 + l + lp;
    let top = n - 1;
    // 0 = minimum, 1..=l first chain (ascending), l+1..=l+lp second chain.
    let mut edges = Vec::with_capacity(l + lp + 2);
    for (start, len) in [(1, l), (l + 1, lp)] {
        edges.push((start, 0));
        for k in 1..len {
            edges.push((start + k, start + k - 1));
        }
        edges.push((top, start + len - 1));
    }
    FinitePoset::from_hasse(n, &edges)
}

fn boolean(m: usize) -> Result<FinitePoset> {
    if m > 16 {
        return Err(Error::InvalidSpec(format!(
            "boolean cube of dimension {m} has 2^{m} elements; the cap is m = 16"
        )));
    }
    let n = 1usize << m;
    // Covers: delete one bit.  Masks order themselves with 0 at the bottom
    // and the full mask on top; the all-ones mask is n − 1 as promised.
    let mut edges = Vec::with_capacity(m * (n / 2).max(1));
    for mask in 0..n {
        for b in 0..m {
            if mask & (1 << b) != 0 {
                edges.push((mask, mask ^ (1 << b)));
            }
        }
    }
    FinitePoset::from_hasse(n, &edges)
}

/// Covering pairs `(larger, smaller)` of the stored 26-element lattice.
const HASSE_26: [(usize, usize); 39] = [
    (1, 0),
    (2, 0),
    (3, 0),
    (4, 1),
    (5, 1),
    (6, 3),
    (6, 5),
    (7, 4),
    (7, 5),
    (8, 2),
    (9, 2),
    (10, 3),
    (11, 6),
    (12, 7),
    (13, 8),
    (13, 9),
    (14, 4),
    (14, 8),
    (15, 9),
    (15, 10),
    (16, 11),
    (16, 12),
    (17, 10),
    (17, 11),
    (18, 13),
    (19, 14),
    (20, 16),
    (20, 17),
    (21, 18),
    (21, 19),
    (22, 12),
    (22, 19),
    (23, 21),
    (23, 22),
    (24, 15),
    (24, 18),
    (25, 20),
    (25, 23),
    (25, 24),
];
const SHA_26: &str = "733dca134bdb54201d96c9a3ae651d1690f7eeca751f5bff4ab889845d9bec80";

/// Covering pairs `(larger, smaller)` of the stored 30-element lattice.
const HASSE_30: [(usize, usize); 45] = [
    (1, 0),
    (2, 0),
    (3, 1),
    (4, 1),
    (5, 0),
    (6, 2),
    (7, 3),
    (7, 4),
    (8, 4),
    (8, 6),
    (9, 5),
    (10, 5),
    (11, 6),
    (12, 7),
    (13, 8),
    (14, 3),
    (14, 9),
    (15, 9),
    (15, 10),
    (16, 2),
    (16, 10),
    (17, 12),
    (17, 13),
    (18, 11),
    (18, 13),
    (19, 14),
    (20, 15),
    (21, 16),
    (22, 19),
    (22, 20),
    (23, 17),
    (23, 18),
    (24, 20),
    (24, 21),
    (25, 12),
    (25, 19),
    (26, 11),
    (26, 21),
    (27, 22),
    (27, 25),
    (28, 24),
    (28, 26),
    (29, 23),
    (29, 27),
    (29, 28),
];
const SHA_30: &str = "b8910a7f1c1735b9ce43983dc0e852d256264f15b30bec6d96b33a476b245043";

fn checksum(n: usize, edges: &[(usize, usize)]) -> String {
    let body =
        edges.iter().map(|(a, b)| format!("{a}>{b}")).collect::<Vec<_>>().join(",");
    let mut hasher = Sha256::new();
    hasher.update(format!("{n}:{body}").as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|byte| format!("{byte:02x}")).collect()
}

fn stored(n: usize, edges: &[(usize, usize)], expected: &str) -> Result<FinitePoset> {
    let actual = checksum(n, edges);
    if actual != expected {
        return Err(Error::InvalidSpec(format!(
            "stored {n}-element fixture fails its checksum: expected {expected}, got {actual}"
        )));
    }
    FinitePoset::from_hasse(n, edges)
}
