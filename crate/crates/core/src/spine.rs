//! Standard genus-g spine graphs and their admissible edge labelings.
//!
//! The closed spine is a chain of g handles: a loop at each end, and each
//! interior handle contributing an upper/lower edge pair, with horizontal
//! edges joining consecutive handles.  Edges are numbered 1..=3g-3 left to
//! right; every vertex constraint involves edges within a window of three
//! consecutive indices, which is what makes two-label contexts sufficient
//! for the conditional counts below.
//!
//! A punctured end handle trades its end loop for an upper/lower pair whose
//! outer vertex carries the external puncture edge.

use crate::category::{fusion_allowed, AnyonLabel, Tau, Vacuum};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    LeftLoop,
    RightLoop,
    Upper,
    Lower,
    Horizontal,
}

#[derive(Clone, Debug)]
pub struct SpineEdge {
    /// 1-based position in left-to-right order.
    pub index: usize,
    pub class: EdgeClass,
    /// Endpoint vertex ids; equal for loop edges.
    pub ends: (usize, usize),
}

#[derive(Clone, Copy, Debug)]
pub struct Puncture {
    pub vertex: usize,
    pub label: AnyonLabel,
}

#[derive(Clone, Debug)]
pub struct SpineGraph {
    pub genus: usize,
    pub vertex_count: usize,
    pub edges: Vec<SpineEdge>,
    pub punctures: Vec<Puncture>,
}

/// One trivalent vertex: internal edge slots (1-based edge indices, loops
/// listed twice) plus fixed puncture labels.
#[derive(Clone, Debug)]
pub struct VertexStar {
    pub internal: Vec<usize>,
    pub punctures: Vec<AnyonLabel>,
}

impl SpineGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_stars(&self) -> Vec<VertexStar> {
        let mut stars: Vec<VertexStar> = (0..self.vertex_count)
            .map(|_| VertexStar {
                internal: Vec::new(),
                punctures: Vec::new(),
            })
            .collect();
        for e in &self.edges {
            stars[e.ends.0].internal.push(e.index);
            stars[e.ends.1].internal.push(e.index);
        }
        for p in &self.punctures {
            stars[p.vertex].punctures.push(p.label);
        }
        for (v, s) in stars.iter().enumerate() {
            assert_eq!(
                s.internal.len() + s.punctures.len(),
                3,
                "vertex {v} is not trivalent"
            );
        }
        stars
    }
}

/// Closed standard spine, genus >= 2.
pub fn standard_spine(genus: usize) -> Result<SpineGraph> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let mut edges = Vec::with_capacity(3 * genus - 3);
    edges.push(SpineEdge {
        index: 1,
        class: EdgeClass::LeftLoop,
        ends: (0, 0),
    });
    edges.push(SpineEdge {
        index: 2,
        class: EdgeClass::Horizontal,
        ends: (0, 1),
    });
    for k in 2..genus {
        let (a, b) = (2 * k - 3, 2 * k - 2);
        edges.push(SpineEdge {
            index: 3 * k - 3,
            class: EdgeClass::Upper,
            ends: (a, b),
        });
        edges.push(SpineEdge {
            index: 3 * k - 2,
            class: EdgeClass::Lower,
            ends: (a, b),
        });
        edges.push(SpineEdge {
            index: 3 * k - 1,
            class: EdgeClass::Horizontal,
            ends: (b, 2 * k - 1),
        });
    }
    edges.push(SpineEdge {
        index: 3 * genus - 3,
        class: EdgeClass::RightLoop,
        ends: (2 * genus - 3, 2 * genus - 3),
    });
    Ok(SpineGraph {
        genus,
        vertex_count: 2 * genus - 2,
        edges,
        punctures: Vec::new(),
    })
}

/// Spine with punctured end handles.  `labels` holds 0, 1 or 2 puncture
/// labels: one label punctures the left end, two puncture left then right.
pub fn punctured_spine(genus: usize, labels: &[AnyonLabel]) -> Result<SpineGraph> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    match labels.len() {
        0 => standard_spine(genus),
        1 => {
            // left end punctured; handles 1..g-1 contribute U/L pairs, the
            // right end keeps its loop
            let mut edges = Vec::new();
            let mut idx = 0;
            for k in 1..genus {
                let (a, b) = (2 * k - 2, 2 * k - 1);
                idx += 1;
                edges.push(SpineEdge {
                    index: idx,
                    class: EdgeClass::Upper,
                    ends: (a, b),
                });
                idx += 1;
                edges.push(SpineEdge {
                    index: idx,
                    class: EdgeClass::Lower,
                    ends: (a, b),
                });
                idx += 1;
                edges.push(SpineEdge {
                    index: idx,
                    class: EdgeClass::Horizontal,
                    ends: (b, 2 * k),
                });
            }
            idx += 1;
            edges.push(SpineEdge {
                index: idx,
                class: EdgeClass::RightLoop,
                ends: (2 * genus - 2, 2 * genus - 2),
            });
            Ok(SpineGraph {
                genus,
                vertex_count: 2 * genus - 1,
                edges,
                punctures: vec![Puncture {
                    vertex: 0,
                    label: labels[0],
                }],
            })
        }
        2 => {
            // both ends punctured: g U/L pairs joined by g-1 horizontals
            let mut edges = Vec::new();
            let mut idx = 0;
            for k in 1..=genus {
                let (a, b) = (2 * k - 2, 2 * k - 1);
                idx += 1;
                edges.push(SpineEdge {
                    index: idx,
                    class: EdgeClass::Upper,
                    ends: (a, b),
                });
                idx += 1;
                edges.push(SpineEdge {
                    index: idx,
                    class: EdgeClass::Lower,
                    ends: (a, b),
                });
                if k < genus {
                    idx += 1;
                    edges.push(SpineEdge {
                        index: idx,
                        class: EdgeClass::Horizontal,
                        ends: (b, 2 * k),
                    });
                }
            }
            Ok(SpineGraph {
                genus,
                vertex_count: 2 * genus,
                edges,
                punctures: vec![
                    Puncture {
                        vertex: 0,
                        label: labels[0],
                    },
                    Puncture {
                        vertex: 2 * genus - 1,
                        label: labels[1],
                    },
                ],
            })
        }
        n => Err(Error::TooManyPunctures(n)),
    }
}

fn star_admissible(star: &VertexStar, labels: &[AnyonLabel]) -> bool {
    let mut slots = [Vacuum; 3];
    let mut i = 0;
    for &e in &star.internal {
        slots[i] = labels[e - 1];
        i += 1;
    }
    for &p in &star.punctures {
        slots[i] = p;
        i += 1;
    }
    fusion_allowed(slots[0], slots[1], slots[2])
}

/// All admissible labelings in lexicographic order (edge 1 most
/// significant, Vacuum < Tau).  Depth-first with pruning: a vertex is
/// checked as soon as its last internal edge is assigned.
pub fn enumerate_labelings(graph: &SpineGraph) -> Vec<Vec<AnyonLabel>> {
    let stars = graph.vertex_stars();
    let e = graph.edge_count();
    // stars become checkable once their highest internal edge is labelled
    let mut ready_at: Vec<Vec<&VertexStar>> = (0..=e).map(|_| Vec::new()).collect();
    for s in &stars {
        let hi = s.internal.iter().copied().max().unwrap_or(0);
        ready_at[hi].push(s);
    }
    let mut out = Vec::new();
    let mut current = vec![Vacuum; e];
    fn rec(
        depth: usize,
        e: usize,
        current: &mut Vec<AnyonLabel>,
        ready_at: &[Vec<&VertexStar>],
        out: &mut Vec<Vec<AnyonLabel>>,
    ) {
        if depth == e {
            out.push(current.clone());
            return;
        }
        for l in AnyonLabel::ALL {
            current[depth] = l;
            if ready_at[depth + 1]
                .iter()
                .all(|s| star_admissible(s, current))
            {
                rec(depth + 1, e, current, ready_at, out);
            }
        }
    }
    rec(0, e, &mut current, &ready_at, &mut out);
    out
}

/// Count admissible labelings by the same pruned search, without storing
/// them.  Exponential in genus; the transfer-matrix count below is the
/// scalable path, this is its oracle.
pub fn count_labelings_enumerated(graph: &SpineGraph) -> BigUint {
    let stars = graph.vertex_stars();
    let e = graph.edge_count();
    let mut ready_at: Vec<Vec<&VertexStar>> = (0..=e).map(|_| Vec::new()).collect();
    for s in &stars {
        let hi = s.internal.iter().copied().max().unwrap_or(0);
        ready_at[hi].push(s);
    }
    fn rec(depth: usize, e: usize, current: &mut Vec<AnyonLabel>, ready_at: &[Vec<&VertexStar>]) -> u128 {
        if depth == e {
            return 1;
        }
        let mut total = 0u128;
        for l in AnyonLabel::ALL {
            current[depth] = l;
            if ready_at[depth + 1]
                .iter()
                .all(|s| star_admissible(s, current))
            {
                total += rec(depth + 1, e, current, ready_at);
            }
        }
        total
    }
    let mut current = vec![Vacuum; e];
    BigUint::from(rec(0, e, &mut current, &ready_at))
}

/// Completion counts (z0, z1) for a partial chain of n remaining handles,
/// split by the label entering the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionVector {
    pub z0: BigUint,
    pub z1: BigUint,
}

/// Transfer step: appending one handle maps (z0, z1) by [[2,1],[1,3]].
const TRANSFER: [[u32; 2]; 2] = [[2, 1], [1, 3]];

fn mat2_mul(a: &[[BigUint; 2]; 2], b: &[[BigUint; 2]; 2]) -> [[BigUint; 2]; 2] {
    let mut out = [
        [BigUint::zero(), BigUint::zero()],
        [BigUint::zero(), BigUint::zero()],
    ];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c];
        }
    }
    out
}

fn transfer_power(n: usize) -> [[BigUint; 2]; 2] {
    let mut acc = [
        [BigUint::one(), BigUint::zero()],
        [BigUint::zero(), BigUint::one()],
    ];
    let mut base = [
        [BigUint::from(TRANSFER[0][0]), BigUint::from(TRANSFER[0][1])],
        [BigUint::from(TRANSFER[1][0]), BigUint::from(TRANSFER[1][1])],
    ];
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat2_mul(&acc, &base);
        }
        base = mat2_mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// Z^(n) for a tail of n handles: Z^(1) = (2, 1), Z^(n+1) = M Z^(n) with
/// M = [[2,1],[1,3]].  Requires n >= 1.
pub fn completion_vector(n: usize) -> Result<CompletionVector> {
    if n == 0 {
        return Err(Error::BadLabeling("completion tail of zero handles".into()));
    }
    let m = transfer_power(n - 1);
    let (b0, b1) = (BigUint::from(2u32), BigUint::one());
    Ok(CompletionVector {
        z0: &m[0][0] * &b0 + &m[0][1] * &b1,
        z1: &m[1][0] * &b0 + &m[1][1] * &b1,
    })
}

fn z_component(n: usize, h: AnyonLabel) -> BigUint {
    let z = completion_vector(n).expect("tail length >= 1");
    match h {
        Vacuum => z.z0,
        Tau => z.z1,
    }
}

/// Number of admissible labelings of the closed genus-g spine, computed by
/// transfer matrix in O(log g) big-integer steps.
pub fn transfer_count(genus: usize) -> Result<BigUint> {
    transfer_count_with_ends(genus, None, None)
}

/// Same with optionally punctured end handles; `None` keeps the end loop.
/// A vacuum puncture carries the same end weight (2, 1) as a loop end, so
/// it never changes the count.
pub fn transfer_count_with_ends(
    genus: usize,
    left: Option<AnyonLabel>,
    right: Option<AnyonLabel>,
) -> Result<BigUint> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let weight = |p: Option<AnyonLabel>| -> [BigUint; 2] {
        match p {
            None | Some(Vacuum) => [BigUint::from(2u32), BigUint::one()],
            Some(Tau) => [BigUint::one(), BigUint::from(3u32)],
        }
    };
    let l = weight(left);
    let r = weight(right);
    let m = transfer_power(genus - 2);
    let mr = [
        &m[0][0] * &r[0] + &m[0][1] * &r[1],
        &m[1][0] * &r[0] + &m[1][1] * &r[1],
    ];
    Ok(&l[0] * &mr[0] + &l[1] * &mr[1])
}

/// Classify edge index i (1-based) of the closed genus-g spine.  The
/// returned payload is the handle (Upper/Lower) or chain position
/// (Horizontal) the edge belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedEdge {
    LeftLoop,
    RightLoop,
    Upper { handle: usize },
    Lower { handle: usize },
    Horizontal { position: usize },
}

pub fn closed_edge_kind(genus: usize, i: usize) -> Result<ClosedEdge> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let e = 3 * genus - 3;
    if i == 0 || i > e {
        return Err(Error::EdgeOutOfRange { index: i, max: e });
    }
    Ok(if i == 1 {
        ClosedEdge::LeftLoop
    } else if i == e {
        ClosedEdge::RightLoop
    } else {
        match i % 3 {
            2 => ClosedEdge::Horizontal {
                position: (i + 1) / 3,
            },
            0 => ClosedEdge::Upper { handle: i / 3 + 1 },
            _ => ClosedEdge::Lower {
                handle: i.div_ceil(3),
            },
        }
    })
}

fn require(ctx: Option<AnyonLabel>, what: &str) -> Result<AnyonLabel> {
    ctx.ok_or_else(|| Error::ContextArity(what.to_string()))
}

/// Number of admissible completions of a labeling prefix s_1..s_i of the
/// closed genus-g spine, given only the two-label window (s_{i-2}, s_{i-1})
/// and the candidate s_i.  Window labels that fall before edge 1 are None.
///
/// Every vertex of the spine fits in a three-edge window, so the window
/// determines admissibility of everything already forced, and a transfer
/// tail counts the rest.  Inconsistent windows return zero; missing window
/// labels that the edge genuinely needs are an arity error.
pub fn completions_after_prefix(
    genus: usize,
    i: usize,
    c2: Option<AnyonLabel>,
    c1: Option<AnyonLabel>,
    s: AnyonLabel,
) -> Result<BigUint> {
    let kind = closed_edge_kind(genus, i)?;
    let adm = fusion_allowed;
    Ok(match kind {
        ClosedEdge::LeftLoop => AnyonLabel::ALL
            .into_iter()
            .filter(|&h| adm(s, s, h))
            .map(|h| z_component(genus - 1, h))
            .sum(),
        ClosedEdge::Horizontal { position: m } => {
            if m == 1 {
                let c1 = require(c1, "left loop label")?;
                if !adm(c1, c1, s) {
                    return Ok(BigUint::zero());
                }
            } else {
                let c2 = require(c2, "upper label")?;
                let c1 = require(c1, "lower label")?;
                if !adm(c2, c1, s) {
                    return Ok(BigUint::zero());
                }
            }
            z_component(genus - m, s)
        }
        ClosedEdge::Upper { handle: k } => {
            let c1 = require(c1, "incoming horizontal label")?;
            if k == 2 {
                // the window also covers the left loop vertex
                let c2 = require(c2, "left loop label")?;
                if !adm(c2, c2, c1) {
                    return Ok(BigUint::zero());
                }
            }
            let mut total = BigUint::zero();
            for l in AnyonLabel::ALL {
                if !adm(c1, s, l) {
                    continue;
                }
                for h in AnyonLabel::ALL {
                    if adm(s, l, h) {
                        total += z_component(genus - k, h);
                    }
                }
            }
            total
        }
        ClosedEdge::Lower { handle: k } => {
            let c2 = require(c2, "incoming horizontal label")?;
            let c1 = require(c1, "upper label")?;
            if !adm(c2, c1, s) {
                return Ok(BigUint::zero());
            }
            AnyonLabel::ALL
                .into_iter()
                .filter(|&h| adm(c1, s, h))
                .map(|h| z_component(genus - k, h))
                .sum()
        }
        ClosedEdge::RightLoop => {
            let c1 = require(c1, "incoming horizontal label")?;
            let mut ok = adm(c1, s, s);
            if genus == 2 {
                // at genus 2 the window covers both vertices
                let c2 = require(c2, "left loop label")?;
                ok = ok && adm(c2, c2, c1);
            }
            if ok {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        }
    })
}

/// Exact conditional probability p(s_i = s | window) among admissible
/// completions.  Errors if the window itself admits no completion.
pub fn conditional_probability(
    genus: usize,
    i: usize,
    c2: Option<AnyonLabel>,
    c1: Option<AnyonLabel>,
    s: AnyonLabel,
) -> Result<BigRational> {
    let num = completions_after_prefix(genus, i, c2, c1, s)?;
    let den: BigUint = AnyonLabel::ALL
        .into_iter()
        .map(|t| completions_after_prefix(genus, i, c2, c1, t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    if den.is_zero() {
        return Err(Error::EmptyContext(format!("edge {i}, window ({c2:?}, {c1:?})")));
    }
    Ok(BigRational::new(num.into(), den.into()))
}

/// Labeling count for a spine with punctured ends, by enumeration.
pub fn count_punctured(genus: usize, labels: &[AnyonLabel]) -> Result<BigUint> {
    let g = punctured_spine(genus, labels)?;
    Ok(count_labelings_enumerated(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(bits: &[u8]) -> Vec<AnyonLabel> {
        bits.iter()
            .map(|&b| AnyonLabel::from_bit(b).unwrap())
            .collect()
    }

    #[test]
    fn genus_two_labelings_in_lex_order() {
        let g = standard_spine(2).unwrap();
        let ls = enumerate_labelings(&g);
        let want: Vec<Vec<AnyonLabel>> = [
            [0u8, 0, 0],
            [0, 0, 1],
            [1, 0, 0],
            [1, 0, 1],
            [1, 1, 1],
        ]
        .iter()
        .map(|b| lab(b))
        .collect();
        assert_eq!(ls, want);
    }

    #[test]
    fn genus_four_edge_classes() {
        let g = standard_spine(4).unwrap();
        let classes: Vec<EdgeClass> = g.edges.iter().map(|e| e.class).collect();
        use EdgeClass::*;
        assert_eq!(
            classes,
            vec![LeftLoop, Horizontal, Upper, Lower, Horizontal, Upper, Lower, Horizontal, RightLoop]
        );
        assert_eq!(g.vertex_count, 6);
    }

    #[test]
    fn closed_edge_kinds() {
        use ClosedEdge::*;
        assert_eq!(closed_edge_kind(4, 1).unwrap(), LeftLoop);
        assert_eq!(closed_edge_kind(4, 2).unwrap(), Horizontal { position: 1 });
        assert_eq!(closed_edge_kind(4, 3).unwrap(), Upper { handle: 2 });
        assert_eq!(closed_edge_kind(4, 4).unwrap(), Lower { handle: 2 });
        assert_eq!(closed_edge_kind(4, 5).unwrap(), Horizontal { position: 2 });
        assert_eq!(closed_edge_kind(4, 6).unwrap(), Upper { handle: 3 });
        assert_eq!(closed_edge_kind(4, 9).unwrap(), RightLoop);
        assert_eq!(closed_edge_kind(2, 3).unwrap(), RightLoop);
        assert!(closed_edge_kind(4, 10).is_err());
        assert!(closed_edge_kind(4, 0).is_err());
    }

    #[test]
    fn vertices_are_trivalent_everywhere() {
        for g in 2..=5 {
            standard_spine(g).unwrap().vertex_stars();
            punctured_spine(g, &[Tau]).unwrap().vertex_stars();
            punctured_spine(g, &[Vacuum, Tau]).unwrap().vertex_stars();
        }
    }

    #[test]
    fn completion_vector_values() {
        let z1 = completion_vector(1).unwrap();
        assert_eq!(z1.z0, BigUint::from(2u32));
        assert_eq!(z1.z1, BigUint::from(1u32));
        let z2 = completion_vector(2).unwrap();
        assert_eq!(z2.z0, BigUint::from(5u32));
        assert_eq!(z2.z1, BigUint::from(5u32));
        let z3 = completion_vector(3).unwrap();
        assert_eq!(z3.z0, BigUint::from(15u32));
        assert_eq!(z3.z1, BigUint::from(20u32));
        assert!(completion_vector(0).is_err());
    }

    #[test]
    fn completion_vector_matches_iterated_recurrence() {
        let mut z = (BigUint::from(2u32), BigUint::from(1u32));
        for n in 1..=40 {
            let fast = completion_vector(n).unwrap();
            assert_eq!((fast.z0.clone(), fast.z1.clone()), z, "n = {n}");
            z = (
                BigUint::from(2u32) * &z.0 + &z.1,
                &z.0 + BigUint::from(3u32) * &z.1,
            );
        }
    }

    #[test]
    fn transfer_count_matches_enumeration() {
        let expected: [u64; 5] = [5, 15, 50, 175, 625];
        for (g, want) in (2..=6).zip(expected) {
            let fast = transfer_count(g).unwrap();
            assert_eq!(fast, BigUint::from(want), "genus {g}");
            let slow = count_labelings_enumerated(&standard_spine(g).unwrap());
            assert_eq!(fast, slow, "genus {g}");
        }
        // one deeper anchor off the closed form
        assert_eq!(transfer_count(7).unwrap(), BigUint::from(2250u32));
    }

    #[test]
    fn completions_match_brute_force_suffix_counts() {
        // for every realized prefix of every labeling, the window-based
        // count must equal the number of distinct admissible suffixes
        for genus in [3usize, 4] {
            let graph = standard_spine(genus).unwrap();
            let all = enumerate_labelings(&graph);
            let e = graph.edge_count();
            for i in 1..=e {
                use std::collections::BTreeMap;
                let mut by_prefix: BTreeMap<Vec<AnyonLabel>, usize> = BTreeMap::new();
                for l in &all {
                    *by_prefix.entry(l[..i].to_vec()).or_default() += 1;
                }
                for (prefix, count) in by_prefix {
                    let c2 = if i >= 3 { Some(prefix[i - 3]) } else { None };
                    let c1 = if i >= 2 { Some(prefix[i - 2]) } else { None };
                    let s = prefix[i - 1];
                    let got = completions_after_prefix(genus, i, c2, c1, s).unwrap();
                    assert_eq!(
                        got,
                        BigUint::from(count),
                        "genus {genus} edge {i} prefix {prefix:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn completions_examples() {
        // genus 2, first edge: 2 completions under vacuum, 3 under tau
        assert_eq!(
            completions_after_prefix(2, 1, None, None, Vacuum).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            completions_after_prefix(2, 1, None, None, Tau).unwrap(),
            BigUint::from(3u32)
        );
        // inconsistent window gives zero
        assert_eq!(
            completions_after_prefix(2, 3, Some(Tau), Some(Tau), Vacuum).unwrap(),
            BigUint::zero()
        );
        // missing required window labels is an arity error
        assert!(completions_after_prefix(2, 3, None, Some(Tau), Vacuum).is_err());
    }

    #[test]
    fn conditional_probabilities_exact() {
        use num_bigint::BigInt;
        let p = conditional_probability(2, 1, None, None, Vacuum).unwrap();
        assert_eq!(p, BigRational::new(BigInt::from(2), BigInt::from(5)));
        // second edge: forced vacuum when the loop is vacuum
        let p = conditional_probability(2, 2, None, Some(Vacuum), Vacuum).unwrap();
        assert_eq!(p, BigRational::new(BigInt::from(1), BigInt::from(1)));
        let p = conditional_probability(2, 2, None, Some(Tau), Vacuum).unwrap();
        assert_eq!(p, BigRational::new(BigInt::from(2), BigInt::from(3)));
        // a window that admits nothing errors out
        assert!(conditional_probability(2, 3, Some(Vacuum), Some(Tau), Vacuum).is_err());
    }

    #[test]
    fn punctured_counts_match_closed_form() {
        for genus in 2..=6 {
            for left in [Vacuum, Tau] {
                let slow = count_punctured(genus, &[left]).unwrap();
                let fast = transfer_count_with_ends(genus, Some(left), None).unwrap();
                assert_eq!(slow, fast, "genus {genus} left {left:?}");
                for right in [Vacuum, Tau] {
                    let slow = count_punctured(genus, &[left, right]).unwrap();
                    let fast =
                        transfer_count_with_ends(genus, Some(left), Some(right)).unwrap();
                    assert_eq!(slow, fast, "genus {genus} ends {left:?} {right:?}");
                }
            }
        }
    }

    #[test]
    fn punctured_anchor_values() {
        assert_eq!(
            count_punctured(4, &[Vacuum, Vacuum]).unwrap(),
            BigUint::from(50u32)
        );
        assert_eq!(
            count_punctured(4, &[Vacuum, Tau]).unwrap(),
            BigUint::from(75u32)
        );
        assert_eq!(
            count_punctured(4, &[Tau, Vacuum]).unwrap(),
            BigUint::from(75u32)
        );
        assert_eq!(
            count_punctured(4, &[Tau, Tau]).unwrap(),
            BigUint::from(125u32)
        );
        let total: BigUint = [
            count_punctured(4, &[Vacuum, Vacuum]).unwrap(),
            count_punctured(4, &[Vacuum, Tau]).unwrap(),
            count_punctured(4, &[Tau, Vacuum]).unwrap(),
            count_punctured(4, &[Tau, Tau]).unwrap(),
        ]
        .into_iter()
        .sum();
        assert_eq!(total, BigUint::from(325u32));
    }

    #[test]
    fn genus_three_pair_counts_are_five_times_small_quotients() {
        let five = BigUint::from(5u32);
        let counts = [
            (Vacuum, Vacuum, 3u32),
            (Vacuum, Tau, 4),
            (Tau, Vacuum, 4),
            (Tau, Tau, 7),
        ];
        for (l, r, q) in counts {
            assert_eq!(
                count_punctured(3, &[l, r]).unwrap(),
                &five * BigUint::from(q),
                "{l:?} {r:?}"
            );
        }
    }

    #[test]
    fn vacuum_puncture_is_count_neutral() {
        for genus in 2..=5 {
            assert_eq!(
                count_punctured(genus, &[Vacuum]).unwrap(),
                transfer_count(genus).unwrap(),
                "genus {genus}"
            );
        }
    }

    #[test]
    fn too_many_punctures_rejected() {
        assert!(punctured_spine(3, &[Tau, Tau, Tau]).is_err());
        assert!(standard_spine(1).is_err());
    }

    #[test]
    fn enumeration_is_sorted() {
        for genus in 2..=4 {
            let ls = enumerate_labelings(&standard_spine(genus).unwrap());
            let mut sorted = ls.clone();
            sorted.sort();
            assert_eq!(ls, sorted);
        }
    }
}
