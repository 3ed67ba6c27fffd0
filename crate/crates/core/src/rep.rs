//! Mapping-class-group generator matrices on the labeling space of the
//! closed genus-g spine, words in those generators, and the trace
//! invariant.
//!
//! Generator numbering for genus g (3g-1 in total):
//!
//! * `1..=g`: meridian cuts, one per handle; diagonal in the labeling
//!   basis with twist phases read off the handle's loop or upper edge.
//! * `g+1..=2g-1`: chain cuts, one per horizontal edge; diagonal with the
//!   horizontal edge's twist phase.
//! * `2g..=3g-1`: through-handle twists, one per handle.  These act inside
//!   classes of labelings that agree away from the handle: conjugate into
//!   the basis where the handle label is cut open, apply twist phases,
//!   conjugate back.
//!
//! The loop basis change uses the golden involution for a vacuum outer
//! label.  The tabulated S data is not unitary through this conjugation
//! and no diagonal phase dressing repairs it (the projector overlap is
//! invariant under diagonal dressings); the golden involution matches the
//! overlap the braid relation demands exactly, so the twists come out
//! unitary and the (meridian, through) pairs braid.  For an outer tau
//! label the block is one-dimensional and cancels in conjugation.

use crate::category::{
    fusion_allowed, golden_involution, s_symbol, twist_phase, AnyonLabel, Tau, Vacuum,
};
use crate::error::{Error, Result};
use crate::mat::{self, CMat};
use crate::spine::{enumerate_labelings, standard_spine};
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt;

pub const fn generator_count(genus: usize) -> usize {
    3 * genus - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorFamily {
    MeridianCut { handle: usize },
    ChainCut { position: usize },
    ThroughHandle { handle: usize },
}

pub fn family(genus: usize, id: usize) -> Result<GeneratorFamily> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let max = generator_count(genus);
    if id == 0 || id > max {
        return Err(Error::GeneratorOutOfRange {
            index: id,
            max,
            genus,
        });
    }
    Ok(if id <= genus {
        GeneratorFamily::MeridianCut { handle: id }
    } else if id < 2 * genus {
        GeneratorFamily::ChainCut {
            position: id - genus,
        }
    } else {
        GeneratorFamily::ThroughHandle {
            handle: id - (2 * genus - 1),
        }
    })
}

fn meridian_edge(genus: usize, handle: usize) -> usize {
    if handle == 1 {
        1
    } else if handle == genus {
        3 * genus - 3
    } else {
        3 * handle - 3
    }
}

/// Edges whose labels the generator can change (1-based edge indices).
pub fn acted_edges(genus: usize, id: usize) -> Result<Vec<usize>> {
    Ok(match family(genus, id)? {
        GeneratorFamily::MeridianCut { .. } | GeneratorFamily::ChainCut { .. } => Vec::new(),
        GeneratorFamily::ThroughHandle { handle } => {
            if handle == 1 {
                vec![1]
            } else if handle == genus {
                vec![3 * genus - 3]
            } else {
                vec![3 * handle - 3, 3 * handle - 2]
            }
        }
    })
}

/// Edges whose labels select the block applied to the acted edges; for the
/// diagonal families this is the single edge whose phase is read.
pub fn control_edges(genus: usize, id: usize) -> Result<Vec<usize>> {
    Ok(match family(genus, id)? {
        GeneratorFamily::MeridianCut { handle } => vec![meridian_edge(genus, handle)],
        GeneratorFamily::ChainCut { position } => vec![3 * position - 1],
        GeneratorFamily::ThroughHandle { handle } => {
            if handle == 1 {
                vec![2]
            } else if handle == genus {
                vec![3 * genus - 4]
            } else {
                vec![3 * handle - 4, 3 * handle - 1]
            }
        }
    })
}

/// Dual edge of a diagonal generator, None for through-handle twists.
pub fn diagonal_dual_edge(genus: usize, id: usize) -> Result<Option<usize>> {
    Ok(match family(genus, id)? {
        GeneratorFamily::MeridianCut { handle } => Some(meridian_edge(genus, handle)),
        GeneratorFamily::ChainCut { position } => Some(3 * position - 1),
        GeneratorFamily::ThroughHandle { .. } => None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    /// Generator index, 1..=3g-1.
    pub generator: usize,
    /// Nonzero signed power.
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCGWord {
    pub genus: usize,
    pub letters: Vec<Letter>,
}

impl MCGWord {
    pub fn identity(genus: usize) -> Self {
        MCGWord {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(Error::GenusTooSmall(self.genus));
        }
        for l in &self.letters {
            family(self.genus, l.generator)?;
            if l.exponent == 0 {
                return Err(Error::BadExponent("0".into()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "identity");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if l.exponent == 1 {
                write!(f, "T{}", l.generator)?;
            } else {
                write!(f, "T{}^{}", l.generator, l.exponent)?;
            }
        }
        Ok(())
    }
}

fn phase_power(z: Complex64, e: i64) -> Complex64 {
    // all our diagonal phases are unit modulus; keep them exactly so
    Complex64::from_polar(1.0, z.arg() * e as f64)
}

/// Loop basis-change block for the given outer label, over
/// `admissible_loop_labels(outer)`.
fn handle_move_block(outer: AnyonLabel) -> CMat {
    match outer {
        Vacuum => {
            let g = golden_involution();
            let mut b = CMat::zeros((2, 2));
            for r in 0..2 {
                for c in 0..2 {
                    b[[r, c]] = Complex64::new(g[r][c], 0.0);
                }
            }
            b
        }
        Tau => {
            let mut b = CMat::zeros((1, 1));
            b[[0, 0]] = s_symbol(Tau, Tau, Tau);
            b
        }
    }
}

/// The full representation at a fixed genus.  All generator matrices are
/// built eagerly in `new`, so a constructed value is immutable and can be
/// shared across threads freely.
pub struct Representation {
    genus: usize,
    labelings: Vec<Vec<AnyonLabel>>,
    generators: Vec<CMat>,
}

impl Representation {
    pub fn new(genus: usize) -> Result<Self> {
        let graph = standard_spine(genus)?;
        let labelings = enumerate_labelings(&graph);
        let mut rep = Representation {
            genus,
            labelings,
            generators: Vec::new(),
        };
        for id in 1..=generator_count(genus) {
            let m = rep.build_generator(id, 1)?;
            rep.generators.push(m);
        }
        Ok(rep)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dimension(&self) -> usize {
        self.labelings.len()
    }

    pub fn labelings(&self) -> &[Vec<AnyonLabel>] {
        &self.labelings
    }

    pub fn generator(&self, id: usize) -> Result<&CMat> {
        family(self.genus, id)?;
        Ok(&self.generators[id - 1])
    }

    /// Signed power of a generator, rebuilt from structure so negative
    /// exponents are exact inverses.
    pub fn generator_power(&self, id: usize, exponent: i64) -> Result<CMat> {
        family(self.genus, id)?;
        if exponent == 1 {
            return Ok(self.generators[id - 1].clone());
        }
        self.build_generator(id, exponent)
    }

    fn build_generator(&self, id: usize, exponent: i64) -> Result<CMat> {
        let genus = self.genus;
        let n = self.labelings.len();
        match family(genus, id)? {
            GeneratorFamily::MeridianCut { handle } => {
                Ok(self.diagonal_from_edge(meridian_edge(genus, handle), exponent))
            }
            GeneratorFamily::ChainCut { position } => {
                Ok(self.diagonal_from_edge(3 * position - 1, exponent))
            }
            GeneratorFamily::ThroughHandle { handle } => {
                let mut m = CMat::zeros((n, n));
                if handle == 1 || handle == genus {
                    let (acted, control) = if handle == 1 {
                        (1usize, 2usize)
                    } else {
                        (3 * genus - 3, 3 * genus - 4)
                    };
                    for class in self.classes_fixing(&[acted]) {
                        let outer = self.labelings[class[0]][control - 1];
                        let block = end_twist_block(outer, exponent);
                        scatter(&mut m, &class, &block);
                    }
                } else {
                    let (eu, el) = (3 * handle - 3, 3 * handle - 2);
                    let (cl, cr) = (3 * handle - 4, 3 * handle - 1);
                    for class in self.classes_fixing(&[eu, el]) {
                        let a = self.labelings[class[0]][cl - 1];
                        let b = self.labelings[class[0]][cr - 1];
                        let members: Vec<(AnyonLabel, AnyonLabel)> = class
                            .iter()
                            .map(|&x| (self.labelings[x][eu - 1], self.labelings[x][el - 1]))
                            .collect();
                        let block = interior_twist_block(a, b, &members, exponent);
                        scatter(&mut m, &class, &block);
                    }
                }
                Ok(m)
            }
        }
    }

    fn diagonal_from_edge(&self, edge: usize, exponent: i64) -> CMat {
        let n = self.labelings.len();
        let mut m = CMat::zeros((n, n));
        for (x, lab) in self.labelings.iter().enumerate() {
            m[[x, x]] = phase_power(twist_phase(lab[edge - 1]), exponent);
        }
        m
    }

    /// Partition labeling indices into classes agreeing outside `acted`.
    /// Members inside each class appear in increasing lexicographic order.
    pub(crate) fn classes_fixing(&self, acted: &[usize]) -> Vec<Vec<usize>> {
        let mut classes: HashMap<Vec<AnyonLabel>, Vec<usize>> = HashMap::new();
        let mut order: Vec<Vec<AnyonLabel>> = Vec::new();
        for (x, lab) in self.labelings.iter().enumerate() {
            let mut key = lab.clone();
            for &e in acted {
                key[e - 1] = Vacuum;
            }
            match classes.get_mut(&key) {
                Some(v) => v.push(x),
                None => {
                    order.push(key.clone());
                    classes.insert(key, vec![x]);
                }
            }
        }
        order.into_iter().map(|k| classes.remove(&k).unwrap()).collect()
    }

    pub fn evaluate_word(&self, word: &MCGWord) -> Result<CMat> {
        word.validate()?;
        if word.genus != self.genus {
            return Err(Error::WordSyntax(format!(
                "word is at genus {}, representation at genus {}",
                word.genus, self.genus
            )));
        }
        let mut acc = mat::identity(self.dimension());
        for l in &word.letters {
            let g = self.generator_power(l.generator, l.exponent)?;
            acc = acc.dot(&g);
        }
        Ok(acc)
    }

    /// The trace invariant of the mapping torus of the word.
    pub fn wrt(&self, word: &MCGWord) -> Result<Complex64> {
        Ok(self.evaluate_word(word)?.diag().sum())
    }
}

fn scatter(m: &mut CMat, members: &[usize], block: &CMat) {
    assert_eq!(block.nrows(), members.len());
    for (r, &gr) in members.iter().enumerate() {
        for (c, &gc) in members.iter().enumerate() {
            m[[gr, gc]] = block[[r, c]];
        }
    }
}

/// End-handle twist block over the loop labels admissible against `outer`:
/// conjugate by the loop move, twist, conjugate back.
fn end_twist_block(outer: AnyonLabel, exponent: i64) -> CMat {
    let b = handle_move_block(outer);
    let labels = crate::category::admissible_loop_labels(outer);
    let mut delta = CMat::zeros((labels.len(), labels.len()));
    for (j, &x) in labels.iter().enumerate() {
        delta[[j, j]] = phase_power(twist_phase(x), exponent);
    }
    let binv = mat::inverse(&b).expect("loop move block invertible");
    binv.dot(&delta).dot(&b)
}

/// Interior twist block for a handle flanked by horizontal labels (a, b),
/// over the class members' (upper, lower) pairs: remove the lower edge by
/// an F-move (the upper label becomes a loop), cut the loop open, twist,
/// and undo both conjugations.
fn interior_twist_block(
    a: AnyonLabel,
    b: AnyonLabel,
    members: &[(AnyonLabel, AnyonLabel)],
    exponent: i64,
) -> CMat {
    let inter: Vec<(AnyonLabel, AnyonLabel)> = {
        let mut v = Vec::new();
        for u in AnyonLabel::ALL {
            for n in AnyonLabel::ALL {
                if fusion_allowed(u, u, n) && fusion_allowed(a, n, b) {
                    v.push((u, n));
                }
            }
        }
        v
    };
    let dim = members.len();
    assert_eq!(
        inter.len(),
        dim,
        "intermediate basis mismatch for flank ({a:?},{b:?})"
    );
    let mut b1 = CMat::zeros((dim, dim));
    for (r, &(u2, n)) in inter.iter().enumerate() {
        for (c, &(u1, l)) in members.iter().enumerate() {
            if u2 == u1 {
                b1[[r, c]] = Complex64::new(
                    crate::category::f_symbol(a, u1, l, u1, b, n),
                    0.0,
                );
            }
        }
    }
    let mut b2 = CMat::zeros((dim, dim));
    for (r, &(u2, n2)) in inter.iter().enumerate() {
        for (c, &(u1, n1)) in inter.iter().enumerate() {
            if n2 == n1 {
                let s = handle_move_block(n1);
                let labels = crate::category::admissible_loop_labels(n1);
                let ri = labels.iter().position(|&x| x == u1);
                let ci = labels.iter().position(|&x| x == u2);
                if let (Some(ri), Some(ci)) = (ri, ci) {
                    b2[[r, c]] = s[[ri, ci]];
                }
            }
        }
    }
    let mut delta = CMat::zeros((dim, dim));
    for (j, &(u, _)) in inter.iter().enumerate() {
        delta[[j, j]] = phase_power(twist_phase(u), exponent);
    }
    let b1i = mat::inverse(&b1).expect("interior F block invertible");
    let b2i = mat::inverse(&b2).expect("interior loop move block invertible");
    b1i.dot(&b2i).dot(&delta).dot(&b2).dot(&b1)
}

/// Convenience: trace invariant and dimension for a word, building the
/// representation on the fly.
pub fn wrt_invariant(word: &MCGWord) -> Result<(Complex64, usize)> {
    let rep = Representation::new(word.genus)?;
    Ok((rep.wrt(word)?, rep.dimension()))
}
