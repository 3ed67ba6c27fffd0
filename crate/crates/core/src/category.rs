//! The two-label fusion system: admissibility, F-symbols, the modular S
//! data, and twist phases.
//!
//! Labels are `Vacuum` (0) and `Tau` (1).  A trivalent vertex is admissible
//! unless exactly two of its three incident labels are `Vacuum`; a loop edge
//! counts twice at its vertex and an external puncture edge counts once.

use crate::mat::CMat;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Golden ratio.
pub const PHI: f64 = 1.618033988749895;
/// Total quantum dimension, sqrt(1 + PHI^2).
pub const TOTAL_DIM: f64 = 1.9021130325903073;

/// Shared numeric tolerances.  Exact identities (unitarity, involutions,
/// commutation) are held to `IDENTITY`; tabulated constants to `TABULATED`;
/// the braid relation, which accumulates rounding over triple products, to
/// `BRAID`.
pub mod tol {
    pub const IDENTITY: f64 = 1e-10;
    pub const TABULATED: f64 = 1e-12;
    pub const BRAID: f64 = 1e-8;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnyonLabel {
    Vacuum = 0,
    Tau = 1,
}

pub use AnyonLabel::{Tau, Vacuum};

impl AnyonLabel {
    pub fn from_bit(b: u8) -> Option<AnyonLabel> {
        match b {
            0 => Some(Vacuum),
            1 => Some(Tau),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub const ALL: [AnyonLabel; 2] = [Vacuum, Tau];
}

/// Vertex admissibility: true unless exactly two of the three labels vanish.
pub fn fusion_allowed(a: AnyonLabel, b: AnyonLabel, c: AnyonLabel) -> bool {
    let zeros = [a, b, c].iter().filter(|&&l| l == Vacuum).count();
    zeros != 2
}

/// Topological twist phase of a label: 1 for the vacuum, e^{i 3 pi / 5}
/// for tau.
pub fn twist_phase(l: AnyonLabel) -> Complex64 {
    match l {
        Vacuum => Complex64::new(1.0, 0.0),
        Tau => Complex64::from_polar(1.0, 3.0 * PI / 5.0),
    }
}

/// The 2x2 golden involution; numerically the all-tau F-block.  Real
/// symmetric with square the identity, used as the loop basis-change block
/// when the outer label is vacuum.
pub fn golden_involution() -> [[f64; 2]; 2] {
    let s = 1.0 / PHI.sqrt();
    [[1.0 / PHI, s], [s, -1.0 / PHI]]
}

/// F-symbol in the convention: left pair of vertices (i,j,m), (m,k,l);
/// right pair (j,k,n), (i,n,l).  Zero unless all four vertices are
/// admissible; the golden block when all four external labels are tau;
/// otherwise the unique allowed value 1.
pub fn f_symbol(
    i: AnyonLabel,
    j: AnyonLabel,
    m: AnyonLabel,
    k: AnyonLabel,
    l: AnyonLabel,
    n: AnyonLabel,
) -> f64 {
    if !(fusion_allowed(i, j, m)
        && fusion_allowed(m, k, l)
        && fusion_allowed(j, k, n)
        && fusion_allowed(i, n, l))
    {
        return 0.0;
    }
    if i == Tau && j == Tau && k == Tau && l == Tau {
        golden_involution()[m.index()][n.index()]
    } else {
        1.0
    }
}

/// Admissible internal labels m for the F-move with externals (i,j,k,l),
/// left-association side.
pub fn f_left_labels(i: AnyonLabel, j: AnyonLabel, k: AnyonLabel, l: AnyonLabel) -> Vec<AnyonLabel> {
    AnyonLabel::ALL
        .into_iter()
        .filter(|&m| fusion_allowed(i, j, m) && fusion_allowed(m, k, l))
        .collect()
}

/// Right-association side of the same move.
pub fn f_right_labels(
    i: AnyonLabel,
    j: AnyonLabel,
    k: AnyonLabel,
    l: AnyonLabel,
) -> Vec<AnyonLabel> {
    AnyonLabel::ALL
        .into_iter()
        .filter(|&n| fusion_allowed(j, k, n) && fusion_allowed(i, n, l))
        .collect()
}

/// Dense F-block over the admissible (m, n) lists.
pub fn f_block(i: AnyonLabel, j: AnyonLabel, k: AnyonLabel, l: AnyonLabel) -> CMat {
    let ms = f_left_labels(i, j, k, l);
    let ns = f_right_labels(i, j, k, l);
    let mut block = CMat::zeros((ms.len(), ns.len()));
    for (r, &m) in ms.iter().enumerate() {
        for (c, &n) in ns.iter().enumerate() {
            block[[r, c]] = Complex64::new(f_symbol(i, j, m, k, l, n), 0.0);
        }
    }
    block
}

/// Tabulated S-symbol S^{outer}_{j k}: the loop-label change-of-basis data
/// with external label `outer`.  Stored exactly as tabulated:
///
///   D S^0 = [[1, phi], [phi, 1 + phi e^{i 4 pi/5}]],
///   D S^1_{11} = sqrt(phi) (1 - e^{i 4 pi/5}),
///
/// zero whenever a loop label is inadmissible against `outer`.  Note the
/// tabulated matrix is not unitary; the representation's loop moves use
/// [`golden_involution`] instead (the two agree up to the twist-sector
/// normalization that cancels in conjugation).
pub fn s_symbol(outer: AnyonLabel, j: AnyonLabel, k: AnyonLabel) -> Complex64 {
    if !(fusion_allowed(j, j, outer) && fusion_allowed(k, k, outer)) {
        return Complex64::new(0.0, 0.0);
    }
    let e45 = Complex64::from_polar(1.0, 4.0 * PI / 5.0);
    let d = Complex64::new(TOTAL_DIM, 0.0);
    match outer {
        Vacuum => {
            let num = match (j, k) {
                (Vacuum, Vacuum) => Complex64::new(1.0, 0.0),
                (Vacuum, Tau) | (Tau, Vacuum) => Complex64::new(PHI, 0.0),
                (Tau, Tau) => Complex64::new(1.0, 0.0) + PHI * e45,
            };
            num / d
        }
        Tau => {
            debug_assert!(j == Tau && k == Tau);
            PHI.sqrt() * (Complex64::new(1.0, 0.0) - e45) / d
        }
    }
}

/// Loop labels x with (x, x, outer) admissible, in label order.
pub fn admissible_loop_labels(outer: AnyonLabel) -> Vec<AnyonLabel> {
    AnyonLabel::ALL
        .into_iter()
        .filter(|&x| fusion_allowed(x, x, outer))
        .collect()
}

/// Dense tabulated S-block over [`admissible_loop_labels`].
pub fn s_block(outer: AnyonLabel) -> CMat {
    let labels = admissible_loop_labels(outer);
    let mut block = CMat::zeros((labels.len(), labels.len()));
    for (r, &j) in labels.iter().enumerate() {
        for (c, &k) in labels.iter().enumerate() {
            block[[r, c]] = s_symbol(outer, j, k);
        }
    }
    block
}
