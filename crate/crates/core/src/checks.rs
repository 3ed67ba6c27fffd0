//! Self-contained consistency checks reachable from `fibwrt check`.
//! Each check recomputes an identity or anchor value from scratch and
//! reports the worst residual it saw.

use crate::category::{
    f_block, f_symbol, s_symbol, twist_phase, AnyonLabel, Tau, Vacuum, PHI, TOTAL_DIM,
};
use crate::dqc1::{self, Gate, GateCircuit};
use crate::encoding;
use crate::mat;
use crate::qudits;
use crate::rep::{generator_count, Letter, MCGWord, Representation};
use crate::spine;
use num_bigint::BigUint;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn outcome(name: &str, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn labels_of(bits: u32, n: usize) -> Vec<AnyonLabel> {
    (0..n)
        .map(|i| AnyonLabel::from_bit(((bits >> i) & 1) as u8).unwrap())
        .collect()
}

fn check_pentagon() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for bits in 0..512u32 {
        let v = labels_of(bits, 9);
        let (a, b, c, d, e) = (v[0], v[1], v[2], v[3], v[4]);
        let (x, y, w, u) = (v[5], v[6], v[7], v[8]);
        let lhs: f64 = AnyonLabel::ALL
            .into_iter()
            .map(|z| {
                f_symbol(a, b, x, c, y, z)
                    * f_symbol(a, z, y, d, e, w)
                    * f_symbol(b, c, z, d, w, u)
            })
            .sum();
        let rhs = f_symbol(x, c, y, d, e, u) * f_symbol(a, b, x, u, e, w);
        worst = worst.max((lhs - rhs).abs());
    }
    outcome(
        "pentagon_identity",
        worst < 1e-10,
        format!("worst residual {worst:.2e} over 512 label tuples"),
    )
}

fn check_f_involution() -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for bits in 0..16u32 {
        let e = labels_of(bits, 4);
        let block = f_block(e[0], e[1], e[2], e[3]);
        if block.nrows() == 0 {
            continue;
        }
        let defect = mat::frobenius(&(block.dot(&block) - mat::identity(block.nrows())));
        worst = worst.max(defect);
    }
    outcome(
        "f_move_involution",
        worst < 1e-12,
        format!("worst ||F^2 - I|| = {worst:.2e}"),
    )
}

fn check_s_anchors() -> CheckOutcome {
    let d = TOTAL_DIM;
    let theta = Complex64::from_polar(1.0, 3.0 * PI / 5.0);
    let errs = [
        (d * s_symbol(Vacuum, Vacuum, Vacuum) - 1.0).norm(),
        (d * s_symbol(Vacuum, Vacuum, Tau) - PHI).norm(),
        (d * s_symbol(Vacuum, Tau, Tau) - theta).norm(),
        (s_symbol(Tau, Tau, Tau).norm() - PHI.sqrt()).abs(),
    ];
    let worst = errs.into_iter().fold(0.0f64, f64::max);
    outcome(
        "s_matrix_anchors",
        worst < 1e-12,
        format!("worst anchor error {worst:.2e}"),
    )
}

fn check_twist() -> CheckOutcome {
    let t = twist_phase(Tau);
    let err = (t - Complex64::new(-0.30901699437494745, 0.9510565162951535)).norm();
    outcome(
        "twist_phase",
        err < 1e-12 && twist_phase(Vacuum) == Complex64::new(1.0, 0.0),
        format!("tau twist error {err:.2e}"),
    )
}

fn check_counting() -> CheckOutcome {
    let want: [u64; 6] = [5, 15, 50, 175, 625, 2250];
    let mut ok = true;
    let mut detail = String::new();
    for (g, w) in (2..=7).zip(want) {
        let fast = spine::transfer_count(g).unwrap();
        ok &= fast == BigUint::from(w);
        if g <= 5 {
            let slow =
                spine::count_labelings_enumerated(&spine::standard_spine(g).unwrap());
            ok &= fast == slow;
        }
        detail.push_str(&format!("g{g}={fast} "));
    }
    outcome("labeling_counts", ok, detail.trim_end().to_string())
}

fn check_punctured() -> CheckOutcome {
    let pairs4 = [
        (Vacuum, Vacuum, 50u32),
        (Vacuum, Tau, 75),
        (Tau, Vacuum, 75),
        (Tau, Tau, 125),
    ];
    let mut ok = true;
    let mut total = BigUint::from(0u32);
    for (l, r, w) in pairs4 {
        let c = spine::count_punctured(4, &[l, r]).unwrap();
        ok &= c == BigUint::from(w);
        total += c;
    }
    ok &= total == BigUint::from(325u32);
    let q3: Vec<u32> = [(Vacuum, Vacuum), (Vacuum, Tau), (Tau, Tau)]
        .into_iter()
        .map(|(l, r)| {
            let c = spine::count_punctured(3, &[l, r]).unwrap();
            (c / BigUint::from(5u32)).try_into().unwrap_or(0u32)
        })
        .collect();
    ok &= q3 == vec![3, 4, 7];
    outcome(
        "punctured_counts",
        ok,
        format!("genus-4 pair total {total}, genus-3 quotients {q3:?}"),
    )
}

fn check_relations() -> CheckOutcome {
    let mut worst_unitary: f64 = 0.0;
    let mut worst_braid: f64 = 0.0;
    let mut worst_comm: f64 = 0.0;
    for genus in [2usize, 3] {
        let rep = Representation::new(genus).unwrap();
        for id in 1..=generator_count(genus) {
            worst_unitary =
                worst_unitary.max(mat::unitarity_defect(rep.generator(id).unwrap()));
        }
        for handle in 1..=genus {
            let a = rep.generator(handle).unwrap();
            let b = rep.generator(2 * genus - 1 + handle).unwrap();
            let lhs = a.dot(b).dot(a);
            let rhs = b.dot(a).dot(b);
            worst_braid =
                worst_braid.max(mat::frobenius(&(&lhs - &rhs)) / mat::frobenius(&lhs));
        }
        let braid: Vec<(usize, usize)> =
            (1..=genus).map(|k| (k, 2 * genus - 1 + k)).collect();
        for i in 1..=generator_count(genus) {
            for j in (i + 1)..=generator_count(genus) {
                if braid.contains(&(i, j)) {
                    continue;
                }
                let a = rep.generator(i).unwrap();
                let b = rep.generator(j).unwrap();
                worst_comm = worst_comm.max(mat::frobenius(&(a.dot(b) - b.dot(a))));
            }
        }
    }
    outcome(
        "generator_relations",
        worst_unitary < 1e-10 && worst_braid < 1e-8 && worst_comm < 1e-10,
        format!(
            "unitarity {worst_unitary:.2e}, braid {worst_braid:.2e}, commutators {worst_comm:.2e}"
        ),
    )
}

fn check_trace_anchors() -> CheckOutcome {
    let rep = Representation::new(2).unwrap();
    let theta = Complex64::from_polar(1.0, 3.0 * PI / 5.0);
    let word = |g: usize| MCGWord {
        genus: 2,
        letters: vec![Letter {
            generator: g,
            exponent: 1,
        }],
    };
    let errs = [
        (rep.wrt(&MCGWord::identity(2)).unwrap() - Complex64::new(5.0, 0.0)).norm(),
        (rep.wrt(&word(3)).unwrap() - (Complex64::new(4.0, 0.0) + theta)).norm(),
        (rep.wrt(&word(1)).unwrap() - (Complex64::new(2.0, 0.0) + 3.0 * theta)).norm(),
    ];
    let worst = errs.into_iter().fold(0.0f64, f64::max);
    outcome(
        "trace_anchors",
        worst < 1e-12,
        format!("worst anchor error {worst:.2e}"),
    )
}

fn check_encoding() -> CheckOutcome {
    let t = encoding::build_thresholds(2, 4).unwrap();
    let thresholds_ok = t.threshold(1, (None, None)) == Some(6)
        && t.threshold(2, (None, Some(Tau))) == Some(11)
        && t.threshold(3, (Some(Vacuum), Some(Vacuum))) == Some(8)
        && t.threshold(3, (Some(Tau), Some(Tau))) == Some(0);
    let labelings =
        spine::enumerate_labelings(&spine::standard_spine(2).unwrap());
    let sizes: Vec<u64> = labelings
        .iter()
        .map(|l| u64::try_from(t.preimage_size(l).unwrap()).unwrap())
        .collect();
    let sizes_ok = sizes == vec![768, 768, 880, 880, 800];
    outcome(
        "encoding_thresholds",
        thresholds_ok && sizes_ok,
        format!("beta=4 preimage sizes {sizes:?}"),
    )
}

fn check_encoded_trace() -> CheckOutcome {
    let w = MCGWord {
        genus: 2,
        letters: vec![Letter {
            generator: 3,
            exponent: 1,
        }],
    };
    let theta = Complex64::from_polar(1.0, 3.0 * PI / 5.0);
    let want = (Complex64::new(4.0, 0.0) + theta) / 5.0;
    let got = encoding::encoded_word_trace_normalized(&w, 8).unwrap();
    let err = (got - want).norm();
    outcome(
        "encoded_trace_convergence",
        err < 0.05,
        format!("beta=8 distance to invariant {err:.4}"),
    )
}

fn check_reduction() -> CheckOutcome {
    let test_of_x = GateCircuit {
        qubits: 2,
        gates: vec![
            Gate {
                name: Some("h".into()),
                matrix: None,
                targets: vec![0],
            },
            Gate {
                name: Some("cx".into()),
                matrix: None,
                targets: vec![0, 1],
            },
            Gate {
                name: Some("h".into()),
                matrix: None,
                targets: vec![0],
            },
        ],
    };
    let direct = dqc1::dqc1_measure_p0(&test_of_x).unwrap();
    let reduced = dqc1::absolute_trace_reduction(&test_of_x).unwrap();
    let tr = dqc1::circuit_trace(&reduced).unwrap();
    let via = 2.0 * tr.re / 16.0;
    let ok = (direct - 0.5).abs() < 1e-9 && (via - 0.5).abs() < 1e-9 && tr.im.abs() < 1e-10;
    outcome(
        "absolute_trace_reduction",
        ok,
        format!("test circuit of X: direct {direct:.6}, reduced {via:.6}"),
    )
}

fn check_planner() -> CheckOutcome {
    let p = qudits::plan(5, 2, 10, 0.01).unwrap();
    let ok = p.d == 14
        && p.c == BigUint::from(3276u32)
        && (p.delta() - 1.0 / 4096.0).abs() < 1e-15
        && p.trace_discrepancy(Complex64::new(0.0, 0.0)) <= p.discrepancy_bound();
    outcome(
        "qudit_planner",
        ok,
        format!("d={}, c={}, delta={:.3e}", p.d, p.c, p.delta()),
    )
}

pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        check_pentagon(),
        check_f_involution(),
        check_s_anchors(),
        check_twist(),
        check_counting(),
        check_punctured(),
        check_relations(),
        check_trace_anchors(),
        check_encoding(),
        check_encoded_trace(),
        check_reduction(),
        check_planner(),
    ]
}

pub fn all_pass(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.pass)
}
