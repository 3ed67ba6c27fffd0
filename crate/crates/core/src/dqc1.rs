//! Gate circuits, one-clean-qubit probability formulas, sampled trace
//! estimates, and the two-ancilla absolute-trace reduction.
//!
//! Conventions: qubit q is bit q of the basis index (qubit 0 least
//! significant).  Gates apply in list order to the state, so the circuit
//! unitary is the reversed product of the gate matrices.  In the
//! one-clean-qubit setting qubit 0 is the clean qubit and the remaining
//! qubits are maximally mixed.

use crate::encoding::{self, encoded_word_trace_normalized};
use crate::error::{Error, Result};
use crate::mat::{self, CMat};
use crate::rep::{MCGWord, Representation};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

/// Which quadrature the clean qubit is prepared to read: `Real` prepares
/// (|0> + |1>)/sqrt2, `Imag` prepares (|0> - i|1>)/sqrt2 so that
/// p(0) = (1 + Im tr(U)/2^n)/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Real,
    Imag,
}

/// One gate: either a named gate or an explicit unitary on up to three
/// targets.  `matrix` is row-major with entries as [re, im] pairs, rows
/// and columns indexed with `targets[0]` as the most significant bit of
/// the local index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateCircuit {
    pub qubits: usize,
    pub gates: Vec<Gate>,
}

fn named_matrix(name: &str) -> Option<CMat> {
    let h = FRAC_1_SQRT_2;
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let m = |rows: &[&[Complex64]]| {
        let n = rows.len();
        let mut out = CMat::zeros((n, n));
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out[[r, c]] = v;
            }
        }
        out
    };
    let z = Complex64::new(0.0, 0.0);
    Some(match name {
        "h" => m(&[
            &[Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            &[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ]),
        "x" => m(&[&[z, one], &[one, z]]),
        "y" => m(&[&[z, -i], &[i, z]]),
        "z" => m(&[&[one, z], &[z, -one]]),
        "s" => m(&[&[one, z], &[z, i]]),
        "sdg" => m(&[&[one, z], &[z, -i]]),
        "t" => m(&[&[one, z], &[z, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]]),
        "tdg" => m(&[&[one, z], &[z, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]]),
        "cx" | "cnot" => m(&[
            &[one, z, z, z],
            &[z, one, z, z],
            &[z, z, z, one],
            &[z, z, one, z],
        ]),
        "cz" => m(&[
            &[one, z, z, z],
            &[z, one, z, z],
            &[z, z, one, z],
            &[z, z, z, -one],
        ]),
        "swap" => m(&[
            &[one, z, z, z],
            &[z, z, one, z],
            &[z, one, z, z],
            &[z, z, z, one],
        ]),
        _ => return None,
    })
}

fn dagger_name(name: &str) -> &'static str {
    match name {
        "h" => "h",
        "x" => "x",
        "y" => "y",
        "z" => "z",
        "s" => "sdg",
        "sdg" => "s",
        "t" => "tdg",
        "tdg" => "t",
        "cx" | "cnot" => "cx",
        "cz" => "cz",
        "swap" => "swap",
        _ => unreachable!("validated gate name"),
    }
}

impl Gate {
    fn resolve(&self, index: usize, qubits: usize) -> Result<CMat> {
        let bad = |message: String| Error::BadGate {
            gate: index,
            message,
        };
        let mut seen = std::collections::HashSet::new();
        for &t in &self.targets {
            if t >= qubits {
                return Err(bad(format!("target {t} outside {qubits} qubits")));
            }
            if !seen.insert(t) {
                return Err(bad(format!("duplicate target {t}")));
            }
        }
        let m = match (&self.name, &self.matrix) {
            (Some(_), Some(_)) => {
                return Err(bad("give a name or a matrix, not both".into()))
            }
            (None, None) => return Err(bad("gate needs a name or a matrix".into())),
            (Some(name), None) => named_matrix(name)
                .ok_or_else(|| bad(format!("unknown gate name {name:?}")))?,
            (None, Some(rows)) => {
                if self.targets.len() > 3 {
                    return Err(bad("explicit matrices support up to 3 targets".into()));
                }
                let dim = 1usize << self.targets.len();
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(bad(format!(
                        "matrix must be {dim}x{dim} for {} targets",
                        self.targets.len()
                    )));
                }
                let mut m = CMat::zeros((dim, dim));
                for (r, row) in rows.iter().enumerate() {
                    for (c, &[re, im]) in row.iter().enumerate() {
                        m[[r, c]] = Complex64::new(re, im);
                    }
                }
                m
            }
        };
        let dim = 1usize << self.targets.len();
        if m.nrows() != dim {
            return Err(bad(format!(
                "{} targets given for a {}x{} gate",
                self.targets.len(),
                m.nrows(),
                m.nrows()
            )));
        }
        if mat::unitarity_defect(&m) > 1e-8 {
            return Err(bad("matrix is not unitary".into()));
        }
        Ok(m)
    }

    fn dagger(&self) -> Gate {
        match (&self.name, &self.matrix) {
            (Some(name), _) => Gate {
                name: Some(dagger_name(name).to_string()),
                matrix: None,
                targets: self.targets.clone(),
            },
            (None, Some(rows)) => {
                let dim = rows.len();
                let mut out = vec![vec![[0.0f64; 2]; dim]; dim];
                for (r, row) in rows.iter().enumerate() {
                    for (c, &[re, im]) in row.iter().enumerate() {
                        out[c][r] = [re, -im];
                    }
                }
                Gate {
                    name: None,
                    matrix: Some(out),
                    targets: self.targets.clone(),
                }
            }
            (None, None) => self.clone(),
        }
    }
}

impl GateCircuit {
    pub fn from_json(text: &str) -> Result<GateCircuit> {
        let c: GateCircuit = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.qubits == 0 {
            return Err(Error::BadGate {
                gate: 0,
                message: "circuit needs at least one qubit".into(),
            });
        }
        for (i, g) in self.gates.iter().enumerate() {
            g.resolve(i, self.qubits)?;
        }
        Ok(())
    }

    fn resolved(&self) -> Result<Vec<(Vec<usize>, CMat)>> {
        self.gates
            .iter()
            .enumerate()
            .map(|(i, g)| Ok((g.targets.clone(), g.resolve(i, self.qubits)?)))
            .collect()
    }
}

/// Apply a gate in place.  `control`: only amplitudes whose control bit is
/// set are transformed (used for the test-circuit oracle).
fn apply_gate(
    state: &mut [Complex64],
    qubits: usize,
    targets: &[usize],
    m: &CMat,
    control: Option<usize>,
) {
    let t = targets.len();
    let dim = 1usize << t;
    let tmask: usize = targets.iter().map(|&q| 1usize << q).sum();
    // local index a: targets[0] is the most significant local bit
    let mut spread = vec![0usize; dim];
    for (a, s) in spread.iter_mut().enumerate() {
        for (j, &q) in targets.iter().enumerate() {
            if (a >> (t - 1 - j)) & 1 == 1 {
                *s |= 1usize << q;
            }
        }
    }
    let full = 1usize << qubits;
    let mut gathered = vec![Complex64::new(0.0, 0.0); dim];
    for base in 0..full {
        if base & tmask != 0 {
            continue;
        }
        if let Some(c) = control {
            if base & (1usize << c) == 0 {
                continue;
            }
        }
        for a in 0..dim {
            gathered[a] = state[base | spread[a]];
        }
        for a in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, &g) in gathered.iter().enumerate() {
                acc += m[[a, b]] * g;
            }
            state[base | spread[a]] = acc;
        }
    }
}

/// Run the circuit on one computational basis state.
fn run_on_basis(resolved: &[(Vec<usize>, CMat)], qubits: usize, basis: usize) -> Vec<Complex64> {
    let mut state = vec![Complex64::new(0.0, 0.0); 1usize << qubits];
    state[basis] = Complex64::new(1.0, 0.0);
    for (targets, m) in resolved {
        apply_gate(&mut state, qubits, targets, m, None);
    }
    state
}

/// Dense circuit unitary; guarded to 11 qubits.
pub fn circuit_unitary(c: &GateCircuit) -> Result<CMat> {
    if c.qubits > 11 {
        return Err(Error::CircuitTooLarge {
            qubits: c.qubits,
            limit: 11,
        });
    }
    let resolved = c.resolved()?;
    let dim = 1usize << c.qubits;
    let mut u = CMat::zeros((dim, dim));
    for b in 0..dim {
        let col = run_on_basis(&resolved, c.qubits, b);
        for (r, &v) in col.iter().enumerate() {
            u[[r, b]] = v;
        }
    }
    Ok(u)
}

/// tr(U) by summing diagonal amplitudes of basis runs; guarded to 20
/// qubits (cost grows as 4^n past the mid teens).
pub fn circuit_trace(c: &GateCircuit) -> Result<Complex64> {
    if c.qubits > 20 {
        return Err(Error::CircuitTooLarge {
            qubits: c.qubits,
            limit: 20,
        });
    }
    let resolved = c.resolved()?;
    let dim = 1usize << c.qubits;
    let parts: Vec<Complex64> = (0..dim)
        .into_par_iter()
        .map(|b| run_on_basis(&resolved, c.qubits, b)[b])
        .collect();
    Ok(parts.into_iter().sum())
}

/// Closed-form clean-qubit probability: (1 +/- Re or Im of tr U / 2^n)/2.
pub fn exact_p0(c: &GateCircuit, part: Part) -> Result<f64> {
    let tr = circuit_trace(c)?;
    let tau = tr / (1u64 << c.qubits) as f64;
    Ok(match part {
        Part::Real => (1.0 + tau.re) / 2.0,
        Part::Imag => (1.0 + tau.im) / 2.0,
    })
}

/// Oracle for [`exact_p0`]: simulate the actual test circuit (prepared
/// clean qubit, controlled circuit, Hadamard, measure) averaged over
/// basis states of the mixed register.  Pure statevector arithmetic, no
/// trace formula.
pub fn test_circuit_p0(c: &GateCircuit, part: Part) -> Result<f64> {
    if c.qubits > 12 {
        return Err(Error::CircuitTooLarge {
            qubits: c.qubits,
            limit: 12,
        });
    }
    let resolved = c.resolved()?;
    let n = c.qubits;
    let clean = n; // appended on top
    let h = FRAC_1_SQRT_2;
    let p0: f64 = (0..1usize << n)
        .into_par_iter()
        .map(|b| {
            let mut state = vec![Complex64::new(0.0, 0.0); 1usize << (n + 1)];
            state[b] = Complex64::new(h, 0.0);
            state[b | (1 << clean)] = match part {
                Part::Real => Complex64::new(h, 0.0),
                Part::Imag => Complex64::new(0.0, -h),
            };
            for (targets, m) in &resolved {
                apply_gate(&mut state, n + 1, targets, m, Some(clean));
            }
            for lo in 0..1usize << n {
                let (x, y) = (state[lo], state[lo | (1 << clean)]);
                state[lo] = (x + y) * h;
                state[lo | (1 << clean)] = (x - y) * h;
            }
            (0..1usize << n).map(|lo| state[lo].norm_sqr()).sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(p0 / (1u64 << n) as f64)
}

/// Probability of measuring qubit 0 in |0> when the circuit runs with
/// qubit 0 clean and the rest maximally mixed.
pub fn dqc1_measure_p0(c: &GateCircuit) -> Result<f64> {
    if c.qubits > 14 {
        return Err(Error::CircuitTooLarge {
            qubits: c.qubits,
            limit: 14,
        });
    }
    let resolved = c.resolved()?;
    let n = c.qubits;
    let mixed = 1usize << (n - 1);
    let p0: f64 = (0..mixed)
        .into_par_iter()
        .map(|b| {
            let state = run_on_basis(&resolved, n, b << 1);
            (0..1usize << n)
                .filter(|idx| idx & 1 == 0)
                .map(|idx| state[idx].norm_sqr())
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(p0 / mixed as f64)
}

/// Two-ancilla rewrite U' = CX(0 -> anc2) U CX(0 -> anc1) U^dag on n+2
/// qubits (ancillas appended).  Its trace is real, equals
/// 4 tr[P0 U P0 U^dag], and the clean-qubit probability of the original
/// circuit is recovered as 2 tr(U') / 2^(n+2).
pub fn absolute_trace_reduction(c: &GateCircuit) -> Result<GateCircuit> {
    c.validate()?;
    let n = c.qubits;
    let mut gates = Vec::with_capacity(2 * c.gates.len() + 2);
    for g in c.gates.iter().rev() {
        gates.push(g.dagger());
    }
    gates.push(Gate {
        name: Some("cx".into()),
        matrix: None,
        targets: vec![0, n],
    });
    gates.extend(c.gates.iter().cloned());
    gates.push(Gate {
        name: Some("cx".into()),
        matrix: None,
        targets: vec![0, n + 1],
    });
    Ok(GateCircuit {
        qubits: n + 2,
        gates,
    })
}

/// Serialization-friendly complex value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexPair {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexPair {
    fn from(z: Complex64) -> Self {
        ComplexPair { re: z.re, im: z.im }
    }
}

/// Outcome of Bernoulli sampling of both quadratures.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EstimationReport {
    pub samples: u64,
    pub seed: u64,
    pub p0_real_hat: f64,
    pub p0_imag_hat: f64,
    pub stderr_p0_real: f64,
    pub stderr_p0_imag: f64,
    pub normalized_trace_hat: ComplexPair,
    pub trace_hat: ComplexPair,
    pub stderr_trace_re: f64,
    pub stderr_trace_im: f64,
}

/// Draw `samples` Bernoulli outcomes per quadrature at the exact
/// probabilities and summarize the implied trace estimate for an n-qubit
/// circuit.  Deterministic in `seed`.
pub fn sample_estimate(
    p0_real: f64,
    p0_imag: f64,
    qubits: usize,
    samples: u64,
    seed: u64,
) -> EstimationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |p: f64| -> f64 {
        let p = p.clamp(0.0, 1.0);
        let mut count = 0u64;
        for _ in 0..samples {
            if rng.random_bool(p) {
                count += 1;
            }
        }
        count as f64 / samples as f64
    };
    let p_re = draw(p0_real);
    let p_im = draw(p0_imag);
    let stderr = |p: f64| (p * (1.0 - p) / samples as f64).sqrt();
    let scale = (qubits as f64).exp2();
    let normalized = ComplexPair {
        re: 2.0 * p_re - 1.0,
        im: 2.0 * p_im - 1.0,
    };
    EstimationReport {
        samples,
        seed,
        p0_real_hat: p_re,
        p0_imag_hat: p_im,
        stderr_p0_real: stderr(p_re),
        stderr_p0_imag: stderr(p_im),
        normalized_trace_hat: normalized,
        trace_hat: ComplexPair {
            re: scale * normalized.re,
            im: scale * normalized.im,
        },
        stderr_trace_re: 2.0 * scale * stderr(p_re),
        stderr_trace_im: 2.0 * scale * stderr(p_im),
    }
}

/// Full estimation report for an encoded mapping-torus word.
#[derive(Clone, Debug, Serialize)]
pub struct WrtEstimation {
    pub genus: usize,
    pub word: String,
    pub beta: u32,
    pub registers: usize,
    pub qubits: usize,
    pub dimension: usize,
    pub wrt_normalized: ComplexPair,
    pub encoded_trace_normalized: ComplexPair,
    pub p0_real_exact: f64,
    pub p0_imag_exact: f64,
    pub bias_bound: f64,
    pub sampled: EstimationReport,
}

/// End-to-end pipeline: exact encoded trace by rank segments, closed-form
/// clean-qubit probabilities, then seeded Bernoulli sampling.  The
/// register total beta * (3 genus - 3) is capped at 19 qubits, the range
/// where the implied circuit would still be simulable directly.
pub fn run_wrt_estimation(
    word: &MCGWord,
    beta: u32,
    samples: u64,
    seed: u64,
) -> Result<WrtEstimation> {
    word.validate()?;
    let registers = 3 * word.genus - 3;
    let qubits = registers * beta as usize;
    if qubits > 19 {
        return Err(Error::CircuitTooLarge { qubits, limit: 19 });
    }
    let rep = Representation::new(word.genus)?;
    let exact = rep.wrt(word)? / rep.dimension() as f64;
    let tau = encoded_word_trace_normalized(word, beta)?;
    let p0_real = ((1.0 + tau.re) / 2.0).clamp(0.0, 1.0);
    let p0_imag = ((1.0 + tau.im) / 2.0).clamp(0.0, 1.0);
    let sampled = sample_estimate(p0_real, p0_imag, qubits, samples, seed);
    Ok(WrtEstimation {
        genus: word.genus,
        word: word.to_string(),
        beta,
        registers,
        qubits,
        dimension: rep.dimension(),
        wrt_normalized: exact.into(),
        encoded_trace_normalized: tau.into(),
        p0_real_exact: p0_real,
        p0_imag_exact: p0_imag,
        bias_bound: encoding::bias_bound(word.genus, word.len(), beta),
        sampled,
    })
}
