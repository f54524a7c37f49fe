//! Dense state-vector simulation used as the verification oracle.
//!
//! Basis index `sum_j d_j q^(n-1-j)`: qudit 0 is the most significant digit.
//! Gates are applied straight from their defining formulas; nothing here
//! consults the tableau calculus except where a prediction is explicitly
//! compared against the simulation.

use std::fmt;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dense::zeta_powers;
use crate::gates::{Circuit, Gate, GateError};
use crate::gf::{Elem, Field};
use crate::linalg;
use crate::pauli::{PauliError, PauliLabel, PauliOperator, StabilizerMatrix};

/// Largest state the simulator will allocate.
pub const MAX_AMPLITUDES: usize = 1 << 21;
pub const EIGEN_TOL: f64 = 1e-8;
pub const NORM_TOL: f64 = 1e-9;
/// Total amplitudes kept around for the pairwise orthogonality check.
const ORTHO_BUDGET: usize = 1 << 23;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("state of {q}^{n} amplitudes exceeds the limit of {MAX_AMPLITUDES}")]
    TooLarge { q: u32, n: usize },
    #[error("expected {expected} digits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("digit {digit} at position {} is not an element of GF({q})", .position + 1)]
    BadDigit { digit: u32, position: usize, q: u32 },
    #[error("state and operator belong to different fields or widths")]
    Mismatch,
    #[error("not an eigenstate (residual {residual:.3e})")]
    NotEigenstate { residual: f64 },
    #[error("eigenvalue phases cannot all be removed by a Pauli X offset on the pivots")]
    Unnormalizable,
    #[error("knill-laflamme check limited to n <= 5, K <= 4, t <= 1 (got n={n}, K={k}, t={t})")]
    KlTooLarge { n: usize, k: usize, t: usize },
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Sum with a fixed pairwise reduction tree.
fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 32 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    field: Field,
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn dim_for(field: &Field, n: usize) -> Result<usize, SimError> {
        (field.q() as usize)
            .checked_pow(n as u32)
            .filter(|&d| d <= MAX_AMPLITUDES)
            .ok_or(SimError::TooLarge { q: field.q(), n })
    }

    /// The basis state `|d_0 d_1 ... d_{n-1}>`.
    pub fn basis(field: &Field, digits: &[u32]) -> Result<Self, SimError> {
        let n = digits.len();
        let dim = Self::dim_for(field, n)?;
        let q = field.q();
        let mut idx = 0usize;
        for (position, &d) in digits.iter().enumerate() {
            if d >= q {
                return Err(SimError::BadDigit { digit: d, position, q });
            }
            idx = idx * q as usize + d as usize;
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector { field: field.clone(), n, amps })
    }

    pub fn zero(field: &Field, n: usize) -> Result<Self, SimError> {
        Self::basis(field, &vec![0; n])
    }

    pub fn from_amplitudes(field: &Field, n: usize, amps: Vec<Complex64>) -> Result<Self, SimError> {
        let dim = Self::dim_for(field, n)?;
        if amps.len() != dim {
            return Err(SimError::LengthMismatch { expected: dim, got: amps.len() });
        }
        Ok(StateVector { field: field.clone(), n, amps })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn digits_of(&self, mut idx: usize) -> Vec<u32> {
        let q = self.field.q() as usize;
        let mut d = vec![0; self.n];
        for j in (0..self.n).rev() {
            d[j] = (idx % q) as u32;
            idx /= q;
        }
        d
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let prods: Vec<Complex64> = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).collect();
        pairwise_sum(&prods)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn stride(&self, qudit: usize) -> usize {
        (self.field.q() as usize).pow((self.n - 1 - qudit) as u32)
    }

    fn digit(&self, idx: usize, qudit: usize) -> usize {
        (idx / self.stride(qudit)) % self.field.q() as usize
    }

    /// Moves the amplitude of every basis state to `map(index)`.
    fn permute(&mut self, map: impl Fn(usize) -> usize) {
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            out[map(i)] = a;
        }
        self.amps = out;
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        gate.validate(&self.field, self.n)?;
        let f = self.field.clone();
        let q = f.q() as usize;
        let zeta = zeta_powers(&f);
        let nmod = f.phase_modulus();
        let u = f.omega_units();
        let el = |d: usize| Elem::new_unchecked(d as u32);
        match *gate {
            Gate::PauliX { qudit, alpha } => {
                let s = self.stride(qudit);
                self.permute(|i| {
                    let d = (i / s) % q;
                    i - d * s + f.add(el(d), alpha).repr() as usize * s
                });
            }
            Gate::Mult { qudit, gamma } => {
                let s = self.stride(qudit);
                self.permute(|i| {
                    let d = (i / s) % q;
                    i - d * s + f.mul(el(d), gamma).repr() as usize * s
                });
            }
            Gate::PauliZ { qudit, beta } => {
                let s = self.stride(qudit);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    let d = (i / s) % q;
                    *a *= zeta[((u * f.trace(f.mul(beta, el(d)))) % nmod) as usize];
                }
            }
            Gate::Phase { qudit, gamma } => {
                if gamma.is_zero() {
                    return Ok(());
                }
                let table: Vec<Complex64> = (0..q)
                    .map(|y| {
                        if f.p() == 2 {
                            let g0 = f.sqrt_char2(gamma).expect("char 2");
                            let w = f.wgt(f.mul(g0, el(y))).expect("char 2");
                            zeta[((4 - w % 4) % 4) as usize]
                        } else {
                            let half = f.half().expect("odd characteristic");
                            let t = f.trace(f.mul(f.mul(half, gamma), f.mul(el(y), el(y))));
                            zeta[((f.p() - t) % f.p()) as usize]
                        }
                    })
                    .collect();
                let s = self.stride(qudit);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    *a *= table[(i / s) % q];
                }
            }
            Gate::Fourier { qudit } => {
                let scale = 1.0 / (q as f64).sqrt();
                let kernel: Vec<Complex64> = (0..q * q)
                    .map(|zx| zeta[((u * f.trace(f.mul(el(zx / q), el(zx % q)))) % nmod) as usize] * scale)
                    .collect();
                let s = self.stride(qudit);
                let mut fiber = vec![Complex64::new(0.0, 0.0); q];
                for base in 0..self.amps.len() {
                    if (base / s) % q != 0 {
                        continue;
                    }
                    for (x, v) in fiber.iter_mut().enumerate() {
                        *v = self.amps[base + x * s];
                    }
                    for z in 0..q {
                        let row = &kernel[z * q..(z + 1) * q];
                        self.amps[base + z * s] = row.iter().zip(&fiber).map(|(k, v)| k * v).sum();
                    }
                }
            }
            Gate::Add { control, target } | Gate::AddInv { control, target } => {
                let inv = matches!(gate, Gate::AddInv { .. });
                let (sc, st) = (self.stride(control), self.stride(target));
                self.permute(|i| {
                    let (x, y) = ((i / sc) % q, (i / st) % q);
                    let t = if inv { f.sub(el(y), el(x)) } else { f.add(el(y), el(x)) };
                    i - y * st + t.repr() as usize * st
                });
            }
            Gate::Horner { a, x, target } => {
                let (sa, sx, st) = (self.stride(a), self.stride(x), self.stride(target));
                self.permute(|i| {
                    let (va, vx, vb) = ((i / sa) % q, (i / sx) % q, (i / st) % q);
                    let t = f.add(f.mul(el(va), el(vx)), el(vb));
                    i - vb * st + t.repr() as usize * st
                });
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.field != self.field || circuit.n != self.n {
            return Err(SimError::Mismatch);
        }
        for g in &circuit.gates {
            self.apply(g)?;
        }
        Ok(())
    }

    /// `zeta^phase X_x Z_z |self>`.
    pub fn apply_operator(&self, op: &PauliOperator) -> Result<StateVector, SimError> {
        if op.label.n() != self.n {
            return Err(SimError::Mismatch);
        }
        let f = &self.field;
        let zeta = zeta_powers(f);
        let nmod = f.phase_modulus();
        let u = f.omega_units();
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut e = op.phase;
            let mut j_out = i;
            for j in 0..self.n {
                let d = self.digit(i, j);
                let x = Elem::new_unchecked(d as u32);
                e += u * f.trace(f.mul(op.label.z[j], x));
                let s = self.stride(j);
                j_out = j_out - d * s + f.add(x, op.label.x[j]).repr() as usize * s;
            }
            out[j_out] = a * zeta[(e % nmod) as usize];
        }
        Ok(StateVector { field: f.clone(), n: self.n, amps: out })
    }

    /// The eigenvalue of `op` on this (normalized) state.
    pub fn eigencheck(&self, op: &PauliOperator) -> Result<Complex64, SimError> {
        let image = self.apply_operator(op)?;
        let lambda = self.inner(&image);
        let diff: Vec<Complex64> = image.amps.iter().zip(&self.amps).map(|(b, a)| b - lambda * a).collect();
        let residual =
            pairwise_sum(&diff.iter().map(|d| Complex64::new(d.norm_sqr(), 0.0)).collect::<Vec<_>>()).re.sqrt();
        if residual > EIGEN_TOL || (lambda.norm() - 1.0).abs() > EIGEN_TOL {
            return Err(SimError::NotEigenstate { residual: residual.max((lambda.norm() - 1.0).abs()) });
        }
        Ok(lambda)
    }

    /// Basis states with amplitude above `tol`, as `(digits, amplitude)`.
    pub fn support(&self, tol: f64) -> Vec<(Vec<u32>, Complex64)> {
        self.amps.iter().enumerate().filter(|(_, a)| a.norm() > tol).map(|(i, &a)| (self.digits_of(i), a)).collect()
    }
}

/// Runs `circuit` on a basis input.
pub fn simulate(circuit: &Circuit, input: &[u32]) -> Result<StateVector, SimError> {
    if input.len() != circuit.n {
        return Err(SimError::LengthMismatch { expected: circuit.n, got: input.len() });
    }
    let mut s = StateVector::basis(&circuit.field, input)?;
    s.apply_circuit(circuit)?;
    Ok(s)
}

/// Basis input with the pivots at 0 and `message` on the remaining qudits.
pub fn encoder_input(circuit: &Circuit, message: &[u32]) -> Result<Vec<u32>, SimError> {
    let mq = circuit.message_qudits();
    if message.len() != mq.len() {
        return Err(SimError::LengthMismatch { expected: mq.len(), got: message.len() });
    }
    let mut d = vec![0; circuit.n];
    for (&q, &m) in mq.iter().zip(message) {
        d[q] = m;
    }
    Ok(d)
}

/// The operators whose common eigenspace is the code: every row scaled by
/// each polynomial-basis element, which together generate the group over
/// the prime field. Returned as `(row, power, operator)`.
pub fn group_generators(matrix: &StabilizerMatrix) -> Vec<(usize, usize, PauliOperator)> {
    let f = matrix.field();
    let basis = f.polynomial_basis();
    let mut out = Vec::new();
    for (i, row) in matrix.rows().iter().enumerate() {
        for (t, &b) in basis.iter().enumerate() {
            out.push((i, t, PauliOperator::new(row.scaled(f, b))));
        }
    }
    out
}

/// Observed eigenvalue of one group generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorEigen {
    pub row: usize,
    pub power: usize,
    pub value: Complex64,
    /// `e` with `value = zeta^e`, if it is such a root of unity.
    pub exponent: Option<u32>,
    /// Exponent predicted by pulling the operator back through the circuit.
    pub predicted: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    NotEigenstate,
    EigenvalueChanged,
    NotRootOfUnity,
    PredictionMismatch,
    RoundTrip,
    NotOrthogonal,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureKind::NotEigenstate => "not_eigenstate",
            FailureKind::EigenvalueChanged => "eigenvalue_changed",
            FailureKind::NotRootOfUnity => "not_root_of_unity",
            FailureKind::PredictionMismatch => "prediction_mismatch",
            FailureKind::RoundTrip => "round_trip",
            FailureKind::NotOrthogonal => "not_orthogonal",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub kind: FailureKind,
    pub message: Vec<u32>,
    pub other_message: Option<Vec<u32>>,
    pub generator: Option<(usize, usize)>,
    pub residual: f64,
}

fn join(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "result=fail kind={} message={}", self.kind, join(&self.message))?;
        if let Some(o) = &self.other_message {
            write!(f, " other={}", join(o))?;
        }
        if let Some((r, t)) = self.generator {
            write!(f, " row={} power={}", r + 1, t)?;
        }
        write!(f, " residual={:.3e}", self.residual)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub messages: Vec<Vec<u32>>,
    /// Eigenvalues on the first message.
    pub eigenvalues: Vec<GeneratorEigen>,
    /// Generators whose eigenvalue is a fourth but not a second root of unity.
    pub quarter_phases: Vec<(usize, usize)>,
    pub failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Whether every generator has eigenvalue 1.
    pub fn all_plus_one(&self) -> bool {
        self.eigenvalues.iter().all(|e| e.exponent == Some(0))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            Some(c) => writeln!(f, "{c}")?,
            None => writeln!(f, "result=pass samples={}", self.messages.len())?,
        }
        for e in &self.eigenvalues {
            let exp = e.exponent.map_or("none".to_string(), |x| x.to_string());
            writeln!(
                f,
                "row={} power={} eigenvalue={:.6}{:+.6}i exponent={}",
                e.row + 1,
                e.power,
                e.value.re,
                e.value.im,
                exp
            )?;
        }
        for (r, t) in &self.quarter_phases {
            writeln!(f, "flag=quarter_phase row={} power={}", r + 1, t)?;
        }
        Ok(())
    }
}

fn root_exponent(field: &Field, v: Complex64) -> Option<u32> {
    zeta_powers(field).iter().position(|z| (z - v).norm() < EIGEN_TOL).map(|e| e as u32)
}

/// `samples` messages drawn from the seed, distinct whenever there are
/// enough of them.
pub fn sample_messages(q: u32, k: usize, samples: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = (q as u128).checked_pow(k as u32);
    let decode = |mut v: u128| {
        let mut d = vec![0u32; k];
        for j in (0..k).rev() {
            d[j] = (v % q as u128) as u32;
            v /= q as u128;
        }
        d
    };
    match total {
        Some(t) if t <= usize::MAX as u128 && (samples as u128) <= t => {
            sample(&mut rng, t as usize, samples).into_iter().map(|v| decode(v as u128)).collect()
        }
        _ => (0..samples).map(|_| (0..k).map(|_| rng.gen_range(0..q)).collect()).collect(),
    }
}

/// Checks that `encoder` maps pivot-zero basis states into the code of
/// `matrix`, that its inverse undoes it, and that distinct messages encode
/// to orthogonal states.
pub fn verify_encoder(
    matrix: &StabilizerMatrix,
    encoder: &Circuit,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport, SimError> {
    if encoder.field != *matrix.field() || encoder.n != matrix.n() {
        return Err(SimError::Mismatch);
    }
    let field = matrix.field();
    let gens = group_generators(matrix);
    let predicted: Vec<Option<u32>> =
        gens.iter().map(|(_, _, op)| encoder.pull_back(op).ok().map(|p| p.phase)).collect();
    let decoder = encoder.inverse();
    let k = encoder.message_qudits().len();
    let messages = sample_messages(field.q(), k, samples, seed);
    let dim = StateVector::dim_for(field, matrix.n())?;
    let keep = (ORTHO_BUDGET / dim).max(2);

    let mut report =
        VerifyReport { messages: messages.clone(), eigenvalues: Vec::new(), quarter_phases: Vec::new(), failure: None };
    let mut kept: Vec<(usize, StateVector)> = Vec::new();
    let fail = |kind, message: &[u32], generator, residual| Counterexample {
        kind,
        message: message.to_vec(),
        other_message: None,
        generator,
        residual,
    };

    for (mi, msg) in messages.iter().enumerate() {
        let input = encoder_input(encoder, msg)?;
        let mut state = StateVector::basis(field, &input)?;
        state.apply_circuit(encoder)?;

        for (gi, (row, t, op)) in gens.iter().enumerate() {
            let value = match state.eigencheck(op) {
                Ok(v) => v,
                Err(SimError::NotEigenstate { residual }) => {
                    report.failure = Some(fail(FailureKind::NotEigenstate, msg, Some((*row, *t)), residual));
                    return Ok(report);
                }
                Err(e) => return Err(e),
            };
            if mi == 0 {
                let exponent = root_exponent(field, value);
                if exponent.is_none() {
                    report.failure = Some(fail(FailureKind::NotRootOfUnity, msg, Some((*row, *t)), 0.0));
                    return Ok(report);
                }
                if let (Some(e), Some(p)) = (exponent, predicted[gi]) {
                    if e != p {
                        report.failure = Some(fail(FailureKind::PredictionMismatch, msg, Some((*row, *t)), 0.0));
                        return Ok(report);
                    }
                }
                if field.p() == 2 && exponent.is_some_and(|e| e % 2 == 1) {
                    report.quarter_phases.push((*row, *t));
                }
                report.eigenvalues.push(GeneratorEigen {
                    row: *row,
                    power: *t,
                    value,
                    exponent,
                    predicted: predicted[gi],
                });
            } else {
                let first = report.eigenvalues[gi].value;
                if (value - first).norm() > EIGEN_TOL {
                    report.failure =
                        Some(fail(FailureKind::EigenvalueChanged, msg, Some((*row, *t)), (value - first).norm()));
                    return Ok(report);
                }
            }
        }

        let mut back = state.clone();
        back.apply_circuit(&decoder)?;
        let expect = StateVector::basis(field, &input)?;
        let err = back.max_abs_diff(&expect);
        if err > EIGEN_TOL {
            report.failure = Some(fail(FailureKind::RoundTrip, msg, None, err));
            return Ok(report);
        }

        for (mj, other) in &kept {
            if messages[*mj] == *msg {
                continue;
            }
            let ip = other.inner(&state).norm();
            if ip > EIGEN_TOL {
                let mut c = fail(FailureKind::NotOrthogonal, msg, None, ip);
                c.other_message = Some(messages[*mj].clone());
                report.failure = Some(c);
                return Ok(report);
            }
        }
        if kept.len() < keep {
            kept.push((mi, state));
        }
    }
    Ok(report)
}

/// Prepends `X_a` gates on the pivots so that every group generator has
/// eigenvalue 1 on the encoded states.
///
/// Pulling a generator back through the encoder gives `zeta^e Z_b` with
/// `b` supported on the pivots; a leading `X_a` changes the eigenvalue
/// exponent by `omega_units * tr(a . b)`, an F_p-linear condition on the
/// coordinates of `a`.
pub fn normalize_encoder(matrix: &StabilizerMatrix, encoder: &Circuit) -> Result<Circuit, SimError> {
    let f = matrix.field();
    let p = f.p();
    let u = f.omega_units();
    let fp = Field::prime(p).expect("p is prime");
    let poly = f.polynomial_basis();
    let pivots = &encoder.pivots;
    let m = poly.len();

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (_, _, op) in group_generators(matrix) {
        let pulled = encoder.pull_back(&op)?;
        if !pulled.label.x.iter().all(|e| e.is_zero())
            || pulled.label.z.iter().enumerate().any(|(j, z)| !z.is_zero() && !pivots.contains(&j))
        {
            return Err(SimError::Unnormalizable);
        }
        if pulled.phase % u != 0 {
            return Err(SimError::Unnormalizable);
        }
        let target = (p - (pulled.phase / u) % p) % p;
        // unknown a_{j,s}: coefficient of x^s in a_j, for pivot j
        let row: Vec<Elem> = pivots
            .iter()
            .flat_map(|&j| poly.iter().map(move |&xs| (j, xs)))
            .map(|(j, xs)| fp.from_int(f.trace(f.mul(xs, pulled.label.z[j])) as i64))
            .collect();
        rows.push(row);
        rhs.push(fp.from_int(target as i64));
    }
    let unknowns = pivots.len() * m;
    // keep an independent square subsystem, then check the rest
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Elem>> = chosen.iter().map(|&c| rows[c].clone()).collect();
        trial.push(rows[i].clone());
        if linalg::rank(&fp, &trial) == trial.len() {
            chosen.push(i);
        }
    }
    if chosen.len() != unknowns {
        return Err(SimError::Unnormalizable);
    }
    let a: Vec<Vec<Elem>> = chosen.iter().map(|&c| rows[c].clone()).collect();
    let b: Vec<Elem> = chosen.iter().map(|&c| rhs[c]).collect();
    let sol = linalg::solve(&fp, &a, &b).ok_or(SimError::Unnormalizable)?;
    for (row, &r) in rows.iter().zip(&rhs) {
        let lhs = row.iter().zip(&sol).fold(Elem::ZERO, |acc, (&x, &y)| fp.add(acc, fp.mul(x, y)));
        if lhs != r {
            return Err(SimError::Unnormalizable);
        }
    }

    let mut out = encoder.clone();
    let mut prefix = Vec::new();
    for (pi, &j) in pivots.iter().enumerate() {
        let coeffs: Vec<u32> = (0..m).map(|s| sol[pi * m + s].repr()).collect();
        let alpha = f.from_coefficients(&coeffs);
        if !alpha.is_zero() {
            prefix.push(Gate::PauliX { qudit: j, alpha });
        }
    }
    prefix.extend(out.gates);
    out.gates = prefix;
    Ok(out)
}

/// Encoded states of every message, in lexicographic message order.
pub fn all_codewords(encoder: &Circuit, k: usize) -> Result<Vec<StateVector>, SimError> {
    let q = encoder.field.q();
    let total = (q as usize).pow(k as u32);
    (0..total)
        .map(|mut v| {
            let mut msg = vec![0u32; k];
            for j in (0..k).rev() {
                msg[j] = (v % q as usize) as u32;
                v /= q as usize;
            }
            simulate(encoder, &encoder_input(encoder, &msg)?)
        })
        .collect()
}

/// One failure of the Knill-Laflamme condition.
#[derive(Debug, Clone, PartialEq)]
pub struct KlViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KlReport {
    pub codewords: usize,
    pub errors: Vec<PauliLabel>,
    /// `<c_0| E_k^dagger E_l |c_0>`.
    pub alpha: Vec<Vec<Complex64>>,
    pub violations: Vec<KlViolation>,
}

impl KlReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All labels of weight at most `t` on `n` qudits.
pub fn low_weight_errors(field: &Field, n: usize, t: usize) -> Vec<PauliLabel> {
    let mut out = vec![PauliLabel::identity(n)];
    let mut frontier = out.clone();
    for _ in 0..t {
        let mut next = Vec::new();
        for e in &frontier {
            let start = (0..n).rev().find(|&j| !e.x[j].is_zero() || !e.z[j].is_zero()).map_or(0, |j| j + 1);
            for j in start..n {
                for a in field.elements() {
                    for b in field.elements() {
                        if a.is_zero() && b.is_zero() {
                            continue;
                        }
                        let mut l = e.clone();
                        l.x[j] = a;
                        l.z[j] = b;
                        next.push(l);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Evaluates `<c_i| E_k^dagger E_l |c_j>` over all errors of weight `<= t`.
pub fn kl_check(codewords: &[StateVector], t: usize) -> Result<KlReport, SimError> {
    let first = codewords.first().ok_or(SimError::LengthMismatch { expected: 1, got: 0 })?;
    let (field, n) = (first.field.clone(), first.n);
    if n > 5 || codewords.len() > 4 || t > 1 {
        return Err(SimError::KlTooLarge { n, k: codewords.len(), t });
    }
    if codewords.iter().any(|c| c.field != field || c.n != n) {
        return Err(SimError::Mismatch);
    }
    let errors = low_weight_errors(&field, n, t);
    let images: Vec<Vec<StateVector>> = errors
        .iter()
        .map(|e| codewords.iter().map(|c| c.apply_operator(&PauliOperator::new(e.clone()))).collect())
        .collect::<Result<_, _>>()?;
    let ne = errors.len();
    let kc = codewords.len();
    let mut alpha = vec![vec![Complex64::new(0.0, 0.0); ne]; ne];
    let mut violations = Vec::new();
    for k in 0..ne {
        for l in 0..ne {
            let a0 = images[k][0].inner(&images[l][0]);
            alpha[k][l] = a0;
            for i in 0..kc {
                for j in 0..kc {
                    let v = images[k][i].inner(&images[l][j]);
                    let want = if i == j { a0 } else { Complex64::new(0.0, 0.0) };
                    if (v - want).norm() > EIGEN_TOL {
                        violations.push(KlViolation { i, j, k, l, value: v });
                    }
                }
            }
        }
    }
    Ok(KlReport { codewords: kc, errors, alpha, violations })
}
