//! The elementary gate set, circuits, and the conjugation action of gates on
//! error-group labels.
//!
//! Conjugation is always `g -> U^dagger g U`. Under this convention the
//! single-qudit gates act on a label pair `(alpha, beta)`, viewed as a row
//! vector, by right multiplication with
//!
//! ```text
//! F   = [ 0 -1 ]    P_g = [ 1 g ]    M_g = [ 1/g 0 ]
//!       [ 1  0 ]          [ 0 1 ]          [ 0   g ]
//! ```
//!
//! together with a phase rule, and `ADD(c, t)` adds `beta_t` to `beta_c`
//! and subtracts `alpha_c` from `alpha_t`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::dense::{zeta_powers, DenseMatrix};
use crate::gf::{Elem, Field, GfError};
use crate::pauli::{PauliError, PauliOperator};

/// Largest dense unitary built by [`unitary`].
pub const MAX_DENSE_DIM: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateError {
    #[error("HORNER has no tableau action")]
    NoTableau,
    #[error("qudit {} out of range for a register of {n}", .index + 1)]
    IndexOutOfRange { index: usize, n: usize },
    #[error("gate acts twice on qudit {}", .0 + 1)]
    DuplicateQudit(usize),
    #[error("multiplication by zero is not a gate")]
    ZeroMultiplier,
    #[error("cannot normalize the zero label")]
    ZeroLabel,
    #[error("dense unitary of dimension {0} is too large")]
    TooLarge(usize),
    #[error("circuit and operator belong to different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Fourier { qudit: usize },
    Mult { qudit: usize, gamma: Elem },
    Phase { qudit: usize, gamma: Elem },
    PauliX { qudit: usize, alpha: Elem },
    PauliZ { qudit: usize, beta: Elem },
    Add { control: usize, target: usize },
    AddInv { control: usize, target: usize },
    Horner { a: usize, x: usize, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Fourier,
    Mult,
    Phase,
    PauliX,
    PauliZ,
    Add,
    AddInv,
    Horner,
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Fourier { .. } => GateKind::Fourier,
            Gate::Mult { .. } => GateKind::Mult,
            Gate::Phase { .. } => GateKind::Phase,
            Gate::PauliX { .. } => GateKind::PauliX,
            Gate::PauliZ { .. } => GateKind::PauliZ,
            Gate::Add { .. } => GateKind::Add,
            Gate::AddInv { .. } => GateKind::AddInv,
            Gate::Horner { .. } => GateKind::Horner,
        }
    }

    /// Qudits acted on, in the order that defines the gate's local basis
    /// (first listed is the most significant digit).
    pub fn qudits(&self) -> Vec<usize> {
        match *self {
            Gate::Fourier { qudit }
            | Gate::Mult { qudit, .. }
            | Gate::Phase { qudit, .. }
            | Gate::PauliX { qudit, .. }
            | Gate::PauliZ { qudit, .. } => vec![qudit],
            Gate::Add { control, target } | Gate::AddInv { control, target } => vec![control, target],
            Gate::Horner { a, x, target } => vec![a, x, target],
        }
    }

    pub fn arity(&self) -> usize {
        self.qudits().len()
    }

    /// Checks indices against a register of `n` qudits and parameters
    /// against the field.
    pub fn validate(&self, field: &Field, n: usize) -> Result<(), GateError> {
        let qs = self.qudits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n {
                return Err(GateError::IndexOutOfRange { index: q, n });
            }
            if qs[..i].contains(&q) {
                return Err(GateError::DuplicateQudit(q));
            }
        }
        match *self {
            Gate::Mult { gamma, .. } if gamma.is_zero() => Err(GateError::ZeroMultiplier),
            Gate::Mult { gamma: e, .. }
            | Gate::Phase { gamma: e, .. }
            | Gate::PauliX { alpha: e, .. }
            | Gate::PauliZ { beta: e, .. } => {
                field.elem(e.repr())?;
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Gates (in temporal order) whose product is the inverse of this gate.
    pub fn inverse(&self, field: &Field) -> Vec<Gate> {
        match *self {
            // F^2 = M_{-1}, so F^{-1} = F M_{-1}; for p = 2, F is an involution.
            Gate::Fourier { qudit } => {
                if field.p() == 2 {
                    vec![*self]
                } else {
                    vec![*self, Gate::Mult { qudit, gamma: field.neg(Elem::ONE) }]
                }
            }
            Gate::Mult { qudit, gamma } => {
                vec![Gate::Mult { qudit, gamma: field.inv(gamma).expect("multiplier is nonzero") }]
            }
            Gate::Phase { qudit, gamma } => {
                if gamma.is_zero() {
                    vec![]
                } else if field.p() == 2 {
                    // P_g^2 = Z_{g0 s} with g0^2 = g and s the sum of the self-dual basis
                    let g0 = field.sqrt_char2(gamma).expect("char 2");
                    let s = field.self_dual_basis().expect("char 2").sum(field);
                    vec![*self, Gate::PauliZ { qudit, beta: field.mul(g0, s) }]
                } else {
                    vec![Gate::Phase { qudit, gamma: field.neg(gamma) }]
                }
            }
            Gate::PauliX { qudit, alpha } => vec![Gate::PauliX { qudit, alpha: field.neg(alpha) }],
            Gate::PauliZ { qudit, beta } => vec![Gate::PauliZ { qudit, beta: field.neg(beta) }],
            Gate::Add { control, target } => vec![Gate::AddInv { control, target }],
            Gate::AddInv { control, target } => vec![Gate::Add { control, target }],
            Gate::Horner { .. } => vec![*self; field.p() as usize - 1],
        }
    }
}

/// Phase picked up by a label under a single-qudit conjugation, as a
/// function of the incoming `(alpha, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseRule {
    None,
    /// `omega^{-tr(alpha beta)}`
    Fourier,
    /// `omega^{tr(gamma alpha^2 / 2)}`, odd q
    HalfSquare {
        gamma: Elem,
    },
    /// `i^{wgt(alpha gamma0)}`, even q
    QuarterWgt {
        gamma0: Elem,
    },
    /// `omega^{tr(a beta)}` from conjugation by `X_a`
    ShiftX {
        alpha: Elem,
    },
    /// `omega^{-tr(alpha b)}` from conjugation by `Z_b`
    ShiftZ {
        beta: Elem,
    },
}

impl PhaseRule {
    pub fn eval(&self, field: &Field, alpha: Elem, beta: Elem) -> u32 {
        let n = field.phase_modulus();
        let u = field.omega_units();
        let omega = |e: u32| (e * u) % n;
        let omega_neg = |e: u32| (n - (e * u) % n) % n;
        match *self {
            PhaseRule::None => 0,
            PhaseRule::Fourier => omega_neg(field.trace(field.mul(alpha, beta))),
            PhaseRule::HalfSquare { gamma } => {
                let half = field.half().expect("odd characteristic");
                omega(field.trace(field.mul(field.mul(half, gamma), field.mul(alpha, alpha))))
            }
            PhaseRule::QuarterWgt { gamma0 } => field.wgt(field.mul(alpha, gamma0)).expect("char 2") % 4,
            PhaseRule::ShiftX { alpha: a } => omega(field.trace(field.mul(a, beta))),
            PhaseRule::ShiftZ { beta: b } => omega_neg(field.trace(field.mul(alpha, b))),
        }
    }
}

/// The induced map on labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableauAction {
    /// `(alpha, beta) -> (alpha, beta) * matrix`, plus a phase.
    Single { matrix: [[Elem; 2]; 2], phase: PhaseRule },
    /// `((a1, b1), (a2, b2)) -> ((a1, b1 + b2), (a2 - a1, b2))`
    Add,
    /// `((a1, b1), (a2, b2)) -> ((a1, b1 - b2), (a2 + a1, b2))`
    AddInv,
}

impl TableauAction {
    /// Image of a single-qudit pair and the phase exponent it acquires.
    /// Panics on two-qudit actions.
    pub fn apply_pair(&self, field: &Field, alpha: Elem, beta: Elem) -> (Elem, Elem, u32) {
        match self {
            TableauAction::Single { matrix: m, phase } => {
                let a = field.add(field.mul(alpha, m[0][0]), field.mul(beta, m[1][0]));
                let b = field.add(field.mul(alpha, m[0][1]), field.mul(beta, m[1][1]));
                (a, b, phase.eval(field, alpha, beta))
            }
            _ => panic!("apply_pair on a two-qudit action"),
        }
    }

    pub fn determinant(&self, field: &Field) -> Option<Elem> {
        match self {
            TableauAction::Single { matrix: m, .. } => {
                Some(field.sub(field.mul(m[0][0], m[1][1]), field.mul(m[0][1], m[1][0])))
            }
            _ => None,
        }
    }
}

/// The conjugation action of `gate`.
pub fn action(gate: &Gate, field: &Field) -> Result<TableauAction, GateError> {
    let z = Elem::ZERO;
    let one = Elem::ONE;
    let id = [[one, z], [z, one]];
    Ok(match *gate {
        Gate::Fourier { .. } => {
            TableauAction::Single { matrix: [[z, field.neg(one)], [one, z]], phase: PhaseRule::Fourier }
        }
        Gate::Mult { gamma, .. } => TableauAction::Single {
            matrix: [[field.inv(gamma).map_err(|_| GateError::ZeroMultiplier)?, z], [z, gamma]],
            phase: PhaseRule::None,
        },
        Gate::Phase { gamma, .. } => {
            let phase = if gamma.is_zero() {
                PhaseRule::None
            } else if field.p() == 2 {
                PhaseRule::QuarterWgt { gamma0: field.sqrt_char2(gamma)? }
            } else {
                PhaseRule::HalfSquare { gamma }
            };
            TableauAction::Single { matrix: [[one, gamma], [z, one]], phase }
        }
        Gate::PauliX { alpha, .. } => TableauAction::Single { matrix: id, phase: PhaseRule::ShiftX { alpha } },
        Gate::PauliZ { beta, .. } => TableauAction::Single { matrix: id, phase: PhaseRule::ShiftZ { beta } },
        Gate::Add { .. } => TableauAction::Add,
        Gate::AddInv { .. } => TableauAction::AddInv,
        Gate::Horner { .. } => return Err(GateError::NoTableau),
    })
}

/// `U^dagger op U` in normal form.
pub fn conjugate_label(field: &Field, gate: &Gate, op: &PauliOperator) -> Result<PauliOperator, GateError> {
    let n = op.label.n();
    gate.validate(field, n)?;
    let mut out = op.clone();
    match (action(gate, field)?, *gate) {
        (act @ TableauAction::Single { .. }, g) => {
            let j = g.qudits()[0];
            let (a, b, ph) = act.apply_pair(field, op.label.x[j], op.label.z[j]);
            out.label.x[j] = a;
            out.label.z[j] = b;
            out.phase = (out.phase + ph) % field.phase_modulus();
        }
        (TableauAction::Add, Gate::Add { control: c, target: t }) => {
            out.label.z[c] = field.add(op.label.z[c], op.label.z[t]);
            out.label.x[t] = field.sub(op.label.x[t], op.label.x[c]);
        }
        (TableauAction::AddInv, Gate::AddInv { control: c, target: t }) => {
            out.label.z[c] = field.sub(op.label.z[c], op.label.z[t]);
            out.label.x[t] = field.add(op.label.x[t], op.label.x[c]);
        }
        _ => unreachable!("action matches gate kind"),
    }
    Ok(out)
}

/// Single-qudit gates, in conjugation order, whose combined action maps
/// `(alpha, beta)` to exactly `(1, 0)`.
///
/// For `alpha != 0`: `M_alpha` gives `(1, alpha beta)`, then `P_{-alpha beta}`
/// clears the second entry. For `alpha = 0`: `F` gives `(beta, 0)`, then `M_beta`.
pub fn solve_to_x(field: &Field, qudit: usize, alpha: Elem, beta: Elem) -> Result<Vec<Gate>, GateError> {
    let mut out = Vec::with_capacity(2);
    if !alpha.is_zero() {
        if alpha != Elem::ONE {
            out.push(Gate::Mult { qudit, gamma: alpha });
        }
        let g = field.neg(field.mul(alpha, beta));
        if !g.is_zero() {
            out.push(Gate::Phase { qudit, gamma: g });
        }
    } else if !beta.is_zero() {
        out.push(Gate::Fourier { qudit });
        if beta != Elem::ONE {
            out.push(Gate::Mult { qudit, gamma: beta });
        }
    } else {
        return Err(GateError::ZeroLabel);
    }
    Ok(out)
}

/// As [`solve_to_x`] with target `(0, 1)`.
///
/// For `alpha != 0`: `M_{-alpha}` gives `(-1, -alpha beta)`, `P_{-alpha beta}`
/// gives `(-1, 0)`, and `F` maps that to `(0, 1)`. For `alpha = 0`: `M_{1/beta}`.
pub fn solve_to_z(field: &Field, qudit: usize, alpha: Elem, beta: Elem) -> Result<Vec<Gate>, GateError> {
    let mut out = Vec::with_capacity(3);
    if !alpha.is_zero() {
        let m = field.neg(alpha);
        if m != Elem::ONE {
            out.push(Gate::Mult { qudit, gamma: m });
        }
        let g = field.neg(field.mul(alpha, beta));
        if !g.is_zero() {
            out.push(Gate::Phase { qudit, gamma: g });
        }
        out.push(Gate::Fourier { qudit });
    } else if !beta.is_zero() {
        if beta != Elem::ONE {
            out.push(Gate::Mult { qudit, gamma: field.inv(beta)? });
        }
    } else {
        return Err(GateError::ZeroLabel);
    }
    Ok(out)
}

/// Dense matrix of `gate` on its own qudits (local dimension `q^arity`).
pub fn unitary(gate: &Gate, field: &Field) -> Result<DenseMatrix, GateError> {
    let q = field.q() as usize;
    let dim = q.checked_pow(gate.arity() as u32).filter(|&d| d <= MAX_DENSE_DIM);
    let dim = dim.ok_or(GateError::TooLarge(q.pow(gate.arity().min(8) as u32)))?;
    let zeta = zeta_powers(field);
    let nmod = field.phase_modulus();
    let u = field.omega_units();
    let omega = |e: u32| zeta[((e * u) % nmod) as usize];
    let one = Complex64::new(1.0, 0.0);
    let el = |i: usize| Elem::new_unchecked(i as u32);
    let mut m = DenseMatrix::zeros(dim);
    match *gate {
        Gate::Fourier { .. } => {
            let s = 1.0 / (q as f64).sqrt();
            for x in 0..q {
                for zz in 0..q {
                    m.set(zz, x, omega(field.trace(field.mul(el(x), el(zz)))) * s);
                }
            }
        }
        Gate::Mult { gamma, .. } => {
            if gamma.is_zero() {
                return Err(GateError::ZeroMultiplier);
            }
            for y in 0..q {
                m.set(field.mul(gamma, el(y)).repr() as usize, y, one);
            }
        }
        Gate::Phase { gamma, .. } => {
            for y in 0..q {
                let v = if gamma.is_zero() {
                    one
                } else if field.p() == 2 {
                    // (-i)^{wgt(gamma0 y)}
                    let g0 = field.sqrt_char2(gamma)?;
                    let w = field.wgt(field.mul(g0, el(y)))?;
                    zeta[((4 - w % 4) % 4) as usize]
                } else {
                    let half = field.half().expect("odd characteristic");
                    let t = field.trace(field.mul(field.mul(half, gamma), field.mul(el(y), el(y))));
                    omega((field.p() - t) % field.p())
                };
                m.set(y, y, v);
            }
        }
        Gate::PauliX { alpha, .. } => {
            for x in 0..q {
                m.set(field.add(el(x), alpha).repr() as usize, x, one);
            }
        }
        Gate::PauliZ { beta, .. } => {
            for zz in 0..q {
                m.set(zz, zz, omega(field.trace(field.mul(beta, el(zz)))));
            }
        }
        Gate::Add { .. } | Gate::AddInv { .. } => {
            let inv = matches!(gate, Gate::AddInv { .. });
            for x in 0..q {
                for y in 0..q {
                    let t = if inv { field.sub(el(y), el(x)) } else { field.add(el(y), el(x)) };
                    m.set(x * q + t.repr() as usize, x * q + y, one);
                }
            }
        }
        Gate::Horner { .. } => {
            for a in 0..q {
                for x in 0..q {
                    for b in 0..q {
                        let t = field.add(field.mul(el(a), el(x)), el(b));
                        m.set((a * q + x) * q + t.repr() as usize, (a * q + x) * q + b, one);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Dense matrix of `zeta^phase X_x Z_z` on the whole register.
pub fn operator_unitary(field: &Field, op: &PauliOperator) -> Result<DenseMatrix, GateError> {
    let q = field.q() as usize;
    let n = op.label.n();
    let dim = q.checked_pow(n as u32).filter(|&d| d <= MAX_DENSE_DIM).ok_or(GateError::TooLarge(usize::MAX))?;
    let zeta = zeta_powers(field);
    let nmod = field.phase_modulus();
    let mut m = DenseMatrix::zeros(dim);
    for idx in 0..dim {
        let digits = index_digits(idx, q, n);
        let mut e = op.phase;
        let mut out = 0usize;
        for j in 0..n {
            let x = Elem::new_unchecked(digits[j] as u32);
            e += field.omega_units() * field.trace(field.mul(op.label.z[j], x));
            out = out * q + field.add(x, op.label.x[j]).repr() as usize;
        }
        m.set(out, idx, zeta[(e % nmod) as usize]);
    }
    Ok(m)
}

pub(crate) fn index_digits(mut idx: usize, q: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for j in (0..n).rev() {
        d[j] = idx % q;
        idx /= q;
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Decoder,
    Encoder,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Decoder => "decoder",
            Direction::Encoder => "encoder",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub fourier: usize,
    pub mult: usize,
    pub phase: usize,
    pub pauli_x: usize,
    pub pauli_z: usize,
    pub add: usize,
    pub add_inv: usize,
    pub horner: usize,
}

impl GateCounts {
    pub fn two_qudit(&self) -> usize {
        self.add + self.add_inv
    }

    pub fn single_qudit(&self) -> usize {
        self.fourier + self.mult + self.phase + self.pauli_x + self.pauli_z
    }

    pub fn total(&self) -> usize {
        self.single_qudit() + self.two_qudit() + self.horner
    }
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fourier={} mult={} phase={} x={} z={} add={} addinv={} horner={} total={}",
            self.fourier,
            self.mult,
            self.phase,
            self.pauli_x,
            self.pauli_z,
            self.add,
            self.add_inv,
            self.horner,
            self.total()
        )
    }
}

/// An ordered (first-applied first) gate list on `n` qudits.
///
/// `pivots` lists the qudits that hold `|0>` on the unencoded side; the
/// remaining qudits, in ascending order, carry the message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub field: Field,
    pub n: usize,
    pub gates: Vec<Gate>,
    pub direction: Direction,
    pub pivots: Vec<usize>,
}

impl Circuit {
    pub fn new(field: Field, n: usize, direction: Direction) -> Self {
        Circuit { field, n, gates: Vec::new(), direction, pivots: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), GateError> {
        for g in &self.gates {
            g.validate(&self.field, self.n)?;
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            if p >= self.n {
                return Err(GateError::IndexOutOfRange { index: p, n: self.n });
            }
            if self.pivots[..i].contains(&p) {
                return Err(GateError::DuplicateQudit(p));
            }
        }
        Ok(())
    }

    /// Qudits not in `pivots`, ascending.
    pub fn message_qudits(&self) -> Vec<usize> {
        (0..self.n).filter(|q| !self.pivots.contains(q)).collect()
    }

    /// The inverse circuit: reversed order, each gate inverted, direction
    /// swapped.
    pub fn inverse(&self) -> Circuit {
        let gates = self.gates.iter().rev().flat_map(|g| g.inverse(&self.field)).collect();
        Circuit {
            field: self.field.clone(),
            n: self.n,
            gates,
            direction: match self.direction {
                Direction::Decoder => Direction::Encoder,
                Direction::Encoder => Direction::Decoder,
            },
            pivots: self.pivots.clone(),
        }
    }

    /// `W^dagger op W` where `W` is the unitary of this circuit.
    pub fn pull_back(&self, op: &PauliOperator) -> Result<PauliOperator, GateError> {
        let mut cur = op.clone();
        for g in self.gates.iter().rev() {
            cur = conjugate_label(&self.field, g, &cur)?;
        }
        Ok(cur)
    }

    /// `W op W^dagger`: how a stabilizer of the input state transforms into
    /// a stabilizer of the output state.
    pub fn push_forward(&self, op: &PauliOperator) -> Result<PauliOperator, GateError> {
        let mut cur = op.clone();
        for g in &self.gates {
            for h in g.inverse(&self.field).iter().rev() {
                cur = conjugate_label(&self.field, h, &cur)?;
            }
        }
        Ok(cur)
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            match g.kind() {
                GateKind::Fourier => c.fourier += 1,
                GateKind::Mult => c.mult += 1,
                GateKind::Phase => c.phase += 1,
                GateKind::PauliX => c.pauli_x += 1,
                GateKind::PauliZ => c.pauli_z += 1,
                GateKind::Add => c.add += 1,
                GateKind::AddInv => c.add_inv += 1,
                GateKind::Horner => c.horner += 1,
            }
        }
        c
    }

    /// Combines multiplication gates that act on the same qudit with no
    /// other gate on that qudit in between; products equal to 1 vanish.
    pub fn merge_mult(&self) -> Circuit {
        let mut out: Vec<Option<Gate>> = Vec::with_capacity(self.gates.len());
        let mut last: Vec<Option<usize>> = vec![None; self.n];
        for g in &self.gates {
            if let Gate::Mult { qudit, gamma } = *g {
                if let Some(i) = last[qudit] {
                    if let Some(Gate::Mult { gamma: prev, .. }) = out[i] {
                        let prod = self.field.mul(prev, gamma);
                        if prod == Elem::ONE {
                            out[i] = None;
                            last[qudit] = None;
                        } else {
                            out[i] = Some(Gate::Mult { qudit, gamma: prod });
                        }
                        continue;
                    }
                }
            }
            for q in g.qudits() {
                last[q] = Some(out.len());
            }
            out.push(Some(*g));
        }
        Circuit { gates: out.into_iter().flatten().collect(), ..self.clone() }
    }
}
