//! Decoding/encoding circuit synthesis for general stabilizer codes.
//!
//! Rows are processed one at a time. Every nonzero `(alpha, beta)` pair of
//! the current row outside the pivot set is mapped to `(1, 0)` by
//! single-qudit gates; the first such column becomes the pivot `l` and
//! `ADD(l, j)` clears the remaining columns. A Fourier layer on the pivots
//! finally turns the X-only rows into Z-only rows.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::gates::{action, solve_to_x, solve_to_z, Circuit, Direction, Gate, GateError, TableauAction};
use crate::gf::{Elem, Field};
use crate::pauli::{PauliError, PauliLabel, StabilizerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("no pivot column found for row {}", .0 + 1)]
    InternalPivotMissing(usize),
    #[error("row {}, column {}: expected a normalized entry after the single-qudit stage", .row + 1, .col + 1)]
    UnexpectedEntry { row: usize, col: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Reduce rows to X-only form, then Fourier on the pivots.
    #[default]
    XTarget,
    /// Reduce rows directly to Z-only form with inverse ADD gates.
    ZTarget,
}

/// What happened while processing one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub row: usize,
    /// Single-qudit gates per column, in conjugation order.
    pub t_gates: Vec<(usize, Vec<Gate>)>,
    pub a_gates: Vec<Gate>,
    pub pivot: usize,
    pub after_t: Vec<PauliLabel>,
    pub after_a: Vec<PauliLabel>,
}

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub decoder: Circuit,
    pub encoder: Circuit,
    pub pivots: Vec<usize>,
    pub step_log: Vec<StepRecord>,
    /// Rows after the last ADD stage (before the final Fourier layer).
    pub final_matrix: StabilizerMatrix,
    pub add_count: usize,
    pub single_count: usize,
    /// Pair updates performed on the working matrix.
    pub op_count: u64,
}

/// Upper bound on the number of ADD gates for an `[[n, k]]` code.
pub fn gate_count_bound(n: usize, k: usize) -> usize {
    let r = n - k;
    n * r - r * (r + 1) / 2
}

struct Work<'a> {
    field: &'a Field,
    rows: Vec<PauliLabel>,
    ops: u64,
}

impl Work<'_> {
    fn apply_single(&mut self, gate: &Gate, from_row: usize) -> Result<(), SynthError> {
        let act = action(gate, self.field)?;
        let j = gate.qudits()[0];
        for r in &mut self.rows[from_row..] {
            let (a, b, _) = act.apply_pair(self.field, r.x[j], r.z[j]);
            r.x[j] = a;
            r.z[j] = b;
        }
        self.ops += (self.rows.len() - from_row) as u64;
        Ok(())
    }

    fn apply_two(&mut self, gate: &Gate, from_row: usize) -> Result<(), SynthError> {
        let f = self.field;
        match (action(gate, f)?, *gate) {
            (TableauAction::Add, Gate::Add { control: c, target: t }) => {
                for r in &mut self.rows[from_row..] {
                    r.z[c] = f.add(r.z[c], r.z[t]);
                    r.x[t] = f.sub(r.x[t], r.x[c]);
                }
            }
            (TableauAction::AddInv, Gate::AddInv { control: c, target: t }) => {
                for r in &mut self.rows[from_row..] {
                    r.z[c] = f.sub(r.z[c], r.z[t]);
                    r.x[t] = f.add(r.x[t], r.x[c]);
                }
            }
            _ => unreachable!("two-qudit gates are ADD or ADDINV"),
        }
        self.ops += 2 * (self.rows.len() - from_row) as u64;
        Ok(())
    }
}

/// Runs the reduction on a validated stabilizer matrix.
pub fn synthesize(matrix: &StabilizerMatrix, variant: Variant) -> Result<SynthesisResult, SynthError> {
    matrix.validate()?;
    let field = matrix.field();
    let n = matrix.n();
    let mut work = Work { field, rows: matrix.rows().to_vec(), ops: 0 };
    let mut pivots: Vec<usize> = Vec::new();
    let mut processing: Vec<Gate> = Vec::new();
    let mut step_log = Vec::new();

    for i in 0..work.rows.len() {
        let mut t_gates = Vec::new();
        for j in (0..n).filter(|j| !pivots.contains(j)) {
            let (a, b) = (work.rows[i].x[j], work.rows[i].z[j]);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let gs = match variant {
                Variant::XTarget => solve_to_x(field, j, a, b)?,
                Variant::ZTarget => solve_to_z(field, j, a, b)?,
            };
            for g in &gs {
                work.apply_single(g, i)?;
            }
            processing.extend_from_slice(&gs);
            if !gs.is_empty() {
                t_gates.push((j, gs));
            }
        }
        let after_t = work.rows.clone();

        let row = &work.rows[i];
        let is_set = |j: usize| match variant {
            Variant::XTarget => !row.x[j].is_zero(),
            Variant::ZTarget => !row.z[j].is_zero(),
        };
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let l = *free.iter().find(|&&j| is_set(j)).ok_or(SynthError::InternalPivotMissing(i))?;
        let targets: Vec<usize> = free.iter().copied().filter(|&j| j != l && is_set(j)).collect();
        let expected = match variant {
            Variant::XTarget => (Elem::ONE, Elem::ZERO),
            Variant::ZTarget => (Elem::ZERO, Elem::ONE),
        };
        for &j in &free {
            let pair = (row.x[j], row.z[j]);
            if pair != (Elem::ZERO, Elem::ZERO) && pair != expected {
                return Err(SynthError::UnexpectedEntry { row: i, col: j });
            }
        }

        let mut a_gates = Vec::with_capacity(targets.len());
        for j in targets {
            let g = match variant {
                Variant::XTarget => Gate::Add { control: l, target: j },
                Variant::ZTarget => Gate::AddInv { control: j, target: l },
            };
            work.apply_two(&g, i)?;
            a_gates.push(g);
        }
        processing.extend_from_slice(&a_gates);
        pivots.push(l);
        step_log.push(StepRecord { row: i, t_gates, a_gates, pivot: l, after_t, after_a: work.rows.clone() });
    }

    let final_matrix = StabilizerMatrix::unchecked(field.clone(), n, work.rows.clone())?;
    if variant == Variant::XTarget {
        let mut sorted = pivots.clone();
        sorted.sort_unstable();
        for &l in &sorted {
            let g = Gate::Fourier { qudit: l };
            work.apply_single(&g, 0)?;
            processing.push(g);
        }
    }

    let add_count = processing.iter().filter(|g| g.arity() == 2).count();
    let single_count = processing.iter().filter(|g| g.arity() == 1).count();

    // Conjugating by g1, then g2, ... is conjugation by W = g1 g2 ... gT,
    // whose temporal order runs from gT back to g1.
    let mut encoder = Circuit::new(field.clone(), n, Direction::Encoder);
    encoder.gates = processing.iter().rev().copied().collect();
    encoder.pivots = pivots.clone();
    let mut decoder = Circuit::new(field.clone(), n, Direction::Decoder);
    decoder.gates = processing.iter().flat_map(|g| g.inverse(field)).collect();
    decoder.pivots = pivots.clone();

    Ok(SynthesisResult {
        decoder,
        encoder,
        pivots,
        step_log,
        final_matrix,
        add_count,
        single_count,
        op_count: work.ops,
    })
}

/// A random valid `[[n, k]]` stabilizer matrix: the rows `Z^(1), ..., Z^(n-k)`
/// conjugated by `depth` random gates.
pub fn random_stabilizer<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    k: usize,
    depth: usize,
    rng: &mut R,
) -> Result<StabilizerMatrix, SynthError> {
    let r = n - k;
    let rows = (0..r).map(|i| PauliLabel::single(n, i, Elem::ZERO, Elem::ONE)).collect();
    let q = field.q();
    let mut work = Work { field, rows, ops: 0 };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for step in 0..depth {
        let j = if step < n { perm[step] } else { rng.gen_range(0..n) };
        let nonzero = field.elem(rng.gen_range(1..q)).map_err(GateError::from)?;
        let g = match rng.gen_range(0..4) {
            0 => Gate::Fourier { qudit: j },
            1 => Gate::Mult { qudit: j, gamma: nonzero },
            2 => Gate::Phase { qudit: j, gamma: nonzero },
            _ if n > 1 => {
                let mut t = rng.gen_range(0..n - 1);
                if t >= j {
                    t += 1;
                }
                Gate::Add { control: j, target: t }
            }
            _ => Gate::Fourier { qudit: j },
        };
        if g.arity() == 1 {
            work.apply_single(&g, 0)?;
        } else {
            work.apply_two(&g, 0)?;
        }
    }
    Ok(StabilizerMatrix::new(field.clone(), n, work.rows)?)
}
