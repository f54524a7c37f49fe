//! Encoders for CSS codes built from nested classical codes.
//!
//! `G` generates the inner code `C2^perp` and `H = [G; E]` generates the outer
//! code `C1`. The encoder applies Fourier gates to the leading positions of
//! the rows of `G`, then adds multiples of each control qudit into the other
//! positions, processing the rows of `H` from last to first.

use thiserror::Error;

use crate::gates::{Circuit, Direction, Gate, GateCounts};
use crate::gf::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::pauli::{PauliError, PauliLabel, StabilizerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CssError {
    #[error("matrix {name} has rows of different lengths")]
    Ragged { name: &'static str },
    #[error("G has {g} columns but H has {h}")]
    WidthMismatch { g: usize, h: usize },
    #[error("matrix {name} is empty")]
    Empty { name: &'static str },
    #[error("H is not in echelon form at row {}", .0 + 1)]
    NotEchelon(usize),
    #[error("the first rows of H do not reproduce G (row {})", .0 + 1)]
    NotNested(usize),
    #[error("rows of {name} are linearly dependent")]
    RankDeficient { name: &'static str },
    #[error("H has as many rows as G, so the code encodes nothing")]
    NoLogicalQudits,
    #[error("entry {value} is not an element of GF({q})")]
    BadEntry { value: u32, q: u32 },
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// A nested pair `C2^perp <= C1` in the form the encoder consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssInput {
    field: Field,
    g: Matrix,
    h: Matrix,
    leads: Vec<usize>,
}

fn leading(row: &[Elem]) -> Option<usize> {
    row.iter().position(|e| !e.is_zero())
}

fn check_shape(name: &'static str, m: &Matrix) -> Result<usize, CssError> {
    let w = m.first().map(Vec::len).ok_or(CssError::Empty { name })?;
    if w == 0 {
        return Err(CssError::Empty { name });
    }
    if m.iter().any(|r| r.len() != w) {
        return Err(CssError::Ragged { name });
    }
    Ok(w)
}

impl CssInput {
    /// Checks that `H` starts with the rows of `G`, that every row of `H`
    /// has leading entry 1 whose column vanishes in all later rows, and
    /// that both matrices have full rank.
    pub fn new(field: Field, g: Matrix, h: Matrix) -> Result<Self, CssError> {
        let ng = check_shape("G", &g)?;
        let nh = check_shape("H", &h)?;
        if ng != nh {
            return Err(CssError::WidthMismatch { g: ng, h: nh });
        }
        for v in g.iter().chain(&h).flatten() {
            if v.repr() >= field.q() {
                return Err(CssError::BadEntry { value: v.repr(), q: field.q() });
            }
        }
        if linalg::rank(&field, &g) < g.len() {
            return Err(CssError::RankDeficient { name: "G" });
        }
        if linalg::rank(&field, &h) < h.len() {
            return Err(CssError::RankDeficient { name: "H" });
        }
        if h.len() < g.len() {
            return Err(CssError::NotNested(h.len()));
        }
        if let Some(i) = (0..g.len()).find(|&i| g[i] != h[i]) {
            return Err(CssError::NotNested(i));
        }
        let mut leads = Vec::with_capacity(h.len());
        for (i, row) in h.iter().enumerate() {
            let l = leading(row).ok_or(CssError::NotEchelon(i))?;
            if row[l] != Elem::ONE || h[i + 1..].iter().any(|later| !later[l].is_zero()) {
                return Err(CssError::NotEchelon(i));
            }
            leads.push(l);
        }
        if h.len() == g.len() {
            return Err(CssError::NoLogicalQudits);
        }
        Ok(CssInput { field, g, h, leads })
    }

    /// Brings arbitrary generator matrices of `C2^perp` and `C1` into the
    /// required shape: `G` in reduced echelon form, followed by a reduced
    /// complement of `C1`.
    pub fn echelonized(field: Field, g: Matrix, h: Matrix) -> Result<Self, CssError> {
        let n = check_shape("G", &g)?;
        let nh = check_shape("H", &h)?;
        if n != nh {
            return Err(CssError::WidthMismatch { g: n, h: nh });
        }
        let mut g2 = g.clone();
        let gp = linalg::rref(&field, &mut g2);
        g2.truncate(gp.len());
        for (i, row) in g.iter().enumerate() {
            if !linalg::in_span(&field, &h, row) {
                return Err(CssError::NotNested(i));
            }
        }
        let h2 = complete(&field, &g2, &gp, &h);
        CssInput::new(field, g2, h2)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.g[0].len()
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// `k1 = dim C1`.
    pub fn k1(&self) -> usize {
        self.h.len()
    }

    /// `k2 = n - dim C2^perp`.
    pub fn k2(&self) -> usize {
        self.n() - self.g.len()
    }

    /// Logical qudits, `k1 + k2 - n`.
    pub fn k(&self) -> usize {
        self.h.len() - self.g.len()
    }

    /// Leading column of every row of `H`.
    pub fn leads(&self) -> &[usize] {
        &self.leads
    }

    /// The qudits carrying the message: leading columns of the rows of
    /// `H` beyond `G`, ascending.
    pub fn message_qudits(&self) -> Vec<usize> {
        let mut m = self.leads[self.g.len()..].to_vec();
        m.sort_unstable();
        m
    }

    /// The coset representative `w in C1` for a message indexed like
    /// [`Self::message_qudits`].
    pub fn coset_word(&self, message: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mq = self.message_qudits();
        let mut w = vec![Elem::ZERO; self.n()];
        for (row, &l) in self.h.iter().zip(&self.leads).skip(self.g.len()) {
            let pos = mq.iter().position(|&q| q == l).expect("message lead");
            let c = message[pos];
            for (wj, &hj) in w.iter_mut().zip(row) {
                *wj = f.add(*wj, f.mul(c, hj));
            }
        }
        w
    }

    /// Stabilizer of the code: `X` rows from `G`, `Z` rows spanning `C1^perp`.
    pub fn stabilizer(&self) -> Result<StabilizerMatrix, CssError> {
        let n = self.n();
        let zero = vec![Elem::ZERO; n];
        let mut rows: Vec<PauliLabel> =
            self.g.iter().map(|g| PauliLabel::new(g.clone(), zero.clone())).collect::<Result<_, _>>()?;
        for v in linalg::nullspace(&self.field, &self.h, n) {
            rows.push(PauliLabel::new(zero.clone(), v)?);
        }
        Ok(StabilizerMatrix::new(self.field.clone(), n, rows)?)
    }

    /// The pair with the roles of the two classical codes exchanged:
    /// `C1^perp <= C2`. Its code is the image of this one under a Fourier
    /// transform on every qudit.
    pub fn swapped(&self) -> Result<CssInput, CssError> {
        let n = self.n();
        let mut g2 = linalg::nullspace(&self.field, &self.h, n);
        let gp = linalg::rref(&self.field, &mut g2);
        let outer = linalg::nullspace(&self.field, &self.g, n);
        let h2 = complete(&self.field, &g2, &gp, &outer);
        CssInput::new(self.field.clone(), g2, h2)
    }
}

/// `[inner; E]` where `E` reduces `outer` against the leading columns of the
/// reduced matrix `inner` and is itself in reduced echelon form.
fn complete(field: &Field, inner: &Matrix, inner_leads: &[usize], outer: &Matrix) -> Matrix {
    let mut rest: Matrix = outer
        .iter()
        .map(|row| {
            let mut v = row.clone();
            for (g, &l) in inner.iter().zip(inner_leads) {
                let c = v[l];
                if !c.is_zero() {
                    for (vj, &gj) in v.iter_mut().zip(g) {
                        *vj = field.sub(*vj, field.mul(c, gj));
                    }
                }
            }
            v
        })
        .collect();
    let p = linalg::rref(field, &mut rest);
    rest.truncate(p.len());
    inner.iter().cloned().chain(rest).collect()
}

/// `(fourier, add_max, mult_max)` for an `[n, k1]` / `[n, k2]` pair.
pub fn css_gate_bounds(n: usize, k1: usize, k2: usize) -> (usize, usize, usize) {
    let add = k1 * n - k1 * (k1 + 1) / 2;
    (n - k2, add, add + n - 1)
}

/// The encoder. Per row of `H`, the multiplications `M_{1/h}` on all
/// targets precede the row's ADD cascade and `M_h` follow it; entries equal
/// to 1 need neither. Adjacent multiplications are kept separate.
pub fn synthesize_css(input: &CssInput) -> Circuit {
    let f = &input.field;
    let n = input.n();
    let mut c = Circuit::new(f.clone(), n, Direction::Encoder);
    for &l in &input.leads[..input.g.len()] {
        c.gates.push(Gate::Fourier { qudit: l });
    }
    for (row, &lead) in input.h.iter().zip(&input.leads).rev() {
        let entries: Vec<(usize, Elem)> =
            row.iter().enumerate().filter(|&(j, v)| j != lead && !v.is_zero()).map(|(j, &v)| (j, v)).collect();
        for &(j, v) in &entries {
            if v != Elem::ONE {
                c.gates.push(Gate::Mult { qudit: j, gamma: f.inv(v).expect("nonzero") });
            }
        }
        for &(j, _) in &entries {
            c.gates.push(Gate::Add { control: lead, target: j });
        }
        for &(j, v) in &entries {
            if v != Elem::ONE {
                c.gates.push(Gate::Mult { qudit: j, gamma: v });
            }
        }
    }
    let message = input.message_qudits();
    c.pivots = (0..n).filter(|q| !message.contains(q)).collect();
    c
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CssOptions {
    pub swap_roles: bool,
    pub merge_mult: bool,
}

#[derive(Debug, Clone)]
pub struct CssSynthesis {
    pub circuit: Circuit,
    /// Whether the role-swapped construction was cheaper and is used.
    pub swapped: bool,
    pub counts: GateCounts,
}

/// [`synthesize_css`] with the optional post-passes.
///
/// With `swap_roles`, the circuit for the exchanged pair is followed by an
/// inverse Fourier transform on every qudit so that it encodes the same
/// code; it is kept only if its total gate count is lower.
pub fn synthesize_css_with(input: &CssInput, opts: CssOptions) -> Result<CssSynthesis, CssError> {
    let finish = |c: Circuit| if opts.merge_mult { c.merge_mult() } else { c };
    let direct = finish(synthesize_css(input));
    let mut best = CssSynthesis { counts: direct.counts(), circuit: direct, swapped: false };
    if opts.swap_roles {
        let other = input.swapped()?;
        let mut c = synthesize_css(&other);
        for q in 0..c.n {
            c.gates.extend(Gate::Fourier { qudit: q }.inverse(&input.field));
        }
        let c = finish(c);
        if c.counts().total() < best.counts.total() {
            best = CssSynthesis { counts: c.counts(), circuit: c, swapped: true };
        }
    }
    Ok(best)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::gf::tests::{gf, gf3, gf8};

    fn m(rows: &[&[u32]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| Elem::new_unchecked(v)).collect()).collect()
    }

    // alpha^k under x^3 + x + 1: 1, 2, 4, 3, 6, 7, 5
    pub(crate) fn seven_three() -> CssInput {
        let g = m(&[&[1, 0, 3, 1, 3, 2, 2], &[0, 1, 6, 1, 7, 7, 6]]);
        let h = m(&[
            &[1, 0, 3, 1, 3, 2, 2],
            &[0, 1, 6, 1, 7, 7, 6],
            &[0, 0, 1, 0, 0, 3, 7],
            &[0, 0, 0, 1, 0, 2, 7],
            &[0, 0, 0, 0, 1, 2, 6],
        ]);
        CssInput::new(gf8(), g, h).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(css_gate_bounds(7, 5, 5), (2, 20, 26));
        assert_eq!(css_gate_bounds(9, 1, 9), (0, 8, 16));
        let n = 6;
        assert_eq!(css_gate_bounds(n, n, n), (0, n * (n - 1) / 2, n * (n - 1) / 2 + n - 1));
    }

    #[test]
    fn seven_three_counts() {
        let input = seven_three();
        assert_eq!((input.k1(), input.k2(), input.k()), (5, 5, 3));
        let c = synthesize_css(&input);
        let counts = c.counts();
        assert_eq!(counts.fourier, 2);
        assert_eq!(counts.add, 16);
        assert_eq!(counts.mult, 28);
        let (fb, ab, mb) = css_gate_bounds(7, 5, 5);
        assert_eq!(counts.fourier, fb);
        assert!(counts.add <= ab);
        assert!(c.merge_mult().counts().mult <= mb);
        assert_eq!(input.message_qudits(), vec![2, 3, 4]);
        assert_eq!(c.pivots, vec![0, 1, 5, 6]);
    }

    #[test]
    fn stabilizer_shape() {
        let s = seven_three().stabilizer().unwrap();
        assert_eq!((s.n(), s.k()), (7, 3));
    }

    #[test]
    fn tiny_examples() {
        let f2 = gf(2, &[0, 1]);
        let g = m(&[&[1, 0, 0]]);
        let h = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let c = synthesize_css(&CssInput::new(f2, g, h).unwrap());
        assert_eq!(c.gates, vec![Gate::Fourier { qudit: 0 }]);

        let g = m(&[&[1, 1, 0]]);
        let h = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let c = synthesize_css(&CssInput::new(gf3(), g, h).unwrap());
        assert_eq!(c.gates, vec![Gate::Fourier { qudit: 0 }, Gate::Add { control: 0, target: 1 }]);
    }

    #[test]
    fn input_errors() {
        let f = gf3();
        let g = m(&[&[1, 1, 0]]);
        assert_eq!(CssInput::new(f.clone(), g.clone(), m(&[&[1, 1, 0], &[1, 0, 1]])), Err(CssError::NotEchelon(0)));
        assert_eq!(CssInput::new(f.clone(), g.clone(), m(&[&[1, 0, 0], &[0, 1, 0]])), Err(CssError::NotNested(0)));
        assert_eq!(CssInput::new(f.clone(), g.clone(), m(&[&[1, 1, 0]])), Err(CssError::NoLogicalQudits));
        assert_eq!(CssInput::new(f.clone(), g.clone(), m(&[&[1, 1, 0], &[0, 2, 1]])), Err(CssError::NotEchelon(1)));
        assert!(matches!(CssInput::new(f, g, m(&[&[1, 1]])), Err(CssError::WidthMismatch { .. })));
    }

    #[test]
    fn echelonized_and_swapped() {
        let input = seven_three();
        let again = CssInput::echelonized(gf8(), input.g().clone(), input.h().clone()).unwrap();
        assert_eq!(again.k(), 3);
        let sw = input.swapped().unwrap();
        assert_eq!((sw.n(), sw.k()), (7, 3));
        // roles exchanged: dim C1^perp = n - k1, dim C2 = k2
        assert_eq!((sw.g().len(), sw.k1()), (2, 5));
    }
}
