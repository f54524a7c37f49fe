//! Error-group labels, the trace-symplectic product and stabilizer matrices.
//!
//! A label `(x | z)` stands for `X_x Z_z = (X_{x_1} Z_{z_1}) ⊗ ... ⊗ (X_{x_n} Z_{z_n})`.
//! Phases are integers modulo [`Field::phase_modulus`].

use std::fmt;

use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::linalg;

/// Enumeration cap used by [`StabilizerMatrix::min_distance_bruteforce`] when
/// the caller has no better bound.
pub const DEFAULT_DISTANCE_CAP: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("label lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("labels must act on at least one qudit")]
    Empty,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("rows {} and {} do not commute", .0 + 1, .1 + 1)]
    NotAbelian(usize, usize),
    #[error("row {} is linearly dependent on the rows above it", .0 + 1)]
    RankDeficient(usize),
    #[error("{rows} generators on {n} qudits leave no logical qudit (need k >= 1)")]
    NoLogicalQudits { n: usize, rows: usize },
    #[error("stabilizer matrix has no rows")]
    NoRows,
    #[error("enumeration of {count} vectors exceeds the cap {cap}")]
    TooLarge { count: u128, cap: u64 },
    #[error("row index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("a row cannot be added to itself")]
    SameRow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    pub x: Vec<Elem>,
    pub z: Vec<Elem>,
}

impl PauliLabel {
    pub fn new(x: Vec<Elem>, z: Vec<Elem>) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::LengthMismatch(x.len(), z.len()));
        }
        if x.is_empty() {
            return Err(PauliError::Empty);
        }
        Ok(PauliLabel { x, z })
    }

    pub fn identity(n: usize) -> Self {
        PauliLabel { x: vec![Elem::ZERO; n], z: vec![Elem::ZERO; n] }
    }

    /// `X_alpha Z_beta` on qudit `j`, identity elsewhere.
    pub fn single(n: usize, j: usize, alpha: Elem, beta: Elem) -> Self {
        let mut l = Self::identity(n);
        l.x[j] = alpha;
        l.z[j] = beta;
        l
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Number of positions where `x_i` or `z_i` is nonzero.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(a, b)| !a.is_zero() || !b.is_zero()).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    pub fn scaled(&self, field: &Field, gamma: Elem) -> Self {
        PauliLabel {
            x: self.x.iter().map(|&a| field.mul(gamma, a)).collect(),
            z: self.z.iter().map(|&a| field.mul(gamma, a)).collect(),
        }
    }

    pub fn plus(&self, field: &Field, other: &Self) -> Self {
        PauliLabel {
            x: self.x.iter().zip(&other.x).map(|(&a, &b)| field.add(a, b)).collect(),
            z: self.z.iter().zip(&other.z).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    /// The `2n` entries `x_1..x_n, z_1..z_n`.
    pub fn to_vector(&self) -> Vec<Elem> {
        self.x.iter().chain(&self.z).copied().collect()
    }

    pub fn from_vector(v: &[Elem]) -> Self {
        let n = v.len() / 2;
        PauliLabel { x: v[..n].to_vec(), z: v[n..].to_vec() }
    }

    fn check_len(&self, other: &Self) -> Result<(), PauliError> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(PauliError::LengthMismatch(self.n(), other.n()))
        }
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Elem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "{} | {}", join(&self.x), join(&self.z))
    }
}

/// `(a, b) * (a', b') = sum_i tr(a'_i b_i - a_i b'_i)`, as an integer mod p.
pub fn symplectic_product(field: &Field, a: &PauliLabel, b: &PauliLabel) -> Result<u32, PauliError> {
    a.check_len(b)?;
    Ok(field.trace(symplectic_form(field, a, b)))
}

/// The F_q-valued form `sum_i (a'_i b_i - a_i b'_i)`. Its trace is the
/// symplectic product; it vanishes iff every F_q-multiple of `a` commutes
/// with `b`.
pub fn symplectic_form(field: &Field, a: &PauliLabel, b: &PauliLabel) -> Elem {
    let mut acc = Elem::ZERO;
    for i in 0..a.n() {
        let t = field.sub(field.mul(b.x[i], a.z[i]), field.mul(a.x[i], b.z[i]));
        acc = field.add(acc, t);
    }
    acc
}

/// Exponent `e` of omega in `(X_a Z_b)(X_a' Z_b') = omega^e (X_a' Z_b')(X_a Z_b)`.
pub fn commutation_phase(field: &Field, a: &PauliLabel, b: &PauliLabel) -> Result<u32, PauliError> {
    symplectic_product(field, a, b)
}

/// `zeta^phase X_x Z_z` with `zeta = exp(2 pi i / N)`, `N = field.phase_modulus()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    pub label: PauliLabel,
    pub phase: u32,
}

impl PauliOperator {
    pub fn new(label: PauliLabel) -> Self {
        PauliOperator { label, phase: 0 }
    }

    pub fn with_phase(label: PauliLabel, phase: u32) -> Self {
        PauliOperator { label, phase }
    }
}

/// Product in normal form: moving `Z_b` past `X_a'` contributes `omega^{tr(b a')}`.
pub fn multiply(field: &Field, a: &PauliOperator, b: &PauliOperator) -> Result<PauliOperator, PauliError> {
    a.label.check_len(&b.label)?;
    let n_mod = field.phase_modulus();
    let swap: u32 = (0..a.label.n()).map(|i| field.trace(field.mul(a.label.z[i], b.label.x[i]))).sum::<u32>();
    let phase = (a.phase + b.phase + field.omega_units() * swap) % n_mod;
    Ok(PauliOperator { label: a.label.plus(field, &b.label), phase })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: Option<u32>,
    pub q: u32,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "[[{},{},{}]]_{}", self.n, self.k, d, self.q),
            None => write!(f, "[[{},{}]]_{}", self.n, self.k, self.q),
        }
    }
}

/// The `(n-k) x 2n` matrix `(X|Z)` whose rows generate the stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerMatrix {
    field: Field,
    n: usize,
    rows: Vec<PauliLabel>,
}

impl StabilizerMatrix {
    /// Builds and validates a stabilizer matrix.
    pub fn new(field: Field, n: usize, rows: Vec<PauliLabel>) -> Result<Self, PauliError> {
        let m = Self::unchecked(field, n, rows)?;
        m.validate()?;
        Ok(m)
    }

    /// Builds a matrix checking only shapes, not commutation or rank.
    pub fn unchecked(field: Field, n: usize, rows: Vec<PauliLabel>) -> Result<Self, PauliError> {
        if n == 0 {
            return Err(PauliError::Empty);
        }
        if let Some(r) = rows.iter().find(|r| r.n() != n) {
            return Err(PauliError::LengthMismatch(n, r.n()));
        }
        Ok(StabilizerMatrix { field, n, rows })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n.saturating_sub(self.rows.len())
    }

    pub fn rows(&self) -> &[PauliLabel] {
        &self.rows
    }

    /// Checks pairwise orthogonality and full rank; returns `(n, k, q)`.
    pub fn validate(&self) -> Result<CodeParameters, PauliError> {
        if self.rows.is_empty() {
            return Err(PauliError::NoRows);
        }
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if !symplectic_form(&self.field, &self.rows[i], &self.rows[j]).is_zero() {
                    return Err(PauliError::NotAbelian(i, j));
                }
            }
        }
        let vecs: Vec<Vec<Elem>> = self.rows.iter().map(PauliLabel::to_vector).collect();
        if let Some(r) = linalg::first_dependent_row(&self.field, &vecs) {
            return Err(PauliError::RankDeficient(r));
        }
        if self.rows.len() >= self.n {
            return Err(PauliError::NoLogicalQudits { n: self.n, rows: self.rows.len() });
        }
        Ok(CodeParameters { n: self.n, k: self.k(), d: None, q: self.field.q() })
    }

    /// An F_q basis of the symplectic dual `C*` (dimension `n + k`).
    pub fn symplectic_dual(&self) -> Vec<PauliLabel> {
        let f = &self.field;
        // v in C*  <=>  sum_i (v.x_i r.z_i - r.x_i v.z_i) = 0 for every row r
        let eqs: Vec<Vec<Elem>> =
            self.rows.iter().map(|r| r.z.iter().copied().chain(r.x.iter().map(|&a| f.neg(a))).collect()).collect();
        linalg::nullspace(f, &eqs, 2 * self.n).iter().map(|v| PauliLabel::from_vector(v)).collect()
    }

    /// Minimum weight over `C* \ C`, by enumerating the dual.
    ///
    /// The dual basis is arranged as the rows of `C` followed by a
    /// complement; vectors whose complement coordinates all vanish lie in
    /// `C` and are skipped.
    pub fn min_distance_bruteforce(&self, cap: u64) -> Result<u32, PauliError> {
        let params = self.validate()?;
        let f = &self.field;
        let q = f.q() as u128;
        let count = q.checked_pow((params.n + params.k) as u32).unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(PauliError::TooLarge { count, cap });
        }

        let mut basis: Vec<Vec<Elem>> = self.rows.iter().map(PauliLabel::to_vector).collect();
        let inner_dim = basis.len();
        for v in self.symplectic_dual() {
            let v = v.to_vector();
            if !linalg::in_span(f, &basis, &v) {
                basis.push(v);
            }
        }
        debug_assert_eq!(basis.len(), params.n + params.k);

        // Expand to an F_p basis: x^t * b for each F_q basis vector b.
        let poly = f.polynomial_basis();
        let expand = |vs: &[Vec<Elem>]| -> Vec<Vec<Elem>> {
            vs.iter()
                .flat_map(|b| poly.iter().map(move |&t| b.iter().map(|&e| f.mul(t, e)).collect::<Vec<_>>()))
                .collect()
        };
        let mut digits_basis = expand(&basis[..inner_dim]);
        let inner_digits = digits_basis.len();
        digits_basis.extend(expand(&basis[inner_dim..]));
        let total = digits_basis.len();
        if total == inner_digits {
            // C* = C cannot happen for k >= 1.
            unreachable!("dual strictly contains the code when k >= 1");
        }

        let p = f.p();
        let n = self.n;
        let mut digits = vec![0u32; total];
        digits[inner_digits] = 1;
        let mut v = digits_basis[inner_digits].clone();
        let weight = |v: &[Elem]| (0..n).filter(|&i| !v[i].is_zero() || !v[i + n].is_zero()).count() as u32;
        let mut best = u32::MAX;
        loop {
            let w = weight(&v);
            if w < best {
                best = w;
                if best == 1 {
                    break;
                }
            }
            // odometer increment over F_p digits
            let mut j = 0;
            loop {
                if j == total {
                    return Ok(best);
                }
                digits[j] += 1;
                for (e, &b) in v.iter_mut().zip(&digits_basis[j]) {
                    *e = f.add(*e, b);
                }
                if digits[j] == p {
                    digits[j] = 0;
                    j += 1;
                } else {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// Replaces row `dst` by `row_dst + scale * row_src`. The generated group
    /// and the code are unchanged.
    pub fn apply_row_addition(&self, src: usize, dst: usize, scale: Elem) -> Result<Self, PauliError> {
        if src >= self.rows.len() {
            return Err(PauliError::IndexOutOfRange(src));
        }
        if dst >= self.rows.len() {
            return Err(PauliError::IndexOutOfRange(dst));
        }
        if src == dst {
            return Err(PauliError::SameRow);
        }
        let mut out = self.clone();
        let add = self.rows[src].scaled(&self.field, scale);
        out.rows[dst] = self.rows[dst].plus(&self.field, &add);
        Ok(out)
    }

    /// Rows as plain integer matrices `(X, Z)`, for comparisons and display.
    pub fn to_int_rows(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        self.rows
            .iter()
            .map(|r| (r.x.iter().map(|e| e.repr()).collect(), r.z.iter().map(|e| e.repr()).collect()))
            .collect()
    }
}

impl fmt::Display for StabilizerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
