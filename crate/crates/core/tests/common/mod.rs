// Shared helpers for the integration tests. Each test binary uses a subset.
#![allow(dead_code)]

use std::path::PathBuf;

use num_complex::Complex64;
use quditsynth::format;
use quditsynth::gates::Gate;
use quditsynth::gf::{Elem, Field, FieldSpec};
use quditsynth::pauli::{PauliLabel, StabilizerMatrix};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load_stabilizer(name: &str) -> StabilizerMatrix {
    format::parse_stabilizer(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn field(p: u32, modulus: &[u32]) -> Field {
    Field::new(FieldSpec { p, m: modulus.len() as u32 - 1, modulus: modulus.to_vec() }).unwrap()
}

pub fn gf2() -> Field {
    field(2, &[0, 1])
}
pub fn gf3() -> Field {
    field(3, &[0, 1])
}
pub fn gf4() -> Field {
    field(2, &[1, 1, 1])
}
pub fn gf5() -> Field {
    field(5, &[0, 1])
}
pub fn gf8() -> Field {
    field(2, &[1, 1, 0, 1])
}
pub fn gf9() -> Field {
    field(3, &[1, 0, 1])
}

pub fn e(f: &Field, v: u32) -> Elem {
    f.elem(v).unwrap()
}

/// Parses a printed `X | Z` block: one row per line, `2n` integers.
pub fn rows(f: &Field, text: &str) -> Vec<PauliLabel> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let v: Vec<Elem> = l.split_whitespace().filter(|t| *t != "|").map(|t| e(f, t.parse().unwrap())).collect();
            PauliLabel::from_vector(&v)
        })
        .collect()
}

/// The printed stages of the [[9,5,3]]_3 reduction: after T_1, after A_1,
/// and after rows 2, 3 and 4.
pub const NINE_FIVE_AFTER_T1: &str = "
    1 0 1 1 1 1 1 1 1 | 0 0 0 0 0 0 0 0 0
    0 1 2 1 0 1 1 2 0 | 0 0 1 2 1 1 0 2 2
    0 0 1 2 2 1 0 1 1 | 1 0 2 2 2 1 1 2 1
    0 0 1 1 1 2 0 0 2 | 0 1 1 0 2 1 1 1 0";
pub const NINE_FIVE_AFTER_A1: &str = "
    1 0 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 1 2 1 0 1 1 2 0 | 0 0 1 2 1 1 0 2 2
    0 0 1 2 2 1 0 1 1 | 0 0 2 2 2 1 1 2 1
    0 0 1 1 1 2 0 0 2 | 0 1 1 0 2 1 1 1 0";
pub const NINE_FIVE_AFTER_ROW2: &str = "
    1 0 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 1 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 0 2 2 2 1 0 2 2 | 0 0 0 1 1 0 1 2 1
    0 0 2 1 2 2 0 0 0 | 0 0 1 1 2 2 1 2 2";
pub const NINE_FIVE_AFTER_ROW3: &str = "
    1 0 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 1 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 0 1 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 0 1 1 0 1 0 2 2 | 0 0 0 1 2 2 0 1 1";
pub const NINE_FIVE_AFTER_ROW4: &str = "
    1 0 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 1 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 0 1 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0
    0 0 1 1 0 0 0 0 0 | 0 0 0 0 0 0 0 0 0";

/// Weight in a self-dual basis: the coordinate of `a` on `b_i` is `tr(a b_i)`.
pub fn oracle_wgt(f: &Field, a: Elem) -> u32 {
    f.self_dual_basis().unwrap().elements().iter().map(|&b| f.trace(f.mul(a, b))).sum()
}

pub fn oracle_sqrt(f: &Field, a: Elem) -> Elem {
    f.elements().find(|&x| f.mul(x, x) == a).unwrap()
}

fn omega(f: &Field, t: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / f.p() as f64)
}

/// Matrix of a gate on `n` qudits built straight from the gate definitions,
/// independently of the library's simulator and tableau code. Qudit 0 is the
/// most significant digit.
pub fn oracle_gate(f: &Field, g: &Gate, n: usize) -> Vec<Vec<Complex64>> {
    let q = f.q() as usize;
    let dim = q.pow(n as u32);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    let el = |v: usize| f.elem(v as u32).unwrap();
    for col in 0..dim {
        let d = digits(col, q, n);
        let mut put = |j: usize, v: usize, amp: Complex64| {
            let mut out = d.clone();
            out[j] = v;
            let row = undigits(&out, q);
            m[row][col] += amp;
        };
        let one = Complex64::new(1.0, 0.0);
        match *g {
            Gate::Fourier { qudit } => {
                let s = 1.0 / (q as f64).sqrt();
                for y in 0..q {
                    put(qudit, y, omega(f, f.trace(f.mul(el(d[qudit]), el(y)))) * s);
                }
            }
            Gate::Mult { qudit, gamma } => put(qudit, f.mul(gamma, el(d[qudit])).repr() as usize, one),
            Gate::Phase { qudit, gamma } => {
                let x = el(d[qudit]);
                let amp = if f.p() == 2 {
                    let w = oracle_wgt(f, f.mul(oracle_sqrt(f, gamma), x));
                    Complex64::new(0.0, -1.0).powu(w)
                } else {
                    let half = f.inv(f.from_int(2)).unwrap();
                    omega(f, f.trace(f.mul(half, f.mul(gamma, f.mul(x, x))))).conj()
                };
                put(qudit, d[qudit], amp);
            }
            Gate::PauliX { qudit, alpha } => put(qudit, f.add(el(d[qudit]), alpha).repr() as usize, one),
            Gate::PauliZ { qudit, beta } => put(qudit, d[qudit], omega(f, f.trace(f.mul(beta, el(d[qudit]))))),
            Gate::Add { control, target } => put(target, f.add(el(d[target]), el(d[control])).repr() as usize, one),
            Gate::AddInv { control, target } => put(target, f.sub(el(d[target]), el(d[control])).repr() as usize, one),
            Gate::Horner { a, x, target } => {
                let v = f.add(el(d[target]), f.mul(el(d[a]), el(d[x])));
                put(target, v.repr() as usize, one)
            }
        }
    }
    m
}

/// `omega^phase X_x Z_z`, with the phase given in units of `exp(2 pi i / N)`,
/// `N = 4` for `p = 2` and `N = p` otherwise.
pub fn oracle_pauli(f: &Field, label: &PauliLabel, phase: u32) -> Vec<Vec<Complex64>> {
    let q = f.q() as usize;
    let n = label.n();
    let dim = q.pow(n as u32);
    let big_n = if f.p() == 2 { 4.0 } else { f.p() as f64 };
    let base = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase as f64 / big_n);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let d = digits(col, q, n);
        let mut amp = base;
        let mut out = d.clone();
        for j in 0..n {
            let x = f.elem(d[j] as u32).unwrap();
            amp *= omega(f, f.trace(f.mul(label.z[j], x)));
            out[j] = f.add(x, label.x[j]).repr() as usize;
        }
        m[undigits(&out, q)][col] = amp;
    }
    m
}

pub fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut c = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn adjoint(a: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter().zip(b).flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).norm())).fold(0.0, f64::max)
}

pub fn digits(mut idx: usize, q: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for j in (0..n).rev() {
        d[j] = idx % q;
        idx /= q;
    }
    d
}

pub fn undigits(d: &[usize], q: usize) -> usize {
    d.iter().fold(0, |acc, &v| acc * q + v)
}

/// Minimum weight of a label that commutes with every row but is not in
/// their span, by enumerating all `q^(2n)` labels. Tiny codes only.
pub fn oracle_distance(m: &StabilizerMatrix) -> usize {
    let f = m.field();
    let n = m.n();
    let q = f.q() as usize;
    let span = span_set(f, m.rows());
    let mut best = usize::MAX;
    for code in 1..q.pow(2 * n as u32) {
        let v: Vec<Elem> = digits(code, q, 2 * n).iter().map(|&d| e(f, d as u32)).collect();
        let l = PauliLabel::from_vector(&v);
        let w = l.weight();
        if w >= best {
            continue;
        }
        let commutes = m.rows().iter().all(|r| {
            let s: u32 = (0..n).map(|j| f.trace(f.sub(f.mul(l.x[j], r.z[j]), f.mul(r.x[j], l.z[j])))).sum();
            s % f.p() == 0
        });
        if commutes && !span.contains(&v) {
            best = w;
        }
    }
    best
}

/// Every F_q-combination of the rows, as flat `(x|z)` vectors.
pub fn span_set(f: &Field, gens: &[PauliLabel]) -> std::collections::HashSet<Vec<Elem>> {
    let mut set = std::collections::HashSet::new();
    let len = gens.first().map_or(0, |g| 2 * g.n());
    set.insert(vec![Elem::ZERO; len]);
    for g in gens {
        let mut next = set.clone();
        for v in &set {
            for c in f.nonzero_elements() {
                let w: Vec<Elem> = v.iter().zip(g.to_vector()).map(|(&a, b)| f.add(a, f.mul(c, b))).collect();
                next.insert(w);
            }
        }
        set = next;
    }
    set
}
