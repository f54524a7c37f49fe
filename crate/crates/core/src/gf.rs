//! Exact arithmetic in GF(p^m).
//!
//! Elements are stored as integers in `[0, q)` encoding the coefficient
//! vector of the polynomial basis: `a_0 + a_1 p + ... + a_{m-1} p^{m-1}`,
//! where `a_i` is the coefficient of `x^i`. All arithmetic goes through
//! lookup tables built once per field, so fields are limited to
//! `q <= MAX_ORDER`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus needs {expected} coefficients c0..cm, got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus is not monic (leading coefficient {0})")]
    NotMonic(u32),
    #[error("modulus coefficient {coeff} is not in [0, {p})")]
    CoefficientRange { coeff: u32, p: u32 },
    #[error("modulus is reducible over F_{p} (divisible by a degree-{degree} factor)")]
    Reducible { p: u32, degree: u32 },
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs characteristic 2 but p = {0}")]
    UnsupportedField(u32),
    #[error("value {value} is not a field element for q = {q}")]
    OutOfRange { value: u32, q: u32 },
}

/// Description of a field: prime, extension degree and the monic modulus
/// polynomial (coefficients `c_0..c_m`, low to high).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "field p={} m={} poly={}", self.p, self.m, poly.join(","))
    }
}

/// A field element in polynomial-basis integer encoding.
///
/// `Elem` carries no reference to its field; containers such as
/// [`crate::pauli::StabilizerMatrix`] own the field and check compatibility.
/// Use [`FieldElement`] when a self-describing value is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub(crate) const fn new_unchecked(repr: u32) -> Elem {
        Elem(repr)
    }

    pub fn repr(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    spec: FieldSpec,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u16>,
    self_dual: Option<SelfDualBasis>,
}

/// An arithmetic context for GF(p^m). Cheap to clone.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.spec == other.t.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.spec.p, self.t.spec.m)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.t.spec.fmt(f)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `num` modulo the monic polynomial `den` over F_p.
/// Both are coefficient vectors, low to high.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn check_irreducible(modulus: &[u32], p: u32) -> Result<(), GfError> {
    let m = modulus.len() - 1;
    for degree in 1..=m / 2 {
        let count = (p as u64).pow(degree as u32);
        for code in 0..count {
            let mut d = Vec::with_capacity(degree + 1);
            let mut c = code;
            for _ in 0..degree {
                d.push((c % p as u64) as u32);
                c /= p as u64;
            }
            d.push(1);
            if poly_rem(modulus, &d, p).iter().all(|&c| c == 0) {
                return Err(GfError::Reducible { p, degree: degree as u32 });
            }
        }
    }
    Ok(())
}

impl Field {
    /// Builds GF(p^m) with the given modulus, checking primality of `p` and
    /// irreducibility of the modulus.
    pub fn new(spec: FieldSpec) -> Result<Field, GfError> {
        let FieldSpec { p, m, ref modulus } = spec;
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if order > MAX_ORDER as u64 {
            return Err(GfError::TooLarge(order));
        }
        if modulus.len() != m as usize + 1 {
            return Err(GfError::ModulusLength { expected: m as usize + 1, got: modulus.len() });
        }
        if let Some(&coeff) = modulus.iter().find(|&&c| c >= p) {
            return Err(GfError::CoefficientRange { coeff, p });
        }
        if modulus[m as usize] != 1 {
            return Err(GfError::NotMonic(modulus[m as usize]));
        }
        check_irreducible(modulus, p)?;
        let q = order as u32;
        let mut t = Tables {
            q,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            trace: Vec::new(),
            self_dual: None,
            spec,
        };
        build_tables(&mut t);
        let mut field = Field { t: Arc::new(t) };
        if p == 2 {
            let basis = find_self_dual_basis(&field)?;
            let mut t = Arc::try_unwrap(field.t).ok().expect("field tables are not shared yet");
            t.self_dual = Some(basis);
            field = Field { t: Arc::new(t) };
        }
        Ok(field)
    }

    /// GF(p) with modulus `x`.
    pub fn prime(p: u32) -> Result<Field, GfError> {
        Field::new(FieldSpec { p, m: 1, modulus: vec![0, 1] })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.t.spec
    }

    pub fn p(&self) -> u32 {
        self.t.spec.p
    }

    pub fn m(&self) -> u32 {
        self.t.spec.m
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    pub fn elem(&self, repr: u32) -> Result<Elem, GfError> {
        if repr < self.t.q {
            Ok(Elem(repr))
        } else {
            Err(GfError::OutOfRange { value: repr, q: self.t.q })
        }
    }

    /// The element `c` of the prime subfield (`c` taken mod p).
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p() as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.t.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.t.q).map(Elem)
    }

    #[inline]
    fn idx(&self, a: Elem, b: Elem) -> usize {
        a.0 as usize * self.t.q as usize + b.0 as usize
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.t.add[self.idx(a, b)] as u32)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.t.neg[a.0 as usize] as u32)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.t.mul[self.idx(a, b)] as u32)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a.is_zero() {
            Err(GfError::DivisionByZero)
        } else {
            Ok(Elem(self.t.inv[a.0 as usize] as u32))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: Elem) -> u32 {
        self.t.trace[a.0 as usize] as u32
    }

    /// Exponent of the additive character `chi_beta(z) = omega^{tr(beta z)}`.
    pub fn character(&self, beta: Elem, z: Elem) -> u32 {
        self.trace(self.mul(beta, z))
    }

    /// `1/2`, defined for odd characteristic only.
    pub fn half(&self) -> Option<Elem> {
        (self.p() != 2).then(|| self.inv(self.from_int(2)).expect("2 is invertible for odd p"))
    }

    /// The unique square root in characteristic 2 (`a^{2^{m-1}}`).
    pub fn sqrt_char2(&self, a: Elem) -> Result<Elem, GfError> {
        if self.p() != 2 {
            return Err(GfError::UnsupportedField(self.p()));
        }
        Ok(self.pow(a, 1u64 << (self.m() - 1)))
    }

    /// The self-dual basis fixed for this field (characteristic 2 only).
    pub fn self_dual_basis(&self) -> Result<&SelfDualBasis, GfError> {
        self.t.self_dual.as_ref().ok_or(GfError::UnsupportedField(self.p()))
    }

    /// Weight of `a` in the field's self-dual basis.
    pub fn wgt(&self, a: Elem) -> Result<u32, GfError> {
        Ok(self.self_dual_basis()?.wgt(self, a))
    }

    /// Modulus of phase exponents: phases are powers of `exp(2 pi i / N)`
    /// with `N = p` for odd `p` and `N = 4` for `p = 2`.
    pub fn phase_modulus(&self) -> u32 {
        if self.p() == 2 {
            4
        } else {
            self.p()
        }
    }

    /// Number of phase units making up one power of `omega = exp(2 pi i / p)`.
    pub fn omega_units(&self) -> u32 {
        if self.p() == 2 {
            2
        } else {
            1
        }
    }

    /// Coefficient vector (low to high) of `a`.
    pub fn coefficients(&self, a: Elem) -> Vec<u32> {
        let p = self.p();
        let mut v = a.0;
        (0..self.m())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    /// The element with the given coefficients (low to high, each below `p`).
    pub fn from_coefficients(&self, coeffs: &[u32]) -> Elem {
        let p = self.p();
        Elem(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c % p))
    }

    /// The polynomial basis `1, x, ..., x^{m-1}` of F_q over F_p.
    pub fn polynomial_basis(&self) -> Vec<Elem> {
        (0..self.m()).map(|i| Elem(self.p().pow(i))).collect()
    }
}

fn build_tables(t: &mut Tables) {
    let p = t.spec.p;
    let m = t.spec.m as usize;
    let q = t.q as usize;
    let digits = |v: usize| -> Vec<u32> {
        let mut v = v as u32;
        (0..m)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    };
    let undigits = |d: &[u32]| -> usize { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) as usize };
    let all: Vec<Vec<u32>> = (0..q).map(digits).collect();

    t.add = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
            t.add[a * q + b] = undigits(&s) as u16;
        }
    }
    t.neg = (0..q)
        .map(|a| {
            let s: Vec<u32> = all[a].iter().map(|&x| (p - x) % p).collect();
            undigits(&s) as u16
        })
        .collect();

    // a * x^k for all a, then a*b = sum_k b_k (a x^k).
    let times_x = |a: usize| -> usize {
        let mut d = all[a].clone();
        d.insert(0, 0);
        undigits(&poly_rem(&d, &t.spec.modulus, p))
    };
    let scale = |c: u32, a: usize| -> usize {
        let s: Vec<u32> = all[a].iter().map(|&x| (x * c) % p).collect();
        undigits(&s)
    };
    t.mul = vec![0; q * q];
    for a in 0..q {
        let mut shifted = Vec::with_capacity(m);
        let mut cur = a;
        for _ in 0..m {
            shifted.push(cur);
            cur = times_x(cur);
        }
        for b in 0..q {
            let mut acc = 0usize;
            for (k, &bk) in all[b].iter().enumerate() {
                if bk != 0 {
                    acc = t.add[acc * q + scale(bk, shifted[k])] as usize;
                }
            }
            t.mul[a * q + b] = acc as u16;
        }
    }
    t.inv = vec![0; q];
    for a in 1..q {
        let b = (1..q).find(|&b| t.mul[a * q + b] == 1).expect("nonzero element has an inverse");
        t.inv[a] = b as u16;
    }
    t.trace = (0..q)
        .map(|a| {
            let mut acc = 0usize;
            let mut cur = a;
            for _ in 0..m {
                acc = t.add[acc * q + cur] as usize;
                // cur <- cur^p
                let mut pw = 1usize;
                for _ in 0..p {
                    pw = t.mul[pw * q + cur] as usize;
                }
                cur = pw;
            }
            assert!(acc < p as usize, "trace must land in the prime subfield");
            acc as u16
        })
        .collect();
}

/// A basis `b_1..b_m` of F_{2^m} over F_2 with `tr(b_i b_j) = delta_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDualBasis {
    basis: Vec<Elem>,
}

impl SelfDualBasis {
    pub fn elements(&self) -> &[Elem] {
        &self.basis
    }

    /// Number of nonzero coordinates of `a`; coordinate `j` is `tr(a b_j)`.
    pub fn wgt(&self, field: &Field, a: Elem) -> u32 {
        self.basis.iter().filter(|&&b| field.trace(field.mul(a, b)) != 0).count() as u32
    }

    /// Coordinates of `a` in this basis.
    pub fn coordinates(&self, field: &Field, a: Elem) -> Vec<u32> {
        self.basis.iter().map(|&b| field.trace(field.mul(a, b))).collect()
    }

    /// Sum of the basis elements; `P_1^2 = Z_s` for this `s`.
    pub fn sum(&self, field: &Field) -> Elem {
        self.basis.iter().fold(Elem::ZERO, |acc, &b| field.add(acc, b))
    }
}

/// Lexicographically smallest self-dual basis (as an increasing tuple of
/// element encodings), found by depth-first search.
pub fn find_self_dual_basis(field: &Field) -> Result<SelfDualBasis, GfError> {
    if field.p() != 2 {
        return Err(GfError::UnsupportedField(field.p()));
    }
    fn extend(field: &Field, chosen: &mut Vec<Elem>, start: u32) -> bool {
        if chosen.len() == field.m() as usize {
            return true;
        }
        for v in start..field.q() {
            let b = Elem(v);
            if field.trace(field.mul(b, b)) != 1 {
                continue;
            }
            if chosen.iter().any(|&c| field.trace(field.mul(b, c)) != 0) {
                continue;
            }
            chosen.push(b);
            if extend(field, chosen, v + 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let found = extend(field, &mut chosen, 1);
    assert!(found, "every binary field has a self-dual basis");
    Ok(SelfDualBasis { basis: chosen })
}

/// A field element bundled with its field, for checked mixed-field use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, repr: u32) -> Result<Self, GfError> {
        Ok(FieldElement { value: field.elem(repr)?, field: field.clone() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn repr(&self) -> u32 {
        self.value.0
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn with(&self, value: Elem) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    /// Trace, as an element of the prime subfield of the same field.
    pub fn trace(&self) -> Self {
        self.with(Elem(self.field.trace(self.value)))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}
