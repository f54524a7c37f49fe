mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use quditsynth::gates::{Circuit, Direction, Gate};
use quditsynth::gf::{Elem, Field};
use quditsynth::pauli::{symplectic_form, symplectic_product, PauliLabel, PauliOperator};
use quditsynth::sim::{self, StateVector};
use quditsynth::synth_stab::{random_stabilizer, synthesize, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn fields() -> Vec<Field> {
    vec![gf2(), gf3(), gf4(), gf5(), gf8(), gf9()]
}

fn elem(f: &Field, raw: u32) -> Elem {
    e(f, raw % f.q())
}

fn label(f: &Field, raw: &[u32]) -> PauliLabel {
    PauliLabel::from_vector(&raw.iter().map(|&r| elem(f, r)).collect::<Vec<_>>())
}

fn random_gate(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Gate {
    let j = rng.gen_range(0..n);
    let any = e(f, rng.gen_range(0..f.q()));
    let nonzero = e(f, rng.gen_range(1..f.q()));
    let other = |rng: &mut ChaCha8Rng| (j + rng.gen_range(1..n)) % n;
    match rng.gen_range(0..if n > 1 { 7 } else { 5 }) {
        0 => Gate::Fourier { qudit: j },
        1 => Gate::Mult { qudit: j, gamma: nonzero },
        2 => Gate::Phase { qudit: j, gamma: any },
        3 => Gate::PauliX { qudit: j, alpha: any },
        4 => Gate::PauliZ { qudit: j, beta: any },
        5 => Gate::Add { control: j, target: other(rng) },
        _ => Gate::AddInv { control: j, target: other(rng) },
    }
}

fn random_circuit(f: &Field, n: usize, len: usize, rng: &mut ChaCha8Rng) -> Circuit {
    let mut c = Circuit::new(f.clone(), n, Direction::Encoder);
    c.gates = (0..len).map(|_| random_gate(f, n, rng)).collect();
    c
}

fn random_state(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let dim = (f.q() as usize).pow(n as u32);
    let mut amps: Vec<Complex64> =
        (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    StateVector::from_amplitudes(f, n, amps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..6, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[fi];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        prop_assert_eq!((f.trace(a) + f.trace(b)) % f.p(), f.trace(f.add(a, b)));
    }

    #[test]
    fn symplectic_bilinear(fi in 0usize..6, n in 1usize..5, raw in prop::collection::vec(any::<u32>(), 24), g in any::<u32>()) {
        let f = &fields()[fi];
        let a = label(f, &raw[..2 * n]);
        let b = label(f, &raw[8..8 + 2 * n]);
        let c = label(f, &raw[16..16 + 2 * n]);
        let g = elem(f, g);
        let p = f.p();
        let ac = symplectic_product(f, &a, &c).unwrap();
        let bc = symplectic_product(f, &b, &c).unwrap();
        prop_assert_eq!(symplectic_product(f, &a.plus(f, &b), &c).unwrap(), (ac + bc) % p);
        prop_assert_eq!(symplectic_product(f, &a, &a).unwrap(), 0);
        prop_assert_eq!((ac + symplectic_product(f, &c, &a).unwrap()) % p, 0);
        prop_assert_eq!(symplectic_form(f, &a.scaled(f, g), &c), f.mul(g, symplectic_form(f, &a, &c)));
    }

    /// Conjugation predicted by the tableau agrees with the simulator:
    /// `op U |psi> = U pull_back(op) |psi>`.
    #[test]
    fn tableau_matches_simulator(fi in 0usize..3, n in 1usize..4, seed in any::<u64>()) {
        let f = &[gf2(), gf3(), gf4()][fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(f, n, 12, &mut rng);
        let raw: Vec<u32> = (0..2 * n).map(|_| rng.gen()).collect();
        let op = PauliOperator::new(label(f, &raw));
        let psi = random_state(f, n, &mut rng);
        let mut lhs = psi.clone();
        lhs.apply_circuit(&c).unwrap();
        let lhs = lhs.apply_operator(&op).unwrap();
        let mut rhs = psi.apply_operator(&c.pull_back(&op).unwrap()).unwrap();
        rhs.apply_circuit(&c).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    /// The simulator's gate application agrees with matrices built from the
    /// gate definitions.
    #[test]
    fn simulator_matches_oracle(fi in 0usize..4, n in 1usize..3, seed in any::<u64>()) {
        let f = &[gf2(), gf3(), gf4(), gf5()][fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gate(f, n, &mut rng);
        let psi = random_state(f, n, &mut rng);
        let m = oracle_gate(f, &g, n);
        let want: Vec<Complex64> = m.iter().map(|row| row.iter().zip(psi.amplitudes()).map(|(a, b)| a * b).sum()).collect();
        let mut got = psi.clone();
        got.apply(&g).unwrap();
        let d = got.amplitudes().iter().zip(&want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(d < 1e-10, "{:?}: {}", g, d);
    }

    #[test]
    fn circuits_preserve_norm(fi in 0usize..3, n in 1usize..4, seed in any::<u64>()) {
        let f = &[gf2(), gf3(), gf8()][fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_circuit(f, n, 20, &mut rng);
        let mut psi = random_state(f, n, &mut rng);
        psi.apply_circuit(&c).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-9);
        psi.apply_circuit(&c.inverse()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let _ = random_circuit(f, n, 20, &mut rng);
        prop_assert!(psi.max_abs_diff(&random_state(f, n, &mut rng)) < 1e-9);
    }

    #[test]
    fn decoder_inverts_encoder(fi in 0usize..3, n in 2usize..6, seed in any::<u64>()) {
        let f = &[gf2(), gf3(), gf4()][fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..n);
        let m = random_stabilizer(f, n, k, 5 * n, &mut rng).unwrap();
        let variant = if rng.gen() { Variant::XTarget } else { Variant::ZTarget };
        let res = synthesize(&m, variant).unwrap();
        let input: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.q())).collect();
        let mut psi = sim::simulate(&res.encoder, &input).unwrap();
        psi.apply_circuit(&res.decoder).unwrap();
        prop_assert!(psi.max_abs_diff(&StateVector::basis(f, &input).unwrap()) < 1e-9);
    }
}
