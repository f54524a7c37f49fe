mod common;

use num_complex::Complex64;
use quditsynth::gates::operator_unitary;
use quditsynth::gf::Elem;
use quditsynth::pauli::{PauliLabel, PauliOperator};
use quditsynth::sim;
use quditsynth::synth_css::{synthesize_css_with, CssInput, CssOptions};
use quditsynth::synth_stab::random_stabilizer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

#[test]
fn distance_agrees_with_enumeration() {
    for name in ["five_one.stab", "five_one_mutated.stab"] {
        let m = load_stabilizer(name);
        let d = m.min_distance_bruteforce(u64::MAX).unwrap() as usize;
        assert_eq!(d, oracle_distance(&m), "{name}");
    }
    assert_eq!(oracle_distance(&load_stabilizer("five_one.stab")), 3);
    assert!(oracle_distance(&load_stabilizer("five_one_mutated.stab")) < 3);

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for f in [gf2(), gf3(), gf4()] {
        for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
            if f.q() > 2 && n > 3 {
                continue;
            }
            let m = random_stabilizer(&f, n, k, 4 * n, &mut rng).unwrap();
            let d = m.min_distance_bruteforce(u64::MAX).unwrap() as usize;
            assert_eq!(d, oracle_distance(&m), "q={} n={n} k={k}", f.q());
        }
    }
}

/// `Tr(W_a^dagger W_b) = q^n [a = b]` for the error basis.
#[test]
fn error_basis_is_hilbert_schmidt_orthogonal() {
    for f in [gf2(), gf3(), gf4(), gf5()] {
        let q = f.q() as usize;
        let n = if q <= 3 { 2 } else { 1 };
        let labels: Vec<PauliLabel> = (0..q.pow(2 * n as u32))
            .map(|c| PauliLabel::from_vector(&digits(c, q, 2 * n).iter().map(|&d| e(&f, d as u32)).collect::<Vec<_>>()))
            .collect();
        let mats: Vec<_> =
            labels.iter().map(|l| operator_unitary(&f, &PauliOperator::new(l.clone())).unwrap()).collect();
        for (l, m) in labels.iter().zip(&mats) {
            let direct = oracle_pauli(&f, l, 0);
            for r in 0..m.dim() {
                for c in 0..m.dim() {
                    assert!((m.get(r, c) - direct[r][c]).norm() < 1e-12);
                }
            }
        }
        let dim = q.pow(n as u32) as f64;
        for (i, a) in mats.iter().enumerate() {
            for (j, b) in mats.iter().enumerate() {
                let want = if i == j { Complex64::new(dim, 0.0) } else { Complex64::new(0.0, 0.0) };
                assert!((a.hilbert_schmidt(b) - want).norm() < 1e-9, "q={} {i} {j}", f.q());
            }
        }
    }
}

fn steane() -> CssInput {
    let f = gf2();
    let m =
        |rows: &[&[u32]]| -> Vec<Vec<Elem>> { rows.iter().map(|r| r.iter().map(|&v| e(&f, v)).collect()).collect() };
    let simplex = m(&[&[0, 0, 0, 1, 1, 1, 1], &[0, 1, 1, 0, 0, 1, 1], &[1, 0, 1, 0, 1, 0, 1]]);
    let mut hamming = simplex.clone();
    hamming.extend(m(&[&[1, 1, 1, 1, 1, 1, 1]]));
    CssInput::echelonized(f.clone(), simplex, hamming).unwrap()
}

/// Codewords of a CSS code are uniform superpositions over a coset of
/// `span(G)` inside `span(H)`; checked here against the coset built in test
/// code, for every option combination.
#[test]
fn css_states_are_coset_superpositions() {
    let input = steane();
    assert_eq!(input.k(), 1);
    let f = input.field().clone();
    let g_span = span_set(
        &f,
        &input.g().iter().map(|r| PauliLabel::new(r.clone(), vec![Elem::ZERO; 7]).unwrap()).collect::<Vec<_>>(),
    );
    for (swap_roles, merge_mult) in [(false, false), (false, true), (true, false), (true, true)] {
        let syn = synthesize_css_with(&input, CssOptions { swap_roles, merge_mult }).unwrap();
        let c = &syn.circuit;
        let report = sim::verify_encoder(&input.stabilizer().unwrap(), c, 2, 1).unwrap();
        assert!(report.passed(), "{report}");
        if syn.swapped {
            continue;
        }
        for bit in 0..2u32 {
            let w = input.coset_word(&[e(&f, bit)]);
            let psi = sim::simulate(c, &sim::encoder_input(c, &[bit]).unwrap()).unwrap();
            let amp = 1.0 / (g_span.len() as f64).sqrt();
            for (idx, a) in psi.amplitudes().iter().enumerate() {
                let d: Vec<Elem> = digits(idx, 2, 7).iter().map(|&v| e(&f, v as u32)).collect();
                let shifted: Vec<Elem> = d.iter().zip(&w).map(|(&x, &y)| f.sub(x, y)).collect();
                let mut key = shifted;
                key.extend(vec![Elem::ZERO; 7]);
                let want = if g_span.contains(&key) { amp } else { 0.0 };
                assert!((a - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
    }
}
