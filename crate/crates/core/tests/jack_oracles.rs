//! Independent constructions of Jack polynomials checked against the
//! eigen-system solver.

mod common;

use betachar::jack::jack_expansion;
use betachar::partitions::enumerate_partitions;
use common::{all_of_weight, gram_schmidt, kostka};

#[test]
fn agrees_with_gram_schmidt_oracle() {
    for alpha in [0.5, 1.0, 2.0] {
        for w in 1..=6 {
            let oracle = gram_schmidt(w, alpha);
            for n in 1..=4usize {
                for kappa in enumerate_partitions(w, n, None) {
                    let e = jack_expansion(&kappa, alpha, n).unwrap();
                    let o = &oracle[&kappa];
                    for mu in enumerate_partitions(w, n, None) {
                        let a = e.coeffs.get(&mu).copied().unwrap_or(0.0);
                        let b = o.get(&mu).copied().unwrap_or(0.0);
                        assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()), "{kappa} {mu} a={alpha}: {a} vs {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn alpha_one_gives_kostka_numbers() {
    for w in 1..=6 {
        for kappa in all_of_weight(w) {
            let n = w as usize;
            let e = jack_expansion(&kappa, 1.0, n).unwrap();
            for mu in all_of_weight(w) {
                let k = kostka(kappa.parts(), mu.parts()) as f64;
                let c = e.coeffs.get(&mu).copied().unwrap_or(0.0);
                assert!((c - k).abs() < 1e-10, "{kappa} {mu}: {c} vs {k}");
            }
        }
    }
}

#[test]
fn kostka_sanity() {
    assert_eq!(kostka(&[2, 1], &[1, 1, 1]), 2);
    assert_eq!(kostka(&[3, 2, 1], &[1, 1, 1, 1, 1, 1]), 16);
    assert_eq!(kostka(&[2, 2], &[3, 1]), 0);
}
