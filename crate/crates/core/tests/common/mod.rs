//! Independent constructions of Jack polynomials: Gram–Schmidt under the
//! power-sum inner product and Kostka numbers from tableaux.

use std::collections::HashMap;

use betachar::partitions::{enumerate_partitions, Partition};
use nalgebra::DMatrix;

pub fn all_of_weight(w: u32) -> Vec<Partition> {
    enumerate_partitions(w, w.max(1) as usize, None)
}

/// Coefficient of x^μ in p_λ = Π p_{λ_i}.
fn power_to_monomial(lambda: &Partition, mu: &Partition) -> f64 {
    fn go(parts: &[u32], slots: &mut Vec<u32>) -> u64 {
        match parts.split_first() {
            None => slots.iter().all(|&s| s == 0) as u64,
            Some((&p, rest)) => {
                let mut total = 0;
                for j in 0..slots.len() {
                    if slots[j] >= p {
                        slots[j] -= p;
                        total += go(rest, slots);
                        slots[j] += p;
                    }
                }
                total
            }
        }
    }
    let mut slots = mu.parts().to_vec();
    go(lambda.parts(), &mut slots) as f64
}

fn z_lambda(lambda: &Partition) -> f64 {
    lambda
        .multiplicities()
        .iter()
        .map(|&(v, m)| (v as f64).powi(m as i32) * (1..=m).product::<usize>() as f64)
        .product()
}

/// Gram–Schmidt on monomials under ⟨p_λ, p_μ⟩ = δ α^{ℓ(λ)} z_λ, in an order
/// refining dominance from the bottom.
pub fn gram_schmidt(w: u32, alpha: f64) -> HashMap<Partition, HashMap<Partition, f64>> {
    let parts = all_of_weight(w);
    let k = parts.len();
    let m = DMatrix::from_fn(k, k, |i, j| power_to_monomial(&parts[i], &parts[j]));
    let minv = m.try_inverse().expect("power sums span");
    let d = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alpha.powi(parts[i].len() as i32) * z_lambda(&parts[i])
        } else {
            0.0
        }
    });
    // rows of minv express m_μ in the power-sum basis
    let gram = &minv * d * minv.transpose();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut out = HashMap::new();
    for idx in (0..k).rev() {
        let mut v = vec![0.0; k];
        v[idx] = 1.0;
        for b in &basis {
            let ip = inner(&gram, &v, b);
            let nb = inner(&gram, b, b);
            for t in 0..k {
                v[t] -= ip / nb * b[t];
            }
        }
        let coeffs = (0..k).filter(|&t| v[t].abs() > 1e-13).map(|t| (parts[t].clone(), v[t])).collect();
        out.insert(parts[idx].clone(), coeffs);
        basis.push(v);
    }
    out
}

fn inner(g: &DMatrix<f64>, a: &[f64], b: &[f64]) -> f64 {
    let k = a.len();
    let mut s = 0.0;
    for i in 0..k {
        for j in 0..k {
            s += a[i] * g[(i, j)] * b[j];
        }
    }
    s
}

/// Number of semistandard tableaux of shape κ and content μ, peeling off
/// horizontal strips.
pub fn kostka(kappa: &[u32], content: &[u32]) -> u64 {
    let Some((&last, rest)) = content.split_last() else {
        return kappa.iter().all(|&k| k == 0) as u64;
    };
    let mut total = 0;
    let mut inner = vec![0u32; kappa.len()];
    strips(kappa, 0, last, &mut inner, &mut |inn| total += kostka(inn, rest));
    total
}

fn strips(kappa: &[u32], row: usize, left: u32, inner: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if row == kappa.len() {
        if left == 0 {
            f(inner);
        }
        return;
    }
    let next = kappa.get(row + 1).copied().unwrap_or(0);
    // inner row may drop to the outer row below, never further
    for take in 0..=left.min(kappa[row] - next) {
        inner[row] = kappa[row] - take;
        strips(kappa, row + 1, left - take, inner, f);
    }
}
