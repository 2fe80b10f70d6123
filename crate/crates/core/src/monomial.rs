//! Monomial symmetric functions evaluated shell by shell.
//!
//! Uses m_μ(x_1..x_k) = Σ_a x_k^a · m_{μ∖a}(x_1..x_{k-1}), the sum running
//! over the distinct parts of μ together with 0.

use std::collections::HashMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::partitions::{partitions_cached, Partition};
use crate::scalar::Real;

pub struct MonoEval<S: Real> {
    n: usize,
    x: Vec<Complex<S>>,
    pow: Vec<Vec<Complex<S>>>,
    index: HashMap<Partition, usize>,
    // vals[k][idx] = m_μ(x_1..x_k)
    vals: Vec<Vec<Complex<S>>>,
    done: u32,
}

impl<S: Real> MonoEval<S> {
    pub fn new(x: Vec<Complex<S>>) -> Self {
        let n = x.len();
        let one = Complex::<S>::one();
        let mut index = HashMap::new();
        index.insert(Partition::empty(), 0);
        let vals = (0..=n).map(|_| vec![one.clone()]).collect();
        let pow = x.iter().map(|_| vec![one.clone()]).collect();
        MonoEval { n, x, pow, index, vals, done: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn power(&mut self, k: usize, a: u32) -> Complex<S> {
        let a = a as usize;
        while self.pow[k].len() <= a {
            let next = self.pow[k].last().unwrap().clone() * self.x[k].clone();
            self.pow[k].push(next);
        }
        self.pow[k][a].clone()
    }

    fn extend_to(&mut self, w: u32) {
        while self.done < w {
            let wt = self.done + 1;
            let shell = partitions_cached(wt, self.n, None);
            for mu in shell.iter() {
                let idx = self.vals[0].len();
                self.index.insert(mu.clone(), idx);
                let mut row: Vec<Complex<S>> = Vec::with_capacity(self.n + 1);
                row.push(Complex::zero());
                for k in 1..=self.n {
                    if mu.len() > k {
                        row.push(Complex::zero());
                        continue;
                    }
                    let mut acc = if mu.len() < k { row[k - 1].clone() } else { Complex::zero() };
                    for (a, _) in mu.multiplicities() {
                        let rest = mu.remove_part(a).unwrap();
                        let j = self.index[&rest];
                        let term = self.power(k - 1, a) * self.vals[k - 1][j].clone();
                        acc = acc + term;
                    }
                    row.push(acc);
                }
                for (k, v) in row.into_iter().enumerate() {
                    self.vals[k].push(v);
                }
            }
            self.done = wt;
        }
    }

    #[cfg(test)]
    /// m_μ(x) for every μ ⊢ w with at most n parts.
    pub fn shell(&mut self, w: u32) -> Vec<(Partition, Complex<S>)> {
        self.extend_to(w);
        partitions_cached(w, self.n, None)
            .iter()
            .map(|mu| (mu.clone(), self.vals[self.n][self.index[mu]].clone()))
            .collect()
    }

    pub fn value(&mut self, mu: &Partition) -> Complex<S> {
        if mu.len() > self.n {
            return Complex::zero();
        }
        self.extend_to(mu.weight());
        self.vals[self.n][self.index[mu]].clone()
    }
}

#[cfg(test)]
/// Direct symmetrization over distinct permutations; test oracle.
pub fn monomial_direct(mu: &Partition, x: &[Complex<f64>]) -> Complex<f64> {
    let n = x.len();
    if mu.len() > n {
        return Complex::zero();
    }
    let mut exps: Vec<u32> = (0..n).map(|i| mu.part(i)).collect();
    exps.sort_unstable();
    let mut total = Complex::zero();
    loop {
        total += exps
            .iter()
            .zip(x)
            .map(|(&e, xi)| xi.powu(e))
            .product::<Complex<f64>>();
        if !next_permutation(&mut exps) {
            break;
        }
    }
    total
}

pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    #[test]
    fn matches_direct_symmetrization() {
        let x = vec![
            Complex::new(0.3, 0.1),
            Complex::new(-1.1, 0.4),
            Complex::new(0.7, -0.2),
            Complex::new(0.2, 0.9),
        ];
        for n in 1..=4 {
            let xs = x[..n].to_vec();
            let mut ev = MonoEval::new(xs.clone());
            for w in 0..=7 {
                for (mu, v) in ev.shell(w) {
                    let d = monomial_direct(&mu, &xs);
                    assert!((v - d).norm() < 1e-12 * (1.0 + d.norm()), "{mu} n={n}");
                }
            }
        }
    }

    #[test]
    fn small_closed_forms() {
        let t = Complex::new(0.8, 0.0);
        let mut ev = MonoEval::new(vec![t, -t]);
        let m11 = Partition::new(vec![1, 1]).unwrap();
        assert!((ev.value(&m11) + t * t).norm() < 1e-15);
        let ones = vec![Complex::new(1.0, 0.0); 5];
        let mut ev = MonoEval::new(ones);
        for mu in enumerate_partitions(6, 5, None) {
            // m_μ(1^n) = n! / ((n-ℓ)! Π mult!)
            let n = 5u64;
            let l = mu.len() as u64;
            let mut num: u64 = (n - l + 1..=n).product();
            for (_, m) in mu.multiplicities() {
                num /= (1..=m as u64).product::<u64>();
            }
            assert!((ev.value(&mu).re - num as f64).abs() < 1e-9);
        }
    }
}
