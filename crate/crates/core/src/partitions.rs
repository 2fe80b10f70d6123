//! Integer partitions and the combinatorial statistics built on them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Nonincreasing sequence of positive parts. Trailing zeros are dropped on
/// construction, so `(2,1,0)` and `(2,1)` are the same value.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts not nonincreasing: {parts:?}"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based); zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicities of each distinct part value.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Removes one part equal to `a`; `None` if absent.
    pub fn remove_part(&self, a: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == a)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

/// Weight first, then lexicographic on parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxStats {
    pub row: usize,
    pub col: usize,
    pub arm: u32,
    pub leg: u32,
    pub coarm: u32,
    pub coleg: u32,
}

/// Statistics of every box, rows then columns, both 1-based.
pub fn box_stats(kappa: &Partition) -> Vec<BoxStats> {
    let conj = conjugate(kappa);
    let mut out = Vec::with_capacity(kappa.weight() as usize);
    for (i, &ki) in kappa.parts.iter().enumerate() {
        for j in 0..ki as usize {
            out.push(BoxStats {
                row: i + 1,
                col: j + 1,
                arm: ki - j as u32 - 1,
                leg: conj.parts[j] - i as u32 - 1,
                coarm: j as u32,
                coleg: i as u32,
            });
        }
    }
    out
}

type EnumKey = (u32, usize, Option<u32>);

fn enum_cache() -> &'static RwLock<HashMap<EnumKey, Arc<Vec<Partition>>>> {
    static CACHE: OnceLock<RwLock<HashMap<EnumKey, Arc<Vec<Partition>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All partitions of `weight` with at most `max_length` parts, each at most
/// `max_part`, in reverse lexicographic order.
pub fn enumerate_partitions(weight: u32, max_length: usize, max_part: Option<u32>) -> Vec<Partition> {
    partitions_cached(weight, max_length, max_part).as_ref().clone()
}

pub(crate) fn partitions_cached(weight: u32, max_length: usize, max_part: Option<u32>) -> Arc<Vec<Partition>> {
    let key = (weight, max_length, max_part);
    if let Some(v) = enum_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(generate(weight, max_length, max_part));
    enum_cache().write().unwrap().entry(key).or_insert(v).clone()
}

fn fill(parts: &mut Vec<u32>, mut rem: u32, cap: u32) {
    while rem > 0 {
        let v = rem.min(cap);
        parts.push(v);
        rem -= v;
    }
}

fn generate(weight: u32, max_length: usize, max_part: Option<u32>) -> Vec<Partition> {
    if weight == 0 {
        return vec![Partition::empty()];
    }
    let cap = max_part.unwrap_or(weight).min(weight);
    if cap == 0 || (cap as u64) * (max_length as u64) < weight as u64 {
        return Vec::new();
    }
    let mut parts = Vec::new();
    fill(&mut parts, weight, cap);
    let mut out = vec![Partition { parts: parts.clone() }];
    loop {
        // rightmost part that can shrink while the tail still fits
        let mut found = false;
        let mut tail: u32 = 0;
        for i in (0..parts.len()).rev() {
            let v = parts[i] - 1;
            let rem = tail + 1;
            if v >= 1 && (rem as u64) <= (v as u64) * ((max_length - i - 1) as u64) {
                parts.truncate(i);
                parts.push(v);
                fill(&mut parts, rem, v);
                found = true;
                break;
            }
            tail += parts[i];
        }
        if !found {
            break;
        }
        out.push(Partition { parts: parts.clone() });
    }
    out
}

pub fn conjugate(kappa: &Partition) -> Partition {
    let k1 = kappa.part(0) as usize;
    let parts = (0..k1)
        .map(|j| kappa.parts.iter().filter(|&&p| p as usize > j).count() as u32)
        .collect();
    Partition { parts }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    Leq,
    GeqStrict,
    Incomparable,
}

pub fn dominance_leq(kappa: &Partition, sigma: &Partition) -> Result<Dominance> {
    let (wk, ws) = (kappa.weight(), sigma.weight());
    if wk != ws {
        return Err(Error::IncomparableWeights(wk, ws));
    }
    let len = kappa.len().max(sigma.len());
    let (mut sk, mut ss) = (0u32, 0u32);
    let (mut le, mut ge) = (true, true);
    for i in 0..len {
        sk += kappa.part(i);
        ss += sigma.part(i);
        le &= sk <= ss;
        ge &= sk >= ss;
    }
    Ok(if le {
        Dominance::Leq
    } else if ge {
        Dominance::GeqStrict
    } else {
        Dominance::Incomparable
    })
}

/// True when `mu ≤ kappa` in dominance order (equal weights assumed).
pub(crate) fn dominated_by(mu: &Partition, kappa: &Partition) -> bool {
    let mut sm = 0;
    let mut sk = 0;
    for i in 0..mu.len().max(kappa.len()) {
        sm += mu.part(i);
        sk += kappa.part(i);
        if sm > sk {
            return false;
        }
    }
    true
}

/// Product over boxes of `1 + arm + leg/α`.
pub fn hook_product(kappa: &Partition, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return domain(format!("alpha must be positive, got {alpha}"));
    }
    Ok(hook_product_s(kappa, &(1.0 / alpha)))
}

/// Hook product with `1/α` supplied directly, so `α = ∞` is `inv_alpha = 0`.
pub fn hook_product_s<S: Real>(kappa: &Partition, inv_alpha: &S) -> S {
    let mut h = S::one();
    for b in box_stats(kappa) {
        h = h * (S::from_i64(1 + b.arm as i64) + S::from_i64(b.leg as i64) * inv_alpha.clone());
    }
    h
}

/// Generalized Pochhammer symbol, row form.
pub fn gen_pochhammer(x: Complex<f64>, kappa: &Partition, alpha: f64) -> Result<Complex<f64>> {
    if !(alpha > 0.0) {
        return domain(format!("alpha must be positive, got {alpha}"));
    }
    Ok(gen_pochhammer_s(&x, kappa, &(1.0 / alpha)))
}

pub fn gen_pochhammer_s<S: Real>(x: &Complex<S>, kappa: &Partition, inv_alpha: &S) -> Complex<S> {
    let mut out = Complex::new(S::one(), S::zero());
    for (i, &ki) in kappa.parts.iter().enumerate() {
        let shift = S::from_i64(i as i64) * inv_alpha.clone();
        for j in 0..ki {
            let f = Complex::new(x.re.clone() - shift.clone() + S::from_i64(j as i64), x.im.clone());
            out = out * f;
        }
    }
    out
}

/// Box form: product of `x + coarm − coleg/α` over the diagram.
pub fn gen_pochhammer_boxes(x: Complex<f64>, kappa: &Partition, alpha: f64) -> Complex<f64> {
    box_stats(kappa)
        .iter()
        .map(|b| x + b.coarm as f64 - b.coleg as f64 / alpha)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0, 5, None), vec![p(&[])]);
        assert_eq!(enumerate_partitions(3, 2, None), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(
            enumerate_partitions(4, 4, None),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(5, 3, Some(2)), vec![p(&[2, 2, 1])]);
        assert!(enumerate_partitions(7, 2, Some(3)).is_empty());
    }

    #[test]
    fn enumeration_counts() {
        // p(n) for n = 0..=10
        let counts = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &c) in counts.iter().enumerate() {
            assert_eq!(enumerate_partitions(n as u32, n.max(1), None).len(), c);
        }
        // partitions of 120 with at most two parts
        assert_eq!(enumerate_partitions(120, 2, None).len(), 61);
        assert_eq!(enumerate_partitions(120, 2, Some(60)).len(), 1);
    }

    #[test]
    fn trailing_zeros_normalized() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&p(&[])), p(&[]));
        assert_eq!(conjugate(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance_leq(&p(&[1, 1]), &p(&[2])).unwrap(), Dominance::Leq);
        assert_eq!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap(), Dominance::Leq);
        assert_eq!(dominance_leq(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])).unwrap(), Dominance::Incomparable);
        assert_eq!(dominance_leq(&p(&[3]), &p(&[2, 1])).unwrap(), Dominance::GeqStrict);
        assert_eq!(dominance_leq(&p(&[3]), &p(&[2])), Err(Error::IncomparableWeights(3, 2)));
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_product(&p(&[]), 0.7).unwrap(), 1.0);
        assert_eq!(hook_product(&p(&[2]), 0.7).unwrap(), 2.0);
        let a = 0.7;
        assert!((hook_product(&p(&[1, 1]), a).unwrap() - (1.0 + 1.0 / a)).abs() < 1e-15);
        assert!(hook_product(&p(&[1]), 0.0).is_err());
    }

    #[test]
    fn box_stat_invariants() {
        let k = p(&[4, 2, 1]);
        let c = conjugate(&k);
        for b in box_stats(&k) {
            assert_eq!(b.arm, k.part(b.row - 1) - b.col as u32);
            assert_eq!(b.leg, c.part(b.col - 1) - b.row as u32);
            assert_eq!(b.coarm, b.col as u32 - 1);
            assert_eq!(b.coleg, b.row as u32 - 1);
        }
    }

    #[test]
    fn pochhammer_examples() {
        let x = Complex::new(0.3, -1.2);
        let a = 1.7;
        assert_eq!(gen_pochhammer(x, &p(&[1]), a).unwrap(), x);
        let v = gen_pochhammer(x, &p(&[1, 1]), a).unwrap();
        assert!((v - x * (x - 1.0 / a)).norm() < 1e-15);
        let z = gen_pochhammer(Complex::new(1.0, 0.0), &p(&[1, 1]), 1.0).unwrap();
        assert_eq!(z, Complex::new(0.0, 0.0));
    }

    fn all_upto(w: u32) -> Vec<Partition> {
        (0..=w).flat_map(|k| enumerate_partitions(k, k.max(1) as usize, None)).collect()
    }

    #[test]
    fn conjugation_is_involution() {
        for k in all_upto(8) {
            assert_eq!(conjugate(&conjugate(&k)), k);
            assert_eq!(conjugate(&k).weight(), k.weight());
        }
    }

    #[test]
    fn pochhammer_vanishes_beyond_length() {
        for a in [0.5, 1.0, 2.0] {
            for k in 0..=4u32 {
                let x = Complex::new(k as f64 / a, 0.0);
                for kap in all_upto(6) {
                    let v = gen_pochhammer(x, &kap, a).unwrap();
                    assert_eq!(v.norm() == 0.0, kap.len() > k as usize, "{kap} k={k} a={a}");
                }
            }
        }
    }

    fn arb_partition(max_w: u32) -> impl Strategy<Value = Partition> {
        (0..=max_w).prop_flat_map(|w| {
            let all = enumerate_partitions(w, w.max(1) as usize, None);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn dominance_reverses_under_conjugation(w in 1u32..9, i in 0usize..1000, j in 0usize..1000) {
            let all = enumerate_partitions(w, w as usize, None);
            let k = &all[i % all.len()];
            let s = &all[j % all.len()];
            let fwd = dominance_leq(k, s).unwrap() == Dominance::Leq;
            let bwd = dominance_leq(&conjugate(s), &conjugate(k)).unwrap() == Dominance::Leq;
            prop_assert_eq!(fwd, bwd);
        }

        #[test]
        fn pochhammer_row_and_box_forms_agree(
            kap in arb_partition(8),
            re in -3.0f64..3.0,
            im in -3.0f64..3.0,
            ai in 0usize..3,
        ) {
            let a = [0.5, 1.0, 2.0][ai];
            let x = Complex::new(re, im);
            let r = gen_pochhammer(x, &kap, a).unwrap();
            let b = gen_pochhammer_boxes(x, &kap, a);
            let scale = r.norm().max(b.norm()).max(1e-300);
            prop_assert!((r - b).norm() <= 1e-12 * scale);
        }

        #[test]
        fn enumeration_respects_bounds(w in 0u32..15, l in 1usize..5, m in 1u32..8) {
            let all = enumerate_partitions(w, l, Some(m));
            for win in all.windows(2) {
                prop_assert!(win[0].parts() > win[1].parts());
            }
            for k in &all {
                prop_assert_eq!(k.weight(), w);
                prop_assert!(k.len() <= l);
                prop_assert!(k.part(0) <= m);
            }
            let brute = enumerate_partitions(w, w.max(1) as usize, None)
                .into_iter()
                .filter(|k| k.len() <= l && k.part(0) <= m)
                .count();
            prop_assert_eq!(all.len(), brute);
        }
    }
}
