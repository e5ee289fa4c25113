//! Exact carrier for finite sums of roots of unity.
//!
//! Every phase in the sums we evaluate is a rational with denominator
//! dividing some fixed L, so a sum is stored as integer counts of residues
//! t mod L with value `sum counts[t] * e(t/L)`. Integer counts merge
//! exactly under any partition of the enumeration, which is what makes the
//! parallel sweeps deterministic; conversion to a complex number happens
//! once, at the end, in key order.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTally {
    denominator: u64,
    counts: BTreeMap<u64, i64>,
}

impl ExponentTally {
    /// Empty tally over denominator `l >= 1`; evaluates to 0.
    pub fn zero(l: u64) -> Self {
        assert!(l >= 1);
        ExponentTally {
            denominator: l,
            counts: BTreeMap::new(),
        }
    }

    /// The constant tally `{0 -> 1}`, value 1.
    pub fn one() -> Self {
        let mut t = ExponentTally::zero(1);
        t.add(0, 1);
        t
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Add `count * e(t/L)`; `t` is reduced mod L and zero entries pruned.
    pub fn add(&mut self, t: u64, count: i64) {
        let key = t % self.denominator;
        let slot = self.counts.entry(key).or_insert(0);
        *slot += count;
        if *slot == 0 {
            self.counts.remove(&key);
        }
    }

    /// Merge another tally over the same denominator.
    pub fn merge(&mut self, other: &ExponentTally) {
        assert_eq!(self.denominator, other.denominator);
        for (&t, &c) in &other.counts {
            self.add(t, c);
        }
    }

    /// Total number of accumulated terms, `sum |counts|`.
    pub fn term_count(&self) -> u64 {
        self.counts.values().map(|c| c.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.counts.iter().map(|(&t, &c)| (t, c))
    }

    /// `sum counts[t] * e(t/L)`, accumulated in increasing t.
    ///
    /// Conjugate residues t and L - t are paired so that their sine parts
    /// combine as (count difference) * sin: a conjugate-symmetric tally
    /// evaluates to an exactly real number.
    pub fn value(&self) -> Complex64 {
        let l = self.denominator;
        let lf = l as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &c) in &self.counts {
            if t == 0 {
                acc.re += c as f64;
            } else if 2 * t == l {
                acc.re -= c as f64;
            } else if 2 * t < l {
                let partner = self.counts.get(&(l - t)).copied().unwrap_or(0);
                let (s, co) = (TAU * t as f64 / lf).sin_cos();
                acc.re += (c + partner) as f64 * co;
                acc.im += (c - partner) as f64 * s;
            } else if !self.counts.contains_key(&(l - t)) {
                let (s, co) = (TAU * t as f64 / lf).sin_cos();
                acc.re += c as f64 * co;
                acc.im += c as f64 * s;
            }
        }
        acc
    }

    /// Tally of the complex conjugate: counts[t] moved to L - t.
    pub fn conjugate(&self) -> Self {
        let l = self.denominator;
        let mut out = ExponentTally::zero(l);
        for (&t, &c) in &self.counts {
            out.add((l - t) % l, c);
        }
        out
    }

    /// Product of two sums of roots of unity; the result lives over
    /// `lcm(L1, L2)` via `t1/L1 + t2/L2 = (t1*(M/L1) + t2*(M/L2))/M`.
    pub fn product(&self, other: &ExponentTally) -> Self {
        let m = crate::arith::lcm(self.denominator, other.denominator);
        let f1 = m / self.denominator;
        let f2 = m / other.denominator;
        let mut out = ExponentTally::zero(m);
        for (&t1, &c1) in &self.counts {
            for (&t2, &c2) in &other.counts {
                let t = (t1 as u128 * f1 as u128 + t2 as u128 * f2 as u128) % m as u128;
                out.add(t as u64, c1 * c2);
            }
        }
        out
    }

    /// Render as `count@t/L` pairs, sorted by t.
    pub fn describe(&self) -> String {
        let l = self.denominator;
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(&t, &c)| format!("{c}@{t}/{l}"))
            .collect();
        if parts.is_empty() {
            format!("0/{l}")
        } else {
            parts.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_of_roots_of_unity() {
        let mut t = ExponentTally::zero(3);
        t.add(1, 1);
        t.add(2, 1);
        // e(1/3) + e(2/3) = -1
        assert!((t.value() - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        assert_eq!(t.term_count(), 2);
    }

    #[test]
    fn conjugate_flips_keys() {
        let mut t = ExponentTally::zero(5);
        t.add(1, 2);
        t.add(0, 1);
        let c = t.conjugate();
        assert!((c.value() - t.value().conj()).norm() < 1e-14);
        assert_eq!(c.entries().collect::<Vec<_>>(), vec![(0, 1), (4, 2)]);
    }

    #[test]
    fn product_is_value_product() {
        let mut a = ExponentTally::zero(4);
        a.add(1, 1);
        a.add(3, 2);
        let mut b = ExponentTally::zero(3);
        b.add(2, 1);
        b.add(0, -1);
        let p = a.product(&b);
        assert_eq!(p.denominator(), 12);
        assert!((p.value() - a.value() * b.value()).norm() < 1e-12);
    }

    #[test]
    fn cancelling_counts_prune() {
        let mut t = ExponentTally::zero(7);
        t.add(3, 5);
        t.add(10, -5); // same residue
        assert!(t.is_empty());
        assert_eq!(t.value(), Complex64::new(0.0, 0.0));
    }
}
