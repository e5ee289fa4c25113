//! The long-element SL(3,Z) Kloosterman sum.
//!
//! S_wl(psi_m, psi_n, (A1, A2)) runs over quadruples B1, C1 mod A1 and
//! B2, C2 mod A2 (canonical representatives in [0, modulus)) with
//!
//!   (A1, B1, C1) = (A2, B2, C2) = 1,
//!   A1*C2 + B1*B2 + C1*A2 = 0  mod A1*A2,
//!
//! and with Y1*B1 + Z1*C1 = 1 mod A1, Y2*B2 + Z2*C2 = 1 mod A2, tallies
//!
//!   e( m2*(Z2*B1 - Y2*A1)/A2 + m1*(Y1*A2 - Z1*B2)/A1
//!      + n2*B1/A1 - n1*B2/A2 ).
//!
//! Every phase has denominator dividing L = A1*A2, so a tuple contributes a
//! residue class t mod L. Each admissible tuple is stored as a key of four
//! coefficient residues (one per character index), which lets one
//! enumeration serve every (m, n) in a sweep.

use super::{CharPair, ExponentTally, KsumError, ModPair};
use crate::arith::{factor, gcd, gcd3, inv_mod, mul_mod, reduce_mod, solve_pair_congruence};
use num_complex::Complex64;
use std::collections::HashMap;

/// Coefficient residues (k_m1, k_m2, k_n1, k_n2) mod L: the tuple's phase
/// for character data (m1, m2, n1, n2) is
/// (m1*k_m1 + m2*k_m2 + n1*k_n1 + n2*k_n2)/L.
type PhaseKey = [u64; 4];

/// Largest denominator for which a root-of-unity lookup table is kept.
const ROOT_TABLE_MAX: u64 = 1 << 16;

#[derive(Debug, Clone)]
struct PhaseBuckets {
    l: u64,
    buckets: Vec<(PhaseKey, i64)>,
    roots: Option<Vec<Complex64>>,
}

impl PhaseBuckets {
    fn from_map(l: u64, map: HashMap<PhaseKey, i64>) -> Self {
        let mut buckets: Vec<(PhaseKey, i64)> = map.into_iter().collect();
        buckets.sort_unstable();
        let roots = (l <= ROOT_TABLE_MAX).then(|| {
            (0..l)
                .map(|t| {
                    let (s, c) = (std::f64::consts::TAU * t as f64 / l as f64).sin_cos();
                    Complex64::new(c, s)
                })
                .collect()
        });
        PhaseBuckets { l, buckets, roots }
    }

    fn tally(&self, m1: i64, m2: i64, n1: i64, n2: i64) -> ExponentTally {
        let l = self.l;
        let coeff = [
            reduce_mod(m1, l) as u128,
            reduce_mod(m2, l) as u128,
            reduce_mod(n1, l) as u128,
            reduce_mod(n2, l) as u128,
        ];
        let mut tally = ExponentTally::zero(l);
        for &(key, count) in &self.buckets {
            let mut t = 0u128;
            for i in 0..4 {
                t += coeff[i] * key[i] as u128 % l as u128;
            }
            tally.add((t % l as u128) as u64, count);
        }
        tally
    }

    /// Complex value without materializing a tally; one multiply-add per
    /// bucket, with roots of unity looked up when the table exists.
    fn value(&self, m1: i64, m2: i64, n1: i64, n2: i64) -> Complex64 {
        let l = self.l;
        let coeff = [
            reduce_mod(m1, l) as u128,
            reduce_mod(m2, l) as u128,
            reduce_mod(n1, l) as u128,
            reduce_mod(n2, l) as u128,
        ];
        let mut acc = Complex64::new(0.0, 0.0);
        for &(key, count) in &self.buckets {
            let mut t = 0u128;
            for i in 0..4 {
                t += coeff[i] * key[i] as u128 % l as u128;
            }
            let t = (t % l as u128) as u64;
            let root = match &self.roots {
                Some(r) => r[t as usize],
                None => {
                    let (s, c) = (std::f64::consts::TAU * t as f64 / l as f64).sin_cos();
                    Complex64::new(c, s)
                }
            };
            acc += count as f64 * root;
        }
        acc
    }

    fn term_count(&self) -> u64 {
        self.buckets.iter().map(|&(_, c)| c.unsigned_abs()).sum()
    }

    /// Multiply the m1/m2 key coordinates by units mod L (character twist).
    fn twist_m(&mut self, u1: u64, u2: u64) {
        for (key, _) in &mut self.buckets {
            key[0] = mul_mod(key[0], u1, self.l);
            key[1] = mul_mod(key[1], u2, self.l);
        }
        self.buckets.sort_unstable();
    }
}

fn phase_key(
    a1: u64,
    a2: u64,
    l: u64,
    b1: u64,
    b2: u64,
    y1: u64,
    z1: u64,
    y2: u64,
    z2: u64,
) -> PhaseKey {
    // m1 * (Y1*A2 - Z1*B2)/A1: numerator over L is A2 * ((Y1*A2 - Z1*B2) mod A1).
    let r_m1 = sub_mod(mul_mod(y1, a2 % a1, a1), mul_mod(z1, b2 % a1, a1), a1);
    // m2 * (Z2*B1 - Y2*A1)/A2.
    let r_m2 = sub_mod(mul_mod(z2, b1 % a2, a2), mul_mod(y2, a1 % a2, a2), a2);
    [
        mul_mod(a2, r_m1, l),
        mul_mod(a1, r_m2, l),
        // n1 * (-B2)/A2.
        mul_mod(a1, (a2 - b2) % a2, l),
        // n2 * B1/A1.
        mul_mod(a2, b1, l),
    ]
}

#[inline]
fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// Admissible (B2, C2) residues mod A2 with their canonical (Y2, Z2).
fn unit_pairs(a2: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut out = Vec::new();
    for b2 in 0..a2 {
        for c2 in 0..a2 {
            if gcd3(a2, b2, c2) != 1 {
                continue;
            }
            let (y2, z2) = solve_pair_congruence(b2 as i64, c2 as i64, a2)
                .expect("gcd(A2, B2, C2) = 1 guarantees a solution");
            out.push((b2, c2, y2.value, z2.value));
        }
    }
    out
}

/// Brute-force enumeration of all admissible quadruples for one modulus
/// pair. This is the oracle route: no loop reduction, no block splitting.
pub struct WlOracleTable {
    buckets: PhaseBuckets,
}

impl WlOracleTable {
    pub fn build(c: &ModPair) -> Result<Self, KsumError> {
        let prod = c.product();
        if prod >= 1 << 31 {
            return Err(KsumError::OracleScale(prod));
        }
        let (a1, a2) = (c.c1(), c.c2());
        let l = a1 * a2;
        let pairs2 = unit_pairs(a2);
        let mut map: HashMap<PhaseKey, i64> = HashMap::new();
        for b1 in 0..a1 {
            for c1 in 0..a1 {
                if gcd3(a1, b1, c1) != 1 {
                    continue;
                }
                let (y1, z1) = solve_pair_congruence(b1 as i64, c1 as i64, a1)
                    .expect("gcd(A1, B1, C1) = 1 guarantees a solution");
                for &(b2, c2, y2, z2) in &pairs2 {
                    let lhs = (a1 as u128 * c2 as u128
                        + b1 as u128 * b2 as u128
                        + c1 as u128 * a2 as u128)
                        % l as u128;
                    if lhs != 0 {
                        continue;
                    }
                    let key = phase_key(a1, a2, l, b1, b2, y1.value, z1.value, y2, z2);
                    *map.entry(key).or_insert(0) += 1;
                }
            }
        }
        Ok(WlOracleTable {
            buckets: PhaseBuckets::from_map(l, map),
        })
    }

    pub fn tally(&self, m: &CharPair, n: &CharPair) -> ExponentTally {
        self.buckets.tally(m.m1(), m.m2(), n.m1(), n.m2())
    }

    /// Evaluated sum without building the tally; for grid sweeps.
    pub fn value(&self, m: &CharPair, n: &CharPair) -> Complex64 {
        self.buckets.value(m.m1(), m.m2(), n.m1(), n.m2())
    }

    pub fn admissible_tuples(&self) -> u64 {
        self.buckets.term_count()
    }
}

/// One prime-power block of the optimized route. The congruence
/// A1*C2 + B1*B2 + C1*A2 = 0 mod A1*A2 forces A1 | B1*B2 + C1*A2, which
/// pins C1 to an arithmetic progression mod A1/(A1, A2) and then
/// determines C2 uniquely mod A2: the 4-fold loop collapses to (B1, B2)
/// plus the solutions of a linear congruence, so the cost is proportional
/// to A1*A2 plus the number of admissible tuples.
fn reduced_block(a1: u64, a2: u64) -> PhaseBuckets {
    let l = a1 * a2;
    let mut map: HashMap<PhaseKey, i64> = HashMap::new();
    // C1*A2 = -B1*B2 mod A1 is solvable iff g | B1*B2, with the solutions
    // a progression of step m = A1/g.
    let g = gcd(a2, a1);
    let m = a1 / g;
    let inv_a2 = inv_mod((a2 / g % m) as i64, m)
        .expect("A2/g is a unit mod A1/g")
        .value;
    let gb2: Vec<u64> = (0..a2).map(|b2| gcd(b2, a2)).collect();
    for b1 in 0..a1 {
        let gb1 = gcd(b1, a1);
        for b2 in 0..a2 {
            let r = mul_mod(b1, b2 % a1, a1);
            if r % g != 0 {
                continue;
            }
            let c0 = (m - mul_mod(r / g % m, inv_a2, m)) % m;
            let mut c1 = c0;
            while c1 < a1 {
                if gcd(gb1, gcd(c1, a1)) == 1 {
                    // k = B1*B2 + C1*A2 is divisible by A1; C2 = -k/A1 mod A2.
                    let k = b1 as u128 * b2 as u128 + c1 as u128 * a2 as u128;
                    debug_assert_eq!(k % a1 as u128, 0);
                    let c2 = ((a2 as u128 - (k / a1 as u128) % a2 as u128) % a2 as u128) as u64;
                    if gcd(gb2[b2 as usize], gcd(c2, a2)) == 1 {
                        let (y1, z1) = solve_pair_congruence(b1 as i64, c1 as i64, a1)
                            .expect("admissible (B1, C1)");
                        let (y2, z2) = solve_pair_congruence(b2 as i64, c2 as i64, a2)
                            .expect("admissible (B2, C2)");
                        let key = phase_key(
                            a1, a2, l, b1, b2, y1.value, z1.value, y2.value, z2.value,
                        );
                        *map.entry(key).or_insert(0) += 1;
                    }
                }
                c1 += m;
            }
        }
    }
    PhaseBuckets::from_map(l, map)
}

/// Optimized route: coprime prime-power block decomposition via twisted
/// multiplicativity, each block enumerated by the reduced loop.
pub struct WlFastTables {
    blocks: Vec<PhaseBuckets>,
}

impl WlFastTables {
    pub fn build(c: &ModPair) -> Result<Self, KsumError> {
        let prod = c.product();
        if prod >= 1 << 63 {
            return Err(KsumError::DenominatorOverflow(prod));
        }
        let (c1, c2) = (c.c1(), c.c2());
        let fz = factor(c1 * c2);
        // Prime blocks (p^{v_p(c1)}, p^{v_p(c2)}), primes ascending.
        let mut specs: Vec<(u64, u64)> = Vec::new();
        for &(p, _) in &fz.factors {
            let mut q1 = 1u64;
            let mut t = c1;
            while t % p == 0 {
                q1 *= p;
                t /= p;
            }
            let mut q2 = 1u64;
            let mut t = c2;
            while t % p == 0 {
                q2 *= p;
                t /= p;
            }
            specs.push((q1, q2));
        }
        // Walk the BFG lemma: split the leading block off the rest, twisting
        // the m-character on both sides. (T1, T2) tracks the accumulated
        // twist on the remaining factor, valid mod R1*R2.
        let mut blocks = Vec::with_capacity(specs.len());
        let (mut r1, mut r2) = (c1, c2);
        let (mut t1, mut t2) = (1u64, 1u64);
        for &(q1, q2) in &specs {
            r1 /= q1;
            r2 /= q2;
            let bm = q1 * q2;
            let rm = r1 as u128 * r2 as u128;
            let inv_r1 = inv_mod((r1 % bm) as i64, bm)?.value;
            let inv_r2 = inv_mod((r2 % bm) as i64, bm)?.value;
            let u1 = mul_mod(
                mul_mod(mul_mod(inv_r1, inv_r1, bm), r2 % bm, bm),
                t1 % bm,
                bm,
            );
            let u2 = mul_mod(
                mul_mod(mul_mod(inv_r2, inv_r2, bm), r1 % bm, bm),
                t2 % bm,
                bm,
            );
            let mut block = reduced_block(q1, q2);
            block.twist_m(u1, u2);
            blocks.push(block);
            if rm > 1 {
                let rm = rm as u64;
                let inv_q1 = inv_mod((q1 % rm) as i64, rm)?.value;
                let inv_q2 = inv_mod((q2 % rm) as i64, rm)?.value;
                t1 = mul_mod(
                    mul_mod(mul_mod(inv_q1, inv_q1, rm), q2 % rm, rm),
                    t1 % rm,
                    rm,
                );
                t2 = mul_mod(
                    mul_mod(mul_mod(inv_q2, inv_q2, rm), q1 % rm, rm),
                    t2 % rm,
                    rm,
                );
            }
        }
        Ok(WlFastTables { blocks })
    }

    pub fn tally(&self, m: &CharPair, n: &CharPair) -> ExponentTally {
        let mut acc = ExponentTally::one();
        for block in &self.blocks {
            let t = block.tally(m.m1(), m.m2(), n.m1(), n.m2());
            acc = acc.product(&t);
        }
        acc
    }

    /// Evaluated sum as the complex product of block values.
    pub fn value(&self, m: &CharPair, n: &CharPair) -> Complex64 {
        self.blocks
            .iter()
            .map(|b| b.value(m.m1(), m.m2(), n.m1(), n.m2()))
            .product()
    }
}

/// Brute-force long-element sum; scale-limited to c1*c2 < 2^31.
pub fn s_wl_oracle(m: &CharPair, n: &CharPair, c: &ModPair) -> Result<ExponentTally, KsumError> {
    Ok(WlOracleTable::build(c)?.tally(m, n))
}

/// Optimized long-element sum: BFG block decomposition plus reduced loops.
pub fn s_wl_fast(m: &CharPair, n: &CharPair, c: &ModPair) -> Result<ExponentTally, KsumError> {
    Ok(WlFastTables::build(c)?.tally(m, n))
}

/// Whole-modulus reduced enumeration without the multiplicative split:
/// the direct side of the block-decomposition checks.
pub fn s_wl_direct(m: &CharPair, n: &CharPair, c: &ModPair) -> Result<ExponentTally, KsumError> {
    let prod = c.product();
    if prod >= 1 << 63 {
        return Err(KsumError::DenominatorOverflow(prod));
    }
    Ok(reduced_block(c.c1(), c.c2()).tally(m.m1(), m.m2(), n.m1(), n.m2()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn mp(c1: u64, c2: u64) -> ModPair {
        ModPair::new(c1, c2).unwrap()
    }

    fn cp(m1: i64, m2: i64) -> CharPair {
        CharPair::new(m1, m2).unwrap()
    }

    #[test]
    fn trivial_modulus_is_one() {
        let one = cp(1, 1);
        for (m, n) in [(cp(1, 1), cp(1, 1)), (cp(2, -3), cp(-1, 5))] {
            let t = s_wl_oracle(&m, &n, &mp(1, 1)).unwrap();
            assert_eq!(t.term_count(), 1);
            assert!((t.value() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            let f = s_wl_fast(&m, &n, &mp(1, 1)).unwrap();
            assert!((f.value() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let _ = one;
    }

    #[test]
    fn two_one_single_tuple() {
        // Only B1 = 1, C1 = 0 is admissible; the phase is 1/2 + 1/2 = 1.
        let t = s_wl_oracle(&cp(1, 1), &cp(1, 1), &mp(2, 1)).unwrap();
        assert_eq!(t.term_count(), 1);
        assert!((t.value() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_two_hand_enumeration() {
        // Hand enumeration gives exactly three admissible quadruples, each
        // with phase an integer, so the sum is 3.
        let t = s_wl_oracle(&cp(1, 1), &cp(1, 1), &mp(2, 2)).unwrap();
        assert_eq!(t.term_count(), 3);
        assert!((t.value() - Complex64::new(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fast_matches_oracle_small_grid() {
        let chars = [cp(1, 1), cp(2, 3), cp(-1, 2)];
        for c1 in 1..=10u64 {
            for c2 in 1..=10u64 {
                let c = mp(c1, c2);
                let oracle = WlOracleTable::build(&c).unwrap();
                let fast = WlFastTables::build(&c).unwrap();
                for m in &chars {
                    for n in &chars {
                        let vo = oracle.tally(m, n).value();
                        let vf = fast.tally(m, n).value();
                        assert!(
                            (vo - vf).norm() <= 1e-9 * (1.0 + vo.norm()),
                            "c=({c1},{c2}) m={m:?} n={n:?}: oracle {vo} fast {vf}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_block_example() {
        // m = (2,3), n = (1,1), c = (4,9): the product of twisted block sums
        // must match the direct enumeration.
        let (m, n, c) = (cp(2, 3), cp(1, 1), mp(4, 9));
        let vo = s_wl_oracle(&m, &n, &c).unwrap().value();
        let vf = s_wl_fast(&m, &n, &c).unwrap().value();
        assert!((vo - vf).norm() <= 1e-9 * (1.0 + vo.norm()), "{vo} vs {vf}");
        let v61 = s_wl_oracle(&cp(1, 1), &cp(1, 1), &mp(6, 1)).unwrap().value();
        let f61 = s_wl_fast(&cp(1, 1), &cp(1, 1), &mp(6, 1)).unwrap().value();
        assert!((v61 - f61).norm() <= 1e-9 * (1.0 + v61.norm()));
    }

    #[test]
    fn conjugation_symmetry_at_tally_level() {
        for (c1, c2) in [(3, 4), (5, 5), (7, 2)] {
            let c = mp(c1, c2);
            let (m, n) = (cp(1, 2), cp(2, -1));
            let plus = s_wl_oracle(&m, &n, &c).unwrap();
            let minus = s_wl_oracle(&m.negated(), &n.negated(), &c).unwrap();
            assert_eq!(plus.conjugate(), minus);
        }
    }

    #[test]
    fn oracle_scale_guard() {
        let big = mp(1 << 16, 1 << 16);
        assert!(matches!(
            WlOracleTable::build(&big),
            Err(KsumError::OracleScale(_))
        ));
    }
}
