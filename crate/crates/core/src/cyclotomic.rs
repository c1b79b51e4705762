// SPDX-License-Identifier: Apache-2.0

//! q-cyclotomic cosets modulo q^m - 1 and the parameters of the codes
//! `C_(q,m,δ_i)`.
//!
//! Leaders and dimensions are found by walking every residue once with a
//! visited bitmap; no digit-pattern shortcuts are used.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue moduli above this are refused by the enumerating functions.
pub const MAX_ENUM_MODULUS: u64 = 1 << 28;

/// Moduli up to this size have their closed-form dimension cross-checked
/// by coset enumeration in [`code_params`].
pub const PARAMS_CHECK_MODULUS: u64 = 1 << 22;

fn modulus(q: u64, m: u32) -> Result<u64> {
    q.checked_pow(m)
        .and_then(|v| v.checked_sub(1))
        .ok_or_else(|| Error::Overflow(format!("{q}^{m} - 1")))
}

fn enum_modulus(q: u64, m: u32) -> Result<u64> {
    let n = modulus(q, m)?;
    if n > MAX_ENUM_MODULUS {
        return Err(Error::BudgetExceeded {
            what: "coset enumeration".into(),
            needed: n as u128,
            limit: MAX_ENUM_MODULUS as u128,
        });
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QAdic {
    /// Digits, least significant first, always `m` of them.
    pub digits: Vec<u64>,
    /// Digit sum `w_q(s)`.
    pub weight: u64,
}

pub fn q_adic(s: u64, q: u64, m: u32) -> Result<QAdic> {
    let limit = modulus(q, m)? + 1;
    if s >= limit {
        return Err(Error::OutOfRange { value: s, limit });
    }
    let mut t = s;
    let digits: Vec<u64> = (0..m)
        .map(|_| {
            let d = t % q;
            t /= q;
            d
        })
        .collect();
    let weight = digits.iter().sum();
    Ok(QAdic { digits, weight })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetInfo {
    pub s: u64,
    /// Sorted members of the coset.
    pub members: Vec<u64>,
    pub leader: u64,
    pub size: usize,
}

#[inline]
fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn cyclotomic_coset(s: u64, q: u64, m: u32) -> Result<CosetInfo> {
    let n = modulus(q, m)?;
    if s >= n.max(1) {
        return Err(Error::OutOfRange { value: s, limit: n });
    }
    let mut members = vec![s];
    let mut t = mul_mod(s, q, n);
    while t != s {
        members.push(t);
        t = mul_mod(t, q, n);
    }
    members.sort_unstable();
    let leader = members[0];
    let size = members.len();
    Ok(CosetInfo {
        s,
        members,
        leader,
        size,
    })
}

/// Fixed-size bitmap over residues.
struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(n: u64) -> Self {
        Bitmap(vec![0; (n as usize).div_ceil(64)])
    }

    fn get(&self, k: u64) -> bool {
        self.0[(k >> 6) as usize] >> (k & 63) & 1 == 1
    }

    fn set(&mut self, k: u64) {
        self.0[(k >> 6) as usize] |= 1 << (k & 63);
    }
}

/// All coset leaders with their coset sizes, in increasing order.
pub fn coset_leaders(q: u64, m: u32) -> Result<Vec<(u64, usize)>> {
    let n = enum_modulus(q, m)?;
    let mut seen = Bitmap::new(n);
    let mut out = Vec::new();
    for s in 0..n {
        if seen.get(s) {
            continue;
        }
        let mut size = 0;
        let mut t = s;
        loop {
            seen.set(t);
            size += 1;
            t = mul_mod(t, q, n);
            if t == s {
                break;
            }
        }
        out.push((s, size));
    }
    Ok(out)
}

/// Coset leaders `>= threshold`, sorted.
pub fn coset_leaders_geq(threshold: u64, q: u64, m: u32) -> Result<Vec<u64>> {
    Ok(coset_leaders(q, m)?
        .into_iter()
        .map(|(s, _)| s)
        .filter(|&s| s >= threshold)
        .collect())
}

/// Union of the cosets of `1..delta-1` as a bitmap over `0..n`.
fn zero_set(q: u64, m: u32, delta: u64) -> Result<(u64, Bitmap)> {
    let n = enum_modulus(q, m)?;
    if delta < 2 || delta > n {
        return Err(Error::OutOfRange {
            value: delta,
            limit: n,
        });
    }
    let mut z = Bitmap::new(n);
    for j in 1..delta {
        if z.get(j) {
            continue;
        }
        let mut t = j;
        loop {
            z.set(t);
            t = mul_mod(t, q, n);
            if t == j {
                break;
            }
        }
    }
    Ok((n, z))
}

/// Dimension of the narrow-sense primitive BCH code of designed distance
/// `delta`, i.e. `n` minus the number of zeros of its generator.
pub fn bch_dimension(q: u64, m: u32, delta: u64) -> Result<u64> {
    let (n, z) = zero_set(q, m, delta)?;
    let zeros = (0..n).filter(|&s| z.get(s)).count() as u64;
    Ok(n - zeros)
}

/// Smallest positive integer outside the union of the cosets of
/// `1..delta-1`.
pub fn bose_distance(q: u64, m: u32, delta: u64) -> Result<u64> {
    let (n, z) = zero_set(q, m, delta)?;
    Ok((1..n).find(|&s| !z.get(s)).unwrap_or(n))
}

/// Whether `(q, m)` is covered by the main theorem.
pub fn supported(q: u64, m: u32) -> bool {
    match q {
        2 => m >= 3,
        3 => m >= 2,
        _ => q >= 2 && m >= 1,
    }
}

/// Inclusive range of `i` with `(m-2)/2 <= i <= m - floor(m/3) - 1`.
pub fn theorem_range(m: u32) -> (u32, u32) {
    let lo = m.saturating_sub(1) / 2;
    let hi = m - m / 3 - 1;
    (lo, hi)
}

/// `(q-1) q^{m-1} - 1`.
pub fn delta(q: u64, m: u32) -> Result<i64> {
    let t = q
        .checked_pow(m - 1)
        .and_then(|v| v.checked_mul(q - 1))
        .ok_or_else(|| Error::Overflow("delta".into()))?;
    i64::try_from(t)
        .map(|v| v - 1)
        .map_err(|_| Error::Overflow("delta".into()))
}

/// `(q-1) q^{m-1} - q^i - 1`.
pub fn delta_i(q: u64, m: u32, i: u32) -> Result<i64> {
    let qi = q
        .checked_pow(i)
        .ok_or_else(|| Error::Overflow("q^i".into()))?;
    Ok(delta(q, m)? - qi as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub q: u64,
    pub m: u32,
    pub i: u32,
    /// Code length `q^m - 1`.
    pub length: u64,
    pub delta: u64,
    pub delta_i: u64,
    pub dimension: u64,
    #[serde(rename = "bose")]
    pub bose_distance: u64,
    /// Whether the dimension and Bose distance were confirmed by coset
    /// enumeration (skipped above [`PARAMS_CHECK_MODULUS`]).
    pub enumerated: bool,
}

impl CodeParams {
    pub fn is_even(&self) -> bool {
        self.q.is_multiple_of(2)
    }

    pub fn m_odd(&self) -> bool {
        self.m % 2 == 1
    }

    /// Number of quadratic forms in the associated family,
    /// `q^{m(i - (m-3)/2)}`, as an exponent of q.
    pub fn family_exponent(&self) -> u64 {
        // m(i - (m-3)/2) = (m(2i - m + 3)) / 2
        (self.m as u64 * (2 * self.i as u64 + 3 - self.m as u64)) / 2
    }
}

/// Parameters of `C_(q,m,δ_i)` with the closed-form dimension
/// `(i - (m-5)/2) m + 1`.
pub fn code_params(q: u64, m: u32, i: u32) -> Result<CodeParams> {
    crate::gf::prime_power(q)?;
    if !supported(q, m) {
        return Err(Error::UnsupportedParameters(format!(
            "q={q} requires m >= {}",
            if q == 2 { 3 } else { 2 }
        )));
    }
    let (lo, hi) = theorem_range(m);
    if i < lo || i > hi {
        return Err(Error::IndexOutOfTheoremRange { q, m, i });
    }
    let d = delta(q, m)?;
    let di = delta_i(q, m, i)?;
    if di < 2 {
        return Err(Error::DegenerateCode { delta_i: di });
    }
    // (i - (m-5)/2) m + 1 = ((2i + 5 - m) m) / 2 + 1
    let dimension = ((2 * i as u64 + 5 - m as u64) * m as u64) / 2 + 1;
    let length = modulus(q, m)?;
    let mut enumerated = false;
    if length <= PARAMS_CHECK_MODULUS {
        let dim_enum = bch_dimension(q, m, di as u64)?;
        let bose = bose_distance(q, m, di as u64)?;
        if dim_enum != dimension || bose != di as u64 {
            return Err(Error::UnsupportedParameters(format!(
                "enumeration disagrees with closed form: dimension {dim_enum} vs {dimension}, Bose {bose} vs {di}"
            )));
        }
        enumerated = true;
    }
    Ok(CodeParams {
        q,
        m,
        i,
        length,
        delta: d as u64,
        delta_i: di as u64,
        dimension,
        bose_distance: di as u64,
        enumerated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_adic_examples() {
        assert_eq!(q_adic(0, 2, 5).unwrap().weight, 0);
        let a = q_adic(23, 2, 5).unwrap();
        assert_eq!(a.digits, vec![1, 1, 1, 0, 1]);
        assert_eq!(a.weight, 4);
        let b = q_adic(14, 3, 3).unwrap();
        assert_eq!(b.digits, vec![2, 1, 1]);
        assert_eq!(b.weight, 4);
        assert!(matches!(q_adic(27, 3, 3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn coset_examples() {
        let c = cyclotomic_coset(0, 2, 4).unwrap();
        assert_eq!((c.members.clone(), c.leader, c.size), (vec![0], 0, 1));
        let c = cyclotomic_coset(7, 2, 4).unwrap();
        assert_eq!(c.members, vec![7, 11, 13, 14]);
        assert_eq!((c.leader, c.size), (7, 4));
        let c = cyclotomic_coset(14, 3, 3).unwrap();
        assert_eq!(c.members, vec![14, 16, 22]);
        assert_eq!((c.leader, c.size), (14, 3));
    }

    #[test]
    fn leaders_examples() {
        assert_eq!(coset_leaders_geq(23, 2, 6).unwrap(), vec![23, 27, 31]);
        assert_eq!(coset_leaders_geq(14, 3, 3).unwrap(), vec![14, 17]);
        for (q, m) in [(2u64, 4u32), (3, 3), (5, 2)] {
            let t = q.pow(m) - 2;
            let is_leader = cyclotomic_coset(t, q, m).unwrap().leader == t;
            let got = coset_leaders_geq(t, q, m).unwrap();
            assert_eq!(got, if is_leader { vec![t] } else { vec![] });
        }
    }

    #[test]
    fn dimension_and_bose_examples() {
        assert_eq!(bch_dimension(3, 3, 14).unwrap(), 7);
        assert_eq!(bch_dimension(2, 6, 27).unwrap(), 10);
        assert_eq!(bch_dimension(2, 6, 23).unwrap(), 16);
        assert_eq!(bose_distance(3, 3, 14).unwrap(), 14);
        assert_eq!(bose_distance(2, 4, 4).unwrap(), 5);
        assert_eq!(bose_distance(2, 4, 15).unwrap(), 15);
    }

    #[test]
    fn params_examples() {
        let p = code_params(3, 4, 2).unwrap();
        assert_eq!((p.delta_i, p.dimension), (44, 11));
        let p = code_params(2, 6, 2).unwrap();
        assert_eq!((p.delta_i, p.dimension), (27, 10));
        let p = code_params(3, 3, 1).unwrap();
        assert_eq!((p.delta_i, p.dimension, p.bose_distance), (14, 7, 14));
        assert!(p.enumerated);
        assert_eq!(
            code_params(2, 6, 4).unwrap_err(),
            Error::IndexOutOfTheoremRange { q: 2, m: 6, i: 4 }
        );
        assert!(matches!(
            code_params(2, 3, 1),
            Err(Error::DegenerateCode { .. })
        ));
        assert!(matches!(
            code_params(2, 2, 0),
            Err(Error::UnsupportedParameters(_))
        ));
    }

    #[test]
    fn partition_and_leader_criterion() {
        for (q, m) in [(2u64, 8u32), (3, 5), (4, 4), (5, 3), (7, 3)] {
            let n = q.pow(m) - 1;
            let leaders = coset_leaders(q, m).unwrap();
            assert_eq!(leaders.iter().map(|&(_, s)| s as u64).sum::<u64>(), n);
            for &(s, size) in &leaders {
                let c = cyclotomic_coset(s, q, m).unwrap();
                assert_eq!(c.leader, s);
                assert_eq!(c.size, size);
                assert_eq!(m as usize % size, 0);
            }
            let is_leader: std::collections::HashSet<u64> =
                leaders.iter().map(|&(s, _)| s).collect();
            for s in 0..n {
                let rotations_min = (0..m).map(|k| mul_mod(s, q.pow(k), n)).min().unwrap();
                assert_eq!(is_leader.contains(&s), rotations_min == s);
            }
        }
    }

    #[test]
    fn leader_sets_follow_the_delta_pattern() {
        for q in [2u64, 3, 4, 5, 7] {
            for m in 1..=14u32 {
                if !supported(q, m) || q.pow(m) > 1 << 14 {
                    continue;
                }
                let (lo, hi) = theorem_range(m);
                for i in lo..=hi {
                    let Ok(p) = code_params(q, m, i) else {
                        continue;
                    };
                    let mut expected: Vec<u64> =
                        (lo..=i).map(|j| delta_i(q, m, j).unwrap() as u64).collect();
                    expected.push(p.delta);
                    expected.sort_unstable();
                    assert_eq!(
                        coset_leaders_geq(p.delta_i, q, m).unwrap(),
                        expected,
                        "q={q} m={m} i={i}"
                    );
                    let prop_sum: u64 = coset_leaders(q, m)
                        .unwrap()
                        .into_iter()
                        .filter(|&(s, _)| s >= p.delta_i)
                        .map(|(_, c)| c as u64)
                        .sum::<u64>()
                        + 1;
                    assert_eq!(prop_sum, p.dimension);
                }
            }
        }
    }
}
