// SPDX-License-Identifier: Apache-2.0

//! Inner distributions of the form families in the symmetric, alternating
//! and quadratic-form schemes, Schmidt's closed forms, the Delsarte-Goethals
//! bound and the extension-count test for t-designs.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{
    bilinear_rank, classify_quadratic, classify_symmetric, mat_mul, row_reduce, transpose,
    FormFamily, GramKind, GramMatrix, RankType, TraceQuadraticForm,
};
use crate::gf::{BaseField, FieldContext, GfElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    Sym,
    Alt,
    Qua,
}

/// Inner distribution of an additive family, keyed by rank and type.
///
/// `Alt` distributions use type 0 throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDistribution {
    pub kind: SchemeKind,
    pub ambient_dim: u32,
    pub entries: BTreeMap<RankType, BigInt>,
}

impl InnerDistribution {
    pub fn new(kind: SchemeKind, ambient_dim: u32) -> Self {
        InnerDistribution {
            kind,
            ambient_dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, rt: RankType) -> BigInt {
        self.entries.get(&rt).cloned().unwrap_or_default()
    }

    /// Sum over all types at a given rank.
    pub fn rank_total(&self, rank: u32) -> BigInt {
        self.entries
            .iter()
            .filter(|(k, _)| k.rank == rank)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }

    /// Drops zero entries so that equality compares supports.
    pub fn normalized(mut self) -> Self {
        self.entries.retain(|_, v| !v.is_zero());
        self
    }

    pub fn min_nonzero_rank(&self) -> Option<u32> {
        self.entries
            .iter()
            .filter(|(k, v)| k.rank > 0 && !v.is_zero())
            .map(|(k, _)| k.rank)
            .min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| {
                let key = match self.kind {
                    SchemeKind::Alt => k.rank.to_string(),
                    _ => format!("{},{}", k.rank, k.ty),
                };
                (key, serde_json::Value::String(v.to_string()))
            })
            .collect();
        serde_json::json!({
            "kind": format!("{:?}", self.kind),
            "ambient_dim": self.ambient_dim,
            "entries": map,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Q1,
    Q2,
    S1,
    S2,
    A1,
    A2,
}

impl FamilyKind {
    pub fn scheme(self) -> SchemeKind {
        match self {
            FamilyKind::Q1 | FamilyKind::Q2 => SchemeKind::Qua,
            FamilyKind::S1 | FamilyKind::S2 => SchemeKind::Sym,
            FamilyKind::A1 | FamilyKind::A2 => SchemeKind::Alt,
        }
    }

    fn needs_odd_m(self) -> bool {
        matches!(self, FamilyKind::Q1 | FamilyKind::S1 | FamilyKind::A1)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "Q1" => FamilyKind::Q1,
            "Q2" => FamilyKind::Q2,
            "S1" => FamilyKind::S1,
            "S2" => FamilyKind::S2,
            "A1" => FamilyKind::A1,
            "A2" => FamilyKind::A2,
            _ => return Err(Error::InvalidArgument(format!("unknown family {s}"))),
        })
    }

    /// The family of the given scheme matching the parity of `m`.
    pub fn for_scheme(scheme: SchemeKind, m: u32) -> Self {
        let odd = m % 2 == 1;
        match (scheme, odd) {
            (SchemeKind::Qua, true) => FamilyKind::Q1,
            (SchemeKind::Qua, false) => FamilyKind::Q2,
            (SchemeKind::Sym, true) => FamilyKind::S1,
            (SchemeKind::Sym, false) => FamilyKind::S2,
            (SchemeKind::Alt, true) => FamilyKind::A1,
            (SchemeKind::Alt, false) => FamilyKind::A2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub q: u64,
    pub m: u32,
    pub i: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, q: u64, m: u32, i: u32) -> Result<Self> {
        let spec = FamilySpec { kind, q, m, i };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let mismatch = || Error::ParityMismatch {
            kind: format!("{:?}", self.kind),
            q: self.q,
            m: self.m,
        };
        if self.kind.needs_odd_m() != (self.m % 2 == 1) {
            return Err(mismatch());
        }
        let even_q = self.q.is_multiple_of(2);
        match self.kind.scheme() {
            SchemeKind::Sym if even_q => Err(mismatch()),
            SchemeKind::Alt if !even_q => Err(mismatch()),
            _ => Ok(()),
        }
    }

    /// `q^{m(i - (m-3)/2)}`.
    pub fn size(&self) -> BigInt {
        let e = (self.m as u64 * (2 * self.i as u64 + 3 - self.m as u64)) / 2;
        BigInt::from(self.q).pow(e as u32)
    }
}

/// A member of a family: the quadratic form for `Q` kinds, the bilinear
/// Gram matrix for `S` and `A` kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyMember {
    Quadratic(TraceQuadraticForm),
    Bilinear(GramMatrix),
}

/// Gram matrix on the polynomial basis of the bilinear form
/// `Tr((c_{m/2} x^{q^{m/2}} + sum_j (c_j x^{q^j} + c_j^{q^{-j}} x^{q^{-j}})) y)`,
/// where `c_j = λ_j/2` for the symmetric families and `c_j = λ_j` for the
/// alternating ones.
pub fn bilinear_member(
    ctx: &FieldContext,
    form: &TraceQuadraticForm,
    kind: SchemeKind,
) -> GramMatrix {
    let m = ctx.m();
    let scale = match kind {
        SchemeKind::Sym => ctx.embed(ctx.base().inv(2 % ctx.p())),
        _ => GfElem::ONE,
    };
    let terms: Vec<(u32, GfElem)> = form
        .js()
        .zip(&form.lambdas)
        .map(|(j, &l)| (j, ctx.mul(l, scale)))
        .collect();
    let image = |x: GfElem| {
        terms.iter().fold(GfElem::ZERO, |acc, &(j, c)| {
            let mut t = ctx.mul(c, ctx.frobenius(x, j));
            if 2 * j != m {
                // c^{q^{-j}} x^{q^{-j}} = (c x)^{q^{m-j}}
                t = ctx.add(t, ctx.frobenius(ctx.mul(c, x), m - j));
            }
            ctx.add(acc, t)
        })
    };
    let basis: Vec<GfElem> = (0..m).map(|k| ctx.basis(k)).collect();
    let entries = basis
        .iter()
        .map(|&x| {
            let ix = image(x);
            basis.iter().map(|&y| ctx.trace(ctx.mul(ix, y))).collect()
        })
        .collect();
    let gk = if kind == SchemeKind::Alt {
        GramKind::Alternating
    } else {
        GramKind::Symmetric
    };
    GramMatrix::new(gk, entries)
}

pub fn enumerate_family<'a>(
    ctx: &'a FieldContext,
    spec: &FamilySpec,
) -> Result<impl Iterator<Item = FamilyMember> + 'a> {
    spec.validate()?;
    check_ctx(ctx, spec)?;
    let fam = FormFamily::new(ctx, spec.i)?;
    let scheme = spec.kind.scheme();
    Ok((0..fam.len()).map(move |k| {
        let f = fam.member(k);
        match scheme {
            SchemeKind::Qua => FamilyMember::Quadratic(f),
            s => FamilyMember::Bilinear(bilinear_member(ctx, &f, s)),
        }
    }))
}

fn check_ctx(ctx: &FieldContext, spec: &FamilySpec) -> Result<()> {
    if ctx.q() as u64 != spec.q || ctx.m() != spec.m {
        return Err(Error::InvalidArgument(
            "field does not match family parameters".into(),
        ));
    }
    Ok(())
}

fn classify_member(ctx: &FieldContext, member: &FamilyMember) -> Result<RankType> {
    let f = ctx.base();
    match member {
        FamilyMember::Quadratic(qf) => classify_quadratic(ctx, qf),
        FamilyMember::Bilinear(g) if g.kind == GramKind::Alternating => {
            Ok(RankType::new(bilinear_rank(f, g), 0))
        }
        FamilyMember::Bilinear(g) => classify_symmetric(f, g),
    }
}

/// Exact census of a family, with work partitioned across the rayon pool.
pub fn census_inner_distribution(
    ctx: &FieldContext,
    spec: &FamilySpec,
    max_members: u64,
) -> Result<InnerDistribution> {
    spec.validate()?;
    check_ctx(ctx, spec)?;
    let fam = FormFamily::new(ctx, spec.i)?;
    if fam.len() > max_members {
        return Err(Error::BudgetExceeded {
            what: "family census".into(),
            needed: fam.len() as u128,
            limit: max_members as u128,
        });
    }
    let scheme = spec.kind.scheme();
    let tally = (0..fam.len())
        .into_par_iter()
        .map(|k| {
            let f = fam.member(k);
            let member = match scheme {
                SchemeKind::Qua => FamilyMember::Quadratic(f),
                s => FamilyMember::Bilinear(bilinear_member(ctx, &f, s)),
            };
            classify_member(ctx, &member)
        })
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<RankType, u64>, rt| {
            *acc.entry(rt?).or_insert(0) += 1;
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })?;
    let mut dist = InnerDistribution::new(scheme, spec.m);
    dist.entries = tally
        .into_iter()
        .map(|(k, v)| (k, BigInt::from(v)))
        .collect();
    Ok(dist)
}

/// `prod_{i=1}^{k} (q^{2n-2i+2} - 1)/(q^{2i} - 1)`; zero when `k > n`.
pub fn qsq_binomial(n: i64, k: i64, q: u64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=k {
        num *= q.pow((2 * n - 2 * i + 2) as u32) - 1;
        den *= q.pow((2 * i) as u32) - 1;
    }
    num / den
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchmidtCase {
    /// (2l-1)-code and (2n-2l+3)-design in Sym(2n+1).
    OddDim,
    /// (2l)-code and (2n-2l+1)-design in Sym(2n).
    EvenDim,
    /// (2l)-code and (2n-2l+1, η(-1)^{n-l+1})-design in Sym(2n+1).
    OddDimSecond,
}

/// Exact rational `q^e` for a possibly negative exponent.
fn qpow(q: &BigRational, e: i64) -> BigRational {
    q.pow(e as i32)
}

fn ratio(size: &BigInt, q: u64, num_exp: i64, den_exp: i64) -> BigRational {
    let qr = BigRational::from_integer(BigInt::from(q));
    BigRational::from_integer(size.clone()) * qpow(&qr, num_exp - den_exp)
}

fn sgn(j: i64) -> BigRational {
    if j % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Schmidt's inner distribution for a subset of size `size` of Sym(2n+1,q)
/// or Sym(2n,q) with the code/design parameters of `case`.
///
/// Every entry is checked to be a nonnegative integer.
pub fn schmidt_inner_distribution(
    case: SchmidtCase,
    q: u64,
    n: u32,
    l: u32,
    size: &BigInt,
) -> Result<InnerDistribution> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristic);
    }
    let f = BaseField::from_order(q)?;
    let eta_m1 = f.eta(f.neg(1)) as i64;
    let eta_pow = |i: i64| if i % 2 == 0 { 1 } else { eta_m1 };
    let qb = |a: i64, b: i64| BigRational::from_integer(qsq_binomial(a, b, q));
    let qi = |e: i64| BigRational::from_integer(BigInt::from(q).pow(e as u32));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (n, l) = (n as i64, l as i64);
    let dim = match case {
        SchmidtCase::EvenDim => 2 * n,
        _ => 2 * n + 1,
    };
    // sum_{j=0}^{top} (-1)^j q^{j(j-1)} [i;j] (|Y| q^{a j} / q^{c(base + j - i)} - 1)
    let inner = |i: i64,
                 top: i64,
                 bin_top: i64,
                 a: i64,
                 c: i64,
                 base: i64,
                 extra_den: i64,
                 minus_one: bool| {
        let mut s = BigRational::zero();
        for j in 0..=top {
            let t = ratio(size, q, a * j, c * (base + j - i) + extra_den);
            let t = if minus_one { t - BigRational::one() } else { t };
            s += sgn(j) * qi(j * (j - 1)) * qb(bin_top, j) * t;
        }
        s
    };
    let mut out = InnerDistribution::new(SchemeKind::Sym, dim as u32);
    out.entries.insert(RankType::new(0, 1), BigInt::one());
    let mut put = |rank: i64, tau: i8, v: BigRational| -> Result<()> {
        if rank < 1 || rank > dim {
            return Ok(());
        }
        if !v.is_integer() {
            return Err(Error::NonIntegralResult(format!("a_({rank},{tau}) = {v}")));
        }
        let v = v.to_integer();
        if v.is_negative() {
            return Err(Error::NegativeEntry(format!("a_({rank},{tau}) = {v}")));
        }
        out.entries.insert(RankType::new(rank as u32, tau), v);
        Ok(())
    };
    for i in 1..=n + 1 {
        for tau in [1i8, -1] {
            let t = tau as i64;
            match case {
                SchmidtCase::OddDim => {
                    let s = inner(i, i - l, i, 0, 2 * n + 1, n + 1, 0, true);
                    put(2 * i - 1, tau, &half * qb(n, i - 1) * &s)?;
                    let coef =
                        qi(2 * i) + BigRational::from_integer(BigInt::from(t * eta_pow(i))) * qi(i);
                    put(2 * i, tau, &half * coef * qb(n, i) * &s)?;
                }
                SchmidtCase::EvenDim => {
                    let s1 = inner(i, i - l - 1, i - 1, 2, 2 * n + 1, n + 1, 0, false);
                    put(
                        2 * i - 1,
                        tau,
                        &half * (qi(2 * i) - BigRational::one()) * qb(n, i) * s1,
                    )?;
                    let s2 = inner(i, i - l, i, 2, 2 * n + 1, n, 0, true);
                    let s3 = inner(i, i - l, i, 0, 2 * n - 1, n, 2 * n, true);
                    let sign = BigRational::from_integer(BigInt::from(t * eta_pow(i)));
                    let v = &half * qb(n, i) * s2 + &half * sign * qi(i) * qb(n, i) * s3;
                    put(2 * i, tau, v)?;
                }
                SchmidtCase::OddDimSecond => {
                    let s = inner(i, i - l, i, 0, 2 * n + 1, n + 1, 0, true);
                    let d = i - l;
                    let tail = ratio(size, q, 0, (2 * n + 1) * (n - l + 1)) - BigRational::one();
                    let a_odd = &half * qb(n, i - 1) * &s
                        + &half
                            * sgn(d)
                            * qpow_signed(q, d * (d - 1))
                            * qb(n, l - 1)
                            * &tail
                            * (qb(n - l, n - i + 1) * (qi(n - l + 1) + BigRational::one())
                                - qb(n - l + 1, n - i + 1));
                    put(2 * i - 1, tau, a_odd)?;
                    let coef =
                        qi(2 * i) + BigRational::from_integer(BigInt::from(t * eta_pow(i))) * qi(i);
                    let a_even = &half * coef * qb(n, i) * &s
                        + &half
                            * sgn(d)
                            * qpow_signed(q, (d + 1) * d)
                            * qb(n, l - 1)
                            * qb(n - l, n - i)
                            * (qi(n - l + 1) + BigRational::one())
                            * &tail;
                    put(2 * i, tau, a_even)?;
                }
            }
        }
    }
    Ok(out)
}

/// Closed-form inner distribution of `S_1(i)` (odd `m`) or `S_2(i)` (even
/// `m`) in Sym(m, q), which equals that of the quadratic family `Q_1`/`Q_2`.
pub fn family_distribution_closed(q: u64, m: u32, i: u32) -> Result<InnerDistribution> {
    let kind = if m % 2 == 1 {
        FamilyKind::S1
    } else {
        FamilyKind::S2
    };
    let spec = FamilySpec::new(kind, q, m, i)?;
    if 2 * i + 2 < m || i >= m {
        return Err(Error::OutOfRange {
            value: i as u64,
            limit: m as u64,
        });
    }
    let size = spec.size();
    if m % 2 == 1 {
        schmidt_inner_distribution(SchmidtCase::OddDim, q, (m - 1) / 2, m - i, &size)
    } else {
        schmidt_inner_distribution(SchmidtCase::EvenDim, q, m / 2, m - i - 1, &size)
    }
}

fn qpow_signed(q: u64, e: i64) -> BigRational {
    qpow(&BigRational::from_integer(BigInt::from(q)), e)
}

/// Delsarte-Goethals bound on a 2d-code in Alt(n, q).
pub fn dg_bound(n: u32, d: u32, q: u64) -> Result<BigInt> {
    if d > n / 2 {
        return Err(Error::OutOfRange {
            value: d as u64,
            limit: (n / 2) as u64,
        });
    }
    let (n, d) = (n as u64, d as u64);
    // n odd: n((n+1)/2 - d) = n(n+1-2d)/2; n even: (n-1)(n+2-2d)/2.
    let e = if n % 2 == 1 {
        n * (n + 1 - 2 * d) / 2
    } else {
        (n - 1) * (n + 2 - 2 * d) / 2
    };
    Ok(BigInt::from(q).pow(e as u32))
}

/// No nonzero member of rank below `d`.
pub fn is_d_code(dist: &InnerDistribution, d: u32) -> bool {
    dist.entries
        .iter()
        .all(|(k, v)| k.rank == 0 || k.rank >= d || v.is_zero())
}

/// A `d`-code that is not a `(d+1)`-code (`(d+2)` for alternating forms).
pub fn is_proper_d_code(dist: &InnerDistribution, d: u32) -> bool {
    let step = if dist.kind == SchemeKind::Alt { 2 } else { 1 };
    is_d_code(dist, d) && !is_d_code(dist, d + step)
}

/// Row-reduced echelon bases of all `t`-dimensional subspaces of GF(q)^m.
pub fn subspaces(f: &BaseField, m: usize, t: usize) -> Vec<Vec<Vec<u32>>> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    if t == 0 {
        out.push(Vec::new());
        return out;
    }
    // Choose pivot columns, then fill the free entries right of each pivot.
    let mut pivots: Vec<usize> = (0..t).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..t)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pv[r] + 1)..m)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut b = vec![vec![0u32; m]; t];
            for (r, &p) in pivots.iter().enumerate() {
                b[r][p] = 1;
            }
            for &(r, c) in &free {
                b[r][c] = (code % q) as u32;
                code /= q;
            }
            out.push(b);
        }
        // next combination
        let mut k = t;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if pivots[k] < m - t + k {
                pivots[k] += 1;
                for r in k + 1..t {
                    pivots[r] = pivots[r - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Whether every symmetric form on every `t`-dimensional subspace has the
/// same number of extensions in `members`.
pub fn t_design_check(
    f: &BaseField,
    m: usize,
    members: &[GramMatrix],
    t: usize,
    max_work: u64,
) -> Result<bool> {
    if f.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    if t == 0 {
        return Ok(true);
    }
    let subs = subspaces(f, m, t);
    let work = subs.len() as u64 * members.len() as u64;
    if work > max_work {
        return Err(Error::BudgetExceeded {
            what: "design check".into(),
            needed: work as u128,
            limit: max_work as u128,
        });
    }
    let n_forms = (f.q() as u64).pow((t * (t + 1) / 2) as u32);
    let mut constant: Option<u64> = None;
    for u in &subs {
        let ut = transpose(u);
        let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
        for g in members {
            let a = mat_mul(f, &mat_mul(f, u, &g.entries), &ut);
            let key: Vec<u32> = (0..t)
                .flat_map(|r| (r..t).map(move |c| (r, c)))
                .map(|(r, c)| a[r][c])
                .collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        if counts.len() as u64 != n_forms {
            return Ok(false);
        }
        for &c in counts.values() {
            match constant {
                None => constant = Some(c),
                Some(k) if k != c => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// Rank of a `t x m` basis; used to sanity check subspace generation.
pub fn basis_rank(f: &BaseField, b: &[Vec<u32>]) -> usize {
    let mut c = b.to_vec();
    row_reduce(f, &mut c).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qsq_binomial_values() {
        assert_eq!(qsq_binomial(5, 0, 3), BigInt::from(1));
        assert_eq!(qsq_binomial(1, 1, 3), BigInt::from(1));
        assert_eq!(qsq_binomial(2, 1, 3), BigInt::from(10));
        assert_eq!(qsq_binomial(2, 1, 2), BigInt::from(5));
        assert_eq!(qsq_binomial(1, 2, 3), BigInt::from(0));
    }

    #[test]
    fn dg_bound_values() {
        assert_eq!(dg_bound(3, 0, 2).unwrap(), BigInt::from(64));
        assert_eq!(dg_bound(5, 2, 2).unwrap(), BigInt::from(32));
        assert_eq!(dg_bound(4, 2, 2).unwrap(), BigInt::from(8));
    }

    #[test]
    fn subspace_counts() {
        let f = BaseField::new(3, 1).unwrap();
        assert_eq!(subspaces(&f, 3, 2).len(), 13);
        assert_eq!(subspaces(&f, 4, 2).len(), 130);
        assert_eq!(subspaces(&f, 3, 1).len(), 13);
        for b in subspaces(&f, 4, 2) {
            assert_eq!(basis_rank(&f, &b), 2);
        }
    }

    fn census(kind: FamilyKind, q: u64, m: u32, i: u32) -> InnerDistribution {
        let ctx = FieldContext::for_q(q, m).unwrap();
        census_inner_distribution(&ctx, &FamilySpec::new(kind, q, m, i).unwrap(), 1 << 20).unwrap()
    }

    #[test]
    fn closed_form_matches_census() {
        let s1 = census(FamilyKind::S1, 3, 3, 1);
        let want: BTreeMap<RankType, BigInt> = [((0, 1), 1), ((3, 1), 13), ((3, -1), 13)]
            .into_iter()
            .map(|((r, t), v)| (RankType::new(r, t), BigInt::from(v)))
            .collect();
        assert_eq!(s1.entries, want);
        for (q, m, i) in [
            (3u64, 3u32, 1u32),
            (3, 4, 1),
            (3, 4, 2),
            (5, 2, 0),
            (5, 2, 1),
            (5, 3, 1),
            (7, 2, 1),
        ] {
            let kind = if m % 2 == 1 {
                FamilyKind::S1
            } else {
                FamilyKind::S2
            };
            let closed = family_distribution_closed(q, m, i).unwrap().normalized();
            assert_eq!(
                closed,
                census(kind, q, m, i).normalized(),
                "q={q} m={m} i={i}"
            );
        }
    }

    #[test]
    fn second_odd_formula_agrees() {
        let spec = FamilySpec::new(FamilyKind::S1, 3, 5, 2).unwrap();
        let a = schmidt_inner_distribution(SchmidtCase::OddDim, 3, 2, 3, &spec.size()).unwrap();
        let b =
            schmidt_inner_distribution(SchmidtCase::OddDimSecond, 3, 2, 2, &spec.size()).unwrap();
        assert_eq!(a.normalized(), b.normalized());
    }

    #[test]
    fn quadratic_and_symmetric_censuses_coincide() {
        for (q, m, i) in [(3u64, 3u32, 1u32), (3, 4, 2), (5, 2, 1)] {
            let (qk, sk) = if m % 2 == 1 {
                (FamilyKind::Q1, FamilyKind::S1)
            } else {
                (FamilyKind::Q2, FamilyKind::S2)
            };
            let qd = census(qk, q, m, i);
            let sd = census(sk, q, m, i);
            assert_eq!(qd.entries, sd.entries, "q={q} m={m} i={i}");
        }
    }

    #[test]
    fn quadratic_census_refines_alternating() {
        for (q, m, i) in [(2u64, 5u32, 2u32), (2, 6, 2), (4, 3, 1), (2, 4, 1)] {
            let (qk, ak) = if m % 2 == 1 {
                (FamilyKind::Q1, FamilyKind::A1)
            } else {
                (FamilyKind::Q2, FamilyKind::A2)
            };
            let d = census(qk, q, m, i);
            let b = census(ak, q, m, i);
            for s in 0..=m / 2 {
                let lhs = d.get(RankType::new(2 * s, 0))
                    + d.get(RankType::new(2 * s + 1, 1))
                    + d.get(RankType::new(2 * s, 2));
                assert_eq!(
                    lhs,
                    b.get(RankType::new(2 * s, 0)),
                    "q={q} m={m} i={i} s={s}"
                );
            }
        }
    }

    #[test]
    fn alternating_family_meets_bound() {
        let b = census(FamilyKind::A1, 2, 5, 2);
        assert_eq!(b.get(RankType::new(0, 0)), BigInt::from(1));
        assert_eq!(b.total(), BigInt::from(32));
        assert!(is_proper_d_code(&b, 4));
        assert_eq!(dg_bound(5, 2, 2).unwrap(), b.total());
    }

    #[test]
    fn design_check_positive_and_negative() {
        let ctx = FieldContext::for_q(3, 3).unwrap();
        let spec = FamilySpec::new(FamilyKind::S1, 3, 3, 1).unwrap();
        let members: Vec<GramMatrix> = enumerate_family(&ctx, &spec)
            .unwrap()
            .map(|m| match m {
                FamilyMember::Bilinear(g) => g,
                FamilyMember::Quadratic(_) => unreachable!(),
            })
            .collect();
        let f = ctx.base();
        assert!(t_design_check(f, 3, &members, 2, 1 << 20).unwrap());
        let mut bad = members.clone();
        bad[2] = bad[1].clone();
        assert!(!t_design_check(f, 3, &bad, 2, 1 << 20).unwrap());
    }
}
