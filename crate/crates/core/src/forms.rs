// SPDX-License-Identifier: Apache-2.0

//! Quadratic forms on GF(q)^m and their bilinear polarizations.
//!
//! A [`TraceQuadraticForm`] is `Q(x) = Tr(sum_j λ_j x^{q^j+1})`, with the
//! `j = m/2` slot (m even) read through the trace to GF(q^{m/2}).
//! [`QuadForm`] is the same object in coordinates: an upper-triangular
//! coefficient matrix `C` with `Q(x) = sum_{k<=l} C_kl x_k x_l`.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{BaseField, FieldContext, GfElem};

/// Rank and type of a quadratic or symmetric bilinear form.
///
/// Odd q: `ty` is +1 or -1. Even q: `ty` is 0, 1 or 2, with 1 exactly for
/// odd rank. The zero form is `(0, +1)` for odd q and `(0, 0)` for even q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RankType {
    pub rank: u32,
    #[serde(rename = "type")]
    pub ty: i8,
}

impl RankType {
    pub fn new(rank: u32, ty: i8) -> Self {
        RankType { rank, ty }
    }

    pub fn zero(even_q: bool) -> Self {
        RankType {
            rank: 0,
            ty: if even_q { 0 } else { 1 },
        }
    }
}

/// First slot index `j` of the family: `ceil(m/2)`.
pub fn first_j(m: u32) -> u32 {
    m.div_ceil(2)
}

/// Number of λ slots for parameter `i`: `i + 2 - ceil(m/2)`.
pub fn arity(m: u32, i: u32) -> Result<usize> {
    (i + 2)
        .checked_sub(first_j(m))
        .filter(|&a| a > 0)
        .map(|a| a as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("i={i} gives no λ slots for m={m}")))
}

/// An element `w` with `w + w^{q^{m/2}} = 1`, so that
/// `Tr^{q^{m/2}}_q(z) = Tr^{q^m}_q(w z)` for `z` in GF(q^{m/2}).
pub fn half_trace_lift(ctx: &FieldContext) -> Result<GfElem> {
    if ctx.m() % 2 == 1 {
        return Err(Error::InvalidSubfield { m: ctx.m() });
    }
    ctx.elements()
        .find(|&w| ctx.add(w, ctx.frobenius(w, ctx.m() / 2)) == GfElem::ONE)
        .ok_or_else(|| Error::InvalidArgument("no half-trace lift".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceQuadraticForm {
    pub m: u32,
    pub i: u32,
    /// `λ_j` for `j = ceil(m/2) .. i+1`.
    pub lambdas: Vec<GfElem>,
}

impl TraceQuadraticForm {
    pub fn new(ctx: &FieldContext, i: u32, lambdas: Vec<GfElem>) -> Result<Self> {
        let m = ctx.m();
        let expected = arity(m, i)?;
        if lambdas.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                got: lambdas.len(),
            });
        }
        if lambdas.iter().any(|l| l.0 >= ctx.order()) {
            return Err(Error::InvalidArgument("λ outside the field".into()));
        }
        if m.is_multiple_of(2) && !ctx.in_half_subfield(lambdas[0]) {
            return Err(Error::NotInSubfield);
        }
        Ok(TraceQuadraticForm { m, i, lambdas })
    }

    pub fn zero(ctx: &FieldContext, i: u32) -> Result<Self> {
        Self::new(ctx, i, vec![GfElem::ZERO; arity(ctx.m(), i)?])
    }

    pub fn js(&self) -> impl Iterator<Item = u32> + '_ {
        let j0 = first_j(self.m);
        (0..self.lambdas.len() as u32).map(move |k| j0 + k)
    }

    pub fn is_zero(&self) -> bool {
        self.lambdas.iter().all(|l| l.is_zero())
    }

    /// `(exponent, coefficient)` pairs with `Q(x) = Tr(sum c x^e)`.
    pub fn monomials(&self, ctx: &FieldContext) -> Vec<(u64, GfElem)> {
        let q = ctx.q() as u64;
        let lift = if self.m.is_multiple_of(2) {
            half_trace_lift(ctx).ok()
        } else {
            None
        };
        self.js()
            .zip(&self.lambdas)
            .filter(|(_, l)| !l.is_zero())
            .map(|(j, &l)| {
                let c = if 2 * j == self.m {
                    ctx.mul(l, lift.expect("m even"))
                } else {
                    l
                };
                (q.pow(j) + 1, c)
            })
            .collect()
    }

    pub fn eval(&self, ctx: &FieldContext, x: GfElem) -> u32 {
        let mono = self.monomials(ctx);
        eval_monomials(ctx, &mono, x)
    }

    /// Values `Q(x)` indexed by the element index of `x`.
    pub fn tabulate(&self, ctx: &FieldContext) -> Vec<u32> {
        let by_log = self.tabulate_by_log(ctx);
        let mut out = vec![0u32; ctx.order() as usize];
        for (l, v) in by_log.into_iter().enumerate() {
            out[ctx.exp(l as u64).0 as usize] = v;
        }
        out
    }

    /// Values `Q(α^l)` for `l = 0 .. q^m - 2`.
    pub fn tabulate_by_log(&self, ctx: &FieldContext) -> Vec<u32> {
        let mono = self.monomials(ctx);
        let n = ctx.n() as u64;
        match (ctx.exp_table(), ctx.log_table(), ctx.trace_table()) {
            (Some(exp), Some(log), Some(tr)) => {
                let terms: Vec<(u64, u64)> = mono
                    .iter()
                    .map(|&(e, c)| (e % n, log[c.0 as usize] as u64))
                    .collect();
                let mut pos: Vec<u64> = terms.iter().map(|&(_, lc)| lc).collect();
                let p2 = ctx.p() == 2;
                (0..n)
                    .map(|_| {
                        let mut z = 0u32;
                        for (k, &(step, _)) in terms.iter().enumerate() {
                            let y = exp[pos[k] as usize];
                            z = if p2 {
                                z ^ y
                            } else {
                                ctx.add(GfElem(z), GfElem(y)).0
                            };
                            pos[k] += step;
                            if pos[k] >= n {
                                pos[k] -= n;
                            }
                        }
                        tr[z as usize]
                    })
                    .collect()
            }
            _ => (0..n)
                .map(|l| eval_monomials(ctx, &mono, ctx.exp(l)))
                .collect(),
        }
    }

    pub fn to_quad_form(&self, ctx: &FieldContext) -> QuadForm {
        let mono = self.monomials(ctx);
        QuadForm::from_fn(ctx.base(), ctx.m() as usize, |c| {
            eval_monomials(ctx, &mono, ctx.from_coords(c))
        })
    }
}

fn eval_monomials(ctx: &FieldContext, mono: &[(u64, GfElem)], x: GfElem) -> u32 {
    let z = mono.iter().fold(GfElem::ZERO, |acc, &(e, c)| {
        ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
    });
    ctx.trace(z)
}

/// All λ-tuples for parameter `i`, in lexicographic order of element
/// indices with the first slot most significant.
#[derive(Clone, Debug)]
pub struct FormFamily {
    pub m: u32,
    pub i: u32,
    domains: Vec<Vec<GfElem>>,
}

impl FormFamily {
    pub fn new(ctx: &FieldContext, i: u32) -> Result<Self> {
        let m = ctx.m();
        let a = arity(m, i)?;
        let full: Vec<GfElem> = ctx.elements().collect();
        let mut domains = vec![full; a];
        if m.is_multiple_of(2) {
            domains[0] = ctx.half_subfield_elements()?;
        }
        Ok(FormFamily { m, i, domains })
    }

    pub fn len(&self) -> u64 {
        self.domains.iter().map(|d| d.len() as u64).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn member(&self, mut idx: u64) -> TraceQuadraticForm {
        let mut lambdas = vec![GfElem::ZERO; self.domains.len()];
        for (slot, d) in self.domains.iter().enumerate().rev() {
            let r = d.len() as u64;
            lambdas[slot] = d[(idx % r) as usize];
            idx /= r;
        }
        TraceQuadraticForm {
            m: self.m,
            i: self.i,
            lambdas,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = TraceQuadraticForm> + '_ {
        (0..self.len()).map(move |k| self.member(k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GramKind {
    Symmetric,
    Alternating,
    UpperTriangularCoefficient,
}

/// A square matrix over GF(q), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub kind: GramKind,
    pub entries: Vec<Vec<u32>>,
}

impl GramMatrix {
    pub fn new(kind: GramKind, entries: Vec<Vec<u32>>) -> Self {
        GramMatrix { kind, entries }
    }

    pub fn zero(kind: GramKind, n: usize) -> Self {
        GramMatrix {
            kind,
            entries: vec![vec![0; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| self.entries[r][c] == self.entries[c][r]))
    }

    pub fn is_alternating(&self, f: &BaseField) -> bool {
        let n = self.dim();
        (0..n).all(|r| {
            self.entries[r][r] == 0
                && (0..n).all(|c| self.entries[r][c] == f.neg(self.entries[c][r]))
        })
    }

    /// `x^T M y`.
    pub fn apply(&self, f: &BaseField, x: &[u32], y: &[u32]) -> u32 {
        let mut acc = 0;
        for (r, row) in self.entries.iter().enumerate() {
            if x[r] == 0 {
                continue;
            }
            let s = row
                .iter()
                .zip(y)
                .fold(0, |a, (&m, &v)| f.add(a, f.mul(m, v)));
            acc = f.add(acc, f.mul(x[r], s));
        }
        acc
    }

    /// `P^T M P`.
    pub fn congruent(&self, f: &BaseField, p: &[Vec<u32>]) -> GramMatrix {
        let t = mat_mul(f, &transpose(p), &mat_mul(f, &self.entries, p));
        GramMatrix {
            kind: self.kind,
            entries: t,
        }
    }
}

pub fn transpose(a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|c| a.iter().map(|row| row[c]).collect())
        .collect()
}

pub fn mat_mul(f: &BaseField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[c])))
                })
                .collect()
        })
        .collect()
}

/// Row echelon form in place; returns pivot columns.
pub fn row_reduce(f: &BaseField, a: &mut [Vec<u32>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| a[k][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for k in 0..rows {
            if k != r && a[k][c] != 0 {
                let t = a[k][c];
                for j in 0..cols {
                    let v = f.mul(t, a[r][j]);
                    a[k][j] = f.sub(a[k][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn matrix_rank(f: &BaseField, a: &[Vec<u32>]) -> usize {
    let mut b = a.to_vec();
    row_reduce(f, &mut b).len()
}

/// Basis of `{v : M v = 0}`.
pub fn null_space(f: &BaseField, a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut b = a.to_vec();
    let n = b.first().map_or(0, |r| r.len());
    let pivots = row_reduce(f, &mut b);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(b[r][fc]);
            }
            v
        })
        .collect()
}

pub fn bilinear_rank(f: &BaseField, m: &GramMatrix) -> u32 {
    matrix_rank(f, &m.entries) as u32
}

/// Rank and type of a symmetric matrix over odd q by congruence
/// diagonalization.
pub fn classify_symmetric(f: &BaseField, m: &GramMatrix) -> Result<RankType> {
    if f.is_even() {
        return Err(Error::EvenCharacteristic);
    }
    if !m.is_symmetric() {
        return Err(Error::InvalidArgument("matrix is not symmetric".into()));
    }
    let n = m.dim();
    let mut a = m.entries.clone();
    let mut disc = 1u32;
    let mut rank = 0u32;
    for k in 0..n {
        let pivot = (k..n).find(|&p| a[p][p] != 0);
        let p = match pivot {
            Some(p) => p,
            None => {
                // No usable diagonal entry: fold a column with a nonzero
                // off-diagonal entry into its partner.
                let Some((p, r)) = (k..n)
                    .flat_map(|p| (k..n).map(move |r| (p, r)))
                    .find(|&(p, r)| p != r && a[p][r] != 0)
                else {
                    break;
                };
                add_row_col(f, &mut a, p, r, 1);
                p
            }
        };
        swap_row_col(&mut a, k, p);
        let d = a[k][k];
        let dinv = f.inv(d);
        for r in k + 1..n {
            if a[r][k] != 0 {
                let t = f.neg(f.mul(a[r][k], dinv));
                add_row_col(f, &mut a, r, k, t);
            }
        }
        disc = f.mul(disc, d);
        rank += 1;
    }
    let ty = if rank == 0 { 1 } else { f.eta(disc) };
    Ok(RankType { rank, ty })
}

/// Row/col `dst += t * src` on a symmetric matrix.
fn add_row_col(f: &BaseField, a: &mut [Vec<u32>], dst: usize, src: usize, t: u32) {
    let n = a.len();
    for c in 0..n {
        let v = f.mul(t, a[src][c]);
        a[dst][c] = f.add(a[dst][c], v);
    }
    for r in 0..n {
        let v = f.mul(t, a[r][src]);
        a[r][dst] = f.add(a[r][dst], v);
    }
}

fn swap_row_col(a: &mut [Vec<u32>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// A quadratic form in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    /// `coeffs[k][l]` for `k <= l`; entries below the diagonal are zero.
    pub coeffs: Vec<Vec<u32>>,
}

impl QuadForm {
    pub fn new(coeffs: Vec<Vec<u32>>) -> Self {
        QuadForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        QuadForm {
            coeffs: vec![vec![0; n]; n],
        }
    }

    /// Recovers the coefficients of a quadratic function from its values
    /// on `e_k` and `e_k + e_l`.
    pub fn from_fn(f: &BaseField, n: usize, q: impl Fn(&[u32]) -> u32) -> Self {
        let unit = |ks: &[usize]| {
            let mut v = vec![0u32; n];
            for &k in ks {
                v[k] = 1;
            }
            v
        };
        let diag: Vec<u32> = (0..n).map(|k| q(&unit(&[k]))).collect();
        let mut coeffs = vec![vec![0u32; n]; n];
        for k in 0..n {
            coeffs[k][k] = diag[k];
            for l in k + 1..n {
                let s = q(&unit(&[k, l]));
                coeffs[k][l] = f.sub(f.sub(s, diag[k]), diag[l]);
            }
        }
        QuadForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, f: &BaseField, x: &[u32]) -> u32 {
        let n = self.dim();
        let mut acc = 0;
        for k in 0..n {
            if x[k] == 0 {
                continue;
            }
            let mut s = 0;
            for l in k..n {
                if self.coeffs[k][l] != 0 && x[l] != 0 {
                    s = f.add(s, f.mul(self.coeffs[k][l], x[l]));
                }
            }
            acc = f.add(acc, f.mul(x[k], s));
        }
        acc
    }

    /// `Q'(y) = Q(P y)`.
    pub fn change_basis(&self, f: &BaseField, p: &[Vec<u32>]) -> QuadForm {
        let n = self.dim();
        QuadForm::from_fn(f, n, |y| {
            let x: Vec<u32> = (0..n)
                .map(|r| {
                    p[r].iter()
                        .zip(y)
                        .fold(0, |a, (&c, &v)| f.add(a, f.mul(c, v)))
                })
                .collect();
            self.eval(f, &x)
        })
    }

    /// The coefficient matrix itself.
    pub fn coefficient_matrix(&self) -> GramMatrix {
        GramMatrix::new(GramKind::UpperTriangularCoefficient, self.coeffs.clone())
    }

    /// Odd q: symmetric `B_Q` with `B_Q(x, x) = Q(x)`. Even q: alternating
    /// `B_Q(x, y) = Q(x+y) - Q(x) - Q(y)`.
    pub fn polarize(&self, f: &BaseField) -> GramMatrix {
        let n = self.dim();
        let mut g = vec![vec![0u32; n]; n];
        if f.is_even() {
            for k in 0..n {
                for l in k + 1..n {
                    g[k][l] = self.coeffs[k][l];
                    g[l][k] = self.coeffs[k][l];
                }
            }
            GramMatrix::new(GramKind::Alternating, g)
        } else {
            let half = f.inv(2 % f.p());
            for k in 0..n {
                g[k][k] = self.coeffs[k][k];
                for l in k + 1..n {
                    let v = f.mul(self.coeffs[k][l], half);
                    g[k][l] = v;
                    g[l][k] = v;
                }
            }
            GramMatrix::new(GramKind::Symmetric, g)
        }
    }

    /// Number of `x` in GF(q)^n with `Q(x) = h`, by enumeration.
    pub fn count_solutions(&self, f: &BaseField, h: u32) -> u64 {
        let n = self.dim();
        let q = f.q();
        let mut x = vec![0u32; n];
        let mut count = 0u64;
        loop {
            if self.eval(f, &x) == h {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                x[k] += 1;
                if x[k] < q {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    pub fn classify(&self, f: &BaseField) -> Result<RankType> {
        classify_with_zero_count(f, self, || self.count_solutions(f, 0))
    }
}

/// Even-q classification given a way to count zeros of `Q` over the whole
/// space; odd q ignores the counter.
fn classify_with_zero_count(
    f: &BaseField,
    qf: &QuadForm,
    zeros: impl FnOnce() -> u64,
) -> Result<RankType> {
    let b = qf.polarize(f);
    if !f.is_even() {
        return classify_symmetric(f, &b);
    }
    let rb = bilinear_rank(f, &b);
    let rad = null_space(f, &b.entries);
    if rad.iter().any(|v| qf.eval(f, v) != 0) {
        return Ok(RankType::new(rb + 1, 1));
    }
    if rb == 0 {
        return Ok(RankType::zero(true));
    }
    let n = qf.dim() as u32;
    let q = f.q() as u64;
    let base = q.pow(n - 1);
    let dev = (q - 1) * q.pow(n - (rb + 2) / 2);
    let z = zeros();
    if z == base + dev {
        Ok(RankType::new(rb, 0))
    } else if z + dev == base {
        Ok(RankType::new(rb, 2))
    } else {
        Err(Error::InvalidArgument(format!(
            "zero count {z} matches neither type for rank {rb}"
        )))
    }
}

pub fn polarize(ctx: &FieldContext, q: &TraceQuadraticForm) -> GramMatrix {
    q.to_quad_form(ctx).polarize(ctx.base())
}

pub fn classify_quadratic(ctx: &FieldContext, q: &TraceQuadraticForm) -> Result<RankType> {
    let qf = q.to_quad_form(ctx);
    classify_with_zero_count(ctx.base(), &qf, || {
        q.tabulate_by_log(ctx).iter().filter(|&&v| v == 0).count() as u64 + 1
    })
}

/// Exact number of solutions of `Q(x) = h` on an `n`-dimensional space for
/// a form of the given rank and type.
pub fn count_solutions_closed(f: &BaseField, rt: RankType, h: u32, n: u32) -> Result<BigInt> {
    let r = rt.rank;
    if r == 0 {
        return Err(Error::RankZero);
    }
    if r > n {
        return Err(Error::InvalidArgument(format!(
            "rank {r} exceeds dimension {n}"
        )));
    }
    let q = BigInt::from(f.q());
    let main = q.pow(n - 1);
    let ups = BigInt::from(f.upsilon(h));
    if f.is_even() {
        return Ok(match rt.ty {
            1 => main,
            0 => main + ups * q.pow(n - (r + 2) / 2),
            2 => main - ups * q.pow(n - (r + 2) / 2),
            t => return Err(Error::InvalidArgument(format!("type {t} for even q"))),
        });
    }
    let tau = BigInt::from(rt.ty);
    let eta_m1 = f.eta(f.neg(1));
    let eta_m1 = |k: u32| BigInt::from(if k.is_multiple_of(2) { 1 } else { eta_m1 });
    Ok(if r % 2 == 1 {
        main + tau * eta_m1((r - 1) / 2) * BigInt::from(f.eta(h)) * q.pow(n - r.div_ceil(2))
    } else {
        main + tau * eta_m1(r / 2) * ups * q.pow(n - (r + 2) / 2)
    })
}

/// `x_1 x_2 + .. + x_{2s-1} x_{2s}` plus the extra terms selecting the
/// requested type, as a coordinate form on `n` variables.
///
/// Odd q: `x_1^2 + .. + x_{r-1}^2 + z x_r^2` with `η(z) = τ`.
/// Even q, type 0: `sum x_{2j-1} x_{2j}`; type 1: that plus `x_r^2`;
/// type 2: that with `x_1^2 + λ x_2^2` added, `Tr(λ) = 1`.
pub fn canonical_form(f: &BaseField, rt: RankType, n: usize) -> Result<QuadForm> {
    let r = rt.rank as usize;
    if r > n {
        return Err(Error::InvalidArgument(format!(
            "rank {r} exceeds dimension {n}"
        )));
    }
    let mut c = vec![vec![0u32; n]; n];
    if !f.is_even() {
        if r == 0 {
            return Ok(QuadForm::new(c));
        }
        for (k, row) in c.iter_mut().enumerate().take(r - 1) {
            row[k] = 1;
        }
        let z = if rt.ty == 1 {
            1
        } else {
            (1..f.q())
                .find(|&a| f.eta(a) == -1)
                .expect("odd q has a nonsquare")
        };
        c[r - 1][r - 1] = z;
        return Ok(QuadForm::new(c));
    }
    let pairs = r / 2;
    for j in 0..pairs {
        c[2 * j][2 * j + 1] = 1;
    }
    match (rt.ty, r % 2) {
        (0, 0) => {}
        (1, 1) => c[r - 1][r - 1] = 1,
        (2, 0) if r >= 2 => {
            let lam = (1..f.q())
                .find(|&a| f.prime_trace(a) == 1)
                .expect("trace is onto");
            c[0][0] = 1;
            c[1][1] = lam;
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no even-q form of rank {r} type {}",
                rt.ty
            )))
        }
    }
    Ok(QuadForm::new(c))
}

/// Every rank/type combination with `1 <= rank <= n`.
pub fn all_rank_types(even_q: bool, n: u32) -> Vec<RankType> {
    let mut v = Vec::new();
    for r in 1..=n {
        if even_q {
            if r % 2 == 1 {
                v.push(RankType::new(r, 1));
            } else {
                v.push(RankType::new(r, 0));
                v.push(RankType::new(r, 2));
            }
        } else {
            v.push(RankType::new(r, 1));
            v.push(RankType::new(r, -1));
        }
    }
    v
}

/// Sum of a closed-form table must equal `q^n`; exposed for consistency
/// checks.
pub fn closed_counts_sum(f: &BaseField, rt: RankType, n: u32) -> Result<BigInt> {
    let mut s = BigInt::zero();
    for h in f.elements() {
        s += count_solutions_closed(f, rt, h, n)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(q: u64) -> BaseField {
        BaseField::from_order(q).unwrap()
    }

    #[test]
    fn polarize_examples() {
        let f3 = bf(3);
        assert_eq!(
            QuadForm::zero(3).polarize(&f3),
            GramMatrix::zero(GramKind::Symmetric, 3)
        );
        let mut c = vec![vec![0; 3]; 3];
        c[0][0] = 1;
        let g = QuadForm::new(c).polarize(&f3);
        assert_eq!(g.entries, vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
    }

    #[test]
    fn polarize_matches_bilinear_trace_expression() {
        // B(x, y) = Tr((λ/2 x^{q^2} + (λ/2)^{q^{-2}} x^{q^{-2}}) y) for Q = Tr(λ x^{q^2+1}).
        let ctx = FieldContext::build(3, 1, 3, None).unwrap();
        let lam = ctx.alpha();
        let q = TraceQuadraticForm::new(&ctx, 1, vec![lam]).unwrap();
        let g = polarize(&ctx, &q);
        let half = ctx.embed(2); // 1/2 = 2 in GF(3)
        let l2 = ctx.mul(lam, half);
        let l2_inv_frob = ctx.frobenius(l2, 1); // q^{-2} = q^{1} for m = 3
        for a in 0..3u32 {
            for b in 0..3u32 {
                let x = ctx.basis(a);
                let y = ctx.basis(b);
                let t = ctx.add(
                    ctx.mul(l2, ctx.frobenius(x, 2)),
                    ctx.mul(l2_inv_frob, ctx.frobenius(x, 1)),
                );
                assert_eq!(g.entries[a as usize][b as usize], ctx.trace(ctx.mul(t, y)));
            }
        }
    }

    #[test]
    fn rank_examples() {
        let f3 = bf(3);
        assert_eq!(
            bilinear_rank(&f3, &GramMatrix::zero(GramKind::Symmetric, 3)),
            0
        );
        let id: Vec<Vec<u32>> = (0..4)
            .map(|r| (0..4).map(|c| (r == c) as u32).collect())
            .collect();
        assert_eq!(
            bilinear_rank(&f3, &GramMatrix::new(GramKind::Symmetric, id)),
            4
        );
        let mut alt = vec![vec![0u32; 4]; 4];
        alt[0][1] = 1;
        alt[1][0] = 2;
        let g = GramMatrix::new(GramKind::Alternating, alt);
        assert!(g.is_alternating(&f3));
        assert_eq!(bilinear_rank(&f3, &g), 2);
    }

    #[test]
    fn classify_symmetric_examples() {
        let f3 = bf(3);
        let diag = |d: [u32; 3]| {
            GramMatrix::new(
                GramKind::Symmetric,
                (0..3)
                    .map(|r| (0..3).map(|c| if r == c { d[r] } else { 0 }).collect())
                    .collect(),
            )
        };
        assert_eq!(
            classify_symmetric(&f3, &diag([1, 1, 0])).unwrap(),
            RankType::new(2, 1)
        );
        assert_eq!(
            classify_symmetric(&f3, &diag([1, 2, 0])).unwrap(),
            RankType::new(2, -1)
        );
        assert_eq!(
            classify_symmetric(&f3, &diag([0, 0, 0])).unwrap(),
            RankType::new(0, 1)
        );
        // Hyperbolic plane: no diagonal pivot.
        let h = GramMatrix::new(GramKind::Symmetric, vec![vec![0, 1], vec![1, 0]]);
        let rt = classify_symmetric(&f3, &h).unwrap();
        assert_eq!(rt.rank, 2);
        assert_eq!(rt.ty, f3.eta(f3.neg(1)));
        assert_eq!(
            classify_symmetric(&bf(2), &h),
            Err(Error::EvenCharacteristic)
        );
    }

    #[test]
    fn classify_even_examples() {
        let f2 = bf(2);
        let mut c = vec![vec![0u32; 3]; 3];
        c[0][1] = 1;
        assert_eq!(
            QuadForm::new(c.clone()).classify(&f2).unwrap(),
            RankType::new(2, 0)
        );
        c[0][0] = 1;
        c[1][1] = 1;
        assert_eq!(QuadForm::new(c).classify(&f2).unwrap(), RankType::new(2, 2));
        assert_eq!(
            QuadForm::zero(3).classify(&f2).unwrap(),
            RankType::new(0, 0)
        );
        let f4 = bf(4);
        let mut c = vec![vec![0u32; 2]; 2];
        c[0][1] = 1;
        c[0][0] = 1;
        let lam = (1..4).find(|&a| f4.prime_trace(a) == 1).unwrap();
        c[1][1] = lam;
        assert_eq!(QuadForm::new(c).classify(&f4).unwrap(), RankType::new(2, 2));
    }

    #[test]
    fn closed_count_examples() {
        let f3 = bf(3);
        assert_eq!(
            count_solutions_closed(&f3, RankType::new(1, 1), 1, 2).unwrap(),
            BigInt::from(6)
        );
        let f2 = bf(2);
        assert_eq!(
            count_solutions_closed(&f2, RankType::new(2, 0), 0, 2).unwrap(),
            BigInt::from(3)
        );
        for h in 0..2 {
            assert_eq!(
                count_solutions_closed(&f2, RankType::new(3, 1), h, 5).unwrap(),
                BigInt::from(16)
            );
        }
        assert_eq!(
            count_solutions_closed(&f2, RankType::new(0, 0), 0, 2),
            Err(Error::RankZero)
        );
    }

    #[test]
    fn canonical_forms_have_their_rank_type() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = bf(q);
            for n in 1..=4usize {
                if (q as usize).pow(n as u32) > 5000 {
                    continue;
                }
                for rt in all_rank_types(f.is_even(), n as u32) {
                    let qf = canonical_form(&f, rt, n).unwrap();
                    assert_eq!(qf.classify(&f).unwrap(), rt, "q={q} n={n}");
                    for h in f.elements() {
                        assert_eq!(
                            BigInt::from(qf.count_solutions(&f, h)),
                            count_solutions_closed(&f, rt, h, n as u32).unwrap(),
                            "q={q} n={n} rt={rt:?} h={h}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn family_sizes() {
        let ctx = FieldContext::build(3, 1, 4, None).unwrap();
        assert_eq!(FormFamily::new(&ctx, 1).unwrap().len(), 9);
        assert_eq!(FormFamily::new(&ctx, 2).unwrap().len(), 729);
        let ctx = FieldContext::build(3, 1, 3, None).unwrap();
        let fam = FormFamily::new(&ctx, 1).unwrap();
        assert_eq!(fam.len(), 27);
        assert!(fam.member(0).is_zero());
        assert!(TraceQuadraticForm::new(&ctx, 1, vec![GfElem::ONE, GfElem::ONE]).is_err());
    }

    #[test]
    fn tabulation_matches_pointwise_eval() {
        for (p, e, m, i) in [(3, 1, 4, 2), (2, 1, 6, 2), (2, 2, 3, 1), (5, 1, 2, 1)] {
            let ctx = FieldContext::build(p, e, m, None).unwrap();
            let fam = FormFamily::new(&ctx, i).unwrap();
            for k in (0..fam.len()).step_by(7).take(20) {
                let qf = fam.member(k);
                let tab = qf.tabulate(&ctx);
                for x in ctx.elements() {
                    assert_eq!(tab[x.0 as usize], qf.eval(&ctx, x));
                }
                let cf = qf.to_quad_form(&ctx);
                for x in ctx.elements() {
                    assert_eq!(cf.eval(ctx.base(), &ctx.coords(x)), tab[x.0 as usize]);
                }
            }
        }
    }
}
