// SPDX-License-Identifier: Apache-2.0

//! Narrow-sense primitive BCH codes from generator polynomials and from
//! trace representations, and the first-order punctured Reed-Muller code.
//!
//! Codeword coordinates are always ordered `x = α^0, α^1, .., α^{n-1}`.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{coset_leaders, cyclotomic_coset, CodeParams};
use crate::error::{Error, Result};
use crate::forms::{arity, FormFamily, TraceQuadraticForm};
use crate::gf::{FieldContext, GfElem};
use crate::poly::Poly;

/// `m_s(x) = prod_{k in C_s} (x - α^k)`, with coefficients in GF(q).
pub fn minimal_polynomial(ctx: &FieldContext, s: u64) -> Result<Poly> {
    let coset = cyclotomic_coset(s, ctx.q() as u64, ctx.m())?;
    // Coefficients over GF(q^m), lowest degree first.
    let mut acc = vec![GfElem::ONE];
    for &k in &coset.members {
        let root = ctx.neg(ctx.exp(k));
        let mut next = vec![GfElem::ZERO; acc.len() + 1];
        for (d, &c) in acc.iter().enumerate() {
            next[d + 1] = ctx.add(next[d + 1], c);
            next[d] = ctx.add(next[d], ctx.mul(c, root));
        }
        acc = next;
    }
    if let Some(bad) = acc.iter().find(|c| !ctx.in_base(**c)) {
        return Err(Error::InvalidArgument(format!(
            "minimal polynomial coefficient {} not in GF(q)",
            bad.0
        )));
    }
    Ok(Poly::new(acc.into_iter().map(|c| c.0).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCode {
    pub q: u64,
    pub m: u32,
    pub length: u64,
    pub generator: Poly,
    pub dimension: u64,
}

impl CyclicCode {
    pub fn contains(&self, ctx: &FieldContext, word: &[u32]) -> bool {
        word.len() as u64 == self.length
            && Poly::new(word.to_vec())
                .rem(&self.generator, ctx.base())
                .is_zero()
    }

    /// Rows `x^k g(x)`, `k < dimension`, as length-`n` vectors.
    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        let n = self.length as usize;
        (0..self.dimension as usize)
            .map(|k| {
                let mut row = vec![0u32; n];
                for (d, &c) in self.generator.coeffs().iter().enumerate() {
                    row[k + d] = c;
                }
                row
            })
            .collect()
    }
}

/// `lcm(m_1, .., m_{δ-1})`, taken as the product over distinct cosets.
pub fn generator_polynomial(ctx: &FieldContext, delta: u64) -> Result<CyclicCode> {
    let q = ctx.q() as u64;
    let m = ctx.m();
    let n = ctx.n() as u64;
    if delta < 2 || delta > n {
        return Err(Error::OutOfRange {
            value: delta,
            limit: n,
        });
    }
    let leaders: Vec<u64> = coset_leaders(q, m)?
        .into_iter()
        .map(|(s, _)| s)
        .filter(|&s| s >= 1 && s < delta)
        .collect();
    let f = ctx.base();
    let mut g = Poly::one();
    for s in leaders {
        g = g.mul(&minimal_polynomial(ctx, s)?, f);
    }
    let deg = g.degree().unwrap_or(0) as u64;
    Ok(CyclicCode {
        q,
        m,
        length: n,
        generator: g,
        dimension: n - deg,
    })
}

/// `(λ_j)`, `μ`, `ε` of a trace-represented codeword.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCodewordSpec {
    pub lambdas: Vec<GfElem>,
    pub mu: GfElem,
    pub eps: u32,
}

/// `c_l = Q(α^l) + Tr(μ α^l) + ε`.
pub fn trace_codeword(
    ctx: &FieldContext,
    params: &CodeParams,
    spec: &TraceCodewordSpec,
) -> Result<Vec<u32>> {
    let expected = arity(params.m, params.i)?;
    if spec.lambdas.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            got: spec.lambdas.len(),
        });
    }
    if spec.eps >= ctx.q() || spec.mu.0 >= ctx.order() {
        return Err(Error::InvalidArgument("μ or ε outside its field".into()));
    }
    let qf = TraceQuadraticForm::new(ctx, params.i, spec.lambdas.clone())?;
    let mut word = qf.tabulate_by_log(ctx);
    let lin = prm_codeword(ctx, spec.mu, spec.eps);
    let f = ctx.base();
    for (c, l) in word.iter_mut().zip(lin) {
        *c = f.add(*c, l);
    }
    Ok(word)
}

/// `(Tr(μ α^l) + ε)_l`.
pub fn prm_codeword(ctx: &FieldContext, mu: GfElem, eps: u32) -> Vec<u32> {
    let f = ctx.base();
    if mu.is_zero() {
        return vec![eps; ctx.n() as usize];
    }
    let start = ctx.log(mu);
    (0..ctx.n() as u64)
        .map(|l| {
            let x = match start {
                Some(s) => ctx.exp(s as u64 + l),
                None => ctx.mul(mu, ctx.exp(l)),
            };
            f.add(ctx.trace(x), eps)
        })
        .collect()
}

/// All `q^{m+1}` codewords of PRM_q(1,m), ordered by `(μ, ε)` index.
pub fn prm_code(ctx: &FieldContext) -> impl Iterator<Item = Vec<u32>> + '_ {
    ctx.elements()
        .flat_map(move |mu| (0..ctx.q()).map(move |eps| prm_codeword(ctx, mu, eps)))
}

/// One PRM coset of the code: `Q` plus every PRM word.
#[derive(Clone, Debug)]
pub struct PrmCoset {
    pub form: TraceQuadraticForm,
    pub representative: Vec<u32>,
}

impl PrmCoset {
    pub fn words<'a>(&'a self, ctx: &'a FieldContext) -> impl Iterator<Item = Vec<u32>> + 'a {
        let f = ctx.base();
        prm_code(ctx).map(move |w| {
            self.representative
                .iter()
                .zip(w)
                .map(|(&a, b)| f.add(a, b))
                .collect()
        })
    }
}

/// The code as a union of PRM cosets, one per member of the form family.
pub fn coset_decomposition<'a>(
    ctx: &'a FieldContext,
    params: &CodeParams,
) -> Result<impl Iterator<Item = PrmCoset> + 'a> {
    let fam = FormFamily::new(ctx, params.i)?;
    Ok((0..fam.len()).map(move |k| {
        let form = fam.member(k);
        let representative = form.tabulate_by_log(ctx);
        PrmCoset {
            form,
            representative,
        }
    }))
}
