// SPDX-License-Identifier: Apache-2.0
//! Form expressions: `2*dx*dy - 1/3*v + 1`.

use super::{CdgaModel, Form};
use crate::coeff::split_signed_terms;
use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};
use num::One;
use std::sync::Arc;

fn bad(msg: String) -> Error {
    Error::Parse { line: 0, msg }
}

pub(crate) fn parse_form(model: &Arc<CdgaModel>, s: &str) -> Result<Form> {
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty form expression".into()));
    }
    let mut acc = Form::zero(model);
    for (neg, term) in split_signed_terms(s) {
        let mut t = Form::one(model);
        if neg {
            t = t.scale(&-Q::one());
        }
        for factor in term.split('*') {
            let factor = factor.trim();
            if let Some(x) = parse_q(factor) {
                t = t.scale(&x);
                continue;
            }
            let (sym, e) = match factor.split_once('^') {
                Some((a, b)) => (a.trim(), b.trim().parse::<u32>().map_err(|_| bad(format!("bad exponent in '{factor}'")))?),
                None => (factor, 1),
            };
            let g = Form::sym(model, sym).map_err(|_| bad(format!("unknown symbol '{sym}' in model {}", model.name())))?;
            for _ in 0..e {
                t = t.try_wedge(&g)?;
            }
        }
        acc = acc.try_add(&t)?;
    }
    Ok(acc)
}

/// Parses a linear combination of symbols (or `1`) against a symbol table.
pub fn parse_linear_expr(syms: &[String], s: &str) -> Result<Vec<(usize, Q)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty expression".into()));
    }
    let mut out = Vec::new();
    for (neg, term) in split_signed_terms(s) {
        let mut c = if neg { -Q::one() } else { Q::one() };
        let mut idx: Option<usize> = None;
        for factor in term.split('*') {
            let factor = factor.trim();
            if let Some(x) = parse_q(factor) {
                c *= x;
                continue;
            }
            let i = syms.iter().position(|x| x == factor).ok_or_else(|| bad(format!("unknown symbol '{factor}'")))?;
            if idx.replace(i).is_some() {
                return Err(bad(format!("products are not allowed here: '{term}'")));
            }
        }
        out.push((idx.unwrap_or(0), c));
    }
    Ok(out)
}
