// SPDX-License-Identifier: Apache-2.0
//! Model file format.
//!
//! ```text
//! model T2
//! dim 2
//! gen dx deg 1
//! gen dy deg 1
//! gen dxdy deg 2
//! d dx = 0
//! mul dx*dy = dxdy
//! integral dxdy = 1
//! ```
//! Products not listed are derived from graded commutativity or are zero.

use super::{koszul, BasisElt, CdgaModel, SparseVec};
use crate::cdga::expr::parse_linear_expr;
use crate::error::{parse_err, Error, Result};
use crate::rational::{parse_q, Q};
use num::{One, Zero};

pub fn parse_model(text: &str) -> Result<CdgaModel> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut basis = vec![BasisElt { sym: "1".into(), deg: 0 }];
    let mut d_lines: Vec<(usize, String, String)> = Vec::new();
    let mut mul_lines: Vec<(usize, String, String, String)> = Vec::new();
    let mut int_lines: Vec<(usize, String, String)> = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "model" => name = Some(rest.to_string()),
            "dim" => dim = Some(rest.parse().map_err(|_| parse_err(line_no, format!("bad dim '{rest}'")))?),
            "gen" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[1] != "deg" {
                    return Err(parse_err(line_no, "expected 'gen <sym> deg <d>'"));
                }
                let sym = parts[0];
                if !sym.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                    || !sym.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    return Err(parse_err(line_no, format!("bad symbol '{sym}'")));
                }
                if basis.iter().any(|b| b.sym == sym) {
                    return Err(parse_err(line_no, format!("duplicate symbol '{sym}'")));
                }
                let deg = parts[2].parse().map_err(|_| parse_err(line_no, format!("bad degree '{}'", parts[2])))?;
                basis.push(BasisElt { sym: sym.to_string(), deg });
            }
            "d" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(line_no, "expected 'd <sym> = <expr>'"))?;
                d_lines.push((line_no, lhs.trim().to_string(), rhs.trim().to_string()));
            }
            "mul" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(line_no, "expected 'mul <a>*<b> = <expr>'"))?;
                let (a, b) = lhs.split_once('*').ok_or_else(|| parse_err(line_no, "expected '<a>*<b>'"))?;
                mul_lines.push((line_no, a.trim().to_string(), b.trim().to_string(), rhs.trim().to_string()));
            }
            "integral" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| parse_err(line_no, "expected 'integral <expr> = <rational>'"))?;
                int_lines.push((line_no, lhs.trim().to_string(), rhs.trim().to_string()));
            }
            other => return Err(parse_err(line_no, format!("unknown keyword '{other}'"))),
        }
    }
    let name = name.ok_or_else(|| parse_err(1, "missing 'model <name>'"))?;
    let dim = dim.ok_or_else(|| parse_err(1, "missing 'dim <n>'"))?;
    let syms: Vec<String> = basis.iter().map(|b| b.sym.clone()).collect();
    let n = basis.len();
    let lookup = |line: usize, s: &str| syms.iter().position(|x| x == s).ok_or_else(|| parse_err(line, format!("unknown symbol '{s}'")));
    let linear = |line: usize, s: &str| parse_linear_expr(&syms, s).map_err(|e| parse_err(line, e.to_string()));

    let mut d: Vec<SparseVec> = vec![Vec::new(); n];
    for (line, lhs, rhs) in &d_lines {
        let i = lookup(*line, lhs)?;
        d[i] = linear(*line, rhs)?;
        for (j, c) in &d[i] {
            if !c.is_zero() && basis[*j].deg != basis[i].deg + 1 {
                return Err(parse_err(*line, format!("d({lhs}) has degree {} but {} has degree {}", basis[i].deg + 1, syms[*j], basis[*j].deg)));
            }
        }
    }

    let mut mul: Vec<Vec<Option<SparseVec>>> = vec![vec![None; n]; n];
    for i in 0..n {
        mul[0][i] = Some(vec![(i, Q::one())]);
        mul[i][0] = Some(vec![(i, Q::one())]);
    }
    for (line, a, b, rhs) in &mul_lines {
        let (i, j) = (lookup(*line, a)?, lookup(*line, b)?);
        if i == 0 || j == 0 {
            return Err(parse_err(*line, "products with the unit are fixed"));
        }
        let v = linear(*line, rhs)?;
        if mul[i][j].is_some() {
            return Err(parse_err(*line, format!("product {a}*{b} given twice")));
        }
        mul[i][j] = Some(v.clone());
        if i != j {
            let s = koszul(basis[i].deg, basis[j].deg);
            let swapped: SparseVec = v.into_iter().map(|(k, c)| (k, c * &s)).collect();
            match &mul[j][i] {
                None => mul[j][i] = Some(swapped),
                Some(existing) => {
                    if !same_sparse(existing, &swapped, n) {
                        return Err(parse_err(*line, format!("{a}*{b} contradicts graded commutativity with {b}*{a}")));
                    }
                }
            }
        }
    }
    let mul: Vec<Vec<SparseVec>> = mul.into_iter().map(|r| r.into_iter().map(Option::unwrap_or_default).collect()).collect();

    let mut integral = vec![Q::zero(); n];
    for (line, lhs, rhs) in &int_lines {
        let val = parse_q(rhs).ok_or_else(|| parse_err(*line, format!("bad rational '{rhs}'")))?;
        let terms = linear(*line, lhs)?;
        if terms.len() != 1 {
            return Err(parse_err(*line, "integral lines take a single (scaled) symbol"));
        }
        let (i, c) = &terms[0];
        if c.is_zero() {
            return Err(parse_err(*line, "zero multiple in integral line"));
        }
        integral[*i] = val / c;
    }
    if dim == 0 && int_lines.is_empty() {
        integral[0] = Q::one();
    }

    CdgaModel::new(name, dim, basis, d, mul, integral).map_err(|e| match e {
        Error::Invariant(msg) => Error::Invariant(msg),
        other => other,
    })
}

fn same_sparse(a: &SparseVec, b: &SparseVec, n: usize) -> bool {
    let dense = |s: &SparseVec| {
        let mut v = vec![Q::zero(); n];
        for (i, c) in s {
            v[*i] += c;
        }
        v
    };
    dense(a) == dense(b)
}
