// SPDX-License-Identifier: Apache-2.0
//! K-class files.
//!
//! ```text
//! kclass holonomy_quarter on s1 twist 0
//! kappa0 = 0
//! theta+ = [[1/4*dth]]
//! theta- = [[0]]
//! rho = 0
//! ```
//! The twist is the connection twist H_conn (dκ₀ = H_conn). If `kappa0` is
//! omitted a primitive of the twist is chosen. `theta-` defaults to zero.

use super::matform::MatForm;
use super::{DiffKClass, ModuleConn, SuperModuleConn};
use crate::cdga::{library, CdgaModel, Form};
use crate::error::{parse_err, Error, Result};
use crate::twisted::de_rham;
use std::fmt::Write;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct KClassFile {
    pub name: String,
    pub model: Arc<CdgaModel>,
    pub class: DiffKClass<Form>,
}

fn split_top(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn strip_brackets(s: &str) -> Option<&str> {
    s.trim().strip_prefix('[')?.strip_suffix(']')
}

fn parse_matrix(model: &Arc<CdgaModel>, s: &str, line: usize) -> Result<MatForm<Form>> {
    let inner = strip_brackets(s).ok_or_else(|| parse_err(line, "matrix must be written [[..], ..]"))?;
    let rows = split_top(inner)
        .into_iter()
        .map(|r| {
            let r = strip_brackets(&r).ok_or_else(|| parse_err(line, format!("bad matrix row '{}'", r.trim())))?.to_string();
            split_top(&r).into_iter().map(|e| Form::parse(model, &e).map_err(|e| parse_err(line, e.to_string()))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Ok(MatForm::zeros(&Form::zero(model), 0));
    }
    MatForm::from_rows(rows).ok_or_else(|| parse_err(line, "matrix must be square"))
}

pub fn parse_kclass(text: &str) -> Result<KClassFile> {
    let mut head: Option<(String, Arc<CdgaModel>, Form)> = None;
    let mut kappa0 = None;
    let mut plus = None;
    let mut minus = None;
    let mut rho = None;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("kclass ") {
            let (name, rest) = rest.split_once(" on ").ok_or_else(|| parse_err(ln, "expected 'kclass <name> on <model> twist <form>'"))?;
            let (m, tw) = rest.split_once(" twist ").unwrap_or((rest, "0"));
            let model = library(m.trim()).map_err(|_| parse_err(ln, format!("unknown model '{}'", m.trim())))?;
            let h = Form::parse(&model, tw).map_err(|e| parse_err(ln, e.to_string()))?;
            head = Some((name.trim().to_string(), model, h));
            continue;
        }
        let (_, model, _) = head.as_ref().ok_or_else(|| parse_err(ln, "'kclass' line must come first"))?;
        let (key, val) = line.split_once('=').ok_or_else(|| parse_err(ln, "expected 'key = value'"))?;
        match key.trim() {
            "kappa0" => kappa0 = Some(Form::parse(model, val).map_err(|e| parse_err(ln, e.to_string()))?),
            "theta+" => plus = Some(parse_matrix(model, val, ln)?),
            "theta-" => minus = Some(parse_matrix(model, val, ln)?),
            "rho" => rho = Some(Form::parse(model, val).map_err(|e| parse_err(ln, e.to_string()))?),
            k => return Err(parse_err(ln, format!("unknown key '{k}'"))),
        }
    }
    let (name, model, h) = head.ok_or_else(|| parse_err(0, "missing 'kclass' line"))?;
    let kappa0 = match kappa0 {
        Some(k) => k,
        None => de_rham(&model)
            .primitive(&h, 3)
            .ok_or_else(|| Error::Refused(format!("twist {h} is not exact on {}; no global κ₀", model.name())))?,
    };
    let plus = plus.unwrap_or_else(|| MatForm::zeros(&Form::zero(&model), 0));
    let minus = minus.unwrap_or_else(|| MatForm::zeros(&Form::zero(&model), plus.rank()));
    let gen = SuperModuleConn::new(ModuleConn::new(plus, kappa0.clone(), h.clone())?, ModuleConn::new(minus, kappa0, h)?)?;
    let class = DiffKClass::new(gen, rho.unwrap_or_else(|| Form::zero(&model)))?;
    Ok(KClassFile { name, model, class })
}

fn fmt_matrix(m: &MatForm<Form>) -> String {
    let rows: Vec<String> = (0..m.rank())
        .map(|i| format!("[{}]", (0..m.rank()).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn print_kclass(k: &KClassFile) -> String {
    let mut s = String::new();
    let g = &k.class.gen;
    let _ = writeln!(s, "kclass {} on {} twist {}", k.name, k.model.name().to_lowercase(), g.twist());
    let _ = writeln!(s, "kappa0 = {}", g.kappa0());
    let _ = writeln!(s, "theta+ = {}", fmt_matrix(g.plus.theta()));
    let _ = writeln!(s, "theta- = {}", fmt_matrix(g.minus.theta()));
    let _ = writeln!(s, "rho = {}", k.class.rho);
    s
}

const SHIPPED: [(&str, &str); 2] = [
    ("holonomy_quarter", include_str!("../../data/kclasses/holonomy_quarter.kclass")),
    ("thick_rank2", include_str!("../../data/kclasses/thick_rank2.kclass")),
];

pub fn kclass_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

pub fn load_kclass(name: &str) -> Result<KClassFile> {
    let text = SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| Error::Unknown(format!("kclass '{name}'")))?;
    parse_kclass(text)
}
