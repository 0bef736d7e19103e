// SPDX-License-Identifier: Apache-2.0
//! Cycle files. A file holds one or more cycles:
//!
//! ```text
//! cycle w2 on s1
//! m-model s1
//! pullback dth = 2*dth
//! kappa = 0
//! phi = 1^(u)
//! ```
//! Optional keys: `twist = <form on X>` (default 0), `p1 = …`, `p2 = …`,
//! `spin = <rational>`. Without `m-model` the cycle is (∅, φ).
//! Currents are sums of `c*<basis symbol>^(<V polynomial>)`.

use super::{CycleGeom, DiffCycle};
use crate::cdga::{library, CdgaModel, CdgaMorphism, Form};
use crate::coeff::{split_signed_terms, GradedPoly, Ring};
use crate::error::{parse_err, Error, Result};
use crate::rational::{fmt_q, parse_q, Q};
use crate::twisted::{CoeffCurrent, Twist};
use num::{One, Zero};
use std::fmt::Write;
use std::sync::Arc;

/// Parses `2*dth^(u) - 1^(u^2)` on a model.
pub fn parse_current(model: &Arc<CdgaModel>, s: &str) -> Result<CoeffCurrent> {
    let mut out = CoeffCurrent::zero(model, Ring::V);
    if s.trim() == "0" {
        return Ok(out);
    }
    for (neg, term) in split_signed_terms(s) {
        let (lhs, rhs) = term.split_once('^').ok_or_else(|| Error::Parse { line: 0, msg: format!("expected <sym>^(<poly>) in '{term}'") })?;
        let rhs = rhs.trim().trim_start_matches('⊗').trim();
        let poly = rhs.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| Error::Parse { line: 0, msg: format!("coefficient must be parenthesized in '{term}'") })?;
        let (c, sym) = match lhs.rsplit_once('*') {
            Some((c, sym)) => (parse_q(c).ok_or_else(|| Error::Parse { line: 0, msg: format!("bad coefficient '{c}'") })?, sym.trim()),
            None => (Q::one(), lhs.trim()),
        };
        let a = model.index_of(sym).ok_or_else(|| Error::Unknown(format!("{sym} in model {}", model.name())))?;
        let c = if neg { -c } else { c };
        let p = GradedPoly::parse(Ring::V, poly)?.scale(&c);
        out = out.try_add(&CoeffCurrent::elementary(model, a, p))?;
    }
    Ok(out)
}

pub fn fmt_current(t: &CoeffCurrent) -> String {
    let mut parts = Vec::new();
    for (a, p) in t.comps().iter().enumerate() {
        if !p.is_zero() {
            parts.push(format!("{}^({})", t.model().basis()[a].sym, p));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Default)]
struct Block {
    line: usize,
    name: String,
    x: Option<Arc<CdgaModel>>,
    twist: Option<String>,
    m: Option<Arc<CdgaModel>>,
    pullback: Vec<(String, String)>,
    pont: Vec<(usize, String)>,
    kappa: Option<String>,
    spin: Option<Q>,
    phi: Option<String>,
}

fn wrap(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { msg, .. } => parse_err(line, msg),
        other => parse_err(line, other.to_string()),
    }
}

fn finish(b: Block) -> Result<DiffCycle> {
    let err = wrap(b.line);
    let x = b.x.clone().ok_or_else(|| parse_err(b.line, "missing 'cycle <name> on <model>'"))?;
    let twist = Twist::parse(&x, b.twist.as_deref().unwrap_or("0")).map_err(&err)?;
    let phi = parse_current(&x, b.phi.as_deref().unwrap_or("0")).map_err(&err)?;
    let geom = match b.m {
        None => {
            if !b.pullback.is_empty() || b.kappa.is_some() || !b.pont.is_empty() {
                return Err(parse_err(b.line, "pullback, kappa or p<i> given without m-model"));
            }
            None
        }
        Some(m) => {
            let pullback = CdgaMorphism::from_symbols(&x, &m, &b.pullback).map_err(&err)?;
            let kappa = Form::parse(&m, b.kappa.as_deref().unwrap_or("0")).map_err(&err)?;
            let n = b.pont.iter().map(|(i, _)| *i).max().unwrap_or(0);
            let mut pont = vec![Form::zero(&m); n];
            for (i, e) in &b.pont {
                pont[i - 1] = Form::parse(&m, e).map_err(&err)?;
            }
            Some(CycleGeom { m, pullback, pont, kappa, spin_shift: b.spin.unwrap_or_else(Q::zero) })
        }
    };
    DiffCycle::new(b.name, twist, geom, phi).map_err(err)
}

pub fn parse_cycles(text: &str) -> Result<Vec<DiffCycle>> {
    let mut out = Vec::new();
    let mut cur: Option<Block> = None;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("cycle ") {
            if let Some(b) = cur.take() {
                out.push(finish(b)?);
            }
            let (name, m) = rest.split_once(" on ").ok_or_else(|| parse_err(ln, "expected 'cycle <name> on <model>'"))?;
            let x = library(m.trim()).map_err(|_| parse_err(ln, format!("unknown model '{}'", m.trim())))?;
            cur = Some(Block { line: ln, name: name.trim().to_string(), x: Some(x), ..Block::default() });
            continue;
        }
        let b = cur.as_mut().ok_or_else(|| parse_err(ln, "'cycle' line must come first"))?;
        if let Some(rest) = line.strip_prefix("m-model ") {
            b.m = Some(library(rest.trim()).map_err(|_| parse_err(ln, format!("unknown model '{}'", rest.trim())))?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("pullback ") {
            for item in rest.split(',') {
                let (g, e) = item.split_once('=').ok_or_else(|| parse_err(ln, format!("expected '<gen> = <form>' in '{}'", item.trim())))?;
                b.pullback.push((g.trim().to_string(), e.trim().to_string()));
            }
            continue;
        }
        let (key, val) = line.split_once('=').ok_or_else(|| parse_err(ln, "expected 'key = value'"))?;
        let val = val.trim().to_string();
        match key.trim() {
            "twist" => b.twist = Some(val),
            "kappa" => b.kappa = Some(val),
            "phi" => b.phi = Some(val),
            "spin" => b.spin = Some(parse_q(&val).ok_or_else(|| parse_err(ln, format!("bad rational '{val}'")))?),
            k if k.starts_with('p') && k[1..].parse::<usize>().is_ok_and(|i| i > 0) => {
                b.pont.push((k[1..].parse().expect("checked"), val));
            }
            k => return Err(parse_err(ln, format!("unknown key '{k}'"))),
        }
    }
    if let Some(b) = cur {
        out.push(finish(b)?);
    }
    Ok(out)
}

pub fn print_cycle(c: &DiffCycle) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "cycle {} on {}", c.name(), c.model().name().to_lowercase());
    if !c.twist().form().is_zero() {
        let _ = writeln!(s, "twist = {}", c.twist().form());
    }
    if let Some(g) = c.geom() {
        let x = c.model();
        let _ = writeln!(s, "m-model {}", g.m.name().to_lowercase());
        let images: Vec<String> = (1..x.len())
            .map(|i| format!("{} = {}", x.basis()[i].sym, g.pullback.apply(&Form::basis(x, i)).expect("same model")))
            .collect();
        if !images.is_empty() {
            let _ = writeln!(s, "pullback {}", images.join(", "));
        }
        for (i, p) in g.pont.iter().enumerate() {
            let _ = writeln!(s, "p{} = {}", i + 1, p);
        }
        let _ = writeln!(s, "kappa = {}", g.kappa);
        if !g.spin_shift.is_zero() {
            let _ = writeln!(s, "spin = {}", fmt_q(&g.spin_shift));
        }
    }
    let _ = writeln!(s, "phi = {}", fmt_current(c.phi()));
    s
}

const SHIPPED: [(&str, &str); 2] = [
    ("circle_battery", include_str!("../../data/cycles/circle_battery.cycles")),
    ("thick_battery", include_str!("../../data/cycles/thick_battery.cycles")),
];

pub fn battery_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

pub fn load_battery(name: &str) -> Result<Vec<DiffCycle>> {
    let (_, text) = SHIPPED.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::Unknown(format!("cycle battery '{name}'")))?;
    parse_cycles(text)
}
