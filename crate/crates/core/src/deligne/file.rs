// SPDX-License-Identifier: Apache-2.0
//! Text format for covers and cocycles.
//!
//! ```text
//! cover s3_1
//! global s3
//! facet 1 2 3 4 orient 1
//! pull v @ [1 2 3 4] = 6*dt2*dt3*dt4
//! eps [0 1 2] @ [0 1 2 3] = t1
//! A [0 1] @ [0 1 2 3] = t2*dt3
//! B [0] @ [0 1 2 3] = dt1*dt2
//! ```
//! Pieces are written in the facet's coordinates t_v (v not the smallest vertex).
//! Omitted pieces are zero.

use super::cech::CechCochain;
use super::simplicial::{coord_names, fmt_simplex, PlForm, Simplex, SimplicialComplex};
use super::{Cover, DeligneCocycle};
use crate::cdga::library;
use crate::error::{parse_err, Error, Result};
use crate::poly::PolyForm;
use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

fn parse_simplex(s: &str, line: usize) -> Result<Simplex> {
    let inner = s.trim().strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| parse_err(line, format!("expected [..], got '{s}'")))?;
    let mut v = inner
        .split_whitespace()
        .map(|x| x.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex '{x}'"))))
        .collect::<Result<Simplex>>()?;
    let n = v.len();
    v.sort_unstable();
    v.dedup();
    if v.len() != n || n == 0 {
        return Err(parse_err(line, "simplex needs distinct vertices"));
    }
    Ok(v)
}

type Pieces = BTreeMap<Simplex, BTreeMap<Simplex, PolyForm>>;

pub fn parse_cover(text: &str) -> Result<(Arc<Cover>, DeligneCocycle)> {
    let mut name = None;
    let mut global = None;
    let mut facets = Vec::new();
    let mut orient = Vec::new();
    let mut pulls: BTreeMap<String, BTreeMap<Simplex, PolyForm>> = BTreeMap::new();
    let mut data: [Pieces; 3] = Default::default();
    let mut lines_of = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "cover" => name = Some(rest.to_string()),
            "global" => global = Some(library(&rest.to_lowercase()).map_err(|_| parse_err(ln, format!("unknown model '{rest}'")))?),
            "facet" => {
                let (vs, o) = rest.split_once("orient").map_or((rest, "0"), |(a, b)| (a, b.trim()));
                facets.push(parse_simplex(&format!("[{vs}]"), ln)?);
                orient.push(o.parse::<i64>().map_err(|_| parse_err(ln, format!("bad orientation '{o}'")))?);
            }
            "pull" | "eps" | "A" | "B" => {
                let (lhs, expr) = rest.split_once('=').ok_or_else(|| parse_err(ln, "missing '='"))?;
                let (key, facet) = lhs.split_once('@').ok_or_else(|| parse_err(ln, "missing '@ [facet]'"))?;
                let facet = parse_simplex(facet, ln)?;
                let poly = PolyForm::parse_with(&coord_names(&facet), expr).map_err(|e| match e {
                    Error::Parse { msg, .. } => parse_err(ln, msg),
                    other => other,
                })?;
                if kw == "pull" {
                    pulls.entry(key.trim().to_string()).or_default().insert(facet, poly);
                } else {
                    let s = parse_simplex(key, ln)?;
                    let slot = match kw {
                        "eps" => 0,
                        "A" => 1,
                        _ => 2,
                    };
                    if s.len() != 3 - slot {
                        return Err(parse_err(ln, format!("{kw} lives on {}-fold overlaps", 3 - slot)));
                    }
                    lines_of.insert((slot, s.clone()), ln);
                    data[slot].entry(s).or_default().insert(facet, poly);
                }
            }
            _ => return Err(parse_err(ln, format!("unknown keyword '{kw}'"))),
        }
    }
    let name = name.ok_or_else(|| parse_err(0, "missing 'cover' line"))?;
    let global = global.unwrap_or(library("pt")?);
    let cx = SimplicialComplex::new(facets, orient)?;
    let images = pulls
        .into_iter()
        .map(|(k, p)| Ok((k, PlForm::from_pieces(&cx, &[], p)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let cover = Cover::new(&name, cx, global, images)?;
    let cx = cover.complex();
    let mut cochains = Vec::new();
    for (slot, pieces) in data.into_iter().enumerate() {
        let p = 2 - slot;
        let comps = pieces
            .into_iter()
            .map(|(s, m)| {
                let ln = lines_of[&(slot, s.clone())];
                if !cx.contains(&s) {
                    return Err(parse_err(ln, format!("{} is not an overlap of the cover", fmt_simplex(&s))));
                }
                PlForm::from_pieces(cx, &s, m).map(|f| (s, f)).map_err(|e| parse_err(ln, e.to_string()))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        cochains.push(CechCochain::from_comps(cx, p, comps)?);
    }
    let b = cochains.pop().expect("three slots");
    let a = cochains.pop().expect("three slots");
    let f = cochains.pop().expect("three slots");
    let c = DeligneCocycle::new(&cover, f, a, b)?;
    Ok((cover, c))
}

pub fn print_cover(name: &str, c: &DeligneCocycle) -> String {
    let cover = c.cover();
    let cx = cover.complex();
    let mut s = String::new();
    let _ = writeln!(s, "cover {name}");
    let _ = writeln!(s, "global {}", cover.global().name().to_lowercase());
    for f in cx.facets() {
        let vs: Vec<String> = f.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "facet {} orient {}", vs.join(" "), cx.orientation(f));
    }
    for (i, b) in cover.global().basis().iter().enumerate().skip(1) {
        let img = cover.image(i);
        for f in img.pieces().keys() {
            if !img.piece(f).is_some_and(PolyForm::is_zero) {
                let _ = writeln!(s, "pull {} @ {} = {}", b.sym, fmt_simplex(f), img.fmt_piece(f));
            }
        }
    }
    for (kw, ch) in [("eps", &c.f), ("A", &c.a), ("B", &c.b)] {
        for (simp, w) in ch.comps() {
            for (f, p) in w.pieces() {
                if !p.is_zero() {
                    let _ = writeln!(s, "{kw} {} @ {} = {}", fmt_simplex(simp), fmt_simplex(f), w.fmt_piece(f));
                }
            }
        }
    }
    s
}

const GOLDEN: [(&str, &str); 4] = [
    ("s3_1", include_str!("../../data/covers/s3_1.cover")),
    ("s3_2", include_str!("../../data/covers/s3_2.cover")),
    ("s3_3", include_str!("../../data/covers/s3_3.cover")),
    ("torsion", include_str!("../../data/covers/torsion.cover")),
];

pub fn cover_names() -> Vec<&'static str> {
    GOLDEN.iter().map(|(n, _)| *n).collect()
}

pub fn load_cover(name: &str) -> Result<(Arc<Cover>, DeligneCocycle)> {
    let text = GOLDEN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| Error::Unknown(format!("cover '{name}'")))?;
    parse_cover(text)
}
