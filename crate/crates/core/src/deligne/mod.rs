// SPDX-License-Identifier: Apache-2.0
//! Čech–Deligne cocycles on vertex-star covers of simplicial complexes.
//!
//! The patches are the open vertex stars, so the nerve is the complex itself.
//! Forms on overlaps are piecewise polynomial. U(1)-valued data are stored
//! additively as functions mod ℤ.

pub mod cech;
pub mod construct;
pub mod file;
pub mod simplicial;

use crate::cdga::{CdgaModel, Form};
use crate::error::{Error, Result};
use crate::linalg::{solve, zapply, QMatrix};
use crate::rational::Q;
use cech::CechCochain;
use num::{BigInt, Integer, Signed, Zero};
use simplicial::{fmt_simplex, glue, PlForm, Simplex, SimplicialComplex};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A vertex-star cover together with a CDGA map from a global model into its forms.
#[derive(Debug)]
pub struct Cover {
    name: String,
    complex: SimplicialComplex,
    global: Arc<CdgaModel>,
    pull: Vec<PlForm>,
}

impl Cover {
    /// `images` gives the global form for each non-unit basis element of `global`.
    pub fn new(name: &str, complex: SimplicialComplex, global: Arc<CdgaModel>, images: BTreeMap<String, PlForm>) -> Result<Arc<Self>> {
        let mut pull = Vec::with_capacity(global.len());
        for (i, b) in global.basis().iter().enumerate() {
            let img = if i == 0 {
                PlForm::constant(&complex, &[], &Q::from_integer(1.into()))
            } else {
                images.get(&b.sym).cloned().unwrap_or_else(|| PlForm::zero(&complex, &[]))
            };
            if !img.support().is_empty() {
                return Err(Error::ModelMismatch(format!("image of {} is not a global form", b.sym)));
            }
            if !img.is_zero() && img.degrees() != vec![b.deg] {
                return Err(Error::Degree(format!("image of {} is not of degree {}", b.sym, b.deg)));
            }
            img.check_compatible(&complex)?;
            pull.push(img);
        }
        for k in images.keys() {
            if global.index_of(k).is_none() {
                return Err(Error::Unknown(format!("symbol {k} in model {}", global.name())));
            }
        }
        let cover = Cover { name: name.into(), complex, global, pull };
        cover.check_map()?;
        Ok(Arc::new(cover))
    }

    fn check_map(&self) -> Result<()> {
        let m = &self.global;
        for i in 0..m.len() {
            let sym = &m.basis()[i].sym;
            if self.pull[i].d() != self.pull_form(&Form::basis(m, i).dform()) {
                return Err(Error::Invariant(format!("global map does not commute with d on {sym}")));
            }
            for j in 0..m.len() {
                let prod = Form::basis(m, i).try_wedge(&Form::basis(m, j))?;
                if self.pull[i].wedge(&self.pull[j]) != self.pull_form(&prod) {
                    return Err(Error::Invariant(format!("global map does not preserve {sym}·{}", m.basis()[j].sym)));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn global(&self) -> &Arc<CdgaModel> {
        &self.global
    }

    pub fn image(&self, i: usize) -> &PlForm {
        &self.pull[i]
    }

    pub fn pull_form(&self, a: &Form) -> PlForm {
        a.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(PlForm::zero(&self.complex, &[]), |acc, (i, c)| acc.add(&self.pull[i].scale(c)))
    }

    /// The global model form of degree `deg` mapping exactly to `w`, if any.
    pub fn descend(&self, w: &PlForm, deg: usize) -> Option<Form> {
        let idx = self.global.indices_of_degree(deg);
        let cols: Vec<BTreeMap<_, Q>> = idx.iter().map(|i| self.pull[*i].coords()).collect();
        let target = w.coords();
        let keys: BTreeSet<_> = cols.iter().flat_map(|c| c.keys().cloned()).chain(target.keys().cloned()).collect();
        let keys: Vec<_> = keys.into_iter().collect();
        let mat = QMatrix::from_cols(keys.len(), &cols.iter().map(|c| keys.iter().map(|k| c.get(k).cloned().unwrap_or_else(Q::zero)).collect()).collect::<Vec<_>>());
        let rhs: Vec<Q> = keys.iter().map(|k| target.get(k).cloned().unwrap_or_else(Q::zero)).collect();
        let sol = if idx.is_empty() {
            if w.is_zero() {
                Vec::new()
            } else {
                return None;
            }
        } else {
            solve(&mat, &rhs)?
        };
        let mut c = vec![Q::zero(); self.global.len()];
        for (i, x) in idx.iter().zip(sol) {
            c[*i] = x;
        }
        Form::from_coeffs(&self.global, c).ok()
    }

    /// Restriction to the subcomplex spanned by `facets`, with a zero global map.
    pub fn restrict(self: &Arc<Self>, facets: &[Simplex]) -> Result<Arc<Cover>> {
        let sub = self.complex.subcomplex(facets)?;
        let pt = crate::cdga::library("pt")?;
        Ok(Arc::new(Cover { name: format!("{}|sub", self.name), complex: sub.clone(), global: pt, pull: vec![PlForm::constant(&sub, &[], &Q::from_integer(1.into()))] }))
    }
}

fn same_cover(a: &Arc<Cover>, b: &Arc<Cover>) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(Error::ModelMismatch(format!("covers {} and {} differ", a.name, b.name)))
    }
}

/// (f, A, B): f on triple overlaps, A on double overlaps, B on patches.
#[derive(Clone, Debug)]
pub struct DeligneCocycle {
    cover: Arc<Cover>,
    pub f: CechCochain,
    pub a: CechCochain,
    pub b: CechCochain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub condition: &'static str,
    pub face: Simplex,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on {}", self.condition, fmt_simplex(&self.face))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn push_all(&mut self, condition: &'static str, faces: Vec<Simplex>) {
        self.failures.extend(faces.into_iter().map(|face| Failure { condition, face }));
    }
}

impl DeligneCocycle {
    pub fn new(cover: &Arc<Cover>, f: CechCochain, a: CechCochain, b: CechCochain) -> Result<Self> {
        if (f.p(), a.p(), b.p()) != (2, 1, 0) {
            return Err(Error::Degree("cocycle data must sit in Čech degrees 2, 1, 0".into()));
        }
        for (c, deg, what) in [(&f, 0, "f"), (&a, 1, "A"), (&b, 2, "B")] {
            if c.comps().values().any(|w| !w.is_zero() && w.degrees() != vec![deg]) {
                return Err(Error::Degree(format!("{what} must have form degree {deg}")));
            }
        }
        Ok(DeligneCocycle { cover: cover.clone(), f, a, b })
    }

    pub fn zero(cover: &Arc<Cover>) -> Self {
        let cx = cover.complex();
        DeligneCocycle { cover: cover.clone(), f: CechCochain::zero(cx, 2), a: CechCochain::zero(cx, 1), b: CechCochain::zero(cx, 0) }
    }

    pub fn cover(&self) -> &Arc<Cover> {
        &self.cover
    }

    pub fn scale(&self, s: &Q) -> Self {
        DeligneCocycle { cover: self.cover.clone(), f: self.f.scale(s), a: self.a.scale(s), b: self.b.scale(s) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::from_integer(1.into()))
    }

    /// Image of `self` under the gauge transformation (g, λ): the target of the
    /// curving-preserving 1-simplex with that data.
    pub fn gauge(&self, g: &CechCochain, lambda: &CechCochain) -> Self {
        let cx = self.cover.complex();
        DeligneCocycle {
            cover: self.cover.clone(),
            f: self.f.add(&g.delta(cx)),
            a: self.a.add(&lambda.delta(cx)).add(&g.d()),
            b: self.b.add(&lambda.d()),
        }
    }

    pub fn restrict(&self, sub: &Arc<Cover>) -> Self {
        let cx = sub.complex();
        DeligneCocycle {
            cover: sub.clone(),
            f: self.f.restrict_to_subcomplex(cx),
            a: self.a.restrict_to_subcomplex(cx),
            b: self.b.restrict_to_subcomplex(cx),
        }
    }
}

impl PartialEq for DeligneCocycle {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.cover, &o.cover) && self.f == o.f && self.a == o.a && self.b == o.b
    }
}

/// δf ∈ ℤ, δA = df, δB = dA, all exactly.
pub fn check_cocycle(c: &DeligneCocycle) -> Report {
    let cx = c.cover.complex();
    let mut r = Report::default();
    r.push_all("δf integral", c.f.delta(cx).non_integral());
    r.push_all("δA = df", c.a.delta(cx).differs_on(&c.f.d()));
    r.push_all("δB = dA", c.b.delta(cx).differs_on(&c.a.d()));
    r
}

/// The global 3-form restricting to dB on every patch, as a piecewise form.
pub fn curvature_pl(c: &DeligneCocycle) -> Result<PlForm> {
    let cx = c.cover.complex();
    let local: BTreeMap<usize, PlForm> = c.b.d().comps().iter().map(|(s, w)| (s[0], w.clone())).collect();
    glue(cx, &local).map_err(|e| Error::Invariant(format!("dB disagrees on edge {}", fmt_simplex(&e))))
}

/// Curvature as a form on the cover's global model.
pub fn curvature(c: &DeligneCocycle) -> Result<Form> {
    let h = curvature_pl(c)?;
    if !h.d().is_zero() {
        return Err(Error::Invariant("curvature is not closed".into()));
    }
    c.cover
        .descend(&h, 3)
        .ok_or_else(|| Error::Invariant(format!("curvature does not descend to model {}", c.cover.global.name())))
}

/// Integer class of δf in H³ of the nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdClass {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    /// Coordinates in the Smith basis: (value, modulus), modulus 0 for free rows.
    pub coords: Vec<(BigInt, BigInt)>,
    pub cocycle: BTreeMap<Simplex, BigInt>,
    pub fundamental_pairing: Option<BigInt>,
}

impl DdClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|(v, m)| if m.is_zero() { v.is_zero() } else { v.mod_floor(m).is_zero() })
    }
}

impl fmt::Display for DdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = &self.fundamental_pairing {
            return write!(f, "DD = {k}");
        }
        if self.is_zero() {
            return write!(f, "DD = 0");
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(v, m)| format!("{} in Z/{m}", v.mod_floor(m)))
            .collect();
        write!(f, "DD = {}", parts.join(" + "))
    }
}

pub fn dd_class(c: &DeligneCocycle) -> Result<DdClass> {
    let cx = c.cover.complex();
    let n = c
        .f
        .delta(cx)
        .integer_values()
        .ok_or_else(|| Error::Invariant("δf is not an integer cochain".into()))?;
    let p = 3;
    let simp = cx.simplices(p);
    let vec: Vec<BigInt> = simp.iter().map(|s| n.get(s).cloned().unwrap_or_else(BigInt::zero)).collect();
    let smith = cx.smith_into(p);
    let y = zapply(&smith.u, &vec);
    let coords = y
        .into_iter()
        .enumerate()
        .filter_map(|(i, v)| match smith.diag.get(i) {
            Some(d) if d.abs() == BigInt::from(1) => None,
            Some(d) => Some((v, d.abs())),
            None => Some((v, BigInt::zero())),
        })
        .collect();
    let (betti, torsion) = cx.integer_cohomology(p);
    let fundamental_pairing = (cx.dim() == p && cx.is_oriented())
        .then(|| simp.iter().zip(&vec).fold(BigInt::zero(), |acc, (s, v)| acc + v * cx.orientation(s)));
    Ok(DdClass { betti, torsion, coords, cocycle: n, fundamental_pairing })
}

pub fn add_cocycles(c1: &DeligneCocycle, c2: &DeligneCocycle) -> Result<DeligneCocycle> {
    same_cover(&c1.cover, &c2.cover)?;
    Ok(DeligneCocycle { cover: c1.cover.clone(), f: c1.f.add(&c2.f), a: c1.a.add(&c2.a), b: c1.b.add(&c2.b) })
}

/// (g, λ) from `source` to `target`.
#[derive(Clone, Debug)]
pub struct DeligneOneSimplex {
    pub g: CechCochain,
    pub lambda: CechCochain,
    pub source: DeligneCocycle,
    pub target: DeligneCocycle,
}

impl DeligneOneSimplex {
    pub fn new(g: CechCochain, lambda: CechCochain, source: DeligneCocycle, target: DeligneCocycle) -> Result<Self> {
        same_cover(&source.cover, &target.cover)?;
        if (g.p(), lambda.p()) != (1, 0) {
            return Err(Error::Degree("simplex data must sit in Čech degrees 1, 0".into()));
        }
        Ok(DeligneOneSimplex { g, lambda, source, target })
    }

    /// Equivalent simplex: g′ = g + δr, λ′ = λ − dr.
    pub fn modify(&self, r: &CechCochain) -> Self {
        let cx = self.source.cover.complex();
        DeligneOneSimplex {
            g: self.g.add(&r.delta(cx)),
            lambda: self.lambda.sub(&r.d()),
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }
}

/// δg ≡ f′ − f mod ℤ and δλ = A′ − A − dg; with `differential`, also dλ = B′ − B.
pub fn check_simplex(s: &DeligneOneSimplex, differential: bool) -> Report {
    let cx = s.source.cover.complex();
    let (c, c2) = (&s.source, &s.target);
    let mut r = Report::default();
    r.push_all("δg ≡ f′ − f mod ℤ", s.g.delta(cx).sub(&c2.f.sub(&c.f)).non_integral());
    r.push_all("δλ = A′ − A − dg", s.lambda.delta(cx).differs_on(&c2.a.sub(&c.a).sub(&s.g.d())));
    if differential {
        r.push_all("dλ = B′ − B", s.lambda.d().differs_on(&c2.b.sub(&c.b)));
    }
    r
}

#[derive(Clone, Debug)]
pub struct Kappa {
    pub pl: PlForm,
    pub model: Option<Form>,
    /// Set when the target curving is non-zero (normalization not fixed by the source formula).
    pub target_curving_flag: bool,
}

/// Glue dλ_i + B_i − B′_i into a global 2-form.
pub fn kappa(s: &DeligneOneSimplex) -> Result<Kappa> {
    let cx = s.source.cover.complex();
    let loc = s.lambda.d().add(&s.source.b).sub(&s.target.b);
    let local: BTreeMap<usize, PlForm> = loc.comps().iter().map(|(k, w)| (k[0], w.clone())).collect();
    let pl = glue(cx, &local).map_err(|e| Error::Invariant(format!("κ disagrees on edge {}", fmt_simplex(&e))))?;
    let model = s.source.cover.descend(&pl, 2);
    Ok(Kappa { pl, model, target_curving_flag: !s.target.b.is_zero() })
}

/// Rank-one module conditions plus vanishing κ, for a simplex to the zero cocycle.
pub fn trivialization_check(s: &DeligneOneSimplex) -> Result<Report> {
    if !(s.target.f.is_zero() && s.target.a.is_zero() && s.target.b.is_zero()) {
        return Err(Error::Invariant("trivialization target must be the zero cocycle".into()));
    }
    let mut r = check_simplex(s, false);
    match kappa(s) {
        Ok(k) if k.pl.is_zero() => {}
        Ok(k) => {
            r.notes.push(format!("κ = {} on {} facets", if k.pl.is_zero() { "0" } else { "nonzero" }, k.pl.pieces().len()));
            r.failures.push(Failure { condition: "κ = 0", face: Vec::new() });
        }
        Err(e) => {
            r.notes.push(e.to_string());
            r.failures.push(Failure { condition: "κ glues", face: Vec::new() });
        }
    }
    Ok(r)
}
