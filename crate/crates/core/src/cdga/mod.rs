// SPDX-License-Identifier: Apache-2.0
//! Finite rational CDGA models with an integration functional.

mod expr;
mod library;
mod morphism;
mod parse;
mod product;

pub use expr::parse_linear_expr;
pub use library::{library, library_names};
pub use morphism::CdgaMorphism;
pub use parse::parse_model;
pub use product::{fiber_integrate, product_model, pullback_from_fiber, pullback_to_product};

use crate::error::{Error, Result};
use crate::forms::DgForm;
use crate::rational::{fmt_q, qi, Q};
use num::{One, Signed, Zero};
use rand::Rng;
use std::fmt;
use std::sync::Arc;

pub type SparseVec = Vec<(usize, Q)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElt {
    pub sym: String,
    pub deg: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factors {
    pub base: Arc<CdgaModel>,
    pub fiber: Arc<CdgaModel>,
}

/// A finite CDGA. Basis element 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaModel {
    name: String,
    dim: usize,
    basis: Vec<BasisElt>,
    d: Vec<SparseVec>,
    mul: Vec<Vec<SparseVec>>,
    integral: Vec<Q>,
    factors: Option<Factors>,
}

impl CdgaModel {
    /// Builds and validates a model. `mul[i][j]` must be filled for every pair.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        basis: Vec<BasisElt>,
        d: Vec<SparseVec>,
        mul: Vec<Vec<SparseVec>>,
        integral: Vec<Q>,
    ) -> Result<Self> {
        let m = CdgaModel { name: name.into(), dim, basis, d, mul, integral, factors: None };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn with_factors(mut self, f: Factors) -> Self {
        self.factors = Some(f);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.basis.len()
    }
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[BasisElt] {
        &self.basis
    }
    pub fn deg(&self, i: usize) -> usize {
        self.basis[i].deg
    }
    pub fn factors(&self) -> Option<&Factors> {
        self.factors.as_ref()
    }
    pub fn index_of(&self, sym: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.sym == sym)
    }
    pub fn indices_of_degree(&self, deg: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.basis[i].deg == deg).collect()
    }
    pub fn d_of(&self, i: usize) -> &SparseVec {
        &self.d[i]
    }
    pub fn mul_of(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i][j]
    }
    pub fn integral_of(&self, i: usize) -> &Q {
        &self.integral[i]
    }

    fn dense(&self, s: &SparseVec) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.len()];
        for (i, c) in s {
            v[*i] += c;
        }
        v
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        if n == 0 || self.basis[0].deg != 0 || self.basis[0].sym != "1" {
            return Err(Error::Invariant("basis element 0 must be the unit '1' of degree 0".into()));
        }
        if self.d.len() != n || self.mul.len() != n || self.integral.len() != n {
            return Err(Error::Invariant("structure tables have the wrong size".into()));
        }
        for (i, b) in self.basis.iter().enumerate() {
            if b.deg > self.dim {
                return Err(Error::Invariant(format!("generator {} has degree {} above dim {}", b.sym, b.deg, self.dim)));
            }
            for (j, c) in &self.d[i] {
                if !c.is_zero() && self.basis[*j].deg != b.deg + 1 {
                    return Err(Error::Invariant(format!("d({}) has a term {} of degree {}, expected {}", b.sym, self.basis[*j].sym, self.basis[*j].deg, b.deg + 1)));
                }
            }
            if !self.integral[i].is_zero() && b.deg != self.dim {
                return Err(Error::Invariant(format!("integral is nonzero on {} of degree {} below dim", b.sym, b.deg)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let want = self.basis[i].deg + self.basis[j].deg;
                for (k, c) in &self.mul[i][j] {
                    if !c.is_zero() && self.basis[*k].deg != want {
                        return Err(Error::Invariant(format!("{}*{} has a term of degree {}, expected {}", self.basis[i].sym, self.basis[j].sym, self.basis[*k].deg, want)));
                    }
                }
            }
        }
        // unit
        for i in 0..n {
            let e = self.dense(&vec![(i, Q::one())]);
            if self.dense(&self.mul[0][i]) != e || self.dense(&self.mul[i][0]) != e {
                return Err(Error::Invariant(format!("1*{} is not {}", self.basis[i].sym, self.basis[i].sym)));
            }
        }
        // graded commutativity
        for i in 0..n {
            for j in 0..n {
                let sign = koszul(self.deg(i), self.deg(j));
                let ab = self.dense(&self.mul[i][j]);
                let ba: Vec<Q> = self.dense(&self.mul[j][i]).into_iter().map(|x| x * &sign).collect();
                if ab != ba {
                    return Err(Error::Invariant(format!("graded commutativity fails on {}*{}", self.basis[i].sym, self.basis[j].sym)));
                }
            }
        }
        let unit = |i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            self.form_raw(v)
        };
        // associativity, d² = 0, Leibniz
        for i in 0..n {
            let a = unit(i);
            if !a.d_raw().d_raw().is_zero() {
                return Err(Error::Invariant(format!("d∘d is nonzero on {} (degree {})", self.basis[i].sym, self.deg(i))));
            }
            for j in 0..n {
                let b = unit(j);
                let lhs = a.wedge_raw(&b).d_raw();
                let sign = if self.deg(i).is_multiple_of(2) { Q::one() } else { -Q::one() };
                let rhs = a.d_raw().wedge_raw(&b).add_raw(&a.wedge_raw(&b.d_raw()).scale_raw(&sign));
                if lhs != rhs {
                    return Err(Error::Invariant(format!("Leibniz fails on {}*{}", self.basis[i].sym, self.basis[j].sym)));
                }
                for k in 0..n {
                    let c = unit(k);
                    if a.wedge_raw(&b).wedge_raw(&c) != a.wedge_raw(&b.wedge_raw(&c)) {
                        return Err(Error::Invariant(format!("associativity fails on {}*{}*{}", self.basis[i].sym, self.basis[j].sym, self.basis[k].sym)));
                    }
                }
            }
        }
        // Stokes
        if self.dim > 0 {
            for i in self.indices_of_degree(self.dim - 1) {
                if !unit(i).d_raw().integrate_raw().is_zero() {
                    return Err(Error::Invariant(format!("Stokes fails: integral of d({}) is nonzero", self.basis[i].sym)));
                }
            }
        }
        Ok(())
    }

    // Form arithmetic without model identity checks, used during validation.
    fn form_raw(&self, c: Vec<Q>) -> RawForm<'_> {
        RawForm { m: self, c }
    }
}

pub(crate) fn koszul(a: usize, b: usize) -> Q {
    if (a * b).is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

struct RawForm<'a> {
    m: &'a CdgaModel,
    c: Vec<Q>,
}

impl PartialEq for RawForm<'_> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}

impl RawForm<'_> {
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn d_raw(&self) -> Self {
        let mut out = vec![Q::zero(); self.m.len()];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in &self.m.d[i] {
                out[*j] += x * y;
            }
        }
        RawForm { m: self.m, c: out }
    }
    fn wedge_raw(&self, o: &Self) -> Self {
        RawForm { m: self.m, c: wedge_coeffs(self.m, &self.c, &o.c) }
    }
    fn add_raw(&self, o: &Self) -> Self {
        RawForm { m: self.m, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn scale_raw(&self, s: &Q) -> Self {
        RawForm { m: self.m, c: self.c.iter().map(|a| a * s).collect() }
    }
    fn integrate_raw(&self) -> Q {
        self.c.iter().zip(&self.m.integral).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }
}

fn wedge_coeffs(m: &CdgaModel, a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); m.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (k, z) in &m.mul[i][j] {
                out[*k] += x * y * z;
            }
        }
    }
    out
}

fn same_model(a: &Arc<CdgaModel>, b: &Arc<CdgaModel>) -> bool {
    Arc::ptr_eq(a, b) || (a.name == b.name && a.basis == b.basis)
}

pub fn check_same_model(a: &Arc<CdgaModel>, b: &Arc<CdgaModel>) -> Result<()> {
    if same_model(a, b) {
        Ok(())
    } else {
        Err(Error::ModelMismatch(format!("{} vs {}", a.name, b.name)))
    }
}

/// An element of a model, possibly of mixed degree.
#[derive(Clone, Debug)]
pub struct Form {
    model: Arc<CdgaModel>,
    c: Vec<Q>,
}

impl PartialEq for Form {
    fn eq(&self, o: &Self) -> bool {
        same_model(&self.model, &o.model) && self.c == o.c
    }
}

impl Form {
    pub fn zero(model: &Arc<CdgaModel>) -> Self {
        Form { model: model.clone(), c: vec![Q::zero(); model.len()] }
    }

    pub fn one(model: &Arc<CdgaModel>) -> Self {
        Self::basis(model, 0)
    }

    pub fn basis(model: &Arc<CdgaModel>, i: usize) -> Self {
        let mut f = Self::zero(model);
        f.c[i] = Q::one();
        f
    }

    pub fn from_coeffs(model: &Arc<CdgaModel>, c: Vec<Q>) -> Result<Self> {
        if c.len() != model.len() {
            return Err(Error::ModelMismatch(format!("coefficient vector of length {} for model {}", c.len(), model.name)));
        }
        Ok(Form { model: model.clone(), c })
    }

    pub fn sym(model: &Arc<CdgaModel>, sym: &str) -> Result<Self> {
        let i = model.index_of(sym).ok_or_else(|| Error::Unknown(format!("{sym} in model {}", model.name)))?;
        Ok(Self::basis(model, i))
    }

    pub fn parse(model: &Arc<CdgaModel>, s: &str) -> Result<Self> {
        expr::parse_form(model, s)
    }

    pub fn model(&self) -> &Arc<CdgaModel> {
        &self.model
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.c[i]
    }

    pub fn try_add(&self, o: &Form) -> Result<Form> {
        check_same_model(&self.model, &o.model)?;
        Ok(Form { model: self.model.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() })
    }

    pub fn try_wedge(&self, o: &Form) -> Result<Form> {
        check_same_model(&self.model, &o.model)?;
        Ok(Form { model: self.model.clone(), c: wedge_coeffs(&self.model, &self.c, &o.c) })
    }

    pub fn scale(&self, s: &Q) -> Form {
        Form { model: self.model.clone(), c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn dform(&self) -> Form {
        let raw = self.model.form_raw(self.c.clone()).d_raw();
        Form { model: self.model.clone(), c: raw.c }
    }

    /// Integral of the top-degree component.
    pub fn integrate(&self) -> Q {
        self.c.iter().zip(&self.model.integral).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn component(&self, deg: usize) -> Form {
        let c = self.c.iter().enumerate().map(|(i, x)| if self.model.deg(i) == deg { x.clone() } else { Q::zero() }).collect();
        Form { model: self.model.clone(), c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).map(|i| self.model.deg(i)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous_of(&self, deg: usize) -> bool {
        self.degrees().iter().all(|&d| d == deg)
    }

    /// Uniform integer coefficients in [-bound, bound] on basis elements of the given degree.
    pub fn random<R: Rng>(model: &Arc<CdgaModel>, deg: Option<usize>, bound: i64, rng: &mut R) -> Form {
        let c = (0..model.len())
            .map(|i| if deg.is_none_or(|d| model.deg(i) == d) { qi(rng.gen_range(-bound..=bound)) } else { Q::zero() })
            .collect();
        Form { model: model.clone(), c }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let sym = &self.model.basis[i].sym;
            let a = x.abs();
            let sep = match (first, x.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sep)?;
            if i == 0 {
                f.write_str(&fmt_q(&a))?;
            } else if a.is_one() {
                f.write_str(sym)?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), sym)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl DgForm for Form {
    fn zero_like(&self) -> Self {
        Form::zero(&self.model)
    }
    fn one_like(&self) -> Self {
        Form::one(&self.model)
    }
    fn plus(&self, o: &Self) -> Self {
        self.try_add(o).expect("forms on different models")
    }
    fn times(&self, s: &Q) -> Self {
        self.scale(s)
    }
    fn wedge(&self, o: &Self) -> Self {
        self.try_wedge(o).expect("forms on different models")
    }
    fn d(&self) -> Self {
        self.dform()
    }
    fn is_zero(&self) -> bool {
        Form::is_zero(self)
    }
    fn part(&self, deg: usize) -> Self {
        self.component(deg)
    }
    fn ambient_dim(&self) -> usize {
        self.model.dim
    }
    fn degrees(&self) -> Vec<usize> {
        Form::degrees(self)
    }
}

/// A homological current: a functional on forms, stored in the dual basis.
#[derive(Clone, Debug)]
pub struct Current {
    model: Arc<CdgaModel>,
    c: Vec<Q>,
}

impl PartialEq for Current {
    fn eq(&self, o: &Self) -> bool {
        same_model(&self.model, &o.model) && self.c == o.c
    }
}

impl Current {
    pub fn zero(model: &Arc<CdgaModel>) -> Self {
        Current { model: model.clone(), c: vec![Q::zero(); model.len()] }
    }

    /// Dual basis functional e_i^*.
    pub fn dual(model: &Arc<CdgaModel>, i: usize) -> Self {
        let mut t = Self::zero(model);
        t.c[i] = Q::one();
        t
    }

    /// The integration current of the model.
    pub fn fundamental(model: &Arc<CdgaModel>) -> Self {
        Current { model: model.clone(), c: model.integral.clone() }
    }

    /// Evaluation at the basepoint: picks the coefficient of the unit.
    pub fn point(model: &Arc<CdgaModel>) -> Self {
        Self::dual(model, 0)
    }

    pub fn from_coeffs(model: &Arc<CdgaModel>, c: Vec<Q>) -> Result<Self> {
        if c.len() != model.len() {
            return Err(Error::ModelMismatch("current coefficient length".into()));
        }
        Ok(Current { model: model.clone(), c })
    }

    pub fn model(&self) -> &Arc<CdgaModel> {
        &self.model
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn eval(&self, a: &Form) -> Result<Q> {
        check_same_model(&self.model, &a.model)?;
        Ok(self.c.iter().zip(&a.c).fold(Q::zero(), |acc, (x, y)| acc + x * y))
    }

    /// ⟨∂T, α⟩ = ⟨T, dα⟩.
    pub fn boundary(&self) -> Current {
        let m = &self.model;
        let c = (0..m.len())
            .map(|j| m.d[j].iter().fold(Q::zero(), |acc, (i, x)| acc + x * &self.c[*i]))
            .collect();
        Current { model: m.clone(), c }
    }

    pub fn try_add(&self, o: &Current) -> Result<Current> {
        check_same_model(&self.model, &o.model)?;
        Ok(Current { model: self.model.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, s: &Q) -> Current {
        Current { model: self.model.clone(), c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// (β ∧ T)(α) = T(β ∧ α), the homological convention.
    pub fn wedge_form(&self, beta: &Form) -> Result<Current> {
        check_same_model(&self.model, &beta.model)?;
        let m = &self.model;
        let c = (0..m.len())
            .map(|j| {
                let ba = wedge_coeffs(m, &beta.c, &Form::basis(m, j).c);
                ba.iter().zip(&self.c).fold(Q::zero(), |acc, (x, y)| acc + x * y)
            })
            .collect();
        Ok(Current { model: m.clone(), c })
    }

    /// Homological degrees carried by nonzero entries.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.c.len()).filter(|&i| !self.c[i].is_zero()).map(|i| self.model.deg(i)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn random<R: Rng>(model: &Arc<CdgaModel>, deg: Option<usize>, bound: i64, rng: &mut R) -> Current {
        let c = (0..model.len())
            .map(|i| if deg.is_none_or(|d| model.deg(i) == d) { qi(rng.gen_range(-bound..=bound)) } else { Q::zero() })
            .collect();
        Current { model: model.clone(), c }
    }
}

impl fmt::Display for Current {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}^", fmt_q(x), self.model.basis[i].sym)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
