// SPDX-License-Identifier: Apache-2.0
use super::{check_same_model, CdgaModel, Form};
use crate::error::{Error, Result};
use std::sync::Arc;

/// A CDGA map `src → dst`, the algebraic stand-in for a pullback f*.
#[derive(Clone, Debug, PartialEq)]
pub struct CdgaMorphism {
    src: Arc<CdgaModel>,
    dst: Arc<CdgaModel>,
    images: Vec<Form>,
}

impl CdgaMorphism {
    pub fn new(src: &Arc<CdgaModel>, dst: &Arc<CdgaModel>, images: Vec<Form>) -> Result<Self> {
        if images.len() != src.len() {
            return Err(Error::ModelMismatch(format!("{} images for {} basis elements", images.len(), src.len())));
        }
        for img in &images {
            check_same_model(img.model(), dst)?;
        }
        let m = CdgaMorphism { src: src.clone(), dst: dst.clone(), images };
        m.validate()?;
        Ok(m)
    }

    /// Images given by symbol; unlisted non-unit generators map to zero.
    pub fn from_symbols(src: &Arc<CdgaModel>, dst: &Arc<CdgaModel>, assignments: &[(String, String)]) -> Result<Self> {
        let mut images: Vec<Form> = (0..src.len()).map(|_| Form::zero(dst)).collect();
        images[0] = Form::one(dst);
        for (sym, expr) in assignments {
            let i = src.index_of(sym).ok_or_else(|| Error::Unknown(format!("{sym} in model {}", src.name())))?;
            if i == 0 {
                return Err(Error::Invariant("the unit always maps to the unit".into()));
            }
            images[i] = Form::parse(dst, expr)?;
        }
        Self::new(src, dst, images)
    }

    pub fn identity(m: &Arc<CdgaModel>) -> Self {
        let images = (0..m.len()).map(|i| Form::basis(m, i)).collect();
        CdgaMorphism { src: m.clone(), dst: m.clone(), images }
    }

    /// Inclusion of constants `pt → m`.
    pub fn from_point(pt: &Arc<CdgaModel>, m: &Arc<CdgaModel>) -> Result<Self> {
        Self::new(pt, m, vec![Form::one(m)])
    }

    pub fn src(&self) -> &Arc<CdgaModel> {
        &self.src
    }
    pub fn dst(&self) -> &Arc<CdgaModel> {
        &self.dst
    }

    pub fn apply(&self, a: &Form) -> Result<Form> {
        check_same_model(a.model(), &self.src)?;
        let mut out = Form::zero(&self.dst);
        for (i, c) in a.coeffs().iter().enumerate() {
            if !num::Zero::is_zero(c) {
                out = out.try_add(&self.images[i].scale(c))?;
            }
        }
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let s = &self.src;
        if self.images[0] != Form::one(&self.dst) {
            return Err(Error::Invariant("pullback does not preserve the unit".into()));
        }
        for i in 0..s.len() {
            let img = &self.images[i];
            if !img.is_homogeneous_of(s.deg(i)) {
                return Err(Error::Invariant(format!("image of {} is not of degree {}", s.basis()[i].sym, s.deg(i))));
            }
            let lhs = self.apply(&Form::basis(s, i).dform())?;
            if lhs != img.dform() {
                return Err(Error::Invariant(format!("pullback does not commute with d on {}", s.basis()[i].sym)));
            }
            for j in 0..s.len() {
                let lhs = self.apply(&Form::basis(s, i).try_wedge(&Form::basis(s, j))?)?;
                if lhs != img.try_wedge(&self.images[j])? {
                    return Err(Error::Invariant(format!("pullback does not preserve {}*{}", s.basis()[i].sym, s.basis()[j].sym)));
                }
            }
        }
        Ok(())
    }
}
