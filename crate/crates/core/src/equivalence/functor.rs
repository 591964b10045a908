use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{check_module, check_module_morphism, GradedAlgebra, GradedModule, GradedMorphism};
use crate::twist::{inverse_twist, twist_module, TwistingSystem};

/// The twist functor `M ↦ M^τ`, identity on morphisms, together with its
/// inverse `N ↦ N^{τ⁻¹}`.
#[derive(Clone, Debug)]
pub struct ZmFunctor {
    forward: TwistingSystem,
    backward: TwistingSystem,
    twisted: Arc<GradedAlgebra>,
}

pub fn zm_forward(t: &TwistingSystem) -> Result<ZmFunctor> {
    let backward = inverse_twist(t)?;
    let twisted = backward.algebra().clone();
    Ok(ZmFunctor {
        forward: t.clone(),
        backward,
        twisted,
    })
}

fn require(report: crate::report::Report, what: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what}: {report}")))
    }
}

impl ZmFunctor {
    pub fn source(&self) -> &Arc<GradedAlgebra> {
        self.forward.algebra()
    }

    /// `A^τ`.
    pub fn target(&self) -> &Arc<GradedAlgebra> {
        &self.twisted
    }

    pub fn twist(&self) -> &TwistingSystem {
        &self.forward
    }

    /// `M ↦ M^τ`.
    pub fn module(&self, m: &GradedModule) -> Result<GradedModule> {
        require(check_module(m), "input module")?;
        let out = twist_module(m, &self.forward)?;
        out.over(self.twisted.clone())
    }

    /// The same matrices, checked to be a module map `M^τ → N^τ`.
    pub fn morphism(&self, f: &GradedMorphism, m: &GradedModule, n: &GradedModule) -> Result<GradedMorphism> {
        require(check_module_morphism(f, m, n)?, "input morphism")?;
        let (mt, nt) = (self.module(m)?, self.module(n)?);
        let r = check_module_morphism(f, &mt, &nt)?;
        if !r.passed() {
            return Err(Error::Precondition(format!("image is not a module map: {r}")));
        }
        Ok(f.clone())
    }

    /// `N ↦ N^{τ⁻¹}`, the inverse functor on modules over `A^τ`.
    pub fn inverse_module(&self, n: &GradedModule) -> Result<GradedModule> {
        require(check_module(n), "input module")?;
        let out = twist_module(n, &self.backward)?;
        out.over(self.source().clone())
    }
}

