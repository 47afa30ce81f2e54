//! Explicit constructions, each returned with a certificate of the parameters used.
//!
//! Two families live here. On `[N]`: the progression with step `floor(1/alpha)` and the
//! block construction. In `Z/pZ x Z/pZ`, `Z/p^2 s Z` and `[N]`: unions of parabolas and their
//! projection along `x = a + cp + bsp`.

mod cyclic;
mod interval;
mod parabola;
mod projection;
mod regime;

pub use cyclic::{
    construct_cyclic, construct_integer, plan_integer, CyclicCertificate, IntegerCertificate, IntegerPlan,
};
pub use interval::{block_hypotheses, block_pattern, construct_ap, construct_block, ApCertificate, BlockCertificate};
pub use parabola::{construct_parabola_union, parabola, parabola_pair_count, ParabolaCertificate};
pub use projection::{exceptional_residues, project_to_cyclic, ProjectionCertificate};
pub use regime::{classify_regime, Regime, RegimeParams};

use serde::Serialize;

use crate::repr::Window;

/// Any construction certificate, tagged by `kind` in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Ap(ApCertificate),
    Block(BlockCertificate),
    Parabola(ParabolaCertificate),
    Project(ProjectionCertificate),
    Cyclic(CyclicCertificate),
    Integer(IntegerCertificate),
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Ap(_) => "ap",
            Certificate::Block(_) => "block",
            Certificate::Parabola(_) => "parabola",
            Certificate::Project(_) => "project",
            Certificate::Cyclic(_) => "cyclic",
            Certificate::Integer(_) => "integer",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Certificate::Ap(c) => c.size,
            Certificate::Block(c) => c.size,
            Certificate::Parabola(c) => c.size,
            Certificate::Project(c) => c.size,
            Certificate::Cyclic(c) => c.size,
            Certificate::Integer(c) => c.size,
        }
    }

    /// The window the claimed cap refers to, or `None` when it is empty (a progression with step 1).
    pub fn window(&self) -> Option<Window> {
        match self {
            Certificate::Ap(c) => (c.a >= 2).then_some(Window::Below(c.a as usize)),
            Certificate::Block(c) => Some(Window::Below(c.d as usize)),
            _ => Some(Window::Full),
        }
    }

    /// The cap as stated for the construction.
    pub fn cap(&self) -> u64 {
        match self {
            Certificate::Ap(_) => 0,
            Certificate::Block(c) => c.cap,
            Certificate::Parabola(c) => c.cap,
            Certificate::Project(c) => c.cap,
            Certificate::Cyclic(c) => c.cap,
            Certificate::Integer(c) => c.cap,
        }
    }

    /// A cap that holds unconditionally. It differs from [`Certificate::cap`] only for the
    /// projected constructions, where residues whose differences reach the grid origin are
    /// counted exactly.
    pub fn proven_cap(&self) -> u64 {
        match self {
            Certificate::Project(c) => c.proven_cap,
            Certificate::Cyclic(c) => c.proven_cap,
            Certificate::Integer(c) => c.proven_cap,
            other => other.cap(),
        }
    }
}
