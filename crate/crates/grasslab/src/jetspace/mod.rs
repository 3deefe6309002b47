//! Jet-space calculus for evolutionary pairs
//! `u_t = f(u_x, u_y, v_x, v_y)`, `v_t = g(u_x, u_y, v_x, v_y)`
//! and for implicitly given pairs of equations.

pub mod ctx;
pub mod extract;
pub mod implicit;
pub mod model;

pub use ctx::{Fun, JetContext, VarKind};
pub use extract::extract_coefficients;
pub use implicit::{
    chart_vars, implicit_jets, implicit_jets_at, DerivTables, ImplicitSystem, CHART_VAR_NAMES,
};
pub use model::{derivative_tables, eval_tables, model_vars, SystemModel};

use crate::exprcore::ArithError;

/// Index of a jet variable: derivative counts with respect to (x, y, t).
pub type JetIdx = [u8; 3];

/// Index of a right-hand-side derivative symbol: counts with respect to
/// (a, b, p, q) = (u_x, u_y, v_x, v_y).
pub type SymIdx = [u8; 4];

/// Errors raised by the jet-space layer.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("jet order overflow: {0}")]
    OrderOverflow(String),
    #[error("symbol order overflow: {0}")]
    SymbolOrderOverflow(String),
    #[error("bad model: {0}")]
    BadModel(String),
    #[error("system is not solvable for the highest derivatives: {0}")]
    NonSolvable(String),
    #[error("point does not satisfy the system: {0}")]
    OffSystem(String),
    #[error("degenerate conformal structure: {0}")]
    Degenerate(String),
    #[error("denominator depends on extraction variables: {0}")]
    DenominatorDepends(String),
}

pub(crate) fn total_of3(idx: &JetIdx) -> usize {
    idx.iter().map(|&x| x as usize).sum()
}

pub(crate) fn total_of4(idx: &SymIdx) -> usize {
    idx.iter().map(|&x| x as usize).sum()
}

/// All length-`parts` compositions of `total`, first entry largest first.
pub(crate) fn compositions(total: u8, parts: usize) -> Vec<Vec<u8>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}
