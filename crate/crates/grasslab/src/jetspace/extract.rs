//! Coefficient extraction with respect to a set of variables.

use std::collections::HashSet;

use crate::exprcore::{Expr, Mono};

use super::JetError;

/// Writes `e` as a sum of monomials in the `wrt` variables with coefficients
/// free of them, returned in descending monomial order. The denominator must
/// not involve any `wrt` variable.
pub fn extract_coefficients(
    e: &Expr,
    wrt: &[usize],
) -> Result<Vec<(Mono, Expr)>, JetError> {
    let set: HashSet<usize> = wrt.iter().copied().collect();
    for id in e.den().occurring_vars() {
        if set.contains(&id) {
            return Err(JetError::DenominatorDepends(
                e.vars().name(id).to_string(),
            ));
        }
    }
    let groups = e.num().group_by(|id| set.contains(&id));
    let mut out = Vec::with_capacity(groups.len());
    for (mono, cof) in groups {
        let coeff = Expr::from_ratio(e.vars(), cof, e.den().clone())
            .expect("nonzero denominator");
        out.push((mono, coeff));
    }
    out.sort_unstable_by(|x, y| y.0.cmp_grlex(&x.0));
    Ok(out)
}

/// The coefficient of a single monomial (1 for the constant part), zero when
/// absent.
pub fn coefficient_of(e: &Expr, wrt: &[usize], mono: &Mono) -> Result<Expr, JetError> {
    let all = extract_coefficients(e, wrt)?;
    for (m, c) in all {
        if &m == mono {
            return Ok(c);
        }
    }
    Ok(Expr::zero(e.vars()))
}
