//! Evolutionary system models and their derivative tables.

use std::collections::HashMap;

use crate::exprcore::{Expr, Rat, Vars};

use super::{compositions, JetError, SymIdx};

/// The four first-derivative coordinates an evolutionary right-hand side may
/// depend on: (a, b, p, q) = (u_x, u_y, v_x, v_y).
pub const MODEL_VAR_NAMES: [&str; 4] = ["a", "b", "p", "q"];

/// Variable table for evolutionary right-hand sides.
pub fn model_vars() -> Vars {
    Vars::new(&MODEL_VAR_NAMES).expect("static table")
}

/// An evolutionary pair `u_t = f`, `v_t = g`. The symbolic variant keeps the
/// right-hand sides as undetermined functions of (a, b, p, q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemModel {
    Concrete { f: Expr, g: Expr },
    Symbolic,
}

impl SystemModel {
    /// Builds a concrete model, validating that both right-hand sides live on
    /// the (a, b, p, q) table.
    pub fn concrete(f: Expr, g: Expr) -> Result<Self, JetError> {
        let table = model_vars();
        for (name, e) in [("f", &f), ("g", &g)] {
            if !e.vars().compatible(&table) {
                return Err(JetError::BadModel(format!(
                    "{name} must be an expression in (a, b, p, q)"
                )));
            }
        }
        Ok(SystemModel::Concrete { f, g })
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, SystemModel::Symbolic)
    }
}

/// Partial-derivative table of a model expression: entry `[i,j,k,l]` is
/// d^(i+j+k+l) e / da^i db^j dp^k dq^l, for all orders up to `order`.
pub fn derivative_tables(e: &Expr, order: usize) -> HashMap<SymIdx, Expr> {
    let mut out = HashMap::new();
    out.insert([0, 0, 0, 0], e.clone());
    for ord in 1..=order {
        for idx in compositions(ord as u8, 4) {
            let idx: SymIdx = [idx[0], idx[1], idx[2], idx[3]];
            // Differentiate a previously computed entry one step down.
            let (parent, dir) = {
                let d = idx.iter().position(|&x| x > 0).expect("positive order");
                let mut p = idx;
                p[d] -= 1;
                (p, d)
            };
            let val = out[&parent].diff(dir);
            out.insert(idx, val);
        }
    }
    out
}

/// Evaluates a derivative table at a rational point (a, b, p, q). Pole hits
/// surface as arithmetic errors so samplers can redraw.
pub fn eval_tables(
    tables: &HashMap<SymIdx, Expr>,
    point: &[Rat; 4],
) -> Result<HashMap<SymIdx, Rat>, JetError> {
    let assignment: HashMap<usize, Rat> =
        (0..4).map(|i| (i, point[i].clone())).collect();
    let mut out = HashMap::new();
    for (idx, e) in tables {
        out.insert(*idx, e.eval(&assignment)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::parse_expr;

    #[test]
    fn derivative_table_orders() {
        let v = model_vars();
        let f = parse_expr(&v, "b - a^2/2").unwrap();
        let t = derivative_tables(&f, 2);
        assert_eq!(t[&[0, 0, 0, 0]], f);
        assert_eq!(t[&[1, 0, 0, 0]], parse_expr(&v, "-a").unwrap());
        assert_eq!(t[&[0, 1, 0, 0]], parse_expr(&v, "1").unwrap());
        assert_eq!(t[&[2, 0, 0, 0]], parse_expr(&v, "-1").unwrap());
        assert!(t[&[1, 1, 0, 0]].is_zero());
        // Orders 0, 1, 2 over four variables: 1 + 4 + 10 entries.
        assert_eq!(t.len(), 15);
    }

    #[test]
    fn table_evaluation_reports_poles() {
        let v = model_vars();
        let f = parse_expr(&v, "b/p").unwrap();
        let t = derivative_tables(&f, 1);
        let ok = eval_tables(
            &t,
            &[
                Rat::from_int(1),
                Rat::from_int(6),
                Rat::from_int(2),
                Rat::from_int(0),
            ],
        )
        .unwrap();
        assert_eq!(ok[&[0, 0, 0, 0]], Rat::from_int(3));
        assert_eq!(ok[&[0, 0, 1, 0]], Rat::frac(-3, 2));
        let pole = eval_tables(
            &t,
            &[
                Rat::from_int(1),
                Rat::from_int(6),
                Rat::from_int(0),
                Rat::from_int(0),
            ],
        );
        assert!(pole.is_err());
    }

    #[test]
    fn concrete_model_validates_table() {
        let v = model_vars();
        let f = parse_expr(&v, "p").unwrap();
        let g = parse_expr(&v, "b - a^2/2").unwrap();
        assert!(SystemModel::concrete(f, g).is_ok());
        let wrong = Vars::new(&["x", "y"]).unwrap();
        let h = parse_expr(&wrong, "x").unwrap();
        let f2 = parse_expr(&v, "p").unwrap();
        assert!(matches!(
            SystemModel::concrete(f2, h),
            Err(JetError::BadModel(_))
        ));
    }
}
