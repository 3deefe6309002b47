//! Derivative tables of evolutionary pairs given implicitly by two equations
//! on the first-derivative chart.

use std::collections::HashMap;

use crate::exprcore::{Expr, Rat, Vars};

use super::{compositions, total_of4, JetError, SymIdx};

/// Chart coordinates: (u1, u2, u3) = (u_x, u_y, u_t) and likewise for v.
pub const CHART_VAR_NAMES: [&str; 6] = ["u1", "u2", "u3", "v1", "v2", "v3"];

/// Variable table of the first-derivative chart.
pub fn chart_vars() -> Vars {
    Vars::new(&CHART_VAR_NAMES).expect("static table")
}

/// Ext-table ids of the four base directions (a, b, p, q) = (u1, u2, v1, v2).
const BASE_CHART_IDS: [usize; 4] = [0, 1, 3, 4];
const U3: usize = 2;
const V3: usize = 5;

/// A pair of equations F = G = 0 on the chart, to be solved for (u3, v3).
#[derive(Clone, Debug)]
pub struct ImplicitSystem {
    f_eq: Expr,
    g_eq: Expr,
}

impl ImplicitSystem {
    pub fn new(f_eq: Expr, g_eq: Expr) -> Result<Self, JetError> {
        let table = chart_vars();
        for (name, e) in [("F", &f_eq), ("G", &g_eq)] {
            if !e.vars().compatible(&table) {
                return Err(JetError::BadModel(format!(
                    "{name} must be an expression in (u1, u2, u3, v1, v2, v3)"
                )));
            }
        }
        Ok(Self { f_eq, g_eq })
    }

    /// Encodes an explicit pair u_t = f(a,b,p,q), v_t = g(a,b,p,q) as
    /// u3 - f = 0, v3 - g = 0.
    pub fn from_evolutionary(f: &Expr, g: &Expr) -> Result<Self, JetError> {
        let chart = chart_vars();
        let map: HashMap<usize, Expr> = BASE_CHART_IDS
            .iter()
            .enumerate()
            .map(|(m, &c)| (m, Expr::var_id(&chart, c)))
            .collect();
        let fe = f.subst_into(&chart, &map)?;
        let ge = g.subst_into(&chart, &map)?;
        ImplicitSystem::new(
            Expr::var_id(&chart, U3).sub(&fe),
            Expr::var_id(&chart, V3).sub(&ge),
        )
    }

    pub fn equations(&self) -> (&Expr, &Expr) {
        (&self.f_eq, &self.g_eq)
    }
}

/// Derivative tables of the solved right-hand sides: entry `I` of `f` is
/// d^I u3 by the base directions (a, b, p, q), restricted to the system.
#[derive(Clone, Debug)]
pub struct DerivTables<T> {
    pub f: HashMap<SymIdx, T>,
    pub g: HashMap<SymIdx, T>,
    pub order: usize,
}

/// Prolonged equations over an extended table that adds unknown-derivative
/// placeholders for each multi-index.
struct Prolongation {
    ext: Vars,
    sym_f: HashMap<SymIdx, usize>,
    sym_g: HashMap<SymIdx, usize>,
    /// Reverse map: ext id -> (is_g, index); chart vars are absent.
    sym_of: HashMap<usize, (bool, SymIdx)>,
    eq_f: HashMap<SymIdx, Expr>,
    eq_g: HashMap<SymIdx, Expr>,
    /// Jacobian entries dF/du3, dF/dv3, dG/du3, dG/dv3 over the chart.
    jac: [Expr; 4],
    det: Expr,
}

fn letters(idx: &SymIdx) -> String {
    let mut s = String::new();
    for (c, &n) in ["a", "b", "p", "q"].iter().zip(idx.iter()) {
        for _ in 0..n {
            s.push_str(c);
        }
    }
    s
}

impl Prolongation {
    fn build(sys: &ImplicitSystem, order: usize) -> Result<Self, JetError> {
        assert!(order >= 1, "prolongation order must be positive");
        let mut names: Vec<String> =
            CHART_VAR_NAMES.iter().map(|s| s.to_string()).collect();
        let mut sym_f = HashMap::new();
        let mut sym_g = HashMap::new();
        let mut sym_of = HashMap::new();
        for ord in 1..=order {
            for c in compositions(ord as u8, 4) {
                let idx: SymIdx = [c[0], c[1], c[2], c[3]];
                sym_f.insert(idx, names.len());
                sym_of.insert(names.len(), (false, idx));
                names.push(format!("tf_{}", letters(&idx)));
                sym_g.insert(idx, names.len());
                sym_of.insert(names.len(), (true, idx));
                names.push(format!("tg_{}", letters(&idx)));
            }
        }
        let ext = Vars::new(&names).map_err(JetError::Arith)?;

        let (f_eq, g_eq) = sys.equations();
        let jac = [
            f_eq.diff(U3),
            f_eq.diff(V3),
            g_eq.diff(U3),
            g_eq.diff(V3),
        ];
        let det = jac[0].mul(&jac[3]).sub(&jac[1].mul(&jac[2]));

        let lift_map: HashMap<usize, Expr> =
            (0..6).map(|i| (i, Expr::var_id(&ext, i))).collect();
        let mut this = Self {
            ext: ext.clone(),
            sym_f,
            sym_g,
            sym_of,
            eq_f: HashMap::new(),
            eq_g: HashMap::new(),
            jac,
            det,
        };
        for (is_g, eq) in [(false, f_eq), (true, g_eq)] {
            let lifted = eq.subst_into(&ext, &lift_map)?;
            let mut table: HashMap<SymIdx, Expr> = HashMap::new();
            for ord in 1..=order {
                for c in compositions(ord as u8, 4) {
                    let idx: SymIdx = [c[0], c[1], c[2], c[3]];
                    let w = idx.iter().position(|&x| x > 0).expect("positive order");
                    let mut parent = idx;
                    parent[w] -= 1;
                    let source = if total_of4(&parent) == 0 {
                        &lifted
                    } else {
                        &table[&parent]
                    };
                    let de = this.base_derivative(w, source);
                    table.insert(idx, de);
                }
            }
            if is_g {
                this.eq_g = table;
            } else {
                this.eq_f = table;
            }
        }
        Ok(this)
    }

    /// Formal derivative along base direction w on the extended table: the
    /// base coordinate moves, u3/v3 produce placeholders, placeholders
    /// advance their index.
    fn base_derivative(&self, w: usize, e: &Expr) -> Expr {
        let mut acc = Expr::zero(&self.ext);
        for id in e.occurring_vars() {
            let de = e.diff(id);
            if de.is_zero() {
                continue;
            }
            let dv = if id == BASE_CHART_IDS[w] {
                Expr::one(&self.ext)
            } else if id == U3 || id == V3 {
                let mut idx = [0u8; 4];
                idx[w] = 1;
                let table = if id == U3 { &self.sym_f } else { &self.sym_g };
                Expr::var_id(&self.ext, table[&idx])
            } else if let Some(&(is_g, idx)) = self.sym_of.get(&id) {
                let mut next = idx;
                next[w] += 1;
                let table = if is_g { &self.sym_g } else { &self.sym_f };
                let nid = *table
                    .get(&next)
                    .expect("prolongation never exceeds its own order");
                Expr::var_id(&self.ext, nid)
            } else {
                continue; // other base coordinates are independent of w
            };
            acc = acc.add(&de.mul(&dv));
        }
        acc
    }
}

/// Solves the prolonged equations symbolically: each table entry is an
/// expression on the chart, valid on the system. Fails when the Jacobian in
/// (u3, v3) vanishes identically.
pub fn implicit_jets(
    sys: &ImplicitSystem,
    order: usize,
) -> Result<DerivTables<Expr>, JetError> {
    let p = Prolongation::build(sys, order)?;
    if p.det.is_zero() {
        return Err(JetError::NonSolvable(
            "Jacobian in (u3, v3) vanishes identically".to_string(),
        ));
    }
    let chart = chart_vars();
    let mut map: HashMap<usize, Expr> =
        (0..6).map(|i| (i, Expr::var_id(&chart, i))).collect();
    let mut out = DerivTables {
        f: HashMap::new(),
        g: HashMap::new(),
        order,
    };
    out.f.insert([0; 4], Expr::var_id(&chart, U3));
    out.g.insert([0; 4], Expr::var_id(&chart, V3));
    let [f3, f4, g3, g4] = &p.jac;
    for ord in 1..=order {
        for c in compositions(ord as u8, 4) {
            let idx: SymIdx = [c[0], c[1], c[2], c[3]];
            map.insert(p.sym_f[&idx], Expr::zero(&chart));
            map.insert(p.sym_g[&idx], Expr::zero(&chart));
            let rf = p.eq_f[&idx].subst_into(&chart, &map)?;
            let rg = p.eq_g[&idx].subst_into(&chart, &map)?;
            // [[f3, f4], [g3, g4]] (fI, gI)^T = -(rf, rg)^T
            let f_val = f4.mul(&rg).sub(&g4.mul(&rf)).checked_div(&p.det)?;
            let g_val = g3.mul(&rf).sub(&f3.mul(&rg)).checked_div(&p.det)?;
            map.insert(p.sym_f[&idx], f_val.clone());
            map.insert(p.sym_g[&idx], g_val.clone());
            out.f.insert(idx, f_val);
            out.g.insert(idx, g_val);
        }
    }
    Ok(out)
}

/// Solves the prolonged equations numerically at a chart point that must lie
/// on the system. Fails when the Jacobian is singular at the point.
pub fn implicit_jets_at(
    sys: &ImplicitSystem,
    order: usize,
    point: &[Rat; 6],
) -> Result<DerivTables<Rat>, JetError> {
    let p = Prolongation::build(sys, order)?;
    let chart_assign: HashMap<usize, Rat> =
        (0..6).map(|i| (i, point[i].clone())).collect();
    let (f_eq, g_eq) = sys.equations();
    for (name, eq) in [("F", f_eq), ("G", g_eq)] {
        if !eq.eval(&chart_assign)?.is_zero() {
            return Err(JetError::OffSystem(format!(
                "{name} does not vanish at the sample point"
            )));
        }
    }
    let det = p.det.eval(&chart_assign)?;
    if det.is_zero() {
        return Err(JetError::NonSolvable(
            "Jacobian in (u3, v3) is singular at the sample point".to_string(),
        ));
    }
    let jac: Vec<Rat> = p
        .jac
        .iter()
        .map(|e| e.eval(&chart_assign))
        .collect::<Result<_, _>>()?;
    let (f3, f4, g3, g4) = (&jac[0], &jac[1], &jac[2], &jac[3]);

    let mut assign: HashMap<usize, Rat> = chart_assign;
    let mut out = DerivTables {
        f: HashMap::new(),
        g: HashMap::new(),
        order,
    };
    out.f.insert([0; 4], point[U3].clone());
    out.g.insert([0; 4], point[V3].clone());
    for ord in 1..=order {
        for c in compositions(ord as u8, 4) {
            let idx: SymIdx = [c[0], c[1], c[2], c[3]];
            assign.insert(p.sym_f[&idx], Rat::zero());
            assign.insert(p.sym_g[&idx], Rat::zero());
            let rf = p.eq_f[&idx].eval(&assign)?;
            let rg = p.eq_g[&idx].eval(&assign)?;
            let f_val = (&(f4 * &rg) - &(g4 * &rf)).checked_div(&det)?;
            let g_val = (&(g3 * &rf) - &(f3 * &rg)).checked_div(&det)?;
            assign.insert(p.sym_f[&idx], f_val.clone());
            assign.insert(p.sym_g[&idx], g_val.clone());
            out.f.insert(idx, f_val);
            out.g.insert(idx, g_val);
        }
    }
    Ok(out)
}
