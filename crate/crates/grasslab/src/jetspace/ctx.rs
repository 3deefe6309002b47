//! Jet variable registry, total derivatives, and on-solution reduction.

use std::sync::Mutex;
use std::collections::HashMap;

use crate::exprcore::{ArithError, Expr, Vars};

use super::model::SystemModel;
use super::{compositions, total_of3, total_of4, JetError, JetIdx, SymIdx};

/// The two dependent functions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Fun {
    U,
    V,
}

impl Fun {
    pub const BOTH: [Fun; 2] = [Fun::U, Fun::V];

    pub fn jet_letter(self) -> char {
        match self {
            Fun::U => 'u',
            Fun::V => 'v',
        }
    }

    /// Letter of the attached right-hand-side symbol (f for u_t, g for v_t).
    pub fn sym_letter(self) -> char {
        match self {
            Fun::U => 'f',
            Fun::V => 'g',
        }
    }
}

/// Classification of a context variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    /// Derivative of u or v by (x, y, t) counts; order >= 1.
    Jet(Fun, JetIdx),
    /// Derivative of a right-hand side by (a, b, p, q) counts; order >= 0.
    Sym(Fun, SymIdx),
    /// Auxiliary variable killed by total derivatives.
    Plain,
}

pub(crate) fn jet_name(fun: Fun, idx: &JetIdx) -> String {
    let mut s = String::new();
    s.push(fun.jet_letter());
    s.push('_');
    for _ in 0..idx[0] {
        s.push('x');
    }
    for _ in 0..idx[1] {
        s.push('y');
    }
    for _ in 0..idx[2] {
        s.push('t');
    }
    s
}

pub(crate) fn sym_name(fun: Fun, idx: &SymIdx) -> String {
    let mut s = String::new();
    s.push(fun.sym_letter());
    if total_of4(idx) == 0 {
        return s;
    }
    s.push('_');
    for (c, &n) in ["a", "b", "p", "q"].iter().zip(idx.iter()) {
        for _ in 0..n {
            s.push_str(c);
        }
    }
    s
}

/// Registry of jet variables for one evolutionary model, with total
/// derivatives and rewriting of t-derivatives using the equations.
pub struct JetContext {
    vars: Vars,
    kinds: Vec<VarKind>,
    max_order: usize,
    symbol_order: usize,
    jet_ids: HashMap<(Fun, JetIdx), usize>,
    sym_ids: HashMap<(Fun, SymIdx), usize>,
    model: SystemModel,
    rhs_u: Expr,
    rhs_v: Expr,
    memo: Mutex<HashMap<(Fun, JetIdx), Expr>>,
}

impl JetContext {
    /// Builds a context holding all jets of order 1..=`max_order`, right-hand
    /// side symbols of order 0..=`symbol_order` (none when 0), and the given
    /// auxiliary variables.
    pub fn new(
        model: SystemModel,
        max_order: usize,
        symbol_order: usize,
        extras: &[&str],
    ) -> Result<Self, JetError> {
        if max_order < 2 {
            return Err(JetError::BadModel(
                "jet order must be at least 2".to_string(),
            ));
        }
        if model.is_symbolic() && symbol_order == 0 {
            return Err(JetError::BadModel(
                "a symbolic model needs symbol order at least 1".to_string(),
            ));
        }
        let mut names: Vec<String> = Vec::new();
        let mut kinds: Vec<VarKind> = Vec::new();
        let mut jet_ids = HashMap::new();
        let mut sym_ids = HashMap::new();
        for fun in Fun::BOTH {
            for ord in 1..=max_order {
                for c in compositions(ord as u8, 3) {
                    let idx: JetIdx = [c[0], c[1], c[2]];
                    jet_ids.insert((fun, idx), names.len());
                    names.push(jet_name(fun, &idx));
                    kinds.push(VarKind::Jet(fun, idx));
                }
            }
        }
        if symbol_order > 0 {
            for fun in Fun::BOTH {
                for ord in 0..=symbol_order {
                    for c in compositions(ord as u8, 4) {
                        let idx: SymIdx = [c[0], c[1], c[2], c[3]];
                        sym_ids.insert((fun, idx), names.len());
                        names.push(sym_name(fun, &idx));
                        kinds.push(VarKind::Sym(fun, idx));
                    }
                }
            }
        }
        for extra in extras {
            names.push(extra.to_string());
            kinds.push(VarKind::Plain);
        }
        let vars = Vars::new(&names).map_err(JetError::Arith)?;

        let (rhs_u, rhs_v) = match &model {
            SystemModel::Concrete { f, g } => {
                let map_model = |e: &Expr| -> Result<Expr, ArithError> {
                    let mut map = HashMap::new();
                    for (mid, key) in [
                        (0usize, (Fun::U, [1, 0, 0])),
                        (1, (Fun::U, [0, 1, 0])),
                        (2, (Fun::V, [1, 0, 0])),
                        (3, (Fun::V, [0, 1, 0])),
                    ] {
                        map.insert(mid, Expr::var_id(&vars, jet_ids[&key]));
                    }
                    e.subst_into(&vars, &map)
                };
                (map_model(f)?, map_model(g)?)
            }
            SystemModel::Symbolic => (
                Expr::var_id(&vars, sym_ids[&(Fun::U, [0, 0, 0, 0])]),
                Expr::var_id(&vars, sym_ids[&(Fun::V, [0, 0, 0, 0])]),
            ),
        };

        Ok(Self {
            vars,
            kinds,
            max_order,
            symbol_order,
            jet_ids,
            sym_ids,
            model,
            rhs_u,
            rhs_v,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn symbol_order(&self) -> usize {
        self.symbol_order
    }

    pub fn model(&self) -> &SystemModel {
        &self.model
    }

    /// Right-hand side of `u_t` (Fun::U) or `v_t` (Fun::V) over this table.
    pub fn rhs(&self, fun: Fun) -> &Expr {
        match fun {
            Fun::U => &self.rhs_u,
            Fun::V => &self.rhs_v,
        }
    }

    pub fn kind(&self, id: usize) -> VarKind {
        self.kinds[id]
    }

    pub fn jet_id(&self, fun: Fun, idx: JetIdx) -> Option<usize> {
        self.jet_ids.get(&(fun, idx)).copied()
    }

    pub fn sym_id(&self, fun: Fun, idx: SymIdx) -> Option<usize> {
        self.sym_ids.get(&(fun, idx)).copied()
    }

    pub fn jet(&self, fun: Fun, idx: JetIdx) -> Result<Expr, JetError> {
        match self.jet_id(fun, idx) {
            Some(id) => Ok(Expr::var_id(&self.vars, id)),
            None => Err(JetError::OrderOverflow(format!(
                "{} exceeds jet order {}",
                jet_name(fun, &idx),
                self.max_order
            ))),
        }
    }

    pub fn sym(&self, fun: Fun, idx: SymIdx) -> Result<Expr, JetError> {
        match self.sym_id(fun, idx) {
            Some(id) => Ok(Expr::var_id(&self.vars, id)),
            None => Err(JetError::SymbolOrderOverflow(format!(
                "{} exceeds symbol order {}",
                sym_name(fun, &idx),
                self.symbol_order
            ))),
        }
    }

    pub fn parse(&self, src: &str) -> Result<Expr, ArithError> {
        crate::exprcore::parse_expr(&self.vars, src)
    }

    /// Ids of variables satisfying a kind predicate, in table order.
    pub fn ids_matching(&self, pred: impl Fn(&VarKind) -> bool) -> Vec<usize> {
        (0..self.kinds.len())
            .filter(|&id| pred(&self.kinds[id]))
            .collect()
    }

    /// Total derivative of one variable in direction 0=x, 1=y, 2=t.
    fn d_of_var(&self, id: usize, dir: usize) -> Result<Expr, JetError> {
        match self.kinds[id] {
            VarKind::Jet(fun, idx) => {
                let mut next = idx;
                next[dir] += 1;
                self.jet(fun, next)
            }
            VarKind::Sym(fun, idx) => {
                // Chain rule through (a, b, p, q) = first-order x/y jets.
                let mut acc = Expr::zero(&self.vars);
                let bases: [(Fun, JetIdx); 4] = [
                    (Fun::U, [1, 0, 0]),
                    (Fun::U, [0, 1, 0]),
                    (Fun::V, [1, 0, 0]),
                    (Fun::V, [0, 1, 0]),
                ];
                for (w, (bfun, bidx)) in bases.iter().enumerate() {
                    let mut next = idx;
                    next[w] += 1;
                    let sym = self.sym(fun, next)?;
                    let mut jidx = *bidx;
                    jidx[dir] += 1;
                    let jet = self.jet(*bfun, jidx)?;
                    acc = acc.add(&sym.mul(&jet));
                }
                Ok(acc)
            }
            VarKind::Plain => Ok(Expr::zero(&self.vars)),
        }
    }

    /// Total derivative in direction 0=x, 1=y, 2=t.
    pub fn total_derivative(&self, dir: usize, e: &Expr) -> Result<Expr, JetError> {
        assert!(dir < 3, "direction must be 0 (x), 1 (y) or 2 (t)");
        let mut acc = Expr::zero(&self.vars);
        for id in e.occurring_vars() {
            let de = e.diff(id);
            if de.is_zero() {
                continue;
            }
            let dv = self.d_of_var(id, dir)?;
            if dv.is_zero() {
                continue;
            }
            acc = acc.add(&de.mul(&dv));
        }
        Ok(acc)
    }

    /// Replacement for a t-bearing jet implied by the equations; the result is
    /// free of t-derivatives. Memoised per context.
    fn rho(&self, fun: Fun, idx: JetIdx) -> Result<Expr, JetError> {
        debug_assert!(idx[2] >= 1);
        if let Some(hit) = self.memo.lock().unwrap().get(&(fun, idx)) {
            return Ok(hit.clone());
        }
        let result = if idx[2] == 1 {
            let mut e = self.rhs(fun).clone();
            for _ in 0..idx[0] {
                e = self.total_derivative(0, &e)?;
            }
            for _ in 0..idx[1] {
                e = self.total_derivative(1, &e)?;
            }
            e
        } else {
            let prev = self.rho(fun, [idx[0], idx[1], idx[2] - 1])?;
            let dt = self.total_derivative(2, &prev)?;
            self.reduce_on_solution(&dt)?
        };
        self.memo
            .lock()
            .unwrap()
            .insert((fun, idx), result.clone());
        Ok(result)
    }

    /// Rewrites every t-bearing jet using the equations until only x/y jets
    /// (and symbols) remain. Lower-order jets are rewritten first.
    pub fn reduce_on_solution(&self, e: &Expr) -> Result<Expr, JetError> {
        let mut cur = e.clone();
        loop {
            let mut target: Option<(usize, Fun, JetIdx)> = None;
            for id in cur.occurring_vars() {
                if let VarKind::Jet(fun, idx) = self.kinds[id] {
                    if idx[2] == 0 {
                        continue;
                    }
                    let better = match &target {
                        None => true,
                        Some((tid, _, tidx)) => {
                            (total_of3(&idx), id) < (total_of3(tidx), *tid)
                        }
                    };
                    if better {
                        target = Some((id, fun, idx));
                    }
                }
            }
            let Some((id, fun, idx)) = target else {
                return Ok(cur);
            };
            let replacement = self.rho(fun, idx)?;
            let mut map = HashMap::new();
            map.insert(id, replacement);
            cur = cur.subst(&map).map_err(JetError::Arith)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::parse_expr;
    use crate::jetspace::model::model_vars;

    fn dkp() -> JetContext {
        let mv = model_vars();
        let f = parse_expr(&mv, "p").unwrap();
        let g = parse_expr(&mv, "b - a^2/2").unwrap();
        JetContext::new(SystemModel::concrete(f, g).unwrap(), 4, 0, &[]).unwrap()
    }

    #[test]
    fn registry_names_and_kinds() {
        let ctx = JetContext::new(SystemModel::Symbolic, 4, 3, &["lam"]).unwrap();
        for name in ["u_x", "u_xy", "u_xxt", "v_yyyy", "f", "f_a", "g_abp", "lam"] {
            assert!(ctx.vars().id(name).is_some(), "missing {name}");
        }
        let id = ctx.vars().id("u_xxt").unwrap();
        assert_eq!(ctx.kind(id), VarKind::Jet(Fun::U, [2, 0, 1]));
        let id = ctx.vars().id("g_abp").unwrap();
        assert_eq!(ctx.kind(id), VarKind::Sym(Fun::V, [1, 1, 1, 0]));
        let id = ctx.vars().id("lam").unwrap();
        assert_eq!(ctx.kind(id), VarKind::Plain);
        assert!(ctx.vars().id("u_xxxxx").is_none());
    }

    #[test]
    fn total_derivative_on_jets() {
        let ctx = dkp();
        let e = ctx.parse("u_x^2").unwrap();
        let dx = ctx.total_derivative(0, &e).unwrap();
        assert_eq!(dx, ctx.parse("2*u_x*u_xx").unwrap());
        // Differentiating a top-order jet overflows.
        let top = ctx.parse("u_xxxx").unwrap();
        assert!(matches!(
            ctx.total_derivative(0, &top),
            Err(JetError::OrderOverflow(_))
        ));
    }

    #[test]
    fn symbol_chain_rule() {
        let ctx = JetContext::new(SystemModel::Symbolic, 4, 3, &[]).unwrap();
        let f = ctx.parse("f").unwrap();
        let dx = ctx.total_derivative(0, &f).unwrap();
        assert_eq!(
            dx,
            ctx.parse("f_a*u_xx + f_b*u_xy + f_p*v_xx + f_q*v_xy")
                .unwrap()
        );
        let dy = ctx.total_derivative(1, &f).unwrap();
        assert_eq!(
            dy,
            ctx.parse("f_a*u_xy + f_b*u_yy + f_p*v_xy + f_q*v_yy")
                .unwrap()
        );
        // Symbol order caps the chain rule.
        let deep = ctx.parse("f_aaa").unwrap();
        assert!(matches!(
            ctx.total_derivative(0, &deep),
            Err(JetError::SymbolOrderOverflow(_))
        ));
    }

    #[test]
    fn second_time_derivative_rewrites() {
        let ctx = dkp();
        let utt = ctx.parse("u_tt").unwrap();
        let reduced = ctx.reduce_on_solution(&utt).unwrap();
        assert_eq!(reduced, ctx.parse("u_xy - u_x*u_xx").unwrap());
    }

    #[test]
    fn reduction_commutes_with_y_derivative() {
        let ctx = dkp();
        let utt = ctx.parse("u_tt").unwrap();
        let left = ctx
            .reduce_on_solution(&ctx.total_derivative(1, &utt).unwrap())
            .unwrap();
        let right = ctx
            .total_derivative(1, &ctx.reduce_on_solution(&utt).unwrap())
            .unwrap();
        assert_eq!(left, right);
        assert!(!left.is_zero());
    }

    #[test]
    fn symbolic_reduction_structure() {
        let ctx = JetContext::new(SystemModel::Symbolic, 4, 3, &[]).unwrap();
        let utt = ctx.parse("u_tt").unwrap();
        let reduced = ctx.reduce_on_solution(&utt).unwrap();
        // u_tt = f_a Dx(f) + f_b Dy(f) + f_p Dx(g) + f_q Dy(g).
        let expect = {
            let f = ctx.parse("f").unwrap();
            let g = ctx.parse("g").unwrap();
            let fx = ctx.total_derivative(0, &f).unwrap();
            let fy = ctx.total_derivative(1, &f).unwrap();
            let gx = ctx.total_derivative(0, &g).unwrap();
            let gy = ctx.total_derivative(1, &g).unwrap();
            ctx.parse("f_a").unwrap().mul(&fx)
                + ctx.parse("f_b").unwrap().mul(&fy)
                + ctx.parse("f_p").unwrap().mul(&gx)
                + ctx.parse("f_q").unwrap().mul(&gy)
        };
        assert_eq!(reduced, expect);
    }
}
