//! Conformal structure carried by the principal symbol and the Weyl
//! connection it induces on solutions: metric, distinguished covector,
//! curvature, and the trace-free obstruction tensors built from them.

use std::collections::HashMap;

use crate::exprcore::{Expr, Rat};
use crate::jetspace::{ImplicitSystem, JetContext, JetError, SymIdx};
pub use crate::linalg::{adjugate3, det3};
use crate::linalg::{Field, Matrix};

/// First derivatives of the right-hand sides by (a, b, p, q) =
/// (u_x, u_y, v_x, v_y), in that order.
#[derive(Clone, Debug)]
pub struct FirstDerivs<T> {
    pub f: [T; 4],
    pub g: [T; 4],
}

impl<T: Clone> FirstDerivs<T> {
    /// Pulls the four order-one entries out of a pair of derivative tables.
    pub fn from_tables(f: &HashMap<SymIdx, T>, g: &HashMap<SymIdx, T>) -> Option<Self> {
        const UNIT: [SymIdx; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        let pick = |t: &HashMap<SymIdx, T>| -> Option<[T; 4]> {
            Some([
                t.get(&UNIT[0])?.clone(),
                t.get(&UNIT[1])?.clone(),
                t.get(&UNIT[2])?.clone(),
                t.get(&UNIT[3])?.clone(),
            ])
        };
        Some(Self {
            f: pick(f)?,
            g: pick(g)?,
        })
    }
}

impl FirstDerivs<Expr> {
    /// Differentiates the right-hand sides of a context by the four base
    /// jets. On a symbolic model this returns the order-one symbols; on a
    /// concrete model, expressions in the first-order jets.
    pub fn of_context(ctx: &JetContext) -> Result<Self, JetError> {
        use crate::jetspace::Fun;
        if ctx.model().is_symbolic() {
            let mut f: Vec<Expr> = Vec::new();
            let mut g: Vec<Expr> = Vec::new();
            for w in 0..4 {
                let mut idx: SymIdx = [0; 4];
                idx[w] = 1;
                f.push(ctx.sym(Fun::U, idx)?);
                g.push(ctx.sym(Fun::V, idx)?);
            }
            Ok(Self {
                f: [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
                g: [g[0].clone(), g[1].clone(), g[2].clone(), g[3].clone()],
            })
        } else {
            let ids = [
                ctx.jet_id(Fun::U, [1, 0, 0]).expect("order >= 1"),
                ctx.jet_id(Fun::U, [0, 1, 0]).expect("order >= 1"),
                ctx.jet_id(Fun::V, [1, 0, 0]).expect("order >= 1"),
                ctx.jet_id(Fun::V, [0, 1, 0]).expect("order >= 1"),
            ];
            let d = |rhs: &Expr| -> [Expr; 4] {
                [
                    rhs.diff(ids[0]),
                    rhs.diff(ids[1]),
                    rhs.diff(ids[2]),
                    rhs.diff(ids[3]),
                ]
            };
            Ok(Self {
                f: d(ctx.rhs(Fun::U)),
                g: d(ctx.rhs(Fun::V)),
            })
        }
    }
}

/// Contravariant symbol metric g^{ij} of an evolutionary pair, in
/// coordinates (x, y, t). Quadric g^{ij} th_i th_j = 0 is the
/// characteristic variety of the linearisation.
pub fn metric_up<T: Field>(d: &FirstDerivs<T>) -> Matrix<T> {
    let one = d.f[0].one_like();
    let half = one.div(&one.add(&one));
    let [fa, fb, fp, fq] = &d.f;
    let [ga, gb, gp, gq] = &d.g;
    let m11 = fa.mul(gp).sub(&fp.mul(ga));
    let m12 = half.mul(
        &fa.mul(gq)
            .sub(&fq.mul(ga))
            .add(&fb.mul(gp).sub(&fp.mul(gb))),
    );
    let m13 = half.neg().mul(&fa.add(gp));
    let m22 = fb.mul(gq).sub(&fq.mul(gb));
    let m23 = half.neg().mul(&fb.add(gq));
    let m33 = one;
    Matrix::from_rows(vec![
        vec![m11.clone(), m12.clone(), m13.clone()],
        vec![m12, m22, m23.clone()],
        vec![m13, m23, m33],
    ])
}

/// Contravariant symbol metric of an implicit pair F = G = 0, read off the
/// chart gradients without solving for (u3, v3):
/// g^{ij} = (F_{u_i} G_{v_j} + F_{u_j} G_{v_i} - F_{v_i} G_{u_j} - F_{v_j} G_{u_i}) / 2.
/// Conformal to `metric_up` of the solved tables wherever the pair is
/// solvable.
pub fn metric_up_implicit(sys: &ImplicitSystem) -> Matrix<Expr> {
    let (f_eq, g_eq) = sys.equations();
    let fu: Vec<Expr> = (0..3).map(|i| f_eq.diff(i)).collect();
    let fv: Vec<Expr> = (3..6).map(|i| f_eq.diff(i)).collect();
    let gu: Vec<Expr> = (0..3).map(|i| g_eq.diff(i)).collect();
    let gv: Vec<Expr> = (3..6).map(|i| g_eq.diff(i)).collect();
    let half = Rat::frac(1, 2);
    Matrix::from_fn(3, 3, |i, j| {
        let s = &(&fu[i] * &gv[j]) + &(&fu[j] * &gv[i]);
        let t = &(&fv[i] * &gu[j]) + &(&fv[j] * &gu[i]);
        (&s - &t).scale(&half)
    })
}

/// Symbol metric with a compatible torsion-free connection and the first
/// derivatives of its coefficients, everything restricted to solutions.
/// With `weyl` set the connection satisfies D_k g_ij = omega_k g_ij for the
/// stored covector; otherwise omega = 0 and the connection is Levi-Civita.
#[derive(Clone, Debug)]
pub struct WeylStructure {
    pub g_up: Matrix<Expr>,
    pub det_up: Expr,
    pub g_down: Matrix<Expr>,
    pub omega: [Expr; 3],
    gamma: Vec<Expr>,
    dgamma: Vec<Expr>,
}

impl WeylStructure {
    /// Builds the connection from a contravariant metric whose entries live
    /// on the context's variable table. Every total derivative taken here is
    /// reduced on solutions, so t-jets never survive.
    pub fn build(ctx: &JetContext, g_up: Matrix<Expr>, weyl: bool) -> Result<Self, JetError> {
        assert!(g_up.rows() == 3 && g_up.cols() == 3);
        let det_up = det3(&g_up);
        if det_up.is_zero() {
            return Err(JetError::Degenerate(
                "symbol metric has zero determinant".to_string(),
            ));
        }
        let g_down = adjugate3(&g_up).map(|e| {
            e.checked_div(&det_up)
                .expect("determinant checked nonzero")
        });
        let dk = |k: usize, e: &Expr| -> Result<Expr, JetError> {
            ctx.reduce_on_solution(&ctx.total_derivative(k, e)?)
        };
        let mut dg_up: Vec<Matrix<Expr>> = Vec::with_capacity(3);
        for k in 0..3 {
            let mut m = g_up.clone();
            for i in 0..3 {
                for j in 0..3 {
                    m.set(i, j, dk(k, g_up.at(i, j))?);
                }
            }
            dg_up.push(m);
        }
        // d(g_down) = -g_down d(g_up) g_down, valid for any derivation.
        let dg_down: Vec<Matrix<Expr>> = dg_up
            .iter()
            .map(|d| g_down.matmul(d).matmul(&g_down).map(|e| -e))
            .collect();

        let zero = Expr::zero(det_up.vars());
        let mut omega = [zero.clone(), zero.clone(), zero.clone()];
        if weyl {
            // omega_k = 2 g_{kj} D_s(g^{js}) - D_k(det)/det.
            let mut div: Vec<Expr> = Vec::with_capacity(3);
            for j in 0..3 {
                let mut s = zero.clone();
                for k in 0..3 {
                    s = &s + dg_up[k].at(j, k);
                }
                div.push(s);
            }
            for (k, w) in omega.iter_mut().enumerate() {
                let mut acc = zero.clone();
                for j in 0..3 {
                    acc = &acc + &(g_down.at(k, j) * &div[j]);
                }
                let log_det = dk(k, &det_up)?
                    .checked_div(&det_up)
                    .expect("determinant checked nonzero");
                *w = &acc.scale(&Rat::from_int(2)) - &log_det;
            }
        }
        let omega_up: Vec<Expr> = (0..3)
            .map(|k| {
                let mut acc = zero.clone();
                for l in 0..3 {
                    acc = &acc + &(g_up.at(k, l) * &omega[l]);
                }
                acc
            })
            .collect();

        let half = Rat::frac(1, 2);
        let mut gamma = vec![zero.clone(); 27];
        for k in 0..3 {
            for i in 0..3 {
                for j in i..3 {
                    let mut acc = zero.clone();
                    for l in 0..3 {
                        let braces = &(dg_down[i].at(l, j) + dg_down[j].at(l, i))
                            - dg_down[l].at(i, j);
                        acc = &acc + &(g_up.at(k, l) * &braces);
                    }
                    let mut v = acc.scale(&half);
                    // Weyl correction: -(d^k_i omega_j + d^k_j omega_i - g_ij omega^k)/2.
                    let mut corr = zero.clone();
                    if k == i {
                        corr = &corr + &omega[j];
                    }
                    if k == j {
                        corr = &corr + &omega[i];
                    }
                    corr = &corr - &(g_down.at(i, j) * &omega_up[k]);
                    v = &v - &corr.scale(&half);
                    gamma[9 * k + 3 * i + j] = v.clone();
                    gamma[9 * k + 3 * j + i] = v;
                }
            }
        }
        let mut dgamma = vec![zero; 81];
        for m in 0..3 {
            for k in 0..3 {
                for i in 0..3 {
                    for j in i..3 {
                        let v = dk(m, &gamma[9 * k + 3 * i + j])?;
                        dgamma[27 * m + 9 * k + 3 * i + j] = v.clone();
                        dgamma[27 * m + 9 * k + 3 * j + i] = v;
                    }
                }
            }
        }
        Ok(Self {
            g_up,
            det_up,
            g_down,
            omega,
            gamma,
            dgamma,
        })
    }

    /// Connection coefficient with upper index k and lower pair (i, j).
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &Expr {
        &self.gamma[9 * k + 3 * i + j]
    }

    /// On-solution derivative D_m of `gamma(k, i, j)`.
    pub fn dgamma(&self, m: usize, k: usize, i: usize, j: usize) -> &Expr {
        &self.dgamma[27 * m + 9 * k + 3 * i + j]
    }

    /// Applies a variable substitution to every stored expression. Used to
    /// specialise symbol variables after all derivatives have been taken;
    /// fails if the substitution kills the metric determinant.
    pub fn substitute(&self, map: &HashMap<usize, Expr>) -> Result<Self, JetError> {
        let det_up = self.det_up.subst(map).map_err(JetError::Arith)?;
        if det_up.is_zero() {
            return Err(JetError::Degenerate(
                "substitution makes the symbol metric determinant vanish".to_string(),
            ));
        }
        let sub_m = |m: &Matrix<Expr>| -> Result<Matrix<Expr>, JetError> {
            let mut out = m.clone();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.set(i, j, m.at(i, j).subst(map).map_err(JetError::Arith)?);
                }
            }
            Ok(out)
        };
        let sub_v = |v: &[Expr]| -> Result<Vec<Expr>, JetError> {
            v.iter()
                .map(|e| e.subst(map).map_err(JetError::Arith))
                .collect()
        };
        let omega = sub_v(&self.omega)?;
        Ok(Self {
            g_up: sub_m(&self.g_up)?,
            det_up,
            g_down: sub_m(&self.g_down)?,
            omega: [omega[0].clone(), omega[1].clone(), omega[2].clone()],
            gamma: sub_v(&self.gamma)?,
            dgamma: sub_v(&self.dgamma)?,
        })
    }

    /// Ricci tensor R_{lj} = R^a_{laj} of the stored connection, from the
    /// curvature R^k_{lij} = D_i Gm^k_{lj} - D_j Gm^k_{li}
    /// + Gm^a_{lj} Gm^k_{ai} - Gm^a_{li} Gm^k_{aj}.
    pub fn ricci(&self) -> Matrix<Expr> {
        let zero = Expr::zero(self.det_up.vars());
        Matrix::from_fn(3, 3, |l, j| {
            let mut acc = zero.clone();
            for a in 0..3 {
                acc = &acc + self.dgamma(a, a, l, j);
                acc = &acc - self.dgamma(j, a, l, a);
                for b in 0..3 {
                    acc = &acc + &(self.gamma(b, l, j) * self.gamma(a, b, a));
                    acc = &acc - &(self.gamma(b, l, a) * self.gamma(a, b, j));
                }
            }
            acc
        })
    }

    /// Trace-free symmetrised Ricci tensor of the Weyl connection,
    /// R_{(lj)} - (R/3) g_{lj}. Identically zero exactly on the
    /// Einstein-Weyl systems.
    pub fn ew_residual(&self) -> Matrix<Expr> {
        let ric = self.ricci();
        let half = Rat::frac(1, 2);
        let sym = ric.add(&ric.transpose()).scale(&Expr::constant(
            self.det_up.vars(),
            half,
        ));
        let mut scal = Expr::zero(self.det_up.vars());
        for i in 0..3 {
            for j in 0..3 {
                scal = &scal + &(self.g_up.at(i, j) * sym.at(i, j));
            }
        }
        let third = Rat::frac(1, 3);
        let res = sym.sub(&self.g_down.scale(&scal.scale(&third)));
        debug_assert!(
            {
                let mut t = Expr::zero(self.det_up.vars());
                for i in 0..3 {
                    for j in 0..3 {
                        t = &t + &(self.g_up.at(i, j) * res.at(i, j));
                    }
                }
                t.is_zero()
            },
            "residual must be trace-free"
        );
        res
    }

    /// Cotton tensor C_{pqr} = D_r S_{pq} - D_q S_{pr} (covariant
    /// derivatives, S = Ric - R g / 4), flattened as 9 p + 3 q + r. Requires
    /// the Levi-Civita build; vanishing is conformal flatness.
    pub fn cotton(&self, ctx: &JetContext) -> Result<Vec<Expr>, JetError> {
        if self.omega.iter().any(|w| !w.is_zero()) {
            return Err(JetError::BadModel(
                "the Cotton tensor needs the Levi-Civita connection (weyl = false)".to_string(),
            ));
        }
        let ric = self.ricci();
        let mut scal = Expr::zero(self.det_up.vars());
        for i in 0..3 {
            for j in 0..3 {
                scal = &scal + &(self.g_up.at(i, j) * ric.at(i, j));
            }
        }
        let quarter = Rat::frac(1, 4);
        let schouten = ric.sub(&self.g_down.scale(&scal.scale(&quarter)));
        let dk = |k: usize, e: &Expr| -> Result<Expr, JetError> {
            ctx.reduce_on_solution(&ctx.total_derivative(k, e)?)
        };
        let nabla = |r: usize, p: usize, q: usize| -> Result<Expr, JetError> {
            let mut acc = dk(r, schouten.at(p, q))?;
            for a in 0..3 {
                acc = &acc - &(self.gamma(a, p, r) * schouten.at(a, q));
                acc = &acc - &(self.gamma(a, q, r) * schouten.at(p, a));
            }
            Ok(acc)
        };
        // Each nabla value is used twice across the antisymmetrised loop.
        let mut memo: Vec<Option<Expr>> = vec![None; 27];
        let mut cached = |r: usize, p: usize, q: usize| -> Result<Expr, JetError> {
            let slot = 9 * r + 3 * p + q;
            if memo[slot].is_none() {
                memo[slot] = Some(nabla(r, p, q)?);
            }
            Ok(memo[slot].clone().expect("just filled"))
        };
        let mut out = Vec::with_capacity(27);
        for p in 0..3 {
            for q in 0..3 {
                for r in 0..3 {
                    out.push(&cached(r, p, q)? - &cached(q, p, r)?);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::parse_expr;
    use crate::jetspace::{model_vars, SystemModel};

    fn concrete_ctx(f: &str, g: &str, max_order: usize) -> JetContext {
        let mv = model_vars();
        let model = SystemModel::concrete(
            parse_expr(&mv, f).unwrap(),
            parse_expr(&mv, g).unwrap(),
        )
        .unwrap();
        JetContext::new(model, max_order, 0, &[]).unwrap()
    }

    fn concrete_metric(ctx: &JetContext) -> Matrix<Expr> {
        metric_up(&FirstDerivs::of_context(ctx).unwrap())
    }

    #[test]
    fn evolutionary_metric_golden() {
        let ctx = concrete_ctx("p", "b - a^2/2", 3);
        let g = concrete_metric(&ctx);
        let e = |s: &str| ctx.parse(s).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![e("u_x"), e("-1/2"), e("0")],
            vec![e("-1/2"), e("0"), e("0")],
            vec![e("0"), e("0"), e("1")],
        ]);
        assert_eq!(g, expected);
        assert_eq!(det3(&g), e("-1/4"));
    }

    #[test]
    fn implicit_metric_golden() {
        // dKP with the roles of y and t exchanged; not solvable for (u3, v3)
        // yet the symbol metric is still defined.
        let cv = crate::jetspace::implicit::chart_vars();
        let sys = ImplicitSystem::new(
            parse_expr(&cv, "u2 - v1").unwrap(),
            parse_expr(&cv, "v2 - u3 + u1^2/2").unwrap(),
        )
        .unwrap();
        let g = metric_up_implicit(&sys);
        let e = |s: &str| parse_expr(&cv, s).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![e("u1"), e("0"), e("-1/2")],
            vec![e("0"), e("1"), e("0")],
            vec![e("-1/2"), e("0"), e("0")],
        ]);
        assert_eq!(g, expected);
        assert_eq!(det3(&g), e("-1/4"));
    }

    #[test]
    fn implicit_metric_proportional_to_solved_tables() {
        // Scaling the defining equations rescales the implicit metric but
        // not the solved tables; the two agree up to that factor.
        let cv = crate::jetspace::implicit::chart_vars();
        let sys = ImplicitSystem::new(
            parse_expr(&cv, "2*(u3 - v1)").unwrap(),
            parse_expr(&cv, "3*(v3 - u2 + u1^2/2)").unwrap(),
        )
        .unwrap();
        let direct = metric_up_implicit(&sys);
        let tables = crate::jetspace::implicit_jets(&sys, 1).unwrap();
        let solved = metric_up(&FirstDerivs::from_tables(&tables.f, &tables.g).unwrap());
        let six = Expr::constant(&cv, Rat::from_int(6));
        assert_eq!(direct, solved.scale(&six));
    }

    #[test]
    fn weyl_covector_dkp() {
        let ctx = concrete_ctx("p", "b - a^2/2", 3);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), true).unwrap();
        let e = |s: &str| ctx.parse(s).unwrap();
        assert_eq!(w.omega[0], e("0"));
        assert_eq!(w.omega[1], e("-4*u_xx"));
        assert_eq!(w.omega[2], e("0"));
    }

    #[test]
    fn connection_is_metric_compatible() {
        // D_k g_ij - Gm^a_ik g_aj - Gm^a_jk g_ia = omega_k g_ij, checked on a
        // system with non-constant determinant.
        let ctx = concrete_ctx("p", "b/p + a*p^2/6", 3);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), true).unwrap();
        let dk = |k: usize, e: &Expr| {
            ctx.reduce_on_solution(&ctx.total_derivative(k, e).unwrap())
                .unwrap()
        };
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut lhs = dk(k, w.g_down.at(i, j));
                    for a in 0..3 {
                        lhs = &lhs - &(w.gamma(a, i, k) * w.g_down.at(a, j));
                        lhs = &lhs - &(w.gamma(a, j, k) * w.g_down.at(i, a));
                    }
                    let rhs = &w.omega[k] * w.g_down.at(i, j);
                    assert!((&lhs - &rhs).is_zero(), "component ({k},{i},{j})");
                }
            }
        }
    }

    #[test]
    fn ew_residual_vanishes_for_dkp() {
        let ctx = concrete_ctx("p", "b - a^2/2", 3);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), true).unwrap();
        assert!(w.ew_residual().is_zero());
    }

    #[test]
    fn ew_residual_vanishes_for_linear_pair() {
        let ctx = concrete_ctx("p", "b", 3);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), true).unwrap();
        assert!(w.ew_residual().is_zero());
    }

    #[test]
    fn ew_residual_detects_non_integrable() {
        // In the family g = b/p + h(a) p^2/6 only h solving h''' + 2hh'' = 3h'^2
        // is integrable; h(a) = a is not, so some residual component survives.
        let ctx = concrete_ctx("p", "b/p + a*p^2/6", 3);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), true).unwrap();
        assert!(!w.ew_residual().is_zero());
    }

    #[test]
    fn cotton_vanishes_for_linearisable_pair() {
        let ctx = concrete_ctx("b*p - a*q", "a", 4);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), false).unwrap();
        let c = w.cotton(&ctx).unwrap();
        assert!(c.iter().all(Expr::is_zero));
    }

    #[test]
    fn cotton_detects_dkp() {
        let ctx = concrete_ctx("p", "b - a^2/2", 4);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), false).unwrap();
        let c = w.cotton(&ctx).unwrap();
        assert!(c.iter().any(|e| !e.is_zero()));
    }

    #[test]
    fn cotton_requires_levi_civita() {
        let ctx = concrete_ctx("p", "b - a^2/2", 4);
        let w = WeylStructure::build(&ctx, concrete_metric(&ctx), true).unwrap();
        assert!(w.cotton(&ctx).is_err());
    }
}
