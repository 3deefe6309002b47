//! The affine chart of 3-planes in 5-space seen as 2x3 matrices, the
//! fractional-linear action of invertible 5x5 matrices on that chart, the
//! induced transformation of implicit systems, the Lie algebra of the action,
//! and the rank-one (bisecant) cone on tangent planes.

pub mod generators;

use std::collections::HashMap;
use std::str::FromStr;

use crate::exprcore::{poly_gcd, ArithError, Expr, MPoly, Rat, Vars};
use crate::jetspace::{chart_vars, ImplicitSystem, JetError};
use crate::linalg::{adjugate3, det3, Matrix};

pub use generators::{
    j1_vars, prolong, prolonged_generator_rank, Generator, GeneratorSet, ProlongedGenerator,
};

/// Errors raised by chart geometry operations.
#[derive(thiserror::Error, Debug)]
pub enum GrassError {
    #[error("matrix must be invertible")]
    Singular,
    #[error("the image leaves the affine chart: {0}")]
    ChartBoundary(String),
    #[error("every direction of the pencil is rank one")]
    RankOnePencil,
    #[error("the two matrices spanning the pencil are linearly dependent")]
    DependentPlane,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// A point of the affine chart: the 2x3 matrix with rows (u1, u2, u3) and
/// (v1, v2, v3).
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    mat: Matrix<Rat>,
}

impl ChartPoint {
    pub fn new(mat: Matrix<Rat>) -> Self {
        assert!(
            mat.rows() == 2 && mat.cols() == 3,
            "a chart point is a 2x3 matrix"
        );
        Self { mat }
    }

    /// Chart point from entries (u1, u2, u3, v1, v2, v3).
    pub fn from_coords(c: &[Rat; 6]) -> Self {
        Self::new(Matrix::from_rows(vec![
            vec![c[0].clone(), c[1].clone(), c[2].clone()],
            vec![c[3].clone(), c[4].clone(), c[5].clone()],
        ]))
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.mat
    }

    /// Entries in chart-variable order (u1, u2, u3, v1, v2, v3).
    pub fn coords(&self) -> [Rat; 6] {
        [
            self.mat.at(0, 0).clone(),
            self.mat.at(0, 1).clone(),
            self.mat.at(0, 2).clone(),
            self.mat.at(1, 0).clone(),
            self.mat.at(1, 1).clone(),
            self.mat.at(1, 2).clone(),
        ]
    }
}

/// An invertible 5x5 rational matrix acting on the chart. Elements are kept
/// unnormalised; the nonzero determinant is recorded so a unimodular
/// representative is always recoverable, while the chart action itself is
/// scale-invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct SL5Element {
    mat: Matrix<Rat>,
    det: Rat,
}

impl SL5Element {
    pub fn new(mat: Matrix<Rat>) -> Result<Self, GrassError> {
        if mat.rows() != 5 || mat.cols() != 5 {
            return Err(GrassError::ChartBoundary(
                "group elements are 5x5 matrices".to_string(),
            ));
        }
        let det = mat.det_bareiss().map_err(|_| GrassError::Singular)?;
        if det.is_zero() {
            return Err(GrassError::Singular);
        }
        Ok(Self { mat, det })
    }

    pub fn identity() -> Self {
        Self {
            mat: Matrix::identity_like(5, &Rat::zero()),
            det: Rat::one(),
        }
    }

    /// Element with the given integer entries.
    pub fn from_int_rows(rows: &[[i64; 5]; 5]) -> Result<Self, GrassError> {
        Self::new(Matrix::from_fn(5, 5, |i, j| Rat::from_int(rows[i][j])))
    }

    /// Element with entries given as rational literals like "-3/2".
    pub fn from_str_rows(rows: &[[&str; 5]; 5]) -> Result<Self, GrassError> {
        let mut out = Matrix::zeros_like(5, 5, &Rat::zero());
        for i in 0..5 {
            for j in 0..5 {
                out.set(i, j, Rat::from_str(rows[i][j]).map_err(GrassError::Arith)?);
            }
        }
        Self::new(out)
    }

    pub fn matrix(&self) -> &Matrix<Rat> {
        &self.mat
    }

    /// Determinant of the stored (unnormalised) representative.
    pub fn det(&self) -> &Rat {
        &self.det
    }

    /// The product `self * other`, acting as `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            mat: self.mat.matmul(&other.mat),
            det: &self.det * &other.det,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self
            .mat
            .inverse()
            .expect("determinant was checked on construction");
        Self {
            mat: inv,
            det: self.det.recip().expect("nonzero determinant"),
        }
    }

    fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix<Rat> {
        Matrix::from_fn(nr, nc, |i, j| self.mat.at(r0 + i, c0 + j).clone())
    }

    /// Top-left 2x2 block mixing the dependent differentials among themselves.
    pub fn block_a(&self) -> Matrix<Rat> {
        self.block(0, 0, 2, 2)
    }

    /// Top-right 2x3 block feeding base differentials into dependent ones.
    pub fn block_b(&self) -> Matrix<Rat> {
        self.block(0, 2, 2, 3)
    }

    /// Bottom-left 3x2 block feeding dependent differentials into base ones.
    pub fn block_c(&self) -> Matrix<Rat> {
        self.block(2, 0, 3, 2)
    }

    /// Bottom-right 3x3 block mixing the base differentials among themselves.
    pub fn block_d(&self) -> Matrix<Rat> {
        self.block(2, 2, 3, 3)
    }
}

/// Chart action U -> (A U + B)(C U + D)^{-1}. Fails when the image leaves
/// the chart, i.e. C U + D is singular.
pub fn act(m: &SL5Element, u: &ChartPoint) -> Result<ChartPoint, GrassError> {
    let denom = m.block_c().matmul(u.matrix()).add(&m.block_d());
    let inv = denom.inverse().map_err(|_| {
        GrassError::ChartBoundary("C U + D is singular at this point".to_string())
    })?;
    let numer = m.block_a().matmul(u.matrix()).add(&m.block_b());
    Ok(ChartPoint::new(numer.matmul(&inv)))
}

/// Differential of the chart action at `u` applied to a tangent matrix:
/// dU -> (A - U~ C) dU (C U + D)^{-1} where U~ is the image of `u`. This is
/// an invertible linear map on 2x3 matrices, so it preserves matrix rank.
pub fn act_tangent(
    m: &SL5Element,
    u: &ChartPoint,
    du: &Matrix<Rat>,
) -> Result<Matrix<Rat>, GrassError> {
    assert!(
        du.rows() == 2 && du.cols() == 3,
        "tangent vectors are 2x3 matrices"
    );
    let denom = m.block_c().matmul(u.matrix()).add(&m.block_d());
    let inv = denom.inverse().map_err(|_| {
        GrassError::ChartBoundary("C U + D is singular at this point".to_string())
    })?;
    let image = m.block_a().matmul(u.matrix()).add(&m.block_b()).matmul(&inv);
    let left = m.block_a().sub(&image.matmul(&m.block_c()));
    Ok(left.matmul(du).matmul(&inv))
}

/// Chart action on a 2x3 matrix of expressions sharing one variable table.
/// The denominator determinant must not vanish identically.
pub fn act_expr(m: &SL5Element, u: &Matrix<Expr>) -> Result<Matrix<Expr>, GrassError> {
    let vars = u.at(0, 0).vars().clone();
    let lift = |b: &Matrix<Rat>| Matrix::from_fn(b.rows(), b.cols(), |i, j| {
        Expr::constant(&vars, b.at(i, j).clone())
    });
    let denom = lift(&m.block_c()).matmul(u).add(&lift(&m.block_d()));
    let det = det3(&denom);
    if det.is_zero() {
        return Err(GrassError::ChartBoundary(
            "C U + D is singular identically".to_string(),
        ));
    }
    let adj = adjugate3(&denom).map(|e| {
        e.checked_div(&det)
            .expect("division by a nonzero determinant")
    });
    let numer = lift(&m.block_a()).matmul(u).add(&lift(&m.block_b()));
    Ok(numer.matmul(&adj))
}

/// The 2x3 matrix of chart coordinate functions over the chart table.
fn chart_matrix(vars: &Vars) -> Matrix<Expr> {
    Matrix::from_fn(2, 3, |i, j| Expr::var_id(vars, 3 * i + j))
}

/// Transforms an implicit pair by an equivalence: the defining functions are
/// composed with the inverse chart action and denominators are cleared, so
/// the new pair cuts out exactly the image of the original fourfold inside
/// the chart. Fails when the inverse action has a pole along the whole chart
/// or when a defining function collapses to zero.
pub fn transform_system(
    sys: &ImplicitSystem,
    m: &SL5Element,
) -> Result<ImplicitSystem, GrassError> {
    let vars = chart_vars();
    let minv = m.inverse();
    let lift = |b: &Matrix<Rat>| {
        Matrix::from_fn(b.rows(), b.cols(), |i, j| {
            Expr::constant(&vars, b.at(i, j).clone())
        })
    };
    let chart = chart_matrix(&vars);
    let denom = lift(&minv.block_c()).matmul(&chart).add(&lift(&minv.block_d()));
    let det = det3(&denom).num().clone();
    if det.is_zero() {
        return Err(GrassError::ChartBoundary(
            "C U + D is singular identically".to_string(),
        ));
    }
    // The substituted chart functions share the denominator det; keep only
    // their numerators (A' U + B') adj(C' U + D') and compose polynomially.
    let raw = lift(&minv.block_a())
        .matmul(&chart)
        .add(&lift(&minv.block_b()))
        .matmul(&adjugate3(&denom));
    let images: Vec<MPoly> = (0..6).map(|k| raw.at(k / 3, k % 3).num().clone()).collect();

    // det^(deg p) * (p composed with images / det): denominators cleared up
    // front, so no reduction happens mid-composition.
    let compose = |p: &MPoly| -> (MPoly, u32) {
        let d = p.total_degree() as u32;
        let mut pows: Vec<Vec<MPoly>> = images.iter().map(|_| vec![MPoly::one()]).collect();
        let mut det_pows = vec![MPoly::one()];
        let mut acc = MPoly::zero();
        for (mono, c) in p.terms() {
            let k = (d - mono.degree() as u32) as usize;
            while det_pows.len() <= k {
                det_pows.push(det_pows.last().unwrap().mul(&det));
            }
            let mut t = det_pows[k].scale(c);
            for (id, img) in images.iter().enumerate() {
                let e = mono.deg_of(id) as usize;
                while pows[id].len() <= e {
                    pows[id].push(pows[id].last().unwrap().mul(img));
                }
                if e > 0 {
                    t = t.mul(&pows[id][e]);
                }
            }
            acc = acc.add(&t);
        }
        (acc, d)
    };

    let push = |e: &Expr| -> Result<Expr, GrassError> {
        let (mut num, dn) = compose(e.num());
        let (den, dd) = compose(e.den());
        if num.is_zero() {
            return Err(GrassError::ChartBoundary(
                "a defining function vanishes identically after transforming".to_string(),
            ));
        }
        // The composed function is (num / det^dn) / (den / det^dd). Strip
        // the det powers the clearing introduced, exactly while they divide.
        let mut s = dn as i64 - dd as i64;
        while s > 0 {
            let Some(q) = num.exact_div(&det) else { break };
            num = q;
            s -= 1;
        }
        if s > 0 {
            // A proper factor of det survives in the denominator; one
            // bounded gcd removes the shared part.
            let g = poly_gcd(&num, &det.pow(s as u32));
            num = num.exact_div(&g).expect("a gcd divides both arguments");
        }
        if den.as_constant().is_none() {
            // Rational defining function: reduce the remaining fraction
            // once and keep its numerator.
            let mut num_e = Expr::from_poly(&vars, num);
            if s < 0 {
                num_e = num_e.mul(&Expr::from_poly(&vars, det.pow((-s) as u32)));
            }
            let reduced = num_e
                .checked_div(&Expr::from_poly(&vars, den.clone()))
                .map_err(GrassError::Arith)?;
            num = reduced.num().clone();
        }
        Ok(Expr::from_poly(&vars, num))
    };
    let (f_eq, g_eq) = sys.equations();
    Ok(ImplicitSystem::new(push(f_eq)?, push(g_eq)?)?)
}

/// The three quadratic forms cutting the rank-one cone on tangent matrices,
/// as symmetric 6x6 matrices over (du1, du2, du3, dv1, dv2, dv3):
/// du_i dv_j - du_j dv_i for (i, j) = (1,2), (1,3), (2,3).
pub fn segre_quadrics() -> [Matrix<Rat>; 3] {
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    pairs.map(|(i, j)| {
        let mut q = Matrix::zeros_like(6, 6, &Rat::zero());
        let half = Rat::frac(1, 2);
        // Positions: du_k = k, dv_k = 3 + k.
        q.set(i, 3 + j, half.clone());
        q.set(3 + j, i, half.clone());
        q.set(j, 3 + i, -&half);
        q.set(3 + i, j, -&half);
        q
    })
}

/// Rank-one directions of the pencil s M1 + t M2 of 2x3 matrices.
#[derive(Clone, Debug)]
pub struct PencilRankOnes {
    /// Common factor of the three pencil minors as a binary form in (s, t),
    /// coefficients listed from the highest power of s downwards. Its zero
    /// set is exactly the rank-one locus; the degree bounds the number of
    /// directions.
    pub form: Vec<Rat>,
    /// Rational rank-one directions (s, t), each primitive with positive
    /// leading entry, repeated roots listed once.
    pub directions: Vec<(Rat, Rat)>,
    /// True when an irreducible quadratic factor remains, i.e. a conjugate
    /// pair of non-rational directions exists.
    pub has_irrational_pair: bool,
}

/// Finds the rank-one directions inside the plane spanned by two independent
/// 2x3 matrices: the three 2x2 minors of s M1 + t M2 are binary quadratics,
/// and their gcd cuts the intersection of the line with the rank-one cone.
pub fn segre_directions(
    m1: &Matrix<Rat>,
    m2: &Matrix<Rat>,
) -> Result<PencilRankOnes, GrassError> {
    for m in [m1, m2] {
        assert!(
            m.rows() == 2 && m.cols() == 3,
            "the pencil is spanned by 2x3 matrices"
        );
    }
    let flat = Matrix::from_fn(2, 6, |r, k| {
        let m = if r == 0 { m1 } else { m2 };
        m.at(k / 3, k % 3).clone()
    });
    if flat.rank() < 2 {
        return Err(GrassError::DependentPlane);
    }

    // Minor over columns (j, k) of s M1 + t M2, as (s^2, s t, t^2) coefficients.
    let col = |m: &Matrix<Rat>, j: usize| (m.at(0, j).clone(), m.at(1, j).clone());
    let det2 = |a: (Rat, Rat), b: (Rat, Rat)| &(&a.0 * &b.1) - &(&a.1 * &b.0);
    let mut minors: Vec<[Rat; 3]> = Vec::new();
    for (j, k) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let (a1, a2) = (col(m1, j), col(m1, k));
        let (b1, b2) = (col(m2, j), col(m2, k));
        minors.push([
            det2(a1.clone(), a2.clone()),
            &det2(a1.clone(), b2.clone()) + &det2(b1.clone(), a2.clone()),
            det2(b1, b2),
        ]);
    }

    let s_id = 0usize;
    let t_id = 1usize;
    let to_poly = |c: &[Rat; 3]| -> MPoly {
        let s = MPoly::var(s_id);
        let t = MPoly::var(t_id);
        s.mul(&s)
            .scale(&c[0])
            .add(&s.mul(&t).scale(&c[1]))
            .add(&t.mul(&t).scale(&c[2]))
    };
    let mut gcd: Option<MPoly> = None;
    for c in &minors {
        let p = to_poly(c);
        if p.is_zero() {
            continue;
        }
        gcd = Some(match gcd {
            None => p,
            Some(g) => crate::exprcore::poly_gcd(&g, &p),
        });
    }
    let Some(g) = gcd else {
        return Err(GrassError::RankOnePencil);
    };
    let (g, _) = g.primitive();

    // Homogeneous gcd of homogeneous forms: read the coefficient of s^(d-k) t^k.
    let deg = g.total_degree() as usize;
    let mut form = vec![Rat::zero(); deg + 1];
    for (mono, c) in g.terms() {
        let k = mono.deg_of(t_id) as usize;
        debug_assert_eq!(mono.deg_of(s_id) as usize + k, deg);
        form[k] = c.clone();
    }

    let mut directions: Vec<(Rat, Rat)> = Vec::new();
    let mut push_dir = |s: Rat, t: Rat| {
        let d = normalize_direction(s, t);
        if !directions.contains(&d) {
            directions.push(d);
        }
    };
    // Leading zero coefficients are roots at t = 0 resp. s = 0.
    let mut lo = 0usize;
    let mut hi = deg + 1;
    if form[0].is_zero() {
        push_dir(Rat::one(), Rat::zero());
        lo = form.iter().take_while(|c| c.is_zero()).count();
    }
    if deg >= 1 && form[deg].is_zero() {
        push_dir(Rat::zero(), Rat::one());
        hi = deg + 1 - form.iter().rev().take_while(|c| c.is_zero()).count();
    }
    // The stripped middle is a form in x = s/t with nonzero extreme coefficients.
    let mid = &form[lo..hi];
    let mut has_irrational_pair = false;
    match mid.len() {
        0 | 1 => {}
        2 => push_dir(-&mid[1], mid[0].clone()),
        3 => {
            let disc = &(&mid[1] * &mid[1]) - &(&(&mid[0] * &mid[2]) * &Rat::from_int(4));
            match rat_sqrt(&disc) {
                Some(r) => {
                    let two_a = &mid[0] + &mid[0];
                    for root in [&(-&mid[1]) + &r, &(-&mid[1]) - &r] {
                        push_dir(root, two_a.clone());
                    }
                }
                None => has_irrational_pair = true,
            }
        }
        _ => unreachable!("minor gcd has degree at most 2"),
    }

    Ok(PencilRankOnes {
        form,
        directions,
        has_irrational_pair,
    })
}

/// Scales (s, t) to a primitive integer pair whose first nonzero entry is
/// positive.
fn normalize_direction(s: Rat, t: Rat) -> (Rat, Rat) {
    let scale = s.content_gcd(&t);
    debug_assert!(!scale.is_zero(), "a direction cannot be (0, 0)");
    let mut s = s.checked_div(&scale).expect("nonzero content");
    let mut t = t.checked_div(&scale).expect("nonzero content");
    let lead_negative = if s.is_zero() {
        t.is_negative()
    } else {
        s.is_negative()
    };
    if lead_negative {
        s = -&s;
        t = -&t;
    }
    (s, t)
}

/// Exact square root of a nonnegative rational, if one exists.
fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let rn = x.numer().sqrt();
    let rd = x.denom().sqrt();
    if &(&rn * &rn) == x.numer() && &(&rd * &rd) == x.denom() {
        Some(Rat::new(rn, rd).expect("positive denominator"))
    } else {
        None
    }
}
