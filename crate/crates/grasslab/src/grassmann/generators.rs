//! Infinitesimal generators of the chart action and their first prolongation
//! to the space of 1-jets of the two defining functions.

use std::collections::HashMap;

use crate::exprcore::{Expr, Rat, Vars};
use crate::jetspace::chart_vars;
use crate::linalg::Matrix;

/// A point vector field on the chart, stored through its coefficients in the
/// coordinate frame (d/du1, d/du2, d/du3, d/dv1, d/dv2, d/dv3).
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: &'static str,
    pub coeffs: [Expr; 6],
}

/// The named generators of the chart action: translations Ui, Vi, base
/// mixing Xij = u_i d/du_j + v_i d/dv_j, row mixing L11 = u_k d/du_k,
/// L12 = u_k d/dv_k, L21 = v_k d/du_k, L22 = v_k d/dv_k, and the quadratic
/// fields Pi, Qi. The 25 names span a 24-dimensional algebra; the single
/// relation is X11 + X22 + X33 = L11 + L22.
pub struct GeneratorSet {
    vars: Vars,
    gens: Vec<Generator>,
}

const NAMES: [&str; 25] = [
    "U1", "U2", "U3", "V1", "V2", "V3", "X11", "X12", "X13", "X21", "X22", "X23", "X31", "X32",
    "X33", "L11", "L12", "L21", "L22", "P1", "P2", "P3", "Q1", "Q2", "Q3",
];

impl GeneratorSet {
    pub fn new() -> Self {
        let vars = chart_vars();
        let u = |i: usize| Expr::var_id(&vars, i - 1);
        let v = |i: usize| Expr::var_id(&vars, 2 + i);
        let zero: [Expr; 6] = std::array::from_fn(|_| Expr::zero(&vars));
        let mut gens: Vec<Generator> = Vec::with_capacity(25);
        let mut push = |name: &'static str, coeffs: [Expr; 6]| {
            gens.push(Generator { name, coeffs });
        };
        for i in 1..=3usize {
            let mut c = zero.clone();
            c[i - 1] = Expr::one(&vars);
            push(NAMES[i - 1], c);
        }
        for i in 1..=3usize {
            let mut c = zero.clone();
            c[2 + i] = Expr::one(&vars);
            push(NAMES[2 + i], c);
        }
        for i in 1..=3usize {
            for j in 1..=3usize {
                let mut c = zero.clone();
                c[j - 1] = u(i);
                c[2 + j] = v(i);
                push(NAMES[6 + 3 * (i - 1) + (j - 1)], c);
            }
        }
        let mut row_mix = |name: &'static str, src: &dyn Fn(usize) -> Expr, into_v: bool| {
            let mut c = zero.clone();
            for k in 1..=3usize {
                c[if into_v { 2 + k } else { k - 1 }] = src(k);
            }
            push(name, c);
        };
        row_mix("L11", &u, false);
        row_mix("L12", &u, true);
        row_mix("L21", &v, false);
        row_mix("L22", &v, true);
        for i in 1..=3usize {
            let mut c = zero.clone();
            for k in 1..=3usize {
                c[k - 1] = u(i).mul(&u(k));
                c[2 + k] = v(i).mul(&u(k));
            }
            push(NAMES[18 + i], c);
        }
        for i in 1..=3usize {
            let mut c = zero.clone();
            for k in 1..=3usize {
                c[k - 1] = u(i).mul(&v(k));
                c[2 + k] = v(i).mul(&v(k));
            }
            push(NAMES[21 + i], c);
        }
        Self { vars, gens }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// All 25 named generators.
    pub fn all(&self) -> &[Generator] {
        &self.gens
    }

    pub fn by_name(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| g.name == name)
    }

    /// A spanning set of 24 generators: everything except L22, which equals
    /// X11 + X22 + X33 - L11.
    pub fn spanning(&self) -> Vec<&Generator> {
        self.gens.iter().filter(|g| g.name != "L22").collect()
    }

    /// The coefficient vector of a weighted combination of named generators.
    pub fn combination(&self, terms: &[(&str, Rat)]) -> Option<[Expr; 6]> {
        let mut acc: [Expr; 6] = std::array::from_fn(|_| Expr::zero(&self.vars));
        for (name, weight) in terms {
            let gen = self.by_name(name)?;
            for (slot, c) in gen.coeffs.iter().enumerate() {
                acc[slot] = acc[slot].add(&c.scale(weight));
            }
        }
        Some(acc)
    }
}

impl Default for GeneratorSet {
    fn default() -> Self {
        Self::new()
    }
}

/// Coordinates on the 1-jet space of the pair u3 = f(u1, u2, v1, v2),
/// v3 = g(u1, u2, v1, v2): base point, values, then the first derivatives of
/// f and g by (u1, u2, v1, v2).
pub const J1_VAR_NAMES: [&str; 14] = [
    "u1", "u2", "v1", "v2", "f", "g", "fa", "fb", "fp", "fq", "ga", "gb", "gp", "gq",
];

pub fn j1_vars() -> Vars {
    Vars::new(&J1_VAR_NAMES).expect("fixed name table")
}

/// A generator prolonged to the 1-jet space, coefficients in the coordinate
/// order of `J1_VAR_NAMES`.
#[derive(Clone, Debug)]
pub struct ProlongedGenerator {
    pub name: &'static str,
    pub coeffs: [Expr; 14],
}

/// First prolongation of a chart vector field to the 1-jet space. The value
/// components come from identifying u3 with f and v3 with g; each derivative
/// component is D_w(phi) - sum_w' f_w' D_w(xi^w') with total derivatives
/// truncated at first order.
pub fn prolong(gen: &Generator) -> ProlongedGenerator {
    let j1 = j1_vars();
    // Chart ids (u1, u2, u3, v1, v2, v3) -> jet coordinates (u1, u2, f, v1, v2, g).
    let to_j1: HashMap<usize, Expr> = [
        (0usize, Expr::var_id(&j1, 0)),
        (1, Expr::var_id(&j1, 1)),
        (2, Expr::var_id(&j1, 4)),
        (3, Expr::var_id(&j1, 2)),
        (4, Expr::var_id(&j1, 3)),
        (5, Expr::var_id(&j1, 5)),
    ]
    .into();
    let lift = |e: &Expr| e.subst_into(&j1, &to_j1).expect("total map");
    // Base components ordered as (u1, u2, v1, v2); fibre components for f, g.
    let xi = [
        lift(&gen.coeffs[0]),
        lift(&gen.coeffs[1]),
        lift(&gen.coeffs[3]),
        lift(&gen.coeffs[4]),
    ];
    let phi_f = lift(&gen.coeffs[2]);
    let phi_g = lift(&gen.coeffs[5]);
    // Truncated total derivative by base direction w on functions of
    // (base, f, g): d_w + f_w d_f + g_w d_g.
    let dw = |w: usize, h: &Expr| {
        h.diff(w)
            .add(&Expr::var_id(&j1, 6 + w).mul(&h.diff(4)))
            .add(&Expr::var_id(&j1, 10 + w).mul(&h.diff(5)))
    };
    let mut coeffs: Vec<Expr> = Vec::with_capacity(14);
    coeffs.extend(xi.iter().cloned());
    coeffs.push(phi_f.clone());
    coeffs.push(phi_g.clone());
    for (phi, off) in [(&phi_f, 6usize), (&phi_g, 10usize)] {
        for w in 0..4 {
            let mut c = dw(w, phi);
            for (wp, x) in xi.iter().enumerate() {
                c = c.sub(&Expr::var_id(&j1, off + wp).mul(&dw(w, x)));
            }
            coeffs.push(c);
        }
    }
    ProlongedGenerator {
        name: gen.name,
        coeffs: coeffs.try_into().expect("fourteen components"),
    }
}

/// Rank over the rationals of the 24 spanning prolonged generators at a
/// point of the 1-jet space (coordinates in `J1_VAR_NAMES` order). The rank
/// is 14 exactly where the symbol metric of the 1-jet is non-degenerate.
pub fn prolonged_generator_rank(point: &[Rat; 14]) -> usize {
    let set = GeneratorSet::new();
    let values: HashMap<usize, Rat> = point.iter().cloned().enumerate().collect();
    let rows: Vec<Vec<Rat>> = set
        .spanning()
        .iter()
        .map(|g| {
            prolong(g)
                .coeffs
                .iter()
                .map(|c| c.eval(&values).expect("polynomial coefficients"))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::Mono;
    use crate::linalg::{adjugate3, det3};
    use crate::weylgeom::{metric_up, FirstDerivs};
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn rand_rat(rng: &mut ChaCha20Rng) -> Rat {
        let num = (rng.next_u32() % 25) as i64 - 12;
        let den = (rng.next_u32() % 6) as i64 + 1;
        Rat::frac(num, den)
    }

    /// Exact coefficient matrix of a family of expression tuples: one row per
    /// tuple, one column per (component, monomial) pair that occurs.
    fn coefficient_matrix(tuples: &[Vec<Expr>]) -> Matrix<Rat> {
        let mut columns: HashMap<(usize, Mono), usize> = HashMap::new();
        let mut rows: Vec<HashMap<usize, Rat>> = Vec::new();
        for tuple in tuples {
            let mut row = HashMap::new();
            for (slot, c) in tuple.iter().enumerate() {
                assert!(c.is_polynomial());
                for (mono, coeff) in c.num().terms() {
                    let next = columns.len();
                    let col = *columns.entry((slot, mono.clone())).or_insert(next);
                    row.insert(col, coeff.clone());
                }
            }
            rows.push(row);
        }
        Matrix::from_fn(rows.len(), columns.len(), |i, j| {
            rows[i].get(&j).cloned().unwrap_or_else(Rat::zero)
        })
    }

    #[test]
    fn trace_relation_holds_exactly() {
        let set = GeneratorSet::new();
        let lhs = set
            .combination(&[
                ("X11", Rat::one()),
                ("X22", Rat::one()),
                ("X33", Rat::one()),
            ])
            .unwrap();
        let rhs = set
            .combination(&[("L11", Rat::one()), ("L22", Rat::one())])
            .unwrap();
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn span_has_dimension_twenty_four() {
        let set = GeneratorSet::new();
        let all: Vec<Vec<Expr>> = set.all().iter().map(|g| g.coeffs.to_vec()).collect();
        assert_eq!(coefficient_matrix(&all).rank(), 24);
        let spanning: Vec<Vec<Expr>> = set
            .spanning()
            .iter()
            .map(|g| g.coeffs.to_vec())
            .collect();
        assert_eq!(spanning.len(), 24);
        assert_eq!(coefficient_matrix(&spanning).rank(), 24);
    }

    /// The 5x5 direction matrix whose one-parameter subgroup integrates the
    /// named generator: translations sit in the B block, row mixing in A,
    /// base mixing in -D, and the quadratic fields in -C.
    fn elementary_direction(name: &str) -> [[i64; 5]; 5] {
        let mut m = [[0i64; 5]; 5];
        let bytes = name.as_bytes();
        let digit = |b: u8| (b - b'0') as usize;
        match bytes[0] {
            b'U' => m[0][2 + digit(bytes[1]) - 1] = 1,
            b'V' => m[1][2 + digit(bytes[1]) - 1] = 1,
            b'X' => m[2 + digit(bytes[1]) - 1][2 + digit(bytes[2]) - 1] = -1,
            b'L' => {
                let (r, c) = match name {
                    "L11" => (0, 0),
                    "L12" => (1, 0),
                    "L21" => (0, 1),
                    _ => (1, 1),
                };
                m[r][c] = 1;
            }
            b'P' => m[2 + digit(bytes[1]) - 1][0] = -1,
            _ => m[2 + digit(bytes[1]) - 1][1] = -1,
        }
        m
    }

    #[test]
    fn generators_are_derivatives_of_the_action() {
        // For each named generator there is a one-parameter subgroup I + e E
        // of 5x5 matrices whose chart action differentiates to it at e = 0.
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let set = GeneratorSet::new();
        let evars = Vars::new(&["e"]).unwrap();
        let e = Expr::var_id(&evars, 0);
        let u_val: [Rat; 6] = std::array::from_fn(|_| rand_rat(&mut rng));
        let u_mat = Matrix::from_fn(2, 3, |i, j| {
            Expr::constant(&evars, u_val[3 * i + j].clone())
        });
        let origin: HashMap<usize, Rat> = [(0usize, Rat::zero())].into();
        let chart_values: HashMap<usize, Rat> = u_val.iter().cloned().enumerate().collect();
        for gen in set.all() {
            let dir = elementary_direction(gen.name);
            let blk = |r0: usize, c0: usize, nr: usize, nc: usize| {
                Matrix::from_fn(nr, nc, |i, j| {
                    let base = if r0 + i == c0 + j {
                        Expr::one(&evars)
                    } else {
                        Expr::zero(&evars)
                    };
                    base.add(&e.scale(&Rat::from_int(dir[r0 + i][c0 + j])))
                })
            };
            let denom = blk(2, 0, 3, 2).matmul(&u_mat).add(&blk(2, 2, 3, 3));
            let det = det3(&denom);
            let inv = adjugate3(&denom).map(|en| en.checked_div(&det).unwrap());
            let curve = blk(0, 0, 2, 2)
                .matmul(&u_mat)
                .add(&blk(0, 2, 2, 3))
                .matmul(&inv);
            for i in 0..2 {
                for j in 0..3 {
                    let slope = curve.at(i, j).diff(0).eval(&origin).unwrap();
                    let expect = gen.coeffs[3 * i + j].eval(&chart_values).unwrap();
                    assert_eq!(slope, expect, "generator {}", gen.name);
                }
            }
        }
    }

    #[test]
    fn prolongation_of_translations_and_scalings() {
        let set = GeneratorSet::new();
        let j1 = j1_vars();
        // U1 translates the base; no other component appears.
        let p = prolong(set.by_name("U1").unwrap());
        assert_eq!(p.coeffs[0], Expr::one(&j1));
        for c in &p.coeffs[1..] {
            assert!(c.is_zero());
        }
        // U3 translates the value of f only.
        let p = prolong(set.by_name("U3").unwrap());
        for (k, c) in p.coeffs.iter().enumerate() {
            assert_eq!(!c.is_zero(), k == 4);
        }
        // L11 rescales u1, u2, f together, so the derivatives of f by v
        // rescale while those by u stay put: the f_p component is f_p.
        let p = prolong(set.by_name("L11").unwrap());
        assert_eq!(p.coeffs[8], Expr::var_id(&j1, 8));
        assert!(p.coeffs[6].is_zero());
    }

    fn linear_pair_residuals(coeffs: &[Expr; 6], vars: &Vars) -> [Expr; 2] {
        // Tangency residuals of the fourfold u3 = v1, v3 = u2: apply the
        // field to u3 - v1 and v3 - u2, then restrict to the fourfold.
        let on_fourfold: HashMap<usize, Expr> = [
            (2usize, Expr::var_id(vars, 3)),
            (5, Expr::var_id(vars, 1)),
        ]
        .into();
        let rf = coeffs[2].sub(&coeffs[3]).subst(&on_fourfold).unwrap();
        let rg = coeffs[5].sub(&coeffs[1]).subst(&on_fourfold).unwrap();
        [rf, rg]
    }

    #[test]
    fn stabiliser_of_the_linear_pair_annihilates_it() {
        let set = GeneratorSet::new();
        let vars = set.vars().clone();
        let two = Rat::from_int(2);
        let stab: [Vec<(&str, Rat)>; 8] = [
            vec![("U1", Rat::one())],
            vec![("V2", Rat::one())],
            vec![("U2", Rat::one()), ("V3", Rat::one())],
            vec![("U3", Rat::one()), ("V1", Rat::one())],
            vec![("X13", Rat::one()), ("X32", two.clone()), ("L12", Rat::one())],
            vec![("X23", Rat::one()), ("X31", two), ("L21", Rat::one())],
            vec![("X11", Rat::one()), ("X22", Rat::one()), ("X33", Rat::one())],
            vec![("X11", Rat::one()), ("X22", -&Rat::one()), ("L11", Rat::one())],
        ];
        for combo in &stab {
            let coeffs = set.combination(combo).unwrap();
            for r in linear_pair_residuals(&coeffs, &vars) {
                assert!(r.is_zero(), "combo {combo:?}");
            }
        }
    }

    #[test]
    fn stabiliser_of_the_linear_pair_has_dimension_eight() {
        // The tangency residuals are linear in the generator, so the
        // stabiliser is the kernel of an exact coefficient matrix.
        let set = GeneratorSet::new();
        let vars = set.vars().clone();
        let rows: Vec<Vec<Expr>> = set
            .spanning()
            .iter()
            .map(|g| linear_pair_residuals(&g.coeffs, &vars).to_vec())
            .collect();
        assert_eq!(24 - coefficient_matrix(&rows).rank(), 8);
    }

    #[test]
    fn rank_is_full_exactly_off_the_degenerate_locus() {
        let mut rng = ChaCha20Rng::seed_from_u64(22);
        let mut full_seen = 0usize;
        while full_seen < 3 {
            let point: [Rat; 14] = std::array::from_fn(|_| rand_rat(&mut rng));
            let first = FirstDerivs {
                f: [
                    point[6].clone(),
                    point[7].clone(),
                    point[8].clone(),
                    point[9].clone(),
                ],
                g: [
                    point[10].clone(),
                    point[11].clone(),
                    point[12].clone(),
                    point[13].clone(),
                ],
            };
            let nondegenerate = !det3(&metric_up(&first)).is_zero();
            assert_eq!(prolonged_generator_rank(&point) == 14, nondegenerate);
            if nondegenerate {
                full_seen += 1;
            }
        }
    }

    #[test]
    fn equal_pair_jets_drop_rank() {
        // Identical first derivatives for f and g make the symbol metric
        // singular, so the orbit must be degenerate there.
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        let mut point: [Rat; 14] = std::array::from_fn(|_| rand_rat(&mut rng));
        for k in 0..4 {
            point[10 + k] = point[6 + k].clone();
        }
        assert!(prolonged_generator_rank(&point) < 14);
    }

    #[test]
    fn zero_jet_of_the_linear_pair_has_full_rank() {
        // u3 = v1, v3 = u2 at the origin: f = v1 gives f_p = 1, g = u2
        // gives g_b = 1, everything else zero.
        let mut point: [Rat; 14] = std::array::from_fn(|_| Rat::zero());
        point[8] = Rat::one();
        point[11] = Rat::one();
        assert_eq!(prolonged_generator_rank(&point), 14);
    }
}
