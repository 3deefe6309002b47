//! Rational functions in canonical form: coprime numerator and denominator
//! with the denominator normalised to leading coefficient 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gcd::poly_gcd;
use super::poly::MPoly;
use super::rat::Rat;
use super::vars::Vars;
use super::ArithError;

/// Rational function over a fixed variable table. Equality of canonical forms
/// decides equality of the functions, so `is_zero` is exact.
#[derive(Clone)]
pub struct Expr {
    vars: Vars,
    num: MPoly,
    den: MPoly,
}

impl Expr {
    pub fn zero(vars: &Vars) -> Self {
        Self {
            vars: vars.clone(),
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        Self {
            vars: vars.clone(),
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, Rat::from_int(n))
    }

    /// Variable by name; errors when the table does not contain it.
    pub fn var(vars: &Vars, name: &str) -> Result<Self, ArithError> {
        let id = vars
            .id(name)
            .ok_or_else(|| ArithError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_id(vars, id))
    }

    pub fn var_id(vars: &Vars, id: usize) -> Self {
        assert!(id < vars.len(), "variable id out of range");
        Self {
            vars: vars.clone(),
            num: MPoly::var(id),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(vars: &Vars, p: MPoly) -> Self {
        Self {
            vars: vars.clone(),
            num: p,
            den: MPoly::one(),
        }
    }

    /// Builds num/den in canonical form; errors on a zero denominator.
    pub fn from_ratio(vars: &Vars, num: MPoly, den: MPoly) -> Result<Self, ArithError> {
        Self::canonical(vars.clone(), num, den)
    }

    fn canonical(vars: Vars, num: MPoly, den: MPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(&vars));
        }
        let g = poly_gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        Ok(Self::monic(vars, num, den))
    }

    /// Rescales so the denominator has leading coefficient 1. Inputs must be
    /// already coprime with a nonzero denominator.
    fn monic(vars: Vars, num: MPoly, den: MPoly) -> Self {
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            return Self { vars, num, den };
        }
        let inv = lc.recip().expect("nonzero leading coefficient");
        Self {
            vars,
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn contains_var(&self, id: usize) -> bool {
        self.num.contains_var(id) || self.den.contains_var(id)
    }

    /// Ids of variables occurring in numerator or denominator.
    pub fn occurring_vars(&self) -> Vec<usize> {
        let mut ids = self.num.occurring_vars();
        ids.extend(self.den.occurring_vars());
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    fn check_same_table(&self, other: &Expr) {
        assert!(
            self.vars.compatible(&other.vars),
            "expression arithmetic requires a shared variable table"
        );
    }

    pub fn add(&self, other: &Expr) -> Expr {
        self.check_same_table(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.num, &self.den);
        let (c, d) = (&other.num, &other.den);
        if b == d {
            let t = a.add(c);
            if t.is_zero() {
                return Expr::zero(&self.vars);
            }
            let h = poly_gcd(&t, b);
            return Expr::monic(
                self.vars.clone(),
                t.exact_div(&h).expect("gcd divides"),
                b.exact_div(&h).expect("gcd divides"),
            );
        }
        let g = poly_gcd(b, d);
        if g.is_one() {
            let num = a.mul(d).add(&c.mul(b));
            if num.is_zero() {
                return Expr::zero(&self.vars);
            }
            return Expr::monic(self.vars.clone(), num, b.mul(d));
        }
        let b1 = b.exact_div(&g).expect("gcd divides");
        let d1 = d.exact_div(&g).expect("gcd divides");
        let t = a.mul(&d1).add(&c.mul(&b1));
        if t.is_zero() {
            return Expr::zero(&self.vars);
        }
        let h = poly_gcd(&t, &g);
        let num = t.exact_div(&h).expect("gcd divides");
        let den = b1
            .mul(&d1)
            .mul(&g.exact_div(&h).expect("gcd divides"));
        Expr::monic(self.vars.clone(), num, den)
    }

    pub fn neg(&self) -> Expr {
        Expr {
            vars: self.vars.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        self.check_same_table(other);
        if self.is_zero() || other.is_zero() {
            return Expr::zero(&self.vars);
        }
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let num = self
            .num
            .exact_div(&g1)
            .expect("gcd divides")
            .mul(&other.num.exact_div(&g2).expect("gcd divides"));
        let den = self
            .den
            .exact_div(&g2)
            .expect("gcd divides")
            .mul(&other.den.exact_div(&g1).expect("gcd divides"));
        Expr::monic(self.vars.clone(), num, den)
    }

    pub fn recip(&self) -> Result<Expr, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Expr::monic(
            self.vars.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr, ArithError> {
        self.check_same_table(other);
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power; negative exponents invert, so they fail on zero.
    pub fn pow(&self, e: i64) -> Result<Expr, ArithError> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut acc = Expr::one(&self.vars);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Expr::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Expr::mul(&base, &base);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rat) -> Expr {
        if c.is_zero() {
            return Expr::zero(&self.vars);
        }
        Expr {
            vars: self.vars.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Partial derivative by variable id, via the quotient rule. The
    /// denominator of (n/u)' divides u * u/gcd(u, u'), which keeps repeated
    /// derivatives of reduced fractions from squaring u every time.
    pub fn diff(&self, id: usize) -> Expr {
        if !self.contains_var(id) {
            return Expr::zero(&self.vars);
        }
        let dn = self.num.diff(id);
        let dd = self.den.diff(id);
        if dd.is_zero() {
            return Expr::canonical(self.vars.clone(), dn, self.den.clone())
                .expect("nonzero denominator");
        }
        let w = poly_gcd(&self.den, &dd);
        let u1 = self.den.exact_div(&w).expect("gcd divides");
        let num = dn.mul(&u1).sub(
            &self
                .num
                .mul(&dd.exact_div(&w).expect("gcd divides")),
        );
        let den = self.den.mul(&u1);
        Expr::canonical(self.vars.clone(), num, den).expect("nonzero denominator")
    }

    pub fn diff_name(&self, name: &str) -> Result<Expr, ArithError> {
        let id = self
            .vars
            .id(name)
            .ok_or_else(|| ArithError::UnknownVariable(name.to_string()))?;
        Ok(self.diff(id))
    }

    /// Evaluates at a full assignment of rational values (by variable id).
    pub fn eval(&self, values: &HashMap<usize, Rat>) -> Result<Rat, ArithError> {
        for id in self.occurring_vars() {
            if !values.contains_key(&id) {
                return Err(ArithError::UnknownVariable(self.vars.name(id).to_string()));
            }
        }
        let n = self.num.eval(values).expect("all variables bound");
        let d = self.den.eval(values).expect("all variables bound");
        n.checked_div(&d)
    }

    /// Substitutes rational values for a subset of variables; errors when the
    /// denominator vanishes identically after substitution.
    pub fn eval_partial(&self, values: &HashMap<usize, Rat>) -> Result<Expr, ArithError> {
        Expr::canonical(
            self.vars.clone(),
            self.num.eval_partial(values),
            self.den.eval_partial(values),
        )
    }

    /// Substitutes expressions over a possibly different table for every
    /// occurring variable. Unmapped variables are an error.
    pub fn subst_into(
        &self,
        target: &Vars,
        map: &HashMap<usize, Expr>,
    ) -> Result<Expr, ArithError> {
        let lookup = |id: usize| -> Result<Expr, ArithError> {
            map.get(&id)
                .cloned()
                .ok_or_else(|| ArithError::UnknownVariable(self.vars.name(id).to_string()))
        };
        let n = poly_subst(&self.num, target, &lookup)?;
        let d = poly_subst(&self.den, target, &lookup)?;
        n.checked_div(&d)
    }

    /// Substitutes same-table expressions; unmapped variables stay themselves.
    pub fn subst(&self, map: &HashMap<usize, Expr>) -> Result<Expr, ArithError> {
        let lookup = |id: usize| -> Result<Expr, ArithError> {
            Ok(match map.get(&id) {
                Some(e) => {
                    assert!(
                        e.vars.compatible(&self.vars),
                        "substitution images must share the variable table"
                    );
                    e.clone()
                }
                None => Expr::var_id(&self.vars, id),
            })
        };
        let n = poly_subst(&self.num, &self.vars, &lookup)?;
        let d = poly_subst(&self.den, &self.vars, &lookup)?;
        n.checked_div(&d)
    }
}

fn poly_subst(
    p: &MPoly,
    target: &Vars,
    lookup: &dyn Fn(usize) -> Result<Expr, ArithError>,
) -> Result<Expr, ArithError> {
    let mut powers: HashMap<(usize, u32), Expr> = HashMap::new();
    let mut acc = Expr::zero(target);
    for (m, c) in p.terms() {
        let mut term = Expr::constant(target, c.clone());
        for &(v, e) in m.pairs() {
            let key = (v as usize, e);
            let pw = match powers.get(&key) {
                Some(pw) => pw.clone(),
                None => {
                    let pw = lookup(v as usize)?
                        .pow(e as i64)
                        .expect("positive exponent");
                    powers.insert(key, pw.clone());
                    pw
                }
            };
            term = Expr::mul(&term, &pw);
        }
        acc = Expr::add(&acc, &term);
    }
    Ok(acc)
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.vars.compatible(&other.vars) && self.num == other.num && self.den == other.den
    }
}

impl Eq for Expr {}

macro_rules! forward_expr_binop {
    ($trait:ident, $method:ident, $imp:path) => {
        impl $trait for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $imp(self, rhs)
            }
        }
        impl $trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                $imp(&self, rhs)
            }
        }
        impl $trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                $imp(self, &rhs)
            }
        }
    };
}

fn div_impl(a: &Expr, b: &Expr) -> Expr {
    a.checked_div(b)
        .expect("division by zero expression; use checked_div for fallible paths")
}

forward_expr_binop!(Add, add, Expr::add);
forward_expr_binop!(Sub, sub, Expr::sub);
forward_expr_binop!(Mul, mul, Expr::mul);
forward_expr_binop!(Div, div, div_impl);

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

/// Renders a polynomial with explicit `*` and `^` so the output parses back.
pub(crate) fn poly_to_string(p: &MPoly, vars: &Vars) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || m.is_one() {
            factors.push(mag.to_string());
        }
        for &(v, e) in m.pairs() {
            let name = vars.name(v as usize);
            if e == 1 {
                factors.push(name.to_string());
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = poly_to_string(&self.num, &self.vars);
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let d = poly_to_string(&self.den, &self.vars);
        write!(f, "({n})/({d})")
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}
