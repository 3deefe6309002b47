//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::mono::Mono;
use super::rat::Rat;

/// Polynomial as a term list sorted descending under graded lex order, with no
/// zero coefficients. Variable ids refer to some external `Vars` table; the
/// polynomial itself only stores indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: Vec<(Mono, Rat)>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![(Mono::one(), c)],
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn var(id: usize) -> Self {
        Self {
            terms: vec![(Mono::var(id), Rat::one())],
        }
    }

    pub fn monomial(m: Mono, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: vec![(m, c)] }
    }

    /// Canonicalises an arbitrary term list (merges duplicates, drops zeros).
    pub fn from_terms(terms: Vec<(Mono, Rat)>) -> Self {
        let mut map: HashMap<Mono, Rat> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&m) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::collect(map)
    }

    fn collect(map: HashMap<Mono, Rat>) -> Self {
        let mut terms: Vec<(Mono, Rat)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0));
        Self { terms }
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under graded lex order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn deg_in(&self, id: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg_of(id)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, id: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.deg_of(id) > 0)
    }

    /// Ids of all variables that occur with positive exponent.
    pub fn occurring_vars(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.terms.iter().flat_map(|(m, _)| m.vars()).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        // Merge two descending-sorted term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_grlex(mb) {
                Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(other.terms[j..].iter().cloned());
        MPoly { terms }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_mono(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_mono(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Mono, Rat> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(acc) => *acc = &*acc + &c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        Self::collect(map)
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to one variable.
    pub fn diff(&self, id: usize) -> MPoly {
        let id32 = id as u32;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.deg_of(id);
            if e == 0 {
                continue;
            }
            let pairs: Vec<(u32, u32)> = m
                .pairs()
                .iter()
                .map(|&(v, ex)| if v == id32 { (v, ex - 1) } else { (v, ex) })
                .collect();
            terms.push((Mono::from_pairs(pairs), c * &Rat::from_int(e as i64)));
        }
        MPoly::from_terms(terms)
    }

    /// Substitutes rational values for a subset of variables.
    pub fn eval_partial(&self, values: &HashMap<usize, Rat>) -> MPoly {
        if values.is_empty() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut pairs = Vec::new();
            for &(v, e) in m.pairs() {
                match values.get(&(v as usize)) {
                    Some(val) => {
                        coeff = &coeff * &val.pow(e as i64).expect("positive exponent");
                        if coeff.is_zero() {
                            break;
                        }
                    }
                    None => pairs.push((v, e)),
                }
            }
            if !coeff.is_zero() {
                terms.push((Mono::from_pairs(pairs), coeff));
            }
        }
        MPoly::from_terms(terms)
    }

    /// Full evaluation; all occurring variables must be bound.
    pub fn eval(&self, values: &HashMap<usize, Rat>) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let val = values.get(&(v as usize))?;
                t = &t * &val.pow(e as i64).expect("positive exponent");
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// Groups terms by their monomial part over `in_set` variables; the values
    /// are the cofactor polynomials in the remaining variables.
    pub fn group_by(&self, in_set: impl Fn(usize) -> bool) -> HashMap<Mono, MPoly> {
        let mut out: HashMap<Mono, Vec<(Mono, Rat)>> = HashMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(&in_set);
            out.entry(inside).or_default().push((outside, c.clone()));
        }
        out.into_iter()
            .map(|(k, v)| (k, MPoly::from_terms(v)))
            .collect()
    }

    /// Coefficients with respect to one variable: index k holds the (poly)
    /// coefficient of x^k. Length = deg_in(x) + 1; zero polynomial gives [0].
    pub fn coeffs_wrt(&self, id: usize) -> Vec<MPoly> {
        let d = self.deg_in(id) as usize;
        let id32 = id as u32;
        let mut out = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.deg_of(id) as usize;
            let rest: Vec<(u32, u32)> = m
                .pairs()
                .iter()
                .filter(|&&(v, _)| v != id32)
                .copied()
                .collect();
            out[e].push((Mono::from_pairs(rest), c.clone()));
        }
        out.into_iter().map(MPoly::from_terms).collect()
    }

    /// Rebuilds a polynomial from coefficients wrt one variable.
    pub fn from_coeffs_wrt(id: usize, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let xk = MPoly::monomial(Mono::var(id).pow(k as u32), Rat::one());
            acc = acc.add(&c.mul(&xk));
        }
        acc
    }

    /// Positive rational content: gcd of coefficient numerators over lcm of
    /// denominators. Zero polynomial has content 0.
    pub fn content(&self) -> Rat {
        let mut acc = Rat::zero();
        for (_, c) in &self.terms {
            acc = acc.content_gcd(c);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Divides all coefficients by the content and fixes the leading sign to be
    /// positive. Returns (primitive part, content-with-sign) with
    /// self = content * primitive.
    pub fn primitive(&self) -> (MPoly, Rat) {
        if self.is_zero() {
            return (MPoly::zero(), Rat::zero());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -&c;
        }
        let inv = c.recip().expect("nonzero content");
        (self.scale(&inv), c)
    }

    /// Exact multivariate division; None when the division leaves a remainder.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip().ok()?));
        }
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut q_terms = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero remainder");
            let m = rm.try_div(dm)?;
            let c = rc / dc;
            q_terms.push((m.clone(), c.clone()));
            rem = rem.sub(&d.mul_mono(&m, &c));
        }
        Some(MPoly { terms: { q_terms.sort_unstable_by(|a, b| b.0.cmp_grlex(&a.0)); q_terms } })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(id: usize) -> MPoly {
        MPoly::var(id)
    }

    #[test]
    fn arithmetic_roundtrip() {
        // (a + b)^2 = a^2 + 2ab + b^2 over table (a, b).
        let a = var(0);
        let b = var(1);
        let s = a.add(&b);
        let sq = s.mul(&s);
        let expect = a
            .mul(&a)
            .add(&a.mul(&b).scale(&Rat::from_int(2)))
            .add(&b.mul(&b));
        assert_eq!(sq, expect);
        assert!(sq.sub(&expect).is_zero());
        assert_eq!(s.pow(2), sq);
    }

    #[test]
    fn leading_term_follows_grlex() {
        // p^3 + a*b over (a, b, p): leading is p^3.
        let p = var(2);
        let f = p.pow(3).add(&var(0).mul(&var(1)));
        let (m, c) = f.leading().unwrap();
        assert_eq!(m.deg_of(2), 3);
        assert!(c.is_one());
    }

    #[test]
    fn differentiation() {
        // d/da (a^2 b + 3a) = 2ab + 3.
        let f = var(0)
            .pow(2)
            .mul(&var(1))
            .add(&var(0).scale(&Rat::from_int(3)));
        let df = f.diff(0);
        let expect = var(0)
            .mul(&var(1))
            .scale(&Rat::from_int(2))
            .add(&MPoly::constant(Rat::from_int(3)));
        assert_eq!(df, expect);
        assert!(f.diff(2).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = var(0);
        let b = var(1);
        let f = a.add(&b).mul(&a.sub(&b)); // a^2 - b^2
        assert_eq!(f.exact_div(&a.add(&b)).unwrap(), a.sub(&b));
        assert!(f.exact_div(&a.add(&MPoly::one())).is_none());
    }

    #[test]
    fn primitive_part_and_content() {
        // -6a + 9b has content -3 once the leading sign is folded in.
        let f = var(0)
            .scale(&Rat::from_int(-6))
            .add(&var(1).scale(&Rat::from_int(9)));
        let (pp, c) = f.primitive();
        assert_eq!(c, Rat::from_int(-3));
        assert_eq!(pp.scale(&c), f);
        assert!(pp.leading().unwrap().1 > &Rat::zero());
    }

    #[test]
    fn partial_evaluation() {
        // f = a^2 p + b at a = 2 -> 4p + b.
        let f = var(0).pow(2).mul(&var(2)).add(&var(1));
        let mut vals = HashMap::new();
        vals.insert(0usize, Rat::from_int(2));
        let g = f.eval_partial(&vals);
        let expect = var(2).scale(&Rat::from_int(4)).add(&var(1));
        assert_eq!(g, expect);
    }
}
