//! Sparse monomials ordered by graded lexicographic order on the table index.

use std::cmp::Ordering;

/// Exponent vector stored sparsely as (variable id, exponent) pairs, sorted by
/// id, with all exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    pairs: Vec<(u32, u32)>,
}

impl Mono {
    pub fn one() -> Self {
        Self { pairs: Vec::new() }
    }

    pub fn var(id: usize) -> Self {
        Self {
            pairs: vec![(id as u32, 1)],
        }
    }

    pub fn from_pairs(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable_by_key(|&(v, _)| v);
        for w in pairs.windows(2) {
            debug_assert!(w[0].0 != w[1].0, "duplicate variable in monomial");
        }
        Self { pairs }
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn deg_of(&self, id: usize) -> u32 {
        let id = id as u32;
        self.pairs
            .iter()
            .find(|&&(v, _)| v == id)
            .map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() && j < other.pairs.len() {
            let (va, ea) = self.pairs[i];
            let (vb, eb) = other.pairs[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    pairs.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    pairs.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    pairs.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        pairs.extend_from_slice(&self.pairs[i..]);
        pairs.extend_from_slice(&other.pairs[j..]);
        Mono { pairs }
    }

    /// Exact division self / other; None when some exponent would go negative.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut pairs = Vec::with_capacity(self.pairs.len());
        let mut j = 0;
        for &(v, e) in &self.pairs {
            let mut e = e;
            while j < other.pairs.len() && other.pairs[j].0 < v {
                return None; // divisor has a variable we lack
            }
            if j < other.pairs.len() && other.pairs[j].0 == v {
                let eb = other.pairs[j].1;
                if eb > e {
                    return None;
                }
                e -= eb;
                j += 1;
            }
            if e > 0 {
                pairs.push((v, e));
            }
        }
        if j < other.pairs.len() {
            return None;
        }
        Some(Mono { pairs })
    }

    pub fn pow(&self, k: u32) -> Mono {
        if k == 0 {
            return Mono::one();
        }
        Mono {
            pairs: self.pairs.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut pairs = Vec::new();
        let mut j = 0;
        for &(v, e) in &self.pairs {
            while j < other.pairs.len() && other.pairs[j].0 < v {
                j += 1;
            }
            if j < other.pairs.len() && other.pairs[j].0 == v {
                pairs.push((v, e.min(other.pairs[j].1)));
            }
        }
        Mono { pairs }
    }

    /// Restriction to a variable subset and its complement: (inside, outside).
    pub fn split(&self, in_set: impl Fn(usize) -> bool) -> (Mono, Mono) {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for &(v, e) in &self.pairs {
            if in_set(v as usize) {
                inside.push((v, e));
            } else {
                outside.push((v, e));
            }
        }
        (Mono { pairs: inside }, Mono { pairs: outside })
    }

    /// Graded lexicographic comparison: total degree first, then lexicographic
    /// on exponents read in table order (a missing variable counts as 0).
    pub fn cmp_grlex(&self, other: &Mono) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.pairs.get(i), other.pairs.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // Earlier variable present only on one side: that side has a
                    // larger exponent at the first differing position.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u32)]) -> Mono {
        Mono::from_pairs(pairs.to_vec())
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        // Over (a, b, p): p^3 > a*b (degree), a^2 > a*b > b^2 (lex at equal degree).
        assert_eq!(m(&[(2, 3)]).cmp_grlex(&m(&[(0, 1), (1, 1)])), Ordering::Greater);
        assert_eq!(m(&[(0, 2)]).cmp_grlex(&m(&[(0, 1), (1, 1)])), Ordering::Greater);
        assert_eq!(m(&[(0, 1), (1, 1)]).cmp_grlex(&m(&[(1, 2)])), Ordering::Greater);
        assert_eq!(m(&[(0, 1)]).cmp_grlex(&m(&[(0, 1)])), Ordering::Equal);
    }

    #[test]
    fn division_and_multiplication_invert() {
        let ab2 = m(&[(0, 1), (1, 2)]);
        let b = m(&[(1, 1)]);
        let q = ab2.try_div(&b).unwrap();
        assert_eq!(q.mul(&b), ab2);
        assert!(b.try_div(&ab2).is_none());
        assert!(ab2.try_div(&m(&[(2, 1)])).is_none());
    }
}
