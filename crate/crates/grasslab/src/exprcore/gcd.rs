//! Multivariate polynomial gcd. Cheap layers run first: monomial-content
//! stripping, exact-division probes, and a modular univariate image that
//! proves most gcds trivial; only genuine common factors reach the
//! subresultant remainder sequence.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::mono::Mono;
use super::poly::MPoly;
use super::rat::Rat;

thread_local! {
    static GCD_CACHE: RefCell<(usize, HashMap<MPoly, HashMap<MPoly, MPoly>>)> =
        RefCell::new((0, HashMap::new()));
    static GCD_STATS: RefCell<GcdStats> = RefCell::new(GcdStats::default());
}

/// Operation counters for performance diagnosis; read with [`gcd_stats`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GcdStats {
    pub calls: u64,
    pub cache_hits: u64,
    pub image_trivial: u64,
    pub power_path: u64,
    pub prs_runs: u64,
    pub early_exit: u64,
    pub prs_nanos: u64,
    pub content_nanos: u64,
}

pub fn gcd_stats() -> GcdStats {
    GCD_STATS.with(|s| *s.borrow())
}

pub fn reset_gcd_stats() {
    GCD_STATS.with(|s| *s.borrow_mut() = GcdStats::default());
}

fn bump(f: impl Fn(&mut GcdStats)) {
    GCD_STATS.with(|s| f(&mut s.borrow_mut()));
}

/// Greatest common divisor, normalised to have rational content 1 and a
/// positive leading coefficient. gcd(0, 0) = 0; constants give 1.
pub fn poly_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return normalise(g);
    }
    if g.is_zero() {
        return normalise(f);
    }
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return MPoly::one();
    }
    if f == g {
        return normalise(f);
    }
    if f.num_terms() == 1 || g.num_terms() == 1 {
        // A single term strips to a unit, so only the monomial part remains.
        let m = monomial_content(f).gcd(&monomial_content(g));
        return MPoly::monomial(m, Rat::one());
    }
    bump(|s| s.calls += 1);
    let cached = GCD_CACHE.with(|c| {
        c.borrow()
            .1
            .get(f)
            .and_then(|inner| inner.get(g))
            .cloned()
    });
    if let Some(hit) = cached {
        bump(|s| s.cache_hits += 1);
        return hit;
    }
    let out = gcd_inner(f, g);
    GCD_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.0 > 20_000 {
            c.1.clear();
            c.0 = 0;
        }
        c.1.entry(f.clone())
            .or_default()
            .insert(g.clone(), out.clone());
        c.1.entry(g.clone())
            .or_default()
            .insert(f.clone(), out.clone());
        c.0 += 2;
    });
    out
}

/// Folds [`poly_gcd`] over a sequence; empty input gives 0.
pub fn poly_gcd_many<'a>(polys: impl IntoIterator<Item = &'a MPoly>) -> MPoly {
    let mut acc = MPoly::zero();
    for p in polys {
        acc = poly_gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn normalise(p: &MPoly) -> MPoly {
    p.primitive().0
}

/// Componentwise-minimum monomial dividing every term.
fn monomial_content(p: &MPoly) -> Mono {
    let mut terms = p.terms().iter();
    let Some((first, _)) = terms.next() else {
        return Mono::one();
    };
    let mut acc = first.clone();
    for (m, _) in terms {
        if acc.is_one() {
            break;
        }
        acc = acc.gcd(m);
    }
    acc
}

fn div_mono(p: &MPoly, m: &Mono) -> MPoly {
    if m.is_one() {
        return p.clone();
    }
    MPoly::from_terms(
        p.terms()
            .iter()
            .map(|(mo, c)| (mo.try_div(m).expect("monomial content divides"), c.clone()))
            .collect(),
    )
}

fn gcd_inner(f: &MPoly, g: &MPoly) -> MPoly {
    let mf = monomial_content(f);
    let mg = monomial_content(g);
    let common = mf.gcd(&mg);
    let f1 = div_mono(f, &mf);
    let g1 = div_mono(g, &mg);
    let rest = gcd_stripped(&f1, &g1);
    if common.is_one() {
        rest
    } else {
        rest.mul_mono(&common, &Rat::one())
    }
}

/// Gcd of two nonconstant polynomials with trivial monomial content.
fn gcd_stripped(f: &MPoly, g: &MPoly) -> MPoly {
    if f.as_constant().is_some() || g.as_constant().is_some() {
        return MPoly::one();
    }
    if f == g {
        return normalise(f);
    }
    // When one input divides the other it already is the gcd.
    if f.total_degree() >= g.total_degree() {
        if f.exact_div(g).is_some() {
            return normalise(g);
        }
    } else if g.exact_div(f).is_some() {
        return normalise(f);
    }

    // Main variable: shared, with the smallest degree bound to shorten the
    // remainder sequence. Disjoint supports force a constant gcd.
    let fv = f.occurring_vars();
    let gv = g.occurring_vars();
    let shared: Vec<usize> = fv.iter().copied().filter(|v| gv.contains(v)).collect();
    let Some(&x) = shared
        .iter()
        .min_by_key(|&&v| f.deg_in(v).max(g.deg_in(v)))
    else {
        return MPoly::one();
    };

    // Denominator powers are the common hard case: when one side is a small
    // perfect power c * s^k of a squarefree s, peel the factors of s out of
    // the big side with short remainder sequences instead of a full one.
    if let Some(out) = gcd_against_power(f, g, x).or_else(|| gcd_against_power(g, f, x)) {
        bump(|s| s.power_path += 1);
        return out;
    }

    let fc = f.coeffs_wrt(x);
    let gc = g.coeffs_wrt(x);
    let hint = modular_gcd_degree(x, f, g);
    if hint == Some(0) {
        bump(|s| s.image_trivial += 1);
        // deg_x(gcd) = 0, so only the contents in x can contribute.
        let const_coeff = |cs: &[MPoly]| {
            cs.iter()
                .any(|c| !c.is_zero() && c.as_constant().is_some())
        };
        if const_coeff(&fc) || const_coeff(&gc) {
            return MPoly::one();
        }
        let cont_f = content_of(&fc);
        if cont_f.is_one() {
            return MPoly::one();
        }
        let cont_g = content_of(&gc);
        return poly_gcd(&cont_f, &cont_g);
    }

    let t0 = std::time::Instant::now();
    let cont_f = content_of(&fc);
    let cont_g = content_of(&gc);
    let c = poly_gcd(&cont_f, &cont_g);
    bump(|s| s.content_nanos += t0.elapsed().as_nanos() as u64);
    let pp_f: Vec<MPoly> = fc
        .iter()
        .map(|p| p.exact_div(&cont_f).expect("content divides"))
        .collect();
    let pp_g: Vec<MPoly> = gc
        .iter()
        .map(|p| p.exact_div(&cont_g).expect("content divides"))
        .collect();

    let t0 = std::time::Instant::now();
    bump(|s| s.prs_runs += 1);
    let prs = match primitive_prs_last(pp_f, pp_g, x, hint, f, g) {
        PrsOut::Verified(cand) => {
            bump(|s| {
                s.prs_nanos += t0.elapsed().as_nanos() as u64;
                s.early_exit += 1;
            });
            return normalise(&c.mul(&cand));
        }
        PrsOut::Last(prs) => prs,
    };
    bump(|s| s.prs_nanos += t0.elapsed().as_nanos() as u64);
    let wrt_x = if prs.len() <= 1 {
        // Last nonzero remainder is a constant in x: coprime primitive parts.
        MPoly::one()
    } else {
        // Every remainder in the sequence is kept primitive, so assembling
        // the coefficient list is all that is left.
        normalise(&MPoly::from_coeffs_wrt(x, &prs))
    };
    normalise(&c.mul(&wrt_x))
}

/// Polynomial content of a coefficient list, folded smallest-first so every
/// gcd in the chain has one small operand and the accumulator only shrinks.
fn content_of(coeffs: &[MPoly]) -> MPoly {
    let mut order: Vec<&MPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    order.sort_by_key(|c| c.num_terms());
    let mut acc = MPoly::zero();
    for p in order {
        acc = poly_gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Handles gcd(big, c * s^k) with s squarefree and small: factors common to
/// big and s are extracted one multiplicity layer at a time, so no remainder
/// sequence ever runs on the big operand for more than deg(s) steps.
/// Returns None when `small` is not a perfect power of its squarefree part.
fn gcd_against_power(big: &MPoly, small: &MPoly, x: usize) -> Option<MPoly> {
    const SMALL_TERMS: usize = 48;
    if small.num_terms() > SMALL_TERMS || small.num_terms() * 2 > big.num_terms() {
        return None;
    }
    let (s, k) = perfect_power_decomposition(small, x)?;
    if k <= 1 {
        return None;
    }
    let mut acc = MPoly::one();
    let mut rest = normalise(big);
    let mut live = normalise(&s);
    for _ in 0..k {
        if live.as_constant().is_some() {
            break;
        }
        let h = poly_gcd(&rest, &live);
        if h.is_one() {
            break;
        }
        rest = rest.exact_div(&h).expect("gcd divides");
        rest = normalise(&rest);
        acc = acc.mul(&h);
        live = h;
    }
    Some(normalise(&acc))
}

/// Writes p as c * s^k with s the squarefree part taken along x, verifying
/// the power by repeated division. None when p is not such a power.
fn perfect_power_decomposition(p: &MPoly, x: usize) -> Option<(MPoly, u32)> {
    let dx = p.deg_in(x);
    if dx == 0 {
        return None;
    }
    let d = p.diff(x);
    let w = poly_gcd(p, &d);
    if w.as_constant().is_some() {
        // p already squarefree in x: a power only with k = 1.
        return Some((normalise(p), 1));
    }
    let s = normalise(&p.exact_div(&w)?);
    let ds = s.deg_in(x);
    if ds == 0 || dx % ds != 0 {
        return None;
    }
    let k = dx / ds;
    let mut rest = normalise(p);
    for _ in 0..k {
        rest = normalise(&rest.exact_div(&s)?);
    }
    if rest.as_constant().is_some() {
        Some((s, k))
    } else {
        None
    }
}

// --- modular univariate images -------------------------------------------

// 2^64 - 2^32 + 1 and the largest 64-bit prime.
const IMAGE_PRIMES: [u64; 2] = [0xFFFF_FFFF_0000_0001, 0xFFFF_FFFF_FFFF_FFC5];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn big_mod(n: &num_bigint::BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    n.mod_floor(&num_bigint::BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Rational coefficient reduced mod p; None when the denominator vanishes.
fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let d = big_mod(r.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(big_mod(r.numer(), p), inv_mod(d, p), p))
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

/// Dense coefficient list of the univariate image of `f` in `x` with every
/// other variable evaluated at the assigned point, mod p. None when a
/// coefficient denominator reduces to zero.
fn univar_image(
    f: &MPoly,
    x: usize,
    assign: &HashMap<usize, u64>,
    p: u64,
) -> Option<Vec<u64>> {
    let dx = f.deg_in(x) as usize;
    let mut out = vec![0u64; dx + 1];
    for (m, c) in f.terms() {
        let mut v = rat_mod(c, p)?;
        let mut e_x = 0usize;
        for &(var, e) in m.pairs() {
            let var = var as usize;
            if var == x {
                e_x = e as usize;
            } else {
                v = mul_mod(v, pow_mod(assign[&var], e as u64, p), p);
            }
        }
        out[e_x] = add_mod(out[e_x], v, p);
    }
    Some(out)
}

fn trim_u(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of gcd of two dense univariate polynomials over F_p.
fn uni_gcd_deg(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim_u(&mut a);
    trim_u(&mut b);
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let k = mul_mod(a[da], inv, p);
            for i in 0..=db {
                let idx = da - db + i;
                a[idx] = sub_mod(a[idx], mul_mod(k, b[i], p), p);
            }
            trim_u(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        0
    } else {
        a.len() - 1
    }
}

/// Upper bound for deg_x(gcd(f, g)) from univariate modular images: when
/// both leading coefficients survive an evaluation, the image of any common
/// factor keeps its x-degree, so the image gcd degree bounds the true one
/// from above. Zero is therefore an exact answer; positive values are hints
/// that are tight except at unlucky points. None when every evaluation was
/// inconclusive (vanishing leading term, denominator hitting the prime).
fn modular_gcd_degree(x: usize, f: &MPoly, g: &MPoly) -> Option<usize> {
    let mut vars: Vec<usize> = f.occurring_vars();
    for v in g.occurring_vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let mut best: Option<usize> = None;
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    for attempt in 0..4u64 {
        let p = IMAGE_PRIMES[(attempt as usize) / 2];
        state ^= attempt.wrapping_mul(0xD1B5_4A32_D192_ED03);
        let mut assign = HashMap::new();
        for &v in &vars {
            if v != x {
                assign.insert(v, 2 + xorshift(&mut state) % (p - 3));
            }
        }
        let (Some(fa), Some(ga)) = (
            univar_image(f, x, &assign, p),
            univar_image(g, x, &assign, p),
        ) else {
            continue;
        };
        // Leading coefficients must survive the evaluation.
        if fa.last() == Some(&0) || ga.last() == Some(&0) {
            continue;
        }
        let d = uni_gcd_deg(fa, ga, p);
        best = Some(best.map_or(d, |b: usize| b.min(d)));
        if d == 0 {
            break;
        }
    }
    best
}

/// Degree of a dense coefficient list after trimming; None for the zero
/// polynomial.
fn deg(p: &[MPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(mut p: Vec<MPoly>) -> Vec<MPoly> {
    match deg(&p) {
        Some(d) => {
            p.truncate(d + 1);
            p
        }
        None => Vec::new(),
    }
}

fn scale_coeffs(p: &[MPoly], k: &MPoly) -> Vec<MPoly> {
    p.iter().map(|c| c.mul(k)).collect()
}

fn div_coeffs(p: &[MPoly], k: &MPoly) -> Vec<MPoly> {
    p.iter()
        .map(|c| c.exact_div(k).expect("exact coefficient division"))
        .collect()
}

fn sub_coeffs(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let n = a.len().max(b.len());
    let zero = MPoly::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y));
    }
    trim(out)
}

/// Pseudo-remainder of a modulo b, up to a power of lc(b): the formal
/// lc(b)^(deg a - deg b + 1) scaling is dropped because the caller strips
/// content from the result anyway.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = deg(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = a.to_vec();
    loop {
        let Some(dr) = deg(&r) else { break };
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        // r := lb * r - lr * x^(dr-db) * b
        let mut shifted = vec![MPoly::zero(); dr - db];
        shifted.extend(scale_coeffs(b, &lr));
        r = sub_coeffs(&scale_coeffs(&r, lb), &shifted);
    }
    trim(r)
}

enum PrsOut {
    /// Gcd confirmed by exact division into both inputs; primitive in x.
    Verified(MPoly),
    /// Last nonzero remainder of the full sequence, as a coefficient list.
    Last(Vec<MPoly>),
}

/// Divides a remainder by its full content, polynomial and rational, giving
/// the smallest representative of its class in the sequence.
fn strip_content(r: Vec<MPoly>) -> Vec<MPoly> {
    let cont = content_of(&r);
    let r = if cont.as_constant().is_some() {
        r
    } else {
        div_coeffs(&r, &cont)
    };
    let mut rc = Rat::zero();
    for c in &r {
        rc = rc.content_gcd(&c.content());
        if rc.is_one() {
            return r;
        }
    }
    let Ok(inv) = rc.recip() else { return r };
    r.iter().map(|c| c.scale(&inv)).collect()
}

/// Runs a primitive pseudo-remainder sequence on nonzero primitive inputs,
/// stripping the full coefficient content after every step; subresultant
/// divisors are cheaper per step but let sparse multivariate remainders
/// swell without bound. When a remainder reaches `target` (the modular
/// degree bound for the gcd) it is checked by division into `vf` and `vg`;
/// success skips the tail of the sequence, whose pseudo-remainders are the
/// most expensive and only confirm what the division already proved.
fn primitive_prs_last(
    a: Vec<MPoly>,
    b: Vec<MPoly>,
    x: usize,
    target: Option<usize>,
    vf: &MPoly,
    vg: &MPoly,
) -> PrsOut {
    let (mut f1, mut f2) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let verify = |f2: &[MPoly]| -> Option<MPoly> {
        if target? != deg(f2)? || target? == 0 {
            return None;
        }
        // Remainders stay primitive, so the list assembles directly.
        let cand = normalise(&MPoly::from_coeffs_wrt(x, f2));
        (vf.exact_div(&cand).is_some() && vg.exact_div(&cand).is_some()).then_some(cand)
    };
    if let Some(cand) = verify(&f2) {
        return PrsOut::Verified(cand);
    }
    loop {
        let r = prem(&f1, &f2);
        if deg(&r).is_none() {
            return PrsOut::Last(f2);
        }
        f1 = f2;
        f2 = strip_content(r);
        if let Some(cand) = verify(&f2) {
            return PrsOut::Verified(cand);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(id: usize) -> MPoly {
        MPoly::var(id)
    }

    #[test]
    fn shared_linear_factor() {
        // gcd(a^2 - b^2, a^2 + 2ab + b^2) = a + b.
        let a = var(0);
        let b = var(1);
        let s = a.add(&b);
        let f = a.mul(&a).sub(&b.mul(&b));
        let g = s.mul(&s);
        assert_eq!(poly_gcd(&f, &g), s);
    }

    #[test]
    fn factor_through_different_cofactors() {
        // gcd((a+b)p, (a+b)q) = a + b with p, q independent variables.
        let s = var(0).add(&var(1));
        let f = s.mul(&var(2));
        let g = s.mul(&var(3));
        assert_eq!(poly_gcd(&f, &g), s);
    }

    #[test]
    fn univariate_cyclotomic() {
        // gcd(x^4 - 1, x^6 - 1) = x^2 - 1.
        let x = var(0);
        let one = MPoly::one();
        let f = x.pow(4).sub(&one);
        let g = x.pow(6).sub(&one);
        assert_eq!(poly_gcd(&f, &g), x.pow(2).sub(&one));
    }

    #[test]
    fn coprime_dense_univariates() {
        // Classic coefficient-growth stress pair with gcd 1.
        let x = var(0);
        let c = |k: i64| MPoly::constant(Rat::from_int(k));
        let f = x
            .pow(8)
            .add(&x.pow(6))
            .sub(&x.pow(4).scale(&Rat::from_int(3)))
            .sub(&x.pow(3).scale(&Rat::from_int(3)))
            .add(&x.pow(2).scale(&Rat::from_int(8)))
            .add(&x.scale(&Rat::from_int(2)))
            .sub(&c(5));
        let g = x
            .pow(6)
            .scale(&Rat::from_int(3))
            .add(&x.pow(4).scale(&Rat::from_int(5)))
            .sub(&x.pow(2).scale(&Rat::from_int(4)))
            .sub(&x.scale(&Rat::from_int(9)))
            .add(&c(21));
        assert!(poly_gcd(&f, &g).is_one());
    }

    #[test]
    fn disjoint_supports_are_coprime() {
        let f = var(0).pow(2).add(&MPoly::one());
        let g = var(1).pow(3).sub(&MPoly::one());
        assert!(poly_gcd(&f, &g).is_one());
    }

    #[test]
    fn zero_and_constant_edges() {
        let f = var(0).scale(&Rat::from_int(-4));
        assert_eq!(poly_gcd(&MPoly::zero(), &f), var(0));
        assert!(poly_gcd(&MPoly::constant(Rat::from_int(7)), &f).is_one());
        assert!(poly_gcd(&MPoly::zero(), &MPoly::zero()).is_zero());
    }

    #[test]
    fn normalisation_is_canonical() {
        // Result is content-free with positive leading coefficient.
        let s = var(0).add(&var(1)).scale(&Rat::from_int(-6));
        let f = s.mul(&var(2));
        let g = s.mul(&var(3));
        let d = poly_gcd(&f, &g);
        assert_eq!(d, var(0).add(&var(1)));
    }

    #[test]
    fn multivariate_three_way() {
        // gcd over three variables with nested structure.
        let a = var(0);
        let b = var(1);
        let p = var(2);
        let core = a.mul(&p).add(&b); // ap + b
        let f = core.mul(&core).mul(&a.add(&MPoly::one()));
        let g = core.mul(&b.add(&p));
        assert_eq!(poly_gcd(&f, &g), core);
    }

    #[test]
    fn monomial_denominator_cases() {
        // gcd(big * p^3, p^5) = p^3 and pure powers reduce componentwise.
        let p = var(2);
        let big = var(0).pow(3).add(&var(1).mul(&var(2))).add(&MPoly::one());
        let f = big.mul(&p.pow(3));
        let g = p.pow(5);
        assert_eq!(poly_gcd(&f, &g), p.pow(3));
        assert_eq!(poly_gcd(&p.pow(2), &p.pow(7)), p.pow(2));
    }

    #[test]
    fn power_of_shared_core() {
        // gcd(core^3, core^2 * (a + 1)) = core^2 via the division probe.
        let core = var(0).mul(&var(2)).add(&var(1));
        let f = core.mul(&core).mul(&core);
        let g = core.mul(&core).mul(&var(0).add(&MPoly::one()));
        assert_eq!(poly_gcd(&f, &g), normalise(&core.mul(&core)));
    }

    #[test]
    fn image_filter_is_exact_on_structured_coprime_pair() {
        // Many variables, no common factor; must not fall into the remainder
        // sequence blowup (this returns quickly or not at all).
        let mut f = MPoly::one();
        let mut g = MPoly::one();
        for i in 0..6 {
            f = f.mul(&var(i).add(&var(i + 1)));
            g = g.mul(&var(i).add(&var(i + 2).mul(&var(i + 1))));
        }
        f = f.add(&MPoly::one());
        assert!(poly_gcd(&f, &g).is_one());
    }
}
