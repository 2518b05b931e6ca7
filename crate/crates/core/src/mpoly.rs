//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A polynomial over `nvars` variables is stored as a map from exponent
//! vectors (allowing negative entries) to nonzero `BigInt` coefficients.
//! Throughout the crate the variable order is fixed: variable 0 is `a`
//! (a square root of q), variable 1 is `b` (a square root of t), and
//! variables `2..` are `x_1, x_2, ...` followed by any auxiliary series
//! variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    pub nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_bigint(nvars, BigInt::from(c))
    }

    pub fn from_bigint(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { nvars, terms }
    }

    /// The monomial `c * prod_i v_i^{exps[i]}`.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map_or(false, |(e, c)| e.iter().all(|&x| x == 0) && c == &BigInt::from(1))
    }

    pub fn monomial(nvars: usize, exps: &[i32], c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps.to_vec(), c);
        }
        MPoly { nvars, terms }
    }

    /// The single variable `v_idx`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Self::monomial(nvars, &exps, BigInt::one())
    }

    /// The variable `v_idx` raised to the (possibly negative) power `e`.
    pub fn var_pow(nvars: usize, idx: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = e;
        Self::monomial(nvars, &exps, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    /// If the polynomial is a constant, return it.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// If the polynomial is a single term `c * x^e`, return `(e, c)`.
    pub fn as_monomial(&self) -> Option<(Vec<i32>, BigInt)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.clone(), c.clone()))
        } else {
            None
        }
    }

    fn insert_term(terms: &mut BTreeMap<Vec<i32>, BigInt>, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut terms, e, c1 * c2);
            }
        }
        MPoly { nvars: self.nvars, terms }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by the monomial `x^delta` (shift all exponents).
    pub fn shift_exps(&self, delta: &[i32]) -> MPoly {
        assert_eq!(delta.len(), self.nvars);
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (e.iter().zip(delta).map(|(a, d)| a + d).collect(), c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum of all exponent vectors (zero vector if empty).
    pub fn min_exps(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.nvars];
        if self.terms.is_empty() {
            return vec![0; self.nvars];
        }
        for e in self.terms.keys() {
            for (mi, ei) in m.iter_mut().zip(e) {
                *mi = (*mi).min(*ei);
            }
        }
        m
    }

    /// Componentwise maximum of all exponent vectors (zero vector if empty).
    pub fn max_exps(&self) -> Vec<i32> {
        let mut m = vec![i32::MIN; self.nvars];
        if self.terms.is_empty() {
            return vec![0; self.nvars];
        }
        for e in self.terms.keys() {
            for (mi, ei) in m.iter_mut().zip(e) {
                *mi = (*mi).max(*ei);
            }
        }
        m
    }

    pub fn max_exp(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_exp(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    /// Substitute every variable by a monomial: variable `i` maps to
    /// `prod_j w_j^{table[i][j]}` in a target ring with `target_nvars`
    /// variables. Coefficients are unchanged.
    pub fn compose_monomial(&self, target_nvars: usize, table: &[Vec<i32>]) -> MPoly {
        assert_eq!(table.len(), self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0i32; target_nvars];
            for (i, &ei) in e.iter().enumerate() {
                if ei != 0 {
                    for (j, &tij) in table[i].iter().enumerate() {
                        ne[j] += ei * tij;
                    }
                }
            }
            Self::insert_term(&mut terms, ne, c.clone());
        }
        MPoly { nvars: target_nvars, terms }
    }

    /// Extend with extra variables appended (exponent 0 on new variables).
    pub fn extend_vars(&self, target_nvars: usize) -> MPoly {
        assert!(target_nvars >= self.nvars);
        MPoly {
            nvars: target_nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.resize(target_nvars, 0);
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Evaluate at rational points (all nonzero where negative exponents occur).
    pub fn eval_rational(&self, vals: &[BigRational]) -> BigRational {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei != 0 {
                    term *= vals[i].pow(ei);
                }
            }
            acc += term;
        }
        acc
    }

    /// Positive gcd of all integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide all coefficients by an integer that must divide exactly.
    pub fn div_scalar_exact(&self, d: &BigInt) -> MPoly {
        assert!(!d.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "inexact scalar division");
                    (e.clone(), q)
                })
                .collect(),
        }
    }

    /// Lexicographically largest term.
    pub fn lex_lead(&self) -> Option<(&Vec<i32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Strip per-variable minimum exponents: returns `(p, shift)` with
    /// `self = p * x^shift` and `p.min_exps() == 0`.
    pub fn strip_units(&self) -> (MPoly, Vec<i32>) {
        let m = self.min_exps();
        if m.iter().all(|&x| x == 0) {
            return (self.clone(), m);
        }
        let neg: Vec<i32> = m.iter().map(|&x| -x).collect();
        (self.shift_exps(&neg), m)
    }

    /// Exact division in the Laurent ring. Returns `None` when `self` is not
    /// divisible by `d`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero(self.nvars));
        }
        let (a, sa) = self.strip_units();
        let (b, sb) = d.strip_units();
        let (eb, cb) = b.lex_lead().unwrap();
        let eb = eb.clone();
        let cb = cb.clone();
        let mut r = a.terms;
        let mut q: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        while let Some((er, cr)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let eq: Vec<i32> = er.iter().zip(&eb).map(|(x, y)| x - y).collect();
            if eq.iter().any(|&x| x < 0) {
                return None;
            }
            let (cq, rem) = cr.div_rem(&cb);
            if !rem.is_zero() {
                return None;
            }
            // Subtract cq · x^eq · b from the remainder in place.
            for (e, c) in &b.terms {
                let key: Vec<i32> = eq.iter().zip(e).map(|(x, y)| x + y).collect();
                let delta = &cq * c;
                match r.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let nv = o.get() - &delta;
                        if nv.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = nv;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            q.insert(eq, cq);
        }
        let delta: Vec<i32> = sa.iter().zip(&sb).map(|(x, y)| x - y).collect();
        let qp = MPoly { nvars: self.nvars, terms: q };
        Some(qp.shift_exps(&delta))
    }

    /// View as a univariate polynomial in variable `v`: map from degree in `v`
    /// to the coefficient (with the `v`-exponent zeroed out).
    pub fn as_univar(&self, v: usize) -> BTreeMap<i32, MPoly> {
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[v];
            let mut ne = e.clone();
            ne[v] = 0;
            let entry = out.entry(d).or_insert_with(|| MPoly::zero(self.nvars));
            Self::insert_term(&mut entry.terms, ne, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Leading coefficient with respect to variable `v`.
    pub fn lead_coeff_in(&self, v: usize) -> MPoly {
        let d = self.max_exp(v);
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut ne = e.clone();
                ne[v] = 0;
                Self::insert_term(&mut out.terms, ne, c.clone());
            }
        }
        out
    }

    /// Pseudo-remainder of `self` by `d` with respect to variable `v`
    /// (both must be honest polynomials in `v`, i.e. no negative exponents).
    fn prem(&self, d: &MPoly, v: usize) -> MPoly {
        let degd = d.max_exp(v);
        let lcd = d.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.max_exp(v) >= degd {
            let degr = r.max_exp(v);
            let lcr = r.lead_coeff_in(v);
            let mut shift = vec![0; self.nvars];
            shift[v] = degr - degd;
            // lcd * r - lcr * x_v^{degr-degd} * d kills the leading term.
            r = lcd.mul(&r).sub(&lcr.shift_exps(&shift).mul(d));
        }
        r
    }

    /// Recursive content: gcd of the univariate coefficients in variable `v`.
    fn content_in(&self, v: usize) -> MPoly {
        let coeffs = self.as_univar(v);
        let mut g = MPoly::zero(self.nvars);
        for p in coeffs.values() {
            g = MPoly::gcd(&g, p);
            if g.as_constant().map_or(false, |c| c.is_one()) {
                break;
            }
        }
        g
    }

    /// Polynomial gcd in the Laurent ring, normalized so that the result has
    /// min-exponent 0 in every variable and positive content sign (the gcd is
    /// only defined up to a unit, i.e. up to a signed monomial).
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        assert_eq!(a.nvars, b.nvars);
        if a.is_zero() {
            let (p, _) = b.strip_units();
            return Self::make_positive(p);
        }
        if b.is_zero() {
            let (p, _) = a.strip_units();
            return Self::make_positive(p);
        }
        let (pa, _) = a.strip_units();
        let (pb, _) = b.strip_units();
        // The pseudo-remainder sequence can pick up spurious monomial factors
        // (units of the Laurent ring); strip them so the result divides both
        // inputs as an honest polynomial.
        let (g, _) = Self::gcd_pos(&pa, &pb).strip_units();
        Self::make_positive(g)
    }

    fn make_positive(p: MPoly) -> MPoly {
        match p.lex_lead() {
            Some((_, c)) if c.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// gcd for polynomials with nonnegative exponents and min-exps 0.
    fn gcd_pos(a: &MPoly, b: &MPoly) -> MPoly {
        let nvars = a.nvars;
        if let Some(ca) = a.as_constant() {
            return MPoly::from_bigint(nvars, ca.gcd(&b.content()));
        }
        if let Some(cb) = b.as_constant() {
            return MPoly::from_bigint(nvars, cb.gcd(&a.content()));
        }
        // Shared variables: a variable absent from either operand cannot
        // appear in the gcd.
        let amax = a.max_exps();
        let bmax = b.max_exps();
        let shared: Vec<usize> = (0..nvars)
            .filter(|&v| amax[v] > 0 && bmax[v] > 0)
            .collect();
        if shared.is_empty() {
            return MPoly::from_bigint(nvars, a.content().gcd(&b.content()));
        }
        // Sound fast path: if a modular evaluation proves the gcd has degree 0
        // in every shared variable, the gcd is the integer content gcd.
        if Self::proves_coprime(a, b, &shared) {
            return MPoly::from_bigint(nvars, a.content().gcd(&b.content()));
        }
        // Main variable: shared variable of smallest min(max-degree).
        let v = *shared
            .iter()
            .min_by_key(|&&v| amax[v].min(bmax[v]))
            .unwrap();
        // Contents with respect to v.
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let cg = MPoly::gcd(&ca, &cb);
        let pa = a.exact_div(&ca).expect("content must divide");
        let pb = b.exact_div(&cb).expect("content must divide");
        // Primitive pseudo-remainder sequence on the primitive parts.
        let (mut r0, mut r1) = if pa.max_exp(v) >= pb.max_exp(v) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        loop {
            let r2 = r0.prem(&r1, v);
            if r2.is_zero() {
                break;
            }
            let c2 = r2.content_in(v);
            let r2 = r2.exact_div(&c2).expect("content must divide");
            r0 = r1;
            r1 = r2;
        }
        if r1.max_exp(v) == 0 {
            // Primitive parts are coprime in v; gcd is the content gcd.
            return cg;
        }
        let c1 = r1.content_in(v);
        let pp = r1.exact_div(&c1).expect("content must divide");
        cg.mul(&pp)
    }

    /// Try to prove (soundly) that gcd(a, b) has degree 0 in every shared
    /// variable, by evaluating all other variables at random points modulo a
    /// prime and taking a univariate gcd over the prime field. If the leading
    /// coefficient of either operand survives the evaluation and the modular
    /// univariate gcd is constant, the true gcd is constant in that variable.
    fn proves_coprime(a: &MPoly, b: &MPoly, shared: &[usize]) -> bool {
        const P: u64 = 0x1fff_ffff_ffff_ffff; // 2^61 - 1, prime
        let mut rng_state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = move || {
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            2 + rng_state % (P - 3)
        };
        'vars: for &v in shared {
            for _attempt in 0..6 {
                let vals: Vec<u64> = (0..a.nvars).map(|_| next()).collect();
                let ua = a.eval_univar_mod(v, &vals, P);
                let ub = b.eval_univar_mod(v, &vals, P);
                // Leading coefficient of `a` in v must survive.
                if ua.last().map_or(true, |&c| c == 0) {
                    continue;
                }
                if ub.is_empty() || ub.iter().all(|&c| c == 0) {
                    continue;
                }
                if univar_gcd_deg_mod(&ua, &ub, P) == 0 {
                    continue 'vars;
                }
                return false;
            }
            return false;
        }
        true
    }

    /// Evaluate all variables except `v` at `vals` modulo `p`; returns dense
    /// coefficients of the resulting univariate polynomial in `v` (index =
    /// degree). Requires nonnegative exponents.
    fn eval_univar_mod(&self, v: usize, vals: &[u64], p: u64) -> Vec<u64> {
        let deg = self.max_exp(v);
        assert!(deg >= 0 && self.min_exp(v) >= 0);
        let mut out = vec![0u64; deg as usize + 1];
        let p_big = BigInt::from(p);
        for (e, c) in &self.terms {
            let mut m: u64 = {
                let r = ((c % &p_big) + &p_big) % &p_big;
                let digits = r.to_u64_digits().1;
                if digits.is_empty() { 0 } else { digits[0] }
            };
            for (i, &ei) in e.iter().enumerate() {
                if i != v && ei != 0 {
                    assert!(ei >= 0);
                    m = mulmod(m, powmod(vals[i], ei as u64, p), p);
                }
            }
            let d = e[v] as usize;
            out[d] = addmod(out[d], m, p);
        }
        out
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Degree of gcd of two dense univariate polynomials over F_p.
fn univar_gcd_deg_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let trim = |v: &[u64]| -> Vec<u64> {
        let mut v = v.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a);
    let mut r1 = trim(b);
    while !r1.is_empty() {
        // r0 mod r1
        let d1 = r1.len() - 1;
        let inv_lc = invmod(r1[d1], p);
        while r0.len() >= r1.len() && !r0.is_empty() {
            let d0 = r0.len() - 1;
            let f = mulmod(*r0.last().unwrap(), inv_lc, p);
            let shift = d0 - d1;
            for i in 0..=d1 {
                let sub = mulmod(f, r1[i], p);
                r0[i + shift] = addmod(r0[i + shift], p - sub % p, p);
            }
            r0 = trim(&r0);
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if r0.is_empty() {
        usize::MAX // both zero; caller avoids this
    } else {
        r0.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(n: usize, i: usize) -> MPoly {
        MPoly::var(n, i)
    }

    #[test]
    fn arithmetic_basics() {
        let a = x(2, 0);
        let b = x(2, 1);
        let s = a.add(&b);
        let p = s.mul(&s);
        // (a+b)^2 = a^2 + 2ab + b^2
        let expect = a
            .mul(&a)
            .add(&a.mul(&b).mul_scalar(&BigInt::from(2)))
            .add(&b.mul(&b));
        assert_eq!(p, expect);
        assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn laurent_exact_division() {
        let n = 2;
        let a = x(n, 0);
        let b = x(n, 1);
        // (a^2 - b^2) / (a - b) = a + b
        let num = a.mul(&a).sub(&b.mul(&b));
        let den = a.sub(&b);
        assert_eq!(num.exact_div(&den), Some(a.add(&b)));
        // not divisible
        assert_eq!(num.exact_div(&a.add(&b).add(&MPoly::one(n))), None);
        // Laurent: (x^-1 - y^-1) = (y - x) / (x y)
        let inv_diff = MPoly::var_pow(n, 0, -1).sub(&MPoly::var_pow(n, 1, -1));
        let q = b.sub(&a);
        let xy = a.mul(&b);
        assert_eq!(q.exact_div(&xy).map(|r| r), Some(inv_diff));
    }

    #[test]
    fn gcd_simple() {
        let n = 2;
        let a = x(n, 0);
        let b = x(n, 1);
        let p1 = a.sub(&b); // a - b
        let p2 = a.mul(&a).sub(&b.mul(&b)); // (a-b)(a+b)
        let g = MPoly::gcd(&p1, &p2);
        // gcd up to sign: a - b (min-exps already 0, positive lex-lead)
        assert_eq!(g, p1);
    }

    #[test]
    fn gcd_with_content_and_units() {
        let n = 2;
        let a = x(n, 0);
        let b = x(n, 1);
        let two = BigInt::from(2);
        // p1 = 2(a-b)·a^{-3},  p2 = 4(a-b)(a+b)·b^{-1}
        let p1 = a.sub(&b).mul_scalar(&two).shift_exps(&[-3, 0]);
        let p2 = a
            .mul(&a)
            .sub(&b.mul(&b))
            .mul_scalar(&BigInt::from(4))
            .shift_exps(&[0, -1]);
        let g = MPoly::gcd(&p1, &p2);
        assert_eq!(g, a.sub(&b).mul_scalar(&two));
    }

    #[test]
    fn gcd_coprime_fast_path() {
        let n = 3;
        let a = x(n, 0);
        let b = x(n, 1);
        let c = x(n, 2);
        let p1 = a.mul(&b).add(&c).add(&MPoly::one(n));
        let p2 = a.add(&b.mul(&c)).add(&MPoly::from_int(n, 7));
        let g = MPoly::gcd(&p1, &p2);
        assert_eq!(g, MPoly::one(n));
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let n = 3;
        let a = x(n, 0);
        let b = x(n, 1);
        let c = x(n, 2);
        let f = a.add(&b).add(&c); // a+b+c
        let g1 = a.sub(&b);
        let g2 = b.sub(&c).add(&MPoly::one(n));
        let p1 = f.mul(&g1);
        let p2 = f.mul(&g2);
        let g = MPoly::gcd(&p1, &p2);
        assert_eq!(g, f);
    }

    #[test]
    fn compose_monomial_subst() {
        // f(x,y) = x^2 y, substitute x -> a^2 z (q-shift), y -> z^{-1}
        let f = MPoly::monomial(2, &[2, 1], BigInt::one());
        // target ring vars: (a, z)
        let table = vec![vec![2, 1], vec![0, -1]];
        let g = f.compose_monomial(2, &table);
        assert_eq!(g, MPoly::monomial(2, &[4, 1], BigInt::one()));
    }

    #[test]
    fn eval_rational_points() {
        use num_rational::BigRational;
        let f = x(2, 0).mul(&x(2, 0)).add(&MPoly::var_pow(2, 1, -1));
        let vals = vec![
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(2), BigInt::from(1)),
        ];
        // (3/2)^2 + 1/2 = 9/4 + 1/2 = 11/4
        assert_eq!(
            f.eval_rational(&vals),
            BigRational::new(BigInt::from(11), BigInt::from(4))
        );
    }
}
