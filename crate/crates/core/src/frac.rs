//! Canonical fractions of multivariate Laurent polynomials.
//!
//! Invariants maintained by construction:
//! - the denominator is nonzero;
//! - numerator and denominator share no polynomial factor (including integer
//!   content);
//! - the denominator has minimum exponent 0 in every variable and a positive
//!   lexicographically-leading coefficient;
//! - the zero fraction is `0/1`.
//!
//! Equality of fractions is therefore structural equality.

use crate::mpoly::MPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frac {
    pub num: MPoly,
    pub den: MPoly,
}

/// Signal that an evaluation point hit a vanishing denominator and a fresh
/// sample is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resample;

impl Frac {
    pub fn zero(nvars: usize) -> Self {
        Frac { num: MPoly::zero(nvars), den: MPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Frac { num: MPoly::one(nvars), den: MPoly::one(nvars) }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Frac { num: MPoly::from_int(nvars, c), den: MPoly::one(nvars) }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.nvars);
        Frac { num: p, den }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        Self::from_poly(MPoly::var(nvars, idx))
    }

    pub fn var_pow(nvars: usize, idx: usize, e: i32) -> Self {
        Self::from_poly(MPoly::var_pow(nvars, idx, e))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    /// Construct and fully reduce `num/den`.
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let nvars = num.nvars;
        assert_eq!(nvars, den.nvars);
        if num.is_zero() {
            return Frac::zero(nvars);
        }
        let (n, sn) = num.strip_units();
        let (d, sd) = den.strip_units();
        let g = MPoly::gcd(&n, &d);
        let mut n = n.exact_div(&g).expect("gcd must divide");
        let mut d = d.exact_div(&g).expect("gcd must divide");
        if d.lex_lead().map_or(false, |(_, c)| c.is_negative()) {
            n = n.neg();
            d = d.neg();
        }
        let shift: Vec<i32> = sn.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Frac { num: n.shift_exps(&shift), den: d }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    /// Construct from parts already known to share no polynomial factor;
    /// only unit and sign normalization is applied.  The caller is
    /// responsible for coprimality.
    pub fn from_coprime(num: MPoly, den: MPoly) -> Frac {
        assert!(!den.is_zero(), "zero denominator");
        let nvars = num.nvars;
        if num.is_zero() {
            return Frac::zero(nvars);
        }
        let (mut den, sd) = den.strip_units();
        let neg_sd: Vec<i32> = sd.iter().map(|&x| -x).collect();
        let mut num = num.shift_exps(&neg_sd);
        if den.lex_lead().map_or(false, |(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Frac { num, den }
    }

    pub fn is_one(&self) -> bool {
        self == &Frac::one(self.nvars())
    }

    pub fn add(&self, other: &Frac) -> Frac {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator through the den-gcd: keeps the reduction small
        // when the two denominators share most of their factors.
        let g = MPoly::gcd(&self.den, &other.den);
        let da = self.den.exact_div(&g).unwrap();
        let db = other.den.exact_div(&g).unwrap();
        Frac::new(
            self.num.mul(&db).add(&other.num.mul(&da)),
            self.den.mul(&db),
        )
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        if self.is_zero() || other.is_zero() {
            return Frac::zero(self.nvars());
        }
        // Cross-cancel before multiplying to keep intermediates small.
        let g1 = MPoly::gcd(&self.num, &other.den);
        let g2 = MPoly::gcd(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let mut num = n1.mul(&n2);
        let den = d1.mul(&d2);
        // Pieces are pairwise coprime; only unit/sign normalization remains.
        let (mut den, sd) = den.strip_units();
        let neg_sd: Vec<i32> = sd.iter().map(|&x| -x).collect();
        num = num.shift_exps(&neg_sd);
        if den.lex_lead().map_or(false, |(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Frac { num, den }
    }

    pub fn div(&self, other: &Frac) -> Frac {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Frac {
        assert!(!self.is_zero(), "division by zero fraction");
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn mul_int(&self, c: i64) -> Frac {
        if c == 0 {
            return Frac::zero(self.nvars());
        }
        Frac::new(self.num.mul_scalar(&BigInt::from(c)), self.den.clone())
    }

    pub fn powi(&self, e: i32) -> Frac {
        if e < 0 {
            return self.inv().powi(-e);
        }
        let mut acc = Frac::one(self.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute each variable by a monomial, as in `MPoly::compose_monomial`.
    pub fn compose_monomial(&self, target_nvars: usize, table: &[Vec<i32>]) -> Frac {
        Frac::new(
            self.num.compose_monomial(target_nvars, table),
            self.den.compose_monomial(target_nvars, table),
        )
    }

    /// Substitution along a monomial map that is a ring automorphism (each
    /// variable sent to a distinct variable times a unit monomial, as with
    /// permutations, q-shifts, and variable inversions). Automorphisms map
    /// coprime pairs to coprime pairs, so no gcd is needed — only the
    /// unit/sign normalization of the denominator.
    pub fn subst_automorphism(&self, target_nvars: usize, table: &[Vec<i32>]) -> Frac {
        let mut num = self.num.compose_monomial(target_nvars, table);
        let den = self.den.compose_monomial(target_nvars, table);
        assert!(!den.is_zero());
        if num.is_zero() {
            return Frac::zero(target_nvars);
        }
        let (mut den, sd) = den.strip_units();
        let neg_sd: Vec<i32> = sd.iter().map(|&x| -x).collect();
        num = num.shift_exps(&neg_sd);
        if den.lex_lead().map_or(false, |(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Frac { num, den }
    }

    /// Append extra variables.
    pub fn extend_vars(&self, target_nvars: usize) -> Frac {
        Frac {
            num: self.num.extend_vars(target_nvars),
            den: self.den.extend_vars(target_nvars),
        }
    }

    /// Invert the listed variables: v -> v^{-1}.
    pub fn invert_vars(&self, vars: &[usize]) -> Frac {
        let n = self.nvars();
        let table: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                let mut row = vec![0; n];
                row[i] = if vars.contains(&i) { -1 } else { 1 };
                row
            })
            .collect();
        self.subst_automorphism(n, &table)
    }

    /// Exact evaluation at rational points; `Err(Resample)` when the
    /// denominator vanishes (or a negative power of a zero coordinate occurs).
    pub fn eval_rational(&self, vals: &[BigRational]) -> Result<BigRational, Resample> {
        // Negative exponents at zero coordinates are undefined; treat as a
        // resample request.
        for (i, v) in vals.iter().enumerate() {
            if v.is_zero() {
                let needs_inv = self.num.min_exp(i) < 0 || self.den.min_exp(i) < 0;
                if needs_inv {
                    return Err(Resample);
                }
            }
        }
        let d = self.den.eval_rational(vals);
        if d.is_zero() {
            return Err(Resample);
        }
        Ok(self.num.eval_rational(vals) / d)
    }

    /// Leading behavior in variable `b` (index 1), i.e. as t^{1/2} -> infinity:
    /// returns `(halfdeg, lead)` with `self ~ b^halfdeg * lead`, where `lead`
    /// has no `b`-dependence. Returns `None` for the zero fraction.
    pub fn t_leading(&self) -> Option<(i64, Frac)> {
        if self.is_zero() {
            return None;
        }
        let dn = self.num.max_exp(1);
        let dd = self.den.max_exp(1);
        let take_lead = |p: &MPoly, d: i32| -> MPoly {
            let mut out = MPoly::zero(p.nvars);
            for (e, c) in p.iter_terms() {
                if e[1] == d {
                    let mut ne = e.clone();
                    ne[1] = 0;
                    out = out.add(&MPoly::monomial(p.nvars, &ne, c.clone()));
                }
            }
            out
        };
        Some((
            dn as i64 - dd as i64,
            Frac::new(take_lead(&self.num, dn), take_lead(&self.den, dd)),
        ))
    }

    /// Whether the fraction is a Laurent polynomial in the listed variables
    /// (denominator free of them).
    pub fn den_free_of(&self, vars: &[usize]) -> bool {
        vars.iter()
            .all(|&v| self.den.max_exp(v) == 0 && self.den.min_exp(v) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn a2(nvars: usize) -> (Frac, Frac) {
        (Frac::var(nvars, 0), Frac::var(nvars, 1))
    }

    #[test]
    fn reduction_and_canonical_form() {
        let (x, y) = a2(2);
        // (x^2 - y^2)/(x - y) = x + y
        let f = Frac::new(
            x.num.mul(&x.num).sub(&y.num.mul(&y.num)),
            x.num.sub(&y.num),
        );
        assert_eq!(f, x.add(&y));
        // Sign normalization: 1/(y - x) has den (x - y) with negated num.
        let g = Frac::new(MPoly::one(2), y.num.sub(&x.num));
        assert_eq!(g.den, x.num.sub(&y.num));
        assert_eq!(g.num, MPoly::from_int(2, -1));
    }

    #[test]
    fn field_ops() {
        let (x, y) = a2(2);
        let f = x.div(&x.add(&y));
        let g = y.div(&x.add(&y));
        assert!(f.add(&g).is_one());
        assert!(f.sub(&f).is_zero());
        let h = f.div(&g); // x/y
        assert_eq!(h, x.div(&y));
        assert!(h.mul(&h.inv()).is_one());
    }

    #[test]
    fn unit_normalization_in_denominator() {
        let (x, y) = a2(2);
        // 1 / (x^{-1} - y^{-1}) = x y / (y - x) = -x y/(x - y)
        let den = MPoly::var_pow(2, 0, -1).sub(&MPoly::var_pow(2, 1, -1));
        let f = Frac::new(MPoly::one(2), den);
        assert_eq!(f.den, x.num.sub(&y.num));
        assert_eq!(f.num, x.num.mul(&y.num).neg());
        // Denominator min-exps are zero and lex lead positive.
        assert!(f.den.min_exps().iter().all(|&e| e == 0));
        assert!(f.den.lex_lead().unwrap().1 > &BigInt::from(0));
    }

    #[test]
    fn eval_and_resample() {
        use num_rational::BigRational;
        let (x, y) = a2(2);
        let f = Frac::one(2).div(&x.sub(&y));
        let p = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(f.eval_rational(&[p(3, 1), p(1, 1)]), Ok(p(1, 2)));
        assert_eq!(f.eval_rational(&[p(2, 1), p(2, 1)]), Err(Resample));
    }

    #[test]
    fn t_leading_cases() {
        // In the (a, b) ring: t = b^2, q = a^2.
        let n = 2;
        let t = Frac::from_poly(MPoly::var_pow(n, 1, 2));
        let q = Frac::from_poly(MPoly::var_pow(n, 0, 2));
        let one = Frac::one(n);
        // t^{3}: halfdeg 6, lead 1
        let (d, l) = t.powi(3).t_leading().unwrap();
        assert_eq!(d, 6);
        assert!(l.is_one());
        // q + t + t^2 -> (4, 1)
        let (d, l) = q.add(&t).add(&t.powi(2)).t_leading().unwrap();
        assert_eq!(d, 4);
        assert!(l.is_one());
        // t/((1+t)(q+t)) -> (-2, 1)
        let f = t.div(&one.add(&t).mul(&q.add(&t)));
        let (d, l) = f.t_leading().unwrap();
        assert_eq!(d, -2);
        assert!(l.is_one());
        assert!(Frac::zero(n).t_leading().is_none());
    }

    #[test]
    fn invert_vars_involution() {
        let (x, y) = a2(2);
        let f = x.add(&y.powi(2)).div(&x.sub(&y));
        let g = f.invert_vars(&[0, 1]);
        assert_eq!(g.invert_vars(&[0, 1]), f);
        assert_ne!(g, f);
    }
}
