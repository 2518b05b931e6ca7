//! The scalar field: exact rational functions in half-integer powers of q and
//! t, realized as fractions over two variables `a = q^{1/2}` (index 0) and
//! `b = t^{1/2}` (index 1). θ denotes t^{1/2}.
//!
//! Larger rings append x-variables (and auxiliary series variables) after the
//! two scalar slots, so every function here also works on those rings.

use crate::frac::{Frac, Resample};
use crate::mpoly::MPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Variable index of a = q^{1/2}.
pub const VA: usize = 0;
/// Variable index of b = t^{1/2} = θ.
pub const VB: usize = 1;
/// Variable index of x_1; x_i lives at index VX + i - 1.
pub const VX: usize = 2;

/// q^{half/2} as a fraction over `nvars` variables.
pub fn qpow_half(nvars: usize, half: i32) -> Frac {
    Frac::var_pow(nvars, VA, half)
}

/// t^{half/2} = θ^{half} as a fraction over `nvars` variables.
pub fn tpow_half(nvars: usize, half: i32) -> Frac {
    Frac::var_pow(nvars, VB, half)
}

pub fn q(nvars: usize) -> Frac {
    qpow_half(nvars, 2)
}

pub fn t(nvars: usize) -> Frac {
    tpow_half(nvars, 2)
}

pub fn theta(nvars: usize) -> Frac {
    tpow_half(nvars, 1)
}

pub fn qpow(nvars: usize, e: i32) -> Frac {
    qpow_half(nvars, 2 * e)
}

pub fn tpow(nvars: usize, e: i32) -> Frac {
    tpow_half(nvars, 2 * e)
}

/// x_i (1-based) in a ring with N x-variables (nvars = VX + N + aux).
pub fn xvar(nvars: usize, i: usize) -> Frac {
    Frac::var(nvars, VX + i - 1)
}

pub fn xvar_pow(nvars: usize, i: usize, e: i32) -> Frac {
    Frac::var_pow(nvars, VX + i - 1, e)
}

/// Substitute q^{1/2} -> q^{-1/2} and t^{1/2} -> t^{-1/2}, leaving all other
/// variables fixed. An involution and a field automorphism.
pub fn subst_inverse(c: &Frac) -> Frac {
    c.invert_vars(&[VA, VB])
}

/// Exact evaluation with the two leading slots interpreted as the half-power
/// values: `vals[0]` is the value of q^{1/2}, `vals[1]` of t^{1/2}.
pub fn eval_rational(c: &Frac, vals: &[BigRational]) -> Result<BigRational, Resample> {
    c.eval_rational(vals)
}

/// g(z, w) = (z - q w)(z - t^{-1} w)(z - q^{-1} t w) evaluated at scalars
/// z = w = 1: g(1,1) = (1 - q)(1 - t^{-1})(1 - q^{-1} t).
pub fn g_one_one(nvars: usize) -> Frac {
    let one = Frac::one(nvars);
    one.sub(&q(nvars))
        .mul(&one.sub(&tpow(nvars, -1)))
        .mul(&one.sub(&qpow(nvars, -1).mul(&t(nvars))))
}

/// Render a fraction as a normalized expression string. `names` gives the
/// display names for variables from index VX on; the two scalar slots render
/// as q/qh and t/th (even powers as integer powers of q or t, odd powers via
/// the half-power symbols qh, th).
pub fn render(f: &Frac, names: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let num = render_poly(&f.num, names);
    if let Some(c) = f.den.as_constant() {
        if c.is_one() {
            return num;
        }
    }
    format!("({})/({})", num, render_poly(&f.den, names))
}

fn render_poly(p: &MPoly, names: &[String]) -> String {
    let mut terms: Vec<(&Vec<i32>, &BigInt)> = p.iter_terms().collect();
    terms.reverse(); // descending lex order
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c < &&BigInt::from(0);
        let mag = if neg { -(*c).clone() } else { (*c).clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (v, &ev) in e.iter().enumerate() {
            if ev == 0 {
                continue;
            }
            factors.push(render_var(v, ev, names));
        }
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

fn render_var(v: usize, e: i32, names: &[String]) -> String {
    let (name, e): (String, i32) = match v {
        VA => {
            if e % 2 == 0 {
                ("q".into(), e / 2)
            } else {
                ("qh".into(), e)
            }
        }
        VB => {
            if e % 2 == 0 {
                ("t".into(), e / 2)
            } else {
                ("th".into(), e)
            }
        }
        _ => {
            let name = names
                .get(v - VX)
                .cloned()
                .unwrap_or_else(|| format!("x{}", v - VX + 1));
            (name, e)
        }
    };
    if e == 1 {
        name
    } else {
        format!("{}^{}", name, e)
    }
}

/// Default display names x1..xN for a ring with `nx` x-variables.
pub fn xnames(nx: usize) -> Vec<String> {
    (1..=nx).map(|i| format!("x{}", i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn theta_squared_is_t() {
        let n = 2;
        assert_eq!(theta(n).mul(&theta(n)), t(n));
    }

    #[test]
    fn common_denominator_add() {
        let n = 2;
        let one = Frac::one(n);
        let d = one.sub(&q(n));
        let lhs = q(n).div(&d).add(&one.div(&d));
        assert_eq!(lhs, q(n).add(&one).div(&d));
    }

    #[test]
    fn field_inverse_roundtrip() {
        let n = 2;
        let one = Frac::one(n);
        let f = one.div(&one.sub(&q(n)));
        assert!(f.mul(&one.sub(&q(n))).is_one());
    }

    #[test]
    fn subst_inverse_properties() {
        let n = 2;
        assert_eq!(subst_inverse(&q(n)), qpow(n, -1));
        let anti = theta(n).sub(&tpow_half(n, -1));
        assert_eq!(subst_inverse(&anti), anti.neg());
        // g(1,1) -> (1 - q^{-1})(1 - t)(1 - q t^{-1})
        let one = Frac::one(n);
        let expect = one
            .sub(&qpow(n, -1))
            .mul(&one.sub(&t(n)))
            .mul(&one.sub(&q(n).mul(&tpow(n, -1))));
        assert_eq!(subst_inverse(&g_one_one(n)), expect);
        // involution
        let f = g_one_one(n).add(&theta(n)).div(&one.add(&q(n)));
        assert_eq!(subst_inverse(&subst_inverse(&f)), f);
    }

    #[test]
    fn eval_examples() {
        let n = 2;
        let one = Frac::one(n);
        // 1/(1-q) at qh = 2 (q = 4) -> -1/3
        let f = one.div(&one.sub(&q(n)));
        assert_eq!(f.eval_rational(&[rat(2, 1), rat(1, 1)]), Ok(rat(-1, 3)));
        // θ - θ^{-1} at th = 3 -> 8/3
        let g = theta(n).sub(&tpow_half(n, -1));
        assert_eq!(g.eval_rational(&[rat(1, 1), rat(3, 1)]), Ok(rat(8, 3)));
        // g(1,1) at qh=2, th=3: (1-4)(1-1/9)(1-9/4) = (-3)(8/9)(-5/4) = 10/3
        assert_eq!(
            g_one_one(n).eval_rational(&[rat(2, 1), rat(3, 1)]),
            Ok(rat(10, 3))
        );
    }

    #[test]
    fn t_leading_prefactors() {
        let n = 2;
        // t^{N-1} with N = 3
        let (d, l) = tpow(n, 2).t_leading().unwrap();
        assert_eq!(d, 4);
        assert!(l.is_one());
    }

    #[test]
    fn render_strings() {
        let n = 2;
        let one = Frac::one(n);
        let f = one.sub(&q(n));
        assert_eq!(render(&f, &[]), "-q + 1");
        assert_eq!(render(&qpow_half(n, 1), &[]), "qh");
        assert_eq!(render(&theta(n).div(&one.sub(&t(n))), &[]), "(-th)/(t - 1)");
        let n3 = 3;
        assert_eq!(render(&xvar_pow(n3, 1, -2), &["x1".into()]), "x1^-2");
    }
}
