//! Laurent polynomials and rational functions in x_1..x_N over the (q,t)
//! scalar field: symmetrization and the standard symmetric-function
//! constructors, including generalized Schur functions indexed by arbitrary
//! integer sequences.
//!
//! All functions take the total number of ring variables `nv` (which may
//! include auxiliary slots after the x-block) and the number `n` of
//! x-variables, which occupy indices `VX .. VX + n`.

use crate::coeff::VX;
use crate::frac::Frac;
use crate::mpoly::MPoly;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;

/// Number of ring variables for N x-variables and no auxiliary slots.
pub fn nvars_for(n: usize) -> usize {
    VX + n
}

/// All permutations of {0, .., n-1} (images listed by position).
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Identity substitution table for a ring with `nv` variables.
pub fn identity_table(nv: usize) -> Vec<Vec<i32>> {
    (0..nv)
        .map(|i| {
            let mut row = vec![0; nv];
            row[i] = 1;
            row
        })
        .collect()
}

/// Substitution table for the permutation action
/// `(w·f)(x_1..x_n) = f(x_{w(1)}, ..., x_{w(n)})`, i.e. the variable `x_j`
/// inside `f` is replaced by `x_{w(j)}`. `w` is 0-based.
pub fn perm_table(nv: usize, w: &[usize]) -> Vec<Vec<i32>> {
    let mut table = identity_table(nv);
    for (j, &wj) in w.iter().enumerate() {
        let mut row = vec![0; nv];
        row[VX + wj] = 1;
        table[VX + j] = row;
    }
    table
}

/// Apply a permutation (0-based) of the x-variables to a fraction.
pub fn apply_perm(f: &Frac, w: &[usize]) -> Frac {
    f.subst_automorphism(f.nvars(), &perm_table(f.nvars(), w))
}

/// Unnormalized symmetrization: Σ_{w ∈ S_n} w·f over the first `n`
/// x-variables. Callers apply their own 1/(α!(N−α)!)-style factors.
pub fn symmetrize(f: &Frac, n: usize) -> Frac {
    let mut acc = Frac::zero(f.nvars());
    for w in all_perms(n) {
        acc = acc.add(&apply_perm(f, &w));
    }
    acc
}

/// Elementary symmetric polynomial e_j(x_1..x_n).
pub fn elementary(nv: usize, n: usize, j: usize) -> Frac {
    assert!(j <= n);
    let mut p = MPoly::zero(nv);
    for comb in (0..n).combinations(j) {
        let mut e = vec![0; nv];
        for i in comb {
            e[VX + i] = 1;
        }
        p = p.add(&MPoly::monomial(nv, &e, BigInt::one()));
    }
    Frac::from_poly(p)
}

/// Power sum p_k = Σ_i x_i^k, k any nonzero integer.
pub fn power_sum(nv: usize, n: usize, k: i32) -> Frac {
    let mut p = MPoly::zero(nv);
    for i in 0..n {
        p = p.add(&MPoly::var_pow(nv, VX + i, k));
    }
    Frac::from_poly(p)
}

/// Monomial symmetric Laurent polynomial m_λ: the sum of the distinct
/// permutations of the exponent vector λ (padded with zeros to length n).
pub fn monomial_sym(nv: usize, n: usize, lambda: &[i32]) -> Frac {
    assert!(lambda.len() <= n);
    let mut exps = lambda.to_vec();
    exps.resize(n, 0);
    let mut seen = std::collections::BTreeSet::new();
    let mut p = MPoly::zero(nv);
    for w in exps.iter().copied().permutations(n) {
        if seen.insert(w.clone()) {
            let mut e = vec![0; nv];
            e[VX..VX + n].copy_from_slice(&w);
            p = p.add(&MPoly::monomial(nv, &e, BigInt::one()));
        }
    }
    Frac::from_poly(p)
}

/// Vandermonde ∏_{i<j} (x_i − x_j) on the first `k` x-variables.
pub fn vandermonde(nv: usize, k: usize) -> MPoly {
    let mut p = MPoly::one(nv);
    for i in 0..k {
        for j in (i + 1)..k {
            p = p.mul(&MPoly::var(nv, VX + i).sub(&MPoly::var(nv, VX + j)));
        }
    }
    p
}

/// Generalized Schur function s_{a_1,..,a_α}(x_1..x_α) =
/// det(x_i^{a_j + α − j}) / ∏_{i<j}(x_i − x_j), for an arbitrary integer
/// sequence a. The division is always exact; a failure aborts.
pub fn gen_schur(nv: usize, a: &[i32]) -> Frac {
    let alpha = a.len();
    assert!(alpha >= 1);
    let det = alternant_det(nv, a);
    let v = vandermonde(nv, alpha);
    let q = det
        .exact_div(&v)
        .expect("alternant must be divisible by the Vandermonde");
    Frac::from_poly(q)
}

/// det(x_i^{a_j + α − j}) over the first α x-variables.
fn alternant_det(nv: usize, a: &[i32]) -> MPoly {
    let alpha = a.len();
    let mut det = MPoly::zero(nv);
    for (w, sign) in perms_with_sign(alpha) {
        // term: sign * prod_i x_i^{a_{w(i)} + α - w(i) - 1}  (w 0-based)
        let mut e = vec![0; nv];
        for i in 0..alpha {
            e[VX + i] = a[w[i]] + alpha as i32 - w[i] as i32 - 1;
        }
        det = det.add(&MPoly::monomial(nv, &e, BigInt::from(sign)));
    }
    det
}

/// All permutations with their signs.
pub fn perms_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    all_perms(n)
        .into_iter()
        .map(|w| {
            let mut sign = 1i64;
            for i in 0..n {
                for j in (i + 1)..n {
                    if w[i] > w[j] {
                        sign = -sign;
                    }
                }
            }
            (w, sign)
        })
        .collect()
}

/// Whether `f` is invariant under all permutations of the first `n`
/// x-variables (checked on adjacent transpositions).
pub fn is_symmetric(f: &Frac, n: usize) -> bool {
    for i in 0..n.saturating_sub(1) {
        let mut w: Vec<usize> = (0..n).collect();
        w.swap(i, i + 1);
        if &apply_perm(f, &w) != f {
            return false;
        }
    }
    true
}

/// All weakly-decreasing exponent vectors of length `n` with entries in
/// `[lo, hi]`, excluding the zero vector.
fn box_partitions(n: usize, lo: i32, hi: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, lo: i32, hi: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == n {
            if cur.iter().any(|&x| x != 0) {
                out.push(cur.clone());
            }
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for v in (lo..=top).rev() {
            cur.push(v);
            rec(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(n, lo, hi, &mut cur, &mut out);
    out
}

/// Spanning test set: the constant 1 plus every monomial-symmetric Laurent
/// polynomial m_λ with λ a weakly-decreasing exponent vector inside the box.
pub fn test_basis(nv: usize, n: usize, lo: i32, hi: i32) -> Vec<Frac> {
    let mut out = vec![Frac::one(nv)];
    for lambda in box_partitions(n, lo, hi) {
        out.push(monomial_sym(nv, n, &lambda));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{theta, tpow_half, xvar, xvar_pow};

    #[test]
    fn symmetrize_examples() {
        let n = 2;
        let nv = nvars_for(n);
        let x1 = xvar(nv, 1);
        let x2 = xvar(nv, 2);
        assert_eq!(symmetrize(&x1, n), x1.add(&x2));
        // already symmetric -> n! * f
        let s = x1.mul(&x2);
        assert_eq!(symmetrize(&s, n), s.mul_int(2));
        // x1/(x1-x2) + x2/(x2-x1) = 1
        let f = x1.div(&x1.sub(&x2));
        assert!(symmetrize(&f, n).is_one());
    }

    #[test]
    fn elementary_and_power_sums() {
        let n = 3;
        let nv = nvars_for(n);
        assert!(elementary(nv, n, 0).is_one());
        let x1 = xvar(nv, 1);
        let x2 = xvar(nv, 2);
        let x3 = xvar(nv, 3);
        assert_eq!(elementary(nv, n, 3), x1.mul(&x2).mul(&x3));
        assert_eq!(
            elementary(nv, n, 2),
            x1.mul(&x2).add(&x1.mul(&x3)).add(&x2.mul(&x3))
        );
        let nv2 = nvars_for(2);
        assert_eq!(
            power_sum(nv2, 2, -1),
            xvar_pow(nv2, 1, -1).add(&xvar_pow(nv2, 2, -1))
        );
    }

    #[test]
    fn schur_examples() {
        let nv = nvars_for(2);
        // s_{[n,n]} = (x1 x2)^n including negative n
        for n in [-2i32, 0, 3] {
            let expect = xvar_pow(nv, 1, n).mul(&xvar_pow(nv, 2, n));
            assert_eq!(gen_schur(nv, &[n, n]), expect);
        }
        // s_{[a]} = x1^a
        assert_eq!(gen_schur(nvars_for(1), &[5]), xvar_pow(nvars_for(1), 1, 5));
        // s_{[2,0]} = x1^2 + x1 x2 + x2^2
        let expect = xvar_pow(nv, 1, 2)
            .add(&xvar(nv, 1).mul(&xvar(nv, 2)))
            .add(&xvar_pow(nv, 2, 2));
        assert_eq!(gen_schur(nv, &[2, 0]), expect);
    }

    #[test]
    fn schur_antisymmetry() {
        let nv = nvars_for(2);
        for n in -2i32..=2 {
            // s_{n, n+1} = 0
            assert!(gen_schur(nv, &[n, n + 1]).is_zero());
            for p in -2i32..=2 {
                // s_{n,p} = -s_{p-1, n+1}
                assert_eq!(gen_schur(nv, &[n, p]), gen_schur(nv, &[p - 1, n + 1]).neg());
            }
        }
    }

    #[test]
    fn vandermonde_divisibility_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let alpha = rng.gen_range(2..=4usize);
            let a: Vec<i32> = (0..alpha).map(|_| rng.gen_range(-4..=4)).collect();
            let nv = nvars_for(alpha);
            let det = super::alternant_det(nv, &a);
            let v = vandermonde(nv, alpha);
            assert!(det.exact_div(&v).is_some(), "a = {:?}", a);
        }
    }

    #[test]
    fn symmetry_checks() {
        let nv = nvars_for(2);
        let x1 = xvar(nv, 1);
        let x2 = xvar(nv, 2);
        assert!(is_symmetric(&x1.add(&x2), 2));
        assert!(!is_symmetric(&x1.sub(&x2), 2));
        assert!(is_symmetric(&gen_schur(nv, &[3, -1]), 2));
    }

    #[test]
    fn test_basis_box() {
        let basis = test_basis(nvars_for(2), 2, -1, 1);
        // {1, m_(1), m_(1,1), m_(1,-1), m_(-1), m_(-1,-1)}
        assert_eq!(basis.len(), 6);
        for f in &basis {
            assert!(is_symmetric(f, 2));
        }
    }

    #[test]
    fn firstcn_constant_identity() {
        // Σ_i ∏_{j≠i} (θx_i − θ^{-1}x_j)/(x_i − x_j) = (θ^N − θ^{-N})/(θ − θ^{-1})
        for n in 1..=4usize {
            let nv = nvars_for(n);
            let mut lhs = Frac::zero(nv);
            for i in 1..=n {
                let mut term = Frac::one(nv);
                for j in 1..=n {
                    if j != i {
                        let xi = xvar(nv, i);
                        let xj = xvar(nv, j);
                        term = term.mul(
                            &theta(nv)
                                .mul(&xi)
                                .sub(&tpow_half(nv, -1).mul(&xj))
                                .div(&xi.sub(&xj)),
                        );
                    }
                }
                lhs = lhs.add(&term);
            }
            let th = theta(nv);
            let rhs = tpow_half(nv, n as i32)
                .sub(&tpow_half(nv, -(n as i32)))
                .div(&th.sub(&tpow_half(nv, -1)));
            assert_eq!(lhs, rhs, "N = {}", n);
        }
    }
}
