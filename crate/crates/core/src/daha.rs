//! The functional representation of the type-A double affine Hecke algebra on
//! rational functions of x_1..x_N: the generators ρ(T_i), ρ(π), ρ(X_i),
//! ρ(Y_i), the shifted families Y_{i,n}, the elementary-symmetric operator
//! combinations D_{α;n}, and the relation suites that verify the presentation
//! and the restriction to symmetric functions.

use crate::coeff::{qpow, theta, tpow_half, xvar, VX};
use crate::frac::Frac;
use crate::macops;
use crate::ops::PermShiftOp;
use crate::polyx::{self, nvars_for};
use crate::report::{check_zero_perm, CheckResult};
use itertools::Itertools;

/// ρ(s_i): swap x_i and x_{i+1} (1 ≤ i ≤ N−1).
pub fn rho_s(n: usize, i: usize) -> PermShiftOp {
    assert!((1..n).contains(&i), "index out of range");
    let mut w: Vec<usize> = (0..n).collect();
    w.swap(i - 1, i);
    PermShiftOp::from_term(Frac::one(nvars_for(n)), w, vec![0; n])
}

/// The pure shift Γ_i: x_i -> q x_i.
pub fn gamma(n: usize, i: usize) -> PermShiftOp {
    assert!((1..=n).contains(&i));
    let mut nu = vec![0; n];
    nu[i - 1] = 1;
    PermShiftOp::from_term(Frac::one(nvars_for(n)), (0..n).collect(), nu)
}

/// ρ(T_i) = ((θx_i − θ^{-1}x_{i+1})/(x_i − x_{i+1}))·ρ(s_i)
///          − (x_{i+1}(θ − θ^{-1})/(x_i − x_{i+1}))·1.
pub fn rho_t(n: usize, i: usize) -> PermShiftOp {
    let nv = nvars_for(n);
    let xi = xvar(nv, i);
    let xj = xvar(nv, i + 1);
    let den = xi.sub(&xj);
    let cs = theta(nv).mul(&xi).sub(&tpow_half(nv, -1).mul(&xj)).div(&den);
    let c1 = xj.mul(&theta(nv).sub(&tpow_half(nv, -1))).div(&den).neg();
    rho_s(n, i)
        .scale(&cs)
        .add(&PermShiftOp::mult(n, c1))
}

/// ρ(T_i^{-1}) = ρ(T_i) − (θ − θ^{-1}), i.e. the same s-term with the
/// identity coefficient −x_i(θ − θ^{-1})/(x_i − x_{i+1}).
pub fn rho_t_inv(n: usize, i: usize) -> PermShiftOp {
    let nv = nvars_for(n);
    rho_t(n, i).sub(&PermShiftOp::mult(
        n,
        theta(nv).sub(&tpow_half(nv, -1)),
    ))
}

/// ρ(π): f(x_1..x_N) -> f(x_2, ..., x_N, q^{-1}x_1).
pub fn rho_pi(n: usize) -> PermShiftOp {
    let mut w: Vec<usize> = (1..n).collect();
    w.push(0);
    let mut nu = vec![0; n];
    nu[n - 1] = -1;
    PermShiftOp::from_term(Frac::one(nvars_for(n)), w, nu)
}

pub fn rho_pi_inv(n: usize) -> PermShiftOp {
    rho_pi(n).single_term_inverse()
}

/// ρ(X_i): multiplication by x_i.
pub fn rho_x(n: usize, i: usize) -> PermShiftOp {
    assert!((1..=n).contains(&i));
    PermShiftOp::mult(n, xvar(nvars_for(n), i))
}

/// Multiplication by x_i^k.
fn rho_x_pow(n: usize, i: usize, k: i32) -> PermShiftOp {
    PermShiftOp::mult(n, Frac::var_pow(nvars_for(n), VX + i - 1, k))
}

/// ρ(Y_i) = ρ(T_i T_{i+1} ... T_{N−1} π^{-1} T_1^{-1} ... T_{i-1}^{-1}).
pub fn rho_y(n: usize, i: usize) -> PermShiftOp {
    assert!((1..=n).contains(&i));
    let mut op = PermShiftOp::identity(n);
    for k in i..n {
        op = op.compose(&rho_t(n, k));
    }
    op = op.compose(&rho_pi_inv(n));
    for k in 1..i {
        op = op.compose(&rho_t_inv(n, k));
    }
    op
}

/// The left-to-right factor word of Y_{i,n}: x-power prefactors, then the
/// Hecke word of Y_i, then x-power postfactors.  Applying the factors right
/// to left to a function keeps every intermediate result small, which is far
/// cheaper than expanding the full operator first.
pub fn y_shift_factors(n: usize, i: usize, m: i32) -> Vec<PermShiftOp> {
    let mut word = Vec::new();
    for k in 1..i {
        word.push(rho_x_pow(n, k, -m));
    }
    for k in i..n {
        word.push(rho_t(n, k));
    }
    word.push(rho_pi_inv(n));
    for k in 1..i {
        word.push(rho_t_inv(n, k));
    }
    for k in 1..=i {
        word.push(rho_x_pow(n, k, m));
    }
    word
}

/// Apply a left-to-right operator word to a function (rightmost factor acts
/// first).
pub fn act_word(word: &[PermShiftOp], f: &Frac) -> Frac {
    let mut g = f.clone();
    for op in word.iter().rev() {
        g = op.act(&g);
    }
    g
}

/// Y_{i,n} = (X_1...X_{i-1})^{-n} Y_i (X_1...X_i)^n.
pub fn y_shift(n: usize, i: usize, m: i32) -> PermShiftOp {
    let mut left = PermShiftOp::identity(n);
    for k in 1..i {
        left = left.compose(&rho_x_pow(n, k, -m));
    }
    let mut right = PermShiftOp::identity(n);
    for k in 1..=i {
        right = right.compose(&rho_x_pow(n, k, m));
    }
    left.compose(&rho_y(n, i)).compose(&right)
}

/// D_{α;n} = q^{-αn} Σ_{i_1<...<i_α} Y_{i_1,n} ... Y_{i_α,n}.
pub fn d_elem(n: usize, alpha: usize, m: i32) -> PermShiftOp {
    assert!(alpha <= n);
    let nv = nvars_for(n);
    if alpha == 0 {
        return PermShiftOp::identity(n);
    }
    let ys: Vec<PermShiftOp> = (1..=n).map(|i| y_shift(n, i, m)).collect();
    let mut acc = PermShiftOp::zero(n);
    for set in (0..n).combinations(alpha) {
        let mut prod = PermShiftOp::identity(n);
        for i in set {
            prod = prod.compose(&ys[i]);
        }
        acc = acc.add(&prod);
    }
    acc.scale(&qpow(nv, -(alpha as i32) * m))
}

/// Compute D_{α;n}·f without expanding the operator: for each index subset,
/// apply the Y_{i,n} factor words sequentially (rightmost first).
pub fn d_elem_act(n: usize, alpha: usize, m: i32, f: &Frac) -> Frac {
    assert!(alpha <= n);
    let nv = nvars_for(n);
    if alpha == 0 {
        return f.clone();
    }
    let words: Vec<Vec<PermShiftOp>> =
        (1..=n).map(|i| y_shift_factors(n, i, m)).collect();
    let mut acc = Frac::zero(f.nvars());
    for set in (0..n).combinations(alpha) {
        let mut g = f.clone();
        for i in set.iter().rev() {
            g = act_word(&words[*i], &g);
        }
        acc = acc.add(&g);
    }
    acc.mul(&qpow(nv, -(alpha as i32) * m))
}

/// Verify the full defining-relation suite of the algebra in the functional
/// representation at size N.
pub fn daha_relation_suite(n: usize) -> Vec<CheckResult> {
    assert!((2..=4).contains(&n));
    let nv = nvars_for(n);
    let mut out = Vec::new();
    let ts: Vec<PermShiftOp> = (1..n).map(|i| rho_t(n, i)).collect();
    let tinvs: Vec<PermShiftOp> = (1..n).map(|i| rho_t_inv(n, i)).collect();
    let xs: Vec<PermShiftOp> = (1..=n).map(|i| rho_x(n, i)).collect();
    let ys: Vec<PermShiftOp> = (1..=n).map(|i| rho_y(n, i)).collect();
    let pi = rho_pi(n);
    let id = PermShiftOp::identity(n);
    let th = PermShiftOp::mult(n, theta(nv));
    let thinv = PermShiftOp::mult(n, tpow_half(nv, -1));

    for i in 0..n - 1 {
        // T_i T_i^{-1} = 1
        out.push(check_zero_perm(
            format!("T{}·Tinv{} = 1", i + 1, i + 1),
            &ts[i].compose(&tinvs[i]).sub(&id),
        ));
        // Hecke quadratic (T_i − θ)(T_i + θ^{-1}) = 0
        out.push(check_zero_perm(
            format!("hecke T{}", i + 1),
            &ts[i].sub(&th).compose(&ts[i].add(&thinv)),
        ));
        // T_i X_i T_i = X_{i+1}
        out.push(check_zero_perm(
            format!("T{} X{} T{} = X{}", i + 1, i + 1, i + 1, i + 2),
            &ts[i].compose(&xs[i]).compose(&ts[i]).sub(&xs[i + 1]),
        ));
        // T_i^{-1} Y_i T_i^{-1} = Y_{i+1}
        out.push(check_zero_perm(
            format!("Tinv{} Y{} Tinv{} = Y{}", i + 1, i + 1, i + 1, i + 2),
            &tinvs[i].compose(&ys[i]).compose(&tinvs[i]).sub(&ys[i + 1]),
        ));
    }
    // Braid relations
    for i in 0..n.saturating_sub(2) {
        out.push(check_zero_perm(
            format!("braid T{} T{}", i + 1, i + 2),
            &ts[i]
                .compose(&ts[i + 1])
                .compose(&ts[i])
                .sub(&ts[i + 1].compose(&ts[i]).compose(&ts[i + 1])),
        ));
    }
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            if i + 2 <= j {
                out.push(check_zero_perm(
                    format!("commuting T{} T{}", i + 1, j + 1),
                    &ts[i].commutator(&ts[j]),
                ));
            }
        }
        // T_i X_j = X_j T_i and T_i Y_j = Y_j T_i for j ∉ {i, i+1}
        for j in 0..n {
            if j != i && j != i + 1 {
                out.push(check_zero_perm(
                    format!("T{} X{} commute", i + 1, j + 1),
                    &ts[i].commutator(&xs[j]),
                ));
                out.push(check_zero_perm(
                    format!("T{} Y{} commute", i + 1, j + 1),
                    &ts[i].commutator(&ys[j]),
                ));
            }
        }
    }
    // X's commute, Y's commute
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(check_zero_perm(
                format!("X{} X{} commute", i + 1, j + 1),
                &xs[i].commutator(&xs[j]),
            ));
            out.push(check_zero_perm(
                format!("Y{} Y{} commute", i + 1, j + 1),
                &ys[i].commutator(&ys[j]),
            ));
        }
    }
    // X_1 Y_2 = Y_2 T_1^2 X_1
    out.push(check_zero_perm(
        "X1 Y2 = Y2 T1^2 X1",
        &xs[0]
            .compose(&ys[1])
            .sub(&ys[1].compose(&ts[0]).compose(&ts[0]).compose(&xs[0])),
    ));
    // (Y_1..Y_N) X_j = q X_j (Y_1..Y_N); (X_1..X_N) Y_j = q^{-1} Y_j (X_1..X_N)
    let yprod = ys.iter().fold(id.clone(), |acc, y| acc.compose(y));
    let xprod = xs.iter().fold(id.clone(), |acc, x| acc.compose(x));
    for j in 0..n {
        out.push(check_zero_perm(
            format!("(Y1..YN) X{} = q X{} (Y1..YN)", j + 1, j + 1),
            &yprod
                .compose(&xs[j])
                .sub(&xs[j].compose(&yprod).scale(&qpow(nv, 1))),
        ));
        out.push(check_zero_perm(
            format!("(X1..XN) Y{} = qinv Y{} (X1..XN)", j + 1, j + 1),
            &xprod
                .compose(&ys[j])
                .sub(&ys[j].compose(&xprod).scale(&qpow(nv, -1))),
        ));
    }
    // π T_i = T_{i+1} π for i ≤ N−2; π X_i = X_{i+1} π; π X_N = q^{-1} X_1 π
    for i in 0..n.saturating_sub(2) {
        out.push(check_zero_perm(
            format!("pi T{} = T{} pi", i + 1, i + 2),
            &pi.compose(&ts[i]).sub(&ts[i + 1].compose(&pi)),
        ));
    }
    for i in 0..n - 1 {
        out.push(check_zero_perm(
            format!("pi X{} = X{} pi", i + 1, i + 2),
            &pi.compose(&xs[i]).sub(&xs[i + 1].compose(&pi)),
        ));
    }
    out.push(check_zero_perm(
        "pi XN = qinv X1 pi",
        &pi.compose(&xs[n - 1])
            .sub(&xs[0].compose(&pi).scale(&qpow(nv, -1))),
    ));
    // (X_i..X_j)(T_i^{-1}..T_{j-1}^{-1}) = (T_i^{-1}..T_{j-1}^{-1})(X_i..X_j)
    for i in 1..=n {
        for j in (i + 1)..=n {
            let mut xij = PermShiftOp::identity(n);
            for k in i..=j {
                xij = xij.compose(&rho_x(n, k));
            }
            let mut tw = PermShiftOp::identity(n);
            for k in i..j {
                tw = tw.compose(&rho_t_inv(n, k));
            }
            out.push(check_zero_perm(
                format!("(X{}..X{}) commutes with Tinv word", i, j),
                &xij.commutator(&tw),
            ));
        }
    }
    // Γ_i = ρ(s_i..s_{N-1} π^{-1} s_1..s_{i-1}) — the shift-word identity.
    for i in 1..=n {
        let mut wgam = PermShiftOp::identity(n);
        for k in i..n {
            wgam = wgam.compose(&rho_s(n, k));
        }
        wgam = wgam.compose(&rho_pi_inv(n));
        for k in 1..i {
            wgam = wgam.compose(&rho_s(n, k));
        }
        out.push(check_zero_perm(
            format!("Gamma{} word identity", i),
            &wgam.sub(&gamma(n, i)),
        ));
    }
    // Y_{1,n} = Y_1 X_1^n; Y_{N,n} = q^n X_N^n Y_N; pairwise commutation.
    for m in -2i32..=2 {
        out.push(check_zero_perm(
            format!("Y(1,{m}) = Y1 X1^{m}"),
            &y_shift(n, 1, m).sub(&ys[0].compose(&rho_x_pow(n, 1, m))),
        ));
        out.push(check_zero_perm(
            format!("Y(N,{m}) = q^{m} XN^{m} YN"),
            &y_shift(n, n, m)
                .sub(&rho_x_pow(n, n, m).compose(&ys[n - 1]).scale(&qpow(nv, m))),
        ));
        let yshifts: Vec<PermShiftOp> = (1..=n).map(|i| y_shift(n, i, m)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                out.push(check_zero_perm(
                    format!("[Y({},{m}), Y({},{m})] = 0", i + 1, j + 1),
                    &yshifts[i].commutator(&yshifts[j]),
                ));
            }
        }
    }
    // Shifted conjugation identity:
    // (X_j..X_i)^n Y_{j+1} = Y_{j+1} (T_j..T_i)(X_{j+1}..X_{i+1})^n (T_i^{-1}..T_j^{-1})
    for i in 1..n {
        for j in i..n {
            for m in [-1i32, 1, 2] {
                let mut xw = PermShiftOp::identity(n);
                for k in (i..=j).rev() {
                    xw = xw.compose(&rho_x_pow(n, k, m));
                }
                let lhs = xw.compose(&ys[j]);
                let mut tdown = PermShiftOp::identity(n);
                for k in (i..=j).rev() {
                    tdown = tdown.compose(&rho_t(n, k));
                }
                let mut xup = PermShiftOp::identity(n);
                for k in (i + 1..=j + 1).rev() {
                    xup = xup.compose(&rho_x_pow(n, k, m));
                }
                let mut tup = PermShiftOp::identity(n);
                for k in i..=j {
                    tup = tup.compose(&rho_t_inv(n, k));
                }
                let rhs = ys[j].compose(&tdown).compose(&xup).compose(&tup);
                out.push(check_zero_perm(
                    format!("X-word({i}..{j})^{m} conjugation of Y{}", j + 1),
                    &lhs.sub(&rhs),
                ));
            }
        }
    }
    out
}

/// Check that D_{α;n} preserves symmetric Laurent polynomials and restricts
/// to θ^{-α(N-α)}·M_{α;n} on them.
pub fn genmac_restriction_check(
    n: usize,
    alpha: usize,
    m: i32,
    box_lo: i32,
    box_hi: i32,
) -> Result<(), String> {
    assert!((1..=n).contains(&alpha));
    let nv = nvars_for(n);
    let mac = macops::build_m(n, alpha, m);
    let scale = theta(nv).powi(-((alpha * (n - alpha)) as i32));
    let xv: Vec<usize> = (0..n).map(|k| VX + k).collect();
    for f in polyx::test_basis(nv, n, box_lo, box_hi) {
        let lhs = d_elem_act(n, alpha, m, &f);
        if !lhs.den_free_of(&xv) {
            return Err(format!(
                "α={} n={} N={}: action not a Laurent polynomial on {}",
                alpha,
                m,
                n,
                crate::coeff::render(&f, &crate::coeff::xnames(n))
            ));
        }
        if !polyx::is_symmetric(&lhs, n) {
            return Err(format!(
                "α={} n={} N={}: action not symmetric on {}",
                alpha,
                m,
                n,
                crate::coeff::render(&f, &crate::coeff::xnames(n))
            ));
        }
        let rhs = scale.mul(&mac.act(&f));
        if lhs != rhs {
            return Err(format!(
                "α={} n={} N={}: restriction mismatch on {}",
                alpha,
                m,
                n,
                crate::coeff::render(&f, &crate::coeff::xnames(n))
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, render, xnames};
    use crate::polyx::power_sum;

    #[test]
    fn basic_actions() {
        let n = 2;
        let nv = nvars_for(n);
        // Γ_1 (x1 x2) = q x1 x2
        let f = xvar(nv, 1).mul(&xvar(nv, 2));
        assert_eq!(gamma(n, 1).act(&f), q(nv).mul(&f));
        // ρ(s_1) x1 = x2
        assert_eq!(rho_s(n, 1).act(&xvar(nv, 1)), xvar(nv, 2));
        // ρ(T_1)·1 = θ
        assert_eq!(rho_t(n, 1).act(&Frac::one(nv)), theta(nv));
        // ρ(π) f = f(x2, q^{-1} x1)
        let g = xvar(nv, 1).powi(2).mul(&xvar(nv, 2));
        let expect = xvar(nv, 2)
            .powi(2)
            .mul(&qpow(nv, -1).mul(&xvar(nv, 1)));
        assert_eq!(rho_pi(n).act(&g), expect);
        assert_eq!(
            rho_pi_inv(n).compose(&rho_pi(n)),
            PermShiftOp::identity(n)
        );
    }

    #[test]
    fn hecke_quadratic_and_gamma_word() {
        for n in 2..=3usize {
            let nv = nvars_for(n);
            let th = PermShiftOp::mult(n, theta(nv));
            let thinv = PermShiftOp::mult(n, tpow_half(nv, -1));
            for i in 1..n {
                let t = rho_t(n, i);
                assert!(t.sub(&th).compose(&t.add(&thinv)).is_zero());
            }
            for i in 1..=n {
                let mut w = PermShiftOp::identity(n);
                for k in i..n {
                    w = w.compose(&rho_s(n, k));
                }
                w = w.compose(&rho_pi_inv(n));
                for k in 1..i {
                    w = w.compose(&rho_s(n, k));
                }
                assert_eq!(w, gamma(n, i), "Gamma_{} word at N={}", i, n);
            }
        }
    }

    #[test]
    fn full_suite_n2() {
        let checks = daha_relation_suite(2);
        for c in &checks {
            assert!(c.passed(), "failed: {} ({:?})", c.name, c.witness);
        }
    }

    #[test]
    fn d_elem_restriction_example() {
        // act(D_{1;1}, p_1) = θ^{-1} act(M_{1;1}, p_1) at N=2
        let n = 2;
        let nv = nvars_for(n);
        let p1 = power_sum(nv, n, 1);
        let lhs = d_elem(n, 1, 1).act(&p1);
        let rhs = theta(nv)
            .powi(-1)
            .mul(&macops::build_m(n, 1, 1).act(&p1));
        assert_eq!(
            lhs,
            rhs,
            "lhs = {}, rhs = {}",
            render(&lhs, &xnames(n)),
            render(&rhs, &xnames(n))
        );
    }

    #[test]
    fn restriction_small() {
        assert!(genmac_restriction_check(2, 1, 0, -1, 1).is_ok());
        assert!(genmac_restriction_check(2, 2, 1, -1, 1).is_ok());
    }
}
