//! The generalized Macdonald-type difference operators and their algebra:
//! subset-sum constructors, Schur-indexed versions, (q,t) -> (q^{-1},t^{-1})
//! duals, t -> ∞ limits, and the constant-term/delta-calculus form of the
//! operators, verified against the difference-operator form.

use crate::coeff::{self, qpow, t, theta, tpow, tpow_half, xvar, VA, VX};
use crate::frac::Frac;
use crate::mpoly::MPoly;
use crate::ops::{t_infty, transform, ScaledOp, SymShiftOp};
use crate::polyx::{self, nvars_for};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;

/// Substitute the α "argument slots" x_1..x_α of `p` (given over a ring with
/// α x-variables) by the x-variables indexed by `idx` (1-based, increasing)
/// in a ring with `n` x-variables and `nv_target` total variables.
pub fn subst_args(p: &Frac, alpha: usize, nv_target: usize, idx: &[usize]) -> Frac {
    assert_eq!(idx.len(), alpha);
    let nv_src = p.nvars();
    let mut table: Vec<Vec<i32>> = Vec::with_capacity(nv_src);
    for v in 0..nv_src {
        let mut row = vec![0; nv_target];
        if v < VX {
            row[v] = 1;
        } else {
            let k = v - VX;
            assert!(k < alpha, "P depends on more than α variables");
            row[VX + idx[k] - 1] = 1;
        }
        table.push(row);
    }
    // Distinct variable targets: an embedding, which preserves reducedness.
    p.subst_automorphism(nv_target, &table)
}

/// The product ∏_{i∈I, j∉I} (t·x_i − x_j)/(x_i − x_j) over a ring with `nv`
/// variables and `n` x-variables; `I` is 1-based.
fn kernel_coeff(nv: usize, n: usize, set: &[usize]) -> Frac {
    let mut c = Frac::one(nv);
    for &i in set {
        for j in 1..=n {
            if !set.contains(&j) {
                let xi = xvar(nv, i);
                let xj = xvar(nv, j);
                c = c.mul(&t(nv).mul(&xi).sub(&xj).div(&xi.sub(&xj)));
            }
        }
    }
    c
}

/// The generalized operator D_α(P) = Σ_{|I|=α} P(x_I) ∏_{i∈I,j∉I}
/// (t·x_i − x_j)/(x_i − x_j) Γ_I, for P a symmetric function of α variables
/// (as a fraction over a ring with α x-variables). Returns the zero operator
/// when α > N.
pub fn build_d(n: usize, alpha: usize, p: &Frac) -> SymShiftOp {
    let nv = nvars_for(n);
    if alpha > n {
        return SymShiftOp::zero(n);
    }
    if alpha == 0 {
        // Empty product: the operator is multiplication by the constant P().
        return SymShiftOp::mult(n, subst_args(p, 0, nv, &[]));
    }
    let mut out = SymShiftOp::zero(n);
    for set in (1..=n).combinations(alpha) {
        let c = subst_args(p, alpha, nv, &set).mul(&kernel_coeff(nv, n, &set));
        let mut nu = vec![0i32; n];
        for &i in &set {
            nu[i - 1] = 1;
        }
        out = out.add(&SymShiftOp::from_term(c, nu));
    }
    out
}

/// Same operator built from the symmetrized normal form
/// (1/(α!(N−α)!))·Sym(P(x_1..x_α)·∏_{i≤α<j}(t x_i − x_j)/(x_i − x_j)·Γ_1..Γ_α);
/// used as an independent cross-check of `build_d`.
pub fn build_d_sym(n: usize, alpha: usize, p: &Frac) -> SymShiftOp {
    let nv = nvars_for(n);
    if alpha > n {
        return SymShiftOp::zero(n);
    }
    let base_idx: Vec<usize> = (1..=alpha).collect();
    let mut base = subst_args(p, alpha, nv, &base_idx);
    for i in 1..=alpha {
        for j in (alpha + 1)..=n {
            let xi = xvar(nv, i);
            let xj = xvar(nv, j);
            base = base.mul(&t(nv).mul(&xi).sub(&xj).div(&xi.sub(&xj)));
        }
    }
    let mut out = SymShiftOp::zero(n);
    for w in polyx::all_perms(n) {
        // Permuting the whole expression: coefficient permuted, Γ's moved to
        // the images of 1..α.
        let c = polyx::apply_perm(&base, &w);
        let mut nu = vec![0i32; n];
        for k in 0..alpha {
            nu[w[k]] = 1;
        }
        out = out.add(&SymShiftOp::from_term(c, nu));
    }
    let fact = |m: usize| -> i64 { (1..=m as i64).product::<i64>().max(1) };
    out.scale(&Frac::from_int(nv, fact(alpha) * fact(n - alpha)).inv())
}

/// (x_1 ... x_α)^m as a symmetric function of α variables.
pub fn rect_power(alpha: usize, m: i32) -> Frac {
    let nv = nvars_for(alpha);
    let mut p = MPoly::one(nv);
    let mut e = vec![0; nv];
    for k in 0..alpha {
        e[VX + k] = m;
    }
    p = p.mul(&MPoly::monomial(nv, &e, BigInt::one()));
    Frac::from_poly(p)
}

/// M_{α;m} = D_α((x_1...x_α)^m).
pub fn build_m(n: usize, alpha: usize, m: i32) -> SymShiftOp {
    if alpha > n {
        return SymShiftOp::zero(n);
    }
    build_d(n, alpha, &rect_power(alpha, m))
}

/// M_{a_1,..,a_α} = D_α(s_{a_1..a_α}).
pub fn build_m_schur(n: usize, a: &[i32]) -> SymShiftOp {
    let alpha = a.len();
    if alpha > n {
        return SymShiftOp::zero(n);
    }
    build_d(n, alpha, &polyx::gen_schur(nvars_for(alpha), a))
}

/// Dual operator: Σ_{|I|=α} (x_I)^m ∏_{i∈I,j∉I}(t^{-1}x_i − x_j)/(x_i − x_j)
/// Γ_I^{-1} — the image of `build_m` under q^{1/2} -> q^{-1/2},
/// t^{1/2} -> t^{-1/2} with negated shifts.
pub fn dual_m(n: usize, alpha: usize, m: i32) -> SymShiftOp {
    let src = build_m(n, alpha, m);
    SymShiftOp {
        n,
        terms: src
            .terms
            .iter()
            .map(|(nu, c)| {
                (
                    nu.iter().map(|&v| -v).collect(),
                    coeff::subst_inverse(c),
                )
            })
            .collect(),
    }
}

/// Conjugate an operator by the involution S: x_i -> x_i^{-1} for all i.
/// S Γ^ν S = Γ^{-ν} and coefficients get their x's inverted.
pub fn conj_invert_x(op: &SymShiftOp) -> SymShiftOp {
    let xv: Vec<usize> = (0..op.n).map(|k| VX + k).collect();
    SymShiftOp {
        n: op.n,
        terms: op
            .terms
            .iter()
            .map(|(nu, c)| (nu.iter().map(|&v| -v).collect(), c.invert_vars(&xv)))
            .collect(),
    }
}

/// t -> ∞ limit of t^{-α(N-α)}·M_{α;m}: Σ_I x_I^m ∏ x_i/(x_i − x_j) Γ_I.
pub fn build_m_tinf(n: usize, alpha: usize, m: i32) -> SymShiftOp {
    let nv = nvars_for(n);
    if alpha > n {
        return SymShiftOp::zero(n);
    }
    let mut out = SymShiftOp::zero(n);
    for set in (1..=n).combinations(alpha) {
        let mut c = Frac::one(nv);
        for &i in &set {
            c = c.mul(&xvar_powi(nv, i, m));
            for j in 1..=n {
                if !set.contains(&j) {
                    let xi = xvar(nv, i);
                    let xj = xvar(nv, j);
                    c = c.mul(&xi.div(&xi.sub(&xj)));
                }
            }
        }
        let mut nu = vec![0i32; n];
        for &i in &set {
            nu[i - 1] = 1;
        }
        out = out.add(&SymShiftOp::from_term(c, nu));
    }
    out
}

fn xvar_powi(nv: usize, i: usize, e: i32) -> Frac {
    Frac::var_pow(nv, VX + i - 1, e)
}

/// The multiplication operator A = x_1 x_2 ... x_N.
pub fn a_mult(n: usize) -> SymShiftOp {
    let nv = nvars_for(n);
    let mut c = Frac::one(nv);
    for i in 1..=n {
        c = c.mul(&xvar(nv, i));
    }
    SymShiftOp::mult(n, c)
}

/// The full shift Δ = Γ_1 Γ_2 ... Γ_N.
pub fn delta_shift(n: usize) -> SymShiftOp {
    SymShiftOp::from_term(Frac::one(nvars_for(n)), vec![1; n])
}

/// Internal-consistency failure in the constant-term calculus: a delta
/// substitution ran into a genuine pole of the kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("kernel pole while reading deltas for tuple {tuple:?}")]
pub struct CtError {
    pub tuple: Vec<usize>,
}

/// Apply the constant-term form of the operator D_α(P) to a symmetric
/// function `f` over the N-variable ring: expand the product of delta-kernels
/// over index tuples, substitute the delta-constraints
/// u_k = q^{-d_k} x_{i_k}^{-1} sequentially, and divide by α!.
///
/// For P a Laurent polynomial, every repeated-index tuple vanishes against
/// the (u_k − q·u_l) numerator factors, and the result coincides with the
/// subset-sum operator.  For rational P with poles on the q-shifted
/// diagonals (such as a shuffle product of polynomials), the repeated-index
/// tuples survive and contribute extra terms; the constant-term form is then
/// the faithful expression of the product of the underlying currents.
pub fn apply_ct_form(n: usize, alpha: usize, p: &Frac, f: &Frac) -> Result<Frac, CtError> {
    Ok(ct_form_op(n, alpha, p)?.act(f))
}

/// The difference operator defined by the constant-term form (see
/// `apply_ct_form`), collected into its normal form.
pub fn ct_form_op(n: usize, alpha: usize, p: &Frac) -> Result<SymShiftOp, CtError> {
    let nv = nvars_for(n);
    assert!(alpha >= 1);
    // Extended ring with α auxiliary u-variables after the x-block.
    let nve = nv + alpha;
    let uvar = |k: usize| -> Frac { Frac::var(nve, nv + k) };
    // Kernel in the u's: P(u^{-1}) ∏_{k<l} (u_k−u_l)(u_k−q u_l) /
    //                                        ((u_k−t u_l)(t u_k−q u_l)).
    let mut kernel = {
        // P over α x-slots; send slot k to u_k^{-1}.
        let nv_src = p.nvars();
        let mut table: Vec<Vec<i32>> = Vec::with_capacity(nv_src);
        for v in 0..nv_src {
            let mut row = vec![0; nve];
            if v < VX {
                row[v] = 1;
            } else {
                let k = v - VX;
                assert!(k < alpha);
                row[nv + k] = -1;
            }
            table.push(row);
        }
        p.compose_monomial(nve, &table)
    };
    for k in 0..alpha {
        for l in (k + 1)..alpha {
            let (uk, ul) = (uvar(k), uvar(l));
            let numf = uk.sub(&ul).mul(&uk.sub(&qpow(nve, 1).mul(&ul)));
            let denf = uk
                .sub(&t(nve).mul(&ul))
                .mul(&t(nve).mul(&uk).sub(&qpow(nve, 1).mul(&ul)));
            kernel = kernel.mul(&numf.div(&denf));
        }
    }
    // Per-index coefficient of the delta-kernel m(u): A_i = ∏_{j≠i}
    // (t x_i − x_j)/(x_i − x_j), over the base ring.
    let a_coeff: Vec<Frac> = (1..=n)
        .map(|i| {
            let mut c = Frac::one(nv);
            for j in 1..=n {
                if j != i {
                    let xi = xvar(nv, i);
                    let xj = xvar(nv, j);
                    c = c.mul(&t(nv).mul(&xi).sub(&xj).div(&xi.sub(&xj)));
                }
            }
            c
        })
        .collect();
    let mut acc = SymShiftOp::zero(n);
    for tuple in (0..alpha).map(|_| 1..=n).multi_cartesian_product() {
        // Walk the product m(u_1)...m(u_α) left to right, collecting the
        // coefficient and the shift vector; d_k is the accumulated q-shift on
        // x_{i_k} at the moment its delta constraint is read off.
        let mut nu = vec![0i32; n];
        let mut c = Frac::one(nv);
        let mut dvals = Vec::with_capacity(alpha);
        for &i in &tuple {
            c = c.mul(&transform(&a_coeff[i - 1], n, None, &nu));
            dvals.push(nu[i - 1]);
            nu[i - 1] += 1;
        }
        // Substitute the delta constraints u_k = q^{-d_k} x_{i_k}^{-1} into
        // the kernel one at a time, in reading order.  Sequential
        // substitution (with reduction between steps) resolves the 0/0
        // cancellations that occur for rational P with poles on the
        // q-shifted diagonals, where a simultaneous substitution would be
        // indeterminate.  A surviving pole is a genuine error.
        let mut ker_sub = kernel.clone();
        for k in 0..alpha {
            let mut table: Vec<Vec<i32>> = Vec::with_capacity(nve);
            for v in 0..nve {
                let mut row = vec![0; nve];
                if v == nv + k {
                    row[VA] = -2 * dvals[k];
                    row[VX + tuple[k] - 1] = -1;
                } else {
                    row[v] = 1;
                }
                table.push(row);
            }
            if ker_sub
                .denominator()
                .compose_monomial(nve, &table)
                .is_zero()
            {
                return Err(CtError { tuple });
            }
            ker_sub = ker_sub.compose_monomial(nve, &table);
            if ker_sub.is_zero() {
                break;
            }
        }
        if ker_sub.is_zero() {
            continue;
        }
        // Contract back to the base ring (the u-slots are no longer used).
        let mut contract: Vec<Vec<i32>> = Vec::with_capacity(nve);
        for v in 0..nve {
            let mut row = vec![0; nv];
            if v < nv {
                row[v] = 1;
            }
            contract.push(row);
        }
        let mut ker_sub = ker_sub.compose_monomial(nv, &contract);
        // A tuple with repeated indices stands for all orderings of its
        // repeated block, which the left-to-right delta reading collapses
        // into one: restore the multiplicity ∏ m_i! before the global 1/α!.
        let mut counts = vec![0i64; n + 1];
        for &i in &tuple {
            counts[i] += 1;
        }
        let mult: i64 = counts.iter().map(|&m| (1..=m).product::<i64>().max(1)).product();
        if mult > 1 {
            ker_sub = ker_sub.mul_int(mult);
        }
        acc = acc.add(&SymShiftOp::from_term(c.mul(&ker_sub), nu));
    }
    let fact: i64 = (1..=alpha as i64).product();
    Ok(acc.scale(&Frac::from_int(nv, fact).inv()))
}

/// Exact operator identity M_{1;n} (deformed) =
/// (t^N/(t−1)) Σ_{j=0}^N (−t^{-1})^j e_j(x)·M^{t→∞}_{1;n−j}.
pub fn verify_dofm(n: usize, m: i32) -> Result<(), String> {
    let nv = nvars_for(n);
    let lhs = build_m(n, 1, m);
    let mut rhs = SymShiftOp::zero(n);
    for j in 0..=n {
        let tinf = t_infty(&ScaledOp {
            op: build_m(n, 1, m - j as i32),
            t_scale: (n - 1) as i64,
        })
        .map_err(|e| e.to_string())?;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let cj = polyx::elementary(nv, n, j)
            .mul(&tpow(nv, -(j as i32)))
            .mul_int(sign);
        rhs = rhs.add(&tinf.scale(&cj));
    }
    let prefac = tpow(nv, n as i32).div(&t(nv).sub(&Frac::one(nv)));
    let rhs = rhs.scale(&prefac);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "linear relation failed for N={}, n={}: {} differing terms",
            n,
            m,
            lhs.sub(&rhs).terms.len()
        ))
    }
}

/// Coefficient of the monomial x^exps in a fraction whose denominator is free
/// of the x-variables.
pub fn mono_coeff(f: &Frac, n: usize, exps: &[i32]) -> Frac {
    let xv: Vec<usize> = (0..n).map(|k| VX + k).collect();
    assert!(f.den_free_of(&xv));
    let mut num = MPoly::zero(f.nvars());
    for (e, c) in f.num.iter_terms() {
        if (0..n).all(|k| e[VX + k] == exps[k]) {
            let mut ne = e.clone();
            for k in 0..n {
                ne[VX + k] = 0;
            }
            num = num.add(&MPoly::monomial(f.nvars(), &ne, c.clone()));
        }
    }
    Frac::new(num, f.den.clone())
}

/// Partitions of `d` into at most `n` parts (weakly decreasing, nonnegative).
pub fn partitions(d: usize, n: usize) -> Vec<Vec<i32>> {
    fn rec(rem: usize, maxpart: usize, slots: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if rem == 0 {
            let mut v = cur.clone();
            v.resize(v.len() + slots, 0);
            out.push(v);
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rem.min(maxpart)).rev() {
            cur.push(p as i32);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, n, &mut Vec::new(), &mut out);
    out
}

/// Dominance order: does `mu` ≤ `la` (same size)?
pub fn dominated(mu: &[i32], la: &[i32]) -> bool {
    let mut sa = 0i32;
    let mut sb = 0i32;
    for k in 0..mu.len().max(la.len()) {
        sa += mu.get(k).copied().unwrap_or(0);
        sb += la.get(k).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    true
}

/// The Macdonald polynomial P_λ for a partition λ with at most N parts,
/// computed as the unique eigenvector of M_{1;0} of the form
/// m_λ + Σ_{μ<λ} c_μ m_μ (dominance-triangular eigenproblem).
pub fn macdonald_poly(n: usize, la: &[i32]) -> Result<Frac, String> {
    let nv = nvars_for(n);
    let d: i32 = la.iter().sum();
    assert!(d >= 0 && la.iter().all(|&x| x >= 0));
    let mut mus: Vec<Vec<i32>> = partitions(d as usize, n)
        .into_iter()
        .filter(|mu| dominated(mu, la))
        .collect();
    // Order by dominance-compatible total order (lexicographic descending
    // refines dominance for fixed size).
    mus.sort();
    mus.reverse();
    assert_eq!(mus.first(), Some(&pad(la, n)));
    let m10 = build_m(n, 1, 0);
    // Expand act(M, m_μ) in the monomial basis restricted to `mus`.
    let mut col: Vec<Vec<Frac>> = Vec::new(); // col[j][i] = coeff of m_{mus[i]} in M·m_{mus[j]}
    for mu in &mus {
        let img = m10.act(&polyx::monomial_sym(nv, n, mu));
        let row: Vec<Frac> = mus
            .iter()
            .map(|nu| mono_coeff(&img, n, &pad(nu, n)))
            .collect();
        col.push(row);
    }
    // Triangularity check: entries above the diagonal in dominance must vanish
    // (m_μ maps into span{m_ν : ν ≤ μ}).
    for (j, mu) in mus.iter().enumerate() {
        for (i, nu) in mus.iter().enumerate() {
            if !dominated(nu, mu) && !col[j][i].is_zero() {
                return Err(format!("operator not dominance-triangular at {:?} -> {:?}", mu, nu));
            }
        }
    }
    // Eigenvalue = diagonal entry at λ.
    let eig = col[0][0].clone();
    // Back-substitute c_μ for μ below λ.
    let k = mus.len();
    let mut c: Vec<Frac> = vec![Frac::zero(nv); k];
    c[0] = Frac::one(nv);
    for i in 1..k {
        // (eig − A_ii) c_i = Σ_{j<i} A_{i,j-col} c_j  where A_{i,j} = col[j][i]
        let mut s = Frac::zero(nv);
        for j in 0..i {
            s = s.add(&col[j][i].mul(&c[j]));
        }
        let diag = col[i][i].clone();
        let gap = eig.sub(&diag);
        if gap.is_zero() {
            if s.is_zero() {
                // Unconstrained coefficient would mean a degenerate
                // eigenproblem; flag it.
                return Err(format!("degenerate eigenvalue gap at μ = {:?}", mus[i]));
            }
            return Err(format!("inconsistent eigenproblem at μ = {:?}", mus[i]));
        }
        c[i] = s.div(&gap);
    }
    let mut p = Frac::zero(nv);
    for (ci, mu) in c.iter().zip(&mus) {
        p = p.add(&ci.mul(&polyx::monomial_sym(nv, n, mu)));
    }
    Ok(p)
}

fn pad(la: &[i32], n: usize) -> Vec<i32> {
    let mut v = la.to_vec();
    v.resize(n, 0);
    v
}

/// Eigenvalue check: act(M_{α;0}, P_λ) = θ^{α(N−α)}·e_α(t^{(N+1)/2−i} q^{λ_i})·P_λ.
pub fn macdonald_eigen_check(n: usize, la: &[i32], alpha: usize) -> Result<(), String> {
    let nv = nvars_for(n);
    let p = macdonald_poly(n, la)?;
    let lhs = build_m(n, alpha, 0).act(&p);
    // Spectrum values y_i = t^{(N+1)/2 − i} q^{λ_i}.
    let la_p = pad(la, n);
    let yvals: Vec<Frac> = (1..=n)
        .map(|i| {
            tpow_half(nv, (n as i32 + 1) - 2 * i as i32).mul(&qpow(nv, la_p[i - 1]))
        })
        .collect();
    let mut e_alpha = Frac::zero(nv);
    for comb in (0..n).combinations(alpha) {
        let mut term = Frac::one(nv);
        for i in comb {
            term = term.mul(&yvals[i]);
        }
        e_alpha = e_alpha.add(&term);
    }
    let scale = theta(nv).powi((alpha * (n - alpha)) as i32);
    let rhs = scale.mul(&e_alpha).mul(&p);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("eigen check failed for λ={:?}, α={}, N={}", la, alpha, n))
    }
}
