//! Permutation-and-shift difference operators.
//!
//! A `PermShiftOp` is a finite sum Σ c_{w,ν} · w·Γ^ν where
//! `(Γ^ν f)(x) = f(q^{ν_1}x_1, ..., q^{ν_N}x_N)` and
//! `(w·f)(x_1..x_N) = f(x_{w(1)}, ..., x_{w(N)})`, with rational-function
//! coefficients c_{w,ν}. The family {w·Γ^ν} is linearly independent over
//! rational functions, so equality of operators is equality of term maps.
//!
//! A `SymShiftOp` is the permutation-free special case (terms indexed by the
//! shift vector ν alone); all the Macdonald-type operators collect into this
//! form.

use crate::coeff::{VA, VX};
use crate::frac::Frac;
use crate::polyx::{identity_table, nvars_for};
use std::collections::BTreeMap;

/// Substitution table sending x_j -> q^{ν_j} x_{w(j)} (w 0-based, identity on
/// all non-x variables). Passing `None` for `w` means the identity
/// permutation.
fn shift_perm_table(nv: usize, n: usize, w: Option<&[usize]>, nu: &[i32]) -> Vec<Vec<i32>> {
    let mut table = identity_table(nv);
    for j in 0..n {
        let target = w.map_or(j, |w| w[j]);
        let mut row = vec![0; nv];
        row[VX + target] = 1;
        row[VA] += 2 * nu[j]; // q = a^2
        table[VX + j] = row;
    }
    table
}

/// Apply the substitution x_j -> q^{ν_j} x_{w(j)} to a rational function.
pub fn transform(f: &Frac, n: usize, w: Option<&[usize]>, nu: &[i32]) -> Frac {
    f.subst_automorphism(f.nvars(), &shift_perm_table(f.nvars(), n, w, nu))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermShiftOp {
    pub n: usize,
    pub terms: BTreeMap<(Vec<usize>, Vec<i32>), Frac>,
}

impl PermShiftOp {
    pub fn zero(n: usize) -> Self {
        PermShiftOp { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_term(
            Frac::one(nvars_for(n)),
            (0..n).collect(),
            vec![0; n],
        )
    }

    pub fn from_term(c: Frac, w: Vec<usize>, nu: Vec<i32>) -> Self {
        let n = w.len();
        assert_eq!(nu.len(), n);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((w, nu), c);
        }
        PermShiftOp { n, terms }
    }

    /// Pure multiplication operator by the function `c`.
    pub fn mult(n: usize, c: Frac) -> Self {
        Self::from_term(c, (0..n).collect(), vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, key: (Vec<usize>, Vec<i32>), c: Frac) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &PermShiftOp) -> PermShiftOp {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PermShiftOp) -> PermShiftOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PermShiftOp {
        PermShiftOp {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Frac) -> PermShiftOp {
        if s.is_zero() {
            return PermShiftOp::zero(self.n);
        }
        PermShiftOp {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.mul(s))).collect(),
        }
    }

    /// Operator product: act(compose(A, B), f) = act(A, act(B, f)).
    pub fn compose(&self, other: &PermShiftOp) -> PermShiftOp {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = PermShiftOp::zero(n);
        for ((w1, nu1), c1) in &self.terms {
            for ((w2, nu2), c2) in &other.terms {
                // x_j -> q^{ν2_j} x_{w2(j)} then x_k -> q^{ν1_k} x_{w1(k)}:
                // overall x_j -> q^{ν2_j + ν1_{w2(j)}} x_{w1(w2(j))}.
                let w: Vec<usize> = (0..n).map(|j| w1[w2[j]]).collect();
                let nu: Vec<i32> = (0..n).map(|j| nu2[j] + nu1[w2[j]]).collect();
                let c = c1.mul(&transform(c2, n, Some(w1), nu1));
                out.insert((w, nu), c);
            }
        }
        out
    }

    pub fn commutator(&self, other: &PermShiftOp) -> PermShiftOp {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn act(&self, f: &Frac) -> Frac {
        let mut acc = Frac::zero(f.nvars());
        for ((w, nu), c) in &self.terms {
            acc = acc.add(&c.mul(&transform(f, self.n, Some(w), nu)));
        }
        acc
    }

    /// Inverse of a single-term operator c · w·Γ^ν.
    pub fn single_term_inverse(&self) -> PermShiftOp {
        assert_eq!(self.terms.len(), 1, "inverse only for single-term operators");
        let ((w, nu), c) = self.terms.iter().next().unwrap();
        let n = self.n;
        let mut winv = vec![0usize; n];
        for (j, &wj) in w.iter().enumerate() {
            winv[wj] = j;
        }
        let mu: Vec<i32> = (0..n).map(|j| -nu[winv[j]]).collect();
        // (c·wΓ^ν)^{-1} = (1/ (w Γ^ν)^{-1}-transformed c) · w^{-1} Γ^μ
        let cinv = transform(&c.inv(), n, Some(&winv), &mu);
        PermShiftOp::from_term(cinv, winv, mu)
    }

    pub fn pow(&self, e: u32) -> PermShiftOp {
        let mut acc = PermShiftOp::identity(self.n);
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymShiftOp {
    pub n: usize,
    pub terms: BTreeMap<Vec<i32>, Frac>,
}

impl SymShiftOp {
    pub fn zero(n: usize) -> Self {
        SymShiftOp { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_term(Frac::one(nvars_for(n)), vec![0; n])
    }

    pub fn from_term(c: Frac, nu: Vec<i32>) -> Self {
        let n = nu.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(nu, c);
        }
        SymShiftOp { n, terms }
    }

    pub fn mult(n: usize, c: Frac) -> Self {
        Self::from_term(c, vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, nu: Vec<i32>, c: Frac) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(nu) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &SymShiftOp) -> SymShiftOp {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymShiftOp) -> SymShiftOp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymShiftOp {
        SymShiftOp {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Frac) -> SymShiftOp {
        if s.is_zero() {
            return SymShiftOp::zero(self.n);
        }
        SymShiftOp {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.mul(s))).collect(),
        }
    }

    pub fn compose(&self, other: &SymShiftOp) -> SymShiftOp {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = SymShiftOp::zero(n);
        for (nu1, c1) in &self.terms {
            for (nu2, c2) in &other.terms {
                let nu: Vec<i32> = (0..n).map(|j| nu1[j] + nu2[j]).collect();
                let c = c1.mul(&transform(c2, n, None, nu1));
                out.insert(nu, c);
            }
        }
        out
    }

    pub fn commutator(&self, other: &SymShiftOp) -> SymShiftOp {
        self.compose(other).sub(&other.compose(self))
    }

    /// q-commutator [A, B]_{q^k} = A B − q^k B A.
    pub fn q_commutator(&self, other: &SymShiftOp, k: i32) -> SymShiftOp {
        let nv = nvars_for(self.n);
        self.compose(other)
            .sub(&other.compose(self).scale(&crate::coeff::qpow(nv, k)))
    }

    pub fn act(&self, f: &Frac) -> Frac {
        let mut acc = Frac::zero(f.nvars());
        for (nu, c) in &self.terms {
            acc = acc.add(&c.mul(&transform(f, self.n, None, nu)));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> SymShiftOp {
        let mut acc = SymShiftOp::identity(self.n);
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// View as a `PermShiftOp` with identity permutations.
    pub fn to_perm(&self) -> PermShiftOp {
        let id: Vec<usize> = (0..self.n).collect();
        PermShiftOp {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(nu, c)| ((id.clone(), nu.clone()), c.clone()))
                .collect(),
        }
    }
}

/// An operator together with its large-t growth exponent: the pair represents
/// the statement that t^{-s}·op has a finite limit as t -> ∞, i.e. every
/// coefficient has half-degree (in t^{1/2}) at most 2s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledOp {
    pub op: SymShiftOp,
    pub t_scale: i64,
}

/// A coefficient of a t -> ∞ limit grew faster than the declared scale.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("divergent limit at shift {nu:?}: coefficient {witness} exceeds t-scale")]
pub struct Divergence {
    pub nu: Vec<i32>,
    pub witness: String,
}

/// Coefficientwise limit of t^{-s}·op as t -> ∞. Coefficients with
/// half-degree exactly 2s contribute their leading parts; smaller half-degrees
/// vanish; larger ones are divergence errors.
pub fn t_infty(scaled: &ScaledOp) -> Result<SymShiftOp, Divergence> {
    let s = scaled.t_scale;
    let mut out = SymShiftOp::zero(scaled.op.n);
    for (nu, c) in &scaled.op.terms {
        if let Some((halfdeg, lead)) = c.t_leading() {
            if halfdeg > 2 * s {
                return Err(Divergence {
                    nu: nu.clone(),
                    witness: crate::coeff::render(c, &crate::coeff::xnames(scaled.op.n)),
                });
            }
            if halfdeg == 2 * s {
                out.insert(nu.clone(), lead);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, qpow, xvar};
    use crate::polyx::nvars_for;

    fn gamma(n: usize, i: usize) -> SymShiftOp {
        let mut nu = vec![0; n];
        nu[i - 1] = 1;
        SymShiftOp::from_term(Frac::one(nvars_for(n)), nu)
    }

    #[test]
    fn gamma_action() {
        let n = 2;
        let nv = nvars_for(n);
        let f = xvar(nv, 1).mul(&xvar(nv, 2));
        // Γ_1 (x1 x2) = q x1 x2
        assert_eq!(gamma(n, 1).act(&f), q(nv).mul(&f));
    }

    #[test]
    fn perm_action_and_compose_consistency() {
        let n = 3;
        let nv = nvars_for(n);
        let s1 = PermShiftOp::from_term(Frac::one(nv), vec![1, 0, 2], vec![0; n]);
        assert_eq!(s1.act(&xvar(nv, 1)), xvar(nv, 2));
        // act(compose(A,B), f) = act(A, act(B, f)) on a sample of operators
        let g2 = gamma(n, 2).to_perm();
        let c = PermShiftOp::from_term(
            xvar(nv, 1).div(&xvar(nv, 1).sub(&xvar(nv, 3))),
            vec![2, 0, 1],
            vec![1, 0, -1],
        );
        let f = xvar(nv, 1).powi(2).add(&xvar(nv, 3).div(&xvar(nv, 2)));
        for (a, b) in [(&s1, &g2), (&g2, &c), (&c, &s1), (&c, &c)] {
            assert_eq!(a.compose(b).act(&f), a.act(&b.act(&f)));
        }
        // associativity on this triple
        assert_eq!(
            s1.compose(&g2).compose(&c),
            s1.compose(&g2.compose(&c))
        );
    }

    #[test]
    fn single_term_inverse_roundtrip() {
        let n = 3;
        let nv = nvars_for(n);
        let c = PermShiftOp::from_term(
            xvar(nv, 2).div(&xvar(nv, 1).sub(&xvar(nv, 3))),
            vec![2, 0, 1],
            vec![1, 0, -2],
        );
        let inv = c.single_term_inverse();
        assert_eq!(c.compose(&inv), PermShiftOp::identity(n));
        assert_eq!(inv.compose(&c), PermShiftOp::identity(n));
    }

    #[test]
    fn sym_ops_q_commutator() {
        let n = 2;
        let nv = nvars_for(n);
        // Γ_1 x_1 = q x_1 Γ_1, so [Γ_1, x_1·]_{q} = 0.
        let g1 = gamma(n, 1);
        let x1 = SymShiftOp::mult(n, xvar(nv, 1));
        assert!(g1.q_commutator(&x1, 1).is_zero());
        assert!(!g1.commutator(&x1).is_zero());
    }

    #[test]
    fn t_infty_limits() {
        let n = 2;
        let nv = nvars_for(n);
        // op = (t^2 + t q) Γ_1: t^{-2}-scaled limit is Γ_1 with lead coeff 1…
        // coefficient t^2 + t q has halfdeg 4 = 2·2, lead 1; the t q part drops.
        let t = crate::coeff::t(nv);
        let c = t.powi(2).add(&t.mul(&qpow(nv, 1)));
        let op = SymShiftOp::from_term(c, vec![1, 0]);
        let lim = t_infty(&ScaledOp { op: op.clone(), t_scale: 2 }).unwrap();
        assert_eq!(lim, SymShiftOp::from_term(Frac::one(nv), vec![1, 0]));
        // with declared scale 1 it diverges
        assert!(t_infty(&ScaledOp { op, t_scale: 1 }).is_err());
        // strictly smaller degree vanishes in the limit
        let op2 = SymShiftOp::from_term(t.clone(), vec![0, 1]);
        let lim2 = t_infty(&ScaledOp { op: op2, t_scale: 2 }).unwrap();
        assert!(lim2.is_zero());
    }
}
