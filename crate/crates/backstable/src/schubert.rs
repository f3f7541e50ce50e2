//! Schubert polynomials: single, double, negative, windowed back stable, and
//! the finite coproduct expansions that serve as canonical forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::doublesym::{self, DoubleSymFunc};
use crate::error::{domain, Result};
use crate::permgroup::{Partition, Permutation};
use crate::pipedream;
use crate::polyring::{Alphabet, Monomial, Poly, Var, Q};
use crate::symfunc::{Basis, SymFunc};

type Memo = RwLock<HashMap<Permutation, Poly>>;

fn memo_get(cell: &'static OnceLock<Memo>, w: &Permutation, f: impl FnOnce() -> Poly) -> Poly {
    let m = cell.get_or_init(Default::default);
    if let Some(p) = m.read().unwrap().get(w) {
        return p.clone();
    }
    let p = f();
    m.write().unwrap().insert(w.clone(), p.clone());
    p
}

fn require_plus(w: &Permutation) -> Result<()> {
    if w.in_s_plus() {
        Ok(())
    } else {
        domain(format!("{w} does not fix the nonpositive integers"))
    }
}

/// S_w for w in S_+, by the transition recursion on the last descent.
pub fn schubert_single(w: &Permutation) -> Result<Poly> {
    require_plus(w)?;
    Ok(transition(w))
}

fn transition(w: &Permutation) -> Poly {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    if w.is_identity() {
        return Poly::one();
    }
    memo_get(&MEMO, w, || {
        let r = *w.right_descents().last().expect("non-identity has a descent");
        let (_, hi) = w.moved_range().unwrap();
        let s = (r + 1..=hi).filter(|&j| w.apply(j) < w.apply(r)).max().unwrap();
        let v = w.swap_positions(r, s);
        let mut out = &Poly::x(r) * &transition(&v);
        let vr = v.apply(r);
        for i in 1..r {
            let vi = v.apply(i);
            if vi < vr && !(i + 1..r).any(|k| vi < v.apply(k) && v.apply(k) < vr) {
                out += &transition(&v.swap_positions(i, r));
            }
        }
        out
    })
}

fn staircase_word_apply(top: Poly, w: &Permutation, n: i64) -> Poly {
    // S_w = A_{w^{-1} w0} applied to the top class
    let w0 = Permutation::from_fn(1, n, |i| n + 1 - i).unwrap();
    let u = w.inverse().compose(&w0);
    let mut f = top;
    for &i in u.reduced_word().iter().rev() {
        f = f.divided_difference(Alphabet::X, i);
    }
    f
}

fn sn_size(w: &Permutation) -> i64 {
    w.moved_range().map_or(1, |(_, hi)| hi.max(1))
}

/// S_w by divided differences from x_1^{n-1} x_2^{n-2} ... x_{n-1}.
pub fn schubert_dd(w: &Permutation) -> Result<Poly> {
    require_plus(w)?;
    let n = sn_size(w);
    let top = Poly::term(Monomial::from_pairs((1..n).map(|i| (Var::x(i), (n - i) as u32))), Q::one());
    Ok(staircase_word_apply(top, w, n))
}

/// Billey-Jockusch-Stanley: sum over reduced words and compatible sequences.
pub fn schubert_bjs(w: &Permutation) -> Result<Poly> {
    require_plus(w)?;
    let mut out = Poly::zero();
    for word in w.reduced_words() {
        let mut b = Vec::with_capacity(word.len());
        bjs_rec(&word, &mut b, &mut out);
    }
    Ok(out)
}

fn bjs_rec(a: &[i64], b: &mut Vec<i64>, out: &mut Poly) {
    let k = b.len();
    if k == a.len() {
        out.add_term(Monomial::from_pairs(b.iter().map(|&i| (Var::x(i), 1))), Q::one());
        return;
    }
    let lo = match k {
        0 => 1,
        _ if a[k - 1] < a[k] => b[k - 1] + 1,
        _ => b[k - 1],
    };
    for v in lo..=a[k] {
        b.push(v);
        bjs_rec(a, b, out);
        b.pop();
    }
}

/// S_w(x;a) for w in S_+, via the expansion into single Schubert polynomials.
pub fn schubert_double(w: &Permutation) -> Result<Poly> {
    require_plus(w)?;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    Ok(memo_get(&MEMO, w, || double_via_single(w)))
}

/// sum over w = uv of (-1)^{l(u)} S_{u^{-1}}(a) S_v(x).
pub fn double_via_single(w: &Permutation) -> Poly {
    let mut out = Poly::zero();
    for (u, v) in w.factor_pairs() {
        let su = to_a(&transition(&u.inverse()));
        let t = &su * &transition(&v);
        if u.length() % 2 == 1 {
            out -= &t;
        } else {
            out += &t;
        }
    }
    out
}

/// S_w(x;a) by divided differences from prod_{i+j<=n} (x_i - a_j). Exponential in n.
pub fn schubert_double_dd(w: &Permutation) -> Result<Poly> {
    require_plus(w)?;
    let n = sn_size(w);
    let mut top = Poly::one();
    for i in 1..n {
        for j in 1..=n - i {
            top *= &(&Poly::x(i) - &Poly::a(j));
        }
    }
    Ok(staircase_word_apply(top, w, n))
}

/// Rename x to a.
pub fn to_a(p: &Poly) -> Poly {
    p.map_vars(|v| if v.alpha == Alphabet::X { (Var::a(v.idx), false) } else { (v, false) })
}

/// omega(S_{omega(w)}) for w in S_-.
pub fn schubert_negative(w: &Permutation) -> Result<Poly> {
    if !w.in_s_minus() {
        return domain(format!("{w} does not fix the positive integers"));
    }
    Ok(transition(&w.omega()).omega_vars())
}

pub fn schubert_negative_double(w: &Permutation) -> Result<Poly> {
    if !w.in_s_minus() {
        return domain(format!("{w} does not fix the positive integers"));
    }
    Ok(schubert_double(&w.omega())?.omega_vars())
}

/// S_w for w in S_{!=0}: product of its negative and positive parts.
pub fn schubert_nonzero(w: &Permutation, doubled: bool) -> Result<Poly> {
    let Some((neg, pos)) = w.split_nonzero() else {
        return domain(format!("{w} uses s_0"));
    };
    if doubled {
        Ok(&schubert_negative_double(&neg)? * &schubert_double(&pos)?)
    } else {
        Ok(&schubert_negative(&neg)? * &schubert_single(&pos)?)
    }
}

/// S_w^{[p,q]} = gamma^{p-1}(S_{gamma^{1-p} w}), shifting a as well when doubled.
pub fn backstable_window(w: &Permutation, p: i64, q: i64, doubled: bool) -> Result<Poly> {
    if p > q {
        return domain(format!("empty window [{p},{q}]"));
    }
    if let Some((lo, hi)) = w.moved_range() {
        if lo < p || hi > q {
            return domain(format!("window [{p},{q}] does not contain the support of {w}"));
        }
    }
    let ws = w.shift(1 - p);
    if doubled {
        Ok(schubert_double(&ws)?.shift_vars(&[Alphabet::X, Alphabet::A], p - 1))
    } else {
        Ok(transition(&ws).shift_vars(&[Alphabet::X], p - 1))
    }
}

/// Stanley symmetric function in the Schur basis, from Edelman-Greene insertion.
pub fn stanley(w: &Permutation) -> SymFunc {
    let counts = pipedream::eg_insertion_counts(w);
    SymFunc::from_terms(Basis::Schur, counts.into_iter().map(|(l, c)| (l, Poly::int(c as i64))))
}

/// F_w read off a finite window: shift w into S_+, where setting x_i = 0 for i > 0
/// kills every S_v with v != id, and keep l(w) nonpositive variables.
pub fn stanley_via_window(w: &Permutation) -> SymFunc {
    let n = w.length().max(1) as i64;
    let (lo, _) = w.moved_range().unwrap_or((1, 1));
    let ws = w.shift(1 - lo);
    let hi = ws.moved_range().map_or(1, |(_, h)| h);
    let poly = backstable_window(&ws, 1 - n, hi, false).expect("window contains support");
    let cut = poly.substitute_with(|v| if v.idx > 0 { Some(Poly::zero()) } else { None });
    SymFunc::schur_expand_finite(&cut, n as usize).expect("Stanley functions are symmetric")
}

/// b S_w = sum over w = uv, v in S_{!=0}, of F_u S_v, stored as (lambda, v) -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BackStableRep {
    pub terms: BTreeMap<(Partition, Permutation), Q>,
}

/// As [`BackStableRep`] with F_u(x||a) in the double Schur basis and S_v(x;a).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DoubleBackStableRep {
    pub terms: BTreeMap<(Partition, Permutation), Poly>,
}

pub fn backstable_canonical(w: &Permutation) -> BackStableRep {
    let mut terms: BTreeMap<(Partition, Permutation), Q> = BTreeMap::new();
    for (u, v) in w.factor_pairs() {
        if !v.in_s_nonzero() {
            continue;
        }
        for (l, c) in stanley(&u).coeffs() {
            let e = terms.entry((l.clone(), v.clone())).or_insert_with(Q::zero);
            *e += c.constant_term();
        }
    }
    terms.retain(|_, c| !c.is_zero());
    BackStableRep { terms }
}

pub fn backstable_double_canonical(w: &Permutation) -> DoubleBackStableRep {
    let mut terms: BTreeMap<(Partition, Permutation), Poly> = BTreeMap::new();
    for (u, v) in w.factor_pairs() {
        if !v.in_s_nonzero() {
            continue;
        }
        for (l, c) in doublesym::double_stanley(&u).coeffs() {
            *terms.entry((l.clone(), v.clone())).or_default() += c;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    DoubleBackStableRep { terms }
}

impl BackStableRep {
    /// Truncation to x_p, ..., x_q: s_lambda in x_p..x_0 times S_v.
    pub fn window(&self, p: i64, q: i64) -> Result<Poly> {
        let vars: Vec<Var> = (p..=0).map(Var::x).collect();
        let mut out = Poly::zero();
        for ((l, v), c) in &self.terms {
            if let Some((lo, hi)) = v.moved_range() {
                if lo < p || hi > q {
                    return domain(format!("window [{p},{q}] too small for {v}"));
                }
            }
            let s = crate::symfunc::schur_polynomial(l, &vars);
            out += &(&s * &schubert_nonzero(v, false)?).scale(c);
        }
        Ok(out)
    }

    /// Apply omega: s_lambda -> s_lambda' and S_v -> S_{omega(v)}.
    pub fn omega(&self) -> Self {
        let mut terms = BTreeMap::new();
        for ((l, v), c) in &self.terms {
            terms.insert((l.conjugate(), v.omega()), c.clone());
        }
        BackStableRep { terms }
    }
}

impl DoubleBackStableRep {
    /// Image in x_{1-n..n}, a_{1-n..n}: s_lambda(x||a) goes to its eps-truncation.
    pub fn eps_window(&self, n: usize) -> Result<Poly> {
        let mut out = Poly::zero();
        for ((l, v), c) in &self.terms {
            let s = doublesym::eps_truncate(&DoubleSymFunc::schur(l.clone()), n)?;
            out += &(&(&s * &schubert_nonzero(v, true)?) * c);
        }
        Ok(out)
    }

    /// eta_delta on the coefficients: a_i -> delta for i > 0, 0 otherwise.
    pub fn delta_specialize(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let d = eta_delta(c);
            if !d.is_zero() {
                terms.insert(k.clone(), d);
            }
        }
        DoubleBackStableRep { terms }
    }
}

/// a_i -> delta for i > 0, a_i -> 0 for i <= 0.
pub fn eta_delta(p: &Poly) -> Poly {
    p.substitute_with(|v| {
        if v.alpha == Alphabet::A && !v.is_delta() {
            Some(if v.idx > 0 { Poly::delta() } else { Poly::zero() })
        } else {
            None
        }
    })
}

pub fn delta_schubert(w: &Permutation) -> DoubleBackStableRep {
    backstable_double_canonical(w).delta_specialize()
}

/// sum over w = uv of (-1)^{l(u)} S_{u^{-1}}(a) S_v(a); should be 1 at id and 0 otherwise.
pub fn cancellation_sum(w: &Permutation) -> Result<Poly> {
    require_plus(w)?;
    let mut out = Poly::zero();
    for (u, v) in w.factor_pairs() {
        let t = &to_a(&transition(&u.inverse())) * &to_a(&transition(&v));
        if u.length() % 2 == 1 {
            out -= &t;
        } else {
            out += &t;
        }
    }
    Ok(out)
}

pub fn cancellation_check(w: &Permutation) -> Result<bool> {
    let expected = if w.is_identity() { Poly::one() } else { Poly::zero() };
    Ok(cancellation_sum(w)? == expected)
}

/// Reverse lexicographic order on x-monomials: the highest index decides first.
pub fn revlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let fa: Vec<_> = a.factors().iter().rev().collect();
    let fb: Vec<_> = b.factors().iter().rev().collect();
    for (x, y) in fa.iter().zip(&fb) {
        if x.0 != y.0 {
            return x.0.cmp(&y.0);
        }
        if x.1 != y.1 {
            return x.1.cmp(&y.1);
        }
    }
    fa.len().cmp(&fb.len())
}

pub fn leading_revlex(p: &Poly) -> Option<(Monomial, Q)> {
    p.terms().max_by(|a, b| revlex_cmp(a.0, b.0)).map(|(m, c)| (m.clone(), c.clone()))
}

/// Expand a polynomial in x_1, x_2, ... into Schubert polynomials by peeling leading codes.
pub fn expand_in_schubert(p: &Poly) -> Result<BTreeMap<Permutation, Q>> {
    if !p.uses_only(&[Alphabet::X]) || p.vars().iter().any(|v| v.idx < 1) {
        return domain("expansion needs a polynomial in x_1, x_2, ...");
    }
    let mut rem = p.clone();
    let mut out = BTreeMap::new();
    while let Some((m, c)) = leading_revlex(&rem) {
        let code: BTreeMap<i64, i64> = m.factors().iter().map(|&(v, e)| (v.idx, e as i64)).collect();
        let w = Permutation::from_code(&code)?;
        rem -= &transition(&w).scale(&c);
        out.insert(w, c);
    }
    Ok(out)
}

/// Back stable structure constants c^w_{uv}, computed after shifting into S_+.
pub fn structure_constants(u: &Permutation, v: &Permutation) -> BTreeMap<Permutation, Q> {
    let total = (u.length() + v.length()) as i64;
    let lo = [u.min_support(), v.min_support()].into_iter().flatten().min();
    let Some(lo) = lo else {
        return BTreeMap::from([(Permutation::identity(), Q::one())]);
    };
    let n = total + 1 - lo;
    let prod = &transition(&u.shift(n)) * &transition(&v.shift(n));
    expand_in_schubert(&prod)
        .expect("product of Schubert polynomials")
        .into_iter()
        .map(|(w, c)| (w.shift(-n), c))
        .collect()
}

/// JSON form of a canonical expansion.
#[derive(Serialize, Deserialize)]
pub struct RepTermJson<C> {
    pub partition: Partition,
    pub perm: Permutation,
    pub coeff: C,
}

impl BackStableRep {
    pub fn to_json(&self) -> Vec<RepTermJson<Poly>> {
        self.terms
            .iter()
            .map(|((l, v), c)| RepTermJson { partition: l.clone(), perm: v.clone(), coeff: Poly::constant(c.clone()) })
            .collect()
    }
}

impl DoubleBackStableRep {
    pub fn to_json(&self) -> Vec<RepTermJson<Poly>> {
        self.terms
            .iter()
            .map(|((l, v), c)| RepTermJson { partition: l.clone(), perm: v.clone(), coeff: c.clone() })
            .collect()
    }

    pub fn from_json(terms: Vec<RepTermJson<Poly>>) -> Self {
        let mut out = BTreeMap::new();
        for t in terms {
            if !t.coeff.is_zero() {
                out.insert((t.partition, t.perm), t.coeff);
            }
        }
        DoubleBackStableRep { terms: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn single_examples() {
        assert_eq!(schubert_single(&p("1:3,2,1")).unwrap(), poly("x_1^2*x_2"));
        assert_eq!(schubert_single(&Permutation::identity()).unwrap(), Poly::one());
        assert_eq!(schubert_single(&Permutation::s(2)).unwrap(), poly("x_1 + x_2"));
        assert!(schubert_single(&Permutation::s(0)).is_err());
    }

    #[test]
    fn three_constructions_agree_on_s4() {
        for w in Permutation::all_of_sn(4) {
            let t = schubert_single(&w).unwrap();
            assert_eq!(t, schubert_dd(&w).unwrap(), "{w}");
            assert_eq!(t, schubert_bjs(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn double_examples() {
        assert_eq!(schubert_double(&p("1:3,2,1")).unwrap(), poly("x_1 - a_1") * poly("x_1 - a_2") * poly("x_2 - a_1"));
        assert_eq!(schubert_double(&Permutation::s(1)).unwrap(), poly("x_1 - a_1"));
        for w in Permutation::all_of_sn(4) {
            assert_eq!(schubert_double(&w).unwrap(), schubert_double_dd(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn negative_examples() {
        assert_eq!(schubert_negative(&p("s:-3,-2,-1")).unwrap(), poly("-x_0^3"));
        assert_eq!(schubert_negative_double(&Permutation::s(-1)).unwrap(), poly("a_0 - x_0"));
    }

    #[test]
    fn windows() {
        assert_eq!(backstable_window(&Permutation::s(0), 0, 1, true).unwrap(), poly("x_0 - a_0"));
        assert_eq!(backstable_window(&Permutation::identity(), -3, 2, true).unwrap(), Poly::one());
        assert!(backstable_window(&Permutation::s(0), 1, 2, false).is_err());
        // widening only adds monomials
        let s1 = Permutation::s(1);
        let w1 = backstable_window(&s1, 1, 2, false).unwrap();
        let w0 = backstable_window(&s1, 0, 2, false).unwrap();
        let wm = backstable_window(&s1, -1, 2, false).unwrap();
        assert_eq!(w0.filter_terms(|m| m.factors().iter().all(|f| f.0.idx >= 1)), w1);
        assert_eq!(wm.filter_terms(|m| m.factors().iter().all(|f| f.0.idx >= 0)), w0);
    }

    #[test]
    fn stanley_agrees_with_window_oracle() {
        for w in Permutation::all_of_interval(-1, 2) {
            assert_eq!(stanley(&w), stanley_via_window(&w), "{w}");
        }
        assert_eq!(stanley(&p("s:1,2,1")), SymFunc::schur("2,1".parse().unwrap()));
    }

    #[test]
    fn canonical_forms() {
        let lam: Partition = "2,1".parse().unwrap();
        let rep = backstable_canonical(&lam.grassmannian());
        assert_eq!(rep.terms.len(), 1);
        assert!(rep.terms.contains_key(&(lam.clone(), Permutation::identity())));
        let rep = backstable_canonical(&Permutation::s(1));
        assert_eq!(rep.terms.len(), 2);
        assert_eq!(rep.window(-1, 2).unwrap(), backstable_window(&Permutation::s(1), -1, 2, false).unwrap());
        let id = backstable_canonical(&Permutation::identity());
        assert_eq!(id.terms, BTreeMap::from([((Partition::empty(), Permutation::identity()), Q::one())]));
    }

    #[test]
    fn structure_constant_examples() {
        let s1 = Permutation::s(1);
        let c = structure_constants(&s1, &s1);
        assert_eq!(c, BTreeMap::from([(p("s:2,1"), Q::one()), (p("s:0,1"), Q::one())]));
        let s2 = Permutation::s(2);
        let c2 = structure_constants(&s2, &s2);
        assert_eq!(c2, BTreeMap::from([(p("s:3,2"), Q::one()), (p("s:1,2"), Q::one())]));
        let v = p("s:0,2");
        assert_eq!(structure_constants(&Permutation::identity(), &v), BTreeMap::from([(v, Q::one())]));
    }

    #[test]
    fn cancellation() {
        for w in Permutation::all_of_sn(4) {
            assert!(cancellation_check(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn code_is_revlex_leading() {
        for w in Permutation::all_of_sn(4) {
            let (m, c) = leading_revlex(&schubert_single(&w).unwrap()).unwrap();
            assert!(c.is_one());
            let code: BTreeMap<i64, usize> = m.factors().iter().map(|&(v, e)| (v.idx, e as usize)).collect();
            assert_eq!(code, w.code());
        }
    }
}
