//! Localizations of equivariant Schubert classes and the nilHecke ring.
//!
//! The torus weights are the a-variables; alpha_i = a_i - a_{i+1}. A class is
//! a finite table w -> Q[a]. The nilHecke ring acts through
//! A_i = alpha_i^{-1}(1 - s_i), with coefficients kept on the left.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::permgroup::Permutation;
use crate::polyring::{Alphabet, Poly, Var};
use crate::schubert;

pub fn alpha(i: i64) -> Poly {
    &Poly::a(i) - &Poly::a(i + 1)
}

/// Root a_i - a_j.
pub fn root(i: i64, j: i64) -> Poly {
    &Poly::a(i) - &Poly::a(j)
}

/// beta_j = s_{i_1}...s_{i_{j-1}}(a_{i_j+1} - a_{i_j}) along a word.
pub fn beta_roots(word: &[i64]) -> Vec<Poly> {
    let mut prefix = Permutation::identity();
    let mut out = Vec::with_capacity(word.len());
    for &i in word {
        out.push(root(prefix.apply(i + 1), prefix.apply(i)));
        prefix = prefix.mul_s_right(i);
    }
    out
}

/// Billey's formula along a given reduced word of w.
pub fn billey_with_word(v: &Permutation, word: &[i64]) -> Poly {
    let lv = v.length();
    let betas = beta_roots(word);
    // partial reduced subwords: product -> summed weight
    let mut states: HashMap<Permutation, Poly> = HashMap::from([(Permutation::identity(), Poly::one())]);
    for (&i, beta) in word.iter().zip(&betas) {
        let mut next = states.clone();
        for (u, f) in &states {
            if u.length() >= lv || u.has_right_descent(i) {
                continue;
            }
            let us = u.mul_s_right(i);
            let e = next.entry(us).or_default();
            *e += &(f * beta);
        }
        states = next;
    }
    states.remove(v).unwrap_or_default()
}

/// e^v_w by Billey's formula on the lexicographically least reduced word of w.
pub fn billey_localization(v: &Permutation, w: &Permutation) -> Poly {
    billey_with_word(v, &w.reduced_word())
}

/// e^v_w from the right descent recurrence.
pub fn localization_recurrence(v: &Permutation, w: &Permutation) -> Poly {
    let mut memo = HashMap::new();
    right_rec(v, w, &mut memo)
}

fn right_rec(v: &Permutation, w: &Permutation, memo: &mut HashMap<(Permutation, Permutation), Poly>) -> Poly {
    if w.is_identity() {
        return if v.is_identity() { Poly::one() } else { Poly::zero() };
    }
    if v.length() > w.length() {
        return Poly::zero();
    }
    let key = (v.clone(), w.clone());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let i = w.right_descents()[0];
    let ws = w.mul_s_right(i);
    let mut out = right_rec(v, &ws, memo);
    if v.has_right_descent(i) {
        let wa = root(w.apply(i), w.apply(i + 1));
        out += &(&wa * &right_rec(&v.mul_s_right(i), &ws, memo));
    }
    memo.insert(key, out.clone());
    out
}

/// e^v_w from the left descent recurrence.
pub fn localization_recurrence_left(v: &Permutation, w: &Permutation) -> Poly {
    let mut memo = HashMap::new();
    left_rec(v, w, &mut memo)
}

fn left_rec(v: &Permutation, w: &Permutation, memo: &mut HashMap<(Permutation, Permutation), Poly>) -> Poly {
    if w.is_identity() {
        return if v.is_identity() { Poly::one() } else { Poly::zero() };
    }
    if v.length() > w.length() {
        return Poly::zero();
    }
    let key = (v.clone(), w.clone());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let i = w.left_descents()[0];
    let sw = w.mul_s_left(i);
    let mut out = left_rec(v, &sw, memo).swap(Alphabet::A, i);
    if v.has_left_descent(i) {
        let t = left_rec(&v.mul_s_left(i), &sw, memo).swap(Alphabet::A, i);
        out -= &(&alpha(i) * &t);
    }
    memo.insert(key, out.clone());
    out
}

/// xi^v|_v: product of a_{v(i)} - a_{v(j)} over inversions i < j.
pub fn diagonal_localization(v: &Permutation) -> Poly {
    let Some((lo, hi)) = v.moved_range() else {
        return Poly::one();
    };
    let mut out = Poly::one();
    for i in lo..=hi {
        for j in i + 1..=hi {
            if v.apply(i) > v.apply(j) {
                out *= &root(v.apply(i), v.apply(j));
            }
        }
    }
    out
}

/// Back stable double Schubert polynomial of v evaluated at x_i = a_{w(i)}.
pub fn localize_schubert(v: &Permutation, w: &Permutation) -> Poly {
    if v.is_identity() {
        return Poly::one();
    }
    let (vlo, vhi) = v.moved_range().unwrap();
    let (lo, hi) = match w.moved_range() {
        Some((a, b)) => (a.min(vlo), b.max(vhi)),
        None => (vlo, vhi),
    };
    let window = schubert::backstable_window(v, lo, hi, true).expect("window contains the support");
    window.substitute_with(|x| (x.alpha == Alphabet::X).then(|| Poly::a(w.apply(x.idx))))
}

/// t_{ij} w: swap the values i and j.
pub fn reflect_left(i: i64, j: i64, w: &Permutation) -> Permutation {
    Permutation::identity().swap_positions(i, j).compose(w)
}

/// A finitely supported table of localizations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedClass {
    pub label: Option<Permutation>,
    pub entries: BTreeMap<Permutation, Poly>,
}

impl LocalizedClass {
    pub fn new(label: Option<Permutation>, entries: BTreeMap<Permutation, Poly>) -> Self {
        LocalizedClass { label, entries }
    }

    /// xi^v restricted to every permutation of [lo, hi].
    pub fn schubert(v: &Permutation, lo: i64, hi: i64) -> Result<Self> {
        if let Some((a, b)) = v.moved_range() {
            if a < lo || b > hi {
                return domain(format!("{v} is not supported in [{lo},{hi}]"));
            }
        }
        let entries = Permutation::all_of_interval(lo, hi)
            .into_iter()
            .map(|w| {
                let e = billey_localization(v, &w);
                (w, e)
            })
            .collect();
        Ok(LocalizedClass { label: Some(v.clone()), entries })
    }

    /// The class of a polynomial in a: constant at every point.
    pub fn constant(p: &Poly, lo: i64, hi: i64) -> Self {
        let entries = Permutation::all_of_interval(lo, hi).into_iter().map(|w| (w, p.clone())).collect();
        LocalizedClass { label: None, entries }
    }

    pub fn get(&self, w: &Permutation) -> Result<&Poly> {
        self.entries.get(w).ok_or_else(|| Error::Domain(format!("{w} is outside the stored support")))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (w, f) in &self.entries {
            entries.insert(w.clone(), f * other.get(w)?);
        }
        Ok(LocalizedClass { label: None, entries })
    }

    /// (A_i . psi)|_w = w(alpha_i)^{-1}(psi|_w - psi|_{w s_i}).
    pub fn right_dd(&self, i: i64) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (w, f) in &self.entries {
            let diff = f - self.get(&w.mul_s_right(i))?;
            let q = diff.exact_divide(&root(w.apply(i), w.apply(i + 1)))?;
            entries.insert(w.clone(), q);
        }
        Ok(LocalizedClass { label: None, entries })
    }

    /// (A_i . psi)|_w = alpha_i^{-1}(psi|_w - s_i(psi|_{s_i w})).
    pub fn left_dd(&self, i: i64) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (w, f) in &self.entries {
            let diff = f - &self.get(&w.mul_s_left(i))?.swap(Alphabet::A, i);
            entries.insert(w.clone(), diff.exact_divide(&alpha(i))?);
        }
        Ok(LocalizedClass { label: None, entries })
    }

    /// <psi, A_w> = (A_{i_1} . ... (A_{i_l} . psi))|_id.
    pub fn pair(&self, w: &Permutation) -> Result<Poly> {
        let mut c = self.clone();
        for &i in w.reduced_word().iter().rev() {
            c = c.right_dd(i)?;
        }
        c.get(&Permutation::identity()).cloned()
    }

    /// Every failing (i, j, w) among reflections inside the support.
    pub fn gkm_failures(&self) -> Vec<(i64, i64, Permutation)> {
        let mut out = Vec::new();
        for w in self.entries.keys() {
            let Some((lo, hi)) = self.support_range() else { break };
            for i in lo..=hi {
                for j in i + 1..=hi {
                    if let Ok(false) = gkm_check(self, (i, j), w) {
                        out.push((i, j, w.clone()));
                    }
                }
            }
        }
        out
    }

    fn support_range(&self) -> Option<(i64, i64)> {
        self.entries.keys().filter_map(|w| w.moved_range()).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)))
    }
}

/// Does a_i - a_j divide c|_{t_{ij} w} - c|_w?
pub fn gkm_check(c: &LocalizedClass, root: (i64, i64), w: &Permutation) -> Result<bool> {
    let (i, j) = root;
    let diff = c.get(&reflect_left(i, j, w))? - c.get(w)?;
    let vj = Var::a(j);
    let at = diff.substitute_with(|v| (v == vj).then(|| Poly::a(i)));
    Ok(at.is_zero())
}

/// sum_u f_u A_u with coefficients on the left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilHeckeElement {
    pub terms: BTreeMap<Permutation, Poly>,
}

impl NilHeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Poly::one())
    }

    pub fn scalar(f: Poly) -> Self {
        Self::term(Permutation::identity(), f)
    }

    /// f A_u.
    pub fn term(u: Permutation, f: Poly) -> Self {
        let mut e = Self::zero();
        e.add_term(u, &f);
        e
    }

    pub fn a(u: &Permutation) -> Self {
        Self::term(u.clone(), Poly::one())
    }

    /// s_i = 1 - alpha_i A_i.
    pub fn reflection(i: i64) -> Self {
        let mut e = Self::one();
        e.add_term(Permutation::s(i), &-alpha(i));
        e
    }

    pub fn add_term(&mut self, u: Permutation, f: &Poly) {
        let e = self.terms.entry(u).or_default();
        *e += f;
        let zero = e.is_zero();
        if zero {
            self.terms.retain(|_, f| !f.is_zero());
        }
    }

    pub fn coeff(&self, u: &Permutation) -> Poly {
        self.terms.get(u).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (u, f) in &other.terms {
            out.add_term(u.clone(), f);
        }
        out
    }

    pub fn scale(&self, f: &Poly) -> Self {
        let mut out = Self::zero();
        for (u, g) in &self.terms {
            out.add_term(u.clone(), &(f * g));
        }
        out
    }

    /// A_i * self, using A_i f = A_i(f) + s_i(f) A_i.
    pub fn left_mul_ai(&self, i: i64) -> Self {
        let mut out = Self::zero();
        for (x, f) in &self.terms {
            out.add_term(x.clone(), &f.divided_difference(Alphabet::A, i));
            if !x.has_left_descent(i) {
                out.add_term(x.mul_s_left(i), &f.swap(Alphabet::A, i));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        nilhecke_mul(self, other)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let terms = self.terms.iter().filter(|(u, _)| u.length() <= cap).map(|(u, f)| (u.clone(), f.clone())).collect();
        NilHeckeElement { terms }
    }
}

pub fn nilhecke_mul(x: &NilHeckeElement, y: &NilHeckeElement) -> NilHeckeElement {
    let mut out = NilHeckeElement::zero();
    for (u, f) in &x.terms {
        let mut acc = y.clone();
        for &i in u.reduced_word().iter().rev() {
            acc = acc.left_mul_ai(i);
        }
        out = out.add(&acc.scale(f));
    }
    out
}

/// w = prod (1 - alpha_i A_i) over a reduced word, dropping A_v with l(v) > cap.
pub fn expand_group_element(w: &Permutation, cap: Option<usize>) -> NilHeckeElement {
    let cap = cap.unwrap_or(usize::MAX);
    let mut out = NilHeckeElement::one();
    for i in w.reduced_word() {
        out = nilhecke_mul(&out, &NilHeckeElement::reflection(i)).truncate(cap);
    }
    out
}

/// Elements of A tensor_{Q[a]} A; coefficients pass freely across the tensor sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NilHeckeTensor {
    pub terms: BTreeMap<(Permutation, Permutation), Poly>,
}

impl NilHeckeTensor {
    pub fn add_term(&mut self, u: Permutation, v: Permutation, f: &Poly) {
        let e = self.terms.entry((u, v)).or_default();
        *e += f;
        self.terms.retain(|_, f| !f.is_zero());
    }

    pub fn tensor(x: &NilHeckeElement, y: &NilHeckeElement) -> Self {
        let mut out = Self::default();
        for (u, f) in &x.terms {
            for (v, g) in &y.terms {
                out.add_term(u.clone(), v.clone(), &(f * g));
            }
        }
        out
    }
}

/// Everything below w in Bruhat order.
pub fn bruhat_interval(w: &Permutation) -> Vec<Permutation> {
    let mut set = std::collections::BTreeSet::from([Permutation::identity()]);
    for i in w.reduced_word() {
        let next: Vec<_> = set.iter().map(|u| u.mul_s_right(i)).collect();
        set.extend(next);
    }
    let mut out: Vec<_> = set.into_iter().filter(|u| Permutation::bruhat_leq(u, w)).collect();
    out.sort_by_key(|u| u.length());
    out
}

/// c^w_{uv} in xi^u xi^v = sum_w c^w_{uv} xi^w, for all u, v below w.
pub fn localization_structure_constants(w: &Permutation) -> Result<BTreeMap<(Permutation, Permutation), Poly>> {
    let interval = bruhat_interval(w);
    let mut loc: HashMap<(Permutation, Permutation), Poly> = HashMap::new();
    for v in &interval {
        for x in &interval {
            loc.insert((v.clone(), x.clone()), billey_localization(v, x));
        }
    }
    let mut out = BTreeMap::new();
    for u in &interval {
        for v in &interval {
            // c^x for x in the interval, by increasing length
            let mut c: BTreeMap<Permutation, Poly> = BTreeMap::new();
            for x in &interval {
                let mut rest = &loc[&(u.clone(), x.clone())] * &loc[&(v.clone(), x.clone())];
                for (y, cy) in &c {
                    rest -= &(cy * &loc[&(y.clone(), x.clone())]);
                }
                let cx = rest.exact_divide(&loc[&(x.clone(), x.clone())])?;
                if !cx.is_zero() {
                    c.insert(x.clone(), cx);
                }
            }
            if let Some(cw) = c.remove(w) {
                out.insert((u.clone(), v.clone()), cw);
            }
        }
    }
    Ok(out)
}

/// Delta(A_w) = sum c^w_{uv} A_u (x) A_v, extended Q[a]-linearly.
pub fn nilhecke_coproduct(x: &NilHeckeElement) -> Result<NilHeckeTensor> {
    let mut out = NilHeckeTensor::default();
    for (w, f) in &x.terms {
        for ((u, v), c) in localization_structure_constants(w)? {
            out.add_term(u, v, &(f * &c));
        }
    }
    Ok(out)
}
