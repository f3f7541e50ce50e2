//! Symmetric functions with coefficients in Q[a], pivoting through power sums.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgroup::Partition;
use crate::polyring::{q, Alphabet, Monomial, Poly, Var, Q};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Schur,
    H,
    E,
    P,
    Monomial,
}

/// A finite expansion sum c_lambda b_lambda in one basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    basis: Basis,
    coeffs: BTreeMap<Partition, Poly>,
}

/// Element of Lambda (x) Lambda, both factors in the same basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSymFunc {
    pub basis: Basis,
    pub coeffs: BTreeMap<(Partition, Partition), Poly>,
}

pub fn z_mu(mu: &Partition) -> BigInt {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut z = BigInt::one();
    for (i, m) in counts {
        for k in 1..=m {
            z *= BigInt::from(i) * BigInt::from(k);
        }
    }
    z
}

/// chi^lambda(mu) by Murnaghan-Nakayama on beta sets.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    let l = lambda.len();
    let beta: Vec<usize> = (1..=l).map(|i| lambda.part(i) + l - i).collect();
    mn_rec(beta, mu.parts())
}

fn mn_rec(beta: Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - k && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - k;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(nb, rest);
    }
    total
}

fn union(a: &Partition, b: &Partition) -> Partition {
    let mut parts: Vec<usize> = a.parts().iter().chain(b.parts()).copied().collect();
    parts.sort_unstable_by(|x, y| y.cmp(x));
    Partition::from_sorted(parts)
}

/// Number of f: parts(mu) -> rows(lambda) with block sums equal to lambda.
fn p_in_m(mu: &Partition, lambda: &Partition) -> i64 {
    fn rec(mu: &[usize], rem: &mut Vec<usize>) -> i64 {
        let Some((&k, rest)) = mu.split_first() else {
            return if rem.iter().all(|&r| r == 0) { 1 } else { 0 };
        };
        let mut total = 0;
        for j in 0..rem.len() {
            if rem[j] >= k {
                rem[j] -= k;
                total += rec(rest, rem);
                rem[j] += k;
            }
        }
        total
    }
    rec(mu.parts(), &mut lambda.parts().to_vec())
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("transition matrix is invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &d;
            inv[col][j] = &inv[col][j] / &d;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    inv
}

struct Transition {
    index: HashMap<Partition, usize>,
    parts: Vec<Partition>,
    /// to_p[i][j]: coefficient of p_{parts[j]} in b_{parts[i]}
    to_p: Vec<Vec<Q>>,
    /// from_p[i][j]: coefficient of b_{parts[j]} in p_{parts[i]}
    from_p: Vec<Vec<Q>>,
}

fn build_transition(basis: Basis, n: usize) -> Transition {
    let parts = Partition::all_of_size(n);
    let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let k = parts.len();
    let inv_z: Vec<Q> = parts.iter().map(|mu| Q::new(BigInt::one(), z_mu(mu))).collect();
    let mut to_p = vec![vec![Q::zero(); k]; k];
    match basis {
        Basis::P => {
            for i in 0..k {
                to_p[i][i] = Q::one();
            }
        }
        Basis::Schur => {
            for (i, l) in parts.iter().enumerate() {
                for (j, mu) in parts.iter().enumerate() {
                    to_p[i][j] = q(character(l, mu)) * &inv_z[j];
                }
            }
        }
        Basis::H | Basis::E => {
            // h_lambda = prod h_{lambda_i}; multiply the single-row expansions
            for (i, l) in parts.iter().enumerate() {
                let mut acc: BTreeMap<Partition, Q> = BTreeMap::from([(Partition::empty(), Q::one())]);
                for &r in l.parts() {
                    let mut next = BTreeMap::new();
                    for mu in Partition::all_of_size(r) {
                        let sign = if basis == Basis::E && (r - mu.len()) % 2 == 1 { -Q::one() } else { Q::one() };
                        let c = sign * Q::new(BigInt::one(), z_mu(&mu));
                        for (nu, d) in &acc {
                            *next.entry(union(nu, &mu)).or_insert_with(Q::zero) += d * &c;
                        }
                    }
                    acc = next;
                }
                for (nu, c) in acc {
                    to_p[i][parts.iter().position(|p| *p == nu).unwrap()] = c;
                }
            }
        }
        Basis::Monomial => {
            let mut pm = vec![vec![Q::zero(); k]; k];
            for (i, mu) in parts.iter().enumerate() {
                for (j, l) in parts.iter().enumerate() {
                    pm[i][j] = q(p_in_m(mu, l));
                }
            }
            to_p = invert(&pm);
        }
    }
    let from_p = match basis {
        Basis::Schur => {
            let mut m = vec![vec![Q::zero(); k]; k];
            for (i, mu) in parts.iter().enumerate() {
                for (j, l) in parts.iter().enumerate() {
                    m[i][j] = q(character(l, mu));
                }
            }
            m
        }
        _ => invert(&to_p),
    };
    Transition { index, parts, to_p, from_p }
}

type Cache = RwLock<HashMap<(Basis, usize), Arc<Transition>>>;

fn transition(basis: Basis, n: usize) -> Arc<Transition> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().unwrap().get(&(basis, n)) {
        return t.clone();
    }
    let t = Arc::new(build_transition(basis, n));
    cache.write().unwrap().entry((basis, n)).or_insert(t).clone()
}

/// Coefficients of b_lambda on the p basis.
pub fn to_power_sums(basis: Basis, lambda: &Partition) -> BTreeMap<Partition, Q> {
    let t = transition(basis, lambda.size());
    let i = t.index[lambda];
    t.parts.iter().zip(&t.to_p[i]).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p.clone(), c.clone())).collect()
}

/// Coefficients of p_mu on the target basis.
pub fn from_power_sum(basis: Basis, mu: &Partition) -> BTreeMap<Partition, Q> {
    let t = transition(basis, mu.size());
    let i = t.index[mu];
    t.parts.iter().zip(&t.from_p[i]).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p.clone(), c.clone())).collect()
}

fn add_into(map: &mut BTreeMap<Partition, Poly>, key: Partition, c: &Poly) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(key.clone()).or_default();
    *e += c;
    if e.is_zero() {
        map.remove(&key);
    }
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, coeffs: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        Self::from_terms(basis, [(lambda, Poly::one())])
    }

    pub fn schur(lambda: Partition) -> Self {
        Self::basis_element(Basis::Schur, lambda)
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, Poly)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (l, c) in terms {
            add_into(&mut coeffs, l, &c);
        }
        SymFunc { basis, coeffs }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Poly> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> Poly {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &Poly) {
        add_into(&mut self.coeffs, lambda, c);
    }

    pub fn convert(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut in_p: BTreeMap<Partition, Poly> = BTreeMap::new();
        for (l, c) in &self.coeffs {
            for (mu, d) in to_power_sums(self.basis, l) {
                add_into(&mut in_p, mu, &c.scale(&d));
            }
        }
        if target == Basis::P {
            return SymFunc { basis: target, coeffs: in_p };
        }
        let mut out = BTreeMap::new();
        for (mu, c) in &in_p {
            for (l, d) in from_power_sum(target, mu) {
                add_into(&mut out, l, &c.scale(&d));
            }
        }
        SymFunc { basis: target, coeffs: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.convert(self.basis).coeffs {
            add_into(&mut out.coeffs, l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().map(|(l, d)| (l.clone(), d * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().map(|(l, d)| (l.clone(), f(d))))
    }

    /// Product, computed in the power-sum basis.
    pub fn multiply(&self, other: &Self) -> Self {
        let a = self.convert(Basis::P);
        let b = other.convert(Basis::P);
        let mut out = BTreeMap::new();
        for (l, c) in &a.coeffs {
            for (m, d) in &b.coeffs {
                add_into(&mut out, union(l, m), &(c * d));
            }
        }
        SymFunc { basis: Basis::P, coeffs: out }.convert(self.basis)
    }

    /// Drop every term of degree above `cap`.
    pub fn truncate_degree(&self, cap: usize) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().filter(|(l, _)| l.size() <= cap).map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn coproduct(&self) -> TensorSymFunc {
        let a = self.convert(Basis::P);
        let mut in_p: BTreeMap<(Partition, Partition), Poly> = BTreeMap::new();
        for (mu, c) in &a.coeffs {
            let parts = mu.parts();
            for mask in 0u32..(1 << parts.len()) {
                let (mut left, mut right) = (vec![], vec![]);
                for (k, &p) in parts.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        left.push(p);
                    } else {
                        right.push(p);
                    }
                }
                let key = (Partition::from_sorted(left), Partition::from_sorted(right));
                let e = in_p.entry(key).or_default();
                *e += c;
            }
        }
        let mut out: BTreeMap<(Partition, Partition), Poly> = BTreeMap::new();
        for ((l, r), c) in in_p {
            if c.is_zero() {
                continue;
            }
            let lt = from_power_sum(self.basis, &l);
            let rt = from_power_sum(self.basis, &r);
            for (x, d) in &lt {
                for (y, e) in &rt {
                    let t = out.entry((x.clone(), y.clone())).or_default();
                    *t += &c.scale(&(d * e));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        TensorSymFunc { basis: self.basis, coeffs: out }
    }

    /// p_mu -> (-1)^{l(mu)} p_mu.
    pub fn antipode(&self) -> Self {
        self.p_sign(|mu| mu.len())
    }

    /// p_mu -> (-1)^{|mu| - l(mu)} p_mu, so s_lambda -> s_lambda'.
    pub fn omega(&self) -> Self {
        self.p_sign(|mu| mu.size() - mu.len())
    }

    fn p_sign(&self, e: impl Fn(&Partition) -> usize) -> Self {
        let a = self.convert(Basis::P);
        let out = a.map_partitions(|mu, c| if e(mu) % 2 == 1 { -c.clone() } else { c.clone() });
        out.convert(self.basis)
    }

    fn map_partitions(&self, f: impl Fn(&Partition, &Poly) -> Poly) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().map(|(l, c)| (l.clone(), f(l, c))))
    }

    /// Constant term.
    pub fn counit(&self) -> Poly {
        self.coeff(&Partition::empty())
    }

    /// Image under p_k -> sum_{v in plus} v^k - sum_{v in minus} v^k.
    pub fn superize_vars(&self, plus: &[Var], minus: &[Var]) -> Poly {
        let a = self.convert(Basis::P);
        let mut pk: HashMap<usize, Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (mu, c) in &a.coeffs {
            let mut t = c.clone();
            for &k in mu.parts() {
                let p = pk.entry(k).or_insert_with(|| {
                    let mut s = Poly::zero();
                    for &v in plus {
                        s += &Poly::term(Monomial::var(v, k as u32), Q::one());
                    }
                    for &v in minus {
                        s -= &Poly::term(Monomial::var(v, k as u32), Q::one());
                    }
                    s
                });
                t = &t * &*p;
            }
            out += &t;
        }
        out
    }

    /// f(x/a) with n variables from each alphabet, indices 1-n..0.
    pub fn superize(&self, first: Alphabet, second: Alphabet, n_first: usize, n_second: usize) -> Poly {
        let plus: Vec<Var> = (1 - n_first as i64..=0).map(|i| Var::new(first, i)).collect();
        let minus: Vec<Var> = (1 - n_second as i64..=0).map(|i| Var::new(second, i)).collect();
        self.superize_vars(&plus, &minus)
    }

    /// Evaluation in x_{1-n}, ..., x_0.
    pub fn truncate(&self, n: usize) -> Poly {
        let vars: Vec<Var> = (1 - n as i64..=0).map(Var::x).collect();
        self.evaluate_in(&vars)
    }

    /// Evaluation at the given variables.
    pub fn evaluate_in(&self, vars: &[Var]) -> Poly {
        let s = self.convert(Basis::Schur);
        let mut out = Poly::zero();
        for (l, c) in &s.coeffs {
            out += &(c * &schur_polynomial(l, vars));
        }
        out
    }

    /// Expand a polynomial symmetric in x_{1-n}..x_0 (coefficients in other alphabets) into Schur functions.
    pub fn schur_expand_finite(p: &Poly, n: usize) -> Result<Self> {
        for i in 1 - n as i64..0 {
            if p.swap(Alphabet::X, i) != *p {
                return Err(Error::NotSymmetric(i));
            }
        }
        let vars: Vec<Var> = (1 - n as i64..=0).map(Var::x).collect();
        if p.vars().iter().any(|v| v.alpha == Alphabet::X && !vars.contains(v)) {
            return Err(Error::Domain("polynomial uses x variables outside the window".into()));
        }
        let mut rem = p.clone();
        let mut out = SymFunc::zero(Basis::Schur);
        loop {
            let groups = rem.collect_by(Alphabet::X);
            let Some((exps, coeff)) = groups
                .iter()
                .map(|(m, c)| (vars.iter().map(|&v| m.exponent(v) as usize).collect::<Vec<_>>(), c))
                .max_by(|a, b| a.0.cmp(&b.0))
            else {
                break;
            };
            let lambda = Partition::new(exps).map_err(|_| Error::Invariant("leading exponent is not a partition".into()))?;
            let coeff = coeff.clone();
            rem -= &(&coeff * &schur_polynomial(&lambda, &vars));
            out.add_term(lambda, &coeff);
        }
        Ok(out)
    }

    /// Keep terms whose partition satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Partition) -> bool) -> Self {
        Self::from_terms(self.basis, self.coeffs.iter().filter(|(l, _)| keep(l)).map(|(l, c)| (l.clone(), c.clone())))
    }
}

impl TensorSymFunc {
    pub fn coeff(&self, l: &Partition, r: &Partition) -> Poly {
        self.coeffs.get(&(l.clone(), r.clone())).cloned().unwrap_or_default()
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.basis {
            Basis::Schur => "s",
            Basis::H => "h",
            Basis::E => "e",
            Basis::P => "p",
            Basis::Monomial => "m",
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(l, c)| {
                let b = format!("{letter}[{l}]");
                if *c == Poly::one() {
                    b
                } else {
                    format!("({c})*{b}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: Poly,
}

#[derive(Serialize, Deserialize)]
struct SymJson {
    basis: Basis,
    terms: Vec<TermJson>,
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymJson {
            basis: self.basis,
            terms: self.coeffs.iter().map(|(l, c)| TermJson { partition: l.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SymJson::deserialize(d)?;
        Ok(SymFunc::from_terms(j.basis, j.terms.into_iter().map(|t| (t.partition, t.coeff))))
    }
}

/// Semistandard fillings of lambda with entries 0..n, rows weakly increasing and columns strictly.
pub fn ssyt(lambda: &Partition, n: usize) -> Vec<Vec<Vec<usize>>> {
    let cells = lambda.cells();
    let mut out = Vec::new();
    let mut t: Vec<Vec<usize>> = lambda.parts().iter().map(|&p| vec![0; p]).collect();
    fn rec(k: usize, cells: &[(usize, usize)], n: usize, t: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == cells.len() {
            out.push(t.clone());
            return;
        }
        let (r, c) = (cells[k].0 - 1, cells[k].1 - 1);
        let lo_row = if c > 0 { t[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { t[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            t[r][c] = v;
            rec(k + 1, cells, n, t, out);
        }
    }
    rec(0, &cells, n, &mut t, &mut out);
    out
}

/// s_lambda evaluated at a finite list of variables.
pub fn schur_polynomial(lambda: &Partition, vars: &[Var]) -> Poly {
    if lambda.len() > vars.len() {
        return Poly::zero();
    }
    let mut out = Poly::zero();
    for t in ssyt(lambda, vars.len()) {
        let m = Monomial::from_pairs(t.iter().flatten().map(|&v| (vars[v], 1)));
        out.add_term(m, Q::one());
    }
    out
}

pub type Tableau = Vec<Vec<usize>>;

/// Number of standard Young tableaux, by the hook length formula.
pub fn syt_count(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let mut num = BigInt::one();
    for k in 1..=lambda.size() {
        num *= BigInt::from(k);
    }
    let mut den = BigInt::one();
    for (r, c) in lambda.cells() {
        den *= BigInt::from(lambda.part(r) - c + conj.part(c) - r + 1);
    }
    num / den
}

/// All standard tableaux of shape lambda, lexicographic by row reading.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    fn rec(k: usize, n: usize, shape: &mut Vec<usize>, lambda: &Partition, t: &mut Tableau, out: &mut Vec<Tableau>) {
        if k > n {
            out.push(t.clone());
            return;
        }
        for r in 0..lambda.len() {
            let ok = shape[r] < lambda.part(r + 1) && (r == 0 || shape[r - 1] > shape[r]);
            if ok {
                t[r].push(k);
                shape[r] += 1;
                rec(k + 1, n, shape, lambda, t, out);
                shape[r] -= 1;
                t[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut t = vec![vec![]; lambda.len()];
    rec(1, lambda.size(), &mut vec![0; lambda.len()], lambda, &mut t, &mut out);
    out.sort();
    out
}

/// i is a descent when i+1 sits in a strictly lower row than i.
pub fn des_set(t: &Tableau) -> Vec<usize> {
    let mut row_of = BTreeMap::new();
    for (r, row) in t.iter().enumerate() {
        for &v in row {
            row_of.insert(v, r);
        }
    }
    row_of.keys().filter(|&&i| row_of.get(&(i + 1)).is_some_and(|&r| r > row_of[&i])).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn s(v: &[usize]) -> SymFunc {
        SymFunc::schur(part(v))
    }

    #[test]
    fn degree_one_bases_agree() {
        for b in [Basis::H, Basis::E, Basis::P, Basis::Monomial] {
            assert_eq!(s(&[1]).convert(b), SymFunc::basis_element(b, part(&[1])));
        }
    }

    #[test]
    fn e2_in_power_sums() {
        let e2 = s(&[1, 1]).convert(Basis::P);
        let half = Poly::constant(Q::new(1.into(), 2.into()));
        assert_eq!(e2.coeff(&part(&[1, 1])), half);
        assert_eq!(e2.coeff(&part(&[2])), -half);
        assert_eq!(s(&[1, 1]).convert(Basis::E), SymFunc::basis_element(Basis::E, part(&[2])));
    }

    #[test]
    fn round_trips() {
        for n in 0..=6 {
            for l in Partition::all_of_size(n) {
                for b in [Basis::H, Basis::E, Basis::P, Basis::Monomial] {
                    assert_eq!(s(l.parts()).convert(b).convert(Basis::Schur), s(l.parts()));
                }
            }
        }
    }

    #[test]
    fn pieri_and_unit() {
        let prod = s(&[1]).multiply(&s(&[1]));
        assert_eq!(prod, s(&[2]).add(&s(&[1, 1])));
        assert_eq!(SymFunc::one(Basis::Schur).multiply(&s(&[2, 1])), s(&[2, 1]));
    }

    #[test]
    fn coproduct_of_s2() {
        let d = s(&[2]).coproduct();
        assert_eq!(d.coeffs.len(), 3);
        assert_eq!(d.coeff(&part(&[1]), &part(&[1])), Poly::one());
        let p2 = SymFunc::basis_element(Basis::P, part(&[2])).coproduct();
        assert_eq!(p2.coeffs.len(), 2);
    }

    #[test]
    fn omega_and_antipode() {
        assert_eq!(s(&[2]).omega(), s(&[1, 1]));
        for l in Partition::all_up_to(5) {
            let f = s(l.parts());
            assert_eq!(f.antipode().antipode(), f);
            let sign = if l.size() % 2 == 1 { -1 } else { 1 };
            assert_eq!(f.antipode(), f.omega().scale(&Poly::int(sign)));
            assert_eq!(f.omega(), s(l.conjugate().parts()));
        }
    }

    #[test]
    fn truncation() {
        assert_eq!(s(&[1]).truncate(2), "x_-1 + x_0".parse().unwrap());
        assert!(s(&[1, 1, 1]).truncate(2).is_zero());
        let t = s(&[2, 1]).truncate(2);
        assert_eq!(t, "x_-1^2*x_0 + x_-1*x_0^2".parse().unwrap());
    }

    #[test]
    fn expand_finite() {
        let f: Poly = "x_-1 + x_0".parse().unwrap();
        assert_eq!(SymFunc::schur_expand_finite(&f, 2).unwrap(), s(&[1]));
        assert!(SymFunc::schur_expand_finite(&Poly::zero(), 2).unwrap().is_zero());
        let m21: Poly = "x_-1^2*x_0 + x_-1*x_0^2".parse().unwrap();
        assert_eq!(SymFunc::schur_expand_finite(&m21, 2).unwrap(), s(&[2, 1]));
        let bad: Poly = "x_-1".parse().unwrap();
        assert_eq!(SymFunc::schur_expand_finite(&bad, 2), Err(Error::NotSymmetric(-1)));
    }

    #[test]
    fn superization() {
        let f = s(&[1]).superize(Alphabet::X, Alphabet::A, 1, 1);
        assert_eq!(f, "x_0 - a_0".parse().unwrap());
        // h_2(x/a) = x^2 - x a for one variable each, from prod(1 - a t) / prod(1 - x t)
        let h2 = SymFunc::basis_element(Basis::H, part(&[2])).superize(Alphabet::X, Alphabet::A, 1, 1);
        assert_eq!(h2, "x_0^2 - x_0*a_0".parse().unwrap());
    }

    #[test]
    fn tableaux() {
        assert_eq!(syt_count(&part(&[2, 1])), 2.into());
        assert_eq!(syt_count(&part(&[5])), 1.into());
        assert_eq!(des_set(&vec![vec![1], vec![2]]), vec![1]);
        let mut fact = 1u64;
        for n in 1..=6usize {
            fact *= n as u64;
            let total: BigInt = Partition::all_of_size(n).iter().map(|l| syt_count(l).pow(2)).sum();
            assert_eq!(total, fact.into());
            for l in Partition::all_of_size(n) {
                assert_eq!(BigInt::from(standard_tableaux(&l).len()), syt_count(&l));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = s(&[2, 1]).scale(&"a_1 - a_0".parse().unwrap()).add(&s(&[1]));
        let j = serde_json::to_string(&f).unwrap();
        let g: SymFunc = serde_json::from_str(&j).unwrap();
        assert_eq!(f, g);
    }
}
