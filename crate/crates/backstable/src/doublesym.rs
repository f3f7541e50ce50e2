//! Double symmetric functions Lambda(x||a): double Schur functions, double
//! Stanley functions and their Edelman-Greene coefficients.
//!
//! Elements are stored in the double Schur basis. Arithmetic goes through the
//! free generators p_k(x||a), encoded as the variables y_k of a [`Poly`] whose
//! remaining variables are a's.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::permgroup::{Partition, Permutation};
use crate::polyring::{Alphabet, Monomial, Poly, Var, Q};
use crate::schubert::{self, to_a};
use crate::symfunc::{self, z_mu, Basis, SymFunc};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DoubleSymFunc {
    coeffs: BTreeMap<Partition, Poly>,
}

/// Weighted degree of the y-part of a monomial (y_k has weight k).
fn y_weight(m: &Monomial) -> usize {
    m.factors().iter().filter(|(v, _)| v.alpha == Alphabet::Y).map(|&(v, e)| v.idx as usize * e as usize).sum()
}

/// y-monomial prod y_k^{e_k} as the partition with e_k parts equal to k.
fn y_partition(m: &Monomial) -> Partition {
    let mut parts: Vec<usize> = Vec::new();
    for &(v, e) in m.factors() {
        if v.alpha == Alphabet::Y {
            parts.extend(std::iter::repeat(v.idx as usize).take(e as usize));
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_sorted(parts)
}

fn y_monomial(mu: &Partition) -> Monomial {
    Monomial::from_pairs(mu.parts().iter().map(|&k| (Var::y(k as i64), 1)))
}

/// A classical symmetric function written in p_k -> y_k.
pub fn classical_to_power(f: &SymFunc) -> Poly {
    let p = f.convert(Basis::P);
    let mut out = Poly::zero();
    for (mu, c) in p.coeffs() {
        out += &c.mul_monomial(&y_monomial(mu), &Q::one());
    }
    out
}

/// h_r(x/a) as a polynomial in y.
fn h_power(r: usize) -> Poly {
    let mut out = Poly::zero();
    for mu in Partition::all_of_size(r) {
        out.add_term(y_monomial(&mu), Q::new(BigInt::one(), z_mu(&mu)));
    }
    out
}

/// gamma_a^n: a_i -> a_{i+n}, y_k -> y_k - sum_{i=1}^n a_i^k (n > 0) or y_k + sum_{i=n+1}^0 a_i^k (n < 0).
pub fn gamma_a_power(f: &Poly, n: i64) -> Poly {
    if n == 0 {
        return f.clone();
    }
    f.substitute_with(|v| match v.alpha {
        Alphabet::A if !v.is_delta() => Some(Poly::a(v.idx + n)),
        Alphabet::Y => {
            let k = v.idx as u32;
            let mut s = Poly::y(v.idx);
            if n > 0 {
                for i in 1..=n {
                    s -= &Poly::a(i).pow(k);
                }
            } else {
                for i in n + 1..=0 {
                    s += &Poly::a(i).pow(k);
                }
            }
            Some(s)
        }
        _ => None,
    })
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    // expansion along the first row
    let mut out = Poly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][j] * &determinant(&minor);
        if j % 2 == 1 {
            out -= &t;
        } else {
            out += &t;
        }
    }
    out
}

/// s_lambda(x||a) = det gamma_a^{lambda_i - i} h_{lambda_i - i + j}(x/a), as a y-polynomial.
pub fn double_schur_power(lambda: &Partition) -> Poly {
    static MEMO: OnceLock<RwLock<HashMap<Partition, Poly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(p) = memo.read().unwrap().get(lambda) {
        return p.clone();
    }
    let l = lambda.len();
    let m: Vec<Vec<Poly>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let r = lambda.part(i) as i64 - i as i64 + j as i64;
                    if r < 0 {
                        Poly::zero()
                    } else {
                        gamma_a_power(&h_power(r as usize), lambda.part(i) as i64 - i as i64)
                    }
                })
                .collect()
        })
        .collect();
    let p = determinant(&m);
    memo.write().unwrap().insert(lambda.clone(), p.clone());
    p
}

impl DoubleSymFunc {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::schur(Partition::empty())
    }

    pub fn schur(lambda: Partition) -> Self {
        Self::from_terms([(lambda, Poly::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Poly)>) -> Self {
        let mut out = Self::zero();
        for (l, c) in terms {
            out.add_term(l, &c);
        }
        out
    }

    pub fn add_term(&mut self, l: Partition, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(l.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Poly> {
        &self.coeffs
    }

    pub fn coeff(&self, l: &Partition) -> Poly {
        self.coeffs.get(l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(l, d)| (l.clone(), d * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(l, d)| (l.clone(), f(d))))
    }

    pub fn to_power(&self) -> Poly {
        let mut out = Poly::zero();
        for (l, c) in &self.coeffs {
            out += &(c * &double_schur_power(l));
        }
        out
    }

    /// Inverse of [`DoubleSymFunc::to_power`]: peel the top y-degree as classical Schur functions.
    pub fn from_power(p: &Poly) -> Self {
        let mut rem = p.clone();
        let mut out = Self::zero();
        while !rem.is_zero() {
            let groups = rem.collect_by(Alphabet::Y);
            let d = groups.keys().map(y_weight).max().unwrap();
            let top = SymFunc::from_terms(
                Basis::P,
                groups.iter().filter(|(m, _)| y_weight(m) == d).map(|(m, c)| (y_partition(m), c.clone())),
            )
            .convert(Basis::Schur);
            for (l, c) in top.coeffs() {
                rem -= &(c * &double_schur_power(l));
                out.add_term(l.clone(), c);
            }
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_power(&(&self.to_power() * &other.to_power()))
    }

    /// Delta(p_k(x||a)) = p_k(x||a) (x) 1 + 1 (x) p_k(x||a), over Q[a].
    pub fn coproduct(&self) -> BTreeMap<(Partition, Partition), Poly> {
        let p = self.to_power();
        let mut by_right: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (ym, c) in p.collect_by(Alphabet::Y) {
            let parts = y_partition(&ym);
            let ks = parts.parts();
            for mask in 0u32..(1 << ks.len()) {
                let (mut left, mut right) = (vec![], vec![]);
                for (i, &k) in ks.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        left.push(k);
                    } else {
                        right.push(k);
                    }
                }
                let lm = y_monomial(&Partition::from_sorted(left));
                let rm = y_monomial(&Partition::from_sorted(right));
                *by_right.entry(rm).or_default() += &c.mul_monomial(&lm, &Q::one());
            }
        }
        let mut out: BTreeMap<(Partition, Partition), Poly> = BTreeMap::new();
        for (rm, left) in by_right {
            let lexp = Self::from_power(&left);
            let rexp = Self::from_power(&Poly::term(rm, Q::one()));
            for (l, c) in &lexp.coeffs {
                for (r, d) in &rexp.coeffs {
                    *out.entry((l.clone(), r.clone())).or_default() += &(c * d);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// omega: y_k -> (-1)^{k-1} y_k and a_i -> -a_{1-i}.
    pub fn omega(&self) -> Self {
        let p = self.to_power().map_vars(|v| match v.alpha {
            Alphabet::Y => (v, v.idx % 2 == 0),
            Alphabet::A if !v.is_delta() => (Var::a(1 - v.idx), true),
            _ => (v, false),
        });
        Self::from_power(&p)
    }

    pub fn gamma_a(&self, n: i64) -> Self {
        Self::from_power(&gamma_a_power(&self.to_power(), n))
    }
}

impl fmt::Display for DoubleSymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(l, c)| if *c == Poly::one() { format!("s[{l}]") } else { format!("({c})*s[{l}]") })
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
struct DoubleJson {
    basis: String,
    terms: Vec<TermJson>,
}

impl Serialize for DoubleSymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DoubleJson {
            basis: "double_schur".into(),
            terms: self.coeffs.iter().map(|(l, c)| TermJson { partition: l.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DoubleSymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DoubleJson::deserialize(d)?;
        Ok(Self::from_terms(j.terms.into_iter().map(|t| (t.partition, t.coeff))))
    }
}

/// p_k(x||a) -> sum_{i=1-n}^{0} (x_i^k - a_i^k).
pub fn eps_truncate(f: &DoubleSymFunc, n: usize) -> Result<Poly> {
    if let Some(l) = f.coeffs.keys().find(|l| !l.fits_in(n, n)) {
        return domain(format!("partition {l} does not fit in a {n}x{n} box"));
    }
    Ok(eps_power(&f.to_power(), n))
}

fn eps_power(p: &Poly, n: usize) -> Poly {
    p.substitute_with(|v| {
        if v.alpha != Alphabet::Y {
            return None;
        }
        let k = v.idx as u32;
        let mut s = Poly::zero();
        for i in 1 - n as i64..=0 {
            s += &(&Poly::x(i).pow(k) - &Poly::a(i).pow(k));
        }
        Some(s)
    })
}

/// Jacobi-Trudi determinant evaluated directly in x_{1-n..0} and the shifted a's.
pub fn jacobi_trudi(lambda: &Partition, n: usize) -> Poly {
    let l = lambda.len();
    let xs: Vec<Var> = (1 - n as i64..=0).map(Var::x).collect();
    let entry = |r: i64, m: i64| -> Poly {
        if r < 0 {
            return Poly::zero();
        }
        // eps(gamma_a^m p_k) = sum x^k - sum_{i=1-n}^{m} a_i^k, read as a signed alphabet
        let (mut plus, mut minus) = (xs.clone(), vec![]);
        if m >= 1 - n as i64 {
            minus.extend((1 - n as i64..=m).map(Var::a));
        } else {
            plus.extend((m + 1..=-(n as i64)).map(Var::a));
        }
        SymFunc::basis_element(Basis::H, Partition::from_sorted(if r == 0 { vec![] } else { vec![r as usize] }))
            .superize_vars(&plus, &minus)
    };
    let m: Vec<Vec<Poly>> = (1..=l)
        .map(|i| {
            let li = lambda.part(i) as i64 - i as i64;
            (1..=l).map(|j| entry(li + j as i64, li)).collect()
        })
        .collect();
    determinant(&m)
}

/// Sum over SSYT with entries in {1-n..0} of prod (x_T - a_{T + content}).
pub fn ssyt_formula(lambda: &Partition, n: usize) -> Poly {
    let mut out = Poly::zero();
    for t in symfunc::ssyt(lambda, n) {
        let mut w = Poly::one();
        for (r, row) in t.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let entry = v as i64 + 1 - n as i64;
                let content = c as i64 - r as i64;
                w *= &(&Poly::x(entry) - &Poly::a(entry + content));
            }
        }
        out += &w;
    }
    out
}

/// S_w(a) for w avoiding s_0.
pub fn schub_a(w: &Permutation) -> Poly {
    to_a(&schubert::schubert_nonzero(w, false).expect("w avoids s_0"))
}

/// mu inside lambda with the same Durfee square.
fn durfee_subs(lambda: &Partition) -> Vec<Partition> {
    let d = lambda.durfee();
    Partition::all_up_to(lambda.size()).into_iter().filter(|m| lambda.contains(m) && m.durfee() == d).collect()
}

/// s_lambda(x/a) = sum_{mu} S_{w_{lambda/mu}}(a) s_mu(x||a) over mu with d(mu) = d(lambda).
pub fn super_to_double(lambda: &Partition) -> DoubleSymFunc {
    DoubleSymFunc::from_terms(durfee_subs(lambda).into_iter().map(|mu| {
        let w = lambda.skew_perm(&mu).unwrap();
        (mu, schub_a(&w))
    }))
}

/// s_lambda(x||a) = sum_{mu} (-1)^{|lambda/mu|} S_{w_{lambda/mu}^{-1}}(a) s_mu(x/a).
pub fn double_to_super(lambda: &Partition) -> BTreeMap<Partition, Poly> {
    durfee_subs(lambda)
        .into_iter()
        .map(|mu| {
            let w = lambda.skew_perm(&mu).unwrap();
            let c = schub_a(&w.inverse());
            let c = if (lambda.size() - mu.size()) % 2 == 1 { -c } else { c };
            (mu, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// F(x/a) for a classical F in the Schur basis.
pub fn superized_to_double(f: &SymFunc) -> DoubleSymFunc {
    let s = f.convert(Basis::Schur);
    let mut out = DoubleSymFunc::zero();
    for (mu, c) in s.coeffs() {
        out = out.add(&super_to_double(mu).scale(c));
    }
    out
}

/// F_w(x||a) = sum over w = uvz, u,z in S_{!=0}, of (-1)^{l(u)} S_{u^{-1}}(a) F_v(x/a) S_z(a).
pub fn double_stanley(w: &Permutation) -> DoubleSymFunc {
    static MEMO: OnceLock<RwLock<HashMap<Permutation, DoubleSymFunc>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(f) = memo.read().unwrap().get(w) {
        return f.clone();
    }
    let nz = |u: &Permutation| u.in_s_nonzero();
    let any = |_: &Permutation| true;
    let preds: [&dyn Fn(&Permutation) -> bool; 3] = [&nz, &any, &nz];
    let mut out = DoubleSymFunc::zero();
    let mut super_cache: HashMap<Permutation, DoubleSymFunc> = HashMap::new();
    for f in w.length_additive_factorizations(3, &preds) {
        let (u, v, z) = (&f[0], &f[1], &f[2]);
        let mut c = &schub_a(&u.inverse()) * &schub_a(z);
        if u.length() % 2 == 1 {
            c = -c;
        }
        let fv = super_cache.entry(v.clone()).or_insert_with(|| superized_to_double(&schubert::stanley(v)));
        out = out.add(&fv.scale(&c));
    }
    memo.write().unwrap().insert(w.clone(), out.clone());
    out
}

/// j_lambda^w(a).
pub fn double_eg(w: &Permutation) -> BTreeMap<Partition, Poly> {
    double_stanley(w).coeffs.clone()
}

/// c-hat^lambda_{mu nu}(a) = j_nu^{w_{lambda/mu}}(a).
pub fn coproduct_structure_constant(lambda: &Partition, mu: &Partition, nu: &Partition) -> Poly {
    if !lambda.contains(mu) {
        return Poly::zero();
    }
    double_stanley(&lambda.skew_perm(mu).unwrap()).coeff(nu)
}

/// Sort key for the order a_1 < a_2 < ... < a_{-1} < a_0.
pub fn positivity_key(i: i64) -> (u8, i64) {
    if i > 0 {
        (0, i)
    } else {
        (1, i)
    }
}

/// Evaluate every j_lambda^w(a) at random integer points with a weakly decreasing along the order.
pub fn positivity_spot_check(w: &Permutation, samples: usize, seed: u64) -> bool {
    let coeffs = double_eg(w);
    let mut vars: BTreeSet<i64> = BTreeSet::new();
    for c in coeffs.values() {
        vars.extend(c.vars().iter().filter(|v| v.alpha == Alphabet::A).map(|v| v.idx));
    }
    let mut order: Vec<i64> = vars.into_iter().collect();
    order.sort_by_key(|&i| positivity_key(i));
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut values = HashMap::new();
        let mut cur: i64 = rng.gen_range(-5..=5);
        for &i in order.iter().rev() {
            values.insert(Var::a(i), Q::from_integer(cur.into()));
            cur += rng.gen_range(0..=4);
        }
        for c in coeffs.values() {
            if c.eval(&values).expect("all a variables assigned").is_negative() {
                return false;
            }
        }
    }
    true
}

/// S_v(b; a) for v in S_{!=0}.
fn schub_ba(v: &Permutation) -> Poly {
    schubert::schubert_nonzero(v, true).expect("v avoids s_0").swap_alphabets(Alphabet::X, Alphabet::B)
}

/// j_mu^w(a,b) = sum (-1)^{|lambda/rho|} j_lambda^w(a) S_{w_{lambda/rho}^{-1}}(a) S_{w_{rho/mu}}(b).
pub fn triple_eg(w: &Permutation, mu: &Partition) -> Poly {
    let mut out = Poly::zero();
    let d = mu.durfee();
    for (lambda, j) in double_eg(w) {
        if lambda.durfee() != d || !lambda.contains(mu) {
            continue;
        }
        for rho in durfee_subs(&lambda) {
            if !rho.contains(mu) {
                continue;
            }
            let a_part = schub_a(&lambda.skew_perm(&rho).unwrap().inverse());
            let b_part = schubert::schubert_nonzero(&rho.skew_perm(mu).unwrap(), false)
                .unwrap()
                .swap_alphabets(Alphabet::X, Alphabet::B);
            let mut t = &(&j * &a_part) * &b_part;
            if (lambda.size() - rho.size()) % 2 == 1 {
                t = -t;
            }
            out += &t;
        }
    }
    out
}

/// Rename a_{1..m} (or a_{0,-1,..}) to a_{t+1} for t in the given set.
fn substitute_alphabet(p: &Poly, targets: &[i64], positive: bool) -> Poly {
    p.substitute_with(|v| {
        if v.alpha != Alphabet::A || v.is_delta() {
            return None;
        }
        let k = if positive { v.idx - 1 } else { -v.idx };
        if k < 0 || k as usize >= targets.len() {
            return None;
        }
        Some(Poly::a(targets[k as usize] + 1))
    })
}

/// Hook formula for j^w_{(q+1,1^p)}(a,b) as a sum over Lambda-factorizations.
pub fn hook_triple_eg(w: &Permutation, p: usize, q: usize) -> Poly {
    let Some(m) = w.max_support() else {
        return Poly::zero();
    };
    let mut pairs: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
    for (j, k) in w.lambda_factorizations() {
        let jp: Vec<i64> = j.into_iter().filter(|&t| t != m).collect();
        let kp: Vec<i64> = k.into_iter().filter(|&t| t != m).collect();
        pairs.insert((jp, kp));
    }
    let mut out = Poly::zero();
    for (jp, kp) in pairs {
        if kp.len() < q || jp.len() < p {
            continue;
        }
        // s_{|K'|} ... s_{q+1} in S_+ and s_{-|J'|} ... s_{-1-p} in S_-
        let plus_word: Vec<i64> = (q as i64 + 1..=kp.len() as i64).rev().collect();
        let minus_word: Vec<i64> = (-(jp.len() as i64)..=-1 - p as i64).collect();
        let vp = Permutation::from_word(&plus_word);
        let vm = Permutation::from_word(&minus_word);
        // K' is read from its largest element, J' from its smallest
        let k_targets: Vec<i64> = kp.iter().rev().copied().collect();
        let j_targets: Vec<i64> = jp.clone();
        let fp = substitute_alphabet(&schub_ba(&vp), &k_targets, true);
        let fm = substitute_alphabet(&schub_ba(&vm), &j_targets, false);
        out += &(&fp * &fm);
    }
    out
}

/// p_k(x||a)|_w = sum_{I_+} a_i^k - sum_{I_-} a_i^k.
pub fn localize(f: &DoubleSymFunc, w: &Permutation) -> Poly {
    let (plus, minus) = w.descent_sets();
    f.to_power().substitute_with(|v| {
        if v.alpha != Alphabet::Y {
            return None;
        }
        let k = v.idx as u32;
        let mut s = Poly::zero();
        for &i in &plus {
            s += &Poly::a(i).pow(k);
        }
        for &i in &minus {
            s -= &Poly::a(i).pow(k);
        }
        Some(s)
    })
}

/// Positive-variable double Schur s^{>0}_lambda, with y_k standing for p_k(x_+/a_+).
pub fn positive_double_schur_power(lambda: &Partition) -> Poly {
    let l = lambda.len();
    let m: Vec<Vec<Poly>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let r = lambda.part(i) as i64 - i as i64 + j as i64;
                    if r < 0 {
                        Poly::zero()
                    } else {
                        // in the positive convention gamma_a^n sends y_k to y_k + sum_{i=1}^n a_i^k
                        let neg = h_power(r as usize).map_vars(|v| (v, v.alpha == Alphabet::Y));
                        gamma_a_power(&neg, i as i64 - lambda.part(i) as i64).map_vars(|v| (v, v.alpha == Alphabet::Y))
                    }
                })
                .collect()
        })
        .collect();
    determinant(&m)
}

/// The dictionary Phi: p_k(x_+/a_+) -> -p_k(x||a), on a positive-convention y-polynomial.
pub fn phi_power(p: &Poly) -> DoubleSymFunc {
    DoubleSymFunc::from_power(&p.map_vars(|v| (v, v.alpha == Alphabet::Y)))
}

/// Phi applied to a classical symmetric function read in x_+/a_+.
pub fn phi_dictionary(f: &SymFunc) -> DoubleSymFunc {
    phi_power(&classical_to_power(f))
}
