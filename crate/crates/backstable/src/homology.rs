//! Equivariant homology of the infinite Grassmannian.
//!
//! Dual Schur functions hs_mu(y||a) are infinite sums of Schur functions in y,
//! so they are stored as [`DualSeries`] truncated at a y-degree cap. Products
//! and operators are exact modulo that degree.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::doublesym::{self, schub_a};
use crate::error::{Error, Result};
use crate::permgroup::Partition;
use crate::polyring::{Alphabet, Poly, Q};
use crate::symfunc::{z_mu, Basis, SymFunc};

/// sum c_lambda s_lambda(y) over |lambda| <= cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SeriesJson", try_from = "SeriesJson")]
pub struct DualSeries {
    cap: usize,
    coeffs: BTreeMap<Partition, Poly>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    cap: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: Poly,
}

impl From<DualSeries> for SeriesJson {
    fn from(f: DualSeries) -> Self {
        SeriesJson {
            cap: f.cap,
            terms: f.coeffs.into_iter().map(|(partition, coeff)| TermJson { partition, coeff }).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for DualSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        let mut out = DualSeries::zero(j.cap);
        for t in j.terms {
            if t.partition.size() > j.cap {
                return Err(Error::Domain(format!("{} exceeds the cap {}", t.partition, j.cap)));
            }
            out.add_term(t.partition, &t.coeff);
        }
        Ok(out)
    }
}

impl DualSeries {
    pub fn zero(cap: usize) -> Self {
        DualSeries { cap, coeffs: BTreeMap::new() }
    }

    pub fn one(cap: usize) -> Self {
        Self::schur(Partition::empty(), cap)
    }

    pub fn schur(lambda: Partition, cap: usize) -> Self {
        let mut out = Self::zero(cap);
        out.add_term(lambda, &Poly::one());
        out
    }

    pub fn from_terms(cap: usize, terms: impl IntoIterator<Item = (Partition, Poly)>) -> Self {
        let mut out = Self::zero(cap);
        for (l, c) in terms {
            out.add_term(l, &c);
        }
        out
    }

    pub fn from_symfunc(f: &SymFunc, cap: usize) -> Self {
        Self::from_terms(cap, f.convert(Basis::Schur).coeffs().iter().map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn cap(&self) -> usize {
        self.cap
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

    /// Terms above the cap are dropped.
    pub fn add_term(&mut self, lambda: Partition, c: &Poly) {
        if lambda.size() > self.cap || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(lambda.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        Self::from_terms(cap, self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.with_cap(self.cap.min(other.cap));
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        self.map_coeffs(|f| f * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_terms(self.cap, self.coeffs.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn filter(&self, keep: impl Fn(&Partition) -> bool) -> Self {
        Self::from_terms(self.cap, self.coeffs.iter().filter(|(l, _)| keep(l)).map(|(l, c)| (l.clone(), c.clone())))
    }

    pub fn to_symfunc(&self) -> SymFunc {
        SymFunc::from_terms(Basis::Schur, self.coeffs.clone())
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let prod = self.to_symfunc().multiply(&other.to_symfunc());
        Self::from_symfunc(&prod.truncate_degree(cap), cap)
    }

    /// Coefficients in the dual Schur basis, valid up to the cap.
    pub fn to_dual_basis(&self) -> BTreeMap<Partition, Poly> {
        peel(self, |mu| dual_schur(mu, self.cap))
    }
}

/// Triangular expansion in a basis b_mu = s_mu + (terms of larger degree).
fn peel(f: &DualSeries, basis: impl Fn(&Partition) -> DualSeries) -> BTreeMap<Partition, Poly> {
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    while let Some(d) = rest.coeffs.keys().map(Partition::size).min() {
        let low: Vec<_> = rest.coeffs.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect();
        for (mu, c) in low {
            rest = rest.sub(&basis(&mu).with_cap(rest.cap).scale(&c));
            out.insert(mu, c);
        }
    }
    out
}

/// hs_mu(y||a) = sum over lambda containing mu with d(lambda) = d(mu) of S_{w_{lambda/mu}}(a) s_lambda(y).
pub fn dual_schur(mu: &Partition, cap: usize) -> DualSeries {
    let d = mu.durfee();
    DualSeries::from_terms(
        cap,
        mu.supersets(cap).into_iter().filter(|l| l.durfee() == d).map(|l| {
            let c = schub_a(&l.skew_perm(mu).unwrap());
            (l, c)
        }),
    )
}

/// s_mu(y) = sum (-1)^{|lambda/mu|} S_{w_{lambda/mu}^{-1}}(a) hs_lambda(y||a).
pub fn schur_in_dual_basis(mu: &Partition, cap: usize) -> BTreeMap<Partition, Poly> {
    let d = mu.durfee();
    mu.supersets(cap)
        .into_iter()
        .filter(|l| l.durfee() == d)
        .map(|l| {
            let c = schub_a(&l.skew_perm(mu).unwrap().inverse());
            let c = if (l.size() - mu.size()) % 2 == 1 { -c } else { c };
            (l, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Omega[(a_j - a_i) y] = exp(sum_k (a_j^k - a_i^k) p_k(y) / k), truncated.
pub fn omega_kernel(weight: (i64, i64), cap: usize) -> DualSeries {
    let (j, i) = weight;
    let c = |k: usize| &Poly::a(j).pow(k as u32) - &Poly::a(i).pow(k as u32);
    let mut terms = Vec::new();
    for mu in Partition::all_up_to(cap) {
        let mut coeff: Poly = mu.parts().iter().map(|&k| c(k)).product();
        if coeff.is_zero() {
            continue;
        }
        coeff = coeff.scale(&(Q::one() / Q::from_integer(z_mu(&mu))));
        terms.push((mu, coeff));
    }
    DualSeries::from_symfunc(&SymFunc::from_terms(Basis::P, terms), cap)
}

/// delta_i: A_i on coefficients for i != 0; delta_0 = alpha_0^{-1}(1 - Omega[-alpha_0 y] s_0).
pub fn homology_dd(i: i64, f: &DualSeries) -> Result<DualSeries> {
    if i != 0 {
        return Ok(f.map_coeffs(|c| c.divided_difference(Alphabet::A, i)));
    }
    let swapped = f.map_coeffs(|c| c.swap(Alphabet::A, 0));
    let diff = f.sub(&omega_kernel((1, 0), f.cap).multiply(&swapped));
    let alpha0 = &Poly::a(0) - &Poly::a(1);
    let mut out = DualSeries::zero(f.cap);
    for (l, c) in &diff.coeffs {
        let q = c
            .exact_divide(&alpha0)
            .map_err(|_| Error::Invariant(format!("delta_0: coefficient {c} of s_{l} is not divisible by a_0 - a_1")))?;
        out.add_term(l.clone(), &q);
    }
    Ok(out)
}

/// delta_{w_lambda}(1), along the lexicographically least reduced word.
pub fn create_dual_schur(lambda: &Partition, cap: usize) -> Result<DualSeries> {
    let mut f = DualSeries::one(cap);
    for &i in lambda.grassmannian().reduced_word().iter().rev() {
        f = homology_dd(i, &f)?;
    }
    Ok(f)
}

/// (lambda, rho, mu) with lambda/rho a vertical strip and rho/mu a horizontal strip.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaDecomposition {
    pub outer: Partition,
    pub middle: Partition,
    pub inner: Partition,
}

impl LambdaDecomposition {
    pub fn vertical_cells(&self) -> Vec<(usize, usize)> {
        self.outer.skew_cells(&self.middle)
    }

    pub fn horizontal_cells(&self) -> Vec<(usize, usize)> {
        self.middle.skew_cells(&self.inner)
    }
}

pub fn lambda_decompositions(lambda: &Partition, mu: &Partition) -> Vec<LambdaDecomposition> {
    if !lambda.contains(mu) {
        return vec![];
    }
    let mut out = Vec::new();
    let mut rows = Vec::new();
    middles(lambda, mu, 1, &mut rows, &mut out);
    out.into_iter()
        .filter(|rho| lambda.is_vertical_strip(rho) && rho.is_horizontal_strip(mu))
        .map(|rho| LambdaDecomposition { outer: lambda.clone(), middle: rho, inner: mu.clone() })
        .collect()
}

fn middles(lambda: &Partition, mu: &Partition, r: usize, rows: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if r > lambda.len() {
        out.push(Partition::from_sorted(rows.iter().copied().filter(|&p| p > 0).collect()));
        return;
    }
    let hi = match rows.last() {
        Some(&p) => lambda.part(r).min(p),
        None => lambda.part(r),
    };
    for p in mu.part(r)..=hi {
        rows.push(p);
        middles(lambda, mu, r + 1, rows, out);
        rows.pop();
    }
}

type Strips = (BTreeSet<(usize, usize)>, BTreeSet<(usize, usize)>);

/// The distinct D_- : each decomposition with the north-east box of lambda/mu removed.
fn distinct_reduced(lambda: &Partition, mu: &Partition) -> BTreeSet<Strips> {
    let cells = lambda.skew_cells(mu);
    let Some(&ne) = cells.iter().min_by_key(|&&(r, c)| (r, std::cmp::Reverse(c))) else {
        return BTreeSet::new();
    };
    lambda_decompositions(lambda, mu)
        .into_iter()
        .map(|d| {
            let mut v: BTreeSet<_> = d.vertical_cells().into_iter().collect();
            let mut h: BTreeSet<_> = d.horizontal_cells().into_iter().collect();
            v.remove(&ne);
            h.remove(&ne);
            (v, h)
        })
        .collect()
}

fn content_var(cell: (usize, usize)) -> Poly {
    Poly::a(cell.1 as i64 - cell.0 as i64 + 1)
}

/// Sum over q-horizontal fillings of weights prod (a_T - a_{c+1}).
fn horizontal_weight(cells: &BTreeSet<(usize, usize)>, q: usize) -> Poly {
    let mut sorted: Vec<_> = cells.iter().copied().collect();
    sorted.sort_by_key(|&(_, c)| c);
    let mut total = Poly::zero();
    let mut fill = Vec::with_capacity(sorted.len());
    fillings(sorted.len(), 1, q + 1, &mut fill, &mut |t| {
        if (2..=q + 1).any(|v| !t.contains(&v)) {
            return;
        }
        let mut w = Poly::one();
        for (k, (&cell, &v)) in sorted.iter().zip(t).enumerate() {
            if v == 1 || (k > 0 && t[k - 1] == v) {
                w *= &(&Poly::a(v as i64) - &content_var(cell));
            }
        }
        total += &w;
    });
    total
}

/// Sum over p-vertical fillings (values 0, -1, ..., -p down the strip) of prod (a_{c+1} - a_T).
fn vertical_weight(cells: &BTreeSet<(usize, usize)>, p: usize) -> Poly {
    let sorted: Vec<_> = cells.iter().copied().collect();
    let mut total = Poly::zero();
    let mut fill = Vec::with_capacity(sorted.len());
    // k stands for the value -k, so the filling is weakly increasing in k
    fillings(sorted.len(), 0, p, &mut fill, &mut |t| {
        if (1..=p).any(|v| !t.contains(&v)) {
            return;
        }
        let mut w = Poly::one();
        for (k, (&cell, &v)) in sorted.iter().zip(t).enumerate() {
            if v == 0 || (k > 0 && t[k - 1] == v) {
                w *= &(&content_var(cell) - &Poly::a(-(v as i64)));
            }
        }
        total += &w;
    });
    total
}

fn fillings(n: usize, lo: usize, hi: usize, fill: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if fill.len() == n {
        visit(fill);
        return;
    }
    let start = fill.last().copied().unwrap_or(lo);
    for v in start..=hi {
        fill.push(v);
        fillings(n, lo, hi, fill, visit);
        fill.pop();
    }
}

/// Coefficient of hs_lambda in hs_{(q+1,1^p)} hs_mu.
pub fn hook_coefficient(lambda: &Partition, mu: &Partition, p: usize, q: usize) -> Poly {
    distinct_reduced(lambda, mu).iter().map(|(v, h)| &vertical_weight(v, p) * &horizontal_weight(h, q)).sum()
}

/// hs_{(q+1,1^p)} hs_mu = sum c_lambda hs_lambda, over |lambda| <= cap.
pub fn hook_pieri(mu: &Partition, p: usize, q: usize, cap: usize) -> BTreeMap<Partition, Poly> {
    mu.supersets(cap)
        .into_iter()
        .filter(|l| l.size() > mu.size())
        .map(|l| {
            let c = hook_coefficient(&l, mu, p, q);
            (l, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// hs_1 hs_mu = sum c_lambda hs_lambda, over |lambda| <= cap.
pub fn monk_rule(mu: &Partition, cap: usize) -> BTreeMap<Partition, Poly> {
    hook_pieri(mu, 0, 0, cap)
}

/// The oracle j_nu^{w_{lambda/mu}}(a) for the coefficient of hs_lambda in hs_nu hs_mu.
pub fn pieri_oracle(lambda: &Partition, mu: &Partition, nu: &Partition) -> Poly {
    doublesym::coproduct_structure_constant(lambda, mu, nu)
}

/// hs_mu(y||delta) = sum over lambda/mu inside the first d(mu) rows of S_{w_{lambda/mu}}(1) delta^{|lambda/mu|} s_lambda.
pub fn delta_dual_schur(mu: &Partition, cap: usize) -> DualSeries {
    let d = mu.durfee();
    DualSeries::from_terms(
        cap,
        mu.supersets(cap).into_iter().filter(|l| rows_fixed_below(l, mu, d)).map(
            |l| {
                let w = l.skew_perm(mu).unwrap();
                let at_one = schub_a(&w).substitute_with(|_| Some(Poly::one()));
                let c = &at_one * &Poly::delta().pow((l.size() - mu.size()) as u32);
                (l, c)
            },
        ),
    )
}

fn rows_fixed_below(l: &Partition, mu: &Partition, d: usize) -> bool {
    (d + 1..=l.len()).all(|r| l.part(r) == mu.part(r))
}

/// Structure constants of hs_lambda(y||delta) hs_mu(y||delta) restricted to a rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlProduct {
    pub schur: BTreeMap<Partition, Poly>,
    pub dual: BTreeMap<Partition, Poly>,
}

/// Multiply delta dual Schurs and restrict to partitions inside rows x cols.
pub fn kl_product(lambda: &Partition, mu: &Partition, rows: usize, cols: usize) -> KlProduct {
    let cap = rows * cols;
    let fits = |l: &Partition| l.fits_in(rows, cols);
    let f = delta_dual_schur(lambda, cap).filter(fits);
    let g = delta_dual_schur(mu, cap).filter(fits);
    let prod = f.multiply(&g).filter(fits);
    let dual = peel(&prod, |nu| delta_dual_schur(nu, cap).filter(fits));
    KlProduct { schur: prod.coeffs, dual }
}

/// Set a = 0.
pub fn nonequivariant(p: &Poly) -> Poly {
    p.substitute_with(|v| (v.alpha == Alphabet::A && !v.is_delta()).then(Poly::zero))
}

/// Coefficient of s_lambda in s_nu s_mu.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Poly {
    SymFunc::schur(nu.clone()).multiply(&SymFunc::schur(mu.clone())).coeff(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn hs1_closed_form() {
        let cap = 5;
        let f = dual_schur(&part("1"), cap);
        let mut want = DualSeries::zero(cap);
        for p in 0..cap {
            for q in 0..cap - p {
                let c = &(-Poly::a(0)).pow(q as u32) * &Poly::a(1).pow(p as u32);
                want.add_term(Partition::hook(q, p), &c);
            }
        }
        assert_eq!(f, want);
        assert_eq!(create_dual_schur(&part("1"), cap).unwrap(), f);
        assert_eq!(dual_schur(&Partition::empty(), 3), DualSeries::one(3));
    }

    #[test]
    fn creation_up_to_three() {
        for lambda in Partition::all_up_to(3) {
            assert_eq!(create_dual_schur(&lambda, 5).unwrap(), dual_schur(&lambda, 5), "{lambda}");
        }
    }

    #[test]
    fn inverse_relation() {
        let cap = 4;
        for mu in Partition::all_up_to(2) {
            let mut sum = DualSeries::zero(cap);
            for (l, c) in schur_in_dual_basis(&mu, cap) {
                sum = sum.add(&dual_schur(&l, cap).scale(&c));
            }
            assert_eq!(sum, DualSeries::schur(mu.clone(), cap), "{mu}");
        }
    }

    #[test]
    fn kernel_inverse() {
        let k = omega_kernel((1, 0), 4);
        assert_eq!(k.coeff(&part("1")), poly("a_1 - a_0"));
        assert_eq!(k.multiply(&omega_kernel((0, 1), 4)), DualSeries::one(4));
        assert_eq!(omega_kernel((2, 2), 4), DualSeries::one(4));
    }

    #[test]
    fn decompositions() {
        assert_eq!(lambda_decompositions(&part("2,1"), &part("2")).len(), 2);
        assert_eq!(lambda_decompositions(&part("2"), &part("2")).len(), 1);
        assert!(lambda_decompositions(&part("2,2"), &Partition::empty()).is_empty());
        assert_eq!(lambda_decompositions(&part("3,1"), &part("1")).len(), 4);
    }

    #[test]
    fn monk_examples() {
        let m = monk_rule(&part("1"), 4);
        assert_eq!(m[&part("2,2")], &poly("a_1 - a_0") * &poly("a_1 - a_0"));
        assert_eq!(m[&part("3,1")], &poly("a_1 - a_2") * &poly("a_1 - a_0"));
        assert_eq!(m[&part("2")], Poly::one());
        assert_eq!(m[&part("1,1,1")], poly("a_-1 - a_0"));
        let e = monk_rule(&Partition::empty(), 4);
        assert_eq!(e, BTreeMap::from([(part("1"), Poly::one())]));
    }

    #[test]
    fn hook_examples() {
        let h = hook_pieri(&part("1"), 1, 0, 4);
        assert_eq!(h[&part("2,2")], poly("a_1 - a_0"));
        assert_eq!(h[&part("2,1,1")], poly("a_1 - a_0"));
        assert_eq!(h[&part("3,1")], poly("a_1 - a_2"));
    }

    #[test]
    fn monk_matches_direct_product() {
        let cap = 4;
        let prod = dual_schur(&part("1"), cap).multiply(&dual_schur(&part("1,1"), cap));
        let got = prod.to_dual_basis();
        let want = monk_rule(&part("1,1"), cap);
        assert_eq!(got, want);
    }

    #[test]
    fn dd_zero_without_corner() {
        let f = dual_schur(&part("1"), 4);
        assert!(homology_dd(0, &f).unwrap().is_zero());
        assert_eq!(homology_dd(1, &f).unwrap(), dual_schur(&part("2"), 4));
        assert_eq!(homology_dd(-1, &f).unwrap(), dual_schur(&part("1,1"), 4));
    }

    #[test]
    fn delta_examples() {
        let f = delta_dual_schur(&part("1"), 3);
        let want = DualSeries::from_terms(3, [(part("1"), Poly::one()), (part("2"), Poly::delta()), (part("3"), Poly::delta().pow(2))]);
        assert_eq!(f, want);
        let g = delta_dual_schur(&part("1,1"), 4);
        assert_eq!(g.coeff(&part("3,1")), Poly::delta().pow(2));
        assert_eq!(g.coeff(&part("2,1")), Poly::delta());
        assert!(g.coeff(&part("1,1,1")).is_zero());
        for mu in Partition::all_up_to(3) {
            let spec = dual_schur(&mu, 5).map_coeffs(crate::schubert::eta_delta);
            assert_eq!(delta_dual_schur(&mu, 5), spec, "{mu}");
        }
    }

    #[test]
    fn kl_example() {
        let r = kl_product(&part("1"), &part("1,1"), 4, 3);
        let d = Poly::delta();
        let want = BTreeMap::from([
            (part("1,1,1"), Poly::one()),
            (part("2,1"), Poly::one()),
            (part("2,1,1"), d.clone()),
            (part("2,2"), d.clone()),
            (part("2,2,1"), d.pow(2)),
        ]);
        assert_eq!(r.dual, want);
        assert_eq!(r.schur[&part("2,1,1")], d.scale(&Q::from_integer(2.into())));
        assert_eq!(r.schur[&part("3,3,1")], d.pow(4));
    }

    #[test]
    fn series_json() {
        let f = dual_schur(&part("1"), 3);
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"cap\":3"));
        let g: DualSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
