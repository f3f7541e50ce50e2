//! Sparse polynomials over Q in the indexed alphabets x, a, b, y.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Variable index reserved for the specialization parameter delta (alphabet A).
pub const DELTA_INDEX: i64 = i64::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Alphabet {
    X,
    A,
    B,
    Y,
}

impl Alphabet {
    fn letter(self) -> char {
        match self {
            Alphabet::X => 'x',
            Alphabet::A => 'a',
            Alphabet::B => 'b',
            Alphabet::Y => 'y',
        }
    }

    fn from_letter(c: &str) -> Option<Self> {
        match c {
            "x" => Some(Alphabet::X),
            "a" => Some(Alphabet::A),
            "b" => Some(Alphabet::B),
            "y" => Some(Alphabet::Y),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub alpha: Alphabet,
    pub idx: i64,
}

impl Var {
    pub fn new(alpha: Alphabet, idx: i64) -> Self {
        Var { alpha, idx }
    }
    pub fn x(i: i64) -> Self {
        Var::new(Alphabet::X, i)
    }
    pub fn a(i: i64) -> Self {
        Var::new(Alphabet::A, i)
    }
    pub fn b(i: i64) -> Self {
        Var::new(Alphabet::B, i)
    }
    pub fn y(i: i64) -> Self {
        Var::new(Alphabet::Y, i)
    }
    pub fn delta() -> Self {
        Var::new(Alphabet::A, DELTA_INDEX)
    }
    pub fn is_delta(&self) -> bool {
        self.alpha == Alphabet::A && self.idx == DELTA_INDEX
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_delta() {
            write!(f, "delta")
        } else {
            write!(f, "{}_{}", self.alpha.letter(), self.idx)
        }
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "delta" {
            return Ok(Var::delta());
        }
        let (a, i) = s.split_once('_').ok_or_else(|| Error::Parse(format!("bad variable `{s}`")))?;
        let alpha = Alphabet::from_letter(a).ok_or_else(|| Error::Parse(format!("bad alphabet `{a}`")))?;
        let idx = i.parse().map_err(|_| Error::Parse(format!("bad index `{i}`")))?;
        Ok(Var { alpha, idx })
    }
}

/// Product of variable powers, sorted by variable, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(vec![])
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial(vec![])
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by(|(w, _)| w.cmp(&v)).map(|k| self.0[k].1).unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, alpha: Alphabet) -> u32 {
        self.0.iter().filter(|(v, _)| v.alpha == alpha).map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// self / other if every exponent allows it.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Graded order, ties broken lexicographically with smaller variables heavier.
    pub fn grlex_cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(&other.0) {
                if x.0 != y.0 {
                    return if x.0 < y.0 { Ordering::Greater } else { Ordering::Less };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }

    fn without(&self, v: Var) -> Self {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", s.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(q(n))
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v, 1), Q::one())
    }

    pub fn x(i: i64) -> Self {
        Poly::var(Var::x(i))
    }
    pub fn a(i: i64) -> Self {
        Poly::var(Var::a(i))
    }
    pub fn b(i: i64) -> Self {
        Poly::var(Var::b(i))
    }
    pub fn y(i: i64) -> Self {
        Poly::var(Var::y(i))
    }
    pub fn delta() -> Self {
        Poly::var(Var::delta())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|m| m.degree());
        match d.next() {
            None => true,
            Some(first) => d.all(|e| e == first),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn uses_only(&self, alphas: &[Alphabet]) -> bool {
        self.vars().iter().all(|v| alphas.contains(&v.alpha))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Rename variables; `f` returns the new variable and whether to negate it.
    pub fn map_vars(&self, f: impl Fn(Var) -> (Var, bool)) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut neg = false;
            let pairs: Vec<(Var, u32)> = m
                .0
                .iter()
                .map(|&(v, e)| {
                    let (w, s) = f(v);
                    if s && e % 2 == 1 {
                        neg = !neg;
                    }
                    (w, e)
                })
                .collect();
            let c = if neg { -c.clone() } else { c.clone() };
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        out
    }

    /// s_i acting on one alphabet: swap v_i and v_{i+1}.
    pub fn swap(&self, alpha: Alphabet, i: i64) -> Self {
        self.map_vars(|v| {
            if v.alpha != alpha || v.is_delta() {
                (v, false)
            } else if v.idx == i {
                (Var::new(alpha, i + 1), false)
            } else if v.idx == i + 1 {
                (Var::new(alpha, i), false)
            } else {
                (v, false)
            }
        })
    }

    /// v_i -> v_{w(i)} in one alphabet.
    pub fn act_permutation(&self, alpha: Alphabet, w: &Permutation) -> Self {
        self.map_vars(|v| {
            if v.alpha == alpha && !v.is_delta() {
                (Var::new(alpha, w.apply(v.idx)), false)
            } else {
                (v, false)
            }
        })
    }

    /// gamma^n on the selected alphabets: v_i -> v_{i+n}.
    pub fn shift_vars(&self, alphas: &[Alphabet], n: i64) -> Self {
        self.map_vars(|v| {
            if alphas.contains(&v.alpha) && !v.is_delta() {
                (Var::new(v.alpha, v.idx + n), false)
            } else {
                (v, false)
            }
        })
    }

    /// x_i -> -x_{1-i} and a_i -> -a_{1-i}.
    pub fn omega_vars(&self) -> Self {
        self.omega_on(&[Alphabet::X, Alphabet::A])
    }

    pub fn omega_on(&self, alphas: &[Alphabet]) -> Self {
        self.map_vars(|v| {
            if alphas.contains(&v.alpha) && !v.is_delta() {
                (Var::new(v.alpha, 1 - v.idx), true)
            } else {
                (v, false)
            }
        })
    }

    /// Swap the names of two alphabets.
    pub fn swap_alphabets(&self, p: Alphabet, r: Alphabet) -> Self {
        self.map_vars(|v| {
            if v.is_delta() {
                (v, false)
            } else if v.alpha == p {
                (Var::new(r, v.idx), false)
            } else if v.alpha == r {
                (Var::new(p, v.idx), false)
            } else {
                (v, false)
            }
        })
    }

    /// (f - s_i f) / (v_i - v_{i+1}), computed termwise.
    pub fn divided_difference(&self, alpha: Alphabet, i: i64) -> Self {
        let vi = Var::new(alpha, i);
        let vj = Var::new(alpha, i + 1);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let p = m.exponent(vi);
            let r = m.exponent(vj);
            if p == r {
                continue;
            }
            let rest = m.without(vi).without(vj);
            let (hi, lo, sign) = if p > r { (p, r, c.clone()) } else { (r, p, -c.clone()) };
            // (v_i v_j)^lo times the complete homogeneous sum of degree hi-lo-1
            let d = hi - lo;
            for k in 0..d {
                let mono = rest.mul(&Monomial::from_pairs([(vi, lo + d - 1 - k), (vj, lo + k)]));
                out.add_term(mono, sign.clone());
            }
        }
        out
    }

    /// Replace variables by polynomials; every variable present must be assigned.
    pub fn substitute(&self, assignment: &HashMap<Var, Poly>) -> Result<Self> {
        for v in self.vars() {
            if !assignment.contains_key(&v) {
                return Err(Error::MissingVariable(v.to_string()));
            }
        }
        Ok(self.substitute_with(|v| assignment.get(&v).cloned()))
    }

    /// Replace the variables for which `f` returns a value; others are kept.
    pub fn substitute_with(&self, f: impl Fn(Var) -> Option<Poly>) -> Self {
        let mut cache: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut images: HashMap<Var, Option<Poly>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in &m.0 {
                let img = images.entry(v).or_insert_with(|| f(v)).clone();
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        acc = &acc * &pw;
                    }
                }
            }
            if !kept.is_empty() {
                acc = acc.mul_monomial(&Monomial(kept), &Q::one());
            }
            out += &acc;
        }
        out
    }

    /// Evaluate with rational values for every variable.
    pub fn eval(&self, values: &HashMap<Var, Q>) -> Result<Q> {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = values.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Quotient f / g, failing with the remainder when g does not divide f.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly> {
        let (gm, gc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::Domain("division by zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(&gm) else {
                return Err(Error::NotExact(rem.to_string()));
            };
            let qc = c / &gc;
            rem -= &g.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Split by the part of each monomial in `alpha`: returns map monomial-in-alpha -> cofactor.
    pub fn collect_by(&self, alpha: Alphabet) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside): (Vec<_>, Vec<_>) = m.0.iter().partition(|(v, _)| v.alpha == alpha && !v.is_delta());
            out.entry(Monomial(inside)).or_default().add_term(Monomial(outside), c.clone());
        }
        out
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn parse_term(s: &str) -> Result<(Monomial, Q)> {
    let mut coeff = Q::one();
    let mut pairs = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{s}`")));
        }
        if factor.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (v, e) = match factor.split_once('^') {
            Some((v, e)) => (v, e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
            None => (factor, 1),
        };
        pairs.push((v.parse::<Var>()?, e));
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Poly::zero();
        let mut sign = 1i64;
        let mut start = 0;
        let mut prev: Option<char> = None;
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut pieces = Vec::new();
        for &(i, ch) in &chars {
            if (ch == '+' || ch == '-') && prev != Some('_') {
                pieces.push((sign, &s[start..i]));
                sign = if ch == '-' { -1 } else { 1 };
                start = i + 1;
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        pieces.push((sign, &s[start..]));
        for (k, (sg, body)) in pieces.into_iter().enumerate() {
            if body.trim().is_empty() {
                if k == 0 {
                    continue;
                }
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let (m, c) = parse_term(body)?;
            out.add_term(m, if sg < 0 { -c } else { c });
        }
        Ok(out)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident, $assign_tr:ident, $assign_f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
        impl $assign_tr<Poly> for Poly {
            fn $assign_f(&mut self, rhs: Poly) {
                *self = (&*self).$f(&rhs);
            }
        }
    };
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, Q> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                *acc.entry(m.mul(n)).or_insert_with(Q::zero) += c * d;
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut out = Poly::zero();
        for p in iter {
            out += &p;
        }
        out
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut out = Poly::one();
        for p in iter {
            out *= &p;
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct VarJson {
    alpha: String,
    idx: i64,
    exp: u32,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    vars: Vec<VarJson>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: format!("{}/{}", c.numer(), c.denom()),
                vars: m
                    .0
                    .iter()
                    .map(|&(v, e)| {
                        if v.is_delta() {
                            VarJson { alpha: "delta".into(), idx: 0, exp: e }
                        } else {
                            VarJson { alpha: v.alpha.letter().to_string(), idx: v.idx, exp: e }
                        }
                    })
                    .collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = Poly::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).map_err(D::Error::custom)?;
            let mut pairs = Vec::new();
            for v in t.vars {
                let var = if v.alpha == "delta" {
                    Var::delta()
                } else {
                    let a = Alphabet::from_letter(&v.alpha).ok_or_else(|| D::Error::custom(format!("bad alphabet {}", v.alpha)))?;
                    Var::new(a, v.idx)
                };
                pairs.push((var, v.exp));
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

/// Convert a rational known to be a small integer.
pub fn q_to_i64(c: &Q) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}
