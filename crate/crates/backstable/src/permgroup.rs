//! Finitely supported permutations of the integers, partitions, and the
//! factorizations that index everything else in the crate.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Sequence of simple reflection indices; `[1, 2]` is s1 s2.
pub type Word = Vec<i64>;

/// A bijection of Z moving finitely many integers.
///
/// Stored as a minimal one-line window starting at `base`. Both fields are
/// private so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    base: i64,
    window: Vec<i64>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The simple transposition s_i = (i, i+1).
    pub fn s(i: i64) -> Self {
        Permutation { base: i, window: vec![i + 1, i] }
    }

    /// Build from a one-line window. Fixed points at either end are trimmed.
    pub fn from_window(base: i64, window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        let mut seen = vec![false; window.len()];
        for &v in &window {
            let k = v - base;
            if k < 0 || k >= n || seen[k as usize] {
                return domain(format!("window at base {base} is not a permutation of its positions"));
            }
            seen[k as usize] = true;
        }
        Ok(Self::normalized(base, window))
    }

    fn normalized(mut base: i64, window: Vec<i64>) -> Self {
        let mut lo = 0;
        let mut hi = window.len();
        while lo < hi && window[lo] == base + lo as i64 {
            lo += 1;
        }
        while hi > lo && window[hi - 1] == base + hi as i64 - 1 {
            hi -= 1;
        }
        if lo == hi {
            return Self::identity();
        }
        base += lo as i64;
        Permutation { base, window: window[lo..hi].to_vec() }
    }

    /// Evaluate `f` on the interval `[lo, hi]` and normalize.
    pub fn from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> Result<Self> {
        if hi < lo {
            return Ok(Self::identity());
        }
        Self::from_window(lo, (lo..=hi).map(f).collect())
    }

    pub fn from_word(word: &[i64]) -> Self {
        let mut w = Self::identity();
        for &i in word {
            w = w.mul_s_right(i);
        }
        w
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.is_empty()
    }

    /// Smallest and largest non-fixed points.
    pub fn moved_range(&self) -> Option<(i64, i64)> {
        if self.window.is_empty() {
            None
        } else {
            Some((self.base, self.base + self.window.len() as i64 - 1))
        }
    }

    pub fn apply(&self, i: i64) -> i64 {
        let k = i - self.base;
        if k >= 0 && (k as usize) < self.window.len() {
            self.window[k as usize]
        } else {
            i
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.window.len()];
        for (k, &v) in self.window.iter().enumerate() {
            inv[(v - self.base) as usize] = self.base + k as i64;
        }
        Permutation { base: self.base, window: inv }
    }

    pub fn inverse_apply(&self, v: i64) -> i64 {
        match self.window.iter().position(|&x| x == v) {
            Some(k) => self.base + k as i64,
            None => v,
        }
    }

    /// w s_i: swaps the values in positions i and i+1.
    pub fn mul_s_right(&self, i: i64) -> Self {
        let (lo, hi) = self.span_with(i, i + 1);
        let mut win: Vec<i64> = (lo..=hi).map(|j| self.apply(j)).collect();
        win.swap((i - lo) as usize, (i + 1 - lo) as usize);
        Self::normalized(lo, win)
    }

    /// s_i w: swaps the values i and i+1.
    pub fn mul_s_left(&self, i: i64) -> Self {
        let (lo, hi) = self.span_with(i, i + 1);
        let win = (lo..=hi)
            .map(|j| {
                let v = self.apply(j);
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Self::normalized(lo, win)
    }

    fn span_with(&self, a: i64, b: i64) -> (i64, i64) {
        match self.moved_range() {
            Some((lo, hi)) => (lo.min(a), hi.max(b)),
            None => (a, b),
        }
    }

    /// w t_{ij}: swaps the values in positions i and j.
    pub fn swap_positions(&self, i: i64, j: i64) -> Self {
        let (lo, hi) = self.span_with(i.min(j), i.max(j));
        let mut win: Vec<i64> = (lo..=hi).map(|k| self.apply(k)).collect();
        win.swap((i - lo) as usize, (j - lo) as usize);
        Self::normalized(lo, win)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let (lo, hi) = match (self.moved_range(), other.moved_range()) {
            (None, None) => return Self::identity(),
            (Some(r), None) | (None, Some(r)) => r,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        Self::normalized(lo, (lo..=hi).map(|j| self.apply(other.apply(j))).collect())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut n = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn has_right_descent(&self, i: i64) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    pub fn has_left_descent(&self, i: i64) -> bool {
        self.inverse_apply(i) > self.inverse_apply(i + 1)
    }

    pub fn right_descents(&self) -> Vec<i64> {
        match self.moved_range() {
            Some((lo, hi)) => (lo..hi).filter(|&i| self.has_right_descent(i)).collect(),
            None => vec![],
        }
    }

    pub fn left_descents(&self) -> Vec<i64> {
        self.inverse().right_descents()
    }

    /// Lexicographically least reduced word.
    pub fn reduced_word(&self) -> Word {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(&i) = w.left_descents().first() {
            word.push(i);
            w = w.mul_s_left(i);
        }
        word
    }

    /// All reduced words in lexicographic order.
    pub fn reduced_words(&self) -> Vec<Word> {
        let mut memo = HashMap::new();
        let mut out = reduced_words_memo(self, &mut memo);
        out.sort();
        out
    }

    /// Nonzero entries of the Lehmer code c_i = #{j > i : w(j) < w(i)}.
    pub fn code(&self) -> BTreeMap<i64, usize> {
        let mut code = BTreeMap::new();
        let w = &self.window;
        for i in 0..w.len() {
            let c = w[i + 1..].iter().filter(|&&v| v < w[i]).count();
            if c > 0 {
                code.insert(self.base + i as i64, c);
            }
        }
        code
    }

    /// Inverse of [`Permutation::code`].
    pub fn from_code(code: &BTreeMap<i64, i64>) -> Result<Self> {
        if code.values().any(|&c| c < 0) {
            return domain("code entries must be nonnegative");
        }
        let nz: Vec<(i64, i64)> = code.iter().filter(|(_, &c)| c > 0).map(|(&i, &c)| (i, c)).collect();
        if nz.is_empty() {
            return Ok(Self::identity());
        }
        let lo = nz[0].0;
        let hi = nz.iter().map(|&(i, c)| i + c).max().unwrap();
        let mut unused: Vec<i64> = (lo..=hi).collect();
        let mut win = Vec::new();
        for i in lo..=hi {
            let c = *code.get(&i).unwrap_or(&0) as usize;
            if c >= unused.len() {
                return domain(format!("code entry at {i} is too large"));
            }
            win.push(unused.remove(c));
        }
        Self::from_window(lo, win)
    }

    /// Indices i such that s_i appears in a reduced word.
    pub fn support(&self) -> BTreeSet<i64> {
        let mut s = BTreeSet::new();
        let mut running = i64::MIN;
        if let Some((lo, hi)) = self.moved_range() {
            for i in lo..hi {
                running = running.max(self.apply(i));
                if running > i {
                    s.insert(i);
                }
            }
        }
        s
    }

    pub fn max_support(&self) -> Option<i64> {
        self.support().iter().next_back().copied()
    }

    pub fn min_support(&self) -> Option<i64> {
        self.support().iter().next().copied()
    }

    /// Fixes every i <= 0.
    pub fn in_s_plus(&self) -> bool {
        self.is_identity() || self.base >= 1
    }

    /// Fixes every i > 0.
    pub fn in_s_minus(&self) -> bool {
        self.moved_range().map_or(true, |(_, hi)| hi <= 0)
    }

    /// Stabilizes the nonpositive integers, i.e. avoids s_0.
    pub fn in_s_nonzero(&self) -> bool {
        !self.support().contains(&0)
    }

    /// Split an element of S_- x S_+ into its two factors.
    pub fn split_nonzero(&self) -> Option<(Self, Self)> {
        if !self.in_s_nonzero() {
            return None;
        }
        let neg = Self::from_fn(self.base.min(0), 0, |i| self.apply(i)).ok()?;
        let hi = self.moved_range().map_or(1, |r| r.1.max(1));
        let pos = Self::from_fn(1, hi, |i| self.apply(i)).ok()?;
        Some((neg, pos))
    }

    /// ws_i > w for every i != k.
    pub fn is_k_grassmannian(&self, k: i64) -> bool {
        self.right_descents().iter().all(|&i| i == k)
    }

    pub fn is_zero_grassmannian(&self) -> bool {
        self.is_k_grassmannian(0)
    }

    /// (I_+, I_-) with I_+ = Z_{>0} cap w(Z_{<=0}) and I_- = Z_{<=0} cap w(Z_{>0}).
    pub fn descent_sets(&self) -> (BTreeSet<i64>, BTreeSet<i64>) {
        let mut plus = BTreeSet::new();
        let mut minus = BTreeSet::new();
        for (k, &v) in self.window.iter().enumerate() {
            let i = self.base + k as i64;
            if i <= 0 && v > 0 {
                plus.insert(v);
            }
            if i > 0 && v <= 0 {
                minus.insert(v);
            }
        }
        (plus, minus)
    }

    /// gamma^n: conjugation by the shift i -> i+n, so s_i -> s_{i+n}.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_identity() {
            return Self::identity();
        }
        Permutation { base: self.base + n, window: self.window.iter().map(|v| v + n).collect() }
    }

    /// omega(w)(j) = 1 - w(1 - j), so s_i -> s_{-i}.
    pub fn omega(&self) -> Self {
        match self.moved_range() {
            None => Self::identity(),
            Some((lo, hi)) => Self::normalized(1 - hi, (1 - hi..=1 - lo).map(|j| 1 - self.apply(1 - j)).collect()),
        }
    }

    pub fn is_321_avoiding(&self) -> bool {
        let w = &self.window;
        // w contains 321 iff some middle entry has a larger entry before and a smaller after
        for j in 0..w.len() {
            let before = w[..j].iter().any(|&v| v > w[j]);
            let after = w[j + 1..].iter().any(|&v| v < w[j]);
            if before && after {
                return false;
            }
        }
        true
    }

    /// Tests v <= w in Bruhat order by the subword property on one reduced word of w.
    pub fn bruhat_leq(v: &Self, w: &Self) -> bool {
        let lv = v.length();
        let lw = w.length();
        if lv > lw {
            return false;
        }
        if lv == lw {
            return v == w;
        }
        let mut reach: HashSet<Self> = HashSet::from([Self::identity()]);
        for i in w.reduced_word() {
            let next: Vec<Self> = reach
                .iter()
                .filter(|u| !u.has_right_descent(i) && u.length() < lv)
                .map(|u| u.mul_s_right(i))
                .collect();
            reach.extend(next);
        }
        reach.contains(v)
    }

    /// All pairs (u, v) with w = uv and l(u) + l(v) = l(w), sorted by (l(u), u).
    pub fn factor_pairs(&self) -> Vec<(Self, Self)> {
        // prefixes of w form the lower right-weak interval below w
        let mut seen: HashSet<Self> = HashSet::from([self.clone()]);
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(u) = queue.pop_front() {
            for i in u.right_descents() {
                let x = u.mul_s_right(i);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let mut out: Vec<(Self, Self)> = seen
            .into_iter()
            .map(|u| {
                let v = u.inverse().compose(self);
                (u, v)
            })
            .collect();
        out.sort_by(|a, b| (a.0.length(), &a.0).cmp(&(b.0.length(), &b.0)));
        out
    }

    /// Length-additive factorizations into k factors, each passing its predicate.
    pub fn length_additive_factorizations(&self, k: usize, preds: &[&dyn Fn(&Self) -> bool]) -> Vec<Vec<Self>> {
        assert!(k >= 1, "need at least one factor");
        let ok = |idx: usize, u: &Self| preds.get(idx).map_or(true, |p| p(u));
        if k == 1 {
            return if ok(0, self) { vec![vec![self.clone()]] } else { vec![] };
        }
        let mut out = Vec::new();
        for (u, rest) in self.factor_pairs() {
            if !ok(0, &u) {
                continue;
            }
            let tail_preds: Vec<&dyn Fn(&Self) -> bool> = preds.iter().skip(1).copied().collect();
            for mut tail in rest.length_additive_factorizations(k - 1, &tail_preds) {
                tail.insert(0, u.clone());
                out.push(tail);
            }
        }
        out
    }

    /// Product of s_j over J in increasing order.
    pub fn increasing(j: &BTreeSet<i64>) -> Self {
        let word: Word = j.iter().copied().collect();
        Self::from_word(&word)
    }

    /// Product of s_k over K in decreasing order.
    pub fn decreasing(k: &BTreeSet<i64>) -> Self {
        let word: Word = k.iter().rev().copied().collect();
        Self::from_word(&word)
    }

    pub fn is_increasing(&self) -> bool {
        let s = self.support();
        s.len() == self.length() && *self == Self::increasing(&s)
    }

    pub fn is_decreasing(&self) -> bool {
        let s = self.support();
        s.len() == self.length() && *self == Self::decreasing(&s)
    }

    /// All (J, K) with w = u_J d_K length-additively.
    pub fn lambda_factorizations(&self) -> Vec<(BTreeSet<i64>, BTreeSet<i64>)> {
        let mut out: Vec<_> = self
            .factor_pairs()
            .into_iter()
            .filter(|(u, d)| u.is_increasing() && d.is_decreasing())
            .map(|(u, d)| (u.support(), d.support()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every element of S_n acting on {1..n}, in lexicographic one-line order.
    pub fn all_of_sn(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<i64> = (1..=n as i64).collect();
        loop {
            out.push(Self::normalized(1, cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }

    /// Every permutation of the interval [lo, hi].
    pub fn all_of_interval(lo: i64, hi: i64) -> Vec<Self> {
        if hi < lo {
            return vec![Self::identity()];
        }
        Self::all_of_sn((hi - lo + 1) as usize).into_iter().map(|w| w.shift(lo - 1)).collect()
    }

    /// Parse either `base:v1,...` or the word form `s:i1,i2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn reduced_words_memo(w: &Permutation, memo: &mut HashMap<Permutation, Vec<Word>>) -> Vec<Word> {
    if w.is_identity() {
        return vec![vec![]];
    }
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let mut out = Vec::new();
    for i in w.right_descents() {
        for mut word in reduced_words_memo(&w.mul_s_right(i), memo) {
            word.push(i);
            out.push(word);
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        self.compose(&rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "{}:{}", self.base, vals.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "id" || s.is_empty() {
            return Ok(Self::identity());
        }
        let (head, tail) = s.split_once(':').ok_or_else(|| Error::Parse(format!("permutation `{s}` lacks ':'")))?;
        let nums = parse_int_list(tail)?;
        if head.trim() == "s" {
            return Ok(Self::from_word(&nums));
        }
        let base: i64 = head.trim().parse().map_err(|_| Error::Parse(format!("bad base `{head}`")))?;
        Self::from_window(base, nums)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
        .collect()
}

pub fn is_reduced(word: &[i64]) -> bool {
    Permutation::from_word(word).length() == word.len()
}

/// Weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(vec![])
    }

    /// Trailing zeros are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|p| p[0] < p[1]) || parts.contains(&0) {
            return domain(format!("{parts:?} is not a partition"));
        }
        Ok(Partition(parts))
    }

    pub fn from_sorted(parts: Vec<usize>) -> Self {
        Self::new(parts).expect("parts must be weakly decreasing")
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// lambda_i with 1-based rows, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let w = self.part(1);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    pub fn contains(&self, mu: &Self) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(m, l)| m <= l)
    }

    pub fn durfee(&self) -> usize {
        self.0.iter().enumerate().take_while(|(i, &p)| p > *i).count()
    }

    pub fn is_hook(&self) -> bool {
        self.durfee() <= 1
    }

    /// (q+1, 1^p).
    pub fn hook(p: usize, q: usize) -> Self {
        let mut parts = vec![q + 1];
        parts.extend(std::iter::repeat(1).take(p));
        Partition(parts)
    }

    /// Cells as 1-based (row, column).
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &p) in self.0.iter().enumerate() {
            for c in 1..=p {
                out.push((r + 1, c));
            }
        }
        out
    }

    pub fn skew_cells(&self, mu: &Self) -> Vec<(usize, usize)> {
        self.cells().into_iter().filter(|&(r, c)| c > mu.part(r)).collect()
    }

    /// The partition with one box added in row r (1-based), if valid.
    pub fn add_box(&self, r: usize) -> Option<Self> {
        if r == 0 || r > self.len() + 1 || (r > 1 && self.part(r - 1) <= self.part(r)) {
            return None;
        }
        let mut parts = self.0.clone();
        if r > parts.len() {
            parts.push(1);
        } else {
            parts[r - 1] += 1;
        }
        Some(Partition(parts))
    }

    pub fn remove_box(&self, r: usize) -> Option<Self> {
        if r == 0 || r > self.len() || self.part(r + 1) >= self.part(r) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[r - 1] -= 1;
        Some(Self::from_sorted(parts))
    }

    /// Add the addable box of content i, if one exists.
    pub fn add_box_on_diagonal(&self, i: i64) -> Option<Self> {
        (1..=self.len() + 1).find_map(|r| {
            let c = self.part(r) + 1;
            if c as i64 - r as i64 == i {
                self.add_box(r)
            } else {
                None
            }
        })
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.part(1) <= cols
    }

    /// All partitions of n, in reverse lexicographic order (n) first.
    pub fn all_of_size(n: usize) -> Vec<Self> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut vec![], &mut out);
        out
    }

    pub fn all_up_to(n: usize) -> Vec<Self> {
        (0..=n).flat_map(Self::all_of_size).collect()
    }

    /// Every partition contained in the rows x cols rectangle.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Self> {
        Self::all_up_to(rows * cols).into_iter().filter(|p| p.fits_in(rows, cols)).collect()
    }

    /// Partitions nu with mu inside nu and |nu| <= cap.
    pub fn supersets(&self, cap: usize) -> Vec<Self> {
        Self::all_up_to(cap).into_iter().filter(|l| l.contains(self)).collect()
    }

    /// The 0-Grassmannian permutation w_lambda.
    pub fn grassmannian(&self) -> Permutation {
        if self.is_empty() {
            return Permutation::identity();
        }
        let conj = self.conjugate();
        let lo = 1 - self.len() as i64;
        let hi = self.part(1) as i64;
        Permutation::from_fn(lo, hi, |i| {
            if i <= 0 {
                i + self.part((1 - i) as usize) as i64
            } else {
                i - conj.part(i as usize) as i64
            }
        })
        .expect("w_lambda is a permutation")
    }

    /// Inverse of [`Partition::grassmannian`].
    pub fn from_grassmannian(w: &Permutation) -> Result<Self> {
        if !w.is_zero_grassmannian() {
            return domain(format!("{w} is not 0-Grassmannian"));
        }
        let mut parts = Vec::new();
        let mut i = 0;
        loop {
            let d = w.apply(i) - i;
            if d <= 0 {
                break;
            }
            parts.push(d as usize);
            i -= 1;
        }
        Self::new(parts)
    }

    /// w_{lambda/mu} = w_lambda w_mu^{-1}.
    pub fn skew_perm(&self, mu: &Self) -> Result<Permutation> {
        if !self.contains(mu) {
            return domain(format!("{mu} is not contained in {self}"));
        }
        Ok(self.grassmannian().compose(&mu.grassmannian().inverse()))
    }

    /// Connected skew shapes without 2x2 blocks.
    pub fn is_thin_skew(&self, mu: &Self) -> bool {
        let cells: HashSet<(usize, usize)> = self.skew_cells(mu).into_iter().collect();
        !cells.iter().any(|&(r, c)| {
            cells.contains(&(r + 1, c)) && cells.contains(&(r, c + 1)) && cells.contains(&(r + 1, c + 1))
        })
    }

    /// lambda/mu has at most one box per column.
    pub fn is_horizontal_strip(&self, mu: &Self) -> bool {
        self.contains(mu) && (1..self.len()).all(|r| mu.part(r) >= self.part(r + 1))
    }

    /// lambda/mu has at most one box per row.
    pub fn is_vertical_strip(&self, mu: &Self) -> bool {
        self.contains(mu) && (1..=self.len()).all(|r| self.part(r) <= mu.part(r) + 1)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(Permutation::s(1).length(), 1);
        assert_eq!(p("1:3,2,1").length(), 3);
    }

    #[test]
    fn normal_form_trims_fixed_points() {
        let w = Permutation::from_window(-1, vec![-1, 0, 2, 1, 3]).unwrap();
        assert_eq!(w.base(), 1);
        assert_eq!(w.window(), &[2, 1]);
        assert_eq!(w, Permutation::s(1));
        assert!(Permutation::from_window(0, vec![0, 0]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let w = p("-2:-2,-1,1,2,0,4,3");
        assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
        assert_eq!(p("s:1,2,1"), p("1:3,2,1"));
        assert_eq!(p("id"), Permutation::identity());
    }

    #[test]
    fn product_convention() {
        // (uv)(i) = u(v(i))
        let u = Permutation::s(1);
        let v = Permutation::s(2);
        let uv = &u * &v;
        assert_eq!(uv.apply(3), 1);
        assert_eq!(uv, Permutation::from_word(&[1, 2]));
        assert_eq!(u.mul_s_left(2), &v * &u);
    }

    #[test]
    fn reduced_words_small() {
        assert_eq!(Permutation::identity().reduced_words(), vec![Vec::<i64>::new()]);
        assert_eq!(p("s:1,2,1").reduced_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(p("1:4,3,2,1").reduced_words().len(), 16);
        assert_eq!(p("s:2,1").reduced_word(), vec![2, 1]);
    }

    #[test]
    fn codes() {
        assert!(Permutation::identity().code().is_empty());
        assert_eq!(Permutation::s(1).code(), BTreeMap::from([(1, 1)]));
        let c = BTreeMap::from([(-1, 0), (0, 1)]);
        assert_eq!(Permutation::from_code(&c).unwrap(), Permutation::s(0));
        assert!(Permutation::from_code(&BTreeMap::from([(1, -1)])).is_err());
        for w in Permutation::all_of_sn(4) {
            let c: BTreeMap<i64, i64> = w.code().into_iter().map(|(i, c)| (i, c as i64)).collect();
            assert_eq!(Permutation::from_code(&c).unwrap(), w);
        }
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(Partition::empty().grassmannian(), Permutation::identity());
        assert_eq!(part(&[1]).grassmannian(), Permutation::s(0));
        assert_eq!(part(&[2]).grassmannian(), p("0:2,0,1"));
        assert_eq!(part(&[2, 1, 1]).grassmannian(), Permutation::from_word(&[-2, -1, 1, 0]));
        let (ip, im) = part(&[2, 1, 1]).grassmannian().descent_sets();
        assert_eq!(ip, BTreeSet::from([2]));
        assert_eq!(im, BTreeSet::from([-2]));
        let (ip, im) = part(&[4, 4, 3, 1]).grassmannian().descent_sets();
        assert_eq!(ip, BTreeSet::from([1, 3, 4]));
        assert_eq!(im, BTreeSet::from([-3, -1, 0]));
    }

    #[test]
    fn grassmannian_round_trip_and_omega() {
        for lam in Partition::all_up_to(5) {
            let w = lam.grassmannian();
            assert!(w.is_zero_grassmannian());
            assert_eq!(w.length(), lam.size());
            assert_eq!(Partition::from_grassmannian(&w).unwrap(), lam);
            assert_eq!(w.omega(), lam.conjugate().grassmannian());
            let (ip, im) = w.descent_sets();
            assert_eq!(ip.len(), im.len());
        }
    }

    #[test]
    fn skew_perms() {
        assert!(part(&[1]).skew_perm(&part(&[2])).is_err());
        assert_eq!(part(&[1]).skew_perm(&Partition::empty()).unwrap(), Permutation::s(0));
        for lam in Partition::all_up_to(5) {
            for mu in Partition::all_up_to(lam.size()) {
                if !lam.contains(&mu) {
                    continue;
                }
                let w = lam.skew_perm(&mu).unwrap();
                assert!(w.is_321_avoiding());
                assert_eq!(w.length() + mu.size(), lam.size());
            }
        }
    }

    #[test]
    fn pattern_avoidance() {
        assert!(Permutation::identity().is_321_avoiding());
        assert!(!p("s:1,2,1").is_321_avoiding());
        assert!(p("s:0,-1,1").is_321_avoiding());
    }

    #[test]
    fn factorizations() {
        let id = Permutation::identity();
        let none: [&dyn Fn(&Permutation) -> bool; 0] = [];
        assert_eq!(id.length_additive_factorizations(2, &none), vec![vec![id.clone(), id.clone()]]);
        let s1 = Permutation::s(1);
        assert_eq!(s1.length_additive_factorizations(2, &none).len(), 2);
        assert_eq!(p("s:1,2,1").length_additive_factorizations(2, &none).len(), 6);
        for w in Permutation::all_of_sn(4) {
            for f in w.length_additive_factorizations(3, &none) {
                assert_eq!(f.iter().map(|u| u.length()).sum::<usize>(), w.length());
                assert_eq!(&(&f[0] * &f[1]) * &f[2], w);
            }
        }
    }

    #[test]
    fn lambda_factorization_examples() {
        assert_eq!(Permutation::identity().lambda_factorizations(), vec![(BTreeSet::new(), BTreeSet::new())]);
        let got = p("s:1,2").lambda_factorizations();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&(BTreeSet::from([1, 2]), BTreeSet::new())));
        assert!(got.contains(&(BTreeSet::from([1]), BTreeSet::from([2]))));
        // s1 s2 s1 = u_{1} d_{1,2} = u_{1,2} d_{1}
        assert_eq!(p("s:1,2,1").lambda_factorizations().len(), 2);
        assert!(p("1:3,4,1,2").lambda_factorizations().is_empty());
    }

    #[test]
    fn shift_and_omega() {
        assert_eq!(p("s:-3,-2,-1").omega(), p("s:3,2,1"));
        assert_eq!(Permutation::s(0).shift(1), Permutation::s(1));
        for w in Permutation::all_of_interval(-1, 2) {
            assert_eq!(w.omega().omega(), w);
            assert_eq!(w.shift(3).shift(-3), w);
            assert_eq!(w.omega().length(), w.length());
            assert_eq!(w.omega().inverse(), w.inverse().omega());
        }
    }

    #[test]
    fn support_bruhat_grassmannian() {
        assert_eq!(p("s:1,2").support(), BTreeSet::from([1, 2]));
        assert!(Permutation::bruhat_leq(&Permutation::s(1), &p("s:1,2,1")));
        assert!(!Permutation::bruhat_leq(&p("s:1,2"), &p("s:2,1")));
        let s4 = Permutation::all_of_sn(4);
        for v in &s4 {
            for w in &s4 {
                // cross-check against the tableau criterion
                let leq = (1..=4).all(|k| {
                    let mut a: Vec<i64> = (1..=k).map(|i| v.apply(i)).collect();
                    let mut b: Vec<i64> = (1..=k).map(|i| w.apply(i)).collect();
                    a.sort();
                    b.sort();
                    a.iter().zip(&b).all(|(x, y)| x <= y)
                });
                assert_eq!(Permutation::bruhat_leq(v, w), leq, "{v} {w}");
            }
        }
    }

    #[test]
    fn split_nonzero_factors() {
        let w = p("s:-1,2");
        let (neg, pos) = w.split_nonzero().unwrap();
        assert_eq!(neg, Permutation::s(-1));
        assert_eq!(pos, Permutation::s(2));
        assert!(Permutation::s(0).split_nonzero().is_none());
    }

    #[test]
    fn partition_basics() {
        let lam = part(&[4, 4, 3, 1]);
        assert_eq!(lam.conjugate(), part(&[4, 3, 3, 2]));
        assert_eq!(lam.durfee(), 3);
        assert_eq!(Partition::all_of_size(5).len(), 7);
        assert_eq!("4,4,3,1".parse::<Partition>().unwrap(), lam);
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(part(&[1]).add_box_on_diagonal(1), Some(part(&[2])));
        assert_eq!(part(&[1]).add_box_on_diagonal(-1), Some(part(&[1, 1])));
        assert_eq!(part(&[1]).add_box_on_diagonal(0), None);
    }
}
