//! Verification suites behind `backstable verify`.
//!
//! Each suite expands into independent cases that run on the rayon pool.
//! Results are sorted by case key, so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use backstable::doublesym::{self, DoubleSymFunc};
use backstable::gkm::{self, LocalizedClass};
use backstable::homology;
use backstable::pipedream;
use backstable::schubert;
use backstable::symfunc::des_set;
use backstable::{Partition, Permutation, Poly, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const NAMES: [&str; 17] = [
    "bjs",
    "square-dreams",
    "rect-dreams",
    "cancellation",
    "coproduct-window",
    "eg",
    "localization",
    "double-schur",
    "double-stanley",
    "monk",
    "hook-pieri",
    "creation",
    "kl",
    "triple-eg",
    "structure-constants",
    "positivity",
    "gkm",
];

type Check = std::result::Result<(), String>;

struct Case {
    key: String,
    /// (support width, length) of the permutation under test; used to pick the smallest counterexample.
    size: (i64, usize),
    run: Box<dyn Fn() -> Check + Send + Sync>,
}

impl Case {
    fn new(key: impl Into<String>, size: (i64, usize), run: impl Fn() -> Check + Send + Sync + 'static) -> Self {
        Case { key: key.into(), size, run: Box::new(run) }
    }

    fn perm(w: &Permutation, run: impl Fn() -> Check + Send + Sync + 'static) -> Self {
        Case::new(w.to_string(), perm_size(w), run)
    }
}

fn perm_size(w: &Permutation) -> (i64, usize) {
    let width = w.moved_range().map_or(0, |(lo, hi)| hi - lo + 1);
    (width, w.length())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub size: usize,
    pub cases: usize,
    pub failures: Vec<Failure>,
    /// Smallest failing case, by support width and then length.
    pub counterexample: Option<Failure>,
    /// Kept off stdout so repeated runs print identical bytes.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} (size {}): {} cases, {} failures", self.suite, self.size, self.cases, self.failures.len())?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "  minimal counterexample {}: {}", c.case, c.message)?;
        }
        Ok(())
    }
}

/// Runs one suite, or every suite for `"all"`. Unknown names give `None`.
pub fn run_suite(name: &str, size: usize) -> Option<Vec<SuiteReport>> {
    if name == "all" {
        return Some(NAMES.iter().map(|n| run_one(n, size)).collect());
    }
    NAMES.contains(&name).then(|| vec![run_one(name, size)])
}

fn run_one(name: &str, size: usize) -> SuiteReport {
    let start = Instant::now();
    let cases = if size == 0 { vec![] } else { cases(name, size) };
    let mut results: Vec<(String, (i64, usize), Check)> = cases
        .par_iter()
        .map(|c| {
            let r = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.run)()))
                .unwrap_or_else(|_| Err("panicked".into()));
            (c.key.clone(), c.size, r)
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let failures: Vec<(String, (i64, usize), String)> =
        results.into_iter().filter_map(|(k, s, r)| r.err().map(|m| (k, s, m))).collect();
    let counterexample = failures
        .iter()
        .min_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)))
        .map(|(k, _, m)| Failure { case: k.clone(), message: m.clone() });
    SuiteReport {
        suite: name.to_string(),
        size,
        cases: cases.len(),
        failures: failures.into_iter().map(|(case, _, message)| Failure { case, message }).collect(),
        counterexample,
        wall_time: start.elapsed(),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn part(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn rng(seed: u64) -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(seed)
}

fn sn(n: usize) -> Vec<Permutation> {
    Permutation::all_of_sn(n.max(1))
}

fn cases(name: &str, n: usize) -> Vec<Case> {
    match name {
        "bjs" => sn(n.min(5))
            .into_iter()
            .map(|w| {
                Case::perm(&w.clone(), move || {
                    let bjs = schubert::schubert_bjs(&w).map_err(err)?;
                    let dd = schubert::schubert_dd(&w).map_err(err)?;
                    ensure(bjs == dd, || format!("{bjs} != {dd}"))
                })
            })
            .collect(),
        "square-dreams" => sn(n.min(4))
            .into_iter()
            .map(|w| {
                Case::perm(&w.clone(), move || {
                    let sum: Poly = pipedream::enumerate_square(&w).map_err(err)?.iter().map(|d| d.weight()).sum();
                    let want = schubert::schubert_double(&w).map_err(err)?;
                    ensure(sum == want, || format!("{sum} != {want}"))
                })
            })
            .collect(),
        "rect-dreams" => {
            let m = n.min(3);
            sn(m)
                .into_iter()
                .map(|w| {
                    Case::perm(&w.clone(), move || {
                        let mut sum = Poly::zero();
                        for d in pipedream::enumerate_rect(&w, m).map_err(err)? {
                            let lambda = d.lambda_of().ok_or("rect dream without a partition")?;
                            let s = doublesym::eps_truncate(&DoubleSymFunc::schur(lambda), m).map_err(err)?;
                            sum += &(&d.weight() * &s);
                        }
                        let want = schubert::backstable_double_canonical(&w).eps_window(m).map_err(err)?;
                        ensure(sum == want, || "decomposition differs".into())
                    })
                })
                .collect()
        }
        "cancellation" => sn(n.min(5))
            .into_iter()
            .map(|w| {
                Case::perm(&w.clone(), move || {
                    let s = schubert::cancellation_sum(&w).map_err(err)?;
                    let want = if w.is_identity() { Poly::one() } else { Poly::zero() };
                    ensure(s == want, || format!("sum is {s}"))
                })
            })
            .collect(),
        "coproduct-window" => {
            let m = n.min(4) as i64;
            let lo = -(m / 2);
            Permutation::all_of_interval(lo, lo + m - 1)
                .into_iter()
                .filter(|w| w.length() <= 5)
                .map(|w| {
                    Case::perm(&w.clone(), move || {
                        let lhs = schubert::backstable_canonical(&w).window(-m, m).map_err(err)?;
                        let rhs = schubert::backstable_window(&w, -m, m, false).map_err(err)?;
                        ensure(lhs == rhs, || format!("{lhs} != {rhs}"))
                    })
                })
                .collect()
        }
        "eg" => {
            let m = n.min(5);
            sn(m)
                .into_iter()
                .map(|w| {
                    Case::perm(&w.clone(), move || {
                        let dreams = pipedream::shape_counts(&w).map_err(err)?;
                        let classes = pipedream::eg_insertion_counts(&w);
                        let stanley: BTreeMap<Partition, usize> = schubert::stanley(&w)
                            .coeffs()
                            .iter()
                            .map(|(l, c)| (l.clone(), c.constant_term().to_integer().try_into().unwrap_or(usize::MAX)))
                            .collect();
                        ensure(dreams == stanley && classes == stanley, || {
                            format!("dreams {dreams:?}, classes {classes:?}, Stanley {stanley:?}")
                        })?;
                        for word in w.reduced_words() {
                            let (_, q) = pipedream::eg_pq(&word, m).map_err(err)?;
                            let read: Vec<i64> = word.iter().rev().copied().collect();
                            let des: Vec<usize> = (1..read.len()).filter(|&k| read[k - 1] > read[k]).collect();
                            ensure(des == des_set(&q), || format!("{word:?}: Des {des:?} vs {:?}", des_set(&q)))?;
                        }
                        Ok(())
                    })
                })
                .collect()
        }
        "localization" => {
            let all = sn(n.min(4));
            all.iter()
                .flat_map(|v| all.iter().map(move |w| (v.clone(), w.clone())))
                .map(|(v, w)| {
                    let size = (perm_size(&w).0, v.length() + w.length());
                    Case::new(format!("{v} at {w}"), size, move || {
                        let b = gkm::billey_localization(&v, &w);
                        let r = gkm::localization_recurrence(&v, &w);
                        let l = gkm::localization_recurrence_left(&v, &w);
                        let x = gkm::localize_schubert(&v, &w);
                        ensure(b == r && b == l && b == x, || format!("{b} | {r} | {l} | {x}"))
                    })
                })
                .collect()
        }
        "double-schur" => {
            let m = n.min(3);
            Partition::all_in_box(m, m)
                .into_iter()
                .map(|lambda| {
                    let size = (lambda.len() as i64 + lambda.part(1) as i64, lambda.size());
                    Case::new(lambda.to_string(), size, move || {
                        let jt = doublesym::jacobi_trudi(&lambda, m);
                        let ssyt = doublesym::ssyt_formula(&lambda, m);
                        let dreams: Poly =
                            pipedream::enumerate_halfplane(&lambda, m).map_err(err)?.iter().map(|d| d.weight()).sum();
                        let window = schubert::backstable_window(&lambda.grassmannian(), 1 - m as i64, m as i64, true)
                            .map_err(err)?;
                        let eps = doublesym::eps_truncate(&DoubleSymFunc::schur(lambda.clone()), m).map_err(err)?;
                        ensure(jt == ssyt && ssyt == dreams && dreams == window && window == eps, || "disagreement".into())
                    })
                })
                .collect()
        }
        "double-stanley" => {
            let r = n as i64;
            (-r..=r)
                .map(|k| {
                    Case::new(format!("k={k:+03}"), (2, k.unsigned_abs() as usize), move || {
                        let f = doublesym::double_stanley(&Permutation::from_word(&[k + 1, k]));
                        let want = DoubleSymFunc::schur(part("2"))
                            .add(&DoubleSymFunc::schur(part("1")).scale(&(&Poly::a(1) - &Poly::a(k + 1))));
                        ensure(f == want, || format!("F(s{}s{k}) = {f}", k + 1))?;
                        let f = doublesym::double_stanley(&Permutation::from_word(&[k - 1, k]));
                        let want = DoubleSymFunc::schur(part("1,1"))
                            .add(&DoubleSymFunc::schur(part("1")).scale(&(&Poly::a(k) - &Poly::a(0))));
                        ensure(f == want, || format!("F(s{}s{k}) = {f}", k - 1))
                    })
                })
                .collect()
        }
        "monk" => Partition::all_up_to(n.min(4))
            .into_iter()
            .map(|mu| {
                Case::new(mu.to_string(), (mu.len() as i64, mu.size()), move || {
                    let cap = mu.size() + 2;
                    let m = homology::monk_rule(&mu, cap);
                    for lambda in mu.supersets(cap) {
                        if lambda == mu {
                            continue;
                        }
                        let want = homology::pieri_oracle(&lambda, &mu, &part("1"));
                        let got = m.get(&lambda).cloned().unwrap_or_default();
                        ensure(got == want, || format!("at {lambda}: {got} vs {want}"))?;
                    }
                    Ok(())
                })
            })
            .collect(),
        "hook-pieri" => {
            let h = n.min(3) / 2;
            Partition::all_up_to(n.min(3))
                .into_iter()
                .flat_map(|mu| (0..=h).flat_map(move |p| (0..=h).map(move |q| (p, q))).map(move |(p, q)| (mu.clone(), p, q)))
                .map(|(mu, p, q)| {
                    Case::new(format!("{mu} by hook({p},{q})"), (mu.len() as i64, mu.size() + p + q), move || {
                        let nu = Partition::hook(p, q);
                        let cap = mu.size() + nu.size() + 1;
                        let got_all = homology::hook_pieri(&mu, p, q, cap);
                        for lambda in mu.supersets(cap) {
                            if lambda == mu {
                                continue;
                            }
                            let got = got_all.get(&lambda).cloned().unwrap_or_default();
                            let want = homology::pieri_oracle(&lambda, &mu, &nu);
                            ensure(got == want, || format!("at {lambda}: {got} vs {want}"))?;
                        }
                        Ok(())
                    })
                })
                .collect()
        }
        "creation" => Partition::all_up_to(n.min(3))
            .into_iter()
            .map(|lambda| {
                Case::new(lambda.to_string(), (lambda.len() as i64, lambda.size()), move || {
                    let cap = lambda.size() + 3;
                    let made = homology::create_dual_schur(&lambda, cap).map_err(err)?;
                    ensure(made == homology::dual_schur(&lambda, cap), || "created series differs".into())
                })
            })
            .collect(),
        "kl" => {
            let rows = n.clamp(2, 4);
            vec![Case::new(format!("1 * 1,1 in {rows}x3"), (rows as i64, 3), move || {
                let r = homology::kl_product(&part("1"), &part("1,1"), rows, 3);
                let schur = r.dual.iter().fold(BTreeMap::<Partition, Poly>::new(), |mut acc, (l, c)| {
                    for (nu, d) in homology::delta_dual_schur(l, 9).coeffs() {
                        if nu.fits_in(rows, 3) {
                            *acc.entry(nu.clone()).or_default() += &(c * d);
                        }
                    }
                    acc
                });
                let schur: BTreeMap<Partition, Poly> = schur.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                ensure(schur == r.schur, || "dual and Schur expansions disagree".into())?;
                let lr = r
                    .schur
                    .iter()
                    .filter(|(l, _)| l.size() == 3)
                    .all(|(l, c)| homology::nonequivariant(c) == homology::lr_coefficient(l, &part("1"), &part("1,1")));
                ensure(lr, || "lowest degree is not Littlewood-Richardson".into())
            })]
        }
        "triple-eg" => {
            let r = n as i64 / 2;
            (-r..=r)
                .flat_map(|i| (i + 1..=r + 1).map(move |k| (i, k)))
                .map(|(i, k)| {
                    let w = Permutation::from_word(&(i..=k).collect::<Vec<_>>());
                    Case::perm(&w.clone(), move || {
                        let got = doublesym::triple_eg(&w, &part("1"));
                        let want: Poly = (i + 1..=k).map(|j| &Poly::a(j) - &Poly::b(0)).product();
                        ensure(got == want, || format!("{got} vs {want}"))?;
                        if !w.lambda_factorizations().is_empty() {
                            for (p, q) in [(0, 1), (1, 0), (1, 1)] {
                                let h = doublesym::hook_triple_eg(&w, p, q);
                                let t = doublesym::triple_eg(&w, &Partition::hook(p, q));
                                ensure(h == t, || format!("hook({p},{q}): {h} vs {t}"))?;
                            }
                        }
                        Ok(())
                    })
                })
                .collect()
        }
        "structure-constants" => {
            let pool: Vec<Permutation> =
                sn(n.min(3)).into_iter().flat_map(|w| [w.shift(-1), w]).filter(|w| !w.is_identity()).collect();
            pool.iter()
                .flat_map(|u| pool.iter().map(move |v| (u.clone(), v.clone())))
                .filter(|(u, v)| u <= v && u.length() + v.length() <= 4)
                .map(|(u, v)| {
                    let size = (perm_size(&u).0.max(perm_size(&v).0), u.length() + v.length());
                    Case::new(format!("{u} * {v}"), size, move || {
                        let zero = Q::from_integer(0.into());
                        for (w, q) in schubert::structure_constants(&u, &v) {
                            ensure(q.is_integer() && q >= zero, || format!("coefficient of {w} is {q}"))?;
                            ensure(w.length() == u.length() + v.length(), || format!("{w} has the wrong length"))?;
                        }
                        Ok(())
                    })
                })
                .collect()
        }
        "positivity" => sn(n.min(4))
            .into_iter()
            .flat_map(|w| [w.shift(-2), w])
            .filter(|w| !w.is_identity())
            .enumerate()
            .map(|(k, w)| {
                Case::perm(&w.clone(), move || {
                    ensure(doublesym::positivity_spot_check(&w, 5, k as u64), || "negative value".into())
                })
            })
            .collect(),
        "gkm" => {
            let m = n.min(4) as i64;
            let lo = -(m / 2);
            let hi = lo + m - 1;
            let perms = Permutation::all_of_interval(lo, hi);
            let small: Vec<Permutation> = perms.iter().filter(|v| v.length() <= 3).cloned().collect();
            let mut r = rng(0x5eed);
            (0..10 * n)
                .map(|t| {
                    let v = small.choose(&mut r).expect("nonempty").clone();
                    let w = perms.choose(&mut r).expect("nonempty").clone();
                    let i = r.gen_range(lo..hi.max(lo + 1));
                    let j = r.gen_range(i + 1..=hi.max(i + 1));
                    let size = (perm_size(&w).0, v.length());
                    Case::new(format!("{t:04} xi^{v} at {w} root ({i},{j})"), size, move || {
                        let tw = gkm::reflect_left(i, j, &w);
                        let entries = BTreeMap::from([
                            (w.clone(), gkm::billey_localization(&v, &w)),
                            (tw.clone(), gkm::billey_localization(&v, &tw)),
                        ]);
                        let class = LocalizedClass::new(Some(v.clone()), entries);
                        ensure(gkm::gkm_check(&class, (i, j), &w).map_err(err)?, || "difference not divisible".into())
                    })
                })
                .collect()
        }
        _ => unreachable!("suite names are checked by run_suite"),
    }
}
