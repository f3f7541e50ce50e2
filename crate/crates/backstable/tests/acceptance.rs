//! Acceptance criteria. Each prints one PASS/FAIL line; any failure makes the binary exit nonzero.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use backstable::doublesym::{self, DoubleSymFunc};
use backstable::gkm::{self, LocalizedClass};
use backstable::homology;
use backstable::pipedream;
use backstable::schubert;
use backstable::symfunc::{des_set, syt_count};
use backstable::{Partition, Permutation, Poly, Q};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<(), String>;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn poly(s: &str) -> Poly {
    s.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn rng() -> rand::rngs::StdRng {
    rand::rngs::StdRng::seed_from_u64(0x5eed)
}

fn bjs_vs_dd() -> Check {
    let start = Instant::now();
    let mut cases = Permutation::all_of_sn(4);
    let s5 = Permutation::all_of_sn(5);
    cases.extend(s5.choose_multiple(&mut rng(), 20).cloned());
    for w in &cases {
        let bjs = schubert::schubert_bjs(w).map_err(|e| e.to_string())?;
        let dd = schubert::schubert_dd(w).map_err(|e| e.to_string())?;
        ensure(bjs == dd, || format!("{w}: {bjs} != {dd}"))?;
    }
    within(start, Duration::from_secs(10))
}

fn square_dreams() -> Check {
    let start = Instant::now();
    for w in Permutation::all_of_sn(4) {
        let sum: Poly = pipedream::enumerate_square(&w).map_err(|e| e.to_string())?.iter().map(|d| d.weight()).sum();
        let want = schubert::schubert_double(&w).map_err(|e| e.to_string())?;
        ensure(sum == want, || format!("{w}: {sum} != {want}"))?;
    }
    within(start, Duration::from_secs(60))
}

fn rect_decomposition() -> Check {
    let start = Instant::now();
    let n = 3;
    for w in Permutation::all_of_sn(n) {
        let mut sum = Poly::zero();
        for d in pipedream::enumerate_rect(&w, n).map_err(|e| e.to_string())? {
            let lambda = d.lambda_of().ok_or("rect dream without a partition")?;
            let s = doublesym::eps_truncate(&DoubleSymFunc::schur(lambda), n).map_err(|e| e.to_string())?;
            sum += &(&d.weight() * &s);
        }
        let want = schubert::backstable_double_canonical(&w).eps_window(n).map_err(|e| e.to_string())?;
        ensure(sum == want, || format!("{w}: decomposition differs"))?;
    }
    within(start, Duration::from_secs(60))
}

fn cancellation() -> Check {
    for w in Permutation::all_of_sn(4) {
        let s = schubert::cancellation_sum(&w).map_err(|e| e.to_string())?;
        let want = if w.is_identity() { Poly::one() } else { Poly::zero() };
        ensure(s == want, || format!("{w}: {s}"))?;
    }
    Ok(())
}

fn coproduct_window() -> Check {
    for w in Permutation::all_of_interval(-2, 2).into_iter().filter(|w| w.length() <= 5) {
        let lhs = schubert::backstable_canonical(&w).window(-4, 4).map_err(|e| e.to_string())?;
        let rhs = schubert::backstable_window(&w, -4, 4, false).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("{w}: window mismatch"))?;
    }
    Ok(())
}

fn eg_triple() -> Check {
    for w in Permutation::all_of_sn(4) {
        let dreams = pipedream::shape_counts(&w).map_err(|e| e.to_string())?;
        let classes = pipedream::eg_insertion_counts(&w);
        let stanley: BTreeMap<Partition, usize> = schubert::stanley(&w)
            .coeffs()
            .iter()
            .map(|(l, c)| (l.clone(), c.constant_term().to_integer().try_into().unwrap()))
            .collect();
        ensure(dreams == stanley && classes == stanley, || format!("{w}: {dreams:?} {classes:?} {stanley:?}"))?;
        let words = w.reduced_words();
        let total: BigInt = stanley.iter().map(|(l, &c)| syt_count(l) * c).sum();
        ensure(total == BigInt::from(words.len()), || format!("{w}: {total} reduced words predicted, {} found", words.len()))?;
        for word in words {
            let (_, q) = pipedream::eg_pq(&word, 4).map_err(|e| e.to_string())?;
            // letters in insertion order: i_l first
            let read: Vec<i64> = word.iter().rev().copied().collect();
            let des: Vec<usize> = (1..read.len()).filter(|&k| read[k - 1] > read[k]).collect();
            ensure(des == des_set(&q), || format!("{word:?}: Des {des:?} vs Des(Q) {:?}", des_set(&q)))?;
        }
    }
    Ok(())
}

fn localization() -> Check {
    let s3 = Permutation::all_of_sn(3);
    for v in &s3 {
        for w in &s3 {
            let b = gkm::billey_localization(v, w);
            let r = gkm::localization_recurrence(v, w);
            let x = gkm::localize_schubert(v, w);
            ensure(b == r && b == x, || format!("({v},{w}): {b} | {r} | {x}"))?;
        }
    }
    let s1 = p("s:1");
    let s2 = p("s:2");
    let s2s1 = p("s:2,1");
    let s1s2 = p("s:1,2");
    let e = |v: &Permutation, w: &Permutation| gkm::billey_localization(v, w);
    ensure(e(&s1, &s1s2) == poly("a_2 - a_1"), || "e^{s1}_{s1s2}".into())?;
    ensure(e(&s2, &s1s2) == poly("a_3 - a_1"), || "e^{s2}_{s1s2}".into())?;
    ensure(e(&s2s1, &s2s1) == &poly("a_3 - a_2") * &poly("a_3 - a_1"), || "e^{s2s1}_{s2s1}".into())?;
    ensure(e(&Permutation::identity(), &s2s1) == Poly::one(), || "e^id_{s2s1}".into())?;
    let g = gkm::expand_group_element(&s2s1, None);
    for v in &s3 {
        ensure(g.coeff(v) == e(v, &s2s1), || format!("group expansion at {v}"))?;
    }
    Ok(())
}

fn double_schur_quadruple() -> Check {
    let n = 3;
    for lambda in Partition::all_in_box(3, 3) {
        let jt = doublesym::jacobi_trudi(&lambda, n);
        let ssyt = doublesym::ssyt_formula(&lambda, n);
        let dreams: Poly =
            pipedream::enumerate_halfplane(&lambda, n).map_err(|e| e.to_string())?.iter().map(|d| d.weight()).sum();
        let window = schubert::backstable_window(&lambda.grassmannian(), 1 - n as i64, n as i64, true)
            .map_err(|e| e.to_string())?;
        let eps = doublesym::eps_truncate(&DoubleSymFunc::schur(lambda.clone()), n).map_err(|e| e.to_string())?;
        ensure(jt == ssyt && ssyt == dreams && dreams == window && window == eps, || format!("{lambda}: disagreement"))?;
    }
    Ok(())
}

fn double_stanley_examples() -> Check {
    for k in -2..=2 {
        let f = doublesym::double_stanley(&Permutation::from_word(&[k + 1, k]));
        let want = DoubleSymFunc::schur(part("2")).add(&DoubleSymFunc::schur(part("1")).scale(&(&Poly::a(1) - &Poly::a(k + 1))));
        ensure(f == want, || format!("F_(s{}s{k}) = {f}", k + 1))?;
        let f = doublesym::double_stanley(&Permutation::from_word(&[k - 1, k]));
        let want = DoubleSymFunc::schur(part("1,1")).add(&DoubleSymFunc::schur(part("1")).scale(&(&Poly::a(k) - &Poly::a(0))));
        ensure(f == want, || format!("F_(s{}s{k}) = {f}", k - 1))?;
    }
    Ok(())
}

fn expect_map(entries: &[(&str, Poly)]) -> BTreeMap<Partition, Poly> {
    entries.iter().map(|(l, c)| (part(l), c.clone())).collect()
}

fn monk() -> Check {
    for mu in Partition::all_up_to(4) {
        let m = homology::monk_rule(&mu, mu.size() + 3);
        for lambda in mu.supersets(mu.size() + 3) {
            if lambda == mu {
                continue;
            }
            let want = homology::pieri_oracle(&lambda, &mu, &part("1"));
            let got = m.get(&lambda).cloned().unwrap_or_default();
            ensure(got == want, || format!("mu={mu} lambda={lambda}: {got} vs {want}"))?;
        }
    }
    let d = |i: i64, j: i64| &Poly::a(i) - &Poly::a(j);
    let one = Poly::one();
    let ex1 = expect_map(&[
        ("2", one.clone()),
        ("1,1", one.clone()),
        ("3", d(1, 2)),
        ("2,1", d(1, 0)),
        ("1,1,1", d(-1, 0)),
        ("4", &d(1, 2) * &d(1, 3)),
        ("3,1", &d(1, 0) * &d(1, 2)),
        ("2,2", d(1, 0).pow(2)),
        ("2,1,1", &d(-1, 0) * &d(1, 0)),
        ("1,1,1,1", &d(-1, 0) * &d(-2, 0)),
    ]);
    ensure(homology::monk_rule(&part("1"), 4) == ex1, || "hs1 hs1 example".into())?;
    let ex2 = expect_map(&[
        ("2,1", one.clone()),
        ("1,1,1", one.clone()),
        ("3,1", d(1, 2)),
        ("2,2", d(1, 0)),
        ("2,1,1", d(1, 0)),
        ("1,1,1,1", d(-2, 0)),
        ("4,1", &d(1, 2) * &d(1, 3)),
        ("3,2", &d(1, 0) * &d(1, 2)),
        ("3,1,1", &d(1, 0) * &d(1, 2)),
        ("2,2,1", d(1, 0).pow(2)),
        ("2,1,1,1", &d(-2, 0) * &d(1, 0)),
        ("1,1,1,1,1", &d(-2, 0) * &d(-3, 0)),
    ]);
    ensure(homology::monk_rule(&part("1,1"), 5) == ex2, || "hs1 hs11 example".into())
}

fn hook_pieri() -> Check {
    for mu in Partition::all_up_to(3) {
        for pp in 0..=2 {
            for q in 0..=2 {
                let nu = Partition::hook(pp, q);
                let cap = mu.size() + nu.size() + 1;
                let h = homology::hook_pieri(&mu, pp, q, cap);
                for lambda in mu.supersets(cap) {
                    if lambda == mu {
                        continue;
                    }
                    let got = h.get(&lambda).cloned().unwrap_or_default();
                    let want = homology::pieri_oracle(&lambda, &mu, &nu);
                    ensure(got == want, || format!("mu={mu} nu={nu} lambda={lambda}: {got} vs {want}"))?;
                    let lr = homology::lr_coefficient(&lambda, &mu, &nu);
                    ensure(homology::nonequivariant(&got) == lr, || format!("a=0 at mu={mu} nu={nu} lambda={lambda}"))?;
                }
            }
        }
    }
    Ok(())
}

fn creation() -> Check {
    for lambda in Partition::all_up_to(3) {
        let made = homology::create_dual_schur(&lambda, 6).map_err(|e| e.to_string())?;
        ensure(made == homology::dual_schur(&lambda, 6), || format!("{lambda}"))?;
    }
    Ok(())
}

fn kl() -> Check {
    let r = homology::kl_product(&part("1"), &part("1,1"), 4, 3);
    let d = Poly::delta();
    let c = |n: i64, k: u32| d.pow(k).scale(&Q::from_integer(n.into()));
    let dual = expect_map(&[("1,1,1", c(1, 0)), ("2,1", c(1, 0)), ("2,1,1", c(1, 1)), ("2,2", c(1, 1)), ("2,2,1", c(1, 2))]);
    ensure(r.dual == dual, || format!("dual expansion {:?}", r.dual))?;
    let schur = expect_map(&[
        ("1,1,1", c(1, 0)),
        ("2,1", c(1, 0)),
        ("2,1,1", c(2, 1)),
        ("2,2", c(1, 1)),
        ("3,1", c(2, 1)),
        ("2,2,1", c(1, 2)),
        ("3,1,1", c(3, 2)),
        ("3,2", c(2, 2)),
        ("3,2,1", c(2, 3)),
        ("3,3", c(1, 3)),
        ("3,3,1", c(1, 4)),
    ]);
    ensure(r.schur == schur, || format!("Schur expansion {:?}", r.schur))
}

fn j_hook() -> Check {
    for i in -2..=3 {
        for k in i + 1..=3 {
            let w = Permutation::from_word(&(i..=k).collect::<Vec<_>>());
            let got = doublesym::triple_eg(&w, &part("1"));
            let want: Poly = (i + 1..=k).map(|j| &Poly::a(j) - &Poly::b(0)).product();
            ensure(got == want, || format!("{w}: {got} vs {want}"))?;
        }
    }
    let s4: Vec<Permutation> = Permutation::all_of_sn(4);
    for w in s4.iter().chain(s4.iter().map(|w| w.shift(-2)).collect::<Vec<_>>().iter()) {
        if !w.lambda_factorizations().is_empty() {
            for pp in 0..=1 {
                for q in 0..=1 {
                    let h = doublesym::hook_triple_eg(w, pp, q);
                    let t = doublesym::triple_eg(w, &Partition::hook(pp, q));
                    ensure(h == t, || format!("{w} p={pp} q={q}: {h} vs {t}"))?;
                }
            }
        }
    }
    for w in &s4 {
        for (mu, j) in doublesym::double_eg(w) {
            let t = doublesym::triple_eg(w, &mu).substitute_with(|v| (v.alpha == backstable::Alphabet::B).then(|| Poly::a(v.idx)));
            ensure(t == j, || format!("{w} {mu}: b=a gives {t}, want {j}"))?;
        }
    }
    Ok(())
}

fn structure_constants() -> Check {
    let one = Q::from_integer(1.into());
    let c = schubert::structure_constants(&p("s:1"), &p("s:1"));
    ensure(c == BTreeMap::from([(p("s:2,1"), one.clone()), (p("s:0,1"), one.clone())]), || format!("(s1,s1): {c:?}"))?;
    let c2 = schubert::structure_constants(&p("s:2"), &p("s:2"));
    let shifted: BTreeMap<Permutation, Q> = c.iter().map(|(w, q)| (w.shift(1), q.clone())).collect();
    ensure(c2 == shifted, || format!("(s2,s2): {c2:?}"))?;
    let pool: Vec<Permutation> = Permutation::all_of_interval(-1, 2).into_iter().filter(|w| w.length() <= 3).collect();
    let mut r = rng();
    let mut done = 0;
    while done < 30 {
        let u = pool.choose(&mut r).unwrap();
        let v = pool.choose(&mut r).unwrap();
        if u.length() + v.length() > 5 {
            continue;
        }
        done += 1;
        for (w, q) in schubert::structure_constants(u, v) {
            ensure(q.is_integer() && q >= Q::from_integer(0.into()), || format!("c^{w}_({u},{v}) = {q}"))?;
        }
    }
    Ok(())
}

fn positivity() -> Check {
    let ws = Permutation::all_of_interval(-2, 3).into_iter().filter(|w| w.length() <= 5);
    for (k, w) in ws.enumerate() {
        ensure(doublesym::positivity_spot_check(&w, 10, k as u64), || format!("{w}: negative value"))?;
    }
    Ok(())
}

fn gkm_divisibility() -> Check {
    let mut r = rng();
    let perms = Permutation::all_of_interval(-3, 3);
    let small: Vec<&Permutation> = perms.iter().filter(|v| v.length() <= 4).collect();
    for _ in 0..100 {
        let v = *small.choose(&mut r).unwrap();
        let w = perms.choose(&mut r).unwrap();
        let i = r.gen_range(-3..3);
        let j = r.gen_range(i + 1..=3);
        let tw = gkm::reflect_left(i, j, w);
        let entries = BTreeMap::from([(w.clone(), gkm::billey_localization(v, w)), (tw.clone(), gkm::billey_localization(v, &tw))]);
        let class = LocalizedClass::new(Some(v.clone()), entries);
        let ok = gkm::gkm_check(&class, (i, j), w).map_err(|e| e.to_string())?;
        ensure(ok, || format!("xi^{v} at {w}, root ({i},{j})"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 17] = [
        ("1 BJS equals divided differences on S4 and 20 of S5", bjs_vs_dd),
        ("2 square bumpless pipedreams sum to double Schuberts on S4", square_dreams),
        ("3 rectangular decomposition matches the coproduct form on S3", rect_decomposition),
        ("4 Schubert cancellation on S4", cancellation),
        ("5 coproduct window [-4,4] for supports in [-2,2], length <= 5", coproduct_window),
        ("6 EG pipedreams, insertion classes and Stanley coefficients agree on S4", eg_triple),
        ("7 Billey, recurrence and windowed substitution on S3", localization),
        ("8 Jacobi-Trudi, tableaux, halfplane dreams and windows in 3x3", double_schur_quadruple),
        ("9 double Stanley examples for k in [-2,2]", double_stanley_examples),
        ("10 homology Monk rule", monk),
        ("11 homology hook Pieri rule", hook_pieri),
        ("12 creation of dual Schurs to degree 6", creation),
        ("13 Gr(4,7) product", kl),
        ("14 triple EG hook formulas", j_hook),
        ("15 structure constants", structure_constants),
        ("16 positivity spot checks", positivity),
        ("17 GKM divisibility", gkm_divisibility),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS {name} ({:.2?})", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    println!("{} of 17 criteria passed", 17 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
