//! Request handling for the `backstable` command line tool.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use backstable::doublesym::{self, DoubleSymFunc};
use backstable::gkm::{self, LocalizedClass};
use backstable::homology::{self, DualSeries};
use backstable::pipedream::{self, BumplessPipedream};
use backstable::schubert;
use backstable::{Error, Partition, Permutation, Poly};
use clap::{Parser, Subcommand};
use serde::Serialize;

pub mod suites;

#[derive(Parser, Debug)]
#[command(name = "backstable", version, about = "Exact back stable Schubert calculus")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Schubert polynomials: finite, windowed, or the canonical back stable form.
    Schubert {
        #[arg(long)]
        perm: String,
        /// The finite Schubert polynomial of a permutation of the positive integers.
        #[arg(long)]
        single: bool,
        /// Use the double version (with a-variables).
        #[arg(long)]
        double: bool,
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Stanley symmetric function in the Schur basis.
    Stanley {
        #[arg(long)]
        perm: String,
    },
    /// Double Stanley symmetric function in the double Schur basis.
    DoubleStanley {
        #[arg(long)]
        perm: String,
    },
    /// Double Schur function truncated to x_{1-n..n}.
    DoubleSchur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        size: usize,
    },
    /// Enumerate bumpless pipedreams.
    Pipedreams {
        #[arg(long)]
        perm: Option<String>,
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        square: bool,
        #[arg(long)]
        rect: bool,
        #[arg(long)]
        eg: bool,
        /// Grid parameter n for rectangular and halfplane dreams.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        render: bool,
    },
    /// Edelman-Greene insertion of every reduced word.
    EgInsert {
        #[arg(long)]
        perm: String,
    },
    /// Localizations of a Schubert class.
    Localize {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        at: Option<String>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_negative_numbers = true)]
        window: Option<Vec<i64>>,
    },
    /// Expand a permutation in the nilHecke basis A_v.
    Nilhecke {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Dual Schur function as a Schur series truncated at a degree cap.
    DualSchur {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        cap: usize,
        /// Specialize a_i to 0 (i <= 0) and delta (i > 0).
        #[arg(long)]
        delta: bool,
        /// Build it with homology divided differences instead.
        #[arg(long)]
        create: bool,
    },
    /// Monk or hook Pieri products in the dual Schur basis.
    Pieri {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        cap: usize,
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        hook: Option<Vec<usize>>,
    },
    /// Product of two delta dual Schurs in a rectangle.
    Kl {
        #[arg(long, num_args = 1)]
        partition: Vec<String>,
        #[arg(long, num_args = 2, value_names = ["ROWS", "COLS"])]
        rect: Vec<usize>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        size: usize,
    },
}

/// Output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::NotExact(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Invariant(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout, stderr)) => Outcome { code, stdout, stderr },
        Err(CliError::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(CliError::Invariant(m)) => {
            Outcome { code: 3, stdout: String::new(), stderr: format!("invariant violated: {m}\n") }
        }
    }
}

fn perm(s: &str) -> CliResult<Permutation> {
    Ok(s.parse()?)
}

fn partition(s: &str) -> CliResult<Partition> {
    Ok(s.parse()?)
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn window(w: &Option<Vec<i64>>) -> Option<(i64, i64)> {
    w.as_ref().map(|v| (v[0], v[1]))
}

#[derive(Serialize)]
struct Term<K, C> {
    key: K,
    coeff: C,
}

fn terms<K: Clone, C: Clone>(m: &BTreeMap<K, C>) -> Vec<Term<K, C>> {
    m.iter().map(|(k, c)| Term { key: k.clone(), coeff: c.clone() }).collect()
}

fn dispatch(cli: &Cli) -> CliResult<(i32, String, String)> {
    let as_json = cli.json;
    let out = match &cli.command {
        Command::Schubert { perm: p, single, double, window: win } => {
            let w = perm(p)?;
            if let Some((lo, hi)) = window(win) {
                let f = schubert::backstable_window(&w, lo, hi, *double)?;
                if as_json { json(&f)? } else { format!("{f}\n") }
            } else if *single {
                let f = if *double { schubert::schubert_double(&w)? } else { schubert::schubert_single(&w)? };
                if as_json { json(&f)? } else { format!("{f}\n") }
            } else if *double {
                let rep = schubert::backstable_double_canonical(&w);
                if as_json { json(&rep.to_json())? } else { render_rep(rep.to_json()) }
            } else {
                let rep = schubert::backstable_canonical(&w);
                if as_json { json(&rep.to_json())? } else { render_rep(rep.to_json()) }
            }
        }
        Command::Stanley { perm: p } => {
            let f = schubert::stanley(&perm(p)?);
            if as_json { json(&f)? } else { format!("{f}\n") }
        }
        Command::DoubleStanley { perm: p } => {
            let f = doublesym::double_stanley(&perm(p)?);
            if as_json { json(&f)? } else { format!("{f}\n") }
        }
        Command::DoubleSchur { partition: l, size } => {
            let f = doublesym::eps_truncate(&DoubleSymFunc::schur(partition(l)?), *size)?;
            if as_json { json(&f)? } else { format!("{f}\n") }
        }
        Command::Pipedreams { perm: p, partition: l, square, rect, eg, size, render } => {
            let dreams = pipedreams(p.as_deref(), l.as_deref(), *square, *rect, *eg, *size)?;
            if as_json {
                json(&dreams)?
            } else {
                let mut s = String::new();
                for d in &dreams {
                    if *render {
                        s.push_str(&d.render());
                    }
                    let _ = write!(s, "wt = {}", d.weight());
                    if let Some(l) = d.lambda_of() {
                        let _ = write!(s, "  lambda = {l}");
                    }
                    s.push('\n');
                    if *render {
                        s.push('\n');
                    }
                }
                let _ = writeln!(s, "{} pipedreams", dreams.len());
                s
            }
        }
        Command::EgInsert { perm: p } => {
            let w = perm(p)?;
            let (lo, hi) = w.moved_range().unwrap_or((1, 1));
            let ws = w.shift(1 - lo);
            let n = (hi - lo + 1) as usize;
            let mut rows = Vec::new();
            for word in ws.reduced_words() {
                let (d, q) = pipedream::eg_pq(&word, n)?;
                let word: Vec<i64> = word.iter().map(|i| i + lo - 1).collect();
                rows.push(Insertion { word, shape: d.eg_shape().expect("EG dream"), q });
            }
            if as_json {
                json(&rows)?
            } else {
                let mut s = String::new();
                for r in &rows {
                    let q: Vec<String> =
                        r.q.iter().map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
                    let word: Vec<String> = r.word.iter().map(|i| i.to_string()).collect();
                    let _ = writeln!(s, "{}  shape {}  Q = {}", word.join(","), r.shape, q.join(" / "));
                }
                s
            }
        }
        Command::Localize { perm: p, at, window: win } => {
            let v = perm(p)?;
            if let Some(at) = at {
                let w = perm(at)?;
                let e = gkm::billey_localization(&v, &w);
                if as_json { json(&e)? } else { format!("{e}\n") }
            } else {
                let (lo, hi) = match window(win) {
                    Some(r) => r,
                    None => v.moved_range().unwrap_or((1, 1)),
                };
                if hi - lo > 6 {
                    return Err(CliError::Usage(format!("window [{lo},{hi}] is wider than 7")));
                }
                let c = LocalizedClass::schubert(&v, lo, hi)?;
                if as_json {
                    json(&c)?
                } else {
                    c.entries.iter().map(|(w, e)| format!("{w}: {e}\n")).collect()
                }
            }
        }
        Command::Nilhecke { perm: p, cap } => {
            let e = gkm::expand_group_element(&perm(p)?, *cap);
            if as_json {
                json(&e)?
            } else {
                e.terms.iter().map(|(v, c)| format!("A[{v}]: {c}\n")).collect()
            }
        }
        Command::DualSchur { partition: l, cap, delta, create } => {
            let mu = partition(l)?;
            let f = match (delta, create) {
                (true, _) => homology::delta_dual_schur(&mu, *cap),
                (false, true) => homology::create_dual_schur(&mu, *cap)?,
                (false, false) => homology::dual_schur(&mu, *cap),
            };
            if as_json { json(&f)? } else { render_series(&f) }
        }
        Command::Pieri { partition: l, cap, hook } => {
            let mu = partition(l)?;
            let m = match hook {
                Some(h) => homology::hook_pieri(&mu, h[0], h[1], *cap),
                None => homology::monk_rule(&mu, *cap),
            };
            if as_json {
                json(&terms(&m))?
            } else {
                m.iter().map(|(l, c)| format!("hs[{l}]: {c}\n")).collect()
            }
        }
        Command::Kl { partition: ls, rect } => {
            if ls.len() != 2 || rect.len() != 2 {
                return Err(CliError::Usage("kl needs two --partition values and --rect ROWS COLS".into()));
            }
            let r = homology::kl_product(&partition(&ls[0])?, &partition(&ls[1])?, rect[0], rect[1]);
            if as_json {
                json(&KlJson { schur: terms(&r.schur), dual: terms(&r.dual) })?
            } else {
                let mut s = String::from("dual Schur expansion\n");
                for (l, c) in &r.dual {
                    let _ = writeln!(s, "  hs[{l}]: {c}");
                }
                s.push_str("Schur expansion\n");
                for (l, c) in &r.schur {
                    let _ = writeln!(s, "  s[{l}]: {c}");
                }
                s
            }
        }
        Command::Verify { suite, size } => {
            let reports = suites::run_suite(suite, *size).ok_or_else(|| {
                CliError::Usage(format!("unknown suite {suite}; known: all, {}", suites::NAMES.join(", ")))
            })?;
            let failed = reports.iter().any(|r| !r.failures.is_empty());
            let text = if as_json { json(&reports)? } else { reports.iter().map(|r| r.to_string()).collect() };
            let timing = reports.iter().map(|r| format!("{}: {:.3?}\n", r.suite, r.wall_time)).collect();
            return Ok((if failed { 1 } else { 0 }, text, timing));
        }
    };
    Ok((0, out, String::new()))
}

#[derive(Serialize)]
struct Insertion {
    word: Vec<i64>,
    shape: Partition,
    q: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct KlJson {
    schur: Vec<Term<Partition, Poly>>,
    dual: Vec<Term<Partition, Poly>>,
}

fn render_rep(terms: Vec<schubert::RepTermJson<Poly>>) -> String {
    if terms.is_empty() {
        return "0\n".into();
    }
    terms.iter().map(|t| format!("({}) s[{}] S[{}]\n", t.coeff, t.partition, t.perm)).collect()
}

fn render_series(f: &DualSeries) -> String {
    let mut s = String::new();
    for (l, c) in f.coeffs() {
        let _ = writeln!(s, "s[{l}]: {c}");
    }
    let _ = writeln!(s, "+ O(degree {})", f.cap() + 1);
    s
}

fn pipedreams(
    p: Option<&str>,
    l: Option<&str>,
    square: bool,
    rect: bool,
    eg: bool,
    size: Option<usize>,
) -> CliResult<Vec<BumplessPipedream>> {
    let picked = [square, rect, eg].iter().filter(|&&b| b).count();
    let set = match (p, l) {
        (Some(p), None) if picked == 1 => {
            let w = perm(p)?;
            if square {
                pipedream::enumerate_square(&w)?
            } else if rect {
                let n = match size {
                    Some(n) => n,
                    None => w.moved_range().map_or(1, |(_, hi)| hi.max(1) as usize),
                };
                pipedream::enumerate_rect(&w, n)?
            } else {
                pipedream::enumerate_eg(&w)?
            }
        }
        (None, Some(l)) if picked == 0 => {
            let lambda = partition(l)?;
            let n = size.ok_or_else(|| CliError::Usage("halfplane dreams need --size".into()))?;
            pipedream::enumerate_halfplane(&lambda, n)?
        }
        _ => {
            return Err(CliError::Usage(
                "use --perm with exactly one of --square, --rect, --eg, or --partition with --size".into(),
            ))
        }
    };
    Ok(set.into_iter().collect())
}
