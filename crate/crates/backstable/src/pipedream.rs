//! Bumpless pipedreams: square, rectangular and halfplane dreams, droops,
//! column moves, and the pipedream form of Edelman-Greene insertion.
//!
//! Coordinates are matrix coordinates: rows grow downward, columns grow to
//! the right. Pipes enter from the south and travel north and east; a pipe is
//! labelled by the column it enters from.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::permgroup::{is_reduced, Partition, Permutation};
use crate::polyring::Poly;
use crate::symfunc::Tableau;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tile {
    Empty,
    NwElbow,
    SeElbow,
    Horizontal,
    Vertical,
    Crossing,
}

impl Tile {
    pub fn to_char(self) -> char {
        match self {
            Tile::Empty => '.',
            Tile::NwElbow => '┘',
            Tile::SeElbow => '┌',
            Tile::Horizontal => '─',
            Tile::Vertical => '│',
            Tile::Crossing => '┼',
        }
    }

    pub fn from_char(c: char) -> Option<Tile> {
        Some(match c {
            '.' | ' ' => Tile::Empty,
            '┘' => Tile::NwElbow,
            '┌' => Tile::SeElbow,
            '─' => Tile::Horizontal,
            '│' => Tile::Vertical,
            '┼' => Tile::Crossing,
            _ => return None,
        })
    }

    fn has_n(self) -> bool {
        matches!(self, Tile::Vertical | Tile::Crossing | Tile::NwElbow)
    }

    fn has_e(self) -> bool {
        matches!(self, Tile::Horizontal | Tile::Crossing | Tile::SeElbow)
    }

    fn has_w(self) -> bool {
        matches!(self, Tile::Horizontal | Tile::Crossing | Tile::NwElbow)
    }

    fn is_elbow(self) -> bool {
        matches!(self, Tile::NwElbow | Tile::SeElbow)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Variant {
    /// Rows and columns 1..n; row r carries pipe w(r) out to the east.
    Square(Permutation),
    /// Rows 1..n, columns 1-n..n; pipes 1-n..0 leave through the north edge.
    Rect(Permutation),
    /// Rows 1-n..0, columns 1-n..n, no crossings.
    Halfplane(Partition),
}

impl Variant {
    fn name(&self) -> &'static str {
        match self {
            Variant::Square(_) => "square",
            Variant::Rect(_) => "rect",
            Variant::Halfplane(_) => "halfplane",
        }
    }

    fn label(&self) -> String {
        match self {
            Variant::Square(w) | Variant::Rect(w) => w.to_string(),
            Variant::Halfplane(l) => l.to_string(),
        }
    }
}

/// Side through which a pipe enters or leaves a tile.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    N,
    S,
    E,
    W,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exit {
    East(i64),
    North(i64),
}

#[derive(Clone, Debug)]
pub struct PipePath {
    pub label: i64,
    pub cells: Vec<(i64, i64, Side, Side)>,
    pub exit: Exit,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BumplessPipedream {
    variant: Variant,
    rows: (i64, i64),
    cols: (i64, i64),
    grid: Vec<Tile>,
}

fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}

/// Columns where pipes enter a halfplane dream for lambda inside an n x n box.
fn halfplane_entries(lambda: &Partition, n: usize) -> Vec<i64> {
    let (plus, minus) = lambda.grassmannian().descent_sets();
    let n = n as i64;
    (1 - n..=0).filter(|c| !minus.contains(c)).chain(plus.iter().copied().filter(|&c| c <= n)).collect()
}

impl BumplessPipedream {
    pub fn new(variant: Variant, rows: (i64, i64), cols: (i64, i64), grid: Vec<Tile>) -> Result<Self> {
        let d = Self { variant, rows, cols, grid };
        if d.grid.len() != d.height() * d.width() {
            return domain("grid size does not match its bounds");
        }
        d.validate()?;
        Ok(d)
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn rows(&self) -> (i64, i64) {
        self.rows
    }

    pub fn cols(&self) -> (i64, i64) {
        self.cols
    }

    pub fn permutation(&self) -> Option<&Permutation> {
        match &self.variant {
            Variant::Square(w) | Variant::Rect(w) => Some(w),
            Variant::Halfplane(_) => None,
        }
    }

    fn height(&self) -> usize {
        (self.rows.1 - self.rows.0 + 1) as usize
    }

    fn width(&self) -> usize {
        (self.cols.1 - self.cols.0 + 1) as usize
    }

    fn in_bounds(&self, r: i64, c: i64) -> bool {
        (self.rows.0..=self.rows.1).contains(&r) && (self.cols.0..=self.cols.1).contains(&c)
    }

    fn idx(&self, r: i64, c: i64) -> usize {
        (r - self.rows.0) as usize * self.width() + (c - self.cols.0) as usize
    }

    pub fn tile(&self, r: i64, c: i64) -> Tile {
        self.grid[self.idx(r, c)]
    }

    fn set(&mut self, r: i64, c: i64, t: Tile) {
        let i = self.idx(r, c);
        self.grid[i] = t;
    }

    pub fn entries(&self) -> Vec<i64> {
        match &self.variant {
            Variant::Halfplane(l) => halfplane_entries(l, self.height()),
            _ => (self.cols.0..=self.cols.1).collect(),
        }
    }

    pub fn empties(&self) -> Vec<(i64, i64)> {
        let mut out = vec![];
        for r in self.rows.0..=self.rows.1 {
            for c in self.cols.0..=self.cols.1 {
                if self.tile(r, c) == Tile::Empty {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// Follow every pipe from its southern entry.
    pub fn trace(&self) -> Result<Vec<PipePath>> {
        let mut paths = vec![];
        for start in self.entries() {
            let (mut r, mut c, mut from) = (self.rows.1, start, Side::S);
            let mut cells = vec![];
            let exit = loop {
                let t = self.tile(r, c);
                let to = match (from, t) {
                    (Side::S, Tile::Vertical | Tile::Crossing) => Side::N,
                    (Side::S, Tile::SeElbow) => Side::E,
                    (Side::W, Tile::Horizontal | Tile::Crossing) => Side::E,
                    (Side::W, Tile::NwElbow) => Side::N,
                    _ => return invariant(format!("pipe {start} runs into {:?} at ({r},{c})", t)),
                };
                cells.push((r, c, from, to));
                match to {
                    Side::N if r == self.rows.0 => break Exit::North(c),
                    Side::N => {
                        r -= 1;
                        from = Side::S;
                    }
                    _ if c == self.cols.1 => break Exit::East(r),
                    _ => {
                        c += 1;
                        from = Side::W;
                    }
                }
            };
            paths.push(PipePath { label: start, cells, exit });
        }
        Ok(paths)
    }

    /// Unordered pairs of pipe labels that cross, with multiplicity.
    pub fn crossings(&self) -> Result<Vec<(i64, i64)>> {
        let mut seen: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        let mut out = vec![];
        for p in self.trace()? {
            for &(r, c, _, _) in &p.cells {
                if self.tile(r, c) == Tile::Crossing {
                    if let Some(&q) = seen.get(&(r, c)) {
                        out.push((q.min(p.label), q.max(p.label)));
                    } else {
                        seen.insert((r, c), p.label);
                    }
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Pipe continuity, boundary conditions, single crossings and the empty-tile count.
    pub fn validate(&self) -> Result<()> {
        let paths = self.trace()?;
        // every tile must be accounted for by the traced pipes
        let mut used = vec![0u8; self.grid.len()];
        for p in &paths {
            for &(r, c, _, _) in &p.cells {
                used[self.idx(r, c)] += 1;
            }
        }
        for (i, &t) in self.grid.iter().enumerate() {
            let need = match t {
                Tile::Empty => 0,
                Tile::Crossing => 2,
                _ => 1,
            };
            if used[i] != need {
                return invariant(format!("stray segment in tile {i}"));
            }
        }
        let crossings = self.crossings()?;
        if crossings.windows(2).any(|w| w[0] == w[1]) {
            return invariant("two pipes cross twice");
        }
        let empties = self.empties().len();
        match &self.variant {
            Variant::Square(w) | Variant::Rect(w) => {
                let rect = matches!(self.variant, Variant::Rect(_));
                for p in &paths {
                    match p.exit {
                        Exit::East(r) if p.label > 0 || !rect => {
                            if w.apply(r) != p.label {
                                return invariant(format!("row {r} carries pipe {} instead of {}", p.label, w.apply(r)));
                            }
                        }
                        Exit::North(_) if rect && p.label <= 0 => {}
                        _ => return invariant(format!("pipe {} leaves through the wrong edge", p.label)),
                    }
                }
                if rect && crossings.iter().any(|&(a, _)| a <= 0) {
                    return invariant("a nonpositive pipe crosses another pipe");
                }
                let expect = if rect { w.length() - self.lambda_of().map_or(0, |l| l.size()) } else { w.length() };
                if empties != expect {
                    return invariant(format!("{empties} empty tiles, expected {expect}"));
                }
            }
            Variant::Halfplane(l) => {
                if !crossings.is_empty() {
                    return invariant("halfplane dreams have no crossings");
                }
                if paths.iter().any(|p| matches!(p.exit, Exit::North(_))) {
                    return invariant("a pipe leaves a halfplane dream to the north");
                }
                if empties != l.size() {
                    return invariant(format!("{empties} empty tiles, expected {}", l.size()));
                }
            }
        }
        Ok(())
    }

    /// prod (x_i - a_j) over empty tiles (i, j).
    pub fn weight(&self) -> Poly {
        self.empties().into_iter().map(|(r, c)| &Poly::x(r) - &Poly::a(c)).product()
    }

    /// Partition read from the north boundary of a rectangular dream.
    pub fn lambda_of(&self) -> Option<Partition> {
        if !matches!(self.variant, Variant::Rect(_)) {
            return None;
        }
        let mut pos = self.height();
        let mut parts = vec![];
        for c in (self.cols.0..=self.cols.1).rev() {
            if self.tile(self.rows.0, c).has_n() {
                parts.push(pos);
            } else {
                pos = pos.saturating_sub(1);
            }
        }
        Some(Partition::from_sorted(parts))
    }

    /// Shape of an EG dream: the empty tiles form a partition in the northwest corner.
    pub fn eg_shape(&self) -> Option<Partition> {
        if !matches!(self.variant, Variant::Square(_)) || !self.floating_tiles().is_empty() {
            return None;
        }
        let parts = (self.rows.0..=self.rows.1)
            .map(|r| (self.cols.0..=self.cols.1).take_while(|&c| self.tile(r, c) == Tile::Empty).count())
            .collect();
        Some(Partition::from_sorted(parts))
    }

    pub fn is_eg(&self) -> bool {
        self.eg_shape().is_some()
    }

    /// Empty tiles with a nonempty tile weakly to their northwest.
    pub fn floating_tiles(&self) -> Vec<(i64, i64)> {
        let mut out = vec![];
        // blocked[c] = some nonempty tile seen in columns <= c in rows above
        let mut blocked = vec![false; self.width()];
        for r in self.rows.0..=self.rows.1 {
            let mut row_block = false;
            for c in self.cols.0..=self.cols.1 {
                let k = (c - self.cols.0) as usize;
                let t = self.tile(r, c);
                row_block |= t != Tile::Empty || blocked[k];
                if t == Tile::Empty && row_block {
                    out.push((r, c));
                }
                blocked[k] = row_block;
            }
        }
        out
    }

    /// All dreams reachable by one droop.
    pub fn droops(&self) -> Vec<Self> {
        let Ok(paths) = self.trace() else {
            return vec![];
        };
        let mut out = vec![];
        for p in &paths {
            for (k, &(r1, c1, from, to)) in p.cells.iter().enumerate() {
                if (from, to) != (Side::S, Side::E) {
                    continue;
                }
                for (r2, c2) in self.empties() {
                    if r2 > r1 && c2 > c1 {
                        if let Some(d) = self.droop_at(&paths, p, k, (r1, c1), (r2, c2)) {
                            out.push(d);
                        }
                    }
                }
            }
        }
        out
    }

    fn droop_at(&self, paths: &[PipePath], p: &PipePath, k: usize, e: (i64, i64), t: (i64, i64)) -> Option<Self> {
        let ((r1, c1), (r2, c2)) = (e, t);
        // p climbs column c1 from row r2 to e, then runs east along row r1 to column c2
        let up = (r2 - r1) as usize;
        let right = (c2 - c1) as usize;
        if k < up || k + right >= p.cells.len() {
            return None;
        }
        for (j, &(r, c, from, to)) in p.cells[k - up..k].iter().enumerate() {
            if (r, c) != (r2 - j as i64, c1) || (from, to) != (Side::S, Side::N) {
                return None;
            }
        }
        for (j, &(r, c, from, to)) in p.cells[k + 1..=k + right].iter().enumerate() {
            if (r, c) != (r1, c1 + 1 + j as i64) || (from, to) != (Side::W, Side::E) {
                return None;
            }
        }
        for r in r1..=r2 {
            for c in c1..=c2 {
                if (r, c) != e && self.tile(r, c).is_elbow() {
                    return None;
                }
            }
        }
        let mut cells: Vec<(i64, i64, Side, Side)> = p.cells[..k - up].to_vec();
        cells.push((r2, c1, Side::S, Side::E));
        cells.extend((c1 + 1..c2).map(|c| (r2, c, Side::W, Side::E)));
        cells.push((r2, c2, Side::W, Side::N));
        cells.extend((r1 + 1..r2).rev().map(|r| (r, c2, Side::S, Side::N)));
        cells.push((r1, c2, Side::S, Side::E));
        cells.extend_from_slice(&p.cells[k + right + 1..]);
        let mut all: Vec<PipePath> = paths.iter().filter(|q| q.label != p.label).cloned().collect();
        all.push(PipePath { label: p.label, cells, exit: p.exit });
        let grid = rebuild(self, &all)?;
        let d = Self { variant: self.variant.clone(), rows: self.rows, cols: self.cols, grid };
        d.validate().ok().map(|_| d)
    }

    /// Move kinks in columns c, c+1 one column left over rows r_top..r_bot (exclusive of r_bot).
    fn shift_left(&mut self, c: i64, r_top: i64, r_bot: i64) -> Result<()> {
        for r in r_top + 1..r_bot {
            let (left, right) = (self.tile(r, c), self.tile(r, c + 1));
            if !matches!(left, Tile::Vertical | Tile::Crossing) || right == Tile::Empty {
                return invariant(format!("column move blocked at ({r},{c})"));
            }
            self.set(r, c, right);
            self.set(r, c + 1, if right.has_e() { Tile::Crossing } else { Tile::Vertical });
        }
        let top = self.tile(r_top, c + 1);
        if self.tile(r_top, c) != Tile::SeElbow || !matches!(top, Tile::Horizontal | Tile::NwElbow) {
            return invariant(format!("column move has no active elbow at ({r_top},{c})"));
        }
        self.set(r_top, c, Tile::Empty);
        self.set(r_top, c + 1, if top == Tile::Horizontal { Tile::SeElbow } else { Tile::Vertical });
        Ok(())
    }

    /// Inverse of [`Self::shift_left`].
    fn shift_right(&mut self, c: i64, r_top: i64, r_bot: i64) -> Result<()> {
        for r in r_top + 1..r_bot {
            let (left, right) = (self.tile(r, c), self.tile(r, c + 1));
            let expect = if left.has_e() { Tile::Crossing } else { Tile::Vertical };
            if right != expect || left == Tile::Empty {
                return invariant(format!("reverse move blocked at ({r},{c})"));
            }
            self.set(r, c + 1, left);
            self.set(r, c, if left.has_w() { Tile::Crossing } else { Tile::Vertical });
        }
        let top = self.tile(r_top, c + 1);
        if self.tile(r_top, c) != Tile::Empty || !matches!(top, Tile::SeElbow | Tile::Vertical) {
            return invariant(format!("reverse move has no empty tile at ({r_top},{c})"));
        }
        self.set(r_top, c, Tile::SeElbow);
        self.set(r_top, c + 1, if top == Tile::SeElbow { Tile::Horizontal } else { Tile::NwElbow });
        Ok(())
    }

    /// Column move taking the empty tile at `empty` to the northwest corner of its rectangle.
    pub fn column_move(&self, empty: (i64, i64)) -> Result<Self> {
        Ok(self.column_move_inner(empty)?.0)
    }

    fn column_move_inner(&self, (r_bot, ce): (i64, i64)) -> Result<(Self, (i64, i64))> {
        let c = ce - 1;
        if !self.in_bounds(r_bot, ce) || !self.in_bounds(r_bot, c) || self.tile(r_bot, ce) != Tile::Empty {
            return domain(format!("({r_bot},{ce}) is not an empty tile with a western neighbour"));
        }
        let bottom = self.tile(r_bot, c);
        if !matches!(bottom, Tile::Vertical | Tile::NwElbow) {
            return domain(format!("no pipe climbs column {c} from row {r_bot}"));
        }
        let mut r_top = r_bot - 1;
        while r_top >= self.rows.0 && matches!(self.tile(r_top, c), Tile::Vertical | Tile::Crossing) {
            r_top -= 1;
        }
        if r_top < self.rows.0 || self.tile(r_top, c) != Tile::SeElbow {
            return domain(format!("active pipe in column {c} never turns east"));
        }
        let mut d = self.clone();
        d.shift_left(c, r_top, r_bot).map_err(|e| Error::Domain(e.to_string()))?;
        d.set(r_bot, c, if bottom == Tile::Vertical { Tile::SeElbow } else { Tile::Horizontal });
        d.set(r_bot, ce, Tile::NwElbow);
        Ok((d, (r_top, c)))
    }

    /// Apply downward column moves to the northwestmost floating tile until no floating tile remains.
    pub fn rectify(&self) -> Result<Self> {
        let start = self.floating_tiles().first().copied();
        Ok(self.rectify_from(start)?.0)
    }

    fn rectify_from(&self, start: Option<(i64, i64)>) -> Result<(Self, Vec<(i64, i64)>)> {
        let mut d = self.clone();
        let mut path: Vec<(i64, i64)> = start.into_iter().collect();
        let bound = self.grid.len() * self.grid.len() + 1;
        for _ in 0..bound {
            let Some(&e) = d.floating_tiles().first() else {
                return Ok((d, path));
            };
            let (next, pos) = d.column_move_inner(e)?;
            d = next;
            path.push(pos);
        }
        invariant("rectification did not terminate")
    }

    /// Row where the pipe entering column c makes its first turn.
    fn first_turn(&self, c: i64) -> Option<i64> {
        let mut r = self.rows.1;
        while r >= self.rows.0 && matches!(self.tile(r, c), Tile::Vertical | Tile::Crossing) {
            r -= 1;
        }
        (r >= self.rows.0 && self.tile(r, c) == Tile::SeElbow).then_some(r)
    }

    /// D <- i: swap pipes i and i+1 in columns i, i+1 and rectify. Returns the insertion path.
    pub fn eg_insert(&self, i: i64) -> Result<(Self, Vec<(i64, i64)>)> {
        let Variant::Square(w) = &self.variant else {
            return domain("insertion needs a square dream");
        };
        if !self.is_eg() {
            return domain("insertion needs an EG dream");
        }
        if i < self.cols.0 || i + 1 > self.cols.1 {
            return domain(format!("letter {i} out of range"));
        }
        let (Some(top), Some(bot)) = (self.first_turn(i), self.first_turn(i + 1)) else {
            return invariant("pipes do not turn");
        };
        if top >= bot {
            return domain(format!("pipes {i} and {} cross", i + 1));
        }
        let mut d = self.clone();
        d.shift_left(i, top, bot)?;
        d.set(bot, i, Tile::SeElbow);
        d.set(bot, i + 1, Tile::Crossing);
        d.variant = Variant::Square(w.mul_s_left(i));
        d.rectify_from(Some((top, i)))
    }

    /// Undo an insertion from its result and the final box of its path.
    pub fn reverse_insert(&self, final_box: (i64, i64)) -> Result<(Self, i64)> {
        let Variant::Square(w) = &self.variant else {
            return domain("insertion needs a square dream");
        };
        let mut d = self.clone();
        let (mut r, mut c) = final_box;
        loop {
            if !d.in_bounds(r, c + 1) || d.tile(r, c) != Tile::Empty {
                return domain(format!("({r},{c}) is not an empty tile"));
            }
            let mut rb = r + 1;
            while rb <= d.rows.1 && matches!(d.tile(rb, c + 1), Tile::Vertical | Tile::Crossing) {
                rb += 1;
            }
            if rb > d.rows.1 {
                // the pipe in column c+1 runs straight to the south edge: undo the initial swap
                let Some(bot) = d.first_turn(c).filter(|&b| b > r) else {
                    return invariant("no turn to undo");
                };
                if d.tile(bot, c + 1) != Tile::Crossing {
                    return invariant("swapped pipes do not cross");
                }
                d.shift_right(c, r, bot)?;
                d.set(bot, c, Tile::Vertical);
                d.set(bot, c + 1, Tile::SeElbow);
                d.variant = Variant::Square(w.mul_s_left(c));
                return Ok((d, c));
            }
            if d.tile(rb, c + 1) != Tile::NwElbow {
                return invariant(format!("unexpected tile below ({r},{})", c + 1));
            }
            let bottom = d.tile(rb, c);
            d.shift_right(c, r, rb)?;
            d.set(rb, c, if bottom == Tile::SeElbow { Tile::Vertical } else { Tile::NwElbow });
            d.set(rb, c + 1, Tile::Empty);
            (r, c) = (rb, c + 1);
        }
    }

    fn render_with(&self, empty: char) -> String {
        let mut out = format!(
            "{};{}..{};{}..{};{}\n",
            self.variant.name(),
            self.rows.0,
            self.rows.1,
            self.cols.0,
            self.cols.1,
            self.variant.label()
        );
        let exits: BTreeMap<i64, i64> = self
            .trace()
            .unwrap_or_default()
            .into_iter()
            .filter_map(|p| if let Exit::East(r) = p.exit { Some((r, p.label)) } else { None })
            .collect();
        for r in self.rows.0..=self.rows.1 {
            let tiles: String = (self.cols.0..=self.cols.1)
                .map(|c| match self.tile(r, c) {
                    Tile::Empty => empty,
                    t => t.to_char(),
                })
                .collect();
            let exit = exits.get(&r).map(|l| l.to_string()).unwrap_or_default();
            out.push_str(&format!("{r:>4} {tiles} {exit}\n"));
        }
        out
    }

    /// Box-drawing grid with row labels and the pipe leaving each row; empty tiles are blank.
    pub fn render(&self) -> String {
        self.render_with(' ')
    }

    /// Compact text form: header plus one character per tile, `.` for empty.
    pub fn to_text(&self) -> String {
        self.render_with('.')
    }
}

fn rebuild(d: &BumplessPipedream, paths: &[PipePath]) -> Option<Vec<Tile>> {
    let mut uses: Vec<Vec<(Side, Side)>> = vec![vec![]; d.grid.len()];
    for p in paths {
        for &(r, c, from, to) in &p.cells {
            if !d.in_bounds(r, c) {
                return None;
            }
            uses[d.idx(r, c)].push((from, to));
        }
    }
    uses.into_iter()
        .map(|u| {
            Some(match u.as_slice() {
                [] => Tile::Empty,
                [(Side::S, Side::N)] => Tile::Vertical,
                [(Side::W, Side::E)] => Tile::Horizontal,
                [(Side::S, Side::E)] => Tile::SeElbow,
                [(Side::W, Side::N)] => Tile::NwElbow,
                [(Side::S, Side::N), (Side::W, Side::E)] | [(Side::W, Side::E), (Side::S, Side::N)] => Tile::Crossing,
                _ => return None,
            })
        })
        .collect()
}

impl fmt::Display for BumplessPipedream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("bad range {s}")))?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad bound {t}: {e}")));
    Ok((p(a)?, p(b)?))
}

impl FromStr for BumplessPipedream {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty pipedream".into()))?;
        let fields: Vec<&str> = header.trim().split(';').collect();
        let [name, rows, cols, label] = fields[..] else {
            return Err(Error::Parse(format!("bad header {header}")));
        };
        let variant = match name {
            "square" => Variant::Square(label.parse()?),
            "rect" => Variant::Rect(label.parse()?),
            "halfplane" => Variant::Halfplane(label.parse()?),
            _ => return Err(Error::Parse(format!("unknown variant {name}"))),
        };
        let (rows, cols) = (parse_range(rows)?, parse_range(cols)?);
        let width = (cols.1 - cols.0 + 1) as usize;
        let mut grid = vec![];
        for line in lines {
            let chars: Vec<char> = line.chars().collect();
            if chars.len() < 5 + width {
                return Err(Error::Parse(format!("short row {line:?}")));
            }
            for &ch in &chars[5..5 + width] {
                grid.push(Tile::from_char(ch).ok_or_else(|| Error::Parse(format!("bad tile {ch:?}")))?);
            }
        }
        BumplessPipedream::new(variant, rows, cols, grid)
    }
}

#[derive(Serialize, Deserialize)]
struct DreamJson {
    variant: String,
    rows: (i64, i64),
    cols: (i64, i64),
    label: String,
    grid: Vec<String>,
}

impl Serialize for BumplessPipedream {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let grid = (self.rows.0..=self.rows.1)
            .map(|r| (self.cols.0..=self.cols.1).map(|c| self.tile(r, c).to_char()).collect())
            .collect();
        DreamJson {
            variant: self.variant.name().into(),
            rows: self.rows,
            cols: self.cols,
            label: self.variant.label(),
            grid,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BumplessPipedream {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DreamJson::deserialize(d)?;
        let mut text = format!("{};{}..{};{}..{};{}\n", j.variant, j.rows.0, j.rows.1, j.cols.0, j.cols.1, j.label);
        for (k, row) in j.grid.iter().enumerate() {
            text.push_str(&format!("{:>4} {row}\n", j.rows.0 + k as i64));
        }
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn square_size(w: &Permutation) -> Result<usize> {
    if !w.in_s_plus() {
        return domain(format!("{w} is not supported on the positive integers"));
    }
    Ok(w.moved_range().map_or(1, |(_, hi)| hi as usize))
}

/// Rothe dream: pipe i turns once, at (w^{-1}(i), i).
pub fn rothe_dream(w: &Permutation, n: usize) -> Result<BumplessPipedream> {
    if square_size(w)? > n {
        return domain(format!("{w} does not fit in {n} rows"));
    }
    let n = n as i64;
    let mut grid = vec![];
    for r in 1..=n {
        for c in 1..=n {
            let vert = w.inverse_apply(c) < r;
            let horiz = c > w.apply(r);
            grid.push(match (w.apply(r) == c, vert, horiz) {
                (true, _, _) => Tile::SeElbow,
                (_, true, true) => Tile::Crossing,
                (_, true, false) => Tile::Vertical,
                (_, false, true) => Tile::Horizontal,
                _ => Tile::Empty,
            });
        }
    }
    BumplessPipedream::new(Variant::Square(w.clone()), (1, n), (1, n), grid)
}

/// The EG dream of the identity in S_n.
pub fn identity_dream(n: usize) -> BumplessPipedream {
    rothe_dream(&Permutation::identity(), n.max(1)).expect("identity fits")
}

/// Closure of the Rothe dream under droops.
pub fn enumerate_square(w: &Permutation) -> Result<BTreeSet<BumplessPipedream>> {
    let start = rothe_dream(w, square_size(w)?)?;
    let mut seen: HashSet<BumplessPipedream> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for e in d.droops() {
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

struct Search<'a> {
    rows: (i64, i64),
    cols: (i64, i64),
    /// may pipes a and b cross
    cross_ok: &'a dyn Fn(i64, i64) -> bool,
    /// may pipe `label` leave row r to the east
    east_ok: &'a dyn Fn(i64, i64) -> bool,
    /// may pipe `label` continue north out of row r
    north_ok: &'a dyn Fn(i64, i64) -> bool,
    results: Vec<Vec<Tile>>,
}

impl Search<'_> {
    fn width(&self) -> usize {
        (self.cols.1 - self.cols.0 + 1) as usize
    }

    fn run(&mut self, entries: &[i64]) {
        let w = self.width();
        let h = (self.rows.1 - self.rows.0 + 1) as usize;
        let mut vert: Vec<Option<i64>> = vec![None; w];
        for &c in entries {
            vert[(c - self.cols.0) as usize] = Some(c);
        }
        let mut grid = vec![Tile::Empty; w * h];
        let mut crossed = HashSet::new();
        self.step(self.rows.1, self.cols.0, None, &mut vert, &mut grid, &mut crossed);
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        r: i64,
        c: i64,
        carry: Option<i64>,
        vert: &mut Vec<Option<i64>>,
        grid: &mut Vec<Tile>,
        crossed: &mut HashSet<(i64, i64)>,
    ) {
        if c > self.cols.1 {
            match carry {
                Some(l) if (self.east_ok)(r, l) => {}
                _ => return,
            }
            if r == self.rows.0 {
                self.results.push(grid.clone());
            } else {
                self.step(r - 1, self.cols.0, None, vert, grid, crossed);
            }
            return;
        }
        let k = (c - self.cols.0) as usize;
        let gi = (r - self.rows.0) as usize * self.width() + k;
        let below = vert[k];
        let mut options: Vec<(Tile, Option<i64>, Option<i64>)> = vec![];
        match (below, carry) {
            (None, None) => options.push((Tile::Empty, None, None)),
            (Some(a), None) => {
                if (self.north_ok)(r, a) {
                    options.push((Tile::Vertical, Some(a), None));
                }
                options.push((Tile::SeElbow, None, Some(a)));
            }
            (None, Some(b)) => {
                options.push((Tile::Horizontal, None, Some(b)));
                if (self.north_ok)(r, b) {
                    options.push((Tile::NwElbow, Some(b), None));
                }
            }
            (Some(a), Some(b)) => {
                let key = (a.min(b), a.max(b));
                if (self.cross_ok)(a, b) && (self.north_ok)(r, a) && !crossed.contains(&key) {
                    crossed.insert(key);
                    grid[gi] = Tile::Crossing;
                    vert[k] = Some(a);
                    self.step(r, c + 1, Some(b), vert, grid, crossed);
                    crossed.remove(&key);
                }
            }
        }
        for (t, up, right) in options {
            grid[gi] = t;
            vert[k] = up;
            self.step(r, c + 1, right, vert, grid, crossed);
        }
        vert[k] = below;
        grid[gi] = Tile::Empty;
    }
}

/// All rectangular dreams for w in S_n, by row-by-row backtracking from the south edge.
pub fn enumerate_rect(w: &Permutation, n: usize) -> Result<BTreeSet<BumplessPipedream>> {
    if square_size(w)? > n {
        return domain(format!("{w} does not fit in {n} rows"));
    }
    let n = n as i64;
    let cross_ok = |a: i64, b: i64| a > 0 && b > 0;
    let east_ok = |r: i64, l: i64| w.apply(r) == l;
    // a positive pipe must not climb above its exit row
    let north_ok = |r: i64, l: i64| l <= 0 || w.inverse_apply(l) < r;
    let mut s = Search { rows: (1, n), cols: (1 - n, n), cross_ok: &cross_ok, east_ok: &east_ok, north_ok: &north_ok, results: vec![] };
    s.run(&(1 - n..=n).collect::<Vec<_>>());
    let mut out = BTreeSet::new();
    for grid in s.results {
        out.insert(BumplessPipedream::new(Variant::Rect(w.clone()), (1, n), (1 - n, n), grid)?);
    }
    Ok(out)
}

/// All crossing-free halfplane dreams for lambda, truncated to rows 1-n..0.
pub fn enumerate_halfplane(lambda: &Partition, n: usize) -> Result<BTreeSet<BumplessPipedream>> {
    if !lambda.fits_in(n, n) {
        return domain(format!("{lambda} does not fit in a {n}x{n} box"));
    }
    let m = n as i64;
    let entries = halfplane_entries(lambda, n);
    let cross_ok = |_: i64, _: i64| false;
    let east_ok = |_: i64, _: i64| true;
    let north_ok = |r: i64, _: i64| r > 1 - m;
    let mut s = Search { rows: (1 - m, 0), cols: (1 - m, m), cross_ok: &cross_ok, east_ok: &east_ok, north_ok: &north_ok, results: vec![] };
    s.run(&entries);
    let mut out = BTreeSet::new();
    for grid in s.results {
        out.insert(BumplessPipedream::new(Variant::Halfplane(lambda.clone()), (1 - m, 0), (1 - m, m), grid)?);
    }
    Ok(out)
}

/// Square dreams whose empty tiles form a partition in the northwest corner.
pub fn enumerate_eg(w: &Permutation) -> Result<BTreeSet<BumplessPipedream>> {
    Ok(enumerate_square(w)?.into_iter().filter(|d| d.is_eg()).collect())
}

pub fn shape_counts(w: &Permutation) -> Result<BTreeMap<Partition, usize>> {
    let mut out = BTreeMap::new();
    for d in enumerate_eg(w)? {
        *out.entry(d.eg_shape().unwrap()).or_insert(0) += 1;
    }
    Ok(out)
}

/// (P, Q) for a reduced word: insert the letters right to left into the identity dream of S_n.
pub fn eg_pq(word: &[i64], n: usize) -> Result<(BumplessPipedream, Tableau)> {
    if !is_reduced(word) {
        return domain(format!("{word:?} is not reduced"));
    }
    let mut d = identity_dream(n);
    let mut q: Tableau = vec![];
    let mut shape = Partition::empty();
    for (step, &i) in word.iter().rev().enumerate() {
        d = d.eg_insert(i)?.0;
        let next = d.eg_shape().expect("insertion returns EG dreams");
        let row = (0..next.len()).find(|&r| next.part(r + 1) != shape.part(r + 1)).expect("shape grows by one box");
        if row == q.len() {
            q.push(vec![]);
        }
        q[row].push(step + 1);
        shape = next;
    }
    Ok((d, q))
}

/// Number of distinct insertion dreams of each shape over the reduced words of w.
pub fn eg_insertion_counts(w: &Permutation) -> BTreeMap<Partition, usize> {
    let (lo, hi) = w.moved_range().unwrap_or((1, 1));
    let ws = w.shift(1 - lo);
    let n = (hi - lo + 1) as usize;
    let mut dreams = BTreeSet::new();
    for word in ws.reduced_words() {
        dreams.insert(eg_pq(&word, n.max(1)).expect("reduced words insert").0);
    }
    let mut out = BTreeMap::new();
    for d in dreams {
        *out.entry(d.eg_shape().unwrap()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn rothe_basics() {
        let d = rothe_dream(&Permutation::identity(), 3).unwrap();
        assert!(d.empties().is_empty());
        let d = rothe_dream(&p("s:1"), 2).unwrap();
        assert_eq!(d.empties(), vec![(1, 1)]);
        for w in Permutation::all_of_sn(4) {
            assert_eq!(rothe_dream(&w, 4).unwrap().empties().len(), w.length());
        }
        assert!(rothe_dream(&Permutation::identity(), 3).unwrap().droops().is_empty());
        assert!(!rothe_dream(&p("1:2,1,4,3"), 4).unwrap().droops().is_empty());
    }

    #[test]
    fn square_weights() {
        let w0 = p("1:3,2,1");
        let all = enumerate_square(&w0).unwrap();
        assert_eq!(all.len(), 1);
        let wt = all.iter().next().unwrap().weight();
        let expect: Poly = [(1, 1), (1, 2), (2, 1)].iter().map(|&(i, j)| &Poly::x(i) - &Poly::a(j)).product();
        assert_eq!(wt, expect);
        for w in [p("1:2,1,4,3"), p("1:1,3,2"), p("1:2,3,1")] {
            let sum: Poly = enumerate_square(&w).unwrap().iter().map(|d| d.weight()).sum();
            assert_eq!(sum, schubert::schubert_double(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn eg_dreams_of_small_perms() {
        let d = enumerate_eg(&p("s:1")).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.iter().next().unwrap().eg_shape(), Some(part("1")));
        let (d1, path) = identity_dream(3).eg_insert(1).unwrap();
        assert_eq!(d1.eg_shape(), Some(part("1")));
        assert_eq!(path, vec![(1, 1)]);
        assert_eq!(d1.reverse_insert((1, 1)).unwrap(), (identity_dream(3), 1));
    }

    #[test]
    fn insertion_round_trip() {
        for w in Permutation::all_of_sn(4) {
            for word in w.reduced_words() {
                let mut d = identity_dream(4);
                for &i in word.iter().rev() {
                    let (next, path) = d.eg_insert(i).unwrap();
                    next.validate().unwrap();
                    assert_eq!(next.reverse_insert(*path.last().unwrap()).unwrap(), (d.clone(), i));
                    d = next;
                }
                assert_eq!(d.permutation(), Some(&w));
            }
        }
    }

    #[test]
    fn counts_match_stanley_oracle() {
        for w in Permutation::all_of_sn(4) {
            let from_dreams = shape_counts(&w).unwrap();
            assert_eq!(eg_insertion_counts(&w), from_dreams, "{w}");
            let oracle = schubert::stanley_via_window(&w);
            for (l, c) in &from_dreams {
                assert_eq!(oracle.coeff(l), Poly::int(*c as i64), "{w} {l}");
            }
        }
    }

    #[test]
    fn halfplane_example() {
        let all = enumerate_halfplane(&part("2,1,1"), 4).unwrap();
        let target = [(-3, -3), (-2, -3), (-1, 0), (0, -2)]
            .iter()
            .map(|&(i, j)| &Poly::x(i) - &Poly::a(j))
            .product::<Poly>();
        assert!(all.iter().any(|d| d.weight() == target));
        assert!(all.iter().all(|d| d.empties().len() == 4));
        let empty = enumerate_halfplane(&Partition::empty(), 2).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.iter().next().unwrap().weight(), Poly::one());
    }

    #[test]
    fn rect_identity() {
        let all = enumerate_rect(&Permutation::identity(), 2).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all.iter().next().unwrap().lambda_of(), Some(Partition::empty()));
    }

    #[test]
    fn text_round_trip() {
        for d in enumerate_square(&p("1:2,1,4,3")).unwrap() {
            assert_eq!(d.render().parse::<BumplessPipedream>().unwrap(), d);
            assert_eq!(d.to_text().parse::<BumplessPipedream>().unwrap(), d);
            let j = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<BumplessPipedream>(&j).unwrap(), d);
        }
        let id = identity_dream(3).render();
        assert!(id.lines().skip(1).all(|l| !l.contains('┼')));
    }
}
