//! Polyominoes, 01-fillings with at most one 1 per column, ne/se chain statistics,
//! exhaustive (and sharded) enumeration and generating polynomials.
//!
//! Coordinates are Cartesian: row 1 is the bottom row, column 1 the leftmost column.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knuth::{lds, lis};
use crate::tableau::Word;

/// Cell of a polyomino: `row` 1 is the bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Pos {
    pub row: u32,
    pub col: u32,
}

impl Pos {
    pub const fn new(row: u32, col: u32) -> Self {
        Pos { row, col }
    }
}

impl From<(u32, u32)> for Pos {
    fn from((row, col): (u32, u32)) -> Self {
        Pos { row, col }
    }
}

impl From<Pos> for (u32, u32) {
    fn from(p: Pos) -> Self {
        (p.row, p.col)
    }
}

/// Axis-parallel rectangle of cells, bounds inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub row_lo: u32,
    pub row_hi: u32,
    pub col_lo: u32,
    pub col_hi: u32,
}

impl Rect {
    pub fn contains(&self, p: Pos) -> bool {
        self.row_lo <= p.row && p.row <= self.row_hi && self.col_lo <= p.col && p.col <= self.col_hi
    }

    pub fn height(&self) -> u32 {
        self.row_hi - self.row_lo + 1
    }

    pub fn width(&self) -> u32 {
        self.col_hi - self.col_lo + 1
    }
}

/// Finite set of cells.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polyomino {
    cells: BTreeSet<Pos>,
}

/// Row lengths of a left-justified polyomino, bottom row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowSpec {
    pub lengths: Vec<u32>,
}

impl RowSpec {
    pub fn new(lengths: Vec<u32>) -> Self {
        RowSpec { lengths }
    }

    pub fn is_unimodal(&self) -> bool {
        let l = &self.lengths;
        let mut i = 1;
        while i < l.len() && l[i - 1] <= l[i] {
            i += 1;
        }
        while i < l.len() && l[i - 1] >= l[i] {
            i += 1;
        }
        i >= l.len()
    }
}

impl fmt::Display for RowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    RowConvex,
    ColumnConvex,
    Convex,
    IntersectionFree,
    Moon,
    Stack,
    FerrersFrench,
    AlmostMoonRow,
    AlmostMoonCol,
}

impl Polyomino {
    pub fn from_cells(cells: impl IntoIterator<Item = Pos>) -> Result<Self> {
        let cells: BTreeSet<Pos> = cells.into_iter().collect();
        if cells.iter().any(|p| p.row == 0 || p.col == 0) {
            return Err(Error::InvalidFilling("cell coordinates are 1-based".into()));
        }
        Ok(Polyomino { cells })
    }

    /// Left-justified rows of the given lengths (bottom row first); the lengths must be unimodal.
    pub fn from_row_spec(spec: &RowSpec) -> Result<Self> {
        if spec.lengths.contains(&0) || !spec.is_unimodal() {
            return Err(Error::NotStack);
        }
        Ok(Self::left_justified(&spec.lengths))
    }

    /// Left-justified rows of the given lengths with no shape check.
    pub fn left_justified(lengths: &[u32]) -> Self {
        let cells =
            lengths.iter().enumerate().flat_map(|(i, &l)| (1..=l).map(move |c| Pos::new(i as u32 + 1, c))).collect();
        Polyomino { cells }
    }

    /// Rectangle with `height` rows and `width` columns.
    pub fn rectangle(height: u32, width: u32) -> Self {
        Self::left_justified(&vec![width; height as usize])
    }

    pub fn cells(&self) -> &BTreeSet<Pos> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, p: Pos) -> bool {
        self.cells.contains(&p)
    }

    /// Occupied columns with their rows in increasing order.
    pub fn columns(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut m: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for p in &self.cells {
            m.entry(p.col).or_default().push(p.row);
        }
        m
    }

    /// Occupied rows with their columns in increasing order.
    pub fn rows(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut m: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for p in &self.cells {
            m.entry(p.row).or_default().push(p.col);
        }
        for v in m.values_mut() {
            v.sort_unstable();
        }
        m
    }

    /// Row lengths bottom-up when every row starts in column 1 and rows 1..=h are all present.
    pub fn row_spec(&self) -> Option<RowSpec> {
        let rows = self.rows();
        let mut lengths = Vec::new();
        for (i, (&r, cols)) in rows.iter().enumerate() {
            if r != i as u32 + 1 || cols[0] != 1 || !is_interval(cols) {
                return None;
            }
            lengths.push(cols.len() as u32);
        }
        Some(RowSpec { lengths })
    }

    /// Reflection through a horizontal axis.
    pub fn reflect_horizontal(&self) -> Polyomino {
        let (lo, hi) = row_bounds(&self.cells);
        Polyomino { cells: self.cells.iter().map(|p| Pos::new(lo + hi - p.row, p.col)).collect() }
    }

    pub fn contains_rect(&self, r: &Rect) -> bool {
        (r.row_lo..=r.row_hi).all(|row| (r.col_lo..=r.col_hi).all(|col| self.contains(Pos::new(row, col))))
    }

    pub fn classify(&self) -> BTreeSet<ClassTag> {
        let rows = self.rows();
        let cols = self.columns();
        let row_convex = rows.values().all(|c| is_interval(c));
        let col_convex = cols.values().all(|r| is_interval(r));
        let rows_comparable = pairwise_comparable(rows.values());
        let cols_comparable = pairwise_comparable(cols.values());
        let mut tags = BTreeSet::new();
        if row_convex {
            tags.insert(ClassTag::RowConvex);
        }
        if col_convex {
            tags.insert(ClassTag::ColumnConvex);
        }
        let convex = row_convex && col_convex;
        if convex {
            tags.insert(ClassTag::Convex);
        }
        if rows_comparable {
            tags.insert(ClassTag::IntersectionFree);
        }
        let moon = convex && rows_comparable && cols_comparable && is_connected_rows(&rows);
        if moon {
            tags.insert(ClassTag::Moon);
            let first = rows.values().map(|c| c[0]).min().unwrap_or(1);
            if rows.values().all(|c| c[0] == first) {
                tags.insert(ClassTag::Stack);
                let lens: Vec<usize> = rows.values().map(|c| c.len()).collect();
                if lens.windows(2).all(|w| w[0] >= w[1]) {
                    tags.insert(ClassTag::FerrersFrench);
                }
            }
        }
        if row_convex && rows_comparable && exceptional(&rows) <= 1 {
            tags.insert(ClassTag::AlmostMoonRow);
        }
        if col_convex && cols_comparable && exceptional(&cols) <= 1 {
            tags.insert(ClassTag::AlmostMoonCol);
        }
        tags
    }

    pub fn is_stack(&self) -> bool {
        self.classify().contains(&ClassTag::Stack)
    }

    pub fn is_ferrers_french(&self) -> bool {
        self.classify().contains(&ClassTag::FerrersFrench)
    }

    /// All inclusion-maximal rectangles of cells inside the polyomino.
    pub fn maximal_rectangles(&self) -> Vec<Rect> {
        let idx = ShapeIndex::new(self);
        let (rlo, rhi, clo, chi) = (idx.row_lo, idx.row_hi, idx.col_lo, idx.col_hi);
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        for r0 in rlo..=rhi {
            for r1 in r0..=rhi {
                for c0 in clo..=chi {
                    for c1 in c0..=chi {
                        let rect = Rect { row_lo: r0, row_hi: r1, col_lo: c0, col_hi: c1 };
                        if !idx.full(&rect) {
                            break;
                        }
                        let grow = [
                            (r0 > rlo).then(|| Rect { row_lo: r0 - 1, ..rect }),
                            (r1 < rhi).then(|| Rect { row_hi: r1 + 1, ..rect }),
                            (c0 > clo).then(|| Rect { col_lo: c0 - 1, ..rect }),
                            (c1 < chi).then(|| Rect { col_hi: c1 + 1, ..rect }),
                        ];
                        if grow.iter().flatten().all(|g| !idx.full(g)) {
                            out.push(rect);
                        }
                    }
                }
            }
        }
        out
    }
}

fn is_interval(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[1] == w[0] + 1)
}

fn is_connected_rows(rows: &BTreeMap<u32, Vec<u32>>) -> bool {
    let keys: Vec<u32> = rows.keys().copied().collect();
    is_interval(&keys)
}

fn pairwise_comparable<'a>(sets: impl Iterator<Item = &'a Vec<u32>>) -> bool {
    let v: Vec<BTreeSet<u32>> = sets.map(|s| s.iter().copied().collect()).collect();
    v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| a.is_subset(b) || b.is_subset(a)))
}

/// Number of lines with strictly longer lines on both sides.
fn exceptional(lines: &BTreeMap<u32, Vec<u32>>) -> usize {
    let lens: Vec<usize> = lines.values().map(|v| v.len()).collect();
    (0..lens.len())
        .filter(|&i| lens[..i].iter().any(|&l| l > lens[i]) && lens[i + 1..].iter().any(|&l| l > lens[i]))
        .count()
}

fn row_bounds(cells: &BTreeSet<Pos>) -> (u32, u32) {
    let lo = cells.iter().map(|p| p.row).min().unwrap_or(1);
    let hi = cells.iter().map(|p| p.row).max().unwrap_or(0);
    (lo, hi)
}

/// Prefix sums over the bounding box for O(1) rectangle containment.
#[derive(Debug, Clone)]
pub struct ShapeIndex {
    row_lo: u32,
    row_hi: u32,
    col_lo: u32,
    col_hi: u32,
    width: usize,
    prefix: Vec<u32>,
}

impl ShapeIndex {
    pub fn new(p: &Polyomino) -> Self {
        let (row_lo, row_hi) = row_bounds(&p.cells);
        let col_lo = p.cells.iter().map(|c| c.col).min().unwrap_or(1);
        let col_hi = p.cells.iter().map(|c| c.col).max().unwrap_or(0);
        let h = (row_hi + 1).saturating_sub(row_lo) as usize;
        let w = (col_hi + 1).saturating_sub(col_lo) as usize;
        let mut prefix = vec![0u32; (h + 1) * (w + 1)];
        for i in 0..h {
            for j in 0..w {
                let inside = u32::from(p.contains(Pos::new(row_lo + i as u32, col_lo + j as u32)));
                prefix[(i + 1) * (w + 1) + j + 1] =
                    inside + prefix[i * (w + 1) + j + 1] + prefix[(i + 1) * (w + 1) + j] - prefix[i * (w + 1) + j];
            }
        }
        ShapeIndex { row_lo, row_hi, col_lo, col_hi, width: w, prefix }
    }

    /// True when every cell of `r` belongs to the polyomino.
    pub fn full(&self, r: &Rect) -> bool {
        if r.row_lo < self.row_lo || r.row_hi > self.row_hi || r.col_lo < self.col_lo || r.col_hi > self.col_hi {
            return false;
        }
        let w = self.width + 1;
        let (i0, i1) = ((r.row_lo - self.row_lo) as usize, (r.row_hi - self.row_lo + 1) as usize);
        let (j0, j1) = ((r.col_lo - self.col_lo) as usize, (r.col_hi - self.col_lo + 1) as usize);
        let sum =
            self.prefix[i1 * w + j1] + self.prefix[i0 * w + j0] - self.prefix[i0 * w + j1] - self.prefix[i1 * w + j0];
        sum as usize == (i1 - i0) * (j1 - j0)
    }

    pub fn spans(&self, a: Pos, b: Pos) -> bool {
        self.full(&Rect {
            row_lo: a.row.min(b.row),
            row_hi: a.row.max(b.row),
            col_lo: a.col.min(b.col),
            col_hi: a.col.max(b.col),
        })
    }
}

/// Shape plus the set of 1-cells, at most one per column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filling {
    pub shape: Polyomino,
    pub ones: BTreeSet<Pos>,
}

impl Filling {
    pub fn new(shape: Polyomino, ones: BTreeSet<Pos>) -> Result<Self> {
        let f = Filling { shape, ones };
        f.validate()?;
        Ok(f)
    }

    pub fn empty(shape: Polyomino) -> Self {
        Filling { shape, ones: BTreeSet::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let mut cols = BTreeSet::new();
        for p in &self.ones {
            if !self.shape.contains(*p) {
                return Err(Error::InvalidFilling(format!("1 at ({},{}) outside the shape", p.row, p.col)));
            }
            if !cols.insert(p.col) {
                return Err(Error::InvalidFilling(format!("two 1s in column {}", p.col)));
            }
        }
        Ok(())
    }

    /// Columns of the shape holding no 1.
    pub fn empty_columns(&self) -> BTreeSet<u32> {
        let used: BTreeSet<u32> = self.ones.iter().map(|p| p.col).collect();
        self.shape.columns().into_keys().filter(|c| !used.contains(c)).collect()
    }

    pub fn reflect_horizontal(&self) -> Filling {
        let (lo, hi) = row_bounds(&self.shape.cells);
        Filling {
            shape: self.shape.reflect_horizontal(),
            ones: self.ones.iter().map(|p| Pos::new(lo + hi - p.row, p.col)).collect(),
        }
    }

    /// Ones inside `r`, read column by column as their row indices.
    pub fn word_in(&self, r: &Rect) -> Word {
        let mut v: Vec<(u32, u32)> = self.ones.iter().filter(|p| r.contains(**p)).map(|p| (p.col, p.row)).collect();
        v.sort_unstable();
        Word(v.into_iter().map(|(_, r)| r).collect())
    }
}

/// Number of ones and the lengths of the longest ne- and se-chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChainStats {
    pub n: u32,
    pub ne: u32,
    pub se: u32,
}

/// Longest chain of ones (sorted by column) moving strictly up (`up`) or strictly down,
/// among chains whose first and last elements span a rectangle inside the shape.
fn longest_chain(ones: &[Pos], idx: &ShapeIndex, up: bool, f: &mut Vec<u32>) -> u32 {
    let k = ones.len();
    let mut best = 0;
    f.clear();
    f.resize(k, 0);
    for i in 0..k {
        for x in f.iter_mut() {
            *x = 0;
        }
        f[i] = 1;
        for j in i + 1..k {
            let mut m = 0;
            for t in i..j {
                let step = if up { ones[j].row > ones[t].row } else { ones[j].row < ones[t].row };
                if f[t] > m && step {
                    m = f[t];
                }
            }
            if m > 0 {
                f[j] = m + 1;
            }
        }
        for j in i..k {
            if f[j] > best && idx.spans(ones[i], ones[j]) {
                best = f[j];
            }
        }
    }
    best
}

/// Reusable chain-statistics evaluator for one shape.
#[derive(Debug, Clone)]
pub struct ChainCounter {
    idx: ShapeIndex,
}

impl ChainCounter {
    pub fn new(p: &Polyomino) -> Self {
        ChainCounter { idx: ShapeIndex::new(p) }
    }

    /// `ones` must be sorted by column with distinct columns.
    pub fn stats_sorted(&self, ones: &[Pos], scratch: &mut Vec<u32>) -> ChainStats {
        ChainStats {
            n: ones.len() as u32,
            ne: longest_chain(ones, &self.idx, true, scratch),
            se: longest_chain(ones, &self.idx, false, scratch),
        }
    }

    pub fn stats(&self, f: &Filling) -> ChainStats {
        let mut ones: Vec<Pos> = f.ones.iter().copied().collect();
        ones.sort_by_key(|p| p.col);
        self.stats_sorted(&ones, &mut Vec::new())
    }
}

pub fn chain_stats(f: &Filling) -> ChainStats {
    ChainCounter::new(&f.shape).stats(f)
}

/// Chain statistics via the maximal rectangles; agrees with [`chain_stats`] on moon polyominoes.
pub fn chain_stats_by_rectangles(f: &Filling, rects: &[Rect]) -> ChainStats {
    let mut s = ChainStats { n: f.ones.len() as u32, ne: 0, se: 0 };
    for r in rects {
        let w = f.word_in(r);
        s.ne = s.ne.max(lis(&w) as u32);
        s.se = s.se.max(lds(&w) as u32);
    }
    s
}

/// Which fillings to enumerate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    All,
    FixedN(u32),
    /// Number of ones in each occupied row, bottom row first.
    RowSums(Vec<u32>),
    /// Every column holds exactly one 1 and every row at least one.
    Covering,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::All => write!(f, "all"),
            Mode::FixedN(k) => write!(f, "n={k}"),
            Mode::RowSums(a) => {
                let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "rowsums={}", s.join(","))
            }
            Mode::Covering => write!(f, "cover"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(Mode::All);
        }
        if s == "cover" {
            return Ok(Mode::Covering);
        }
        if let Some(k) = s.strip_prefix("n=") {
            return k.parse().map(Mode::FixedN).map_err(|e| Error::Parse(format!("mode {s:?}: {e}")));
        }
        if let Some(a) = s.strip_prefix("rowsums=") {
            let v: std::result::Result<Vec<u32>, _> = a.split(',').map(|x| x.trim().parse()).collect();
            return v.map(Mode::RowSums).map_err(|e| Error::Parse(format!("mode {s:?}: {e}")));
        }
        Err(Error::Parse(format!("unknown mode {s:?} (all | n=K | rowsums=a,b,... | cover)")))
    }
}

/// Shard `index` of `count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub index: u32,
    pub count: u32,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, count: 1 };
}

/// Column-major enumeration plan for the fillings of one shape.
#[derive(Debug, Clone)]
pub struct Enumerator {
    cols: Vec<u32>,
    /// Row choices per column; `0` stands for an empty column.
    choices: Vec<Vec<u32>>,
    row_index: BTreeMap<u32, usize>,
    mode: Mode,
}

impl Enumerator {
    pub fn new(p: &Polyomino, mode: Mode) -> Self {
        let columns = p.columns();
        let covering = mode == Mode::Covering;
        let cols: Vec<u32> = columns.keys().copied().collect();
        let choices = columns
            .values()
            .map(|rows| {
                let mut v = if covering { Vec::new() } else { vec![0] };
                v.extend(rows.iter().copied());
                v
            })
            .collect();
        let row_index = p.rows().keys().enumerate().map(|(i, &r)| (r, i)).collect();
        Enumerator { cols, choices, row_index, mode }
    }

    /// Total number of choice vectors before mode filtering.
    pub fn raw_count(&self) -> u128 {
        self.choices.iter().map(|c| c.len() as u128).product()
    }

    fn accepts(&self, ones: &[Pos]) -> bool {
        match &self.mode {
            Mode::All => true,
            Mode::FixedN(k) => ones.len() == *k as usize,
            Mode::RowSums(a) => {
                if a.len() != self.row_index.len() {
                    return false;
                }
                let mut sums = vec![0u32; a.len()];
                for p in ones {
                    sums[self.row_index[&p.row]] += 1;
                }
                sums == *a
            }
            Mode::Covering => {
                let mut hit = vec![false; self.row_index.len()];
                for p in ones {
                    hit[self.row_index[&p.row]] = true;
                }
                hit.into_iter().all(|h| h)
            }
        }
    }

    /// Calls `visit` with the ones (sorted by column) of every filling in the shard,
    /// in column-major order.
    pub fn for_each(&self, shard: Shard, mut visit: impl FnMut(&[Pos])) {
        let k = self.cols.len();
        if self.choices.iter().any(|c| c.is_empty()) {
            return;
        }
        let mut prefix_len = 0;
        let mut prefix_count: u64 = 1;
        while prefix_len < k && prefix_count < shard.count as u64 {
            prefix_count *= self.choices[prefix_len].len() as u64;
            prefix_len += 1;
        }
        let mut digits = vec![0usize; k];
        let mut ones: Vec<Pos> = Vec::with_capacity(k);
        let mut t: u64 = 0;
        loop {
            if t % shard.count as u64 == shard.index as u64 {
                // enumerate all suffixes for this prefix
                for d in digits[prefix_len..].iter_mut() {
                    *d = 0;
                }
                loop {
                    ones.clear();
                    for (i, &d) in digits.iter().enumerate() {
                        let r = self.choices[i][d];
                        if r != 0 {
                            ones.push(Pos::new(r, self.cols[i]));
                        }
                    }
                    if self.accepts(&ones) {
                        visit(&ones);
                    }
                    if !advance(&mut digits[prefix_len..], &self.choices[prefix_len..]) {
                        break;
                    }
                }
            }
            t += 1;
            if !advance(&mut digits[..prefix_len], &self.choices[..prefix_len]) {
                break;
            }
        }
    }
}

/// Odometer step with the first digit most significant; false after the last state.
fn advance(digits: &mut [usize], choices: &[Vec<u32>]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < choices[i].len() {
            return true;
        }
        digits[i] = 0;
    }
    false
}

pub fn enumerate_fillings(p: &Polyomino, mode: &Mode) -> Vec<Filling> {
    let mut out = Vec::new();
    Enumerator::new(p, mode.clone()).for_each(Shard::WHOLE, |ones| {
        out.push(Filling { shape: p.clone(), ones: ones.iter().copied().collect() });
    });
    out
}

/// Sparse bivariate polynomial: coefficient of `x^ne y^se`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenPoly {
    pub coeffs: BTreeMap<(u32, u32), u64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    ne: u32,
    se: u32,
    count: u64,
}

impl Serialize for GenPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self.coeffs.iter().map(|(&(ne, se), &count)| Term { ne, se, count }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<Term> = Vec::deserialize(d)?;
        let mut p = GenPoly::default();
        for t in terms {
            p.add(t.ne, t.se, t.count);
        }
        Ok(p)
    }
}

impl GenPoly {
    pub fn from_terms(terms: &[(u32, u32, u64)]) -> Self {
        let mut p = GenPoly::default();
        for &(u, v, c) in terms {
            p.add(u, v, c);
        }
        p
    }

    pub fn add(&mut self, ne: u32, se: u32, count: u64) {
        if count > 0 {
            *self.coeffs.entry((ne, se)).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &GenPoly) {
        for (&(u, v), &c) in &other.coeffs {
            self.add(u, v, c);
        }
    }

    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn get(&self, ne: u32, se: u32) -> u64 {
        self.coeffs.get(&(ne, se)).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> GenPoly {
        GenPoly { coeffs: self.coeffs.iter().map(|(&(u, v), &c)| ((v, u), c)).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        for (&(u, v), &c) in self.coeffs.iter().rev() {
            let mut t = if c == 1 && (u, v) != (0, 0) { String::new() } else { c.to_string() };
            for (var, e) in [("x", u), ("y", v)] {
                match e {
                    0 => {}
                    1 => t.push_str(var),
                    _ => t.push_str(&format!("{var}^{e}")),
                }
            }
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Default number of shards used to spread one enumeration over the thread pool.
const PARALLEL_SHARDS: u32 = 64;

pub fn gen_poly_shard(p: &Polyomino, mode: &Mode, shard: Shard) -> GenPoly {
    let counter = ChainCounter::new(p);
    let mut poly = GenPoly::default();
    let mut scratch = Vec::new();
    Enumerator::new(p, mode.clone()).for_each(shard, |ones| {
        let s = counter.stats_sorted(ones, &mut scratch);
        poly.add(s.ne, s.se, 1);
    });
    poly
}

/// Generating polynomial of (ne, se) over the fillings selected by `mode`; shards run in parallel.
pub fn gen_poly(p: &Polyomino, mode: &Mode) -> GenPoly {
    (0..PARALLEL_SHARDS)
        .into_par_iter()
        .map(|i| gen_poly_shard(p, mode, Shard { index: i, count: PARALLEL_SHARDS }))
        .reduce(GenPoly::default, |mut a, b| {
            a.merge(&b);
            a
        })
}

/// Counts keyed by (n, ne, se).
pub type CountTable = BTreeMap<(u32, u32, u32), u64>;

pub fn count_table_shard(p: &Polyomino, mode: &Mode, shard: Shard) -> CountTable {
    let counter = ChainCounter::new(p);
    let mut table = CountTable::new();
    let mut scratch = Vec::new();
    Enumerator::new(p, mode.clone()).for_each(shard, |ones| {
        let s = counter.stats_sorted(ones, &mut scratch);
        *table.entry((s.n, s.ne, s.se)).or_insert(0) += 1;
    });
    table
}

pub fn count_table(p: &Polyomino, mode: &Mode) -> CountTable {
    count_table_shard(p, mode, Shard::WHOLE)
}

/// N(p; n; ne=u, se=v).
pub fn count(p: &Polyomino, n: u32, u: u32, v: u32) -> u64 {
    count_table(p, &Mode::FixedN(n)).get(&(n, u, v)).copied().unwrap_or(0)
}

/// Same as [`count`] restricted to fillings with the given row sums.
pub fn count_with_row_sums(p: &Polyomino, row_sums: &[u32], u: u32, v: u32) -> u64 {
    let n: u32 = row_sums.iter().sum();
    count_table(p, &Mode::RowSums(row_sums.to_vec())).get(&(n, u, v)).copied().unwrap_or(0)
}

/// JSON shape description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeFile {
    Rowspec { lengths: Vec<u32> },
    Cells { cells: Vec<Pos> },
}

impl ShapeFile {
    pub fn to_polyomino(&self) -> Result<Polyomino> {
        match self {
            ShapeFile::Rowspec { lengths } => Polyomino::from_row_spec(&RowSpec::new(lengths.clone())),
            ShapeFile::Cells { cells } => Polyomino::from_cells(cells.iter().copied()),
        }
    }

    pub fn from_polyomino(p: &Polyomino) -> Self {
        match p.row_spec() {
            Some(s) if s.is_unimodal() => ShapeFile::Rowspec { lengths: s.lengths },
            _ => ShapeFile::Cells { cells: p.cells().iter().copied().collect() },
        }
    }
}

/// JSON filling description: a shape plus its 1-cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingFile {
    pub shape: ShapeFile,
    pub ones: Vec<Pos>,
}

impl FillingFile {
    pub fn to_filling(&self) -> Result<Filling> {
        Filling::new(self.shape.to_polyomino()?, self.ones.iter().copied().collect())
    }

    pub fn from_filling(f: &Filling) -> Self {
        FillingFile { shape: ShapeFile::from_polyomino(&f.shape), ones: f.ones.iter().copied().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stack(l: &[u32]) -> Polyomino {
        Polyomino::from_row_spec(&RowSpec::new(l.to_vec())).unwrap()
    }

    fn filling(p: &Polyomino, ones: &[(u32, u32)]) -> Filling {
        Filling::new(p.clone(), ones.iter().map(|&(r, c)| Pos::new(r, c)).collect()).unwrap()
    }

    #[test]
    fn row_spec_construction() {
        assert_eq!(stack(&[2, 3, 5, 6, 6, 4, 1]).len(), 27);
        assert_eq!(stack(&[1]).len(), 1);
        assert!(stack(&[3, 4, 5, 4, 2]).is_stack());
        assert_eq!(Polyomino::from_row_spec(&RowSpec::new(vec![2, 1, 2])), Err(Error::NotStack));
    }

    #[test]
    fn classification() {
        let tags = stack(&[2, 3, 5, 6, 6, 4, 1]).classify();
        assert!(tags.contains(&ClassTag::Stack) && !tags.contains(&ClassTag::FerrersFrench));
        assert!(stack(&[3, 2, 2, 1]).is_ferrers_french());
        let l_shape = Polyomino::from_cells([Pos::new(1, 1), Pos::new(1, 2), Pos::new(2, 2)]).unwrap();
        let tags = l_shape.classify();
        assert!(tags.contains(&ClassTag::Moon) && !tags.contains(&ClassTag::Stack));
    }

    #[test]
    fn maximal_rectangles_small() {
        assert_eq!(Polyomino::rectangle(2, 2).maximal_rectangles().len(), 1);
        let mut r = stack(&[1, 2]).maximal_rectangles();
        r.sort();
        assert_eq!(
            r,
            vec![
                Rect { row_lo: 1, row_hi: 2, col_lo: 1, col_hi: 1 },
                Rect { row_lo: 2, row_hi: 2, col_lo: 1, col_hi: 2 },
            ]
        );
        let rects = stack(&[3, 4, 5, 4, 2]).maximal_rectangles();
        let mut bottom: Vec<(u32, u32)> =
            rects.iter().filter(|r| r.row_lo == 1).map(|r| (r.width(), r.height())).collect();
        bottom.sort();
        assert_eq!(bottom, vec![(2, 5), (3, 4)]);
        assert_eq!(rects.len(), 4);
    }

    #[test]
    fn chain_stats_small() {
        let sq = Polyomino::rectangle(2, 2);
        assert_eq!(chain_stats(&filling(&sq, &[(1, 1), (2, 2)])), ChainStats { n: 2, ne: 2, se: 1 });
        assert_eq!(chain_stats(&filling(&sq, &[(2, 1)])), ChainStats { n: 1, ne: 1, se: 1 });
        assert_eq!(chain_stats(&Filling::empty(sq)), ChainStats { n: 0, ne: 0, se: 0 });
        // The rectangle spanned by the two ones leaves the shape, so they form no chain.
        let l = Polyomino::from_cells([Pos::new(1, 1), Pos::new(2, 1), Pos::new(1, 2)]).unwrap();
        let f = filling(&l, &[(2, 1), (1, 2)]);
        assert_eq!(chain_stats(&f), ChainStats { n: 2, ne: 1, se: 1 });
    }

    #[test]
    fn enumeration_and_polynomials() {
        let cell = Polyomino::rectangle(1, 1);
        assert_eq!(enumerate_fillings(&cell, &Mode::All).len(), 2);
        assert_eq!(gen_poly(&cell, &Mode::All), GenPoly::from_terms(&[(0, 0, 1), (1, 1, 1)]));
        let sq = Polyomino::rectangle(2, 2);
        assert_eq!(enumerate_fillings(&sq, &Mode::All).len(), 9);
        assert_eq!(gen_poly(&sq, &Mode::All), GenPoly::from_terms(&[(0, 0, 1), (1, 1, 6), (2, 1, 1), (1, 2, 1)]));
        assert_eq!(count(&cell, 1, 1, 1), 1);
        assert_eq!(count(&cell, 0, 0, 0), 1);
    }

    #[test]
    fn shards_partition_the_enumeration() {
        let p = stack(&[2, 3, 4, 2]);
        let whole = gen_poly_shard(&p, &Mode::All, Shard::WHOLE);
        for count in [1, 2, 3, 7, 50, 1000] {
            let mut merged = GenPoly::default();
            for index in 0..count {
                merged.merge(&gen_poly_shard(&p, &Mode::All, Shard { index, count }));
            }
            assert_eq!(merged, whole, "shards = {count}");
        }
    }

    #[test]
    fn mode_parsing_and_json() {
        assert_eq!("n=7".parse::<Mode>().unwrap(), Mode::FixedN(7));
        assert_eq!("rowsums=4,1,1,1".parse::<Mode>().unwrap(), Mode::RowSums(vec![4, 1, 1, 1]));
        assert_eq!("cover".parse::<Mode>().unwrap().to_string(), "cover");
        let p = GenPoly::from_terms(&[(1, 2, 3), (0, 0, 1)]);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"[{"ne":0,"se":0,"count":1},{"ne":1,"se":2,"count":3}]"#);
        assert_eq!(serde_json::from_str::<GenPoly>(&j).unwrap(), p);
        let s: ShapeFile = serde_json::from_str(r#"{"kind":"rowspec","lengths":[1,2]}"#).unwrap();
        assert_eq!(s.to_polyomino().unwrap(), stack(&[1, 2]));
    }
}
