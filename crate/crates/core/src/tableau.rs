//! Partitions, increasing tableaux (straight and skew), set-valued tableaux and words.
//!
//! Tableaux use English orientation: row 1 is the top row, column 1 the leftmost.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts. The empty partition is allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Drops trailing zeros before validating.
    pub fn from_lengths(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Length of row `i` (1-based); 0 beyond the last row. Row 0 counts as unbounded so that
    /// "the row above is long enough" checks need no special case.
    pub fn row(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn num_cols(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && self.row(c.row as usize) >= c.col
    }

    pub fn transpose(&self) -> Partition {
        let w = self.num_cols();
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }

    /// Removable corners, top row first.
    pub fn corners(&self) -> Vec<Cell> {
        (1..=self.0.len())
            .filter(|&i| self.row(i) > self.row(i + 1))
            .map(|i| Cell::new(i as u32, self.row(i)))
            .collect()
    }

    /// Cells that can be added while keeping a partition shape, top row first.
    pub fn addable(&self) -> Vec<Cell> {
        (1..=self.0.len() + 1)
            .filter(|&i| i == 1 || self.row(i - 1) > self.row(i))
            .map(|i| Cell::new(i as u32, self.row(i) + 1))
            .collect()
    }

    /// Adds a box at the end of row `i`; `None` if the result is not a partition.
    pub fn add_box(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.0.len() + 1 || (i > 1 && self.row(i - 1) <= self.row(i)) {
            return None;
        }
        let mut p = self.0.clone();
        if i == p.len() + 1 {
            p.push(1);
        } else {
            p[i - 1] += 1;
        }
        Some(Partition(p))
    }

    /// Removes the last box of row `i`; `None` if that box is not a corner.
    pub fn remove_box(&self, i: usize) -> Option<Partition> {
        if i == 0 || i > self.0.len() || self.row(i) == self.row(i + 1) {
            return None;
        }
        let mut p = self.0.clone();
        p[i - 1] -= 1;
        if p[i - 1] == 0 {
            p.pop();
        }
        Some(Partition(p))
    }

    /// Componentwise maximum.
    pub fn union(&self, other: &Partition) -> Partition {
        let n = self.0.len().max(other.0.len());
        Partition((1..=n).map(|i| self.row(i).max(other.row(i))).collect())
    }

    /// Rows in which `self` has more boxes than `inner`.
    pub fn diff_rows(&self, inner: &Partition) -> Vec<usize> {
        (1..=self.0.len()).filter(|&i| self.row(i) > inner.row(i)).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |c| Cell::new(i as u32 + 1, c)))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Box of a tableau: `row` 1 is the top row, `col` 1 the leftmost column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub const fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }
}

impl From<(u32, u32)> for Cell {
    fn from((row, col): (u32, u32)) -> Self {
        Cell { row, col }
    }
}

impl From<Cell> for (u32, u32) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

/// First violated invariant found by a validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cell: Cell,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}): {}", self.cell.row, self.cell.col, self.reason)
    }
}

fn shape_violation(lengths: &[usize]) -> Option<Violation> {
    for (i, w) in lengths.windows(2).enumerate() {
        if w[1] > w[0] {
            return Some(Violation {
                cell: Cell::new(i as u32 + 2, w[0] as u32 + 1),
                reason: "rows do not form a partition shape".into(),
            });
        }
    }
    lengths
        .iter()
        .position(|&l| l == 0)
        .map(|i| Violation { cell: Cell::new(i as u32 + 1, 1), reason: "empty row".into() })
}

/// Straight-shape tableau whose entries strictly increase along rows and down columns.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct IncreasingTableau {
    rows: Vec<Vec<u32>>,
}

impl IncreasingTableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = IncreasingTableau { rows };
        match t.validate() {
            Ok(()) => Ok(t),
            Err(v) => Err(Error::InvalidTableau(v.to_string())),
        }
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        IncreasingTableau { rows }
    }

    pub fn empty() -> Self {
        IncreasingTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn get(&self, c: Cell) -> Option<u32> {
        if c.row == 0 || c.col == 0 {
            return None;
        }
        self.rows.get(c.row as usize - 1)?.get(c.col as usize - 1).copied()
    }

    pub fn max_entry(&self) -> Option<u32> {
        self.rows.iter().flatten().copied().max()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Cell, u32)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (Cell::new(i as u32 + 1, j as u32 + 1), v)))
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let lengths: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        if let Some(v) = shape_violation(&lengths) {
            return Err(v);
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let cell = Cell::new(i as u32 + 1, j as u32 + 1);
                if v == 0 {
                    return Err(Violation { cell, reason: "entry must be positive".into() });
                }
                if j > 0 && row[j - 1] >= v {
                    return Err(Violation { cell, reason: "row not strictly increasing".into() });
                }
                if i > 0 && self.rows[i - 1][j] >= v {
                    return Err(Violation { cell, reason: "column not strictly increasing".into() });
                }
            }
        }
        Ok(())
    }

    pub fn reading_word(&self) -> Word {
        Word(self.rows.iter().rev().flatten().copied().collect())
    }
}

impl TryFrom<Vec<Vec<u32>>> for IncreasingTableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        IncreasingTableau::from_rows(rows)
    }
}

impl From<IncreasingTableau> for Vec<Vec<u32>> {
    fn from(t: IncreasingTableau) -> Self {
        t.rows
    }
}

/// Increasing tableau of skew shape `outer / inner`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewIncreasingTableau {
    pub outer: Partition,
    pub inner: Partition,
    #[serde(with = "cell_map")]
    pub entries: BTreeMap<Cell, u32>,
}

mod cell_map {
    use super::Cell;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<Cell, u32>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(u32, u32, u32)> = m.iter().map(|(c, &x)| (c.row, c.col, x)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Cell, u32>, D::Error> {
        let v: Vec<(u32, u32, u32)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(r, c, x)| (Cell::new(r, c), x)).collect())
    }
}

impl SkewIncreasingTableau {
    pub fn new(outer: Partition, inner: Partition, entries: BTreeMap<Cell, u32>) -> Result<Self> {
        let t = SkewIncreasingTableau { outer, inner, entries };
        match t.validate() {
            Ok(()) => Ok(t),
            Err(v) => Err(Error::InvalidTableau(v.to_string())),
        }
    }

    pub fn from_straight(t: &IncreasingTableau) -> Self {
        SkewIncreasingTableau { outer: t.shape(), inner: Partition::empty(), entries: t.entries().collect() }
    }

    /// Converts back to a straight tableau when the inner shape is empty.
    pub fn to_straight(&self) -> Option<IncreasingTableau> {
        if !self.inner.is_empty() {
            return None;
        }
        let rows = self
            .outer
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| (1..=p).map(|c| self.entries[&Cell::new(i as u32 + 1, c)]).collect())
            .collect();
        Some(IncreasingTableau::from_rows_unchecked(rows))
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if !self.outer.contains(&self.inner) {
            return Err(Violation { cell: Cell::new(1, 1), reason: "inner shape not inside outer".into() });
        }
        let expected: BTreeSet<Cell> = self.outer.cells().filter(|&c| !self.inner.contains_cell(c)).collect();
        for &c in self.entries.keys() {
            if !expected.contains(&c) {
                return Err(Violation { cell: c, reason: "entry outside the skew shape".into() });
            }
        }
        for &c in &expected {
            let Some(&v) = self.entries.get(&c) else {
                return Err(Violation { cell: c, reason: "missing entry".into() });
            };
            if v == 0 {
                return Err(Violation { cell: c, reason: "entry must be positive".into() });
            }
            if let Some(&l) = self.entries.get(&Cell::new(c.row, c.col - 1)) {
                if l >= v {
                    return Err(Violation { cell: c, reason: "row not strictly increasing".into() });
                }
            }
            if c.row > 1 {
                if let Some(&a) = self.entries.get(&Cell::new(c.row - 1, c.col)) {
                    if a >= v {
                        return Err(Violation { cell: c, reason: "column not strictly increasing".into() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn reading_word(&self) -> Word {
        let mut rows: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (c, &v) in &self.entries {
            rows.entry(c.row).or_default().push((c.col, v));
        }
        Word(rows.into_values().rev().flat_map(|r| r.into_iter().map(|(_, v)| v)).collect())
    }
}

/// Tableau whose boxes hold nonempty sets; the largest entry of a box is smaller than the
/// smallest entry of the boxes to its right and below.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vec<u32>>>", into = "Vec<Vec<Vec<u32>>>")]
pub struct SetValuedTableau {
    rows: Vec<Vec<Vec<u32>>>,
}

impl SetValuedTableau {
    pub fn from_rows(mut rows: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        for s in rows.iter_mut().flatten() {
            s.sort_unstable();
        }
        let t = SetValuedTableau { rows };
        match t.validate() {
            Ok(()) => Ok(t),
            Err(v) => Err(Error::InvalidTableau(v.to_string())),
        }
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<Vec<u32>>>) -> Self {
        SetValuedTableau { rows }
    }

    pub fn empty() -> Self {
        SetValuedTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<Vec<u32>>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn get(&self, c: Cell) -> Option<&[u32]> {
        if c.row == 0 || c.col == 0 {
            return None;
        }
        self.rows.get(c.row as usize - 1)?.get(c.col as usize - 1).map(|v| v.as_slice())
    }

    /// Total number of entries over all boxes.
    pub fn num_entries(&self) -> usize {
        self.rows.iter().flatten().map(|s| s.len()).sum()
    }

    /// Box containing `k`, if any.
    pub fn find(&self, k: u32) -> Option<Cell> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.iter().position(|s| s.contains(&k)).map(|j| Cell::new(i as u32 + 1, j as u32 + 1)))
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let lengths: Vec<usize> = self.rows.iter().map(|r| r.len()).collect();
        if let Some(v) = shape_violation(&lengths) {
            return Err(v);
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (j, set) in row.iter().enumerate() {
                let cell = Cell::new(i as u32 + 1, j as u32 + 1);
                if set.is_empty() {
                    return Err(Violation { cell, reason: "empty set".into() });
                }
                if set.windows(2).any(|w| w[0] >= w[1]) || set[0] == 0 {
                    return Err(Violation { cell, reason: "set not sorted or has repeats".into() });
                }
                if j > 0 && *row[j - 1].last().unwrap() >= set[0] {
                    return Err(Violation { cell, reason: "row not strictly increasing".into() });
                }
                if i > 0 && *self.rows[i - 1][j].last().unwrap() >= set[0] {
                    return Err(Violation { cell, reason: "column not strictly increasing".into() });
                }
            }
        }
        Ok(())
    }

    /// Checks that the entries are exactly 1..=n, each once.
    pub fn is_standard(&self) -> bool {
        let mut all: Vec<u32> = self.rows.iter().flatten().flatten().copied().collect();
        all.sort_unstable();
        all.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }
}

impl TryFrom<Vec<Vec<Vec<u32>>>> for SetValuedTableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        SetValuedTableau::from_rows(rows)
    }
}

impl From<SetValuedTableau> for Vec<Vec<Vec<u32>>> {
    fn from(t: SetValuedTableau) -> Self {
        t.rows
    }
}

/// Finite sequence of positive letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Replaces the i-th smallest distinct letter by i.
    pub fn standardize(&self) -> Word {
        let distinct: BTreeSet<u32> = self.0.iter().copied().collect();
        let rank: BTreeMap<u32, u32> = distinct.into_iter().enumerate().map(|(i, v)| (v, i as u32 + 1)).collect();
        Word(self.0.iter().map(|v| rank[v]).collect())
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v < 10) {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", s.join(","))
        }
    }
}

/// Accepts `"32412143"` (one digit per letter) or separated forms such as `"3,2,10"` and `"3 2 10"`.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let separated = s.contains(|c: char| c == ',' || c.is_whitespace());
        let letters: Result<Vec<u32>> = if separated {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))).collect()
        };
        let letters = letters?;
        if letters.contains(&0) {
            return Err(Error::Parse("letters must be positive".into()));
        }
        Ok(Word(letters))
    }
}

pub fn reading_word(t: &IncreasingTableau) -> Word {
    t.reading_word()
}

pub fn standardize(w: &Word) -> Word {
    w.standardize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: Vec<Vec<u32>>) -> IncreasingTableau {
        IncreasingTableau::from_rows(rows).unwrap()
    }

    #[test]
    fn reading_word_goes_bottom_up() {
        let p = t(vec![vec![1, 2, 3], vec![2, 4], vec![3]]);
        assert_eq!(p.reading_word().to_string(), "324123");
        assert!(IncreasingTableau::empty().reading_word().is_empty());
        assert_eq!(t(vec![vec![5]]).reading_word(), Word(vec![5]));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(Word(vec![3, 7, 3, 9]).standardize(), Word(vec![1, 2, 1, 3]));
        assert_eq!(Word(vec![1, 2, 3]).standardize(), Word(vec![1, 2, 3]));
        assert_eq!(Word(vec![5, 5, 5]).standardize(), Word(vec![1, 1, 1]));
        assert_eq!(Word(vec![]).standardize(), Word(vec![]));
    }

    #[test]
    fn standardize_idempotent_exhaustive() {
        for len in 0..=8u32 {
            let total = 5u32.pow(len);
            for code in 0..total {
                let mut c = code;
                let w = Word(
                    (0..len)
                        .map(|_| {
                            let d = c % 5 + 1;
                            c /= 5;
                            d
                        })
                        .collect(),
                );
                let s = w.standardize();
                assert_eq!(s.standardize(), s);
            }
        }
    }

    #[test]
    fn validate_reports_first_violation() {
        assert!(IncreasingTableau::from_rows_unchecked(vec![vec![1, 2], vec![2, 3]]).validate().is_ok());
        let v = IncreasingTableau::from_rows_unchecked(vec![vec![1, 3], vec![2, 3]]).validate().unwrap_err();
        assert_eq!(v.cell, Cell::new(2, 2));
        assert!(v.reason.contains("column"));
        let q = SetValuedTableau::from_rows(vec![vec![vec![1], vec![3, 4]], vec![vec![2, 5], vec![6]]]);
        assert!(q.is_ok());
        assert!(q.unwrap().is_standard());
        let bad = SetValuedTableau::from_rows(vec![vec![vec![1, 3], vec![2]]]);
        assert!(bad.is_err());
    }

    #[test]
    fn partition_basics() {
        let p = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(p.transpose().parts(), &[3, 1, 1]);
        assert_eq!(Partition::new(vec![2, 2]).unwrap().transpose().parts(), &[2, 2]);
        assert_eq!(p.corners(), vec![Cell::new(1, 3), Cell::new(3, 1)]);
        assert_eq!(p.addable(), vec![Cell::new(1, 4), Cell::new(2, 2), Cell::new(4, 1)]);
        assert_eq!(p.add_box(2).unwrap().parts(), &[3, 2, 1]);
        assert!(p.add_box(3).is_none());
        assert_eq!(p.remove_box(3).unwrap().parts(), &[3, 1]);
        assert!(p.remove_box(2).is_none());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1,1]");
    }

    #[test]
    fn word_parsing() {
        assert_eq!("32412143".parse::<Word>().unwrap(), Word(vec![3, 2, 4, 1, 2, 1, 4, 3]));
        assert_eq!("3,2,10".parse::<Word>().unwrap(), Word(vec![3, 2, 10]));
        assert_eq!("3 2  10".parse::<Word>().unwrap(), Word(vec![3, 2, 10]));
        assert!("302".parse::<Word>().is_err());
        assert_eq!("".parse::<Word>().unwrap(), Word(vec![]));
    }

    #[test]
    fn skew_reading_word_and_validation() {
        let mut e = BTreeMap::new();
        e.insert(Cell::new(1, 2), 2);
        e.insert(Cell::new(2, 1), 1);
        let s = SkewIncreasingTableau::new(Partition::new(vec![2, 1]).unwrap(), Partition::new(vec![1]).unwrap(), e)
            .unwrap();
        assert_eq!(s.reading_word(), Word(vec![1, 2]));
        let mut bad = s.clone();
        bad.entries.insert(Cell::new(1, 1), 4);
        assert!(bad.validate().is_err());
    }
}
