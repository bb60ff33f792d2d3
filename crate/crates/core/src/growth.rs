//! Hecke growth diagrams: local rules on squares, diagram construction from a 0/1 grid,
//! reconstruction from the top-right border, and extraction of (P, Q).
//!
//! Grid coordinates are Cartesian: square `(col, row)` has row 1 at the bottom. The corner
//! `(i, j)` is the lattice point at the top-right of square `(i, j)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckePair;
use crate::tableau::{IncreasingTableau, Partition, SetValuedTableau, Word};

/// 0/1 matrix with at most one mark per column. Marks are `(row, col)`, row 1 at the bottom.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryGrid {
    pub rows: u32,
    pub cols: u32,
    pub marks: BTreeSet<(u32, u32)>,
}

impl BinaryGrid {
    pub fn new(rows: u32, cols: u32, marks: BTreeSet<(u32, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(r, c) in &marks {
            if r == 0 || c == 0 || r > rows || c > cols {
                return Err(Error::InvalidFilling(format!("mark ({r},{c}) outside {rows}x{cols}")));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidFilling(format!("two marks in column {c}")));
            }
        }
        Ok(BinaryGrid { rows, cols, marks })
    }

    /// Row of the mark in column `c`, if any.
    pub fn mark_in_column(&self, c: u32) -> Option<u32> {
        self.marks.iter().find(|&&(_, col)| col == c).map(|&(r, _)| r)
    }

    /// The word read column by column, skipping empty columns.
    pub fn word(&self) -> Word {
        let mut by_col: Vec<(u32, u32)> = self.marks.iter().map(|&(r, c)| (c, r)).collect();
        by_col.sort_unstable();
        Word(by_col.into_iter().map(|(_, r)| r).collect())
    }
}

/// Matrix representation of a word: the mark of column j sits in row `w_j`.
pub fn matrix_rep(w: &Word) -> BinaryGrid {
    BinaryGrid {
        rows: w.max_letter(),
        cols: w.len() as u32,
        marks: w.letters().iter().enumerate().map(|(j, &r)| (r, j as u32 + 1)).collect(),
    }
}

/// The three known corners of a square, its bottom edge label, and whether it holds an X.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareConfig {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub bottom_label: Option<u32>,
    pub has_x: bool,
}

/// Row of the topmost removable corner.
fn highest_corner_row(p: &Partition) -> Option<u32> {
    p.corners().first().map(|c| c.row)
}

fn one_box_row(outer: &Partition, inner: &Partition) -> Option<usize> {
    if outer.size() != inner.size() + 1 || !outer.contains(inner) {
        return None;
    }
    outer.diff_rows(inner).first().copied()
}

fn bad(msg: &str, sq: &SquareConfig) -> Error {
    Error::InconsistentSquare(format!(
        "{msg}: lambda={} mu={} nu={} label={:?} x={}",
        sq.lambda, sq.mu, sq.nu, sq.bottom_label, sq.has_x
    ))
}

/// Applies the forward local rules, returning `gamma` and the label of the top edge.
pub fn forward_square(sq: &SquareConfig) -> Result<(Partition, Option<u32>)> {
    let SquareConfig { lambda, mu, nu, bottom_label, has_x } = sq;
    if !mu.contains(lambda) || !nu.contains(lambda) || nu.size() > lambda.size() + 1 {
        return Err(bad("corners out of order", sq));
    }
    if bottom_label.is_some() && nu != lambda {
        return Err(bad("label on a growing edge", sq));
    }
    if *has_x {
        if nu != lambda || bottom_label.is_some() {
            return Err(bad("X above a nonempty column segment", sq));
        }
        if mu.row(1) == nu.row(1) {
            let gamma = mu.add_box(1).expect("row 1 can always grow");
            return Ok((gamma, None));
        }
        return Ok((mu.clone(), highest_corner_row(mu)));
    }
    if mu == lambda {
        return Ok((nu.clone(), *bottom_label));
    }
    if nu == lambda && bottom_label.is_none() {
        return Ok((mu.clone(), None));
    }
    if !mu.contains(nu) {
        return Ok((mu.union(nu), None));
    }
    if let Some(i) = one_box_row(nu, lambda) {
        if mu.row(i + 1) == nu.row(i + 1) {
            let gamma = mu.add_box(i + 1).ok_or_else(|| bad("cannot add a box below", sq))?;
            return Ok((gamma, None));
        }
        return Ok((mu.clone(), Some(i as u32 + 1)));
    }
    let Some(i) = *bottom_label else {
        return Err(bad("no rule applies", sq));
    };
    let i = i as usize;
    let corner_col = nu.row(i);
    if corner_col == 0 || nu.row(i + 1) >= corner_col {
        return Err(bad("label does not name a corner", sq));
    }
    let right = mu.row(i) > corner_col;
    let below = mu.row(i + 1) >= corner_col;
    let row_below = mu.row(i + 1) > nu.row(i + 1);
    if below {
        return Ok((mu.clone(), Some(i as u32 + 1)));
    }
    if !right {
        return Ok((mu.clone(), Some(i as u32)));
    }
    if !row_below {
        let gamma = mu.add_box(i + 1).ok_or_else(|| bad("cannot add a box below", sq))?;
        return Ok((gamma, None));
    }
    Ok((mu.clone(), Some(i as u32 + 1)))
}

/// Every box of `mu / lambda` must be a removable corner of `mu`.
fn vertical_step_ok(lambda: &Partition, mu: &Partition) -> bool {
    mu.contains(lambda)
        && mu.diff_rows(lambda).into_iter().all(|i| mu.row(i) == lambda.row(i) + 1 && mu.row(i + 1) < mu.row(i))
}

/// Inverts the forward rules: the unique `(lambda, bottom_label, has_x)` reproducing `(gamma, top_label)`.
pub fn backward_square(
    gamma: &Partition,
    mu: &Partition,
    nu: &Partition,
    top_label: Option<u32>,
) -> Result<SquareConfig> {
    let mut lambdas = vec![nu.clone()];
    for c in nu.corners() {
        lambdas.push(nu.remove_box(c.row as usize).expect("corner is removable"));
    }
    let mut found: Vec<SquareConfig> = Vec::new();
    for lambda in lambdas {
        if !vertical_step_ok(&lambda, mu) {
            continue;
        }
        let mut labels = vec![None];
        if lambda == *nu {
            labels.extend(nu.corners().into_iter().map(|c| Some(c.row)));
        }
        for &bottom_label in &labels {
            for has_x in [false, true] {
                let sq = SquareConfig { lambda: lambda.clone(), mu: mu.clone(), nu: nu.clone(), bottom_label, has_x };
                if let Ok((g, t)) = forward_square(&sq) {
                    if g == *gamma && t == top_label {
                        found.push(sq);
                    }
                }
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => {
            Err(Error::InconsistentSquare(format!("no preimage for gamma={gamma} mu={mu} nu={nu} label={top_label:?}")))
        }
        k => Err(Error::InconsistentSquare(format!(
            "{k} preimages for gamma={gamma} mu={mu} nu={nu} label={top_label:?}"
        ))),
    }
}

/// Growth diagram over a region whose columns of squares have weakly decreasing heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthDiagram {
    heights: Vec<u32>,
    rows: u32,
    corners: Vec<Vec<Partition>>,
    labels: BTreeMap<(u32, u32), u32>,
    marks: BTreeSet<(u32, u32)>,
}

/// Corners along the top-right border, read from the bottom-right end to the top-left end,
/// plus the labels of the top edges of each column's topmost square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Border {
    pub heights: Vec<u32>,
    pub rows: u32,
    pub path: Vec<((u32, u32), Partition)>,
    pub labels: BTreeMap<u32, u32>,
}

fn corner_height(heights: &[u32], rows: u32, i: usize) -> u32 {
    if i == 0 {
        rows
    } else {
        heights[i - 1]
    }
}

fn check_region(heights: &[u32], rows: u32) -> Result<()> {
    if heights.windows(2).any(|w| w[0] < w[1]) || heights.first().is_some_and(|&h| h > rows) {
        return Err(Error::InvalidFilling("column heights must weakly decrease".into()));
    }
    Ok(())
}

/// Lattice points of the top-right border, from `(cols, 0)` to `(0, rows)`.
pub fn border_points(heights: &[u32], rows: u32) -> Vec<(u32, u32)> {
    let cols = heights.len();
    let mut pts = Vec::new();
    let mut h = if cols == 0 { 0 } else { heights[cols - 1] };
    for j in 0..=h {
        pts.push((cols as u32, j));
    }
    for c in (1..=cols).rev() {
        pts.push((c as u32 - 1, h));
        let next = corner_height(heights, rows, c - 1);
        for j in h + 1..=next {
            pts.push((c as u32 - 1, j));
        }
        h = next;
    }
    if cols == 0 {
        pts = (0..=rows).map(|j| (0, j)).collect();
    }
    pts
}

impl GrowthDiagram {
    /// Builds the diagram square by square: bottom row of squares first, left to right.
    /// `marks` are squares `(col, row)` holding an X.
    pub fn build(heights: &[u32], rows: u32, marks: &BTreeSet<(u32, u32)>) -> Result<Self> {
        check_region(heights, rows)?;
        let cols = heights.len();
        let mut corners: Vec<Vec<Partition>> =
            (0..=cols).map(|i| vec![Partition::empty(); corner_height(heights, rows, i) as usize + 1]).collect();
        let mut labels = BTreeMap::new();
        for &(c, r) in marks {
            if c == 0 || c as usize > cols || r == 0 || r > heights[c as usize - 1] {
                return Err(Error::InvalidFilling(format!("X at ({c},{r}) outside the region")));
            }
        }
        for r in 1..=rows {
            for c in 1..=cols {
                if heights[c - 1] < r {
                    break;
                }
                let ru = r as usize;
                let sq = SquareConfig {
                    lambda: corners[c - 1][ru - 1].clone(),
                    mu: corners[c - 1][ru].clone(),
                    nu: corners[c][ru - 1].clone(),
                    bottom_label: labels.get(&(c as u32, r - 1)).copied(),
                    has_x: marks.contains(&(c as u32, r)),
                };
                let (gamma, top) = forward_square(&sq)?;
                corners[c][ru] = gamma;
                if let Some(l) = top {
                    labels.insert((c as u32, r), l);
                }
            }
        }
        Ok(GrowthDiagram { heights: heights.to_vec(), rows, corners, labels, marks: marks.clone() })
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.heights.len() as u32
    }

    pub fn corner(&self, i: u32, j: u32) -> &Partition {
        &self.corners[i as usize][j as usize]
    }

    /// Label on the top edge of square `(col, row)`.
    pub fn label(&self, col: u32, row: u32) -> Option<u32> {
        self.labels.get(&(col, row)).copied()
    }

    pub fn labels(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.labels
    }

    /// Squares `(col, row)` holding an X.
    pub fn marks(&self) -> &BTreeSet<(u32, u32)> {
        &self.marks
    }

    /// Every square of the diagram as a forward configuration, bottom row first.
    pub fn squares(&self) -> Vec<SquareConfig> {
        let mut out = Vec::new();
        for r in 1..=self.rows {
            for c in 1..=self.cols() {
                if self.heights[c as usize - 1] < r {
                    break;
                }
                out.push(SquareConfig {
                    lambda: self.corner(c - 1, r - 1).clone(),
                    mu: self.corner(c - 1, r).clone(),
                    nu: self.corner(c, r - 1).clone(),
                    bottom_label: self.label(c, r - 1),
                    has_x: self.marks.contains(&(c, r)),
                });
            }
        }
        out
    }

    pub fn border(&self) -> Border {
        let path = border_points(&self.heights, self.rows)
            .into_iter()
            .map(|(i, j)| ((i, j), self.corner(i, j).clone()))
            .collect();
        let labels =
            (1..=self.cols()).filter_map(|c| self.label(c, self.heights[c as usize - 1]).map(|l| (c, l))).collect();
        Border { heights: self.heights.clone(), rows: self.rows, path, labels }
    }

    /// Rebuilds the diagram from its top-right border with the backward rules, sweeping
    /// squares right to left within each row, top row first.
    pub fn from_border(border: &Border) -> Result<Self> {
        let heights = &border.heights;
        let rows = border.rows;
        check_region(heights, rows)?;
        let cols = heights.len();
        let expected = border_points(heights, rows);
        let pts: Vec<(u32, u32)> = border.path.iter().map(|(p, _)| *p).collect();
        if pts != expected {
            return Err(Error::InconsistentSquare("border path does not match the region".into()));
        }
        let mut corners: Vec<Vec<Option<Partition>>> =
            (0..=cols).map(|i| vec![None; corner_height(heights, rows, i) as usize + 1]).collect();
        for ((i, j), p) in &border.path {
            corners[*i as usize][*j as usize] = Some(p.clone());
        }
        let mut labels: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for (&c, &l) in &border.labels {
            if c == 0 || c as usize > cols {
                return Err(Error::InconsistentSquare(format!("label on missing column {c}")));
            }
            labels.insert((c, heights[c as usize - 1]), l);
        }
        let mut marks = BTreeSet::new();
        for r in (1..=rows).rev() {
            for c in (1..=cols).rev() {
                if heights[c - 1] < r {
                    continue;
                }
                let ru = r as usize;
                let get = |corners: &Vec<Vec<Option<Partition>>>, i: usize, j: usize| {
                    corners[i][j]
                        .clone()
                        .ok_or_else(|| Error::InconsistentSquare(format!("corner ({i},{j}) unknown during sweep")))
                };
                let gamma = get(&corners, c, ru)?;
                let mu = get(&corners, c - 1, ru)?;
                let nu = get(&corners, c, ru - 1)?;
                let sq = backward_square(&gamma, &mu, &nu, labels.get(&(c as u32, r)).copied())?;
                let slot = &mut corners[c - 1][ru - 1];
                match slot {
                    Some(existing) if *existing != sq.lambda => {
                        return Err(Error::InconsistentSquare(format!(
                            "corner ({},{}) reconstructed as {} but already {}",
                            c - 1,
                            r - 1,
                            sq.lambda,
                            existing
                        )))
                    }
                    _ => *slot = Some(sq.lambda.clone()),
                }
                if let Some(l) = sq.bottom_label {
                    if r == 1 {
                        return Err(Error::InconsistentSquare("label on the bottom border".into()));
                    }
                    labels.insert((c as u32, r - 1), l);
                }
                if sq.has_x {
                    marks.insert((c as u32, r));
                }
            }
        }
        let mut full = Vec::with_capacity(cols + 1);
        for (i, col) in corners.into_iter().enumerate() {
            let mut v = Vec::with_capacity(col.len());
            for (j, p) in col.into_iter().enumerate() {
                let p = p.unwrap_or_default();
                if (i == 0 || j == 0) && !p.is_empty() {
                    return Err(Error::InconsistentSquare(format!("nonempty corner ({i},{j}) on the base")));
                }
                v.push(p);
            }
            full.push(v);
        }
        let d = GrowthDiagram { heights: heights.clone(), rows, corners: full, labels, marks };
        let rebuilt = GrowthDiagram::build(&d.heights, d.rows, &d.marks)?;
        if rebuilt != d {
            return Err(Error::InconsistentSquare("reconstruction does not rebuild forward".into()));
        }
        Ok(d)
    }

    /// Canonical JSON: corners as a matrix of partition strings (column-major) plus labels.
    pub fn to_json(&self) -> serde_json::Value {
        let corners: Vec<Vec<String>> =
            self.corners.iter().map(|col| col.iter().map(|p| p.to_string()).collect()).collect();
        let labels: Vec<serde_json::Value> =
            self.labels.iter().map(|(&(c, r), &l)| serde_json::json!({"col": c, "row": r, "label": l})).collect();
        let marks: Vec<(u32, u32)> = self.marks.iter().map(|&(c, r)| (r, c)).collect();
        serde_json::json!({
            "heights": self.heights,
            "rows": self.rows,
            "corners": corners,
            "labels": labels,
            "marks": marks,
        })
    }

    /// Plain-text picture, top row of corners first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for j in (0..=self.rows).rev() {
            for i in 0..=self.cols() {
                if corner_height(&self.heights, self.rows, i as usize) >= j {
                    let _ = write!(out, "{:>8}", self.corner(i, j).to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn build_growth(grid: &BinaryGrid) -> Result<GrowthDiagram> {
    let heights = vec![grid.rows; grid.cols as usize];
    let marks = grid.marks.iter().map(|&(r, c)| (c, r)).collect();
    GrowthDiagram::build(&heights, grid.rows, &marks)
}

/// Reads P off the right border and Q off the top border of a rectangular diagram.
pub fn extract_pq(d: &GrowthDiagram) -> HeckePair {
    let (cols, rows) = (d.cols(), d.rows());
    let mut p: Vec<Vec<u32>> = Vec::new();
    for j in 1..=rows {
        let (prev, cur) = (d.corner(cols, j - 1), d.corner(cols, j));
        for i in cur.diff_rows(prev) {
            if p.len() < i {
                p.resize(i, Vec::new());
            }
            while (p[i - 1].len() as u32) < cur.row(i) {
                p[i - 1].push(j);
            }
        }
    }
    let mut q: Vec<Vec<Vec<u32>>> = Vec::new();
    for i in 1..=cols {
        let (prev, cur) = (d.corner(i - 1, rows), d.corner(i, rows));
        if let Some(&r) = cur.diff_rows(prev).first() {
            if q.len() < r {
                q.resize(r, Vec::new());
            }
            q[r - 1].push(vec![i]);
        } else if let Some(c) = d.label(i, rows) {
            q[c as usize - 1].last_mut().expect("labelled row is nonempty").push(i);
        }
    }
    HeckePair { p: IncreasingTableau::from_rows_unchecked(p), q: SetValuedTableau::from_rows_unchecked(q) }
}

/// Rectangular-diagram border: the top edge (left to right) and right edge (bottom to top),
/// given as corner chains plus top-edge labels per column.
pub fn borders(d: &GrowthDiagram) -> Border {
    d.border()
}

/// Reconstructs the 0/1 grid of a rectangular diagram from its border.
pub fn unbuild_growth(border: &Border) -> Result<BinaryGrid> {
    let d = GrowthDiagram::from_border(border)?;
    let marks = d.marks().iter().map(|&(c, r)| (r, c)).collect();
    BinaryGrid::new(d.rows(), d.cols(), marks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::insert_word;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn sq(l: &[u32], m: &[u32], n: &[u32], label: Option<u32>, x: bool) -> SquareConfig {
        SquareConfig { lambda: p(l), mu: p(m), nu: p(n), bottom_label: label, has_x: x }
    }

    #[test]
    fn matrix_representation() {
        let g = matrix_rep(&"213312".parse().unwrap());
        let marks: BTreeSet<(u32, u32)> = [(2, 1), (1, 2), (3, 3), (3, 4), (1, 5), (2, 6)].into_iter().collect();
        assert_eq!((g.rows, g.cols), (3, 6));
        assert_eq!(g.marks, marks);
        assert_eq!(matrix_rep(&Word::default()), BinaryGrid::default());
        let g = matrix_rep(&Word(vec![1, 1, 1]));
        assert_eq!((g.rows, g.cols, g.marks.len()), (1, 3, 3));
    }

    #[test]
    fn forward_rule_examples() {
        assert_eq!(forward_square(&sq(&[], &[], &[], None, true)).unwrap(), (p(&[1]), None));
        assert_eq!(forward_square(&sq(&[1, 1], &[2, 1], &[1, 1], None, true)).unwrap(), (p(&[2, 1]), Some(1)));
        assert_eq!(forward_square(&sq(&[1, 1], &[1, 1], &[1, 1], None, true)).unwrap(), (p(&[2, 1]), None));
        assert!(forward_square(&sq(&[1], &[], &[1], None, false)).is_err());
    }

    #[test]
    fn backward_rule_examples() {
        let s = backward_square(&p(&[1]), &p(&[]), &p(&[]), None).unwrap();
        assert_eq!(s, sq(&[], &[], &[], None, true));
        let s = backward_square(&p(&[2, 1]), &p(&[2, 1]), &p(&[1, 1]), Some(1)).unwrap();
        assert_eq!(s, sq(&[1, 1], &[2, 1], &[1, 1], None, true));
    }

    #[test]
    fn small_word_diagram() {
        let w: Word = "213312".parse().unwrap();
        let d = build_growth(&matrix_rep(&w)).unwrap();
        assert_eq!(d.corner(6, 3), &p(&[2, 2]));
        let right: Vec<Partition> = (0..=3).map(|j| d.corner(6, j).clone()).collect();
        assert_eq!(right, vec![p(&[]), p(&[1]), p(&[2, 1]), p(&[2, 2])]);
        assert_eq!(extract_pq(&d), insert_word(&w));
        assert_eq!(unbuild_growth(&d.border()).unwrap(), matrix_rep(&w));
    }

    #[test]
    fn empty_diagram() {
        let d = build_growth(&BinaryGrid::default()).unwrap();
        assert_eq!(d.corner(0, 0), &Partition::empty());
        assert_eq!(extract_pq(&d), HeckePair::default());
        assert_eq!(unbuild_growth(&d.border()).unwrap(), BinaryGrid::default());
        let blank = GrowthDiagram::build(&[3, 3], 3, &BTreeSet::new()).unwrap();
        let g = unbuild_growth(&blank.border()).unwrap();
        assert!(g.marks.is_empty());
    }

    #[test]
    fn border_points_of_staircase() {
        let pts = border_points(&[3, 2, 1], 3);
        assert_eq!(pts, vec![(3, 0), (3, 1), (2, 1), (2, 2), (1, 2), (1, 3), (0, 3)]);
        let pts = border_points(&[2, 2], 2);
        assert_eq!(pts, vec![(2, 0), (2, 1), (2, 2), (1, 2), (0, 2)]);
    }
}
