//! Linked partitions, their arc representation, crossings and nestings, the encoding as
//! fillings of the triangle, and two bijections that swap the crossing and nesting numbers.
//!
//! Triangle convention: the triangle for `[n]` is the Ferrers shape with rows of lengths
//! `n-1, n-2, ..., 1` from the bottom, and the arc `(i, j)` is the 1 in row `i` (from the
//! bottom) and column `n + 1 - j` (from the left). Crossings become se-chains and nestings
//! become ne-chains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bijection::{from_ferrers, to_ferrers};
use crate::error::{Error, Result};
use crate::growth::{Border, GrowthDiagram};
use crate::polyomino::{Filling, Polyomino, Pos};
use crate::tableau::Partition;

/// Blocks covering `[n]`, any two of them nearly disjoint. Stored sorted by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLinked", into = "RawLinked")]
pub struct LinkedPartition {
    n: u32,
    blocks: Vec<BTreeSet<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawLinked {
    n: u32,
    blocks: Vec<Vec<u32>>,
}

impl TryFrom<RawLinked> for LinkedPartition {
    type Error = Error;
    fn try_from(r: RawLinked) -> Result<Self> {
        LinkedPartition::new(r.n, r.blocks.into_iter().map(|b| b.into_iter().collect()).collect())
    }
}

impl From<LinkedPartition> for RawLinked {
    fn from(p: LinkedPartition) -> Self {
        RawLinked { n: p.n, blocks: p.blocks.into_iter().map(|b| b.into_iter().collect()).collect() }
    }
}

pub type ArcSet = BTreeSet<(u32, u32)>;

impl LinkedPartition {
    pub fn new(n: u32, mut blocks: Vec<BTreeSet<u32>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidLinkedPartition(m));
        if blocks.iter().any(|b| b.is_empty()) {
            return bad("empty block".into());
        }
        let covered: BTreeSet<u32> = blocks.iter().flatten().copied().collect();
        if covered != (1..=n).collect() {
            return bad(format!("blocks do not cover exactly 1..={n}"));
        }
        blocks.sort_by_key(|b| (*b.first().unwrap(), b.len()));
        for (a, x) in blocks.iter().enumerate() {
            for y in &blocks[a + 1..] {
                for &t in x.intersection(y) {
                    let ok = |p: &BTreeSet<u32>, q: &BTreeSet<u32>| {
                        t == *p.first().unwrap() && p.len() > 1 && t != *q.first().unwrap()
                    };
                    if !ok(x, y) && !ok(y, x) {
                        return bad(format!("blocks {} and {} are not nearly disjoint", fmt_block(x), fmt_block(y)));
                    }
                }
            }
        }
        Ok(LinkedPartition { n, blocks })
    }

    /// Rebuilds the partition from its arcs: `i` and all `j` with `(i, j)` form a block, and
    /// every other element is a singleton.
    pub fn from_arcs(n: u32, arcs: &ArcSet) -> Result<Self> {
        let mut by_min: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for &(i, j) in arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidLinkedPartition(format!("arc ({i},{j}) outside 1..={n}")));
            }
            by_min.entry(i).or_insert_with(|| [i].into_iter().collect()).insert(j);
        }
        let in_some: BTreeSet<u32> = by_min.values().flatten().copied().collect();
        let mut blocks: Vec<BTreeSet<u32>> = by_min.into_values().collect();
        blocks.extend((1..=n).filter(|t| !in_some.contains(t)).map(|t| [t].into_iter().collect()));
        LinkedPartition::new(n, blocks)
    }

    pub fn singletons(n: u32) -> Self {
        LinkedPartition { n, blocks: (1..=n).map(|t| [t].into_iter().collect()).collect() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[BTreeSet<u32>] {
        &self.blocks
    }

    /// Block `{i1 < ... < im}` contributes `(i1, i2), ..., (i1, im)`.
    pub fn standard_rep(&self) -> ArcSet {
        let mut arcs = ArcSet::new();
        for b in &self.blocks {
            let mut it = b.iter();
            let first = *it.next().unwrap();
            arcs.extend(it.map(|&j| (first, j)));
        }
        arcs
    }

    pub fn comp1(&self) -> BTreeSet<u32> {
        self.standard_rep().into_iter().map(|(i, _)| i).collect()
    }

    pub fn comp2(&self) -> BTreeSet<u32> {
        self.standard_rep().into_iter().map(|(_, j)| j).collect()
    }

    /// Largest k with k pairwise crossing arcs `i1 < ... < ik < j1 < ... < jk`.
    pub fn cross(&self) -> u32 {
        max_clique(&self.standard_rep().into_iter().collect::<Vec<_>>(), |a, b| a.0 < b.0 && b.0 < a.1 && a.1 < b.1)
    }

    /// Largest k with k pairwise nested arcs `i1 < ... < ik < jk < ... < j1`.
    pub fn nest(&self) -> u32 {
        max_clique(&self.standard_rep().into_iter().collect::<Vec<_>>(), |a, b| a.0 < b.0 && b.1 < a.1)
    }
}

fn fmt_block(b: &BTreeSet<u32>) -> String {
    let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

/// Largest set of arcs (sorted by left end) in which every earlier/later pair satisfies `rel`.
fn max_clique(arcs: &[(u32, u32)], rel: impl Fn((u32, u32), (u32, u32)) -> bool + Copy) -> u32 {
    fn grow(
        arcs: &[(u32, u32)],
        chosen: &mut Vec<(u32, u32)>,
        start: usize,
        best: &mut u32,
        rel: impl Fn((u32, u32), (u32, u32)) -> bool + Copy,
    ) {
        *best = (*best).max(chosen.len() as u32);
        if chosen.len() + (arcs.len() - start) <= *best as usize {
            return;
        }
        for k in start..arcs.len() {
            if chosen.iter().all(|&c| rel(c, arcs[k])) {
                chosen.push(arcs[k]);
                grow(arcs, chosen, k + 1, best, rel);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    grow(arcs, &mut Vec::new(), 0, &mut best, rel);
    best
}

impl fmt::Display for LinkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> =
            self.blocks.iter().map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", s.join(" | "))
    }
}

/// Blocks separated by `|`, elements by spaces or commas; `n` is the largest element.
impl FromStr for LinkedPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let b: std::result::Result<BTreeSet<u32>, _> =
                part.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::parse).collect();
            blocks.push(b.map_err(|e| Error::Parse(format!("block {part:?}: {e}")))?);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        LinkedPartition::new(n, blocks)
    }
}

/// Column heights of the triangle's squares, left to right.
fn triangle_heights(n: u32) -> Vec<u32> {
    (1..n).rev().collect()
}

/// The triangle for `[n]`: rows of lengths `n-1, ..., 1` from the bottom.
pub fn triangle(n: u32) -> Polyomino {
    Polyomino::left_justified(&triangle_heights(n))
}

/// The triangle reflected through a horizontal line: rows of lengths `1, ..., n-1`.
pub fn reversed_triangle(n: u32) -> Polyomino {
    Polyomino::left_justified(&(1..n).collect::<Vec<_>>())
}

pub fn to_triangle_filling(p: &LinkedPartition) -> Filling {
    let n = p.n;
    let ones = p.standard_rep().into_iter().map(|(i, j)| Pos::new(i, n + 1 - j)).collect();
    Filling { shape: triangle(n), ones }
}

pub fn from_triangle_filling(f: &Filling) -> Result<LinkedPartition> {
    let n = f.shape.rows().len() as u32 + 1;
    if f.shape != triangle(n) {
        return Err(Error::InvalidFilling("shape is not a triangle".into()));
    }
    f.validate()?;
    let arcs = f.ones.iter().map(|p| (p.row, n + 1 - p.col)).collect();
    LinkedPartition::from_arcs(n, &arcs)
}

/// Every linked partition of `[n]`, obtained by decoding every filling of the triangle.
pub fn all_linked_partitions(n: u32) -> Vec<LinkedPartition> {
    crate::polyomino::enumerate_fillings(&triangle(n), &crate::polyomino::Mode::All)
        .iter()
        .map(|f| from_triangle_filling(f).expect("every triangle filling decodes"))
        .collect()
}

/// Reflect the triangle filling, move rows back to the triangle with bottom-row moves, decode.
pub fn row_move_bijection(p: &LinkedPartition) -> Result<LinkedPartition> {
    let reflected = to_triangle_filling(p).reflect_horizontal();
    let (back, _) = to_ferrers(&reflected)?;
    from_triangle_filling(&back)
}

/// The alternative order: undo the move chain from the reversed triangle first, then reflect.
pub fn row_move_bijection_reversed_order(p: &LinkedPartition) -> Result<LinkedPartition> {
    let n = p.n;
    let (_, chain) = to_ferrers(&Filling::empty(reversed_triangle(n)))?;
    let up = from_ferrers(&to_triangle_filling(p), &chain)?;
    from_triangle_filling(&up.reflect_horizontal())
}

fn growth_of(p: &LinkedPartition) -> Result<GrowthDiagram> {
    let marks = p.standard_rep().into_iter().map(|(i, j)| (p.n + 1 - j, i)).collect();
    GrowthDiagram::build(&triangle_heights(p.n), p.n.saturating_sub(1), &marks)
}

/// Transpose the border of the growth diagram, relabel each marked edge by the column of its
/// marked corner, and rebuild with the backward rules.
pub fn transpose_bijection(p: &LinkedPartition) -> Result<LinkedPartition> {
    let border = growth_of(p)?.border();
    let at: BTreeMap<(u32, u32), Partition> = border.path.iter().cloned().collect();
    let labels =
        border.labels.iter().map(|(&c, &l)| (c, at[&(c, border.heights[c as usize - 1])].row(l as usize))).collect();
    let path = border.path.iter().map(|(pt, lam)| (*pt, lam.transpose())).collect();
    let flipped = Border { heights: border.heights.clone(), rows: border.rows, path, labels };
    let d = GrowthDiagram::from_border(&flipped)?;
    let n = p.n;
    let arcs = d.marks().iter().map(|&(c, r)| (r, n + 1 - c)).collect();
    LinkedPartition::from_arcs(n, &arcs)
}

/// One entry of a border reading: a partition and the row of its marked corner, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderStep {
    pub shape: Partition,
    pub marked_row: Option<u32>,
}

/// Partitions along the top-right border of the growth diagram, bottom right to top left,
/// framed by an empty partition at each end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderSequence {
    pub steps: Vec<BorderStep>,
}

impl BorderSequence {
    pub fn max_width(&self) -> u32 {
        self.steps.iter().map(|s| s.shape.num_cols()).max().unwrap_or(0)
    }

    pub fn max_height(&self) -> u32 {
        self.steps.iter().map(|s| s.shape.len() as u32).max().unwrap_or(0)
    }
}

impl fmt::Display for BorderSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .steps
            .iter()
            .map(|s| match s.marked_row {
                Some(r) => format!("{}*{}", s.shape, r),
                None => s.shape.to_string(),
            })
            .collect();
        write!(f, "{}", s.join(", "))
    }
}

/// A marked edge's label is attached to the first point of that edge in reading order.
pub fn vacillating_border(p: &LinkedPartition) -> Result<BorderSequence> {
    let border = growth_of(p)?.border();
    let mut steps = vec![BorderStep { shape: Partition::empty(), marked_row: None }];
    for ((c, r), lam) in &border.path {
        let marked_row = border.labels.get(c).filter(|_| *c > 0 && border.heights[*c as usize - 1] == *r).copied();
        steps.push(BorderStep { shape: lam.clone(), marked_row });
    }
    steps.push(BorderStep { shape: Partition::empty(), marked_row: None });
    Ok(BorderSequence { steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LinkedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!("1 3 6 | 2 5 8 | 4 | 5 9 | 6 7".parse::<LinkedPartition>().is_ok());
        assert!(matches!("1 2 | 1 3".parse::<LinkedPartition>(), Err(Error::InvalidLinkedPartition(_))));
        assert!(matches!("1 3 | 2 3".parse::<LinkedPartition>(), Err(Error::InvalidLinkedPartition(_))));
        assert!(matches!("1 | 3".parse::<LinkedPartition>(), Err(Error::InvalidLinkedPartition(_))));
    }

    #[test]
    fn arcs_and_statistics() {
        let p = lp("1 3 6 | 2 5 8 | 4 | 5 9 | 6 7");
        let arcs: ArcSet = [(1, 3), (1, 6), (2, 5), (2, 8), (5, 9), (6, 7)].into_iter().collect();
        assert_eq!(p.standard_rep(), arcs);
        assert_eq!(LinkedPartition::from_arcs(9, &arcs).unwrap(), p);
        let q = lp("1 2 3 5 6 | 2 4 7");
        assert_eq!((q.cross(), q.nest()), (2, 2));
        assert_eq!((lp("1 2 3 4").cross(), lp("1 2 3 4").nest()), (1, 1));
        assert_eq!(LinkedPartition::singletons(4).standard_rep(), ArcSet::new());
        assert_eq!(lp("1|2").to_string(), "1 | 2");
    }

    #[test]
    fn triangle_round_trip_small() {
        for n in 1..=5 {
            let all = all_linked_partitions(n);
            let distinct: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for p in &all {
                assert_eq!(&from_triangle_filling(&to_triangle_filling(p)).unwrap(), p);
            }
        }
    }

    #[test]
    fn border_of_one_element() {
        let b = vacillating_border(&LinkedPartition::singletons(1)).unwrap();
        assert_eq!(b.steps.len(), 3);
        assert!(b.steps.iter().all(|s| s.shape.is_empty() && s.marked_row.is_none()));
    }
}
