//! K-jeu de taquin and reverse K-jeu de taquin on increasing skew tableaux, and the
//! corner rotation `P -> P'` built from them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::tableau::{Cell, IncreasingTableau, Partition, SkewIncreasingTableau};

pub type CornerSet = BTreeSet<Cell>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Hole,
    Val(u32),
}

#[derive(Clone, Copy)]
enum Direction {
    /// Holes move down and right.
    Forward,
    /// Holes move up and left.
    Reverse,
}

fn neighbours(c: Cell, dir: Direction) -> [Option<Cell>; 2] {
    match dir {
        Direction::Forward => [Some(Cell::new(c.row + 1, c.col)), Some(Cell::new(c.row, c.col + 1))],
        Direction::Reverse => {
            [(c.row > 1).then(|| Cell::new(c.row - 1, c.col)), (c.col > 1).then(|| Cell::new(c.row, c.col - 1))]
        }
    }
}

/// One stage per value: every copy of `v` adjacent to a hole becomes a hole, and every hole
/// adjacent to a copy of `v` receives `v`.
fn slide(grid: &mut BTreeMap<Cell, Slot>, values: impl Iterator<Item = u32>, dir: Direction) {
    for v in values {
        let holes: Vec<Cell> = grid.iter().filter(|(_, s)| **s == Slot::Hole).map(|(c, _)| *c).collect();
        let mut moving = BTreeSet::new();
        let mut filled = BTreeSet::new();
        for h in holes {
            for n in neighbours(h, dir).into_iter().flatten() {
                if grid.get(&n) == Some(&Slot::Val(v)) {
                    moving.insert(n);
                    filled.insert(h);
                }
            }
        }
        for h in filled {
            grid.insert(h, Slot::Val(v));
        }
        for n in moving {
            grid.insert(n, Slot::Hole);
        }
    }
}

/// Shape obtained by adding (`add`) or removing the given cells row by row.
fn adjust(p: &Partition, cells: &BTreeSet<Cell>, add: bool) -> Result<Partition> {
    let rows = p.len().max(cells.iter().map(|c| c.row as usize).max().unwrap_or(0));
    let mut lengths: Vec<i64> = (1..=rows).map(|i| p.row(i) as i64).collect();
    for c in cells {
        lengths[c.row as usize - 1] += if add { 1 } else { -1 };
    }
    let lengths: Vec<u32> = lengths.into_iter().map(|l| l.max(0) as u32).collect();
    let out = Partition::from_lengths(lengths)
        .map_err(|e| Error::InvalidCorners(format!("cells do not change the shape cleanly: {e}")))?;
    for c in cells {
        let inside = out.contains_cell(*c);
        if inside != add {
            return Err(Error::InvalidCorners(format!("cell ({},{}) is not at a row end", c.row, c.col)));
        }
    }
    Ok(out)
}

fn max_value(t: &SkewIncreasingTableau) -> u32 {
    t.entries.values().copied().max().unwrap_or(0)
}

fn validated(t: &SkewIncreasingTableau) -> Result<()> {
    t.validate().map_err(|v| Error::InvalidTableau(v.to_string()))
}

/// Slides into the inner corners `c`, processing values 1, 2, ... in order.
pub fn jdt(t: &SkewIncreasingTableau, c: &CornerSet) -> Result<SkewIncreasingTableau> {
    Ok(jdt_with_holes(t, c)?.0)
}

/// Like [`jdt`], also returning the cells where the holes end up.
pub fn jdt_with_holes(t: &SkewIncreasingTableau, c: &CornerSet) -> Result<(SkewIncreasingTableau, CornerSet)> {
    validated(t)?;
    let corners: BTreeSet<Cell> = t.inner.corners().into_iter().collect();
    if let Some(bad) = c.iter().find(|x| !corners.contains(x)) {
        return Err(Error::InvalidCorners(format!("({},{}) is not an inner corner", bad.row, bad.col)));
    }
    let mut grid: BTreeMap<Cell, Slot> = t.entries.iter().map(|(&k, &v)| (k, Slot::Val(v))).collect();
    for &h in c {
        grid.insert(h, Slot::Hole);
    }
    slide(&mut grid, 1..=max_value(t), Direction::Forward);
    finish(grid, adjust(&t.inner, c, false)?, &t.outer, false)
}

/// Slides outward from the outer cells `c`, processing values from the largest down.
pub fn rev_jdt(t: &SkewIncreasingTableau, c: &CornerSet) -> Result<SkewIncreasingTableau> {
    Ok(rev_jdt_with_holes(t, c)?.0)
}

/// Like [`rev_jdt`], also returning the cells where the holes end up.
pub fn rev_jdt_with_holes(t: &SkewIncreasingTableau, c: &CornerSet) -> Result<(SkewIncreasingTableau, CornerSet)> {
    validated(t)?;
    let addable: BTreeSet<Cell> = t.outer.addable().into_iter().collect();
    if let Some(bad) = c.iter().find(|x| !addable.contains(x)) {
        return Err(Error::InvalidCorners(format!("({},{}) is not an outer corner", bad.row, bad.col)));
    }
    let mut grid: BTreeMap<Cell, Slot> = t.entries.iter().map(|(&k, &v)| (k, Slot::Val(v))).collect();
    for &h in c {
        grid.insert(h, Slot::Hole);
    }
    slide(&mut grid, (1..=max_value(t)).rev(), Direction::Reverse);
    let outer = adjust(&t.outer, c, true)?;
    finish(grid, t.inner.clone(), &outer, true)
}

/// Assembles the result: for forward slides the holes leave the outer shape, for reverse
/// slides they join the inner shape.
fn finish(
    grid: BTreeMap<Cell, Slot>,
    inner: Partition,
    outer: &Partition,
    reverse: bool,
) -> Result<(SkewIncreasingTableau, CornerSet)> {
    let holes: CornerSet = grid.iter().filter(|(_, s)| **s == Slot::Hole).map(|(c, _)| *c).collect();
    let entries: BTreeMap<Cell, u32> = grid
        .into_iter()
        .filter_map(|(c, s)| match s {
            Slot::Val(v) => Some((c, v)),
            Slot::Hole => None,
        })
        .collect();
    let (inner, outer) =
        if reverse { (adjust(&inner, &holes, true)?, outer.clone()) } else { (inner, adjust(outer, &holes, false)?) };
    let t = SkewIncreasingTableau { outer, inner, entries };
    validated(&t)?;
    Ok((t, holes))
}

/// Removes the 1 in the top-left box, slides the hole out through values 2, 3, ..., lowers
/// every entry by one and writes the old maximum into the boxes the holes reached.
pub fn prime_transform(p: &IncreasingTableau) -> Result<IncreasingTableau> {
    if p.get(Cell::new(1, 1)) != Some(1) {
        return Err(Error::NoLetterOne);
    }
    let m = p.max_entry().expect("nonempty");
    let mut entries: BTreeMap<Cell, u32> = p.entries().collect();
    entries.remove(&Cell::new(1, 1));
    let skew = SkewIncreasingTableau { outer: p.shape(), inner: Partition::new(vec![1]).unwrap(), entries };
    let start: CornerSet = [Cell::new(1, 1)].into_iter().collect();
    let (slid, holes) = jdt_with_holes(&skew, &start)?;
    let mut rows: Vec<Vec<u32>> = p.rows().iter().map(|r| vec![0; r.len()]).collect();
    for (c, v) in slid.entries {
        rows[c.row as usize - 1][c.col as usize - 1] = v - 1;
    }
    for c in holes {
        rows[c.row as usize - 1][c.col as usize - 1] = m;
    }
    IncreasingTableau::from_rows(rows)
}

/// Inverse of [`prime_transform`]: the maximal entries become holes, slide back through
/// values m-1, ..., 1, every entry rises by one and the hole left in the top-left box gets 1.
pub fn inverse_prime_transform(p: &IncreasingTableau) -> Result<IncreasingTableau> {
    let m = p.max_entry().ok_or_else(|| Error::InvalidTableau("empty tableau".into()))?;
    let tops: CornerSet = p.entries().filter(|&(_, v)| v == m).map(|(c, _)| c).collect();
    let entries: BTreeMap<Cell, u32> = p.entries().filter(|&(_, v)| v != m).collect();
    let outer = adjust(&p.shape(), &tops, false)?;
    let skew = SkewIncreasingTableau { outer, inner: Partition::empty(), entries };
    let (slid, holes) = rev_jdt_with_holes(&skew, &tops)?;
    if holes.len() != 1 || !holes.contains(&Cell::new(1, 1)) {
        return Err(Error::InvalidTableau("holes did not return to the top-left box".into()));
    }
    let mut rows: Vec<Vec<u32>> = p.rows().iter().map(|r| vec![1; r.len()]).collect();
    for (c, v) in slid.entries {
        rows[c.row as usize - 1][c.col as usize - 1] = v + 1;
    }
    IncreasingTableau::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn skew(outer: &[u32], inner: &[u32], e: &[(u32, u32, u32)]) -> SkewIncreasingTableau {
        let entries = e.iter().map(|&(r, c, v)| (Cell::new(r, c), v)).collect();
        SkewIncreasingTableau::new(part(outer), part(inner), entries).unwrap()
    }

    fn cells(v: &[(u32, u32)]) -> CornerSet {
        v.iter().map(|&(r, c)| Cell::new(r, c)).collect()
    }

    #[test]
    fn empty_corner_set_is_identity() {
        let t = skew(&[2, 1], &[1], &[(1, 2, 2), (2, 1, 1)]);
        assert_eq!(jdt(&t, &CornerSet::new()).unwrap(), t);
        assert_eq!(rev_jdt(&t, &CornerSet::new()).unwrap(), t);
    }

    #[test]
    fn single_slide() {
        let t = skew(&[2], &[1], &[(1, 2, 2)]);
        let out = jdt(&t, &cells(&[(1, 1)])).unwrap();
        assert_eq!(out, skew(&[1], &[], &[(1, 1, 2)]));
    }

    #[test]
    fn rejects_non_corners() {
        let t = skew(&[2, 2], &[2, 1], &[(2, 2, 1)]);
        assert!(matches!(jdt(&t, &cells(&[(1, 1)])), Err(Error::InvalidCorners(_))));
        assert!(matches!(rev_jdt(&t, &cells(&[(3, 2)])), Err(Error::InvalidCorners(_))));
    }

    #[test]
    fn one_value_feeding_two_holes() {
        // A single 1 sits above one hole and left of another; both holes take the 1.
        let t = skew(&[2, 1], &[], &[(1, 1, 1), (1, 2, 2), (2, 1, 2)]);
        let out = rev_jdt(&t, &cells(&[(2, 2)])).unwrap();
        assert_eq!(out.inner, part(&[1]));
        assert_eq!(out.entries.get(&Cell::new(2, 2)), Some(&2));
    }

    #[test]
    fn prime_transform_singleton() {
        let one = IncreasingTableau::from_rows(vec![vec![1]]).unwrap();
        assert_eq!(prime_transform(&one).unwrap(), one);
        assert_eq!(inverse_prime_transform(&one).unwrap(), one);
        let no_one = IncreasingTableau::from_rows(vec![vec![2]]).unwrap();
        assert_eq!(prime_transform(&no_one), Err(Error::NoLetterOne));
    }
}
