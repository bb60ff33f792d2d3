//! The rectangle map `phi`, the bottom-row move `f` on fillings of stack polyominoes, and the
//! chain of such moves ending at a Ferrers shape.
//!
//! For a bottom-row move the rectangle `R` (columns `1..=r1`, rows `1..=h`) occupies the same
//! cells before and after the move; only the roles of its rows change: the moved row is the
//! bottom row of `R` and becomes its top row. Rows `2..=h` of the source shape shift down by
//! one, rows above `h` stay put.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::{insert_word, recover_word, HeckePair};
use crate::jdt::{inverse_prime_transform, prime_transform};
use crate::polyomino::{Filling, Polyomino, Pos, Rect, RowSpec};
use crate::tableau::Word;

/// 01-filling of a `height` x `width` rectangle, row 1 at the bottom, at most one 1 per column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectangleFilling {
    pub height: u32,
    pub width: u32,
    pub ones: BTreeSet<Pos>,
}

impl RectangleFilling {
    pub fn new(height: u32, width: u32, ones: BTreeSet<Pos>) -> Result<Self> {
        let t = RectangleFilling { height, width, ones };
        t.validate()?;
        Ok(t)
    }

    pub fn empty(height: u32, width: u32) -> Self {
        RectangleFilling { height, width, ones: BTreeSet::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let mut cols = BTreeSet::new();
        for p in &self.ones {
            if p.row == 0 || p.row > self.height || p.col == 0 || p.col > self.width {
                return Err(Error::InvalidFilling(format!("1 at ({},{}) outside the rectangle", p.row, p.col)));
            }
            if !cols.insert(p.col) {
                return Err(Error::InvalidFilling(format!("two 1s in column {}", p.col)));
            }
        }
        Ok(())
    }

    fn row_is_empty(&self, r: u32) -> bool {
        !self.ones.iter().any(|p| p.row == r)
    }

    fn nonempty_rows(&self) -> Vec<u32> {
        self.ones.iter().map(|p| p.row).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Word of the filling with empty rows and columns deleted, rows numbered bottom to top.
    pub fn compressed_word(&self) -> Word {
        let rows = self.nonempty_rows();
        let mut by_col: Vec<(u32, u32)> = self.ones.iter().map(|p| (p.col, p.row)).collect();
        by_col.sort_unstable();
        Word(by_col.into_iter().map(|(_, r)| rows.binary_search(&r).unwrap() as u32 + 1).collect())
    }
}

/// Places `w` so that letter `k` lands in the `k`-th of `rows` and the `i`-th letter in the
/// `i`-th of `cols`.
fn expand(height: u32, width: u32, w: &Word, rows: &[u32], cols: &[u32]) -> Result<RectangleFilling> {
    if w.len() != cols.len() || w.letters().iter().any(|&l| l == 0 || l as usize > rows.len()) {
        return Err(Error::PhiInconsistency(format!(
            "word {w} does not fit {} rows and {} columns",
            rows.len(),
            cols.len()
        )));
    }
    let distinct: BTreeSet<u32> = w.letters().iter().copied().collect();
    if distinct.len() != rows.len() {
        return Err(Error::PhiInconsistency(format!("word {w} leaves a row empty")));
    }
    let ones = w.letters().iter().zip(cols).map(|(&l, &c)| Pos::new(rows[l as usize - 1], c)).collect();
    Ok(RectangleFilling { height, width, ones })
}

fn occupied_cols(t: &RectangleFilling) -> Vec<u32> {
    t.ones.iter().map(|p| p.col).collect::<BTreeSet<_>>().into_iter().collect()
}

/// The rectangle map: the bottom row of `t` becomes the top row of the image.
pub fn phi(t: &RectangleFilling) -> Result<RectangleFilling> {
    t.validate()?;
    let h = t.height;
    if t.row_is_empty(1) {
        let ones = t.ones.iter().map(|p| Pos::new(p.row - 1, p.col)).collect();
        return Ok(RectangleFilling { height: h, width: t.width, ones });
    }
    let empty_rows: BTreeSet<u32> = (2..=h).filter(|&r| t.row_is_empty(r)).map(|r| r - 1).collect();
    let rows: Vec<u32> = (1..=h).filter(|r| !empty_rows.contains(r)).collect();
    let pair = insert_word(&t.compressed_word());
    let p2 = prime_transform(&pair.p).map_err(|e| Error::PhiInconsistency(e.to_string()))?;
    let w2 = recover_word(&HeckePair { p: p2, q: pair.q }).map_err(|e| Error::PhiInconsistency(e.to_string()))?;
    expand(h, t.width, &w2, &rows, &occupied_cols(t))
}

/// Inverse of [`phi`]: the top row of `t` becomes the bottom row of the preimage.
pub fn phi_inverse(t: &RectangleFilling) -> Result<RectangleFilling> {
    t.validate()?;
    let h = t.height;
    if h == 0 || t.row_is_empty(h) {
        let ones = t.ones.iter().map(|p| Pos::new(p.row + 1, p.col)).collect();
        return Ok(RectangleFilling { height: h, width: t.width, ones });
    }
    let empty_rows: BTreeSet<u32> = (1..h).filter(|&r| t.row_is_empty(r)).map(|r| r + 1).collect();
    let rows: Vec<u32> = (1..=h).filter(|r| !empty_rows.contains(r)).collect();
    let pair = insert_word(&t.compressed_word());
    let p = inverse_prime_transform(&pair.p).map_err(|e| Error::PhiInconsistency(e.to_string()))?;
    let w = recover_word(&HeckePair { p, q: pair.q }).map_err(|e| Error::PhiInconsistency(e.to_string()))?;
    expand(h, t.width, &w, &rows, &occupied_cols(t))
}

/// Geometry of one row move: row `moved_row_from` of `source` is reinserted as row
/// `moved_row_to` of `target`, and `rectangle` is both `R` and `R'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCertificate {
    pub source: Polyomino,
    pub target: Polyomino,
    pub moved_row_from: u32,
    pub moved_row_to: u32,
    pub rectangle: Rect,
}

/// Where the bottom row goes: the highest position that keeps a stack polyomino.
pub fn move_bottom_row_target(m: &Polyomino) -> Result<MoveCertificate> {
    let spec = m.row_spec().filter(|s| s.is_unimodal()).ok_or(Error::NotStack)?;
    let l = &spec.lengths;
    let Some(&r1) = l.first() else { return Err(Error::NothingToMove) };
    if l.iter().all(|&x| x <= r1) {
        return Err(Error::NothingToMove);
    }
    // The rows of length >= r1 above the bottom row form a block starting at row 2.
    let q = l[1..].iter().rposition(|&x| x >= r1).expect("a longer row exists") + 1;
    relocation(m, 1, q as u32 + 1)
}

/// Certificate for moving row `from` up to position `to` through the rectangle spanned by row
/// `from` and the rows up to `to`.
pub fn relocation(m: &Polyomino, from: u32, to: u32) -> Result<MoveCertificate> {
    let rows = m.rows();
    let cols = rows.get(&from).ok_or_else(|| Error::InvalidFilling(format!("row {from} is not part of the shape")))?;
    let (c0, c1) = (cols[0], *cols.last().unwrap());
    let rect = Rect { row_lo: from, row_hi: to, col_lo: c0, col_hi: c1 };
    if to < from || !m.contains_rect(&rect) || cols.len() as u32 != c1 - c0 + 1 {
        return Err(Error::InvalidFilling(format!("rows {from}..={to} do not contain row {from}")));
    }
    let target = Polyomino::from_cells(m.cells().iter().map(|&p| move_pos(p, from, to)))?;
    Ok(MoveCertificate { source: m.clone(), target, moved_row_from: from, moved_row_to: to, rectangle: rect })
}

fn move_pos(p: Pos, from: u32, to: u32) -> Pos {
    if p.row == from {
        Pos::new(to, p.col)
    } else if from < p.row && p.row <= to {
        Pos::new(p.row - 1, p.col)
    } else {
        p
    }
}

fn unmove_pos(p: Pos, from: u32, to: u32) -> Pos {
    if p.row == to {
        Pos::new(from, p.col)
    } else if from <= p.row && p.row < to {
        Pos::new(p.row + 1, p.col)
    } else {
        p
    }
}

fn restrict(f: &Filling, r: &Rect) -> RectangleFilling {
    RectangleFilling {
        height: r.height(),
        width: r.width(),
        ones: f
            .ones
            .iter()
            .filter(|p| r.contains(**p))
            .map(|p| Pos::new(p.row - r.row_lo + 1, p.col - r.col_lo + 1))
            .collect(),
    }
}

fn embed<'a>(t: &'a RectangleFilling, r: &Rect) -> impl Iterator<Item = Pos> + 'a {
    let (dr, dc) = (r.row_lo - 1, r.col_lo - 1);
    t.ones.iter().map(move |p| Pos::new(p.row + dr, p.col + dc))
}

/// Moves a row as recorded in `cert`: `phi` on the rectangle, the shape's row shift elsewhere.
///
/// With a bottom-row certificate this is the statistic-preserving map; with any other row it
/// is the construction that fails to preserve chain lengths.
pub fn relocate_row(f: &Filling, cert: &MoveCertificate) -> Result<Filling> {
    if f.shape != cert.source {
        return Err(Error::InvalidFilling("filling shape differs from the certificate source".into()));
    }
    let r = &cert.rectangle;
    let inside = phi(&restrict(f, r))?;
    let mut ones: BTreeSet<Pos> = f
        .ones
        .iter()
        .filter(|p| !r.contains(**p))
        .map(|&p| move_pos(p, cert.moved_row_from, cert.moved_row_to))
        .collect();
    ones.extend(embed(&inside, r));
    Filling::new(cert.target.clone(), ones)
}

/// Inverse of [`relocate_row`] for the same certificate.
pub fn unrelocate_row(f: &Filling, cert: &MoveCertificate) -> Result<Filling> {
    if f.shape != cert.target {
        return Err(Error::InvalidFilling("filling shape differs from the certificate target".into()));
    }
    let r = &cert.rectangle;
    let inside = phi_inverse(&restrict(f, r))?;
    let mut ones: BTreeSet<Pos> = f
        .ones
        .iter()
        .filter(|p| !r.contains(**p))
        .map(|&p| unmove_pos(p, cert.moved_row_from, cert.moved_row_to))
        .collect();
    ones.extend(embed(&inside, r));
    Filling::new(cert.source.clone(), ones)
}

/// Moves the bottom row of a non-Ferrers stack polyomino up as far as possible.
pub fn f(m: &Filling) -> Result<Filling> {
    relocate_row(m, &move_bottom_row_target(&m.shape)?)
}

/// Inverse of [`f`] onto fillings of `source`.
pub fn f_inverse(m: &Filling, source: &Polyomino) -> Result<Filling> {
    let cert = move_bottom_row_target(source)?;
    unrelocate_row(m, &cert)
}

/// Applies [`f`] until the shape is a Ferrers shape.
pub fn to_ferrers(m: &Filling) -> Result<(Filling, Vec<MoveCertificate>)> {
    let mut cur = m.clone();
    let mut chain = Vec::new();
    loop {
        match move_bottom_row_target(&cur.shape) {
            Ok(cert) => {
                cur = relocate_row(&cur, &cert)?;
                chain.push(cert);
            }
            Err(Error::NothingToMove) => return Ok((cur, chain)),
            Err(e) => return Err(e),
        }
    }
}

/// Undoes a chain returned by [`to_ferrers`].
pub fn from_ferrers(m: &Filling, chain: &[MoveCertificate]) -> Result<Filling> {
    chain.iter().rev().try_fold(m.clone(), |cur, cert| unrelocate_row(&cur, cert))
}

/// Row lengths of every shape along the move chain from a stack polyomino, starting shape first.
pub fn shape_chain(spec: &RowSpec) -> Result<Vec<RowSpec>> {
    let mut cur = Polyomino::from_row_spec(spec)?;
    let mut out = vec![spec.clone()];
    loop {
        match move_bottom_row_target(&cur) {
            Ok(cert) => {
                cur = cert.target;
                out.push(cur.row_spec().expect("stack shapes keep a row spec"));
            }
            Err(Error::NothingToMove) => return Ok(out),
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyomino::{chain_stats, enumerate_fillings, Mode};

    fn rf(h: u32, w: u32, ones: &[(u32, u32)]) -> RectangleFilling {
        RectangleFilling::new(h, w, ones.iter().map(|&(r, c)| Pos::new(r, c)).collect()).unwrap()
    }

    fn stack(l: &[u32]) -> Polyomino {
        Polyomino::from_row_spec(&RowSpec::new(l.to_vec())).unwrap()
    }

    #[test]
    fn shape_moves() {
        let chain = shape_chain(&RowSpec::new(vec![3, 4, 5, 4, 2])).unwrap();
        let lens: Vec<Vec<u32>> = chain.into_iter().map(|s| s.lengths).collect();
        assert_eq!(lens, vec![vec![3, 4, 5, 4, 2], vec![4, 5, 4, 3, 2], vec![5, 4, 4, 3, 2]]);
        let c = move_bottom_row_target(&stack(&[1, 2])).unwrap();
        assert_eq!(c.target.row_spec().unwrap().lengths, vec![2, 1]);
        assert_eq!(move_bottom_row_target(&stack(&[2, 1])), Err(Error::NothingToMove));
        let not_stack = Polyomino::from_cells([Pos::new(1, 2)]).unwrap();
        assert_eq!(move_bottom_row_target(&not_stack), Err(Error::NotStack));
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(phi(&rf(3, 2, &[])).unwrap(), rf(3, 2, &[]));
        assert_eq!(phi(&rf(2, 1, &[(1, 1)])).unwrap(), rf(2, 1, &[(2, 1)]));
        assert_eq!(phi(&rf(2, 1, &[(2, 1)])).unwrap(), rf(2, 1, &[(1, 1)]));
        assert_eq!(phi_inverse(&rf(2, 1, &[(2, 1)])).unwrap(), rf(2, 1, &[(1, 1)]));
    }

    #[test]
    fn phi_round_trip_2x3() {
        for f in enumerate_fillings(&Polyomino::rectangle(2, 3), &Mode::All) {
            let t = RectangleFilling { height: 2, width: 3, ones: f.ones };
            let img = phi(&t).unwrap();
            assert_eq!(phi_inverse(&img).unwrap(), t);
        }
    }

    #[test]
    fn f_on_two_row_stack() {
        let src = stack(&[1, 2]);
        let mut images = BTreeSet::new();
        for m in enumerate_fillings(&src, &Mode::All) {
            let out = f(&m).unwrap();
            assert_eq!(chain_stats(&out), chain_stats(&m));
            assert_eq!(out.empty_columns(), m.empty_columns());
            assert_eq!(f_inverse(&out, &src).unwrap(), m);
            images.insert(out.ones);
        }
        assert_eq!(images.len(), 6);
    }

    #[test]
    fn to_ferrers_identity_on_ferrers() {
        let m = Filling::empty(stack(&[3, 2]));
        let (out, chain) = to_ferrers(&m).unwrap();
        assert_eq!(out, m);
        assert!(chain.is_empty());
    }
}
