//! Hecke insertion into increasing tableaux, its reverse, and the word <-> (P, Q) correspondence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{Cell, IncreasingTableau, SetValuedTableau, Word};

/// Output `(Z, c, alpha)` of inserting one letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionResult {
    pub tableau: IncreasingTableau,
    pub corner: Cell,
    pub alpha: u8,
}

/// Insertion tableau `p` and set-valued recording tableau `q`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeckePair {
    pub p: IncreasingTableau,
    pub q: SetValuedTableau,
}

fn bottom_of_column(rows: &[Vec<u32>], col: usize) -> Cell {
    let height = rows.iter().take_while(|r| r.len() >= col).count();
    Cell::new(height as u32, col as u32)
}

pub fn hecke_insert(y: &IncreasingTableau, x: u32) -> Result<InsertionResult> {
    if x == 0 {
        return Err(Error::InvalidTableau("letters must be positive".into()));
    }
    if let Err(v) = y.validate() {
        return Err(Error::InvalidTableau(v.to_string()));
    }
    let mut rows = y.rows().to_vec();
    let mut x = x;
    let mut r = 0usize;
    loop {
        if r == rows.len() {
            if r == 0 || rows[r - 1][0] < x {
                rows.push(vec![x]);
                return Ok(done(rows, Cell::new(r as u32 + 1, 1), 1));
            }
            let c = bottom_of_column(&rows, 1);
            return Ok(done(rows, c, 0));
        }
        let len = rows[r].len();
        let last = rows[r][len - 1];
        if x >= last {
            let fits = x > last && (r == 0 || (rows[r - 1].len() > len && rows[r - 1][len] < x));
            if fits {
                rows[r].push(x);
                return Ok(done(rows, Cell::new(r as u32 + 1, len as u32 + 1), 1));
            }
            let c = bottom_of_column(&rows, len);
            return Ok(done(rows, c, 0));
        }
        let j = rows[r].iter().position(|&v| v > x).expect("some entry exceeds x");
        let bumped = rows[r][j];
        let left_ok = j == 0 || rows[r][j - 1] < x;
        let above_ok = r == 0 || rows[r - 1][j] < x;
        if left_ok && above_ok {
            rows[r][j] = x;
        }
        x = bumped;
        r += 1;
    }
}

fn done(rows: Vec<Vec<u32>>, corner: Cell, alpha: u8) -> InsertionResult {
    InsertionResult { tableau: IncreasingTableau::from_rows_unchecked(rows), corner, alpha }
}

pub fn reverse_hecke_insert(z: &IncreasingTableau, c: Cell, alpha: u8) -> Result<(IncreasingTableau, u32)> {
    if !z.shape().corners().contains(&c) {
        return Err(Error::NotACorner(c));
    }
    if alpha > 1 {
        return Err(Error::InconsistentTriple);
    }
    let mut rows = z.rows().to_vec();
    let (ri, ci) = (c.row as usize - 1, c.col as usize - 1);
    let mut y = rows[ri][ci];
    if alpha == 1 {
        rows[ri].pop();
        if rows[ri].is_empty() {
            rows.pop();
        }
    }
    for r in (0..ri).rev() {
        let Some(j) = rows[r].iter().rposition(|&v| v < y) else {
            return Err(Error::InconsistentTriple);
        };
        let x = rows[r][j];
        let right_ok = rows[r].get(j + 1).is_none_or(|&v| v > y);
        let below_ok = rows.get(r + 1).and_then(|row| row.get(j)).is_none_or(|&v| v > y);
        if right_ok && below_ok {
            rows[r][j] = y;
        }
        y = x;
    }
    let prev = IncreasingTableau::from_rows_unchecked(rows);
    if prev.validate().is_err() {
        return Err(Error::InconsistentTriple);
    }
    let again = hecke_insert(&prev, y)?;
    if again.tableau != *z || again.corner != c || again.alpha != alpha {
        return Err(Error::InconsistentTriple);
    }
    Ok((prev, y))
}

pub fn insert_word(w: &Word) -> HeckePair {
    let mut p = IncreasingTableau::empty();
    let mut q: Vec<Vec<Vec<u32>>> = Vec::new();
    for (k, &x) in w.letters().iter().enumerate() {
        let step = k as u32 + 1;
        let res = hecke_insert(&p, x).expect("letters are positive and p stays valid");
        let (r, c) = (res.corner.row as usize - 1, res.corner.col as usize - 1);
        if res.alpha == 1 {
            if r == q.len() {
                q.push(Vec::new());
            }
            q[r].push(vec![step]);
        } else {
            q[r][c].push(step);
        }
        p = res.tableau;
    }
    HeckePair { p, q: SetValuedTableau::from_rows_unchecked(q) }
}

pub fn recover_word(pair: &HeckePair) -> Result<Word> {
    if pair.p.shape() != pair.q.shape() || !pair.q.is_standard() || pair.q.validate().is_err() {
        return Err(Error::UnrecoverablePair);
    }
    let mut p = pair.p.clone();
    let mut q: Vec<Vec<Vec<u32>>> = pair.q.rows().to_vec();
    let n = pair.q.num_entries() as u32;
    let mut letters = Vec::with_capacity(n as usize);
    for k in (1..=n).rev() {
        let c = SetValuedTableau::from_rows_unchecked(q.clone()).find(k).ok_or(Error::UnrecoverablePair)?;
        let (r, col) = (c.row as usize - 1, c.col as usize - 1);
        let alpha = u8::from(q[r][col].len() == 1);
        let (prev, x) = reverse_hecke_insert(&p, c, alpha).map_err(|_| Error::UnrecoverablePair)?;
        q[r][col].pop();
        if alpha == 1 {
            q[r].pop();
            if q[r].is_empty() {
                q.pop();
            }
        }
        p = prev;
        letters.push(x);
    }
    letters.reverse();
    Ok(Word(letters))
}

/// Columns and rows of `P(w)`: the longest strictly increasing and decreasing subsequence lengths.
pub fn lis_lds_via_tableau(w: &Word) -> (usize, usize) {
    let p = insert_word(w).p;
    (p.num_cols(), p.num_rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: Vec<Vec<u32>>) -> IncreasingTableau {
        IncreasingTableau::from_rows(rows).unwrap()
    }

    fn example_y() -> IncreasingTableau {
        t(vec![vec![1, 2, 4, 6], vec![3, 4], vec![5, 7], vec![6]])
    }

    #[test]
    fn insertion_with_unchanged_shape() {
        let r = hecke_insert(&example_y(), 2).unwrap();
        assert_eq!(r.tableau, example_y());
        assert_eq!((r.corner, r.alpha), (Cell::new(3, 2), 0));
        assert_eq!(reverse_hecke_insert(&r.tableau, r.corner, r.alpha).unwrap(), (example_y(), 2));
    }

    #[test]
    fn insertion_with_new_box() {
        let r = hecke_insert(&example_y(), 5).unwrap();
        assert_eq!(r.tableau, t(vec![vec![1, 2, 4, 5], vec![3, 4, 6], vec![5, 7], vec![6]]));
        assert_eq!((r.corner, r.alpha), (Cell::new(2, 3), 1));
    }

    #[test]
    fn insertion_into_empty() {
        let r = hecke_insert(&IncreasingTableau::empty(), 7).unwrap();
        assert_eq!(r.tableau, t(vec![vec![7]]));
        assert_eq!((r.corner, r.alpha), (Cell::new(1, 1), 1));
        assert_eq!(reverse_hecke_insert(&r.tableau, r.corner, 1).unwrap(), (IncreasingTableau::empty(), 7));
    }

    #[test]
    fn reverse_rejects_non_corner() {
        let z = t(vec![vec![1, 2], vec![3]]);
        assert_eq!(reverse_hecke_insert(&z, Cell::new(1, 1), 0), Err(Error::NotACorner(Cell::new(1, 1))));
    }

    #[test]
    fn word_pairs() {
        let pair = insert_word(&"32412143".parse().unwrap());
        assert_eq!(pair.p, t(vec![vec![1, 2, 3], vec![2, 4], vec![3]]));
        let q = SetValuedTableau::from_rows(vec![
            vec![vec![1], vec![3], vec![7]],
            vec![vec![2], vec![5, 8]],
            vec![vec![4, 6]],
        ])
        .unwrap();
        assert_eq!(pair.q, q);
        assert_eq!(recover_word(&pair).unwrap().to_string(), "32412143");
        assert_eq!(lis_lds_via_tableau(&"32412143".parse().unwrap()), (3, 3));

        let pair = insert_word(&"213312".parse().unwrap());
        assert_eq!(pair.p, t(vec![vec![1, 2], vec![2, 3]]));
        assert_eq!(
            pair.q,
            SetValuedTableau::from_rows(vec![vec![vec![1], vec![3, 4]], vec![vec![2, 5], vec![6]]]).unwrap()
        );
        assert_eq!(insert_word(&Word::default()), HeckePair::default());
        assert_eq!(lis_lds_via_tableau(&Word(vec![1, 2, 3])), (3, 1));
        assert_eq!(lis_lds_via_tableau(&Word::default()), (0, 0));
    }

    #[test]
    fn singleton_recovery() {
        let pair = HeckePair { p: t(vec![vec![5]]), q: SetValuedTableau::from_rows(vec![vec![vec![1]]]).unwrap() };
        assert_eq!(recover_word(&pair).unwrap(), Word(vec![5]));
        let bogus = HeckePair {
            p: t(vec![vec![1, 2]]),
            q: SetValuedTableau::from_rows(vec![vec![vec![2], vec![1]]]).unwrap_or_default(),
        };
        assert_eq!(recover_word(&bogus), Err(Error::UnrecoverablePair));
    }
}
