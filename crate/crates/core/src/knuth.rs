//! K-Knuth relations, bounded equivalence search, restriction, and lis/lds by dynamic programming.
//!
//! Relations, for letters x < y < z: `xzy = zxy`, `yxz = yzx`, `x = xx`, `xyx = yxy`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::tableau::Word;

/// Search bounds: words longer than `max_len` are never produced, and at most `max_states`
/// distinct words are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivBudget {
    pub max_len: usize,
    pub max_states: usize,
}

impl EquivBudget {
    /// `max_len` = longer input + 4, the default used throughout the test suites.
    pub fn for_words(w1: &Word, w2: &Word) -> Self {
        EquivBudget { max_len: w1.len().max(w2.len()) + 4, max_states: 2_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// `path` starts at the first word, ends at the second, and consecutive words differ by one relation.
    Equivalent { path: Vec<Word> },
    /// The search ran out of budget; nothing is claimed about inequivalence.
    NotFoundWithinBudget { explored: usize, budget: EquivBudget },
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent { .. })
    }
}

fn strictly_between(m: u32, a: u32, b: u32) -> bool {
    (a < m && m < b) || (b < m && m < a)
}

/// All words one relation away from `w`, in either direction.
pub fn kknuth_neighbors(w: &Word, budget: &EquivBudget) -> BTreeSet<Word> {
    let s = w.letters();
    let n = s.len();
    let mut out = BTreeSet::new();
    for i in 0..n.saturating_sub(2) {
        let (a, b, c) = (s[i], s[i + 1], s[i + 2]);
        if strictly_between(c, a, b) {
            let mut v = s.to_vec();
            v.swap(i, i + 1);
            out.insert(Word(v));
        }
        if strictly_between(a, b, c) {
            let mut v = s.to_vec();
            v.swap(i + 1, i + 2);
            out.insert(Word(v));
        }
        if a == c && a != b {
            let mut v = s.to_vec();
            v[i] = b;
            v[i + 1] = a;
            v[i + 2] = b;
            out.insert(Word(v));
        }
    }
    if n < budget.max_len {
        for i in 0..n {
            let mut v = s.to_vec();
            v.insert(i, s[i]);
            out.insert(Word(v));
        }
    }
    for i in 0..n.saturating_sub(1) {
        if s[i] == s[i + 1] {
            let mut v = s.to_vec();
            v.remove(i);
            out.insert(Word(v));
        }
    }
    out
}

fn bfs_key(w: &Word) -> (usize, Vec<u32>) {
    (w.len(), w.letters().to_vec())
}

/// Breadth-first closure of `w1`, level by level with each level sorted by (length, letters).
pub fn kknuth_equivalent(w1: &Word, w2: &Word, budget: &EquivBudget) -> Verdict {
    let mut parent: HashMap<Word, Option<Word>> = HashMap::new();
    parent.insert(w1.clone(), None);
    let mut level = vec![w1.clone()];
    while !level.is_empty() {
        if let Some(found) = level.iter().find(|w| *w == w2) {
            return Verdict::Equivalent { path: trace(&parent, found) };
        }
        let mut next: Vec<Word> = Vec::new();
        for w in &level {
            for nb in kknuth_neighbors(w, budget) {
                if parent.contains_key(&nb) {
                    continue;
                }
                if parent.len() >= budget.max_states {
                    return Verdict::NotFoundWithinBudget { explored: parent.len(), budget: *budget };
                }
                parent.insert(nb.clone(), Some(w.clone()));
                next.push(nb);
            }
        }
        next.sort_by_key(bfs_key);
        level = next;
    }
    Verdict::NotFoundWithinBudget { explored: parent.len(), budget: *budget }
}

/// Every word reachable from `w` within the budget (including `w`).
pub fn kknuth_closure(w: &Word, budget: &EquivBudget) -> BTreeSet<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(w.clone());
    let mut frontier = vec![w.clone()];
    while let Some(x) = frontier.pop() {
        for nb in kknuth_neighbors(&x, budget) {
            if seen.len() >= budget.max_states {
                return seen;
            }
            if seen.insert(nb.clone()) {
                frontier.push(nb);
            }
        }
    }
    seen
}

fn trace(parent: &HashMap<Word, Option<Word>>, end: &Word) -> Vec<Word> {
    let mut path = vec![end.clone()];
    let mut cur = end;
    while let Some(Some(p)) = parent.get(cur) {
        path.push(p.clone());
        cur = p;
    }
    path.reverse();
    path
}

/// Subsequence of letters lying in `[a, b]`.
pub fn restrict(w: &Word, a: u32, b: u32) -> Word {
    Word(w.letters().iter().copied().filter(|&x| a <= x && x <= b).collect())
}

fn longest_chain(s: &[u32], ok: impl Fn(u32, u32) -> bool) -> usize {
    let mut best = vec![1usize; s.len()];
    for j in 0..s.len() {
        for i in 0..j {
            if ok(s[i], s[j]) && best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Longest strictly increasing subsequence.
pub fn lis(w: &Word) -> usize {
    longest_chain(w.letters(), |a, b| a < b)
}

/// Longest strictly decreasing subsequence.
pub fn lds(w: &Word) -> usize {
    longest_chain(w.letters(), |a, b| a > b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn neighbours_cover_each_relation() {
        let b = EquivBudget { max_len: 4, max_states: 100 };
        assert!(kknuth_neighbors(&w("1"), &b).contains(&w("11")));
        assert!(kknuth_neighbors(&w("121"), &b).contains(&w("212")));
        assert!(kknuth_neighbors(&w("132"), &b).contains(&w("312")));
        assert!(kknuth_neighbors(&w("213"), &b).contains(&w("231")));
        assert!(kknuth_neighbors(&w("11"), &b).contains(&w("1")));
        let tight = EquivBudget { max_len: 1, max_states: 100 };
        assert!(!kknuth_neighbors(&w("1"), &tight).contains(&w("11")));
    }

    #[test]
    fn equivalence_search() {
        let b = EquivBudget { max_len: 6, max_states: 10_000 };
        match kknuth_equivalent(&w("121"), &w("212"), &b) {
            Verdict::Equivalent { path } => assert_eq!(path, vec![w("121"), w("212")]),
            v => panic!("{v:?}"),
        }
        assert!(kknuth_equivalent(&w("2143"), &w("2143"), &b).is_equivalent());
        // 12 and 21 have different lis, so the search can only run out.
        assert!(!kknuth_equivalent(&w("12"), &w("21"), &b).is_equivalent());
    }

    #[test]
    fn restriction_and_chains() {
        assert_eq!(restrict(&w("32412143"), 2, 3), w("3223"));
        assert_eq!(restrict(&w("32412143"), 1, 4), w("32412143"));
        assert_eq!((lis(&w("32412143")), lds(&w("32412143"))), (3, 3));
        assert_eq!(lis(&Word::default()), 0);
        assert_eq!(lis(&w("1223")), 3);
    }
}
