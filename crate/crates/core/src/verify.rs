//! Verification suites: worked-example replay and exhaustive checks, each producing a
//! [`RunReport`] with one entry per check.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bijection::{
    f_inverse, phi, phi_inverse, relocate_row, relocation, shape_chain, to_ferrers, unrelocate_row, RectangleFilling,
};
use crate::error::Error;
use crate::fixtures;
use crate::growth::{backward_square, build_growth, extract_pq, forward_square, matrix_rep, unbuild_growth};
use crate::hecke::{hecke_insert, insert_word, lis_lds_via_tableau, recover_word, reverse_hecke_insert};
use crate::jdt::{inverse_prime_transform, jdt, prime_transform, rev_jdt, CornerSet};
use crate::knuth::{kknuth_equivalent, kknuth_neighbors, lds, lis, restrict, EquivBudget, Verdict};
use crate::linked::{
    all_linked_partitions, from_triangle_filling, row_move_bijection, row_move_bijection_reversed_order,
    to_triangle_filling, transpose_bijection, triangle, vacillating_border, LinkedPartition,
};
use crate::polyomino::{
    chain_stats, count_table, count_table_shard, enumerate_fillings, gen_poly, ChainCounter, ClassTag, Filling,
    GenPoly, Mode, Polyomino, Pos, RowSpec, Shard,
};
use crate::tableau::{reading_word, IncreasingTableau, Partition, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Every worked example: insertions, slides, the corner rotation, the row move, linked partitions.
    Figures,
    /// Growth-diagram (P, Q) equals insertion (P, Q) on all short words.
    Growth,
    /// lis / lds by dynamic programming equal the numbers of columns / rows of P.
    LisLds,
    /// Inverse pairs on exhaustive small domains.
    Roundtrips,
    /// All orderings of a row multiset into a stack give the same count table; the bottom-row
    /// move is a chain-preserving bijection.
    RowOrders,
    /// Count tables of stack polyominoes are symmetric in (ne, se).
    Symmetry,
    /// Moving a row other than the bottom one changes the longest ne-chain.
    Counterexamples,
    /// Fixing row sums breaks the symmetry.
    RowSums,
    /// Moon polyominoes with equal row lengths share their distribution; almost-moons do not.
    Conjecture,
    /// The 16-element witness under both linked-partition bijections.
    LinkedWitnesses,
    /// Both linked-partition bijections swap crossings and nestings and fix both component sets.
    Linked,
    /// K-Knuth equivalence of words with equal insertion tableaux, and restriction.
    Kknuth,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Figures,
        Suite::Growth,
        Suite::LisLds,
        Suite::Roundtrips,
        Suite::RowOrders,
        Suite::Symmetry,
        Suite::Counterexamples,
        Suite::RowSums,
        Suite::Conjecture,
        Suite::LinkedWitnesses,
        Suite::Linked,
        Suite::Kknuth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Figures => "figures",
            Suite::Growth => "growth",
            Suite::LisLds => "lis-lds",
            Suite::Roundtrips => "roundtrips",
            Suite::RowOrders => "row-orders",
            Suite::Symmetry => "symmetry",
            Suite::Counterexamples => "counterexamples",
            Suite::RowSums => "row-sums",
            Suite::Conjecture => "conjecture",
            Suite::LinkedWitnesses => "linked-witnesses",
            Suite::Linked => "linked",
            Suite::Kknuth => "kknuth",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Sizes and budgets for the suites. Every value is echoed in the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    /// Largest number of cells of the stack polyominoes in the row-order and symmetry suites.
    pub max_cells: u32,
    /// Longest word and alphabet size for the growth, lis-lds and roundtrip suites.
    pub word_max_len: usize,
    pub word_alphabet: u32,
    /// Largest tableau box and entry bound for insertion round trips.
    pub tableau_rows: u32,
    pub tableau_cols: u32,
    pub tableau_max_entry: u32,
    /// Largest rectangle for the rectangle-map round trip.
    pub rect_max_height: u32,
    pub rect_max_width: u32,
    /// Largest n for the exhaustive linked-partition suite, and for its random samples.
    pub linked_max_n: u32,
    pub linked_random_max_n: u32,
    pub random_samples: usize,
    /// Longest word and alphabet size for the K-Knuth suite; the search may lengthen words by
    /// `kknuth_extra_len` and visit at most `kknuth_max_states` words.
    pub kknuth_max_len: usize,
    pub kknuth_alphabet: u32,
    pub kknuth_extra_len: usize,
    pub kknuth_max_states: usize,
    pub seed: u64,
    pub shard: Shard,
    pub fail_fast: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            max_cells: 12,
            word_max_len: 6,
            word_alphabet: 4,
            tableau_rows: 3,
            tableau_cols: 3,
            tableau_max_entry: 4,
            rect_max_height: 3,
            rect_max_width: 4,
            linked_max_n: 6,
            linked_random_max_n: 9,
            random_samples: 200,
            kknuth_max_len: 5,
            kknuth_alphabet: 3,
            kknuth_extra_len: 4,
            kknuth_max_states: 2_000_000,
            seed: 0,
            shard: Shard::WHOLE,
            fail_fast: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    /// Informational checks are reported but do not affect the verdict.
    pub informational: bool,
    pub detail: String,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: Suite,
    pub params: VerifyParams,
    pub checks: Vec<Check>,
    pub stopped_early: bool,
    pub millis: u64,
}

impl RunReport {
    /// True when every non-informational check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn summary(&self) -> String {
        let hard = self.checks.iter().filter(|c| !c.informational).count();
        let failed = self.failures().count();
        format!("{}: {}/{} checks passed in {} ms", self.suite, hard - failed, hard, self.millis)
    }
}

type Outcome = std::result::Result<String, String>;

struct Runner {
    checks: Vec<Check>,
    fail_fast: bool,
    stopped: bool,
}

impl Runner {
    fn new(fail_fast: bool) -> Self {
        Runner { checks: Vec::new(), fail_fast, stopped: false }
    }

    fn run(&mut self, id: impl Into<String>, informational: bool, body: impl FnOnce() -> Outcome) {
        if self.stopped {
            return;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let millis = start.elapsed().as_millis() as u64;
        if !passed && !informational && self.fail_fast {
            self.stopped = true;
        }
        self.checks.push(Check { id: id.into(), passed, informational, detail, millis });
    }

    fn check(&mut self, id: impl Into<String>, body: impl FnOnce() -> Outcome) {
        self.run(id, false, body)
    }

    fn note(&mut self, id: impl Into<String>, body: impl FnOnce() -> Outcome) {
        self.run(id, true, body)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

pub fn run_suite(suite: Suite, params: &VerifyParams) -> RunReport {
    let start = Instant::now();
    let mut r = Runner::new(params.fail_fast);
    match suite {
        Suite::Figures => figures(&mut r),
        Suite::Growth => growth_suite(&mut r, params),
        Suite::LisLds => lis_lds_suite(&mut r, params),
        Suite::Roundtrips => roundtrips(&mut r, params),
        Suite::RowOrders => row_orders(&mut r, params),
        Suite::Symmetry => symmetry(&mut r, params),
        Suite::Counterexamples => counterexamples(&mut r),
        Suite::RowSums => row_sums(&mut r),
        Suite::Conjecture => conjecture(&mut r),
        Suite::LinkedWitnesses => linked_witnesses(&mut r),
        Suite::Linked => linked_suite(&mut r, params),
        Suite::Kknuth => kknuth_suite(&mut r, params),
    }
    RunReport {
        suite,
        params: params.clone(),
        checks: r.checks,
        stopped_early: r.stopped,
        millis: start.elapsed().as_millis() as u64,
    }
}

// ---------------------------------------------------------------------------------------------
// worked examples

fn figures(r: &mut Runner) {
    let h = fixtures::hecke();
    for (i, c) in h.insertions.iter().enumerate() {
        r.check(format!("insertion/{}", i + 1), || {
            let out = hecke_insert(&c.tableau, c.letter).map_err(err)?;
            ensure(out.tableau == c.result, || format!("tableau {:?}", out.tableau.rows()))?;
            ensure((out.corner, out.alpha) == (c.corner, c.alpha), || {
                format!("corner {:?} alpha {}", out.corner, out.alpha)
            })?;
            let back = reverse_hecke_insert(&out.tableau, out.corner, out.alpha).map_err(err)?;
            ensure(back == (c.tableau.clone(), c.letter), || "reverse insertion differs".into())?;
            Ok(format!("letter {} -> corner ({},{}), alpha {}", c.letter, c.corner.row, c.corner.col, c.alpha))
        });
    }
    for c in &h.word_pairs {
        r.check(format!("word-pair/{}", c.word), || {
            let w: Word = c.word.parse().map_err(err)?;
            let pair = insert_word(&w);
            ensure(pair.p == c.p && pair.q == c.q, || format!("got P {:?} Q {:?}", pair.p.rows(), pair.q.rows()))?;
            ensure(recover_word(&pair).map_err(err)? == w, || "recovered word differs".into())?;
            let d = build_growth(&matrix_rep(&w)).map_err(err)?;
            ensure(extract_pq(&d) == pair, || "growth diagram pair differs".into())?;
            Ok(format!("P {:?}", c.p.rows()))
        });
    }
    let j = fixtures::jdt();
    r.check("jdt/forward", || {
        let corners: CornerSet = j.forward.corners.iter().copied().collect();
        let out = jdt(&j.forward.tableau, &corners).map_err(err)?;
        ensure(out == j.forward.result, || format!("got {out:?}"))?;
        Ok(format!("outer {} inner {}", out.outer, out.inner))
    });
    r.check("jdt/reverse", || {
        let corners: CornerSet = j.reverse.corners.iter().copied().collect();
        let out = rev_jdt(&j.reverse.tableau, &corners).map_err(err)?;
        ensure(out == j.reverse.result, || format!("got {out:?}"))?;
        Ok(format!("outer {} inner {}", out.outer, out.inner))
    });
    r.check("jdt/prime-transform", || {
        let out = prime_transform(&j.prime.p).map_err(err)?;
        ensure(out == j.prime.p_prime, || format!("got {:?}", out.rows()))?;
        ensure(inverse_prime_transform(&out).map_err(err)? == j.prime.p, || "inverse differs".into())?;
        Ok(format!("{:?} -> {:?}", j.prime.p.rows(), out.rows()))
    });
    let rm = fixtures::row_move();
    r.check("row-move", || {
        let src = rm.source.to_filling().map_err(err)?;
        let tgt = rm.target.to_filling().map_err(err)?;
        let cert = crate::bijection::move_bottom_row_target(&src.shape).map_err(err)?;
        ensure(cert.rectangle == rm.rectangle, || format!("rectangle {:?}", cert.rectangle))?;
        let word_in = |f: &Filling| {
            let rect = &rm.rectangle;
            let t = RectangleFilling {
                height: rect.height(),
                width: rect.width(),
                ones: f.ones.iter().filter(|p| rect.contains(**p)).copied().collect(),
            };
            t.compressed_word().to_string()
        };
        ensure(word_in(&src) == rm.source_word, || format!("source word {}", word_in(&src)))?;
        let out = crate::bijection::f(&src).map_err(err)?;
        ensure(out == tgt, || format!("image ones {:?}", out.ones))?;
        ensure(word_in(&out) == rm.target_word, || format!("target word {}", word_in(&out)))?;
        ensure(f_inverse(&out, &src.shape).map_err(err)? == src, || "inverse differs".into())?;
        ensure(chain_stats(&out) == chain_stats(&src), || "chain statistics differ".into())?;
        Ok(format!("{} -> {}, stats {:?}", rm.source_word, rm.target_word, chain_stats(&src)))
    });
    let lf = fixtures::linked();
    r.check("linked/two-panel-transpose", || {
        let p: LinkedPartition = lf.example.partition.parse().map_err(err)?;
        let cells: BTreeSet<Pos> = lf.example.x_cells.iter().copied().collect();
        ensure(to_triangle_filling(&p).ones == cells, || "triangle filling differs".into())?;
        let img = transpose_bijection(&p).map_err(err)?;
        let want: LinkedPartition = lf.example.transpose_image.parse().map_err(err)?;
        ensure(img == want, || format!("got {img}"))?;
        let cells: BTreeSet<Pos> = lf.example.transpose_x_cells.iter().copied().collect();
        ensure(to_triangle_filling(&img).ones == cells, || "image triangle filling differs".into())?;
        Ok(format!("{p} -> {img}"))
    });
    r.check("linked/border-reading", || {
        let p: LinkedPartition = lf.example.partition.parse().map_err(err)?;
        let b = vacillating_border(&p).map_err(err)?;
        let want: Vec<(Partition, Option<u32>)> = lf
            .example
            .border
            .iter()
            .map(|(s, m)| {
                let parts: Vec<u32> = s.split(',').filter(|t| !t.is_empty()).map(|t| t.parse().unwrap()).collect();
                (Partition::new(parts).unwrap(), *m)
            })
            .collect();
        let got: Vec<(Partition, Option<u32>)> = b.steps.iter().map(|s| (s.shape.clone(), s.marked_row)).collect();
        ensure(got == want, || format!("got {b}"))?;
        Ok(b.to_string())
    });
    r.check("linked/standard-representation", || {
        let p: LinkedPartition = lf.standard_rep.partition.parse().map_err(err)?;
        let want: BTreeSet<(u32, u32)> = lf.standard_rep.arcs.iter().copied().collect();
        ensure(p.standard_rep() == want, || format!("got {:?}", p.standard_rep()))?;
        Ok(format!("{} arcs", want.len()))
    });
    let sh = fixtures::shapes();
    r.check("shapes/move-chain", || {
        let chain = shape_chain(&RowSpec::new(sh.move_chain[0].clone())).map_err(err)?;
        let got: Vec<Vec<u32>> = chain.into_iter().map(|s| s.lengths).collect();
        ensure(got == sh.move_chain, || format!("got {got:?}"))?;
        Ok(format!("{got:?}"))
    });
    r.check("shapes/classification", || {
        let moon = sh.moon.shape.to_polyomino().map_err(err)?;
        let stack = sh.stack.shape.to_polyomino().map_err(err)?;
        let (mt, st) = (moon.classify(), stack.classify());
        ensure(mt.contains(&ClassTag::Moon) && !mt.contains(&ClassTag::Stack), || format!("moon tags {mt:?}"))?;
        ensure(st.contains(&ClassTag::Stack), || format!("stack tags {st:?}"))?;
        let mut a: Vec<usize> = moon.rows().values().map(|v| v.len()).collect();
        let mut b: Vec<usize> = stack.rows().values().map(|v| v.len()).collect();
        a.sort_unstable();
        b.sort_unstable();
        ensure(a == b, || "row lengths differ".into())?;
        Ok(format!("moon {mt:?}; stack {st:?}"))
    });
    for c in fixtures::arbitrary_row_moves().cases {
        r.check(format!("chain-stats/{}", c.name), || {
            let f = c.source.to_filling().map_err(err)?;
            let s = chain_stats(&f);
            ensure((s.ne, s.se) == (c.source_stats.ne, c.source_stats.se), || format!("got {s:?}"))?;
            Ok(format!("ne={} se={}", s.ne, s.se))
        });
    }
}

// ---------------------------------------------------------------------------------------------
// words

/// Every word of length at most `max_len` over `{1, ..., alphabet}`, shortest first.
pub fn all_words(max_len: usize, alphabet: u32) -> Vec<Word> {
    let mut out = vec![Word::default()];
    let mut level = vec![Vec::<u32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * alphabet as usize);
        for w in &level {
            for a in 1..=alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Word));
        level = next;
    }
    out
}

fn growth_suite(r: &mut Runner, p: &VerifyParams) {
    let words = all_words(p.word_max_len, p.word_alphabet);
    r.check("growth-equals-insertion", || {
        let bad: Vec<String> = words
            .par_iter()
            .filter_map(|w| {
                let d = build_growth(&matrix_rep(w)).ok()?;
                (extract_pq(&d) != insert_word(w)).then(|| w.to_string())
            })
            .collect();
        let built = words.par_iter().filter(|w| build_growth(&matrix_rep(w)).is_ok()).count();
        ensure(built == words.len(), || format!("{} diagrams failed to build", words.len() - built))?;
        ensure(bad.is_empty(), || format!("{} words differ, first {}", bad.len(), bad[0]))?;
        Ok(format!("{} words of length <= {} over 1..={}", words.len(), p.word_max_len, p.word_alphabet))
    });
}

fn lis_lds_suite(r: &mut Runner, p: &VerifyParams) {
    let words = all_words(p.word_max_len, p.word_alphabet);
    r.check("lis-lds-equal-tableau-shape", || {
        let bad: Vec<&Word> = words.par_iter().filter(|w| lis_lds_via_tableau(w) != (lis(w), lds(w))).collect();
        ensure(bad.is_empty(), || format!("{} words differ, first {}", bad.len(), bad[0]))?;
        Ok(format!("{} words", words.len()))
    });
}

// ---------------------------------------------------------------------------------------------
// round trips

/// Every increasing tableau whose shape fits in `rows` x `cols` with entries at most `max`.
pub fn all_increasing_tableaux(rows: u32, cols: u32, max: u32) -> Vec<IncreasingTableau> {
    fn shapes(rows: u32, cols: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        fn rec(prefix: &mut Vec<u32>, left: u32, cap: u32, out: &mut Vec<Vec<u32>>) {
            if left == 0 {
                return;
            }
            for l in 1..=cap {
                prefix.push(l);
                out.push(prefix.clone());
                rec(prefix, left - 1, l, out);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), rows, cols, &mut out);
        out
    }
    fn fill(cells: &[(usize, usize)], k: usize, rows: &mut Vec<Vec<u32>>, max: u32, out: &mut Vec<IncreasingTableau>) {
        if k == cells.len() {
            out.push(IncreasingTableau::from_rows_unchecked(rows.clone()));
            return;
        }
        let (i, j) = cells[k];
        let lo = [j.checked_sub(1).map(|jj| rows[i][jj]), i.checked_sub(1).map(|ii| rows[ii][j])]
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(0);
        for v in lo + 1..=max {
            rows[i][j] = v;
            fill(cells, k + 1, rows, max, out);
        }
        rows[i][j] = 0;
    }
    let mut out = Vec::new();
    for s in shapes(rows, cols) {
        let cells: Vec<(usize, usize)> =
            s.iter().enumerate().flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j))).collect();
        let mut grid: Vec<Vec<u32>> = s.iter().map(|&l| vec![0; l as usize]).collect();
        fill(&cells, 0, &mut grid, max, &mut out);
    }
    out
}

fn roundtrips(r: &mut Runner, p: &VerifyParams) {
    r.check("hecke-insert-reverse", || {
        let tabs = all_increasing_tableaux(p.tableau_rows, p.tableau_cols, p.tableau_max_entry);
        let mut n = 0;
        for t in &tabs {
            for x in 1..=p.tableau_max_entry {
                let out = hecke_insert(t, x).map_err(err)?;
                let back = reverse_hecke_insert(&out.tableau, out.corner, out.alpha).map_err(err)?;
                ensure(back == (t.clone(), x), || format!("{:?} with {x}", t.rows()))?;
                n += 1;
            }
        }
        Ok(format!("{} tableaux, {n} insertions", tabs.len()))
    });
    let words = all_words(p.word_max_len, p.word_alphabet);
    r.check("insert-word-recover", || {
        let bad: Vec<&Word> =
            words.par_iter().filter(|w| recover_word(&insert_word(w)).ok().as_ref() != Some(*w)).collect();
        ensure(bad.is_empty(), || format!("{} words fail, first {}", bad.len(), bad[0]))?;
        Ok(format!("{} words", words.len()))
    });
    r.check("phi-inverse", || {
        let mut total = 0;
        for h in 1..=p.rect_max_height {
            for w in 1..=p.rect_max_width {
                let fills = enumerate_fillings(&Polyomino::rectangle(h, w), &Mode::All);
                let mut images = BTreeSet::new();
                for f in &fills {
                    let t = RectangleFilling { height: h, width: w, ones: f.ones.clone() };
                    let img = phi(&t).map_err(err)?;
                    ensure(phi_inverse(&img).map_err(err)? == t, || format!("{h}x{w} {:?}", t.ones))?;
                    ensure(phi(&phi_inverse(&t).map_err(err)?).map_err(err)? == t, || {
                        format!("{h}x{w} inverse {:?}", t.ones)
                    })?;
                    images.insert(img.ones);
                }
                ensure(images.len() == fills.len(), || format!("{h}x{w} not injective"))?;
                total += fills.len();
            }
        }
        Ok(format!("{total} rectangle fillings up to {}x{}", p.rect_max_height, p.rect_max_width))
    });
    r.check("growth-squares-backward", || {
        let results: Vec<std::result::Result<usize, String>> = words
            .par_iter()
            .map(|w| {
                let d = build_growth(&matrix_rep(w)).map_err(err)?;
                let sq = d.squares();
                for s in &sq {
                    let (gamma, top) = forward_square(s).map_err(err)?;
                    let back = backward_square(&gamma, &s.mu, &s.nu, top).map_err(err)?;
                    ensure(back == *s, || format!("word {w}: square {s:?}"))?;
                }
                let grid = unbuild_growth(&d.border()).map_err(err)?;
                ensure(grid == matrix_rep(w), || format!("word {w}: border reconstruction"))?;
                Ok(sq.len())
            })
            .collect();
        let mut squares = 0;
        for res in results {
            squares += res?;
        }
        Ok(format!("{squares} squares from {} diagrams", words.len()))
    });
}

// ---------------------------------------------------------------------------------------------
// stack polyominoes

/// Partitions (weakly decreasing part lists) of every total from 1 to `max`.
pub fn row_multisets(max: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: u32, cap: u32, out: &mut Vec<Vec<u32>>) {
        for l in (1..=cap.min(left)).rev() {
            prefix.push(l);
            out.push(prefix.clone());
            rec(prefix, left - l, l, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max, max, &mut out);
    out.sort();
    out
}

/// Every arrangement of `parts` into a unimodal sequence, i.e. every stack polyomino with these
/// row lengths.
pub fn stack_orderings(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut v = parts.to_vec();
    v.sort_unstable();
    let mut out = Vec::new();
    loop {
        if RowSpec::new(v.clone()).is_unimodal() {
            out.push(v.clone());
        }
        // next lexicographic permutation
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
    }
    out
}

fn sharded<T: Clone>(items: &[T], shard: Shard) -> Vec<T> {
    items.iter().enumerate().filter(|(i, _)| *i as u32 % shard.count == shard.index).map(|(_, x)| x.clone()).collect()
}

/// Checks one bottom-row move exhaustively; returns the number of fillings.
fn check_move(spec: &[u32]) -> std::result::Result<usize, String> {
    let src = Polyomino::from_row_spec(&RowSpec::new(spec.to_vec())).map_err(err)?;
    let cert = crate::bijection::move_bottom_row_target(&src).map_err(err)?;
    let counter_src = ChainCounter::new(&src);
    let counter_tgt = ChainCounter::new(&cert.target);
    let fills = enumerate_fillings(&src, &Mode::All);
    let mut images = BTreeSet::new();
    for m in &fills {
        let out = relocate_row(m, &cert).map_err(err)?;
        ensure(counter_tgt.stats(&out) == counter_src.stats(m), || format!("{spec:?}: stats differ for {:?}", m.ones))?;
        ensure(out.empty_columns() == m.empty_columns(), || format!("{spec:?}: empty columns differ"))?;
        ensure(unrelocate_row(&out, &cert).map_err(err)? == *m, || format!("{spec:?}: inverse differs"))?;
        images.insert(out.ones);
    }
    ensure(images.len() == fills.len(), || format!("{spec:?}: not injective"))?;
    Ok(fills.len())
}

fn row_orders(r: &mut Runner, p: &VerifyParams) {
    let multisets = sharded(&row_multisets(p.max_cells), p.shard);
    r.check("orderings-share-count-table", || {
        let results: Vec<std::result::Result<usize, String>> = multisets
            .par_iter()
            .map(|parts| {
                let orders = stack_orderings(parts);
                let mut tables = orders.iter().map(|o| count_table(&Polyomino::left_justified(o), &Mode::All));
                let first = tables.next().unwrap();
                for (o, t) in orders.iter().skip(1).zip(tables) {
                    ensure(t == first, || format!("{o:?} differs from {:?}", orders[0]))?;
                }
                Ok(orders.len())
            })
            .collect();
        let mut shapes = 0;
        for res in results {
            shapes += res?;
        }
        Ok(format!("{} row multisets, {shapes} stack shapes, <= {} cells", multisets.len(), p.max_cells))
    });
    r.check("bottom-row-move-bijection", || {
        let specs: Vec<Vec<u32>> =
            multisets.iter().flat_map(|m| stack_orderings(m)).filter(|o| o.iter().any(|&x| x > o[0])).collect();
        let results: Vec<std::result::Result<usize, String>> = specs.par_iter().map(|s| check_move(s)).collect();
        let mut fillings = 0;
        for res in results {
            fillings += res?;
        }
        Ok(format!("{} moves, {fillings} fillings", specs.len()))
    });
}

fn symmetry(r: &mut Runner, p: &VerifyParams) {
    let multisets = sharded(&row_multisets(p.max_cells), p.shard);
    r.check("stack-distribution-symmetric", || {
        let shapes: Vec<Vec<u32>> = multisets.iter().flat_map(|m| stack_orderings(m)).collect();
        let bad: Vec<&Vec<u32>> = shapes
            .par_iter()
            .filter(|s| {
                let poly = Polyomino::left_justified(s);
                let t = count_table(&poly, &Mode::All);
                let table_ok = t.iter().all(|(&(n, u, v), &c)| t.get(&(n, v, u)) == Some(&c));
                !table_ok || !gen_poly(&poly, &Mode::All).is_symmetric()
            })
            .collect();
        ensure(bad.is_empty(), || format!("{} asymmetric shapes, first {:?}", bad.len(), bad[0]))?;
        Ok(format!("{} stack shapes, <= {} cells", shapes.len(), p.max_cells))
    });
}

fn counterexamples(r: &mut Runner) {
    for c in fixtures::arbitrary_row_moves().cases {
        r.check(format!("arbitrary-row-move/{}", c.name), || {
            let src = c.source.to_filling().map_err(err)?;
            let tgt = c.target.to_filling().map_err(err)?;
            let s0 = chain_stats(&src);
            ensure((s0.ne, s0.se) == (c.source_stats.ne, c.source_stats.se), || format!("source {s0:?}"))?;
            let cert = relocation(&src.shape, c.moved_row_from, c.moved_row_to).map_err(err)?;
            ensure(cert.rectangle == c.rectangle, || format!("rectangle {:?}", cert.rectangle))?;
            ensure(cert.target == tgt.shape, || "target shape differs".into())?;
            let out = relocate_row(&src, &cert).map_err(err)?;
            ensure(out == tgt, || format!("image ones {:?}", out.ones))?;
            let s1 = chain_stats(&out);
            ensure((s1.ne, s1.se) == (c.target_stats.ne, c.target_stats.se), || format!("target {s1:?}"))?;
            Ok(format!("(ne,se) ({},{}) -> ({},{})", s0.ne, s0.se, s1.ne, s1.se))
        });
    }
}

fn row_sums(r: &mut Runner) {
    let c = fixtures::shapes().row_sums;
    r.check("fixed-row-sums-asymmetric", || {
        let shape = c.shape.to_polyomino().map_err(err)?;
        let table = count_table(&shape, &Mode::RowSums(c.row_sums.clone()));
        let mut parts = Vec::new();
        for want in &c.counts {
            let got = table.get(&(c.n, want.ne, want.se)).copied().unwrap_or(0);
            ensure(got == want.count, || format!("ne={} se={}: {got}", want.ne, want.se))?;
            parts.push(format!("N(ne={},se={})={got}", want.ne, want.se));
        }
        Ok(format!("row sums {:?}, n={}: {}", c.row_sums, c.n, parts.join(", ")))
    });
}

fn conventions(shape: &Polyomino) -> Vec<(String, Mode)> {
    let cols = shape.columns().len() as u32;
    let mut v = vec![("all".to_string(), Mode::All), ("cover".to_string(), Mode::Covering)];
    v.extend((0..=cols).map(|k| (format!("n={k}"), Mode::FixedN(k))));
    v
}

/// Conventions under which `shape` reproduces `printed`, with the mode=all polynomial.
fn match_printed(shape: &Polyomino, printed: &GenPoly) -> (Vec<String>, GenPoly) {
    let all = gen_poly(shape, &Mode::All);
    let mut hits = Vec::new();
    for (name, mode) in conventions(shape) {
        let g = if mode == Mode::All { all.clone() } else { gen_poly(shape, &mode) };
        if g == *printed {
            hits.push(name);
        }
    }
    (hits, all)
}

fn conjecture(r: &mut Runner) {
    let fam = fixtures::moon_family();
    let shapes: Vec<(String, Polyomino)> =
        fam.shapes.iter().map(|s| (s.name.clone(), s.shape.to_polyomino().expect("fixture shape"))).collect();
    r.check("moon-family-equal", || {
        let polys: Vec<GenPoly> = shapes.par_iter().map(|(_, p)| gen_poly(p, &Mode::All)).collect();
        for ((name, _), g) in shapes.iter().zip(&polys).skip(1) {
            ensure(*g == polys[0], || format!("{name} differs from {}", shapes[0].0))?;
        }
        let cover: Vec<GenPoly> = shapes.par_iter().map(|(_, p)| gen_poly(p, &Mode::Covering)).collect();
        ensure(cover.iter().all(|g| *g == cover[0]), || "covering-mode polynomials differ".into())?;
        Ok(format!("{} shapes, {} fillings each", shapes.len(), polys[0].total()))
    });
    r.note("moon-family-printed", || {
        let (hits, all) = match_printed(&shapes[0].1, &fam.printed);
        ensure(!hits.is_empty(), || format!("no convention reproduces the printed polynomial; mode=all gives {all}"))?;
        Ok(format!("printed polynomial reproduced under: {}", hits.join(", ")))
    });
    for a in fixtures::almost_moons().shapes {
        let shape = a.shape.to_polyomino().expect("fixture shape");
        r.check(format!("almost-moon-asymmetric/{}", a.name), || {
            let all = gen_poly(&shape, &Mode::All);
            let symmetric_modes: Vec<String> = conventions(&shape)
                .into_iter()
                .filter(|(_, m)| gen_poly(&shape, m).is_symmetric())
                .map(|(n, _)| n)
                .collect();
            ensure(!all.is_symmetric(), || {
                format!(
                    "computed G(x,y) = G(y,x) over {} fillings; symmetric under every convention tried: {}",
                    all.total(),
                    symmetric_modes.join(", ")
                )
            })?;
            Ok(format!("asymmetric over {} fillings", all.total()))
        });
        r.note(format!("almost-moon-printed/{}", a.name), || {
            let (hits, _) = match_printed(&shape, &a.printed);
            let cover = gen_poly(&shape, &Mode::Covering);
            ensure(!hits.is_empty(), || {
                format!(
                    "no convention reproduces the printed polynomial (total {}); cover mode gives total {}: {}",
                    a.printed.total(),
                    cover.total(),
                    cover
                )
            })?;
            Ok(format!("reproduced under: {}", hits.join(", ")))
        });
    }
}

// ---------------------------------------------------------------------------------------------
// linked partitions

fn linked_witnesses(r: &mut Runner) {
    let w = fixtures::linked().witness;
    let parse = |s: &str| s.parse::<LinkedPartition>().map_err(err);
    r.check("row_moves", || {
        let out = row_move_bijection(&parse(&w.partition)?).map_err(err)?;
        ensure(out == parse(&w.row_moves)?, || format!("got {out}"))?;
        Ok(out.to_string())
    });
    r.check("transpose", || {
        let out = transpose_bijection(&parse(&w.partition)?).map_err(err)?;
        ensure(out == parse(&w.transpose)?, || format!("got {out}"))?;
        Ok(out.to_string())
    });
    r.check("images-differ", || {
        ensure(parse(&w.row_moves)? != parse(&w.transpose)?, || "the two images coincide".into())?;
        Ok("the two bijections disagree on the witness".into())
    });
    r.check("other-order-differs", || {
        let out = row_move_bijection_reversed_order(&parse(&w.partition)?).map_err(err)?;
        ensure(out != parse(&w.row_moves)?, || "the other composition order also reproduces the witness".into())?;
        Ok(format!("undo-then-reflect gives {out}"))
    });
}

fn theorem_props(p: &LinkedPartition, q: &LinkedPartition) -> std::result::Result<(), String> {
    ensure((q.cross(), q.nest()) == (p.nest(), p.cross()), || format!("{p} -> {q}: statistics not swapped"))?;
    ensure(q.comp1() == p.comp1() && q.comp2() == p.comp2(), || format!("{p} -> {q}: components differ"))
}

fn random_linked(n: u32, rng: &mut StdRng) -> LinkedPartition {
    let shape = triangle(n);
    let mut ones = BTreeSet::new();
    for (c, rows) in shape.columns() {
        let k = rng.gen_range(0..=rows.len());
        if k > 0 {
            ones.insert(Pos::new(rows[k - 1], c));
        }
    }
    from_triangle_filling(&Filling { shape, ones }).expect("triangle fillings decode")
}

fn linked_suite(r: &mut Runner, p: &VerifyParams) {
    let by_n: Vec<(u32, Vec<LinkedPartition>)> = (1..=p.linked_max_n).map(|n| (n, all_linked_partitions(n))).collect();
    r.check("triangle-encoding", || {
        let mut total = 0;
        for (n, all) in &by_n {
            let distinct: BTreeSet<&LinkedPartition> = all.iter().collect();
            ensure(distinct.len() == all.len(), || format!("n={n}: decoding not injective"))?;
            for lp in all {
                ensure(from_triangle_filling(&to_triangle_filling(lp)).map_err(err)? == *lp, || format!("{lp}"))?;
                let s = chain_stats(&to_triangle_filling(lp));
                let want = (lp.standard_rep().len() as u32, lp.nest(), lp.cross());
                ensure((s.n, s.ne, s.se) == want, || format!("{lp}: stats {s:?}, want {want:?}"))?;
            }
            total += all.len();
        }
        Ok(format!("{total} linked partitions, n <= {}", p.linked_max_n))
    });
    for (name, map) in [
        ("row_moves", row_move_bijection as fn(&LinkedPartition) -> crate::Result<LinkedPartition>),
        ("transpose", transpose_bijection),
    ] {
        r.check(format!("swap-statistics/{name}"), || {
            let mut total = 0;
            for (n, all) in &by_n {
                let images: Vec<std::result::Result<LinkedPartition, String>> =
                    all.par_iter().map(|lp| map(lp).map_err(|e| format!("{lp}: {e}"))).collect();
                let mut seen = BTreeSet::new();
                for (lp, img) in all.iter().zip(images) {
                    let img = img?;
                    theorem_props(lp, &img)?;
                    seen.insert(img);
                }
                ensure(seen.len() == all.len(), || format!("n={n}: not injective"))?;
                total += all.len();
            }
            Ok(format!("{total} linked partitions, n <= {}", p.linked_max_n))
        });
    }
    r.check("border-width-height", || {
        for (_, all) in &by_n {
            for lp in all {
                let b = vacillating_border(lp).map_err(err)?;
                ensure((b.max_width(), b.max_height()) == (lp.nest(), lp.cross()), || format!("{lp}: {b}"))?;
            }
        }
        Ok("widest border partition = nest, tallest = cross".into())
    });
    r.check("random-samples", || {
        let mut rng = StdRng::seed_from_u64(p.seed);
        for _ in 0..p.random_samples {
            let n = rng.gen_range(1..=p.linked_random_max_n);
            let lp = random_linked(n, &mut rng);
            let s = chain_stats(&to_triangle_filling(&lp));
            ensure((s.n, s.ne, s.se) == (lp.standard_rep().len() as u32, lp.nest(), lp.cross()), || {
                format!("{lp}: {s:?}")
            })?;
            theorem_props(&lp, &row_move_bijection(&lp).map_err(err)?)?;
            theorem_props(&lp, &transpose_bijection(&lp).map_err(err)?)?;
        }
        Ok(format!("{} samples, n <= {}, seed {}", p.random_samples, p.linked_random_max_n, p.seed))
    });
}

// ---------------------------------------------------------------------------------------------
// K-Knuth

fn path_is_valid(path: &[Word], budget: &EquivBudget) -> bool {
    path.windows(2).all(|w| kknuth_neighbors(&w[0], budget).contains(&w[1]))
}

/// Restricting every word of a path to `[a, b]` keeps consecutive words equal or one relation apart.
fn restricted_path_is_valid(path: &[Word], a: u32, b: u32) -> bool {
    let loose = EquivBudget { max_len: usize::MAX, max_states: usize::MAX };
    path.windows(2).all(|w| {
        let (x, y) = (restrict(&w[0], a, b), restrict(&w[1], a, b));
        x == y || kknuth_neighbors(&x, &loose).contains(&y)
    })
}

fn kknuth_suite(r: &mut Runner, p: &VerifyParams) {
    let words = all_words(p.kknuth_max_len, p.kknuth_alphabet);
    let budget_for = |x: &Word, y: &Word| EquivBudget {
        max_len: x.len().max(y.len()) + p.kknuth_extra_len,
        max_states: p.kknuth_max_states,
    };
    let mut classes: HashMap<IncreasingTableau, Vec<Word>> = HashMap::new();
    for w in &words {
        classes.entry(insert_word(w).p).or_default().push(w.clone());
    }
    let pairs: Vec<(Word, Word)> = classes
        .values()
        .flat_map(|ws| {
            ws.iter().enumerate().flat_map(move |(i, x)| ws[i + 1..].iter().map(move |y| (x.clone(), y.clone())))
        })
        .collect();
    let search = Instant::now();
    let verdicts: Vec<(Word, Word, Verdict)> =
        pairs.par_iter().map(|(x, y)| (x.clone(), y.clone(), kknuth_equivalent(x, y, &budget_for(x, y)))).collect();
    let search_ms = search.elapsed().as_millis();
    r.check("hecke-equal-words-equivalent", || {
        let mut found = 0;
        let mut over_budget = Vec::new();
        for (x, y, v) in &verdicts {
            match v {
                Verdict::Equivalent { path } => {
                    ensure(path_is_valid(path, &budget_for(x, y)), || format!("{x} ~ {y}: invalid path"))?;
                    found += 1;
                }
                Verdict::NotFoundWithinBudget { .. } => over_budget.push(format!("{x}/{y}")),
            }
        }
        ensure(over_budget.is_empty(), || {
            format!(
                "{found} found, {} not found within budget (not a claim of inequivalence): {}",
                over_budget.len(),
                over_budget.join(" ")
            )
        })?;
        Ok(format!(
            "{found} pairs in {} classes of {} words in {search_ms} ms; budget max_len = length + {}, max_states = {}",
            classes.len(),
            words.len(),
            p.kknuth_extra_len,
            p.kknuth_max_states
        ))
    });
    r.check("word-equivalent-to-reading-word", || {
        let res: Vec<std::result::Result<(), String>> = words
            .par_iter()
            .map(|w| {
                let row = reading_word(&insert_word(w).p);
                match kknuth_equivalent(w, &row, &budget_for(w, &row)) {
                    Verdict::Equivalent { path } if path_is_valid(&path, &budget_for(w, &row)) => Ok(()),
                    Verdict::Equivalent { .. } => Err(format!("{w}: invalid path")),
                    Verdict::NotFoundWithinBudget { explored, .. } => {
                        Err(format!("{w} ~ {row} not found within budget ({explored} words visited)"))
                    }
                }
            })
            .collect();
        for x in res {
            x?;
        }
        Ok(format!("{} words", words.len()))
    });
    r.check("restriction-closure", || {
        let mut n = 0;
        for (x, y, v) in &verdicts {
            if let Verdict::Equivalent { path } = v {
                for a in 1..=p.kknuth_alphabet {
                    for b in a..=p.kknuth_alphabet {
                        ensure(restricted_path_is_valid(path, a, b), || format!("{x} ~ {y} restricted to [{a},{b}]"))?;
                        n += 1;
                    }
                }
            }
        }
        Ok(format!("{n} restricted derivations"))
    });
    r.check("chain-lengths-invariant", || {
        for (x, y, v) in &verdicts {
            if let Verdict::Equivalent { path } = v {
                let (a, b) = (lis(x), lds(x));
                ensure(path.iter().all(|w| (lis(w), lds(w)) == (a, b)), || format!("{x} ~ {y}: lis/lds change"))?;
            }
        }
        Ok("lis and lds constant along every derivation".into())
    });
}

/// Count tables of every stack ordering of `parts`, keyed by ordering (used by the CLI).
pub fn ordering_tables(parts: &[u32], shard: Shard) -> BTreeMap<Vec<u32>, crate::polyomino::CountTable> {
    stack_orderings(parts)
        .into_iter()
        .map(|o| {
            let t = count_table_shard(&Polyomino::left_justified(&o), &Mode::All, shard);
            (o, t)
        })
        .collect()
}

/// Applies [`to_ferrers`] to every filling of a stack shape and reports whether chain
/// statistics survive each step (used by the CLI `--certify` flag).
pub fn certify_chain(f: &Filling) -> std::result::Result<String, String> {
    let (out, chain) = to_ferrers(f).map_err(err)?;
    ensure(chain_stats(&out) == chain_stats(f), || "chain statistics changed".into())?;
    Ok(format!("{} moves, stats {:?}", chain.len(), chain_stats(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_shape_generators() {
        assert_eq!(all_words(2, 2).len(), 7);
        assert_eq!(row_multisets(4).len(), 1 + 2 + 3 + 5);
        assert_eq!(stack_orderings(&[1, 2, 3]), vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 3, 1], vec![3, 2, 1]]);
        assert_eq!(stack_orderings(&[2, 2]), vec![vec![2, 2]]);
        let t = all_increasing_tableaux(1, 2, 2);
        assert_eq!(t.len(), 1 + 2 + 1);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn fast_suites_pass() {
        let p = VerifyParams::default();
        for s in [Suite::Figures, Suite::Counterexamples, Suite::LinkedWitnesses] {
            let rep = run_suite(s, &p);
            assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
