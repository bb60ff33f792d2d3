use std::collections::BTreeSet;

use proptest::prelude::*;

use stackfill::bijection::{f, f_inverse, from_ferrers, phi, phi_inverse, to_ferrers};
use stackfill::growth::{build_growth, extract_pq, matrix_rep};
use stackfill::hecke::{insert_word, lis_lds_via_tableau, recover_word};
use stackfill::knuth::{kknuth_neighbors, lds, lis};
use stackfill::linked::{
    from_triangle_filling, row_move_bijection, to_triangle_filling, transpose_bijection, triangle,
};
use stackfill::polyomino::{chain_stats, chain_stats_by_rectangles, gen_poly, gen_poly_shard, ClassTag};
use stackfill::tableau::standardize;
use stackfill::{ChainStats, EquivBudget, Filling, GenPoly, Mode, Polyomino, Pos, RectangleFilling, Shard, Word};

/// Longest chains by checking every subset of ones against the definition: rows strictly
/// monotone in column order and the bounding rectangle inside the shape.
fn brute_force_stats(fl: &Filling) -> ChainStats {
    let ones: Vec<Pos> = fl.ones.iter().copied().collect();
    let mut by_col = ones.clone();
    by_col.sort_by_key(|p| p.col);
    let (mut ne, mut se) = (0, 0);
    for mask in 1u32..(1 << by_col.len()) {
        let chain: Vec<Pos> = (0..by_col.len()).filter(|i| mask >> i & 1 == 1).map(|i| by_col[i]).collect();
        let (rlo, rhi) = (chain.iter().map(|p| p.row).min().unwrap(), chain.iter().map(|p| p.row).max().unwrap());
        let (clo, chi) = (chain[0].col, chain[chain.len() - 1].col);
        let inside = (rlo..=rhi).all(|r| (clo..=chi).all(|c| fl.shape.contains(Pos::new(r, c))));
        if !inside {
            continue;
        }
        if chain.windows(2).all(|w| w[0].row < w[1].row) {
            ne = ne.max(chain.len() as u32);
        }
        if chain.windows(2).all(|w| w[0].row > w[1].row) {
            se = se.max(chain.len() as u32);
        }
    }
    ChainStats { n: ones.len() as u32, ne, se }
}

fn word(max_len: usize, alphabet: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=alphabet, 0..=max_len).prop_map(Word)
}

fn unimodal(max_rows: usize, max_len: u32) -> impl Strategy<Value = Vec<u32>> {
    (prop::collection::vec(1..=max_len, 1..=max_rows), any::<prop::sample::Index>()).prop_map(|(mut v, peak)| {
        let k = peak.index(v.len());
        v.sort_unstable();
        let top = v.split_off(k);
        let mut out = v;
        out.extend(top.into_iter().rev());
        out
    })
}

/// A nested chain of column intervals stacked outward from the widest one.
fn moon(max_rows: usize, max_width: u32) -> impl Strategy<Value = Polyomino> {
    (1..=max_width, prop::collection::vec((any::<bool>(), any::<bool>(), any::<bool>()), 0..max_rows)).prop_map(
        |(w, steps)| {
            let (mut lo, mut hi) = (1u32, w);
            let mut rows = vec![(lo, hi)];
            for (shrink_left, shrink_right, on_top) in steps {
                if shrink_left && lo < hi {
                    lo += 1;
                }
                if shrink_right && lo < hi {
                    hi -= 1;
                }
                if on_top {
                    rows.push((lo, hi));
                } else {
                    rows.insert(0, (lo, hi));
                }
            }
            let cells =
                rows.iter().enumerate().flat_map(|(i, &(a, b))| (a..=b).map(move |c| Pos::new(i as u32 + 1, c)));
            Polyomino::from_cells(cells).unwrap()
        },
    )
}

fn filling_of(shape: Polyomino, picks: &[prop::sample::Index], density: &[bool]) -> Filling {
    let ones = shape
        .columns()
        .into_iter()
        .zip(picks.iter().zip(density))
        .filter(|(_, (_, &on))| on)
        .map(|((c, rows), (pick, _))| Pos::new(rows[pick.index(rows.len())], c))
        .collect();
    Filling::new(shape, ones).unwrap()
}

fn filling(shape: impl Strategy<Value = Polyomino>) -> impl Strategy<Value = Filling> {
    shape.prop_flat_map(|s| {
        let k = s.columns().len();
        (Just(s), prop::collection::vec(any::<prop::sample::Index>(), k), prop::collection::vec(any::<bool>(), k))
            .prop_map(|(s, picks, density)| filling_of(s, &picks, &density))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn standardize_is_idempotent_and_keeps_relative_order(w in word(10, 6)) {
        let s = standardize(&w);
        prop_assert_eq!(standardize(&s), s.clone());
        let distinct: BTreeSet<u32> = s.letters().iter().copied().collect();
        prop_assert_eq!(distinct, (1..=s.max_letter()).collect::<BTreeSet<u32>>());
        for i in 0..w.len() {
            for j in 0..w.len() {
                let (a, b) = (w.letters()[i], w.letters()[j]);
                prop_assert_eq!(a.cmp(&b), s.letters()[i].cmp(&s.letters()[j]));
            }
        }
    }

    #[test]
    fn insertion_round_trip(w in word(10, 6)) {
        prop_assert_eq!(recover_word(&insert_word(&w)).unwrap(), w);
    }

    #[test]
    fn growth_agrees_with_insertion(w in word(9, 6)) {
        prop_assert_eq!(extract_pq(&build_growth(&matrix_rep(&w)).unwrap()), insert_word(&w));
    }

    #[test]
    fn tableau_shape_gives_lis_and_lds(w in word(12, 6)) {
        prop_assert_eq!(lis_lds_via_tableau(&w), (lis(&w), lds(&w)));
    }

    #[test]
    fn kknuth_moves_are_symmetric_and_keep_chain_lengths(w in word(6, 4)) {
        let budget = EquivBudget { max_len: w.len() + 2, max_states: usize::MAX };
        for v in kknuth_neighbors(&w, &budget) {
            prop_assert_eq!((lis(&v), lds(&v)), (lis(&w), lds(&w)), "{} -> {}", w, v);
            prop_assert!(kknuth_neighbors(&v, &budget).contains(&w), "{} -> {} is not reversible", w, v);
        }
    }

    #[test]
    fn phi_round_trip(h in 1u32..=5, w in 1u32..=6, seed in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 6)) {
        let ones: BTreeSet<Pos> = (1..=w)
            .filter(|&c| seed[c as usize - 1].1)
            .map(|c| Pos::new(seed[c as usize - 1].0.index(h as usize) as u32 + 1, c))
            .collect();
        let t = RectangleFilling::new(h, w, ones).unwrap();
        let img = phi(&t).unwrap();
        prop_assert_eq!(phi_inverse(&img).unwrap(), t.clone());
        prop_assert_eq!(img.ones.len(), t.ones.len());
    }

    #[test]
    fn chain_stats_match_definition_on_stacks(fl in filling(unimodal(5, 5).prop_map(|l| Polyomino::left_justified(&l)))) {
        prop_assert_eq!(chain_stats(&fl), brute_force_stats(&fl));
    }

    #[test]
    fn chain_stats_match_definition_on_moons(fl in filling(moon(6, 6))) {
        prop_assert!(fl.shape.classify().contains(&ClassTag::Moon));
        prop_assert_eq!(chain_stats(&fl), brute_force_stats(&fl));
        prop_assert_eq!(chain_stats_by_rectangles(&fl, &fl.shape.maximal_rectangles()), chain_stats(&fl));
    }

    #[test]
    fn chain_stats_match_definition_on_almost_moons(
        which in 0usize..2,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 7),
        density in prop::collection::vec(any::<bool>(), 7),
    ) {
        let shape = stackfill::fixtures::almost_moons().shapes[which].shape.to_polyomino().unwrap();
        let fl = filling_of(shape, &picks, &density);
        prop_assert_eq!(chain_stats(&fl), brute_force_stats(&fl));
        let r = chain_stats(&fl.reflect_horizontal());
        prop_assert_eq!(r, brute_force_stats(&fl.reflect_horizontal()));
    }

    #[test]
    fn reflection_swaps_ne_and_se(fl in filling(moon(6, 6))) {
        let a = chain_stats(&fl);
        let b = chain_stats(&fl.reflect_horizontal());
        prop_assert_eq!((a.n, a.ne, a.se), (b.n, b.se, b.ne));
    }

    #[test]
    fn bottom_row_move_preserves_stats(fl in filling(unimodal(6, 5).prop_map(|l| Polyomino::left_justified(&l)))) {
        let (out, chain) = to_ferrers(&fl).unwrap();
        prop_assert!(out.shape.is_ferrers_french());
        prop_assert_eq!(chain_stats(&out), chain_stats(&fl));
        prop_assert_eq!(out.empty_columns(), fl.empty_columns());
        prop_assert_eq!(from_ferrers(&out, &chain).unwrap(), fl.clone());
        if let Ok(g) = f(&fl) {
            prop_assert_eq!(f_inverse(&g, &fl.shape).unwrap(), fl);
        }
    }

    #[test]
    fn linked_bijections_on_random_triangles(n in 1u32..=10, picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 10)) {
        let fl = filling_of(triangle(n), &picks.iter().map(|p| p.0).collect::<Vec<_>>(), &picks.iter().map(|p| p.1).collect::<Vec<_>>());
        let lp = from_triangle_filling(&fl).unwrap();
        prop_assert_eq!(to_triangle_filling(&lp), fl);
        for q in [row_move_bijection(&lp).unwrap(), transpose_bijection(&lp).unwrap()] {
            prop_assert_eq!((q.cross(), q.nest()), (lp.nest(), lp.cross()));
            prop_assert_eq!(q.comp1(), lp.comp1());
            prop_assert_eq!(q.comp2(), lp.comp2());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gen_poly_total_is_product_of_column_choices(l in unimodal(5, 4)) {
        let p = Polyomino::left_justified(&l);
        let expected: u64 = p.columns().values().map(|rows| rows.len() as u64 + 1).product();
        prop_assert_eq!(gen_poly(&p, &Mode::All).total(), expected);
    }

    #[test]
    fn shard_count_does_not_change_output(p in moon(5, 5), count in 1u32..=7, n in 0u32..=3) {
        for mode in [Mode::All, Mode::FixedN(n)] {
            let mut merged = GenPoly::default();
            for index in 0..count {
                merged.merge(&gen_poly_shard(&p, &mode, Shard { index, count }));
            }
            prop_assert_eq!(merged, gen_poly(&p, &mode));
        }
    }
}
