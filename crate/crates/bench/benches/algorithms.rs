use criterion::{black_box, criterion_group, criterion_main, Criterion};

use stackfill::bijection::{phi, to_ferrers};
use stackfill::fixtures;
use stackfill::growth::{build_growth, matrix_rep};
use stackfill::hecke::insert_word;
use stackfill::knuth::kknuth_equivalent;
use stackfill::linked::{row_move_bijection, transpose_bijection};
use stackfill::polyomino::{chain_stats, gen_poly, gen_poly_shard};
use stackfill::{EquivBudget, LinkedPartition, Mode, Polyomino, RectangleFilling, Shard, Word};

fn insertion(c: &mut Criterion) {
    let w: Word = "3,2,4,1,2,1,4,3,5,2,6,1".parse().unwrap();
    c.bench_function("insert_word/12", |b| b.iter(|| insert_word(black_box(&w))));
    c.bench_function("build_growth/12", |b| b.iter(|| build_growth(&matrix_rep(black_box(&w))).unwrap()));
    let (x, y): (Word, Word) = ("2,1,3,2".parse().unwrap(), "2,3,1,2".parse().unwrap());
    let budget = EquivBudget::for_words(&x, &y);
    c.bench_function("kknuth_equivalent/4", |b| b.iter(|| kknuth_equivalent(&x, &y, &budget)));
}

fn fillings(c: &mut Criterion) {
    let rm = fixtures::row_move();
    let src = rm.source.to_filling().unwrap();
    c.bench_function("chain_stats/row-move", |b| b.iter(|| chain_stats(black_box(&src))));
    c.bench_function("to_ferrers/row-move", |b| b.iter(|| to_ferrers(black_box(&src)).unwrap()));
    let rect =
        RectangleFilling::new(4, 6, [(1, 1), (3, 2), (2, 3), (4, 4), (1, 6)].into_iter().map(Into::into).collect())
            .unwrap();
    c.bench_function("phi/4x6", |b| b.iter(|| phi(black_box(&rect)).unwrap()));

    let stack = Polyomino::left_justified(&[2, 3, 4, 3, 1]);
    c.bench_function("gen_poly/stack-13", |b| b.iter(|| gen_poly(black_box(&stack), &Mode::All)));
    let moon = fixtures::moon_family().shapes[0].shape.to_polyomino().unwrap();
    let mut g = c.benchmark_group("gen_poly/moon-shard");
    g.sample_size(10);
    g.bench_function("1-of-8", |b| b.iter(|| gen_poly_shard(&moon, &Mode::All, Shard { index: 0, count: 8 })));
    g.finish();
}

fn linked(c: &mut Criterion) {
    let p: LinkedPartition = fixtures::linked().witness.partition.parse().unwrap();
    c.bench_function("row_move_bijection/16", |b| b.iter(|| row_move_bijection(black_box(&p)).unwrap()));
    c.bench_function("transpose_bijection/16", |b| b.iter(|| transpose_bijection(black_box(&p)).unwrap()));
}

criterion_group!(benches, insertion, fillings, linked);
criterion_main!(benches);
