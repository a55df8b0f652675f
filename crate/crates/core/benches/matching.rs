//! Sequential versus rayon-parallel matching and decomposition on disjoint
//! copies of the robot use case.

use std::hint::black_box;

use boxology::classifier::kautz_types;
use boxology::matcher::find_all_matches;
use boxology::{decompose_with, dsl, Catalog, DecomposeOptions, Exec, MatchOptions, PatternGraph, SourceFile, Taxonomy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const USECASE: &str = include_str!("../../../corpus/usecase2.box");

fn replicate(g: &PatternGraph, copies: usize) -> PatternGraph {
    let mut b = PatternGraph::builder(format!("{}x{copies}", g.name()));
    for i in 0..copies {
        for n in g.nodes() {
            let mut n = n.clone();
            n.id = format!("{}_{i}", n.id);
            b.push_node(n);
        }
        for e in g.edges() {
            b = b.edge(format!("{}_{i}", e.from), format!("{}_{i}", e.to));
        }
    }
    b.build().unwrap()
}

fn bench(c: &mut Criterion) {
    let base = dsl::parse(&SourceFile::memory(USECASE), &Taxonomy::default()).unwrap().remove(0);
    let catalog = Catalog::builtin();
    let patterns: Vec<&PatternGraph> = catalog.patterns().collect();

    let mut group = c.benchmark_group("match_all");
    for copies in [1, 4, 16] {
        let g = replicate(&base, copies);
        for exec in [Exec::Sequential, Exec::Parallel] {
            let opts = MatchOptions {
                exec,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), copies), &g, |b, g| {
                b.iter(|| find_all_matches(black_box(&patterns), g, opts))
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("decompose");
    for copies in [1, 4, 16] {
        let g = replicate(&base, copies);
        for exec in [Exec::Sequential, Exec::Parallel] {
            let opts = DecomposeOptions {
                exec,
                max_processes: usize::MAX,
            };
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), copies), &g, |b, g| {
                b.iter(|| decompose_with(black_box(g), catalog, opts).unwrap())
            });
        }
    }
    group.finish();

    let mut group = c.benchmark_group("kautz");
    let g = replicate(&base, 8);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| b.iter(|| kautz_types(black_box(&g), catalog, exec)));
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
