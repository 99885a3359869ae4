//! Window construction with the rayon core at one worker and at every core.
//!
//! `cargo bench` measures the rayon build; `cargo bench --no-default-features`
//! measures the sequential fallback under the same ids.

use std::thread::available_parallelism;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use zzc_core::colim::{CellSearch, Window};
use zzc_core::rigid::{chi_diagram, RigidBounds, RigidWindow};
use zzc_core::sset::corpus;
use zzc_core::{par, Budget};

fn backend() -> &'static str {
    if par::is_parallel() {
        "rayon"
    } else {
        "sequential"
    }
}

fn jobs() -> Vec<usize> {
    let all = available_parallelism().map_or(1, |n| n.get());
    if all > 1 {
        vec![1, all]
    } else {
        vec![1]
    }
}

fn colim_window(c: &mut Criterion) {
    let x = corpus("delta:3").unwrap();
    let chi = chi_diagram(&x, 2);
    let mut group = c.benchmark_group(format!("colim_window/{}", backend()));
    group.sample_size(10);
    for j in jobs() {
        group.bench_with_input(BenchmarkId::new("chi_delta3_p2_len1", j), &j, |b, &j| {
            b.iter(|| {
                par::with_jobs(j, || {
                    Window::build(&chi.diagram, None, 1, Budget(4_000_000), CellSearch::Moves)
                        .unwrap()
                        .num_classes()
                })
            })
        });
    }
    group.finish();
}

fn rigid_window(c: &mut Criterion) {
    let x = corpus("circle").unwrap();
    let bounds = RigidBounds {
        budget: Budget(4_000_000),
        certify: false,
        ..RigidBounds::new(4, 3)
    };
    let mut group = c.benchmark_group(format!("rigid_window/{}", backend()));
    group.sample_size(10);
    for j in jobs() {
        group.bench_with_input(BenchmarkId::new("circle_p3", j), &j, |b, &j| {
            b.iter(|| {
                par::with_jobs(j, || {
                    RigidWindow::build(&x, 0, 0, 3, bounds)
                        .unwrap()
                        .num_classes()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, colim_window, rigid_window);
criterion_main!(benches);
