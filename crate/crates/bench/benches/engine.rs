use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stackcoh::fgab::{smith_normal_form, IntMatrix};
use stackcoh::picard::{gz_sequence, Pic2Group, StrictMor};
use stackcoh::prestack::{cohomology, Mode, Prestack};
use stackcoh::site::{SimplicialComplex, Site};
use stackcoh::{FgAbGroup, SparseMatrix};

fn random_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(-9..=9)).collect()).collect();
    IntMatrix::from_i64(&rows)
}

fn snf(c: &mut Criterion) {
    for n in [8, 16, 32] {
        let m = random_matrix(n, n as u64);
        c.bench_function(&format!("snf {n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&m))));
    }
}

fn rp2(c: &mut Criterion) {
    let site = Site::simplicial(&SimplicialComplex::projective_plane());
    let z = Prestack::constant(site.space(), &Pic2Group::discrete(&FgAbGroup::free(1)));
    let phi = Prestack::constant(site.space(), &Pic2Group::phi());
    c.bench_function("rp2 constant Z, degrees 0..=2", |b| {
        b.iter(|| cohomology(&site, black_box(&z), Mode::Cech, 0, 2, None).unwrap())
    });
    c.bench_function("rp2 constant phi, degrees 0..=2", |b| {
        b.iter(|| cohomology(&site, black_box(&phi), Mode::Cech, 0, 2, None).unwrap())
    });
}

fn gz(c: &mut Criterion) {
    let phi = Pic2Group::phi();
    let f = StrictMor::new(&phi, &phi, SparseMatrix::from_rows_i64(&[vec![0]], 1), SparseMatrix::from_rows_i64(&[vec![2]], 1))
        .unwrap();
    c.bench_function("gz sequence of phi times 2", |b| b.iter(|| gz_sequence(black_box(&f))));
}

criterion_group!(benches, snf, rp2, gz);
criterion_main!(benches);
