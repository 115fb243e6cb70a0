use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use meshct_core::par;
use meshct_core::tilting_lab::{cartan_data, mutate, start_module, MeshAlgebra};
use meshct_core::Q;

fn start_and_cartan(mesh: &MeshAlgebra<Q>) -> usize {
    let t = start_module(mesh).unwrap();
    let data = cartan_data(mesh, &t).unwrap();
    data.c_tilde.entries.len()
}

fn mutate_first_free_orbit(mesh: &MeshAlgebra<Q>) -> usize {
    let t = start_module(mesh).unwrap();
    let o = (0..t.orbits.len()).find(|&o| !t.orbit_is_projective(o)).unwrap();
    let (star, _) = mutate(mesh, &t, o).unwrap();
    star.self_extension_dim(&mesh.algebra)
}

pub fn criterion_benchmark(c: &mut Criterion) {
    let b3 = MeshAlgebra::<Q>::from_tag("B3").unwrap();
    let f4 = MeshAlgebra::<Q>::from_tag("F4").unwrap();

    par::force_sequential(true);
    c.bench_function("b3 start+cartan sequential", |b| b.iter(|| start_and_cartan(black_box(&b3))));
    c.bench_function("b3 mutate sequential", |b| b.iter(|| mutate_first_free_orbit(black_box(&b3))));
    c.bench_function("f4 start+cartan sequential", |b| b.iter(|| start_and_cartan(black_box(&f4))));

    par::force_sequential(false);
    c.bench_function("b3 start+cartan parallel", |b| b.iter(|| start_and_cartan(black_box(&b3))));
    c.bench_function("b3 mutate parallel", |b| b.iter(|| mutate_first_free_orbit(black_box(&b3))));
    c.bench_function("f4 start+cartan parallel", |b| b.iter(|| start_and_cartan(black_box(&f4))));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = criterion_benchmark
}
criterion_main!(benches);
