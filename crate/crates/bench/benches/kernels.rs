use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use encwalk_bench::{fixture_input, fixture_matrix, fixture_unitary};
use encwalk_core::fock::{output_distribution, permanent, ReckNetwork};
use encwalk_core::protocol::{run_round, LogicalInput};
use encwalk_core::security::{
    attack_success_probability, holevo_exact, random_attack_mc, symmetric_density,
};
use encwalk_core::walk::{WalkGraph, WalkSpec};

fn bench_permanent(c: &mut Criterion) {
    let mut group = c.benchmark_group("permanent");
    for n in [4usize, 8, 12, 16] {
        let a = fixture_matrix(n);
        group.bench_function(format!("ryser_n{n:02}"), |b| {
            b.iter(|| permanent(black_box(&a)).unwrap())
        });
    }
    group.finish();
}

fn bench_distribution(c: &mut Criterion) {
    let u = fixture_unitary(6);
    let input = fixture_input(6, 3);
    c.bench_function("output_distribution_m6_p3", |b| {
        b.iter(|| output_distribution(black_box(&u), black_box(&input)).unwrap())
    });
}

fn bench_reck(c: &mut Criterion) {
    let u = fixture_unitary(12);
    c.bench_function("reck_decompose_m12", |b| {
        b.iter(|| ReckNetwork::decompose(black_box(&u)).unwrap())
    });
    let net = ReckNetwork::decompose(&u).unwrap();
    c.bench_function("reck_recompose_m12", |b| {
        b.iter(|| net.recompose(black_box(12)).unwrap())
    });
}

fn bench_walk(c: &mut Criterion) {
    let graph = WalkGraph::cycle(16).unwrap();
    c.bench_function("walk_unitary_cycle16_t50", |b| {
        b.iter(|| {
            WalkSpec::hadamard(black_box(graph.clone()), 50)
                .unwrap()
                .unitary()
        })
    });
}

fn bench_protocol(c: &mut Criterion) {
    let bits = LogicalInput::from_bit_string("1011").unwrap();
    let u = fixture_unitary(4);
    c.bench_function("protocol_round_m4_d8", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        b.iter(|| run_round(black_box(&bits), 8, black_box(&u), &mut rng).unwrap())
    });
}

fn bench_security(c: &mut Criterion) {
    let mut group = c.benchmark_group("security");
    group.sample_size(20);
    group.bench_function("holevo_exact_m6_d256", |b| {
        b.iter(|| holevo_exact(black_box(6), black_box(256)).unwrap())
    });
    group.bench_function("symmetric_density_m30_d1024", |b| {
        b.iter(|| symmetric_density(black_box(30), black_box(1024)).unwrap())
    });
    group.bench_function("p_av_m200_d1024", |b| {
        b.iter(|| attack_success_probability(black_box(200), black_box(1024)))
    });
    let bits = LogicalInput::from_bit_string("1100").unwrap();
    group.bench_function("attack_mc_m4_d16_100k", |b| {
        b.iter(|| random_attack_mc(4, 16, black_box(&bits), 100_000, 5).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_permanent,
    bench_distribution,
    bench_reck,
    bench_walk,
    bench_protocol,
    bench_security
);
criterion_main!(benches);
