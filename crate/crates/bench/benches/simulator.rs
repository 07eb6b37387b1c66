//! Hot-path benchmarks: analytic coincidence tables, Monte Carlo sampling
//! throughput, and linear-network composition.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use hyperbell_bench::{standard_coupling, standard_network};
use hyperbell_core::network::apply_device;
use hyperbell_core::{analytic_joint, baseline_source, mc_partial, DetectorGains, Device, Setup};

fn analytic_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("analytic_table");
    for setup in Setup::ALL {
        let network = standard_network(setup);
        group.bench_with_input(
            BenchmarkId::from_parameter(setup),
            &network,
            |b, network| b.iter(|| analytic_joint(black_box(network), &DetectorGains::uniform())),
        );
    }
    group.finish();
}

fn monte_carlo_throughput(c: &mut Criterion) {
    let network = standard_network(Setup::Polarization);
    let mut group = c.benchmark_group("monte_carlo");
    for &samples in &[1_000u64, 10_000] {
        group.throughput(Throughput::Elements(samples));
        group.bench_with_input(
            BenchmarkId::from_parameter(samples),
            &samples,
            |b, &samples| b.iter(|| mc_partial(black_box(&network), 7, 0, samples)),
        );
    }
    group.finish();
}

fn device_composition(c: &mut Criterion) {
    let ports = ["a1", "b1", "a2", "b2"];
    c.bench_function("compose_64_wave_plates", |b| {
        b.iter(|| {
            let mut map = baseline_source(standard_coupling());
            for k in 0..64usize {
                let device = Device::HalfWavePlate {
                    port: ports[k % ports.len()].into(),
                    angle: 0.1 * k as f64,
                };
                map = apply_device(&map, &device).unwrap();
            }
            map
        })
    });
    c.bench_function("build_polarization_network", |b| {
        b.iter(|| standard_network(Setup::Polarization))
    });
}

criterion_group!(
    benches,
    analytic_tables,
    monte_carlo_throughput,
    device_composition
);
criterion_main!(benches);
