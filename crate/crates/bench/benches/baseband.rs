use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cofdm_core::channel::{ChannelSpec, NoiseRef};
use cofdm_core::conv::{conv_encode, depuncture, puncture, ConvParams, PunctureConfig};
use cofdm_core::mapping::{demap_hard_symbols, demap_soft, map_bits, Scheme};
use cofdm_core::ofdm::{Ofdm, OfdmParams};
use cofdm_core::rs::{RsCode, RsParams};
use cofdm_core::sim::{run_uncoded_scenario, Mode, ScenarioConfig};
use cofdm_core::viterbi::viterbi_decode;
use cofdm_core::Iq;

fn bench_reed_solomon(c: &mut Criterion) {
    let code = RsCode::new(RsParams::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let msg: Vec<u8> = (0..223).map(|_| rng.random()).collect();
    let clean = code.encode(&msg).unwrap();
    let mut corrupted = clean.clone();
    let mut positions: Vec<usize> = (0..255).collect();
    positions.shuffle(&mut rng);
    for &p in positions.iter().take(16) {
        corrupted[p] ^= rng.random_range(1..=255u8);
    }

    let mut group = c.benchmark_group("reed_solomon");
    group.throughput(Throughput::Bytes(223));
    group.bench_function("encode_255_223", |b| b.iter(|| code.encode(&msg).unwrap()));
    group.bench_function("decode_clean", |b| b.iter(|| code.decode(&clean).unwrap()));
    group.bench_function("decode_16_errors", |b| {
        b.iter(|| code.decode(&corrupted).unwrap())
    });
    group.finish();
}

fn bench_inner_code(c: &mut Criterion) {
    let params = ConvParams::default();
    let punct = PunctureConfig::rate_3_4();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let bits: Vec<u8> = (0..2040).map(|_| rng.random_range(0..2u8)).collect();
    let mother = conv_encode(&bits, &params).unwrap();
    let kept = puncture(&mother, &punct).unwrap();
    let soft: Vec<f64> = kept.iter().map(|&b| if b == 0 { 1.0 } else { -1.0 }).collect();
    let depunct = depuncture(&soft, &punct).unwrap();

    let mut group = c.benchmark_group("inner_code");
    group.throughput(Throughput::Elements(bits.len() as u64));
    group.bench_function("conv_encode_2040", |b| {
        b.iter(|| conv_encode(&bits, &params).unwrap())
    });
    group.bench_function("viterbi_2040", |b| {
        b.iter(|| viterbi_decode(&depunct, &params).unwrap())
    });
    group.finish();
}

fn bench_mapping(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let bits: Vec<u8> = (0..60_000).map(|_| rng.random_range(0..2u8)).collect();
    let iq = map_bits(&bits, Scheme::Qam64).unwrap();

    let mut group = c.benchmark_group("mapping_qam64");
    group.throughput(Throughput::Elements(iq.len() as u64));
    group.bench_function("map_10k_symbols", |b| {
        b.iter(|| map_bits(&bits, Scheme::Qam64).unwrap())
    });
    group.bench_function("demap_hard_10k", |b| {
        b.iter(|| demap_hard_symbols(&iq, Scheme::Qam64))
    });
    group.bench_function("demap_soft_10k", |b| {
        b.iter(|| demap_soft(&iq, Scheme::Qam64, 0.01).unwrap())
    });
    group.finish();
}

fn bench_ofdm(c: &mut Criterion) {
    let params = OfdmParams::default();
    let ofdm = Ofdm::new(params).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cells: Vec<Iq> = (0..params.active_carriers)
        .map(|_| Iq::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let frame = ofdm.modulate(&cells).unwrap();

    let mut group = c.benchmark_group("ofdm_2k");
    group.throughput(Throughput::Elements(params.active_carriers as u64));
    group.bench_function("modulate_symbol", |b| {
        b.iter(|| ofdm.modulate(&cells).unwrap())
    });
    group.bench_function("demodulate_symbol", |b| {
        b.iter(|| ofdm.demodulate(&frame.samples).unwrap())
    });
    group.finish();
}

fn bench_scenarios(c: &mut Criterion) {
    let cfg = ScenarioConfig {
        mode: Mode::Uncoded,
        scheme: Scheme::Qam64,
        n_symbols: 10_500,
        channel: ChannelSpec {
            noise_ref: NoiseRef::Ebn0Db,
            noise_value_db: Some(12.0),
            ..ChannelSpec::default()
        },
        seed: 5,
        ..ScenarioConfig::default()
    };

    let mut group = c.benchmark_group("scenario");
    group.throughput(Throughput::Elements(10_500));
    group.bench_function("uncoded_qam64_10500", |b| {
        b.iter(|| run_uncoded_scenario(&cfg).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_reed_solomon,
    bench_inner_code,
    bench_mapping,
    bench_ofdm,
    bench_scenarios
);
criterion_main!(benches);
