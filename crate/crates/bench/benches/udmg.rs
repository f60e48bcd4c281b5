use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use udmg_core::codes::{duplicate, first_column_code};
use udmg_core::curve::{genus0_udmg, goppa_udmg, line_points, BaseBasis};
use udmg_core::waveform::{audit_product_distance, build_scheme, gap_exhaustive, snr};
use udmg_core::{example, make_field, FqMatrix};

fn field_and_linalg(c: &mut Criterion) {
    let f = make_field(2, 8).unwrap();
    let data: Vec<u32> = (0..64 * 64).map(|i| (i * 37 + 11) % 256).collect();
    let m = FqMatrix::new(&f, 64, 64, data).unwrap();
    c.bench_function("rank 64x64 over GF(2^8)", |b| b.iter(|| black_box(&m).rank()));
    c.bench_function("GF(2^8) full multiplication table", |b| {
        b.iter(|| f.elements().map(|x| f.elements().fold(0u32, |acc, y| acc ^ f.mul(x, y))).fold(0, |a, v| a ^ v))
    });
}

fn verification(c: &mut Criterion) {
    let corrected = example::corrected_udmg(1);
    c.bench_function("verify genus-1 F_5 set", |b| b.iter(|| black_box(&corrected).verify()));
    let f = make_field(7, 1).unwrap();
    let base = genus0_udmg(&f, &line_points(&f), 2, BaseBasis::FirstPoint).unwrap().udmg;
    let dup = duplicate(&base, 3).unwrap();
    c.bench_function("verify duplicated q=7 set (L=24, g=2)", |b| b.iter(|| black_box(&dup).verify()));
}

fn construction(c: &mut Criterion) {
    let curve = example::curve();
    let points = example::points();
    let divisor = example::divisor().unwrap();
    c.bench_function("genus-1 Goppa construction over F_5", |b| {
        b.iter(|| goppa_udmg(&curve, &points, &divisor, BaseBasis::FirstPoint).unwrap())
    });
    let f = make_field(7, 1).unwrap();
    c.bench_function("genus-0 construction q=7 K=4", |b| {
        b.iter(|| genus0_udmg(&f, &line_points(&f), 4, BaseBasis::FirstPoint).unwrap())
    });
    let gc = goppa_udmg(&curve, &points, &divisor, BaseBasis::FirstPoint).unwrap();
    c.bench_function("first-column code distance", |b| b.iter(|| first_column_code(&gc.udmg).unwrap()));
}

fn modulation(c: &mut Criterion) {
    c.bench_function("gap check exhaustive q=5 N=4", |b| b.iter(|| gap_exhaustive(5, 4).unwrap()));
    let scheme = build_scheme(&example::corrected_udmg(1)).unwrap();
    c.bench_function("SNR genus-1 F_5 scheme", |b| b.iter(|| snr(&scheme).unwrap()));
    c.bench_function("product-distance audit genus-1 F_5 scheme", |b| {
        b.iter(|| audit_product_distance(&scheme).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = field_and_linalg, verification, construction, modulation
}
criterion_main!(benches);
