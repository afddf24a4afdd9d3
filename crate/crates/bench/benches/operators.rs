use criterion::{black_box, criterion_group, criterion_main, Criterion};

use level0::fourier::{self, FourierConfig};
use level0::params::{enumerate_parameters, enumerate_sign_characters};
use level0::rho_iota::{rho_iota_sym, SplitPair};
use level0::sweeps::{cle_instances, cle_sweep};
use level0::tame::enumerate_tame_characters;
use level0::weylrep::{character_value, factor_labels};
use level0::{ClassFunction, Factor, GroupShape, Mode};

fn character_tables(c: &mut Criterion) {
    for f in [Factor::sym(5), Factor::weyl(3)] {
        let labels = factor_labels(f);
        c.bench_function(&format!("mn_table_{:?}_{}", f.kind, f.rank).to_lowercase(), |b| {
            b.iter(|| {
                let mut sum = 0i64;
                for irr in &labels {
                    for class in &labels {
                        sum += character_value(black_box(irr), black_box(class));
                    }
                }
                sum
            })
        });
    }
}

fn rho_iota(c: &mut Criterion) {
    let f = ClassFunction::trivial(&GroupShape::new(vec![Factor::sym(2), Factor::sym(2)]));
    c.bench_function("rho_iota_sym_2_2", |b| b.iter(|| rho_iota_sym(SplitPair::new(2, 2), black_box(&f)).unwrap()));
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_q3_n5_2n8", |b| {
        b.iter(|| {
            let chis = enumerate_tame_characters(3, 8, 5).unwrap();
            chis.iter().map(|chi| enumerate_parameters(chi, Mode::Discrete).len()).sum::<usize>()
        })
    });
}

fn fourier_transform(c: &mut Criterion) {
    let chi = &enumerate_tame_characters(3, 8, 5).unwrap()[0];
    let psi = enumerate_parameters(chi, Mode::Discrete)
        .into_iter()
        .max_by_key(|p| p.n_blocks())
        .unwrap();
    let eps = enumerate_sign_characters(&psi);
    let cfg = FourierConfig::default();
    c.bench_function("fourier_all_eps", |b| {
        b.iter(|| {
            for e in &eps {
                black_box(fourier::fourier(&psi, e, &cfg).unwrap());
            }
        })
    });
}

fn localization(c: &mut Criterion) {
    let inst: Vec<_> = cle_instances(3, 1).unwrap().into_iter().take(16).collect();
    c.bench_function("cle_sweep_q3_rank1", |b| b.iter(|| cle_sweep(black_box(&inst)).unwrap()));
}

criterion_group!(benches, character_tables, rho_iota, enumeration, fourier_transform, localization);
criterion_main!(benches);
