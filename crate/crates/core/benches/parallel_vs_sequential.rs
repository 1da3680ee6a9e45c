use coxnorm::category::{build_component, BuildOptions, FiniteAmbient};
use coxnorm::diagram::{isometries, SphericalType};
use coxnorm::leech::{extension_nodes, find_configuration, Leech, Selector};
use coxnorm::par;
use coxnorm::parabolic::ParabolicConfig;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use std::path::PathBuf;

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn finite_component(c: &mut Criterion) {
    let ty = |s: &str| s.parse::<SphericalType>().unwrap().standard_diagram();
    let (e8, a2) = (ty("E8"), ty("A2"));
    let pts = isometries(&a2, &e8).swap_remove(0).0;
    let amb = FiniteAmbient::trivial(e8);
    let cfg = ParabolicConfig::trivial(a2).unwrap();
    let mut g = c.benchmark_group("component_a2_in_e8");
    for (name, on) in modes() {
        par::set_parallel(on);
        g.bench_function(name, |b| {
            b.iter(|| build_component(&amb, &cfg, black_box(&pts), &BuildOptions::default()).unwrap())
        });
    }
    g.finish();
    par::set_parallel(true);
}

fn leech_extensions(c: &mut Criterion) {
    let dir = std::env::var_os("COXNORM_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("coxnorm-test-cache"));
    std::fs::create_dir_all(&dir).unwrap();
    let l = Leech::new(Some(dir)).unwrap();
    l.shell6().unwrap();
    let e6 = find_configuration(&l, &"E6".parse().unwrap(), Selector::FirstFound).unwrap();
    let mut g = c.benchmark_group("leech_extension_nodes_e6");
    g.sample_size(10);
    for (name, on) in modes() {
        par::set_parallel(on);
        g.bench_function(name, |b| b.iter(|| extension_nodes(&l, black_box(&e6)).unwrap()));
    }
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, finite_component, leech_extensions);
criterion_main!(benches);
