use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use quasiparabolic::exec::Execution;
use quasiparabolic::expansion::{build_composition_operator, plan_expansion, CauchyQuadrature};
use quasiparabolic::halfline::{assemble_dense_with, DEFAULT_DENSE_CAP, random_hardy_vector, HardyGrid, LinearMap};
use quasiparabolic::spectra::HessenbergSigmaMin;
use quasiparabolic::symbols::AnalyticSymbol;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn symbol() -> AnalyticSymbol {
    AnalyticSymbol::moebius_decay(Complex64::new(0.0, 2.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, -2.0))
        .unwrap()
}

fn dense_assembly(c: &mut Criterion) {
    let grid = HardyGrid::new(512, 50.0).unwrap();
    let plan = plan_expansion(&symbol(), &grid, 1e-4).unwrap();
    let op = build_composition_operator(&plan, &grid).unwrap();
    let mut g = c.benchmark_group("dense_assembly");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| assemble_dense_with(&op, exec, DEFAULT_DENSE_CAP).unwrap())
        });
    }
    g.finish();
}

fn sigma_min_batch(c: &mut Criterion) {
    let grid = HardyGrid::new(512, 50.0).unwrap();
    let plan = plan_expansion(&symbol(), &grid, 1e-4).unwrap();
    let op = build_composition_operator(&plan, &grid).unwrap();
    let m = assemble_dense_with(&op, Execution::default(), DEFAULT_DENSE_CAP).unwrap();
    let lambdas: Vec<Complex64> =
        (0..256).map(|k| Complex64::from_polar(0.8, k as f64 * std::f64::consts::TAU / 256.0)).collect();
    let mut g = c.benchmark_group("sigma_min_batch");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let h = HessenbergSigmaMin::new(&m, exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| h.sigma_min_many(&lambdas, exec)));
    }
    g.finish();
}

fn cauchy_oracle(c: &mut Criterion) {
    let grid = HardyGrid::new(1024, 100.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let v = random_hardy_vector(&grid, &mut rng);
    let mut g = c.benchmark_group("cauchy_oracle");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let q = CauchyQuadrature::new(&symbol(), 1.0, &grid).unwrap().with_execution(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| q.apply_half(v.half())));
    }
    g.finish();
}

criterion_group!(benches, dense_assembly, sigma_min_batch, cauchy_oracle);
criterion_main!(benches);
