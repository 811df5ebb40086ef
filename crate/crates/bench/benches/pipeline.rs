use criterion::{black_box, criterion_group, criterion_main, Criterion};
use isofib_core::families::{build_spec, SpecKind};
use isofib_core::fibration::moebius::jmap_equal_up_to_moebius;
use isofib_core::homog::HomogPoly;
use isofib_core::rat::Rat;
use isofib_core::sym::suite::run_symbolic_suite;
use isofib_core::unipoly::{gcd_free_basis, squarefree_decompose, UniPoly};

fn h(coeffs: &[i64], d: usize) -> HomogPoly {
    HomogPoly::new(UniPoly::from_ints("t", coeffs), d)
}

fn generic_kind() -> SpecKind {
    SpecKind::Generic {
        a: h(&[-1, 0, 0, 0, 1], 4),
        b: h(&[0, 0, 0, 0, 1], 4),
        c: h(&[-16, 0, 0, 0, 1], 4),
    }
}

fn bench_classification(c: &mut Criterion) {
    let fam = build_spec(&generic_kind()).unwrap();
    c.bench_function("classify generic K3 family", |b| {
        b.iter(|| black_box(&fam.x).fiber_configuration().unwrap())
    });
    let chl = build_spec(&SpecKind::CHL14 {
        alpha: h(&[1, 0, 2], 2),
        beta: h(&[3, 1, 1], 2),
        gamma: h(&[2, 0, 1], 2),
    })
    .unwrap();
    c.bench_function("classify rho = t0 t1 family", |b| {
        b.iter(|| black_box(&chl.x).fiber_configuration().unwrap())
    });
}

fn bench_symbolic_suite(c: &mut Criterion) {
    c.bench_function("symbolic isogeny suite", |b| {
        b.iter(|| run_symbolic_suite().unwrap())
    });
}

fn bench_polynomials(c: &mut Criterion) {
    let p = UniPoly::from_ints("t", &[0, 1])
        .mul(&UniPoly::from_ints("t", &[-1, 1]).pow(3))
        .mul(&UniPoly::from_ints("t", &[1, 0, 1]).pow(2))
        .mul(&UniPoly::from_ints("t", &[-3, 1, 2]));
    c.bench_function("squarefree decomposition", |b| {
        b.iter(|| squarefree_decompose(black_box(&p)).unwrap())
    });
    let inputs = vec![
        UniPoly::from_ints("t", &[-1, 0, 0, 0, 1]).mul(&UniPoly::from_ints("t", &[-16, 0, 0, 0, 1])),
        UniPoly::from_ints("t", &[-16, 0, 0, 0, 1]).mul(&UniPoly::from_ints("t", &[2, 3, 1])),
        UniPoly::from_ints("t", &[2, 3, 1]).pow(2),
    ];
    c.bench_function("gcd-free basis", |b| {
        b.iter(|| gcd_free_basis(black_box(&inputs)))
    });
}

fn bench_jmap(c: &mut Criterion) {
    use isofib_core::families::kummer::{kummer_models, MuTriple};
    let mu = MuTriple::new(Rat::from_int(2), Rat::from_int(3), Rat::from_int(7)).unwrap();
    let km = kummer_models(&mu).unwrap();
    let kmd = kummer_models(&km.mu_dual).unwrap();
    c.bench_function("j-map equivalence up to Moebius", |b| {
        b.iter(|| jmap_equal_up_to_moebius(black_box(&km.y), black_box(&kmd.y)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_classification,
    bench_symbolic_suite,
    bench_polynomials,
    bench_jmap
);
criterion_main!(benches);
