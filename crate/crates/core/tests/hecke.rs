use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torsion_sieve::algebra::{Field, SmallField};
use torsion_sieve::curves::moduli::{self, enumerate_moduli};
use torsion_sieve::curves::{Level, ModuliPoint};
use torsion_sieve::divisor::FormalDivisor;
use torsion_sieve::hecke::{
    aq, degree2_map, diamond_divisor, frobenius_trace, hecke_isogenies, hecke_tq, hecke_tq_char_q, hecke_tq_divisor,
    lift_point, required_degree, HeckeOptions,
};
use torsion_sieve::Error;

fn points(p: u64, k: u32, m: u64, n: u64) -> (SmallField, Vec<ModuliPoint<u32>>) {
    let f = SmallField::new(p, k).unwrap();
    let set = enumerate_moduli(&f, Level::new(m, n).unwrap(), 2500, 0).unwrap();
    (f, set.points)
}

fn opts_for(f: &SmallField, xs: &[ModuliPoint<u32>], q: u64) -> HeckeOptions {
    let r = xs
        .iter()
        .map(|x| required_degree(f, x, q, &HeckeOptions::default()).unwrap() as u64)
        .fold(1, torsion_sieve::arith::lcm);
    HeckeOptions { rel_degree: Some(r as u32), ..HeckeOptions::default() }
}

#[test]
fn t3_on_y1_5_has_degree_4_and_is_rational() {
    let (f, xs) = points(7, 1, 1, 5);
    assert!(!xs.is_empty());
    for x in &xs {
        let img = hecke_tq(&f, x, 3, &HeckeOptions::default()).unwrap();
        assert_eq!(img.degree(), 4);
        assert!(img.divisor.is_effective());
        assert!(img.is_galois_stable(), "{x:?}");
    }
}

#[test]
fn tq_commutes_with_diamonds() {
    for (p, m, n, q, a) in [(7u64, 1u64, 5u64, 3u64, 2i64), (19, 2, 10, 3, 3)] {
        let (f, xs) = points(p, 1, m, n);
        assert!(!xs.is_empty(), "Y1({m},{n})(F{p}) is empty");
        for x in xs.iter().take(6) {
            let dx = moduli::diamond(&f, x, a).unwrap();
            let opts = opts_for(&f, &[x.clone(), dx.clone()], q);
            let tx = hecke_tq(&f, x, q, &opts).unwrap();
            let tdx = hecke_tq(&f, &dx, q, &opts).unwrap();
            assert_eq!(tx.field, tdx.field);
            assert_eq!(diamond_divisor(&tx.field, &tx.divisor, a).unwrap(), tdx.divisor);
        }
    }
}

#[test]
fn trivial_diamonds() {
    for (p, m, n) in [(7u64, 1u64, 5u64), (19, 2, 10), (11, 1, 8)] {
        let (f, xs) = points(p, 1, m, n);
        for x in &xs {
            assert_eq!(&moduli::diamond(&f, x, 1).unwrap(), x);
            assert_eq!(&moduli::diamond(&f, x, n as i64 - 1).unwrap(), x);
        }
    }
}

#[test]
fn aq_is_linear_of_degree_zero() {
    let (f, xs) = points(7, 1, 1, 5);
    let (x, y) = (&xs[0], &xs[xs.len() - 1]);
    let opts = opts_for(&f, &[x.clone(), y.clone()], 3);
    let ax = aq(&f, &FormalDivisor::point(x.clone()), 3, &opts).unwrap();
    let ay = aq(&f, &FormalDivisor::point(y.clone()), 3, &opts).unwrap();
    let d: FormalDivisor<_> = [(x.clone(), 2), (y.clone(), -1)].into_iter().collect();
    let ad = aq(&f, &d, 3, &opts).unwrap();
    assert_eq!(ax.degree(), 0);
    assert_eq!(ad.degree(), 0);
    assert_eq!(ad.divisor, ax.divisor.scale(2).sub(&ay.divisor));
    // T_q on a divisor is the sum over its support.
    let td = hecke_tq_divisor(&f, &d, 3, &opts).unwrap();
    assert_eq!(td.degree(), 4);
}

#[test]
fn hecke_steps_have_duals() {
    let (f, xs) = points(7, 1, 1, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for x in xs.iter().take(3) {
        let r = required_degree(&f, x, 3, &HeckeOptions::default()).unwrap();
        let (split, steps) = hecke_isogenies(&f, x, 3, r).unwrap();
        assert_eq!(steps.len(), 4);
        for (phi, y) in &steps {
            assert_eq!(phi.degree(), 3);
            let other = split.points.iter().find(|pt| !phi.map(pt).is_infinity()).unwrap();
            phi.check_dual(&phi.map(other), 8, &mut rng).unwrap();
            assert_eq!(y.level, x.level);
        }
    }
}

#[test]
fn characteristic_q_form() {
    let (f, xs) = points(3, 2, 1, 5);
    let mut ordinary = 0;
    let mut supersingular = 0;
    for x in &xs {
        let t = frobenius_trace(&f, x).unwrap();
        match hecke_tq_char_q(&f, x, &HeckeOptions::default()) {
            Ok(img) => {
                assert_ne!(t % 3, 0);
                assert_eq!(img.degree(), 4);
                assert!(img.is_galois_stable());
                let frob = lift_point(&f, &img.embedding, &moduli::frobenius(&f, x));
                assert_eq!(img.divisor.multiplicity(&frob), 1);
                ordinary += 1;
            }
            Err(Error::InvalidInput(msg)) => {
                assert_eq!(t % 3, 0);
                assert!(msg.contains("ordinary"));
                let (e, _, _) = moduli::realize(&f, x).unwrap();
                assert!(f.is_zero(&e.j_invariant()));
                supersingular += 1;
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(ordinary > 0 && supersingular > 0, "{ordinary} {supersingular}");
}

#[test]
fn rejects_bad_hecke_primes() {
    let (f, xs) = points(31, 1, 2, 10);
    let o = HeckeOptions::default();
    assert!(hecke_tq(&f, &xs[0], 2, &o).is_err());
    assert!(hecke_tq(&f, &xs[0], 5, &o).is_err());
    assert!(hecke_tq(&f, &xs[0], 31, &o).is_err());
    assert!(hecke_tq(&f, &xs[0], 4, &o).is_err());
    assert!(matches!(hecke_tq(&f, &xs[0], 17, &o), Err(Error::EnumerationBound { .. })));
}

// Y1(20)(F_11) is empty, so the degree-2 map is exercised over F_121.
#[test]
fn degree2_map_is_equivariant() {
    assert!(points(11, 1, 1, 20).1.is_empty());
    let (f, xs) = points(11, 2, 1, 20);
    assert!(!xs.is_empty());
    let target = Level::new(2, 10).unwrap();
    for x in xs.iter().take(4) {
        let y = degree2_map(&f, x).unwrap();
        assert_eq!(y.level, target);
        assert_eq!(degree2_map(&f, &moduli::frobenius(&f, x)).unwrap(), moduli::frobenius(&f, &y));
        let ax = moduli::diamond(&f, x, 3).unwrap();
        assert_eq!(degree2_map(&f, &ax).unwrap(), moduli::diamond(&f, &y, 3).unwrap());
        assert_eq!(degree2_map(&f, &moduli::diamond(&f, x, 11).unwrap()).unwrap(), y, "<11> acts trivially mod 10");
    }
    let x = &xs[0];
    let y = degree2_map(&f, x).unwrap();
    let opts = opts_for(&f, &[x.clone(), y.clone()], 3);
    let tx = hecke_tq(&f, x, 3, &opts).unwrap();
    let ty = hecke_tq(&f, &y, 3, &opts).unwrap();
    let pushed = tx.divisor.try_flat_map(|z| degree2_map(&tx.field, z).map(FormalDivisor::point)).unwrap();
    assert_eq!(pushed, ty.divisor);
    assert!(ty.pull_back(&f).is_none() || ty.is_galois_stable());
}
