use torsion_sieve::algebra::{GaloisField, SmallField};
use torsion_sieve::curves::moduli::stable_two_plus_two;
use torsion_sieve::curves::{enumerate_moduli, Level, ModuliSet};

fn new_orbits(set: &ModuliSet<SmallField>, d: u32) -> usize {
    set.closed_points_of_degree(d).len()
}

#[test]
fn y1_30_over_f49() {
    let f = SmallField::new(7, 2).unwrap();
    let set = enumerate_moduli(&f, Level::new(1, 30).unwrap(), 2500, 0).unwrap();
    assert_eq!(set.len(), 40);
    assert_eq!(new_orbits(&set, 2), 20);
    // (Z/30)^x/±1 has order 4 and acts freely on points.
    assert!(set.diamond_orbits().unwrap().iter().all(|o| o.len() == 4));
    // On the 20 closed points of degree 2 the diamond orbits have sizes 2, 2, 4, 4, 4, 4.
    let mut sizes: Vec<usize> = set.closed_diamond_orbits().unwrap().iter().map(|o| o.len() / 2).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 2, 4, 4, 4, 4]);
    assert_eq!(stable_two_plus_two(&set).unwrap().len(), 2);
}

#[test]
fn y1_2_20_over_powers_of_7() {
    for (k, orbits) in [(1, 0), (2, 16), (3, 128), (4, 704)] {
        let f = SmallField::new(7, k).unwrap();
        let set = enumerate_moduli(&f, Level::new(2, 20).unwrap(), 2500, 0).unwrap();
        assert_eq!(new_orbits(&set, k), orbits, "F_7^{k}");
    }
}

#[test]
fn y1_2_24_over_powers_of_5() {
    for (k, orbits) in [(1, 0), (2, 0), (3, 16), (4, 96)] {
        let f = SmallField::new(5, k).unwrap();
        let set = enumerate_moduli(&f, Level::new(2, 24).unwrap(), 2500, 0).unwrap();
        assert_eq!(new_orbits(&set, k), orbits, "F_5^{k}");
        assert_eq!(f.degree(), k);
    }
}
