mod common;

use ed_defect::critical::{VarietyPresentation, WeightMode};
use ed_defect::groebner::{symbolic_ed_degree, OracleOptions};
use ed_defect::homotopy::{ed_degree, TrackerSettings};
use ed_defect::poly::Gaussian;

fn both(variety: &VarietyPresentation, mode: &WeightMode) -> (u64, u64) {
    let numeric = ed_degree(variety, mode, &TrackerSettings::default()).unwrap().count;
    let symbolic = symbolic_ed_degree(variety, mode, &OracleOptions::for_variety(variety, 0))
        .unwrap()
        .count;
    (numeric, symbolic)
}

#[test]
fn circle() {
    let v = common::system("circle");
    assert_eq!(both(&v, &WeightMode::Unit), (2, 2));
    assert_eq!(both(&v, &WeightMode::Generic), (4, 4));
}

#[test]
fn ellipse_weighted_circle() {
    let v = common::system("circle");
    let w = WeightMode::Weighted(vec![Gaussian::from_ints(1, 0), Gaussian::from_ints(2, 0)]);
    assert_eq!(both(&v, &w), (4, 4));
}

#[test]
fn random_plane_cubics() {
    for seed in [1, 2] {
        let v = common::random_plane_cubic(seed);
        for mode in [WeightMode::Unit, WeightMode::Generic] {
            let (numeric, symbolic) = both(&v, &mode);
            assert_eq!(numeric, symbolic, "cubic seed {seed}, {mode:?}");
            assert_eq!(numeric, 9, "cubic seed {seed}, {mode:?}");
        }
    }
}

#[test]
fn determinant() {
    let v = common::system("det2x2");
    assert_eq!(both(&v, &WeightMode::Unit), (2, 2));
    assert_eq!(both(&v, &WeightMode::Generic), (6, 6));
}

#[test]
fn quadric_surface() {
    let v = common::system("quadric_surface");
    assert_eq!(both(&v, &WeightMode::Unit), (1, 1));
    assert_eq!(both(&v, &WeightMode::Generic), (6, 6));
}

#[test]
fn mckeithan_x2() {
    let v = common::system("mckeithan_x2");
    assert_eq!(both(&v, &WeightMode::Unit), (6, 6));
}
