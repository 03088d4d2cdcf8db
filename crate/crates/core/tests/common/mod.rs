#![allow(dead_code)]

use std::path::PathBuf;

use ed_defect::critical::{VarietyKind, VarietyPresentation};
use ed_defect::poly::{parse_polynomial, Domain, RingContext};
use ed_defect::random;
use ed_defect::sysfile::parse_system;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn system(name: &str) -> VarietyPresentation {
    let path = data_dir().join("systems").join(format!("{name}.sys"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_system(&text).unwrap()
}

pub fn variety(names: &[&str], gens: &[&str], codim: usize, kind: VarietyKind) -> VarietyPresentation {
    let ring = RingContext::new(names, Domain::GaussianRational).unwrap();
    let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
    VarietyPresentation::new(gens, codim, kind).unwrap()
}

/// Affine plane cubic with integer coefficients in [-5, 5] drawn from `seed`.
pub fn random_plane_cubic(seed: u64) -> VarietyPresentation {
    let mut rng = random::rng(seed, 0);
    let mut terms = Vec::new();
    for i in 0..=3u32 {
        for j in 0..=3 - i {
            let mut c: i64 = rng.gen_range(-5..=5);
            if i + j == 3 && c == 0 {
                c = 1;
            }
            terms.push(format!("({c})*x^{i}*y^{j}"));
        }
    }
    variety(&["x", "y"], &[&terms.join(" + ")], 1, VarietyKind::Affine)
}
