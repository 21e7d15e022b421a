//! The built-in catalogue: five named crossed modules and the five standard
//! surfaces, resolvable by name from the command line and from tests.
//!
//! | name | G    | H    | boundary   | action            |
//! |------|------|------|------------|-------------------|
//! | X1   | triv | triv | trivial    | trivial           |
//! | X2   | S3   | triv | trivial    | trivial           |
//! | X3   | Z2   | Z2   | identity   | conjugation       |
//! | X4   | Z2   | Z4   | mod 2      | lifted (trivial)  |
//! | X5   | Z2   | Z3   | trivial    | inversion         |

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction, GroupHom};
use crate::surface::SurfaceComplex;

/// The trivial crossed module.
pub fn x1() -> CrossedModule {
    rename(CrossedModule::trivial_h(&FiniteGroup::trivial()), "X1")
}

/// Trivial `H` over the symmetric group S3: plain flat colourings.
pub fn x2() -> CrossedModule {
    rename(
        CrossedModule::trivial_h(&FiniteGroup::symmetric(3).expect("S3")),
        "X2",
    )
}

/// The identity module on Z2.
pub fn x3() -> CrossedModule {
    rename(
        CrossedModule::identity_module(&FiniteGroup::cyclic(2).expect("Z2")),
        "X3",
    )
}

/// The central extension Z4 -> Z2 (mod-2 boundary, kernel {0, 2}).
pub fn x4() -> CrossedModule {
    let z4 = FiniteGroup::cyclic(4).expect("Z4");
    let z2 = FiniteGroup::cyclic(2).expect("Z2");
    let mod2 = GroupHom::new(z4.clone(), z2, vec![0, 1, 0, 1]).expect("mod-2 map");
    rename(
        CrossedModule::from_central_extension("X4", z4, mod2).expect("central extension"),
        "X4",
    )
}

/// Trivial boundary with Z2 acting on Z3 by inversion.
pub fn x5() -> CrossedModule {
    let z2 = FiniteGroup::cyclic(2).expect("Z2");
    let z3 = FiniteGroup::cyclic(3).expect("Z3");
    let action = GroupAction::new(z2.clone(), z3.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]])
        .expect("inversion action");
    CrossedModule::build(
        "X5",
        z2.clone(),
        z3.clone(),
        GroupHom::trivial(&z3, &z2),
        action,
    )
    .expect("X5 satisfies both axioms")
}

fn rename(cm: CrossedModule, name: &str) -> CrossedModule {
    CrossedModule::build(
        name,
        cm.g().clone(),
        cm.h().clone(),
        cm.boundary().clone(),
        cm.action().clone(),
    )
    .expect("already verified")
}

/// All five fixtures, in order.
pub fn all() -> Vec<CrossedModule> {
    vec![x1(), x2(), x3(), x4(), x5()]
}

/// Resolves a built-in crossed module by name (case-insensitive). `X2-S3`
/// is accepted as an alias for `X2`.
pub fn crossed_module_by_name(name: &str) -> Result<CrossedModule> {
    match name.to_ascii_uppercase().as_str() {
        "X1" => Ok(x1()),
        "X2" | "X2-S3" => Ok(x2()),
        "X3" => Ok(x3()),
        "X4" => Ok(x4()),
        "X5" => Ok(x5()),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

/// All five catalogue surfaces, in order.
pub fn all_surfaces() -> Vec<SurfaceComplex> {
    vec![
        SurfaceComplex::sphere(),
        SurfaceComplex::disk_in(),
        SurfaceComplex::disk_out(),
        SurfaceComplex::cylinder(),
        SurfaceComplex::torus(),
    ]
}

/// Resolves a built-in surface by name; hyphens and underscores are
/// interchangeable. Besides the five standard surfaces, the two pants
/// surfaces are available for multi-circle gluing experiments.
pub fn surface_by_name(name: &str) -> Result<SurfaceComplex> {
    match name.to_ascii_lowercase().replace('-', "_").as_str() {
        "sphere" => Ok(SurfaceComplex::sphere()),
        "disk_in" => Ok(SurfaceComplex::disk_in()),
        "disk_out" => Ok(SurfaceComplex::disk_out()),
        "cylinder" => Ok(SurfaceComplex::cylinder()),
        "torus" => Ok(SurfaceComplex::torus()),
        "pants_in" => Ok(SurfaceComplex::pants_in()),
        "pants_out" => Ok(SurfaceComplex::pants_out()),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build_and_verify() {
        for cm in all() {
            cm.verify().unwrap();
        }
    }

    #[test]
    fn expected_kernel_and_image_sizes() {
        let sizes: Vec<(usize, usize)> = all()
            .iter()
            .map(|cm| (cm.kernel().len(), cm.image().len()))
            .collect();
        assert_eq!(sizes, vec![(1, 1), (1, 1), (1, 2), (2, 2), (3, 1)]);
    }

    #[test]
    fn name_resolution() {
        assert_eq!(crossed_module_by_name("x4").unwrap().name(), "X4");
        assert_eq!(crossed_module_by_name("X2-S3").unwrap().name(), "X2");
        assert!(crossed_module_by_name("X9").is_err());
        assert_eq!(surface_by_name("disk-in").unwrap().name(), "disk_in");
        assert!(surface_by_name("klein").is_err());
    }
}
