//! Named composite and continuous π and π/2 pulses.
//!
//! Parameters are stored with the digits they are usually quoted with, so
//! the correction integrals vanish only to about `1e-6`. Use
//! [`crate::designer::refine`] to polish an entry to machine precision.
//!
//! Composite pulses are quoted by magnitude only. The sign patterns below are
//! the ones for which `ψ(1) = θ`:
//! CORPSE `(+,−,+)`, SCORPSE `(−,+,−)`, SYM `(+,−,+)`,
//! SYM2ND `(−A,+A,−B,+A,−A)` and ASYM2ND `(+,−,+,−,+,−)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use super::{Family, HarmonicAnsatz, PulseShape, ANGLE_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    First,
    Second,
}

impl Order {
    pub fn name(self) -> &'static str {
        match self {
            Self::First => "first",
            Self::Second => "second",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Asymmetric,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Self::Symmetric => "symmetric",
            Self::Asymmetric => "asymmetric",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub order: Order,
    pub symmetry: Symmetry,
    pub family: Family,
    /// Parameters in the family's convention, as quoted.
    pub parameters: Vec<f64>,
    pub shape: PulseShape,
}

impl CatalogEntry {
    fn new(name: &'static str, theta: f64, order: Order, family: Family, parameters: Vec<f64>) -> Self {
        let symmetry = if family.is_symmetric() {
            Symmetry::Symmetric
        } else {
            Symmetry::Asymmetric
        };
        let shape = family
            .build(theta, &parameters)
            .unwrap_or_else(|e| panic!("catalog entry {name}: {e}"));
        if let Err(e) = shape.check_angle(ANGLE_TOLERANCE) {
            panic!("catalog entry {name}: {e}");
        }
        Self {
            name,
            order,
            symmetry,
            family,
            parameters,
            shape,
        }
    }

    pub fn theta(&self) -> f64 {
        self.shape.theta()
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} order, {})",
            self.name,
            self.order.name(),
            self.symmetry.name()
        )
    }
}

/// All fifteen named pulses.
pub fn catalog() -> Vec<CatalogEntry> {
    use HarmonicAnsatz::*;
    use Order::*;
    let asym3 = || Family::CompositeAsymmetric { signs: vec![1, -1, 1] };
    let asym6 = || Family::CompositeAsymmetric {
        signs: vec![1, -1, 1, -1, 1, -1],
    };
    let sym3 = |signs| Family::CompositeSymmetric3 { signs };
    let sym5 = || Family::CompositeSymmetric5 {
        signs: [-1, 1, -1, 1, -1],
    };
    vec![
        CatalogEntry::new(
            "CORPSE-Pi",
            PI,
            First,
            asym3(),
            vec![13.0 * PI / 6.0, 1.0 / 13.0, 6.0 / 13.0],
        ),
        CatalogEntry::new(
            "SCORPSE-Pi",
            PI,
            First,
            sym3([-1, 1, -1]),
            vec![7.0 * PI / 6.0, 1.0 / 7.0],
        ),
        CatalogEntry::new("SYM-Pi", PI, First, sym3([1, -1, 1]), vec![17.0 * PI / 6.0, 5.0 / 17.0]),
        CatalogEntry::new(
            "SYM2ND-Pi",
            PI,
            Second,
            sym5(),
            vec![10.950120, 7.695376, 0.022805, 0.275269],
        ),
        CatalogEntry::new(
            "ASYM2ND-Pi",
            PI,
            Second,
            asym6(),
            vec![11.364434, 0.252011, 0.310896, 0.584781, 0.752825, 0.796039],
        ),
        CatalogEntry::new(
            "CORPSE-Pi2",
            FRAC_PI_2,
            First,
            asym3(),
            vec![6.345849, 0.033410, 0.471527],
        ),
        CatalogEntry::new("SYM-Pi2", FRAC_PI_2, First, sym3([1, -1, 1]), vec![7.791318, 0.275201]),
        CatalogEntry::new(
            "SYM2ND-Pi2",
            FRAC_PI_2,
            Second,
            sym5(),
            vec![11.486275, 8.038405, 0.037279, 0.269827],
        ),
        CatalogEntry::new(
            "ASYM2ND-Pi2",
            FRAC_PI_2,
            Second,
            asym6(),
            vec![11.563810, 0.231411, 0.284623, 0.539588, 0.732138, 0.779722],
        ),
        CatalogEntry::new(
            "CONT-SYM-Pi",
            PI,
            First,
            Family::Harmonic(SymmetricFirstOrder),
            vec![-2.159224],
        ),
        CatalogEntry::new(
            "CONT-SYM-Pi2",
            FRAC_PI_2,
            First,
            Family::Harmonic(SymmetricFirstOrder),
            vec![-5.015588],
        ),
        CatalogEntry::new(
            "CONT-ASYM-Pi",
            PI,
            First,
            Family::Harmonic(AsymmetricFirstOrder),
            vec![5.263022, 17.850535],
        ),
        CatalogEntry::new(
            "CONT-ASYM-Pi2",
            FRAC_PI_2,
            First,
            Family::Harmonic(AsymmetricFirstOrder),
            vec![-16.809353, 15.634390],
        ),
        CatalogEntry::new(
            "CONT-SYM2ND-Pi",
            PI,
            Second,
            Family::Harmonic(SymmetricSecondOrder),
            vec![10.804433, 6.831344, 2.174538],
        ),
        CatalogEntry::new(
            "CONT-SYM2ND-Pi2",
            FRAC_PI_2,
            Second,
            Family::Harmonic(SymmetricSecondOrder),
            vec![10.925826, 6.806775, -0.02696178],
        ),
    ]
}

/// Finds a catalog entry by name, ignoring ASCII case.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Uncorrected rectangular reference pulses `CONST-Pi` and `CONST-Pi2`.
/// They are not part of [`catalog`].
pub fn reference_pulse(name: &str) -> Option<PulseShape> {
    if name.eq_ignore_ascii_case("CONST-Pi") {
        Some(PulseShape::constant(PI))
    } else if name.eq_ignore_ascii_case("CONST-Pi2") {
        Some(PulseShape::constant(FRAC_PI_2))
    } else {
        None
    }
}
