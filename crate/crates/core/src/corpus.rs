//! Built-in scenarios: the piecewise map on `[−1, 1]` with its two-set cover,
//! its integral-type variants, and a few synthetic cases.

use crate::contraction::{ContractionKind, Scenario, ScenarioParts};
use crate::control::{make_integral_phi, AlteringDistanceFn, DensityFn, PsiFn, PsiMode};
use crate::cyclic::{CyclicCover, SubsetSpec};
use crate::error::{Error, Result};
use crate::gmetric::{estimate_g_diameter, g_max_from_metric, g_sum_from_metric, BoxDomain, GMetricFn, MetricFn};
use crate::operator::Operator;
use crate::scalar::Scalar;

/// `T(x) = −½·x·e^{−1/|x|}` on `(0, 1]`, `0` at `0`, `−⅓·x·e^{−1/|x|}` on `[−1, 0)`.
///
/// The branch is chosen by sign before the exponential is formed, so `x = 0`
/// never reaches the division.
pub fn example32_map<S: Scalar>(x: S) -> Result<S> {
    if !(x.abs() <= S::one()) {
        return Err(Error::OutsideDomain {
            point: vec![x.to_f64_lossy()],
        });
    }
    let coef = if x > S::zero() {
        S::lit(-0.5)
    } else if x < S::zero() {
        S::lit(-1.0 / 3.0)
    } else {
        return Ok(S::zero());
    };
    Ok(coef * x * (-x.abs().recip()).exp())
}

fn example32_domain<S: Scalar>() -> BoxDomain<S> {
    BoxDomain::interval(-S::one(), S::one()).expect("valid interval")
}

/// `A_1 = [0, 1]`, `A_2 = [−1, 0]`.
pub fn example32_cover<S: Scalar>() -> CyclicCover<S> {
    CyclicCover::new(vec![
        SubsetSpec::interval(S::zero(), S::one()).expect("valid interval"),
        SubsetSpec::interval(-S::one(), S::zero()).expect("valid interval"),
    ])
    .expect("two non-empty intervals")
}

pub fn example32_operator<S: Scalar>() -> Operator<S> {
    Operator::scalar("example32", example32_map)
}

/// Space, cover and map of a scenario, without the inequality.
#[derive(Clone, Debug)]
pub struct Geometry<S> {
    pub gmetric: GMetricFn<S>,
    pub cover: CyclicCover<S>,
    pub map: Operator<S>,
}

pub fn example32_geometry<S: Scalar>() -> Geometry<S> {
    Geometry {
        gmetric: g_sum_from_metric(&MetricFn::abs(example32_domain())),
        cover: example32_cover(),
        map: example32_operator(),
    }
}

/// `[−1, 1]` with `G_s` of `|·|`, the two-set cover, φ = id, ψ ≡ 0 and Kannan
/// constants `(½, ⅓)`.
pub fn build_example32_scenario<S: Scalar>() -> Scenario<S> {
    let geo = example32_geometry();
    Scenario::new(ScenarioParts {
        id: "example32".into(),
        gmetric: geo.gmetric,
        cover: geo.cover,
        map: geo.map,
        phi: AlteringDistanceFn::identity(),
        psi: PsiFn::zero(),
        psi_mode: PsiMode::DegenerateAllowed,
        kind: ContractionKind::KannanG,
        alpha: S::lit(0.5),
        gamma: S::lit(1.0 / 3.0),
    })
    .expect("published constants are admissible")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example31Variant {
    Kannan,
    Chatterjea,
}

/// Default quadrature tolerance for integral-type φ.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Integral-type scenario: φ(t) = ∫₀ᵗ ρ, ψ ≡ 0, over `geometry` (the
/// `[−1, 1]` example when `None`). φ is validated on `[0, diam G]`.
pub fn build_example31_scenario<S: Scalar>(
    rho: DensityFn<S>,
    alpha: S,
    gamma: S,
    variant: Example31Variant,
    geometry: Option<Geometry<S>>,
) -> Result<Scenario<S>> {
    let geo = geometry.unwrap_or_else(example32_geometry);
    let t_max = estimate_g_diameter(&geo.gmetric, 1_000, 0)?;
    let phi = make_integral_phi(rho, S::lit(DEFAULT_QUAD_TOL), t_max.max(S::one()))?;
    let kind = match variant {
        Example31Variant::Kannan => ContractionKind::KannanG,
        Example31Variant::Chatterjea => ContractionKind::ChatterjeaG,
    };
    Scenario::new(ScenarioParts {
        id: "example31".into(),
        gmetric: geo.gmetric,
        cover: geo.cover,
        map: geo.map,
        phi,
        psi: PsiFn::zero(),
        psi_mode: PsiMode::DegenerateAllowed,
        kind,
        alpha,
        gamma,
    })
}

/// Machine-readable expectations for a corpus entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Expected {
    pub fixed_point: Option<Vec<f64>>,
    /// A constant pair known to certify.
    pub feasible_constants: Option<(f64, f64)>,
    pub cyclic: bool,
    pub certifies: bool,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub scenario: Scenario<f64>,
    pub expected: Expected,
}

pub const CORPUS_IDS: [&str; 6] = [
    "example32",
    "example32-gmax",
    "example32-chatterjea",
    "example31-unit",
    "example31-linear",
    "identity-negative",
];

fn with_id(s: Scenario<f64>, id: &str, edit: impl FnOnce(&mut ScenarioParts<f64>)) -> Scenario<f64> {
    let mut parts = s.into_parts();
    parts.id = id.into();
    edit(&mut parts);
    Scenario::new(parts).expect("corpus scenarios are valid")
}

/// Rebuilds the corpus entry `id`.
pub fn corpus_entry(id: &str) -> Option<CorpusEntry> {
    let zero_fp = Some(vec![0.0]);
    let entry = match id {
        "example32" => CorpusEntry {
            id: "example32",
            description: "piecewise map on [-1,1], G_s of |x-y|, Kannan (1/2, 1/3)",
            scenario: build_example32_scenario(),
            expected: Expected {
                fixed_point: zero_fp,
                feasible_constants: Some((0.5, 1.0 / 3.0)),
                cyclic: true,
                certifies: true,
            },
        },
        "example32-gmax" => CorpusEntry {
            id: "example32-gmax",
            description: "example32 under G_m (max of pairwise distances)",
            scenario: with_id(build_example32_scenario(), id, |p| {
                p.gmetric = g_max_from_metric(&MetricFn::abs(example32_domain()));
            }),
            expected: Expected {
                fixed_point: zero_fp,
                feasible_constants: Some((0.5, 1.0 / 3.0)),
                cyclic: true,
                certifies: true,
            },
        },
        "example32-chatterjea" => CorpusEntry {
            id: "example32-chatterjea",
            description: "example32 map under the Chatterjea inequality with (0.4, 0.6)",
            scenario: with_id(build_example32_scenario(), id, |p| {
                p.kind = ContractionKind::ChatterjeaG;
                p.alpha = 0.4;
                p.gamma = 0.6;
            }),
            expected: Expected {
                fixed_point: zero_fp,
                feasible_constants: Some((0.4, 0.6)),
                cyclic: true,
                certifies: true,
            },
        },
        "example31-unit" => CorpusEntry {
            id: "example31-unit",
            description: "integral-type phi with unit density over the example32 geometry",
            scenario: with_id(
                build_example31_scenario(
                    DensityFn::constant(1.0),
                    0.5,
                    1.0 / 3.0,
                    Example31Variant::Kannan,
                    None,
                )
                .ok()?,
                id,
                |_| {},
            ),
            expected: Expected {
                fixed_point: zero_fp,
                feasible_constants: Some((0.5, 1.0 / 3.0)),
                cyclic: true,
                certifies: true,
            },
        },
        "example31-linear" => CorpusEntry {
            id: "example31-linear",
            description: "integral-type phi with density 2s (phi(t) = t^2) over the example32 geometry",
            scenario: with_id(
                build_example31_scenario(
                    DensityFn::new("2s", |s: f64| Ok(2.0 * s)),
                    0.5,
                    1.0 / 3.0,
                    Example31Variant::Kannan,
                    None,
                )
                .ok()?,
                id,
                |_| {},
            ),
            expected: Expected {
                fixed_point: zero_fp,
                feasible_constants: Some((0.5, 1.0 / 3.0)),
                cyclic: true,
                certifies: true,
            },
        },
        "identity-negative" => CorpusEntry {
            id: "identity-negative",
            description: "identity map on the example32 cover: neither cyclic nor contractive",
            scenario: with_id(build_example32_scenario(), id, |p| {
                p.map = Operator::identity(1);
            }),
            expected: Expected {
                fixed_point: None,
                feasible_constants: None,
                cyclic: false,
                certifies: false,
            },
        },
        _ => return None,
    };
    Some(entry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::{certify, CertifyOptions};
    use crate::control::check_control_pair;
    use crate::cyclic::validate_cyclic_cover;
    use crate::gmetric::check_g_axioms_seeded;

    #[test]
    fn map_values() {
        assert_eq!(example32_map(0.0f64).unwrap(), 0.0);
        assert!((example32_map(1.0f64).unwrap() + 0.1839397).abs() < 1e-7);
        assert!((example32_map(-1.0f64).unwrap() - 0.1226265).abs() < 1e-7);
        assert!(example32_map(1.5f64).is_err());
        assert_eq!(example32_map(1e-300f64).unwrap(), -0.0);
        assert_eq!(example32_map(f64::MIN_POSITIVE / 4.0).unwrap(), 0.0);
    }

    #[test]
    fn map_alternates_sign_and_shrinks() {
        for i in 0..=2000 {
            let x = -1.0 + i as f64 / 1000.0;
            let t = example32_map(x).unwrap();
            assert!(t.abs() < 0.5);
            assert!(t.abs() <= 0.5 * x.abs() * (-1.0 / x.abs()).exp() + 1e-300);
            if x > 0.0 {
                assert!(t <= 0.0);
            }
            if x < 0.0 {
                assert!(t >= 0.0);
            }
        }
    }

    #[test]
    fn example32_passes_structural_checks() {
        let s = build_example32_scenario::<f64>();
        assert!(validate_cyclic_cover(s.cover(), s.map(), 10_000, 1).unwrap().pass);
        assert!(check_g_axioms_seeded(s.gmetric(), 2_000, 1e-12, 1).unwrap().pass());
        let grid = crate::control::uniform_grid(4.0, 400);
        let r = check_control_pair(s.phi(), s.psi(), &grid, 0.0, s.psi_mode()).unwrap();
        assert!(r.pass && r.psi_degenerate);
    }

    #[test]
    fn every_corpus_entry_builds_and_matches_expectations() {
        for id in CORPUS_IDS {
            let e = corpus_entry(id).unwrap();
            assert_eq!(e.scenario.id(), id);
            let cyc = validate_cyclic_cover(e.scenario.cover(), e.scenario.map(), 500, 3).unwrap();
            assert_eq!(cyc.pass, e.expected.cyclic, "{id}");
            let cert = certify(&e.scenario, 500, 1e-12, 3, CertifyOptions::default()).unwrap();
            assert_eq!(cert.pass, e.expected.certifies, "{id}");
        }
        assert!(corpus_entry("nope").is_none());
    }

    #[test]
    fn negative_density_fails_construction() {
        let rho = DensityFn::new("dip", |s: f64| Ok(if (1.0..1.5).contains(&s) { -0.1 } else { 1.0 }));
        assert!(matches!(
            build_example31_scenario(rho, 0.5, 1.0 / 3.0, Example31Variant::Kannan, None),
            Err(Error::InvalidDensity { .. })
        ));
    }
}
