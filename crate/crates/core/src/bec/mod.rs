//! Box-trapped BEC as a resonant gravitational-wave detector (SI units, `f64`).
//!
//! The chemical potential appears only in the field decomposition behind these
//! coefficients and is not needed numerically.

pub mod constants;
pub mod constraints;
pub mod coupling;
pub mod params;
pub mod presets;
pub mod sensitivity;

pub use constants::{PhysicalConstants, Species, CONSTANTS_VERSION};
pub use constraints::{overall_status, validate_constraints, ConstraintCheck, ConstraintStatus};
pub use coupling::{
    channel_strength, displacement_resonance_info, m_ln, squeeze_coupling, tritter_potential_spec,
    ChannelStrength, CouplingCoefficients, PotentialKind, TritterDrive,
};
pub use params::{
    bogoliubov_amplitudes, derive_quantities, BecDetectorParams, DerivedBecQuantities,
};
pub use presets::{
    find_preset, reproduce, RowFigures, Scheme, TablePreset, DETECTORS, INTEGRATION_YEARS,
    TABLE_PRESETS, TRITTER_THETA,
};
pub use sensitivity::{
    delta_eps_chain, gw_potential_amplitude, gw_sensitivity_fi, gw_sensitivity_fi_expanded,
    gw_sensitivity_fi_single, gw_sensitivity_generic, gw_sensitivity_old,
    gw_sensitivity_old_frequency, strain_figure, ConstraintPolicy,
};

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    fn row(name: &str) -> BecDetectorParams {
        find_preset(name)
            .unwrap()
            .params(Scheme::Interferometric, &consts())
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn derived_li_row2() {
        let c = consts();
        let q = derive_quantities(&row("li7-row2"), &c);
        assert!(rel(q.density_cm3(), 1.1e15) < 0.1, "{}", q.density_cm3());
        assert!(rel(q.sound_speed, 0.08) < 0.1, "{}", q.sound_speed);
        assert!(rel(q.resonance, 25.3e3) < 0.1, "{}", q.resonance);
        let p = row("li7-row2");
        assert!(
            rel(
                q.healing_length,
                c.hbar / (2f64.sqrt() * p.atom_mass * q.sound_speed)
            ) < 1e-15
        );
    }

    #[test]
    fn chain_matches_reduced_form() {
        let c = consts();
        for modes in [(260, 258), (480, 478), (101, 97)] {
            let mut p = row("li7-row2");
            (p.mode_l, p.mode_n) = modes;
            let q = derive_quantities(&p, &c);
            let v0 = gw_potential_amplitude(p.atom_mass, q.resonance);
            let coeffs = squeeze_coupling(&p, &q, PotentialKind::Quadratic, v0);
            let b = channel_strength(&coeffs, p.phonon_lifetime, 1.0, c.hbar).coupling;
            let chain = delta_eps_chain(b, &p);
            let reduced = gw_sensitivity_fi(&p, &c, ConstraintPolicy::Override).unwrap();
            let generic = gw_sensitivity_generic(&p, &q, &c, v0);
            let expanded = gw_sensitivity_fi_expanded(&p, &c);
            assert!(
                rel(chain, reduced) < 1e-10,
                "{modes:?}: {chain} vs {reduced}"
            );
            assert!(rel(generic, reduced) < 1e-10);
            assert!(rel(expanded, reduced) < 1e-10);
        }
    }

    #[test]
    fn scaling_laws() {
        let c = consts();
        let base = row("rb87-row1");
        let d0 = gw_sensitivity_fi(&base, &c, ConstraintPolicy::Override).unwrap();
        let mut ps = vec![];
        let mut p = base.clone();
        p.integration_time *= 2.0;
        ps.push(p);
        let mut p = base.clone();
        p.phonon_lifetime *= 2.0;
        ps.push(p);
        let mut p = base.clone();
        p.phonon_number *= 2.0;
        ps.push(p);
        let mut p = base.clone();
        p.detectors *= 2;
        ps.push(p);
        for p in ps {
            let d = gw_sensitivity_fi(&p, &c, ConstraintPolicy::Override).unwrap();
            assert!(rel(d0 / d, 2f64.sqrt()) < 1e-10);
        }
        let mut p = base.clone();
        p.atom_number *= 2.0;
        let d = gw_sensitivity_fi_expanded(&p, &c);
        assert!(rel(gw_sensitivity_fi_expanded(&base, &c) / d, 4.0) < 1e-10);
    }

    #[test]
    fn parity_rules() {
        let c = consts();
        let mut p = row("li7-row2");
        p.mode_n = 259;
        let q = derive_quantities(&p, &c);
        let quad = squeeze_coupling(&p, &q, PotentialKind::Quadratic, 1.0);
        assert_eq!(quad.v_ln, 0.0);
        assert!(!quad.parity_allowed);
        assert_eq!(
            channel_strength(&quad, p.phonon_lifetime, 1.0, c.hbar).coupling,
            0.0
        );
        assert!(squeeze_coupling(&p, &q, PotentialKind::Linear, 1.0).parity_allowed);
        let p = row("li7-row2");
        let q = derive_quantities(&p, &c);
        assert_eq!(
            squeeze_coupling(&p, &q, PotentialKind::Linear, 1.0).v_ln,
            0.0
        );
        let k = squeeze_coupling(&p, &q, PotentialKind::Quadratic, 1.0);
        assert_eq!(k.m_ln.norm(), k.a_ln.norm());
        assert_eq!(k.m_ln.norm(), k.b_ln.norm());
    }

    #[test]
    fn displacement_coefficient() {
        let c = consts();
        let p = row("li7-row2");
        let q = derive_quantities(&p, &c);
        assert_eq!(displacement_resonance_info(&p, &q, 257, 1.0).norm(), 0.0);
        let a = displacement_resonance_info(&p, &q, 258, 1.0).norm();
        assert!(a > 0.0);
        let mut p2 = p.clone();
        p2.atom_number *= 2.0;
        // ζ depends on N₀ through c_s; hold the derived quantities fixed.
        let b = displacement_resonance_info(&p2, &q, 258, 1.0).norm();
        assert!(rel(b / a, 2f64.sqrt()) < 1e-12);
    }

    #[test]
    fn channel_strength_linear_in_t() {
        let c = consts();
        let p = row("li7-row2");
        let q = derive_quantities(&p, &c);
        let k = squeeze_coupling(&p, &q, PotentialKind::Quadratic, 1.0);
        assert_eq!(channel_strength(&k, 0.0, 1.0, c.hbar).coupling, 0.0);
        let b1 = channel_strength(&k, 1e-3, 1.0, c.hbar);
        let b2 = channel_strength(&k, 2e-3, 1.0, c.hbar);
        assert!(rel(b2.coupling, 2.0 * b1.coupling) < 1e-15);
        assert!(rel(b1.magnitude, b1.coupling / 4.0) < 1e-15);
    }

    #[test]
    fn potential_and_strain() {
        assert_eq!(gw_potential_amplitude(1.0, 0.0), 0.0);
        assert!(
            rel(
                gw_potential_amplitude(2.0, 6.0),
                4.0 * gw_potential_amplitude(2.0, 3.0)
            ) < 1e-15
        );
        assert_eq!(strain_figure(0.0, 10.0).unwrap(), 0.0);
        assert!(strain_figure(1.0, 0.0).is_err());
        assert!(rel(strain_figure(3.0, 4.0).unwrap(), 1.5) < 1e-15);
    }

    #[test]
    fn tritter_drive() {
        let c = consts();
        let p = row("li7-row2");
        let q = derive_quantities(&p, &c);
        let d = tritter_potential_spec(&p, &q).unwrap();
        assert!(rel(d.omega_sum, q.resonance) < 1e-15);
        let step = 2.0 * std::f64::consts::PI * q.sound_speed / p.box_length;
        assert!(rel(d.omega_diff, step) < 1e-12);
    }

    #[test]
    fn bogoliubov_norm_in_phonon_regime() {
        let c = consts();
        let p = row("li7-row2");
        let q = derive_quantities(&p, &c);
        let (u, v) = bogoliubov_amplitudes(q.wavenumbers.0, p.atom_mass, q.sound_speed, c.hbar);
        let phononic = c.hbar * q.mode_frequencies.0 / (p.atom_mass * q.sound_speed.powi(2));
        assert!((u * u - v * v - 1.0).abs() < phononic * phononic);
    }

    #[test]
    fn constraints_li_row2() {
        let c = consts();
        let p = row("li7-row2");
        let q = derive_quantities(&p, &c);
        let checks = validate_constraints(&p, &q, &c);
        for k in &checks {
            let expect = if k.name == "theta-bound" {
                ConstraintStatus::Marginal
            } else {
                ConstraintStatus::Pass
            };
            assert_eq!(k.status, expect, "{k:?}");
        }
        assert_eq!(overall_status(&checks), ConstraintStatus::Marginal);
        assert!(gw_sensitivity_fi(&p, &c, ConstraintPolicy::Enforce).is_ok());
    }

    #[test]
    fn constraint_failures() {
        let c = consts();
        let mut p = row("li7-row2");
        p.mode_n = 259;
        p.phonon_number = 0.2 * p.atom_number;
        let q = derive_quantities(&p, &c);
        let checks = validate_constraints(&p, &q, &c);
        let status = |n: &str| checks.iter().find(|k| k.name == n).unwrap().status;
        assert_eq!(status("parity"), ConstraintStatus::Fail);
        assert_eq!(status("pump-dominance"), ConstraintStatus::Fail);
        assert_eq!(status("theta-bound"), ConstraintStatus::Fail);
        let err = gw_sensitivity_fi(&p, &c, ConstraintPolicy::Enforce).unwrap_err();
        assert!(err.to_string().contains("parity"));
        assert!(gw_sensitivity_fi(&p, &c, ConstraintPolicy::Override)
            .unwrap()
            .is_infinite());

        let mut p = row("li7-row2");
        p.scattering_length = 0.0;
        let q = derive_quantities(&p, &c);
        let checks = validate_constraints(&p, &q, &c);
        let status = |n: &str| checks.iter().find(|k| k.name == n).unwrap().status;
        assert_eq!(status("dilute"), ConstraintStatus::Pass);
        assert_eq!(status("coupling"), ConstraintStatus::Fail);
    }

    #[test]
    fn fi_beats_old_everywhere() {
        let c = consts();
        for pre in &TABLE_PRESETS {
            let f = reproduce(pre, &c).unwrap();
            let ratio = f.delta_eps_fi / f.delta_eps_old;
            let r = &pre.reference;
            let tabulated = r.delta_eps_fi / r.delta_eps_old;
            if tabulated < 1e-9 {
                assert!(ratio < 1e-9, "{}: {ratio}", pre.name);
            } else {
                // li7-row3: the reference values themselves give 1.1e-8.
                assert_eq!(pre.name, "li7-row3");
                // Two entries, each within the 10% table tolerance.
                assert!(
                    rel(ratio, tabulated) < 1.1 / 0.9 - 1.0,
                    "{ratio} vs {tabulated}"
                );
            }
        }
    }

    #[test]
    fn old_scheme_forms() {
        let c = consts();
        let p = row("li7-row1");
        let q = derive_quantities(&p, &c);
        let a = gw_sensitivity_old(&p, &c).unwrap();
        let b = gw_sensitivity_old_frequency(&p, &q);
        // The two printed forms differ by √π.
        assert!(rel(b * std::f64::consts::PI.sqrt(), a) < 1e-10, "{a} {b}");
    }

    #[test]
    fn single_detector_variant_ratio() {
        let c = consts();
        let p = row("li7-row2");
        let a = gw_sensitivity_fi_single(&p, &c);
        let b = gw_sensitivity_fi(&p, &c, ConstraintPolicy::Override).unwrap();
        assert!(rel(a / b, 4.0 * 10f64.sqrt()) < 1e-10);
    }
}
