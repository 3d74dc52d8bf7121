//! Closed-form results for the thermal + squeezed-vacuum instrument.
//!
//! Everything in this module is an explicit function of the four knobs
//! (g, r, n_th, phi); no matrices are propagated. The formulas are algebraic
//! consequences of the covariance pipeline in [`crate::gaussian`] and the two
//! routes are held to agree to better than 1e-9 by the test suite.
//!
//! The published expanded forms of the reduced determinant and the slope
//! cancel catastrophically at large gain (hyperbolic terms of order e^{8g}
//! collapsing to order 1 near phi = 0), so production code evaluates
//! factored equivalents built from nonnegative terms. The expanded forms
//! survive in the unit tests as transcription cross-checks.

use nalgebra::{Matrix2, Matrix4};
use serde::Serialize;

use crate::error::{check_finite, check_nonnegative, Error};
use crate::gaussian::{self, Symplectic, TwoModeState};
use crate::Result;

/// The four physical knobs of the instrument.
///
/// Fixed conventions baked into every formula: equal gain in both amplifier
/// stages, pump phases 0 and pi, and the accumulated phase `phi` split
/// evenly between the two arms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferometerConfig {
    g: f64,
    r: f64,
    n_th: f64,
    phi: f64,
}

impl InterferometerConfig {
    /// Validates g, r, n_th >= 0 and phi finite.
    pub fn new(g: f64, r: f64, n_th: f64, phi: f64) -> Result<Self> {
        check_nonnegative("g", g)?;
        check_nonnegative("r", r)?;
        check_nonnegative("n_th", n_th)?;
        check_finite("phi", phi)?;
        Ok(Self { g, r, n_th, phi })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn n_th(&self) -> f64 {
        self.n_th
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Same configuration at a different working phase.
    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        Self::new(self.g, self.r, self.n_th, phi)
    }

    /// Photons emitted by one amplifier stage on vacuum input: 2 sinh^2 g.
    pub fn opa_photons(&self) -> f64 {
        2.0 * self.g.sinh().powi(2)
    }

    /// Mean photon number of the squeezed-vacuum seed: sinh^2 r.
    pub fn squeezed_photons(&self) -> f64 {
        self.r.sinh().powi(2)
    }

    /// Total photon number in both arms between the amplifier stages:
    /// (n_opa + 1)(n_th + n_s) + n_opa.
    pub fn mean_photons_inside(&self) -> f64 {
        let n_opa = self.opa_photons();
        (n_opa + 1.0) * (self.n_th + self.squeezed_photons()) + n_opa
    }

    /// Shot-noise limit 1/sqrt(n) for the photons inside.
    pub fn shot_noise_limit(&self) -> Result<f64> {
        let n = self.mean_photons_inside();
        if n <= 0.0 {
            return Err(Error::UndefinedLimit {
                what: "shot-noise limit",
            });
        }
        Ok(1.0 / n.sqrt())
    }

    /// Heisenberg limit 1/n for the photons inside.
    pub fn heisenberg_limit(&self) -> Result<f64> {
        let n = self.mean_photons_inside();
        if n <= 0.0 {
            return Err(Error::UndefinedLimit {
                what: "Heisenberg limit",
            });
        }
        Ok(1.0 / n)
    }

    /// The input state: thermal seed in mode a, squeezed vacuum in mode b.
    pub fn input_state(&self) -> TwoModeState {
        gaussian::thermal_squeezed_input(self.n_th, self.r)
            .expect("parameters validated at construction")
    }

    /// The full instrument transform at these settings.
    pub fn transform(&self) -> Symplectic {
        gaussian::interferometer(self.g, self.phi).expect("parameters validated at construction")
    }

    /// Input state propagated through the instrument (the matrix route).
    pub fn output_state(&self) -> TwoModeState {
        self.transform().apply(&self.input_state())
    }
}

/// The nine independent output covariance entries, named by quadrature pair.
///
/// The x_a p_a covariance vanishes identically for this instrument and is
/// not carried; [`OutputCovariance::matrix`] fills it with zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputCovariance {
    pub xa_xa: f64,
    pub xa_xb: f64,
    pub xa_pb: f64,
    pub pa_pa: f64,
    pub pa_xb: f64,
    pub pa_pb: f64,
    pub xb_xb: f64,
    pub xb_pb: f64,
    pub pb_pb: f64,
}

impl OutputCovariance {
    /// Assembles the full symmetric 4x4 covariance.
    pub fn matrix(&self) -> Matrix4<f64> {
        #[rustfmt::skip]
        let m = Matrix4::new(
            self.xa_xa, 0.0,        self.xa_xb, self.xa_pb,
            0.0,        self.pa_pa, self.pa_xb, self.pa_pb,
            self.xa_xb, self.pa_xb, self.xb_xb, self.xb_pb,
            self.xa_pb, self.pa_pb, self.xb_pb, self.pb_pb,
        );
        m
    }

    /// The reduced covariance of the detected mode.
    pub fn mode_b(&self) -> Matrix2<f64> {
        Matrix2::new(self.xb_xb, self.xb_pb, self.xb_pb, self.pb_pb)
    }
}

/// Output covariance of the instrument in closed form.
pub fn output_covariance(cfg: &InterferometerConfig) -> OutputCovariance {
    let (s, c) = (cfg.phi / 2.0).sin_cos();
    let s2 = s * s;
    let sc = s * c; // sin(phi) / 2
    let t = 1.0 + 2.0 * cfg.n_th;
    let ep = (2.0 * cfg.r).exp();
    let em = (-2.0 * cfg.r).exp();
    let c2g = (2.0 * cfg.g).cosh();
    let s2g = (2.0 * cfg.g).sinh();
    let c2g2 = c2g * c2g;
    let s2g2 = s2g * s2g;
    let s4g = 2.0 * s2g * c2g;
    let common = t * (c * c + s2 * c2g2);
    OutputCovariance {
        xa_xa: common + s2 * s2g2 * em,
        pa_pa: common + s2 * s2g2 * ep,
        xa_xb: -0.5 * s2 * s4g * (t + em),
        xa_pb: sc * s2g * (t + em),
        pa_xb: sc * s2g * (t + ep),
        pa_pb: 0.5 * s2 * s4g * (t + ep),
        xb_xb: t * s2 * s2g2 + c * c * ep + s2 * c2g2 * em,
        xb_pb: c2g * sc * (ep - em),
        pb_pb: t * s2 * s2g2 + c * c * em + s2 * c2g2 * ep,
    }
}

/// det(Gamma_b) - 1 as a sum of nonnegative terms.
///
/// With u = sinh^2(2g) sin^2(phi/2) and C = 1 + (1 + 2 n_th) cosh(2r):
/// excess = 2u(1+u)C + 4u^2 n_th(1+n_th). Exactly zero at phi = 0.
fn mode_b_excess(cfg: &InterferometerConfig) -> f64 {
    let s = (cfg.phi / 2.0).sin();
    let u = (2.0 * cfg.g).sinh().powi(2) * s * s;
    let c = 1.0 + (1.0 + 2.0 * cfg.n_th) * (2.0 * cfg.r).cosh();
    2.0 * u * (1.0 + u) * c + 4.0 * u * u * cfg.n_th * (1.0 + cfg.n_th)
}

/// Determinant of the reduced output covariance of the detected mode.
pub fn mode_b_determinant(cfg: &InterferometerConfig) -> f64 {
    1.0 + mode_b_excess(cfg)
}

/// Parity expectation of the detected mode: 1/sqrt(det Gamma_b).
///
/// Equals exactly 1.0 at phi = 0 for every (g, r, n_th): the second
/// amplifier undoes the first and the detected mode is the pure squeezed
/// vacuum again.
pub fn parity_signal(cfg: &InterferometerConfig) -> f64 {
    1.0 / mode_b_determinant(cfg).sqrt()
}

/// Standard deviation of the parity outcome: sqrt(1 - parity^2), computed
/// without cancellation as sqrt(excess / (1 + excess)).
pub fn parity_noise(cfg: &InterferometerConfig) -> f64 {
    let excess = mode_b_excess(cfg);
    (excess / (1.0 + excess)).sqrt()
}

/// Magnitude of the parity signal's phase derivative.
pub fn signal_slope(cfg: &InterferometerConfig) -> f64 {
    let (s, co) = (cfg.phi / 2.0).sin_cos();
    let s2g2 = (2.0 * cfg.g).sinh().powi(2);
    let u = s2g2 * s * s;
    let c = 1.0 + (1.0 + 2.0 * cfg.n_th) * (2.0 * cfg.r).cosh();
    let det = 1.0 + 2.0 * u * (1.0 + u) * c + 4.0 * u * u * cfg.n_th * (1.0 + cfg.n_th);
    let sin_phi = 2.0 * s * co;
    let bracket = 0.5 * c + u * (c + 2.0 * cfg.n_th * (1.0 + cfg.n_th));
    s2g2 * sin_phi.abs() * bracket / (det * det.sqrt())
}

/// Phase sensitivity by error propagation: parity noise over slope.
///
/// At phi = 0 both vanish and the exact limit is returned instead (see
/// [`zero_phase_sensitivity`]); the dispatch is continuous to 1e-4 relative
/// at |phi| = 1e-4. A slope below 1e-300 at phi != 0 (g = 0, or extreme
/// parameters underflowing) is reported as a blind spot.
pub fn phase_sensitivity(cfg: &InterferometerConfig) -> Result<f64> {
    if cfg.phi == 0.0 {
        return zero_phase_sensitivity(cfg);
    }
    let slope = signal_slope(cfg);
    if slope < 1e-300 {
        return Err(Error::PhaseBlindSpot {
            g: cfg.g,
            phi: cfg.phi,
        });
    }
    Ok(parity_noise(cfg) / slope)
}

/// Closed-form phase sensitivity at the phi = 0 working point:
/// sqrt(2 / (n_opa (n_opa + 2) [1 + (1 + 2 n_s)(1 + 2 n_th)])).
///
/// The working phase in `cfg` is ignored. Requires g > 0.
pub fn zero_phase_sensitivity(cfg: &InterferometerConfig) -> Result<f64> {
    if cfg.g == 0.0 {
        return Err(Error::PhaseBlindSpot {
            g: 0.0,
            phi: cfg.phi,
        });
    }
    let n_opa = cfg.opa_photons();
    let n_s = cfg.squeezed_photons();
    let bracket = 1.0 + (1.0 + 2.0 * n_s) * (1.0 + 2.0 * cfg.n_th);
    Ok((2.0 / (n_opa * (n_opa + 2.0) * bracket)).sqrt())
}

/// Thermal seed size that best exploits a given gain and squeezing:
/// (sinh^2 g - n_s) / cosh^2(2g), where n_s is the squeezed photon number.
///
/// May be negative when the squeezing already supplies more photons than
/// the formula wants; see [`optimal_thermal_photons_clamped`].
pub fn optimal_thermal_photons(g: f64, n_s: f64) -> Result<f64> {
    check_nonnegative("g", g)?;
    check_nonnegative("n_s", n_s)?;
    Ok((g.sinh().powi(2) - n_s) / (2.0 * g).cosh().powi(2))
}

/// [`optimal_thermal_photons`] clamped to the physical range n_th >= 0.
pub fn optimal_thermal_photons_clamped(g: f64, n_s: f64) -> Result<f64> {
    Ok(optimal_thermal_photons(g, n_s)?.max(0.0))
}

/// Everything the instrument predicts at one setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensitivityReport {
    pub g: f64,
    pub r: f64,
    pub n_th: f64,
    pub phi: f64,
    /// Minimum detectable phase at this working point, radians.
    pub delta_phi: f64,
    /// Parity expectation of the detected mode.
    pub parity: f64,
    /// Standard deviation of the parity outcome.
    pub delta_parity: f64,
    /// |d parity / d phi|.
    pub slope: f64,
    /// Photons in both arms between the amplifier stages.
    pub n_bar: f64,
    /// Shot-noise limit 1/sqrt(n_bar).
    pub snl: f64,
    /// Heisenberg limit 1/n_bar.
    pub hl: f64,
    /// Photons one amplifier emits on vacuum input.
    pub n_opa: f64,
    /// Photons in the squeezed-vacuum seed.
    pub n_s: f64,
}

/// Evaluates every reported quantity at one configuration.
pub fn build_report(cfg: &InterferometerConfig) -> Result<SensitivityReport> {
    let delta_phi = phase_sensitivity(cfg)?;
    Ok(SensitivityReport {
        g: cfg.g,
        r: cfg.r,
        n_th: cfg.n_th,
        phi: cfg.phi,
        delta_phi,
        parity: parity_signal(cfg),
        delta_parity: parity_noise(cfg),
        slope: signal_slope(cfg),
        n_bar: cfg.mean_photons_inside(),
        snl: cfg.shot_noise_limit()?,
        hl: cfg.heisenberg_limit()?,
        n_opa: cfg.opa_photons(),
        n_s: cfg.squeezed_photons(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::parity_expectation;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(g: f64, r: f64, n_th: f64, phi: f64) -> InterferometerConfig {
        InterferometerConfig::new(g, r, n_th, phi).unwrap()
    }

    fn random_cfg(rng: &mut ChaCha8Rng) -> InterferometerConfig {
        cfg(
            rng.gen_range(0.0..3.0),
            rng.gen_range(0.0..2.5),
            rng.gen_range(0.0..30.0),
            rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        )
    }

    /// The reduced determinant in the expanded form it is usually quoted in.
    /// Suffers heavy cancellation at large g; kept only as a transcription
    /// cross-check against the factored production form.
    fn mode_b_determinant_expanded(c: &InterferometerConfig) -> f64 {
        let (g, r, n_th, phi) = (c.g(), c.r(), c.n_th(), c.phi());
        let ep = (2.0 * r).exp();
        let em = (-2.0 * r).exp();
        let s2 = (phi / 2.0).sin().powi(2);
        let sh2g2 = (2.0 * g).sinh().powi(2);
        let t = em
            * (-7.0 + 50.0 * ep - 7.0 * ep * ep
                + (1.0 + ep).powi(2)
                    * (4.0 * (4.0 * g).cosh()
                        + 3.0 * (8.0 * g).cosh()
                        + 8.0 * (2.0 * phi).cos() * sh2g2 * sh2g2
                        - 8.0 * phi.cos() * (4.0 * g).sinh().powi(2)))
            + 32.0
                * em
                * s2
                * sh2g2
                * n_th
                * ((1.0 + ep * ep) * (3.0 + (4.0 * g).cosh() - 2.0 * phi.cos() * sh2g2)
                    + 8.0 * ep * s2 * sh2g2 * (1.0 + n_th));
        t / 64.0
    }

    /// The slope in its expanded quoted form (signed; magnitude equals the
    /// production form). Same cancellation caveat as the determinant.
    fn signal_slope_expanded(c: &InterferometerConfig) -> f64 {
        let (g, r, n_th, phi) = (c.g(), c.r(), c.n_th(), c.phi());
        let sh2g2 = (2.0 * g).sinh().powi(2);
        let ch2g2 = (2.0 * g).cosh().powi(2);
        let chr2 = r.cosh().powi(2);
        let c2r = (2.0 * r).cosh();
        let numerator = -(128.0
            * sh2g2
            * (-2.0 * (2.0 * phi).sin() * sh2g2 * (chr2 + n_th * (1.0 + c2r + n_th))
                + phi.sin()
                    * (4.0 * ch2g2 * chr2 + 4.0 * n_th * (ch2g2 * c2r + sh2g2 * (1.0 + n_th)))));
        let t = 64.0 * mode_b_determinant_expanded(c);
        numerator / (t * t.sqrt())
    }

    #[test]
    fn frozen_reference_values() {
        // Golden values from an independent implementation of the same
        // physics, agreed with the matrix route to 2e-13 before freezing.
        let c = cfg(1.0, 0.5, 0.3, 0.2);
        assert_relative_eq!(parity_signal(&c), 0.697471895809903, max_relative = 1e-12);
        assert_relative_eq!(parity_noise(&c), 0.7166121367625166, max_relative = 1e-12);
        assert_relative_eq!(signal_slope(&c), 2.03186560624016, max_relative = 1e-12);
        assert_relative_eq!(
            phase_sensitivity(&c).unwrap(),
            0.35268677936261855,
            max_relative = 1e-12
        );
        let v = cfg(2.0, 0.0, 0.0, 0.0);
        assert_relative_eq!(
            zero_phase_sensitivity(&v).unwrap(),
            0.03664357032586561,
            max_relative = 1e-12
        );
        assert_relative_eq!(v.opa_photons(), 26.308232836016483, max_relative = 1e-12);
        assert_relative_eq!(
            v.shot_noise_limit().unwrap(),
            0.19496388106271262,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            v.heisenberg_limit().unwrap(),
            0.038010914919035556,
            max_relative = 1e-12
        );
        let b = cfg(2.0, 2.0, 20.0, 0.0);
        assert_relative_eq!(
            zero_phase_sensitivity(&b).unwrap(),
            0.0015480329317618543,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            b.mean_photons_inside(),
            931.6885634513824,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            optimal_thermal_photons(2.0, 0.0).unwrap(),
            0.017639021395330315,
            max_relative = 1e-12
        );
    }

    #[test]
    fn covariance_matches_matrix_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..300 {
            let c = random_cfg(&mut rng);
            let closed = output_covariance(&c).matrix();
            let propagated = c.output_state().cov;
            for i in 0..4 {
                for j in 0..4 {
                    let (a, b) = (closed[(i, j)], propagated[(i, j)]);
                    let scale = a.abs().max(b.abs()).max(1.0);
                    assert!(
                        (a - b).abs() <= 1e-10 * scale,
                        "entry ({i},{j}) at {c:?}: closed {a}, matrix {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn parity_matches_matrix_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..300 {
            let c = random_cfg(&mut rng);
            let via_matrix = parity_expectation(&c.output_state().mode_b()).unwrap();
            assert_relative_eq!(parity_signal(&c), via_matrix, max_relative = 1e-11);
        }
    }

    #[test]
    fn reduced_determinant_matches_quadrature_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for _ in 0..200 {
            let c = cfg(
                rng.gen_range(0.0..1.5),
                rng.gen_range(0.0..2.5),
                rng.gen_range(0.0..30.0),
                rng.gen_range(-3.0..3.0),
            );
            assert_relative_eq!(
                output_covariance(&c).mode_b().determinant(),
                mode_b_determinant(&c),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn expanded_transcriptions_agree_with_factored_forms() {
        // At moderate gain the expanded forms are still numerically sane;
        // there they must agree with the factored production forms, which
        // pins the transcription of both.
        let mut rng = ChaCha8Rng::seed_from_u64(109);
        for _ in 0..300 {
            let c = cfg(
                rng.gen_range(0.05..1.5),
                rng.gen_range(0.0..2.5),
                rng.gen_range(0.0..30.0),
                rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
            );
            assert_relative_eq!(
                mode_b_determinant_expanded(&c),
                mode_b_determinant(&c),
                max_relative = 1e-10
            );
            let slope = signal_slope(&c);
            if slope > 1e-12 {
                assert_relative_eq!(signal_slope_expanded(&c).abs(), slope, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn zero_phase_signal_is_exactly_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        for _ in 0..200 {
            let c = cfg(
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.0..2.5),
                rng.gen_range(0.0..30.0),
                0.0,
            );
            assert_eq!(parity_signal(&c), 1.0);
            assert_eq!(parity_noise(&c), 0.0);
            assert_eq!(signal_slope(&c), 0.0);
        }
    }

    #[test]
    fn noise_and_signal_are_pythagorean() {
        let mut rng = ChaCha8Rng::seed_from_u64(127);
        for _ in 0..300 {
            let c = random_cfg(&mut rng);
            let p = parity_signal(&c);
            let n = parity_noise(&c);
            assert_relative_eq!(p * p + n * n, 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn slope_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        let h = 1e-5;
        for _ in 0..200 {
            let c = cfg(
                rng.gen_range(0.05..1.5),
                rng.gen_range(0.0..1.5),
                rng.gen_range(0.0..10.0),
                rng.gen_range(0.05..3.0),
            );
            let slope = signal_slope(&c);
            if slope <= 1e-8 {
                continue;
            }
            let fd = (parity_signal(&c.with_phi(c.phi() + h).unwrap())
                - parity_signal(&c.with_phi(c.phi() - h).unwrap()))
                / (2.0 * h);
            assert_relative_eq!(fd.abs(), slope, max_relative = 1e-6);
        }
    }

    #[test]
    fn sensitivity_is_continuous_at_zero_phase() {
        // The finite-phi correction scales like sinh^2(2g) C phi^2, which at
        // g = 2, n_th = 5 is a few 1e-6 of the value; the tolerance leaves
        // room for that while still pinning the dispatch.
        for (g, r, n_th) in [(0.7, 0.4, 0.5), (2.0, 1.0, 5.0), (1.2, 0.0, 0.0)] {
            let at_zero = zero_phase_sensitivity(&cfg(g, r, n_th, 0.0)).unwrap();
            let near_zero = phase_sensitivity(&cfg(g, r, n_th, 1e-5)).unwrap();
            assert_relative_eq!(near_zero, at_zero, max_relative = 5e-5);
        }
    }

    #[test]
    fn vacuum_sensitivity_reduces_to_two_photon_form() {
        for k in 1..=30 {
            let g = 0.1 * k as f64;
            let c = cfg(g, 0.0, 0.0, 0.0);
            let n_opa = c.opa_photons();
            assert_relative_eq!(
                zero_phase_sensitivity(&c).unwrap(),
                1.0 / (n_opa * (n_opa + 2.0)).sqrt(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn optimal_thermal_seed_peaks_at_one_eighth() {
        // The n_s = 0 curve has its maximum where cosh(2g) = 2.
        let g_star = 0.5 * 2.0f64.acosh();
        assert_relative_eq!(
            optimal_thermal_photons(g_star, 0.0).unwrap(),
            0.125,
            max_relative = 1e-14
        );
        for k in 0..=500 {
            let g = 0.01 * k as f64;
            let v = optimal_thermal_photons(g, 0.0).unwrap();
            assert!(v <= 0.125 + 1e-12, "g = {g}: {v}");
            assert!(v >= 0.0);
        }
        // More seed squeezing only lowers the optimum, so the whole surface
        // stays at or below 1/8 (and far below the coarse bound of 1).
        for k in 0..=50 {
            let n_s = k as f64;
            for j in 0..=50 {
                let g = 0.1 * j as f64;
                let v = optimal_thermal_photons(g, n_s).unwrap();
                assert!(v <= 0.125 + 1e-12);
            }
        }
        // Negative raw values appear once the seed outweighs the gain.
        assert!(optimal_thermal_photons(0.1, 1.0).unwrap() < 0.0);
        assert_eq!(optimal_thermal_photons_clamped(0.1, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn blind_spots_are_reported() {
        assert!(matches!(
            phase_sensitivity(&cfg(0.0, 0.5, 1.0, 0.5)),
            Err(Error::PhaseBlindSpot { .. })
        ));
        assert!(matches!(
            zero_phase_sensitivity(&cfg(0.0, 0.0, 0.0, 0.0)),
            Err(Error::PhaseBlindSpot { .. })
        ));
        assert!(matches!(
            build_report(&cfg(0.0, 1.0, 2.0, 0.3)),
            Err(Error::PhaseBlindSpot { .. })
        ));
        let empty = cfg(0.0, 0.0, 0.0, 1.0);
        assert!(matches!(
            empty.shot_noise_limit(),
            Err(Error::UndefinedLimit { .. })
        ));
    }

    #[test]
    fn config_rejects_bad_parameters() {
        assert!(InterferometerConfig::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(InterferometerConfig::new(1.0, -0.1, 0.0, 0.0).is_err());
        assert!(InterferometerConfig::new(1.0, 0.0, -2.0, 0.0).is_err());
        assert!(InterferometerConfig::new(1.0, 0.0, 0.0, f64::NAN).is_err());
        assert!(InterferometerConfig::new(f64::INFINITY, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn report_fields_are_internally_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(137);
        for _ in 0..100 {
            let c = cfg(
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.0..20.0),
                rng.gen_range(0.05..3.0),
            );
            let rep = build_report(&c).unwrap();
            assert_relative_eq!(
                rep.delta_phi,
                rep.delta_parity / rep.slope,
                max_relative = 1e-14
            );
            assert_relative_eq!(rep.snl * rep.snl * rep.n_bar, 1.0, max_relative = 1e-14);
            assert_relative_eq!(rep.hl * rep.n_bar, 1.0, max_relative = 1e-14);
            assert!(rep.delta_parity >= 0.0 && rep.parity <= 1.0);
        }
        // At phi = 0 the sensitivity field carries the exact limit.
        let rep = build_report(&cfg(2.0, 1.0, 3.0, 0.0)).unwrap();
        assert_eq!(rep.parity, 1.0);
        assert_eq!(rep.slope, 0.0);
        assert_eq!(
            rep.delta_phi,
            zero_phase_sensitivity(&cfg(2.0, 1.0, 3.0, 0.0)).unwrap()
        );
    }

    #[test]
    fn report_serializes_with_stable_field_names() {
        let rep = build_report(&cfg(1.0, 0.5, 0.3, 0.2)).unwrap();
        let json = serde_json::to_value(rep).unwrap();
        for key in [
            "g",
            "r",
            "n_th",
            "phi",
            "delta_phi",
            "parity",
            "delta_parity",
            "slope",
            "n_bar",
            "snl",
            "hl",
            "n_opa",
            "n_s",
        ] {
            assert!(json.get(key).is_some(), "missing field {key}");
        }
    }
}
