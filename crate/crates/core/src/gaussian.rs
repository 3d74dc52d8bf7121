//! Two-mode Gaussian states and the symplectic maps of the instrument.
//!
//! Quadratures are x = a + a\dagger and p = -i(a - a\dagger), stacked as
//! (x_a, p_a, x_b, p_b), so the vacuum covariance is the identity and a mode
//! with covariance (2n+1) I holds n thermal photons. Symplectic matrices act
//! on covariances as S cov S^T and on means as S mean.

use nalgebra::{Matrix2, Matrix4, SMatrix, Vector2, Vector4};

use crate::error::{check_finite, check_nonnegative, Error};
use crate::Result;

/// Single-mode symplectic form in the x = a + a\dagger scaling.
pub fn omega_single() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Two-mode symplectic form: one omega block per mode.
pub fn omega_two_mode() -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&omega_single());
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&omega_single());
    m
}

/// Gaussian state of one optical mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    /// Mean quadrature vector (x, p); a coherent amplitude alpha sits at
    /// (2 Re alpha, 2 Im alpha) in this scaling.
    pub mean: Vector2<f64>,
    /// Symmetric 2x2 quadrature covariance; vacuum = identity.
    pub cov: Matrix2<f64>,
}

impl ModeState {
    /// Mean photon number a\dagger a of the state.
    pub fn mean_photons(&self) -> f64 {
        (self.cov.trace() + self.mean.norm_squared()) / 4.0 - 0.5
    }
}

/// Gaussian state of the two interferometer modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeState {
    /// Mean quadratures (x_a, p_a, x_b, p_b).
    pub mean: Vector4<f64>,
    /// Symmetric 4x4 quadrature covariance.
    pub cov: Matrix4<f64>,
}

impl TwoModeState {
    /// Marginal state of mode a (upper-left block).
    pub fn mode_a(&self) -> ModeState {
        ModeState {
            mean: Vector2::new(self.mean[0], self.mean[1]),
            cov: self.cov.fixed_view::<2, 2>(0, 0).into_owned(),
        }
    }

    /// Marginal state of mode b (lower-right block).
    pub fn mode_b(&self) -> ModeState {
        ModeState {
            mean: Vector2::new(self.mean[2], self.mean[3]),
            cov: self.cov.fixed_view::<2, 2>(2, 2).into_owned(),
        }
    }

    /// Total mean photon number over both modes.
    pub fn total_mean_photons(&self) -> f64 {
        self.mode_a().mean_photons() + self.mode_b().mean_photons()
    }

    /// Smallest eigenvalue of cov + i omega.
    ///
    /// Physical states have this >= 0 (up to roundoff); a negative value of
    /// meaningful size flags a covariance that no quantum state can have.
    /// Computed through the real 8x8 embedding [[G, -W], [W, G]] of the
    /// Hermitian matrix G + iW, which has the same spectrum (doubled).
    pub fn uncertainty_defect(&self) -> f64 {
        let om = omega_two_mode();
        let mut m = SMatrix::<f64, 8, 8>::zeros();
        m.fixed_view_mut::<4, 4>(0, 0).copy_from(&self.cov);
        m.fixed_view_mut::<4, 4>(0, 4).copy_from(&(-om));
        m.fixed_view_mut::<4, 4>(4, 0).copy_from(&om);
        m.fixed_view_mut::<4, 4>(4, 4).copy_from(&self.cov);
        m.symmetric_eigen().eigenvalues.min()
    }

    /// Checks symmetry, finiteness and the uncertainty relation.
    pub fn assert_physical(&self, tol: f64) -> Result<()> {
        if self.mean.iter().any(|v| !v.is_finite()) || self.cov.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCovariance {
                reason: "non-finite entry".into(),
            });
        }
        let asym = (self.cov - self.cov.transpose()).abs().max();
        if asym > tol {
            return Err(Error::InvalidCovariance {
                reason: format!("asymmetry {asym:.3e} exceeds tolerance {tol:.1e}"),
            });
        }
        let defect = self.uncertainty_defect();
        if defect < -tol {
            return Err(Error::InvalidCovariance {
                reason: format!(
                    "uncertainty relation violated: min eig(cov + i omega) = {defect:.3e}"
                ),
            });
        }
        Ok(())
    }
}

/// A 4x4 symplectic matrix (a Gaussian unitary in phase space).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Symplectic(Matrix4<f64>);

impl Symplectic {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Composition `self . earlier`: the map that applies `earlier` first.
    pub fn compose(&self, earlier: &Symplectic) -> Symplectic {
        Symplectic(self.0 * earlier.0)
    }

    /// Transforms a state: mean -> S mean, cov -> S cov S^T.
    pub fn apply(&self, state: &TwoModeState) -> TwoModeState {
        TwoModeState {
            mean: self.0 * state.mean,
            cov: self.0 * state.cov * self.0.transpose(),
        }
    }

    /// Largest entry of |S omega S^T - omega|; zero for an exact symplectic.
    pub fn symplectic_defect(&self) -> f64 {
        let om = omega_two_mode();
        (self.0 * om * self.0.transpose() - om).abs().max()
    }
}

/// Thermal state with mean photon number `n_th`: covariance (2 n_th + 1) I.
pub fn thermal_state(n_th: f64) -> Result<ModeState> {
    check_nonnegative("n_th", n_th)?;
    Ok(ModeState {
        mean: Vector2::zeros(),
        cov: Matrix2::identity() * (2.0 * n_th + 1.0),
    })
}

/// Squeezed vacuum with strength `r`: covariance diag(e^{2r}, e^{-2r}).
///
/// Positive r stretches the x quadrature. Any finite r is accepted; negative
/// values squeeze the conjugate axis instead.
pub fn squeezed_vacuum_state(r: f64) -> Result<ModeState> {
    check_finite("r", r)?;
    Ok(ModeState {
        mean: Vector2::zeros(),
        cov: Matrix2::new((2.0 * r).exp(), 0.0, 0.0, (-2.0 * r).exp()),
    })
}

/// Product state with `a` in the first slot and `b` in the second.
pub fn tensor(a: &ModeState, b: &ModeState) -> TwoModeState {
    let mut cov = Matrix4::zeros();
    cov.fixed_view_mut::<2, 2>(0, 0).copy_from(&a.cov);
    cov.fixed_view_mut::<2, 2>(2, 2).copy_from(&b.cov);
    TwoModeState {
        mean: Vector4::new(a.mean.x, a.mean.y, b.mean.x, b.mean.y),
        cov,
    }
}

/// Thermal seed in mode a, squeezed vacuum in mode b: the instrument's input.
pub fn thermal_squeezed_input(n_th: f64, r: f64) -> Result<TwoModeState> {
    Ok(tensor(&thermal_state(n_th)?, &squeezed_vacuum_state(r)?))
}

/// Phase-space action of an optical parametric amplifier of strength `g`
/// and pump phase `theta` (a two-mode squeezer).
pub fn two_mode_squeezer(g: f64, theta: f64) -> Result<Symplectic> {
    check_nonnegative("g", g)?;
    check_finite("theta", theta)?;
    Ok(squeezer_from_trig(g, theta.cos(), theta.sin()))
}

/// Core builder taking the pump phase as (cos, sin) so the composed
/// interferometer can use the exact values (1, 0) and (-1, 0) for its two
/// amplifier stages instead of trig round-off.
fn squeezer_from_trig(g: f64, cos_t: f64, sin_t: f64) -> Symplectic {
    let ch = g.cosh();
    let sh = g.sinh();
    let (sc, ss) = (sh * cos_t, sh * sin_t);
    #[rustfmt::skip]
    let m = Matrix4::new(
        ch,  0.0, sc,  ss,
        0.0, ch,  ss,  -sc,
        sc,  ss,  ch,  0.0,
        ss,  -sc, 0.0, ch,
    );
    Symplectic(m)
}

/// Phase accumulation stage: both modes rotate by half the total phase `phi`.
pub fn phase_shifter(phi: f64) -> Result<Symplectic> {
    check_finite("phi", phi)?;
    let (s, c) = (phi / 2.0).sin_cos();
    #[rustfmt::skip]
    let m = Matrix4::new(
        c,   -s,  0.0, 0.0,
        s,   c,   0.0, 0.0,
        0.0, 0.0, c,   -s,
        0.0, 0.0, s,   c,
    );
    Ok(Symplectic(m))
}

/// Full instrument: amplifier (pump phase 0), phase stage, then a second
/// amplifier with pump phase pi so that at phi = 0 it undoes the first.
pub fn interferometer(g: f64, phi: f64) -> Result<Symplectic> {
    check_nonnegative("g", g)?;
    let first = squeezer_from_trig(g, 1.0, 0.0);
    let second = squeezer_from_trig(g, -1.0, 0.0);
    let mid = phase_shifter(phi)?;
    Ok(second.compose(&mid).compose(&first))
}

/// Expectation of the photon-number parity (-1)^n of a single mode.
///
/// For a Gaussian state this is exp(-q/2)/sqrt(det cov) with
/// q = mean^T cov^{-1} mean; a displaced vacuum with amplitude alpha gives
/// exp(-2 |alpha|^2), a thermal state 1/(2 n_th + 1).
pub fn parity_expectation(state: &ModeState) -> Result<f64> {
    let det = state.cov.determinant();
    if !det.is_finite() || det <= f64::MIN_POSITIVE {
        return Err(Error::SingularReducedCovariance { det });
    }
    let m = &state.mean;
    let c = &state.cov;
    let quad = (m.x * m.x * c[(1, 1)] - 2.0 * m.x * m.y * c[(0, 1)] + m.y * m.y * c[(0, 0)]) / det;
    Ok((-0.5 * quad).exp() / det.sqrt())
}

/// Mean photon number held in both arms between the two amplifier stages:
/// the input state evolved through the first amplifier alone.
pub fn mean_photons_inside(input: &TwoModeState, g: f64) -> Result<f64> {
    check_nonnegative("g", g)?;
    let amplified = squeezer_from_trig(g, 1.0, 0.0).apply(input);
    Ok(amplified.total_mean_photons())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vacuum() -> ModeState {
        thermal_state(0.0).unwrap()
    }

    #[test]
    fn vacuum_parity_is_exactly_one() {
        assert_eq!(parity_expectation(&vacuum()).unwrap(), 1.0);
    }

    #[test]
    fn thermal_parity_matches_geometric_series() {
        // (-1)^n averaged over the geometric photon distribution sums to
        // 1/(2n+1).
        for n_th in [0.0, 0.5, 2.0, 20.0] {
            let state = thermal_state(n_th).unwrap();
            let expected = 1.0 / (2.0 * n_th + 1.0);
            assert_relative_eq!(
                parity_expectation(&state).unwrap(),
                expected,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn squeezed_vacuum_parity_is_one_for_any_strength() {
        for r in [0.0, 0.3, 1.0, 2.5] {
            let state = squeezed_vacuum_state(r).unwrap();
            assert_relative_eq!(
                parity_expectation(&state).unwrap(),
                1.0,
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn displaced_vacuum_parity_matches_coherent_state_sum() {
        // A coherent state |alpha> has parity exp(-2 |alpha|^2).
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let re: f64 = rng.gen_range(-1.5..1.5);
            let im: f64 = rng.gen_range(-1.5..1.5);
            let state = ModeState {
                mean: Vector2::new(2.0 * re, 2.0 * im),
                cov: Matrix2::identity(),
            };
            let expected = (-2.0 * (re * re + im * im)).exp();
            assert_relative_eq!(
                parity_expectation(&state).unwrap(),
                expected,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn parity_rejects_singular_covariance() {
        let state = ModeState {
            mean: Vector2::zeros(),
            cov: Matrix2::zeros(),
        };
        assert!(matches!(
            parity_expectation(&state),
            Err(Error::SingularReducedCovariance { .. })
        ));
    }

    #[test]
    fn squeezer_is_symplectic_with_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let g: f64 = rng.gen_range(0.0..3.0);
            let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let s = two_mode_squeezer(g, theta).unwrap();
            // The condition number of the squeezer grows like e^{4g}, and the
            // float error of both checks grows with it.
            let tol = (32.0 * f64::EPSILON * (4.0 * g).exp()).max(1e-12);
            assert!(s.symplectic_defect() <= tol);
            assert_relative_eq!(s.matrix().determinant(), 1.0, max_relative = tol);
        }
    }

    #[test]
    fn composed_interferometer_is_symplectic_at_large_gain() {
        // Entries grow like cosh(2g), so the roundoff floor scales with them.
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let g: f64 = rng.gen_range(0.0..5.0);
            let phi: f64 = rng.gen_range(-7.0..7.0);
            let s = interferometer(g, phi).unwrap();
            let scale = (2.0 * g).cosh();
            assert!(s.symplectic_defect() <= 64.0 * f64::EPSILON * scale * scale);
        }
    }

    #[test]
    fn interferometer_at_zero_phase_is_identity() {
        for k in 0..=50 {
            let g = 0.1 * k as f64;
            let s = interferometer(g, 0.0).unwrap();
            let defect = (s.matrix() - Matrix4::identity()).abs().max();
            assert!(
                defect <= 4.0 * f64::EPSILON * (2.0 * g).cosh(),
                "g = {g}: defect {defect:.3e}"
            );
        }
    }

    #[test]
    fn zero_gain_interferometer_is_the_phase_stage() {
        let s = interferometer(0.0, 1.3).unwrap();
        let p = phase_shifter(1.3).unwrap();
        assert_abs_diff_eq!(s.matrix(), p.matrix(), epsilon = 1e-15);
    }

    #[test]
    fn phase_shifters_compose_additively() {
        let a = phase_shifter(0.7).unwrap();
        let b = phase_shifter(1.1).unwrap();
        let both = phase_shifter(1.8).unwrap();
        let defect = (a.compose(&b).matrix() - both.matrix()).abs().max();
        assert!(defect <= 1e-15);
    }

    #[test]
    fn amplified_vacuum_photon_number_is_sinh_squared() {
        // A two-mode squeezer pumps sinh^2(g) photons into each mode.
        for k in 1..=25 {
            let g = 0.2 * k as f64;
            let out = two_mode_squeezer(g, 0.4)
                .unwrap()
                .apply(&tensor(&vacuum(), &vacuum()));
            let expected = g.sinh().powi(2);
            assert_relative_eq!(out.mode_a().mean_photons(), expected, max_relative = 1e-10);
            assert_relative_eq!(out.mode_b().mean_photons(), expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn photons_inside_match_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..200 {
            let g: f64 = rng.gen_range(0.0..3.0);
            let r: f64 = rng.gen_range(0.0..2.5);
            let n_th: f64 = rng.gen_range(0.0..30.0);
            let input = thermal_squeezed_input(n_th, r).unwrap();
            let n_opa = 2.0 * g.sinh().powi(2);
            let n_s = r.sinh().powi(2);
            let expected = (n_opa + 1.0) * (n_th + n_s) + n_opa;
            assert_relative_eq!(
                mean_photons_inside(&input, g).unwrap(),
                expected,
                max_relative = 1e-10,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn evolved_states_stay_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let g: f64 = rng.gen_range(0.0..2.5);
            let r: f64 = rng.gen_range(0.0..2.0);
            let n_th: f64 = rng.gen_range(0.0..20.0);
            let phi: f64 = rng.gen_range(-6.5..6.5);
            let input = thermal_squeezed_input(n_th, r).unwrap();
            input.assert_physical(1e-9).unwrap();
            let output = interferometer(g, phi).unwrap().apply(&input);
            output.assert_physical(1e-9).unwrap();
        }
    }

    #[test]
    fn transform_preserves_covariance_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..100 {
            let g: f64 = rng.gen_range(0.0..2.0);
            let r: f64 = rng.gen_range(0.0..2.0);
            let n_th: f64 = rng.gen_range(0.0..10.0);
            let phi: f64 = rng.gen_range(-3.0..3.0);
            let input = thermal_squeezed_input(n_th, r).unwrap();
            let output = interferometer(g, phi).unwrap().apply(&input);
            // Determinants of ill-conditioned products lose digits like
            // eps * e^{8g} * ||input cov||; scale the tolerance accordingly.
            let scale = (8.0 * g).exp() * (2.0 * n_th + 1.0).max((2.0 * r).exp());
            let tol = (256.0 * f64::EPSILON * scale).max(1e-12);
            assert_relative_eq!(
                output.cov.determinant(),
                input.cov.determinant(),
                max_relative = tol
            );
        }
    }

    #[test]
    fn uncertainty_defect_flags_sub_vacuum_noise() {
        let too_quiet = TwoModeState {
            mean: Vector4::zeros(),
            cov: Matrix4::identity() * 0.5,
        };
        assert!(too_quiet.uncertainty_defect() < -0.4);
        assert!(too_quiet.assert_physical(1e-9).is_err());
    }

    #[test]
    fn mode_reduction_picks_the_right_blocks() {
        let n_th = 1.5;
        let r = 0.8;
        let input = thermal_squeezed_input(n_th, r).unwrap();
        let a = input.mode_a();
        let b = input.mode_b();
        assert_eq!(a.cov, thermal_state(n_th).unwrap().cov);
        assert_eq!(b.cov, squeezed_vacuum_state(r).unwrap().cov);
        // At zero phase the instrument hands the inputs back.
        let out = interferometer(1.3, 0.0).unwrap().apply(&input);
        assert_abs_diff_eq!(out.mode_b().cov, b.cov, epsilon = 1e-12);
    }

    #[test]
    fn constructors_reject_bad_parameters() {
        assert!(thermal_state(-0.1).is_err());
        assert!(thermal_state(f64::NAN).is_err());
        assert!(squeezed_vacuum_state(f64::INFINITY).is_err());
        assert!(two_mode_squeezer(-1.0, 0.0).is_err());
        assert!(two_mode_squeezer(f64::NAN, 0.0).is_err());
        assert!(two_mode_squeezer(1.0, f64::INFINITY).is_err());
        assert!(phase_shifter(f64::NAN).is_err());
        assert!(interferometer(-0.5, 1.0).is_err());
    }

    #[test]
    fn squeezer_sign_pattern_at_reference_phases() {
        let g = 2.0;
        let s0 = two_mode_squeezer(g, 0.0).unwrap();
        let m = s0.matrix();
        let (ch, sh) = (g.cosh(), g.sinh());
        for i in 0..4 {
            assert_relative_eq!(m[(i, i)], ch, max_relative = 1e-15);
        }
        assert_relative_eq!(m[(0, 2)], sh, max_relative = 1e-15);
        assert_relative_eq!(m[(2, 0)], sh, max_relative = 1e-15);
        assert_relative_eq!(m[(1, 3)], -sh, max_relative = 1e-15);
        assert_relative_eq!(m[(3, 1)], -sh, max_relative = 1e-15);
        assert_eq!(m[(0, 1)], 0.0);
        assert_eq!(m[(0, 3)], 0.0);
        // Pump phase pi flips the sign of every sinh entry.
        let spi = two_mode_squeezer(g, std::f64::consts::PI).unwrap();
        let mp = spi.matrix();
        assert_relative_eq!(mp[(0, 2)], -sh, max_relative = 1e-12);
        assert_relative_eq!(mp[(1, 3)], sh, max_relative = 1e-12);
    }
}
