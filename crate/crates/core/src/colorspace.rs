//! Color conversions among 8-bit sRGB, linear RGB, CIE XYZ (D65, 2 degree
//! observer) and CIE Lab, plus the Euclidean Lab color difference.
//!
//! 8-bit sRGB components are carried as reals in `[0, 255]` and quantized only
//! at I/O boundaries, so difference arithmetic stays exact. The Lab `f(t)`
//! uses the standard linear segment below `(6/29)^3` to avoid the cube-root
//! singularity at zero.

use crate::num::Real;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Identifies the coordinate system of a [`Color`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorSpace {
    /// 8-bit-scale sRGB, components in `[0, 255]` (stored as reals).
    Srgb8,
    /// Linear RGB, components in `[0, 1]`.
    LinearRgb,
    /// CIE XYZ, D65 white.
    Xyz,
    /// CIE Lab: `L` in `[0, 100]`, `a`/`b` roughly `[-128, 127]` in practice.
    Lab,
}

/// A 3-vector tagged with its color space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Color<T> {
    pub space: ColorSpace,
    pub v: [T; 3],
}

#[derive(Debug, Error, PartialEq)]
pub enum ColorError {
    #[error("component {component} = {value} outside [{min}, {max}] for {space:?}")]
    OutOfRange {
        space: ColorSpace,
        component: usize,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("expected colors in {expected:?}, got {got:?}")]
    SpaceMismatch { expected: ColorSpace, got: ColorSpace },
}

impl<T: Real> Color<T> {
    pub fn srgb8(r: T, g: T, b: T) -> Self {
        Color { space: ColorSpace::Srgb8, v: [r, g, b] }
    }

    pub fn linear_rgb(r: T, g: T, b: T) -> Self {
        Color { space: ColorSpace::LinearRgb, v: [r, g, b] }
    }

    pub fn xyz(x: T, y: T, z: T) -> Self {
        Color { space: ColorSpace::Xyz, v: [x, y, z] }
    }

    pub fn lab(l: T, a: T, b: T) -> Self {
        Color { space: ColorSpace::Lab, v: [l, a, b] }
    }
}

/// Linear sRGB -> XYZ (D65). The white point below is defined as the row sums
/// of this matrix so that the gray axis maps to exactly zero chroma.
const SRGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564390896921, 0.357576077643909, 0.18043748326639894],
    [0.21267285140562248, 0.715152155287818, 0.07217499330655958],
    [0.019333895582329317, 0.119192025881303, 0.9503040785363677],
];

const XYZ_TO_SRGB: [[f64; 3]; 3] = [
    [3.2404541621141045, -1.5371385127977166, -0.498531409556016],
    [-0.9692660305051868, 1.8760108454466942, 0.04155601753034984],
    [0.05564343095911469, -0.20402591351675387, 1.0572251882231791],
];

fn white_point<T: Real>() -> [T; 3] {
    let mut w = [T::zero(); 3];
    for (i, row) in SRGB_TO_XYZ.iter().enumerate() {
        w[i] = T::of(row[0] + row[1] + row[2]);
    }
    w
}

fn check_srgb8<T: Real>(c: &Color<T>) -> Result<(), ColorError> {
    if c.space != ColorSpace::Srgb8 {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::Srgb8, got: c.space });
    }
    let slop = T::of(1e-9);
    for (i, &x) in c.v.iter().enumerate() {
        if !(x >= -slop && x <= T::of(255.0) + slop) {
            return Err(ColorError::OutOfRange {
                space: ColorSpace::Srgb8,
                component: i,
                value: x.to_f64().unwrap_or(f64::NAN),
                min: 0.0,
                max: 255.0,
            });
        }
    }
    Ok(())
}

/// sRGB electro-optical transfer: encoded `[0, 1]` -> linear `[0, 1]`.
fn srgb_eotf<T: Real>(s: T) -> T {
    if s <= T::of(0.04045) {
        s / T::of(12.92)
    } else {
        ((s + T::of(0.055)) / T::of(1.055)).powf(T::of(2.4))
    }
}

/// Inverse of [`srgb_eotf`]: linear `[0, 1]` -> encoded `[0, 1]`.
fn srgb_oetf<T: Real>(v: T) -> T {
    if v <= T::of(0.0031308) {
        v * T::of(12.92)
    } else {
        T::of(1.055) * v.powf(T::one() / T::of(2.4)) - T::of(0.055)
    }
}

const LAB_DELTA_CUBED: f64 = 216.0 / 24389.0; // (6/29)^3

fn lab_f<T: Real>(t: T) -> T {
    if t > T::of(LAB_DELTA_CUBED) {
        t.cbrt()
    } else {
        // t / (3 delta^2) + 4/29
        T::of(24389.0 / 27.0) * t / T::of(116.0) + T::of(16.0 / 116.0)
    }
}

fn lab_f_inv<T: Real>(u: T) -> T {
    let delta = T::of(6.0 / 29.0);
    if u > delta {
        u * u * u
    } else {
        (u - T::of(16.0 / 116.0)) * T::of(116.0) * T::of(27.0 / 24389.0)
    }
}

pub fn srgb8_to_linear_rgb<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    check_srgb8(c)?;
    let mut v = [T::zero(); 3];
    for i in 0..3 {
        v[i] = srgb_eotf(c.v[i] / T::of(255.0));
    }
    Ok(Color { space: ColorSpace::LinearRgb, v })
}

pub fn linear_rgb_to_xyz<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    if c.space != ColorSpace::LinearRgb {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::LinearRgb, got: c.space });
    }
    let mut v = [T::zero(); 3];
    for i in 0..3 {
        let row = SRGB_TO_XYZ[i];
        v[i] = T::of(row[0]) * c.v[0] + T::of(row[1]) * c.v[1] + T::of(row[2]) * c.v[2];
    }
    Ok(Color { space: ColorSpace::Xyz, v })
}

pub fn xyz_to_lab<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    if c.space != ColorSpace::Xyz {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::Xyz, got: c.space });
    }
    let w = white_point::<T>();
    let fx = lab_f(c.v[0] / w[0]);
    let fy = lab_f(c.v[1] / w[1]);
    let fz = lab_f(c.v[2] / w[2]);
    Ok(Color {
        space: ColorSpace::Lab,
        v: [
            T::of(116.0) * fy - T::of(16.0),
            T::of(500.0) * (fx - fy),
            T::of(200.0) * (fy - fz),
        ],
    })
}

pub fn lab_to_xyz<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    if c.space != ColorSpace::Lab {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::Lab, got: c.space });
    }
    let w = white_point::<T>();
    let fy = (c.v[0] + T::of(16.0)) / T::of(116.0);
    let fx = fy + c.v[1] / T::of(500.0);
    let fz = fy - c.v[2] / T::of(200.0);
    Ok(Color {
        space: ColorSpace::Xyz,
        v: [w[0] * lab_f_inv(fx), w[1] * lab_f_inv(fy), w[2] * lab_f_inv(fz)],
    })
}

pub fn xyz_to_linear_rgb<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    if c.space != ColorSpace::Xyz {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::Xyz, got: c.space });
    }
    let mut v = [T::zero(); 3];
    for i in 0..3 {
        let row = XYZ_TO_SRGB[i];
        v[i] = T::of(row[0]) * c.v[0] + T::of(row[1]) * c.v[1] + T::of(row[2]) * c.v[2];
    }
    Ok(Color { space: ColorSpace::LinearRgb, v })
}

/// Converts 8-bit sRGB to Lab. Rejects out-of-range input.
pub fn srgb8_to_lab<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    xyz_to_lab(&linear_rgb_to_xyz(&srgb8_to_linear_rgb(c)?)?)
}

/// Converts Lab to 8-bit sRGB, clamping to `[0, 255]`. The flag is `true`
/// when clamping moved any component by more than a float-noise tolerance.
pub fn lab_to_srgb8<T: Real>(c: &Color<T>) -> Result<(Color<T>, bool), ColorError> {
    let lin = xyz_to_linear_rgb(&lab_to_xyz(c)?)?;
    let mut v = [T::zero(); 3];
    let mut clamped = false;
    let tol = T::of(1e-6);
    for i in 0..3 {
        // Negative linear values have no encoded representation; keep them
        // negative (proportionally) so the clamp below flags them.
        let s = if lin.v[i] <= T::zero() {
            lin.v[i] * T::of(255.0)
        } else {
            srgb_oetf(lin.v[i]) * T::of(255.0)
        };
        let clipped = s.max(T::zero()).min(T::of(255.0));
        if (s - clipped).abs() > tol {
            clamped = true;
        }
        v[i] = clipped;
    }
    Ok((Color { space: ColorSpace::Srgb8, v }, clamped))
}

/// Converts a color in any supported space to Lab.
pub fn to_lab<T: Real>(c: &Color<T>) -> Result<Color<T>, ColorError> {
    match c.space {
        ColorSpace::Lab => Ok(*c),
        ColorSpace::Xyz => xyz_to_lab(c),
        ColorSpace::LinearRgb => xyz_to_lab(&linear_rgb_to_xyz(c)?),
        ColorSpace::Srgb8 => srgb8_to_lab(c),
    }
}

/// Euclidean distance in Lab (the classic delta-E). Both inputs must already
/// be Lab; mixing spaces is rejected rather than silently converted.
pub fn delta_e<T: Real>(c1: &Color<T>, c2: &Color<T>) -> Result<T, ColorError> {
    if c1.space != ColorSpace::Lab {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::Lab, got: c1.space });
    }
    if c2.space != ColorSpace::Lab {
        return Err(ColorError::SpaceMismatch { expected: ColorSpace::Lab, got: c2.space });
    }
    let mut s = T::zero();
    for i in 0..3 {
        let d = c1.v[i] - c2.v[i];
        s += d * d;
    }
    Ok(s.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn white_maps_to_lab_white() {
        let c = Color::srgb8(255.0f64, 255.0, 255.0);
        let lab = srgb8_to_lab(&c).unwrap();
        assert!((lab.v[0] - 100.0).abs() < 1e-9, "L = {}", lab.v[0]);
        assert!(lab.v[1].abs() <= 0.01);
        assert!(lab.v[2].abs() <= 0.01);
    }

    #[test]
    fn black_maps_to_lab_zero() {
        let lab = srgb8_to_lab(&Color::srgb8(0.0f64, 0.0, 0.0)).unwrap();
        for i in 0..3 {
            assert!(lab.v[i].abs() < 1e-9);
        }
    }

    #[test]
    fn mid_gray_lightness_matches_standard_formulas() {
        // Independent evaluation of the standard chain for sRGB (128,128,128):
        // s = 128/255; y = ((s+0.055)/1.055)^2.4; L = 116 y^(1/3) - 16.
        let s = 128.0f64 / 255.0;
        let y = ((s + 0.055) / 1.055).powf(2.4);
        let expected_l = 116.0 * y.cbrt() - 16.0;

        let lab = srgb8_to_lab(&Color::srgb8(128.0f64, 128.0, 128.0)).unwrap();
        assert!((lab.v[0] - expected_l).abs() < 1e-9, "L = {}", lab.v[0]);
        assert!(lab.v[1].abs() <= 0.01);
        assert!(lab.v[2].abs() <= 0.01);
    }

    #[test]
    fn gray_axis_has_zero_chroma() {
        for g in 0..=255 {
            let lab = srgb8_to_lab(&Color::srgb8(g as f64, g as f64, g as f64)).unwrap();
            assert!(lab.v[1].abs() <= 0.01 && lab.v[2].abs() <= 0.01, "gray {}", g);
        }
    }

    #[test]
    fn lab_white_maps_to_srgb_white_without_clamp() {
        let (c, flag) = lab_to_srgb8(&Color::lab(100.0f64, 0.0, 0.0)).unwrap();
        assert!(!flag);
        for i in 0..3 {
            assert!((c.v[i] - 255.0).abs() < 1e-6);
        }
    }

    #[test]
    fn out_of_gamut_lab_sets_clamp_flag() {
        // Verify the unclamped inverse leaves [0, 255] first.
        let lab = Color::lab(50.0f64, 200.0, 0.0);
        let lin = xyz_to_linear_rgb(&lab_to_xyz(&lab).unwrap()).unwrap();
        assert!(
            lin.v.iter().any(|&x| x < 0.0 || x > 1.0),
            "test premise: (50,200,0) must be out of gamut, got {:?}",
            lin.v
        );
        let (c, flag) = lab_to_srgb8(&lab).unwrap();
        assert!(flag);
        for i in 0..3 {
            assert!(c.v[i] >= 0.0 && c.v[i] <= 255.0);
        }
    }

    #[test]
    fn round_trip_is_exact_within_half_a_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10_000 {
            let c = Color::srgb8(
                rng.gen_range(0..=255u32) as f64,
                rng.gen_range(0..=255u32) as f64,
                rng.gen_range(0..=255u32) as f64,
            );
            let lab = srgb8_to_lab(&c).unwrap();
            let (back, flag) = lab_to_srgb8(&lab).unwrap();
            assert!(!flag, "in-gamut round trip must not clamp: {:?}", c.v);
            for i in 0..3 {
                assert!(
                    (back.v[i] - c.v[i]).abs() <= 0.5,
                    "channel {} drifted: {} -> {}",
                    i,
                    c.v[i],
                    back.v[i]
                );
            }
        }
    }

    #[test]
    fn round_trip_f32_within_half_a_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2_000 {
            let c = Color::srgb8(
                rng.gen_range(0..=255u32) as f32,
                rng.gen_range(0..=255u32) as f32,
                rng.gen_range(0..=255u32) as f32,
            );
            let lab = srgb8_to_lab(&c).unwrap();
            let (back, _) = lab_to_srgb8(&lab).unwrap();
            for i in 0..3 {
                assert!((back.v[i] - c.v[i]).abs() <= 0.5);
            }
        }
    }

    #[test]
    fn delta_e_examples() {
        let a = Color::lab(40.0f64, 10.0, -5.0);
        assert_eq!(delta_e(&a, &a).unwrap(), 0.0);

        let b = Color::lab(40.0f64, 13.0, -1.0);
        assert!((delta_e(&a, &b).unwrap() - 5.0).abs() < 1e-12, "3-4-5 triangle");

        // A shift of radius 5 in any direction has delta-E 5.
        let dir = [2.0f64, -1.0, 2.0];
        let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        let c = Color::lab(40.0 + 5.0 * dir[0] / n, 10.0 + 5.0 * dir[1] / n, -5.0 + 5.0 * dir[2] / n);
        assert!((delta_e(&a, &c).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn delta_e_rejects_mismatched_spaces() {
        let a = Color::lab(40.0f64, 0.0, 0.0);
        let b = Color::srgb8(10.0f64, 10.0, 10.0);
        assert!(matches!(delta_e(&a, &b), Err(ColorError::SpaceMismatch { .. })));
    }

    #[test]
    fn delta_e_satisfies_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1_000 {
            let mut pick = || {
                Color::lab(
                    rng.gen_range(0.0..100.0f64),
                    rng.gen_range(-128.0..127.0),
                    rng.gen_range(-128.0..127.0),
                )
            };
            let (a, b, c) = (pick(), pick(), pick());
            let ab = delta_e(&a, &b).unwrap();
            let bc = delta_e(&b, &c).unwrap();
            let ac = delta_e(&a, &c).unwrap();
            assert!(ac <= ab + bc + 1e-9);
        }
    }

    #[test]
    fn out_of_range_srgb_is_rejected() {
        assert!(matches!(
            srgb8_to_lab(&Color::srgb8(-3.0f64, 0.0, 0.0)),
            Err(ColorError::OutOfRange { .. })
        ));
        assert!(matches!(
            srgb8_to_lab(&Color::srgb8(0.0f64, 256.0, 0.0)),
            Err(ColorError::OutOfRange { .. })
        ));
    }
}
