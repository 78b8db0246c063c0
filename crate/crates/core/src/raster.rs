//! RGB raster with real-valued samples on the 8-bit `[0, 255]` scale.
//!
//! Pixels stay real-valued through the whole pipeline; quantization to `u8`
//! happens only at PNG boundaries.

use crate::num::Real;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("image error: {0}")]
    Image(#[from] image::ImageError),
    #[error("raster must be non-empty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Raster<T> {
    width: usize,
    height: usize,
    data: Vec<[T; 3]>,
}

impl<T: Real> Raster<T> {
    pub fn filled(width: usize, height: usize, px: [T; 3]) -> Self {
        Raster { width, height, data: vec![px; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [T; 3]) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Raster { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> [T; 3] {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, px: [T; 3]) {
        self.data[y * self.width + x] = px;
    }

    pub fn pixels(&self) -> &[[T; 3]] {
        &self.data
    }

    pub fn pixels_mut(&mut self) -> &mut [[T; 3]] {
        &mut self.data
    }

    pub fn same_dims(&self, other: &Self) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Reads an 8-bit RGB PNG (alpha is dropped).
    pub fn read_png(path: &Path) -> Result<Self, RasterError> {
        let img = image::open(path)?.to_rgb8();
        let (w, h) = (img.width() as usize, img.height() as usize);
        if w == 0 || h == 0 {
            return Err(RasterError::Empty);
        }
        let mut data = Vec::with_capacity(w * h);
        for p in img.pixels() {
            data.push([T::of(p.0[0] as f64), T::of(p.0[1] as f64), T::of(p.0[2] as f64)]);
        }
        Ok(Raster { width: w, height: h, data })
    }

    /// Writes an 8-bit RGB PNG, rounding and clamping each sample. The file
    /// is written to a temporary sibling and renamed into place so a failed
    /// write never leaves a partial file.
    pub fn write_png(&self, path: &Path) -> Result<(), RasterError> {
        if self.data.is_empty() {
            return Err(RasterError::Empty);
        }
        let mut buf = Vec::with_capacity(self.data.len() * 3);
        for px in &self.data {
            for &c in px.iter() {
                let q = c.to_f64().unwrap_or(0.0).round().clamp(0.0, 255.0);
                buf.push(q as u8);
            }
        }
        let img = image::RgbImage::from_raw(self.width as u32, self.height as u32, buf)
            .expect("buffer length matches dimensions");
        let tmp = tmp_sibling(path);
        img.save_with_format(&tmp, image::ImageFormat::Png)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Temporary sibling path used for atomic writes.
pub(crate) fn tmp_sibling(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".tmp~");
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_round_trip_preserves_integral_pixels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.png");
        let r = Raster::<f64>::from_fn(13, 7, |x, y| {
            [(x * 19 % 256) as f64, (y * 37 % 256) as f64, ((x + y) * 11 % 256) as f64]
        });
        r.write_png(&path).unwrap();
        let back = Raster::<f64>::read_png(&path).unwrap();
        assert!(back.same_dims(&r));
        for (a, b) in r.pixels().iter().zip(back.pixels()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn write_rounds_and_clamps() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.png");
        let mut r = Raster::<f64>::filled(2, 1, [0.0; 3]);
        r.set(0, 0, [12.4, 12.6, -7.0]);
        r.set(1, 0, [270.0, 254.5, 255.0]);
        r.write_png(&path).unwrap();
        let back = Raster::<f64>::read_png(&path).unwrap();
        assert_eq!(back.get(0, 0), [12.0, 13.0, 0.0]);
        assert_eq!(back.get(1, 0), [255.0, 255.0, 255.0]);
    }
}
