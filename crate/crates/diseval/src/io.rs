//! Image decoding into masks and probability maps, and 8-bit PNG output.

use std::path::Path;

use diseval_core::{BinaryMask, GrayMap, Size};
use image::{ColorType, ImageDecoder, ImageReader, Limits};

use crate::error::{Error, Result};

/// Largest accepted width or height.
pub const MAX_DIMENSION: u32 = 16384;
/// Ground-truth pixels are foreground when their luma is strictly greater.
pub const GT_THRESHOLD: u8 = 127;

/// Rec.601 luma rounded to the nearest integer.
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    ((299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500) / 1000) as u8
}

/// Decodes an 8-bit image into one luma byte per pixel, row-major.
/// Alpha is dropped.
pub fn load_luma(path: &Path) -> Result<(Size, Vec<u8>)> {
    if !path.is_file() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let decode_err = |e: image::ImageError| Error::Decode { path: path.to_path_buf(), message: e.to_string() };
    let mut reader = ImageReader::open(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?
        .with_guessed_format()
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let mut limits = Limits::default();
    limits.max_image_width = Some(MAX_DIMENSION);
    limits.max_image_height = Some(MAX_DIMENSION);
    limits.max_alloc = None;
    reader.limits(limits);
    let decoder = reader.into_decoder().map_err(decode_err)?;

    let color = decoder.color_type();
    let channels = match color {
        ColorType::L8 => 1,
        ColorType::La8 => 2,
        ColorType::Rgb8 => 3,
        ColorType::Rgba8 => 4,
        other => return Err(Error::UnsupportedBitDepth { path: path.to_path_buf(), color: format!("{:?}", other) }),
    };
    let (w, h) = decoder.dimensions();
    let size = Size::new(h as usize, w as usize)?;
    let mut buf = vec![0u8; decoder.total_bytes() as usize];
    decoder.read_image(&mut buf).map_err(decode_err)?;

    let levels = match channels {
        1 => buf,
        2 => buf.chunks_exact(2).map(|px| px[0]).collect(),
        _ => buf.chunks_exact(channels).map(|px| luma(px[0], px[1], px[2])).collect(),
    };
    Ok((size, levels))
}

/// Foreground where luma > `threshold`.
pub fn load_mask(path: &Path, threshold: u8) -> Result<BinaryMask> {
    let (size, levels) = load_luma(path)?;
    Ok(BinaryMask::from_vec(size, levels.into_iter().map(|l| l > threshold).collect())?)
}

/// Values `luma / 255`.
pub fn load_probmap(path: &Path) -> Result<GrayMap> {
    let (size, levels) = load_luma(path)?;
    Ok(GrayMap::from_levels(size, &levels)?)
}

/// Writes row-major 8-bit levels as a grayscale PNG.
pub fn save_levels(path: &Path, size: Size, levels: &[u8]) -> Result<()> {
    image::save_buffer_with_format(
        path,
        levels,
        size.width as u32,
        size.height as u32,
        image::ExtendedColorType::L8,
        image::ImageFormat::Png,
    )
    .map_err(|e| Error::Decode { path: path.to_path_buf(), message: e.to_string() })
}

/// Writes a mask as 0/255 grayscale PNG.
pub fn save_mask(path: &Path, mask: &BinaryMask) -> Result<()> {
    let levels: Vec<u8> = mask.bits().iter().map(|&b| if b { 255 } else { 0 }).collect();
    save_levels(path, mask.size(), &levels)
}
