//! Image loading and saving.
//!
//! PGM (P2 ASCII, P5 binary) is the bit-exact interchange format; PPM
//! (P3/P6) covers three-channel grids the same way. PNG is a convenience
//! decoder for 8-bit grayscale and RGB files only. Maxval must be exactly
//! 255 and `#` comments are tolerated anywhere in netpbm headers.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::PixelGrid;

/// Load an image file into a [`PixelGrid`], preserving pixel values
/// bit-exactly. The format is detected from the file's magic bytes.
pub fn load_image<P: AsRef<Path>>(path: P) -> Result<PixelGrid> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode(&bytes)
}

/// Decode an in-memory PGM, PPM, or PNG image.
pub fn decode(bytes: &[u8]) -> Result<PixelGrid> {
    match bytes {
        [b'P', b'2', ..] => decode_netpbm(bytes, NetpbmKind::PlainGray),
        [b'P', b'5', ..] => decode_netpbm(bytes, NetpbmKind::RawGray),
        [b'P', b'3', ..] => decode_netpbm(bytes, NetpbmKind::PlainRgb),
        [b'P', b'6', ..] => decode_netpbm(bytes, NetpbmKind::RawRgb),
        [0x89, b'P', b'N', b'G', ..] => decode_png(bytes),
        _ => Err(Error::Format(
            "magic number is not PGM (P2/P5), PPM (P3/P6), or PNG".into(),
        )),
    }
}

/// Encode a grid as binary netpbm: P5 for one channel, P6 for three.
pub fn encode(grid: &PixelGrid) -> Vec<u8> {
    let mut out = Vec::new();
    let magic: &[u8] = if grid.channels() == 1 { b"P5" } else { b"P6" };
    out.extend_from_slice(magic);
    out.extend_from_slice(format!("\n{} {}\n255\n", grid.cols(), grid.rows()).as_bytes());
    if grid.channels() == 1 {
        out.extend_from_slice(grid.values());
    } else {
        // planes interleave back to RGB sample order
        let (r, g, b) = (grid.plane(0), grid.plane(1), grid.plane(2));
        for idx in 0..grid.rows() * grid.cols() {
            out.push(r[idx]);
            out.push(g[idx]);
            out.push(b[idx]);
        }
    }
    out
}

/// Write a grid to disk as binary PGM/PPM (see [`encode`]).
pub fn save_image<P: AsRef<Path>>(grid: &PixelGrid, path: P) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode(grid)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum NetpbmKind {
    PlainGray,
    RawGray,
    PlainRgb,
    RawRgb,
}

impl NetpbmKind {
    fn channels(self) -> usize {
        match self {
            NetpbmKind::PlainGray | NetpbmKind::RawGray => 1,
            NetpbmKind::PlainRgb | NetpbmKind::RawRgb => 3,
        }
    }

    fn raw(self) -> bool {
        matches!(self, NetpbmKind::RawGray | NetpbmKind::RawRgb)
    }
}

/// Cursor over netpbm bytes that skips whitespace and `#` comments.
struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Tokens { bytes, pos: 0 }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Next unsigned decimal token, or a format error naming `field`.
    fn next_uint(&mut self, field: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Format(format!(
                "expected unsigned integer for {field}"
            )));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<u32>()
            .map_err(|_| Error::Format(format!("{field} value {text} out of range")))
    }
}

fn decode_netpbm(bytes: &[u8], kind: NetpbmKind) -> Result<PixelGrid> {
    let mut tokens = Tokens::new(&bytes[2..]);
    let cols = tokens.next_uint("width")? as usize;
    let rows = tokens.next_uint("height")? as usize;
    let maxval = tokens.next_uint("maxval")?;
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension(format!(
            "image must have at least one row and one column, got {rows}x{cols}"
        )));
    }
    if maxval != 255 {
        return Err(Error::Format(format!(
            "maxval must be 255 for 8-bit data, got {maxval}"
        )));
    }

    let channels = kind.channels();
    let samples = rows * cols * channels;
    let mut data = Vec::with_capacity(samples);
    if kind.raw() {
        // exactly one whitespace byte separates the header from the raster
        let body_start = 2 + tokens.pos + 1;
        if bytes.len() < body_start || !bytes[body_start - 1].is_ascii_whitespace() {
            return Err(Error::Format("missing whitespace before raster data".into()));
        }
        let body = &bytes[body_start..];
        if body.len() < samples {
            return Err(Error::Format(format!(
                "raster holds {} samples, expected {samples}",
                body.len()
            )));
        }
        data.extend_from_slice(&body[..samples]);
    } else {
        for _ in 0..samples {
            let v = tokens.next_uint("pixel value")?;
            if v > 255 {
                return Err(Error::Format(format!("pixel value {v} exceeds maxval 255")));
            }
            data.push(v as u8);
        }
    }

    PixelGrid::new(rows, cols, channels, to_planes(&data, channels))
}

fn decode_png(bytes: &[u8]) -> Result<PixelGrid> {
    let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::Format(format!("png: {e}")))?;
    let info = reader.info();
    if info.bit_depth != png::BitDepth::Eight {
        return Err(Error::Format(format!(
            "png bit depth must be 8, got {:?}",
            info.bit_depth
        )));
    }
    let channels = match info.color_type {
        png::ColorType::Grayscale => 1,
        png::ColorType::Rgb => 3,
        other => {
            return Err(Error::Format(format!(
                "png color type must be 8-bit grayscale or RGB, got {other:?}"
            )));
        }
    };
    let (rows, cols) = (info.height as usize, info.width as usize);
    let mut buf = vec![0u8; reader.output_buffer_size().unwrap_or_default()];
    let frame = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::Format(format!("png: {e}")))?;
    let data = &buf[..frame.buffer_size()];
    PixelGrid::new(rows, cols, channels, to_planes(data, channels))
}

/// Rearrange interleaved samples into planar channel order.
fn to_planes(interleaved: &[u8], channels: usize) -> Vec<u8> {
    if channels == 1 {
        return interleaved.to_vec();
    }
    let pixels = interleaved.len() / channels;
    let mut planes = vec![0u8; interleaved.len()];
    for (idx, chunk) in interleaved.chunks_exact(channels).enumerate() {
        for (ch, &sample) in chunk.iter().enumerate() {
            planes[ch * pixels + idx] = sample;
        }
    }
    planes
}
