//! Pixel grids and the neighbor geometry used to pair reference and
//! neighbor pixels.
//!
//! Row indices grow downward and column indices grow rightward, so "north"
//! means row − 1, matching a compass drawn on a screen-oriented grid.

use crate::error::{Error, Result};

/// One of the eight compass directions a neighbor pixel can lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    East,
    NorthEast,
    North,
    NorthWest,
    West,
    SouthWest,
    South,
    SouthEast,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::East,
        Direction::NorthEast,
        Direction::North,
        Direction::NorthWest,
        Direction::West,
        Direction::SouthWest,
        Direction::South,
        Direction::SouthEast,
    ];

    /// Fixed (row, column) offset of the neighbor pixel.
    pub fn offset(self) -> (i32, i32) {
        match self {
            Direction::East => (0, 1),
            Direction::NorthEast => (-1, 1),
            Direction::North => (-1, 0),
            Direction::NorthWest => (-1, -1),
            Direction::West => (0, -1),
            Direction::SouthWest => (1, -1),
            Direction::South => (1, 0),
            Direction::SouthEast => (1, 1),
        }
    }

    /// The direction whose offset is the negation of this one.
    pub fn opposite(self) -> Direction {
        match self {
            Direction::East => Direction::West,
            Direction::NorthEast => Direction::SouthWest,
            Direction::North => Direction::South,
            Direction::NorthWest => Direction::SouthEast,
            Direction::West => Direction::East,
            Direction::SouthWest => Direction::NorthEast,
            Direction::South => Direction::North,
            Direction::SouthEast => Direction::NorthWest,
        }
    }

    /// Short lower-case label used in CLI flags and exports.
    pub fn label(self) -> &'static str {
        match self {
            Direction::East => "e",
            Direction::NorthEast => "ne",
            Direction::North => "n",
            Direction::NorthWest => "nw",
            Direction::West => "w",
            Direction::SouthWest => "sw",
            Direction::South => "s",
            Direction::SouthEast => "se",
        }
    }
}

/// A pair of opposite directions whose pooled pairs form a symmetric
/// co-occurrence matrix.
///
/// `DiagonalMain` (south-east plus north-west) is the default meaning of
/// "diagonal"; `DiagonalAnti` (north-east plus south-west) is a distinct
/// matrix for general images and is computed only on request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetricAxis {
    Horizontal,
    Vertical,
    DiagonalMain,
    DiagonalAnti,
}

impl SymmetricAxis {
    pub const ALL: [SymmetricAxis; 4] = [
        SymmetricAxis::Horizontal,
        SymmetricAxis::Vertical,
        SymmetricAxis::DiagonalMain,
        SymmetricAxis::DiagonalAnti,
    ];

    /// The three axes reported by default in analyses and batch runs.
    pub const STANDARD: [SymmetricAxis; 3] = [
        SymmetricAxis::Horizontal,
        SymmetricAxis::Vertical,
        SymmetricAxis::DiagonalMain,
    ];

    /// The two opposite directions this axis pools, canonical one first.
    pub fn directions(self) -> (Direction, Direction) {
        let canonical = match self {
            SymmetricAxis::Horizontal => Direction::East,
            SymmetricAxis::Vertical => Direction::South,
            SymmetricAxis::DiagonalMain => Direction::SouthEast,
            SymmetricAxis::DiagonalAnti => Direction::NorthEast,
        };
        (canonical, canonical.opposite())
    }

    /// Lower-case label used in CSV output and CLI flags.
    pub fn label(self) -> &'static str {
        match self {
            SymmetricAxis::Horizontal => "horizontal",
            SymmetricAxis::Vertical => "vertical",
            SymmetricAxis::DiagonalMain => "diagonal",
            SymmetricAxis::DiagonalAnti => "diagonal-anti",
        }
    }

    /// Parse a label as produced by [`SymmetricAxis::label`].
    pub fn parse_label(label: &str) -> Result<SymmetricAxis> {
        match label {
            "horizontal" => Ok(SymmetricAxis::Horizontal),
            "vertical" => Ok(SymmetricAxis::Vertical),
            "diagonal" => Ok(SymmetricAxis::DiagonalMain),
            "diagonal-anti" => Ok(SymmetricAxis::DiagonalAnti),
            other => Err(Error::Contract(format!("unknown axis label {other:?}"))),
        }
    }
}

/// A decoded 8-bit image: one or three planes of grey levels stored
/// row-major, plane after plane.
///
/// Immutable after construction; channels of a colour image are treated as
/// independent 2-D planes (no luma conversion unless [`PixelGrid::to_luma`]
/// is called explicitly).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelGrid {
    rows: usize,
    cols: usize,
    channels: usize,
    values: Vec<u8>,
}

impl PixelGrid {
    /// Build a grid from planar pixel data.
    ///
    /// `values` must hold `rows * cols * channels` grey levels, the full
    /// first plane followed by the others. `channels` must be 1 or 3.
    pub fn new(rows: usize, cols: usize, channels: usize, values: Vec<u8>) -> Result<PixelGrid> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "image must have at least one row and one column, got {rows}x{cols}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::Dimension(format!(
                "channel count must be 1 or 3, got {channels}"
            )));
        }
        let expected = rows * cols * channels;
        if values.len() != expected {
            return Err(Error::Dimension(format!(
                "expected {expected} pixel values for {rows}x{cols}x{channels}, got {}",
                values.len()
            )));
        }
        Ok(PixelGrid {
            rows,
            cols,
            channels,
            values,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// All planes, row-major, plane after plane.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// One channel plane as a row-major slice of `rows * cols` values.
    pub fn plane(&self, channel: usize) -> &[u8] {
        assert!(channel < self.channels, "channel {channel} out of range");
        let len = self.rows * self.cols;
        &self.values[channel * len..(channel + 1) * len]
    }

    /// Grey level at (row, col) in the given channel.
    pub fn value(&self, channel: usize, row: usize, col: usize) -> u8 {
        assert!(row < self.rows && col < self.cols, "pixel out of range");
        self.plane(channel)[row * self.cols + col]
    }

    /// Collapse a colour grid to a single luma plane using ITU-R BT.601
    /// weights, rounded to the nearest integer. Returns a copy for
    /// single-channel grids.
    pub fn to_luma(&self) -> PixelGrid {
        if self.channels == 1 {
            return self.clone();
        }
        let len = self.rows * self.cols;
        let (r, g, b) = (self.plane(0), self.plane(1), self.plane(2));
        let mut luma = Vec::with_capacity(len);
        for idx in 0..len {
            let y = 0.299 * f64::from(r[idx]) + 0.587 * f64::from(g[idx]) + 0.114 * f64::from(b[idx]);
            luma.push(y.round() as u8);
        }
        PixelGrid {
            rows: self.rows,
            cols: self.cols,
            channels: 1,
            values: luma,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_match_compass_table() {
        assert_eq!(Direction::East.offset(), (0, 1));
        assert_eq!(Direction::West.offset(), (0, -1));
        assert_eq!(Direction::SouthEast.offset(), (1, 1));
        assert_eq!(Direction::North.offset(), (-1, 0));
    }

    #[test]
    fn opposite_negates_offset() {
        for d in Direction::ALL {
            let (dr, dc) = d.offset();
            assert_eq!(d.opposite().offset(), (-dr, -dc));
            assert_eq!(d.opposite().opposite(), d);
        }
    }

    #[test]
    fn axes_pair_opposite_directions() {
        for axis in SymmetricAxis::ALL {
            let (a, b) = axis.directions();
            assert_eq!(a.opposite(), b);
        }
    }

    #[test]
    fn axis_labels_round_trip() {
        for axis in SymmetricAxis::ALL {
            assert_eq!(SymmetricAxis::parse_label(axis.label()).unwrap(), axis);
        }
        assert!(SymmetricAxis::parse_label("sideways").is_err());
    }

    #[test]
    fn grid_rejects_bad_shapes() {
        assert!(matches!(
            PixelGrid::new(0, 4, 1, vec![]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            PixelGrid::new(2, 2, 2, vec![0; 8]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            PixelGrid::new(2, 2, 1, vec![0; 5]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn plane_and_value_access() {
        let grid = PixelGrid::new(2, 2, 3, (0..12).collect()).unwrap();
        assert_eq!(grid.plane(1), &[4, 5, 6, 7]);
        assert_eq!(grid.value(2, 1, 0), 10);
    }

    #[test]
    fn luma_uses_bt601_weights() {
        // one red, one green, one blue, one white pixel
        let grid = PixelGrid::new(
            1,
            4,
            3,
            vec![
                255, 0, 0, 255, // red plane
                0, 255, 0, 255, // green plane
                0, 0, 255, 255, // blue plane
            ],
        )
        .unwrap();
        let luma = grid.to_luma();
        assert_eq!(luma.channels(), 1);
        assert_eq!(luma.values(), &[76, 150, 29, 255]);
    }
}
