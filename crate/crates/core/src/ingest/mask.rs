//! Binary PGM masks and Moore-neighbor boundary tracing.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::contour::Contour;
use crate::error::{Result, ShapeError};

/// Foreground/background raster. Any nonzero PGM sample is foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(ShapeError::DimensionMismatch {
                expected: width * height,
                found: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let pixels = (0..height)
            .flat_map(|r| (0..width).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.pixels[row * self.width + col]
    }

    fn get_signed(&self, row: isize, col: isize) -> bool {
        row >= 0
            && col >= 0
            && (row as usize) < self.height
            && (col as usize) < self.width
            && self.get(row as usize, col as usize)
    }

    /// Number of 8-connected foreground components.
    pub fn count_components(&self) -> usize {
        let mut seen = vec![false; self.pixels.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.pixels.len() {
            if !self.pixels[start] || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(idx) = stack.pop() {
                let (r, c) = ((idx / self.width) as isize, (idx % self.width) as isize);
                for (dr, dc) in MOORE {
                    let (nr, nc) = (r + dr, c + dc);
                    if self.get_signed(nr, nc) {
                        let nidx = nr as usize * self.width + nc as usize;
                        if !seen[nidx] {
                            seen[nidx] = true;
                            stack.push(nidx);
                        }
                    }
                }
            }
        }
        count
    }
}

/// Moore neighborhood in clockwise order on screen (rows grow downward),
/// starting west.
const MOORE: [(isize, isize); 8] = [
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
];

fn direction_of(dr: isize, dc: isize) -> usize {
    MOORE
        .iter()
        .position(|&d| d == (dr, dc))
        .expect("offset is a Moore neighbor")
}

/// Traces the outer boundary of the single foreground component with the
/// Moore-neighbor algorithm and Jacob's stopping criterion.
///
/// Tracing starts at the top-most, then left-most foreground pixel and runs
/// clockwise on screen. Returns `(row, col)` pixels without repeating the start.
pub fn trace_boundary(mask: &BinaryMask) -> Result<Vec<(usize, usize)>> {
    let components = mask.count_components();
    if components != 1 {
        return Err(ShapeError::MultipleComponents(components));
    }
    let start_idx = mask.pixels.iter().position(|&p| p).expect("one component");
    let start = ((start_idx / mask.width) as isize, (start_idx % mask.width) as isize);
    // The west neighbor of the start is background: nothing lies left of it in its row.
    let start_back = direction_of(0, -1);

    let mut boundary = vec![(start.0 as usize, start.1 as usize)];
    let (mut p, mut back) = (start, start_back);
    let limit = 4 * mask.pixels.len() + 8;
    for _ in 0..limit {
        let found = (1..=8).map(|i| (back + i) % 8).find(|&d| {
            let (dr, dc) = MOORE[d];
            mask.get_signed(p.0 + dr, p.1 + dc)
        });
        let Some(d) = found else {
            // Isolated pixel.
            return Ok(boundary);
        };
        let (dr, dc) = MOORE[d];
        let next = (p.0 + dr, p.1 + dc);
        // The last background pixel examined becomes the new backtrack point.
        let (br, bc) = MOORE[(d + 7) % 8];
        let prev = (p.0 + br, p.1 + bc);
        back = direction_of(prev.0 - next.0, prev.1 - next.1);
        p = next;
        if p == start && back == start_back {
            return Ok(boundary);
        }
        boundary.push((p.0 as usize, p.1 as usize));
    }
    Err(ShapeError::DegenerateContour(
        "boundary tracing did not terminate".into(),
    ))
}

/// Boundary of the mask as a counterclockwise contour in plane coordinates
/// `x = col`, `y = -row`, starting at the traced start pixel.
pub fn mask_to_contour(mask: &BinaryMask) -> Result<Contour> {
    let pixels = trace_boundary(mask)?;
    let mut points: Vec<Complex64> = pixels
        .iter()
        .map(|&(r, c)| Complex64::new(c as f64, -(r as f64)))
        .collect();
    let contour = Contour::new(points.clone())?;
    if contour.signed_area() < 0.0 {
        points[1..].reverse();
        return Contour::new(points);
    }
    Ok(contour)
}

struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn skip_space(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => return,
            }
        }
    }

    fn next_token(&mut self) -> Option<&'a [u8]> {
        self.skip_space();
        let begin = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > begin).then(|| &self.bytes[begin..self.pos])
    }
}

/// Parses a binary (`P5`) or ASCII (`P2`) PGM image into a mask.
pub fn parse_pgm(bytes: &[u8], path: &Path) -> Result<BinaryMask> {
    let mut tok = Tokens {
        bytes,
        pos: 0,
        line: 1,
    };
    let err = |line: usize, message: String| ShapeError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let magic = tok.next_token().ok_or_else(|| err(1, "empty file".into()))?;
    let ascii = match magic {
        b"P2" => true,
        b"P5" => false,
        other => {
            return Err(err(
                1,
                format!("unsupported magic '{}'", String::from_utf8_lossy(other)),
            ))
        }
    };
    let mut header = [0usize; 3];
    for (slot, name) in header.iter_mut().zip(["width", "height", "maxval"]) {
        let t = tok
            .next_token()
            .ok_or_else(|| err(tok.line, format!("missing {name}")))?;
        *slot = std::str::from_utf8(t)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(tok.line, format!("invalid {name} '{}'", String::from_utf8_lossy(t))))?;
    }
    let [width, height, maxval] = header;
    if width == 0 || height == 0 || maxval == 0 || maxval > 65535 {
        return Err(err(tok.line, format!("bad header {width}x{height} maxval {maxval}")));
    }
    let count = width * height;
    let mut pixels = Vec::with_capacity(count);
    if ascii {
        for _ in 0..count {
            let t = tok
                .next_token()
                .ok_or_else(|| err(tok.line, format!("expected {count} samples")))?;
            let v: usize = std::str::from_utf8(t)
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err(tok.line, format!("invalid sample '{}'", String::from_utf8_lossy(t))))?;
            pixels.push(v != 0);
        }
    } else {
        // Exactly one whitespace byte separates the header from the raster.
        if tok.pos >= bytes.len() || !bytes[tok.pos].is_ascii_whitespace() {
            return Err(err(tok.line, "missing raster".into()));
        }
        let data = &bytes[tok.pos + 1..];
        let width_bytes = if maxval < 256 { 1 } else { 2 };
        if data.len() < count * width_bytes {
            return Err(err(
                tok.line,
                format!("raster has {} bytes, expected {}", data.len(), count * width_bytes),
            ));
        }
        if width_bytes == 1 {
            pixels.extend(data[..count].iter().map(|&b| b != 0));
        } else {
            pixels.extend(data[..2 * count].chunks_exact(2).map(|p| p[0] != 0 || p[1] != 0));
        }
    }
    BinaryMask::new(width, height, pixels)
}

pub fn read_mask(path: &Path) -> Result<BinaryMask> {
    parse_pgm(&fs::read(path)?, path)
}

/// Writes the mask as an 8-bit binary PGM (foreground 255).
pub fn write_pgm(mask: &BinaryMask, path: &Path) -> Result<()> {
    let mut out = format!("P5\n{} {}\n255\n", mask.width, mask.height).into_bytes();
    out.extend(mask.pixels.iter().map(|&p| if p { 255u8 } else { 0 }));
    fs::write(path, out)?;
    Ok(())
}
