use num_traits::{One, Signed};

use super::{parse_error, AppError};
use crate::decompose::min_cut_from_flow;
use crate::network::{cut_capacity, Capacity, Network};
use crate::numeric::Rational;
use crate::solvers::edmonds_karp;

/// Segmentation input: per-pixel foreground and background
/// likelihoods and penalties between 4-neighbours. Pixels are indexed row
/// by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelImage {
    width: usize,
    height: usize,
    a: Vec<Rational>,
    b: Vec<Rational>,
    /// Penalty between `(x, y)` and `(x + 1, y)`, indexed `y * (width - 1) + x`.
    right: Vec<Rational>,
    /// Penalty between `(x, y)` and `(x, y + 1)`, indexed `y * width + x`.
    down: Vec<Rational>,
}

fn unit_interval(v: &Rational) -> bool {
    !v.is_negative() && *v <= Rational::one()
}

impl PixelImage {
    pub fn new(
        width: usize,
        height: usize,
        a: Vec<Rational>,
        b: Vec<Rational>,
        right: Vec<Rational>,
        down: Vec<Rational>,
    ) -> Result<Self, AppError> {
        let pixels = width * height;
        let bad = |m: &str| Err(AppError::InvalidImage(m.into()));
        if a.len() != pixels || b.len() != pixels {
            return bad("one probability per pixel is required");
        }
        if right.len() != width.saturating_sub(1) * height || down.len() != width * height.saturating_sub(1) {
            return bad("penalty arrays do not match the image size");
        }
        if !a.iter().chain(&b).all(unit_interval) {
            return bad("probabilities must lie in [0, 1]");
        }
        if right.iter().chain(&down).any(|p| p.is_negative()) {
            return bad("penalties must be non-negative");
        }
        Ok(PixelImage { width, height, a, b, right, down })
    }

    /// Same penalty `lambda` on every neighbour pair.
    pub fn with_uniform_penalty(
        width: usize,
        height: usize,
        a: Vec<Rational>,
        b: Vec<Rational>,
        lambda: Rational,
    ) -> Result<Self, AppError> {
        let right = vec![lambda.clone(); width.saturating_sub(1) * height];
        let down = vec![lambda; width * height.saturating_sub(1)];
        PixelImage::new(width, height, a, b, right, down)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn a(&self, v: usize) -> &Rational {
        &self.a[v]
    }

    pub fn b(&self, v: usize) -> &Rational {
        &self.b[v]
    }

    /// Neighbour pairs `(v, w, p[v, w])` of the 4-grid, each listed once.
    pub fn neighbor_pairs(&self) -> Vec<(usize, usize, Rational)> {
        let w = self.width;
        let mut out = Vec::new();
        for y in 0..self.height {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    out.push((v, v + 1, self.right[y * (w - 1) + x].clone()));
                }
                if y + 1 < self.height {
                    out.push((v, v + w, self.down[v].clone()));
                }
            }
        }
        out
    }

    /// `Q = Σ (a_v + b_v)`.
    pub fn total(&self) -> Rational {
        self.a.iter().chain(&self.b).sum()
    }

    fn boundary_penalty(&self, foreground: &[bool]) -> Rational {
        self.neighbor_pairs()
            .into_iter()
            .filter(|(v, w, _)| foreground[*v] != foreground[*w])
            .map(|(_, _, p)| p)
            .sum()
    }

    /// `s(A, B) = Σ_A a + Σ_B b - Σ_{split pairs} p`.
    pub fn score(&self, foreground: &[bool]) -> Rational {
        let gain: Rational = (0..self.pixel_count())
            .map(|v| if foreground[v] { self.a[v].clone() } else { self.b[v].clone() })
            .sum();
        gain - self.boundary_penalty(foreground)
    }

    /// `s'(A, B) = Σ_A b + Σ_B a + Σ_{split pairs} p`.
    pub fn cost(&self, foreground: &[bool]) -> Rational {
        let loss: Rational = (0..self.pixel_count())
            .map(|v| if foreground[v] { self.b[v].clone() } else { self.a[v].clone() })
            .sum();
        loss + self.boundary_penalty(foreground)
    }
}

/// Simple network for a segmentation: source `0`, pixels `1..=N`, sink
/// `N + 1`, then two gadget vertices per neighbour pair replacing the
/// antiparallel arcs `(v, w)` and `(w, v)`.
pub fn segmentation_network(img: &PixelImage) -> Result<Network, AppError> {
    let n = img.pixel_count();
    let (s, t) = (0, n + 1);
    let mut arcs = Vec::new();
    for v in 0..n {
        arcs.push((s, 1 + v, Capacity::Finite(img.a[v].clone())));
        arcs.push((1 + v, t, Capacity::Finite(img.b[v].clone())));
    }
    let mut next = n + 2;
    for (v, w, p) in img.neighbor_pairs() {
        let (c_vw, c_wv) = (next, next + 1);
        next += 2;
        for (from, to) in [(1 + v, c_vw), (c_vw, 1 + w), (1 + w, c_wv), (c_wv, 1 + v)] {
            arcs.push((from, to, Capacity::Finite(p.clone())));
        }
    }
    Ok(Network::build(next, s, t, arcs, false)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    pub foreground: Vec<bool>,
    /// `s(A, B)` of the returned partition.
    pub score: Rational,
    /// `s'(A, B)` of the returned partition.
    pub cost: Rational,
    /// `Q`; always `score + cost`.
    pub total: Rational,
    /// Capacity of the minimum cut found in the gadget network.
    pub cut_capacity: Rational,
}

/// Optimal foreground/background split from a minimum cut. Pixels reachable
/// from the source in the final residual graph form the foreground.
pub fn segment_image(img: &PixelImage) -> Result<Segmentation, AppError> {
    let net = segmentation_network(img)?;
    let (flow, _) = edmonds_karp(&net)?;
    let cut = min_cut_from_flow(&net, &flow)?;
    let foreground: Vec<bool> = (0..img.pixel_count()).map(|v| cut.contains(1 + v)).collect();
    let cut_capacity = cut_capacity(&net, &cut).finite().cloned().expect("finite network");
    Ok(Segmentation {
        score: img.score(&foreground),
        cost: img.cost(&foreground),
        total: img.total(),
        cut_capacity,
        foreground,
    })
}

/// Read an ASCII (`P2`) graymap as `(width, height, maxval, pixels)`.
pub fn read_pgm(text: &str) -> Result<(usize, usize, u32, Vec<u32>), AppError> {
    let mut tokens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for t in line.split('#').next().unwrap_or("").split_whitespace() {
            tokens.push((i + 1, t));
        }
    }
    let mut it = tokens.into_iter();
    match it.next() {
        Some((_, "P2")) => {}
        Some((line, _)) => return Err(parse_error(line, "expected the `P2` magic number")),
        None => return Err(parse_error(0, "empty image")),
    }
    let mut number = |what: &str| -> Result<u32, AppError> {
        let (line, t) = it.next().ok_or_else(|| parse_error(0, format!("missing {what}")))?;
        t.parse().map_err(|_| parse_error(line, format!("bad {what} `{t}`")))
    };
    let width = number("width")? as usize;
    let height = number("height")? as usize;
    let maxval = number("maxval")?;
    if maxval == 0 {
        return Err(AppError::InvalidImage("maxval must be positive".into()));
    }
    let mut pixels = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        let g = number("pixel")?;
        if g > maxval {
            return Err(AppError::InvalidImage(format!("pixel value {g} exceeds maxval {maxval}")));
        }
        pixels.push(g);
    }
    if let Some((line, _)) = it.next() {
        return Err(parse_error(line, "trailing data after the last pixel"));
    }
    Ok((width, height, maxval, pixels))
}

impl PixelImage {
    /// Heuristic likelihoods from a graymap: `a = g / maxval`, `b = 1 - a`,
    /// with penalty `lambda` between all neighbours.
    pub fn from_pgm(text: &str, lambda: Rational) -> Result<Self, AppError> {
        let (w, h, maxval, pixels) = read_pgm(text)?;
        let a: Vec<Rational> =
            pixels.iter().map(|&g| Rational::new((g as i64).into(), (maxval as i64).into())).collect();
        let b = a.iter().map(|x| Rational::one() - x).collect();
        PixelImage::with_uniform_penalty(w, h, a, b, lambda)
    }
}

/// ASCII bitmap (`P1`) with `1` marking foreground pixels.
pub fn write_pbm(width: usize, height: usize, foreground: &[bool]) -> String {
    let mut out = format!("P1\n{width} {height}\n");
    for y in 0..height {
        let row: Vec<&str> = (0..width).map(|x| if foreground[y * width + x] { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
