//! Static SVG figures. Floating point is used only here, rounded to 12
//! significant digits.

use std::fmt::Write as _;
use std::path::Path;

use okounkov_core::exact::rational::{int, to_f64, QVec, Rational};
use okounkov_core::geometry::{PLFunction, Polytope};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;
const SLICES: usize = 5;
const HEAT_STEPS: usize = 8;

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error("DimensionTooHigh: cannot draw dimension {0}")]
    DimensionTooHigh(usize),
    #[error("nothing to draw: empty domain")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub enum Figure<'a> {
    Body(&'a Polytope),
    Function(&'a PLFunction),
}

/// `x` with 12 significant digits, shortest form.
pub fn num(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".into()
    } else {
        format!("{rounded}")
    }
}

/// Affine map from a data box to a panel of the canvas, `y` pointing up.
struct Frame {
    lo: [f64; 2],
    scale: [f64; 2],
    origin: [f64; 2],
    height: f64,
}

impl Frame {
    fn new(lo: [f64; 2], hi: [f64; 2], origin: [f64; 2], width: f64, height: f64) -> Frame {
        let span = |i: usize| if hi[i] > lo[i] { hi[i] - lo[i] } else { 1.0 };
        Frame {
            lo,
            scale: [width / span(0), height / span(1)],
            origin,
            height,
        }
    }

    fn point(&self, p: [f64; 2]) -> String {
        let x = self.origin[0] + (p[0] - self.lo[0]) * self.scale[0];
        let y = self.origin[1] + self.height - (p[1] - self.lo[1]) * self.scale[1];
        format!("{},{}", num(x), num(y))
    }
}

fn header(width: f64, height: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = num(width),
        h = num(height)
    )
}

fn bounds(points: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (lo, hi)
}

/// Vertices of a polygon in the plane, counterclockwise.
fn ring(vertices: &[QVec]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = vertices
        .iter()
        .map(|v| [to_f64(&v[0]), to_f64(&v[1])])
        .collect();
    let n = pts.len() as f64;
    let c = [
        pts.iter().map(|p| p[0]).sum::<f64>() / n,
        pts.iter().map(|p| p[1]).sum::<f64>() / n,
    ];
    pts.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    pts
}

fn polygon(out: &mut String, frame: &Frame, pts: &[[f64; 2]], fill: &str) {
    let coords: Vec<String> = pts.iter().map(|p| frame.point(*p)).collect();
    let tag = if pts.len() <= 2 {
        "polyline"
    } else {
        "polygon"
    };
    let _ = writeln!(
        out,
        "<{tag} points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"1\"/>",
        coords.join(" ")
    );
}

fn body_svg(p: &Polytope) -> Result<String, SvgError> {
    if p.is_empty() {
        return Err(SvgError::Empty);
    }
    let inner = SIZE - 2.0 * MARGIN;
    match p.ambient_dim() {
        1 => {
            let pts: Vec<[f64; 2]> = p.vertices().iter().map(|v| [to_f64(&v[0]), 0.0]).collect();
            let (lo, hi) = bounds(&pts);
            let frame = Frame::new(lo, hi, [MARGIN, SIZE / 2.0], inner, 0.0);
            let mut out = header(SIZE, SIZE);
            let (a, b) = (frame.point([lo[0], 0.0]), frame.point([hi[0], 0.0]));
            let (a, b) = (a.split_once(',').unwrap(), b.split_once(',').unwrap());
            let _ = writeln!(out, "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"3\"/>", a.0, a.1, b.0, b.1);
            out.push_str("</svg>\n");
            Ok(out)
        }
        2 => {
            let pts = ring(p.vertices());
            let (lo, hi) = bounds(&pts);
            let frame = Frame::new(lo, hi, [MARGIN, MARGIN], inner, inner);
            let mut out = header(SIZE, SIZE);
            polygon(&mut out, &frame, &pts, "#9ecae1");
            out.push_str("</svg>\n");
            Ok(out)
        }
        3 => {
            // slices along the last coordinate, the level of a filtered body
            let (lo, hi) = p.coordinate_range(2).ok_or(SvgError::Empty)?;
            let slices: Vec<Polytope> = (1..=SLICES)
                .map(|k| {
                    let t = &lo + (&hi - &lo) * Rational::new(k.into(), (SLICES + 1).into());
                    p.slice(&[(2, t)])
                })
                .collect();
            let all: Vec<[f64; 2]> = p
                .vertices()
                .iter()
                .map(|v| [to_f64(&v[0]), to_f64(&v[1])])
                .collect();
            let (blo, bhi) = bounds(&all);
            let panel = SIZE / 2.0;
            let mut out = header(panel * SLICES as f64, panel);
            for (k, s) in slices.iter().enumerate() {
                let frame = Frame::new(
                    blo,
                    bhi,
                    [k as f64 * panel + MARGIN, MARGIN],
                    panel - 2.0 * MARGIN,
                    panel - 2.0 * MARGIN,
                );
                if !s.is_empty() {
                    polygon(&mut out, &frame, &ring(s.vertices()), "#9ecae1");
                }
            }
            out.push_str("</svg>\n");
            Ok(out)
        }
        d => Err(SvgError::DimensionTooHigh(d)),
    }
}

/// Barycentric coordinates of the `k²` triangles of the regular subdivision
/// of a triangle.
fn subdivide(k: usize) -> Vec<[[f64; 3]; 3]> {
    let kf = k as f64;
    let b = |i: usize, j: usize| [(k - i - j) as f64 / kf, i as f64 / kf, j as f64 / kf];
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k - i {
            out.push([b(i, j), b(i + 1, j), b(i, j + 1)]);
            if i + j + 1 < k {
                out.push([b(i + 1, j), b(i + 1, j + 1), b(i, j + 1)]);
            }
        }
    }
    out
}

fn heat(x: f64) -> String {
    let r = (255.0 * x).round() as u8;
    let b = (255.0 * (1.0 - x)).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

fn function_svg(f: &PLFunction) -> Result<String, SvgError> {
    let domain = f.domain();
    if domain.is_empty() {
        return Err(SvgError::Empty);
    }
    let inner = SIZE - 2.0 * MARGIN;
    match domain.ambient_dim() {
        1 => {
            let mut ts: Vec<Rational> = f.breakpoints_1d();
            ts.dedup();
            let pts: Vec<[f64; 2]> = ts
                .iter()
                .map(|t| {
                    [
                        to_f64(t),
                        to_f64(&f.eval(std::slice::from_ref(t)).unwrap_or_else(|| int(0))),
                    ]
                })
                .collect();
            let (mut lo, hi) = bounds(&pts);
            lo[1] = lo[1].min(0.0);
            let frame = Frame::new(lo, hi, [MARGIN, MARGIN], inner, inner);
            let mut out = header(SIZE, SIZE);
            let coords: Vec<String> = pts.iter().map(|p| frame.point(*p)).collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
                coords.join(" ")
            );
            out.push_str("</svg>\n");
            Ok(out)
        }
        2 => {
            // each cell cut into HEAT_STEPS² triangles, coloured at their centroids
            let mut tiles: Vec<([[f64; 2]; 3], f64)> = Vec::new();
            for c in f.cells().iter().filter(|c| c.simplex.len() == 3) {
                let corners: Vec<[f64; 2]> = c
                    .simplex
                    .iter()
                    .map(|p| [to_f64(&p[0]), to_f64(&p[1])])
                    .collect();
                let values: Vec<f64> = c
                    .simplex
                    .iter()
                    .map(|p| to_f64(&c.affine.eval(p)))
                    .collect();
                for tri in subdivide(HEAT_STEPS) {
                    let at = |b: [f64; 3]| -> [f64; 2] {
                        [0, 1].map(|j| {
                            b[0] * corners[0][j] + b[1] * corners[1][j] + b[2] * corners[2][j]
                        })
                    };
                    let mid = [0, 1, 2].map(|j| (tri[0][j] + tri[1][j] + tri[2][j]) / 3.0);
                    let value = mid[0] * values[0] + mid[1] * values[1] + mid[2] * values[2];
                    tiles.push(([at(tri[0]), at(tri[1]), at(tri[2])], value));
                }
            }
            let (vmin, vmax) = tiles
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (_, v)| {
                    (a.min(*v), b.max(*v))
                });
            let pts = ring(domain.vertices());
            let (lo, hi) = bounds(&pts);
            let frame = Frame::new(lo, hi, [MARGIN, MARGIN], inner, inner);
            let mut out = header(SIZE, SIZE);
            for (tri, v) in &tiles {
                let x = if vmax > vmin {
                    (v - vmin) / (vmax - vmin)
                } else {
                    0.5
                };
                let coords: Vec<String> = tri.iter().map(|p| frame.point(*p)).collect();
                let _ = writeln!(
                    out,
                    "<polygon points=\"{}\" fill=\"{}\" stroke=\"none\"/>",
                    coords.join(" "),
                    heat(x)
                );
            }
            polygon(&mut out, &frame, &pts, "none");
            out.push_str("</svg>\n");
            Ok(out)
        }
        d => Err(SvgError::DimensionTooHigh(d)),
    }
}

pub fn render(fig: &Figure) -> Result<String, SvgError> {
    match fig {
        Figure::Body(p) => body_svg(p),
        Figure::Function(f) => function_svg(f),
    }
}

pub fn emit_svg(fig: &Figure, path: &Path) -> Result<(), SvgError> {
    Ok(std::fs::write(path, render(fig)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use okounkov_core::exact::rational::{qvec, rat};
    use okounkov_core::geometry::{upper_concave_envelope, Affine};

    #[test]
    fn twelve_digits() {
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(20.0), "20");
        assert_eq!(num(-0.0), "0");
    }

    #[test]
    fn triangle_is_a_polygon() {
        let t = Polytope::simplex(2, &int(1));
        let s = render(&Figure::Body(&t)).unwrap();
        assert_eq!(s.matches("<polygon").count(), 1);
    }

    #[test]
    fn transform_on_interval_is_a_polyline() {
        let dom = Polytope::hull(1, &[qvec(&[0]), qvec(&[1])]);
        let f = upper_concave_envelope(
            &[
                (qvec(&[0]), int(1)),
                (qvec(&[1]), int(0)),
                (vec![rat(1, 2)], int(1)),
            ],
            &dom,
        )
        .unwrap();
        let s = render(&Figure::Function(&f)).unwrap();
        assert!(s.contains("<polyline"));
    }

    #[test]
    fn solid_gives_five_slices() {
        let cube = Polytope::simplex(3, &int(1));
        let s = render(&Figure::Body(&cube)).unwrap();
        assert_eq!(s.matches("<polygon").count(), 5);
    }

    #[test]
    fn heat_map_and_dimension_limit() {
        let sq = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]);
        let f = PLFunction::affine(&sq, Affine::new(qvec(&[1, 1]), int(0))).unwrap();
        let s = render(&Figure::Function(&f)).unwrap();
        assert_eq!(s.matches("<polygon").count(), 2 * 64 + 1);
        assert_eq!(subdivide(3).len(), 9);
        let hyper = Polytope::simplex(4, &int(1));
        assert!(matches!(
            render(&Figure::Body(&hyper)),
            Err(SvgError::DimensionTooHigh(4))
        ));
    }
}
