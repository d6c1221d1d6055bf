//! Standalone TikZ pictures of braids, grids, grid knot diagrams and
//! Legendrian fronts.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::braid::BraidWord;
use crate::grid::GridDiagram;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub enum DiagramSource<'a> {
    Braid(&'a BraidWord),
    Grid(&'a GridDiagram),
}

impl DiagramSource<'_> {
    fn name(&self) -> &'static str {
        match self {
            DiagramSource::Braid(_) => "braid",
            DiagramSource::Grid(_) => "grid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderKind {
    Braid,
    Grid,
    Knot,
    Front,
}

impl RenderKind {
    fn name(self) -> &'static str {
        match self {
            RenderKind::Braid => "braid",
            RenderKind::Grid => "grid",
            RenderKind::Knot => "knot",
            RenderKind::Front => "front",
        }
    }
}

impl FromStr for RenderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "braid" => Ok(RenderKind::Braid),
            "grid" => Ok(RenderKind::Grid),
            "knot" => Ok(RenderKind::Knot),
            "front" | "legendrian_front" | "legendrian-front" => Ok(RenderKind::Front),
            other => Err(Error::Parse(format!("unknown diagram kind {other:?}"))),
        }
    }
}

pub fn render_diagram(source: DiagramSource<'_>, kind: RenderKind) -> Result<String> {
    match (source, kind) {
        (DiagramSource::Braid(b), RenderKind::Braid) => Ok(render_braid(b)),
        (DiagramSource::Grid(g), RenderKind::Braid) => Ok(render_braid(&g.braid())),
        (DiagramSource::Grid(g), RenderKind::Grid) => Ok(render_grid(g)),
        (DiagramSource::Grid(g), RenderKind::Knot) => Ok(render_knot(g)),
        (DiagramSource::Grid(g), RenderKind::Front) => Ok(render_front(g)),
        (src, kind) => Err(Error::UnsupportedRender { kind: kind.name().into(), source_kind: src.name().into() }),
    }
}

fn pt(x: f64, y: f64) -> String {
    format!("({x:.3},{y:.3})")
}

fn curve(x0: f64, y0: f64, x1: f64, y1: f64) -> String {
    let ym = (y0 + y1) / 2.0;
    format!("{} .. controls {} and {} .. {}", pt(x0, y0), pt(x0, ym), pt(x1, ym), pt(x1, y1))
}

/// Strands run downwards, one crossing per row. In `σ_k` the strand from the
/// top of column `k+1` passes over; `σ_k⁻¹` is the mirror.
pub fn render_braid(braid: &BraidWord) -> String {
    let b = braid.strands();
    let mut out = String::from("\\begin{tikzpicture}[yscale=0.8]\n");
    writeln!(out, "% {b} strands, {} crossings", braid.len()).unwrap();
    for (row, &letter) in braid.letters().iter().enumerate() {
        let k = letter.unsigned_abs() as usize - 1;
        let (top, bottom) = (-(row as f64), -(row as f64) - 1.0);
        writeln!(out, "% row {row}: sigma_{}^{}", k + 1, if letter > 0 { "+1" } else { "-1" }).unwrap();
        for s in (0..b).filter(|&s| s != k && s != k + 1) {
            writeln!(out, "\\draw[thick] {} -- {};", pt(s as f64, top), pt(s as f64, bottom)).unwrap();
        }
        let (l, r) = (k as f64, k as f64 + 1.0);
        let (over, under) = if letter > 0 {
            (curve(r, top, l, bottom), curve(l, top, r, bottom))
        } else {
            (curve(l, top, r, bottom), curve(r, top, l, bottom))
        };
        writeln!(out, "\\draw[thick] {under};").unwrap();
        writeln!(out, "\\draw[white, line width=5pt] {over};").unwrap();
        writeln!(out, "\\draw[thick] {over};").unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Row `i` sits at height `-i`.
fn marker_xy(col: usize, row: usize) -> (f64, f64) {
    (col as f64, -(row as f64))
}

pub fn render_grid(grid: &GridDiagram) -> String {
    let n = grid.size();
    let mut out = String::from("\\begin{tikzpicture}\n");
    writeln!(out, "\\draw[gray, very thin, step=1] (-0.5,{:.1}) grid ({:.1},0.5);", 0.5 - n as f64, n as f64 - 0.5).unwrap();
    for row in 0..n {
        let (ox, oy) = marker_xy(grid.o_cols()[row], row);
        let (xx, xy) = marker_xy(grid.x_cols()[row], row);
        writeln!(out, "\\draw[thick] {} circle (0.3);", pt(ox, oy)).unwrap();
        writeln!(
            out,
            "\\draw[thick] {} -- {} {} -- {};",
            pt(xx - 0.3, xy - 0.3),
            pt(xx + 0.3, xy + 0.3),
            pt(xx - 0.3, xy + 0.3),
            pt(xx + 0.3, xy - 0.3)
        )
        .unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Each component as its cyclic list of corners, starting at an X and
/// alternating X → O down a column, then O → X along a row.
fn components(grid: &GridDiagram) -> Vec<Vec<(usize, usize)>> {
    let n = grid.size();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut corners = Vec::new();
        let mut row = start;
        while !seen[row] {
            seen[row] = true;
            let col = grid.x_cols()[row];
            corners.push((col, row));
            let next = grid.o_cols().iter().position(|&c| c == col).expect("permutation");
            corners.push((col, next));
            row = next;
        }
        comps.push(corners);
    }
    comps
}

/// Horizontal segments first, then vertical ones on a white halo so that
/// verticals cross over.
pub fn render_knot(grid: &GridDiagram) -> String {
    let mut out = String::from("\\begin{tikzpicture}\n");
    let comps = components(grid);
    for corners in &comps {
        // corner 2i+1 is an O; the X of its row is the next corner
        for i in (1..corners.len()).step_by(2) {
            let (oc, r) = corners[i];
            let (xc, _) = corners[(i + 1) % corners.len()];
            let (x0, y) = marker_xy(oc, r);
            let (x1, _) = marker_xy(xc, r);
            writeln!(out, "\\draw[thick, ->] {} -- {};", pt(x0, y), pt(x1, y)).unwrap();
        }
    }
    for corners in &comps {
        for i in (0..corners.len()).step_by(2) {
            let (c, r0) = corners[i];
            let (_, r1) = corners[i + 1];
            let (x, y0) = marker_xy(c, r0);
            let (_, y1) = marker_xy(c, r1);
            writeln!(out, "\\draw[white, line width=5pt] {} -- {};", pt(x, y0), pt(x, y1)).unwrap();
            writeln!(out, "\\draw[thick, ->] {} -- {};", pt(x, y0), pt(x, y1)).unwrap();
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// The grid knot turned 45° counterclockwise. Corners where the horizontal
/// coordinate `x - y` is locally extremal become cusps; the others are
/// rounded off.
pub fn render_front(grid: &GridDiagram) -> String {
    let mut out = String::from("\\begin{tikzpicture}\n");
    let rot = |(c, r): (usize, usize)| {
        let (x, y) = marker_xy(c, r);
        ((x - y) / std::f64::consts::SQRT_2, (x + y) / std::f64::consts::SQRT_2)
    };
    for corners in components(grid) {
        let m = corners.len();
        let u = |i: usize| rot(corners[i % m]).0;
        for i in 0..m {
            let (prev, here, next) = (u(i + m - 1), u(i), u(i + 1));
            let is_cusp = (prev - here) * (next - here) > 0.0;
            let (x, y) = rot(corners[i]);
            let (nx, ny) = rot(corners[(i + 1) % m]);
            if is_cusp {
                writeln!(out, "% cusp at {}", pt(x, y)).unwrap();
            }
            // each segment is split at its midpoint so that smoothing a corner
            // only touches the halves next to it
            let (mx, my) = ((x + nx) / 2.0, (y + ny) / 2.0);
            let (px, py) = rot(corners[(i + m - 1) % m]);
            let (qx, qy) = ((x + px) / 2.0, (y + py) / 2.0);
            if is_cusp {
                writeln!(out, "\\draw[thick] {} -- {} -- {};", pt(qx, qy), pt(x, y), pt(mx, my)).unwrap();
            } else {
                writeln!(out, "\\draw[thick] {} .. controls {} .. {};", pt(qx, qy), pt(x, y), pt(mx, my)).unwrap();
            }
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
