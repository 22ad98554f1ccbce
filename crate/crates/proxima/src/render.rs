//! SVG rendering of a space partitioned by one highlighted complex.
//!
//! Every cell of the universe is drawn exactly once, colored by which side
//! of the partition it falls on: closure cells get the interior palette,
//! boundary-region cells the boundary palette. Elements are emitted in
//! ascending cell id per dimension group (2-cells, then 1-cells, then
//! 0-cells), so output is byte-stable.

use std::fmt::Write as _;

use crate::complex::CWSpace;
use crate::error::Result;

/// Fill and stroke palette. Defaults follow the figures' convention:
/// green closure on an orange boundary region.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub interior_fill: String,
    pub boundary_fill: String,
    pub contour_stroke: String,
    pub edge_stroke: String,
    pub vertex_fill: String,
    pub stroke_width: f64,
    pub contour_width: f64,
    pub scale: f64,
    pub margin: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            interior_fill: "#b7e4a7".to_string(),
            boundary_fill: "#f8d8a8".to_string(),
            contour_stroke: "#222222".to_string(),
            edge_stroke: "#666666".to_string(),
            vertex_fill: "#f2e34c".to_string(),
            stroke_width: 1.0,
            contour_width: 2.5,
            scale: 60.0,
            margin: 30.0,
        }
    }
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.3}")
}

/// Renders the space with `highlight`'s closure against its boundary
/// region. Output is deterministic for a given input.
pub fn render_svg(space: &CWSpace, highlight: &str, style: &RenderStyle) -> Result<String> {
    let complex = space.complex(highlight)?;
    let closure = space.closure(complex)?;
    let contour = space.contour(complex)?;

    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in space.vertices.values() {
        let (x, y) = p.to_f64();
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let s = style.scale;
    let m = style.margin;
    let width = (max_x - min_x) * s + 2.0 * m;
    let height = (max_y - min_y) * s + 2.0 * m;
    // Flip y so the plane's upward axis points up on screen.
    let tx = |x: f64| (x - min_x) * s + m;
    let ty = |y: f64| (max_y - y) * s + m;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt_coord(width),
        fmt_coord(height),
        fmt_coord(width),
        fmt_coord(height)
    );
    let _ = writeln!(
        out,
        "<desc>space={} highlight={}</desc>",
        space.name, highlight
    );

    let in_closure = |id| closure.cells.contains(&id);
    let fill_for = |id| {
        if in_closure(id) {
            &style.interior_fill
        } else {
            &style.boundary_fill
        }
    };

    for cell in space.cells.values().filter(|c| c.dim == 2) {
        let pts: Vec<String> = cell
            .vertices
            .iter()
            .map(|&v| {
                let (x, y) = space.point(v).to_f64();
                format!("{},{}", fmt_coord(tx(x)), fmt_coord(ty(y)))
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon id=\"c{}\" points=\"{}\" fill=\"{}\" stroke=\"none\"/>",
            cell.id,
            pts.join(" "),
            fill_for(cell.id)
        );
    }
    for cell in space.cells.values().filter(|c| c.dim == 1) {
        let (x1, y1) = space.point(cell.vertices[0]).to_f64();
        let (x2, y2) = space.point(cell.vertices[1]).to_f64();
        let on_contour = contour.cells.cells.contains(&cell.id);
        let (stroke, width) = if on_contour {
            (&style.contour_stroke, style.contour_width)
        } else {
            (&style.edge_stroke, style.stroke_width)
        };
        let _ = writeln!(
            out,
            "<line id=\"c{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\" class=\"{}\"/>",
            cell.id,
            fmt_coord(tx(x1)),
            fmt_coord(ty(y1)),
            fmt_coord(tx(x2)),
            fmt_coord(ty(y2)),
            stroke,
            width,
            if in_closure(cell.id) { "closure" } else { "boundary" }
        );
    }
    for cell in space.cells.values().filter(|c| c.dim == 0) {
        let (x, y) = space.point(cell.vertices[0]).to_f64();
        let _ = writeln!(
            out,
            "<circle id=\"c{}\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\" stroke=\"{}\" class=\"{}\"/>",
            cell.id,
            fmt_coord(tx(x)),
            fmt_coord(ty(y)),
            style.vertex_fill,
            style.contour_stroke,
            if in_closure(cell.id) { "closure" } else { "boundary" }
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
