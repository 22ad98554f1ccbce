//! Built-in shape fixtures.
//!
//! Every fixture lives on an integer grid triangulated the same way: unit
//! squares split along their north-east diagonal. The universe is the whole
//! triangulated rectangle, so the region outside a shape is itself made of
//! cells (the boundary region is never empty unless the shape is the
//! universe). Coordinates are incidental; the combinatorics (cell counts,
//! loop structure, generator labels) are the contract.

use std::collections::BTreeSet;

use crate::complex::{CWSpace, CellComplex, CellId, SpaceBuilder, VertexId};
use crate::geom::Point2;

/// Names accepted by [`build_fixture`] and the CLI `--fixture` surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    TriangleFan3,
    CycleFigure3a,
    IntersectingCycles3b,
    Ribbon4b,
    HawaiianEarrings,
    HawaiianNecklace,
    HawaiianButterfly,
}

impl FixtureName {
    pub const ALL: [FixtureName; 7] = [
        FixtureName::TriangleFan3,
        FixtureName::CycleFigure3a,
        FixtureName::IntersectingCycles3b,
        FixtureName::Ribbon4b,
        FixtureName::HawaiianEarrings,
        FixtureName::HawaiianNecklace,
        FixtureName::HawaiianButterfly,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::TriangleFan3 => "triangle_fan3",
            FixtureName::CycleFigure3a => "cycle_figure3a",
            FixtureName::IntersectingCycles3b => "intersecting_cycles_3b",
            FixtureName::Ribbon4b => "ribbon_4b",
            FixtureName::HawaiianEarrings => "hawaiian_earrings",
            FixtureName::HawaiianNecklace => "hawaiian_necklace",
            FixtureName::HawaiianButterfly => "hawaiian_butterfly",
        }
    }

    /// Accepts the exact fixture id or a unique word of it, so `earrings`
    /// resolves to `hawaiian_earrings`.
    pub fn parse(s: &str) -> Option<FixtureName> {
        if let Some(exact) = Self::ALL.iter().find(|n| n.as_str() == s) {
            return Some(*exact);
        }
        let hits: Vec<FixtureName> = Self::ALL
            .iter()
            .copied()
            .filter(|n| n.as_str().split('_').any(|part| part == s))
            .collect();
        match hits.as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }
}

/// A fixture space together with the main shape name and the declared
/// generator vertices of its group representation.
#[derive(Debug, Clone)]
pub struct ShapeFixture {
    pub name: FixtureName,
    pub space: CWSpace,
    /// Name of the main shape complex (always registered as `shE`).
    pub shape: String,
    pub declared_generators: Vec<VertexId>,
    /// Manual figure reading: is the shape closure a single filled 1-cycle?
    pub expected_filled_cycle: bool,
}

impl ShapeFixture {
    pub fn shape_complex(&self) -> &CellComplex {
        self.space.complex(&self.shape).expect("shape registered")
    }
}

pub fn build_fixture(name: FixtureName) -> ShapeFixture {
    match name {
        FixtureName::TriangleFan3 => triangle_fan3(),
        FixtureName::CycleFigure3a => cycle_figure3a(),
        FixtureName::IntersectingCycles3b => intersecting_cycles_3b(),
        FixtureName::Ribbon4b => ribbon_4b(),
        FixtureName::HawaiianEarrings => hawaiian_earrings(),
        FixtureName::HawaiianNecklace => hawaiian_necklace(),
        FixtureName::HawaiianButterfly => hawaiian_butterfly(),
    }
}

/// All seven fixtures in declaration order.
pub fn build_all() -> Vec<ShapeFixture> {
    FixtureName::ALL.iter().map(|&n| build_fixture(n)).collect()
}

/// Triangulated rectangular grid of `w` x `h` unit squares.
pub struct Grid {
    pub w: i64,
    pub h: i64,
}

impl Grid {
    pub fn new(w: i64, h: i64) -> Grid {
        Grid { w, h }
    }

    pub fn vid(&self, x: i64, y: i64) -> VertexId {
        debug_assert!(0 <= x && x <= self.w && 0 <= y && y <= self.h);
        (y * (self.w + 1) + x) as VertexId
    }

    /// Builder preloaded with every vertex, 0-cell, edge, and triangle of
    /// the grid, all in a fixed deterministic order.
    pub fn builder(&self, name: &str) -> SpaceBuilder {
        let mut b = CWSpace::builder(name);
        for y in 0..=self.h {
            for x in 0..=self.w {
                b.add_vertex(self.vid(x, y), Point2::int(x, y));
                b.add_vertex_cell(self.vid(x, y));
            }
        }
        for y in 0..=self.h {
            for x in 0..self.w {
                b.add_edge(self.vid(x, y), self.vid(x + 1, y));
            }
        }
        for y in 0..self.h {
            for x in 0..=self.w {
                b.add_edge(self.vid(x, y), self.vid(x, y + 1));
            }
        }
        for y in 0..self.h {
            for x in 0..self.w {
                b.add_edge(self.vid(x, y), self.vid(x + 1, y + 1));
            }
        }
        for y in 0..self.h {
            for x in 0..self.w {
                b.add_triangle(self.vid(x, y), self.vid(x + 1, y), self.vid(x + 1, y + 1));
                b.add_triangle(self.vid(x, y), self.vid(x + 1, y + 1), self.vid(x, y + 1));
            }
        }
        b
    }

    /// Lower triangle of square (x, y): (x,y) (x+1,y) (x+1,y+1).
    pub fn tri_low(&self, b: &SpaceBuilder, x: i64, y: i64) -> CellId {
        b.triangle_id(self.vid(x, y), self.vid(x + 1, y), self.vid(x + 1, y + 1))
            .expect("grid triangle")
    }

    /// Upper triangle of square (x, y): (x,y) (x+1,y+1) (x,y+1).
    pub fn tri_high(&self, b: &SpaceBuilder, x: i64, y: i64) -> CellId {
        b.triangle_id(self.vid(x, y), self.vid(x + 1, y + 1), self.vid(x, y + 1))
            .expect("grid triangle")
    }

    /// Counter-clockwise perimeter loop of the rectangle [x0,x1] x [y0,y1].
    pub fn perimeter(&self, x0: i64, y0: i64, x1: i64, y1: i64) -> Vec<VertexId> {
        let mut lp = Vec::new();
        for x in x0..x1 {
            lp.push(self.vid(x, y0));
        }
        for y in y0..y1 {
            lp.push(self.vid(x1, y));
        }
        for x in (x0 + 1..=x1).rev() {
            lp.push(self.vid(x, y1));
        }
        for y in (y0 + 1..=y1).rev() {
            lp.push(self.vid(x0, y));
        }
        lp
    }
}

fn loop_polygon(space: &CWSpace, lp: &[VertexId]) -> Vec<Point2> {
    lp.iter().map(|&v| space.point(v)).collect()
}

/// Edge and vertex cells along a closed vertex loop.
fn loop_cells(space: &CWSpace, lp: &[VertexId]) -> BTreeSet<CellId> {
    let mut cells = BTreeSet::new();
    for i in 0..lp.len() {
        let (u, v) = (lp[i], lp[(i + 1) % lp.len()]);
        cells.insert(space.edge_between(u, v).expect("loop edge on grid"));
        cells.insert(space.vertex_cell(u).expect("grid vertex"));
    }
    cells
}

/// Closed cell set: the given cells plus all their faces.
fn closed(space: &CWSpace, cells: BTreeSet<CellId>) -> BTreeSet<CellId> {
    space
        .closure(&CellComplex::new("tmp", cells))
        .expect("grid complexes are closable")
        .cells
}

/// 2-cells of the universe lying in the open region of `polygon`.
fn fill_region(space: &CWSpace, polygon: &[Point2]) -> BTreeSet<CellId> {
    space
        .universe()
        .cells
        .iter()
        .copied()
        .filter(|&c| space.cell(c).dim == 2 && space.cell_in_open_region(c, polygon))
        .collect()
}

/// Cells (any dimension) strictly inside `polygon`, removed when carving a
/// ribbon hole. Cells on the polygon itself stay.
fn carve_hole(space: &CWSpace, cells: &mut BTreeSet<CellId>, polygon: &[Point2]) {
    cells.retain(|&c| !space.cell_in_open_region(c, polygon));
}

/// Three filled triangles meeting only at a common vertex v0, inside a 4x4
/// grid. Registered complexes: shE, E1, E23, corner1, corner2.
fn triangle_fan3() -> ShapeFixture {
    let g = Grid::new(4, 4);
    let b = g.builder("fig1a");
    let t1 = g.tri_low(&b, 1, 2);
    let t2 = g.tri_low(&b, 1, 1);
    let t3 = g.tri_low(&b, 2, 2);
    let c1 = g.tri_low(&b, 0, 0);
    let c2 = g.tri_high(&b, 3, 3);
    let mut space = b.build().expect("grid builds");

    let sh = closed(&space, BTreeSet::from([t1, t2, t3]));
    space.register(CellComplex::new("shE", sh));
    space.register(CellComplex::new("E1", closed(&space, BTreeSet::from([t1]))));
    space.register(CellComplex::new(
        "E23",
        closed(&space, BTreeSet::from([t2, t3])),
    ));
    space.register(CellComplex::new(
        "corner1",
        closed(&space, BTreeSet::from([c1])),
    ));
    space.register(CellComplex::new(
        "corner2",
        closed(&space, BTreeSet::from([c2])),
    ));
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::TriangleFan3,
        space,
        shape: "shE".into(),
        declared_generators: vec![],
        expected_filled_cycle: true,
    }
}

/// Mirror-image fan in its own space (the primed shape of the figure pair).
pub fn fan_prime_space() -> CWSpace {
    let g = Grid::new(4, 4);
    let b = g.builder("fig1b");
    let t1 = g.tri_high(&b, 2, 2);
    let t2 = g.tri_high(&b, 1, 1);
    let t3 = g.tri_high(&b, 2, 1);
    let c1 = g.tri_low(&b, 0, 0);
    let c2 = g.tri_high(&b, 3, 3);
    let mut space = b.build().expect("grid builds");
    let sh = closed(&space, BTreeSet::from([t1, t2, t3]));
    space.register(CellComplex::new("shE", sh));
    space.register(CellComplex::new("E1", closed(&space, BTreeSet::from([t1]))));
    space.register(CellComplex::new(
        "E23",
        closed(&space, BTreeSet::from([t2, t3])),
    ));
    space.register(CellComplex::new(
        "corner1",
        closed(&space, BTreeSet::from([c1])),
    ));
    space.register(CellComplex::new(
        "corner2",
        closed(&space, BTreeSet::from([c2])),
    ));
    space.verify_cw_conditions();
    space
}

/// One filled cycle: a 3x2 filled block whose contour is a 10-vertex loop,
/// with generator v0 at the block's top-left corner.
fn cycle_figure3a() -> ShapeFixture {
    let g = Grid::new(5, 4);
    let b = g.builder("fig3a");
    let mut tris = BTreeSet::new();
    for x in 1..4 {
        for y in 1..3 {
            tris.insert(g.tri_low(&b, x, y));
            tris.insert(g.tri_high(&b, x, y));
        }
    }
    let v0 = g.vid(1, 3);
    let mut space = b.build().expect("grid builds");
    let sh = closed(&space, tris);
    space.register(CellComplex::new("shE", sh));
    space.register_generators("shE", vec![v0]);
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::CycleFigure3a,
        space,
        shape: "shE".into(),
        declared_generators: vec![v0],
        expected_filled_cycle: true,
    }
}

/// Two intersecting cycles sharing one vertex, the inner one filled and its
/// interior contained in the outer's. Generators: v0 on the outer loop,
/// v0' on the inner loop.
fn intersecting_cycles_3b() -> ShapeFixture {
    let g = Grid::new(7, 6);
    let b = g.builder("fig3b");
    let outer = g.perimeter(1, 1, 6, 5);
    let inner = vec![g.vid(3, 1), g.vid(4, 2), g.vid(3, 2)];
    let inner_tri = g.tri_high(&b, 3, 1);
    let v0 = g.vid(1, 1);
    let v0p = g.vid(4, 2);
    let mut space = b.build().expect("grid builds");

    let mut cells = loop_cells(&space, &outer);
    cells.extend(loop_cells(&space, &inner));
    cells.insert(inner_tri);
    let sh = closed(&space, cells);
    space.register(CellComplex::new("shE", sh));
    space.register(CellComplex::new(
        "cycA",
        closed(&space, loop_cells(&space, &outer)),
    ));
    let mut inner_cells = loop_cells(&space, &inner);
    inner_cells.insert(inner_tri);
    space.register(CellComplex::new("cycB", closed(&space, inner_cells)));
    space.register_generators("shE", vec![v0, v0p]);
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::IntersectingCycles3b,
        space,
        shape: "shE".into(),
        declared_generators: vec![v0, v0p],
        expected_filled_cycle: true,
    }
}

/// Wide ribbon between two strictly nesting cycles; its boundary region has
/// two connected components (outside the outer loop, inside the inner one).
fn ribbon_4b() -> ShapeFixture {
    let g = Grid::new(7, 6);
    let b = g.builder("fig4b");
    let outer = g.perimeter(1, 1, 6, 5);
    let inner = g.perimeter(2, 2, 5, 4);
    let mut space = b.build().expect("grid builds");

    let outer_poly = loop_polygon(&space, &outer);
    let inner_poly = loop_polygon(&space, &inner);
    let mut tris = fill_region(&space, &outer_poly);
    let disk_a = closed(&space, tris.clone());
    carve_hole(&space, &mut tris, &inner_poly);
    let mut cells = closed(&space, tris);
    cells.extend(loop_cells(&space, &inner));
    space.register(CellComplex::new("shE", closed(&space, cells)));
    // the filled disks bounded by the two cycles, for ribbon construction
    space.register(CellComplex::new("diskA", disk_a));
    space.register(CellComplex::new(
        "diskB",
        closed(&space, fill_region(&space, &inner_poly)),
    ));
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::Ribbon4b,
        space,
        shape: "shE".into(),
        declared_generators: vec![],
        expected_filled_cycle: false,
    }
}

/// Pair of pinched-annulus earrings joined by one edge. Generators: the two
/// pinch vertices v0, v0'.
fn hawaiian_earrings() -> ShapeFixture {
    let g = Grid::new(9, 6);
    let b = g.builder("earrings");
    let left_outer = g.perimeter(1, 1, 4, 4);
    let left_inner = vec![g.vid(3, 2), g.vid(4, 3), g.vid(3, 3)];
    let right_outer = g.perimeter(5, 2, 8, 5);
    let right_inner = vec![g.vid(5, 3), g.vid(6, 3), g.vid(6, 4)];
    let v0 = g.vid(4, 3);
    let v0p = g.vid(5, 3);
    let mut space = b.build().expect("grid builds");

    let er_e = earring_cells(&space, &left_outer, &left_inner);
    let er_ep = earring_cells(&space, &right_outer, &right_inner);
    let bridge = space.edge_between(v0, v0p).expect("bridge edge on grid");
    let mut pair = er_e.clone();
    pair.extend(er_ep.iter().copied());
    pair.insert(bridge);

    space.register(CellComplex::new("erE", er_e));
    space.register(CellComplex::new("erEp", er_ep));
    space.register(CellComplex::new("shE", closed(&space, pair)));
    space.register_generators("shE", vec![v0, v0p]);
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::HawaiianEarrings,
        space,
        shape: "shE".into(),
        declared_generators: vec![v0, v0p],
        expected_filled_cycle: false,
    }
}

fn earring_cells(space: &CWSpace, outer: &[VertexId], inner: &[VertexId]) -> BTreeSet<CellId> {
    let outer_poly = loop_polygon(space, outer);
    let inner_poly = loop_polygon(space, inner);
    let mut tris = fill_region(space, &outer_poly);
    carve_hole(space, &mut tris, &inner_poly);
    let mut cells = closed(space, tris);
    cells.extend(loop_cells(space, inner));
    closed(space, cells)
}

/// Single annulus pinched at two boundary vertices g and g'; the inner loop
/// carries a third generator v0'.
fn hawaiian_necklace() -> ShapeFixture {
    let g = Grid::new(7, 5);
    let b = g.builder("necklace");
    let outer = g.perimeter(1, 1, 6, 4);
    let gen_g = g.vid(1, 2);
    let gen_gp = g.vid(6, 3);
    let v0p = g.vid(4, 2);
    let inner = vec![
        g.vid(1, 2),
        g.vid(2, 3),
        g.vid(3, 3),
        g.vid(4, 3),
        g.vid(5, 3),
        g.vid(6, 3),
        g.vid(5, 2),
        g.vid(4, 2),
        g.vid(3, 2),
        g.vid(2, 2),
    ];
    let mut space = b.build().expect("grid builds");

    let cells = earring_cells(&space, &outer, &inner);
    space.register(CellComplex::new("shE", cells));
    space.register_generators("shE", vec![gen_g, gen_gp, v0p]);
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::HawaiianNecklace,
        space,
        shape: "shE".into(),
        declared_generators: vec![gen_g, gen_gp, v0p],
        expected_filled_cycle: true,
    }
}

/// Two filled wings pinched at v0 plus two antenna loops carrying v1 and
/// v2, reached over bridge edges.
fn hawaiian_butterfly() -> ShapeFixture {
    let g = Grid::new(10, 8);
    let b = g.builder("butterfly");
    let left_wing = vec![
        g.vid(5, 3),
        g.vid(4, 2),
        g.vid(3, 2),
        g.vid(2, 2),
        g.vid(2, 3),
        g.vid(2, 4),
        g.vid(3, 4),
        g.vid(4, 4),
        g.vid(4, 3),
    ];
    let right_wing = vec![
        g.vid(5, 3),
        g.vid(6, 4),
        g.vid(7, 4),
        g.vid(8, 4),
        g.vid(8, 3),
        g.vid(8, 2),
        g.vid(7, 2),
        g.vid(6, 2),
        g.vid(6, 3),
    ];
    let left_antenna = vec![g.vid(4, 5), g.vid(5, 6), g.vid(4, 6)];
    let right_antenna = vec![g.vid(5, 5), g.vid(6, 5), g.vid(6, 6)];
    let v0 = g.vid(5, 3);
    let v1 = g.vid(4, 6);
    let v2 = g.vid(6, 6);
    let stalk = [
        (g.vid(5, 3), g.vid(5, 4)),
        (g.vid(5, 4), g.vid(5, 5)),
        (g.vid(5, 5), g.vid(5, 6)),
    ];
    let mut space = b.build().expect("grid builds");

    let mut cells = fill_region(&space, &loop_polygon(&space, &left_wing));
    cells.extend(fill_region(&space, &loop_polygon(&space, &right_wing)));
    cells.extend(loop_cells(&space, &left_antenna));
    cells.extend(loop_cells(&space, &right_antenna));
    for (u, v) in stalk {
        cells.insert(space.edge_between(u, v).expect("stalk edge on grid"));
    }
    space.register(CellComplex::new("shE", closed(&space, cells)));
    space.register_generators("shE", vec![v0, v1, v2]);
    space.verify_cw_conditions();

    ShapeFixture {
        name: FixtureName::HawaiianButterfly,
        space,
        shape: "shE".into(),
        declared_generators: vec![v0, v1, v2],
        expected_filled_cycle: false,
    }
}
