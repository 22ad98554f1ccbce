//! Filled 1-cycles and planar ribbons.
//!
//! Cycle extraction works on the contour edges of a complex (edges bounding
//! at most one of its 2-cells). The edge graph is split into biconnected
//! blocks: a block that is itself a simple cycle is one loop, a non-cycle
//! block is decomposed into its bounded planar faces by an exact angular
//! sweep, and bridges are discarded. This finds shape contours and isolated
//! 1-skeleton loops without enumerating all graph cycles.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::complex::{CWSpace, CellComplex, CellId, VertexId};
use crate::error::{Error, Result};
use crate::geom::{angle_cmp, signed_area2, Point2};
use num::Signed;

/// A simple closed vertex loop with its enclosed subcomplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    /// Closed loop in canonical rotation (first vertex is the smallest, the
    /// last edge returns to it implicitly).
    pub loop_vertices: Vec<VertexId>,
    /// Edge cells along the loop, in loop order.
    pub edges: Vec<CellId>,
    /// Cells of the source complex's closure enclosed by the loop.
    pub interior: CellComplex,
    pub filled: bool,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.loop_vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loop_vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.loop_vertices.contains(&v)
    }

    /// Loop + interior as one cell set (the closure of a filled cycle).
    pub fn closure_cells(&self, space: &CWSpace) -> BTreeSet<CellId> {
        let mut cells = self.interior.cells.clone();
        cells.extend(self.edges.iter().copied());
        for &v in &self.loop_vertices {
            cells.insert(space.vertex_cell(v).expect("loop vertices have 0-cells"));
        }
        cells
    }

    pub fn polygon(&self, space: &CWSpace) -> Vec<Point2> {
        self.loop_vertices.iter().map(|&v| space.point(v)).collect()
    }
}

/// Two nesting (or vertex-intersecting) filled cycles with the region
/// between them; both boundary loops are retained in the body.
#[derive(Debug, Clone)]
pub struct Ribbon {
    pub outer: Cycle,
    pub inner: Cycle,
    pub body: CellComplex,
}

/// Outcome of the filled-1-cycle test for a shape closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilledCycleReport {
    pub holds: bool,
    /// Connected components of the contour edge graph.
    pub contour_components: usize,
    /// True when each component closes into a single boundary walk.
    pub single_walk: bool,
    pub interior_nonempty: bool,
}

/// The simple closed loops carried by the contour edges of cl(A), in
/// canonical rotation without interiors. Deterministic order: ascending
/// (smallest vertex id, length, vertex sequence).
pub fn extract_loops(space: &CWSpace, a: &CellComplex) -> Result<Vec<Vec<VertexId>>> {
    let contour = space.contour_edges(a)?;

    let mut adj: BTreeMap<VertexId, Vec<(VertexId, CellId)>> = BTreeMap::new();
    for &e in &contour {
        let cell = space.cell(e);
        let (u, v) = (cell.vertices[0], cell.vertices[1]);
        adj.entry(u).or_default().push((v, e));
        adj.entry(v).or_default().push((u, e));
    }
    for nbrs in adj.values_mut() {
        nbrs.sort_unstable();
    }

    let mut loops: Vec<Vec<VertexId>> = Vec::new();
    for block in biconnected_blocks(&adj) {
        if block.len() < 3 {
            continue; // bridge
        }
        if let Some(lp) = block_as_simple_cycle(&block) {
            loops.push(lp);
        } else {
            loops.extend(bounded_faces(space, &block));
        }
    }
    let mut loops: Vec<Vec<VertexId>> = loops.into_iter().map(canonical_rotation).collect();
    loops.sort_by(|a, b| (a[0], a.len(), a).cmp(&(b[0], b.len(), b)));
    Ok(loops)
}

/// All simple closed loops of cl(A) with their filled flags and interiors.
pub fn extract_cycles(space: &CWSpace, a: &CellComplex) -> Result<Vec<Cycle>> {
    let cl = space.closure(a)?;
    Ok(extract_loops(space, a)?
        .into_iter()
        .map(|lp| build_cycle(space, &cl, lp))
        .collect())
}

pub fn is_filled_cycle(c: &Cycle) -> bool {
    c.filled
}

/// A shape closure is a filled 1-cycle when its contour edges form one
/// connected graph whose vertex degrees are all even (a single closed
/// boundary walk exists, possibly through pinch vertices) and its interior
/// is nonempty.
pub fn shape_closure_is_filled_cycle(
    space: &CWSpace,
    a: &CellComplex,
) -> Result<FilledCycleReport> {
    let report = space.contour(a)?;
    let interior = space.interior(a)?;
    let single_walk = report.components == 1 && report.all_loops;
    Ok(FilledCycleReport {
        holds: single_walk && !interior.is_empty(),
        contour_components: report.components,
        single_walk,
        interior_nonempty: !interior.is_empty(),
    })
}

/// Builds the ribbon between two filled cycles. The inner cycle must sit
/// inside the outer one (possibly touching it at vertices); its strictly
/// interior cells are removed while both boundary loops stay in the body.
pub fn make_ribbon(space: &CWSpace, outer: &Cycle, inner: &Cycle) -> Result<Ribbon> {
    if !outer.filled || !inner.filled {
        return Err(Error::NotNested);
    }
    if outer.loop_vertices == inner.loop_vertices {
        return Err(Error::NotNested);
    }
    let outer_poly = outer.polygon(space);
    let nested = inner.loop_vertices.iter().all(|&v| {
        use crate::geom::{locate_in_polygon, PolygonLocation};
        locate_in_polygon(space.point(v), &outer_poly) != PolygonLocation::Outside
    });
    let touching = inner
        .loop_vertices
        .iter()
        .any(|v| outer.contains_vertex(*v));
    if !nested && !touching {
        return Err(Error::NotNested);
    }

    let inner_poly = inner.polygon(space);
    let body_cells: BTreeSet<CellId> = outer
        .closure_cells(space)
        .into_iter()
        .filter(|&c| !space.cell_in_open_region(c, &inner_poly))
        .collect();
    let body = CellComplex::new("rb", body_cells);
    if !body.cells.iter().any(|&c| space.cell(c).dim == 2) {
        return Err(Error::NotNested);
    }
    Ok(Ribbon {
        outer: outer.clone(),
        inner: inner.clone(),
        body,
    })
}

fn build_cycle(space: &CWSpace, cl: &CellComplex, lp: Vec<VertexId>) -> Cycle {
    let edges: Vec<CellId> = (0..lp.len())
        .map(|i| {
            space
                .edge_between(lp[i], lp[(i + 1) % lp.len()])
                .expect("loop edges exist")
        })
        .collect();
    let polygon: Vec<Point2> = lp.iter().map(|&v| space.point(v)).collect();
    let interior_cells: BTreeSet<CellId> = cl
        .cells
        .iter()
        .copied()
        .filter(|&c| space.cell_in_open_region(c, &polygon))
        .collect();
    let filled = !interior_cells.is_empty();
    Cycle {
        interior: CellComplex::new("int(cyc)", interior_cells),
        loop_vertices: lp,
        edges,
        filled,
    }
}

/// Rotates a loop so the smallest vertex comes first and the smaller of its
/// two neighbors comes second.
fn canonical_rotation(lp: Vec<VertexId>) -> Vec<VertexId> {
    let n = lp.len();
    let start = (0..n).min_by_key(|&i| lp[i]).expect("nonempty loop");
    let fwd = lp[(start + 1) % n];
    let bwd = lp[(start + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if fwd <= bwd {
        for i in 0..n {
            out.push(lp[(start + i) % n]);
        }
    } else {
        for i in 0..n {
            out.push(lp[(start + n - i) % n]);
        }
    }
    out
}

/// Edge sets of the biconnected components of an undirected graph
/// (deterministic iterative Tarjan). Adjacency lists must be sorted.
fn biconnected_blocks(
    adj: &BTreeMap<VertexId, Vec<(VertexId, CellId)>>,
) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut blocks: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
    let mut disc: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut time = 0usize;
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();

    for &root in adj.keys() {
        if disc.contains_key(&root) {
            continue;
        }
        // frame: (vertex, parent, next neighbor index)
        let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(root, None, 0)];
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        while !stack.is_empty() {
            let (v, parent, idx) = *stack.last().unwrap();
            let nbrs = &adj[&v];
            if idx < nbrs.len() {
                stack.last_mut().unwrap().2 += 1;
                let (w, _) = nbrs[idx];
                if Some(w) == parent {
                    continue;
                }
                if let Some(&dw) = disc.get(&w) {
                    if dw < disc[&v] {
                        edge_stack.push((v, w));
                        let lv = low[&v].min(dw);
                        low.insert(v, lv);
                    }
                } else {
                    edge_stack.push((v, w));
                    disc.insert(w, time);
                    low.insert(w, time);
                    time += 1;
                    stack.push((w, Some(v), 0));
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    let lu = low[&u].min(low[&v]);
                    low.insert(u, lu);
                    if low[&v] >= disc[&u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            blocks.push(block);
                        }
                    }
                }
            }
        }
    }
    blocks
}

/// When a block's edges form one simple cycle, returns its vertex loop.
fn block_as_simple_cycle(block: &[(VertexId, VertexId)]) -> Option<Vec<VertexId>> {
    let mut deg: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in block {
        deg.entry(u).or_default().push(v);
        deg.entry(v).or_default().push(u);
    }
    if deg.len() != block.len() || deg.values().any(|n| n.len() != 2) {
        return None;
    }
    let start = *deg.keys().next().unwrap();
    let mut lp = vec![start];
    let mut prev = start;
    let mut cur = *deg[&start].iter().min().unwrap();
    while cur != start {
        lp.push(cur);
        let next = deg[&cur]
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("degree two");
        prev = cur;
        cur = next;
    }
    if lp.len() == block.len() {
        Some(lp)
    } else {
        None
    }
}

/// Bounded faces of a planar straight-line block, traced with the standard
/// next-dart rule (counter-clockwise interior walks have positive signed
/// area). Walks that revisit a vertex are not simple loops and are dropped.
fn bounded_faces(space: &CWSpace, block: &[(VertexId, VertexId)]) -> Vec<Vec<VertexId>> {
    let mut around: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in block {
        around.entry(u).or_default().push(v);
        around.entry(v).or_default().push(u);
    }
    for (&v, nbrs) in around.iter_mut() {
        let p = space.point(v);
        nbrs.sort_unstable();
        nbrs.dedup();
        nbrs.sort_by(|&a, &b| {
            let pa = space.point(a);
            let pb = space.point(b);
            angle_cmp((pa.x - p.x, pa.y - p.y), (pb.x - p.x, pb.y - p.y))
        });
    }

    let mut used: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut faces = Vec::new();
    let mut darts: Vec<(VertexId, VertexId)> = Vec::new();
    for (&v, nbrs) in &around {
        for &w in nbrs {
            darts.push((v, w));
        }
    }
    for &(sv, sw) in &darts {
        if used.contains(&(sv, sw)) {
            continue;
        }
        let mut walk = vec![sv];
        let (mut u, mut v) = (sv, sw);
        loop {
            used.insert((u, v));
            walk.push(v);
            // next dart: the neighbor clockwise-previous to u around v
            let nbrs = &around[&v];
            let pos = nbrs.iter().position(|&x| x == u).expect("dart endpoint");
            let next = nbrs[(pos + nbrs.len() - 1) % nbrs.len()];
            u = v;
            v = next;
            if (u, v) == (sv, sw) {
                break;
            }
        }
        walk.pop(); // drop the repeated start
        let pts: Vec<Point2> = walk.iter().map(|&x| space.point(x)).collect();
        if signed_area2(&pts).is_positive() {
            let mut seen = BTreeSet::new();
            if walk.iter().all(|&x| seen.insert(x)) {
                faces.push(walk);
            }
        }
    }
    faces
}
