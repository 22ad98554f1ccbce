//! Finite planar CW spaces: cells, complexes, and the four region operators
//! (closure, interior, contour, boundary region) plus CW-condition
//! verification.
//!
//! "Points" of a space are its cells, so every operator is exact finite set
//! algebra over cell ids. A space is immutable once built; queries are safe
//! to run from many threads.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geom::{
    centroid, locate_in_polygon, orient, segments_cross_properly, Orientation, Point2,
    PolygonLocation,
};

pub type VertexId = u32;
pub type CellId = u32;

/// A 0-, 1-, or 2-cell given by its vertex ids. A 2-cell is a filled
/// triangle; its interior is nonvoid by definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: CellId,
    pub dim: u8,
    pub vertices: Vec<VertexId>,
}

/// A named finite set of cell ids of one space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub name: String,
    pub cells: BTreeSet<CellId>,
}

impl CellComplex {
    pub fn new(name: impl Into<String>, cells: BTreeSet<CellId>) -> Self {
        CellComplex {
            name: name.into(),
            cells,
        }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        CellComplex::new(name, BTreeSet::new())
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn union(&self, other: &CellComplex, name: impl Into<String>) -> CellComplex {
        CellComplex::new(name, self.cells.union(&other.cells).copied().collect())
    }

    pub fn intersection(&self, other: &CellComplex, name: impl Into<String>) -> CellComplex {
        CellComplex::new(
            name,
            self.cells.intersection(&other.cells).copied().collect(),
        )
    }

    pub fn difference(&self, other: &CellComplex, name: impl Into<String>) -> CellComplex {
        CellComplex::new(name, self.cells.difference(&other.cells).copied().collect())
    }
}

/// Result of `verify_cw_conditions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CWReport {
    /// Every face of every cell of every registered complex is a cell of the space.
    pub containment: bool,
    /// Every nonempty pairwise intersection of registered complexes is registered.
    pub intersections: bool,
    /// Finite surrogate for the Hausdorff condition: all cells have distinct,
    /// properly attached geometric realizations.
    pub hausdorff: bool,
    pub notes: Vec<String>,
}

impl CWReport {
    pub fn accepted(&self) -> bool {
        self.containment && self.intersections && self.hausdorff
    }
}

/// Contour of a complex: its 1-subcomplex of boundary edges and vertices,
/// decomposed into closed boundary walks where possible.
#[derive(Debug, Clone)]
pub struct ContourReport {
    pub cells: CellComplex,
    /// One closed walk per contour component whose vertex degrees are all
    /// even; a walk may revisit a pinch vertex but never repeats an edge.
    pub loops: Vec<Vec<VertexId>>,
    /// Number of connected components of the contour edge graph.
    pub components: usize,
    /// True when every component yielded a closed walk.
    pub all_loops: bool,
}

/// A finite planar CW space. Build through [`SpaceBuilder`]; immutable
/// afterwards apart from complex registration.
#[derive(Debug, Clone)]
pub struct CWSpace {
    pub name: String,
    pub vertices: BTreeMap<VertexId, Point2>,
    pub cells: BTreeMap<CellId, Cell>,
    pub complexes: BTreeMap<String, CellComplex>,
    /// Optional declared generator vertices per registered complex.
    pub declared_generators: BTreeMap<String, Vec<VertexId>>,
    vertex_cell: BTreeMap<VertexId, CellId>,
    edge_cell: BTreeMap<(VertexId, VertexId), CellId>,
    /// Cells incident to each vertex (all dimensions).
    incident: BTreeMap<VertexId, Vec<CellId>>,
}

fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl CWSpace {
    pub fn builder(name: impl Into<String>) -> SpaceBuilder {
        SpaceBuilder {
            name: name.into(),
            vertices: BTreeMap::new(),
            cells: BTreeMap::new(),
            next_cell: 0,
            vertex_cell: BTreeMap::new(),
            edge_cell: BTreeMap::new(),
            tri_cell: BTreeMap::new(),
            complexes: Vec::new(),
            generators: Vec::new(),
        }
    }

    /// The complex holding every cell of the space (symbol K).
    pub fn universe(&self) -> &CellComplex {
        &self.complexes["K"]
    }

    pub fn complex(&self, name: &str) -> Result<&CellComplex> {
        self.complexes
            .get(name)
            .ok_or_else(|| Error::NotFound(name.to_string()))
    }

    pub fn generators_of(&self, name: &str) -> Option<&[VertexId]> {
        self.declared_generators.get(name).map(|v| v.as_slice())
    }

    pub fn point(&self, v: VertexId) -> Point2 {
        self.vertices[&v]
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[&id]
    }

    pub fn vertex_cell(&self, v: VertexId) -> Option<CellId> {
        self.vertex_cell.get(&v).copied()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<CellId> {
        self.edge_cell.get(&edge_key(u, v)).copied()
    }

    pub fn cells_at_vertex(&self, v: VertexId) -> &[CellId] {
        self.incident.get(&v).map(|c| c.as_slice()).unwrap_or(&[])
    }

    /// Registers a derived complex under its own name. Replaces any previous
    /// registration of the same name.
    pub fn register(&mut self, complex: CellComplex) {
        self.complexes.insert(complex.name.clone(), complex);
    }

    pub fn register_generators(&mut self, name: &str, mut gens: Vec<VertexId>) {
        gens.sort_unstable();
        gens.dedup();
        self.declared_generators.insert(name.to_string(), gens);
    }

    /// Faces of a cell that exist in this space. Errors when a face was never
    /// registered (raw spaces built for violation tests).
    fn faces_of(&self, cell: &Cell, complex: &str) -> Result<Vec<CellId>> {
        let mut out = Vec::new();
        match cell.dim {
            0 => {}
            1 => {
                for &v in &cell.vertices {
                    out.push(self.vertex_cell(v).ok_or(Error::MissingFace {
                        complex: complex.to_string(),
                        cell: cell.id,
                    })?);
                }
            }
            2 => {
                let vs = &cell.vertices;
                for i in 0..3 {
                    let (u, v) = (vs[i], vs[(i + 1) % 3]);
                    out.push(self.edge_between(u, v).ok_or(Error::MissingFace {
                        complex: complex.to_string(),
                        cell: cell.id,
                    })?);
                    out.push(self.vertex_cell(u).ok_or(Error::MissingFace {
                        complex: complex.to_string(),
                        cell: cell.id,
                    })?);
                }
            }
            _ => unreachable!("cells are 0-, 1-, or 2-dimensional"),
        }
        Ok(out)
    }

    /// Closure: the complex plus all faces of its cells. Idempotent and
    /// monotone.
    pub fn closure(&self, a: &CellComplex) -> Result<CellComplex> {
        let mut cells = a.cells.clone();
        for &id in &a.cells {
            let cell = self.cells.get(&id).ok_or(Error::MissingFace {
                complex: a.name.clone(),
                cell: id,
            })?;
            cells.extend(self.faces_of(cell, &a.name)?);
        }
        Ok(CellComplex::new(format!("cl({})", a.name), cells))
    }

    pub fn closure_named(&self, name: &str) -> Result<CellComplex> {
        self.closure(self.complex(name)?)
    }

    /// Edges of cl(A) bounding at most one 2-cell of A. These carry the
    /// contour together with their endpoints.
    pub fn contour_edges(&self, a: &CellComplex) -> Result<BTreeSet<CellId>> {
        let cl = self.closure(a)?;
        let mut incidence: BTreeMap<CellId, usize> = BTreeMap::new();
        for &id in &cl.cells {
            if self.cells[&id].dim == 1 {
                incidence.insert(id, 0);
            }
        }
        for &id in &a.cells {
            let cell = &self.cells[&id];
            if cell.dim == 2 {
                for i in 0..3 {
                    let e = self
                        .edge_between(cell.vertices[i], cell.vertices[(i + 1) % 3])
                        .expect("closure already validated faces");
                    *incidence.entry(e).or_insert(0) += 1;
                }
            }
        }
        Ok(incidence
            .into_iter()
            .filter(|&(_, n)| n <= 1)
            .map(|(e, _)| e)
            .collect())
    }

    /// Contour: the boundary 1-subcomplex of cl(A), with its closed boundary
    /// walks. A disconnected contour is reported as multiple loops rather
    /// than an error.
    pub fn contour(&self, a: &CellComplex) -> Result<ContourReport> {
        let edges = self.contour_edges(a)?;
        let mut cells: BTreeSet<CellId> = BTreeSet::new();
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &e in &edges {
            let cell = &self.cells[&e];
            let (u, v) = (cell.vertices[0], cell.vertices[1]);
            cells.insert(e);
            cells.insert(self.vertex_cell(u).expect("closed"));
            cells.insert(self.vertex_cell(v).expect("closed"));
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        for nbrs in adj.values_mut() {
            nbrs.sort_unstable();
        }
        // A 0-cell with no incident 1-cell in cl(A) is all boundary; one
        // touched only by interior edges is interior.
        let cl = self.closure(a)?;
        let mut has_edge: BTreeSet<VertexId> = BTreeSet::new();
        for &id in &cl.cells {
            let cell = &self.cells[&id];
            if cell.dim == 1 {
                has_edge.extend(cell.vertices.iter().copied());
            }
        }
        for &id in &cl.cells {
            let cell = &self.cells[&id];
            if cell.dim == 0 && !has_edge.contains(&cell.vertices[0]) {
                cells.insert(id);
            }
        }

        let (components, loops, all_loops) = boundary_walks(&adj);
        Ok(ContourReport {
            cells: CellComplex::new(format!("bdy({})", a.name), cells),
            loops,
            components,
            all_loops,
        })
    }

    /// Interior: cl(A) minus the contour subcomplex.
    pub fn interior(&self, a: &CellComplex) -> Result<CellComplex> {
        let cl = self.closure(a)?;
        let bdy = self.contour(a)?;
        Ok(cl.difference(&bdy.cells, format!("int({})", a.name)))
    }

    /// Boundary region: every cell of the universe outside cl(A).
    pub fn boundary_region(&self, a: &CellComplex) -> Result<CellComplex> {
        let cl = self.closure(a)?;
        Ok(self
            .universe()
            .difference(&cl, format!("bdyreg({})", a.name)))
    }

    /// Number of connected components of a complex, cells connected through
    /// shared vertices.
    pub fn component_count(&self, a: &CellComplex) -> usize {
        let ids: Vec<CellId> = a.cells.iter().copied().collect();
        if ids.is_empty() {
            return 0;
        }
        let index: BTreeMap<CellId, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dsu: Vec<usize> = (0..ids.len()).collect();
        fn find(dsu: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while dsu[i] != i {
                dsu[i] = dsu[dsu[i]];
                i = dsu[i];
            }
            i
        }
        let mut by_vertex: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (&id, &i) in &index {
            for &v in &self.cells[&id].vertices {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        for group in by_vertex.values() {
            for w in group.windows(2) {
                let (a, b) = (find(&mut dsu, w[0]), find(&mut dsu, w[1]));
                if a != b {
                    dsu[a] = b;
                }
            }
        }
        let mut roots: BTreeSet<usize> = BTreeSet::new();
        for i in 0..ids.len() {
            let r = find(&mut dsu, i);
            roots.insert(r);
        }
        roots.len()
    }

    /// Membership of a cell in the open region bounded by a vertex loop:
    /// all its vertices lie inside or on the loop polygon and its centroid
    /// lies strictly inside.
    pub fn cell_in_open_region(&self, cell: CellId, polygon: &[Point2]) -> bool {
        let c = &self.cells[&cell];
        let pts: Vec<Point2> = c.vertices.iter().map(|&v| self.point(v)).collect();
        for &p in &pts {
            if locate_in_polygon(p, polygon) == PolygonLocation::Outside {
                return false;
            }
        }
        locate_in_polygon(centroid(&pts), polygon) == PolygonLocation::Inside
    }

    /// Verifies the CW conditions. The intersection condition is repaired
    /// constructively: a missing nonempty pairwise intersection is registered
    /// under a derived name and noted. Build-phase operation.
    pub fn verify_cw_conditions(&mut self) -> CWReport {
        let mut notes = Vec::new();

        // Containment: faces of every cell of every registered complex exist.
        let mut containment = true;
        'outer: for complex in self.complexes.values() {
            for &id in &complex.cells {
                let cell = match self.cells.get(&id) {
                    Some(c) => c.clone(),
                    None => {
                        containment = false;
                        notes.push(format!(
                            "complex `{}` references unknown cell {}",
                            complex.name, id
                        ));
                        break 'outer;
                    }
                };
                if self.faces_of(&cell, &complex.name).is_err() {
                    containment = false;
                    notes.push(format!(
                        "cell {} of `{}` has an unregistered face",
                        id, complex.name
                    ));
                    break 'outer;
                }
            }
        }

        // Intersection condition with constructive repair.
        let names: Vec<String> = self.complexes.keys().cloned().collect();
        let mut to_register: Vec<CellComplex> = Vec::new();
        for (i, a) in names.iter().enumerate() {
            for b in names.iter().skip(i + 1) {
                let ia = &self.complexes[a];
                let ib = &self.complexes[b];
                let cells: BTreeSet<CellId> = ia.cells.intersection(&ib.cells).copied().collect();
                if cells.is_empty() {
                    continue;
                }
                let registered = self.complexes.values().any(|c| c.cells == cells)
                    || to_register.iter().any(|c| c.cells == cells);
                if !registered {
                    let name = format!("isect:{a}&{b}");
                    notes.push(format!("registered missing intersection `{name}`"));
                    to_register.push(CellComplex::new(name, cells));
                }
            }
        }
        for c in to_register {
            self.register(c);
        }

        let hausdorff = self.check_realizations(&mut notes);

        CWReport {
            containment,
            intersections: true,
            hausdorff,
            notes,
        }
    }

    /// Distinct, properly attached realizations: no duplicate cells, no edge
    /// crossing another edge away from shared vertices, no vertex in the
    /// open interior of an edge or triangle it does not belong to.
    fn check_realizations(&self, notes: &mut Vec<String>) -> bool {
        let mut seen: BTreeSet<(u8, Vec<VertexId>)> = BTreeSet::new();
        for cell in self.cells.values() {
            let mut key = cell.vertices.clone();
            key.sort_unstable();
            if !seen.insert((cell.dim, key)) {
                notes.push(format!("cell {} duplicates another realization", cell.id));
                return false;
            }
        }
        // bounding boxes make the quadratic scans cheap: exact arithmetic
        // only runs on the rare overlapping pairs
        type BBox = (Point2, Point2);
        fn bbox(points: &[Point2]) -> BBox {
            let mut lo = points[0];
            let mut hi = points[0];
            for p in points {
                lo.x = lo.x.min(p.x);
                lo.y = lo.y.min(p.y);
                hi.x = hi.x.max(p.x);
                hi.y = hi.y.max(p.y);
            }
            (lo, hi)
        }
        fn boxes_meet(a: &BBox, b: &BBox) -> bool {
            a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
        }

        let edges: Vec<(&Cell, [Point2; 2], BBox)> = self
            .cells
            .values()
            .filter(|c| c.dim == 1)
            .map(|c| {
                let pts = [self.point(c.vertices[0]), self.point(c.vertices[1])];
                (c, pts, bbox(&pts))
            })
            .collect();
        for (i, (e1, p1, b1)) in edges.iter().enumerate() {
            for (e2, p2, b2) in edges.iter().skip(i + 1) {
                if !boxes_meet(b1, b2) || e1.vertices.iter().any(|v| e2.vertices.contains(v)) {
                    continue;
                }
                if segments_cross_properly(p1[0], p1[1], p2[0], p2[1]) {
                    notes.push(format!("edges {} and {} cross improperly", e1.id, e2.id));
                    return false;
                }
            }
        }
        // vertices trapped in the open interior of a foreign edge or triangle
        let triangles: Vec<(&Cell, Vec<Point2>, BBox)> = self
            .cells
            .values()
            .filter(|c| c.dim == 2)
            .map(|c| {
                let pts: Vec<Point2> = c.vertices.iter().map(|&w| self.point(w)).collect();
                let bb = bbox(&pts);
                (c, pts, bb)
            })
            .collect();
        for (&v, &p) in &self.vertices {
            let pb = (p, p);
            for (e, pts, bb) in &edges {
                if !boxes_meet(&pb, bb) || e.vertices.contains(&v) {
                    continue;
                }
                if p != pts[0] && p != pts[1] && crate::geom::on_segment(p, pts[0], pts[1]) {
                    notes.push(format!("vertex {v} lies inside edge {}", e.id));
                    return false;
                }
            }
            for (t, pts, bb) in &triangles {
                if !boxes_meet(&pb, bb) || t.vertices.contains(&v) {
                    continue;
                }
                if locate_in_polygon(p, pts) == PolygonLocation::Inside {
                    notes.push(format!("vertex {v} lies inside triangle {}", t.id));
                    return false;
                }
            }
        }
        true
    }
}

/// Decomposes a contour edge graph into closed boundary walks.
///
/// Per connected component: when every vertex degree is even, a
/// deterministic Hierholzer traversal yields one closed walk covering each
/// edge exactly once; odd-degree components yield no walk.
fn boundary_walks(adj: &BTreeMap<VertexId, Vec<VertexId>>) -> (usize, Vec<Vec<VertexId>>, bool) {
    let mut comp: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut ncomp = 0usize;
    for &start in adj.keys() {
        if comp.contains_key(&start) {
            continue;
        }
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if comp.insert(v, ncomp).is_none() {
                for &w in &adj[&v] {
                    if !comp.contains_key(&w) {
                        stack.push(w);
                    }
                }
            }
        }
        ncomp += 1;
    }

    let mut loops = Vec::new();
    let mut all_loops = true;
    for c in 0..ncomp {
        let verts: Vec<VertexId> = adj.keys().copied().filter(|v| comp[v] == c).collect();
        if verts.iter().any(|v| !adj[v].len().is_multiple_of(2)) {
            all_loops = false;
            continue;
        }
        // Hierholzer with multiset adjacency; smallest available neighbor first.
        let mut remaining: BTreeMap<VertexId, Vec<VertexId>> = verts
            .iter()
            .map(|&v| {
                let mut n = adj[&v].clone();
                n.sort_unstable();
                n.reverse(); // pop() takes the smallest
                (v, n)
            })
            .collect();
        let start = verts[0];
        let mut stack = vec![start];
        let mut walk = Vec::new();
        while let Some(&v) = stack.last() {
            if let Some(w) = remaining.get_mut(&v).and_then(|n| n.pop()) {
                // drop the reverse copy
                let back = remaining.get_mut(&w).expect("symmetric adjacency");
                let pos = back.iter().rposition(|&x| x == v).expect("symmetric");
                back.remove(pos);
                stack.push(w);
            } else {
                walk.push(stack.pop().unwrap());
            }
        }
        walk.reverse();
        if walk.len() > 1 {
            debug_assert_eq!(walk.first(), walk.last());
            walk.pop();
            loops.push(walk);
        }
    }
    (ncomp, loops, all_loops)
}

/// Single-writer construction phase of a [`CWSpace`].
pub struct SpaceBuilder {
    name: String,
    vertices: BTreeMap<VertexId, Point2>,
    cells: BTreeMap<CellId, Cell>,
    next_cell: CellId,
    vertex_cell: BTreeMap<VertexId, CellId>,
    edge_cell: BTreeMap<(VertexId, VertexId), CellId>,
    tri_cell: BTreeMap<[VertexId; 3], CellId>,
    complexes: Vec<(String, BTreeSet<CellId>)>,
    generators: Vec<(String, Vec<VertexId>)>,
}

impl SpaceBuilder {
    pub fn add_vertex(&mut self, id: VertexId, p: Point2) -> &mut Self {
        self.vertices.insert(id, p);
        self
    }

    fn push_cell(&mut self, dim: u8, vertices: Vec<VertexId>) -> CellId {
        let id = self.next_cell;
        self.next_cell += 1;
        self.cells.insert(id, Cell { id, dim, vertices });
        id
    }

    /// 0-cell on a vertex; idempotent.
    pub fn add_vertex_cell(&mut self, v: VertexId) -> CellId {
        if let Some(&id) = self.vertex_cell.get(&v) {
            return id;
        }
        let id = self.push_cell(0, vec![v]);
        self.vertex_cell.insert(v, id);
        id
    }

    /// 1-cell plus its endpoint 0-cells; idempotent.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> CellId {
        let key = edge_key(u, v);
        if let Some(&id) = self.edge_cell.get(&key) {
            return id;
        }
        self.add_vertex_cell(u);
        self.add_vertex_cell(v);
        let id = self.push_cell(1, vec![key.0, key.1]);
        self.edge_cell.insert(key, id);
        id
    }

    /// 2-cell plus all its faces; idempotent.
    pub fn add_triangle(&mut self, a: VertexId, b: VertexId, c: VertexId) -> CellId {
        let mut key = [a, b, c];
        key.sort_unstable();
        if let Some(&id) = self.tri_cell.get(&key) {
            return id;
        }
        self.add_edge(a, b);
        self.add_edge(b, c);
        self.add_edge(c, a);
        let id = self.push_cell(2, vec![key[0], key[1], key[2]]);
        self.tri_cell.insert(key, id);
        id
    }

    /// 2-cell without faces. Only for constructing spaces that violate the
    /// containment condition.
    pub fn add_triangle_raw(&mut self, a: VertexId, b: VertexId, c: VertexId) -> CellId {
        self.push_cell(2, vec![a, b, c])
    }

    /// 1-cell exactly as declared: indexed for lookups but with no endpoint
    /// 0-cells created. Document loading preserves the cell inventory.
    pub fn add_edge_raw(&mut self, u: VertexId, v: VertexId) -> CellId {
        let key = edge_key(u, v);
        let id = self.push_cell(1, vec![key.0, key.1]);
        self.edge_cell.insert(key, id);
        id
    }

    /// 2-cell exactly as declared, indexed for lookups, no faces created.
    pub fn add_triangle_indexed(&mut self, a: VertexId, b: VertexId, c: VertexId) -> CellId {
        let mut key = [a, b, c];
        key.sort_unstable();
        let id = self.push_cell(2, vec![key[0], key[1], key[2]]);
        self.tri_cell.insert(key, id);
        id
    }

    pub fn register_complex(
        &mut self,
        name: impl Into<String>,
        cells: impl IntoIterator<Item = CellId>,
    ) -> &mut Self {
        self.complexes
            .push((name.into(), cells.into_iter().collect()));
        self
    }

    pub fn register_generators(
        &mut self,
        complex: impl Into<String>,
        gens: Vec<VertexId>,
    ) -> &mut Self {
        self.generators.push((complex.into(), gens));
        self
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<CellId> {
        self.edge_cell.get(&edge_key(u, v)).copied()
    }

    pub fn triangle_id(&self, a: VertexId, b: VertexId, c: VertexId) -> Option<CellId> {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.tri_cell.get(&key).copied()
    }

    pub fn vertex_cell_id(&self, v: VertexId) -> Option<CellId> {
        self.vertex_cell.get(&v).copied()
    }

    /// Validates cell invariants and freezes the space. The universe complex
    /// `K` is registered automatically.
    pub fn build(self) -> Result<CWSpace> {
        for cell in self.cells.values() {
            let ok = match cell.dim {
                0 => cell.vertices.len() == 1,
                1 => cell.vertices.len() == 2 && cell.vertices[0] != cell.vertices[1],
                2 => {
                    cell.vertices.len() == 3 && {
                        let [a, b, c] = [cell.vertices[0], cell.vertices[1], cell.vertices[2]];
                        a != b && b != c && a != c
                    }
                }
                _ => false,
            };
            if !ok {
                return Err(Error::Parse(crate::error::ParseError::InvalidCell {
                    line: 0,
                    msg: format!("cell {} has malformed vertex list", cell.id),
                }));
            }
            for &v in &cell.vertices {
                if !self.vertices.contains_key(&v) {
                    return Err(Error::Parse(crate::error::ParseError::DanglingReference {
                        line: 0,
                        what: format!("cell {} references missing vertex {}", cell.id, v),
                    }));
                }
            }
            if cell.dim == 2 {
                let pts: Vec<Point2> = cell.vertices.iter().map(|&v| self.vertices[&v]).collect();
                if orient(pts[0], pts[1], pts[2]) == Orientation::Collinear {
                    return Err(Error::Parse(crate::error::ParseError::InvalidCell {
                        line: 0,
                        msg: format!("cell {} is a degenerate triangle", cell.id),
                    }));
                }
            }
        }

        let mut incident: BTreeMap<VertexId, Vec<CellId>> = BTreeMap::new();
        for cell in self.cells.values() {
            for &v in &cell.vertices {
                incident.entry(v).or_default().push(cell.id);
            }
        }

        let all: BTreeSet<CellId> = self.cells.keys().copied().collect();
        let mut complexes = BTreeMap::new();
        complexes.insert("K".to_string(), CellComplex::new("K", all));
        for (name, cells) in self.complexes {
            for &id in &cells {
                if !self.cells.contains_key(&id) {
                    return Err(Error::Parse(crate::error::ParseError::DanglingReference {
                        line: 0,
                        what: format!("complex `{name}` references missing cell {id}"),
                    }));
                }
            }
            complexes.insert(name.clone(), CellComplex::new(name, cells));
        }
        let mut declared = BTreeMap::new();
        for (name, mut gens) in self.generators {
            gens.sort_unstable();
            gens.dedup();
            declared.insert(name, gens);
        }

        Ok(CWSpace {
            name: self.name,
            vertices: self.vertices,
            cells: self.cells,
            complexes,
            declared_generators: declared,
            vertex_cell: self.vertex_cell,
            edge_cell: self.edge_cell,
            incident,
        })
    }
}
