//! The `.space` text format.
//!
//! Line-oriented, one statement per line, canonical form fully sorted:
//!
//! ```text
//! proxima-space v1
//! name fig1a
//! vertex <id> <p/q> <p/q>
//! cell <id> <dim> <vertex ids...>
//! complex <name> cells=<id,id,...> [generators=<vid,vid,...>]
//! probe <name> extractor=<beta0|beta_alpha|cell_count|vertex_count|contour_length>
//! map <name> kind=<identity|boundary_complement|table> [entries=<from:to,...>]
//! ```
//!
//! Rationals are always written `p/q` reduced with positive denominator, so
//! parse followed by serialize is byte-identical on canonical documents.
//! The universe complex `K` is implicit and never written.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::complex::{CWSpace, CellId, VertexId};
use crate::error::{ParseError, Result};
use crate::fixed::DpcMap;
use crate::geom::{format_rational, parse_rational, Rational};
use crate::proximity::Extractor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub cells: Vec<CellId>,
    pub generators: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeDecl {
    pub name: String,
    pub extractor: Extractor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub map: DpcMap,
}

/// Parsed form of a `.space` document.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceDocument {
    pub version: String,
    pub name: String,
    pub vertices: Vec<(VertexId, Rational, Rational)>,
    pub cells: Vec<(CellId, u8, Vec<VertexId>)>,
    pub complexes: Vec<ComplexDecl>,
    pub probes: Vec<ProbeDecl>,
    pub maps: Vec<MapDecl>,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> std::result::Result<SpaceDocument, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty document"))?;
    if header.trim() != "proxima-space v1" {
        return Err(syntax(1, "expected header `proxima-space v1`"));
    }

    let mut doc = SpaceDocument {
        version: "v1".to_string(),
        name: String::new(),
        vertices: Vec::new(),
        cells: Vec::new(),
        complexes: Vec::new(),
        probes: Vec::new(),
        maps: Vec::new(),
    };
    let mut vertex_lines: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut cell_lines: BTreeMap<CellId, usize> = BTreeMap::new();
    let mut complex_lines: BTreeMap<String, usize> = BTreeMap::new();

    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next().unwrap() {
            "name" => {
                doc.name = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "name requires a value"))?
                    .to_string();
                if words.next().is_some() {
                    return Err(syntax(line_no, "trailing tokens after name"));
                }
            }
            "vertex" => {
                let id: VertexId = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(line_no, "vertex requires a numeric id"))?;
                let x = words
                    .next()
                    .and_then(parse_rational)
                    .ok_or_else(|| syntax(line_no, "vertex x must be p/q"))?;
                let y = words
                    .next()
                    .and_then(parse_rational)
                    .ok_or_else(|| syntax(line_no, "vertex y must be p/q"))?;
                if vertex_lines.insert(id, line_no).is_some() {
                    return Err(ParseError::DuplicateId {
                        line: line_no,
                        what: format!("vertex {id}"),
                    });
                }
                doc.vertices.push((id, x, y));
            }
            "cell" => {
                let id: CellId = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(line_no, "cell requires a numeric id"))?;
                let dim: u8 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| syntax(line_no, "cell requires a dimension"))?;
                let vs: Vec<VertexId> = words
                    .map(|w| w.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| syntax(line_no, "cell vertex ids must be numeric"))?;
                let expected = match dim {
                    0 => 1,
                    1 => 2,
                    2 => 3,
                    _ => return Err(syntax(line_no, "cell dimension must be 0, 1, or 2")),
                };
                if vs.len() != expected {
                    return Err(ParseError::InvalidCell {
                        line: line_no,
                        msg: format!("dim {dim} cell needs {expected} vertices"),
                    });
                }
                if cell_lines.insert(id, line_no).is_some() {
                    return Err(ParseError::DuplicateId {
                        line: line_no,
                        what: format!("cell {id}"),
                    });
                }
                doc.cells.push((id, dim, vs));
            }
            "complex" => {
                let name = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "complex requires a name"))?
                    .to_string();
                if name == "K" {
                    return Err(syntax(line_no, "the universe K is implicit"));
                }
                let mut cells = Vec::new();
                let mut generators = Vec::new();
                for field in words {
                    if let Some(v) = field.strip_prefix("cells=") {
                        cells = parse_id_list(v, line_no, "cell")?;
                    } else if let Some(v) = field.strip_prefix("generators=") {
                        generators = parse_id_list(v, line_no, "generator")?;
                    } else {
                        return Err(syntax(line_no, format!("unknown field `{field}`")));
                    }
                }
                if complex_lines.insert(name.clone(), line_no).is_some() {
                    return Err(ParseError::DuplicateId {
                        line: line_no,
                        what: format!("complex {name}"),
                    });
                }
                doc.complexes.push(ComplexDecl {
                    name,
                    cells,
                    generators,
                });
            }
            "probe" => {
                let name = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "probe requires a name"))?
                    .to_string();
                let field = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "probe requires extractor=<id>"))?;
                let ex = field
                    .strip_prefix("extractor=")
                    .and_then(Extractor::parse)
                    .ok_or_else(|| syntax(line_no, "unknown extractor"))?;
                doc.probes.push(ProbeDecl {
                    name,
                    extractor: ex,
                });
            }
            "map" => {
                let name = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "map requires a name"))?
                    .to_string();
                let field = words
                    .next()
                    .ok_or_else(|| syntax(line_no, "map requires kind=<id>"))?;
                let kind = field
                    .strip_prefix("kind=")
                    .ok_or_else(|| syntax(line_no, "map requires kind=<id>"))?;
                let map = match kind {
                    "identity" => DpcMap::Identity,
                    "boundary_complement" => DpcMap::BoundaryComplement,
                    "table" => {
                        let entries = words
                            .next()
                            .and_then(|w| w.strip_prefix("entries="))
                            .ok_or_else(|| {
                                syntax(line_no, "table map requires entries=<from:to,...>")
                            })?;
                        let mut table = BTreeMap::new();
                        for pair in entries.split(',').filter(|p| !p.is_empty()) {
                            let (from, to) = pair
                                .split_once(':')
                                .ok_or_else(|| syntax(line_no, "entries are from:to"))?;
                            table.insert(from.to_string(), to.to_string());
                        }
                        DpcMap::Table(table)
                    }
                    other => return Err(syntax(line_no, format!("unknown map kind `{other}`"))),
                };
                doc.maps.push(MapDecl { name, map });
            }
            other => return Err(syntax(line_no, format!("unknown statement `{other}`"))),
        }
    }

    if doc.name.is_empty() {
        return Err(syntax(1, "document has no `name` line"));
    }

    // reference checks
    let vertex_ids: BTreeSet<VertexId> = doc.vertices.iter().map(|v| v.0).collect();
    for (id, _, vs) in &doc.cells {
        for v in vs {
            if !vertex_ids.contains(v) {
                return Err(ParseError::DanglingReference {
                    line: cell_lines[id],
                    what: format!("cell {id} references missing vertex {v}"),
                });
            }
        }
    }
    let cell_ids: BTreeSet<CellId> = doc.cells.iter().map(|c| c.0).collect();
    for decl in &doc.complexes {
        for c in &decl.cells {
            if !cell_ids.contains(c) {
                return Err(ParseError::DanglingReference {
                    line: complex_lines[&decl.name],
                    what: format!("complex {} references missing cell {c}", decl.name),
                });
            }
        }
        for g in &decl.generators {
            if !vertex_ids.contains(g) {
                return Err(ParseError::DanglingReference {
                    line: complex_lines[&decl.name],
                    what: format!("complex {} references missing vertex {g}", decl.name),
                });
            }
        }
    }
    let complex_names: BTreeSet<&String> = doc.complexes.iter().map(|c| &c.name).collect();
    for m in &doc.maps {
        if let DpcMap::Table(entries) = &m.map {
            for (from, to) in entries {
                if (!complex_names.contains(from) && from != "K")
                    || (!complex_names.contains(to) && to != "K")
                {
                    return Err(ParseError::DanglingReference {
                        line: 0,
                        what: format!("map {} references unknown complex {from}:{to}", m.name),
                    });
                }
            }
        }
    }

    doc.normalize();
    Ok(doc)
}

impl SpaceDocument {
    fn normalize(&mut self) {
        self.vertices.sort_by_key(|v| v.0);
        self.cells.sort_by_key(|c| c.0);
        self.complexes.sort_by(|a, b| a.name.cmp(&b.name));
        for c in &mut self.complexes {
            c.cells.sort_unstable();
            c.cells.dedup();
            c.generators.sort_unstable();
            c.generators.dedup();
        }
        self.probes.sort_by(|a, b| a.name.cmp(&b.name));
        self.maps.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// Instantiates the space. Document cell ids are renumbered into the
    /// space's dense id range in ascending document order.
    pub fn to_space(&self) -> Result<CWSpace> {
        let mut b = CWSpace::builder(&self.name);
        for &(id, x, y) in &self.vertices {
            b.add_vertex(id, crate::geom::Point2::new(x, y));
        }
        let mut remap: BTreeMap<CellId, CellId> = BTreeMap::new();
        for (doc_id, dim, vs) in &self.cells {
            let new_id = match dim {
                0 => {
                    if b.vertex_cell_id(vs[0]).is_some() {
                        return Err(dup_realization(*doc_id));
                    }
                    b.add_vertex_cell(vs[0])
                }
                1 => {
                    if b.edge_id(vs[0], vs[1]).is_some() {
                        return Err(dup_realization(*doc_id));
                    }
                    b.add_edge_raw(vs[0], vs[1])
                }
                _ => {
                    if b.triangle_id(vs[0], vs[1], vs[2]).is_some() {
                        return Err(dup_realization(*doc_id));
                    }
                    b.add_triangle_indexed(vs[0], vs[1], vs[2])
                }
            };
            remap.insert(*doc_id, new_id);
        }
        for decl in &self.complexes {
            let cells: Vec<CellId> = decl.cells.iter().map(|c| remap[c]).collect();
            b.register_complex(&decl.name, cells);
            if !decl.generators.is_empty() {
                b.register_generators(&decl.name, decl.generators.clone());
            }
        }
        b.build()
    }

    /// Canonical text form.
    pub fn serialize(&self) -> String {
        let mut out = String::from("proxima-space v1\n");
        out.push_str(&format!("name {}\n", self.name));
        for &(id, x, y) in &self.vertices {
            out.push_str(&format!(
                "vertex {id} {} {}\n",
                format_rational(x),
                format_rational(y)
            ));
        }
        for (id, dim, vs) in &self.cells {
            let vs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("cell {id} {dim} {}\n", vs.join(" ")));
        }
        for c in &self.complexes {
            let cells: Vec<String> = c.cells.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("complex {} cells={}", c.name, cells.join(",")));
            if !c.generators.is_empty() {
                let gens: Vec<String> = c.generators.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(" generators={}", gens.join(",")));
            }
            out.push('\n');
        }
        for p in &self.probes {
            out.push_str(&format!(
                "probe {} extractor={}\n",
                p.name,
                p.extractor.as_str()
            ));
        }
        for m in &self.maps {
            match &m.map {
                DpcMap::Identity => out.push_str(&format!("map {} kind=identity\n", m.name)),
                DpcMap::BoundaryComplement => {
                    out.push_str(&format!("map {} kind=boundary_complement\n", m.name))
                }
                DpcMap::Table(entries) => {
                    let pairs: Vec<String> =
                        entries.iter().map(|(f, t)| format!("{f}:{t}")).collect();
                    out.push_str(&format!(
                        "map {} kind=table entries={}\n",
                        m.name,
                        pairs.join(",")
                    ));
                }
            }
        }
        out
    }

    /// Snapshot of a built space (the implicit universe is skipped).
    pub fn from_space(space: &CWSpace) -> SpaceDocument {
        let mut doc = SpaceDocument {
            version: "v1".to_string(),
            name: space.name.clone(),
            vertices: space
                .vertices
                .iter()
                .map(|(&id, p)| (id, p.x, p.y))
                .collect(),
            cells: space
                .cells
                .values()
                .map(|c| (c.id, c.dim, c.vertices.clone()))
                .collect(),
            complexes: space
                .complexes
                .values()
                .filter(|c| c.name != "K")
                .map(|c| ComplexDecl {
                    name: c.name.clone(),
                    cells: c.cells.iter().copied().collect(),
                    generators: space
                        .generators_of(&c.name)
                        .map(|g| g.to_vec())
                        .unwrap_or_default(),
                })
                .collect(),
            probes: Vec::new(),
            maps: Vec::new(),
        };
        doc.normalize();
        doc
    }
}

fn dup_realization(id: CellId) -> crate::error::Error {
    crate::error::Error::Parse(ParseError::DuplicateId {
        line: 0,
        what: format!("cell {id} duplicates an earlier realization"),
    })
}

fn parse_id_list(v: &str, line: usize, what: &str) -> std::result::Result<Vec<u32>, ParseError> {
    v.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse()
                .map_err(|_| syntax(line, format!("{what} ids must be numeric")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build_fixture, FixtureName};

    const SMALL: &str = "proxima-space v1\n\
name demo\n\
vertex 0 0/1 0/1\n\
vertex 1 2/1 0/1\n\
vertex 2 0/1 2/1\n\
cell 0 0 0\n\
cell 1 0 1\n\
cell 2 0 2\n\
cell 3 1 0 1\n\
cell 4 1 1 2\n\
cell 5 1 0 2\n\
cell 6 2 0 1 2\n\
complex T cells=0,1,2,3,4,5,6 generators=0\n\
probe b extractor=beta0\n\
map f kind=boundary_complement\n";

    #[test]
    fn parse_serialize_is_identity_on_canonical_docs() {
        let doc = parse(SMALL).unwrap();
        assert_eq!(doc.serialize(), SMALL);
        let again = parse(&doc.serialize()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn parsed_space_works() {
        let doc = parse(SMALL).unwrap();
        let space = doc.to_space().unwrap();
        assert_eq!(space.complex("T").unwrap().len(), 7);
        assert_eq!(space.generators_of("T"), Some(&[0u32][..]));
    }

    #[test]
    fn dangling_vertex_reference() {
        let text = "proxima-space v1\nname d\nvertex 0 0/1 0/1\ncell 0 1 0 9\n";
        match parse(text).unwrap_err() {
            ParseError::DanglingReference { line, .. } => assert_eq!(line, 4),
            other => panic!("expected dangling reference, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = "proxima-space v1\nname d\nvertex 0 0/1 0/1\nvertex 0 1/1 0/1\n";
        assert!(matches!(
            parse(text).unwrap_err(),
            ParseError::DuplicateId { line: 4, .. }
        ));
    }

    #[test]
    fn syntax_error_carries_line() {
        let text = "proxima-space v1\nname d\nwhatever 1 2\n";
        match parse(text).unwrap_err() {
            ParseError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn fixture_space_round_trips() {
        let f = build_fixture(FixtureName::IntersectingCycles3b);
        let doc = SpaceDocument::from_space(&f.space);
        let text = doc.serialize();
        let reparsed = parse(&text).unwrap();
        assert_eq!(reparsed, doc);
        assert_eq!(reparsed.serialize(), text);
        let space = reparsed.to_space().unwrap();
        assert_eq!(space.cells.len(), f.space.cells.len());
        assert_eq!(space.complex("shE").unwrap().len(), f.shape_complex().len());
        assert_eq!(space.generators_of("shE"), f.space.generators_of("shE"));
    }
}
