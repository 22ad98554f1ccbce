//! Group representations of cycle boundaries.
//!
//! A loop vertex is certified as `k` edge moves from a generator vertex; a
//! representation is free when every certified vertex carries exactly one
//! minimal certificate. The Betti pair counts 2-cells (beta0) and
//! generators (beta_alpha).

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::VecDeque;

use crate::complex::{CWSpace, CellComplex, VertexId};
use crate::cycles::{extract_cycles, Cycle};
use crate::error::{Error, Result};

/// `vertex = k * generator`: the vertex is reached from the generator by a
/// minimal sequence of k edge moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveCertificate {
    pub vertex: VertexId,
    pub generator: VertexId,
    pub k: usize,
}

/// Free finitely-generated Abelian group representation of the boundary
/// vertices of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAbelianRep {
    pub generators: Vec<VertexId>,
    /// One certificate per certified vertex, ascending by vertex id.
    pub certificates: Vec<MoveCertificate>,
    pub group_name: String,
    /// Name of the complex the representation was built over.
    pub complex_name: String,
    /// Loop edges the traversal distances were measured along.
    pub edges: Vec<(VertexId, VertexId)>,
}

impl FreeAbelianRep {
    pub fn certificate(&self, v: VertexId) -> Option<&MoveCertificate> {
        self.certificates.iter().find(|c| c.vertex == v)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiNumbers {
    pub beta0: usize,
    pub beta_alpha: usize,
}

/// Single-generator representation of one cycle: every loop vertex gets the
/// minimal clockwise/counter-clockwise distance from the generator.
pub fn cyclic_rep(space: &CWSpace, cycle: &Cycle, generator: VertexId) -> Result<FreeAbelianRep> {
    let _ = space;
    let n = cycle.len();
    let pos = cycle
        .loop_vertices
        .iter()
        .position(|&v| v == generator)
        .ok_or(Error::NotOnCycle(generator))?;
    let mut certificates = Vec::with_capacity(n);
    for (i, &v) in cycle.loop_vertices.iter().enumerate() {
        let fwd = (i + n - pos) % n;
        let k = fwd.min(n - fwd);
        certificates.push(MoveCertificate {
            vertex: v,
            generator,
            k,
        });
    }
    certificates.sort_by_key(|c| c.vertex);
    Ok(FreeAbelianRep {
        generators: vec![generator],
        certificates,
        group_name: format!("G(<{generator}>,+)"),
        complex_name: "cycle".into(),
        edges: loop_edge_pairs(cycle),
    })
}

/// Multi-generator representation over all extracted cycles of a complex.
/// Every boundary vertex is certified against its nearest declared
/// generator, distances measured along loop edges; distance ties go to the
/// lower generator id.
pub fn free_fg_rep(
    space: &CWSpace,
    a: &CellComplex,
    declared_generators: &[VertexId],
) -> Result<FreeAbelianRep> {
    let cycles = extract_cycles(space, a)?;
    let mut generators: Vec<VertexId> = declared_generators.to_vec();
    generators.sort_unstable();
    generators.dedup();

    for &g in &generators {
        if !cycles.iter().any(|c| c.contains_vertex(g)) {
            return Err(Error::NotOnCycle(g));
        }
    }
    for c in &cycles {
        if !generators.iter().any(|&g| c.contains_vertex(g)) {
            return Err(Error::UncoveredCycle(c.loop_vertices[0]));
        }
    }

    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for c in &cycles {
        edges.extend(loop_edge_pairs(c));
    }
    let edges: Vec<(VertexId, VertexId)> = edges.into_iter().collect();
    let certificates = nearest_generator_certificates(&edges, &generators);

    Ok(FreeAbelianRep {
        group_name: format!(
            "G(<{}>,+)",
            generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        generators,
        certificates,
        complex_name: a.name.clone(),
        edges,
    })
}

/// beta0 = number of 2-cells; beta_alpha = representation rank.
pub fn betti(space: &CWSpace, a: &CellComplex, rep: &FreeAbelianRep) -> Result<BettiNumbers> {
    if rep.complex_name != a.name {
        return Err(Error::Mismatch {
            rep: rep.complex_name.clone(),
            complex: a.name.clone(),
        });
    }
    Ok(BettiNumbers {
        beta0: a.cells.iter().filter(|&&c| space.cell(c).dim == 2).count(),
        beta_alpha: rep.rank(),
    })
}

/// A representation is free when every certified vertex has exactly one
/// certificate and each k equals the recomputed minimal distance to the
/// certificate's nearest generator.
pub fn verify_free(rep: &FreeAbelianRep) -> bool {
    let mut seen = BTreeSet::new();
    for c in &rep.certificates {
        if !seen.insert(c.vertex) {
            return false;
        }
    }
    let expected = nearest_generator_certificates(&rep.edges, &rep.generators);
    if rep.certificates.len() != expected.len() {
        return false;
    }
    let by_vertex: BTreeMap<VertexId, MoveCertificate> =
        expected.into_iter().map(|c| (c.vertex, c)).collect();
    rep.certificates.iter().all(|c| {
        by_vertex
            .get(&c.vertex)
            .is_some_and(|e| e.k == c.k && e.generator == c.generator)
    })
}

fn loop_edge_pairs(c: &Cycle) -> Vec<(VertexId, VertexId)> {
    let n = c.len();
    (0..n)
        .map(|i| {
            let (u, v) = (c.loop_vertices[i], c.loop_vertices[(i + 1) % n]);
            if u <= v {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect()
}

/// Breadth-first distances from every generator over the loop-edge graph;
/// per vertex the certificate keeps (min distance, then min generator id).
fn nearest_generator_certificates(
    edges: &[(VertexId, VertexId)],
    generators: &[VertexId],
) -> Vec<MoveCertificate> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut best: BTreeMap<VertexId, (usize, VertexId)> = BTreeMap::new();
    for &g in generators {
        if !adj.contains_key(&g) {
            continue;
        }
        let mut dist: BTreeMap<VertexId, usize> = BTreeMap::new();
        dist.insert(g, 0);
        let mut queue = VecDeque::from([g]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &w in &adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(w) {
                    slot.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        for (v, d) in dist {
            match best.get(&v) {
                Some(&(bd, bg)) if (bd, bg) <= (d, g) => {}
                _ => {
                    best.insert(v, (d, g));
                }
            }
        }
    }
    best.into_iter()
        .map(|(vertex, (k, generator))| MoveCertificate {
            vertex,
            generator,
            k,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build_fixture, FixtureName};
    use crate::geom::Point2;

    #[test]
    fn triangle_loop_distances() {
        let mut b = CWSpace::builder("tri");
        b.add_vertex(0, Point2::int(0, 0));
        b.add_vertex(1, Point2::int(2, 0));
        b.add_vertex(2, Point2::int(0, 2));
        let t = b.add_triangle(0, 1, 2);
        b.register_complex("T", [t]);
        let space = b.build().unwrap();
        let a = space.closure_named("T").unwrap();
        let cycles = extract_cycles(&space, &a).unwrap();
        let rep = cyclic_rep(&space, &cycles[0], 1).unwrap();
        assert_eq!(rep.certificate(1).unwrap().k, 0);
        assert_eq!(rep.certificate(0).unwrap().k, 1);
        assert_eq!(rep.certificate(2).unwrap().k, 1);
        assert!(verify_free(&rep));
        assert_eq!(
            cyclic_rep(&space, &cycles[0], 99).unwrap_err(),
            Error::NotOnCycle(99)
        );
    }

    #[test]
    fn ten_loop_distances_reach_five() {
        let f = build_fixture(FixtureName::CycleFigure3a);
        let cycles = extract_cycles(&f.space, f.shape_complex()).unwrap();
        let v0 = f.declared_generators[0];
        let rep = cyclic_rep(&f.space, &cycles[0], v0).unwrap();
        let max = rep.certificates.iter().map(|c| c.k).max().unwrap();
        assert_eq!(max, 5);
        assert!(rep.certificates.iter().all(|c| c.k <= 5));
        assert!(verify_free(&rep));
    }

    #[test]
    fn intersecting_cycles_rep_has_rank_two() {
        let f = build_fixture(FixtureName::IntersectingCycles3b);
        let rep = free_fg_rep(&f.space, f.shape_complex(), &f.declared_generators).unwrap();
        assert_eq!(rep.rank(), 2);
        assert!(verify_free(&rep));
        let b = betti(&f.space, f.shape_complex(), &rep).unwrap();
        assert_eq!(b.beta_alpha, 2);
    }

    #[test]
    fn necklace_rep_certifies_every_boundary_vertex() {
        let f = build_fixture(FixtureName::HawaiianNecklace);
        let rep = free_fg_rep(&f.space, f.shape_complex(), &f.declared_generators).unwrap();
        assert_eq!(rep.rank(), 3);
        assert!(verify_free(&rep));
        let cycles = extract_cycles(&f.space, f.shape_complex()).unwrap();
        for c in &cycles {
            for &v in &c.loop_vertices {
                let cert = rep.certificate(v).expect("boundary vertex certified");
                assert!(rep.generators.contains(&cert.generator));
                assert_eq!(cert.k == 0, rep.generators.contains(&v));
            }
        }
    }

    #[test]
    fn uncovered_cycle_is_rejected() {
        let f = build_fixture(FixtureName::IntersectingCycles3b);
        // only the outer generator: the inner loop has no generator
        let err =
            free_fg_rep(&f.space, f.shape_complex(), &f.declared_generators[..1]).unwrap_err();
        assert!(matches!(err, Error::UncoveredCycle(_)));
    }

    #[test]
    fn betti_mismatch_detected() {
        let f = build_fixture(FixtureName::CycleFigure3a);
        let rep = free_fg_rep(&f.space, f.shape_complex(), &f.declared_generators).unwrap();
        let other = f.space.universe();
        assert!(matches!(
            betti(&f.space, other, &rep),
            Err(Error::Mismatch { .. })
        ));
    }

    #[test]
    fn empty_complex_empty_rep() {
        let mut f = build_fixture(FixtureName::CycleFigure3a);
        f.space.register(CellComplex::empty("void"));
        let void = f.space.complex("void").unwrap().clone();
        let rep = free_fg_rep(&f.space, &void, &[]).unwrap();
        assert_eq!(rep.rank(), 0);
        let b = betti(&f.space, &void, &rep).unwrap();
        assert_eq!((b.beta0, b.beta_alpha), (0, 0));
        assert!(verify_free(&rep));
    }

    #[test]
    fn duplicated_certificate_fails_verify() {
        let f = build_fixture(FixtureName::CycleFigure3a);
        let mut rep = free_fg_rep(&f.space, f.shape_complex(), &f.declared_generators).unwrap();
        let dup = rep.certificates[0];
        rep.certificates.push(dup);
        assert!(!verify_free(&rep));
    }

    #[test]
    fn wrong_distance_fails_verify() {
        let f = build_fixture(FixtureName::CycleFigure3a);
        let mut rep = free_fg_rep(&f.space, f.shape_complex(), &f.declared_generators).unwrap();
        let idx = rep
            .certificates
            .iter()
            .position(|c| c.k > 0)
            .expect("non-generator vertex");
        rep.certificates[idx].k += 1;
        assert!(!verify_free(&rep));
    }

    #[test]
    fn move_addition_is_commutative_with_inverse() {
        let f = build_fixture(FixtureName::CycleFigure3a);
        let cycles = extract_cycles(&f.space, f.shape_complex()).unwrap();
        let n = cycles[0].len();
        let rep = cyclic_rep(&f.space, &cycles[0], f.declared_generators[0]).unwrap();
        for a in &rep.certificates {
            for b in &rep.certificates {
                assert_eq!(a.k + b.k, b.k + a.k);
            }
            // k forward then k backward returns to the generator
            assert_eq!((a.k + n - a.k) % n, 0);
        }
    }
}
