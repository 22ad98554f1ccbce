//! Property suites for the region operators, cycle extraction, group
//! representations, and proximity relations.

use std::collections::BTreeSet;

use proptest::prelude::*;

use proxima::algebra::{cyclic_rep, free_fg_rep, verify_free};
use proxima::complex::{CWSpace, CellComplex, CellId, VertexId};
use proxima::cycles::extract_cycles;
use proxima::fixtures::{FixtureName, ShapeFixture};
use proxima::geom::Point2;
use proxima::proximity::{describe, dnear_in, near, Extractor, ProbeFunction};

/// Fixtures are immutable; build each once for the whole suite.
fn cached(name: FixtureName) -> &'static ShapeFixture {
    static CACHE: std::sync::OnceLock<Vec<ShapeFixture>> = std::sync::OnceLock::new();
    let all = CACHE.get_or_init(proxima::fixtures::build_all);
    &all[FixtureName::ALL.iter().position(|&n| n == name).unwrap()]
}

fn subset_from_indexes(space: &CWSpace, picks: &[prop::sample::Index]) -> CellComplex {
    let all: Vec<CellId> = space.cells.keys().copied().collect();
    let cells: BTreeSet<CellId> = picks.iter().map(|i| all[i.index(all.len())]).collect();
    CellComplex::new("sample", cells)
}

/// Bare polygon loop on a parabola, vertex ids offset to exercise sparse
/// numbering.
fn polygon_loop_space(n: usize, id_offset: u32) -> CWSpace {
    let mut b = CWSpace::builder("poly");
    let ids: Vec<VertexId> = (0..n).map(|i| id_offset + 3 * i as u32).collect();
    for (i, &id) in ids.iter().enumerate() {
        let x = i as i64;
        b.add_vertex(id, Point2::int(x, x * x));
    }
    let cells: Vec<CellId> = (0..n)
        .map(|i| b.add_edge(ids[i], ids[(i + 1) % n]))
        .collect();
    b.register_complex("L", cells);
    b.build().expect("polygon loop builds")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_is_idempotent_and_monotone(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
        extra in prop::collection::vec(any::<prop::sample::Index>(), 0..6),
    ) {
        let f = cached(FixtureName::IntersectingCycles3b);
        let a = subset_from_indexes(&f.space, &picks);
        let cl = f.space.closure(&a).unwrap();
        let cl2 = f.space.closure(&cl).unwrap();
        prop_assert_eq!(&cl.cells, &cl2.cells);

        let mut bigger = picks.clone();
        bigger.extend(extra);
        let b = subset_from_indexes(&f.space, &bigger);
        let clb = f.space.closure(&b).unwrap();
        prop_assert!(cl.cells.is_subset(&clb.cells));
    }

    #[test]
    fn closure_and_boundary_region_partition_the_space(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
    ) {
        let f = cached(FixtureName::TriangleFan3);
        let a = subset_from_indexes(&f.space, &picks);
        let cl = f.space.closure(&a).unwrap();
        let bd = f.space.boundary_region(&a).unwrap();
        prop_assert!(cl.cells.intersection(&bd.cells).next().is_none());
        let union: BTreeSet<CellId> = cl.cells.union(&bd.cells).copied().collect();
        prop_assert_eq!(&union, &f.space.universe().cells);
    }

    #[test]
    fn contour_interior_boundary_partition(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
    ) {
        let f = cached(FixtureName::HawaiianEarrings);
        let a = subset_from_indexes(&f.space, &picks);
        let cl = f.space.closure(&a).unwrap();
        let bdy = f.space.contour(&a).unwrap().cells;
        let int = f.space.interior(&a).unwrap();
        let bd = f.space.boundary_region(&a).unwrap();
        // bdy and int partition the closure
        prop_assert!(bdy.cells.intersection(&int.cells).next().is_none());
        let cl_again: BTreeSet<CellId> = bdy.cells.union(&int.cells).copied().collect();
        prop_assert_eq!(&cl_again, &cl.cells);
        // and each equals the space minus the two other parts
        let k = &f.space.universe().cells;
        let from_k: BTreeSet<CellId> = k
            .iter()
            .copied()
            .filter(|c| !int.cells.contains(c) && !bd.cells.contains(c))
            .collect();
        prop_assert_eq!(&from_k, &bdy.cells);
    }

    #[test]
    fn contour_edges_bound_at_most_one_shape_triangle(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
    ) {
        let f = cached(FixtureName::Ribbon4b);
        let a = subset_from_indexes(&f.space, &picks);
        let edges = f.space.contour_edges(&a).unwrap();
        for e in edges {
            let edge = f.space.cell(e);
            let incident = a
                .cells
                .iter()
                .filter(|&&c| {
                    let cell = f.space.cell(c);
                    cell.dim == 2
                        && edge.vertices.iter().all(|v| cell.vertices.contains(v))
                })
                .count();
            prop_assert!(incident <= 1);
        }
    }

    #[test]
    fn extracted_cycles_are_simple_with_two_incidences(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..12),
    ) {
        let f = cached(FixtureName::HawaiianNecklace);
        let a = subset_from_indexes(&f.space, &picks);
        let cycles = extract_cycles(&f.space, &a).unwrap();
        let again = extract_cycles(&f.space, &a).unwrap();
        prop_assert_eq!(&cycles, &again); // deterministic
        for c in &cycles {
            let mut seen = BTreeSet::new();
            prop_assert!(c.loop_vertices.iter().all(|v| seen.insert(*v)));
            prop_assert_eq!(c.edges.len(), c.loop_vertices.len());
            // each loop vertex touches exactly two loop edges
            for &v in &c.loop_vertices {
                let deg = c
                    .edges
                    .iter()
                    .filter(|&&e| f.space.cell(e).vertices.contains(&v))
                    .count();
                prop_assert_eq!(deg, 2);
            }
            prop_assert_eq!(c.filled, !c.interior.is_empty());
        }
    }

    #[test]
    fn cyclic_rep_distances_match_the_loop_formula(
        n in 3usize..24,
        gen_pos in any::<prop::sample::Index>(),
    ) {
        let space = polygon_loop_space(n, 5);
        let cycles = extract_cycles(&space, space.complex("L").unwrap()).unwrap();
        prop_assert_eq!(cycles.len(), 1);
        let c = &cycles[0];
        let generator = c.loop_vertices[gen_pos.index(n)];
        let rep = cyclic_rep(&space, c, generator).unwrap();
        prop_assert!(verify_free(&rep));
        let gi = c.loop_vertices.iter().position(|&v| v == generator).unwrap();
        for (i, &v) in c.loop_vertices.iter().enumerate() {
            let fwd = (i + n - gi) % n;
            let expect = fwd.min(n - fwd);
            prop_assert_eq!(rep.certificate(v).unwrap().k, expect);
        }
    }

    #[test]
    fn rank_is_invariant_under_vertex_relabeling(
        n in 3usize..20,
        offset in 0u32..500,
        gen_pos in any::<prop::sample::Index>(),
    ) {
        let a = polygon_loop_space(n, 1);
        let b = polygon_loop_space(n, offset * 7 + 2);
        let ca = extract_cycles(&a, a.complex("L").unwrap()).unwrap();
        let cb = extract_cycles(&b, b.complex("L").unwrap()).unwrap();
        let ga = ca[0].loop_vertices[gen_pos.index(n)];
        let gb = cb[0].loop_vertices[gen_pos.index(n)];
        let ra = free_fg_rep(&a, a.complex("L").unwrap(), &[ga]).unwrap();
        let rb = free_fg_rep(&b, b.complex("L").unwrap(), &[gb]).unwrap();
        prop_assert_eq!(ra.rank(), rb.rank());
    }

    #[test]
    fn dnear_is_reflexive_and_symmetric_on_nonempty(
        picks_a in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
        picks_b in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
    ) {
        let f = cached(FixtureName::TriangleFan3);
        let a = subset_from_indexes(&f.space, &picks_a);
        let b = subset_from_indexes(&f.space, &picks_b);
        for ex in [Extractor::Beta0, Extractor::CellCount, Extractor::ContourLength] {
            let probe = ProbeFunction::new(ex);
            prop_assert!(dnear_in(&f.space, &a, &a, &probe).unwrap());
            prop_assert_eq!(
                dnear_in(&f.space, &a, &b, &probe).unwrap(),
                dnear_in(&f.space, &b, &a, &probe).unwrap()
            );
            // equal descriptions force nearness
            if describe(&f.space, &a, &probe).unwrap().matches(&describe(&f.space, &b, &probe).unwrap()) {
                prop_assert!(dnear_in(&f.space, &a, &b, &probe).unwrap());
            }
        }
    }

    #[test]
    fn spatial_near_is_symmetric_and_driven_by_overlap(
        picks_a in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
        picks_b in prop::collection::vec(any::<prop::sample::Index>(), 1..8),
    ) {
        let f = cached(FixtureName::CycleFigure3a);
        let a = subset_from_indexes(&f.space, &picks_a);
        let b = subset_from_indexes(&f.space, &picks_b);
        prop_assert_eq!(
            near(&f.space, &a, &b).unwrap(),
            near(&f.space, &b, &a).unwrap()
        );
        if a.cells.intersection(&b.cells).next().is_some() {
            prop_assert!(near(&f.space, &a, &b).unwrap());
        }
    }

    #[test]
    fn beta0_is_closure_invariant(
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..10),
    ) {
        let f = cached(FixtureName::Ribbon4b);
        let a = subset_from_indexes(&f.space, &picks);
        let cl = f.space.closure(&a).unwrap();
        let probe = ProbeFunction::new(Extractor::Beta0);
        prop_assert_eq!(
            describe(&f.space, &a, &probe).unwrap().values,
            describe(&f.space, &cl, &probe).unwrap().values
        );
    }
}

#[test]
fn almost_amiable_is_symmetric_and_saturates() {
    use proxima::fixed::{almost_amiable, DpcMap, Threshold};
    let shapes = [
        cached(FixtureName::HawaiianEarrings),
        cached(FixtureName::HawaiianNecklace),
        cached(FixtureName::HawaiianButterfly),
    ];
    let probe = ProbeFunction::new(Extractor::BetaAlpha);
    let map = DpcMap::BoundaryComplement;
    for x in &shapes {
        for y in &shapes {
            let th = Threshold::new(1.0).unwrap();
            let (xy, a, b) = almost_amiable(
                &x.space,
                x.shape_complex(),
                &y.space,
                y.shape_complex(),
                &map,
                &probe,
                th,
            )
            .unwrap();
            let (yx, b2, a2) = almost_amiable(
                &y.space,
                y.shape_complex(),
                &x.space,
                x.shape_complex(),
                &map,
                &probe,
                th,
            )
            .unwrap();
            assert_eq!(xy, yx);
            assert_eq!((a, b), (a2, b2));
            // a huge threshold accepts any scalar-described pair
            let huge = Threshold::new(1e12).unwrap();
            let (ok, _, _) = almost_amiable(
                &x.space,
                x.shape_complex(),
                &y.space,
                y.shape_complex(),
                &map,
                &probe,
                huge,
            )
            .unwrap();
            assert!(ok);
        }
    }
}
