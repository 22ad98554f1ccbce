//! Maps on descriptive proximity spaces and their fixed sets.
//!
//! The central map is the boundary complement f(A) = K \ ∂cl(A), which
//! reproduces the closure of A by the partition of the space into a closure
//! and its boundary region. Descriptive fixedness compares descriptions of
//! A and f(A); amiability asks for a nonempty descriptive intersection
//! between them.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::complex::{CWSpace, CellComplex, CellId};
use crate::error::{Error, Result};
use crate::proximity::{describe, descriptive_intersection, dnear_in, ElementRef, ProbeFunction};

/// A total map from registered complexes to complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpcMap {
    Identity,
    /// f(A) = K \ ∂cl(A).
    BoundaryComplement,
    /// Explicit complex-name table.
    Table(BTreeMap<String, String>),
}

impl DpcMap {
    pub fn name(&self) -> &'static str {
        match self {
            DpcMap::Identity => "identity",
            DpcMap::BoundaryComplement => "boundary_complement",
            DpcMap::Table(_) => "table",
        }
    }

    pub fn parse(s: &str) -> Option<DpcMap> {
        match s {
            "identity" => Some(DpcMap::Identity),
            "boundary_complement" => Some(DpcMap::BoundaryComplement),
            _ => None,
        }
    }
}

/// Whether dpc holds for at least one related pair or for all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpcMode {
    Existential,
    Universal,
}

/// Image of a complex under a map.
pub fn apply(map: &DpcMap, space: &CWSpace, a: &CellComplex) -> Result<CellComplex> {
    match map {
        DpcMap::Identity => Ok(a.clone()),
        DpcMap::BoundaryComplement => {
            let boundary = space.boundary_region(a)?;
            Ok(space
                .universe()
                .difference(&boundary, format!("f({})", a.name)))
        }
        DpcMap::Table(entries) => {
            let target = entries
                .get(&a.name)
                .ok_or_else(|| Error::NotTotal(a.name.clone()))?;
            Ok(space.complex(target)?.clone())
        }
    }
}

/// Checks descriptive proximal continuity over all ordered pairs of
/// registered complexes (diagonal included). Existential mode needs one
/// descriptively-near pair whose images stay near; universal mode needs all
/// of them to.
pub fn is_dpc(map: &DpcMap, space: &CWSpace, probe: &ProbeFunction, mode: DpcMode) -> Result<bool> {
    let complexes: Vec<&CellComplex> = space.complexes.values().collect();
    let mut any = false;
    for a in &complexes {
        for b in &complexes {
            if !dnear_in(space, a, b, probe)? {
                continue;
            }
            let fa = apply(map, space, a)?;
            let fb = apply(map, space, b)?;
            let preserved = dnear_in(space, &fa, &fb, probe)?;
            match mode {
                DpcMode::Existential if preserved => return Ok(true),
                DpcMode::Universal if !preserved => return Ok(false),
                _ => {}
            }
            any = true;
        }
    }
    Ok(match mode {
        DpcMode::Existential => false,
        // no related pair at all leaves nothing to violate
        DpcMode::Universal => true || any,
    })
}

/// A is a descriptive fixed subset of f when f(A) and A describe equally.
pub fn descriptive_fixed(
    map: &DpcMap,
    space: &CWSpace,
    a: &CellComplex,
    probe: &ProbeFunction,
) -> Result<bool> {
    let fa = apply(map, space, a)?;
    let da = describe(space, a, probe)?;
    let dfa = describe(space, &fa, probe)?;
    Ok(da.matches(&dfa))
}

/// Amiability of f(A) with A, with a witness element on success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amiability {
    pub amiable: bool,
    pub witness: Option<ElementRef>,
}

pub fn amiable(
    map: &DpcMap,
    space: &CWSpace,
    a: &CellComplex,
    probe: &ProbeFunction,
) -> Result<Amiability> {
    let fa = apply(map, space, a)?;
    let witnesses = descriptive_intersection(space, &fa, space, a, probe, true)?;
    Ok(Amiability {
        amiable: !witnesses.is_empty(),
        witness: witnesses.into_iter().next(),
    })
}

/// Amiability of f(A) with a second complex B, possibly from another space.
pub fn amiable_pair(
    map: &DpcMap,
    space_a: &CWSpace,
    a: &CellComplex,
    space_b: &CWSpace,
    b: &CellComplex,
    probe: &ProbeFunction,
) -> Result<Amiability> {
    let fa = apply(map, space_a, a)?;
    let same_space = space_a.name == space_b.name;
    let witnesses = descriptive_intersection(space_a, &fa, space_b, b, probe, same_space)?;
    Ok(Amiability {
        amiable: !witnesses.is_empty(),
        witness: witnesses.into_iter().next(),
    })
}

/// Positive threshold for almost-amiability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold(f64);

impl Threshold {
    pub fn new(th: f64) -> Result<Threshold> {
        if th > 0.0 && th.is_finite() {
            Ok(Threshold(th))
        } else {
            Err(Error::InvalidThreshold(th))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Almost-amiability: scalar descriptions of the two images differ by at
/// most the threshold. Vector-valued probes are rejected.
pub fn almost_amiable(
    space_e: &CWSpace,
    e: &CellComplex,
    space_e2: &CWSpace,
    e2: &CellComplex,
    map: &DpcMap,
    probe: &ProbeFunction,
    th: Threshold,
) -> Result<(bool, f64, f64)> {
    if probe.arity() != 1 {
        return Err(Error::ScalarRequired(probe.arity()));
    }
    let fe = apply(map, space_e, e)?;
    let fe2 = apply(map, space_e2, e2)?;
    let a = describe(space_e, &fe, probe)?.scalar();
    let b = describe(space_e2, &fe2, probe)?.scalar();
    Ok(((a - b).abs() <= th.value(), a, b))
}

/// The closure of a shape and its boundary region partition the space:
/// disjoint, with union K.
pub fn jordan_partition_check(space: &CWSpace, a: &CellComplex) -> Result<bool> {
    let cl = space.closure(a)?;
    let bd = space.boundary_region(a)?;
    let disjoint = cl.cells.intersection(&bd.cells).next().is_none();
    let union: BTreeSet<CellId> = cl.cells.union(&bd.cells).copied().collect();
    Ok(disjoint && union == space.universe().cells)
}

/// Every registered complex's descriptive closure is carried onto itself by
/// the boundary-complement map (members are replaced by their images and
/// compared as a family of cell sets).
pub fn fixed_cell_complex_check(space: &CWSpace, probe: &ProbeFunction) -> Result<bool> {
    for e in space.complexes.values() {
        if e.is_empty() {
            continue;
        }
        let dcl = crate::proximity::descriptive_closure(space, e, probe)?;
        let before: BTreeSet<&BTreeSet<CellId>> = dcl.iter().map(|c| &c.cells).collect();
        let mut after: Vec<CellComplex> = Vec::new();
        for member in &dcl {
            after.push(apply(&DpcMap::BoundaryComplement, space, member)?);
        }
        let after: BTreeSet<&BTreeSet<CellId>> = after.iter().map(|c| &c.cells).collect();
        if before != after {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixed-set facts about a shape boundary region under the
/// boundary-complement map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeBoundaryFixed {
    /// f(∂cl(A)) = ∂cl(A) as cell sets.
    pub fixed: bool,
    /// f(∂cl(A)) and ∂cl(A) are amiable.
    pub amiable: bool,
    /// The boundary region needed closing before the identity held (its raw
    /// cell set was not face-closed).
    pub closed_first: bool,
}

/// Evaluates the boundary identity f(∂cl(A)) = K \ ∂(∂cl(A)) = ∂cl(A). The
/// boundary region is closed first; whether that changed it is reported
/// rather than assumed.
pub fn shape_boundary_fixed_check(
    space: &CWSpace,
    a: &CellComplex,
    probe: &ProbeFunction,
) -> Result<ShapeBoundaryFixed> {
    let boundary = space.boundary_region(a)?;
    if boundary.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let closed = space.closure(&boundary)?;
    let closed_first = closed.cells != boundary.cells;
    let image = apply(&DpcMap::BoundaryComplement, space, &closed)?;
    let fixed = image.cells == closed.cells;
    let witnesses = descriptive_intersection(space, &image, space, &closed, probe, true)?;
    Ok(ShapeBoundaryFixed {
        fixed,
        amiable: !witnesses.is_empty(),
        closed_first,
    })
}

/// Report printed by the CLI `fixed` command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSetReport {
    pub subject: String,
    pub dpc_existential: bool,
    pub dpc_universal: bool,
    pub descriptive_fixed: bool,
    pub amiable: bool,
    pub witness: Option<ElementRef>,
}

pub fn fixed_set_report(
    map: &DpcMap,
    space: &CWSpace,
    name: &str,
    probe: &ProbeFunction,
) -> Result<FixedSetReport> {
    let a = space.complex(name)?;
    let am = amiable(map, space, a, probe)?;
    Ok(FixedSetReport {
        subject: name.to_string(),
        dpc_existential: is_dpc(map, space, probe, DpcMode::Existential)?,
        dpc_universal: is_dpc(map, space, probe, DpcMode::Universal)?,
        descriptive_fixed: descriptive_fixed(map, space, a, probe)?,
        amiable: am.amiable,
        witness: am.witness,
    })
}

impl std::fmt::Display for FixedSetReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "subject={}", self.subject)?;
        writeln!(f, "dpc_existential={}", self.dpc_existential)?;
        writeln!(f, "dpc_universal={}", self.dpc_universal)?;
        writeln!(f, "descriptive_fixed={}", self.descriptive_fixed)?;
        write!(f, "amiable={}", self.amiable)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{build_fixture, FixtureName};
    use crate::proximity::Extractor;

    fn beta0() -> ProbeFunction {
        ProbeFunction::new(Extractor::Beta0)
    }

    fn beta_alpha() -> ProbeFunction {
        ProbeFunction::new(Extractor::BetaAlpha)
    }

    #[test]
    fn boundary_complement_reproduces_the_closure() {
        let f = build_fixture(FixtureName::TriangleFan3);
        let sh = f.shape_complex();
        let image = apply(&DpcMap::BoundaryComplement, &f.space, sh).unwrap();
        // the fixture's shape is registered closed, so f(shE) = shE exactly
        assert_eq!(image.cells, sh.cells);
        let k = f.space.universe();
        let image_k = apply(&DpcMap::BoundaryComplement, &f.space, k).unwrap();
        assert_eq!(image_k.cells, k.cells);
    }

    #[test]
    fn identity_map_is_dpc_in_both_modes() {
        let f = build_fixture(FixtureName::TriangleFan3);
        assert!(is_dpc(&DpcMap::Identity, &f.space, &beta0(), DpcMode::Existential).unwrap());
        assert!(is_dpc(&DpcMap::Identity, &f.space, &beta0(), DpcMode::Universal).unwrap());
        assert!(is_dpc(
            &DpcMap::BoundaryComplement,
            &f.space,
            &beta0(),
            DpcMode::Existential
        )
        .unwrap());
        assert!(is_dpc(
            &DpcMap::BoundaryComplement,
            &f.space,
            &beta0(),
            DpcMode::Universal
        )
        .unwrap());
    }

    #[test]
    fn collapsing_table_map_fails_existential_dpc() {
        let mut f = build_fixture(FixtureName::TriangleFan3);
        f.space.register(CellComplex::empty("void"));
        let mut table = BTreeMap::new();
        for name in f.space.complexes.keys() {
            table.insert(name.clone(), "void".to_string());
        }
        let map = DpcMap::Table(table);
        assert!(!is_dpc(&map, &f.space, &beta0(), DpcMode::Existential).unwrap());
        assert!(!is_dpc(&map, &f.space, &beta0(), DpcMode::Universal).unwrap());
    }

    #[test]
    fn table_map_must_be_total() {
        let f = build_fixture(FixtureName::TriangleFan3);
        let map = DpcMap::Table(BTreeMap::new());
        let err = apply(&map, &f.space, f.shape_complex()).unwrap_err();
        assert_eq!(err, Error::NotTotal("shE".into()));
    }

    #[test]
    fn fan_shape_is_descriptively_fixed_and_amiable() {
        let f = build_fixture(FixtureName::TriangleFan3);
        let sh = f.shape_complex();
        assert!(descriptive_fixed(&DpcMap::BoundaryComplement, &f.space, sh, &beta0()).unwrap());
        let am = amiable(&DpcMap::BoundaryComplement, &f.space, sh, &beta0()).unwrap();
        assert!(am.amiable);
        assert!(am.witness.is_some());
        // collapsing shE to a single triangle breaks fixedness: 3 vs 1
        let mut table = BTreeMap::new();
        table.insert("shE".to_string(), "E1".to_string());
        let map = DpcMap::Table(table);
        assert!(!descriptive_fixed(&map, &f.space, sh, &beta0()).unwrap());
    }

    #[test]
    fn earrings_and_necklace_are_almost_amiable_not_amiable() {
        let er = build_fixture(FixtureName::HawaiianEarrings);
        let hn = build_fixture(FixtureName::HawaiianNecklace);
        let map = DpcMap::BoundaryComplement;
        let th1 = Threshold::new(1.0).unwrap();
        let (ok, a, b) = almost_amiable(
            &er.space,
            er.shape_complex(),
            &hn.space,
            hn.shape_complex(),
            &map,
            &beta_alpha(),
            th1,
        )
        .unwrap();
        assert!(ok);
        assert_eq!((a, b), (2.0, 3.0));
        let th_half = Threshold::new(0.5).unwrap();
        let (ok, _, _) = almost_amiable(
            &er.space,
            er.shape_complex(),
            &hn.space,
            hn.shape_complex(),
            &map,
            &beta_alpha(),
            th_half,
        )
        .unwrap();
        assert!(!ok);
        let am = amiable_pair(
            &map,
            &er.space,
            er.shape_complex(),
            &hn.space,
            hn.shape_complex(),
            &beta_alpha(),
        )
        .unwrap();
        assert!(!am.amiable);
    }

    #[test]
    fn boundary_complement_is_idempotent() {
        let f = build_fixture(FixtureName::HawaiianButterfly);
        let map = DpcMap::BoundaryComplement;
        for a in f.space.complexes.values() {
            let once = apply(&map, &f.space, a).unwrap();
            let twice = apply(&map, &f.space, &once).unwrap();
            assert_eq!(once.cells, twice.cells, "{}", a.name);
        }
    }

    #[test]
    fn close_ranks_mean_almost_amiable_over_all_fixture_pairs() {
        let fixtures = crate::fixtures::build_all();
        let probe = beta_alpha();
        let map = DpcMap::BoundaryComplement;
        for th in [0.5, 1.0, 2.0] {
            let th = Threshold::new(th).unwrap();
            for x in &fixtures {
                for y in &fixtures {
                    let (ok, a, b) = almost_amiable(
                        &x.space,
                        x.shape_complex(),
                        &y.space,
                        y.shape_complex(),
                        &map,
                        &probe,
                        th,
                    )
                    .unwrap();
                    assert_eq!(ok, (a - b).abs() <= th.value());
                }
            }
        }
    }

    #[test]
    fn threshold_must_be_positive() {
        assert!(Threshold::new(0.0).is_err());
        assert!(Threshold::new(-1.0).is_err());
        assert!(Threshold::new(0.5).is_ok());
    }

    #[test]
    fn jordan_partition_on_fixture_shapes() {
        for name in [
            FixtureName::TriangleFan3,
            FixtureName::Ribbon4b,
            FixtureName::HawaiianNecklace,
        ] {
            let f = build_fixture(name);
            assert!(jordan_partition_check(&f.space, f.shape_complex()).unwrap());
            assert!(jordan_partition_check(&f.space, f.space.universe()).unwrap());
        }
    }

    #[test]
    fn boundary_of_universe_is_empty_error() {
        let f = build_fixture(FixtureName::TriangleFan3);
        let err = shape_boundary_fixed_check(&f.space, f.space.universe(), &beta0()).unwrap_err();
        assert_eq!(err, Error::EmptyBoundary);
    }

    #[test]
    fn shape_boundary_is_fixed_and_amiable() {
        let f = build_fixture(FixtureName::Ribbon4b);
        let report = shape_boundary_fixed_check(&f.space, f.shape_complex(), &beta0()).unwrap();
        assert!(report.fixed);
        assert!(report.amiable);
    }

    #[test]
    fn fixed_cell_complexes_on_fixtures() {
        for name in [FixtureName::TriangleFan3, FixtureName::HawaiianEarrings] {
            let f = build_fixture(name);
            assert!(fixed_cell_complex_check(&f.space, &beta0()).unwrap());
            assert!(fixed_cell_complex_check(&f.space, &beta_alpha()).unwrap());
        }
    }
}
