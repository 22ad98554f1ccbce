//! Spatial and descriptive proximity.
//!
//! The spatial relation is closure overlap: two complexes are near when
//! their closures share a cell. The descriptive relation compares probe
//! descriptions: two complexes are descriptively near when their
//! descriptions match, and the descriptive intersection then returns the
//! witness cells whose per-cell features occur on both sides. A collection
//! of complexes is described by the set of its members' descriptions, which
//! is what makes the union axiom hold for the descriptive relation.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{CWSpace, CellComplex, CellId};
use crate::cycles::extract_loops;
use crate::error::{Error, Result};
use crate::geom::segment_len_f64;

/// Comparison slack for non-integral description components.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// Built-in complex-level feature extractors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extractor {
    /// Number of 2-cells (filled triangles).
    Beta0,
    /// Rank of the group representation: declared generator count when the
    /// complex has one, extracted cycle count otherwise.
    BetaAlpha,
    /// Number of cells in the complex as given.
    CellCount,
    /// Number of 0-cells in the closure.
    VertexCount,
    /// Total Euclidean length of the contour edges (non-integral).
    ContourLength,
}

impl Extractor {
    pub const ALL: [Extractor; 5] = [
        Extractor::Beta0,
        Extractor::BetaAlpha,
        Extractor::CellCount,
        Extractor::VertexCount,
        Extractor::ContourLength,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Extractor::Beta0 => "beta0",
            Extractor::BetaAlpha => "beta_alpha",
            Extractor::CellCount => "cell_count",
            Extractor::VertexCount => "vertex_count",
            Extractor::ContourLength => "contour_length",
        }
    }

    pub fn parse(s: &str) -> Option<Extractor> {
        Self::ALL.iter().copied().find(|e| e.as_str() == s)
    }
}

/// A named feature extractor producing fixed-arity real vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeFunction {
    pub name: String,
    pub extractor: Extractor,
}

impl ProbeFunction {
    pub fn new(extractor: Extractor) -> ProbeFunction {
        ProbeFunction {
            name: extractor.as_str().to_string(),
            extractor,
        }
    }

    /// All built-ins produce scalars.
    pub fn arity(&self) -> usize {
        1
    }
}

/// A feature vector with per-component exactness flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Description {
    pub values: Vec<f64>,
    pub integral: Vec<bool>,
}

impl Description {
    pub fn matches(&self, other: &Description) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .zip(&self.integral)
                .all(|((a, b), &exact)| {
                    if exact {
                        a == b
                    } else {
                        (a - b).abs() <= REAL_TOLERANCE
                    }
                })
    }

    pub fn scalar(&self) -> f64 {
        self.values[0]
    }
}

/// Deterministic complex description under a probe; the empty complex
/// describes to the zero vector.
pub fn describe(space: &CWSpace, a: &CellComplex, probe: &ProbeFunction) -> Result<Description> {
    let value = if a.is_empty() {
        0.0
    } else {
        match probe.extractor {
            Extractor::Beta0 => a.cells.iter().filter(|&&c| space.cell(c).dim == 2).count() as f64,
            Extractor::BetaAlpha => match space.generators_of(&a.name) {
                Some(gens) => gens.len() as f64,
                None => {
                    // a derived complex with the same cells as a registered
                    // one (for example a map image) describes like it
                    let declared = space.declared_generators.iter().find_map(|(name, gens)| {
                        (space.complexes.get(name).map(|c| &c.cells) == Some(&a.cells))
                            .then_some(gens.len())
                    });
                    match declared {
                        Some(n) => n as f64,
                        None => extract_loops(space, a)?.len() as f64,
                    }
                }
            },
            Extractor::CellCount => a.len() as f64,
            Extractor::VertexCount => {
                let cl = space.closure(a)?;
                cl.cells.iter().filter(|&&c| space.cell(c).dim == 0).count() as f64
            }
            Extractor::ContourLength => {
                let edges = space.contour_edges(a)?;
                edges
                    .iter()
                    .map(|&e| {
                        let cell = space.cell(e);
                        segment_len_f64(
                            space.point(cell.vertices[0]),
                            space.point(cell.vertices[1]),
                        )
                    })
                    .sum()
            }
        }
    };
    Ok(Description {
        values: vec![value],
        integral: vec![probe.extractor != Extractor::ContourLength],
    })
}

/// Per-cell feature: (dimension, vertex count).
pub fn describe_cell(space: &CWSpace, cell: CellId) -> (u8, usize) {
    let c = space.cell(cell);
    (c.dim, c.vertices.len())
}

/// A cell of one of the two sides of a descriptive intersection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementRef {
    pub space: String,
    pub cell: CellId,
}

impl std::fmt::Display for ElementRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}#{}", self.space, self.cell)
    }
}

/// Spatial nearness: the closures share a cell. Satisfies the Cech axioms
/// by construction (closure distributes over union).
pub fn near(space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    let ca = space.closure(a)?;
    let cb = space.closure(b)?;
    Ok(ca.cells.intersection(&cb.cells).next().is_some())
}

/// Descriptive intersection of two complexes, possibly from distinct
/// spaces. Empty unless both complexes are nonempty and their descriptions
/// match; when they do, the witnesses are the cells of either closure whose
/// per-cell feature occurs in both closures' feature images. Cross-space
/// pairs are checked to really be cross-space (their cell sets never meet).
pub fn descriptive_intersection(
    space_a: &CWSpace,
    a: &CellComplex,
    space_b: &CWSpace,
    b: &CellComplex,
    probe: &ProbeFunction,
    same_space: bool,
) -> Result<Vec<ElementRef>> {
    if same_space && space_a.name != space_b.name {
        return Err(Error::SpaceMismatch);
    }
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let da = describe(space_a, a, probe)?;
    let db = describe(space_b, b, probe)?;
    if !da.matches(&db) {
        return Ok(Vec::new());
    }
    let cla = space_a.closure(a)?;
    let clb = space_b.closure(b)?;
    let image_a: BTreeSet<(u8, usize)> = cla
        .cells
        .iter()
        .map(|&c| describe_cell(space_a, c))
        .collect();
    let image_b: BTreeSet<(u8, usize)> = clb
        .cells
        .iter()
        .map(|&c| describe_cell(space_b, c))
        .collect();
    let shared: BTreeSet<(u8, usize)> = image_a.intersection(&image_b).copied().collect();

    let mut out = Vec::new();
    for &c in &cla.cells {
        if shared.contains(&describe_cell(space_a, c)) {
            out.push(ElementRef {
                space: space_a.name.clone(),
                cell: c,
            });
        }
    }
    for &c in &clb.cells {
        // in one space a cell already counted through cl(A) is not repeated
        let counted = same_space && cla.cells.contains(&c);
        if !counted && shared.contains(&describe_cell(space_b, c)) {
            out.push(ElementRef {
                space: space_b.name.clone(),
                cell: c,
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Descriptive nearness; exactly the nonemptiness of the descriptive
/// intersection. Matching descriptions guarantee a witness because any two
/// nonempty closures both contain a 0-cell, whose per-cell feature (0, 1)
/// lies in both images, so the intersection never has to be materialized.
pub fn dnear(
    space_a: &CWSpace,
    a: &CellComplex,
    space_b: &CWSpace,
    b: &CellComplex,
    probe: &ProbeFunction,
    same_space: bool,
) -> Result<bool> {
    if same_space && space_a.name != space_b.name {
        return Err(Error::SpaceMismatch);
    }
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    let da = describe(space_a, a, probe)?;
    let db = describe(space_b, b, probe)?;
    Ok(da.matches(&db))
}

/// Same-space shorthand.
pub fn dnear_in(
    space: &CWSpace,
    a: &CellComplex,
    b: &CellComplex,
    probe: &ProbeFunction,
) -> Result<bool> {
    dnear(space, a, space, b, probe, true)
}

/// Descriptive closure of E: every registered complex descriptively near E,
/// ascending by name. Empty for the empty complex.
pub fn descriptive_closure(
    space: &CWSpace,
    e: &CellComplex,
    probe: &ProbeFunction,
) -> Result<Vec<CellComplex>> {
    if e.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for a in space.complexes.values() {
        if dnear_in(space, a, e, probe)? {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Pluggable spatial relation for the axiom checker.
pub trait SpatialRelation {
    fn near(&self, space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool>;
}

/// The built-in closure-overlap relation.
///
/// Two closures share a cell exactly when the complexes touch a common
/// vertex (a shared closure cell contributes its vertices' 0-cells to both
/// closures, and a commonly touched vertex contributes its 0-cell to both),
/// so nearness is decided on cached vertex footprints.
pub struct ClosureOverlap {
    cache: std::cell::RefCell<BTreeMap<String, std::rc::Rc<BTreeSet<u32>>>>,
}

impl ClosureOverlap {
    pub fn new() -> ClosureOverlap {
        ClosureOverlap {
            cache: std::cell::RefCell::new(BTreeMap::new()),
        }
    }

    fn footprint(&self, space: &CWSpace, c: &CellComplex) -> std::rc::Rc<BTreeSet<u32>> {
        if !c.name.starts_with("sample") {
            if let Some(f) = self.cache.borrow().get(&c.name) {
                return f.clone();
            }
        }
        let f: std::rc::Rc<BTreeSet<u32>> = std::rc::Rc::new(
            c.cells
                .iter()
                .flat_map(|&id| space.cell(id).vertices.iter().copied())
                .collect(),
        );
        if !c.name.starts_with("sample") {
            self.cache.borrow_mut().insert(c.name.clone(), f.clone());
        }
        f
    }
}

impl Default for ClosureOverlap {
    fn default() -> Self {
        Self::new()
    }
}

impl SpatialRelation for ClosureOverlap {
    fn near(&self, space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Ok(false);
        }
        let fa = self.footprint(space, a);
        let fb = self.footprint(space, b);
        Ok(fa.intersection(&fb).next().is_some())
    }
}

/// Pluggable descriptive relation for the axiom checker.
pub trait DescriptiveRelation {
    fn dnear(&self, space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool>;

    fn dcap_nonempty(&self, space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool>;

    /// Nearness to a collection of complexes, whose description is the set
    /// of its members' descriptions.
    fn dnear_collection(
        &self,
        space: &CWSpace,
        a: &CellComplex,
        members: &[&CellComplex],
    ) -> Result<bool> {
        for m in members {
            if self.dnear(space, a, m)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// The probe-backed descriptive relation. Registered complexes keep their
/// names through the checker, so their descriptions are memoized.
pub struct ProbeRelation {
    pub probe: ProbeFunction,
    cache: std::cell::RefCell<BTreeMap<String, Description>>,
}

impl ProbeRelation {
    pub fn new(probe: ProbeFunction) -> ProbeRelation {
        ProbeRelation {
            probe,
            cache: std::cell::RefCell::new(BTreeMap::new()),
        }
    }

    fn describe_cached(&self, space: &CWSpace, c: &CellComplex) -> Result<Description> {
        // registered complexes are stable per (space, name); samples are
        // keyed by content
        let key = if c.name.starts_with("sample") {
            let cells: Vec<String> = c.cells.iter().map(|i| i.to_string()).collect();
            format!("{}?{}", space.name, cells.join(","))
        } else {
            format!("{}/{}", space.name, c.name)
        };
        if let Some(d) = self.cache.borrow().get(&key) {
            return Ok(d.clone());
        }
        let d = describe(space, c, &self.probe)?;
        self.cache.borrow_mut().insert(key, d.clone());
        Ok(d)
    }
}

impl DescriptiveRelation for ProbeRelation {
    fn dnear(&self, space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool> {
        if a.is_empty() || b.is_empty() {
            return Ok(false);
        }
        let da = self.describe_cached(space, a)?;
        let db = self.describe_cached(space, b)?;
        Ok(da.matches(&db))
    }

    fn dcap_nonempty(&self, space: &CWSpace, a: &CellComplex, b: &CellComplex) -> Result<bool> {
        self.dnear(space, a, b)
    }

    fn dnear_collection(
        &self,
        space: &CWSpace,
        a: &CellComplex,
        members: &[&CellComplex],
    ) -> Result<bool> {
        if a.is_empty() {
            return Ok(false);
        }
        let da = self.describe_cached(space, a)?;
        for m in members {
            if !m.is_empty() && self.describe_cached(space, m)?.matches(&da) {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Pass/fail of one axiom over a sampled trial run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: String,
    pub pass: bool,
    pub trials: u32,
    pub witness: Option<String>,
}

impl std::fmt::Display for AxiomResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pass {
            write!(f, "{} pass ({} trials)", self.name, self.trials)
        } else {
            write!(
                f,
                "{} FAIL witness={}",
                self.name,
                self.witness.as_deref().unwrap_or("?")
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

impl std::fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn label(c: &CellComplex) -> String {
    if c.name.starts_with("sample") {
        let cells: Vec<String> = c.cells.iter().map(|c| c.to_string()).collect();
        format!("cells{{{}}}", cells.join(","))
    } else {
        c.name.clone()
    }
}

/// Uniform random connected cell subset of size at most 8. Connectivity is
/// through shared vertices; subsets are raw (not closed).
pub fn sample_subcomplex(space: &CWSpace, rng: &mut ChaCha8Rng, tag: usize) -> CellComplex {
    let all: Vec<CellId> = space.cells.keys().copied().collect();
    let target = rng.gen_range(1..=8usize);
    let start = all[rng.gen_range(0..all.len())];
    let mut chosen: BTreeSet<CellId> = BTreeSet::from([start]);
    while chosen.len() < target {
        let mut frontier: BTreeSet<CellId> = BTreeSet::new();
        for &c in &chosen {
            for &v in &space.cell(c).vertices {
                frontier.extend(space.cells_at_vertex(v).iter().copied());
            }
        }
        let frontier: Vec<CellId> = frontier.difference(&chosen).copied().collect();
        if frontier.is_empty() {
            break;
        }
        chosen.insert(frontier[rng.gen_range(0..frontier.len())]);
    }
    CellComplex::new(format!("sample{tag}"), chosen)
}

enum Picked<'a> {
    Registered(&'a CellComplex),
    Fresh(CellComplex),
}

impl Picked<'_> {
    fn get(&self) -> &CellComplex {
        match self {
            Picked::Registered(c) => c,
            Picked::Fresh(c) => c,
        }
    }
}

fn sample_or_registered<'a>(
    space: &CWSpace,
    registered: &'a [CellComplex],
    rng: &mut ChaCha8Rng,
    tag: usize,
) -> Picked<'a> {
    if !registered.is_empty() && rng.gen_bool(0.5) {
        Picked::Registered(&registered[rng.gen_range(0..registered.len())])
    } else {
        Picked::Fresh(sample_subcomplex(space, rng, tag))
    }
}

/// Checks the four Cech axioms against `trials` sampled triples.
pub fn check_cech_axioms(
    space: &CWSpace,
    relation: &dyn SpatialRelation,
    trials: u32,
    seed: u64,
) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let registered: Vec<CellComplex> = space
        .complexes
        .values()
        .filter(|c| !c.is_empty())
        .cloned()
        .collect();
    let empty = CellComplex::empty("empty");

    let mut results: Vec<AxiomResult> = ["P.0", "P.1", "P.2", "P.3"]
        .iter()
        .map(|n| AxiomResult {
            name: n.to_string(),
            pass: true,
            trials,
            witness: None,
        })
        .collect();

    for t in 0..trials {
        let a = sample_or_registered(space, &registered, &mut rng, t as usize * 3);
        let b = sample_or_registered(space, &registered, &mut rng, t as usize * 3 + 1);
        let c = sample_or_registered(space, &registered, &mut rng, t as usize * 3 + 2);
        let (a, b, c) = (a.get(), b.get(), c.get());

        if results[0].pass && relation.near(space, a, &empty)? {
            results[0].pass = false;
            results[0].witness = Some(label(a));
        }
        if results[1].pass && relation.near(space, a, b)? != relation.near(space, b, a)? {
            results[1].pass = false;
            results[1].witness = Some(format!("{},{}", label(a), label(b)));
        }
        let intersects = a.cells.intersection(&b.cells).next().is_some();
        if results[2].pass && intersects && !relation.near(space, a, b)? {
            results[2].pass = false;
            results[2].witness = Some(format!("{},{}", label(a), label(b)));
        }
        let bc = b.union(c, "sample:union");
        if results[3].pass
            && relation.near(space, a, &bc)?
            && !(relation.near(space, a, b)? || relation.near(space, a, c)?)
        {
            results[3].pass = false;
            results[3].witness = Some(format!("{},{},{}", label(a), label(b), label(c)));
        }
    }
    Ok(AxiomReport { results })
}

/// Checks the four descriptive axioms plus the biconditional between
/// descriptive nearness and nonempty descriptive intersection.
pub fn check_descriptive_axioms(
    space: &CWSpace,
    relation: &dyn DescriptiveRelation,
    trials: u32,
    seed: u64,
) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let registered: Vec<CellComplex> = space
        .complexes
        .values()
        .filter(|c| !c.is_empty())
        .cloned()
        .collect();
    let empty = CellComplex::empty("empty");

    let mut results: Vec<AxiomResult> = ["dP.0", "dP.1", "dP.2", "dP.3", "Lemma2.3"]
        .iter()
        .map(|n| AxiomResult {
            name: n.to_string(),
            pass: true,
            trials,
            witness: None,
        })
        .collect();

    for t in 0..trials {
        let a = sample_or_registered(space, &registered, &mut rng, t as usize * 3);
        let b = sample_or_registered(space, &registered, &mut rng, t as usize * 3 + 1);
        let c = sample_or_registered(space, &registered, &mut rng, t as usize * 3 + 2);
        let (a, b, c) = (a.get(), b.get(), c.get());

        if results[0].pass && relation.dnear(space, a, &empty)? {
            results[0].pass = false;
            results[0].witness = Some(label(a));
        }
        if results[1].pass && relation.dnear(space, a, b)? != relation.dnear(space, b, a)? {
            results[1].pass = false;
            results[1].witness = Some(format!("{},{}", label(a), label(b)));
        }
        if results[2].pass
            && relation.dcap_nonempty(space, a, b)?
            && !relation.dnear(space, a, b)?
        {
            results[2].pass = false;
            results[2].witness = Some(format!("{},{}", label(a), label(b)));
        }
        if results[3].pass
            && relation.dnear_collection(space, a, &[b, c])?
            && !(relation.dnear(space, a, b)? || relation.dnear(space, a, c)?)
        {
            results[3].pass = false;
            results[3].witness = Some(format!("{},{},{}", label(a), label(b), label(c)));
        }
        if results[4].pass && relation.dnear(space, a, b)? != relation.dcap_nonempty(space, a, b)? {
            results[4].pass = false;
            results[4].witness = Some(format!("{},{}", label(a), label(b)));
        }
    }
    Ok(AxiomReport { results })
}
