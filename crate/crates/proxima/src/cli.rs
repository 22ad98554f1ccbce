//! Command-line surface.
//!
//! `run_command` takes the argument vector (without the program name) and
//! returns an exit code with the full report text, so the whole surface is
//! drivable from tests without spawning processes. Exit codes: 0 for
//! pass/success, 1 for a property that evaluated false or failed, 2 for
//! usage or parse errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::algebra::{betti, free_fg_rep};
use crate::complex::CWSpace;
use crate::cycles::extract_cycles;
use crate::document::{parse, SpaceDocument};
use crate::error::Error;
use crate::fixed::{almost_amiable, amiable, amiable_pair, fixed_set_report, DpcMap, Threshold};
use crate::fixtures::{build_fixture, FixtureName};
use crate::proximity::{
    check_cech_axioms, check_descriptive_axioms, describe, ClosureOverlap, Extractor,
    ProbeFunction, ProbeRelation,
};
use crate::render::{render_svg, RenderStyle};

/// Seed used when neither `--seed` nor `PROXIMA_SEED` is given.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(
    name = "proxima",
    about = "Finite planar CW spaces: region operators, cycles, Betti numbers, proximities, fixed sets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where a command finds its space and complex: a positional subject
/// (fixture alias or document path, optionally `path:complex`) or the
/// explicit `--fixture <name>` form.
#[derive(clap::Args)]
struct SubjectArgs {
    /// Built-in fixture name.
    #[arg(long)]
    fixture: Option<String>,
    /// Fixture name or .space document (path[:complex]).
    subject: Option<String>,
    complex: Option<String>,
}

impl SubjectArgs {
    fn resolve(&self) -> Result<(CWSpace, String), Error> {
        if let Some(f) = &self.fixture {
            let name =
                FixtureName::parse(f).ok_or_else(|| Error::NotFound(format!("fixture {f}")))?;
            let fx = build_fixture(name);
            // with --fixture, a lone positional names the complex
            let shape = self
                .complex
                .clone()
                .or_else(|| self.subject.clone())
                .unwrap_or(fx.shape);
            Ok((fx.space, shape))
        } else {
            let subject = self
                .subject
                .as_ref()
                .ok_or_else(|| Error::NotFound("subject required".to_string()))?;
            resolve_subject(subject, self.complex.as_deref())
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a document and verify the CW conditions.
    Validate { file: PathBuf },
    /// Betti numbers of a complex: beta0=<n> beta_alpha=<m>.
    Betti {
        #[arg(long, default_value = "beta0")]
        probe: String,
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Boundary region summary of a complex.
    Boundary {
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Cycles carried by a complex.
    Cycles {
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Run the proximity axiom suites on a space.
    Axioms {
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "beta0")]
        probe: String,
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Fixed-set report for a complex under a map.
    Fixed {
        #[arg(long, default_value = "boundary_complement")]
        map: String,
        #[arg(long, default_value = "beta0")]
        probe: String,
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Amiability of f(A) with A, or of f(A) with a second complex B.
    Amiable {
        #[arg(long, default_value = "boundary_complement")]
        map: String,
        #[arg(long, default_value = "beta0")]
        probe: String,
        a: String,
        b: Option<String>,
    },
    /// Almost-amiability of two shapes at a threshold.
    #[command(name = "almost-amiable")]
    AlmostAmiable {
        #[arg(long, default_value = "beta_alpha")]
        probe: String,
        #[arg(long)]
        th: f64,
        a: String,
        b: String,
    },
    /// Render a space as SVG, highlighting one complex.
    Render {
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        subject: SubjectArgs,
    },
    /// Print a built-in fixture as a .space document.
    Fixture {
        #[arg(long)]
        list: bool,
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs one CLI invocation. `argv` excludes the program name.
pub fn run_command(argv: &[String]) -> (i32, String) {
    let mut full = vec!["proxima".to_string()];
    full.extend(argv.iter().cloned());
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            return (if is_help { 0 } else { 2 }, e.to_string());
        }
    };
    match dispatch(cli.command) {
        Ok((code, text)) => (code, text),
        Err(Error::Parse(p)) => (2, format!("error[{}]: {p}\n", p.code())),
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn dispatch(cmd: Command) -> Result<(i32, String), Error> {
    match cmd {
        Command::Validate { file } => validate(&file),
        Command::Betti { probe, subject } => betti_cmd(&probe, &subject),
        Command::Boundary { subject } => boundary_cmd(&subject),
        Command::Cycles { subject } => cycles_cmd(&subject),
        Command::Axioms {
            trials,
            seed,
            probe,
            subject,
        } => axioms_cmd(trials, seed, &probe, &subject),
        Command::Fixed {
            map,
            probe,
            subject,
        } => fixed_cmd(&map, &probe, &subject),
        Command::Amiable { map, probe, a, b } => amiable_cmd(&map, &probe, &a, b.as_deref()),
        Command::AlmostAmiable { probe, th, a, b } => almost_cmd(&probe, th, &a, &b),
        Command::Render { out, subject } => render_cmd(out, &subject),
        Command::Fixture { list, name, out } => fixture_cmd(list, name.as_deref(), out),
    }
}

fn parse_probe(name: &str) -> Result<ProbeFunction, Error> {
    Extractor::parse(name)
        .map(ProbeFunction::new)
        .ok_or_else(|| Error::NotFound(format!("probe {name}")))
}

fn parse_map(name: &str) -> Result<DpcMap, Error> {
    DpcMap::parse(name).ok_or_else(|| Error::NotFound(format!("map {name}")))
}

/// A fixture alias resolves to its built space and main shape; anything
/// else is a document path with an optional `:complex` suffix.
fn resolve_subject(subject: &str, complex: Option<&str>) -> Result<(CWSpace, String), Error> {
    if let Some(name) = FixtureName::parse(subject) {
        let f = build_fixture(name);
        let shape = complex.map(str::to_string).unwrap_or(f.shape);
        return Ok((f.space, shape));
    }
    let (path, inline) = match subject.rsplit_once(':') {
        Some((p, c)) if !c.contains('/') && !c.contains('.') => (p, Some(c.to_string())),
        _ => (subject, None),
    };
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::NotFound(format!("{path}: {e}")))?;
    let doc = parse(&text)?;
    let space = doc.to_space()?;
    let shape = complex
        .map(str::to_string)
        .or(inline)
        .unwrap_or_else(|| "shE".to_string());
    Ok((space, shape))
}

fn validate(file: &PathBuf) -> Result<(i32, String), Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::NotFound(format!("{}: {e}", file.display())))?;
    let doc = match parse(&text) {
        Ok(doc) => doc,
        Err(p) => {
            return Ok((2, format!("parse=error\nerror[{}]: {p}\n", p.code())));
        }
    };
    let mut space = doc.to_space()?;
    let report = space.verify_cw_conditions();
    let mut out = String::from("parse=ok\n");
    out.push_str(&format!("containment={}\n", report.containment));
    out.push_str(&format!("intersections={}\n", report.intersections));
    out.push_str(&format!("hausdorff={}\n", report.hausdorff));
    out.push_str(&format!("accepted={}\n", report.accepted()));
    for note in &report.notes {
        out.push_str(&format!("note={note}\n"));
    }
    Ok((if report.accepted() { 0 } else { 1 }, out))
}

fn betti_cmd(probe: &str, subject: &SubjectArgs) -> Result<(i32, String), Error> {
    parse_probe(probe)?; // probes select descriptions elsewhere; betti output is fixed
    let (space, shape) = subject.resolve()?;
    let a = space.complex(&shape)?;
    let (b0, ba) = match space.generators_of(&shape) {
        Some(gens) => {
            let gens = gens.to_vec();
            let rep = free_fg_rep(&space, a, &gens)?;
            let b = betti(&space, a, &rep)?;
            (b.beta0, b.beta_alpha)
        }
        None => {
            let b0 = a.cells.iter().filter(|&&c| space.cell(c).dim == 2).count();
            let ba = crate::cycles::extract_loops(&space, a)?.len();
            (b0, ba)
        }
    };
    Ok((0, format!("beta0={b0} beta_alpha={ba}\n")))
}

fn boundary_cmd(subject: &SubjectArgs) -> Result<(i32, String), Error> {
    let (space, shape) = subject.resolve()?;
    let a = space.complex(&shape)?;
    let bd = space.boundary_region(a)?;
    let jordan = crate::fixed::jordan_partition_check(&space, a)?;
    let out = format!(
        "cells={}\ncomponents={}\njordan_partition={jordan}\n",
        bd.len(),
        space.component_count(&bd)
    );
    Ok((if jordan { 0 } else { 1 }, out))
}

fn cycles_cmd(subject: &SubjectArgs) -> Result<(i32, String), Error> {
    let (space, shape) = subject.resolve()?;
    let a = space.complex(&shape)?;
    let cycles = extract_cycles(&space, a)?;
    let mut out = format!("n={}\n", cycles.len());
    for (i, c) in cycles.iter().enumerate() {
        let verts: Vec<String> = c.loop_vertices.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!(
            "cycle{i}={} filled={}\n",
            verts.join(","),
            c.filled
        ));
    }
    Ok((0, out))
}

fn axioms_cmd(
    trials: u32,
    seed: Option<u64>,
    probe: &str,
    subject: &SubjectArgs,
) -> Result<(i32, String), Error> {
    if trials == 0 {
        return Err(Error::Parse(crate::error::ParseError::Syntax {
            line: 0,
            msg: "trials must be at least 1".to_string(),
        }));
    }
    let seed = seed
        .or_else(|| {
            std::env::var("PROXIMA_SEED")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_SEED);
    let probe = parse_probe(probe)?;
    let (space, _) = subject.resolve()?;
    let spatial = check_cech_axioms(&space, &ClosureOverlap::new(), trials, seed)?;
    let relation = ProbeRelation::new(probe);
    let descriptive = check_descriptive_axioms(&space, &relation, trials, seed)?;
    let out = format!("{spatial}{descriptive}");
    let pass = spatial.all_pass() && descriptive.all_pass();
    Ok((if pass { 0 } else { 1 }, out))
}

fn fixed_cmd(map: &str, probe: &str, subject: &SubjectArgs) -> Result<(i32, String), Error> {
    let map = parse_map(map)?;
    let probe = parse_probe(probe)?;
    let (space, shape) = subject.resolve()?;
    let report = fixed_set_report(&map, &space, &shape, &probe)?;
    let ok = report.descriptive_fixed && report.amiable;
    Ok((if ok { 0 } else { 1 }, format!("{report}\n")))
}

fn amiable_cmd(map: &str, probe: &str, a: &str, b: Option<&str>) -> Result<(i32, String), Error> {
    let map = parse_map(map)?;
    let probe = parse_probe(probe)?;
    let (space_a, shape_a) = resolve_subject(a, None)?;
    let ca = space_a.complex(&shape_a)?;
    let result = match b {
        None => amiable(&map, &space_a, ca, &probe)?,
        Some(b) => {
            let (space_b, shape_b) = resolve_subject(b, None)?;
            let cb = space_b.complex(&shape_b)?;
            amiable_pair(&map, &space_a, ca, &space_b, cb, &probe)?
        }
    };
    let mut out = format!("amiable={}", result.amiable);
    if let Some(w) = &result.witness {
        out.push_str(&format!(" witness={w}"));
    }
    out.push('\n');
    Ok((if result.amiable { 0 } else { 1 }, out))
}

fn fmt_scalar(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v}")
    }
}

fn almost_cmd(probe: &str, th: f64, a: &str, b: &str) -> Result<(i32, String), Error> {
    let probe = parse_probe(probe)?;
    let th = Threshold::new(th).map_err(|_| {
        Error::Parse(crate::error::ParseError::Syntax {
            line: 0,
            msg: format!("threshold must be positive, got {th}"),
        })
    })?;
    let (space_a, shape_a) = resolve_subject(a, None)?;
    let (space_b, shape_b) = resolve_subject(b, None)?;
    let ca = space_a.complex(&shape_a)?;
    let cb = space_b.complex(&shape_b)?;
    let (ok, va, vb) = almost_amiable(
        &space_a,
        ca,
        &space_b,
        cb,
        &DpcMap::BoundaryComplement,
        &probe,
        th,
    )?;
    let out = format!(
        "{ok} (|{}-{}|={})\n",
        fmt_scalar(va),
        fmt_scalar(vb),
        fmt_scalar((va - vb).abs())
    );
    Ok((if ok { 0 } else { 1 }, out))
}

fn render_cmd(out_file: Option<PathBuf>, subject: &SubjectArgs) -> Result<(i32, String), Error> {
    let (space, shape) = subject.resolve()?;
    let svg = render_svg(&space, &shape, &RenderStyle::default())?;
    match out_file {
        Some(path) => {
            std::fs::write(&path, &svg)
                .map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
            Ok((0, format!("wrote {}\n", path.display())))
        }
        None => Ok((0, svg)),
    }
}

fn fixture_cmd(
    list: bool,
    name: Option<&str>,
    out_file: Option<PathBuf>,
) -> Result<(i32, String), Error> {
    if list {
        let mut out = String::new();
        for n in FixtureName::ALL {
            out.push_str(n.as_str());
            out.push('\n');
        }
        return Ok((0, out));
    }
    let name = name.ok_or_else(|| Error::NotFound("fixture name required".to_string()))?;
    let space = if name == "fig1b" {
        crate::fixtures::fan_prime_space()
    } else {
        let fixture_name =
            FixtureName::parse(name).ok_or_else(|| Error::NotFound(name.to_string()))?;
        build_fixture(fixture_name).space
    };
    let text = SpaceDocument::from_space(&space).serialize();
    match out_file {
        Some(path) => {
            std::fs::write(&path, &text)
                .map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
            Ok((0, format!("wrote {}\n", path.display())))
        }
        None => Ok((0, text)),
    }
}

/// One-line description of a complex under a probe, used by tests.
pub fn describe_line(space: &CWSpace, shape: &str, probe: &ProbeFunction) -> Result<String, Error> {
    let c = space.complex(shape)?;
    let d = describe(space, c, probe)?;
    Ok(format!("{}={}", probe.name, fmt_scalar(d.scalar())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run_command(&argv)
    }

    #[test]
    fn unknown_command_is_usage_error() {
        let (code, text) = run(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(text.contains("Usage") || text.contains("error"));
    }

    #[test]
    fn betti_on_fixtures() {
        let (code, text) = run(&["betti", "--probe", "beta0", "triangle_fan3", "shE"]);
        assert_eq!(code, 0, "{text}");
        assert_eq!(text, "beta0=3 beta_alpha=3\n");
        let (code, text) = run(&["betti", "cycle_figure3a"]);
        assert_eq!(code, 0);
        assert_eq!(text, "beta0=12 beta_alpha=1\n");
    }

    #[test]
    fn almost_amiable_earrings_vs_necklace() {
        let (code, text) = run(&[
            "almost-amiable",
            "--probe",
            "beta_alpha",
            "--th",
            "1",
            "earrings",
            "necklace",
        ]);
        assert_eq!(code, 0, "{text}");
        assert_eq!(text, "true (|2-3|=1)\n");
        let (code, text) = run(&[
            "almost-amiable",
            "--probe",
            "beta_alpha",
            "--th",
            "0.5",
            "earrings",
            "necklace",
        ]);
        assert_eq!(code, 1);
        assert_eq!(text, "false (|2-3|=1)\n");
    }

    #[test]
    fn zero_trials_is_usage_error() {
        let (code, _) = run(&["axioms", "--trials", "0", "triangle_fan3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn axioms_pass_on_fan() {
        let (code, text) = run(&["axioms", "--trials", "50", "--seed", "7", "triangle_fan3"]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("P.0 pass (50 trials)"));
        assert!(text.contains("dP.3 pass (50 trials)"));
        assert!(text.contains("Lemma2.3 pass (50 trials)"));
    }

    #[test]
    fn fixed_report_lines() {
        let (code, text) = run(&[
            "fixed",
            "--map",
            "boundary_complement",
            "--probe",
            "beta0",
            "triangle_fan3",
            "shE",
        ]);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("subject=shE"));
        assert!(text.contains("dpc_existential=true"));
        assert!(text.contains("dpc_universal=true"));
        assert!(text.contains("descriptive_fixed=true"));
        assert!(text.contains("amiable=true"));
    }

    #[test]
    fn amiable_pair_across_fixtures_is_false() {
        let (code, text) = run(&["amiable", "--probe", "beta_alpha", "earrings", "necklace"]);
        assert_eq!(code, 1);
        assert!(text.starts_with("amiable=false"));
    }

    #[test]
    fn fixture_export_and_reload() {
        let (code, text) = run(&["fixture", "hawaiian_necklace"]);
        assert_eq!(code, 0);
        let doc = parse(&text).unwrap();
        assert_eq!(doc.name, "necklace");
        let space = doc.to_space().unwrap();
        assert!(space.complexes.contains_key("shE"));
    }

    #[test]
    fn fixture_list() {
        let (code, text) = run(&["fixture", "--list"]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 7);
    }

    #[test]
    fn outputs_are_reproducible() {
        for args in [
            vec!["betti", "hawaiian_butterfly"],
            vec!["cycles", "ribbon_4b"],
            vec!["boundary", "ribbon_4b"],
            vec![
                "axioms",
                "--trials",
                "20",
                "--seed",
                "3",
                "intersecting_cycles_3b",
            ],
            vec!["render", "triangle_fan3"],
        ] {
            let a = run(&args);
            let b = run(&args);
            assert_eq!(a, b, "{args:?}");
        }
    }
}
