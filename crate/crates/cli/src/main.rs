use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use lefdt_core::cubical::CubicalOptions;
use lefdt_core::homalg::all_homology;
use lefdt_core::homotopy::{
    afp_spectrum, contraction, fixed_point_spectrum, fpp_counterexample, homotopy_classes, is_homotopic,
    is_homotopy_equivalent, lefschetz_spectrum, thin, HomotopyKind, SearchGuard, ThinMode,
};
use lefdt_core::io::{read_image, read_map, write_image};
use lefdt_core::lefschetz::{euler, CellComplex, LefschetzContext};
use lefdt_core::verify::{self, VerifyOptions};
use lefdt_core::{DigitalImage, DigitalMap, Error, Point, Theory};
use serde_json::{json, Value};

mod output;

#[derive(Parser)]
#[command(name = "lefdt", version, about = "Lefschetz numbers, homology and homotopy of finite digital images")]
struct Cli {
    /// print machine-readable JSON instead of `key: value` lines
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TheoryArg {
    #[arg(long, default_value = "simplicial")]
    theory: Theory,
    /// run the cubical induced map above ambient dimension 4
    #[arg(long)]
    unsafe_high_dimension: bool,
}

impl TheoryArg {
    fn options(&self) -> CubicalOptions {
        CubicalOptions {
            allow_high_dimension: self.unsafe_high_dimension,
        }
    }
}

#[derive(Args)]
struct KindArg {
    /// use strong homotopy instead of ordinary homotopy
    #[arg(long)]
    strong: bool,
}

impl KindArg {
    fn kind(&self) -> HomotopyKind {
        HomotopyKind::from_strong(self.strong)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Size, adjacency, components and cell counts of an image
    Info { image: PathBuf },
    /// Clique complex, listed by dimension
    Simplices { image: PathBuf },
    /// Cubical cells, listed by dimension
    Cubes { image: PathBuf },
    /// Integral homology groups
    Homology {
        image: PathBuf,
        #[command(flatten)]
        theory: TheoryArg,
    },
    /// Euler characteristic
    Euler {
        image: PathBuf,
        #[command(flatten)]
        theory: TheoryArg,
    },
    /// Lefschetz number of a self-map, with per-degree traces
    Lefschetz {
        map: PathBuf,
        #[command(flatten)]
        theory: TheoryArg,
    },
    /// Fixed points and fixed cells of a self-map
    Fixed {
        map: PathBuf,
        #[command(flatten)]
        theory: TheoryArg,
    },
    /// Approximate fixed points within path distance n
    Afp {
        map: PathBuf,
        /// radius; defaults to the ambient dimension
        #[arg(short)]
        n: Option<usize>,
    },
    /// Continuity check, listing violated adjacencies
    CheckMap { map: PathBuf },
    /// Decide whether two maps are homotopic and print a certificate
    Homotopic {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        kind: KindArg,
    },
    /// Homotopy classes of self-maps
    Classes {
        image: PathBuf,
        #[command(flatten)]
        kind: KindArg,
    },
    /// Contractibility, with a certificate ending at a constant map
    Contractible {
        image: PathBuf,
        #[command(flatten)]
        kind: KindArg,
    },
    /// Fixed point property
    Fpp { image: PathBuf },
    /// Fixed point spectrum, or Lefschetz spectrum with --lefschetz
    Spectrum {
        image: PathBuf,
        #[arg(long)]
        lefschetz: bool,
        #[command(flatten)]
        theory: TheoryArg,
        /// enumerate on a certified greedy reduction and lift the witnesses
        #[arg(long, requires = "lefschetz")]
        reduce: bool,
        /// batch size for --reduce
        #[arg(long, default_value_t = 2)]
        batch: usize,
    },
    /// Approximate fixed point counts over the homotopy class of a map
    AfpSpectrum {
        map: PathBuf,
        /// radius; defaults to the ambient dimension (1 with --strong)
        #[arg(short)]
        n: Option<usize>,
        #[command(flatten)]
        kind: KindArg,
    },
    /// Decide homotopy equivalence of two images
    Equivalent {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        kind: KindArg,
    },
    /// Delete points while a homotopy equivalence is certified
    Thin {
        image: PathBuf,
        #[command(flatten)]
        kind: KindArg,
        #[arg(long, default_value = "greedy", value_parser = ["greedy", "exhaustive"])]
        mode: String,
        /// largest number of points deleted in one greedy step
        #[arg(long, default_value_t = 1)]
        batch: usize,
        /// write the reduced image here
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Replay the example table and print a pass/fail matrix
    Verify {
        /// include the robot reductions and the robot spectrum
        #[arg(long)]
        slow: bool,
    },
}

/// Failure of a verb. `Report` carries a result that is itself a negative
/// answer to a validation verb.
enum Failure {
    Lib(Error),
    Report(Value, u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Value, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Precondition(_) | Error::UnsupportedAdjacency(_) | Error::DimensionGuard { .. } => 2,
        Error::Parse(_) => 3,
        Error::Resource { .. } => 4,
        Error::Internal(_) | Error::Io(_) => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Precondition(_) => "precondition",
        Error::UnsupportedAdjacency(_) => "unsupported-adjacency",
        Error::DimensionGuard { .. } => "dimension-guard",
        Error::Resource { .. } => "resource",
        Error::Parse(_) => "parse",
        Error::Internal(_) => "internal",
        Error::Io(_) => "io",
    }
}

fn image(path: &Path) -> Result<Arc<DigitalImage>, Error> {
    read_image(path).map_err(|e| with_path(e, path))
}

fn map(path: &Path) -> Result<DigitalMap, Error> {
    read_map(path).map_err(|e| with_path(e, path))
}

fn with_path(e: Error, path: &Path) -> Error {
    let p = path.display();
    match e {
        Error::Parse(m) => Error::Parse(format!("{p}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{p}: {m}")),
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{p}: {io}"))),
        other => other,
    }
}

fn continuous(f: &DigitalMap) -> Result<(), Error> {
    if f.is_continuous() {
        Ok(())
    } else {
        Err(Error::Precondition("map is not continuous (run check-map for details)".into()))
    }
}

fn assignment_points(f: &DigitalMap) -> Vec<&Point> {
    f.assignment().iter().map(|&j| f.codomain().point(j)).collect()
}

fn pairs(f: &DigitalMap) -> Vec<[usize; 2]> {
    f.assignment().iter().enumerate().map(|(i, &j)| [i, j]).collect()
}

fn by_dimension(levels: impl Iterator<Item = Value>) -> serde_json::Map<String, Value> {
    levels.enumerate().map(|(q, cells)| (q.to_string(), cells)).collect()
}

fn run(cmd: Command, guard: SearchGuard) -> Outcome {
    match cmd {
        Command::Info { image: path } => {
            let x = image(&path)?;
            let cubical = CellComplex::build(&x, Theory::Cubical);
            Ok(json!({
                "points": x.len(),
                "dimension": x.dimension(),
                "adjacency": x.adjacency().to_string(),
                "edges": x.edge_count(),
                "components": x.components().len(),
                "simplices": CellComplex::build(&x, Theory::Simplicial)?.counts(),
                "cubicalCells": cubical.as_ref().ok().map(CellComplex::counts),
                "cubicalSupport": match &cubical {
                    Ok(_) => "supported".to_string(),
                    Err(e) => e.to_string(),
                },
            }))
        }
        Command::Simplices { image: path } => {
            let x = image(&path)?;
            let CellComplex::Simplicial(k) = CellComplex::build(&x, Theory::Simplicial)? else {
                unreachable!()
            };
            let cells = (0..k.counts().len()).map(|q| json!(k.simplices(q).iter().map(|s| s.points(&x)).collect::<Vec<_>>()));
            Ok(json!({ "counts": k.counts(), "simplices": by_dimension(cells) }))
        }
        Command::Cubes { image: path } => {
            let x = image(&path)?;
            let CellComplex::Cubical(k) = CellComplex::build(&x, Theory::Cubical)? else {
                unreachable!()
            };
            let cells = (0..k.counts().len()).map(|q| json!(k.cells(q).iter().map(|c| c.label(&x)).collect::<Vec<_>>()));
            Ok(json!({ "counts": k.counts(), "geometric": k.is_geometric(), "cells": by_dimension(cells) }))
        }
        Command::Homology { image: path, theory } => {
            let x = image(&path)?;
            let k = CellComplex::build(&x, theory.theory)?;
            let groups: Vec<Value> = all_homology(k.chain())
                .iter()
                .enumerate()
                .map(|(q, h)| {
                    let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
                    json!({ "dimension": q, "group": h.to_string(), "betti": h.betti, "torsion": torsion })
                })
                .collect();
            Ok(json!({ "theory": theory.theory, "groups": groups, "euler": k.chain().euler_characteristic() }))
        }
        Command::Euler { image: path, theory } => {
            let x = image(&path)?;
            Ok(json!({ "theory": theory.theory, "value": euler(&x, theory.theory)? }))
        }
        Command::Lefschetz { map: path, theory } => {
            let f = map(&path)?;
            continuous(&f)?;
            let ctx = LefschetzContext::with_options(f.domain(), theory.theory, theory.options())?;
            Ok(serde_json::to_value(ctx.report(&f)?).expect("reports serialize"))
        }
        Command::Fixed { map: path, theory } => {
            let f = map(&path)?;
            continuous(&f)?;
            let points = f.fixed_points()?;
            let cells = CellComplex::build(f.domain(), theory.theory)?.fixed_cells(f.assignment());
            Ok(json!({ "theory": theory.theory, "count": points.len(), "fixedPoints": points, "fixedCells": cells }))
        }
        Command::Afp { map: path, n } => {
            let f = map(&path)?;
            continuous(&f)?;
            let n = n.unwrap_or(f.domain().dimension());
            let points = f.approx_fixed_points(n)?;
            Ok(json!({ "radius": n, "count": points.len(), "points": points }))
        }
        Command::CheckMap { map: path } => {
            let f = map(&path)?;
            let (dom, cod, a) = (f.domain(), f.codomain(), f.assignment());
            let violations: Vec<Value> = dom
                .edges()
                .filter(|&(i, j)| !cod.is_close(a[i], a[j]))
                .map(|(i, j)| json!({ "from": [dom.point(i), dom.point(j)], "to": [cod.point(a[i]), cod.point(a[j])] }))
                .collect();
            let report = json!({ "continuous": violations.is_empty(), "violations": violations });
            if violations.is_empty() {
                Ok(report)
            } else {
                Err(Failure::Report(report, 2))
            }
        }
        Command::Homotopic { first, second, kind } => {
            let (f, g) = (map(&first)?, map(&second)?);
            let cert = is_homotopic(&f, &g, kind.kind(), &guard)?;
            Ok(json!({
                "kind": kind.kind(),
                "homotopic": cert.is_some(),
                "certificate": cert.map(|c| c.to_json()),
            }))
        }
        Command::Classes { image: path, kind } => {
            let x = image(&path)?;
            let classes = homotopy_classes(&x, kind.kind(), &guard)?;
            // the invariant that is constant on these classes
            let theory = match kind.kind() {
                HomotopyKind::Strong => Some(Theory::Simplicial),
                HomotopyKind::Ordinary => {
                    (x.dimension() <= 3 && CellComplex::build(&x, Theory::Cubical).is_ok()).then_some(Theory::Cubical)
                }
            };
            let ctx = theory.map(|t| LefschetzContext::new(&x, t)).transpose()?;
            let list: Vec<Value> = (0..classes.len())
                .map(|i| {
                    let rep = classes.representative(i);
                    json!({
                        "size": classes.class(i).len(),
                        "representative": assignment_points(&rep),
                        "lefschetz": ctx.as_ref().map(|c| c.value(rep.assignment())),
                    })
                })
                .collect();
            Ok(json!({
                "kind": kind.kind(),
                "maps": classes.map_count(),
                "count": classes.len(),
                "lefschetzTheory": theory,
                "classes": list,
            }))
        }
        Command::Contractible { image: path, kind } => {
            let x = image(&path)?;
            let cert = contraction(&x, kind.kind(), &guard)?;
            Ok(json!({
                "kind": kind.kind(),
                "contractible": cert.is_some(),
                "certificate": cert.map(|c| c.to_json()),
            }))
        }
        Command::Fpp { image: path } => {
            let x = image(&path)?;
            let witness = fpp_counterexample(&x, &guard)?;
            Ok(json!({
                "fpp": witness.is_none(),
                "counterexample": witness.as_ref().map(assignment_points),
            }))
        }
        Command::Spectrum { image: path, lefschetz, theory, reduce, batch } => {
            let x = image(&path)?;
            if !lefschetz {
                let mut out = fixed_point_spectrum(&x, &guard)?.to_json();
                out["spectrum"] = json!("fixed");
                return Ok(out);
            }
            if !reduce {
                let mut out = lefschetz_spectrum(&x, theory.theory, theory.options(), &guard)?.to_json();
                out["spectrum"] = json!("lefschetz");
                out["theory"] = json!(theory.theory);
                return Ok(out);
            }
            // L is invariant under strong equivalence, the cubical number under ordinary
            let (kind, mode) = match theory.theory {
                Theory::Simplicial => (HomotopyKind::Strong, ThinMode::greedy()),
                Theory::Cubical => (HomotopyKind::Ordinary, ThinMode::Greedy { max_batch: batch }),
            };
            let red = thin(&x, kind, mode, &guard)?;
            if !red.validate() {
                return Err(Error::Internal("reduction certificate does not validate".into()).into());
            }
            let s = lefschetz_spectrum(&red.reduced, theory.theory, theory.options(), &guard)?;
            let ctx = LefschetzContext::with_options(&x, theory.theory, theory.options())?;
            let mut lifted = serde_json::Map::new();
            for (v, w) in s.witnesses() {
                let f = red.lift(w)?;
                if ctx.report(&f)?.value != v {
                    return Err(Error::Internal(format!("lifted witness for {v} has a different value")).into());
                }
                lifted.insert(v.to_string(), json!(pairs(&f)));
            }
            Ok(json!({
                "spectrum": "lefschetz",
                "theory": theory.theory,
                "values": s.values(),
                "witnesses": lifted,
                "mapsScanned": s.maps_scanned,
                "reduction": red.to_json(),
            }))
        }
        Command::AfpSpectrum { map: path, n, kind } => {
            let f = map(&path)?;
            let n = n.unwrap_or(if kind.strong { 1 } else { f.domain().dimension() });
            let mut out = afp_spectrum(&f, n, kind.kind(), &guard)?.to_json();
            out["radius"] = json!(n);
            out["kind"] = json!(kind.kind());
            Ok(out)
        }
        Command::Equivalent { first, second, kind } => {
            let (x, y) = (image(&first)?, image(&second)?);
            let eq = is_homotopy_equivalent(&x, &y, kind.kind(), &guard)?;
            Ok(json!({
                "kind": kind.kind(),
                "equivalent": eq.is_some(),
                "forward": eq.as_ref().map(|e| assignment_points(&e.forward)),
                "backward": eq.as_ref().map(|e| assignment_points(&e.backward)),
            }))
        }
        Command::Thin { image: path, kind, mode, batch, output } => {
            let x = image(&path)?;
            let mode = match mode.as_str() {
                "exhaustive" => ThinMode::Exhaustive,
                _ => ThinMode::Greedy { max_batch: batch },
            };
            let red = thin(&x, kind.kind(), mode, &guard)?;
            if let Some(out) = &output {
                write_image(out, &red.reduced)?;
            }
            Ok(red.to_json())
        }
        Command::Verify { slow } => {
            let checks = verify::run(VerifyOptions { include_slow: slow, guard });
            let failed = checks.iter().filter(|c| !c.passed).count();
            let report = json!({ "checks": checks, "passed": checks.len() - failed, "failed": failed });
            if failed == 0 {
                Ok(report)
            } else {
                Err(Failure::Report(report, 1))
            }
        }
    }
}

fn render(value: &Value, as_json: bool) -> String {
    if as_json {
        format!("{}\n", serde_json::to_string_pretty(value).expect("values serialize"))
    } else if let Some(checks) = value.get("checks").and_then(Value::as_array) {
        // verify: one row per check
        let mut out = String::new();
        for c in checks {
            let mark = if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{mark}  {}  expected {}  got {}\n",
                c["name"].as_str().unwrap_or_default(),
                c["expected"].as_str().unwrap_or_default(),
                c["actual"].as_str().unwrap_or_default()
            ));
        }
        out.push_str(&format!("passed: {}\nfailed: {}\n", value["passed"], value["failed"]));
        out
    } else {
        output::human(value)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = match SearchGuard::from_env() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    match run(cli.command, guard) {
        Ok(v) => {
            print!("{}", render(&v, cli.json));
            ExitCode::SUCCESS
        }
        Err(Failure::Report(v, code)) => {
            print!("{}", render(&v, cli.json));
            ExitCode::from(code)
        }
        Err(Failure::Lib(e)) => {
            let code = exit_code(&e);
            if cli.json {
                let diag = json!({ "error": { "kind": error_kind(&e), "message": e.to_string(), "exitCode": code } });
                eprintln!("{}", serde_json::to_string_pretty(&diag).expect("values serialize"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
