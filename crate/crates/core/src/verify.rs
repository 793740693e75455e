//! Replays the worked examples on the built-in fixtures as a table of
//! checks.

use std::fmt::Debug;
use std::sync::Arc;

use serde::Serialize;

use crate::cubical::CubicalOptions;
use crate::error::Result;
use crate::fixtures;
use crate::homotopy::{
    count_continuous_maps, fixed_point_spectrum, homotopy_classes, is_contractible, is_strongly_contractible,
    lefschetz_spectrum, thin, HomotopyKind, SearchGuard, ThinMode,
};
use crate::image::{DigitalImage, DigitalMap};
use crate::lefschetz::{euler, lefschetz, CellComplex, LefschetzContext, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// also run the robot reductions and the robot Lefschetz spectrum
    pub include_slow: bool,
    pub guard: SearchGuard,
}

struct Table(Vec<Check>);

impl Table {
    fn add<T: Debug + PartialEq>(&mut self, name: impl Into<String>, expected: T, actual: Result<T>) {
        let (actual, passed) = match actual {
            Ok(v) => (format!("{v:?}"), v == expected),
            Err(e) => (format!("error: {e}"), false),
        };
        self.0.push(Check {
            name: name.into(),
            expected: format!("{expected:?}"),
            actual,
            passed,
        });
    }
}

fn traces(f: &DigitalMap, theory: Theory) -> Result<(i64, Vec<i64>)> {
    let r = lefschetz(f, theory, CubicalOptions::default())?;
    Ok((r.value, r.traces))
}

fn constant(img: &Arc<DigitalImage>) -> Result<DigitalMap> {
    DigitalMap::constant(img.clone(), img.point(0))
}

fn supports_cubical(img: &Arc<DigitalImage>) -> bool {
    CellComplex::build(img, Theory::Cubical).is_ok() && img.dimension() <= crate::cubical::MAX_CHAIN_MAP_DIMENSION
}

/// Runs every check; never fails, errors are recorded as failed rows.
pub fn run(options: VerifyOptions) -> Vec<Check> {
    let mut t = Table(Vec::new());
    let guard = options.guard;
    let load = |n: &str| fixtures::image(n);

    for (name, chi, chibar) in [("imageY", -1, 1), ("imageZ", -2, 1), ("robot", -2, 0)] {
        t.add(format!("simplicial Euler characteristic of {name}"), chi, load(name).and_then(|i| euler(&i, Theory::Simplicial)));
        t.add(format!("cubical Euler characteristic of {name}"), chibar, load(name).and_then(|i| euler(&i, Theory::Cubical)));
    }

    let rot = |n: &str| load(n).and_then(|i| fixtures::rotation_180(&i));
    t.add("L of the rotation of Y, with traces", (1, vec![0, -1]), rot("imageY").and_then(|f| traces(&f, Theory::Simplicial)));
    t.add("L-bar of the rotation of Y, with traces", (1, vec![0, -1, 0]), rot("imageY").and_then(|f| traces(&f, Theory::Cubical)));
    t.add(
        "degree-2 cubical matrix of the rotation of Y is the swap",
        "0 1\n1 0\n".to_string(),
        rot("imageY").and_then(|f| {
            let c = CellComplex::build(f.domain(), Theory::Cubical)?;
            Ok(c.induced(&f, &c, CubicalOptions::default())?.matrix(2).map(|m| m.dump()).unwrap_or_default())
        }),
    );
    t.add("L of the rotation of Z, with traces", (0, vec![0, 0]), rot("imageZ").and_then(|f| traces(&f, Theory::Simplicial)));
    t.add("L-bar of the rotation of Z, with traces", (1, vec![0, 0, 1]), rot("imageZ").and_then(|f| traces(&f, Theory::Cubical)));
    t.add("rotation of Z has no fixed points", 0, rot("imageZ").and_then(|f| Ok(f.fixed_points()?.len())));
    t.add(
        "rotation of Z fixes exactly one 2-cube",
        vec![2],
        rot("imageZ").and_then(|f| Ok(lefschetz(&f, Theory::Cubical, CubicalOptions::default())?.fixed_cells.iter().map(|c| c.dimension).collect())),
    );
    t.add("L of the rotation of X", 1, rot("imageX").and_then(|f| Ok(traces(&f, Theory::Simplicial)?.0)));
    t.add("L-bar of the rotation of X, with traces", (1, vec![1, 0]), rot("imageX").and_then(|f| traces(&f, Theory::Cubical)));
    t.add("rotation of X has one fixed point", 1, rot("imageX").and_then(|f| Ok(f.fixed_points()?.len())));

    for name in fixtures::image_names() {
        let Ok(img) = load(name) else { continue };
        let theories: Vec<Theory> = Theory::ALL.into_iter().filter(|&th| th == Theory::Simplicial || supports_cubical(&img)).collect();
        for theory in theories {
            t.add(
                format!("{theory} L(id) equals the Euler characteristic on {name}"),
                true,
                (|| {
                    let ctx = LefschetzContext::new(&img, theory)?;
                    Ok(ctx.report(&DigitalMap::identity(img.clone()))?.value == euler(&img, theory)?)
                })(),
            );
            if img.len() <= 13 {
                t.add(
                    format!("{theory} L of a constant map on {name}"),
                    1,
                    constant(&img).and_then(|c| Ok(lefschetz(&c, theory, CubicalOptions::default())?.value)),
                );
            }
        }
    }

    let c4 = load("cycle_04");
    t.add("continuous self-maps of C4", 84, c4.as_ref().map_err(clone_err).and_then(|c| count_continuous_maps(c, c, &guard)));
    t.add(
        "L-bar values over all self-maps of C4",
        vec![1],
        c4.as_ref().map_err(clone_err).and_then(|c| Ok(lefschetz_spectrum(c, Theory::Cubical, CubicalOptions::default(), &guard)?.values())),
    );
    t.add(
        "C4 is contractible but not strongly contractible",
        (true, false),
        c4.as_ref().map_err(clone_err).and_then(|c| Ok((is_contractible(c, &guard)?, is_strongly_contractible(c, &guard)?))),
    );
    t.add(
        "ordinary classes of C8 and their L-bar values",
        vec![0, 1, 2],
        load("cycle_08").and_then(|c| {
            let classes = homotopy_classes(&c, HomotopyKind::Ordinary, &guard)?;
            let ctx = LefschetzContext::new(&c, Theory::Cubical)?;
            let mut v: Vec<i64> = (0..classes.len()).map(|i| ctx.value(classes.class(i)[0].as_slice())).collect();
            v.sort();
            Ok(v)
        }),
    );
    for n in 5..=8 {
        t.add(
            format!("L = L-bar in {{0,1,2}} for every self-map of C{n}"),
            vec![0, 1, 2],
            fixtures::cycle(n).and_then(|c| {
                let s = lefschetz_spectrum(&c, Theory::Simplicial, CubicalOptions::default(), &guard)?.values();
                let b = lefschetz_spectrum(&c, Theory::Cubical, CubicalOptions::default(), &guard)?.values();
                Ok(if s == b { s } else { Vec::new() })
            }),
        );
    }
    t.add("fixed point spectrum of [0,1]", vec![0, 1, 2], load("cube_1").and_then(|i| Ok(fixed_point_spectrum(&i, &guard)?.values())));
    t.add("fixed point spectrum of C4 (a corner fold fixes 3 points)", vec![0, 1, 2, 3, 4], c4.as_ref().map_err(clone_err).and_then(|c| Ok(fixed_point_spectrum(c, &guard)?.values())));
    for n in [2usize, 3] {
        t.add(
            format!("antipodal map of I^{n}: all points {n}-approximate, none {}-approximate", n - 1),
            (1usize << n, 0usize),
            fixtures::cube(n).and_then(|c| {
                let f = fixtures::antipodal(&c)?;
                Ok((f.approx_fixed_points(n)?.len(), f.approx_fixed_points(n - 1)?.len()))
            }),
        );
    }

    if options.include_slow {
        let robot = load("robot");
        t.add(
            "greedy strong reduction of the robot",
            (26usize, true),
            robot.as_ref().map_err(clone_err).and_then(|r| {
                let red = thin(r, HomotopyKind::Strong, ThinMode::greedy(), &guard)?;
                Ok((red.reduced.len(), red.validate()))
            }),
        );
        let ordinary = robot.as_ref().map_err(clone_err).and_then(|r| thin(r, HomotopyKind::Ordinary, ThinMode::Greedy { max_batch: 2 }, &guard));
        t.add(
            "greedy ordinary reduction of the robot is a certified 14-cycle",
            (14usize, true, true),
            ordinary.as_ref().map_err(clone_err).map(|red| {
                (red.reduced.len(), red.validate(), fixtures::cycle_order(&red.reduced).is_ok())
            }),
        );
        t.add(
            "L-bar spectrum of the robot through its 14-cycle reduction",
            vec![0, 1, 2],
            ordinary.as_ref().map_err(clone_err).and_then(|red| {
                let s = lefschetz_spectrum(&red.reduced, Theory::Cubical, CubicalOptions::default(), &guard)?;
                let ctx = LefschetzContext::new(&red.original, Theory::Cubical)?;
                for (v, w) in s.witnesses() {
                    let lifted = red.lift(w)?;
                    if ctx.report(&lifted)?.value != v {
                        return Err(crate::Error::Internal(format!("lifted witness for {v} disagrees")));
                    }
                }
                Ok(s.values())
            }),
        );
    }
    t.0
}

fn clone_err(e: &crate::Error) -> crate::Error {
    crate::Error::Internal(e.to_string())
}
