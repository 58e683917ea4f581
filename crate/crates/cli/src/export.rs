//! Comma-separated export of grids and trajectories.

use std::path::Path;

use crate::response::Output;
use crate::wire::Ideal;
use crate::{round12, Failure};

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn num(x: f64) -> String {
    serde_json::to_string(&round12(x)).unwrap_or_default()
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn ideal(z: &Ideal) -> [String; 2] {
    match z {
        Ideal::Finite([re, im]) => [num(*re), num(*im)],
        Ideal::Infinity(_) => ["inf".into(), "inf".into()],
    }
}

/// The tabular form of a result, for commands that produce one.
pub fn table(out: &Output) -> Option<Table> {
    let (header, rows): (Vec<&'static str>, Vec<Vec<String>>) = match out {
        Output::Kp(r) => (
            vec!["index", "value"],
            r.values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), num(*v)])
                .collect(),
        ),
        Output::Height(r) => (
            vec!["index", "height"],
            r.heights
                .iter()
                .enumerate()
                .map(|(i, v)| vec![i.to_string(), num(*v)])
                .collect(),
        ),
        Output::Project(r) => (
            vec!["index", "foot_re", "foot_im", "foot_h", "ideal_re", "ideal_im"],
            r.projections
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let [a, b] = ideal(&p.ideal);
                    vec![i.to_string(), num(p.foot[0]), num(p.foot[1]), num(p.foot[2]), a, b]
                })
                .collect(),
        ),
        Output::Trace(r) => (
            vec!["t", "height", "horizontal_speed", "re", "im", "h"],
            r.samples
                .iter()
                .map(|s| {
                    vec![
                        num(s.t),
                        num(s.height),
                        num(s.horizontal_speed),
                        num(s.uhs[0]),
                        num(s.uhs[1]),
                        num(s.uhs[2]),
                    ]
                })
                .collect(),
        ),
        Output::SolveSchwarzian(r) => (
            vec!["t", "z_re", "z_im", "phi_re", "phi_im"],
            r.samples
                .iter()
                .map(|s| {
                    let [a, b] = ideal(&s.phi);
                    vec![num(s.t), num(s.z[0]), num(s.z[1]), a, b]
                })
                .collect(),
        ),
        Output::Flow(r) => (
            vec!["t", "k", "k1", "k2"],
            r.trajectory
                .as_ref()?
                .iter()
                .map(|s| vec![num(s.t), num(s.k), num(s.principal[0]), num(s.principal[1])])
                .collect(),
        ),
        Output::Apriori(r) => (
            vec![
                "u",
                "v",
                "gauss_re",
                "gauss_im",
                "curvature",
                "test_distance",
                "horoball_level",
            ],
            r.samples
                .iter()
                .map(|s| {
                    let [a, b] = ideal(&s.gauss);
                    vec![
                        num(s.param[0]),
                        num(s.param[1]),
                        a,
                        b,
                        num(s.curvature),
                        opt(s.test_distance),
                        num(s.horoball_level),
                    ]
                })
                .collect(),
        ),
        Output::HoroballCheck(r) => (
            vec!["index", "contained"],
            r.contained
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.to_string()])
                .collect(),
        ),
        Output::Schwarzian(r) => (
            vec!["k", "re", "im"],
            r.coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), num(c[0]), num(c[1])])
                .collect(),
        ),
        Output::Maxdisk(_) | Output::Hessian(_) | Output::Models(_) => return None,
    };
    Some(Table { header, rows })
}

pub fn write_csv(path: &Path, out: &Output) -> Result<(), Failure> {
    let t = table(out).ok_or_else(|| Failure::validation("this command has no tabular export"))?;
    let io = |e: csv::Error| Failure::validation(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(&t.header).map_err(io)?;
    for row in &t.rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Failure::validation(format!("cannot write {}: {e}", path.display())))
}
