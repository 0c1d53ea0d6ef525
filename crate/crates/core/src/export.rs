//! CSV and JSON serialization of pipeline results. Reals are written with
//! 15 significant digits and rationals as `num/den`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gelfond::{CurvePoint, RowStatus, Table1Row, Table2Row};
use crate::numeric::fmt_sig15;
use crate::polyseries::ExponentFitRow;
use crate::sturmian::{StaircasePoint, SturmianCycle};

/// Version of every JSON document emitted by [`to_json`].
pub const SCHEMA_VERSION: u32 = 1;

pub const TABLE1_HEADER: [&str; 6] = [
    "period",
    "rotation",
    "window_lo",
    "window_hi",
    "c_lo",
    "c_hi",
];
pub const TABLE2_HEADER: [&str; 5] = ["c", "beta", "gamma", "period", "status"];
pub const CYCLES_HEADER: [&str; 9] = [
    "q",
    "period",
    "rotation_num",
    "rotation_den",
    "base_digit",
    "s_min",
    "s_max",
    "window_lo",
    "window_hi",
];
pub const PROFILE_HEADER: [&str; 2] = ["x", "e"];
pub const FIT_HEADER: [&str; 4] = ["n", "gamma_n", "excess_n", "argmax_x"];
pub const SIGMA_HEADER: [&str; 2] = ["x", "abs_sigma"];
pub const CURVE_HEADER: [&str; 5] = ["c", "beta", "gamma", "period", "flag"];
pub const STAIRCASE_HEADER: [&str; 3] = ["lambda", "rho_estimate", "rho"];

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig15).unwrap_or_default()
}

fn write_rows<W: Write, const N: usize>(
    w: W,
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(&r)?;
    }
    out.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

pub fn write_table1<W: Write>(w: W, rows: &[Table1Row]) -> Result<()> {
    write_rows(
        w,
        TABLE1_HEADER,
        rows.iter().map(|r| {
            let iv = &r.interval;
            let win = iv.cycle.window();
            [
                iv.cycle.period.to_string(),
                iv.cycle.rotation.to_string(),
                win.lo.to_string(),
                win.hi.to_string(),
                fmt_sig15(iv.c_lo),
                fmt_sig15(iv.c_hi),
            ]
        }),
    )
}

pub fn status_label(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Ok => "OK",
        RowStatus::Skipped => "SKIPPED",
        RowStatus::Error => "ERROR",
    }
}

pub fn write_table2<W: Write>(w: W, rows: &[Table2Row]) -> Result<()> {
    write_rows(
        w,
        TABLE2_HEADER,
        rows.iter().map(|r| {
            [
                r.label.clone(),
                opt(r.beta),
                opt(r.gamma),
                r.period.map(|p| p.to_string()).unwrap_or_default(),
                status_label(r.status).to_string(),
            ]
        }),
    )
}

pub fn write_cycles<W: Write>(w: W, cycles: &[SturmianCycle]) -> Result<()> {
    write_rows(
        w,
        CYCLES_HEADER,
        cycles.iter().map(|c| {
            let win = c.window();
            [
                c.q.to_string(),
                c.period.to_string(),
                c.rotation.num().to_string(),
                c.rotation.den().to_string(),
                c.base_digit.to_string(),
                c.s_min.to_string(),
                c.s_max.to_string(),
                win.lo.to_string(),
                win.hi.to_string(),
            ]
        }),
    )
}

pub fn write_profile<W: Write>(w: W, rows: &[(f64, u32)]) -> Result<()> {
    write_rows(
        w,
        PROFILE_HEADER,
        rows.iter().map(|(x, e)| [fmt_sig15(*x), e.to_string()]),
    )
}

pub fn write_exponent_fit<W: Write>(w: W, rows: &[ExponentFitRow]) -> Result<()> {
    write_rows(
        w,
        FIT_HEADER,
        rows.iter().map(|r| {
            [
                r.n.to_string(),
                fmt_sig15(r.gamma_n),
                fmt_sig15(r.excess_n),
                fmt_sig15(r.argmax_x),
            ]
        }),
    )
}

pub fn write_sigma_profile<W: Write>(w: W, rows: &[(f64, f64)]) -> Result<()> {
    write_rows(
        w,
        SIGMA_HEADER,
        rows.iter().map(|(x, s)| [fmt_sig15(*x), fmt_sig15(*s)]),
    )
}

pub fn write_beta_curve<W: Write>(w: W, rows: &[CurvePoint]) -> Result<()> {
    write_rows(
        w,
        CURVE_HEADER,
        rows.iter().map(|r| {
            [
                fmt_sig15(r.c),
                opt(r.beta),
                opt(r.gamma),
                r.period.map(|p| p.to_string()).unwrap_or_default(),
                r.flag.clone().unwrap_or_default(),
            ]
        }),
    )
}

pub fn write_staircase<W: Write>(w: W, rows: &[StaircasePoint]) -> Result<()> {
    write_rows(
        w,
        STAIRCASE_HEADER,
        rows.iter().map(|r| {
            [
                fmt_sig15(r.lambda),
                fmt_sig15(r.rho_estimate),
                r.rho.map(|x| x.to_string()).unwrap_or_default(),
            ]
        }),
    )
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    kind: &'a str,
    data: &'a T,
}

/// Pretty JSON document `{schema_version, kind, data}`.
pub fn to_json<T: Serialize>(kind: &str, data: &T) -> Result<String> {
    serde_json::to_string_pretty(&Envelope {
        schema_version: SCHEMA_VERSION,
        kind,
        data,
    })
    .map_err(|e| Error::Io(e.to_string()))
}
