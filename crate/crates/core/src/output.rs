//! CSV export and import of centrality tables.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::engine::BetweennessResult;
use crate::error::{Error, Result};
use crate::graph::TemporalGraph;

/// Formats like C's `%.12g`, with Rust-style exponents (`1.5e-7`).
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-5..12).contains(&exp) {
        let mant = trim_zeros(mant);
        return format!("{mant}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_bvt<W: Write>(w: W, g: &TemporalGraph, r: &BetweennessResult) -> Result<()> {
    let table = r
        .table()
        .ok_or_else(|| Error::Argument("result holds marginals only".into()))?;
    let width = r.horizon() as usize + 1;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["node", "time", "value"])?;
    for (c, &x) in table.iter().enumerate() {
        let (v, t) = (c / width, (c % width) as u32);
        out.write_record([g.label(v), &g.time_label(t).to_string(), &fmt_sig12(x)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_bv<W: Write>(w: W, labels: &[String], values: &[f64]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["node", "value"])?;
    for (l, &x) in labels.iter().zip(values) {
        out.write_record([l.as_str(), &fmt_sig12(x)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_bt<W: Write>(w: W, g: &TemporalGraph, r: &BetweennessResult) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["time", "value"])?;
    for (t, &x) in r.b_t().iter().enumerate() {
        out.write_record([g.time_label(t as u32).to_string(), fmt_sig12(x)])?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `P.bvt.csv` (unless marginals only), `P.bv.csv` and `P.bt.csv`;
/// returns the paths written.
pub fn write_result(
    prefix: &str,
    g: &TemporalGraph,
    r: &BetweennessResult,
) -> Result<Vec<PathBuf>> {
    let path = |ext: &str| PathBuf::from(format!("{prefix}.{ext}.csv"));
    let mut written = Vec::new();
    if r.table().is_some() {
        let p = path("bvt");
        write_bvt(File::create(&p)?, g, r)?;
        written.push(p);
    }
    let p = path("bv");
    write_bv(File::create(&p)?, g.labels(), r.b_v())?;
    written.push(p);
    let p = path("bt");
    write_bt(File::create(&p)?, g, r)?;
    written.push(p);
    Ok(written)
}

/// Reads a two-column `key,value` CSV with a header row.
pub fn read_key_values<R: Read>(r: R) -> Result<Vec<(String, f64)>> {
    let mut rd = csv::Reader::from_reader(r);
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        if rec.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        let v: f64 = rec[1].trim().parse().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid value {:?}", &rec[1]),
        })?;
        out.push((rec[0].to_string(), v));
    }
    Ok(out)
}

pub fn read_key_values_file(path: &Path) -> Result<Vec<(String, f64)>> {
    read_key_values(File::open(path)?)
}
