//! CSV rendering of scaling rows. Numbers are written in scientific
//! notation with 17 significant digits, which round-trips every `f64`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::experiments::ScalingRow;

pub const SCALING_HEADER: [&str; 6] = ["eps", "p", "delta1", "S_p", "S_0", "identity_residual"];

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_scaling_csv<W: Write>(rows: &[ScalingRow], out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Config(format!("cannot write CSV: {e}"));
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(SCALING_HEADER).map_err(io_err)?;
    for r in rows {
        let fields = [r.eps, r.p, r.delta1, r.slippage_p, r.slippage_0, r.identity_residual];
        writer
            .write_record(fields.iter().map(|v| format_number(*v)))
            .map_err(io_err)?;
    }
    writer
        .flush()
        .map_err(|e| Error::Config(format!("cannot write CSV: {e}")))
}

pub fn scaling_csv_string(rows: &[ScalingRow]) -> String {
    let mut buf = Vec::new();
    write_scaling_csv(rows, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

pub fn parse_scaling_csv(text: &str) -> Result<Vec<ScalingRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Config(format!("bad CSV header: {e}")))?;
    if header.iter().ne(SCALING_HEADER) {
        return Err(Error::Config(format!(
            "unexpected CSV header {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    reader
        .records()
        .map(|record| {
            let record = record.map_err(|e| Error::Config(format!("bad CSV record: {e}")))?;
            let v: Vec<f64> = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| Error::Config(format!("bad number {f:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            if v.len() != SCALING_HEADER.len() {
                return Err(Error::Config(format!("expected 6 fields, got {}", v.len())));
            }
            Ok(ScalingRow {
                eps: v[0],
                p: v[1],
                delta1: v[2],
                slippage_p: v[3],
                slippage_0: v[4],
                identity_residual: v[5],
            })
        })
        .collect()
}
