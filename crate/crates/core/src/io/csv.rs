//! CSV schemas. Reals are written with 17 significant digits so files
//! round-trip exactly and identical runs give identical bytes.
//!
//! - `norms.csv`: `t,l2,l4,linf,h1,hs_<s>...,d1a_hs,d2b_hs,diss1_int,diss2_int`
//! - `h1_dissipation.csv`: `t,d1a_h1,d2b_h1,h1_diss1_int,h1_diss2_int`
//! - `verdicts.csv`: `monitor,status,worst_violation,tolerance,t,empirical`
//! - `sweep.csv`: `alpha,beta,regime,hs_growth,energy_ledger,maximum_principle,h1_bound,blow_up`
//! - `lemmas.csv`: `test,params,lhs,rhs,ratio`

use std::fmt::Write as _;

use crate::diagnostics::{MonitorVerdict, NormSample, NormSeries, SeriesMeta, SweepRow};
use crate::error::{Error, Result};

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn norms_header(s_list: &[f64]) -> String {
    let mut cols = vec!["t", "l2", "l4", "linf", "h1"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    cols.extend(s_list.iter().map(|s| format!("hs_{s}")));
    cols.extend(["d1a_hs", "d2b_hs", "diss1_int", "diss2_int"].map(String::from));
    cols.join(",")
}

pub const H1_DISSIPATION_HEADER: &str = "t,d1a_h1,d2b_h1,h1_diss1_int,h1_diss2_int";

pub fn norms_csv(series: &NormSeries) -> String {
    let mut out = norms_header(&series.meta.s_list);
    out.push('\n');
    for s in &series.samples {
        let mut row = vec![num(s.t), num(s.l2), num(s.l4), num(s.linf), num(s.h1)];
        row.extend(s.hs.iter().map(|&v| num(v)));
        row.extend([num(s.d1a_hs), num(s.d2b_hs), num(s.diss1_int), num(s.diss2_int)]);
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn h1_dissipation_csv(series: &NormSeries) -> String {
    let mut out = format!("{H1_DISSIPATION_HEADER}\n");
    for s in &series.samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(s.t),
            num(s.d1a_h1),
            num(s.d2b_h1),
            num(s.h1_diss1_int),
            num(s.h1_diss2_int)
        );
    }
    out
}

fn rows(text: &str, header: &str) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == header => {}
        Some(h) => return Err(Error::invalid(format!("unexpected CSV header '{h}' (want '{header}')"))),
        None => return Err(Error::invalid("empty CSV")),
    }
    let width = header.split(',').count();
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            let v: std::result::Result<Vec<f64>, _> = l.split(',').map(|x| x.trim().parse::<f64>()).collect();
            match v {
                Ok(v) if v.len() == width => Ok(v),
                Ok(v) => Err(Error::invalid(format!("row {}: {} columns, want {width}", i + 1, v.len()))),
                Err(e) => Err(Error::invalid(format!("row {}: {e}", i + 1))),
            }
        })
        .collect()
}

/// Rebuilds a series from `norms.csv` and, when available, `h1_dissipation.csv`.
pub fn read_norm_series(norms: &str, h1: Option<&str>, meta: SeriesMeta) -> Result<NormSeries> {
    let ns = meta.s_list.len();
    let main = rows(norms, &norms_header(&meta.s_list))?;
    let extra = match h1 {
        Some(text) => Some(rows(text, H1_DISSIPATION_HEADER)?),
        None => None,
    };
    if let Some(e) = &extra {
        if e.len() != main.len() {
            return Err(Error::invalid("norms.csv and h1_dissipation.csv differ in length"));
        }
    }
    let samples = main
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let x = extra.as_ref().map(|e| &e[i]);
            NormSample {
                t: r[0],
                l2: r[1],
                l4: r[2],
                linf: r[3],
                h1: r[4],
                hs: r[5..5 + ns].to_vec(),
                d1a_hs: r[5 + ns],
                d2b_hs: r[6 + ns],
                diss1_int: r[7 + ns],
                diss2_int: r[8 + ns],
                d1a_h1: x.map_or(0.0, |x| x[1]),
                d2b_h1: x.map_or(0.0, |x| x[2]),
                h1_diss1_int: x.map_or(0.0, |x| x[3]),
                h1_diss2_int: x.map_or(0.0, |x| x[4]),
            }
        })
        .collect();
    let series = NormSeries { meta, samples };
    series.validate()?;
    Ok(series)
}

pub fn verdicts_csv(verdicts: &[MonitorVerdict]) -> String {
    let mut out = format!("{}\n", MonitorVerdict::CSV_HEADER);
    for v in verdicts {
        out.push_str(&v.csv_row());
        out.push('\n');
    }
    out
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{}\n", SweepRow::CSV_HEADER);
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
