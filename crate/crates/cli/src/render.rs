//! Table, CSV and JSON-lines rendering of bound reports.

use std::fmt::Write as _;

use eurb::BoundReport64;
use serde::Serialize;

pub const CSV_HEADER: &str = "param,L0,L1,L2,L3,L4,LHS_ent,LHS_fano";

/// Six decimals; the formatter rounds the exact binary value, so ties go to even.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// One labelled report, the unit every output format is built from.
#[derive(Debug, Clone)]
pub struct Row {
    pub param: String,
    pub report: BoundReport64,
}

impl Row {
    pub fn values(&self) -> [f64; 7] {
        let r = &self.report;
        [r.l0, r.l1, r.l2, r.l3, r.l4, r.lhs_entropic, r.lhs_fano]
    }
}

pub fn csv(args: &str, rows: &[Row]) -> String {
    let mut out = format!("# args: {args}\n{CSV_HEADER}\n");
    for row in rows {
        out.push_str(&row.param);
        for v in row.values() {
            out.push(',');
            out.push_str(&fmt6(v));
        }
        out.push('\n');
    }
    out
}

pub fn table(rows: &[Row]) -> String {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| std::iter::once(r.param.clone()).chain(r.values().map(fmt6)).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| cells.iter().map(|row| row[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, items: &[&str]| {
        for (c, item) in items.iter().enumerate() {
            if c == 0 {
                let _ = write!(out, "{item:<w$}", w = widths[0]);
            } else {
                let _ = write!(out, "  {item:>w$}", w = widths[c]);
            }
        }
        out.push('\n');
    };
    line(&mut out, &header);
    for row in &cells {
        let items: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&mut out, &items);
    }
    let degrees = |o: &eurb::Observable64| format!("({:.2}, {:.2})", o.theta().to_degrees(), o.phi().to_degrees());
    if let Some(first) = rows.first() {
        let r = &first.report;
        let settings_vary = rows.iter().any(|x| x.report.obs_r != r.obs_r || x.report.obs_s != r.obs_s);
        if !settings_vary {
            let _ = writeln!(out, "settings: R = {} S = {} (theta, phi in degrees)", degrees(&r.obs_r), degrees(&r.obs_s));
        }
        let _ = writeln!(out, "side: {}", if r.side == eurb::Subsystem::A { "A" } else { "B" });
    }
    if rows.iter().any(|r| !r.report.converged) {
        out.push_str("warning: classical-information optimizer hit its iteration cap\n");
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    param: &'a str,
    #[serde(rename = "L0")]
    l0: f64,
    #[serde(rename = "L1")]
    l1: f64,
    #[serde(rename = "L2")]
    l2: f64,
    #[serde(rename = "L3")]
    l3: f64,
    #[serde(rename = "L4")]
    l4: f64,
    #[serde(rename = "LHS_ent")]
    lhs_ent: f64,
    #[serde(rename = "LHS_fano")]
    lhs_fano: f64,
    obs_r: [f64; 2],
    obs_s: [f64; 2],
    side: &'a str,
    converged: bool,
}

pub fn json_lines(rows: &[Row]) -> String {
    let mut out = String::new();
    for row in rows {
        let r = &row.report;
        let j = JsonRow {
            param: &row.param,
            l0: r.l0,
            l1: r.l1,
            l2: r.l2,
            l3: r.l3,
            l4: r.l4,
            lhs_ent: r.lhs_entropic,
            lhs_fano: r.lhs_fano,
            obs_r: [r.obs_r.theta(), r.obs_r.phi()],
            obs_s: [r.obs_s.theta(), r.obs_s.phi()],
            side: if r.side == eurb::Subsystem::A { "A" } else { "B" },
            converged: r.converged,
        };
        out.push_str(&serde_json::to_string(&j).expect("plain struct serializes"));
        out.push('\n');
    }
    out
}
