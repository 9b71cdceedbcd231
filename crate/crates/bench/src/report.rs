//! `results.csv` and `summary.txt`.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::Result;

use clustval::indexes::is_degenerate;

use crate::pipeline::ValidationResult;

pub const RESULTS_HEADER: [&str; 13] = [
    "replicate",
    "entry",
    "source",
    "method",
    "K",
    "draw",
    "index_id",
    "kind",
    "raw_value",
    "calibrated_value",
    "degenerate_flag",
    "selected",
    "ari",
];

fn num(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn results_writer<W: Write>(out: W) -> Result<csv::Writer<W>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    Ok(w)
}

/// Appends one replicate in long format. Failed (method, K) cells appear with
/// an empty entry and empty values.
pub fn write_results<W: Write>(w: &mut csv::Writer<W>, replicate: usize, r: &ValidationResult) -> Result<()> {
    let coll = &r.collection;
    let selected = |criterion: &str, e: usize| r.selection(criterion).is_some_and(|p| p.entry == e);
    for (e, entry) in coll.entries().iter().enumerate() {
        let head = [
            replicate.to_string(),
            e.to_string(),
            entry.source.kind().to_string(),
            entry.source.method_name().to_string(),
            entry.k.to_string(),
            entry.draw.to_string(),
        ];
        let ari = num(r.ari[e]);
        let mut row = |id: &str, kind: &str, raw: Option<f64>, cal: Option<f64>, sel: bool| {
            let mut rec: Vec<String> = head.to_vec();
            rec.extend([
                id.to_string(),
                kind.to_string(),
                num(raw),
                num(cal),
                raw.map(|v| u8::from(is_degenerate(v)).to_string()).unwrap_or_default(),
                u8::from(sel).to_string(),
                ari.clone(),
            ]);
            w.write_record(&rec)
        };
        for (c, id) in coll.components().iter().enumerate() {
            let Some(raw) = entry.raw[c] else { continue };
            let kind = match id {
                clustval::ComponentId::Index(_) => "index",
                clustval::ComponentId::Stability(_) => "stability",
            };
            row(id.name(), kind, Some(raw), r.calibrated.value(e, c), selected(id.name(), e))?;
        }
        if let Some(v) = r.cvnn[e] {
            row("cvnn", "index", Some(v), None, selected("cvnn", e))?;
        }
        for comp in &r.composites {
            if let Some(v) = comp.aggregates.values[e] {
                let name = &comp.spec.name;
                row(name, "composite", Some(v), None, selected(name, e))?;
            }
        }
    }
    for cell in r.cells.iter().filter(|c| c.partition.is_none()) {
        w.write_record([
            replicate.to_string(),
            String::new(),
            "proper".into(),
            cell.method.name().into(),
            cell.k.to_string(),
            "0".into(),
            String::new(),
            "failed".into(),
            String::new(),
            String::new(),
            String::new(),
            "0".into(),
            String::new(),
        ])?;
    }
    Ok(())
}

/// Plain-text report for a single validation run.
pub fn validation_summary(title: &str, r: &ValidationResult) -> String {
    let mut s = String::new();
    let coll = &r.collection;
    let proper = coll.entries().iter().filter(|e| e.source.is_proper()).count();
    let _ = writeln!(s, "{title}");
    let _ = writeln!(
        s,
        "n = {}, {} proper clusterings, {} random clusterings (B = {})\n",
        r.n,
        proper,
        coll.entries().len() - proper,
        coll.b()
    );

    let _ = writeln!(s, "{:<16} {:<10} {:>3} {:>14} {:>8}", "criterion", "method", "K", "value", "ARI");
    for sel in &r.selections {
        match &sel.pick {
            Some(p) => {
                let _ = writeln!(
                    s,
                    "{:<16} {:<10} {:>3} {:>14.6} {:>8}",
                    sel.criterion,
                    p.method.name(),
                    p.k,
                    p.value,
                    p.ari.map(|a| format!("{a:.3}")).unwrap_or_else(|| "-".into())
                );
            }
            None => {
                let _ = writeln!(s, "{:<16} no usable clustering", sel.criterion);
            }
        }
    }

    for c in &r.composites {
        let _ = writeln!(s, "\n{} ranking (top 3):", c.spec.name);
        for (i, rk) in c.ranking.iter().take(3).enumerate() {
            let _ = writeln!(s, "  {}. {:<10} K = {:<3} {:.6}", i + 1, rk.source, rk.k, rk.value);
        }
    }

    if !r.diagnostics.is_empty() {
        let _ = writeln!(s, "\ndiagnostics ({}):", r.diagnostics.len());
        for d in &r.diagnostics {
            let _ = writeln!(s, "  {d}");
        }
    }
    s
}
