//! SVG line plots of index values against K.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Result;

use clustval::{RandomMethodId, Source};

use crate::pipeline::ValidationResult;

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One line: a proper method's values over K.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(usize, f64)>,
}

/// A random clustering's value at K, drawn as the generator's letter.
#[derive(Debug, Clone, Copy)]
pub struct Mark {
    pub k: usize,
    pub generator: RandomMethodId,
    pub value: f64,
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders one plot. Non-finite values are dropped and counted in a note.
pub fn render_svg(title: &str, series: &[Series], marks: &[Mark]) -> String {
    let mut omitted = 0;
    let series: Vec<Series> = series
        .iter()
        .map(|s| Series {
            label: s.label.clone(),
            points: s
                .points
                .iter()
                .copied()
                .filter(|(_, v)| {
                    let ok = v.is_finite();
                    omitted += usize::from(!ok);
                    ok
                })
                .collect(),
        })
        .collect();
    let marks: Vec<Mark> = marks
        .iter()
        .copied()
        .filter(|m| {
            let ok = m.value.is_finite();
            omitted += usize::from(!ok);
            ok
        })
        .collect();

    let ks = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .chain(marks.iter().map(|m| m.k));
    let ys = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .chain(marks.iter().map(|m| m.value));
    let (kmin, kmax) = ks.fold((usize::MAX, 0), |(a, b), k| (a.min(k), b.max(k)));
    let (mut ylo, mut yhi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#, W / 2.0, esc(title));

    if kmin > kmax {
        let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">no values to plot</text>"#, W / 2.0, H / 2.0);
        if omitted > 0 {
            let _ = writeln!(svg, r#"<text x="{LEFT}" y="{}">{omitted} degenerate value(s) omitted</text>"#, H - 10.0);
        }
        svg.push_str("</svg>\n");
        return svg;
    }
    if yhi - ylo < 1e-12 {
        ylo -= 0.5;
        yhi += 0.5;
    }
    let pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;
    let span_k = (kmax - kmin).max(1) as f64;
    let x = |k: f64| LEFT + (k - kmin as f64 + 0.5) / (span_k + 1.0) * (W - LEFT - RIGHT);
    let y = |v: f64| TOP + (yhi - v) / (yhi - ylo) * (H - TOP - BOTTOM);

    let (x0, x1, y0, y1) = (LEFT, W - RIGHT, TOP, H - BOTTOM);
    let _ = writeln!(svg, r##"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="#444"/>"##, x1 - x0, y1 - y0);
    for k in kmin..=kmax {
        let xk = x(k as f64);
        let _ = writeln!(svg, r#"<text x="{xk:.1}" y="{}" text-anchor="middle">{k}</text>"#, y1 + 16.0);
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">K</text>"#, (x0 + x1) / 2.0, y1 + 36.0);
    for i in 0..=4 {
        let v = ylo + (yhi - ylo) * i as f64 / 4.0;
        let _ = writeln!(svg, r#"<text x="{}" y="{:.1}" text-anchor="end">{:.3}</text>"#, x0 - 6.0, y(v) + 4.0, v);
    }

    for m in &marks {
        let slot = RandomMethodId::ALL.iter().position(|&g| g == m.generator).unwrap_or(0) as f64;
        let dx = (slot - 1.5) * 6.0;
        let _ = writeln!(
            svg,
            r##"<text class="random" x="{:.1}" y="{:.1}" text-anchor="middle" fill="#888">{}</text>"##,
            x(m.k as f64) + dx,
            y(m.value) + 4.0,
            m.generator.mark()
        );
    }

    for (i, s) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(k, v)| format!("{:.1},{:.1}", x(k as f64), y(v)))
            .collect();
        if !pts.is_empty() {
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let ly = TOP + 16.0 * (i as f64 + 1.0);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{ly:.1}" fill="{colour}">{}</text>"#,
            x1 + 10.0,
            esc(&s.label)
        );
    }
    if !marks.is_empty() {
        let ly = TOP + 16.0 * (series.len() as f64 + 2.0);
        let _ = writeln!(svg, r##"<text x="{}" y="{ly:.1}" fill="#888">random: c n f a</text>"##, x1 + 10.0);
    }
    if omitted > 0 {
        let _ = writeln!(svg, r#"<text x="{x0}" y="{}">{omitted} degenerate value(s) omitted</text>"#, H - 8.0);
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes one plot per index, stability statistic and composite into `dir`.
pub fn emit_plots(r: &ValidationResult, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let coll = &r.collection;
    let mut methods: Vec<_> = coll
        .entries()
        .iter()
        .filter_map(|e| match e.source {
            Source::Proper(m) => Some(m),
            Source::Random(_) => None,
        })
        .collect();
    methods.sort();
    methods.dedup();

    let gather = |value: &dyn Fn(usize) -> Option<f64>| {
        let series: Vec<Series> = methods
            .iter()
            .map(|&m| Series {
                label: m.name().to_string(),
                points: coll
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.source == Source::Proper(m))
                    .filter_map(|(i, e)| value(i).map(|v| (e.k, v)))
                    .collect(),
            })
            .collect();
        let marks: Vec<Mark> = coll
            .entries()
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e.source {
                Source::Random(g) => value(i).map(|v| Mark {
                    k: e.k,
                    generator: g,
                    value: v,
                }),
                Source::Proper(_) => None,
            })
            .collect();
        (series, marks)
    };

    let mut written = Vec::new();
    let mut save = |name: &str, svg: String| -> Result<()> {
        let path = dir.join(format!("{name}.svg"));
        fs::write(&path, svg)?;
        written.push(path);
        Ok(())
    };
    for (c, id) in coll.components().iter().enumerate() {
        let (series, marks) = gather(&|i| coll.entries()[i].raw[c]);
        save(id.name(), render_svg(id.name(), &series, &marks))?;
    }
    if r.cvnn.iter().any(Option::is_some) {
        let (series, _) = gather(&|i| r.cvnn[i]);
        save("cvnn", render_svg("cvnn", &series, &[]))?;
    }
    for comp in &r.composites {
        let (series, marks) = gather(&|i| comp.aggregates.values[i]);
        let name = &comp.spec.name;
        save(name, render_svg(&format!("{name} (calibrated)"), &series, &marks))?;
    }
    Ok(written)
}
