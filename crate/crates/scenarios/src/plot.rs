//! Minimal self-contained SVG line charts of a time series.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Result, ScenarioError};
use crate::pipeline::TimeSeriesRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// `|s|` (solid) and `|t|` (dot).
    Bloch,
    Doe,
    Capacity,
}

impl FromStr for PlotKind {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bloch" => Ok(PlotKind::Bloch),
            "doe" => Ok(PlotKind::Doe),
            "capacity" => Ok(PlotKind::Capacity),
            other => Err(ScenarioError::Config(format!("unknown plot `{other}`"))),
        }
    }
}

impl PlotKind {
    pub fn name(self) -> &'static str {
        match self {
            PlotKind::Bloch => "bloch",
            PlotKind::Doe => "doe",
            PlotKind::Capacity => "capacity",
        }
    }

    fn y_label(self) -> &'static str {
        match self {
            PlotKind::Bloch => "Bloch vector length",
            PlotKind::Doe => "DoE",
            PlotKind::Capacity => "capacity (bits)",
        }
    }
}

/// A labelled run to draw.
#[derive(Debug, Clone, Copy)]
pub struct PlotSeries<'a> {
    pub label: &'a str,
    pub records: &'a [TimeSeriesRecord],
}

#[derive(Debug)]
struct Curve {
    label: String,
    class: &'static str,
    points: Vec<(f64, f64)>,
}

fn curves(series: &[PlotSeries<'_>], which: PlotKind) -> Vec<Curve> {
    let pick = |recs: &[TimeSeriesRecord], f: fn(&TimeSeriesRecord) -> f64| {
        recs.iter().map(|r| (r.t, f(r))).collect::<Vec<_>>()
    };
    let style = |k: usize| if k == 0 { "solid" } else { "dot" };
    match which {
        PlotKind::Bloch => series
            .iter()
            .flat_map(|s| {
                [
                    Curve {
                        label: format!("{} |s|", s.label),
                        class: "solid",
                        points: pick(s.records, |r| r.s_len),
                    },
                    Curve {
                        label: format!("{} |t|", s.label),
                        class: "dot",
                        points: pick(s.records, |r| r.t_len),
                    },
                ]
            })
            .collect(),
        PlotKind::Doe => series
            .iter()
            .enumerate()
            .map(|(k, s)| Curve {
                label: s.label.to_string(),
                class: style(k),
                points: pick(s.records, |r| r.doe),
            })
            .collect(),
        PlotKind::Capacity => series
            .iter()
            .enumerate()
            .map(|(k, s)| Curve {
                label: s.label.to_string(),
                class: style(k),
                points: pick(s.records, |r| r.capacity),
            })
            .collect(),
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let frac = raw / mag;
    let nice = if frac < 1.5 {
        1.0
    } else if frac < 3.5 {
        2.0
    } else if frac < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad"];

/// Render an SVG chart of `which` against scaled time.
pub fn emit_plot<W: Write>(
    series: &[PlotSeries<'_>],
    mut out: W,
    which: PlotKind,
    title: &str,
) -> Result<()> {
    if series.is_empty() || series.iter().any(|s| s.records.is_empty()) {
        return Err(ScenarioError::Config("no records to plot".into()));
    }
    let curves = curves(series, which);
    let all = || curves.iter().flat_map(|c| c.points.iter());
    let (mut x0, mut x1) = all().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        (lo.min(p.0), hi.max(p.0))
    });
    let mut y0 = all().fold(0.0_f64, |lo, p| lo.min(p.1));
    let mut y1 = all().fold(0.0_f64, |hi, p| hi.max(p.1));
    if x1 <= x0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 < 1e-9 {
        y1 = y0 + 1.0;
    }
    let ystep = nice_step(y1 - y0);
    y0 = (y0 / ystep).floor() * ystep;
    y1 = (y1 / ystep).ceil() * ystep;
    let xstep = nice_step(x1 - x0);

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    svg.push_str(
        "<style>.solid{fill:none;stroke-width:1.4}.dot{fill:none;stroke-width:1.4;stroke-dasharray:2 3}\
         .axis{stroke:#000;stroke-width:1}.grid{stroke:#ddd;stroke-width:0.5}</style>\n",
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="18" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    let mut tick = (x0 / xstep).ceil() * xstep;
    while tick <= x1 + 1e-9 * xstep {
        let x = sx(tick);
        let _ = writeln!(
            svg,
            r#"<line class="grid" x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 16.0,
            trim(tick)
        );
        tick += xstep;
    }
    let mut tick = y0;
    while tick <= y1 + 1e-9 * ystep {
        let y = sy(tick);
        let _ = writeln!(
            svg,
            r#"<line class="grid" x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0,
            trim(tick)
        );
        tick += ystep;
    }
    let _ = writeln!(
        svg,
        r#"<rect class="axis" fill="none" x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">scaled time</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(16 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        TOP + ph / 2.0,
        which.y_label()
    );

    for (k, curve) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = curve
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline class="{}" stroke="{color}" points="{}"><title>{}</title></polyline>"#,
            curve.class,
            pts.join(" "),
            escape(&curve.label)
        );
        let ly = TOP + 16.0 + 16.0 * k as f64;
        let lx = LEFT + pw - 150.0;
        let _ = writeln!(
            svg,
            r#"<line class="{}" stroke="{color}" x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            curve.class,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(&curve.label)
        );
    }
    svg.push_str("</svg>\n");
    out.write_all(svg.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn trim(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
