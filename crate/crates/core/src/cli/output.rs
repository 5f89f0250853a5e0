use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::CliError;

pub(crate) fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))
}

/// CSV with a `#` header recording command, config and seed.
pub(crate) struct Csv {
    text: String,
}

impl Csv {
    pub fn new<C: Serialize>(command: &str, config: &C, seed: u64, columns: &[&str]) -> Self {
        let json = serde_json::to_string(config).expect("configs serialize");
        let mut text = format!("# floquet-majorana {command}\n# config: {json}\n# seed: {seed}\n");
        text.push_str(&columns.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn comment(&mut self, line: &str) {
        let _ = writeln!(self.text, "# {line}");
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let cells: Vec<String> = cells.into_iter().collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn save(&self, dir: &Path, name: &str) -> Result<(), CliError> {
        write_file(dir, name, &self.text)
    }
}

#[derive(Serialize)]
struct Envelope<'a, C, T> {
    command: &'a str,
    config: &'a C,
    seed: u64,
    result: &'a T,
}

pub(crate) fn write_json<C: Serialize, T: Serialize>(
    dir: &Path,
    name: &str,
    command: &str,
    config: &C,
    seed: u64,
    result: &T,
) -> Result<(), CliError> {
    let env = Envelope { command, config, seed, result };
    let mut text = serde_json::to_string_pretty(&env).expect("reports serialize");
    text.push('\n');
    write_file(dir, name, &text)
}

/// Step plot of integer series against `x`; gaps (`None`) break the line.
pub(crate) fn staircase_svg(x_label: &str, x: &[f64], series: &[(&str, &str, Vec<Option<i64>>)]) -> String {
    let (w, h, pad) = (720.0, 420.0, 48.0);
    let (x0, x1) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let ys = series.iter().flat_map(|s| s.2.iter().flatten().copied());
    let (y0, y1) = ys.fold((0i64, 1i64), |(a, b), v| (a.min(v), b.max(v)));
    let sx = |v: f64| pad + (v - x0) / (x1 - x0).max(f64::MIN_POSITIVE) * (w - 2.0 * pad);
    let sy = |v: i64| h - pad - (v - y0) as f64 / (y1 - y0) as f64 * (h - 2.0 * pad);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{pad}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{pad}\" y1=\"{pad}\" x2=\"{pad}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{ty}\" font-size=\"14\" text-anchor=\"middle\">{x_label}</text>\n",
        b = h - pad,
        r = w - pad,
        cx = w / 2.0,
        ty = h - 12.0,
    );
    for v in y0..=y1 {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\">{v}</text>",
            pad - 6.0,
            sy(v) + 4.0
        );
    }
    for (i, (name, color, ys)) in series.iter().enumerate() {
        let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for (j, (&xv, y)) in x.iter().zip(ys).enumerate() {
            match y {
                Some(v) => {
                    let run = runs.last_mut().expect("non-empty");
                    if let Some(&(_, py)) = run.last() {
                        let mid = 0.5 * (x[j - 1] + xv);
                        run.push((sx(mid), py));
                        run.push((sx(mid), sy(*v)));
                    }
                    run.push((sx(xv), sy(*v)));
                }
                None => runs.push(Vec::new()),
            }
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            let pts: Vec<String> = run.iter().map(|(a, b)| format!("{a:.1},{b:.1}")).collect();
            let _ = writeln!(
                svg,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>",
                pts.join(" ")
            );
        }
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"{color}\">{name}</text>",
            w - pad - 60.0,
            pad + 16.0 * i as f64
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Shortest round-trip decimal.
pub(crate) fn num(x: f64) -> String {
    format!("{x}")
}
