use std::path::Path;

use eurb::bounds::optimize_settings;
use eurb::{full_report, BoundReport64, DensityMatrix64, Observable64, Subsystem};
use rayon::prelude::*;

use crate::args::{BoundsArgs, Cli, FigureArgs, Format, SettingsArgs, SweepArgs};
use crate::family::StateSpec;
use crate::render::{self, fmt6, Row};
use crate::svg;
use crate::CliError;

fn report(rho: &DensityMatrix64, settings: &SettingsArgs, side: Subsystem) -> Result<BoundReport64, CliError> {
    let (r, s) = if settings.optimize_settings {
        let best = optimize_settings(rho);
        (best.obs_r, best.obs_s)
    } else {
        (settings.obs_r.observable(), settings.obs_s.observable())
    };
    full_report(rho, &r, &s, side).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn render_rows(format: Format, args: &str, rows: &[Row]) -> String {
    match format {
        Format::Table => render::table(rows),
        Format::Csv => render::csv(args, rows),
        Format::JsonLines => render::json_lines(rows),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn bounds(cli: &Cli, a: &BoundsArgs) -> Result<String, CliError> {
    let spec = a.state.resolve(None)?;
    let rho = spec.build()?;
    let rep = report(&rho, &a.settings, cli.side.into())?;
    let args = format!("bounds {} {} --side {}", a.state.canonical(None), a.settings.canonical(), cli.side);
    Ok(render_rows(cli.format, &args, &[Row { param: spec.label(), report: rep }]))
}

/// Evenly spaced points from `from` to `to`, both ends exact.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|k| if k + 1 == steps { to } else { from + (to - from) * (k as f64 / last) })
        .collect()
}

pub fn sweep_csv(cli: &Cli, a: &SweepArgs) -> Result<(String, Vec<Row>), CliError> {
    if a.steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {}", a.steps)));
    }
    if !(a.from.is_finite() && a.to.is_finite() && a.from < a.to) {
        return Err(CliError::Usage(format!("invalid range: need --from < --to, got {} and {}", a.from, a.to)));
    }
    let points = linspace(a.from, a.to, a.steps);
    let specs: Vec<StateSpec> = points
        .iter()
        .map(|&v| a.state.resolve(Some((a.param.as_str(), v))))
        .collect::<Result<_, _>>()?;
    let built: Vec<DensityMatrix64> = specs
        .iter()
        .zip(&points)
        .map(|(s, v)| {
            s.build()
                .map_err(|e| CliError::Usage(format!("{} = {v} is outside the valid domain: {}", a.param, e.message())))
        })
        .collect::<Result<_, _>>()?;

    let side = cli.side.into();
    let reports: Vec<Result<BoundReport64, CliError>> =
        built.par_iter().map(|rho| report(rho, &a.settings, side)).collect();
    let mut rows = Vec::with_capacity(points.len());
    for (v, rep) in points.iter().zip(reports) {
        rows.push(Row { param: fmt6(*v), report: rep? });
    }
    let args = format!(
        "sweep {} --param {} --from {} --to {} --steps {} {} --side {}",
        a.state.canonical(Some(&a.param)),
        a.param,
        a.from,
        a.to,
        a.steps,
        a.settings.canonical(),
        cli.side
    );
    Ok((args, rows))
}

pub fn sweep(cli: &Cli, a: &SweepArgs) -> Result<String, CliError> {
    let (args, rows) = sweep_csv(cli, a)?;
    match &a.out {
        Some(path) => {
            write_file(path, &render::csv(&args, &rows))?;
            Ok(String::new())
        }
        None => Ok(render_rows(cli.format, &args, &rows)),
    }
}

pub struct Figure {
    pub caption: &'static str,
    pub bars: &'static [&'static str],
    pub groups: Vec<Row>,
}

fn figure_group(spec: StateSpec, r: Observable64, s: Observable64, side: Subsystem) -> Result<Row, CliError> {
    let rho = spec.build()?;
    let report = full_report(&rho, &r, &s, side).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Row { param: spec.label(), report })
}

pub fn figure_data(id: u32, side: Subsystem) -> Result<Figure, CliError> {
    let (z, x, y) = (Observable64::z(), Observable64::x(), Observable64::y());
    match id {
        1 => Ok(Figure {
            caption: "Lower bounds L1-L4: Werner p=0.723, mixed marginal c=(0.5,-0.2,-0.3), Bell diagonal p=0.5",
            bars: &["L1", "L2", "L3", "L4"],
            groups: vec![
                figure_group(StateSpec::Werner { p: 0.723 }, z, x, side)?,
                figure_group(StateSpec::MixedMarginal { cx: 0.5, cy: -0.2, cz: -0.3 }, z, x, side)?,
                // σ_y, not σ_x: both Bell components anticorrelate along y,
                // so only the z term carries the mixing entropy.
                figure_group(StateSpec::BellDiagonal { p: 0.5 }, z, y, side)?,
            ],
        }),
        2 => Ok(Figure {
            caption: "Lower bounds L0-L4 for the classical state p=0.5",
            bars: &["L0", "L1", "L2", "L3", "L4"],
            groups: vec![figure_group(StateSpec::Classical { p: 0.5 }, z, x, side)?],
        }),
        other => Err(CliError::Usage(format!("unknown figure id {other} (expected 1 or 2)"))),
    }
}

impl Figure {
    pub fn svg(&self) -> String {
        let groups = self
            .groups
            .iter()
            .map(|row| {
                let v = row.values();
                let values = self.bars.iter().map(|b| v[b[1..].parse::<usize>().unwrap()]).collect();
                (row.param.clone(), values)
            })
            .collect();
        svg::render(&svg::Chart { title: self.caption, y_label: "lower bound (bits)", series: self.bars, groups })
    }
}

pub fn figure(cli: &Cli, a: &FigureArgs) -> Result<String, CliError> {
    let fig = figure_data(a.id, cli.side.into())?;
    let args = format!("figure --id {} --side {}", a.id, cli.side);
    if let Some(path) = &a.svg {
        write_file(path, &fig.svg())?;
    }
    match &a.out {
        Some(path) => {
            write_file(path, &render::csv(&args, &fig.groups))?;
            Ok(String::new())
        }
        None => Ok(render_rows(cli.format, &args, &fig.groups)),
    }
}
