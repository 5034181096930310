//! Static SVG plots generated from already-computed series. Plotting is
//! best-effort: callers log failures and carry on, the CSVs are the contract.

use std::path::Path;

use plotters::prelude::*;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn bounds(series: &[Series], log_log: bool) -> Option<((f64, f64), (f64, f64))> {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if log_log && (x <= 0.0 || y <= 0.0) {
                continue;
            }
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    if xs.is_empty() {
        return None;
    }
    let (xmin, xmax) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let (ymin, ymax) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let pad = |lo: f64, hi: f64| {
        let d = (hi - lo).abs().max(1e-12);
        (lo - 0.05 * d, hi + 0.05 * d)
    };
    Some((pad(xmin, xmax), pad(ymin, ymax)))
}

/// Multi-series line chart. With `log_log` both axes are log10 and
/// nonpositive points are dropped.
pub fn line_chart(
    path: &Path,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[Series],
    log_log: bool,
) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let palette = [&BLUE, &RED, &GREEN, &MAGENTA, &CYAN, &BLACK];
    let root = SVGBackend::new(path, (900, 620)).into_drawing_area();
    root.fill(&WHITE)?;

    let ((xmin, xmax), (ymin, ymax)) =
        bounds(series, log_log).ok_or_else(|| anyhow::anyhow!("nothing to plot"))?;

    macro_rules! draw {
        ($xr:expr, $yr:expr, $map:expr) => {{
            let mut chart = ChartBuilder::on(&root)
                .caption(title, ("sans-serif", 22))
                .margin(12)
                .x_label_area_size(40)
                .y_label_area_size(60)
                .build_cartesian_2d($xr, $yr)?;
            chart.configure_mesh().x_desc(xlabel).y_desc(ylabel).draw()?;
            for (i, s) in series.iter().enumerate() {
                let color = palette[i % palette.len()];
                let pts: Vec<(f64, f64)> = s
                    .points
                    .iter()
                    .filter(|(x, y)| {
                        x.is_finite() && y.is_finite() && (!log_log || (*x > 0.0 && *y > 0.0))
                    })
                    .map($map)
                    .collect();
                chart
                    .draw_series(LineSeries::new(pts, color))?
                    .label(s.label.clone())
                    .legend(move |(x, y)| {
                        PathElement::new(vec![(x, y), (x + 18, y)], color)
                    });
            }
            chart
                .configure_series_labels()
                .border_style(BLACK)
                .background_style(WHITE.mix(0.8))
                .draw()?;
        }};
    }

    if log_log {
        draw!(
            (xmin.log10()..xmax.log10()),
            (ymin.log10()..ymax.log10()),
            |&(x, y)| (x.log10(), y.log10())
        );
    } else {
        draw!((xmin..xmax), (ymin..ymax), |&(x, y)| (x, y));
    }
    root.present()?;
    Ok(())
}

/// Phase portrait: orbit curves in the (τ, τ̇) plane with stationary points
/// marked by circles.
pub fn portrait_chart(
    path: &Path,
    title: &str,
    orbits: &[Vec<(f64, f64)>],
    stationary: &[f64],
    tau_range: (f64, f64),
    taudot_range: (f64, f64),
) -> anyhow::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let root = SVGBackend::new(path, (900, 620)).into_drawing_area();
    root.fill(&WHITE)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 22))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(60)
        .build_cartesian_2d(tau_range.0..tau_range.1, taudot_range.0..taudot_range.1)?;
    chart.configure_mesh().x_desc("tau").y_desc("tau_dot").draw()?;
    for orbit in orbits {
        let pts: Vec<(f64, f64)> = orbit
            .iter()
            .filter(|(x, y)| {
                *x >= tau_range.0 && *x <= tau_range.1 && *y >= taudot_range.0 && *y <= taudot_range.1
            })
            .cloned()
            .collect();
        chart.draw_series(LineSeries::new(pts, &BLUE.mix(0.6)))?;
    }
    chart.draw_series(
        stationary.iter().map(|&tau| Circle::new((tau, 0.0), 5, RED.filled())),
    )?;
    root.present()?;
    Ok(())
}
