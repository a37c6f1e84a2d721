//! A plan file turned into a CSV and an SVG plot.
//!
//! cargo run --example sweep_csv -- out_dir

use std::path::PathBuf;

use emo_lab::harness::{run_experiment, scaling_svg, PlanSpec, PlotSeries};

const PLAN: &str = r#"
algos = ["nsga2", "smsemoa"]
ns = [16, 32, 64]
runs = 20
budget = 1_000_000
seed = 11
init_excludes_front = true
"#;

fn main() -> emo_lab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let mut spec = PlanSpec::parse(PLAN)?;
    spec.output = Some(dir.join("sweep.csv"));
    let plan = spec.into_plan()?;
    let report = run_experiment(&plan)?;
    print!("{}", report.table());

    let series: Vec<PlotSeries> = (0..plan.algorithms.len())
        .map(|a| PlotSeries {
            label: plan.algorithms[a].kind.to_string(),
            points: report
                .cells_of(a)
                .filter_map(|c| Some((c.n as f64, c.summary.mean?)))
                .collect(),
            fit: report.scaling_fit(a).map(|f| f.c),
        })
        .collect();
    let svg_path = dir.join("sweep.svg");
    std::fs::write(&svg_path, scaling_svg(&series)).map_err(|source| emo_lab::Error::Io {
        path: svg_path.clone(),
        source,
    })?;
    println!(
        "wrote {} and {}",
        dir.join("sweep.csv").display(),
        svg_path.display()
    );
    Ok(())
}
