//! Sweep evaluation and CSV emission.
//!
//! Rows are generated in a fixed order (axis value, then mode, then
//! estimator) and floats are written in Rust's shortest round-trip
//! formatting, so identical configs produce byte-identical files no matter
//! how many worker threads evaluated the grid.

use rayon::prelude::*;
use wpcn_core::analytic::{
    throughput_delay_limited, throughput_delay_limited_approx,
    throughput_delay_limited_asymptotic, throughput_delay_tolerant,
    throughput_delay_tolerant_asymptotic, ApproxConstants, QuadratureSpec,
};
use wpcn_core::montecarlo::{estimate_throughput, McConfig, McEstimate};
use wpcn_core::optimize::{
    optimal_tau_limited_highsnr, optimal_tau_search, optimal_tau_tolerant_highsnr,
};

use crate::config::{CliError, Estimator, Mode, SweepSpec};

/// Bracket tolerance of the τ search estimator; the resolution the optimal
/// columns are reported at.
const SEARCH_TOL: f64 = 1e-4;

pub const CSV_HEADER: [&str; 14] = [
    "mode",
    "axis",
    "axis_value",
    "estimator",
    "n_antennas",
    "tx_power_dbm",
    "tau",
    "rate",
    "omega",
    "gamma_bar",
    "value",
    "stderr",
    "trials",
    "seed",
];

/// Runs the whole grid and renders the CSV bytes. Evaluation errors are
/// recorded as an `error` value cell and the run continues; only I/O can
/// fail the sweep as a whole.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<u8>, CliError> {
    let tasks: Vec<(f64, Mode, Estimator)> = spec
        .values
        .iter()
        .flat_map(|&v| {
            spec.modes.iter().flat_map(move |&m| {
                spec.estimators.iter().map(move |&e| (v, m, e))
            })
        })
        .collect();

    // Evaluated concurrently; collect preserves task order, and every
    // Monte Carlo row is a pure function of (parameters, trials, seed), so
    // the thread count cannot leak into the output.
    let rows: Vec<Vec<String>> = tasks
        .par_iter()
        .map(|&(value, mode, estimator)| render_row(spec, value, mode, estimator))
        .collect();

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(CSV_HEADER)
        .and_then(|()| rows.iter().try_for_each(|r| writer.write_record(r)))
        .map_err(|e| CliError::Config(format!("csv: {e}")))?;
    writer
        .into_inner()
        .map_err(|e| CliError::Config(format!("csv: {e}")))
}

fn render_row(spec: &SweepSpec, value: f64, mode: Mode, estimator: Estimator) -> Vec<String> {
    let p = spec.params_at(value);
    let d = p.derived();
    let (val, stderr, trials) = match evaluate(spec, value, mode, estimator) {
        Ok(cells) => cells,
        // The cell is unavailable (no such curve, or the closed form is
        // outside its validity region); the sweep itself goes on.
        Err(()) => ("error".into(), String::new(), String::new()),
    };
    vec![
        mode.to_core().to_string(),
        spec.axis.to_string(),
        format!("{value}"),
        estimator.to_string(),
        p.n_antennas.to_string(),
        format!("{}", p.tx_power_dbm),
        format!("{}", p.tau),
        format!("{}", p.rate),
        format!("{}", p.omega),
        format!("{}", d.gamma_bar),
        val,
        stderr,
        trials,
        spec.mc_seed.to_string(),
    ]
}

/// Value, stderr, and trials cells for one row. Analytic estimators leave
/// the statistical columns empty.
fn evaluate(
    spec: &SweepSpec,
    value: f64,
    mode: Mode,
    estimator: Estimator,
) -> Result<(String, String, String), ()> {
    let p = spec.params_at(value);
    let k = ApproxConstants::default();
    let q = QuadratureSpec::default();
    let analytic = |v: f64| Ok((format!("{v}"), String::new(), String::new()));
    let mc = |e: McEstimate| {
        Ok((
            format!("{}", e.mean),
            format!("{}", e.stderr),
            e.trials.to_string(),
            ))
    };

    match (estimator, mode) {
        (Estimator::Exact, Mode::DelayLimited) => {
            analytic(throughput_delay_limited(&p).map_err(drop)?)
        }
        (Estimator::Exact, Mode::DelayTolerant) => {
            analytic(throughput_delay_tolerant(&p, &q).map_err(drop)?)
        }
        (Estimator::Approx, Mode::DelayLimited) => {
            analytic(throughput_delay_limited_approx(&p, &k).map_err(drop)?)
        }
        // The gamma-fit approximation rewrites the outage probability; the
        // delay-tolerant mode has no corresponding curve.
        (Estimator::Approx, Mode::DelayTolerant) => Err(()),
        (Estimator::Asymptotic, Mode::DelayLimited) => {
            analytic(throughput_delay_limited_asymptotic(&p, &k).map_err(drop)?.value)
        }
        (Estimator::Asymptotic, Mode::DelayTolerant) => {
            analytic(throughput_delay_tolerant_asymptotic(&p).map_err(drop)?.value)
        }
        (Estimator::MonteCarlo, _) => mc(estimate_throughput(
            mode.to_core(),
            &p,
            &McConfig::new(spec.mc_trials, spec.mc_seed),
        )
        .map_err(drop)?),
        (Estimator::OptimalTauClosed, Mode::DelayLimited) => {
            analytic(optimal_tau_limited_highsnr(&p, &k).map_err(drop)?.tau)
        }
        (Estimator::OptimalTauClosed, Mode::DelayTolerant) => {
            analytic(optimal_tau_tolerant_highsnr(&p).map_err(drop)?.tau)
        }
        (Estimator::OptimalTauSearch, _) => analytic(
            optimal_tau_search(mode.to_core(), &p, SEARCH_TOL)
                .map_err(drop)?
                .tau,
        ),
    }
}

/// Cross-checks the exact curves against the simulator on the configured
/// grid. Returns the process exit code: 0 when every |z| stays within the
/// acceptance band, 1 otherwise.
pub fn run_validate(spec: &SweepSpec) -> Result<i32, CliError> {
    const Z_LIMIT: f64 = 4.0;

    if !spec.estimators.contains(&Estimator::MonteCarlo)
        || !spec.estimators.contains(&Estimator::Exact)
    {
        return Err(CliError::Config(
            "validate needs both the exact and monte_carlo estimators in \"estimators\"".into(),
        ));
    }

    let q = QuadratureSpec::default();
    let tasks: Vec<(f64, Mode)> = spec
        .values
        .iter()
        .flat_map(|&v| spec.modes.iter().map(move |&m| (v, m)))
        .collect();
    let results: Vec<Result<(f64, Mode, f64, McEstimate), CliError>> = tasks
        .par_iter()
        .map(|&(value, mode)| {
            let p = spec.params_at(value);
            let exact = match mode {
                Mode::DelayLimited => throughput_delay_limited(&p),
                Mode::DelayTolerant => throughput_delay_tolerant(&p, &q),
            }
            .map_err(|e| CliError::Numeric(format!("{mode:?} {}={value}: {e}", spec.axis)))?;
            let mc = estimate_throughput(
                mode.to_core(),
                &p,
                &McConfig::new(spec.mc_trials, spec.mc_seed),
            )
            .map_err(|e| CliError::Numeric(format!("{mode:?} {}={value}: {e}", spec.axis)))?;
            Ok((value, mode, exact, mc))
        })
        .collect();

    let mut max_z = 0.0f64;
    for result in results {
        let (value, mode, exact, mc) = result?;
        // A zero standard error happens where the estimate is exact (a
        // saturated outage count); the floor keeps the ratio finite.
        let z = (exact - mc.mean).abs() / mc.stderr.max(1e-12);
        max_z = max_z.max(z);
        println!(
            "{} {}={}: exact {} mc {} stderr {} |z| {:.2}",
            mode.to_core(),
            spec.axis,
            value,
            exact,
            mc.mean,
            mc.stderr,
            z
        );
    }
    println!(
        "max |z| = {max_z:.2} over {} comparisons at {} trials",
        spec.values.len() * spec.modes.len(),
        spec.mc_trials
    );
    if max_z <= Z_LIMIT {
        println!("validation passed");
        Ok(0)
    } else {
        println!("validation FAILED: max |z| above {Z_LIMIT}");
        Ok(1)
    }
}

/// A small companion script plotting the value column of each (mode,
/// estimator) series against the axis.
pub fn gnuplot_script(spec: &SweepSpec, csv_name: &str) -> String {
    let mut clauses: Vec<String> = Vec::new();
    for &mode in &spec.modes {
        for &est in &spec.estimators {
            clauses.push(format!(
                "  \"{csv}\" using (strcol(1) eq \"{mode}\" && strcol(4) eq \"{est}\" \
                 ? $3 : NaN):11 with linespoints title \"{mode} {est}\"",
                csv = csv_name,
                mode = mode.to_core(),
                est = est,
            ));
        }
    }
    format!(
        "# Generated alongside {csv_name}; plots value against {axis}.\n\
         set datafile separator \",\"\n\
         set datafile missing \"error\"\n\
         set key outside\n\
         set xlabel \"{axis}\"\n\
         set ylabel \"value\"\n\
         plot \\\n{body}\n",
        axis = spec.axis,
        body = clauses.join(", \\\n"),
    )
}
