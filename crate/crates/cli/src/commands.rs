use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use dmxyz_core::analysis::verify::verify_oracle;
use dmxyz_core::analysis::{DEFAULT_DM_BRACKET, DEFAULT_T_BRACKET};
use dmxyz_core::{
    concurrence_closed_form, critical_dm, critical_temperature, figure_preset, figure_regression,
    sweep, CriticalResult, CriticalStatus, ModelSpec, SweepRow, SweepSpec, SweepVariable,
    Temperature,
};

use crate::args::{
    Command, CouplingArgs, CriticalArgs, EvalArgs, FigureArgs, Kind, SweepArgs, Variable,
    VerifyArgs,
};
use crate::error::{CliError, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_REGRESSION};
use crate::format::{csv_row, num};

type CmdResult = Result<u8, CliError>;

pub fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Eval(a) => eval(a, out),
        Command::Sweep(a) => sweep_cmd(a, out),
        Command::Critical(a) => critical(a, out),
        Command::Figure(a) => figure(a, out),
        Command::Verify(a) => verify(a, out, err),
    }
}

fn model(c: &CouplingArgs, d: f64) -> Result<ModelSpec, CliError> {
    Ok(ModelSpec::from_values(c.jx, c.jy, c.jz, c.axis, d)?)
}

fn temperature(flag: &str, t: f64) -> Result<Temperature, CliError> {
    Temperature::new(t).map_err(|_| {
        CliError::usage(
            flag,
            format!("temperature must be positive and finite, got {t}"),
        )
    })
}

fn required(flag: &str, v: Option<f64>, context: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required with {context}")))
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> CmdResult {
    let t = temperature("--t", a.t)?;
    let spec = model(&a.coupling, a.d)?;
    let c = concurrence_closed_form(&spec, t)?;
    let mut fields = vec![
        spec.axis().as_str().to_string(),
        num(a.coupling.jx),
        num(a.coupling.jy),
        num(a.coupling.jz),
        num(a.d),
        num(a.t),
        num(c.value),
    ];
    fields.extend(c.lambdas.iter().map(|l| num(*l)));
    fields.push(c.path.as_str().to_string());
    out.write_all(b"axis,jx,jy,jz,d,t,concurrence,l1,l2,l3,l4,path\n")?;
    out.write_all(csv_row(&fields).as_bytes())?;
    Ok(EXIT_OK)
}

fn sweep_cmd(a: SweepArgs, out: &mut dyn Write) -> CmdResult {
    if !a.from.is_finite() || !a.to.is_finite() || a.from >= a.to {
        return Err(CliError::usage(
            "--from",
            format!(
                "range must be finite with --from < --to, got {} .. {}",
                a.from, a.to
            ),
        ));
    }
    if a.steps < 2 {
        return Err(CliError::usage(
            "--steps",
            format!("need at least 2, got {}", a.steps),
        ));
    }
    let c = a.coupling;
    let coupling = model(&c, 0.0)?.coupling;
    let variable = match a.var {
        Variable::D => {
            let t = required("--t", a.t, "--var d")?;
            SweepVariable::DmStrength {
                temperature: temperature("--t", t)?,
            }
        }
        Variable::T => {
            if a.from <= 0.0 {
                return Err(CliError::usage(
                    "--from",
                    format!("temperatures must be positive, got {}", a.from),
                ));
            }
            let d = required("--d", a.d, "--var t")?;
            model(&c, d)?;
            SweepVariable::Temperature { dm_strength: d }
        }
    };
    let spec = SweepSpec::new(coupling, c.axis, variable, a.from, a.to, a.steps)?;
    let rows = sweep(&spec)?;
    let name = variable.name();
    match &a.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_sweep(&mut w, name, &rows)?;
            w.flush()?;
        }
        None => write_sweep(out, name, &rows)?,
    }
    Ok(EXIT_OK)
}

fn write_sweep(w: &mut dyn Write, name: &str, rows: &[SweepRow]) -> std::io::Result<()> {
    w.write_all(b"variable,value,concurrence,l1,l2,l3,l4\n")?;
    for r in rows {
        let mut fields = vec![name.to_string(), num(r.variable_value), num(r.concurrence)];
        fields.extend(r.lambdas.iter().map(|l| num(*l)));
        w.write_all(csv_row(&fields).as_bytes())?;
    }
    Ok(())
}

fn critical(a: CriticalArgs, out: &mut dyn Write) -> CmdResult {
    let c = a.coupling;
    let result = match a.kind {
        Kind::Temp => {
            let d = required("--d", a.d, "--kind temp")?;
            let (lo, hi) = DEFAULT_T_BRACKET;
            critical_temperature(
                &model(&c, d)?,
                a.lo.unwrap_or(lo),
                a.hi.unwrap_or(hi),
                a.tol,
            )?
        }
        Kind::Dm => {
            let t = temperature("--t", required("--t", a.t, "--kind dm")?)?;
            let (lo, hi) = DEFAULT_DM_BRACKET;
            let coupling = model(&c, 0.0)?.coupling;
            critical_dm(
                coupling,
                c.axis,
                t,
                a.lo.unwrap_or(lo),
                a.hi.unwrap_or(hi),
                a.tol,
            )?
        }
    };
    out.write_all(b"kind,value,lo,hi,residual_width,status\n")?;
    let converged = result.status == CriticalStatus::Converged;
    let fields = [
        result.kind.as_str().to_string(),
        optional(result.value),
        num(result.bracket.0),
        num(result.bracket.1),
        if converged {
            num(result.residual_width)
        } else {
            String::new()
        },
        result.status.as_str().to_string(),
    ];
    out.write_all(csv_row(&fields).as_bytes())?;
    Ok(if converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

fn optional(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn critical_value(r: &CriticalResult) -> String {
    optional(r.value)
}

fn figure(a: FigureArgs, out: &mut dyn Write) -> CmdResult {
    let preset = figure_preset(a.figure)?;
    let k = preset.id;
    fs::create_dir_all(&a.out)?;
    let j = preset.coupling;
    writeln!(
        out,
        "figure {k}: jx={} jy={} jz={}",
        num(j.jx),
        num(j.jy),
        num(j.jz)
    )?;

    for (panel, spec) in [("a", preset.dm_panel), ("b", preset.temperature_panel)] {
        let curves = preset.axes.map(|axis| sweep(&spec.with_axis(axis)));
        let [first, second] = curves;
        let (first, second) = (first?, second?);
        let file = format!("fig{k}{panel}.csv");
        write_figure_panel(
            &a.out.join(&file),
            spec.variable().name(),
            preset.axes.map(|x| x.as_str()),
            &first,
            &second,
        )?;
        writeln!(out, "wrote {file} ({} rows)", first.len())?;
    }

    let verdict = figure_regression(&preset)?;
    writeln!(out, "axis,critical_dm,critical_t")?;
    let mut per_axis = [verdict.favored, verdict.other];
    per_axis.sort_by_key(|c| c.axis);
    for c in per_axis {
        writeln!(
            out,
            "{},{},{}",
            c.axis,
            critical_value(&c.critical_dm),
            critical_value(&c.critical_temperature)
        )?;
    }
    writeln!(out, "verdict: {verdict}")?;
    Ok(if verdict.holds() {
        EXIT_OK
    } else {
        EXIT_REGRESSION
    })
}

fn write_figure_panel(
    path: &Path,
    variable: &str,
    axes: [&str; 2],
    first: &[SweepRow],
    second: &[SweepRow],
) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(
        w,
        "variable,value,concurrence_{},concurrence_{}",
        axes[0], axes[1]
    )?;
    for (p, q) in first.iter().zip(second) {
        let fields = [
            variable.to_string(),
            num(p.variable_value),
            num(p.concurrence),
            num(q.concurrence),
        ];
        w.write_all(csv_row(&fields).as_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if !a.tol.is_finite() || a.tol < 0.0 {
        return Err(CliError::usage(
            "--tol",
            format!("must be finite and nonnegative, got {}", a.tol),
        ));
    }
    let report = verify_oracle(a.samples, a.seed)?;
    writeln!(
        out,
        "verify: seed={} samples={} per axis",
        a.seed, a.samples
    )?;
    writeln!(out, "axis,max_concurrence_diff,max_lambda_diff")?;
    for d in &report.per_axis {
        writeln!(
            out,
            "{},{},{}",
            d.axis,
            num(d.max_concurrence_diff),
            num(d.max_lambda_diff)
        )?;
    }
    writeln!(
        out,
        "max_concurrence_diff,{}",
        num(report.max_concurrence_diff())
    )?;
    writeln!(out, "tolerance,{}", num(a.tol))?;
    if report.passes_within(a.tol) {
        writeln!(out, "result,PASS")?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "result,FAIL")?;
    for d in report
        .per_axis
        .iter()
        .filter(|d| d.max_concurrence_diff > a.tol)
    {
        if let Some(p) = d.worst {
            writeln!(err, "worst point on axis {}: {p}", d.axis)?;
        }
    }
    Ok(EXIT_REGRESSION)
}
