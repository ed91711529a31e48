use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use crate::sweep::{RowFlag, SweepTable};

pub const CSV_HEADER: [&str; 6] = [
    "energy_hartree",
    "tau_rel_rad",
    "tau_rel_unwrapped_rad",
    "tau_nonrel_rad",
    "tau_nonrel_unwrapped_rad",
    "flag",
];

fn field(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

/// Comment echo, header and one record per row.
pub fn write_csv<W: io::Write>(table: &SweepTable, mut out: W) -> io::Result<()> {
    for line in table.config.echo() {
        writeln!(out, "{line}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &table.rows {
        w.write_record([
            format!("{:.16e}", r.energy),
            field(r.tau_rel),
            field(r.tau_rel_unwrapped),
            field(r.tau_nonrel),
            field(r.tau_nonrel_unwrapped),
            r.flag.as_str().to_string(),
        ])?;
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub energy: f64,
    pub tau_rel: Option<f64>,
    pub tau_rel_unwrapped: Option<f64>,
    pub tau_nonrel: Option<f64>,
    pub tau_nonrel_unwrapped: Option<f64>,
    pub flag: RowFlag,
}

fn invalid(msg: String) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg)
}

/// Reads back a file produced by [`write_csv`], skipping comment lines.
pub fn parse_csv<R: io::Read>(input: R) -> io::Result<Vec<CsvRow>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(invalid(format!("unexpected header {header:?}")));
    }
    let num = |s: &str| -> io::Result<Option<f64>> {
        if s.is_empty() {
            return Ok(None);
        }
        s.parse().map(Some).map_err(|e| invalid(format!("bad number `{s}`: {e}")))
    };
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let flag = match &rec[5] {
            "ok" => RowFlag::Ok,
            "singular" => RowFlag::Singular,
            other => return Err(invalid(format!("unknown flag `{other}`"))),
        };
        rows.push(CsvRow {
            energy: num(&rec[0])?.ok_or_else(|| invalid("missing energy".into()))?,
            tau_rel: num(&rec[1])?,
            tau_rel_unwrapped: num(&rec[2])?,
            tau_nonrel: num(&rec[3])?,
            tau_nonrel_unwrapped: num(&rec[4])?,
            flag,
        });
    }
    Ok(rows)
}

/// A gnuplot script with the data inlined; renders `<stem>.png`.
pub fn plot_script(table: &SweepTable, stem: &str) -> String {
    let mut s = String::new();
    let nan = |v: Option<f64>| v.map(|x| format!("{x:.16e}")).unwrap_or_else(|| "NaN".into());
    for line in table.config.echo() {
        let _ = writeln!(s, "{line}");
    }
    let _ = writeln!(s, "$data << EOD");
    for r in &table.rows {
        let _ = writeln!(
            s,
            "{:.16e} {} {}",
            r.energy,
            nan(r.tau_rel_unwrapped),
            nan(r.tau_nonrel_unwrapped)
        );
    }
    let _ = writeln!(s, "EOD");
    let _ = writeln!(s, "set terminal pngcairo size 800,600");
    let _ = writeln!(s, "set output '{stem}.png'");
    let _ = writeln!(s, "set xlabel 'E (hartree)'");
    let _ = writeln!(s, "set ylabel 'phase shift (rad)'");
    let _ = writeln!(s, "set key top right");
    let _ = writeln!(s, "set datafile missing 'NaN'");
    if table.config.emit_nonrel {
        let _ = writeln!(
            s,
            "plot $data using 1:2 with lines dt 1 lw 2 title 'relativistic', \\\n     $data using 1:3 with lines dt 3 lw 2 title 'nonrelativistic'"
        );
    } else {
        let _ = writeln!(s, "plot $data using 1:2 with lines dt 1 lw 2 title 'relativistic'");
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputFiles {
    pub csv: PathBuf,
    pub plot: Option<PathBuf>,
}

/// Writes `<dir>/<stem>.csv` and, unless `with_plot` is false, `<dir>/<stem>.plot`.
pub fn emit_outputs(table: &SweepTable, dir: &Path, stem: &str, with_plot: bool) -> io::Result<OutputFiles> {
    if table.rows.is_empty() {
        return Err(invalid("no rows to write".into()));
    }
    std::fs::create_dir_all(dir)?;
    let csv = dir.join(format!("{stem}.csv"));
    let mut buf = Vec::new();
    write_csv(table, &mut buf)?;
    std::fs::write(&csv, buf)?;
    let plot = if with_plot {
        let p = dir.join(format!("{stem}.plot"));
        std::fs::write(&p, plot_script(table, stem))?;
        Some(p)
    } else {
        None
    };
    Ok(OutputFiles { csv, plot })
}
