use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::flow::FlowTrajectory;
use crate::scalar::Real;

/// One parsed trajectory row.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub t: f64,
    pub a: Vec<f64>,
    pub f: f64,
    pub k_norm: f64,
    pub spec_drift: f64,
}

fn header(n: usize) -> String {
    let mut cols = vec!["t".to_owned()];
    cols.extend((1..n).map(|i| format!("a_{i}")));
    cols.extend(["f", "k_norm", "spec_drift"].map(String::from));
    cols.join(",")
}

/// Header `t,a_1,...,a_{n-1},f,k_norm,spec_drift`, then one row per sample
/// with 17 significant digits per value.
pub fn write_trajectory_csv<T: Real, W: Write>(traj: &FlowTrajectory<T>, mut sink: W) -> Result<()> {
    let n = traj.dim();
    writeln!(sink, "{}", header(n))?;
    let mut line = String::new();
    for k in 0..traj.len() {
        line.clear();
        push(&mut line, traj.times[k]);
        for v in traj.states[k].entries() {
            line.push(',');
            push(&mut line, *v);
        }
        for v in [traj.f_values[k], traj.k_norms[k], traj.spec_drift[k]] {
            line.push(',');
            push(&mut line, v);
        }
        line.push('\n');
        sink.write_all(line.as_bytes())?;
    }
    sink.flush()?;
    Ok(())
}

fn push<T: Real>(line: &mut String, v: T) {
    use std::fmt::Write as _;
    write!(line, "{:.16e}", v.to_f64_lossy()).expect("writing to a String");
}

/// Reads a file written by [`write_trajectory_csv`].
pub fn read_trajectory_csv<R: BufRead>(source: R) -> Result<Vec<CsvRow>> {
    let mut lines = source.lines();
    let head = lines.next().ok_or_else(|| Error::Parse("empty trajectory file".into()))??;
    let cols = head.split(',').count();
    if cols < 4 || head != header(cols - 3) {
        return Err(Error::Parse(format!("unexpected header: {head}")));
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let values = line
            .split(',')
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", idx + 2)))?;
        if values.len() != cols {
            return Err(Error::Parse(format!("line {}: expected {cols} fields, found {}", idx + 2, values.len())));
        }
        rows.push(CsvRow {
            t: values[0],
            a: values[1..cols - 3].to_vec(),
            f: values[cols - 3],
            k_norm: values[cols - 2],
            spec_drift: values[cols - 1],
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{integrate, integrate_with, IntegratorConfig, Validation};
    use crate::jacobi::OffDiagonal;

    #[test]
    fn stationary_run_is_two_lines() {
        let a = OffDiagonal::new(vec![1.26, 0.0, -7.96]).unwrap();
        let traj = integrate_with(&a, &IntegratorConfig::default(), Validation::Relaxed).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "t,a_1,a_2,a_3,f,k_norm,spec_drift");
        assert!(lines[1].starts_with("0.0000000000000000e0,"));
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }

    #[test]
    fn rows_round_trip_exactly() {
        let a = OffDiagonal::new(vec![5.0, -6.0, -2.0]).unwrap();
        let cfg = IntegratorConfig { t_max: 1.0, ..Default::default() };
        let traj = integrate(&a, &cfg).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let rows = read_trajectory_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), traj.len());
        assert_eq!(rows[0].a, vec![5.0, -6.0, -2.0]);
        for (row, k) in rows.iter().zip(0..) {
            assert_eq!(row.t, traj.times[k]);
            assert_eq!(row.a, traj.states[k].entries());
            assert_eq!(row.f, traj.f_values[k]);
            assert_eq!(row.k_norm, traj.k_norms[k]);
            assert_eq!(row.spec_drift, traj.spec_drift[k]);
            assert_eq!(row.a.len() + 4, 7);
        }
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(read_trajectory_csv(&b""[..]).is_err());
        assert!(read_trajectory_csv(&b"t,x\n"[..]).is_err());
        assert!(read_trajectory_csv(&b"t,a_1,f,k_norm,spec_drift\n1,2,3\n"[..]).is_err());
    }
}
