//! Sparse-triplet text format:
//!
//! ```text
//! # fracdim triple-operator
//! # n=2 cutoff=3 spinor_dim=2 self_adjoint=true
//! # mode_out mode_in spinor_row spinor_col re im
//! 1,0 1,0 0 1 -1e0 0e0
//! ```
//!
//! Modes are comma-joined integer vectors; values use shortest round-trip
//! formatting, so write → read reproduces the operator exactly in f64.

use super::lattice::ModeLattice;
use super::operator::TripleOperator;
use crate::clifford::build_gammas;
use crate::matrix::CMatrix;
use crate::{Error, Real, Result};
use num_complex::Complex;
use std::io::{BufRead, Write};

fn join(mode: &[i64]) -> String {
    mode.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub fn write_triplets<T: Real, W: Write>(op: &TripleOperator<T>, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# fracdim triple-operator")?;
    writeln!(
        w,
        "# n={} cutoff={} spinor_dim={} self_adjoint={}",
        op.lattice.n(),
        op.lattice.cutoff(),
        op.spinor_dim(),
        op.self_adjoint
    )?;
    writeln!(w, "# mode_out mode_in spinor_row spinor_col re im")?;
    for (&(o, i), b) in &op.blocks {
        let (mo, mi) = (join(&op.lattice.mode(o)), join(&op.lattice.mode(i)));
        for r in 0..b.dim() {
            for c in 0..b.dim() {
                let z = b[(r, c)];
                if z.re == T::zero() && z.im == T::zero() {
                    continue;
                }
                writeln!(w, "{mo} {mi} {r} {c} {:e} {:e}", z.re.as_f64(), z.im.as_f64())?;
            }
        }
    }
    Ok(())
}

fn perr(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn header_field<'a>(fields: &'a [(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse(format!("header lacks {key}")))
}

pub fn read_triplets<T: Real, R: BufRead>(r: R) -> Result<TripleOperator<T>> {
    let mut op: Option<TripleOperator<T>> = None;
    for (ln, line) in r.lines().enumerate() {
        let line = line.map_err(|e| perr(ln + 1, e))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            let fields: Vec<(&str, &str)> = h.split_whitespace().filter_map(|t| t.split_once('=')).collect();
            if fields.is_empty() {
                continue;
            }
            let parse = |k: &str| -> Result<usize> {
                header_field(&fields, k)?.parse().map_err(|e| perr(ln + 1, e))
            };
            let n = parse("n")?;
            let lattice = ModeLattice::new(n, parse("cutoff")?)?;
            let rep = build_gammas::<T>(n)?;
            if rep.spinor_dim != parse("spinor_dim")? {
                return Err(perr(ln + 1, "spinor_dim inconsistent with n"));
            }
            let mut o = TripleOperator::zero(&lattice, &rep)?;
            o.self_adjoint = header_field(&fields, "self_adjoint")? == "true";
            op = Some(o);
            continue;
        }
        let o = op.as_mut().ok_or_else(|| perr(ln + 1, "data before header"))?;
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 6 {
            return Err(perr(ln + 1, "expected 6 columns"));
        }
        let mode = |s: &str| -> Result<usize> {
            let v: std::result::Result<Vec<i64>, _> = s.split(',').map(str::parse).collect();
            let v = v.map_err(|e| perr(ln + 1, e))?;
            o.lattice.index_of(&v).ok_or_else(|| perr(ln + 1, "mode outside lattice"))
        };
        let (mo, mi) = (mode(cols[0])?, mode(cols[1])?);
        let idx = |s: &str| -> Result<usize> { s.parse().map_err(|e| perr(ln + 1, e)) };
        let (row, col) = (idx(cols[2])?, idx(cols[3])?);
        let d = o.spinor_dim();
        if row >= d || col >= d {
            return Err(perr(ln + 1, "spinor index out of range"));
        }
        let num = |s: &str| -> Result<T> {
            s.parse::<f64>().map(T::lit).map_err(|e| perr(ln + 1, e))
        };
        let z = Complex::new(num(cols[4])?, num(cols[5])?);
        let b = o.blocks.entry((mo, mi)).or_insert_with(|| CMatrix::zeros(d));
        b[(row, col)] = z;
    }
    op.ok_or_else(|| Error::Parse("empty input".into()))
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::clifford::build_gammas;
    use crate::params::DeformationParams;

    #[test]
    fn round_trip_is_exact() {
        let lat = ModeLattice::new(2, 3).unwrap();
        let rep = build_gammas::<f64>(2).unwrap();
        let p = DeformationParams::new(2, 0.3).unwrap();
        let op = differential(&FourierSeries::cos_axis(2, 1), &p, &lat, &rep).unwrap();
        let mut buf = Vec::new();
        write_triplets(&op, &mut buf).unwrap();
        let back: TripleOperator<f64> = read_triplets(buf.as_slice()).unwrap();
        assert_eq!(back.lattice, op.lattice);
        assert_eq!(op.sub(&back).max_abs_interior(0), 0.0);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().contains("n=2 cutoff=3 spinor_dim=2"));
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_triplets::<f64, _>("1,0 0,0 0 0 1 0\n".as_bytes()).is_err());
        let bad = "# n=1 cutoff=2 spinor_dim=1 self_adjoint=true\n5 0 0 0 1 0\n";
        assert!(read_triplets::<f64, _>(bad.as_bytes()).is_err());
    }
}
