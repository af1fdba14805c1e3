//! Text serialization of tables, lattices, reductions and input matrices.
//!
//! Every file starts with `# ilat v1`, followed by `# key value` metadata lines,
//! a tab-separated column header and tab-separated rows. Values carry twelve
//! significant digits, so a load followed by a save reproduces the file.

use crate::analysis::direction::Direction;
use crate::analysis::fit::{FitKind, FitResult};
use crate::backend::dense::C64;
use crate::error::{Error, Result};
use crate::family::{join_sites, GenericFamily};
use crate::index::SubsystemIndex;
use crate::lattice::{GenericLattice, InformationLattice};
use crate::plan::{parse_plan, SubsystemPlan};
use crate::table::{Fingerprint, InformationTable};
use nalgebra::DMatrix;
use std::collections::BTreeMap;
use std::fmt::Write;

pub const MAGIC: &str = "# ilat v1";

/// Values keyed by a pair of scales or positions.
pub type PairMap = BTreeMap<(i64, i64), f64>;

/// Canonical decimal form with twelve significant digits.
pub fn fmt_value(v: f64) -> String {
    if v == 0.0 {
        "0.00000000000e0".to_string()
    } else {
        format!("{v:.11e}")
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Parsed<'a> {
    meta: BTreeMap<String, (usize, String)>,
    columns: Vec<&'a str>,
    rows: Vec<(usize, Vec<&'a str>)>,
}

fn parse_file(text: &str) -> Result<Parsed<'_>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(perr(1, format!("missing `{MAGIC}` header"))),
    }
    let mut meta = BTreeMap::new();
    let mut columns = None;
    let mut rows = Vec::new();
    for (k, line) in lines {
        let ln = k + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# ") {
            let (key, val) = rest.split_once(' ').unwrap_or((rest, ""));
            meta.insert(key.to_string(), (ln, val.to_string()));
        } else if columns.is_none() {
            columns = Some(line.split('\t').collect::<Vec<_>>());
        } else {
            rows.push((ln, line.split('\t').collect()));
        }
    }
    Ok(Parsed {
        meta,
        columns: columns.ok_or_else(|| perr(text.lines().count(), "missing column header"))?,
        rows,
    })
}

impl Parsed<'_> {
    fn get(&self, key: &str) -> Result<&str> {
        self.meta
            .get(key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| perr(1, format!("missing `# {key}` line")))
    }

    fn expect_kind(&self, kind: &str) -> Result<()> {
        let k = self.get("kind")?;
        if k != kind {
            let ln = self.meta["kind"].0;
            return Err(perr(ln, format!("expected kind `{kind}`, found `{k}`")));
        }
        Ok(())
    }

    fn expect_columns(&self, cols: &[&str]) -> Result<()> {
        if self.columns != cols {
            return Err(perr(0, format!("expected columns {}", cols.join(" "))));
        }
        Ok(())
    }

    fn extent(&self) -> Result<(usize, usize)> {
        let ln = self.meta.get("extent").map_or(1, |m| m.0);
        let v: Vec<usize> = self
            .get("extent")?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(ln, "bad extent")))
            .collect::<Result<_>>()?;
        match v[..] {
            [a, b] => Ok((a, b)),
            _ => Err(perr(ln, "extent needs two integers")),
        }
    }
}

fn num<T: std::str::FromStr>(ln: usize, t: &str) -> Result<T> {
    t.parse()
        .map_err(|_| perr(ln, format!("cannot parse `{t}`")))
}

fn index_rows(p: &Parsed) -> Result<BTreeMap<SubsystemIndex, f64>> {
    p.expect_columns(&["nx", "ny", "lx", "ly", "value"])?;
    let mut out = BTreeMap::new();
    for (ln, r) in &p.rows {
        if r.len() != 5 {
            return Err(perr(*ln, format!("expected 5 fields, found {}", r.len())));
        }
        let idx = SubsystemIndex::new(
            num(*ln, r[0])?,
            num(*ln, r[1])?,
            num(*ln, r[2])?,
            num(*ln, r[3])?,
        );
        if out.insert(idx, num(*ln, r[4])?).is_some() {
            return Err(perr(*ln, format!("duplicate entry {idx}")));
        }
    }
    Ok(out)
}

/// Shortest decimal form that parses back to the same `f64`.
pub fn fmt_exact(v: f64) -> String {
    if v == 0.0 {
        "0e0".to_string()
    } else {
        format!("{v:e}")
    }
}

fn write_index_rows(s: &mut String, rows: &BTreeMap<SubsystemIndex, f64>, fmt: fn(f64) -> String) {
    s.push_str("nx\tny\tlx\tly\tvalue\n");
    for (k, v) in rows {
        let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", k.nx, k.ny, k.lx, k.ly, fmt(*v));
    }
}

pub fn lattice_to_string(l: &InformationLattice) -> String {
    let mut s = format!(
        "{MAGIC}\n# kind lattice\n# extent {} {}\n# fingerprint {}\n# plan {}\n",
        l.extent.0, l.extent.1, l.fingerprint, l.plan
    );
    write_index_rows(&mut s, &l.entries, fmt_value);
    s
}

pub fn lattice_from_str(text: &str) -> Result<InformationLattice> {
    let p = parse_file(text)?;
    p.expect_kind("lattice")?;
    let plan_s = p.get("plan")?;
    let plan: SubsystemPlan = parse_plan(plan_s)
        .ok_or_else(|| perr(p.meta["plan"].0, format!("unknown plan `{plan_s}`")))?;
    Ok(InformationLattice {
        extent: p.extent()?,
        plan,
        fingerprint: Fingerprint(p.get("fingerprint")?.to_string()),
        entries: index_rows(&p)?,
    })
}

/// Tables keep full precision so that a cached table reproduces the lattice of
/// a fresh computation bit for bit.
pub fn table_to_string(t: &InformationTable) -> String {
    let mut s = format!(
        "{MAGIC}\n# kind table\n# extent {} {}\n# fingerprint {}\n",
        t.extent.0, t.extent.1, t.fingerprint
    );
    write_index_rows(&mut s, &t.values, fmt_exact);
    s
}

pub fn table_from_str(text: &str) -> Result<InformationTable> {
    let p = parse_file(text)?;
    p.expect_kind("table")?;
    Ok(InformationTable {
        extent: p.extent()?,
        fingerprint: Fingerprint(p.get("fingerprint")?.to_string()),
        values: index_rows(&p)?,
    })
}

pub fn generic_lattice_to_string(g: &GenericLattice) -> String {
    let mut s = format!(
        "{MAGIC}\n# kind generic\n# fingerprint {}\nsites\tinformation\tlocal\n",
        g.fingerprint
    );
    for ((m, i), l) in g.family.members().iter().zip(&g.information).zip(&g.local) {
        let _ = writeln!(s, "{}\t{}\t{}", join_sites(m), fmt_value(*i), fmt_value(*l));
    }
    s
}

pub fn generic_lattice_from_str(text: &str) -> Result<GenericLattice> {
    let p = parse_file(text)?;
    p.expect_kind("generic")?;
    p.expect_columns(&["sites", "information", "local"])?;
    let mut members = Vec::new();
    let mut info = Vec::new();
    let mut local = Vec::new();
    for (ln, r) in &p.rows {
        if r.len() != 3 {
            return Err(perr(*ln, "expected 3 fields"));
        }
        let m: Vec<usize> = r[0]
            .split(',')
            .map(|t| num(*ln, t))
            .collect::<Result<_>>()?;
        members.push(m);
        info.push(num::<f64>(*ln, r[1])?);
        local.push(num::<f64>(*ln, r[2])?);
    }
    let family = GenericFamily::new(members.clone())?;
    // Reorder values to the family's canonical order.
    let order: Vec<usize> = family
        .members()
        .iter()
        .map(|m| members.iter().position(|x| x == m).unwrap())
        .collect();
    Ok(GenericLattice {
        fingerprint: Fingerprint(p.get("fingerprint")?.to_string()),
        information: order.iter().map(|&k| info[k]).collect(),
        local: order.iter().map(|&k| local[k]).collect(),
        family,
    })
}

/// Two-key reduction, e.g. `(lx, ly) -> I` or `(n, l) -> i`.
pub fn pair_map_to_string(kind: &str, cols: [&str; 2], map: &BTreeMap<(i64, i64), f64>) -> String {
    let mut s = format!("{MAGIC}\n# kind {kind}\n{}\t{}\tvalue\n", cols[0], cols[1]);
    for ((a, b), v) in map {
        let _ = writeln!(s, "{a}\t{b}\t{}", fmt_value(*v));
    }
    s
}

pub fn pair_map_from_str(text: &str) -> Result<(String, PairMap)> {
    let p = parse_file(text)?;
    let mut out = BTreeMap::new();
    for (ln, r) in &p.rows {
        if r.len() != 3 {
            return Err(perr(*ln, "expected 3 fields"));
        }
        out.insert((num(*ln, r[0])?, num(*ln, r[1])?), num(*ln, r[2])?);
    }
    Ok((p.get("kind")?.to_string(), out))
}

/// Single-key reduction, e.g. `l -> I(l)`.
pub fn scale_map_to_string(kind: &str, col: &str, map: &BTreeMap<i64, f64>) -> String {
    let mut s = format!("{MAGIC}\n# kind {kind}\n{col}\tvalue\n");
    for (a, v) in map {
        let _ = writeln!(s, "{a}\t{}", fmt_value(*v));
    }
    s
}

pub fn scale_map_from_str(text: &str) -> Result<(String, BTreeMap<i64, f64>)> {
    let p = parse_file(text)?;
    let mut out = BTreeMap::new();
    for (ln, r) in &p.rows {
        if r.len() != 2 {
            return Err(perr(*ln, "expected 2 fields"));
        }
        out.insert(num(*ln, r[0])?, num(*ln, r[1])?);
    }
    Ok((p.get("kind")?.to_string(), out))
}

/// Fit report: metadata block followed by the fitted points and the model.
pub fn fit_to_string(fit: &FitResult, data: &BTreeMap<i64, f64>) -> String {
    let mut s = format!("{MAGIC}\n# kind fit\n# fit {}\n", fit.kind.name());
    let _ = writeln!(s, "# estimate {}", fmt_value(fit.estimate));
    let _ = writeln!(s, "# window {} {}", fit.window.0, fit.window.1);
    let _ = writeln!(s, "# residual {}", fmt_value(fit.residual));
    let _ = writeln!(s, "# points {}", fit.points.len());
    if let Some(flag) = &fit.flag {
        let _ = writeln!(s, "# flag {flag}");
    }
    s.push_str("l\tvalue\tmodel\n");
    for &l in &fit.points {
        let x = l as f64;
        let model = match fit.kind {
            FitKind::DecayLength => (fit.slope * x + fit.intercept).exp(),
            FitKind::PowerLaw => (fit.slope * x.ln() + fit.intercept).exp(),
            FitKind::Alpha => fit.estimate / (x * x),
        };
        let _ = writeln!(s, "{l}\t{}\t{}", fmt_value(data[&l]), fmt_value(model));
    }
    s
}

/// Direction report: metadata block followed by the weights it was computed from.
pub fn direction_to_string(d: &Direction, weights: &BTreeMap<(i64, i64), f64>) -> String {
    let mut s = format!("{MAGIC}\n# kind fit\n# fit direction\n");
    let _ = writeln!(
        s,
        "# vector {} {}",
        fmt_value(d.vector[0]),
        fmt_value(d.vector[1])
    );
    let _ = writeln!(s, "# angle {}", fmt_value(d.angle()));
    let _ = writeln!(
        s,
        "# eigenvalues {} {}",
        fmt_value(d.eigenvalues[0]),
        fmt_value(d.eigenvalues[1])
    );
    if d.degenerate {
        s.push_str("# flag degenerate eigenvalues\n");
    }
    if d.unreliable {
        s.push_str("# flag direction unreliable: net weight below 10% of absolute weight\n");
    }
    s.push_str("lx\tly\tvalue\n");
    for ((a, b), v) in weights {
        let _ = writeln!(s, "{a}\t{b}\t{}", fmt_value(*v));
    }
    s
}

fn parse_complex(ln: usize, t: &str) -> Result<C64> {
    match t.split_once(',') {
        Some((a, b)) => Ok(C64::new(num(ln, a)?, num(ln, b)?)),
        None => Ok(C64::new(num(ln, t)?, 0.0)),
    }
}

/// Whitespace-separated rows; complex entries are written `re,im`.
pub fn matrix_from_str(text: &str) -> Result<DMatrix<C64>> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let row: Vec<C64> = t
            .split_whitespace()
            .map(|x| parse_complex(k + 1, x))
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(perr(
                    k + 1,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    let (r, c) = (rows.len(), rows.first().map_or(0, |x| x.len()));
    Ok(DMatrix::from_fn(r, c, |i, j| rows[i][j]))
}

pub fn matrix_to_string(m: &DMatrix<C64>) -> String {
    let mut s = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                if z.im == 0.0 {
                    fmt_value(z.re)
                } else {
                    format!("{},{}", fmt_value(z.re), fmt_value(z.im))
                }
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Lines of `index re im`.
pub fn amplitudes_from_str(text: &str) -> Result<Vec<(u64, C64)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = t.split_whitespace().collect();
        if f.len() != 3 {
            return Err(perr(k + 1, "expected `index re im`"));
        }
        out.push((
            num(k + 1, f[0])?,
            C64::new(num(k + 1, f[1])?, num(k + 1, f[2])?),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_format_is_stable() {
        for v in [1.0, -1.0, 0.0, -0.0, 1.0 / 3.0, 2.5e-17, 123456.789] {
            let s = fmt_value(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(fmt_value(back), s);
        }
        assert_eq!(fmt_value(-0.0), fmt_value(0.0));
    }

    #[test]
    fn table_round_trip() {
        let mut t = InformationTable::new((3, 2), Fingerprint("abc".into()));
        t.insert(SubsystemIndex::new(0, 0, 1, 0), 0.25);
        t.insert(SubsystemIndex::new(1, 1, 0, 0), 1.0 / 3.0);
        let s = table_to_string(&t);
        let back = table_from_str(&s).unwrap();
        assert_eq!(table_to_string(&back), s);
        assert_eq!(back, t);
    }

    #[test]
    fn malformed_row_reports_line() {
        let text = "# ilat v1\n# kind table\n# extent 2 2\n# fingerprint x\nnx\tny\tlx\tly\tvalue\n0\t0\t0\t0\n";
        match table_from_str(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = matrix_from_str("1 0,1\n0,-1 2\n").unwrap();
        assert_eq!(m[(0, 1)], C64::new(0.0, 1.0));
        assert_eq!(matrix_from_str(&matrix_to_string(&m)).unwrap(), m);
        assert!(matrix_from_str("1 2\n3\n").is_err());
    }
}
