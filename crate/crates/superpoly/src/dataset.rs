//! Knot table in TSV form, with the bundled copy and its complexes.

use std::path::{Path, PathBuf};

use crate::complex::DotComplex;
use crate::error::{Error, Result};
use crate::laurent::Poly3;

const BUNDLED_TSV: &str = include_str!("../data/knots.tsv");

const BUNDLED_COMPLEXES: &[(&str, &str)] = &[
    ("complexes/3_1.cx", include_str!("../data/complexes/3_1.cx")),
    ("complexes/8_19.cx", include_str!("../data/complexes/8_19.cx")),
    ("complexes/9_42.cx", include_str!("../data/complexes/9_42.cx")),
    ("complexes/10_124.cx", include_str!("../data/complexes/10_124.cx")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub s: i64,
    pub sigma: i64,
    pub homfly: Poly3,
    pub khr2: Option<Poly3>,
    pub hfk: Option<Poly3>,
    pub superpoly: Option<Poly3>,
    pub complex_file: Option<String>,
}

/// Where complex files named in a table are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Bundled,
    Dir(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub records: Vec<KnotRecord>,
    pub source: Source,
}

impl Dataset {
    pub fn bundled() -> Result<Dataset> {
        Ok(Dataset { records: parse_tsv(BUNDLED_TSV)?, source: Source::Bundled })
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn complex(&self, record: &KnotRecord) -> Result<Option<DotComplex>> {
        let Some(file) = &record.complex_file else {
            return Ok(None);
        };
        let text = match &self.source {
            Source::Bundled => BUNDLED_COMPLEXES
                .iter()
                .find(|(n, _)| n == file)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| Error::Dataset(format!("{}: no bundled complex {file}", record.name)))?,
            Source::Dir(dir) => std::fs::read_to_string(dir.join(file))
                .map_err(|e| Error::Io(format!("{}: {e}", dir.join(file).display())))?,
        };
        DotComplex::from_text(&text).map(Some)
    }
}

/// `path` may be `bundled` for the table shipped with the crate.
pub fn load_dataset(path: &str) -> Result<Dataset> {
    if path == "bundled" {
        return Dataset::bundled();
    }
    let p = Path::new(path);
    let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Dataset { records: parse_tsv(&text)?, source: Source::Dir(dir) })
}

/// Parse and validate every row; all row diagnostics are collected into
/// one error so nothing loads partially.
pub fn parse_tsv(text: &str) -> Result<Vec<KnotRecord>> {
    let mut records = Vec::new();
    let mut problems = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        match parse_row(line).and_then(|r| validate(&r).map(|_| r)) {
            Ok(r) => records.push(r),
            Err(e) => problems.push(format!("line {}: {e}", i + 1)),
        }
    }
    if problems.is_empty() {
        Ok(records)
    } else {
        Err(Error::Dataset(problems.join("\n")))
    }
}

fn parse_row(line: &str) -> Result<KnotRecord> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() < 4 || f.len() > 8 {
        return Err(Error::Dataset(format!("expected 4 to 8 tab-separated fields, found {}", f.len())));
    }
    let field = |i: usize| f.get(i).map(|s| s.trim()).filter(|s| !s.is_empty());
    let int = |i: usize, what: &str| -> Result<i64> {
        f[i].trim().parse().map_err(|_| Error::Dataset(format!("bad {what} '{}'", f[i])))
    };
    let poly = |i: usize, what: &str| -> Result<Option<Poly3>> {
        field(i)
            .map(|s| s.parse::<Poly3>().map_err(|e| Error::Dataset(format!("{what}: {e}"))))
            .transpose()
    };
    let name = f[0].trim().to_string();
    if name.is_empty() {
        return Err(Error::Dataset("empty name".into()));
    }
    Ok(KnotRecord {
        name,
        s: int(1, "S")?,
        sigma: int(2, "sigma")?,
        homfly: poly(3, "homfly")?.ok_or_else(|| Error::Dataset("homfly is required".into()))?,
        khr2: poly(4, "khr2")?,
        hfk: poly(5, "hfk")?,
        superpoly: poly(6, "superpoly")?,
        complex_file: field(7).map(str::to_string),
    })
}

/// Row invariants: specializations of the optional columns agree with
/// the HOMFLY polynomial.
pub fn validate(r: &KnotRecord) -> Result<()> {
    let bad = |msg: &str| Err(Error::Dataset(format!("{}: {msg}", r.name)));
    if r.homfly.degree_range(2).is_some_and(|t| t != (0, 0)) {
        return bad("homfly must not involve t");
    }
    if let Some(p) = &r.superpoly {
        if p.at_t_minus_one() != r.homfly {
            return bad("superpoly at t = -1 differs from homfly");
        }
    }
    if let Some(k) = &r.khr2 {
        if k.at_t_minus_one() != r.homfly.at_a_q_power(2) {
            return bad("khr2 at t = -1 differs from homfly at a = q^2");
        }
    }
    Ok(())
}
