//! Per-record invariant checks over a knot table.

use std::fmt;

use crate::dataset::{Dataset, KnotRecord};
use crate::error::Result;
use crate::structchecks::{delta_spectrum, pattern_minus, pattern_plus, thin_quotient_test, thin_super, three_step_pairing};

pub const CHECK_NAMES: &[&str] = &["thin", "patterns", "pairing", "symmetry", "quotient", "complex"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub knot: String,
    pub check: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.knot, self.check)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

fn line(r: &KnotRecord, check: &'static str, outcome: std::result::Result<(), String>) -> CheckLine {
    let (pass, detail) = match outcome {
        Ok(()) => (true, String::new()),
        Err(d) => (false, d),
    };
    CheckLine { knot: r.name.clone(), check, pass, detail }
}

fn is_thin(r: &KnotRecord) -> bool {
    r.superpoly.as_ref().is_some_and(|p| delta_spectrum(p).len() <= 1)
}

/// Run every applicable check (or only `only`) on every record, in table
/// order.
pub fn run_checks(d: &Dataset, only: Option<&str>) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    let want = |c: &str| only.is_none_or(|o| o == c);
    for r in &d.records {
        if want("thin") && is_thin(r) {
            out.push(line(r, "thin", check_thin(r)));
        }
        if want("patterns") && r.superpoly.is_some() {
            out.push(line(r, "patterns", check_patterns(r)));
        }
        if want("pairing") && r.khr2.is_some() {
            let ok = r.khr2.as_ref().and_then(three_step_pairing).is_some();
            out.push(line(r, "pairing", if ok { Ok(()) } else { Err("no three-step pairing".into()) }));
        }
        if want("symmetry") {
            let p = match &r.superpoly {
                Some(p) => Some(p.clone()),
                None => d.complex(r)?.map(|c| c.poincare()),
            };
            if let Some(p) = p {
                out.push(line(r, "symmetry", p.y_rewrite().map(|_| ()).map_err(|e| e.to_string())));
            }
        }
        if want("quotient") && (is_thin(r) || r.superpoly.is_none()) {
            let q = thin_quotient_test(&r.homfly, r.s).map_err(|e| e.to_string());
            let q = q.and_then(|o| if o.any() { Ok(()) } else { Err("no exact alternating quotient".into()) });
            out.push(line(r, "quotient", q));
        }
        if want("complex") && r.complex_file.is_some() {
            out.push(line(r, "complex", check_complex(d, r)));
        }
    }
    Ok(out)
}

fn check_thin(r: &KnotRecord) -> std::result::Result<(), String> {
    let sp = r.superpoly.as_ref().ok_or("no superpolynomial")?;
    let (s, _) = pattern_plus(sp).map_err(|e| e.to_string())?;
    let t = thin_super(&r.homfly, s).map_err(|e| e.to_string())?;
    if &t.superpoly != sp {
        return Err(format!("rebuilt {} differs", t.superpoly));
    }
    Ok(())
}

fn check_patterns(r: &KnotRecord) -> std::result::Result<(), String> {
    let sp = r.superpoly.as_ref().ok_or("no superpolynomial")?;
    let (sp_plus, _) = pattern_plus(sp).map_err(|e| format!("plus: {e}"))?;
    let (sp_minus, _) = pattern_minus(sp).map_err(|e| format!("minus: {e}"))?;
    if sp_plus != r.s || sp_minus != r.s {
        return Err(format!("survivor grades {sp_plus}, {sp_minus} but S = {}", r.s));
    }
    Ok(())
}

fn check_complex(d: &Dataset, r: &KnotRecord) -> std::result::Result<(), String> {
    let c = d.complex(r).map_err(|e| e.to_string())?.ok_or("no complex")?;
    let v = c.verify();
    if !v.ok() {
        return Err(format!("{} axiom violations, first {:?}", v.violations.len(), v.violations[0]));
    }
    let p = c.poincare();
    if p.at_t_minus_one() != r.homfly {
        return Err("Poincaré polynomial at t = -1 differs from homfly".into());
    }
    if let Some(sp) = &r.superpoly {
        if &p != sp {
            return Err("Poincaré polynomial differs from superpoly".into());
        }
    }
    let s = c.s_invariant().map_err(|e| e.to_string())?;
    if s != r.s {
        return Err(format!("complex gives S = {s}, table says {}", r.s));
    }
    Ok(())
}
