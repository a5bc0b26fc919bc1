//! Dot diagrams: q horizontally, a vertically, dots labeled by t.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::DotComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Svg,
}

pub fn render(c: &DotComplex, format: Format) -> String {
    match format {
        Format::Text => render_text(c),
        Format::Svg => render_svg(c),
    }
}

/// `(a, q) -> t labels` in generator order.
fn cells(c: &DotComplex) -> BTreeMap<(i64, i64), Vec<i64>> {
    let mut out: BTreeMap<(i64, i64), Vec<i64>> = BTreeMap::new();
    for e in &c.generators {
        out.entry((e.0, e.1)).or_default().push(e.2);
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

fn label(ts: &[i64]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

/// Rows are a-levels (top first), columns q-levels, both in steps of 2.
pub fn render_text(c: &DotComplex) -> String {
    let cells = cells(c);
    if cells.is_empty() {
        return "(empty)\n".into();
    }
    let (amin, amax) = bounds(cells.keys().map(|k| k.0));
    let (qmin, qmax) = bounds(cells.keys().map(|k| k.1));
    let width = cells.values().map(|v| label(v).len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    let mut a = amax;
    while a >= amin {
        let mut row = String::new();
        let mut q = qmin;
        while q <= qmax {
            let s = cells.get(&(a, q)).map(|v| label(v)).unwrap_or_else(|| ".".into());
            let _ = write!(row, "{s:>width$} ");
            q += 2;
        }
        let _ = writeln!(out, "{}", row.trim_end());
        a -= 2;
    }
    let _ = writeln!(out, "min a-grading: {amin}, q from {qmin} to {qmax}");
    out
}

fn bounds(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

const GRID: i64 = 40;
const MARGIN: i64 = 40;

/// Self-contained SVG; `d_N` arrows have slope `-1/N` in the `(q, a)` plane.
pub fn render_svg(c: &DotComplex) -> String {
    let cells = cells(c);
    let (amin, amax) = if cells.is_empty() { (0, 0) } else { bounds(cells.keys().map(|k| k.0)) };
    let (qmin, qmax) = if cells.is_empty() { (0, 0) } else { bounds(cells.keys().map(|k| k.1)) };
    let x = |q: i64| MARGIN + (q - qmin) / 2 * GRID;
    let y = |a: i64| MARGIN + (amax - a) / 2 * GRID;
    let w = x(qmax) + MARGIN;
    let h = y(amin) + MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>"#
    );
    for (n, m) in &c.diffs {
        for &(s, d) in m.keys() {
            let (gs, gd) = (c.generators[s], c.generators[d]);
            let _ = writeln!(
                out,
                r#"<line class="d{n}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" marker-end="url(#arrow)"/>"#,
                x(gs.1),
                y(gs.0),
                x(gd.1),
                y(gd.0)
            );
        }
    }
    for ((a, q), ts) in &cells {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="4"/>"#, x(*q), y(*a));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10">{}</text>"#,
            x(*q) + 5,
            y(*a) - 5,
            label(ts)
        );
    }
    let _ = writeln!(out, r#"<text x="4" y="{}" font-size="10">a = {amin}</text>"#, h - 8);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_torus_complex, sawtooth_complex};
    use crate::torus::TorusKnotId;

    fn grid_rows(s: &str) -> Vec<Vec<String>> {
        s.lines()
            .filter(|l| !l.starts_with("min"))
            .map(|l| l.split_whitespace().filter(|c| *c != ".").map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn trefoil_grid() {
        let s = render_text(&sawtooth_complex(1));
        let rows = grid_rows(&s);
        assert_eq!(rows, vec![vec!["3".to_string()], vec!["0".to_string(), "2".to_string()]]);
        assert!(s.contains("min a-grading: 2"));
    }

    #[test]
    fn unknot_and_t34() {
        let s = render_text(&DotComplex::new(vec![(0, 0, 0)]));
        assert_eq!(grid_rows(&s), vec![vec!["0".to_string()]]);
        let c = build_torus_complex(TorusKnotId::new(3, 4).unwrap()).unwrap();
        let sizes: Vec<usize> = grid_rows(&render_text(&c)).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 5, 5]);
        assert!(render_text(&c).contains("min a-grading: 6"));
    }

    #[test]
    fn svg_arrow_slopes() {
        let c = sawtooth_complex(1);
        let svg = render_svg(&c);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 3);
        // d_1 arrow: one grid step right and one down
        for line in svg.lines().filter(|l| l.contains("class=\"d1\"")) {
            let num = |k: &str| -> i64 {
                let i = line.find(&format!("{k}=\"")).unwrap() + k.len() + 2;
                line[i..].split('"').next().unwrap().parse().unwrap()
            };
            assert_eq!(num("x2") - num("x1"), GRID);
            assert_eq!(num("y2") - num("y1"), GRID);
        }
    }
}
