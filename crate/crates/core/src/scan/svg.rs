use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::RegionGrid;
use crate::classify::{ClassReport, SepClass};
use crate::error::{Error, Result};
use crate::verdict::CriterionId;

const SIZE: f64 = 640.0;
const PAD: f64 = 40.0;
const PLOT: f64 = SIZE - 2.0 * PAD;
const PPTES_FILL: &str = "#756bb1";
const LINE_COLORS: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

/// Zero isoline of one criterion's margin, in `(g, w)` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub criterion: CriterionId,
    pub points: Vec<(f64, f64)>,
}

/// Lattice edge: horizontal `(i,j)-(i+1,j)`, vertical `(i,j)-(i,j+1)` or the diagonal
/// `(i+1,j)-(i,j+1)` of a cell cut by `g + w = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
    D(usize, usize),
}

impl Edge {
    fn ends(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
            Edge::D(i, j) => ((i + 1, j), (i, j + 1)),
        }
    }
}

fn inside(m: f64) -> bool {
    m >= 0.0
}

/// Segments of the zero level set, each joining two crossed lattice edges.
fn segments(grid: &RegionGrid, k: usize) -> Vec<(Edge, Edge)> {
    let n = grid.resolution();
    let m = |i: usize, j: usize| grid.margin(i, j, k).expect("lattice point");
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..(n - i) {
            let (a, b, d) = (m(i, j), m(i + 1, j), m(i, j + 1));
            if i + j + 1 == n {
                let crossed: Vec<Edge> = [
                    (Edge::H(i, j), a, b),
                    (Edge::D(i, j), b, d),
                    (Edge::V(i, j), d, a),
                ]
                .into_iter()
                .filter(|(_, x, y)| inside(*x) != inside(*y))
                .map(|(e, _, _)| e)
                .collect();
                if crossed.len() == 2 {
                    out.push((crossed[0], crossed[1]));
                }
                continue;
            }
            let c = m(i + 1, j + 1);
            let (bottom, right, top, left) = (
                Edge::H(i, j),
                Edge::V(i + 1, j),
                Edge::H(i, j + 1),
                Edge::V(i, j),
            );
            let crossed: Vec<Edge> = [(bottom, a, b), (right, b, c), (top, d, c), (left, a, d)]
                .into_iter()
                .filter(|(_, x, y)| inside(*x) != inside(*y))
                .map(|(e, _, _)| e)
                .collect();
            match crossed.len() {
                2 => out.push((crossed[0], crossed[1])),
                4 => {
                    // saddle: the centre value decides which diagonal pair is connected
                    if inside((a + b + c + d) / 4.0) == inside(a) {
                        out.push((bottom, right));
                        out.push((left, top));
                    } else {
                        out.push((bottom, left));
                        out.push((right, top));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn crossing(grid: &RegionGrid, k: usize, e: Edge) -> (f64, f64) {
    let n = grid.resolution() as f64;
    let ((i1, j1), (i2, j2)) = e.ends();
    let m1 = grid.margin(i1, j1, k).expect("lattice point");
    let m2 = grid.margin(i2, j2, k).expect("lattice point");
    let t = if m1 == m2 {
        0.5
    } else {
        (m1 / (m1 - m2)).clamp(0.0, 1.0)
    };
    let t = if t.is_finite() { t } else { 0.5 };
    let (g1, w1) = (i1 as f64 / n, j1 as f64 / n);
    let (g2, w2) = (i2 as f64 / n, j2 as f64 / n);
    (g1 + t * (g2 - g1), w1 + t * (w2 - w1))
}

fn chain(segs: &[(Edge, Edge)]) -> Vec<Vec<Edge>> {
    let mut adjacent: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (s, (a, b)) in segs.iter().enumerate() {
        adjacent.entry(*a).or_default().push(s);
        adjacent.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segs.len()];
    let mut chains = Vec::new();
    let walk = |start: Edge, used: &mut Vec<bool>| -> Vec<Edge> {
        let mut path = vec![start];
        let mut at = start;
        while let Some(&s) = adjacent[&at].iter().find(|&&s| !used[s]) {
            used[s] = true;
            let (a, b) = segs[s];
            at = if a == at { b } else { a };
            path.push(at);
        }
        path
    };
    // open chains start at edges touched once, closed loops anywhere
    let starts: Vec<Edge> = adjacent
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(e, _)| *e)
        .chain(adjacent.keys().copied())
        .collect();
    for e in starts {
        if adjacent[&e].iter().any(|&s| !used[s]) {
            chains.push(walk(e, &mut used));
        }
    }
    chains
}

/// Zero isolines of every selected criterion.
pub fn isolines(grid: &RegionGrid) -> Vec<Polyline> {
    let mut out = Vec::new();
    for (k, &criterion) in grid.criteria().iter().enumerate() {
        for edges in chain(&segments(grid, k)) {
            out.push(Polyline {
                criterion,
                points: edges.iter().map(|&e| crossing(grid, k, e)).collect(),
            });
        }
    }
    out
}

fn x(g: f64) -> f64 {
    PAD + g * PLOT
}

fn y(w: f64) -> f64 {
    SIZE - PAD - w * PLOT
}

/// Fill colour and legend label for a cell.
fn fill(report: &ClassReport) -> (&'static str, &'static str) {
    use SepClass::*;
    if report.pptes_certified {
        return (PPTES_FILL, "PPT but entangled");
    }
    let set: Vec<SepClass> = report.possible_classes.iter().copied().collect();
    match set.as_slice() {
        [Three, TwoEight, TwoOne, One] => ("#f0f0f0", "{3,2.8,2.1,1}"),
        [TwoEight, TwoOne, One] => ("#c6dbef", "{2.8,2.1,1}"),
        [TwoOne, One] => ("#fdd0a2", "{2.1,1}"),
        [One] => ("#e34a33", "{1}"),
        [Three] => ("#a1d99b", "{3}"),
        [TwoOne] => ("#fd8d3c", "{2.1}"),
        _ => ("#bdbdbd", "other"),
    }
}

/// SVG 1.1 drawing: cells filled by possible classes, PPTES cells highlighted, and the
/// zero isoline of each criterion.
pub fn render_svg(grid: &RegionGrid) -> String {
    let n = grid.resolution();
    let h = PLOT / n as f64;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(s, r#"<g id="cells" stroke="none">"#);
    let mut legend: BTreeMap<&'static str, &'static str> = BTreeMap::new();
    for i in 0..=n {
        let mut j = 0;
        while j <= n - i {
            let (colour, label) = fill(&grid.cell(i, j).expect("lattice point").report);
            let mut end = j;
            while end < n - i
                && fill(&grid.cell(i, end + 1).expect("lattice point").report).0 == colour
            {
                end += 1;
            }
            legend.insert(label, colour);
            let (g, w1) = (i as f64 / n as f64, end as f64 / n as f64);
            let _ = writeln!(
                s,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{colour}"/>"#,
                x(g) - h / 2.0,
                y(w1) - h / 2.0,
                h,
                (end - j + 1) as f64 * h
            );
            j = end + 1;
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<path d="M {:.3} {:.3} L {:.3} {:.3} L {:.3} {:.3} Z" fill="none" stroke="black" stroke-width="1"/>"#,
        x(0.0),
        y(0.0),
        x(1.0),
        y(0.0),
        x(0.0),
        y(1.0)
    );
    let colour_of: BTreeMap<CriterionId, &str> = grid
        .criteria()
        .iter()
        .enumerate()
        .map(|(k, &id)| (id, LINE_COLORS[k % LINE_COLORS.len()]))
        .collect();
    let _ = writeln!(s, r#"<g id="isolines" fill="none" stroke-width="1.5">"#);
    for line in isolines(grid) {
        let pts: Vec<String> = line
            .points
            .iter()
            .map(|&(g, w)| format!("{:.3},{:.3}", x(g), y(w)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" stroke="{}"><title>{}</title></polyline>"#,
            pts.join(" "),
            colour_of[&line.criterion],
            line.criterion
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-size="14" font-family="sans-serif">g</text>"#,
        x(1.0) + 8.0,
        y(0.0) + 5.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-size="14" font-family="sans-serif">w</text>"#,
        x(0.0) - 5.0,
        y(1.0) - 10.0
    );
    let _ = writeln!(
        s,
        r#"<g id="legend" font-size="11" font-family="sans-serif">"#
    );
    for (row, (label, colour)) in legend.iter().enumerate() {
        let ly = PAD + 16.0 * row as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{:.1}" y="{:.1}" width="10" height="10" fill="{colour}" stroke="black" stroke-width="0.5"/><text x="{:.1}" y="{:.1}">{label}</text>"#,
            SIZE - 200.0,
            ly,
            SIZE - 185.0,
            ly + 9.0
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

pub fn export_svg(grid: &RegionGrid, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(grid)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
