//! SVG 1.1 renderings of pictorial partitions and Hasse diagrams.

use std::f64::consts::PI;
use std::fmt::Write;

use ncpart::ncp::{NcLattice, Partition};
use ncpart::perm::CoxType;

const SIZE: f64 = 320.0;
const RADIUS: f64 = 120.0;
const COLORS: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2"];

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

/// Labels in clockwise order starting at the top, and the letter at the
/// midpoint (type D only).
fn circle_labels(ty: CoxType, n: usize) -> (Vec<i8>, Option<i8>) {
    let n8 = n as i8;
    match ty {
        CoxType::A => ((1..=n8).collect(), None),
        CoxType::B => ((1..=n8).chain((1..=n8).map(|i| -i)).collect(), None),
        CoxType::D => ((1..n8).chain((1..n8).map(|i| -i)).collect(), Some(n8)),
    }
}

/// The pictorial representation: a regular polygon with labelled points
/// and each block drawn as a filled polygon, an edge or nothing.
pub fn partition(pi: &Partition) -> String {
    let (labels, mid) = circle_labels(pi.ty, pi.n);
    let k = labels.len();
    let c = SIZE / 2.0;
    let point = |pos: usize| {
        let a = -PI / 2.0 + 2.0 * PI * pos as f64 / k as f64;
        (c + RADIUS * a.cos(), c + RADIUS * a.sin())
    };
    let position = |x: i8| labels.iter().position(|&l| l == x);
    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    let ring: Vec<String> = (0..k).map(point).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(out, r##"<polygon points="{}" fill="none" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##, ring.join(" "));
    for (bi, b) in pi.non_trivial_blocks().enumerate() {
        let color = COLORS[bi % COLORS.len()];
        let mut pos: Vec<usize> = b.iter().filter_map(|&x| position(x)).collect();
        pos.sort_unstable();
        let mut pts: Vec<(f64, f64)> = pos.into_iter().map(point).collect();
        if mid.is_some_and(|m| b.iter().any(|x| x.abs() == m)) && !(b.iter().all(|x| b.contains(&-x)) && pts.len() > 2) {
            pts.push((c, c));
        }
        let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        if pts.len() == 2 {
            let ((x1, y1), (x2, y2)) = (pts[0], pts[1]);
            let _ =
                writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="3"/>"#);
        } else if pts.len() > 2 {
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="2"/>"#,
                coords.join(" ")
            );
        }
    }
    for (i, l) in labels.iter().enumerate() {
        let (x, y) = point(i);
        let a = -PI / 2.0 + 2.0 * PI * i as f64 / k as f64;
        let (lx, ly) = (c + (RADIUS + 18.0) * a.cos(), c + (RADIUS + 18.0) * a.sin() + 5.0);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">{l}</text>"#
        );
    }
    if let Some(m) = mid {
        let _ = writeln!(out, r#"<circle cx="{c:.2}" cy="{c:.2}" r="4" fill="black"/>"#);
        let _ =
            writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">±{m}</text>"#, c + 8.0, c - 8.0);
    }
    out.push_str("</svg>\n");
    out
}

/// Layered drawing of the Hasse diagram: one row per rank, bottom element
/// at the bottom.
pub fn hasse(l: &NcLattice) -> String {
    let ranks = l.max_rank() + 1;
    let rows: Vec<Vec<usize>> = (0..ranks).map(|r| l.of_rank(r)).collect();
    let widest = rows.iter().map(Vec::len).max().unwrap_or(1);
    let (dx, dy) = (110.0, 110.0);
    let (w, h) = (dx * widest as f64 + 40.0, dy * ranks as f64 + 20.0);
    let mut at = vec![(0.0, 0.0); l.len()];
    for (r, row) in rows.iter().enumerate() {
        let off = (w - dx * row.len() as f64) / 2.0;
        for (k, &i) in row.iter().enumerate() {
            at[i] = (off + dx * (k as f64 + 0.5), h - 40.0 - dy * r as f64);
        }
    }
    let mut out = String::new();
    header(&mut out, w, h);
    for x in 0..l.len() {
        for &y in l.upper_covers(x) {
            let ((x1, y1), (x2, y2)) = (at[x], at[y]);
            let _ = writeln!(out, r##"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="#888888"/>"##);
        }
    }
    for (i, &(x, y)) in at.iter().enumerate() {
        let label = xml_escape(&l.fmt_elem(i));
        let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="5" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{label}</text>"#,
            y - 9.0
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
