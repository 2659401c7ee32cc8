//! SVG drawings of complexes and sweeping orders.

use std::fmt::Write;

use simplex_sweep::{Error, Result, SimplicialComplex, SweepingOrder};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 48.0;
const ARROW: f64 = 26.0;

// fixed view for spatial complexes
const YAW: f64 = 0.6;
const PITCH: f64 = 0.45;

fn project(p: &[f64]) -> (f64, f64) {
    match p {
        [x, y] => (*x, *y),
        [x, y, z] => {
            let (sa, ca) = YAW.sin_cos();
            let (sb, cb) = PITCH.sin_cos();
            (x * ca - y * sa, (x * sa + y * ca) * sb + z * cb)
        }
        _ => (0.0, 0.0),
    }
}

struct View {
    min: (f64, f64),
    scale: f64,
}

impl View {
    fn fit(points: &[(f64, f64)]) -> View {
        if points.is_empty() {
            return View { min: (0.0, 0.0), scale: 1.0 };
        }
        let (mut lo, mut hi) = (points[0], points[0]);
        for &(x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1);
        let scale = if span > 0.0 { (WIDTH - 2.0 * MARGIN) / span } else { 1.0 };
        let pad = ((WIDTH - 2.0 * MARGIN) / scale - (hi.0 - lo.0)) / 2.0;
        let pad_y = ((HEIGHT - 2.0 * MARGIN) / scale - (hi.1 - lo.1)) / 2.0;
        View {
            min: (lo.0 - pad, lo.1 - pad_y),
            scale,
        }
    }

    fn screen(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.min.0) * self.scale, HEIGHT - MARGIN - (y - self.min.1) * self.scale)
    }
}

/// Renders `k` as an SVG 1.1 document: vertices as circles, edges as lines and
/// triangles as translucent polygons. With an order, every entry is labeled
/// with its 1-based position and gets an arrow along its direction.
pub fn plot_svg(k: &SimplicialComplex, order: Option<&SweepingOrder>) -> Result<String> {
    let d = k.ambient_dim();
    if d > 3 {
        return Err(Error::Unsupported(format!("cannot plot a complex in dimension {d}")));
    }
    let flat: Vec<(f64, f64)> = k.vertices().iter().map(|v| project(&v.approx())).collect();
    let view = View::fit(&flat);
    let at = |i: usize| view.screen(flat[i]);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    if order.is_some() {
        let _ = writeln!(
            out,
            r##"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#c0392b"/></marker></defs>"##
        );
    }
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    for t in k.simplices(2) {
        let pts: Vec<String> = t
            .ids()
            .iter()
            .map(|&i| {
                let (x, y) = at(i);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#3b7dd8" fill-opacity="0.25" stroke="none"/>"##,
            pts.join(" ")
        );
    }
    for e in k.simplices(1) {
        let (x1, y1) = at(e.ids()[0]);
        let (x2, y2) = at(e.ids()[1]);
        let _ = writeln!(
            out,
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#222222" stroke-width="1.5"/>"##
        );
    }
    for i in 0..flat.len() {
        let (x, y) = at(i);
        let _ = writeln!(out, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#222222"/>"##);
        let _ = writeln!(
            out,
            r##"<text class="vertex-id" x="{:.2}" y="{:.2}" font-size="10" fill="#555555">{i}</text>"##,
            x + 6.0,
            y - 6.0
        );
    }

    if let Some(order) = order {
        for (index, entry) in order.entries.iter().enumerate() {
            let ids = entry.simplex.ids();
            if ids.iter().any(|&i| i >= flat.len()) {
                return Err(Error::InvalidInput(format!("order mentions {} outside the complex", entry.simplex)));
            }
            let n = ids.len() as f64;
            let centroid = ids
                .iter()
                .map(|&i| flat[i])
                .fold((0.0, 0.0), |acc, p| (acc.0 + p.0 / n, acc.1 + p.1 / n));
            let (cx, cy) = view.screen(centroid);
            let (dx, dy) = project(&entry.direction.approx());
            let len = (dx * dx + dy * dy).sqrt();
            if len > 0.0 {
                let (ex, ey) = (cx + ARROW * dx / len, cy - ARROW * dy / len);
                let _ = writeln!(
                    out,
                    r##"<line class="arrow" x1="{cx:.2}" y1="{cy:.2}" x2="{ex:.2}" y2="{ey:.2}" stroke="#c0392b" stroke-width="1.2" marker-end="url(#head)"/>"##
                );
            }
            let _ = writeln!(
                out,
                r##"<text class="order" x="{cx:.2}" y="{cy:.2}" font-size="12" font-weight="bold" fill="#c0392b">{}</text>"##,
                index + 1
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use simplex_sweep::sweep::order_vertices_along;
    use simplex_sweep::{order_next, Simplex, Vector};

    fn t1() -> SimplicialComplex {
        let v = [[0, 0], [2, 0], [1, 1]].iter().map(|c| Vector::from_ints(c)).collect();
        SimplicialComplex::from_maximal(2, v, &[Simplex::from([0, 1, 2])]).unwrap()
    }

    #[test]
    fn triangle_element_counts() {
        let svg = plot_svg(&t1(), None).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<polygon").count(), 1);
    }

    fn order_label(line: &str) -> (String, String, String) {
        let attr = |name: &str| line.split(&format!(" {name}=\"")).nth(1).unwrap().split('"').next().unwrap().to_string();
        let text = line.rsplit_once("</text>").unwrap().0.rsplit_once('>').unwrap().1.to_string();
        (attr("x"), attr("y"), text)
    }

    #[test]
    fn order_labels() {
        let k = t1();
        let so0 = order_vertices_along(&k, &Vector::from_ints(&[0, 1])).unwrap();
        let so1 = order_next(&k, &so0, None).unwrap();
        let svg = plot_svg(&k, Some(&so1)).unwrap();
        let labels: Vec<(String, String, String)> =
            svg.lines().filter(|l| l.contains(r#"class="order""#)).map(order_label).collect();
        let view = View::fit(&[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0)]);
        let expected: Vec<(String, String, String)> = so1
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let ids = e.simplex.ids();
                let p: Vec<f64> = (0..2)
                    .map(|c| (k.vertex(ids[0]).approx()[c] + k.vertex(ids[1]).approx()[c]) / 2.0)
                    .collect();
                let (x, y) = view.screen((p[0], p[1]));
                (format!("{x:.2}"), format!("{y:.2}"), (i + 1).to_string())
            })
            .collect();
        assert_eq!(labels, expected);
        assert_eq!(svg.matches(r#"class="arrow""#).count(), 3);
    }

    #[test]
    fn empty_canvas() {
        let k = SimplicialComplex::from_maximal(2, vec![], &[]).unwrap();
        let svg = plot_svg(&k, None).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 0);
    }

    #[test]
    fn too_many_dimensions() {
        let k = SimplicialComplex::from_maximal(4, vec![Vector::from_ints(&[0, 0, 0, 1])], &[]).unwrap();
        assert!(matches!(plot_svg(&k, None), Err(Error::Unsupported(_))));
    }

    #[test]
    fn deterministic() {
        assert_eq!(plot_svg(&t1(), None).unwrap(), plot_svg(&t1(), None).unwrap());
    }
}
