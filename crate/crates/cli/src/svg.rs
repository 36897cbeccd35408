//! SVG drawings of planar polytopes on the lattice grid.

use num_traits::ToPrimitive;
use toric_acyclic::QPolytope;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 1.0;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub struct Layer {
    pub label: String,
    pub polytope: Option<QPolytope>,
}

fn points(p: &QPolytope) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> =
        p.vertices().iter().map(|v| (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0))).collect();
    let n = pts.len() as f64;
    let (cx, cy) = pts.iter().fold((0.0, 0.0), |(x, y), p| (x + p.0 / n, y + p.1 / n));
    pts.sort_by(|a, b| (a.1 - cy).atan2(a.0 - cx).total_cmp(&(b.1 - cy).atan2(b.0 - cx)));
    pts
}

pub fn render(layers: &[Layer]) -> String {
    let polys: Vec<Vec<(f64, f64)>> =
        layers.iter().map(|l| l.polytope.as_ref().map(points).unwrap_or_default()).collect();
    let all: Vec<(f64, f64)> = polys.iter().flatten().copied().chain([(0.0, 0.0)]).collect();
    let lo_x = all.iter().map(|p| p.0).fold(f64::INFINITY, f64::min).floor() - MARGIN;
    let hi_x = all.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max).ceil() + MARGIN;
    let lo_y = all.iter().map(|p| p.1).fold(f64::INFINITY, f64::min).floor() - MARGIN;
    let hi_y = all.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max).ceil() + MARGIN;
    let legend = 20.0 * layers.len() as f64 + 10.0;
    let w = (hi_x - lo_x) * SCALE;
    let h = (hi_y - lo_y) * SCALE;
    // lattice coordinates to pixels, y pointing up
    let px = |x: f64| (x - lo_x) * SCALE;
    let py = |y: f64| (hi_y - y) * SCALE;

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{}\" viewBox=\"0 0 {w} {}\">\n",
        h + legend,
        h + legend
    );
    s.push_str(&format!("<rect width=\"{w}\" height=\"{}\" fill=\"white\"/>\n", h + legend));
    s.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbb\"/>\n",
        px(lo_x),
        py(0.0),
        px(hi_x),
        py(0.0)
    ));
    s.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbb\"/>\n",
        px(0.0),
        py(lo_y),
        px(0.0),
        py(hi_y)
    ));
    let mut y = lo_y as i64;
    while y as f64 <= hi_y {
        let mut x = lo_x as i64;
        while x as f64 <= hi_x {
            s.push_str(&format!("<circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#999\"/>\n", px(x as f64), py(y as f64)));
            x += 1;
        }
        y += 1;
    }
    for (i, (layer, pts)) in layers.iter().zip(&polys).enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        if !pts.is_empty() {
            let coords: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", px(p.0), py(p.1))).collect();
            s.push_str(&format!(
                "<polygon points=\"{}\" fill=\"{colour}\" fill-opacity=\"0.15\" stroke=\"{colour}\" stroke-width=\"2\"/>\n",
                coords.join(" ")
            ));
            for p in pts {
                s.push_str(&format!(
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3.5\" fill=\"{colour}\"/>\n",
                    px(p.0),
                    py(p.1)
                ));
            }
        }
        let label = if layer.polytope.is_some() { layer.label.clone() } else { format!("{} (empty)", layer.label) };
        s.push_str(&format!(
            "<text x=\"8\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"13\" fill=\"{colour}\">{}</text>\n",
            h + 20.0 * (i as f64 + 1.0),
            escape(&label)
        ));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_a_triangle() {
        let tri = QPolytope::from_integer_vertices(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let out = render(&[
            Layer { label: "O(1)".into(), polytope: Some(tri) },
            Layer { label: "x<y".into(), polytope: None },
        ]);
        assert!(out.starts_with("<svg"));
        assert_eq!(out.matches("<polygon").count(), 1);
        assert!(out.contains("x&lt;y (empty)"));
    }
}
