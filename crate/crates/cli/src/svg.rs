//! Layered SVG figures. Coordinates are written with nine significant
//! digits and the y axis pointing up.

use std::fmt::Write;

use pedalgeom::{Point, Polygon};

#[derive(Debug, Clone)]
pub enum Item {
    Polygon(Vec<Point>),
    Segment(Point, Point),
    Dot(Point),
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub id: &'static str,
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub layers: Vec<Layer>,
}

const PALETTE: [&str; 6] = [
    "#222222", "#888888", "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
];

impl Figure {
    pub fn layer(&mut self, id: &'static str, items: Vec<Item>) -> &mut Self {
        self.layers.push(Layer { id, items });
        self
    }

    pub fn polygons<'a>(
        &mut self,
        id: &'static str,
        polys: impl IntoIterator<Item = &'a Polygon>,
    ) -> &mut Self {
        let items = polys
            .into_iter()
            .map(|p| Item::Polygon(p.vertices().to_vec()))
            .collect();
        self.layer(id, items)
    }

    pub fn dots(&mut self, id: &'static str, points: impl IntoIterator<Item = Point>) -> &mut Self {
        let items = points.into_iter().map(Item::Dot).collect();
        self.layer(id, items)
    }

    fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.layers
            .iter()
            .flat_map(|l| &l.items)
            .flat_map(|it| match it {
                Item::Polygon(v) => v.clone(),
                Item::Segment(a, b) => vec![*a, *b],
                Item::Dot(p) => vec![*p],
            })
    }

    pub fn to_svg(&self) -> String {
        let (mut lo, mut hi) = (
            Point::new(f64::MAX, f64::MAX),
            Point::new(f64::MIN, f64::MIN),
        );
        for p in self.points().filter(|p| p.is_finite()) {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if lo.x > hi.x {
            lo = Point::new(-1.0, -1.0);
            hi = Point::new(1.0, 1.0);
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let margin = 0.05 * extent;
        let (w, h) = (hi.x - lo.x + 2.0 * margin, hi.y - lo.y + 2.0 * margin);
        let stroke = extent / 400.0;
        let radius = extent / 150.0;

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
            num(lo.x - margin),
            num(-hi.y - margin),
            num(w),
            num(h),
            num((800.0 * h / w).round()),
        )
        .unwrap();
        for (k, layer) in self.layers.iter().enumerate() {
            let colour = PALETTE[k % PALETTE.len()];
            writeln!(
                out,
                "  <g id=\"{}\" stroke=\"{colour}\" fill=\"none\" stroke-width=\"{}\">",
                layer.id,
                num(stroke)
            )
            .unwrap();
            for item in &layer.items {
                match item {
                    Item::Polygon(v) => {
                        let pts: Vec<String> =
                            v.iter().map(|p| format!("{},{}", num(p.x), num(-p.y))).collect();
                        writeln!(out, "    <polygon points=\"{}\"/>", pts.join(" ")).unwrap();
                    }
                    Item::Segment(a, b) => writeln!(
                        out,
                        "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-dasharray=\"{} {}\"/>",
                        num(a.x),
                        num(-a.y),
                        num(b.x),
                        num(-b.y),
                        num(4.0 * stroke),
                        num(2.0 * stroke)
                    )
                    .unwrap(),
                    Item::Dot(p) => writeln!(
                        out,
                        "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{colour}\"/>",
                        num(p.x),
                        num(-p.y),
                        num(radius)
                    )
                    .unwrap(),
                }
            }
            out.push_str("  </g>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}

/// `x` rounded to nine significant digits, printed in its shortest form.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.8e}").parse().unwrap();
    format!("{rounded}")
}
