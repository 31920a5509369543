//! Hand-built SVG figures: disks in the complex plane, an optional
//! exclusion annulus, and × markers for uncertified eigenvalue
//! approximations. No plotting dependencies; output is deterministic
//! (fixed canvas, fixed-precision coordinates).

use crate::gersch::Disk;
use std::fmt::Write as _;

const CANVAS: f64 = 640.0;
const MARGIN: f64 = 48.0;

#[derive(Debug, Clone)]
pub struct DiskShape {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct AnnulusShape {
    pub cx: f64,
    pub cy: f64,
    pub r_inner: f64,
    pub r_outer: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub title: String,
    pub disks: Vec<DiskShape>,
    pub annulus: Option<AnnulusShape>,
    pub markers: Vec<(f64, f64)>,
}

impl Scene {
    pub fn push_disk(&mut self, d: &Disk) {
        let c = d.center_crect();
        let cx = 0.5 * (c.re.lo() + c.re.hi());
        let cy = 0.5 * (c.im.lo() + c.im.hi());
        self.disks.push(DiskShape { cx, cy, r: d.radius.value_f64(), label: d.label.clone() });
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt(x: f64) -> String {
    // Fixed precision keeps byte-identical output across runs.
    let s = format!("{x:.4}");
    if s == "-0.0000" { "0.0000".into() } else { s }
}

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(scene: &Scene) -> Frame {
        let mut spots: Vec<(f64, f64, f64)> =
            scene.disks.iter().map(|d| (d.cx, d.cy, d.r)).collect();
        if let Some(a) = &scene.annulus {
            spots.push((a.cx, a.cy, a.r_outer));
        }
        spots.extend(scene.markers.iter().map(|&(x, y)| (x, y, 0.0)));
        if spots.is_empty() {
            spots.push((0.0, 0.0, 1.0));
        }
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for &(x, y, r) in &spots {
            min_x = min_x.min(x - r);
            max_x = max_x.max(x + r);
            min_y = min_y.min(y - r);
            max_y = max_y.max(y + r);
        }
        if max_x - min_x < 1e-9 {
            min_x -= 0.5;
            max_x += 0.5;
        }
        if max_y - min_y < 1e-9 {
            min_y -= 0.5;
            max_y += 0.5;
        }
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        // Center the smaller axis inside the square canvas.
        let pad_x = (span - (max_x - min_x)) / 2.0;
        let pad_y = (span - (max_y - min_y)) / 2.0;
        Frame { min_x: min_x - pad_x, min_y: min_y - pad_y, scale }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.min_x) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        // SVG y grows downward; the imaginary axis grows upward.
        CANVAS - MARGIN - (y - self.min_y) * self.scale
    }

    fn pr(&self, r: f64) -> f64 {
        (r * self.scale).max(0.75)
    }
}

fn circle_subpath(cx: f64, cy: f64, r: f64) -> String {
    format!(
        "M {} {} A {r} {r} 0 1 0 {} {} A {r} {r} 0 1 0 {} {} Z",
        fmt(cx + r),
        fmt(cy),
        fmt(cx - r),
        fmt(cy),
        fmt(cx + r),
        fmt(cy),
        r = fmt(r),
    )
}

pub fn render(scene: &Scene) -> String {
    let f = Frame::fit(scene);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">",
        c = CANVAS as u32
    );
    let _ = writeln!(s, "  <title>{}</title>", esc(&scene.title));
    let _ = writeln!(
        s,
        "  <rect x=\"0\" y=\"0\" width=\"{c}\" height=\"{c}\" fill=\"#ffffff\"/>",
        c = CANVAS as u32
    );
    // Real and imaginary axes, when they cross the view.
    let x0 = f.px(0.0);
    let y0 = f.py(0.0);
    if (0.0..=CANVAS).contains(&x0) {
        let _ = writeln!(
            s,
            "  <line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{c}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            x = fmt(x0),
            c = CANVAS as u32
        );
    }
    if (0.0..=CANVAS).contains(&y0) {
        let _ = writeln!(
            s,
            "  <line x1=\"0\" y1=\"{y}\" x2=\"{c}\" y2=\"{y}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            y = fmt(y0),
            c = CANVAS as u32
        );
    }
    for d in &scene.disks {
        let _ = writeln!(
            s,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#4a90d9\" fill-opacity=\"0.15\" stroke=\"#4a90d9\" stroke-width=\"1.5\"/>",
            fmt(f.px(d.cx)),
            fmt(f.py(d.cy)),
            fmt(f.pr(d.r)),
        );
    }
    if let Some(a) = &scene.annulus {
        let cx = f.px(a.cx);
        let cy = f.py(a.cy);
        let ri = f.pr(a.r_inner);
        let ro = f.pr(a.r_outer);
        // Shaded ring: certified free of eigenvalues.
        let _ = writeln!(
            s,
            "  <path d=\"{} {}\" fill=\"#c0392b\" fill-opacity=\"0.08\" fill-rule=\"evenodd\" stroke=\"none\"/>",
            circle_subpath(cx, cy, ro),
            circle_subpath(cx, cy, ri),
        );
        let _ = writeln!(
            s,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
            fmt(cx),
            fmt(cy),
            fmt(ro),
        );
        let _ = writeln!(
            s,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#2e8b57\" fill-opacity=\"0.12\" stroke=\"#2e8b57\" stroke-width=\"1.5\"/>",
            fmt(cx),
            fmt(cy),
            fmt(ri),
        );
    }
    for &(x, y) in &scene.markers {
        let px = f.px(x);
        let py = f.py(y);
        let _ = writeln!(
            s,
            "  <path d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"#222222\" stroke-width=\"1.2\"/>",
            fmt(px - 3.5),
            fmt(py - 3.5),
            fmt(px + 3.5),
            fmt(py + 3.5),
            fmt(px - 3.5),
            fmt(py + 3.5),
            fmt(px + 3.5),
            fmt(py - 3.5),
        );
    }
    for d in &scene.disks {
        let px = f.px(d.cx);
        let py = f.py(d.cy) - f.pr(d.r) - 5.0;
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\" text-anchor=\"middle\">{}</text>",
            fmt(px),
            fmt(py.max(12.0)),
            esc(&d.label),
        );
    }
    if !scene.markers.is_empty() {
        let _ = writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666666\">x = uncertified eigenvalue approximation</text>",
            fmt(MARGIN),
            fmt(CANVAS - 14.0),
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_scene() -> Scene {
        Scene {
            title: "disks <&> test".into(),
            disks: vec![
                DiskShape { cx: 0.0, cy: 0.0, r: 1.0, label: "G1".into() },
                DiskShape { cx: 3.0, cy: 0.5, r: 0.5, label: "G2".into() },
            ],
            annulus: Some(AnnulusShape { cx: 0.0, cy: 0.0, r_inner: 0.3, r_outer: 0.9 }),
            markers: vec![(0.1, 0.0), (2.9, 0.4)],
        }
    }

    #[test]
    fn output_is_deterministic_and_tagged() {
        let scene = sample_scene();
        let a = render(&scene);
        assert_eq!(a, render(&scene));
        assert!(a.starts_with("<?xml version=\"1.0\""));
        assert!(a.trim_end().ends_with("</svg>"));
        assert!(a.contains("&lt;&amp;&gt;"));
        assert_eq!(a.matches("<circle").count(), 4);
        assert!(a.contains("uncertified"));
    }

    #[test]
    fn tags_balance() {
        let a = render(&sample_scene());
        for tag in ["svg", "title", "text"] {
            let open = a.matches(&format!("<{tag}")).count();
            let close = a.matches(&format!("</{tag}>")).count();
            assert_eq!(open, close, "unbalanced <{tag}>");
        }
        // Every other element is self-closing.
        let self_closing = a.matches("/>").count();
        assert_eq!(
            self_closing,
            a.matches("<rect").count()
                + a.matches("<line").count()
                + a.matches("<circle").count()
                + a.matches("<path").count()
        );
    }

    #[test]
    fn empty_scene_still_renders() {
        let a = render(&Scene { title: "empty".into(), ..Default::default() });
        assert!(a.contains("</svg>"));
    }
}
