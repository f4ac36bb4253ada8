use std::fmt::Write;

use hullbound::cheb::HullGrid;
use hullbound::{Complex64, MembershipStatus};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 0.08;

/// Static drawing in model coordinates; `y` points up. Dot and marker sizes
/// are fixed fractions of the final view.
#[derive(Default)]
pub struct Svg {
    body: String,
    lo: Option<Complex64>,
    hi: Option<Complex64>,
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

impl Svg {
    pub fn new() -> Self {
        Self::default()
    }

    fn extend(&mut self, z: Complex64, pad: f64) {
        let (a, b) = (z - Complex64::new(pad, pad), z + Complex64::new(pad, pad));
        let lo = self.lo.unwrap_or(a);
        let hi = self.hi.unwrap_or(b);
        self.lo = Some(Complex64::new(lo.re.min(a.re), lo.im.min(a.im)));
        self.hi = Some(Complex64::new(hi.re.max(b.re), hi.im.max(b.im)));
    }

    pub fn points(&mut self, pts: &[Complex64], color: &str) {
        for &z in pts {
            self.extend(z, 0.0);
            let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="@DOT" fill="{color}"/>"#, fmt(z.re), fmt(-z.im));
        }
    }

    /// Cross sized relative to the finished drawing.
    pub fn marker(&mut self, z: Complex64, color: &str) {
        self.extend(z, 0.0);
        let _ = writeln!(
            self.body,
            r#"<path d="M{x} {y} m-@ARM 0 l@DIAM 0 M{x} {y} m0 -@ARM l0 @DIAM" stroke="{color}" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
            x = fmt(z.re),
            y = fmt(-z.im),
        );
    }

    pub fn polyline(&mut self, pts: &[Complex64], closed: bool, color: &str) {
        if pts.is_empty() {
            return;
        }
        let mut d = String::new();
        for (k, &z) in pts.iter().enumerate() {
            self.extend(z, 0.0);
            let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, fmt(z.re), fmt(-z.im));
        }
        if closed {
            d.push('Z');
        }
        let _ = writeln!(
            self.body,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1" vector-effect="non-scaling-stroke"/>"#,
            d.trim_end()
        );
    }

    pub fn circle(&mut self, center: Complex64, radius: f64, color: &str) {
        self.extend(center, radius);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{color}" stroke-width="1" vector-effect="non-scaling-stroke"/>"#,
            fmt(center.re),
            fmt(-center.im),
            fmt(radius)
        );
    }

    /// One rectangle per node, shaded by value and tinted by status.
    pub fn heatmap(&mut self, grid: &HullGrid<f64>) {
        let (dx, dy) = grid.spacing();
        for (z, v, s) in grid.cells() {
            self.extend(z, 0.5 * dx.max(dy));
            let g = (255.0 * v.clamp(0.0, 1.0)).round() as u8;
            let fill = match s {
                MembershipStatus::Member => format!("rgb({g},{},{})", g / 2, g / 4),
                MembershipStatus::Borderline => format!("rgb({g},{g},0)"),
                MembershipStatus::NonMember => format!("rgb({},{},{g})", g / 4, g / 2),
            };
            let _ = writeln!(
                self.body,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}"/>"#,
                fmt(z.re - 0.5 * dx),
                fmt(-z.im - 0.5 * dy),
                fmt(dx),
                fmt(dy)
            );
        }
    }

    pub fn render(&self) -> String {
        let lo = self.lo.unwrap_or(Complex64::new(-1.0, -1.0));
        let hi = self.hi.unwrap_or(Complex64::new(1.0, 1.0));
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-9);
        let pad = MARGIN * span;
        let (x0, y0) = (lo.re - pad, -hi.im - pad);
        let (w, h) = (hi.re - lo.re + 2.0 * pad, hi.im - lo.im + 2.0 * pad);
        let scale = SIZE / w.max(h);
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">\n",
            fmt(w * scale),
            fmt(h * scale),
            fmt(x0),
            fmt(y0),
            fmt(w),
            fmt(h)
        );
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
            fmt(x0),
            fmt(y0),
            fmt(w),
            fmt(h)
        );
        let unit = w.max(h);
        out.push_str(
            &self
                .body
                .replace("@DOT", &fmt(0.006 * unit))
                .replace("@ARM", &fmt(0.02 * unit))
                .replace("@DIAM", &fmt(0.04 * unit)),
        );
        out.push_str("</svg>\n");
        out
    }
}
