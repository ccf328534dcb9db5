//! Every rank-one critical wall of `I_Z`, the higher-rank bound circle and the
//! accumulation point, as CSV and SVG.

use std::fmt::Write;

use hilbnef_core::chern::{discriminant, mumford_slope, ChernCharacter};
use hilbnef_core::rational::to_pq;
use hilbnef_core::walls::{higher_rank_bound, numerical_wall};
use hilbnef_core::{Rational, Wall};
use num_traits::{Signed, Zero};

use crate::commands::{decimal, setup, CliError, Request};
use crate::workers::{critical_set, worker_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Critical,
    Bound,
    Accumulation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub kind: RowKind,
    pub label: String,
    /// `p/q`, or `p/q-sqrt(p/q)` when the center is irrational.
    pub center: String,
    pub radius_sq: Rational,
    pub decimal_center: f64,
}

pub struct Scan {
    pub n: i64,
    pub mu: Rational,
    pub rows: Vec<ScanRow>,
}

/// `μ - √t` in exact form when possible.
fn left_center(mu: &Rational, t: &Rational) -> (String, f64) {
    let dec = decimal(mu) - decimal(t).sqrt();
    match rational_sqrt(t) {
        Some(r) => (to_pq(&(mu - r)), dec),
        None => (format!("{}-sqrt({})", to_pq(mu), to_pq(t)), dec),
    }
}

fn rational_sqrt(t: &Rational) -> Option<Rational> {
    if t.is_negative() {
        return None;
    }
    let p = t.numer().sqrt();
    let q = t.denom().sqrt();
    (&p * &p == *t.numer() && &q * &q == *t.denom()).then(|| Rational::new(p, q))
}

pub fn scan(req: &Request) -> Result<Scan, CliError> {
    let n = req.n.ok_or_else(|| CliError::Usage("scan needs --n".into()))?;
    let setup = setup(req)?;
    let slice = &setup.slice;
    let v = ChernCharacter::ideal_sheaf(n, slice.surface.rank());
    let mu = mumford_slope(&v, slice).finite().cloned().expect("rank one");
    let delta = discriminant(&v, slice)?;
    let crdiv = critical_set(slice, worker_count())?;
    let mut rows = Vec::new();
    for l in &crdiv.members {
        let w = ChernCharacter::line_bundle(slice.lattice(), &-l);
        if let Wall::Semicircle { center, radius_sq } = numerical_wall(&v, &w, slice)? {
            let coords: Vec<String> = l.coords.iter().map(|c| c.to_string()).collect();
            rows.push(ScanRow {
                kind: RowKind::Critical,
                label: format!("O(-L) L=[{}]", coords.join(" ")),
                decimal_center: decimal(&center),
                center: to_pq(&center),
                radius_sq,
            });
        }
    }
    if !delta.is_negative() {
        let varrho = higher_rank_bound(n, slice);
        let (center, dec) = left_center(&mu, &(&varrho + &delta * Rational::from_integer(2.into())));
        rows.push(ScanRow {
            kind: RowKind::Bound,
            label: "higher-rank bound".into(),
            center,
            radius_sq: varrho,
            decimal_center: dec,
        });
        let (center, dec) = left_center(&mu, &(&delta * Rational::from_integer(2.into())));
        rows.push(ScanRow {
            kind: RowKind::Accumulation,
            label: "accumulation point".into(),
            center,
            radius_sq: Rational::zero(),
            decimal_center: dec,
        });
    }
    Ok(Scan { n, mu, rows })
}

impl Scan {
    pub fn critical_count(&self) -> usize {
        self.rows.iter().filter(|r| r.kind == RowKind::Critical).count()
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["label", "center", "radius_sq", "decimal_center", "decimal_radius"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.label.clone(),
                r.center.clone(),
                to_pq(&r.radius_sq),
                format!("{:.6}", r.decimal_center),
                format!("{:.6}", decimal(&r.radius_sq).sqrt()),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Default window: every semicircle plus the vertical wall.
    pub fn window(&self) -> (f64, f64) {
        let mu = decimal(&self.mu);
        let mut lo = mu - 1.0;
        let mut hi = mu + 1.0;
        for r in &self.rows {
            let rad = decimal(&r.radius_sq).sqrt();
            lo = lo.min(r.decimal_center - rad);
            hi = hi.max(r.decimal_center + rad);
        }
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }

    pub fn svg(&self, window: Option<(f64, f64)>) -> String {
        let (lo, hi) = window.unwrap_or_else(|| self.window());
        let (width, height) = (800.0, 420.0);
        let scale = width / (hi - lo);
        let x = |b: f64| (b - lo) * scale;
        let base = height - 20.0;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(s, r#"<title>walls for n = {}</title>"#, self.n);
        let _ = writeln!(
            s,
            r#"<line x1="0" y1="{base}" x2="{width}" y2="{base}" stroke="black" stroke-width="1"/>"#
        );
        let mu = x(decimal(&self.mu));
        let _ = writeln!(
            s,
            r#"<line x1="{mu:.3}" y1="0" x2="{mu:.3}" y2="{base}" stroke="gray" stroke-width="1"><title>vertical wall beta = {}</title></line>"#,
            to_pq(&self.mu)
        );
        for r in &self.rows {
            let c = x(r.decimal_center);
            match r.kind {
                RowKind::Accumulation => {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{c:.3}" cy="{base}" r="4" fill="red"><title>{}</title></circle>"#,
                        r.label
                    );
                }
                kind => {
                    let rad = decimal(&r.radius_sq).sqrt() * scale;
                    let style = if kind == RowKind::Bound {
                        r#"stroke="blue" stroke-dasharray="6 4""#
                    } else {
                        r#"stroke="black""#
                    };
                    let _ = writeln!(
                        s,
                        r#"<path d="M {:.3} {base} A {rad:.3} {rad:.3} 0 0 1 {:.3} {base}" fill="none" {style}><title>{} center {} radius^2 {}</title></path>"#,
                        c - rad,
                        c + rad,
                        r.label,
                        r.center,
                        to_pq(&r.radius_sq)
                    );
                }
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commands::Command;
    use crate::config::SurfaceConfig;
    use hilbnef_core::rational::frac;

    #[test]
    fn quintic_scan() {
        let req = Request::new(Command::Wall, SurfaceConfig::p3_hypersurface(5), Some(5));
        let sc = scan(&req).unwrap();
        assert_eq!(sc.critical_count(), 1);
        assert_eq!(sc.rows.len(), 3);
        assert_eq!(sc.rows[0].center, "-1/2");
        let csv = sc.csv();
        assert!(csv.starts_with("label,center,radius_sq,decimal_center,decimal_radius\n"));
        assert!(csv.contains("-1/2,1/4,-0.500000,0.500000"));
        assert!(sc.svg(None).contains("<path"));
    }

    #[test]
    fn sqrt_forms() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&frac(2, 1)), None);
        assert_eq!(left_center(&frac(1, 1), &frac(8, 5)).0, "1/1-sqrt(8/5)");
    }
}
