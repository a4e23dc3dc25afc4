#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_eqlab"));
    c.env_remove("EQLAB_TOL");
    c
}

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 output")
}

const ID_BASE: &str = "https://schemas.eqlab.invalid/";

fn load(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema is JSON")
}

/// Validates `instance` against `<name>.schema.json`, with every schema in
/// the directory registered so cross-file references resolve offline.
pub fn validate(name: &str, instance: &Value) -> Result<(), String> {
    let mut opts = jsonschema::options();
    for entry in std::fs::read_dir(schema_dir()).expect("schema dir") {
        let path = entry.expect("dir entry").path();
        let file = path.file_name().unwrap().to_string_lossy().to_string();
        let res = jsonschema::Resource::from_contents(load(&path)).map_err(|e| e.to_string())?;
        opts = opts.with_resource(format!("{ID_BASE}{file}"), res);
    }
    let schema = load(&schema_dir().join(format!("{name}.schema.json")));
    let v = opts.build(&schema).map_err(|e| format!("{name}: bad schema: {e}"))?;
    let errors: Vec<String> = v
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(format!("{name}: {}", errors.join("; ")))
    }
}

fn attr(tag: &str, name: &str) -> Option<f64> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let end = start + tag[start..].find('"')?;
    tag[start..end].parse().ok()
}

fn path_data(tag: &str) -> Option<&str> {
    let start = tag.find(" d=\"")? + 4;
    let end = start + tag[start..].find('"')?;
    Some(&tag[start..end])
}

/// Centre of an SVG elliptical arc with equal radii and no rotation, by the
/// endpoint-to-centre conversion of the SVG implementation notes.
fn arc_center(x1: f64, y1: f64, r: f64, large: bool, sweep: bool, x2: f64, y2: f64) -> (f64, f64) {
    let xp = (x1 - x2) / 2.0;
    let yp = (y1 - y2) / 2.0;
    let num = (r * r - xp * xp - yp * yp).max(0.0);
    let den = xp * xp + yp * yp;
    let mut k = (num / den).sqrt();
    if large == sweep {
        k = -k;
    }
    (k * yp + (x1 + x2) / 2.0, -k * xp + (y1 + y2) / 2.0)
}

/// Worst pixel error of the geodesics in a disk-model SVG: endpoints must
/// sit on the boundary circle, arcs must belong to circles orthogonal to it
/// and bulge inwards, and straight geodesics must pass through the centre.
pub fn disk_orthogonality(svg: &str) -> Result<(f64, usize), String> {
    let boundary = svg
        .lines()
        .find(|l| l.contains("class=\"boundary\"") && l.contains("<circle"))
        .ok_or("no boundary circle")?;
    let (ox, oy, big_r) = (
        attr(boundary, "cx").ok_or("cx")?,
        attr(boundary, "cy").ok_or("cy")?,
        attr(boundary, "r").ok_or("r")?,
    );
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for line in svg.lines().filter(|l| l.contains("class=\"geodesic")) {
        let d = path_data(line).ok_or("path without data")?;
        let tok: Vec<&str> = d.split_whitespace().collect();
        let f = |i: usize| -> Result<f64, String> {
            tok.get(i).ok_or(format!("short path {d}"))?.parse::<f64>().map_err(|e| e.to_string())
        };
        let (x1, y1) = (f(1)?, f(2)?);
        let on_circle = |x: f64, y: f64| ((x - ox).hypot(y - oy) - big_r).abs();
        worst = worst.max(on_circle(x1, y1));
        match tok.get(3) {
            Some(&"A") => {
                let (r, large, sweep) = (f(4)?, f(7)? != 0.0, f(8)? != 0.0);
                let (x2, y2) = (f(9)?, f(10)?);
                worst = worst.max(on_circle(x2, y2));
                let (cx, cy) = arc_center(x1, y1, r, large, sweep, x2, y2);
                let dist = (cx - ox).hypot(cy - oy);
                worst = worst.max((dist - (big_r * big_r + r * r).sqrt()).abs());
                // The drawn arc's midpoint must lie inside the disk.
                let (mx, my) = ((x1 + x2) / 2.0 - cx, (y1 + y2) / 2.0 - cy);
                let len = mx.hypot(my);
                let (px, py) = (cx + r * mx / len, cy + r * my / len);
                if (px - ox).hypot(py - oy) > big_r + 0.5 {
                    return Err(format!("arc bulges outwards: {d}"));
                }
            }
            Some(&"L") => {
                let (x2, y2) = (f(4)?, f(5)?);
                worst = worst.max(on_circle(x2, y2));
                let cross = (x2 - x1) * (oy - y1) - (y2 - y1) * (ox - x1);
                worst = worst.max(cross.abs() / (x2 - x1).hypot(y2 - y1));
            }
            _ => return Err(format!("unexpected path {d}")),
        }
        count += 1;
    }
    Ok((worst, count))
}
