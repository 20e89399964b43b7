//! Text format for curves.
//!
//! ```text
//! space: cylinder
//! group: 2
//! component
//! 1/20 7/10 0
//! 1/2 9/10 0
//! ...
//! ```
//!
//! Header lines `space: cylinder|torus` and `group: d` (cylinder) or
//! `group: d1 d2` (torus), optionally `lifts: minimal|explicit`. Each
//! `component` line starts a closed curve; the following lines give one
//! vertex each as `u v h`. On the cylinder `u` is the angle and `v` the
//! height `z` in `[0, 1]`; on the torus both are angles. Angles are in
//! turns. Numbers are exact: integers, decimals, or `p/q`.
//!
//! With `lifts: minimal` (the default) every segment takes the shorter way
//! around, and must stay below half a turn. With `lifts: explicit` the
//! vertices are positions in the universal cover, the last vertex of each
//! component repeats the first up to whole turns, and long segments are
//! subdivided automatically.

use std::fmt::Write as _;

use super::geom::{parse_q, Q};
use super::{Curve, CurveVertex, GroupSpec, PhiError, Space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub curve: Curve,
    pub group: GroupSpec,
}

fn perr(line: usize, message: impl Into<String>) -> PhiError {
    PhiError::Parse { line, message: message.into() }
}

fn parse_group(space: Space, rest: &str, line: usize) -> Result<GroupSpec, PhiError> {
    let nums: Vec<u32> = rest
        .split_whitespace()
        .map(|t| t.parse::<u32>().ok().filter(|&n| n >= 1))
        .collect::<Option<_>>()
        .ok_or_else(|| perr(line, format!("group orders must be positive integers: `{rest}`")))?;
    match (space, nums.as_slice()) {
        (Space::Cylinder, [d]) => Ok(GroupSpec::Cyclic { d: *d }),
        (Space::Torus, [d1, d2]) => Ok(GroupSpec::Lattice { d1: *d1, d2: *d2 }),
        (Space::Cylinder, _) => Err(perr(line, "cylinder group is `group: d`")),
        (Space::Torus, _) => Err(perr(line, "torus group is `group: d1 d2`")),
    }
}

pub fn parse_curve_file(text: &str) -> Result<CurveFile, PhiError> {
    let mut space = None;
    let mut group_line: Option<(usize, String)> = None;
    let mut explicit = false;
    let mut comps: Vec<Vec<CurveVertex>> = Vec::new();
    let mut in_body = false;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t == "component" {
            in_body = true;
            comps.push(Vec::new());
            continue;
        }
        if !in_body {
            let (key, rest) = t.split_once(':').ok_or_else(|| perr(line, format!("unexpected `{t}`")))?;
            let rest = rest.trim();
            match key.trim() {
                "space" => {
                    space = Some(match rest {
                        "cylinder" => Space::Cylinder,
                        "torus" => Space::Torus,
                        _ => return Err(perr(line, format!("unknown space `{rest}`"))),
                    })
                }
                "group" => group_line = Some((line, rest.to_string())),
                "lifts" => {
                    explicit = match rest {
                        "minimal" => false,
                        "explicit" => true,
                        _ => return Err(perr(line, format!("unknown lifts mode `{rest}`"))),
                    }
                }
                other => return Err(perr(line, format!("unknown header `{other}`"))),
            }
            continue;
        }
        let nums: Vec<Q> = t
            .split_whitespace()
            .map(parse_q)
            .collect::<Option<_>>()
            .ok_or_else(|| perr(line, format!("expected three numbers, found `{t}`")))?;
        let [u, v, h] = <[Q; 3]>::try_from(nums)
            .map_err(|_| perr(line, format!("expected three numbers, found `{t}`")))?;
        comps.last_mut().expect("in body").push(CurveVertex::new(u, v, h));
    }
    let space = space.ok_or_else(|| perr(1, "missing `space:` header"))?;
    let (gl, g) = group_line.ok_or_else(|| perr(1, "missing `group:` header"))?;
    let group = parse_group(space, &g, gl)?;
    if comps.is_empty() {
        return Err(perr(last_line.max(1), "no `component` sections"));
    }
    let curve = if explicit { Curve::from_lifted(space, comps)? } else { Curve::new(space, comps)? };
    Ok(CurveFile { curve, group })
}

pub fn serialize_curve_file(f: &CurveFile) -> String {
    let mut out = String::new();
    writeln!(out, "space: {}", f.curve.space()).unwrap();
    writeln!(out, "group: {}", f.group).unwrap();
    for comp in f.curve.components() {
        out.push_str("component\n");
        for p in comp {
            writeln!(out, "{} {} {}", p.u, p.v, p.h).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "space: cylinder\ngroup: 3\ncomponent\n0 0.5 0\n1/3 0.6 0\n2/3 1/2 0\n";
        let f = parse_curve_file(text).unwrap();
        assert_eq!(f.group, GroupSpec::Cyclic { d: 3 });
        assert_eq!(f.curve.components()[0].len(), 3);
        assert_eq!(parse_curve_file(&serialize_curve_file(&f)).unwrap(), f);
    }

    #[test]
    fn errors() {
        let cases = [
            ("group: 2\ncomponent\n0 0 0\n", "space"),
            ("space: cylinder\ncomponent\n0 0 0\n0.2 0 0\n", "group"),
            ("space: cylinder\ngroup: 2 2\ncomponent\n0 0 0\n", "cylinder group"),
            ("space: torus\ngroup: 0 1\n", "positive"),
            ("space: sphere\n", "unknown space"),
            ("space: cylinder\ngroup: 2\ncomponent\n0 0\n", "three numbers"),
            ("space: cylinder\ngroup: 2\n", "no `component`"),
        ];
        for (text, needle) in cases {
            let e = parse_curve_file(text).unwrap_err();
            assert!(e.to_string().contains(needle), "{text:?}: {e}");
        }
    }
}
