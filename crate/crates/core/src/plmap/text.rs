//! Plain-text map format.
//!
//! ```text
//! map f1          # optional, names the block inside a map file
//! line            # or: circle L=5
//! bp 0:0          # one line per breakpoint x:y (lift values for circles)
//! bp 1/2:1
//! tails 0 0       # line maps only: left and right translation offsets
//! rot 1           # circle maps without breakpoints only
//! ```
//!
//! Blocks are separated by blank lines. `#` starts a comment.

use std::fmt::Write as _;

use super::{PlCircle, PlLine, PlMap};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, Rat};

pub fn format_map(f: &PlMap) -> String {
    let mut s = String::new();
    match f {
        PlMap::Line(m) => {
            s.push_str("line\n");
            for (x, y) in m.breakpoints() {
                let _ = writeln!(s, "bp {x}:{y}");
            }
            let _ = writeln!(s, "tails {} {}", m.left_tail(), m.right_tail());
        }
        PlMap::Circle(m) => {
            let _ = writeln!(s, "circle L={}", m.modulus());
            for (x, y) in m.breakpoints() {
                let _ = writeln!(s, "bp {x}:{y}");
            }
            if m.breakpoints().is_empty() {
                let _ = writeln!(s, "rot {}", m.rotation_amount());
            }
        }
    }
    s
}

pub fn format_named(name: &str, f: &PlMap) -> String {
    format!("map {name}\n{}", format_map(f))
}

/// Writes a map file: named blocks separated by blank lines.
pub fn format_map_file<'a>(maps: impl IntoIterator<Item = (&'a str, &'a PlMap)>) -> String {
    maps.into_iter().map(|(n, f)| format_named(n, f)).collect::<Vec<_>>().join("\n")
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses one block (with or without a `map <name>` header).
pub fn parse_map(block: &str) -> Result<PlMap> {
    parse_block(block).map(|(_, m)| m)
}

fn parse_block(block: &str) -> Result<(Option<String>, PlMap)> {
    let mut name = None;
    let mut kind: Option<Option<Rat>> = None;
    let mut bps = Vec::new();
    let mut tails: Option<(Rat, Rat)> = None;
    let mut rot: Option<Rat> = None;
    for raw in block.lines() {
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "map" => name = Some(rest.to_string()),
            "line" => kind = Some(None),
            "circle" => {
                let l = rest
                    .strip_prefix("L=")
                    .ok_or_else(|| Error::Parse(format!("expected `circle L=<rat>`, got `{line}`")))?;
                kind = Some(Some(parse_rat(l)?));
            }
            "bp" => {
                let (x, y) =
                    rest.split_once(':').ok_or_else(|| Error::Parse(format!("expected `bp x:y`, got `{line}`")))?;
                bps.push((parse_rat(x)?, parse_rat(y)?));
            }
            "tails" => {
                let v: Vec<&str> = rest.split_whitespace().collect();
                if v.len() != 2 {
                    return Err(Error::Parse(format!("expected `tails tL tR`, got `{line}`")));
                }
                tails = Some((parse_rat(v[0])?, parse_rat(v[1])?));
            }
            "rot" => rot = Some(parse_rat(rest)?),
            _ => return Err(Error::Parse(format!("unknown map line `{line}`"))),
        }
    }
    let map = match kind {
        None => return Err(Error::Parse("map block without `line` or `circle` kind line".into())),
        Some(None) => {
            let (l, r) = tails.ok_or_else(|| Error::Parse("line map without `tails`".into()))?;
            PlMap::Line(PlLine::new(bps, l, r)?)
        }
        Some(Some(modulus)) => {
            if bps.is_empty() {
                PlMap::Circle(PlCircle::rotation(&modulus, &rot.unwrap_or_default())?)
            } else {
                PlMap::Circle(PlCircle::from_lift_points(&modulus, bps)?)
            }
        }
    };
    Ok((name, map))
}

/// Parses a map file into named maps, in file order.
pub fn parse_map_file(text: &str) -> Result<Vec<(String, PlMap)>> {
    let mut out = Vec::new();
    let mut block = String::new();
    let flush = |block: &mut String, out: &mut Vec<(String, PlMap)>| -> Result<()> {
        if block.lines().any(|l| !strip(l).is_empty()) {
            let (name, map) = parse_block(block)?;
            let name = name.ok_or_else(|| Error::Parse("map block without `map <name>` header".into()))?;
            out.push((name, map));
        }
        block.clear();
        Ok(())
    };
    for line in text.lines() {
        if strip(line).starts_with("map ") && !block.trim().is_empty() {
            flush(&mut block, &mut out)?;
        }
        if line.trim().is_empty() {
            flush(&mut block, &mut out)?;
            continue;
        }
        block.push_str(line);
        block.push('\n');
    }
    flush(&mut block, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn line_block() {
        let f = parse_map("line\nbp 0:0\nbp 1/2:1\nbp 1:3/2\nbp 2:2\ntails 0 0\n").unwrap();
        assert_eq!(f.eval(&rat(1, 4)), rat(1, 2));
        assert_eq!(parse_map(&format_map(&f)).unwrap(), f);
    }

    #[test]
    fn circle_rotation_block() {
        let f = parse_map("circle L=5\nrot 7\n").unwrap();
        assert_eq!(format_map(&f), "circle L=5\nrot 2\n");
    }

    #[test]
    fn inconsistent_tails_rejected() {
        assert!(parse_map("line\nbp 0:1\ntails 0 1\n").is_err());
        assert!(parse_map("bp 0:0\n").is_err());
        assert!(parse_map("circle 5\n").is_err());
    }

    #[test]
    fn map_file_round_trip() {
        let a = PlMap::Line(PlLine::translation(int(1)));
        let b = PlMap::Line(PlLine::new(vec![(int(0), int(0)), (int(1), int(2))], int(0), int(1)).unwrap());
        let text = format_map_file([("a", &a), ("b", &b)]);
        let back = parse_map_file(&text).unwrap();
        assert_eq!(back, vec![("a".to_string(), a), ("b".to_string(), b)]);
    }
}
