//! Group files and the builtin groups.
//!
//! ```text
//! kind circle            # or: line
//! modulus 5              # circle groups only
//! maps ring.maps         # map file, relative to the group file
//! generators r1 r2 r3 r4 r5
//! witness ring.witness   # optional
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use plring::chain::{make_kkl_generators, make_standard_chain};
use plring::cvgraph::{ring_witnesses, WitnessFile};
use plring::exactnum::{parse_rat, Rat};
use plring::plmap::text::{format_map_file, parse_map_file};
use plring::plmap::{GenAssignment, MapKind, PlCircle, PlLine, PlMap};
use plring::ring::{make_standard_ring5, validate_ring, RingSystem};
use plring::{Error, Result};

pub struct Group {
    pub generators: Vec<String>,
    pub maps: Vec<PlMap>,
    pub kind: MapKind,
    pub witness: Option<Witness>,
}

pub enum Witness {
    File(PathBuf),
    Inline(WitnessFile),
}

impl Group {
    pub fn env(&self) -> Result<GenAssignment> {
        GenAssignment::from_maps(self.generators.iter().cloned().zip(self.maps.iter().cloned()))
    }

    pub fn line_maps(&self) -> Option<Vec<(String, PlLine)>> {
        self.generators.iter().zip(&self.maps).map(|(n, m)| m.as_line().map(|f| (n.clone(), f.clone()))).collect()
    }

    pub fn circle_maps(&self) -> Option<Vec<(String, PlCircle)>> {
        self.generators.iter().zip(&self.maps).map(|(n, m)| m.as_circle().map(|f| (n.clone(), f.clone()))).collect()
    }

    /// The group as a validated ring, when it is one.
    pub fn ring(&self) -> Option<RingSystem> {
        validate_ring(&self.circle_maps()?).ok()
    }

    /// Generators plus `rp1..rp5` when the group is a 5-ring whose
    /// conjugates can be built.
    pub fn env_with_derived(&self) -> Result<GenAssignment> {
        if let Some(r) = self.ring().filter(|r| r.len() == 5) {
            if let Ok(env) = r.env_with_rprimes() {
                return Ok(env);
            }
        }
        self.env()
    }

    pub fn from_named(named: Vec<(String, PlMap)>, witness: Option<Witness>) -> Result<Group> {
        let kind =
            named.first().map(|(_, m)| m.kind()).ok_or_else(|| Error::Parse("group without generators".into()))?;
        let (generators, maps) = named.into_iter().unzip();
        let g = Group { generators, maps, kind, witness };
        g.env()?;
        Ok(g)
    }
}

pub fn builtin(name: &str) -> Result<Group> {
    let mut witness = None;
    let named: Vec<(String, PlMap)> = match name {
        "ring5" => {
            let r = make_standard_ring5();
            witness = Some(Witness::Inline(ring_witnesses(&r)?));
            r.names().iter().cloned().zip(r.maps().iter().cloned().map(PlMap::Circle)).collect()
        }
        "kkl" => {
            let (a, b) = make_kkl_generators();
            vec![("a".into(), a.into()), ("b".into(), b.into())]
        }
        _ => match name.strip_prefix("chain").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => {
                let c = make_standard_chain(n)?;
                c.names().iter().cloned().zip(c.maps().iter().cloned().map(PlMap::Line)).collect()
            }
            None => return Err(Error::Parse(format!("unknown builtin group `{name}` (ring5, kkl, chain<n>)"))),
        },
    };
    Group::from_named(named, witness)
}

/// Loads `builtin:<name>` or a group file.
pub fn load(source: &str) -> Result<Group> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin(name);
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{source}: {e}")))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut kind: Option<String> = None;
    let mut modulus: Option<Rat> = None;
    let mut maps_path: Option<PathBuf> = None;
    let mut generators: Option<Vec<String>> = None;
    let mut witness = None;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "kind" => kind = Some(rest.to_string()),
            "modulus" => modulus = Some(parse_rat(rest)?),
            "maps" => maps_path = Some(dir.join(rest)),
            "generators" => generators = Some(rest.split_whitespace().map(str::to_string).collect()),
            "witness" => witness = Some(Witness::File(dir.join(rest))),
            _ => return Err(Error::Parse(format!("unknown group file line `{line}`"))),
        }
    }
    let maps_path = maps_path.ok_or_else(|| Error::Parse("group file without `maps` line".into()))?;
    let maps_text =
        fs::read_to_string(&maps_path).map_err(|e| Error::Parse(format!("{}: {e}", maps_path.display())))?;
    let all = parse_map_file(&maps_text)?;
    let generators = generators.unwrap_or_else(|| all.iter().map(|(n, _)| n.clone()).collect());
    let mut named = Vec::new();
    for g in &generators {
        let m = all.iter().find(|(n, _)| n == g).ok_or_else(|| Error::UnboundGenerator(g.clone()))?;
        named.push(m.clone());
    }
    let group = Group::from_named(named, witness)?;
    let declared = match (kind.as_deref(), modulus) {
        (Some("line"), None) => MapKind::Line,
        (Some("circle"), Some(l)) => MapKind::Circle(l),
        (k, l) => {
            return Err(Error::Parse(format!(
                "bad kind/modulus in group file: kind {k:?}, modulus {}",
                l.map(|l| l.to_string()).unwrap_or_else(|| "none".into())
            )))
        }
    };
    if declared != group.kind {
        return Err(Error::Parse("group file kind or modulus does not match its maps".into()));
    }
    Ok(group)
}

/// Writes `<prefix>.maps` and `<prefix>.group` (and the witness file when
/// given) and returns the written paths.
pub fn write(prefix: &Path, group: &Group, witness: Option<&str>) -> std::io::Result<Vec<PathBuf>> {
    let with_ext = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        PathBuf::from(p)
    };
    let maps_path = with_ext(".maps");
    let group_path = with_ext(".group");
    let file_name = |p: &Path| p.file_name().unwrap().to_string_lossy().into_owned();
    let named: Vec<(&str, &PlMap)> = group.generators.iter().map(String::as_str).zip(&group.maps).collect();
    fs::write(&maps_path, format_map_file(named))?;
    let mut g = String::new();
    match &group.kind {
        MapKind::Line => g.push_str("kind line\n"),
        MapKind::Circle(l) => {
            let _ = write!(g, "kind circle\nmodulus {l}\n");
        }
    }
    let _ = writeln!(g, "maps {}", file_name(&maps_path));
    let _ = writeln!(g, "generators {}", group.generators.join(" "));
    let mut out = vec![maps_path];
    if let Some(w) = witness {
        let wp = with_ext(".witness");
        fs::write(&wp, w)?;
        let _ = writeln!(g, "witness {}", file_name(&wp));
        out.push(wp);
    }
    fs::write(&group_path, g)?;
    out.insert(0, group_path);
    Ok(out)
}
