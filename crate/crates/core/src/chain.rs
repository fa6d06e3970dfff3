//! Chains of intervals on the line: axiom validation, the two-generator
//! chain condition, the standard shifted-bump chain, the translation pair
//! `a`, `b`, the commutator copy trick and an orbit coverage probe.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactnum::{int, mod_floor, rat, Closed, IntervalLine, Rat, SupportSet};
use crate::plmap::{GenAssignment, Letter, MapKind, PlLine, PlMap, Word};
use crate::report::{Check, Violation};

/// Standard bump: support `(0,2)`, `f(1/2) = 1`, `f(1) = 3/2`.
pub fn standard_bump() -> PlLine {
    PlLine::from_points(vec![(int(0), int(0)), (rat(1, 2), int(1)), (int(1), rat(3, 2)), (int(2), int(2))])
        .expect("standard bump is a valid map")
}

/// The standard bump conjugated affinely onto `(lo, hi)`.
pub fn make_bump(lo: &Rat, hi: &Rat) -> Result<PlLine> {
    if lo >= hi {
        return Err(Error::InvalidInterval(format!("({lo},{hi})")));
    }
    standard_bump().rescaled(&((hi - lo) / int(2)), lo)
}

/// `a(x) = x + 1` and `b`, which is the identity up to 0, doubles on
/// `(0,1)` and translates by 1 from 1 on.
pub fn make_kkl_generators() -> (PlLine, PlLine) {
    let a = PlLine::translation(int(1));
    let b = PlLine::new(vec![(int(0), int(0)), (int(1), int(2))], int(0), int(1)).expect("b is a valid map");
    (a, b)
}

pub(crate) fn single_interval(name: &str, f: &PlLine) -> Result<IntervalLine> {
    let s = f.support();
    match s.intervals() {
        [iv] => Ok(iv.clone()),
        _ => Err(Error::NonIntervalSupport { name: name.to_string(), support: s.to_string() }),
    }
}

fn as_set(iv: &IntervalLine) -> SupportSet {
    SupportSet::from_interval(iv.clone())
}

/// Result of the two-generator chain test for `(f1, f2)`, where the support
/// of `f1` lies to the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoChainReport {
    /// `f2 f1 (∂₋ supp f2)`.
    pub lhs: Rat,
    /// `∂₊ supp f1`.
    pub rhs: Rat,
    pub inequality: bool,
    pub equality: bool,
    /// Whether `[f1, (f2 f1) f2 (f2 f1)⁻¹]` is the identity.
    pub relation_identity: bool,
    /// A point moved by the relation, when it is not the identity.
    pub relation_witness: Option<Rat>,
    pub is_chain_group_pair: bool,
}

impl TwoChainReport {
    pub fn passed(&self) -> bool {
        self.inequality && self.relation_identity
    }

    pub fn witness(&self) -> String {
        let op = if self.equality {
            "="
        } else if self.inequality {
            ">"
        } else {
            "<"
        };
        let mut s = format!("f2f1(lo2)={} {op} hi1={}", self.lhs, self.rhs);
        match &self.relation_witness {
            None => s.push_str(" relation=id"),
            Some(x) => {
                let _ = write!(s, " relation moves {x}");
            }
        }
        s
    }
}

/// The overlap test for consecutive supports: a nonempty interval that is a
/// proper subset of both.
fn proper_overlap(a: &IntervalLine, b: &IntervalLine) -> std::result::Result<IntervalLine, String> {
    let ov = as_set(a).intersect(&as_set(b));
    match ov.intervals() {
        [] => Err(format!("{a} n {b} = {{}}")),
        [o] if o == a || o == b => Err(format!("{a} n {b} = {o} is not proper")),
        [o] => Ok(o.clone()),
        _ => unreachable!("intersection of two intervals is an interval"),
    }
}

pub fn check_two_chain(f1: &PlLine, f2: &PlLine) -> Result<TwoChainReport> {
    let j1 = single_interval("f1", f1)?;
    let j2 = single_interval("f2", f2)?;
    proper_overlap(&j1, &j2).map_err(|d| Error::Precondition(format!("not a 2-chain: {d}")))?;
    if j1.lo >= j2.lo {
        return Err(Error::Precondition(format!("not a 2-chain: supp(f1) = {j1} must start left of supp(f2) = {j2}")));
    }
    // with j1 starting first, a proper overlap makes both endpoints finite
    let lo2 = j2.lo.finite().expect("left end of the right interval is finite").clone();
    let hi1 = j1.hi.finite().expect("right end of the left interval is finite").clone();
    let lhs = f2.eval(&f1.eval(&lo2));
    let h = f2.compose(f1);
    let rel = f1.commutator(&f2.conjugate(&h));
    let relation_identity = rel.is_identity();
    let inequality = lhs >= hi1;
    Ok(TwoChainReport {
        equality: lhs == hi1,
        lhs,
        rhs: hi1,
        inequality,
        relation_identity,
        relation_witness: if relation_identity { None } else { rel.support().sample() },
        is_chain_group_pair: inequality,
    })
}

/// Validated chain: every support is a single interval and the supports
/// satisfy the disjointness and overlap axioms.
#[derive(Clone, Debug)]
pub struct ChainSystem {
    names: Vec<String>,
    maps: Vec<PlLine>,
    supports: Vec<IntervalLine>,
    checks: Vec<Check>,
}

/// Itemized axiom checks. Returns the supports when all are single intervals.
fn axiom_checks(names: &[String], maps: &[PlLine]) -> (Vec<Check>, std::result::Result<Vec<IntervalLine>, Violation>) {
    let mut checks = Vec::new();
    let mut sups = Vec::new();
    for (n, f) in names.iter().zip(maps) {
        match single_interval(n, f) {
            Ok(iv) => sups.push(iv),
            Err(e) => return (checks, Err(Violation::Input(e))),
        }
    }
    let mut first: Option<Violation> = None;
    let n = maps.len();
    for i in 0..n {
        for j in i + 2..n {
            let ov = as_set(&sups[i]).intersect(&as_set(&sups[j]));
            let ok = ov.is_empty();
            let detail = format!("{} n {} = {ov}", sups[i], sups[j]);
            if !ok && first.is_none() {
                first = Some(Violation::Axiom { axiom: "C1", i: i + 1, j: j + 1, detail: detail.clone() });
            }
            checks.push(Check::new(format!("C1({},{})", i + 1, j + 1), ok, detail));
        }
    }
    for i in 0..n.saturating_sub(1) {
        let r = proper_overlap(&sups[i], &sups[i + 1]);
        if let Err(d) = &r {
            if first.is_none() {
                first = Some(Violation::Axiom { axiom: "C2", i: i + 1, j: i + 2, detail: d.clone() });
            }
        }
        let (ok, w) = match r {
            Ok(o) => (true, format!("{} n {} = {o}", sups[i], sups[i + 1])),
            Err(d) => (false, d),
        };
        checks.push(Check::new(format!("C2({},{})", i + 1, i + 2), ok, w));
    }
    match first {
        Some(v) => (checks, Err(v)),
        None => (checks, Ok(sups)),
    }
}

/// Checks of the two boundary conditions `∂₊J_i = ∂₋J_{i+2}` and
/// `f_{i+1} f_i (∂₋J_{i+1}) = ∂₋J_{i+2}` for `i = 1..n-2`.
fn boundary_checks(maps: &[PlLine], sups: &[IntervalLine]) -> Vec<Check> {
    let mut out = Vec::new();
    for i in 0..maps.len().saturating_sub(2) {
        let hi = &sups[i].hi;
        let lo2 = &sups[i + 2].lo;
        out.push(Check::new(format!("L35_I({})", i + 1), hi == lo2, format!("hi{}={hi} lo{}={lo2}", i + 1, i + 3)));
        let lo1 = &sups[i + 1].lo;
        let img = maps[i + 1].eval_ext(&maps[i].eval_ext(lo1));
        out.push(Check::new(
            format!("L35_II({})", i + 1),
            &img == lo2,
            format!("f{}f{}({lo1})={img} lo{}={lo2}", i + 2, i + 1, i + 3),
        ));
    }
    out
}

pub fn validate_chain<S: AsRef<str>>(maps: &[(S, PlLine)]) -> std::result::Result<ChainSystem, Violation> {
    if maps.len() < 2 {
        return Err(Violation::TooFew { needed: 2, got: maps.len() });
    }
    let names: Vec<String> = maps.iter().map(|(n, _)| n.as_ref().to_string()).collect();
    let fs: Vec<PlLine> = maps.iter().map(|(_, f)| f.clone()).collect();
    let (mut checks, sups) = axiom_checks(&names, &fs);
    let supports = sups?;
    for i in 0..fs.len() - 1 {
        let r = check_two_chain(&fs[i], &fs[i + 1]).map_err(Violation::Input)?;
        checks.push(Check::new(format!("TWO_CHAIN({})", i + 1), r.passed(), r.witness()));
    }
    checks.extend(boundary_checks(&fs, &supports));
    Ok(ChainSystem { names, maps: fs, supports, checks })
}

/// Itemized chain checks for arbitrary input; the first failing support
/// shape is reported as a failed `C2` entry instead of an error.
pub fn chain_checks<S: AsRef<str>>(maps: &[(S, PlLine)]) -> Vec<Check> {
    match validate_chain(maps) {
        Ok(c) => c.checks,
        Err(Violation::TooFew { got, .. }) => vec![Check::new("C2", false, format!("{got} maps, need 2"))],
        Err(Violation::Input(e)) => vec![Check::new("C2", false, e.to_string())],
        Err(Violation::Axiom { .. }) => {
            let names: Vec<String> = maps.iter().map(|(n, _)| n.as_ref().to_string()).collect();
            let fs: Vec<PlLine> = maps.iter().map(|(_, f)| f.clone()).collect();
            axiom_checks(&names, &fs).0
        }
    }
}

impl ChainSystem {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn maps(&self) -> &[PlLine] {
        &self.maps
    }

    pub fn supports(&self) -> &[IntervalLine] {
        &self.supports
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// C1, C2, TWO_CHAIN and the two boundary conditions, in that order.
    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// Whether every axiom check, pair condition and boundary condition passed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn env(&self) -> GenAssignment {
        GenAssignment::from_maps(self.names.iter().cloned().zip(self.maps.iter().cloned().map(PlMap::Line)))
            .expect("all maps are line maps")
    }
}

/// `f_i` is the standard bump on `(i-1, i+1)`, `i = 1..n`.
pub fn make_standard_chain(n: usize) -> Result<ChainSystem> {
    if n < 2 {
        return Err(Error::Precondition(format!("a chain needs at least 2 maps, got {n}")));
    }
    let maps = (1..=n)
        .map(|i| {
            let lo = int(i as i64 - 1);
            Ok((format!("f{i}"), make_bump(&lo, &(&lo + int(2)))?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(validate_chain(&maps)?)
}

/// `g1 = [n1, a]` and `g2 = [n2, a⁻¹]` with the checks describing how they
/// act on `[0,1/2]` and on the displaced copies.
#[derive(Clone, Debug)]
pub struct CommutatorCopy {
    pub g1: PlLine,
    pub g2: PlLine,
    pub checks: Vec<Check>,
}

impl CommutatorCopy {
    pub fn verified(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn embed_commutator_copy(n1: &PlLine, n2: &PlLine) -> Result<CommutatorCopy> {
    let base = as_set(&IntervalLine::finite(int(0), rat(1, 2))?);
    for (name, n) in [("n1", n1), ("n2", n2)] {
        let s = n.support();
        if !s.is_subset(&base) {
            return Err(Error::Precondition(format!("supp({name}) = {s} is not inside (0,1/2)")));
        }
    }
    let (a, _) = make_kkl_generators();
    let ainv = a.inverse();
    let g1 = n1.commutator(&a);
    let g2 = n2.commutator(&ainv);
    // displaced copies written out by rescaling, not through a
    let copy1 = n1.inverse().rescaled(&int(1), &int(1))?;
    let copy2 = n2.inverse().rescaled(&int(1), &int(-1))?;
    let half = rat(1, 2);
    let mut checks = vec![
        Check::new("G1_BASE", g1.agrees_on(n1, &int(0), &half), "[0,1/2]"),
        Check::new("G1_COPY", g1.agrees_on(&copy1, &int(1), &rat(3, 2)), "[1,3/2]"),
        Check::new("G2_BASE", g2.agrees_on(n2, &int(0), &half), "[0,1/2]"),
        Check::new("G2_COPY", g2.agrees_on(&copy2, &int(-1), &rat(-1, 2)), "[-1,-1/2]"),
    ];
    for (id, g, other) in [("G1_ELSEWHERE", &g1, (int(1), rat(3, 2))), ("G2_ELSEWHERE", &g2, (int(-1), rat(-1, 2)))] {
        let allowed = base.union(&as_set(&IntervalLine::finite(other.0, other.1)?));
        let s = g.support();
        checks.push(Check::new(id, s.is_subset(&allowed), format!("supp={s} within {allowed}")));
    }
    Ok(CommutatorCopy { g1, g2, checks })
}

/// One row of the orbit probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeRow {
    pub depth: usize,
    /// Distinct orbit points inside the window.
    pub points: usize,
    pub covered: usize,
    pub cells: usize,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    /// Orbit points inside the window with a word carrying the seed there.
    pub points: Vec<(Rat, Word)>,
    /// Whether every reported point was reproduced by evaluating its word.
    pub sound: bool,
}

impl ProbeReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("depth,points,coverageNum,coverageDen\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", r.depth, r.points, r.covered, r.cells);
        }
        s
    }
}

/// Breadth-first orbit of `seed` under the generators of `env` (and their
/// inverses) to `depth`, recording hits of the `eps`-grid of `window`.
/// A cell is hit when an orbit point lies in its closed extent.
pub fn minimality_probe(
    env: &GenAssignment,
    seed: &Rat,
    window: &Closed,
    eps: &Rat,
    depth: usize,
) -> Result<ProbeReport> {
    let width = &window.hi - &window.lo;
    if !width.is_positive() {
        return Err(Error::Precondition(format!("empty window {window}")));
    }
    if !eps.is_positive() {
        return Err(Error::Precondition(format!("eps = {eps} must be positive")));
    }
    let modulus = match env.kind() {
        Some(MapKind::Circle(l)) => {
            if width >= *l {
                return Err(Error::Precondition(format!("window {window} wraps the whole circle")));
            }
            Some(l.clone())
        }
        _ => None,
    };
    let sup = env.support_of(env.names())?;
    if !sup.contains_closed(window) {
        return Err(Error::Precondition(format!("window {window} is not inside the support {sup}")));
    }
    let cells = {
        let q = &width / eps;
        let c = q.ceil().to_integer();
        usize::try_from(c).map_err(|_| Error::Precondition("too many grid cells".into()))?
    };
    let norm = |x: &Rat| match &modulus {
        Some(l) => mod_floor(x, l),
        None => x.clone(),
    };
    // offset of x from the window start, when x lies in the window
    let offset = |x: &Rat| -> Option<Rat> {
        let t = match &modulus {
            Some(l) => mod_floor(&(x - &window.lo), l),
            None => x - &window.lo,
        };
        (!t.is_negative() && t <= width).then_some(t)
    };
    let mut hit = vec![false; cells];
    let mark = |t: &Rat, hit: &mut Vec<bool>| {
        let q = t / eps;
        let k = q.floor().to_integer();
        let k = usize::try_from(k).unwrap_or(usize::MAX);
        if k < cells {
            hit[k] = true;
        }
        if q.is_integer() && k > 0 && k - 1 < cells {
            hit[k - 1] = true;
        }
    };

    let letters: Vec<Letter> =
        env.names().iter().flat_map(|n| [Letter::new(n.clone(), false), Letter::new(n.clone(), true)]).collect();
    let mut seen: HashMap<Rat, Word> = HashMap::new();
    let mut inside: Vec<(Rat, Word)> = Vec::new();
    let s0 = norm(seed);
    seen.insert(s0.clone(), Word::identity());
    if let Some(t) = offset(&s0) {
        mark(&t, &mut hit);
        inside.push((s0.clone(), Word::identity()));
    }
    let mut rows =
        vec![ProbeRow { depth: 0, points: inside.len(), covered: hit.iter().filter(|h| **h).count(), cells }];
    let mut frontier: VecDeque<Rat> = VecDeque::from([s0]);
    for d in 1..=depth {
        let mut next = VecDeque::new();
        for p in &frontier {
            let w = seen[p].clone();
            for l in &letters {
                let q = norm(&env.letter(l)?.lift(p));
                if seen.contains_key(&q) {
                    continue;
                }
                let wq = Word::from_letters([l]).concat(&w);
                if let Some(t) = offset(&q) {
                    mark(&t, &mut hit);
                    inside.push((q.clone(), wq.clone()));
                }
                seen.insert(q.clone(), wq);
                next.push_back(q);
            }
        }
        frontier = next;
        rows.push(ProbeRow { depth: d, points: inside.len(), covered: hit.iter().filter(|h| **h).count(), cells });
    }
    let mut sound = true;
    for (p, w) in &inside {
        if env.word_eval(w)?.eval(seed) != *p {
            sound = false;
        }
    }
    inside.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ProbeReport { rows, points: inside, sound })
}
