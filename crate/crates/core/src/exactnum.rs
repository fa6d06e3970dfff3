//! Exact rational scalars and open-set algebra on the line and on the circle.
//!
//! Supports on the line are finite unions of open intervals with endpoints in
//! `ℚ ∪ {±∞}`; supports on the circle `ℝ/Lℤ` are finite unions of open arcs.
//! Everything is kept in a canonical form so that equal sets compare equal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational. Displays as `p/q`, or `p` when `q = 1`.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// `x mod m` in `[0, m)` together with the quotient `floor(x / m)`.
pub fn div_mod_floor(x: &Rat, m: &Rat) -> (BigInt, Rat) {
    let q = (x / m).floor().to_integer();
    let r = x - Rat::from_integer(q.clone()) * m;
    (q, r)
}

pub fn mod_floor(x: &Rat, m: &Rat) -> Rat {
    div_mod_floor(x, m).1
}

/// A rational extended by the two infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }
}

impl From<Rat> for ExtRat {
    fn from(q: Rat) -> Self {
        ExtRat::Finite(q)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::Finite(q) => write!(f, "{q}"),
            ExtRat::PosInf => f.write_str("+inf"),
        }
    }
}

impl FromStr for ExtRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(ExtRat::NegInf),
            "+inf" | "inf" => Ok(ExtRat::PosInf),
            t => parse_rat(t).map(ExtRat::Finite),
        }
    }
}

/// Nonempty open interval `(lo, hi)` of the line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalLine {
    pub lo: ExtRat,
    pub hi: ExtRat,
}

impl IntervalLine {
    pub fn new(lo: ExtRat, hi: ExtRat) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidInterval(format!("({lo},{hi})")));
        }
        Ok(IntervalLine { lo, hi })
    }

    pub fn finite(lo: Rat, hi: Rat) -> Result<Self> {
        Self::new(ExtRat::Finite(lo), ExtRat::Finite(hi))
    }

    pub fn whole() -> Self {
        IntervalLine { lo: ExtRat::NegInf, hi: ExtRat::PosInf }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let x = ExtRat::Finite(x.clone());
        self.lo < x && x < self.hi
    }

    /// Some point of the interval.
    pub fn sample(&self) -> Rat {
        match (&self.lo, &self.hi) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => (a + b) / int(2),
            (ExtRat::Finite(a), _) => a + int(1),
            (_, ExtRat::Finite(b)) => b - int(1),
            _ => Rat::zero(),
        }
    }
}

impl fmt::Display for IntervalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl FromStr for IntervalLine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = split_bracketed(s, '(', ')')?;
        IntervalLine::new(lo.parse()?, hi.parse()?)
    }
}

pub(crate) fn split_bracketed(s: &str, open: char, close: char) -> Result<(&str, &str)> {
    let t = s.trim();
    let inner = t
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}lo,hi{close}, got `{s}`")))?;
    inner.split_once(',').ok_or_else(|| Error::Parse(format!("expected {open}lo,hi{close}, got `{s}`")))
}

/// Canonical finite union of open intervals of the line: sorted, pairwise
/// disjoint, and no two members merge into one interval. Two members may
/// share an endpoint, which then lies outside the set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SupportSet {
    intervals: Vec<IntervalLine>,
}

impl SupportSet {
    pub fn empty() -> Self {
        SupportSet::default()
    }

    pub fn whole() -> Self {
        SupportSet { intervals: vec![IntervalLine::whole()] }
    }

    pub fn from_interval(iv: IntervalLine) -> Self {
        SupportSet { intervals: vec![iv] }
    }

    /// Builds the canonical union of arbitrary open intervals.
    pub fn from_intervals(mut ivs: Vec<IntervalLine>) -> Self {
        ivs.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut out: Vec<IntervalLine> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match out.last_mut() {
                // overlap needs a strict inequality; a shared endpoint is not covered
                Some(last) if iv.lo < last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        SupportSet { intervals: out }
    }

    pub fn intervals(&self) -> &[IntervalLine] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains_point(&self, x: &Rat) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        SupportSet::from_intervals(all)
    }

    pub fn intersect(&self, other: &SupportSet) -> SupportSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.intervals, &other.intervals);
        while i < a.len() && j < b.len() {
            let lo = std::cmp::max(&a[i].lo, &b[j].lo);
            let hi = std::cmp::min(&a[i].hi, &b[j].hi);
            if lo < hi {
                out.push(IntervalLine { lo: lo.clone(), hi: hi.clone() });
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        SupportSet { intervals: out }
    }

    pub fn is_disjoint(&self, other: &SupportSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.intersect(other) == *self
    }

    /// Some point of the set, if nonempty.
    pub fn sample(&self) -> Option<Rat> {
        self.intervals.first().map(IntervalLine::sample)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str("u")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Open arc of the circle `ℝ/Lℤ` running in the positive direction from
/// `start` to `end`. `start == end` denotes the circle punctured at that point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    modulus: Rat,
    start: Rat,
    end: Rat,
}

impl Arc {
    /// Endpoints are reduced modulo `modulus`.
    pub fn new(modulus: &Rat, start: &Rat, end: &Rat) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::InvalidInterval(format!("modulus {modulus} must be positive")));
        }
        Ok(Arc { modulus: modulus.clone(), start: mod_floor(start, modulus), end: mod_floor(end, modulus) })
    }

    pub fn modulus(&self) -> &Rat {
        &self.modulus
    }

    pub fn start(&self) -> &Rat {
        &self.start
    }

    pub fn end(&self) -> &Rat {
        &self.end
    }

    pub fn wraps(&self) -> bool {
        self.start >= self.end
    }

    pub fn length(&self) -> Rat {
        let d = mod_floor(&(&self.end - &self.start), &self.modulus);
        if d.is_zero() {
            self.modulus.clone()
        } else {
            d
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let off = mod_floor(&(x - &self.start), &self.modulus);
        off.is_positive() && off < self.length()
    }

    /// Pieces of the arc inside the fundamental domain `(0, L)`, and whether
    /// the arc contains the point `0`.
    fn pieces(&self) -> (Vec<(Rat, Rat)>, bool) {
        let zero = Rat::zero();
        if self.start < self.end {
            (vec![(self.start.clone(), self.end.clone())], false)
        } else {
            let mut v = Vec::new();
            if self.end > zero {
                v.push((zero.clone(), self.end.clone()));
            }
            v.push((self.start.clone(), self.modulus.clone()));
            let has_zero = self.end > zero;
            (v, has_zero)
        }
    }

    pub fn sample(&self) -> Rat {
        mod_floor(&(&self.start + self.length() / int(2)), &self.modulus)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.start, self.end)
    }
}

/// Canonical finite union of open arcs sharing one modulus.
///
/// Internally the set is held as its trace on the fundamental domain
/// `[0, L)`: disjoint open intervals inside `(0, L)` plus a flag for the
/// point `0`. Arcs are reported sorted by start, so a wrapping arc comes last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSet {
    modulus: Rat,
    pieces: Vec<(Rat, Rat)>,
    has_zero: bool,
}

impl ArcSet {
    pub fn empty(modulus: &Rat) -> Self {
        ArcSet { modulus: modulus.clone(), pieces: Vec::new(), has_zero: false }
    }

    pub fn full(modulus: &Rat) -> Self {
        ArcSet { modulus: modulus.clone(), pieces: vec![(Rat::zero(), modulus.clone())], has_zero: true }
    }

    pub fn from_arc(arc: &Arc) -> Self {
        let (pieces, has_zero) = arc.pieces();
        ArcSet { modulus: arc.modulus.clone(), pieces, has_zero }
    }

    pub fn from_arcs(modulus: &Rat, arcs: &[Arc]) -> Result<Self> {
        let mut acc = ArcSet::empty(modulus);
        for a in arcs {
            acc = acc.union(&ArcSet::from_arc(a))?;
        }
        Ok(acc)
    }

    /// Canonical set from raw pieces in `(0, L)` (any order, may overlap)
    /// and the membership of `0`.
    pub(crate) fn from_pieces(modulus: &Rat, pieces: Vec<(Rat, Rat)>, has_zero: bool) -> Self {
        let ivs =
            pieces.into_iter().map(|(a, b)| IntervalLine { lo: ExtRat::Finite(a), hi: ExtRat::Finite(b) }).collect();
        let merged = SupportSet::from_intervals(ivs);
        let pieces: Vec<(Rat, Rat)> = merged
            .intervals
            .into_iter()
            .map(|iv| (iv.lo.finite().unwrap().clone(), iv.hi.finite().unwrap().clone()))
            .collect();
        let has_zero = has_zero && !pieces.is_empty();
        ArcSet { modulus: modulus.clone(), pieces, has_zero }
    }

    pub fn modulus(&self) -> &Rat {
        &self.modulus
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.has_zero && self.pieces.len() == 1 && self.pieces[0].0.is_zero() && self.pieces[0].1 == self.modulus
    }

    /// The maximal arcs, sorted by start. Empty for the full circle.
    pub fn arcs(&self) -> Vec<Arc> {
        if self.is_full() {
            return Vec::new();
        }
        let mk = |a: &Rat, b: &Rat| Arc {
            modulus: self.modulus.clone(),
            start: a.clone(),
            end: mod_floor(b, &self.modulus),
        };
        let n = self.pieces.len();
        if self.has_zero {
            // first piece starts at 0, last ends at L; they join across 0
            let first = &self.pieces[0];
            let last = &self.pieces[n - 1];
            let mut out: Vec<Arc> = self.pieces[1..n - 1].iter().map(|(a, b)| mk(a, b)).collect();
            if n == 1 {
                // (0, L) together with 0: circle punctured at 0 cannot happen here,
                // since that would be the full circle
                unreachable!("single piece with zero is the full circle");
            }
            out.push(mk(&last.0, &first.1));
            out
        } else {
            self.pieces.iter().map(|(a, b)| mk(a, b)).collect()
        }
    }

    /// The single arc of the set, if it has exactly one component and is not full.
    pub fn single_arc(&self) -> Option<Arc> {
        let arcs = self.arcs();
        if arcs.len() == 1 {
            arcs.into_iter().next()
        } else {
            None
        }
    }

    pub fn total_length(&self) -> Rat {
        self.pieces.iter().fold(Rat::zero(), |acc, (a, b)| acc + (b - a))
    }

    pub fn contains_point(&self, x: &Rat) -> bool {
        let x = mod_floor(x, &self.modulus);
        if x.is_zero() {
            return self.has_zero;
        }
        self.pieces.iter().any(|(a, b)| a < &x && &x < b)
    }

    fn check_modulus(&self, other: &ArcSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.to_string(), other.modulus.to_string()));
        }
        Ok(())
    }

    fn as_line(&self) -> SupportSet {
        SupportSet {
            intervals: self
                .pieces
                .iter()
                .map(|(a, b)| IntervalLine { lo: ExtRat::Finite(a.clone()), hi: ExtRat::Finite(b.clone()) })
                .collect(),
        }
    }

    pub fn union(&self, other: &ArcSet) -> Result<ArcSet> {
        self.check_modulus(other)?;
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        Ok(ArcSet::from_pieces(&self.modulus, pieces, self.has_zero || other.has_zero))
    }

    pub fn intersect(&self, other: &ArcSet) -> Result<ArcSet> {
        self.check_modulus(other)?;
        let line = self.as_line().intersect(&other.as_line());
        let pieces = line
            .intervals
            .into_iter()
            .map(|iv| (iv.lo.finite().unwrap().clone(), iv.hi.finite().unwrap().clone()))
            .collect();
        Ok(ArcSet::from_pieces(&self.modulus, pieces, self.has_zero && other.has_zero))
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    pub fn is_subset(&self, other: &ArcSet) -> Result<bool> {
        Ok(self.intersect(other)? == *self)
    }

    pub fn sample(&self) -> Option<Rat> {
        self.pieces.first().map(|(a, b)| (a + b) / int(2))
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return write!(f, "S1 mod {}", self.modulus);
        }
        if self.is_empty() {
            return write!(f, "{{}} mod {}", self.modulus);
        }
        for (k, a) in self.arcs().iter().enumerate() {
            if k > 0 {
                f.write_str("u")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " mod {}", self.modulus)
    }
}

/// Support of a map of either kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Support {
    Line(SupportSet),
    Circle(ArcSet),
}

impl Support {
    pub fn is_empty(&self) -> bool {
        match self {
            Support::Line(s) => s.is_empty(),
            Support::Circle(s) => s.is_empty(),
        }
    }

    pub fn union(&self, other: &Support) -> Result<Support> {
        match (self, other) {
            (Support::Line(a), Support::Line(b)) => Ok(Support::Line(a.union(b))),
            (Support::Circle(a), Support::Circle(b)) => Ok(Support::Circle(a.union(b)?)),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn intersect(&self, other: &Support) -> Result<Support> {
        match (self, other) {
            (Support::Line(a), Support::Line(b)) => Ok(Support::Line(a.intersect(b))),
            (Support::Circle(a), Support::Circle(b)) => Ok(Support::Circle(a.intersect(b)?)),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn is_disjoint(&self, other: &Support) -> Result<bool> {
        Ok(self.intersect(other)?.is_empty())
    }

    pub fn is_subset(&self, other: &Support) -> Result<bool> {
        Ok(self.intersect(other)? == *self)
    }

    pub fn contains_point(&self, x: &Rat) -> bool {
        match self {
            Support::Line(s) => s.contains_point(x),
            Support::Circle(s) => s.contains_point(x),
        }
    }

    pub fn sample(&self) -> Option<Rat> {
        match self {
            Support::Line(s) => s.sample(),
            Support::Circle(s) => s.sample(),
        }
    }

    /// Whether the closed interval (on the circle, the closed arc from `lo`
    /// running `hi - lo` forward) lies inside one component of the set.
    pub fn contains_closed(&self, k: &Closed) -> bool {
        match self {
            Support::Line(s) => s
                .intervals()
                .iter()
                .any(|iv| iv.lo < ExtRat::Finite(k.lo.clone()) && ExtRat::Finite(k.hi.clone()) < iv.hi),
            Support::Circle(s) => {
                let width = &k.hi - &k.lo;
                if s.is_full() {
                    return width < s.modulus;
                }
                s.arcs().iter().any(|arc| {
                    arc.contains(&k.lo) && width < arc.length() - mod_floor(&(&k.lo - &arc.start), &arc.modulus)
                })
            }
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Line(s) => write!(f, "{s}"),
            Support::Circle(s) => write!(f, "{s}"),
        }
    }
}

/// Closed interval `[lo, hi]` with `lo <= hi`. On the circle it is read as
/// the closed arc running positively from `lo` to `hi`, of length `hi - lo`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Closed {
    pub lo: Rat,
    pub hi: Rat,
}

impl Closed {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo},{hi}]")));
        }
        Ok(Closed { lo, hi })
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for Closed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Closed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = split_bracketed(s, '[', ']')?;
        Closed::new(parse_rat(lo)?, parse_rat(hi)?)
    }
}

/// Parses `[a,b]` or several closed pieces joined by `;` or `u`.
pub fn parse_closed_set(s: &str) -> Result<Vec<Closed>> {
    s.split([';', 'u']).map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
}

/// Parses an open interval `(a,b)` of the line or, given a modulus, an open
/// arc running positively from `a` to `b` (so `(4,1)` wraps through 0).
pub fn parse_open(s: &str, modulus: Option<&Rat>) -> Result<Support> {
    match modulus {
        None => Ok(Support::Line(SupportSet::from_interval(s.parse()?))),
        Some(l) => {
            let (a, b) = split_bracketed(s, '(', ')')?;
            let arc = Arc::new(l, &parse_rat(a.trim())?, &parse_rat(b.trim())?)?;
            if arc.start() == arc.end() {
                return Err(Error::InvalidInterval(s.to_string()));
            }
            Ok(Support::Circle(ArcSet::from_arc(&arc)))
        }
    }
}
