//! Exact PL homeomorphisms of the line and the circle, words over named
//! generators, and their evaluation.

mod circle;
mod line;
pub mod text;
mod word;

use std::collections::HashMap;

pub use circle::PlCircle;
pub use line::PlLine;
pub use word::{shortlex_words, word_reduce, Letter, Word};

use crate::error::{Error, Result};
use crate::exactnum::{Rat, Support};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Line,
    Circle(Rat),
}

/// A map of either kind. Binary operations reject mixed kinds and
/// mismatched moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlMap {
    Line(PlLine),
    Circle(PlCircle),
}

impl From<PlLine> for PlMap {
    fn from(f: PlLine) -> Self {
        PlMap::Line(f)
    }
}

impl From<PlCircle> for PlMap {
    fn from(f: PlCircle) -> Self {
        PlMap::Circle(f)
    }
}

impl PlMap {
    pub fn identity_of(kind: &MapKind) -> PlMap {
        match kind {
            MapKind::Line => PlMap::Line(PlLine::identity()),
            MapKind::Circle(l) => PlMap::Circle(PlCircle::identity(l).expect("modulus checked on construction")),
        }
    }

    pub fn kind(&self) -> MapKind {
        match self {
            PlMap::Line(_) => MapKind::Line,
            PlMap::Circle(c) => MapKind::Circle(c.modulus().clone()),
        }
    }

    pub fn as_line(&self) -> Option<&PlLine> {
        match self {
            PlMap::Line(f) => Some(f),
            PlMap::Circle(_) => None,
        }
    }

    pub fn as_circle(&self) -> Option<&PlCircle> {
        match self {
            PlMap::Circle(f) => Some(f),
            PlMap::Line(_) => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            PlMap::Line(f) => f.is_identity(),
            PlMap::Circle(f) => f.is_identity(),
        }
    }

    /// Exact image of a point; circle results are reduced to `[0, L)`.
    pub fn eval(&self, x: &Rat) -> Rat {
        match self {
            PlMap::Line(f) => f.eval(x),
            PlMap::Circle(f) => f.eval(x),
        }
    }

    /// Image under the map on the line, or under the canonical lift.
    pub fn lift(&self, x: &Rat) -> Rat {
        match self {
            PlMap::Line(f) => f.eval(x),
            PlMap::Circle(f) => f.lift(x),
        }
    }

    pub fn inverse(&self) -> PlMap {
        match self {
            PlMap::Line(f) => PlMap::Line(f.inverse()),
            PlMap::Circle(f) => PlMap::Circle(f.inverse()),
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &PlMap) -> Result<PlMap> {
        match (self, g) {
            (PlMap::Line(f), PlMap::Line(g)) => Ok(PlMap::Line(f.compose(g))),
            (PlMap::Circle(f), PlMap::Circle(g)) => Ok(PlMap::Circle(f.compose(g)?)),
            _ => Err(Error::KindMismatch),
        }
    }

    /// `u ∘ self ∘ u⁻¹`.
    pub fn conjugate(&self, u: &PlMap) -> Result<PlMap> {
        u.compose(self)?.compose(&u.inverse())
    }

    /// `self ∘ g ∘ self⁻¹ ∘ g⁻¹`.
    pub fn commutator(&self, g: &PlMap) -> Result<PlMap> {
        self.compose(g)?.compose(&self.inverse())?.compose(&g.inverse())
    }

    pub fn commutes_with(&self, g: &PlMap) -> Result<bool> {
        Ok(self.compose(g)? == g.compose(self)?)
    }

    pub fn support(&self) -> Support {
        match self {
            PlMap::Line(f) => Support::Line(f.support()),
            PlMap::Circle(f) => Support::Circle(f.support()),
        }
    }

    pub fn image(&self, set: &Support) -> Result<Support> {
        match (self, set) {
            (PlMap::Line(f), Support::Line(s)) => Ok(Support::Line(f.image(s))),
            (PlMap::Circle(f), Support::Circle(s)) => Ok(Support::Circle(f.image(s)?)),
            _ => Err(Error::KindMismatch),
        }
    }
}

pub fn evaluate(f: &PlMap, x: &Rat) -> Rat {
    f.eval(x)
}

pub fn compose(f: &PlMap, g: &PlMap) -> Result<PlMap> {
    f.compose(g)
}

pub fn invert(f: &PlMap) -> PlMap {
    f.inverse()
}

pub fn support(f: &PlMap) -> Support {
    f.support()
}

pub fn image(f: &PlMap, set: &Support) -> Result<Support> {
    f.image(set)
}

pub fn conjugate(g: &PlMap, u: &PlMap) -> Result<PlMap> {
    g.conjugate(u)
}

pub fn commutator(f: &PlMap, g: &PlMap) -> Result<PlMap> {
    f.commutator(g)
}

/// Equality of canonical forms, which is equality of maps.
pub fn equals(f: &PlMap, g: &PlMap) -> Result<bool> {
    if f.kind() != g.kind() {
        return match (f.kind(), g.kind()) {
            (MapKind::Circle(a), MapKind::Circle(b)) => Err(Error::ModulusMismatch(a.to_string(), b.to_string())),
            _ => Err(Error::KindMismatch),
        };
    }
    Ok(f == g)
}

#[derive(Clone, Debug)]
struct Binding {
    map: PlMap,
    inverse: PlMap,
}

/// Binding of generator names to maps of a single kind.
#[derive(Clone, Debug, Default)]
pub struct GenAssignment {
    kind: Option<MapKind>,
    order: Vec<String>,
    maps: HashMap<String, Binding>,
}

impl GenAssignment {
    pub fn new() -> Self {
        GenAssignment::default()
    }

    pub fn from_maps<I, S>(maps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, PlMap)>,
        S: Into<String>,
    {
        let mut env = GenAssignment::new();
        for (n, m) in maps {
            env.insert(n, m)?;
        }
        Ok(env)
    }

    /// Binds `name`, replacing any previous binding of the same name.
    pub fn insert(&mut self, name: impl Into<String>, map: PlMap) -> Result<()> {
        let name = name.into();
        let kind = map.kind();
        match &self.kind {
            Some(k) if *k != kind => {
                return Err(match (k, &kind) {
                    (MapKind::Circle(a), MapKind::Circle(b)) => Error::ModulusMismatch(a.to_string(), b.to_string()),
                    _ => Error::KindMismatch,
                })
            }
            _ => self.kind = Some(kind),
        }
        if !self.maps.contains_key(&name) {
            self.order.push(name.clone());
        }
        let inverse = map.inverse();
        self.maps.insert(name, Binding { map, inverse });
        Ok(())
    }

    pub fn kind(&self) -> Option<&MapKind> {
        self.kind.as_ref()
    }

    /// Bound names in insertion order.
    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn contains(&self, name: &str) -> bool {
        self.maps.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Result<&PlMap> {
        self.maps.get(name).map(|b| &b.map).ok_or_else(|| Error::UnboundGenerator(name.to_string()))
    }

    pub fn letter(&self, letter: &Letter) -> Result<&PlMap> {
        let b = self.maps.get(&letter.name).ok_or_else(|| Error::UnboundGenerator(letter.name.clone()))?;
        Ok(if letter.inverse { &b.inverse } else { &b.map })
    }

    pub fn identity(&self) -> PlMap {
        PlMap::identity_of(self.kind.as_ref().unwrap_or(&MapKind::Line))
    }

    pub fn check_bound(&self, w: &Word) -> Result<()> {
        for n in w.names() {
            if !self.contains(n) {
                return Err(Error::UnboundGenerator(n.to_string()));
            }
        }
        Ok(())
    }

    /// The map denoted by `w`; `fg` evaluates to `f ∘ g`.
    pub fn word_eval(&self, w: &Word) -> Result<PlMap> {
        self.check_bound(w)?;
        let mut acc = self.identity();
        for l in w.letters() {
            acc = acc.compose(self.letter(&l)?)?;
        }
        Ok(acc)
    }

    /// Point image under `w` (on the line, or on lifts for circle maps),
    /// computed letter by letter without composing maps.
    pub fn eval_word_at(&self, w: &Word, x: &Rat) -> Result<Rat> {
        self.eval_letters_at(&w.letters(), x)
    }

    pub fn eval_letters_at(&self, letters: &[Letter], x: &Rat) -> Result<Rat> {
        let mut y = x.clone();
        for l in letters.iter().rev() {
            y = self.letter(l)?.lift(&y);
        }
        Ok(y)
    }

    /// Union of the supports of the named generators.
    pub fn support_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Support> {
        let mut acc = self.identity().support();
        for n in names {
            acc = acc.union(&self.get(n.as_ref())?.support())?;
        }
        Ok(acc)
    }
}

pub fn word_eval(w: &Word, env: &GenAssignment) -> Result<PlMap> {
    env.word_eval(w)
}
