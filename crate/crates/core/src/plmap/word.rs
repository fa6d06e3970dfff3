use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Freely reduced word over named generators, stored as syllables
/// `(name, exponent)` with nonzero exponents and distinct adjacent names.
///
/// A word `fg` denotes the composite `f ∘ g`: the rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<(String, i64)>);

/// One letter: a generator and a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(name: impl Into<String>, inverse: bool) -> Self {
        Letter { name: name.into(), inverse }
    }

    pub fn inv(&self) -> Letter {
        Letter { name: self.name.clone(), inverse: !self.inverse }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(name: impl Into<String>) -> Self {
        Word(vec![(name.into(), 1)])
    }

    pub fn power(name: impl Into<String>, exp: i64) -> Self {
        Word::reduce([(name.into(), exp)])
    }

    /// Free reduction of an arbitrary syllable sequence.
    pub fn reduce<I, S>(syllables: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (name, e) in syllables {
            let name = name.into();
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == name => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((name, e)),
            }
        }
        Word(out)
    }

    pub fn from_letters<'a>(letters: impl IntoIterator<Item = &'a Letter>) -> Self {
        Word::reduce(letters.into_iter().map(|l| (l.name.clone(), l.exponent())))
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters, counting `f^3` as three.
    pub fn len(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.0
            .iter()
            .flat_map(|(n, e)| std::iter::repeat_n(Letter::new(n.clone(), *e < 0), e.unsigned_abs() as usize))
            .collect()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().cloned().chain(other.0.iter().cloned()))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|(n, e)| (n.clone(), -e)).collect())
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// `u g u⁻¹`.
    pub fn conjugate(g: &Word, u: &Word) -> Word {
        u.concat(g).concat(&u.inverse())
    }
}

/// Free reduction; idempotent on reduced words.
pub fn word_reduce(w: &Word) -> Word {
    Word::reduce(w.0.iter().cloned())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (n, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl FromStr for Word {
    type Err = Error;

    /// Syllables `name` or `name^k` separated by `.` or whitespace; `1`, `e`
    /// or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "1" || t == "e" {
            return Ok(Word::identity());
        }
        let mut syl = Vec::new();
        for tok in t.split(|c: char| c == '.' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            if !valid_name(name) {
                return Err(Error::Parse(format!("bad generator name `{name}`")));
            }
            syl.push((name.to_string(), exp));
        }
        Ok(Word::reduce(syl))
    }
}

/// All reduced words of exactly `len` letters over `alphabet` (generator
/// names; each contributes itself and its inverse, in that order), in
/// shortlex order.
pub fn shortlex_words(alphabet: &[String], len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> =
        alphabet.iter().flat_map(|n| [Letter::new(n.clone(), false), Letter::new(n.clone(), true)]).collect();
    let mut level: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(level.len() * letters.len());
        for w in &level {
            for l in &letters {
                if w.last().is_some_and(|p| *p == l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("f g g^-1 f"), w("f^2"));
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("f f^-1"), Word::identity());
        assert_eq!(word_reduce(&w("f^2")), w("f^2"));
    }

    #[test]
    fn display_round_trip() {
        let c = w("r3^2 r2^2 r1^2 r5");
        assert_eq!(c.to_string(), "r3^2.r2^2.r1^2.r5");
        assert_eq!(w(&c.to_string()), c);
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn commutator_shape() {
        let x = Word::gen("a");
        let y = Word::gen("b");
        assert_eq!(Word::commutator(&x, &y).to_string(), "a.b.a^-1.b^-1");
        assert_eq!(Word::commutator(&x, &x), Word::identity());
        assert_eq!(Word::conjugate(&y, &x).inverse(), w("a b^-1 a^-1"));
    }

    #[test]
    fn bad_tokens() {
        assert!("f^x".parse::<Word>().is_err());
        assert!("3f".parse::<Word>().is_err());
    }

    #[test]
    fn shortlex_counts() {
        let alpha = vec!["a".to_string(), "b".to_string()];
        assert_eq!(shortlex_words(&alpha, 0).len(), 1);
        assert_eq!(shortlex_words(&alpha, 1).len(), 4);
        assert_eq!(shortlex_words(&alpha, 3).len(), 4 * 3 * 3);
        let first = &shortlex_words(&alpha, 2)[0];
        assert_eq!(Word::from_letters(first), w("a^2"));
    }
}
