//! Displacement certificates: a conjugate of `g` moving the supports of two
//! generators off themselves, checked exactly and searched in shortlex
//! order; and a bounded search for words carrying a closed set into an
//! open one.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Arc, ArcSet, Closed, ExtRat, IntervalLine, Rat, Support, SupportSet};
use crate::plmap::{GenAssignment, Letter, PlMap, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `(A ∪ B) ∩ (u g u⁻¹)(A ∪ B) = ∅` with `A = supp s1`, `B = supp s2`.
    One(Word),
    /// `X ∩ (u2 g u2⁻¹) X = ∅` with `X = A ∪ (u1 g u1⁻¹) B`.
    Two(Word, Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigmanCertificate {
    pub s1: String,
    pub s2: String,
    pub g: Word,
    pub shape: Shape,
    pub verified: bool,
}

impl fmt::Display for HigmanCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::One(u) => write!(f, "higman ONE {} {} {} {u}", self.s1, self.s2, self.g),
            Shape::Two(u1, u2) => write!(f, "higman TWO {} {} {} {u1} {u2}", self.s1, self.s2, self.g),
        }
    }
}

impl HigmanCertificate {
    pub fn one(s1: &str, s2: &str, g: Word, u: Word) -> Self {
        HigmanCertificate { s1: s1.into(), s2: s2.into(), g, shape: Shape::One(u), verified: false }
    }

    pub fn two(s1: &str, s2: &str, g: Word, u1: Word, u2: Word) -> Self {
        HigmanCertificate { s1: s1.into(), s2: s2.into(), g, shape: Shape::Two(u1, u2), verified: false }
    }

    /// Parses `higman ONE s1 s2 g u` or `higman TWO s1 s2 g u1 u2`.
    pub fn parse(line: &str) -> Result<Self> {
        let t: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("bad certificate line `{line}`"));
        match t.as_slice() {
            ["higman", "ONE", s1, s2, g, u] => Ok(Self::one(s1, s2, g.parse()?, u.parse()?)),
            ["higman", "TWO", s1, s2, g, u1, u2] => Ok(Self::two(s1, s2, g.parse()?, u1.parse()?, u2.parse()?)),
            _ => Err(bad()),
        }
    }
}

/// Outcome of an exact certificate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigmanVerdict {
    pub holds: bool,
    /// The intersection that must be empty.
    pub intersection: Support,
    /// A point of the intersection when it is not empty.
    pub witness: Option<Rat>,
}

fn verdict(inter: Support) -> HigmanVerdict {
    HigmanVerdict { holds: inter.is_empty(), witness: inter.sample(), intersection: inter }
}

/// Checks the certificate by composing maps; `verified` in `cert` is ignored.
pub fn verify_higman(env: &GenAssignment, cert: &HigmanCertificate) -> Result<HigmanVerdict> {
    let a = env.get(&cert.s1)?.support();
    let b = env.get(&cert.s2)?.support();
    env.check_bound(&cert.g)?;
    let conj = |u: &Word| env.word_eval(&Word::conjugate(&cert.g, u));
    let inter = match &cert.shape {
        Shape::One(u) => {
            env.check_bound(u)?;
            let x = a.union(&b)?;
            x.intersect(&conj(u)?.image(&x)?)?
        }
        Shape::Two(u1, u2) => {
            env.check_bound(u1)?;
            env.check_bound(u2)?;
            let x = a.union(&conj(u1)?.image(&b)?)?;
            x.intersect(&conj(u2)?.image(&x)?)?
        }
    };
    Ok(verdict(inter))
}

/// Image of an open set under the composite of `letters`, computed from
/// endpoint images on lifts.
fn image_by(env: &GenAssignment, letters: &[Letter], set: &Support) -> Result<Support> {
    match set {
        Support::Line(s) => {
            let ev = |e: &ExtRat| -> Result<ExtRat> {
                Ok(match e {
                    ExtRat::Finite(x) => ExtRat::Finite(env.eval_letters_at(letters, x)?),
                    inf => inf.clone(),
                })
            };
            let ivs = s
                .intervals()
                .iter()
                .map(|iv| Ok(IntervalLine { lo: ev(&iv.lo)?, hi: ev(&iv.hi)? }))
                .collect::<Result<Vec<_>>>()?;
            Ok(Support::Line(SupportSet::from_intervals(ivs)))
        }
        Support::Circle(s) => {
            if s.is_full() || s.is_empty() {
                return Ok(set.clone());
            }
            let l = s.modulus();
            let arcs = s
                .arcs()
                .iter()
                .map(|arc| {
                    let a = arc.start().clone();
                    let b = &a + arc.length();
                    Arc::new(l, &env.eval_letters_at(letters, &a)?, &env.eval_letters_at(letters, &b)?)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Support::Circle(ArcSet::from_arcs(l, &arcs)?))
        }
    }
}

fn conj_letters(u: &[Letter], g: &[Letter]) -> Vec<Letter> {
    let mut v = u.to_vec();
    v.extend_from_slice(g);
    v.extend(u.iter().rev().map(Letter::inv));
    v
}

/// Letters of the alphabet: each generator followed by its inverse.
fn alphabet_letters(alphabet: &[String]) -> Vec<Letter> {
    alphabet.iter().flat_map(|n| [Letter::new(n.clone(), false), Letter::new(n.clone(), true)]).collect()
}

/// Reduced words of length `n` as indices into `alphabet_letters`, in
/// shortlex order; index `i ^ 1` is the inverse of index `i`.
fn index_words(k: usize, n: usize) -> Vec<Vec<u16>> {
    let mut level: Vec<Vec<u16>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * k);
        for w in &level {
            for i in 0..k as u16 {
                if w.last().is_some_and(|&p| p == i ^ 1) {
                    continue;
                }
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        level = next;
    }
    level
}

fn to_letters(letters: &[Letter], w: &[u16]) -> Vec<Letter> {
    w.iter().map(|&i| letters[i as usize].clone()).collect()
}

const CHUNK: usize = 2048;

/// First item (in order) satisfying `pred`, checked in chunks; the answer
/// does not depend on scheduling.
fn find_first_in_order<T: Sync, R: Send>(
    items: impl Iterator<Item = T>,
    pred: impl Fn(&T) -> Result<Option<R>> + Sync + Send,
) -> Result<Option<R>> {
    let mut chunk = Vec::with_capacity(CHUNK);
    let mut items = items.peekable();
    while items.peek().is_some() {
        chunk.clear();
        chunk.extend(items.by_ref().take(CHUNK));
        if let Some(r) = first_in_chunk(&chunk, &pred)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(feature = "parallel")]
fn first_in_chunk<T: Sync, R: Send>(
    chunk: &[T],
    pred: &(impl Fn(&T) -> Result<Option<R>> + Sync),
) -> Result<Option<R>> {
    use rayon::prelude::*;
    chunk.par_iter().map(pred).find_first(|r| !matches!(r, Ok(None))).transpose().map(Option::flatten)
}

#[cfg(not(feature = "parallel"))]
fn first_in_chunk<T: Sync, R: Send>(
    chunk: &[T],
    pred: &(impl Fn(&T) -> Result<Option<R>> + Sync),
) -> Result<Option<R>> {
    for t in chunk {
        if let Some(r) = pred(t)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Shortlex search over `alphabet` for a certificate of total word length
/// at most `max_len`; at each length the single-conjugate shape is tried
/// before the two-conjugate one. Only verified certificates are returned.
pub fn search_higman(
    env: &GenAssignment,
    alphabet: &[String],
    s1: &str,
    s2: &str,
    g: &Word,
    max_len: usize,
) -> Result<Option<HigmanCertificate>> {
    for n in alphabet {
        env.get(n)?;
    }
    let a = env.get(s1)?.support();
    let b = env.get(s2)?.support();
    env.check_bound(g)?;
    let gl = g.letters();
    let letters = alphabet_letters(alphabet);
    let ab = a.union(&b)?;
    let mut words: Vec<Vec<Vec<u16>>> = Vec::new();
    for len in 0..=max_len {
        words.push(index_words(letters.len(), len));
        let one = find_first_in_order(words[len].iter(), |u| {
            let ul = to_letters(&letters, u);
            let img = image_by(env, &conj_letters(&ul, &gl), &ab)?;
            Ok(ab.is_disjoint(&img)?.then(|| Word::from_letters(&ul)))
        })?;
        if let Some(u) = one {
            let cert = HigmanCertificate::one(s1, s2, g.clone(), u);
            return finish(env, cert);
        }
        let pairs = (0..=len).flat_map(|k| {
            let (w1, w2) = (&words[k], &words[len - k]);
            w1.iter().flat_map(move |u1| w2.iter().map(move |u2| (u1, u2)))
        });
        let two = find_first_in_order(pairs, |(u1, u2)| {
            let l1 = to_letters(&letters, u1);
            let l2 = to_letters(&letters, u2);
            let x = a.union(&image_by(env, &conj_letters(&l1, &gl), &b)?)?;
            let img = image_by(env, &conj_letters(&l2, &gl), &x)?;
            Ok(x.is_disjoint(&img)?.then(|| (Word::from_letters(&l1), Word::from_letters(&l2))))
        })?;
        if let Some((u1, u2)) = two {
            let cert = HigmanCertificate::two(s1, s2, g.clone(), u1, u2);
            return finish(env, cert);
        }
    }
    Ok(None)
}

fn finish(env: &GenAssignment, mut cert: HigmanCertificate) -> Result<Option<HigmanCertificate>> {
    let v = verify_higman(env, &cert)?;
    if !v.holds {
        return Err(Error::Precondition(format!("candidate `{cert}` failed map-level verification")));
    }
    cert.verified = true;
    Ok(Some(cert))
}

/// A word carrying `K` into `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveResult {
    pub word: Word,
    /// The commutator blocks `[x, y]` whose product is `word`, when
    /// commutators were required.
    pub blocks: Vec<(Word, Word)>,
    /// Which stage produced the word.
    pub stage: &'static str,
}

/// Whether `w` carries every closed piece of `k` into `j`, by map composition.
pub fn moves_into(env: &GenAssignment, w: &Word, k: &[Closed], j: &Support) -> Result<bool> {
    let m = env.word_eval(w)?;
    Ok(k.iter().all(|p| j.contains_closed(&closed_image(&m, p))))
}

fn closed_image(m: &PlMap, p: &Closed) -> Closed {
    Closed { lo: m.lift(&p.lo), hi: m.lift(&p.hi) }
}

fn moves_by_letters(env: &GenAssignment, letters: &[Letter], k: &[Closed], j: &Support) -> Result<bool> {
    for p in k {
        let img = Closed { lo: env.eval_letters_at(letters, &p.lo)?, hi: env.eval_letters_at(letters, &p.hi)? };
        if !j.contains_closed(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Budget on candidates tried by the exhaustive stages.
const FALLBACK_CAP: usize = 2_000_000;

/// Bounded search for a word `w` of at most `budget` letters with
/// `w(K) ⊆ J`. Stages: powers of one generator, products of two powers,
/// then all reduced words in shortlex order. With `require_commutator` the
/// search runs over products of blocks `[x^e, y^f]` instead.
pub fn co_move(
    env: &GenAssignment,
    alphabet: &[String],
    k: &[Closed],
    j: &Support,
    budget: usize,
    require_commutator: bool,
) -> Result<Option<MoveResult>> {
    for n in alphabet {
        env.get(n)?;
    }
    if let Support::Circle(s) = j {
        for p in k {
            if &p.hi - &p.lo >= *s.modulus() {
                return Err(Error::Precondition(format!("K piece {p} covers the whole circle")));
            }
        }
    }
    if j.is_empty() {
        return Err(Error::Precondition("J is empty".into()));
    }
    if moves_into(env, &Word::identity(), k, j)? {
        return Ok(Some(MoveResult { word: Word::identity(), blocks: Vec::new(), stage: "identity" }));
    }
    let found = if require_commutator {
        commutator_stage(env, alphabet, k, j, budget)?
    } else {
        plain_stages(env, alphabet, k, j, budget)?
    };
    match found {
        Some(r) if moves_into(env, &r.word, k, j)? => Ok(Some(r)),
        Some(r) => Err(Error::Precondition(format!("candidate `{}` failed map-level verification", r.word))),
        None => Ok(None),
    }
}

fn plain_stages(
    env: &GenAssignment,
    alphabet: &[String],
    k: &[Closed],
    j: &Support,
    budget: usize,
) -> Result<Option<MoveResult>> {
    let letters = alphabet_letters(alphabet);
    let try_word = |w: Word| -> Result<Option<Word>> { Ok(moves_by_letters(env, &w.letters(), k, j)?.then_some(w)) };
    let signed = |e: usize| [e as i64, -(e as i64)];
    for e in 1..=budget {
        for n in alphabet {
            for x in signed(e) {
                if let Some(w) = try_word(Word::power(n.clone(), x))? {
                    return Ok(Some(MoveResult { word: w, blocks: Vec::new(), stage: "power" }));
                }
            }
        }
    }
    for total in 2..=budget {
        for e in 1..total {
            let f = total - e;
            for n in alphabet {
                for m in alphabet.iter().filter(|m| *m != n) {
                    for x in signed(e) {
                        for y in signed(f) {
                            let w = Word::power(n.clone(), x).concat(&Word::power(m.clone(), y));
                            if let Some(w) = try_word(w)? {
                                return Ok(Some(MoveResult { word: w, blocks: Vec::new(), stage: "two powers" }));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut tried = 0usize;
    for len in 1..=budget {
        let ws = index_words(letters.len(), len);
        tried += ws.len();
        let hit = find_first_in_order(ws.iter(), |w| {
            let l = to_letters(&letters, w);
            Ok(moves_by_letters(env, &l, k, j)?.then(|| Word::from_letters(&l)))
        })?;
        if let Some(w) = hit {
            return Ok(Some(MoveResult { word: w, blocks: Vec::new(), stage: "shortlex" }));
        }
        if tried > FALLBACK_CAP {
            break;
        }
    }
    Ok(None)
}

fn commutator_stage(
    env: &GenAssignment,
    alphabet: &[String],
    k: &[Closed],
    j: &Support,
    budget: usize,
) -> Result<Option<MoveResult>> {
    // blocks [x^e, y^f] with |e|, |f| <= 2 over distinct generators
    let mut blocks: Vec<(Word, Word, usize)> = Vec::new();
    for n in alphabet {
        for m in alphabet.iter().filter(|m| *m != n) {
            for e in [1i64, -1, 2, -2] {
                for f in [1i64, -1, 2, -2] {
                    let cost = 2 * (e.unsigned_abs() + f.unsigned_abs()) as usize;
                    blocks.push((Word::power(n.clone(), e), Word::power(m.clone(), f), cost));
                }
            }
        }
    }
    blocks.sort_by_key(|b| b.2);
    // sequences of blocks by total letter cost, breadth first
    let mut level: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    let mut tried = 0usize;
    while !level.is_empty() && tried <= FALLBACK_CAP {
        let mut next = Vec::new();
        for (seq, cost) in &level {
            for (bi, b) in blocks.iter().enumerate() {
                if cost + b.2 > budget {
                    continue;
                }
                let mut s = seq.clone();
                s.push(bi);
                next.push((s, cost + b.2));
            }
        }
        next.sort_by_key(|(_, c)| *c);
        tried += next.len();
        let word_of = |seq: &[usize]| {
            seq.iter().fold(Word::identity(), |acc, &bi| acc.concat(&Word::commutator(&blocks[bi].0, &blocks[bi].1)))
        };
        let hit = find_first_in_order(next.iter(), |(seq, _)| {
            let w = word_of(seq);
            Ok(moves_by_letters(env, &w.letters(), k, j)?.then(|| seq.clone()))
        })?;
        if let Some(seq) = hit {
            let bl = seq.iter().map(|&bi| (blocks[bi].0.clone(), blocks[bi].1.clone())).collect();
            return Ok(Some(MoveResult { word: word_of(&seq), blocks: bl, stage: "commutators" }));
        }
        level = next;
    }
    Ok(None)
}
