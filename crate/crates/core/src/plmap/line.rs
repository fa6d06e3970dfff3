use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, ExtRat, IntervalLine, Rat, SupportSet};

/// Orientation-preserving PL homeomorphism of the line whose two ends are
/// translations: `x ↦ x + left` before the first breakpoint and
/// `x ↦ x + right` after the last one.
///
/// The breakpoint list is canonical (no point is collinear with its
/// neighbours), so structural equality is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlLine {
    bps: Vec<(Rat, Rat)>,
    left: Rat,
    right: Rat,
}

fn slope(p: &(Rat, Rat), q: &(Rat, Rat)) -> Rat {
    (&q.1 - &p.1) / (&q.0 - &p.0)
}

fn interpolate(p: &(Rat, Rat), q: &(Rat, Rat), x: &Rat) -> Rat {
    &p.1 + (x - &p.0) * slope(p, q)
}

impl PlLine {
    pub fn identity() -> Self {
        Self::translation(Rat::zero())
    }

    pub fn translation(t: Rat) -> Self {
        PlLine { bps: Vec::new(), left: t.clone(), right: t }
    }

    /// Map through the given points with translation tails read off the
    /// first and last point.
    pub fn from_points(points: Vec<(Rat, Rat)>) -> Result<Self> {
        if points.is_empty() {
            return Ok(Self::identity());
        }
        let mut pts = points;
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        let left = &pts[0].1 - &pts[0].0;
        let last = pts.last().unwrap();
        let right = &last.1 - &last.0;
        Self::new(pts, left, right)
    }

    /// Validating constructor; the result is canonicalized.
    pub fn new(points: Vec<(Rat, Rat)>, left: Rat, right: Rat) -> Result<Self> {
        let mut pts = points;
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        pts.dedup();
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidMap(format!("two values at x = {}", w[0].0)));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::InvalidMap(format!(
                    "not increasing between {}:{} and {}:{}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        match (pts.first(), pts.last()) {
            (Some(f), Some(l)) => {
                if &f.1 - &f.0 != left || &l.1 - &l.0 != right {
                    return Err(Error::InvalidMap(format!(
                        "tails {left} {right} do not match end points {}:{} and {}:{}",
                        f.0, f.1, l.0, l.1
                    )));
                }
            }
            _ => {
                if left != right {
                    return Err(Error::InvalidMap(format!("translation with tails {left} != {right}")));
                }
            }
        }
        Ok(Self::canonical(pts, left, right))
    }

    fn canonical(pts: Vec<(Rat, Rat)>, left: Rat, right: Rat) -> Self {
        let n = pts.len();
        let one = Rat::one();
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let s_in = if i == 0 { one.clone() } else { slope(&pts[i - 1], &pts[i]) };
            let s_out = if i + 1 == n { one.clone() } else { slope(&pts[i], &pts[i + 1]) };
            if s_in != s_out {
                keep.push(pts[i].clone());
            }
        }
        if keep.is_empty() {
            // all slopes are 1, so both tails coincide
            return Self::translation(left);
        }
        PlLine { bps: keep, left, right }
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.bps
    }

    pub fn left_tail(&self) -> &Rat {
        &self.left
    }

    pub fn right_tail(&self) -> &Rat {
        &self.right
    }

    pub fn is_identity(&self) -> bool {
        self.bps.is_empty() && self.left.is_zero()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let (first, last) = match (self.bps.first(), self.bps.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return x + &self.left,
        };
        if x <= &first.0 {
            return x + &self.left;
        }
        if x >= &last.0 {
            return x + &self.right;
        }
        let k = self.bps.partition_point(|p| &p.0 <= x);
        interpolate(&self.bps[k - 1], &self.bps[k], x)
    }

    pub fn eval_ext(&self, x: &ExtRat) -> ExtRat {
        match x {
            ExtRat::Finite(q) => ExtRat::Finite(self.eval(q)),
            other => other.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        let pts = self.bps.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        PlLine { bps: pts, left: -&self.left, right: -&self.right }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &PlLine) -> PlLine {
        let ginv = g.inverse();
        let mut xs: Vec<Rat> = g.bps.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.bps.iter().map(|p| ginv.eval(&p.0)));
        xs.sort();
        xs.dedup();
        let left = &self.left + &g.left;
        let right = &self.right + &g.right;
        if xs.is_empty() {
            return Self::translation(left);
        }
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&g.eval(&x));
                (x, y)
            })
            .collect();
        Self::canonical(pts, left, right)
    }

    /// `u ∘ self ∘ u⁻¹`.
    pub fn conjugate(&self, u: &PlLine) -> PlLine {
        u.compose(self).compose(&u.inverse())
    }

    /// `self ∘ g ∘ self⁻¹ ∘ g⁻¹`.
    pub fn commutator(&self, g: &PlLine) -> PlLine {
        self.compose(g).compose(&self.inverse()).compose(&g.inverse())
    }

    /// `{x : f(x) ≠ x}` as a canonical union of open intervals.
    pub fn support(&self) -> SupportSet {
        if self.bps.is_empty() {
            return if self.left.is_zero() { SupportSet::empty() } else { SupportSet::whole() };
        }
        let disp = |p: &(Rat, Rat)| &p.1 - &p.0;
        // cut points: breakpoints plus isolated interior fixed points
        let mut cuts: Vec<Rat> = Vec::new();
        for (i, p) in self.bps.iter().enumerate() {
            cuts.push(p.0.clone());
            if let Some(q) = self.bps.get(i + 1) {
                let (da, db) = (disp(p), disp(q));
                if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
                    let t = &da / (&da - &db);
                    cuts.push(&p.0 + t * (&q.0 - &p.0));
                }
            }
        }
        let moved = |x: &Rat| self.eval(x) != *x;
        let mut pieces: Vec<IntervalLine> = Vec::new();
        let push = |lo: ExtRat, hi: ExtRat, join: bool, pieces: &mut Vec<IntervalLine>| match pieces.last_mut() {
            Some(last) if join && last.hi == lo => last.hi = hi,
            _ => pieces.push(IntervalLine { lo, hi }),
        };
        if !self.left.is_zero() {
            push(ExtRat::NegInf, ExtRat::Finite(cuts[0].clone()), false, &mut pieces);
        }
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / int(2);
            if moved(&mid) {
                push(ExtRat::Finite(w[0].clone()), ExtRat::Finite(w[1].clone()), moved(&w[0]), &mut pieces);
            }
        }
        if !self.right.is_zero() {
            let c = cuts.last().unwrap().clone();
            let join = moved(&c);
            push(ExtRat::Finite(c), ExtRat::PosInf, join, &mut pieces);
        }
        SupportSet::from_intervals(pieces)
    }

    /// Image of an open set; infinite endpoints stay put.
    pub fn image(&self, set: &SupportSet) -> SupportSet {
        SupportSet::from_intervals(
            set.intervals()
                .iter()
                .map(|iv| IntervalLine { lo: self.eval_ext(&iv.lo), hi: self.eval_ext(&iv.hi) })
                .collect(),
        )
    }

    /// Whether `self` and `other` agree at every point of `[lo, hi]`.
    pub fn agrees_on(&self, other: &PlLine, lo: &Rat, hi: &Rat) -> bool {
        let mut xs = vec![lo.clone(), hi.clone()];
        for p in self.bps.iter().chain(other.bps.iter()) {
            if &p.0 > lo && &p.0 < hi {
                xs.push(p.0.clone());
            }
        }
        xs.iter().all(|x| self.eval(x) == other.eval(x))
    }

    /// Affine rescaling `x ↦ offset + scale·x` conjugating `self`.
    pub fn rescaled(&self, scale: &Rat, offset: &Rat) -> Result<PlLine> {
        if !scale.is_positive() {
            return Err(Error::InvalidMap(format!("scale {scale} must be positive")));
        }
        let pts = self.bps.iter().map(|(x, y)| (offset + scale * x, offset + scale * y)).collect();
        Ok(PlLine::canonical(pts, scale * &self.left, scale * &self.right))
    }
}
