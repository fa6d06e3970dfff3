use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{div_mod_floor, int, mod_floor, Arc, ArcSet, Rat};

/// Orientation-preserving PL homeomorphism of the circle `ℝ/Lℤ`, stored as
/// a degree-one lift `F` with `F(x + L) = F(x) + L`.
///
/// `bps` holds the lift's breakpoints with `x ∈ [0, L)`; the lift is chosen
/// with `F(0) ∈ [0, L)`. A map without breakpoints is the rotation by `rot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlCircle {
    modulus: Rat,
    bps: Vec<(Rat, Rat)>,
    rot: Rat,
}

fn slope(p: &(Rat, Rat), q: &(Rat, Rat)) -> Rat {
    (&q.1 - &p.1) / (&q.0 - &p.0)
}

fn shift(p: &(Rat, Rat), by: &Rat) -> (Rat, Rat) {
    (&p.0 + by, &p.1 + by)
}

/// Lift value at `x` for breakpoints already reduced to `[0, L)`.
fn lift_raw(modulus: &Rat, bps: &[(Rat, Rat)], rot: &Rat, x: &Rat) -> Rat {
    if bps.is_empty() {
        return x + rot;
    }
    let (q, r) = div_mod_floor(x, modulus);
    let n = bps.len();
    let k = bps.partition_point(|p| p.0 <= r);
    let (p, nx) = if k == 0 {
        (shift(&bps[n - 1], &-modulus), bps[0].clone())
    } else if k == n {
        (bps[n - 1].clone(), shift(&bps[0], modulus))
    } else {
        (bps[k - 1].clone(), bps[k].clone())
    };
    let y = &p.1 + (&r - &p.0) * slope(&p, &nx);
    y + Rat::from_integer(q) * modulus
}

impl PlCircle {
    pub fn identity(modulus: &Rat) -> Result<Self> {
        Self::rotation(modulus, &Rat::zero())
    }

    pub fn rotation(modulus: &Rat, t: &Rat) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::InvalidMap(format!("modulus {modulus} must be positive")));
        }
        Ok(PlCircle { modulus: modulus.clone(), bps: Vec::new(), rot: mod_floor(t, modulus) })
    }

    /// Builds a map from points `(x, F(x))` of a lift, given anywhere on the
    /// line; points are folded into one period. At least one point is needed.
    pub fn from_lift_points(modulus: &Rat, points: Vec<(Rat, Rat)>) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::InvalidMap(format!("modulus {modulus} must be positive")));
        }
        if points.is_empty() {
            return Err(Error::InvalidMap("a circle map needs a breakpoint or a rotation".into()));
        }
        let mut pts: Vec<(Rat, Rat)> = points
            .into_iter()
            .map(|(x, y)| {
                let (q, r) = div_mod_floor(&x, modulus);
                let y = y - Rat::from_integer(q) * modulus;
                (r, y)
            })
            .collect();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        pts.dedup();
        for w in pts.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidMap(format!("two values at x = {}", w[0].0)));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::InvalidMap(format!(
                    "lift not increasing between {}:{} and {}:{}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        let (first, last) = (&pts[0], pts.last().unwrap());
        if last.1 >= &first.1 + modulus {
            return Err(Error::InvalidMap(format!(
                "lift is not degree one: F({}) = {} but F({}) = {}",
                last.0, last.1, first.0, first.1
            )));
        }
        Ok(Self::canonical(modulus.clone(), pts))
    }

    fn canonical(modulus: Rat, pts: Vec<(Rat, Rat)>) -> Self {
        let f0 = lift_raw(&modulus, &pts, &Rat::zero(), &Rat::zero());
        let n = pts.len();
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let prev = if i == 0 { shift(&pts[n - 1], &-&modulus) } else { pts[i - 1].clone() };
            let next = if i + 1 == n { shift(&pts[0], &modulus) } else { pts[i + 1].clone() };
            if slope(&prev, &pts[i]) != slope(&pts[i], &next) {
                keep.push(pts[i].clone());
            }
        }
        let (q, _) = div_mod_floor(&f0, &modulus);
        let down = Rat::from_integer(q) * &modulus;
        if keep.is_empty() {
            let rot = mod_floor(&f0, &modulus);
            return PlCircle { modulus, bps: Vec::new(), rot };
        }
        for p in keep.iter_mut() {
            p.1 = &p.1 - &down;
        }
        PlCircle { modulus, bps: keep, rot: Rat::zero() }
    }

    pub fn modulus(&self) -> &Rat {
        &self.modulus
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.bps
    }

    /// Rotation amount, meaningful only when there are no breakpoints.
    pub fn rotation_amount(&self) -> &Rat {
        &self.rot
    }

    pub fn is_identity(&self) -> bool {
        self.bps.is_empty() && self.rot.is_zero()
    }

    fn check(&self, other: &PlCircle) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.to_string(), other.modulus.to_string()));
        }
        Ok(())
    }

    /// Value of the canonical lift.
    pub fn lift(&self, x: &Rat) -> Rat {
        lift_raw(&self.modulus, &self.bps, &self.rot, x)
    }

    /// Image of the point `x mod L`, reduced to `[0, L)`.
    pub fn eval(&self, x: &Rat) -> Rat {
        mod_floor(&self.lift(x), &self.modulus)
    }

    pub fn inverse(&self) -> Self {
        if self.bps.is_empty() {
            let rot = mod_floor(&-&self.rot, &self.modulus);
            return PlCircle { modulus: self.modulus.clone(), bps: Vec::new(), rot };
        }
        let pts = self.bps.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        Self::from_lift_points(&self.modulus, pts).expect("inverse of a valid lift is valid")
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &PlCircle) -> Result<PlCircle> {
        self.check(g)?;
        let l = &self.modulus;
        if self.bps.is_empty() && g.bps.is_empty() {
            return PlCircle::rotation(l, &(&self.rot + &g.rot));
        }
        let ginv = g.inverse();
        let mut xs: Vec<Rat> = g.bps.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.bps.iter().map(|p| mod_floor(&ginv.lift(&p.0), l)));
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.lift(&g.lift(&x));
                (x, y)
            })
            .collect();
        Ok(Self::canonical(l.clone(), pts))
    }

    pub fn conjugate(&self, u: &PlCircle) -> Result<PlCircle> {
        u.compose(self)?.compose(&u.inverse())
    }

    pub fn commutator(&self, g: &PlCircle) -> Result<PlCircle> {
        self.compose(g)?.compose(&self.inverse())?.compose(&g.inverse())
    }

    /// `{x : f(x) ≠ x}` as a canonical arc set.
    pub fn support(&self) -> ArcSet {
        let l = &self.modulus;
        if self.bps.is_empty() {
            return if self.rot.is_zero() { ArcSet::empty(l) } else { ArcSet::full(l) };
        }
        // graph nodes on [0, L], then solve F(x) - x = kL on each segment
        let mut nodes: Vec<(Rat, Rat)> = vec![(Rat::zero(), self.lift(&Rat::zero()))];
        nodes.extend(self.bps.iter().filter(|p| p.0.is_positive()).cloned());
        nodes.push((l.clone(), self.lift(l)));
        let mut cuts: Vec<Rat> = Vec::new();
        for w in nodes.windows(2) {
            cuts.push(w[0].0.clone());
            let da = &w[0].1 - &w[0].0;
            let db = &w[1].1 - &w[1].0;
            if da == db {
                continue;
            }
            let (lo, hi) = if da < db { (&da, &db) } else { (&db, &da) };
            let mut k: BigInt = (lo / l).floor().to_integer() + 1;
            loop {
                let target = Rat::from_integer(k.clone()) * l;
                if &target >= hi {
                    break;
                }
                if &target > lo {
                    let t = (&target - &da) / (&db - &da);
                    cuts.push(&w[0].0 + t * (&w[1].0 - &w[0].0));
                }
                k += 1;
            }
        }
        cuts.push(l.clone());
        let moved = |x: &Rat| !((self.lift(x) - x) / l).is_integer();
        let mut pieces: Vec<(Rat, Rat)> = Vec::new();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / int(2);
            if !moved(&mid) {
                continue;
            }
            match pieces.last_mut() {
                Some(last) if last.1 == w[0] && moved(&w[0]) => last.1 = w[1].clone(),
                _ => pieces.push((w[0].clone(), w[1].clone())),
            }
        }
        ArcSet::from_pieces(l, pieces, moved(&Rat::zero()))
    }

    /// Image of an open arc set: every arc goes to the arc between the images
    /// of its endpoints.
    pub fn image(&self, set: &ArcSet) -> Result<ArcSet> {
        if set.modulus() != &self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.to_string(), set.modulus().to_string()));
        }
        if set.is_full() || set.is_empty() {
            return Ok(set.clone());
        }
        let arcs: Vec<Arc> = set
            .arcs()
            .iter()
            .map(|a| Arc::new(&self.modulus, &self.eval(a.start()), &self.eval(a.end())))
            .collect::<Result<_>>()?;
        ArcSet::from_arcs(&self.modulus, &arcs)
    }

    /// Whether the two maps agree on the closed arc `[lo, hi]` (`lo <= hi`, read on lifts).
    pub fn agrees_on(&self, other: &PlCircle, lo: &Rat, hi: &Rat) -> bool {
        let l = &self.modulus;
        let mut xs = vec![lo.clone(), hi.clone()];
        for p in self.bps.iter().chain(other.bps.iter()) {
            let mut x = &p.0 + Rat::from_integer((lo / l).floor().to_integer()) * l;
            while &x < lo {
                x += l;
            }
            while &x < hi {
                xs.push(x.clone());
                x += l;
            }
        }
        xs.iter().all(|x| self.eval(x) == other.eval(x))
    }

    /// Breakpoints of the lift lying in the half-open window `[lo, lo + L)`.
    pub fn lift_breakpoints_from(&self, lo: &Rat) -> Vec<(Rat, Rat)> {
        let l = &self.modulus;
        let mut out = Vec::new();
        for p in &self.bps {
            let off = mod_floor(&(&p.0 - lo), l);
            let x = lo + off;
            let y = self.lift(&x);
            out.push((x, y));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}
