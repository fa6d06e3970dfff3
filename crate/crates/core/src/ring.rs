//! Rings of arcs on the circle: axiom validation, the standard 5-ring, the
//! conjugates `r'_i` and the support and commutation identities they satisfy.

use crate::chain::{check_two_chain, standard_bump, validate_chain, ChainSystem};
use crate::error::{Error, Result};
use crate::exactnum::{int, Arc, ArcSet, Rat};
use crate::plmap::{GenAssignment, PlCircle, PlLine, PlMap, Word};
use crate::report::{Check, Violation};

/// Validated ring of circle maps sharing one modulus.
#[derive(Clone, Debug)]
pub struct RingSystem {
    names: Vec<String>,
    maps: Vec<PlCircle>,
    supports: Vec<Arc>,
    modulus: Rat,
    checks: Vec<Check>,
}

fn cyclic_gap(i: usize, j: usize, m: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(m - d)
}

fn shape_error(name: &str, s: &ArcSet) -> Error {
    Error::NonArcSupport { name: name.to_string(), support: s.to_string() }
}

/// Itemized (R1)/(R2) checks over arbitrary supports. A support that is not
/// a single arc fails the (R2) entries it takes part in.
fn axiom_checks(names: &[String], sups: &[ArcSet]) -> Result<Vec<Check>> {
    let m = sups.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if cyclic_gap(i, j, m) > 1 {
                let ov = sups[i].intersect(&sups[j])?;
                out.push(Check::new(
                    format!("R1({},{})", i + 1, j + 1),
                    ov.is_empty(),
                    format!("{} n {} = {ov}", sups[i], sups[j]),
                ));
            }
        }
    }
    for i in 0..m {
        let j = (i + 1) % m;
        let ov = sups[i].intersect(&sups[j])?;
        let bad_shape = [i, j].into_iter().find(|&k| sups[k].single_arc().is_none());
        let (ok, w) = if let Some(k) = bad_shape {
            (false, format!("supp({}) = {} is not a single arc", names[k], sups[k]))
        } else if ov.is_empty() {
            (false, format!("{} n {} = {ov}", sups[i], sups[j]))
        } else if ov.single_arc().is_none() || ov == sups[i] || ov == sups[j] {
            (false, format!("{} n {} = {ov} is not a proper subarc", sups[i], sups[j]))
        } else {
            (true, format!("{} n {} = {ov}", sups[i], sups[j]))
        };
        out.push(Check::new(format!("R2({},{})", i + 1, j + 1), ok, w));
    }
    Ok(out)
}

fn common_modulus(maps: &[PlCircle]) -> Result<Rat> {
    let l = maps[0].modulus().clone();
    for f in maps {
        if *f.modulus() != l {
            return Err(Error::ModulusMismatch(l.to_string(), f.modulus().to_string()));
        }
    }
    Ok(l)
}

/// (R1)/(R2) checks for arbitrary circle maps, without failing on shape.
pub fn ring_axiom_checks<S: AsRef<str>>(maps: &[(S, PlCircle)]) -> Result<Vec<Check>> {
    if maps.len() < 3 {
        return Ok(vec![Check::new("R2", false, format!("{} maps, need 3", maps.len()))]);
    }
    let fs: Vec<PlCircle> = maps.iter().map(|(_, f)| f.clone()).collect();
    common_modulus(&fs)?;
    let names: Vec<String> = maps.iter().map(|(n, _)| n.as_ref().to_string()).collect();
    let sups: Vec<ArcSet> = fs.iter().map(PlCircle::support).collect();
    axiom_checks(&names, &sups)
}

pub fn validate_ring<S: AsRef<str>>(maps: &[(S, PlCircle)]) -> std::result::Result<RingSystem, Violation> {
    if maps.len() < 3 {
        return Err(Violation::TooFew { needed: 3, got: maps.len() });
    }
    let names: Vec<String> = maps.iter().map(|(n, _)| n.as_ref().to_string()).collect();
    let fs: Vec<PlCircle> = maps.iter().map(|(_, f)| f.clone()).collect();
    let modulus = common_modulus(&fs)?;
    let sets: Vec<ArcSet> = fs.iter().map(PlCircle::support).collect();
    let mut supports = Vec::new();
    for (n, s) in names.iter().zip(&sets) {
        supports.push(s.single_arc().ok_or_else(|| shape_error(n, s))?);
    }
    let checks = axiom_checks(&names, &sets)?;
    if let Some(c) = checks.iter().find(|c| !c.passed()) {
        let axiom = if c.id.starts_with("R1") { "R1" } else { "R2" };
        let idx: Vec<usize> = c.id[3..c.id.len() - 1].split(',').map(|t| t.parse().unwrap()).collect();
        return Err(Violation::Axiom { axiom, i: idx[0], j: idx[1], detail: c.witness.clone() });
    }
    Ok(RingSystem { names, maps: fs, supports, modulus, checks })
}

/// The standard bump profiles placed on the arcs `(i, i+2)`, `i = 1..m`, of
/// the circle of length `m`.
pub fn ring_from_profiles(profiles: &[PlLine]) -> Result<RingSystem> {
    let m = profiles.len();
    if m < 3 {
        return Err(Error::Precondition(format!("a ring needs at least 3 maps, got {m}")));
    }
    let l = int(m as i64);
    let home = crate::exactnum::SupportSet::from_interval(crate::exactnum::IntervalLine::finite(int(0), int(2))?);
    let mut maps = Vec::with_capacity(m);
    for (k, p) in profiles.iter().enumerate() {
        if !p.support().is_subset(&home) {
            return Err(Error::Precondition(format!("profile {} has support {} outside (0,2)", k + 1, p.support())));
        }
        let i = int(k as i64 + 1);
        let mut pts = vec![(int(0), int(0)), (int(2), int(2))];
        pts.extend(p.breakpoints().iter().filter(|(x, _)| *x > int(0) && *x < int(2)).cloned());
        let pts = pts.into_iter().map(|(x, y)| (x + &i, y + &i)).collect();
        maps.push((format!("r{}", k + 1), PlCircle::from_lift_points(&l, pts)?));
    }
    Ok(validate_ring(&maps)?)
}

/// `r_i` is the standard bump on the arc `(i, i+2)` of the circle of length 5.
pub fn make_standard_ring5() -> RingSystem {
    ring_from_profiles(&vec![standard_bump(); 5]).expect("the standard ring is valid")
}

impl RingSystem {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn maps(&self) -> &[PlCircle] {
        &self.maps
    }

    pub fn supports(&self) -> &[Arc] {
        &self.supports
    }

    pub fn modulus(&self) -> &Rat {
        &self.modulus
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// (R1) and (R2) results, all passing.
    pub fn axiom_checks(&self) -> &[Check] {
        &self.checks
    }

    /// Zero-based position of the 1-based index `i`, read modulo m.
    fn at(&self, i: i64) -> usize {
        (i - 1).rem_euclid(self.len() as i64) as usize
    }

    pub fn name(&self, i: i64) -> &str {
        &self.names[self.at(i)]
    }

    pub fn map(&self, i: i64) -> &PlCircle {
        &self.maps[self.at(i)]
    }

    pub fn support(&self, i: i64) -> &Arc {
        &self.supports[self.at(i)]
    }

    pub fn env(&self) -> GenAssignment {
        GenAssignment::from_maps(self.names.iter().cloned().zip(self.maps.iter().cloned().map(PlMap::Circle)))
            .expect("ring maps share a modulus")
    }

    /// The generators together with `rp1..rp5` bound to the maps `r'_i`.
    pub fn env_with_rprimes(&self) -> Result<GenAssignment> {
        let mut env = self.env();
        for i in 1..=self.len() as i64 {
            let (_, rp) = build_rprime(self, i)?;
            env.insert(rprime_name(i), PlMap::Circle(rp))?;
        }
        Ok(env)
    }

    /// The two boundary conditions `∂₊J_i = ∂₋J_{i+2}` and
    /// `r_{i+1} r_i (∂₋J_{i+1}) = ∂₋J_{i+2}`, for every `i` modulo m.
    pub fn hypothesis_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        for i in 1..=self.len() as i64 {
            let hi = self.support(i).end();
            let lo2 = self.support(i + 2).start();
            out.push(Check::new(format!("L35_I({i})"), hi == lo2, format!("hi{i}={hi} lo{}={lo2}", i + 2)));
        }
        for i in 1..=self.len() as i64 {
            let lo1 = self.support(i + 1).start();
            let y = self.map(i + 1).eval(&self.map(i).eval(lo1));
            let lo2 = self.support(i + 2).start();
            out.push(Check::new(
                format!("L35_II({i})"),
                &y == lo2,
                format!("{}{}({lo1})={y} lo{}={lo2}", self.name(i + 1), self.name(i), i + 2),
            ));
        }
        out
    }
}

pub fn rprime_name(i: i64) -> String {
    format!("rp{i}")
}

/// `c_i = r_{i+2}² r_{i+1}² r_i² r_{i-1}` and `r'_i = c_i r_i c_i⁻¹`.
pub fn build_rprime(ring: &RingSystem, i: i64) -> Result<(Word, PlCircle)> {
    if ring.len() != 5 {
        return Err(Error::Precondition(format!("r' is defined on 5-rings, this ring has {} maps", ring.len())));
    }
    let c = Word::reduce([(ring.name(i + 2), 2), (ring.name(i + 1), 2), (ring.name(i), 2), (ring.name(i - 1), 1)]);
    let cm = ring.env().word_eval(&c)?;
    let cm = cm.as_circle().expect("ring words evaluate to circle maps");
    Ok((c, ring.map(i).conjugate(cm)?))
}

/// Cuts the circle outside the union of `n` consecutive supports starting
/// at `start` and returns those maps as a chain on the line.
pub fn ring_to_chain_subsystem(ring: &RingSystem, start: i64, n: usize) -> Result<ChainSystem> {
    if n < 2 || n > ring.len() {
        return Err(Error::Precondition(format!("need 2 <= n <= {}, got {n}", ring.len())));
    }
    let l = ring.modulus();
    let idx: Vec<i64> = (0..n as i64).map(|k| start + k).collect();
    let mut union = ArcSet::empty(l);
    for &i in &idx {
        union = union.union(&ArcSet::from_arc(ring.support(i)))?;
    }
    if union.is_full() {
        return Err(Error::CannotUnroll);
    }
    let zero = int(0);
    let cut = if !union.contains_point(&zero) { zero } else { union.arcs()[0].end().clone() };
    let mut maps = Vec::with_capacity(n);
    for &i in &idx {
        let f = ring.map(i);
        let y = f.lift(&cut);
        let k = (&y - &cut) / l;
        if !k.is_integer() {
            return Err(Error::Precondition(format!("{} moves the cut point {cut}", ring.name(i))));
        }
        let down = k * l;
        let mut pts = vec![(cut.clone(), cut.clone()), (&cut + l, &cut + l)];
        pts.extend(f.lift_breakpoints_from(&cut).into_iter().map(|(x, y)| (x, y - &down)));
        maps.push((ring.name(i).to_string(), PlLine::new(pts, int(0), int(0))?));
    }
    Ok(validate_chain(&maps)?)
}

/// Results of every identity checked for a 5-ring.
#[derive(Clone, Debug)]
pub struct RingCertificate {
    pub checks: Vec<Check>,
    /// `(c_i, r'_i)` for `i = 1..5`.
    pub rprimes: Vec<(Word, PlCircle)>,
    /// Per `i`: whether `∂₋supp(r'_i) = r_{i+2}(∂₋J_{i+3})` and
    /// `∂₊supp(r'_i) = r_{i+2}² r_{i+1}²(∂₋J_{i+2})`.
    pub endpoints: Vec<(bool, bool)>,
}

impl RingCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed) && self.endpoints.iter().all(|(a, b)| *a && *b)
    }
}

fn commutation_check(id: String, f: &PlCircle, g: &PlCircle) -> Result<Check> {
    let c = f.commutator(g)?;
    Ok(if c.is_identity() {
        Check::new(id, true, "commutator=id")
    } else {
        let s = c.support();
        Check::new(id, false, format!("commutator moves {}", s.sample().map(|x| x.to_string()).unwrap_or_default()))
    })
}

pub fn verify_ar_lemma(ring: &RingSystem) -> Result<RingCertificate> {
    if ring.len() != 5 {
        return Err(Error::Precondition(format!("need a 5-ring, got {} maps", ring.len())));
    }
    let hyp = ring.hypothesis_checks();
    if let Some(c) = hyp.iter().find(|c| !c.passed()) {
        return Err(Error::Precondition(format!("{} fails: {}", c.id, c.witness)));
    }
    let l = ring.modulus();
    let mut checks = hyp;
    let rprimes: Vec<(Word, PlCircle)> = (1..=5).map(|i| build_rprime(ring, i)).collect::<Result<_>>()?;
    let rp = |i: i64| &rprimes[(i - 1).rem_euclid(5) as usize].1;

    for i in 1..=5i64 {
        let chain = ring_to_chain_subsystem(ring, i, 2)?;
        let r = check_two_chain(&chain.maps()[0], &chain.maps()[1])?;
        checks.push(Check::new(format!("TWO_CHAIN({i})"), r.passed(), r.witness()));
    }

    let mut endpoints = Vec::new();
    for i in 1..=5i64 {
        let p = rp(i);
        let sp = p.support();
        let both = ArcSet::from_arc(ring.support(i + 2)).intersect(&ArcSet::from_arc(ring.support(i + 3)))?;
        let arc = sp.single_arc();
        let ok = arc.is_some() && sp.is_subset(&both)?;
        checks.push(Check::new(format!("RP_SUPP({i})"), ok, format!("{sp} in {both}")));

        let back = ring.map(i + 2).inverse().image(&sp)?;
        let ov = sp.intersect(&back)?;
        checks.push(Check::new(
            format!("RP_DISJ_A({i})"),
            ov.is_empty(),
            format!("{}^-1(supp)={back} n {sp} = {ov}", ring.name(i + 2)),
        ));

        let fwd = ring.map(i + 3).image(&sp)?;
        let ov = sp.intersect(&fwd)?;
        checks.push(Check::new(
            format!("RP_DISJ_B({i})"),
            ov.is_empty(),
            format!("{}(supp)={fwd} n {sp} = {ov}", ring.name(i + 3)),
        ));

        let mut others: Vec<(String, &PlCircle)> = Vec::new();
        for k in 1..=5i64 {
            if k.rem_euclid(5) != (i + 2).rem_euclid(5) && k.rem_euclid(5) != (i + 3).rem_euclid(5) {
                others.push((ring.name(k).to_string(), ring.map(k)));
            }
        }
        for k in 1..=5i64 {
            if k != i {
                others.push((rprime_name(k), rp(k)));
            }
        }
        for (name, g) in others {
            checks.push(commutation_check(format!("COMM_FAR({i},{name})"), p, g)?);
        }
        let a = p.conjugate(&ring.map(i + 2).inverse())?;
        checks.push(commutation_check(format!("COMM_CONJ_A({i})"), &a, p)?);
        let b = p.conjugate(&ring.map(i + 3).inverse())?;
        checks.push(commutation_check(format!("COMM_CONJ_B({i})"), &b, p)?);

        let ends = match arc {
            Some(arc) => {
                let lo = ring.map(i + 2).eval(ring.support(i + 3).start());
                let s = ring.support(i + 2).start();
                let hi = [i + 1, i + 1, i + 2, i + 2].iter().fold(s.clone(), |x, &k| ring.map(k).eval(&x));
                (lo == *arc.start(), crate::exactnum::mod_floor(&hi, l) == *arc.end())
            }
            None => (false, false),
        };
        checks.push(Check::new(
            format!("RP_ENDS({i})"),
            ends.0 && ends.1,
            format!("lower={} upper={}", ends.0, ends.1),
        ));
        endpoints.push(ends);
    }
    Ok(RingCertificate { checks, rprimes, endpoints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn arc_str(f: &PlCircle) -> String {
        f.support().single_arc().unwrap().to_string()
    }

    #[test]
    fn standard_ring_shape() {
        let r = make_standard_ring5();
        assert_eq!(r.support(4).to_string(), "(4,1)");
        assert_eq!(r.map(1).eval(&int(2)), rat(5, 2));
        assert_eq!(r.map(2).eval(&rat(5, 2)), int(3));
        assert_eq!(r.map(5).eval(&r.map(4).eval(&int(5))), int(1));
        assert!(r.hypothesis_checks().iter().all(Check::passed));
        assert_eq!(r.axiom_checks().len(), 10);
    }

    #[test]
    fn rprime_supports() {
        let r = make_standard_ring5();
        let (c, p1) = build_rprime(&r, 1).unwrap();
        assert_eq!(c.to_string(), "r3^2.r2^2.r1^2.r5");
        assert_eq!(arc_str(&p1), "(9/2,37/8)");
        assert_eq!(arc_str(&build_rprime(&r, 3).unwrap().1), "(3/2,13/8)");
        let env = r.env();
        assert_eq!(env.word_eval(&c).unwrap().eval(&int(3)), rat(37, 8));
        assert_eq!(env.word_eval(&"r2^2".parse().unwrap()).unwrap().eval(&rat(5, 2)), rat(7, 2));
    }

    #[test]
    fn rotation_equivariance() {
        let r = make_standard_ring5();
        let rho = PlCircle::rotation(&int(5), &int(1)).unwrap();
        for i in 1..=5 {
            let (_, p) = build_rprime(&r, i).unwrap();
            let (_, q) = build_rprime(&r, i + 1).unwrap();
            assert_eq!(p.conjugate(&rho).unwrap(), q);
            assert_eq!(r.map(i).conjugate(&rho).unwrap(), *r.map(i + 1));
        }
    }

    #[test]
    fn certificate_passes() {
        let r = make_standard_ring5();
        let cert = verify_ar_lemma(&r).unwrap();
        assert!(cert.passed(), "{:?}", cert.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        // 10 boundary, 5 pair, and per i: 3 support, 7 far, 2 conjugate
        assert_eq!(cert.checks.len(), 10 + 5 + 5 * 13);
    }

    #[test]
    fn ring_violations() {
        let l = int(3);
        let mk = |a: i64| {
            let pts = vec![(int(a), int(a)), (rat(2 * a + 1, 2), rat(4 * a + 3, 4)), (int(a + 1), int(a + 1))];
            PlCircle::from_lift_points(&l, pts).unwrap()
        };
        let maps = vec![("p", mk(0)), ("q", mk(1)), ("s", mk(2))];
        assert!(matches!(validate_ring(&maps), Err(Violation::Axiom { axiom: "R2", .. })));

        // on a 4-ring, a support reaching across to the opposite generator
        let l4 = int(4);
        let arc = |a: Rat, b: Rat| {
            let m = (&a + &b) / int(2);
            let y = (&m + &b) / int(2);
            PlCircle::from_lift_points(&l4, vec![(a.clone(), a), (m, y), (b.clone(), b)]).unwrap()
        };
        let maps = vec![
            ("a", arc(int(0), rat(5, 2))),
            ("b", arc(int(1), int(3))),
            ("c", arc(int(2), int(4))),
            ("d", arc(int(3), int(5))),
        ];
        match validate_ring(&maps) {
            Err(Violation::Axiom { axiom: "R1", i: 1, j: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        let id = PlCircle::identity(&l4).unwrap();
        let maps = vec![("a", arc(int(0), int(2))), ("b", id), ("c", arc(int(2), int(4)))];
        assert!(matches!(validate_ring(&maps), Err(Violation::Input(Error::NonArcSupport { .. }))));
        let checks = ring_axiom_checks(&maps).unwrap();
        assert!(checks.iter().any(|c| c.id == "R2(1,2)" && !c.passed()));
    }

    #[test]
    fn unrolling() {
        let r = make_standard_ring5();
        let c2 = ring_to_chain_subsystem(&r, 1, 2).unwrap();
        let s: Vec<String> = c2.supports().iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["(1,3)", "(2,4)"]);
        let c4 = ring_to_chain_subsystem(&r, 1, 4).unwrap();
        let s: Vec<String> = c4.supports().iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["(1,3)", "(2,4)", "(3,5)", "(4,6)"]);
        assert!(c4.all_pass());
        assert_eq!(ring_to_chain_subsystem(&r, 1, 5).unwrap_err(), Error::CannotUnroll);
        let c = ring_to_chain_subsystem(&r, 4, 3).unwrap();
        assert!(c.all_pass());
    }
}
