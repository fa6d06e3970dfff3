mod common;

use common::*;
use num_rational::BigRational as Q;
use plring::exactnum::{IntervalLine, SupportSet};
use plring::plmap::text::{format_map, parse_map};
use plring::plmap::{GenAssignment, PlCircle, PlLine, PlMap, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn line_pts() -> impl Strategy<Value = Vec<(Q, Q)>> {
    any::<u64>().prop_map(|s| random_line_points(&mut StdRng::seed_from_u64(s), 10))
}

fn circle_pts() -> impl Strategy<Value = (i64, Vec<(Q, Q)>)> {
    (1i64..=5, any::<u64>()).prop_map(|(l, s)| (l, random_circle_points(&mut StdRng::seed_from_u64(s), l, 10)))
}

fn point() -> impl Strategy<Value = Q> {
    (-400i64..400).prop_map(|k| q(k, 64))
}

fn interval_set() -> impl Strategy<Value = SupportSet> {
    prop::collection::vec((-20i64..20, 1i64..8), 0..5).prop_map(|v| {
        SupportSet::from_intervals(
            v.into_iter().map(|(a, w)| IntervalLine::finite(q(a, 2), q(a + w, 2)).unwrap()).collect(),
        )
    })
}

fn word(names: &'static [&'static str]) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..names.len(), prop::bool::ANY), 0..6)
        .prop_map(move |v| Word::reduce(v.into_iter().map(|(i, inv)| (names[i].to_string(), if inv { -1 } else { 1 }))))
}

proptest! {
    #[test]
    fn line_eval_matches_segments(pts in line_pts(), x in point()) {
        let f = PlLine::from_points(pts.clone()).unwrap();
        prop_assert_eq!(f.eval(&x), line_eval(&pts, &x));
        prop_assert_eq!(f.inverse().eval(&f.eval(&x)), x);
    }

    #[test]
    fn line_compose_associates(a in line_pts(), b in line_pts(), c in line_pts(), x in point()) {
        let (f, g, h) = (PlLine::from_points(a).unwrap(), PlLine::from_points(b).unwrap(), PlLine::from_points(c).unwrap());
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert_eq!(f.compose(&g).eval(&x), f.eval(&g.eval(&x)));
        prop_assert_eq!(f.compose(&g).inverse(), g.inverse().compose(&f.inverse()));
    }

    #[test]
    fn line_support_is_moved_set(pts in line_pts()) {
        let f = PlLine::from_points(pts.clone()).unwrap();
        let s = f.support();
        for m in midpoints(&pts) {
            prop_assert_eq!(s.contains_point(&m), f.eval(&m) != m);
        }
        // a conjugate is supported on the image of the support
        let g = PlLine::from_points(vec![(qi(0), qi(1)), (qi(1), qi(3))]).unwrap();
        prop_assert_eq!(f.conjugate(&g).support(), g.image(&s));
    }

    #[test]
    fn circle_lift_is_degree_one((l, pts) in circle_pts(), x in point()) {
        let lq = qi(l);
        let f = PlCircle::from_lift_points(&lq, pts.clone()).unwrap();
        prop_assert_eq!(f.lift(&(&x + &lq)), f.lift(&x) + &lq);
        prop_assert_eq!(f.eval(&x), modulo(&circle_lift(&lq, &pts, &x), &lq));
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert_eq!(f.inverse().eval(&f.eval(&x)), modulo(&x, &lq));
    }

    #[test]
    fn circle_support_is_moved_set((l, pts) in circle_pts(), k in 0i64..64) {
        let lq = qi(l);
        let f = PlCircle::from_lift_points(&lq, pts).unwrap();
        let s = f.support();
        let x = q(k * l, 64);
        prop_assert_eq!(s.contains_point(&x), f.eval(&x) != x);
        let img = f.image(&s).unwrap();
        prop_assert_eq!(img, s);
    }

    #[test]
    fn map_text_round_trips(pts in line_pts(), (l, cp) in circle_pts()) {
        let f = PlMap::Line(PlLine::from_points(pts).unwrap());
        prop_assert_eq!(parse_map(&format_map(&f)).unwrap(), f);
        let c = PlMap::Circle(PlCircle::from_lift_points(&qi(l), cp).unwrap());
        prop_assert_eq!(parse_map(&format_map(&c)).unwrap(), c);
    }

    #[test]
    fn set_laws(a in interval_set(), b in interval_set(), c in interval_set(), x in point()) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersect(&b), b.intersect(&a));
        prop_assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
        prop_assert_eq!(a.union(&b).contains_point(&x), a.contains_point(&x) || b.contains_point(&x));
        prop_assert_eq!(a.intersect(&b).contains_point(&x), a.contains_point(&x) && b.contains_point(&x));
        prop_assert_eq!(a.is_disjoint(&b), a.intersect(&b).is_empty());
        prop_assert!(a.intersect(&b).is_subset(&a));
    }

    #[test]
    fn word_reduction(u in word(&["x", "y", "z"]), v in word(&["x", "y", "z"])) {
        prop_assert!(u.concat(&u.inverse()).is_identity());
        prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
        let printed: Word = u.to_string().parse().unwrap();
        prop_assert_eq!(printed, u);
    }

    #[test]
    fn word_eval_is_homomorphism(
        seeds in prop::array::uniform3(any::<u64>()),
        u in word(&["x", "y", "z"]),
        v in word(&["x", "y", "z"]),
        x in point(),
    ) {
        let mut env = GenAssignment::new();
        for (n, s) in ["x", "y", "z"].iter().zip(seeds) {
            let pts = random_line_points(&mut StdRng::seed_from_u64(s), 5);
            env.insert(*n, PlMap::Line(PlLine::from_points(pts).unwrap())).unwrap();
        }
        let fu = env.word_eval(&u).unwrap();
        let fv = env.word_eval(&v).unwrap();
        prop_assert_eq!(env.word_eval(&u.concat(&v)).unwrap(), fu.compose(&fv).unwrap());
        prop_assert_eq!(env.eval_word_at(&u, &x).unwrap(), fu.eval(&x));
        prop_assert_eq!(env.word_eval(&Word::commutator(&u, &v)).unwrap(), fu.commutator(&fv).unwrap());
    }
}
