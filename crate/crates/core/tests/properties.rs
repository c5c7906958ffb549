//! Property tests over the builder fixtures.

use grpd::build::{self, Group};
use grpd::{
    inner, morphisms, normality, subgroupoid, textio, verify, Elem, ElemSet, ElementSet, Groupoid,
    RawTable, SubgroupoidView,
};
use proptest::prelude::*;
use proptest::sample::Index;

fn fixtures() -> Vec<Groupoid> {
    let z = |n| Group::cyclic(n).unwrap();
    vec![
        build::pair(2).unwrap(),
        build::pair(3).unwrap(),
        build::bundle(&[z(2), z(2)]).unwrap(),
        build::bundle(&[z(2), z(3)]).unwrap(),
        build::bundle(&[z(4), Group::symmetric(3).unwrap()]).unwrap(),
        build::cyclic(6).unwrap(),
        build::symmetric(3).unwrap(),
        build::dihedral(4).unwrap(),
        build::product(2, &Group::symmetric(3).unwrap()).unwrap(),
    ]
}

fn pick(g: &Groupoid, i: &Index) -> Elem {
    Elem(i.index(g.len()))
}

fn small(g: &Groupoid) -> bool {
    g.len() <= subgroupoid::ENUMERATION_LIMIT
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn element_calculus(f in 0..9usize, a: Index, b: Index) {
        let g = &fixtures()[f];
        let (x, y) = (pick(g, &a), pick(g, &b));
        prop_assert_eq!(g.inv(g.inv(x)), x);
        prop_assert_eq!(g.d(x), g.r(g.inv(x)));
        prop_assert_eq!(g.compose(x, g.d(x)), Some(x));
        prop_assert_eq!(g.compose(g.r(x), x), Some(x));
        prop_assert_eq!(g.compose(x, y).is_some(), g.d(x) == g.r(y));
        if let Some(xy) = g.compose(x, y) {
            prop_assert_eq!(Some(g.inv(xy)), g.compose(g.inv(y), g.inv(x)));
            prop_assert_eq!(g.d(xy), g.d(y));
            prop_assert_eq!(g.r(xy), g.r(x));
        }
    }

    #[test]
    fn relabelling_round_trips(f in 0..9usize, seed: u64) {
        let g = &fixtures()[f];
        let n = g.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let raw = g.to_raw();
        let relabelled = RawTable::from_parts(
            order.iter().map(|&i| raw.elements()[i].clone()).collect(),
            raw.products().iter().map(|(&(x, y), &z)| ((pos[x], pos[y]), pos[z])),
        ).unwrap();
        let h = grpd::validate(g.name(), &relabelled).unwrap();
        let text = textio::serialize(&h);
        prop_assert_eq!(&textio::read_groupoid(&text).unwrap(), &h);
        prop_assert!(morphisms::find_isomorphism(g, &h).is_some());
    }

    #[test]
    fn generation_is_least(f in 0..9usize, mask in 1u32..) {
        let g = &fixtures()[f];
        let seed: ElemSet = g.elements().filter(|x| mask >> (x.0 % 32) & 1 == 1).take(3).collect();
        prop_assume!(!seed.is_empty());
        let h = subgroupoid::generate(&ElementSet::new(g, seed.clone()).unwrap()).unwrap();
        prop_assert_eq!(h.members(), &verify::word_closure(g, &seed));
        if small(g) {
            for w in subgroupoid::enumerate_wide(g).unwrap() {
                if seed.is_subset(w.members()) {
                    prop_assert!(h.is_subset_of(&w));
                }
            }
        }
    }

    #[test]
    fn product_criterion(f in 0..9usize, a: Index, b: Index) {
        let g = &fixtures()[f];
        let fam = verify::wide_family(g).1;
        let (h, k) = (&fam[a.index(fam.len())].1, &fam[b.index(fam.len())].1);
        let closed = subgroupoid::product_is_subgroupoid(h, k).unwrap();
        let hk = subgroupoid::set_product(h, k).unwrap();
        let kh = subgroupoid::set_product(k, h).unwrap();
        prop_assert_eq!(closed, hk.members() == kh.members());
    }

    #[test]
    fn congruence_is_equivalence(f in 0..9usize, w: Index, a: Index, b: Index, c: Index) {
        let g = &fixtures()[f];
        let fam = verify::wide_family(g).1;
        let h = &fam[w.index(fam.len())].1;
        let (x, y, z) = (pick(g, &a), pick(g, &b), pick(g, &c));
        prop_assert!(normality::congruent(h, x, x));
        prop_assert_eq!(normality::congruent(h, x, y), normality::congruent(h, y, x));
        if normality::congruent(h, x, y) && normality::congruent(h, y, z) {
            prop_assert!(normality::congruent(h, x, z));
        }
        let cx = normality::coset(h, x);
        prop_assert_eq!(cx.members.contains(&y), normality::congruent(h, y, x));
    }

    #[test]
    fn inner_isomorphisms_compose(f in 0..9usize, a: Index, b: Index) {
        let g = &fixtures()[f];
        let (x, y) = (pick(g, &a), pick(g, &b));
        let ix = inner::inner_iso(g, x).unwrap().iso;
        prop_assert!(ix.is_group_iso(g));
        prop_assert_eq!(inner::inner_iso(g, g.inv(x)).unwrap().iso, ix.inverse());
        if let Some(xy) = g.compose(x, y) {
            let iy = inner::inner_iso(g, y).unwrap().iso;
            prop_assert_eq!(ix.after(&iy), Some(inner::inner_iso(g, xy).unwrap().iso));
        }
    }

    #[test]
    fn normal_closure_is_least_normal(f in 0..9usize, a: Index) {
        let g = &fixtures()[f];
        let x = pick(g, &a);
        let c = normality::normal_closure(&ElementSet::new(g, [x]).unwrap()).unwrap();
        prop_assert!(c.contains(x));
        prop_assert!(normality::is_normal(&c));
        prop_assert!(normality::is_normal_by_equality(&c));
        for (_, n) in verify::wide_family(g).1 {
            if n.contains(x) && normality::is_normal(&n) {
                prop_assert!(c.is_subset_of(&n));
            }
        }
    }

    #[test]
    fn isotropic_quotients_validate(f in 0..9usize, w: Index) {
        let g = &fixtures()[f];
        let normals: Vec<SubgroupoidView<'_>> = verify::wide_family(g)
            .1
            .into_iter()
            .map(|(_, h)| h)
            .filter(|h| normality::is_normal(h) && h.is_isotropic())
            .collect();
        let h = &normals[w.index(normals.len())];
        let q = normality::quotient(h).unwrap();
        let classes: std::collections::BTreeSet<ElemSet> =
            g.elements().map(|x| normality::coset(h, x).members).collect();
        prop_assert_eq!(q.len(), classes.len());
        let j = q.projection();
        prop_assert!(j.is_strong() && j.is_surjective());
        prop_assert_eq!(&j.kernel().unwrap(), h);
    }

    #[test]
    fn mapping_sidecar_round_trips(pairs in prop::collection::vec(("[a-z0-9(),:]{1,6}", "[a-z0-9(),:]{1,6}"), 0..8)) {
        let text = textio::serialize_mapping(&pairs);
        prop_assert_eq!(textio::parse_mapping(&text).unwrap(), pairs);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,200}") {
        let _ = textio::parse(&text);
    }

    #[test]
    fn parser_survives_prefixes(f in 0..9usize, cut: Index) {
        let text = textio::serialize(&fixtures()[f]);
        let chars: Vec<char> = text.chars().collect();
        let prefix: String = chars[..cut.index(chars.len())].iter().collect();
        prop_assert!(textio::parse(&prefix).is_err());
    }
}
