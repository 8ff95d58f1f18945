mod common;

use std::sync::OnceLock;

use bq_core::boundary::{self, Character};
use bq_core::catalog::{self, CatalogMonoid};
use bq_core::groupoid::{self, GroupoidElement};
use bq_core::hull;
use bq_core::ideals::{self, ConstructibleIdeal};
use bq_core::monoid::Monoid;
use bq_core::regularity::{self, Instance, RegularityKind, WitnessResult};
use bq_core::verify;
use bq_core::{Config, Hull, InfiniteWord, Letter, Word};
use proptest::prelude::*;

fn r() -> &'static CatalogMonoid {
    static R: OnceLock<CatalogMonoid> = OnceLock::new();
    R.get_or_init(catalog::monoid_r)
}

fn pool() -> &'static [ConstructibleIdeal] {
    static POOL: OnceLock<Vec<ConstructibleIdeal>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v = verify::canonical_ideals(r(), 2, (-1, 1));
        v.push(ConstructibleIdeal::Empty);
        v
    })
}

fn instances() -> &'static [Instance] {
    static POOL: OnceLock<Vec<Instance>> = OnceLock::new();
    POOL.get_or_init(|| {
        let cfg = Config::default();
        let mut v = regularity::pair_pool(r(), &cfg);
        v.extend(regularity::standard_pool(r(), &cfg));
        v
    })
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::A),
        Just(Letter::B),
        Just(Letter::C),
        Just(Letter::D),
        Just(Letter::F),
        (-3i64..=3).prop_map(Letter::X),
        (-3i64..=3).prop_map(Letter::Y),
    ]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(Word)
}

fn ideal() -> impl Strategy<Value = ConstructibleIdeal> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn hull_elem() -> impl Strategy<Value = Hull> {
    prop::collection::vec((letter(), any::<bool>()), 0..=3).prop_map(|moves| {
        Hull::from_moves(
            moves
                .into_iter()
                .map(|(l, mul)| if mul { hull::Move::Mul(Word::letter(l)) } else { hull::Move::Div(Word::letter(l)) })
                .collect(),
        )
    })
}

/// A reduced eventually periodic word, retried until reduced.
fn infinite_word() -> impl Strategy<Value = InfiniteWord> {
    (word(3), word(3).prop_filter("nonempty period", |w| !w.is_empty()))
        .prop_filter_map("reduced", |(pre, per)| InfiniteWord::new(pre, per).ok())
}

fn character() -> impl Strategy<Value = Character> {
    prop_oneof![
        word(4).prop_map(|w| Character::Principal(r().normalize(&w))),
        ideal().prop_filter("nonempty", |a| !a.is_empty()).prop_map(Character::Ideal),
        infinite_word().prop_map(Character::Word),
    ]
    .prop_filter_map("valid character", |c| Character::checked(r(), c).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_agrees_with_reference(u in word(12)) {
        let p = r().presentation();
        let nf = p.normal_form(&u);
        prop_assert_eq!(nf.letters().to_vec(), common::nf(u.letters()));
        prop_assert_eq!(p.normal_form(&nf), nf.clone());
        prop_assert!(p.min_count(&u, Letter::A) <= u.letters().iter().filter(|l| **l == Letter::A).count());
    }

    #[test]
    fn multiplication_is_associative(u in word(5), v in word(5), w in word(5)) {
        let p = r().presentation();
        prop_assert_eq!(p.mul(&p.mul(&u, &v), &w), p.mul(&u, &p.mul(&v, &w)));
    }

    #[test]
    fn left_division_inverts_multiplication(u in word(4), v in word(6)) {
        let p = r().presentation();
        let uv = p.mul(&u, &v);
        prop_assert_eq!(p.left_divide(&u, &uv), Some(p.normal_form(&v)));
        prop_assert_eq!(p.left_divide(&u, &uv), common::divide(&u, &uv));
    }

    #[test]
    fn intersection_is_a_semilattice(a in ideal(), b in ideal(), c in ideal()) {
        let m = r();
        prop_assert_eq!(m.intersect(&a, &b), m.intersect(&b, &a));
        prop_assert_eq!(m.intersect(&m.intersect(&a, &b), &c), m.intersect(&a, &m.intersect(&b, &c)));
        prop_assert_eq!(m.intersect(&a, &a), m.canonical(&a));
        prop_assert_eq!(m.intersect(&a, &m.full_ideal()), m.canonical(&a));
        prop_assert!(m.is_empty(&m.intersect(&a, &m.empty_ideal())));
    }

    #[test]
    fn intersection_and_pullback_respect_membership(a in ideal(), b in ideal(), x in word(2), u in word(5)) {
        let m = r();
        let u = m.normalize(&u);
        let meet = m.intersect(&a, &b);
        prop_assert_eq!(m.contains(&meet, &u), m.contains(&a, &u) && m.contains(&b, &u));
        let back = m.pullback(&x, &a);
        prop_assert_eq!(m.contains(&back, &u), m.contains(&a, &m.mul(&x, &u)));
        let oa = common::Ideal::parse(&a.to_string());
        prop_assert_eq!(m.contains(&a, &u), oa.contains(&u));
    }

    #[test]
    fn subset_matches_intersection(a in ideal(), b in ideal()) {
        let m = r();
        prop_assert_eq!(m.subset(&a, &b), m.intersect(&a, &b) == m.canonical(&a));
    }

    #[test]
    fn hull_elements_are_partial_bijections(h in hull_elem(), u in word(5)) {
        let m = r();
        if let Some(v) = hull::apply(m, &h, &u) {
            prop_assert_eq!(hull::apply(m, &h.invert(), &v), Some(m.normalize(&u)));
            prop_assert!(m.contains(&hull::domain(m, &h), &m.normalize(&u)));
        } else {
            prop_assert!(!m.contains(&hull::domain(m, &h), &m.normalize(&u)));
        }
        prop_assert_eq!(hull::apply(m, &h, &u), common::apply(&h, &u));
    }

    #[test]
    fn characters_are_multiplicative(chi in character(), a in ideal(), b in ideal()) {
        let m = r();
        let meet = m.intersect(&a, &b);
        prop_assert_eq!(boundary::evaluate(m, &chi, &meet), boundary::evaluate(m, &chi, &a) && boundary::evaluate(m, &chi, &b));
        prop_assert!(boundary::evaluate(m, &chi, &m.full_ideal()));
        prop_assert!(!boundary::evaluate(m, &chi, &m.empty_ideal()));
    }

    #[test]
    fn filters_are_upward_closed(chi in character(), a in ideal(), b in ideal()) {
        let m = r();
        if m.subset(&a, &b) && boundary::evaluate(m, &chi, &a) {
            prop_assert!(boundary::evaluate(m, &chi, &b));
        }
    }

    #[test]
    fn word_characters_stabilize(w in infinite_word(), a in ideal()) {
        let m = r();
        let p = m.presentation();
        let depth = boundary::stabilization_depth(&w, &a);
        let settled = ideals::contains(p, &a, &p.normal_form(&w.truncate(depth)));
        for extra in 1..=2 * w.period().len() + 2 {
            prop_assert_eq!(ideals::contains(p, &a, &p.normal_form(&w.truncate(depth + extra))), settled);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn paterson_equality_implies_spielberg(chi in character(), h1 in hull_elem(), h2 in hull_elem()) {
        let m = r();
        let (Ok(g1), Ok(g2)) = (GroupoidElement::new(m, h1, chi.clone()), GroupoidElement::new(m, h2, chi)) else {
            return Ok(());
        };
        let cfg = Config::default();
        if groupoid::equal_paterson(m, &g1, &g2).unwrap().is_equal() {
            prop_assert!(groupoid::equal_spielberg(m, &g1, &g2, &cfg).unwrap().is_equal());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn regularity_hierarchy(i in 0..instances().len()) {
        let m = r();
        let cfg = Config::default();
        let inst = &instances()[i];
        let verdict = |k| regularity::check(m, k, inst, cfg.prefix_bound, &cfg).unwrap();
        let strong = verdict(RegularityKind::Strong);
        let weaker = [RegularityKind::Plain, RegularityKind::StrongBoundary, RegularityKind::Boundary];
        if strong.is_witness() {
            for k in weaker {
                prop_assert!(!verdict(k).is_impossible(), "{} witness but {} impossible on {}", RegularityKind::Strong, k, inst);
            }
        }
        if let WitnessResult::ProvedImpossible(_) = verdict(RegularityKind::Boundary) {
            for k in [RegularityKind::Strong, RegularityKind::Plain, RegularityKind::StrongBoundary] {
                prop_assert!(!verdict(k).is_witness(), "{} impossible but {} witnessed on {}", RegularityKind::Boundary, k, inst);
            }
        }
    }
}
