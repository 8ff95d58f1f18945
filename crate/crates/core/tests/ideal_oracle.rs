//! The table-driven ideal algebra against membership enumeration.

use bq_core::catalog::{self, CatalogMonoid};
use bq_core::ideals::{self, ConstructibleIdeal};
use bq_core::Word;

fn monoids() -> Vec<CatalogMonoid> {
    vec![catalog::monoid_r(), catalog::monoid_s4(), catalog::monoid_s5(), catalog::free_monoid(2).unwrap()]
}

fn members(m: &CatalogMonoid, a: &ConstructibleIdeal, words: &[Word]) -> Vec<bool> {
    words.iter().map(|w| ideals::contains(m.presentation(), a, w)).collect()
}

#[test]
fn intersections_match_membership() {
    for m in monoids() {
        let p = m.presentation();
        let pool = m.ideal_closure(2, (-1, 1), 2);
        let words = m.words_up_to(4, (-2, 2));
        let sets: Vec<Vec<bool>> = pool.iter().map(|a| members(&m, a, &words)).collect();
        for (i, a) in pool.iter().enumerate().step_by(3) {
            for (j, b) in pool.iter().enumerate().step_by(5) {
                let meet = ideals::intersect(p, a, b);
                let got = members(&m, &meet, &words);
                for k in 0..words.len() {
                    assert_eq!(got[k], sets[i][k] && sets[j][k], "{}: {a} ∩ {b} = {meet} at {}", m.name(), words[k]);
                }
            }
        }
    }
}

#[test]
fn pullbacks_match_membership() {
    for m in monoids() {
        let p = m.presentation();
        let pool = m.ideal_closure(2, (-1, 1), 3);
        let words = m.words_up_to(3, (-2, 2));
        for a in pool.iter().step_by(2) {
            for l in m.window_letters((-2, 2)) {
                let back = ideals::pullback_letter(p, l, a);
                for w in &words {
                    let lw = p.mul(&Word::letter(l), w);
                    assert_eq!(
                        ideals::contains(p, &back, w),
                        ideals::contains(p, a, &lw),
                        "{}: {l}⁻¹({a}) = {back} at {w}",
                        m.name()
                    );
                }
            }
        }
    }
}

#[test]
fn distinct_canonical_forms_are_distinct_sets() {
    for m in monoids() {
        let pool = m.ideal_closure(2, (-1, 1), 2);
        let words = m.words_up_to(4, (-3, 3));
        let mut by_set = std::collections::HashMap::new();
        for a in &pool {
            if let Some(prev) = by_set.insert(members(&m, a, &words), a.clone()) {
                panic!("{}: {prev} and {a} have the same members", m.name());
            }
        }
    }
}

#[test]
fn translation_matches_membership() {
    for m in monoids() {
        let p = m.presentation();
        let pool = m.ideal_closure(1, (-1, 1), 2);
        let words = m.words_up_to(4, (-2, 2));
        for a in &pool {
            for l in m.window_letters((-1, 1)) {
                let t = ideals::translate(p, &Word::letter(l), a);
                for w in &words {
                    let expected = p.divide_letter(l, w).is_some_and(|q| ideals::contains(p, a, &q));
                    assert_eq!(ideals::contains(p, &t, w), expected, "{}: {l}·({a}) at {w}", m.name());
                }
            }
        }
    }
}
