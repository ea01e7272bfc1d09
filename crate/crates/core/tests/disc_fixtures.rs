use burau_core::disc::{crossings, pairing, parse_arcs, remark_check, DiscModel, EndpointTag, Point, PolylineArc};
use burau_core::fixtures;
use burau_core::LaurentPoly;

fn rat(s: &str) -> Point {
    Point::parse(s).unwrap()
}

// The 50 monomials displayed for the 5-punctured example, read row by row.
const DISPLAYED: [(i8, i64); 50] = [
    (-1, -3), (-1, 0), (1, 1), (1, -1), (1, -3),
    (-1, -1), (-1, 2), (1, 3), (1, 1), (1, -1), (-1, -2), (-1, 0), (-1, 2), (1, 1), (1, -2),
    (-1, -1), (1, 0), (-1, 1), (1, 2), (-1, 3), (1, 2), (-1, 1), (1, 0), (-1, -1), (1, -2),
    (-1, 1), (-1, 4), (1, 5), (1, 3), (1, 1), (-1, 0), (-1, 2), (-1, 4), (1, 3), (1, 0),
    (-1, 1), (1, 2), (-1, 3), (1, 4), (-1, 5), (1, 4), (-1, 3), (1, 2), (-1, 1), (1, 0),
    (-1, 2), (1, 1), (-1, 0), (1, -1), (-1, -2),
];

#[test]
fn d5_fixture_loads_with_expected_tags() {
    let set = parse_arcs(fixtures::D5).unwrap();
    assert_eq!(set.model, DiscModel::new(5));
    let a = set.get("alpha").unwrap();
    let b = set.get("beta").unwrap();
    assert_eq!((a.start, a.end), (EndpointTag::Puncture(4), EndpointTag::Puncture(2)));
    assert_eq!((b.start, b.end), (EndpointTag::Basepoint, EndpointTag::Puncture(3)));
}

#[test]
fn d5_crossings_match_displayed_list() {
    let set = parse_arcs(fixtures::D5).unwrap();
    let (a, b) = (set.get("alpha").unwrap(), set.get("beta").unwrap());
    let list = crossings(&set.model, a, b).unwrap();
    assert_eq!(list.len(), 50);
    let first = &list.crossings[0];
    assert_eq!((first.sign, first.exponent), (1, 0));
    let mut expected = DISPLAYED.to_vec();
    expected.sort_unstable();
    assert_eq!(list.signed_exponents(), expected);
    let p = pairing(&set.model, a, b).unwrap();
    assert!(p.value.is_zero());
    let mut displayed_sum = LaurentPoly::zero();
    for (s, k) in DISPLAYED {
        displayed_sum += &LaurentPoly::monomial(k, s as i64);
    }
    assert!(displayed_sum.is_zero());
}

#[test]
fn d5_remark_rule_holds() {
    let set = parse_arcs(fixtures::D5).unwrap();
    let (a, b) = (set.get("alpha").unwrap(), set.get("beta").unwrap());
    let list = crossings(&set.model, a, b).unwrap();
    let report = remark_check(&set.model, a, b, &list);
    assert_eq!(report.checked, 49);
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn d6_pairing_vanishes() {
    let set = parse_arcs(fixtures::D6).unwrap();
    let (a, b) = (set.get("alpha").unwrap(), set.get("beta").unwrap());
    assert_eq!((a.start, a.end), (EndpointTag::Puncture(1), EndpointTag::Puncture(6)));
    let list = crossings(&set.model, a, b).unwrap();
    assert_eq!(list.signed_exponents(), vec![(-1, 0), (-1, 2), (1, 0), (1, 2)]);
    assert!(pairing(&set.model, a, b).unwrap().value.is_zero());
    assert!(remark_check(&set.model, a, b, &list).passed());
}

#[test]
fn calibration_fixture_remark_rule() {
    let set = parse_arcs(fixtures::CALIBRATION).unwrap();
    assert_eq!(set.arcs.len(), 8);
    for arc in &set.arcs {
        for j in 1..=4 {
            let tag = EndpointTag::Puncture(j);
            if arc.start == tag || arc.end == tag {
                continue;
            }
            let noodle = PolylineArc::straight("noodle", EndpointTag::Basepoint, tag);
            let list = crossings(&set.model, arc, &noodle).unwrap();
            assert!(remark_check(&set.model, arc, &noodle, &list).passed(), "{} vs N{j}", arc.name);
        }
    }
}

#[test]
fn digon_cancellation() {
    let set = parse_arcs(fixtures::CALIBRATION).unwrap();
    let m = set.model;
    let arc = set.get("S2").unwrap().clone();
    let noodle = PolylineArc::straight("N4", EndpointTag::Basepoint, EndpointTag::Puncture(4));
    let before = crossings(&m, &arc, &noodle).unwrap();
    for depth in 0..20 {
        let mut wiggled = arc.clone();
        let y = format!("-{}/10", 20 + depth);
        wiggled.vertices.push(rat(&format!("13/5 {y}")));
        wiggled.vertices.push(rat("27/10 -1/2"));
        wiggled.validate(&m).unwrap();
        let after = crossings(&m, &wiggled, &noodle).unwrap();
        assert_eq!(after.len(), before.len() + 2);
        let mut extra = after.signed_exponents();
        for c in before.signed_exponents() {
            let pos = extra.iter().position(|x| *x == c).unwrap();
            extra.remove(pos);
        }
        assert_eq!(extra.len(), 2);
        assert_eq!(extra[0].1, extra[1].1);
        assert_eq!(extra[0].0, -extra[1].0);
        assert_eq!(
            pairing(&m, &wiggled, &noodle).unwrap().value,
            pairing(&m, &arc, &noodle).unwrap().value
        );
    }
}

fn all_pairs() -> Vec<(DiscModel, PolylineArc, PolylineArc)> {
    let mut out = Vec::new();
    for text in [fixtures::D5, fixtures::D6] {
        let set = parse_arcs(text).unwrap();
        out.push((set.model, set.get("alpha").unwrap().clone(), set.get("beta").unwrap().clone()));
    }
    let set = parse_arcs(fixtures::CALIBRATION).unwrap();
    for arc in &set.arcs {
        for j in 1..=4 {
            let tag = EndpointTag::Puncture(j);
            if arc.start != tag && arc.end != tag {
                out.push((set.model, arc.clone(), PolylineArc::straight("N", EndpointTag::Basepoint, tag)));
            }
        }
    }
    out
}

#[test]
fn reversing_beta_negates_signs() {
    for (m, a, b) in all_pairs() {
        let fwd = crossings(&m, &a, &b).unwrap();
        let rev = crossings(&m, &a, &b.reversed()).unwrap();
        assert_eq!(fwd.len(), rev.len());
        let p = fwd.sum();
        let q = rev.sum();
        assert!(q.unit_equivalent(&-p.clone()), "{} vs {}: {p} / {q}", a.name, b.name);
        if let (Some(f), Some(l)) = (fwd.crossings.last(), rev.crossings.first()) {
            assert_eq!(f.point, l.point);
        }
    }
}

#[test]
fn swapping_arcs_inverts_t() {
    for (m, a, b) in all_pairs() {
        let ab = pairing(&m, &a, &b).unwrap().value;
        let ba = pairing(&m, &b, &a).unwrap().value;
        assert!(ba.unit_equivalent(&ab.invert_t()), "{} vs {}: {ab} / {ba}", a.name, b.name);
    }
}
