use nt_core::classify::*;
use nt_core::homology::{hyperelliptic_word, penner_word, CassonBleiler};
use nt_core::tqft::{CurveSpec, Genus, MCWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn w(g: Genus, s: &str) -> MCWord {
    MCWord::parse(g, s).unwrap()
}

fn reduced(g: Genus) -> SearchConfig {
    SearchConfig { levels: (3..=7).collect(), power_bound: 12, depth: 2, ..SearchConfig::new(g) }
}

#[test]
fn genus_two_witnesses() {
    let g = Genus::Two;
    let c = Classifier::new(SearchConfig::new(g)).unwrap();

    let h = c.classify(&hyperelliptic_word());
    assert_eq!(h.kind, VerdictKind::FiniteOrder);
    let order = h.order.unwrap();
    assert_eq!((order.power, order.order_divides, order.homology_order), (1, 2, Some(2)));
    assert_eq!(order.scalars.len(), 8);

    let t = c.classify(&w(g, "T1"));
    assert_eq!(t.kind, VerdictKind::Reducible);
    let curve = t.curve.unwrap();
    assert_eq!((curve.spec.as_str(), curve.power), ("c1", 1));
    assert_eq!(curve.levels, (3..=10).collect::<Vec<_>>());

    let p = c.classify(&penner_word());
    assert_eq!(p.kind, VerdictKind::PseudoAnosovCandidate);
    assert_eq!(p.homology.status, CassonBleiler::CertifiedPa);
    let b = p.bounds.unwrap();
    assert_eq!((b.power_bound, b.depth, b.fingerprint_level), (20, 3, 5));
}

#[test]
fn empty_word_has_order_one() {
    for g in [Genus::One, Genus::Two] {
        let v = classify(&MCWord::empty(g), reduced(g)).unwrap();
        assert_eq!(v.kind, VerdictKind::FiniteOrder);
        assert_eq!(v.power, Some(1));
        assert_eq!(v.order.unwrap().homology_order, Some(1));
    }
}

#[test]
fn conjugated_twist_certificate() {
    let g = Genus::Two;
    let c = Classifier::new(reduced(g)).unwrap();
    let v = c.classify(&w(g, "T2 T1 T2^-1"));
    assert_eq!(v.kind, VerdictKind::Reducible);
    let cert = v.curve.unwrap();
    assert_eq!((cert.base.as_str(), cert.conjugator.as_str(), cert.power), ("c1", "T2", 1));
    // re-check the certificate independently
    let spec = CurveSpec::parse(g, &cert.spec).unwrap();
    for &r in c.levels() {
        assert!(c.exact_rep(r).unwrap().commutes_exactly(&w(g, "T2 T1 T2^-1"), &spec));
    }
}

#[test]
fn genus_one_defaults() {
    let g = Genus::One;
    let c = Classifier::new(SearchConfig::new(g)).unwrap();
    assert_eq!(c.levels().len(), 38);

    let v = c.classify(&w(g, "Ta Tb^-1"));
    assert_eq!(v.kind, VerdictKind::PseudoAnosovCandidate);
    assert_eq!(v.homology.trace, "3");
    assert_eq!(v.homology.status, CassonBleiler::CertifiedPa);

    let v = c.classify(&w(g, "Ta Tb"));
    assert_eq!(v.kind, VerdictKind::FiniteOrder);
    let o = v.order.unwrap();
    assert_eq!((o.power, o.homology_order), (3, Some(6)));

    let v = c.classify(&w(g, "Tb Tb Tb"));
    assert_eq!(v.kind, VerdictKind::Reducible);
    assert_eq!(v.curve.unwrap().spec, "b");
}

#[test]
fn reducible_needs_a_power() {
    // swaps c1 and c5 up to twists, so its square fixes c1
    let g = Genus::Two;
    let v = classify(&w(g, "T1 T2 T3 T4 T5 T5 T4 T3 T2 T1 T3"), reduced(g)).unwrap();
    assert_eq!(v.kind, VerdictKind::Reducible);
}

#[test]
fn conjugation_invariance() {
    let g = Genus::Two;
    let c = Classifier::new(reduced(g)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let u = MCWord::random(g, rng.gen_range(1..=6), &mut rng);
        let conj = MCWord::random(g, rng.gen_range(1..=6), &mut rng);
        let a = c.classify(&u);
        let b = c.classify(&u.conjugate_by(&conj));
        assert_eq!(a.kind, b.kind, "{u} under {conj}");
        if let (Some(x), Some(y)) = (a.curve, b.curve) {
            assert_eq!(x.power, y.power);
            let moved = x.curve.transform(&conj);
            for &r in c.levels() {
                let rep = c.exact_rep(r).unwrap();
                assert!(rep.commutes_exactly(&u.conjugate_by(&conj).pow(y.power), &moved));
            }
        }
    }
}

#[test]
fn invalid_configs() {
    let g = Genus::Two;
    assert_eq!(Classifier::new(SearchConfig { levels: vec![], ..SearchConfig::new(g) }).err(), Some(ConfigError::NoLevels));
    assert_eq!(
        Classifier::new(SearchConfig { levels: vec![2, 5], ..SearchConfig::new(g) }).err(),
        Some(ConfigError::LevelTooSmall(2))
    );
    assert_eq!(
        Classifier::new(SearchConfig { power_bound: 0, ..SearchConfig::new(g) }).err(),
        Some(ConfigError::ZeroPowerBound)
    );
}
