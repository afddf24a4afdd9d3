use num_traits::One;

use level0::fourier::{self, involution_check, stable_packet, FourierConfig, Relation, Sharp, SigmaEps, UComponent};
use level0::params::{enumerate_parameters, enumerate_sign_characters, epsilon_center};
use level0::stability::{classify_both, StabilityClass};
use level0::tame::enumerate_tame_characters;
use level0::{Mode, Orbit, Rational, Sign};

fn rank_two_trivial() -> Vec<(level0::DiscreteParameter, Vec<level0::SignCharacter>)> {
    let chis = enumerate_tame_characters(3, 2, 1).unwrap();
    assert_eq!(chis.len(), 1);
    enumerate_parameters(&chis[0], Mode::Discrete)
        .into_iter()
        .map(|p| {
            let e = enumerate_sign_characters(&p);
            (p, e)
        })
        .collect()
}

#[test]
fn rank_two_enumeration() {
    let all = rank_two_trivial();
    assert_eq!(all.len(), 2);
    assert_eq!(all.iter().map(|(_, e)| e.len()).sum::<usize>(), 4);
}

#[test]
fn rank_two_tame_characters_for_order_two() {
    assert_eq!(enumerate_tame_characters(3, 2, 2).unwrap().len(), 3);
}

#[test]
fn rank_two_classification_through_springer_data() {
    let mut stable_side = 0;
    let mut instable = 0;
    for (psi, eps) in rank_two_trivial() {
        for e in eps {
            match classify_both(&psi, &e).unwrap().pair {
                StabilityClass::Instable => instable += 1,
                _ => stable_side += 1,
            }
        }
    }
    assert_eq!((stable_side, instable), (2, 2));
}

#[test]
fn rank_two_packets() {
    for (psi, eps) in rank_two_trivial() {
        let iso = stable_packet(&psi, Sharp::Iso, false).unwrap();
        let an = stable_packet(&psi, Sharp::An, true).unwrap();
        assert_eq!((iso.len(), an.len()), (1, 1));
        assert_eq!(an[0].1, -Rational::one());
        for e in &eps {
            let z = epsilon_center(&psi, e).unwrap();
            let side = if z == Sign::Plus { &iso } else { &an };
            assert!(side.iter().any(|(x, _)| x == e));
        }
    }
}

#[test]
fn odd_block_relation_depends_on_the_sigma_knob() {
    let u = UComponent::generic(Orbit::empty(), Orbit::new(vec![3]));
    let odd = involution_check(&u, &FourierConfig::default()).unwrap();
    assert_eq!(odd.relation, Relation::ScaledIdentity);
    let trivial = FourierConfig { sigma_eps: SigmaEps::Trivial, ..FourierConfig::default() };
    assert_eq!(involution_check(&u, &trivial).unwrap().relation, Relation::Other);
    let even = UComponent::generic(Orbit::new(vec![4, 2]), Orbit::empty());
    let r = involution_check(&even, &FourierConfig::default()).unwrap();
    assert_eq!((r.relation, r.scale), (Relation::ScaledIdentity, Some(Rational::from_integer(4.into()))));
    assert!(fourier::fourier_component(&u, &[Sign::Plus], &trivial).is_ok());
}
