use fvknot::fuzz::{random_diagram, random_start};
use fvknot::statesum::{flat_virtual_jones_with, loop_count_range};
use fvknot::{flat_virtual_jones, parse_diagram, serialize_diagram, Component, Diagram, Poly2, Role, Visit};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn diagram(seed: u64) -> Diagram {
    random_start(&mut ChaCha8Rng::seed_from_u64(seed), 10)
}

/// Switches every classical crossing: over and under trade places and the
/// sign flips.
fn switch_all(d: &Diagram) -> Diagram {
    let table = d
        .crossings()
        .iter()
        .map(|(&id, &k)| {
            let k = match k {
                fvknot::CrossingKind::Classical(s) => fvknot::CrossingKind::Classical(s.flip()),
                f => f,
            };
            (id, k)
        })
        .collect();
    let comps = d
        .components()
        .iter()
        .map(|c| {
            Component::from_visits(
                c.visits()
                    .iter()
                    .map(|v| match v.role {
                        Role::Over => Visit::under(v.crossing),
                        Role::Under => Visit::over(v.crossing),
                        Role::FlatPass => *v,
                    })
                    .collect(),
            )
        })
        .collect();
    Diagram::new(table, comps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn visits_are_twice_the_crossings(seed in any::<u64>()) {
        let d = diagram(seed);
        prop_assert!(d.is_valid());
        prop_assert_eq!(d.visit_count(), 2 * d.crossing_count());
    }

    #[test]
    fn text_roundtrip(seed in any::<u64>()) {
        let d = diagram(seed);
        let back = parse_diagram(&serialize_diagram(&d)).unwrap();
        prop_assert!(back.same_up_to_relabeling(&d));
    }

    #[test]
    fn x_ignores_presentation(seed in any::<u64>()) {
        let d = diagram(seed);
        let x = flat_virtual_jones(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // relabeling
        let shift = rng.gen_range(1..1000);
        prop_assert_eq!(&flat_virtual_jones(&d.rename(|id| 3 * id + shift)), &x);
        // base points
        for c in 0..d.component_count() {
            prop_assert_eq!(&flat_virtual_jones(&d.rotate_component(c, rng.gen_range(0..5))), &x);
        }
        // component order
        let mut order: Vec<usize> = (0..d.component_count()).collect();
        order.reverse();
        prop_assert_eq!(&flat_virtual_jones(&d.permute_components(&order)), &x);
        // flat bits
        let table = d.crossings().iter().map(|(&id, &k)| match k {
            fvknot::CrossingKind::Flat(s) => (id, fvknot::CrossingKind::Flat(s.flip())),
            k => (id, k),
        }).collect();
        prop_assert_eq!(&flat_virtual_jones(&Diagram::new(table, d.components().to_vec())), &x);
    }

    #[test]
    fn switching_all_crossings_mirrors_x(seed in any::<u64>()) {
        let d = diagram(seed);
        prop_assert_eq!(flat_virtual_jones(&switch_all(&d)), flat_virtual_jones(&d).mirror());
    }

    #[test]
    fn extra_unknot_multiplies_by_the_loop(seed in any::<u64>()) {
        let d = diagram(seed);
        let mut comps = d.components().to_vec();
        comps.push(Component::Unknot);
        let e = Diagram::new(d.crossings().clone(), comps);
        prop_assert_eq!(flat_virtual_jones(&e), &flat_virtual_jones(&d) * &Poly2::loop_value());
    }

    #[test]
    fn b_degree_is_bounded_by_loops(seed in any::<u64>()) {
        let d = diagram(seed);
        let x = flat_virtual_jones(&d);
        let (_, most) = loop_count_range(&d);
        prop_assert!(x.b_degree() as usize <= most);
        if d.flat_count() == 0 {
            prop_assert_eq!(x.b_degree(), 0);
        }
    }

    #[test]
    fn forget_is_idempotent(seed in any::<u64>()) {
        let d = diagram(seed);
        let f = d.forget();
        prop_assert!(f.is_valid());
        prop_assert_eq!(f.forget(), f.clone());
        prop_assert_eq!(f.component_count(), d.component_count());
        prop_assert_eq!(f.classical_count(), 0);
        prop_assert_eq!(f.flat_count(), d.crossing_count());
    }
}

#[test]
fn worker_count_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..5 {
        let d = random_diagram(&mut rng, 13, 2, 0.2);
        let x1 = flat_virtual_jones_with(&d, 1).unwrap();
        for w in [2, 3, 8] {
            assert_eq!(flat_virtual_jones_with(&d, w).unwrap().to_string(), x1.to_string());
        }
    }
    assert!(flat_virtual_jones_with(&Diagram::unknot(), 0).is_err());
}
