use legr::dga::{
    augmentation_equations, build_border_dga, build_internal_dga, differential_in_degree, inclusion_failures,
    normalized_potentials, NcPoly,
};
use legr::rulings::vertex_generator_degree;
use proptest::prelude::*;

fn small_potentials(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (0..=2).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn internal_dga_is_a_complex(l in 0usize..=3, r in 0usize..=3, mu in prop::collection::vec(-1i64..=2, 6)) {
        prop_assume!(l + r >= 1);
        let v = build_internal_dga(l, r, &mu[..l + r]);
        prop_assert!(v.dga.d_squared_failures().is_empty());
        prop_assert!(v.dga.degree_failures().is_empty());
        for a in 1..=l + r {
            for i in v.bound + 1..=v.window {
                prop_assert!(v.dga.degree(v.generator(a, i).unwrap()) > 1);
            }
        }
    }

    #[test]
    fn border_dga_is_a_complex(mu in prop::collection::vec(-2i64..=2, 0..6)) {
        let b = build_border_dga(&mu);
        prop_assert!(b.dga.d_squared_failures().is_empty());
        prop_assert!(b.dga.degree_failures().is_empty());
    }

    #[test]
    fn normalization_preserves_degrees(l in 0usize..=3, r in 0usize..=3, mu in prop::collection::vec(-1i64..=2, 6), i in 1usize..10) {
        prop_assume!(l + r >= 1);
        let mu = &mu[..l + r];
        let normal = normalized_potentials(l, mu);
        for a in 1..=(l + r) as i64 {
            prop_assert_eq!(vertex_generator_degree(mu, l, r, a, i), vertex_generator_degree(&normal, 0, l + r, a, i));
        }
    }
}

#[test]
fn inclusion_is_a_chain_map() {
    for n in 1..=4 {
        for mu in small_potentials(n) {
            let border = build_border_dga(&mu);
            let internal = build_internal_dga(0, n, &mu);
            assert!(inclusion_failures(&border, &internal).is_empty(), "μ = {:?}", mu);
        }
    }
}

#[test]
fn border_equations_are_matrix_squares() {
    // μ = [1,1,0,0]: degree-zero k13, k14, k23, k24 and no degree-one
    // generators, so there are no equations.
    let b = build_border_dga(&[1, 1, 0, 0]);
    assert!(differential_in_degree(&b.dga, 1).is_empty());
    // μ = [2,1,0]: k13 has degree 1 and ∂k13 = -k12 k23.
    let b = build_border_dga(&[2, 1, 0]);
    let eqs = augmentation_equations(&b.dga);
    let k13 = b.generator(1, 3).unwrap();
    let expected = NcPoly::term(vec![b.generator(1, 2).unwrap(), b.generator(2, 3).unwrap()], -1);
    assert_eq!(eqs[&k13], expected);
}

#[test]
fn two_valent_equations_have_units() {
    let v = build_internal_dga(0, 2, &[1, 0]);
    let eqs = augmentation_equations(&v.dga);
    let v12 = v.generator(1, 2).unwrap();
    assert_eq!(eqs[&v12].constant(), 1);
    assert_eq!(eqs[&v12].terms().count(), 2);
    assert!(legr::dsl::ToJson::to_json(&v.dga).to_string().contains("v1,2"));
}
