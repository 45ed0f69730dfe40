use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twogroup_core::cohomology::{cohomologous, CohomologyOptions};
use twogroup_core::corpus::{random_cochain, Corpus};
use twogroup_core::cyclotomic::CyclotomicRational;
use twogroup_core::group_algebra::{fourier, inverse_fourier, GroupAlgebraElement};
use twogroup_core::AbelianGroup;

/// `Σ cₖ ζ_N^k` with small integer coefficients.
fn element(conductor: u64, coeffs: &[i64]) -> CyclotomicRational {
    coeffs.iter().enumerate().fold(CyclotomicRational::zero(conductor), |acc, (k, &c)| {
        let term = CyclotomicRational::zeta_power(conductor, k as i64).scale(&BigRational::from_integer(c.into()));
        &acc + &term
    })
}

fn arb_element() -> impl Strategy<Value = CyclotomicRational> {
    (1u64..=12, prop::collection::vec(-3i64..=3, 1..6)).prop_map(|(n, c)| element(n, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(x in arb_element(), y in arb_element(), z in arb_element()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&(&x - &y) + &y) == x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn minimal_conductor_is_the_same_number(x in arb_element()) {
        let m = x.minimize();
        prop_assert_eq!(&m, &x);
        prop_assert_eq!(x.conductor() % m.conductor(), 0);
    }

    #[test]
    fn convolution_theorem(seed in any::<u64>(), which in 0usize..8) {
        let groups = AbelianGroup::all_up_to_order(8);
        let a = Arc::new(groups[which % groups.len()].clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            let coeffs = (0..a.order()).map(|_| CyclotomicRational::from_integer(1, rand::Rng::gen_range(&mut rng, -4..=4))).collect();
            GroupAlgebraElement::from_coeffs(a.clone(), coeffs)
        };
        let (x, y) = (draw(), draw());
        let (fx, fy, fxy) = (fourier(&x), fourier(&y), fourier(&x.mul(&y)));
        for i in 0..fx.len() {
            prop_assert_eq!(&fxy[i], &(&fx[i] * &fy[i]));
        }
        let back = inverse_fourier(&a, &fx);
        for i in 0..a.order() {
            prop_assert_eq!(back.coeff(i), x.coeff(i));
        }
    }
}

#[test]
fn coboundary_shifts_are_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut corpus = Corpus::new();
    let opts = CohomologyOptions::default();
    for _ in 0..30 {
        let c = corpus.random_two_group(&mut rng).unwrap();
        let d_beta = random_cochain(c.action(), 2, &mut rng).differential();
        let shifted = c.alpha().add(&d_beta);
        let w = cohomologous(c.alpha(), &shifted, &opts).unwrap().expect("differ by a coboundary");
        assert_eq!(w.differential(), d_beta);
    }
}

/// Integral `dⁿ` for trivial coefficients: rows are `(n+1)`-tuples, columns `n`-tuples.
fn integral_differential(g: &twogroup_core::FiniteGroup, n: usize) -> Vec<Vec<num_bigint::BigInt>> {
    let order = g.order();
    let index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * order + x);
    let rows = order.pow(n as u32 + 1);
    (0..rows)
        .map(|r| {
            let t: Vec<usize> = (0..=n).map(|i| (r / order.pow((n - i) as u32)) % order).collect();
            let mut row = vec![0i64; order.pow(n as u32)];
            row[index(&t[1..])] += 1;
            for i in 1..=n {
                let mut face = t[..i - 1].to_vec();
                face.push(g.mul(t[i - 1], t[i]));
                face.extend_from_slice(&t[i + 1..]);
                row[index(&face)] += if i % 2 == 1 { -1 } else { 1 };
            }
            row[index(&t[..n])] += if (n + 1) % 2 == 1 { -1 } else { 1 };
            row.into_iter().map(num_bigint::BigInt::from).collect()
        })
        .collect()
}

#[test]
fn local_smith_forms_agree_with_the_integral_smith_form() {
    use twogroup_core::cohomology::torus_cohomology;
    use twogroup_core::linalg::smith_normal_form;
    use twogroup_core::FiniteGroup;

    let k4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
    let cases = [
        (FiniteGroup::cyclic(2), 3),
        (FiniteGroup::cyclic(3), 3),
        (FiniteGroup::cyclic(4), 3),
        (k4, 3),
        (FiniteGroup::cyclic(6), 2),
        (FiniteGroup::symmetric(3), 2),
    ];
    let opts = CohomologyOptions::default();
    for (g, max_degree) in cases {
        for n in 1..=max_degree {
            let d = integral_differential(&g, n);
            let snf = smith_normal_form(&d, g.order().pow(n as u32), None).unwrap();
            let torsion: Vec<u64> = snf.torsion().iter().map(|x| u64::try_from(x).unwrap()).collect();
            let local = torus_cohomology(&g, n, &opts).unwrap();
            assert_eq!(local.invariant_factors, torsion, "|G| = {}, n = {n}", g.order());
        }
    }
}
