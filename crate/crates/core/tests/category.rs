use landin::category::{
    check_derived_hom, check_simulation, check_vector_simulation, functor_f, functor_f_prime,
    functor_g, DerivedHom, Derivor, Simulation, VectorSimulation,
};
use landin::correspondence::{alpha_g, f_of_language, f_of_vector_language};
use landin::random::{
    copy_simulation, image_simulation, letters, random_parts, random_simulation, saturated_vfs,
    seeded,
};
use landin::{Alphabet, PrefixLanguage};
use proptest::prelude::*;
use rand::seq::IteratorRandom;
use rand::Rng;

/// Three composable simulations over a six-letter alphabet.
fn chain(seed: u64) -> (Alphabet, Simulation, Simulation) {
    let mut rng = seeded(seed);
    let (_, f) = random_simulation(&mut rng, 4);
    let sigma = letters(6);
    let size = rng.gen_range(1..=3);
    let alpha: Alphabet = sigma
        .iter()
        .cloned()
        .choose_multiple(&mut rng, size)
        .into_iter()
        .collect();
    let g = image_simulation(&mut rng, f.target(), &alpha, 1, 2);
    (sigma, f, g)
}

fn agree_on(x: &DerivedHom, y: &DerivedHom, alpha: &Alphabet) -> bool {
    x.phi == y.phi && x.derivor.agrees_on(&y.derivor, alpha)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulations_compose(seed in any::<u64>()) {
        let (_, f, g) = chain(seed);
        let gf = f.then(&g).unwrap();
        prop_assert!(check_simulation(&gf).unwrap());
        if check_simulation(&f.clone().strong(true)).unwrap() && check_simulation(&g.clone().strong(true)).unwrap() {
            prop_assert!(check_simulation(&gf.strong(true)).unwrap());
        }
        let id = Simulation::identity(f.source());
        prop_assert_eq!(id.then(&f).unwrap().map().clone(), f.map().clone());
        prop_assert_eq!(f.then(&Simulation::identity(f.target())).unwrap().map().clone(), f.map().clone());
    }

    #[test]
    fn derived_homs_compose(seed in any::<u64>()) {
        let (sigma, f, g) = chain(seed);
        let a = f_of_language(f.source(), &sigma).unwrap();
        let b = f_of_language(f.target(), &sigma).unwrap();
        let c = f_of_language(g.target(), &sigma).unwrap();
        let (h1, h2) = (functor_f(&f, &sigma).unwrap(), functor_f(&g, &sigma).unwrap());
        let composite = h1.then(&h2).unwrap();
        prop_assert!(check_derived_hom(&composite, &a, &c).unwrap());

        let id_c = DerivedHom::identity(&c).unwrap();
        let left = h1.then(&h2).unwrap().then(&id_c).unwrap();
        let right = h1.then(&h2.then(&id_c).unwrap()).unwrap();
        prop_assert_eq!(left, right);

        // Functoriality of 𝔽.
        let direct = functor_f(&f.then(&g).unwrap(), &sigma).unwrap();
        prop_assert!(agree_on(&direct, &composite, f.source().alphabet()));
        let id = functor_f(&Simulation::identity(f.source()), &sigma).unwrap();
        prop_assert_eq!(id, DerivedHom::identity(&a).unwrap());

        // Functoriality of 𝔾.
        let k = f.source().depth();
        let g1 = functor_g(&h1, &a, &b, k).unwrap();
        let g2 = functor_g(&h2, &b, &c, g1.target().depth()).unwrap();
        let gc = functor_g(&composite, &a, &c, k).unwrap();
        prop_assert_eq!(gc.map().clone(), g1.then(&g2).unwrap().map().clone());
        let gid = functor_g(&DerivedHom::identity(&a).unwrap(), &a, &a, k).unwrap();
        prop_assert_eq!(gid.map().clone(), Simulation::identity(gid.source()).map().clone());
    }

    #[test]
    fn canonical_identities_are_neutral(seed in any::<u64>()) {
        let (sigma, f, _) = chain(seed);
        let a = f_of_language(f.source(), &sigma).unwrap();
        let b = f_of_language(f.target(), &sigma).unwrap();
        let d = functor_f(&f, &sigma).unwrap().derivor;
        d.check_canonical(&a, &b).unwrap();
        let (id_a, id_b) = (Derivor::canonical_identity(&a).unwrap(), Derivor::canonical_identity(&b).unwrap());
        prop_assert_eq!(&Derivor::compose(&d, &id_a).unwrap(), &d);
        prop_assert_eq!(&Derivor::compose(&id_b, &d).unwrap(), &d);
        prop_assert_eq!(alpha_g(&a).unwrap(), f.source().alphabet().clone());
    }

    #[test]
    fn strong_simulations_give_strong_derived_homs(seed in any::<u64>()) {
        let (sigma, f, _) = chain(seed);
        let strong = f.clone().strong(true);
        if check_simulation(&strong).unwrap() {
            let h = functor_f(&strong, &sigma).unwrap();
            prop_assert!(h.strong);
            let a = f_of_language(f.source(), &sigma).unwrap();
            let b = f_of_language(f.target(), &sigma).unwrap();
            prop_assert!(check_derived_hom(&h, &a, &b).unwrap());
        }
    }

    #[test]
    fn f_prime_is_functorial(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let parts = random_parts(&mut rng, &letters(3));
        let (mid, m1) = copy_simulation(&mut rng, &parts);
        let (last, m2) = copy_simulation(&mut rng, &mid);
        let (l0, l1, l2) = (saturated_vfs(&parts), saturated_vfs(&mid), saturated_vfs(&last));
        let f = VectorSimulation::new(l0.clone(), l1.clone(), m1).unwrap();
        let g = VectorSimulation::new(l1.clone(), l2.clone(), m2).unwrap();
        prop_assert!(check_vector_simulation(&f).unwrap());
        let gf = f.then(&g).unwrap();
        prop_assert!(check_vector_simulation(&gf).unwrap());

        let sigma: Alphabet = [&parts, &mid, &last]
            .iter()
            .flat_map(|ps| ps.iter().flat_map(PrefixLanguage::alphabet))
            .cloned()
            .collect();
        let a = f_of_vector_language(&l0, &sigma).unwrap();
        let composite = functor_f_prime(&f, &sigma).unwrap().then(&functor_f_prime(&g, &sigma).unwrap()).unwrap();
        let direct = functor_f_prime(&gf, &sigma).unwrap();
        prop_assert!(agree_on(&direct, &composite, &l0.alphabets().union()));

        let id = VectorSimulation::identity(&l0);
        prop_assert!(check_vector_simulation(&id).unwrap());
        prop_assert_eq!(id.then(&f).unwrap().word_map(), f.word_map());
        prop_assert_eq!(functor_f_prime(&id, &sigma).unwrap(), DerivedHom::identity(&a).unwrap());
    }
}
