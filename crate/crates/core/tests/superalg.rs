use jsuper::catalog::Catalog;
use jsuper::exactmath::{Field, Rational};
use jsuper::superalg::{
    envelope_jordan_check, jordan_defect, parse_alg_file, Element, EnvelopeConfig, LoadError,
    Product, SuperAlgebra, Table,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn load(src: &str) -> SuperAlgebra {
    parse_alg_file(src)
        .unwrap()
        .remove(0)
        .instantiate(None)
        .unwrap()
}

fn catalog() -> Catalog {
    Catalog::load_default().unwrap()
}

fn basis(alg: &SuperAlgebra, name: &str) -> Element<Rational> {
    alg.basis_element(name).unwrap()
}

const BAD: &str = "[algebra]\nname = Bad\ntype = 1,1\neven = e\nodd = f\nproduct: e*e = 1 e\nproduct: e*f = 2 f\n";

#[test]
fn j1_products() {
    let j1 = catalog().lookup("J1", None).unwrap();
    let (f1, f2, e) = (basis(&j1, "f1"), basis(&j1, "f2"), basis(&j1, "e"));
    assert_eq!(j1.multiply(&f1, &f2), e);
    let minus_e = Element::from_coords(1, e.coords().into_iter().map(|c| -c).collect());
    assert_eq!(j1.multiply(&f2, &f1), minus_e);
    assert!(j1.multiply(&Element::zero(1, 3), &f2).is_zero());
    assert_eq!(*j1.delta(0, 1, 0), q(1));
    assert_eq!(*j1.delta(1, 0, 0), q(-1));
}

#[test]
fn loader_errors() {
    let e = SuperAlgebra::<Rational>::load(
        None,
        names(&["e"]),
        names(&["f1"]),
        &[Product {
            left: "e".into(),
            right: "f1".into(),
            rhs: vec![("e".into(), q(1))],
        }],
        None,
    );
    assert!(matches!(e, Err(LoadError::GradingViolation(_))));
    let z =
        SuperAlgebra::<Rational>::load(None, names(&["e1", "e2"]), names(&["f1", "f2"]), &[], None)
            .unwrap();
    assert!(z.flatten().is_zero());
    assert_eq!(z, SuperAlgebra::zero(2, 2));
}

#[test]
fn bad_eigenvalue_fails_both_checks() {
    let bad = load(BAD);
    let (e, f) = (basis(&bad, "e"), basis(&bad, "f"));
    assert!(!jordan_defect(&bad, &e, &e, &e, &f).unwrap().is_zero());
    assert!(!bad.check_super_jordan().passed());
    assert!(!envelope_jordan_check(&bad.flatten(), EnvelopeConfig::default()).passed());
}

#[test]
fn j15_defect_vanishes_on_half_eigenvalue() {
    let j15 = catalog().lookup("J15", None).unwrap();
    let (e, f1) = (basis(&j15, "e"), basis(&j15, "f1"));
    assert!(jordan_defect(&j15, &e, &e, &e, &f1).unwrap().is_zero());
}

#[test]
fn subspace_products_and_filtrations() {
    let cat = catalog();
    let j1 = cat.lookup("J1", None).unwrap();
    assert_eq!(j1.power_filtration(3).dims, vec![(1, 3), (1, 0), (0, 0)]);
    let j18 = cat.lookup("J18", None).unwrap();
    assert_eq!(j18.power_filtration(3).dims, vec![(1, 3), (1, 3), (1, 3)]);
    let j5 = cat.lookup("J5", None).unwrap();
    assert_eq!(j5.power_filtration(2).dims[1], (1, 1));
    assert_eq!(j5.flatten().nonzero_count(), 4);
    assert_eq!(
        SuperAlgebra::<Rational>::zero(2, 2)
            .power_filtration(3)
            .dims,
        vec![(2, 2), (0, 0), (0, 0)]
    );
}

#[test]
fn catalog_tables_are_supercommutative_and_graded() {
    let cat = catalog();
    for e in cat.entries() {
        let p = e.is_family().then(|| q(3));
        let t = e.instantiate(p.as_ref()).unwrap().flatten();
        assert!(t.is_supercommutative(), "{}", e.name());
        assert!(t.respects_grading(), "{}", e.name());
    }
}

#[test]
fn filtrations_are_monotone_and_stabilize() {
    let cat = catalog();
    for e in cat.entries().iter().filter(|e| !e.is_family()) {
        let a = e.instantiate(None).unwrap();
        let d = a.power_filtration(a.dim() + 2).dims;
        for w in d.windows(2) {
            assert!(w[1].0 <= w[0].0 && w[1].1 <= w[0].1, "{}: {d:?}", e.name());
        }
        assert_eq!(d[a.dim()], d[a.dim() + 1], "{}", e.name());
    }
}

#[test]
fn flatten_is_injective_on_the_catalog() {
    let cat = catalog();
    let tables: Vec<(String, Table<Rational>)> = cat
        .entries()
        .iter()
        .filter(|e| !e.is_family())
        .map(|e| (e.name().to_string(), e.instantiate(None).unwrap().flatten()))
        .collect();
    for (i, (a, ta)) in tables.iter().enumerate() {
        for (b, tb) in &tables[i + 1..] {
            assert!(
                ta.dim() != tb.dim() || ta != tb,
                "{a} and {b} flatten to the same table"
            );
        }
    }
}

/// Adds `delta` to one structure constant and to its supercommutative mirror.
fn perturb(alg: &SuperAlgebra, rng: &mut ChaCha8Rng) -> Table<Rational> {
    let mut t = alg.flatten();
    let d = t.dim();
    let par = t.parity().to_vec();
    loop {
        let (i, j, k) = (
            rng.random_range(0..d),
            rng.random_range(0..d),
            rng.random_range(0..d),
        );
        if par[k] != (par[i] ^ par[j]) || (i == j && par[i] == 1) {
            continue;
        }
        let delta = q(rng.random_range(1..=2));
        let v = t.get(i, j, k).clone() + delta.clone();
        t.set(i, j, k, v);
        if i != j {
            let sign = if par[i] == 1 && par[j] == 1 { -1 } else { 1 };
            let w = t.get(j, i, k).clone() + delta * q(sign);
            t.set(j, i, k, w);
        }
        return t;
    }
}

#[test]
fn envelope_agrees_with_identity_on_catalog_and_perturbations() {
    let cat = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut broken = 0;
    for e in cat.entries() {
        let p = e.is_family().then(|| q(2));
        let a = e.instantiate(p.as_ref()).unwrap();
        let t = a.flatten();
        assert!(jsuper::superalg::check_super_jordan(&t).passed());
        assert!(
            envelope_jordan_check(&t, EnvelopeConfig::default()).passed(),
            "{}",
            e.name()
        );
        if e.name().ends_with('5') {
            for _ in 0..2 {
                let pt = perturb(&a, &mut rng);
                let direct = jsuper::superalg::check_super_jordan(&pt).passed();
                let env = envelope_jordan_check(&pt, EnvelopeConfig::default()).passed();
                assert_eq!(direct, env, "perturbation of {}", e.name());
                broken += usize::from(!direct);
            }
        }
    }
    assert!(broken > 0);
}

fn homogeneous(m: usize, n: usize, odd: bool, coords: &[i64]) -> Element<Rational> {
    let mut e = Element::zero(m, n);
    if odd {
        for (x, c) in e.odd.iter_mut().zip(coords) {
            *x = q(*c);
        }
    } else {
        for (x, c) in e.even.iter_mut().zip(coords) {
            *x = q(*c);
        }
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jordan_defect_is_multilinear(
        which in 0usize..4,
        parities in prop::collection::vec(any::<bool>(), 4),
        coords in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4),
        lambda in -5i64..=5,
        slot in 0usize..4,
    ) {
        let bad = load(BAD);
        let cat = catalog();
        let alg = match which {
            0 => cat.lookup("J5", None).unwrap(),
            1 => cat.lookup("Jc42", None).unwrap(),
            2 => cat.lookup("Jf1", None).unwrap(),
            _ => bad,
        };
        let (m, n) = (alg.m(), alg.n());
        let mut args: Vec<Element<Rational>> =
            (0..4).map(|i| homogeneous(m, n, parities[i], &coords[i])).collect();
        let base = jordan_defect(&alg, &args[0], &args[1], &args[2], &args[3]).unwrap();
        let scaled = |e: &Element<Rational>| Element::from_coords(m, e.coords().into_iter().map(|c| c * q(lambda)).collect());
        args[slot] = scaled(&args[slot]);
        let after = jordan_defect(&alg, &args[0], &args[1], &args[2], &args[3]).unwrap();
        prop_assert_eq!(after, scaled(&base));
    }
}
