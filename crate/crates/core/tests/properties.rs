//! Randomized invariants.

mod common;

use std::collections::BTreeMap;

use common::{complement_betti, pd_algebras, random_chain_map, random_degrees, random_semifree};
use pemb::cli::report::{machine_problem, same_structure};
use pemb::cli::parse_problem;
use pemb::cone::{semi_trivial_cone, MappingConeAlgebra};
use pemb::graded::induced_map;
use pemb::linalg::{Field, Matrix};
use pemb::module::ModuleMap;
use pemb::pipeline;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(2).unwrap()), Just(Field::prime(7).unwrap())]
}

fn matrix_strategy() -> impl Strategy<Value = (Field, Vec<Vec<i64>>)> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        (Just(f), prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
    })
}

fn to_matrix(field: Field, rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_ints(field, &refs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_the_column_count((field, rows) in matrix_strategy()) {
        let a = to_matrix(field, &rows);
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn row_reduction_is_idempotent((field, rows) in matrix_strategy()) {
        let (r, pivots) = to_matrix(field, &rows).rref();
        let (again, pivots_again) = r.rref();
        prop_assert_eq!(&r, &again);
        prop_assert_eq!(pivots, pivots_again);
    }

    #[test]
    fn solve_recovers_a_preimage((field, rows) in matrix_strategy(), seed in any::<u64>()) {
        let a = to_matrix(field, &rows);
        let x: Vec<_> = (0..a.cols()).map(|i| field.int(((seed >> (i * 3)) & 7) as i64 - 3)).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn inverse_is_two_sided(field in field_strategy(), n in 1usize..5, entries in prop::collection::vec(-3i64..=3, 16)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entries[i * 4 + j]).collect()).collect();
        let a = to_matrix(field, &rows);
        match a.inverse() {
            Some(inv) => {
                prop_assert_eq!(a.mul(&inv), Matrix::identity(field, n));
                prop_assert_eq!(inv.mul(&a), Matrix::identity(field, n));
            }
            None => prop_assert!(a.rank() < n),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Semifree modules built from random cocycle differentials square to
    /// zero; the semi-trivial cone satisfies Leibniz whenever some `k` has
    /// `(sX)^{<k} = 0` and nothing above `2k`, and always for the zero map.
    #[test]
    fn semi_trivial_cones_satisfy_leibniz_within_bounds(which in 0usize..3, seed in any::<u64>(), high in any::<bool>()) {
        let (r, n) = pd_algebras().swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lo = if high { (n + 1) / 2 + 1 } else { 0 };
        let degrees = random_degrees(&mut rng, lo, n + 1, 3);
        let p = random_semifree(&mut rng, &r, &degrees, n + 1);
        let x = p.module.clone();
        for k in x.window().degrees() {
            let dd = x.complex.diff(k + 1).mul(&x.complex.diff(k));
            prop_assert!(dd.is_zero(), "d∘d ≠ 0 in degree {}", k);
        }
        let f = random_chain_map(&mut rng, &x, &r);
        let cone = semi_trivial_cone(&f, "C").unwrap();
        prop_assert_eq!(cone.leibniz.passed(), cone.cone.leibniz_witness().is_none());
        check_long_exact_sequence(&cone)?;
        if !cone.bounds().is_empty() {
            prop_assert!(cone.leibniz.passed(), "{}", cone.leibniz.summary());
        }
        let zero = ModuleMap::new(f.source.clone(), f.target.clone(), f.map.scale(&r.field().zero())).unwrap();
        let trivial = semi_trivial_cone(&zero, "C0").unwrap();
        prop_assert!(trivial.leibniz.passed(), "{}", trivial.leibniz.summary());
    }
}

/// `H(R) -> H(cone) -> H(sX)` is exact: in each degree of the cone,
/// `dim H^k = dim coker H^k(f) + dim ker H^{k+1}(f)`.
fn check_long_exact_sequence(cone: &MappingConeAlgebra) -> Result<(), TestCaseError> {
    let f = &cone.attaching;
    let (hx, hr) = (f.source.cohomology(), f.target.cohomology());
    let hc = cone.cone.complex.cohomology();
    let rank = |k: i64| {
        if f.source.window().contains(k) && f.target.window().contains(k) {
            induced_map(&f.map, f.source.dim(k), &hx, &hr, k).rank()
        } else {
            0
        }
    };
    let h = |c: &pemb::graded::Cohomology, k: i64| if c.window().contains(k) { c.dim(k) } else { 0 };
    let mut chi = 0i64;
    for k in cone.cone.window().degrees() {
        let expected = (h(&hr, k) - rank(k)) + (h(&hx, k + 1) - rank(k + 1));
        prop_assert_eq!(hc.dim(k), expected, "degree {}", k);
        chi += if k % 2 == 0 { hc.dim(k) as i64 } else { -(hc.dim(k) as i64) };
    }
    prop_assert_eq!(chi, cone.cone.complex.euler_characteristic());
    Ok(())
}

#[derive(Clone, Debug)]
enum Shape {
    Point,
    Sphere(i64),
    Wedge(i64, i64),
    Product(i64, i64),
}

impl Shape {
    fn text(&self) -> String {
        fn square(name: &str, k: i64) -> String {
            if k % 2 == 0 {
                format!("; relation {name}^2")
            } else {
                String::new()
            }
        }
        match *self {
            Shape::Point => "cdga P { }".into(),
            Shape::Sphere(k) => format!("cdga P {{ generator x deg {k}{} }}", square("x", k)),
            Shape::Wedge(a, b) => format!(
                "cdga P {{ generator x deg {a}; generator y deg {b}{}{}; relation x*y }}",
                square("x", a),
                square("y", b)
            ),
            Shape::Product(a, b) => format!(
                "cdga P {{ generator x deg {a}; generator y deg {b}{}{} }}",
                square("x", a),
                square("y", b)
            ),
        }
    }

    fn betti(&self) -> BTreeMap<i64, usize> {
        let mut b = BTreeMap::new();
        let mut add = |d: i64| *b.entry(d).or_insert(0) += 1;
        add(0);
        match *self {
            Shape::Point => {}
            Shape::Sphere(k) => add(k),
            Shape::Wedge(a, c) => {
                add(a);
                add(c);
            }
            Shape::Product(a, c) => {
                add(a);
                add(c);
                add(a + c);
            }
        }
        b
    }

    /// Top degree and connectivity of the zero map from a sphere.
    fn m_and_r(&self, n: i64) -> (i64, i64) {
        match *self {
            Shape::Point => (0, n - 1),
            Shape::Sphere(k) => (k, k),
            Shape::Wedge(a, b) => (a.max(b), a.min(b)),
            Shape::Product(a, b) => (a + b, a.min(b)),
        }
    }
}

fn shape_strategy() -> impl Strategy<Value = Shape> {
    prop_oneof![
        Just(Shape::Point),
        (1i64..=4).prop_map(Shape::Sphere),
        (1i64..=3, 1i64..=3).prop_map(|(a, b)| Shape::Wedge(a, b)),
        (1i64..=3, 1i64..=3).prop_map(|(a, b)| Shape::Product(a, b)),
    ]
}

/// Embedding into `S^n` with `n` the smallest dimension meeting the
/// unknotting and codimension conditions, plus `extra`.
fn sphere_problem(shape: &Shape, extra: i64) -> (String, i64) {
    let n = match shape {
        Shape::Point => 3,
        _ => {
            let (m, r) = shape.m_and_r(0);
            (2 * m + 2 - r).max(m + 2)
        }
    } + extra;
    let text = format!(
        "cdga S {{ generator e deg {n} }}\n{}\nmorphism f : S -> P {{ e -> 0 }}\nproblem {{ ambient S dim {n}; embedded P via f }}\n",
        shape.text()
    );
    (text, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complements_in_spheres_obey_alexander_duality(shape in shape_strategy(), extra in 0i64..=2) {
        let (text, n) = sphere_problem(&shape, extra);
        let pf = parse_problem(&text, None).unwrap();
        let p = pf.problem().unwrap();
        let a = pipeline::analyze(p).unwrap();
        prop_assert_eq!((a.m, a.r), shape.m_and_r(n));
        prop_assert!(a.unknotting());
        let res = pipeline::complement_model(p).unwrap();
        let expected = complement_betti(&shape.betti(), n);
        prop_assert_eq!(&res.table.dims, &expected);
        prop_assert!(res.table.products.as_ref().unwrap().values().all(|&rank| rank == 0));
        let lef = pipeline::lefschetz(p).unwrap();
        prop_assert_eq!(&lef.table.dims, &expected);
    }

    #[test]
    fn machine_format_round_trips(shape in shape_strategy(), extra in 0i64..=2, prime in prop::option::of(Just(3u64))) {
        let (text, _) = sphere_problem(&shape, extra);
        let field = prime.map(|p| Field::prime(p).unwrap());
        let original = parse_problem(&text, field).unwrap();
        let again = parse_problem(&machine_problem(&original), None).unwrap();
        prop_assert_eq!(original.field, again.field);
        prop_assert_eq!(original.algebras.len(), again.algebras.len());
        for (a, b) in original.algebras.iter().zip(&again.algebras) {
            prop_assert!(same_structure(a, b));
        }
        let (p, q) = (original.problem().unwrap(), again.problem().unwrap());
        prop_assert_eq!(p.n, q.n);
        let w = p.branches[0].phi.map.source().window();
        for d in w.degrees() {
            prop_assert_eq!(p.branches[0].phi.map.block(d), q.branches[0].phi.map.block(d));
        }
    }

    /// Over `F_p` the CDGA construction is refused, while the module-level
    /// complement cohomology agrees with the rational one for these
    /// torsion-free cases.
    #[test]
    fn complement_dimensions_do_not_depend_on_the_field(shape in shape_strategy()) {
        let (text, _) = sphere_problem(&shape, 0);
        let over_q = parse_problem(&text, None).unwrap();
        let over_p = parse_problem(&text, Some(Field::prime(5).unwrap())).unwrap();
        let a = pipeline::complement_model(over_q.problem().unwrap()).unwrap();
        let refused = pipeline::complement_model(over_p.problem().unwrap());
        prop_assert!(matches!(refused, Err(pemb::Error::Invalid(_))));
        let b = pipeline::lefschetz(over_p.problem().unwrap()).unwrap();
        prop_assert_eq!(&a.table.dims, &b.table.dims);
        prop_assert!(b.table.products.is_none());
    }
}

#[test]
fn shared_fixtures_are_poincare_duality_algebras() {
    for (r, n) in pd_algebras() {
        assert!(r.check_poincare_duality(n).is_ok(), "{}", r.name);
    }
}
