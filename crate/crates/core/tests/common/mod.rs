#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use pemb::algebra::Cdga;
use pemb::cli::parse_problem;
use pemb::linalg::{axpy, zero_vector, Field, Vector};
use pemb::module::{solve_chain_maps, DgModule, Generator, ModuleMap, SemifreeModule};
use rand::Rng;

pub fn q() -> Field {
    Field::Rational
}

/// Algebra from a one-algebra problem file.
pub fn algebra(text: &str, name: &str) -> Arc<Cdga> {
    parse_problem(text, None).unwrap().algebra(name).unwrap().clone()
}

/// `H^*(S^3)`, `H^*(CP^2)` and `H^*(S^2) ⊗ H^*(S^4)` with their dimensions.
pub fn pd_algebras() -> Vec<(Arc<Cdga>, i64)> {
    vec![
        (algebra("window 0 3\ncdga R { generator e deg 3 }", "R"), 3),
        (algebra("window 0 4\ncdga R { generator x deg 2; relation x^3 }", "R"), 4),
        (
            algebra(
                "window 0 6\ncdga R { generator a deg 2; generator b deg 4; relation a^2; relation b^2 }",
                "R",
            ),
            6,
        ),
    ]
}

fn random_coeff(rng: &mut impl Rng, field: Field) -> pemb::linalg::Scalar {
    field.int(rng.gen_range(-2..=2))
}

/// Semifree module on generators of the given (ascending) degrees; each
/// `d(v)` is a random cocycle of the module spanned by earlier generators.
pub fn random_semifree(rng: &mut impl Rng, r: &Arc<Cdga>, degrees: &[i64], top: i64) -> SemifreeModule {
    let field = r.field();
    let mut gens: Vec<Generator> = Vec::new();
    for (g, &deg) in degrees.iter().enumerate() {
        let mut d = BTreeMap::new();
        if g > 0 {
            let partial = SemifreeModule::build("X", r.clone(), gens.clone(), top).unwrap();
            let t = deg + 1;
            if partial.module.window().contains(t) {
                let cocycles = partial.module.complex.diff(t).kernel_basis();
                let mut v: Vector = zero_vector(field, partial.module.dim(t));
                for z in &cocycles {
                    axpy(&mut v, &random_coeff(rng, field), z);
                }
                d = partial.sparse(t, &v);
            }
        }
        gens.push(Generator {
            label: format!("v{g}"),
            degree: deg,
            stage: g,
            d,
        });
    }
    SemifreeModule::build("P", r.clone(), gens, top).unwrap()
}

pub fn random_degrees(rng: &mut impl Rng, lo: i64, hi: i64, max_count: usize) -> Vec<i64> {
    let count = rng.gen_range(1..=max_count);
    let mut d: Vec<i64> = (0..count).map(|_| rng.gen_range(lo..=hi)).collect();
    d.sort();
    d
}

/// Random degree-0 linear chain map `X -> R`.
pub fn random_chain_map(rng: &mut impl Rng, x: &Arc<DgModule>, r: &Arc<Cdga>) -> ModuleMap {
    let rm = Arc::new(DgModule::regular(r.clone()));
    let sol = solve_chain_maps(x, &rm, &[]).unwrap();
    let mut map = sol.particular.map.clone();
    for h in &sol.homogeneous {
        map = map.add(&h.map.scale(&random_coeff(rng, r.field())));
    }
    ModuleMap::new(x.clone(), rm, map).unwrap()
}

pub fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
    pairs.iter().cloned().collect()
}

/// Alexander duality for `P ⊂ S^n` from the Betti numbers of `P`, written
/// independently of the library: `H̃^q(complement) = H̃_{n-q-1}(P)`.
pub fn complement_betti(p_betti: &BTreeMap<i64, usize>, n: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    for (&i, &b) in p_betti {
        let reduced = if i == 0 { b - 1 } else { b };
        if reduced > 0 {
            *out.entry(n - i - 1).or_insert(0) += reduced;
        }
    }
    out
}
