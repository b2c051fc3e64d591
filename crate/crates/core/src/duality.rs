//! Top-degree maps `ψ: D -> R'`: module maps with `H^n(ψ)` an isomorphism.
//! Construction by an affine solve, uniqueness up to a scalar, the
//! cohomological Gysin map and the shifted dual of a morphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{CdgaMorphism, PoincareDualityCertificate};
use crate::error::{Error, Result};
use crate::graded::GradedMap;
use crate::linalg::{Matrix, Scalar, Vector};
use crate::module::{
    homotopy_between, semifree_resolution, solve_chain_maps, ChainMapSolutions, DgModule,
    ModuleMap, PointConstraint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopDegreeRoute {
    /// Solved on the given module.
    Direct,
    /// Solved on a semifree resolution of it.
    Resolved,
}

/// Module map with `H^n` an isomorphism between lines.
#[derive(Clone, Debug)]
pub struct TopDegreeMap {
    pub map: ModuleMap,
    pub n: i64,
    /// `H^n(ψ)` in the chosen cohomology bases.
    pub top: Matrix,
    pub route: TopDegreeRoute,
    /// Quasi-isomorphism from the resolution, for the resolved route.
    pub comparison: Option<ModuleMap>,
}

impl TopDegreeMap {
    /// Revalidates a module map as top-degree.
    pub fn certify(map: ModuleMap, n: i64) -> Result<TopDegreeMap> {
        let top = top_matrix(&map, n);
        if top.rows() != 1 || top.cols() != 1 || top[(0, 0)].is_zero() {
            return Err(Error::hypothesis(format!(
                "H^{n} of {} -> {} is not an isomorphism of lines",
                map.source.name, map.target.name
            )));
        }
        Ok(TopDegreeMap {
            map,
            n,
            top,
            route: TopDegreeRoute::Direct,
            comparison: None,
        })
    }

    pub fn scalar(&self) -> &Scalar {
        &self.top[(0, 0)]
    }
}

fn top_matrix(map: &ModuleMap, n: i64) -> Matrix {
    let hs = map.source.cohomology();
    let ht = map.target.cohomology();
    map.induced(&hs, &ht, n)
}

fn top_constraint(d: &DgModule, target: &DgModule, n: i64) -> Result<PointConstraint> {
    let hd = d.cohomology();
    let ht = target.cohomology();
    if hd.dim(n) != 1 {
        return Err(Error::hypothesis(format!(
            "H^{n}({}) has dimension {}, expected 1",
            d.name,
            hd.dim(n)
        )));
    }
    if ht.dim(n) != 1 {
        return Err(Error::hypothesis(format!(
            "H^{n}({}) has dimension {}, expected 1",
            target.name,
            ht.dim(n)
        )));
    }
    Ok(PointConstraint {
        degree: n,
        vector: hd.representatives(n)[0].clone(),
        functional: ht.projection(n).row(0),
        value: d.field().one(),
    })
}

/// Every module chain map `D -> R'` with `H^n = 1` on the chosen generators.
pub fn top_degree_solutions(d: &Arc<DgModule>, target: &Arc<DgModule>, n: i64) -> Result<ChainMapSolutions> {
    let c = top_constraint(d, target, n)?;
    solve_chain_maps(d, target, &[c])
}

/// Solves for a top-degree map on `D`; when that fails and `D` is not known
/// to be semifree, resolves `D` and solves there.
pub fn construct_top_degree(d: &Arc<DgModule>, target: &Arc<DgModule>, n: i64, semifree: bool) -> Result<TopDegreeMap> {
    match top_degree_solutions(d, target, n) {
        Ok(sol) => TopDegreeMap::certify(sol.particular, n),
        Err(Error::NoSolution(_)) if semifree => Err(Error::Internal(format!(
            "no top-degree map from the semifree module {}",
            d.name
        ))),
        Err(Error::NoSolution(_)) => {
            let top = d.window().hi.max(target.window().hi) + 1;
            let res = semifree_resolution(d, true, top)?;
            let sol = top_degree_solutions(&res.module, target, n).map_err(|e| match e {
                Error::NoSolution(_) => Error::NoSolution("no top-degree map at this model".into()),
                e => e,
            })?;
            let mut t = TopDegreeMap::certify(sol.particular, n)?;
            t.route = TopDegreeRoute::Resolved;
            t.comparison = res.comparison;
            Ok(t)
        }
        Err(e) => Err(e),
    }
}

/// `u` with `[ψ] = u·[ψ']`, and `h` with `δh = ψ - u·ψ'`.
pub fn verify_scalar_uniqueness(psi: &TopDegreeMap, other: &TopDegreeMap) -> Result<(Scalar, GradedMap)> {
    if psi.map.source != other.map.source || psi.map.target != other.map.target {
        return Err(Error::invalid("top-degree maps with different source or target"));
    }
    let u = psi.scalar() * &other.scalar().inv().expect("certified nonzero");
    let scaled = other.map.scale(&u);
    let h = homotopy_between(&psi.map, &scaled)?.ok_or_else(|| {
        Error::Internal(format!(
            "top-degree maps from {} differ by more than a scalar up to homotopy",
            psi.map.source.name
        ))
    })?;
    Ok((u, h))
}

/// Cohomological shriek map `s^{-k} H(V) -> H(W)` of `f^*: H(W) -> H(V)`,
/// determined by `<f^!(s^{-k}v)·w, [W]> = <v·f^*(w), [V]>`.
pub fn gysin_map(
    hf: &CdgaMorphism,
    cert_w: &PoincareDualityCertificate,
    cert_v: &PoincareDualityCertificate,
    k: i64,
) -> Result<TopDegreeMap> {
    let w = &hf.source;
    let v = &hf.target;
    let n = cert_w.dimension;
    if n - cert_v.dimension != k {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} - {} ≠ {k}",
            n, cert_v.dimension
        )));
    }
    for (a, name) in [(w, "source"), (v, "target")] {
        if a.window().degrees().any(|d| !a.complex.diff(d).is_zero()) {
            return Err(Error::invalid(format!("Gysin map needs cohomology algebras; the {name} has a differential")));
        }
    }
    let field = w.field();
    let eval = |func: &Vector, x: &Vector| -> Scalar {
        func.iter().zip(x).fold(field.zero(), |acc, (a, b)| acc + a * b)
    };
    let source = Arc::new(DgModule::regular(v.clone()).restrict_scalars(hf)?.suspend(-k));
    let target = Arc::new(DgModule::regular(w.clone()));
    let mut blocks = BTreeMap::new();
    for j in source.window().degrees() {
        let rows = w.dim(j);
        let mut m = Matrix::zeros(field, rows, source.dim(j));
        let vdeg = j - k;
        for c in 0..source.dim(j) {
            let vv = v.space().basis_vector(vdeg, c);
            // one equation per basis element of W^{n-j}
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for t in 0..w.dim(n - j) {
                let ww = w.space().basis_vector(n - j, t);
                let row: Vector = (0..rows)
                    .map(|s| eval(&cert_w.top_functional, &w.mul(j, &w.space().basis_vector(j, s), n - j, &ww)))
                    .collect();
                lhs.push(row);
                let fw = hf.map.apply(n - j, &ww);
                rhs.push(eval(&cert_v.top_functional, &v.mul(vdeg, &vv, n - j, &fw)));
            }
            let y = if rows == 0 {
                if rhs.iter().any(|x| !x.is_zero()) {
                    return Err(Error::NoSolution(format!("no Gysin image in degree {j}")));
                }
                Vec::new()
            } else {
                Matrix::from_rows(field, lhs.clone(), rows)
                    .solve(&rhs)
                    .ok_or_else(|| Error::NoSolution(format!("pairing equations inconsistent in degree {j}")))?
            };
            m.set_column(c, &y);
        }
        blocks.insert(j, m);
    }
    let map = GradedMap::new(source.space().clone(), target.space().clone(), 0, blocks)?;
    let map = ModuleMap::new(source, target, map)?;
    TopDegreeMap::certify(map, n)
}

/// `#f: #N -> #M` for a degree-0 module map `f: M -> N`.
pub fn dual_map(f: &ModuleMap) -> Result<ModuleMap> {
    let src = Arc::new(f.target.dual());
    let tgt = Arc::new(f.source.dual());
    let blocks = src
        .window()
        .degrees()
        .map(|i| (i, f.map.block(-i).transpose()))
        .collect();
    let map = GradedMap::new(src.space().clone(), tgt.space().clone(), 0, blocks)?;
    ModuleMap::new(src, tgt, map)
}

/// `s^k f`.
pub fn suspend_map(f: &ModuleMap, k: i64) -> Result<ModuleMap> {
    let src = Arc::new(f.source.suspend(k));
    let tgt = Arc::new(f.target.suspend(k));
    let blocks = src
        .window()
        .degrees()
        .map(|j| (j, f.map.block(j + k)))
        .collect();
    let map = GradedMap::new(src.space().clone(), tgt.space().clone(), 0, blocks)?;
    ModuleMap::new(src, tgt, map)
}

/// `φ` viewed as a map of modules over its source: `R -> Q`.
pub fn as_module_map(phi: &CdgaMorphism) -> Result<ModuleMap> {
    let r = Arc::new(DgModule::regular(phi.source.clone()));
    let q = Arc::new(DgModule::regular(phi.target.clone()).restrict_scalars(phi)?);
    ModuleMap::new(r, q, phi.map.clone())
}

/// `s^{-n}#φ: s^{-n}#Q -> s^{-n}#R`, with no condition on `H^0(φ)`.
pub fn dual_morphism(phi: &CdgaMorphism, n: i64) -> Result<ModuleMap> {
    suspend_map(&dual_map(&as_module_map(phi)?)?, -n)
}

/// `s^{-n}#φ`, certified top-degree; needs `H^0(φ)` an isomorphism.
pub fn dual_morphism_top_degree(phi: &CdgaMorphism, n: i64) -> Result<TopDegreeMap> {
    let hs = phi.source.cohomology();
    let ht = phi.target.cohomology();
    let h0 = phi.induced(&hs, &ht, 0);
    if h0.rows() != h0.cols() || h0.rank() != h0.rows() {
        return Err(Error::hypothesis("H^0(φ) is not an isomorphism"));
    }
    TopDegreeMap::certify(dual_morphism(phi, n)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{poly, q, sphere, truncated_poly};
    use crate::algebra::{explicit_cdga, Cdga, ExplicitPresentation};
    use crate::graded::DegreeWindow;

    #[test]
    fn identity_is_top_degree() {
        let r = Arc::new(sphere(q(), 4, 4));
        let m = Arc::new(DgModule::regular(r));
        let t = construct_top_degree(&m, &m, 4, true).unwrap();
        assert_eq!(t.map.map, GradedMap::identity(m.space()));
        assert_eq!(t.route, TopDegreeRoute::Direct);
    }

    #[test]
    fn dual_of_sphere_inclusion() {
        let r = Arc::new(sphere(q(), 6, 6));
        let qq = Arc::new(sphere(q(), 2, 6));
        let phi = CdgaMorphism::from_atom_images(r, qq, &BTreeMap::new()).unwrap();
        let t = dual_morphism_top_degree(&phi, 6).unwrap();
        assert_eq!(t.map.source.space().dims(), [(4, 1), (6, 1)].into_iter().collect());
        assert_eq!(t.map.target.space().dims(), [(0, 1), (6, 1)].into_iter().collect());
        assert_eq!(t.map.map.block(6), Matrix::from_ints(q(), &[&[1]]));
        assert!(t.map.map.block(4).is_zero());
    }

    #[test]
    fn dual_morphism_rejects_zero_h0() {
        let a = Arc::new(Cdga::ground(q(), 2));
        // two points: unit 1 and an idempotent e
        let pres = ExplicitPresentation {
            basis: vec![("1".into(), 0), ("e".into(), 0)],
            products: vec![("e".into(), "e".into(), vec![(q().one(), "e".into())])],
            differentials: vec![],
            unit: Some("1".into()),
        };
        let two = Arc::new(explicit_cdga("P", q(), &pres, DegreeWindow::new(0, 2).unwrap()).unwrap());
        // H^0(φ) is injective but not onto
        let phi = CdgaMorphism::from_atom_images(a, two, &BTreeMap::new()).unwrap();
        assert!(matches!(dual_morphism_top_degree(&phi, 2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn cp2_self_duality() {
        let r = Arc::new(truncated_poly(q(), 2, 2, 4));
        let rm = DgModule::regular(r.clone());
        let d = Arc::new(rm.shifted_dual(4));
        let target = Arc::new(rm);
        let t = construct_top_degree(&d, &target, 4, false).unwrap();
        assert_eq!(t.scalar(), &q().one());
        let sol = top_degree_solutions(&d, &target, 4).unwrap();
        // scaled copy: u = 1/2
        let mut other = t.clone();
        other.map = other.map.scale(&q().int(2));
        other.top = other.top.scale(&q().int(2));
        let (u, h) = verify_scalar_uniqueness(&t, &other).unwrap();
        assert_eq!(u, q().ratio(1, 2).unwrap());
        assert!(h.is_zero());
        assert!(sol.homogeneous.is_empty() || sol.homogeneous.iter().all(|m| top_matrix(m, 4).is_zero()));
    }

    #[test]
    fn gysin_cp1_in_cp2() {
        let w = Arc::new(truncated_poly(q(), 2, 2, 4));
        let v = Arc::new(truncated_poly(q(), 2, 1, 4));
        let images = [("x".to_string(), poly(q(), &[(1, &[("x", 1)])]))].into_iter().collect();
        let hf = CdgaMorphism::from_atom_images(w.clone(), v.clone(), &images).unwrap();
        let cw = w.check_poincare_duality(4).unwrap();
        let cv = v.check_poincare_duality(2).unwrap();
        let g = gysin_map(&hf, &cw, &cv, 2).unwrap();
        assert_eq!(g.map.map.block(2), Matrix::from_ints(q(), &[&[1]]));
        assert_eq!(g.map.map.block(4), Matrix::from_ints(q(), &[&[1]]));
        assert!(matches!(gysin_map(&hf, &cw, &cv, 3), Err(Error::Invalid(_))));
    }

    #[test]
    fn gysin_identity_and_odd_codimension() {
        let w = Arc::new(sphere(q(), 3, 3));
        let c = w.check_poincare_duality(3).unwrap();
        let g = gysin_map(&CdgaMorphism::identity(w.clone()), &c, &c, 0).unwrap();
        assert_eq!(g.map.map, GradedMap::identity(w.space()));
        // S^3 in S^3 × S^3 along the first factor
        let pres = ExplicitPresentation {
            basis: vec![("1".into(), 0), ("a".into(), 3), ("b".into(), 3), ("ab".into(), 6)],
            products: vec![("a".into(), "b".into(), vec![(q().one(), "ab".into())])],
            differentials: vec![],
            unit: Some("1".into()),
        };
        let ww = Arc::new(explicit_cdga("W", q(), &pres, DegreeWindow::new(0, 6).unwrap()).unwrap());
        let v = Arc::new(sphere(q(), 3, 6));
        let images = [("a".to_string(), poly(q(), &[(1, &[("e", 1)])]))].into_iter().collect();
        let hf = CdgaMorphism::from_atom_images(ww.clone(), v.clone(), &images).unwrap();
        let cw = ww.check_poincare_duality(6).unwrap();
        let cv = v.check_poincare_duality(3).unwrap();
        let g = gysin_map(&hf, &cw, &cv, 3).unwrap();
        // s^{-3}1 goes to ±b, s^{-3}e to the top class
        let b3 = g.map.map.block(3);
        assert!(b3[(0, 0)].is_zero() && !b3[(1, 0)].is_zero());
        assert!(!g.map.map.block(6)[(0, 0)].is_zero());
    }
}
