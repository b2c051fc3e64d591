//! Mapping cones `R ⊕_f sX` of module maps into the base algebra, with the
//! semi-trivial product:
//! `r·r'` is the product in `R`, `r·sx' = (-1)^{|r|} s(r·x')`,
//! `sx·r' = (-1)^{|x||r'|} s(r'·x)` and `sx·sx' = 0`.

use std::sync::Arc;

use crate::algebra::{quotient_algebra, truncation_subspace, Algebra, Bilinear, Cdga, CdgaMorphism, LeibnizWitness};
use crate::error::{Error, Result};
use crate::graded::{cone_inclusion, CochainComplex, GradedMap, GradedSpace, GradedSubspace};
use crate::linalg::{axpy, is_zero_vector, zero_vector, Scalar, Vector};
use crate::module::{same_algebra, DgModule, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeibnizReport {
    Pass,
    Fail(LeibnizWitness),
}

impl LeibnizReport {
    pub fn passed(&self) -> bool {
        matches!(self, LeibnizReport::Pass)
    }

    pub fn witness(&self) -> Option<&LeibnizWitness> {
        match self {
            LeibnizReport::Pass => None,
            LeibnizReport::Fail(w) => Some(w),
        }
    }

    pub fn summary(&self) -> String {
        match self {
            LeibnizReport::Pass => "Leibniz: pass".into(),
            LeibnizReport::Fail(w) => format!(
                "Leibniz: FAIL on ({}, {}) with defect {}",
                w.left, w.right, w.defect_text
            ),
        }
    }
}

/// `R`-submodule of a cone, usually a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationIdeal {
    pub sub: GradedSubspace,
    /// Closed under multiplication by arbitrary cone elements.
    pub is_ideal: bool,
    pub acyclic: bool,
}

impl TruncationIdeal {
    /// Validates `sub` as a sub-DG-module of the cone over its base.
    pub fn new(cone: &MappingConeAlgebra, sub: GradedSubspace) -> Result<TruncationIdeal> {
        let module = cone.cone_module();
        module.submodule(&sub, "I")?;
        let is_ideal = is_two_sided(&cone.cone, &sub);
        let c = crate::graded::subcomplex(&cone.cone.complex, &sub)?;
        Ok(TruncationIdeal {
            acyclic: c.cohomology().is_acyclic(),
            sub,
            is_ideal,
        })
    }

    pub fn zero(cone: &MappingConeAlgebra) -> TruncationIdeal {
        TruncationIdeal {
            sub: GradedSubspace::zero(cone.cone.space()),
            is_ideal: true,
            acyclic: true,
        }
    }
}

fn is_two_sided(a: &Algebra, sub: &GradedSubspace) -> bool {
    let hi = a.window().hi;
    for d in a.window().degrees() {
        for v in sub.basis(d) {
            for p in a.window().degrees() {
                if p + d > hi {
                    continue;
                }
                for i in 0..a.dim(p) {
                    let e = a.space().basis_vector(p, i);
                    if !sub.contains(p + d, &a.mul(p, &e, d, v)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Range of `k` with `(sX)^{<k} = 0` and `cone^{>2k} = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeBounds {
    /// Smallest `k` with `cone^{>2k} = 0`.
    pub k_min: i64,
    /// Largest `k` with `(sX)^{<k} = 0`; `None` when `X = 0`.
    pub k_max: Option<i64>,
}

impl ConeBounds {
    pub fn admits(&self, k: i64) -> bool {
        k >= self.k_min && self.k_max.is_none_or(|m| k <= m)
    }

    pub fn is_empty(&self) -> bool {
        self.k_max.is_some_and(|m| m < self.k_min)
    }

    pub fn describe(&self) -> String {
        match (self.is_empty(), self.k_max) {
            (true, _) => "no admissible k".into(),
            (false, Some(m)) if m == self.k_min => format!("k = {m}"),
            (false, Some(m)) => format!("{} ≤ k ≤ {m}", self.k_min),
            (false, None) => format!("k ≥ {}", self.k_min),
        }
    }
}

/// Cone of `f: X -> R` with its semi-trivial product, possibly divided by
/// a truncation ideal.
#[derive(Clone, Debug)]
pub struct MappingConeAlgebra {
    pub base: Arc<Cdga>,
    pub module: Arc<DgModule>,
    pub attaching: ModuleMap,
    /// Full cone `R ⊕ sX`.
    pub cone: Algebra,
    pub ideal: Option<TruncationIdeal>,
    /// The cone, or its quotient by the ideal.
    pub algebra: Algebra,
    /// `cone -> algebra`.
    pub projection: GradedMap,
    pub leibniz: LeibnizReport,
}

/// Builds `R ⊕_f sX` with the semi-trivial product.
pub fn semi_trivial_cone(f: &ModuleMap, name: &str) -> Result<MappingConeAlgebra> {
    let r = f.target.algebra.clone();
    let target = &f.target;
    if target.complex != r.complex || target.action != r.product {
        return Err(Error::invalid("cone attaching map must land in the base algebra"));
    }
    let x = f.source.clone();
    if !same_algebra(&x.algebra, &r) {
        return Err(Error::invalid("cone of a map between modules over different algebras"));
    }
    let complex = trim_below_zero(CochainComplex::mapping_cone(&x.complex, &r.complex, &f.map)?)?;
    let space = complex.space().clone();
    let field = r.field();
    let window = space.window();
    let mut product = Bilinear::zero(&space, &space, &space);
    let rdim = |d: i64| r.dim(d);
    for p in window.degrees() {
        for q in window.degrees() {
            let t = p + q;
            if !window.contains(t) {
                continue;
            }
            for i in 0..space.dim(p) {
                for j in 0..space.dim(q) {
                    let mut out = zero_vector(field, space.dim(t));
                    match (i < rdim(p), j < rdim(q)) {
                        (true, true) => {
                            let v = r.product.basis(p, i, q, j);
                            out[..v.len()].clone_from_slice(&v);
                        }
                        (true, false) => {
                            // r·sx' = (-1)^{|r|} s(r·x'), x' in X^{q+1}
                            let jx = j - rdim(q);
                            let v = x.act(p, &r.space().basis_vector(p, i), q + 1, &x.space().basis_vector(q + 1, jx));
                            place(&mut out, rdim(t), &v, &field.sign(p));
                        }
                        (false, true) => {
                            // sx·r' = (-1)^{|x||r'|} s(r'·x), |x| = p+1
                            let ix = i - rdim(p);
                            let v = x.act(q, &r.space().basis_vector(q, j), p + 1, &x.space().basis_vector(p + 1, ix));
                            place(&mut out, rdim(t), &v, &field.sign((p + 1) * q));
                        }
                        (false, false) => {}
                    }
                    product.set_basis(p, i, q, j, &out);
                }
            }
        }
    }
    let unit = r.unit;
    let cone = Algebra::explicit(name, complex, unit, product);
    cone.check_unit()?;
    cone.check_commutative()
        .map_err(|e| Error::Internal(format!("semi-trivial product: {e}")))?;
    cone.check_associative()
        .map_err(|e| Error::Internal(format!("semi-trivial product: {e}")))?;
    let leibniz = match cone.leibniz_witness() {
        None => LeibnizReport::Pass,
        Some(w) => LeibnizReport::Fail(w),
    };
    let out = MappingConeAlgebra {
        base: r,
        module: x,
        attaching: f.clone(),
        projection: GradedMap::identity(cone.space()),
        algebra: cone.clone(),
        cone,
        ideal: None,
        leibniz,
    };
    let bounds = out.bounds();
    if !bounds.is_empty() && !out.leibniz.passed() {
        return Err(Error::Internal(format!(
            "cone satisfies the degree bounds ({}) yet fails Leibniz",
            bounds.describe()
        )));
    }
    Ok(out)
}

/// Drops empty negative degrees so the cone can carry a CDGA structure.
fn trim_below_zero(c: CochainComplex) -> Result<CochainComplex> {
    let w = c.window();
    if w.lo >= 0 || (w.lo..0).any(|d| c.dim(d) != 0) {
        return Ok(c);
    }
    let window = crate::graded::DegreeWindow::new(0, w.hi.max(0))?;
    let space = c.space().with_window(window)?;
    let blocks = window.degrees().map(|d| (d, c.diff(d))).collect();
    CochainComplex::new(space, blocks)
}

fn place(out: &mut Vector, offset: usize, v: &[Scalar], sign: &Scalar) {
    for (t, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[offset + t] = c * sign;
        }
    }
}

impl MappingConeAlgebra {
    pub fn name(&self) -> &str {
        &self.algebra.name
    }

    /// `(sX)^k = X^{k+1}`.
    pub fn sx_dim(&self, k: i64) -> usize {
        self.module.dim(k + 1)
    }

    /// Degree range where the suspended module lives.
    fn sx_support(&self) -> Option<(i64, i64)> {
        self.module.space().support().map(|(lo, hi)| (lo - 1, hi - 1))
    }

    pub fn bounds(&self) -> ConeBounds {
        let top = self.cone.space().support().map_or(0, |(_, hi)| hi);
        // smallest k with 2k ≥ top
        let k_min = top.div_euclid(2) + top.rem_euclid(2);
        ConeBounds {
            k_min,
            k_max: self.sx_support().map(|(lo, _)| lo),
        }
    }

    /// Is the quotient (or the cone itself) a CDGA?
    pub fn cdga(&self) -> Result<Arc<Cdga>> {
        if let LeibnizReport::Fail(w) = &self.leibniz {
            return Err(Error::hypothesis(format!(
                "{}: Leibniz rule fails on ({}, {})",
                self.name(),
                w.left,
                w.right
            )));
        }
        Ok(Arc::new(Cdga::new(self.algebra.clone())?))
    }

    /// `R -> cone` or `R -> cone/I`, validated as a CDGA morphism.
    pub fn inclusion(&self) -> Result<CdgaMorphism> {
        let target = self.cdga()?;
        let inc = cone_inclusion(self.base.space(), self.cone.space());
        let map = self.projection.compose(&inc).with_spaces(self.base.space().clone(), target.space().clone())?;
        CdgaMorphism::new(self.base.clone(), target, map)
    }

    /// The full cone as a DG module over the base.
    pub fn cone_module(&self) -> DgModule {
        let r = &self.base;
        let space = self.cone.space().clone();
        let mut action = Bilinear::zero(r.space(), &space, &space);
        let inc = cone_inclusion(r.space(), &space);
        for p in r.window().degrees() {
            for i in 0..r.dim(p) {
                let e = inc.apply(p, &r.space().basis_vector(p, i));
                for q in space.window().degrees() {
                    for j in 0..space.dim(q) {
                        let v = self.cone.mul(p, &e, q, &space.basis_vector(q, j));
                        action.set_basis(p, i, q, j, &v);
                    }
                }
            }
        }
        DgModule::new(&self.cone.name, r.clone(), self.cone.complex.clone(), action)
            .expect("a mapping cone is a DG module over the base")
    }

    /// `(cone_space, quotient_space)` for reports.
    pub fn spaces(&self) -> (&GradedSpace, &GradedSpace) {
        (self.cone.space(), self.algebra.space())
    }

    /// Leibniz defects of all basis pairs of the full cone lie in `sub`.
    pub fn defects_within(&self, sub: &GradedSubspace) -> bool {
        let a = &self.cone;
        let f = a.field();
        let window = a.window();
        for p in window.degrees() {
            for i in 0..a.dim(p) {
                let x = a.space().basis_vector(p, i);
                let dx = a.d(p, &x);
                for q in window.degrees() {
                    for j in 0..a.dim(q) {
                        let y = a.space().basis_vector(q, j);
                        let mut defect = a.d(p + q, &a.mul(p, &x, q, &y));
                        axpy(&mut defect, &f.int(-1), &a.mul(p + 1, &dx, q, &y));
                        axpy(&mut defect, &(-f.sign(p)), &a.mul(p, &x, q + 1, &a.d(q, &y)));
                        if !is_zero_vector(&defect) && !sub.contains(p + q + 1, &defect) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Quotient `cone/I` under `(sX)^{<k} = 0`, `I^{≤k-l} = 0` and
/// `cone^{≥2k-l+1} ⊆ I`.
pub fn truncated_cone(cone: &MappingConeAlgebra, ideal: &TruncationIdeal, k: i64, l: i64, name: &str) -> Result<MappingConeAlgebra> {
    if let Some((lo, _)) = cone.sx_support() {
        if lo < k {
            return Err(Error::hypothesis(format!(
                "bound (sX)^{{<{k}}} = 0 fails: sX is nonzero in degree {lo}"
            )));
        }
    }
    let window = cone.cone.window();
    for d in window.degrees() {
        if d <= k - l && ideal.sub.dim(d) != 0 {
            return Err(Error::hypothesis(format!(
                "bound I^{{≤{}}} = 0 fails: I is nonzero in degree {d}",
                k - l
            )));
        }
        if d > 2 * k - l && ideal.sub.dim(d) != cone.cone.dim(d) {
            return Err(Error::hypothesis(format!(
                "bound cone^{{≥{}}} ⊆ I fails in degree {d}",
                2 * k - l + 1
            )));
        }
    }
    if !cone.defects_within(&ideal.sub) {
        return Err(Error::Internal("Leibniz defects of the cone escape the ideal".into()));
    }
    let (algebra, projection) = quotient_algebra(&cone.cone, &ideal.sub, name)?;
    let leibniz = match algebra.leibniz_witness() {
        None => LeibnizReport::Pass,
        Some(w) => {
            return Err(Error::Internal(format!(
                "truncated cone fails Leibniz on ({}, {}) within the bounds",
                w.left, w.right
            )))
        }
    };
    let out = MappingConeAlgebra {
        base: cone.base.clone(),
        module: cone.module.clone(),
        attaching: cone.attaching.clone(),
        cone: cone.cone.clone(),
        ideal: Some(ideal.clone()),
        algebra,
        projection,
        leibniz,
    };
    out.inclusion()?;
    Ok(out)
}

/// Acyclic ideal `L = cone^{≥t} ⊕ S` with `S ⊂ cone^{t-1}` mapped by `d`
/// isomorphically onto the cocycles of degree `t`; requires `H^{≥t} = 0`.
pub fn build_acyclic_truncation(cone: &MappingConeAlgebra, t: i64) -> Result<TruncationIdeal> {
    if !cone.base.is_connected() {
        return Err(Error::hypothesis(format!("{} is not connected", cone.base.name)));
    }
    let h = cone.cone.complex.cohomology();
    if let Some((&d, _)) = h.dims().iter().find(|(&d, _)| d >= t) {
        return Err(Error::hypothesis(format!(
            "connectivity hypothesis violated: H^{d} of the cone is nonzero (needs H^≥{t} = 0)"
        )));
    }
    let sub = truncation_subspace(&cone.cone.complex, t - 1);
    let ideal = TruncationIdeal::new(cone, sub)?;
    if !ideal.acyclic {
        return Err(Error::Internal("truncation is not acyclic".into()));
    }
    let floor = t - 2;
    if cone.cone.window().degrees().any(|d| d <= floor && ideal.sub.dim(d) != 0) {
        return Err(Error::Internal(format!("truncation is nonzero in degree ≤ {floor}")));
    }
    Ok(ideal)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::tests::{q, sphere};
    use crate::graded::DegreeWindow;
    use crate::linalg::Matrix;
    use crate::module::{Generator, SemifreeModule};
    use std::collections::BTreeMap;

    /// `R = H^*(S^2)` on `e`, `X` free on `u, w` in degree 2, `f(u) = f(w) = e`.
    pub fn leibniz_counterexample() -> MappingConeAlgebra {
        let r = Arc::new(sphere(q(), 2, 4).renamed("R"));
        semi_trivial_cone(&free_map(&r, &[(2, 1), (2, 1)]), "C").unwrap()
    }

    /// Free module on generators of the given degrees, each sent to
    /// `c·x` (or 0) in `R = H^*(S^2)`.
    pub fn free_map(r: &Arc<Cdga>, gens: &[(i64, i64)]) -> ModuleMap {
        let names = ["u", "w", "y", "z"];
        let generators: Vec<Generator> = gens
            .iter()
            .enumerate()
            .map(|(i, &(d, _))| Generator {
                label: names[i].to_string(),
                degree: d,
                stage: 0,
                d: BTreeMap::new(),
            })
            .collect();
        let sf = SemifreeModule::build("X", r.clone(), generators, r.window().hi).unwrap();
        let x = sf.module.clone();
        let rm = Arc::new(DgModule::regular(r.clone()));
        let mut blocks = BTreeMap::new();
        for k in x.window().degrees() {
            let mut m = Matrix::zeros(q(), r.dim(k), x.dim(k));
            for (j, &(p, ai, g)) in sf.basis[&k].iter().enumerate() {
                let (gd, c) = gens[g];
                if gd == 2 && r.dim(p + 2) > 0 {
                    // f(a⊗v) = a·c·x
                    let xv = crate::linalg::scale_vector(&q().int(c), &r.space().basis_vector(2, 0));
                    let v = r.mul(p, &r.space().basis_vector(p, ai), 2, &xv);
                    m.set_column(j, &v);
                }
            }
            blocks.insert(k, m);
        }
        let map = GradedMap::new(x.space().clone(), rm.space().clone(), 0, blocks).unwrap();
        ModuleMap::new(x, rm, map).unwrap()
    }

    #[test]
    fn cone_of_zero_module_is_base() {
        let r = Arc::new(sphere(q(), 3, 3));
        let x = Arc::new(DgModule::zero(r.clone(), DegreeWindow::new(0, 3).unwrap()));
        let rm = Arc::new(DgModule::regular(r.clone()));
        let f = ModuleMap::new(x.clone(), rm.clone(), GradedMap::zero(x.space(), rm.space(), 0)).unwrap();
        let c = semi_trivial_cone(&f, "C").unwrap();
        assert!(c.leibniz.passed());
        assert_eq!(c.cone.space().dims(), r.space().dims());
        assert_eq!(c.bounds().k_max, None);
        assert!(c.bounds().admits(100));
        c.inclusion().unwrap();
    }

    #[test]
    fn frozen_counterexample_fails_leibniz() {
        let c = leibniz_counterexample();
        let w = c.leibniz.witness().expect("fails");
        assert_eq!((w.left.as_str(), w.right.as_str()), ("s·u", "s·w"));
        assert_eq!(w.left_degree, 1);
        assert_eq!(w.right_degree, 1);
        assert_eq!(w.defect_text, "s·e⊗u - s·e⊗w");
        assert!(c.bounds().is_empty());
        assert!(c.cdga().is_err());
    }

    #[test]
    fn brute_force_search_finds_frozen_witness() {
        // smallest generator counts and degrees first; coefficients in {0, 1, -1}
        let r = Arc::new(sphere(q(), 2, 4).renamed("R"));
        let mut found = None;
        'search: for n in 1..=2usize {
            for degs in [[1i64, 1], [2, 2], [1, 2], [2, 1]] {
                for cs in [[1i64, 1], [1, 0], [0, 1], [1, -1]] {
                    let gens: Vec<(i64, i64)> = (0..n).map(|i| (degs[i], cs[i])).collect();
                    let c = semi_trivial_cone(&free_map(&r, &gens), "C").unwrap();
                    if let Some(w) = c.leibniz.witness() {
                        found = Some((gens, w.clone()));
                        break 'search;
                    }
                }
            }
        }
        let (gens, w) = found.expect("a counterexample exists");
        assert_eq!(gens, vec![(2, 1), (2, 1)]);
        assert_eq!(&w, leibniz_counterexample().leibniz.witness().unwrap());
    }

    #[test]
    fn bounds_scan() {
        let r = Arc::new(sphere(q(), 2, 6));
        // sX starts in degree 1, cone reaches degree 5
        let c = semi_trivial_cone(&free_map(&r, &[(2, 0), (4, 0)]), "C").unwrap();
        let b = c.bounds();
        assert_eq!(b.k_max, Some(1));
        assert!(b.is_empty());
    }

    #[test]
    fn acyclic_truncation_rejects_cohomology() {
        let c = leibniz_counterexample();
        // H^2 of the cone is nonzero here? it is: check error in degree ≥ 1
        let h = c.cone.complex.cohomology();
        let top = *h.dims().keys().last().unwrap();
        let err = build_acyclic_truncation(&c, top).unwrap_err();
        assert!(err.to_string().contains("connectivity hypothesis violated"));
        let past = c.cone.window().hi + 1;
        let l = build_acyclic_truncation(&c, past).unwrap();
        assert!(l.sub.is_zero());
    }
}
