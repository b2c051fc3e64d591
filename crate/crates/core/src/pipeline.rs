//! Models of complements and boundaries of embeddings `P ⊂ W`, from a
//! morphism `φ: R -> Q` modelling the restriction `W -> P`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Algebra, Bilinear, Cdga, CdgaMorphism, PdFailure, PoincareDualityCertificate};
use crate::cone::{
    build_acyclic_truncation, semi_trivial_cone, truncated_cone, LeibnizReport, MappingConeAlgebra,
    TruncationIdeal,
};
use crate::duality::{
    construct_top_degree, dual_map, dual_morphism_top_degree, gysin_map, suspend_map, TopDegreeMap,
    TopDegreeRoute,
};
use crate::error::{Error, Result};
use crate::graded::{
    cone_inclusion, CochainComplex, Cohomology, DegreeWindow, GradedMap, GradedSpace, GradedSubspace,
};
use crate::linalg::{axpy, independent_subset, zero_vector, Field, Matrix, Vector};
use crate::module::{
    cone_comparison, module_cone, semifree_resolution, truncate_module, DgModule, ModuleMap,
};

/// One embedded component: `φ_k: R -> Q_k`.
#[derive(Clone, Debug)]
pub struct Branch {
    pub name: String,
    pub algebra: Arc<Cdga>,
    pub phi: CdgaMorphism,
}

/// `φ: R -> Q = ⊕ Q_k` with `R` modelling an `n`-dimensional ambient space.
/// Several branches form a menorah over the shared `R`.
#[derive(Clone, Debug)]
pub struct EmbeddingProblem {
    pub ambient: Arc<Cdga>,
    pub n: i64,
    pub branches: Vec<Branch>,
}

impl EmbeddingProblem {
    pub fn new(ambient: Arc<Cdga>, n: i64, branches: Vec<Branch>) -> Result<EmbeddingProblem> {
        if branches.is_empty() {
            return Err(Error::invalid("problem has no embedded component"));
        }
        for b in &branches {
            if !Arc::ptr_eq(&b.phi.source, &ambient) && *b.phi.source != *ambient {
                return Err(Error::invalid(format!(
                    "morphism into {} does not start at the ambient algebra {}",
                    b.name, ambient.name
                )));
            }
        }
        Ok(EmbeddingProblem { ambient, n, branches })
    }

    pub fn field(&self) -> Field {
        self.ambient.field()
    }

    pub fn single(&self) -> Result<&Branch> {
        match self.branches.as_slice() {
            [b] => Ok(b),
            _ => Err(Error::invalid("this construction needs a single embedded component")),
        }
    }

    pub fn ambient_module(&self) -> Arc<DgModule> {
        Arc::new(DgModule::regular(self.ambient.clone()))
    }

    /// `Q_k` viewed over `R`.
    pub fn branch_modules(&self) -> Result<Vec<Arc<DgModule>>> {
        self.branches
            .iter()
            .map(|b| Ok(Arc::new(DgModule::regular(b.algebra.clone()).restrict_scalars(&b.phi)?)))
            .collect()
    }

    /// `⊕ Q_k` over `R`.
    pub fn target_module(&self) -> Result<Arc<DgModule>> {
        let parts = self.branch_modules()?;
        if parts.len() == 1 {
            return Ok(parts[0].clone());
        }
        let refs: Vec<&DgModule> = parts.iter().map(|p| p.as_ref()).collect();
        let name = self.branches.iter().map(|b| b.name.as_str()).collect::<Vec<_>>().join("⊕");
        Ok(Arc::new(DgModule::direct_sum(&name, &refs)?))
    }

    /// `φ` as a map of modules `R -> ⊕ Q_k`.
    pub fn phi_module(&self) -> Result<ModuleMap> {
        let source = self.ambient_module();
        let target = self.target_module()?;
        let mut blocks = BTreeMap::new();
        for d in source.window().degrees() {
            let mut m: Option<Matrix> = None;
            for b in &self.branches {
                let blk = b.phi.map.block(d);
                m = Some(match m {
                    None => blk,
                    Some(acc) => acc.vstack(&blk),
                });
            }
            blocks.insert(d, m.expect("nonempty"));
        }
        let map = GradedMap::new(source.space().clone(), target.space().clone(), 0, blocks)?;
        ModuleMap::new(source, target, map)
    }
}

/// Hypotheses of the constructions, computed from the models.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub n: i64,
    /// Top nonzero degree of `H(Q)`.
    pub m: i64,
    /// Largest `r` with `H^i(φ)` iso for `i < r` and injective for `i = r`.
    pub r: i64,
    /// False when `H(φ)` is an isomorphism throughout the window.
    pub r_finite: bool,
    pub pd: std::result::Result<PoincareDualityCertificate, PdFailure>,
    pub ambient_connected: bool,
    pub h1_injective: bool,
    pub components: usize,
}

impl Analysis {
    pub fn unknot_bound(&self) -> i64 {
        2 * self.m - self.n + 2
    }

    pub fn unknotting(&self) -> bool {
        self.r >= self.unknot_bound()
    }

    pub fn stable(&self) -> bool {
        self.n >= 2 * self.m + 3 && self.h1_injective
    }

    pub fn stable_alt(&self) -> bool {
        self.n >= 2 * self.m + 4
    }

    pub fn codimension_ok(&self) -> bool {
        self.n - self.m >= 2
    }

    pub fn lines(&self) -> Vec<String> {
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut out = Vec::new();
        out.push(format!("dimensions: n={}, m={}, components={}", self.n, self.m, self.components));
        out.push(match &self.pd {
            Ok(c) => format!("{} : PASS", c.summary()),
            Err(f) => format!("Poincaré duality in dimension {}: {f} : FAIL", self.n),
        });
        out.push(format!(
            "ambient connected : {}",
            verdict(self.ambient_connected)
        ));
        if self.r_finite {
            out.push(format!("connectivity: r={}", self.r));
        } else {
            out.push(format!("connectivity: r≥{} (H(φ) iso on the window)", self.r));
        }
        let b = self.unknot_bound();
        let eq = if self.unknotting() && self.r == b { " (equality)" } else { "" };
        out.push(format!(
            "unknotting: r={} ≥ 2m−n+2={} : {}{}",
            self.r,
            b,
            verdict(self.unknotting()),
            eq
        ));
        out.push(format!(
            "stable range: n={} ≥ 2m+3={} with H^1(φ) injective ({}) : {}",
            self.n,
            2 * self.m + 3,
            if self.h1_injective { "yes" } else { "no" },
            verdict(self.stable())
        ));
        out.push(format!(
            "stable range: n={} ≥ 2m+4={} : {}",
            self.n,
            2 * self.m + 4,
            verdict(self.stable_alt())
        ));
        out.push(format!(
            "codimension: n−m={} ≥ 2 : {}",
            self.n - self.m,
            verdict(self.codimension_ok())
        ));
        out
    }

    fn require_pd(&self) -> Result<&PoincareDualityCertificate> {
        self.pd.as_ref().map_err(|f| {
            Error::hypothesis(format!("ambient model fails Poincaré duality in dimension {}: {f}", self.n))
        })
    }

    fn require_codimension(&self) -> Result<()> {
        if self.codimension_ok() {
            Ok(())
        } else {
            Err(Error::hypothesis(format!(
                "codimension n−m ≥ 2 fails: n−m={}",
                self.n - self.m
            )))
        }
    }

    fn require_unknotting(&self) -> Result<()> {
        if self.unknotting() {
            Ok(())
        } else {
            Err(Error::hypothesis(format!(
                "unknotting condition r ≥ 2m−n+2 fails: r={}, 2m−n+2={}",
                self.r,
                self.unknot_bound()
            )))
        }
    }
}

fn is_iso(m: &Matrix) -> bool {
    m.rows() == m.cols() && m.rank() == m.rows()
}

pub fn analyze(problem: &EmbeddingProblem) -> Result<Analysis> {
    let r_alg = &problem.ambient;
    let phi = problem.phi_module()?;
    let hs = phi.source.cohomology();
    let ht = phi.target.cohomology();
    let window = r_alg.window().union(&phi.target.window());
    let m = ht.dims().keys().copied().filter(|&d| d >= 0).max().unwrap_or(0);
    let mut r = window.hi;
    let mut r_finite = false;
    for i in 0.max(window.lo)..=window.hi {
        let h = phi.induced(&hs, &ht, i);
        if !is_iso(&h) {
            r_finite = true;
            r = if h.rank() == h.cols() { i } else { i - 1 };
            break;
        }
    }
    let h1 = phi.induced(&hs, &ht, 1);
    Ok(Analysis {
        n: problem.n,
        m,
        r,
        r_finite,
        pd: r_alg.check_poincare_duality(problem.n),
        ambient_connected: r_alg.is_connected(),
        h1_injective: h1.rank() == h1.cols(),
        components: problem.branches.len(),
    })
}

/// Dimension table, products and `H(W)`-action ranks of a cohomology
/// algebra; the basis-independent data compared across constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTable {
    pub dims: BTreeMap<i64, usize>,
    /// Rank of `H^p ⊗ H^q -> H^{p+q}` for `0 < p ≤ q`; absent when undetermined.
    pub products: Option<BTreeMap<(i64, i64), usize>>,
    /// Rank of `H^p(W) ⊗ H^q -> H^{p+q}` for `p > 0`.
    pub action: BTreeMap<(i64, i64), usize>,
    /// Why `products` is absent.
    pub undetermined: Option<String>,
}

impl CanonicalTable {
    pub fn dims_text(&self) -> String {
        format_dims(&self.dims)
    }

    /// One-line summary, e.g. `H^*(C): deg 0:1, deg 3:1; all positive products zero`.
    pub fn summary(&self, name: &str) -> String {
        let tail = match &self.products {
            None => format!(
                "algebra undetermined ({})",
                self.undetermined.as_deref().unwrap_or("no model")
            ),
            Some(p) if p.values().all(|&r| r == 0) => "all positive products zero".to_string(),
            Some(p) => {
                let parts: Vec<String> = p
                    .iter()
                    .filter(|(_, &r)| r > 0)
                    .map(|((a, b), r)| format!("H^{a}·H^{b} rank {r}"))
                    .collect();
                format!("products: {}", parts.join(", "))
            }
        };
        format!("H^*({name}): {}; {tail}", self.dims_text())
    }

    pub fn action_text(&self) -> String {
        let parts: Vec<String> = self
            .action
            .iter()
            .filter(|(_, &r)| r > 0)
            .map(|((a, b), r)| format!("H^{a}(W)·H^{b} rank {r}"))
            .collect();
        if parts.is_empty() {
            "H^*(W)-action: positive degrees act by zero".into()
        } else {
            format!("H^*(W)-action: {}", parts.join(", "))
        }
    }
}

pub fn format_dims(dims: &BTreeMap<i64, usize>) -> String {
    let parts: Vec<String> = dims
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(d, n)| format!("deg {d}:{n}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

fn span_rank(field: Field, dim: usize, vectors: &[Vector]) -> usize {
    if dim == 0 {
        0
    } else {
        independent_subset(field, dim, vectors).len()
    }
}

/// Product ranks of an algebra with zero differential.
fn product_ranks(h: &Algebra) -> BTreeMap<(i64, i64), usize> {
    let field = h.field();
    let dims = h.space().dims();
    let mut out = BTreeMap::new();
    for (&p, &dp) in &dims {
        for (&q, &dq) in &dims {
            if p <= 0 || q < p || dp == 0 || dq == 0 {
                continue;
            }
            let mut vs = Vec::new();
            for i in 0..dp {
                for j in 0..dq {
                    vs.push(h.product.basis(p, i, q, j));
                }
            }
            out.insert((p, q), span_rank(field, h.dim(p + q), &vs));
        }
    }
    out
}

/// Dims and product ranks of `H(A)`; the action table is left empty.
pub fn cohomology_table(a: &Cdga) -> CanonicalTable {
    let (h, hc) = a.cohomology_algebra();
    CanonicalTable {
        dims: hc.dims().into_iter().filter(|(_, v)| *v > 0).collect(),
        products: Some(product_ranks(&h)),
        action: BTreeMap::new(),
        undetermined: None,
    }
}

/// Action ranks of `H(R)` on the cohomology of an `R`-module.
fn module_action_ranks(hr: &Cohomology, module: &DgModule, hm: &Cohomology) -> BTreeMap<(i64, i64), usize> {
    let field = module.field();
    let mut out = BTreeMap::new();
    for (&p, &dp) in &hr.dims() {
        if p <= 0 || dp == 0 {
            continue;
        }
        for (&q, &dq) in &hm.dims() {
            if dq == 0 {
                continue;
            }
            let mut vs = Vec::new();
            for w in hr.representatives(p) {
                for c in hm.representatives(q) {
                    let v = module.act(p, w, q, c);
                    vs.push(hm.class_of(p + q, &v));
                }
            }
            out.insert((p, q), span_rank(field, hm.dim(p + q), &vs));
        }
    }
    out
}

/// `H̃^q(S^n ∖ P) ≅ H̃_{n−q−1}(P)`, returned as unreduced cohomology dims.
pub fn alexander_oracle(reduced_homology: &BTreeMap<i64, usize>, n: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    for (&i, &d) in reduced_homology {
        if d > 0 {
            *out.entry(n - i - 1).or_insert(0) += d;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// Reduced rational homology dims of `P` read off a model's cohomology.
pub fn reduced_homology(h: &Cohomology) -> BTreeMap<i64, usize> {
    let mut dims = h.dims();
    if let Some(d0) = dims.get_mut(&0) {
        *d0 = d0.saturating_sub(1);
    }
    dims.retain(|_, v| *v > 0);
    dims
}

/// Is the cohomology of the ambient model that of a sphere of dimension `n`?
pub fn ambient_is_sphere(r: &Cdga, n: i64) -> bool {
    r.cohomology().dims() == [(0, 1), (n, 1)].into_iter().collect()
}

/// `f` induced on `X/sub -> Y` (or `Y/I` through `target_projection`).
fn descend_map(
    f: &GradedMap,
    sub: &GradedSubspace,
    source: &GradedSpace,
    target_projection: Option<&GradedMap>,
    target: &GradedSpace,
) -> Result<GradedMap> {
    let project = |d: i64, v: Vector| -> Vector {
        match target_projection {
            Some(p) => p.apply(d, &v),
            None => v,
        }
    };
    let field = f.field();
    let shift = f.shift();
    let mut blocks = BTreeMap::new();
    for d in source.window().degrees() {
        for b in sub.basis(d) {
            let img = project(d + shift, f.apply(d, b));
            if img.iter().any(|x| !x.is_zero()) {
                return Err(Error::hypothesis(format!(
                    "map does not vanish on the truncation in degree {d}"
                )));
            }
        }
        let cols: Vec<Vector> = sub
            .complement(d)
            .iter()
            .map(|&c| project(d + shift, f.block(d).column(c)))
            .collect();
        blocks.insert(d, Matrix::from_columns(field, target.dim(d + shift), &cols));
    }
    GradedMap::new(source.clone(), target.clone(), shift, blocks)
}

/// `A` divided by its truncation at `cut`; requires `H^{>cut}(A) = 0`.
fn normalize(a: &Arc<Cdga>, cut: i64) -> Result<(Arc<Cdga>, GradedSubspace, GradedMap)> {
    let h = a.cohomology();
    if let Some((&d, _)) = h.dims().iter().find(|(&d, _)| d > cut) {
        return Err(Error::hypothesis(format!("{}: H^{d} ≠ 0 above degree {cut}", a.name)));
    }
    let ideal = a.truncation_ideal(cut);
    if ideal.is_zero() {
        return Ok((a.clone(), ideal, GradedMap::identity(a.space())));
    }
    let (q, p) = a.quotient(&ideal, &a.name)?;
    let q = Arc::new(q);
    let m = CdgaMorphism::new(a.clone(), q.clone(), p.clone())?;
    if !m.is_quasi_isomorphism() {
        return Err(Error::Internal(format!("{}: normalization is not a quasi-isomorphism", a.name)));
    }
    Ok((q, ideal, p))
}

fn descend_morphism(
    phi: &CdgaMorphism,
    source: &Arc<Cdga>,
    ideal: &GradedSubspace,
    target: &Arc<Cdga>,
    projection: &GradedMap,
) -> Result<CdgaMorphism> {
    let map = descend_map(&phi.map, ideal, source.space(), Some(projection), target.space())
        .map_err(|_| Error::hypothesis("φ does not descend to the truncated models"))?;
    CdgaMorphism::new(source.clone(), target.clone(), map)
}

/// Shifted duals of the branches resolved over `R`, their top-degree maps,
/// and the sum `ψ: D -> R` after truncating `D` above `n+1`.
#[derive(Clone, Debug)]
pub struct ResolvedDual {
    pub generators: Vec<(String, i64)>,
    pub branch_maps: Vec<TopDegreeMap>,
    pub d: Arc<DgModule>,
    pub psi: ModuleMap,
}

pub fn resolve_duals(problem: &EmbeddingProblem) -> Result<ResolvedDual> {
    let n = problem.n;
    let r = problem.ambient_module();
    let mut modules = Vec::new();
    let mut branch_maps = Vec::new();
    let mut generators = Vec::new();
    for (b, q) in problem.branches.iter().zip(problem.branch_modules()?) {
        let m = Arc::new(q.shifted_dual(n).with_name(&format!("s^-{n}#{}", b.name)));
        let res = semifree_resolution(&m, true, n + 2)?;
        for g in &res.generators {
            generators.push((format!("{}:{}", b.name, g.label), g.degree));
        }
        let t = construct_top_degree(&res.module, &r, n, true)?;
        modules.push(res.module.clone());
        branch_maps.push(t);
    }
    let d = if modules.len() == 1 {
        modules[0].clone()
    } else {
        let refs: Vec<&DgModule> = modules.iter().map(|m| m.as_ref()).collect();
        Arc::new(DgModule::direct_sum("D", &refs)?)
    };
    let mut blocks = BTreeMap::new();
    for deg in d.window().degrees() {
        let mut acc: Option<Matrix> = None;
        for t in &branch_maps {
            let blk = t.map.map.block(deg);
            acc = Some(match acc {
                None => blk,
                Some(a) => a.hstack(&blk),
            });
        }
        blocks.insert(deg, acc.expect("nonempty"));
    }
    let psi = ModuleMap::new(d.clone(), r.clone(), GradedMap::new(d.space().clone(), r.space().clone(), 0, blocks)?)?;
    let trunc = truncate_module(&d, n + 1)?;
    let map = descend_map(&psi.map, &trunc.sub, trunc.quotient.space(), None, r.space())?;
    let psi = ModuleMap::new(trunc.quotient.clone(), r, map)?;
    Ok(ResolvedDual {
        generators,
        branch_maps,
        d: trunc.quotient,
        psi,
    })
}

/// The CDGA constructions model rational homotopy types only.
fn require_rational(problem: &EmbeddingProblem) -> Result<()> {
    match problem.field() {
        Field::Rational => Ok(()),
        f => Err(Error::invalid(format!(
            "CDGA models need rational coefficients, not {f}; dgmodule-square, lefschetz and gysin accept F_p"
        ))),
    }
}

fn require_low_vanishing(d: &DgModule, n: i64, m: i64) -> Result<()> {
    if let Some(k) = d.window().degrees().find(|&k| k < n - m && d.dim(k) != 0) {
        return Err(Error::hypothesis(format!(
            "D^{{<n−m}} = 0 fails: D is nonzero in degree {k}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ComplementResult {
    pub analysis: Analysis,
    pub resolved: ResolvedDual,
    pub cone: MappingConeAlgebra,
    pub truncation: TruncationIdeal,
    pub quotient: MappingConeAlgebra,
    pub lambda: CdgaMorphism,
    pub model: Arc<Cdga>,
    pub cohomology: Arc<Cdga>,
    pub table: CanonicalTable,
    /// Alexander-duality prediction when the ambient model is a sphere.
    pub oracle: Option<BTreeMap<i64, usize>>,
}

/// CDGA model `λ: R -> (R ⊕_ψ sD)/L` of the complement under the
/// unknotting condition.
pub fn complement_model(problem: &EmbeddingProblem) -> Result<ComplementResult> {
    require_rational(problem)?;
    let analysis = analyze(problem)?;
    let (n, m, r) = (analysis.n, analysis.m, analysis.r);
    if !analysis.ambient_connected {
        return Err(Error::hypothesis(format!("{} is not connected", problem.ambient.name)));
    }
    analysis.require_pd()?;
    analysis.require_codimension()?;
    analysis.require_unknotting()?;
    let resolved = resolve_duals(problem)?;
    require_low_vanishing(&resolved.d, n, m)?;
    let cone = semi_trivial_cone(&resolved.psi, "R⊕sD")?;
    let truncation = build_acyclic_truncation(&cone, n - r)?;
    let quotient = truncated_cone(&cone, &truncation, n - m - 1, n - 2 * m + r - 1, "C")?;
    let lambda = quotient.inclusion()?;
    let model = lambda.target.clone();
    let (h, hc) = model.cohomology_algebra();
    let hr = problem.ambient.cohomology();
    let field = problem.field();
    let mut action = BTreeMap::new();
    for (&p, &dp) in &hr.dims() {
        if p <= 0 || dp == 0 {
            continue;
        }
        for (&q, &dq) in &hc.dims() {
            if dq == 0 {
                continue;
            }
            let mut vs = Vec::new();
            for w in hr.representatives(p) {
                let lw = lambda.map.apply(p, w);
                for c in hc.representatives(q) {
                    vs.push(hc.class_of(p + q, &model.mul(p, &lw, q, c)));
                }
            }
            action.insert((p, q), span_rank(field, hc.dim(p + q), &vs));
        }
    }
    let table = CanonicalTable {
        dims: hc.dims().into_iter().filter(|(_, v)| *v > 0).collect(),
        products: Some(product_ranks(&h)),
        action,
        undetermined: None,
    };
    let oracle = if ambient_is_sphere(&problem.ambient, n) {
        Some(alexander_oracle(&reduced_homology(&problem.target_module()?.cohomology()), n))
    } else {
        None
    };
    Ok(ComplementResult {
        analysis,
        resolved,
        cone,
        truncation,
        quotient,
        lambda,
        model,
        cohomology: Arc::new(h),
        table,
        oracle,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareKind {
    DgModule,
    StableCdga,
    Punctured,
}

#[derive(Clone, Debug)]
pub struct Corner {
    pub label: String,
    pub complex: CochainComplex,
    pub algebra: Option<Arc<Cdga>>,
}

impl Corner {
    fn module(label: &str, m: &DgModule) -> Corner {
        Corner {
            label: label.to_string(),
            complex: m.complex.clone(),
            algebra: None,
        }
    }

    fn algebra(label: &str, a: &Arc<Cdga>) -> Corner {
        Corner {
            label: label.to_string(),
            complex: a.complex.clone(),
            algebra: Some(a.clone()),
        }
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.complex.cohomology().dims().into_iter().filter(|(_, v)| *v > 0).collect()
    }

    fn euler(&self) -> i64 {
        self.dims()
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Commutative square: `top: TL -> TR`, `left: TL -> BL`, `right: TR -> BR`,
/// `bottom: BL -> BR`.
#[derive(Clone, Debug)]
pub struct SquareResult {
    pub kind: SquareKind,
    pub top_left: Corner,
    pub top_right: Corner,
    pub bottom_left: Corner,
    pub bottom_right: Corner,
    pub top: GradedMap,
    pub left: GradedMap,
    pub right: GradedMap,
    pub bottom: GradedMap,
    pub commutes: bool,
    /// Alternating sums of the four corners balance.
    pub euler_consistent: bool,
    pub leibniz: Vec<(String, LeibnizReport)>,
    pub notes: Vec<String>,
    /// Does the bottom-left match the Alexander-duality prediction?
    pub oracle_match: Option<bool>,
}

impl SquareResult {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: SquareKind,
        corners: [Corner; 4],
        top: GradedMap,
        left: GradedMap,
        right: GradedMap,
        bottom: GradedMap,
        leibniz: Vec<(String, LeibnizReport)>,
        notes: Vec<String>,
    ) -> Result<SquareResult> {
        let [tl, tr, bl, br] = corners;
        let a = right.compose(&top);
        let b = bottom.compose(&left);
        let commutes = tl
            .complex
            .window()
            .degrees()
            .all(|d| a.block(d) == b.block(d));
        if !commutes {
            return Err(Error::Internal("square does not commute".into()));
        }
        let euler_consistent = tl.euler() + br.euler() == tr.euler() + bl.euler();
        Ok(SquareResult {
            kind,
            top_left: tl,
            top_right: tr,
            bottom_left: bl,
            bottom_right: br,
            top,
            left,
            right,
            bottom,
            commutes,
            euler_consistent,
            leibniz,
            notes,
            oracle_match: None,
        })
    }

    pub fn corners(&self) -> [&Corner; 4] {
        [&self.top_left, &self.top_right, &self.bottom_left, &self.bottom_right]
    }
}

/// Module-level square `R -> Q`, `R ⊕_ψ sD -> Q ⊕_{φψ} sD`, for any
/// number of components.
pub fn dgmodule_square(problem: &EmbeddingProblem) -> Result<SquareResult> {
    let analysis = analyze(problem)?;
    analysis.require_pd()?;
    let resolved = resolve_duals(problem)?;
    let phi = problem.phi_module()?;
    let r = phi.source.clone();
    let q = phi.target.clone();
    let psi = &resolved.psi;
    let phipsi = ModuleMap::new(resolved.d.clone(), q.clone(), phi.map.compose(&psi.map))?;
    let bl = Arc::new(module_cone(psi, "R⊕sD")?);
    let br = Arc::new(module_cone(&phipsi, "Q⊕sD")?);
    let left = cone_inclusion(r.space(), bl.space());
    let right = cone_inclusion(q.space(), br.space());
    let bottom = cone_comparison(bl.space(), br.space(), r.space(), q.space(), &phi.map)?;
    ModuleMap::new(bl.clone(), br.clone(), bottom.clone())?;
    ModuleMap::new(r.clone(), bl.clone(), left.clone())?;
    ModuleMap::new(q.clone(), br.clone(), right.clone())?;
    let mut notes = vec![format!(
        "D generators: {}",
        resolved
            .generators
            .iter()
            .map(|(l, d)| format!("{l} (deg {d})"))
            .collect::<Vec<_>>()
            .join(", ")
    )];
    notes.push(format!("components: {}", problem.branches.len()));
    let mut sq = SquareResult::assemble(
        SquareKind::DgModule,
        [
            Corner::module("R", &r),
            Corner::module("Q", &q),
            Corner::module("R⊕_ψ sD", &bl),
            Corner::module("Q⊕_φψ sD", &br),
        ],
        phi.map.clone(),
        left,
        right,
        bottom,
        Vec::new(),
        notes,
    )?;
    if ambient_is_sphere(&problem.ambient, problem.n) {
        let oracle = alexander_oracle(&reduced_homology(&q.cohomology()), problem.n);
        sq.oracle_match = Some(sq.bottom_left.dims() == oracle);
    }
    Ok(sq)
}

/// CDGA square in the stable range, with `R^{>n} = 0`, `Q^{>m+2} = 0`
/// and `D` a `Q`-module concentrated in `[n−m, n+1]`.
pub fn stable_square(problem: &EmbeddingProblem) -> Result<SquareResult> {
    require_rational(problem)?;
    let branch = problem.single()?;
    let analysis = analyze(problem)?;
    let (n, m) = (analysis.n, analysis.m);
    if !analysis.ambient_connected {
        return Err(Error::hypothesis(format!("{} is not connected", problem.ambient.name)));
    }
    analysis.require_pd()?;
    if !(analysis.stable() || analysis.stable_alt()) {
        return Err(Error::hypothesis(format!(
            "stable range fails: needs n ≥ 2m+3 with H^1(φ) injective, or n ≥ 2m+4 (n={n}, m={m})"
        )));
    }
    let (r, ideal_r, _) = normalize(&problem.ambient, n)?;
    let (q, _, proj_q) = normalize(&branch.algebra, m + 2)?;
    let phi = descend_morphism(&branch.phi, &r, &ideal_r, &q, &proj_q)?;
    let mut notes = Vec::new();
    let mdl = Arc::new(DgModule::regular(q.clone()).shifted_dual(n).with_name(&format!("s^-{n}#{}", branch.name)));
    let res = semifree_resolution(&mdl, true, n + 2)?;
    let trunc = truncate_module(&res.module, n + 1)?;
    let d = trunc.quotient.clone();
    require_low_vanishing(&d, n, m)?;
    notes.push(format!(
        "D over {}: generators {}",
        q.name,
        res.generators
            .iter()
            .map(|g| format!("{} (deg {})", g.label, g.degree))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let d_r = Arc::new(d.restrict_scalars(&phi)?);
    let r_mod = Arc::new(DgModule::regular(r.clone()));
    let psi = construct_top_degree(&d_r, &r_mod, n, false)?;
    if psi.route == TopDegreeRoute::Resolved {
        return Err(Error::hypothesis(
            "the top-degree map exists only on an R-semifree replacement of D; square not assembled",
        ));
    }
    notes.push("ψ: direct solve on the Q-module D".into());
    let phipsi = phi.map.compose(&psi.map.map);
    if !phipsi.is_zero() {
        return Err(Error::Internal("φψ ≠ 0 in the stable range".into()));
    }
    notes.push("φψ = 0 for degree reasons".into());
    let q_mod = Arc::new(DgModule::regular(q.clone()));
    let zero = ModuleMap::new(d.clone(), q_mod, GradedMap::zero(d.space(), q.space(), 0))?;
    let cone_r = semi_trivial_cone(&psi.map, "R⊕_ψ sD")?;
    let cone_q = semi_trivial_cone(&zero, "Q⊕sD")?;
    let k = n - m - 1;
    for c in [&cone_r, &cone_q] {
        if !c.bounds().admits(k) {
            return Err(Error::Internal(format!("{}: degree bounds fail for k={k}", c.name())));
        }
    }
    notes.push(format!("degree bounds hold with k={k}"));
    let a_bl = cone_r.cdga()?;
    let a_br = cone_q.cdga()?;
    let left = cone_r.inclusion()?;
    let right = cone_q.inclusion()?;
    let bottom = cone_comparison(a_bl.space(), a_br.space(), r.space(), q.space(), &phi.map)?;
    let bottom = CdgaMorphism::new(a_bl.clone(), a_br.clone(), bottom)?;
    let leibniz = vec![
        (a_bl.name.clone(), cone_r.leibniz.clone()),
        (a_br.name.clone(), cone_q.leibniz.clone()),
    ];
    let mut sq = SquareResult::assemble(
        SquareKind::StableCdga,
        [
            Corner::algebra("R", &r),
            Corner::algebra("Q", &q),
            Corner::algebra("R⊕_ψ sD", &a_bl),
            Corner::algebra("Q⊕sD", &a_br),
        ],
        phi.map.clone(),
        left.map,
        right.map,
        bottom.map,
        leibniz,
        notes,
    )?;
    if ambient_is_sphere(&problem.ambient, n) {
        let oracle = alexander_oracle(&reduced_homology(&branch.algebra.cohomology()), n);
        sq.oracle_match = Some(sq.bottom_left.dims() == oracle);
    }
    Ok(sq)
}

/// Square of truncated models with the top cell removed from the
/// boundary; needs `r ≥ 1`, unknotting, `n ≥ m+r+2`, `Q` `(r−1)`-connected
/// and `R` `r`-connected.
#[derive(Clone, Debug)]
pub struct PuncturedResult {
    pub square: SquareResult,
    /// `R ⊕_ψ sD -> (R ⊕_ψ sD)/(I ⊕ sK)` is a quasi-isomorphism.
    pub ambient_side_quasi_iso: bool,
    /// Kernel dims of `H(Q ⊕_φψ sD) -> H((Q ⊕_φψ sD)/(J ⊕ sK))`.
    pub killed: BTreeMap<i64, usize>,
    /// Surjective on cohomology in every degree.
    pub embedded_side_onto: bool,
    pub boundary_attested: bool,
}

pub fn punctured_square(problem: &EmbeddingProblem, boundary_attested: bool) -> Result<PuncturedResult> {
    require_rational(problem)?;
    let branch = problem.single()?;
    let analysis = analyze(problem)?;
    let (n, m, r) = (analysis.n, analysis.m, analysis.r);
    analysis.require_pd()?;
    if r < 1 {
        return Err(Error::hypothesis(format!("r positive fails: r={r}")));
    }
    analysis.require_unknotting()?;
    if n < m + r + 2 {
        return Err(Error::hypothesis(format!("n ≥ m+r+2 fails: n={n}, m+r+2={}", m + r + 2)));
    }
    let hq = branch.algebra.cohomology();
    if hq.dim(0) != 1 || (1..r).any(|i| hq.dim(i) != 0) {
        return Err(Error::hypothesis(format!("Q is not (r−1)-connected for r={r}")));
    }
    let hr = problem.ambient.cohomology();
    if hr.dim(0) != 1 || (1..=r).any(|i| hr.dim(i) != 0) {
        return Err(Error::hypothesis(format!("R is not r-connected for r={r}")));
    }
    let ra = problem.ambient.clone();
    let qa = branch.algebra.clone();
    let phi = &branch.phi;
    // D over Q, truncated above n+1
    let mdl = Arc::new(DgModule::regular(qa.clone()).shifted_dual(n).with_name(&format!("s^-{n}#{}", branch.name)));
    let res = semifree_resolution(&mdl, true, n + 2)?;
    let d = truncate_module(&res.module, n + 1)?.quotient;
    require_low_vanishing(&d, n, m)?;
    let d_r = Arc::new(d.restrict_scalars(phi)?);
    let r_mod = problem.ambient_module();
    let psi = construct_top_degree(&d_r, &r_mod, n, false)?;
    if psi.route == TopDegreeRoute::Resolved {
        return Err(Error::hypothesis("the top-degree map exists only on an R-semifree replacement of D"));
    }
    // truncations
    let ideal_i = ra.truncation_ideal(n - r - 1);
    let ideal_j = qa.truncation_ideal(m);
    let k_trunc = truncate_module(&d, n - r)?;
    let (rbar, proj_i) = ra.quotient(&ideal_i, &format!("{}/I", ra.name))?;
    let (qbar, proj_j) = qa.quotient(&ideal_j, &format!("{}/J", qa.name))?;
    let (rbar, qbar) = (Arc::new(rbar), Arc::new(qbar));
    let phibar = descend_morphism(phi, &rbar, &ideal_i, &qbar, &proj_j)?;
    let dbar_q = Arc::new(k_trunc.quotient.descend(qbar.clone(), &ideal_j)?);
    let dbar_r = Arc::new(dbar_q.restrict_scalars(&phibar)?);
    let psibar_map = descend_map(&psi.map.map, &k_trunc.sub, dbar_r.space(), Some(&proj_i), rbar.space())?;
    let rbar_mod = Arc::new(DgModule::regular(rbar.clone()));
    let qbar_mod = Arc::new(DgModule::regular(qbar.clone()));
    let psibar = ModuleMap::new(dbar_r.clone(), rbar_mod, psibar_map)?;
    let phipsibar = ModuleMap::new(dbar_q.clone(), qbar_mod, phibar.map.compose(&psibar.map))?;
    let cone_r = semi_trivial_cone(&psibar, "(R⊕_ψ sD)/(I⊕sK)")?;
    let cone_q = semi_trivial_cone(&phipsibar, "(Q⊕_φψ sD)/(J⊕sK)")?;
    let a_bl = cone_r.cdga()?;
    let a_br = cone_q.cdga()?;
    let left = cone_r.inclusion()?;
    let right = cone_q.inclusion()?;
    let bottom = cone_comparison(a_bl.space(), a_br.space(), rbar.space(), qbar.space(), &phibar.map)?;
    let bottom = CdgaMorphism::new(a_bl.clone(), a_br.clone(), bottom)?;
    // comparison with the untruncated cones
    let full_r = CochainComplex::mapping_cone(&d_r.complex, &ra.complex, &psi.map.map)?;
    let phipsi = phi.map.compose(&psi.map.map);
    let full_q = CochainComplex::mapping_cone(&d.complex, &qa.complex, &phipsi)?;
    let pr_r = cone_projection_map(&full_r, a_bl.space(), ra.space(), &proj_i, &k_trunc.projection.map)?;
    let pr_q = cone_projection_map(&full_q, a_br.space(), qa.space(), &proj_j, &k_trunc.projection.map)?;
    CochainComplex::check_chain_map(&full_r, &a_bl.complex, &pr_r)?;
    CochainComplex::check_chain_map(&full_q, &a_br.complex, &pr_q)?;
    let (hs, ht) = (full_r.cohomology(), a_bl.complex.cohomology());
    let window = full_r.window().union(&a_bl.window());
    let ambient_side_quasi_iso = window
        .degrees()
        .all(|k| is_iso(&induced(&pr_r, &full_r, &hs, &ht, k)));
    let (hs, ht) = (full_q.cohomology(), a_br.complex.cohomology());
    let mut killed = BTreeMap::new();
    let mut embedded_side_onto = true;
    for k in full_q.window().union(&a_br.window()).degrees() {
        let h = induced(&pr_q, &full_q, &hs, &ht, k);
        let rank = h.rank();
        if rank < h.rows() {
            embedded_side_onto = false;
        }
        if h.cols() > rank {
            killed.insert(k, h.cols() - rank);
        }
    }
    let mut notes = vec![
        format!("I: truncation of R above degree {}", n - r - 1),
        format!("J: truncation of Q above degree {m}"),
        format!("K: truncation of D above degree {}", n - r),
        format!(
            "R-side projection quasi-isomorphism : {}",
            if ambient_side_quasi_iso { "PASS" } else { "FAIL" }
        ),
        format!("Q-side projection kills: {}", format_dims(&killed)),
    ];
    notes.push(if boundary_attested {
        "boundary simply connected: attested by user".into()
    } else {
        "boundary simply connected: NOT attested; conclusions are conditional".into()
    });
    let leibniz = vec![
        (a_bl.name.clone(), cone_r.leibniz.clone()),
        (a_br.name.clone(), cone_q.leibniz.clone()),
    ];
    let square = SquareResult::assemble(
        SquareKind::Punctured,
        [
            Corner::algebra("R/I", &rbar),
            Corner::algebra("Q/J", &qbar),
            Corner::algebra("(R⊕_ψ sD)/(I⊕sK)", &a_bl),
            Corner::algebra("(Q⊕_φψ sD)/(J⊕sK)", &a_br),
        ],
        phibar.map.clone(),
        left.map,
        right.map,
        bottom.map,
        leibniz,
        notes,
    )?;
    Ok(PuncturedResult {
        square,
        ambient_side_quasi_iso,
        killed,
        embedded_side_onto,
        boundary_attested,
    })
}

fn induced(f: &GradedMap, src: &CochainComplex, hs: &Cohomology, ht: &Cohomology, k: i64) -> Matrix {
    crate::graded::induced_map(f, src.dim(k), hs, ht, k)
}

/// `Y ⊕ sX -> Y/I ⊕ s(X/K)` from the two projections.
fn cone_projection_map(
    full: &CochainComplex,
    target: &GradedSpace,
    y: &GradedSpace,
    proj_y: &GradedMap,
    proj_x: &GradedMap,
) -> Result<GradedMap> {
    let field = full.field();
    let mut blocks = BTreeMap::new();
    for d in full.window().degrees() {
        let (y0, ty) = (y.dim(d), proj_y.target().dim(d));
        let mut m = Matrix::zeros(field, target.dim(d), full.dim(d));
        let py = proj_y.block(d);
        for r in 0..ty {
            for c in 0..y0 {
                m[(r, c)] = py[(r, c)].clone();
            }
        }
        let px = proj_x.block(d + 1);
        for r in 0..px.rows() {
            for c in 0..px.cols() {
                m[(ty + r, y0 + c)] = px[(r, c)].clone();
            }
        }
        blocks.insert(d, m);
    }
    GradedMap::new(full.space().clone(), target.clone(), 0, blocks)
}

/// Cohomology of the complement as an `H(W)`-module from the cone of
/// `s^{-n}#φ`, and its algebra structure when the unknotting condition holds.
#[derive(Clone, Debug)]
pub struct LefschetzResult {
    pub analysis: Analysis,
    pub module: Arc<DgModule>,
    pub cohomology: Cohomology,
    /// Present when the algebra is determined.
    pub algebra: Option<Arc<Cdga>>,
    pub table: CanonicalTable,
    /// The shifted dual of `φ` certified top-degree (single component with
    /// `H^0(φ)` an isomorphism).
    pub top_degree_certified: bool,
}

pub fn lefschetz(problem: &EmbeddingProblem) -> Result<LefschetzResult> {
    let analysis = analyze(problem)?;
    analysis.require_pd()?;
    let n = problem.n;
    let phi = problem.phi_module()?;
    let dual = suspend_map(&dual_map(&phi)?, -n)?;
    let top_degree_certified = match problem.branches.as_slice() {
        [b] => dual_morphism_top_degree(&b.phi, n).is_ok(),
        _ => false,
    };
    let module = Arc::new(module_cone(&dual, "C")?);
    let hc = module.cohomology();
    let hr = problem.ambient.cohomology();
    let action = module_action_ranks(&hr, &module, &hc);
    let dims: BTreeMap<i64, usize> = hc.dims().into_iter().filter(|(_, v)| *v > 0).collect();
    let undetermined = if !analysis.unknotting() {
        Some("unknotting fails")
    } else if problem.field() != Field::Rational {
        Some("needs rational coefficients")
    } else if hc.dim(0) != 1 || dims.keys().any(|&d| d < 0) {
        Some("complement not connected")
    } else {
        None
    };
    let algebra = match undetermined {
        None => Some(Arc::new(assemble_algebra(&module, &hr, &hc, n - analysis.m - 1)?)),
        Some(_) => None,
    };
    let table = CanonicalTable {
        dims,
        products: algebra.as_ref().map(|a| product_ranks(a)),
        action,
        undetermined: undetermined.map(str::to_string),
    };
    Ok(LefschetzResult {
        analysis,
        module,
        cohomology: hc,
        algebra,
        table,
        top_degree_certified,
    })
}

/// Classes of degree `< threshold` are `w·u₀` for `w ∈ H(W)`; they multiply
/// through the module action. Products of two classes of degree
/// `≥ threshold` vanish.
fn assemble_algebra(module: &DgModule, hr: &Cohomology, hc: &Cohomology, threshold: i64) -> Result<Cdga> {
    let field = module.field();
    let dims: BTreeMap<i64, usize> = hc.dims().into_iter().filter(|(_, v)| *v > 0).collect();
    let hi = dims.keys().copied().max().unwrap_or(0).max(0);
    let window = DegreeWindow::new(0, hi)?;
    let labels = window
        .degrees()
        .map(|d| (d, (0..hc.dim(d)).map(|i| format!("c{d}_{i}")).collect::<Vec<_>>()))
        .collect();
    let space = GradedSpace::new(field, window, labels)?;
    let u0 = hc.representatives(0)[0].clone();
    // x = w·u0 for low classes
    let lift = |p: i64, x: &Vector| -> Result<Vector> {
        let cols: Vec<Vector> = hr
            .representatives(p)
            .iter()
            .map(|w| hc.class_of(p, &module.act(p, w, 0, &u0)))
            .collect();
        let coeffs = if hc.dim(p) == 0 {
            Vec::new()
        } else {
            Matrix::from_columns(field, hc.dim(p), &cols)
                .solve(x)
                .ok_or_else(|| Error::Internal(format!("H^{p}(W) -> H^{p}(C) is not onto")))?
        };
        let mut w = zero_vector(field, module.algebra.dim(p));
        for (c, rep) in coeffs.iter().zip(hr.representatives(p)) {
            axpy(&mut w, c, rep);
        }
        Ok(w)
    };
    let mut product = Bilinear::zero(&space, &space, &space);
    for p in window.degrees() {
        for q in window.degrees() {
            if p + q > hi {
                continue;
            }
            for i in 0..hc.dim(p) {
                for j in 0..hc.dim(q) {
                    let x = crate::linalg::unit_vector(field, hc.dim(p), i);
                    let y = crate::linalg::unit_vector(field, hc.dim(q), j);
                    let v = if p < threshold {
                        let w = lift(p, &x)?;
                        hc.class_of(p + q, &module.act(p, &w, q, &hc.representatives(q)[j]))
                    } else if q < threshold {
                        let w = lift(q, &y)?;
                        let yx = hc.class_of(p + q, &module.act(q, &w, p, &hc.representatives(p)[i]));
                        crate::linalg::scale_vector(&field.sign(p * q), &yx)
                    } else {
                        zero_vector(field, hc.dim(p + q))
                    };
                    product.set_basis(p, i, q, j, &v);
                }
            }
        }
    }
    let complex = CochainComplex::zero_differential(space);
    Cdga::new(Algebra::explicit("H(C)", complex, 0, product))
        .map_err(|e| Error::Internal(format!("assembled cohomology algebra is invalid: {e}")))
}

/// Cohomological Gysin map of a single component.
#[derive(Clone, Debug)]
pub struct GysinResult {
    pub map: TopDegreeMap,
    /// Codimension `n - m`.
    pub k: i64,
    pub ambient: Arc<Cdga>,
    pub embedded: Arc<Cdga>,
    /// `H(φ)` between the cohomology algebras.
    pub restriction: CdgaMorphism,
}

/// Gysin map of the single component, dimensions read off the models.
pub fn gysin(problem: &EmbeddingProblem) -> Result<GysinResult> {
    let branch = problem.single()?;
    let analysis = analyze(problem)?;
    let cert_w = analysis.require_pd()?;
    let hw = cert_w.cohomology.clone();
    let v = &branch.algebra;
    let m = analysis.m;
    let cert_v = v.check_poincare_duality(m).map_err(|f| {
        Error::hypothesis(format!("{} fails Poincaré duality in dimension {m}: {f}", branch.name))
    })?;
    let hv = cert_v.cohomology.clone();
    let hs = problem.ambient.cohomology();
    let ht = v.cohomology();
    let mut blocks = BTreeMap::new();
    for d in hw.window().degrees() {
        blocks.insert(d, branch.phi.induced(&hs, &ht, d));
    }
    let hf = CdgaMorphism::new(hw.clone(), hv.clone(), GradedMap::new(hw.space().clone(), hv.space().clone(), 0, blocks)?)?;
    let cw = hw.check_poincare_duality(problem.n).map_err(|f| Error::Internal(f.to_string()))?;
    let cv = hv.check_poincare_duality(m).map_err(|f| Error::Internal(f.to_string()))?;
    let k = problem.n - m;
    let map = gysin_map(&hf, &cw, &cv, k)?;
    Ok(GysinResult {
        map,
        k,
        ambient: hw,
        embedded: hv,
        restriction: hf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{q, sphere, truncated_poly};
    use crate::algebra::{explicit_cdga, ExplicitPresentation};

    fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().cloned().collect()
    }

    fn sphere_problem(n: i64, p_alg: Cdga) -> EmbeddingProblem {
        let r = Arc::new(sphere(q(), n, n + 2).renamed("W"));
        let pa = Arc::new(p_alg);
        let phi = CdgaMorphism::from_atom_images(r.clone(), pa.clone(), &BTreeMap::new()).unwrap();
        EmbeddingProblem::new(r, n, vec![Branch { name: pa.name.clone(), algebra: pa, phi }]).unwrap()
    }

    fn wedge(hi: i64) -> Cdga {
        let pres = ExplicitPresentation {
            basis: vec![("1".into(), 0), ("a".into(), 2), ("b".into(), 4)],
            products: vec![],
            differentials: vec![],
            unit: Some("1".into()),
        };
        explicit_cdga("P", q(), &pres, DegreeWindow::new(0, hi).unwrap()).unwrap()
    }

    #[test]
    fn analysis_of_s2_in_s6() {
        let a = analyze(&sphere_problem(6, sphere(q(), 2, 8).renamed("P"))).unwrap();
        assert_eq!((a.m, a.r), (2, 2));
        assert!(a.unknotting() && !a.stable() && a.codimension_ok());
    }

    #[test]
    fn complement_s2_in_s6() {
        let res = complement_model(&sphere_problem(6, sphere(q(), 2, 8).renamed("P"))).unwrap();
        assert_eq!(res.table.dims, dims(&[(0, 1), (3, 1)]));
        assert_eq!(res.oracle.as_ref().unwrap(), &res.table.dims);
        assert_eq!(res.table.summary("C"), "H^*(C): deg 0:1, deg 3:1; all positive products zero");
        assert_eq!(res.truncation.sub.dims(), dims(&[(5, 1), (6, 1)]));
    }

    #[test]
    fn complement_wedge_in_s8() {
        let p = analyze(&sphere_problem(8, wedge(10))).unwrap();
        assert_eq!((p.m, p.r, p.unknot_bound()), (4, 2, 2));
        let res = complement_model(&sphere_problem(8, wedge(10))).unwrap();
        assert_eq!(res.table.dims, dims(&[(0, 1), (3, 1), (5, 1)]));
        assert!(res.table.products.as_ref().unwrap().values().all(|&r| r == 0));
    }

    #[test]
    fn complement_of_point() {
        for n in [2, 3, 5] {
            let res = complement_model(&sphere_problem(n, Cdga::ground(q(), n + 2).renamed("pt"))).unwrap();
            assert_eq!(res.analysis.r, n - 1);
            assert_eq!(res.table.dims, dims(&[(0, 1)]));
        }
    }

    #[test]
    fn lefschetz_agrees_with_complement() {
        for (n, p) in [(6, sphere(q(), 2, 8).renamed("P")), (8, wedge(10)), (8, truncated_poly(q(), 2, 2, 10))] {
            let prob = sphere_problem(n, p);
            let c = complement_model(&prob).unwrap();
            let l = lefschetz(&prob).unwrap();
            assert_eq!(c.table, l.table);
        }
    }

    #[test]
    fn stable_square_s2_in_s9() {
        let sq = stable_square(&sphere_problem(9, sphere(q(), 2, 11).renamed("P"))).unwrap();
        assert_eq!(sq.bottom_right.dims(), dims(&[(0, 1), (2, 1), (6, 1), (8, 1)]));
        assert_eq!(sq.bottom_left.dims(), dims(&[(0, 1), (6, 1)]));
        assert_eq!(sq.oracle_match, Some(true));
        assert!(sq.leibniz.iter().all(|(_, l)| l.passed()));
        assert!(sq.euler_consistent);
        let err = stable_square(&sphere_problem(6, sphere(q(), 2, 8).renamed("P"))).unwrap_err();
        assert!(err.to_string().contains("n ≥ 2m+3"));
    }

    #[test]
    fn punctured_s2_in_s6() {
        let res = punctured_square(&sphere_problem(6, sphere(q(), 2, 8).renamed("P")), true).unwrap();
        assert_eq!(res.square.bottom_right.dims(), dims(&[(0, 1), (2, 1), (3, 1)]));
        assert_eq!(res.square.bottom_left.dims(), dims(&[(0, 1), (3, 1)]));
        assert!(res.ambient_side_quasi_iso);
        assert_eq!(res.killed, dims(&[(5, 1)]));
    }

    #[test]
    fn oracle_rule() {
        assert_eq!(alexander_oracle(&dims(&[(2, 1)]), 6), dims(&[(0, 1), (3, 1)]));
        assert_eq!(alexander_oracle(&dims(&[(0, 1), (7, 2)]), 15), dims(&[(0, 1), (7, 2), (14, 1)]));
    }
}
