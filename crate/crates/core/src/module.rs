//! DG modules over a CDGA: restriction of scalars, duals and suspensions,
//! hom complexes, the chain-map solver, semifree resolutions, truncations.
//!
//! Action conventions, for `a` of degree `p`:
//! * dual: `(a·f)(x) = (-1)^{p|x|} f(a·x)`;
//! * suspension: `a·s^k x = (-1)^{pk} s^k(a·x)`;
//! * degree-`i` module maps satisfy `f(a·m) = (-1)^{pi} a·f(m)` and
//!   `δf = d f - (-1)^i f d`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Bilinear, Cdga, CdgaMorphism};
use crate::error::{Error, Result};
use crate::graded::{
    induced_map, quotient_complex, CochainComplex, Cohomology, DegreeWindow, GradedMap,
    GradedSpace, GradedSubspace,
};
use crate::linalg::{
    axpy, complement_indices, independent_subset, is_zero_vector, scale_vector, unit_vector,
    zero_vector, Field, Matrix, Scalar, Vector,
};

/// Left DG module over a CDGA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    pub name: String,
    pub algebra: Arc<Cdga>,
    pub complex: CochainComplex,
    /// `A^p ⊗ M^q -> M^{p+q}`.
    pub action: Bilinear,
}

pub fn same_algebra(a: &Arc<Cdga>, b: &Arc<Cdga>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl DgModule {
    pub fn new(name: &str, algebra: Arc<Cdga>, complex: CochainComplex, action: Bilinear) -> Result<DgModule> {
        let m = DgModule {
            name: name.to_string(),
            algebra,
            complex,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    /// The algebra as a module over itself.
    pub fn regular(a: Arc<Cdga>) -> DgModule {
        DgModule {
            name: a.name.clone(),
            complex: a.complex.clone(),
            action: a.product.clone(),
            algebra: a,
        }
    }

    /// Zero module on a window.
    pub fn zero(a: Arc<Cdga>, window: DegreeWindow) -> DgModule {
        let space = GradedSpace::zero(a.field(), window);
        DgModule {
            name: "0".into(),
            action: Bilinear::zero(a.space(), &space, &space),
            complex: CochainComplex::zero_differential(space),
            algebra: a,
        }
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn field(&self) -> Field {
        self.complex.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.complex.window()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.complex.dim(k)
    }

    pub fn d(&self, k: i64, v: &[Scalar]) -> Vector {
        self.complex.diff(k).mul_vec(v)
    }

    pub fn act(&self, p: i64, a: &[Scalar], q: i64, m: &[Scalar]) -> Vector {
        self.action.apply(p, a, q, m)
    }

    /// Matrix of `m ↦ a·m` on `M^q`.
    pub fn action_matrix(&self, p: i64, a: &[Scalar], q: i64) -> Matrix {
        self.action.left_multiplication(p, a, q)
    }

    pub fn cohomology(&self) -> Cohomology {
        self.complex.cohomology()
    }

    fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = self.field();
        let u = a.unit_vector();
        let name = &self.name;
        for q in self.window().degrees() {
            for j in 0..self.dim(q) {
                let m = self.space().basis_vector(q, j);
                if self.act(0, &u, q, &m) != m {
                    return Err(Error::invalid(format!("{name}: unit does not act as identity")));
                }
            }
        }
        let hi = self.window().hi;
        for p in a.window().degrees() {
            for i in 0..a.dim(p) {
                let x = a.space().basis_vector(p, i);
                let dx = a.d(p, &x);
                for q in self.window().degrees() {
                    if p + q > hi {
                        continue;
                    }
                    let ax = self.action_matrix(p, &x, q);
                    // Leibniz
                    let lhs = self.complex.diff(p + q).mul(&ax);
                    let t1 = self.action_matrix(p + 1, &dx, q);
                    let t2 = self
                        .action_matrix(p, &x, q + 1)
                        .mul(&self.complex.diff(q))
                        .scale(&f.sign(p));
                    if lhs != t1.add(&t2) {
                        return Err(Error::invalid(format!(
                            "{name}: action of {} violates the Leibniz rule in degree {q}",
                            a.label(p, i)
                        )));
                    }
                    // associativity
                    for r in a.window().degrees() {
                        if p + q + r > hi || r + p > a.window().hi {
                            continue;
                        }
                        for k in 0..a.dim(r) {
                            let y = a.space().basis_vector(r, k);
                            let xy = a.mul(p, &x, r, &y);
                            let lhs = self.action_matrix(p + r, &xy, q);
                            let rhs = ax_after(self, p, &x, r, &y, q);
                            if lhs != rhs {
                                return Err(Error::invalid(format!(
                                    "{name}: action is not associative on ({}, {})",
                                    a.label(p, i),
                                    a.label(r, k)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `M` viewed over `R` along `φ: R -> A`.
    pub fn restrict_scalars(&self, phi: &CdgaMorphism) -> Result<DgModule> {
        if !same_algebra(&phi.target, &self.algebra) {
            return Err(Error::invalid("restriction along a morphism into a different algebra"));
        }
        let r = &phi.source;
        let mut action = Bilinear::zero(r.space(), self.space(), self.space());
        for p in r.window().degrees() {
            for i in 0..r.dim(p) {
                let image = phi.map.apply(p, &r.space().basis_vector(p, i));
                for q in self.window().degrees() {
                    for j in 0..self.dim(q) {
                        let v = self.act(p, &image, q, &self.space().basis_vector(q, j));
                        action.set_basis(p, i, q, j, &v);
                    }
                }
            }
        }
        DgModule::new(&self.name, r.clone(), self.complex.clone(), action)
    }

    /// `#M` with its left action.
    pub fn dual(&self) -> DgModule {
        let complex = self.complex.dual();
        let space = complex.space().clone();
        let a = &self.algebra;
        let f = self.field();
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for p in a.window().degrees() {
            for i in 0..a.dim(p) {
                let x = a.space().basis_vector(p, i);
                for deg in space.window().degrees() {
                    // (#M)^deg = hom(M^{-deg}); target hom(M^{-deg-p})
                    let src = -deg - p;
                    if space.dim(deg + p) == 0 || space.dim(deg) == 0 {
                        continue;
                    }
                    let alpha = self.action_matrix(p, &x, src);
                    let sign = f.sign(p * src);
                    let m = alpha.transpose().scale(&sign);
                    for c in 0..space.dim(deg) {
                        action.set_basis(p, i, deg, c, &m.column(c));
                    }
                }
            }
        }
        DgModule::new(&format!("#{}", self.name), a.clone(), complex, action)
            .expect("dual of a DG module is a DG module")
    }

    /// `s^k M`.
    pub fn suspend(&self, k: i64) -> DgModule {
        let complex = self.complex.suspend(k);
        let space = complex.space().clone();
        let a = &self.algebra;
        let f = self.field();
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for p in a.window().degrees() {
            let sign = f.sign(p * k);
            for i in 0..a.dim(p) {
                let x = a.space().basis_vector(p, i);
                for j in space.window().degrees() {
                    for c in 0..space.dim(j) {
                        let v = self.act(p, &x, j + k, &self.space().basis_vector(j + k, c));
                        action.set_basis(p, i, j, c, &scale_vector(&sign, &v));
                    }
                }
            }
        }
        let name = crate::graded::suspend_label(&self.name, k);
        DgModule::new(&name, a.clone(), complex, action).expect("suspension of a DG module")
    }

    /// `s^{-n} #M`.
    pub fn shifted_dual(&self, n: i64) -> DgModule {
        self.dual().suspend(-n)
    }

    pub fn with_name(mut self, name: &str) -> DgModule {
        self.name = name.to_string();
        self
    }

    /// Same module on a larger (or smaller, if empty there) window.
    pub fn with_window(&self, window: DegreeWindow) -> Result<DgModule> {
        let space = self.space().with_window(window)?;
        let blocks = window.degrees().map(|d| (d, self.complex.diff(d))).collect();
        let complex = CochainComplex::new(space.clone(), blocks)?;
        let a = &self.algebra;
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for p in a.window().degrees() {
            for i in 0..a.dim(p) {
                for q in window.degrees() {
                    for j in 0..space.dim(q) {
                        action.set_basis(p, i, q, j, &self.action.basis(p, i, q, j));
                    }
                }
            }
        }
        DgModule::new(&self.name, a.clone(), complex, action)
    }

    /// Direct sum, summands listed in order within each degree.
    pub fn direct_sum(name: &str, parts: &[&DgModule]) -> Result<DgModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("empty direct sum"))?;
        let a = first.algebra.clone();
        let mut space = GradedSpace::zero(a.field(), first.window());
        for m in parts {
            if !same_algebra(&m.algebra, &a) {
                return Err(Error::invalid("direct sum of modules over different algebras"));
            }
            space = space.direct_sum(m.space());
        }
        let window = space.window();
        let field = a.field();
        let mut blocks = BTreeMap::new();
        for d in window.degrees() {
            let mut m = Matrix::zeros(field, space.dim(d + 1), space.dim(d));
            let (mut r0, mut c0) = (0, 0);
            for part in parts {
                let b = part.complex.diff(d);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m[(r0 + r, c0 + c)] = b[(r, c)].clone();
                    }
                }
                r0 += part.dim(d + 1);
                c0 += part.dim(d);
            }
            blocks.insert(d, m);
        }
        let complex = CochainComplex::new(space.clone(), blocks)?;
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for p in a.window().degrees() {
            for i in 0..a.dim(p) {
                for q in window.degrees() {
                    let (mut in0, mut out0) = (0, 0);
                    for part in parts {
                        for j in 0..part.dim(q) {
                            let v = part.action.basis(p, i, q, j);
                            let mut full = zero_vector(field, space.dim(p + q));
                            for (t, x) in v.iter().enumerate() {
                                full[out0 + t] = x.clone();
                            }
                            action.set_basis(p, i, q, in0 + j, &full);
                        }
                        in0 += part.dim(q);
                        out0 += part.dim(p + q);
                    }
                }
            }
        }
        DgModule::new(name, a, complex, action)
    }

    /// Inclusion of the `idx`-th summand and projection onto it.
    pub fn summand_maps(sum: &Arc<DgModule>, parts: &[Arc<DgModule>], idx: usize) -> Result<(ModuleMap, ModuleMap)> {
        let field = sum.field();
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for d in sum.window().degrees() {
            let off: usize = parts[..idx].iter().map(|p| p.dim(d)).sum();
            let n = parts[idx].dim(d);
            let mut i = Matrix::zeros(field, sum.dim(d), n);
            let mut p = Matrix::zeros(field, n, sum.dim(d));
            for t in 0..n {
                i[(off + t, t)] = field.one();
                p[(t, off + t)] = field.one();
            }
            inc.insert(d, i);
            proj.insert(d, p);
        }
        let part = parts[idx].clone();
        let inc = ModuleMap::new(part.clone(), sum.clone(), GradedMap::new(part.space().clone(), sum.space().clone(), 0, inc)?)?;
        let proj = ModuleMap::new(sum.clone(), part.clone(), GradedMap::new(sum.space().clone(), part.space().clone(), 0, proj)?)?;
        Ok((inc, proj))
    }

    /// Quotient by a submodule given as a graded subspace.
    pub fn quotient(&self, sub: &GradedSubspace, name: &str) -> Result<(DgModule, GradedMap)> {
        check_submodule(self, sub)?;
        let (qc, proj) = quotient_complex(&self.complex, sub)?;
        let space = qc.space().clone();
        let a = &self.algebra;
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for p in a.window().degrees() {
            for i in 0..a.dim(p) {
                for q in self.window().degrees() {
                    let pr = proj.block(p + q);
                    for (j, &b) in sub.complement(q).iter().enumerate() {
                        let v = self.action.basis(p, i, q, b);
                        let img = if pr.rows() == 0 { Vec::new() } else { pr.mul_vec(&v) };
                        action.set_basis(p, i, q, j, &img);
                    }
                }
            }
        }
        Ok((DgModule::new(name, a.clone(), qc, action)?, proj))
    }

    /// Submodule generated by nothing but the given subspace, as its own module.
    pub fn submodule(&self, sub: &GradedSubspace, name: &str) -> Result<DgModule> {
        check_submodule(self, sub)?;
        let c = crate::graded::subcomplex(&self.complex, sub)?;
        let space = c.space().clone();
        let a = &self.algebra;
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for p in a.window().degrees() {
            for i in 0..a.dim(p) {
                let x = a.space().basis_vector(p, i);
                for q in self.window().degrees() {
                    for (j, v) in sub.basis(q).iter().enumerate() {
                        let img = self.act(p, &x, q, v);
                        let coords = sub
                            .coordinates(p + q, &img)
                            .ok_or_else(|| Error::Internal("submodule not closed".into()))?;
                        action.set_basis(p, i, q, j, &coords);
                    }
                }
            }
        }
        DgModule::new(name, a.clone(), c, action)
    }
}

/// Cone `Y ⊕ sX` of a module map `f: X -> Y`, with
/// `r·(y, sx) = (r·y, (-1)^{|r|} s(r·x))`.
pub fn module_cone(f: &ModuleMap, name: &str) -> Result<DgModule> {
    let x = &f.source;
    let y = &f.target;
    let a = &x.algebra;
    let field = x.field();
    let complex = CochainComplex::mapping_cone(&x.complex, &y.complex, &f.map)?;
    let space = complex.space().clone();
    let mut action = Bilinear::zero(a.space(), &space, &space);
    for p in a.window().degrees() {
        let sign = field.sign(p);
        for i in 0..a.dim(p) {
            let e = a.space().basis_vector(p, i);
            for q in space.window().degrees() {
                let yq = y.dim(q);
                for j in 0..space.dim(q) {
                    let mut out = zero_vector(field, space.dim(p + q));
                    let yt = y.dim(p + q);
                    if j < yq {
                        let v = y.act(p, &e, q, &y.space().basis_vector(q, j));
                        for (t, c) in v.into_iter().enumerate() {
                            out[t] = c;
                        }
                    } else {
                        let v = x.act(p, &e, q + 1, &x.space().basis_vector(q + 1, j - yq));
                        for (t, c) in v.iter().enumerate() {
                            out[yt + t] = c * &sign;
                        }
                    }
                    action.set_basis(p, i, q, j, &out);
                }
            }
        }
    }
    DgModule::new(name, a.clone(), complex, action)
}

/// Block-diagonal `g ⊕ id: Y ⊕ sX -> Y' ⊕ sX` between two cones on the same `X`.
pub fn cone_comparison(
    source: &GradedSpace,
    target: &GradedSpace,
    y: &GradedSpace,
    y2: &GradedSpace,
    g: &GradedMap,
) -> Result<GradedMap> {
    let field = source.field();
    let mut blocks = BTreeMap::new();
    for d in source.window().degrees() {
        let (y0, t0) = (y.dim(d), y2.dim(d));
        let sx = source.dim(d) - y0;
        if target.dim(d) != t0 + sx {
            return Err(Error::invalid("cones over different modules"));
        }
        let mut m = Matrix::zeros(field, target.dim(d), source.dim(d));
        let gb = g.block(d);
        for r in 0..t0 {
            for c in 0..y0 {
                m[(r, c)] = gb[(r, c)].clone();
            }
        }
        for t in 0..sx {
            m[(t0 + t, y0 + t)] = field.one();
        }
        blocks.insert(d, m);
    }
    GradedMap::new(source.clone(), target.clone(), 0, blocks)
}

impl DgModule {
    /// The same module over `A/I`, when the ideal `I` acts trivially;
    /// `quotient` has the pivot-rule complement of `I` as its basis.
    pub fn descend(&self, quotient: Arc<Cdga>, ideal: &GradedSubspace) -> Result<DgModule> {
        let a = &self.algebra;
        for p in a.window().degrees() {
            for v in ideal.basis(p) {
                for q in self.window().degrees() {
                    if !self.action_matrix(p, v, q).is_zero() {
                        return Err(Error::hypothesis(format!(
                            "{}: the ideal acts nontrivially in degree {p}",
                            self.name
                        )));
                    }
                }
            }
        }
        let mut action = Bilinear::zero(quotient.space(), self.space(), self.space());
        for p in quotient.window().degrees() {
            for (i, &c) in ideal.complement(p).iter().enumerate() {
                for q in self.window().degrees() {
                    for j in 0..self.dim(q) {
                        action.set_basis(p, i, q, j, &self.action.basis(p, c, q, j));
                    }
                }
            }
        }
        DgModule::new(&self.name, quotient, self.complex.clone(), action)
    }
}

fn ax_after(m: &DgModule, p: i64, x: &[Scalar], r: i64, y: &[Scalar], q: i64) -> Matrix {
    // x·(y·m)
    m.action_matrix(p, x, q + r).mul(&m.action_matrix(r, y, q))
}

fn check_submodule(m: &DgModule, sub: &GradedSubspace) -> Result<()> {
    let a = &m.algebra;
    for q in m.window().degrees() {
        for v in sub.basis(q) {
            if !sub.contains(q + 1, &m.d(q, v)) {
                return Err(Error::invalid(format!("{}: subspace not closed under d in degree {q}", m.name)));
            }
            for p in a.window().degrees() {
                for i in 0..a.dim(p) {
                    let img = m.act(p, &a.space().basis_vector(p, i), q, v);
                    if !sub.contains(p + q, &img) {
                        return Err(Error::invalid(format!(
                            "{}: subspace not closed under the action of {}",
                            m.name,
                            a.label(p, i)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Degree-0 morphism of DG modules over the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: Arc<DgModule>,
    pub target: Arc<DgModule>,
    pub map: GradedMap,
}

impl ModuleMap {
    pub fn new(source: Arc<DgModule>, target: Arc<DgModule>, map: GradedMap) -> Result<ModuleMap> {
        let m = ModuleMap { source, target, map };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(m: Arc<DgModule>) -> ModuleMap {
        ModuleMap {
            map: GradedMap::identity(m.space()),
            source: m.clone(),
            target: m,
        }
    }

    fn validate(&self) -> Result<()> {
        if !same_algebra(&self.source.algebra, &self.target.algebra) {
            return Err(Error::invalid("module map between modules over different algebras"));
        }
        CochainComplex::check_chain_map(&self.source.complex, &self.target.complex, &self.map)?;
        check_linear(&self.source, &self.target, &self.map)
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(first.source.clone(), self.target.clone(), self.map.compose(&first.map))
    }

    pub fn induced(&self, hs: &Cohomology, ht: &Cohomology, k: i64) -> Matrix {
        induced_map(&self.map, self.source.dim(k), hs, ht, k)
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        let hs = self.source.cohomology();
        let ht = self.target.cohomology();
        let window = self.source.window().union(&self.target.window());
        window.degrees().all(|k| {
            let m = self.induced(&hs, &ht, k);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.scale(c),
        }
    }
}

/// Checks `f(a·m) = (-1)^{p·shift} a·f(m)` on basis elements.
pub fn check_linear(p: &DgModule, n: &DgModule, f: &GradedMap) -> Result<()> {
    let a = &p.algebra;
    let field = p.field();
    let i = f.shift();
    for deg in a.window().degrees() {
        let sign = field.sign(deg * i);
        for ai in 0..a.dim(deg) {
            let x = a.space().basis_vector(deg, ai);
            for k in p.window().degrees() {
                let lhs = f.block(k + deg).mul(&p.action_matrix(deg, &x, k));
                let rhs = n.action_matrix(deg, &x, k + i).mul(&f.block(k)).scale(&sign);
                if lhs != rhs {
                    return Err(Error::invalid(format!(
                        "map {} -> {} is not linear over {} (action of {})",
                        p.name,
                        n.name,
                        a.name,
                        a.label(deg, ai)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Generators of `P` as a module: pivot-rule complement of decomposables
/// `A^{>0}·P` in each degree.
pub fn module_generators(p: &DgModule) -> Vec<(i64, usize)> {
    let a = &p.algebra;
    let field = p.field();
    let mut gens = Vec::new();
    for k in p.window().degrees() {
        let mut dec = Vec::new();
        for deg in 1..=a.window().hi {
            for ai in 0..a.dim(deg) {
                let x = a.space().basis_vector(deg, ai);
                for t in 0..p.dim(k - deg) {
                    let v = p.act(deg, &x, k - deg, &p.space().basis_vector(k - deg, t));
                    if !is_zero_vector(&v) {
                        dec.push(v);
                    }
                }
            }
        }
        for c in complement_indices(field, p.dim(k), &dec) {
            gens.push((k, c));
        }
    }
    gens
}

/// Degree-`i` part of the hom complex.
#[derive(Clone, Debug)]
pub struct HomDegree {
    pub degree: i64,
    pub basis: Vec<GradedMap>,
    /// Generator values of each basis map, as columns.
    kernel: Matrix,
    offsets: Vec<usize>,
}

/// `hom^*_A(P, N)` on a range of degrees, with its differential.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Arc<DgModule>,
    pub target: Arc<DgModule>,
    pub range: DegreeWindow,
    generators: Vec<(i64, usize)>,
    degrees: BTreeMap<i64, HomDegree>,
    /// `δ: hom^i -> hom^{i+1}` for `i, i+1` in the range.
    deltas: BTreeMap<i64, Matrix>,
}

impl HomComplex {
    pub fn new(p: Arc<DgModule>, n: Arc<DgModule>, range: DegreeWindow) -> Result<HomComplex> {
        if !same_algebra(&p.algebra, &n.algebra) {
            return Err(Error::invalid("hom between modules over different algebras"));
        }
        let generators = module_generators(&p);
        let mut degrees = BTreeMap::new();
        for i in range.degrees() {
            degrees.insert(i, hom_degree(&p, &n, &generators, i)?);
        }
        let mut hc = HomComplex {
            source: p,
            target: n,
            range,
            generators,
            degrees,
            deltas: BTreeMap::new(),
        };
        for i in range.lo..range.hi {
            let rows = hc.degrees[&(i + 1)].basis.len();
            let mut m = Matrix::zeros(hc.source.field(), rows, hc.degrees[&i].basis.len());
            for (j, f) in hc.degrees[&i].basis.iter().enumerate() {
                let df = hc.delta_map(f);
                let coords = hc.coordinates(i + 1, &df).ok_or_else(|| {
                    Error::Internal(format!("δ of a degree-{i} module map is not module-linear"))
                })?;
                m.set_column(j, &coords);
            }
            hc.deltas.insert(i, m);
        }
        for i in range.lo..range.hi - 1 {
            if !hc.deltas[&(i + 1)].mul(&hc.deltas[&i]).is_zero() {
                return Err(Error::Internal("δ∘δ ≠ 0 on the hom complex".into()));
            }
        }
        Ok(hc)
    }

    pub fn dim(&self, i: i64) -> usize {
        self.degrees.get(&i).map_or(0, |h| h.basis.len())
    }

    pub fn basis(&self, i: i64) -> &[GradedMap] {
        self.degrees.get(&i).map_or(&[], |h| h.basis.as_slice())
    }

    pub fn delta(&self, i: i64) -> Option<&Matrix> {
        self.deltas.get(&i)
    }

    /// `δf = d_N f - (-1)^{|f|} f d_P`.
    pub fn delta_map(&self, f: &GradedMap) -> GradedMap {
        let i = f.shift();
        let sign = self.source.field().sign(i);
        let a = self.target.complex.differential().compose(f);
        let b = f.compose(self.source.complex.differential()).scale(&sign);
        a.sub(&b)
    }

    /// Coordinates of a degree-`i` linear map in the basis of `hom^i`.
    pub fn coordinates(&self, i: i64, f: &GradedMap) -> Option<Vector> {
        let h = self.degrees.get(&i)?;
        let field = self.source.field();
        let total = *h.offsets.last().unwrap_or(&0);
        let mut u = zero_vector(field, total);
        for (g, &(k, c)) in self.generators.iter().enumerate() {
            let col = f.block(k).column(c);
            for (t, x) in col.into_iter().enumerate() {
                u[h.offsets[g] + t] = x;
            }
        }
        if h.basis.is_empty() {
            return f.is_zero().then(Vec::new);
        }
        let x = h.kernel.solve(&u)?;
        let rebuilt = self.combine(i, &x);
        (rebuilt == *f || rebuilt.sub(f).is_zero()).then_some(x)
    }

    pub fn combine(&self, i: i64, x: &[Scalar]) -> GradedMap {
        let mut acc = GradedMap::zero(self.source.space(), self.target.space(), i);
        for (c, f) in x.iter().zip(self.basis(i)) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// Hom complex as a cochain complex on its range; the top degree of the
    /// range has no outgoing differential recorded.
    pub fn complex(&self) -> CochainComplex {
        let field = self.source.field();
        let space = GradedSpace::from_dims(
            field,
            self.range,
            &self.range.degrees().map(|i| (i, self.dim(i))).collect(),
            "f",
        )
        .expect("hom space");
        let blocks = self.deltas.clone();
        CochainComplex::new(space, blocks).expect("δ² = 0 checked")
    }

    /// `dim H^0`, requiring degrees -1, 0 and 1 in the range.
    pub fn h0_dim(&self) -> usize {
        assert!(self.range.lo <= -1 && self.range.hi >= 1, "range must contain -1..1");
        let z = self.dim(0) - self.deltas[&0].rank();
        z - self.deltas[&-1].rank()
    }
}

fn hom_degree(p: &DgModule, n: &DgModule, gens: &[(i64, usize)], i: i64) -> Result<HomDegree> {
    let a = &p.algebra;
    let field = p.field();
    let mut offsets = vec![0usize];
    for &(k, _) in gens {
        let last = *offsets.last().expect("nonempty");
        offsets.push(last + n.dim(k + i));
    }
    let total = *offsets.last().expect("nonempty");
    // value[k][c]: matrix dim N^{k+i} × total with f(e_c) = value · u
    let mut value: BTreeMap<i64, Vec<Matrix>> = BTreeMap::new();
    let mut constraints: Vec<Vector> = Vec::new();
    for k in p.window().degrees() {
        let nk = n.dim(k + i);
        let pk = p.dim(k);
        let mut family: Vec<Vector> = Vec::new();
        let mut family_values: Vec<Matrix> = Vec::new();
        for deg in 1..=a.window().hi {
            let sign = field.sign(deg * i);
            for ai in 0..a.dim(deg) {
                let x = a.space().basis_vector(deg, ai);
                let an = n.action_matrix(deg, &x, k - deg + i);
                for (t, ft) in value.get(&(k - deg)).into_iter().flatten().enumerate() {
                    let v = p.act(deg, &x, k - deg, &p.space().basis_vector(k - deg, t));
                    if is_zero_vector(&v) {
                        // f(0) = 0 must equal ±a·f(e_t)
                        let val = an.mul(ft).scale(&sign);
                        for r in 0..val.rows() {
                            constraints.push(val.row(r));
                        }
                        continue;
                    }
                    family.push(v);
                    family_values.push(an.mul(ft).scale(&sign));
                }
            }
        }
        for (g, &(gk, c)) in gens.iter().enumerate() {
            if gk != k {
                continue;
            }
            family.push(unit_vector(field, pk, c));
            let mut sel = Matrix::zeros(field, nk, total);
            for t in 0..nk {
                sel[(t, offsets[g] + t)] = field.one();
            }
            family_values.push(sel);
        }
        let mut vals = Vec::with_capacity(pk);
        if pk > 0 {
            let chosen = independent_subset(field, pk, &family);
            if chosen.len() != pk {
                return Err(Error::Internal(format!(
                    "{}: generators do not span degree {k}",
                    p.name
                )));
            }
            let basis_cols: Vec<Vector> = chosen.iter().map(|&j| family[j].clone()).collect();
            let inv = Matrix::from_columns(field, pk, &basis_cols)
                .inverse()
                .expect("independent family");
            for c in 0..pk {
                let coef = inv.column(c);
                let mut m = Matrix::zeros(field, nk, total);
                for (t, &j) in chosen.iter().enumerate() {
                    if !coef[t].is_zero() {
                        m = m.add(&family_values[j].scale(&coef[t]));
                    }
                }
                vals.push(m);
            }
            for (w, wv) in family.iter().zip(&family_values) {
                let mut m = wv.scale(&field.int(-1));
                for (c, x) in w.iter().enumerate() {
                    if !x.is_zero() {
                        m = m.add(&vals[c].scale(x));
                    }
                }
                for r in 0..m.rows() {
                    let row = m.row(r);
                    if !is_zero_vector(&row) {
                        constraints.push(row);
                    }
                }
            }
        }
        value.insert(k, vals);
    }
    let kernel_vectors = if constraints.is_empty() {
        (0..total).map(|j| unit_vector(field, total, j)).collect()
    } else {
        Matrix::from_rows(field, constraints, total).kernel_basis()
    };
    let kernel = Matrix::from_columns(field, total, &kernel_vectors);
    let mut basis = Vec::with_capacity(kernel_vectors.len());
    for u in &kernel_vectors {
        let mut blocks = BTreeMap::new();
        for k in p.window().degrees() {
            let cols: Vec<Vector> = value[&k].iter().map(|m| m.mul_vec(u)).collect();
            blocks.insert(k, Matrix::from_columns(field, n.dim(k + i), &cols));
        }
        basis.push(GradedMap::new(p.space().clone(), n.space().clone(), i, blocks)?);
    }
    Ok(HomDegree {
        degree: i,
        basis,
        kernel,
        offsets,
    })
}

/// Affine condition `<functional, f(vector)> = value` on a degree-0 map,
/// with `vector ∈ P^degree` and `functional` on `N^degree`.
#[derive(Clone, Debug)]
pub struct PointConstraint {
    pub degree: i64,
    pub vector: Vector,
    pub functional: Vector,
    pub value: Scalar,
}

/// All degree-0 linear chain maps meeting the constraints: one particular
/// solution plus a basis of the homogeneous solutions.
#[derive(Clone, Debug)]
pub struct ChainMapSolutions {
    pub particular: ModuleMap,
    pub homogeneous: Vec<ModuleMap>,
}

pub fn solve_chain_maps(
    p: &Arc<DgModule>,
    n: &Arc<DgModule>,
    constraints: &[PointConstraint],
) -> Result<ChainMapSolutions> {
    let hc = HomComplex::new(p.clone(), n.clone(), DegreeWindow::new(0, 1)?)?;
    solve_in_hom(&hc, constraints)
}

fn solve_in_hom(hc: &HomComplex, constraints: &[PointConstraint]) -> Result<ChainMapSolutions> {
    let field = hc.source.field();
    let dim0 = hc.dim(0);
    let delta = hc.delta(0).expect("range contains 0..1");
    let mut rows: Vec<Vector> = (0..delta.rows()).map(|r| delta.row(r)).collect();
    let mut rhs: Vec<Scalar> = vec![field.zero(); rows.len()];
    for c in constraints {
        let row: Vector = hc
            .basis(0)
            .iter()
            .map(|f| {
                let img = f.apply(c.degree, &c.vector);
                img.iter()
                    .zip(&c.functional)
                    .fold(field.zero(), |acc, (x, y)| acc + x * y)
            })
            .collect();
        rows.push(row);
        rhs.push(c.value.clone());
    }
    let system = Matrix::from_rows(field, rows, dim0);
    let x = if system.rows() == 0 {
        Some(zero_vector(field, dim0))
    } else {
        system.solve(&rhs)
    };
    let x = x.ok_or_else(|| Error::NoSolution(format!(
        "no linear chain map {} -> {} meets the constraints",
        hc.source.name, hc.target.name
    )))?;
    let particular = ModuleMap::new(hc.source.clone(), hc.target.clone(), hc.combine(0, &x))?;
    let homogeneous = if system.rows() == 0 {
        (0..dim0).map(|j| unit_vector(field, dim0, j)).collect()
    } else {
        system.kernel_basis()
    };
    let homogeneous = homogeneous
        .iter()
        .map(|v| ModuleMap::new(hc.source.clone(), hc.target.clone(), hc.combine(0, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMapSolutions {
        particular,
        homogeneous,
    })
}

/// A degree -1 map `h` with `δh = f - g`, if one exists.
pub fn homotopy_between(f: &ModuleMap, g: &ModuleMap) -> Result<Option<GradedMap>> {
    let hc = HomComplex::new(f.source.clone(), f.target.clone(), DegreeWindow::new(-1, 0)?)?;
    let diff = f.map.sub(&g.map);
    let coords = hc
        .coordinates(0, &diff)
        .ok_or_else(|| Error::Internal("difference of module maps is not linear".into()))?;
    let delta = hc.delta(-1).expect("range contains -1..0");
    if delta.cols() == 0 {
        return Ok(is_zero_vector(&coords).then(|| GradedMap::zero(f.source.space(), f.target.space(), -1)));
    }
    let Some(x) = delta.solve(&coords) else {
        return Ok(None);
    };
    let h = hc.combine(-1, &x);
    debug_assert_eq!(hc.delta_map(&h), diff);
    Ok(Some(h))
}

/// `H^0(hom^*_A(P, N))` with representatives.
#[derive(Clone, Debug)]
pub struct HomotopyClassSpace {
    pub dimension: usize,
    pub representatives: Vec<ModuleMap>,
    /// Set when the source is not known to be semifree.
    pub chain_level_only: bool,
}

pub fn homotopy_classes(p: &Arc<DgModule>, n: &Arc<DgModule>, source_semifree: bool) -> Result<HomotopyClassSpace> {
    let hc = HomComplex::new(p.clone(), n.clone(), DegreeWindow::new(-1, 1)?)?;
    let c = hc.complex();
    let h = c.cohomology();
    let representatives = h
        .representatives(0)
        .iter()
        .map(|x| ModuleMap::new(p.clone(), n.clone(), hc.combine(0, x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomotopyClassSpace {
        dimension: hc.h0_dim(),
        representatives,
        chain_level_only: !source_semifree,
    })
}

/// Generator of a semifree module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
    pub stage: usize,
    /// `d(v) = Σ c · (a ⊗ w)`, keyed by `(deg a, index of a, index of w)`.
    pub d: BTreeMap<(i64, usize, usize), Scalar>,
}

/// `A ⊗ V` with a differential determined on generators, materialized up
/// to degree `top`; everything above `top` is truncated away.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    pub module: Arc<DgModule>,
    pub generators: Vec<Generator>,
    pub top: i64,
    /// `basis[k][j] = (deg a, index of a, generator)`.
    pub basis: BTreeMap<i64, Vec<(i64, usize, usize)>>,
    /// Comparison map to the resolved module, when built as a resolution.
    pub comparison: Option<ModuleMap>,
    /// `d(V) ⊆ A^{>0}·(A ⊗ V)`.
    pub minimal: bool,
}

impl SemifreeModule {
    pub fn build(name: &str, algebra: Arc<Cdga>, generators: Vec<Generator>, top: i64) -> Result<SemifreeModule> {
        let field = algebra.field();
        let lo = generators.iter().map(|g| g.degree).min().unwrap_or(top).min(top);
        let window = DegreeWindow::new(lo, top)?;
        let mut basis: BTreeMap<i64, Vec<(i64, usize, usize)>> = window.degrees().map(|d| (d, Vec::new())).collect();
        for (g, gen) in generators.iter().enumerate() {
            for p in algebra.window().degrees() {
                let k = p + gen.degree;
                if k > top {
                    break;
                }
                for ai in 0..algebra.dim(p) {
                    basis.get_mut(&k).expect("in window").push((p, ai, g));
                }
            }
        }
        let index: BTreeMap<(i64, usize, usize), usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(j, &key)| (key, j)))
            .collect();
        let labels = basis
            .iter()
            .map(|(&k, v)| {
                (
                    k,
                    v.iter()
                        .map(|&(p, ai, g)| {
                            if p == 0 && ai == algebra.unit {
                                generators[g].label.clone()
                            } else {
                                format!("{}⊗{}", algebra.label(p, ai), generators[g].label)
                            }
                        })
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let space = GradedSpace::new(field, window, labels)?;
        // d(v) as vectors
        let mut dgen: Vec<Vector> = Vec::new();
        for gen in &generators {
            let k = gen.degree + 1;
            let mut v = zero_vector(field, space.dim(k));
            for (&(p, ai, w), c) in &gen.d {
                if generators[w].degree + p != k {
                    return Err(Error::invalid(format!(
                        "d({}) has a term of the wrong degree",
                        gen.label
                    )));
                }
                if k > top {
                    continue;
                }
                let j = index
                    .get(&(p, ai, w))
                    .ok_or_else(|| Error::invalid(format!("d({}) refers to a later generator", gen.label)))?;
                v[*j] = &v[*j] + c;
            }
            dgen.push(v);
        }
        // action x·(a⊗v) = (xa)⊗v
        let mut action = Bilinear::zero(algebra.space(), &space, &space);
        for p in algebra.window().degrees() {
            for xi in 0..algebra.dim(p) {
                let x = algebra.space().basis_vector(p, xi);
                for (&k, elems) in &basis {
                    if p + k > top {
                        continue;
                    }
                    for (j, &(q, ai, g)) in elems.iter().enumerate() {
                        let xa = algebra.mul(p, &x, q, &algebra.space().basis_vector(q, ai));
                        let mut out = zero_vector(field, space.dim(p + k));
                        for (bi, c) in xa.iter().enumerate() {
                            if !c.is_zero() {
                                out[index[&(p + q, bi, g)]] = c.clone();
                            }
                        }
                        action.set_basis(p, xi, k, j, &out);
                    }
                }
            }
        }
        // d(a⊗v) = da⊗v + (-1)^{|a|} a·dv
        let mut blocks = BTreeMap::new();
        for (&k, elems) in &basis {
            let mut m = Matrix::zeros(field, space.dim(k + 1), elems.len());
            if k < top {
                for (j, &(p, ai, g)) in elems.iter().enumerate() {
                    let a = algebra.space().basis_vector(p, ai);
                    let da = algebra.d(p, &a);
                    let mut out = zero_vector(field, space.dim(k + 1));
                    for (bi, c) in da.iter().enumerate() {
                        if !c.is_zero() {
                            out[index[&(p + 1, bi, g)]] = c.clone();
                        }
                    }
                    let adv = action.apply(p, &a, generators[g].degree + 1, &dgen[g]);
                    axpy(&mut out, &field.sign(p), &adv);
                    m.set_column(j, &out);
                }
            }
            blocks.insert(k, m);
        }
        let complex = CochainComplex::new(space, blocks)
            .map_err(|e| Error::invalid(format!("{name}: {e}")))?;
        let module = DgModule::new(name, algebra.clone(), complex, action)?;
        let minimal = generators.iter().all(|g| g.d.keys().all(|&(p, _, _)| p > 0));
        Ok(SemifreeModule {
            module: Arc::new(module),
            generators,
            top,
            basis,
            comparison: None,
            minimal,
        })
    }

    /// Index of `1 ⊗ v_g` in its degree.
    pub fn generator_index(&self, g: usize) -> usize {
        let unit = self.module.algebra.unit;
        let k = self.generators[g].degree;
        self.basis[&k]
            .iter()
            .position(|&(p, ai, h)| p == 0 && ai == unit && h == g)
            .expect("generator present")
    }

    /// Writes a vector of the module as sparse `(deg a, a, generator)` terms.
    pub fn sparse(&self, k: i64, v: &[Scalar]) -> BTreeMap<(i64, usize, usize), Scalar> {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (self.basis[&k][j], c.clone()))
            .collect()
    }
}

const RESOLUTION_ROUNDS: usize = 16;

/// Semifree resolution `ρ: A ⊗ V -> M` built from the bottom degree up to
/// `top`. Below `top` the comparison is a quasi-isomorphism; in degree
/// `top` it is surjective on cohomology.
pub fn semifree_resolution(m: &Arc<DgModule>, minimal: bool, top: i64) -> Result<SemifreeModule> {
    let a = m.algebra.clone();
    if !a.is_connected() {
        return Err(Error::hypothesis(format!(
            "{}: resolutions need a connected algebra",
            a.name
        )));
    }
    let field = m.field();
    let hm = m.cohomology();
    let mut gens: Vec<Generator> = Vec::new();
    let mut images: Vec<Vector> = Vec::new();
    let name = format!("res({})", m.name);
    let start = m.window().lo;
    let build = |gens: &[Generator], images: &[Vector]| -> Result<(SemifreeModule, GradedMap)> {
        let sf = SemifreeModule::build(&name, a.clone(), gens.to_vec(), top)?;
        let rho = comparison_map(&sf, m, images)?;
        Ok((sf, rho))
    };
    let mut stage = 0usize;
    for k in start..=top {
        let mut rounds = 0;
        let mut first = true;
        loop {
            rounds += 1;
            if rounds > RESOLUTION_ROUNDS {
                return Err(Error::Internal(format!(
                    "resolution of {} did not stabilize in degree {k}",
                    m.name
                )));
            }
            stage += 1;
            let mut added = false;
            // cocycle generators for the cokernel of H^k(ρ)
            let (sf, rho) = build(&gens, &images)?;
            let hx = sf.module.cohomology();
            let hk = induced_map(&rho, sf.module.dim(k), &hx, &hm, k);
            let image_cols = hk.columns();
            let targets: Vec<usize> = if !minimal && first {
                (0..hm.dim(k)).collect()
            } else {
                complement_indices(field, hm.dim(k), &image_cols)
            };
            first = false;
            for &j in &targets {
                gens.push(Generator {
                    label: format!("v{k}_{}", count_in_degree(&gens, k)),
                    degree: k,
                    stage,
                    d: BTreeMap::new(),
                });
                images.push(hm.representatives(k)[j].clone());
                added = true;
            }
            if k < top {
                // generators killing the kernel of H^k(ρ)
                let (sf, rho) = build(&gens, &images)?;
                let hx = sf.module.cohomology();
                let hk = induced_map(&rho, sf.module.dim(k), &hx, &hm, k);
                let kernel = if hk.cols() == 0 {
                    Vec::new()
                } else if hk.rows() == 0 {
                    (0..hk.cols()).map(|j| unit_vector(field, hk.cols(), j)).collect()
                } else {
                    hk.kernel_basis()
                };
                let xdim = sf.module.dim(k);
                let mut new = Vec::new();
                for c in kernel {
                    let mut z = zero_vector(field, xdim);
                    for (coef, rep) in c.iter().zip(hx.representatives(k)) {
                        axpy(&mut z, coef, rep);
                    }
                    let rz = rho.apply(k, &z);
                    let dm = m.complex.diff(k - 1);
                    let pre = if dm.cols() == 0 {
                        is_zero_vector(&rz).then(Vec::new)
                    } else {
                        dm.solve(&rz)
                    }
                    .ok_or_else(|| Error::Internal("kernel class is not a boundary in the target".into()))?;
                    new.push((sf.sparse(k, &z), pre));
                }
                for (d, pre) in new {
                    gens.push(Generator {
                        label: format!("v{}_{}", k - 1, count_in_degree(&gens, k - 1)),
                        degree: k - 1,
                        stage,
                        d,
                    });
                    images.push(pre);
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
    }
    let (mut sf, rho) = build(&gens, &images)?;
    let target = m.clone();
    let map = ModuleMap::new(sf.module.clone(), target, rho)?;
    // validation: iso below top, onto at top
    let hx = sf.module.cohomology();
    for k in sf.module.window().union(&m.window()).degrees() {
        if k > top {
            break;
        }
        let hk = map.induced(&hx, &hm, k);
        let onto = hk.rank() == hk.rows();
        let iso = onto && hk.rows() == hk.cols();
        if (k < top && !iso) || !onto {
            return Err(Error::Internal(format!(
                "resolution of {} fails to compare in degree {k}",
                m.name
            )));
        }
    }
    sf.comparison = Some(map);
    Ok(sf)
}

fn count_in_degree(gens: &[Generator], k: i64) -> usize {
    gens.iter().filter(|g| g.degree == k).count()
}

/// `ρ(a ⊗ v) = a·ρ(v)`.
fn comparison_map(sf: &SemifreeModule, m: &DgModule, images: &[Vector]) -> Result<GradedMap> {
    let a = &m.algebra;
    let field = m.field();
    let x = &sf.module;
    let mut blocks = BTreeMap::new();
    for (&k, elems) in &sf.basis {
        let mut mat = Matrix::zeros(field, m.dim(k), elems.len());
        for (j, &(p, ai, g)) in elems.iter().enumerate() {
            let v = m.act(p, &a.space().basis_vector(p, ai), sf.generators[g].degree, &images[g]);
            if v.len() == m.dim(k) {
                mat.set_column(j, &v);
            }
        }
        blocks.insert(k, mat);
    }
    GradedMap::new(x.space().clone(), m.space().clone(), 0, blocks)
}

/// Truncation above degree `t`: the submodule `L = M^{>t} ⊕ S` with `S` the
/// pivot-rule complement of the cocycles in `M^t`, and the quotient `M/L`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub cut: i64,
    pub sub: GradedSubspace,
    pub quotient: Arc<DgModule>,
    pub projection: ModuleMap,
}

pub fn truncate_module(m: &Arc<DgModule>, t: i64) -> Result<Truncation> {
    if !m.algebra.is_connected() {
        return Err(Error::hypothesis(format!("{}: truncation needs a connected algebra", m.algebra.name)));
    }
    let sub = crate::algebra::truncation_subspace(&m.complex, t);
    let (q, p) = m.quotient(&sub, &format!("{}/L{t}", m.name))?;
    let q = Arc::new(q);
    let projection = ModuleMap::new(m.clone(), q.clone(), p)?;
    // defining conditions
    for d in m.window().degrees() {
        if d < t && sub.dim(d) != 0 {
            return Err(Error::Internal("truncation is nonzero below the cut".into()));
        }
        if d > t && sub.dim(d) != m.dim(d) {
            return Err(Error::Internal("truncation misses a degree above the cut".into()));
        }
    }
    let hs = m.cohomology();
    let hq = q.cohomology();
    for d in m.window().degrees() {
        if d > t {
            break;
        }
        let h = projection.induced(&hs, &hq, d);
        if h.rows() != h.cols() || h.rank() != h.rows() {
            return Err(Error::Internal(format!("truncation changes H^{d}")));
        }
    }
    Ok(Truncation {
        cut: t,
        sub,
        quotient: q,
        projection,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::tests::{q, sphere, truncated_poly};
    use crate::algebra::CdgaMorphism;

    fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().cloned().collect()
    }

    pub fn s2_over_s6() -> (Arc<Cdga>, Arc<Cdga>, CdgaMorphism) {
        let r = Arc::new(sphere(q(), 6, 7));
        let qq = Arc::new(sphere(q(), 2, 7));
        let phi = CdgaMorphism::from_atom_images(r.clone(), qq.clone(), &BTreeMap::new()).unwrap();
        (r, qq, phi)
    }

    #[test]
    fn restriction_kills_top_class() {
        let (_, qq, phi) = s2_over_s6();
        let m = DgModule::regular(qq).restrict_scalars(&phi).unwrap();
        let e6 = m.algebra.space().basis_vector(6, 0);
        assert!(m.action_matrix(6, &e6, 0).is_zero());
        let same = DgModule::regular(phi.target.clone())
            .restrict_scalars(&CdgaMorphism::identity(phi.target.clone()))
            .unwrap();
        assert_eq!(same.action, phi.target.product);
    }

    #[test]
    fn dual_of_sphere_is_shifted_sphere() {
        let a = Arc::new(sphere(q(), 3, 3));
        let m = DgModule::regular(a.clone());
        let dm = m.dual();
        assert_eq!(dm.space().dims(), dims(&[(-3, 1), (0, 1)]));
        // e·#e = ±#1
        let e = a.space().basis_vector(3, 0);
        let v = dm.act(3, &e, -3, &[q().one()]);
        assert_eq!(v.len(), 1);
        assert!(!v[0].is_zero());
        let dd = dm.dual();
        assert_eq!(dd.space().dims(), m.space().dims());
    }

    #[test]
    fn shifted_duals() {
        let (_, qq, phi) = s2_over_s6();
        let m = DgModule::regular(qq).restrict_scalars(&phi).unwrap();
        let d = m.shifted_dual(6);
        assert_eq!(d.space().dims(), dims(&[(4, 1), (6, 1)]));
        let cp2 = Arc::new(truncated_poly(q(), 2, 2, 4));
        let d = DgModule::regular(cp2).shifted_dual(8);
        assert_eq!(d.space().dims(), dims(&[(4, 1), (6, 1), (8, 1)]));
        let k = Arc::new(Cdga::ground(q(), 4));
        let d = DgModule::regular(k).shifted_dual(4);
        assert_eq!(d.space().dims(), dims(&[(4, 1)]));
    }

    #[test]
    fn hom_of_sphere_over_itself() {
        let a = Arc::new(sphere(q(), 3, 3));
        let m = Arc::new(DgModule::regular(a));
        let hc = HomComplex::new(m.clone(), m.clone(), DegreeWindow::new(-1, 1).unwrap()).unwrap();
        assert_eq!(hc.dim(0), 1);
        assert_eq!(hc.h0_dim(), 1);
        let classes = homotopy_classes(&m, &m, true).unwrap();
        assert_eq!(classes.dimension, 1);
    }

    #[test]
    fn top_degree_solve_on_s2_in_s6() {
        let (r, qq, phi) = s2_over_s6();
        let m = Arc::new(DgModule::regular(qq).restrict_scalars(&phi).unwrap().shifted_dual(6));
        let rm = Arc::new(DgModule::regular(r.clone()));
        let cons = PointConstraint {
            degree: 6,
            vector: vec![q().one()],
            functional: vec![q().one()],
            value: q().one(),
        };
        let sol = solve_chain_maps(&m, &rm, &[cons]).unwrap();
        assert!(sol.homogeneous.is_empty());
        assert_eq!(sol.particular.map.block(6), Matrix::from_ints(q(), &[&[1]]));
        assert!(sol.particular.map.block(4).is_zero());
    }

    #[test]
    fn inconsistent_constraint() {
        let a = Arc::new(sphere(q(), 3, 4));
        let zero = Arc::new(DgModule::zero(a.clone(), DegreeWindow::new(0, 4).unwrap()));
        let rm = Arc::new(DgModule::regular(a));
        let cons = PointConstraint {
            degree: 3,
            vector: vec![],
            functional: vec![q().one()],
            value: q().one(),
        };
        assert!(matches!(solve_chain_maps(&zero, &rm, &[cons]), Err(Error::NoSolution(_))));
    }

    #[test]
    fn homotopies() {
        let a = Arc::new(sphere(q(), 3, 3));
        let m = Arc::new(DgModule::regular(a));
        let id = ModuleMap::identity(m.clone());
        assert!(homotopy_between(&id, &id).unwrap().unwrap().is_zero());
        let zero = id.scale(&q().zero());
        assert!(homotopy_between(&id, &zero).unwrap().is_none());
    }

    #[test]
    fn resolution_of_semifree_like_module() {
        let (r, qq, phi) = s2_over_s6();
        let _ = r;
        let m = Arc::new(DgModule::regular(qq).restrict_scalars(&phi).unwrap().shifted_dual(6));
        let res = semifree_resolution(&m, true, 8).unwrap();
        let degs: Vec<i64> = res.generators.iter().map(|g| g.degree).collect();
        assert_eq!(degs, vec![4, 6]);
        assert!(res.minimal);
        assert!(res.comparison.as_ref().unwrap().map.block(4) == Matrix::identity(q(), 1));
    }

    #[test]
    fn resolution_of_acyclic_module() {
        let a = Arc::new(sphere(q(), 4, 8));
        // two-term acyclic complex with trivial positive action
        let space = GradedSpace::from_dims(q(), DegreeWindow::new(0, 8).unwrap(), &dims(&[(2, 1), (3, 1)]), "m").unwrap();
        let complex = CochainComplex::new(space.clone(), [(2, Matrix::from_ints(q(), &[&[1]]))].into_iter().collect()).unwrap();
        let mut action = Bilinear::zero(a.space(), &space, &space);
        for d in [2, 3] {
            action.set_basis(0, 0, d, 0, &[q().one()]);
        }
        let m = Arc::new(DgModule::new("acyc", a, complex, action).unwrap());
        let res = semifree_resolution(&m, true, 8).unwrap();
        assert!(res.module.cohomology().is_acyclic() || res.module.cohomology().dims().keys().all(|&k| k == 8));
    }

    #[test]
    fn truncation_example() {
        let (_, qq, phi) = s2_over_s6();
        let m = Arc::new(DgModule::regular(qq).restrict_scalars(&phi).unwrap().shifted_dual(6));
        let t = truncate_module(&m, 4).unwrap();
        assert_eq!(t.sub.dims(), dims(&[(6, 1)]));
        assert_eq!(t.quotient.space().dims(), dims(&[(4, 1)]));
        let same = truncate_module(&m, 7).unwrap();
        assert!(same.sub.is_zero());
    }
}
