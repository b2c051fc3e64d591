//! Commutative differential graded algebras of finite type on a window
//! `[0, hi]`. Products landing above the window are zero, so a presentation
//! describes the quotient `A / A^{>hi}`; cohomology near the top of the
//! window should be read with that in mind.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{
    format_combination, induced_map, quotient_complex, CochainComplex, Cohomology, DegreeWindow,
    GradedMap, GradedSpace, GradedSubspace,
};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Field, Matrix, Scalar, Vector};

/// Bilinear map `L^p ⊗ R^q -> T^{p+q}`, stored as one matrix per degree
/// pair with column index `i * dim R^q + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    field: Field,
    left: BTreeMap<i64, usize>,
    right: BTreeMap<i64, usize>,
    target: BTreeMap<i64, usize>,
    blocks: BTreeMap<(i64, i64), Matrix>,
}

impl Bilinear {
    /// Zero map between the given spaces; only pairs with both factors
    /// in their windows get blocks.
    pub fn zero(left: &GradedSpace, right: &GradedSpace, target: &GradedSpace) -> Bilinear {
        let field = left.field();
        let dims = |s: &GradedSpace| s.window().degrees().map(|d| (d, s.dim(d))).collect();
        let mut blocks = BTreeMap::new();
        for p in left.window().degrees() {
            for q in right.window().degrees() {
                blocks.insert(
                    (p, q),
                    Matrix::zeros(field, target.dim(p + q), left.dim(p) * right.dim(q)),
                );
            }
        }
        Bilinear {
            field,
            left: dims(left),
            right: dims(right),
            target: dims(target),
            blocks,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn dim_of(map: &BTreeMap<i64, usize>, d: i64) -> usize {
        map.get(&d).copied().unwrap_or(0)
    }

    pub fn left_dim(&self, d: i64) -> usize {
        Self::dim_of(&self.left, d)
    }

    pub fn right_dim(&self, d: i64) -> usize {
        Self::dim_of(&self.right, d)
    }

    pub fn target_dim(&self, d: i64) -> usize {
        Self::dim_of(&self.target, d)
    }

    pub fn block(&self, p: i64, q: i64) -> Option<&Matrix> {
        self.blocks.get(&(p, q))
    }

    /// Product of basis elements.
    pub fn basis(&self, p: i64, i: usize, q: i64, j: usize) -> Vector {
        match self.blocks.get(&(p, q)) {
            Some(b) => b.column(i * self.right_dim(q) + j),
            None => zero_vector(self.field, self.target_dim(p + q)),
        }
    }

    pub fn set_basis(&mut self, p: i64, i: usize, q: i64, j: usize, v: &[Scalar]) {
        let nr = self.right_dim(q);
        let b = self
            .blocks
            .get_mut(&(p, q))
            .expect("degree pair inside the windows");
        b.set_column(i * nr + j, v);
    }

    pub fn apply(&self, p: i64, a: &[Scalar], q: i64, b: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.target_dim(p + q));
        let Some(block) = self.blocks.get(&(p, q)) else {
            return out;
        };
        if block.rows() == 0 {
            return out;
        }
        let nr = self.right_dim(q);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                let col = i * nr + j;
                for (r, o) in out.iter_mut().enumerate() {
                    let e = &block[(r, col)];
                    if !e.is_zero() {
                        *o = &*o + &(&c * e);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `b ↦ a·b` from `R^q` to `T^{p+q}` for fixed `a ∈ L^p`.
    pub fn left_multiplication(&self, p: i64, a: &[Scalar], q: i64) -> Matrix {
        let nr = self.right_dim(q);
        let cols: Vec<Vector> = (0..nr)
            .map(|j| self.apply(p, a, q, &unit_vector(self.field, nr, j)))
            .collect();
        Matrix::from_columns(self.field, self.target_dim(p + q), &cols)
    }

    pub fn degree_pairs(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.blocks.keys().copied()
    }
}

/// Factor pair whose product violates the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub left: String,
    pub left_degree: i64,
    pub right: String,
    pub right_degree: i64,
    /// `d(ab) - d(a)b - (-1)^{|a|} a d(b)`, in degree `|a|+|b|+1`.
    pub defect: Vector,
    pub defect_text: String,
}

/// Graded algebra with a differential, not yet known to satisfy all CDGA
/// identities. The unit is basis element `unit` of degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    pub complex: CochainComplex,
    pub unit: usize,
    pub product: Bilinear,
    /// Named elements usable in polynomial expressions.
    pub atoms: Vec<Atom>,
    /// Each basis element written as an ordered product of atoms.
    pub factorization: BTreeMap<(i64, usize), Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub degree: i64,
    pub value: Vector,
}

impl Algebra {
    /// Algebra whose atoms are its own basis elements.
    pub fn explicit(name: &str, complex: CochainComplex, unit: usize, product: Bilinear) -> Algebra {
        let space = complex.space().clone();
        let mut atoms = Vec::new();
        let mut factorization = BTreeMap::new();
        for d in space.window().degrees() {
            for (i, l) in space.labels(d).iter().enumerate() {
                factorization.insert((d, i), vec![atoms.len()]);
                atoms.push(Atom {
                    name: l.clone(),
                    degree: d,
                    value: space.basis_vector(d, i),
                });
            }
        }
        if space.dim(0) > unit {
            factorization.insert((0, unit), Vec::new());
        }
        Algebra {
            name: name.to_string(),
            complex,
            unit,
            product,
            atoms,
            factorization,
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

    pub fn dim(&self, d: i64) -> usize {
        self.complex.dim(d)
    }

    pub fn unit_vector(&self) -> Vector {
        self.space().basis_vector(0, self.unit)
    }

    pub fn mul(&self, p: i64, a: &[Scalar], q: i64, b: &[Scalar]) -> Vector {
        self.product.apply(p, a, q, b)
    }

    pub fn d(&self, k: i64, a: &[Scalar]) -> Vector {
        self.complex.diff(k).mul_vec(a)
    }

    pub fn label(&self, d: i64, i: usize) -> &str {
        &self.space().labels(d)[i]
    }

    pub fn format(&self, d: i64, v: &[Scalar]) -> String {
        format_combination(self.space().labels(d), v)
    }

    pub fn is_connected(&self) -> bool {
        self.dim(0) == 1
    }

    fn basis_elements(&self) -> Vec<(i64, usize)> {
        self.window()
            .degrees()
            .flat_map(|d| (0..self.dim(d)).map(move |i| (d, i)))
            .collect()
    }

    pub fn check_unit(&self) -> Result<()> {
        if self.unit >= self.dim(0) {
            return Err(Error::invalid(format!("{}: no unit in degree 0", self.name)));
        }
        let u = self.unit_vector();
        for (d, i) in self.basis_elements() {
            let e = self.space().basis_vector(d, i);
            if self.mul(0, &u, d, &e) != e || self.mul(d, &e, 0, &u) != e {
                return Err(Error::invalid(format!(
                    "{}: unit law fails on {}",
                    self.name,
                    self.label(d, i)
                )));
            }
        }
        if !is_zero_vector(&self.d(0, &u)) {
            return Err(Error::invalid(format!("{}: d(1) ≠ 0", self.name)));
        }
        Ok(())
    }

    pub fn check_commutative(&self) -> Result<()> {
        let f = self.field();
        for (p, i) in self.basis_elements() {
            for (q, j) in self.basis_elements() {
                let ab = self.product.basis(p, i, q, j);
                let ba = self.product.basis(q, j, p, i);
                if ab != crate::linalg::scale_vector(&f.sign(p * q), &ba) {
                    return Err(Error::invalid(format!(
                        "{}: product is not graded commutative on ({}, {})",
                        self.name,
                        self.label(p, i),
                        self.label(q, j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<()> {
        let hi = self.window().hi;
        let basis = self.basis_elements();
        for &(p, i) in &basis {
            for &(q, j) in &basis {
                if p + q > hi {
                    continue;
                }
                let ab = self.product.basis(p, i, q, j);
                for &(r, k) in &basis {
                    if p + q + r > hi {
                        continue;
                    }
                    let c = self.space().basis_vector(r, k);
                    let lhs = self.mul(p + q, &ab, r, &c);
                    let bc = self.product.basis(q, j, r, k);
                    let a = self.space().basis_vector(p, i);
                    let rhs = self.mul(p, &a, q + r, &bc);
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "{}: product is not associative on ({}, {}, {})",
                            self.name,
                            self.label(p, i),
                            self.label(q, j),
                            self.label(r, k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// First basis pair on which `d` fails to be a derivation, scanning
    /// degrees and indices in order.
    pub fn leibniz_witness(&self) -> Option<LeibnizWitness> {
        let f = self.field();
        let basis = self.basis_elements();
        for &(p, i) in &basis {
            let a = self.space().basis_vector(p, i);
            let da = self.d(p, &a);
            for &(q, j) in &basis {
                let b = self.space().basis_vector(q, j);
                let ab = self.mul(p, &a, q, &b);
                let lhs = self.d(p + q, &ab);
                let t1 = self.mul(p + 1, &da, q, &b);
                let db = self.d(q, &b);
                let t2 = self.mul(p, &a, q + 1, &db);
                let mut defect = lhs;
                axpy(&mut defect, &f.int(-1), &t1);
                axpy(&mut defect, &(-f.sign(p)), &t2);
                if !is_zero_vector(&defect) {
                    return Some(LeibnizWitness {
                        left: self.label(p, i).to_string(),
                        left_degree: p,
                        right: self.label(q, j).to_string(),
                        right_degree: q,
                        defect_text: self.format(p + q + 1, &defect),
                        defect,
                    });
                }
            }
        }
        None
    }

    pub fn check_leibniz(&self) -> Result<()> {
        match self.leibniz_witness() {
            None => Ok(()),
            Some(w) => Err(Error::invalid(format!(
                "{}: Leibniz rule fails on ({}, {}) with defect {}",
                self.name, w.left, w.right, w.defect_text
            ))),
        }
    }

    /// Evaluates a polynomial in the atoms; returns its degree and value.
    pub fn eval(&self, poly: &Poly) -> Result<(i64, Vector)> {
        let f = self.field();
        let mut degree: Option<i64> = None;
        let mut acc: Option<Vector> = None;
        for term in &poly.0 {
            let mut deg = 0;
            let mut val = self.unit_vector();
            for (name, e) in &term.factors {
                let atom = self
                    .atoms
                    .iter()
                    .find(|a| &a.name == name)
                    .ok_or_else(|| Error::invalid(format!("{}: unknown name `{name}`", self.name)))?;
                for _ in 0..*e {
                    val = self.mul(deg, &val, atom.degree, &atom.value);
                    deg += atom.degree;
                }
            }
            if let Some(d0) = degree {
                if d0 != deg {
                    return Err(Error::invalid(format!(
                        "{}: inhomogeneous expression (degrees {d0} and {deg})",
                        self.name
                    )));
                }
            }
            degree = Some(deg);
            let val = crate::linalg::scale_vector(&term.coeff, &val);
            acc = Some(match acc {
                None => val,
                Some(a) => crate::linalg::add_vectors(&a, &val),
            });
        }
        match (degree, acc) {
            (Some(d), Some(v)) => Ok((d, v)),
            _ => Ok((0, zero_vector(f, self.dim(0)))),
        }
    }

    /// Finite list of nonzero products of basis elements in positive degrees,
    /// each unordered pair once.
    pub fn positive_products(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        let basis = self.basis_elements();
        for (x, &(p, i)) in basis.iter().enumerate() {
            for &(q, j) in &basis[x..] {
                if p == 0 || q == 0 {
                    continue;
                }
                let v = self.product.basis(p, i, q, j);
                if !is_zero_vector(&v) {
                    out.push((
                        self.label(p, i).to_string(),
                        self.label(q, j).to_string(),
                        self.format(p + q, &v),
                    ));
                }
            }
        }
        out
    }
}

/// Validated CDGA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdga(Algebra);

impl std::ops::Deref for Cdga {
    type Target = Algebra;
    fn deref(&self) -> &Algebra {
        &self.0
    }
}

impl Cdga {
    pub fn new(a: Algebra) -> Result<Cdga> {
        if a.window().lo < 0 {
            return Err(Error::invalid(format!(
                "{}: algebras must be nonnegatively graded",
                a.name
            )));
        }
        a.check_unit()?;
        a.check_commutative()?;
        a.check_associative()?;
        a.check_leibniz()?;
        Ok(Cdga(a))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0
    }

    pub fn renamed(mut self, name: &str) -> Cdga {
        self.0.name = name.to_string();
        self
    }

    /// The ground field as a CDGA concentrated in degree 0.
    pub fn ground(field: Field, hi: i64) -> Cdga {
        let window = DegreeWindow::new(0, hi.max(0)).expect("window");
        let space = GradedSpace::new(field, window, [(0, vec!["1".to_string()])].into_iter().collect())
            .expect("space");
        let complex = CochainComplex::zero_differential(space.clone());
        let mut product = Bilinear::zero(&space, &space, &space);
        product.set_basis(0, 0, 0, 0, &[field.one()]);
        Cdga::new(Algebra::explicit("k", complex, 0, product)).expect("ground field")
    }

    /// Cohomology with the unit as preferred degree-0 representative.
    pub fn cohomology(&self) -> Cohomology {
        let pref = [(0, vec![self.unit_vector()])].into_iter().collect();
        self.complex
            .cohomology_preferring(&pref)
            .expect("unit is a cocycle")
    }

    /// Cohomology algebra with zero differential, and the chosen cocycle
    /// representatives.
    pub fn cohomology_algebra(&self) -> (Cdga, Cohomology) {
        let h = self.cohomology();
        let field = self.field();
        let mut labels = BTreeMap::new();
        for d in self.window().degrees() {
            labels.insert(
                d,
                h.representatives(d)
                    .iter()
                    .map(|r| {
                        let s = self.format(d, r);
                        if s.contains(' ') {
                            format!("[{s}]")
                        } else {
                            s
                        }
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let space = GradedSpace::new(field, self.window(), labels).expect("same window");
        let mut product = Bilinear::zero(&space, &space, &space);
        for p in self.window().degrees() {
            for q in self.window().degrees() {
                if p + q > self.window().hi {
                    continue;
                }
                for (i, a) in h.representatives(p).iter().enumerate() {
                    for (j, b) in h.representatives(q).iter().enumerate() {
                        let ab = self.mul(p, a, q, b);
                        product.set_basis(p, i, q, j, &h.class_of(p + q, &ab));
                    }
                }
            }
        }
        let unit = if h.dim(0) > 0 { 0 } else { usize::MAX };
        let algebra = Algebra::explicit(
            &format!("H({})", self.name),
            CochainComplex::zero_differential(space),
            unit,
            product,
        );
        (
            Cdga::new(algebra).expect("cohomology of a CDGA is a CDGA"),
            h,
        )
    }

    /// Poincaré duality test in dimension `n`.
    pub fn check_poincare_duality(&self, n: i64) -> std::result::Result<PoincareDualityCertificate, PdFailure> {
        let (hcdga, h) = self.cohomology_algebra();
        let field = self.field();
        if h.dim(0) != 1 {
            return Err(PdFailure {
                degree: 0,
                reason: format!("H^0 has dimension {}, expected 1", h.dim(0)),
            });
        }
        if n > self.window().hi {
            return Err(PdFailure {
                degree: n,
                reason: format!("dimension {n} exceeds the window {}", self.window()),
            });
        }
        if h.dim(n) != 1 {
            return Err(PdFailure {
                degree: n,
                reason: format!("H^{n} has dimension {}, expected 1", h.dim(n)),
            });
        }
        if let Some((&d, _)) = h.dims().iter().find(|(&d, _)| d > n) {
            return Err(PdFailure {
                degree: d,
                reason: format!("H^{d} ≠ 0 above the dimension {n}"),
            });
        }
        let mut pairings = BTreeMap::new();
        for k in 0..=n {
            let (a, b) = (h.dim(k), h.dim(n - k));
            let mut m = Matrix::zeros(field, a, b);
            for i in 0..a {
                for j in 0..b {
                    m[(i, j)] = hcdga.product.basis(k, i, n - k, j)[0].clone();
                }
            }
            if a != b || m.rank() != a {
                return Err(PdFailure {
                    degree: k,
                    reason: format!("pairing H^{k} ⊗ H^{} → H^{n} is degenerate", n - k),
                });
            }
            pairings.insert(k, m);
        }
        let top_functional = h.projection(n).row(0);
        Ok(PoincareDualityCertificate {
            dimension: n,
            top_functional,
            top_class: h.representatives(n)[0].clone(),
            pairings,
            cohomology: Arc::new(hcdga),
        })
    }

    /// Quotient by a `d`-stable ideal given as a graded subspace.
    pub fn quotient(&self, ideal: &GradedSubspace, name: &str) -> Result<(Cdga, GradedMap)> {
        let (alg, proj) = quotient_algebra(self, ideal, name)?;
        Ok((Cdga::new(alg)?, proj))
    }

    /// Truncation ideal at cut `t`: everything above `t` plus the pivot-rule
    /// complement of the cocycles in degree `t`.
    pub fn truncation_ideal(&self, t: i64) -> GradedSubspace {
        truncation_subspace(&self.complex, t)
    }

    /// Quotient by an acyclic ideal concentrated above `above`, with
    /// surjective quasi-isomorphism.
    pub fn quotient_by_acyclic_ideal(&self, above: i64) -> Result<(Cdga, CdgaMorphism)> {
        if !self.is_connected() {
            return Err(Error::hypothesis(format!("{} is not connected", self.name)));
        }
        let h = self.cohomology();
        if let Some((&d, _)) = h.dims().iter().find(|(&d, _)| d > above) {
            return Err(Error::hypothesis(format!(
                "{}: H^{d} ≠ 0 above degree {above}",
                self.name
            )));
        }
        let ideal = self.truncation_ideal(above + 1);
        let (q, p) = self.quotient(&ideal, &self.name)?;
        let q = Arc::new(q);
        let morphism = CdgaMorphism::new(Arc::new(self.clone()), q.clone(), p)?;
        if !morphism.is_quasi_isomorphism() {
            return Err(Error::Internal("truncation quotient is not a quasi-isomorphism".into()));
        }
        Ok(((*q).clone(), morphism))
    }
}

/// Everything above `t` plus the pivot-rule complement of the cocycles in
/// degree `t`.
pub fn truncation_subspace(c: &CochainComplex, t: i64) -> GradedSubspace {
    let field = c.field();
    let mut vectors = BTreeMap::new();
    for d in c.window().degrees() {
        let n = c.dim(d);
        if d > t {
            vectors.insert(d, (0..n).map(|i| unit_vector(field, n, i)).collect());
        } else if d == t {
            let z = c.diff(t).kernel_basis();
            let comp = crate::linalg::complement_indices(field, n, &z);
            vectors.insert(d, comp.into_iter().map(|i| unit_vector(field, n, i)).collect());
        }
    }
    GradedSubspace::spanned(c.space(), vectors)
}

/// Quotient of a (possibly non-CDGA) algebra by a subspace, checked to be a
/// two-sided `d`-stable ideal.
pub fn quotient_algebra(a: &Algebra, ideal: &GradedSubspace, name: &str) -> Result<(Algebra, GradedMap)> {
    check_ideal(a, ideal)?;
    let (qc, proj) = quotient_complex(&a.complex, ideal)?;
    let space = qc.space().clone();
    let mut product = Bilinear::zero(&space, &space, &space);
    let comp: BTreeMap<i64, Vec<usize>> = a
        .window()
        .degrees()
        .map(|d| (d, ideal.complement(d)))
        .collect();
    for p in a.window().degrees() {
        for q in a.window().degrees() {
            if p + q > a.window().hi {
                continue;
            }
            let pr = proj.block(p + q);
            for (i, &bi) in comp[&p].iter().enumerate() {
                for (j, &bj) in comp[&q].iter().enumerate() {
                    let v = a.product.basis(p, bi, q, bj);
                    let img = if pr.rows() == 0 {
                        Vec::new()
                    } else {
                        pr.mul_vec(&v)
                    };
                    product.set_basis(p, i, q, j, &img);
                }
            }
        }
    }
    let unit = comp[&0]
        .iter()
        .position(|&i| i == a.unit)
        .ok_or_else(|| Error::hypothesis(format!("{name}: the ideal contains the unit")))?;
    Ok((Algebra::explicit(name, qc, unit, product), proj))
}

fn check_ideal(a: &Algebra, ideal: &GradedSubspace) -> Result<()> {
    for d in a.window().degrees() {
        for v in ideal.basis(d) {
            if !ideal.contains(d + 1, &a.d(d, v)) {
                return Err(Error::invalid(format!("ideal is not closed under d in degree {d}")));
            }
            for p in a.window().degrees() {
                if p + d > a.window().hi {
                    continue;
                }
                for i in 0..a.dim(p) {
                    let e = a.space().basis_vector(p, i);
                    if !ideal.contains(p + d, &a.mul(p, &e, d, v)) {
                        return Err(Error::invalid(format!(
                            "subspace is not an ideal: {} times an element of degree {d}",
                            a.label(p, i)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdFailure {
    pub degree: i64,
    pub reason: String,
}

impl std::fmt::Display for PdFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (degree {})", self.reason, self.degree)
    }
}

/// Evidence that a cohomology algebra satisfies Poincaré duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareDualityCertificate {
    pub dimension: i64,
    /// Functional on the cochains of top degree reading off the class of
    /// the chosen fundamental cocycle.
    pub top_functional: Vector,
    pub top_class: Vector,
    /// `H^k × H^{n-k} -> k` in the cohomology basis.
    pub pairings: BTreeMap<i64, Matrix>,
    pub cohomology: Arc<Cdga>,
}

impl PoincareDualityCertificate {
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .pairings
            .iter()
            .filter(|(_, m)| m.rows() > 0)
            .map(|(k, m)| format!("({k},{}) rank {}", self.dimension - k, m.rank()))
            .collect();
        format!(
            "Poincaré duality in dimension {}: pairings {}",
            self.dimension,
            parts.join(", ")
        )
    }
}

/// Degree-0 map of CDGAs, checked to be a unital multiplicative chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaMorphism {
    pub source: Arc<Cdga>,
    pub target: Arc<Cdga>,
    pub map: GradedMap,
}

impl CdgaMorphism {
    pub fn new(source: Arc<Cdga>, target: Arc<Cdga>, map: GradedMap) -> Result<CdgaMorphism> {
        let m = CdgaMorphism { source, target, map };
        m.validate()?;
        Ok(m)
    }

    /// Extends images of atoms multiplicatively along each basis element's
    /// factorization. Atoms that are not mentioned map to zero.
    pub fn from_atom_images(
        source: Arc<Cdga>,
        target: Arc<Cdga>,
        images: &BTreeMap<String, Poly>,
    ) -> Result<CdgaMorphism> {
        let field = source.field();
        let mut atom_values = Vec::new();
        for atom in &source.atoms {
            let v = match images.get(&atom.name) {
                Some(p) => {
                    let (deg, v) = target.eval(p)?;
                    if deg != atom.degree && !is_zero_vector(&v) {
                        return Err(Error::invalid(format!(
                            "image of {} has degree {deg}, expected {}",
                            atom.name, atom.degree
                        )));
                    }
                    if deg != atom.degree {
                        zero_vector(field, target.dim(atom.degree))
                    } else {
                        v
                    }
                }
                None => zero_vector(field, target.dim(atom.degree)),
            };
            atom_values.push(v);
        }
        for name in images.keys() {
            if !source.atoms.iter().any(|a| &a.name == name) {
                return Err(Error::invalid(format!(
                    "{} has no generator or basis element `{name}`",
                    source.name
                )));
            }
        }
        let mut blocks = BTreeMap::new();
        for d in source.window().degrees() {
            let mut m = Matrix::zeros(field, target.dim(d), source.dim(d));
            for i in 0..source.dim(d) {
                let factors = &source.factorization[&(d, i)];
                let mut deg = 0;
                let mut val = target.unit_vector();
                for &a in factors {
                    let ad = source.atoms[a].degree;
                    val = target.mul(deg, &val, ad, &atom_values[a]);
                    deg += ad;
                }
                if deg == d {
                    m.set_column(i, &val);
                }
            }
            blocks.insert(d, m);
        }
        let map = GradedMap::new(source.space().clone(), target.space().clone(), 0, blocks)?;
        CdgaMorphism::new(source, target, map)
    }

    pub fn identity(a: Arc<Cdga>) -> CdgaMorphism {
        let map = GradedMap::identity(a.space());
        CdgaMorphism {
            source: a.clone(),
            target: a,
            map,
        }
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        CochainComplex::check_chain_map(&s.complex, &t.complex, &self.map)
            .map_err(|e| Error::invalid(format!("{} -> {}: {e}", s.name, t.name)))?;
        if self.map.apply(0, &s.unit_vector()) != t.unit_vector() {
            return Err(Error::invalid(format!("{} -> {}: unit not preserved", s.name, t.name)));
        }
        let hi = s.window().hi.min(t.window().hi);
        for p in s.window().degrees() {
            for q in s.window().degrees() {
                if p + q > hi {
                    continue;
                }
                for i in 0..s.dim(p) {
                    let fa = self.map.apply(p, &s.space().basis_vector(p, i));
                    for j in 0..s.dim(q) {
                        let fb = self.map.apply(q, &s.space().basis_vector(q, j));
                        let lhs = self.map.apply(p + q, &s.product.basis(p, i, q, j));
                        let rhs = t.mul(p, &fa, q, &fb);
                        if lhs != rhs {
                            return Err(Error::invalid(format!(
                                "{} -> {}: not multiplicative on ({}, {})",
                                s.name,
                                t.name,
                                s.label(p, i),
                                s.label(q, j)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, first: &CdgaMorphism) -> Result<CdgaMorphism> {
        CdgaMorphism::new(first.source.clone(), self.target.clone(), self.map.compose(&first.map))
    }

    /// `H^k` of the morphism in the unit-first cohomology bases.
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
}

/// One monomial term: a coefficient times an ordered product of named
/// factors with exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub factors: Vec<(String, u32)>,
}

/// Polynomial expression in named elements, kept in written order so that
/// odd factors pick up their Koszul signs when evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<Term>);

impl Poly {
    pub fn atom(field: Field, name: &str) -> Poly {
        Poly(vec![Term {
            coeff: field.one(),
            factors: vec![(name.to_string(), 1)],
        }])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|t| t.coeff.is_zero())
    }
}

/// Free graded commutative presentation: generators of positive degree,
/// differentials of generators, and relations.
#[derive(Clone, Debug, Default)]
pub struct FreePresentation {
    pub generators: Vec<(String, i64)>,
    pub differentials: Vec<(String, Poly)>,
    pub relations: Vec<Poly>,
}

type Exponents = Vec<u32>;

struct FreeAlgebra<'a> {
    field: Field,
    degrees: Vec<i64>,
    names: &'a [(String, i64)],
    hi: i64,
}

impl FreeAlgebra<'_> {
    fn degree(&self, m: &Exponents) -> i64 {
        m.iter().zip(&self.degrees).map(|(&e, &d)| e as i64 * d).sum()
    }

    /// Koszul sign and product of two monomials, or `None` if an odd
    /// generator is squared.
    fn mul_monomials(&self, a: &Exponents, b: &Exponents) -> Option<(bool, Exponents)> {
        let mut exps = Vec::with_capacity(a.len());
        let mut parity = 0i64;
        for g in 0..a.len() {
            let e = a[g] + b[g];
            if self.degrees[g] % 2 != 0 && e > 1 {
                return None;
            }
            exps.push(e);
            // moving b's factors of generator g left past a's factors of
            // generators with larger index
            if b[g] > 0 {
                for (h, &ah) in a.iter().enumerate().skip(g + 1) {
                    parity += b[g] as i64 * ah as i64 * self.degrees[g] * self.degrees[h];
                }
            }
        }
        Some((parity % 2 != 0, exps))
    }

    fn mul(&self, a: &BTreeMap<Exponents, Scalar>, b: &BTreeMap<Exponents, Scalar>) -> BTreeMap<Exponents, Scalar> {
        let mut out: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let Some((neg, m)) = self.mul_monomials(ma, mb) else {
                    continue;
                };
                if self.degree(&m) > self.hi {
                    continue;
                }
                let c = if neg { -(ca * cb) } else { ca * cb };
                let e = out.entry(m).or_insert_with(|| self.field.zero());
                *e = &*e + &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn generator(&self, g: usize) -> BTreeMap<Exponents, Scalar> {
        let mut m = vec![0; self.degrees.len()];
        m[g] = 1;
        [(m, self.field.one())].into_iter().collect()
    }

    fn eval(&self, p: &Poly) -> Result<BTreeMap<Exponents, Scalar>> {
        let mut out: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for t in &p.0 {
            let unit = vec![0; self.degrees.len()];
            let mut acc: BTreeMap<Exponents, Scalar> = [(unit, t.coeff.clone())].into_iter().collect();
            for (name, e) in &t.factors {
                let g = self
                    .names
                    .iter()
                    .position(|(n, _)| n == name)
                    .ok_or_else(|| Error::invalid(format!("unknown generator `{name}`")))?;
                for _ in 0..*e {
                    acc = self.mul(&acc, &self.generator(g));
                }
            }
            for (m, c) in acc {
                let e = out.entry(m).or_insert_with(|| self.field.zero());
                *e = &*e + &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn label(&self, m: &Exponents) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| {
                if e == 1 {
                    self.names[g].0.clone()
                } else {
                    format!("{}^{e}", self.names[g].0)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Monomials per degree, largest exponent vector first.
    fn monomials(&self) -> BTreeMap<i64, Vec<Exponents>> {
        let mut out: BTreeMap<i64, Vec<Exponents>> = BTreeMap::new();
        let n = self.degrees.len();
        let mut stack = vec![(0usize, vec![0u32; n], 0i64)];
        while let Some((g, m, deg)) = stack.pop() {
            if g == n {
                out.entry(deg).or_default().push(m);
                continue;
            }
            let d = self.degrees[g];
            let max = if d % 2 != 0 { 1 } else { u32::MAX };
            let mut e = 0u32;
            while e <= max && deg + e as i64 * d <= self.hi {
                let mut m2 = m.clone();
                m2[g] = e;
                stack.push((g + 1, m2, deg + e as i64 * d));
                e += 1;
            }
        }
        for v in out.values_mut() {
            v.sort_by(|a, b| b.cmp(a));
        }
        out
    }
}

/// Builds `∧V / (relations)` truncated above `window.hi`, with the
/// differential determined by its values on generators.
pub fn materialize_free_cdga(
    name: &str,
    field: Field,
    presentation: &FreePresentation,
    window: DegreeWindow,
) -> Result<Cdga> {
    if window.lo != 0 {
        return Err(Error::invalid(format!("{name}: window must start at degree 0")));
    }
    let mut seen = BTreeSet::new();
    for (g, d) in &presentation.generators {
        if *d <= 0 {
            return Err(Error::invalid(format!(
                "{name}: generator {g} must have positive degree (connected presentations only)"
            )));
        }
        if *d > window.hi {
            return Err(Error::invalid(format!(
                "degenerate window: generator {g} of degree {d} lies above the window top {}",
                window.hi
            )));
        }
        if !seen.insert(g.clone()) {
            return Err(Error::invalid(format!("{name}: generator {g} declared twice")));
        }
    }
    let free = FreeAlgebra {
        field,
        degrees: presentation.generators.iter().map(|(_, d)| *d).collect(),
        names: &presentation.generators,
        hi: window.hi,
    };
    let ngens = free.degrees.len();
    let mut dgen: Vec<BTreeMap<Exponents, Scalar>> = vec![BTreeMap::new(); ngens];
    for (g, p) in &presentation.differentials {
        let idx = presentation
            .generators
            .iter()
            .position(|(n, _)| n == g)
            .ok_or_else(|| Error::invalid(format!("{name}: d of unknown generator `{g}`")))?;
        let v = free.eval(p)?;
        let want = free.degrees[idx] + 1;
        if v.keys().any(|m| free.degree(m) != want) || !free_term_degrees_ok(&free, p, want)? {
            return Err(Error::invalid(format!(
                "{name}: differential must raise degree by 1 (d {g})"
            )));
        }
        dgen[idx] = v;
    }
    let mut relations = Vec::new();
    for p in &presentation.relations {
        let v = free.eval(p)?;
        let degs: BTreeSet<i64> = v.keys().map(|m| free.degree(m)).collect();
        if degs.len() > 1 {
            return Err(Error::invalid(format!("{name}: relation is not homogeneous")));
        }
        if let Some(&d) = degs.iter().next() {
            relations.push((d, v));
        }
    }

    let monomials = free.monomials();
    let index: BTreeMap<i64, BTreeMap<Exponents, usize>> = monomials
        .iter()
        .map(|(&d, ms)| (d, ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()))
        .collect();
    let to_vector = |d: i64, p: &BTreeMap<Exponents, Scalar>| -> Vector {
        let n = monomials.get(&d).map_or(0, Vec::len);
        let mut v = zero_vector(field, n);
        for (m, c) in p {
            if free.degree(m) == d {
                v[index[&d][m]] = c.clone();
            }
        }
        v
    };

    // d on monomials: d(g·m') = d(g)·m' + (-1)^{|g|} g·d(m')
    let mut dmono: BTreeMap<Exponents, BTreeMap<Exponents, Scalar>> = BTreeMap::new();
    let mut all: Vec<&Exponents> = monomials.values().flatten().collect();
    all.sort_by_key(|m| m.iter().sum::<u32>());
    for m in all {
        let Some(g) = m.iter().position(|&e| e > 0) else {
            dmono.insert(m.clone(), BTreeMap::new());
            continue;
        };
        let mut rest = m.clone();
        rest[g] -= 1;
        let gen = free.generator(g);
        let rest_poly: BTreeMap<Exponents, Scalar> = [(rest.clone(), field.one())].into_iter().collect();
        let mut out = free.mul(&dgen[g], &rest_poly);
        let drest = dmono.get(&rest).cloned().unwrap_or_default();
        let t2 = free.mul(&gen, &drest);
        let sign = field.sign(free.degrees[g]);
        for (k, c) in t2 {
            let e = out.entry(k).or_insert_with(|| field.zero());
            *e = &*e + &(&sign * &c);
        }
        out.retain(|_, c| !c.is_zero());
        dmono.insert(m.clone(), out);
    }
    let d_poly = |p: &BTreeMap<Exponents, Scalar>| -> BTreeMap<Exponents, Scalar> {
        let mut out: BTreeMap<Exponents, Scalar> = BTreeMap::new();
        for (m, c) in p {
            if let Some(dm) = dmono.get(m) {
                for (k, x) in dm {
                    let e = out.entry(k.clone()).or_insert_with(|| field.zero());
                    *e = &*e + &(c * x);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };

    // ideal spanned by relation·monomial
    let mut ideal_vectors: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
    for (rd, r) in &relations {
        for (&md, ms) in &monomials {
            if rd + md > window.hi {
                continue;
            }
            for m in ms {
                let mp: BTreeMap<Exponents, Scalar> = [(m.clone(), field.one())].into_iter().collect();
                let prod = free.mul(r, &mp);
                ideal_vectors.entry(rd + md).or_default().push(to_vector(rd + md, &prod));
            }
        }
    }
    let free_space = GradedSpace::new(
        field,
        window,
        monomials
            .iter()
            .map(|(&d, ms)| (d, ms.iter().map(|m| free.label(m)).collect()))
            .collect(),
    )?;
    let ideal = GradedSubspace::spanned(&free_space, ideal_vectors);
    for (rd, r) in &relations {
        if rd + 1 > window.hi {
            continue;
        }
        if !ideal.contains(rd + 1, &to_vector(rd + 1, &d_poly(r))) {
            return Err(Error::invalid(format!(
                "{name}: d of a relation is not in the ideal, so d is ill-defined on the quotient"
            )));
        }
    }

    // quotient basis and structure constants
    let mut labels = BTreeMap::new();
    let mut basis: BTreeMap<i64, Vec<Exponents>> = BTreeMap::new();
    let mut proj: BTreeMap<i64, Matrix> = BTreeMap::new();
    for d in window.degrees() {
        let comp = ideal.complement(d);
        let ms = monomials.get(&d).cloned().unwrap_or_default();
        basis.insert(d, comp.iter().map(|&i| ms[i].clone()).collect());
        labels.insert(d, comp.iter().map(|&i| free.label(&ms[i])).collect::<Vec<_>>());
        proj.insert(d, ideal.quotient_projection(d));
    }
    let project = |d: i64, v: &Vector| -> Vector {
        let p = &proj[&d];
        if p.rows() == 0 {
            Vec::new()
        } else {
            p.mul_vec(v)
        }
    };
    let space = GradedSpace::new(field, window, labels)?;
    let mut dblocks = BTreeMap::new();
    for d in window.degrees() {
        let n1 = space.dim(d + 1);
        let mut m = Matrix::zeros(field, n1, space.dim(d));
        if window.contains(d + 1) {
            for (j, mono) in basis[&d].iter().enumerate() {
                let dm = &dmono[mono];
                m.set_column(j, &project(d + 1, &to_vector(d + 1, dm)));
            }
        }
        dblocks.insert(d, m);
    }
    let complex = CochainComplex::new(space.clone(), dblocks)
        .map_err(|_| Error::invalid(format!("{name}: d∘d ≠ 0 on the quotient")))?;
    let mut product = Bilinear::zero(&space, &space, &space);
    for p in window.degrees() {
        for q in window.degrees() {
            if p + q > window.hi {
                continue;
            }
            for (i, a) in basis[&p].iter().enumerate() {
                for (j, b) in basis[&q].iter().enumerate() {
                    let ap: BTreeMap<Exponents, Scalar> = [(a.clone(), field.one())].into_iter().collect();
                    let bp: BTreeMap<Exponents, Scalar> = [(b.clone(), field.one())].into_iter().collect();
                    let v = to_vector(p + q, &free.mul(&ap, &bp));
                    product.set_basis(p, i, q, j, &project(p + q, &v));
                }
            }
        }
    }
    let unit = basis[&0]
        .iter()
        .position(|m| m.iter().all(|&e| e == 0))
        .ok_or_else(|| Error::invalid(format!("{name}: relations kill the unit")))?;
    let mut atoms = Vec::new();
    for (g, (gname, gd)) in presentation.generators.iter().enumerate() {
        let v = to_vector(*gd, &free.generator(g));
        atoms.push(Atom {
            name: gname.clone(),
            degree: *gd,
            value: project(*gd, &v),
        });
    }
    let mut factorization = BTreeMap::new();
    for d in window.degrees() {
        for (i, m) in basis[&d].iter().enumerate() {
            let mut f = Vec::new();
            for (g, &e) in m.iter().enumerate() {
                f.extend(std::iter::repeat_n(g, e as usize));
            }
            factorization.insert((d, i), f);
        }
    }
    let algebra = Algebra {
        name: name.to_string(),
        complex,
        unit,
        product,
        atoms,
        factorization,
    };
    Cdga::new(algebra)
}

fn free_term_degrees_ok(free: &FreeAlgebra<'_>, p: &Poly, want: i64) -> Result<bool> {
    for t in &p.0 {
        let mut deg = 0;
        for (name, e) in &t.factors {
            let g = free
                .names
                .iter()
                .position(|(n, _)| n == name)
                .ok_or_else(|| Error::invalid(format!("unknown generator `{name}`")))?;
            deg += free.degrees[g] * *e as i64;
        }
        if deg != want && !t.coeff.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Linear combination of named basis elements.
pub type LinComb = Vec<(Scalar, String)>;

/// Explicit structure constants: basis, products of basis pairs and
/// differentials of basis elements, all as combinations of basis names.
#[derive(Clone, Debug, Default)]
pub struct ExplicitPresentation {
    pub basis: Vec<(String, i64)>,
    pub products: Vec<(String, String, LinComb)>,
    pub differentials: Vec<(String, LinComb)>,
    pub unit: Option<String>,
}

/// Builds a CDGA from explicit structure constants. Products with the unit
/// are implied; unlisted products are zero, except that a listed `a b`
/// also fixes `b a` by graded commutativity when `b a` is not listed.
pub fn explicit_cdga(
    name: &str,
    field: Field,
    pres: &ExplicitPresentation,
    window: DegreeWindow,
) -> Result<Cdga> {
    if window.lo != 0 {
        return Err(Error::invalid(format!("{name}: window must start at degree 0")));
    }
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut pos: BTreeMap<String, (i64, usize)> = BTreeMap::new();
    for (b, d) in &pres.basis {
        if !window.contains(*d) {
            return Err(Error::invalid(format!(
                "degenerate window: basis element {b} of degree {d} outside {window}"
            )));
        }
        if pos.contains_key(b) {
            return Err(Error::invalid(format!("{name}: basis element {b} declared twice")));
        }
        let l = labels.entry(*d).or_default();
        pos.insert(b.clone(), (*d, l.len()));
        l.push(b.clone());
    }
    let unit_name = match &pres.unit {
        Some(u) => u.clone(),
        None => {
            let zero = labels.get(&0).cloned().unwrap_or_default();
            match zero.as_slice() {
                [u] => u.clone(),
                _ => {
                    return Err(Error::invalid(format!(
                        "{name}: declare `unit` when degree 0 is not one-dimensional"
                    )))
                }
            }
        }
    };
    let (ud, unit) = *pos
        .get(&unit_name)
        .ok_or_else(|| Error::invalid(format!("{name}: unknown unit {unit_name}")))?;
    if ud != 0 {
        return Err(Error::invalid(format!("{name}: unit must have degree 0")));
    }
    let space = GradedSpace::new(field, window, labels)?;
    let lookup = |b: &str| -> Result<(i64, usize)> {
        pos.get(b)
            .copied()
            .ok_or_else(|| Error::invalid(format!("{name}: unknown basis element `{b}`")))
    };
    let combo = |target_deg: i64, terms: &[(Scalar, String)], what: &str| -> Result<Vector> {
        let mut v = zero_vector(field, space.dim(target_deg));
        for (c, b) in terms {
            let (d, i) = lookup(b)?;
            if d != target_deg {
                return Err(Error::invalid(format!(
                    "{name}: {what}: term {b} has degree {d}, expected {target_deg}"
                )));
            }
            v[i] = &v[i] + c;
        }
        Ok(v)
    };
    let mut dblocks = BTreeMap::new();
    for d in window.degrees() {
        dblocks.insert(d, Matrix::zeros(field, space.dim(d + 1), space.dim(d)));
    }
    for (b, terms) in &pres.differentials {
        let (d, i) = lookup(b)?;
        let want = d + 1;
        if terms.iter().any(|(c, t)| !c.is_zero() && lookup(t).map(|x| x.0) != Ok(want))
            && terms.iter().all(|(_, t)| lookup(t).is_ok()) {
                return Err(Error::invalid(format!(
                    "{name}: differential must raise degree by 1 (d {b})"
                )));
            }
        if want > window.hi {
            if terms.iter().any(|(c, _)| !c.is_zero()) {
                return Err(Error::invalid(format!(
                    "{name}: d {b} lands above the window"
                )));
            }
            continue;
        }
        let v = combo(want, terms, &format!("d {b}"))?;
        dblocks.get_mut(&d).expect("degree in window").set_column(i, &v);
    }
    let complex = CochainComplex::new(space.clone(), dblocks)
        .map_err(|e| Error::invalid(format!("{name}: {e}")))?;
    let mut product = Bilinear::zero(&space, &space, &space);
    let mut set: BTreeSet<((i64, usize), (i64, usize))> = BTreeSet::new();
    for (a, b, terms) in &pres.products {
        let (p, i) = lookup(a)?;
        let (q, j) = lookup(b)?;
        if p + q > window.hi {
            if terms.iter().any(|(c, _)| !c.is_zero()) {
                return Err(Error::invalid(format!(
                    "{name}: product {a} {b} lands above the window"
                )));
            }
            continue;
        }
        let v = combo(p + q, terms, &format!("product {a} {b}"))?;
        product.set_basis(p, i, q, j, &v);
        set.insert(((p, i), (q, j)));
    }
    for (a, b, _) in &pres.products {
        let (p, i) = lookup(a)?;
        let (q, j) = lookup(b)?;
        if p + q > window.hi || set.contains(&((q, j), (p, i))) {
            continue;
        }
        let v = product.basis(p, i, q, j);
        product.set_basis(q, j, p, i, &crate::linalg::scale_vector(&field.sign(p * q), &v));
        set.insert(((q, j), (p, i)));
    }
    for d in window.degrees() {
        for k in 0..space.dim(d) {
            let e = space.basis_vector(d, k);
            if !set.contains(&((0, unit), (d, k))) {
                product.set_basis(0, unit, d, k, &e);
            }
            if !set.contains(&((d, k), (0, unit))) {
                product.set_basis(d, k, 0, unit, &e);
            }
        }
    }
    let algebra = Algebra::explicit(name, complex, unit, product);
    Cdga::new(algebra)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn q() -> Field {
        Field::Rational
    }

    pub fn poly(field: Field, terms: &[(i64, &[(&str, u32)])]) -> Poly {
        Poly(
            terms
                .iter()
                .map(|(c, f)| Term {
                    coeff: field.int(*c),
                    factors: f.iter().map(|(n, e)| (n.to_string(), *e)).collect(),
                })
                .collect(),
        )
    }

    /// `H^*(S^n)` as a free presentation with the relation `e^2`.
    pub fn sphere(field: Field, n: i64, hi: i64) -> Cdga {
        let pres = FreePresentation {
            generators: vec![("e".into(), n)],
            differentials: vec![],
            relations: vec![poly(field, &[(1, &[("e", 2)])])],
        };
        materialize_free_cdga(&format!("S{n}"), field, &pres, DegreeWindow::new(0, hi).unwrap()).unwrap()
    }

    pub fn truncated_poly(field: Field, deg: i64, top: u32, hi: i64) -> Cdga {
        let pres = FreePresentation {
            generators: vec![("x".into(), deg)],
            differentials: vec![],
            relations: vec![poly(field, &[(1, &[("x", top + 1)])])],
        };
        materialize_free_cdga("P", field, &pres, DegreeWindow::new(0, hi).unwrap()).unwrap()
    }

    fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn truncated_polynomial_algebra() {
        let a = truncated_poly(q(), 2, 2, 8);
        assert_eq!(a.space().dims(), dims(&[(0, 1), (2, 1), (4, 1)]));
        assert_eq!(a.cohomology().dims(), dims(&[(0, 1), (2, 1), (4, 1)]));
        let s6 = sphere(q(), 6, 6);
        assert_eq!(s6.cohomology().dims(), dims(&[(0, 1), (6, 1)]));
    }

    #[test]
    fn sullivan_model_of_cp2() {
        let pres = FreePresentation {
            generators: vec![("x".into(), 2), ("y".into(), 5)],
            differentials: vec![("y".into(), poly(q(), &[(1, &[("x", 3)])]))],
            relations: vec![],
        };
        let a = materialize_free_cdga("CP2", q(), &pres, DegreeWindow::new(0, 8).unwrap()).unwrap();
        assert_eq!(a.cohomology().dims(), dims(&[(0, 1), (2, 1), (4, 1)]));
        let (h, _) = a.cohomology_algebra();
        // x·x = x^2 in cohomology
        let x2 = h.product.basis(2, 0, 2, 0);
        assert_eq!(x2, vec![q().one()]);
        let (quot, p) = a.quotient_by_acyclic_ideal(4).unwrap();
        assert!(quot.space().dims().keys().all(|&d| d <= 5));
        assert_eq!(quot.cohomology().dims(), a.cohomology().dims());
        assert!(p.is_quasi_isomorphism());
    }

    #[test]
    fn odd_generators_anticommute() {
        let pres = FreePresentation {
            generators: vec![("a".into(), 3), ("b".into(), 3)],
            differentials: vec![],
            relations: vec![],
        };
        let alg = materialize_free_cdga("E", q(), &pres, DegreeWindow::new(0, 6).unwrap()).unwrap();
        let (d, ab) = alg.eval(&poly(q(), &[(1, &[("a", 1), ("b", 1)])])).unwrap();
        let (_, ba) = alg.eval(&poly(q(), &[(1, &[("b", 1), ("a", 1)])])).unwrap();
        assert_eq!(d, 6);
        assert_eq!(ab, crate::linalg::scale_vector(&q().int(-1), &ba));
        let (_, aa) = alg.eval(&poly(q(), &[(1, &[("a", 2)])])).unwrap();
        assert!(is_zero_vector(&aa));
    }

    #[test]
    fn wrong_degree_differential() {
        let pres = FreePresentation {
            generators: vec![("x".into(), 2), ("y".into(), 4)],
            differentials: vec![("y".into(), poly(q(), &[(1, &[("x", 2)])]))],
            relations: vec![],
        };
        let err = materialize_free_cdga("A", q(), &pres, DegreeWindow::new(0, 8).unwrap()).unwrap_err();
        assert!(err.to_string().contains("differential must raise degree by 1"));
    }

    #[test]
    fn noncommutative_constants_rejected() {
        let pres = ExplicitPresentation {
            basis: vec![("1".into(), 0), ("a".into(), 1), ("b".into(), 1), ("c".into(), 2)],
            products: vec![
                ("a".into(), "b".into(), vec![(q().one(), "c".into())]),
                ("b".into(), "a".into(), vec![(q().one(), "c".into())]),
            ],
            differentials: vec![],
            unit: None,
        };
        let err = explicit_cdga("A", q(), &pres, DegreeWindow::new(0, 2).unwrap()).unwrap_err();
        assert!(err.to_string().contains("(a, b)"), "{err}");
    }

    #[test]
    fn degenerate_window_rejected() {
        let pres = FreePresentation {
            generators: vec![("x".into(), 6)],
            ..Default::default()
        };
        let err = materialize_free_cdga("A", q(), &pres, DegreeWindow::new(0, 4).unwrap()).unwrap_err();
        assert!(err.to_string().contains("degenerate window"));
    }

    #[test]
    fn acyclic_algebra() {
        let pres = FreePresentation {
            generators: vec![("a".into(), 3), ("b".into(), 4)],
            differentials: vec![("a".into(), poly(q(), &[(1, &[("b", 1)])]))],
            relations: vec![],
        };
        let a = materialize_free_cdga("Acyc", q(), &pres, DegreeWindow::new(0, 4).unwrap()).unwrap();
        assert_eq!(a.cohomology().dims(), dims(&[(0, 1)]));
        let (h, _) = a.cohomology_algebra();
        assert_eq!(h.space().dims(), dims(&[(0, 1)]));
        let (quot, _) = a.quotient_by_acyclic_ideal(0).unwrap();
        assert_eq!(quot.space().dims(), dims(&[(0, 1)]));
    }

    #[test]
    fn poincare_duality_checks() {
        assert!(sphere(q(), 6, 6).check_poincare_duality(6).is_ok());
        let cp2 = truncated_poly(q(), 2, 2, 4);
        let cert = cp2.check_poincare_duality(4).unwrap();
        assert_eq!(cert.pairings[&2], Matrix::from_ints(q(), &[&[1]]));
        let pres = ExplicitPresentation {
            basis: vec![("1".into(), 0), ("a".into(), 2), ("b".into(), 4), ("t".into(), 6)],
            products: vec![],
            differentials: vec![],
            unit: None,
        };
        let wedge = explicit_cdga("W", q(), &pres, DegreeWindow::new(0, 6).unwrap()).unwrap();
        let fail = wedge.check_poincare_duality(6).unwrap_err();
        assert_eq!(fail.degree, 2);
        assert!(fail.reason.contains("H^2 ⊗ H^4"));
    }

    #[test]
    fn morphism_from_generator_images() {
        let s6 = Arc::new(sphere(q(), 6, 8));
        let s2 = Arc::new(sphere(q(), 2, 8));
        let images = BTreeMap::new();
        let phi = CdgaMorphism::from_atom_images(s6.clone(), s2.clone(), &images).unwrap();
        assert!(phi.map.block(6).is_zero());
        let bad: BTreeMap<String, Poly> = [("e".to_string(), poly(q(), &[(1, &[("e", 1)])]))].into_iter().collect();
        assert!(CdgaMorphism::from_atom_images(s6, s2, &bad).is_err());
    }
}
