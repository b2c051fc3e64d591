//! Graded vector spaces on a finite degree window, graded linear maps,
//! cochain complexes and their cohomology, suspension, duals and cones.
//!
//! Sign conventions:
//! * `(s^k C)^j = C^{k+j}` and `d(s^k x) = (-1)^k s^k dx`;
//! * `(#C)^i = hom(C^{-i}, k)` with `<x, δf> = -(-1)^{|x|} <dx, f>`;
//! * the cone of `f: X -> Y` is `Y ⊕ sX` with `d(y, sx) = (dy + f(x), -s dx)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    complement_indices, independent_subset, is_zero_vector, unit_vector, zero_vector, Field,
    Matrix, Scalar, Vector,
};

/// Closed range of degrees on which a graded object is fully known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<DegreeWindow> {
        if lo > hi {
            return Err(Error::invalid(format!("empty degree window [{lo}, {hi}]")));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn shift(&self, k: i64) -> DegreeWindow {
        DegreeWindow {
            lo: self.lo + k,
            hi: self.hi + k,
        }
    }

    pub fn mirror(&self) -> DegreeWindow {
        DegreeWindow {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn union(&self, other: &DegreeWindow) -> DegreeWindow {
        DegreeWindow {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

impl fmt::Display for DegreeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Combines a suspension exponent with an existing label, so that
/// `s^a` followed by `s^b` reads `s^{a+b}` and cancels to the bare label.
pub fn suspend_label(label: &str, k: i64) -> String {
    if k == 0 {
        return label.to_string();
    }
    let (e, rest) = split_suspension(label);
    match e + k {
        0 => rest.to_string(),
        1 => format!("s·{rest}"),
        t => format!("s^{t}·{rest}"),
    }
}

fn split_suspension(label: &str) -> (i64, &str) {
    if let Some(rest) = label.strip_prefix("s·") {
        return (1, rest);
    }
    if let Some(tail) = label.strip_prefix("s^") {
        if let Some((num, rest)) = tail.split_once('·') {
            if let Ok(e) = num.parse::<i64>() {
                return (e, rest);
            }
        }
    }
    (0, label)
}

pub fn dual_label(label: &str) -> String {
    format!("#{label}")
}

/// Graded vector space: a list of basis labels per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    field: Field,
    window: DegreeWindow,
    labels: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new(
        field: Field,
        window: DegreeWindow,
        mut labels: BTreeMap<i64, Vec<String>>,
    ) -> Result<GradedSpace> {
        if let Some((&d, _)) = labels
            .iter()
            .find(|(d, l)| !window.contains(**d) && !l.is_empty())
        {
            return Err(Error::invalid(format!(
                "basis element in degree {d} outside window {window}"
            )));
        }
        labels.retain(|d, _| window.contains(*d));
        for d in window.degrees() {
            labels.entry(d).or_default();
        }
        Ok(GradedSpace {
            field,
            window,
            labels,
        })
    }

    pub fn zero(field: Field, window: DegreeWindow) -> GradedSpace {
        GradedSpace::new(field, window, BTreeMap::new()).expect("empty space")
    }

    /// Space with the given dimensions and generated labels `prefix{d}_{i}`.
    pub fn from_dims(
        field: Field,
        window: DegreeWindow,
        dims: &BTreeMap<i64, usize>,
        prefix: &str,
    ) -> Result<GradedSpace> {
        let labels = dims
            .iter()
            .map(|(&d, &n)| (d, (0..n).map(|i| format!("{prefix}{d}_{i}")).collect()))
            .collect();
        GradedSpace::new(field, window, labels)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn dim(&self, d: i64) -> usize {
        self.labels.get(&d).map_or(0, Vec::len)
    }

    pub fn labels(&self, d: i64) -> &[String] {
        self.labels.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn total_dim(&self) -> usize {
        self.labels.values().map(Vec::len).sum()
    }

    /// Nonzero dimensions only.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.labels
            .iter()
            .filter(|(_, l)| !l.is_empty())
            .map(|(&d, l)| (d, l.len()))
            .collect()
    }

    /// Lowest and highest degrees carrying a basis element.
    pub fn support(&self) -> Option<(i64, i64)> {
        let dims = self.dims();
        Some((*dims.keys().next()?, *dims.keys().next_back()?))
    }

    pub fn with_window(&self, window: DegreeWindow) -> Result<GradedSpace> {
        GradedSpace::new(self.field, window, self.labels.clone())
    }

    pub fn suspend(&self, k: i64) -> GradedSpace {
        let labels = self
            .labels
            .iter()
            .map(|(&d, l)| (d - k, l.iter().map(|x| suspend_label(x, k)).collect()))
            .collect();
        GradedSpace::new(self.field, self.window.shift(-k), labels).expect("shifted window")
    }

    pub fn dual(&self) -> GradedSpace {
        let labels = self
            .labels
            .iter()
            .map(|(&d, l)| (-d, l.iter().map(|x| dual_label(x)).collect()))
            .collect();
        GradedSpace::new(self.field, self.window.mirror(), labels).expect("mirrored window")
    }

    /// `self ⊕ other`, with the basis of `self` listed first in each degree.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        assert_eq!(self.field, other.field);
        let window = self.window.union(&other.window);
        let labels = window
            .degrees()
            .map(|d| {
                let mut l = self.labels(d).to_vec();
                l.extend_from_slice(other.labels(d));
                (d, l)
            })
            .collect();
        GradedSpace::new(self.field, window, labels).expect("union window")
    }

    pub fn basis_vector(&self, d: i64, i: usize) -> Vector {
        unit_vector(self.field, self.dim(d), i)
    }

    pub fn zero_vector(&self, d: i64) -> Vector {
        zero_vector(self.field, self.dim(d))
    }

    /// Degree and index of a labelled basis element.
    pub fn find(&self, label: &str) -> Option<(i64, usize)> {
        self.labels
            .iter()
            .find_map(|(&d, l)| l.iter().position(|x| x == label).map(|i| (d, i)))
    }

    /// Human-readable linear combination of basis elements.
    pub fn format_vector(&self, d: i64, v: &[Scalar]) -> String {
        format_combination(self.labels(d), v)
    }
}

/// Renders `Σ c_i·label_i`, or `0`.
pub fn format_combination(labels: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (l, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs.is_one() {
            out.push_str(l);
        } else {
            out.push_str(&format!("{abs}*{l}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Linear map raising degree by `shift`, stored as one block per source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: i64,
    blocks: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: i64,
        mut blocks: BTreeMap<i64, Matrix>,
    ) -> Result<GradedMap> {
        let field = source.field;
        for d in source.window.degrees() {
            let (r, c) = (target.dim(d + shift), source.dim(d));
            let b = blocks
                .entry(d)
                .or_insert_with(|| Matrix::zeros(field, r, c));
            if (b.rows(), b.cols()) != (r, c) {
                return Err(Error::invalid(format!(
                    "block in degree {d} is {}x{}, expected {r}x{c}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        if let Some((d, _)) = blocks
            .iter()
            .find(|(d, b)| !source.window.contains(**d) && !b.is_zero())
        {
            return Err(Error::invalid(format!("map block in degree {d} outside window")));
        }
        blocks.retain(|d, _| source.window.contains(*d));
        Ok(GradedMap {
            source,
            target,
            shift,
            blocks,
        })
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace, shift: i64) -> GradedMap {
        GradedMap::new(source.clone(), target.clone(), shift, BTreeMap::new()).expect("zero map")
    }

    pub fn identity(space: &GradedSpace) -> GradedMap {
        let blocks = space
            .window
            .degrees()
            .map(|d| (d, Matrix::identity(space.field, space.dim(d))))
            .collect();
        GradedMap::new(space.clone(), space.clone(), 0, blocks).expect("identity")
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    /// Block from source degree `d` to target degree `d + shift`.
    pub fn block(&self, d: i64) -> Matrix {
        match self.blocks.get(&d) {
            Some(b) => b.clone(),
            None => Matrix::zeros(
                self.field(),
                self.target.dim(d + self.shift),
                self.source.dim(d),
            ),
        }
    }

    pub fn block_ref(&self, d: i64) -> Option<&Matrix> {
        self.blocks.get(&d)
    }

    pub fn apply(&self, d: i64, v: &[Scalar]) -> Vector {
        match self.blocks.get(&d) {
            Some(b) => b.mul_vec(v),
            None => zero_vector(self.field(), self.target.dim(d + self.shift)),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let blocks = other
            .source
            .window
            .degrees()
            .map(|d| (d, self.block(d + other.shift).mul(&other.block(d))))
            .collect();
        GradedMap::new(
            other.source.clone(),
            self.target.clone(),
            self.shift + other.shift,
            blocks,
        )
        .expect("composable maps")
    }

    pub fn add(&self, other: &GradedMap) -> GradedMap {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &GradedMap) -> GradedMap {
        self.combine(other, |a, b| a.sub(b))
    }

    fn combine(&self, other: &GradedMap, op: impl Fn(&Matrix, &Matrix) -> Matrix) -> GradedMap {
        assert_eq!(self.shift, other.shift);
        let blocks = self
            .source
            .window
            .degrees()
            .map(|d| (d, op(&self.block(d), &other.block(d))))
            .collect();
        GradedMap::new(self.source.clone(), self.target.clone(), self.shift, blocks)
            .expect("same shape")
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        let blocks = self.blocks.iter().map(|(&d, b)| (d, b.scale(c))).collect();
        GradedMap::new(self.source.clone(), self.target.clone(), self.shift, blocks)
            .expect("same shape")
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// Same matrices, reinterpreted between spaces of identical dimensions.
    pub fn with_spaces(&self, source: GradedSpace, target: GradedSpace) -> Result<GradedMap> {
        GradedMap::new(source, target, self.shift, self.blocks.clone())
    }
}

/// Cochain complex with a degree +1 differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    d: GradedMap,
}

impl CochainComplex {
    pub fn new(space: GradedSpace, blocks: BTreeMap<i64, Matrix>) -> Result<CochainComplex> {
        let d = GradedMap::new(space.clone(), space, 1, blocks)?;
        let c = CochainComplex { d };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn zero_differential(space: GradedSpace) -> CochainComplex {
        CochainComplex::new(space, BTreeMap::new()).expect("zero differential")
    }

    fn check_square_zero(&self) -> Result<()> {
        for k in self.space().window.degrees() {
            if !self.diff(k + 1).mul(&self.diff(k)).is_zero() {
                return Err(Error::invalid(format!("d∘d ≠ 0 starting in degree {k}")));
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &GradedSpace {
        self.d.source()
    }

    pub fn field(&self) -> Field {
        self.d.field()
    }

    pub fn window(&self) -> DegreeWindow {
        self.space().window
    }

    pub fn dim(&self, k: i64) -> usize {
        self.space().dim(k)
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }

    /// `d: C^k -> C^{k+1}`.
    pub fn diff(&self, k: i64) -> Matrix {
        self.d.block(k)
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology::compute(self, &BTreeMap::new()).expect("no preferred representatives")
    }

    /// Cohomology whose representatives start with the given cocycles.
    pub fn cohomology_preferring(&self, preferred: &BTreeMap<i64, Vec<Vector>>) -> Result<Cohomology> {
        Cohomology::compute(self, preferred)
    }

    pub fn suspend(&self, k: i64) -> CochainComplex {
        let space = self.space().suspend(k);
        let sign = self.field().sign(k);
        let blocks = self
            .window()
            .degrees()
            .map(|d| (d - k, self.diff(d).scale(&sign)))
            .collect();
        CochainComplex::new(space, blocks).expect("suspension of a complex")
    }

    pub fn dual(&self) -> CochainComplex {
        let space = self.space().dual();
        let f = self.field();
        let blocks = space
            .window
            .degrees()
            .map(|i| (i, self.diff(-i - 1).transpose().scale(&f.sign(i))))
            .collect();
        CochainComplex::new(space, blocks).expect("dual of a complex")
    }

    /// Checks that `f` (shift 0) commutes with the differentials.
    pub fn check_chain_map(source: &CochainComplex, target: &CochainComplex, f: &GradedMap) -> Result<()> {
        if f.shift() != 0 {
            return Err(Error::invalid("chain map must have degree 0"));
        }
        let window = source.window().union(&target.window());
        for k in window.degrees() {
            let lhs = target.diff(k).mul(&f.block(k));
            let rhs = f.block(k + 1).mul(&source.diff(k));
            if lhs != rhs {
                return Err(Error::invalid(format!("not a chain map in degree {k}")));
            }
        }
        Ok(())
    }

    /// Mapping cone `Y ⊕ sX` of a chain map `f: X -> Y`.
    pub fn mapping_cone(source: &CochainComplex, target: &CochainComplex, f: &GradedMap) -> Result<CochainComplex> {
        CochainComplex::check_chain_map(source, target, f)?;
        let sx = source.space().suspend(1);
        let space = target.space().direct_sum(&sx);
        let field = source.field();
        let minus = field.int(-1);
        let mut blocks = BTreeMap::new();
        for j in space.window.degrees() {
            let (y0, x0) = (target.dim(j), source.dim(j + 1));
            let (y1, x1) = (target.dim(j + 1), source.dim(j + 2));
            let mut m = Matrix::zeros(field, y1 + x1, y0 + x0);
            let dy = target.diff(j);
            let fx = f.block(j + 1);
            let dx = source.diff(j + 1).scale(&minus);
            for r in 0..y1 {
                for c in 0..y0 {
                    m[(r, c)] = dy[(r, c)].clone();
                }
                for c in 0..x0 {
                    m[(r, y0 + c)] = fx[(r, c)].clone();
                }
            }
            for r in 0..x1 {
                for c in 0..x0 {
                    m[(y1 + r, y0 + c)] = dx[(r, c)].clone();
                }
            }
            blocks.insert(j, m);
        }
        CochainComplex::new(space, blocks)
    }

    /// Alternating sum of dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        self.space()
            .dims()
            .iter()
            .map(|(&d, &n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Inclusion `Y -> Y ⊕ sX` of the cone.
pub fn cone_inclusion(target: &GradedSpace, cone: &GradedSpace) -> GradedMap {
    let field = target.field();
    let blocks = target
        .window()
        .degrees()
        .map(|d| {
            let mut m = Matrix::zeros(field, cone.dim(d), target.dim(d));
            for i in 0..target.dim(d) {
                m[(i, i)] = field.one();
            }
            (d, m)
        })
        .collect();
    GradedMap::new(target.clone(), cone.clone(), 0, blocks).expect("cone inclusion")
}

/// Projection `Y ⊕ sX -> sX` of the cone.
pub fn cone_projection(target: &GradedSpace, cone: &GradedSpace, sx: &GradedSpace) -> GradedMap {
    let field = target.field();
    let blocks = cone
        .window()
        .degrees()
        .map(|d| {
            let off = target.dim(d);
            let mut m = Matrix::zeros(field, sx.dim(d), cone.dim(d));
            for i in 0..sx.dim(d) {
                m[(i, off + i)] = field.one();
            }
            (d, m)
        })
        .collect();
    GradedMap::new(cone.clone(), sx.clone(), 0, blocks).expect("cone projection")
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDegree {
    pub cocycles: Vec<Vector>,
    pub boundaries: Vec<Vector>,
    pub representatives: Vec<Vector>,
    /// Rows are functionals giving class coordinates; they vanish on
    /// boundaries and on a fixed complement of the cocycles.
    pub projection: Matrix,
}

/// Cohomology of a complex with chosen representative cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    field: Field,
    window: DegreeWindow,
    degrees: BTreeMap<i64, CohomologyDegree>,
}

impl Cohomology {
    fn compute(c: &CochainComplex, preferred: &BTreeMap<i64, Vec<Vector>>) -> Result<Cohomology> {
        let field = c.field();
        let mut degrees = BTreeMap::new();
        for k in c.window().degrees() {
            let n = c.dim(k);
            let dk = c.diff(k);
            let cocycles = dk.kernel_basis();
            let prev = c.diff(k - 1);
            let prev_cols = prev.columns();
            let boundaries: Vec<Vector> = independent_subset(field, n, &prev_cols)
                .into_iter()
                .map(|i| prev_cols[i].clone())
                .collect();
            let pref = preferred.get(&k).cloned().unwrap_or_default();
            for p in &pref {
                if !is_zero_vector(&dk.mul_vec(p)) {
                    return Err(Error::invalid(format!(
                        "preferred representative in degree {k} is not a cocycle"
                    )));
                }
            }
            let mut candidates = boundaries.clone();
            candidates.extend(pref);
            candidates.extend(cocycles.iter().cloned());
            let representatives: Vec<Vector> = independent_subset(field, n, &candidates)
                .into_iter()
                .filter(|&i| i >= boundaries.len())
                .map(|i| candidates[i].clone())
                .collect();
            let mut basis = representatives.clone();
            basis.extend(boundaries.iter().cloned());
            for i in complement_indices(field, n, &cocycles) {
                basis.push(unit_vector(field, n, i));
            }
            let projection = if n == 0 {
                Matrix::zeros(field, 0, 0)
            } else {
                let t = Matrix::from_columns(field, n, &basis);
                let inv = t.inverse().ok_or_else(|| {
                    Error::Internal(format!("cohomology basis in degree {k} is singular"))
                })?;
                let rows = (0..representatives.len()).map(|i| inv.row(i)).collect();
                Matrix::from_rows(field, rows, n)
            };
            degrees.insert(
                k,
                CohomologyDegree {
                    cocycles,
                    boundaries,
                    representatives,
                    projection,
                },
            );
        }
        Ok(Cohomology {
            field,
            window: c.window(),
            degrees,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> DegreeWindow {
        self.window
    }

    pub fn degree(&self, k: i64) -> Option<&CohomologyDegree> {
        self.degrees.get(&k)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |h| h.representatives.len())
    }

    /// Nonzero dimensions only.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees
            .iter()
            .filter(|(_, h)| !h.representatives.is_empty())
            .map(|(&k, h)| (k, h.representatives.len()))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims().is_empty()
    }

    pub fn representatives(&self, k: i64) -> &[Vector] {
        self.degrees.get(&k).map_or(&[], |h| h.representatives.as_slice())
    }

    /// Class coordinates of a cocycle.
    pub fn class_of(&self, k: i64, v: &[Scalar]) -> Vector {
        match self.degrees.get(&k) {
            Some(h) if !h.representatives.is_empty() => h.projection.mul_vec(v),
            _ => Vec::new(),
        }
    }

    /// Class-coordinate functionals as a matrix `dim H^k × dim C^k`.
    pub fn projection(&self, k: i64) -> Matrix {
        match self.degrees.get(&k) {
            Some(h) => h.projection.clone(),
            None => Matrix::zeros(self.field, 0, 0),
        }
    }

    /// Matrix `dim C^k × dim H^k` of representative cocycles.
    pub fn representative_matrix(&self, k: i64, dim: usize) -> Matrix {
        Matrix::from_columns(self.field, dim, self.representatives(k))
    }

    pub fn is_coboundary(&self, k: i64, v: &[Scalar]) -> bool {
        let Some(h) = self.degrees.get(&k) else {
            return is_zero_vector(v);
        };
        if is_zero_vector(v) {
            return true;
        }
        if h.boundaries.is_empty() {
            return false;
        }
        Matrix::from_columns(self.field, v.len(), &h.boundaries)
            .solve(v)
            .is_some()
    }
}

/// Matrix of `H^k(f)` for a shift-0 chain map.
pub fn induced_map(
    f: &GradedMap,
    source_dim: usize,
    hs: &Cohomology,
    ht: &Cohomology,
    k: i64,
) -> Matrix {
    let reps = hs.representative_matrix(k, source_dim);
    let proj = ht.projection(k + f.shift());
    let img = f.block(k).mul(&reps);
    if proj.rows() == 0 || img.cols() == 0 {
        return Matrix::zeros(f.field(), proj.rows(), img.cols());
    }
    proj.mul(&img)
}

/// Per-degree subspace of a graded space, each basis kept in reduced row form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    space: GradedSpace,
    bases: BTreeMap<i64, Vec<Vector>>,
}

impl GradedSubspace {
    /// Spans of the given vectors; dependent vectors are discarded.
    pub fn spanned(space: &GradedSpace, vectors: BTreeMap<i64, Vec<Vector>>) -> GradedSubspace {
        let field = space.field();
        let mut bases = BTreeMap::new();
        for (d, vs) in vectors {
            let n = space.dim(d);
            if vs.is_empty() || n == 0 {
                continue;
            }
            let (r, pivots) = Matrix::from_rows(field, vs, n).rref();
            let rows: Vec<Vector> = (0..pivots.len()).map(|i| r.row(i)).collect();
            if !rows.is_empty() {
                bases.insert(d, rows);
            }
        }
        GradedSubspace {
            space: space.clone(),
            bases,
        }
    }

    pub fn zero(space: &GradedSpace) -> GradedSubspace {
        GradedSubspace::spanned(space, BTreeMap::new())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn basis(&self, d: i64) -> &[Vector] {
        self.bases.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis(d).len()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases.iter().map(|(&d, b)| (d, b.len())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, d: i64, v: &[Scalar]) -> bool {
        if is_zero_vector(v) {
            return true;
        }
        let b = self.basis(d);
        if b.is_empty() {
            return false;
        }
        Matrix::from_columns(self.space.field(), v.len(), b)
            .solve(v)
            .is_some()
    }

    /// Standard basis indices spanning a complement, by the pivot rule.
    pub fn complement(&self, d: i64) -> Vec<usize> {
        complement_indices(self.space.field(), self.space.dim(d), self.basis(d))
    }

    /// Coordinates of the image in the quotient, one row per complement index.
    pub fn quotient_projection(&self, d: i64) -> Matrix {
        let field = self.space.field();
        let n = self.space.dim(d);
        let comp = self.complement(d);
        if n == 0 {
            return Matrix::zeros(field, 0, 0);
        }
        let mut cols: Vec<Vector> = comp.iter().map(|&i| unit_vector(field, n, i)).collect();
        cols.extend(self.basis(d).iter().cloned());
        let inv = Matrix::from_columns(field, n, &cols)
            .inverse()
            .expect("complement completes the subspace");
        Matrix::from_rows(field, (0..comp.len()).map(|i| inv.row(i)).collect(), n)
    }

    /// Coordinates of a vector of the subspace in its basis.
    pub fn coordinates(&self, d: i64, v: &[Scalar]) -> Option<Vector> {
        let b = self.basis(d);
        if b.is_empty() {
            return is_zero_vector(v).then(Vec::new);
        }
        Matrix::from_columns(self.space.field(), v.len(), b).solve(v)
    }
}

/// Subcomplex on a `d`-stable subspace.
pub fn subcomplex(c: &CochainComplex, sub: &GradedSubspace) -> Result<CochainComplex> {
    let field = c.field();
    let mut labels = BTreeMap::new();
    for d in c.window().degrees() {
        labels.insert(d, (0..sub.dim(d)).map(|i| format!("l{d}_{i}")).collect());
    }
    let space = GradedSpace::new(field, c.window(), labels)?;
    let mut blocks = BTreeMap::new();
    for d in c.window().degrees() {
        let mut m = Matrix::zeros(field, sub.dim(d + 1), sub.dim(d));
        for (j, v) in sub.basis(d).iter().enumerate() {
            let img = c.diff(d).mul_vec(v);
            let coords = sub
                .coordinates(d + 1, &img)
                .ok_or_else(|| Error::invalid(format!("subspace not closed under d in degree {d}")))?;
            m.set_column(j, &coords);
        }
        blocks.insert(d, m);
    }
    CochainComplex::new(space, blocks)
}

/// Quotient complex by a `d`-stable subspace, with basis the complement
/// standard vectors, and the projection map.
pub fn quotient_complex(c: &CochainComplex, sub: &GradedSubspace) -> Result<(CochainComplex, GradedMap)> {
    let field = c.field();
    let mut labels = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for d in c.window().degrees() {
        let comp = sub.complement(d);
        labels.insert(
            d,
            comp.iter().map(|&i| c.space().labels(d)[i].clone()).collect::<Vec<_>>(),
        );
        proj.insert(d, sub.quotient_projection(d));
    }
    let space = GradedSpace::new(field, c.window(), labels)?;
    let mut blocks = BTreeMap::new();
    for d in c.window().degrees() {
        let comp = sub.complement(d);
        let p1 = sub.quotient_projection(d + 1);
        let dd = c.diff(d);
        let mut m = Matrix::zeros(field, space.dim(d + 1), comp.len());
        for (j, &i) in comp.iter().enumerate() {
            let img = dd.mul_vec(&unit_vector(field, c.dim(d), i));
            if p1.rows() > 0 {
                m.set_column(j, &p1.mul_vec(&img));
            }
        }
        for v in sub.basis(d) {
            let img = dd.mul_vec(v);
            if !sub.contains(d + 1, &img) {
                return Err(Error::invalid(format!("subspace not closed under d in degree {d}")));
            }
        }
        blocks.insert(d, m);
    }
    let q = CochainComplex::new(space.clone(), blocks)?;
    let p = GradedMap::new(c.space().clone(), space, 0, proj)?;
    Ok((q, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn space(dims: &[(i64, usize)], lo: i64, hi: i64) -> GradedSpace {
        GradedSpace::from_dims(
            q(),
            DegreeWindow::new(lo, hi).unwrap(),
            &dims.iter().cloned().collect(),
            "x",
        )
        .unwrap()
    }

    fn complex(dims: &[(i64, usize)], lo: i64, hi: i64, d: &[(i64, &[&[i64]])]) -> CochainComplex {
        let sp = space(dims, lo, hi);
        let blocks = d.iter().map(|(k, m)| (*k, Matrix::from_ints(q(), m))).collect();
        CochainComplex::new(sp, blocks).unwrap()
    }

    fn dims(pairs: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn cohomology_examples() {
        let c = CochainComplex::zero_differential(space(&[(0, 1), (3, 1)], 0, 3));
        assert_eq!(c.cohomology().dims(), dims(&[(0, 1), (3, 1)]));
        let c = complex(&[(0, 1), (1, 1)], 0, 1, &[(0, &[&[1]])]);
        assert!(c.cohomology().is_acyclic());
        let c = complex(&[(4, 1), (5, 1), (6, 1)], 4, 6, &[(5, &[&[1]])]);
        assert_eq!(c.cohomology().dims(), dims(&[(4, 1)]));
    }

    #[test]
    fn rejects_nonzero_square() {
        let sp = space(&[(0, 1), (1, 1), (2, 1)], 0, 2);
        let blocks = [(0, Matrix::from_ints(q(), &[&[1]])), (1, Matrix::from_ints(q(), &[&[1]]))]
            .into_iter()
            .collect();
        assert!(CochainComplex::new(sp, blocks).is_err());
    }

    #[test]
    fn suspension_signs_and_inverse() {
        let c = complex(&[(0, 1), (1, 1)], 0, 1, &[(0, &[&[1]])]);
        assert_eq!(c.suspend(0), c);
        let s = c.suspend(1);
        assert_eq!(s.diff(-1), Matrix::from_ints(q(), &[&[-1]]));
        assert_eq!(s.space().labels(-1), &["s·x0_0".to_string()]);
        assert_eq!(s.suspend(-1), c);
        assert_eq!(c.suspend(3).suspend(-3), c);
        assert_eq!(c.suspend(-6).suspend(4).suspend(2), c);
    }

    #[test]
    fn dual_sign_rule() {
        let c = complex(&[(2, 1), (3, 1)], 0, 3, &[(2, &[&[1]])]);
        let dc = c.dual();
        assert_eq!(dc.window(), DegreeWindow { lo: -3, hi: 0 });
        assert_eq!(dc.diff(-3), Matrix::from_ints(q(), &[&[-1]]));
        let ddc = dc.dual();
        assert_eq!(ddc.space().dims(), c.space().dims());
        for k in c.window().degrees() {
            assert_eq!(ddc.diff(k), c.diff(k).scale(&q().int(-1)));
        }
    }

    #[test]
    fn dual_pairing_pointwise() {
        let c = complex(
            &[(0, 1), (1, 2), (2, 1)],
            0,
            2,
            &[(0, &[&[1], &[-1]]), (1, &[&[1, 1]])],
        );
        let dc = c.dual();
        for x_deg in c.window().degrees() {
            for xi in 0..c.dim(x_deg) {
                let x = c.space().basis_vector(x_deg, xi);
                let dx = c.diff(x_deg).mul_vec(&x);
                // f lives in (#C)^{-(x_deg+1)} and δf in (#C)^{-x_deg}
                let fdeg = -(x_deg + 1);
                for fi in 0..dc.dim(fdeg) {
                    let f = dc.space().basis_vector(fdeg, fi);
                    let df = dc.diff(fdeg).mul_vec(&f);
                    let lhs: Scalar = dx.iter().zip(&f).fold(q().zero(), |a, (u, v)| a + u * v);
                    let rhs: Scalar = x.iter().zip(&df).fold(q().zero(), |a, (u, v)| a + u * v);
                    assert_eq!(lhs, -(q().sign(x_deg) * rhs));
                }
            }
        }
    }

    #[test]
    fn cone_examples() {
        let c = complex(&[(0, 1), (1, 1)], 0, 1, &[(0, &[&[1]])]);
        let id = GradedMap::identity(c.space());
        let cone = CochainComplex::mapping_cone(&c, &c, &id).unwrap();
        assert!(cone.cohomology().is_acyclic());
        let zero = GradedMap::zero(c.space(), c.space(), 0);
        let cone0 = CochainComplex::mapping_cone(&c, &c, &zero).unwrap();
        assert_eq!(cone0.euler_characteristic(), 0);

        let x = CochainComplex::zero_differential(space(&[(4, 1), (6, 1)], 0, 6));
        let y = CochainComplex::zero_differential(space(&[(0, 1), (6, 1)], 0, 6));
        let mut blocks = BTreeMap::new();
        blocks.insert(6, Matrix::from_ints(q(), &[&[1]]));
        blocks.insert(4, Matrix::zeros(q(), 0, 1));
        let f = GradedMap::new(x.space().clone(), y.space().clone(), 0, blocks).unwrap();
        let cone = CochainComplex::mapping_cone(&x, &y, &f).unwrap();
        assert_eq!(cone.cohomology().dims(), dims(&[(0, 1), (3, 1)]));
    }

    #[test]
    fn rejects_non_chain_map() {
        let c = complex(&[(0, 1), (1, 1)], 0, 1, &[(0, &[&[1]])]);
        let mut blocks = BTreeMap::new();
        blocks.insert(0, Matrix::from_ints(q(), &[&[1]]));
        let f = GradedMap::new(c.space().clone(), c.space().clone(), 0, blocks).unwrap();
        assert!(CochainComplex::mapping_cone(&c, &c, &f).is_err());
    }

    #[test]
    fn labels_compose() {
        assert_eq!(suspend_label("x", 1), "s·x");
        assert_eq!(suspend_label("s·x", 1), "s^2·x");
        assert_eq!(suspend_label("s^2·x", -2), "x");
        assert_eq!(suspend_label("s^-6·#e", 6), "#e");
        assert_eq!(suspend_label("sx", 1), "s·sx");
    }

    #[test]
    fn quotient_and_subcomplex() {
        let c = complex(&[(0, 1), (1, 1), (2, 1)], 0, 2, &[(1, &[&[1]])]);
        let sub = GradedSubspace::spanned(
            c.space(),
            [(1, vec![vec![q().one()]]), (2, vec![vec![q().one()]])].into_iter().collect(),
        );
        assert!(subcomplex(&c, &sub).unwrap().cohomology().is_acyclic());
        let (qc, p) = quotient_complex(&c, &sub).unwrap();
        assert_eq!(qc.space().dims(), dims(&[(0, 1)]));
        assert_eq!(p.block(0), Matrix::identity(q(), 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        // d_k is random, then multiplied by a projection killing im d_{k-1}
        fn random_complex() -> impl Strategy<Value = CochainComplex> {
            (proptest::collection::vec(0usize..3, 4), proptest::collection::vec(-2i64..3, 64))
                .prop_map(|(dims, coeffs)| {
                    let f = Field::Rational;
                    let sp = GradedSpace::from_dims(
                        f,
                        DegreeWindow::new(0, 3).unwrap(),
                        &dims.iter().enumerate().map(|(i, &n)| (i as i64, n)).collect(),
                        "x",
                    )
                    .unwrap();
                    let mut it = coeffs.into_iter().cycle();
                    let mut blocks = BTreeMap::new();
                    let mut prev: Option<Matrix> = None;
                    for k in 0..3i64 {
                        let (r, c) = (dims[k as usize + 1], dims[k as usize]);
                        let mut m = Matrix::zeros(f, r, c);
                        for i in 0..r {
                            for j in 0..c {
                                m[(i, j)] = f.int(it.next().unwrap());
                            }
                        }
                        if let Some(p) = &prev {
                            let img = p.columns();
                            let ann = Matrix::from_rows(f, img, c).kernel_basis();
                            let proj = if ann.is_empty() {
                                Matrix::zeros(f, c, c)
                            } else {
                                let a = Matrix::from_columns(f, c, &ann);
                                a.mul(&a.transpose())
                            };
                            m = m.mul(&proj);
                        }
                        blocks.insert(k, m.clone());
                        prev = Some(m);
                    }
                    CochainComplex::new(sp, blocks).unwrap()
                })
        }

        proptest! {
            #[test]
            fn euler_characteristic_matches_cohomology(c in random_complex()) {
                let h = c.cohomology();
                let chi: i64 = h.dims().iter().map(|(&d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
                prop_assert_eq!(chi, c.euler_characteristic());
            }

            #[test]
            fn suspension_roundtrip(c in random_complex(), k in -4i64..5) {
                prop_assert_eq!(c.suspend(k).suspend(-k), c);
            }

            #[test]
            fn identity_cone_is_acyclic(c in random_complex()) {
                let id = GradedMap::identity(c.space());
                let cone = CochainComplex::mapping_cone(&c, &c, &id).unwrap();
                prop_assert!(cone.cohomology().is_acyclic());
            }

            #[test]
            fn class_of_representatives_is_identity(c in random_complex()) {
                let h = c.cohomology();
                for k in c.window().degrees() {
                    for (i, r) in h.representatives(k).iter().enumerate() {
                        let v = h.class_of(k, r);
                        prop_assert_eq!(v, unit_vector(Field::Rational, h.dim(k), i));
                    }
                }
            }
        }
    }
}
