//! Text reports and the machine (explicit presentation) format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::algebra::{Algebra, Cdga, CdgaMorphism};
use crate::duality::{TopDegreeMap, TopDegreeRoute};
use crate::graded::{format_combination, GradedMap};
use crate::linalg::Field;
use crate::pipeline::{
    cohomology_table, format_dims, Analysis, ComplementResult, LefschetzResult, PuncturedResult, SquareKind,
    SquareResult,
};

use super::parse::ProblemFile;

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || "_'.".contains(c))
}

/// Basis names usable in the input grammar: labels that already are
/// identifiers are kept, the rest become `b<deg>_<i>`.
pub fn machine_labels(a: &Algebra) -> BTreeMap<i64, Vec<String>> {
    let mut seen = BTreeSet::new();
    let mut out = BTreeMap::new();
    for d in a.window().degrees() {
        let mut row = Vec::new();
        for (i, l) in a.space().labels(d).iter().enumerate() {
            let name = if is_identifier(l) && !l.starts_with('b') && seen.insert(l.clone()) {
                l.clone()
            } else {
                format!("b{d}_{i}")
            };
            seen.insert(name.clone());
            row.push(name);
        }
        out.insert(d, row);
    }
    out
}

/// Machine-format writer; algebras are always emitted explicitly.
pub struct MachineWriter {
    field: Field,
    window: i64,
    body: String,
    labels: BTreeMap<String, BTreeMap<i64, Vec<String>>>,
}

impl MachineWriter {
    pub fn new(field: Field) -> MachineWriter {
        MachineWriter {
            field,
            window: 0,
            body: String::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn comment(&mut self, text: &str) {
        for line in text.lines() {
            let _ = writeln!(self.body, "# {line}");
        }
    }

    pub fn algebra(&mut self, name: &str, a: &Algebra) {
        let labels = machine_labels(a);
        self.window = self.window.max(a.window().hi);
        let _ = writeln!(self.body, "cdga {name} explicit {{");
        for d in a.window().degrees() {
            for (i, l) in labels[&d].iter().enumerate() {
                let orig = a.label(d, i);
                if orig != l {
                    let _ = writeln!(self.body, "  basis {l} deg {d}  # {orig}");
                } else {
                    let _ = writeln!(self.body, "  basis {l} deg {d}");
                }
            }
        }
        if a.dim(0) > a.unit {
            let _ = writeln!(self.body, "  unit {}", labels[&0][a.unit]);
        }
        for p in a.window().degrees() {
            for q in a.window().degrees() {
                if p + q > a.window().hi {
                    continue;
                }
                for i in 0..a.dim(p) {
                    if p == 0 && i == a.unit {
                        continue;
                    }
                    for j in 0..a.dim(q) {
                        if q == 0 && j == a.unit {
                            continue;
                        }
                        let v = a.product.basis(p, i, q, j);
                        if v.iter().any(|c| !c.is_zero()) {
                            let _ = writeln!(
                                self.body,
                                "  product {} {} = {}",
                                labels[&p][i],
                                labels[&q][j],
                                format_combination(&labels[&(p + q)], &v)
                            );
                        }
                    }
                }
            }
        }
        for d in a.window().degrees() {
            for i in 0..a.dim(d) {
                let v = a.d(d, &a.space().basis_vector(d, i));
                if v.iter().any(|c| !c.is_zero()) {
                    let _ = writeln!(
                        self.body,
                        "  d {} = {}",
                        labels[&d][i],
                        format_combination(&labels[&(d + 1)], &v)
                    );
                }
            }
        }
        let _ = writeln!(self.body, "}}");
        self.labels.insert(name.to_string(), labels);
    }

    /// A degree-0 map between two algebras already written.
    pub fn morphism(&mut self, name: &str, source: &str, target: &str, unit: usize, map: &GradedMap) {
        let (sl, tl) = (&self.labels[source], &self.labels[target]);
        let mut lines = Vec::new();
        for (d, row) in sl {
            for (i, l) in row.iter().enumerate() {
                if *d == 0 && i == unit {
                    continue;
                }
                let v = map.apply(*d, &map.source().basis_vector(*d, i));
                if v.iter().any(|c| !c.is_zero()) {
                    lines.push(format!("  {l} -> {}", format_combination(&tl[d], &v)));
                }
            }
        }
        let _ = writeln!(self.body, "morphism {name} : {source} -> {target} {{");
        for l in lines {
            let _ = writeln!(self.body, "{l}");
        }
        let _ = writeln!(self.body, "}}");
    }

    pub fn problem(&mut self, ambient: &str, n: i64, embedded: &[(String, String)]) {
        let _ = writeln!(self.body, "problem {{\n  ambient {ambient} dim {n}");
        for (a, f) in embedded {
            let _ = writeln!(self.body, "  embedded {a} via {f}");
        }
        let _ = writeln!(self.body, "}}");
    }

    pub fn finish(self) -> String {
        let field = match self.field {
            Field::Rational => "field rational".to_string(),
            Field::Prime(p) => format!("field prime {p}"),
        };
        format!("{field}\nwindow 0 {}\n{}", self.window, self.body)
    }
}

/// Name used in machine output: identifiers pass through.
fn ident_for(name: &str, fallback: &str) -> String {
    if is_identifier(name) {
        name.to_string()
    } else {
        fallback.to_string()
    }
}

/// The whole problem file with every algebra written explicitly.
pub fn machine_problem(pf: &ProblemFile) -> String {
    let mut w = MachineWriter::new(pf.field);
    w.window = pf.window.hi;
    for a in &pf.algebras {
        w.algebra(&a.name, a);
    }
    for (name, f) in &pf.morphisms {
        w.morphism(name, &f.source.name, &f.target.name, f.source.unit, &f.map);
    }
    if let Some(p) = &pf.problem {
        let embedded: Vec<(String, String)> = p
            .branches
            .iter()
            .map(|b| {
                let f = pf
                    .morphisms
                    .iter()
                    .find(|(_, m)| *m == b.phi)
                    .map(|(n, _)| n.clone())
                    .unwrap_or_default();
                (b.algebra.name.clone(), f)
            })
            .collect();
        w.problem(&p.ambient.name, p.n, &embedded);
    }
    w.finish()
}

/// Do two algebras agree up to relabelling of their bases?
pub fn same_structure(a: &Algebra, b: &Algebra) -> bool {
    let w = a.window().union(&b.window());
    w.degrees().all(|d| a.dim(d) == b.dim(d))
        && a.unit == b.unit
        && w.degrees().all(|d| a.complex.diff(d) == b.complex.diff(d))
        && w.degrees().all(|p| {
            w.degrees().all(|q| {
                (0..a.dim(p)).all(|i| (0..a.dim(q)).all(|j| a.product.basis(p, i, q, j) == b.product.basis(p, i, q, j)))
            })
        })
}

pub fn validate(pf: &ProblemFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}; window {}", pf.field, pf.window);
    for a in &pf.algebras {
        let _ = writeln!(
            out,
            "cdga {}: dims {} : valid (unit, graded commutativity, associativity, Leibniz)",
            a.name,
            format_dims(&a.space().dims())
        );
    }
    for (name, f) in &pf.morphisms {
        let _ = writeln!(
            out,
            "morphism {name}: {} -> {} : valid (unital, multiplicative, chain map)",
            f.source.name, f.target.name
        );
    }
    if let Some(p) = &pf.problem {
        let names: Vec<&str> = p.branches.iter().map(|b| b.name.as_str()).collect();
        let _ = writeln!(
            out,
            "problem: ambient {} dim {}, embedded {}",
            p.ambient.name,
            p.n,
            names.join(", ")
        );
    }
    out
}

pub fn cohomology(a: &Cdga) -> String {
    let mut out = String::new();
    let table = cohomology_table(a);
    let _ = writeln!(out, "{}", table.summary(&a.name));
    let (h, _) = a.cohomology_algebra();
    for d in h.window().degrees() {
        if h.dim(d) > 0 {
            let _ = writeln!(out, "H^{d}: {}", h.space().labels(d).join(", "));
        }
    }
    for (x, y, z) in h.positive_products() {
        let _ = writeln!(out, "{x} · {y} = {z}");
    }
    if let Some(top) = table.dims.keys().copied().max() {
        match a.check_poincare_duality(top) {
            Ok(c) => {
                let _ = writeln!(out, "{} : PASS", c.summary());
            }
            Err(f) => {
                let _ = writeln!(out, "Poincaré duality in dimension {top}: {f}");
            }
        }
    }
    out
}

pub fn cohomology_machine(a: &Cdga) -> String {
    let (h, _) = a.cohomology_algebra();
    let mut w = MachineWriter::new(a.field());
    w.comment(&format!("cohomology algebra of {}", a.name));
    w.algebra(&ident_for(&h.name, "H"), &h);
    w.finish()
}

pub fn analysis(a: &Analysis) -> String {
    a.lines().join("\n") + "\n"
}

fn top_degree_line(t: &TopDegreeMap) -> String {
    let route = match t.route {
        TopDegreeRoute::Direct => "direct solve",
        TopDegreeRoute::Resolved => "through a semifree replacement",
    };
    format!(
        "top-degree map: H^{} iso with scalar {} ({route})",
        t.n,
        t.scalar()
    )
}

pub fn complement(res: &ComplementResult) -> String {
    let mut out = analysis(&res.analysis);
    let gens: Vec<String> = res
        .resolved
        .generators
        .iter()
        .map(|(l, d)| format!("{l} (deg {d})"))
        .collect();
    let _ = writeln!(out, "semifree D generators: {}", gens.join(", "));
    for t in &res.resolved.branch_maps {
        let _ = writeln!(out, "{}", top_degree_line(t));
    }
    let _ = writeln!(out, "cone {}: {}", res.cone.name(), res.cone.leibniz.summary());
    let _ = writeln!(
        out,
        "truncation L: dims {}; submodule: PASS; acyclic: {}",
        format_dims(&res.truncation.sub.dims()),
        pass(res.truncation.acyclic)
    );
    let (n, m, r) = (res.analysis.n, res.analysis.m, res.analysis.r);
    let _ = writeln!(
        out,
        "degree bounds: k=n−m−1={}, l=n−2m+r−1={}",
        n - m - 1,
        n - 2 * m + r - 1
    );
    let _ = writeln!(
        out,
        "model C: chain dims {}; {}",
        format_dims(&res.model.space().dims()),
        res.quotient.leibniz.summary()
    );
    let _ = writeln!(out, "λ: {} -> C : CDGA morphism PASS", res.lambda.source.name);
    let _ = writeln!(out, "{}", res.table.summary("C"));
    let _ = writeln!(out, "{}", res.table.action_text());
    let (h, _) = res.model.cohomology_algebra();
    for (x, y, z) in h.positive_products() {
        let _ = writeln!(out, "  {x} · {y} = {z}");
    }
    if let Some(o) = &res.oracle {
        let _ = writeln!(
            out,
            "Alexander duality oracle: {} : {}",
            format_dims(o),
            if *o == res.table.dims { "MATCH" } else { "MISMATCH" }
        );
    }
    out
}

pub fn complement_machine(res: &ComplementResult) -> String {
    let mut w = MachineWriter::new(res.model.field());
    w.comment(&format!("complement model: {}", res.table.summary("C")));
    let r = &res.lambda.source;
    let rn = ident_for(&r.name, "R");
    w.algebra(&rn, r);
    w.algebra("C", &res.model);
    w.morphism("lambda", &rn, "C", r.unit, &res.lambda.map);
    w.finish()
}

fn kind_name(k: SquareKind) -> &'static str {
    match k {
        SquareKind::DgModule => "DG-module square",
        SquareKind::StableCdga => "CDGA square (stable range)",
        SquareKind::Punctured => "punctured CDGA square",
    }
}

pub fn square(sq: &SquareResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", kind_name(sq.kind));
    for (pos, c) in ["top-left", "top-right", "bottom-left", "bottom-right"].iter().zip(sq.corners()) {
        let mut line = format!("{pos} {}: H^* {}", c.label, format_dims(&c.dims()));
        if let Some(a) = &c.algebra {
            let t = cohomology_table(a);
            let products = t.products.unwrap_or_default();
            if products.values().all(|&r| r == 0) {
                line.push_str("; all positive products zero");
            } else {
                let parts: Vec<String> = products
                    .iter()
                    .filter(|(_, &r)| r > 0)
                    .map(|((p, q), r)| format!("H^{p}·H^{q} rank {r}"))
                    .collect();
                let _ = write!(line, "; products {}", parts.join(", "));
            }
        }
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "commutes : {}", pass(sq.commutes));
    let _ = writeln!(out, "Euler characteristics balance : {}", pass(sq.euler_consistent));
    for (name, l) in &sq.leibniz {
        let _ = writeln!(out, "cone {name}: {}", l.summary());
    }
    if let Some(ok) = sq.oracle_match {
        let _ = writeln!(out, "bottom-left vs Alexander duality oracle : {}", if ok { "MATCH" } else { "MISMATCH" });
    }
    for n in &sq.notes {
        let _ = writeln!(out, "{n}");
    }
    out
}

/// Algebra corners and the four maps; module corners are summarized as comments.
pub fn square_machine(sq: &SquareResult, field: Field) -> String {
    let mut w = MachineWriter::new(field);
    w.comment(kind_name(sq.kind));
    let names = ["TL", "TR", "BL", "BR"];
    let mut all = true;
    for (n, c) in names.iter().zip(sq.corners()) {
        match &c.algebra {
            Some(a) => {
                w.comment(&format!("{n} = {}", c.label));
                w.algebra(n, a);
            }
            None => {
                all = false;
                w.comment(&format!("{n} = {} (DG module): H^* {}", c.label, format_dims(&c.dims())));
            }
        }
    }
    if all {
        let unit = |c: &crate::pipeline::Corner| c.algebra.as_ref().map_or(0, |a| a.unit);
        let [tl, tr, bl, _] = sq.corners();
        w.morphism("top", "TL", "TR", unit(tl), &sq.top);
        w.morphism("left", "TL", "BL", unit(tl), &sq.left);
        w.morphism("right", "TR", "BR", unit(tr), &sq.right);
        w.morphism("bottom", "BL", "BR", unit(bl), &sq.bottom);
    }
    w.finish()
}

pub fn punctured(res: &PuncturedResult) -> String {
    let mut out = square(&res.square);
    let _ = writeln!(
        out,
        "Q-side projection onto in cohomology : {}",
        pass(res.embedded_side_onto)
    );
    out
}

pub fn lefschetz(res: &LefschetzResult) -> String {
    let mut out = analysis(&res.analysis);
    let _ = writeln!(out, "cone of s^-n #φ: chain dims {}", format_dims(&res.module.space().dims()));
    if res.top_degree_certified {
        let _ = writeln!(out, "s^-n #φ top-degree : PASS");
    }
    let _ = writeln!(out, "{}", res.table.summary("C"));
    let _ = writeln!(out, "{}", res.table.action_text());
    if let Some(a) = &res.algebra {
        for (x, y, z) in a.positive_products() {
            let _ = writeln!(out, "  {x} · {y} = {z}");
        }
    }
    out
}

pub fn lefschetz_machine(res: &LefschetzResult) -> String {
    let mut w = MachineWriter::new(res.module.field());
    match &res.algebra {
        Some(a) => {
            w.comment("cohomology algebra of the complement");
            w.algebra("HC", a);
        }
        None => {
            w.comment(&res.table.summary("C"));
            w.window = res.table.dims.keys().copied().max().unwrap_or(0);
        }
    }
    w.finish()
}

pub fn gysin(t: &TopDegreeMap, w_name: &str, v_name: &str, k: i64, hw: &Cdga, hv: &Cdga) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Gysin map f^!: s^-{k} H^*({v_name}) -> H^*({w_name})");
    for vd in hv.window().degrees() {
        for c in 0..hv.dim(vd) {
            let j = vd + k;
            let img = t.map.map.apply(j, &t.map.source.space().basis_vector(j, c));
            let text = if hw.window().contains(j) {
                hw.format(j, &img)
            } else {
                "0".into()
            };
            let _ = writeln!(out, "  f^!(s^-{k}·{}) = {text}", hv.label(vd, c));
        }
    }
    let _ = writeln!(out, "H^*({w_name})-linear chain map : PASS");
    let _ = writeln!(out, "{}", top_degree_line(t));
    out
}

pub fn gysin_machine(hw: &Cdga, hv: &Cdga, f: &CdgaMorphism, report: &str) -> String {
    let mut w = MachineWriter::new(hw.field());
    w.comment(report.trim_end());
    w.algebra("HW", hw);
    w.algebra("HV", hv);
    w.morphism("restriction", "HW", "HV", hw.unit, &f.map);
    w.finish()
}
