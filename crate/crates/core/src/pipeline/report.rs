use std::fmt::Write as _;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::{PrimeField, Rational, Rationals, UniPoly};
use crate::hilbert::{HilbertData, MonomialIdeal};
use crate::mpoly::{CoordChange, Monomial, MultiPoly};

/// Intermediate ideals of a colon-cleaned component, kept for checks.
#[derive(Debug, Clone)]
pub struct ComponentAudit {
    /// Generators of the matched ideal before the colon.
    pub matched: Vec<MultiPoly<PrimeField>>,
    pub minor: MultiPoly<PrimeField>,
    /// Reduced basis of the colon ideal in the report's term order.
    pub colon_basis: Vec<MultiPoly<PrimeField>>,
}

/// One rational component (a conjugacy class of absolute components).
#[derive(Debug, Clone)]
pub struct ComponentRecord {
    pub rational_degree: usize,
    pub multiplicity: usize,
    pub absolute_count: usize,
    pub absolute_degree: usize,
    pub prime: u64,
    /// The rational factor of the projection, primitive over `Z`.
    pub rational_factor: UniPoly<Rationals>,
    pub initial_ideal: Option<MonomialIdeal>,
    pub hilbert: Option<HilbertData>,
    pub isolating_polys_mod_p: Vec<MultiPoly<PrimeField>>,
    pub audit: Option<ComponentAudit>,
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub s: usize,
    pub components: Vec<ComponentRecord>,
    pub coord_change: CoordChange,
    pub seed: u64,
    /// Degree of the projection polynomial `D_1(0, X_2)`.
    pub total_degree: usize,
    pub projection: UniPoly<Rationals>,
    /// Coordinate changes tried, including the successful one.
    pub attempts: usize,
    pub trace: Vec<String>,
}

fn monomial_json(m: &Monomial, names: &[String]) -> Value {
    json!({ "exponents": m.exps(), "display": m.fmt_with(names) })
}

fn poly_json(f: &MultiPoly<PrimeField>, names: &[String]) -> Value {
    let terms: Vec<Value> = f
        .sorted_terms(&crate::mpoly::TermOrder::DegLex)
        .into_iter()
        .map(|(m, c)| json!({ "exponents": m.exps(), "coefficient": c }))
        .collect();
    json!({ "display": f.fmt_with(names), "terms": terms })
}

impl ComponentRecord {
    fn to_json(&self, names: &[String]) -> Value {
        let initial: Vec<Value> = self
            .initial_ideal
            .iter()
            .flat_map(|m| m.generators().iter())
            .map(|g| monomial_json(g, names))
            .collect();
        let (values, poly) = match &self.hilbert {
            Some(h) => (h.values.clone(), h.polynomial_strings()),
            None => (Vec::new(), Vec::new()),
        };
        let iso: Vec<Value> = self.isolating_polys_mod_p.iter().map(|f| poly_json(f, names)).collect();
        json!({
            "rational_degree": self.rational_degree,
            "multiplicity": self.multiplicity,
            "absolute_count": self.absolute_count,
            "absolute_degree": self.absolute_degree,
            "prime": self.prime,
            "initial_ideal": initial,
            "hilbert_values": values,
            "hilbert_polynomial": poly,
            "isolating_polys_mod_p": iso,
        })
    }
}

impl DecompositionReport {
    /// Machine-readable view with a fixed field set.
    pub fn to_json(&self, names: &[String]) -> Value {
        let comps: Vec<Value> = self.components.iter().map(|c| c.to_json(names)).collect();
        json!({
            "s": self.s,
            "components": comps,
            "seed": self.seed,
            "coord_change": {
                "matrix": self.coord_change.matrix,
                "translation": self.coord_change.translation,
            },
            "total_degree": self.total_degree,
        })
    }

    /// Human-readable report.
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "s = {} rational components, total projected degree {}", self.s, self.total_degree);
        let _ = writeln!(out, "seed {}, coordinate change {}", self.seed, coord_text(&self.coord_change, names));
        for t in &self.trace {
            let _ = writeln!(out, "retried: {t}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>3} {:>8} {:>6} {:>4} {:>8} {:>10}", "j", "rat_deg", "mult", "r", "abs_deg", "prime");
        for (j, c) in self.components.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>6} {:>4} {:>8} {:>10}",
                j + 1,
                c.rational_degree,
                c.multiplicity,
                c.absolute_count,
                c.absolute_degree,
                c.prime
            );
        }
        for (j, c) in self.components.iter().enumerate() {
            let _ = writeln!(out);
            let _ = writeln!(out, "component {}: d = {}", j + 1, c.rational_factor.to_string_var(&names[1]));
            if let (Some(m), Some(h)) = (&c.initial_ideal, &c.hilbert) {
                let gens: Vec<String> = m.generators().iter().map(|g| g.fmt_with(names)).collect();
                let _ = writeln!(out, "  initial ideal: ({})", gens.join(", "));
                let vals: Vec<String> = h.values.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "  affine Hilbert function: {}", vals.join(" "));
                let _ = writeln!(out, "  Hilbert polynomial: {}", hilbert_poly_text(&h.polynomial));
            }
            for f in &c.isolating_polys_mod_p {
                let _ = writeln!(out, "  isolating mod {}: {}", c.prime, f.fmt_with(names));
            }
        }
        out
    }
}

fn coord_text(c: &CoordChange, names: &[String]) -> String {
    let rows: Vec<String> = c
        .matrix
        .iter()
        .zip(&c.translation)
        .zip(names)
        .map(|((row, t), name)| {
            let entries: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            format!("{name} -> [{}] + {t}", entries.join(" "))
        })
        .collect();
    rows.join("; ")
}

fn hilbert_poly_text(coeffs: &[Rational]) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let power = if k == 1 { "t".to_string() } else { format!("t^{k}") };
        let one = Rational::from_integer(1.into());
        let t = if k == 0 {
            c.to_string()
        } else if *c == one {
            power
        } else if *c == -one {
            format!("-{power}")
        } else {
            format!("{c}*{power}")
        };
        terms.push(t);
    }
    terms.join(" + ").replace("+ -", "- ")
}
