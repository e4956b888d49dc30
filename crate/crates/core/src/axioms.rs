//! Finite-window verification of the fusion algebra axioms.
//!
//! Every check quantifies over labels, pairs or triples drawn from the
//! window; products are evaluated lazily and may leave the window.

use std::collections::BTreeMap;
use std::fmt;

use crate::dim::Dim;
use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::ring::FusionRing;

const DIM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    UnitLaw,
    Involution,
    AntiMultiplicative,
    Integrality,
    DimensionFunction,
    FrobeniusReciprocity,
    DimensionMultiplicativity,
    Associativity,
    /// `N_{ξ,η}^α > 0 ⟹ d(α)d(η) ≥ d(ξ)`.
    DimensionBound,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::UnitLaw,
        Axiom::Involution,
        Axiom::AntiMultiplicative,
        Axiom::Integrality,
        Axiom::DimensionFunction,
        Axiom::FrobeniusReciprocity,
        Axiom::DimensionMultiplicativity,
        Axiom::Associativity,
        Axiom::DimensionBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::UnitLaw => "unit law",
            Axiom::Involution => "involution",
            Axiom::AntiMultiplicative => "anti-multiplicativity",
            Axiom::Integrality => "nonnegative integral coefficients",
            Axiom::DimensionFunction => "dimension function",
            Axiom::FrobeniusReciprocity => "Frobenius reciprocity",
            Axiom::DimensionMultiplicativity => "dimension multiplicativity",
            Axiom::Associativity => "associativity",
            Axiom::DimensionBound => "dimension bound d(α)d(η) ≥ d(ξ)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub probes: usize,
    /// First counterexample found, rendered for humans.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub window: Vec<Label>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "window: {} labels", self.window.len())?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status}  {} ({} probes)", c.axiom.name(), c.probes)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Tally {
    axiom: Axiom,
    probes: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(axiom: Axiom) -> Tally {
        Tally {
            axiom,
            probes: 0,
            witness: None,
        }
    }

    fn probe(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.probes += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom,
            passed: self.witness.is_none(),
            probes: self.probes,
            witness: self.witness,
        }
    }
}

fn fmt_map(m: &BTreeMap<Label, u64>) -> String {
    let parts: Vec<String> = m.iter().map(|(l, n)| format!("{l}:{n}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Right-multiplies a coefficient map by a basis label.
fn times(ring: &FusionRing, x: &BTreeMap<Label, u64>, z: &Label) -> Result<BTreeMap<Label, u64>> {
    let mut out: BTreeMap<Label, u64> = BTreeMap::new();
    for (a, n) in x {
        for (b, m) in ring.product(a, z)?.iter() {
            let nm = n.checked_mul(*m).ok_or(FusionError::Overflow)?;
            let slot = out.entry(b.clone()).or_insert(0);
            *slot = slot.checked_add(nm).ok_or(FusionError::Overflow)?;
        }
    }
    Ok(out)
}

/// Left-multiplies a coefficient map by a basis label.
fn times_left(ring: &FusionRing, z: &Label, x: &BTreeMap<Label, u64>) -> Result<BTreeMap<Label, u64>> {
    let mut out: BTreeMap<Label, u64> = BTreeMap::new();
    for (a, n) in x {
        for (b, m) in ring.product(z, a)?.iter() {
            let nm = n.checked_mul(*m).ok_or(FusionError::Overflow)?;
            let slot = out.entry(b.clone()).or_insert(0);
            *slot = slot.checked_add(nm).ok_or(FusionError::Overflow)?;
        }
    }
    Ok(out)
}

/// Checks every axiom on all labels, pairs and triples of `window`.
///
/// Returns `Err` only when a probed product is undefined (incomplete tables)
/// or a label is unknown; axiom failures are reported in the result.
pub fn verify_axioms(ring: &FusionRing, window: &[Label]) -> Result<AxiomReport> {
    if window.is_empty() {
        return Err(FusionError::EmptySet);
    }
    let unit = ring.unit();
    if !window.contains(&unit) {
        return Err(FusionError::InvalidParam("window must contain the unit".into()));
    }
    for l in window {
        ring.check(l)?;
    }

    let mut unit_law = Tally::new(Axiom::UnitLaw);
    let mut involution = Tally::new(Axiom::Involution);
    let mut anti = Tally::new(Axiom::AntiMultiplicative);
    let mut integral = Tally::new(Axiom::Integrality);
    let mut dimension = Tally::new(Axiom::DimensionFunction);
    let mut frobenius = Tally::new(Axiom::FrobeniusReciprocity);
    let mut multiplicative = Tally::new(Axiom::DimensionMultiplicativity);
    let mut assoc = Tally::new(Axiom::Associativity);
    let mut bound = Tally::new(Axiom::DimensionBound);

    let conj_unit = ring.conjugate(&unit)?;
    involution.probe(conj_unit == unit, || format!("conj(e) = {conj_unit} ≠ e"));
    let d_unit = ring.dim(&unit)?;
    dimension.probe(d_unit.approx_eq(&Dim::one(), DIM_TOLERANCE), || format!("d(e) = {d_unit} ≠ 1"));

    let mut conj: BTreeMap<&Label, Label> = BTreeMap::new();
    let mut dims: BTreeMap<&Label, Dim> = BTreeMap::new();
    for x in window {
        let expected: BTreeMap<Label, u64> = [(x.clone(), 1)].into_iter().collect();
        let left = ring.product(&unit, x)?;
        unit_law.probe(*left == expected, || format!("e·{x} = {}", fmt_map(&left)));
        let right = ring.product(x, &unit)?;
        unit_law.probe(*right == expected, || format!("{x}·e = {}", fmt_map(&right)));

        let c = ring.conjugate(x)?;
        if !ring.contains(&c) {
            involution.probe(false, || format!("conj({x}) = {c} is not a basis label"));
            return Ok(report_with(window, [unit_law, involution, anti, integral, dimension, frobenius, multiplicative, assoc, bound]));
        }
        let cc = ring.conjugate(&c)?;
        involution.probe(cc == *x, || format!("conj(conj({x})) = {cc} ≠ {x}"));

        let d = ring.dim(x)?;
        let dc = ring.dim(&c)?;
        dimension.probe(d.ge(&Dim::one(), DIM_TOLERANCE), || format!("d({x}) = {d} < 1"));
        dimension.probe(d.approx_eq(&dc, DIM_TOLERANCE), || format!("d({x}) = {d} ≠ d(conj {x}) = {dc}"));
        conj.insert(x, c);
        dims.insert(x, d);
    }

    for x in window {
        for y in window {
            let p = ring.product(x, y)?;
            for (a, n) in p.iter() {
                integral.probe(*n > 0, || format!("N_{{{x},{y}}}^{{{a}}} stored as 0"));
            }

            // dimension multiplicativity: Σ_α N d(α) = d(x)d(y)
            let lhs = p.iter().try_fold(Dim::Int(Default::default()), |acc, (a, n)| {
                let da = ring.dim(a)?;
                Ok::<_, FusionError>(match (&acc, &da) {
                    (Dim::Int(s), Dim::Int(v)) => Dim::Int(s + v * *n),
                    _ => Dim::Real(acc.to_f64() + da.to_f64() * *n as f64),
                })
            })?;
            let rhs = dims[x].mul(&dims[y]);
            multiplicative.probe(lhs.approx_eq(&rhs, DIM_TOLERANCE), || {
                format!("Σ N_{{{x},{y}}}^α d(α) = {lhs} ≠ d({x})d({y}) = {rhs}")
            });

            for a in p.keys() {
                let da = ring.dim(a)?;
                let lhs = da.mul(&dims[y]);
                bound.probe(lhs.ge(&dims[x], DIM_TOLERANCE), || {
                    format!("N_{{{x},{y}}}^{{{a}}} > 0 but d({a})d({y}) = {lhs} < d({x})")
                });
            }

            // conj(xy) = conj(y)conj(x)
            let conj_xy: BTreeMap<Label, u64> = p
                .iter()
                .map(|(a, n)| Ok((ring.conjugate(a)?, *n)))
                .collect::<Result<_>>()?;
            let yx = ring.product(&conj[y], &conj[x])?;
            anti.probe(conj_xy == *yx, || {
                format!("conj({x}·{y}) = {} ≠ conj({y})·conj({x}) = {}", fmt_map(&conj_xy), fmt_map(&yx))
            });

            for a in window {
                let n1 = p.get(a).copied().unwrap_or(0);
                let n2 = ring.coefficient(&conj[x], a, y)?;
                let n3 = ring.coefficient(a, &conj[y], x)?;
                frobenius.probe(n1 == n2 && n2 == n3, || {
                    format!(
                        "N_{{{x},{y}}}^{{{a}}} = {n1}, N_{{{},{a}}}^{{{y}}} = {n2}, N_{{{a},{}}}^{{{x}}} = {n3}",
                        conj[x], conj[y]
                    )
                });
            }

            for z in window {
                let left = times(ring, &p, z)?;
                let yz = ring.product(y, z)?;
                let right = times_left(ring, x, &yz)?;
                assoc.probe(left == right, || {
                    format!("({x}·{y})·{z} = {} ≠ {x}·({y}·{z}) = {}", fmt_map(&left), fmt_map(&right))
                });
            }
        }
    }

    Ok(report_with(
        window,
        [unit_law, involution, anti, integral, dimension, frobenius, multiplicative, assoc, bound],
    ))
}

fn report_with(window: &[Label], tallies: [Tally; 9]) -> AxiomReport {
    AxiomReport {
        window: window.to_vec(),
        checks: tallies.into_iter().map(Tally::finish).collect(),
    }
}
