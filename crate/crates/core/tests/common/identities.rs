// Randomized identities between boundaries, kernels, Dirichlet norms and
// convolution operators. Shared by the core property tests and the CLI
// acceptance suite.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use fusionkit_core::foelner::{self, boundary, convolution_support, dirichlet_norm, energy_residual};
use fusionkit_core::spectral::{build_window, l_apply, l_operator, rho1_operator_apply};
use fusionkit_core::{catalog, load_ring, Dim, FusionRing, Label, LoadOptions, ProbMeasure, RealElement};
use num_rational::BigRational;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-10;

const FIBONACCI: &str = r#"{"type":"table","labels":["1","t"],"unit":"1",
    "conjugate":{"1":"1","t":"t"},"dim":{"1":1,"t":1.618033988749895},
    "products":{"1|1":{"1":1},"1|t":{"t":1},"t|1":{"t":1},"t|t":{"1":1,"t":1}}}"#;

pub struct Sample {
    pub name: &'static str,
    pub ring: FusionRing,
    /// A ball around the unit from which instances draw their labels.
    pub ball: Vec<Label>,
}

pub fn samples() -> &'static [Sample] {
    static POOL: OnceLock<Vec<Sample>> = OnceLock::new();
    POOL.get_or_init(|| {
        let make = |name, ring: FusionRing, radius| {
            let gens: Vec<Label> = ring.generators();
            let ball = if gens.is_empty() {
                vec![ring.unit()]
            } else {
                build_window(&ring, &gens, radius, 10_000).unwrap().labels().to_vec()
            };
            Sample { name, ring, ball }
        };
        vec![
            make("su2", catalog::su2(), 6),
            make("deformed_su2(3)", catalog::deformed_su2(3).unwrap(), 6),
            make("deformed_su2(5)", catalog::deformed_su2(5).unwrap(), 4),
            make("Z", catalog::zd(1).unwrap(), 6),
            make("Z^2", catalog::zd(2).unwrap(), 3),
            make("F2", catalog::free_group(2).unwrap(), 2),
            make("Z/6", catalog::cyclic(6).unwrap(), 6),
            make("su2 x Z", catalog::tensor_product(&catalog::su2(), &catalog::zd(1).unwrap()), 2),
            make("fibonacci", load_ring(FIBONACCI, LoadOptions::default()).unwrap(), 2),
        ]
    })
}

pub struct Instance<'a> {
    pub sample: &'a Sample,
    pub rng: ChaCha8Rng,
}

impl<'a> Instance<'a> {
    pub fn new(index: usize, seed: u64) -> Instance<'static> {
        let pool = samples();
        Instance {
            sample: &pool[index % pool.len()],
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.sample.ring
    }

    pub fn label(&mut self) -> Label {
        self.sample.ball.choose(&mut self.rng).unwrap().clone()
    }

    pub fn subset(&mut self, max: usize) -> Vec<Label> {
        let k = self.rng.gen_range(1..=max.min(self.sample.ball.len()));
        let mut set: Vec<Label> = self.sample.ball.choose_multiple(&mut self.rng, k).cloned().collect();
        set.sort();
        set
    }

    /// Symmetric probability measure on up to three labels and their conjugates,
    /// optionally charging the unit.
    pub fn symmetric_measure(&mut self, with_unit: bool) -> ProbMeasure {
        let ring = self.sample.ring.clone();
        let mut raw: Vec<(Label, f64)> = (0..self.rng.gen_range(1..=3))
            .map(|_| (self.label(), self.rng.gen_range(0.1..1.0)))
            .collect();
        if with_unit {
            raw.push((ring.unit(), self.rng.gen_range(0.1..1.0)));
        }
        let mut w = std::collections::BTreeMap::<Label, f64>::new();
        for (l, x) in raw {
            let c = ring.conjugate(&l).unwrap();
            *w.entry(l).or_default() += x / 2.0;
            *w.entry(c).or_default() += x / 2.0;
        }
        // pair up conjugates so both get bit-identical weights
        let keys: Vec<Label> = w.keys().cloned().collect();
        for l in &keys {
            let c = ring.conjugate(l).unwrap();
            if *l < c {
                let avg = (w[l] + w[&c]) / 2.0;
                w.insert(l.clone(), avg);
                w.insert(c, avg);
            }
        }
        let total: f64 = w.values().sum();
        ProbMeasure::new(&ring, w.into_iter().map(|(l, x)| (l, x / total))).unwrap()
    }

    pub fn function(&mut self) -> RealElement {
        let support = self.subset(6);
        let values: Vec<(Label, f64)> = support.into_iter().map(|l| (l, self.rng.gen_range(-2.0..2.0))).collect();
        RealElement::from_map(self.ring(), values)
    }

    pub fn integer_function(&mut self) -> RealElement {
        let support = self.subset(6);
        let values: Vec<(Label, f64)> = support.into_iter().map(|l| (l, self.rng.gen_range(1..=3) as f64)).collect();
        RealElement::from_map(self.ring(), values)
    }
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= TOL * scale.max(1.0)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sigma_exact(ring: &FusionRing, l: &Label) -> Option<BigRational> {
    let w = ring.sigma(l).unwrap();
    w.as_exact()?;
    w.to_rational()
}

/// σ(ξ)p(ξ,η) = σ(η)p(η,ξ), exactly whenever the dimensions are integers.
pub fn reversibility(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let mu = inst.symmetric_measure(false);
    let xi = inst.label();
    let row = foelner::kernel_row(&mu, &xi).unwrap();
    for eta in row.support() {
        let exact = (
            foelner::transition_kernel_exact(&mu, &xi, eta).unwrap(),
            foelner::transition_kernel_exact(&mu, eta, &xi).unwrap(),
            sigma_exact(&ring, &xi),
            sigma_exact(&ring, eta),
        );
        if let (Some(p), Some(q), Some(sx), Some(se)) = exact {
            ensure(sx * p == se * q, || format!("{}: reversibility fails at ({xi},{eta})", inst.sample.name))?;
        } else {
            let lhs = ring.sigma(&xi).unwrap().to_f64() * foelner::transition_kernel(&mu, &xi, eta).unwrap();
            let rhs = ring.sigma(eta).unwrap().to_f64() * foelner::transition_kernel(&mu, eta, &xi).unwrap();
            ensure(close(lhs, rhs, lhs.abs()), || format!("{}: {lhs} vs {rhs} at ({xi},{eta})", inst.sample.name))?;
        }
    }
    Ok(())
}

/// ‖f‖²_{D(2)} = ⟨f,f⟩_σ − ⟨ρ_μ f, f⟩_σ.
pub fn energy_identity(inst: &mut Instance) -> Result<(), String> {
    let with_unit = inst.rng.gen_bool(0.5);
    let mu = inst.symmetric_measure(with_unit);
    let f = inst.function();
    let residual = energy_residual(&mu, &f).unwrap();
    let scale = f.inner_sigma(&f).unwrap();
    ensure(close(residual, 0.0, scale), || format!("{}: energy residual {residual:e}", inst.sample.name))
}

/// ‖χ_F‖_{D(1)} = ½ Σ_ω μ(ω) ‖ρ_{1,ω}χ_F − χ_F‖_{1,σ}.
pub fn dirichlet_boundary_identity(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let with_unit = inst.rng.gen_bool(0.5);
    let mu = inst.symmetric_measure(with_unit);
    let f = inst.subset(6);
    let chi = RealElement::indicator(&ring, &f);
    let lhs = dirichlet_norm(&mu, &chi, 1.0).unwrap();
    let mut rhs = 0.0;
    for (omega, w) in mu.weights() {
        let moved = rho1_operator_apply(&ring, omega, &chi).unwrap();
        rhs += w * moved.sub(&chi).unwrap().norm_sigma(1.0).unwrap();
    }
    rhs *= 0.5;
    ensure(close(lhs, rhs, lhs.abs()), || format!("{}: D1 {lhs} vs {rhs}", inst.sample.name))
}

/// supp(χ_F∗μ) = F ∪ ∂_{supp μ}(F) for symmetric μ charging the unit.
pub fn support_identity(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let mu = inst.symmetric_measure(true);
    let f = inst.subset(6);
    let s: Vec<Label> = mu.support().cloned().collect();
    let grown = convolution_support(&ring, &mu, &f).unwrap();
    let mut expected: BTreeSet<Label> = f.iter().cloned().collect();
    expected.extend(boundary(&ring, &s, &f).unwrap().labels());
    ensure(grown == expected, || format!("{}: support {grown:?} vs {expected:?}", inst.sample.name))
}

/// For integer-valued f ≥ 0, both ‖f‖_{D(1)} and ‖f‖_{1,σ} split over the
/// level sets {f ≥ k}.
pub fn level_sets(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let with_unit = inst.rng.gen_bool(0.5);
    let mu = inst.symmetric_measure(with_unit);
    let f = inst.integer_function();
    let top = f.values().values().fold(0.0f64, |a, b| a.max(*b)) as i64;
    let (mut d_sum, mut n_sum) = (0.0, 0.0);
    for k in 1..=top {
        let level: Vec<Label> = f.values().iter().filter(|(_, v)| **v >= k as f64).map(|(l, _)| l.clone()).collect();
        let chi = RealElement::indicator(&ring, &level);
        d_sum += dirichlet_norm(&mu, &chi, 1.0).unwrap();
        n_sum += chi.norm_sigma(1.0).unwrap();
    }
    let d = dirichlet_norm(&mu, &f, 1.0).unwrap();
    let n = f.norm_sigma(1.0).unwrap();
    ensure(close(d, d_sum, d) && close(n, n_sum, n), || {
        format!("{}: D1 {d} vs {d_sum}, norm {n} vs {n_sum}", inst.sample.name)
    })
}

/// ⟨l_ξ u, v⟩ = ⟨u, l_{conj ξ} v⟩ on plain ℓ², and the compressed matrices
/// are transposes of each other.
pub fn transpose_duality(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let xi = inst.label();
    let xi_bar = ring.conjugate(&xi).unwrap();
    let u = inst.function();
    let v = inst.function();
    let plain = |a: &RealElement, b: &RealElement| -> f64 {
        a.values().iter().map(|(l, x)| x * b.get(l)).sum()
    };
    let lhs = plain(&l_apply(&ring, &xi, &u).unwrap(), &v);
    let rhs = plain(&u, &l_apply(&ring, &xi_bar, &v).unwrap());
    ensure(close(lhs, rhs, lhs.abs()), || format!("{}: ⟨l u, v⟩ {lhs} vs {rhs}", inst.sample.name))?;

    let window = fusionkit_core::spectral::TruncationWindow::from_labels(&ring, inst.sample.ball.iter().cloned()).unwrap();
    let a = l_operator(&ring, &xi, &window).unwrap().matrix;
    let b = l_operator(&ring, &xi_bar, &window).unwrap().matrix;
    ensure(a.transpose() == b, || format!("{}: l_{xi}ᵀ ≠ l_{xi_bar} on window", inst.sample.name))
}

fn dim_at_least(lhs: &Dim, rhs: &Dim) -> bool {
    match (lhs.as_int(), rhs.as_int()) {
        (Some(a), Some(b)) => a >= b,
        _ => lhs.ge(rhs, 1e-12),
    }
}

/// N_{ξ,η}^α > 0 ⟹ d(α)d(η) ≥ d(ξ), over every α in supp(ξη).
pub fn dimension_bound(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let xi = inst.label();
    let eta = inst.label();
    for alpha in ring.product(&xi, &eta).unwrap().keys() {
        let lhs = ring.dim(alpha).unwrap().mul(&ring.dim(&eta).unwrap());
        let rhs = ring.dim(&xi).unwrap();
        ensure(dim_at_least(&lhs, &rhs), || format!("{}: d({alpha})d({eta}) < d({xi})", inst.sample.name))?;
    }
    Ok(())
}

/// FC2 evaluated through structure constants equals the direct operator
/// evaluation.
pub fn fc2_paths_agree(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let xi = inst.label();
    let f = inst.subset(6);
    let set: BTreeSet<Label> = f.iter().cloned().collect();
    let via_constants = foelner::fc2_value(&ring, &xi, &set).unwrap().to_f64();
    let direct = foelner::fc2_direct_value(&ring, &xi, &f).unwrap();
    ensure(close(via_constants, direct, direct.abs()), || {
        format!("{}: fc2 {via_constants} vs {direct}", inst.sample.name)
    })
}

/// FC3 at (S, F, ε) with S symmetric and e ∈ S implies FC1 at (uniform on S, F, ε).
pub fn fc_chain(inst: &mut Instance) -> Result<(), String> {
    let ring = inst.ring().clone();
    let mut s: BTreeSet<Label> = [ring.unit()].into_iter().collect();
    for _ in 0..inst.rng.gen_range(1..=2) {
        let l = inst.label();
        s.insert(ring.conjugate(&l).unwrap());
        s.insert(l);
    }
    let s: Vec<Label> = s.into_iter().collect();
    let f = inst.subset(8);
    let eps = inst.rng.gen_range(0.05..3.0);
    let fc3 = foelner::fc3_check(&ring, &s, &f, eps).unwrap();
    if fc3.satisfied {
        let mu = ProbMeasure::uniform(&ring, &s).unwrap();
        let fc1 = foelner::fc1_check(&ring, &mu, &f, eps).unwrap();
        ensure(fc1.satisfied, || format!("{}: FC3 holds but FC1 fails at ε={eps}", inst.sample.name))?;
    }
    Ok(())
}

pub type Identity = fn(&mut Instance) -> Result<(), String>;

pub const IDENTITIES: &[(&str, Identity)] = &[
    ("reversibility of the transition kernel", reversibility),
    ("energy identity", energy_identity),
    ("Dirichlet 1-norm of indicators", dirichlet_boundary_identity),
    ("support identity", support_identity),
    ("level-set decomposition", level_sets),
    ("l-operator transpose duality", transpose_duality),
    ("dimension bound", dimension_bound),
    ("FC2 evaluation paths", fc2_paths_agree),
    ("FC3 implies FC1", fc_chain),
];

/// Runs `check` on `cases` random (ring, seed) instances.
pub fn run(check: Identity, cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (0..samples().len(), proptest::num::u64::ANY);
    runner
        .run(&strategy, |(index, seed)| {
            check(&mut Instance::new(index, seed)).map_err(TestCaseError::fail)
        })
        .map_err(|e| e.to_string())
}
