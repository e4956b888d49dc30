//! Catalog rings and operators against independently computed values.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use fusionkit_core::foelner::{boundary, fc3_check};
use fusionkit_core::ringfile::export_window;
use fusionkit_core::spectral::{
    amenability_estimate, build_window, gns_operator, l_measure_operator, l_operator, top_eigenvalue,
    AmenabilityConfig, TruncationWindow,
};
use num_traits::ToPrimitive;

use fusionkit_core::{catalog, verify_axioms, Element, FusionRing, Label, LoadOptions, ProbMeasure, RingFile};

/// Characters of SU(2) irreps as Laurent polynomials: χ_n = Σ_{k=0}^{n} q^{n-2k}.
fn character(n: i64) -> BTreeMap<i64, i64> {
    (0..=n).map(|k| (n - 2 * k, 1)).collect()
}

fn poly_mul(a: &BTreeMap<i64, i64>, b: &BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Peel off the character with the top exponent until nothing is left.
fn decompose(mut p: BTreeMap<i64, i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    while let Some((&top, &mult)) = p.iter().next_back() {
        assert!(mult > 0 && top >= 0);
        *out.entry(top).or_insert(0) += mult;
        for (e, c) in character(top) {
            *p.entry(e).or_insert(0) -= mult * c;
        }
        p.retain(|_, v| *v != 0);
    }
    out
}

#[test]
fn su2_products_match_characters() {
    let ring = catalog::su2();
    for m in 0..=12 {
        for n in 0..=12 {
            let expected = decompose(poly_mul(&character(m), &character(n)));
            let got: BTreeMap<i64, i64> = ring
                .product(&Label::Int(m), &Label::Int(n))
                .unwrap()
                .iter()
                .map(|(l, k)| (l.as_int().unwrap(), *k as i64))
                .collect();
            assert_eq!(got, expected, "{m} ⊗ {n}");
        }
    }
}

#[test]
fn deformed_dims_follow_recursion() {
    for n in 2..=6u64 {
        let ring = catalog::deformed_su2(n).unwrap();
        let mut d = (1u128, n as u128);
        for k in 0..30 {
            assert_eq!(ring.dim(&Label::Int(k)).unwrap().to_f64(), d.0 as f64);
            d = (d.1, n as u128 * d.1 - d.0);
        }
    }
}

#[test]
fn lattice_balls_and_adjacency() {
    for d in 1..=3usize {
        let ring = catalog::zd(d).unwrap();
        let gens = ring.generators();
        let r = 3;
        let window = build_window(&ring, &gens, r, 10_000).unwrap();
        // oracle: all integer vectors with ℓ¹ norm ≤ r
        let mut points = vec![vec![]];
        for _ in 0..d {
            points = points
                .into_iter()
                .flat_map(|p: Vec<i64>| (-3..=3).map(move |x| [p.clone(), vec![x]].concat()))
                .collect();
        }
        let ball: BTreeSet<Vec<i64>> = points.into_iter().filter(|p| p.iter().map(|x| x.abs()).sum::<i64>() <= r as i64).collect();
        assert_eq!(window.len(), ball.len());

        let mu = ProbMeasure::uniform(&ring, &gens).unwrap();
        let op = l_measure_operator(&ring, &mu, &window).unwrap();
        let coords = |l: &Label| -> Vec<i64> {
            match l {
                Label::Int(k) => vec![*k],
                Label::Vector(v) => v.clone(),
                other => panic!("unexpected label {other}"),
            }
        };
        for (i, a) in window.labels().iter().enumerate() {
            for (j, b) in window.labels().iter().enumerate() {
                let dist: i64 = coords(a).iter().zip(coords(b)).map(|(x, y)| (x - y).abs()).sum();
                let expected = if dist == 1 { 1.0 / (2 * d) as f64 } else { 0.0 };
                assert_eq!(op.matrix.get(i, j), expected);
            }
        }
    }
}

#[test]
fn free_group_spheres() {
    let ring = catalog::free_group(2).unwrap();
    let gens = ring.generators();
    let mut previous = 0;
    for r in 0..=6 {
        let size = build_window(&ring, &gens, r, 100_000).unwrap().len();
        let sphere = if r == 0 { 1 } else { 4 * 3usize.pow(r as u32 - 1) };
        assert_eq!(size - previous, sphere);
        previous = size;
    }
}

#[test]
fn path_spectra() {
    let su2 = catalog::su2();
    let d3 = catalog::deformed_su2(3).unwrap();
    for m in [2usize, 7, 30, 100, 300] {
        let w = build_window(&su2, &[Label::Int(1)], m - 1, 1000).unwrap();
        let est = top_eigenvalue(&l_operator(&su2, &Label::Int(1), &w).unwrap(), 1e-12, 1000).unwrap();
        assert!((est.value - (PI / (m + 1) as f64).cos()).abs() < 1e-9, "su2 m={m}");

        let w = build_window(&d3, &[Label::Int(1)], m - 1, 1000).unwrap();
        let est = top_eigenvalue(&l_operator(&d3, &Label::Int(1), &w).unwrap(), 1e-12, 1000).unwrap();
        assert!((est.value - 2.0 / 3.0 * (PI / (m + 1) as f64).cos()).abs() < 1e-9, "deformed m={m}");
    }
}

#[test]
fn exhaustive_boundary_oracle() {
    let ring = catalog::su2();
    let f: Vec<Label> = (0..=100).map(Label::Int).collect();
    let fset: BTreeSet<Label> = f.iter().cloned().collect();
    let s = [Label::Int(1)];
    // scan a radius-110 window, asking the definition directly through
    // individual structure constants
    let window: Vec<Label> = (0..=110).map(Label::Int).collect();
    let mut oracle = BTreeSet::new();
    for a in &window {
        for xi in &s {
            let leaks_out = fset.contains(a) && window.iter().any(|b| !fset.contains(b) && ring.coefficient(a, xi, b).unwrap() > 0);
            let leaks_in = !fset.contains(a) && f.iter().any(|b| ring.coefficient(a, xi, b).unwrap() > 0);
            if leaks_out || leaks_in {
                oracle.insert(a.clone());
            }
        }
    }
    let b = boundary(&ring, &s, &f).unwrap();
    assert_eq!(b.labels(), oracle);
    assert_eq!(oracle, [Label::Int(100), Label::Int(101)].into_iter().collect());
    let report = fc3_check(&ring, &s, &f, 0.06).unwrap();
    assert_eq!(report.lhs.to_f64(), 20605.0);
    assert!(report.satisfied);
}

#[test]
fn gns_trace_and_multiplicativity() {
    let ring = catalog::su2();
    let window = build_window(&ring, &[Label::Int(1)], 12, 100).unwrap();
    let x = Element::from_terms(&ring, [(Label::Int(0), 2), (Label::Int(1), -1), (Label::Int(3), 4)]).unwrap();
    let y = Element::from_terms(&ring, [(Label::Int(0), -3), (Label::Int(2), 5)]).unwrap();
    let px = gns_operator(&ring, &x, &window).unwrap();
    let py = gns_operator(&ring, &y, &window).unwrap();
    let unit = window.position(&ring.unit()).unwrap();
    assert_eq!(py.matrix.get(unit, unit), y.natural_trace().to_f64().unwrap());
    assert_eq!(py.matrix.get(unit, unit), -3.0);

    let mut e0 = vec![0.0; window.len()];
    e0[unit] = 1.0;
    let lhs = px.apply(&py.apply(&e0));
    let xy = x.multiply(&y).unwrap();
    for (i, l) in window.labels().iter().enumerate() {
        assert_eq!(lhs[i], xy.coeff(l).to_f64().unwrap(), "at {l}");
    }
    // π(ξ) = d(ξ) l_ξ
    let l3 = l_operator(&ring, &Label::Int(3), &window).unwrap();
    let g3 = gns_operator(&ring, &Element::basis(&ring, Label::Int(3)), &window).unwrap();
    for (i, j, v) in g3.matrix.triplets() {
        assert!((v - 4.0 * l3.matrix.get(i, j)).abs() < 1e-15);
    }
}

fn same_on_window(original: &FusionRing, table: &FusionRing, window: &TruncationWindow) {
    let name = |l: &Label| Label::name(l.to_string());
    for a in window.labels() {
        assert_eq!(table.dim(&name(a)).unwrap(), original.dim(a).unwrap());
        assert_eq!(table.conjugate(&name(a)).unwrap(), name(&original.conjugate(a).unwrap()));
        for b in window.labels() {
            let want: BTreeMap<Label, u64> = original.product(a, b).unwrap().iter().map(|(l, n)| (name(l), *n)).collect();
            assert_eq!(*table.product(&name(a), &name(b)).unwrap(), want);
        }
    }
}

#[test]
fn export_round_trip() {
    let lenient = LoadOptions { verify_axioms: false, require_closure: false };
    let cases: Vec<(FusionRing, usize)> = vec![
        (catalog::su2(), 5),
        (catalog::deformed_su2(3).unwrap(), 4),
        (catalog::zd(2).unwrap(), 2),
        (catalog::free_group(2).unwrap(), 2),
        (catalog::cyclic(4).unwrap(), 3),
        (catalog::tensor_product(&catalog::su2(), &catalog::cyclic(2).unwrap()), 2),
    ];
    for (ring, r) in cases {
        let window = build_window(&ring, &ring.generators(), r, 1000).unwrap();
        let text = export_window(&ring, &window).unwrap().to_json();
        let table = RingFile::parse(&text).unwrap().build(lenient).unwrap();
        same_on_window(&ring, &table, &window);
    }
    // a finite ring exports to a closed table that passes the strict loader
    let ring = catalog::cyclic(5).unwrap();
    let window = build_window(&ring, &ring.generators(), 5, 100).unwrap();
    let text = export_window(&ring, &window).unwrap().to_json();
    let table = fusionkit_core::load_ring(&text, LoadOptions::default()).unwrap();
    same_on_window(&ring, &table, &window);
}

#[test]
fn tensor_with_trivial_ring_is_a_copy() {
    let su2 = catalog::su2();
    let t = catalog::tensor_product(&su2, &catalog::trivial());
    let e = catalog::trivial().unit();
    for m in 0..6 {
        for n in 0..6 {
            let want: BTreeMap<Label, u64> = su2
                .product(&Label::Int(m), &Label::Int(n))
                .unwrap()
                .iter()
                .map(|(l, k)| (Label::pair(l.clone(), e.clone()), *k))
                .collect();
            let got = t.product(&Label::pair(Label::Int(m), e.clone()), &Label::pair(Label::Int(n), e.clone())).unwrap();
            assert_eq!(*got, want);
        }
    }
    let window = build_window(&t, &t.generators(), 6, 100).unwrap();
    assert!(verify_axioms(&t, window.labels()).unwrap().all_passed());
}

#[test]
fn truncations_are_monotone_and_bounded() {
    let rings = [
        catalog::su2(),
        catalog::deformed_su2(3).unwrap(),
        catalog::zd(2).unwrap(),
        catalog::free_group(2).unwrap(),
        catalog::tensor_product(&catalog::su2(), &catalog::zd(1).unwrap()),
    ];
    for ring in &rings {
        let gens = fusionkit_core::specs::symmetric_generators(ring).unwrap();
        let mu = ProbMeasure::uniform(ring, &gens).unwrap();
        let report = amenability_estimate(ring, &mu, &[1, 2, 3, 4, 5], &AmenabilityConfig::default()).unwrap();
        assert!(report.monotone, "{}", ring.description());
        for e in &report.estimates {
            assert!(e.lambda_max <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn parallel_products_are_deterministic() {
    let ring = catalog::free_group(2).unwrap();
    let gens = fusionkit_core::specs::symmetric_generators(&ring).unwrap();
    let mu = ProbMeasure::uniform(&ring, &gens).unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| amenability_estimate(&ring, &mu, &[7], &AmenabilityConfig::default()).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.estimates[0].lambda_max.to_bits(), four.estimates[0].lambda_max.to_bits());
    assert!(one.estimates[0].window_size > 4096);
}
