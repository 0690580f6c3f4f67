//! Stability conditions on explored hearts: charge chart, σ-exceptionality
//! of the heart's own collection, the ℂ-action and shift invariance.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigmatilt::heartex::{explore, heart_key, ShiftWindow};
use sigmatilt::quiver::{catalog, Quiver};
use sigmatilt::stab::{c_action, make_stability, sigma_exceptional_check, StabilityCondition, Verdict};
use sigmatilt::tilt::{std_collection, SymbolicCollection};
use sigmatilt::{DerivedCategory, Error};

const TOL: f64 = 1e-9;

fn hearts(q: Quiver, depth: usize) -> (DerivedCategory, Vec<SymbolicCollection>) {
    let cat = DerivedCategory::new(Arc::new(q));
    let start = std_collection(&cat).unwrap();
    let g = explore(&cat, &start, depth, ShiftWindow { lo: -1, hi: 2 }, 1).unwrap();
    let witnesses = g.nodes.into_iter().map(|n| n.witness).collect();
    (cat, witnesses)
}

fn random_charges(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), PI * rng.gen_range(0.05..0.95)))
        .collect()
}

fn close(a: &[Complex64], b: &[Complex64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= TOL)
}

#[test]
fn charge_chart_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (_, hs) = hearts(catalog::linear_a(3), 3);
    for h in &hs {
        let z = random_charges(&mut rng, h.len());
        let s = make_stability(h, &z).unwrap();
        let back: Vec<Complex64> = h.items.iter().map(|it| s.charge_of_class(&it.class)).collect();
        assert!(close(&back, &z));
        let again = make_stability(h, &back).unwrap();
        assert!(close(again.basis_values(), s.basis_values()));
    }
}

#[test]
fn explored_hearts_are_sigma_exceptional() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for q in [catalog::linear_a(2), catalog::linear_a(3), catalog::d4()] {
        let (cat, hs) = hearts(q, 3);
        for h in &hs {
            let s = make_stability(h, &random_charges(&mut rng, h.len())).unwrap();
            let v = sigma_exceptional_check(&cat, &s, &h.objects()).unwrap();
            assert_eq!(v.verdict, Verdict::Pass, "{:?}", v.witnesses);
            assert_eq!(v.r, Some(0.0));
        }
    }
}

#[test]
fn shifted_collection_shifts_the_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (cat, hs) = hearts(catalog::linear_a(3), 2);
    for h in &hs {
        let s = make_stability(h, &random_charges(&mut rng, h.len())).unwrap();
        let base = sigma_exceptional_check(&cat, &s, &h.objects()).unwrap();
        for n in [-2i64, 1, 3] {
            let shifted: Vec<_> = h.objects().iter().map(|x| x.shift(n)).collect();
            let v = sigma_exceptional_check(&cat, &s, &shifted).unwrap();
            assert_eq!(v.verdict, Verdict::Pass);
            assert_eq!(v.r, Some(n as f64));
            for (a, b) in base.phases.iter().zip(&v.phases) {
                assert!((a.unwrap() + n as f64 - b.unwrap()).abs() <= TOL);
            }
        }
    }
}

fn same(cat: &DerivedCategory, a: &StabilityCondition, b: &StabilityCondition) -> bool {
    heart_key(cat, a.heart()) == heart_key(cat, b.heart()) && close(a.basis_values(), b.basis_values())
}

#[test]
fn c_action_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (cat, hs) = hearts(catalog::linear_a(3), 2);
    let mut checked = 0;
    for _ in 0..60 {
        let h = &hs[rng.gen_range(0..hs.len())];
        let s = make_stability(h, &random_charges(&mut rng, h.len())).unwrap();
        let s1 = Complex64::new(rng.gen_range(0.0..2.0), rng.gen_range(-0.5..0.5));
        let s2 = Complex64::new(rng.gen_range(0.0..2.0), rng.gen_range(-0.5..0.5));
        let step = |x: &StabilityCondition, p| match c_action(&cat, x, p) {
            Err(Error::NonGeneric { .. }) => None,
            other => Some(other.unwrap()),
        };
        let (Some(a), Some(whole)) = (step(&s, s1), step(&s, s1 + s2)) else { continue };
        let Some(ab) = step(&a, s2) else { continue };
        assert!(same(&cat, &ab, &whole));
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} generic triples");
}

#[test]
fn unit_parameter_is_the_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (cat, hs) = hearts(catalog::linear_a(2), 4);
    for h in &hs {
        let s = make_stability(h, &random_charges(&mut rng, h.len())).unwrap();
        let t = c_action(&cat, &s, Complex64::new(1.0, 0.0)).unwrap();
        assert_eq!(heart_key(&cat, t.heart()), heart_key(&cat, &h.shift(1)));
        let negated: Vec<Complex64> = s.basis_values().iter().map(|z| -z).collect();
        assert_eq!(t.basis_values(), &negated[..]);
    }
}
