//! Stability conditions on finite-length hearts.
//!
//! A heart generated by a collection is determined by its simples, and a
//! stability condition with that heart is determined by one charge in the
//! semiclosed upper half plane per simple. Charges are double precision;
//! every comparison goes through [`TOLERANCE`].

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::derived::{DerivedCategory, DerivedObject, Direction};
use crate::error::{Error, Result};
use crate::exactla::RatMatrix;
use crate::tilt::{format_tilt_word, tilt, SymbolicCollection};

pub const TOLERANCE: f64 = 1e-9;

/// `arg(z)/π` in `(0, 1]` when `z` lies in the semiclosed upper half plane
/// (negative reals snap to 1), `None` otherwise.
pub fn upper_phase(z: Complex64) -> Option<f64> {
    if z.norm() <= TOLERANCE {
        return None;
    }
    let a = z.im.atan2(z.re) / PI;
    if a <= -1.0 + TOLERANCE || a >= 1.0 - TOLERANCE {
        Some(1.0)
    } else if a > TOLERANCE {
        Some(a)
    } else {
        None
    }
}

/// Per-entry membership in the semiclosed upper half plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeVerdict {
    /// `(0-based entry, reason)` for each rejected value.
    pub failures: Vec<(usize, String)>,
}

impl ChargeVerdict {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_charge(z: &[Complex64]) -> ChargeVerdict {
    let failures = z
        .iter()
        .enumerate()
        .filter_map(|(k, &w)| {
            if w.norm() <= TOLERANCE {
                Some((k, format!("charge {w} has no positive mass")))
            } else if upper_phase(w).is_none() {
                Some((k, format!("charge {w} has phase outside (0, 1]")))
            } else {
                None
            }
        })
        .collect();
    ChargeVerdict { failures }
}

/// A heart (given by a collection of its simples) and the charges of those
/// simples. The charge extends to K₀ through the item classes.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityCondition {
    heart: SymbolicCollection,
    charges: Vec<Complex64>,
    /// `Z(e_v)` on the standard basis of K₀.
    basis_values: Vec<Complex64>,
}

impl StabilityCondition {
    pub fn heart(&self) -> &SymbolicCollection {
        &self.heart
    }

    /// `Z` of each heart item, in item order.
    pub fn charges(&self) -> &[Complex64] {
        &self.charges
    }

    pub fn basis_values(&self) -> &[Complex64] {
        &self.basis_values
    }

    /// `Z` on an arbitrary K₀ class.
    pub fn charge_of_class(&self, class: &[i64]) -> Complex64 {
        class
            .iter()
            .zip(&self.basis_values)
            .map(|(&c, &z)| z * c as f64)
            .sum()
    }

    /// Phase in `(0, 1]` and mass of heart item `k` (0-based).
    pub fn item_phase(&self, k: usize) -> (f64, f64) {
        let z = self.charges[k];
        (upper_phase(z).expect("validated charge"), z.norm())
    }
}

fn solve_basis_values(heart: &SymbolicCollection, charges: &[Complex64]) -> Result<Vec<Complex64>> {
    let rows: Vec<Vec<i64>> = heart.items.iter().map(|it| it.class.clone()).collect();
    let inv = RatMatrix::from_int_rows(&rows)
        .inverse()
        .ok_or_else(|| Error::Invariant("heart classes do not form a basis of K₀".into()))?;
    let n = inv.rows();
    Ok((0..n)
        .map(|v| {
            (0..n)
                .map(|k| charges[k] * inv[(v, k)].to_f64().expect("finite"))
                .sum()
        })
        .collect())
}

/// The stability condition with heart `heart` and `Z(E_k) = z[k]`.
pub fn make_stability(heart: &SymbolicCollection, z: &[Complex64]) -> Result<StabilityCondition> {
    if z.len() != heart.len() {
        return Err(Error::InvalidCharge(format!(
            "{} charges for {} simples",
            z.len(),
            heart.len()
        )));
    }
    let verdict = validate_charge(z);
    if let Some((k, reason)) = verdict.failures.first() {
        return Err(Error::InvalidCharge(format!("entry {}: {reason}", k + 1)));
    }
    Ok(StabilityCondition {
        heart: heart.clone(),
        charges: z.to_vec(),
        basis_values: solve_basis_values(heart, z)?,
    })
}

/// Phase and mass of a heart simple or a shift of one.
pub fn phase_of(s: &StabilityCondition, x: &DerivedObject) -> Result<(f64, f64)> {
    let (id, shift) = x
        .as_single()
        .ok_or_else(|| Error::Uncertified(format!("{x:?}")))?;
    for (k, it) in s.heart.items.iter().enumerate() {
        if let Some((hid, hs)) = it.object.as_single() {
            if hid == id {
                let (phase, mass) = s.item_phase(k);
                return Ok((phase + (shift - hs) as f64, mass));
            }
        }
    }
    Err(Error::Uncertified(format!("{x:?}")))
}

/// Three-valued verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaVerdict {
    pub verdict: Verdict,
    /// Phases of certified items, `None` for uncertified ones.
    pub phases: Vec<Option<f64>>,
    /// A window start with `r < φ(E_i) ≤ r + 1`, when one exists.
    pub r: Option<f64>,
    pub witnesses: Vec<String>,
}

impl SigmaVerdict {
    pub fn to_json(&self) -> Value {
        let pass = match self.verdict {
            Verdict::Pass => json!(true),
            Verdict::Fail => json!(false),
            Verdict::Unknown => json!("unknown"),
        };
        json!({
            "pass": pass,
            "r": self.r,
            "phases": self.phases,
            "witnesses": self.witnesses,
        })
    }
}

/// Checks that `items` is σ-exceptional: each item semistable (certified
/// as a shift of a simple of the heart), the collection Ext-exceptional,
/// and all phases inside a half-open window of length 1.
pub fn sigma_exceptional_check(
    cat: &DerivedCategory,
    s: &StabilityCondition,
    items: &[DerivedObject],
) -> Result<SigmaVerdict> {
    let mut witnesses = Vec::new();
    let phases: Vec<Option<f64>> = items.iter().map(|x| phase_of(s, x).ok().map(|p| p.0)).collect();
    for (k, p) in phases.iter().enumerate() {
        if p.is_none() {
            witnesses.push(format!("item {} not certified semistable", k + 1));
        }
    }
    let flags = cat.collection_flags(items)?;
    let mut failed = false;
    if !flags.exceptional {
        failed = true;
        witnesses.push("not an exceptional collection".into());
    }
    if !flags.ext {
        failed = true;
        witnesses.push("not Ext".into());
    }
    let known: Vec<f64> = phases.iter().flatten().copied().collect();
    let mut r = None;
    if let (Some(lo), Some(hi)) = (
        known.iter().copied().reduce(f64::min),
        known.iter().copied().reduce(f64::max),
    ) {
        if hi - lo < 1.0 - TOLERANCE {
            let candidate = (hi - TOLERANCE).ceil() - 1.0;
            r = Some(if candidate < lo { candidate } else { hi - 1.0 });
        } else {
            failed = true;
            witnesses.push(format!("phases span [{lo}, {hi}], no window of length 1"));
        }
    }
    let verdict = if failed {
        r = None;
        Verdict::Fail
    } else if phases.iter().any(Option::is_none) {
        r = None;
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    Ok(SigmaVerdict {
        verdict,
        phases,
        r,
        witnesses,
    })
}

/// The stability condition `r · σ` for real `r` in `(0, 1)`: charge rotated
/// by `e^{-iπr}` and heart `P((r, r+1])`, reached by forward tilts at
/// simples the rotated charge sends below the real axis.
pub fn advance_heart(
    cat: &DerivedCategory,
    s: &StabilityCondition,
    r: f64,
    max_steps: Option<usize>,
) -> Result<StabilityCondition> {
    let rot = Complex64::from_polar(1.0, -PI * r);
    let basis: Vec<Complex64> = s.basis_values.iter().map(|&z| z * rot).collect();
    let eval = |class: &[i64]| -> Complex64 {
        class.iter().zip(&basis).map(|(&c, &z)| z * c as f64).sum()
    };
    let bound = max_steps.unwrap_or(32 * s.heart.len().max(1));
    let mut heart = s.heart.clone();
    let mut word = Vec::new();
    loop {
        let charges: Vec<Complex64> = heart.items.iter().map(|it| eval(&it.class)).collect();
        let mut target = None;
        for (k, &z) in charges.iter().enumerate() {
            let a = z.im.atan2(z.re) / PI;
            if a.abs() <= TOLERANCE {
                return Err(Error::NonGeneric {
                    item: k + 1,
                    phase: a + r,
                    r,
                });
            }
            if target.is_none() && a < 0.0 && a > -1.0 + TOLERANCE {
                target = Some(k + 1);
            }
        }
        let Some(k) = target else {
            return Ok(StabilityCondition {
                basis_values: basis.clone(),
                charges: charges
                    .iter()
                    .map(|&z| {
                        // snap the negative real axis onto phase 1
                        if z.im.abs() <= TOLERANCE * z.norm() && z.re < 0.0 {
                            Complex64::new(z.re, 0.0)
                        } else {
                            z
                        }
                    })
                    .collect(),
                heart,
            });
        };
        if word.len() >= bound {
            return Err(Error::IterationBound {
                steps: word.len(),
                trace: format_tilt_word(&word),
            });
        }
        heart = tilt(cat, &heart, k, Direction::Sharp)?.0;
        word.push((k, Direction::Sharp));
    }
}

/// `s · σ = (e^{-iπs} Z, P_{Re s})`. The real part splits as `n + r` with
/// `n` an integer and `r ∈ [0, 1)`: the heart is advanced by `r`, then
/// shifted by `n`.
pub fn c_action(cat: &DerivedCategory, s: &StabilityCondition, param: Complex64) -> Result<StabilityCondition> {
    let n = param.re.floor();
    let r = param.re - n;
    let mut out = if r > 0.0 {
        advance_heart(cat, s, r, None)?
    } else {
        s.clone()
    };
    let n = n.to_i64().ok_or_else(|| Error::InvalidCharge(format!("parameter {param}")))?;
    if n != 0 {
        out.heart = out.heart.shift(n);
        if n.rem_euclid(2) == 1 {
            for z in &mut out.basis_values {
                *z = -*z;
            }
        }
    }
    if param.im != 0.0 {
        let scale = (PI * param.im).exp();
        for z in out.charges.iter_mut().chain(out.basis_values.iter_mut()) {
            *z *= scale;
        }
    }
    Ok(out)
}
