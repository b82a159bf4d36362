//! Lattice supports `{b^{a+z/h} : z ∈ ℤ}` of atomic laws.

use serde::Serialize;

use super::{Status, Verdict};
use crate::mantissa::{circular_distance, fraclog, Base};
use crate::{Error, Result};

/// Atoms share `frac(h·log_b x) = offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeHit {
    pub h: u32,
    pub offset: f64,
    /// Support inside `{b^{z/h}}`: the product is then never Benford.
    pub zero_offset: bool,
}

/// Harmonics `h ≤ max_h` at which all atoms sit on one lattice, within
/// `tol` on the circle.
pub fn lattice_support_test(
    atoms: &[f64],
    b: Base,
    max_h: u32,
    tol: f64,
) -> Result<Vec<LatticeHit>> {
    if atoms.is_empty() {
        return Err(Error::domain("lattice test needs at least one atom"));
    }
    if max_h == 0 {
        return Err(Error::domain("H must be >= 1"));
    }
    let logs = atoms
        .iter()
        .map(|&x| fraclog(x, b).map(|f| f.value()))
        .collect::<Result<Vec<_>>>()?;
    let mut hits = Vec::new();
    for h in 1..=max_h {
        let hf = h as f64;
        let phases: Vec<f64> = logs.iter().map(|f| (hf * f).rem_euclid(1.0)).collect();
        let first = phases[0];
        if phases.iter().all(|&p| circular_distance(p, first) <= tol) {
            let zero = circular_distance(first, 0.0) <= tol;
            hits.push(LatticeHit {
                h,
                offset: if zero { 0.0 } else { first },
                zero_offset: zero,
            });
        }
    }
    Ok(hits)
}

/// Two verdicts for an i.i.d. atomic family: the almost-sure criterion
/// (no zero-offset lattice) and the in-law criterion (no lattice at all).
pub fn lattice_verdicts(atoms: &[f64], b: Base, max_h: u32, tol: f64) -> Result<Vec<Verdict>> {
    let hits = lattice_support_test(atoms, b, max_h, tol)?;
    let zero: Vec<&LatticeHit> = hits.iter().filter(|l| l.zero_offset).collect();

    let mut as_benford = Verdict::new("iid_as_benford", tol).with("max_h", max_h as f64);
    for l in &zero {
        as_benford.push("zero_offset_lattice_h", l.h as f64);
    }
    as_benford.push("zero_offset_lattices", zero.len() as f64);
    let as_benford = as_benford.status(if zero.is_empty() {
        Status::Holds
    } else {
        Status::Fails
    });

    let mut tends = Verdict::new("iid_tends_to_benford", tol).with("max_h", max_h as f64);
    for l in &hits {
        tends.push("lattice_h", l.h as f64);
        tends.push(format!("lattice_offset_h{}", l.h), l.offset);
    }
    tends.push("lattices", hits.len() as f64);
    let tends = tends.status(if hits.is_empty() {
        Status::Holds
    } else {
        Status::Fails
    });

    Ok(vec![as_benford, tends])
}
