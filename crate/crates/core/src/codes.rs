//! Evaluation codes of projective point sets and their generalized
//! Hamming weights.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmd::delta_fast;
use crate::groebner::{intersect_all, Ideal};
use crate::hilbert::hilbert_function;
use crate::linalg::{kernel_basis, rref, Field, FieldMatrix, SubspaceIter};
use crate::poly::{graded_piece_basis, MonomialOrder, Polynomial, Ring, MAX_RING_VARS};
use crate::schemes::{build_profile, RingProfile};

/// Distinct points of `P^{n-1}(F_p)`, each scaled so its first nonzero
/// coordinate is 1. `n` is the number of homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePointSet {
    field: Field,
    n: usize,
    points: Vec<Vec<u32>>,
}

impl ProjectivePointSet {
    pub fn new(field: Field, n: usize, raw: &[Vec<i64>]) -> Result<Self> {
        if n == 0 || n > MAX_RING_VARS {
            return Err(Error::InvalidPoints(format!("{n} coordinates; supported range is 1..={MAX_RING_VARS}")));
        }
        if raw.is_empty() {
            return Err(Error::InvalidPoints("no points".into()));
        }
        let mut points: Vec<Vec<u32>> = Vec::with_capacity(raw.len());
        for (k, r) in raw.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidPoints(format!(
                    "point #{} has {} coordinates, expected {n}",
                    k + 1,
                    r.len()
                )));
            }
            let v: Vec<u32> = r.iter().map(|&c| field.reduce(c)).collect();
            let Some(lead) = v.iter().copied().find(|&c| c != 0) else {
                return Err(Error::InvalidPoints(format!("point #{} is the zero vector", k + 1)));
            };
            let inv = field.inv(lead);
            let v: Vec<u32> = v.iter().map(|&c| field.mul(c, inv)).collect();
            if let Some(j) = points.iter().position(|q| *q == v) {
                return Err(Error::InvalidPoints(format!("points #{} and #{} coincide", j + 1, k + 1)));
            }
            points.push(v);
        }
        Ok(Self { field, n, points })
    }

    /// Every point of `P^{n-1}(F_p)`.
    pub fn all(field: Field, n: usize) -> Result<Self> {
        let pts: Vec<Vec<i64>> =
            SubspaceIter::new(n, 1, field)?.map(|m| m.row(0).iter().map(|&c| c as i64).collect()).collect();
        Self::new(field, n, &pts)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinates `x, y, z` for up to three, `x1..xn` beyond.
    pub fn ring(&self) -> Arc<Ring> {
        if self.n <= 3 {
            Ring::new(self.field, ["x", "y", "z"][..self.n].iter().copied()).expect("valid names")
        } else {
            Ring::numbered(self.field, self.n).expect("validated count")
        }
    }
}

/// `I(X)` with the point ideals it is the intersection of.
#[derive(Debug, Clone)]
pub struct VanishingIdeal {
    pub ideal: Ideal,
    pub point_primes: Vec<Ideal>,
}

/// Each point ideal is spanned by the linear forms vanishing at the point;
/// `I(X)` is their intersection.
pub fn vanishing_ideal(x: &ProjectivePointSet) -> VanishingIdeal {
    let ring = x.ring();
    let field = x.field;
    let point_primes: Vec<Ideal> = x
        .points
        .iter()
        .map(|pt| {
            let row = FieldMatrix::from_residues(field, 1, x.n, pt.clone());
            let ker = kernel_basis(&row);
            let gens = (0..ker.rows())
                .map(|r| {
                    Polynomial::from_terms(
                        field,
                        ker.row(r)
                            .iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(i, &c)| (crate::poly::Monomial::var(i), c as i64)),
                    )
                })
                .collect();
            Ideal::new(ring.clone(), gens).expect("linear forms")
        })
        .collect();
    let ideal = intersect_all(point_primes.iter()).expect("at least one point");
    VanishingIdeal { ideal, point_primes }
}

/// Certified profile of `S/I(X)` with the point ideals as minimal primes.
pub fn point_profile(x: &ProjectivePointSet) -> Result<RingProfile> {
    let v = vanishing_ideal(x);
    build_profile(v.ideal, Some(v.point_primes))
}

/// A linear code given by a full-rank generator matrix in RREF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: FieldMatrix,
}

impl LinearCode {
    /// Row-reduces `m` and drops zero rows.
    pub fn from_matrix(m: &FieldMatrix) -> Self {
        let red = rref(m);
        let mut g = FieldMatrix::zeros(m.field(), 0, m.cols());
        for r in 0..red.rank {
            g.push_row(red.matrix.row(r));
        }
        Self { generator: g }
    }

    pub fn generator(&self) -> &FieldMatrix {
        &self.generator
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn field(&self) -> Field {
        self.generator.field()
    }

    /// Coordinates where some codeword is nonzero.
    pub fn support_size(&self) -> usize {
        (0..self.length()).filter(|&c| (0..self.dimension()).any(|r| self.generator.get(r, c) != 0)).count()
    }
}

/// `C_X(t)`: degree-`t` monomials evaluated at the normalized points.
pub fn evaluation_code(x: &ProjectivePointSet, t: u32) -> Result<LinearCode> {
    if t == 0 {
        return Err(Error::Hypothesis("degree t must be at least 1".into()));
    }
    let monos = graded_piece_basis(x.n, t, &MonomialOrder::Grevlex);
    let mut m = FieldMatrix::zeros(x.field, 0, x.len());
    for mono in &monos {
        let row: Vec<u32> = x.points.iter().map(|pt| mono.eval(x.field, pt)).collect();
        m.push_row(&row);
    }
    let code = LinearCode::from_matrix(&m);
    let expected = hilbert_function(&vanishing_ideal(x).ideal, t);
    if code.dimension() != expected {
        return Err(Error::Hypothesis(format!(
            "evaluation code has dimension {} but the Hilbert function gives {expected}",
            code.dimension()
        )));
    }
    Ok(code)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhwResult {
    pub ell: usize,
    pub value: usize,
    /// RREF basis of an optimal subcode, as codewords.
    pub witness: Vec<Vec<u32>>,
}

/// Largest number of subcodes [`generalized_hamming_weight`] will scan.
pub const MAX_SUBCODES: u64 = 200_000_000;

/// `δ_ℓ(C)`: least support size of an `ℓ`-dimensional subcode, by
/// enumerating every subcode. The support of a subcode is the union of the
/// supports of any basis, so each message vector's support is tabulated once.
pub fn generalized_hamming_weight(code: &LinearCode, ell: usize) -> Result<GhwResult> {
    let k = code.dimension();
    if ell == 0 {
        return Err(Error::Hypothesis("ℓ must be at least 1".into()));
    }
    if ell > k {
        return Err(Error::SubcodeDimension { ell, k });
    }
    let n = code.length();
    if n > 64 {
        return Err(Error::TooLarge(format!("block length {n} exceeds 64")));
    }
    let field = code.field();
    let p = field.p() as u64;
    let vectors = p
        .checked_pow(k as u32)
        .filter(|&v| v <= 1 << 24)
        .ok_or_else(|| Error::TooLarge(format!("{}^{k} message vectors", field.p())))?;
    let g = code.generator();
    // support mask of u·G for the message with base-p code `i`
    let masks: Vec<u64> = (0..vectors)
        .into_par_iter()
        .map(|mut i| {
            let mut u = vec![0u32; k];
            for slot in u.iter_mut().rev() {
                *slot = (i % p) as u32;
                i /= p;
            }
            let mut mask = 0u64;
            for c in 0..n {
                let mut acc = 0;
                for (r, &ur) in u.iter().enumerate() {
                    if ur != 0 {
                        acc = field.add(acc, field.mul(ur, g.get(r, c)));
                    }
                }
                if acc != 0 {
                    mask |= 1 << c;
                }
            }
            mask
        })
        .collect();
    let iter = SubspaceIter::new(k, ell, field)?;
    if iter.total() > MAX_SUBCODES {
        return Err(Error::TooLarge(format!("{} subcodes of dimension {ell}", iter.total())));
    }
    let best = iter
        .ranges(64)
        .into_par_iter()
        .map(|(s, e)| {
            let mut best = (u32::MAX, u64::MAX);
            iter.for_each_in_range(s, e, |idx, rows| {
                let mut mask = 0u64;
                for r in 0..ell {
                    let code = rows[r * k..(r + 1) * k].iter().fold(0u64, |acc, &c| acc * p + c as u64);
                    mask |= masks[code as usize];
                }
                let w = mask.count_ones();
                if w < best.0 {
                    best = (w, idx);
                }
            });
            best
        })
        .reduce(|| (u32::MAX, u64::MAX), |a, b| a.min(b));
    let basis = iter.unrank(best.1);
    let words = rref(&basis.mul(g)).matrix.row_vecs();
    Ok(GhwResult { ell, value: best.0 as usize, witness: words })
}

/// `δ_1, ..., δ_k`.
pub fn weight_hierarchy(code: &LinearCode) -> Result<Vec<usize>> {
    (1..=code.dimension()).map(|l| generalized_hamming_weight(code, l).map(|r| r.value)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeVerdict {
    pub t: u32,
    pub ell: usize,
    pub k: usize,
    pub delta: i64,
    pub ghw: usize,
    pub equal: bool,
}

/// Compares `δ_{I(X)}(t, ℓ)` from the prime decomposition with the
/// generalized Hamming weight of `C_X(t)`.
pub fn bridge_check(x: &ProjectivePointSet, profile: &RingProfile, t: u32, ell: usize) -> Result<BridgeVerdict> {
    let code = evaluation_code(x, t)?;
    let ghw = generalized_hamming_weight(&code, ell)?.value;
    let delta = delta_fast(profile, t as usize, ell)?.value;
    Ok(BridgeVerdict { t, ell, k: code.dimension(), delta, ghw, equal: delta == ghw as i64 })
}
