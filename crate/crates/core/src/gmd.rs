//! The generalized minimum distance function `δ_R(t, ℓ)`.
//!
//! Two independent evaluations are provided. [`BruteEngine`] works from the
//! definition: it enumerates `ℓ`-dimensional subspaces of `[R]_t`, tests the
//! annihilator through colon ideals and measures `e(R/(F))` with a Gröbner
//! basis. [`delta_fast`] uses a certified minimal-prime decomposition and
//! only needs Hilbert functions of intersections of primes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{colon, intersect, Ideal};
use crate::hilbert::{hilbert_data_from_leads, standard_monomials, HilbertData};
use crate::linalg::{Field, FieldMatrix, SubspaceIter};
use crate::poly::{Monomial, Polynomial};
use crate::schemes::{Classification, RingProfile};

/// How `e(R/(F))` is normalized when `dim R/(F) < dim R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Evaluate at `θ = dim R`; a dimension drop gives 0.
    #[default]
    FixedDim,
    /// Evaluate at the quotient's own dimension.
    OwnDim,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::FixedDim => "fixed-dim",
            Convention::OwnDim => "own-dim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Fast,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Fast => "fast",
            Method::Both => "both",
        }
    }
}

/// Candidate generation for the brute-force evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BruteStrategy {
    /// Only subspaces all of whose nonzero vectors are zero divisors can
    /// have a nonzero annihilator; they are grown from zero-divisor lines.
    #[default]
    ZeroDivisorClosure,
    /// Every subspace of `[R]_t`.
    Exhaustive,
}

/// Size guards for brute-force enumeration.
#[derive(Debug, Clone, Copy)]
pub struct BruteLimits {
    pub max_lines: u64,
    pub max_subspaces: u64,
}

impl Default for BruteLimits {
    fn default() -> Self {
        Self { max_lines: 200_000, max_subspaces: 5_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceWitness {
    /// Position in the canonical enumeration of `ℓ`-subspaces of `[R]_t`.
    pub index: u64,
    /// RREF coordinates over the standard monomials of `[R]_t`.
    pub coordinates: Vec<Vec<u32>>,
    pub forms: Vec<String>,
    /// `e(R/(F))` under the convention in use.
    pub quotient_multiplicity: i64,
    #[serde(skip)]
    pub polys: Vec<Polynomial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct BruteStats {
    pub piece_dim: usize,
    pub lines: u64,
    pub zero_divisor_lines: u64,
    pub candidates: u64,
    pub qualifying: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteDelta {
    pub value: i64,
    pub f_empty: bool,
    pub witness: Option<SubspaceWitness>,
    pub stats: BruteStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSetWitness {
    /// 1-based indices into the supplied prime list.
    pub primes: Vec<usize>,
    pub weight: i64,
    pub piece_dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FastDelta {
    pub value: i64,
    pub f_empty: bool,
    pub witness: Option<PrimeSetWitness>,
}

/// `(I : (F)) ≠ I`.
pub fn ann_nonzero_colon(ideal: &Ideal, forms: &[Polynomial]) -> bool {
    !ideal.contains(&colon(ideal, forms))
}

/// Some minimal prime contains every form. Agrees with the colon test on
/// reduced rings.
pub fn ann_nonzero_primes(profile: &RingProfile, forms: &[Polynomial]) -> bool {
    profile.primes.iter().any(|p| forms.iter().all(|f| p.ideal.contains_poly(f)))
}

/// Multiplicity of `S/(I + (F))` under `convention`, where `dim_r = dim R`.
fn quotient_multiplicity(ideal: &Ideal, forms: &[Polynomial], dim_r: usize, convention: Convention) -> i64 {
    let gb = ideal.groebner().extend(forms);
    let data = hilbert_data_from_leads(&gb.leading_monomials(), ideal.ring().nvars())
        .expect("forms of positive degree keep the quotient nonzero");
    match convention {
        Convention::OwnDim => data.multiplicity,
        Convention::FixedDim if data.dim == dim_r => data.multiplicity,
        Convention::FixedDim => 0,
    }
}

/// Brute-force evaluation of `δ_R(t, ·)` for one degree `t`.
///
/// Elements of `[R]_t` are coordinate vectors over the degree-`t` standard
/// monomials. Every line of `[R]_t` gets its colon ideal `(I : f)` up front;
/// these are reused for the colon of any subspace.
pub struct BruteEngine<'a> {
    ideal: &'a Ideal,
    ring_data: &'a HilbertData,
    t: u32,
    field: Field,
    basis: Vec<Monomial>,
    lines: Vec<Vec<u32>>,
    line_table: LineTable,
    line_colon: Vec<Ideal>,
    zero_divisor: Vec<bool>,
    limits: BruteLimits,
}

impl<'a> BruteEngine<'a> {
    pub fn new(ideal: &'a Ideal, ring_data: &'a HilbertData, t: u32, limits: BruteLimits) -> Result<Self> {
        if t == 0 {
            return Err(Error::Hypothesis("degree t must be at least 1".into()));
        }
        let field = ideal.ring().field();
        let basis = standard_monomials(ideal, t);
        let m = basis.len();
        let lines_total = SubspaceIter::new(m, 1, field)?.total();
        if lines_total > limits.max_lines {
            return Err(Error::TooLarge(format!(
                "[R]_{t} has dimension {m}: {lines_total} lines over F_{} exceed the limit {}",
                field.p(),
                limits.max_lines
            )));
        }
        let lines: Vec<Vec<u32>> = SubspaceIter::new(m, 1, field)?.map(|mat| mat.row(0).to_vec()).collect();
        let line_table = LineTable::new(field, m, &lines);
        let polys: Vec<Polynomial> = lines.iter().map(|v| lift(field, &basis, v)).collect();
        let line_colon: Vec<Ideal> = polys.par_iter().map(|f| crate::groebner::colon_poly(ideal, f)).collect();
        let zero_divisor = line_colon.iter().map(|c| !ideal.contains(c)).collect();
        Ok(Self { ideal, ring_data, t, field, basis, lines, line_table, line_colon, zero_divisor, limits })
    }

    pub fn piece_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> u32 {
        self.t
    }

    pub fn standard_basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// The form with the given coordinates.
    pub fn lift(&self, coords: &[u32]) -> Polynomial {
        lift(self.field, &self.basis, coords)
    }

    /// Whether the line through `v` (any nonzero vector) consists of zero
    /// divisors.
    pub fn is_zero_divisor(&self, v: &[u32]) -> bool {
        self.zero_divisor[self.line_of(v)]
    }

    fn line_of(&self, v: &[u32]) -> usize {
        self.line_table.line_of(self.field, v)
    }

    /// `(I : (F))` for the rows of an RREF matrix, reusing line colons.
    fn subspace_colon(&self, rows: &[u32], ell: usize, cache: &mut HashMap<Vec<u32>, Ideal>) -> Ideal {
        let m = self.basis.len();
        let last = &self.line_colon[self.line_of(&rows[(ell - 1) * m..ell * m])];
        if ell == 1 {
            return last.clone();
        }
        let prefix = &rows[..(ell - 1) * m];
        if !cache.contains_key(prefix) {
            let mut acc = self.line_colon[self.line_of(&prefix[..m])].clone();
            for r in 1..ell - 1 {
                acc = intersect(&acc, &self.line_colon[self.line_of(&prefix[r * m..(r + 1) * m])]);
            }
            if cache.len() > 4096 {
                cache.clear();
            }
            cache.insert(prefix.to_vec(), acc);
        }
        intersect(&cache[prefix], last)
    }

    /// Evaluates one candidate: `Some(e(R/(F)))` when `Ann(F) ≠ 0`.
    fn evaluate(
        &self,
        rows: &[u32],
        ell: usize,
        convention: Convention,
        cache: &mut HashMap<Vec<u32>, Ideal>,
    ) -> Option<i64> {
        let ann = if ell == 1 {
            self.zero_divisor[self.line_of(rows)]
        } else {
            !self.ideal.contains(&self.subspace_colon(rows, ell, cache))
        };
        if !ann {
            return None;
        }
        let m = self.basis.len();
        let forms: Vec<Polynomial> = (0..ell).map(|r| self.lift(&rows[r * m..(r + 1) * m])).collect();
        Some(quotient_multiplicity(self.ideal, &forms, self.ring_data.dim, convention))
    }

    /// All `ℓ`-subspaces whose nonzero vectors are all zero divisors, as
    /// RREF data.
    ///
    /// A `(k+1)`-space is produced only from the span of the first `k` rows
    /// of its RREF, extended by its last row: a zero-divisor line whose
    /// pivot lies past every pivot of the smaller space, which must vanish
    /// in that column. Each space is therefore produced exactly once.
    fn zero_divisor_subspaces(&self, ell: usize) -> Result<Vec<Vec<u32>>> {
        let m = self.basis.len();
        let p = self.field.p();
        let zd_lines: Vec<(usize, &Vec<u32>)> =
            self.lines.iter().zip(&self.zero_divisor).filter(|(_, &z)| z).map(|(v, _)| (leading_index(v), v)).collect();
        let mut level: Vec<Vec<u32>> = zd_lines.iter().map(|(_, v)| (*v).clone()).collect();
        for k in 1..ell {
            let next: Vec<Vec<Vec<u32>>> = level
                .par_iter()
                .map(|space| {
                    let last_pivot = leading_index(&space[(k - 1) * m..]);
                    let mut found = Vec::new();
                    let mut v = vec![0u32; m];
                    let mut coeffs = vec![0u32; k];
                    for &(pivot, w) in &zd_lines {
                        if pivot <= last_pivot || (0..k).any(|i| space[i * m + pivot] != 0) {
                            continue;
                        }
                        // the new lines are spanned by w + Σ c_i b_i
                        coeffs.iter_mut().for_each(|c| *c = 0);
                        let ok = 'combos: loop {
                            v.copy_from_slice(w);
                            for (i, &c) in coeffs.iter().enumerate() {
                                if c != 0 {
                                    for j in 0..m {
                                        v[j] = self.field.add(v[j], self.field.mul(c, space[i * m + j]));
                                    }
                                }
                            }
                            if !self.zero_divisor[self.line_of(&v)] {
                                break false;
                            }
                            for c in coeffs.iter_mut().rev() {
                                *c += 1;
                                if *c < p {
                                    continue 'combos;
                                }
                                *c = 0;
                            }
                            break true;
                        };
                        if ok {
                            let mut data = space.clone();
                            data.extend_from_slice(w);
                            found.push(data);
                        }
                    }
                    found
                })
                .collect();
            level = next.into_iter().flatten().collect();
            if level.len() as u64 > self.limits.max_subspaces {
                return Err(Error::TooLarge(format!("{} zero-divisor subspaces of dimension {}", level.len(), k + 1)));
            }
        }
        Ok(level)
    }

    pub fn delta(&self, ell: usize, convention: Convention, strategy: BruteStrategy) -> Result<BruteDelta> {
        if ell == 0 {
            return Err(Error::Hypothesis("ℓ must be at least 1".into()));
        }
        let m = self.basis.len();
        let e = self.ring_data.multiplicity;
        let mut stats = BruteStats {
            piece_dim: m,
            lines: self.lines.len() as u64,
            zero_divisor_lines: self.zero_divisor.iter().filter(|&&z| z).count() as u64,
            ..Default::default()
        };
        if ell > m {
            return Ok(BruteDelta { value: e, f_empty: true, witness: None, stats });
        }
        let iter = SubspaceIter::new(m, ell, self.field)?;
        // (multiplicity, canonical index) of every qualifying subspace
        let results: Vec<(i64, u64)> = match strategy {
            BruteStrategy::ZeroDivisorClosure => {
                let spaces = self.zero_divisor_subspaces(ell)?;
                let mut indexed: Vec<(u64, Vec<u32>)> = spaces
                    .into_iter()
                    .map(|d| {
                        let mat = FieldMatrix::from_residues(self.field, ell, m, d);
                        (iter.rank_of(&mat).expect("full rank"), mat.entries().to_vec())
                    })
                    .collect();
                indexed.sort_unstable_by_key(|(i, _)| *i);
                stats.candidates = indexed.len() as u64;
                let chunk = indexed.len().div_ceil(64).max(1);
                indexed
                    .par_chunks(chunk)
                    .map(|part| {
                        let mut cache = HashMap::new();
                        part.iter()
                            .filter_map(|(idx, rows)| {
                                self.evaluate(rows, ell, convention, &mut cache).map(|v| (v, *idx))
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }
            BruteStrategy::Exhaustive => {
                if iter.total() > self.limits.max_subspaces {
                    return Err(Error::TooLarge(format!("{} subspaces", iter.total())));
                }
                stats.candidates = iter.total();
                iter.ranges(64)
                    .into_par_iter()
                    .map(|(s, end)| {
                        let mut cache = HashMap::new();
                        let mut out = Vec::new();
                        iter.for_each_in_range(s, end, |idx, rows| {
                            if let Some(v) = self.evaluate(rows, ell, convention, &mut cache) {
                                out.push((v, idx));
                            }
                        });
                        out
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            }
        };
        stats.qualifying = results.len() as u64;
        let best = results.iter().copied().max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((mult, index)) = best else {
            return Ok(BruteDelta { value: e, f_empty: true, witness: None, stats });
        };
        let mat = iter.unrank(index);
        let polys: Vec<Polynomial> = (0..ell).map(|r| self.lift(mat.row(r))).collect();
        let ring = self.ideal.ring();
        let witness = SubspaceWitness {
            index,
            coordinates: mat.row_vecs(),
            forms: polys.iter().map(|f| ring.format(f)).collect(),
            quotient_multiplicity: mult,
            polys,
        };
        Ok(BruteDelta { value: e - mult, f_empty: false, witness: Some(witness), stats })
    }
}

fn lift(field: Field, basis: &[Monomial], coords: &[u32]) -> Polynomial {
    Polynomial::from_terms(field, basis.iter().zip(coords).filter(|(_, &c)| c != 0).map(|(m, &c)| (*m, c as i64)))
}

fn leading_index(v: &[u32]) -> usize {
    v.iter().position(|&c| c != 0).expect("nonzero vector")
}

/// Line index of every nonzero vector of `F_p^m`, keyed by its base-`p`
/// code. Small spaces use a dense table over all vectors; larger ones
/// store normalized representatives only.
#[derive(Debug)]
enum LineTable {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

const DENSE_LINE_TABLE: u64 = 1 << 22;

impl LineTable {
    fn new(field: Field, m: usize, lines: &[Vec<u32>]) -> Self {
        let p = field.p() as u64;
        let size = p.checked_pow(m as u32).unwrap_or(u64::MAX);
        if size <= DENSE_LINE_TABLE {
            let mut table = vec![u32::MAX; size as usize];
            let mut v = vec![0u32; m];
            for (i, line) in lines.iter().enumerate() {
                for c in 1..field.p() {
                    for j in 0..m {
                        v[j] = field.mul(c, line[j]);
                    }
                    table[code(field, &v) as usize] = i as u32;
                }
            }
            LineTable::Dense(table)
        } else {
            LineTable::Sparse(lines.iter().enumerate().map(|(i, v)| (code(field, v), i as u32)).collect())
        }
    }

    fn line_of(&self, field: Field, v: &[u32]) -> usize {
        match self {
            LineTable::Dense(t) => t[code(field, v) as usize] as usize,
            LineTable::Sparse(h) => {
                let inv = field.inv(v[leading_index(v)]);
                let p = field.p() as u64;
                let key = v.iter().fold(0u64, |acc, &c| acc * p + field.mul(c, inv) as u64);
                h[&key] as usize
            }
        }
    }
}

fn code(field: Field, v: &[u32]) -> u64 {
    let p = field.p() as u64;
    v.iter().fold(0u64, |acc, &c| acc * p + c as u64)
}

/// Brute-force `δ_R(t, ℓ)` for a single pair.
pub fn delta_bruteforce(
    ideal: &Ideal,
    ring_data: &HilbertData,
    t: u32,
    ell: usize,
    convention: Convention,
    strategy: BruteStrategy,
) -> Result<BruteDelta> {
    BruteEngine::new(ideal, ring_data, t, BruteLimits::default())?.delta(ell, convention, strategy)
}

/// `δ_R(t, ℓ)` from the minimal primes: the largest total multiplicity of
/// top primes in a set `τ` with `dim [∩τ / I]_t ≥ ℓ`. Adding a prime to
/// `τ` only shrinks the intersection, so lower-dimensional primes never
/// help and only sets of top primes are scanned.
pub fn delta_fast(profile: &RingProfile, t: usize, ell: usize) -> Result<FastDelta> {
    profile.require_certified()?;
    if t == 0 || ell == 0 {
        return Err(Error::Hypothesis("t and ℓ must be at least 1".into()));
    }
    let ell = ell as i64;
    let e = profile.multiplicity();
    let f_empty = !(0..profile.nprimes()).any(|i| profile.family_piece_dim(1 << i, t) >= ell);
    if f_empty {
        return Ok(FastDelta { value: e, f_empty, witness: None });
    }
    let top = profile.top_mask();
    let mut best: Option<(i64, u32, i64)> = None;
    for mask in (1..=top).filter(|m| m & !top == 0) {
        let d = profile.family_piece_dim(mask, t);
        if d >= ell {
            let w = profile.top_weight(mask);
            if best.is_none_or(|(bw, _, _)| w > bw) {
                best = Some((w, mask, d));
            }
        }
    }
    let (weight, mask, piece_dim) = best.unwrap_or((0, 0, 0));
    let witness = (mask != 0).then(|| PrimeSetWitness {
        primes: (0..profile.nprimes()).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect(),
        weight,
        piece_dim,
    });
    Ok(FastDelta { value: e - weight, f_empty, witness })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub ell: usize,
    pub value: i64,
    /// Which of the seven structural cases applied.
    pub case: u8,
}

/// `s_R(ℓ)` from the structure of the minimal primes.
pub fn stabilization_value(profile: &RingProfile, ell: usize) -> Result<Stabilization> {
    if ell == 0 {
        return Err(Error::Hypothesis("ℓ must be at least 1".into()));
    }
    if profile.classification == Classification::Unknown {
        return Err(Error::Uncertified("no certified decomposition; iterate the brute-force table instead".into()));
    }
    let e = profile.multiplicity();
    let tops = profile.top_indices();
    let e_min = profile.primes[tops[0]].mult;
    let (value, case) = match profile.classification {
        Classification::MixedLowDimGe2 => (0, 1),
        Classification::Domain => (e, 2),
        Classification::UnmixedDimGe2 => (e_min, 3),
        Classification::OneDimensional => {
            if (ell as i64) <= e - e_min {
                let a = tops.len();
                let mut best = i64::MAX;
                for sigma in 1u32..(1 << a) - 1 {
                    let sum: i64 = (0..a).filter(|i| sigma >> i & 1 == 1).map(|i| profile.primes[tops[i]].mult).sum();
                    if sum >= ell as i64 {
                        best = best.min(sum);
                    }
                }
                (best, 4)
            } else {
                (e, 5)
            }
        }
        Classification::MixedLowDim1 => {
            let lower = profile.intersect_family(profile.lower_mask());
            let e_t = lower.hilbert.as_ref().expect("nonempty").multiplicity;
            if (ell as i64) <= e_t {
                (0, 6)
            } else {
                (e_min, 7)
            }
        }
        Classification::Unknown => unreachable!(),
    };
    Ok(Stabilization { ell, value, case })
}

/// First `t ≥ 1` with `dim [∩mask / I]_t ≥ ℓ`, or `None` if that never
/// happens. The dimension is non-decreasing in `t`; past the Hilbert
/// polynomial threshold it is a polynomial, so a constant value below `ℓ`
/// settles the question.
pub fn first_degree_reaching(profile: &RingProfile, mask: u32, ell: usize) -> Option<usize> {
    let ell = ell as i64;
    let t0 = profile.family_poly_from(mask).max(1);
    if let Some(t) = (1..=t0).find(|&t| profile.family_piece_dim(mask, t) >= ell) {
        return Some(t);
    }
    let n = profile.ideal.ring().nvars();
    let base = profile.family_piece_poly(mask, t0 as i64);
    if (1..=n + 1).all(|k| profile.family_piece_poly(mask, (t0 + k) as i64) == base) {
        return None;
    }
    let mut t = t0 + 1;
    loop {
        if profile.family_piece_dim(mask, t) >= ell {
            return Some(t);
        }
        t += 1;
        assert!(t < t0 + 1_000_000, "non-constant piece dimension failed to grow");
    }
}

/// `δ_R(t, ℓ)` for `t = 1..=t*`, where `t*` is a certified degree past
/// which the function is constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedIteration {
    pub ell: usize,
    /// `deltas[t - 1] = δ_R(t, ℓ)`.
    pub deltas: Vec<i64>,
    pub certificate: usize,
    pub regularity_index: usize,
    pub limit: i64,
}

pub fn certified_iteration(profile: &RingProfile, ell: usize) -> Result<CertifiedIteration> {
    profile.require_certified()?;
    if ell == 0 {
        return Err(Error::Hypothesis("ℓ must be at least 1".into()));
    }
    let e = profile.multiplicity();
    let top = profile.top_mask();
    let firsts: Vec<(i64, usize)> = (1..=top)
        .filter(|m| m & !top == 0)
        .filter_map(|mask| first_degree_reaching(profile, mask, ell).map(|t| (profile.top_weight(mask), t)))
        .collect();
    let certificate = firsts.iter().map(|&(_, t)| t).max().unwrap_or(1);
    let deltas: Vec<i64> = (1..=certificate)
        .map(|t| e - firsts.iter().filter(|&&(_, ft)| ft <= t).map(|&(w, _)| w).max().unwrap_or(0))
        .collect();
    let limit = *deltas.last().expect("certificate ≥ 1");
    let regularity_index = deltas.iter().position(|&d| d == limit).expect("limit attained") + 1;
    Ok(CertifiedIteration { ell, deltas, certificate, regularity_index, limit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityMethod {
    Constant,
    ClosedFormMixed,
    ClosedFormUnmixed,
    CertifiedIteration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegularityIndex {
    pub ell: usize,
    pub value: usize,
    pub method: RegularityMethod,
}

/// `r_R(ℓ)`: closed forms where they apply, certified iteration otherwise.
pub fn regularity_index(profile: &RingProfile, ell: usize) -> Result<RegularityIndex> {
    profile.require_certified()?;
    if ell == 0 {
        return Err(Error::Hypothesis("ℓ must be at least 1".into()));
    }
    let (value, method) = match profile.classification {
        Classification::Domain => (1, RegularityMethod::Constant),
        Classification::MixedLowDimGe2 => {
            let t = first_degree_reaching(profile, profile.top_mask(), ell)
                .expect("the top intersection has dimension at least 2");
            (t, RegularityMethod::ClosedFormMixed)
        }
        Classification::UnmixedDimGe2 => {
            let tops = profile.top_indices();
            let e_min = profile.primes[tops[0]].mult;
            let all = profile.top_mask();
            let t = tops
                .iter()
                .filter(|&&i| profile.primes[i].mult == e_min)
                .filter_map(|&i| first_degree_reaching(profile, all & !(1 << i), ell))
                .min()
                .expect("the complementary intersection has dimension at least 2");
            (t, RegularityMethod::ClosedFormUnmixed)
        }
        _ => (certified_iteration(profile, ell)?.regularity_index, RegularityMethod::CertifiedIteration),
    };
    Ok(RegularityIndex { ell, value, method })
}

/// Sound lower bound on `r_R(ℓ)` from a brute-force scan `t = 1..=t_max`
/// when no decomposition is available: the start of the final constant run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityLowerBound {
    pub ell: usize,
    pub lower_bound: usize,
    pub scanned_to: usize,
    pub deltas: Vec<i64>,
}

pub fn regularity_lower_bound(
    ideal: &Ideal,
    ring_data: &HilbertData,
    ell: usize,
    t_max: usize,
    convention: Convention,
) -> Result<RegularityLowerBound> {
    let mut deltas = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        deltas.push(delta_bruteforce(ideal, ring_data, t as u32, ell, convention, BruteStrategy::default())?.value);
    }
    let last = *deltas.last().ok_or_else(|| Error::Hypothesis("t_max must be at least 1".into()))?;
    let run = deltas.iter().rev().take_while(|&&d| d == last).count();
    Ok(RegularityLowerBound { ell, lower_bound: t_max - run + 1, scanned_to: t_max, deltas })
}

/// Facts about a Stanley–Reisner ring consumed by the bound checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrFacts {
    pub depth: usize,
    pub regularity: usize,
    pub connected: bool,
    /// `None` when the shelling search was inconclusive.
    pub shellable: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub status: VerdictStatus,
    pub detail: String,
}

impl Verdict {
    fn new(check: &str, failures: Vec<String>, checked: usize) -> Self {
        if failures.is_empty() {
            Verdict { check: check.into(), status: VerdictStatus::Pass, detail: format!("{checked} instances") }
        } else {
            Verdict { check: check.into(), status: VerdictStatus::Fail, detail: failures.join("; ") }
        }
    }

    fn skipped(check: &str, why: &str) -> Self {
        Verdict { check: check.into(), status: VerdictStatus::Skipped, detail: format!("hypothesis not met: {why}") }
    }
}

/// Checks every applicable structural statement over `t ≤ t_max`,
/// `ℓ ≤ ell_max`, using the fast evaluation.
pub fn verify_theorems(profile: &RingProfile, t_max: usize, ell_max: usize, sr: Option<&SrFacts>) -> Vec<Verdict> {
    let mut out = Vec::new();
    let certified = profile.reduced_certified;
    let names = [
        "additivity",
        "t_monotone",
        "ell_monotone",
        "stabilization",
        "regularity_closed_form",
        "ann_tests_agree",
        "r_increment",
        "dim_bound",
        "reg_bound",
    ];
    if !certified {
        for n in names {
            out.push(Verdict::skipped(n, "profile is not certified reduced"));
        }
        return out;
    }
    let t_max = t_max.max(1);
    let e = profile.multiplicity();
    let table: Vec<Vec<i64>> = (1..=t_max + 1)
        .map(|t| (1..=ell_max + 1).map(|l| delta_fast(profile, t, l).expect("certified").value).collect())
        .collect();
    let cell = |t: usize, l: usize| table[t - 1][l - 1];

    let top_sum: i64 = profile.primes.iter().filter(|p| p.is_top).map(|p| p.mult).sum();
    out.push(Verdict::new(
        "additivity",
        if top_sum == e { vec![] } else { vec![format!("e(R) = {e}, top primes sum to {top_sum}")] },
        1,
    ));

    let mut fails = Vec::new();
    for l in 1..=ell_max {
        for t in 1..=t_max {
            if cell(t, l) < cell(t + 1, l) {
                fails.push(format!("δ({t},{l}) = {} < δ({},{l}) = {}", cell(t, l), t + 1, cell(t + 1, l)));
            }
        }
    }
    out.push(Verdict::new("t_monotone", fails, t_max * ell_max));

    if profile.classification.is_unmixed() {
        let mut fails = Vec::new();
        for t in 1..=t_max {
            for l in 1..=ell_max {
                if cell(t, l) > cell(t, l + 1) {
                    fails.push(format!("δ({t},{l}) = {} > δ({t},{}) = {}", cell(t, l), l + 1, cell(t, l + 1)));
                }
            }
        }
        out.push(Verdict::new("ell_monotone", fails, t_max * ell_max));
    } else {
        out.push(Verdict::skipped("ell_monotone", "ring is mixed"));
    }

    let mut stab_fails = Vec::new();
    let mut closed_fails = Vec::new();
    let mut closed_checked = 0;
    let mut rs = Vec::new();
    for l in 1..=ell_max {
        let s = stabilization_value(profile, l).expect("certified");
        let r = regularity_index(profile, l).expect("certified");
        let it = certified_iteration(profile, l).expect("certified");
        if it.limit != s.value {
            stab_fails.push(format!("ℓ={l}: case {} gives {}, iteration settles at {}", s.case, s.value, it.limit));
        }
        let upto = t_max.max(r.value + 1).max(it.certificate);
        for t in r.value..=upto {
            let d = delta_fast(profile, t, l).expect("certified").value;
            if d != s.value {
                stab_fails.push(format!("ℓ={l}: δ({t}) = {d} ≠ s = {} for t ≥ r = {}", s.value, r.value));
                break;
            }
        }
        if r.value >= 2 {
            let d = delta_fast(profile, r.value - 1, l).expect("certified").value;
            if d == s.value {
                stab_fails.push(format!("ℓ={l}: δ({}) already equals s = {}", r.value - 1, s.value));
            }
        }
        if r.method != RegularityMethod::CertifiedIteration {
            closed_checked += 1;
            if r.value != it.regularity_index {
                closed_fails.push(format!("ℓ={l}: closed form {} vs iteration {}", r.value, it.regularity_index));
            }
        }
        rs.push(r.value);
    }
    out.push(Verdict::new("stabilization", stab_fails, ell_max));
    if closed_checked > 0 {
        out.push(Verdict::new("regularity_closed_form", closed_fails, closed_checked));
    } else {
        out.push(Verdict::skipped("regularity_closed_form", "no closed form applies"));
    }

    out.push(ann_agreement(profile, t_max.min(2), ell_max.min(2)));

    match sr {
        None => {
            for n in ["r_increment", "dim_bound", "reg_bound"] {
                out.push(Verdict::skipped(n, "not a Stanley–Reisner ring with known depth"));
            }
        }
        Some(f) => {
            if f.depth >= 2 {
                let fails = (1..ell_max)
                    .filter(|&l| rs[l] > rs[l - 1] + 1)
                    .map(|l| format!("r({}) = {} > r({l}) + 1 = {}", l + 1, rs[l], rs[l - 1] + 1))
                    .collect();
                out.push(Verdict::new("r_increment", fails, ell_max.saturating_sub(1)));
                let d = profile.dim();
                let fails = (1..=ell_max)
                    .filter(|&l| rs[l - 1] + 1 > d + l)
                    .map(|l| format!("r({l}) = {} > dim + ℓ - 1 = {}", rs[l - 1], d + l - 1))
                    .collect();
                out.push(Verdict::new("dim_bound", fails, ell_max));
            } else {
                let why = if f.connected { "depth < 2" } else { "depth < 2 (Proj disconnected)" };
                out.push(Verdict::skipped("r_increment", why));
                out.push(Verdict::skipped("dim_bound", why));
            }
            match f.shellable {
                Some(true) => {
                    let fails = (1..=ell_max)
                        .filter(|&l| rs[l - 1] + 1 > f.regularity + l)
                        .map(|l| format!("r({l}) = {} > reg + ℓ - 1 = {}", rs[l - 1], f.regularity + l - 1))
                        .collect();
                    out.push(Verdict::new("reg_bound", fails, ell_max));
                }
                Some(false) => out.push(Verdict::skipped("reg_bound", "complex is not shellable")),
                None => out.push(Verdict::skipped("reg_bound", "shellability inconclusive")),
            }
        }
    }
    out
}

/// Compares the colon-based and prime-based annihilator tests on up to 40
/// evenly spaced subspaces per `(t, ℓ)`.
fn ann_agreement(profile: &RingProfile, t_max: usize, ell_max: usize) -> Verdict {
    let field = profile.ideal.ring().field();
    let mut fails = Vec::new();
    let mut checked = 0;
    for t in 1..=t_max {
        let basis = standard_monomials(&profile.ideal, t as u32);
        for l in 1..=ell_max.min(basis.len()) {
            let Ok(iter) = SubspaceIter::new(basis.len(), l, field) else { continue };
            let total = iter.total();
            let step = total.div_ceil(40).max(1);
            for idx in (0..total).step_by(step as usize) {
                let mat = iter.unrank(idx);
                let forms: Vec<Polynomial> = (0..l).map(|r| lift(field, &basis, mat.row(r))).collect();
                checked += 1;
                let a = ann_nonzero_colon(&profile.ideal, &forms);
                let b = ann_nonzero_primes(profile, &forms);
                if a != b {
                    let ring = profile.ideal.ring();
                    let text: Vec<String> = forms.iter().map(|f| ring.format(f)).collect();
                    fails.push(format!("t={t} F={{{}}}: colon {a}, primes {b}", text.join(", ")));
                }
            }
        }
    }
    Verdict::new("ann_tests_agree", fails, checked)
}
