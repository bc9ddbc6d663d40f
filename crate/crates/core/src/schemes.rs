//! Ring profiles: `R = S/I` with Hilbert data, its minimal primes and the
//! structural classification the stabilization formulas dispatch on.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{intersect, intersect_all, Ideal};
use crate::hilbert::{hilbert_data, HilbertData};

/// Largest number of minimal primes the subset caches index.
pub const MAX_PRIMES: usize = 16;

#[derive(Debug, Clone)]
pub struct MinimalPrimeData {
    pub ideal: Ideal,
    pub hilbert: HilbertData,
    pub dim: usize,
    /// `e(S/p)` at its own dimension.
    pub mult: i64,
    pub is_top: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Domain,
    UnmixedDimGe2,
    OneDimensional,
    MixedLowDim1,
    MixedLowDimGe2,
    Unknown,
}

impl Classification {
    pub fn is_mixed(self) -> bool {
        matches!(self, Classification::MixedLowDim1 | Classification::MixedLowDimGe2)
    }

    pub fn is_unmixed(self) -> bool {
        matches!(self, Classification::Domain | Classification::UnmixedDimGe2 | Classification::OneDimensional)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Domain => "domain",
            Classification::UnmixedDimGe2 => "unmixed_dim_ge2",
            Classification::OneDimensional => "one_dimensional",
            Classification::MixedLowDim1 => "mixed_low_dim1",
            Classification::MixedLowDimGe2 => "mixed_low_dim_ge2",
            Classification::Unknown => "unknown",
        }
    }
}

/// Intersection of a set of minimal primes, with its Hilbert data.
#[derive(Debug)]
pub struct FamilyIdeal {
    pub mask: u32,
    pub ideal: Ideal,
    /// `None` for the empty family (the unit ideal).
    pub hilbert: Option<HilbertData>,
}

#[derive(Debug)]
pub struct RingProfile {
    pub ideal: Ideal,
    pub hilbert: HilbertData,
    pub primes: Vec<MinimalPrimeData>,
    pub reduced_certified: bool,
    pub classification: Classification,
    pub warnings: Vec<String>,
    family: Vec<OnceLock<Arc<FamilyIdeal>>>,
}

impl RingProfile {
    pub fn dim(&self) -> usize {
        self.hilbert.dim
    }

    pub fn multiplicity(&self) -> i64 {
        self.hilbert.multiplicity
    }

    pub fn nprimes(&self) -> usize {
        self.primes.len()
    }

    /// Indices of the top-dimensional primes, ascending by multiplicity
    /// (stable on input order).
    pub fn top_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.primes.len()).filter(|&i| self.primes[i].is_top).collect();
        idx.sort_by_key(|&i| self.primes[i].mult);
        idx
    }

    pub fn lower_indices(&self) -> Vec<usize> {
        (0..self.primes.len()).filter(|&i| !self.primes[i].is_top).collect()
    }

    pub fn top_mask(&self) -> u32 {
        mask_of(&self.top_indices())
    }

    pub fn lower_mask(&self) -> u32 {
        mask_of(&self.lower_indices())
    }

    /// Sum of multiplicities of the top primes in `mask`.
    pub fn top_weight(&self, mask: u32) -> i64 {
        self.primes.iter().enumerate().filter(|(i, p)| p.is_top && mask >> i & 1 == 1).map(|(_, p)| p.mult).sum()
    }

    /// `dim_K [S/I]_t`.
    pub fn hf(&self, t: usize) -> i64 {
        self.hilbert.hf(t)
    }

    /// `∩_{i ∈ mask} p_i`, cached. The empty mask yields the unit ideal.
    pub fn intersect_family(&self, mask: u32) -> Arc<FamilyIdeal> {
        assert!(self.primes.len() <= MAX_PRIMES);
        assert!(mask < 1 << self.primes.len(), "prime index out of range");
        self.family[mask as usize]
            .get_or_init(|| {
                if mask == 0 {
                    return Arc::new(FamilyIdeal {
                        mask,
                        ideal: Ideal::unit(self.ideal.ring().clone()),
                        hilbert: None,
                    });
                }
                let high = 31 - mask.leading_zeros();
                let rest = mask & !(1 << high);
                let prime = &self.primes[high as usize];
                let ideal = if rest == 0 {
                    prime.ideal.clone()
                } else {
                    intersect(&self.intersect_family(rest).ideal, &prime.ideal)
                };
                let hilbert = if rest == 0 {
                    prime.hilbert.clone()
                } else {
                    hilbert_data(&ideal).expect("intersection of proper ideals is proper")
                };
                Arc::new(FamilyIdeal { mask, ideal, hilbert: Some(hilbert) })
            })
            .clone()
    }

    /// `dim_K [J/I]_t` for `J = ∩_{i ∈ mask} p_i`, a nonempty family.
    pub fn family_piece_dim(&self, mask: u32, t: usize) -> i64 {
        let fam = self.intersect_family(mask);
        let h = fam.hilbert.as_ref().expect("nonempty family");
        self.hf(t) - h.hf(t)
    }

    /// Hilbert polynomial of `J/I` at `t`.
    pub fn family_piece_poly(&self, mask: u32, t: i64) -> i64 {
        let fam = self.intersect_family(mask);
        let h = fam.hilbert.as_ref().expect("nonempty family");
        self.hilbert.hilbert_poly(t) - h.hilbert_poly(t)
    }

    /// Degree from which `dim [J/I]_t` is given by its polynomial.
    pub fn family_poly_from(&self, mask: u32) -> usize {
        let fam = self.intersect_family(mask);
        let h = fam.hilbert.as_ref().expect("nonempty family");
        self.hilbert.hf_poly_from.max(h.hf_poly_from)
    }

    pub fn require_certified(&self) -> Result<()> {
        if self.reduced_certified {
            Ok(())
        } else if self.primes.is_empty() {
            Err(Error::Uncertified("no minimal primes supplied".into()))
        } else {
            Err(Error::Uncertified(self.warnings.join("; ")))
        }
    }
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | 1 << i)
}

/// Builds the profile of `S/I`, checking the supplied primes.
pub fn build_profile(ideal: Ideal, primes: Option<Vec<Ideal>>) -> Result<RingProfile> {
    let hilbert = hilbert_data(&ideal)?;
    let supplied = primes.unwrap_or_default();
    if supplied.len() > MAX_PRIMES {
        return Err(Error::TooLarge(format!("{} minimal primes (at most {MAX_PRIMES})", supplied.len())));
    }
    let ring = ideal.ring().clone();
    let mut data = Vec::with_capacity(supplied.len());
    for (index, p) in supplied.into_iter().enumerate() {
        if **p.ring() != *ring {
            return Err(Error::RingMismatch(format!("prime #{}", index + 1)));
        }
        if p.is_unit() {
            return Err(Error::ImproperPrime(index + 1));
        }
        if !p.contains(&ideal) {
            let text = p.gens().iter().map(|g| ring.format(g)).collect::<Vec<_>>().join(", ");
            return Err(Error::PrimeDoesNotContain { index: index + 1, prime: format!("({text})") });
        }
        let h = hilbert_data(&p).map_err(|_| Error::ImproperPrime(index + 1))?;
        data.push(MinimalPrimeData { ideal: p, dim: h.dim, mult: h.multiplicity, hilbert: h, is_top: false });
    }
    for p in &mut data {
        p.is_top = p.dim == hilbert.dim;
    }

    let mut warnings = Vec::new();
    let mut certified = !data.is_empty();
    if data.is_empty() {
        warnings.push("no minimal primes supplied".to_string());
    } else {
        for i in 0..data.len() {
            for j in 0..data.len() {
                if i != j && data[j].ideal.contains(&data[i].ideal) {
                    warnings.push(format!("prime #{} contains prime #{}; the list is not minimal", j + 1, i + 1));
                    certified = false;
                }
            }
        }
        let meet = intersect_all(data.iter().map(|p| &p.ideal)).expect("nonempty");
        if !meet.equals(&ideal) {
            warnings.push("the intersection of the supplied primes differs from I".to_string());
            certified = false;
        }
        if certified {
            if data.iter().all(|p| p.dim < hilbert.dim) {
                warnings.push("no supplied prime has the dimension of R".to_string());
                certified = false;
            } else {
                let top_sum: i64 = data.iter().filter(|p| p.is_top).map(|p| p.mult).sum();
                if top_sum != hilbert.multiplicity {
                    warnings.push(format!(
                        "additivity fails: e(R) = {} but the top primes sum to {top_sum}",
                        hilbert.multiplicity
                    ));
                    certified = false;
                }
            }
        }
    }

    let classification = if certified { classify(&data, hilbert.dim) } else { Classification::Unknown };
    let family = (0..1usize << data.len()).map(|_| OnceLock::new()).collect();
    Ok(RingProfile { ideal, hilbert, primes: data, reduced_certified: certified, classification, warnings, family })
}

fn classify(primes: &[MinimalPrimeData], dim: usize) -> Classification {
    if primes.len() == 1 {
        return Classification::Domain;
    }
    let lower: Vec<usize> = primes.iter().filter(|p| !p.is_top).map(|p| p.dim).collect();
    if lower.is_empty() {
        if dim >= 2 {
            Classification::UnmixedDimGe2
        } else {
            Classification::OneDimensional
        }
    } else if lower.iter().any(|&d| d >= 2) {
        Classification::MixedLowDimGe2
    } else {
        Classification::MixedLowDim1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hilbert_function;
    use crate::linalg::Field;
    use crate::poly::Ring;

    fn first_example() -> (Ideal, Vec<Ideal>) {
        let ring = Ring::new(Field::new(2).unwrap(), ["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&ring, &["x^3+y^2*z", "x*y+z^2"]).unwrap();
        let primes = vec![
            Ideal::parse(&ring, &["x", "z"]).unwrap(),
            Ideal::parse(&ring, &["y+z", "x+z"]).unwrap(),
            Ideal::parse(&ring, &["x*y+z^2", "x^2+y^2+x*z+y*z+z^2"]).unwrap(),
        ];
        (i, primes)
    }

    fn second_example() -> (Ideal, Vec<Ideal>) {
        let ring = Ring::new(Field::new(3).unwrap(), ["x", "y", "z"]).unwrap();
        let i = Ideal::parse(&ring, &["y^2-y*z", "x^2*y-y*z^2"]).unwrap();
        let primes = vec![
            Ideal::parse(&ring, &["y"]).unwrap(),
            Ideal::parse(&ring, &["y-z", "x-z"]).unwrap(),
            Ideal::parse(&ring, &["y-z", "x+z"]).unwrap(),
        ];
        (i, primes)
    }

    #[test]
    fn first_example_profile() {
        let (i, primes) = first_example();
        let prof = build_profile(i, Some(primes)).unwrap();
        assert!(prof.reduced_certified, "{:?}", prof.warnings);
        assert_eq!(prof.multiplicity(), 6);
        assert_eq!(prof.primes.iter().map(|p| p.dim).collect::<Vec<_>>(), vec![1, 1, 1]);
        assert_eq!(prof.primes.iter().map(|p| p.mult).collect::<Vec<_>>(), vec![1, 1, 4]);
        assert_eq!(prof.classification, Classification::OneDimensional);
        assert_eq!(prof.top_indices(), vec![0, 1, 2]);
    }

    #[test]
    fn second_example_profile() {
        let (i, primes) = second_example();
        let prof = build_profile(i, Some(primes)).unwrap();
        assert!(prof.reduced_certified, "{:?}", prof.warnings);
        assert_eq!(prof.multiplicity(), 1);
        assert_eq!(prof.dim(), 2);
        assert_eq!(prof.primes.iter().map(|p| p.dim).collect::<Vec<_>>(), vec![2, 1, 1]);
        assert_eq!(prof.classification, Classification::MixedLowDim1);
        assert_eq!(prof.lower_mask(), 0b110);
    }

    #[test]
    fn prime_ideal_is_domain() {
        let ring = Ring::new(Field::new(5).unwrap(), ["x", "y"]).unwrap();
        let i = Ideal::parse(&ring, &["x"]).unwrap();
        let prof = build_profile(i.clone(), Some(vec![i])).unwrap();
        assert_eq!(prof.classification, Classification::Domain);
    }

    #[test]
    fn rejects_prime_not_containing_ideal() {
        let ring = Ring::new(Field::new(2).unwrap(), ["x", "y"]).unwrap();
        let i = Ideal::parse(&ring, &["x*y"]).unwrap();
        let bad = Ideal::parse(&ring, &["x+y"]).unwrap();
        let good = Ideal::parse(&ring, &["x"]).unwrap();
        match build_profile(i, Some(vec![good, bad])) {
            Err(Error::PrimeDoesNotContain { index, .. }) => assert_eq!(index, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn incomplete_list_is_uncertified() {
        let ring = Ring::new(Field::new(2).unwrap(), ["x", "y"]).unwrap();
        let i = Ideal::parse(&ring, &["x*y"]).unwrap();
        let prof = build_profile(i, Some(vec![Ideal::parse(&ring, &["x"]).unwrap()])).unwrap();
        assert!(!prof.reduced_certified);
        assert_eq!(prof.classification, Classification::Unknown);
        assert!(!prof.warnings.is_empty());
        assert!(prof.require_certified().is_err());
    }

    #[test]
    fn non_reduced_is_uncertified() {
        let ring = Ring::new(Field::new(3).unwrap(), ["x", "y"]).unwrap();
        let i = Ideal::parse(&ring, &["x^2"]).unwrap();
        let prof = build_profile(i, Some(vec![Ideal::parse(&ring, &["x"]).unwrap()])).unwrap();
        assert!(!prof.reduced_certified);
    }

    #[test]
    fn family_intersections() {
        let (i, primes) = first_example();
        let prof = build_profile(i.clone(), Some(primes.clone())).unwrap();
        let ring = i.ring().clone();
        let f = ring.parse("y^3+x^2*z").unwrap();
        let j23 = prof.intersect_family(0b110);
        assert!(j23.ideal.contains_poly(&f));
        assert!(!i.contains_poly(&f));
        assert!(prof.family_piece_dim(0b110, 3) >= 1);
        assert!(prof.intersect_family(0b001).ideal.equals(&primes[0]));
        assert!(prof.intersect_family(0b111).ideal.equals(&i));
        assert_eq!(prof.family_piece_dim(0b111, 4), 0);
        let unit = prof.intersect_family(0);
        assert!(unit.hilbert.is_none() && unit.ideal.is_unit());
    }

    #[test]
    fn family_dims_match_counting() {
        let (i, primes) = second_example();
        let prof = build_profile(i.clone(), Some(primes)).unwrap();
        for mask in 1..8u32 {
            let fam = prof.intersect_family(mask);
            let mut prev = 0;
            for t in 0..7u32 {
                let by_count = hilbert_function(&i, t) as i64 - hilbert_function(&fam.ideal, t) as i64;
                let d = prof.family_piece_dim(mask, t as usize);
                assert_eq!(d, by_count, "mask {mask} t {t}");
                assert!(d >= prev, "piece dims must be non-decreasing");
                prev = d;
            }
        }
    }

    #[test]
    fn additivity_and_dimension() {
        for (i, primes) in [first_example(), second_example()] {
            let prof = build_profile(i, Some(primes)).unwrap();
            let top: i64 = prof.primes.iter().filter(|p| p.is_top).map(|p| p.mult).sum();
            assert_eq!(top, prof.multiplicity());
            assert_eq!(prof.primes.iter().map(|p| p.dim).max().unwrap(), prof.dim());
        }
    }
}
