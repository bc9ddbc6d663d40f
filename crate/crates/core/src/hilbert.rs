//! Hilbert series, Hilbert function, Krull dimension and multiplicity of
//! `S/I`, computed from the leading-term ideal of a grevlex basis.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{graded_piece_basis, Monomial, MonomialOrder, MAX_VARS};

/// Hilbert series `Q(t) / (1-t)^dim` with `Q(1) = multiplicity != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// Coefficients of `Q`, lowest degree first.
    pub numerator: Vec<i64>,
    pub dim: usize,
    pub multiplicity: i64,
    /// From this degree on the Hilbert function equals the Hilbert
    /// polynomial.
    pub hf_poly_from: usize,
}

impl HilbertData {
    /// Coefficient of `t^deg` in the Hilbert series.
    pub fn hf(&self, deg: usize) -> i64 {
        if self.dim == 0 {
            return self.numerator.get(deg).copied().unwrap_or(0);
        }
        let k = self.dim - 1;
        self.numerator
            .iter()
            .enumerate()
            .take_while(|&(i, _)| i <= deg)
            .map(|(i, &q)| q * binomial((deg - i + k) as i64, k as i64))
            .sum()
    }

    /// Hilbert polynomial evaluated at any integer.
    pub fn hilbert_poly(&self, t: i64) -> i64 {
        if self.dim == 0 {
            return 0;
        }
        let k = self.dim as i64 - 1;
        self.numerator.iter().enumerate().map(|(i, &q)| q * binomial_poly(t - i as i64 + k, k)).sum()
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// `x (x-1) ... (x-k+1) / k!` for any integer `x`.
fn binomial_poly(x: i64, k: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    (num / den) as i64
}

/// Minimal generators of a monomial ideal, sorted by degree then exponents.
pub fn minimalize(monos: &[Monomial]) -> Vec<Monomial> {
    let mut sorted = monos.to_vec();
    sorted.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())));
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series of `S / (lt)` over the full
/// denominator `(1-t)^n`. Returns the zero polynomial for the unit ideal.
pub fn hilbert_numerator(lt: &[Monomial], n: usize) -> Vec<i64> {
    assert!(n <= MAX_VARS);
    let mut memo = HashMap::new();
    let mut out = numerator_rec(minimalize(lt), &mut memo);
    trim(&mut out);
    out
}

fn trim(p: &mut Vec<i64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<i64>>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.degree() == 0) {
        return vec![0];
    }
    if let Some(v) = memo.get(&gens) {
        return v.clone();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(a, g)| gens[a + 1..].iter().all(|h| g.is_coprime(h)));
    let result = if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = vec![0; acc.len() + d];
            for (i, &c) in acc.iter().enumerate() {
                next[i] += c;
                next[i + d] -= c;
            }
            acc = next;
        }
        acc
    } else {
        // pivot on the variable shared by the most generators
        let pivot = (0..MAX_VARS)
            .max_by_key(|&v| (gens.iter().filter(|g| g.exp(v) > 0).count(), std::cmp::Reverse(v)))
            .expect("nonempty");
        let x = Monomial::var(pivot);
        let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(pivot) == 0).copied().collect();
        plus.push(x);
        let colon: Vec<Monomial> = gens.iter().map(|g| g.colon_var(pivot)).collect();
        let a = numerator_rec(minimalize(&plus), memo);
        let b = numerator_rec(minimalize(&colon), memo);
        let mut shifted = vec![0; b.len() + 1];
        shifted[1..].copy_from_slice(&b);
        poly_add(&a, &shifted)
    };
    memo.insert(gens, result.clone());
    result
}

/// Divides `N(t) / (1-t)^n` down to `Q(t) / (1-t)^d` with `Q(1) != 0`.
pub fn hilbert_data_from_leads(lt: &[Monomial], n: usize) -> Result<HilbertData> {
    let mut q = hilbert_numerator(lt, n);
    if q.is_empty() {
        return Err(Error::ZeroRing);
    }
    let mut d = n;
    while d > 0 && q.iter().sum::<i64>() == 0 {
        // q(t) = (1 - t) r(t): r_k = q_0 + ... + q_k
        let mut r = Vec::with_capacity(q.len());
        let mut acc = 0;
        for &c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        debug_assert_eq!(acc + q[q.len() - 1], 0);
        q = r;
        trim(&mut q);
        d -= 1;
    }
    let multiplicity: i64 = q.iter().sum();
    debug_assert!(multiplicity > 0);
    let deg_q = q.len().saturating_sub(1) as i64;
    let hf_poly_from = (deg_q - d as i64 + 1).max(0) as usize;
    Ok(HilbertData { numerator: q, dim: d, multiplicity, hf_poly_from })
}

/// Hilbert data of `S/I`.
pub fn hilbert_data(ideal: &Ideal) -> Result<HilbertData> {
    let gb = ideal.groebner();
    if gb.is_unit() {
        return Err(Error::ZeroRing);
    }
    hilbert_data_from_leads(&gb.leading_monomials(), ideal.ring().nvars())
}

/// Degree-`t` standard monomials of `S/I` (not divisible by any grevlex
/// leading monomial), descending in grevlex.
pub fn standard_monomials(ideal: &Ideal, t: u32) -> Vec<Monomial> {
    let leads = ideal.groebner().leading_monomials();
    graded_piece_basis(ideal.ring().nvars(), t, &MonomialOrder::Grevlex)
        .into_iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .collect()
}

/// `dim_K [S/I]_t` by counting standard monomials.
pub fn hilbert_function(ideal: &Ideal, t: u32) -> usize {
    standard_monomials(ideal, t).len()
}

/// Normalized limit with a prescribed dimension: `e(S/I)` when
/// `theta = dim S/I`, zero when `theta` is larger.
pub fn multiplicity_at_dim(ideal: &Ideal, theta: usize) -> Result<i64> {
    let data = hilbert_data(ideal)?;
    multiplicity_at(&data, theta)
}

pub fn multiplicity_at(data: &HilbertData, theta: usize) -> Result<i64> {
    match theta.cmp(&data.dim) {
        std::cmp::Ordering::Less => Err(Error::DimensionTooSmall { requested: theta, actual: data.dim }),
        std::cmp::Ordering::Equal => Ok(data.multiplicity),
        std::cmp::Ordering::Greater => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::poly::Ring;
    use std::sync::Arc;

    fn ring(p: u32, names: &[&str]) -> Arc<Ring> {
        Ring::new(Field::new(p).unwrap(), names.iter().copied()).unwrap()
    }

    /// Direct count of standard monomials for a monomial ideal.
    fn count_standard(gens: &[Monomial], n: usize, t: u32) -> i64 {
        graded_piece_basis(n, t, &MonomialOrder::Grevlex)
            .into_iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count() as i64
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(hilbert_numerator(&[], 2), vec![1]);
        let xy = Monomial::new(&[1, 1]);
        assert_eq!(hilbert_numerator(&[xy], 2), vec![1, 0, -1]);
    }

    #[test]
    fn numerator_xy_xz_matches_count() {
        let gens = [Monomial::new(&[1, 1, 0]), Monomial::new(&[1, 0, 1])];
        let data = hilbert_data_from_leads(&gens, 3).unwrap();
        let expected: Vec<i64> = (0..=6).map(|t| count_standard(&gens, 3, t)).collect();
        assert_eq!(expected, vec![1, 3, 4, 5, 6, 7, 8]);
        let got: Vec<i64> = (0..=6).map(|t| data.hf(t)).collect();
        assert_eq!(got, expected);
        assert_eq!(data.dim, 2);
        assert_eq!(data.multiplicity, 1);
    }

    #[test]
    fn first_example_ring() {
        let r = ring(2, &["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^3+y^2*z", "x*y+z^2"]).unwrap();
        let data = hilbert_data(&i).unwrap();
        assert_eq!(data.dim, 1);
        assert_eq!(data.multiplicity, 6);
        let hf: Vec<usize> = (0..=6).map(|t| hilbert_function(&i, t)).collect();
        assert_eq!(hf, vec![1, 3, 5, 6, 6, 6, 6]);
        assert_eq!(hilbert_function(&i, 2), 5);
    }

    #[test]
    fn zero_ideal_and_unit() {
        let r = ring(3, &["x", "y", "z"]);
        let z = Ideal::zero(r.clone());
        let d = hilbert_data(&z).unwrap();
        assert_eq!((d.dim, d.multiplicity), (3, 1));
        assert_eq!(hilbert_function(&z, 2), 6);
        assert_eq!(hilbert_data(&Ideal::unit(r)), Err(Error::ZeroRing));
    }

    #[test]
    fn second_example_ring() {
        let r = ring(3, &["x", "y", "z"]);
        let i = Ideal::parse(&r, &["y^2-y*z", "x^2*y-y*z^2"]).unwrap();
        let d = hilbert_data(&i).unwrap();
        assert_eq!((d.dim, d.multiplicity), (2, 1));
        for t in 0..12 {
            assert_eq!(hilbert_function(&i, t) as i64, d.hf(t as usize));
        }
    }

    #[test]
    fn prescribed_dimension() {
        let r = ring(3, &["x", "y", "z"]);
        let line = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert_eq!(multiplicity_at_dim(&line, 3), Ok(0));
        assert_eq!(multiplicity_at_dim(&line, 1), Ok(1));
        assert!(matches!(multiplicity_at_dim(&line, 0), Err(Error::DimensionTooSmall { .. })));
        let r3 = ring(3, &["x", "y", "z"]);
        let p1 = Ideal::parse(&r3, &["y-z", "x-z"]).unwrap();
        assert_eq!(multiplicity_at_dim(&p1, 2), Ok(0));
    }

    #[test]
    fn artinian_multiplicity_is_length() {
        let r = ring(2, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        let d = hilbert_data(&i).unwrap();
        assert_eq!(d.dim, 0);
        assert_eq!(d.multiplicity, 6);
        assert_eq!(d.hf_poly_from, 4);
    }

    #[test]
    fn series_agrees_with_polynomial_past_threshold() {
        let r = ring(2, &["x", "y", "z", "w"]);
        let i = Ideal::parse(&r, &["x*y", "z^2*w", "x*z*w"]).unwrap();
        let d = hilbert_data(&i).unwrap();
        for t in 0..d.hf_poly_from + 5 {
            assert_eq!(hilbert_function(&i, t as u32) as i64, d.hf(t));
            if t >= d.hf_poly_from {
                assert_eq!(d.hf(t), d.hilbert_poly(t as i64));
            }
        }
    }
}
