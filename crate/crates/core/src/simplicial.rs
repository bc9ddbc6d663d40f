//! Simplicial complexes and their Stanley–Reisner rings.
//!
//! Faces are bitmasks over `0..n`; input and output use 1-based vertex
//! labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{Field, FieldMatrix};
use crate::poly::{Monomial, Polynomial, Ring, MAX_RING_VARS};
use crate::schemes::{build_profile, RingProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u32>,
    is_face: Vec<bool>,
}

impl SimplicialComplex {
    /// `facets` use vertex labels `1..=n`.
    pub fn new(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_RING_VARS {
            return Err(Error::InvalidComplex(format!("{n} vertices; supported range is 1..={MAX_RING_VARS}")));
        }
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for (k, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(Error::InvalidComplex(format!("facet #{} is empty", k + 1)));
            }
            let mut mask = 0u32;
            for &v in f {
                if v == 0 || v > n {
                    return Err(Error::InvalidComplex(format!("vertex {v} outside 1..={n}")));
                }
                if mask >> (v - 1) & 1 == 1 {
                    return Err(Error::InvalidComplex(format!("vertex {v} repeated in facet #{}", k + 1)));
                }
                mask |= 1 << (v - 1);
            }
            masks.push(mask);
        }
        for (a, &fa) in masks.iter().enumerate() {
            for (b, &fb) in masks.iter().enumerate() {
                if a != b && fa & fb == fa {
                    return Err(Error::InvalidComplex(format!("facet #{} is contained in facet #{}", a + 1, b + 1)));
                }
            }
        }
        let covered = masks.iter().fold(0, |acc, &m| acc | m);
        if covered != (1u32 << n) - 1 {
            let missing = (0..n).find(|&v| covered >> v & 1 == 0).unwrap() + 1;
            return Err(Error::InvalidComplex(format!("vertex {missing} lies in no facet")));
        }
        let mut is_face = vec![false; 1 << n];
        for &f in &masks {
            let mut sub = f;
            loop {
                is_face[sub as usize] = true;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        Ok(Self { n, facets: masks, is_face })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn facet_masks(&self) -> &[u32] {
        &self.facets
    }

    /// Facets as sorted 1-based vertex lists.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| mask_vertices(m)).collect()
    }

    pub fn is_face(&self, mask: u32) -> bool {
        self.is_face[mask as usize]
    }

    /// Krull dimension of the Stanley–Reisner ring: the largest facet size.
    pub fn ring_dim(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    /// Number of facets of maximal size, which is `e(R)`.
    pub fn top_facet_count(&self) -> usize {
        let d = self.ring_dim();
        self.facets.iter().filter(|f| f.count_ones() as usize == d).count()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.ring_dim();
        self.facets.iter().all(|f| f.count_ones() as usize == d)
    }

    /// Minimal non-faces, ascending as masks.
    pub fn minimal_nonfaces(&self) -> Vec<u32> {
        (1..1u32 << self.n).filter(|&m| !self.is_face(m) && bits(m).all(|v| self.is_face(m & !(1 << v)))).collect()
    }

    /// `f_{-1}, f_0, ..., f_{dim}`: number of faces with `i + 1` vertices.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.ring_dim() + 1];
        for m in 0..1u32 << self.n {
            if self.is_face(m) {
                f[m.count_ones() as usize] += 1;
            }
        }
        f
    }

    /// Hilbert function of the Stanley–Reisner ring from the f-vector:
    /// `h(t) = Σ_i f_{i-1} C(t-1, i-1)` for `t ≥ 1`.
    pub fn hilbert_function_from_faces(&self, t: usize) -> u64 {
        if t == 0 {
            return 1;
        }
        self.f_vector().iter().enumerate().skip(1).map(|(i, &f)| f * choose(t as u64 - 1, i as u64 - 1)).sum()
    }

    /// The polynomial ring `F_p[x1..xn]` of this complex.
    pub fn ring(&self, field: Field) -> Arc<Ring> {
        Ring::numbered(field, self.n).expect("vertex count validated")
    }

    pub fn stanley_reisner_ideal(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        self.check_ring(ring)?;
        let monos: Vec<Monomial> = self.minimal_nonfaces().into_iter().map(|m| self.squarefree(m)).collect();
        Ok(Ideal::monomial(ring.clone(), &monos))
    }

    /// One prime `(x_i : i ∉ F)` per facet, in facet order.
    pub fn minimal_primes(&self, ring: &Arc<Ring>) -> Result<Vec<Ideal>> {
        self.check_ring(ring)?;
        let field = ring.field();
        Ok(self
            .facets
            .iter()
            .map(|&f| {
                let gens = (0..self.n)
                    .filter(|&v| f >> v & 1 == 0)
                    .map(|v| Polynomial::monomial(field, Monomial::var(v), 1))
                    .collect();
                Ideal::new(ring.clone(), gens).expect("linear monomials")
            })
            .collect())
    }

    /// Certified profile of the Stanley–Reisner ring over `field`.
    pub fn profile(&self, field: Field) -> Result<RingProfile> {
        let ring = self.ring(field);
        build_profile(self.stanley_reisner_ideal(&ring)?, Some(self.minimal_primes(&ring)?))
    }

    /// Connectivity of the facet graph (facets adjacent when they share a
    /// vertex).
    pub fn proj_connected(&self) -> bool {
        let k = self.facets.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in 0..k {
            for b in a + 1..k {
                if self.facets[a] & self.facets[b] != 0 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..k).all(|x| find(&mut parent, x) == root)
    }

    /// `dim H̃_k(Δ; F_p)` for `k ≥ -1`.
    pub fn reduced_homology(&self, k: i64, field: Field) -> usize {
        let all = (1u32 << self.n) - 1;
        let h = self.restricted_homology(all, field);
        usize::try_from(k + 1).ok().and_then(|i| h.get(i).copied()).unwrap_or(0)
    }

    /// Reduced homology of `Δ|_W`, indexed by `k + 1` for `k = -1, 0, ...`.
    fn restricted_homology(&self, w: u32, field: Field) -> Vec<usize> {
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); self.n + 2];
        let mut sub = w;
        loop {
            if self.is_face(sub) {
                by_size[sub.count_ones() as usize].push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & w;
        }
        while by_size.len() > 1 && by_size.last().is_some_and(Vec::is_empty) {
            by_size.pop();
        }
        for faces in &mut by_size {
            faces.sort_unstable();
        }
        // ranks[s] = rank of the boundary from faces of size s to size s-1
        let mut ranks = vec![0usize; by_size.len() + 1];
        for s in 1..by_size.len() {
            ranks[s] = boundary_matrix(&by_size[s], &by_size[s - 1], field).rank();
        }
        (0..by_size.len()).map(|s| by_size[s].len() - ranks[s] - ranks[s + 1]).collect()
    }

    /// Graded Betti numbers of `S/I_Δ` by Hochster's formula.
    pub fn betti_table(&self, field: Field) -> BettiTable {
        let subsets: Vec<u32> = (0..1u32 << self.n).collect();
        let contributions: Vec<Vec<(usize, usize, u64)>> = subsets
            .par_iter()
            .map(|&w| {
                let j = w.count_ones() as usize;
                self.restricted_homology(w, field)
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, h)| h > 0)
                    // dim H̃_{j-i-1} with k + 1 = idx gives i = j - idx
                    .filter_map(|(idx, h)| j.checked_sub(idx).map(|i| (i, j, h as u64)))
                    .collect()
            })
            .collect();
        let mut entries = BTreeMap::new();
        for list in contributions {
            for (i, j, h) in list {
                *entries.entry((i, j)).or_insert(0) += h;
            }
        }
        BettiTable { entries }
    }

    pub fn regularity(&self, field: Field) -> usize {
        self.betti_table(field).regularity()
    }

    pub fn depth(&self, field: Field) -> usize {
        self.n - self.betti_table(field).projective_dimension()
    }

    /// Searches for a shelling order (non-pure sense) by backtracking,
    /// visiting at most `budget` partial orders.
    pub fn is_shellable(&self, budget: u64) -> Shellability {
        let k = self.facets.len();
        let mut order = Vec::with_capacity(k);
        let mut used = vec![false; k];
        let mut visited = 0u64;
        match self.shell_search(&mut order, &mut used, &mut visited, budget) {
            Some(true) => Shellability::Shellable { order: order.iter().map(|&i| i + 1).collect() },
            Some(false) => Shellability::NotShellable,
            None => Shellability::Inconclusive { visited },
        }
    }

    fn shell_search(&self, order: &mut Vec<usize>, used: &mut [bool], visited: &mut u64, budget: u64) -> Option<bool> {
        if order.len() == self.facets.len() {
            return Some(true);
        }
        let mut exhausted = false;
        for c in 0..self.facets.len() {
            if used[c] || !self.extends_shelling(order, c) {
                continue;
            }
            *visited += 1;
            if *visited > budget {
                return None;
            }
            order.push(c);
            used[c] = true;
            match self.shell_search(order, used, visited, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => exhausted = true,
            }
            order.pop();
            used[c] = false;
            if exhausted {
                return None;
            }
        }
        Some(false)
    }

    /// `F_j` may follow `prefix` iff every `F_i ∩ F_j` lies in some
    /// `F_k ∩ F_j` of codimension one in `F_j`.
    fn extends_shelling(&self, prefix: &[usize], c: usize) -> bool {
        let fj = self.facets[c];
        let size = fj.count_ones();
        let ridges: Vec<u32> =
            prefix.iter().map(|&k| self.facets[k] & fj).filter(|r| r.count_ones() + 1 == size).collect();
        prefix.iter().all(|&i| {
            let meet = self.facets[i] & fj;
            ridges.iter().any(|&r| meet & r == meet)
        })
    }

    fn squarefree(&self, mask: u32) -> Monomial {
        let mut e = vec![0u16; self.n];
        for v in bits(mask) {
            e[v] = 1;
        }
        Monomial::new(&e)
    }

    fn check_ring(&self, ring: &Ring) -> Result<()> {
        if ring.nvars() != self.n {
            return Err(Error::RingMismatch(format!(
                "complex has {} vertices, ring has {} variables",
                self.n,
                ring.nvars()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Shellability {
    Shellable { order: Vec<usize> },
    NotShellable,
    Inconclusive { visited: u64 },
}

impl Shellability {
    pub fn is_shellable(&self) -> bool {
        matches!(self, Shellability::Shellable { .. })
    }
}

/// Graded Betti numbers `β_{i,j}` of `S/I`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `Σ_i (-1)^i β_{i,j}`, the coefficient of `t^j` in the numerator of
    /// the Hilbert series over `(1-t)^n`.
    pub fn alternating_sum(&self, j: usize) -> i64 {
        self.entries
            .iter()
            .filter(|(&(_, jj), _)| jj == j)
            .map(|(&(i, _), &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (&(i, j), &b) in &self.entries {
            seq.serialize_element(&[i as u64, j as u64, b])?;
        }
        seq.end()
    }
}

fn boundary_matrix(faces: &[u32], lower: &[u32], field: Field) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(field, lower.len(), faces.len());
    for (c, &f) in faces.iter().enumerate() {
        for (pos, v) in bits(f).enumerate() {
            let row = lower.binary_search(&(f & !(1 << v))).expect("faces are closed under removal");
            let sign = if pos % 2 == 0 { 1 } else { field.neg(1) };
            m.set(row, c, sign);
        }
    }
    m
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&v| mask >> v & 1 == 1)
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    bits(mask).map(|v| v + 1).collect()
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{hilbert_data, hilbert_function};

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    fn two_edges() -> SimplicialComplex {
        SimplicialComplex::new(4, &[vec![1, 2], vec![3, 4]]).unwrap()
    }

    fn simplex() -> SimplicialComplex {
        SimplicialComplex::new(3, &[vec![1, 2, 3]]).unwrap()
    }

    /// Minimal non-faces by checking every subset against every facet
    /// directly.
    fn nonfaces_oracle(n: usize, facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let face = |s: &[usize]| facets.iter().any(|f| s.iter().all(|v| f.contains(v)));
        let mut out = Vec::new();
        for m in 1u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).map(|v| v + 1).collect();
            if face(&s) {
                continue;
            }
            let minimal = (0..s.len()).all(|drop| {
                let t: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                face(&t)
            });
            if minimal {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn validation() {
        assert!(SimplicialComplex::new(3, &[vec![1, 2], vec![1, 2, 3]]).is_err());
        assert!(SimplicialComplex::new(3, &[vec![1, 2]]).is_err());
        assert!(SimplicialComplex::new(2, &[vec![1, 3]]).is_err());
        assert!(SimplicialComplex::new(2, &[vec![1, 1, 2]]).is_err());
        assert!(SimplicialComplex::new(2, &[vec![1], vec![2]]).is_ok());
    }

    #[test]
    fn stanley_reisner_ideals() {
        let ring = Ring::numbered(f2(), 3).unwrap();
        let i = triangle().stanley_reisner_ideal(&ring).unwrap();
        assert!(i.equals(&Ideal::parse(&ring, &["x1*x2*x3"]).unwrap()));
        let primes = triangle().minimal_primes(&ring).unwrap();
        let expected = ["x3", "x2", "x1"];
        for (p, e) in primes.iter().zip(expected) {
            assert!(p.equals(&Ideal::parse(&ring, &[e]).unwrap()));
        }
        assert!(simplex().stanley_reisner_ideal(&ring).unwrap().is_zero());

        let ring4 = Ring::numbered(f2(), 4).unwrap();
        let i = two_edges().stanley_reisner_ideal(&ring4).unwrap();
        let oracle = nonfaces_oracle(4, &[vec![1, 2], vec![3, 4]]);
        let gens: Vec<String> =
            oracle.iter().map(|s| s.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join("*")).collect();
        assert_eq!(gens, vec!["x1*x3", "x1*x4", "x2*x3", "x2*x4"]);
        assert!(i.equals(&Ideal::parse(&ring4, &gens).unwrap()));
    }

    #[test]
    fn nonfaces_match_oracle() {
        let cases: Vec<(usize, Vec<Vec<usize>>)> = vec![
            (5, vec![vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![2, 5]]),
            (4, vec![vec![1, 2, 3], vec![2, 3, 4], vec![1, 4]]),
            (6, vec![vec![1, 2, 3], vec![4, 5, 6], vec![3, 4]]),
        ];
        for (n, facets) in cases {
            let d = SimplicialComplex::new(n, &facets).unwrap();
            let got: Vec<Vec<usize>> = d.minimal_nonfaces().into_iter().map(mask_vertices).collect();
            let mut got = got;
            got.sort();
            assert_eq!(got, nonfaces_oracle(n, &facets));
        }
    }

    #[test]
    fn primes_certify() {
        for d in [triangle(), two_edges(), simplex()] {
            let prof = d.profile(f2()).unwrap();
            assert!(prof.reduced_certified, "{:?}", prof.warnings);
            assert_eq!(prof.dim(), d.ring_dim());
            assert_eq!(prof.multiplicity() as usize, d.top_facet_count());
        }
    }

    #[test]
    fn connectivity() {
        assert!(triangle().proj_connected());
        assert!(!two_edges().proj_connected());
        assert!(simplex().proj_connected());
    }

    #[test]
    fn homology() {
        let points = SimplicialComplex::new(2, &[vec![1], vec![2]]).unwrap();
        assert_eq!(points.reduced_homology(0, f2()), 1);
        assert_eq!(triangle().reduced_homology(1, f2()), 1);
        assert_eq!(triangle().reduced_homology(0, f2()), 0);
        for k in -1..3 {
            assert_eq!(simplex().reduced_homology(k, f2()), 0);
        }
        // the real projective plane has field-dependent homology
        let rp2 = SimplicialComplex::new(
            6,
            &[
                vec![1, 2, 3],
                vec![1, 3, 4],
                vec![1, 4, 5],
                vec![1, 5, 6],
                vec![1, 2, 6],
                vec![2, 3, 5],
                vec![3, 4, 6],
                vec![2, 4, 5],
                vec![2, 4, 6],
                vec![3, 5, 6],
            ],
        )
        .unwrap();
        let f3 = Field::new(3).unwrap();
        assert_eq!(rp2.reduced_homology(2, f3), 0);
        assert_eq!(rp2.reduced_homology(1, f3), 0);
        assert_eq!(rp2.reduced_homology(2, f2()), 1);
        assert_eq!(rp2.reduced_homology(1, f2()), 1);
    }

    #[test]
    fn betti_examples() {
        let t = triangle();
        assert_eq!(t.regularity(f2()), 2);
        assert_eq!(t.depth(f2()), 2);
        assert_eq!(t.betti_table(f2()).get(0, 0), 1);
        assert_eq!(t.betti_table(f2()).get(1, 3), 1);

        // direct Hochster sums over all 16 subsets for the two edges
        let e = two_edges();
        let row = |i: i64| -> usize {
            let mut total = 0;
            for w in 0u32..16 {
                let k = w.count_ones() as i64 - i - 1;
                if k >= -1 {
                    total += e.restricted_homology(w, f2()).get((k + 1) as usize).copied().unwrap_or(0);
                }
            }
            total
        };
        assert_eq!(row(4), 0);
        assert!(row(3) > 0);
        assert_eq!(e.depth(f2()), 1);

        let s = simplex();
        assert_eq!(s.regularity(f2()), 0);
        assert_eq!(s.depth(f2()), 3);
    }

    #[test]
    fn hochster_consistency() {
        let complexes = [
            triangle(),
            two_edges(),
            simplex(),
            SimplicialComplex::new(5, &[vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![2, 5]]).unwrap(),
            SimplicialComplex::new(4, &[vec![1, 2, 3], vec![2, 3, 4], vec![1, 4]]).unwrap(),
        ];
        for d in complexes {
            let b = d.betti_table(f2());
            let first: u64 = (0..=d.vertices()).map(|j| b.get(1, j)).sum();
            assert_eq!(first as usize, d.minimal_nonfaces().len());
            let ring = d.ring(f2());
            let i = d.stanley_reisner_ideal(&ring).unwrap();
            let data = hilbert_data(&i).unwrap();
            // numerator over (1-t)^n from the reduced one
            let mut num = data.numerator.clone();
            for _ in data.dim..d.vertices() {
                let mut next = vec![0i64; num.len() + 1];
                for (k, &c) in num.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] -= c;
                }
                num = next;
            }
            for j in 0..=d.vertices() + 1 {
                assert_eq!(b.alternating_sum(j), num.get(j).copied().unwrap_or(0), "j = {j}");
            }
            for t in 0..=6u32 {
                assert_eq!(d.hilbert_function_from_faces(t as usize), hilbert_function(&i, t) as u64);
            }
        }
    }

    #[test]
    fn shellability() {
        match triangle().is_shellable(10_000) {
            Shellability::Shellable { order } => assert_eq!(order.len(), 3),
            other => panic!("{other:?}"),
        }
        // every order of the triangle is a shelling
        let t = triangle();
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert!((1..3).all(|j| t.extends_shelling(&perm[..j], perm[j])));
        }
        assert_eq!(two_edges().is_shellable(10_000), Shellability::NotShellable);
        assert!(simplex().is_shellable(10).is_shellable());
        let big = SimplicialComplex::new(6, &[vec![1, 2], vec![3, 4], vec![5, 6]]).unwrap();
        assert!(matches!(big.is_shellable(1), Shellability::Inconclusive { .. }));
    }

    #[test]
    fn connected_iff_depth_two() {
        let complexes = [
            triangle(),
            two_edges(),
            SimplicialComplex::new(5, &[vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![2, 5]]).unwrap(),
            SimplicialComplex::new(5, &[vec![1, 2, 3], vec![4, 5]]).unwrap(),
            SimplicialComplex::new(4, &[vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap(),
        ];
        for d in complexes {
            assert_eq!(d.depth(f2()) >= 2, d.proj_connected());
        }
    }
}
