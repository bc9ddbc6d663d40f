//! Buchberger's algorithm and the ideal operations built on it.
//!
//! Intersections use one auxiliary variable `w` placed in front of the ring
//! variables: `I ∩ J = (w·I + (1-w)·J) ∩ S`, read off from a Gröbner basis in
//! the block order eliminating `w`. Colon ideals are intersections divided
//! by the divisor, and `(I : (f_1..f_k)) = ∩ (I : f_i)`.

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::poly::{add_scaled, Monomial, MonomialOrder, Polynomial, Ring, Term, MAX_VARS};

/// Pair-selection strategy for Buchberger's algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairSelection {
    /// Smallest lcm in the term order first.
    #[default]
    Normal,
    /// Pairs in creation order.
    Fifo,
}

/// Reduced, monic Gröbner basis; elements sorted ascending by leading
/// monomial. Each element's terms are sorted descending in `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Field,
    order: MonomialOrder,
    elements: Vec<Vec<Term>>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g[0].mono.degree() == 0)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g[0].mono).collect()
    }

    pub fn elements(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|g| Polynomial::from_ordered(self.field, g.clone(), &self.order)).collect()
    }

    /// Fully reduced remainder of `f`; no term is divisible by a leading
    /// monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.field(), self.field, "field mismatch");
        let r = reduce_full(f.terms_in(&self.order), &self.elements, self.field, &self.order);
        Polynomial::from_ordered(self.field, r, &self.order)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Gröbner basis of the ideal generated by this basis and `extra`,
    /// reusing the fact that pairs inside the current basis already reduce
    /// to zero.
    pub fn extend(&self, extra: &[Polynomial]) -> GroebnerBasis {
        let mut input = self.elements.clone();
        let known = input.len();
        input.extend(extra.iter().filter(|f| !f.is_zero()).map(|f| f.terms_in(&self.order)));
        let elements = buchberger_core(self.field, self.order, input, known, PairSelection::Normal);
        GroebnerBasis { field: self.field, order: self.order, elements }
    }
}

/// Reduced Gröbner basis of arbitrary (not necessarily homogeneous)
/// polynomials.
pub fn groebner_basis(
    field: Field,
    gens: &[Polynomial],
    order: MonomialOrder,
    selection: PairSelection,
) -> GroebnerBasis {
    let input: Vec<Vec<Term>> = gens.iter().filter(|f| !f.is_zero()).map(|f| f.terms_in(&order)).collect();
    let elements = buchberger_core(field, order, input, 0, selection);
    GroebnerBasis { field, order, elements }
}

/// Reduced Gröbner basis of an ideal in the given order.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    if order == MonomialOrder::Grevlex {
        return (**ideal.groebner()).clone();
    }
    groebner_basis(ideal.ring.field(), &ideal.gens, order, PairSelection::Normal)
}

fn make_monic(mut p: Vec<Term>, field: Field) -> Vec<Term> {
    if let Some(lead) = p.first() {
        if lead.coef != 1 {
            let inv = field.inv(lead.coef);
            for t in &mut p {
                t.coef = field.mul(t.coef, inv);
            }
        }
    }
    p
}

/// Full reduction of `p` by monic `basis` (each sorted descending).
fn reduce_full(mut rem: Vec<Term>, basis: &[Vec<Term>], field: Field, order: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < rem.len() {
        let t = rem[start];
        match basis.iter().find(|g| g[0].mono.divides(&t.mono)) {
            Some(g) => {
                let q = g[0].mono.quotient_of(&t.mono);
                rem = add_scaled(&rem[start..], g, field.neg(t.coef), &q, field, order);
                start = 0;
            }
            None => {
                out.push(t);
                start += 1;
            }
        }
    }
    out
}

fn s_polynomial(f: &[Term], g: &[Term], field: Field, order: &MonomialOrder) -> Vec<Term> {
    let lcm = f[0].mono.lcm(&g[0].mono);
    let mf = f[0].mono.quotient_of(&lcm);
    let mg = g[0].mono.quotient_of(&lcm);
    // both monic, leading terms cancel
    let a = add_scaled(&[], f, 1, &mf, field, order);
    add_scaled(&a, g, field.neg(1), &mg, field, order)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger with the coprime and chain criteria. `known` leading
/// entries of `input` are assumed to already form a Gröbner basis.
fn buchberger_core(
    field: Field,
    order: MonomialOrder,
    input: Vec<Vec<Term>>,
    known: usize,
    selection: PairSelection,
) -> Vec<Vec<Term>> {
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut pending: Vec<Vec<bool>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add_element = |basis: &mut Vec<Vec<Term>>,
                       pending: &mut Vec<Vec<bool>>,
                       pairs: &mut Vec<Pair>,
                       g: Vec<Term>,
                       with_pairs: bool| {
        let k = basis.len();
        for row in pending.iter_mut() {
            row.push(false);
        }
        pending.push(vec![false; k + 1]);
        if with_pairs {
            for i in 0..k {
                pairs.push(Pair { i, j: k, lcm: basis[i][0].mono.lcm(&g[0].mono) });
                pending[i][k] = true;
                pending[k][i] = true;
            }
        }
        basis.push(g);
    };

    for (idx, p) in input.into_iter().enumerate() {
        if idx < known {
            add_element(&mut basis, &mut pending, &mut pairs, p, false);
            continue;
        }
        let r = reduce_full(p, &basis, field, &order);
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r, field);
        if r[0].mono.degree() == 0 {
            return vec![vec![Term { mono: Monomial::ONE, coef: 1 }]];
        }
        add_element(&mut basis, &mut pending, &mut pairs, r, true);
    }

    while !pairs.is_empty() {
        let pos = match selection {
            PairSelection::Fifo => 0,
            PairSelection::Normal => {
                let mut best = 0;
                for (k, p) in pairs.iter().enumerate().skip(1) {
                    let b = &pairs[best];
                    let ord = order.compare(&p.lcm, &b.lcm).then_with(|| (p.j, p.i).cmp(&(b.j, b.i)));
                    if ord == Ordering::Less {
                        best = k;
                    }
                }
                best
            }
        };
        let Pair { i, j, lcm } = pairs.remove(pos);
        pending[i][j] = false;
        pending[j][i] = false;

        if basis[i][0].mono.is_coprime(&basis[j][0].mono) {
            continue;
        }
        let chain = (0..basis.len())
            .any(|k| k != i && k != j && !pending[i][k] && !pending[j][k] && basis[k][0].mono.divides(&lcm));
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], field, &order);
        let r = reduce_full(s, &basis, field, &order);
        if r.is_empty() {
            continue;
        }
        let r = make_monic(r, field);
        if r[0].mono.degree() == 0 {
            return vec![vec![Term { mono: Monomial::ONE, coef: 1 }]];
        }
        add_element(&mut basis, &mut pending, &mut pairs, r, true);
    }

    // minimize
    let leads: Vec<Monomial> = basis.iter().map(|g| g[0].mono).collect();
    let mut keep = Vec::new();
    for (a, la) in leads.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(b, lb)| b != a && lb.divides(la) && (lb != la || b < a));
        if !redundant {
            keep.push(basis[a].clone());
        }
    }
    // interreduce
    let mut reduced: Vec<Vec<Term>> = Vec::with_capacity(keep.len());
    for a in 0..keep.len() {
        let others: Vec<Vec<Term>> = keep.iter().enumerate().filter(|&(b, _)| b != a).map(|(_, g)| g.clone()).collect();
        let head = keep[a][0];
        let tail = reduce_full(keep[a][1..].to_vec(), &others, field, &order);
        let mut g = Vec::with_capacity(tail.len() + 1);
        g.push(head);
        g.extend(tail);
        reduced.push(g);
    }
    reduced.sort_by(|a, b| order.compare(&a[0].mono, &b[0].mono));
    reduced
}

/// A homogeneous ideal of `S = F_p[x_1..x_n]` with a lazily cached grevlex
/// Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl Ideal {
    /// Drops zero generators; rejects non-homogeneous ones.
    pub fn new(ring: Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.field() != ring.field() {
                return Err(Error::RingMismatch("generator over a different field".into()));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(ring.format(&g)));
            }
            kept.push(g);
        }
        Ok(Self { ring, gens: kept, gb: OnceLock::new() })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, gens: &[S]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.parse(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(ring.clone(), polys)
    }

    pub fn zero(ring: Arc<Ring>) -> Self {
        Self { ring, gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: Arc<Ring>) -> Self {
        let one = Polynomial::constant(ring.field(), 1);
        Self { ring, gens: vec![one], gb: OnceLock::new() }
    }

    /// Ideal generated by the monomials.
    pub fn monomial(ring: Arc<Ring>, monos: &[Monomial]) -> Self {
        let f = ring.field();
        let gens = monos.iter().map(|m| Polynomial::monomial(f, *m, 1)).collect();
        Self { ring, gens, gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The cached reduced grevlex basis.
    pub fn groebner(&self) -> &Arc<GroebnerBasis> {
        self.gb.get_or_init(|| {
            Arc::new(groebner_basis(self.ring.field(), &self.gens, MonomialOrder::Grevlex, PairSelection::Normal))
        })
    }

    /// Ideal whose generators are its own reduced grevlex basis.
    pub fn with_basis_generators(&self) -> Ideal {
        let gb = self.groebner().clone();
        let gens = gb.elements();
        let cell = OnceLock::new();
        let _ = cell.set(gb);
        Ideal { ring: self.ring.clone(), gens, gb: cell }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner().normal_form(f)
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.groebner().reduces_to_zero(f)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> bool {
        self.check_ring(other);
        other.gens.iter().all(|g| self.contains_poly(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains(other) && other.contains(self)
    }

    /// `self + (extra)`; the basis is extended incrementally.
    pub fn add_polys(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        let out = Ideal::new(self.ring.clone(), gens)?;
        let gb = self.groebner().extend(extra);
        let _ = out.gb.set(Arc::new(gb));
        Ok(out)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.check_ring(other);
        self.add_polys(&other.gens).expect("sum of homogeneous ideals")
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        self.check_ring(other);
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ideal::new(self.ring.clone(), gens).expect("product of homogeneous ideals")
    }

    fn check_ring(&self, other: &Ideal) {
        assert!(Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring, "ideals live in different rings");
    }
}

/// `I ∩ J` by elimination of an auxiliary variable.
pub fn intersect(i: &Ideal, j: &Ideal) -> Ideal {
    i.check_ring(j);
    let ring = i.ring.clone();
    if i.is_zero() || j.is_zero() {
        return Ideal::zero(ring);
    }
    assert!(ring.nvars() < MAX_VARS, "no room for the auxiliary variable");
    let field = ring.field();
    let w = Polynomial::monomial(field, Monomial::var(0), 1);
    let one_minus_w = &Polynomial::constant(field, 1) - &w;
    let mut gens = Vec::with_capacity(i.gens.len() + j.gens.len());
    gens.extend(i.gens.iter().map(|g| &w * &g.shift_up()));
    gens.extend(j.gens.iter().map(|h| &one_minus_w * &h.shift_up()));
    let gb = groebner_basis(field, &gens, MonomialOrder::Elimination(1), PairSelection::Normal);
    let kept: Vec<Polynomial> = gb
        .elements
        .iter()
        .filter(|g| g[0].mono.exp(0) == 0)
        .map(|g| Polynomial::from_ordered(field, g.clone(), &gb.order).shift_down())
        .collect();
    Ideal::new(ring, kept).expect("intersection of homogeneous ideals is homogeneous")
}

/// Intersection of a nonempty family.
pub fn intersect_all<'a>(ideals: impl IntoIterator<Item = &'a Ideal>) -> Option<Ideal> {
    let mut it = ideals.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, j| intersect(&acc, j)))
}

/// `(I : f)`.
pub fn colon_poly(i: &Ideal, f: &Polynomial) -> Ideal {
    let ring = i.ring.clone();
    if f.is_zero() || i.contains_poly(f) {
        return Ideal::unit(ring);
    }
    if i.is_zero() {
        return Ideal::zero(ring);
    }
    let principal = Ideal::new(ring.clone(), vec![f.clone()]).expect("homogeneous divisor");
    let meet = intersect(i, &principal);
    let gens = meet.gens.iter().map(|g| g.exact_div(f).expect("generator of I ∩ (f) is divisible by f")).collect();
    Ideal::new(ring, gens).expect("colon of homogeneous ideals")
}

/// `(I : (F)) = ∩_f (I : f)`.
pub fn colon(i: &Ideal, fs: &[Polynomial]) -> Ideal {
    assert!(!fs.is_empty(), "colon by an empty family");
    let parts: Vec<Ideal> = fs.iter().map(|f| colon_poly(i, f)).collect();
    intersect_all(parts.iter()).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, names: &[&str]) -> Arc<Ring> {
        Ring::new(Field::new(p).unwrap(), names.iter().copied()).unwrap()
    }

    #[test]
    fn linear_generator_over_f2() {
        let r = ring(2, &["x", "y"]);
        let i = Ideal::parse(&r, &["x-y"]).unwrap();
        let gb = i.groebner();
        assert_eq!(gb.elements(), vec![r.parse("x+y").unwrap()]);
    }

    #[test]
    fn monomial_ideal_is_own_basis() {
        let r = ring(3, &["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x*y", "x*z"]).unwrap();
        let mut got: Vec<String> = i.groebner().elements().iter().map(|f| r.format(f)).collect();
        got.sort();
        assert_eq!(got, vec!["x*y", "x*z"]);
    }

    #[test]
    fn normal_form_lex_single_step() {
        let r = ring(5, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^2-y"]);
        // not homogeneous: use the raw basis API
        assert!(i.is_err());
        let g = groebner_basis(r.field(), &[r.parse("x^2-y").unwrap()], MonomialOrder::Lex, PairSelection::Normal);
        assert_eq!(g.normal_form(&r.parse("x^2").unwrap()), r.parse("y").unwrap());
    }

    #[test]
    fn members_reduce_to_zero() {
        let r = ring(2, &["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x^3+y^2*z", "x*y+z^2"]).unwrap();
        for g in i.gens() {
            assert!(i.contains_poly(g));
        }
        let f = &(&r.parse("x*z").unwrap() * &i.gens()[0]) + &(&r.parse("y^2").unwrap() * &i.gens()[1]);
        assert!(i.contains_poly(&f));
        assert!(!i.contains_poly(&r.parse("x^3").unwrap()));
    }

    #[test]
    fn intersection_examples() {
        let r = ring(3, &["x", "y"]);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(intersect(&x, &y).equals(&xy));
        assert!(intersect(&xy, &xy).equals(&xy));
    }

    #[test]
    fn colon_examples() {
        let r = ring(3, &["x", "y"]);
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        let c = colon(&xy, &[r.parse("x").unwrap()]);
        assert!(c.equals(&Ideal::parse(&r, &["y"]).unwrap()));
        let zero = Ideal::zero(r.clone());
        let c0 = colon(&zero, &[r.parse("x+y").unwrap()]);
        assert!(c0.is_zero());
    }

    #[test]
    fn containment_and_equality() {
        let r = ring(2, &["x", "y"]);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let x2 = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(x.contains(&x2));
        assert!(!x2.contains(&x));
        assert!(x.equals(&x));
    }

    #[test]
    fn unit_detection() {
        let r = ring(2, &["x", "y"]);
        assert!(Ideal::unit(r.clone()).is_unit());
        assert!(!Ideal::parse(&r, &["x"]).unwrap().is_unit());
    }
}
