//! Bigraded exterior algebra over a complex coframe
//! `{phi^1..phi^n, phib^1..phib^n}`.
//!
//! Monomials are stored in canonical order: holomorphic factors first, then
//! antiholomorphic ones, each block increasing. Every constructor normalizes
//! to that order and carries the permutation sign.

mod syntax;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

pub use syntax::{parse_form, FormPrinter};

use crate::error::Result;
use crate::scalars::{Coefficient, GaussianRational, SymbolContext};

/// Largest supported half-dimension (monomials are bitmasks).
pub const MAX_N: usize = 16;

/// A single coframe generator `phi^k` or `phib^k` (0-based `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub barred: bool,
}

impl Generator {
    pub fn hol(index: usize) -> Self {
        Self {
            index,
            barred: false,
        }
    }

    pub fn anti(index: usize) -> Self {
        Self {
            index,
            barred: true,
        }
    }
}

/// Canonical monomial `phi^{I} ^ phib^{J}` as a pair of bitmasks
/// (bit `k` set means index `k+1` is present).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex {
    hol: u32,
    anti: u32,
}

struct Bits(u32);

impl Iterator for Bits {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }
}

/// Number of pairs `(x, y)` with `x` in `a`, `y` in `b` and `x > y`.
fn inversions(a: u32, b: u32) -> u32 {
    Bits(b).map(|y| (a & !((2u32 << y) - 1)).count_ones()).sum()
}

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex { hol: 0, anti: 0 };

    pub fn from_masks(hol: u32, anti: u32) -> Self {
        Self { hol, anti }
    }

    /// From strictly increasing 1-based index lists.
    ///
    /// Panics on unsorted, repeated, zero or out-of-range indices.
    pub fn from_indices(hol: &[usize], anti: &[usize]) -> Self {
        fn mask(ix: &[usize]) -> u32 {
            assert!(ix.windows(2).all(|w| w[0] < w[1]), "indices must increase");
            ix.iter().fold(0, |m, &k| {
                assert!((1..=MAX_N).contains(&k), "index {k} out of range");
                m | (1 << (k - 1))
            })
        }
        Self::from_masks(mask(hol), mask(anti))
    }

    /// The top-degree monomial `phi^{1..n} ^ phib^{1..n}`.
    pub fn top(n: usize) -> Self {
        let m = (1u32 << n) - 1;
        Self::from_masks(m, m)
    }

    pub fn hol_mask(&self) -> u32 {
        self.hol
    }

    pub fn anti_mask(&self) -> u32 {
        self.anti
    }

    /// 0-based holomorphic indices, increasing.
    pub fn hol(&self) -> impl Iterator<Item = usize> + Clone {
        Bits(self.hol).collect::<Vec<_>>().into_iter()
    }

    /// 0-based antiholomorphic indices, increasing.
    pub fn anti(&self) -> impl Iterator<Item = usize> + Clone {
        Bits(self.anti).collect::<Vec<_>>().into_iter()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (
            self.hol.count_ones() as usize,
            self.anti.count_ones() as usize,
        )
    }

    pub fn degree(&self) -> usize {
        let (p, q) = self.bidegree();
        p + q
    }

    /// Generators in canonical order.
    pub fn generators(&self) -> Vec<Generator> {
        self.hol()
            .map(Generator::hol)
            .chain(self.anti().map(Generator::anti))
            .collect()
    }

    /// `self ^ other` as `(sign, monomial)`, or `None` when an index repeats.
    pub fn wedge(&self, other: &MultiIndex) -> Option<(bool, MultiIndex)> {
        if self.hol & other.hol != 0 || self.anti & other.anti != 0 {
            return None;
        }
        let swaps = self.anti.count_ones() * other.hol.count_ones()
            + inversions(self.hol, other.hol)
            + inversions(self.anti, other.anti);
        Some((
            swaps % 2 == 1,
            MultiIndex::from_masks(self.hol | other.hol, self.anti | other.anti),
        ))
    }

    /// Conjugate monomial: `conj(phi^{I,J}) = (-1)^{pq} phi^{J,I}`.
    pub fn conj(&self) -> (bool, MultiIndex) {
        let (p, q) = self.bidegree();
        (
            (p * q) % 2 == 1,
            MultiIndex::from_masks(self.anti, self.hol),
        )
    }

    fn max_index(&self) -> usize {
        32 - (self.hol | self.anti).leading_zeros() as usize
    }
}

impl Ord for MultiIndex {
    /// Bidegree first, then lexicographic on the holomorphic and then the
    /// antiholomorphic index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bidegree()
            .cmp(&other.bidegree())
            .then_with(|| Bits(self.hol).cmp(Bits(other.hol)))
            .then_with(|| Bits(self.anti).cmp(Bits(other.anti)))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: &mut dyn Iterator<Item = usize>| {
            it.map(|k| (k + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "phi[{};{}]",
            join(&mut self.hol()),
            join(&mut self.anti())
        )
    }
}

/// All `(p,q)` monomials over `n` generators, in canonical order.
pub fn basis(n: usize, p: usize, q: usize) -> Vec<MultiIndex> {
    let subsets = |k: usize| -> Vec<u32> {
        (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    };
    let mut out: Vec<MultiIndex> = subsets(p)
        .into_iter()
        .flat_map(|h| {
            subsets(q)
                .into_iter()
                .map(move |a| MultiIndex::from_masks(h, a))
        })
        .collect();
    out.sort();
    out
}

/// Every monomial over `n` generators (`4^n` of them), in canonical order.
pub fn all_monomials(n: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(1 << (2 * n));
    for p in 0..=n {
        for q in 0..=n {
            out.extend(basis(n, p, q));
        }
    }
    out.sort();
    out
}

/// All monomials of total degree `k`.
pub fn degree_basis(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for p in 0..=k.min(n) {
        if k - p <= n {
            out.extend(basis(n, p, k - p));
        }
    }
    out.sort();
    out
}

/// A finite combination of canonical monomials with [`Coefficient`] values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    n: usize,
    terms: BTreeMap<MultiIndex, Coefficient>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n), "half-dimension {n} out of range");
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Coefficient::one())
    }

    /// A 0-form.
    pub fn constant(n: usize, c: Coefficient) -> Self {
        Self::from_term(n, MultiIndex::EMPTY, c)
    }

    pub fn from_term(n: usize, m: MultiIndex, c: Coefficient) -> Self {
        let mut f = Self::zero(n);
        assert!(m.max_index() <= n, "monomial {m} exceeds n = {n}");
        f.add_term(m, &c);
        f
    }

    pub fn basis_element(n: usize, m: MultiIndex) -> Self {
        Self::from_term(n, m, Coefficient::one())
    }

    /// `phi^{hol} ^ phib^{anti}` from 1-based indices in any order; the
    /// permutation sign is absorbed and repeated indices give zero.
    pub fn monomial(n: usize, hol: &[usize], anti: &[usize]) -> Self {
        let factors: Vec<Generator> = hol
            .iter()
            .map(|&k| Generator::hol(k - 1))
            .chain(anti.iter().map(|&k| Generator::anti(k - 1)))
            .collect();
        Self::product(n, &factors)
    }

    /// Wedge product of the given generators, in the given order.
    pub fn product(n: usize, factors: &[Generator]) -> Self {
        let mut acc = Some((false, MultiIndex::EMPTY));
        for g in factors {
            assert!(
                g.index < n,
                "generator index {} exceeds n = {n}",
                g.index + 1
            );
            let single = if g.barred {
                MultiIndex::from_masks(0, 1 << g.index)
            } else {
                MultiIndex::from_masks(1 << g.index, 0)
            };
            acc = acc.and_then(|(s, m)| m.wedge(&single).map(|(t, r)| (s ^ t, r)));
        }
        match acc {
            None => Self::zero(n),
            Some((neg, m)) => {
                let c = if neg {
                    -&Coefficient::one()
                } else {
                    Coefficient::one()
                };
                Self::from_term(n, m, c)
            }
        }
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        Self::product(n, &[g])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Coefficient)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &MultiIndex) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no function symbol occurs in any coefficient.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Coefficient::is_constant)
    }

    pub fn add_term(&mut self, m: MultiIndex, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Form) {
        assert_eq!(self.n, other.n, "coframe mismatch");
        for (m, c) in &other.terms {
            self.add_term(*m, c);
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Form {
        let mut out = Form::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(*m, &v.multiply(c));
        }
        out
    }

    pub fn scale_scalar(&self, c: &GaussianRational) -> Form {
        let mut out = Form::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(*m, &v.scale(c));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "coframe mismatch");
        let mut out = Form::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = ma.wedge(mb) {
                    let c = ca.multiply(cb);
                    out.add_term(m, &if neg { -&c } else { c });
                }
            }
        }
        out
    }

    /// `self ^ self ^ ... ^ self` (`k` factors); `k = 0` gives 1.
    pub fn power(&self, k: usize) -> Form {
        (0..k).fold(Form::one(self.n), |acc, _| acc.wedge(self))
    }

    /// Complex conjugation; swaps bidegrees `(p,q) <-> (q,p)`.
    pub fn conjugate(&self, ctx: &SymbolContext) -> Result<Form> {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let (neg, cm) = m.conj();
            let cc = c.conjugate(ctx)?;
            out.add_term(cm, &if neg { -&cc } else { cc });
        }
        Ok(out)
    }

    /// The `(p,q)`-homogeneous part.
    pub fn bidegree_project(&self, p: usize, q: usize) -> Form {
        self.filter(|m| m.bidegree() == (p, q))
    }

    /// The homogeneous part of total degree `k`.
    pub fn degree_project(&self, k: usize) -> Form {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter(&self, keep: impl Fn(&MultiIndex) -> bool) -> Form {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Bidegrees with a nonzero component.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(MultiIndex::bidegree).collect()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(MultiIndex::degree).collect()
    }

    /// `Some((p,q))` when the form is nonzero and `(p,q)`-homogeneous.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let b = self.bidegrees();
        if b.len() == 1 {
            b.into_iter().next()
        } else {
            None
        }
    }

    pub fn degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    /// Applies a linear map defined on homogeneous parts of each bidegree.
    pub fn map_bidegrees(
        &self,
        mut f: impl FnMut(&Form, (usize, usize)) -> Result<Form>,
    ) -> Result<Form> {
        let mut out = Form::zero(self.n);
        for (p, q) in self.bidegrees() {
            out.add_assign(&f(&self.bidegree_project(p, q), (p, q))?);
        }
        Ok(out)
    }

    /// Constant coefficients as a sparse vector, or `None` if a symbol occurs.
    pub fn to_constant_vector(&self) -> Option<BTreeMap<MultiIndex, GaussianRational>> {
        self.terms
            .iter()
            .map(|(m, c)| c.as_constant().map(|v| (*m, v)))
            .collect()
    }

    pub fn from_constant_vector(n: usize, v: &BTreeMap<MultiIndex, GaussianRational>) -> Form {
        let mut out = Form::zero(n);
        for (m, c) in v {
            out.add_term(*m, &Coefficient::constant(c.clone()));
        }
        out
    }

    /// Sum over `(coefficient, monomial)` pairs with scalar weights.
    pub fn linear_combination<'a>(
        n: usize,
        items: impl IntoIterator<Item = (&'a GaussianRational, &'a Form)>,
    ) -> Form {
        let mut out = Form::zero(n);
        for (c, f) in items {
            if !c.is_zero() {
                out.add_assign(&f.scale_scalar(c));
            }
        }
        out
    }

    /// Scales each `(p,q)` component by `weight(p, q)`.
    pub fn scale_by_bidegree(&self, weight: impl Fn(usize, usize) -> GaussianRational) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in &self.terms {
            let (p, q) = m.bidegree();
            out.add_term(*m, &c.scale(&weight(p, q)));
        }
        out
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        let mut out = self.clone();
        out.add_assign(&-o);
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, o: Form) -> Form {
        &self + &o
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, o: Form) -> Form {
        &self - &o
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale_scalar(&-GaussianRational::one())
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", FormPrinter::ascii().print(self))
    }
}

impl serde::Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&FormPrinter::ascii().print(self))
    }
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}
