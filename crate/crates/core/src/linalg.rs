//! Exact sparse linear algebra over `Q(i)`: reduced row echelon bases,
//! kernels, sums and intersections.
//!
//! Vectors are sparse maps from an ordered key to a nonzero scalar. A basis is
//! kept in reduced row echelon form with the pivot of each row at its smallest
//! key, so two bases of the same subspace are literally equal.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{Form, MultiIndex};
use crate::scalars::GaussianRational;

pub type Vector<K> = BTreeMap<K, GaussianRational>;

fn axpy<K: Ord + Clone>(y: &mut Vector<K>, a: &GaussianRational, x: &Vector<K>) {
    for (k, v) in x {
        let delta = a * v;
        match y.get_mut(k) {
            Some(slot) => {
                *slot += &delta;
                if slot.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !delta.is_zero() {
                    y.insert(k.clone(), delta);
                }
            }
        }
    }
}

fn scale<K: Ord + Clone>(x: &Vector<K>, a: &GaussianRational) -> Vector<K> {
    x.iter().map(|(k, v)| (k.clone(), a * v)).collect()
}

/// A subspace given by its unique reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<K: Ord> {
    rows: Vec<Vector<K>>,
}

impl<K: Ord> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a Vector<K>>) -> Self
    where
        K: 'a,
    {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rows(&self) -> &[Vector<K>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn pivot(row: &Vector<K>) -> &K {
        row.keys().next().expect("echelon rows are nonzero")
    }

    /// Residual of `v` after elimination against the pivots.
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        let mut r = v.clone();
        for row in &self.rows {
            if let Some(c) = r.get(Self::pivot(row)).cloned() {
                axpy(&mut r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector<K>) -> bool {
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.iter().next() else {
            return false;
        };
        let pivot = pivot.clone();
        let inv = lead.inv().expect("nonzero pivot");
        let r = scale(&r, &inv);
        for row in &mut self.rows {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c, &r);
            }
        }
        let at = self.rows.partition_point(|row| Self::pivot(row) < &pivot);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for v in &other.rows {
            e.insert(v.clone());
        }
        e
    }

    pub fn intersect(&self, other: &Self) -> Self {
        // sum a_i u_i lies in W iff sum a_i reduce_W(u_i) = 0
        let residuals: Vec<Vector<K>> = self.rows.iter().map(|u| other.reduce(u)).collect();
        let combos = kernel(&residuals);
        let mut out = Self::new();
        for combo in combos.rows() {
            let mut v = Vector::new();
            for (i, a) in combo {
                axpy(&mut v, a, &self.rows[*i]);
            }
            out.insert(v);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }
}

/// Kernel of the linear map sending the `j`-th domain basis vector to
/// `images[j]`, as an echelon basis over domain indices.
pub fn kernel<K: Ord + Clone>(images: &[Vector<K>]) -> Echelon<usize> {
    // rows in (not necessarily reduced) echelon form on the image side,
    // each carrying the domain combination that produced it
    let mut rows: BTreeMap<K, (Vector<K>, Vector<usize>)> = BTreeMap::new();
    let mut out = Echelon::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo: Vector<usize> = Vector::new();
        combo.insert(j, GaussianRational::one());
        loop {
            let Some(lead_key) = v.keys().next().cloned() else {
                out.insert(combo);
                break;
            };
            match rows.get(&lead_key) {
                Some((row, row_combo)) => {
                    let c = -v[&lead_key].clone();
                    axpy(&mut v, &c, row);
                    axpy(&mut combo, &c, row_combo);
                }
                None => {
                    let inv = v[&lead_key].inv().expect("nonzero lead");
                    rows.insert(lead_key, (scale(&v, &inv), scale(&combo, &inv)));
                    break;
                }
            }
        }
    }
    out
}

pub fn rank<K: Ord + Clone>(vs: &[Vector<K>]) -> usize {
    Echelon::from_vectors(vs).dim()
}

/// A subspace of constant-coefficient forms on a fixed coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    n: usize,
    echelon: Echelon<MultiIndex>,
}

pub(crate) fn constant_vector(f: &Form) -> Result<Vector<MultiIndex>> {
    f.to_constant_vector().ok_or(Error::SymbolicCoefficients)
}

impl FormSpace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            echelon: Echelon::new(),
        }
    }

    pub fn span<'a>(n: usize, forms: impl IntoIterator<Item = &'a Form>) -> Result<Self> {
        let mut s = Self::zero(n);
        for f in forms {
            s.insert(f)?;
        }
        Ok(s)
    }

    /// All of `Lambda^{p,q}` (or any set of monomials).
    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = MultiIndex>) -> Self {
        let mut s = Self::zero(n);
        for m in monomials {
            let mut v = Vector::new();
            v.insert(m, GaussianRational::one());
            s.echelon.insert(v);
        }
        s
    }

    pub(crate) fn from_echelon(n: usize, echelon: Echelon<MultiIndex>) -> Self {
        Self { n, echelon }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.is_empty()
    }

    pub fn echelon(&self) -> &Echelon<MultiIndex> {
        &self.echelon
    }

    pub fn insert(&mut self, f: &Form) -> Result<bool> {
        self.check(f)?;
        Ok(self.echelon.insert(constant_vector(f)?))
    }

    /// The echelon basis as forms.
    pub fn basis(&self) -> Vec<Form> {
        self.echelon
            .rows()
            .iter()
            .map(|v| Form::from_constant_vector(self.n, v))
            .collect()
    }

    pub fn contains(&self, f: &Form) -> Result<bool> {
        self.check(f)?;
        Ok(self.echelon.contains(&constant_vector(f)?))
    }

    /// The part of `f` left after eliminating against this basis.
    pub fn residual(&self, f: &Form) -> Result<Form> {
        self.check(f)?;
        Ok(Form::from_constant_vector(
            self.n,
            &self.echelon.reduce(&constant_vector(f)?),
        ))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_echelon(self.n, self.echelon.sum(&other.echelon))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::from_echelon(self.n, self.echelon.intersect(&other.echelon))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.echelon.is_subspace_of(&other.echelon)
    }

    /// Image under a linear map on forms.
    pub fn map(&self, f: impl Fn(&Form) -> Result<Form>) -> Result<Self> {
        let images = self.basis().iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::span(self.n, &images)
    }

    /// A basis element of `self` outside `other`, if any.
    pub fn element_outside(&self, other: &Self) -> Option<Form> {
        self.basis()
            .into_iter()
            .find(|b| !other.contains(b).unwrap_or(false))
    }

    fn check(&self, f: &Form) -> Result<()> {
        if f.n() != self.n {
            Err(Error::CoframeMismatch(f.n(), self.n))
        } else {
            Ok(())
        }
    }
}

/// Kernel of a linear map from `span(domain)` given as a closure returning
/// a list of image forms (possibly several conditions) per input.
pub fn kernel_of_map(
    n: usize,
    domain: &[MultiIndex],
    f: impl Fn(&Form) -> Result<Vec<Form>>,
) -> Result<FormSpace> {
    let mut images = Vec::with_capacity(domain.len());
    for m in domain {
        let parts = f(&Form::basis_element(n, *m))?;
        let mut v: Vector<(usize, MultiIndex)> = Vector::new();
        for (i, part) in parts.iter().enumerate() {
            for (k, c) in constant_vector(part)? {
                v.insert((i, k), c);
            }
        }
        images.push(v);
    }
    let ker = kernel(&images);
    let mut echelon = Echelon::new();
    for combo in ker.rows() {
        let v: Vector<MultiIndex> = combo.iter().map(|(j, c)| (domain[*j], c.clone())).collect();
        echelon.insert(v);
    }
    Ok(FormSpace::from_echelon(n, echelon))
}
