//! Exact coefficient arithmetic.
//!
//! [`GaussianRational`] is the field `Q(i)`. [`Coefficient`] is the polynomial
//! ring over it generated by formal function symbols, closed under the frame
//! derivations `V_1..V_n, Vb_1..Vb_n` through a [`SymbolContext`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Validation(format!("invalid rational literal `{text}`"));
    match t.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

/// Renders a rational as `p` or `p/q` (reduced, positive denominator).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `re + i·im` of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// `(rn/rd) + i (in/id)`.
    pub fn from_fractions(rn: i64, rd: i64, inum: i64, id: i64) -> Self {
        Self::new(
            BigRational::new(rn.into(), rd.into()),
            BigRational::new(inum.into(), id.into()),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn i() -> Self {
        Self::from_integers(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// Parses the spec-file object form `{"re":"p/q","im":"r/s"}` once split.
    pub fn parse_parts(re: &str, im: &str) -> Result<Self> {
        Ok(Self::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_integers(v, 0)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

impl fmt::Display for GaussianRational {
    /// Prints `(re,im)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            format_rational(&self.re),
            format_rational(&self.im)
        )
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

/// A frame derivation direction: `V_k` or its conjugate `Vb_k` (1-based `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    /// 0-based frame index.
    pub index: usize,
    pub barred: bool,
}

impl Direction {
    pub fn new(index: usize, barred: bool) -> Self {
        Self { index, barred }
    }

    pub fn conj(self) -> Self {
        Self::new(self.index, !self.barred)
    }

    /// All `2n` directions, unbarred first.
    pub fn all(n: usize) -> impl Iterator<Item = Direction> {
        (0..n)
            .map(|i| Direction::new(i, false))
            .chain((0..n).map(|i| Direction::new(i, true)))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "Vb{}", self.index + 1)
        } else {
            write!(f, "V{}", self.index + 1)
        }
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (barred, digits) = if let Some(rest) = s.strip_prefix("Vb") {
            (true, rest)
        } else if let Some(rest) = s.strip_prefix('V') {
            (false, rest)
        } else {
            return Err(Error::Validation(format!("invalid direction `{s}`")));
        };
        let k: usize = digits
            .parse()
            .map_err(|_| Error::Validation(format!("invalid direction `{s}`")))?;
        if k == 0 {
            return Err(Error::Validation(format!("invalid direction `{s}`")));
        }
        Ok(Direction::new(k - 1, barred))
    }
}

/// A declared function symbol and its conjugation partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSymbol {
    pub name: String,
    /// Partner under conjugation; a real symbol names itself.
    pub conjugate: Option<String>,
    /// Number of frame derivatives already applied (counts towards the depth limit).
    pub order: u32,
}

/// Frame derivatives of symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTable {
    pub entries: BTreeMap<(String, Direction), Coefficient>,
    pub depth_limit: u32,
    pub auto_fresh: bool,
}

impl Default for DerivationTable {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
            depth_limit: 3,
            auto_fresh: true,
        }
    }
}

/// Separator between a direction and the symbol it differentiates in
/// auto-generated names, e.g. `V3.V3g`.
pub const FRESH_SEPARATOR: char = '.';

/// Symbol declarations plus the derivation table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolContext {
    symbols: BTreeMap<String, FunctionSymbol>,
    derivations: DerivationTable,
}

impl SymbolContext {
    pub fn new(symbols: Vec<FunctionSymbol>, derivations: DerivationTable) -> Result<Self> {
        let mut map = BTreeMap::new();
        for s in symbols {
            if !is_identifier(&s.name) || s.name.contains(FRESH_SEPARATOR) {
                return Err(Error::Validation(format!(
                    "invalid symbol name `{}`",
                    s.name
                )));
            }
            if map.insert(s.name.clone(), s.clone()).is_some() {
                return Err(Error::Validation(format!("duplicate symbol `{}`", s.name)));
            }
        }
        // Conjugation must be an involution on the declared set.
        for s in map.values() {
            if let Some(partner) = &s.conjugate {
                let back = map
                    .get(partner)
                    .ok_or_else(|| Error::UndeclaredConjugate(partner.clone()))?;
                if back.conjugate.as_deref() != Some(s.name.as_str()) {
                    return Err(Error::Validation(format!(
                        "conjugation of `{}` and `{}` is not an involution",
                        s.name, partner
                    )));
                }
                if back.order != s.order {
                    return Err(Error::Validation(format!(
                        "conjugate symbols `{}` and `{}` have different orders",
                        s.name, partner
                    )));
                }
            }
        }
        if derivations.depth_limit == 0 {
            return Err(Error::Validation("depth_limit must be positive".into()));
        }
        for (sym, _) in derivations.entries.keys() {
            if !map.contains_key(sym) && Self::split_fresh(sym).is_none() {
                return Err(Error::Validation(format!(
                    "derivation entry for undeclared symbol `{sym}`"
                )));
            }
        }
        Ok(Self {
            symbols: map,
            derivations,
        })
    }

    pub fn symbols(&self) -> impl Iterator<Item = &FunctionSymbol> {
        self.symbols.values()
    }

    pub fn derivations(&self) -> &DerivationTable {
        &self.derivations
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    fn split_fresh(name: &str) -> Option<(Direction, &str)> {
        let (dir, rest) = name.split_once(FRESH_SEPARATOR)?;
        Some((dir.parse().ok()?, rest))
    }

    /// Whether `name` is declared or an auto-generated derivative of a declared symbol.
    pub fn is_known(&self, name: &str) -> bool {
        if self.symbols.contains_key(name) {
            return true;
        }
        match Self::split_fresh(name) {
            Some((_, base)) => self.is_known(base),
            None => false,
        }
    }

    /// Derivative order of a symbol.
    pub fn order(&self, name: &str) -> Result<u32> {
        if let Some(s) = self.symbols.get(name) {
            return Ok(s.order);
        }
        match Self::split_fresh(name) {
            Some((_, base)) => Ok(self.order(base)? + 1),
            None => Err(Error::UndeclaredSymbol(name.to_string())),
        }
    }

    /// Conjugation partner of a symbol.
    pub fn conjugate_symbol(&self, name: &str) -> Result<String> {
        if let Some(s) = self.symbols.get(name) {
            return s
                .conjugate
                .clone()
                .ok_or_else(|| Error::UndeclaredConjugate(name.to_string()));
        }
        match Self::split_fresh(name) {
            Some((dir, base)) => Ok(format!(
                "{}{}{}",
                dir.conj(),
                FRESH_SEPARATOR,
                self.conjugate_symbol(base)?
            )),
            None => Err(Error::UndeclaredConjugate(name.to_string())),
        }
    }

    /// Derivative of a single symbol along `dir`.
    pub fn derive_symbol(&self, name: &str, dir: Direction) -> Result<Coefficient> {
        if let Some(v) = self.derivations.entries.get(&(name.to_string(), dir)) {
            return Ok(v.clone());
        }
        let order = self.order(name)?;
        if !self.derivations.auto_fresh || order + 1 > self.derivations.depth_limit {
            return Err(Error::DepthExceeded {
                symbol: name.to_string(),
                direction: dir.to_string(),
                limit: self.derivations.depth_limit,
            });
        }
        Ok(Coefficient::symbol(format!("{dir}{FRESH_SEPARATOR}{name}")))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == FRESH_SEPARATOR)
}

/// A product of symbol powers, sorted by name with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Self(vec![(name.into(), 1)])
    }

    pub fn from_factors<I, S>(factors: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut m = Self::unit();
        for (s, e) in factors {
            m = m.mul(&Self(vec![(s.into(), e)]));
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (s, e) in &other.0 {
            if *e > 0 {
                *map.entry(s.clone()).or_default() += e;
            }
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in function symbols with `Q(i)` coefficients, in canonical form
/// (no zero coefficients stored).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_term(Monomial::unit(), c)
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Self::from_term(Monomial::symbol(name), GaussianRational::one())
    }

    pub fn from_term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_unit)
    }

    /// The value when no symbol occurs.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .get(&Monomial::unit())
                .cloned()
                .unwrap_or_else(GaussianRational::zero),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Every symbol occurring in the polynomial.
    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.as_str()))
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
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

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Product in canonical form.
    pub fn multiply(&self, other: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        (0..e).fold(Coefficient::one(), |acc, _| acc.multiply(self))
    }

    /// Complex conjugation: `i -> -i` and every symbol to its partner.
    pub fn conjugate(&self, ctx: &SymbolContext) -> Result<Coefficient> {
        let mut out = Coefficient::zero();
        for (m, c) in &self.terms {
            let mut cm = Monomial::unit();
            for (s, e) in &m.0 {
                cm = cm.mul(&Monomial(vec![(ctx.conjugate_symbol(s)?, *e)]));
            }
            out.add_term(cm, &c.conj());
        }
        Ok(out)
    }

    /// Frame derivative along `dir`, extended by linearity and the Leibniz rule.
    pub fn derive(&self, dir: Direction, ctx: &SymbolContext) -> Result<Coefficient> {
        let mut out = Coefficient::zero();
        for (m, c) in &self.terms {
            for (k, (s, e)) in m.0.iter().enumerate() {
                let ds = ctx.derive_symbol(s, dir)?;
                if ds.is_zero() {
                    continue;
                }
                let mut rest: Vec<(String, u32)> = m.0.clone();
                if *e == 1 {
                    rest.remove(k);
                } else {
                    rest[k].1 -= 1;
                }
                let factor = Coefficient::from_term(
                    Monomial(rest),
                    &c.clone() * &GaussianRational::from(*e as i64),
                );
                for (dm, dc) in factor.multiply(&ds).terms {
                    out.add_term(dm, &dc);
                }
            }
        }
        Ok(out)
    }
}

impl From<GaussianRational> for Coefficient {
    fn from(c: GaussianRational) -> Self {
        Coefficient::constant(c)
    }
}

impl From<i64> for Coefficient {
    fn from(v: i64) -> Self {
        Coefficient::constant(v.into())
    }
}

impl<'a> Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, o: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, o: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, o: &Coefficient) -> Coefficient {
        self.multiply(o)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.scale(&-GaussianRational::one())
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, o: &Coefficient) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, o: &Coefficient) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_integers(re, im)
    }

    fn torus_ctx() -> SymbolContext {
        let syms = vec![
            FunctionSymbol {
                name: "V3g".into(),
                conjugate: Some("V3bg".into()),
                order: 1,
            },
            FunctionSymbol {
                name: "V3bg".into(),
                conjugate: Some("V3g".into()),
                order: 1,
            },
        ];
        let mut table = DerivationTable::default();
        for s in ["V3g", "V3bg"] {
            for k in 0..2 {
                for barred in [false, true] {
                    table
                        .entries
                        .insert((s.into(), Direction::new(k, barred)), Coefficient::zero());
                }
            }
        }
        SymbolContext::new(syms, table).unwrap()
    }

    #[test]
    fn gaussian_products() {
        assert_eq!(&gr(1, 1) * &gr(1, -1), gr(2, 0));
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), gr(-1, 0));
        let z = GaussianRational::from_fractions(3, 4, -2, 5);
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn rational_literals_normalize() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn conjugation_of_constants_and_symbols() {
        let ctx = torus_ctx();
        let i = Coefficient::constant(GaussianRational::i());
        assert_eq!(i.conjugate(&ctx).unwrap(), Coefficient::constant(gr(0, -1)));
        let half = Coefficient::constant(GaussianRational::from_fractions(3, 2, 0, 1));
        assert_eq!(half.conjugate(&ctx).unwrap(), half);
        assert_eq!(
            Coefficient::symbol("V3g").conjugate(&ctx).unwrap(),
            Coefficient::symbol("V3bg")
        );
        assert!(matches!(
            Coefficient::symbol("h").conjugate(&ctx),
            Err(Error::UndeclaredConjugate(_))
        ));
    }

    #[test]
    fn product_of_symbol_with_its_conjugate() {
        let ctx = torus_ctx();
        let a = Coefficient::symbol("V3g");
        let p = a.multiply(&a.conjugate(&ctx).unwrap());
        let expected = Coefficient::from_term(
            Monomial::from_factors([("V3g", 1), ("V3bg", 1)]),
            GaussianRational::one(),
        );
        assert_eq!(p, expected);
        assert_eq!(p.conjugate(&ctx).unwrap(), p);
    }

    #[test]
    fn derivations() {
        let ctx = torus_ctx();
        let a = Coefficient::symbol("V3g");
        assert!(a.derive(Direction::new(0, false), &ctx).unwrap().is_zero());
        assert!(Coefficient::from(7)
            .derive(Direction::new(2, false), &ctx)
            .unwrap()
            .is_zero());
        let fresh = a.derive(Direction::new(2, false), &ctx).unwrap();
        assert_eq!(fresh, Coefficient::symbol("V3.V3g"));
        assert_eq!(ctx.order("V3.V3g").unwrap(), 2);
        assert_eq!(
            ctx.conjugate_symbol("V3.V3g").unwrap(),
            "Vb3.V3bg".to_string()
        );
        // order 1 -> 2 -> 3 allowed, 4 exceeds the default limit
        let third = fresh.derive(Direction::new(2, true), &ctx).unwrap();
        assert!(matches!(
            third.derive(Direction::new(2, false), &ctx),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn no_fresh_symbols_without_auto_fresh() {
        let table = DerivationTable {
            auto_fresh: false,
            ..Default::default()
        };
        let ctx = SymbolContext::new(
            vec![FunctionSymbol {
                name: "f".into(),
                conjugate: Some("f".into()),
                order: 0,
            }],
            table,
        )
        .unwrap();
        assert!(matches!(
            Coefficient::symbol("f").derive(Direction::new(0, false), &ctx),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn broken_involution_is_rejected() {
        let syms = vec![
            FunctionSymbol {
                name: "a".into(),
                conjugate: Some("b".into()),
                order: 0,
            },
            FunctionSymbol {
                name: "b".into(),
                conjugate: Some("b".into()),
                order: 0,
            },
        ];
        assert!(SymbolContext::new(syms, DerivationTable::default()).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn ctx() -> SymbolContext {
            let syms = ["f", "fb", "h"]
                .iter()
                .map(|s| FunctionSymbol {
                    name: s.to_string(),
                    conjugate: Some(match *s {
                        "f" => "fb".into(),
                        "fb" => "f".into(),
                        _ => "h".into(),
                    }),
                    order: 0,
                })
                .collect();
            SymbolContext::new(syms, DerivationTable::default()).unwrap()
        }

        fn coefficient() -> impl Strategy<Value = Coefficient> {
            prop::collection::vec((-3i64..=3, -3i64..=3, 0u32..=2, 0u32..=2, 0u32..=1), 0..4)
                .prop_map(|terms| {
                    let mut c = Coefficient::zero();
                    for (re, im, ef, efb, eh) in terms {
                        c.add_term(
                            Monomial::from_factors([("f", ef), ("fb", efb), ("h", eh)]),
                            &GaussianRational::from_integers(re, im),
                        );
                    }
                    c
                })
        }

        proptest! {
            #[test]
            fn ring_laws(a in coefficient(), b in coefficient(), c in coefficient()) {
                prop_assert_eq!(a.multiply(&b), b.multiply(&a));
                prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
                prop_assert_eq!(a.multiply(&(&b + &c)), &a.multiply(&b) + &a.multiply(&c));
                prop_assert_eq!((&a - &a).is_zero(), true);
            }

            #[test]
            fn conjugation_is_multiplicative_involution(a in coefficient(), b in coefficient()) {
                let ctx = ctx();
                prop_assert_eq!(a.conjugate(&ctx).unwrap().conjugate(&ctx).unwrap(), a.clone());
                prop_assert_eq!(
                    a.multiply(&b).conjugate(&ctx).unwrap(),
                    a.conjugate(&ctx).unwrap().multiply(&b.conjugate(&ctx).unwrap())
                );
            }

            #[test]
            fn leibniz(a in coefficient(), b in coefficient(), k in 0usize..3, barred: bool) {
                let ctx = ctx();
                let dir = Direction::new(k, barred);
                let lhs = a.multiply(&b).derive(dir, &ctx).unwrap();
                let rhs = &a.derive(dir, &ctx).unwrap().multiply(&b)
                    + &a.multiply(&b.derive(dir, &ctx).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn zero_iff_no_terms(a in coefficient()) {
                prop_assert_eq!(a.is_zero(), a.num_terms() == 0);
                prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
            }
        }
    }
}
