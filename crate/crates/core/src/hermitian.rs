//! Metric layer: fundamental form, volume, the C-linear Hodge star, `J` on
//! forms, Lefschetz operators and primitive decompositions.
//!
//! The metric is diagonal in the coframe: `<phi^a, phi^a> = 1/c_a` where
//! `omega = i sum c_a phi^a ^ phib^a`. The star is characterised by
//! `alpha ^ *conj(beta) = <alpha, beta> vol` with `vol = omega^n / n!`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{Form, MultiIndex};
use crate::scalars::{Coefficient, GaussianRational};
use crate::structure::ManifoldSpec;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn rational(num: BigInt, den: BigInt) -> GaussianRational {
    GaussianRational::real(BigRational::new(num, den))
}

/// `omega = i sum_a c_a phi^a ^ phib^a`.
pub fn fundamental_form(spec: &ManifoldSpec) -> Form {
    let n = spec.n();
    let mut omega = Form::zero(n);
    for (a, c) in spec.omega_coefficients().iter().enumerate() {
        let coeff = GaussianRational::new(BigRational::zero(), c.clone());
        omega.add_assign(&Form::monomial(n, &[a + 1], &[a + 1]).scale_scalar(&coeff));
    }
    omega
}

/// `omega^n / n!`.
pub fn volume(spec: &ManifoldSpec) -> Form {
    let n = spec.n();
    fundamental_form(spec)
        .power(n)
        .scale_scalar(&rational(BigInt::one(), factorial(n)))
}

/// `<m, m>` for a basis monomial.
fn monomial_norm(spec: &ManifoldSpec, m: &MultiIndex) -> BigRational {
    let c = spec.omega_coefficients();
    m.hol()
        .chain(m.anti())
        .fold(BigRational::one(), |acc, a| acc / &c[a])
}

/// `*` on a single canonical monomial.
fn star_monomial(spec: &ManifoldSpec, m: &MultiIndex, vol: &GaussianRational) -> Form {
    let n = spec.n();
    // m = s conj(g) with g = phi^{A, Hbar} when m = phi^{H, Abar}
    let (neg, g) = m.conj();
    let full = (1u32 << n) - 1;
    let target = MultiIndex::from_masks(!g.hol_mask() & full, !g.anti_mask() & full);
    let (wedge_neg, top) = g.wedge(&target).expect("complementary monomials");
    debug_assert_eq!(top, MultiIndex::top(n));
    let norm = GaussianRational::real(monomial_norm(spec, &g));
    let mut lambda = &norm * vol;
    if wedge_neg ^ neg {
        lambda = -lambda;
    }
    Form::from_term(n, target, Coefficient::constant(lambda))
}

/// The C-linear Hodge star, mapping `(p,q)` to `(n-q, n-p)`.
pub fn hodge_star(spec: &ManifoldSpec, a: &Form) -> Result<Form> {
    spec.check_coframe(a)?;
    let n = spec.n();
    let vol = volume(spec)
        .coefficient(&MultiIndex::top(n))
        .as_constant()
        .expect("volume has constant coefficient");
    let mut out = Form::zero(n);
    for (m, c) in a.terms() {
        out.add_assign(&star_monomial(spec, m, &vol).scale(c));
    }
    Ok(out)
}

/// `J` acting on `(p,q)`-forms as `i^{p-q}`.
pub fn j_on_forms(a: &Form) -> Form {
    a.scale_by_bidegree(|p, q| GaussianRational::i_pow(p as i64 - q as i64))
}

pub fn lefschetz_l(spec: &ManifoldSpec, a: &Form) -> Result<Form> {
    spec.check_coframe(a)?;
    Ok(fundamental_form(spec).wedge(a))
}

pub fn lefschetz_power(spec: &ManifoldSpec, a: &Form, r: usize) -> Result<Form> {
    spec.check_coframe(a)?;
    Ok(fundamental_form(spec).power(r).wedge(a))
}

/// The metric adjoint of `L`, `Lambda = (-1)^k * L *` on `k`-forms, so that
/// `Lambda omega = n`.
pub fn lambda(spec: &ManifoldSpec, a: &Form) -> Result<Form> {
    spec.check_coframe(a)?;
    let n = spec.n();
    let mut out = Form::zero(n);
    for k in a.degrees() {
        let part = a.degree_project(k);
        let r = hodge_star(spec, &lefschetz_l(spec, &hodge_star(spec, &part)?)?)?;
        out.add_assign(&if k % 2 == 1 { -r } else { r });
    }
    Ok(out)
}

pub fn lambda_power(spec: &ManifoldSpec, a: &Form, r: usize) -> Result<Form> {
    (0..r).try_fold(a.clone(), |acc, _| lambda(spec, &acc))
}

/// Whether `Lambda a = 0`; every homogeneous part must have degree at most `n`.
pub fn is_primitive(spec: &ManifoldSpec, a: &Form) -> Result<bool> {
    spec.check_coframe(a)?;
    if let Some(&k) = a.degrees().iter().find(|&&k| k > spec.n()) {
        return Err(Error::DegreeTooHigh {
            degree: k,
            n: spec.n(),
        });
    }
    Ok(lambda(spec, a)?.is_zero())
}

/// `*L^r beta` for primitive `beta` of degree `k` via
/// `(-1)^{k(k+1)/2} r!/(n-k-r)! L^{n-k-r} J beta`.
pub fn weil_star_primitive(spec: &ManifoldSpec, beta: &Form, r: usize) -> Result<Form> {
    spec.check_coframe(beta)?;
    let n = spec.n();
    if beta.is_zero() {
        return Ok(Form::zero(n));
    }
    let k = beta
        .degree()
        .ok_or_else(|| Error::NotHomogeneous("weil formula needs a homogeneous form".into()))?;
    if k + r > n {
        return Err(Error::DegreeTooHigh { degree: k + r, n });
    }
    if !is_primitive(spec, beta)? {
        return Err(Error::NotPrimitive);
    }
    let sign = if (k * (k + 1) / 2) % 2 == 1 { -1 } else { 1 };
    let factor = rational(BigInt::from(sign) * factorial(r), factorial(n - k - r));
    Ok(lefschetz_power(spec, &j_on_forms(beta), n - k - r)?.scale_scalar(&factor))
}

/// `alpha = sum_r (1/r!) L^r beta_{k-2r}` with each `beta` primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveComponents {
    pub k: usize,
    /// `(r, beta_{k-2r})`, increasing in `r`, zero components omitted.
    pub parts: Vec<(usize, Form)>,
}

impl PrimitiveComponents {
    pub fn reassemble(&self, spec: &ManifoldSpec) -> Result<Form> {
        let mut out = Form::zero(spec.n());
        for (r, beta) in &self.parts {
            let term = lefschetz_power(spec, beta, *r)?
                .scale_scalar(&rational(BigInt::one(), factorial(*r)));
            out.add_assign(&term);
        }
        Ok(out)
    }

    pub fn component(&self, r: usize) -> Option<&Form> {
        self.parts.iter().find(|(s, _)| *s == r).map(|(_, b)| b)
    }
}

/// Primitive decomposition of a homogeneous `k`-form by the Lambda-ladder:
/// the top component is read off from `Lambda^r` of the remainder, then
/// subtracted, using `Lambda^r L^r beta = r! prod_{j=1..r} (n-m-j+1) beta`
/// for primitive `beta` of degree `m`.
pub fn primitive_decompose(spec: &ManifoldSpec, a: &Form) -> Result<PrimitiveComponents> {
    spec.check_coframe(a)?;
    let n = spec.n();
    if a.is_zero() {
        return Ok(PrimitiveComponents {
            k: 0,
            parts: Vec::new(),
        });
    }
    let k = a.degree().ok_or_else(|| {
        Error::NotHomogeneous("primitive decomposition needs a homogeneous form".into())
    })?;
    let mut rest = a.clone();
    let mut parts = Vec::new();
    let lowest = k.saturating_sub(n);
    for r in (lowest..=k / 2).rev() {
        let m = k - 2 * r;
        let mut weight = BigInt::one();
        for j in 1..=r {
            weight *= BigInt::from(n as i64 - m as i64 - j as i64 + 1);
        }
        if weight.is_zero() {
            continue;
        }
        let beta = lambda_power(spec, &rest, r)?.scale_scalar(&rational(BigInt::one(), weight));
        if beta.is_zero() {
            continue;
        }
        let term =
            lefschetz_power(spec, &beta, r)?.scale_scalar(&rational(BigInt::one(), factorial(r)));
        rest = rest - term;
        parts.push((r, beta));
    }
    debug_assert!(rest.is_zero(), "ladder left a remainder");
    parts.reverse();
    Ok(PrimitiveComponents { k, parts })
}

/// `<a, b>` from `a ^ *conj(b) = <a,b> vol`, summed over bidegrees.
pub fn inner_product(spec: &ManifoldSpec, a: &Form, b: &Form) -> Result<Coefficient> {
    let n = spec.n();
    let top = MultiIndex::top(n);
    let vol = volume(spec).coefficient(&top);
    let vol_inv = vol
        .as_constant()
        .and_then(|v| v.inv())
        .expect("volume is a nonzero constant");
    let mut total = Coefficient::zero();
    for k in a.degrees() {
        let bk = b.degree_project(k);
        let top_form = a
            .degree_project(k)
            .wedge(&hodge_star(spec, &bk.conjugate(spec.symbols())?)?);
        total += &top_form.coefficient(&top).scale(&vol_inv);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{basis, degree_basis, parse_form};
    use crate::library::catalog;

    fn iwasawa() -> ManifoldSpec {
        catalog("iwasawa_ak").unwrap()
    }

    fn q(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_integers(re, im)
    }

    fn frac(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_fractions(num, den, 0, 1)
    }

    #[test]
    fn fundamental_forms_of_golden_specs() {
        assert_eq!(
            fundamental_form(&iwasawa()),
            parse_form(3, "(0,1)*phi[1;1] + (0,1)*phi[2;2] + (0,1)*phi[3;3]").unwrap()
        );
        let torus = catalog("torus6").unwrap();
        let omega = fundamental_form(&torus);
        assert_eq!(
            omega,
            parse_form(3, "(0,1/2)*phi[1;1] + (0,1/2)*phi[2;2] + (0,1/2)*phi[3;3]").unwrap()
        );
        assert_eq!(omega.conjugate(torus.symbols()).unwrap(), omega);
    }

    #[test]
    fn star_examples() {
        let s = iwasawa();
        let omega = fundamental_form(&s);
        let one = Form::one(3);
        assert_eq!(
            hodge_star(&s, &one).unwrap(),
            omega.power(3).scale_scalar(&frac(1, 6))
        );
        let f = Form::monomial(3, &[1], &[2]);
        assert_eq!(hodge_star(&s, &f).unwrap(), -omega.wedge(&f));
        assert_eq!(
            hodge_star(&s, &omega).unwrap(),
            omega.power(2).scale_scalar(&frac(1, 2))
        );
    }

    #[test]
    fn star_satisfies_defining_relation() {
        let s = iwasawa();
        let vol = volume(&s);
        for k in 0..=6 {
            let monos = degree_basis(3, k);
            for a in &monos {
                for b in &monos {
                    let fa = Form::basis_element(3, *a);
                    let fb = Form::basis_element(3, *b);
                    let lhs =
                        fa.wedge(&hodge_star(&s, &fb.conjugate(s.symbols()).unwrap()).unwrap());
                    let expected = if a == b {
                        vol.scale_scalar(&GaussianRational::real(monomial_norm(&s, a)))
                    } else {
                        Form::zero(3)
                    };
                    assert_eq!(lhs, expected, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn j_examples() {
        let f = Form::monomial(3, &[1], &[2]);
        assert_eq!(j_on_forms(&f), f);
        let g = Form::monomial(3, &[1, 2], &[]);
        assert_eq!(j_on_forms(&g), -g);
    }

    #[test]
    fn lambda_examples() {
        let s = iwasawa();
        let omega = fundamental_form(&s);
        assert_eq!(
            lambda(&s, &omega).unwrap(),
            Form::constant(3, q(3, 0).into())
        );
        assert!(lambda(&s, &Form::monomial(3, &[2], &[1]))
            .unwrap()
            .is_zero());
        let torus = catalog("torus6").unwrap();
        let om = fundamental_form(&torus);
        assert_eq!(
            lambda(&torus, &om).unwrap(),
            Form::constant(3, q(3, 0).into())
        );
    }

    #[test]
    fn primitivity() {
        let s = iwasawa();
        assert!(is_primitive(&s, &Form::monomial(3, &[2], &[1])).unwrap());
        assert!(!is_primitive(&s, &fundamental_form(&s)).unwrap());
        for p in 0..=3 {
            for m in basis(3, p, 0) {
                assert!(is_primitive(&s, &Form::basis_element(3, m)).unwrap());
            }
        }
        assert!(matches!(
            is_primitive(&s, &Form::monomial(3, &[1, 2], &[1, 2])),
            Err(Error::DegreeTooHigh { degree: 4, n: 3 })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let s = iwasawa();
        let omega = fundamental_form(&s);
        let psi = Form::monomial(3, &[1], &[1]).scale_scalar(&q(0, 1));
        let d = primitive_decompose(&s, &psi).unwrap();
        assert_eq!(
            d.component(1).unwrap(),
            &Form::constant(3, frac(1, 3).into())
        );
        let gamma = psi.clone() - omega.scale_scalar(&frac(1, 3));
        assert_eq!(d.component(0).unwrap(), &gamma);
        assert!(lambda(&s, &gamma).unwrap().is_zero());

        let prim = Form::monomial(3, &[2], &[1]);
        let d = primitive_decompose(&s, &prim).unwrap();
        assert_eq!(d.parts, vec![(0, prim)]);

        let d = primitive_decompose(&s, &omega.power(2)).unwrap();
        assert_eq!(d.parts, vec![(2, Form::constant(3, q(2, 0).into()))]);
    }

    #[test]
    fn weil_examples() {
        let s = iwasawa();
        let omega = fundamental_form(&s);
        assert_eq!(
            weil_star_primitive(&s, &Form::one(3), 0).unwrap(),
            omega.power(3).scale_scalar(&frac(1, 6))
        );
        let f = Form::monomial(3, &[1], &[2]);
        assert_eq!(weil_star_primitive(&s, &f, 0).unwrap(), -omega.wedge(&f));
        assert!(matches!(
            weil_star_primitive(&s, &omega, 0),
            Err(Error::NotPrimitive)
        ));
    }

    #[test]
    fn inner_product_is_diagonal_norm() {
        let s = catalog("torus6").unwrap();
        let f = Form::monomial(3, &[1, 2], &[3]);
        assert_eq!(inner_product(&s, &f, &f).unwrap(), frac(8, 1).into());
        let g = Form::monomial(3, &[1, 3], &[3]);
        assert!(inner_product(&s, &f, &g).unwrap().is_zero());
    }
}
