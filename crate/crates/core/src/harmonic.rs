//! Invariant harmonic spaces.
//!
//! Kernels are cut out by the first-order condition systems
//!
//! | kind      | conditions                              |
//! |-----------|-----------------------------------------|
//! | `d`       | `d a = 0`, `d *a = 0`                   |
//! | `del`     | `del a = 0`, `delbar *a = 0`            |
//! | `delbar`  | `delbar a = 0`, `del *a = 0`            |
//! | `bc`      | `del a = 0`, `delbar a = 0`, `del delbar *a = 0` |
//! | `a`       | `del *a = 0`, `delbar *a = 0`, `del delbar a = 0` |
//!
//! and, for constant-coefficient specs, cross-checked against the nullspace
//! of the assembled Laplacian. All spaces are spaces of invariant forms.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{basis, Form, FormPrinter};
use crate::hermitian::{hodge_star, lambda};
use crate::linalg::{kernel_of_map, FormSpace};
use crate::structure::{ManifoldSpec, OperatorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LaplacianKind {
    D,
    Del,
    Delbar,
    BottChern,
    Aeppli,
    /// The conjugate Bott-Chern Laplacian (roles of `del` and `delbar` swapped).
    BottChern2,
    /// The conjugate Aeppli Laplacian.
    Aeppli2,
}

impl LaplacianKind {
    pub const PRIMARY: [LaplacianKind; 5] = [
        LaplacianKind::D,
        LaplacianKind::Del,
        LaplacianKind::Delbar,
        LaplacianKind::BottChern,
        LaplacianKind::Aeppli,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LaplacianKind::D => "d",
            LaplacianKind::Del => "del",
            LaplacianKind::Delbar => "delbar",
            LaplacianKind::BottChern => "bc",
            LaplacianKind::Aeppli => "a",
            LaplacianKind::BottChern2 => "bc2",
            LaplacianKind::Aeppli2 => "a2",
        }
    }

    /// The kind whose kernel is the conjugate of this one's.
    pub fn conj(self) -> Self {
        match self {
            LaplacianKind::D => LaplacianKind::D,
            LaplacianKind::Del => LaplacianKind::Delbar,
            LaplacianKind::Delbar => LaplacianKind::Del,
            LaplacianKind::BottChern => LaplacianKind::BottChern2,
            LaplacianKind::BottChern2 => LaplacianKind::BottChern,
            LaplacianKind::Aeppli => LaplacianKind::Aeppli2,
            LaplacianKind::Aeppli2 => LaplacianKind::Aeppli,
        }
    }

    /// Condition system as `(label, operators applied right to left, star first)`.
    fn conditions(self) -> Vec<Condition> {
        use OperatorKind::*;
        let c = |ops: &'static [OperatorKind], star: bool| Condition { ops, star };
        match self {
            LaplacianKind::D => vec![c(&[D], false), c(&[D], true)],
            LaplacianKind::Del => vec![c(&[Del], false), c(&[Delbar], true)],
            LaplacianKind::Delbar => vec![c(&[Delbar], false), c(&[Del], true)],
            LaplacianKind::BottChern => vec![
                c(&[Del], false),
                c(&[Delbar], false),
                c(&[Delbar, Del], true),
            ],
            LaplacianKind::Aeppli => vec![
                c(&[Del], true),
                c(&[Delbar], true),
                c(&[Delbar, Del], false),
            ],
            LaplacianKind::BottChern2 => vec![
                c(&[Delbar], false),
                c(&[Del], false),
                c(&[Del, Delbar], true),
            ],
            LaplacianKind::Aeppli2 => vec![
                c(&[Delbar], true),
                c(&[Del], true),
                c(&[Del, Delbar], false),
            ],
        }
    }

    /// Whether harmonic spaces of this kind live in a single bidegree
    /// (the Hodge Laplacian only preserves total degree).
    pub fn preserves_bidegree(self) -> bool {
        self != LaplacianKind::D
    }
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LaplacianKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "d" => LaplacianKind::D,
            "del" => LaplacianKind::Del,
            "delbar" => LaplacianKind::Delbar,
            "bc" => LaplacianKind::BottChern,
            "a" => LaplacianKind::Aeppli,
            "bc2" => LaplacianKind::BottChern2,
            "a2" => LaplacianKind::Aeppli2,
            _ => return Err(Error::Validation(format!("unknown laplacian `{s}`"))),
        })
    }
}

/// `ops[last] ... ops[0] (* a)` when `star`, else without the star.
#[derive(Clone, Copy, Debug)]
struct Condition {
    ops: &'static [OperatorKind],
    star: bool,
}

impl Condition {
    fn label(&self, ascii: bool) -> String {
        let mut parts: Vec<&str> = self.ops.iter().rev().map(|k| k.symbol(ascii)).collect();
        if self.star {
            parts.push("*");
        }
        parts.join(" ")
    }

    fn apply(&self, spec: &ManifoldSpec, a: &Form) -> Result<Form> {
        let mut f = if self.star {
            hodge_star(spec, a)?
        } else {
            a.clone()
        };
        for k in self.ops {
            f = spec.component(&f, *k)?;
        }
        Ok(f)
    }
}

/// Formal adjoint `k* = -* k' *` with `d' = d`, `del' = delbar`,
/// `delbar' = del`, `mu' = mubar`, `mubar' = mu`.
pub fn adjoint(spec: &ManifoldSpec, kind: OperatorKind, a: &Form) -> Result<Form> {
    let inner = hodge_star(spec, a)?;
    let applied = spec.component(&inner, kind.conj())?;
    Ok(-hodge_star(spec, &applied)?)
}

/// Exact evaluation of the Laplacian of the given kind.
pub fn laplacian_apply(spec: &ManifoldSpec, kind: LaplacianKind, a: &Form) -> Result<Form> {
    use OperatorKind::{Del, Delbar, D};
    // An operator word applied right to left: `Op(k)` or `Adj(k)`.
    #[derive(Clone, Copy)]
    enum W {
        Op(OperatorKind),
        Adj(OperatorKind),
    }
    use W::*;
    let eval = |word: &[W]| -> Result<Form> {
        let mut f = a.clone();
        for w in word.iter().rev() {
            f = match *w {
                Op(k) => spec.component(&f, k)?,
                Adj(k) => adjoint(spec, k, &f)?,
            };
        }
        Ok(f)
    };
    let bc_core: [&[W]; 4] = [
        &[Op(Del), Op(Delbar), Adj(Delbar), Adj(Del)],
        &[Adj(Delbar), Adj(Del), Op(Del), Op(Delbar)],
        &[Adj(Del), Op(Delbar), Adj(Delbar), Op(Del)],
        &[Adj(Delbar), Op(Del), Adj(Del), Op(Delbar)],
    ];
    let words: Vec<&[W]> = match kind {
        LaplacianKind::D => vec![&[Op(D), Adj(D)], &[Adj(D), Op(D)]],
        LaplacianKind::Del => vec![&[Op(Del), Adj(Del)], &[Adj(Del), Op(Del)]],
        LaplacianKind::Delbar => vec![&[Op(Delbar), Adj(Delbar)], &[Adj(Delbar), Op(Delbar)]],
        LaplacianKind::BottChern => {
            let mut w = bc_core.to_vec();
            w.push(&[Adj(Del), Op(Del)]);
            w.push(&[Adj(Delbar), Op(Delbar)]);
            w
        }
        LaplacianKind::Aeppli => vec![
            &[Op(Del), Op(Delbar), Adj(Delbar), Adj(Del)],
            &[Adj(Delbar), Adj(Del), Op(Del), Op(Delbar)],
            &[Op(Del), Adj(Delbar), Op(Delbar), Adj(Del)],
            &[Op(Delbar), Adj(Del), Op(Del), Adj(Delbar)],
            &[Op(Del), Adj(Del)],
            &[Op(Delbar), Adj(Delbar)],
        ],
        LaplacianKind::BottChern2 => vec![
            &[Op(Delbar), Op(Del), Adj(Del), Adj(Delbar)],
            &[Adj(Del), Adj(Delbar), Op(Delbar), Op(Del)],
            &[Adj(Delbar), Op(Del), Adj(Del), Op(Delbar)],
            &[Adj(Del), Op(Delbar), Adj(Delbar), Op(Del)],
            &[Adj(Delbar), Op(Delbar)],
            &[Adj(Del), Op(Del)],
        ],
        LaplacianKind::Aeppli2 => vec![
            &[Op(Delbar), Op(Del), Adj(Del), Adj(Delbar)],
            &[Adj(Del), Adj(Delbar), Op(Delbar), Op(Del)],
            &[Op(Delbar), Adj(Del), Op(Del), Adj(Delbar)],
            &[Op(Del), Adj(Delbar), Op(Delbar), Adj(Del)],
            &[Op(Delbar), Adj(Delbar)],
            &[Op(Del), Adj(Del)],
        ],
    };
    let mut out = Form::zero(spec.n());
    for w in words {
        out.add_assign(&eval(w)?);
    }
    Ok(out)
}

/// An echelon basis of an invariant harmonic space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub bidegree: (usize, usize),
    pub kind: LaplacianKind,
    /// Restricted to primitive forms.
    pub primitive: bool,
    pub conditions: Vec<String>,
    pub space: FormSpace,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Form> {
        self.space.basis()
    }

    pub fn label(&self) -> String {
        let (p, q) = self.bidegree;
        let base = format!("H^{{{p},{q}}}_{}", self.kind);
        if self.primitive {
            format!("{base} cap P^{{{p},{q}}}")
        } else {
            base
        }
    }
}

fn check_bidegree(spec: &ManifoldSpec, p: usize, q: usize) -> Result<()> {
    if p > spec.n() || q > spec.n() {
        return Err(Error::BidegreeOutOfRange {
            p,
            q,
            reason: format!("exceeds n = {}", spec.n()),
        });
    }
    Ok(())
}

/// Invariant harmonic `(p,q)`-forms from the condition system.
pub fn harmonic_space(
    spec: &ManifoldSpec,
    kind: LaplacianKind,
    p: usize,
    q: usize,
) -> Result<SubspaceBasis> {
    spec.require_constant()?;
    check_bidegree(spec, p, q)?;
    let conditions = kind.conditions();
    let space = kernel_of_map(spec.n(), &basis(spec.n(), p, q), |f| {
        conditions.iter().map(|c| c.apply(spec, f)).collect()
    })?;
    Ok(SubspaceBasis {
        bidegree: (p, q),
        kind,
        primitive: false,
        conditions: conditions.iter().map(|c| c.label(true)).collect(),
        space,
    })
}

/// The same space as the nullspace of the assembled Laplacian restricted to
/// `(p,q)`-forms.
pub fn harmonic_space_via_laplacian(
    spec: &ManifoldSpec,
    kind: LaplacianKind,
    p: usize,
    q: usize,
) -> Result<SubspaceBasis> {
    spec.require_constant()?;
    check_bidegree(spec, p, q)?;
    let space = kernel_of_map(spec.n(), &basis(spec.n(), p, q), |f| {
        Ok(vec![laplacian_apply(spec, kind, f)?])
    })?;
    Ok(SubspaceBasis {
        bidegree: (p, q),
        kind,
        primitive: false,
        conditions: vec![format!("laplacian {kind}")],
        space,
    })
}

/// Primitive `(p,q)`-forms, `p + q <= n`.
pub fn primitive_space(spec: &ManifoldSpec, p: usize, q: usize) -> Result<FormSpace> {
    spec.require_constant()?;
    if p + q > spec.n() {
        return Err(Error::BidegreeOutOfRange {
            p,
            q,
            reason: format!("primitive forms need p + q <= n = {}", spec.n()),
        });
    }
    kernel_of_map(spec.n(), &basis(spec.n(), p, q), |f| {
        Ok(vec![lambda(spec, f)?])
    })
}

/// `H^{p,q}_kind cap P^{p,q}`.
pub fn primitive_harmonic_space(
    spec: &ManifoldSpec,
    kind: LaplacianKind,
    p: usize,
    q: usize,
) -> Result<SubspaceBasis> {
    let h = harmonic_space(spec, kind, p, q)?;
    let prim = primitive_space(spec, p, q)?;
    Ok(SubspaceBasis {
        space: h.space.intersect(&prim),
        primitive: true,
        ..h
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResidual {
    pub condition: String,
    pub residual: Form,
    pub zero: bool,
}

/// Exact evaluation of each condition on one form; valid for symbolic specs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub form: Form,
    pub kind: LaplacianKind,
    pub conditions: Vec<ConditionResidual>,
    pub member: bool,
}

impl MembershipCertificate {
    pub fn residual(&self, condition: &str) -> Option<&Form> {
        self.conditions
            .iter()
            .find(|c| c.condition == condition)
            .map(|c| &c.residual)
    }

    pub fn render(&self, printer: FormPrinter) -> String {
        let mut out = format!(
            "{}: {}\n",
            if self.member { "member" } else { "non-member" },
            printer.print(&self.form)
        );
        for c in &self.conditions {
            out.push_str(&format!(
                "  {} {}: {}\n",
                if c.zero { "ok  " } else { "FAIL" },
                c.condition,
                if c.zero {
                    "0".to_string()
                } else {
                    format!("{} != 0", printer.print(&c.residual))
                }
            ));
        }
        out
    }
}

pub fn is_harmonic(
    spec: &ManifoldSpec,
    kind: LaplacianKind,
    a: &Form,
) -> Result<MembershipCertificate> {
    spec.check_coframe(a)?;
    let mut conditions = Vec::new();
    for c in kind.conditions() {
        let residual = c.apply(spec, a)?;
        conditions.push(ConditionResidual {
            condition: c.label(true),
            zero: residual.is_zero(),
            residual,
        });
    }
    Ok(MembershipCertificate {
        form: a.clone(),
        kind,
        member: conditions.iter().all(|c| c.zero),
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{binomial, parse_form};
    use crate::hermitian::{fundamental_form, volume};
    use crate::library::catalog;

    #[test]
    fn iwasawa_bc_21() {
        let s = catalog("iwasawa_ak").unwrap();
        let h = harmonic_space(&s, LaplacianKind::BottChern, 2, 1).unwrap();
        let expected = FormSpace::span(
            3,
            &[
                parse_form(3, "phi[1,3;1] + phi[2,3;2]").unwrap(),
                parse_form(3, "phi[1,3;2] + phi[2,3;1] + (0,-2)*phi[2,3;2]").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(h.space, expected);
        assert_eq!(h.dim(), 2);
    }

    #[test]
    fn iwasawa_bc_10_contains_phi3() {
        let s = catalog("iwasawa_ak").unwrap();
        let h = harmonic_space(&s, LaplacianKind::BottChern, 1, 0).unwrap();
        assert!(h.space.contains(&Form::monomial(3, &[3], &[])).unwrap());
    }

    #[test]
    fn adjoint_examples() {
        let s = catalog("iwasawa_ak").unwrap();
        let omega = fundamental_form(&s);
        assert!(adjoint(&s, OperatorKind::Delbar, &omega).unwrap().is_zero());
        assert!(adjoint(&s, OperatorKind::D, &volume(&s)).unwrap().is_zero());
        let t = catalog("torus6").unwrap();
        assert!(
            adjoint(&t, OperatorKind::Del, &Form::monomial(3, &[2], &[1]))
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn laplacian_examples() {
        let s = catalog("iwasawa_ak").unwrap();
        let omega = fundamental_form(&s);
        assert!(laplacian_apply(&s, LaplacianKind::BottChern, &omega)
            .unwrap()
            .is_zero());
        assert!(
            laplacian_apply(&s, LaplacianKind::Delbar, &Form::monomial(3, &[3], &[]))
                .unwrap()
                .is_zero()
        );
        assert!(laplacian_apply(&s, LaplacianKind::D, &Form::one(3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn flat_spaces_are_full() {
        let s = catalog("flat_kahler6").unwrap();
        for kind in LaplacianKind::PRIMARY {
            for p in 0..=3 {
                for q in 0..=3 {
                    let h = harmonic_space(&s, kind, p, q).unwrap();
                    assert_eq!(h.dim(), binomial(3, p) * binomial(3, q));
                }
            }
        }
    }

    #[test]
    fn symbolic_specs_reject_kernels() {
        let t = catalog("torus6").unwrap();
        assert_eq!(
            harmonic_space(&t, LaplacianKind::BottChern, 1, 1),
            Err(Error::SymbolicCoefficients)
        );
    }

    #[test]
    fn torus_memberships() {
        let t = catalog("torus6").unwrap();
        let f21 = Form::monomial(3, &[2], &[1]);
        let f12 = Form::monomial(3, &[1], &[2]);
        let v = crate::scalars::Coefficient::symbol("V3g");
        let vb = crate::scalars::Coefficient::symbol("V3bg");

        assert!(is_harmonic(&t, LaplacianKind::Delbar, &f21).unwrap().member);
        assert!(is_harmonic(&t, LaplacianKind::Aeppli, &f21).unwrap().member);
        let c = is_harmonic(&t, LaplacianKind::Del, &f21).unwrap();
        assert!(!c.member);
        assert_eq!(
            c.residual("del").unwrap(),
            &-Form::monomial(3, &[1, 2], &[3]).scale(&vb)
        );

        assert!(is_harmonic(&t, LaplacianKind::Del, &f12).unwrap().member);
        let c = is_harmonic(&t, LaplacianKind::Aeppli, &f12).unwrap();
        assert!(!c.member);
        // -V3(g) conj(V3(g)) phi^{3 3b 1 2b} in canonical order
        let expected = Form::monomial(3, &[3], &[3])
            .wedge(&Form::monomial(3, &[1], &[2]))
            .scale(&-&v.multiply(&vb));
        assert_eq!(c.residual("del delbar").unwrap(), &expected);
    }

    #[test]
    fn kind_round_trips_through_strings() {
        for k in LaplacianKind::PRIMARY {
            assert_eq!(k.as_str().parse::<LaplacianKind>().unwrap(), k);
        }
    }
}
