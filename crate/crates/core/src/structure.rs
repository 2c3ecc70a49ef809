//! Structure equations, the exterior differential and its bidegree components
//! `d = mu + del + delbar + mubar`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::forms::{all_monomials, Form, FormPrinter, Generator, MultiIndex};
use crate::report::{Check, VerificationReport};
use crate::scalars::{format_rational, Direction, SymbolContext};

/// `d` or one of its four bidegree components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorKind {
    D,
    Mu,
    Del,
    Delbar,
    Mubar,
}

impl OperatorKind {
    pub const COMPONENTS: [OperatorKind; 4] = [
        OperatorKind::Mu,
        OperatorKind::Del,
        OperatorKind::Delbar,
        OperatorKind::Mubar,
    ];

    /// Bidegree shift, `None` for the full differential.
    pub fn shift(self) -> Option<(i32, i32)> {
        match self {
            OperatorKind::D => None,
            OperatorKind::Mu => Some((2, -1)),
            OperatorKind::Del => Some((1, 0)),
            OperatorKind::Delbar => Some((0, 1)),
            OperatorKind::Mubar => Some((-1, 2)),
        }
    }

    /// The operator obtained by conjugation (`conj o k o conj`).
    pub fn conj(self) -> Self {
        match self {
            OperatorKind::D => OperatorKind::D,
            OperatorKind::Mu => OperatorKind::Mubar,
            OperatorKind::Mubar => OperatorKind::Mu,
            OperatorKind::Del => OperatorKind::Delbar,
            OperatorKind::Delbar => OperatorKind::Del,
        }
    }

    pub fn symbol(self, ascii: bool) -> &'static str {
        match (self, ascii) {
            (OperatorKind::D, _) => "d",
            (OperatorKind::Mu, true) => "mu",
            (OperatorKind::Mu, false) => "μ",
            (OperatorKind::Del, true) => "del",
            (OperatorKind::Del, false) => "∂",
            (OperatorKind::Delbar, true) => "delbar",
            (OperatorKind::Delbar, false) => "∂̄",
            (OperatorKind::Mubar, true) => "mubar",
            (OperatorKind::Mubar, false) => "μ̄",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol(true))
    }
}

impl FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "d" => OperatorKind::D,
            "mu" => OperatorKind::Mu,
            "del" => OperatorKind::Del,
            "delbar" => OperatorKind::Delbar,
            "mubar" => OperatorKind::Mubar,
            _ => return Err(Error::Validation(format!("unknown operator `{s}`"))),
        })
    }
}

/// An invariant almost Hermitian structure given by structure equations on a
/// coframe of `(1,0)`-forms and a diagonal fundamental form
/// `omega = i sum_a c_a phi^a ^ phib^a`.
#[derive(Debug)]
pub struct ManifoldSpec {
    name: String,
    generators: Vec<String>,
    d_hol: Vec<Form>,
    d_anti: Vec<Form>,
    omega: Vec<BigRational>,
    symbols: SymbolContext,
    monomial_d: RwLock<HashMap<MultiIndex, Form>>,
}

impl Clone for ManifoldSpec {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            generators: self.generators.clone(),
            d_hol: self.d_hol.clone(),
            d_anti: self.d_anti.clone(),
            omega: self.omega.clone(),
            symbols: self.symbols.clone(),
            monomial_d: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for ManifoldSpec {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
            && self.generators == o.generators
            && self.d_hol == o.d_hol
            && self.omega == o.omega
            && self.symbols == o.symbols
    }
}

impl ManifoldSpec {
    /// Builds a spec; `d` on the barred generators is forced by conjugation.
    ///
    /// Structural soundness (`d^2 = 0`, degrees) is not enforced here; see
    /// [`check_integrability_relations`].
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        d_hol: Vec<Form>,
        omega: Vec<BigRational>,
        symbols: SymbolContext,
    ) -> Result<Self> {
        let n = generators.len();
        if n == 0 || n > crate::forms::MAX_N {
            return Err(Error::Validation(format!("unsupported half-dimension {n}")));
        }
        if d_hol.len() != n {
            return Err(Error::Validation(format!(
                "{} structure equations for {n} generators",
                d_hol.len()
            )));
        }
        if omega.len() != n {
            return Err(Error::Validation(format!(
                "{} omega coefficients for {n} generators",
                omega.len()
            )));
        }
        for (a, c) in omega.iter().enumerate() {
            if !c.is_positive() {
                return Err(Error::Validation(format!(
                    "omega coefficient c_{} = {} is not positive",
                    a + 1,
                    format_rational(c)
                )));
            }
        }
        for (a, f) in d_hol.iter().enumerate() {
            if f.n() != n {
                return Err(Error::CoframeMismatch(f.n(), n));
            }
            for (_, c) in f.terms() {
                for s in c.symbols() {
                    if !symbols.is_known(s) {
                        return Err(Error::Validation(format!(
                            "d {} uses undeclared symbol `{s}`",
                            generators[a]
                        )));
                    }
                }
            }
        }
        let d_anti = d_hol
            .iter()
            .map(|f| f.conjugate(&symbols))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: name.into(),
            generators,
            d_hol,
            d_anti,
            omega,
            symbols,
            monomial_d: RwLock::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn omega_coefficients(&self) -> &[BigRational] {
        &self.omega
    }

    pub fn symbols(&self) -> &SymbolContext {
        &self.symbols
    }

    /// User-supplied `d phi^a`.
    pub fn d_generator(&self, a: usize) -> &Form {
        &self.d_hol[a]
    }

    /// `d phib^a = conj(d phi^a)`.
    pub fn d_conjugate_generator(&self, a: usize) -> &Form {
        &self.d_anti[a]
    }

    /// True when every structure coefficient lies in `Q(i)`.
    pub fn is_constant(&self) -> bool {
        self.d_hol.iter().all(Form::is_constant)
    }

    pub fn require_constant(&self) -> Result<()> {
        if self.is_constant() {
            Ok(())
        } else {
            Err(Error::SymbolicCoefficients)
        }
    }

    fn d_of_generator(&self, g: Generator) -> &Form {
        if g.barred {
            &self.d_anti[g.index]
        } else {
            &self.d_hol[g.index]
        }
    }

    /// `d` of a canonical monomial (Leibniz over its generators).
    pub fn d_monomial(&self, m: &MultiIndex) -> Form {
        if let Some(f) = self.monomial_d.read().ok().and_then(|c| c.get(m).cloned()) {
            return f;
        }
        let n = self.n();
        let gens = m.generators();
        let mut out = Form::zero(n);
        for j in 0..gens.len() {
            let prefix = Form::product(n, &gens[..j]);
            let suffix = Form::product(n, &gens[j + 1..]);
            let term = prefix.wedge(self.d_of_generator(gens[j])).wedge(&suffix);
            if j % 2 == 1 {
                out.add_assign(&-&term);
            } else {
                out.add_assign(&term);
            }
        }
        if let Ok(mut cache) = self.monomial_d.write() {
            cache.insert(*m, out.clone());
        }
        out
    }

    /// `df = sum_i V_i(f) phi^i + Vb_i(f) phib^i` for a 0-form coefficient.
    fn d_coefficient(&self, c: &crate::scalars::Coefficient) -> Result<Form> {
        let n = self.n();
        let mut out = Form::zero(n);
        if c.is_constant() {
            return Ok(out);
        }
        for dir in Direction::all(n) {
            let dc = c.derive(dir, &self.symbols)?;
            if !dc.is_zero() {
                let g = Generator {
                    index: dir.index,
                    barred: dir.barred,
                };
                out.add_assign(&Form::generator(n, g).scale(&dc));
            }
        }
        Ok(out)
    }

    /// The exterior differential.
    pub fn exterior_d(&self, a: &Form) -> Result<Form> {
        self.check_coframe(a)?;
        let n = self.n();
        let mut out = Form::zero(n);
        for (m, c) in a.terms() {
            if !c.is_constant() {
                let df = self.d_coefficient(c)?;
                out.add_assign(&df.wedge(&Form::basis_element(n, *m)));
            }
            out.add_assign(&self.d_monomial(m).scale(c));
        }
        Ok(out)
    }

    /// `mu`, `del`, `delbar`, `mubar` (or `d` itself).
    pub fn component(&self, a: &Form, kind: OperatorKind) -> Result<Form> {
        let Some((dp, dq)) = kind.shift() else {
            return self.exterior_d(a);
        };
        a.map_bidegrees(|part, (p, q)| {
            let (tp, tq) = (p as i32 + dp, q as i32 + dq);
            if tp < 0 || tq < 0 {
                return Ok(Form::zero(self.n()));
            }
            Ok(self
                .exterior_d(part)?
                .bidegree_project(tp as usize, tq as usize))
        })
    }

    pub(crate) fn check_coframe(&self, a: &Form) -> Result<()> {
        if a.n() != self.n() {
            Err(Error::CoframeMismatch(a.n(), self.n()))
        } else {
            Ok(())
        }
    }
}

/// The seven bidegree components of `d^2 = 0`, each a sum of compositions
/// `outer o inner`.
pub const D_SQUARED_RELATIONS: [(&str, &[(OperatorKind, OperatorKind)]); 7] = {
    use OperatorKind::*;
    [
        ("mu^2 = 0", &[(Mu, Mu)]),
        ("mu del + del mu = 0", &[(Mu, Del), (Del, Mu)]),
        (
            "del^2 + mu delbar + delbar mu = 0",
            &[(Del, Del), (Mu, Delbar), (Delbar, Mu)],
        ),
        (
            "del delbar + delbar del + mu mubar + mubar mu = 0",
            &[(Del, Delbar), (Delbar, Del), (Mu, Mubar), (Mubar, Mu)],
        ),
        (
            "delbar^2 + mubar del + del mubar = 0",
            &[(Delbar, Delbar), (Mubar, Del), (Del, Mubar)],
        ),
        (
            "mubar delbar + delbar mubar = 0",
            &[(Mubar, Delbar), (Delbar, Mubar)],
        ),
        ("mubar^2 = 0", &[(Mubar, Mubar)]),
    ]
};

/// Evaluates `d^2` and the seven component relations on every basis monomial.
pub fn check_integrability_relations(spec: &ManifoldSpec) -> VerificationReport {
    let n = spec.n();
    let mut report = VerificationReport::new(
        "structure-relations",
        "d^2 = 0 and its seven bidegree components vanish on every basis monomial",
        spec.name(),
    );

    let bad_degree: Vec<String> = (0..n)
        .filter(|&a| {
            let f = spec.d_generator(a);
            !f.is_zero() && f.degree() != Some(2)
        })
        .map(|a| spec.generators()[a].clone())
        .collect();
    report.push_check(
        Check::new("d of each generator is a 2-form", bad_degree.is_empty()).with_detail(
            if bad_degree.is_empty() {
                String::new()
            } else {
                format!("offending generators: {}", bad_degree.join(", "))
            },
        ),
    );

    let mut conj_ok = true;
    let ctx = spec.symbols();
    for ((sym, dir), value) in &ctx.derivations().entries {
        let lhs = value.conjugate(ctx);
        let rhs = ctx
            .conjugate_symbol(sym)
            .and_then(|cs| ctx.derive_symbol(&cs, dir.conj()));
        if !matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b) {
            conj_ok = false;
            report.notes.push(format!(
                "conj({dir}({sym})) differs from {}(conj {sym})",
                dir.conj()
            ));
        }
    }
    report.push_check(Check::new("derivations commute with conjugation", conj_ok));

    // lowest degree first, holomorphic generators before their conjugates
    let mut monomials = all_monomials(n);
    monomials.sort_by_key(|m| (m.degree(), std::cmp::Reverse(m.bidegree().0), *m));
    let evaluate =
        |label: &str, report: &mut VerificationReport, f: &dyn Fn(&Form) -> Result<Form>| {
            let mut failure: Option<String> = None;
            for m in &monomials {
                let basis = Form::basis_element(n, *m);
                match f(&basis) {
                    Ok(r) if r.is_zero() => {}
                    Ok(r) => {
                        report.witness(format!("{label} on {m}"), basis, Some(r));
                        failure = Some(format!("fails on {m}"));
                        break;
                    }
                    Err(e) => {
                        failure = Some(format!("evaluation error on {m}: {e}"));
                        break;
                    }
                }
            }
            let passed = failure.is_none();
            report.push_check(Check::new(label, passed).with_detail(failure.unwrap_or_default()));
        };

    evaluate("d^2 = 0", &mut report, &|b| {
        spec.exterior_d(&spec.exterior_d(b)?)
    });
    for (label, terms) in D_SQUARED_RELATIONS {
        evaluate(label, &mut report, &|b| {
            let mut sum = Form::zero(n);
            for (outer, inner) in terms {
                sum.add_assign(&spec.component(&spec.component(b, *inner)?, *outer)?);
            }
            Ok(sum)
        });
    }
    report.finish()
}

/// Whether `mu = mubar = 0`, i.e. the almost complex structure is integrable.
pub fn is_integrable(spec: &ManifoldSpec) -> Result<bool> {
    for a in 0..spec.n() {
        for g in [Generator::hol(a), Generator::anti(a)] {
            let f = Form::generator(spec.n(), g);
            if !spec.component(&f, OperatorKind::Mu)?.is_zero()
                || !spec.component(&f, OperatorKind::Mubar)?.is_zero()
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `d omega = 0` and positivity of the metric; reports integrability as a flag.
pub fn check_almost_kahler(spec: &ManifoldSpec) -> VerificationReport {
    let mut report = VerificationReport::new(
        "almost-kahler",
        "omega = i sum c_a phi^a ^ phib^a is positive and closed",
        spec.name(),
    );
    let positive = spec.omega_coefficients().iter().all(|c| c.is_positive());
    report.push_check(Check::new("omega coefficients positive", positive));

    let omega = crate::hermitian::fundamental_form(spec);
    match spec.exterior_d(&omega) {
        Ok(d_omega) if d_omega.is_zero() => {
            report.push_check(Check::new("d omega = 0", true));
        }
        Ok(d_omega) => {
            report.push_check(
                Check::new("d omega = 0", false).with_detail(FormPrinter::ascii().print(&d_omega)),
            );
            report.witness("d omega", omega, Some(d_omega));
        }
        Err(e) => report.push_check(Check::new("d omega = 0", false).with_detail(e.to_string())),
    }
    let mut report = report.finish();
    let almost_kahler = report.passed();
    report.flags.insert("almost-kahler".into(), almost_kahler);
    match is_integrable(spec) {
        Ok(v) => {
            report.flags.insert("integrable".into(), v);
        }
        Err(e) => report
            .notes
            .push(format!("integrability undetermined: {e}")),
    }
    report
}

/// Fails with [`Error::NotAlmostKahler`] unless `d omega = 0`.
pub fn require_almost_kahler(spec: &ManifoldSpec) -> Result<()> {
    let omega = crate::hermitian::fundamental_form(spec);
    let d_omega = spec.exterior_d(&omega)?;
    if d_omega.is_zero() {
        Ok(())
    } else {
        Err(Error::NotAlmostKahler(format!(
            "d omega = {}",
            FormPrinter::ascii().print(&d_omega)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form;
    use crate::library::catalog;
    use crate::scalars::{Coefficient, DerivationTable, GaussianRational};

    fn quarter(re: i64, im: i64) -> Coefficient {
        Coefficient::constant(GaussianRational::from_fractions(re, 4, im, 4))
    }

    #[test]
    fn iwasawa_phi3_closed_and_phi1_projection() {
        let spec = catalog("iwasawa_ak").unwrap();
        let n = 3;
        let phi3 = Form::monomial(n, &[3], &[]);
        assert!(spec.exterior_d(&phi3).unwrap().is_zero());
        let phi1 = Form::monomial(n, &[1], &[]);
        let expected = (Form::monomial(n, &[], &[1, 3]).scale(&quarter(1, 0)))
            + Form::monomial(n, &[], &[2, 3]).scale(&quarter(0, -1));
        assert_eq!(
            spec.exterior_d(&phi1).unwrap().bidegree_project(0, 2),
            expected
        );
        assert_eq!(
            spec.component(&phi1, OperatorKind::Mubar).unwrap(),
            expected
        );
    }

    #[test]
    fn iwasawa_d_phi13_by_leibniz() {
        let spec = catalog("iwasawa_ak").unwrap();
        let n = 3;
        let d1 = spec.exterior_d(&Form::monomial(n, &[1], &[])).unwrap();
        let phi3 = Form::monomial(n, &[3], &[]);
        // d(phi^1 ^ phi^3) = dphi^1 ^ phi^3 since dphi^3 = 0
        let got = spec.exterior_d(&Form::monomial(n, &[1, 3], &[])).unwrap();
        assert_eq!(got, d1.wedge(&phi3));
        // only the terms of 4 dphi^1 without phi^3 survive:
        // 4 dphi^1 ^ phi^3 = phi^{13b} ^ phi^3 - i phi^{23b} ^ phi^3 + phib^{13} ^ phi^3 - i phib^{23} ^ phi^3
        let hand = parse_form(
            n,
            "(1/4,0)*phi[1;3]*phi[3;] + (0,-1/4)*phi[2;3]*phi[3;] \
             + (1/4,0)*phi[;1,3]*phi[3;] + (0,-1/4)*phi[;2,3]*phi[3;]",
        )
        .unwrap();
        assert_eq!(got, hand);
    }

    #[test]
    fn torus_structure_equations() {
        let spec = catalog("torus6").unwrap();
        let n = 3;
        let a = Coefficient::symbol("V3g");
        let b = Coefficient::symbol("V3bg");
        let expected =
            Form::monomial(n, &[3], &[1]).scale(&a) - Form::monomial(n, &[], &[1, 3]).scale(&b);
        assert_eq!(
            spec.exterior_d(&Form::monomial(n, &[1], &[])).unwrap(),
            expected
        );
        let f21 = Form::monomial(n, &[2], &[1]);
        assert_eq!(
            spec.component(&f21, OperatorKind::Del).unwrap(),
            -Form::monomial(n, &[1, 2], &[3]).scale(&b)
        );
        assert!(spec
            .component(&f21, OperatorKind::Delbar)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn golden_specs_satisfy_relations() {
        for name in ["iwasawa_ak", "torus6", "iwasawa_cplx", "flat_kahler6"] {
            let spec = catalog(name).unwrap();
            let r = check_integrability_relations(&spec);
            assert!(r.passed(), "{name}: {}", r.render(FormPrinter::ascii()));
            assert_eq!(r.checks.len(), 10);
        }
    }

    #[test]
    fn broken_spec_fails_d_squared() {
        let n = 1;
        let spec = ManifoldSpec::new(
            "broken",
            vec!["phi1".into()],
            vec![Form::monomial(n, &[], &[1])],
            vec![1.into()]
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
            SymbolContext::default(),
        )
        .unwrap();
        let r = check_integrability_relations(&spec);
        assert!(!r.passed());
        assert!(!r.check("d^2 = 0").unwrap().passed);
        let w = &r.witnesses[0];
        assert_eq!(w.form, Form::monomial(n, &[1], &[]));
        assert_eq!(w.residual.clone().unwrap(), Form::monomial(n, &[1], &[]));
    }

    #[test]
    fn almost_kahler_flags() {
        let ak = check_almost_kahler(&catalog("iwasawa_ak").unwrap());
        assert!(ak.passed());
        assert!(!ak.flags["integrable"]);
        let torus = check_almost_kahler(&catalog("torus6").unwrap());
        assert!(torus.passed());
        assert!(!torus.flags["integrable"]);
        let flat = check_almost_kahler(&catalog("flat_kahler6").unwrap());
        assert!(flat.passed());
        assert!(flat.flags["integrable"]);
    }

    #[test]
    fn integrable_iwasawa_is_not_kahler() {
        // The complex Iwasawa structure is integrable, but the flat omega is not
        // closed: d(psi^3 ^ psib^3) = -psi^{12} ^ psib^3 + psi^3 ^ psib^{12}.
        let spec = catalog("iwasawa_cplx").unwrap();
        let r = check_almost_kahler(&spec);
        assert!(r.flags["integrable"]);
        assert!(!r.passed());
        let d_omega = r.witnesses[0].residual.clone().unwrap();
        let expected = parse_form(3, "(0,-1)*phi[1,2;3] + (0,1)*phi[3;1,2]").unwrap();
        assert_eq!(d_omega, expected);
        assert!(matches!(
            require_almost_kahler(&spec),
            Err(Error::NotAlmostKahler(_))
        ));
    }

    #[test]
    fn mutated_structure_constant_fails_validation() {
        let spec = catalog("iwasawa_ak").unwrap();
        let mut d = (0..3)
            .map(|a| spec.d_generator(a).clone())
            .collect::<Vec<_>>();
        d[0].add_term(
            MultiIndex::from_indices(&[1, 3], &[]),
            &Coefficient::constant(GaussianRational::from_fractions(1, 4, 0, 1)),
        );
        let mutated = ManifoldSpec::new(
            "mutated",
            spec.generators().to_vec(),
            d,
            spec.omega_coefficients().to_vec(),
            SymbolContext::new(vec![], DerivationTable::default()).unwrap(),
        )
        .unwrap();
        assert!(!check_integrability_relations(&mutated).passed());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn form() -> impl Strategy<Value = Form> {
            let monos = all_monomials(3);
            prop::collection::vec((0..monos.len(), -3i64..=3, -3i64..=3), 0..8).prop_map(
                move |ts| {
                    let mut f = Form::zero(3);
                    for (k, re, im) in ts {
                        f.add_term(
                            monos[k],
                            &Coefficient::constant(GaussianRational::from_integers(re, im)),
                        );
                    }
                    f
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]
            #[test]
            fn components_sum_to_d(f in form()) {
                let spec = catalog("iwasawa_ak").unwrap();
                let mut sum = Form::zero(3);
                for k in OperatorKind::COMPONENTS {
                    sum.add_assign(&spec.component(&f, k).unwrap());
                }
                prop_assert_eq!(sum, spec.exterior_d(&f).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_intertwines_operators() {
        for name in ["iwasawa_ak", "torus6"] {
            let spec = catalog(name).unwrap();
            let ctx = spec.symbols();
            for m in all_monomials(3) {
                let f = Form::basis_element(3, m);
                let cf = f.conjugate(ctx).unwrap();
                for k in [OperatorKind::D, OperatorKind::Del, OperatorKind::Mu] {
                    let lhs = spec.component(&f, k).unwrap().conjugate(ctx).unwrap();
                    let rhs = spec.component(&cf, k.conj()).unwrap();
                    assert_eq!(lhs, rhs, "{name} {k} on {m}");
                }
            }
        }
    }
}
