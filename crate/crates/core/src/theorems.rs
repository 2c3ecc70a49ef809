//! Decomposition and inclusion statements as checkable subspace identities.
//!
//! Every statement is evaluated on invariant forms. Reports carry the
//! compared bases, a check per identity and witnesses for any failure or
//! strict inclusion.

use crate::error::{Error, Result};
use crate::forms::{Form, FormPrinter};
use crate::harmonic::{
    harmonic_space, is_harmonic, primitive_harmonic_space, primitive_space, LaplacianKind,
};
use crate::hermitian::{
    fundamental_form, hodge_star, is_primitive, lefschetz_l, lefschetz_power, primitive_decompose,
};
use crate::linalg::FormSpace;
use crate::report::{Check, VerificationReport};
use crate::scalars::Coefficient;
use crate::structure::{require_almost_kahler, ManifoldSpec};

fn kind_tag(kind: LaplacianKind) -> &'static str {
    kind.as_str()
}

fn require_bc_or_a(kind: LaplacianKind) -> Result<()> {
    match kind {
        LaplacianKind::BottChern | LaplacianKind::Aeppli => Ok(()),
        other => Err(Error::Validation(format!(
            "statement is about bc or a Laplacians, not `{other}`"
        ))),
    }
}

fn other_kind(kind: LaplacianKind) -> LaplacianKind {
    if kind == LaplacianKind::BottChern {
        LaplacianKind::Aeppli
    } else {
        LaplacianKind::BottChern
    }
}

fn require_n(spec: &ManifoldSpec, n: usize) -> Result<()> {
    if spec.n() != n {
        Err(Error::DimensionMismatch {
            expected: n,
            found: spec.n(),
        })
    } else {
        Ok(())
    }
}

/// Records `lhs == rhs` with a witness on each side that fails to be contained.
fn check_equal(report: &mut VerificationReport, name: &str, lhs: &FormSpace, rhs: &FormSpace) {
    let equal = lhs == rhs;
    report.push_check(Check::new(name, equal).with_detail(format!(
        "dims {} and {}",
        lhs.dim(),
        rhs.dim()
    )));
    if !equal {
        if let Some(w) = lhs.element_outside(rhs) {
            let r = rhs.residual(&w).ok();
            report.witness(format!("{name}: left side only"), w, r);
        }
        if let Some(w) = rhs.element_outside(lhs) {
            let r = lhs.residual(&w).ok();
            report.witness(format!("{name}: right side only"), w, r);
        }
    }
}

fn check_subset(
    report: &mut VerificationReport,
    name: &str,
    small: &FormSpace,
    big: &FormSpace,
) -> bool {
    let ok = small.is_subspace_of(big);
    report.push_check(Check::new(name, ok));
    if !ok {
        if let Some(w) = small.element_outside(big) {
            let r = big.residual(&w).ok();
            report.witness(format!("{name}: not contained"), w, r);
        }
    }
    ok
}

/// Sum of the summands with a rank-additivity check.
fn direct_sum(
    report: &mut VerificationReport,
    name: &str,
    parts: &[&FormSpace],
    n: usize,
) -> FormSpace {
    let sum = parts.iter().fold(FormSpace::zero(n), |acc, p| acc.sum(p));
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    report.push_check(Check::new(name, sum.dim() == total).with_detail(format!(
        "rank {} of {} summand dimensions",
        sum.dim(),
        total
    )));
    sum
}

fn set_sides(report: &mut VerificationReport, lhs: &FormSpace, rhs: &FormSpace) {
    report.lhs = lhs.basis();
    report.rhs = rhs.basis();
}

fn omega_power_space(spec: &ManifoldSpec, k: usize) -> Result<FormSpace> {
    FormSpace::span(spec.n(), &[fundamental_form(spec).power(k)])
}

/// `H^{1,1} = C omega (+) (H^{1,1} cap P^{1,1})` for `kind` in {bc, a}.
pub fn verify_decomp_11(spec: &ManifoldSpec, kind: LaplacianKind) -> Result<VerificationReport> {
    require_bc_or_a(kind)?;
    spec.require_constant()?;
    require_almost_kahler(spec)?;
    let tag = kind_tag(kind);
    let mut report = VerificationReport::new(
        format!("decomp-11-{tag}"),
        format!("H^{{1,1}}_{tag} = C omega (+) (H^{{1,1}}_{tag} cap P^{{1,1}})"),
        spec.name(),
    );
    let h = harmonic_space(spec, kind, 1, 1)?.space;
    let hp = h.intersect(&primitive_space(spec, 1, 1)?);
    let omega = omega_power_space(spec, 1)?;
    let rhs = direct_sum(&mut report, "sum is direct", &[&omega, &hp], spec.n());
    check_equal(&mut report, "equality", &h, &rhs);
    report.notes.push(format!(
        "dim H = {}, dim primitive part = {}",
        h.dim(),
        hp.dim()
    ));
    set_sides(&mut report, &h, &rhs);
    Ok(report.finish())
}

/// `H^{n-1,n-1}_bc = C omega^{n-1} (+) L^{n-2}(H^{1,1}_a cap P^{1,1})` and the
/// same with bc and a exchanged.
pub fn verify_decomp_n1n1(spec: &ManifoldSpec, kind: LaplacianKind) -> Result<VerificationReport> {
    require_bc_or_a(kind)?;
    spec.require_constant()?;
    require_almost_kahler(spec)?;
    let n = spec.n();
    if n < 2 {
        return Err(Error::BidegreeOutOfRange {
            p: 1,
            q: 1,
            reason: "needs n >= 2".into(),
        });
    }
    let tag = kind_tag(kind);
    let partner = other_kind(kind);
    let mut report = VerificationReport::new(
        format!("decomp-n1n1-{tag}"),
        format!(
            "H^{{n-1,n-1}}_{tag} = C omega^{{n-1}} (+) L^{{n-2}}(H^{{1,1}}_{} cap P^{{1,1}})",
            kind_tag(partner)
        ),
        spec.name(),
    );
    let h = harmonic_space(spec, kind, n - 1, n - 1)?.space;
    let partner_prim = primitive_harmonic_space(spec, partner, 1, 1)?.space;
    let lifted = partner_prim.map(|f| lefschetz_power(spec, f, n - 2))?;
    let omega = omega_power_space(spec, n - 1)?;
    let rhs = direct_sum(&mut report, "sum is direct", &[&omega, &lifted], n);
    check_equal(&mut report, "equality", &h, &rhs);
    set_sides(&mut report, &h, &rhs);
    Ok(report.finish())
}

/// The trivial edge decompositions and their starred versions.
pub fn verify_edge_decomps(spec: &ManifoldSpec) -> Result<VerificationReport> {
    spec.require_constant()?;
    let n = spec.n();
    let mut report = VerificationReport::new(
        "edge-decomps",
        "edge bidegrees: H^{p,0}, H^{0,q} are primitive; H^{n,n-p}_a = L^{n-p}(H^{p,0}_bc cap P), \
         H^{n-q,n}_a = L^{n-q}(H^{0,q}_bc cap P) and the same with bc, a exchanged",
        spec.name(),
    );
    let kinds = [LaplacianKind::BottChern, LaplacianKind::Aeppli];
    for p in 1..=n {
        for kind in kinds {
            let tag = kind_tag(kind);
            let dual = kind_tag(other_kind(kind));
            for (a, b) in [(p, 0), (0, p)] {
                let h = harmonic_space(spec, kind, a, b)?.space;
                let hp = h.intersect(&primitive_space(spec, a, b)?);
                check_equal(
                    &mut report,
                    &format!("H^{{{a},{b}}}_{tag} = H^{{{a},{b}}}_{tag} cap P"),
                    &h,
                    &hp,
                );
                let lifted = hp.map(|f| lefschetz_power(spec, f, n - p))?;
                let (c, d) = (n - b, n - a);
                let target = harmonic_space(spec, other_kind(kind), c, d)?.space;
                check_equal(
                    &mut report,
                    &format!(
                        "H^{{{c},{d}}}_{dual} = L^{}(H^{{{a},{b}}}_{tag} cap P)",
                        n - p
                    ),
                    &target,
                    &lifted,
                );
            }
        }
    }
    for (a, b) in [(n, 0), (0, n)] {
        let bc = harmonic_space(spec, LaplacianKind::BottChern, a, b)?.space;
        let ae = harmonic_space(spec, LaplacianKind::Aeppli, a, b)?.space;
        check_equal(
            &mut report,
            &format!("H^{{{a},{b}}}_bc = H^{{{a},{b}}}_a"),
            &bc,
            &ae,
        );
    }
    Ok(report.finish())
}

const RELATION_KINDS: [LaplacianKind; 4] = [
    LaplacianKind::BottChern,
    LaplacianKind::Del,
    LaplacianKind::Delbar,
    LaplacianKind::Aeppli,
];

/// Relations among primitive harmonic spaces at `(p,q)`, `p + q <= n`.
pub fn verify_relations(spec: &ManifoldSpec, p: usize, q: usize) -> Result<VerificationReport> {
    let n = spec.n();
    if p + q > n {
        return Err(Error::BidegreeOutOfRange {
            p,
            q,
            reason: format!("relations need p + q <= n = {n}"),
        });
    }
    spec.require_constant()?;
    require_almost_kahler(spec)?;
    let statement = if p + q == n {
        "primitive bc, del, delbar and a harmonic spaces coincide"
    } else {
        "H_bc cap P = H_delbar cap H_del cap P and H_delbar cap P is contained in H_a cap P"
    };
    let mut report = VerificationReport::new(format!("relations-{p}-{q}"), statement, spec.name());
    let spaces: Vec<(LaplacianKind, FormSpace)> = RELATION_KINDS
        .iter()
        .map(|&k| Ok((k, primitive_harmonic_space(spec, k, p, q)?.space)))
        .collect::<Result<_>>()?;
    let get = |k: LaplacianKind| &spaces.iter().find(|(kk, _)| *kk == k).unwrap().1;
    let (bc, del, delbar, ae) = (
        get(LaplacianKind::BottChern),
        get(LaplacianKind::Del),
        get(LaplacianKind::Delbar),
        get(LaplacianKind::Aeppli),
    );

    check_equal(
        &mut report,
        "H_bc cap P = H_delbar cap H_del cap P",
        bc,
        &delbar.intersect(del),
    );
    check_subset(&mut report, "H_delbar cap P in H_a cap P", delbar, ae);
    if p + q == n {
        check_equal(&mut report, "H_bc cap P = H_delbar cap P", bc, delbar);
        check_equal(&mut report, "H_bc cap P = H_del cap P", bc, del);
        check_equal(&mut report, "H_bc cap P = H_a cap P", bc, ae);
    }

    for (ka, sa) in &spaces {
        report
            .notes
            .push(format!("dim H^{{{p},{q}}}_{ka} cap P = {}", sa.dim()));
        for (kb, sb) in &spaces {
            if ka != kb {
                report
                    .flags
                    .insert(format!("{ka} in {kb}"), sa.is_subspace_of(sb));
            }
        }
    }
    // strictness along the asserted chain bc -> delbar -> a
    for (small, big) in [(bc, delbar), (bc, del), (delbar, ae)] {
        if small.is_subspace_of(big) {
            if let Some(w) = big.element_outside(small) {
                let r = small.residual(&w).ok();
                report.witness("strict inclusion", w, r);
            }
        }
    }
    set_sides(&mut report, bc, ae);
    Ok(report.finish())
}

fn torus_symbols_present(spec: &ManifoldSpec) -> bool {
    spec.symbols().is_known("V3g") && spec.symbols().is_known("V3bg") && spec.n() == 3
}

/// The membership checks and seven non-inclusions exhibited on the torus.
pub fn check_counterexamples_torus(spec: &ManifoldSpec) -> Result<VerificationReport> {
    let id = "counterexamples-torus";
    let statement = "phi^{2,1b} and phi^{1,2b} witness the seven non-inclusions among primitive \
                     harmonic (1,1)-forms";
    if !torus_symbols_present(spec) {
        return Ok(VerificationReport::not_applicable(
            id,
            statement,
            spec.name(),
            "spec does not carry the torus symbols V3g, V3bg",
        ));
    }
    let mut report = VerificationReport::new(id, statement, spec.name());
    let n = spec.n();
    let f21 = Form::monomial(n, &[2], &[1]);
    let f12 = Form::monomial(n, &[1], &[2]);
    let g = Coefficient::symbol("V3g");
    let gb = Coefficient::symbol("V3bg");

    let member =
        |f: &Form, kind: LaplacianKind| -> Result<bool> { Ok(is_harmonic(spec, kind, f)?.member) };
    let printer = FormPrinter::ascii();

    for (label, f) in [("phi^{2,1b}", &f21), ("phi^{1,2b}", &f12)] {
        report.push_check(Check::new(
            format!("{label} is primitive"),
            is_primitive(spec, f)?,
        ));
    }

    // expected verdicts per witness, in the order bc, del, delbar, a
    let expected = [
        (&f21, "phi^{2,1b}", [false, false, true, true]),
        (&f12, "phi^{1,2b}", [false, true, false, false]),
    ];
    for (f, label, verdicts) in expected {
        for (kind, want) in RELATION_KINDS.iter().zip(verdicts) {
            let got = member(f, *kind)?;
            report.push_check(Check::new(
                format!("{label} {} H_{kind}", if want { "in" } else { "not in" }),
                got == want,
            ));
        }
    }

    let del_cert = is_harmonic(spec, LaplacianKind::Del, &f21)?;
    let del_residual = del_cert
        .residual("del")
        .cloned()
        .unwrap_or_else(|| Form::zero(n));
    let expected_del = -Form::monomial(n, &[1, 2], &[3]).scale(&gb);
    report.push_check(
        Check::new(
            "del phi^{2,1b} = -conj(V3(g)) phi^{12,3b}",
            del_residual == expected_del,
        )
        .with_detail(printer.print(&del_residual)),
    );
    report.witness("phi^{2,1b} fails del", f21.clone(), Some(del_residual));

    let a_cert = is_harmonic(spec, LaplacianKind::Aeppli, &f12)?;
    let dd_residual = a_cert
        .residual("del delbar")
        .cloned()
        .unwrap_or_else(|| Form::zero(n));
    let expected_dd = Form::monomial(n, &[3], &[3])
        .wedge(&f12)
        .scale(&-&g.multiply(&gb));
    report.push_check(
        Check::new(
            "del delbar phi^{1,2b} = -V3(g) conj(V3(g)) phi^{3 3b 1 2b}",
            dd_residual == expected_dd,
        )
        .with_detail(printer.print(&dd_residual)),
    );
    report.witness(
        "phi^{1,2b} fails del delbar",
        f12.clone(),
        Some(dd_residual),
    );

    // the non-inclusions follow from the verdicts above
    let non_inclusions = [
        ("delbar", "bc", &f21),
        ("delbar", "del", &f21),
        ("a", "bc", &f21),
        ("a", "del", &f21),
        ("del", "delbar", &f12),
        ("del", "bc", &f12),
        ("del", "a", &f12),
    ];
    for (big, small, w) in non_inclusions {
        let kb: LaplacianKind = big.parse()?;
        let ks: LaplacianKind = small.parse()?;
        let ok = member(w, kb)? && !member(w, ks)? && is_primitive(spec, w)?;
        report.push_check(Check::new(
            format!("H_{big} cap P not in H_{small} cap P"),
            ok,
        ));
    }
    Ok(report.finish())
}

/// `H^{2,1}_bc` against `(H^{2,1}_bc cap P^{2,1}) (+) L(H^{1,0}_bc)` at `n = 3`.
pub fn verify_bc21_gap(spec: &ManifoldSpec) -> Result<VerificationReport> {
    require_n(spec, 3)?;
    spec.require_constant()?;
    require_almost_kahler(spec)?;
    let mut report = VerificationReport::new(
        "bc21-gap",
        "H^{2,1}_bc contains (H^{2,1}_bc cap P^{2,1}) (+) L(H^{1,0}_bc); flag `strict` records \
         whether the inclusion is proper",
        spec.name(),
    );
    let h = harmonic_space(spec, LaplacianKind::BottChern, 2, 1)?.space;
    let hp = h.intersect(&primitive_space(spec, 2, 1)?);
    let h10 = harmonic_space(spec, LaplacianKind::BottChern, 1, 0)?.space;
    let lifted = h10.map(|f| lefschetz_l(spec, f))?;
    let rhs = direct_sum(&mut report, "sum is direct", &[&hp, &lifted], 3);
    check_subset(&mut report, "sum contained in H^{2,1}_bc", &rhs, &h);
    let strict = h != rhs;
    report.flags.insert("strict".into(), strict);
    report.notes.push(format!(
        "dim H^{{2,1}}_bc = {}, dim primitive part = {}, dim L(H^{{1,0}}_bc) = {}",
        h.dim(),
        hp.dim(),
        lifted.dim()
    ));
    let printer = FormPrinter::ascii();
    if strict {
        if let Some(w) = h.element_outside(&rhs) {
            let r = rhs.residual(&w).ok();
            let lw = lefschetz_l(spec, &w)?;
            report
                .notes
                .push(format!("L(witness) = {}", printer.print(&lw)));
            report.witness("in H^{2,1}_bc, outside the sum", w, r);
        }
    } else {
        // exhibit the splitting of each basis element
        for w in h.basis() {
            let parts = primitive_decompose(spec, &w)?;
            let alpha = parts.component(0).cloned().unwrap_or_else(|| Form::zero(3));
            let beta = parts.component(1).cloned().unwrap_or_else(|| Form::zero(3));
            report.notes.push(format!(
                "{} = [{}] + L[{}] (primitive part harmonic: {}, beta in H^{{1,0}}_bc: {})",
                printer.print(&w),
                printer.print(&alpha),
                printer.print(&beta),
                hp.contains(&alpha)?,
                h10.contains(&beta)?
            ));
        }
    }
    report.lhs = h.basis();
    report.rhs = rhs.basis();
    Ok(report.finish())
}

/// `H^{p,q}_d = (+)_{r >= max(p+q-n,0)} L^r(H^{p-r,q-r}_d cap P^{p-r,q-r})`.
pub fn verify_lefschetz_d(spec: &ManifoldSpec, p: usize, q: usize) -> Result<VerificationReport> {
    spec.require_constant()?;
    require_almost_kahler(spec)?;
    let n = spec.n();
    let mut report = VerificationReport::new(
        format!("lefschetz-d-{p}-{q}"),
        format!("H^{{{p},{q}}}_d = (+)_r L^r(H^{{{p}-r,{q}-r}}_d cap P)"),
        spec.name(),
    );
    let h = harmonic_space(spec, LaplacianKind::D, p, q)?.space;
    let mut summands = Vec::new();
    for r in (p + q).saturating_sub(n)..=p.min(q) {
        let prim = primitive_harmonic_space(spec, LaplacianKind::D, p - r, q - r)?.space;
        summands.push(prim.map(|f| lefschetz_power(spec, f, r))?);
    }
    let refs: Vec<&FormSpace> = summands.iter().collect();
    let rhs = direct_sum(&mut report, "sum is direct", &refs, n);
    check_equal(&mut report, "equality", &h, &rhs);
    set_sides(&mut report, &h, &rhs);
    Ok(report.finish())
}

/// Whether `L(H^{1,0}_a)` lies in `H^{2,1}_a` at `n = 3`.
pub fn check_aeppli_l_noninclusion(spec: &ManifoldSpec) -> Result<VerificationReport> {
    require_n(spec, 3)?;
    spec.require_constant()?;
    let id = "aeppli-L-inclusion";
    let statement = "L(H^{1,0}_a) is contained in H^{2,1}_a";
    if let Err(e) = require_almost_kahler(spec) {
        return Ok(VerificationReport::not_applicable(
            id,
            statement,
            spec.name(),
            e.to_string(),
        ));
    }
    let mut report = VerificationReport::new(id, statement, spec.name());
    let h10 = harmonic_space(spec, LaplacianKind::Aeppli, 1, 0)?.space;
    let h21 = harmonic_space(spec, LaplacianKind::Aeppli, 2, 1)?.space;
    let mut ok = true;
    for b in h10.basis() {
        let lb = lefschetz_l(spec, &b)?;
        let cert = is_harmonic(spec, LaplacianKind::Aeppli, &lb)?;
        if !cert.member {
            ok = false;
            let failing = cert
                .conditions
                .iter()
                .find(|c| !c.zero)
                .map(|c| c.residual.clone());
            report.witness(
                format!("L({})", FormPrinter::ascii().print(&b)),
                lb,
                failing,
            );
        }
    }
    report.push_check(Check::new("L(H^{1,0}_a) in H^{2,1}_a", ok));
    report.notes.push(format!(
        "dim H^{{1,0}}_a = {}, dim H^{{2,1}}_a = {}",
        h10.dim(),
        h21.dim()
    ));
    report.lhs = h10.basis();
    report.rhs = h21.basis();
    Ok(report.finish())
}

/// `* H^{p,q}_bc = H^{n-q,n-p}_a` for every bidegree.
pub fn verify_star_duality(spec: &ManifoldSpec) -> Result<VerificationReport> {
    spec.require_constant()?;
    let n = spec.n();
    let mut report = VerificationReport::new(
        "star-duality",
        "the Hodge star maps H^{p,q}_bc onto H^{n-q,n-p}_a",
        spec.name(),
    );
    for p in 0..=n {
        for q in 0..=n {
            let bc = harmonic_space(spec, LaplacianKind::BottChern, p, q)?.space;
            let starred = bc.map(|f| hodge_star(spec, f))?;
            let ae = harmonic_space(spec, LaplacianKind::Aeppli, n - q, n - p)?.space;
            check_equal(
                &mut report,
                &format!("*H^{{{p},{q}}}_bc = H^{{{},{}}}_a", n - q, n - p),
                &starred,
                &ae,
            );
        }
    }
    Ok(report.finish())
}

/// `H^{1,1}_bc` in `H^{1,1}_a` and `H^{n-1,n-1}_a` in `H^{n-1,n-1}_bc`.
pub fn verify_bc_a_inclusions(spec: &ManifoldSpec) -> Result<VerificationReport> {
    spec.require_constant()?;
    require_almost_kahler(spec)?;
    let n = spec.n();
    let mut report = VerificationReport::new(
        "bc-a-inclusions",
        "H^{1,1}_bc is contained in H^{1,1}_a and H^{n-1,n-1}_a in H^{n-1,n-1}_bc",
        spec.name(),
    );
    let bc = harmonic_space(spec, LaplacianKind::BottChern, 1, 1)?.space;
    let ae = harmonic_space(spec, LaplacianKind::Aeppli, 1, 1)?.space;
    check_subset(&mut report, "H^{1,1}_bc in H^{1,1}_a", &bc, &ae);
    let bc = harmonic_space(spec, LaplacianKind::BottChern, n - 1, n - 1)?.space;
    let ae = harmonic_space(spec, LaplacianKind::Aeppli, n - 1, n - 1)?.space;
    check_subset(&mut report, "H^{n-1,n-1}_a in H^{n-1,n-1}_bc", &ae, &bc);
    Ok(report.finish())
}

type Job<'a> = Box<dyn Fn() -> Result<VerificationReport> + 'a>;

/// Runs every statement on `spec`; statements whose preconditions fail are
/// reported as not applicable.
pub fn run_suite(spec: &ManifoldSpec) -> Vec<VerificationReport> {
    let n = spec.n();
    let mut jobs: Vec<(String, Job<'_>)> = vec![
        (
            "decomp-11-bc".into(),
            Box::new(|| verify_decomp_11(spec, LaplacianKind::BottChern)),
        ),
        (
            "decomp-11-a".into(),
            Box::new(|| verify_decomp_11(spec, LaplacianKind::Aeppli)),
        ),
        (
            "decomp-n1n1-bc".into(),
            Box::new(|| verify_decomp_n1n1(spec, LaplacianKind::BottChern)),
        ),
        (
            "decomp-n1n1-a".into(),
            Box::new(|| verify_decomp_n1n1(spec, LaplacianKind::Aeppli)),
        ),
        (
            "edge-decomps".into(),
            Box::new(|| verify_edge_decomps(spec)),
        ),
    ];
    for p in 0..=n {
        for q in 0..=n - p {
            jobs.push((
                format!("relations-{p}-{q}"),
                Box::new(move || verify_relations(spec, p, q)),
            ));
        }
    }
    jobs.push((
        "counterexamples-torus".into(),
        Box::new(|| check_counterexamples_torus(spec)),
    ));
    jobs.push(("bc21-gap".into(), Box::new(|| verify_bc21_gap(spec))));
    for p in 0..=n {
        for q in 0..=n {
            jobs.push((
                format!("lefschetz-d-{p}-{q}"),
                Box::new(move || verify_lefschetz_d(spec, p, q)),
            ));
        }
    }
    jobs.push((
        "aeppli-L-inclusion".into(),
        Box::new(|| check_aeppli_l_noninclusion(spec)),
    ));
    jobs.push((
        "star-duality".into(),
        Box::new(|| verify_star_duality(spec)),
    ));
    jobs.push((
        "bc-a-inclusions".into(),
        Box::new(|| verify_bc_a_inclusions(spec)),
    ));

    jobs.into_iter()
        .map(|(id, job)| {
            job().unwrap_or_else(|e| {
                VerificationReport::not_applicable(id, "", spec.name(), e.to_string())
            })
        })
        .collect()
}
