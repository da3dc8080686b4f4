//! Registry of identities checked exactly on seeded random instances.
//!
//! Every entry is a pure function of `(order, seed)`; entries run in
//! parallel but reports come back in registry order, so output is
//! reproducible byte for byte.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::genseries::GenSeries;
use crate::poly_ring::{faa_rhs, psi_chi, MultiPoly};
use crate::random::Sampler;
use crate::rational::{binomial, int, rat, Rational};
use crate::series::taylor::{faa_expansion, taylor_of_composite};
use crate::series::TruncatedSeries;
use crate::umbral::{
    adjoint_report, compose_xb, exp_xb, gen_shift_dab, pairing, shift_d, theta, umbral_sequence,
    AdjointKind, UmbralBasis,
};
use crate::univar::UnivarPoly;
use crate::virasoro::{
    f_closed, fock_derivation, gen_umbral_shift_m, h_op, l_op, ladder_vector,
    monomials_up_to_weight, s_binomial, sheffer_ts, t_product, weight, FTable, FockPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Truncation order / degree bound / weight bound, depending on entry.
    pub order: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { order: 10, seed: 0 }
    }
}

/// The first coefficient at which two sides disagreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub context: String,
    pub coefficient: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: coefficient of {}: lhs {} != rhs {}", self.context, self.coefficient, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub tag: &'static str,
    pub citation: &'static str,
    pub conjecture: bool,
    pub passed: bool,
    pub checks: usize,
    pub first_failure: Option<Failure>,
    pub notes: Vec<String>,
}

impl EntryReport {
    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.tag,
            "citation": self.citation,
            "mode": if self.conjecture { "conjecture" } else { "identity" },
            "passed": self.passed,
            "checks": self.checks,
            "first_failure": self.first_failure.as_ref().map(|f| json!({
                "context": f.context,
                "coefficient": f.coefficient,
                "lhs": f.lhs,
                "rhs": f.rhs,
            })),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for EntryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<13} {:>6} checks  \"{}\"", self.tag, self.checks, self.citation)?;
        if let Some(fail) = &self.first_failure {
            write!(f, "\n    first failure: {fail}")?;
        }
        for note in &self.notes {
            write!(f, "\n    note: {note}")?;
        }
        Ok(())
    }
}

/// Accumulates comparisons; only the first mismatch is kept.
#[derive(Default)]
struct Checker {
    checks: usize,
    failure: Option<Failure>,
    notes: Vec<String>,
}

impl Checker {
    fn fail(&mut self, context: &str, coefficient: String, lhs: String, rhs: String) {
        if self.failure.is_none() {
            self.failure = Some(Failure { context: context.to_string(), coefficient, lhs, rhs });
        }
    }

    fn scalar(&mut self, ctx: &str, lhs: &Rational, rhs: &Rational) {
        self.checks += 1;
        if lhs != rhs {
            self.fail(ctx, "1".into(), lhs.to_string(), rhs.to_string());
        }
    }

    fn truth(&mut self, ctx: &str, ok: bool, detail: impl FnOnce() -> (String, String)) {
        self.checks += 1;
        if !ok {
            let (l, r) = detail();
            self.fail(ctx, "-".into(), l, r);
        }
    }

    fn series(&mut self, ctx: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries) {
        self.checks += 1;
        if lhs.order() != rhs.order() {
            self.fail(ctx, "order".into(), lhs.order().to_string(), rhs.order().to_string());
            return;
        }
        if let Some(k) = (0..=lhs.order()).find(|&k| lhs.coeff(k) != rhs.coeff(k)) {
            self.fail(ctx, format!("t^{k}"), lhs.coeff(k).to_string(), rhs.coeff(k).to_string());
        }
    }

    fn poly_at(&mut self, ctx: &str, prefix: &str, lhs: &UnivarPoly, rhs: &UnivarPoly) -> bool {
        let top = lhs.coeffs().len().max(rhs.coeffs().len());
        match (0..top).find(|&j| lhs.coeff(j) != rhs.coeff(j)) {
            Some(j) => {
                self.fail(ctx, format!("{prefix}x^{j}"), lhs.coeff(j).to_string(), rhs.coeff(j).to_string());
                false
            }
            None => true,
        }
    }

    fn poly(&mut self, ctx: &str, lhs: &UnivarPoly, rhs: &UnivarPoly) {
        self.checks += 1;
        self.poly_at(ctx, "", lhs, rhs);
    }

    fn gen_poly(&mut self, ctx: &str, lhs: &GenSeries<UnivarPoly>, rhs: &GenSeries<UnivarPoly>) {
        self.checks += 1;
        if lhs.order() != rhs.order() {
            self.fail(ctx, "order".into(), lhs.order().to_string(), rhs.order().to_string());
            return;
        }
        for k in 0..=lhs.order() {
            if !self.poly_at(ctx, &format!("w^{k} "), lhs.coeff(k), rhs.coeff(k)) {
                return;
            }
        }
    }

    fn multi_at(&mut self, ctx: &str, prefix: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
        let diff = lhs.sub(rhs);
        let first = diff.terms().next().map(|(m, _)| m.clone());
        match first {
            Some(m) => {
                let m = &m;
                self.fail(ctx, format!("{prefix}{m}"), lhs.coeff(m).to_string(), rhs.coeff(m).to_string());
                false
            }
            None => true,
        }
    }

    fn gen_multi(&mut self, ctx: &str, lhs: &GenSeries<MultiPoly>, rhs: &GenSeries<MultiPoly>) {
        self.checks += 1;
        if lhs.order() != rhs.order() {
            self.fail(ctx, "order".into(), lhs.order().to_string(), rhs.order().to_string());
            return;
        }
        for k in 0..=lhs.order() {
            if !self.multi_at(ctx, &format!("w^{k} "), lhs.coeff(k), rhs.coeff(k)) {
                return;
            }
        }
    }

    fn fock(&mut self, ctx: &str, lhs: &FockPoly, rhs: &FockPoly) {
        self.checks += 1;
        self.multi_at(ctx, "y*", lhs.x_part(), rhs.x_part());
    }
}

type Body = fn(&mut Checker, &mut Sampler, usize) -> Result<()>;

pub struct Entry {
    pub tag: &'static str,
    pub citation: &'static str,
    /// Checked empirically; failures outside the proven range are notes.
    pub conjecture: bool,
    body: Body,
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Entry").field("tag", &self.tag).finish()
    }
}

impl Entry {
    pub fn run(&self, cfg: &VerifyConfig) -> EntryReport {
        let mut checker = Checker::default();
        let mut rng = Sampler::for_tag(cfg.seed, self.tag);
        if let Err(e) = (self.body)(&mut checker, &mut rng, cfg.order) {
            checker.fail("evaluation", "-".into(), format!("error: {e}"), "-".into());
        }
        EntryReport {
            tag: self.tag,
            citation: self.citation,
            conjecture: self.conjecture,
            passed: checker.failure.is_none(),
            checks: checker.checks,
            first_failure: checker.failure,
            notes: checker.notes,
        }
    }
}

const fn entry(tag: &'static str, citation: &'static str, body: Body) -> Entry {
    Entry { tag, citation, conjecture: false, body }
}

pub static REGISTRY: &[Entry] = &[
    entry("AUTOMORPHISM", "the automorphism property", automorphism),
    entry("TAYLOR", "e^{w d/dx}f(x)=f(x+w)", taylor),
    entry("FAA", "Let g(x) have zero constant term", faa),
    entry("BELL", "generating function of the Bell numbers", bell),
    entry("BSTAR", "follows from the chain rule", bstar),
    entry("FDBU", "e^{wD}y_{0}=\\sum_{n ≥ 0}", fdbu),
    entry("ADJNEW", "All the identities are proved by setting x=1", adjnew),
    entry("UMBRAL-BASIS", "θ_{B}x^{n}=B_{n}(x)", umbral_basis),
    entry("ADJ-MUL", "viewed as a multiplication operator", adj_mul),
    entry("ADJ-DIFF", "viewed as a multiplication operator", adj_diff),
    entry("ADJ-SUBST", "S_{B} and θ_{B} are adjoint", adj_subst),
    entry("ADJ-SHIFT", "D_{B} and B^{*}(v) ∘ d/dv", adj_shift),
    entry("VIR-BRACKET", "(1/12)(m^{3}-m)δ_{m+n,0}", vir_bracket),
    entry("HEIS", "abm δ_{m+n,0}c", heis),
    entry("L0-WEIGHT", "the lowest weight of the module is", l0_weight),
    entry("LM1-EQ-D", "is identical to the operator 𝒟", lm1_eq_d),
    entry("LADDER", "f_{m}(n)L(-1)^{n-m}y", ladder),
    entry("F-CLOSED", "(2n-m+1)", f_closed_entry),
    entry("RECSQUARE", "(m+1)Σ_{i=0}^{n-1}f_{m-1}(i)", recsquare),
    entry("GENSHIFT-GF", "w^{m+1}∂/∂w + (m+1)/2 w^{m}", genshift_gf),
    entry("UMBVIR", "φ_{B} ∘ L(-1)^{n+1}y", umbvir),
    entry("SHEFFER-TS", "particularly simple recursion", sheffer),
    Entry {
        tag: "F-HEURISTIC",
        citation: "unmathematically ignore the restriction",
        conjecture: true,
        body: f_heuristic,
    },
];

pub fn find(tag: &str) -> Result<&'static Entry> {
    REGISTRY
        .iter()
        .find(|e| e.tag.eq_ignore_ascii_case(tag))
        .ok_or_else(|| Error::UnknownIdentityTag(tag.to_string()))
}

/// `ALL` or a single tag.
pub fn select(id: &str) -> Result<Vec<&'static Entry>> {
    if id.eq_ignore_ascii_case("ALL") {
        Ok(REGISTRY.iter().collect())
    } else {
        Ok(vec![find(id)?])
    }
}

/// Runs entries concurrently; the result order matches `entries`.
pub fn run_entries(entries: &[&Entry], cfg: &VerifyConfig) -> Vec<EntryReport> {
    entries.par_iter().map(|e| e.run(cfg)).collect()
}

fn x_times(g: &GenSeries<UnivarPoly>) -> GenSeries<UnivarPoly> {
    g.map(|p| p.mul(&UnivarPoly::x()))
}

fn at_one(g: &GenSeries<UnivarPoly>) -> TruncatedSeries {
    TruncatedSeries::new(g.coeffs().iter().map(|p| p.eval(&Rational::one())).collect())
}

fn automorphism(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    // series level: the EGF binomial form of Leibniz
    for s in 0..10 {
        let (a, b) = (rng.series(n), rng.series(n));
        let prod = a.mul(&b);
        for k in 0..=n {
            let rhs: Rational = (0..=k)
                .map(|i| Rational::from_integer(binomial(k, i)) * a.egf(i) * b.egf(k - i))
                .sum();
            c.scalar(&format!("sample {s}, EGF coefficient {k}"), &prod.egf(k), &rhs);
        }
    }
    // ring level
    let n = n.min(8);
    for s in 0..5 {
        let (p, q) = (rng.multipoly(3), rng.multipoly(3));
        let lhs = p.mul(&q).exp_wd(n)?;
        let rhs = p.exp_wd(n)?.mul(&q.exp_wd(n)?);
        c.gen_multi(&format!("sample {s}: e^(wD)(pq)"), &lhs, &rhs);
    }
    Ok(())
}

fn taylor(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    for s in 0..5 {
        let p = rng.poly(n);
        c.gen_poly(&format!("sample {s}"), &p.taylor_expansion(), &p.translate());
    }
    Ok(())
}

fn faa(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let n = n.max(1);
    for s in 0..20 {
        let (f, g) = (rng.series(n), rng.delta_series(n));
        let lhs = taylor_of_composite(&f, &g)?;
        let rhs = faa_expansion(&f, &g)?;
        c.checks += 1;
        if let Some((k, j)) = lhs.first_difference(&rhs) {
            c.fail(
                &format!("sample {s}"),
                format!("w^{k} x^{j}"),
                lhs.coeff(k, j).to_string(),
                rhs.coeff(k, j).to_string(),
            );
        }
    }
    Ok(())
}

fn bell(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    let e = TruncatedSeries::exp_t(n);
    let series = e.compose(&(&e - &TruncatedSeries::one(n)))?;
    let mut oracle: Vec<Rational> = vec![Rational::one()];
    for k in 0..n {
        let next = (0..=k).map(|i| Rational::from_integer(binomial(k, i)) * &oracle[i]).sum();
        oracle.push(next);
    }
    for (k, b) in oracle.iter().enumerate() {
        c.scalar(&format!("Bell number {k}"), &series.egf(k), b);
    }
    Ok(())
}

fn bstar(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let n = n.max(1);
    let e = TruncatedSeries::exp_t(n);
    let example = (&e - &TruncatedSeries::one(n)).b_star()?;
    let expected = TruncatedSeries::new(
        (0..n).map(|k| if k <= 1 { Rational::one() } else { Rational::zero() }).collect(),
    );
    c.series("B = e^t - 1", &example, &expected);
    for s in 0..10 {
        let b = rng.delta_series(n);
        let star = b.b_star()?;
        let inv = b.comp_inverse()?;
        c.series(&format!("sample {s}: B* Bbar'"), &star.mul(&inv.derivative()), &TruncatedSeries::one(n - 1));
        c.series(&format!("sample {s}: B'(Bbar)"), &star, &b.derivative().compose(&inv.truncate(n - 1))?);
    }
    Ok(())
}

fn fdbu(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let y0 = MultiPoly::y(0)?;
    let lhs = y0.exp_wd(n)?;
    c.gen_multi("e^(wD) y_0", &lhs, &faa_rhs(n));

    let shifts: Vec<(i64, GenSeries<MultiPoly>)> =
        (-1..=3).map(|k| Ok((k, MultiPoly::y(k)?.exp_wd(n)?))).collect::<Result<_>>()?;
    let xs: Vec<(i64, GenSeries<MultiPoly>)> =
        (1..=3).map(|k| Ok((k, MultiPoly::x(k as u32).exp_wd(n)?))).collect::<Result<_>>()?;
    for s in 0..10 {
        let (a, b) = (rng.series(n + 3), rng.delta_series(n + 3));
        let target = compose_xb(&a, &b, n)?;
        c.gen_poly(&format!("sample {s}: psi_A chi_B of the right side"), &psi_chi(&faa_rhs(n), &a, &b)?, &target);
        for (k, g) in &shifts {
            c.gen_poly(
                &format!("sample {s}: y_{k}"),
                &psi_chi(g, &a, &b)?,
                &compose_xb(&a.shift_egf(*k), &b, n)?,
            );
        }
        for (k, g) in &xs {
            let bk = b.shift_egf(*k);
            let rhs = GenSeries::new((0..=n).map(|j| UnivarPoly::monomial(1, bk.coeff(j))).collect());
            c.gen_poly(&format!("sample {s}: x_{k}"), &psi_chi(g, &a, &b)?, &rhs);
        }
    }
    Ok(())
}

fn adjnew(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let n = n.max(1);
    let y = |i: i64| -> Result<GenSeries<MultiPoly>> { MultiPoly::y(i)?.exp_wd(n) };
    let (ym1, y0, y1) = (y(-1)?, y(0)?, y(1)?);
    let t = TruncatedSeries::identity(n);
    for s in 0..5 {
        let (a, b) = (rng.series(n + 2), rng.delta_series(n + 2));
        let da = a.shift_egf(1);
        let axb = compose_xb(&a, &b, n)?;
        let daxb = compose_xb(&da, &b, n)?;
        let bn = b.truncate(n);
        let ctx = |what: &str| format!("sample {s}: {what}");

        let from_y1 = psi_chi(&y1, &a, &b)?;
        c.gen_poly(&ctx("psi_A chi_B e^(wD) y_1 = A'(xB(w))"), &from_y1, &daxb);
        let from_da = psi_chi(&y0, &da, &b)?;
        c.gen_poly(&ctx("psi_A' chi_B e^(wD) y_0 = A'(xB(w))"), &from_da, &daxb);
        let from_ym1 = psi_chi(&ym1, &a, &b)?.map(|p| p.derivative());
        c.gen_poly(&ctx("d/dx psi_A chi_B e^(wD) y_-1 = A(xB(w)) B(w)"), &from_ym1, &axb.mul_scalar_series(&bn));
        let from_ta = psi_chi(&y0, &a.mul_t(), &b)?;
        c.gen_poly(&ctx("psi_tA chi_B e^(wD) y_0 = xB(w) A(xB(w))"), &from_ta, &x_times(&axb.mul_scalar_series(&bn)));
        let plain = psi_chi(&y0, &a, &b)?;
        c.gen_poly(&ctx("psi_A chi_B e^(wD) y_0 = A(xB(w))"), &plain, &axb);
        let ab = a.truncate(n).compose(&bn)?;
        let from_ab = psi_chi(&y0, &ab, &t)?;
        let rhs = GenSeries::new((0..=n).map(|k| UnivarPoly::monomial(k, ab.coeff(k))).collect());
        c.gen_poly(&ctx("psi_(A o B) chi_t e^(wD) y_0 = A(B(xw))"), &from_ab, &rhs);
        let rhs = x_times(&daxb.mul_scalar_series(&b.derivative())).truncate(n - 1);
        c.gen_poly(&ctx("d/dw psi_A chi_B e^(wD) y_0 = A'(xB(w)) x B'(w)"), &plain.derivative(), &rhs);
        let star = b.b_star()?;
        let from_star = psi_chi(&y0, &star.mul(&da), &b)?;
        c.gen_poly(
            &ctx("psi_(B* A') chi_B e^(wD) y_0 = B*(xB(w)) A'(xB(w))"),
            &from_star,
            &compose_xb(&star, &b, n)?.mul(&daxb),
        );

        // the same identities at x = 1, paired up
        let da_b = da.truncate(n).compose(&bn)?;
        c.series(&ctx("x = 1: A'(B) from y_1"), &da_b, &at_one(&from_y1));
        c.series(&ctx("x = 1: A'(B) from A'"), &da_b, &at_one(&from_da));
        let ab_b = ab.mul(&bn);
        c.series(&ctx("x = 1: A(B) B from y_-1"), &ab_b, &at_one(&from_ym1));
        c.series(&ctx("x = 1: A(B) B from tA"), &ab_b, &at_one(&from_ta));
        c.series(&ctx("x = 1: A(B) from A"), &ab, &at_one(&plain));
        c.series(&ctx("x = 1: A(B) from A o B"), &ab, &at_one(&from_ab));
        let chain = da_b.truncate(n - 1).mul(&bn.derivative());
        c.series(&ctx("x = 1: A'(B) B' from d/dw"), &chain, &at_one(&plain).derivative());
        c.series(&ctx("x = 1: A'(B) B' from B* A'"), &chain, &at_one(&from_star).truncate(n - 1));

        // <A | psi_{e^t} u> = psi_A(u) at x = 1 for u = sum u_k y_k x^k
        let mut u = MultiPoly::zero();
        for k in 0..=n {
            u = u.add(&MultiPoly::y(k as i64)?.mul(&MultiPoly::plain_x().pow(k as u32)).scale(&rng.rational()));
        }
        let lhs = pairing(&a, &u.psi_a(&TruncatedSeries::exp_t(n))?.to_univar()?)?;
        let rhs = u.psi_a(&a)?.to_univar()?.eval(&Rational::one());
        c.scalar(&ctx("connection"), &lhs, &rhs);
    }
    Ok(())
}

fn umbral_basis(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let e = TruncatedSeries::exp_t(n + 1);
    let exp_minus_one = &e - &TruncatedSeries::one(n + 1);
    if n >= 2 {
        let b2 = umbral_sequence(&exp_minus_one, 2)?;
        c.poly("B = e^t - 1: B_2", &b2, &UnivarPoly::new(vec![int(0), int(1), int(1)]));
    }
    let mut bs = vec![exp_minus_one];
    bs.extend((0..5).map(|_| rng.delta_series(n + 1)));
    for (s, b) in bs.iter().enumerate() {
        let basis = UmbralBasis::new(b, n + 1)?;
        let ctx = |what: String| format!("B #{s}: {what}");
        for k in 0..=n {
            let bk = basis.get(k as i64);
            let xk = UnivarPoly::monomial(k, Rational::one());
            c.poly(&ctx(format!("theta x^{k}")), &theta(b, &xk)?, &umbral_sequence(b, k)?);
            c.truth(&ctx(format!("deg B_{k}")), bk.degree() == Some(k), || {
                (format!("{:?}", bk.degree()), k.to_string())
            });
            c.scalar(&ctx(format!("lead B_{k}")), &bk.leading_coeff(), &crate::rational::pow(&b.coeff(1), k as u32));
            c.poly(&ctx(format!("D_B B_{k}")), &shift_d(b, &bk)?, &basis.get(k as i64 + 1));
        }
        // sum D_B(B_k) w^k / k! = d/dw e^{xB(w)}
        let gf = exp_xb(b, n + 1)?.derivative();
        let lhs = GenSeries::new(
            (0..=n)
                .map(|k| Ok(shift_d(b, &basis.get(k as i64))?.scale(&crate::rational::factorial_q(k).recip())))
                .collect::<Result<_>>()?,
        );
        c.gen_poly(&ctx("shift generating function".into()), &lhs, &gf);
        // binomial type
        let (x1, x2) = (rng.rational(), rng.rational());
        for k in 0..=n {
            let lhs = basis.get(k as i64).eval(&(&x1 + &x2));
            let rhs: Rational = (0..=k)
                .map(|i| {
                    Rational::from_integer(binomial(k, i))
                        * basis.get(i as i64).eval(&x1)
                        * basis.get((k - i) as i64).eval(&x2)
                })
                .sum();
            c.scalar(&ctx(format!("binomial type at n = {k}")), &lhs, &rhs);
        }
        // theta is invertible: expanding in the basis and summing back is the identity
        let p = rng.poly(n);
        let coords = basis.expand(&p)?;
        let back = coords
            .iter()
            .enumerate()
            .fold(UnivarPoly::zero(), |acc, (k, ck)| acc.add(&basis.get(k as i64).scale(ck)));
        c.poly(&ctx("basis expansion round trip".into()), &back, &p);
        c.poly(
            &ctx("D^A_B with A = e^t".into()),
            &gen_shift_dab(&TruncatedSeries::exp_t(n + 1), b, &p)?,
            &shift_d(b, &p)?,
        );
    }
    Ok(())
}

fn adjoint(kind: AdjointKind, c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let d = n.min(8);
    for s in 0..20 {
        let a = rng.series(d + 3);
        let b = match kind {
            AdjointKind::Mul => rng.series(3),
            AdjointKind::Diff => rng.series(d),
            AdjointKind::Subst | AdjointKind::Shift => rng.delta_series(d + 1),
        };
        let report = adjoint_report(kind, &a, &b, d)?;
        c.checks += 1;
        if let Some((k, l, r)) = report.failure {
            c.fail(&format!("sample {s}"), format!("x^{k}"), l.to_string(), r.to_string());
        }
    }
    Ok(())
}

fn adj_mul(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    adjoint(AdjointKind::Mul, c, rng, n)
}

fn adj_diff(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    adjoint(AdjointKind::Diff, c, rng, n)
}

fn adj_subst(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    adjoint(AdjointKind::Subst, c, rng, n)
}

fn adj_shift(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    adjoint(AdjointKind::Shift, c, rng, n)
}

const BRACKET_RANGE: std::ops::RangeInclusive<i64> = -4..=4;

fn vir_bracket(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    for p in monomials_up_to_weight(n as u32) {
        for a in BRACKET_RANGE {
            for b in BRACKET_RANGE {
                let lhs = l_op(a, &l_op(b, &p)).sub(&l_op(b, &l_op(a, &p)));
                let mut rhs = l_op(a + b, &p).scale(&int(a - b));
                if a + b == 0 {
                    rhs = rhs.add(&p.scale(&rat(a * a * a - a, 12)));
                }
                c.fock(&format!("[L({a}),L({b})] on {p}"), &lhs, &rhs);
            }
        }
    }
    Ok(())
}

fn heis(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    for p in monomials_up_to_weight(n as u32) {
        for a in BRACKET_RANGE {
            for b in BRACKET_RANGE {
                let lhs = h_op(a, &h_op(b, &p)).sub(&h_op(b, &h_op(a, &p)));
                let rhs = if a + b == 0 { p.scale(&int(a)) } else { FockPoly::zero() };
                c.fock(&format!("[h({a}),h({b})] on {p}"), &lhs, &rhs);
            }
        }
    }
    Ok(())
}

fn l0_weight(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    let y = FockPoly::vacuum();
    c.fock("L(0) y", &l_op(0, &y), &y.scale(&rat(1, 2)));
    for p in monomials_up_to_weight(n as u32) {
        let w = weight(&p)?;
        c.fock(&format!("L(0) on {p}"), &l_op(0, &p), &p.scale(&w));
        for m in BRACKET_RANGE {
            let image = l_op(m, &p);
            if !image.is_zero() {
                c.scalar(&format!("weight of L({m}) {p}"), &weight(&image)?, &(&w - int(m)));
            }
        }
    }
    Ok(())
}

fn lm1_eq_d(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    for p in monomials_up_to_weight(n as u32) {
        let l = l_op(-1, &p);
        c.fock(&format!("L(-1) vs 𝒟 on {p}"), &l, &fock_derivation(&p));
        let via_ring = FockPoly::from_multipoly(&p.to_multipoly().derivation_d()?.collapse_y())?;
        c.fock(&format!("L(-1) vs D with y_i -> y on {p}"), &l, &via_ring);
    }
    Ok(())
}

fn ladder(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    let vectors: Vec<FockPoly> = (0..=n + 1).map(ladder_vector).collect();
    let table = FTable::new(n as i64, n + 1)?;
    for k in 0..=n {
        for m in -1..=k as i64 {
            let lhs = l_op(m, &vectors[k]);
            let rhs = vectors[(k as i64 - m) as usize].scale(table.get(m, k)?);
            c.fock(&format!("L({m}) L(-1)^{k} y"), &lhs, &rhs);
        }
        for m in k as i64 + 1..=n as i64 {
            c.fock(&format!("L({m}) L(-1)^{k} y = 0"), &l_op(m, &vectors[k]), &FockPoly::zero());
        }
        if k >= 1 {
            let prev = table.get(k as i64 - 1, k - 1)? * int(k as i64 + 1);
            c.scalar(&format!("f_{k}({k}) = ({k}+1) f_{}({})", k - 1, k - 1), table.get(k as i64, k)?, &prev);
        }
    }
    Ok(())
}

fn table_bounds(n: usize) -> (i64, usize) {
    ((n as i64 - 2).max(-1), 2 * n)
}

fn f_closed_entry(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    let (max_m, max_n) = table_bounds(n);
    let table = FTable::new(max_m.max(7), max_n)?;
    for m in -1..=max_m {
        for k in 0..=max_n {
            c.scalar(&format!("f_{m}({k})"), table.get(m, k)?, &f_closed(m, &int(k as i64))?);
        }
    }
    // the listed rows
    type Row = (i64, fn(i64) -> Rational);
    let rows: [Row; 8] = [
        (0, |n| int(n) + rat(1, 2)),
        (1, |n| int(n * n)),
        (2, |n| rat(n * (n - 1) * (2 * n - 1), 2)),
        (3, |n| int(n * (n - 1) * (n - 1) * (n - 2))),
        (4, |n| rat(n * (n - 1) * (n - 2) * (n - 3) * (2 * n - 3), 2)),
        (5, |n| int(n * (n - 1) * (n - 2) * (n - 2) * (n - 3) * (n - 4))),
        (6, |n| rat(n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5) * (2 * n - 5), 2)),
        (7, |n| int(n * (n - 1) * (n - 2) * (n - 3) * (n - 3) * (n - 4) * (n - 5) * (n - 6))),
    ];
    for (m, row) in rows {
        for k in 0..=max_n {
            c.scalar(&format!("listed row f_{m}({k})"), table.get(m, k)?, &row(k as i64));
        }
    }
    Ok(())
}

fn recsquare(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    let (max_m, max_n) = table_bounds(n);
    let table = FTable::new(max_m, max_n)?;
    for m in 0..=max_m {
        let mut partial = Rational::zero();
        for k in 0..=max_n {
            let rhs = table.get(m, 0)? + int(m + 1) * &partial;
            c.scalar(&format!("f_{m}({k})"), table.get(m, k)?, &rhs);
            partial += table.get(m - 1, k)?;
        }
    }
    Ok(())
}

fn genshift_gf(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    for s in 0..5 {
        let b = rng.delta_series(n + 1);
        let basis = UmbralBasis::new(&b, n + 1)?;
        let e = exp_xb(&b, n + 1)?;
        for m in -1..=4i64 {
            let lhs = GenSeries::new(
                (0..=n)
                    .map(|k| {
                        let image = gen_umbral_shift_m(&b, m, &basis.get(k as i64))?;
                        Ok(image.scale(&crate::rational::factorial_q(k).recip()))
                    })
                    .collect::<Result<_>>()?,
            );
            // (w^{m+1} d/dw + (m+1)/2 w^m) e^{xB(w)}
            let de = e.derivative();
            let mut rhs = if m == -1 { de } else { de.shift_up(m as usize + 1) };
            if m >= 0 {
                rhs = rhs.add(&e.truncate(n).shift_up(m as usize).scale(&rat(m + 1, 2)));
            }
            c.gen_poly(&format!("sample {s}, m = {m}"), &lhs, &rhs);
        }
        let p = rng.poly(n);
        c.poly(&format!("sample {s}: D_B(-1) = D_B"), &gen_umbral_shift_m(&b, -1, &p)?, &shift_d(&b, &p)?);
    }
    Ok(())
}

fn umbvir(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let vectors: Vec<FockPoly> = (0..=n + 1).map(ladder_vector).collect();
    for s in 0..5 {
        let b = rng.delta_series(n + 1);
        let basis = UmbralBasis::new(&b, n + 1)?;
        for k in 0..=n {
            let here = vectors[k].phi_b(&b)?;
            c.poly(&format!("sample {s}: phi_B L(-1)^{k} y = B_{k}"), &here, &basis.get(k as i64));
            c.poly(
                &format!("sample {s}: D_B phi_B L(-1)^{k} y"),
                &shift_d(&b, &here)?,
                &vectors[k + 1].phi_b(&b)?,
            );
        }
    }
    Ok(())
}

fn sheffer(c: &mut Checker, rng: &mut Sampler, n: usize) -> Result<()> {
    let minus_two = int(-2);
    c.scalar("t_0(-2)", &sheffer_ts(0, &minus_two).0, &int(1));
    c.scalar("t_1(-2)", &sheffer_ts(1, &minus_two).0, &rat(-1, 2));
    for s in 0..20 {
        let x = rng.rational();
        for k in 0..=n {
            let (t, sv) = sheffer_ts(k, &x);
            let ctx = |what: &str| format!("point {s} (x = {x}), n = {k}: {what}");
            c.scalar(&ctx("t_n = f_(n-1)(x+n)"), &t, &f_closed(k as i64 - 1, &(&x + int(k as i64)))?);
            if let Some(tp) = t_product(k, &x) {
                c.scalar(&ctx("product form"), &t, &tp);
            }
            c.scalar(&ctx("binomial form"), &sv, &s_binomial(k, &x));
            if k >= 1 {
                let rhs = sheffer_ts(k - 1, &x).1 + sheffer_ts(k, &(&x - int(1))).1;
                c.scalar(&ctx("s_n(x) = s_(n-1)(x) + s_n(x-1)"), &sv, &rhs);
            }
        }
    }
    Ok(())
}

fn f_heuristic(c: &mut Checker, _: &mut Sampler, n: usize) -> Result<()> {
    let f = |m: i64, k: i64| f_closed(m, &int(k));
    let (mut outside, mut outside_hold) = (0usize, 0usize);
    let mut first_outside_failure = None;
    for k in 0..=n as i64 {
        for l in -1..=k + 1 {
            for m in -1..=k + 1 {
                if l + m < -1 {
                    continue;
                }
                let lhs = int(l - m) * f(l + m, k)?;
                let rhs = f(l, k - m)? * f(m, k)? - f(m, k - l)? * f(l, k)?;
                if l + m <= k {
                    c.scalar(&format!("(l, m, n) = ({l}, {m}, {k})"), &lhs, &rhs);
                } else {
                    outside += 1;
                    if lhs == rhs {
                        outside_hold += 1;
                    } else if first_outside_failure.is_none() {
                        first_outside_failure = Some(format!("({l}, {m}, {k}): {lhs} != {rhs}"));
                    }
                }
            }
        }
    }
    c.notes.push(format!("cells with m + l > n: {outside_hold} of {outside} hold"));
    if let Some(cell) = first_outside_failure {
        c.notes.push(format!("first cell with m + l > n that fails: {cell}"));
    }
    Ok(())
}
