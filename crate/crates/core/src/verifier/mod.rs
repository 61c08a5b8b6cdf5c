//! The twisted L-value relation for abelian χ_ρ = Σ χ_j over Q.
//!
//! For an even primitive χ and a critical m < 0, with n = 1 − m, the
//! verified quantity is
//!
//!   R = Π_j E(χχ_j) / (τ(χ)^dim · Π_j E(χ_j)),   E(ψ) = L(ψ, n)/πⁿ,
//!
//! where every χχ_j is taken primitive. Each E(ψ) is exact:
//! E(ψ) = c(ψ)·τ(ψ)·L(ψ̄, m) with the rational-times-i^{−δ} factor
//! c(ψ) = (−1)^{(n−δ)/2} i^{−δ} 2^{n−1} n / (fⁿ n!). R is computed one
//! constituent at a time as R_j = E(χχ_j)/(τ(χ)E(χ_j)), each factor being
//! rewritten at level lcm(ord χ, ord χ_j) before multiplying.

mod sweep;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{OnceLock, RwLock};

use num::complex::Complex64;
use num::{BigInt, BigRational, One};
use serde::Serialize;

use crate::arith::{gcd, lcm};
use crate::brauer::{abelian_character_bridge, induce, ClassFunction};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{CycNumber, GaloisElement};
use crate::error::{Error, Result};
use crate::gauss::tau;
use crate::lvalues::{
    classify_criticality, functional_equation_check, l_value_nonpositive, l_value_numeric,
    CriticalityVerdict, FunctionalEquationCheck, ParitySignature,
};

pub use sweep::{run_sweep, run_sweep_file, CaseSpec, SweepConfig, SweepReport, SweepSummary};

/// Relative tolerance for the floating confirmation at s = 1 − m.
pub const NUMERIC_TOLERANCE: f64 = 1e-8;

const CONVENTION: &str = "R = prod_j E(chi*chi_j) / (tau(chi)^dim * prod_j E(chi_j)), \
E(psi) = L(psi, 1-m)/pi^(1-m) = c(psi) * tau(psi) * L(conj psi, m), \
c(psi) = (-1)^((1-m-delta)/2) * i^(-delta) * 2^(-m) * (1-m) / (f^(1-m) * (1-m)!)";

#[derive(Clone, Debug, Serialize)]
pub struct TheoremCase {
    /// lcm of the constituent moduli.
    pub level: u64,
    pub constituents: Vec<String>,
    pub twist: String,
    pub m: i64,
    #[serde(skip)]
    characters: Vec<DirichletCharacter>,
    #[serde(skip)]
    twist_character: DirichletCharacter,
}

impl TheoremCase {
    pub fn new<S: AsRef<str>>(constituents: &[S], twist: &str, m: i64) -> Result<Self> {
        if constituents.is_empty() {
            return Err(Error::OutOfRange(
                "at least one constituent is required".into(),
            ));
        }
        if m >= 0 {
            return Err(Error::OutOfRange(format!("m = {m} must be negative")));
        }
        let characters = constituents
            .iter()
            .map(|l| DirichletCharacter::parse_label(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let chi = DirichletCharacter::parse_label(twist)?;
        if !chi.is_even() {
            return Err(Error::OutOfRange(format!("twist {twist} is not even")));
        }
        Ok(TheoremCase {
            level: characters.iter().fold(1, |a, c| lcm(a, c.modulus())),
            constituents: characters.iter().map(DirichletCharacter::label).collect(),
            twist: chi.label(),
            m,
            characters,
            twist_character: chi,
        })
    }

    pub fn dimension(&self) -> usize {
        self.characters.len()
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn twist_character(&self) -> &DirichletCharacter {
        &self.twist_character
    }

    pub fn criticality(&self) -> CriticalityVerdict {
        classify_criticality(ParitySignature::of(&self.characters), self.m).expect("m < 0")
    }

    fn primitive_constituents(&self) -> Vec<DirichletCharacter> {
        self.characters
            .iter()
            .map(DirichletCharacter::primitivize)
            .collect()
    }

    fn primitive_twist(&self) -> DirichletCharacter {
        self.twist_character.primitivize()
    }

    /// lcm of the orders of χ and every χ_j: Q(ζ_L) contains Q(χ_ρ, χ).
    fn value_level(&self) -> u64 {
        self.characters
            .iter()
            .fold(self.twist_character.order(), |a, c| lcm(a, c.order()))
    }

    /// lcm of the value level and every conductor involved, where the Gauss
    /// sums in R live before rewriting.
    pub fn natural_level(&self) -> u64 {
        let chi = self.primitive_twist();
        self.primitive_constituents()
            .iter()
            .fold(lcm(self.value_level(), chi.conductor()), |a, c| {
                lcm(lcm(a, c.conductor()), chi.twist(c).conductor())
            })
    }

    /// Whether σ_d fixes the values of χ and of χ_ρ = Σ χ_j. The latter
    /// holds iff d permutes the constituents as a multiset.
    fn fixes_field(&self, d: u64) -> bool {
        let ord = self.twist_character.order();
        if d % ord != 1 % ord {
            return false;
        }
        let mut before: Vec<String> = self.constituents.clone();
        let mut after: Vec<String> = self
            .characters
            .iter()
            .map(|c| c.power(d as i64).expect("coprime").label())
            .collect();
        before.sort();
        after.sort();
        before == after
    }
}

/// A Galois element paired with whether it fixes the tested number.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateEntry {
    pub level: u64,
    pub exponent: u64,
    pub fixed: bool,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Degenerate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstituentValues {
    pub label: String,
    pub twisted_label: String,
    /// τ(χ_j)·L(χ̄_j, m)
    pub carrier: CycNumber,
    pub twisted_carrier: CycNumber,
    /// L(χ_j, 1−m)/π^{1−m}
    pub l_over_pi_power: CycNumber,
    pub twisted_l_over_pi_power: CycNumber,
    /// E(χχ_j)/(τ(χ)E(χ_j))
    pub ratio_factor: CycNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericConfirmation {
    pub numeric: [f64; 2],
    pub exact: [f64; 2],
    pub relative_residual: f64,
    pub passed: bool,
}

/// The all-trivial-subgroup instance of the Brauer identity: χ_ρ as Σ of
/// characters induced from the whole group, and the Gauss-sum quotient
/// Π τ(χ)^{n_i} / τ(χ)^dim.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityWitness {
    pub terms: Vec<String>,
    pub coefficient_sum: i64,
    pub dimension: usize,
    pub reconstructs: bool,
    pub tau_quotient: CycNumber,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub case: TheoremCase,
    pub criticality: CriticalityVerdict,
    pub status: Status,
    pub convention: &'static str,
    pub constituents: Vec<ConstituentValues>,
    pub tau_power: Option<CycNumber>,
    /// Π c(χχ_j) / Π c(χ_j)
    pub alpha_equivalent: Option<CycNumber>,
    pub sign_vector: Vec<i8>,
    pub ratio: Option<CycNumber>,
    pub certificate: Vec<CertificateEntry>,
    pub gauss_ratio_fixed: Option<bool>,
    pub functional_equation: Vec<FunctionalEquationCheck>,
    pub numeric: Option<NumericConfirmation>,
    pub identity_witness: Option<IdentityWitness>,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Default)]
struct Caches {
    gauss_raw: RwLock<HashMap<(String, String), CycNumber>>,
    gauss_reduced: RwLock<HashMap<(String, String), CycNumber>>,
    factor: RwLock<HashMap<(String, String, i64), CycNumber>>,
    numeric: RwLock<HashMap<(String, i64), Complex64>>,
    functional:
        RwLock<HashMap<(String, i64), std::result::Result<FunctionalEquationCheck, String>>>,
    bridge: RwLock<HashMap<Vec<String>, bool>>,
    values: RwLock<HashMap<(String, String, i64), ConstituentValues>>,
    gauss_fixed: RwLock<HashMap<(String, String), bool>>,
}

fn caches() -> &'static Caches {
    static CACHES: OnceLock<Caches> = OnceLock::new();
    CACHES.get_or_init(Caches::default)
}

fn memo<K: Hash + Eq + Clone, V: Clone>(
    map: &RwLock<HashMap<K, V>>,
    key: K,
    compute: impl FnOnce() -> V,
) -> V {
    if let Some(v) = map.read().expect("poisoned").get(&key) {
        return v.clone();
    }
    let v = compute();
    map.write()
        .expect("poisoned")
        .entry(key)
        .or_insert(v)
        .clone()
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// c(ψ) for a primitive ψ at s = 1 − m.
pub fn normalization(psi: &DirichletCharacter, m: i64) -> CycNumber {
    let n = (1 - m) as u32;
    let delta = u32::from(!psi.is_even());
    let f = BigInt::from(psi.conductor());
    let sign = if ((n - delta) / 2) % 2 == 0 { 1 } else { -1 };
    let r = rat(
        BigInt::from(sign) * BigInt::from(2).pow(n - 1) * n,
        f.pow(n) * factorial(n),
    );
    let i_power = if delta == 1 {
        CycNumber::root_of_unity(4, 3)
    } else {
        CycNumber::one(1)
    };
    i_power.scale(&r)
}

/// τ(ψ)·L(ψ̄, m) for the primitive form ψ of `chi`.
pub fn algebraic_carrier(chi: &DirichletCharacter, m: i64) -> Result<CycNumber> {
    let psi = chi.primitivize();
    Ok(tau(&psi).mul(&l_value_nonpositive(&psi.conj(), m)?))
}

/// L(ψ, 1−m)/π^{1−m} exactly, for ψ primitive with L(ψ̄, m) ≠ 0.
pub fn l_value_over_pi_power(chi: &DirichletCharacter, m: i64) -> Result<CycNumber> {
    let psi = chi.primitivize();
    Ok(normalization(&psi, m).mul(&algebraic_carrier(&psi, m)?))
}

/// The carriers A(ψ, m) of each (optionally twisted) primitive constituent.
pub fn l_value_at_one_minus_m(
    constituents: &[DirichletCharacter],
    twist: Option<&DirichletCharacter>,
    m: i64,
) -> Result<Vec<CycNumber>> {
    let verdict = classify_criticality(ParitySignature::of(constituents), m)?;
    let twist_even = twist.map_or(true, DirichletCharacter::is_even);
    if !verdict.critical || !twist_even {
        return Err(Error::NotCritical(m));
    }
    constituents
        .iter()
        .map(|c| {
            let psi = match twist {
                Some(t) => t.twist(c),
                None => c.primitivize(),
            };
            algebraic_carrier(&psi, m)
        })
        .collect()
}

/// τ(χψ)/(τ(χ)τ(ψ)) at its natural level, using τ(φ)⁻¹ = φ(−1)τ(φ̄)/f.
fn gauss_ratio_raw(chi: &DirichletCharacter, psi: &DirichletCharacter) -> CycNumber {
    memo(&caches().gauss_raw, (chi.label(), psi.label()), || {
        let inv = |phi: &DirichletCharacter| {
            let t = tau(&phi.conj());
            let s = if phi.is_even() { 1 } else { -1 };
            t.scale(&rat(s, phi.conductor()))
        };
        tau(&chi.twist(psi)).mul(&inv(chi)).mul(&inv(psi))
    })
}

/// τ(χψ)/(τ(χ)τ(ψ)) rewritten at level lcm(ord χ, ord ψ) when possible.
pub fn gauss_ratio(chi: &DirichletCharacter, psi: &DirichletCharacter) -> CycNumber {
    let chi = chi.primitivize();
    let psi = psi.primitivize();
    memo(&caches().gauss_reduced, (chi.label(), psi.label()), || {
        let raw = gauss_ratio_raw(&chi, &psi);
        let small = lcm(chi.order(), psi.order());
        let target = gcd(small, raw.level());
        raw.descend(target).unwrap_or(raw)
    })
}

/// E(χψ)/(τ(χ)E(ψ)) = (f_ψ/f_{χψ})ⁿ · τ-ratio · L(conj χψ, m)/L(ψ̄, m).
fn ratio_factor(chi: &DirichletCharacter, psi: &DirichletCharacter, m: i64) -> Result<CycNumber> {
    let key = (chi.label(), psi.label(), m);
    if let Some(v) = caches().factor.read().expect("poisoned").get(&key) {
        return Ok(v.clone());
    }
    let twisted = chi.twist(psi);
    let top = l_value_nonpositive(&twisted.conj(), m)?;
    let bottom = l_value_nonpositive(&psi.conj(), m)?;
    if top.is_zero() || bottom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let c = normalization(&twisted, m).div(&normalization(psi, m))?;
    let v = c.mul(&gauss_ratio(chi, psi)).mul(&top).mul(&bottom.inv()?);
    let v = v
        .descend(gcd(lcm(chi.order(), psi.order()), v.level()))
        .unwrap_or(v);
    Ok(memo(&caches().factor, key, || v))
}

/// R for a critical case. Fails with `DivisionByZero` when some
/// constituent L-value vanishes at m.
pub fn theorem_ratio(case: &TheoremCase) -> Result<CycNumber> {
    if !case.criticality().critical {
        return Err(Error::NotCritical(case.m));
    }
    let chi = case.primitive_twist();
    let mut r = CycNumber::one(1);
    for psi in case.primitive_constituents() {
        r = r.mul(&ratio_factor(&chi, &psi, case.m)?);
    }
    Ok(r)
}

/// Greedy generators, in increasing order, of the subgroup of (Z/M)^*
/// cut out by `keep`, which must be closed under multiplication.
fn subgroup_generators(level: u64, mut keep: impl FnMut(u64) -> bool) -> Vec<u64> {
    let m = level as usize;
    let mut inside = vec![false; m.max(1)];
    inside[1 % m.max(1)] = true;
    let mut members = vec![1 % level.max(1)];
    let mut gens = Vec::new();
    for d in 2..level {
        if inside[d as usize] || gcd(d, level) != 1 || !keep(d) {
            continue;
        }
        gens.push(d);
        let mut i = 0;
        while i < members.len() {
            for &g in &gens {
                let y = members[i] * g % level;
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}

/// Generators of Gal(Q(ζ_M)/Q(χ_ρ, χ)) for a multiple M of the value level.
pub fn fixing_generators(case: &TheoremCase, level: u64) -> Result<Vec<GaloisElement>> {
    let l = case.value_level();
    if level % l != 0 {
        return Err(Error::LevelMismatch(l, level));
    }
    let mut verdict: HashMap<u64, bool> = HashMap::new();
    subgroup_generators(level, |d| {
        *verdict
            .entry(d % l)
            .or_insert_with(|| case.fixes_field(d % l))
    })
    .into_iter()
    .map(|d| GaloisElement::new(level, d as i64))
    .collect()
}

/// Tests R against each generator of Gal(Q(ζ_M)/Q(χ_ρ, χ)), where M is
/// the natural level of the case (or R's level, if larger). σ_d acts on R
/// through its restriction to R's own level. All entries true certifies
/// R ∈ Q(χ_ρ, χ).
pub fn membership_certificate(r: &CycNumber, case: &TheoremCase) -> Result<Vec<CertificateEntry>> {
    let level = lcm(r.level(), case.natural_level());
    fixing_generators(case, level)?
        .into_iter()
        .map(|sigma| {
            let own = GaloisElement::new(r.level(), (sigma.exponent() % r.level()) as i64)?;
            Ok(CertificateEntry {
                level,
                exponent: sigma.exponent(),
                fixed: r.galois_apply(&own)? == *r,
            })
        })
        .collect()
}

/// For each constituent ψ and each σ_d fixing χ, checks
/// σ_d(T(ψ)) = (χ·σψ)‾(d)/(χ̄(d)·(σψ)‾(d)) · T(σψ) with
/// T(ψ) = τ(χψ)/(τ(χ)τ(ψ)); then checks Π T(χ_j) is fixed by
/// Gal(·/Q(χ_ρ, χ)).
pub fn gauss_ratio_fixedness_check(case: &TheoremCase) -> Result<bool> {
    let chi = case.primitive_twist();
    for psi in case.primitive_constituents() {
        let ok = memo(&caches().gauss_fixed, (chi.label(), psi.label()), || {
            gauss_ratio_equivariant(&chi, &psi).unwrap_or(false)
        });
        if !ok {
            return Ok(false);
        }
    }
    let product = case
        .primitive_constituents()
        .iter()
        .fold(CycNumber::one(1), |acc, psi| {
            acc.mul(&gauss_ratio(&chi, psi))
        });
    Ok(membership_certificate(&product, case)?
        .iter()
        .all(|e| e.fixed))
}

fn gauss_ratio_equivariant(chi: &DirichletCharacter, psi: &DirichletCharacter) -> Result<bool> {
    let ord = chi.order();
    let raw = gauss_ratio_raw(chi, psi);
    let level = raw.level();
    for d in subgroup_generators(level, |d| d % ord == 1 % ord) {
        let sigma = GaloisElement::new(level, d as i64)?;
        let moved = psi.power(d as i64)?;
        let d = d as i64;
        let scalar = chi
            .twist(&moved)
            .conj()
            .evaluate(d)
            .mul(&chi.evaluate(d))
            .mul(&moved.evaluate(d));
        let rhs = scalar.mul(&gauss_ratio_raw(chi, &moved));
        if raw.galois_apply(&sigma)? != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn numeric_l(psi: &DirichletCharacter, n: i64) -> Result<Complex64> {
    let key = (psi.label(), n);
    if let Some(v) = caches().numeric.read().expect("poisoned").get(&key) {
        return Ok(*v);
    }
    let v = l_value_numeric(psi, n as f64)?;
    Ok(memo(&caches().numeric, key, || v))
}

fn cached_functional_check(
    psi: &DirichletCharacter,
    m: i64,
) -> std::result::Result<FunctionalEquationCheck, String> {
    memo(&caches().functional, (psi.label(), m), || {
        functional_equation_check(psi, m).map_err(|e| e.to_string())
    })
}

/// Whether Σ_j Ind_G^G(χ_j) rebuilds χ_ρ on (Z/N)^*.
fn bridge_reconstructs(case: &TheoremCase, lifted: &[String]) -> Result<bool> {
    let mut key = lifted.to_vec();
    key.sort();
    if let Some(&ok) = caches().bridge.read().expect("poisoned").get(&key) {
        return Ok(ok);
    }
    let refs: Vec<&str> = lifted.iter().map(String::as_str).collect();
    let bridge = abelian_character_bridge(case.level, &refs)?;
    let group = bridge.units.group.clone();
    let whole = group.whole();
    let mut rebuilt = ClassFunction::zero(group.clone());
    for c in &bridge.constituents {
        let psi: Vec<CycNumber> = whole
            .elements()
            .iter()
            .map(|&g| c.evaluate(bridge.units.units[g] as i64))
            .collect();
        rebuilt = rebuilt.add(&induce(&group, &whole, &psi)?);
    }
    let ok = rebuilt.values() == bridge.character.values();
    Ok(memo(&caches().bridge, key, || ok))
}

fn identity_witness(case: &TheoremCase) -> Result<IdentityWitness> {
    let lifted: Vec<String> = case
        .characters
        .iter()
        .map(|c| c.lift_to(case.level).map(|l| l.label()))
        .collect::<Result<_>>()?;
    let reconstructs = bridge_reconstructs(case, &lifted)?;
    let dimension = case.dimension();
    let coefficient_sum = lifted.len() as i64;
    let chi = case.primitive_twist();
    let t = tau(&chi);
    let t_inv = tau(&chi.conj()).scale(&rat(1, chi.conductor()));
    let tau_quotient = t
        .pow(coefficient_sum as u32)
        .mul(&t_inv.pow(dimension as u32));
    Ok(IdentityWitness {
        terms: lifted.iter().map(|l| format!("1 * Ind_G^G({l})")).collect(),
        coefficient_sum,
        dimension,
        reconstructs,
        holds: reconstructs
            && coefficient_sum == dimension as i64
            && tau_quotient == CycNumber::one(1),
        tau_quotient,
    })
}

fn constituent_values(
    chi: &DirichletCharacter,
    psi: &DirichletCharacter,
    m: i64,
) -> Result<ConstituentValues> {
    let key = (chi.label(), psi.label(), m);
    if let Some(v) = caches().values.read().expect("poisoned").get(&key) {
        return Ok(v.clone());
    }
    let twisted = chi.twist(psi);
    let v = ConstituentValues {
        label: psi.label(),
        twisted_label: twisted.label(),
        carrier: algebraic_carrier(psi, m)?,
        twisted_carrier: algebraic_carrier(&twisted, m)?,
        l_over_pi_power: l_value_over_pi_power(psi, m)?,
        twisted_l_over_pi_power: l_value_over_pi_power(&twisted, m)?,
        ratio_factor: ratio_factor(chi, psi, m)?,
    };
    Ok(memo(&caches().values, key, || v))
}

fn skeleton(case: &TheoremCase, verdict: CriticalityVerdict, status: Status) -> VerificationReport {
    VerificationReport {
        case: case.clone(),
        criticality: verdict,
        status,
        convention: CONVENTION,
        constituents: Vec::new(),
        tau_power: None,
        alpha_equivalent: None,
        sign_vector: Vec::new(),
        ratio: None,
        certificate: Vec::new(),
        gauss_ratio_fixed: None,
        functional_equation: Vec::new(),
        numeric: None,
        identity_witness: None,
        error: None,
        pass: false,
    }
}

/// Runs every check on one case. Never panics on mathematical failure;
/// problems are recorded in the report.
pub fn verify_case(case: &TheoremCase) -> VerificationReport {
    let verdict = case.criticality();
    if !verdict.critical {
        let mut r = skeleton(case, verdict, Status::Skipped);
        r.error = Some(format!("m = {} is not critical", case.m));
        return r;
    }
    match build_report(case, verdict) {
        Ok(r) => r,
        Err(Error::DivisionByZero) => {
            let mut r = skeleton(case, verdict, Status::Degenerate);
            r.error = Some("a constituent L-value vanishes at m".into());
            r
        }
        Err(e) => {
            let mut r = skeleton(case, verdict, Status::Fail);
            r.error = Some(e.to_string());
            r
        }
    }
}

fn build_report(case: &TheoremCase, verdict: CriticalityVerdict) -> Result<VerificationReport> {
    let m = case.m;
    let n = 1 - m;
    let chi = case.primitive_twist();
    let mut report = skeleton(case, verdict, Status::Fail);

    let mut alpha = CycNumber::one(1);
    let mut numeric = Complex64::new(1.0, 0.0);
    let mut untwisted_checks = Vec::new();
    let mut twisted_checks = Vec::new();
    for psi in case.primitive_constituents() {
        let twisted = chi.twist(&psi);
        alpha = alpha.mul(&normalization(&twisted, m).div(&normalization(&psi, m))?);
        numeric *= numeric_l(&twisted, n)? / numeric_l(&psi, n)?;
        untwisted_checks.push(cached_functional_check(&psi, m));
        twisted_checks.push(cached_functional_check(&twisted, m));
        report.constituents.push(constituent_values(&chi, &psi, m)?);
    }
    let dim = case.dimension() as u32;
    let tau_chi = tau(&chi);
    numeric /= tau_chi.embed_complex().powu(dim);
    report.tau_power = Some(tau_chi.pow(dim));
    report.alpha_equivalent = Some(alpha);

    let mut fe_ok = true;
    for check in untwisted_checks.into_iter().chain(twisted_checks) {
        match check {
            Ok(c) => {
                fe_ok &= c.passed();
                report.sign_vector.push(c.sign);
                report.functional_equation.push(c);
            }
            Err(e) => {
                fe_ok = false;
                report.error = Some(e);
            }
        }
    }

    let r = theorem_ratio(case)?;
    let exact = r.embed_complex();
    let relative_residual = (exact - numeric).norm() / numeric.norm();
    let numeric_ok = relative_residual <= NUMERIC_TOLERANCE;
    report.numeric = Some(NumericConfirmation {
        numeric: [numeric.re, numeric.im],
        exact: [exact.re, exact.im],
        relative_residual,
        passed: numeric_ok,
    });
    report.certificate = membership_certificate(&r, case)?;
    let gauss_ok = gauss_ratio_fixedness_check(case)?;
    report.gauss_ratio_fixed = Some(gauss_ok);
    let witness = identity_witness(case)?;
    let witness_ok = witness.holds;
    report.identity_witness = Some(witness);

    report.pass = !r.is_zero()
        && report.certificate.iter().all(|e| e.fixed)
        && gauss_ok
        && fe_ok
        && numeric_ok
        && witness_ok;
    report.status = if report.pass {
        Status::Pass
    } else {
        Status::Fail
    };
    report.ratio = Some(r);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rational;

    fn label(s: &str) -> DirichletCharacter {
        DirichletCharacter::parse_label(s).unwrap()
    }

    #[test]
    fn normalization_matches_known_values() {
        let zeta2 = l_value_over_pi_power(&label("1.0"), -1).unwrap();
        assert_eq!(zeta2, CycNumber::from_rational(1, rational(1, 6)));
        let catalan_like = l_value_over_pi_power(&label("4.1"), -2).unwrap();
        assert_eq!(catalan_like, CycNumber::from_rational(1, rational(1, 32)));
        for (lab, m) in [
            ("5.2", -1),
            ("3.1", -2),
            ("7.1", -4),
            ("8.2", -3),
            ("8.3", -2),
            ("12.3", -1),
        ] {
            let psi = label(lab).primitivize();
            let exact = l_value_over_pi_power(&psi, m).unwrap().embed_complex();
            let n = (1 - m) as f64;
            let numeric = l_value_numeric(&psi, n).unwrap() / std::f64::consts::PI.powf(n);
            assert!(
                (exact - numeric).norm() < 1e-10 * numeric.norm(),
                "{lab} at {m}"
            );
        }
    }

    #[test]
    fn carrier_examples() {
        let c = l_value_at_one_minus_m(&[label("1.0")], None, -1).unwrap();
        assert_eq!(c, vec![CycNumber::from_rational(1, rational(-1, 12))]);
        let sqrt5 = crate::gauss::sqrt_integer(5);
        let expected = sqrt5.scale(&rational(-2, 5));
        let c = l_value_at_one_minus_m(&[label("5.2")], None, -1).unwrap();
        assert_eq!(c, vec![expected.clone()]);
        let c = l_value_at_one_minus_m(&[label("1.0")], Some(&label("5.2")), -1).unwrap();
        assert_eq!(c, vec![expected]);
        assert!(matches!(
            l_value_at_one_minus_m(&[label("5.2")], None, -2),
            Err(Error::NotCritical(-2))
        ));
    }

    #[test]
    fn ratio_examples() {
        let case = TheoremCase::new(&["1.0"], "5.2", -1).unwrap();
        assert_eq!(
            theorem_ratio(&case).unwrap(),
            CycNumber::from_rational(1, rational(24, 125))
        );
        let case = TheoremCase::new(&["5.1", "5.3"], "1.0", -2).unwrap();
        assert_eq!(theorem_ratio(&case).unwrap(), CycNumber::one(1));
        let a = TheoremCase::new(&["5.1", "5.3"], "8.2", -2).unwrap();
        let b = TheoremCase::new(&["5.3", "5.1"], "8.2", -2).unwrap();
        assert_eq!(theorem_ratio(&a).unwrap(), theorem_ratio(&b).unwrap());
        assert!(TheoremCase::new(&["5.2"], "4.1", -1).is_err());
        assert!(TheoremCase::new(&["5.2"], "5.2", 0).is_err());
    }

    #[test]
    fn certificate_examples() {
        let case = TheoremCase::new(&["1.0"], "1.0", -1).unwrap();
        let cert = membership_certificate(&CycNumber::root_of_unity(5, 1), &case).unwrap();
        assert!(cert.iter().any(|e| !e.fixed));
        let cert =
            membership_certificate(&CycNumber::from_rational(5, rational(3, 7)), &case).unwrap();
        assert!(cert.iter().all(|e| e.fixed));

        let pair = TheoremCase::new(&["5.1", "5.3"], "8.2", -2).unwrap();
        let r = theorem_ratio(&pair).unwrap();
        let cert = membership_certificate(&r, &pair).unwrap();
        assert!(!cert.is_empty() && cert.iter().all(|e| e.fixed));
        assert!(gauss_ratio_fixedness_check(&pair).unwrap());
    }

    #[test]
    fn gauss_fixedness_examples() {
        for (rho, twist, m) in [(vec!["1.0"], "5.2", -1), (vec!["5.1", "5.3"], "8.2", -2)] {
            let case = TheoremCase::new(&rho, twist, m).unwrap();
            assert!(gauss_ratio_fixedness_check(&case).unwrap());
        }
        let t = gauss_ratio(&label("4.1"), &label("3.1"));
        assert!(t.as_rational().is_some());
    }

    #[test]
    fn full_reports() {
        let case = TheoremCase::new(&["1.0"], "5.2", -1).unwrap();
        let report = verify_case(&case);
        assert_eq!(report.status, Status::Pass, "{:?}", report.error);
        let skipped = verify_case(&TheoremCase::new(&["5.2"], "5.2", -2).unwrap());
        assert_eq!(skipped.status, Status::Skipped);
        let mixed = verify_case(&TheoremCase::new(&["5.2", "4.1"], "5.2", -1).unwrap());
        assert_eq!(mixed.status, Status::Skipped);
    }
}
