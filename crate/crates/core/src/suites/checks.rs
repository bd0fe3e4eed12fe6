//! The registered inequality checks.
//!
//! Every check has a generator that fills an [`Instance`] from a seeded
//! stream and an evaluator that turns an instance into margins. Spectra are
//! taken from factored Gram forms, `lambda(G* G) = sigma(G)^2`, so that small
//! eigenvalues keep their relative accuracy.

use crate::error::{Error, Result};
use crate::functional::{probe_log_fn, FunctionalSpec, Grid, ProbeReport, Variant};
use crate::linalg::{expm, expm_hermitian, hermitian_eigen, operator_norm, ComplexMatrix, I};
use crate::major::{majorize_spectra, MajorizationReport, Relation};
use crate::matfun::{abs_power, direct_sum, schur_product, PsdMatrix};
use crate::norms::{singulars, SymmetricNorm};
use crate::posmap::{schur_multiplier, spectral_components, KrausMap};
use crate::suites::catalog::{e_concave_catalog, e_convex_catalog};
use crate::suites::gen::{Gen, Profile};
use crate::suites::instance::{Constraint, Instance, Part};
use crate::tolerance::{MarginMode, Tolerance};

/// Margins of one evaluated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Nonnegative when the inequality holds; the verdict allows `-tol`.
    pub margins: Vec<f64>,
    pub verdict: bool,
    /// `rhs - lhs` for scalar inequalities.
    pub slack: Option<f64>,
    /// Margin at `k = n` for relations with determinant equality.
    pub det_margin: Option<f64>,
}

impl Evaluation {
    fn from_report(r: &MajorizationReport, tol: &Tolerance) -> Self {
        let margins = r
            .k_margins
            .iter()
            .zip(&r.abs_margins)
            .map(|(&l, &a)| tol.effective_margin(l, a))
            .collect();
        let det_margin = match (r.relation, r.k_margins.last(), r.abs_margins.last()) {
            (Relation::Log, Some(&l), Some(&a)) => Some(match tol.mode {
                MarginMode::Absolute if a.abs() < l.abs() => a,
                _ => l,
            }),
            _ => None,
        };
        Evaluation {
            margins,
            verdict: r.verdict,
            slack: None,
            det_margin,
        }
    }

    fn from_margins(margins: Vec<f64>, tol: &Tolerance) -> Self {
        let verdict = margins.iter().all(|&m| m >= -tol.log_margin);
        Evaluation {
            margins,
            verdict,
            slack: None,
            det_margin: None,
        }
    }

    fn from_probe(r: &ProbeReport) -> Self {
        Evaluation {
            margins: r.midpoint_checks.iter().map(|c| -c.residual).collect(),
            verdict: r.verdict,
            slack: None,
            det_margin: None,
        }
    }

    fn with_slack(mut self, slack: f64) -> Self {
        self.slack = Some(slack);
        self
    }

    fn combine(mut self, other: Evaluation) -> Self {
        self.margins.extend(other.margins);
        self.verdict &= other.verdict;
        self.slack = self.slack.or(other.slack);
        self.det_margin = self.det_margin.or(other.det_margin);
        self
    }

    pub fn worst_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

type GenFn = fn(&mut Gen, &mut Instance);
type EvalFn = fn(&Instance, &Tolerance) -> Result<Evaluation>;

/// A registry entry.
pub struct CheckDef {
    pub id: &'static str,
    pub statement: &'static str,
    /// The check exhibits a failing statement; a false verdict is success.
    pub expects_violation: bool,
    /// The relation includes equality of determinants.
    pub det_equality: bool,
    pub profiles: &'static [Profile],
    pub constraints: &'static [(&'static str, Constraint)],
    pub generate: GenFn,
    pub evaluate: EvalFn,
}

impl std::fmt::Debug for CheckDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckDef").field("id", &self.id).finish()
    }
}

impl CheckDef {
    /// The instance for `(seed, dim)`, regenerated from scratch.
    pub fn instance(&self, seed: u64, dim: usize) -> Instance {
        let mut g = Gen::new(crate::suites::gen::stream_seed(seed, self.id, dim));
        let profile = g.pick(self.profiles);
        let mut inst = Instance::new(self.id, seed, dim, profile);
        (self.generate)(&mut g, &mut inst);
        inst
    }
}

/// `tol` with the margin mode for the instance's profile: absolute margins
/// for near-singular and rank-deficient inputs, log margins otherwise.
pub fn instance_tolerance(inst: &Instance, tol: &Tolerance) -> Tolerance {
    let mode = match inst.profile {
        Profile::WellConditioned => MarginMode::Log,
        Profile::NearSingular | Profile::RankDeficient => MarginMode::Absolute,
    };
    tol.with_mode(mode)
}

// ---- spectra helpers ----

fn pw(a: &PsdMatrix, s: f64) -> ComplexMatrix {
    a.apply_on_range(|x| x.powf(s))
}

/// `lambda(G* G)`, decreasing, of length `cols(G)`.
fn gram(g: &ComplexMatrix) -> Result<Vec<f64>> {
    let c = g.cols();
    Ok(singulars(g)?.into_iter().take(c).map(|x| x * x).collect())
}

fn powv(v: Vec<f64>, e: f64) -> Vec<f64> {
    v.into_iter()
        .map(|x| if x > 0.0 { x.powf(e) } else { 0.0 })
        .collect()
}

fn scalev(v: Vec<f64>, c: f64) -> Vec<f64> {
    v.into_iter().map(|x| x * c).collect()
}

fn stack(blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let cols = blocks.first().map_or(0, |b| b.cols());
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.set_block(r, 0, b);
        r += b.rows();
    }
    out
}

fn abs_pow(m: &ComplexMatrix, e: f64) -> Result<ComplexMatrix> {
    Ok(abs_power(m, e)?.into_matrix())
}

fn hermitian_values(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

fn re_part(m: &ComplexMatrix) -> ComplexMatrix {
    m.hermitian_part()
}

fn majorize(rel: Relation, x: &[f64], y: &[f64], tol: &Tolerance) -> Result<Evaluation> {
    Ok(Evaluation::from_report(&majorize_spectra(rel, x, y, tol)?, tol))
}

/// Margin of `lhs <= rhs`: the log-ratio when both are positive, otherwise
/// the difference relative to the larger magnitude.
fn ineq_margin(lhs: f64, rhs: f64) -> f64 {
    if lhs > 0.0 && rhs > 0.0 {
        (rhs / lhs).ln()
    } else {
        (rhs - lhs) / lhs.abs().max(rhs.abs()).max(1.0)
    }
}

/// Margin of `log lhs <= log rhs` given both logs.
fn log_margin(lhs: f64, rhs: f64) -> f64 {
    if lhs == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        rhs - lhs
    }
}

/// Operator, trace, Schatten-2, Ky Fan and normalized Ky Fan at `n / 2`.
pub fn five_norms(n: usize) -> [SymmetricNorm; 5] {
    let k = (n / 2).max(1);
    [
        SymmetricNorm::Operator,
        SymmetricNorm::Trace,
        SymmetricNorm::Schatten(2.0),
        SymmetricNorm::KyFan(k),
        SymmetricNorm::NormalizedKyFan(k),
    ]
}

// ---- generator helpers ----

const PS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
const ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

fn put_psd(g: &mut Gen, inst: &mut Instance, name: &str) {
    let m = g.psd(inst.dim, inst.profile);
    inst.set(name, Part::Matrix(m));
}

fn put_normal(g: &mut Gen, inst: &mut Instance, name: &str) {
    let m = g.normal_matrix(inst.dim, inst.profile);
    inst.set(name, Part::Matrix(m));
}

fn put_p(g: &mut Gen, inst: &mut Instance) {
    inst.set("p", Part::Scalar(g.pick(&PS)));
}

fn put_alpha(g: &mut Gen, inst: &mut Instance) {
    inst.set("alpha", Part::Scalar(g.pick(&ALPHAS)));
}

fn put_map(g: &mut Gen, inst: &mut Instance) {
    let k = 1 + g.index(3);
    let map = g.subunital_map(inst.dim, inst.dim, k);
    inst.set("Phi", Part::Map(map));
}

fn gen_ab_p(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_psd(g, inst, "B");
    put_p(g, inst);
}

fn gen_lieb_thirring(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_psd(g, inst, "B");
    inst.set("p", Part::Scalar(g.pick(&[1.0, 2.0, 3.0])));
}

fn gen_xy_normal(g: &mut Gen, inst: &mut Instance) {
    put_normal(g, inst, "X");
    put_normal(g, inst, "Y");
}

fn gen_a_x_normal(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_normal(g, inst, "X");
    put_p(g, inst);
}

fn gen_z_general(g: &mut Gen, inst: &mut Instance) {
    inst.set("Z", Part::Matrix(g.general(inst.dim, 1.0)));
}

fn gen_abz_contraction(g: &mut Gen, inst: &mut Instance) {
    gen_ab_p(g, inst);
    inst.set("Z", Part::Matrix(g.contraction(inst.dim)));
}

fn gen_cor1(g: &mut Gen, inst: &mut Instance) {
    gen_abz_contraction(g, inst);
    put_alpha(g, inst);
}

fn gen_abz_expansive(g: &mut Gen, inst: &mut Instance) {
    gen_ab_p(g, inst);
    inst.set("Z", Part::Matrix(g.expansive(inst.dim)));
}

fn gen_main_normal_map(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_normal(g, inst, "N");
    put_map(g, inst);
    put_p(g, inst);
}

fn gen_subunital_psd(g: &mut Gen, inst: &mut Instance) {
    gen_ab_p(g, inst);
    put_map(g, inst);
}

fn gen_schur_mask(g: &mut Gen, inst: &mut Instance) {
    gen_ab_p(g, inst);
    inst.set("C", Part::Matrix(g.diag_bounded_psd(inst.dim)));
}

fn gen_m_normals(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    let m = g.pick(&[2usize, 3]);
    let xs = (0..m).map(|_| g.normal_matrix(inst.dim, inst.profile)).collect();
    inst.set("X", Part::Matrices(xs));
    put_p(g, inst);
}

fn gen_cartesian(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    inst.set("X", Part::Matrix(g.hermitian(inst.dim)));
    inst.set("Y", Part::Matrix(g.hermitian(inst.dim)));
    put_p(g, inst);
}

fn gen_thompson(g: &mut Gen, inst: &mut Instance) {
    inst.set("A", Part::Matrix(g.general(inst.dim, 1.0)));
    inst.set("B", Part::Matrix(g.general(inst.dim, 1.0)));
}

fn gen_st_hermitian(g: &mut Gen, inst: &mut Instance) {
    inst.set("S", Part::Matrix(g.hermitian(inst.dim).scale_real(2.0)));
    inst.set("T", Part::Matrix(g.hermitian(inst.dim).scale_real(2.0)));
}

fn gen_lie_trotter(g: &mut Gen, inst: &mut Instance) {
    inst.set("H", Part::Matrix(g.hermitian(inst.dim)));
    inst.set("K", Part::Matrix(g.hermitian(inst.dim)));
}

fn gen_a_t(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    inst.set("T", Part::Matrix(g.general(inst.dim, 1.0)));
    put_p(g, inst);
}

fn gen_schur_normals(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    gen_xy_normal(g, inst);
    put_p(g, inst);
}

fn gen_loewner(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "B");
    let c = g.uniform(0.05, 1.0);
    let d = g.psd(inst.dim, Profile::WellConditioned).scale_real(c);
    inst.set("D", Part::Matrix(d));
}

fn gen_kosaki(g: &mut Gen, inst: &mut Instance) {
    inst.set("X", Part::Matrix(g.with_singulars(inst.dim, inst.profile)));
    inst.set("Y", Part::Matrix(g.with_singulars(inst.dim, inst.profile)));
    inst.set("p", Part::Scalar(g.pick(&[1.5, 2.0, 3.0])));
    put_alpha(g, inst);
}

fn gen_littlewood_scalar(g: &mut Gen, inst: &mut Instance) {
    inst.set("a", Part::Vector(g.tuple(inst.dim, 0.1, 3.0)));
    inst.set("w", Part::Vector(g.tuple(inst.dim, 0.1, 1.0)));
    inst.set("p", Part::Scalar(g.uniform(0.2, 3.0)));
    inst.set("q", Part::Scalar(g.uniform(0.2, 3.0)));
    inst.set("theta", Part::Scalar(g.uniform(0.05, 0.95)));
}

fn gen_littlewood_matrix(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A1");
    put_psd(g, inst, "A2");
    inst.set("Z1", Part::Matrix(g.general(inst.dim, 1.0)));
    inst.set("Z2", Part::Matrix(g.general(inst.dim, 1.0)));
    put_alpha(g, inst);
}

fn gen_poslin(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_map(g, inst);
    put_alpha(g, inst);
}

fn gen_exponent_exchange(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_psd(g, inst, "B");
    let w = g.uniform(0.5, 2.0);
    let d1 = g.uniform(0.0, 0.95) * w;
    let d2 = g.uniform(0.0, 1.0) * d1;
    inst.set("w", Part::Scalar(w));
    inst.set("d1", Part::Scalar(d1));
    inst.set("d2", Part::Scalar(d2));
    put_alpha(g, inst);
}

fn gen_det_schur(g: &mut Gen, inst: &mut Instance) {
    put_psd(g, inst, "A");
    put_psd(g, inst, "B");
    inst.set("p", Part::Scalar(2.0));
}

// ---- evaluators ----

fn eval_araki(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, b, p) = (inst.psd("A")?, inst.psd("B")?, inst.exponent("p")?);
    let x = powv(gram(&(&pw(&b, 0.5) * a.matrix()))?, p);
    let y = gram(&(&pw(&b, p / 2.0) * &pw(&a, p)))?;
    majorize(Relation::Log, &x, &y, tol)
}

fn eval_lieb_thirring(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, b, p) = (inst.psd("A")?, inst.psd("B")?, inst.exponent("p")?);
    let x = powv(gram(&(&pw(&b, 0.5) * a.matrix()))?, p);
    let y = gram(&(&pw(&b, p / 2.0) * &pw(&a, p)))?;
    let (lhs, rhs): (f64, f64) = (x.iter().sum(), y.iter().sum());
    Ok(Evaluation::from_margins(vec![ineq_margin(lhs, rhs)], tol).with_slack(rhs - lhs))
}

fn eval_triangle_normal(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (x, y) = (inst.normal("X")?, inst.normal("Y")?);
    let lhs = singulars(&(x.matrix() + y.matrix()))?;
    let rhs = PsdMatrix::project(&(x.abs().matrix() + y.abs().matrix()))?;
    majorize(Relation::WeakLog, &lhs, rhs.values(), tol)
}

fn eval_araki_normal(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, x, p) = (inst.psd("A")?, inst.normal("X")?, inst.exponent("p")?);
    let lhs = powv(singulars(&(&(a.matrix() * x.matrix()) * a.matrix()))?, p);
    let rhs = gram(&(&pw(x.abs(), p / 2.0) * &pw(&a, p)))?;
    majorize(Relation::Log, &lhs, &rhs, tol)
}

fn eval_cohen_exp(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let z = inst.square("Z")?;
    let lhs = singulars(&expm(z)?)?;
    let rhs: Vec<f64> = hermitian_values(&re_part(z))?.into_iter().map(f64::exp).collect();
    majorize(Relation::Log, &lhs, &rhs, tol)
}

/// `sigma(B^{1/2} Z A)` and `sigma(B^{p/2} Z A^p)`.
fn congruence_singulars(inst: &Instance) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let (a, b, z, p) = (inst.psd("A")?, inst.psd("B")?, inst.square("Z")?, inst.exponent("p")?);
    let lhs = singulars(&(&(&pw(&b, 0.5) * z) * a.matrix()))?;
    let rhs = singulars(&(&(&pw(&b, p / 2.0) * z) * &pw(&a, p)))?;
    Ok((lhs, rhs, p))
}

fn eval_cor1_norm(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (lhs, rhs, p) = congruence_singulars(inst)?;
    let alpha = inst.exponent("alpha")?;
    let margins = SymmetricNorm::family(inst.dim)
        .iter()
        .map(|norm| {
            Ok(log_margin(
                norm.log_evaluate_powered(&lhs, 2.0 * alpha * p)?,
                norm.log_evaluate_powered(&rhs, 2.0 * alpha)?,
            ))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Evaluation::from_margins(margins, tol))
}

fn congruence_spectra(inst: &Instance) -> Result<(Vec<f64>, Vec<f64>)> {
    let (lhs, rhs, p) = congruence_singulars(inst)?;
    Ok((powv(lhs, 2.0 * p), powv(rhs, 2.0)))
}

fn eval_striking(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (x, y) = congruence_spectra(inst)?;
    majorize(Relation::WeakLog, &x, &y, tol)
}

fn eval_super_expansive(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (x, y) = congruence_spectra(inst)?;
    majorize(Relation::SuperWeakLog, &x, &y, tol)
}

fn eval_trace_econvex(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (x, y) = congruence_spectra(inst)?;
    let margins = e_convex_catalog()
        .iter()
        .map(|f| ineq_margin(f.trace(&x), f.trace(&y)))
        .collect();
    Ok(Evaluation::from_margins(margins, tol))
}

fn eval_trace_econcave(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (x, y) = congruence_spectra(inst)?;
    let margins = e_concave_catalog()
        .iter()
        .map(|f| ineq_margin(f.trace(&y), f.trace(&x)))
        .collect();
    Ok(Evaluation::from_margins(margins, tol))
}

fn check_map(inst: &Instance, map: &KrausMap) -> Result<()> {
    if map.in_dim() != inst.dim || map.out_dim() != inst.dim {
        return Err(Error::SignatureMismatch(format!(
            "{}: map is {} -> {}, expected {} -> {}",
            inst.check_id,
            map.in_dim(),
            map.out_dim(),
            inst.dim,
            inst.dim
        )));
    }
    if !map.is_sub_unital() {
        return Err(Error::NotSubUnital {
            excess: PsdMatrix::project(&map.unit_image())?.lambda_max() - 1.0,
        });
    }
    Ok(())
}

fn eval_main_normal_map(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, n, p) = (inst.psd("A")?, inst.normal("N")?, inst.exponent("p")?);
    let map = inst.map("Phi")?;
    check_map(inst, map)?;
    let image = map.apply(n.matrix())?;
    let lhs = powv(singulars(&(&(a.matrix() * &image) * a.matrix()))?, p);
    let root = pw(n.abs(), p / 2.0);
    let blocks: Vec<ComplexMatrix> = map.kraus().iter().map(|z| &root * z).collect();
    let rhs = gram(&(&stack(&blocks) * &pw(&a, p)))?;
    majorize(Relation::WeakLog, &lhs, &rhs, tol)
}

/// `(A Phi(B) A)^p` against `A^p Phi(B^p) A^p` for a Kraus map.
fn map_araki(a: &PsdMatrix, b: &PsdMatrix, map: &KrausMap, p: f64, tol: &Tolerance) -> Result<Evaluation> {
    let (bh, bp) = (pw(b, 0.5), pw(b, p / 2.0));
    let lhs: Vec<ComplexMatrix> = map.kraus().iter().map(|z| &bh * z).collect();
    let rhs: Vec<ComplexMatrix> = map.kraus().iter().map(|z| &bp * z).collect();
    let x = powv(gram(&(&stack(&lhs) * a.matrix()))?, p);
    let y = gram(&(&stack(&rhs) * &pw(a, p)))?;
    majorize(Relation::WeakLog, &x, &y, tol)
}

fn eval_subunital_psd(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let map = inst.map("Phi")?;
    check_map(inst, map)?;
    map_araki(&inst.psd("A")?, &inst.psd("B")?, map, inst.exponent("p")?, tol)
}

fn eval_schur_mask(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let c = inst.psd("C")?;
    if let Some(j) = (0..inst.dim).find(|&j| c.matrix()[(j, j)].re > 1.0 + 1e-12) {
        return Err(Error::BadDomain(format!("C[{j},{j}] exceeds one")));
    }
    let map = schur_multiplier(&c)?;
    map_araki(&inst.psd("A")?, &inst.psd("B")?, &map, inst.exponent("p")?, tol)
}

fn eval_m_normals(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, p) = (inst.psd("A")?, inst.exponent("p")?);
    let xs = inst.matrices("X")?;
    let n = inst.dim;
    let mut sum = ComplexMatrix::zeros(n, n);
    let mut roots = Vec::with_capacity(xs.len());
    for x in xs {
        x.require_shape((n, n))?;
        let x = crate::matfun::NormalMatrix::new(x)?;
        sum = &sum + x.matrix();
        roots.push(pw(x.abs(), p / 2.0));
    }
    let lhs = powv(singulars(&(&(a.matrix() * &sum) * a.matrix()))?, p);
    let m = xs.len() as f64;
    let rhs = scalev(gram(&(&stack(&roots) * &pw(&a, p)))?, m.powf(p - 1.0));
    majorize(Relation::WeakLog, &lhs, &rhs, tol)
}

fn eval_cartesian(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, p) = (inst.psd("A")?, inst.exponent("p")?);
    let (x, y) = (inst.hermitian("X")?, inst.hermitian("Y")?);
    let t = &x + &y.scale(I);
    let lhs = powv(singulars(&(&(a.matrix() * &t) * a.matrix()))?, p);
    let roots = [abs_pow(&x, p / 2.0)?, abs_pow(&y, p / 2.0)?];
    let rhs = scalev(gram(&(&stack(&roots) * &pw(&a, p)))?, 2f64.powf(p - 1.0));
    majorize(Relation::WeakLog, &lhs, &rhs, tol)
}

fn eval_thompson_exp(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, b) = (inst.square("A")?, inst.square("B")?);
    let lhs = singulars(&expm(&(a + b))?)?;
    let g = &expm_hermitian(&re_part(b).scale_real(0.5))? * &expm_hermitian(&re_part(a).scale_real(0.5))?;
    majorize(Relation::Log, &lhs, &gram(&g)?, tol)
}

/// `lambda(H + K)` and `lambda(e^{H/2} e^K e^{H/2})`.
fn thompson_spectra(inst: &Instance) -> Result<(Vec<f64>, Vec<f64>)> {
    let (s, t) = (inst.hermitian("S")?, inst.hermitian("T")?);
    let sum = hermitian_values(&(&s + &t))?;
    let g = &expm_hermitian(&t.scale_real(0.5))? * &expm_hermitian(&s.scale_real(0.5))?;
    Ok((sum, gram(&g)?))
}

fn eval_gt_log(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (sum, rhs) = thompson_spectra(inst)?;
    let lhs: Vec<f64> = sum.into_iter().map(f64::exp).collect();
    majorize(Relation::Log, &lhs, &rhs, tol)
}

fn eval_segal(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (sum, rhs) = thompson_spectra(inst)?;
    let lhs = sum[0];
    let rhs = rhs[0].ln();
    Ok(Evaluation::from_margins(vec![log_margin(lhs, rhs)], tol).with_slack(rhs.exp() - lhs.exp()))
}

fn eval_golden_thompson(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (sum, rhs) = thompson_spectra(inst)?;
    let lhs: f64 = sum.into_iter().map(f64::exp).sum();
    let rhs: f64 = rhs.into_iter().sum();
    Ok(Evaluation::from_margins(vec![ineq_margin(lhs, rhs)], tol).with_slack(rhs - lhs))
}

fn eval_emi(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (s, t) = (inst.hermitian("S")?, inst.hermitian("T")?);
    let lhs = singulars(&(&s - &t))?;
    let g = &expm_hermitian(&t.scale_real(-0.5))? * &expm_hermitian(&s.scale_real(0.5))?;
    let mut rhs: Vec<f64> = gram(&g)?.into_iter().map(|x| x.ln().abs()).collect();
    rhs.sort_by(|a, b| b.total_cmp(a));
    let margins = SymmetricNorm::family(inst.dim)
        .iter()
        .map(|norm| {
            Ok(log_margin(
                norm.log_evaluate_powered(&lhs, 1.0)?,
                norm.log_evaluate_powered(&rhs, 1.0)?,
            ))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Evaluation::from_margins(margins, tol))
}

/// Squarings in the Lie product probe; the last step is `n = 2^10`.
pub const LIE_STEPS: u32 = 10;

/// `|| (e^{H/2n} e^{K/n} e^{H/2n})^n - e^{H+K} ||_inf` for `n = 2^j`,
/// `j = 0..=LIE_STEPS`.
pub fn lie_trotter_errors(h: &ComplexMatrix, k: &ComplexMatrix) -> Result<Vec<f64>> {
    let target = expm_hermitian(&(h + k))?;
    (0..=LIE_STEPS)
        .map(|j| {
            let n = (1u64 << j) as f64;
            let eh = expm_hermitian(&h.scale_real(0.5 / n))?;
            let ek = expm_hermitian(&k.scale_real(1.0 / n))?;
            let mut m = &(&eh * &ek) * &eh;
            for _ in 0..j {
                m = &m * &m;
            }
            operator_norm(&(&m - &target))
        })
        .collect()
}

fn eval_lie_trotter(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let errors = lie_trotter_errors(&inst.hermitian("H")?, &inst.hermitian("K")?)?;
    let mut margins: Vec<f64> = errors.windows(2).map(|w| ineq_margin(w[1], w[0])).collect();
    margins.push(ineq_margin(*errors.last().unwrap_or(&0.0), 1e-4));
    Ok(Evaluation::from_margins(margins, tol))
}

fn eval_sym_part(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, t, p) = (inst.psd("A")?, inst.square("T")?, inst.exponent("p")?);
    let s = re_part(t);
    let lhs = powv(singulars(&(&(a.matrix() * &s) * a.matrix()))?, p);
    let roots = [abs_pow(t, p / 2.0)?, abs_pow(&t.adjoint(), p / 2.0)?];
    let rhs = scalev(gram(&(&stack(&roots) * &pw(&a, p)))?, 0.5);
    majorize(Relation::WeakLog, &lhs, &rhs, tol)
}

/// `|A (X o Y) A|^p` against `A^p (W) A^p` for a PSD `W`.
fn schur_pair(a: &PsdMatrix, xy: &ComplexMatrix, w: &ComplexMatrix, p: f64, tol: &Tolerance) -> Result<Evaluation> {
    let lhs = powv(singulars(&(&(a.matrix() * xy) * a.matrix()))?, p);
    let root = pw(&PsdMatrix::project(w)?, 0.5);
    let rhs = gram(&(&root * &pw(a, p)))?;
    majorize(Relation::WeakLog, &lhs, &rhs, tol)
}

fn eval_schur_normals(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, p) = (inst.psd("A")?, inst.exponent("p")?);
    let (x, y) = (inst.normal("X")?, inst.normal("Y")?);
    let xy = schur_product(x.matrix(), y.matrix())?;
    let w = schur_product(&pw(x.abs(), p), &pw(y.abs(), p))?;
    schur_pair(&a, &xy, &w, p, tol)
}

fn eval_schur_tt(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, t, p) = (inst.psd("A")?, inst.square("T")?, inst.exponent("p")?);
    let ts = t.adjoint();
    let xy = schur_product(t, &ts)?;
    let w = schur_product(&abs_pow(t, p)?, &abs_pow(&ts, p)?)?;
    schur_pair(&a, &xy, &w, p, tol)
}

pub const LOEWNER_EXPONENTS: [f64; 3] = [0.25, 0.5, 0.75];

fn eval_loewner_heinz(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (b, d) = (inst.psd("B")?, inst.psd("D")?);
    let a = PsdMatrix::new(&(b.matrix() + d.matrix()))?;
    let f = |t: f64| -> Result<f64> {
        let s = singulars(&(&pw(&b, t / 2.0) * &pw(&a, -t / 2.0)))?;
        Ok(s[0] * s[0])
    };
    let (f0, f1) = (f(0.0)?, f(1.0)?);
    let mut margins = Vec::new();
    for &p in &LOEWNER_EXPONENTS {
        let ap = pw(&a, p);
        let diff = hermitian_values(&(&ap - &pw(&b, p)))?;
        let scale = hermitian_values(&ap)?[0].max(1.0);
        margins.push(diff[diff.len() - 1] / scale);
    }
    for &p in &LOEWNER_EXPONENTS {
        let fp = f(p)?;
        margins.push(log_margin(fp.ln(), p * f1.ln() + (1.0 - p) * f0.ln()));
    }
    Ok(Evaluation::from_margins(margins, tol))
}

fn eval_kosaki(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (x, y) = (inst.square("X")?, inst.square("Y")?);
    let (p, alpha) = (inst.exponent("p")?, inst.exponent("alpha")?);
    if p <= 1.0 {
        return Err(Error::BadDomain(format!("Holder exponent p = {p} must exceed one")));
    }
    let q = p / (p - 1.0);
    let (sxy, sx, sy) = (singulars(&(x * y))?, singulars(x)?, singulars(y)?);
    let margins = SymmetricNorm::family(inst.dim)
        .iter()
        .map(|norm| {
            let lhs = norm.log_evaluate_powered(&sxy, alpha)?;
            let rhs = norm.log_evaluate_powered(&sx, alpha * p)? / p
                + norm.log_evaluate_powered(&sy, alpha * q)? / q;
            Ok(log_margin(lhs, rhs))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Evaluation::from_margins(margins, tol))
}

fn eval_littlewood_scalar(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, w) = (inst.vector("a")?, inst.vector("w")?);
    if a.len() != w.len() || a.iter().chain(w).any(|&x| !(x > 0.0)) {
        return Err(Error::BadDomain("a and w must be positive tuples of equal length".into()));
    }
    let (p, q, theta) = (inst.exponent("p")?, inst.exponent("q")?, inst.scalar("theta")?);
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::BadDomain(format!("theta = {theta} must lie in (0, 1)")));
    }
    let mix = theta * p + (1.0 - theta) * q;
    // log ||a||_{1/x} = x log sum w_i a_i^{1/x}.
    let direct = |x: f64| x * a.iter().zip(w).map(|(ai, wi)| wi * ai.powf(1.0 / x)).sum::<f64>().ln();
    let diag = PsdMatrix::from_real_diag(a)?;
    let z = ComplexMatrix::from_fn(a.len(), 1, |i, _| w[i].sqrt().into());
    let spec = FunctionalSpec::new(diag, PsdMatrix::identity(1), z, 1.0, SymmetricNorm::Operator, Variant::Congruence)?;
    let routed = |x: f64| spec.log_evaluate(x, 1.0);
    let (lp, lq, lm) = (direct(p), direct(q), direct(mix));
    let (rp, rq, rm) = (routed(p)?, routed(q)?, routed(mix)?);
    let agreement = [(lp, rp), (lq, rq), (lm, rm)]
        .iter()
        .map(|(d, r)| (d - r).abs())
        .fold(0.0, f64::max);
    Ok(Evaluation::from_margins(
        vec![
            theta * lp + (1.0 - theta) * lq - lm,
            theta * rp + (1.0 - theta) * rq - rm,
            -agreement,
        ],
        tol,
    ))
}

/// The `(p, t)` lattice used by the probe checks.
pub fn probe_grid() -> Grid {
    Grid::new(vec![1.0, 1.5, 2.0], vec![0.5, 1.0, 1.5]).expect("increasing axes")
}

fn eval_littlewood_matrix(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a1, a2) = (inst.psd("A1")?, inst.psd("A2")?);
    let (z1, z2) = (inst.square("Z1")?, inst.square("Z2")?);
    let alpha = inst.exponent("alpha")?;
    let a = PsdMatrix::new(&direct_sum(&[a1.into_matrix(), a2.into_matrix()]))?;
    let z = stack(&[z1.clone(), z2.clone()]);
    let grid = probe_grid();
    let mut out: Option<Evaluation> = None;
    for norm in five_norms(inst.dim) {
        let spec = FunctionalSpec::new(a.clone(), PsdMatrix::identity(inst.dim), z.clone(), alpha, norm, Variant::Congruence)?;
        let r = crate::functional::probe_logconvexity(&spec, &grid, tol.log_margin)?;
        let e = Evaluation::from_probe(&r);
        out = Some(match out {
            Some(o) => o.combine(e),
            None => e,
        });
    }
    Ok(out.expect("five norms"))
}

fn eval_poslin(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, alpha) = (inst.psd("A")?, inst.exponent("alpha")?);
    let map = inst.map("Phi")?;
    check_map(inst, map)?;
    // On the algebra generated by A the map is sum_ij Z_ij* X Z_ij with
    // Z_ij = x_i R_ij, and stacking R_ij over j gives Phi(E_i)^{1/2}.
    let comps = spectral_components(map, &a)?;
    let roots = comps
        .iter()
        .filter(|c| c.value > 0.0)
        .map(|c| Ok((c.value, pw(&PsdMatrix::new(&c.image)?, 0.5))))
        .collect::<Result<Vec<_>>>()?;
    let factor = |s: f64| {
        let blocks: Vec<ComplexMatrix> = roots.iter().map(|(l, r)| r.scale_real(l.powf(s / 2.0))).collect();
        if blocks.is_empty() {
            ComplexMatrix::zeros(inst.dim, inst.dim)
        } else {
            stack(&blocks)
        }
    };
    let g = factor(1.0);
    let image = map.apply(a.matrix())?;
    let agreement = (&g.adjoint() * &g).max_abs_diff(&image) / image.norm_max().max(1.0);
    let grid = probe_grid();
    let mut out = Evaluation::from_margins(vec![-agreement], tol);
    for norm in five_norms(inst.dim) {
        let r = probe_log_fn(format!("poslin {norm}"), &grid, tol.log_margin, |p, t| {
            let s: Vec<f64> = singulars(&factor(t / p))?.into_iter().take(inst.dim).collect();
            norm.log_evaluate_powered(&s, 2.0 * alpha * p)
        })?;
        out = out.combine(Evaluation::from_probe(&r));
    }
    Ok(out)
}

fn eval_exponent_exchange(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, b, alpha) = (inst.psd("A")?, inst.psd("B")?, inst.exponent("alpha")?);
    let (w, d1, d2) = (inst.scalar("w")?, inst.scalar("d1")?, inst.scalar("d2")?);
    if !(d1 >= d2 && d2 >= 0.0 && w - d1 >= 0.0) {
        return Err(Error::BadDomain(format!("need w >= d1 >= d2 >= 0, got {w}, {d1}, {d2}")));
    }
    let (p, q, r, s) = (w + d1, w - d1, w + d2, w - d2);
    let spectrum = |x: f64, y: f64| -> Result<Vec<f64>> {
        Ok(PsdMatrix::project(&schur_product(&pw(&a, x), &pw(&b, y))?)?.values().to_vec())
    };
    let (pq, qp, rs, sr) = (spectrum(p, q)?, spectrum(q, p)?, spectrum(r, s)?, spectrum(s, r)?);
    let lse = |x: f64, y: f64| {
        let m = x.max(y);
        if m == f64::NEG_INFINITY {
            m
        } else {
            m + ((x - m).exp() + (y - m).exp()).ln()
        }
    };
    let mut margins = Vec::new();
    for norm in five_norms(inst.dim) {
        let n = |v: &[f64]| norm.log_evaluate_powered(v, alpha);
        let (npq, nqp, nrs, nsr) = (n(&pq)?, n(&qp)?, n(&rs)?, n(&sr)?);
        margins.push(log_margin(nrs + nsr, npq + nqp));
        margins.push(log_margin(lse(nrs, nsr), lse(npq, nqp)));
    }
    Ok(Evaluation::from_margins(margins, tol))
}

/// Margin of `det((A (I o B) A)^p) >= det(A^p (I o B^p) A^p)`, which fails.
fn eval_det_schur(inst: &Instance, tol: &Tolerance) -> Result<Evaluation> {
    let (a, b, p) = (inst.psd("A")?, inst.psd("B")?, inst.exponent("p")?);
    let ib = crate::matfun::diagonal_part(b.matrix());
    let ibp = crate::matfun::diagonal_part(&pw(&b, p));
    let x = powv(gram(&(&pw(&PsdMatrix::project(&ib)?, 0.5) * a.matrix()))?, p);
    let y = gram(&(&pw(&PsdMatrix::project(&ibp)?, 0.5) * &pw(&a, p)))?;
    let logdet = |v: &[f64]| v.iter().map(|x| x.ln()).sum::<f64>();
    let margin = logdet(&x) - logdet(&y);
    Ok(Evaluation::from_margins(vec![margin], tol))
}

// ---- registry ----

use Constraint::*;

const ALL: &[Profile] = &Profile::ALL;
const INV: &[Profile] = &Profile::INVERTIBLE;
const WELL: &[Profile] = &[Profile::WellConditioned];

const C_ABP: &[(&str, Constraint)] = &[("A", Psd), ("B", Psd), ("p", Fixed)];
const C_ABZ: &[(&str, Constraint)] = &[("A", Psd), ("B", Psd), ("Z", Contraction), ("p", Fixed), ("alpha", Fixed)];
const C_ABZE: &[(&str, Constraint)] = &[("A", PsdInvertible), ("B", PsdInvertible), ("Z", Expansive), ("p", Fixed)];

pub static REGISTRY: &[CheckDef] = &[
    CheckDef {
        id: "araki",
        statement: "(ABA)^p log-majorized by A^p B^p A^p",
        expects_violation: false,
        det_equality: true,
        profiles: ALL,
        constraints: C_ABP,
        generate: gen_ab_p,
        evaluate: eval_araki,
    },
    CheckDef {
        id: "lieb_thirring",
        statement: "Tr (ABA)^p <= Tr A^p B^p A^p for integer p",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: C_ABP,
        generate: gen_lieb_thirring,
        evaluate: eval_lieb_thirring,
    },
    CheckDef {
        id: "triangle_normal",
        statement: "|X+Y| weakly log-majorized by |X|+|Y| for normal X, Y",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("X", Normal), ("Y", Normal)],
        generate: gen_xy_normal,
        evaluate: eval_triangle_normal,
    },
    CheckDef {
        id: "araki_normal",
        statement: "|AXA|^p log-majorized by A^p |X|^p A^p for normal X",
        expects_violation: false,
        det_equality: true,
        profiles: ALL,
        constraints: &[("A", Psd), ("X", Normal), ("p", Fixed)],
        generate: gen_a_x_normal,
        evaluate: eval_araki_normal,
    },
    CheckDef {
        id: "cohen_exp",
        statement: "|e^Z| log-majorized by e^{Re Z}",
        expects_violation: false,
        det_equality: true,
        profiles: WELL,
        constraints: &[("Z", Free)],
        generate: gen_z_general,
        evaluate: eval_cohen_exp,
    },
    CheckDef {
        id: "cor1_norm",
        statement: "||(AZ*BZA)^{alpha p}|| <= ||(A^p Z* B^p Z A^p)^alpha|| for a contraction Z",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: C_ABZ,
        generate: gen_cor1,
        evaluate: eval_cor1_norm,
    },
    CheckDef {
        id: "striking",
        statement: "(AZ*BZA)^p weakly log-majorized by A^p Z* B^p Z A^p for a contraction Z",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: C_ABZ,
        generate: gen_abz_contraction,
        evaluate: eval_striking,
    },
    CheckDef {
        id: "super_expansive",
        statement: "(AZ*BZA)^p super weakly log-majorizes A^p Z* B^p Z A^p for an expansive Z",
        expects_violation: false,
        det_equality: false,
        profiles: INV,
        constraints: C_ABZE,
        generate: gen_abz_expansive,
        evaluate: eval_super_expansive,
    },
    CheckDef {
        id: "trace_econvex",
        statement: "Tr f((AZ*BZA)^p) <= Tr f(A^p Z* B^p Z A^p) for e-convex nondecreasing f",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: C_ABZ,
        generate: gen_abz_contraction,
        evaluate: eval_trace_econvex,
    },
    CheckDef {
        id: "trace_econcave",
        statement: "Tr g((AZ*BZA)^p) >= Tr g(A^p Z* B^p Z A^p) for e-concave nondecreasing g, expansive Z",
        expects_violation: false,
        det_equality: false,
        profiles: WELL,
        constraints: C_ABZE,
        generate: gen_abz_expansive,
        evaluate: eval_trace_econcave,
    },
    CheckDef {
        id: "main_normal_map",
        statement: "|A Phi(N) A|^p weakly log-majorized by A^p Phi(|N|^p) A^p for sub-unital Phi",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("N", Normal), ("Phi", SubUnitalMap), ("p", Fixed)],
        generate: gen_main_normal_map,
        evaluate: eval_main_normal_map,
    },
    CheckDef {
        id: "subunital_psd",
        statement: "(A Phi(B) A)^p weakly log-majorized by A^p Phi(B^p) A^p for sub-unital Phi",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("B", Psd), ("Phi", SubUnitalMap), ("p", Fixed)],
        generate: gen_subunital_psd,
        evaluate: eval_subunital_psd,
    },
    CheckDef {
        id: "schur_mask",
        statement: "(A(C o B)A)^p weakly log-majorized by A^p (C o B^p) A^p when diag(C) <= 1",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("B", Psd), ("C", DiagBoundedPsd), ("p", Fixed)],
        generate: gen_schur_mask,
        evaluate: eval_schur_mask,
    },
    CheckDef {
        id: "m_normals",
        statement: "|A(sum X_k)A|^p weakly log-majorized by m^{p-1} A^p (sum |X_k|^p) A^p",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("X", Normal), ("p", Fixed)],
        generate: gen_m_normals,
        evaluate: eval_m_normals,
    },
    CheckDef {
        id: "cartesian",
        statement: "|A(X+iY)A|^p weakly log-majorized by 2^{p-1} A^p (|X|^p+|Y|^p) A^p",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("X", Hermitian), ("Y", Hermitian), ("p", Fixed)],
        generate: gen_cartesian,
        evaluate: eval_cartesian,
    },
    CheckDef {
        id: "thompson_exp",
        statement: "|e^{A+B}| log-majorized by e^{Re A/2} e^{Re B} e^{Re A/2}",
        expects_violation: false,
        det_equality: true,
        profiles: WELL,
        constraints: &[("A", Free), ("B", Free)],
        generate: gen_thompson,
        evaluate: eval_thompson_exp,
    },
    CheckDef {
        id: "gt_log",
        statement: "e^{S+T} log-majorized by e^{S/2} e^T e^{S/2} for Hermitian S, T",
        expects_violation: false,
        det_equality: true,
        profiles: WELL,
        constraints: &[("S", Hermitian), ("T", Hermitian)],
        generate: gen_st_hermitian,
        evaluate: eval_gt_log,
    },
    CheckDef {
        id: "segal",
        statement: "||e^{S+T}|| <= ||e^{S/2} e^T e^{S/2}|| in operator norm",
        expects_violation: false,
        det_equality: false,
        profiles: WELL,
        constraints: &[("S", Hermitian), ("T", Hermitian)],
        generate: gen_st_hermitian,
        evaluate: eval_segal,
    },
    CheckDef {
        id: "golden_thompson",
        statement: "Tr e^{S+T} <= Tr e^S e^T",
        expects_violation: false,
        det_equality: false,
        profiles: WELL,
        constraints: &[("S", Hermitian), ("T", Hermitian)],
        generate: gen_st_hermitian,
        evaluate: eval_golden_thompson,
    },
    CheckDef {
        id: "emi",
        statement: "||S-T|| <= ||log(e^{S/2} e^{-T} e^{S/2})|| for every symmetric norm",
        expects_violation: false,
        det_equality: false,
        profiles: WELL,
        constraints: &[("S", Hermitian), ("T", Hermitian)],
        generate: gen_st_hermitian,
        evaluate: eval_emi,
    },
    CheckDef {
        id: "lie_trotter_probe",
        statement: "(e^{H/2n} e^{K/n} e^{H/2n})^n -> e^{H+K}, error decreasing and below 1e-4 at n = 2^10",
        expects_violation: false,
        det_equality: false,
        profiles: WELL,
        constraints: &[("H", Hermitian), ("K", Hermitian)],
        generate: gen_lie_trotter,
        evaluate: eval_lie_trotter,
    },
    CheckDef {
        id: "sym_part",
        statement: "|A((T+T*)/2)A|^p weakly log-majorized by A^p ((|T|^p+|T*|^p)/2) A^p",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("T", Free), ("p", Fixed)],
        generate: gen_a_t,
        evaluate: eval_sym_part,
    },
    CheckDef {
        id: "schur_normals",
        statement: "|A(X o Y)A|^p weakly log-majorized by A^p (|X|^p o |Y|^p) A^p for normal X, Y",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("X", Normal), ("Y", Normal), ("p", Fixed)],
        generate: gen_schur_normals,
        evaluate: eval_schur_normals,
    },
    CheckDef {
        id: "schur_TT",
        statement: "|A(T o T*)A|^p weakly log-majorized by A^p (|T|^p o |T*|^p) A^p",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("T", Free), ("p", Fixed)],
        generate: gen_a_t,
        evaluate: eval_schur_tt,
    },
    CheckDef {
        id: "loewner_heinz",
        statement: "A >= B implies A^p >= B^p for p in (0, 1)",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("B", Psd), ("D", PsdInvertible)],
        generate: gen_loewner,
        evaluate: eval_loewner_heinz,
    },
    CheckDef {
        id: "kosaki_holder",
        statement: "|| |XY|^alpha || <= || |X|^{alpha p} ||^{1/p} || |Y|^{alpha q} ||^{1/q}",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("X", Free), ("Y", Free), ("p", Fixed), ("alpha", Fixed)],
        generate: gen_kosaki,
        evaluate: eval_kosaki,
    },
    CheckDef {
        id: "littlewood_scalar",
        statement: "||a||_{1/(theta p + (1-theta) q)} <= ||a||_{1/p}^theta ||a||_{1/q}^{1-theta}",
        expects_violation: false,
        det_equality: false,
        profiles: WELL,
        constraints: &[("a", Free), ("w", Free), ("p", Fixed), ("q", Fixed), ("theta", Fixed)],
        generate: gen_littlewood_scalar,
        evaluate: eval_littlewood_scalar,
    },
    CheckDef {
        id: "littlewood_matrix",
        statement: "(p, t) -> ||(Z1* A1^{t/p} Z1 + Z2* A2^{t/p} Z2)^{alpha p}|| is jointly log-convex",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A1", Psd), ("A2", Psd), ("Z1", Free), ("Z2", Free), ("alpha", Fixed)],
        generate: gen_littlewood_matrix,
        evaluate: eval_littlewood_matrix,
    },
    CheckDef {
        id: "poslin_probe",
        statement: "(p, t) -> ||Phi(A^{t/p})^{alpha p}|| is jointly log-convex for positive Phi",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("Phi", SubUnitalMap), ("alpha", Fixed)],
        generate: gen_poslin,
        evaluate: eval_poslin,
    },
    CheckDef {
        id: "schur_exponent_exchange",
        statement: "p >= r >= s >= q, p+q = r+s: products and sums of ||(A^x o B^y)^alpha|| increase outward",
        expects_violation: false,
        det_equality: false,
        profiles: ALL,
        constraints: &[("A", Psd), ("B", Psd), ("w", Fixed), ("d1", Fixed), ("d2", Fixed), ("alpha", Fixed)],
        generate: gen_exponent_exchange,
        evaluate: eval_exponent_exchange,
    },
    CheckDef {
        id: "det_schur_counterexample",
        statement: "det((A(I o B)A)^p) >= det(A^p (I o B^p) A^p) fails",
        expects_violation: true,
        det_equality: false,
        profiles: WELL,
        constraints: &[("A", PsdInvertible), ("B", PsdInvertible), ("p", Fixed)],
        generate: gen_det_schur,
        evaluate: eval_det_schur,
    },
];

pub fn lookup(id: &str) -> Result<&'static CheckDef> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}
