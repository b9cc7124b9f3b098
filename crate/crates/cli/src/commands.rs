//! One function per subcommand: problem file in, JSON document and exit
//! status out.

use serde_json::{json, Map, Value};

use hodgekit::filtration::{monodromy_weight_filtration, relative_weight_filtration};
use hodgekit::ih::{build_b_complex, ih_dim, les_verify, sigma_torsion, sing_class, sing_lift, torsion_group};
use hodgekit::linalg::{nilpotent_exp, Matrix, Scalar};
use hodgekit::mhs::{deligne_bigrading, deligne_grading, delta_splitting, is_mhs, sl2_splitting, zeta_from};
use hodgekit::orbits::{
    admissibility_check, evaluate_f, horizontality_check, invariant_grading, limit_data, limit_grading_twisted, limit_probe,
    multivariable_limit_probe, ProbeTable,
};
use hodgekit::sl2::{deligne_y, sl2_complete};
use hodgekit::zerolocus::{accumulation_verdict, defining_equation, limit_integrality, zero_test, AccumulationVerdict};
use hodgekit::HodgeError;

use crate::problem::{InputError, ProblemFile, Resolver};
use crate::render as r;

/// Object names a command reads, overridable on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names {
    pub hodge: String,
    pub weight: String,
    pub log: String,
}

impl Default for Names {
    fn default() -> Self {
        Names { hodge: "F".into(), weight: "W".into(), log: "N".into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Untwisted,
    Twisted,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    MhsCheck,
    MhsBigrading,
    MhsGrading,
    MhsDelta,
    MhsSl2Split { allow_nonabelian: bool },
    FiltRwf,
    FiltMonodromy,
    Sl2DeligneY,
    Sl2Triple { neutral: String },
    IhDims,
    IhSing,
    IhTorsion,
    IhLes,
    OrbitCheck,
    OrbitEval,
    OrbitHorizontal,
    OrbitLimit(Limit),
    OrbitProbe { csv: bool },
    ZlocTest,
    ZlocLimit,
    ZlocEquation,
    ZlocAccumulation,
}

/// Exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const INTERNAL: u8 = 4;
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Json(Value),
    Csv(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub body: Body,
    pub code: u8,
    /// One-line message for stderr.
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn done(v: Value) -> Self {
        Outcome { body: Body::Json(v), code: exit::OK, diagnostic: None }
    }

    /// `code` is `NEGATIVE` unless `ok`.
    fn verdict(v: Value, ok: bool, why: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::done(v)
        } else {
            Outcome { body: Body::Json(v), code: exit::NEGATIVE, diagnostic: Some(why()) }
        }
    }

    pub fn input_error(e: &InputError) -> Self {
        let doc = json!({ "error": { "kind": "input", "at": e.at, "message": e.message } });
        Outcome { body: Body::Json(doc), code: exit::INPUT, diagnostic: Some(format!("input error at {e}")) }
    }

    fn failure(e: &HodgeError) -> Self {
        let (kind, code) = match e {
            HodgeError::NotMhs(_) => ("not_mhs", exit::NEGATIVE),
            HodgeError::NoRelativeFiltration(_) => ("no_relative_filtration", exit::NEGATIVE),
            HodgeError::SingularityNonzero => ("singularity_nonzero", exit::NEGATIVE),
            HodgeError::NotSl2Pair(_) => ("not_sl2_pair", exit::NEGATIVE),
            HodgeError::Unsupported(_) => ("unsupported", exit::UNSUPPORTED),
            HodgeError::Internal(_) => ("internal", exit::INTERNAL),
            _ => ("precondition", exit::INPUT),
        };
        let doc = json!({ "error": { "kind": kind, "message": e.to_string() } });
        Outcome { body: Body::Json(doc), code, diagnostic: Some(e.to_string()) }
    }
}

enum Fail {
    Input(InputError),
    Hodge(HodgeError),
}

impl From<InputError> for Fail {
    fn from(e: InputError) -> Self {
        Fail::Input(e)
    }
}

impl From<HodgeError> for Fail {
    fn from(e: HodgeError) -> Self {
        Fail::Hodge(e)
    }
}

type Res = Result<Outcome, Fail>;

pub fn run(cmd: &Command, names: &Names, pf: &ProblemFile) -> Outcome {
    let ctx = Ctx { r: Resolver::new(pf), names };
    match ctx.dispatch(cmd) {
        Ok(o) => o,
        Err(Fail::Input(e)) => Outcome::input_error(&e),
        Err(Fail::Hodge(e)) => Outcome::failure(&e),
    }
}

struct Ctx<'a> {
    r: Resolver<'a>,
    names: &'a Names,
}

impl Ctx<'_> {
    fn dispatch(&self, cmd: &Command) -> Res {
        match cmd {
            Command::MhsCheck => self.mhs_check(),
            Command::MhsBigrading => self.mhs_bigrading(),
            Command::MhsGrading => self.mhs_grading(),
            Command::MhsDelta => self.mhs_delta(),
            Command::MhsSl2Split { allow_nonabelian } => self.mhs_sl2split(*allow_nonabelian),
            Command::FiltRwf => self.filt_rwf(),
            Command::FiltMonodromy => self.filt_monodromy(),
            Command::Sl2DeligneY => self.sl2_deligne_y(),
            Command::Sl2Triple { neutral } => self.sl2_triple(neutral),
            Command::IhDims => self.ih_dims(),
            Command::IhSing => self.ih_sing(),
            Command::IhTorsion => self.ih_torsion(),
            Command::IhLes => self.ih_les(),
            Command::OrbitCheck => self.orbit_check(),
            Command::OrbitEval => self.orbit_eval(),
            Command::OrbitHorizontal => self.orbit_horizontal(),
            Command::OrbitLimit(which) => self.orbit_limit(*which),
            Command::OrbitProbe { csv } => self.orbit_probe(*csv),
            Command::ZlocTest => self.zloc_test(),
            Command::ZlocLimit => self.zloc_limit(),
            Command::ZlocEquation => self.zloc_equation(),
            Command::ZlocAccumulation => self.zloc_accumulation(),
        }
    }

    fn params(&self) -> &crate::problem::Params {
        &self.r.pf.params
    }

    fn mhs_check(&self) -> Res {
        let f = self.r.decreasing(&self.names.hodge)?;
        let w = self.r.increasing(&self.names.weight)?;
        let c = is_mhs(&f, &w);
        let why = c.diagnostic.clone().unwrap_or_default();
        Ok(Outcome::verdict(json!({ "is_mhs": c.ok, "diagnostic": c.diagnostic }), c.ok, || format!("not a mixed Hodge structure: {why}")))
    }

    fn mhs_bigrading(&self) -> Res {
        let f = self.r.decreasing(&self.names.hodge)?;
        let w = self.r.increasing(&self.names.weight)?;
        let b = deligne_bigrading(&f, &w)?;
        let pieces: Vec<Value> = b
            .pieces()
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|((p, q), s)| json!({ "p": p, "q": q, "dim": s.dim(), "basis": r::subspace(s) }))
            .collect();
        Ok(Outcome::done(json!({ "pieces": pieces, "split_over_r": b.is_split_r() })))
    }

    fn mhs_grading(&self) -> Res {
        let f = self.r.decreasing(&self.names.hodge)?;
        let w = self.r.increasing(&self.names.weight)?;
        Ok(Outcome::done(json!({ "grading": r::grading(&deligne_grading(&f, &w)?) })))
    }

    fn mhs_delta(&self) -> Res {
        let f = self.r.decreasing(&self.names.hodge)?;
        let w = self.r.increasing(&self.names.weight)?;
        let d = delta_splitting(&f, &w)?;
        Ok(Outcome::done(json!({ "delta": r::matrix(&d.delta), "split_filtration": r::decreasing(&d.f_tilde) })))
    }

    fn mhs_sl2split(&self, allow_nonabelian: bool) -> Res {
        let f = self.r.decreasing(&self.names.hodge)?;
        let m = self.r.increasing(&self.names.weight)?;
        let s = sl2_splitting(&f, &m, allow_nonabelian)?;
        let zeta = zeta_from(&s.xi, &s.delta)?;
        Ok(Outcome::done(json!({
            "xi": r::matrix(&s.xi),
            "delta": r::matrix(&s.delta),
            "zeta": r::matrix(&zeta),
            "split_filtration": r::decreasing(&s.f_hat),
            "lambda_abelian": s.lambda_abelian,
        })))
    }

    fn filt_rwf(&self) -> Res {
        let n = self.r.matrix(&self.names.log)?;
        let w = self.r.increasing(&self.names.weight)?;
        Ok(match relative_weight_filtration(&n, &w)? {
            Ok(m) => Outcome::done(json!({ "exists": true, "filtration": r::increasing(&m) })),
            Err(ob) => {
                let doc = json!({
                    "exists": false,
                    "obstruction": { "weight": ob.weight, "head": r::vector(&ob.head), "length": ob.length },
                });
                Outcome::verdict(doc, false, || format!("no relative weight filtration: string of length {} on weight {} cannot be lifted", ob.length, ob.weight))
            }
        })
    }

    fn filt_monodromy(&self) -> Res {
        let n = self.r.matrix(&self.names.log)?;
        let m = monodromy_weight_filtration(&n, self.params().center.unwrap_or(0))?;
        Ok(Outcome::done(json!({ "filtration": r::increasing(&m) })))
    }

    /// `Y_M` is the matrix `Y_M` when present, otherwise the Deligne grading
    /// of `(F, M(N, W))`.
    fn sl2_deligne_y(&self) -> Res {
        let n = self.r.matrix(&self.names.log)?;
        let w = self.r.increasing(&self.names.weight)?;
        let y_m = if self.r.has_matrix("Y_M") {
            self.r.grading("Y_M")?
        } else {
            let f = self.r.decreasing(&self.names.hodge)?;
            let m = relative_weight_filtration(&n, &w)?
                .map_err(|ob| HodgeError::NoRelativeFiltration(format!("obstruction on weight {}", ob.weight)))?;
            deligne_grading(&f, &m)?
        };
        let d = deligne_y(&n, &y_m, &w)?;
        let mut comps = Map::new();
        for (j, c) in d.decomposition.components() {
            comps.insert(j.to_string(), r::matrix(c));
        }
        Ok(Outcome::done(json!({
            "y": r::grading(&d.y),
            "y_m": r::grading(&y_m),
            "triple": {
                "lowering": r::matrix(&d.triple.lowering),
                "neutral": r::matrix(&d.triple.neutral),
                "raising": r::matrix(&d.triple.raising),
            },
            "components": comps,
        })))
    }

    fn sl2_triple(&self, neutral: &str) -> Res {
        let n = self.r.matrix(&self.names.log)?;
        let h = self.r.matrix(neutral)?;
        Ok(Outcome::done(json!({ "raising": r::matrix(&sl2_complete(&n, &h)?) })))
    }

    fn ih_dims(&self) -> Res {
        let ls = self.r.local_system()?;
        let b = build_b_complex(&ls)?;
        let (dims, reps): (Vec<usize>, Vec<Value>) = (0..=b.r())
            .map(|p| {
                let (d, v) = ih_dim(&b, p);
                (d, r::vectors(&v))
            })
            .unzip();
        Ok(Outcome::done(json!({ "dims": dims, "representatives": reps, "euler_characteristic": b.euler_characteristic() })))
    }

    fn ih_sing(&self) -> Res {
        let anf = self.r.anf()?;
        let c = sing_class(&anf)?;
        let lift = sing_lift(&anf);
        Ok(Outcome::done(json!({
            "is_zero": c.is_zero,
            "cocycle": r::vector(&c.cocycle),
            "coordinates": r::vector(&c.coordinates),
            "lift": lift.as_deref().map(r::vector),
        })))
    }

    /// `σ` for extension data; otherwise the group `G` of a one-log local
    /// system.
    fn ih_torsion(&self) -> Res {
        if self.r.pf.anf.is_some() {
            let s = sigma_torsion(&self.r.anf()?)?;
            let factors: Vec<Value> = s.group.invariant_factors.iter().map(r::integer).collect();
            return Ok(Outcome::done(json!({ "invariant_factors": factors, "sigma_nonzero": s.nonzero })));
        }
        let ls = self.r.local_system()?;
        let [n] = ls.logs() else {
            return Err(HodgeError::Unsupported("the torsion group is only computed for a single log".into()).into());
        };
        let lattice = ls.lattice().ok_or_else(|| InputError::new("$.local_system.lattice", "a lattice is required"))?;
        let t1 = &nilpotent_exp(n)? - &Matrix::identity(n.rows());
        let g = torsion_group(&t1, lattice)?;
        let factors: Vec<Value> = g.invariant_factors.iter().map(r::integer).collect();
        Ok(Outcome::done(json!({ "invariant_factors": factors })))
    }

    fn ih_les(&self) -> Res {
        let rep = les_verify(&self.r.anf()?)?;
        let nodes: Vec<Value> = rep.nodes.iter().map(|(n, ok)| json!({ "node": n, "exact": ok })).collect();
        let exact = rep.exact();
        let doc = json!({
            "ih_h": rep.ih_h,
            "ih_v": rep.ih_v,
            "ih_q": rep.ih_q,
            "nodes": nodes,
            "b_agree": rep.b_agree,
            "sing_zero": rep.sing_zero,
            "exact": exact,
        });
        Ok(Outcome::verdict(doc, exact, || "the long exact sequence fails to be exact".into()))
    }

    fn orbit_check(&self) -> Res {
        let lnf = self.r.orbit()?;
        let rep = admissibility_check(lnf.orbit());
        let why = rep.witness.clone().unwrap_or_default();
        Ok(Outcome::verdict(r::report(&rep), rep.ok, || format!("not admissible: {why}")))
    }

    fn orbit_eval(&self) -> Res {
        let lnf = self.r.orbit()?;
        let z = self.r.param_scalars("z", &self.params().z)?;
        let s = self.r.param_scalars("s", &self.params().s)?;
        let f = evaluate_f(&lnf, &z, &s)?;
        let c = is_mhs(&f, lnf.orbit().w());
        Ok(Outcome::done(json!({ "filtration": r::decreasing(&f), "is_mhs": c.ok })))
    }

    fn orbit_horizontal(&self) -> Res {
        let rep = horizontality_check(&self.r.orbit()?)?;
        let why = rep.witness.clone().unwrap_or_default();
        Ok(Outcome::verdict(r::report(&rep), rep.ok, || format!("not horizontal: {why}")))
    }

    fn orbit_limit(&self, which: Limit) -> Res {
        let lnf = self.r.orbit()?;
        let slice = self.r.param_scalars("slice", &self.params().slice)?;
        let mut doc = Map::new();
        if which != Limit::Twisted {
            let d = limit_data(&lnf, &slice, false)?;
            doc.insert("untwisted".into(), r::grading(&d.untwisted));
        }
        if which != Limit::Untwisted {
            let u = match &self.params().rescale {
                Some(u) => crate::problem::scalar("$.params.rescale", u)?,
                None => Scalar::zero(),
            };
            let twisted = limit_grading_twisted(&lnf, &slice, &u)?;
            let d = limit_data(&lnf, &slice, false)?;
            doc.insert("twisted".into(), r::grading(&twisted));
            doc.insert("delta".into(), r::matrix(&d.delta));
            doc.insert("zeta".into(), r::matrix(&d.zeta));
        }
        Ok(Outcome::done(Value::Object(doc)))
    }

    fn orbit_probe(&self, csv: bool) -> Res {
        let lnf = self.r.orbit()?;
        let p = self.params();
        let table: ProbeTable = if p.pattern.is_empty() {
            let slice = self.r.param_scalars("slice", &p.slice)?;
            let ys = self.r.param_scalars("ys", &p.ys)?;
            limit_probe(&lnf, &slice, &ys)?
        } else {
            let pattern =
                p.pattern.iter().enumerate().map(|(k, row)| crate::problem::scalars(&format!("$.params.pattern[{k}]"), row)).collect::<Result<Vec<_>, _>>()?;
            multivariable_limit_probe(lnf.orbit(), &pattern)?
        };
        if csv {
            let width = table.rows.first().map_or(1, |(y, _)| y.len());
            let mut out = if width == 1 { "y".to_string() } else { (1..=width).map(|j| format!("y{j}")).collect::<Vec<_>>().join(",") };
            out.push_str(",deviation\n");
            for (y, d) in &table.rows {
                let ys: Vec<String> = y.iter().map(Scalar::to_string).collect();
                out.push_str(&format!("{},{d}\n", ys.join(",")));
            }
            return Ok(Outcome { body: Body::Csv(out), code: exit::OK, diagnostic: None });
        }
        let rows: Vec<Value> = table.rows.iter().map(|(y, d)| json!({ "sample": r::vector(y), "deviation": d })).collect();
        Ok(Outcome::done(json!({
            "predicted": r::grading(&table.predicted),
            "rows": rows,
            "ratios": table.ratios(),
            "monotone_from_second": table.monotone_from(1),
        })))
    }

    fn zloc_test(&self) -> Res {
        let lnf = self.r.orbit()?;
        let z = self.r.param_scalars("z", &self.params().z)?;
        let s = self.r.param_scalars("s", &self.params().s)?;
        let t = zero_test(&lnf, &z, &s)?;
        Ok(Outcome::verdict(json!({ "in_locus": t.in_locus, "grading": r::grading(&t.grading) }), t.in_locus, || {
            "the point is not in the zero locus".into()
        }))
    }

    fn zloc_limit(&self) -> Res {
        let lnf = self.r.orbit()?;
        let slice = self.r.param_scalars("slice", &self.params().slice)?;
        let mut samples = Vec::new();
        for (k, sp) in self.params().samples.iter().enumerate() {
            let z = crate::problem::scalars(&format!("$.params.samples[{k}].z"), &sp.z)?;
            let s = crate::problem::scalars(&format!("$.params.samples[{k}].s"), &sp.s)?;
            samples.push((z, s));
        }
        let li = limit_integrality(&lnf, &slice, &samples)?;
        Ok(Outcome::done(json!({
            "limit": r::grading(&li.limit),
            "integral": li.integral,
            "commutes_with_n": li.commutes_with_n,
            "preserves_f_hat": li.preserves_f_hat,
            "xi_ok": li.xi_ok,
            "samples_in_locus": li.samples,
        })))
    }

    /// `Y_∞` is the named matrix from `params.y_inf`, or the invariant
    /// grading of the orbit.
    fn zloc_equation(&self) -> Res {
        let lnf = self.r.orbit()?;
        let y_inf = match &self.params().y_inf {
            Some(name) => self.r.grading(name)?,
            None => invariant_grading(lnf.orbit())?.y_inf,
        };
        let sys = defining_equation(&lnf, &y_inf)?;
        let eqs: Vec<Value> = sys.equations.iter().map(|(i, j, p)| json!({ "row": i, "col": j, "polynomial": r::poly(p) })).collect();
        Ok(Outcome::done(json!({
            "y_inf": r::grading(&y_inf),
            "equations": eqs,
            "lambda": r::matrix(&sys.lambda),
            "integral_limit": sys.integral_limit,
        })))
    }

    fn zloc_accumulation(&self) -> Res {
        let v = accumulation_verdict(&self.r.anf()?)?;
        let doc = match &v {
            AccumulationVerdict::Excluded { sigma, rational_h } => json!({
                "verdict": "excluded",
                "invariant_factors": sigma.group.invariant_factors.iter().map(r::integer).collect::<Vec<_>>(),
                "sigma_class": sigma.class.iter().map(r::integer).collect::<Vec<_>>(),
                "rational_h": r::vector(rational_h),
            }),
            AccumulationVerdict::Candidate { grading, h, h_coordinates } => json!({
                "verdict": "candidate",
                "grading": r::grading(grading),
                "h": r::vector(h),
                "h_coordinates": h_coordinates.iter().map(r::integer).collect::<Vec<_>>(),
            }),
        };
        Ok(Outcome::done(doc))
    }
}
