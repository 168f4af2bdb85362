//! Property checks with JSON transcripts.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::classify::{classify, Flag};
use super::invariants::invariant_isomorphic;
use super::tilting::{characteristic_tilting, ringel_dual, summands_match, TiltingData};
use super::{idempotent_quotient, in_filtration_category, standard_family, Family, IdempotentOrder, StratifiedData};
use crate::algebra::AssocAlgebra;
use crate::config::Settings;
use crate::error::{Error, Result};
use crate::families::{centraliser_algebra, catalogue_example, Example, GendoData, JordanType};
use crate::field::Field;
use crate::hom::{endomorphism_algebra, is_isomorphic, split_indecomposables};
use crate::homology::{dominant_dim, gorenstein_dim, injective_dim, projective_dim, DimensionReport};
use crate::module::ModuleRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PropertyId {
    #[serde(rename = "MAIN")]
    Main,
    #[serde(rename = "FROB_ENDO")]
    FrobEndo,
    #[serde(rename = "GP_FILT")]
    GpFilt,
    #[serde(rename = "PFIN_CAP")]
    PfinCap,
    #[serde(rename = "MAZOV")]
    Mazov,
    #[serde(rename = "DOMDIM_T")]
    DomdimT,
    #[serde(rename = "RINGEL_GIGS")]
    RingelGigs,
    #[serde(rename = "SELF_DUAL_CENT")]
    SelfDualCent,
}

impl PropertyId {
    pub const ALL: [PropertyId; 8] = [
        PropertyId::Main,
        PropertyId::FrobEndo,
        PropertyId::GpFilt,
        PropertyId::PfinCap,
        PropertyId::Mazov,
        PropertyId::DomdimT,
        PropertyId::RingelGigs,
        PropertyId::SelfDualCent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::Main => "MAIN",
            PropertyId::FrobEndo => "FROB_ENDO",
            PropertyId::GpFilt => "GP_FILT",
            PropertyId::PfinCap => "PFIN_CAP",
            PropertyId::Mazov => "MAZOV",
            PropertyId::DomdimT => "DOMDIM_T",
            PropertyId::RingelGigs => "RINGEL_GIGS",
            PropertyId::SelfDualCent => "SELF_DUAL_CENT",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase().replace('-', "_");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name() == t)
            .ok_or_else(|| Error::InvalidInput(format!("unknown property {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    HypothesisNotMet,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Step {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    pub actual: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Transcript {
    pub property: PropertyId,
    pub input: String,
    pub hypotheses: Vec<Step>,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Value>,
}

impl Transcript {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// An algebra with the data the properties may need.
#[derive(Clone, Debug)]
pub struct VerifyInput<F: Field> {
    pub label: String,
    pub algebra: Arc<AssocAlgebra<F>>,
    pub order: IdempotentOrder,
    pub gendo: Option<GendoData<F>>,
    pub jordan: Option<JordanType>,
}

impl<F: Field> VerifyInput<F> {
    pub fn from_algebra(label: impl Into<String>, algebra: Arc<AssocAlgebra<F>>, order: IdempotentOrder) -> Self {
        VerifyInput {
            label: label.into(),
            algebra,
            order,
            gendo: None,
            jordan: None,
        }
    }

    pub fn from_example(ex: Example<F>) -> Self {
        let jordan = match ex.id {
            crate::families::ExampleId::Cent31 => Some(JordanType::new(3, vec![1]).expect("valid")),
            _ => None,
        };
        VerifyInput {
            label: format!("example:{}", ex.id),
            algebra: ex.algebra,
            order: ex.order,
            gendo: ex.gendo,
            jordan,
        }
    }

    pub fn from_jordan(j: &JordanType, field: &F) -> Result<Self> {
        let g = centraliser_algebra(j, field)?;
        Ok(VerifyInput {
            label: j.to_string(),
            algebra: Arc::clone(&g.algebra),
            order: g.default_order(),
            gendo: Some(g),
            jordan: Some(j.clone()),
        })
    }

    pub fn example(id: crate::families::ExampleId, field: &F) -> Result<Self> {
        Ok(Self::from_example(catalogue_example(id, field)?))
    }
}

struct Rec {
    hyps: Vec<Step>,
    steps: Vec<Step>,
    witnesses: Vec<(String, Value)>,
}

impl Rec {
    fn new() -> Self {
        Rec {
            hyps: Vec::new(),
            steps: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    fn hyp(&mut self, name: &str, actual: impl Serialize, ok: bool) -> bool {
        self.hyps.push(Step {
            name: name.into(),
            expected: None,
            actual: json!(actual),
            ok,
        });
        ok
    }

    fn check(&mut self, name: &str, expected: impl Serialize, actual: impl Serialize) -> bool {
        let (e, a) = (json!(expected), json!(actual));
        let ok = e == a;
        self.steps.push(Step {
            name: name.into(),
            expected: Some(e),
            actual: a,
            ok,
        });
        ok
    }

    fn note(&mut self, name: &str, actual: impl Serialize) {
        self.steps.push(Step {
            name: name.into(),
            expected: None,
            actual: json!(actual),
            ok: true,
        });
    }

    fn witness(&mut self, name: &str, v: Value) {
        self.witnesses.push((name.into(), v));
    }

    fn hyps_ok(&self) -> bool {
        self.hyps.iter().all(|s| s.ok)
    }

    fn finish(self, property: PropertyId, input: &str, inconclusive: Option<String>, with_witnesses: bool) -> Transcript {
        let failed_hyp = self.hyps.iter().find(|s| !s.ok).map(|s| s.name.clone());
        let failed_step = self.steps.iter().find(|s| !s.ok).map(|s| s.name.clone());
        let (outcome, first_failure) = if let Some(h) = failed_hyp {
            (Outcome::HypothesisNotMet, Some(h))
        } else if let Some(r) = inconclusive {
            (Outcome::Inconclusive, Some(r))
        } else if let Some(s) = failed_step {
            (Outcome::Fail, Some(s))
        } else {
            (Outcome::Pass, None)
        };
        let witnesses = with_witnesses.then(|| {
            Value::Object(self.witnesses.into_iter().collect::<serde_json::Map<String, Value>>())
        });
        Transcript {
            property,
            input: input.into(),
            hypotheses: self.hyps,
            steps: self.steps,
            outcome,
            first_failure,
            witnesses,
        }
    }
}

fn dims_of<F: Field>(ms: &[ModuleRep<F>]) -> Vec<Vec<usize>> {
    ms.iter().map(|m| m.dims().to_vec()).collect()
}

/// Symmetric Cartan matrix and `dim Delta(i) = dim Nabla(i)`.
fn duality_gate<F: Field>(s: &StratifiedData<F>) -> bool {
    let c = s.algebra.cartan_matrix();
    let n = c.len();
    (0..n).all(|i| (0..n).all(|j| c[i][j] == c[j][i])) && (0..n).all(|i| s.delta[i].dim() == s.nabla[i].dim())
}

fn report_json(r: DimensionReport) -> Value {
    json!(r)
}

/// Simples, proper standards, radicals of projectives, and up to three
/// syzygies of each; zero modules dropped.
pub fn sampling_set<F: Field>(a: &Arc<AssocAlgebra<F>>, proper_delta: &[ModuleRep<F>]) -> Vec<ModuleRep<F>> {
    let n = a.n_vertices();
    let mut base: Vec<ModuleRep<F>> = Vec::new();
    for v in 0..n {
        base.push(ModuleRep::simple(a, v));
    }
    base.extend(proper_delta.iter().cloned());
    for v in 0..n {
        let p = ModuleRep::projective(a, v);
        base.push(p.submodule(&p.radical()).expect("radical"));
    }
    let mut out = Vec::new();
    for m in base {
        let mut cur = m;
        for _ in 0..4 {
            if cur.is_zero() {
                break;
            }
            out.push(cur.clone());
            cur = cur.syzygy();
        }
    }
    out
}

fn omega<F: Field>(m: &ModuleRep<F>, k: usize) -> ModuleRep<F> {
    let mut cur = m.clone();
    for _ in 0..k {
        cur = cur.syzygy();
    }
    cur
}

struct Ctx<'a, F: Field> {
    input: &'a VerifyInput<F>,
    settings: &'a Settings,
    rec: Rec,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn stratified(&mut self) -> Result<Option<StratifiedData<F>>> {
        let s = standard_family(&self.input.algebra, &self.input.order)?;
        let ok = s.properly.holds;
        self.rec.hyp(
            "properly_stratified",
            json!({"order": self.input.order.to_string(), "verdict": s.properly}),
            ok,
        );
        Ok(ok.then_some(s))
    }

    fn gorenstein(&mut self, required: bool) -> Result<DimensionReport> {
        let g = gorenstein_dim(&self.input.algebra, self.settings.cutoff)?;
        let fin = g.value.is_finite();
        if required {
            self.rec.hyp("gorenstein", g, fin);
        } else {
            self.rec.note("gorenstein_dim", g);
        }
        Ok(g.value)
    }

    fn tilting(&mut self, s: &StratifiedData<F>) -> Result<TiltingData<F>> {
        let t = characteristic_tilting(s, self.settings)?;
        self.rec.note("tilting_summand_dims", dims_of(&t.summands));
        self.rec.note("cotilting_summand_dims", dims_of(&t.cotilting_summands));
        self.rec.note("pd_T", t.pd);
        self.rec.witness(
            "tilting",
            json!(t.summands.iter().map(crate::io::module_to_json).collect::<Vec<_>>()),
        );
        Ok(t)
    }

    fn main(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        let g = self.gorenstein(false)?;
        let t = self.tilting(&s)?;
        let gor = g.is_finite();
        let iso = summands_match(&t.summands, &t.cotilting_summands, self.settings)?;
        let fnabla = in_filtration_category(&t.basic, Family::Nabla, &s)?;
        self.rec.note("gorenstein", gor);
        self.rec.note("T_isomorphic_to_C", json!({"holds": iso.is_some(), "matching": iso.as_ref().map(|p| p.iter().map(|v| v + 1).collect::<Vec<_>>())}));
        self.rec.note("T_in_F_nabla", &fnabla);
        self.rec.check("gorenstein_iff_T_is_C", gor, iso.is_some());
        self.rec.check("gorenstein_iff_T_in_F_nabla", gor, fnabla.member);
        Ok(())
    }

    fn frob_endo(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        let g = self.gorenstein(true)?;
        for v in 0..s.n() {
            let e = endomorphism_algebra(std::slice::from_ref(&s.delta[v]))?;
            let c = classify(&e.algebra, self.settings)?;
            self.rec.note(&format!("dim_End_delta_{}", v + 1), e.algebra.dim());
            self.rec.check(&format!("End_delta_{}_frobenius", v + 1), Flag::Yes, c.frobenius);
            let e = endomorphism_algebra(std::slice::from_ref(&s.nabla[v]))?;
            let c = classify(&e.algebra, self.settings)?;
            self.rec.check(&format!("End_nabla_{}_frobenius", v + 1), Flag::Yes, c.frobenius);
        }
        if !g.is_finite() {
            return Ok(());
        }
        let order = s.order.vertices();
        for k in 1..s.n() {
            let killed = &order[k..];
            let Some(q) = idempotent_quotient(&s.algebra, killed)? else { continue };
            let keep: Vec<usize> = (0..s.n()).filter(|v| !killed.contains(v)).collect();
            let sub = IdempotentOrder::new(
                order[..k].iter().map(|v| keep.iter().position(|w| w == v).expect("kept")).collect(),
            )?;
            let qs = standard_family(&q, &sub)?;
            let qg = gorenstein_dim(&q, self.settings.cutoff)?;
            self.rec.check(&format!("quotient_{k}_properly_stratified"), true, qs.properly.holds);
            self.rec.check(&format!("quotient_{k}_gorenstein"), true, qg.value.is_finite());
        }
        Ok(())
    }

    fn gp_filt(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        let g = self.gorenstein(true)?;
        let Some(g) = g.finite() else { return Ok(()) };
        let sample = sampling_set(&s.algebra, &s.proper_delta);
        let mut bad = Vec::new();
        for (k, m) in sample.iter().enumerate() {
            let om = omega(m, g);
            if !in_filtration_category(&om, Family::ProperDelta, &s)?.member {
                bad.push(k);
            }
        }
        self.rec.note("sample_size", sample.len());
        self.rec.check("syzygies_in_F_proper_delta", Vec::<usize>::new(), bad);
        let op = s.algebra.opposite();
        let sample_op = sampling_set(&op, &s.proper_delta_op);
        let mut bad = Vec::new();
        for (k, m) in sample_op.iter().enumerate() {
            let co = omega(m, g).dual();
            if !in_filtration_category(&co, Family::ProperNabla, &s)?.member {
                bad.push(k);
            }
        }
        self.rec.check("cosyzygies_in_F_proper_nabla", Vec::<usize>::new(), bad);
        Ok(())
    }

    fn pfin_cap(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        let g = self.gorenstein(true)?;
        if !g.is_finite() {
            return Ok(());
        }
        let cut = self.settings.cutoff;
        let sample = sampling_set(&s.algebra, &s.proper_delta);
        let mut bad = Vec::new();
        let mut hits = 0;
        for (k, m) in sample.iter().enumerate() {
            let lhs = projective_dim(m, cut).is_finite() && in_filtration_category(m, Family::ProperDelta, &s)?.member;
            let rhs = in_filtration_category(m, Family::Delta, &s)?.member;
            hits += usize::from(rhs);
            if lhs != rhs {
                bad.push(k);
            }
        }
        self.rec.note("sample_size", sample.len());
        self.rec.note("sample_in_F_delta", hits);
        self.rec.check("finite_pd_and_F_proper_delta_iff_F_delta", Vec::<usize>::new(), bad);
        let op = s.algebra.opposite();
        let mut bad = Vec::new();
        for (k, m) in sampling_set(&op, &s.proper_delta_op).iter().enumerate() {
            let m = m.dual();
            let lhs = injective_dim(&m, cut).is_finite() && in_filtration_category(&m, Family::ProperNabla, &s)?.member;
            let rhs = in_filtration_category(&m, Family::Nabla, &s)?.member;
            if lhs != rhs {
                bad.push(k);
            }
        }
        self.rec.check("finite_id_and_F_proper_nabla_iff_F_nabla", Vec::<usize>::new(), bad);
        Ok(())
    }

    fn mazov(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        let g = self.gorenstein(true)?;
        self.rec.hyp("duality_gate", duality_gate(&s), duality_gate(&s));
        if !self.rec.hyps_ok() {
            return Ok(());
        }
        let t = self.tilting(&s)?;
        let iso = summands_match(&t.summands, &t.cotilting_summands, self.settings)?;
        if !self.rec.hyp("T_isomorphic_to_C", iso.is_some(), iso.is_some()) {
            return Ok(());
        }
        let doubled = t.pd.finite().map(|p| 2 * p);
        self.rec.check("gorenstein_dim_equals_2_pd_T", g.finite(), doubled);
        Ok(())
    }

    fn gigs_hypotheses(&mut self, s: &StratifiedData<F>) -> Result<bool> {
        let c = classify(&self.input.algebra, self.settings)?;
        self.rec.hyp("gendo_symmetric", c.gendo_symmetric, c.gendo_symmetric.is_yes());
        self.rec.hyp("gorenstein", c.gorenstein, c.gorenstein.value.is_finite());
        self.rec.hyp("duality_gate", duality_gate(s), duality_gate(s));
        self.rec.note("dominant_dim_A", c.dominant_dim);
        Ok(self.rec.hyps_ok())
    }

    fn domdim_t(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        if !self.gigs_hypotheses(&s)? {
            return Ok(());
        }
        let da = dominant_dim(&ModuleRep::regular(&s.algebra), self.settings.cutoff);
        let t = self.tilting(&s)?;
        let dt = dominant_dim(&t.basic, self.settings.cutoff);
        self.rec.note("dominant_dim_T", dt);
        let expected = match da {
            DimensionReport::Finite(k) if k % 2 == 0 => json!(DimensionReport::Finite(k / 2)),
            DimensionReport::Finite(k) => json!(format!("domdim(A) = {k} is odd")),
            DimensionReport::AboveCutoff(c) => json!(DimensionReport::AboveCutoff(c)),
        };
        self.rec.check("twice_domdim_T_equals_domdim_A", expected, report_json(dt));
        Ok(())
    }

    fn ringel_gigs(&mut self) -> Result<()> {
        let Some(s) = self.stratified()? else { return Ok(()) };
        let Some(gendo) = self.input.gendo.clone() else {
            self.rec.hyp("gendo_data", "input is not given as End_U(U + M)", false);
            return Ok(());
        };
        if !self.gigs_hypotheses(&s)? {
            return Ok(());
        }
        let c = classify(&self.input.algebra, self.settings)?;
        let g = c.gorenstein.value.finite().unwrap_or(0);
        self.rec.hyp(
            "minimal_auslander_gorenstein_even",
            json!({"minimal_auslander_gorenstein": c.minimal_auslander_gorenstein, "gorenstein_dim": g}),
            c.minimal_auslander_gorenstein && g % 2 == 0 && g >= 2,
        );
        let cu = classify(&gendo.u, self.settings)?;
        self.rec.hyp("U_symmetric", cu.symmetric, cu.symmetric.is_yes());
        if !self.rec.hyps_ok() {
            return Ok(());
        }
        let d = g / 2;
        self.rec.note("d", d);
        let t = self.tilting(&s)?;
        let r = ringel_dual(&s, &t)?;
        let b = syzygy_gendo(&gendo, d, self.settings)?;
        self.rec.note("ringel_dual_dim", r.algebra.dim());
        self.rec.note("End_U_of_U_plus_syzygy_dim", b.algebra.dim());
        let cmp = invariant_isomorphic(&r.algebra, Some(&r.order), &b.algebra, Some(&b.default_order()), self.settings)?;
        self.rec.check("dimension", b.algebra.dim(), r.algebra.dim());
        self.rec.check("invariant_isomorphic", true, cmp.isomorphic);
        self.rec.witness("comparison", json!(cmp));
        Ok(())
    }

    fn self_dual_cent(&mut self) -> Result<()> {
        let Some(j) = self.input.jordan.clone() else {
            self.rec.hyp("jordan_type", "input is not a centraliser algebra", false);
            return Ok(());
        };
        let Some(s) = self.stratified()? else { return Ok(()) };
        let criterion = j.selfdual_criterion();
        self.rec.note("criterion", criterion);
        let t = self.tilting(&s)?;
        let r = ringel_dual(&s, &t)?;
        self.rec.note("ringel_dual_dim", r.algebra.dim());
        let cmp = invariant_isomorphic(&r.algebra, Some(&r.order), &s.algebra, Some(&s.order), self.settings)?;
        self.rec.note("invariant_isomorphic", &cmp);
        self.rec.check("criterion_matches_invariant_isomorphism", criterion, cmp.isomorphic);
        Ok(())
    }
}

/// `End_U(U + Omega^d M)` for the non-projective summands `M` of the data,
/// listed basic by increasing dimension with `U` last.
pub fn syzygy_gendo<F: Field>(g: &GendoData<F>, d: usize, settings: &Settings) -> Result<GendoData<F>> {
    let mut parts: Vec<ModuleRep<F>> = Vec::new();
    for m in g.summands.iter().filter(|m| !m.is_projective()) {
        for s in split_indecomposables(&omega(m, d), settings)? {
            if s.module.is_projective() {
                continue;
            }
            let mut seen = false;
            for p in &parts {
                if is_isomorphic(p, &s.module, settings)?.decided()? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                parts.push(s.module);
            }
        }
    }
    parts.sort_by_key(|m| m.dim());
    parts.push(ModuleRep::projective(&g.u, 0));
    let end = endomorphism_algebra(&parts)?;
    Ok(GendoData {
        u: Arc::clone(&g.u),
        summands: parts,
        algebra: end.algebra,
    })
}

/// Runs one property. Inconclusive searches and unmet hypotheses are
/// reported in the transcript rather than as errors.
pub fn verify<F: Field>(
    property: PropertyId,
    input: &VerifyInput<F>,
    settings: &Settings,
    with_witnesses: bool,
) -> Result<Transcript> {
    let mut ctx = Ctx {
        input,
        settings,
        rec: Rec::new(),
    };
    let run = match property {
        PropertyId::Main => ctx.main(),
        PropertyId::FrobEndo => ctx.frob_endo(),
        PropertyId::GpFilt => ctx.gp_filt(),
        PropertyId::PfinCap => ctx.pfin_cap(),
        PropertyId::Mazov => ctx.mazov(),
        PropertyId::DomdimT => ctx.domdim_t(),
        PropertyId::RingelGigs => ctx.ringel_gigs(),
        PropertyId::SelfDualCent => ctx.self_dual_cent(),
    };
    let inconclusive = match run {
        Ok(()) => None,
        Err(Error::Inconclusive(r)) => Some(r),
        Err(Error::HypothesisNotMet(r)) => {
            ctx.rec.hyp("hypothesis", r, false);
            None
        }
        Err(e) => return Err(e),
    };
    Ok(ctx.rec.finish(property, &input.label, inconclusive, with_witnesses))
}
