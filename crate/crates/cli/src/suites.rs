//! The named verification suites behind `wittrep verify`.
//!
//! Every check produces one report line with a stable name, a pass/fail/skip
//! status, and an optional witness payload. Output order is fixed by the
//! canonical suite order regardless of how the work is scheduled.

use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wittrep_core::analysis::{
    centralizer_dim, distribution_table, faithfulness_enum, faithfulness_criterion,
    fixed_space_filtration, gaussian_example_report, jordan_block, jordan_type,
    weight_chain_witness, weight_decomposition, FaithfulnessError,
};
use wittrep_core::group::{
    check_eta_hom, check_gamma_equivariance, check_torus_conj_on_upper,
    check_torus_fixes_central, group_order, hat_group_elements, radical_generation_check,
    random_sl2, GroupElement, HatGroupElement, Sl2LieElement,
};
use wittrep_core::rep::{
    drho, drho_kernel, hat_rep_matrix, homomorphism_check_exhaustive,
    homomorphism_check_generators, homomorphism_check_sampled, rho_matrix, LieDirection,
};
use wittrep_core::ring::{FqCtx, Ring};
use wittrep_core::witt::{witt2_zmod_iso_check, Witt2};

use crate::json::{CheckReport, Status};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub ctx: FqCtx,
    /// Cap on enumerated group elements.
    pub enum_budget: u64,
    /// Cap on quadratic pair sweeps.
    pub pair_budget: u64,
    pub seed: u64,
}

impl SuiteConfig {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// The verification suites, in canonical execution and output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    WittIso,
    GroupIdentities,
    Faithfulness,
    Weights,
    DistOps,
    Lie,
    Filtration,
    Jordan,
    Gauss,
    HatRep,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::WittIso,
        Suite::GroupIdentities,
        Suite::Faithfulness,
        Suite::Weights,
        Suite::DistOps,
        Suite::Lie,
        Suite::Filtration,
        Suite::Jordan,
        Suite::Gauss,
        Suite::HatRep,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::WittIso => "witt-iso",
            Suite::GroupIdentities => "group-identities",
            Suite::Faithfulness => "faithfulness",
            Suite::Weights => "weights",
            Suite::DistOps => "distops",
            Suite::Lie => "lie",
            Suite::Filtration => "filtration",
            Suite::Jordan => "jordan",
            Suite::Gauss => "gauss",
            Suite::HatRep => "hat-rep",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|s| s.name() == name)
    }

    pub fn run(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        match self {
            Suite::WittIso => witt_iso(cfg),
            Suite::GroupIdentities => group_identities(cfg),
            Suite::Faithfulness => faithfulness(cfg),
            Suite::Weights => weights(cfg),
            Suite::DistOps => distops(cfg),
            Suite::Lie => lie(cfg),
            Suite::Filtration => filtration(cfg),
            Suite::Jordan => jordan(cfg),
            Suite::Gauss => gauss(cfg),
            Suite::HatRep => hat_rep(cfg),
        }
    }
}

fn report(
    cfg: &SuiteConfig,
    name: &str,
    body: impl FnOnce() -> (Status, Option<Value>),
) -> CheckReport {
    let start = Instant::now();
    let (status, witness) = body();
    CheckReport {
        check: name.to_string(),
        p: cfg.ctx.p(),
        q: cfg.ctx.q(),
        status,
        witness,
        timing_ms: start.elapsed().as_millis(),
    }
}

fn pass(witness: Value) -> (Status, Option<Value>) {
    (Status::Pass, Some(witness))
}

fn fail(witness: Value) -> (Status, Option<Value>) {
    (Status::Fail, Some(witness))
}

fn skip(reason: &str) -> (Status, Option<Value>) {
    (Status::Skip, Some(json!({ "reason": reason })))
}

// --- witt-iso ---------------------------------------------------------------

fn witt_iso(cfg: &SuiteConfig) -> Vec<CheckReport> {
    vec![report(cfg, "witt-iso/digit-map", || {
        let p = cfg.ctx.p();
        if p > 13 {
            return skip("digit-map check is exhaustive only for p <= 13");
        }
        match witt2_zmod_iso_check(p) {
            Ok(table) => pass(json!({
                "elements": table.len(),
                "pairs_checked": table.len() * table.len(),
            })),
            Err(e) => fail(json!({
                "op": e.op.to_string(),
                "lhs": e.lhs,
                "rhs": e.rhs,
            })),
        }
    })]
}

// --- group-identities --------------------------------------------------------

fn group_identities(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let mut out = Vec::new();
    out.push(report(cfg, "group/conj-torus-upper", || {
        match check_torus_conj_on_upper(&ctx) {
            Ok(cases) => pass(json!({ "cases": cases })),
            Err(e) => fail(json!({ "t": format!("{}", e.t), "arg": format!("{}", e.arg) })),
        }
    }));
    out.push(report(cfg, "group/torus-fixes-central", || {
        match check_torus_fixes_central(&ctx) {
            Ok(cases) => pass(json!({ "cases": cases })),
            Err(e) => fail(json!({ "t": format!("{}", e.t), "arg": format!("{}", e.arg) })),
        }
    }));
    out.push(report(cfg, "group/eta-homomorphism", || {
        let mut rng = cfg.rng();
        match check_eta_hom(&ctx, &mut rng, 10_000) {
            Ok(pairs) => pass(json!({ "pairs": pairs })),
            Err((g, h)) => fail(json!({ "g": format!("{g}"), "h": format!("{h}") })),
        }
    }));
    out.push(report(cfg, "group/gamma-equivariance", || {
        let mut rng = cfg.rng();
        match check_gamma_equivariance(&ctx, &mut rng, 100) {
            Ok(cases) => pass(json!({ "cases": cases })),
            Err(g) => fail(json!({ "g": format!("{g}") })),
        }
    }));
    out.push(report(cfg, "group/radical-generation", || {
        if ctx.q() > 9 {
            return skip("saturation sweep runs for q <= 9");
        }
        if ctx.p() == 2 {
            return skip(
                "finite-level generation fails at p = 2: the scalar part of the \
                 trace-zero space admits proper invariant subgroups",
            );
        }
        match radical_generation_check(&ctx) {
            Ok(r) => pass(json!({
                "nilpotent_span_dim": r.nilpotent_span_dim,
                "lie_dim": r.lie_dim,
                "vectors_checked": r.vectors_checked,
            })),
            Err(e) => fail(json!({
                "vector": format!("{:?}", e.vector),
                "span_dim": e.span_dim,
            })),
        }
    }));
    out
}

// --- faithfulness -------------------------------------------------------------

fn faithfulness(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let mut out = Vec::new();
    out.push(report(cfg, "faithfulness/enumeration", || {
        match faithfulness_enum(&ctx, cfg.enum_budget) {
            Ok(r) => {
                if r.group_order == r.distinct_images && r.group_order == group_order(ctx.q()) {
                    pass(json!({
                        "group_order": r.group_order,
                        "distinct_images": r.distinct_images,
                    }))
                } else {
                    fail(json!({
                        "group_order": r.group_order,
                        "distinct_images": r.distinct_images,
                    }))
                }
            }
            Err(FaithfulnessError::Collision { g, h }) => {
                fail(json!({ "g": format!("{g}"), "h": format!("{h}") }))
            }
            Err(FaithfulnessError::Budget(e)) => skip(&format!("{e}")),
        }
    }));
    out.push(report(cfg, "faithfulness/criterion", || {
        let r = faithfulness_criterion(&ctx);
        let w = json!({
            "torus_injective": r.torus_injective,
            "central_nontrivial": r.central_nontrivial,
        });
        if r.both_hold() {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "faithfulness/homomorphism", || {
        let n = group_order(ctx.q());
        if n.checked_mul(n).is_some_and(|sq| sq <= cfg.pair_budget) {
            match homomorphism_check_exhaustive(&ctx, cfg.enum_budget, cfg.pair_budget) {
                Ok(pairs) => pass(json!({ "mode": "exhaustive", "pairs": pairs })),
                Err(e) => fail(json!({ "g": format!("{}", e.g), "h": format!("{}", e.h) })),
            }
        } else {
            let mut rng = cfg.rng();
            let generators = homomorphism_check_generators(&ctx);
            let sampled = homomorphism_check_sampled(&ctx, &mut rng, 500);
            match (generators, sampled) {
                (Ok(gp), Ok(sp)) => pass(json!({
                    "mode": "generators+sampled",
                    "generator_pairs": gp,
                    "sampled_pairs": sp,
                })),
                (Err(e), _) | (_, Err(e)) => {
                    fail(json!({ "g": format!("{}", e.g), "h": format!("{}", e.h) }))
                }
            }
        }
    }));
    out
}

// --- weights -------------------------------------------------------------------

fn weights(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let p = ctx.p();
    let wd = match weight_decomposition(&ctx) {
        Ok(wd) => wd,
        Err(e) => {
            let reason = format!("{e}");
            return vec![report(cfg, "weights/decomposition", || skip(&reason))];
        }
    };
    let multiset_json = |wd: &wittrep_core::analysis::WeightDecomposition| {
        Value::Object(
            wd.multiset
                .iter()
                .map(|(w, m)| (w.to_string(), json!(m)))
                .collect(),
        )
    };
    let mut out = Vec::new();
    out.push(report(cfg, "weights/decomposition", || {
        pass(json!({
            "multiset": multiset_json(&wd),
            "by_basis": wd.by_basis,
        }))
    }));
    out.push(report(cfg, "weights/distinct-count", || {
        let count = wd.distinct_weights();
        let w = json!({ "count": count, "required": p + 1 });
        if count as u64 >= p + 1 {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "weights/space-of-dim-2", || {
        let max = wd.max_space_dim();
        let w = json!({ "max_space_dim": max });
        if max >= 2 {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "weights/negation-symmetry", || {
        let w = json!({ "multiset": multiset_json(&wd) });
        if wd.is_negation_symmetric() {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "weights/chain-witness", || {
        let table = match distribution_table(&ctx) {
            Ok(t) => t,
            Err(e) => return fail(json!({ "law": format!("{e}") })),
        };
        match weight_chain_witness(&table, &wd) {
            Ok(c) => {
                let w = json!({
                    "s": c.s,
                    "lambda": c.lambda,
                    "chain": c.chain,
                    "witness_basis": c.witness_basis,
                });
                if c.chain.len() as u64 == p + 1 {
                    pass(w)
                } else {
                    fail(w)
                }
            }
            Err(e) => fail(json!({ "error": format!("{e}") })),
        }
    }));
    out
}

// --- distops --------------------------------------------------------------------

fn distops(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let table = match distribution_table(&ctx) {
        Ok(t) => t,
        Err(wittrep_core::analysis::DistLawError::Window(e)) => {
            let reason = format!("{e}");
            return vec![report(cfg, "distops/laws", || skip(&reason))];
        }
        Err(e) => {
            let msg = format!("{e}");
            return vec![report(cfg, "distops/laws", || fail(json!({ "law": msg })))];
        }
    };
    let mut out = Vec::new();
    out.push(report(cfg, "distops/laws", || {
        pass(json!({
            "operators": wittrep_core::analysis::table_indices(&table),
            "shift_sign": table.shift_sign,
        }))
    }));
    out.push(report(cfg, "distops/specialization", || {
        let mut rng = cfg.rng();
        match table.check_specializations(&ctx, &mut rng, 20) {
            Ok(n) => pass(json!({ "samples": n })),
            Err(e) => fail(json!({ "a": format!("{}", e.a), "b": format!("{}", e.b) })),
        }
    }));
    out
}

// --- lie -------------------------------------------------------------------------

fn lie(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let p = ctx.p();
    let mut out = Vec::new();
    out.push(report(cfg, "lie/kernel-dimension", || {
        let (dim, basis) = match drho_kernel(&ctx) {
            Ok(r) => r,
            Err(e) => return fail(json!({ "error": format!("{e}") })),
        };
        let expected = if p == 2 { 1 } else { 0 };
        let kernel_is_torus_direction = if p == 2 {
            basis.len() == 1
                && basis[0]
                    .iter()
                    .enumerate()
                    .all(|(i, c)| (i == 2) != c.is_zero())
        } else {
            true
        };
        let w = json!({ "kernel_dim": dim, "expected": expected });
        if dim == expected && kernel_is_torus_direction {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "lie/central-direction-nonzero", || {
        match lie_column_is_multiple(&ctx, LieDirection::Z, 0) {
            Ok(true) => pass(json!({ "image_row": "A0^p" })),
            _ => fail(json!({ "direction": "z" })),
        }
    }));
    out.push(report(cfg, "lie/second-coordinate-nonzero", || {
        match lie_column_is_multiple(&ctx, LieDirection::E1, p as usize) {
            Ok(true) => pass(json!({ "image_row": "B0^p" })),
            _ => fail(json!({ "direction": "e1" })),
        }
    }));
    out.push(report(cfg, "lie/first-order-additivity", || {
        let dirs = LieDirection::all();
        let mut pairs = 0;
        for (i, d1) in dirs.iter().enumerate() {
            for d2 in dirs.iter().skip(i + 1) {
                let prod = d1.realize(&ctx).mul(&d2.realize(&ctx));
                let m = match rho_matrix(&prod) {
                    Ok(m) => m,
                    Err(e) => return fail(json!({ "error": format!("{e}") })),
                };
                let eps_part = m.map(|e| e.b.clone());
                let sum = drho(*d1, &ctx)
                    .unwrap()
                    .mat()
                    .add(drho(*d2, &ctx).unwrap().mat());
                if eps_part.mat() != &sum {
                    return fail(json!({ "pair": [d1.label(), d2.label()] }));
                }
                pairs += 1;
            }
        }
        pass(json!({ "pairs": pairs }))
    }));
    out.push(report(cfg, "lie/radical-fixes-tangents", || {
        if p == 2 {
            return skip("the radical action on the tangent space is checked for p > 2");
        }
        let u = GroupElement::upper(Witt2::new(ctx.zero(), ctx.one()))
            .map(|e| wittrep_core::ring::DualNumber::constant(e.clone()));
        for dir in LieDirection::all() {
            let g = dir.realize(&ctx);
            if g.conj(&u) != g {
                return fail(json!({ "direction": dir.label() }));
            }
        }
        pass(json!({ "directions": 6 }))
    }));
    out
}

/// The image of the `A1` basis vector under a tangent direction must be a
/// nonzero multiple of a single monomial row.
fn lie_column_is_multiple(
    ctx: &FqCtx,
    dir: LieDirection,
    expected_row: usize,
) -> Result<bool, wittrep_core::rep::RepError> {
    let m = drho(dir, ctx)?;
    let col = m.basis().a1_index();
    let mut ok = !m.at(expected_row, col).is_zero();
    for row in 0..m.dim() {
        if row != expected_row && !m.at(row, col).is_zero() {
            ok = false;
        }
    }
    Ok(ok)
}

// --- filtration -------------------------------------------------------------------

fn filtration(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    vec![report(cfg, "filtration/fixed-spaces", || {
        match fixed_space_filtration(&ctx) {
            Ok(r) => {
                let w = json!({
                    "layers": r.layer_dims,
                    "fixed_dim": r.fixed_dim,
                    "fixed_dim_oracle": r.fixed_dim_oracle,
                    "certified_layers": r.certified_layers,
                    "total": r.total(),
                });
                let dim = ctx.p() as usize + 3;
                if r.total() == dim
                    && r.layer_dims.iter().all(|d| *d > 0)
                    && r.fixed_dim == r.fixed_dim_oracle
                    && r.certified_layers == r.layer_dims.len()
                {
                    pass(w)
                } else {
                    fail(w)
                }
            }
            Err(e) => fail(json!({ "error": format!("{e}") })),
        }
    })]
}

// --- jordan -----------------------------------------------------------------------

fn jordan(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let p = ctx.p();
    let mut out = Vec::new();
    out.push(report(cfg, "jordan/unipotent-orders", || {
        let x10 = GroupElement::upper(Witt2::new(ctx.one(), ctx.zero())).order();
        let x01 = GroupElement::upper(Witt2::new(ctx.zero(), ctx.one())).order();
        let w = json!({ "order_x10": x10, "order_x01": x01 });
        if x10 == p * p && x01 == p {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "jordan/regular-block-order", || {
        let block = jordan_block(&ctx, p as usize + 1);
        match jordan_type(&block) {
            Ok(jt) => {
                let w = json!({ "partition": jt.partition, "order": jt.order });
                if jt.order == p * p && jt.is_regular() {
                    pass(w)
                } else {
                    fail(w)
                }
            }
            Err(e) => fail(json!({ "error": format!("{e}") })),
        }
    }));
    out.push(report(cfg, "jordan/rho-unipotent-type", || {
        let m = match rho_matrix(&GroupElement::upper(Witt2::new(ctx.one(), ctx.zero()))) {
            Ok(m) => m,
            Err(e) => return fail(json!({ "error": format!("{e}") })),
        };
        match jordan_type(m.mat()) {
            Ok(jt) => {
                let w = json!({
                    "partition": jt.partition,
                    "order": jt.order,
                    "max_block": jt.max_block(),
                });
                if jt.max_block() as u64 >= p + 1 && jt.order == p * p {
                    pass(w)
                } else {
                    fail(w)
                }
            }
            Err(e) => fail(json!({ "error": format!("{e}") })),
        }
    }));
    out.push(report(cfg, "jordan/centralizer-regular", || {
        for n in 2..=6usize {
            let d = centralizer_dim(&jordan_block(&ctx, n));
            if d != n {
                return fail(json!({ "n": n, "dim": d }));
            }
        }
        pass(json!({ "sizes": [2, 3, 4, 5, 6] }))
    }));
    out
}

// --- gauss ------------------------------------------------------------------------

fn gauss(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let p = cfg.ctx.p();
    vec![report(cfg, "gauss/example", || {
        if p > 7 {
            return skip("Gaussian example runs at p <= 7");
        }
        let r = gaussian_example_report(p);
        let w = crate::gauss_report_json(&r);
        if r.skipped.is_some() {
            (Status::Skip, Some(w))
        } else if r.iso_found {
            pass(w)
        } else {
            fail(w)
        }
    })]
}

// --- hat-rep ----------------------------------------------------------------------

fn hat_rep(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let ctx = cfg.ctx.clone();
    let p = ctx.p();
    let q = ctx.q();
    let hat_order = q * q * q * wittrep_core::group::sl2_order(q);
    let mut out = Vec::new();
    out.push(report(cfg, "hat-rep/kernel", || {
        if hat_order > cfg.enum_budget {
            return skip("semidirect product exceeds the enumeration budget");
        }
        let kernel: Vec<HatGroupElement> = hat_group_elements(&ctx)
            .into_iter()
            .filter(|e| hat_rep_matrix(e, &ctx).is_identity())
            .collect();
        // kernel is {(0, +-I)}; in characteristic 2 those coincide
        let expected_size = if p == 2 { 1 } else { 2 };
        let expected = kernel.len() == expected_size
            && kernel
                .iter()
                .all(|e| e.v.is_zero() && (e.a.is_identity() || e.a.neg().is_identity()));
        let w = json!({ "kernel_size": kernel.len(), "group_order": hat_order });
        if expected {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "hat-rep/dimension", || {
        let w = json!({ "dim": 4, "bound": p + 3 });
        if 4 < p + 3 {
            pass(w)
        } else {
            fail(w)
        }
    }));
    out.push(report(cfg, "hat-rep/homomorphism", || {
        if hat_order.checked_mul(hat_order).is_some_and(|sq| sq <= cfg.pair_budget) {
            let elements = hat_group_elements(&ctx);
            let mats: Vec<_> = elements
                .iter()
                .map(|e| hat_rep_matrix(e, &ctx))
                .collect();
            for (i, x) in elements.iter().enumerate() {
                for (j, y) in elements.iter().enumerate() {
                    if mats[i].mul(&mats[j]) != hat_rep_matrix(&x.mul(y), &ctx) {
                        return fail(json!({ "i": i, "j": j }));
                    }
                }
            }
            pass(json!({ "mode": "exhaustive", "pairs": elements.len() * elements.len() }))
        } else {
            let mut rng = cfg.rng();
            let samples = 2000;
            for _ in 0..samples {
                let x = random_hat(&ctx, &mut rng);
                let y = random_hat(&ctx, &mut rng);
                let lhs = hat_rep_matrix(&x, &ctx).mul(&hat_rep_matrix(&y, &ctx));
                if lhs != hat_rep_matrix(&x.mul(&y), &ctx) {
                    return fail(json!({ "x": format!("{x:?}"), "y": format!("{y:?}") }));
                }
            }
            pass(json!({ "mode": "sampled", "pairs": samples }))
        }
    }));
    out
}

fn random_hat<G: rand_core::RngCore>(ctx: &FqCtx, rng: &mut G) -> HatGroupElement {
    HatGroupElement {
        v: Sl2LieElement::new(
            ctx.random_element(rng),
            ctx.random_element(rng),
            ctx.random_element(rng),
        ),
        a: random_sl2(ctx, rng),
    }
}
