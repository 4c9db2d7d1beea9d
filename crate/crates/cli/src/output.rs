//! JSON envelopes for analysis results. Structure files themselves are
//! produced by `coderco::format`.

use serde_json::{json, Value};

use coderco::cochain::{Cochain, CoderCochain};
use coderco::cohomology::{CohomologyReport, DegreeReport, LesReport};
use coderco::deform::{
    Deformation, Extension, Infinitesimal, InfinitesimalComparison, ObstructionPair, Trivialization,
};
use coderco::exactlin::SparseVec;
use coderco::format;
use coderco::report::ValidationReport;
use coderco::Scalar;

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn sparse_vec(v: &SparseVec) -> Value {
    Value::Array(v.iter().map(|(i, c)| json!([i, c.to_string()])).collect())
}

fn cochain(c: &Cochain) -> Value {
    json!({ "degree": c.degree(), "map": format::map_entries(c.map(), c.dim_c(), c.degree()) })
}

fn coder_cochain(x: &CoderCochain) -> Value {
    let mut v = json!({ "degree": x.degree(), "f": cochain(x.f()) });
    if let Some(g) = x.g() {
        v["g"] = cochain(g);
    }
    v
}

fn degree(d: &DegreeReport, timings: bool) -> Value {
    let mut v = json!({
        "degree": d.degree,
        "dim_cochains": d.dim_cochains,
        "dim_z": d.dim_z,
        "dim_b": d.dim_b,
        "dim_h": d.dim_h,
        "representatives": d.representatives.iter().map(sparse_vec).collect::<Vec<_>>(),
    });
    if timings {
        v["seconds"] = json!(d.elapsed.as_secs_f64());
    }
    v
}

pub fn cohomology(
    module: &str,
    nmax: usize,
    hoch: &CohomologyReport,
    coder: &CohomologyReport,
    les: Option<&LesReport>,
    timings: bool,
) -> Value {
    let mut v = json!({
        "kind": "cohomology_report",
        "coalgebra_dim": hoch.dim_c,
        "module": module,
        "module_dim": hoch.dim_m,
        "nmax": nmax,
        "hochschild": hoch.degrees.iter().map(|d| degree(d, timings)).collect::<Vec<_>>(),
        "coder": coder.degrees.iter().map(|d| degree(d, timings)).collect::<Vec<_>>(),
    });
    if let Some(les) = les {
        let rows: Vec<Value> = les
            .degrees
            .iter()
            .map(|d| {
                json!({
                    "degree": d.degree,
                    "dim_h_coder": d.dim_h_coder,
                    "dim_h": d.dim_h,
                    "rank_omega": d.rank_omega,
                    "dim_ker": d.dim_ker,
                    "dim_coker_prev": d.dim_coker_prev,
                    "holds": d.holds,
                })
            })
            .collect();
        v["les"] = json!({ "holds": les.holds(), "degrees": rows });
    }
    v
}

pub fn validation(kind: &str, report: &ValidationReport) -> Value {
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|d| {
            let entries: Vec<Value> = d.matrix.triplets().map(|(r, c, x)| json!([c, r, x.to_string()])).collect();
            json!({ "identity": d.identity, "discrepancies": entries })
        })
        .collect();
    json!({ "kind": kind, "passed": report.passed(), "failures": failures })
}

pub fn infinitesimal(inf: &Infinitesimal) -> Value {
    json!({
        "kind": "infinitesimal",
        "order": inf.order,
        "cochain": coder_cochain(&inf.cochain),
        "is_cocycle": inf.is_cocycle,
    })
}

pub fn obstruction(order: usize, ob: &ObstructionPair) -> Value {
    json!({
        "kind": "obstruction",
        "order": order + 1,
        "ob_c": cochain(&ob.ob_c),
        "ob_psi": cochain(&ob.ob_psi),
        "is_zero": ob.is_zero(),
        "is_cocycle": ob.is_cocycle,
    })
}

pub fn extension(order: usize, result: &Extension) -> Value {
    match result {
        Extension::Extended(next) => json!({
            "kind": "extension",
            "status": "extended",
            "order": next.order(),
            "deformation": format::deformation_json(next),
        }),
        Extension::Obstructed { obstruction: ob, class } => json!({
            "kind": "extension",
            "status": "obstructed",
            "order": order,
            "obstruction": obstruction(order, ob),
            "class": scalars(class),
        }),
    }
}

pub fn trivialization(result: &Trivialization) -> Value {
    match result {
        Trivialization::Trivialized(g) => json!({
            "kind": "trivialization",
            "status": "trivialized",
            "gauge": format::gauge_json(g),
        }),
        Trivialization::Blocked { order, cochain, class } => json!({
            "kind": "trivialization",
            "status": "nontrivial_class",
            "order": order,
            "cochain": coder_cochain(cochain),
            "class": scalars(class),
        }),
    }
}

pub fn gauge_application(
    image: &Deformation,
    equivalence: &ValidationReport,
    first_order: Option<&InfinitesimalComparison>,
) -> Value {
    let mut v = json!({
        "kind": "gauge_application",
        "deformation": format::deformation_json(image),
        "equivalence": validation("equivalence", equivalence),
    });
    if let Some(cmp) = first_order {
        v["first_order"] = json!({
            "difference": coder_cochain(&cmp.difference),
            "matches_d1_phi1": cmp.report.passed(),
        });
    }
    v
}

pub fn sample(seed: u64, def: &Deformation, blocked: Option<usize>) -> Value {
    json!({
        "kind": "sample",
        "seed": seed.to_string(),
        "status": if blocked.is_some() { "obstructed" } else { "complete" },
        "blocked_order": blocked,
        "deformation": format::deformation_json(def),
    })
}
