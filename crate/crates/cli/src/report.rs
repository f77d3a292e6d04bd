//! JSON report assembly. serde_json's default map keeps keys sorted, so a
//! report serialized twice from the same inputs is byte-identical; nothing
//! time- or platform-dependent may be written here.

use serde_json::{json, Value};

use rainbow_core::acceptance::CriterionResult;
use rainbow_core::coloring::Coloring;
use rainbow_core::graph::CorollaryReport;
use rainbow_core::lattice::QuasiPolynomial;
use rainbow_core::rainbow_number::{FibonacciClaimsReport, RainbowNumberEstimate};
use rainbow_core::regularity::{NotRegularReason, RegularityVerdict};
use rainbow_core::search::{RainbowReport, RobustReport};
use rainbow_core::{Int, Rational};

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn int_vector(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn rational_vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn coloring(c: &Coloring) -> Value {
    json!({
        "N": c.n(),
        "k": c.k(),
        "assignment": c.assignment(),
        "class_sizes": c.class_sizes(),
    })
}

pub fn verdict(v: &RegularityVerdict) -> Value {
    let reason = v.reason.as_ref().map(|r| match r {
        NotRegularReason::NoPositiveVector => "no positive kernel vector".to_string(),
        NotRegularReason::FailingPair(i, j) => format!("pair ({i}, {j}) fails the rank test"),
        NotRegularReason::NoColumns => "matrix has no columns".to_string(),
    });
    json!({
        "regular": v.regular,
        "positive_witness": v.positive_witness.as_ref().map(|w| int_vector(w)),
        "failing_pair": v.failing_pair.map(|(i, j)| json!([i, j])),
        "vanishing_row": v.vanishing_row.as_ref().map(|r| rational_vector(r)),
        "reason": reason,
        "condition_iii": v.condition_iii.as_ref().map(|c| json!({
            "pass": c.pass,
            "full_rank": c.full_rank,
            "table": c.table.iter().map(|((i, j), r)| json!({
                "pair": [i, j],
                "rank": r,
            })).collect::<Vec<_>>(),
        })),
        "condition_iv": v.condition_iv.as_ref().map(|c| json!({
            "pass": c.pass,
            "table": c.table.iter().map(|((i, j), p)| json!({
                "pair": [i, j],
                "pass": p,
            })).collect::<Vec<_>>(),
        })),
    })
}

pub fn quasi_polynomial(qp: &QuasiPolynomial) -> Value {
    json!({
        "degree": qp.degree,
        "period": qp.period,
        "coefficients_by_residue": qp.coefficients.iter()
            .map(|c| rational_vector(c))
            .collect::<Vec<_>>(),
        "leading_coefficient": rational(&qp.leading_coefficient()),
    })
}

pub fn rainbow(r: &RainbowReport) -> Value {
    json!({
        "found": r.found,
        "witness": r.witness.as_ref().map(|w| int_vector(w)),
        "solutions_scanned": r.solutions_scanned,
        "non_rainbow_count": r.non_rainbow_count,
        "bound": r.bound.map(|b| b.to_string()),
    })
}

pub fn robust(r: &RobustReport) -> Value {
    json!({
        "k": r.k,
        "N": r.n,
        "eps_over_c": rational(&r.eps_rel),
        "c_squared": rational(&r.c_squared),
        "max_class_size": r.max_class_size,
        "trials": r.trials,
        "successes": r.successes,
        "failed_trials": r.failed_trials,
    })
}

pub fn estimate(e: &RainbowNumberEstimate) -> Value {
    json!({
        "k_min": e.k_range.0,
        "k_max": e.k_range.1,
        "n_max": e.n_max,
        "smallest_clean_k": e.smallest_clean_k,
        "certificates": e.certificates.iter().map(|(k, n, c)| json!({
            "k": k,
            "n": n,
            "coloring": coloring(c),
        })).collect::<Vec<_>>(),
        "note": "a certificate proves non-k-regularity; a clean sweep up to n_max is evidence, not proof, of k-regularity",
    })
}

pub fn fibonacci(rep: &FibonacciClaimsReport) -> Value {
    json!({
        "d": rep.d,
        "t_max": rep.t_max,
        "vertices_ok": rep.vertices_ok,
        "vertices": rep.vertices.iter().map(|v| rational_vector(v)).collect::<Vec<_>>(),
        "counts_ok": rep.counts_ok,
        "counts": rep.counts.iter().map(|(t, closed, poly, tri)| json!({
            "t": t,
            "closed_form": closed.to_string(),
            "polytope_positive_points": poly,
            "triangle_positive_points": tri,
        })).collect::<Vec<_>>(),
        "lower_bound_ok": rep.lower_bound_ok,
        "lower_bound_counterexample": rep.lower_bound_counterexample.as_ref().map(|w| int_vector(w)),
        "all_ok": rep.all_ok(),
    })
}

pub fn corollary(rep: &CorollaryReport) -> Value {
    json!({
        "three_edge_connected": rep.three_edge_connected,
        "rank_condition": rep.rank_condition,
        "positive_flow_found": rep.positive_flow_found,
        "flow_side": rep.flow_side,
        "agree": rep.agree,
        "regular_after_reorientation": rep.regular_after_reorientation,
        "incidence_rank": rep.incidence_rank,
        "component_count": rep.component_count,
        "positive_flow": rep.positive_flow.as_ref().map(|pf| json!({
            "flipped_edges": pf.flipped,
            "values": pf.flow.values,
        })),
    })
}

pub fn criteria(results: &[CriterionResult]) -> Value {
    json!({
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "details": r.details,
        })).collect::<Vec<_>>(),
        "all_passed": results.iter().all(|r| r.passed),
    })
}

/// Wrap a subcommand payload into the common report envelope.
pub fn envelope(command: &str, inputs: Value, payload: Value) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "report": payload,
    })
}

pub fn to_pretty_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
