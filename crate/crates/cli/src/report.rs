//! Report assembly. Nodes and coordinates are 1-based in reports; offsets
//! into a circulant's defining row (`a_0 … a_{n-1}`) stay 0-based.

use maxcirc::{
    attraction_system, check_attraction_inclusion, circulant_periodicity, classify,
    corner_matrix, corner_vector, critical_structure, hat_in_interval, hat_matrix,
    orbit_period, reduced_attraction_system, AttractionMode, Circulant, ClassifyOptions,
    InclusionVerdict, IntervalBox, IntervalCirculant, MaxVector, RobustnessStatus, Scalar,
    ScalarInterval, TwoSidedSystem,
};
use maxcirc::periodicity::circulant_transient_bound;
use serde_json::{json, Value};

use crate::problem::Problem;

pub struct Settings {
    pub mode: AttractionMode,
    pub trials: usize,
    pub seed: u64,
    pub decimal: bool,
}

pub struct Outcome {
    pub report: Value,
    pub hypothesis_not_met: bool,
}

const DECIMAL_DIGITS: usize = 12;

impl Settings {
    fn num(&self, s: &Scalar) -> Value {
        if self.decimal {
            json!({ "exact": s.to_string(), "decimal": s.to_decimal_string(DECIMAL_DIGITS) })
        } else {
            json!(s.to_string())
        }
    }

    fn row(&self, r: &[Scalar]) -> Value {
        Value::Array(r.iter().map(|s| self.num(s)).collect())
    }

    fn vector(&self, v: &MaxVector) -> Value {
        self.row(v.entries())
    }

    fn interval(&self, iv: &ScalarInterval) -> Value {
        json!({ "lower": self.num(iv.lower()), "upper": self.num(iv.upper()), "brackets": iv.kind() })
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            AttractionMode::ExactN2 => "exact_n2",
            AttractionMode::MinTransient => "min_transient",
        }
    }
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|v| v + 1).collect()).collect()
}

fn equations(s: &TwoSidedSystem) -> Vec<String> {
    s.equations().iter().map(|e| e.to_string()).collect()
}

fn exponent(c: &Circulant, mode: AttractionMode) -> maxcirc::Result<Option<usize>> {
    if c.is_zero() {
        return Ok(None);
    }
    Ok(Some(match mode {
        AttractionMode::ExactN2 => c.dim() * c.dim(),
        AttractionMode::MinTransient => circulant_periodicity(c)?.transient,
    }))
}

fn memberships(set: &Settings, c: &Circulant, sys: &TwoSidedSystem, vectors: &[MaxVector]) -> maxcirc::Result<Value> {
    let a = c.expand();
    let lambda = c.lambda();
    let rows = vectors
        .iter()
        .map(|x| {
            Ok(json!({
                "vector": set.vector(x),
                "member": sys.satisfied_by(x),
                "eigenvector": a.mat_vec(x)? == x.scale(&lambda),
                "orbit_period": orbit_period(&a, x)?,
            }))
        })
        .collect::<maxcirc::Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

fn circulant_analysis(set: &Settings, c: &Circulant, vectors: &[MaxVector]) -> maxcirc::Result<Value> {
    let sys = attraction_system(c, set.mode)?;
    let mut results = json!({
        "lambda": set.num(&c.lambda()),
        "transient_bound": circulant_transient_bound(c.dim()),
        "attraction_system": {
            "mode": set.mode_name(),
            "exponent": exponent(c, set.mode)?,
            "equations": equations(&sys),
        },
        "vectors": memberships(set, c, &sys, vectors)?,
    });
    if c.is_zero() {
        results["critical"] = Value::Null;
        return Ok(results);
    }
    let sp = c.spectral()?;
    let cs = critical_structure(&c.expand())?;
    let info = circulant_periodicity(c)?;
    results["critical"] = json!({
        "p_indices": sp.p_indices,
        "a0_is_lambda": sp.a0_is_lambda,
        "component_count": sp.component_count,
        "components": one_based(&sp.component_node_sets),
        "edges": cs.critical_edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
        "cyclic_classes": cs.cyclic_classes.iter().map(|cl| one_based(cl)).collect::<Vec<_>>(),
    });
    results["period"] = json!(info.period);
    results["period_formulas"] = json!(sp.period_formulas);
    results["transient"] = json!(info.transient);
    results["reduced_system"] = json!(equations(&reduced_attraction_system(c)?));
    Ok(results)
}

fn attraction_check(set: &Settings, c: &Circulant, vectors: &[MaxVector]) -> maxcirc::Result<Value> {
    let sys = attraction_system(c, set.mode)?;
    Ok(json!({
        "lambda": set.num(&c.lambda()),
        "mode": set.mode_name(),
        "exponent": exponent(c, set.mode)?,
        "equations": equations(&sys),
        "vectors": memberships(set, c, &sys, vectors)?,
    }))
}

fn inclusion_check(set: &Settings, a: &Circulant, b: &Circulant) -> maxcirc::Result<(Value, bool)> {
    let a_le_b = a.le(b);
    let equal_lambda = a.lambda() == b.lambda();
    let hypotheses = a_le_b && equal_lambda;
    let critical_included = if a.is_zero() || b.is_zero() {
        Value::Null
    } else {
        let ca = critical_structure(&a.expand())?;
        let cb = critical_structure(&b.expand())?;
        json!(ca.critical_edges.is_subset(&cb.critical_edges))
    };
    let verdict = match check_attraction_inclusion(a, b, set.trials, set.seed)? {
        InclusionVerdict::Consistent { samples } => json!({ "result": "consistent", "samples": samples }),
        InclusionVerdict::Counterexample(x) => {
            json!({ "result": "counterexample", "vector": set.vector(&x) })
        }
    };
    let theorem = if hypotheses {
        json!({ "status": "met" })
    } else {
        json!({ "status": "hypothesis_not_met", "reason": "inclusion is only guaranteed for A ≤ B with λ(A) = λ(B)" })
    };
    let results = json!({
        "lambda_a": set.num(&a.lambda()),
        "lambda_b": set.num(&b.lambda()),
        "a_le_b": a_le_b,
        "equal_lambda": equal_lambda,
        "theorem": theorem,
        "critical_edges_included": critical_included,
        "sampling": verdict,
    });
    Ok((results, !hypotheses))
}

fn status(s: &RobustnessStatus) -> Value {
    match s.reason() {
        Some(r) => json!({ "status": s.label(), "reason": r }),
        None => json!({ "status": s.label() }),
    }
}

fn robustness(set: &Settings, ic: &IntervalCirculant, bx: &IntervalBox) -> maxcirc::Result<(Value, bool)> {
    let report = classify(ic, bx, ClassifyOptions { mode: set.mode })?;
    let n = ic.dim();
    let statuses: serde_json::Map<String, Value> =
        report.entries().iter().map(|(k, s)| (k.to_string(), status(s))).collect();
    let corners_a = (0..n)
        .map(|k| Ok(set.row(corner_matrix(ic, k)?.row())))
        .collect::<maxcirc::Result<Vec<_>>>()?;
    let corners_x = (0..n)
        .map(|k| Ok(set.vector(&corner_vector(bx, k)?)))
        .collect::<maxcirc::Result<Vec<_>>>()?;
    let results = json!({
        "statuses": statuses,
        "hat_matrix": set.row(hat_matrix(ic).row()),
        "hat_in_interval": hat_in_interval(ic),
        "max_lower_bound": set.num(&ic.max_lower()),
        "box_closed": bx.is_closed(),
        "corner_matrices": corners_a,
        "corner_vectors": corners_x,
    });
    Ok((results, report.any_hypothesis_not_met()))
}

fn echo(set: &Settings, p: &Problem) -> Value {
    match p {
        Problem::CirculantAnalysis { circulant, vectors } | Problem::AttractionCheck { circulant, vectors } => json!({
            "circulant": set.row(circulant.row()),
            "vectors": vectors.iter().map(|v| set.vector(v)).collect::<Vec<_>>(),
        }),
        Problem::InclusionCheck { a, b } => json!({ "a": set.row(a.row()), "b": set.row(b.row()) }),
        Problem::RobustnessClassify { circulant, bx } => json!({
            "circulant": circulant.entries().iter().map(|iv| set.interval(iv)).collect::<Vec<_>>(),
            "box": bx.intervals().iter().map(|iv| set.interval(iv)).collect::<Vec<_>>(),
        }),
    }
}

pub fn run(set: &Settings, p: &Problem) -> maxcirc::Result<Outcome> {
    let (results, hypothesis_not_met) = match p {
        Problem::CirculantAnalysis { circulant, vectors } => (circulant_analysis(set, circulant, vectors)?, false),
        Problem::AttractionCheck { circulant, vectors } => (attraction_check(set, circulant, vectors)?, false),
        Problem::InclusionCheck { a, b } => inclusion_check(set, a, b)?,
        Problem::RobustnessClassify { circulant, bx } => robustness(set, circulant, bx)?,
    };
    let report = json!({
        "tool": "maxcirc",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "kind": p.kind(),
        "flags": {
            "mode": set.mode_name(),
            "trials": set.trials,
            "seed": set.seed,
            "arithmetic": if set.decimal { "decimal" } else { "rational" },
        },
        "input": echo(set, p),
        "results": results,
    });
    Ok(Outcome { report, hypothesis_not_met })
}
