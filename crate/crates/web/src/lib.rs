//! Browser bindings: generate an instance, describe it, solve it.
//!
//! Everything crosses the boundary as the same text formats the CLI uses.
//! The `*_text` functions carry the logic and are plain Rust so they can be
//! tested natively; the exported wrappers only turn errors into JS strings.

use cadom::io::{describe, parse_model, parse_weights, write_model, write_solution, write_weights};
use cadom::testkit::{generate, Family, GenSpec, WeightDist, WeightSpec};
use cadom::{solve_checked, Graph, Members, Problem, WeightKind, WeightMap};
use wasm_bindgen::prelude::*;

/// Largest instance the page will generate.
pub const MAX_ARCS: usize = 2000;

/// A generated model and its weights, both as text.
#[wasm_bindgen]
#[derive(Debug)]
pub struct Instance {
    model: String,
    weights: String,
}

#[wasm_bindgen]
impl Instance {
    #[wasm_bindgen(getter)]
    pub fn model(&self) -> String {
        self.model.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn weights(&self) -> String {
        self.weights.clone()
    }
}

/// Solution block plus the members flattened for drawing.
#[wasm_bindgen]
#[derive(Debug)]
pub struct Answer {
    text: String,
    members: Vec<u32>,
}

#[wasm_bindgen]
impl Answer {
    #[wasm_bindgen(getter)]
    pub fn text(&self) -> String {
        self.text.clone()
    }

    /// Chosen arc ids (0-based) for vertex problems, or endpoint pairs laid
    /// out flat for edge problems.
    #[wasm_bindgen(getter)]
    pub fn members(&self) -> Vec<u32> {
        self.members.clone()
    }
}

pub fn generate_text(family: &str, n: usize, seed: u64, weights: &str, problem: &str) -> Result<Instance, String> {
    if n > MAX_ARCS {
        return Err(format!("at most {MAX_ARCS} arcs"));
    }
    let family: Family = family.parse()?;
    let dist: WeightDist = weights.parse()?;
    let problem: Problem = problem.parse()?;
    let spec = GenSpec {
        seed,
        n,
        family,
        weights: WeightSpec::new(problem.kind(), dist),
    };
    let (m, w) = generate(&spec).map_err(|e| e.to_string())?;
    Ok(Instance {
        model: write_model(&m),
        weights: write_weights(&w),
    })
}

pub fn describe_text(model: &str) -> Result<String, String> {
    let m = parse_model(model).map_err(|e| e.to_string())?;
    describe(&m).map_err(|e| e.to_string())
}

pub fn solve_text(problem: &str, model: &str, weights: &str) -> Result<Answer, String> {
    let problem: Problem = problem.parse()?;
    let m = parse_model(model).map_err(|e| format!("model: {e}"))?;
    let g = Graph::from_model(&m);
    let w = if weights.trim().is_empty() {
        WeightMap::unit(problem.kind())
    } else {
        parse_weights(weights, &g, problem.kind()).map_err(|e| format!("weights: {e}"))?
    };
    if w.kind() != problem.kind() {
        let want = match problem.kind() {
            WeightKind::Vertex => "vw",
            WeightKind::Edge => "ew",
        };
        return Err(format!("{problem} needs `{want}` weight lines"));
    }
    let sol = solve_checked(problem, &m, &w).map_err(|e| e.to_string())?;
    let members = match (&sol.feasible, &sol.members) {
        (false, _) => Vec::new(),
        (true, Members::Vertices(vs)) => vs.iter().map(|&v| v as u32).collect(),
        (true, Members::Edges(es)) => es.iter().flat_map(|&(a, b)| [a as u32, b as u32]).collect(),
    };
    Ok(Answer {
        text: write_solution(&sol),
        members,
    })
}

/// Arc endpoints laid out flat (`s1 t1 s2 t2 ..`) for drawing.
pub fn arcs_text(model: &str) -> Result<Vec<u32>, String> {
    let m = parse_model(model).map_err(|e| e.to_string())?;
    Ok(m.to_pairs().iter().flat_map(|&(s, t)| [s as u32, t as u32]).collect())
}

#[wasm_bindgen(js_name = generate)]
pub fn generate_js(family: &str, n: usize, seed: u64, weights: &str, problem: &str) -> Result<Instance, JsValue> {
    generate_text(family, n, seed, weights, problem).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = describe)]
pub fn describe_js(model: &str) -> Result<String, JsValue> {
    describe_text(model).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(problem: &str, model: &str, weights: &str) -> Result<Answer, JsValue> {
    solve_text(problem, model, weights).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = arcs)]
pub fn arcs_js(model: &str) -> Result<Vec<u32>, JsValue> {
    arcs_text(model).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const C6: &str = "p ca 6\na 1 0 3\na 2 2 5\na 3 4 7\na 4 6 9\na 5 8 11\na 6 10 1\n";

    #[test]
    fn solve_ring() {
        let a = solve_text("mwevd", C6, "").unwrap();
        assert!(a.text.starts_with("s OPTIMAL 2/1\n"));
        assert_eq!(a.members, vec![0, 3]);
        let a = solve_text("mweed", C6, "").unwrap();
        assert_eq!(a.members.len(), 4);
    }

    #[test]
    fn generated_instance_solves() {
        let inst = generate_text("random", 9, 4, "signed", "mwped").unwrap();
        let a = solve_text("mwped", &inst.model, &inst.weights).unwrap();
        assert!(a.text.starts_with("s OPTIMAL"));
        assert_eq!(arcs_text(&inst.model).unwrap().len(), 18);
    }

    #[test]
    fn errors_are_messages() {
        assert!(solve_text("mwevd", "p ca 1\na 1 0 0\n", "").is_err());
        assert!(solve_text("mwevd", C6, "vw 1 -1\n").unwrap_err().contains("negative"));
        assert!(solve_text("mweed", C6, "vw 1 2\n").unwrap_err().contains("ew"));
        assert!(generate_text("random", MAX_ARCS + 1, 0, "unit", "mwevd").is_err());
        assert!(describe_text(C6).unwrap().contains("cycle 1 2 3 4 5 6"));
    }
}
