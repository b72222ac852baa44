//! Browser bindings for the demo page in `www/`. Each export wraps a plain
//! function returning JSON text, so the logic is testable off the browser.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use wasm_bindgen::prelude::*;

use sumdist::construct::{repair_labeler, tree_labeler};
use sumdist::exact::{exact_s_star_with, SolveOptions};
use sumdist::format::parse_graph;
use sumdist::genx::sum_class_histogram;
use sumdist::hypercore::{closed_sums, is_vertex_sum_distinguishing};
use sumdist::prob::{point_margin, sum_pmf};
use sumdist::Labeling;

/// Keeps the page responsive: larger sums take long to draw anyway.
const MAX_SUPPORT: usize = 200_000;

pub fn pmf_json(l: usize, n: u64, c: f64) -> Result<String, String> {
    if l.saturating_mul(n.saturating_sub(1) as usize) > MAX_SUPPORT {
        return Err(format!("support of l(N-1)+1 above {MAX_SUPPORT} points"));
    }
    let pmf = sum_pmf(l, n).map_err(|e| e.to_string())?;
    let mut out = json!({
        "support_min": pmf.support_min(),
        "probabilities": pmf.probabilities(),
        "mean": pmf.mean(),
        "mode": pmf.mode(),
    });
    if l.is_multiple_of(2) && c > 0.0 {
        let m = point_margin(l / 2, n, c).map_err(|e| e.to_string())?;
        out["margin"] = json!(m.margin);
    }
    Ok(out.to_string())
}

pub fn label_graph_json(text: &str, method: &str) -> Result<String, String> {
    let g = parse_graph(text).map_err(|e| e.to_string())?;
    let (labeling, note) = match method {
        "repair" => {
            let out = repair_labeler(&g).map_err(|e| e.to_string())?;
            let note = format!("{} repair steps, labels within xi = {}", out.steps.len(), out.xi);
            (out.labeling, note)
        }
        "tree" => (tree_labeler(&g).map_err(|e| e.to_string())?, "leaf-peeling labeler".into()),
        "exact" => {
            if g.vertex_count() > 10 {
                return Err("exact search is limited to 10 vertices here".into());
            }
            let opts = SolveOptions {
                node_budget: 2_000_000,
                ..SolveOptions::default()
            };
            let r = exact_s_star_with(&g, &opts).map_err(|e| e.to_string())?;
            let note = format!("optimal, {} search nodes", r.nodes_expanded);
            (r.witness, note)
        }
        other => return Err(format!("unknown method `{other}`")),
    };
    let verified = is_vertex_sum_distinguishing(&g, &labeling).map_err(|e| e.to_string())?;
    let sums = closed_sums(&g, &labeling).map_err(|e| e.to_string())?;
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edges(),
        "labels": labeling.values(),
        "max_label": labeling.max_label(),
        "sums": sums,
        "verified": verified,
        "note": note,
    })
    .to_string())
}

pub fn histogram_json(n: usize, r: usize, max_label: u64, seed: u64) -> Result<String, String> {
    if max_label == 0 {
        return Err("labels must be at least 1".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<u64> = (0..n).map(|_| rng.random_range(1..=max_label)).collect();
    let f = Labeling::new(values).map_err(|e| e.to_string())?;
    let hist = sum_class_histogram(n, r, &f).map_err(|e| e.to_string())?;
    let collisions: u64 = hist.values().map(|&c| c * (c - 1) / 2).sum();
    Ok(json!({
        "labels": f.values(),
        "sums": hist.keys().collect::<Vec<_>>(),
        "counts": hist.values().collect::<Vec<_>>(),
        "colliding_pairs": collisions,
        "distinguishing": hist.values().all(|&c| c <= 1),
    })
    .to_string())
}

/// Exact distribution of a sum of `l` uniforms on `[1, n]`, plus the
/// point-probability margin at `c` when `l` is even.
#[wasm_bindgen]
pub fn pmf_curve(l: usize, n: u32, c: f64) -> Result<String, JsError> {
    pmf_json(l, n as u64, c).map_err(|e| JsError::new(&e))
}

/// Labels a graph given in `.g` text with `repair`, `tree` or `exact`.
#[wasm_bindgen]
pub fn label_graph(text: &str, method: &str) -> Result<String, JsError> {
    label_graph_json(text, method).map_err(|e| JsError::new(&e))
}

/// Sum classes of all `r`-subsets of `n` vertices under random labels in `[1, max_label]`.
#[wasm_bindgen]
pub fn sum_histogram(n: usize, r: usize, max_label: u32, seed: u32) -> Result<String, JsError> {
    histogram_json(n, r, max_label as u64, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn pmf_two_coins() {
        let v = parse(pmf_json(2, 2, 0.0).unwrap());
        assert_eq!(v["probabilities"], json!([0.25, 0.5, 0.25]));
        assert_eq!(v["mode"], 3);
        assert!(pmf_json(5000, 1000, 1.0).is_err());
        assert!(parse(pmf_json(400, 50, 1.0).unwrap())["margin"].as_f64().unwrap() < 1.0);
    }

    #[test]
    fn labels_star() {
        let star = "5 4\n0 1\n0 2\n0 3\n0 4\n";
        for method in ["repair", "tree", "exact"] {
            let v = parse(label_graph_json(star, method).unwrap());
            assert_eq!(v["verified"], true, "{method}");
        }
        assert_eq!(parse(label_graph_json(star, "exact").unwrap())["max_label"], 4);
        assert!(label_graph_json("3 3\n0 1\n1 2\n2 0\n", "tree").is_err());
        assert!(label_graph_json(star, "magic").is_err());
    }

    #[test]
    fn histogram_totals() {
        let v = parse(histogram_json(8, 3, 20, 1).unwrap());
        let total: u64 = v["counts"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).sum();
        assert_eq!(total, 56);
        assert_eq!(histogram_json(8, 3, 20, 1).unwrap(), histogram_json(8, 3, 20, 1).unwrap());
    }
}
