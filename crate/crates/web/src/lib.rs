//! Browser demo: three read-only operations over the model file format,
//! each returning a JSON string (or an error message) to the page.

use relsem::consequence::consequence_over_own_atoms;
use relsem::formula::parse;
use relsem::{Model, ModelClass, Sequent, Verdict};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest class enumeration the page may request; four worlds already take seconds.
pub const MAX_WORLDS: usize = 3;

fn model(text: &str) -> Result<Model, String> {
    Model::from_json_str(text).map_err(|e| e.to_string())
}

/// Propositions of the model's frame, and whether the valuation is an interpretation.
pub fn propositions(model_json: &str) -> Result<String, String> {
    let m = model(model_json)?;
    let props = m.frame().propositions().map_err(|e| e.to_string())?;
    let lists: Vec<Vec<usize>> = props.iter().map(|x| x.iter().collect()).collect();
    Ok(json!({ "propositions": lists, "interpretation": m.is_interpretation() }).to_string())
}

/// Extension of a formula plus its modal translation.
pub fn evaluate(model_json: &str, formula: &str) -> Result<String, String> {
    let m = model(model_json)?;
    let phi = parse(formula).map_err(|e| e.to_string())?;
    let ext: Vec<usize> = m.extension(&phi).iter().collect();
    Ok(json!({
        "formula": phi.to_string(),
        "translation": phi.translate_modal().to_string(),
        "extension": ext,
    })
    .to_string())
}

/// Bounded consequence check with the first countermodel, if any.
pub fn consequence(class: &str, max_worlds: usize, sequent: &str) -> Result<String, String> {
    let c: ModelClass = class.parse().map_err(|e| format!("{e}"))?;
    if max_worlds > MAX_WORLDS {
        return Err(format!("the demo stops at {MAX_WORLDS} worlds"));
    }
    let s = Sequent::parse(sequent).map_err(|e| e.to_string())?;
    let out = match consequence_over_own_atoms(&s, c, max_worlds).map_err(|e| e.to_string())? {
        Verdict::ValidUpTo(n) => json!({ "verdict": "valid-up-to", "max_worlds": n }),
        Verdict::Countermodel { model, point } => {
            json!({ "verdict": "countermodel", "model": model.to_json(), "world": point })
        }
    };
    Ok(out.to_string())
}

#[wasm_bindgen(js_name = propositions)]
pub fn propositions_js(model_json: &str) -> Result<String, JsError> {
    propositions(model_json).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = evaluate)]
pub fn evaluate_js(model_json: &str, formula: &str) -> Result<String, JsError> {
    evaluate(model_json, formula).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = consequence)]
pub fn consequence_js(class: &str, max_worlds: usize, sequent: &str) -> Result<String, JsError> {
    consequence(class, max_worlds, sequent).map_err(|e| JsError::new(&e))
}
