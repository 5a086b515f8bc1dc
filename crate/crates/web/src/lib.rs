//! WebAssembly bindings behind `www/index.html`.
//!
//! Every export returns a JSON string; errors surface as a thrown `Error`
//! whose message starts with the machine-readable reason.

use dqa::eigen::{random_start, rqi_from, Backend, RqiConfig};
use dqa::graph::{laplacian, random_graph, random_unit_dq};
use dqa::handeye::{axxb_solve_with_tol, diagonalize};
use dqa::{DualComplex, DualQuaternion, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn lambda_json(z: DualComplex) -> Value {
    json!({ "st": [z.st.re, z.st.im], "du": [z.du.re, z.du.im] })
}

fn js_err(e: Error) -> JsError {
    JsError::new(&format!("{}: {e}", e.reason()))
}

/// `a = q λ q*` for the eight coefficients `[w, x, y, z, wε, xε, yε, zε]`.
pub fn diagonalize_report(coeffs: &[f64]) -> Result<Value, Error> {
    let arr: [f64; 8] = coeffs.try_into().map_err(|_| Error::DimensionMismatch {
        expected: "8 coefficients".into(),
        found: coeffs.len().to_string(),
    })?;
    if arr.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("coefficients must be finite".into()));
    }
    let a = DualQuaternion::from_array(arr);
    let d = diagonalize(a);
    Ok(json!({
        "q": d.q.to_array(),
        "lambda": lambda_json(d.lambda),
        "residual": (d.reconstruct() - a).mag2(),
    }))
}

/// Random formation graph, its Laplacian's extreme eigenvalue from both
/// backends started at the same vector, and the residual history of each.
pub fn laplacian_report(n: usize, s: f64, seed: u64, power_iters: usize) -> Result<Value, Error> {
    if n > 200 {
        return Err(Error::InvalidConfig("the demo caps n at 200".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(n, s, &mut rng)?;
    let l = laplacian(&g);
    let v0 = random_start(n, &mut rng)?;
    let config = RqiConfig {
        power_iters,
        seed,
        ..RqiConfig::default()
    };
    let mut runs = Vec::new();
    for backend in [Backend::Baseline, Backend::Adjoint] {
        let e = rqi_from(&l, &v0, &config, backend)?;
        runs.push(json!({
            "backend": backend.name(),
            "lambda": [e.lambda.st, e.lambda.du],
            "iterations": e.iterations,
            "converged": e.converged,
            "residual": e.residual_e_lambda,
            "history": e.history,
            "flops": e.flops.total(),
        }));
    }
    Ok(json!({
        "n": g.n,
        "edges": g.edges,
        "degrees": g.degrees(),
        "tolerance": config.delta * l.norm_fr(),
        "runs": runs,
    }))
}

/// Synthetic `a q = q b`, `c q = q d` with a random unit `q`; `noise` adds
/// uniform perturbations of that size to every coefficient of `b` and `d`.
pub fn axxb_report(seed: u64, noise: f64, tol: f64) -> Result<Value, Error> {
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::InvalidConfig(format!("noise must be non-negative, got {noise}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = random_unit_dq(&mut rng);
    let a = random_unit_dq(&mut rng);
    let c = random_unit_dq(&mut rng);
    let mut jitter = |p: DualQuaternion| {
        let mut v = p.to_array();
        for x in &mut v {
            *x += noise * rng.gen_range(-1.0..1.0);
        }
        DualQuaternion::from_array(v)
    };
    let b = jitter(q.conj() * a * q);
    let d = jitter(q.conj() * c * q);
    let sol = axxb_solve_with_tol(a, b, c, d, tol)?;
    let err = sol.q_plus.max_abs_diff(q).min(sol.q_plus.max_abs_diff(-q));
    Ok(json!({
        "truth": q.to_array(),
        "q_plus": sol.q_plus.to_array(),
        "q_minus": sol.q_minus.to_array(),
        "residual_ab": sol.residual_ab,
        "residual_cd": sol.residual_cd,
        "error": err,
    }))
}

#[wasm_bindgen(js_name = diagonalize)]
pub fn diagonalize_js(coeffs: Vec<f64>) -> Result<String, JsError> {
    diagonalize_report(&coeffs).map(|v| v.to_string()).map_err(js_err)
}

#[wasm_bindgen(js_name = laplacianRqi)]
pub fn laplacian_rqi_js(n: usize, s: f64, seed: u32, power_iters: usize) -> Result<String, JsError> {
    laplacian_report(n, s, seed as u64, power_iters).map(|v| v.to_string()).map_err(js_err)
}

#[wasm_bindgen(js_name = axxbDemo)]
pub fn axxb_demo_js(seed: u32, noise: f64, tol: f64) -> Result<String, JsError> {
    axxb_report(seed as u64, noise, tol).map(|v| v.to_string()).map_err(js_err)
}
