//! Browser bindings for three views of the standard ring and the line
//! generators `a`, `b`. Every function returns a JSON string; failures come
//! back as `{"error": "..."}`.

use plring::chain::{make_kkl_generators, minimality_probe};
use plring::exactnum::{parse_closed_set, parse_open, parse_rat, Closed, Support};
use plring::higman::{co_move, moves_into};
use plring::plmap::{GenAssignment, PlMap};
use plring::ring::{make_standard_ring5, verify_ar_lemma};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Supports of `r1..r5` (and `rp1..rp5` when asked) as arcs `[name, a, b]`
/// on the circle of length 5, endpoints as exact `p/q` strings.
#[wasm_bindgen]
pub fn ring_diagram(with_rprime: bool) -> String {
    respond((|| {
        let ring = make_standard_ring5();
        let env = if with_rprime { ring.env_with_rprimes().map_err(err)? } else { ring.env() };
        let mut arcs = Vec::new();
        for name in env.names() {
            if let Support::Circle(s) = env.get(name).map_err(err)?.support() {
                for a in s.arcs() {
                    arcs.push(json!([name, a.start().to_string(), a.end().to_string()]));
                }
            }
        }
        Ok(json!({ "modulus": ring.modulus().to_string(), "arcs": arcs }))
    })())
}

/// Every identity checked for the standard ring.
#[wasm_bindgen]
pub fn ring_certificate() -> String {
    respond((|| {
        let ring = make_standard_ring5();
        let mut checks: Vec<Value> = ring
            .axiom_checks()
            .iter()
            .map(|c| json!({ "id": c.id, "status": c.status.as_str(), "witness": c.witness }))
            .collect();
        let cert = verify_ar_lemma(&ring).map_err(err)?;
        checks.extend(
            cert.checks.iter().map(|c| json!({ "id": c.id, "status": c.status.as_str(), "witness": c.witness })),
        );
        let passed = checks.iter().all(|c| c["status"] == "PASS");
        Ok(json!({ "passed": passed, "checks": checks }))
    })())
}

/// A word in `r1..r5` of at most `max_len` letters carrying the closed set
/// `k` into the open arc `j`.
#[wasm_bindgen]
pub fn find_move(k: &str, j: &str, max_len: u32, commutator: bool) -> String {
    respond((|| {
        let ring = make_standard_ring5();
        let env = ring.env();
        let k = parse_closed_set(k).map_err(err)?;
        let j = parse_open(j, Some(ring.modulus())).map_err(err)?;
        let found = co_move(&env, ring.names(), &k, &j, max_len as usize, commutator).map_err(err)?;
        Ok(match found {
            Some(m) => {
                let verified = moves_into(&env, &m.word, &k, &j).map_err(err)?;
                let blocks: Vec<String> = m.blocks.iter().map(|(x, y)| format!("[{x},{y}]")).collect();
                json!({ "found": true, "word": m.word.to_string(), "stage": m.stage, "verified": verified, "blocks": blocks })
            }
            None => json!({ "found": false }),
        })
    })())
}

/// Orbit coverage of `window` under the line generators named in `gens`
/// (from `a`, `b`), one row per depth.
#[wasm_bindgen]
pub fn orbit_coverage(gens: &str, seed: &str, window: &str, eps: &str, depth: u32) -> String {
    respond((|| {
        let (a, b) = make_kkl_generators();
        let mut env = GenAssignment::new();
        for g in gens.split(',').map(str::trim).filter(|g| !g.is_empty()) {
            let m = match g {
                "a" => a.clone(),
                "b" => b.clone(),
                _ => return Err(format!("unknown generator `{g}`")),
            };
            env.insert(g, PlMap::Line(m)).map_err(err)?;
        }
        let window: Closed = window.parse().map_err(err)?;
        let seed = parse_rat(seed).map_err(err)?;
        let eps = parse_rat(eps).map_err(err)?;
        let report = minimality_probe(&env, &seed, &window, &eps, depth as usize).map_err(err)?;
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| json!({ "depth": r.depth, "points": r.points, "covered": r.covered, "cells": r.cells }))
            .collect();
        let points: Vec<Value> = report.points.iter().map(|(x, w)| json!([x.to_string(), w.to_string()])).collect();
        Ok(json!({ "rows": rows, "points": points, "sound": report.sound }))
    })())
}
