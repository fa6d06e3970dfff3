use plring_wasm::{find_move, orbit_coverage, ring_certificate, ring_diagram};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn diagram_lists_arcs() {
    let d = parse(ring_diagram(false));
    assert_eq!(d["modulus"], "5");
    assert_eq!(d["arcs"].as_array().unwrap().len(), 5);
    assert_eq!(d["arcs"][3], serde_json::json!(["r4", "4", "1"]));

    let d = parse(ring_diagram(true));
    let arcs = d["arcs"].as_array().unwrap();
    assert_eq!(arcs.len(), 10);
    assert!(arcs.contains(&serde_json::json!(["rp1", "9/2", "37/8"])));
}

#[test]
fn certificate_passes() {
    let c = parse(ring_certificate());
    assert_eq!(c["passed"], true);
    assert_eq!(c["checks"].as_array().unwrap().len(), 10 + 80);
}

#[test]
fn mover() {
    let m = parse(find_move("[5/2,11/4]", "(3,4)", 4, false));
    assert_eq!(m["found"], true);
    assert_eq!(m["word"], "r2^2");
    assert_eq!(m["verified"], true);

    assert_eq!(parse(find_move("[5/2,11/4]", "(3,4)", 0, false))["found"], false);
    assert!(parse(find_move("[5/2", "(3,4)", 2, false))["error"].is_string());
}

#[test]
fn orbit() {
    let o = parse(orbit_coverage("a", "0", "[0,4]", "1", 3));
    let last = &o["rows"][3];
    assert_eq!((last["covered"].as_u64(), last["cells"].as_u64()), (Some(4), Some(4)));
    assert_eq!(o["sound"], true);
    assert!(parse(orbit_coverage("c", "0", "[0,4]", "1", 3))["error"].is_string());
}
