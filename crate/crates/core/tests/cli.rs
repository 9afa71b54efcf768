use std::process::Command;

fn altmon(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_altmon"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn binary_card_and_member() {
    assert_eq!(altmon(&["card", "--kind", "aop", "--n", "4"]), (0, "formula=115 enumerated=115 MATCH\n".into()));
    let (code, out) = altmon(&["member", "--kind", "aor", "--n", "4", "--elt", "1->3,2->2,3->1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fast"], false);
    assert_eq!(v["oracle"], false);
}

#[test]
fn binary_exit_codes() {
    assert_eq!(altmon(&["card", "--kind", "aop"]).0, 2);
    assert_eq!(altmon(&["enum", "--kind", "aor", "--n", "10"]).0, 3);
}

#[test]
fn binary_enum_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("aop5.jsonl");
    let (code, _) = altmon(&["enum", "--kind", "aop", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 582);
    let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(header["count"], 581);
}
