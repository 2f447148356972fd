use std::collections::BTreeMap;
use std::path::PathBuf;

use serde_json::Value;

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/v1")
}

fn load_all() -> BTreeMap<String, Value> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap())
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        out.insert(name, v);
    }
    out
}

fn refs(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if k == "$ref" {
                    out.push(x.as_str().unwrap().to_string());
                } else {
                    refs(x, out);
                }
            }
        }
        Value::Array(a) => a.iter().for_each(|x| refs(x, out)),
        _ => {}
    }
}

#[test]
fn references_resolve() {
    let all = load_all();
    assert!(all.len() >= 8);
    for (name, schema) in &all {
        let mut rs = Vec::new();
        refs(schema, &mut rs);
        for r in rs {
            let (file, pointer) = r.split_once('#').unwrap();
            let target = if file.is_empty() { schema } else { &all[file] };
            assert!(target.pointer(pointer).is_some(), "{name}: dangling {r}");
        }
    }
}

#[test]
fn sample_inputs_use_declared_fields() {
    let all = load_all();
    let cases = [
        ("steinberg.json", "factors.json"),
        ("chain3.json", "monodromy.json"),
        ("integrality.json", "integrality.json"),
    ];
    let doc_keys: Vec<String> = all["common.json"]["$defs"]["document"]["properties"]
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    for (data, schema) in cases {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(data);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        let props = all[schema]["properties"].as_object().unwrap();
        for k in v.as_object().unwrap().keys() {
            assert!(props.contains_key(k) || doc_keys.contains(k), "{data}: {k} not in {schema}");
        }
    }
}
