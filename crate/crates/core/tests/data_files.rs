//! The repository data directories are generated from the catalog and the
//! bundled library. Run with `FUSIONSEQ_REGEN=1` to rewrite them.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use fusionseq::corpus::CorpusSource;
use fusionseq::group::catalog;
use fusionseq::io::{group_to_json, load_document, module_to_json_with_ring_path, ring_to_json, sequence_to_json};
use fusionseq::library::{builtin_corpus, bundled_modules, bundled_rings, bundled_sequences};
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn expected_files() -> Vec<(PathBuf, String)> {
    let mut out = Vec::new();
    for e in catalog() {
        let g = (e.build)().with_name(e.name);
        out.push((format!("groups/{}.json", e.name).into(), group_to_json(&g)));
    }
    for (name, r) in bundled_rings() {
        out.push((format!("rings/{name}.json").into(), ring_to_json(&r)));
    }
    for (name, ring, m) in bundled_modules() {
        let text = module_to_json_with_ring_path(&m, &format!("../rings/{ring}.json"));
        out.push((format!("modules/{name}.json").into(), text));
    }
    for (name, s) in bundled_sequences() {
        out.push((format!("sequences/{name}.json").into(), sequence_to_json(&s)));
    }
    out
}

#[test]
fn data_files_are_current() {
    let regen = std::env::var_os("FUSIONSEQ_REGEN").is_some();
    let mut stale = Vec::new();
    for (rel, text) in expected_files() {
        let path = root().join(&rel);
        if regen {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &text).unwrap();
        } else if std::fs::read_to_string(&path).ok().as_deref() != Some(text.as_str()) {
            stale.push(rel.display().to_string());
        }
    }
    assert!(stale.is_empty(), "stale data files (rerun with FUSIONSEQ_REGEN=1): {stale:?}");
}

fn names<T>(v: &[(String, T)]) -> BTreeSet<String> {
    v.iter().map(|(n, _)| n.clone()).collect()
}

#[test]
fn data_directory_loads_as_the_builtin_corpus() {
    let from_dir = CorpusSource::from_dir(&root()).unwrap();
    let builtin = builtin_corpus();
    assert_eq!(names(&from_dir.groups), names(&builtin.groups));
    assert_eq!(names(&from_dir.rings), names(&builtin.rings));
    assert_eq!(names(&from_dir.modules), names(&builtin.modules));
    assert_eq!(names(&from_dir.sequences), names(&builtin.sequences));
    for (name, s) in &builtin.sequences {
        let (_, t) = from_dir.sequences.iter().find(|(n, _)| n == name).unwrap();
        assert_eq!(s, t, "{name}");
    }
    for (name, m) in &builtin.modules {
        let (_, t) = from_dir.modules.iter().find(|(n, _)| n == name).unwrap();
        assert_eq!(m, t, "{name}");
    }
    for (name, g) in &builtin.groups {
        let (_, t) = from_dir.groups.iter().find(|(n, _)| n == name).unwrap();
        assert_eq!(g.table(), t.table(), "{name}");
    }
}

/// Keys used by every data file are declared by the matching schema, and
/// every required key is present.
#[test]
fn data_files_match_schema_keys() {
    for (rel, _) in expected_files() {
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(root().join(&rel)).unwrap()).unwrap();
        let kind = doc["schema"].as_str().unwrap().to_owned();
        let schema_path = root().join(format!("schema/{kind}.schema.json"));
        let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
        let declared: BTreeSet<&str> = schema["properties"].as_object().unwrap().keys().map(String::as_str).collect();
        let keys: BTreeSet<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
        assert!(keys.is_subset(&declared), "{}: {keys:?}", rel.display());
        for r in schema["required"].as_array().unwrap() {
            assert!(keys.contains(r.as_str().unwrap()), "{}: missing {r}", rel.display());
        }
        assert!(load_document(root().join(&rel)).is_ok());
    }
}
