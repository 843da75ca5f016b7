#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syntaxpoly::deptree::RELATIONS;

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_syntaxpoly"));
    c.env_remove("SYNTAXPOLY_CACHE_DIR").env("RUST_LOG", "error");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// A random dependency tree as CoNLL-U token lines.
fn random_sentence(rng: &mut impl Rng, max_tokens: usize) -> String {
    let n = rng.gen_range(1..=max_tokens);
    let root = rng.gen_range(0..n);
    // Attach tokens in a random order so heads point both ways.
    let mut order: Vec<usize> = (0..n).filter(|&i| i != root).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut head = vec![0usize; n];
    let mut placed = vec![root];
    for &t in &order {
        head[t] = placed[rng.gen_range(0..placed.len())] + 1;
        placed.push(t);
    }
    let mut s = String::new();
    for i in 0..n {
        let rel = if head[i] == 0 {
            "root".to_string()
        } else {
            let mut l = rng.gen_range(0..RELATIONS.len());
            while RELATIONS[l] == "root" {
                l = rng.gen_range(0..RELATIONS.len());
            }
            // Subtypes must be stripped on input.
            if rng.gen_bool(0.1) {
                format!("{}:sub", RELATIONS[l])
            } else {
                RELATIONS[l].to_string()
            }
        };
        s.push_str(&format!("{}\tw{}\t_\t_\t_\t_\t{}\t{}\t_\t_\n", i + 1, i + 1, head[i], rel));
    }
    s
}

/// Sentence ids carrying the English-original prefix.
pub fn sent_id(k: usize) -> String {
    format!("n01{:06}", k + 1)
}

/// One `<iso>_pud-ud-test.conllu` per language with `sentences` parallel sentences.
pub fn write_dataset(dir: &Path, iso: &[&str], sentences: usize, seed: u64) -> PathBuf {
    fs::create_dir_all(dir).unwrap();
    for (l, code) in iso.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed * 1000 + l as u64);
        let mut text = String::from("# ud_version = 2.x-synthetic\n");
        for k in 0..sentences {
            text.push_str(&format!("# sent_id = {}\n# text = sentence {k} in {code}\n", sent_id(k)));
            text.push_str(&random_sentence(&mut rng, 12));
            text.push('\n');
        }
        fs::write(dir.join(format!("{code}_pud-ud-test.conllu")), text).unwrap();
    }
    dir.to_path_buf()
}

/// Relative paths and contents of every file under `dir`, sorted.
pub fn read_tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                out.push((rel, fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

/// `metadata.json` without its timestamp, the only wall-clock field.
pub fn strip_timestamp(bytes: &[u8]) -> Vec<u8> {
    let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    serde_json::to_vec_pretty(&v).unwrap()
}

/// Pipeline outputs with the timestamp removed from the metadata.
pub fn comparable_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    read_tree(dir)
        .into_iter()
        .map(|(name, bytes)| {
            if name == "metadata.json" {
                (name, strip_timestamp(&bytes))
            } else {
                (name, bytes)
            }
        })
        .collect()
}
