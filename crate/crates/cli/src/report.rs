//! Text renderings of analysis results.

use serde_json::{json, Map, Value};
use syntaxpoly::diversity::CorpusStats;
use syntaxpoly::exact::to_fraction_string;
use syntaxpoly::ingest::DatasetName;
use syntaxpoly::matrices::{DistanceMatrix, Extremes, LabelValue, LanguageSummary, PairEntry};
use syntaxpoly::typology::{Dendrogram, Embedding};

use crate::error::Result;
use crate::output::{cell, put, to_json, PLACES};

pub fn matrix_csv(m: &DistanceMatrix, exact: bool) -> String {
    let mut s = String::from("language");
    for l in m.labels() {
        s.push(',');
        s.push_str(l);
    }
    s.push('\n');
    for i in 0..m.len() {
        s.push_str(&m.labels()[i]);
        for j in 0..m.len() {
            s.push(',');
            s.push_str(&cell(m.get(i, j), exact));
        }
        s.push('\n');
    }
    s
}

pub fn matrix_json(m: &DistanceMatrix, exact: bool) -> Result<String> {
    to_json(&serde_json::to_value(m.to_report(PLACES, exact))?)
}

fn pair_json(p: &PairEntry, exact: bool) -> Value {
    let mut o = Map::new();
    o.insert("a".into(), p.a.clone().into());
    o.insert("b".into(), p.b.clone().into());
    put(&mut o, "distance", &p.value, exact);
    Value::Object(o)
}

fn label_json(v: &LabelValue, exact: bool) -> Value {
    let mut o = Map::new();
    o.insert("language".into(), v.label.clone().into());
    put(&mut o, "distance", &v.value, exact);
    Value::Object(o)
}

pub fn summary_value(
    split: DatasetName,
    n_sentences: usize,
    s: &LanguageSummary,
    exact: bool,
) -> Value {
    let mut o = Map::new();
    o.insert("split".into(), split.as_str().into());
    o.insert("n_sentences".into(), n_sentences.into());
    o.insert("n_language_pairs".into(), s.n_pairs.into());
    put(&mut o, "mean", &s.mean, exact);
    put(&mut o, "median", &s.median, exact);
    let pairs = |v: &[PairEntry]| Value::from(v.iter().map(|p| pair_json(p, exact)).collect::<Vec<_>>());
    let labels = |v: &[LabelValue]| Value::from(v.iter().map(|p| label_json(p, exact)).collect::<Vec<_>>());
    o.insert("smallest_pairs".into(), pairs(&s.smallest));
    o.insert("largest_pairs".into(), pairs(&s.largest));
    o.insert("smallest_average".into(), labels(&s.smallest_average));
    o.insert("largest_average".into(), labels(&s.largest_average));
    o.insert("average".into(), labels(&s.average));
    Value::Object(o)
}

/// Long-format rows `statistic,rank,language_a,language_b,value`.
pub fn summary_csv(split: DatasetName, s: &LanguageSummary, exact: bool) -> String {
    let mut out = String::from("split,statistic,rank,language_a,language_b,value\n");
    let mut row = |stat: &str, rank: usize, a: &str, b: &str, v: &syntaxpoly::Exact| {
        out.push_str(&format!("{split},{stat},{rank},{a},{b},{}\n", cell(v, exact)));
    };
    row("mean", 0, "", "", &s.mean);
    row("median", 0, "", "", &s.median);
    for (k, p) in s.smallest.iter().enumerate() {
        row("smallest_pair", k + 1, &p.a, &p.b, &p.value);
    }
    for (k, p) in s.largest.iter().enumerate() {
        row("largest_pair", k + 1, &p.a, &p.b, &p.value);
    }
    for (k, p) in s.smallest_average.iter().enumerate() {
        row("smallest_average", k + 1, &p.label, "", &p.value);
    }
    for (k, p) in s.largest_average.iter().enumerate() {
        row("largest_average", k + 1, &p.label, "", &p.value);
    }
    for p in &s.average {
        row("average", 0, &p.label, "", &p.value);
    }
    out
}

pub fn diversity_value(s: &CorpusStats, exact: bool) -> Value {
    let mut o = Map::new();
    o.insert("language".into(), s.language.clone().into());
    o.insert("n_sentences".into(), s.n_sentences.into());
    o.insert("n_pairs".into(), s.n_pairs.into());
    put(&mut o, "diameter", &s.diameter, exact);
    o.insert(
        "diameter_pair".into(),
        match &s.diameter_pair {
            Some((a, b)) => json!([a, b]),
            None => Value::Null,
        },
    );
    put(&mut o, "mean", &s.mean, exact);
    o.insert("bin_width".into(), to_fraction_string(&s.bin_width).into());
    let bins: Vec<Value> = s
        .bins()
        .map(|(lo, hi, count)| {
            let mut b = Map::new();
            put(&mut b, "lo", &lo, exact);
            put(&mut b, "hi", &hi, exact);
            b.insert("count".into(), count.into());
            Value::Object(b)
        })
        .collect();
    o.insert("bins".into(), bins.into());
    let mut extras = Map::new();
    extras.insert(
        "note".into(),
        "additional indices, not part of the diameter/mean definition".into(),
    );
    put(&mut extras, "min", &s.min, exact);
    put(&mut extras, "variance", &s.variance, exact);
    o.insert("extras".into(), Value::Object(extras));
    Value::Object(o)
}

/// One row per histogram bin, with the corpus statistics repeated.
pub fn diversity_csv(stats: &[CorpusStats], exact: bool) -> String {
    let mut out = String::from("language,n_sentences,n_pairs,diameter,mean,bin_lo,bin_hi,count\n");
    for s in stats {
        for (lo, hi, count) in s.bins() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                s.language,
                s.n_sentences,
                s.n_pairs,
                cell(&s.diameter, exact),
                cell(&s.mean, exact),
                cell(&lo, exact),
                cell(&hi, exact),
                count
            ));
        }
    }
    out
}

pub struct ExtremesReport<'a> {
    pub split: DatasetName,
    pub lang_a: &'a str,
    pub lang_b: &'a str,
    pub n_sentences: usize,
    pub extremes: &'a Extremes,
    /// Texts of (min, max) sentences in `lang_a` and `lang_b`.
    pub texts: [[Option<&'a str>; 2]; 2],
}

impl ExtremesReport<'_> {
    pub fn json(&self, exact: bool) -> Result<String> {
        let e = self.extremes;
        let side = |sid: &str, v: &syntaxpoly::Exact, ties: &[String], texts: [Option<&str>; 2]| {
            let mut o = Map::new();
            o.insert("sent_id".into(), sid.into());
            put(&mut o, "distance", v, exact);
            o.insert("ties".into(), ties.to_vec().into());
            o.insert(format!("text_{}", self.lang_a), texts[0].into());
            o.insert(format!("text_{}", self.lang_b), texts[1].into());
            Value::Object(o)
        };
        to_json(&json!({
            "split": self.split.as_str(),
            "language_a": self.lang_a,
            "language_b": self.lang_b,
            "n_sentences": self.n_sentences,
            "min": side(&e.min_sent_id, &e.min, &e.min_ties, self.texts[0]),
            "max": side(&e.max_sent_id, &e.max, &e.max_ties, self.texts[1]),
        }))
    }

    /// Rows `kind,sent_id,distance`, the chosen sentence first, then the other ties.
    pub fn csv(&self, exact: bool) -> String {
        let e = self.extremes;
        let mut out = String::from("kind,sent_id,distance\n");
        for (kind, sid, v, ties) in [
            ("min", &e.min_sent_id, &e.min, &e.min_ties),
            ("max", &e.max_sent_id, &e.max, &e.max_ties),
        ] {
            out.push_str(&format!("{kind},{sid},{}\n", cell(v, exact)));
            for t in ties.iter().filter(|t| *t != sid) {
                out.push_str(&format!("{kind}_tie,{t},{}\n", cell(v, exact)));
            }
        }
        out
    }
}

pub fn dendrogram_json(d: &Dendrogram, newick: &str) -> Result<String> {
    let merges: Vec<Value> = d
        .merges()
        .iter()
        .map(|m| {
            json!({
                "left": m.left,
                "right": m.right,
                "height": m.height,
                "size": m.size,
            })
        })
        .collect();
    to_json(&json!({
        "labels": d.labels(),
        "newick": newick,
        "merges": merges,
    }))
}

/// Rows `step,left,right,height,size`; ids below the label count are leaves.
pub fn dendrogram_csv(d: &Dendrogram) -> String {
    let mut out = String::from("step,left,right,height,size\n");
    let name = |id: usize| {
        d.labels()
            .get(id)
            .cloned()
            .unwrap_or_else(|| format!("#{}", id - d.leaf_count() + 1))
    };
    for (k, m) in d.merges().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{:.6},{}\n",
            k + 1,
            name(m.left),
            name(m.right),
            m.height,
            m.size
        ));
    }
    out
}

pub fn embedding_json(e: &Embedding) -> Result<String> {
    let points: Vec<Value> = e
        .labels
        .iter()
        .zip(&e.coordinates)
        .map(|(l, p)| json!({"label": l, "coordinates": p.iter().map(|x| x + 0.0).collect::<Vec<f64>>()}))
        .collect();
    to_json(&json!({
        "points": points,
        "eigenvalues": e.eigenvalues,
        "eigenvalue_shares": e.eigenvalue_shares(),
        "warnings": e.warnings,
    }))
}
