//! Bare-bones SVG renderings for a quick look at results.

use super::mds::Embedding;
use super::upgma::{ClusterId, Dendrogram};

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 48.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter plot of the first two embedding axes.
pub fn embedding_svg(e: &Embedding) -> String {
    let xs: Vec<f64> = e.coordinates.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = e
        .coordinates
        .iter()
        .map(|p| p.get(1).copied().unwrap_or(0.0))
        .collect();
    let span = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, if hi - lo > 1e-12 { hi - lo } else { 1.0 })
    };
    let (x0, xw) = span(&xs);
    let (y0, yw) = span(&ys);
    let mut s = header(W, H);
    for ((label, x), y) in e.labels.iter().zip(&xs).zip(&ys) {
        let px = PAD + (x - x0) / xw * (W - 2.0 * PAD);
        let py = H - PAD - (y - y0) / yw * (H - 2.0 * PAD);
        s.push_str(&format!(
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3\" fill=\"steelblue\"/>\n<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n",
            px + 5.0,
            py - 5.0,
            escape(label)
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Rectangular dendrogram with leaves on the left and height growing to the right.
pub fn dendrogram_svg(d: &Dendrogram) -> String {
    let n = d.leaf_count();
    let row = 18.0;
    let h = PAD * 2.0 + row * n as f64;
    let top = d.height(d.root()).max(1e-12);
    let xscale = (W - 2.0 * PAD - 60.0) / top;

    // Leaf rows follow a depth-first walk so branches never cross.
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![d.root()];
    while let Some(id) = stack.pop() {
        match d.children(id) {
            None => order.push(id),
            Some((l, r)) => {
                stack.push(r);
                stack.push(l);
            }
        }
    }
    let mut y = vec![0.0; n + d.merges().len()];
    for (rank, &leaf) in order.iter().enumerate() {
        y[leaf] = PAD + row * (rank as f64 + 0.5);
    }
    let x = |id: ClusterId| PAD + 60.0 + d.height(id) * xscale;

    let mut s = header(W, h);
    for (k, m) in d.merges().iter().enumerate() {
        let id = n + k;
        y[id] = (y[m.left] + y[m.right]) / 2.0;
        let xp = x(id);
        for c in [m.left, m.right] {
            s.push_str(&format!(
                "<path d=\"M{:.2},{:.2}H{xp:.2}V{:.2}\" fill=\"none\" stroke=\"black\"/>\n",
                x(c),
                y[c],
                y[id]
            ));
        }
    }
    for &leaf in &order {
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            PAD + 55.0,
            y[leaf] + 4.0,
            escape(&d.labels()[leaf])
        ));
    }
    s.push_str("</svg>\n");
    s
}
