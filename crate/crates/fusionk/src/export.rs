//! Text exports: CSV product expansions, pretty product lines, DOT graphs.

use fusionk_core::graphs::{build_gamma, build_gamma_prime, BipartiteGraph};
use fusionk_core::FusionTable;

/// Header `k,x,y,expansion` and one row per grade-compatible pair, in basis
/// order. The expansion is `n*label` terms joined by ` + `.
pub fn csv(t: &FusionTable) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["k", "x", "y", "expansion"])?;
    let k = t.k().to_string();
    for (x, y) in t.compatible_pairs() {
        let expansion: Vec<String> =
            t.row(x, y).iter().map(|&(z, n)| format!("{n}*{}", t.label(z))).collect();
        w.write_record([k.as_str(), &t.label(x).to_string(), &t.label(y).to_string(), &expansion.join(" + ")])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("labels are ASCII"))
}

/// `β₃ · γ₃ = 2α₂ + α₀`, one line per grade-compatible pair.
pub fn pretty(t: &FusionTable) -> String {
    let mut out = format!("# k = {}\n", t.k());
    for (x, y) in t.compatible_pairs() {
        let terms: Vec<String> = t
            .row(x, y)
            .iter()
            .map(|&(z, n)| {
                let s = t.label(z).symbol();
                if n == 1 {
                    s
                } else {
                    format!("{n}{s}")
                }
            })
            .collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        out.push_str(&format!("{} · {} = {}\n", t.label(x).symbol(), t.label(y).symbol(), rhs));
    }
    out
}

/// Both graphs for `k` as undirected DOT graphs with Greek vertex labels.
pub fn dot(k: usize) -> String {
    let mut out = String::new();
    for (name, g) in [(format!("gamma_{k}"), build_gamma(k)), (format!("gamma_prime_{k}"), build_gamma_prime(k))] {
        out.push_str(&graph_dot(&name, &g));
    }
    out
}

fn graph_dot(name: &str, g: &BipartiteGraph) -> String {
    let mut out = format!("graph {name} {{\n");
    for (shape, side) in [("circle", &g.even), ("box", &g.odd)] {
        for x in side {
            out.push_str(&format!("  {} [label=\"{}\", shape={shape}];\n", x, x.symbol()));
        }
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("  {a} -- {b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Neighbour lists, one even vertex per line.
pub fn adjacency_text(k: usize) -> String {
    let mut out = String::new();
    for (name, g) in [("Γ", build_gamma(k)), ("Γ′", build_gamma_prime(k))] {
        out.push_str(&format!(
            "# {name}_{k}: {} vertices, {} edges\n",
            g.vertex_count(),
            g.edge_count()
        ));
        for (i, x) in g.even.iter().enumerate() {
            let nbrs: Vec<String> = g
                .odd
                .iter()
                .enumerate()
                .filter(|&(j, _)| g.adjacency[(i, j)] != 0)
                .map(|(_, y)| y.symbol())
                .collect();
            out.push_str(&format!("{}: {}\n", x.symbol(), nbrs.join(", ")));
        }
    }
    out
}
