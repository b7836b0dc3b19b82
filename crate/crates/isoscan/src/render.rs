//! Plain-text tables and DOT output.

use std::fmt::Write;

use isoscan_core::scanner::{CoefficientEstimate, DefectTable, Side};
use isoscan_core::theory::ProportionBreakdown;
use isoscan_core::torsion_isogeny::Volcano;

/// The defect histogram laid out as in the paper's tables, with expected
/// counts alongside when a model was supplied.
pub fn defect_report(t: &DefectTable) -> String {
    let mut s = String::new();
    let with_model = t.expected_total.is_some();
    for r in &t.rows {
        let noun = if r.count == 1 { "prime " } else { "primes" };
        let _ = write!(s, "{:>8}  {noun} of defect {}", r.count, r.defect);
        if let Some(x) = r.expected.filter(|_| with_model) {
            let _ = write!(s, "    expected ≈ {x:.1}");
            if let Some(q) = r.ratio {
                let _ = write!(s, "  (ratio {q:.2})");
            }
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{:->8}", "");
    let _ = write!(s, "{:>8}  anomalous primes", t.anomalous);
    if let Some(x) = t.expected_total {
        let _ = write!(s, "    expected ≈ {x:.1}");
    }
    let _ = writeln!(s, "\n{:>8}  good primes scanned", t.primes);
    s
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::E => "c ",
        Side::Ep => "c'",
    }
}

pub fn coefficient_report(estimates: &[CoefficientEstimate]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<8}{:>8}{:>8}{:>10}   {:<22}snapped", "coeff", "hits", "A_m", "raw", "99% Wilson");
    for e in estimates {
        let name = format!("{}_{}", side_name(e.side), 1u32 << e.m);
        let raw = e.raw_c.map_or("-".to_string(), |r| format!("{r:.4}"));
        let ci = e.wilson.map_or("-".to_string(), |(lo, hi)| format!("[{lo:.4}, {hi:.4}]"));
        let _ = writeln!(s, "{name:<8}{:>8}{:>8}{raw:>10}   {ci:<22}{}", e.hits, e.n_conditioned, e.snapped);
    }
    s
}

pub fn prediction_report(b: &ProportionBreakdown) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "head  = {}", b.head);
    let _ = writeln!(s, "tail  = {}", b.tail);
    let _ = writeln!(s, "total = {}", b.total);
    for d in b.per_defect.iter().filter(|d| d.density != num_traits::Zero::zero()) {
        let _ = writeln!(s, "  defect ({},{}): {}", d.defect.0, d.defect.1, d.density);
    }
    s
}

pub fn volcano_report(v: &Volcano, kohel: Option<u32>) -> String {
    let mut s = String::new();
    let field = if v.degree == 1 { format!("F_{}", v.p) } else { format!("F_{}^2", v.p) };
    let _ = writeln!(s, "2-volcano over {field}: {} nodes, {} edges, height {}", v.nodes.len(), v.edges.len(), v.height);
    let _ = writeln!(s, "group order {}, trace {}", v.order, v.trace);
    for (i, n) in v.nodes.iter().enumerate() {
        let _ = writeln!(s, "  [{i}] j = {:<16} shape {:<8} level {}", n.j.to_string(), n.shape.to_string(), n.level);
    }
    match kohel {
        Some(h) if h == v.height => {
            let _ = writeln!(s, "Kohel height {h}: agrees");
        }
        Some(h) => {
            let _ = writeln!(s, "Kohel height {h}: MISMATCH");
        }
        None => {}
    }
    s
}

/// Undirected graph, nodes labelled `j:shape:level`.
pub fn volcano_dot(v: &Volcano) -> String {
    let mut s = String::from("graph volcano {\n");
    for (i, n) in v.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}:{}:{}\"];", n.j, n.shape, n.level);
    }
    for (a, b) in &v.edges {
        let _ = writeln!(s, "  n{a} -- n{b};");
    }
    s.push_str("}\n");
    s
}
