//! The `.shgr` text format.
//!
//! ```text
//! 0 <num_vertices> <num_nets> <num_pins> 3
//! <cost> <pin> <pin> ...        one line per net
//! <w_comp> <w_mem>              one line per vertex
//! %L <vertex> <label>           vertex labels
//! %N <net> <label>              net labels
//! ```
//!
//! Lines starting with `%` may appear anywhere; other comments are ignored.

use std::fmt::Write as _;

use super::{Hypergraph, HypergraphBuilder, NetLabel, VertexLabel};
use crate::error::{Error, Result};

pub fn write_hgr(h: &Hypergraph) -> String {
    let mut out = String::with_capacity(16 * (h.num_pins() + h.num_vertices() + h.num_nets()));
    let _ = writeln!(out, "0 {} {} {} 3", h.num_vertices(), h.num_nets(), h.num_pins());
    for n in 0..h.num_nets() {
        let _ = write!(out, "{}", h.cost(n));
        for &v in h.pins(n) {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for v in 0..h.num_vertices() {
        let _ = writeln!(out, "{} {}", h.w_comp(v), h.w_mem(v));
    }
    for v in 0..h.num_vertices() {
        let _ = writeln!(out, "%L {v} {}", h.label(v));
    }
    for n in 0..h.num_nets() {
        let _ = writeln!(out, "%N {n} {}", h.net_label(n));
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn ints(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| perr(line, format!("non-integer token '{t}'"))))
        .collect()
}

/// Labels missing from the file default to `g(<index>)` and `n(<index>)`.
pub fn read_hgr(text: &str) -> Result<Hypergraph> {
    let mut vlabels: Vec<(usize, usize, VertexLabel)> = Vec::new();
    let mut nlabels: Vec<(usize, usize, NetLabel)> = Vec::new();
    let mut data: Vec<(usize, &str)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let ln = n + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix('%') {
            let mut toks = rest.splitn(3, ' ');
            let tag = toks.next().unwrap_or("");
            if tag == "L" || tag == "N" {
                let idx: usize = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| perr(ln, "bad label index"))?;
                let body = toks.next().ok_or_else(|| perr(ln, "missing label"))?.trim();
                if tag == "L" {
                    vlabels.push((ln, idx, body.parse().map_err(|e| perr(ln, format!("{e}")))?));
                } else {
                    nlabels.push((ln, idx, body.parse().map_err(|e| perr(ln, format!("{e}")))?));
                }
            }
            continue;
        }
        data.push((ln, l));
    }

    let mut it = data.into_iter();
    let (hl, header) = it.next().ok_or_else(|| perr(1, "missing header"))?;
    let hv = ints(hl, header)?;
    if hv.len() != 5 || hv[0] != 0 || hv[4] != 3 {
        return Err(perr(hl, "header must be '0 <vertices> <nets> <pins> 3'"));
    }
    let (nv, nn, np) = (hv[1] as usize, hv[2] as usize, hv[3] as usize);

    let mut net_lines = Vec::with_capacity(nn);
    for _ in 0..nn {
        let (ln, l) = it.next().ok_or_else(|| perr(hl, format!("expected {nn} net lines")))?;
        let vals = ints(ln, l)?;
        let (&cost, pins) = vals.split_first().ok_or_else(|| perr(ln, "empty net line"))?;
        if let Some(&bad) = pins.iter().find(|&&v| v as usize >= nv) {
            return Err(perr(ln, format!("pin {bad} out of range")));
        }
        net_lines.push((cost, pins.iter().map(|&v| v as usize).collect::<Vec<_>>()));
    }
    let found: usize = net_lines.iter().map(|(_, p)| p.len()).sum();
    if found != np {
        return Err(perr(hl, format!("header declares {np} pins but nets list {found}")));
    }
    let mut weights = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = it.next().ok_or_else(|| perr(hl, format!("expected {nv} vertex lines")))?;
        let w = ints(ln, l)?;
        if w.len() != 2 {
            return Err(perr(ln, "vertex line must be '<w_comp> <w_mem>'"));
        }
        weights.push((w[0], w[1]));
    }
    if let Some((ln, _)) = it.next() {
        return Err(perr(ln, "unexpected trailing data"));
    }

    let mut vl: Vec<VertexLabel> = (0..nv)
        .map(|v| VertexLabel::Coarse(super::CoarseLabel::Group(v)))
        .collect();
    for (ln, idx, l) in vlabels {
        *vl.get_mut(idx).ok_or_else(|| perr(ln, "label index out of range"))? = l;
    }
    let mut nl: Vec<NetLabel> = (0..nn).map(NetLabel::Other).collect();
    for (ln, idx, l) in nlabels {
        *nl.get_mut(idx).ok_or_else(|| perr(ln, "label index out of range"))? = l;
    }

    let mut b = HypergraphBuilder::new();
    for (v, (wc, wm)) in weights.into_iter().enumerate() {
        b.add_vertex(vl[v], wc, wm);
    }
    for (n, (cost, pins)) in net_lines.into_iter().enumerate() {
        b.add_net(nl[n], cost, pins);
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_header() {
        let mut b = HypergraphBuilder::new();
        b.add_vertex(VertexLabel::NzA { i: 0, k: 0 }, 0, 1);
        b.add_net(NetLabel::A { i: 0, k: 0 }, 1, [0]);
        let h = b.build();
        let text = write_hgr(&h);
        assert!(text.starts_with("0 1 1 1 3\n"));
        assert!(text.is_ascii() && !text.contains('\r'));
        assert_eq!(read_hgr(&text).unwrap(), h);
    }

    #[test]
    fn pin_count_mismatch() {
        assert!(read_hgr("0 3 1 2 3\n1 0 1 2\n1 0\n1 0\n1 0\n").is_err());
    }

    #[test]
    fn comments_anywhere_and_default_labels() {
        let h = read_hgr("% hello\n0 2 1 2 3\n%x\n2 0 1\n1 0\n% mid\n0 1\n").unwrap();
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(h.cost(0), 2);
        assert_eq!(h.total_mem(), 1);
        assert!(h.validate().is_empty());
    }

    #[test]
    fn non_integer_token() {
        assert!(read_hgr("0 1 0 0 3\n1 x\n").is_err());
    }
}
