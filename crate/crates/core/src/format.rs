//! graph6, sparse6 and a plain edge-list text format.
//!
//! graph6 and sparse6 follow the nauty format description: printable bytes
//! carrying 6 bits each (offset 63) behind an `N(n)` size header. graph6
//! stores the upper triangle column by column; sparse6 stores an edge
//! stream and may carry loops.
//!
//! The edge-list format is `n` on the first line followed by one `i j` pair
//! per line (0-based, `i == j` for a loop). A pair may appear only once.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, NamedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    Sparse6,
    Edgelist,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Graph6 => "graph6",
            Format::Sparse6 => "sparse6",
            Format::Edgelist => "edgelist",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "sparse6" | "s6" => Ok(Format::Sparse6),
            "edgelist" | "el" => Ok(Format::Edgelist),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

const GRAPH6_HEADER: &[u8] = b">>graph6<<";
const SPARSE6_HEADER: &[u8] = b">>sparse6<<";
const MAX_N: usize = (1 << 36) - 1;

pub fn parse_graph(bytes: &[u8], format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => parse_graph6(bytes),
        Format::Sparse6 => parse_sparse6(bytes),
        Format::Edgelist => parse_edgelist(bytes),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::Sparse6 => Ok(to_sparse6(g)),
        Format::Edgelist => Ok(to_edgelist(g)),
    }
}

fn strip_line_end(bytes: &[u8]) -> &[u8] {
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    &bytes[..end]
}

/// Reads `N(n)`; returns `(n, header length)`.
fn read_size(fmt: &'static str, data: &[u8], base: usize) -> Result<(usize, usize)> {
    let six = |i: usize| -> Result<u64> {
        match data.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
            Some(&b) => Err(Error::parse(fmt, base + i, format!("byte {b:#04x} outside 63..=126"))),
            None => Err(Error::parse(fmt, base + i, "truncated size header")),
        }
    };
    let first = six(0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    if six(1)? < 63 {
        let v = (1..4).try_fold(0u64, |acc, i| Ok::<_, Error>((acc << 6) | six(i)?))?;
        return Ok((v as usize, 4));
    }
    let v = (2..8).try_fold(0u64, |acc, i| Ok::<_, Error>((acc << 6) | six(i)?))?;
    Ok((v as usize, 8))
}

fn write_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Packs bits (most significant first) into 6-bit printable bytes.
fn pack_bits(bits: &[bool], out: &mut Vec<u8>) {
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for i in 0..6 {
            v = (v << 1) | u8::from(chunk.get(i).copied().unwrap_or(false));
        }
        out.push(v + 63);
    }
}

fn parse_graph6(bytes: &[u8]) -> Result<Graph> {
    const F: &str = "graph6";
    let mut data = strip_line_end(bytes);
    let mut base = 0;
    if data.starts_with(GRAPH6_HEADER) {
        data = &data[GRAPH6_HEADER.len()..];
        base = GRAPH6_HEADER.len();
    }
    let (n, hdr) = read_size(F, data, base)?;
    if n > MAX_N {
        return Err(Error::parse(F, base, "node count too large"));
    }
    let body = &data[hdr..];
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::parse(
            F,
            base + hdr + body.len().min(need),
            format!("expected {need} body bytes for n={n}, found {}", body.len()),
        ));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(F, base + hdr + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    // padding bits must be zero for the encoding to be canonical
    if (nbits..need * 6).any(bit) {
        return Err(Error::parse(F, base + hdr + need - 1, "nonzero padding bits"));
    }
    Ok(g)
}

fn to_graph6(g: &Graph) -> Result<Vec<u8>> {
    if g.has_loops() {
        return Err(Error::Unsupported("graph6 cannot encode loops".into()));
    }
    let n = g.n();
    let mut out = Vec::new();
    write_size(n, &mut out);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    pack_bits(&bits, &mut out);
    Ok(out)
}

/// Bits needed to write any node id below `n`.
fn sparse6_width(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

fn parse_sparse6(bytes: &[u8]) -> Result<Graph> {
    const F: &str = "sparse6";
    let mut data = strip_line_end(bytes);
    let mut base = 0;
    if data.starts_with(SPARSE6_HEADER) {
        data = &data[SPARSE6_HEADER.len()..];
        base = SPARSE6_HEADER.len();
    }
    match data.first() {
        Some(b':') => {}
        Some(b';') => return Err(Error::parse(F, base, "incremental sparse6 is not supported")),
        _ => return Err(Error::parse(F, base, "missing ':' prefix")),
    }
    let (n, hdr) = read_size(F, &data[1..], base + 1)?;
    if n > MAX_N {
        return Err(Error::parse(F, base + 1, "node count too large"));
    }
    let start = 1 + hdr;
    let body = &data[start..];
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(F, base + start + i, format!("byte {b:#04x} outside 63..=126")));
        }
    }
    let k = sparse6_width(n);
    let total = body.len() * 6;
    let bit = |p: usize| (body[p / 6] - 63) >> (5 - p % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut pos = 0;
    let mut v = 0usize;
    while pos + 1 + k <= total {
        let b = bit(pos);
        let mut x = 0usize;
        for q in 0..k {
            x = (x << 1) | usize::from(bit(pos + 1 + q));
        }
        let unit_start = base + start + pos / 6;
        pos += 1 + k;
        if b {
            v += 1;
        }
        if x > v {
            v = x;
        } else if v < n {
            // x <= v < n here
            g.add_edge(x, v).map_err(|_| Error::parse(F, unit_start, "node index out of range"))?;
        }
    }
    Ok(g)
}

fn to_sparse6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let k = sparse6_width(n);
    // edges keyed by their larger endpoint, then the smaller one
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(i, j)| (j, i)).collect();
    edges.extend((0..n).filter(|&i| g.has_loop(i)).map(|i| (i, i)));
    edges.sort_unstable();

    let mut bits = Vec::new();
    let push = |b: bool, x: usize, bits: &mut Vec<bool>| {
        bits.push(b);
        for q in (0..k).rev() {
            bits.push((x >> q) & 1 == 1);
        }
    };
    let mut v = 0usize;
    for &(hi, lo) in &edges {
        if hi == v {
            push(false, lo, &mut bits);
        } else if hi == v + 1 {
            push(true, lo, &mut bits);
            v = hi;
        } else {
            push(true, hi, &mut bits);
            push(false, lo, &mut bits);
            v = hi;
        }
    }
    let rem = (6 - bits.len() % 6) % 6;
    let special = k < 6 && n == (1 << k) && n >= 2 && v == n - 2 && rem > k;
    if special {
        bits.push(false);
        bits.extend(std::iter::repeat_n(true, rem - 1));
    } else {
        bits.extend(std::iter::repeat_n(true, rem));
    }
    let mut out = vec![b':'];
    write_size(n, &mut out);
    pack_bits(&bits, &mut out);
    out
}

fn parse_edgelist(bytes: &[u8]) -> Result<Graph> {
    const F: &str = "edgelist";
    if let Some(off) = bytes.iter().position(|b| !b.is_ascii()) {
        return Err(Error::parse(F, off, "non-ASCII byte"));
    }
    let text = std::str::from_utf8(bytes).expect("ascii");
    let mut offset = 0;
    let mut n = None;
    let mut g = Graph::empty(0);
    for line in text.split_inclusive('\n') {
        let line_off = offset;
        offset += line.len();
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::parse(F, line_off, format!("not a node index: {s:?}")))
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::parse(F, line_off, "first line must hold the node count"));
                }
                let count = num(fields[0])?;
                n = Some(count);
                g = Graph::empty(count);
            }
            Some(count) => {
                if fields.len() != 2 {
                    return Err(Error::parse(F, line_off, "expected a pair `i j`"));
                }
                let (i, j) = (num(fields[0])?, num(fields[1])?);
                if i >= count || j >= count {
                    return Err(Error::parse(
                        F,
                        line_off,
                        format!("node index out of range for n={count}"),
                    ));
                }
                if !g.add_edge(i, j)? {
                    return Err(Error::parse(F, line_off, format!("duplicate pair {i} {j}")));
                }
            }
        }
    }
    if n.is_none() {
        return Err(Error::parse(F, 0, "missing node count"));
    }
    Ok(g)
}

fn to_edgelist(g: &Graph) -> Vec<u8> {
    let mut out = format!("{}\n", g.n());
    for i in 0..g.n() {
        if g.has_loop(i) {
            out.push_str(&format!("{i} {i}\n"));
        }
        for &j in g.neighbors(i).iter().filter(|&&j| j > i) {
            out.push_str(&format!("{i} {j}\n"));
        }
    }
    out.into_bytes()
}

/// Splits an input file into graph records: one per non-empty line for
/// graph6/sparse6 (header lines skipped), blank-line separated blocks for the
/// edge-list format. Each record carries its 1-based starting line.
pub fn split_records(text: &str, format: Format) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    match format {
        Format::Graph6 | Format::Sparse6 => {
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line == ">>graph6<<" || line == ">>sparse6<<" {
                    continue;
                }
                out.push((no + 1, line.to_string()));
            }
        }
        Format::Edgelist => {
            let mut block = String::new();
            let mut first = 0;
            for (no, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    if !block.is_empty() {
                        out.push((first, std::mem::take(&mut block)));
                    }
                    continue;
                }
                if block.is_empty() {
                    first = no + 1;
                }
                block.push_str(line);
                block.push('\n');
            }
            if !block.is_empty() {
                out.push((first, block));
            }
        }
    }
    out
}

/// Parses every record of `text`; ids default to `<name>:<line>`.
pub fn read_named_graphs(text: &str, format: Format, name: &str) -> Vec<Result<NamedGraph>> {
    split_records(text, format)
        .into_iter()
        .map(|(line, rec)| {
            let graph = parse_graph(rec.as_bytes(), format).map_err(|e| match e {
                Error::Parse { format, offset, message } => Error::Parse {
                    format,
                    offset,
                    message: format!("{name}:{line}: {message}"),
                },
                other => other,
            })?;
            Ok(NamedGraph {
                graph,
                id: format!("{name}:{line}"),
                source: format!("{name}:{line}"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph6_examples() {
        let k2 = parse_graph(b"A_", Format::Graph6).unwrap();
        assert_eq!(k2, fixtures::complete(2));
        // "D?o": bits 000000 110000 set pair indices 6 and 7, i.e. (0,4) and (1,4)
        let g = parse_graph(b"D?o", Format::Graph6).unwrap();
        assert_eq!(g, Graph::from_edges(5, &[(0, 4), (1, 4)]).unwrap());
        assert_eq!(serialize_graph(&g, Format::Graph6).unwrap(), b"D?o");
        assert_eq!(serialize_graph(&fixtures::complete(2), Format::Graph6).unwrap(), b"A_");
        assert_eq!(serialize_graph(&Graph::empty(3), Format::Graph6).unwrap(), b"B?");
        let looped = Graph::from_edges(2, &[(0, 0)]).unwrap();
        assert!(matches!(
            serialize_graph(&looped, Format::Graph6),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn graph6_errors_name_offsets() {
        match parse_graph(b"D?", Format::Graph6) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_graph(b"A\x01", Format::Graph6) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph(b"", Format::Graph6).is_err());
        assert!(parse_graph(b"A`", Format::Graph6).is_err(), "padding bit set");
    }

    #[test]
    fn graph6_large_header() {
        let g = fixtures::cycle(100);
        let bytes = serialize_graph(&g, Format::Graph6).unwrap();
        assert_eq!(bytes[0], 126);
        assert_eq!(parse_graph(&bytes, Format::Graph6).unwrap(), g);
    }

    #[test]
    fn edgelist_examples() {
        let g = parse_graph(b"2\n0 0\n", Format::Edgelist).unwrap();
        assert_eq!(g.n(), 2);
        assert!(g.has_loop(0) && !g.has_loop(1) && g.edge_count() == 0);
        assert!(parse_graph(b"3\n0 1\n1 0\n", Format::Edgelist).is_err());
        match parse_graph(b"3\n0 1\n0 7\n", Format::Edgelist) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_graph("2\n0 é\n".as_bytes(), Format::Edgelist).is_err());
        assert_eq!(serialize_graph(&g, Format::Edgelist).unwrap(), b"2\n0 0\n");
    }

    #[test]
    fn sparse6_loops_survive() {
        let g = Graph::from_edges(5, &[(0, 0), (1, 3), (4, 4), (2, 4)]).unwrap();
        let bytes = serialize_graph(&g, Format::Sparse6).unwrap();
        assert_eq!(parse_graph(&bytes, Format::Sparse6).unwrap(), g);
    }

    #[test]
    fn split_edgelist_blocks() {
        let recs = split_records("2\n0 1\n\n\n3\n0 0\n", Format::Edgelist);
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].0, 5);
    }
}
