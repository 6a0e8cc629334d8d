//! Text formats.
//!
//! Result lines are `<label> <label> ...:<support>` with labels ascending
//! numerically, sorted by itemset length and then by label sequence. A
//! representation file is a header
//!
//! ```text
//! #ndi v1 |D|=<transactions> s=<threshold> depth=<k|inf>
//! ```
//!
//! followed by the result lines of its entries.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::bounds::Depth;
use crate::miner::NdiRepresentation;
use crate::{Error, Itemset, Result, TransactionDatabase};

/// Label sequences with supports in output order. The empty itemset is dropped.
pub fn labelled_lines<'a>(
    sets: impl IntoIterator<Item = (&'a Itemset, u64)>,
    label: impl Fn(u32) -> u64,
) -> Vec<(Vec<u64>, u64)> {
    let mut lines: Vec<(Vec<u64>, u64)> = sets
        .into_iter()
        .filter(|(set, _)| !set.is_empty())
        .map(|(set, s)| {
            let mut labels: Vec<u64> = set.items().iter().map(|&i| label(i)).collect();
            labels.sort_unstable();
            (labels, s)
        })
        .collect();
    lines.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    lines
}

pub fn format_line(labels: &[u64], support: u64) -> String {
    let mut out = String::new();
    for (n, l) in labels.iter().enumerate() {
        if n > 0 {
            out.push(' ');
        }
        out.push_str(&l.to_string());
    }
    out.push(':');
    out.push_str(&support.to_string());
    out
}

/// Writes result lines; returns how many were written.
pub fn write_results<'a, W: Write + ?Sized>(
    out: &mut W,
    sets: impl IntoIterator<Item = (&'a Itemset, u64)>,
    label: impl Fn(u32) -> u64,
) -> Result<usize> {
    let lines = labelled_lines(sets, label);
    for (labels, s) in &lines {
        writeln!(out, "{}", format_line(labels, *s))?;
    }
    Ok(lines.len())
}

pub fn write_representation<W: Write + ?Sized>(out: &mut W, rep: &NdiRepresentation) -> Result<usize> {
    writeln!(
        out,
        "#ndi v1 |D|={} s={} depth={}",
        rep.transactions, rep.threshold, rep.depth
    )?;
    write_results(out, rep.entries.iter().map(|(k, &v)| (k, v)), |i| rep.label(i))
}

/// Parses a representation file. Internal ids follow the ascending order of
/// the labels that occur in it.
pub fn read_representation<R: BufRead>(source: R) -> Result<NdiRepresentation> {
    let mut lines = source.lines();
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| corrupt(1, "missing header"))?;
    let (transactions, threshold, depth) = parse_header(&header).ok_or_else(|| corrupt(1, "malformed header"))?;

    let mut raw = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (labels, support) = parse_line(&line).ok_or_else(|| corrupt(n + 2, "malformed entry"))?;
        raw.push((labels, support));
    }
    let mut labels: Vec<u64> = raw.iter().flat_map(|(l, _)| l.iter().copied()).collect();
    labels.sort_unstable();
    labels.dedup();
    let id = |l: &u64| labels.binary_search(l).unwrap() as u32;
    let mut entries = BTreeMap::new();
    for (n, (set_labels, support)) in raw.iter().enumerate() {
        let set: Itemset = set_labels.iter().map(id).collect();
        if set.len() != set_labels.len() || set.is_empty() {
            return Err(Error::CorruptedRepresentation(format!("entry {}: invalid itemset", n + 1)));
        }
        if entries.insert(set, *support).is_some() {
            return Err(Error::CorruptedRepresentation(format!("entry {}: duplicate itemset", n + 1)));
        }
    }
    Ok(NdiRepresentation {
        entries,
        threshold,
        depth,
        transactions,
        labels,
        level_stats: Vec::new(),
        scans: 0,
    })
}

fn parse_header(line: &str) -> Option<(u64, u64, Depth)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "#ndi" || parts.next()? != "v1" {
        return None;
    }
    let transactions = parts.next()?.strip_prefix("|D|=")?.parse().ok()?;
    let threshold = parts.next()?.strip_prefix("s=")?.parse().ok()?;
    let depth = parts.next()?.strip_prefix("depth=")?.parse().ok()?;
    parts.next().is_none().then_some((transactions, threshold, depth))
}

fn parse_line(line: &str) -> Option<(Vec<u64>, u64)> {
    let (items, support) = line.rsplit_once(':')?;
    let labels = items
        .split_whitespace()
        .map(|t| t.parse().ok())
        .collect::<Option<Vec<u64>>>()?;
    Some((labels, support.trim().parse().ok()?))
}

fn corrupt(line: usize, what: &str) -> Error {
    Error::CorruptedRepresentation(format!("line {line}: {what}"))
}

/// Comma-separated labels, e.g. `1,2,4`.
pub fn parse_label_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidArgument(format!("invalid item label `{t}`")))
        })
        .collect()
}

/// Serialises a database back to FIMI text using its labels.
pub fn to_fimi(db: &TransactionDatabase) -> String {
    let mut out = String::new();
    for t in db.transactions() {
        let labels: Vec<String> = t.items.items().iter().map(|&i| db.label(i).to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miner::{mine_ndi, MinerConfig};

    #[test]
    fn lines_are_sorted_by_length_then_labels() {
        let sets = [
            (Itemset::from([0, 1]), 3),
            (Itemset::from([2]), 7),
            (Itemset::from([0]), 5),
            (Itemset::empty(), 10),
        ];
        let labels = [10u64, 9, 2];
        let mut buf = Vec::new();
        let n = write_results(&mut buf, sets.iter().map(|(s, v)| (s, *v)), |i| labels[i as usize]).unwrap();
        assert_eq!(n, 3);
        assert_eq!(String::from_utf8(buf).unwrap(), "2:7\n10:5\n9 10:3\n");
    }

    #[test]
    fn representation_round_trip() {
        let db = TransactionDatabase::from_fimi(include_str!("../data/example1.dat").as_bytes()).unwrap();
        let rep = mine_ndi(&db, &MinerConfig::new(2));
        let mut buf = Vec::new();
        write_representation(&mut buf, &rep).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("#ndi v1 |D|=10 s=2 depth=inf\n"));
        let back = read_representation(&buf[..]).unwrap();
        assert_eq!(back.entries, rep.entries);
        assert_eq!((back.transactions, back.threshold, back.depth), (10, 2, Depth::Unbounded));
    }

    #[test]
    fn malformed_representations() {
        for text in [
            "",
            "#ndi v2 |D|=1 s=1 depth=inf\n",
            "#ndi v1 |D|=1 s=1 depth=0\n",
            "#ndi v1 |D|=3 s=1 depth=inf\n1 2\n",
            "#ndi v1 |D|=3 s=1 depth=inf\n1 x:2\n",
            "#ndi v1 |D|=3 s=1 depth=inf\n1:2\n1:2\n",
            "#ndi v1 |D|=3 s=1 depth=inf\n:2\n",
        ] {
            assert!(
                matches!(read_representation(text.as_bytes()), Err(Error::CorruptedRepresentation(_))),
                "{text:?}"
            );
        }
    }

    #[test]
    fn label_lists() {
        assert_eq!(parse_label_list("1, 2,4").unwrap(), vec![1, 2, 4]);
        assert!(parse_label_list("A,B").is_err());
    }
}
