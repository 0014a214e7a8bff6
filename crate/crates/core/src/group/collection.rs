//! Triple collections in an Abelian group and their text form.
//!
//! ```text
//! H: 4,4
//! N: 2
//! X1: 0,0 1,0
//! Y1: 0,0 0,1
//! Z1: 0,0
//! X2: ...
//! STPP: verified
//! ```
//!
//! Elements are comma-separated residue tuples; several collections may
//! follow one another, each starting with its `H:` line.

use std::fmt::Write as _;

use super::abelian::AbelianGroup;
use super::tpp::{stpp_check, StppWitness, Triple};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCollection {
    pub group: AbelianGroup,
    pub triples: Vec<Triple<Vec<usize>>>,
}

impl TripleCollection {
    pub fn new(group: AbelianGroup, triples: Vec<Triple<Vec<usize>>>) -> Result<Self> {
        for t in &triples {
            if t.x.is_empty() || t.y.is_empty() || t.z.is_empty() {
                return Err(Error::EmptySubset);
            }
            for h in t.x.iter().chain(&t.y).chain(&t.z) {
                group.check(h)?;
            }
        }
        Ok(Self { group, triples })
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// `(prod |X_i|, prod |Y_i|, prod |Z_i|)`
    pub fn products(&self) -> (usize, usize, usize) {
        self.triples.iter().fold((1, 1, 1), |(a, b, c), t| (a * t.x.len(), b * t.y.len(), c * t.z.len()))
    }

    pub fn stpp_witness(&self) -> Result<Option<StppWitness<Vec<usize>>>> {
        stpp_check(&self.group, &self.triples)
    }

    /// Text block; the certificate line is written only if `certified`.
    pub fn to_text(&self, certified: bool) -> String {
        let fmt_elem = |h: &Vec<usize>| h.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let fmt_set = |s: &[Vec<usize>]| s.iter().map(fmt_elem).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "H: {}", fmt_elem(&self.group.orders().to_vec()));
        let _ = writeln!(out, "N: {}", self.triples.len());
        for (i, t) in self.triples.iter().enumerate() {
            let _ = writeln!(out, "X{}: {}", i + 1, fmt_set(&t.x));
            let _ = writeln!(out, "Y{}: {}", i + 1, fmt_set(&t.y));
            let _ = writeln!(out, "Z{}: {}", i + 1, fmt_set(&t.z));
        }
        if certified {
            out.push_str("STPP: verified\n");
        }
        out
    }
}

/// A parsed collection and whether it carried the certificate line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedCollection {
    pub collection: TripleCollection,
    pub certified: bool,
}

fn parse_tuple(tok: &str, line: usize) -> Result<Vec<usize>> {
    tok.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::parse(line, format!("bad residue tuple {tok:?}"))))
        .collect()
}

struct Pending {
    line: usize,
    group: AbelianGroup,
    count: Option<usize>,
    sets: Vec<[Option<Vec<Vec<usize>>>; 3]>,
    certified: bool,
}

impl Pending {
    fn finish(self) -> Result<ParsedCollection> {
        let count = self.count.ok_or_else(|| Error::parse(self.line, "collection is missing its N: line"))?;
        if self.sets.len() > count {
            return Err(Error::parse(self.line, format!("N: {count} but triple {} is listed", self.sets.len())));
        }
        let mut triples = Vec::with_capacity(count);
        for i in 0..count {
            let [x, y, z] = self.sets.get(i).cloned().unwrap_or_default();
            let missing = |s: Option<Vec<Vec<usize>>>, name: &str| {
                s.ok_or_else(|| Error::parse(self.line, format!("collection is missing {name}{}", i + 1)))
            };
            triples.push(Triple { x: missing(x, "X")?, y: missing(y, "Y")?, z: missing(z, "Z")? });
        }
        let collection = TripleCollection::new(self.group, triples).map_err(|e| Error::parse(self.line, e.to_string()))?;
        Ok(ParsedCollection { collection, certified: self.certified })
    }
}

/// Parses every collection block; unknown `key: value` lines are returned
/// to the caller as `(line, key, value)`.
pub fn parse_collections(text: &str) -> Result<(Vec<ParsedCollection>, Vec<(usize, String, String)>)> {
    let mut out = Vec::new();
    let mut extra = Vec::new();
    let mut pending: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (key, value) = l
            .split_once(':')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::parse(line, format!("expected \"key: value\", found {l:?}")))?;
        if key == "H" {
            if let Some(p) = pending.take() {
                out.push(p.finish()?);
            }
            let orders = parse_tuple(value, line)?;
            let group = AbelianGroup::new(orders).map_err(|e| Error::parse(line, e.to_string()))?;
            pending = Some(Pending { line, group, count: None, sets: Vec::new(), certified: false });
            continue;
        }
        let Some(p) = pending.as_mut() else {
            extra.push((line, key.to_string(), value.to_string()));
            continue;
        };
        match key {
            "N" => {
                p.count = Some(value.parse().map_err(|_| Error::parse(line, format!("bad count {value:?}")))?);
            }
            "STPP" => {
                if value != "verified" {
                    return Err(Error::parse(line, format!("unknown certificate {value:?}")));
                }
                p.certified = true;
            }
            _ => {
                let role = match key.chars().next() {
                    Some('X') => 0,
                    Some('Y') => 1,
                    Some('Z') => 2,
                    _ => {
                        extra.push((line, key.to_string(), value.to_string()));
                        continue;
                    }
                };
                let i: usize = key[1..]
                    .parse()
                    .ok()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::parse(line, format!("bad set label {key:?}")))?;
                let set = value.split_whitespace().map(|t| parse_tuple(t, line)).collect::<Result<Vec<_>>>()?;
                if p.sets.len() < i {
                    p.sets.resize(i, Default::default());
                }
                if p.sets[i - 1][role].replace(set).is_some() {
                    return Err(Error::parse(line, format!("{key} given twice")));
                }
            }
        }
    }
    if let Some(p) = pending.take() {
        out.push(p.finish()?);
    }
    Ok((out, extra))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TripleCollection {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        TripleCollection::new(
            g,
            vec![Triple {
                x: vec![vec![0, 0], vec![1, 0]],
                y: vec![vec![0, 0], vec![0, 1]],
                z: vec![vec![0, 0], vec![0, 2]],
            }],
        )
        .unwrap()
    }

    #[test]
    fn text_round_trip() {
        let c = sample();
        let text = c.to_text(true);
        assert!(text.contains("X1: 0,0 1,0"));
        let (parsed, extra) = parse_collections(&text).unwrap();
        assert_eq!(parsed, vec![ParsedCollection { collection: c, certified: true }]);
        assert!(extra.is_empty());
    }

    #[test]
    fn malformed_blocks() {
        assert!(parse_collections("H: 4\nX1: 0\nY1: 0\nZ1: 0\n").is_err());
        assert!(parse_collections("H: 4\nN: 2\nX1: 0\nY1: 0\nZ1: 0\n").unwrap_err().to_string().contains("X2"));
        assert!(parse_collections("H: 4\nN: 1\nX1: 5\nY1: 0\nZ1: 0\n").is_err());
        assert!(parse_collections("H: 4\nN: 1\nX1: 0\nX1: 1\nY1: 0\nZ1: 0\n").is_err());
        assert!(parse_collections("H: 4\nN: 1\nX1: 0\nY1: 0\nZ1: 0\nSTPP: maybe\n").is_err());
    }

    #[test]
    fn extra_keys_are_passed_through() {
        let (_, extra) = parse_collections("alpha: 2.5\nH: 3\nN: 1\nX1: 0\nY1: 0\nZ1: 0\n").unwrap();
        assert_eq!(extra, vec![(1, "alpha".to_string(), "2.5".to_string())]);
    }
}
