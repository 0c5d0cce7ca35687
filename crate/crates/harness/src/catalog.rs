//! Group catalogs in the plain-text group-spec format.
//!
//! ```text
//! # comment
//! group S3
//! degree 3
//! gen (1 2 3)
//! gen (1 2)
//! order 6
//! end
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use fsq_core::{Group, Permutation};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// The shipped catalog, selected on the command line as `core`.
pub const CORE: &str = include_str!("../catalog/core.grp");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group {name}: expected order {expected}, generators give {actual}")]
    OrderMismatch {
        name: String,
        expected: u64,
        actual: u64,
    },
    #[error("group {name}: {source}")]
    Group {
        name: String,
        source: fsq_core::Error,
    },
    #[error("duplicate group name {0}")]
    DuplicateName(String),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CatalogError {
    pub fn is_bound(&self) -> bool {
        matches!(self, CatalogError::Group { source, .. } if source.is_bound())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    pub expected_order: Option<u64>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group, fsq_core::Error> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse(s, self.degree))
            .collect::<Result<Vec<_>, _>>()?;
        Group::generate(self.degree, gens)
    }

    /// Spec text block for this group.
    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\ndegree {}\n", self.name, self.degree);
        for g in &self.generators {
            writeln!(s, "gen {g}").unwrap();
        }
        if let Some(k) = self.expected_order {
            writeln!(s, "order {k}").unwrap();
        }
        s.push_str("end\n");
        s
    }

    /// Spec for an already constructed group.
    pub fn from_group(name: &str, g: &Group) -> GroupSpec {
        GroupSpec {
            name: name.to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|x| x.to_string()).collect(),
            expected_order: Some(g.order()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub spec: GroupSpec,
    pub group: Group,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<Entry>,
    /// Pairs of names whose groups have the same element set once trailing
    /// fixed points are dropped.
    pub duplicates: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.spec.name == name)
    }

    /// SHA-256 over the group-spec blocks sorted by name, so that it does not
    /// depend on file order.
    pub fn digest(&self) -> String {
        let mut texts: Vec<String> = self.entries.iter().map(|e| e.spec.to_text()).collect();
        texts.sort();
        let mut h = Sha256::new();
        for t in texts {
            h.update(t.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Parses spec blocks without building groups.
pub fn parse_specs(text: &str) -> Result<Vec<GroupSpec>, CatalogError> {
    let err = |line: usize, msg: &str| CatalogError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut specs = Vec::new();
    let mut cur: Option<(GroupSpec, usize, bool)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match (key, cur.as_mut()) {
            ("group", None) => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(line_no, "group name must be a single word"));
                }
                cur = Some((
                    GroupSpec {
                        name: rest.to_string(),
                        degree: 0,
                        generators: Vec::new(),
                        expected_order: None,
                    },
                    line_no,
                    false,
                ));
            }
            ("group", Some(_)) => return Err(err(line_no, "missing 'end' before 'group'")),
            (_, None) => return Err(err(line_no, &format!("'{key}' outside a group block"))),
            ("degree", Some((spec, _, seen))) => {
                if *seen {
                    return Err(err(line_no, "repeated 'degree'"));
                }
                spec.degree = rest
                    .parse()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| err(line_no, "degree must be a positive integer"))?;
                *seen = true;
            }
            ("gen", Some((spec, _, seen))) => {
                if !*seen {
                    return Err(err(line_no, "'gen' before 'degree'"));
                }
                Permutation::parse(rest, spec.degree).map_err(|e| err(line_no, &e.to_string()))?;
                spec.generators.push(rest.to_string());
            }
            ("order", Some((spec, _, _))) => {
                spec.expected_order = Some(
                    rest.parse()
                        .map_err(|_| err(line_no, "order must be an integer"))?,
                );
            }
            ("end", Some(_)) => {
                let (spec, start, seen) = cur.take().unwrap();
                if !seen {
                    return Err(err(start, "group block without 'degree'"));
                }
                specs.push(spec);
            }
            (other, Some(_)) => return Err(err(line_no, &format!("unknown keyword '{other}'"))),
        }
    }
    if let Some((_, start, _)) = cur {
        return Err(err(start, "group block not closed with 'end'"));
    }
    Ok(specs)
}

/// Parses, builds and validates a catalog.
pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let specs = parse_specs(text)?;
    let mut catalog = Catalog::default();
    if specs.is_empty() {
        catalog.warnings.push("catalog contains no groups".into());
    }
    let mut names: HashMap<String, ()> = HashMap::new();
    let mut keys: HashMap<String, String> = HashMap::new();
    for spec in specs {
        if names.insert(spec.name.clone(), ()).is_some() {
            return Err(CatalogError::DuplicateName(spec.name));
        }
        let group = spec.build().map_err(|source| CatalogError::Group {
            name: spec.name.clone(),
            source,
        })?;
        if let Some(expected) = spec.expected_order {
            if expected != group.order() {
                return Err(CatalogError::OrderMismatch {
                    name: spec.name,
                    expected,
                    actual: group.order(),
                });
            }
        }
        if let Some(key) = element_key(&group) {
            if let Some(first) = keys.get(&key) {
                catalog.duplicates.push((first.clone(), spec.name.clone()));
                catalog
                    .warnings
                    .push(format!("{} has the same elements as {first}", spec.name));
            } else {
                keys.insert(key, spec.name.clone());
            }
        }
        catalog.entries.push(Entry { spec, group });
    }
    Ok(catalog)
}

/// `core` selects the shipped catalog; anything else is a file path.
pub fn load_catalog(source: &str) -> Result<Catalog, CatalogError> {
    if source == "core" {
        return parse_catalog(CORE);
    }
    let text = std::fs::read_to_string(Path::new(source)).map_err(|e| CatalogError::Io {
        path: source.to_string(),
        source: e,
    })?;
    parse_catalog(&text)
}

/// Hash of the sorted element list, each element cut to the largest moved
/// point of the group. `None` when the group is too large to enumerate.
fn element_key(g: &Group) -> Option<String> {
    let elems = g.elements().ok()?;
    let top = elems
        .iter()
        .flat_map(|x| (0..x.degree()).rev().find(|&i| x.image(i) != i))
        .max()
        .map_or(0, |m| m + 1);
    let mut cut: Vec<Vec<u16>> = elems.iter().map(|x| x.images()[..top].to_vec()).collect();
    cut.sort();
    let mut h = Sha256::new();
    for x in cut {
        for v in x {
            h.update(v.to_le_bytes());
        }
        h.update([0xff]);
    }
    Some(hex::encode(h.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_and_comments() {
        let text = "# two groups\ngroup S3\ndegree 3\ngen (1 2 3)\ngen (1 2) # transposition\norder 6\nend\n\ngroup C2\ndegree 2\ngen (1 2)\nend\n";
        let c = parse_catalog(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get("S3").unwrap().group.order(), 6);
        assert_eq!(c.get("C2").unwrap().spec.expected_order, None);
    }

    #[test]
    fn empty_file_warns() {
        let c = parse_catalog("# nothing\n").unwrap();
        assert!(c.is_empty());
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let text = "group X\ndegree 4\ngen (1 2 3 4)\ngen (1 2)\norder 25\nend\n";
        assert!(matches!(
            parse_catalog(text),
            Err(CatalogError::OrderMismatch {
                expected: 25,
                actual: 24,
                ..
            })
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("group A\ndegree 3\ngen (1 4)\nend\n", 3),
            ("group A\ngen (1 2)\nend\n", 2),
            ("degree 3\n", 1),
            ("group A\ndegree 3\n", 1),
            ("group A\ndegree x\nend\n", 2),
            ("group A\ndegree 3\nfoo 1\nend\n", 3),
        ];
        for (text, line) in cases {
            match parse_specs(text) {
                Err(CatalogError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn duplicates_are_flagged() {
        let text = "group A\ndegree 3\ngen (1 2)\nend\ngroup B\ndegree 5\ngen (1 2)\nend\ngroup C\ndegree 3\ngen (2 3)\nend\n";
        let c = parse_catalog(text).unwrap();
        assert_eq!(c.duplicates, vec![("A".to_string(), "B".to_string())]);
        assert!(matches!(
            parse_catalog("group A\ndegree 2\nend\ngroup A\ndegree 2\nend\n"),
            Err(CatalogError::DuplicateName(_))
        ));
    }

    #[test]
    fn digest_ignores_block_order() {
        let a = "group A\ndegree 3\ngen (1 2)\nend\ngroup B\ndegree 3\ngen (1 2 3)\nend\n";
        let b = "group B\ndegree 3\ngen (1 2 3)\nend\ngroup A\ndegree 3\ngen (1 2)\nend\n";
        assert_eq!(
            parse_catalog(a).unwrap().digest(),
            parse_catalog(b).unwrap().digest()
        );
    }

    #[test]
    fn spec_text_round_trips() {
        let g = fsq_core::builtin_group("sl(2,3)").unwrap();
        let spec = GroupSpec::from_group("SL(2,3)", &g);
        let back = parse_specs(&spec.to_text()).unwrap();
        assert_eq!(back, vec![spec]);
    }
}
