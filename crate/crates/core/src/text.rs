//! Line-oriented text formats for posets, lattices, fuzzy maps and
//! monotonic operators.
//!
//! ```text
//! poset X              lattice L            fuzzy mu             monop G
//! elems a b c          elems 0 d a c 1      domain x.poset       on x.poset
//! le a b               le 0 d               codomain l.lattice   assign a {a,c}
//! le c b               ...                  map a d              assign b {}
//! ```
//!
//! `#` starts a comment when it begins a token. Elements are sorted by
//! name (digit runs compare numerically) when loaded, so reports do not
//! depend on the order of input lines. Paths inside fuzzy and operator
//! files are relative to the file that names them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyUpSet;
use crate::lattice::Lattice;
use crate::poset::Poset;
use crate::quotient::MonotonicOperator;

/// Compares names with digit runs taken as numbers: `x2 < x10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a.is_empty(), b.is_empty()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ra, rest_a) = split_run(a);
        let (rb, rest_b) = split_run(b);
        let ord = match (is_digits(ra), is_digits(rb)) {
            (true, true) => {
                let (ta, tb) = (ra.trim_start_matches('0'), rb.trim_start_matches('0'));
                ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| ra.len().cmp(&rb.len()))
            }
            _ => ra.cmp(rb),
        };
        if ord != Ordering::Equal {
            return ord;
        }
        a = rest_a;
        b = rest_b;
    }
}

fn is_digits(s: &str) -> bool {
    s.bytes().next().is_some_and(|c| c.is_ascii_digit())
}

fn split_run(s: &str) -> (&str, &str) {
    let digits = is_digits(s);
    let end = s
        .char_indices()
        .find(|&(_, c)| c.is_ascii_digit() != digits)
        .map_or(s.len(), |(i, _)| i);
    s.split_at(end)
}

/// The same poset with elements in canonical (natural name) order.
pub fn canonical(p: &Poset) -> Poset {
    let mut perm: Vec<usize> = (0..p.len()).collect();
    perm.sort_by(|&a, &b| natural_cmp(p.element_name(a), p.element_name(b)));
    let names = perm.iter().map(|&i| p.element_name(i).to_string()).collect();
    Poset::from_fn(p.name(), names, |a, b| p.leq(perm[a], perm[b])).expect("relabeling keeps a valid order")
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn header<'a>(it: &mut impl Iterator<Item = Line<'a>>, keyword: &str) -> Result<String> {
    let Some(line) = it.next() else {
        return Err(Error::parse(1, format!("empty input, expected `{keyword} <name>`")));
    };
    match line.tokens.as_slice() {
        [k, name] if *k == keyword => Ok(name.to_string()),
        _ => Err(Error::parse(
            line.number,
            format!("expected `{keyword} <name>`"),
        )),
    }
}

fn parse_order(text: &str, keyword: &str) -> Result<Poset> {
    let mut it = lines(text);
    let name = header(&mut it, keyword)?;
    let mut elems: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    let mut pairs: Vec<(String, String, usize)> = Vec::new();
    for line in it {
        match line.tokens.as_slice() {
            ["elems", rest @ ..] => {
                for &e in rest {
                    if !seen.insert(e.to_string()) {
                        return Err(Error::parse(line.number, format!("duplicate element `{e}`")));
                    }
                    elems.push(e.to_string());
                }
            }
            ["le", a, b] => pairs.push((a.to_string(), b.to_string(), line.number)),
            ["le", ..] => return Err(Error::parse(line.number, "expected `le <a> <b>`")),
            [other, ..] => {
                return Err(Error::parse(line.number, format!("unknown directive `{other}`")))
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }
    for (a, b, number) in &pairs {
        for e in [a, b] {
            if !seen.contains(e) {
                return Err(Error::parse(*number, format!("unknown element `{e}`")));
            }
        }
    }
    elems.sort_by(|a, b| natural_cmp(a, b));
    let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b, _)| (a.as_str(), b.as_str())).collect();
    Poset::new(&name, &elems, &pairs)
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    parse_order(text, "poset")
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    Lattice::from_poset(parse_order(text, "lattice")?)
}

fn write_order(p: &Poset, keyword: &str) -> String {
    let mut out = format!("{keyword} {}\n", p.name());
    if !p.is_empty() {
        out.push_str("elems");
        for n in p.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    for (a, b) in p.cover_pairs() {
        out.push_str(&format!("le {} {}\n", p.element_name(a), p.element_name(b)));
    }
    out
}

/// Elements in index order, one `le` line per cover pair.
pub fn write_poset(p: &Poset) -> String {
    write_order(p, "poset")
}

pub fn write_lattice(l: &Lattice) -> String {
    write_order(l.order(), "lattice")
}

/// A fuzzy map file with the paths it was loaded from.
#[derive(Debug, Clone)]
pub struct FuzzyFile {
    pub name: String,
    pub domain_path: String,
    pub codomain_path: String,
    pub mu: FuzzyUpSet,
}

pub fn parse_fuzzy(text: &str, base: &Path) -> Result<FuzzyFile> {
    let mut it = lines(text);
    let name = header(&mut it, "fuzzy")?;
    let mut domain = None;
    let mut codomain = None;
    let mut maps: Vec<(String, String, usize)> = Vec::new();
    for line in it {
        match line.tokens.as_slice() {
            ["domain", path] => domain = Some((path.to_string(), line.number)),
            ["codomain", path] => codomain = Some((path.to_string(), line.number)),
            ["map", x, p] => maps.push((x.to_string(), p.to_string(), line.number)),
            [other, ..] => {
                return Err(Error::parse(line.number, format!("unknown or malformed directive `{other}`")))
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }
    let (domain_path, _) = domain.ok_or_else(|| Error::parse(1, "missing `domain <posetfile>`"))?;
    let (codomain_path, _) = codomain.ok_or_else(|| Error::parse(1, "missing `codomain <latticefile>`"))?;
    let x = load_poset(&base.join(&domain_path))?;
    let l = load_lattice(&base.join(&codomain_path))?;
    let mut values = vec![None; x.len()];
    for (e, p, number) in &maps {
        let xi = x
            .index_of(e)
            .map_err(|_| Error::parse(*number, format!("unknown domain element `{e}`")))?;
        let pi = l
            .index_of(p)
            .map_err(|_| Error::parse(*number, format!("unknown lattice element `{p}`")))?;
        if values[xi].replace(pi).is_some() {
            return Err(Error::parse(*number, format!("`{e}` is mapped twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::parse(1, format!("no `map` line for `{}`", x.element_name(i)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzyFile {
        name,
        domain_path,
        codomain_path,
        mu: FuzzyUpSet::new(x, l, values)?,
    })
}

pub fn write_fuzzy(name: &str, domain_path: &str, codomain_path: &str, mu: &FuzzyUpSet) -> String {
    let mut out = format!("fuzzy {name}\ndomain {domain_path}\ncodomain {codomain_path}\n");
    for x in 0..mu.domain().len() {
        out.push_str(&format!(
            "map {} {}\n",
            mu.domain().element_name(x),
            mu.codomain().element_name(mu.value(x))
        ));
    }
    out
}

/// Splits `{a,b c}` into member names; commas and whitespace separate
/// members, and commas inside brackets belong to the name.
pub fn parse_set_literal(s: &str) -> std::result::Result<Vec<String>, String> {
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format!("expected a braced set, found `{s}`"))?;
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '{' | '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            '}' | ')' | ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| format!("unbalanced brackets in `{s}`"))?;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            c if c.is_whitespace() && depth == 0 => out.push(std::mem::take(&mut cur)),
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced brackets in `{s}`"));
    }
    out.push(cur);
    out.retain(|t| !t.is_empty());
    Ok(out)
}

/// An operator file with the carrier path it names.
#[derive(Debug, Clone)]
pub struct OperatorFile {
    pub carrier_path: String,
    pub operator: MonotonicOperator,
}

pub fn parse_monop(text: &str, base: &Path) -> Result<OperatorFile> {
    let mut it = lines(text);
    let name = header(&mut it, "monop")?;
    let mut on = None;
    let mut assigns: Vec<(String, Vec<String>, usize)> = Vec::new();
    for line in it {
        match line.tokens.as_slice() {
            ["on", path] => on = Some(path.to_string()),
            ["assign", x, rest @ ..] if !rest.is_empty() => {
                let members = parse_set_literal(&rest.join(" ")).map_err(|m| Error::parse(line.number, m))?;
                assigns.push((x.to_string(), members, line.number));
            }
            [other, ..] => {
                return Err(Error::parse(line.number, format!("unknown or malformed directive `{other}`")))
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }
    let carrier_path = on.ok_or_else(|| Error::parse(1, "missing `on <posetfile>`"))?;
    let x = load_poset(&base.join(&carrier_path))?;
    let mut values = vec![None; x.len()];
    for (e, members, number) in &assigns {
        let xi = x
            .index_of(e)
            .map_err(|_| Error::parse(*number, format!("unknown element `{e}`")))?;
        let set = members
            .iter()
            .map(|m| {
                x.index_of(m)
                    .map_err(|_| Error::parse(*number, format!("unknown element `{m}`")))
            })
            .collect::<Result<ElemSet>>()?;
        if values[xi].replace(set).is_some() {
            return Err(Error::parse(*number, format!("`{e}` is assigned twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::parse(1, format!("no `assign` line for `{}`", x.element_name(i)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorFile {
        carrier_path,
        operator: MonotonicOperator::new(&name, x, values)?,
    })
}

pub fn write_monop(g: &MonotonicOperator, carrier_path: &str) -> String {
    let mut out = format!("monop {}\non {carrier_path}\n", g.name());
    for x in 0..g.carrier().len() {
        out.push_str(&format!("assign {} {}\n", g.carrier().element_name(x), g.value_label(x)));
    }
    out
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    with_path(path, parse_poset(&read(path)?))
}

pub fn load_lattice(path: &Path) -> Result<Lattice> {
    with_path(path, parse_lattice(&read(path)?))
}

pub fn load_fuzzy(path: &Path) -> Result<FuzzyFile> {
    with_path(path, parse_fuzzy(&read(path)?, &base_dir(path)))
}

pub fn load_monop(path: &Path) -> Result<OperatorFile> {
    with_path(path, parse_monop(&read(path)?, &base_dir(path)))
}
