//! Plain-text representation files.
//!
//! ```text
//! # comments run to the end of the line
//! name schottky2
//! group F2
//! gen a a=10,0 b=0,0 c=0,0 d=0.1,0
//! gen b a=13.3,0 b=-13.2,0 c=3.3,0 d=-3.2,0
//! disk a out:0,0,9
//! disk A in:0,0,0.1
//! meta description free text
//! ```
//!
//! `group` comes before any `gen`, `disk` or `base` line. Each generator
//! has one `gen` line giving the matrix entries as `re,im` pairs. `disk`
//! assigns a ping-pong disk to a free letter (`a` for the plus disk, `A`
//! for the minus disk); `base k` gives the base disk of the `k`-th surface
//! factor. Numbers are written in shortest round-trip form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::group::{GroupError, GroupSpec, Letter};
use crate::hyperbolic::{HyperbolicError, MoebiusMap, Representation, DET_TOL};
use crate::stability::{Disk, DiskPair, PingPongDisks};

use super::gallery::GalleryEntry;

/// Largest determinant error that is silently renormalized.
pub const DET_REJECT: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("expected {expected} generator lines, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("determinant is off from one by {0:e}")]
    DeterminantOffByMoreThan(f64),
    #[error("duplicate entry `{0}`")]
    Duplicate(String),
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
}

/// A diagnostic at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}, column {column}: {kind}")]
pub struct RepError {
    pub line: usize,
    pub column: usize,
    pub kind: RepErrorKind,
}

/// Parsed contents of a representation file.
#[derive(Clone, Debug)]
pub struct RepFile {
    pub name: Option<String>,
    pub rep: Representation,
    pub disks: Option<PingPongDisks>,
    pub meta: Vec<(String, String)>,
}

impl From<GalleryEntry> for RepFile {
    fn from(e: GalleryEntry) -> Self {
        RepFile {
            name: Some(e.name.to_string()),
            rep: e.rep,
            disks: e.disks,
            meta: vec![("description".to_string(), e.description.to_string())],
        }
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_f64(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_complex(s: &str) -> Option<Complex64> {
    let (re, im) = s.split_once(',')?;
    Some(Complex64::new(parse_f64(re)?, parse_f64(im)?))
}

fn parse_disk(s: &str) -> Option<Disk> {
    let (kind, rest) = s.split_once(':')?;
    let parts: Vec<f64> = rest.split(',').map(parse_f64).collect::<Option<_>>()?;
    let [x, y, r] = parts[..] else { return None };
    if r <= 0.0 {
        return None;
    }
    let c = Complex64::new(x, y);
    match kind {
        "in" => Some(Disk::interior(c, r)),
        "out" => Some(Disk::exterior(c, r)),
        _ => None,
    }
}

fn err(line: usize, column: usize, kind: RepErrorKind) -> RepError {
    RepError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> RepError {
    err(line, column, RepErrorKind::Syntax(msg.into()))
}

fn single_letter(group: &GroupSpec, t: &Token<'_>, line: usize) -> Result<Letter, RepError> {
    let w = group.parse_word(t.text).map_err(|e| err(line, t.column, e.into()))?;
    match w.letters() {
        [l] => Ok(*l),
        _ => Err(syntax(line, t.column, format!("expected one letter, got `{}`", t.text))),
    }
}

/// Parses a representation file. Determinants within `1e-6` of one are
/// renormalized, larger errors are rejected.
pub fn parse_rep(text: &str) -> Result<RepFile, RepError> {
    let mut name = None;
    let mut group: Option<(GroupSpec, usize)> = None;
    let mut images: BTreeMap<usize, MoebiusMap> = BTreeMap::new();
    let mut disks = PingPongDisks::default();
    let mut any_disk = false;
    let mut half_pairs: BTreeMap<usize, (Option<Disk>, Option<Disk>, usize)> = BTreeMap::new();
    let mut meta = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some(key) = toks.first() else { continue };
        let need_group = |g: &Option<(GroupSpec, usize)>| {
            g.as_ref().map(|x| x.0.clone()).ok_or_else(|| err(line, key.column, RepErrorKind::Missing("group")))
        };
        match key.text {
            "name" => {
                let [_, v] = toks[..] else { return Err(syntax(line, key.column, "expected `name <word>`")) };
                if name.replace(v.text.to_string()).is_some() {
                    return Err(err(line, key.column, RepErrorKind::Duplicate("name".into())));
                }
            }
            "group" => {
                let [_, v] = toks[..] else { return Err(syntax(line, key.column, "expected `group <spec>`")) };
                if group.is_some() {
                    return Err(err(line, key.column, RepErrorKind::Duplicate("group".into())));
                }
                let g: GroupSpec = v.text.parse().map_err(|e: GroupError| err(line, v.column, e.into()))?;
                group = Some((g, line));
            }
            "gen" => {
                let g = need_group(&group)?;
                if toks.len() != 6 {
                    return Err(syntax(line, key.column, "expected `gen <letter> a=.. b=.. c=.. d=..`"));
                }
                let l = single_letter(&g, &toks[1], line)?;
                if l.is_inverse() {
                    return Err(syntax(line, toks[1].column, "generator lines use the positive letter"));
                }
                let mut entries: [Option<Complex64>; 4] = [None; 4];
                for t in &toks[2..] {
                    let (k, v) = t.text.split_once('=').ok_or_else(|| syntax(line, t.column, "expected `<entry>=re,im`"))?;
                    let slot = match k {
                        "a" => 0,
                        "b" => 1,
                        "c" => 2,
                        "d" => 3,
                        _ => return Err(err(line, t.column, RepErrorKind::UnknownKey(k.to_string()))),
                    };
                    let z = parse_complex(v).ok_or_else(|| syntax(line, t.column, format!("bad complex number `{v}`")))?;
                    if entries[slot].replace(z).is_some() {
                        return Err(err(line, t.column, RepErrorKind::Duplicate(k.to_string())));
                    }
                }
                let [Some(a), Some(b), Some(c), Some(d)] = entries else {
                    return Err(syntax(line, key.column, "each of a, b, c, d must appear once"));
                };
                let det = a * d - b * c;
                let off = (det - Complex64::new(1.0, 0.0)).norm();
                if off > DET_REJECT {
                    return Err(err(line, key.column, RepErrorKind::DeterminantOffByMoreThan(off)));
                }
                let m = if off <= DET_TOL {
                    MoebiusMap::from_normalized(a, b, c, d)
                } else {
                    MoebiusMap::new(a, b, c, d).map_err(|e| err(line, key.column, e.into()))?
                };
                if images.insert(l.generator(), m).is_some() {
                    return Err(err(line, toks[1].column, RepErrorKind::Duplicate(toks[1].text.to_string())));
                }
            }
            "disk" => {
                let g = need_group(&group)?;
                let [_, lt, dt] = toks[..] else { return Err(syntax(line, key.column, "expected `disk <letter> <disk>`")) };
                let l = single_letter(&g, &lt, line)?;
                if g.factor(g.factor_of(l)).is_surface() {
                    return Err(syntax(line, lt.column, "surface factors take a `base` line"));
                }
                let disk = parse_disk(dt.text).ok_or_else(|| syntax(line, dt.column, "expected `in:x,y,r` or `out:x,y,r`"))?;
                let pair = half_pairs.entry(l.generator()).or_insert((None, None, line));
                let side = if l.is_inverse() { &mut pair.1 } else { &mut pair.0 };
                if side.replace(disk).is_some() {
                    return Err(err(line, lt.column, RepErrorKind::Duplicate(lt.text.to_string())));
                }
                any_disk = true;
            }
            "base" => {
                let g = need_group(&group)?;
                let [_, kt, dt] = toks[..] else { return Err(syntax(line, key.column, "expected `base <k> <disk>`")) };
                let k: usize = kt.text.parse().map_err(|_| syntax(line, kt.column, "expected a surface ordinal"))?;
                let factor = g
                    .surface_factors()
                    .nth(k.wrapping_sub(1))
                    .map(|f| f.id)
                    .ok_or_else(|| syntax(line, kt.column, format!("no surface factor {k}")))?;
                let disk = parse_disk(dt.text).ok_or_else(|| syntax(line, dt.column, "expected `in:x,y,r` or `out:x,y,r`"))?;
                if disks.surface.insert(factor, disk).is_some() {
                    return Err(err(line, key.column, RepErrorKind::Duplicate(format!("base {k}"))));
                }
                any_disk = true;
            }
            "meta" => {
                let Some(k) = toks.get(1) else { return Err(syntax(line, key.column, "expected `meta <key> <text>`")) };
                let start = body.char_indices().nth(k.column - 1).map_or(body.len(), |(i, _)| i) + k.text.len();
                meta.push((k.text.to_string(), body[start..].trim().to_string()));
            }
            other => return Err(err(line, key.column, RepErrorKind::UnknownKey(other.to_string()))),
        }
    }
    for (g, (plus, minus, line)) in half_pairs {
        let (Some(plus), Some(minus)) = (plus, minus) else {
            return Err(syntax(line, 1, "a free letter needs both its disk and its inverse's disk"));
        };
        disks.free.insert(g, DiskPair { plus, minus });
    }
    let Some((group, group_line)) = group else {
        return Err(err(last_line.max(1), 1, RepErrorKind::Missing("group")));
    };
    let expected = group.generator_count();
    if images.len() != expected {
        return Err(err(group_line, 1, RepErrorKind::DimensionMismatch { expected, got: images.len() }));
    }
    let rep = Representation::new(group, images.into_values().collect())
        .map_err(|e| err(group_line, 1, e.into()))?;
    Ok(RepFile { name, rep, disks: any_disk.then_some(disks), meta })
}

fn complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

/// Writes a file that [`parse_rep`] reads back to the same values.
pub fn emit_rep(file: &RepFile) -> String {
    let mut s = String::new();
    let group = file.rep.group();
    if let Some(n) = &file.name {
        let _ = writeln!(s, "name {n}");
    }
    let _ = writeln!(s, "group {group}");
    for (g, m) in file.rep.images().iter().enumerate() {
        let _ = writeln!(
            s,
            "gen {} a={} b={} c={} d={}",
            group.letter_name(Letter::new(g, false)),
            complex(m.a),
            complex(m.b),
            complex(m.c),
            complex(m.d)
        );
    }
    if let Some(d) = &file.disks {
        for (&g, pair) in &d.free {
            let _ = writeln!(s, "disk {} {}", group.letter_name(Letter::new(g, false)), pair.plus);
            let _ = writeln!(s, "disk {} {}", group.letter_name(Letter::new(g, true)), pair.minus);
        }
        for (&f, disk) in &d.surface {
            let k = group.surface_factors().position(|x| x.id == f).map_or(0, |p| p + 1);
            let _ = writeln!(s, "base {k} {disk}");
        }
    }
    for (k, v) in &file.meta {
        let _ = writeln!(s, "meta {k} {v}");
    }
    s
}
