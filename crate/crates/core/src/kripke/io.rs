//! Line-based frame/model files.
//!
//! ```text
//! # comment
//! world <id>              declares a world; declaration order fixes indices
//! edge <id> <id>          one relation pair
//! val <atom> <id> ...     atom true at the listed worlds (repeatable, unioned)
//! point <id>              optional designated world
//! ```

use std::fmt::Write as _;

use super::{is_world_id, singleton, Frame, Model, WorldSet, MAX_WORLDS};
use crate::formula::is_identifier;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub model: Model,
    pub point: Option<usize>,
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError { line, message: message.into() }
}

pub fn read_model(text: &str) -> Result<ModelFile, FileError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();

    let mut ids: Vec<String> = Vec::new();
    for (line, toks) in &lines {
        if toks[0] != "world" {
            continue;
        }
        if toks.len() != 2 {
            return Err(err(*line, "expected `world <id>`"));
        }
        if !is_world_id(toks[1]) {
            return Err(err(*line, format!("invalid world id {:?}", toks[1])));
        }
        if ids.iter().any(|x| x == toks[1]) {
            return Err(err(*line, format!("duplicate world {:?}", toks[1])));
        }
        if ids.len() == MAX_WORLDS {
            return Err(err(*line, format!("at most {MAX_WORLDS} worlds are supported")));
        }
        ids.push(toks[1].to_string());
    }
    let mut frame = Frame::new(ids).expect("ids were validated");

    let lookup = |line: usize, id: &str, frame: &Frame| {
        frame
            .index_of(id)
            .ok_or_else(|| err(line, format!("unknown world {id:?}")))
    };

    let mut vals: Vec<(String, WorldSet)> = Vec::new();
    let mut point = None;
    for (line, toks) in &lines {
        let line = *line;
        match toks[0] {
            "world" => {}
            "edge" => {
                if toks.len() != 3 {
                    return Err(err(line, "expected `edge <id> <id>`"));
                }
                let u = lookup(line, toks[1], &frame)?;
                let v = lookup(line, toks[2], &frame)?;
                frame.add_edge(u, v);
            }
            "val" => {
                if toks.len() < 2 {
                    return Err(err(line, "expected `val <atom> <id> ...`"));
                }
                if !is_identifier(toks[1]) {
                    return Err(err(line, format!("invalid atom name {:?}", toks[1])));
                }
                let mut set = 0;
                for id in &toks[2..] {
                    set |= singleton(lookup(line, id, &frame)?);
                }
                match vals.iter_mut().find(|(a, _)| a == toks[1]) {
                    Some((_, existing)) => *existing |= set,
                    None => vals.push((toks[1].to_string(), set)),
                }
            }
            "point" => {
                if toks.len() != 2 {
                    return Err(err(line, "expected `point <id>`"));
                }
                if point.is_some() {
                    return Err(err(line, "point declared twice"));
                }
                point = Some(lookup(line, toks[1], &frame)?);
            }
            other => {
                return Err(err(
                    line,
                    format!("unknown directive {other:?}; expected world, edge, val or point"),
                ))
            }
        }
    }

    let mut model = Model::new(frame);
    for (atom, set) in vals {
        model.set(atom, set);
    }
    Ok(ModelFile { model, point })
}

pub fn write_frame(frame: &Frame) -> String {
    let mut out = String::new();
    for id in frame.ids() {
        writeln!(out, "world {id}").unwrap();
    }
    for (u, v) in frame.edges() {
        writeln!(out, "edge {} {}", frame.id(u), frame.id(v)).unwrap();
    }
    out
}

pub fn write_model(model: &Model, point: Option<usize>) -> String {
    let frame = model.frame();
    let mut out = write_frame(frame);
    for (atom, &set) in model.valuation() {
        write!(out, "val {atom}").unwrap();
        for w in super::members(set) {
            write!(out, " {}", frame.id(w)).unwrap();
        }
        out.push('\n');
    }
    if let Some(p) = point {
        writeln!(out, "point {}", frame.id(p)).unwrap();
    }
    out
}
