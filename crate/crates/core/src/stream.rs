//! Update events and the line-oriented stream text format.
//!
//! ```text
//! # comment
//! n 5            vertex preallocation (ids 0..5 live at start)
//! flow 0 4       directed flow stream with source 0 and sink 4
//! +e 0 1         insert edge
//! -e 0 1         delete edge
//! +v 2 0 3       insert a fresh vertex adjacent to 0 and 3
//! -v 2           delete vertex
//! ? 3            In-MIS query
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum UpdateEvent {
    InsertEdge(VertexId, VertexId),
    DeleteEdge(VertexId, VertexId),
    /// The new vertex takes the next free id.
    InsertVertex(Vec<VertexId>),
    DeleteVertex(VertexId),
    QueryInMis(VertexId),
}

impl UpdateEvent {
    pub fn is_deletion(&self) -> bool {
        matches!(
            self,
            UpdateEvent::DeleteEdge(..) | UpdateEvent::DeleteVertex(_)
        )
    }

    pub fn is_query(&self) -> bool {
        matches!(self, UpdateEvent::QueryInMis(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StreamHeader {
    pub n: Option<usize>,
    pub flow: Option<(VertexId, VertexId)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UpdateStream {
    pub header: StreamHeader,
    pub events: Vec<UpdateEvent>,
}

impl UpdateStream {
    pub fn new(n: Option<usize>, events: Vec<UpdateEvent>) -> Self {
        UpdateStream {
            header: StreamHeader { n, flow: None },
            events,
        }
    }

    pub fn has_deletions(&self) -> bool {
        self.events.iter().any(UpdateEvent::is_deletion)
    }

    /// Number of vertices live before the first event. Falls back to one past
    /// the largest referenced id when there is no `n` directive and no vertex
    /// insertion (whose ids would depend on the answer).
    pub fn initial_vertices(&self) -> usize {
        if let Some(n) = self.header.n {
            return n;
        }
        if self
            .events
            .iter()
            .any(|e| matches!(e, UpdateEvent::InsertVertex(_)))
        {
            return 0;
        }
        let mut bound = 0;
        if let Some((s, t)) = self.header.flow {
            bound = s.max(t) + 1;
        }
        for e in &self.events {
            let top = match e {
                UpdateEvent::InsertEdge(u, v) | UpdateEvent::DeleteEdge(u, v) => *u.max(v),
                UpdateEvent::DeleteVertex(v) | UpdateEvent::QueryInMis(v) => *v,
                UpdateEvent::InsertVertex(_) => unreachable!(),
            };
            bound = bound.max(top + 1);
        }
        bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_stream(text: &str) -> Result<UpdateStream, ParseError> {
    let mut stream = UpdateStream::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_ascii_whitespace();
        let op = toks.next().unwrap();
        let mut nums = Vec::new();
        for t in toks {
            nums.push(
                t.parse::<usize>().map_err(|_| {
                    err(line, format!("expected a non-negative integer, got `{t}`"))
                })?,
            );
        }
        let arity = |k: usize| -> Result<(), ParseError> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(err(
                    line,
                    format!("`{op}` takes {k} argument(s), got {}", nums.len()),
                ))
            }
        };
        let header_ok = |s: &UpdateStream| -> Result<(), ParseError> {
            if s.events.is_empty() {
                Ok(())
            } else {
                Err(err(line, format!("directive `{op}` after the first event")))
            }
        };
        let event = match op {
            "n" => {
                arity(1)?;
                header_ok(&stream)?;
                stream.header.n = Some(nums[0]);
                continue;
            }
            "flow" => {
                arity(2)?;
                header_ok(&stream)?;
                stream.header.flow = Some((nums[0], nums[1]));
                continue;
            }
            "+e" => {
                arity(2)?;
                UpdateEvent::InsertEdge(nums[0], nums[1])
            }
            "-e" => {
                arity(2)?;
                UpdateEvent::DeleteEdge(nums[0], nums[1])
            }
            "-v" => {
                arity(1)?;
                UpdateEvent::DeleteVertex(nums[0])
            }
            "?" => {
                arity(1)?;
                UpdateEvent::QueryInMis(nums[0])
            }
            "+v" => {
                let Some((&d, rest)) = nums.split_first() else {
                    return Err(err(line, "`+v` needs a neighbor count"));
                };
                if rest.len() != d {
                    return Err(err(
                        line,
                        format!("`+v` declares {d} neighbors but lists {}", rest.len()),
                    ));
                }
                UpdateEvent::InsertVertex(rest.to_vec())
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        };
        stream.events.push(event);
    }
    Ok(stream)
}

pub fn serialize_stream(stream: &UpdateStream) -> String {
    let mut out = String::new();
    if let Some(n) = stream.header.n {
        let _ = writeln!(out, "n {n}");
    }
    if let Some((s, t)) = stream.header.flow {
        let _ = writeln!(out, "flow {s} {t}");
    }
    for e in &stream.events {
        let _ = match e {
            UpdateEvent::InsertEdge(u, v) => writeln!(out, "+e {u} {v}"),
            UpdateEvent::DeleteEdge(u, v) => writeln!(out, "-e {u} {v}"),
            UpdateEvent::DeleteVertex(v) => writeln!(out, "-v {v}"),
            UpdateEvent::QueryInMis(v) => writeln!(out, "? {v}"),
            UpdateEvent::InsertVertex(ns) => {
                let _ = write!(out, "+v {}", ns.len());
                for w in ns {
                    let _ = write!(out, " {w}");
                }
                writeln!(out)
            }
        };
    }
    out
}
