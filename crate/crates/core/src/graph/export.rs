//! DOT, edge-list CSV and JSON snapshot forms of an [`ExploredGraph`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ExploredGraph, GenTuple, NielsenMove, PrGraph, Side, NONE};
use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u32,
    pub tuple: String,
    pub depth: u32,
    pub complete: bool,
}

/// One undirected edge; `i`, `j` are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub src: u32,
    pub dst: u32,
    pub side: Side,
    pub sign: i8,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSnapshot {
    pub group: String,
    pub n: usize,
    pub degree: usize,
    pub radius: u32,
    pub cap: usize,
    pub truncated: bool,
    pub root: String,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl ExploredGraph {
    pub fn snapshot(&self) -> GraphSnapshot {
        let space = self.space();
        let vertices = (0..self.len() as u32)
            .map(|id| VertexRecord {
                id,
                tuple: space.format_vertex(self.vertex(id)),
                depth: self.depth(id),
                complete: self.is_complete(id),
            })
            .collect();
        let edges = self
            .edge_pairs()
            .into_iter()
            .map(|(src, mi, dst)| {
                let m = space.moves()[mi];
                EdgeRecord {
                    src,
                    dst,
                    side: m.side,
                    sign: m.sign,
                    i: m.i + 1,
                    j: m.j + 1,
                }
            })
            .collect();
        GraphSnapshot {
            group: self.group().describe(),
            n: space.n(),
            degree: space.degree(),
            radius: self.radius(),
            cap: self.cap(),
            truncated: self.truncated(),
            root: space.format_vertex(self.root()),
            vertices,
            edges,
        }
    }

    /// Rebuilds a graph from its snapshot; every edge is re-checked.
    pub fn from_snapshot(group: Group, snap: &GraphSnapshot) -> Result<Self> {
        let space = PrGraph::new(group, snap.n)?;
        let d = space.degree();
        let vertices = snap
            .vertices
            .iter()
            .map(|r| Ok(GenTuple::new_unchecked(space.group().parse_tuple(&r.tuple)?)))
            .collect::<Result<Vec<_>>>()?;
        let complete: Vec<bool> = snap.vertices.iter().map(|r| r.complete).collect();
        let depth = snap.vertices.iter().map(|r| r.depth).collect();
        let mut targets = vec![NONE; vertices.len() * d];
        for e in &snap.edges {
            if e.i == 0 || e.j == 0 {
                return Err(Error::InvalidParameter("edge indices are 1-based".into()));
            }
            let m = NielsenMove::new(e.side, e.sign, e.i - 1, e.j - 1);
            let mi = space
                .move_index(m)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown move {m}")))?;
            let (src, dst) = (e.src as usize, e.dst as usize);
            if src >= vertices.len() || dst >= vertices.len() {
                return Err(Error::InvalidParameter("edge endpoint out of range".into()));
            }
            if complete[src] {
                targets[src * d + mi] = e.dst;
            }
            if complete[dst] {
                targets[dst * d + space.inverse_index(mi)] = e.src;
            }
        }
        ExploredGraph::from_parts(
            space,
            snap.radius,
            snap.cap,
            snap.truncated,
            vertices,
            depth,
            complete,
            targets,
        )
    }

    pub fn to_dot(&self) -> String {
        let space = self.space();
        let mut out = String::new();
        writeln!(out, "graph pr {{").unwrap();
        for id in 0..self.len() as u32 {
            writeln!(
                out,
                "  {id} [label=\"{}\", depth={}, complete={}];",
                space.format_vertex(self.vertex(id)),
                self.depth(id),
                self.is_complete(id)
            )
            .unwrap();
        }
        for (src, mi, dst) in self.edge_pairs() {
            writeln!(out, "  {src} -- {dst} [label=\"{}\"];", space.moves()[mi]).unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `src,dst,side,sign,i,j`, one line per edge, vertices as tuple text.
    pub fn to_csv(&self) -> Result<String> {
        let space = self.space();
        let mut w = csv::Writer::from_writer(vec![]);
        let err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["src", "dst", "side", "sign", "i", "j"]).map_err(err)?;
        for (src, mi, dst) in self.edge_pairs() {
            let m = space.moves()[mi];
            w.write_record([
                space.format_vertex(self.vertex(src)),
                space.format_vertex(self.vertex(dst)),
                format!("{:?}", m.side),
                m.sign.to_string(),
                (m.i + 1).to_string(),
                (m.j + 1).to_string(),
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
