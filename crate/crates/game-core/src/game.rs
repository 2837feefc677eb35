use crate::rational::{format_rational, parse_rational, Rational};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    /// Indexed by player, exactly one entry per declared player.
    pub weights: Vec<Rational>,
}

/// Finite multiplayer mean-payoff game graph.
///
/// Invariants: every vertex has at least one outgoing edge, owners partition
/// the vertices, weight vectors have one entry per player, and there is at
/// most one edge per (from, to) pair.
#[derive(Clone, Debug)]
pub struct Game {
    players: Vec<String>,
    vertex_names: Vec<String>,
    owners: Vec<PlayerId>,
    edges: Vec<Edge>,
    /// Outgoing edges per vertex, in declaration order.
    out: Vec<Vec<EdgeId>>,
    edge_lookup: HashMap<(VertexId, VertexId), EdgeId>,
    init: Option<VertexId>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown player: {name}")]
    UnknownPlayer { line: usize, name: String },
    #[error("line {line}: unknown vertex: {name}")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: duplicate vertex: {name}")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: duplicate edge: {from} -> {to}")]
    DuplicateEdge { line: usize, from: String, to: String },
    #[error("line {line}: edge weight count {got}, expected {expected}")]
    WeightCount { line: usize, got: usize, expected: usize },
    #[error("no outgoing edge: {0}")]
    NoOutgoingEdge(String),
    #[error("missing players line")]
    MissingPlayers,
}

impl Game {
    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.players.len()).map(PlayerId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn player_name(&self, p: PlayerId) -> &str {
        &self.players[p.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn owner(&self, v: VertexId) -> PlayerId {
        self.owners[v.0]
    }

    pub fn player_id(&self, name: &str) -> Option<PlayerId> {
        self.players.iter().position(|p| p == name).map(PlayerId)
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name).map(VertexId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), e))
    }

    /// Outgoing edges in declaration order; never empty.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    pub fn edge_between(&self, from: VertexId, to: VertexId) -> Option<EdgeId> {
        self.edge_lookup.get(&(from, to)).copied()
    }

    pub fn weight(&self, e: EdgeId, p: PlayerId) -> &Rational {
        &self.edges[e.0].weights[p.0]
    }

    pub fn init(&self) -> Option<VertexId> {
        self.init
    }

    /// Vertices owned by `p`, in declaration order.
    pub fn vertices_of(&self, p: PlayerId) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.owner(v) == p).collect()
    }
}

/// Parses the line-oriented game format: a `players` line, then `vertex`,
/// `edge` and optional `init` lines. `#` starts a comment.
pub fn parse_game(text: &str) -> Result<Game, GameError> {
    struct Line<'a> {
        no: usize,
        words: Vec<&'a str>,
    }
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = content.split_whitespace().collect();
            if words.is_empty() {
                None
            } else {
                Some(Line { no: i + 1, words })
            }
        })
        .collect();

    let mut players: Option<Vec<String>> = None;
    let mut vertex_names: Vec<String> = Vec::new();
    let mut owners: Vec<PlayerId> = Vec::new();
    let mut vertex_lookup: HashMap<String, VertexId> = HashMap::new();

    // First pass: players line (must come first) and vertex declarations.
    for line in &lines {
        match line.words[0] {
            "players" => {
                if players.is_some() {
                    return Err(GameError::Syntax {
                        line: line.no,
                        msg: "duplicate players line".into(),
                    });
                }
                if line.words.len() < 2 {
                    return Err(GameError::Syntax {
                        line: line.no,
                        msg: "players line needs at least one player".into(),
                    });
                }
                let names: Vec<String> = line.words[1..].iter().map(|s| s.to_string()).collect();
                for (i, n) in names.iter().enumerate() {
                    if names[..i].contains(n) {
                        return Err(GameError::Syntax {
                            line: line.no,
                            msg: format!("duplicate player: {n}"),
                        });
                    }
                }
                players = Some(names);
            }
            "vertex" => {
                let players = players.as_ref().ok_or(GameError::MissingPlayers)?;
                if line.words.len() != 3 {
                    return Err(GameError::Syntax {
                        line: line.no,
                        msg: "expected: vertex <name> <owner>".into(),
                    });
                }
                let (name, owner) = (line.words[1], line.words[2]);
                if vertex_lookup.contains_key(name) {
                    return Err(GameError::DuplicateVertex {
                        line: line.no,
                        name: name.into(),
                    });
                }
                let p = players.iter().position(|p| p == owner).map(PlayerId).ok_or(
                    GameError::UnknownPlayer {
                        line: line.no,
                        name: owner.into(),
                    },
                )?;
                vertex_lookup.insert(name.to_string(), VertexId(vertex_names.len()));
                vertex_names.push(name.to_string());
                owners.push(p);
            }
            "edge" | "init" => {}
            other => {
                return Err(GameError::Syntax {
                    line: line.no,
                    msg: format!("unknown directive: {other}"),
                })
            }
        }
    }
    let players = players.ok_or(GameError::MissingPlayers)?;

    // Second pass: edges and init.
    let mut edges: Vec<Edge> = Vec::new();
    let mut out: Vec<Vec<EdgeId>> = vec![Vec::new(); vertex_names.len()];
    let mut edge_lookup: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
    let mut init: Option<VertexId> = None;
    for line in &lines {
        match line.words[0] {
            "edge" => {
                if line.words.len() < 3 {
                    return Err(GameError::Syntax {
                        line: line.no,
                        msg: "expected: edge <from> <to> <w1> ... <wk>".into(),
                    });
                }
                let lookup = |name: &str| {
                    vertex_lookup
                        .get(name)
                        .copied()
                        .ok_or_else(|| GameError::UnknownVertex {
                            line: line.no,
                            name: name.into(),
                        })
                };
                let from = lookup(line.words[1])?;
                let to = lookup(line.words[2])?;
                let raw = &line.words[3..];
                if raw.len() != players.len() {
                    return Err(GameError::WeightCount {
                        line: line.no,
                        got: raw.len(),
                        expected: players.len(),
                    });
                }
                let mut weights = Vec::with_capacity(raw.len());
                for w in raw {
                    weights.push(parse_rational(w).ok_or_else(|| GameError::Syntax {
                        line: line.no,
                        msg: format!("malformed weight: {w}"),
                    })?);
                }
                if edge_lookup.contains_key(&(from, to)) {
                    return Err(GameError::DuplicateEdge {
                        line: line.no,
                        from: line.words[1].into(),
                        to: line.words[2].into(),
                    });
                }
                let id = EdgeId(edges.len());
                edge_lookup.insert((from, to), id);
                out[from.0].push(id);
                edges.push(Edge { from, to, weights });
            }
            "init" => {
                if line.words.len() != 2 {
                    return Err(GameError::Syntax {
                        line: line.no,
                        msg: "expected: init <name>".into(),
                    });
                }
                init = Some(vertex_lookup.get(line.words[1]).copied().ok_or_else(|| {
                    GameError::UnknownVertex {
                        line: line.no,
                        name: line.words[1].into(),
                    }
                })?);
            }
            _ => {}
        }
    }

    for (i, o) in out.iter().enumerate() {
        if o.is_empty() {
            return Err(GameError::NoOutgoingEdge(vertex_names[i].clone()));
        }
    }

    Ok(Game {
        players,
        vertex_names,
        owners,
        edges,
        out,
        edge_lookup,
        init,
    })
}

/// Canonical serialization; `parse_game(serialize_game(g))` reproduces `g`.
pub fn serialize_game(g: &Game) -> String {
    let mut s = String::new();
    s.push_str("players");
    for p in &g.players {
        s.push(' ');
        s.push_str(p);
    }
    s.push('\n');
    for v in g.vertices() {
        s.push_str(&format!(
            "vertex {} {}\n",
            g.vertex_name(v),
            g.player_name(g.owner(v))
        ));
    }
    for (_, e) in g.edges() {
        s.push_str(&format!(
            "edge {} {}",
            g.vertex_name(e.from),
            g.vertex_name(e.to)
        ));
        for w in &e.weights {
            s.push(' ');
            s.push_str(&format_rational(w));
        }
        s.push('\n');
    }
    if let Some(v) = g.init {
        s.push_str(&format!("init {}\n", g.vertex_name(v)));
    }
    s
}
