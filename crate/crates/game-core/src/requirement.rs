use crate::ext::ExtRational;
use crate::game::{Game, GameError, VertexId};
use std::ops::{Index, IndexMut};

/// Total map from vertices to extended rationals, indexed by VertexId.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Requirement {
    values: Vec<ExtRational>,
}

impl Requirement {
    pub fn new(values: Vec<ExtRational>) -> Self {
        Requirement { values }
    }

    pub fn constant(g: &Game, value: ExtRational) -> Self {
        Requirement {
            values: vec![value; g.vertex_count()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[ExtRational] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &ExtRational)> {
        self.values.iter().enumerate().map(|(i, v)| (VertexId(i), v))
    }

    /// Pointwise order: self ≤ other at every vertex.
    pub fn le(&self, other: &Requirement) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &Requirement) -> Requirement {
        debug_assert_eq!(self.values.len(), other.values.len());
        Requirement {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone().max(b.clone()))
                .collect(),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

impl Index<VertexId> for Requirement {
    type Output = ExtRational;
    fn index(&self, v: VertexId) -> &ExtRational {
        &self.values[v.0]
    }
}

impl IndexMut<VertexId> for Requirement {
    fn index_mut(&mut self, v: VertexId) -> &mut ExtRational {
        &mut self.values[v.0]
    }
}

/// The requirement constantly equal to −∞; every play is consistent with it.
pub fn vacuous_requirement(g: &Game) -> Requirement {
    Requirement::constant(g, ExtRational::MinusInf)
}

/// Parses `<vertex> <value>` lines; values are rationals, `-inf` or `+inf`.
/// Vertices not mentioned default to −∞.
pub fn parse_requirement(text: &str, g: &Game) -> Result<Requirement, GameError> {
    let mut req = vacuous_requirement(g);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        if words.len() != 2 {
            return Err(GameError::Syntax {
                line,
                msg: "expected: <vertex> <value>".into(),
            });
        }
        let v = g.vertex_id(words[0]).ok_or_else(|| GameError::UnknownVertex {
            line,
            name: words[0].into(),
        })?;
        let value = ExtRational::parse(words[1]).ok_or_else(|| GameError::Syntax {
            line,
            msg: format!("malformed value: {}", words[1]),
        })?;
        req[v] = value;
    }
    Ok(req)
}

/// One `<vertex> <value>` line per vertex, in vertex order.
pub fn serialize_requirement(req: &Requirement, g: &Game) -> String {
    let mut s = String::new();
    for (v, value) in req.iter() {
        s.push_str(&format!("{} {}\n", g.vertex_name(v), value));
    }
    s
}
