//! The graph expression language.
//!
//! ```text
//! expr     := term ("+" term)*
//! term     := NAME ":" INT ("," INT)? | "edges" "(" INT ";" EDGELIST ")"
//! EDGELIST := INT "-" INT ("," INT "-" INT)*
//! ```
//!
//! Whitespace is ignored. `+` is disjoint union, the right operand being
//! relabelled past the left one. An empty edge list (`edges(3;)`) is accepted
//! so that every graph has a printable form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Path,
    Cycle,
    Complete,
    Star,
    Biclique,
    Matching,
    Iso,
    Comb,
    Fan,
}

impl Generator {
    const ALL: [Generator; 9] = [
        Generator::Path,
        Generator::Cycle,
        Generator::Complete,
        Generator::Star,
        Generator::Biclique,
        Generator::Matching,
        Generator::Iso,
        Generator::Comb,
        Generator::Fan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Path => "path",
            Generator::Cycle => "cycle",
            Generator::Complete => "complete",
            Generator::Star => "star",
            Generator::Biclique => "biclique",
            Generator::Matching => "matching",
            Generator::Iso => "iso",
            Generator::Comb => "comb",
            Generator::Fan => "fan",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }

    fn arity(self) -> usize {
        match self {
            Generator::Biclique => 2,
            _ => 1,
        }
    }

    fn vertex_count(self, p: &[usize]) -> usize {
        let a = p[0];
        match self {
            Generator::Path | Generator::Cycle | Generator::Complete | Generator::Iso => a,
            Generator::Star | Generator::Fan => a.saturating_add(1),
            Generator::Biclique => a.saturating_add(p[1]),
            Generator::Matching | Generator::Comb => a.saturating_mul(2),
        }
    }

    /// Builds the generator's graph on `1..=n`.
    fn build(self, p: &[usize]) -> Result<Graph> {
        let n = self.vertex_count(p);
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let a = p[0];
        let mut e = Vec::new();
        match self {
            Generator::Path => e.extend((1..a).map(|i| (i, i + 1))),
            Generator::Cycle => {
                if a != 0 && a < 3 {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("cycle needs at least 3 vertices, got {a}"),
                    });
                }
                e.extend((1..a).map(|i| (i, i + 1)));
                if a >= 3 {
                    e.push((a, 1));
                }
            }
            Generator::Complete => {
                for u in 1..=a {
                    e.extend((u + 1..=a).map(|v| (u, v)));
                }
            }
            // centre is vertex 1
            Generator::Star => e.extend((2..=a + 1).map(|v| (1, v))),
            Generator::Biclique => {
                for u in 1..=a {
                    e.extend((a + 1..=a + p[1]).map(|v| (u, v)));
                }
            }
            Generator::Matching => e.extend((0..a).map(|i| (2 * i + 1, 2 * i + 2))),
            Generator::Iso => {}
            // spine 1..=a, leaf a+i hangs off spine vertex i
            Generator::Comb => {
                e.extend((1..a).map(|i| (i, i + 1)));
                e.extend((1..=a).map(|i| (i, a + i)));
            }
            // path 1..=a, apex a+1 joined to every path vertex
            Generator::Fan => {
                e.extend((1..a).map(|i| (i, i + 1)));
                e.extend((1..=a).map(|i| (i, a + 1)));
            }
        }
        Graph::new(n, &e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Named(Generator, Vec<usize>),
    Edges(usize, Vec<(usize, usize)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphExpr {
    pub terms: Vec<Term>,
}

impl GraphExpr {
    pub fn named(gen: Generator, params: &[usize]) -> GraphExpr {
        GraphExpr {
            terms: vec![Term::Named(gen, params.to_vec())],
        }
    }

    /// Explicit edge-list term for an existing graph.
    pub fn from_graph(g: &Graph) -> GraphExpr {
        GraphExpr {
            terms: vec![Term::Edges(g.n(), g.edges())],
        }
    }

    pub fn union(mut self, other: GraphExpr) -> GraphExpr {
        self.terms.extend(other.terms);
        self
    }

    pub fn eval(&self) -> Result<Graph> {
        let mut g = Graph::empty(0)?;
        for t in &self.terms {
            let h = match t {
                Term::Named(gen, p) => gen.build(p)?,
                Term::Edges(n, e) => Graph::new(*n, e)?,
            };
            g = g.disjoint_union(&h)?;
        }
        Ok(g)
    }
}

/// Parses and evaluates a graph expression.
pub fn generate(src: &str) -> Result<Graph> {
    src.parse::<GraphExpr>()?.eval()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Named(g, p) => {
                write!(f, "{}:{}", g.name(), p[0])?;
                if let Some(b) = p.get(1) {
                    write!(f, ",{b}")?;
                }
                Ok(())
            }
            Term::Edges(n, e) => {
                write!(f, "edges({n};")?;
                for (i, (u, v)) in e.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for GraphExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphExpr> {
        let mut p = Parser::new(s);
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

/// Splits a comma-separated list of expressions at top level.
///
/// A piece that is a bare integer is the second parameter of the preceding
/// term, so `biclique:2,3, path:3` is two expressions.
pub fn parse_list(s: &str) -> Result<Vec<GraphExpr>> {
    let mut pieces: Vec<(usize, String)> = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                pieces.push((start, s[start..i].to_string()));
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((start, s[start..].to_string()));

    let mut merged: Vec<(usize, String)> = Vec::new();
    for (off, piece) in pieces {
        let t = piece.trim();
        let bare_int = !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        match merged.last_mut() {
            Some(last) if bare_int => {
                last.1.push(',');
                last.1.push_str(&piece);
            }
            _ => merged.push((off, piece)),
        }
    }
    merged
        .into_iter()
        .map(|(off, piece)| {
            piece.parse::<GraphExpr>().map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + off,
                    msg,
                },
                Error::UnknownGenerator { name, pos } => Error::UnknownGenerator {
                    name,
                    pos: pos + off,
                },
                other => other,
            })
        })
        .collect()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn name(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected generator name"));
        }
        Ok((
            start,
            String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
        ))
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(GraphExpr { terms })
    }

    fn term(&mut self) -> Result<Term> {
        let (at, name) = self.name()?;
        if name == "edges" {
            self.expect(b'(')?;
            let n = self.int()?;
            self.expect(b';')?;
            let mut edges = Vec::new();
            if self.peek() != Some(b')') {
                loop {
                    let u = self.int()?;
                    self.expect(b'-')?;
                    let v = self.int()?;
                    edges.push((u, v));
                    if !self.eat(b',') {
                        break;
                    }
                }
            }
            self.expect(b')')?;
            return Ok(Term::Edges(n, edges));
        }
        let gen = Generator::from_name(&name).ok_or_else(|| {
            if self.peek() == Some(b':') {
                Error::UnknownGenerator {
                    name: name.clone(),
                    pos: at,
                }
            } else {
                Error::Parse {
                    pos: at,
                    msg: format!("unknown generator `{name}`"),
                }
            }
        })?;
        self.expect(b':')?;
        let mut params = vec![self.int()?];
        if gen.arity() == 2 {
            self.expect(b',')?;
            params.push(self.int()?);
        }
        Ok(Term::Named(gen, params))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        generate(s).unwrap()
    }

    #[test]
    fn generators() {
        let s = g("star:3");
        assert_eq!((s.n(), s.edge_count()), (4, 3));
        let c = g("comb:3");
        assert_eq!((c.n(), c.edge_count()), (6, 5));
        assert_eq!(c.degrees(), vec![2, 3, 2, 1, 1, 1]);
        assert_eq!(g("path:2+path:2"), g("matching:2"));
        assert_eq!(g("edges(4;1-2,3-4)"), g("matching:2"));
        let f = g("fan:5");
        assert_eq!((f.n(), f.edge_count()), (6, 9));
        assert_eq!(f.degree(6), 5);
        assert_eq!(g("biclique:2,3").edge_count(), 6);
        assert_eq!(g("cycle:4").degrees(), vec![2; 4]);
        assert_eq!(g("iso:0").n(), 0);
        assert_eq!(g("star:0").n(), 1);
        assert_eq!(g("complete:4").edge_count(), 6);
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(g(" path : 3 +  iso:1 "), g("path:3+iso:1"));
        assert_eq!(g("edges( 3 ; 1 - 2 , 2-3 )"), g("path:3"));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            generate("blob:3"),
            Err(Error::UnknownGenerator { ref name, pos: 0 }) if name == "blob"
        ));
        assert!(matches!(
            parse_list("path:3, blob:2"),
            Err(Error::UnknownGenerator { pos: 8, .. })
        ));
        assert!(matches!(
            generate("path:"),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(generate("path:3 +"), Err(Error::Parse { .. })));
        assert!(matches!(
            generate("path:65"),
            Err(Error::TooManyVertices(65))
        ));
        assert!(matches!(
            generate("matching:33"),
            Err(Error::TooManyVertices(66))
        ));
        assert!(matches!(
            generate("edges(3;1-4)"),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(generate("cycle:2").is_err());
        assert!(generate("biclique:2").is_err());
    }

    #[test]
    fn print_is_canonical() {
        let e: GraphExpr = " biclique: 2 ,3+ edges(3; 1-2)".parse().unwrap();
        assert_eq!(e.to_string(), "biclique:2,3+edges(3;1-2)");
        assert_eq!(e.to_string().parse::<GraphExpr>().unwrap(), e);
    }

    #[test]
    fn lists() {
        let l = parse_list("matching:2,star:2").unwrap();
        assert_eq!(l.len(), 2);
        let l = parse_list("complete:4, biclique:2,3").unwrap();
        assert_eq!(l[1].to_string(), "biclique:2,3");
        let l = parse_list("edges(4;1-2,3-4),path:3").unwrap();
        assert_eq!(l.len(), 2);
        assert!(matches!(
            parse_list("path:3, path:"),
            Err(Error::Parse { pos: 13, .. })
        ));
    }
}
