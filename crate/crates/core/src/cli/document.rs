//! The line-oriented input format.
//!
//! ```text
//! set A = {a1, a2}
//! set B = {b1}
//! point A = a1
//! fun f : A -> B = {a1 |-> b1, a2 |-> b1}
//! rel R : A -|> B = {(a1,b1)}
//! span S = <f, g>
//! equiv E : A = {(a1,a1), (a2,a2)}
//! ```
//!
//! `#` starts a comment. Names are nonempty strings over `[A-Za-z0-9_*']`.

use std::fmt;

use thiserror::Error;

use crate::finset::{FiniteSet, SetFunction, Span};
use crate::relcalc::Relation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Set {
        name: String,
        set: FiniteSet,
    },
    Point {
        set: String,
        element: String,
    },
    Fun {
        name: String,
        domain: String,
        codomain: String,
        function: SetFunction,
    },
    Rel {
        name: String,
        source: String,
        target: String,
        relation: Relation,
    },
    Span {
        name: String,
        left: String,
        right: String,
    },
    Equiv {
        name: String,
        set: String,
        relation: Relation,
    },
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Set { name, set } => write!(f, "set {name} = {set}"),
            Self::Point { set, element } => write!(f, "point {set} = {element}"),
            Self::Fun {
                name,
                domain,
                codomain,
                function,
            } => {
                write!(f, "fun {name} : {domain} -> {codomain} = {function}")
            }
            Self::Rel {
                name,
                source,
                target,
                relation,
            } => {
                write!(f, "rel {name} : {source} -|> {target} = {relation}")
            }
            Self::Span { name, left, right } => write!(f, "span {name} = <{left}, {right}>"),
            Self::Equiv { name, set, relation } => write!(f, "equiv {name} : {set} = {relation}"),
        }
    }
}

/// A parsed input, all values checked against their invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    statements: Vec<Statement>,
}

impl Document {
    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    /// One statement per line, in input order.
    pub fn render(&self) -> String {
        self.statements.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn set(&self, name: &str) -> Option<&FiniteSet> {
        self.statements.iter().find_map(|s| match s {
            Statement::Set { name: n, set } if n == name => Some(set),
            _ => None,
        })
    }

    pub fn point(&self, set: &str) -> Option<&str> {
        self.statements.iter().find_map(|s| match s {
            Statement::Point { set: n, element } if n == set => Some(element.as_str()),
            _ => None,
        })
    }

    pub fn function(&self, name: &str) -> Option<(&str, &str, &SetFunction)> {
        self.statements.iter().find_map(|s| match s {
            Statement::Fun {
                name: n,
                domain,
                codomain,
                function,
            } if n == name => Some((domain.as_str(), codomain.as_str(), function)),
            _ => None,
        })
    }

    pub fn span(&self, name: &str) -> Option<Span> {
        self.statements.iter().find_map(|s| match s {
            Statement::Span { name: n, left, right } if n == name => {
                let (_, _, f) = self.function(left)?;
                let (_, _, g) = self.function(right)?;
                Span::new(f.clone(), g.clone()).ok()
            }
            _ => None,
        })
    }

    fn declares(&self, name: &str) -> bool {
        self.statements.iter().any(|s| match s {
            Statement::Set { name: n, .. }
            | Statement::Fun { name: n, .. }
            | Statement::Rel { name: n, .. }
            | Statement::Span { name: n, .. }
            | Statement::Equiv { name: n, .. } => n == name,
            Statement::Point { .. } => false,
        })
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut doc = Document::default();
        for (index, line) in text.lines().enumerate() {
            let tokens = lex(line, index + 1)?;
            if tokens.is_empty() {
                continue;
            }
            let mut p = LineParser {
                tokens,
                pos: 0,
                line: index + 1,
                end_column: line.chars().count() + 1,
            };
            let statement = p.statement(&doc)?;
            p.finish()?;
            doc.statements.push(statement);
        }
        Ok(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

pub fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '*' || c == '\''
}

const SYMBOLS: [&str; 12] = ["-|>", "|->", "->", "=", "{", "}", ",", "(", ")", ":", "<", ">"];

fn lex(line: &str, number: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let column = i + 1;
        if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), column));
            continue;
        }
        let rest: String = chars[i..].iter().take(3).collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push((Tok::Sym(s), column));
                i += s.chars().count();
            }
            None => {
                return Err(ParseError {
                    line: number,
                    column,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

struct LineParser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl LineParser {
    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.1)
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.column(), message)
    }

    fn found(&self) -> String {
        match self.tokens.get(self.pos) {
            Some((t, _)) => t.to_string(),
            None => "end of line".to_string(),
        }
    }

    fn peek_sym(&self, sym: &str) -> bool {
        matches!(self.tokens.get(self.pos), Some((Tok::Sym(s), _)) if *s == sym)
    }

    fn expect(&mut self, sym: &str) -> Result<usize, ParseError> {
        if self.peek_sym(sym) {
            self.pos += 1;
            Ok(self.tokens[self.pos - 1].1)
        } else {
            Err(self.error(format!("expected `{sym}`, found {}", self.found())))
        }
    }

    fn name(&mut self) -> Result<(String, usize), ParseError> {
        match self.tokens.get(self.pos) {
            Some((Tok::Name(n), column)) => {
                self.pos += 1;
                Ok((n.clone(), *column))
            }
            _ => Err(self.error(format!("expected a name, found {}", self.found()))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            return Err(self.error(format!("unexpected {} after the statement", self.found())));
        }
        Ok(())
    }

    /// `item {, item}` up to the closing symbol.
    fn list<T>(
        &mut self,
        close: &str,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.peek_sym(close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.peek_sym(close) {
                self.pos += 1;
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn pair(&mut self) -> Result<(String, String, usize), ParseError> {
        let column = self.expect("(")?;
        let (a, _) = self.name()?;
        self.expect(",")?;
        let (b, _) = self.name()?;
        self.expect(")")?;
        Ok((a, b, column))
    }

    fn fresh_name(&mut self, doc: &Document) -> Result<String, ParseError> {
        let (name, column) = self.name()?;
        if doc.declares(&name) {
            return Err(self.error_at(column, format!("`{name}` is already declared")));
        }
        Ok(name)
    }

    fn set_ref<'d>(&mut self, doc: &'d Document) -> Result<(String, &'d FiniteSet), ParseError> {
        let (name, column) = self.name()?;
        match doc.set(&name) {
            Some(set) => Ok((name, set)),
            None => Err(self.error_at(column, format!("unknown set `{name}`"))),
        }
    }

    fn element_in(&self, set: &FiniteSet, set_name: &str, element: &str, column: usize) -> Result<(), ParseError> {
        if set.contains(element) {
            Ok(())
        } else {
            Err(self.error_at(column, format!("`{element}` is not an element of {set_name}")))
        }
    }

    fn pairs_in(&mut self, source: (&str, &FiniteSet), target: (&str, &FiniteSet)) -> Result<Relation, ParseError> {
        self.expect("{")?;
        let pairs = self.list("}", Self::pair)?;
        for (a, b, column) in &pairs {
            self.element_in(source.1, source.0, a, *column)?;
            self.element_in(target.1, target.0, b, *column)?;
        }
        Relation::new(
            source.1.clone(),
            target.1.clone(),
            pairs.iter().map(|(a, b, _)| (a.as_str(), b.as_str())),
        )
        .map_err(|e| self.error(e.to_string()))
    }

    fn statement(&mut self, doc: &Document) -> Result<Statement, ParseError> {
        let (keyword, column) = self.name()?;
        match keyword.as_str() {
            "set" => {
                let name = self.fresh_name(doc)?;
                self.expect("=")?;
                let open = self.expect("{")?;
                let elements = self.list("}", |p| p.name().map(|n| n.0))?;
                let set = FiniteSet::new(elements).map_err(|e| self.error_at(open, e.to_string()))?;
                Ok(Statement::Set { name, set })
            }
            "point" => {
                let (set_name, set) = self.set_ref(doc)?;
                if doc.point(&set_name).is_some() {
                    return Err(self.error_at(column, format!("`{set_name}` already has a point")));
                }
                self.expect("=")?;
                let (element, at) = self.name()?;
                self.element_in(set, &set_name, &element, at)?;
                Ok(Statement::Point { set: set_name, element })
            }
            "fun" => {
                let name = self.fresh_name(doc)?;
                self.expect(":")?;
                let (domain, dom) = self.set_ref(doc)?;
                self.expect("->")?;
                let (codomain, cod) = self.set_ref(doc)?;
                self.expect("=")?;
                let open = self.expect("{")?;
                let assignments = self.list("}", |p| {
                    let (x, at) = p.name()?;
                    p.expect("|->")?;
                    let (y, _) = p.name()?;
                    Ok((x, y, at))
                })?;
                for (x, y, at) in &assignments {
                    self.element_in(dom, &domain, x, *at)?;
                    self.element_in(cod, &codomain, y, *at)?;
                }
                let function = SetFunction::new(
                    dom.clone(),
                    cod.clone(),
                    assignments.iter().map(|(x, y, _)| (x.as_str(), y.as_str())),
                )
                .map_err(|e| self.error_at(open, e.to_string()))?;
                Ok(Statement::Fun {
                    name,
                    domain,
                    codomain,
                    function,
                })
            }
            "rel" => {
                let name = self.fresh_name(doc)?;
                self.expect(":")?;
                let (source, src) = self.set_ref(doc)?;
                self.expect("-|>")?;
                let (target, tgt) = self.set_ref(doc)?;
                self.expect("=")?;
                let relation = self.pairs_in((&source, src), (&target, tgt))?;
                Ok(Statement::Rel {
                    name,
                    source,
                    target,
                    relation,
                })
            }
            "span" => {
                let name = self.fresh_name(doc)?;
                self.expect("=")?;
                self.expect("<")?;
                let (left, lc) = self.name()?;
                self.expect(",")?;
                let (right, rc) = self.name()?;
                self.expect(">")?;
                let (ldom, _, _) = doc
                    .function(&left)
                    .ok_or_else(|| self.error_at(lc, format!("unknown function `{left}`")))?;
                let (rdom, _, _) = doc
                    .function(&right)
                    .ok_or_else(|| self.error_at(rc, format!("unknown function `{right}`")))?;
                if ldom != rdom {
                    return Err(self.error_at(rc, format!("legs start at different sets `{ldom}` and `{rdom}`")));
                }
                Ok(Statement::Span { name, left, right })
            }
            "equiv" => {
                let name = self.fresh_name(doc)?;
                self.expect(":")?;
                let (set_name, set) = self.set_ref(doc)?;
                self.expect("=")?;
                let open = self.column();
                let relation = self.pairs_in((&set_name, set), (&set_name, set))?;
                if let Some(w) = relation.equivalence_violation() {
                    return Err(self.error_at(open, w.to_string()));
                }
                Ok(Statement::Equiv {
                    name,
                    set: set_name,
                    relation,
                })
            }
            other => Err(self.error_at(
                column,
                format!("unknown statement `{other}`; expected set, point, fun, rel, span or equiv"),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
set A = {a1, a2}
set B = {b1, b2}
point A = a1
rel R : A -|> B = {(a1,b1), (a2,b2)}
set C = {c1, c2}
fun f : C -> A = {c1 |-> a1, c2 |-> a2}
fun g : C -> B = {c1 |-> b1, c2 |-> b1}
span S = <f, g>
equiv E : A = {(a1,a1), (a2,a2)}
";

    #[test]
    fn canonical_round_trip() {
        let doc = Document::parse(SAMPLE).unwrap();
        assert_eq!(doc.render(), SAMPLE);
        assert_eq!(doc.statements().len(), 9);
        assert_eq!(doc.point("A"), Some("a1"));
        assert_eq!(doc.span("S").unwrap().apex().len(), 2);
    }

    #[test]
    fn normalises_layout_and_order() {
        let doc = Document::parse("# comment\n\nset A={a2,a1}   # trailing\nrel R:A-|>A={(a2,a1),(a1,a2)}\n").unwrap();
        assert_eq!(doc.render(), "set A = {a1, a2}\nrel R : A -|> A = {(a1,a2), (a2,a1)}\n");
    }

    fn err(text: &str) -> ParseError {
        Document::parse(text).unwrap_err()
    }

    #[test]
    fn positions() {
        assert_eq!((err("set A = {a, b").line, err("set A = {a, b").column), (1, 14));
        let e = err("set A = {a}\nfun f : A -> B = {}");
        assert_eq!((e.line, e.column), (2, 14));
        assert!(e.message.contains("unknown set `B`"));
        let e = err("set A = {a}\nset B = {b}\nrel R : A -|> B = {(a,c)}");
        assert_eq!((e.line, e.column), (3, 20));
        let e = err("set A = {a!}");
        assert_eq!(
            (e.line, e.column, e.message.as_str()),
            (1, 11, "unexpected character `!`")
        );
        assert!(err("set A = {l:x}").message.contains("`:`"));
    }

    #[test]
    fn semantic_checks() {
        assert!(err("set A = {a, a}").message.contains("duplicate"));
        assert!(err("set A = {a}\nset A = {b}").message.contains("already declared"));
        assert!(err("set A = {a, b}\nfun f : A -> A = {a |-> b}")
            .message
            .contains("not defined on `b`"));
        assert!(err("set A = {a}\npoint A = b").message.contains("not an element"));
        assert!(err("set A = {a, b}\nequiv E : A = {(a,a)}")
            .message
            .contains("reflexive"));
        assert!(err(
            "set A = {a}\nset B = {b}\nfun f : A -> B = {a |-> b}\nfun g : B -> B = {b |-> b}\nspan S = <f, g>"
        )
        .message
        .contains("different sets"));
        assert!(err("frob X").message.contains("unknown statement"));
    }
}
