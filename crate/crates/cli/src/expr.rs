//! Cut expressions for `cutspec cut`.
//!
//! ```text
//! expr  := term (("+" term) | ("-" group))*
//! term  := INT ("*" | "·") term | atom
//! atom  := embed(g) | principal(g) | prefix(g) | Hplus(INT)
//!        | bottom | top | infty | "(" expr ")" | "[" ints "]"
//! g     := "[" ints "]" | ints
//! ```
//!
//! `embed` and `principal` both denote `{γ}⁺`. A bare bracket list is a
//! group element, usable as a cut or after `-`.

use std::fmt;

use cutspec::ordered_values::{Cut, CutOrInfty, GroupElem, IsolatedSubgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// The message with the expression and a caret under the position.
    pub fn render(&self, src: &str) -> String {
        format!("{self}\n  {src}\n  {}^", " ".repeat(self.pos))
    }
}

type PResult<T> = Result<T, ParseError>;

enum Value {
    Group(GroupElem),
    Cut(CutOrInfty),
}

impl Value {
    fn into_cut(self) -> CutOrInfty {
        match self {
            Value::Group(g) => CutOrInfty::Finite(Cut::embed(&g)),
            Value::Cut(c) => c,
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    rank: usize,
    _src: &'a str,
}

pub fn parse_cut(src: &str, rank: usize) -> PResult<CutOrInfty> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, rank, _src: src };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    Ok(v.into_cut())
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> PResult<Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.term()?;
                    acc = match (acc, rhs) {
                        (Value::Group(a), Value::Group(b)) => Value::Group(&a + &b),
                        (a, b) => Value::Cut(
                            a.into_cut()
                                .try_add(&b.into_cut())
                                .map_err(|e| ParseError { pos: at, msg: e.to_string() })?,
                        ),
                    };
                }
                Some('-' | '−') => {
                    self.pos += 1;
                    let at = self.pos;
                    let Value::Group(g) = self.term()? else {
                        return Err(ParseError { pos: at, msg: "only a group element can be subtracted".into() });
                    };
                    acc = match acc {
                        Value::Group(a) => Value::Group(&a - &g),
                        Value::Cut(c) => {
                            Value::Cut(c.sub_group(&g).map_err(|e| ParseError { pos: at, msg: e.to_string() })?)
                        }
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Value> {
        self.skip_ws();
        let start = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = self.int()?;
            if self.eat('*') || self.eat('·') {
                if n < 1 {
                    return Err(ParseError { pos: start, msg: format!("multiplier must be at least 1, got {n}") });
                }
                return Ok(match self.term()? {
                    Value::Group(g) => Value::Group(g.scale(n)),
                    Value::Cut(CutOrInfty::Infty) => Value::Cut(CutOrInfty::Infty),
                    Value::Cut(CutOrInfty::Finite(c)) => Value::Cut(CutOrInfty::Finite(
                        c.scale(n).map_err(|e| ParseError { pos: start, msg: e.to_string() })?,
                    )),
                });
            }
            self.pos = start;
            return Err(self.error("a number must be followed by '*' or a group literal must be bracketed"));
        }
        self.atom()
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '−')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().map(|&c| if c == '−' { '-' } else { c }).collect();
        text.parse().map_err(|_| ParseError { pos: start, msg: "expected an integer".into() })
    }

    fn ints_until(&mut self, close: char) -> PResult<Vec<i64>> {
        let mut out = vec![];
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// Group coordinates inside a call: `[a, b]` or `a, b`, then `)`.
    fn group_arg(&mut self, full: bool) -> PResult<Vec<i64>> {
        let start = self.pos;
        let coords = if self.eat('[') {
            let c = self.ints_until(']')?;
            self.expect(')')?;
            c
        } else {
            self.ints_until(')')?
        };
        let ok = if full { coords.len() == self.rank } else { (1..=self.rank).contains(&coords.len()) };
        if !ok {
            let want = if full { format!("{}", self.rank) } else { format!("1..={}", self.rank) };
            return Err(ParseError { pos: start, msg: format!("expected {want} coordinates, got {}", coords.len()) });
        }
        Ok(coords)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> PResult<Value> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        if self.eat('[') {
            let coords = self.ints_until(']')?;
            if coords.len() != self.rank {
                return Err(ParseError {
                    pos: start,
                    msg: format!("expected {} coordinates, got {}", self.rank, coords.len()),
                });
            }
            return Ok(Value::Group(GroupElem::new(coords)));
        }
        let name = self.ident();
        let rank = self.rank;
        match name.as_str() {
            "bottom" => Ok(Value::Cut(CutOrInfty::Finite(Cut::bottom(rank)))),
            "top" => Ok(Value::Cut(CutOrInfty::Finite(Cut::top(rank)))),
            "infty" => Ok(Value::Cut(CutOrInfty::Infty)),
            "embed" | "principal" => {
                self.expect('(')?;
                Ok(Value::Group(GroupElem::new(self.group_arg(true)?)))
            }
            "prefix" => {
                self.expect('(')?;
                let p = self.group_arg(false)?;
                let c = Cut::prefix(rank, p).map_err(|e| ParseError { pos: start, msg: e.to_string() })?;
                Ok(Value::Cut(CutOrInfty::Finite(c)))
            }
            "Hplus" => {
                self.expect('(')?;
                let at = self.pos;
                let j = self.int()?;
                self.expect(')')?;
                let h = usize::try_from(j)
                    .map_err(|_| ParseError { pos: at, msg: format!("index {j} is negative") })
                    .and_then(|j| {
                        IsolatedSubgroup::new(rank, j).map_err(|e| ParseError { pos: at, msg: e.to_string() })
                    })?;
                Ok(Value::Cut(CutOrInfty::Finite(h.plus())))
            }
            "" => Err(ParseError { pos: start, msg: "expected a cut".into() }),
            other => Err(ParseError { pos: start, msg: format!("unknown name {other:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(src: &str, rank: usize) -> String {
        parse_cut(src, rank).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(show("embed(0) + embed(0)", 1), "embed(0)");
        assert_eq!(show("prefix([3]) + principal([0,7])", 2), "prefix(3)");
        assert_eq!(show("Hplus(1)", 2), "prefix(0)");
        assert_eq!(show("Hplus(2)", 2), "top");
        assert_eq!(show("3 * embed([1,2])", 2), "embed(3,6)");
        assert_eq!(show("2·prefix([3])", 2), "prefix(6)");
        assert_eq!(show("embed([2,0]) - [3,1]", 2), "embed(-1,-1)");
        assert_eq!(show("prefix([3]) − [1,9]", 2), "prefix(2)");
        assert_eq!(show("infty - [1]", 1), "infty");
        assert_eq!(show("bottom + prefix(5)", 2), "bottom");
        assert_eq!(show("(top + embed(1)) + [-4]", 1), "top");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_cut("embed(1) + frob(2)", 1).unwrap_err();
        assert_eq!(e.pos, 11);
        let e = parse_cut("embed([1])", 2).unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse_cut("top - top", 1).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_cut("0 * top", 1).unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_cut("embed(1) embed(2)", 1).unwrap_err();
        assert_eq!(e.pos, 9);
        assert!(e.render("embed(1) embed(2)").ends_with("          ^"));
    }
}
