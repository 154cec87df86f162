//! The `.lnk` session language: parsing, name resolution and canonical printing.

use std::collections::HashMap;
use std::fmt;

use linkage_core::text::parse_polynomial;
use linkage_core::{Field, MonomialOrder, PolyRing};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Prime,
    Cm,
    Licci,
    Gorenstein,
    GenericallyGorenstein,
}

impl Property {
    fn keyword(self) -> &'static str {
        match self {
            Property::Prime => "prime",
            Property::Cm => "cm",
            Property::Licci => "licci",
            Property::Gorenstein => "gorenstein",
            Property::GenericallyGorenstein => "generically-gorenstein",
        }
    }

    fn from_keyword(word: &str) -> Option<Self> {
        [
            Property::Prime,
            Property::Cm,
            Property::Licci,
            Property::Gorenstein,
            Property::GenericallyGorenstein,
        ]
        .into_iter()
        .find(|p| p.keyword() == word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Ring {
        name: String,
        field: Field,
        vars: Vec<String>,
        relations: Vec<String>,
    },
    Ideal {
        name: String,
        gens: Vec<String>,
    },
    Assert {
        property: Property,
        target: String,
    },
    Link {
        name: String,
        j: String,
        target: String,
    },
    CheckLinkTheorem {
        ring: String,
        prime: String,
        sequence: Vec<String>,
    },
    CheckMultiplicity {
        ring: String,
        sequence: Vec<String>,
    },
    CheckDeltaLength {
        ring: String,
        sequence: Vec<String>,
    },
    CheckCanonical {
        i: String,
        j: String,
    },
    CheckGorenstein {
        i: String,
        j: String,
    },
    CheckBound {
        i: String,
        j: String,
    },
    ComputeReductionNumber {
        i: String,
        j: String,
    },
    ComputeRees {
        i: String,
    },
    ComputeMultiplicity {
        a: String,
        q: String,
    },
}

impl Command {
    /// Checks produce a pass/fail verdict; everything else only computes.
    pub fn is_check(&self) -> bool {
        matches!(
            self,
            Command::CheckLinkTheorem { .. }
                | Command::CheckMultiplicity { .. }
                | Command::CheckDeltaLength { .. }
                | Command::CheckCanonical { .. }
                | Command::CheckGorenstein { .. }
                | Command::CheckBound { .. }
        )
    }
}

#[derive(Clone, Debug)]
pub struct Statement {
    pub command: Command,
    pub expect_fail: bool,
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.command == other.command && self.expect_fail == other.expect_fail
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Session {
    pub statements: Vec<Statement>,
}

impl Session {
    /// Number of ring, ideal and remaining statements.
    pub fn counts(&self) -> (usize, usize, usize) {
        let rings = self
            .statements
            .iter()
            .filter(|s| matches!(s.command, Command::Ring { .. }))
            .count();
        let ideals = self
            .statements
            .iter()
            .filter(|s| matches!(s.command, Command::Ideal { .. }))
            .count();
        (rings, ideals, self.statements.len() - rings - ideals)
    }
}

fn list(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Ring {
                name,
                field,
                vars,
                relations,
            } => {
                write!(f, "ring {name} = {field}[{}]", vars.join(","))?;
                if !relations.is_empty() {
                    write!(f, " / {}", list(relations))?;
                }
                Ok(())
            }
            Command::Ideal { name, gens } => write!(f, "ideal {name} = {}", list(gens)),
            Command::Assert { property, target } => write!(f, "assert {} {target}", property.keyword()),
            Command::Link { name, j, target } => write!(f, "link {name} = {j} : {target}"),
            Command::CheckLinkTheorem { ring, prime, sequence } => {
                write!(f, "check link-theorem {ring} {prime} {}", list(sequence))
            }
            Command::CheckMultiplicity { ring, sequence } => {
                write!(f, "check multiplicity {ring} {}", list(sequence))
            }
            Command::CheckDeltaLength { ring, sequence } => {
                write!(f, "check delta-length {ring} {}", list(sequence))
            }
            Command::CheckCanonical { i, j } => write!(f, "check canonical {i} {j}"),
            Command::CheckGorenstein { i, j } => write!(f, "check gorenstein {i} {j}"),
            Command::CheckBound { i, j } => write!(f, "check bound {i} {j}"),
            Command::ComputeReductionNumber { i, j } => write!(f, "compute reduction-number {i} {j}"),
            Command::ComputeRees { i } => write!(f, "compute rees {i}"),
            Command::ComputeMultiplicity { a, q } => write!(f, "compute multiplicity {a} {q}"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expect_fail {
            write!(f, "expect fail ")?;
        }
        write!(f, "{};", self.command)
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

type Parsed<T> = Result<T, ParseError>;

impl<'a> Cursor<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_blank(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => self.pos += c.len_utf8(),
                Some('#') => {
                    self.pos = self.src[self.pos..].find('\n').map_or(self.src.len(), |n| self.pos + n);
                }
                _ => return,
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_blank();
        self.pos >= self.src.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_blank();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.error_at(self.pos, format!("expected `{c}`, found {found}")))
        }
    }

    /// Identifier, or keyword when `dashes` allows `-` inside.
    fn word(&mut self, what: &str, dashes: bool) -> Parsed<(String, usize)> {
        self.skip_blank();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut end = 0;
        for (k, c) in rest.char_indices() {
            let ok = if k == 0 {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_' || (dashes && c == '-')
            };
            if !ok {
                break;
            }
            end = k + c.len_utf8();
        }
        if end == 0 {
            return Err(self.error_at(start, format!("expected {what}")));
        }
        self.pos = start + end;
        Ok((rest[..end].to_string(), start))
    }

    /// `( item, item, ... )` with items split at top-level commas.
    fn raw_list(&mut self) -> Parsed<Vec<(String, usize)>> {
        self.expect('(')?;
        let mut items = Vec::new();
        let mut depth = 0usize;
        let mut start = self.pos;
        let bytes = self.src.as_bytes();
        loop {
            let Some(&b) = bytes.get(self.pos) else {
                return Err(self.error_at(self.pos, "unclosed `(`"));
            };
            match b {
                b'(' => depth += 1,
                b')' if depth > 0 => depth -= 1,
                b',' | b')' if depth == 0 => {
                    let text = self.src[start..self.pos].trim();
                    let lead = self.src[start..self.pos].len() - self.src[start..self.pos].trim_start().len();
                    if text.is_empty() {
                        if b == b')' && items.is_empty() {
                            self.pos += 1;
                            return Ok(items);
                        }
                        return Err(self.error_at(self.pos, "empty list item"));
                    }
                    items.push((text.to_string(), start + lead));
                    self.pos += 1;
                    if b == b')' {
                        return Ok(items);
                    }
                    start = self.pos;
                }
                b';' => return Err(self.error_at(self.pos, "unclosed `(`")),
                _ => {}
            }
            self.pos += 1;
        }
    }
}

#[derive(Clone, Debug)]
enum Symbol {
    Ring { ring: std::sync::Arc<PolyRing> },
    Ideal { ring: String },
}

struct Scope {
    symbols: HashMap<String, Symbol>,
    current_ring: Option<String>,
}

impl Scope {
    fn ring_of(&self, cur: &Cursor, name: &str, pos: usize) -> Parsed<String> {
        match self.symbols.get(name) {
            None => Err(cur.error_at(pos, format!("undeclared: {name}"))),
            Some(Symbol::Ideal { ring }) => Ok(ring.clone()),
            Some(Symbol::Ring { .. }) => Err(cur.error_at(pos, format!("{name} is a ring, expected an ideal"))),
        }
    }

    fn ring(&self, cur: &Cursor, name: &str, pos: usize) -> Parsed<std::sync::Arc<PolyRing>> {
        match self.symbols.get(name) {
            None => Err(cur.error_at(pos, format!("undeclared: {name}"))),
            Some(Symbol::Ring { ring }) => Ok(ring.clone()),
            Some(Symbol::Ideal { .. }) => Err(cur.error_at(pos, format!("{name} is an ideal, expected a ring"))),
        }
    }

    fn declare(&mut self, cur: &Cursor, name: &str, pos: usize, symbol: Symbol) -> Parsed<()> {
        if self.symbols.contains_key(name) {
            return Err(cur.error_at(pos, format!("already declared: {name}")));
        }
        self.symbols.insert(name.to_string(), symbol);
        Ok(())
    }

    fn same_ring(&self, cur: &Cursor, names: &[(&str, usize)]) -> Parsed<String> {
        let first = self.ring_of(cur, names[0].0, names[0].1)?;
        for (name, pos) in &names[1..] {
            let r = self.ring_of(cur, name, *pos)?;
            if r != first {
                return Err(cur.error_at(*pos, format!("ring mismatch: {name} lives in {r}, expected {first}")));
            }
        }
        Ok(first)
    }
}

fn check_polys(cur: &Cursor, ring: &std::sync::Arc<PolyRing>, items: &[(String, usize)]) -> Parsed<Vec<String>> {
    items
        .iter()
        .map(|(text, pos)| {
            parse_polynomial(ring, text)
                .map(|_| text.clone())
                .map_err(|e| cur.error_at(*pos, e.to_string()))
        })
        .collect()
}

/// Parses and resolves a session; names must be declared before use and every
/// polynomial must parse in the ring it refers to.
pub fn parse_session(src: &str) -> Result<Session, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    let mut scope = Scope {
        symbols: HashMap::new(),
        current_ring: None,
    };
    let mut statements = Vec::new();
    while !cur.at_end() {
        let start = cur.pos;
        let (mut keyword, mut kpos) = cur.word("a statement", false)?;
        let mut expect_fail = false;
        if keyword == "expect" {
            let (w, wpos) = cur.word("`fail`", false)?;
            if w != "fail" {
                return Err(cur.error_at(wpos, "expected `fail` after `expect`"));
            }
            expect_fail = true;
            (keyword, kpos) = cur.word("a check command", false)?;
            if keyword != "check" {
                return Err(cur.error_at(kpos, "`expect fail` applies to check commands only"));
            }
        }
        let command = parse_command(&mut cur, &mut scope, &keyword, kpos)?;
        cur.expect(';')?;
        let (line, column) = cur.location(start);
        statements.push(Statement {
            command,
            expect_fail,
            line,
            column,
        });
    }
    Ok(Session { statements })
}

fn parse_command(cur: &mut Cursor, scope: &mut Scope, keyword: &str, kpos: usize) -> Parsed<Command> {
    match keyword {
        "ring" => {
            let (name, npos) = cur.word("a ring name", false)?;
            cur.expect('=')?;
            let (fname, fpos) = cur.word("a field", false)?;
            let field_text = if fname == "FF" {
                cur.expect('(')?;
                cur.skip_blank();
                let digits: String = cur.src[cur.pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
                cur.pos += digits.len();
                cur.expect(')')?;
                format!("FF({digits})")
            } else {
                fname
            };
            let field: Field = field_text.parse().map_err(|e: linkage_core::Error| cur.error_at(fpos, e.to_string()))?;
            cur.expect('[')?;
            let mut vars = Vec::new();
            loop {
                let (v, _) = cur.word("a variable", false)?;
                vars.push(v);
                if cur.eat(']') {
                    break;
                }
                cur.expect(',')?;
            }
            let ring = PolyRing::new(vars.clone(), field, MonomialOrder::Grevlex)
                .map_err(|e| cur.error_at(npos, e.to_string()))?;
            let relations = if cur.eat('/') {
                let items = cur.raw_list()?;
                check_polys(cur, &ring, &items)?
            } else {
                Vec::new()
            };
            scope.declare(cur, &name, npos, Symbol::Ring { ring })?;
            scope.current_ring = Some(name.clone());
            Ok(Command::Ring {
                name,
                field,
                vars,
                relations,
            })
        }
        "ideal" => {
            let (name, npos) = cur.word("an ideal name", false)?;
            let ring_name = scope
                .current_ring
                .clone()
                .ok_or_else(|| cur.error_at(kpos, "ideal declared before any ring"))?;
            let ring = scope.ring(cur, &ring_name, npos)?;
            cur.expect('=')?;
            let items = cur.raw_list()?;
            let gens = check_polys(cur, &ring, &items)?;
            scope.declare(cur, &name, npos, Symbol::Ideal { ring: ring_name })?;
            Ok(Command::Ideal { name, gens })
        }
        "assert" => {
            let (word, wpos) = cur.word("a property", true)?;
            let property = Property::from_keyword(&word).ok_or_else(|| {
                cur.error_at(
                    wpos,
                    format!("unknown property `{word}`; expected prime, cm, licci, gorenstein or generically-gorenstein"),
                )
            })?;
            let (target, tpos) = cur.word("a name", false)?;
            if !scope.symbols.contains_key(&target) {
                return Err(cur.error_at(tpos, format!("undeclared: {target}")));
            }
            if matches!(property, Property::Prime | Property::Licci | Property::GenericallyGorenstein) {
                scope.ring_of(cur, &target, tpos)?;
            }
            Ok(Command::Assert { property, target })
        }
        "link" => {
            let (name, npos) = cur.word("a name", false)?;
            cur.expect('=')?;
            let (j, jpos) = cur.word("an ideal", false)?;
            cur.expect(':')?;
            let (target, tpos) = cur.word("an ideal", false)?;
            let ring = scope.same_ring(cur, &[(&j, jpos), (&target, tpos)])?;
            scope.declare(cur, &name, npos, Symbol::Ideal { ring })?;
            Ok(Command::Link { name, j, target })
        }
        "check" | "compute" => {
            let (word, wpos) = cur.word("a command name", true)?;
            let full = format!("{keyword} {word}");
            match full.as_str() {
                "check link-theorem" => {
                    let (ring, rpos) = cur.word("a ring", false)?;
                    let (prime, ppos) = cur.word("an ideal", false)?;
                    let r = scope.ring(cur, &ring, rpos)?;
                    let pr = scope.ring_of(cur, &prime, ppos)?;
                    if pr != ring {
                        return Err(cur.error_at(ppos, format!("ring mismatch: {prime} lives in {pr}, expected {ring}")));
                    }
                    let items = cur.raw_list()?;
                    let sequence = check_polys(cur, &r, &items)?;
                    Ok(Command::CheckLinkTheorem { ring, prime, sequence })
                }
                "check multiplicity" | "check delta-length" => {
                    let (ring, rpos) = cur.word("a ring", false)?;
                    let r = scope.ring(cur, &ring, rpos)?;
                    let items = cur.raw_list()?;
                    let sequence = check_polys(cur, &r, &items)?;
                    Ok(if word == "multiplicity" {
                        Command::CheckMultiplicity { ring, sequence }
                    } else {
                        Command::CheckDeltaLength { ring, sequence }
                    })
                }
                "check canonical" | "check gorenstein" | "check bound" | "compute reduction-number"
                | "compute multiplicity" => {
                    let (a, apos) = cur.word("an ideal", false)?;
                    let (b, bpos) = cur.word("an ideal", false)?;
                    scope.same_ring(cur, &[(&a, apos), (&b, bpos)])?;
                    Ok(match full.as_str() {
                        "check canonical" => Command::CheckCanonical { i: a, j: b },
                        "check gorenstein" => Command::CheckGorenstein { i: a, j: b },
                        "check bound" => Command::CheckBound { i: a, j: b },
                        "compute reduction-number" => Command::ComputeReductionNumber { i: a, j: b },
                        _ => Command::ComputeMultiplicity { a, q: b },
                    })
                }
                "compute rees" => {
                    let (i, ipos) = cur.word("an ideal", false)?;
                    scope.ring_of(cur, &i, ipos)?;
                    Ok(Command::ComputeRees { i })
                }
                _ => Err(cur.error_at(wpos, format!("unknown command `{full}`"))),
            }
        }
        other => Err(cur.error_at(kpos, format!("unknown statement `{other}`"))),
    }
}
