//! The `.ad` domain-description language: lexer, parser and renderer.

use std::fmt::Write as _;

use argact_core::{
    Assumption, BinOp, CmpOp, DomainDescription, Formula, Inertia, Literal, Mode, OrderChain, OrderRel, QualTag,
    QualTarget, RuleDecl, Signature, TimeExpr,
};

use crate::error::{Error, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Semi,
    Comma,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Lt,
    Le,
    Eq,
    Plus,
    Minus,
    DotDot,
    At,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Not => "-",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Eq => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::DotDot => "..",
            Tok::At => "@",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: l0, column: c0 });
            *i += width;
            *col += width;
        };
        let next = chars.get(i + 1).copied();
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '[' => push(Tok::LBrack, 1, &mut i, &mut col),
            ']' => push(Tok::RBrack, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '¬' | '!' | '~' => push(Tok::Not, 1, &mut i, &mut col),
            '&' | '∧' => push(Tok::And, 1, &mut i, &mut col),
            '|' | '∨' => push(Tok::Or, 1, &mut i, &mut col),
            '→' => push(Tok::Implies, 1, &mut i, &mut col),
            '↔' => push(Tok::Iff, 1, &mut i, &mut col),
            '≤' => push(Tok::Le, 1, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '@' => push(Tok::At, 1, &mut i, &mut col),
            '-' if next == Some('>') => push(Tok::Implies, 2, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '<' if next == Some('-') && chars.get(i + 2) == Some(&'>') => push(Tok::Iff, 3, &mut i, &mut col),
            '<' if next == Some('=') => push(Tok::Le, 2, &mut i, &mut col),
            '<' => push(Tok::Lt, 1, &mut i, &mut col),
            '.' if next == Some('.') => push(Tok::DotDot, 2, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| ParseError::new(l0, c0, "an integer that fits in 64 bits", &s))?;
                out.push(Spanned { tok: Tok::Int(n), line: l0, column: c0 });
                col += i - start;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Ident(s), line: l0, column: c0 });
                col += i - start;
            }
            other => return Err(ParseError::new(l0, c0, "a token", &other.to_string())),
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

/// Which identifiers in time positions are rule variables.
#[derive(Clone, Copy, PartialEq, Eq)]
enum TimeScope {
    /// Facts and order statements: identifiers are constants.
    Fact,
    /// Rule conditions: `t`, `u` and `s` are variables.
    Rule,
}

const KEYWORDS: &[&str] = &[
    "domain",
    "fluents",
    "actions",
    "horizon",
    "inertia",
    "fact",
    "effect",
    "qual",
    "ramify",
    "order",
    "if",
    "causes",
    "unqualified",
    "throughout",
    "by",
    "over",
    "all",
    "true",
    "false",
];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError::new(s.line, s.column, expected, &s.tok.describe())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(&t.describe()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.error(&format!("`{kw}`")))
        }
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(what)),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("an integer")),
        }
    }

    fn names(&mut self, what: &str) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.name(what)?];
        while self.eat(&Tok::Comma) {
            out.push(self.name(what)?);
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let positive = !(self.eat(&Tok::Not) || self.eat(&Tok::Minus));
        Ok(Literal::new(&self.name("a fluent")?, positive))
    }

    fn time(&mut self, scope: TimeScope) -> Result<TimeExpr, ParseError> {
        let base = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                return Ok(TimeExpr::int(n));
            }
            Tok::Ident(s) if s == "theta" || s == "Θ" => TimeExpr::origin(0),
            Tok::Ident(s) if scope == TimeScope::Rule && matches!(s.as_str(), "t" | "u" | "s") => TimeExpr::var(&s),
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => TimeExpr::constant(&s),
            _ => return Err(self.error("a time point")),
        };
        self.bump();
        let sign = if self.eat(&Tok::Plus) {
            1
        } else if matches!(self.peek(), Tok::Minus) && matches!(self.peek_at(1), Tok::Int(_)) {
            self.bump();
            -1
        } else {
            return Ok(base);
        };
        Ok(base.plus(sign * self.int()?))
    }

    fn formula(&mut self, scope: TimeScope) -> Result<Formula, ParseError> {
        let lhs = self.implication(scope)?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula(scope)?;
            return Ok(Formula::bin(BinOp::Iff, lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self, scope: TimeScope) -> Result<Formula, ParseError> {
        let lhs = self.disjunction(scope)?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication(scope)?;
            return Ok(Formula::bin(BinOp::Implies, lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, scope: TimeScope) -> Result<Formula, ParseError> {
        let mut f = self.conjunction(scope)?;
        while self.eat(&Tok::Or) {
            f = Formula::bin(BinOp::Or, f, self.conjunction(scope)?);
        }
        Ok(f)
    }

    fn conjunction(&mut self, scope: TimeScope) -> Result<Formula, ParseError> {
        let mut f = self.unary(scope)?;
        while self.eat(&Tok::And) {
            f = Formula::bin(BinOp::And, f, self.unary(scope)?);
        }
        Ok(f)
    }

    fn unary(&mut self, scope: TimeScope) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) || self.eat(&Tok::Minus) {
            return Ok(Formula::negated(self.unary(scope)?));
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula(scope)?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::LBrack => {
                self.bump();
                let t = self.time(scope)?;
                if self.eat(&Tok::Comma) {
                    let u = self.time(scope)?;
                    self.expect(Tok::RBrack)?;
                    return Ok(Formula::occ(t, u, &self.name("an action")?));
                }
                self.expect(Tok::RBrack)?;
                Ok(Formula::at(t, self.unary(scope)?))
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(s) if (s == "FA" || s == "AQ") && self.peek_at(1) == &Tok::At => {
                let a = self.assumption()?;
                Ok(assumption_formula(&a))
            }
            Tok::Ident(_) | Tok::Int(_) if self.comparison_ahead() => {
                let a = self.time(scope)?;
                let op = if self.eat(&Tok::Lt) {
                    CmpOp::Lt
                } else {
                    self.expect(Tok::Eq)?;
                    CmpOp::Eq
                };
                Ok(Formula::Cmp(op, a, self.time(scope)?))
            }
            Tok::Ident(_) => Ok(Formula::Fluent(self.name("a fluent")?)),
            _ => Err(self.error("a formula")),
        }
    }

    /// Whether the next tokens read `TIME < ...` or `TIME = ...`.
    fn comparison_ahead(&self) -> bool {
        let mut k = 1;
        if matches!(self.peek_at(k), Tok::Plus | Tok::Minus) && matches!(self.peek_at(k + 1), Tok::Int(_)) {
            k += 2;
        }
        matches!(self.peek_at(k), Tok::Lt | Tok::Eq)
    }

    fn conditions(&mut self) -> Result<Vec<Formula>, ParseError> {
        let mut out = vec![self.formula(TimeScope::Rule)?];
        while self.eat(&Tok::Comma) {
            out.push(self.formula(TimeScope::Rule)?);
        }
        Ok(out)
    }

    /// `FA@t(lit)`, `AQ@t..u(action->lit)`, `AQ@t..u(lit)` or `AQ@t(lit)`.
    fn assumption(&mut self) -> Result<Assumption, ParseError> {
        let kind = match self.peek() {
            Tok::Ident(k) if k == "FA" || k == "AQ" => k.clone(),
            _ => return Err(self.error("`FA` or `AQ`")),
        };
        self.bump();
        self.expect(Tok::At)?;
        let t = self.nat()?;
        match kind.as_str() {
            "FA" => {
                self.expect(Tok::LParen)?;
                let l = self.literal()?;
                self.expect(Tok::RParen)?;
                Ok(Assumption::fa(t, l))
            }
            "AQ" => {
                let span = if self.eat(&Tok::DotDot) { Some(self.nat()?) } else { None };
                self.expect(Tok::LParen)?;
                let tag = if matches!(self.peek(), Tok::Ident(_)) && self.peek_at(1) == &Tok::Implies {
                    let a = self.name("an action")?;
                    self.bump();
                    QualTag::ActionEffect(a, self.literal()?)
                } else if span.is_some() {
                    QualTag::PlainEffect(self.literal()?)
                } else {
                    QualTag::Ramification(self.literal()?)
                };
                self.expect(Tok::RParen)?;
                let u = match (&tag, span) {
                    (QualTag::Ramification(_), _) => t + 1,
                    (_, Some(u)) => u,
                    (_, None) => t + 1,
                };
                Ok(Assumption::aq(t, u, tag))
            }
            _ => unreachable!("kind checked above"),
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        let n = self.int()?;
        u32::try_from(n).map_err(|_| self.error("a time point in range"))
    }

    fn domain(&mut self) -> Result<DomainDescription, ParseError> {
        let mut d = DomainDescription {
            name: String::new(),
            signature: Signature::default(),
            horizon: 0,
            inertia: Inertia::All,
            decls: Vec::new(),
            theory: Vec::new(),
            time_constraints: Vec::new(),
            mode: Mode::S,
        };
        let mut seen_domain = false;
        let mut seen_horizon = false;
        while self.peek() != &Tok::Eof {
            let kw = match self.peek() {
                Tok::Ident(s) => s.clone(),
                _ => return Err(self.error("a statement")),
            };
            match kw.as_str() {
                "domain" => {
                    self.bump();
                    if seen_domain {
                        return Err(self.error("a single `domain` statement"));
                    }
                    d.name = self.name("a domain name")?;
                    seen_domain = true;
                }
                "fluents" => {
                    self.bump();
                    d.signature.fluents.extend(self.names("a fluent name")?);
                }
                "actions" => {
                    self.bump();
                    d.signature.actions.extend(self.names("an action name")?);
                }
                "horizon" => {
                    self.bump();
                    d.horizon = self.nat()?;
                    seen_horizon = true;
                }
                "inertia" => {
                    self.bump();
                    d.inertia = if self.eat_kw("all") {
                        Inertia::All
                    } else {
                        let mut ls = vec![self.literal()?];
                        while self.eat(&Tok::Comma) {
                            ls.push(self.literal()?);
                        }
                        Inertia::Only(ls)
                    };
                }
                "fact" => {
                    self.bump();
                    d.theory.push(self.formula(TimeScope::Fact)?);
                }
                "effect" => {
                    self.bump();
                    let action = self.name("an action")?;
                    let conditions = if self.eat_kw("if") { self.conditions()? } else { Vec::new() };
                    self.expect_kw("causes")?;
                    let effect = self.literal()?;
                    let (mut qualified, mut throughout) = (true, false);
                    loop {
                        if self.eat_kw("unqualified") {
                            qualified = false;
                        } else if self.eat_kw("throughout") {
                            throughout = true;
                        } else {
                            break;
                        }
                    }
                    d.decls.push(RuleDecl::Effect { action, conditions, effect, qualified, throughout });
                }
                "qual" => {
                    self.bump();
                    let literal = self.literal()?;
                    let action = if self.eat_kw("by") { Some(self.name("an action")?) } else { None };
                    let conditions = if self.eat_kw("if") { self.conditions()? } else { Vec::new() };
                    let target = if self.eat_kw("over") {
                        self.expect(Tok::LBrack)?;
                        self.expect_kw("t")?;
                        self.expect(Tok::Comma)?;
                        self.expect_kw("u")?;
                        self.expect(Tok::RBrack)?;
                        QualTarget::Effect { literal, action }
                    } else if action.is_some() {
                        return Err(self.error("`over [t,u]`"));
                    } else {
                        QualTarget::Ramification(literal)
                    };
                    d.decls.push(RuleDecl::Qual { target, conditions });
                }
                "ramify" => {
                    self.bump();
                    let conditions = if self.eat_kw("if") { self.conditions()? } else { Vec::new() };
                    self.expect_kw("causes")?;
                    let effect = self.literal()?;
                    d.decls.push(RuleDecl::Ramify { conditions, effect });
                }
                "order" => {
                    self.bump();
                    let first = self.time(TimeScope::Fact)?;
                    let mut rest = Vec::new();
                    loop {
                        let rel = if self.eat(&Tok::Lt) {
                            OrderRel::Lt
                        } else if self.eat(&Tok::Le) {
                            OrderRel::Le
                        } else {
                            break;
                        };
                        rest.push((rel, self.time(TimeScope::Fact)?));
                    }
                    if rest.is_empty() {
                        return Err(self.error("`<` or `<=`"));
                    }
                    d.time_constraints.push(OrderChain { first, rest });
                }
                _ => return Err(self.error("a statement keyword")),
            }
            self.expect(Tok::Semi)?;
        }
        if !seen_domain {
            return Err(self.error("a `domain` statement"));
        }
        if !seen_horizon {
            return Err(self.error("a `horizon` statement"));
        }
        d.mode = d.infer_mode();
        Ok(d)
    }
}

fn assumption_formula(a: &Assumption) -> Formula {
    match a {
        Assumption::Frame { time, literal } => Formula::fa(TimeExpr::int(i64::from(*time)), literal),
        Assumption::Qual { from, to, tag } => {
            Formula::aq(TimeExpr::int(i64::from(*from)), TimeExpr::int(i64::from(*to)), tag.clone())
        }
    }
}

/// Parse and validate a domain description.
pub fn parse_domain(text: &str) -> Result<DomainDescription, Error> {
    let d = Parser::new(text)?.domain()?;
    d.validate()?;
    Ok(d)
}

/// Parse a standalone formula such as an entailment query. Identifiers in
/// time positions are constants.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula(TimeScope::Fact)?;
    p.expect(Tok::Eof)?;
    Ok(f)
}

/// Parse an assumption token.
pub fn parse_assumption(text: &str) -> Result<Assumption, ParseError> {
    let mut p = Parser::new(text)?;
    let a = p.assumption()?;
    p.expect(Tok::Eof)?;
    Ok(a)
}

/// Parse a comma-separated literal list such as `¬sw1,sw2`.
pub fn parse_literals(text: &str) -> Result<Vec<Literal>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.peek() != &Tok::Eof {
        out.push(p.literal()?);
        while p.eat(&Tok::Comma) {
            out.push(p.literal()?);
        }
    }
    p.expect(Tok::Eof)?;
    Ok(out)
}

fn render_literal(l: &Literal) -> String {
    if l.positive {
        l.fluent.clone()
    } else {
        format!("-{}", l.fluent)
    }
}

fn render_time(t: &TimeExpr) -> String {
    t.to_string()
}

fn render_tag(tag: &QualTag) -> String {
    match tag {
        QualTag::ActionEffect(a, l) => format!("{a}->{}", render_literal(l)),
        QualTag::PlainEffect(l) | QualTag::Ramification(l) => render_literal(l),
    }
}

/// Render a formula in the concrete syntax; binary subformulas are parenthesised.
pub fn render_formula(f: &Formula) -> String {
    fn operand(f: &Formula) -> String {
        match f {
            Formula::Bin(..) => format!("({})", render_formula(f)),
            _ => render_formula(f),
        }
    }
    match f {
        Formula::True => "true".into(),
        Formula::False => "false".into(),
        Formula::Fluent(x) => x.clone(),
        Formula::Cmp(op, a, b) => {
            let op = if *op == CmpOp::Lt { "<" } else { "=" };
            format!("({} {op} {})", render_time(a), render_time(b))
        }
        Formula::Not(a) => format!("-{}", operand(a)),
        Formula::Bin(op, a, b) => {
            let op = match op {
                BinOp::And => "&",
                BinOp::Or => "|",
                BinOp::Implies => "->",
                BinOp::Iff => "<->",
            };
            format!("{} {op} {}", operand(a), operand(b))
        }
        Formula::At(t, a) => format!("[{}] {}", render_time(t), operand(a)),
        Formula::Occ(t, u, a) => format!("[{},{}] {a}", render_time(t), render_time(u)),
        Formula::Assume(argact_core::lang::AssumptionExpr::Frame(t, l)) => {
            format!("FA@{}({})", render_time(t), render_literal(l))
        }
        Formula::Assume(argact_core::lang::AssumptionExpr::Qual(t, u, tag)) => match tag {
            QualTag::Ramification(_) => format!("AQ@{}({})", render_time(t), render_tag(tag)),
            _ => format!("AQ@{}..{}({})", render_time(t), render_time(u), render_tag(tag)),
        },
    }
}

fn render_conditions(cs: &[Formula]) -> String {
    if cs.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = cs.iter().map(render_formula).collect();
        format!(" if {}", parts.join(", "))
    }
}

/// Canonical text of a domain description.
pub fn render_domain(d: &DomainDescription) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "domain {};", d.name);
    let _ = writeln!(s, "fluents {};", d.signature.fluents.join(", "));
    if !d.signature.actions.is_empty() {
        let _ = writeln!(s, "actions {};", d.signature.actions.join(", "));
    }
    let _ = writeln!(s, "horizon {};", d.horizon);
    match &d.inertia {
        Inertia::All => {}
        Inertia::Only(ls) => {
            let ls: Vec<String> = ls.iter().map(render_literal).collect();
            let _ = writeln!(s, "inertia {};", ls.join(", "));
        }
    }
    for ch in &d.time_constraints {
        let mut line = format!("order {}", render_time(&ch.first));
        for (rel, t) in &ch.rest {
            let rel = if *rel == OrderRel::Lt { "<" } else { "<=" };
            let _ = write!(line, " {rel} {}", render_time(t));
        }
        let _ = writeln!(s, "{line};");
    }
    for decl in &d.decls {
        let line = match decl {
            RuleDecl::Effect { action, conditions, effect, qualified, throughout } => format!(
                "effect {action}{} causes {}{}{}",
                render_conditions(conditions),
                render_literal(effect),
                if *qualified { "" } else { " unqualified" },
                if *throughout { " throughout" } else { "" },
            ),
            RuleDecl::Qual { target: QualTarget::Effect { literal, action }, conditions } => format!(
                "qual {}{}{} over [t,u]",
                render_literal(literal),
                action.as_ref().map(|a| format!(" by {a}")).unwrap_or_default(),
                render_conditions(conditions),
            ),
            RuleDecl::Qual { target: QualTarget::Ramification(l), conditions } => {
                format!("qual {}{}", render_literal(l), render_conditions(conditions))
            }
            RuleDecl::Ramify { conditions, effect } => {
                format!("ramify{} causes {}", render_conditions(conditions), render_literal(effect))
            }
        };
        let _ = writeln!(s, "{line};");
    }
    for f in &d.theory {
        let _ = writeln!(s, "fact {};", render_formula(f));
    }
    s
}

/// Render an assumption with `-` for negation, as accepted by [`parse_assumption`].
pub fn render_assumption(a: &Assumption) -> String {
    a.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const YALE: &str = "domain yale;\nfluents alive, loaded;\nactions load, wait, shoot;\nhorizon 3;\n\
        effect load causes loaded unqualified;\neffect shoot if loaded causes -alive unqualified;\n\
        fact [0] alive; fact [0,1] load; fact [1,2] wait; fact [2,3] shoot;\n";

    #[test]
    fn yale_has_four_facts() {
        let d = parse_domain(YALE).unwrap();
        assert_eq!(d.signature.fluents.len(), 2);
        assert_eq!(d.signature.actions.len(), 3);
        assert_eq!(d.theory.len(), 4);
        assert_eq!(d.mode, Mode::S);
    }

    #[test]
    fn minimal_domain() {
        let d = parse_domain("domain d; fluents f; horizon 1;").unwrap();
        assert!(d.decls.is_empty() && d.theory.is_empty());
    }

    #[test]
    fn undeclared_fluent_is_named() {
        let e = parse_domain("domain d; fluents f; horizon 1; fact [0] ghost;").unwrap_err();
        assert!(matches!(&e, Error::Core(argact_core::Error::Validation(_))));
        assert!(e.to_string().contains("ghost"));
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_domain("domain d;\nfluents f;\nhorizon 1;\nfact [0 f;").unwrap_err();
        match e {
            Error::Parse(p) => {
                assert_eq!((p.line, p.column), (4, 9));
                assert!(p.expected.contains(']'));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crlf_and_comments_are_accepted() {
        let a = parse_domain(YALE).unwrap();
        let crlf = YALE.replace('\n', "  # note\r\n");
        assert_eq!(parse_domain(&crlf).unwrap(), a);
    }

    #[test]
    fn mode_follows_constructs() {
        let q = parse_domain("domain d; fluents f; actions a; horizon 1; effect a causes f;").unwrap();
        assert_eq!(q.mode, Mode::Q);
        let ad = parse_domain("domain d; fluents f, g; horizon 1; ramify if f causes g;").unwrap();
        assert_eq!(ad.mode, Mode::AD);
    }

    #[test]
    fn yale_round_trips() {
        let d = parse_domain(YALE).unwrap();
        assert_eq!(parse_domain(&render_domain(&d)).unwrap(), d);
    }

    #[test]
    fn precedence_and_times() {
        let f = parse_formula("[theta+2] a & -b | c -> d <-> e").unwrap();
        assert_eq!(render_formula(&f), "((([theta+2] a & -b) | c) -> d) <-> e");
        let g = parse_formula(&render_formula(&f)).unwrap();
        assert_eq!(f, g);
        let c = parse_formula("c1 < c2").unwrap();
        assert_eq!(c, Formula::Cmp(CmpOp::Lt, TimeExpr::constant("c1"), TimeExpr::constant("c2")));
    }

    #[test]
    fn assumption_tokens_round_trip() {
        for s in ["FA@0(¬loaded)", "AQ@2..3(shoot->¬alive)", "AQ@1(detect)", "AQ@0..1(f)"] {
            let a = parse_assumption(s).unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert_eq!(parse_assumption("FA@2(-alive)").unwrap(), Assumption::fa(2, Literal::neg("alive")));
    }

    #[test]
    fn literal_lists() {
        assert_eq!(parse_literals("¬sw1, sw2").unwrap(), vec![Literal::neg("sw1"), Literal::pos("sw2")]);
        assert!(parse_literals("").unwrap().is_empty());
    }
}
