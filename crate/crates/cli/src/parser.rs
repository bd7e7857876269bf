//! Recursive-descent parser for workspaces and formulas.
//!
//! Statements are separated by `;`. Symbols must be declared before use and
//! every label is checked against the declared sort while parsing.

use std::collections::{BTreeSet, HashMap, HashSet};

use topos_core::logic::syntax::is_variable_name;
use topos_core::logic::{Formula, LanguageSignature, Term};

use crate::error::{ParseError, ParseErrorKind, Position};
use crate::lexer::{tokenize, Token, TokenKind};
use crate::workspace::{IndexSpec, SortSpec, StageValue, Statement, ToposSpec, Workspace};

pub const RESERVED: [&str; 8] = [
    "topos", "sort", "fun", "rel", "const", "formula", "forall", "exists",
];

type Parsed<T> = Result<T, ParseError>;

/// Labels of the declared sort, stage by stage.
#[derive(Debug, Clone, Default)]
struct SortLabels {
    stages: Vec<Vec<String>>,
    stage_of: HashMap<String, usize>,
}

#[derive(Default)]
struct Symbols {
    functions: HashMap<String, usize>,
    relations: HashMap<String, usize>,
    constants: HashSet<String>,
}

impl Symbols {
    fn from_signature(sig: &LanguageSignature) -> Self {
        Symbols {
            functions: sig.functions().map(|(n, a)| (n.to_string(), a)).collect(),
            relations: sig.relations().map(|(n, a)| (n.to_string(), a)).collect(),
            constants: sig.constants().map(str::to_string).collect(),
        }
    }

    fn declared(&self, name: &str) -> bool {
        self.functions.contains_key(name)
            || self.relations.contains_key(name)
            || self.constants.contains(name)
    }
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Parsed<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &TokenKind {
        &self.tokens[self.at].kind
    }

    fn position(&self) -> Position {
        self.tokens[self.at].position
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.kind != TokenKind::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, kind: ParseErrorKind, message: impl Into<String>) -> Parsed<T> {
        Err(ParseError::new(self.position(), kind, message))
    }

    fn unexpected<T>(&self, expected: &str) -> Parsed<T> {
        self.error(
            ParseErrorKind::Syntax,
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Parsed<Position> {
        if self.peek() == &kind {
            Ok(self.bump().position)
        } else {
            self.unexpected(&kind.describe())
        }
    }

    fn keyword(&self, word: &str) -> bool {
        matches!(self.peek(), TokenKind::Ident(w) if w == word)
    }

    fn expect_keyword(&mut self, word: &str) -> Parsed<()> {
        if self.keyword(word) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{word}`"))
        }
    }

    /// A non-reserved identifier.
    fn ident(&mut self, what: &str) -> Parsed<(String, Position)> {
        match self.peek().clone() {
            TokenKind::Ident(w) if RESERVED.contains(&w.as_str()) => self.error(
                ParseErrorKind::Syntax,
                format!("`{w}` is reserved and cannot be used as {what}"),
            ),
            TokenKind::Ident(w) => Ok((w, self.bump().position)),
            _ => self.unexpected(what),
        }
    }

    /// An element label: an identifier or a number.
    fn label(&mut self) -> Parsed<(String, Position)> {
        match self.peek().clone() {
            TokenKind::Number(n) => Ok((n, self.bump().position)),
            TokenKind::Ident(_) => self.ident("a label"),
            _ => self.unexpected("a label"),
        }
    }

    fn number(&mut self) -> Parsed<(usize, Position)> {
        match self.peek().clone() {
            TokenKind::Number(n) => {
                let p = self.position();
                let value = n.parse().map_err(|_| {
                    ParseError::new(p, ParseErrorKind::Lexical, format!("`{n}` is too large"))
                })?;
                self.bump();
                Ok((value, p))
            }
            _ => self.unexpected("a number"),
        }
    }

    /// `{ item, item, … }`, possibly empty.
    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> Parsed<T>) -> Parsed<Vec<T>> {
        self.expect(TokenKind::LBrace)?;
        let mut out = Vec::new();
        if self.eat(&TokenKind::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(&TokenKind::RBrace) {
                return Ok(out);
            }
            self.expect(TokenKind::Comma)?;
        }
    }

    fn label_set(&mut self) -> Parsed<Vec<(String, Position)>> {
        let labels = self.braced(Self::label)?;
        let mut seen = HashSet::new();
        for (l, p) in &labels {
            if !seen.insert(l) {
                return Err(ParseError::new(
                    *p,
                    ParseErrorKind::Duplicate,
                    format!("`{l}` listed twice"),
                ));
            }
        }
        Ok(labels)
    }

    fn label_pair(&mut self) -> Parsed<((String, Position), (String, Position))> {
        let a = self.label()?;
        self.expect(TokenKind::Colon)?;
        Ok((a, self.label()?))
    }

    /// `(l1, …, ln)`, or a bare label for `n = 1`.
    fn label_tuple(&mut self) -> Parsed<Vec<(String, Position)>> {
        if self.eat(&TokenKind::LParen) {
            let mut out = vec![self.label()?];
            while self.eat(&TokenKind::Comma) {
                out.push(self.label()?);
            }
            self.expect(TokenKind::RParen)?;
            Ok(out)
        } else {
            Ok(vec![self.label()?])
        }
    }

    fn topos_spec(&mut self) -> Parsed<ToposSpec> {
        let (word, p) = self.ident("a topos")?;
        match word.as_str() {
            "finset" => Ok(ToposSpec::FinSet),
            "arrow" => Ok(ToposSpec::Arrow),
            "slice" => {
                self.expect(TokenKind::LParen)?;
                self.expect_keyword("finset")?;
                self.expect(TokenKind::Comma)?;
                let x = self.label_set()?.into_iter().map(|(l, _)| l).collect();
                self.expect(TokenKind::RParen)?;
                Ok(ToposSpec::Slice(x))
            }
            "presheaf" => {
                self.expect(TokenKind::LParen)?;
                let (index, p) = self.ident("an index category")?;
                let spec = match index.as_str() {
                    "interval" => IndexSpec::Interval,
                    "discrete" => {
                        let objects: Vec<String> = self.label_set()?.into_iter().map(|(l, _)| l).collect();
                        if objects.is_empty() {
                            return Err(ParseError::new(p, ParseErrorKind::Syntax, "discrete index needs an object"));
                        }
                        IndexSpec::Discrete(objects)
                    }
                    other => {
                        return Err(ParseError::new(
                            p,
                            ParseErrorKind::UnknownSymbol,
                            format!("unknown index category `{other}`; expected `interval` or `discrete{{…}}`"),
                        ))
                    }
                };
                self.expect(TokenKind::RParen)?;
                Ok(ToposSpec::Presheaf(spec))
            }
            other => Err(ParseError::new(
                p,
                ParseErrorKind::UnknownSymbol,
                format!("unknown topos `{other}`; expected finset, arrow, slice(finset, {{…}}) or presheaf(…)"),
            )),
        }
    }

    fn sort_spec(&mut self, topos: &ToposSpec) -> Parsed<(SortSpec, SortLabels)> {
        let start = self.position();
        match topos {
            ToposSpec::FinSet => {
                let labels = self.label_set()?;
                let names: Vec<String> = labels.into_iter().map(|(l, _)| l).collect();
                Ok((SortSpec::Set(names.clone()), SortLabels::single(names)))
            }
            ToposSpec::Slice(x) => {
                let entries = self.braced(Self::label_pair)?;
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for ((l, lp), (fiber, fp)) in entries {
                    if !seen.insert(l.clone()) {
                        return Err(ParseError::new(
                            lp,
                            ParseErrorKind::Duplicate,
                            format!("`{l}` listed twice"),
                        ));
                    }
                    if !x.contains(&fiber) {
                        return Err(ParseError::new(
                            fp,
                            ParseErrorKind::Range,
                            format!(
                                "`{fiber}` is not an element of the base {{{}}}",
                                x.join(", ")
                            ),
                        ));
                    }
                    out.push((l, fiber));
                }
                let names = out.iter().map(|(l, _)| l.clone()).collect();
                Ok((SortSpec::Fibered(out), SortLabels::single(names)))
            }
            ToposSpec::Arrow | ToposSpec::Presheaf(_) => {
                let index = topos.index().expect("presheaf topos");
                self.stages(&index, start)
            }
        }
    }

    fn stages(&mut self, index: &IndexSpec, start: Position) -> Parsed<(SortSpec, SortLabels)> {
        let objects = index.objects();
        let arrows = index.arrows();
        let mut sets: HashMap<String, Vec<String>> = HashMap::new();
        let mut maps: Vec<(
            String,
            Vec<((String, Position), (String, Position))>,
            Position,
        )> = Vec::new();
        let mut order = Vec::new();
        self.expect(TokenKind::LBrace)?;
        if !self.eat(&TokenKind::RBrace) {
            loop {
                let (key, kp) = self.label()?;
                self.expect(TokenKind::Colon)?;
                if order.contains(&key) {
                    return Err(ParseError::new(
                        kp,
                        ParseErrorKind::Duplicate,
                        format!("`{key}` given twice"),
                    ));
                }
                order.push(key.clone());
                if objects.contains(&key) {
                    sets.insert(key, self.label_set()?.into_iter().map(|(l, _)| l).collect());
                } else if arrows.iter().any(|(a, _, _)| a == &key) {
                    maps.push((key, self.braced(Self::label_pair)?, kp));
                } else {
                    return Err(ParseError::new(
                        kp,
                        ParseErrorKind::UnknownSymbol,
                        format!("`{key}` is neither an object nor an arrow of the index category"),
                    ));
                }
                if self.eat(&TokenKind::RBrace) {
                    break;
                }
                self.expect(TokenKind::Comma)?;
            }
        }
        for o in &objects {
            if !sets.contains_key(o) {
                return Err(ParseError::new(
                    start,
                    ParseErrorKind::Syntax,
                    format!("missing component `{o}`"),
                ));
            }
        }
        for (a, _, _) in &arrows {
            if !maps.iter().any(|(m, _, _)| m == a) {
                return Err(ParseError::new(
                    start,
                    ParseErrorKind::Syntax,
                    format!("missing restriction `{a}`"),
                ));
            }
        }
        let labels = SortLabels::staged(objects.iter().map(|o| sets[o].clone()).collect())
            .map_err(|(l, msg)| {
                ParseError::new(start, ParseErrorKind::Duplicate, format!("`{l}` {msg}"))
            })?;
        // The restriction along `a: s → t` maps the component at `t` to the one at `s`.
        for (name, entries, kp) in &maps {
            let (_, s, t) = arrows
                .iter()
                .find(|(a, _, _)| a == name)
                .expect("known arrow");
            let (from, to) = (&sets[t], &sets[s]);
            let mut seen = HashSet::new();
            for ((a, ap), (b, bp)) in entries {
                if !from.contains(a) {
                    return Err(ParseError::new(
                        *ap,
                        ParseErrorKind::Range,
                        format!("`{a}` is not in the component at `{t}`"),
                    ));
                }
                if !to.contains(b) {
                    return Err(ParseError::new(
                        *bp,
                        ParseErrorKind::Range,
                        format!("`{b}` is not in the component at `{s}`"),
                    ));
                }
                if !seen.insert(a.clone()) {
                    return Err(ParseError::new(
                        *ap,
                        ParseErrorKind::Duplicate,
                        format!("`{a}` mapped twice"),
                    ));
                }
            }
            if let Some(missing) = from.iter().find(|a| !seen.contains(*a)) {
                return Err(ParseError::new(
                    *kp,
                    ParseErrorKind::Syntax,
                    format!("`{name}` does not map `{missing}`"),
                ));
            }
        }
        let spec = order
            .into_iter()
            .map(|key| match sets.remove(&key) {
                Some(set) => (key, StageValue::Set(set)),
                None => {
                    let (_, entries, _) = maps.iter().find(|(m, _, _)| *m == key).expect("parsed");
                    let pairs = entries
                        .iter()
                        .map(|((a, _), (b, _))| (a.clone(), b.clone()))
                        .collect();
                    (key, StageValue::Map(pairs))
                }
            })
            .collect();
        Ok((SortSpec::Stages(spec), labels))
    }
}

impl SortLabels {
    fn single(labels: Vec<String>) -> Self {
        SortLabels::staged(vec![labels]).expect("labels are distinct")
    }

    fn staged(stages: Vec<Vec<String>>) -> Result<Self, (String, &'static str)> {
        let mut stage_of = HashMap::new();
        for (s, labels) in stages.iter().enumerate() {
            for l in labels {
                if stage_of.insert(l.clone(), s).is_some() {
                    return Err((
                        l.clone(),
                        "appears in more than one component; labels must be distinct",
                    ));
                }
            }
        }
        Ok(SortLabels { stages, stage_of })
    }

    /// The common stage of a tuple of labels.
    fn stage(&self, labels: &[(String, Position)], sort: &str) -> Parsed<usize> {
        let mut stage = None;
        for (l, p) in labels {
            let s = *self.stage_of.get(l).ok_or_else(|| {
                ParseError::new(
                    *p,
                    ParseErrorKind::Range,
                    format!("`{l}` is not an element of sort {sort}"),
                )
            })?;
            match stage {
                Some(t) if t != s => {
                    return Err(ParseError::new(
                        *p,
                        ParseErrorKind::Range,
                        format!("`{l}` lies in a different component from `{}`", labels[0].0),
                    ))
                }
                _ => stage = Some(s),
            }
        }
        Ok(stage.unwrap_or(0))
    }
}

/// Every `n`-tuple over `labels`, in lexicographic order.
fn tuples(labels: &[String], n: usize) -> Vec<Vec<String>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                labels.iter().map(move |l| {
                    let mut next = prefix.clone();
                    next.push(l.clone());
                    next
                })
            })
            .collect();
    }
    out
}

struct WorkspaceParser {
    parser: Parser,
    topos: Option<ToposSpec>,
    sort: Option<(String, SortLabels)>,
    symbols: Symbols,
    formula_names: HashSet<String>,
}

impl WorkspaceParser {
    fn statement(&mut self, override_topos: Option<&ToposSpec>) -> Parsed<Statement> {
        let p = &mut self.parser;
        let start = p.position();
        let TokenKind::Ident(word) = p.peek().clone() else {
            return p.unexpected("a statement");
        };
        if self.topos.is_none() && word != "topos" {
            return p.unexpected("`topos`");
        }
        match word.as_str() {
            "topos" => {
                p.bump();
                if self.topos.is_some() {
                    return Err(ParseError::new(
                        start,
                        ParseErrorKind::Duplicate,
                        "topos already selected",
                    ));
                }
                let spec = p.topos_spec()?;
                let spec = override_topos.cloned().unwrap_or(spec);
                self.topos = Some(spec.clone());
                Ok(Statement::Topos(spec))
            }
            "sort" => {
                p.bump();
                if self.sort.is_some() {
                    return Err(ParseError::new(
                        start,
                        ParseErrorKind::Duplicate,
                        "only one sort may be declared",
                    ));
                }
                let (name, _) = p.ident("a sort name")?;
                p.expect(TokenKind::Equals)?;
                let (spec, labels) = p.sort_spec(self.topos.as_ref().expect("topos first"))?;
                self.sort = Some((name.clone(), labels));
                Ok(Statement::Sort { name, spec })
            }
            "const" | "fun" | "rel" => {
                p.bump();
                let (name, np) = p.ident("a symbol name")?;
                if is_variable_name(&name) || self.symbols.declared(&name) {
                    let why = if is_variable_name(&name) {
                        "is a variable name"
                    } else {
                        "is already declared"
                    };
                    return Err(ParseError::new(
                        np,
                        ParseErrorKind::Duplicate,
                        format!("`{name}` {why}"),
                    ));
                }
                let Some((sort, labels)) = self.sort.clone() else {
                    return Err(ParseError::new(
                        start,
                        ParseErrorKind::Syntax,
                        "declare a sort before its symbols",
                    ));
                };
                match word.as_str() {
                    "const" => self.constant(name, &sort, &labels),
                    "fun" => self.function(name, &sort, &labels),
                    _ => self.relation(name, &sort, &labels),
                }
            }
            "formula" => {
                p.bump();
                let (name, np) = p.ident("a formula name")?;
                if !self.formula_names.insert(name.clone()) {
                    return Err(ParseError::new(
                        np,
                        ParseErrorKind::Duplicate,
                        format!("formula `{name}` already defined"),
                    ));
                }
                p.expect(TokenKind::Equals)?;
                let formula = FormulaParser {
                    parser: &mut self.parser,
                    symbols: &self.symbols,
                }
                .formula()?;
                Ok(Statement::Formula { name, formula })
            }
            other => p.error(
                ParseErrorKind::Syntax,
                format!("unknown statement `{other}`"),
            ),
        }
    }

    fn constant(&mut self, name: String, sort: &str, labels: &SortLabels) -> Parsed<Statement> {
        let p = &mut self.parser;
        p.expect(TokenKind::Equals)?;
        let given = if *p.peek() == TokenKind::LBrace {
            p.label_set()?
        } else {
            vec![p.label()?]
        };
        for (l, lp) in &given {
            if !labels.stage_of.contains_key(l) {
                return Err(ParseError::new(
                    *lp,
                    ParseErrorKind::Range,
                    format!("`{l}` is not an element of sort {sort}"),
                ));
            }
        }
        if given.is_empty() {
            return p.error(
                ParseErrorKind::Syntax,
                "a constant needs at least one label",
            );
        }
        self.symbols.constants.insert(name.clone());
        Ok(Statement::Const {
            name,
            labels: given.into_iter().map(|(l, _)| l).collect(),
        })
    }

    fn arity(&mut self) -> Parsed<usize> {
        self.parser.expect(TokenKind::Slash)?;
        let (arity, ap) = self.parser.number()?;
        if arity == 0 {
            return Err(ParseError::new(
                ap,
                ParseErrorKind::Arity,
                "arity must be at least 1",
            ));
        }
        self.parser.expect(TokenKind::Equals)?;
        Ok(arity)
    }

    fn check_tuple(
        &self,
        tuple: &[(String, Position)],
        arity: usize,
        sort: &str,
        labels: &SortLabels,
    ) -> Parsed<usize> {
        if tuple.len() != arity {
            return Err(ParseError::new(
                tuple[0].1,
                ParseErrorKind::Arity,
                format!("expected {arity} labels, found {}", tuple.len()),
            ));
        }
        labels.stage(tuple, sort)
    }

    fn function(&mut self, name: String, sort: &str, labels: &SortLabels) -> Parsed<Statement> {
        let arity = self.arity()?;
        let close = self.parser.position();
        let entries = self.parser.braced(|p| {
            let key = p.label_tuple()?;
            p.expect(TokenKind::Colon)?;
            Ok((key, p.label()?))
        })?;
        let mut table: HashMap<Vec<String>, String> = HashMap::new();
        let mut out = Vec::new();
        for (key, value) in entries {
            let stage = self.check_tuple(&key, arity, sort, labels)?;
            let value_stage = labels.stage(std::slice::from_ref(&value), sort)?;
            if value_stage != stage {
                return Err(ParseError::new(
                    value.1,
                    ParseErrorKind::Range,
                    format!(
                        "`{}` lies in a different component from its arguments",
                        value.0
                    ),
                ));
            }
            let key: Vec<String> = key.into_iter().map(|(l, _)| l).collect();
            if let Some(old) = table.insert(key.clone(), value.0.clone()) {
                if old != value.0 {
                    return Err(ParseError::new(
                        value.1,
                        ParseErrorKind::Duplicate,
                        format!("`{name}` assigns two values to one tuple"),
                    ));
                }
                continue;
            }
            out.push((key, value.0));
        }
        for stage in &labels.stages {
            if let Some(missing) = tuples(stage, arity)
                .into_iter()
                .find(|t| !table.contains_key(t))
            {
                return Err(ParseError::new(
                    close,
                    ParseErrorKind::Range,
                    format!("`{name}` is not defined on ({})", missing.join(", ")),
                ));
            }
        }
        self.symbols.functions.insert(name.clone(), arity);
        Ok(Statement::Fun {
            name,
            arity,
            table: out,
        })
    }

    fn relation(&mut self, name: String, sort: &str, labels: &SortLabels) -> Parsed<Statement> {
        let arity = self.arity()?;
        let entries = self.parser.braced(Parser::label_tuple)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for key in entries {
            self.check_tuple(&key, arity, sort, labels)?;
            let key: Vec<String> = key.into_iter().map(|(l, _)| l).collect();
            if seen.insert(key.clone()) {
                out.push(key);
            }
        }
        self.symbols.relations.insert(name.clone(), arity);
        Ok(Statement::Rel {
            name,
            arity,
            tuples: out,
        })
    }
}

struct FormulaParser<'p> {
    parser: &'p mut Parser,
    symbols: &'p Symbols,
}

impl FormulaParser<'_> {
    fn formula(&mut self) -> Parsed<Formula> {
        let left = self.implication()?;
        if self.parser.eat(&TokenKind::Iff) {
            let mut out = Formula::iff(left, self.implication()?);
            while self.parser.eat(&TokenKind::Iff) {
                out = Formula::iff(out, self.implication()?);
            }
            return Ok(out);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Parsed<Formula> {
        let left = self.disjunction()?;
        if self.parser.eat(&TokenKind::Implies) {
            return Ok(Formula::implies(left, self.implication()?));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Parsed<Formula> {
        let mut out = self.conjunction()?;
        while self.parser.eat(&TokenKind::Or) {
            out = Formula::or(out, self.conjunction()?);
        }
        Ok(out)
    }

    fn conjunction(&mut self) -> Parsed<Formula> {
        let mut out = self.unary()?;
        while self.parser.eat(&TokenKind::And) {
            out = Formula::and(out, self.unary()?);
        }
        Ok(out)
    }

    fn unary(&mut self) -> Parsed<Formula> {
        if self.parser.eat(&TokenKind::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        for (word, universal) in [("forall", true), ("exists", false)] {
            if self.parser.keyword(word) {
                self.parser.bump();
                let x = self.variable()?;
                self.parser.expect(TokenKind::Dot)?;
                let body = self.formula()?;
                return Ok(if universal {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                });
            }
        }
        if self.parser.eat(&TokenKind::LParen) {
            let inner = self.formula()?;
            self.parser.expect(TokenKind::RParen)?;
            return Ok(inner);
        }
        if let TokenKind::Ident(name) = self.parser.peek().clone() {
            if let Some(&arity) = self.symbols.relations.get(&name) {
                let p = self.parser.bump().position;
                let args = self.arguments(&name, arity, p)?;
                return Ok(Formula::rel(name, args));
            }
        }
        let left = self.term()?;
        self.parser.expect(TokenKind::Equals)?;
        Ok(Formula::eq(left, self.term()?))
    }

    fn variable(&mut self) -> Parsed<usize> {
        match self.parser.peek().clone() {
            TokenKind::Ident(w) if is_variable_name(&w) => {
                let p = self.parser.bump().position;
                match w[1..].parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i),
                    _ => Err(ParseError::new(
                        p,
                        ParseErrorKind::Syntax,
                        format!("`{w}`: variables are x1, x2, …"),
                    )),
                }
            }
            _ => self.parser.unexpected("a variable x1, x2, …"),
        }
    }

    fn arguments(&mut self, name: &str, arity: usize, at: Position) -> Parsed<Vec<Term>> {
        self.parser.expect(TokenKind::LParen)?;
        let mut args = vec![self.term()?];
        while self.parser.eat(&TokenKind::Comma) {
            args.push(self.term()?);
        }
        self.parser.expect(TokenKind::RParen)?;
        if args.len() != arity {
            return Err(ParseError::new(
                at,
                ParseErrorKind::Arity,
                format!("`{name}` takes {arity} arguments, given {}", args.len()),
            ));
        }
        Ok(args)
    }

    fn term(&mut self) -> Parsed<Term> {
        let TokenKind::Ident(name) = self.parser.peek().clone() else {
            return self.parser.unexpected("a term");
        };
        if is_variable_name(&name) {
            return Ok(Term::var(self.variable()?));
        }
        let p = self.parser.position();
        if let Some(&arity) = self.symbols.functions.get(&name) {
            self.parser.bump();
            let args = self.arguments(&name, arity, p)?;
            return Ok(Term::apply(name, args));
        }
        if self.symbols.constants.contains(&name) {
            self.parser.bump();
            return Ok(Term::constant(name));
        }
        let why = if self.symbols.relations.contains_key(&name) {
            format!("relation `{name}` used as a term")
        } else {
            format!("`{name}` is not a declared function or constant")
        };
        Err(ParseError::new(p, ParseErrorKind::UnknownSymbol, why))
    }
}

/// Parses a workspace; `override_topos` replaces its `topos` statement.
pub fn parse_workspace_with(text: &str, override_topos: Option<&ToposSpec>) -> Parsed<Workspace> {
    let mut w = WorkspaceParser {
        parser: Parser::new(text)?,
        topos: None,
        sort: None,
        symbols: Symbols::default(),
        formula_names: HashSet::new(),
    };
    if w.parser.peek() == &TokenKind::Eof {
        return Err(ParseError::new(
            Position::START,
            ParseErrorKind::Syntax,
            "empty workspace; expected `topos`",
        ));
    }
    let mut statements = Vec::new();
    loop {
        while w.parser.eat(&TokenKind::Semicolon) {}
        if w.parser.peek() == &TokenKind::Eof {
            break;
        }
        statements.push(w.statement(override_topos)?);
        if w.parser.peek() != &TokenKind::Eof {
            w.parser.expect(TokenKind::Semicolon)?;
        }
    }
    if w.topos.is_none() {
        return Err(ParseError::new(
            Position::START,
            ParseErrorKind::Syntax,
            "expected `topos`",
        ));
    }
    Ok(Workspace { statements })
}

pub fn parse_workspace(text: &str) -> Parsed<Workspace> {
    parse_workspace_with(text, None)
}

/// Parses a formula over the symbols of `signature`.
pub fn parse_formula(text: &str, signature: &LanguageSignature) -> Parsed<Formula> {
    let mut parser = Parser::new(text)?;
    if parser.peek() == &TokenKind::Eof {
        return Err(ParseError::new(
            Position::START,
            ParseErrorKind::Syntax,
            "empty formula",
        ));
    }
    let symbols = Symbols::from_signature(signature);
    let formula = FormulaParser {
        parser: &mut parser,
        symbols: &symbols,
    }
    .formula()?;
    if parser.peek() != &TokenKind::Eof {
        return parser.unexpected("end of formula");
    }
    Ok(formula)
}

/// Parses a topos selector such as `arrow` or `slice(finset, {x, y})`.
pub fn parse_topos(text: &str) -> Parsed<ToposSpec> {
    let mut parser = Parser::new(text)?;
    let spec = parser.topos_spec()?;
    if parser.peek() != &TokenKind::Eof {
        return parser.unexpected("end of topos selector");
    }
    Ok(spec)
}

/// Variables occurring free, for messages.
pub fn describe_free(formula: &Formula) -> String {
    let vars: BTreeSet<usize> = formula.free_vars();
    vars.iter()
        .map(|v| format!("x{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}
