//! The `.cat` text format: a small declaration language for categories
//! (presentations or explicit tables), functors, presheaves, shape classes,
//! colimit recipes, and check requests.
//!
//! Composition is written `g.f`, meaning g∘f (apply f first). Identities
//! are implicit in presentation form and must be listed in table form.
//! Names may be quoted (`"g.f"`) when they are not plain identifiers.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::cofinality::CofinalityLevel;
use crate::completion::{eval_recipe, resolve_identity_edges, Recipe, RecipeStep, ShapeClass};
use crate::fincat::{free_category, FiniteCategory, FunctorData, GraphPresentation, Morphism, RelPath};
use crate::presheaf::Presheaf;

pub const DEFAULT_PATH_BOUND: usize = 8;

// ---------------------------------------------------------------------------
// diagnostics

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{span}: syntax error: {message}")]
    Syntax { message: String, span: Span },
    #[error("{span}: duplicate name `{name}`")]
    DuplicateName { name: String, span: Span },
    #[error("{span}: unresolved reference `{name}`")]
    UnresolvedReference { name: String, span: Span },
    #[error("{span}: {message}")]
    Elaboration { message: String, span: Span },
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Syntax { span, .. }
            | DslError::DuplicateName { span, .. }
            | DslError::UnresolvedReference { span, .. }
            | DslError::Elaboration { span, .. } => *span,
        }
    }
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Arrow,
    Colon,
    Semi,
    Comma,
    Dot,
    Eq,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let span = Span { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match ch {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match chars.peek() {
                        None => {
                            return Err(DslError::Syntax {
                                message: "unterminated string; add a closing `\"`".into(),
                                span,
                            })
                        }
                        Some('"') => {
                            bump(&mut chars);
                            break;
                        }
                        Some('\\') => {
                            bump(&mut chars);
                            match chars.peek() {
                                Some(&c @ ('"' | '\\')) => {
                                    s.push(c);
                                    bump(&mut chars);
                                }
                                _ => {
                                    return Err(DslError::Syntax {
                                        message: "unknown escape; only \\\" and \\\\ are allowed".into(),
                                        span,
                                    })
                                }
                            }
                        }
                        Some(_) => s.push(bump(&mut chars)),
                    }
                }
                out.push((Tok::Ident(s), span));
            }
            c if c.is_ascii_digit() => {
                let mut n = 0usize;
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    n = n * 10 + (c as usize - '0' as usize);
                    bump(&mut chars);
                }
                out.push((Tok::Num(n), span));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_alphanumeric() || c == '_') {
                        break;
                    }
                    s.push(bump(&mut chars));
                }
                out.push((Tok::Ident(s), span));
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push((Tok::Arrow, span));
                } else {
                    return Err(DslError::Syntax {
                        message: "stray `-`; did you mean `->`?".into(),
                        span,
                    });
                }
            }
            ':' => {
                bump(&mut chars);
                out.push((Tok::Colon, span));
            }
            ';' => {
                bump(&mut chars);
                out.push((Tok::Semi, span));
            }
            ',' => {
                bump(&mut chars);
                out.push((Tok::Comma, span));
            }
            '.' => {
                bump(&mut chars);
                out.push((Tok::Dot, span));
            }
            '=' => {
                bump(&mut chars);
                out.push((Tok::Eq, span));
            }
            '{' => {
                bump(&mut chars);
                out.push((Tok::LBrace, span));
            }
            '}' => {
                bump(&mut chars);
                out.push((Tok::RBrace, span));
            }
            '[' => {
                bump(&mut chars);
                out.push((Tok::LBracket, span));
            }
            ']' => {
                bump(&mut chars);
                out.push((Tok::RBracket, span));
            }
            c => {
                return Err(DslError::Syntax {
                    message: format!("unexpected character `{c}`"),
                    span,
                })
            }
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

// ---------------------------------------------------------------------------
// AST

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Name,
    pub src: Name,
    pub tgt: Name,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryBody {
    /// Presentation: free category on a graph, modulo path relations.
    Presentation {
        objects: Vec<Name>,
        arrows: Vec<ArrowDecl>,
        /// Each side is a dotted path in composition order (`g.f` = g∘f).
        relations: Vec<(Vec<Name>, Vec<Name>)>,
    },
    /// Explicit table: all morphisms (including identities) and the full
    /// composition table for non-identity pairs.
    Table {
        objects: Vec<Name>,
        morphisms: Vec<ArrowDecl>,
        /// One identity morphism name per object, in object order.
        identities: Vec<Name>,
        /// `g.f = h` entries.
        compose: Vec<(Name, Name, Name)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Name,
    pub body: CategoryBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub objects: Vec<(Name, Name)>,
    /// Arrow images may be dotted composites in the target.
    pub arrows: Vec<(Name, Vec<Name>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafDecl {
    pub name: Name,
    pub base: Name,
    pub sets: Vec<(Name, usize)>,
    /// Action of each non-identity morphism: the list maps elements at the
    /// morphism's target object to elements at its source object.
    pub actions: Vec<(Name, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: Name,
    pub shapes: Vec<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepBody {
    Leaf { object: Name },
    Colim {
        shape: Name,
        nodes: Vec<Name>,
        /// Per non-identity shape morphism: element maps, one list per base
        /// object.
        edges: Vec<(Name, Vec<Vec<usize>>)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipeDecl {
    pub name: Name,
    pub base: Name,
    pub class: Name,
    pub steps: Vec<(Name, StepBody)>,
    pub root: Name,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckDecl {
    Closure { category: Name, class: Name },
    Cofinal { functor: Name, level: CofinalityLevel },
    Sifted { category: Name },
    Filtered { category: Name },
    Contractible { category: Name },
    Recipe { recipe: Name },
    Preservation { functor: Name, shape: Name },
    Membership { presheaf: Name, class: Name },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    PathBound(usize, Span),
    Category(CategoryDecl),
    Functor(FunctorDecl),
    Presheaf(PresheafDecl),
    Class(ClassDecl),
    Recipe(RecipeDecl),
    Check(CheckDecl),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ast {
    pub decls: Vec<Decl>,
}

// ---------------------------------------------------------------------------
// parser

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> DslError {
        DslError::Syntax { message: message.into(), span: self.span() }
    }

    fn expect(&mut self, t: Tok) -> Result<Span, DslError> {
        if self.peek() == &t {
            Ok(self.next().1)
        } else {
            Err(self.err(format!("expected {t}, found {}", self.peek())))
        }
    }

    fn name(&mut self) -> Result<Name, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.next().1;
                Ok(Name { text: s, span })
            }
            other => Err(self.err(format!("expected a name, found {other}"))),
        }
    }

    fn num(&mut self) -> Result<usize, DslError> {
        match *self.peek() {
            Tok::Num(n) => {
                self.next();
                Ok(n)
            }
            _ => Err(self.err(format!("expected a number, found {}", self.peek()))),
        }
    }

    /// `kw` must be the next identifier.
    fn keyword(&mut self, kw: &str) -> Result<Span, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) if s == kw => Ok(self.next().1),
            other => Err(self.err(format!("expected `{kw}`, found {other}"))),
        }
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn comma_names(&mut self) -> Result<Vec<Name>, DslError> {
        let mut out = vec![self.name()?];
        while self.peek() == &Tok::Comma {
            self.next();
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn dotted_path(&mut self) -> Result<Vec<Name>, DslError> {
        let mut out = vec![self.name()?];
        while self.peek() == &Tok::Dot {
            self.next();
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn num_list(&mut self) -> Result<Vec<usize>, DslError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if self.peek() != &Tok::RBracket {
            out.push(self.num()?);
            while self.peek() == &Tok::Comma {
                self.next();
                out.push(self.num()?);
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn num_list_list(&mut self) -> Result<Vec<Vec<usize>>, DslError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if self.peek() != &Tok::RBracket {
            out.push(self.num_list()?);
            while self.peek() == &Tok::Comma {
                self.next();
                out.push(self.num_list()?);
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn arrow_decl(&mut self) -> Result<ArrowDecl, DslError> {
        let name = self.name()?;
        self.expect(Tok::Colon)?;
        let src = self.name()?;
        self.expect(Tok::Arrow)?;
        let tgt = self.name()?;
        Ok(ArrowDecl { name, src, tgt })
    }

    fn category(&mut self) -> Result<CategoryDecl, DslError> {
        self.keyword("category")?;
        let name = self.name()?;
        let table = if self.peek_keyword("table") {
            self.next();
            true
        } else {
            false
        };
        self.expect(Tok::LBrace)?;
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        let mut compose = Vec::new();
        while self.peek() != &Tok::RBrace {
            if self.peek_keyword("objects") {
                self.next();
                self.expect(Tok::Colon)?;
                objects = self.comma_names()?;
                self.expect(Tok::Semi)?;
            } else if !table && self.peek_keyword("arrows") {
                self.next();
                self.expect(Tok::Colon)?;
                arrows.push(self.arrow_decl()?);
                while self.peek() == &Tok::Comma {
                    self.next();
                    arrows.push(self.arrow_decl()?);
                }
                self.expect(Tok::Semi)?;
            } else if !table && self.peek_keyword("relations") {
                self.next();
                self.expect(Tok::Colon)?;
                loop {
                    let lhs = self.dotted_path()?;
                    self.expect(Tok::Eq)?;
                    let rhs = self.dotted_path()?;
                    relations.push((lhs, rhs));
                    if self.peek() == &Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
            } else if table && self.peek_keyword("morphisms") {
                self.next();
                self.expect(Tok::Colon)?;
                morphisms.push(self.arrow_decl()?);
                while self.peek() == &Tok::Comma {
                    self.next();
                    morphisms.push(self.arrow_decl()?);
                }
                self.expect(Tok::Semi)?;
            } else if table && self.peek_keyword("identities") {
                self.next();
                self.expect(Tok::Colon)?;
                identities = self.comma_names()?;
                self.expect(Tok::Semi)?;
            } else if table && self.peek_keyword("compose") {
                self.next();
                self.expect(Tok::Colon)?;
                loop {
                    let g = self.name()?;
                    self.expect(Tok::Dot)?;
                    let f = self.name()?;
                    self.expect(Tok::Eq)?;
                    let h = self.name()?;
                    compose.push((g, f, h));
                    if self.peek() == &Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
            } else {
                return Err(self.err(format!(
                    "expected a category section ({}), found {}",
                    if table { "objects/morphisms/identities/compose" } else { "objects/arrows/relations" },
                    self.peek()
                )));
            }
        }
        self.expect(Tok::RBrace)?;
        let body = if table {
            CategoryBody::Table { objects, morphisms, identities, compose }
        } else {
            CategoryBody::Presentation { objects, arrows, relations }
        };
        Ok(CategoryDecl { name, body })
    }

    fn functor(&mut self) -> Result<FunctorDecl, DslError> {
        self.keyword("functor")?;
        let name = self.name()?;
        self.expect(Tok::Colon)?;
        let source = self.name()?;
        self.expect(Tok::Arrow)?;
        let target = self.name()?;
        self.expect(Tok::LBrace)?;
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        while self.peek() != &Tok::RBrace {
            if self.peek_keyword("objects") {
                self.next();
                self.expect(Tok::Colon)?;
                loop {
                    let from = self.name()?;
                    self.expect(Tok::Arrow)?;
                    let to = self.name()?;
                    objects.push((from, to));
                    if self.peek() == &Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
            } else if self.peek_keyword("arrows") {
                self.next();
                self.expect(Tok::Colon)?;
                loop {
                    let from = self.name()?;
                    self.expect(Tok::Arrow)?;
                    let to = self.dotted_path()?;
                    arrows.push((from, to));
                    if self.peek() == &Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
            } else {
                return Err(self.err(format!("expected `objects` or `arrows`, found {}", self.peek())));
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(FunctorDecl { name, source, target, objects, arrows })
    }

    fn presheaf(&mut self) -> Result<PresheafDecl, DslError> {
        self.keyword("presheaf")?;
        let name = self.name()?;
        self.keyword("on")?;
        let base = self.name()?;
        self.expect(Tok::LBrace)?;
        let mut sets = Vec::new();
        let mut actions = Vec::new();
        while self.peek() != &Tok::RBrace {
            if self.peek_keyword("sets") {
                self.next();
                self.expect(Tok::Colon)?;
                loop {
                    let o = self.name()?;
                    self.expect(Tok::Eq)?;
                    let n = self.num()?;
                    sets.push((o, n));
                    if self.peek() == &Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Semi)?;
            } else if self.peek_keyword("action") {
                self.next();
                let m = self.name()?;
                self.expect(Tok::Eq)?;
                let table = self.num_list()?;
                actions.push((m, table));
                self.expect(Tok::Semi)?;
            } else {
                return Err(self.err(format!("expected `sets` or `action`, found {}", self.peek())));
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(PresheafDecl { name, base, sets, actions })
    }

    fn class(&mut self) -> Result<ClassDecl, DslError> {
        self.keyword("class")?;
        let name = self.name()?;
        self.expect(Tok::LBrace)?;
        let mut shapes = Vec::new();
        while self.peek() != &Tok::RBrace {
            self.keyword("shapes")?;
            self.expect(Tok::Colon)?;
            shapes = self.comma_names()?;
            self.expect(Tok::Semi)?;
        }
        self.expect(Tok::RBrace)?;
        Ok(ClassDecl { name, shapes })
    }

    fn recipe(&mut self) -> Result<RecipeDecl, DslError> {
        self.keyword("recipe")?;
        let name = self.name()?;
        self.keyword("on")?;
        let base = self.name()?;
        self.keyword("over")?;
        let class = self.name()?;
        self.expect(Tok::LBrace)?;
        let mut steps = Vec::new();
        let mut root = None;
        while self.peek() != &Tok::RBrace {
            if self.peek_keyword("step") {
                self.next();
                let step_name = self.name()?;
                self.expect(Tok::Eq)?;
                if self.peek_keyword("leaf") {
                    self.next();
                    let object = self.name()?;
                    self.expect(Tok::Semi)?;
                    steps.push((step_name, StepBody::Leaf { object }));
                } else if self.peek_keyword("colim") {
                    self.next();
                    let shape = self.name()?;
                    self.expect(Tok::LBrace)?;
                    let mut nodes = Vec::new();
                    let mut edges = Vec::new();
                    while self.peek() != &Tok::RBrace {
                        if self.peek_keyword("nodes") {
                            self.next();
                            self.expect(Tok::Colon)?;
                            nodes = self.comma_names()?;
                            self.expect(Tok::Semi)?;
                        } else if self.peek_keyword("edge") {
                            self.next();
                            let m = self.name()?;
                            self.expect(Tok::Eq)?;
                            let table = self.num_list_list()?;
                            edges.push((m, table));
                            self.expect(Tok::Semi)?;
                        } else {
                            return Err(self.err(format!("expected `nodes` or `edge`, found {}", self.peek())));
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    steps.push((step_name, StepBody::Colim { shape, nodes, edges }));
                } else {
                    return Err(self.err(format!("expected `leaf` or `colim`, found {}", self.peek())));
                }
            } else if self.peek_keyword("root") {
                self.next();
                root = Some(self.name()?);
                self.expect(Tok::Semi)?;
            } else {
                return Err(self.err(format!("expected `step` or `root`, found {}", self.peek())));
            }
        }
        let close = self.expect(Tok::RBrace)?;
        let root = root.ok_or(DslError::Syntax {
            message: "recipe has no `root` declaration".into(),
            span: close,
        })?;
        Ok(RecipeDecl { name, base, class, steps, root })
    }

    fn check(&mut self) -> Result<CheckDecl, DslError> {
        self.keyword("check")?;
        let kind = self.name()?;
        let decl = match kind.text.as_str() {
            "closure" => CheckDecl::Closure { category: self.name()?, class: self.name()? },
            "cofinal" => {
                let functor = self.name()?;
                let level = self.name()?;
                let level = match level.text.as_str() {
                    "connected" => CofinalityLevel::Connected,
                    "weak" => CofinalityLevel::WeaklyContractible,
                    _ => {
                        return Err(DslError::Syntax {
                            message: format!("unknown level `{}`; use `connected` or `weak`", level.text),
                            span: level.span,
                        })
                    }
                };
                CheckDecl::Cofinal { functor, level }
            }
            "sifted" => CheckDecl::Sifted { category: self.name()? },
            "filtered" => CheckDecl::Filtered { category: self.name()? },
            "contractible" => CheckDecl::Contractible { category: self.name()? },
            "recipe" => CheckDecl::Recipe { recipe: self.name()? },
            "preservation" => CheckDecl::Preservation { functor: self.name()?, shape: self.name()? },
            "membership" => CheckDecl::Membership { presheaf: self.name()?, class: self.name()? },
            other => {
                return Err(DslError::Syntax {
                    message: format!(
                        "unknown check kind `{other}`; expected closure, cofinal, sifted, filtered, \
                         contractible, recipe, preservation, or membership"
                    ),
                    span: kind.span,
                })
            }
        };
        self.expect(Tok::Semi)?;
        Ok(decl)
    }

    fn file(&mut self) -> Result<Ast, DslError> {
        let mut decls = Vec::new();
        while self.peek() != &Tok::Eof {
            if self.peek_keyword("path_bound") {
                let span = self.next().1;
                let n = self.num()?;
                self.expect(Tok::Semi)?;
                decls.push(Decl::PathBound(n, span));
            } else if self.peek_keyword("category") {
                decls.push(Decl::Category(self.category()?));
            } else if self.peek_keyword("functor") {
                decls.push(Decl::Functor(self.functor()?));
            } else if self.peek_keyword("presheaf") {
                decls.push(Decl::Presheaf(self.presheaf()?));
            } else if self.peek_keyword("class") {
                decls.push(Decl::Class(self.class()?));
            } else if self.peek_keyword("recipe") {
                decls.push(Decl::Recipe(self.recipe()?));
            } else if self.peek_keyword("check") {
                decls.push(Decl::Check(self.check()?));
            } else {
                return Err(self.err(format!(
                    "expected a declaration (path_bound, category, functor, presheaf, class, recipe, check), found {}",
                    self.peek()
                )));
            }
        }
        Ok(Ast { decls })
    }
}

pub fn parse(text: &str) -> Result<Ast, DslError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.file()
}

// ---------------------------------------------------------------------------
// elaboration

/// A recipe together with the base category and class it elaborated against.
#[derive(Debug, Clone)]
pub struct RecipeEntry {
    pub base: String,
    pub class: String,
    pub recipe: Recipe,
}

/// A shape class remembering the category names its shapes came from.
#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub shape_names: Vec<String>,
    pub class: ShapeClass,
}

/// The fully resolved content of a `.cat` file, in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub path_bound: usize,
    pub categories: Vec<(String, Arc<FiniteCategory>)>,
    pub functors: Vec<(String, FunctorData)>,
    pub presheaves: Vec<(String, Presheaf)>,
    pub classes: Vec<(String, ClassEntry)>,
    pub recipes: Vec<(String, RecipeEntry)>,
    pub checks: Vec<CheckDecl>,
}

impl Workspace {
    pub fn category(&self, name: &str) -> Option<&Arc<FiniteCategory>> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn functor(&self, name: &str) -> Option<&FunctorData> {
        self.functors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn presheaf(&self, name: &str) -> Option<&Presheaf> {
        self.presheaves.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn class(&self, name: &str) -> Option<&ClassEntry> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn recipe(&self, name: &str) -> Option<&RecipeEntry> {
        self.recipes.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

fn resolve<'a, T>(items: &'a [(String, T)], name: &Name) -> Result<&'a T, DslError> {
    items
        .iter()
        .find(|(n, _)| *n == name.text)
        .map(|(_, v)| v)
        .ok_or_else(|| DslError::UnresolvedReference { name: name.text.clone(), span: name.span })
}

fn object_index(c: &FiniteCategory, name: &Name) -> Result<usize, DslError> {
    c.object_names
        .iter()
        .position(|n| *n == name.text)
        .ok_or_else(|| DslError::UnresolvedReference { name: name.text.clone(), span: name.span })
}

fn morphism_index(c: &FiniteCategory, name: &Name) -> Result<usize, DslError> {
    c.morphisms
        .iter()
        .position(|m| m.name == name.text)
        .ok_or_else(|| DslError::UnresolvedReference { name: name.text.clone(), span: name.span })
}

/// Resolves a dotted path `g.f` (composition order) to a morphism of `c`.
fn composite_index(c: &FiniteCategory, path: &[Name]) -> Result<usize, DslError> {
    let mut acc: Option<usize> = None;
    // fold right to left: apply-first order
    for name in path.iter().rev() {
        let m = morphism_index(c, name)?;
        acc = Some(match acc {
            None => m,
            Some(prev) => c.compose(m, prev).ok_or_else(|| DslError::Elaboration {
                message: format!("`{}` does not compose with the preceding path segment", name.text),
                span: name.span,
            })?,
        });
    }
    acc.ok_or_else(|| DslError::Elaboration {
        message: "empty composite".into(),
        span: Span { line: 0, col: 0 },
    })
}

fn check_unique(seen: &mut Vec<String>, name: &Name) -> Result<(), DslError> {
    if seen.iter().any(|n| *n == name.text) {
        return Err(DslError::DuplicateName { name: name.text.clone(), span: name.span });
    }
    seen.push(name.text.clone());
    Ok(())
}

fn elaborate_category(decl: &CategoryDecl, path_bound: usize) -> Result<FiniteCategory, DslError> {
    let span = decl.name.span;
    match &decl.body {
        CategoryBody::Presentation { objects, arrows, relations } => {
            let mut names = Vec::new();
            for o in objects {
                check_unique(&mut names, o)?;
            }
            let vertex = |n: &Name| -> Result<usize, DslError> {
                objects.iter().position(|o| o.text == n.text).ok_or_else(|| DslError::UnresolvedReference {
                    name: n.text.clone(),
                    span: n.span,
                })
            };
            let mut edge_names = Vec::new();
            let mut edges = Vec::new();
            for a in arrows {
                check_unique(&mut edge_names, &a.name)?;
                edges.push((a.name.text.clone(), vertex(&a.src)?, vertex(&a.tgt)?));
            }
            // a relation path component is an edge name or `id_<object>`
            let rel_path = |path: &[Name]| -> Result<RelPath, DslError> {
                let mut es = Vec::new();
                let mut base = None;
                for n in path {
                    if let Some(e) = edges.iter().position(|(en, _, _)| *en == n.text) {
                        es.push(e);
                    } else if let Some(obj) = n.text.strip_prefix("id_").and_then(|o| {
                        objects.iter().position(|x| x.text == o)
                    }) {
                        base = Some(obj);
                    } else {
                        return Err(DslError::UnresolvedReference { name: n.text.clone(), span: n.span });
                    }
                }
                es.reverse(); // dotted syntax is composition order; paths are application order
                Ok(RelPath { edges: es, base })
            };
            let mut rels = Vec::new();
            for (lhs, rhs) in relations {
                rels.push((rel_path(lhs)?, rel_path(rhs)?));
            }
            let p = GraphPresentation {
                vertices: objects.iter().map(|o| o.text.clone()).collect(),
                edges,
                relations: rels,
            };
            free_category(&p, path_bound)
                .map_err(|e| DslError::Elaboration { message: e.to_string(), span })
        }
        CategoryBody::Table { objects, morphisms, identities, compose } => {
            let mut names = Vec::new();
            for o in objects {
                check_unique(&mut names, o)?;
            }
            let obj = |n: &Name| -> Result<usize, DslError> {
                objects.iter().position(|o| o.text == n.text).ok_or_else(|| DslError::UnresolvedReference {
                    name: n.text.clone(),
                    span: n.span,
                })
            };
            let mut mor_names = Vec::new();
            let mut mors = Vec::new();
            for m in morphisms {
                check_unique(&mut mor_names, &m.name)?;
                mors.push(Morphism { name: m.name.text.clone(), src: obj(&m.src)?, tgt: obj(&m.tgt)? });
            }
            let mor = |n: &Name| -> Result<usize, DslError> {
                mors.iter().position(|m| m.name == n.text).ok_or_else(|| DslError::UnresolvedReference {
                    name: n.text.clone(),
                    span: n.span,
                })
            };
            if identities.len() != objects.len() {
                return Err(DslError::Elaboration {
                    message: format!(
                        "table lists {} identities for {} objects; list one per object, in object order",
                        identities.len(),
                        objects.len()
                    ),
                    span,
                });
            }
            let mut identity = Vec::new();
            for (o, idn) in identities.iter().enumerate() {
                let m = mor(idn)?;
                if mors[m].src != o || mors[m].tgt != o {
                    return Err(DslError::Elaboration {
                        message: format!("identity `{}` is not an endomorphism of object {}", idn.text, objects[o].text),
                        span: idn.span,
                    });
                }
                identity.push(m);
            }
            let mut table = HashMap::new();
            // identity compositions are implicit
            for (f, m) in mors.iter().enumerate() {
                table.insert((f, identity[m.src]), f);
                table.insert((identity[m.tgt], f), f);
            }
            for (g, f, h) in compose {
                table.insert((mor(g)?, mor(f)?), mor(h)?);
            }
            let cat = FiniteCategory::new(
                objects.iter().map(|o| o.text.clone()).collect(),
                mors,
                identity,
                &table,
            );
            let violations = cat.validate();
            if let Some(v) = violations.first() {
                return Err(DslError::Elaboration {
                    message: format!("category table is invalid: {v}"),
                    span,
                });
            }
            Ok(cat)
        }
    }
}

pub fn elaborate(ast: &Ast) -> Result<Workspace, DslError> {
    let mut ws = Workspace { path_bound: DEFAULT_PATH_BOUND, ..Default::default() };
    let mut all_names: Vec<String> = Vec::new();
    for decl in &ast.decls {
        match decl {
            Decl::PathBound(n, span) => {
                if *n == 0 {
                    return Err(DslError::Elaboration {
                        message: "path_bound must be at least 1".into(),
                        span: *span,
                    });
                }
                ws.path_bound = *n;
            }
            Decl::Category(c) => {
                check_unique(&mut all_names, &c.name)?;
                let cat = elaborate_category(c, ws.path_bound)?;
                ws.categories.push((c.name.text.clone(), Arc::new(cat)));
            }
            Decl::Functor(f) => {
                check_unique(&mut all_names, &f.name)?;
                let source = resolve(&ws.categories, &f.source)?.clone();
                let target = resolve(&ws.categories, &f.target)?.clone();
                let mut object_map = vec![usize::MAX; source.n_objects()];
                for (from, to) in &f.objects {
                    object_map[object_index(&source, from)?] = object_index(&target, to)?;
                }
                if let Some(o) = object_map.iter().position(|&x| x == usize::MAX) {
                    return Err(DslError::Elaboration {
                        message: format!("no image given for object `{}`", source.object_names[o]),
                        span: f.name.span,
                    });
                }
                let mut morphism_map = vec![usize::MAX; source.n_morphisms()];
                for o in 0..source.n_objects() {
                    morphism_map[source.identity[o]] = target.identity[object_map[o]];
                }
                for (from, to) in &f.arrows {
                    morphism_map[morphism_index(&source, from)?] = composite_index(&target, to)?;
                }
                if let Some(m) = morphism_map.iter().position(|&x| x == usize::MAX) {
                    return Err(DslError::Elaboration {
                        message: format!("no image given for arrow `{}`", source.morphisms[m].name),
                        span: f.name.span,
                    });
                }
                let data = FunctorData { source, target, object_map, morphism_map };
                if !data.is_functorial() {
                    return Err(DslError::Elaboration {
                        message: format!("`{}` is not a functor: it breaks sources, targets, or composition", f.name.text),
                        span: f.name.span,
                    });
                }
                ws.functors.push((f.name.text.clone(), data));
            }
            Decl::Presheaf(p) => {
                check_unique(&mut all_names, &p.name)?;
                let base = resolve(&ws.categories, &p.base)?.clone();
                let mut sets = vec![usize::MAX; base.n_objects()];
                for (o, n) in &p.sets {
                    sets[object_index(&base, o)?] = *n;
                }
                if let Some(o) = sets.iter().position(|&x| x == usize::MAX) {
                    return Err(DslError::Elaboration {
                        message: format!("no set size given for object `{}`", base.object_names[o]),
                        span: p.name.span,
                    });
                }
                let mut actions: Vec<Option<Vec<usize>>> = vec![None; base.n_morphisms()];
                for o in 0..base.n_objects() {
                    actions[base.identity[o]] = Some((0..sets[o]).collect());
                }
                for (m, table) in &p.actions {
                    let mi = morphism_index(&base, m)?;
                    actions[mi] = Some(table.clone());
                }
                if let Some(m) = actions.iter().position(|x| x.is_none()) {
                    return Err(DslError::Elaboration {
                        message: format!("no action given for morphism `{}`", base.morphisms[m].name),
                        span: p.name.span,
                    });
                }
                let ps = Presheaf { base, sets, actions: actions.into_iter().map(|a| a.unwrap()).collect() };
                if let Err(e) = ps.validate() {
                    return Err(DslError::Elaboration {
                        message: format!("presheaf `{}` is invalid: {e}", p.name.text),
                        span: p.name.span,
                    });
                }
                ws.presheaves.push((p.name.text.clone(), ps));
            }
            Decl::Class(c) => {
                check_unique(&mut all_names, &c.name)?;
                let mut shapes = Vec::new();
                let mut shape_names = Vec::new();
                for s in &c.shapes {
                    shapes.push(resolve(&ws.categories, s)?.clone());
                    shape_names.push(s.text.clone());
                }
                let class = ShapeClass::new(c.name.text.clone(), shapes);
                ws.classes.push((c.name.text.clone(), ClassEntry { shape_names, class }));
            }
            Decl::Recipe(r) => {
                check_unique(&mut all_names, &r.name)?;
                let base = resolve(&ws.categories, &r.base)?.clone();
                let entry = resolve(&ws.classes, &r.class)?;
                let mut step_names: Vec<String> = Vec::new();
                let mut steps = Vec::new();
                for (sname, body) in &r.steps {
                    let step = match body {
                        StepBody::Leaf { object } => RecipeStep::Leaf { object: object_index(&base, object)? },
                        StepBody::Colim { shape, nodes, edges } => {
                            let si = entry
                                .shape_names
                                .iter()
                                .position(|n| *n == shape.text)
                                .ok_or_else(|| DslError::UnresolvedReference {
                                    name: shape.text.clone(),
                                    span: shape.span,
                                })?;
                            let shape_cat = &entry.class.shapes[si];
                            if nodes.len() != shape_cat.n_objects() {
                                return Err(DslError::Elaboration {
                                    message: format!(
                                        "step `{}` gives {} nodes but the shape has {} objects",
                                        sname.text,
                                        nodes.len(),
                                        shape_cat.n_objects()
                                    ),
                                    span: sname.span,
                                });
                            }
                            let nodes: Vec<usize> = nodes
                                .iter()
                                .map(|n| {
                                    step_names.iter().position(|s| *s == n.text).ok_or_else(|| {
                                        DslError::UnresolvedReference { name: n.text.clone(), span: n.span }
                                    })
                                })
                                .collect::<Result<_, _>>()?;
                            let mut edge_tables: Vec<Vec<Vec<usize>>> =
                                vec![Vec::new(); shape_cat.n_morphisms()];
                            for (m, table) in edges {
                                let mi = morphism_index(shape_cat, m)?;
                                edge_tables[mi] = table.clone();
                            }
                            RecipeStep::Colim { shape: si, nodes, edges: edge_tables }
                        }
                    };
                    check_unique(&mut step_names, sname)?;
                    steps.push(step);
                }
                let root = step_names
                    .iter()
                    .position(|s| *s == r.root.text)
                    .ok_or_else(|| DslError::UnresolvedReference {
                        name: r.root.text.clone(),
                        span: r.root.span,
                    })?;
                let mut recipe = Recipe { steps, root };
                resolve_identity_edges(&base, &entry.class, &mut recipe).map_err(|e| DslError::Elaboration {
                    message: format!("recipe `{}` is invalid: {e}", r.name.text),
                    span: r.name.span,
                })?;
                if let Err(e) = eval_recipe(&base, &entry.class, &recipe) {
                    return Err(DslError::Elaboration {
                        message: format!("recipe `{}` does not evaluate: {e}", r.name.text),
                        span: r.name.span,
                    });
                }
                ws.recipes.push((
                    r.name.text.clone(),
                    RecipeEntry { base: r.base.text.clone(), class: r.class.text.clone(), recipe },
                ));
            }
            Decl::Check(c) => {
                match c {
                    CheckDecl::Closure { category, class } => {
                        resolve(&ws.categories, category)?;
                        resolve(&ws.classes, class)?;
                    }
                    CheckDecl::Cofinal { functor, .. } => {
                        resolve(&ws.functors, functor)?;
                    }
                    CheckDecl::Sifted { category }
                    | CheckDecl::Filtered { category }
                    | CheckDecl::Contractible { category } => {
                        resolve(&ws.categories, category)?;
                    }
                    CheckDecl::Recipe { recipe } => {
                        resolve(&ws.recipes, recipe)?;
                    }
                    CheckDecl::Preservation { functor, shape } => {
                        resolve(&ws.functors, functor)?;
                        resolve(&ws.categories, shape)?;
                    }
                    CheckDecl::Membership { presheaf, class } => {
                        resolve(&ws.presheaves, presheaf)?;
                        resolve(&ws.classes, class)?;
                    }
                }
                ws.checks.push(c.clone());
            }
        }
    }
    Ok(ws)
}

pub fn load_str(text: &str) -> Result<Workspace, DslError> {
    elaborate(&parse(text)?)
}

// ---------------------------------------------------------------------------
// pretty-printing

fn fmt_name(s: &str) -> String {
    let plain = !s.is_empty()
        && s.chars().next().map(|c| c.is_alphabetic() || c == '_').unwrap_or(false)
        && s.chars().all(|c| c.is_alphanumeric() || c == '_');
    if plain {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn fmt_num_list(l: &[usize]) -> String {
    format!("[{}]", l.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", "))
}

fn fmt_num_list_list(l: &[Vec<usize>]) -> String {
    format!("[{}]", l.iter().map(|x| fmt_num_list(x)).collect::<Vec<_>>().join(", "))
}

fn print_category(out: &mut String, name: &str, c: &FiniteCategory) {
    out.push_str(&format!("category {} table {{\n", fmt_name(name)));
    out.push_str(&format!(
        "  objects: {};\n",
        c.object_names.iter().map(|o| fmt_name(o)).collect::<Vec<_>>().join(", ")
    ));
    if c.n_morphisms() > 0 {
        out.push_str(&format!(
            "  morphisms: {};\n",
            c.morphisms
                .iter()
                .map(|m| format!("{}: {} -> {}", fmt_name(&m.name), fmt_name(&c.object_names[m.src]), fmt_name(&c.object_names[m.tgt])))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    if c.n_objects() > 0 {
        out.push_str(&format!(
            "  identities: {};\n",
            c.identity.iter().map(|&i| fmt_name(&c.morphisms[i].name)).collect::<Vec<_>>().join(", ")
        ));
    }
    let mut entries = Vec::new();
    for g in 0..c.n_morphisms() {
        for f in 0..c.n_morphisms() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            if let Some(h) = c.compose(g, f) {
                entries.push(format!(
                    "{}.{} = {}",
                    fmt_name(&c.morphisms[g].name),
                    fmt_name(&c.morphisms[f].name),
                    fmt_name(&c.morphisms[h].name)
                ));
            }
        }
    }
    if !entries.is_empty() {
        out.push_str(&format!("  compose: {};\n", entries.join(", ")));
    }
    out.push_str("}\n");
}

/// Canonical text for a workspace: all categories in table form, every map
/// spelled out. Reparsing the output reproduces the workspace exactly.
pub fn pretty_print(ws: &Workspace) -> String {
    let mut out = String::new();
    out.push_str(&format!("path_bound {};\n", ws.path_bound));
    for (name, c) in &ws.categories {
        print_category(&mut out, name, c);
    }
    for (name, f) in &ws.functors {
        let src_name = ws.categories.iter().find(|(_, c)| *c == f.source).map(|(n, _)| n.as_str()).unwrap_or("?");
        let tgt_name = ws.categories.iter().find(|(_, c)| *c == f.target).map(|(n, _)| n.as_str()).unwrap_or("?");
        out.push_str(&format!("functor {} : {} -> {} {{\n", fmt_name(name), fmt_name(src_name), fmt_name(tgt_name)));
        out.push_str(&format!(
            "  objects: {};\n",
            (0..f.source.n_objects())
                .map(|o| format!("{} -> {}", fmt_name(&f.source.object_names[o]), fmt_name(&f.target.object_names[f.ob(o)])))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        let arrows: Vec<String> = (0..f.source.n_morphisms())
            .filter(|&m| !f.source.is_identity(m))
            .map(|m| format!("{} -> {}", fmt_name(&f.source.morphisms[m].name), fmt_name(&f.target.morphisms[f.mor(m)].name)))
            .collect();
        if !arrows.is_empty() {
            out.push_str(&format!("  arrows: {};\n", arrows.join(", ")));
        }
        out.push_str("}\n");
    }
    for (name, p) in &ws.presheaves {
        let base_name = ws.categories.iter().find(|(_, c)| *c == p.base).map(|(n, _)| n.as_str()).unwrap_or("?");
        out.push_str(&format!("presheaf {} on {} {{\n", fmt_name(name), fmt_name(base_name)));
        out.push_str(&format!(
            "  sets: {};\n",
            (0..p.base.n_objects())
                .map(|o| format!("{} = {}", fmt_name(&p.base.object_names[o]), p.sets[o]))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        for m in 0..p.base.n_morphisms() {
            if !p.base.is_identity(m) {
                out.push_str(&format!(
                    "  action {} = {};\n",
                    fmt_name(&p.base.morphisms[m].name),
                    fmt_num_list(&p.actions[m])
                ));
            }
        }
        out.push_str("}\n");
    }
    for (name, entry) in &ws.classes {
        out.push_str(&format!(
            "class {} {{\n  shapes: {};\n}}\n",
            fmt_name(name),
            entry.shape_names.iter().map(|n| fmt_name(n)).collect::<Vec<_>>().join(", ")
        ));
    }
    for (name, entry) in &ws.recipes {
        out.push_str(&format!(
            "recipe {} on {} over {} {{\n",
            fmt_name(name),
            fmt_name(&entry.base),
            fmt_name(&entry.class)
        ));
        let class = ws.class(&entry.class).expect("recipe class resolved during elaboration");
        for (i, step) in entry.recipe.steps.iter().enumerate() {
            match step {
                RecipeStep::Leaf { object } => {
                    let base = ws.category(&entry.base).expect("recipe base resolved during elaboration");
                    out.push_str(&format!("  step s{i} = leaf {};\n", fmt_name(&base.object_names[*object])));
                }
                RecipeStep::Colim { shape, nodes, edges } => {
                    let shape_cat = &class.class.shapes[*shape];
                    out.push_str(&format!("  step s{i} = colim {} {{\n", fmt_name(&class.shape_names[*shape])));
                    if !nodes.is_empty() {
                        out.push_str(&format!(
                            "    nodes: {};\n",
                            nodes.iter().map(|n| format!("s{n}")).collect::<Vec<_>>().join(", ")
                        ));
                    }
                    for (m, table) in edges.iter().enumerate() {
                        if !shape_cat.is_identity(m) {
                            out.push_str(&format!(
                                "    edge {} = {};\n",
                                fmt_name(&shape_cat.morphisms[m].name),
                                fmt_num_list_list(table)
                            ));
                        }
                    }
                    out.push_str("  }\n");
                }
            }
        }
        out.push_str(&format!("  root s{};\n}}\n", entry.recipe.root));
    }
    for check in &ws.checks {
        let line = match check {
            CheckDecl::Closure { category, class } => {
                format!("check closure {} {};", fmt_name(&category.text), fmt_name(&class.text))
            }
            CheckDecl::Cofinal { functor, level } => format!(
                "check cofinal {} {};",
                fmt_name(&functor.text),
                match level {
                    CofinalityLevel::Connected => "connected",
                    CofinalityLevel::WeaklyContractible => "weak",
                }
            ),
            CheckDecl::Sifted { category } => format!("check sifted {};", fmt_name(&category.text)),
            CheckDecl::Filtered { category } => format!("check filtered {};", fmt_name(&category.text)),
            CheckDecl::Contractible { category } => format!("check contractible {};", fmt_name(&category.text)),
            CheckDecl::Recipe { recipe } => format!("check recipe {};", fmt_name(&recipe.text)),
            CheckDecl::Preservation { functor, shape } => {
                format!("check preservation {} {};", fmt_name(&functor.text), fmt_name(&shape.text))
            }
            CheckDecl::Membership { presheaf, class } => {
                format!("check membership {} {};", fmt_name(&presheaf.text), fmt_name(&class.text))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::closure_search;
    use crate::presheaf::terminal_presheaf;
    use crate::verdict::{Bounds, VerdictStatus};

    const COEQUALIZER_FILE: &str = r#"
# the walking parallel pair, a span, and a two-point discrete shape
category C {
  objects: a, b;
  arrows: f: a -> b, g: a -> b;
}
category Sp {
  objects: l, m, r;
  arrows: s: m -> l, t: m -> r;
}
category D2 {
  objects: p, q;
}
class F {
  shapes: Sp, D2;
}
recipe R on C over F {
  step s0 = leaf a;
  step s1 = leaf b;
  step s2 = colim D2 {
    nodes: s0, s0;
  }
  step s3 = colim Sp {
    nodes: s1, s2, s0;
    edge s = [[0, 1], []];
    edge t = [[0, 0], []];
  }
  root s3;
}
check recipe R;
check closure C F;
"#;

    #[test]
    fn empty_file_parses() {
        let ws = load_str("").unwrap();
        assert!(ws.categories.is_empty());
        assert_eq!(ws.path_bound, DEFAULT_PATH_BOUND);
    }

    #[test]
    fn coequalizer_file_elaborates() {
        let ast = parse(COEQUALIZER_FILE).unwrap();
        let n_cats = ast.decls.iter().filter(|d| matches!(d, Decl::Category(_))).count();
        assert_eq!(n_cats, 3);
        let ws = load_str(COEQUALIZER_FILE).unwrap();
        assert_eq!(ws.categories.len(), 3);
        assert_eq!(ws.classes.len(), 1);
        assert_eq!(ws.recipes.len(), 1);
        assert_eq!(ws.checks.len(), 2);
        let c = ws.category("C").unwrap();
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_morphisms(), 4);
        // the recipe evaluates to the terminal presheaf
        let entry = ws.recipe("R").unwrap();
        let class = ws.class("F").unwrap();
        let value = eval_recipe(c, &class.class, &entry.recipe).unwrap();
        assert!(value.is_terminal());
        // and the closure search finds membership independently
        let v = closure_search(c, &class.class, &terminal_presheaf(c), Bounds::default());
        assert_eq!(v.status, VerdictStatus::Member);
    }

    #[test]
    fn idem_presentation() {
        let ws = load_str(
            "category Idem {\n  objects: x;\n  arrows: e: x -> x;\n  relations: e.e = e;\n}\n",
        )
        .unwrap();
        let c = ws.category("Idem").unwrap();
        assert_eq!(c.n_objects(), 1);
        assert_eq!(c.n_morphisms(), 2);
    }

    #[test]
    fn walking_isomorphism_presentation() {
        let ws = load_str(
            "category Iso {\n  objects: a, b;\n  arrows: u: a -> b, v: b -> a;\n  relations: v.u = id_a, u.v = id_b;\n}\n",
        )
        .unwrap();
        let c = ws.category("Iso").unwrap();
        assert_eq!(c.n_objects(), 2);
        assert_eq!(c.n_morphisms(), 4);
        assert!(c.is_iso(2) && c.is_iso(3));
    }

    #[test]
    fn table_category() {
        let ws = load_str(
            "category Two table {\n  objects: x, y;\n  morphisms: id_x: x -> x, id_y: y -> y, u: x -> y;\n  identities: id_x, id_y;\n}\n",
        )
        .unwrap();
        let c = ws.category("Two").unwrap();
        assert_eq!(c.n_morphisms(), 3);
        assert!(c.is_valid());
    }

    #[test]
    fn functor_with_composite_image() {
        let ws = load_str(
            "category Three {\n  objects: a, b, c;\n  arrows: f: a -> b, g: b -> c;\n}\n\
             category Direct {\n  objects: x, y;\n  arrows: h: x -> y;\n}\n\
             functor collapse : Direct -> Three {\n  objects: x -> a, y -> c;\n  arrows: h -> g.f;\n}\n",
        )
        .unwrap();
        let f = ws.functor("collapse").unwrap();
        assert!(f.is_functorial());
        let three = ws.category("Three").unwrap();
        let gf = three.compose(
            three.morphisms.iter().position(|m| m.name == "g").unwrap(),
            three.morphisms.iter().position(|m| m.name == "f").unwrap(),
        );
        assert_eq!(Some(f.mor(ws.category("Direct").unwrap().morphisms.iter().position(|m| m.name == "h").unwrap())), gf);
    }

    #[test]
    fn presheaf_block() {
        let ws = load_str(
            "category C {\n  objects: a, b;\n  arrows: f: a -> b, g: a -> b;\n}\n\
             presheaf X on C {\n  sets: a = 2, b = 1;\n  action f = [0];\n  action g = [1];\n}\n",
        )
        .unwrap();
        let x = ws.presheaf("X").unwrap();
        assert_eq!(x.sets, vec![2, 1]);
    }

    #[test]
    fn non_natural_presheaf_rejected() {
        // an action whose value escapes the set bound
        let err = load_str(
            "category C {\n  objects: a, b;\n  arrows: f: a -> b;\n}\n\
             presheaf X on C {\n  sets: a = 1, b = 1;\n  action f = [5];\n}\n",
        )
        .unwrap_err();
        assert!(matches!(err, DslError::Elaboration { .. }), "{err}");
    }

    #[test]
    fn undeclared_target_is_unresolved() {
        let err = load_str("category C {\n  objects: a;\n  arrows: f: a -> nowhere;\n}\n").unwrap_err();
        match err {
            DslError::UnresolvedReference { name, span } => {
                assert_eq!(name, "nowhere");
                assert_eq!(span.line, 3);
            }
            other => panic!("expected UnresolvedReference, got {other}"),
        }
    }

    #[test]
    fn duplicate_name_rejected() {
        let err = load_str("category C { objects: a; }\ncategory C { objects: b; }\n").unwrap_err();
        assert!(matches!(err, DslError::DuplicateName { .. }));
    }

    #[test]
    fn recipe_with_undeclared_class_shape() {
        let err = load_str(
            "category C {\n  objects: a;\n}\nclass F {\n  shapes: C;\n}\n\
             recipe R on C over F {\n  step s0 = leaf a;\n  step s1 = colim Missing { nodes: s0; }\n  root s1;\n}\n",
        )
        .unwrap_err();
        assert!(matches!(err, DslError::UnresolvedReference { ref name, .. } if name == "Missing"), "{err}");
    }

    #[test]
    fn syntax_error_has_span() {
        let err = parse("category {").unwrap_err();
        match err {
            DslError::Syntax { span, .. } => assert_eq!(span.line, 1),
            other => panic!("expected Syntax, got {other}"),
        }
    }

    #[test]
    fn infinite_presentation_fails_loudly() {
        // a free loop generates infinitely many morphisms
        let err = load_str("category Loop {\n  objects: x;\n  arrows: e: x -> x;\n}\n").unwrap_err();
        assert!(matches!(err, DslError::Elaboration { .. }), "{err}");
        assert!(err.to_string().contains("path bound"), "{err}");
    }

    #[test]
    fn pretty_print_round_trip() {
        let ws1 = load_str(COEQUALIZER_FILE).unwrap();
        let printed = pretty_print(&ws1);
        let ws2 = load_str(&printed).unwrap();
        assert_eq!(pretty_print(&ws2), printed);
        // and the elaborated values agree, not just the text
        assert_eq!(ws1.categories.len(), ws2.categories.len());
        for ((n1, c1), (n2, c2)) in ws1.categories.iter().zip(&ws2.categories) {
            assert_eq!(n1, n2);
            assert_eq!(c1, c2);
        }
        assert_eq!(ws1.recipe("R").unwrap().recipe, ws2.recipe("R").unwrap().recipe);
        assert_eq!(ws1.checks.len(), ws2.checks.len());
    }

    #[test]
    fn quoted_names_round_trip() {
        let ws = load_str("category \"my cat\" table {\n  objects: \"ob.1\";\n  morphisms: \"id 1\": \"ob.1\" -> \"ob.1\";\n  identities: \"id 1\";\n}\n").unwrap();
        let printed = pretty_print(&ws);
        let ws2 = load_str(&printed).unwrap();
        assert_eq!(ws.categories[0].1, ws2.categories[0].1);
    }

    #[test]
    fn elaboration_is_deterministic() {
        let a = pretty_print(&load_str(COEQUALIZER_FILE).unwrap());
        let b = pretty_print(&load_str(COEQUALIZER_FILE).unwrap());
        assert_eq!(a, b);
    }
}
