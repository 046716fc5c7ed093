//! Session scripts.
//!
//! ```text
//! ring Q[x,y,z]              # or F2[...], Fp 7[...]
//! poly f = x^2 + y^3
//! ideal I = x^2 - y^3, x*y - z^3
//! transform I --kind strict --center x,y --chart y
//! ```
//!
//! Exactly one command line. A `game` command is followed by the vertex
//! lines of the starting state. `#` starts a comment.

use blowup_core::field::{Field, FieldSpec, PrimeField, Rationals};
use blowup_core::ring::parse_poly_list;
use blowup_core::{Ideal, Ring, RingContext};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Poly,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub name: String,
    pub expr: String,
    pub line: usize,
    /// One-based column of the first expression byte.
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionScript {
    pub ring: Option<RingDecl>,
    pub decls: Vec<Decl>,
    pub command: String,
    pub command_line: usize,
    /// Lines after a `game` command.
    pub state: Option<String>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Script { line, column, message: message.into() }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_field(text: &str, line: usize, column: usize) -> Result<FieldSpec, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t.strip_prefix("Fp").or_else(|| t.strip_prefix('F'));
    let p: u32 = digits
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| err(line, column, format!("unknown field '{}'; use Q, F<p> or Fp <p>", text.trim())))?;
    PrimeField::new(p).map_err(|e| err(line, column, e.to_string()))?;
    Ok(FieldSpec::Prime { p })
}

fn parse_ring(rest: &str, line: usize, offset: usize) -> Result<RingDecl, CliError> {
    let open = rest.find('[').ok_or_else(|| err(line, offset + 1, "expected '[' after the field"))?;
    let close = rest.rfind(']').ok_or_else(|| err(line, offset + rest.len() + 1, "expected ']'"))?;
    if close < open || !rest[close + 1..].trim().is_empty() {
        return Err(err(line, offset + close + 1, "malformed variable list"));
    }
    let field = parse_field(&rest[..open], line, offset + 1)?;
    let mut vars = Vec::new();
    let mut col = offset + open + 2;
    for v in rest[open + 1..close].split(',') {
        let name = v.trim();
        if !is_identifier(name) {
            return Err(err(line, col, format!("'{name}' is not a variable name")));
        }
        if vars.iter().any(|w| w == name) {
            return Err(err(line, col, format!("variable '{name}' declared twice")));
        }
        vars.push(name.to_string());
        col += v.len() + 1;
    }
    Ok(RingDecl { field, vars, line })
}

fn parse_decl(kind: DeclKind, rest: &str, line: usize, offset: usize) -> Result<Decl, CliError> {
    let eq = rest.find('=').ok_or_else(|| err(line, offset + 1, "expected 'NAME = ...'"))?;
    let name = rest[..eq].trim();
    if !is_identifier(name) {
        return Err(err(line, offset + 1, format!("'{name}' is not a valid name")));
    }
    let expr = &rest[eq + 1..];
    let lead = expr.len() - expr.trim_start().len();
    let expr_trim = expr.trim();
    if expr_trim.is_empty() {
        return Err(err(line, offset + eq + 2, "empty expression"));
    }
    Ok(Decl { kind, name: name.to_string(), expr: expr_trim.to_string(), line, column: offset + eq + 2 + lead })
}

/// Splits a script into its parts and checks every declaration against the
/// declared ring.
pub fn parse_script(text: &str) -> Result<SessionScript, CliError> {
    let mut ring = None;
    let mut decls: Vec<Decl> = Vec::new();
    let mut command: Option<(String, usize)> = None;
    let mut state: Option<Vec<String>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if let Some(lines) = state.as_mut() {
            if !body.trim().is_empty() {
                lines.push(body.trim().to_string());
            }
            continue;
        }
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        let (word, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_offset = offset + word.len() + 1;
        match word {
            "ring" => {
                if ring.is_some() {
                    return Err(err(line, offset + 1, "only one ring per script"));
                }
                if command.is_some() || !decls.is_empty() {
                    return Err(err(line, offset + 1, "the ring must be declared first"));
                }
                ring = Some(parse_ring(rest, line, rest_offset)?);
            }
            "poly" | "ideal" => {
                if ring.is_none() {
                    return Err(err(line, offset + 1, "declare a ring before polynomials"));
                }
                if command.is_some() {
                    return Err(err(line, offset + 1, "declarations must precede the command"));
                }
                let kind = if word == "poly" { DeclKind::Poly } else { DeclKind::Ideal };
                let decl = parse_decl(kind, rest, line, rest_offset)?;
                if decls.iter().any(|d| d.name == decl.name) {
                    return Err(err(line, offset + 1, format!("'{}' declared twice", decl.name)));
                }
                decls.push(decl);
            }
            _ => {
                if command.is_some() {
                    return Err(err(line, offset + 1, "a script holds exactly one command"));
                }
                if word == "game" {
                    state = Some(Vec::new());
                }
                command = Some((trimmed.to_string(), line));
            }
        }
    }
    let (command, command_line) = command.ok_or_else(|| err(text.lines().count().max(1), 1, "missing command"))?;
    let script = SessionScript { ring, decls, command, command_line, state: state.map(|s| s.join("\n")) };
    if let Some(decl) = &script.ring {
        match decl.field {
            FieldSpec::Rationals => {
                compile(&script, Rationals)?;
            }
            FieldSpec::Prime { p } => {
                compile(&script, PrimeField::new(p)?)?;
            }
        }
    }
    Ok(script)
}

/// A declared object; polynomials are principal ideals.
#[derive(Clone, Debug)]
pub struct Named<F: Field> {
    pub name: String,
    pub kind: DeclKind,
    pub ideal: Ideal<F>,
}

pub struct Compiled<F: Field> {
    pub ring: Ring<F>,
    pub objects: Vec<Named<F>>,
}

impl<F: Field> Compiled<F> {
    pub fn get(&self, name: &str) -> Result<&Named<F>, CliError> {
        self.objects.iter().find(|o| o.name == name).ok_or_else(|| CliError::Usage(format!("'{name}' is not declared")))
    }

    /// Named object, or the last declaration when `name` is absent.
    pub fn target(&self, name: Option<&str>) -> Result<&Named<F>, CliError> {
        match name {
            Some(n) => self.get(n),
            None => self.objects.last().ok_or_else(|| CliError::Usage("no polynomial or ideal declared".into())),
        }
    }
}

pub fn compile<F: Field>(script: &SessionScript, field: F) -> Result<Compiled<F>, CliError> {
    let decl = script.ring.as_ref().ok_or_else(|| CliError::Usage("the command needs a ring".into()))?;
    let ring = RingContext::new(field, &decl.vars)?;
    let mut objects = Vec::new();
    for d in &script.decls {
        let gens = parse_poly_list(&ring, &d.expr).map_err(|e| match e {
            blowup_core::Error::Parse { offset, message } => err(d.line, d.column + offset, message),
            other => CliError::Core(other),
        })?;
        if d.kind == DeclKind::Poly && gens.len() != 1 {
            return Err(err(d.line, d.column, "a poly declaration takes exactly one expression"));
        }
        objects.push(Named { name: d.name.clone(), kind: d.kind, ideal: Ideal::new(&ring, gens)? });
    }
    Ok(Compiled { ring, objects })
}
