//! The group-expression language.
//!
//! ```text
//! expr   := term (('*' | ':') term ['[' action ']'])*   (left associative)
//! term   := atom | '(' expr ')'
//! atom   := ('C'|'D'|'S'|'A') integer | 'E(' p ',' k ')'
//!         | 'Heis(' p ')' | 'PSL(2,' q ')'
//! action := 'swap' | 'inv' | 'explicit' identifier
//! ```
//!
//! `:` requires an action annotation, `*` forbids one. `swap` is only valid
//! on `(X * X) : C2` with identical factors. Explicit actions are looked up
//! in the catalog's action tables, which map each acting-group generator to
//! images of the normal subgroup's generators written as words `n<i>[^e]`
//! joined by `*`.

use std::collections::BTreeMap;
use std::fmt;

use crate::config::EngineConfig;
use crate::construct;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Named action tables: action id -> per-acting-generator word lists.
pub type ActionTable = BTreeMap<String, Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Swap,
    Inv,
    Explicit(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u32),
    Dihedral(u32),
    Sym(u32),
    Alt(u32),
    ElemAbelian { p: u32, k: u32 },
    Heis(u32),
    Psl2(u32),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect {
        normal: Box<GroupExpr>,
        acting: Box<GroupExpr>,
        action: Action,
    },
}

impl GroupExpr {
    fn is_binary(&self) -> bool {
        matches!(
            self,
            GroupExpr::Product(..) | GroupExpr::Semidirect { .. }
        )
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Swap => write!(f, "swap"),
            Action::Inv => write!(f, "inv"),
            Action::Explicit(name) => write!(f, "explicit {name}"),
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Dihedral(n) => write!(f, "D{n}"),
            GroupExpr::Sym(n) => write!(f, "S{n}"),
            GroupExpr::Alt(n) => write!(f, "A{n}"),
            GroupExpr::ElemAbelian { p, k } => write!(f, "E({p},{k})"),
            GroupExpr::Heis(p) => write!(f, "Heis({p})"),
            GroupExpr::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupExpr::Product(l, r) => {
                write!(f, "{l} * ")?;
                if r.is_binary() {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            GroupExpr::Semidirect {
                normal,
                acting,
                action,
            } => {
                write!(f, "{normal} : ")?;
                if acting.is_binary() {
                    write!(f, "({acting})")?;
                } else {
                    write!(f, "{acting}")?;
                }
                write!(f, " [{action}]")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, expected: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == expected => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(
                self.pos,
                format!("expected '{}'", expected as char),
            ),
        }
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an integer");
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                message: "integer out of range".into(),
            })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric()
                || self.bytes[self.pos] == b'_'
                || self.bytes[self.pos] == b'-')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an identifier");
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let start = self.pos;
        let Some(b) = self.peek() else {
            return self.err(start, "expected a group atom");
        };
        match b {
            b'C' | b'D' | b'S' | b'A' => {
                // 'A' might start an atom like A5; a lone letter is an error
                self.pos += 1;
                let n = self.integer()?;
                if n == 0 {
                    return self.err(start, "group parameter must be >= 1");
                }
                Ok(match b {
                    b'C' => GroupExpr::Cyclic(n),
                    b'D' => GroupExpr::Dihedral(n),
                    b'S' => GroupExpr::Sym(n),
                    _ => GroupExpr::Alt(n),
                })
            }
            b'E' => {
                self.pos += 1;
                self.eat(b'(')?;
                let p_at = self.pos;
                let p = self.integer()?;
                self.eat(b',')?;
                let k_at = self.pos;
                let k = self.integer()?;
                self.eat(b')')?;
                if !construct::is_prime(p) {
                    return self.err(p_at, format!("E({p},{k}): p must be prime"));
                }
                if k == 0 {
                    return self.err(k_at, "E(p,k): k must be >= 1");
                }
                Ok(GroupExpr::ElemAbelian { p, k })
            }
            b'H' => {
                let rest = &self.src[self.pos..];
                if !rest.starts_with("Heis") {
                    return self.err(self.pos, "unknown atom; expected Heis(p)");
                }
                self.pos += 4;
                self.eat(b'(')?;
                let p_at = self.pos;
                let p = self.integer()?;
                self.eat(b')')?;
                if !construct::is_prime(p) {
                    return self.err(p_at, format!("Heis({p}): p must be prime"));
                }
                Ok(GroupExpr::Heis(p))
            }
            b'P' => {
                let rest = &self.src[self.pos..];
                if !rest.starts_with("PSL") {
                    return self.err(self.pos, "unknown atom; expected PSL(2,q)");
                }
                self.pos += 3;
                self.eat(b'(')?;
                let two_at = self.pos;
                if self.integer()? != 2 {
                    return self.err(two_at, "only PSL(2,q) is supported");
                }
                self.eat(b',')?;
                let q_at = self.pos;
                let q = self.integer()?;
                self.eat(b')')?;
                if q != 5 && q != 7 {
                    return self.err(q_at, "PSL(2,q): q must be 5 or 7");
                }
                Ok(GroupExpr::Psl2(q))
            }
            _ => self.err(start, "expected a group atom"),
        }
    }

    fn term(&mut self) -> Result<GroupExpr> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.expr()?;
            self.eat(b')')?;
            Ok(inner)
        } else {
            self.atom()
        }
    }

    fn action(&mut self) -> Result<Action> {
        let at = self.pos;
        let word = self.ident()?;
        match word.as_str() {
            "swap" => Ok(Action::Swap),
            "inv" => Ok(Action::Inv),
            "explicit" => Ok(Action::Explicit(self.ident()?)),
            other => self.err(at, format!("unknown action '{other}'")),
        }
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Some(op @ (b'*' | b':')) => {
                    let op_at = self.pos;
                    self.pos += 1;
                    let rhs = self.term()?;
                    let action = if self.peek() == Some(b'[') {
                        self.pos += 1;
                        let a = self.action()?;
                        self.eat(b']')?;
                        Some(a)
                    } else {
                        None
                    };
                    node = if op == b'*' {
                        if action.is_some() {
                            return self.err(
                                op_at,
                                "invalid action placement: '*' does not take an action",
                            );
                        }
                        GroupExpr::Product(Box::new(node), Box::new(rhs))
                    } else {
                        let Some(action) = action else {
                            return self.err(
                                op_at,
                                "':' requires an action annotation in brackets",
                            );
                        };
                        let node = GroupExpr::Semidirect {
                            normal: Box::new(node),
                            acting: Box::new(rhs),
                            action,
                        };
                        validate_action_placement(&node).map_err(|message| Error::Parse {
                            offset: op_at,
                            message,
                        })?;
                        node
                    };
                }
                _ => return Ok(node),
            }
        }
    }
}

/// `swap` demands the shape `(X * X) : C2` with identical factors.
fn validate_action_placement(expr: &GroupExpr) -> std::result::Result<(), String> {
    let GroupExpr::Semidirect {
        normal,
        acting,
        action,
    } = expr
    else {
        return Ok(());
    };
    if *action != Action::Swap {
        return Ok(());
    }
    let GroupExpr::Product(left, right) = normal.as_ref() else {
        return Err("invalid action placement: swap needs a product of two identical factors"
            .into());
    };
    if left != right {
        return Err("invalid action placement: swap needs identical factors".into());
    }
    if **acting != GroupExpr::Cyclic(2) {
        return Err("invalid action placement: swap is an action of C2".into());
    }
    Ok(())
}

/// Parses one expression, requiring the whole input to be consumed.
pub fn parse(text: &str) -> Result<GroupExpr> {
    let mut parser = Parser::new(text);
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(Error::Parse {
            offset: parser.pos,
            message: "trailing input after expression".into(),
        });
    }
    Ok(expr)
}

/// Parses an expression file: UTF-8, one expression per line, `#` starts a
/// comment. Returns `(line_number, expr)` pairs, 1-based.
pub fn parse_lines(text: &str) -> Result<Vec<(usize, GroupExpr)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(at) => &raw[..at],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let expr = parse(line).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset,
                message: format!("line {}: {message}", i + 1),
            },
            other => other,
        })?;
        out.push((i + 1, expr));
    }
    Ok(out)
}

/// Evaluates a word like `n0*n1^-1` over the generator list of the normal
/// factor.
pub fn eval_word(word: &str, gens: &[Permutation]) -> Result<Permutation> {
    let degree = gens
        .first()
        .map(|g| g.degree())
        .ok_or(Error::EmptyGenerators)?;
    let mut out = Permutation::identity(degree);
    for (fi, factor) in word.split('*').enumerate() {
        let factor = factor.trim();
        let rest = factor.strip_prefix('n').ok_or_else(|| Error::Parse {
            offset: fi,
            message: format!("bad word factor '{factor}': expected n<i>[^e]"),
        })?;
        let (idx_text, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e.trim().parse::<i64>().map_err(|_| Error::Parse {
                offset: fi,
                message: format!("bad exponent in '{factor}'"),
            })?),
            None => (rest, 1),
        };
        let idx: usize = idx_text.trim().parse().map_err(|_| Error::Parse {
            offset: fi,
            message: format!("bad generator index in '{factor}'"),
        })?;
        let gen = gens.get(idx).ok_or_else(|| Error::Parse {
            offset: fi,
            message: format!("generator n{idx} out of range"),
        })?;
        let base = if exp < 0 { gen.inverse() } else { *gen };
        for _ in 0..exp.unsigned_abs() {
            out = out.mul(&base);
        }
    }
    Ok(out)
}

/// Builds the permutation group of an expression. Explicit actions resolve
/// through `actions`; the assembled degree must respect `cfg.degree_cap`.
pub fn build(expr: &GroupExpr, actions: &ActionTable, cfg: &EngineConfig) -> Result<PermGroup> {
    let group = match expr {
        GroupExpr::Cyclic(n) => construct::cyclic(*n)?,
        GroupExpr::Dihedral(n) => construct::dihedral(*n)?,
        GroupExpr::Sym(n) => construct::symmetric(*n)?,
        GroupExpr::Alt(n) => construct::alternating(*n)?,
        GroupExpr::ElemAbelian { p, k } => construct::elem_abelian(*p, *k)?,
        GroupExpr::Heis(p) => construct::heisenberg(*p)?,
        GroupExpr::Psl2(q) => construct::psl2(*q)?,
        GroupExpr::Product(l, r) => {
            let left = build(l, actions, cfg)?;
            let right = build(r, actions, cfg)?;
            construct::direct_product(&left, &right)?
        }
        GroupExpr::Semidirect {
            normal,
            acting,
            action,
        } => {
            validate_action_placement(expr).map_err(|message| Error::Parse {
                offset: 0,
                message,
            })?;
            match action {
                Action::Swap => {
                    let GroupExpr::Product(left, _) = normal.as_ref() else {
                        unreachable!("validated above");
                    };
                    let factor = build(left, actions, cfg)?;
                    construct::swap_extension(&factor)?
                }
                Action::Inv => {
                    let n = build(normal, actions, cfg)?;
                    if !n.is_abelian() {
                        return Err(Error::NotAnAutomorphism);
                    }
                    let h = build(acting, actions, cfg)?;
                    let inverted: Vec<Permutation> =
                        n.generators().iter().map(|g| g.inverse()).collect();
                    let table = vec![inverted; h.generators().len()];
                    construct::semidirect_product(&n, &h, &table)?
                }
                Action::Explicit(name) => {
                    let words = actions.get(name).ok_or_else(|| {
                        Error::UnknownCase(format!(
                            "explicit action '{name}' is not defined in the catalog"
                        ))
                    })?;
                    let n = build(normal, actions, cfg)?;
                    let h = build(acting, actions, cfg)?;
                    if words.len() != h.generators().len() {
                        return Err(Error::NotAHomomorphism);
                    }
                    let mut table = Vec::with_capacity(words.len());
                    for images in words {
                        let row: Vec<Permutation> = images
                            .iter()
                            .map(|w| eval_word(w, n.generators()))
                            .collect::<Result<_>>()?;
                        table.push(row);
                    }
                    construct::semidirect_product(&n, &h, &table)?
                }
            }
        }
    };
    if group.degree() > cfg.degree_cap {
        return Err(Error::DegreeCap {
            needed: group.degree(),
            cap: cfg.degree_cap,
        });
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms() {
        assert_eq!(parse("S5").unwrap(), GroupExpr::Sym(5));
        assert_eq!(parse("C12").unwrap(), GroupExpr::Cyclic(12));
        assert_eq!(
            parse("E(3,3)").unwrap(),
            GroupExpr::ElemAbelian { p: 3, k: 3 }
        );
        assert_eq!(parse("Heis(3)").unwrap(), GroupExpr::Heis(3));
        assert_eq!(parse("PSL(2,7)").unwrap(), GroupExpr::Psl2(7));
    }

    #[test]
    fn parses_swap_extension() {
        let expr = parse("(A5 * A5) : C2 [swap]").unwrap();
        assert_eq!(
            expr,
            GroupExpr::Semidirect {
                normal: Box::new(GroupExpr::Product(
                    Box::new(GroupExpr::Alt(5)),
                    Box::new(GroupExpr::Alt(5)),
                )),
                acting: Box::new(GroupExpr::Cyclic(2)),
                action: Action::Swap,
            }
        );
    }

    #[test]
    fn parses_explicit_action() {
        let expr = parse("E(3,3) : S4 [explicit fermat]").unwrap();
        assert_eq!(
            expr,
            GroupExpr::Semidirect {
                normal: Box::new(GroupExpr::ElemAbelian { p: 3, k: 3 }),
                acting: Box::new(GroupExpr::Sym(4)),
                action: Action::Explicit("fermat".into()),
            }
        );
    }

    #[test]
    fn reports_errors_with_byte_offsets() {
        let err = parse("S5 $ C2").unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 3),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("E(4,2)").is_err()); // 4 is not prime
        assert!(parse("C0").is_err());
        assert!(parse("PSL(3,5)").is_err());
    }

    #[test]
    fn action_placement_is_validated() {
        // ':' without action
        assert!(parse("C5 : C4").is_err());
        // '*' with action
        assert!(parse("C5 * C4 [inv]").is_err());
        // swap on non-identical factors
        assert!(parse("(A5 * A4) : C2 [swap]").is_err());
        // swap with the wrong acting group
        assert!(parse("(A5 * A5) : C4 [swap]").is_err());
    }

    #[test]
    fn print_parse_roundtrip_on_nested_expressions() {
        let texts = [
            "S5",
            "A5 * A5",
            "(A5 * A5) : C2 [swap]",
            "C3 * (C4 * C5)",
            "E(3,3) : S4 [explicit fermat]",
            "C7 : C2 [inv]",
            "C2 * C3 * C4",
        ];
        for text in texts {
            let ast = parse(text).unwrap();
            let printed = ast.to_string();
            assert_eq!(parse(&printed).unwrap(), ast, "roundtrip of {text}");
        }
    }

    #[test]
    fn builds_basic_expressions() {
        let cfg = EngineConfig::default();
        let empty = ActionTable::new();
        assert_eq!(build(&parse("D6").unwrap(), &empty, &cfg).unwrap().order(), 12);
        assert_eq!(
            build(&parse("Heis(3)").unwrap(), &empty, &cfg).unwrap().order(),
            27
        );
        let swap = build(&parse("(A5 * A5) : C2 [swap]").unwrap(), &empty, &cfg).unwrap();
        assert_eq!(swap.order(), 7200);
        assert_eq!(swap.degree(), 10);
        let inv = build(&parse("C7 : C2 [inv]").unwrap(), &empty, &cfg).unwrap();
        assert_eq!(inv.order(), 14);
        assert!(!inv.is_abelian());
    }

    #[test]
    fn product_order_is_the_product_of_factor_orders() {
        let cfg = EngineConfig::default();
        let empty = ActionTable::new();
        for text in ["C3 * C4", "A5 * C2", "S4 * S3"] {
            let GroupExpr::Product(l, r) = parse(text).unwrap() else {
                panic!("expected product");
            };
            let full = build(&parse(text).unwrap(), &empty, &cfg).unwrap();
            let left = build(&l, &empty, &cfg).unwrap();
            let right = build(&r, &empty, &cfg).unwrap();
            assert_eq!(full.order(), left.order() * right.order());
        }
    }

    #[test]
    fn inv_needs_an_abelian_normal_factor() {
        let cfg = EngineConfig::default();
        let empty = ActionTable::new();
        assert!(matches!(
            build(&parse("S4 : C2 [inv]").unwrap(), &empty, &cfg),
            Err(Error::NotAnAutomorphism)
        ));
    }

    #[test]
    fn unknown_explicit_action_is_reported() {
        let cfg = EngineConfig::default();
        let empty = ActionTable::new();
        let err = build(
            &parse("E(3,3) : S4 [explicit missing]").unwrap(),
            &empty,
            &cfg,
        )
        .unwrap_err();
        assert!(err.to_string().contains("missing"));
    }

    #[test]
    fn parses_expression_files_with_comments() {
        let text = "# witness groups\nS5\n\n(A5 * A5) : C2 [swap]  # the order-7200 group\nC12\n";
        let exprs = parse_lines(text).unwrap();
        assert_eq!(exprs.len(), 3);
        assert_eq!(exprs[0], (2, GroupExpr::Sym(5)));
        assert_eq!(exprs[2].0, 5);
        let err = parse_lines("S5\nC0\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn word_evaluation() {
        let gens = construct::elem_abelian(3, 2).unwrap().generators().to_vec();
        let w = eval_word("n0*n1^-1", &gens).unwrap();
        assert_eq!(w, gens[0].mul(&gens[1].inverse()));
        assert!(eval_word("n5", &gens).is_err());
        assert!(eval_word("x0", &gens).is_err());
    }
}
