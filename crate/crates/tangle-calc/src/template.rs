//! Parameterised tangle trees written as s-expressions.
//!
//! ```text
//! (hsum (slot) (mirror (cf (/ (- 0 q) p) 3 n)) (twist (* 2 n)))
//! ```
//!
//! Tangle forms are `(slot)`, `(twist e)`, `(leaf e)`, `(hsum t ...)`,
//! `(vsum t ...)`, `(cf e ...)` for the staircase of a continued fraction,
//! and `(mirror t)`. Arithmetic forms are `(+ e ...)`, `(* e ...)`,
//! `(- e e)`, `(/ e e)` and `(neg e)` over integers, fractions such as `3/2`,
//! and named integer parameters. Division by zero gives `1/0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use exact_arith::Slope;
use num_bigint::BigInt;

use crate::tangle::TangleExpr;
use crate::{Result, TangleError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Num(Slope),
    Var(String),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Template {
    Slot,
    Twist(Expr),
    Leaf(Expr),
    HSum(Vec<Template>),
    VSum(Vec<Template>),
    Cf(Vec<Expr>),
    Mirror(Box<Template>),
}

pub type Bindings = BTreeMap<String, BigInt>;

impl Expr {
    pub fn eval(&self, env: &Bindings) -> Result<Slope> {
        let undefined = |what: &str| TangleError::Arithmetic(format!("{what} in {self}"));
        match self {
            Expr::Num(s) => Ok(s.clone()),
            Expr::Var(v) => {
                env.get(v).map(|n| Slope::integer(n.clone())).ok_or_else(|| TangleError::Unbound(v.clone()))
            }
            Expr::Add(xs) => xs
                .iter()
                .try_fold(Slope::zero(), |acc, x| acc.checked_add(&x.eval(env)?).ok_or_else(|| undefined("oo + oo"))),
            Expr::Mul(xs) => xs.iter().try_fold(Slope::integer(1), |acc, x| {
                acc.checked_mul(&x.eval(env)?).ok_or_else(|| undefined("0 * oo"))
            }),
            Expr::Sub(a, b) => a.eval(env)?.checked_sub(&b.eval(env)?).ok_or_else(|| undefined("oo - oo")),
            Expr::Div(a, b) => a.eval(env)?.checked_div(&b.eval(env)?).ok_or_else(|| undefined("0/0 or oo/oo")),
            Expr::Neg(a) => Ok(a.eval(env)?.mirror()),
        }
    }

    /// Replaces named parameters by expressions.
    pub fn substitute(&self, defs: &BTreeMap<String, Expr>) -> Expr {
        let sub = |e: &Expr| e.substitute(defs);
        match self {
            Expr::Num(_) => self.clone(),
            Expr::Var(v) => defs.get(v).cloned().unwrap_or_else(|| self.clone()),
            Expr::Add(xs) => Expr::Add(xs.iter().map(sub).collect()),
            Expr::Mul(xs) => Expr::Mul(xs.iter().map(sub).collect()),
            Expr::Sub(a, b) => Expr::Sub(Box::new(sub(a)), Box::new(sub(b))),
            Expr::Div(a, b) => Expr::Div(Box::new(sub(a)), Box::new(sub(b))),
            Expr::Neg(a) => Expr::Neg(Box::new(sub(a))),
        }
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let sexp = read(&tokens, &mut pos)?;
        if let Some(t) = tokens.get(pos) {
            return Err(TangleError::Parse { offset: t.offset, msg: "trailing input".into() });
        }
        expr_from(&sexp)
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            Expr::Sub(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) => a.collect_vars(out),
        }
    }
}

impl Template {
    pub fn parse(text: &str) -> Result<Template> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let sexp = read(&tokens, &mut pos)?;
        if let Some(t) = tokens.get(pos) {
            return Err(TangleError::Parse { offset: t.offset, msg: "trailing input".into() });
        }
        template_from(&sexp)
    }

    /// Parameter names the template mentions.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_exprs(&mut |e| e.collect_vars(&mut out));
        out
    }

    fn walk_exprs(&self, f: &mut dyn FnMut(&Expr)) {
        match self {
            Template::Slot => {}
            Template::Twist(e) | Template::Leaf(e) => f(e),
            Template::Cf(es) => es.iter().for_each(f),
            Template::HSum(ts) | Template::VSum(ts) => ts.iter().for_each(|t| t.walk_exprs(f)),
            Template::Mirror(t) => t.walk_exprs(f),
        }
    }

    /// Replaces named parameters by expressions throughout.
    pub fn substitute(&self, defs: &BTreeMap<String, Expr>) -> Template {
        let sub = |e: &Expr| e.substitute(defs);
        match self {
            Template::Slot => Template::Slot,
            Template::Twist(e) => Template::Twist(sub(e)),
            Template::Leaf(e) => Template::Leaf(sub(e)),
            Template::Cf(es) => Template::Cf(es.iter().map(sub).collect()),
            Template::HSum(ts) => Template::HSum(ts.iter().map(|t| t.substitute(defs)).collect()),
            Template::VSum(ts) => Template::VSum(ts.iter().map(|t| t.substitute(defs)).collect()),
            Template::Mirror(t) => Template::Mirror(Box::new(t.substitute(defs))),
        }
    }

    pub fn instantiate(&self, env: &Bindings) -> Result<TangleExpr> {
        Ok(match self {
            Template::Slot => TangleExpr::Slot,
            Template::Twist(e) => {
                let v = e.eval(env)?;
                let n = v.as_integer().ok_or_else(|| TangleError::NotInteger(v.to_string()))?;
                TangleExpr::IntegerTwistBox(n.clone())
            }
            Template::Leaf(e) => TangleExpr::leaf(e.eval(env)?),
            Template::HSum(ts) => {
                TangleExpr::HorizontalSum(ts.iter().map(|t| t.instantiate(env)).collect::<Result<_>>()?)
            }
            Template::VSum(ts) => {
                TangleExpr::VerticalStack(ts.iter().map(|t| t.instantiate(env)).collect::<Result<_>>()?)
            }
            Template::Cf(es) => {
                let terms: Vec<Slope> = es.iter().map(|e| e.eval(env)).collect::<Result<_>>()?;
                TangleExpr::from_cf(&terms)
            }
            Template::Mirror(t) => t.instantiate(env)?.mirror(),
        })
    }
}

struct Token {
    offset: usize,
    text: String,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur: Option<(usize, String)> = None;
    let flush = |cur: &mut Option<(usize, String)>, out: &mut Vec<Token>| {
        if let Some((offset, text)) = cur.take() {
            out.push(Token { offset, text });
        }
    };
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | ')' => {
                flush(&mut cur, &mut out);
                out.push(Token { offset: i, text: ch.to_string() });
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.get_or_insert_with(|| (i, String::new())).1.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

enum Sexp {
    Atom(usize, String),
    List(usize, Vec<Sexp>),
}

impl Sexp {
    fn offset(&self) -> usize {
        match self {
            Sexp::Atom(o, _) | Sexp::List(o, _) => *o,
        }
    }
}

fn read(tokens: &[Token], pos: &mut usize) -> Result<Sexp> {
    let t = tokens.get(*pos).ok_or(TangleError::Parse { offset: usize::MAX, msg: "unexpected end of input".into() })?;
    *pos += 1;
    match t.text.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(TangleError::Parse { offset: t.offset, msg: "unclosed `(`".into() }),
                    Some(n) if n.text == ")" => {
                        *pos += 1;
                        return Ok(Sexp::List(t.offset, items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(TangleError::Parse { offset: t.offset, msg: "unexpected `)`".into() }),
        atom => Ok(Sexp::Atom(t.offset, atom.to_string())),
    }
}

fn perr(offset: usize, msg: impl Into<String>) -> TangleError {
    TangleError::Parse { offset, msg: msg.into() }
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn expr_from(s: &Sexp) -> Result<Expr> {
    match s {
        Sexp::Atom(o, a) => {
            if let Ok(v) = a.parse::<Slope>() {
                Ok(Expr::Num(v))
            } else if is_symbol(a) {
                Ok(Expr::Var(a.clone()))
            } else {
                Err(perr(*o, format!("not a number or parameter: {a:?}")))
            }
        }
        Sexp::List(o, items) => {
            let (head, args) = match items.split_first() {
                Some((Sexp::Atom(_, h), rest)) => (h.as_str(), rest),
                _ => return Err(perr(*o, "expected an operator")),
            };
            let args: Vec<Expr> = args.iter().map(expr_from).collect::<Result<_>>()?;
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(perr(*o, format!("`{head}` takes {n} argument(s), got {}", args.len())))
                }
            };
            match head {
                "+" => Ok(Expr::Add(args)),
                "*" => Ok(Expr::Mul(args)),
                "-" => {
                    arity(2)?;
                    let mut it = args.into_iter();
                    Ok(Expr::Sub(Box::new(it.next().unwrap()), Box::new(it.next().unwrap())))
                }
                "/" => {
                    arity(2)?;
                    let mut it = args.into_iter();
                    Ok(Expr::Div(Box::new(it.next().unwrap()), Box::new(it.next().unwrap())))
                }
                "neg" => {
                    arity(1)?;
                    Ok(Expr::Neg(Box::new(args.into_iter().next().unwrap())))
                }
                other => Err(perr(*o, format!("unknown operator {other:?}"))),
            }
        }
    }
}

fn template_from(s: &Sexp) -> Result<Template> {
    let Sexp::List(o, items) = s else {
        return Err(perr(s.offset(), "expected a tangle form"));
    };
    let (head, args) = match items.split_first() {
        Some((Sexp::Atom(_, h), rest)) => (h.as_str(), rest),
        _ => return Err(perr(*o, "expected a tangle form name")),
    };
    let one = || match args {
        [x] => Ok(x),
        _ => Err(perr(*o, format!("`{head}` takes one argument, got {}", args.len()))),
    };
    let nonempty = || {
        if args.is_empty() {
            Err(perr(*o, format!("`{head}` needs at least one argument")))
        } else {
            Ok(())
        }
    };
    match head {
        "slot" if args.is_empty() => Ok(Template::Slot),
        "slot" => Err(perr(*o, "`slot` takes no arguments")),
        "twist" => Ok(Template::Twist(expr_from(one()?)?)),
        "leaf" => Ok(Template::Leaf(expr_from(one()?)?)),
        "mirror" => Ok(Template::Mirror(Box::new(template_from(one()?)?))),
        "hsum" => {
            nonempty()?;
            Ok(Template::HSum(args.iter().map(template_from).collect::<Result<_>>()?))
        }
        "vsum" => {
            nonempty()?;
            Ok(Template::VSum(args.iter().map(template_from).collect::<Result<_>>()?))
        }
        "cf" => Ok(Template::Cf(args.iter().map(expr_from).collect::<Result<_>>()?)),
        other => Err(perr(*o, format!("unknown tangle form {other:?}"))),
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, head: &str, items: &[T]) -> fmt::Result {
    write!(f, "({head}")?;
    for x in items {
        write!(f, " {x}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(s) if s.is_integral() => write!(f, "{}", s.num()),
            Expr::Num(s) => write!(f, "{s}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Add(xs) => write_list(f, "+", xs),
            Expr::Mul(xs) => write_list(f, "*", xs),
            Expr::Sub(a, b) => write!(f, "(- {a} {b})"),
            Expr::Div(a, b) => write!(f, "(/ {a} {b})"),
            Expr::Neg(a) => write!(f, "(neg {a})"),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Template::Slot => f.write_str("(slot)"),
            Template::Twist(e) => write!(f, "(twist {e})"),
            Template::Leaf(e) => write!(f, "(leaf {e})"),
            Template::HSum(ts) => write_list(f, "hsum", ts),
            Template::VSum(ts) => write_list(f, "vsum", ts),
            Template::Cf(es) => write_list(f, "cf", es),
            Template::Mirror(t) => write!(f, "(mirror {t})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Bindings {
        pairs.iter().map(|&(k, v)| (k.to_string(), BigInt::from(v))).collect()
    }

    #[test]
    fn spec_style_example() {
        let t = Template::parse("(vsum (twist n) (slot) (leaf 3/1))").unwrap();
        assert_eq!(t.symbols().into_iter().collect::<Vec<_>>(), vec!["n".to_string()]);
        let e = t.instantiate(&env(&[("n", 2)])).unwrap();
        assert_eq!(e.slot_count(), 1);
        let closed = e.insert(&Slope::infinity().into()).unwrap();
        assert_eq!(closed.fraction().unwrap(), "6/5".parse().unwrap());
    }

    #[test]
    fn arithmetic() {
        let t = Template::parse("(leaf (/ (+ (* 4 p) q) (- (neg p) 1)))").unwrap();
        let v = t.instantiate(&env(&[("p", 2), ("q", -1)])).unwrap().fraction().unwrap();
        assert_eq!(v, "-7/3".parse().unwrap());
        let inf = t.instantiate(&env(&[("p", -1), ("q", 0)])).unwrap().fraction().unwrap();
        assert!(inf.is_infinite());
        assert!(matches!(t.instantiate(&env(&[("p", 1)])), Err(TangleError::Unbound(_))));
    }

    #[test]
    fn twist_must_be_integral() {
        let t = Template::parse("(twist (/ n 2))").unwrap();
        assert!(t.instantiate(&env(&[("n", 4)])).is_ok());
        assert!(matches!(t.instantiate(&env(&[("n", 3)])), Err(TangleError::NotInteger(_))));
    }

    #[test]
    fn display_round_trip() {
        let src = "(hsum (slot) (mirror (cf (/ (- 0 q) p) 3 n)) (twist (* 2 n)) (leaf -3/2))";
        let t = Template::parse(src).unwrap();
        assert_eq!(t.to_string(), src);
        assert_eq!(Template::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn substitution() {
        let t = Template::parse("(hsum (slot) (mirror (cf c2 c3)) (twist X))").unwrap();
        let defs: BTreeMap<String, Expr> = [("c2", "(/ p 2)"), ("c3", "n"), ("X", "(* 2 n)")]
            .into_iter()
            .map(|(k, v)| (k.to_string(), Expr::parse(v).unwrap()))
            .collect();
        let t = t.substitute(&defs);
        assert_eq!(t.symbols().into_iter().collect::<Vec<_>>(), vec!["n".to_string(), "p".to_string()]);
        let v = t.instantiate(&env(&[("p", 3), ("n", 1)])).unwrap().insert(&Slope::zero().into()).unwrap();
        // -[3/2, 1] + 2 = -1/(3/2 - 1) + 2 = 0
        assert_eq!(v.fraction().unwrap(), Slope::zero());
        assert!(Expr::parse("(+ 1 2) 3").is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in ["(hsum", "(slot 1)", "(twist 1 2)", "(frob)", "(leaf #)", "(slot))", "(hsum)", "(leaf (- 1))"] {
            assert!(matches!(Template::parse(bad), Err(TangleError::Parse { .. })), "{bad}");
        }
    }
}
