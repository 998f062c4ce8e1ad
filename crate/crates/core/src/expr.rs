//! Language expressions.
//!
//! ```text
//! expr     := term ( '|' term )*
//! term     := factor ( '&' factor )*
//! factor   := primary ( '/' bits )*
//! primary  := atom | '(' expr ')'
//! atom     := name [ '(' [ args ] ')' ]
//! args     := arg ( ',' arg )* [ ';' integer ]
//! ```
//!
//! `|` is union, `&` intersection and `/ g` the right quotient by the bit
//! string `g`. `&` binds tighter than `|`, and `/` tighter than both. A
//! quotient of a length-`n` expression is evaluated with its operand at
//! length `n + |g|`. Knapsack weights are listed as arguments; the capacity
//! follows a `;` or comes from the caller.
//!
//! ```
//! use flipswap::expr::{parse, BuildOptions};
//!
//! let e = parse("necklace & weight_le(3)").unwrap();
//! let t = e.build(6, &BuildOptions::default()).unwrap();
//! assert!(t.accepts(&"000111".parse().unwrap()));
//! assert!(!t.accepts(&"001111".parse().unwrap()));
//! ```

use std::fmt;

use crate::bitstring::BinaryString;
use crate::error::{Error, Result};
use crate::languages::{intersection, quotient, union, Language, MembershipTester, Pivot};

/// Names accepted as atoms.
pub const LANGUAGE_NAMES: &[&str] = &[
    "all",
    "weight_le(k)",
    "lex_le(bits)",
    "inversions_le(k)",
    "transpositions_le(k)",
    "lt_reversal",
    "le_reversal",
    "neckties",
    "lt_comp_reversal",
    "le_comp_reversal",
    "forbidden_run(t)",
    "forbidden_prefix(bits)",
    "prefix_normal",
    "necklace",
    "lyndon",
    "prenecklace",
    "pseudo_necklace",
    "dyck_left_factor(k)",
    "knapsack(w1,...,wn[;capacity])",
    "dyck_words(k)",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Atom {
        name: String,
        args: Vec<String>,
        capacity: Option<u64>,
    },
    Union(Box<Expr>, Box<Expr>),
    Intersection(Box<Expr>, Box<Expr>),
    Quotient(Box<Expr>, BinaryString),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom {
                name,
                args,
                capacity,
            } => {
                f.write_str(name)?;
                if !args.is_empty() || capacity.is_some() {
                    write!(f, "({}", args.join(","))?;
                    if let Some(c) = capacity {
                        write!(f, ";{c}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
            Expr::Union(a, b) => write!(f, "({a} | {b})"),
            Expr::Intersection(a, b) => write!(f, "({a} & {b})"),
            Expr::Quotient(a, g) => write!(f, "({a} / {g})"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    /// Pivot for every atom; `None` uses each language's natural pivot.
    pub pivot: Option<Pivot>,
    /// Knapsack capacity when the expression does not give one.
    pub capacity: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Word(&'a str),
    Sym(char),
    End,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Word(s) => write!(f, "{s:?}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(1, char::len_utf8);
        }
    }

    /// Returns the next token and its byte offset without consuming it.
    fn peek(&mut self) -> (Tok<'a>, usize) {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let Some(c) = rest.chars().next() else {
            return (Tok::End, self.pos);
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                .unwrap_or(rest.len());
            return (Tok::Ident(&rest[..len]), self.pos);
        }
        if c.is_ascii_digit() {
            let len = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            return (Tok::Word(&rest[..len]), self.pos);
        }
        (Tok::Sym(c), self.pos)
    }

    fn bump(&mut self, tok: Tok<'_>) {
        self.pos += match tok {
            Tok::Ident(s) | Tok::Word(s) => s.len(),
            Tok::Sym(c) => c.len_utf8(),
            Tok::End => 0,
        };
    }

    fn error(&mut self, expected: &str) -> Error {
        let (tok, at) = self.peek();
        Error::Parse {
            column: self.src[..at].chars().count() + 1,
            expected: expected.to_string(),
            found: tok.to_string(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek().0 {
            Tok::Sym(d) if d == c => {
                self.bump(Tok::Sym(c));
                Ok(())
            }
            _ => Err(self.error(&format!("'{c}'"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while self.peek().0 == Tok::Sym('|') {
            self.bump(Tok::Sym('|'));
            left = Expr::Union(Box::new(left), Box::new(self.term()?));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while self.peek().0 == Tok::Sym('&') {
            self.bump(Tok::Sym('&'));
            left = Expr::Intersection(Box::new(left), Box::new(self.factor()?));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut left = self.primary()?;
        while self.peek().0 == Tok::Sym('/') {
            self.bump(Tok::Sym('/'));
            let gamma = match self.peek().0 {
                Tok::Word(w) if w.bytes().all(|b| b == b'0' || b == b'1') => {
                    self.bump(Tok::Word(w));
                    w.parse::<BinaryString>()?
                }
                _ => return Err(self.error("a bit string after '/'")),
            };
            left = Expr::Quotient(Box::new(left), gamma);
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().0 {
            Tok::Sym('(') => {
                self.bump(Tok::Sym('('));
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump(Tok::Ident(name));
                let (args, capacity) = if self.peek().0 == Tok::Sym('(') {
                    self.bump(Tok::Sym('('));
                    self.args()?
                } else {
                    (Vec::new(), None)
                };
                Ok(Expr::Atom {
                    name: name.to_string(),
                    args,
                    capacity,
                })
            }
            _ => Err(self.error("a language name or '('")),
        }
    }

    /// Arguments after the opening parenthesis, through the closing one.
    fn args(&mut self) -> Result<(Vec<String>, Option<u64>)> {
        let mut args = Vec::new();
        if self.peek().0 == Tok::Sym(')') {
            self.bump(Tok::Sym(')'));
            return Ok((args, None));
        }
        loop {
            match self.peek().0 {
                Tok::Word(w) => {
                    self.bump(Tok::Word(w));
                    args.push(w.to_string());
                }
                _ => return Err(self.error("an integer or bit string argument")),
            }
            match self.peek().0 {
                Tok::Sym(',') => self.bump(Tok::Sym(',')),
                Tok::Sym(';') => {
                    self.bump(Tok::Sym(';'));
                    let cap = match self.peek().0 {
                        Tok::Word(w) => {
                            self.bump(Tok::Word(w));
                            w.parse::<u64>()
                                .map_err(|_| self.error("a capacity that fits in 64 bits"))?
                        }
                        _ => return Err(self.error("a capacity")),
                    };
                    self.expect_sym(')')?;
                    return Ok((args, Some(cap)));
                }
                Tok::Sym(')') => {
                    self.bump(Tok::Sym(')'));
                    return Ok((args, None));
                }
                _ => return Err(self.error("',', ';' or ')'")),
            }
        }
    }
}

/// Parses a language expression.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    match p.peek().0 {
        Tok::End => Ok(e),
        _ => Err(p.error("'|', '&', '/' or end of input")),
    }
}

fn int_arg(name: &str, args: &[String]) -> Result<u64> {
    match args {
        [a] => a
            .parse()
            .map_err(|_| Error::param(name, format!("{a:?} is not a non-negative integer"))),
        _ => Err(Error::param(
            name,
            format!("expected one integer argument, got {}", args.len()),
        )),
    }
}

fn bits_arg(name: &str, args: &[String]) -> Result<BinaryString> {
    match args {
        [a] => a.parse(),
        _ => Err(Error::param(
            name,
            format!("expected one bit-string argument, got {}", args.len()),
        )),
    }
}

/// Maps an atom to a catalog language; knapsack weights are sorted here.
pub fn atom_language(name: &str, args: &[String], capacity: Option<u64>) -> Result<Language> {
    let no_args = |lang: Language| {
        if args.is_empty() {
            Ok(lang)
        } else {
            Err(Error::param(name, "takes no arguments"))
        }
    };
    let usize_arg = |args: &[String]| -> Result<usize> {
        usize::try_from(int_arg(name, args)?).map_err(|_| Error::param(name, "argument too large"))
    };
    match name {
        "all" => no_args(Language::All),
        "weight_le" => Ok(Language::WeightLe {
            k: int_arg(name, args)?,
        }),
        "lex_le" => Ok(Language::LexLe {
            gamma: bits_arg(name, args)?,
        }),
        "inversions_le" => Ok(Language::InversionsLe {
            k: int_arg(name, args)?,
        }),
        "transpositions_le" => Ok(Language::TranspositionsLe {
            k: int_arg(name, args)?,
        }),
        "lt_reversal" | "le_reversal" | "neckties" | "lt_comp_reversal" | "le_comp_reversal" => {
            no_args(Language::Reversal {
                strict: name.starts_with("lt"),
                complemented: name.contains("comp"),
            })
        }
        "forbidden_run" => Ok(Language::ForbiddenRun {
            t: usize_arg(args)?,
        }),
        "forbidden_prefix" => {
            let gamma = match args {
                [] => Vec::new(),
                _ => bits_arg(name, args)?.to_bits(),
            };
            Ok(Language::ForbiddenPrefix { gamma })
        }
        "prefix_normal" => no_args(Language::PrefixNormal),
        "necklace" => no_args(Language::Necklace),
        "lyndon" => no_args(Language::Lyndon),
        "prenecklace" => no_args(Language::Prenecklace),
        "pseudo_necklace" => no_args(Language::PseudoNecklace),
        "dyck_left_factor" => Ok(Language::DyckLeftFactor {
            k_ary: usize_arg(args)?,
        }),
        "dyck_words" => Ok(Language::DyckWords {
            k_ary: usize_arg(args)?,
        }),
        "knapsack" => {
            let weights = args
                .iter()
                .map(|a| {
                    a.parse::<u64>().map_err(|_| {
                        Error::param(name, format!("{a:?} is not a non-negative integer"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let capacity = capacity.ok_or_else(|| Error::param(name, "missing capacity"))?;
            let (weights, _) = crate::languages::sort_items(&weights);
            Ok(Language::Knapsack { weights, capacity })
        }
        other => Err(Error::param(
            other,
            format!("unknown language; known: {}", LANGUAGE_NAMES.join(", ")),
        )),
    }
}

impl Expr {
    /// Builds the tester for length `n`.
    pub fn build(&self, n: usize, options: &BuildOptions) -> Result<MembershipTester> {
        match self {
            Expr::Atom {
                name,
                args,
                capacity,
            } => {
                let lang = atom_language(name, args, capacity.or(options.capacity))?;
                let pivot = options.pivot.unwrap_or(lang.natural_pivot());
                lang.tester_with_pivot(n, pivot)
            }
            Expr::Union(a, b) => union(&a.build(n, options)?, &b.build(n, options)?),
            Expr::Intersection(a, b) => intersection(&a.build(n, options)?, &b.build(n, options)?),
            Expr::Quotient(a, gamma) => quotient(&a.build(n + gamma.len(), options)?, gamma),
        }
    }

    /// The atoms in left-to-right order.
    pub fn atoms(&self) -> Vec<&Expr> {
        match self {
            Expr::Atom { .. } => vec![self],
            Expr::Union(a, b) | Expr::Intersection(a, b) => {
                let mut v = a.atoms();
                v.extend(b.atoms());
                v
            }
            Expr::Quotient(a, _) => a.atoms(),
        }
    }
}

/// Parses and builds in one step.
pub fn build(src: &str, n: usize, options: &BuildOptions) -> Result<MembershipTester> {
    parse(src)?.build(n, options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::bs;
    use crate::brgc::brgc_list;

    fn members(t: &MembershipTester) -> Vec<String> {
        brgc_list(t.n())
            .unwrap()
            .iter()
            .filter(|s| t.accepts(s))
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn precedence() {
        let e = parse("all | necklace & weight_le(2) / 01").unwrap();
        assert_eq!(e.to_string(), "(all | (necklace & (weight_le(2) / 01)))");
        let e = parse("(necklace | lyndon) & all").unwrap();
        assert_eq!(e.to_string(), "((necklace | lyndon) & all)");
    }

    #[test]
    fn builds_catalog_languages() {
        let opts = BuildOptions::default();
        assert_eq!(
            members(&build("necklace & weight_le(2)", 4, &opts).unwrap()),
            ["0000", "0011", "0101", "0001"]
        );
        assert_eq!(
            members(&build("lex_le(1001) / 01", 2, &opts).unwrap()),
            ["00", "10", "01"]
        );
        assert_eq!(
            members(&build("neckties", 4, &opts).unwrap()),
            members(&crate::languages::vs_reversal(4, false, false).unwrap())
        );
        let t = build("forbidden_prefix()", 3, &opts).unwrap();
        assert_eq!(members(&t), ["000", "010", "011", "001"]);
        assert_eq!(
            build("dyck_left_factor(2)", 4, &opts).unwrap().pivot(),
            Pivot::Zero
        );
    }

    #[test]
    fn knapsack_capacity_sources() {
        let inline = build("knapsack(1,3,2;3)", 3, &BuildOptions::default()).unwrap();
        let flag = build(
            "knapsack(1,3,2)",
            3,
            &BuildOptions {
                capacity: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(members(&inline), members(&flag));
        assert_eq!(inline.name(), "knapsack(3,2,1;3)");
        assert!(build("knapsack(1,3,2)", 3, &BuildOptions::default()).is_err());
    }

    #[test]
    fn pivot_override() {
        let opts = BuildOptions {
            pivot: Some(Pivot::Zero),
            ..Default::default()
        };
        let t = build("weight_le(1)", 3, &opts).unwrap();
        // The pivot-0 counterpart of weight at most k is weight at least k.
        assert!(t.accepts(&bs("100")) && !t.accepts(&bs("000")));
        // Mixed natural pivots cannot be combined.
        assert!(build(
            "necklace & dyck_left_factor(2)",
            4,
            &BuildOptions::default()
        )
        .is_err());
    }

    #[test]
    fn parse_errors_report_position() {
        match parse("necklace & ") {
            Err(Error::Parse {
                column,
                expected,
                found,
            }) => {
                assert_eq!(column, 12);
                assert!(expected.contains("language name"));
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("weight_le(2"),
            Err(Error::Parse { column: 12, .. })
        ));
        assert!(matches!(
            parse("necklace / 2"),
            Err(Error::Parse { column: 12, .. })
        ));
        assert!(matches!(
            parse("necklace)"),
            Err(Error::Parse { column: 9, .. })
        ));
        assert!(parse("weight_le(-1)").is_err());
        assert!(build("frobnicate", 4, &BuildOptions::default()).is_err());
        assert!(build("necklace(3)", 4, &BuildOptions::default()).is_err());
    }
}
