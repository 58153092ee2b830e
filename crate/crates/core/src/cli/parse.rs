//! The one expression grammar shared by words, coefficients, series and
//! cyclic-algebra elements.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := "-"? factor ("*"? factor)*          juxtaposition is product
//! factor  := primary ("^" "-"? INT)*
//! primary := NUM ("/" NUM)? | SYMBOL | "(" expr ")"
//!          | "conj" "(" expr ";" expr ")"        γ α γ⁻¹
//!          | "sqrt" "(" "-"? INT ")"
//!          | "O" "(" ">" word ")"                hidden tail above word
//! SYMBOL  := letter digits?                      uppercase letter = inverse
//! ```
//!
//! A run of letters splits into one symbol per letter, so `xyX` is
//! `x·y·x⁻¹` and `^` binds to the last symbol only. In series sessions
//! `x y z w` (or `x1`, `x2`, …) name generators and `r` is `√d`; in algebra
//! sessions `v`, `u` and preset aliases are the symbols.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::freegroup::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Coeff(BigRational),
    Sqrt(i64),
    Atom(Symbol),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Product(Vec<Expr>),
    Inverse(Box<Expr>),
    Power(Box<Expr>, u32),
    Conj(Box<Expr>, Box<Expr>),
    Tail(Word),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    /// Lowercase name with any digit suffix, e.g. `x`, `x5`, `v`.
    pub name: String,
    pub inverse: bool,
}

impl Symbol {
    /// Generator index in a free group: `x y z w` are 1 to 4, `x<k>` is `k`.
    pub fn generator_index(&self) -> Option<u32> {
        let mut chars = self.name.chars();
        let head = chars.next()?;
        let digits: String = chars.collect();
        if digits.is_empty() {
            return crate::freegroup::word::LETTER_NAMES
                .iter()
                .position(|&c| c == head)
                .map(|i| i as u32 + 1);
        }
        if head != 'x' {
            return None;
        }
        digits.parse::<u32>().ok().filter(|&k| k >= 1)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Coeff(c) => write!(f, "{}", crate::coeffield::coeff::fmt_rational(c)),
            Expr::Sqrt(d) => write!(f, "sqrt({d})"),
            Expr::Atom(s) if s.inverse => write!(f, "{}^-1", s.name),
            Expr::Atom(s) => write!(f, "{}", s.name),
            Expr::Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            Expr::Neg(x) => write!(f, "-({x})"),
            Expr::Product(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join("*"))
            }
            Expr::Inverse(x) => write!(f, "({x})^-1"),
            Expr::Power(x, n) => write!(f, "({x})^{n}"),
            Expr::Conj(g, a) => write!(f, "conj({g}; {a})"),
            Expr::Tail(w) => write!(f, "O(> {w})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Sym(Symbol),
    Keyword(&'static str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    Gt,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Sym(s) => format!("symbol {}", if s.inverse { s.name.to_uppercase() } else { s.name.clone() }),
            Tok::Keyword(k) => format!("{k:?}"),
            Tok::Plus => "\"+\"".into(),
            Tok::Minus => "\"-\"".into(),
            Tok::Star => "\"*\"".into(),
            Tok::Slash => "\"/\"".into(),
            Tok::Caret => "\"^\"".into(),
            Tok::LParen => "\"(\"".into(),
            Tok::RParen => "\")\"".into(),
            Tok::Semi => "\";\"".into(),
            Tok::Gt => "\">\"".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const KEYWORDS: [&str; 3] = ["conj", "sqrt", "O"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().unwrap();
                out.push((start, Tok::Num(n)));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                let mut end = i;
                while end < bytes.len() && (bytes[end] as char).is_ascii_alphanumeric() {
                    end += 1;
                }
                let run = &text[i..end];
                if let Some(k) = KEYWORDS.iter().find(|&&k| k == run) {
                    out.push((start, Tok::Keyword(k)));
                    i = end;
                    continue;
                }
                while i < end {
                    let s = i;
                    let letter = bytes[i] as char;
                    if !letter.is_ascii_alphabetic() {
                        return Err(ParseError {
                            offset: i,
                            expected: vec!["symbol".into()],
                            found: format!("{letter:?}"),
                        });
                    }
                    i += 1;
                    while i < end && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let name = format!("{}{}", letter.to_ascii_lowercase(), &text[s + 1..i]);
                    out.push((
                        s,
                        Tok::Sym(Symbol {
                            name,
                            inverse: letter.is_ascii_uppercase(),
                        }),
                    ));
                }
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            '>' => Tok::Gt,
            _ => {
                return Err(ParseError {
                    offset: i,
                    expected: vec!["expression".into()],
                    found: format!("{c:?}"),
                });
            }
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const PRIMARY_START: [&str; 6] = ["number", "symbol", "\"(\"", "\"conj\"", "\"sqrt\"", "\"O\""];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Num(_) | Tok::Sym(_) | Tok::LParen | Tok::Keyword(_)
        )
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut factors = vec![self.factor()?];
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_primary() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let at = self.pos;
        let n = self.int()?;
        u32::try_from(&n).map_err(|_| ParseError {
            offset: self.toks[at].0,
            expected: vec!["exponent below 2^32".into()],
            found: n.to_string(),
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let negative = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let n = self.small_int()?;
            base = match (negative, n) {
                (true, 1) => Expr::Inverse(Box::new(base)),
                (true, n) => Expr::Power(Box::new(Expr::Inverse(Box::new(base))), n),
                (false, n) => Expr::Power(Box::new(base), n),
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let at = self.offset();
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(ParseError {
                            offset: at,
                            expected: vec!["nonzero denominator".into()],
                            found: "0".into(),
                        });
                    }
                    return Ok(Expr::Coeff(BigRational::new(n, d)));
                }
                Ok(Expr::Coeff(BigRational::from_integer(n)))
            }
            Tok::Sym(s) => {
                self.bump();
                Ok(Expr::Atom(s))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(e)
            }
            Tok::Keyword("conj") => {
                self.bump();
                self.expect(Tok::LParen, "\"(\"")?;
                let g = self.expr()?;
                self.expect(Tok::Semi, "\";\"")?;
                let a = self.expr()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(Expr::Conj(Box::new(g), Box::new(a)))
            }
            Tok::Keyword("sqrt") => {
                self.bump();
                self.expect(Tok::LParen, "\"(\"")?;
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let at = self.offset();
                let d = self.int()?;
                let d = i64::try_from(&d).map_err(|_| ParseError {
                    offset: at,
                    expected: vec!["64-bit integer".into()],
                    found: d.to_string(),
                })?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(Expr::Sqrt(if neg { -d } else { d }))
            }
            Tok::Keyword(_) => {
                self.bump();
                self.expect(Tok::LParen, "\"(\"")?;
                self.expect(Tok::Gt, "\">\"")?;
                let w = self.word()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(Expr::Tail(w))
            }
            _ => Err(self.error(&PRIMARY_START)),
        }
    }

    /// `1` or a juxtaposition of generator symbols with integer powers.
    fn word(&mut self) -> Result<Word, ParseError> {
        if *self.peek() == Tok::Num(BigInt::one()) {
            self.bump();
            return Ok(Word::identity());
        }
        let mut w = Word::identity();
        let mut any = false;
        loop {
            let Tok::Sym(s) = self.peek().clone() else {
                break;
            };
            let at = self.offset();
            let g = s.generator_index().ok_or_else(|| ParseError {
                offset: at,
                expected: vec!["generator".into()],
                found: s.name.clone(),
            })?;
            self.bump();
            let mut e: i64 = if s.inverse { -1 } else { 1 };
            while *self.peek() == Tok::Caret {
                self.bump();
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let n = self.small_int()? as i64;
                e *= if neg { -n } else { n };
            }
            w = &w * &Word::generator(g).pow(e);
            any = true;
            if *self.peek() == Tok::Star {
                self.bump();
            }
        }
        if !any {
            return Err(self.error(&["word"]));
        }
        Ok(w)
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["\"+\"", "\"-\"", "\"*\"", "\"^\"", "end of input"]))
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// A group word such as `xyX`, `x^2 y^-1`, `x5^-1` or `1`.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(name: &str, inverse: bool) -> Expr {
        Expr::Atom(Symbol {
            name: name.into(),
            inverse,
        })
    }

    fn n(k: i64) -> Expr {
        Expr::Coeff(BigRational::from_integer(k.into()))
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("x*y^-1").unwrap(),
            Expr::Product(vec![sym("x", false), Expr::Inverse(Box::new(sym("y", false)))])
        );
        assert_eq!(
            parse("(1 - x)^-1").unwrap(),
            Expr::Inverse(Box::new(Expr::Sum(vec![n(1), Expr::Neg(Box::new(sym("x", false)))])))
        );
        let e = parse("x**").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.expected.contains(&"symbol".to_string()));
    }

    #[test]
    fn juxtaposition_and_runs() {
        assert_eq!(
            parse("3/4xY").unwrap(),
            Expr::Product(vec![
                Expr::Coeff(BigRational::new(3.into(), 4.into())),
                sym("x", false),
                sym("y", true),
            ])
        );
        assert_eq!(
            parse("x5^-1").unwrap(),
            Expr::Inverse(Box::new(sym("x5", false)))
        );
        assert!(matches!(parse("conj(1+y; x)").unwrap(), Expr::Conj(..)));
        assert_eq!(parse("sqrt(-3)").unwrap(), Expr::Sqrt(-3));
        assert!(matches!(
            parse("1 + x + O(> xx)").unwrap(),
            Expr::Sum(v) if v[2] == Expr::Tail(Word::from_letters([1, 1]))
        ));
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("xyX").unwrap(), Word::from_letters([1, 2, -1]));
        assert_eq!(parse_word("x^2 y^-1").unwrap(), Word::from_letters([1, 1, -2]));
        assert_eq!(parse_word("1").unwrap(), Word::identity());
        assert_eq!(parse_word("x5^-1x").unwrap(), Word::from_letters([-5, 1]));
        assert_eq!(parse_word("x2").unwrap(), Word::from_letters([2]));
        assert!(parse_word("xv").is_err());
        assert!(parse_word("").is_err());
        assert!(parse_word("x+").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse("1 + (x").unwrap_err();
        assert_eq!(e.offset, 6);
        assert_eq!(e.expected, vec!["\")\""]);
        let e = parse("x ? y").unwrap_err();
        assert_eq!(e.offset, 2);
        assert_eq!(parse("1/0").unwrap_err().offset, 2);
    }
}
