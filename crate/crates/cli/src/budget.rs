//! Budget expressions such as `50*m*n^2` or `100*n^(k+3)`, evaluated
//! exactly against the parameters of an instance.
//!
//! Grammar: `+ - * /` with the usual precedence, right-associative `^`
//! with a non-negative integer exponent, parentheses, unary minus, integer
//! literals and the variables `n`, `m`, `k` and `L` (`L = ceil(n/k)`, the
//! column count of problem I). A budget must be a positive integer.
//!
//! Ratio thresholds use the same grammar plus the harmonic number `H(x)`,
//! so `H(k)` or `H(3) - (k/n)*(H(3) - 1)` can be written directly.

use num_traits::{ToPrimitive, Zero};
use seip_core::{harmonic, Rational, SetCoverInstance, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetVars {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub l: u64,
}

impl BudgetVars {
    pub fn of<W: Weight>(inst: &SetCoverInstance<W>) -> Self {
        let (n, k) = (inst.n() as u64, inst.k() as u64);
        Self {
            n,
            m: inst.m() as u64,
            k,
            l: n.div_ceil(k.max(1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(u64),
    Var(char),
    Harmonic,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(
                s.parse().map_err(|_| format!("number {s} is too large"))?,
            ));
        } else if c == 'H' {
            out.push(Token::Harmonic);
            i += 1;
        } else if matches!(c, 'n' | 'm' | 'k' | 'L') {
            out.push(Token::Var(c));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    vars: BudgetVars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Rational, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Rational, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err("division by zero".into());
                }
                acc = acc / d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Rational, String> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Rational, String> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.unary()?;
        let e = match (exp.is_integer(), exp.to_integer().to_u32()) {
            (true, Some(e)) if e <= 256 => e,
            _ => return Err(format!("exponent {exp} must be an integer in 0..=256")),
        };
        Ok(num_traits::pow(base, e as usize))
    }

    fn closing(&mut self) -> Result<Rational, String> {
        let inner = self.expr()?;
        if !self.eat(')') {
            return Err("missing ')'".into());
        }
        Ok(inner)
    }

    fn atom(&mut self) -> Result<Rational, String> {
        let v = |x: u64| Rational::from_integer(x.into());
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(x)) => {
                self.pos += 1;
                Ok(v(x))
            }
            Some(Token::Var(c)) => {
                self.pos += 1;
                Ok(v(match c {
                    'n' => self.vars.n,
                    'm' => self.vars.m,
                    'k' => self.vars.k,
                    _ => self.vars.l,
                }))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                self.closing()
            }
            Some(Token::Harmonic) => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err("H needs a parenthesized argument".into());
                }
                let arg = self.closing()?;
                match (arg.is_integer(), arg.to_integer().to_u64()) {
                    (true, Some(x)) if x <= 10_000 => harmonic(x).map_err(|e| e.to_string()),
                    _ => Err(format!("H({arg}) needs an integer argument in 1..=10000")),
                }
            }
            Some(t) => Err(format!("unexpected {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

/// Evaluates `src` exactly.
pub fn evaluate_expression(src: &str, vars: BudgetVars) -> Result<Rational, String> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        vars,
    };
    let value = p.expr()?;
    if p.pos != tokens.len() {
        return Err(format!("trailing input in expression {src:?}"));
    }
    Ok(value)
}

/// Evaluates `src`; the result must be a positive integer fitting in `u64`.
pub fn evaluate_budget(src: &str, vars: BudgetVars) -> Result<u64, String> {
    let value = evaluate_expression(src, vars)?;
    if !value.is_integer() {
        return Err(format!("budget {src:?} evaluates to the fraction {value}"));
    }
    match value.to_integer().to_u64() {
        Some(b) if b >= 1 => Ok(b),
        _ => Err(format!(
            "budget {src:?} evaluates to {value}, not a positive 64-bit integer"
        )),
    }
}
