//! Algebraic normal form: parsing and evaluation into truth tables.
//!
//! Grammar: monomials joined by `+`, `^` or `⊕`; a monomial is the constant
//! `1` (or `0`) or a product of variables `X<k>` / `x<k>` (an optional `_`
//! after the letter and `*` / `·` between factors are accepted).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::truth_table::{TruthTable, N_MAX};

/// A sum of monomials over GF(2). Each monomial is a bitmask, bit `j - 1`
/// standing for `X_j`; the empty mask is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfExpression {
    n: usize,
    monomials: BTreeSet<u64>,
}

impl AnfExpression {
    /// Builds an expression from monomials given as lists of 1-based variable
    /// indices. A monomial appearing twice cancels.
    pub fn new<I, M>(n: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = M>,
        M: IntoIterator<Item = usize>,
    {
        if n == 0 || n > N_MAX {
            return Err(Error::ArityOutOfRange { n, max: N_MAX });
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            let mut mask = 0u64;
            for var in m {
                if var == 0 || var > n {
                    return Err(Error::VariableOutOfRange { var, n });
                }
                mask |= 1 << (var - 1);
            }
            toggle(&mut set, mask);
        }
        Ok(Self { n, monomials: set })
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if n == 0 || n > N_MAX {
            return Err(Error::ArityOutOfRange { n, max: N_MAX });
        }
        Parser::new(text, n).expression()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().copied()
    }

    pub fn degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the expression into its truth table.
    pub fn to_truth_table(&self) -> TruthTable {
        // Coefficient table followed by the GF(2) subset-sum (Möbius) transform.
        let n = self.n;
        let mut words = vec![0u64; if n <= 6 { 1 } else { 1 << (n - 6) }];
        for &m in &self.monomials {
            words[(m >> 6) as usize] ^= 1 << (m & 63);
        }
        const LOW: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        for (j, low) in LOW.iter().enumerate().take(n.min(6)) {
            let shift = 1u32 << j;
            for w in &mut words {
                *w ^= (*w & low) << shift;
            }
        }
        let mut h = 1usize;
        while h < words.len() {
            for i in 0..words.len() {
                if i & h != 0 {
                    words[i] ^= words[i ^ h];
                }
            }
            h <<= 1;
        }
        TruthTable::from_words(n, words).expect("arity validated on construction")
    }
}

fn toggle(set: &mut BTreeSet<u64>, mask: u64) {
    if !set.remove(&mask) {
        set.insert(mask);
    }
}

/// Truth table of an ANF expression.
pub fn from_anf(expr: &AnfExpression) -> TruthTable {
    expr.to_truth_table()
}

impl fmt::Display for AnfExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for &m in &self.monomials {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m == 0 {
                f.write_str("1")?;
                continue;
            }
            for j in (0..self.n).rev() {
                if m >> j & 1 == 1 {
                    write!(f, "X{}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    n: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, n: usize) -> Self {
        Self {
            chars: src.char_indices().collect(),
            pos: 0,
            n,
            _src: src,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self._src.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::AnfParse {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn expression(&mut self) -> Result<AnfExpression> {
        let mut set = BTreeSet::new();
        loop {
            self.skip_ws();
            if let Some(mask) = self.monomial()? {
                toggle(&mut set, mask);
            }
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+' | '^' | '⊕') => self.pos += 1,
                Some(c) => return Err(self.error(format!("expected '+' or '^', found {c:?}"))),
            }
        }
        Ok(AnfExpression {
            n: self.n,
            monomials: set,
        })
    }

    /// `None` for the constant 0.
    fn monomial(&mut self) -> Result<Option<u64>> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                return Ok(Some(0));
            }
            Some('0') => {
                self.pos += 1;
                return Ok(None);
            }
            Some('X' | 'x') => {}
            None => return Err(self.error("expected a monomial, found end of input")),
            Some(c) => return Err(self.error(format!("expected a monomial, found {c:?}"))),
        }
        let mut mask = 0u64;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('X' | 'x') => {
                    mask |= 1 << (self.variable()? - 1);
                }
                Some('*' | '·') => {
                    self.pos += 1;
                    self.skip_ws();
                    if !matches!(self.peek(), Some('X' | 'x')) {
                        return Err(self.error("expected a variable after '*'"));
                    }
                }
                _ => break,
            }
        }
        Ok(Some(mask))
    }

    fn variable(&mut self) -> Result<usize> {
        self.pos += 1;
        if self.peek() == Some('_') {
            self.pos += 1;
        }
        let braced = self.peek() == Some('{');
        if braced {
            self.pos += 1;
        }
        let start = self.offset();
        let mut value: usize = 0;
        let mut digits = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value.saturating_mul(10).saturating_add(d as usize);
            digits += 1;
            self.pos += 1;
        }
        if digits == 0 {
            return Err(self.error("expected a variable index"));
        }
        if braced {
            if self.peek() != Some('}') {
                return Err(self.error("expected '}'"));
            }
            self.pos += 1;
        }
        if value == 0 || value > self.n {
            return Err(Error::AnfParse {
                pos: start,
                msg: Error::VariableOutOfRange {
                    var: value,
                    n: self.n,
                }
                .to_string(),
            });
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(s: &str, n: usize) -> String {
        AnfExpression::parse(s, n)
            .unwrap()
            .to_truth_table()
            .to_bit_string()
    }

    #[test]
    fn single_variables_and_products() {
        assert_eq!(tt("X1", 1), "01");
        assert_eq!(tt("x1*x2", 2), "0001");
        assert_eq!(tt("X1X2", 2), "0001");
        assert_eq!(tt("X1 ^ X2", 2), "0110");
        assert_eq!(tt("1 + X1", 1), "10");
        assert_eq!(tt("0", 2), "0000");
        assert_eq!(tt("X_2", 2), "0011");
    }

    #[test]
    fn repeated_monomials_cancel() {
        assert_eq!(tt("X1 + X2 + X1", 2), "0011");
        assert_eq!(tt("X1X1", 1), "01");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match AnfExpression::parse("X1 + X3", 2) {
            Err(Error::AnfParse { pos, msg }) => {
                assert_eq!(pos, 6);
                assert!(msg.contains("X3"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            AnfExpression::parse("X1 + ", 2),
            Err(Error::AnfParse { pos: 5, .. })
        ));
        assert!(matches!(
            AnfExpression::parse("X1 X2 ?", 2),
            Err(Error::AnfParse { pos: 6, .. })
        ));
        assert!(matches!(
            AnfExpression::new(2, [vec![3]]),
            Err(Error::VariableOutOfRange { var: 3, n: 2 })
        ));
    }

    #[test]
    fn evaluation_matches_direct_parity() {
        let expr = AnfExpression::parse("X3X2X1 + X4 + X5X1 + 1", 5).unwrap();
        let t = expr.to_truth_table();
        for x in 0..32u64 {
            let b = |j: u32| (x >> (j - 1)) & 1 == 1;
            let direct = (b(3) && b(2) && b(1)) ^ b(4) ^ (b(5) && b(1)) ^ true;
            assert_eq!(t.get(x), direct, "x = {x}");
        }
    }

    #[test]
    fn display_round_trips() {
        let expr = AnfExpression::parse("X4X3 + X5X2 + 1", 5).unwrap();
        let again = AnfExpression::parse(&expr.to_string(), 5).unwrap();
        assert_eq!(expr, again);
    }
}
