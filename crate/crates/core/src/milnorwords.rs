//! Word counting for μ and residue arithmetic.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::math::gcd;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    X,
    Y,
    Z,
}

impl Symbol {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'x' | 'X' => Ok(Symbol::X),
            'y' | 'Y' => Ok(Symbol::Y),
            'z' | 'Z' => Ok(Symbol::Z),
            _ => Err(Error::BadSymbol(c.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub symbol: Symbol,
    /// +1 or −1.
    pub exp: i8,
}

/// A word in x, y, z and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    /// `symbol^power` appended; negative powers append inverse letters.
    pub fn push_power(&mut self, symbol: Symbol, power: i64) {
        let exp = if power < 0 { -1 } else { 1 };
        for _ in 0..power.unsigned_abs() {
            self.0.push(Letter { symbol, exp });
        }
    }

    pub fn power(symbol: Symbol, power: i64) -> Self {
        let mut w = Word::new();
        w.push_power(symbol, power);
        w
    }

    pub fn concat(mut self, other: &Word) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    /// The inverse word: reversed with every exponent flipped.
    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| Letter { symbol: l.symbol, exp: -l.exp }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace separated tokens `x`, `x^-1`, `x-`, `x^3`, `x^-2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::new();
        for tok in s.split_whitespace() {
            let mut chars = tok.chars();
            let c = chars.next().ok_or_else(|| Error::BadSymbol(tok.to_string()))?;
            let sym = Symbol::from_char(c)?;
            let rest = chars.as_str();
            let power = match rest {
                "" => 1,
                "-" => -1,
                _ => rest
                    .strip_prefix('^')
                    .and_then(|p| p.parse::<i64>().ok())
                    .ok_or_else(|| Error::BadSymbol(tok.to_string()))?,
            };
            w.push_power(sym, power);
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            let c = match l.symbol {
                Symbol::X => 'x',
                Symbol::Y => 'y',
                Symbol::Z => 'z',
            };
            if l.exp < 0 {
                write!(f, "{c}^-1")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Signed count of occurrences of `first` before `second` in `w`.
///
/// Linear time: a running signed tally of `first` letters is added in at
/// every occurrence of `second`.
pub fn m_count(w: &Word, first: Symbol, second: Symbol) -> Result<i64> {
    if first == second {
        return Err(Error::BadSymbol("pair needs two distinct symbols".to_string()));
    }
    let mut seen = 0i64;
    let mut total = 0i64;
    for l in &w.0 {
        if l.symbol == first {
            seen += l.exp as i64;
        } else if l.symbol == second {
            total += seen * l.exp as i64;
        }
    }
    Ok(total)
}

/// An integer modulo `m ≥ 0`; `m = 0` means plain ℤ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    modulus: u64,
    value: i64,
}

impl ResidueClass {
    pub fn new(value: i64, modulus: i64) -> Self {
        let m = modulus.unsigned_abs();
        let value = if m == 0 { value } else { value.rem_euclid(m as i64) };
        ResidueClass { modulus: m, value }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical representative, in `[0, m)` when `m > 0`.
    pub fn value(&self) -> i64 {
        self.value
    }

    /// Representative of least absolute value (ties go positive).
    pub fn symmetric(&self) -> i64 {
        let m = self.modulus as i64;
        if m == 0 || 2 * self.value <= m {
            self.value
        } else {
            self.value - m
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Whether `n` lies in this class.
    pub fn contains(&self, n: i64) -> bool {
        ResidueClass::new(n, self.modulus as i64) == *self
    }

    fn common(a: Self, b: Self) -> i64 {
        assert_eq!(a.modulus, b.modulus, "residue classes with different moduli");
        a.modulus as i64
    }
}

impl Add for ResidueClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let m = Self::common(self, o);
        ResidueClass::new(self.value + o.value, m)
    }
}

impl Sub for ResidueClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let m = Self::common(self, o);
        ResidueClass::new(self.value - o.value, m)
    }
}

impl Neg for ResidueClass {
    type Output = Self;
    fn neg(self) -> Self {
        ResidueClass::new(-self.value, self.modulus as i64)
    }
}

impl Mul for ResidueClass {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = Self::common(self, o);
        ResidueClass::new(self.value * o.value, m)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{} in Z", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

/// `m_yz(w_X) + m_zx(w_Y) + m_xy(w_Z) − t` modulo `gcd(p, q, r)`.
pub fn mu_geometric(wx: &Word, wy: &Word, wz: &Word, t: i64, p: i64, q: i64, r: i64) -> ResidueClass {
    use Symbol::*;
    let total = m_count(wx, Y, Z).unwrap() + m_count(wy, Z, X).unwrap() + m_count(wz, X, Y).unwrap() - t;
    ResidueClass::new(total, gcd(gcd(p, q), r))
}

/// Before/after data of a delta move: same words, `t` lowered by one.
#[derive(Clone, Debug)]
pub struct DeltaMove {
    pub words: [Word; 3],
    pub t: i64,
    pub pqr: (i64, i64, i64),
}

impl DeltaMove {
    fn mu(&self, t: i64) -> ResidueClass {
        let (p, q, r) = self.pqr;
        mu_geometric(&self.words[0], &self.words[1], &self.words[2], t, p, q, r)
    }
}

/// `μ(after) − μ(before)` for a delta move; always the class of +1.
pub fn delta_move_mu_shift(case: &DeltaMove) -> ResidueClass {
    case.mu(case.t - 1) - case.mu(case.t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use Symbol::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn counting_examples() {
        for (p, q) in [(3, 5), (-2, 4), (0, 7), (-3, -3)] {
            let word = Word::power(X, q).concat(&Word::power(Y, p));
            assert_eq!(m_count(&word, X, Y).unwrap(), p * q);
        }
        assert_eq!(m_count(&Word::new(), X, Y).unwrap(), 0);
        assert_eq!(m_count(&w("x y x^-1 y^-1"), X, Y).unwrap(), 1);
        assert_eq!(m_count(&w("x y x- y-"), X, Y).unwrap(), 1);
        assert!(m_count(&w("x"), X, X).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(w("x^3 y^-2").len(), 5);
        assert_eq!(w("x^3 y^-2").to_string(), "x x x y^-1 y^-1");
        assert!("q".parse::<Word>().is_err());
        assert!("x^a".parse::<Word>().is_err());
        assert!("".parse::<Word>().unwrap().is_empty());
    }

    #[test]
    fn inverse_word_count() {
        // For the inverse word every ordered pair flips order and both
        // exponents flip, so m_ab(w⁻¹) = m_ba(w).
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let n = rng.gen_range(0..=12);
            let word = Word(
                (0..n)
                    .map(|_| Letter {
                        symbol: [X, Y, Z][rng.gen_range(0..3)],
                        exp: if rng.gen_bool(0.5) { 1 } else { -1 },
                    })
                    .collect(),
            );
            for (a, b) in [(X, Y), (Y, Z), (Z, X)] {
                assert_eq!(m_count(&word.inverse(), a, b).unwrap(), m_count(&word, b, a).unwrap());
            }
        }
    }

    #[test]
    fn geometric_mu() {
        for (p, q, r) in [(5i64, 3i64, -2i64), (2, 4, 6), (0, 0, 3), (1, 1, 0)] {
            let wx = Word::power(Y, r).concat(&Word::power(Z, q));
            let wy = Word::power(Z, p).concat(&Word::power(X, r));
            let wz = Word::power(X, q).concat(&Word::power(Y, p));
            assert!(mu_geometric(&wx, &wy, &wz, 0, p, q, r).is_zero());
        }
        let e = Word::new();
        let mu = mu_geometric(&e, &e, &w("x y x^-1 y^-1"), 0, 0, 0, 0);
        assert_eq!((mu.value(), mu.modulus()), (1, 0));
        assert!(mu_geometric(&e, &e, &e, 0, 0, 0, 0).is_zero());
    }

    #[test]
    fn delta_shift() {
        let case = DeltaMove { words: [w("y z"), w("z^-1 x"), w("x^2 y")], t: 3, pqr: (0, 0, 0) };
        assert_eq!(delta_move_mu_shift(&case), ResidueClass::new(1, 0));
        let case = DeltaMove { pqr: (4, 6, 2), ..case };
        let one = delta_move_mu_shift(&case);
        assert_eq!(one, ResidueClass::new(1, 2));
        let mut acc = ResidueClass::new(0, 2);
        for _ in 0..2 {
            acc = acc + one;
        }
        assert!(acc.is_zero());
        let mut z = ResidueClass::new(0, 0);
        for _ in 0..5 {
            z = z + delta_move_mu_shift(&DeltaMove { pqr: (0, 0, 0), ..case.clone() });
        }
        assert_eq!(z.value(), 5);
    }

    #[test]
    fn residue_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..500 {
            let m = rng.gen_range(0..7);
            let [a, b, c] = [0; 3].map(|_| ResidueClass::new(rng.gen_range(-50..50), m));
            assert_eq!((a + b) + c, a + (b + c));
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            assert_eq!((a - b) + b, a);
            assert_eq!((a * b) * c, a * (b * c));
        }
        assert_eq!(ResidueClass::new(-3, 4).value(), 1);
        assert_eq!(ResidueClass::new(-3, 0).value(), -3);
        assert_eq!(ResidueClass::new(3, 4).symmetric(), -1);
        assert!(ResidueClass::new(6, 4).contains(-2));
    }
}
