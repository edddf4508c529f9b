//! Tangle words: sequences of elementary slices, read bottom to top.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceKind {
    PosCross,
    NegCross,
    Cup,
    Cap,
}

impl SliceKind {
    /// Cups and caps are odd, crossings are even.
    pub fn parity(self) -> usize {
        match self {
            SliceKind::Cup | SliceKind::Cap => 1,
            _ => 0,
        }
    }

    fn token(self) -> &'static str {
        match self {
            SliceKind::PosCross => "X+",
            SliceKind::NegCross => "X-",
            SliceKind::Cup => "U",
            SliceKind::Cap => "A",
        }
    }

    /// Smallest width a slice at position `pos` can act on.
    pub fn min_width(self, pos: usize) -> usize {
        match self {
            SliceKind::Cup => pos - 1,
            _ => pos + 1,
        }
    }

    pub fn width_change(self) -> isize {
        match self {
            SliceKind::Cup => 2,
            SliceKind::Cap => -2,
            _ => 0,
        }
    }
}

/// `1_{pos-1} (x) g (x) 1_rest` for a generator `g`; `pos` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slice {
    pub kind: SliceKind,
    pub pos: usize,
}

impl Slice {
    pub fn new(kind: SliceKind, pos: usize) -> Slice {
        Slice { kind, pos }
    }
    pub fn pos(i: usize) -> Slice {
        Slice::new(SliceKind::PosCross, i)
    }
    pub fn neg(i: usize) -> Slice {
        Slice::new(SliceKind::NegCross, i)
    }
    pub fn cup(i: usize) -> Slice {
        Slice::new(SliceKind::Cup, i)
    }
    pub fn cap(i: usize) -> Slice {
        Slice::new(SliceKind::Cap, i)
    }
}

/// A composable word of slices starting at object `m`; `slices[0]` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleWord {
    pub m: usize,
    pub slices: Vec<Slice>,
}

impl TangleWord {
    pub fn identity(m: usize) -> TangleWord {
        TangleWord { m, slices: Vec::new() }
    }

    pub fn new(m: usize, slices: Vec<Slice>) -> Result<TangleWord> {
        let w = TangleWord { m, slices };
        w.target()?;
        Ok(w)
    }

    /// Target object, checking that the widths chain.
    pub fn target(&self) -> Result<usize> {
        let mut width = self.m;
        for (k, s) in self.slices.iter().enumerate() {
            if s.pos == 0 || width < s.kind.min_width(s.pos) {
                return Err(Error::InvalidInput(format!(
                    "slice {k} ({} {}) does not fit width {width}",
                    s.kind.token(),
                    s.pos
                )));
            }
            width = (width as isize + s.kind.width_change()) as usize;
        }
        Ok(width)
    }

    pub fn max_width(&self) -> usize {
        let mut width = self.m;
        let mut best = width;
        for s in &self.slices {
            width = (width as isize + s.kind.width_change()) as usize;
            best = best.max(width);
        }
        best
    }

    /// Parity of the word: number of cups and caps mod 2.
    pub fn parity(&self) -> usize {
        self.slices.iter().map(|s| s.kind.parity()).sum::<usize>() % 2
    }

    /// `self` after `below`.
    pub fn after(&self, below: &TangleWord) -> Result<TangleWord> {
        if below.target()? != self.m {
            return Err(Error::InvalidInput("object mismatch in composition".into()));
        }
        let mut slices = below.slices.clone();
        slices.extend_from_slice(&self.slices);
        Ok(TangleWord { m: below.m, slices })
    }

    /// Tensor product `self (x) other` = `(self (x) 1) o (1 (x) other)`.
    pub fn tensor(&self, other: &TangleWord) -> TangleWord {
        let mut slices: Vec<Slice> = other
            .slices
            .iter()
            .map(|s| Slice::new(s.kind, s.pos + self.m))
            .collect();
        slices.extend_from_slice(&self.slices);
        TangleWord {
            m: self.m + other.m,
            slices,
        }
    }

    /// Same word with `k` strands added on the left.
    pub fn shifted(&self, k: usize) -> TangleWord {
        TangleWord {
            m: self.m + k,
            slices: self
                .slices
                .iter()
                .map(|s| Slice::new(s.kind, s.pos + k))
                .collect(),
        }
    }

    /// Same word with `k` strands added on the right.
    pub fn widened(&self, k: usize) -> TangleWord {
        TangleWord {
            m: self.m + k,
            slices: self.slices.clone(),
        }
    }

    /// Parses the text form. Tokens `X+ i`, `X- i`, `U i`, `A i` and `I k` (identity on
    /// k strands); `;` stacks layers bottom to top and `|` places factors side by side.
    /// Without an explicit source the smallest admissible one is used.
    pub fn parse_with_source(text: &str, source: Option<usize>) -> Result<TangleWord> {
        let mut slices = Vec::new();
        // Identity layers and side-by-side layers fix the width below them.
        let mut pins = Vec::new();
        for layer in text.split(';') {
            let layer = layer.trim();
            if layer.is_empty() {
                continue;
            }
            let factors: Vec<&str> = layer.split('|').map(|f| f.trim()).collect();
            if factors.len() == 1 {
                match parse_token(factors[0])? {
                    Some(s) => slices.push(s),
                    None => pins.push((slices.len(), parse_identity(factors[0])?)),
                }
                continue;
            }
            // Side-by-side factors: the rightmost one is applied first.
            let mut placed = Vec::new();
            let mut offset = 0;
            for f in &factors {
                let (s, width) = match parse_token(f)? {
                    Some(s) => (Some(s), s.kind.min_width(s.pos)),
                    None => (None, parse_identity(f)?),
                };
                if let Some(s) = s {
                    placed.push(Slice::new(s.kind, s.pos + offset));
                }
                offset += width;
            }
            placed.reverse();
            pins.push((slices.len(), offset));
            slices.extend(placed);
        }
        let m = match source {
            Some(m) => m,
            None => minimal_source(&slices, &pins)?,
        };
        let w = TangleWord::new(m, slices)?;
        for &(n, k) in &pins {
            let width = TangleWord::new(m, w.slices[..n].to_vec())?.target()?;
            if width != k {
                return Err(Error::Parse(format!("a layer expects {k} strands but gets {width}")));
            }
        }
        Ok(w)
    }

    pub fn parse(text: &str) -> Result<TangleWord> {
        Self::parse_with_source(text, None)
    }
}

fn minimal_source(slices: &[Slice], pins: &[(usize, usize)]) -> Result<usize> {
    if let Some(&(n, k)) = pins.first() {
        let delta: isize = slices[..n].iter().map(|s| s.kind.width_change()).sum();
        let m = k as isize - delta;
        return usize::try_from(m).map_err(|_| Error::Parse(format!("a layer of width {k} comes too early")));
    }
    let mut delta: isize = 0;
    let mut need: isize = 0;
    for s in slices {
        need = need.max(s.kind.min_width(s.pos) as isize - delta);
        delta += s.kind.width_change();
    }
    // The target must be nonnegative too.
    need = need.max(-delta);
    Ok(need.max(0) as usize)
}

fn parse_identity(tok: &str) -> Result<usize> {
    let parts: Vec<&str> = tok.split_whitespace().collect();
    match parts.as_slice() {
        ["I", k] => k
            .parse()
            .map_err(|_| Error::Parse(format!("bad identity width in {tok:?}"))),
        _ => Err(Error::Parse(format!("unknown factor {tok:?}"))),
    }
}

fn parse_token(tok: &str) -> Result<Option<Slice>> {
    let parts: Vec<&str> = tok.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected `<generator> <position>`, got {tok:?}")));
    }
    let kind = match parts[0] {
        "X+" => SliceKind::PosCross,
        "X-" => SliceKind::NegCross,
        "U" => SliceKind::Cup,
        "A" => SliceKind::Cap,
        "I" => return Ok(None),
        other => return Err(Error::Parse(format!("unknown generator {other:?}"))),
    };
    let pos: usize = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad position in {tok:?}")))?;
    if pos == 0 {
        return Err(Error::Parse("positions start at 1".into()));
    }
    Ok(Some(Slice::new(kind, pos)))
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .slices
            .iter()
            .map(|s| format!("{} {}", s.kind.token(), s.pos))
            .collect();
        write!(f, "{}", toks.join(" ; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_widths() {
        let w = TangleWord::parse("A 1 ; U 2").unwrap();
        assert_eq!(w.m, 3);
        assert_eq!(w.target().unwrap(), 3);
        let t = TangleWord::parse("X+ 1 | A 1").unwrap();
        assert_eq!(t.m, 4);
        assert_eq!(t.slices, vec![Slice::cap(3), Slice::pos(1)]);
        assert_eq!(t.target().unwrap(), 2);
        assert_eq!(TangleWord::parse("U 1").unwrap().m, 0);
        assert!(TangleWord::parse_with_source("A 2", Some(2)).is_err());
        assert!(TangleWord::parse("Z 1").is_err());
    }

    #[test]
    fn identity_layers_fix_widths() {
        assert_eq!(TangleWord::parse("I 2").unwrap().m, 2);
        assert_eq!(TangleWord::parse("A 1 ; I 2").unwrap().m, 4);
        let w = TangleWord::parse("A 1 | I 1").unwrap();
        assert_eq!((w.m, w.target().unwrap()), (3, 1));
        assert!(TangleWord::parse("I 2 ; A 1 | I 1").is_err());
        assert!(TangleWord::parse_with_source("I 2", Some(3)).is_err());
    }

    #[test]
    fn display_round_trip() {
        let w = TangleWord::parse_with_source("U 1 ; X- 2 ; A 3", Some(2)).unwrap();
        let back = TangleWord::parse_with_source(&w.to_string(), Some(2)).unwrap();
        assert_eq!(w, back);
    }

    #[test]
    fn tensor_places_left_factor_higher() {
        let cap = TangleWord::parse("A 1").unwrap();
        let t = cap.tensor(&cap);
        assert_eq!(t.slices, vec![Slice::cap(3), Slice::cap(1)]);
    }
}
