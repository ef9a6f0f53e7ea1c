use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Parity table `[i] ∈ {0,1}` for the three basis indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Signature {
    parity: [u8; 3],
}

impl Signature {
    /// `[1] = [2] = 0`, `[3] = 1`.
    pub const GL21: Signature = Signature { parity: [0, 0, 1] };
    /// `[1] = 0`, `[2] = [3] = 1`.
    pub const GL12: Signature = Signature { parity: [0, 1, 1] };

    pub fn parity(self, i: usize) -> u8 {
        self.parity[i - 1]
    }

    pub fn name(self) -> &'static str {
        if self == Self::GL21 {
            "gl(2|1)"
        } else {
            "gl(1|2)"
        }
    }

    pub fn from_name(s: &str) -> Option<Signature> {
        match s {
            "gl(2|1)" => Some(Self::GL21),
            "gl(1|2)" => Some(Self::GL12),
            _ => None,
        }
    }

    /// Parity of a basis state: sum of the site parities mod 2.
    pub fn key_parity(self, mut key: u64, arity: usize) -> u8 {
        let mut p = 0;
        for _ in 0..arity {
            p ^= self.parity[(key % 3) as usize];
            key /= 3;
        }
        p
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of(p: u8) -> Parity {
        if p.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> Option<u8> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        match (self.bit(), other.bit()) {
            (Some(a), Some(b)) => Parity::of(a + b),
            _ => Parity::Mixed,
        }
    }
}

/// Multi-index with entries in `{1,2,3}` to key.
pub fn encode_key(indices: &[u8]) -> u64 {
    indices.iter().fold(0, |k, &i| 3 * k + (i as u64 - 1))
}

pub fn decode_key(mut key: u64, arity: usize) -> Vec<u8> {
    let mut out = alloc::vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (key % 3) as u8 + 1;
        key /= 3;
    }
    out
}

/// Digit string such as `"113"`. Arity 0 gives the empty string.
pub fn key_string(key: u64, arity: usize) -> String {
    decode_key(key, arity).iter().map(|d| (b'0' + d) as char).collect()
}

pub fn parse_key(s: &str) -> Option<(u64, usize)> {
    let mut idx = Vec::new();
    for ch in s.chars() {
        match ch {
            '1' | '2' | '3' => idx.push(ch as u8 - b'0'),
            _ => return None,
        }
    }
    Some((encode_key(&idx), idx.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradation_relation_between_signatures() {
        for i in 1..=3 {
            assert_eq!(Signature::GL21.parity(i), (Signature::GL12.parity(4 - i) + 1) % 2);
        }
    }

    #[test]
    fn keys() {
        assert_eq!(encode_key(&[1, 1, 3]), 2);
        assert_eq!(key_string(encode_key(&[3, 1, 2]), 3), "312");
        assert_eq!(parse_key("312"), Some((encode_key(&[3, 1, 2]), 3)));
        assert_eq!(parse_key("14"), None);
        assert_eq!(Signature::GL21.key_parity(encode_key(&[3, 3, 1]), 3), 0);
        assert_eq!(Signature::GL12.key_parity(encode_key(&[3, 2, 1]), 3), 0);
        assert_eq!(Signature::GL12.key_parity(encode_key(&[2, 1, 1]), 3), 1);
    }
}
