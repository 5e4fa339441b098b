//! Rolling substring hashes: two independent polynomial hashes modulo
//! 2^61 - 1, packed into a single 128-bit key. Hash equality of equal words
//! is guaranteed, so hash-based pruning can never drop a true match; the
//! few places that must be collision-proof compare letters on hash hits.

const MOD: u64 = (1u64 << 61) - 1;
const BASE1: u64 = 1_112_223_334_445;
const BASE2: u64 = 777_666_555_443;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MOD {
        s - MOD
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MOD - b
    }
}

#[inline]
fn term(letter: u8) -> u64 {
    letter as u64 + 1
}

/// Prefix hashes of one letter sequence, supporting O(1) substring hashes
/// and O(1) "append one letter" composition.
pub(crate) struct PrefixHashes {
    h1: Vec<u64>,
    h2: Vec<u64>,
    p1: Vec<u64>,
    p2: Vec<u64>,
}

impl PrefixHashes {
    pub fn new(letters: &[u8]) -> Self {
        let n = letters.len();
        let mut h1 = vec![0u64; n + 1];
        let mut h2 = vec![0u64; n + 1];
        let mut p1 = vec![1u64; n + 1];
        let mut p2 = vec![1u64; n + 1];
        for (i, &l) in letters.iter().enumerate() {
            h1[i + 1] = addmod(mulmod(h1[i], BASE1), term(l));
            h2[i + 1] = addmod(mulmod(h2[i], BASE2), term(l));
            p1[i + 1] = mulmod(p1[i], BASE1);
            p2[i + 1] = mulmod(p2[i], BASE2);
        }
        PrefixHashes { h1, h2, p1, p2 }
    }

    /// Hash of `letters[start..end)`.
    #[inline]
    pub fn range(&self, start: usize, end: usize) -> u128 {
        let len = end - start;
        let a = submod(self.h1[end], mulmod(self.h1[start], self.p1[len]));
        let b = submod(self.h2[end], mulmod(self.h2[start], self.p2[len]));
        (a as u128) << 64 | b as u128
    }

    /// Hash of the word hashed as `h` followed by one more letter.
    #[inline]
    pub fn append_letter(h: u128, letter: u8) -> u128 {
        let a = addmod(mulmod((h >> 64) as u64, BASE1), term(letter));
        let b = addmod(mulmod(h as u64, BASE2), term(letter));
        (a as u128) << 64 | b as u128
    }

    pub fn hash_word(letters: &[u8]) -> u128 {
        let mut a = 0u64;
        let mut b = 0u64;
        for &l in letters {
            a = addmod(mulmod(a, BASE1), term(l));
            b = addmod(mulmod(b, BASE2), term(l));
        }
        (a as u128) << 64 | b as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_matches_direct_hash() {
        let letters: Vec<u8> = b"abacabadabacaba".iter().map(|c| c - b'a').collect();
        let h = PrefixHashes::new(&letters);
        for i in 0..letters.len() {
            for j in i + 1..=letters.len() {
                assert_eq!(h.range(i, j), PrefixHashes::hash_word(&letters[i..j]));
            }
        }
    }

    #[test]
    fn append_letter_composes() {
        let letters: Vec<u8> = b"bbabbbabb".iter().map(|c| c - b'a').collect();
        let h = PrefixHashes::new(&letters);
        for (end, &letter) in letters.iter().enumerate().skip(1) {
            let appended = PrefixHashes::append_letter(h.range(0, end), letter);
            assert_eq!(appended, h.range(0, end + 1));
        }
    }
}
