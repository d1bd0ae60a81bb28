//! Step-by-step string rewriting for C(m,n), kept apart from the library's
//! residue-based product so the two can be compared.
//!
//! Rules, applied leftmost-first until none fires:
//! - `s^m -> s`, `t^n -> t`
//! - `s u t -> s^(|u|+1) t` when `u` is nonempty and contains a `t`
//! - `t u s -> t^(|u|+1) s` when `u` is nonempty and contains an `s`
//! - `s^(k+d) t -> s^k t`, `t^(k+d) s -> t^k s`

pub struct Rewriter {
    m: usize,
    n: usize,
    d: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Rewriter {
    pub fn new(m: usize, n: usize) -> Self {
        Rewriter { m, n, d: gcd(m - 1, n - 1) }
    }

    fn step(&self, w: &[u8]) -> Option<Vec<u8>> {
        let len = w.len();
        // powers
        for (letter, period) in [(b's', self.m), (b't', self.n)] {
            let mut i = 0;
            while i < len {
                if w[i] != letter {
                    i += 1;
                    continue;
                }
                let mut j = i;
                while j < len && w[j] == letter {
                    j += 1;
                }
                if j - i >= period {
                    let mut out = w[..i].to_vec();
                    out.extend(std::iter::repeat_n(letter, j - i - (period - 1)));
                    out.extend_from_slice(&w[j..]);
                    return Some(out);
                }
                i = j;
            }
        }
        // s u t and t u s with a mixed interior
        for (a, b) in [(b's', b't'), (b't', b's')] {
            for i in 0..len {
                if w[i] != a {
                    continue;
                }
                for j in (i + 2..len).rev() {
                    if w[j] == b && w[i + 1..j].contains(&b) {
                        let mut out = w[..i].to_vec();
                        out.extend(std::iter::repeat_n(a, j - i));
                        out.push(b);
                        out.extend_from_slice(&w[j + 1..]);
                        return Some(out);
                    }
                }
            }
        }
        // exponent of a block before the other letter, modulo d
        for (a, b) in [(b's', b't'), (b't', b's')] {
            let mut i = 0;
            while i < len {
                if w[i] != a {
                    i += 1;
                    continue;
                }
                let mut j = i;
                while j < len && w[j] == a {
                    j += 1;
                }
                if j < len && w[j] == b && j - i > self.d {
                    let mut out = w[..i].to_vec();
                    out.extend(std::iter::repeat_n(a, j - i - self.d));
                    out.extend_from_slice(&w[j..]);
                    return Some(out);
                }
                i = j;
            }
        }
        None
    }

    pub fn reduce(&self, word: &str) -> String {
        let mut w = word.as_bytes().to_vec();
        while let Some(next) = self.step(&w) {
            w = next;
        }
        String::from_utf8(w).expect("ascii")
    }
}
