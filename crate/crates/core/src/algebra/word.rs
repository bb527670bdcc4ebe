use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::tuple::MatTuple;

/// Default cap on the number of words any enumeration may produce.
pub const DEFAULT_WORD_CAP: usize = 1 << 20;

/// A monomial `X_{i_1} X_{i_2} ... X_{i_r}` in the free algebra.
///
/// Letters are stored zero-based; `X1` is letter 0. The empty word is the
/// identity. Words are ordered by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Word from zero-based letters.
    pub fn from_letters(letters: impl IntoIterator<Item = usize>) -> Self {
        Word(letters.into_iter().map(|l| l as u16).collect())
    }

    /// Word from one-based generator indices, as written `X1 X2 ...`.
    pub fn from_generators(gens: &[usize]) -> Self {
        Self::from_letters(gens.iter().map(|g| g - 1))
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i as u16])
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|l| *l as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of generators the word needs (largest letter + 1).
    pub fn generators_used(&self) -> usize {
        self.0.iter().map(|l| *l as usize + 1).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `X_i * self`
    pub fn prepend(&self, i: usize) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(i as u16);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// `self * X_i`
    pub fn append(&self, i: usize) -> Word {
        let mut letters = self.0.clone();
        letters.push(i as u16);
        Word(letters)
    }

    /// The least cyclic rotation of the word.
    pub fn min_rotation(&self) -> Word {
        let len = self.0.len();
        (0..len.max(1))
            .map(|k| {
                let mut l = self.0.clone();
                l.rotate_left(k.min(len));
                Word(l)
            })
            .min()
            .unwrap()
    }

    /// Evaluates the word at a tuple; the empty word gives the identity.
    pub fn eval(&self, x: &MatTuple) -> Result<Matrix> {
        let m = x.m();
        if let Some(bad) = self.0.iter().find(|l| **l as usize >= m) {
            return Err(Error::GeneratorOutOfRange { index: *bad as usize + 1, m });
        }
        let mut acc: Option<Matrix> = None;
        for l in &self.0 {
            let xi = &x.mats()[*l as usize];
            acc = Some(match acc {
                None => xi.clone(),
                Some(a) => &a * xi,
            });
        }
        Ok(acc.unwrap_or_else(|| Matrix::identity(x.field(), x.n())))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "X{}", l + 1)?;
        }
        Ok(())
    }
}

fn word_count(m: usize, max_len: usize) -> u128 {
    if m == 1 {
        return max_len as u128 + 1;
    }
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(m as u128);
    }
    total
}

/// All words of length at most `max_len` in `m` letters, ordered by length
/// and then lexicographically.
pub fn enumerate_words(m: usize, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    assert!(m >= 1, "at least one generator is required");
    let count = word_count(m, max_len);
    if count > cap as u128 {
        return Err(Error::BudgetExceeded { requested: count, cap });
    }
    let mut words = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| (0..m).map(move |i| w.append(i)))
            .collect();
        words.extend(level.iter().cloned());
    }
    Ok(words)
}

/// Evaluations of `words` at `x`, reusing prefixes. `words` must be closed
/// under dropping the last letter, as produced by [`enumerate_words`].
pub(crate) fn eval_prefix_closed(words: &[Word], x: &MatTuple) -> Result<Vec<Matrix>> {
    use std::collections::HashMap;
    let mut cache: HashMap<&Word, usize> = HashMap::with_capacity(words.len());
    let mut out: Vec<Matrix> = Vec::with_capacity(words.len());
    for w in words {
        let value = match w.0.split_last() {
            None => Matrix::identity(x.field(), x.n()),
            Some((last, prefix)) => {
                let prefix = Word(prefix.to_vec());
                let last = *last as usize;
                if last >= x.m() {
                    return Err(Error::GeneratorOutOfRange { index: last + 1, m: x.m() });
                }
                if prefix.is_empty() {
                    x.mats()[last].clone()
                } else {
                    match cache.get(&prefix) {
                        Some(&idx) => &out[idx] * &x.mats()[last],
                        None => w.eval(x)?,
                    }
                }
            }
        };
        cache.insert(w, out.len());
        out.push(value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let words = enumerate_words(2, 2, DEFAULT_WORD_CAP).unwrap();
        let shown: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["1", "X1", "X2", "X1*X1", "X1*X2", "X2*X1", "X2*X2"]);
        let words = enumerate_words(1, 3, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(words.len(), 4);
        assert_eq!(words[3], Word::from_generators(&[1, 1, 1]));
        assert_eq!(enumerate_words(3, 0, DEFAULT_WORD_CAP).unwrap(), vec![Word::empty()]);
        assert_eq!(enumerate_words(3, 4, DEFAULT_WORD_CAP).unwrap().len(), 121);
    }

    #[test]
    fn enumeration_is_sorted() {
        let words = enumerate_words(3, 3, DEFAULT_WORD_CAP).unwrap();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget() {
        assert_eq!(
            enumerate_words(2, 10, 100),
            Err(Error::BudgetExceeded { requested: 2047, cap: 100 })
        );
    }

    #[test]
    fn rotation() {
        let w = Word::from_generators(&[2, 1, 2]);
        assert_eq!(w.min_rotation(), Word::from_generators(&[1, 2, 2]));
        assert_eq!(Word::empty().min_rotation(), Word::empty());
    }
}
