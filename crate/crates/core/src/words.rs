//! Reduced words over a free generating set and their action on points.

use std::fmt;

use serde::Serialize;

use crate::hgeom::Point;
use crate::isom::Isometry;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.generator)
        } else {
            write!(f, "g{}", self.generator)
        }
    }
}

/// A word read left to right as a matrix product; the rightmost letter acts
/// first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverted())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn evaluate(&self, alphabet: &Alphabet) -> Isometry {
        self.0
            .iter()
            .fold(Isometry::IDENTITY, |acc, l| acc.compose(&alphabet.letter(*l)))
    }

    pub fn apply(&self, alphabet: &Alphabet, z: Point) -> Point {
        self.0
            .iter()
            .rev()
            .fold(z, |p, l| alphabet.letter(*l).apply_point(p))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Generators together with their inverses, indexed by [`Letter`].
#[derive(Clone, Debug)]
pub struct Alphabet {
    forward: Vec<Isometry>,
    backward: Vec<Isometry>,
}

impl Alphabet {
    pub fn new(generators: &[Isometry]) -> Self {
        Alphabet {
            forward: generators.to_vec(),
            backward: generators.iter().map(Isometry::inverse).collect(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.forward.len()
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.forward
    }

    pub fn letter(&self, l: Letter) -> Isometry {
        if l.inverse {
            self.backward[l.generator]
        } else {
            self.forward[l.generator]
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.forward.len()).flat_map(|g| {
            [false, true].into_iter().map(move |inverse| Letter { generator: g, inverse })
        })
    }

    /// Number of nonempty reduced words of length at most `max_len`.
    pub fn reduced_word_count(&self, max_len: usize) -> usize {
        let k = 2 * self.forward.len();
        if k == 0 {
            return 0;
        }
        (1..=max_len).map(|n| k * (k - 1).pow(n as u32 - 1)).sum()
    }

    /// Depth-first walk over every nonempty reduced word `w` of length at most
    /// `max_len`, calling `visit(w, w·z)`.
    ///
    /// Words grow on the left, so each step costs one Möbius evaluation.
    pub fn for_each_word_image<F>(&self, z: Point, max_len: usize, mut visit: F)
    where
        F: FnMut(&[Letter], Point),
    {
        // stored reversed: stack[0] is the rightmost letter
        let mut stack: Vec<Letter> = Vec::with_capacity(max_len);
        let mut word: Vec<Letter> = Vec::with_capacity(max_len);
        self.walk(z, max_len, &mut stack, &mut word, &mut visit);
    }

    fn walk<F>(&self, z: Point, max_len: usize, stack: &mut Vec<Letter>, word: &mut Vec<Letter>, visit: &mut F)
    where
        F: FnMut(&[Letter], Point),
    {
        if stack.len() == max_len {
            return;
        }
        let first = stack.last().copied();
        for l in self.letters() {
            if first == Some(l.inverted()) {
                continue;
            }
            let image = self.letter(l).apply_point(z);
            stack.push(l);
            word.clear();
            word.extend(stack.iter().rev());
            visit(word, image);
            self.walk(image, max_len, stack, word, visit);
            stack.pop();
        }
    }

    /// All nonempty reduced words of length at most `max_len`, shortest first.
    pub fn reduced_words(&self, max_len: usize) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        let mut frontier: Vec<Word> = vec![Word::default()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in self.letters() {
                    if w.0.last() == Some(&l.inverted()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.0.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}
