use super::words::{free_reduce, invert_word, letter_matrices, letter_slot, Word, WordLetter};
use crate::homology::{Mat2, TwistPower};
use std::collections::HashMap;

/// Breadth-first search for a relation among `gens`.
///
/// Every freely reduced word of length at most `depth` is evaluated once.
/// The first word whose matrix was already reached by an earlier word `u`
/// yields the relation `w u^-1`, freely reduced (and nonempty, since distinct
/// reduced words never reduce to each other). The identity is seeded with
/// the empty word, so a word evaluating to the identity is caught directly.
pub fn relation_search(gens: &[TwistPower], depth: usize) -> Option<Word> {
    let mats = letter_matrices(gens);
    let letters: Vec<WordLetter> = (0..gens.len())
        .flat_map(|g| [WordLetter::pos(g), WordLetter::neg(g)])
        .collect();

    let mut seen: HashMap<Mat2, Word> = HashMap::new();
    seen.insert(Mat2::identity(), Vec::new());
    let mut frontier: Vec<(Word, Mat2)> = vec![(Vec::new(), Mat2::identity())];

    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * letters.len());
        for (word, mat) in &frontier {
            for &l in &letters {
                if word.last() == Some(&l.inverse()) {
                    continue;
                }
                let m = mat * &mats[letter_slot(l)];
                let mut w = word.clone();
                w.push(l);
                if let Some(earlier) = seen.get(&m) {
                    let mut rel = w;
                    rel.extend(invert_word(earlier));
                    return Some(free_reduce(&rel));
                }
                seen.insert(m.clone(), w.clone());
                next.push((w, m));
            }
        }
        frontier = next;
    }
    None
}
