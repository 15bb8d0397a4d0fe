use super::{check_params, ConfElement, Edge};
use crate::error::{input, Result};
use crate::exactalg::Scalar;

/// Decides which applicable rewrite fires next; lets tests shuffle the rewrite order.
pub trait RewriteChoice {
    /// Picks an index in `0..candidates` (`candidates ≥ 1`).
    fn choose(&mut self, candidates: usize) -> usize;
}

/// Always rewrites the leftmost colliding pair.
pub struct FirstChoice;

impl RewriteChoice for FirstChoice {
    fn choose(&mut self, _candidates: usize) -> usize {
        0
    }
}

impl<F: FnMut(usize) -> usize> RewriteChoice for F {
    fn choose(&mut self, candidates: usize) -> usize {
        self(candidates) % candidates
    }
}

/// Sign of sorting `word` by `(max, min)`, or `None` if an edge repeats.
/// The sign is only nontrivial for odd-degree generators.
pub(crate) fn sort_with_sign(word: &mut [Edge], odd: bool) -> Option<bool> {
    let mut negate = false;
    // Insertion sort so that each adjacent swap contributes one Koszul sign.
    for a in 1..word.len() {
        let mut b = a;
        while b > 0 && word[b - 1].key() >= word[b].key() {
            if word[b - 1] == word[b] {
                return None;
            }
            word.swap(b - 1, b);
            negate ^= odd;
            b -= 1;
        }
    }
    Some(negate)
}

/// Normal form of a word, firing rewrites in the order picked by `choice`.
pub fn normal_form_with(
    points: usize,
    dim: usize,
    word: &[(usize, usize)],
    choice: &mut dyn RewriteChoice,
) -> Result<ConfElement> {
    check_params(points, dim)?;
    let odd = dim.is_multiple_of(2);
    let mut start = Vec::with_capacity(word.len());
    let mut coeff = Scalar::one();
    for &(i, j) in word {
        if i == 0 || j == 0 || i > points || j > points || i == j {
            return input(format!("generator x_({i},{j}) invalid for {points} points"));
        }
        if i < j {
            start.push(Edge::new(i, j));
        } else {
            start.push(Edge::new(j, i));
            if dim % 2 == 1 {
                coeff = -coeff;
            }
        }
    }
    let mut out = ConfElement::zero(points, dim);
    let mut work = vec![(start, coeff)];
    while let Some((mut w, c)) = work.pop() {
        if (0..w.len()).any(|p| w[p + 1..].contains(&w[p])) {
            continue;
        }
        let mut pairs = Vec::new();
        for p in 0..w.len() {
            for q in p + 1..w.len() {
                if w[p].j() == w[q].j() {
                    pairs.push((p, q));
                }
            }
        }
        if pairs.is_empty() {
            if let Some(negate) = sort_with_sign(&mut w, odd) {
                out.add_term(w, &if negate { -c } else { c });
            }
            continue;
        }
        let (p, q) = pairs[choice.choose(pairs.len())];
        let mut c = c;
        // Bring w[q] next to w[p], passing q - p - 1 generators.
        let moved = w.remove(q);
        w.insert(p + 1, moved);
        if odd && (q - p - 1) % 2 == 1 {
            c = -c;
        }
        if w[p].i() > w[p + 1].i() {
            w.swap(p, p + 1);
            if odd {
                c = -c;
            }
        }
        // x_ac · x_bc = x_ab · x_bc − x_ab · x_ac for a < b < c.
        let (a, b, top) = (w[p].i(), w[p + 1].i(), w[p].j());
        let mut first = w.clone();
        first[p] = Edge::new(a, b);
        first[p + 1] = Edge::new(b, top);
        let mut second = w;
        second[p] = Edge::new(a, b);
        second[p + 1] = Edge::new(a, top);
        work.push((second, -c.clone()));
        work.push((first, c));
    }
    Ok(out)
}
