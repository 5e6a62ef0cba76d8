//! Left-greedy Garside normal forms in spherical Artin groups.
//!
//! Simple elements of the positive monoid are identified with elements of the
//! Coxeter group. A word is processed letter by letter:
//!
//! * a positive letter `s` appends the simple element `s`;
//! * an inverse letter uses `X · s⁻¹ = Δ⁻¹ · τ(X) · (w0 s)` where `τ` is
//!   conjugation by `Δ`, which permutes simple elements through the diagram
//!   involution.
//!
//! After each append, one right-to-left sweep of local slides restores the
//! left-weighted condition `L(B) ⊆ R(A)` on every adjacent pair `(A, B)`.

use super::coxeter::{CoxeterGroup, Element};
use super::word::{ArtinWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideNF {
    /// Exponent of `Δ`.
    pub infimum: i64,
    /// Left-weighted simple factors, none trivial and none equal to `Δ`.
    pub factors: Vec<Element>,
}

impl GarsideNF {
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }
}

impl CoxeterGroup {
    /// Make `(a, b)` left-weighted by sliding left descents of `b` into `a`.
    /// Returns whether anything moved.
    fn slide(&self, a: &mut Element, b: &mut Element) -> bool {
        let mut moved = false;
        while let Some(s) = (0..self.rank()).find(|&s| b.has_left_descent(s) && !a.has_right_descent(s)) {
            self.right_mul(a, s);
            self.left_mul(b, s);
            moved = true;
        }
        moved
    }

    fn sweep(&self, factors: &mut [Element]) -> bool {
        let mut moved = false;
        for i in (0..factors.len().saturating_sub(1)).rev() {
            let (left, right) = factors.split_at_mut(i + 1);
            moved |= self.slide(&mut left[i], &mut right[0]);
        }
        moved
    }

    pub fn is_left_weighted(&self, a: &Element, b: &Element) -> bool {
        (0..self.rank()).all(|s| !b.has_left_descent(s) || a.has_right_descent(s))
    }

    pub fn normal_form(&self, word: &ArtinWord) -> GarsideNF {
        let mut infimum = 0i64;
        let mut factors: Vec<Element> = Vec::with_capacity(word.len());
        for &Letter { gen, inverse } in &word.0 {
            if inverse {
                infimum -= 1;
                for f in factors.iter_mut() {
                    *f = self.conjugate_by_longest(f);
                }
                let mut tail = self.longest().clone();
                self.right_mul(&mut tail, gen);
                factors.push(tail);
            } else {
                factors.push(self.generator(gen));
            }
            self.sweep(&mut factors);
            self.tidy(&mut infimum, &mut factors);
        }
        // A sweep after appending to a normal form already yields a normal
        // form; repeat defensively until stable.
        while self.sweep(&mut factors) {
            self.tidy(&mut infimum, &mut factors);
        }
        GarsideNF { infimum, factors }
    }

    fn tidy(&self, infimum: &mut i64, factors: &mut Vec<Element>) {
        while factors.last().is_some_and(Element::is_identity) {
            factors.pop();
        }
        let leading = factors.iter().take_while(|f| *f == self.longest()).count();
        if leading > 0 {
            factors.drain(..leading);
            *infimum += leading as i64;
        }
        // Identity factors can only sit at the end of a left-weighted sequence,
        // but a sweep interrupted by Δ-absorption may leave some inside.
        factors.retain(|f| !f.is_identity());
    }

    pub fn word_equal(&self, a: &ArtinWord, b: &ArtinWord) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    /// A word representing the normal form: `Δ^p` followed by reduced words of the factors.
    pub fn render(&self, nf: &GarsideNF) -> ArtinWord {
        let delta = self.reduced_word(self.longest());
        let mut letters = Vec::new();
        for _ in 0..nf.infimum.unsigned_abs() {
            if nf.infimum > 0 {
                letters.extend(delta.iter().map(|&s| Letter::pos(s)));
            } else {
                letters.extend(delta.iter().rev().map(|&s| Letter::neg(s)));
            }
        }
        for f in &nf.factors {
            letters.extend(self.reduced_word(f).into_iter().map(Letter::pos));
        }
        ArtinWord(letters)
    }

    /// Reduced positive word for `Δ`.
    pub fn delta_word(&self) -> ArtinWord {
        ArtinWord::positive(&self.reduced_word(self.longest()))
    }
}
