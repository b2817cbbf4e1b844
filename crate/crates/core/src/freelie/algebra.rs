//! Truncated free Lie algebras in the Lyndon basis, realized inside the
//! tensor algebra.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graded::{BasisElement, GradedSpace, TensorElement, Word};
use crate::lie::LiePresentation;
use crate::lincomb::{LinComb, Vector};
use crate::scalar::{sign, Scalar};

use super::lyndon::{lyndon_words, LyndonWord};

/// A basis element of the free Lie algebra.
///
/// `Square(u)` stands for `[P_u, P_u]` with `u` of odd total degree; it only
/// occurs with the `super-lyndon` feature.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LieBasisWord {
    Lyndon(LyndonWord),
    Square(LyndonWord),
}

impl LieBasisWord {
    /// Tensor order of the bracketing.
    pub fn len(&self) -> usize {
        match self {
            LieBasisWord::Lyndon(w) => w.len(),
            LieBasisWord::Square(w) => 2 * w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The letters, with squares written out as `uu`.
    pub fn letters(&self) -> Word {
        match self {
            LieBasisWord::Lyndon(w) => w.word().clone(),
            LieBasisWord::Square(w) => w.word().concat(w.word()),
        }
    }
}

impl fmt::Display for LieBasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieBasisWord::Lyndon(w) => write!(f, "{w}"),
            LieBasisWord::Square(w) => write!(f, "[{w},{w}]"),
        }
    }
}

/// `ab - (-1)^{|a||b|} ba` for elements homogeneous in parity.
pub(crate) fn graded_commutator(
    a: &LinComb<Word>,
    a_odd: bool,
    b: &LinComb<Word>,
    b_odd: bool,
) -> LinComb<Word> {
    let s = sign(a_odd && b_odd);
    let mut out = LinComb::new();
    for (x, cx) in a {
        for (y, cy) in b {
            let c = cx * cy;
            out.add_term(x.concat(y), c.clone());
            out.add_term(y.concat(x), -(c * &s));
        }
    }
    out
}

/// The Lie polynomial of a Lyndon word: letters map to themselves, longer
/// words to `[P_u, P_v]` over the standard factorization `w = uv`.
pub fn bracketing(w: &LyndonWord, space: &Arc<GradedSpace>) -> Result<TensorElement> {
    for &i in w.word().iter() {
        space.check_index(i)?;
    }
    let mut memo = HashMap::new();
    let terms = expand(w, space, &mut memo);
    TensorElement::from_terms(space.clone(), w.len(), terms)
}

fn expand(
    w: &LyndonWord,
    space: &GradedSpace,
    memo: &mut HashMap<LyndonWord, LinComb<Word>>,
) -> LinComb<Word> {
    if let Some(t) = memo.get(w) {
        return t.clone();
    }
    let t = match w.standard_factorization() {
        None => LinComb::from_term(w.word().clone(), Scalar::one()),
        Some((u, v)) => {
            let pu = expand(&u, space, memo);
            let pv = expand(&v, space, memo);
            graded_commutator(
                &pu,
                space.word_is_odd(u.word()),
                &pv,
                space.word_is_odd(v.word()),
            )
        }
    };
    memo.insert(w.clone(), t.clone());
    t
}

/// The free Lie algebra on a graded space, truncated at bracket length `N`.
#[derive(Clone, Debug)]
pub struct FreeLieAlgebra {
    generators: Arc<GradedSpace>,
    truncation: usize,
    basis: Vec<LieBasisWord>,
    expansions: Vec<LinComb<Word>>,
    index: HashMap<LieBasisWord, usize>,
    /// smallest word of each expansion → (basis position, its coefficient)
    leading: HashMap<Word, (usize, Scalar)>,
}

/// A truncated element of the completed free Lie algebra, in the Lyndon
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLieElement {
    truncation: usize,
    terms: LinComb<LieBasisWord>,
}

impl FreeLieElement {
    pub fn terms(&self) -> &LinComb<LieBasisWord> {
        &self.terms
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            truncation: self.truncation.min(other.truncation),
            terms: self.terms.plus(&other.terms),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            truncation: self.truncation,
            terms: self.terms.scaled(c),
        }
    }
}

impl FreeLieAlgebra {
    pub fn new(generators: Arc<GradedSpace>, truncation: usize) -> Result<Self> {
        let m = generators.dim();
        let has_odd = (0..m).any(|i| generators.is_odd(i));
        if has_odd && !cfg!(feature = "super-lyndon") {
            return Err(Error::InvalidParameter(
                "odd generators need the `super-lyndon` feature".into(),
            ));
        }
        let mut basis = Vec::new();
        let mut expansions = Vec::new();
        let mut memo = HashMap::new();
        let lyndon = lyndon_words(m, truncation);
        for group in &lyndon {
            for w in group {
                expansions.push(expand(w, &generators, &mut memo));
                basis.push(LieBasisWord::Lyndon(w.clone()));
            }
        }
        if has_odd {
            for group in &lyndon {
                for u in group {
                    if 2 * u.len() <= truncation && generators.word_is_odd(u.word()) {
                        let pu = expand(u, &generators, &mut memo);
                        expansions.push(graded_commutator(&pu, true, &pu, true));
                        basis.push(LieBasisWord::Square(u.clone()));
                    }
                }
            }
        }
        // basis order: (length, letters), squares after Lyndon words on ties
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| {
            (basis[a].len(), basis[a].letters()).cmp(&(basis[b].len(), basis[b].letters()))
        });
        let basis: Vec<LieBasisWord> = order.iter().map(|&a| basis[a].clone()).collect();
        let expansions: Vec<LinComb<Word>> = order.iter().map(|&a| expansions[a].clone()).collect();

        let mut leading = HashMap::new();
        for (a, t) in expansions.iter().enumerate() {
            let (w, c) = t.first().expect("bracketings of basis words are nonzero");
            let prev = leading.insert(w.clone(), (a, c.clone()));
            assert!(prev.is_none(), "leading words of the Lyndon basis collide");
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(a, b)| (b, a))
            .collect();
        Ok(Self {
            generators,
            truncation,
            basis,
            expansions,
            index,
            leading,
        })
    }

    pub fn generators(&self) -> &Arc<GradedSpace> {
        &self.generators
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Basis ordered by length, then letters.
    pub fn basis(&self) -> &[LieBasisWord] {
        &self.basis
    }

    pub fn index_of(&self, b: &LieBasisWord) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn dims_by_length(&self) -> Vec<usize> {
        let mut out = vec![0; self.truncation];
        for b in &self.basis {
            out[b.len() - 1] += 1;
        }
        out
    }

    pub fn degree(&self, b: &LieBasisWord) -> i64 {
        self.generators.word_degree(&b.letters())
    }

    pub fn is_odd(&self, b: &LieBasisWord) -> bool {
        self.generators.word_is_odd(&b.letters())
    }

    pub fn zero(&self) -> FreeLieElement {
        FreeLieElement {
            truncation: self.truncation,
            terms: LinComb::new(),
        }
    }

    pub fn element(&self, b: LieBasisWord) -> Result<FreeLieElement> {
        self.from_terms(LinComb::from_term(b, Scalar::one()))
    }

    pub fn generator(&self, i: usize) -> Result<FreeLieElement> {
        self.generators.check_index(i)?;
        self.element(LieBasisWord::Lyndon(LyndonWord::letter(i)))
    }

    pub fn from_terms(&self, terms: LinComb<LieBasisWord>) -> Result<FreeLieElement> {
        for b in terms.keys() {
            if !self.index.contains_key(b) {
                return Err(Error::InvalidParameter(format!(
                    "{b} is not a basis element up to length {}",
                    self.truncation
                )));
            }
        }
        Ok(FreeLieElement {
            truncation: self.truncation,
            terms,
        })
    }

    pub fn expansion(&self, b: &LieBasisWord) -> Option<&LinComb<Word>> {
        self.index_of(b).map(|a| &self.expansions[a])
    }

    /// Image in the tensor algebra.
    pub fn to_tensor(&self, e: &FreeLieElement) -> TensorElement {
        let terms = e.terms.flat_map(|b| self.expansions[self.index[b]].clone());
        TensorElement::truncating(self.generators.clone(), self.truncation, terms)
            .expect("expansions use generator indices")
    }

    /// Lyndon-basis coordinates of a Lie polynomial; fails if `t` is not in
    /// the free Lie algebra.
    pub fn coordinates(&self, t: &LinComb<Word>) -> Result<LinComb<LieBasisWord>> {
        let mut rest = t.filtered(|w| w.order() <= self.truncation);
        let mut out = LinComb::new();
        while let Some((w, c)) = rest.first().map(|(w, c)| (w.clone(), c.clone())) {
            let Some((a, lead)) = self.leading.get(&w) else {
                return Err(Error::NotLie(w.into_letters()));
            };
            let f = c / lead;
            rest.add_scaled(&self.expansions[*a], &-f.clone());
            out.add_term(self.basis[*a].clone(), f);
        }
        Ok(out)
    }

    pub fn from_tensor(&self, t: &TensorElement) -> Result<FreeLieElement> {
        if !crate::graded::same_space(t.space(), &self.generators) {
            return Err(Error::SpaceMismatch);
        }
        Ok(FreeLieElement {
            truncation: self.truncation,
            terms: self.coordinates(t.terms())?,
        })
    }

    /// Bracket in the free Lie algebra; terms longer than the truncation
    /// are dropped.
    pub fn bracket(&self, a: &FreeLieElement, b: &FreeLieElement) -> Result<FreeLieElement> {
        let mut terms = LinComb::new();
        for (x, cx) in &a.terms {
            for (y, cy) in &b.terms {
                if x.len() + y.len() > self.truncation {
                    continue;
                }
                let t = graded_commutator(
                    &self.expansions[self.index[x]],
                    self.is_odd(x),
                    &self.expansions[self.index[y]],
                    self.is_odd(y),
                );
                terms.add_scaled(&self.coordinates(&t)?, &(cx * cy));
            }
        }
        Ok(FreeLieElement {
            truncation: self.truncation,
            terms,
        })
    }

    /// Display name of a basis element: generator names concatenated when
    /// they are single characters, joined by `_` otherwise; squares get an
    /// `sq_` prefix.
    pub fn basis_name(&self, b: &LieBasisWord) -> String {
        let short = self
            .generators
            .basis()
            .iter()
            .all(|g| g.name.chars().count() == 1);
        let join = |w: &Word| {
            let parts: Vec<&str> = w.iter().map(|&i| self.generators.name(i)).collect();
            parts.join(if short { "" } else { "_" })
        };
        match b {
            LieBasisWord::Lyndon(w) => join(w.word()),
            LieBasisWord::Square(w) => format!("sq_{}", join(w.word())),
        }
    }

    pub fn render(&self, e: &FreeLieElement) -> String {
        crate::scalar::format_terms(e.terms.iter().map(|(b, c)| (c.clone(), self.basis_name(b))))
    }
}

/// The free nilpotent Lie algebra `L(V) / F_{c+1}` in the Lyndon basis
/// (ordered by length, then lexicographically).
pub fn free_nilpotent(generators: &[BasisElement], class: usize) -> Result<LiePresentation> {
    if class == 0 {
        return Err(Error::InvalidParameter(
            "nilpotency class must be at least 1".into(),
        ));
    }
    let space = Arc::new(GradedSpace::new(generators.to_vec())?);
    let free = FreeLieAlgebra::new(space, class)?;
    free_nilpotent_from(&free)
}

/// The nilpotent presentation carried by a truncated free Lie algebra; basis
/// index `a` is `free.basis()[a]`.
pub fn free_nilpotent_from(free: &FreeLieAlgebra) -> Result<LiePresentation> {
    let basis = free.basis();
    let elements = basis
        .iter()
        .map(|b| BasisElement::new(free.basis_name(b), free.degree(b)))
        .collect();
    let space = Arc::new(GradedSpace::new(elements)?);
    let mut entries = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate().skip(a) {
            if a == b && !free.is_odd(x) {
                continue;
            }
            if x.len() + y.len() > free.truncation() {
                continue;
            }
            let t = graded_commutator(
                &free.expansions[a],
                free.is_odd(x),
                &free.expansions[b],
                free.is_odd(y),
            );
            let coords = free.coordinates(&t)?;
            let v: Vector = coords.map_keys(|k| free.index[k]);
            if !v.is_zero() {
                entries.push(((a, b), v));
            }
        }
    }
    LiePresentation::new(space, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{make_example, ExampleKind};
    use crate::scalar::int;

    fn even(m: usize) -> Arc<GradedSpace> {
        let names: Vec<String> = (0..m)
            .map(|i| char::from(b'a' + i as u8).to_string())
            .collect();
        Arc::new(GradedSpace::even(&names).unwrap())
    }

    fn lw(v: &[usize]) -> LyndonWord {
        LyndonWord::new(Word::from(v)).unwrap()
    }

    #[test]
    fn bracketing_examples() {
        let v = even(2);
        let ab = bracketing(&lw(&[0, 1]), &v).unwrap();
        assert_eq!(ab.to_string(), "a⊗b - b⊗a");
        let a = bracketing(&lw(&[0]), &v).unwrap();
        assert_eq!(a.to_string(), "a");
        // [a,[a,b]] = aab - 2 aba + baa
        let aab = bracketing(&lw(&[0, 0, 1]), &v).unwrap();
        assert_eq!(aab.terms().len(), 3);
        assert_eq!(aab.coeff(&Word::new(vec![0, 1, 0])), int(-2));
        assert_eq!(aab.coeff(&Word::new(vec![1, 0, 0])), int(1));
    }

    #[test]
    fn leading_word_is_the_lyndon_word() {
        let free = FreeLieAlgebra::new(even(3), 6).unwrap();
        for (b, t) in free.basis.iter().zip(&free.expansions) {
            let (w, c) = t.first().unwrap();
            assert_eq!(w, &b.letters());
            assert_eq!(c, &int(1));
        }
    }

    #[test]
    fn coordinates_round_trip_and_reject_non_lie() {
        let free = FreeLieAlgebra::new(even(2), 5).unwrap();
        let e = free
            .element(LieBasisWord::Lyndon(lw(&[0, 0, 1, 0, 1])))
            .unwrap()
            .plus(
                &free
                    .element(LieBasisWord::Lyndon(lw(&[0, 1])))
                    .unwrap()
                    .scale(&int(3)),
            );
        let t = free.to_tensor(&e);
        assert_eq!(free.from_tensor(&t).unwrap(), e);
        let square = LinComb::from_term(Word::new(vec![0, 0]), int(1));
        assert!(matches!(free.coordinates(&square), Err(Error::NotLie(_))));
    }

    #[test]
    fn free_nilpotent_examples() {
        let gens = [BasisElement::new("a", 0), BasisElement::new("b", 0)];
        let f2 = free_nilpotent(&gens, 2).unwrap();
        assert_eq!(f2.dim(), 3);
        // same bracket table as the Heisenberg algebra
        let h = make_example(ExampleKind::Heisenberg).unwrap();
        assert_eq!(f2.constants(), h.constants());

        let f3 = free_nilpotent(&gens, 3).unwrap();
        assert_eq!(f3.dim(), 5);
        assert!(f3.validate().is_valid());
        assert_eq!(f3.nilpotency_index(), Some(3));

        let one = free_nilpotent(&gens[..1], 4).unwrap();
        assert_eq!(one.dim(), 1);
        assert_eq!(one.nilpotency_index(), Some(1));
    }

    #[test]
    fn free_nilpotent_three_generators_is_valid() {
        let gens: Vec<BasisElement> = ["a", "b", "c"]
            .iter()
            .map(|n| BasisElement::new(*n, 0))
            .collect();
        let f = free_nilpotent(&gens, 4).unwrap();
        // 3 + 3 + 8 + 18
        assert_eq!(f.dim(), 32);
        assert!(f.validate().is_valid());
        assert_eq!(
            f.lower_central_series().unwrap().dims(),
            vec![32, 29, 26, 18, 0]
        );
    }

    #[cfg(not(feature = "super-lyndon"))]
    #[test]
    fn odd_generators_need_the_feature() {
        let gens = [BasisElement::new("a", 1)];
        assert!(free_nilpotent(&gens, 2).is_err());
    }

    #[cfg(feature = "super-lyndon")]
    #[test]
    fn super_lyndon_dimensions_match_the_enveloping_series() {
        // ∏_{even b}(1 - t^|b|)^{-1} ∏_{odd b}(1 + t^|b|) = 1/(1 - m t)
        for (odd, even_count) in [(1usize, 0usize), (1, 1), (2, 0), (2, 1)] {
            let mut gens = Vec::new();
            for i in 0..odd {
                gens.push(BasisElement::new(format!("o{i}"), 1));
            }
            for i in 0..even_count {
                gens.push(BasisElement::new(format!("e{i}"), 0));
            }
            let n = 6;
            let free = FreeLieAlgebra::new(Arc::new(GradedSpace::new(gens).unwrap()), n).unwrap();
            let mut series = vec![0i64; n + 1];
            series[0] = 1;
            for b in free.basis() {
                let l = b.len();
                if free.is_odd(b) {
                    for d in (l..=n).rev() {
                        series[d] += series[d - l];
                    }
                } else {
                    for d in l..=n {
                        series[d] += series[d - l];
                    }
                }
            }
            let m = (odd + even_count) as i64;
            let expected: Vec<i64> = (0..=n as u32).map(|d| m.pow(d)).collect();
            assert_eq!(series, expected, "odd={odd} even={even_count}");
            let p = free_nilpotent_from(&free).unwrap();
            assert!(p.validate().is_valid(), "{:?}", p.validate().violations);
        }
    }
}
