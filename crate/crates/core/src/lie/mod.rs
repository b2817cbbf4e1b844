//! Finite-dimensional graded Lie algebras given by structure constants.

mod examples;
mod filtration;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::lincomb::Vector;
use crate::scalar::{sign, Scalar};

pub use examples::{make_example, ExampleKind};
pub use filtration::{Adapted, FiltrationReport, LinearMap};

/// Structure constants `[x_i, x_j] = Σ c_ij^l x_l` on a graded basis.
///
/// Only pairs `i < j` and diagonal pairs are stored; the rest follow from
/// graded antisymmetry `[x_j, x_i] = -(-1)^{|x_i||x_j|} [x_i, x_j]`.
#[derive(Clone)]
pub struct LiePresentation {
    space: Arc<GradedSpace>,
    constants: BTreeMap<(usize, usize), Vector>,
    table: Vec<Vec<Vector>>,
    filtration: OnceLock<Result<FiltrationReport>>,
}

impl fmt::Debug for LiePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiePresentation")
            .field("space", &self.space)
            .field("constants", &self.constants)
            .finish()
    }
}

impl PartialEq for LiePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.constants == other.constants
    }
}

impl Eq for LiePresentation {}

/// A failed Lie algebra axiom together with the offending basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `[x_i, x_i] ≠ 0` for an even basis element.
    Antisymmetry {
        i: usize,
    },
    /// `[x_i, x_j]` has a component outside degree `|x_i| + |x_j|`.
    Degree {
        i: usize,
        j: usize,
        found: usize,
    },
    Jacobi {
        i: usize,
        j: usize,
        l: usize,
    },
    /// The lower central series stalls at a nonzero term.
    NotNilpotent {
        stalled_dim: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // one-based in messages, like every external format
        match self {
            Violation::Antisymmetry { i } => {
                write!(
                    f,
                    "antisymmetry: [e{0}, e{0}] must vanish for even e{0}",
                    i + 1
                )
            }
            Violation::Degree { i, j, found } => write!(
                f,
                "degree additivity: [e{}, e{}] has a component along e{}",
                i + 1,
                j + 1,
                found + 1
            ),
            Violation::Jacobi { i, j, l } => {
                write!(
                    f,
                    "Jacobi identity fails on triple (e{}, e{}, e{})",
                    i + 1,
                    j + 1,
                    l + 1
                )
            }
            Violation::NotNilpotent { stalled_dim } => write!(
                f,
                "nilpotency: lower central series stalls at a term of dimension {stalled_dim}"
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    /// At most one entry per axiom: the first failing basis tuple.
    pub violations: Vec<Violation>,
    pub filtration: Option<FiltrationReport>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LiePresentation {
    /// Builds a presentation from bracket entries `((i, j), [x_i, x_j])`.
    ///
    /// Entries may be given for either order of a pair; giving both with
    /// inconsistent values is an error.
    pub fn new(
        space: Arc<GradedSpace>,
        entries: impl IntoIterator<Item = ((usize, usize), Vector)>,
    ) -> Result<Self> {
        let mut given: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for ((i, j), v) in entries {
            space.check_index(i)?;
            space.check_index(j)?;
            for &l in v.keys() {
                space.check_index(l)?;
            }
            let (key, value) = if i <= j {
                ((i, j), v)
            } else {
                let s = sign(space.is_odd(i) && space.is_odd(j));
                ((j, i), v.scaled(&-s))
            };
            if let Some(prev) = given.get(&key) {
                if *prev != value {
                    return Err(Error::ConflictingBracket { i: key.0, j: key.1 });
                }
            }
            given.insert(key, value);
        }
        given.retain(|_, v| !v.is_zero());
        Ok(Self::from_constants(space, given))
    }

    fn from_constants(
        space: Arc<GradedSpace>,
        constants: BTreeMap<(usize, usize), Vector>,
    ) -> Self {
        let m = space.dim();
        let mut table = vec![vec![Vector::new(); m]; m];
        for (&(i, j), v) in &constants {
            table[i][j] = v.clone();
            if i != j {
                let s = sign(space.is_odd(i) && space.is_odd(j));
                table[j][i] = v.scaled(&-s);
            }
        }
        Self {
            space,
            constants,
            table,
            filtration: OnceLock::new(),
        }
    }

    /// The abelian Lie algebra on `space`.
    pub fn abelian(space: Arc<GradedSpace>) -> Self {
        Self::from_constants(space, BTreeMap::new())
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Stored entries: pairs `i < j` plus diagonal pairs.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.constants
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::from_term(i, Scalar::from_integer(1.into()))
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        for &i in v.keys() {
            self.space.check_index(i)?;
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        self.check_vector(a)?;
        self.check_vector(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, ca) in a {
            for (&j, cb) in b {
                let t = &self.table[i][j];
                if !t.is_zero() {
                    out.add_scaled(t, &(ca * cb));
                }
            }
        }
        out
    }

    fn sign(&self, i: usize, j: usize) -> Scalar {
        sign(self.space.is_odd(i) && self.space.is_odd(j))
    }

    /// Graded Jacobi residual on a basis triple.
    pub fn jacobi_residual(&self, i: usize, j: usize, l: usize) -> Vector {
        let e = |k| self.basis_vector(k);
        let mut r = self
            .bracket_unchecked(&e(i), self.bracket_basis(j, l))
            .scaled(&self.sign(i, l));
        r.add_assign(
            &self
                .bracket_unchecked(&e(j), self.bracket_basis(l, i))
                .scaled(&self.sign(j, i)),
        );
        r.add_assign(
            &self
                .bracket_unchecked(&e(l), self.bracket_basis(i, j))
                .scaled(&self.sign(l, j)),
        );
        r
    }

    /// Checks antisymmetry, degree additivity, the graded Jacobi identity
    /// and nilpotency. Never fails; problems are reported.
    pub fn validate(&self) -> ValidationReport {
        let m = self.dim();
        let mut violations = Vec::new();
        if let Some(i) = (0..m).find(|&i| !self.space.is_odd(i) && !self.table[i][i].is_zero()) {
            violations.push(Violation::Antisymmetry { i });
        }
        'degree: for (&(i, j), v) in &self.constants {
            let d = self.space.degree(i) + self.space.degree(j);
            for &l in v.keys() {
                if self.space.degree(l) != d {
                    violations.push(Violation::Degree { i, j, found: l });
                    break 'degree;
                }
            }
        }
        'jacobi: for i in 0..m {
            for j in i..m {
                for l in j..m {
                    if !self.jacobi_residual(i, j, l).is_zero() {
                        violations.push(Violation::Jacobi { i, j, l });
                        break 'jacobi;
                    }
                }
            }
        }
        let filtration = match self.lower_central_series() {
            Ok(f) => Some(f.clone()),
            Err(Error::NotNilpotent { .. }) => {
                violations.push(Violation::NotNilpotent {
                    stalled_dim: filtration::stalled_dim(self),
                });
                None
            }
            Err(_) => None,
        };
        ValidationReport {
            violations,
            filtration,
        }
    }

    /// Fails with [`Error::InvalidPresentation`] unless every axiom holds.
    pub fn ensure_valid(&self) -> Result<&FiltrationReport> {
        let report = self.validate();
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidPresentation(v.to_string()));
        }
        self.lower_central_series()
    }

    /// Least `k` with `F_{k+1} = 0`, if the algebra is nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        self.lower_central_series().ok().map(|f| f.nilpotency_index)
    }

    /// Whether `map` (from this algebra to `target`) preserves brackets on
    /// all basis pairs.
    pub fn is_morphism_to(&self, target: &LiePresentation, map: &LinearMap) -> bool {
        let m = self.dim();
        (0..m).all(|i| {
            (0..m).all(|j| {
                let lhs = map.apply(self.bracket_basis(i, j));
                let rhs = target.bracket_unchecked(
                    &map.apply(&self.basis_vector(i)),
                    &map.apply(&self.basis_vector(j)),
                );
                lhs == rhs
            })
        })
    }
}
