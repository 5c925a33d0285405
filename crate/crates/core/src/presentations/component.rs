use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PresentationKind, PresentationSpec};
use crate::error::{Error, Result};
use crate::polyring::{monomials_of_weight, GeneratorContext, GradedPoly, Monomial};
use crate::zlinalg::{FieldQuotient, IntMatrix, LatticeQuotient, Modulus, TorsionCoord};

#[derive(Clone, Debug)]
enum Solver {
    Integral(LatticeQuotient),
    Field(FieldQuotient),
}

/// One weight of a presented ring: the monomials, the relation slice, and the quotient.
///
/// With [`Modulus::Rational`] the quotient is taken over `Z`; its free rank is the
/// dimension over `Q` and `divisors` are the elementary divisors of the relation slice.
/// Over `F_p` the divisors are just `rank` ones.
#[derive(Clone, Debug)]
pub struct DegreeComponent {
    pub kind: PresentationKind,
    pub weight: u32,
    pub modulus: Modulus,
    pub monomials: Vec<Monomial>,
    /// `m*h_i` (or `m*s_i`) for each row of the relation matrix.
    pub relation_labels: Vec<String>,
    pub relation_matrix: IntMatrix,
    pub divisors: Vec<BigInt>,
    /// Indices into `monomials`.
    pub basis: Vec<usize>,
    pub dim: usize,
    solver: Solver,
}

impl DegreeComponent {
    pub fn build(spec: &PresentationSpec, w: u32, modulus: Modulus) -> Result<DegreeComponent> {
        spec.check_weight(w)?;
        let ctx = spec.context();
        let monomials = monomials_of_weight(ctx, w);
        let letter = match spec.kind() {
            PresentationKind::Gauge { .. } => 'h',
            PresentationKind::Bott { .. } => 's',
        };

        let mut labels = Vec::new();
        let mut rows = Vec::new();
        if w >= spec.n() {
            for (i, rel) in spec.relations_up_to(w)? {
                for m in monomials_of_weight(ctx, w - i) {
                    let row = rel
                        .mul_monomial(&m)
                        .coordinates(&monomials)
                        .expect("relation multiples stay within the weight slice");
                    labels.push(if m.is_one() {
                        format!("{letter}{i}")
                    } else {
                        format!("{m}*{letter}{i}")
                    });
                    rows.push(row);
                }
            }
        }
        let matrix = IntMatrix::from_row_vecs(monomials.len(), rows)?;

        // Later monomials (x- and y-heavy) are eliminated first, so the basis keeps the
        // c-monomials whenever the relations allow it.
        let preference: Vec<usize> = (0..monomials.len()).rev().collect();
        let (solver, divisors, basis) = match modulus {
            Modulus::Rational => {
                let q = LatticeQuotient::new(&matrix, &preference);
                let divisors = q.divisors().to_vec();
                let basis = q.basis().to_vec();
                (Solver::Integral(q), divisors, basis)
            }
            Modulus::Prime(p) => {
                let q = FieldQuotient::new(&matrix, &preference, p);
                let divisors = vec![BigInt::one(); q.rank()];
                let basis = q.basis().to_vec();
                (Solver::Field(q), divisors, basis)
            }
        };

        Ok(DegreeComponent {
            kind: spec.kind(),
            weight: w,
            modulus,
            dim: basis.len(),
            monomials,
            relation_labels: labels,
            relation_matrix: matrix,
            divisors,
            basis,
            solver,
        })
    }

    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|&i| self.monomials[i].clone())
            .collect()
    }

    /// Divisors greater than one.
    pub fn torsion_divisors(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.divisors.iter().all(One::is_one)
    }

    /// Whether the basis monomials form a `Z`-basis of the free part (always true over
    /// a field).
    pub fn integral_basis(&self) -> bool {
        match &self.solver {
            Solver::Integral(q) => q.integral_basis(),
            Solver::Field(_) => true,
        }
    }

    /// Normal form of a polynomial whose terms all have this component's weight.
    pub fn normal_form(&self, p: &GradedPoly) -> Result<NormalForm> {
        if let Some(w) = p.homogeneous_weight() {
            if w != self.weight {
                return Err(Error::Argument(format!(
                    "weight {w} polynomial reduced in the weight {} component",
                    self.weight
                )));
            }
        } else if !p.is_zero() {
            return Err(Error::NotHomogeneous);
        }
        let coords = p.coordinates(&self.monomials).ok_or_else(|| {
            Error::ContextMismatch("polynomial uses generators outside the presentation".into())
        })?;
        Ok(self.normal_form_of_vector(&coords))
    }

    pub fn normal_form_of_vector(&self, coords: &[BigInt]) -> NormalForm {
        let (free, torsion) = match &self.solver {
            Solver::Integral(q) => {
                let r = q.reduce(coords);
                (r.free, r.torsion)
            }
            Solver::Field(q) => (
                q.reduce(coords)
                    .into_iter()
                    .map(|v| BigRational::from_integer(BigInt::from(v)))
                    .collect(),
                Vec::new(),
            ),
        };
        NormalForm {
            weight: self.weight,
            modulus: self.modulus,
            basis: self.basis_monomials(),
            free,
            torsion,
        }
    }
}

/// Coordinates of a class over a component's basis, plus torsion residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub weight: u32,
    pub modulus: Modulus,
    pub basis: Vec<Monomial>,
    pub free: Vec<BigRational>,
    pub torsion: Vec<TorsionCoord>,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|t| t.residue.is_zero())
    }

    /// Concatenates normal forms of different weights, highest weight first, so that
    /// rendering yields the class of the sum.
    pub fn merge(parts: &[NormalForm]) -> Option<NormalForm> {
        let mut sorted: Vec<&NormalForm> = parts.iter().collect();
        sorted.sort_by_key(|p| std::cmp::Reverse(p.weight));
        let first = sorted.first()?;
        Some(NormalForm {
            weight: first.weight,
            modulus: first.modulus,
            basis: sorted
                .iter()
                .flat_map(|p| p.basis.iter().cloned())
                .collect(),
            free: sorted.iter().flat_map(|p| p.free.iter().cloned()).collect(),
            torsion: sorted
                .iter()
                .flat_map(|p| p.torsion.iter().cloned())
                .collect(),
        })
    }

    /// Basis monomials with nonzero free coefficient.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.basis
            .iter()
            .zip(&self.free)
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.residue.is_zero())
    }

    /// The free part as a polynomial in the basis monomials, when its coordinates are
    /// integral.
    pub fn free_poly(&self, ctx: &Arc<GeneratorContext>) -> Option<GradedPoly> {
        if !self.free.iter().all(BigRational::is_integer) {
            return None;
        }
        GradedPoly::from_terms(
            ctx,
            self.basis
                .iter()
                .cloned()
                .zip(self.free.iter().map(BigRational::to_integer)),
        )
        .ok()
    }

    /// Free part in polynomial syntax; rational coefficients print as `a/b*m`.
    pub fn render_free(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.basis.iter().zip(&self.free) {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&m.to_string());
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `r mod d` per torsion factor, or `None` when every residue is zero.
    pub fn render_torsion(&self) -> Option<String> {
        if !self.has_torsion() {
            return None;
        }
        let parts: Vec<String> = self
            .torsion
            .iter()
            .map(|t| format!("{} mod {}", t.residue, t.divisor))
            .collect();
        Some(parts.join(", "))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_free())?;
        if let Some(t) = self.render_torsion() {
            write!(f, " + torsion[{t}]")?;
        }
        Ok(())
    }
}
