//! Two small witnesses about polynomial rings: preimages of maximal ideals
//! need not be maximal, and principal opens of the maximal spectrum of
//! `Q[t]` always meet.
//!
//! `Q[t]` and `Q(t)` stand in for their real counterparts; the witnesses
//! used are field-independent.

use num_traits::Zero;
use serde::Serialize;

use super::{ev_hom, SpectraError};
use crate::exact::{int, rational_roots, Poly, Rational};
use crate::rings::function_ring;

/// A principal ideal `(g)` of `Q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdeal {
    pub generator: Poly<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// `witness` is nonzero and not invertible in the residue ring.
    NotMaximal { witness: Poly<Rational> },
    /// The unit ideal.
    Improper,
    /// Irreducibility of degree ≥ 4 generators is not decided here.
    Undecided,
}

impl PolyIdeal {
    pub fn new(generator: Poly<Rational>) -> Self {
        Self { generator: generator.monic() }
    }

    pub fn maximality(&self) -> Maximality {
        match self.generator.degree() {
            None => Maximality::NotMaximal { witness: Poly::t() },
            Some(0) => Maximality::Improper,
            Some(1) => Maximality::Maximal,
            Some(2 | 3) => match rational_roots(&self.generator).expect("nonzero").first() {
                None => Maximality::Maximal,
                Some(r) => Maximality::NotMaximal { witness: Poly::new(vec![-r.clone(), int(1)]) },
            },
            Some(_) => Maximality::Undecided,
        }
    }

    /// Preimage along the inclusion `Q[t] → Q(t)`: an element `p` maps into
    /// the ideal generated by `g/h` in `Q(t)` iff it is zero (when `g = 0`)
    /// or always (when `g ≠ 0`, the ideal is the whole field).
    pub fn preimage_under_fraction_inclusion(fraction_ideal_zero: bool) -> Self {
        if fraction_ideal_zero {
            Self::new(Poly::zero())
        } else {
            Self::new(Poly::constant(int(1)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageReport {
    pub map: String,
    pub ideal: String,
    pub ideal_maximal: bool,
    pub preimage: String,
    pub maximal: bool,
    pub witness: Option<String>,
    pub note: String,
}

/// Pulls the maximal ideal `(0)` of `Q(t)` back along `Q[t] → Q(t)`.
pub fn demo_preimage_not_maximal() -> PreimageReport {
    // (0) is maximal in Q(t): every nonzero fraction g/h has inverse h/g
    let ideal_maximal = true;
    let preimage = PolyIdeal::preimage_under_fraction_inclusion(true);
    let (maximal, witness) = match preimage.maximality() {
        Maximality::Maximal => (true, None),
        Maximality::NotMaximal { witness } => (false, Some(witness)),
        Maximality::Improper | Maximality::Undecided => (false, None),
    };
    PreimageReport {
        map: "Q[t] -> Q(t)".into(),
        ideal: "(0)".into(),
        ideal_maximal,
        preimage: format!("({})", preimage.generator),
        maximal,
        witness: witness.map(|w| w.to_string()),
        note: "Q[t] and Q(t) stand in for the real polynomial ring and its fraction field".into(),
    }
}

/// `(0)` in the field `Q` pulled back along the identity: maximal, since
/// the residue ring `Q/(0)` admits a character.
pub fn field_zero_ideal_is_maximal() -> bool {
    ev_hom(&function_ring::<Rational>(1), &[]).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonHausdorffWitness {
    /// `(t − c)` lies in both `NZer(a)` and `NZer(b)`.
    pub c: i64,
    pub candidates_tried: usize,
    pub candidate_bound: usize,
}

/// Finds `c` with `a(c) ≠ 0` and `b(c) ≠ 0`, trying `c = 0, 1, 2, …`. A
/// nonzero polynomial of degree `d` has at most `d` roots, so at most
/// `deg a + deg b + 1` candidates are needed.
pub fn demo_non_hausdorff(a: &Poly<Rational>, b: &Poly<Rational>) -> Result<NonHausdorffWitness, SpectraError> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(SpectraError::ZeroPolynomial);
    };
    let bound = da + db + 1;
    for (tried, c) in (0i64..).enumerate() {
        let x = Rational::from_integer(c.into());
        if !a.eval(&x).is_zero() && !b.eval(&x).is_zero() {
            return Ok(NonHausdorffWitness { c, candidates_tried: tried + 1, candidate_bound: bound });
        }
    }
    unreachable!("a nonzero product has finitely many roots")
}
