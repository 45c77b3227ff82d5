//! Synthetic finite complex measures with known atomic parts.
//!
//! A `Measure` is a list of atoms plus absolutely continuous components with
//! closed-form transforms, and optionally the middle-thirds Cantor measure
//! (d = 1 only) as a singular continuous stress component. Ground truth for
//! every recovery experiment comes from `true_atom`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupContext, GroupPoint};

/// Two atoms closer than this are merged on construction.
pub const ATOM_MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub position: GroupPoint,
    pub weight: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AcKind {
    /// Unit-mass Gaussian density with the given center and width (standard
    /// deviation). On the torus this is the wrapped (periodized) Gaussian.
    Gaussian { center: Vec<f64>, width: f64 },
    /// Uniform unit-mass density on an axis-aligned box.
    Box {
        center: Vec<f64>,
        half_widths: Vec<f64>,
    },
    /// Normalized Lebesgue measure; torus only.
    Lebesgue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcComponent {
    pub kind: AcKind,
    pub coefficient: Complex64,
}

/// Middle-thirds Cantor measure: the law of `Σ_{k≥1} ε_k 3^{-k}` with the
/// `ε_k` independent and uniform on {0, 2}. Only valid in dimension 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorComponent {
    pub coefficient: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    ctx: GroupContext,
    atoms: Vec<Atom>,
    ac: Vec<AcComponent>,
    cantor: Option<CantorComponent>,
}

impl Measure {
    pub fn new(
        ctx: GroupContext,
        atoms: Vec<Atom>,
        ac: Vec<AcComponent>,
        cantor: Option<CantorComponent>,
    ) -> Result<Self> {
        ctx.validate()?;
        let d = ctx.dim();
        for a in &atoms {
            if a.position.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: a.position.dim(),
                });
            }
            if !a.weight.re.is_finite() || !a.weight.im.is_finite() {
                return Err(Error::InvalidArgument("atom weight must be finite".into()));
            }
        }
        for c in &ac {
            validate_ac(&ctx, &c.kind)?;
        }
        if cantor.is_some() && d != 1 {
            return Err(Error::InvalidArgument(
                "Cantor component requires dimension 1".into(),
            ));
        }
        if cantor.is_some() && ctx.is_finite() {
            return Err(Error::InvalidArgument(
                "Cantor component not defined on finite groups".into(),
            ));
        }
        if ctx.is_finite() && (!ac.is_empty()) {
            return Err(Error::InvalidArgument(
                "finite groups admit only atomic measures".into(),
            ));
        }

        // Merge atoms within the position tolerance, adding weights.
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged
                .iter_mut()
                .find(|b| b.position.distance(&ctx, &a.position) <= ATOM_MERGE_TOL)
            {
                Some(b) => b.weight += a.weight,
                None => merged.push(a),
            }
        }
        Ok(Measure {
            ctx,
            atoms: merged,
            ac,
            cantor,
        })
    }

    /// Purely atomic measure.
    pub fn atomic(ctx: GroupContext, atoms: Vec<Atom>) -> Result<Self> {
        Measure::new(ctx, atoms, vec![], None)
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn ac(&self) -> &[AcComponent] {
        &self.ac
    }

    pub fn cantor(&self) -> Option<&CantorComponent> {
        self.cantor.as_ref()
    }

    pub fn is_purely_atomic(&self) -> bool {
        self.ac.is_empty() && self.cantor.is_none()
    }

    /// Upper bound on the total variation: Σ|weights| + Σ|coefficients|.
    pub fn total_variation_bound(&self) -> f64 {
        let a: f64 = self.atoms.iter().map(|a| a.weight.norm()).sum();
        let c: f64 = self.ac.iter().map(|c| c.coefficient.norm()).sum();
        let k = self.cantor.as_ref().map_or(0.0, |c| c.coefficient.norm());
        a + c + k
    }

    /// The translate μ_{x0}: atoms and AC centers shifted by x0. The Cantor
    /// component cannot be translated (its transform is pinned to [0,1)), so
    /// translation is rejected for measures carrying one unless x0 = 0.
    pub fn translate(&self, x0: &GroupPoint) -> Result<Measure> {
        if x0.dim() != self.ctx.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.dim(),
                got: x0.dim(),
            });
        }
        if self.cantor.is_some() && !x0.is_identity() {
            return Err(Error::Unsupported(
                "translation of a Cantor component is not supported".into(),
            ));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                Ok(Atom {
                    position: a.position.add(&self.ctx, x0)?,
                    weight: a.weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ac = self
            .ac
            .iter()
            .map(|c| {
                let kind = match &c.kind {
                    AcKind::Gaussian { center, width } => AcKind::Gaussian {
                        center: shift_center(&self.ctx, center, x0),
                        width: *width,
                    },
                    AcKind::Box {
                        center,
                        half_widths,
                    } => AcKind::Box {
                        center: shift_center(&self.ctx, center, x0),
                        half_widths: half_widths.clone(),
                    },
                    AcKind::Lebesgue => AcKind::Lebesgue,
                };
                Ok(AcComponent {
                    kind,
                    coefficient: c.coefficient,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Measure::new(self.ctx.clone(), atoms, ac, self.cantor.clone())
    }

    /// μ({x}): the weight of the atom within `ATOM_MERGE_TOL` of x, else 0.
    /// AC and Cantor components contribute no atoms.
    pub fn true_atom(&self, x: &GroupPoint) -> Complex64 {
        self.atoms
            .iter()
            .find(|a| a.position.distance(&self.ctx, x) <= ATOM_MERGE_TOL)
            .map_or(Complex64::new(0.0, 0.0), |a| a.weight)
    }
}

fn shift_center(ctx: &GroupContext, center: &[f64], x0: &GroupPoint) -> Vec<f64> {
    center
        .iter()
        .zip(x0.coords())
        .map(|(c, s)| {
            let v = c + s;
            if ctx.is_torus() {
                crate::group::wrap_unit(v)
            } else {
                v
            }
        })
        .collect()
}

fn validate_ac(ctx: &GroupContext, kind: &AcKind) -> Result<()> {
    let d = ctx.dim();
    match kind {
        AcKind::Gaussian { center, width } => {
            if center.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: center.len(),
                });
            }
            if !(*width > 0.0) {
                return Err(Error::InvalidArgument(
                    "gaussian width must be strictly positive".into(),
                ));
            }
        }
        AcKind::Box {
            center,
            half_widths,
        } => {
            if center.len() != d || half_widths.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: center.len().max(half_widths.len()),
                });
            }
            if half_widths.iter().any(|&h| !(h > 0.0)) {
                return Err(Error::InvalidArgument(
                    "box half-widths must be strictly positive".into(),
                ));
            }
        }
        AcKind::Lebesgue => {
            if !ctx.is_torus() {
                return Err(Error::InvalidArgument(
                    "lebesgue component is torus-only".into(),
                ));
            }
        }
    }
    Ok(())
}
