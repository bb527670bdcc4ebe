//! Finite samples of varieties of generating tuples, their evaluation
//! kernels, and maps between them given by trace polynomials.
//!
//! A [`PointVariety`] stands in for a subvariety of `U_{m,n}`; its ideal is
//! approximated by the polynomials of bounded degree vanishing at every
//! sample point. A [`RegularMapSpec`] sends `x` to `(f_1(x), ..., f_l(x))`,
//! and [`morphism_check`] asks at each sample point whether the image still
//! generates `M_n` and lies on the target sample's kernel.

use rayon::prelude::*;

use crate::algebra::{enumerate_words, eval_prefix_closed, NcPoly, TracePoly, DEFAULT_WORD_CAP};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::tuple::{in_u, MatTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVariety {
    field: Field,
    n: usize,
    m: usize,
    label: String,
    points: Vec<MatTuple>,
    point_labels: Vec<String>,
}

/// Validates a sample; every point must generate `M_n`. Points are labelled
/// by their index.
pub fn variety_from_points(points: Vec<MatTuple>, label: &str) -> Result<PointVariety> {
    let labels = (0..points.len()).map(|i| i.to_string()).collect();
    variety_from_labelled_points(points, labels, label)
}

pub fn variety_from_labelled_points(
    points: Vec<MatTuple>,
    point_labels: Vec<String>,
    label: &str,
) -> Result<PointVariety> {
    let first = points.first().ok_or(Error::Empty)?;
    assert_eq!(points.len(), point_labels.len(), "one label per point");
    let (field, n, m) = (first.field().clone(), first.n(), first.m());
    for (i, x) in points.iter().enumerate() {
        if x.n() != n || x.m() != m {
            return Err(Error::ShapeMismatch(format!(
                "point {i} has shape (n={}, m={}), expected (n={n}, m={m})",
                x.n(),
                x.m()
            )));
        }
        if *x.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    if let Some(i) = points.iter().position(|x| !in_u(x).verdict) {
        return Err(Error::PointNotInU(i));
    }
    Ok(PointVariety { field, n, m, label: label.to_string(), points, point_labels })
}

impl PointVariety {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[MatTuple] {
        &self.points
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Basis of the polynomials of degree at most `d` vanishing at every point:
/// the kernel of the matrix whose columns are the evaluated words.
pub fn ideal_kernel_basis(x: &PointVariety, d: usize) -> Result<Vec<NcPoly>> {
    assert!(d >= 1, "degree bound must be at least 1");
    let words = enumerate_words(x.m, d, DEFAULT_WORD_CAP)?;
    let n2 = x.n * x.n;
    let rows = x.points.len() * n2;
    let cols = words.len();
    let requested = rows as u128 * cols as u128;
    if requested > DEFAULT_WORD_CAP as u128 * 16 {
        return Err(Error::BudgetExceeded { requested, cap: DEFAULT_WORD_CAP * 16 });
    }
    let evaluated: Vec<Vec<Matrix>> = x
        .points
        .par_iter()
        .map(|p| eval_prefix_closed(&words, p))
        .collect::<Result<_>>()?;
    let system = Matrix::from_fn(&x.field, rows, cols, |r, c| {
        evaluated[r / n2][c].entries()[r % n2].clone()
    });
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut p = NcPoly::zero(&x.field);
            for (w, c) in words.iter().zip(v) {
                p.add_term(w.clone(), c);
            }
            p
        })
        .collect())
}

/// `x -> (f_1(x), ..., f_l(x))` for trace polynomials `f_i` in `source_m`
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularMapSpec {
    source_m: usize,
    images: Vec<TracePoly>,
}

impl RegularMapSpec {
    pub fn new(source_m: usize, images: Vec<TracePoly>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::Empty);
        }
        for t in &images {
            let used = t.generators_used();
            if used > source_m {
                return Err(Error::GeneratorOutOfRange { index: used, m: source_m });
            }
        }
        Ok(RegularMapSpec { source_m, images })
    }

    /// The map `x -> x` on `m`-tuples.
    pub fn identity(field: &Field, m: usize) -> Self {
        let images = (0..m).map(|i| TracePoly::generator(field, i)).collect();
        RegularMapSpec { source_m: m, images }
    }

    pub fn source_m(&self) -> usize {
        self.source_m
    }

    pub fn target_l(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[TracePoly] {
        &self.images
    }
}

pub fn apply_regular_map(spec: &RegularMapSpec, x: &MatTuple) -> Result<MatTuple> {
    if x.m() != spec.source_m {
        return Err(Error::ShapeMismatch(format!(
            "map expects {} generators, tuple has {}",
            spec.source_m,
            x.m()
        )));
    }
    let mats = spec.images.iter().map(|t| t.eval(x)).collect::<Result<Vec<_>>>()?;
    MatTuple::new(mats)
}

/// Result of checking one sample point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointRecord {
    pub label: String,
    pub image: MatTuple,
    pub in_u_target: bool,
    pub annihilates_target_ideal: bool,
    /// A kernel element of the target that does not vanish at the image.
    pub nonvanishing: Option<NcPoly>,
}

impl PointRecord {
    pub fn passes(&self) -> bool {
        self.in_u_target && self.annihilates_target_ideal
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub records: Vec<PointRecord>,
    /// Degree bound used for the target kernel.
    pub d: usize,
    pub target_kernel_dim: usize,
    pub verdict: bool,
}

impl MorphismReport {
    pub fn failing_points(&self) -> Vec<&str> {
        self.records.iter().filter(|r| !r.passes()).map(|r| r.label.as_str()).collect()
    }
}

/// Pointwise test that `spec` maps the sample `x` into `y`: each image must
/// generate `M_n` and kill the degree-`d` kernel of `y`.
pub fn morphism_check(spec: &RegularMapSpec, x: &PointVariety, y: &PointVariety, d: usize) -> Result<MorphismReport> {
    if x.m != spec.source_m || y.m != spec.target_l() || x.n != y.n {
        return Err(Error::ShapeMismatch(format!(
            "map {} -> {} between samples in (n={}, m={}) and (n={}, m={})",
            spec.source_m,
            spec.target_l(),
            x.n,
            x.m,
            y.n,
            y.m
        )));
    }
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    let kernel = ideal_kernel_basis(y, d)?;
    let records = x
        .points
        .par_iter()
        .zip(&x.point_labels)
        .map(|(p, label)| {
            let image = apply_regular_map(spec, p)?;
            let in_u_target = in_u(&image).verdict;
            let mut nonvanishing = None;
            for q in &kernel {
                if !q.eval(&image)?.is_zero() {
                    nonvanishing = Some(q.clone());
                    break;
                }
            }
            Ok(PointRecord {
                label: label.clone(),
                image,
                in_u_target,
                annihilates_target_ideal: nonvanishing.is_none(),
                nonvanishing,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = records.iter().all(PointRecord::passes);
    Ok(MorphismReport { records, d, target_kernel_dim: kernel.len(), verdict })
}

/// Outcome of [`trace_ideal_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceIdealReport {
    /// `p` does not vanish at this point, so nothing is claimed.
    PreconditionNotMet { point: usize },
    /// `p` vanishes on the sample; lists every `(point, s)` with
    /// `c_s(p) != 0` there.
    Checked { violations: Vec<(usize, usize)> },
}

impl TraceIdealReport {
    pub fn holds(&self) -> bool {
        matches!(self, TraceIdealReport::Checked { violations } if violations.is_empty())
    }
}

/// If `p` vanishes on `x`, checks that every `c_s(p)` does too.
pub fn trace_ideal_check(x: &PointVariety, p: &NcPoly) -> Result<TraceIdealReport> {
    let values = x.points.iter().map(|pt| p.eval(pt)).collect::<Result<Vec<_>>>()?;
    if let Some(point) = values.iter().position(|v| !v.is_zero()) {
        return Ok(TraceIdealReport::PreconditionNotMet { point });
    }
    let mut violations = Vec::new();
    for (i, pt) in x.points.iter().enumerate() {
        for s in 1..=x.n {
            if !p.cs(s).eval(pt)?.is_zero() {
                violations.push((i, s));
            }
        }
    }
    Ok(TraceIdealReport::Checked { violations })
}
