use serde::Serialize;

use nodal_core::matrix::rank;
use nodal_core::{Error, Matrix, Polynomial, Result};

use crate::example::NodalExample;

pub const MAX_SPOTCHECK_PRIME: u32 = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    /// `f` or one of its partials does not vanish.
    Smooth,
    Node,
    /// Singular with a degenerate Hessian of the given rank.
    Degenerate(usize),
}

/// First and second partials of a form.
pub struct Hessian {
    nvars: usize,
    first: Vec<Polynomial>,
    /// `second[i * nvars + j] = d_i d_j f`.
    second: Vec<Polynomial>,
}

impl Hessian {
    pub fn new(f: &Polynomial) -> Result<Self> {
        let nvars = f.ring().nvars();
        let first = (0..nvars)
            .map(|i| f.partial_derivative(i))
            .collect::<Result<Vec<_>>>()?;
        let mut second = Vec::with_capacity(nvars * nvars);
        for g in &first {
            for j in 0..nvars {
                second.push(g.partial_derivative(j)?);
            }
        }
        Ok(Self {
            nvars,
            first,
            second,
        })
    }

    fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.second[i * self.nvars + j]
    }
}

/// Node test at a projective point: `f` and all partials vanish and the
/// Hessian of the dehomogenization at a nonzero coordinate has full rank.
pub fn classify_point(f: &Polynomial, hessian: &Hessian, point: &[u32]) -> Result<PointClass> {
    if f.evaluate(point)? != 0 {
        return Ok(PointClass::Smooth);
    }
    for g in &hessian.first {
        if g.evaluate(point)? != 0 {
            return Ok(PointClass::Smooth);
        }
    }
    let chart = point
        .iter()
        .position(|&c| c != 0)
        .ok_or(Error::ZeroPoint(0))?;
    let field = f.ring().field();
    let coords: Vec<usize> = (0..hessian.nvars).filter(|&i| i != chart).collect();
    let mut m = Matrix::zeros(field, coords.len(), coords.len())?;
    for (r, &i) in coords.iter().enumerate() {
        for (c, &j) in coords.iter().enumerate() {
            m.set(r, c, hessian.entry(i, j).evaluate(point)?);
        }
    }
    let rk = rank(&m);
    Ok(if rk == coords.len() {
        PointClass::Node
    } else {
        PointClass::Degenerate(rk)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub prime: u32,
    /// Rational points of the plane `x0 = 0` examined.
    pub points_checked: usize,
    /// Rational points of `V(x0, f2, f1)`.
    pub points_on_locus: usize,
    pub nodes: usize,
    /// Points of the locus that failed the node test, with their class.
    pub failures: Vec<(Vec<u32>, PointClass)>,
}

/// Enumerates the rational points of `V(x0, f2, f1)` over the example's
/// own field and tests each for being a node of `V(f)`. Says nothing about
/// points defined only over extensions.
pub fn rational_node_spotcheck(ex: &NodalExample) -> Result<SpotCheck> {
    let field = ex.ring.field();
    let p = field.modulus();
    if p > MAX_SPOTCHECK_PRIME {
        return Err(Error::Precondition(format!(
            "spot checks enumerate P^2(GF(p)); p = {p} exceeds {MAX_SPOTCHECK_PRIME}"
        )));
    }
    let hessian = Hessian::new(&ex.f)?;
    let mut report = SpotCheck {
        prime: p,
        points_checked: 0,
        points_on_locus: 0,
        nodes: 0,
        failures: Vec::new(),
    };
    // Points [0 : x1 : x2 : x3] normalized so the first nonzero entry is 1.
    let mut points = Vec::new();
    points.push(vec![0, 0, 0, 1]);
    for x3 in 0..p {
        points.push(vec![0, 0, 1, x3]);
    }
    for x2 in 0..p {
        for x3 in 0..p {
            points.push(vec![0, 1, x2, x3]);
        }
    }
    for pt in points {
        report.points_checked += 1;
        if ex.f2.evaluate(&pt)? != 0 || ex.f1.evaluate(&pt)? != 0 {
            continue;
        }
        report.points_on_locus += 1;
        match classify_point(&ex.f, &hessian, &pt)? {
            PointClass::Node => report.nodes += 1,
            other => report.failures.push((pt, other)),
        }
    }
    Ok(report)
}
