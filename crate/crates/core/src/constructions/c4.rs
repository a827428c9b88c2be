//! Five-member FUPBs of `∧²C⁴`: the complex example, and the real canonical
//! family together with the decomposable state that extends it.

use rand::Rng;
use serde_json::json;

use super::{CandidateSet, Claims, Kind};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::scalar::C64;

/// Approximate `d` for `b = 2`, to six digits.
pub const PUBLISHED_D: C64 = C64::new(1.13631, -0.197693);
/// Approximate double root `c` for `b = 2`, to six digits.
pub const PUBLISHED_C: C64 = C64::new(-0.829747, 0.0716405);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C4FupbParams {
    pub b: f64,
    pub c: C64,
    pub d: C64,
}

/// Coefficients `(a₂, a₁, a₀)` of `a₂z² + a₁z + a₀ = 0`, the condition
/// `⟨ψ₄|ψ₅⟩ = 0` in the unknown `z = c̄`, with first derivatives in `d`.
fn quadratic(b: f64, d: C64) -> ([C64; 3], [C64; 3]) {
    let b2 = b * b;
    let beta = b2 + 1.0;
    let one = C64::new(1.0, 0.0);
    let a = -d / (one + d) - b2;
    let da = -one / ((one + d) * (one + d));
    let p = beta - a - a * b2;
    let q = beta - a * b2;
    let dp = -da * beta;
    let dq = -da * b2;
    (
        [p * d, p + q * d - one, q - one],
        [dp * d + p, dp + dq * d + q, dq],
    )
}

fn discriminant_and_derivative(b: f64, d: C64) -> (C64, C64) {
    let ([a2, a1, a0], [da2, da1, da0]) = quadratic(b, d);
    let disc = a1 * a1 - a2 * a0 * 4.0;
    let ddisc = a1 * da1 * 2.0 - (da2 * a0 + a2 * da0) * 4.0;
    (disc, ddisc)
}

fn first_coefficient(b: f64, x: C64) -> C64 {
    -x / (C64::new(1.0, 0.0) + x) - b * b
}

impl C4FupbParams {
    pub fn published() -> Self {
        Self {
            b: 2.0,
            c: PUBLISHED_C,
            d: PUBLISHED_D,
        }
    }

    /// Discriminant of the quadratic (in `c`) expressing `⟨ψ₄|ψ₅⟩ = 0`.
    pub fn discriminant(&self) -> C64 {
        discriminant_and_derivative(self.b, self.d).0
    }

    /// `|⟨ψ₄|ψ₅⟩| / (‖ψ₄‖‖ψ₅‖)`.
    pub fn overlap_45(&self) -> f64 {
        let (p4, p5) = (self.member(self.c), self.member(self.d));
        p4.gram_inner_product(&p5).expect("same space").norm() / (p4.norm() * p5.norm())
    }

    fn member(&self, x: C64) -> Factorization<C64> {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let b = C64::new(self.b, 0.0);
        Factorization::new(
            4,
            vec![vec![first_coefficient(self.b, x), b, one, z], vec![z, z, one, x]],
        )
        .expect("four-dimensional factors")
    }

    fn check_domain(&self) -> Result<()> {
        let finite = self.b.is_finite()
            && [self.c, self.d].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::NonFinite);
        }
        if !(self.b > 0.0) {
            return Err(Error::Domain(format!("b must be positive, got {}", self.b)));
        }
        for (name, x) in [("c", self.c), ("d", self.d)] {
            if x.norm() < 1e-12 || (x + 1.0).norm() < 1e-12 {
                return Err(Error::Domain(format!("{name} must avoid 0 and −1, got {x}")));
            }
        }
        Ok(())
    }

    /// Checks `|⟨ψ₄|ψ₅⟩| ≤ 10⁻⁸` and `|disc| ≤ 10⁻¹⁰`.
    pub fn validate(&self) -> Result<()> {
        self.check_domain()?;
        let ov = self.overlap_45();
        if ov > 1e-8 {
            return Err(Error::Domain(format!("⟨ψ4|ψ5⟩ = {ov:e} is not zero")));
        }
        let disc = self.discriminant().norm();
        if disc > 1e-10 {
            return Err(Error::Domain(format!("discriminant {disc:e} is not zero")));
        }
        Ok(())
    }
}

/// Damped Newton on the discriminant as a function of `d`, then `c` is the
/// double root.
pub fn solve_c4_double_root(b: f64, d0: C64) -> Result<C4FupbParams> {
    const MAX_ITERS: usize = 200;
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Domain(format!("b must be positive, got {b}")));
    }
    let mut d = d0;
    let (mut disc, mut ddisc) = discriminant_and_derivative(b, d);
    let mut iterations = 0;
    while disc.norm() > 1e-14 {
        if iterations == MAX_ITERS || ddisc.norm() == 0.0 || !disc.norm().is_finite() {
            return Err(Error::NoConvergence {
                iterations,
                residual: disc.norm(),
            });
        }
        iterations += 1;
        let step = disc / ddisc;
        let mut lambda = 1.0;
        loop {
            let trial = d - step * lambda;
            let (t_disc, t_ddisc) = discriminant_and_derivative(b, trial);
            if t_disc.norm() < disc.norm() || lambda < 1e-6 {
                d = trial;
                disc = t_disc;
                ddisc = t_ddisc;
                break;
            }
            lambda *= 0.5;
        }
    }
    let ([a2, a1, _], _) = quadratic(b, d);
    let z = -a1 / (a2 * 2.0);
    let params = C4FupbParams { b, c: z.conj(), d };
    params.validate()?;
    Ok(params)
}

fn c4_members(p: &C4FupbParams) -> Vec<Factorization<C64>> {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let b = C64::new(p.b, 0.0);
    let fac = |vs: Vec<Vec<C64>>| Factorization::new(4, vs).expect("four-dimensional factors");
    vec![
        fac(vec![vec![one, z, z, z], vec![z, one, z, z]]),
        fac(vec![vec![z, one, -b, z], vec![z, z, z, one]]),
        fac(vec![vec![one, b, one, z], vec![z, z, one, one]]),
        p.member(p.c),
        p.member(p.d),
    ]
}

fn c4_set(p: &C4FupbParams) -> Result<CandidateSet<C64>> {
    Ok(CandidateSet::new(
        4,
        2,
        Kind::Fupb,
        Claims {
            orthogonal: true,
            independent: true,
        },
        c4_members(p),
    )?
    .with_metadata(
        "params",
        json!({
            "b": p.b,
            "c": {"re": p.c.re, "im": p.c.im},
            "d": {"re": p.d.re, "im": p.d.im},
        }),
    ))
}

/// The five-member complex FUPB of `∧²C⁴`.
pub fn fupb_c4(params: &C4FupbParams) -> Result<CandidateSet<C64>> {
    params.validate()?;
    c4_set(params)
}

/// As [`fupb_c4`] without the double-root check; for approximate parameters
/// such as [`C4FupbParams::published`].
pub fn fupb_c4_unchecked(params: &C4FupbParams) -> Result<CandidateSet<C64>> {
    params.check_domain()?;
    c4_set(params)
}

/// Parameters of the real canonical five-member orthogonal set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealCanonicalParams {
    pub b: f64,
    pub c1: f64,
    pub d1: f64,
    pub e1: f64,
    pub c6: f64,
    pub d6: f64,
    pub e6: f64,
}

fn rhs(b: f64, x6: f64, y6: f64) -> f64 {
    1.0 / (1.0 + x6 * y6) - b * b - 1.0
}

impl RealCanonicalParams {
    /// Nonzero, finite, and the three pairwise orthogonality equations hold
    /// to `10⁻¹⁰` (relative to the size of each side).
    pub fn validate(&self) -> Result<()> {
        let all = [self.b, self.c1, self.d1, self.e1, self.c6, self.d6, self.e6];
        if !all.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if all.contains(&0.0) {
            return Err(Error::Domain("all parameters must be nonzero".into()));
        }
        let eqs = [
            (self.c1 * self.d1, self.c6, self.d6),
            (self.c1 * self.e1, self.c6, self.e6),
            (self.d1 * self.e1, self.d6, self.e6),
        ];
        for (lhs, x6, y6) in eqs {
            if (1.0 + x6 * y6).abs() < 1e-12 {
                return Err(Error::Domain("1 + x₆y₆ vanishes".into()));
            }
            let r = rhs(self.b, x6, y6);
            if (lhs - r).abs() > 1e-10 * (1.0 + lhs.abs().max(r.abs())) {
                return Err(Error::Domain(format!(
                    "orthogonality equation violated: {lhs} vs {r}"
                )));
            }
        }
        Ok(())
    }
}

fn real_member(x1: f64, b: f64, x6: f64) -> Factorization<C64> {
    let r = |v: [f64; 4]| v.map(|x| C64::new(x, 0.0)).to_vec();
    Factorization::new(4, vec![r([x1, -b, 1.0, 0.0]), r([0.0, 0.0, 1.0, x6])])
        .expect("four-dimensional factors")
}

/// The five orthogonal states of the real canonical form.
pub fn real_canonical_members(p: &RealCanonicalParams) -> Result<Vec<Factorization<C64>>> {
    p.validate()?;
    let r = |v: [f64; 4]| v.map(|x| C64::new(x, 0.0)).to_vec();
    Ok(vec![
        Factorization::new(4, vec![r([1.0, 0.0, 0.0, 0.0]), r([0.0, 1.0, 0.0, 0.0])])?,
        Factorization::new(4, vec![r([0.0, 1.0, p.b, 0.0]), r([0.0, 0.0, 0.0, 1.0])])?,
        real_member(p.c1, p.b, p.c6),
        real_member(p.d1, p.b, p.d6),
        real_member(p.e1, p.b, p.e6),
    ])
}

/// `(f₁|1⟩ − b|2⟩ + |3⟩) ∧ (|3⟩ + f₆|4⟩)` with `f₁ = (b⁴+b²)/(c₁d₁e₁)` and
/// `f₆ = b²/(c₆d₆e₆(1+b²))`: a decomposable state orthogonal to all five
/// canonical members.
pub fn real_extension_witness(p: &RealCanonicalParams) -> Result<Factorization<C64>> {
    p.validate()?;
    let b2 = p.b * p.b;
    let f1 = (b2 * b2 + b2) / (p.c1 * p.d1 * p.e1);
    let f6 = b2 / (p.c6 * p.d6 * p.e6 * (1.0 + b2));
    if !f1.is_finite() || !f6.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(real_member(f1, p.b, f6))
}

/// Draws a random solution of the three orthogonality equations.
///
/// `b, c₆, d₆, e₆` are sampled away from zero, then `c₁² = r_cd r_ce / r_de`
/// fixes `c₁` up to sign and `d₁ = r_cd/c₁`, `e₁ = r_ce/c₁`.
pub fn sample_real_canonical_params<R: Rng + ?Sized>(rng: &mut R) -> RealCanonicalParams {
    let draw = |rng: &mut R| {
        let x: f64 = rng.random_range(0.2..3.0);
        if rng.random_bool(0.5) {
            x
        } else {
            -x
        }
    };
    loop {
        let (b, c6, d6, e6) = (draw(rng), draw(rng), draw(rng), draw(rng));
        if [c6 * d6, c6 * e6, d6 * e6]
            .iter()
            .any(|&x| (1.0 + x).abs() < 0.05)
        {
            continue;
        }
        let (rcd, rce, rde) = (rhs(b, c6, d6), rhs(b, c6, e6), rhs(b, d6, e6));
        let sq = rcd * rce / rde;
        if !(sq > 1e-6) || !sq.is_finite() {
            continue;
        }
        let c1 = if rng.random_bool(0.5) { sq.sqrt() } else { -sq.sqrt() };
        let p = RealCanonicalParams {
            b,
            c1,
            d1: rcd / c1,
            e1: rce / c1,
            c6,
            d6,
            e6,
        };
        if p.validate().is_ok() {
            return p;
        }
    }
}
