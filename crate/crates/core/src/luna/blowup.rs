//! Blowup of the slice at the origin: charts, strict transforms, the torus
//! slice inside a chart, and contact of the discriminant with the
//! exceptional divisor.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{LunaError, SLICE_VARS};
use crate::exact::IntMatrix;
use crate::git::{cubic_blowup_chart, WeightSystem};
use crate::poly::{LaurentPolynomial, Ring, Substitution};

/// The two blowup charts used: where `a0` or where `ah0` generates the
/// ideal of the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlowupChart {
    U0,
    U0Hat,
}

impl BlowupChart {
    /// The coordinate cutting out the exceptional divisor.
    pub fn exceptional(self) -> &'static str {
        match self {
            BlowupChart::U0 => "a0",
            BlowupChart::U0Hat => "ah0",
        }
    }

    pub fn vars(self) -> [&'static str; 6] {
        match self {
            BlowupChart::U0 => ["a0", "t1", "t2", "th0", "th1", "th2"],
            BlowupChart::U0Hat => ["t0", "t1", "t2", "ah0", "th1", "th2"],
        }
    }

    pub fn ring(self, conductor: u32) -> Arc<Ring> {
        Ring::new(&self.vars(), conductor).expect("distinct names")
    }

    /// Homogeneous coordinate whose chart this is.
    pub fn homogeneous(self) -> &'static str {
        match self {
            BlowupChart::U0 => "T0",
            BlowupChart::U0Hat => "Th0",
        }
    }

    /// Torus weights on the chart coordinates.
    pub fn weights(self) -> WeightSystem {
        cubic_blowup_chart(self.homogeneous()).expect("known chart")
    }

    /// Substitution from slice coordinates to chart coordinates:
    /// `e -> e` and every other slice coordinate `c -> e * t_c`.
    pub fn substitution(self, source: &Ring, conductor: u32) -> Result<Substitution, LunaError> {
        let target = source.without(&SLICE_VARS)?.union(&self.ring(conductor))?;
        let e = self.exceptional();
        let mut s = Substitution::identity(source, &target);
        for v in SLICE_VARS {
            if source.index_of(v).is_none() {
                continue;
            }
            if v == e {
                s.set_text(v, e)?;
            } else {
                let t = v.replacen('a', "t", 1);
                s.set_text(v, &format!("{e}*{t}"))?;
            }
        }
        Ok(s)
    }
}

impl fmt::Display for BlowupChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlowupChart::U0 => "U0",
            BlowupChart::U0Hat => "U0hat",
        })
    }
}

/// Total and strict transforms of a product of factors on one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartTransform {
    pub chart: BlowupChart,
    /// Power of the exceptional coordinate split off the total transform.
    pub exceptional_power: i64,
    /// Strict transform of each factor with its own exceptional power.
    pub factors: Vec<(i64, LaurentPolynomial)>,
    /// Strict transform of the product.
    pub residual: LaurentPolynomial,
}

/// Pulls a product of slice polynomials back to a blowup chart and splits
/// off the exceptional divisor, factor by factor and for the product.
pub fn blowup_chart_transform(factors: &[LaurentPolynomial], chart: BlowupChart) -> Result<ChartTransform, LunaError> {
    let first = factors.first().ok_or(LunaError::NotACubicForm)?;
    let conductor = first.conductor();
    let s = chart.substitution(first.ring(), conductor)?;
    let e = chart.exceptional();
    let mut out = Vec::new();
    let mut total = LaurentPolynomial::from_int(s.target(), 1);
    for f in factors {
        let pulled = f.substitute(&s)?;
        total = &total * &pulled;
        out.push(pulled.extract_variable_power(e)?);
    }
    let (exceptional_power, residual) = total.extract_variable_power(e)?;
    let product = out
        .iter()
        .fold(LaurentPolynomial::from_int(s.target(), 1), |a, (_, g)| &a * g);
    debug_assert_eq!(product, residual);
    debug_assert_eq!(out.iter().map(|(k, _)| k).sum::<i64>(), exceptional_power);
    Ok(ChartTransform {
        chart,
        exceptional_power,
        factors: out,
        residual,
    })
}

/// A slice for the torus inside a blowup chart, obtained by setting two
/// coordinates with independent weights to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSlice {
    pub chart: BlowupChart,
    pub normalized: [String; 2],
    pub coordinates: Vec<String>,
    /// Determinant of the weights of the normalized coordinates; its
    /// absolute value is the order of the residual finite group.
    pub determinant: BigInt,
    ring: Arc<Ring>,
}

impl TorusSlice {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Restricts a chart polynomial to the slice.
    pub fn restrict(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial, LunaError> {
        let target = f.ring().without(&[&self.normalized[0], &self.normalized[1]])?;
        let mut s = Substitution::identity(f.ring(), &target);
        for n in &self.normalized {
            s.set_text(n, "1")?;
        }
        Ok(f.substitute(&s)?)
    }
}

/// Sets the two `normalized` chart coordinates to one. Fails when their
/// weights are linearly dependent.
pub fn torus_luna_slice(chart: BlowupChart, normalized: [&str; 2], conductor: u32) -> Result<TorusSlice, LunaError> {
    let w = chart.weights();
    let rows = vec![w.weight(normalized[0])?.to_vec(), w.weight(normalized[1])?.to_vec()];
    let det = IntMatrix::from_rows(&rows).expect("2x2").det().expect("square");
    if det.is_zero() {
        return Err(LunaError::SingularNormalization(det));
    }
    let coordinates: Vec<String> = chart
        .vars()
        .iter()
        .filter(|v| !normalized.contains(v))
        .map(|v| v.to_string())
        .collect();
    Ok(TorusSlice {
        chart,
        normalized: normalized.map(str::to_string),
        ring: Ring::new(&coordinates, conductor)?,
        coordinates,
        determinant: det,
    })
}

/// The slices used for the two charts: `t1 = th1 = 1` on `U0` and
/// `th1 = th2 = 1` on `U0Hat`.
pub fn standard_torus_slice(chart: BlowupChart, conductor: u32) -> TorusSlice {
    let normalized = match chart {
        BlowupChart::U0 => ["t1", "th1"],
        BlowupChart::U0Hat => ["th1", "th2"],
    };
    torus_luna_slice(chart, normalized, conductor).expect("independent weights")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Contact {
    Transversal,
    Tangential { order: u32 },
}

impl fmt::Display for Contact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contact::Transversal => f.write_str("transversal"),
            Contact::Tangential { order } => write!(f, "tangential order {order}"),
        }
    }
}

/// Contact along one common component `{e = 0, v = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityReport {
    pub component: String,
    /// Lowest power of `v` in the factor restricted to `e = 0`.
    pub contact: Contact,
    /// Rank of the Jacobian of `(e, f)` at the generic point of the
    /// component.
    pub jacobian_rank: usize,
}

/// Compares a factor `f` with the divisor `{e = 0}` along each common
/// component, with the other coordinates left as formal symbols. The
/// verdict is computed twice: from the Jacobian rank and from the order of
/// vanishing along the transverse line; the two must agree.
pub fn transversality_diagnostic(f: &LaurentPolynomial, exceptional: &str) -> Result<Vec<TransversalityReport>, LunaError> {
    let ring = f.ring().clone();
    let mut on_e = Substitution::identity(&ring, &ring);
    on_e.set_text(exceptional, "0")?;
    let f0 = f.substitute(&on_e)?;
    if f0.is_zero() {
        return Err(LunaError::ContainsExceptional);
    }
    if f0.as_constant().is_some() {
        return Err(LunaError::NotMeeting);
    }
    let mut out = Vec::new();
    for v in ring.vars() {
        if v == exceptional {
            continue;
        }
        let (k, _) = f0.extract_variable_power(v)?;
        if k <= 0 {
            continue;
        }
        let mut on_comp = on_e.clone();
        on_comp.set_text(v, "0")?;
        let mut rank = 1;
        for x in ring.vars() {
            if x != exceptional && !f.partial(x)?.substitute(&on_comp)?.is_zero() {
                rank = 2;
            }
        }
        let contact = if k == 1 {
            Contact::Transversal
        } else {
            Contact::Tangential { order: k as u32 }
        };
        assert_eq!(rank == 2, k == 1, "Jacobian and order disagree along {v}");
        out.push(TransversalityReport {
            component: v.clone(),
            contact,
            jacobian_rank: rank,
        });
    }
    if out.is_empty() {
        return Err(LunaError::UnsupportedComponent);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::DEFAULT_CONDUCTOR as N;
    use crate::luna::discriminant_factors;

    fn p(r: &Arc<Ring>, s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(r, s).unwrap()
    }

    #[test]
    fn transforms_on_both_charts() {
        let fs = discriminant_factors(N);
        let t = blowup_chart_transform(&fs, BlowupChart::U0Hat).unwrap();
        assert_eq!(t.exceptional_power, 6);
        let r = t.residual.ring().clone();
        let want = ["27*t0^2 + 4*ah0", "27*t1^2 + 4*ah0*th1^3", "27*t2^2 + 4*ah0*th2^3"];
        for ((k, g), w) in t.factors.iter().zip(want) {
            assert_eq!(*k, 2);
            assert_eq!(*g, p(&r, w));
        }
        let t = blowup_chart_transform(&fs, BlowupChart::U0).unwrap();
        assert_eq!(t.exceptional_power, 6);
        let r = t.residual.ring().clone();
        assert_eq!(
            t.residual,
            p(&r, "(27 + 4*a0*th0^3)*(27*t1^2 + 4*a0*th1^3)*(27*t2^2 + 4*a0*th2^3)")
        );
        let c = LaurentPolynomial::from_int(fs[0].ring(), 5);
        assert_eq!(blowup_chart_transform(&[c], BlowupChart::U0).unwrap().exceptional_power, 0);
    }

    #[test]
    fn torus_slices() {
        let s = standard_torus_slice(BlowupChart::U0Hat, N);
        assert_eq!(s.coordinates, ["t0", "t1", "t2", "ah0"]);
        assert_eq!(s.determinant, BigInt::from(12));
        let s = standard_torus_slice(BlowupChart::U0, N);
        assert_eq!(s.coordinates, ["a0", "t2", "th0", "th2"]);
        assert_eq!(
            torus_luna_slice(BlowupChart::U0, ["th0", "a0"], N),
            Err(LunaError::SingularNormalization(BigInt::zero()))
        );
    }

    #[test]
    fn restricted_discriminant() {
        let fs = discriminant_factors(N);
        let t = blowup_chart_transform(&fs, BlowupChart::U0Hat).unwrap();
        let s = standard_torus_slice(BlowupChart::U0Hat, N);
        let g = s.restrict(&t.residual).unwrap();
        assert_eq!(g, p(s.ring(), "(27*t0^2 + 4*ah0)*(27*t1^2 + 4*ah0)*(27*t2^2 + 4*ah0)"));
    }

    #[test]
    fn contact_orders() {
        let r = Ring::new(&["t0", "t1", "t2", "ah0"], N).unwrap();
        let rep = transversality_diagnostic(&p(&r, "27*t0^2 + 4*ah0"), "ah0").unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].component, "t0");
        assert_eq!(rep[0].contact, Contact::Tangential { order: 2 });
        assert_eq!(rep[0].jacobian_rank, 1);

        let r2 = Ring::new(&["y1", "y2"], N).unwrap();
        let rep = transversality_diagnostic(&p(&r2, "y1"), "y2").unwrap();
        assert_eq!(rep[0].contact, Contact::Transversal);
        assert_eq!(rep[0].jacobian_rank, 2);

        let r0 = Ring::new(&["a0", "t2", "th0", "th2"], N).unwrap();
        let rep = transversality_diagnostic(&p(&r0, "27*t2^2 + 4*a0*th2^3"), "a0").unwrap();
        assert_eq!(rep[0].contact, Contact::Tangential { order: 2 });
        assert_eq!(
            transversality_diagnostic(&p(&r0, "27 + 4*a0*th0^3"), "a0"),
            Err(LunaError::NotMeeting)
        );
    }
}
