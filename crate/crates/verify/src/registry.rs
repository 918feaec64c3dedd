//! The check manifest. Adding a check means adding a row to [`CHECKS`] and,
//! if no existing producer fits, a producer function below it.

use std::collections::BTreeSet;

use kirwan_core::exact::{int, smith_normal_form, sublattice_index, IntMatrix, Rational};
use kirwan_core::git::{
    continuous_stabilizer, cubic_blowup_chart, cubic_blowup_charts, cubic_slice_weights, exceptional_stabilizers,
    is_semistable, minimal_unstable_supports, stabilizer_prime_support,
};
use kirwan_core::ledger::{self, KEquivalenceVerdict};
use kirwan_core::luna::{blowup_chart_transform, standard_torus_slice, transversality_diagnostic, BlowupChart};
use kirwan_core::luna::{case_screens, eckardt_multiplicity, finite_part_screen, PermutationScreen};
use kirwan_core::luna::{discriminant_factors, discriminant_in_slice, orbit_normal_space, three_a2_cubic};
use kirwan_core::motivic::{self, projective_class, MotivicClass};
use kirwan_core::toric::{self, cubic, format_point};
use kirwan_core::wps::{audit_all_charts, format_age, WeightedProjectiveSpace};
use num_bigint::BigInt;

use crate::{Check, Context, Outcome};

type R = Result<Outcome, String>;

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn yes_no(b: bool, yes: &str, no: &str) -> String {
    if b { yes } else { no }.to_string()
}

pub const CHECKS: &[Check] = &[
    // exact-kernel
    Check {
        id: "kernel.smith-invariants",
        module: "exact-kernel",
        paper_ref: "stabilizers.chart-u0.t1-t2",
        quote: "Z^2 / <(-3,3), (-6,-3)> = Z3 x Z9",
        expected: "3, 9",
        producer: smith_invariants,
    },
    Check {
        id: "kernel.sublattice-index",
        module: "exact-kernel",
        paper_ref: "toric.s3-sublattice",
        quote: "(0,1,-1), (3,-8,-1), (-3,7,-7) span an index 27 sublattice",
        expected: "27",
        producer: sublattice_index_check,
    },
    // symbolic-poly
    Check {
        id: "poly.discriminant",
        module: "symbolic-poly",
        paper_ref: "slice.discriminant",
        quote: "Delta = prod_i (27 a_i^2 + 4 ah_i^3), mult_0 = 6",
        expected: "multiplicity 6; singular-point certificate holds",
        producer: discriminant_check,
    },
    // wps-geometry
    Check {
        id: "wps.reid-tai",
        module: "wps-geometry",
        paper_ref: "git-quotient.singularities",
        quote: "min age >= 1 on every chart of P(1,2,3,4,5)",
        expected: "min age 3/2; quasi-reflections 0; canonical",
        producer: reid_tai,
    },
    Check {
        id: "wps.singular-locus",
        module: "wps-geometry",
        paper_ref: "git-quotient.singularities",
        quote: "Sing P(1,2,3,4,5) = {P2} u {P4} u L",
        expected: "{x0=0,x2=0,x4=0}; P2; P4",
        producer: singular_locus,
    },
    Check {
        id: "wps.canonical-class",
        module: "wps-geometry",
        paper_ref: "git-quotient.canonical-class",
        quote: "K = O(-15), 4K Cartier",
        expected: "K = O(-15); Cartier index 4",
        producer: canonical_class,
    },
    // torus-git
    Check {
        id: "git.unstable-supports",
        module: "torus-git",
        paper_ref: "slice.stability",
        quote: "unstable iff T_i = Th_i = 0 for some i",
        expected: "{T0,Th0}; {T1,Th1}; {T2,Th2}",
        producer: unstable_supports,
    },
    Check {
        id: "git.strata-semistable",
        module: "torus-git",
        paper_ref: "exceptional-divisor.strata",
        quote: "every stratum of the table is semistable",
        expected: "10 of 10 semistable",
        producer: strata_semistable,
    },
    Check {
        id: "git.stabilizer-kernels",
        module: "torus-git",
        paper_ref: "stabilizers.exceptional-divisor",
        quote: "Z3xZ9, Z21, Z21, Z16, Z2, Z3, Z2xZ6",
        expected: "Z3 x Z9; Z21; Z21; Z16; Z2; Z3; Z2 x Z6",
        producer: stabilizer_kernels,
    },
    Check {
        id: "git.prime-support",
        module: "torus-git",
        paper_ref: "stabilizers.exceptional-divisor",
        quote: "no stabilizer on the exceptional divisor has order divisible by 5",
        expected: "{2, 3, 7}; 5 excluded",
        producer: prime_support,
    },
    // luna-3a2
    Check {
        id: "luna.normal-space",
        module: "luna-3a2",
        paper_ref: "slice.normal-space",
        quote: "dim T_orbit = 13; normal space spanned by x_i^3, x_i^2 x3",
        expected: "tangent dimension 13; x0^2*x3, x0^3, x1^2*x3, x1^3, x2^2*x3, x2^3",
        producer: normal_space,
    },
    Check {
        id: "luna.discriminant-transform",
        module: "luna-3a2",
        paper_ref: "kirwan-blowup.discriminant-charts",
        quote: "pullback of Delta = e^6 * strict transform in each chart",
        expected: "U0: 6 [4*a0*th0^3 + 27; 4*a0*th1^3 + 27*t1^2; 4*a0*th2^3 + 27*t2^2]; \
U0hat: 6 [27*t0^2 + 4*ah0; 4*ah0*th1^3 + 27*t1^2; 4*ah0*th2^3 + 27*t2^2]",
        producer: discriminant_transform,
    },
    Check {
        id: "luna.transversality",
        module: "luna-3a2",
        paper_ref: "kirwan-blowup.discriminant-contact",
        quote: "strict transform of D meets the exceptional divisor non-transversally",
        expected: "U0: tangential order 2; U0hat: tangential order 2",
        producer: transversality,
    },
    Check {
        id: "luna.finite-part",
        module: "luna-3a2",
        paper_ref: "kirwan-blowup.discriminant-contact",
        quote: "no stabilizer element fixes a generic point of D_tilde cap E",
        expected: "identity image: scalars only; transpositions: ratio dimension 1 < 2; trivial",
        producer: finite_part,
    },
    Check {
        id: "luna.eckardt",
        module: "luna-3a2",
        paper_ref: "slice.eckardt",
        quote: "three invariant quintics, mult_0 = 5 each, total 15",
        expected: "3 components; multiplicities 5, 5, 5; total 15",
        producer: eckardt,
    },
    Check {
        id: "luna.case-screen",
        module: "luna-3a2",
        paper_ref: "slice.eckardt-stabilizer",
        quote: "only subcase II(ii) survives",
        expected: "passing subcases II(ii)",
        producer: case_screen,
    },
    // toric-quotient
    Check {
        id: "toric.kernel-lattice",
        module: "toric-quotient",
        paper_ref: "toric.polytope",
        quote: "M = ker(gamma) in Z^6",
        expected: "same lattice; vertices correspond; same f-vector",
        producer: kernel_lattice,
    },
    Check {
        id: "toric.vertices",
        module: "toric-quotient",
        paper_ref: "toric.polytope",
        quote: "P_a = conv of the eight listed columns",
        expected: "(-3/7, 1, 2) (-3/8, 1, 2) (0, -1/8, 2) (0, 0, 2) (0, 0, 3) (0, 1/7, 20/7) (3/8, -7/8, 11/4) (3/7, -8/7, 20/7)",
        producer: vertices,
    },
    Check {
        id: "toric.face-lattice",
        module: "toric-quotient",
        paper_ref: "toric.polytope",
        quote: "P_a is combinatorially a cube; the toric variety is simplicial",
        expected: "f-vector (8,12,6); combinatorial cube; simplicial",
        producer: face_lattice,
    },
    Check {
        id: "toric.s3-action",
        module: "toric-quotient",
        paper_ref: "toric.s3-action",
        quote: "tau^2 = sigma^3 = 1, tau sigma tau = sigma^-1; fixed vertices (0,0,3), (0,0,2)",
        expected: "relations hold; permutes vertices; fixes (0, 0, 2) (0, 0, 3)",
        producer: s3_action,
    },
    Check {
        id: "toric.sublattice",
        module: "toric-quotient",
        paper_ref: "toric.s3-sublattice",
        quote: "S3 permutes (0,1,-1), (3,-8,-1), (-3,7,-7)",
        expected: "index 27; tau [0,2,1]; permutation action",
        producer: sublattice,
    },
    Check {
        id: "toric.basis-order",
        module: "toric-quotient",
        paper_ref: "toric.s3-standard-basis",
        quote: "in the basis (0,0,1), (-1,3,0), (1,-2,2) the action is standard",
        expected: "listed order conjugates: no; conjugating orders [1,2,0]",
        producer: basis_order,
    },
    // motivic-ring
    Check {
        id: "motivic.strata-total",
        module: "motivic-ring",
        paper_ref: "exceptional-divisor.class",
        quote: "[D] = L^3 + L^2 + L + 1 = [P^3]",
        expected: "L^3 + L^2 + L + 1 = [P^3]",
        producer: strata_total,
    },
    Check {
        id: "motivic.odd-coset",
        module: "motivic-ring",
        paper_ref: "exceptional-divisor.free-quotients",
        quote: "odd elements of (+-1)^3 x| S3 act without fixed points",
        expected: "24 of 24 fixed-point-free; oracle agrees on 48",
        producer: odd_coset,
    },
    Check {
        id: "motivic.toric-route",
        module: "motivic-ring",
        paper_ref: "exceptional-divisor.class",
        quote: "sum over S3-orbits of torus orbits",
        expected: "L^3 + L^2 + L + 1",
        producer: toric_route,
    },
    Check {
        id: "motivic.trivial-control",
        module: "motivic-ring",
        paper_ref: "exceptional-divisor.class",
        quote: "cube with trivial group: (L+1)^3",
        expected: "L^3 + 3*L^2 + 3*L + 1",
        producer: trivial_control,
    },
    // divisor-ledger
    Check {
        id: "ledger.hodge-relations",
        module: "divisor-ledger",
        paper_ref: "ball-quotient.canonical-class",
        quote: "K = 5 lambda - 5/6 D_n - 1/2 R, D_n = 24 lambda, R = 150 lambda",
        expected: "K = -90*lambda; O(1) = 6*lambda",
        producer: hodge,
    },
    Check {
        id: "ledger.k-bbg4",
        module: "divisor-ledger",
        paper_ref: "ball-quotient.intersection-numbers",
        quote: "K^4 = 3375/8",
        expected: "3375/8",
        producer: k_bbg4,
    },
    Check {
        id: "ledger.lambda4",
        module: "divisor-ledger",
        paper_ref: "ball-quotient.intersection-numbers",
        quote: "lambda^4 = 1/155520",
        expected: "1/155520",
        producer: lambda4,
    },
    Check {
        id: "ledger.riemann-hurwitz",
        module: "divisor-ledger",
        paper_ref: "git-quotient.riemann-hurwitz",
        quote: "K_GIT = -(15/4) D",
        expected: "K_GIT = -15/4 D; invariant theory -15/4 D",
        producer: riemann_hurwitz,
    },
    Check {
        id: "ledger.kirwan-discrepancy",
        module: "divisor-ledger",
        paper_ref: "kirwan-blowup.discrepancy",
        quote: "a(D_3A2) = 20",
        expected: "20",
        producer: kirwan,
    },
    Check {
        id: "ledger.toroidal-discrepancy",
        module: "divisor-ledger",
        paper_ref: "toroidal.discrepancy",
        quote: "a(T) = 16",
        expected: "16",
        producer: toroidal,
    },
    Check {
        id: "ledger.pullback-coefficients",
        module: "divisor-ledger",
        paper_ref: "toroidal.pullbacks",
        quote: "p^* D_n,m = D_n,m + 3 T, p^* R_m = R_m + 12 T",
        expected: "3, 12",
        producer: pullbacks,
    },
    Check {
        id: "ledger.boundary-intersections",
        module: "divisor-ledger",
        paper_ref: "toroidal.boundary-intersections",
        quote: "T_m^4 = -240, T^4 = -1/216",
        expected: "marked -240; unmarked -1/216",
        producer: boundary,
    },
    Check {
        id: "ledger.k-obg4",
        module: "divisor-ledger",
        paper_ref: "toroidal.canonical-intersection",
        quote: "K^4 = 25589/216",
        expected: "25589/216",
        producer: k_obg4,
    },
    Check {
        id: "ledger.k-equivalence",
        module: "divisor-ledger",
        paper_ref: "k-equivalence.certificate",
        quote: "the Kirwan blowup and the toroidal compactification are not K-equivalent",
        expected: "NOT-K-EQUIVALENT (p=5, val_p(coeff)=4, val_p(rhs)=0)",
        producer: k_equivalence,
    },
    Check {
        id: "ledger.toroidal-consistency",
        module: "divisor-ledger",
        paper_ref: "toroidal.marked-canonical",
        quote: "5 lambda - 2/3 (D + 3T) + T = 5 lambda - 2/3 D - T",
        expected: "marked identity holds; unmarked discrepancy 16 both routes",
        producer: toroidal_consistency,
    },
    Check {
        id: "ledger.f3-counts",
        module: "divisor-ledger",
        paper_ref: "ball-quotient.cusps",
        quote: "P(F3^5): 40 isotropic, 36 short, 45 long; 9 and 18 orthogonal to h",
        expected: "(40, 36, 45) (9, 18)",
        producer: f3_counts,
    },
    Check {
        id: "ledger.surface-example",
        module: "divisor-ledger",
        paper_ref: "example.cuspidal-cubic",
        quote: "K_M'^2 = 8, K_Mbar^2 = 19/3",
        expected: "K_M'^2 = 8; K_Mbar^2 = 19/3",
        producer: surface,
    },
];

pub fn registry() -> &'static [Check] {
    CHECKS
}

fn smith_invariants(_: &Context) -> R {
    let s = smith_normal_form(&IntMatrix::from_i64(&[&[-3, 3], &[-6, -3]]));
    let f: Vec<String> = s.invariant_factors().iter().map(BigInt::to_string).collect();
    Ok(f.join(", ").into())
}

fn sublattice_index_check(_: &Context) -> R {
    let b = IntMatrix::from_rows(&cubic::reference().sublattice).map_err(e)?;
    Ok(sublattice_index(&b).map_err(e)?.to_string().into())
}

fn discriminant_check(ctx: &Context) -> R {
    let c = discriminant_in_slice(ctx.conductor).map_err(e)?;
    let m = c.discriminant.multiplicity_at_origin().map_err(e)?;
    Ok(format!("multiplicity {m}; singular-point certificate {}", yes_no(c.holds(), "holds", "fails")).into())
}

fn p12345() -> Result<WeightedProjectiveSpace, String> {
    WeightedProjectiveSpace::new(&[1, 2, 3, 4, 5]).map_err(e)
}

fn reid_tai(_: &Context) -> R {
    let audits = audit_all_charts(&p12345()?);
    let min = audits.iter().filter_map(|(_, _, a)| a.min_age.clone()).min();
    let refl: usize = audits.iter().map(|(_, _, a)| a.quasi_reflections.len()).sum();
    let canonical = audits.iter().all(|(_, _, a)| a.canonical);
    Ok(format!(
        "min age {}; quasi-reflections {refl}; {}",
        format_age(&min),
        yes_no(canonical, "canonical", "not canonical")
    )
    .into())
}

fn singular_locus(_: &Context) -> R {
    let s: Vec<String> = p12345()?.singular_locus().iter().map(ToString::to_string).collect();
    Ok(s.join("; ").into())
}

fn canonical_class(_: &Context) -> R {
    let p = p12345()?;
    let k = p.canonical_degree();
    Ok(format!("K = O({k}); Cartier index {}", p.cartier_index(k)).into())
}

fn unstable_supports(_: &Context) -> R {
    let w = cubic_slice_weights();
    let mut v: Vec<String> = minimal_unstable_supports(&w)
        .map_err(e)?
        .into_iter()
        .map(|s| format!("{{{}}}", w.vanishing(s).join(",")))
        .collect();
    v.sort();
    Ok(v.join("; ").into())
}

fn strata_semistable(_: &Context) -> R {
    let w = cubic_slice_weights();
    let t = motivic::strata().map_err(e)?;
    let mut ok = 0;
    for row in &t.rows {
        let s = w.parse_pattern(&row.pattern).ok_or_else(|| format!("bad pattern {}", row.pattern))?;
        if is_semistable(&w, s).map_err(e)?.is_semistable() {
            ok += 1;
        }
    }
    Ok(format!("{ok} of {} semistable", t.rows.len()).into())
}

fn stabilizer_kernels(_: &Context) -> R {
    let cases: [(&str, &[&str]); 7] = [
        ("T0", &["t1", "t2"]),
        ("T0", &["t1", "th2"]),
        ("T0", &["t2", "th1"]),
        ("T0", &["th1", "th2"]),
        ("T0", &["th0", "th1", "th2"]),
        ("T0", &["th0", "t1", "t2"]),
        ("Th0", &["th1", "th2"]),
    ];
    let mut out = Vec::new();
    for (chart, support) in cases {
        let w = cubic_blowup_chart(chart).map_err(e)?;
        let s = w.support(support).map_err(e)?;
        out.push(continuous_stabilizer(&w, s).to_string());
    }
    Ok(out.join("; ").into())
}

fn prime_support(_: &Context) -> R {
    let w = cubic_slice_weights();
    let pts = exceptional_stabilizers(&w, &cubic_blowup_charts()).map_err(e)?;
    // S3 x mu4 acting on the slice
    let primes = stabilizer_prime_support(&BigInt::from(24), &pts);
    let list: Vec<String> = primes.iter().map(BigInt::to_string).collect();
    let five = yes_no(!primes.contains(&BigInt::from(5)), "5 excluded", "5 present");
    Ok(format!("{{{}}}; {five}", list.join(", ")).into())
}

fn normal_space(ctx: &Context) -> R {
    let ns = orbit_normal_space(&three_a2_cubic(ctx.conductor)).map_err(e)?;
    let mut m: Vec<String> = ns.normal_basis.iter().map(ToString::to_string).collect();
    m.sort();
    Ok(format!("tangent dimension {}; {}", ns.tangent_dimension, m.join(", ")).into())
}

fn discriminant_transform(ctx: &Context) -> R {
    let fs = discriminant_factors(ctx.conductor);
    let mut parts = Vec::new();
    for chart in [BlowupChart::U0, BlowupChart::U0Hat] {
        let t = blowup_chart_transform(&fs, chart).map_err(e)?;
        let f: Vec<String> = t.factors.iter().map(|(_, g)| g.to_string()).collect();
        parts.push(format!("{chart}: {} [{}]", t.exceptional_power, f.join("; ")));
    }
    Ok(parts.join("; ").into())
}

fn transversality(ctx: &Context) -> R {
    let fs = discriminant_factors(ctx.conductor);
    let mut parts = Vec::new();
    let mut contacts = BTreeSet::new();
    for chart in [BlowupChart::U0, BlowupChart::U0Hat] {
        let t = blowup_chart_transform(&fs, chart).map_err(e)?;
        let slice = standard_torus_slice(chart, ctx.conductor);
        let mut here = BTreeSet::new();
        for (_, g) in &t.factors {
            let g = slice.restrict(g).map_err(e)?;
            match transversality_diagnostic(&g, chart.exceptional()) {
                Ok(reports) => here.extend(reports.into_iter().map(|r| r.contact.to_string())),
                Err(kirwan_core::luna::LunaError::NotMeeting) => {}
                Err(err) => return Err(err.to_string()),
            }
        }
        let v: Vec<String> = here.iter().cloned().collect();
        parts.push(format!("{chart}: {}", v.join(", ")));
        contacts.extend(here);
    }
    let note: Vec<String> = contacts.into_iter().collect();
    Ok(Outcome::new(parts.join("; ")).with_note(note.join(", ")))
}

fn finite_part(_: &Context) -> R {
    let f = finite_part_screen();
    let mut id = "identity image: missing".to_string();
    let mut ratio = BTreeSet::new();
    for p in &f.permutations {
        match p {
            PermutationScreen::Diagonal { perm: [0, 1, 2], image } => {
                id = format!("identity image: {}", yes_no(image.only_scalars(), "scalars only", "non-scalar elements"));
            }
            PermutationScreen::Exchanging { ratio_dimension, required, .. } => {
                ratio.insert(format!("ratio dimension {ratio_dimension} < {required}"));
            }
            _ => {}
        }
    }
    let r: Vec<String> = ratio.into_iter().collect();
    Ok(format!("{id}; transpositions: {}; {}", r.join(", "), yes_no(f.trivial(), "trivial", "non-trivial")).into())
}

fn eckardt(ctx: &Context) -> R {
    let a = eckardt_multiplicity(ctx.conductor).map_err(e)?;
    let m: Vec<String> = a.components.iter().map(|c| c.multiplicity.to_string()).collect();
    Ok(format!("{} components; multiplicities {}; total {}", a.components.len(), m.join(", "), a.total_multiplicity).into())
}

fn case_screen(ctx: &Context) -> R {
    let s = case_screens(ctx.conductor).map_err(e)?;
    if !s.sign_patterns.iter().all(|p| p.satisfies_constraint && p.fixed_codimension >= 2) || s.diagonal.min_codimension < 2 {
        return Ok("case I screens fail".to_string().into());
    }
    let passing: Vec<String> = s.case_two.iter().filter(|c| c.passes()).map(|c| c.label()).collect();
    Ok(format!("passing subcases {}", passing.join(", ")).into())
}

fn kernel_lattice(_: &Context) -> R {
    let b = toric::basis_independence(&cubic::gamma(), &cubic::kernel_basis(), &cubic::CHARACTER).map_err(e)?;
    Ok(format!(
        "{}; {}; {}",
        yes_no(b.same_lattice, "same lattice", "different lattice"),
        yes_no(b.vertices_correspond, "vertices correspond", "vertices differ"),
        yes_no(b.same_f_vector, "same f-vector", "different f-vector")
    )
    .into())
}

fn polytope() -> Result<toric::LatticePolytope, String> {
    cubic::polytope().map_err(e)
}

fn vertices(_: &Context) -> R {
    let p = polytope()?;
    let listed: BTreeSet<Vec<Rational>> = cubic::listed_vertices().into_iter().collect();
    let found: BTreeSet<Vec<Rational>> = p.vertices.iter().cloned().collect();
    let v: Vec<String> = p.vertices.iter().map(|x| format_point(x)).collect();
    let out = Outcome::new(v.join(" "));
    Ok(if listed == found { out } else { out.with_note("differs from the listed columns") })
}

fn face_lattice(_: &Context) -> R {
    let a = toric::face_lattice_audit(&polytope()?);
    let f: Vec<String> = a.f_vector.iter().map(ToString::to_string).collect();
    Ok(format!(
        "f-vector ({}); {}; {}",
        f.join(","),
        yes_no(a.combinatorial_cube, "combinatorial cube", "not a cube"),
        yes_no(a.simplicial_fan, "simplicial", "not simplicial")
    )
    .into())
}

fn s3_action(_: &Context) -> R {
    let a = toric::s3_action_audit(&cubic::tau(), &cubic::sigma(), &polytope()?, None).map_err(e)?;
    let fixed: Vec<String> = a.fixed_vertices.iter().map(|v| format_point(v)).collect();
    Ok(format!(
        "{}; {}; fixes {}",
        yes_no(a.relations_hold(), "relations hold", "relations fail"),
        yes_no(a.permutes_vertices(), "permutes vertices", "does not permute vertices"),
        fixed.join(" ")
    )
    .into())
}

fn sublattice(_: &Context) -> R {
    let a = toric::s3_action_audit(&cubic::tau(), &cubic::sigma(), &polytope()?, Some(&cubic::reference())).map_err(e)?;
    let s = a.sublattice.ok_or("no sublattice audit")?;
    let tau = s.tau_permutation.as_ref().map(|p| format!("{p:?}").replace(' ', "")).unwrap_or_else(|| "none".into());
    let perm = s.tau_permutation.is_some() && s.sigma_permutation.is_some();
    Ok(format!("index {}; tau {tau}; {}", s.index, yes_no(perm, "permutation action", "not a permutation action")).into())
}

fn basis_order(_: &Context) -> R {
    let a = toric::s3_action_audit(&cubic::tau(), &cubic::sigma(), &polytope()?, Some(&cubic::reference())).map_err(e)?;
    let b = a.basis_change.ok_or("no basis audit")?;
    let orders: Vec<String> = b.matching_orders.iter().map(|o| format!("{o:?}").replace(' ', "")).collect();
    Ok(format!(
        "listed order conjugates: {}; conjugating orders {}",
        yes_no(b.matches_as_listed, "yes", "no"),
        orders.join(" ")
    )
    .into())
}

fn strata_total(_: &Context) -> R {
    let t = motivic::strata().map_err(e)?;
    let audit = motivic::strata_audit(&t).map_err(e)?;
    if !audit.holds() {
        return Err(format!("table audit fails: {audit:?}"));
    }
    let total = t.total().map_err(e)?;
    let p3 = yes_no(total == projective_class(3), " = [P^3]", "");
    Ok(format!("{total}{p3}").into())
}

fn odd_coset(_: &Context) -> R {
    let a = motivic::coset_audit(3);
    Ok(format!(
        "{} of {} fixed-point-free; oracle agrees on {}",
        a.odd_coset_fixed_point_free,
        a.odd_coset,
        a.elements - a.disagreements.len()
    )
    .into())
}

fn toric_route(_: &Context) -> R {
    let o = toric::face_orbits(&[cubic::tau(), cubic::sigma()], &polytope()?).map_err(e)?;
    Ok(motivic::toric_orbit_classes(&o).map_err(e)?.to_string().into())
}

fn trivial_control(_: &Context) -> R {
    let o = toric::face_orbits(&[IntMatrix::identity(3)], &polytope()?).map_err(e)?;
    let c: MotivicClass = motivic::toric_orbit_classes(&o).map_err(e)?;
    Ok(c.to_string().into())
}

fn hodge(_: &Context) -> R {
    let h = ledger::standard_hodge_relations().map_err(e)?;
    if !h.polarizations_agree() {
        return Err("O(1) differs between D_n and R".into());
    }
    Ok(format!("K = {}; O(1) = {}", h.canonical, h.polarization).into())
}

fn k_bbg4(_: &Context) -> R {
    let b = ledger::base_intersections(&ledger::standard_hodge_relations().map_err(e)?).map_err(e)?;
    let out = Outcome::new(b.canonical_by_degree.to_string());
    Ok(if b.agree() {
        out.with_note("O(-15)^4 and (-90 lambda)^4 agree")
    } else {
        Outcome::new(format!("{} vs {}", b.canonical_by_degree, b.canonical_by_lambda))
    })
}

fn lambda4(_: &Context) -> R {
    let b = ledger::base_intersections(&ledger::standard_hodge_relations().map_err(e)?).map_err(e)?;
    Ok(b.lambda.to_string().into())
}

fn riemann_hurwitz(_: &Context) -> R {
    let g = ledger::git_canonical(&ledger::constants().map_err(e)?).map_err(e)?;
    Ok(format!("K_GIT = {} D; invariant theory {} D", g.in_discriminant, g.invariant_theory).into())
}

fn kirwan_value() -> Result<Rational, String> {
    let c = ledger::constants().map_err(e)?;
    let ratio = c.rational("eckardt_stabilizer_ratio").map_err(e)?;
    let mu = eckardt_total()?;
    ledger::kirwan_discrepancy(6, &[(ratio, mu)], &int(1)).map_err(e)
}

fn eckardt_total() -> Result<Rational, String> {
    let a = eckardt_multiplicity(kirwan_core::cyclotomic::DEFAULT_CONDUCTOR).map_err(e)?;
    Ok(int(a.total_multiplicity as i64))
}

fn kirwan(_: &Context) -> R {
    Ok(kirwan_value()?.to_string().into())
}

fn toroidal_value() -> Result<Rational, String> {
    let c = ledger::constants().map_err(e)?;
    let t = c.triple("boundary_normal_class").map_err(e)?;
    let mu_d = ledger::pullback_coefficient(&c.triple("restriction_marked_discriminant").map_err(e)?, &t).map_err(e)?;
    let mu_r = ledger::pullback_coefficient(&c.triple("restriction_marked_eckardt").map_err(e)?, &t).map_err(e)?;
    ledger::toroidal_discrepancy(1, &mu_d, &mu_r).map_err(e)
}

fn toroidal(_: &Context) -> R {
    Ok(toroidal_value()?.to_string().into())
}

fn pullbacks(_: &Context) -> R {
    let c = ledger::constants().map_err(e)?;
    let t = c.triple("boundary_normal_class").map_err(e)?;
    let d = ledger::pullback_coefficient(&c.triple("restriction_marked_discriminant").map_err(e)?, &t).map_err(e)?;
    let r = ledger::pullback_coefficient(&c.triple("restriction_marked_eckardt").map_err(e)?, &t).map_err(e)?;
    Ok(format!("{d}, {r}").into())
}

fn boundary(_: &Context) -> R {
    let b = ledger::boundary_intersections(&ledger::constants().map_err(e)?).map_err(e)?;
    Ok(format!("marked {}; unmarked {}", b.marked, b.unmarked).into())
}

fn k_obg4_value() -> Result<Rational, String> {
    let b = ledger::base_intersections(&ledger::standard_hodge_relations().map_err(e)?).map_err(e)?;
    let t = ledger::boundary_intersections(&ledger::constants().map_err(e)?).map_err(e)?;
    ledger::top_self_intersection_blowup(&b.canonical_by_degree, &toroidal_value()?, &t.unmarked, true).map_err(e)
}

fn k_obg4(_: &Context) -> R {
    Ok(k_obg4_value()?.to_string().into())
}

fn k_equivalence(_: &Context) -> R {
    // K_Kirwan^4 = K_GIT^4 + a^4 D^4 with D^4 unknown; K_oBG^4 = K_BBG^4 + b^4 T^4
    let coeff = kirwan_value()?.pow(4);
    let t = ledger::boundary_intersections(&ledger::constants().map_err(e)?).map_err(e)?;
    let rhs = toroidal_value()?.pow(4) * &t.unmarked;
    let w = cubic_slice_weights();
    let pts = exceptional_stabilizers(&w, &cubic_blowup_charts()).map_err(e)?;
    let stab = stabilizer_prime_support(&BigInt::from(24), &pts);
    let constraint = ledger::DenominatorConstraint { dimension: 4, excluded_primes: ledger::excluded_primes(&coeff, &stab) };
    let v = ledger::k_equivalence_certificate(&coeff, &constraint, &rhs).map_err(e)?;
    let out = Outcome::new(v.to_string()).with_note(format!("coeff {coeff}, rhs {rhs}"));
    Ok(match v {
        KEquivalenceVerdict::Inconclusive => Outcome { inconclusive: true, ..out },
        KEquivalenceVerdict::NotKEquivalent(_) => out,
    })
}

fn toroidal_consistency(_: &Context) -> R {
    let t = ledger::toroidal_consistency(&ledger::constants().map_err(e)?).map_err(e)?;
    let marked = yes_no(t.marked_via_pullback == t.marked_direct, "marked identity holds", "marked identity fails");
    let routes = if t.unmarked_discrepancy == t.formula_discrepancy {
        format!("unmarked discrepancy {} both routes", t.unmarked_discrepancy)
    } else {
        format!("unmarked discrepancy {} vs {}", t.unmarked_discrepancy, t.formula_discrepancy)
    };
    Ok(format!("{marked}; {routes}").into())
}

fn f3_counts(_: &Context) -> R {
    let r = ledger::f3_root_counts();
    Ok(format!("({}, {}, {}) ({}, {})", r.isotropic, r.short, r.long, r.short_perp, r.long_perp).into())
}

fn surface(_: &Context) -> R {
    let s = ledger::surface_example(&ledger::constants().map_err(e)?).map_err(e)?;
    Ok(format!("K_M'^2 = {}; K_Mbar^2 = {}", s.one_blowup, s.contracted).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_prefixed() {
        let ids: BTreeSet<&str> = CHECKS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CHECKS.len());
        for c in CHECKS {
            let prefix = c.id.split('.').next().unwrap();
            let module = match prefix {
                "kernel" => "exact-kernel",
                "poly" => "symbolic-poly",
                "git" => "torus-git",
                "wps" => "wps-geometry",
                "luna" => "luna-3a2",
                "toric" => "toric-quotient",
                "motivic" => "motivic-ring",
                "ledger" => "divisor-ledger",
                other => panic!("unknown prefix {other}"),
            };
            assert_eq!(c.module, module, "{}", c.id);
        }
    }
}
