//! Subcommand implementations. Each returns a Report; the binary serializes
//! it and sets the exit code.

use crate::report::{Check, Report};
use crate::scenario::{MorphismRole, Scenario};
use serde_json::json;
use std::time::Instant;
use superalg::algebra::{AlgebraBuilder, Parity, SuperElement};
use superalg::derivation::Derivation;
use superalg::forms::{de_rham_action, exterior_differential, form_algebra};
use superalg::harmonic::{apply_field, CharacterFamily, Polarization, PolarizedModule};
use superalg::heisenberg::{
    ad_star, coadjoint_action, flow_coordinates, function_algebra, invariant_fields,
    HeisenbergGroupElement, HeisenbergParity, InvariantSide,
};
use superalg::kks::{closedness_check, kks_kernel, kks_matrix, module_span_eq};
use superalg::lie::LieSuperAlgebra;
use superalg::matrix::SuperMatrix;
use superalg::morphism::ClassicalPoint;
use superalg::orbit::{
    constant_rank_check, fundamental_field_matrix, invariant_subalgebra, isotropy_ideal,
    isotropy_module, orbit_dimensions, quotient_presentation_check, SolveWindow, TValuedFunctional,
};
use superalg::scalar::Scalar;
use superalg::twist::TwistedElement;

pub type CommandResult = Result<Report, String>;

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Resolve the scenario's functional against its Heisenberg row (or a named
/// basis order) into coefficient vectors.
fn heisenberg_functional(
    sc: &Scenario,
) -> Result<(HeisenbergParity, LieSuperAlgebra, TValuedFunctional), String> {
    let parity = sc
        .heisenberg
        .ok_or("scenario must declare `heisenberg <code>;`")?;
    let lie = parity.lie_algebra();
    let nf = sc
        .functionals
        .first()
        .ok_or("scenario must declare a functional")?;
    let base = sc.algebra(&nf.base)?.clone();
    let mut coeffs = Vec::with_capacity(3);
    for (name, _) in &lie.basis {
        let c = nf
            .coefficients
            .get(name)
            .cloned()
            .unwrap_or_else(|| SuperElement::zero(&base));
        coeffs.push(c);
    }
    let f = TValuedFunctional::new(&lie, &base, coeffs).map_err(|e| e.to_string())?;
    Ok((parity, lie, f))
}

fn scenario_points(sc: &Scenario) -> Vec<(String, ClassicalPoint)> {
    if sc.points.is_empty() {
        vec![("origin".to_string(), ClassicalPoint::origin())]
    } else {
        sc.points
            .iter()
            .map(|p| (p.name.clone(), p.point.clone()))
            .collect()
    }
}

pub fn run_orbit_check_rank(sc: &Scenario, window: SolveWindow) -> CommandResult {
    let start = Instant::now();
    let (_, lie, f) = heisenberg_functional(sc)?;
    let m = fundamental_field_matrix(&lie, &f);
    let report =
        constant_rank_check(&m, &scenario_points(sc), window).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    let points_data: Vec<serde_json::Value> = report
        .points
        .iter()
        .map(|p| {
            json!({
                "point": p.label,
                "rank": p.rank,
                "witness": p.witness,
                "isotropy_dim": format!("{}|{}", p.iso_dim.0, p.iso_dim.1),
                "spanned": p.spanned,
            })
        })
        .collect();
    checks.push(
        Check::of(
            "constant_rank",
            report.constant_rank,
            if report.constant_rank {
                "0".to_string()
            } else {
                "a pulled-back field is not spanned by the witness rows".to_string()
            },
        )
        .with_data(json!({
            "dim_g": format!("{}|{}", report.dim_g.0, report.dim_g.1),
            "points": points_data,
        })),
    );
    if report.constant_rank {
        let dims = orbit_dimensions(&report).map_err(|e| e.to_string())?;
        for (p, d) in report.points.iter().zip(&dims) {
            checks.push(
                Check::of(
                    format!("dimension_identity_at_{}", p.label),
                    d.identity_holds,
                    "0",
                )
                .with_data(json!({
                    "isotropy_fibre": format!("{}|{}", d.iso_fibre.0, d.iso_fibre.1),
                    "orbit_fibre": format!("{}|{}", d.orbit_fibre.0, d.orbit_fibre.1),
                    "relation_fibre": format!("{}|{}", d.relation_fibre.0, d.relation_fibre.1),
                })),
            );
        }
    }
    Ok(Report::new("orbit check-rank", checks, elapsed_ms(start)))
}

pub fn run_orbit_isotropy(sc: &Scenario, window: SolveWindow) -> CommandResult {
    let start = Instant::now();
    let mut checks = Vec::new();
    if let (Some(action), Some(point)) = (
        sc.morphism(MorphismRole::Action),
        sc.morphism(MorphismRole::Point),
    ) {
        // generic mode: the ambient algebra for the ideal is named TG
        let ambient = sc.algebra("TG")?;
        let ideal = isotropy_ideal(&action.morphism, &point.morphism, ambient, window)
            .map_err(|e| e.to_string())?;
        let gens: Vec<String> = ideal.generators.iter().map(|g| g.to_string()).collect();
        checks.push(Check::pass("isotropy_ideal").with_data(json!({
            "ambient": "TG",
            "generators": gens,
            "zero_ideal": ideal.is_zero(),
        })));
    } else {
        let (_, lie, f) = heisenberg_functional(sc)?;
        let m = fundamental_field_matrix(&lie, &f);
        for (label, point) in scenario_points(sc) {
            let (kernel, dims) =
                superalg::orbit::isotropy_subalgebra_at(&m, &point).map_err(|e| e.to_string())?;
            let vectors: Vec<String> = kernel
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| format!("({c})*{}", lie.basis[j].0))
                        .collect::<Vec<_>>()
                        .join(" + ")
                })
                .collect();
            checks.push(
                Check::pass(format!("isotropy_at_{label}")).with_data(json!({
                    "dim": format!("{}|{}", dims.0, dims.1),
                    "basis": vectors,
                })),
            );
        }
        let module = isotropy_module(&lie, &f, window).map_err(|e| e.to_string())?;
        let gens: Vec<Vec<String>> = module
            .iter()
            .map(|t| t.iter().map(|e| e.to_string()).collect())
            .collect();
        checks.push(Check::pass("isotropy_module").with_data(json!({ "generators": gens })));
    }
    Ok(Report::new("orbit isotropy", checks, elapsed_ms(start)))
}

pub fn run_orbit_invariants(sc: &Scenario, cutoff: u32) -> CommandResult {
    let start = Instant::now();
    let maps: Vec<&crate::scenario::NamedMorphism> = sc
        .morphisms
        .iter()
        .filter(|m| m.role == MorphismRole::Map)
        .collect();
    if maps.len() < 2 {
        return Err("scenario must declare two maps (the translation and the projection)".into());
    }
    let inv = invariant_subalgebra(&maps[0].morphism, &maps[1].morphism, cutoff)
        .map_err(|e| e.to_string())?;
    let basis: Vec<String> = inv.basis.iter().map(|e| e.to_string()).collect();
    let checks = vec![
        Check::of("multiplicatively_closed", inv.closed_under_product, "0").with_data(json!({
            "cutoff": cutoff,
            "dimension": inv.basis.len(),
            "basis": basis,
            "products_escaping_cutoff": inv.products_escaping_cutoff,
        })),
    ];
    Ok(Report::new("orbit invariants", checks, elapsed_ms(start)))
}

pub fn run_orbit_quotient_check(sc: &Scenario, cutoff: u32) -> CommandResult {
    let start = Instant::now();
    let maps: Vec<&crate::scenario::NamedMorphism> = sc
        .morphisms
        .iter()
        .filter(|m| m.role == MorphismRole::Map)
        .collect();
    if maps.len() < 3 {
        return Err(
            "scenario must declare three maps: translation, projection, and the quotient presentation"
                .into(),
        );
    }
    let inv = invariant_subalgebra(&maps[0].morphism, &maps[1].morphism, cutoff)
        .map_err(|e| e.to_string())?;
    let pi = &maps[2].morphism;
    let q_basis = sc
        .bases
        .first()
        .ok_or("scenario must declare a basis for the quotient algebra")?;
    let ok = quotient_presentation_check(&q_basis.elements, pi, &inv.basis)
        .map_err(|e| e.to_string())?;
    let checks = vec![Check::of(
        "quotient_presentation",
        ok,
        if ok {
            "0".to_string()
        } else {
            "image span differs from the invariant span".to_string()
        },
    )
    .with_data(json!({
        "cutoff": cutoff,
        "invariant_dimension": inv.basis.len(),
        "quotient_basis_size": q_basis.elements.len(),
    }))];
    Ok(Report::new(
        "orbit quotient-check",
        checks,
        elapsed_ms(start),
    ))
}

pub fn run_kks(sc: &Scenario, sub: &str, window: SolveWindow) -> CommandResult {
    let start = Instant::now();
    let (_, lie, f) = heisenberg_functional(sc)?;
    let mut checks = Vec::new();
    match sub {
        "matrix" => {
            let m = kks_matrix(&lie, &f);
            let entries: Vec<Vec<String>> = m
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect();
            checks.push(
                Check::of("super_skew", m.is_super_skew(), "0").with_data(json!({
                    "basis": lie.basis.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
                    "parities": m
                        .basis_parities
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>(),
                    "entries": entries,
                })),
            );
            checks.push(Check::of("even_form", m.is_even_form(), "0"));
        }
        "kernel" => {
            let kernel = kks_kernel(&lie, &f, window).map_err(|e| e.to_string())?;
            let iso = isotropy_module(&lie, &f, window).map_err(|e| e.to_string())?;
            let ok = module_span_eq(&f.base, lie.dim(), &kernel, &iso, window);
            let gens: Vec<Vec<String>> = kernel
                .iter()
                .map(|t| t.iter().map(|e| e.to_string()).collect())
                .collect();
            checks.push(
                Check::of("kernel_equals_isotropy", ok, "0").with_data(json!({
                    "kernel_generators": gens,
                })),
            );
        }
        "closed" => {
            let ok = closedness_check(&lie, &f);
            checks.push(Check::of("closedness", ok, "0"));
        }
        other => return Err(format!("unknown kks subcommand `{other}`")),
    }
    Ok(Report::new(format!("kks {sub}"), checks, elapsed_ms(start)))
}

pub fn run_heisenberg(parity: HeisenbergParity, sub: &str) -> CommandResult {
    let start = Instant::now();
    let lie = parity.lie_algebra();
    let alg = function_algebra(parity, None, "G").map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    match sub {
        "fields" => {
            let right =
                invariant_fields(parity, &alg, InvariantSide::Right).map_err(|e| e.to_string())?;
            let left =
                invariant_fields(parity, &alg, InvariantSide::Left).map_err(|e| e.to_string())?;
            let field_json = |d: &Derivation| -> serde_json::Value {
                let imgs: Vec<serde_json::Value> = alg
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| json!({ "coordinate": g.name, "image": d.images[i].to_string() }))
                    .collect();
                json!(imgs)
            };
            checks.push(Check::pass("field_images").with_data(json!({
                "parity": parity.code(),
                "right": { "x": field_json(&right[0]), "y": field_json(&right[1]), "z": field_json(&right[2]) },
                "left": { "x": field_json(&left[0]), "y": field_json(&left[1]), "z": field_json(&left[2]) },
            })));
        }
        "brackets" => {
            let right =
                invariant_fields(parity, &alg, InvariantSide::Right).map_err(|e| e.to_string())?;
            let left =
                invariant_fields(parity, &alg, InvariantSide::Left).map_err(|e| e.to_string())?;
            for i in 0..3 {
                for j in 0..3 {
                    let br =
                        Derivation::bracket(&right[i], &right[j]).map_err(|e| e.to_string())?;
                    let mut expect = Derivation::zero(&alg, br.parity);
                    for k in 0..3 {
                        let c = &lie.constants[i][j][k];
                        if !c.is_zero() {
                            expect = expect.add(&right[k].scale(c));
                        }
                    }
                    let mut diff = String::from("0");
                    let mut ok = true;
                    for g in 0..alg.width() {
                        let d = br.images[g].sub(&expect.images[g]);
                        if !d.is_zero() {
                            ok = false;
                            diff = d.to_string();
                        }
                    }
                    checks.push(Check::of(
                        format!("right_bracket_{}_{}", lie.basis[i].0, lie.basis[j].0),
                        ok,
                        diff,
                    ));
                }
            }
            let bl = Derivation::bracket(&left[0], &left[1]).map_err(|e| e.to_string())?;
            let mut ok = true;
            let mut diff = String::from("0");
            for g in 0..alg.width() {
                let d = bl.images[g].add(&left[2].images[g]);
                if !d.is_zero() {
                    ok = false;
                    diff = d.to_string();
                }
            }
            checks.push(Check::of("left_bracket_x_y_is_minus_z", ok, diff));
        }
        "adstar" => {
            let basis_parities = [parity.x, parity.y, parity.z];
            for v in 0..3 {
                let m = ad_star(parity, v);
                let entries: Vec<Vec<String>> = (0..3)
                    .map(|r| (0..3).map(|c| m[r][c].to_string()).collect())
                    .collect();
                // differentiate the group-level action along the flow
                let mut ok = true;
                let mut witness = String::from("0");
                for k in 0..3 {
                    let mut b = AlgebraBuilder::new("D");
                    b = match basis_parities[v] {
                        Parity::Odd => b.odd("tv"),
                        Parity::Even => b.even_truncated("tv", 2),
                    };
                    b = match basis_parities[k] {
                        Parity::Odd => b.odd("sk"),
                        Parity::Even => b.even_truncated("sk", 2),
                    };
                    let ext = b.build().map_err(|e| e.to_string())?;
                    let tau = SuperElement::generator(&ext, "tv").map_err(|e| e.to_string())?;
                    let sigma = SuperElement::generator(&ext, "sk").map_err(|e| e.to_string())?;
                    let flow = flow_coordinates(parity, v, &tau).map_err(|e| e.to_string())?;
                    let mut covector = [
                        SuperElement::zero(&ext),
                        SuperElement::zero(&ext),
                        SuperElement::zero(&ext),
                    ];
                    covector[k] = sigma.clone();
                    let moved = coadjoint_action(&flow, &covector);
                    let sign = basis_parities[v].koszul(basis_parities[k]);
                    for (l, slot) in moved.iter().enumerate() {
                        let mut w = slot.clone();
                        if l == k {
                            w = w.sub(&sigma);
                        }
                        let d = w
                            .partial_derivative("tv")
                            .and_then(|x| x.partial_derivative("sk"))
                            .map_err(|e| e.to_string())?;
                        let got = d.scale(&Scalar::from_int(sign)).constant_term();
                        if got != m[l][k] {
                            ok = false;
                            witness = format!("entry ({l},{k}): {got} vs {}", m[l][k]);
                        }
                    }
                }
                checks.push(
                    Check::of(format!("ad_star_{}", lie.basis[v].0), ok, witness)
                        .with_data(json!({ "matrix": entries })),
                );
            }
        }
        "law" => {
            // coordinate law vs matrix product on a sample of points
            let r = AlgebraBuilder::new("R")
                .odd("e1")
                .odd("e2")
                .odd("e3")
                .odd("e4")
                .build()
                .map_err(|e| e.to_string())?;
            let e: Vec<SuperElement> = (1..=4)
                .map(|j| SuperElement::generator(&r, &format!("e{j}")).unwrap())
                .collect();
            let mk = |p: Parity, k: usize| -> SuperElement {
                match p {
                    Parity::Odd => e[k % 4].clone(),
                    Parity::Even => e[k % 4]
                        .mul(&e[(k + 1) % 4])
                        .add(&SuperElement::from_int(&r, k as i64 % 3)),
                }
            };
            let mut ok = true;
            for k in 0..3 {
                let g1 = HeisenbergGroupElement::new(
                    parity,
                    mk(parity.x, k),
                    mk(parity.y, k + 1),
                    mk(parity.z, k + 2),
                )
                .map_err(|e| e.to_string())?;
                let g2 = HeisenbergGroupElement::new(
                    parity,
                    mk(parity.x, k + 2),
                    mk(parity.y, k + 3),
                    mk(parity.z, k),
                )
                .map_err(|e| e.to_string())?;
                let via_coords = g1.mul(&g2).map_err(|e| e.to_string())?;
                let m1 = g1.to_matrix().map_err(|e| e.to_string())?;
                let m2 = g2.to_matrix().map_err(|e| e.to_string())?;
                let via_matrix = HeisenbergGroupElement::from_matrix(
                    parity,
                    &m1.mul(&m2).map_err(|e| e.to_string())?,
                )
                .map_err(|e| e.to_string())?;
                if via_coords != via_matrix {
                    ok = false;
                }
                let id = HeisenbergGroupElement::identity(parity, &r);
                if g1.mul(&g1.inverse()).map_err(|e| e.to_string())? != id {
                    ok = false;
                }
            }
            checks.push(Check::of("coordinate_law_matches_matrix_product", ok, "0"));
        }
        other => return Err(format!("unknown heisenberg subcommand `{other}`")),
    }
    Ok(Report::new(
        format!("heisenberg --parity {} {sub}", parity.code()),
        checks,
        elapsed_ms(start),
    ))
}

pub fn run_plancherel(n: usize, check_inversion: bool, check_plancherel: bool) -> CommandResult {
    let start = Instant::now();
    if n == 0 || n > 6 {
        return Err("n must be between 1 and 6".into());
    }
    let fam = CharacterFamily::new(n);
    let monos = fam.group.enumerate_monomials(0, 0);
    let mut checks = Vec::new();
    if check_inversion || !check_plancherel {
        let mut worst = String::from("0");
        let mut ok = true;
        for m in &monos {
            let f = SuperElement::from_monomial(&fam.group, m.clone(), Scalar::one());
            let lhs = fam.fourier_lhs(&f).map_err(|e| e.to_string())?;
            let rhs = fam.fourier_rhs(&f);
            if lhs != rhs {
                ok = false;
                worst = format!("{f}: {lhs} vs {rhs}");
            }
        }
        checks.push(Check::of("fourier_inversion", ok, worst).with_data(json!({
            "n": n,
            "monomials_checked": monos.len(),
        })));
    }
    if check_plancherel || !check_inversion {
        let mut worst = String::from("0");
        let mut ok = true;
        for mf in &monos {
            for mg in &monos {
                let f = SuperElement::from_monomial(&fam.group, mf.clone(), Scalar::one());
                let g = SuperElement::from_monomial(&fam.group, mg.clone(), Scalar::one());
                let (lhs, rhs) = fam.plancherel_sides(&f, &g).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    ok = false;
                    worst = format!("f={f}, g={g}: {lhs} vs {rhs}");
                }
            }
        }
        checks.push(Check::of("plancherel", ok, worst).with_data(json!({
            "n": n,
            "pairs_checked": monos.len() * monos.len(),
        })));
    }
    Ok(Report::new(
        format!("plancherel --n {n}"),
        checks,
        elapsed_ms(start),
    ))
}

fn build_family_module(family: &str) -> Result<PolarizedModule, String> {
    let (parity, base) = match family {
        "clifford" => (
            HeisenbergParity::from_code("ooe").unwrap(),
            AlgebraBuilder::new("T")
                .unit("gm")
                .odd("e1")
                .odd("e2")
                .odd("e3")
                .odd("e4")
                .build()
                .map_err(|e| e.to_string())?,
        ),
        "odd-heisenberg" => (
            HeisenbergParity::from_code("eoo").unwrap(),
            AlgebraBuilder::new("T")
                .odd("gm")
                .odd("e1")
                .odd("e2")
                .odd("e3")
                .odd("e4")
                .build()
                .map_err(|e| e.to_string())?,
        ),
        other => return Err(format!("unknown representation family `{other}`")),
    };
    let alg = function_algebra(parity, Some(&base), "TG").map_err(|e| e.to_string())?;
    let gamma = SuperElement::generator(&alg, "gm").map_err(|e| e.to_string())?;
    superalg::harmonic::polarized_space(parity, &alg, &gamma, Polarization::XZ, 2)
        .map_err(|e| e.to_string())
}

pub fn run_rep(family: &str) -> CommandResult {
    let start = Instant::now();
    let m = build_family_module(family)?;
    let mut checks = Vec::new();
    checks.push(
        Check::of("polarized_rank", m.rank == (1, 1), format!("{:?}", m.rank)).with_data(json!({
            "family": family,
            "rank": format!("{}|{}", m.rank.0, m.rank.1),
            "basis": m.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        })),
    );
    // homomorphism on a pair of sample points with auxiliary odd parameters
    let alg = &m.algebra;
    let e: Vec<SuperElement> = (1..=4)
        .map(|j| SuperElement::generator(alg, &format!("e{j}")).unwrap())
        .collect();
    let mk = |p: Parity, k: usize| -> SuperElement {
        match p {
            Parity::Odd => e[k % 4].clone().add(&e[(k + 2) % 4]),
            Parity::Even => e[k % 4].mul(&e[(k + 1) % 4]),
        }
    };
    let g1 = HeisenbergGroupElement::new(
        m.parity,
        mk(m.parity.x, 0),
        mk(m.parity.y, 1),
        mk(m.parity.z, 2),
    )
    .map_err(|e| e.to_string())?;
    let g2 = HeisenbergGroupElement::new(
        m.parity,
        mk(m.parity.x, 2),
        mk(m.parity.y, 3),
        mk(m.parity.z, 1),
    )
    .map_err(|e| e.to_string())?;
    let g12 = g1.mul(&g2).map_err(|e| e.to_string())?;
    let mut hom_ok = true;
    let mut witness = String::from("0");
    for psi in &m.basis {
        let lhs = m.group_action(&g12, psi).map_err(|e| e.to_string())?;
        let rhs = m
            .group_action(&g1, &m.group_action(&g2, psi).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if lhs.body != rhs.body || lhs.exponent != rhs.exponent {
            hom_ok = false;
            witness = format!("{} vs {}", lhs, rhs);
        }
    }
    checks.push(Check::of("group_action_homomorphism", hom_ok, witness));
    // infinitesimal operators
    let names = ["x", "y", "z"];
    for which in 0..3 {
        let mut ok = true;
        let mut witness = String::from("0");
        for psi in &m.basis {
            let by_flow = m.dpi_by_flow(which, psi).map_err(|e| e.to_string())?;
            let closed = m.dpi_closed(which, psi).map_err(|e| e.to_string())?;
            let a = by_flow
                .normalize_onto(&m.exponent)
                .map_err(|e| e.to_string())?;
            let b = closed
                .normalize_onto(&m.exponent)
                .map_err(|e| e.to_string())?;
            let d = a.body.sub(&b.body);
            if !d.is_zero() {
                ok = false;
                witness = d.to_string();
            }
        }
        checks.push(Check::of(
            format!("infinitesimal_{}_flow_vs_closed", names[which]),
            ok,
            witness,
        ));
    }
    // bracket of the infinitesimal operators
    let both_odd = m.parity.x.is_odd() && m.parity.y.is_odd();
    let mut ok = true;
    let mut witness = String::from("0");
    for psi in &m.basis {
        let xy = m
            .dpi_closed(0, &m.dpi_closed(1, psi).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let yx = m
            .dpi_closed(1, &m.dpi_closed(0, psi).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let bracket = if both_odd {
            xy.add(&yx).map_err(|e| e.to_string())?
        } else {
            xy.add(&yx.neg()).map_err(|e| e.to_string())?
        };
        let z = m.dpi_closed(2, psi).map_err(|e| e.to_string())?;
        let d = bracket.body.sub(&z.body);
        if !d.is_zero() {
            ok = false;
            witness = d.to_string();
        }
    }
    checks.push(Check::of(
        if both_odd {
            "anticommutator_dx_dy_is_dz"
        } else {
            "commutator_dx_dy_is_dz"
        },
        ok,
        witness,
    ));
    Ok(Report::new(
        format!("rep {family}"),
        checks,
        elapsed_ms(start),
    ))
}

pub fn run_gl(m: usize, n: usize, seed: u64, reps: usize) -> CommandResult {
    use rand::Rng;
    use rand::SeedableRng;
    let start = Instant::now();
    if m + n == 0 || m + n > 4 {
        return Err("m + n must be between 1 and 4".into());
    }
    let alg = AlgebraBuilder::new("R")
        .odd("e1")
        .odd("e2")
        .odd("e3")
        .odd("e4")
        .build()
        .map_err(|e| e.to_string())?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let d = m + n;
    let sig: Vec<Parity> = (0..d)
        .map(|i| if i < m { Parity::Even } else { Parity::Odd })
        .collect();
    let odd_gens: Vec<SuperElement> = (1..=4)
        .map(|j| SuperElement::generator(&alg, &format!("e{j}")).unwrap())
        .collect();
    let random_point = |rng: &mut rand::rngs::StdRng| -> Result<SuperMatrix, String> {
        let entries: Vec<Vec<SuperElement>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if sig[i] == sig[j] {
                            let mut acc = if i == j {
                                SuperElement::from_int(&alg, [1, 2, -1][rng.gen_range(0..3)])
                            } else {
                                SuperElement::zero(&alg)
                            };
                            for p in 0..4 {
                                for q in (p + 1)..4 {
                                    let c = rng.gen_range(-1..=1);
                                    if c != 0 {
                                        acc = acc.add(
                                            &odd_gens[p]
                                                .mul(&odd_gens[q])
                                                .scale(&Scalar::from_int(c)),
                                        );
                                    }
                                }
                            }
                            acc
                        } else {
                            let mut acc = SuperElement::zero(&alg);
                            for g in &odd_gens {
                                let c = rng.gen_range(-2..=2);
                                if c != 0 {
                                    acc = acc.add(&g.scale(&Scalar::from_int(c)));
                                }
                            }
                            acc
                        }
                    })
                    .collect()
            })
            .collect();
        SuperMatrix::new(&alg, sig.clone(), sig.clone(), entries).map_err(|e| e.to_string())
    };
    let id = SuperMatrix::identity(&alg, sig.clone());
    let mut assoc_ok = true;
    let mut inverse_ok = true;
    let mut identity_ok = true;
    for _ in 0..reps {
        let g1 = random_point(&mut rng)?;
        let g2 = random_point(&mut rng)?;
        let g3 = random_point(&mut rng)?;
        let lhs = g1
            .mul(&g2)
            .and_then(|x| x.mul(&g3))
            .map_err(|e| e.to_string())?;
        let rhs = g1
            .mul(&g2.mul(&g3).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if !lhs.eq_entries(&rhs) {
            assoc_ok = false;
        }
        if !g1.mul(&id).map_err(|e| e.to_string())?.eq_entries(&g1)
            || !id.mul(&g1).map_err(|e| e.to_string())?.eq_entries(&g1)
        {
            identity_ok = false;
        }
        let inv = g1.inverse().map_err(|e| e.to_string())?;
        if !g1.mul(&inv).map_err(|e| e.to_string())?.eq_entries(&id)
            || !inv.mul(&g1).map_err(|e| e.to_string())?.eq_entries(&id)
        {
            inverse_ok = false;
        }
    }
    let checks = vec![
        Check::of("associativity", assoc_ok, "0").with_data(json!({
            "m": m, "n": n, "points": reps, "seed": seed,
        })),
        Check::of("identity_neutral", identity_ok, "0"),
        Check::of("two_sided_inverse", inverse_ok, "0"),
    ];
    Ok(Report::new(
        format!("gl --m {m} --n {n}"),
        checks,
        elapsed_ms(start),
    ))
}

pub fn run_forms(coords: usize, expr_text: &str) -> CommandResult {
    let start = Instant::now();
    if coords == 0 || coords > 6 {
        return Err("coords must be between 1 and 6".into());
    }
    let alg = form_algebra(coords);
    let omega = crate::scenario::parse_expression(expr_text, &alg).map_err(|e| e.to_string())?;
    let (acted, _ext) = de_rham_action(&omega).map_err(|e| e.to_string())?;
    let d = exterior_differential(&alg).map_err(|e| e.to_string())?;
    let ddw = d
        .apply(&d.apply(&omega).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let checks = vec![
        Check::pass("action").with_data(json!({
            "omega": omega.to_string(),
            "result": acted.to_string(),
        })),
        Check::of(
            "differential_squares_to_zero",
            ddw.is_zero(),
            ddw.to_string(),
        ),
    ];
    Ok(Report::new("forms apply", checks, elapsed_ms(start)))
}

/// The polarized-section membership equations hold for every basis vector of
/// the family modules; exposed for the golden corpus.
pub fn run_rep_membership(family: &str) -> CommandResult {
    let start = Instant::now();
    let m = build_family_module(family)?;
    let fields =
        invariant_fields(m.parity, &m.algebra, InvariantSide::Right).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    for (k, psi) in m.basis.iter().enumerate() {
        let rx = apply_field(&fields[0], psi).map_err(|e| e.to_string())?;
        checks.push(Check::of(
            format!("first_polarization_equation_basis_{k}"),
            rx.body.is_zero(),
            rx.body.to_string(),
        ));
        let rz = apply_field(&fields[2], psi).map_err(|e| e.to_string())?;
        let expected = TwistedElement {
            body: m.gamma.scale(&-Scalar::i()).mul(&psi.body),
            exponent: psi.exponent.clone(),
        };
        let d = rz.body.sub(&expected.body);
        checks.push(Check::of(
            format!("central_eigenvalue_equation_basis_{k}"),
            d.is_zero(),
            d.to_string(),
        ));
    }
    Ok(Report::new(
        format!("rep {family} membership"),
        checks,
        elapsed_ms(start),
    ))
}
