//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittlab_core::*;

const P_GRID: [u32; 2] = [5, 7];
const N_GRID: [usize; 3] = [1, 2, 3];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_failures(failures: Vec<String>, ok_detail: String) -> Self {
        if failures.is_empty() {
            Outcome { pass: true, detail: ok_detail }
        } else {
            let shown: Vec<_> = failures.iter().take(8).cloned().collect();
            let more = failures.len().saturating_sub(shown.len());
            let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            Outcome { pass: false, detail: format!("{}{tail}", shown.join("; ")) }
        }
    }
}

fn grid() -> impl Iterator<Item = (Params, usize)> {
    P_GRID.into_iter().flat_map(|p| {
        N_GRID.into_iter().flat_map(move |n| {
            let params = Params::new(p, n).unwrap();
            (0..=n).map(move |r| (params, r))
        })
    })
}

fn random_element(params: Params, rng: &mut ChaCha8Rng) -> WittElement {
    let v: Vec<u32> = (0..params.witt_dim()).map(|_| rng.gen_range(0..params.p())).collect();
    WittElement::from_vector(params, &v).unwrap()
}

fn dimension_grid() -> Outcome {
    let mut failures = Vec::new();
    let mut cells = 0;
    for (params, r) in grid() {
        cells += 1;
        let enumerated = build_br(params, r).unwrap().dim() as i64;
        let formula = dim_formula_br(params.p(), params.n(), r).unwrap();
        if enumerated != formula {
            let corrected = dim_formula_br_corrected(params.p(), params.n(), r).unwrap();
            failures.push(format!(
                "(p={}, n={}, r={r}) enumerated {enumerated} vs formula {formula} [(n-r)(n-r+1)/2 variant: {corrected}]",
                params.p(),
                params.n()
            ));
        }
    }
    let anchors_ok = build_b0(Params::new(5, 2).unwrap()).dim() == 47 && build_bn(Params::new(5, 2).unwrap()).dim() == 8;
    if !anchors_ok {
        failures.push("anchors dim(b_0)=47, dim(b_n)=8 at (5,2) not met".into());
    }
    Outcome::from_failures(failures, format!("{cells} cells match, anchors 47 and 8 hold"))
}

fn gdim_identity() -> Outcome {
    let mut failures = Vec::new();
    for (params, r) in grid() {
        let tag = format!("(p={}, n={}, r={r})", params.p(), params.n());
        let g = gdim_graded(&build_br(params, r).unwrap()).unwrap();
        let f = gdim_formula_br(params.p(), params.n(), r).unwrap();
        if g != f {
            failures.push(format!("{tag} difference {}", &g - &f));
        }
        if g.coefficient(-1) != r.into() {
            failures.push(format!("{tag} degree -1 coefficient {}", g.coefficient(-1)));
        }
    }
    Outcome::from_failures(failures, "all cells identical as Laurent polynomials".into())
}

fn complete_solvability() -> Outcome {
    let mut failures = Vec::new();
    for (params, r) in grid() {
        let b = build_br(params, r).unwrap();
        let lc = derived_lower_central(&b).unwrap();
        if !lc.vanishes() {
            failures.push(format!("(p={}, n={}, r={r}) lower central dims {:?}", params.p(), params.n(), lc.dims()));
        }
    }
    let mut idx = Vec::new();
    for p in P_GRID {
        let params = Params::new(p, 2).unwrap();
        let lc = lower_central_series(&build_cn(params)).unwrap();
        match lc.vanishing_index {
            Some(k) if k <= p as usize => idx.push(format!("p={p}: C_n vanishes at {k}")),
            other => failures.push(format!("p={p}: C_n vanishing index {other:?} exceeds {p}")),
        }
    }
    Outcome::from_failures(failures, format!("all b_r completely solvable; {}", idx.join(", ")))
}

fn negative_control() -> Outcome {
    let b1 = build_b1_example(5).unwrap();
    let params = b1.params();
    let solvable = is_solvable(&b1).unwrap();
    let lc = derived_lower_central(&b1).unwrap();
    let d2 = WittElement::partial(params, 1);
    let stabilized = !lc.vanishes() && !lc.last().is_zero();
    let contains = lc.last().contains(&d2).unwrap();
    let pass = solvable && stabilized && contains && !is_completely_solvable(&b1).unwrap();
    Outcome {
        pass,
        detail: format!(
            "dim {}, solvable {solvable}, lower central dims of derived {:?}, ∂2 in stabilized term {contains}",
            b1.dim(),
            lc.dims()
        ),
    }
}

fn torus_containment() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (params, r) in grid() {
        let b = build_br(params, r).unwrap();
        for i in 0..=params.n() {
            checks += 1;
            let t = standard_torus(params, i).unwrap();
            if b.contains_subspace(&t).unwrap() != (i <= r) {
                failures.push(format!("(p={}, n={}) t_{i} in b_{r} is {}", params.p(), params.n(), i > r));
            }
        }
    }
    Outcome::from_failures(failures, format!("{checks} pairs (t_i, b_r) agree with i <= r"))
}

fn conjugacy_invariants() -> Outcome {
    let mut failures = Vec::new();
    for p in P_GRID {
        for n in N_GRID {
            let params = Params::new(p, n).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for r in 0..=n {
                let pr0 = r_invariant_pr0(&build_br(params, r).unwrap());
                if pr0 != r {
                    failures.push(format!("(p={p}, n={n}) pr0(b_{r}) = {pr0}"));
                }
                seen.insert(pr0);
                let t = standard_torus(params, r).unwrap();
                match torus_orbit_invariant(&t) {
                    Ok(v) if v == n - r => {}
                    other => failures.push(format!("(p={p}, n={n}) invariant of t_{r} = {other:?}")),
                }
            }
            if seen.len() != n + 1 {
                failures.push(format!("(p={p}, n={n}) pr0 dimensions not pairwise distinct"));
            }
        }
    }
    Outcome::from_failures(failures, "pr0(b_r) = r, dim(t_r ∩ W_>=0) = n-r, all distinct".into())
}

fn maximality() -> Outcome {
    let params = Params::new(5, 2).unwrap();
    let mut failures = Vec::new();
    let mut total = 0;
    let mut triples = 0;
    for r in 0..=2 {
        let rep = maximality_probe(&build_br(params, r).unwrap()).unwrap();
        total += rep.probes.len();
        for pr in &rep.probes {
            triples += usize::from(pr.triple.is_some());
            if !pr.pass || (pr.triple.is_none() && pr.stabilized_dim == 0) {
                failures.push(format!("b_{r} + {} closure is completely solvable", pr.probe));
            }
        }
        if rep.probes.len() != params.witt_dim() - rep.base_dim {
            failures.push(format!("b_{r}: probe count {}", rep.probes.len()));
        }
    }
    Outcome::from_failures(failures, format!("{total} monomial probes fail complete solvability ({triples} with sl2 triples)"))
}

fn automorphism_laws() -> Outcome {
    let params = Params::new(5, 2).unwrap();
    let mut failures = Vec::new();
    let basis = monomial_basis(params);
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    const SAMPLES: u64 = 100;
    for seed in 0..SAMPLES {
        let psi = random_automorphism(params, seed);
        let pmat = psi.natural_rep_matrix();
        let pinv = pmat.inverse().unwrap();
        let conj = |d: &WittElement| pmat.mul(&d.natural_rep_matrix()).mul(&pinv);
        let d = random_element(params, &mut rng);
        let e = random_element(params, &mut rng);
        let (id, ie) = (psi.induced(&d).unwrap(), psi.induced(&e).unwrap());
        if id.natural_rep_matrix() != conj(&d) {
            failures.push(format!("seed {seed}: induced action differs from matrix conjugation"));
        }
        if psi.induced(&d.bracket(&e).unwrap()).unwrap() != id.bracket(&ie).unwrap() {
            failures.push(format!("seed {seed}: bracket not preserved"));
        }
        if psi.induced(&d.p_power()).unwrap() != id.p_power() {
            failures.push(format!("seed {seed}: p-map not preserved"));
        }
        let (g0, u) = psi.decompose().unwrap();
        if u.compose(&g0).unwrap() != psi || !u.is_unipotent() || !g0.is_linear() {
            failures.push(format!("seed {seed}: G0 ⋉ U decomposition does not recompose"));
        }
        for b in &basis {
            if psi.induced(b).unwrap() != psi.induced_direct(b).unwrap() {
                failures.push(format!("seed {seed}: fast path differs on {b}"));
            }
        }
    }
    Outcome::from_failures(
        failures,
        format!("{SAMPLES} samples preserve bracket and [p]; fast path matches on the full basis for each; decomposition exact"),
    )
}

fn g_invariance() -> Outcome {
    let params = Params::new(5, 2).unwrap();
    let mut failures = Vec::new();
    for r in 0..=2 {
        let b = build_br(params, r).unwrap();
        let base = gdim_graded(&b).unwrap();
        for k in 0..20u64 {
            let g = random_automorphism(params, 1000 * r as u64 + k);
            let image = g.induced_subspace(&b).unwrap();
            let got = gdim_filtered(&image);
            if got != base {
                failures.push(format!("r={r}, sample {k}: {got} vs {base}"));
            }
        }
    }
    Outcome::from_failures(failures, "60 images have the graded dimension of b_r".into())
}

fn presentation_consistency() -> Outcome {
    let mut failures = Vec::new();
    let mut cells = 0;
    for p in P_GRID {
        for n in N_GRID {
            let params = Params::new(p, n).unwrap();
            for q in 1..n {
                cells += 1;
                if build_bq(params, q).unwrap() != build_bq_split(params, q).unwrap() {
                    failures.push(format!("(p={p}, n={n}, q={q})"));
                }
            }
        }
    }
    Outcome::from_failures(failures, format!("{cells} admissible (p, n, q) cells coincide"))
}

fn structural_sanity() -> Outcome {
    let mut failures = Vec::new();
    for p in P_GRID {
        for n in N_GRID {
            let params = Params::new(p, n).unwrap();
            if n >= 2 {
                let gens: Vec<WittElement> = monomial_basis(params)
                    .into_iter()
                    .filter(|d| matches!(d.min_degree(), Some(-1) | Some(1)))
                    .collect();
                let closure = Subspace::span(params, &gens).unwrap().subalgebra_closure();
                if closure.dim() != params.witt_dim() {
                    failures.push(format!("(p={p}, n={n}) degrees -1 and 1 generate dim {}", closure.dim()));
                }
            }
            // ρ̄(x_i ∂_j) on A(n)_1 is the matrix unit E_ij
            let linear: Vec<usize> =
                (0..n).map(|k| MultiIndex::unit(n, k).index(p)).collect();
            for i in 0..n {
                for j in 0..n {
                    let d = WittElement::monomial(params, MultiIndex::unit(n, i), j, 1);
                    let m = d.natural_rep_matrix().select(&linear, &linear);
                    for a in 0..n {
                        for b in 0..n {
                            if m[(a, b)] != u32::from(a == i && b == j) {
                                failures.push(format!("(p={p}, n={n}) x{}∂{} not E_ij", i + 1, j + 1));
                            }
                        }
                    }
                }
            }
        }
    }
    Outcome::from_failures(failures, "generation by degrees -1, 1 and ρ̄(x_i∂_j) = E_ij on the grid".into())
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 dimension grid", Duration::from_secs(30), dimension_grid),
        ("2 graded-dimension identity", Duration::from_secs(30), gdim_identity),
        ("3 complete solvability", Duration::from_secs(60), complete_solvability),
        ("4 negative control B1", Duration::from_secs(5), negative_control),
        ("5 torus containment", Duration::from_secs(10), torus_containment),
        ("6 conjugacy invariants", Duration::from_secs(10), conjugacy_invariants),
        ("7 maximality probes", Duration::from_secs(600), maximality),
        ("8 automorphism laws", Duration::from_secs(120), automorphism_laws),
        ("9 G-invariance of gdim", Duration::from_secs(120), g_invariance),
        ("10 presentation consistency", Duration::from_secs(30), presentation_consistency),
        ("11 structural sanity", Duration::from_secs(30), structural_sanity),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = out.pass && in_time;
        failed += usize::from(!pass);
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
        let late = if in_time { "" } else { " [over time budget]" };
        println!("{} criterion {name}: {} ({timing}){late}", if pass { "PASS" } else { "FAIL" }, out.detail);
    }
    println!("acceptance: {} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
