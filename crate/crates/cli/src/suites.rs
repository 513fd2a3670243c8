//! The `verify` suites. Each suite fans out over grid cells in parallel and
//! reassembles its checks in cell order.

use std::collections::BTreeSet;

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use wittlab_core::basis::WittBasis;
use wittlab_core::borel::{build_bq_with, Lambda2Cutoff};
use wittlab_core::gdim::{gdim_transported, geometric_q};
use wittlab_core::*;

use crate::report::{check, Check};

pub const SUITES: [&str; 6] = ["algebra", "solvability", "maximality", "dimensions", "invariance", "consistency"];

/// Suites whose default grid stops at `n = 2`: one closure per probe makes
/// `n = 3` take minutes.
pub const SMALL_N_SUITES: [&str; 1] = ["maximality"];

const ORBIT_SAMPLES: u64 = 20;

#[derive(Debug, Clone)]
pub struct Grid {
    pub p_list: Vec<u32>,
    pub n_list: Vec<usize>,
    pub seed: u64,
}

impl Grid {
    fn cells(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<_> = self.p_list.iter().flat_map(|&p| self.n_list.iter().map(move |&n| (p, n))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn cell_seed(&self, p: u32, n: usize, salt: u64) -> u64 {
        self.seed ^ (u64::from(p) << 32) ^ ((n as u64) << 16) ^ salt
    }
}

fn pn(p: u32, n: usize) -> Value {
    json!({ "p": p, "n": n })
}

fn pnr(p: u32, n: usize, r: usize) -> Value {
    json!({ "p": p, "n": n, "r": r })
}

fn fan_out<F>(cells: Vec<(u32, usize)>, f: F) -> Vec<Check>
where
    F: Fn(u32, usize) -> Vec<Check> + Sync,
{
    let per: Vec<Vec<Check>> = cells.into_par_iter().map(|(p, n)| f(p, n)).collect();
    per.into_iter().flatten().collect()
}

pub fn run_suite(name: &str, grid: &Grid) -> Vec<Check> {
    match name {
        "algebra" => algebra(grid),
        "solvability" => solvability(grid),
        "maximality" => maximality(grid),
        "dimensions" => dimensions(grid),
        "invariance" => invariance(grid),
        "consistency" => consistency(grid),
        other => unreachable!("unknown suite {other}"),
    }
}

/// An element with at most `terms` random monomials.
fn sparse_element(params: Params, rng: &mut ChaCha8Rng, terms: usize) -> WittElement {
    let wb_len = params.witt_dim();
    let mut v = vec![0u32; wb_len];
    for _ in 0..terms {
        v[rng.gen_range(0..wb_len)] = rng.gen_range(1..params.p());
    }
    WittElement::from_vector(params, &v).expect("right length")
}

fn random_poly(params: Params, rng: &mut ChaCha8Rng) -> TruncPoly {
    let v: Vec<u32> = (0..params.poly_dim()).map(|_| rng.gen_range(0..params.p())).collect();
    TruncPoly::from_dense(params, &v)
}

// ---------------------------------------------------------------- algebra

fn algebra(grid: &Grid) -> Vec<Check> {
    fan_out(grid.cells(), |p, n| {
        let params = Params::new(p, n).expect("validated grid");
        let cell = pn(p, n);
        let seed = grid.cell_seed(p, n, 0xa1);
        let mut out = vec![
            check("jacobi", cell.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..20 {
                    let [a, b, c] = [0; 3].map(|_| sparse_element(params, &mut rng, 8));
                    let j = a
                        .bracket(&b.bracket(&c)?)?
                        .add(&b.bracket(&c.bracket(&a)?)?)?
                        .add(&c.bracket(&a.bracket(&b)?)?)?;
                    if !j.is_zero() || !a.bracket(&a)?.is_zero() {
                        return Ok((false, Some(json!({ "a": a.to_string(), "b": b.to_string(), "c": c.to_string() }))));
                    }
                }
                Ok((true, None))
            }),
            check("structure-constants", cell.clone(), || {
                let wb = WittBasis::new(params);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
                for _ in 0..400 {
                    let (k1, k2) = (rng.gen_range(0..wb.len()), rng.gen_range(0..wb.len()));
                    let mut table = WittElement::zero(params);
                    for (col, c) in wb.bracket_basis(k1, k2) {
                        table = table.add(&wb.element(col).scale(c))?;
                    }
                    if table != wb.element(k1).bracket(&wb.element(k2))? {
                        return Ok((false, Some(json!({ "pair": [k1, k2] }))));
                    }
                }
                Ok((true, None))
            }),
            check("p-map", cell.clone(), || {
                // D^[p](f) = D^p(f), and in small cases ρ(D^[p]) = ρ(D)^p
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
                for _ in 0..10 {
                    let d = sparse_element(params, &mut rng, 6);
                    let dp = d.p_power();
                    let f = random_poly(params, &mut rng);
                    let mut iter = f.clone();
                    for _ in 0..p {
                        iter = d.apply(&iter)?;
                    }
                    if dp.apply(&f)? != iter {
                        return Ok((false, Some(json!({ "element": d.to_string() }))));
                    }
                    if params.poly_dim() <= 125 && dp.natural_rep_matrix() != d.natural_rep_matrix().pow(p as u64) {
                        return Ok((false, Some(json!({ "element": d.to_string(), "oracle": "matrix power" }))));
                    }
                }
                Ok((true, None))
            }),
            check("natural-representation", cell.clone(), || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
                for _ in 0..10 {
                    let (d, e) = (sparse_element(params, &mut rng, 6), sparse_element(params, &mut rng, 6));
                    let f = random_poly(params, &mut rng);
                    let lhs = d.bracket(&e)?.apply(&f)?;
                    let rhs = d.apply(&e.apply(&f)?)?.sub(&e.apply(&d.apply(&f)?)?)?;
                    if lhs != rhs {
                        return Ok((false, Some(json!({ "d": d.to_string(), "e": e.to_string() }))));
                    }
                }
                // ρ̄(x_i ∂_j) restricted to A(n)_1 is E_ij
                for i in 0..n {
                    for j in 0..n {
                        let d = WittElement::monomial(params, MultiIndex::unit(n, i), j, 1);
                        for k in 0..n {
                            let image = d.apply(&TruncPoly::var(params, k))?;
                            let expect = if k == j { TruncPoly::var(params, i) } else { TruncPoly::zero(params) };
                            if image != expect {
                                return Ok((false, Some(json!({ "element": d.to_string() }))));
                            }
                        }
                    }
                }
                Ok((true, None))
            }),
            check("grading", cell.clone(), || {
                let wb = WittBasis::new(params);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
                for _ in 0..400 {
                    let (k1, k2) = (rng.gen_range(0..wb.len()), rng.gen_range(0..wb.len()));
                    let target = wb.degree(k1) + wb.degree(k2);
                    let br = wb.element(k1).bracket(&wb.element(k2))?;
                    if br.standard_components().keys().any(|&d| d != target) {
                        return Ok((false, Some(json!({ "pair": [k1, k2] }))));
                    }
                }
                Ok((true, None))
            }),
        ];
        if n >= 2 {
            out.push(check("generated-by-degrees-minus-one-and-one", cell.clone(), || {
                let gens: Vec<_> =
                    monomial_basis(params).into_iter().filter(|d| matches!(d.min_degree(), Some(-1) | Some(1))).collect();
                let dim = Subspace::span(params, &gens)?.subalgebra_closure().dim();
                Ok((dim == params.witt_dim(), Some(json!({ "closure_dim": dim }))))
            }));
        }
        out.push(check("automorphisms", cell.clone(), || automorphism_laws(params, seed ^ 5)));
        out
    })
}

fn automorphism_laws(params: Params, seed: u64) -> Result<(bool, Option<Value>)> {
    let samples: u64 = if params.n() <= 2 { 100 } else { 10 };
    let basis = monomial_basis(params);
    let id = PolyAutomorphism::identity(params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let psi = random_automorphism(params, seed.wrapping_add(s));
        let fail = |what: &str| Ok((false, Some(json!({ "sample": s, "law": what, "automorphism": psi.to_json() }))));
        let (d, e) = (sparse_element(params, &mut rng, 6), sparse_element(params, &mut rng, 6));
        let (id_, ie) = (psi.induced(&d)?, psi.induced(&e)?);
        if psi.induced(&d.bracket(&e)?)? != id_.bracket(&ie)? {
            return fail("bracket");
        }
        if psi.induced(&d.p_power())? != id_.p_power() {
            return fail("p-map");
        }
        let inv = psi.invert()?;
        if psi.compose(&inv)? != id || inv.compose(&psi)? != id {
            return fail("inverse");
        }
        let (g0, u) = psi.decompose()?;
        if u.compose(&g0)? != psi || !u.is_unipotent() {
            return fail("decomposition");
        }
        // fast path against conjugation: every basis element for n <= 2, a sample otherwise
        let stride = if params.n() <= 2 { 1 } else { basis.len() / 40 };
        for b in basis.iter().step_by(stride.max(1)) {
            if psi.induced(b)? != psi.induced_direct(b)? {
                return fail("fast path");
            }
        }
    }
    Ok((true, Some(json!({ "samples": samples }))))
}

// ------------------------------------------------------------ solvability

fn solvability(grid: &Grid) -> Vec<Check> {
    let mut checks = fan_out(grid.cells(), |p, n| {
        let params = Params::new(p, n).expect("validated grid");
        let mut out: Vec<Check> = (0..=n)
            .map(|r| {
                check("completely-solvable", pnr(p, n, r), || {
                    let b = build_br(params, r)?;
                    let ds = derived_series(&b)?;
                    let lc = derived_lower_central(&b)?;
                    let w = json!({ "dim": b.dim(), "derived_dims": ds.dims(), "derived_lower_central_dims": lc.dims() });
                    Ok((ds.vanishes() && lc.vanishes(), Some(w)))
                })
            })
            .collect();
        out.push(check("c-n-nilpotency-index", pn(p, n), || {
            let lc = lower_central_series(&build_cn(params))?;
            let bound = (p as usize).pow(n as u32 - 1);
            let pass = lc.vanishing_index.is_some_and(|k| k <= bound);
            Ok((pass, Some(json!({ "vanishing_index": lc.vanishing_index, "bound": bound, "dims": lc.dims() }))))
        }));
        out
    });
    let mut controls: Vec<u32> = grid.p_list.iter().copied().filter(|&p| p > 3).collect();
    controls.sort_unstable();
    controls.dedup();
    checks.extend(controls.into_par_iter().map(b1_control).collect::<Vec<_>>());
    checks
}

fn b1_control(p: u32) -> Check {
    check("b1-negative-control", pn(p, 2), || {
        let b1 = build_b1_example(p)?;
        let solvable = is_solvable(&b1)?;
        let lc = derived_lower_central(&b1)?;
        let contains = !lc.vanishes() && lc.last().contains(&WittElement::partial(b1.params(), 1))?;
        let w = json!({
            "dim": b1.dim(),
            "solvable": solvable,
            "derived_lower_central_dims": lc.dims(),
            "partial_2_in_stable_term": contains,
        });
        Ok((solvable && contains && !lc.vanishes(), Some(w)))
    })
}

// ------------------------------------------------------------- maximality

fn maximality(grid: &Grid) -> Vec<Check> {
    fan_out(grid.cells(), |p, n| {
        let params = Params::new(p, n).expect("validated grid");
        (0..=n)
            .map(|r| {
                check("maximality-probe", pnr(p, n, r), || {
                    let rep = maximality_probe(&build_br(params, r)?)?;
                    let failing: Vec<_> = rep.probes.iter().filter(|x| !x.pass).map(|x| x.probe.clone()).collect();
                    let with_triple = rep.probes.iter().filter(|x| x.triple.is_some()).count();
                    let w = json!({
                        "header": rep.header,
                        "base_dim": rep.base_dim,
                        "probes": rep.probes.len(),
                        "with_sl2_triple": with_triple,
                        "failing": failing,
                    });
                    Ok((rep.all_pass, Some(w)))
                })
            })
            .collect()
    })
}

// ------------------------------------------------------------- dimensions

fn dimensions(grid: &Grid) -> Vec<Check> {
    let mut checks = fan_out(grid.cells(), |p, n| {
        let params = Params::new(p, n).expect("validated grid");
        let mut out = Vec::new();
        for r in 0..=n {
            let cell = pnr(p, n, r);
            let b = match build_br(params, r) {
                Ok(b) => b,
                Err(e) => {
                    out.push(check("build", cell, || Err(e.into())));
                    continue;
                }
            };
            out.push(check("dim-formula", cell.clone(), || {
                let formula = dim_formula_br(p, n, r)?;
                let enumerated = b.dim() as i64;
                let corrected = dim_formula_br_corrected(p, n, r)?;
                let w = json!({ "formula": formula, "enumerated": enumerated, "corrected_formula": corrected });
                Ok((formula == enumerated, Some(w)))
            }));
            let enumerated = gdim_graded(&b);
            out.push(check("gdim-formula", cell.clone(), || {
                let g = enumerated.clone()?;
                let f = gdim_formula_br(p, n, r)?;
                let diff = &g - &f;
                let w = json!({ "formula": f.to_string(), "enumerated": g.to_string(), "difference": diff.to_string() });
                Ok((diff.is_zero(), Some(w)))
            }));
            out.push(check("degree-minus-one", cell.clone(), || {
                let c = enumerated.clone()?.coefficient(-1);
                Ok((c == r.into(), Some(json!({ "coefficient": c.to_string(), "expected": r }))))
            }));
            out.push(check("degree-zero", cell.clone(), || {
                // the remark's r(r+1)/2 is reported alongside, not asserted
                let e = enumerated.clone()?.coefficient(0);
                let f = gdim_formula_br(p, n, r)?.coefficient(0);
                let remark = r * (r + 1) / 2;
                let w = json!({
                    "enumerated": e.to_string(),
                    "formula": f.to_string(),
                    "remark_value": remark,
                    "remark_matches": e == remark.into(),
                });
                Ok((e == f, Some(w)))
            }));
        }
        out.push(check("homogeneous-borel-q0", pn(p, n), || {
            let v = gdim_formula_homogeneous_borel(p, n, 0)?.eval(1)?;
            let d = build_b0(params).dim();
            Ok((v == d.into(), Some(json!({ "formula": v.to_string(), "dim_b0": d }))))
        }));
        for q in 1..n {
            for i in 1..=n {
                out.push(check("r-i-formula", json!({ "p": p, "n": n, "q": q, "i": i }), || {
                    let e = r_i_enumerated(params, q, i)?;
                    let f = gdim_ri_formula(p, n, q, i)?;
                    let c = gdim_ri_formula_corrected(p, n, q, i)?;
                    let w = json!({
                        "formula": f.to_string(),
                        "enumerated": e.to_string(),
                        "corrected_formula": c.to_string(),
                        "corrected_matches": c == e,
                    });
                    Ok((f == e, Some(w)))
                }));
            }
        }
        out
    });
    let mut ps: Vec<u32> = grid.p_list.clone();
    ps.sort_unstable();
    ps.dedup();
    for p in ps {
        checks.push(check("geometric-sum-identity", json!({ "p": p }), || {
            let q = q_poly(p)?;
            let ok = (0..6).all(|r| (LaurentPoly::one() - &q) * geometric_q(&q, r) == LaurentPoly::one() - q.pow(r as u32));
            Ok((ok, None))
        }));
        if p > 3 && grid.n_list.contains(&2) {
            checks.push(check("homogeneous-borel-b1", pn(p, 2), || {
                let at = |q| gdim_formula_homogeneous_borel(p, 2, q).and_then(|g| g.eval(1));
                let d = build_b1_example(p)?.dim();
                let (v2, v1) = (at(2)?, at(1)?);
                let w = json!({ "dim_b1": d, "formula_q2": v2.to_string(), "formula_q1": v1.to_string() });
                Ok((v2 == d.into(), Some(w)))
            }));
        }
    }
    checks
}

/// Graded dimension of the monomials of `Q_q` in direction `i` (1-based).
fn r_i_enumerated(params: Params, q: usize, i: usize) -> Result<LaurentPoly> {
    let (g1, g2) = enumerate_gamma(&params, q)?;
    let wb = WittBasis::new(params);
    let mut idx = Vec::new();
    for t in g1.iter().chain(&g2).filter(|t| t.i == i) {
        let exps: Vec<u32> = t.exponent().iter().map(|&e| e as u32).collect();
        idx.push(wb.index_of(&MultiIndex::new(&params, &exps)?, t.i - 1));
    }
    Ok(gdim_graded(&Subspace::from_basis_indices(params, idx))?)
}

// ------------------------------------------------------------- invariance

fn invariance(grid: &Grid) -> Vec<Check> {
    fan_out(grid.cells(), |p, n| {
        let params = Params::new(p, n).expect("validated grid");
        let mut out = Vec::new();
        let mut pr0s = Vec::new();
        for r in 0..=n {
            let cell = pnr(p, n, r);
            let b = build_br(params, r).expect("r in range");
            let pr0 = r_invariant_pr0(&b);
            pr0s.push(pr0);
            out.push(check("pr0-invariant", cell.clone(), || Ok((pr0 == r, Some(json!({ "pr0": pr0 }))))));
            out.push(check("torus-invariant", cell.clone(), || {
                let v = torus_orbit_invariant(&standard_torus(params, r)?)?;
                Ok((v == n - r, Some(json!({ "dim_t_cap_w0": v }))))
            }));
            out.push(check("torus-containment", cell.clone(), || {
                let contained: Vec<usize> = (0..=n)
                    .filter(|&i| standard_torus(params, i).and_then(|t| b.contains_subspace(&t)).unwrap_or(false))
                    .collect();
                Ok((contained == (0..=r).collect::<Vec<_>>(), Some(json!({ "contained_tori": contained }))))
            }));
            out.push(check("orbit-invariance", cell.clone(), || {
                let base = gdim_graded(&b)?;
                let mut bad = Vec::new();
                for k in 0..ORBIT_SAMPLES {
                    let g = random_automorphism(params, grid.cell_seed(p, n, 0x0b17) ^ (r as u64) << 8 ^ k);
                    let image = g.induced_subspace(&b)?;
                    let gd = gdim_filtered(&image);
                    let ok = gd == base && r_invariant_pr0(&image) == r;
                    let transported = k < 3 && gdim_transported(&g, &b)? != gd;
                    if !ok || transported {
                        bad.push(json!({ "sample": k, "gdim": gd.to_string(), "pr0": r_invariant_pr0(&image) }));
                    }
                }
                Ok((bad.is_empty(), Some(json!({ "samples": ORBIT_SAMPLES, "gdim": base.to_string(), "violations": bad }))))
            }));
        }
        out.push(check("pr0-distinct", pn(p, n), || {
            let distinct: BTreeSet<_> = pr0s.iter().collect();
            Ok((distinct.len() == n + 1, Some(json!({ "pr0": pr0s }))))
        }));
        out
    })
}

// ------------------------------------------------------------ consistency

fn consistency(grid: &Grid) -> Vec<Check> {
    fan_out(grid.cells(), |p, n| {
        let params = Params::new(p, n).expect("validated grid");
        let mut out = Vec::new();
        for q in 1..n {
            let cell = json!({ "p": p, "n": n, "q": q });
            out.push(check("presentations", cell.clone(), || {
                let (a, b) = (build_bq(params, q)?, build_bq_split(params, q)?);
                Ok((a == b, Some(json!({ "dim": a.dim(), "split_dim": b.dim() }))))
            }));
            out.push(check("gamma-in-lambda", cell.clone(), || {
                let (l1, l2) = enumerate_lambda(&params, q, Lambda2Cutoff::Shifted)?;
                let (g1, g2) = enumerate_gamma(&params, q)?;
                let l1_b: BTreeSet<_> = l1.iter().filter(|t| t.b.iter().any(|&e| e > 0)).cloned().collect();
                let l2_a: BTreeSet<_> = l2.iter().filter(|t| t.a.iter().any(|&e| e > 0)).cloned().collect();
                Ok((g1 == l1_b && g2 == l2_a, None))
            }));
            out.push(check("lambda2-cutoff-readings", cell.clone(), || {
                let shifted = build_bq_with(params, q, Lambda2Cutoff::Shifted)?;
                let literal = build_bq_with(params, q, Lambda2Cutoff::Literal)?;
                let shifted_ok = shifted.is_subalgebra() && is_completely_solvable(&shifted)?;
                let literal_closure = literal.subalgebra_closure();
                let w = json!({
                    "shifted_dim": shifted.dim(),
                    "literal_dim": literal.dim(),
                    "literal_is_subalgebra": literal.is_subalgebra(),
                    "literal_closure_dim": literal_closure.dim(),
                    "literal_closure_completely_solvable": is_completely_solvable(&literal_closure)?,
                    "corrected_formula": dim_formula_br_corrected(p, n, q)?,
                    "printed_formula": dim_formula_br(p, n, q)?,
                });
                Ok((shifted_ok, Some(w)))
            }));
            out.push(check("r-i-sum", cell.clone(), || {
                let split = gdim_graded(&build_bq_split(params, q)?)?;
                Ok((split == gdim_formula_br_corrected(p, n, q)?, Some(json!({ "gdim": split.to_string() }))))
            }));
        }
        for r in 0..=n {
            out.push(check("standard-grading", pnr(p, n, r), || {
                let b = build_br(params, r)?;
                Ok((b.is_standard_graded() && gdim_filtered(&b) == gdim_graded(&b)?, None))
            }));
        }
        out
    })
}
