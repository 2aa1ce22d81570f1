//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs with a custom harness so the lines come out in order. Exits nonzero
//! if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use conecrafter_core::cone::{compute_ns, invariant_ns, NSLattice};
use conecrafter_core::endo::{compute_end, invariant_subalgebra};
use conecrafter_core::exact::rational::{format_rational, rat, ratio};
use conecrafter_core::exact::Span;
use conecrafter_core::pipeline::{parse_document, run, ParsedDocument, Stage};
use conecrafter_core::reduction::gauss::{form_gram, gauss_action_set};
use conecrafter_core::reduction::polyhedral::PolyhedralCone;
use conecrafter_core::reduction::tiling::overlap_witness;
use conecrafter_core::reduction::{
    find_eta, gauss_reduce, minkowski_domain_p2, pell_fundamental_unit, pushdown_domain,
    verify_tiling, BinaryForm, TilingProblem, TilingSettings,
};
use conecrafter_core::torus::{close_group, GroupAction, PolarizedTorus};
use conecrafter_core::wedderburn::{classification_table, decompose, FactorKind};
use conecrafter_core::{IntegerMatrix, Rational, RationalMatrix};
use num_traits::{Signed, Zero};

const ROSATI_SAMPLES: usize = 500;
const ROSATI_SEED: u64 = 42;
const BOX: i64 = 3;
const TILING_SAMPLES: usize = 1000;
const TILING_MAX_STEPS: usize = 200;
const GAUSS_BOUND: i64 = 15;
const AMPLE_GRID: i64 = 5;
const GROUP_LIMIT: usize = 512;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_documents() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn load(name: &str) -> ParsedDocument {
    let path = corpus_dir().join(format!("{name}.json"));
    parse_document(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

struct Setup {
    torus: PolarizedTorus,
    group: GroupAction,
}

fn setup(doc: &ParsedDocument) -> Setup {
    let (torus, _) =
        PolarizedTorus::new(doc.complex_structure.clone(), doc.polarization.clone()).unwrap();
    let dim = torus.lattice_rank();
    let group = if doc.group.is_empty() {
        GroupAction::trivial(dim)
    } else {
        close_group(dim, &doc.group, GROUP_LIMIT).unwrap()
    };
    Setup { torus, group }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Independent integer-lattice oracle: row echelon form over i128.

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Integer span of inserted vectors, kept in Hermite normal form.
struct Echelon {
    width: usize,
    rows: Vec<Vec<i128>>,
}

impl Echelon {
    fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    fn pivot(row: &[i128]) -> usize {
        row.iter().position(|x| *x != 0).unwrap()
    }

    fn insert(&mut self, v: &[i128]) {
        let mut v = v.to_vec();
        for col in 0..self.width {
            if v[col] == 0 {
                continue;
            }
            match self.rows.iter().position(|r| Self::pivot(r) == col) {
                None => {
                    if v[col] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.rows.push(v);
                    self.rows.sort_by_key(|r| Self::pivot(r));
                    return;
                }
                Some(k) => {
                    let r = self.rows[k].clone();
                    let (g, s, t) = ext_gcd(r[col], v[col]);
                    let (p, q) = (r[col] / g, v[col] / g);
                    let new_r: Vec<i128> = r.iter().zip(&v).map(|(a, b)| s * a + t * b).collect();
                    v = r.iter().zip(&v).map(|(a, b)| p * b - q * a).collect();
                    self.rows[k] = new_r;
                }
            }
        }
    }

    /// Canonical form: positive pivots, entries above each pivot reduced.
    fn hermite(&self) -> Vec<Vec<i128>> {
        let mut rows = self.rows.clone();
        for i in 0..rows.len() {
            let col = Self::pivot(&rows[i]);
            if rows[i][col] < 0 {
                rows[i].iter_mut().for_each(|x| *x = -*x);
            }
            let p = rows[i][col];
            for k in 0..i {
                let f = rows[k][col].div_euclid(p);
                if f != 0 {
                    let src = rows[i].clone();
                    rows[k].iter_mut().zip(&src).for_each(|(a, b)| *a -= f * b);
                }
            }
        }
        rows
    }
}

fn integer_rows(ms: &[IntegerMatrix]) -> Vec<Vec<i128>> {
    ms.iter()
        .map(|m| {
            m.entries()
                .iter()
                .map(|x| i128::try_from(x).unwrap())
                .collect()
        })
        .collect()
}

fn hermite_of(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut e = Echelon::new(rows[0].len());
    rows.iter().for_each(|r| e.insert(r));
    e.hermite()
}

/// Backtracking enumeration of integer `n x n` matrices with entries in
/// `[-BOX, BOX]` satisfying the linear equations `eqs` (coefficient rows over
/// the flattened entries). Each equation is checked as soon as its last
/// variable is assigned.
fn enumerate_solutions(n: usize, eqs: &[Vec<i64>], visit: &mut dyn FnMut(&[i64])) {
    let vars = n * n;
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); vars];
    for (k, eq) in eqs.iter().enumerate() {
        if let Some(last) = eq.iter().rposition(|c| *c != 0) {
            by_last[last].push(k);
        }
    }
    fn rec(
        i: usize,
        x: &mut Vec<i64>,
        eqs: &[Vec<i64>],
        by_last: &[Vec<usize>],
        visit: &mut dyn FnMut(&[i64]),
    ) {
        if i == x.len() {
            visit(x);
            return;
        }
        for v in -BOX..=BOX {
            x[i] = v;
            let ok = by_last[i]
                .iter()
                .all(|&k| eqs[k].iter().zip(x.iter()).map(|(c, y)| c * y).sum::<i64>() == 0);
            if ok {
                rec(i + 1, x, eqs, by_last, visit);
            }
        }
        x[i] = 0;
    }
    let mut x = vec![0; vars];
    rec(0, &mut x, eqs, &by_last, visit);
}

fn integer_j(torus: &PolarizedTorus) -> Vec<Vec<i64>> {
    let j = torus.complex_structure();
    (0..j.rows())
        .map(|r| {
            (0..j.cols())
                .map(|c| i64::try_from(j[(r, c)].to_integer()).unwrap())
                .collect()
        })
        .collect()
}

/// Equations for `M J - J M = 0` in the entries of `M`.
fn commutation_equations(j: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = j.len();
    let mut eqs = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let mut eq = vec![0; n * n];
            for k in 0..n {
                eq[r * n + k] += j[k][c];
                eq[k * n + c] -= j[r][k];
            }
            eqs.push(eq);
        }
    }
    eqs
}

/// Equations for `F^T = -F` and `J^T F J = F`.
fn ns_equations(j: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = j.len();
    let mut eqs = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let mut anti = vec![0; n * n];
            anti[r * n + c] += 1;
            anti[c * n + r] += 1;
            eqs.push(anti);
            let mut compat = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    compat[a * n + b] += j[a][r] * j[b][c];
                }
            }
            compat[r * n + c] -= 1;
            eqs.push(compat);
        }
    }
    eqs
}

fn box_lattice(n: usize, eqs: &[Vec<i64>]) -> (usize, Vec<Vec<i128>>) {
    let mut count = 0;
    let mut e = Echelon::new(n * n);
    enumerate_solutions(n, eqs, &mut |x| {
        count += 1;
        let v: Vec<i128> = x.iter().map(|&a| a as i128).collect();
        e.insert(&v);
    });
    (count, e.hermite())
}

fn criterion_1() -> Outcome {
    let mut lines = Vec::new();
    for (name, torus, end_rank, ns_rank) in [
        ("E_i", PolarizedTorus::gaussian_curve(), 2, Some(1)),
        ("E_i x E_i", PolarizedTorus::gaussian_power(2), 8, Some(4)),
    ] {
        let end = compute_end(&torus).map_err(|e| e.to_string())?;
        ensure(end.rank() == end_rank, || {
            format!("{name}: rank End {} != {end_rank}", end.rank())
        })?;
        let j = integer_j(&torus);
        let n = j.len();
        let (count, oracle) = box_lattice(n, &commutation_equations(&j));
        let computed = hermite_of(&integer_rows(end.algebra.basis()));
        ensure(oracle.len() == end_rank, || {
            format!("{name}: box oracle rank {}", oracle.len())
        })?;
        ensure(oracle == computed, || {
            format!("{name}: End lattice differs from the box oracle")
        })?;
        let ns = compute_ns(&torus).map_err(|e| e.to_string())?;
        let (ns_count, ns_oracle) = box_lattice(n, &ns_equations(&j));
        let ns_computed = hermite_of(&integer_rows(ns.basis()));
        if let Some(r) = ns_rank {
            ensure(ns.rank() == r, || {
                format!("{name}: rank NS {} != {r}", ns.rank())
            })?;
        }
        ensure(ns_oracle == ns_computed, || {
            format!("{name}: NS lattice differs from the box oracle")
        })?;
        lines.push(format!(
            "{name}: End {end_rank} ({count} box solutions), NS {} ({ns_count})",
            ns.rank()
        ));
    }
    Ok(lines.join("; "))
}

// ---------------------------------------------------------------------------

fn criterion_2() -> Outcome {
    let mut algebras = Vec::new();
    let mut groups = Vec::new();
    for name in [
        "gaussian_curve",
        "gaussian_square",
        "bielliptic",
        "hyperbolic_square",
        "monomial_square",
    ] {
        let s = setup(&load(name));
        let end = compute_end(&s.torus).map_err(|e| e.to_string())?;
        if s.group.order() > 1 {
            let inv = invariant_subalgebra(&s.torus, &end, &s.group).map_err(|e| e.to_string())?;
            algebras.push((format!("{name} End^G"), inv.algebra, s.torus.clone()));
            groups.push((name, s.group.clone(), s.torus.clone()));
        }
        algebras.push((format!("{name} End"), end.algebra, s.torus));
    }
    let mut checked = 0;
    for (label, alg, torus) in &algebras {
        let e = torus.polarization_rational();
        let xs = alg.random_elements(ROSATI_SAMPLES, 5, ROSATI_SEED);
        let ys = alg.random_elements(ROSATI_SAMPLES, 5, ROSATI_SEED + 1);
        for (x, y) in xs.iter().zip(&ys) {
            let phi = alg.element(x);
            let psi = alg.element(y);
            let phi_r = alg.element(&alg.involute(x));
            let psi_r = alg.element(&alg.involute(y));
            ensure(&phi_r.transpose() * &e == &e * &phi, || {
                format!("{label}: adjointness fails")
            })?;
            let prod_r = alg.element(&alg.involute(&alg.mul(x, y)));
            ensure(prod_r == &psi_r * &phi_r, || {
                format!("{label}: (fg)' != g'f'")
            })?;
            ensure(alg.element(&alg.involute(&alg.involute(x))) == phi, || {
                format!("{label}: f'' != f")
            })?;
            ensure((&phi * &phi_r).trace() > Rational::zero(), || {
                format!("{label}: Tr(ff') <= 0")
            })?;
            let _ = psi;
            checked += 1;
        }
    }
    let mut elements = 0;
    for (name, group, torus) in &groups {
        let e = torus.polarization_rational();
        for g in group.elements() {
            let a = g.linear().to_rational();
            let e_inv = e.inverse().unwrap();
            let rosati = &(&e_inv * &a.transpose()) * &e;
            ensure((&rosati * &a).is_identity(), || {
                format!("{name}: g' != g^-1")
            })?;
            elements += 1;
        }
    }
    Ok(format!(
        "{} algebras, {checked} samples, {elements} group elements, 0 failures",
        algebras.len()
    ))
}

// ---------------------------------------------------------------------------

fn rosati_fixed_dimension(alg: &conecrafter_core::algebra::MatrixAlgebra) -> usize {
    let rank = alg.rank();
    let rows: Vec<Vec<Rational>> = (0..rank)
        .map(|i| {
            let b = alg.basis_vector(i);
            alg.involute(&b)
                .iter()
                .zip(&b)
                .map(|(x, y)| x - y)
                .collect()
        })
        .collect();
    rank - RationalMatrix::from_rows(rows).rank()
}

fn criterion_3() -> Outcome {
    let mut lines = Vec::new();
    for name in ["gaussian_curve", "gaussian_square", "bielliptic"] {
        let s = setup(&load(name));
        let end = compute_end(&s.torus).map_err(|e| e.to_string())?;
        let ns = compute_ns(&s.torus).map_err(|e| e.to_string())?;
        let e_inv = s.torus.polarization_rational().inverse().unwrap();
        let images: Vec<Vec<Rational>> = ns
            .basis()
            .iter()
            .map(|f| {
                let phi = &e_inv * &f.to_rational();
                end.algebra
                    .coordinates(&phi)
                    .ok_or_else(|| format!("{name}: E^-1 F is not an endomorphism"))
            })
            .collect::<Result<_, _>>()?;
        for c in &images {
            ensure(&end.algebra.involute(c) == c, || {
                format!("{name}: image not Rosati-fixed")
            })?;
        }
        let image_dim = Span::new(end.rank(), &images).dim();
        let fixed = rosati_fixed_dimension(&end.algebra);
        ensure(image_dim == fixed && ns.rank() == fixed, || {
            format!("{name}: image {image_dim}, fixed {fixed}, NS {}", ns.rank())
        })?;
        lines.push(format!("{name} {fixed}"));
    }
    Ok(format!("dim f(NS) = dim Sym: {}", lines.join(", ")))
}

// ---------------------------------------------------------------------------

fn criterion_4() -> Outcome {
    let table = classification_table(64);
    let mut seen = std::collections::HashMap::new();
    for (kind, dims) in &table {
        ensure(kind.dims() == *dims && dims.0 <= 64, || {
            format!("{kind}: bad table entry")
        })?;
        if let Some(other) = seen.insert(*dims, *kind) {
            return Err(format!("{kind} and {other} share dimensions {dims:?}"));
        }
        ensure(FactorKind::from_dims(dims.0, dims.1) == Some(*kind), || {
            format!("{kind}: lookup disagrees")
        })?;
    }
    // Every kind of real dimension at most 64 appears.
    let expected = (1..=8).count() + (1..=5).count() + (1..=4).count();
    ensure(table.len() == expected, || {
        format!("table has {} entries, expected {expected}", table.len())
    })?;

    let check_decomposition = |alg: &conecrafter_core::algebra::MatrixAlgebra,
                               torus: &PolarizedTorus,
                               label: &str| {
        let dec = decompose(alg, ROSATI_SEED).map_err(|e| e.to_string())?;
        let e = torus.polarization_rational();
        let e_inv = e.inverse().unwrap();
        let ids: Vec<RationalMatrix> = dec.idempotents().iter().map(|x| alg.element(x)).collect();
        let zero = RationalMatrix::zeros(e.rows(), e.rows());
        for (i, a) in ids.iter().enumerate() {
            for (j, b) in ids.iter().enumerate() {
                let prod = a * b;
                let ok = if i == j { &prod == a } else { prod == zero };
                ensure(ok, || {
                    format!("{label}: idempotents {i},{j} not orthogonal")
                })?;
            }
            let rosati = &(&e_inv * &a.transpose()) * &e;
            ensure(&rosati == a, || {
                format!("{label}: idempotent {i} not involution-stable")
            })?;
        }
        let sum = ids.iter().fold(zero, |acc, x| &acc + x);
        ensure(sum.is_identity(), || {
            format!("{label}: idempotents do not sum to 1")
        })?;
        Ok::<_, String>(dec.real_factors())
    };
    let square = setup(&load("gaussian_square"));
    let end = compute_end(&square.torus).map_err(|e| e.to_string())?;
    let kinds = check_decomposition(&end.algebra, &square.torus, "E_i x E_i")?;
    ensure(kinds == vec![FactorKind::ComplexMatrix(2)], || {
        format!("E_i x E_i: {kinds:?}")
    })?;
    let bi = setup(&load("bielliptic"));
    let end = compute_end(&bi.torus).map_err(|e| e.to_string())?;
    let inv = invariant_subalgebra(&bi.torus, &end, &bi.group).map_err(|e| e.to_string())?;
    ensure(inv.rank() == 4, || {
        format!("bielliptic End^G rank {}", inv.rank())
    })?;
    let kinds = check_decomposition(&inv.algebra, &bi.torus, "bielliptic")?;
    ensure(
        kinds.len() == 2 && kinds.iter().all(|k| k.size() == 1),
        || format!("bielliptic: {kinds:?}"),
    )?;
    Ok(format!(
        "{} kinds up to dim 64, no collisions; E_i x E_i -> ComplexMatrix(2); bielliptic End^G -> {} x {}",
        table.len(),
        kinds[0],
        kinds[1]
    ))
}

// ---------------------------------------------------------------------------

/// Alternating form `Im(x^* H y)` on the lattice basis `(1,0),(i,0),(0,1),(0,i)`
/// for `H = [[a, c + d i], [c - d i, b]]`.
fn hermitian_form(a: i64, b: i64, c: i64, d: i64) -> RationalMatrix {
    // Gaussian integers as (re, im).
    let basis = [
        [(1, 0), (0, 0)],
        [(0, 1), (0, 0)],
        [(0, 0), (1, 0)],
        [(0, 0), (0, 1)],
    ];
    let h = [[(a, 0), (c, d)], [(c, -d), (b, 0)]];
    let mul = |x: (i64, i64), y: (i64, i64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
    let conj = |x: (i64, i64)| (x.0, -x.1);
    RationalMatrix::from_fn(4, 4, |k, l| {
        let mut im = 0;
        for (p, row) in h.iter().enumerate() {
            for (q, hpq) in row.iter().enumerate() {
                im += mul(mul(conj(basis[k][p]), *hpq), basis[l][q]).1;
            }
        }
        rat(im)
    })
}

fn criterion_5() -> Outcome {
    let torus = PolarizedTorus::gaussian_power(2);
    let ns: NSLattice = compute_ns(&torus).map_err(|e| e.to_string())?;
    let j = torus.complex_structure();
    let mut total = 0;
    let mut ample = 0;
    for a in -AMPLE_GRID..=AMPLE_GRID {
        for b in -AMPLE_GRID..=AMPLE_GRID {
            for c in -AMPLE_GRID..=AMPLE_GRID {
                for d in -AMPLE_GRID..=AMPLE_GRID {
                    let form = hermitian_form(a, b, c, d);
                    ensure(&(&j.transpose() * &form) * j == form, || {
                        format!("({a},{b},{c},{d}) not compatible")
                    })?;
                    let coords = ns
                        .coordinates(&form)
                        .ok_or_else(|| format!("({a},{b},{c},{d}) not in NS"))?;
                    let closed = a > 0 && a * b - c * c - d * d > 0;
                    ensure(ns.is_ample(&coords) == closed, || {
                        format!("mismatch at ({a},{b},{c},{d}): closed form {closed}")
                    })?;
                    total += 1;
                    ample += closed as usize;
                }
            }
        }
    }
    ensure(total == 14_641, || format!("{total} classes"))?;
    Ok(format!("{total} classes, {ample} ample, 0 mismatches"))
}

// ---------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let mut count = 0;
    let mut max_steps = 0;
    for a in 1..=GAUSS_BOUND {
        for b in -GAUSS_BOUND..=GAUSS_BOUND {
            for c in 1..=GAUSS_BOUND {
                if b * b - 4 * a * c >= 0 {
                    continue;
                }
                let form = BinaryForm::new(a, b, c);
                let red = gauss_reduce(&form).map_err(|e| e.to_string())?;
                let (ra, rb, rc) = (&red.reduced.a, &red.reduced.b, &red.reduced.c);
                ensure(rb.is_zero() || rb.is_positive(), || {
                    format!("({a},{b},{c}): b < 0")
                })?;
                ensure(rb <= ra && ra <= rc, || {
                    format!("({a},{b},{c}): not 0 <= b <= a <= c")
                })?;
                ensure(red.reduced.discriminant() == form.discriminant(), || {
                    format!("({a},{b},{c}): discriminant changed")
                })?;
                ensure(form.transform(&red.matrix) == red.reduced, || {
                    format!("({a},{b},{c}): matrix does not reproduce the reduced form")
                })?;
                ensure(red.certificate_holds(), || {
                    format!("({a},{b},{c}): word does not reproduce")
                })?;
                max_steps = max_steps.max(red.steps());
                count += 1;
            }
        }
    }
    let example = gauss_reduce(&BinaryForm::new(7, 10, 4)).map_err(|e| e.to_string())?;
    ensure(example.reduced == BinaryForm::new(1, 0, 3), || {
        format!("(7,10,4) -> {:?}", example.reduced)
    })?;
    Ok(format!(
        "{count} forms, max {max_steps} steps; (7,10,4) -> (1,0,3)"
    ))
}

// ---------------------------------------------------------------------------

fn is_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).any(|s| s >= 0 && s * s == n)
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    for d in [2i64, 3, 5, 7, 13] {
        let sol = pell_fundamental_unit(d).map_err(|e| e.to_string())?;
        let x = i128::try_from(&sol.x).unwrap();
        let y = i128::try_from(&sol.y).unwrap();
        let norm = x * x - d as i128 * y * y;
        ensure(norm == sol.norm as i128 && norm.abs() == 1, || {
            format!("D={d}: x^2 - D y^2 = {norm}")
        })?;
        let (px, py) = (
            i128::try_from(&sol.plus_x).unwrap(),
            i128::try_from(&sol.plus_y).unwrap(),
        );
        ensure(px * px - d as i128 * py * py == 1, || {
            format!("D={d}: norm +1 solution fails")
        })?;
        // Nothing smaller solves either equation.
        for t in 1..y {
            let dy2 = d as i128 * t * t;
            ensure(!is_square(dy2 + 1) && !is_square(dy2 - 1), || {
                format!("D={d}: y={t} solves a norm +-1 equation below {y}")
            })?;
        }
        for t in 1..py {
            ensure(!is_square(d as i128 * t * t + 1), || {
                format!("D={d}: y={t} < {py} solves norm +1")
            })?;
        }
        lines.push(format!("D={d} ({x},{y}) norm {norm}"));
        if d == 5 {
            ensure((px, py) == (9, 4), || {
                format!("D=5: norm +1 solution ({px},{py})")
            })?;
        }
    }
    Ok(lines.join(", "))
}

// ---------------------------------------------------------------------------

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[k].is_zero() || (&b[k] / &a[k]).is_negative() {
        return false;
    }
    let s = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(x * &s) == y)
}

fn show(v: &[Rational]) -> String {
    format!(
        "[{}]",
        v.iter().map(format_rational).collect::<Vec<_>>().join(", ")
    )
}

fn criterion_8() -> Outcome {
    let settings = TilingSettings {
        samples: TILING_SAMPLES,
        seed: 42,
        max_steps: TILING_MAX_STEPS,
        ..TilingSettings::default()
    };

    // Hyperbolic surface.
    let mut doc = load("hyperbolic_square");
    doc.settings = settings;
    let result = run(&doc, Stage::Verify);
    let report = &result.report;
    ensure(report.status.exit_code == 0, || {
        format!("hyperbolic: {:?}", report.status)
    })?;
    let tiling = report
        .tiling
        .as_ref()
        .ok_or("hyperbolic: no tiling report")?;
    ensure(
        tiling.samples == TILING_SAMPLES && tiling.successes == TILING_SAMPLES,
        || {
            format!(
                "hyperbolic: {}/{} reduced",
                tiling.successes, tiling.samples
            )
        },
    )?;
    ensure(
        tiling.recheck_passed && tiling.overlap_witness.is_none(),
        || "hyperbolic: recheck or overlap".into(),
    )?;
    let f = result.fundamental.as_ref().ok_or("hyperbolic: no domain")?;
    let rays = f.domain.rational_rays();
    ensure(rays.len() == 2, || {
        format!("hyperbolic: {} rays", rays.len())
    })?;
    let polarization = report.cone.as_ref().unwrap().polarization_class.clone();
    let d: Vec<Rational> = polarization.iter().map(|s| s.parse().unwrap()).collect();
    let (d_ray, other) = if proportional(&d, &rays[0]) {
        (&rays[0], &rays[1])
    } else if proportional(&d, &rays[1]) {
        (&rays[1], &rays[0])
    } else {
        return Err("hyperbolic: D is not a ray of the domain".into());
    };
    let gamma = f
        .actions
        .letters()
        .into_iter()
        .map(|(g, inv)| f.actions.matrix(g, inv).clone())
        .find(|m| proportional(&m.mul_vec(d_ray), other))
        .ok_or("hyperbolic: second ray is not gamma D")?;
    let enlarged = PolyhedralCone::from_rays(2, &[d_ray.clone(), gamma.mul_vec(other)])
        .map_err(|e| e.to_string())?;
    let witness = overlap_witness(
        &enlarged,
        &f.actions,
        settings.overlap_samples,
        settings.seed,
        3,
    )
    .ok_or("hyperbolic: no overlap found on the enlarged domain")?;
    let hyperbolic_line = format!(
        "hyperbolic 1000/1000 into cone({}, {}), overlap on cone(D, gamma^2 D) at {}",
        show(d_ray),
        show(other),
        show(&witness.point)
    );

    // Binary forms under GL_2(Z).
    let actions = gauss_action_set();
    let domain = minkowski_domain_p2();
    let positive =
        |x: &[Rational]| x[0].is_positive() && rat(4) * &x[0] * &x[2] - &x[1] * &x[1] > rat(0);
    let eta = find_eta(
        &form_gram(),
        &[rat(1), rat(0), rat(1)],
        &positive,
        &actions,
        settings.seed,
    )
    .map_err(|e| e.to_string())?;
    let problem = TilingProblem {
        domain: &domain,
        actions: &actions,
        eta: &eta,
        is_ample: &positive,
    };
    let tiling = verify_tiling(&problem, &settings);
    ensure(
        tiling.successes == TILING_SAMPLES && tiling.recheck_passed,
        || format!("P2: {}/{} reduced", tiling.successes, tiling.samples),
    )?;
    ensure(tiling.overlap.is_none(), || {
        "P2: overlap witness on the Minkowski domain".into()
    })?;
    let widened = PolyhedralCone::from_rays(
        3,
        &[
            vec![rat(1), rat(-1), rat(1)],
            vec![rat(1), rat(1), rat(1)],
            vec![rat(0), rat(0), rat(1)],
        ],
    )
    .map_err(|e| e.to_string())?;
    let witness = overlap_witness(
        &widened,
        &actions,
        settings.overlap_samples,
        settings.seed,
        3,
    )
    .ok_or("P2: no overlap found on the widened domain")?;
    Ok(format!(
        "{hyperbolic_line}; P2 1000/1000 into Minkowski domain, max {} steps, overlap on |b| <= a <= c via {}",
        tiling.max_steps_used,
        witness.word.render(actions.names())
    ))
}

// ---------------------------------------------------------------------------

fn criterion_9() -> Outcome {
    let s = setup(&load("bielliptic"));
    ensure(s.group.order() == 4, || {
        format!("|G| = {}", s.group.order())
    })?;
    let ns = compute_ns(&s.torus).map_err(|e| e.to_string())?;
    let inv = invariant_ns(&s.torus, &ns, &s.group).map_err(|e| e.to_string())?;
    let push = pushdown_domain(&inv, &ns, &s.group, None).map_err(|e| e.to_string())?;
    let rho = ns.rank();
    // Orbit sum computed directly on forms: g^* F = g^T F g.
    let mut orbit_sum = RationalMatrix::zeros(rho, rho);
    for k in 0..rho {
        let f = ns.basis()[k].to_rational();
        let mut total = RationalMatrix::zeros(f.rows(), f.rows());
        for g in s.group.elements() {
            let a = g.linear().to_rational();
            total = &total + &(&(&a.transpose() * &f) * &a);
        }
        let coords = ns.coordinates(&total).ok_or("orbit sum left NS")?;
        for (r, v) in coords.into_iter().enumerate() {
            orbit_sum[(r, k)] = v;
        }
    }
    let pullback = push.pullback.to_rational();
    ensure(&pullback * &push.pushforward == orbit_sum, || {
        "pi^* pi_* != sum g^*".into()
    })?;
    let expected = RationalMatrix::identity(inv.rank()).scale(&ratio(4, 1));
    ensure(&push.pushforward * &pullback == expected, || {
        "pi_* pi^* != 4 id".into()
    })?;
    Ok(format!(
        "rho {rho}, rho^G {}, |G| = 4, both identities exact",
        inv.rank()
    ))
}

// ---------------------------------------------------------------------------

const MUTATIONS: [(&str, &str); 10] = [
    ("added_translation", "ghv_expectation"),
    ("bielliptic_without_translation", "ghv_expectation"),
    (
        "complex_structure_entry",
        "complex_structure_squares_to_minus_one",
    ),
    (
        "identity_complex_structure",
        "complex_structure_squares_to_minus_one",
    ),
    (
        "incompatible_polarization",
        "polarization_compatible_with_complex_structure",
    ),
    ("infinite_order_generator", "group_finite"),
    ("non_alternating", "polarization_alternating"),
    ("non_holomorphic_generator", "group_generator_holomorphic"),
    ("non_unimodular_generator", "group_generator_unimodular"),
    ("sign_flipped_block", "polarization_definite"),
];

fn verify_binary(path: &Path) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_conecrafter"))
        .arg("verify")
        .arg(path)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn criterion_10() -> Outcome {
    let docs = corpus_documents();
    ensure(docs.len() >= 4, || {
        format!("only {} corpus documents", docs.len())
    })?;
    for path in &docs {
        let (code, text) = verify_binary(path)?;
        ensure(code == 0, || {
            format!("{} exited {code}:\n{text}", path.display())
        })?;
    }
    for (name, expected) in MUTATIONS {
        let path = corpus_dir().join("mutations").join(format!("{name}.json"));
        let (code, text) = verify_binary(&path)?;
        let status = text
            .lines()
            .find(|l| l.starts_with("status:"))
            .unwrap_or("");
        ensure(code != 0 && status.contains(expected), || {
            format!("{name}: exit {code}, expected failing {expected}, got {status:?}")
        })?;
    }
    Ok(format!(
        "{} corpus documents exit 0, {} mutations fail with the named check",
        docs.len(),
        MUTATIONS.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "endomorphism and NS ranks against box enumeration",
            criterion_1,
        ),
        ("Rosati suite", criterion_2),
        ("NS is the Rosati-symmetric part", criterion_3),
        ("Wedderburn classification", criterion_4),
        (
            "ampleness against the closed form on E_i x E_i",
            criterion_5,
        ),
        ("Gauss reduction exhaustive", criterion_6),
        ("Pell minimal solutions", criterion_7),
        ("tiling and overlap sampling", criterion_8),
        ("pushforward identities", criterion_9),
        ("end-to-end verify", criterion_10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}: {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|p| label.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {label} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {label} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
