//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Every decision below is exact. The only tolerances are the wall-clock
//! budgets, pinned here.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::One;

use tycat::abgroup::{Elem, FinAbGroup};
use tycat::exactnum::{CycNum, RootOfUnity};
use tycat::fusion::{check_fusion_ring, find_isomorphism, gen_mp_fusion_ring, ty_dual_hypergroup_and_table, FusionRing};
use tycat::graphs::{lr_dual_principal_graph, lr_principal_graph};
use tycat::lattice::{count_roots, discriminant_form, glue, EvenLattice};
use tycat::moddata::{
    bantay_fs, bantay_indicators, classify_mp, hat_twist, md_equivalent, mp_md, pointed_md, tensor_md, ty_center_md,
    verify_condensation, verlinde_fusion, Label, ModularData,
};
use tycat::quadform::{
    bichar_from_qform, classify_metric_groups, gauss_central_charge, isotropic_subgroups, lagrangian_subgroups,
    metric_equiv, qform_from_bichar, Bichar, MetricGroup, QuadForm,
};
use tycat::Limits;

const BUDGET_AXIOMS: Duration = Duration::from_secs(60);
const BUDGET_FACTORIZATION: Duration = Duration::from_secs(120);
const BUDGET_CLASSIFICATION: Duration = Duration::from_secs(600);
const BUDGET_CONDENSATION: Duration = Duration::from_secs(300);
const BUDGET_ROOTS: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T, E: std::fmt::Display> Ctx<T> for Result<T, E> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn limits() -> Limits {
    Limits { max_rank: 80, ..Limits::default() }
}

fn odd_groups(orders: &[u64]) -> Vec<FinAbGroup> {
    orders.iter().flat_map(|&n| FinAbGroup::all_of_order(n)).collect()
}

/// (group, bicharacter) for every metric class on every group of the given
/// orders.
fn bichars(orders: &[u64]) -> Result<Vec<Bichar>, String> {
    let mut out = Vec::new();
    for g in odd_groups(orders) {
        for m in classify_metric_groups(&g, &limits()).ctx("classify")? {
            out.push(m.bichar.clone().ok_or("odd metric group without bicharacter")?);
        }
    }
    Ok(out)
}

/// b_{A_{2p}} on ℤ_{2p+1}, from the table form q(x) = e^{πi·2p·x²/(2p+1)}.
fn a_even_bichar(p: i64) -> Bichar {
    let q = QuadForm::diagonal(FinAbGroup::cyclic(2 * p as u64 + 1), &[p]).unwrap();
    bichar_from_qform(&q).unwrap()
}

fn spin_sign(p: i64) -> i8 {
    if ((p + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn full_check(md: &ModularData, what: &str) -> Result<FusionRing, String> {
    md.verify().ctx(what)?;
    verlinde_fusion(md).ctx(what)
}

fn c1_modular_axioms() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let odd: Vec<u64> = (0..=22).map(|k| 2 * k + 1).collect();
    for g in odd_groups(&odd) {
        for m in classify_metric_groups(&g, &limits()).ctx("classify")? {
            let md = pointed_md(&m).ctx("pointed")?;
            full_check(&md, &format!("pointed on {g}"))?;
            count += 1;
        }
    }
    for b in bichars(&[1, 3, 5, 7, 9])? {
        let n = b.group().order() as usize;
        for sign in [1, -1] {
            let what = format!("{} sign {sign}", b.group());
            let z = ty_center_md(&b, sign).ctx("ty_center")?;
            ensure!(z.rank() == 4 * n + n * (n - 1) / 2, "center rank on {what}");
            ensure!(z.global_dim().ctx("dim")? == CycNum::from_int(1, 4 * (n * n) as i64), "center global dimension on {what}");
            full_check(&z, &format!("center {what}"))?;
            let mp = mp_md(&b, sign).ctx("mp")?;
            ensure!(mp.rank() == (n + 7) / 2, "mp rank on {what}");
            full_check(&mp, &format!("mp {what}"))?;
            count += 2;
        }
    }
    let el = start.elapsed();
    ensure!(el < BUDGET_AXIOMS, "{count} data verified but took {el:.1?} (budget {BUDGET_AXIOMS:?})");
    Ok(format!("{count} data, {el:.1?}"))
}

fn c2_factorization() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for b in bichars(&[3, 5, 7])? {
        let qbar = qform_from_bichar(&b).ctx("q")?.conj();
        let pt = pointed_md(&MetricGroup::from_quad(qbar).ctx("metric")?).ctx("pointed")?;
        for sign in [1, -1] {
            let z = ty_center_md(&b, sign).ctx("center")?;
            let prod = tensor_md(&mp_md(&b, sign).ctx("mp")?, &pt).ctx("tensor")?;
            let w = md_equivalent(&z, &prod, &limits()).ctx("equivalence")?;
            ensure!(w.is_some(), "no witness on {} sign {sign}", b.group());
            count += 1;
        }
    }
    let el = start.elapsed();
    ensure!(el < BUDGET_FACTORIZATION, "took {el:.1?} (budget {BUDGET_FACTORIZATION:?})");
    Ok(format!("{count} witnesses, {el:.1?}"))
}

fn sigma_index(md: &ModularData, g: &FinAbGroup, h: &Elem) -> Option<usize> {
    let mh = g.neg(h);
    md.label_index(&Label::TYSigma(h.clone(), mh.clone())).or_else(|| md.label_index(&Label::TYSigma(mh, h.clone())))
}

fn c3_fusion_rules() -> Outcome {
    let mut count = 0;
    for b in bichars(&[3, 5, 7, 9, 15])? {
        let rules = gen_mp_fusion_ring(b.group()).ctx("rules")?;
        ensure!(check_fusion_ring(&rules).ok, "rule table on {} fails its own checks", b.group());
        for sign in [1, -1] {
            let ring = verlinde_fusion(&mp_md(&b, sign).ctx("mp")?).ctx("verlinde")?;
            ensure!(find_isomorphism(&ring, &rules).is_some(), "Verlinde ring differs from the rules on {} sign {sign}", b.group());
            count += 1;
        }
    }
    // the metaplectic rules read inside the center for |G| = 3
    let g = FinAbGroup::cyclic(3);
    let z = ty_center_md(&a_even_bichar(1), 1).ctx("center")?;
    let ring = verlinde_fusion(&z).ctx("verlinde")?;
    let zero = g.zero();
    let idx = |l: Label| z.label_index(&l).ok_or(format!("missing {l}"));
    let (id, alpha) = (idx(Label::TYPt(zero.clone(), 0))?, idx(Label::TYPt(zero.clone(), 1))?);
    let (r0, r1) = (idx(Label::TYRho(zero.clone(), 0))?, idx(Label::TYRho(zero.clone(), 1))?);
    let pos = g.positive_set().ctx("positive set")?;
    let sig: Vec<usize> = pos.elements().iter().map(|h| sigma_index(&z, &g, h).ok_or("missing sigma")).collect::<Result<_, _>>()?;
    let sum = |terms: &[usize]| {
        let mut v: Vec<(usize, u32)> = terms.iter().map(|&k| (k, 1)).collect();
        v.sort();
        v
    };
    let with = |a: usize, rest: &[usize]| sum(&[&[a][..], rest].concat());
    ensure!(ring.product(alpha, alpha) == sum(&[id]), "α² ≠ 1");
    ensure!(ring.product(alpha, r0) == sum(&[r1]), "αρ⁰ ≠ ρ¹");
    ensure!(ring.product(r0, r0) == with(id, &sig), "(ρ⁰)² ≠ 1 + Σσ");
    ensure!(ring.product(r0, r1) == with(alpha, &sig), "ρ⁰ρ¹ ≠ α + Σσ");
    ensure!(ring.product(r1, r1) == with(id, &sig), "(ρ¹)² ≠ 1 + Σσ");
    for (k, h) in pos.elements().iter().enumerate() {
        let s = sig[k];
        ensure!(ring.product(alpha, s) == sum(&[s]), "ασ ≠ σ");
        ensure!(ring.product(r0, s) == sum(&[r0, r1]), "ρ⁰σ ≠ ρ⁰ + ρ¹");
        let s2 = sigma_index(&z, &g, &pos.fold(&g.scale(2, h))).ok_or("missing σ_2h")?;
        ensure!(ring.product(s, s) == sum(&[id, alpha, s2]), "σ² ≠ 1 + α + σ_2h");
    }
    Ok(format!("{count} metaplectic rings, center rules for Z3"))
}

fn c4_frobenius_schur() -> Outcome {
    let mut count = 0;
    for b in bichars(&[3, 5, 7, 9])? {
        for sign in [1, -1] {
            let nu = bantay_fs(&mp_md(&b, sign).ctx("mp")?, &Label::MPRho(0)).ctx("bantay")?;
            ensure!(nu == sign, "ν(ρ0) = {nu} on {} with sign {sign}", b.group());
            count += 1;
        }
    }
    for p in 1..=4 {
        let b = a_even_bichar(p);
        let nu = spin_sign(p);
        let md = mp_md(&b, nu).ctx("mp")?;
        ensure!(md.c_top() == Ratio::from_integer(2 * p % 8), "sign {nu} does not realize c = {} for p = {p}", 2 * p);
        let got = bantay_fs(&md, &Label::MPRho(0)).ctx("bantay")?;
        ensure!(got == nu, "p = {p}: ν = {got}, expected {nu}");
    }
    Ok(format!("{count} signs, spin p = 1..4"))
}

fn c5_central_charge() -> Outcome {
    for p in 1..=4 {
        let md = mp_md(&a_even_bichar(p), spin_sign(p)).ctx("mp")?;
        ensure!(md.c_top() == Ratio::from_integer(2 * p % 8), "c_top = {} for p = {p}", md.c_top());
    }
    let mut count = 0;
    for b in bichars(&[1, 3, 5, 7, 9])? {
        for sign in [1, -1] {
            let z = ty_center_md(&b, sign).ctx("center")?;
            ensure!(z.c_top() == Ratio::from_integer(0), "center c_top = {} on {}", z.c_top(), b.group());
            let q = qform_from_bichar(&b).ctx("q")?;
            let c_mp = mp_md(&b, sign).ctx("mp")?.c_top();
            let c_pt = gauss_central_charge(&q.conj()).ctx("gauss")?;
            ensure!((c_mp + c_pt) % Ratio::from_integer(8) == Ratio::from_integer(0), "c(MP) + c(pointed) ≠ 0 on {}", b.group());
            count += 1;
        }
    }
    Ok(format!("p = 1..4, {count} centers"))
}

fn c6_classification() -> Outcome {
    let start = Instant::now();
    for (n, want, rank) in [(15u64, 8usize, 11usize), (3, 4, 5), (9, 4, 8)] {
        let list = classify_mp(&FinAbGroup::cyclic(n), &limits()).ctx("classify_mp")?;
        ensure!(list.len() == want, "Z{n}: {} classes, expected {want}", list.len());
        ensure!(list.iter().all(|m| m.rank() == rank), "Z{n}: wrong rank");
        for i in 0..list.len() {
            for j in 0..list.len() {
                let w = md_equivalent(&list[i], &list[j], &limits()).ctx("equivalence")?;
                ensure!(w.is_some() == (i == j), "Z{n}: classes {i} and {j}");
            }
        }
    }
    let el = start.elapsed();
    ensure!(el < BUDGET_CLASSIFICATION, "took {el:.1?} (budget {BUDGET_CLASSIFICATION:?})");
    Ok(format!("Z15: 8, Z3: 4, Z9: 4, {el:.1?}"))
}

fn c7_hat_twist() -> Outcome {
    for p in 1..=2 {
        let b = a_even_bichar(p);
        let plus = mp_md(&b, 1).ctx("mp")?;
        let minus = mp_md(&b, -1).ctx("mp")?;
        let hat = hat_twist(&plus).ctx("hat")?;
        hat.verify().ctx("hat verify")?;
        let hathat = hat_twist(&hat).ctx("hat")?;
        ensure!(md_equivalent(&hathat, &plus, &limits()).ctx("equiv")?.is_some(), "hat∘hat ≠ id on Z{}", 2 * p + 1);
        ensure!(md_equivalent(&hat, &minus, &limits()).ctx("equiv")?.is_some(), "hat(mp+) ≠ mp− on Z{}", 2 * p + 1);
        let nu = bantay_indicators(&plus, &verlinde_fusion(&plus).ctx("verlinde")?).ctx("bantay")?;
        let nu_hat = bantay_indicators(&hat, &verlinde_fusion(&hat).ctx("verlinde")?).ctx("bantay")?;
        let grading = plus.grading().ok_or("no grading")?;
        for i in 0..plus.rank() {
            let flip = grading[i] == 1 && nu[i] != 0;
            let expect = if flip { -nu[i] } else { nu[i] };
            ensure!(nu_hat[i] == expect, "indicator of {} after hat is {}", plus.labels()[i], nu_hat[i]);
        }
    }
    Ok("Z3, Z5".into())
}

fn c8_condensation() -> Outcome {
    let start = Instant::now();
    let l = limits();
    let (b3, b5) = (a_even_bichar(1), a_even_bichar(2));
    // even codes in MP(ℤ₃) ⊠ MP(ℤ₅)
    let parent = tensor_md(&mp_md(&b3, 1).ctx("mp")?, &mp_md(&b5, 1).ctx("mp")?).ctx("tensor")?;
    let m15 = MetricGroup::from_bichar(b3.clone()).ctx("metric")?.direct_sum(&MetricGroup::from_bichar(b5).ctx("metric")?).ctx("sum")?;
    let child = mp_md(m15.bichar.as_ref().ok_or("no bicharacter")?, 1).ctx("mp")?;
    let even = [Label::product(Label::MPUnit, Label::MPUnit), Label::product(Label::MPAlpha, Label::MPAlpha)];
    ensure!(verify_condensation(&parent, &child, &even, &l).ctx("even codes")?.is_some(), "no certificate for even codes");
    // {1, α} in MP(ℤ₃) onto the pointed part
    let mp = mp_md(&b3, 1).ctx("mp")?;
    let pt = pointed_md(&MetricGroup::from_bichar(b3).ctx("metric")?).ctx("pointed")?;
    let cert = verify_condensation(&mp, &pt, &[Label::MPUnit, Label::MPAlpha], &l).ctx("mp to pointed")?.ok_or("no certificate for MP(Z3) by {1, α}")?;
    let sigma = mp.label_index(&Label::MPSigma(Elem(vec![1]))).ok_or("no sigma")?;
    ensure!(cert.matrix[sigma][1..] == [1, 1], "σ does not restrict to β_h + β_−h");
    // Lagrangian of the hyperbolic ℤ₃ ⊕ ℤ₃
    let q = QuadForm::diagonal(FinAbGroup::cyclic(3), &[1]).ctx("q")?;
    let hyp = MetricGroup::from_quad(q.direct_sum(&q.conj())).ctx("metric")?;
    let parent = pointed_md(&hyp).ctx("pointed")?;
    let trivial = pointed_md(&MetricGroup::from_quad(QuadForm::new(FinAbGroup::trivial(), vec![RootOfUnity::ONE]).ctx("q")?).ctx("metric")?).ctx("pointed")?;
    let lags = lagrangian_subgroups(&hyp);
    ensure!(!lags.is_empty(), "no Lagrangian subgroup");
    for lag in lags {
        let bosons: Vec<Label> = lag.iter().map(|g| Label::Pointed(g.clone())).collect();
        let cert = verify_condensation(&parent, &trivial, &bosons, &l).ctx("lagrangian")?.ok_or("no certificate for a Lagrangian")?;
        for (i, lab) in parent.labels().iter().enumerate() {
            ensure!(cert.matrix[i][0] == u32::from(bosons.contains(lab)), "branching column wrong at {lab}");
        }
    }
    let el = start.elapsed();
    ensure!(el < BUDGET_CONDENSATION, "took {el:.1?} (budget {BUDGET_CONDENSATION:?})");
    Ok(format!("3 condensations, {el:.1?}"))
}

fn c9_lattices() -> Outcome {
    let metric = |q: QuadForm| MetricGroup { quad: q, bichar: None };
    let table = |name: &str, order: u64, value: &dyn Fn(i64) -> RootOfUnity| -> Result<(), String> {
        let d = discriminant_form(&EvenLattice::named(name).ctx(name)?).ctx(name)?;
        let want = QuadForm::from_fn(FinAbGroup::cyclic(order), |x| value(x.0.first().copied().unwrap_or(0) as i64)).ctx(name)?;
        let w = metric_equiv(&metric(d.qform().clone()), &metric(want), &Limits::default()).ctx(name)?;
        ensure!(w.is_some(), "{name}: discriminant form differs from the table");
        Ok(())
    };
    for n in 1..=8i64 {
        table(&format!("A{n}"), n as u64 + 1, &|x| RootOfUnity::new(n * x * x, 2 * (n + 1)))?;
    }
    table("E6", 3, &|x| RootOfUnity::new(4 * x * x, 6))?;
    // the table prints ℤ₃ for E₇; its form exp(πi·3x²/2) lives on ℤ₂
    table("E7", 2, &|x| RootOfUnity::new(3 * x * x, 4))?;
    table("E8", 1, &|_| RootOfUnity::ONE)?;

    let start = Instant::now();
    for name in ["A2+E6", "A1+E7"] {
        let l = EvenLattice::named(name).ctx(name)?;
        let d = discriminant_form(&l).ctx(name)?;
        let iso: Vec<Vec<Elem>> = isotropic_subgroups(&d.metric).into_iter().filter(|h| h.len() > 1).collect();
        ensure!(!iso.is_empty(), "{name}: no isotropic subgroup");
        for h in iso {
            let g = glue(&l, &h).ctx(name)?;
            ensure!(g.rank() == 8 && g.det() == BigInt::one(), "{name}: glued lattice is not unimodular of rank 8");
            let roots = count_roots(&g).ctx(name)?;
            ensure!(roots == 240, "{name}: {roots} roots");
        }
    }
    let el = start.elapsed();
    ensure!(el < BUDGET_ROOTS, "root counting took {el:.1?}");
    let mut names: Vec<String> = (1..=24).map(|n| format!("A{n}")).collect();
    names.extend(["E6", "E7", "E8"].map(String::from));
    for name in &names {
        let l = EvenLattice::named(name).ctx(name)?;
        let c = gauss_central_charge(discriminant_form(&l).ctx(name)?.qform()).ctx(name)?;
        ensure!(c == Ratio::from_integer((l.rank() % 8) as i64), "{name}: c = {c}");
    }
    Ok(format!("table, glue, 240 roots ({el:.1?}), {} signatures", names.len()))
}

fn c10_graphs() -> Outcome {
    let z3 = FinAbGroup::cyclic(3);
    let p = lr_principal_graph(&z3).ctx("principal")?;
    ensure!((p.even.len(), p.odd.len(), p.edges.len()) == (10, 3, 12), "principal n = 3 counts");
    ensure!(p.even_degrees()[9] == 3, "central vertex degree");
    let d = lr_dual_principal_graph(&z3).ctx("dual")?;
    ensure!((d.even.len(), d.odd.len(), d.edges.len()) == (9, 3, 12), "dual n = 3 counts");
    ensure!(d.odd_degrees().iter().all(|x| *x == 4), "dual odd degrees");
    let mut count = 0;
    for a in odd_groups(&[1, 3, 5, 7, 9, 11, 13, 15]) {
        let n = a.order() as usize;
        let k = (n - 1) / 2;
        let p = lr_principal_graph(&a).ctx("principal")?;
        let d = lr_dual_principal_graph(&a).ctx("dual")?;
        ensure!(p.even.len() == n * n + 1 && d.even.len() == n * (2 + k), "vertex counts on {a}");
        for g in [&p, &d] {
            ensure!(g.odd.len() == n && g.edges.len() == n * (n + 1), "counts on {a}");
            ensure!(g.odd_degrees().iter().all(|x| *x == n + 1), "odd degrees on {a}");
            ensure!(g.is_connected(), "disconnected on {a}");
        }
        count += 1;
    }
    Ok(format!("n = 3 figures, {count} groups"))
}

fn c11_hypergroup() -> Outcome {
    let mut count = 0;
    for g in odd_groups(&[1, 3, 5, 7, 9, 11, 13, 15]) {
        let n = g.order() as usize;
        let (dual, table) = ty_dual_hypergroup_and_table(&g).ctx("table")?;
        ensure!(dual.len() == n + 1, "|K̂| ≠ |K| on {g}");
        let elems: Vec<Elem> = g.elements().collect();
        let e = g.exponent() as i64;
        // χ_h(x) = exp(2πi Σ h_i x_i / d_i)
        let chi = |h: &Elem, x: &Elem| {
            let num: i64 = g.factors().iter().enumerate().map(|(i, d)| (h.0[i] * x.0[i]) as i64 * (e / *d as i64)).sum();
            RootOfUnity::new(num, e).to_cyc()
        };
        for k in 0..=n {
            let tau = k == n;
            ensure!(table.entries[0][k].is_one(), "trivial row on {g}");
            let eps = if tau { CycNum::from_int(1, -1) } else { CycNum::one(1) };
            ensure!(table.entries[1][k] == eps, "ε row on {g}");
            for (r, h) in elems.iter().enumerate().skip(1) {
                let want = if tau { CycNum::zero(1) } else { chi(h, &elems[k]) };
                ensure!(table.entries[1 + r][k] == want, "row c({h}) on {g}");
            }
        }
        ensure!(table.is_orthogonal(), "rows not orthogonal on {g}");
        let half = BigRational::new(1.into(), 2.into());
        for i in 2..=n {
            let j = dual.star(i);
            ensure!(*dual.lambda(i, j, 0) == half && *dual.lambda(i, j, 1) == half, "c_χ c_χ̄ ≠ (1+ε)/2 on {g}");
        }
        count += 1;
    }
    Ok(format!("{count} groups"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("modular axioms", c1_modular_axioms),
        ("factorization of the center", c2_factorization),
        ("fusion rules", c3_fusion_rules),
        ("Frobenius-Schur indicators", c4_frobenius_schur),
        ("central charge", c5_central_charge),
        ("classification counts", c6_classification),
        ("hat twist", c7_hat_twist),
        ("condensation", c8_condensation),
        ("lattices", c9_lattices),
        ("principal graphs", c10_graphs),
        ("hypergroup character table", c11_hypergroup),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} ({:.1?})", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
