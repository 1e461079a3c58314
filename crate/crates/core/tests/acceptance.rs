//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero on any failure other than the single known discrepancy in the
//! D4 reference decomposition (criterion 3).

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use fusion_qca::center::{build_autoequivalence, AutoequivalenceSpec, CenterError, CenterModel, ElementRef, TauSign};
use fusion_qca::cli::config::{CategorySpec, Context, TySpec};
use fusion_qca::fusion::{rep_ring, FusionRing, ObjectVector};
use fusion_qca::groups::chartab::verify_orthogonality;
use fusion_qca::groups::{
    build_group, character_table, convolve, fourier, inverse_fourier, AbelianGroup, Cyclotomic, FiniteGroup, GroupSpec,
};
use fusion_qca::obstruct::{generator_search, scan, spread_bound, Budget, ChainSpec, SearchOutcome, SpreadBound, TY_BANNER};
use fusion_qca::tube::{factorization_dim_check, local_embedding_bound, tube_dim_center, tube_dim_hom, Cover};

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn s<E: Display>(e: E) -> String {
    e.to_string()
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn within(label: &str, start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took < limit, "{label} took {took:?}, limit {limit:?}");
    Ok(took)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn labeled(ring: &FusionRing, entries: &[(&str, u64)]) -> Result<ObjectVector, String> {
    let map: BTreeMap<String, u64> = entries.iter().map(|(l, c)| (l.to_string(), *c)).collect();
    ring.vector_from_labels(&map).map_err(s)
}

fn rep_context(spec: GroupSpec) -> Result<Context, String> {
    Context::build(&CategorySpec::RepGroup(spec)).map_err(s)
}

fn ty_context(abelian: Vec<u64>, bicharacter: Vec<Vec<i64>>) -> Result<Context, String> {
    Context::build(&CategorySpec::Ty(TySpec {
        abelian,
        bicharacter,
        tau: TauSign::Plus,
    }))
    .map_err(s)
}

fn names(refs: &[&str]) -> Vec<ElementRef> {
    refs.iter().map(|n| ElementRef::Name(n.to_string())).collect()
}

fn fixing_labels(model: &CenterModel, fixing: &[usize]) -> BTreeSet<String> {
    fixing.iter().map(|&g| model.label(g).to_string()).collect()
}

// ---------------------------------------------------------------------------
// Z/2 with the e-m swap

/// `(T, S)` with `(a triv + b sgn)^k = T triv + S sgn`, by repeated convolution
/// on the dual group.
fn z2_power_by_convolution(a: u64, b: u64, k: usize) -> (BigInt, BigInt) {
    let z2 = AbelianGroup::new(vec![2]).unwrap();
    let f = vec![BigInt::from(a), BigInt::from(b)];
    let mut acc = vec![BigInt::one(), BigInt::zero()];
    for _ in 0..k {
        acc = convolve(&z2, &acc, &f);
    }
    (acc[0].clone(), acc[1].clone())
}

/// Center multiplicities and fixing set for Z/2 under `(x, y) -> (y, x)`,
/// with simple `([x],pi{y})` and invertible `g` acting by translation.
fn z2_swap_oracle(a: u64, b: u64, k: usize) -> (BTreeMap<String, BigUint>, BTreeSet<String>) {
    let (t, sg) = z2_power_by_convolution(a, b, k);
    let t = t.to_biguint().unwrap();
    let sg = sg.to_biguint().unwrap();
    // I(chi_y) = ([0],chi_y) + ([1],chi_y)
    let m = |_x: usize, y: usize| -> BigUint {
        if y == 0 {
            t.clone()
        } else {
            sg.clone()
        }
    };
    let mut vec = BTreeMap::new();
    for x in 0..2 {
        for y in 0..2 {
            vec.insert(format!("([{x}],pi{y})"), m(x, y));
        }
    }
    let mut fixing = BTreeSet::new();
    for gx in 0..2 {
        for gy in 0..2 {
            // (g . F(m))(x, y) = F(m)(x - gx, y - gy) = m(y - gy, x - gx)
            let ok = (0..2).all(|x| (0..2).all(|y| m((y + gy) % 2, (x + gx) % 2) == m(x, y)));
            if ok {
                fixing.insert(format!("([{gx}],pi{gy})"));
            }
        }
    }
    (vec, fixing)
}

fn z2_swap_spec(a: u64, b: u64) -> Result<ChainSpec, String> {
    let ctx = rep_context(GroupSpec::Abelian(vec![2]))?;
    ensure!(ctx.ring.labels() == ["chi0", "chi1"], "unexpected Z/2 labels {:?}", ctx.ring.labels());
    let f = ctx
        .autoequivalence(Some(&AutoequivalenceSpec::Bicharacter(vec![vec![1]])))
        .map_err(s)?;
    let x = ctx.ring.vector_u64(&[a, b]).map_err(s)?;
    ChainSpec::new(ctx.ring.clone(), ctx.model.clone(), f, x, ctx.ring.default_cutoff()).map_err(s)
}

fn z2_scan_against_oracle(a: u64, b: u64, k_max: usize) -> Result<Vec<BTreeSet<String>>, String> {
    let spec = z2_swap_spec(a, b)?;
    let report = scan(&spec, 1, k_max, k_max).map_err(s)?;
    let mut out = Vec::new();
    for row in &report.rows {
        let k = row.check.k;
        let (m, fixing) = z2_swap_oracle(a, b, k);
        for (label, want) in &m {
            let z = spec.model.index_of(label).ok_or(format!("missing center label {label}"))?;
            ensure!(&row.check.m_k[z] == want, "k={k}: {label} is {} but the oracle gives {want}", row.check.m_k[z]);
        }
        let got = fixing_labels(&spec.model, &row.check.fixing);
        ensure!(got == fixing, "k={k}: fixing set {got:?}, oracle {fixing:?}");
        ensure!(row.check.is_witness() == row.s_max.is_some(), "k={k}: s_max present on a non-witness row");
        out.push(got);
    }
    Ok(out)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let spec = z2_swap_spec(2, 1)?;
    let report = scan(&spec, 1, 12, 12).map_err(s)?;
    let took = within("scan", start, Duration::from_secs(1))?;
    ensure!(report.witness_count() == 12, "only {} of 12 k are witnesses", report.witness_count());
    for row in &report.rows {
        let k = row.check.k as u32;
        let p = 3u64.pow(k);
        let (t, sg) = ((p + 1) / 2, (p - 1) / 2);
        let (ct, cs) = z2_power_by_convolution(2, 1, k as usize);
        ensure!(ct == BigInt::from(t) && cs == BigInt::from(sg), "k={k}: convolution gives ({ct},{cs})");
        let ring_power = spec.ring.power(&spec.x, k as usize).map_err(s)?;
        ensure!(
            ring_power.coeffs() == [big(t), big(sg)],
            "k={k}: X^k = {}",
            spec.ring.format_vector(&ring_power)
        );
    }
    z2_scan_against_oracle(2, 1, 12)?;
    Ok(format!("12/12 witnesses, multiplicities ((3^k+1)/2, (3^k-1)/2) exact, scan {took:?}"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let spec = z2_swap_spec(1, 1)?;
    let report = scan(&spec, 1, 12, 12).map_err(s)?;
    let took = within("scan", start, Duration::from_secs(1))?;
    let unit = spec.model.unit();
    for row in &report.rows {
        ensure!(
            row.check.fixing.contains(&unit),
            "k={}: unit missing from fixing set {:?}",
            row.check.k,
            fixing_labels(&spec.model, &row.check.fixing)
        );
    }
    z2_scan_against_oracle(1, 1, 12)?;
    Ok(format!("12/12 fixing sets contain the unit, scan {took:?}"))
}

// ---------------------------------------------------------------------------
// D4

const D4_NAMES: [&str; 8] = ["1", "r", "r2", "r3", "s", "rs", "r2s", "r3s"];

/// `(a, b)` with `g = r^a s^b`.
fn d4_decode(group: &FiniteGroup, g: usize) -> (u32, u32) {
    let name = group.name(g);
    let i = D4_NAMES.iter().position(|n| *n == name).expect("D4 element name");
    ((i % 4) as u32, (i / 4) as u32)
}

fn sign(e: u32) -> Cyclotomic {
    Cyclotomic::integer(4, if e % 2 == 0 { 1 } else { -1 })
}

/// Reference characters of the centralizers, evaluated at `r^a s^b`.
#[derive(Clone, Copy, Debug)]
enum D4Char {
    Chi(u32, u32),
    Rho,
    Lambda(u32),
    /// On `{1, s, r2, r2s}`: first index is the sign on `r2`, second the sign on `s`.
    Nu(u32, u32),
    /// On `{1, rs, r2, r3s}`: first index is the sign on `r2`, second the sign on `rs`.
    NuPrime(u32, u32),
}

impl D4Char {
    fn eval(self, (a, b): (u32, u32)) -> Cyclotomic {
        match self {
            D4Char::Chi(e, d) => sign(e * a + d * b),
            D4Char::Rho => Cyclotomic::integer(
                4,
                match (a, b) {
                    (0, 0) => 2,
                    (2, 0) => -2,
                    _ => 0,
                },
            ),
            D4Char::Lambda(j) => Cyclotomic::root_of_unity(4, (j * a) as i64),
            D4Char::Nu(x, y) => sign(x * (a / 2) + y * b),
            D4Char::NuPrime(x, y) => {
                let (p, q) = if b == 0 { (a / 2, 0) } else { ((a - 1) / 2, 1) };
                sign(x * p + y * q)
            }
        }
    }
}

fn d4_find_simple(model: &CenterModel, group: &FiniteGroup, rep: &str, chi: D4Char) -> Option<usize> {
    let rep = group.element_by_name(rep)?;
    (0..model.len()).find(|&z| {
        let Some((r, values)) = model.rep_group_simple(z) else {
            return false;
        };
        let cent = model.centralizer_of_simple(z).unwrap_or(&[]);
        r == rep
            && cent
                .iter()
                .zip(&values)
                .all(|(&p, v)| *v == chi.eval(d4_decode(group, p)))
    })
}

fn d4_expected(model: &CenterModel, group: &FiniteGroup, terms: &[(&str, D4Char)]) -> Result<Vec<BigUint>, String> {
    let mut out = vec![BigUint::zero(); model.len()];
    for &(rep, chi) in terms {
        let z = d4_find_simple(model, group, rep, chi).ok_or(format!("no simple ([{rep}], {chi:?})"))?;
        out[z] += 1u32;
    }
    Ok(out)
}

/// Multiplicities of `(chi00, chi01, chi10, chi11, rho)` in `X^k`, from the
/// fusion rules `chi (x) chi' = chi chi'`, `chi (x) rho = rho`, `rho (x) rho = sum chi`.
fn d4_power(x: [u64; 5], k: usize) -> [u64; 5] {
    let mut acc = [1, 0, 0, 0, 0];
    for _ in 0..k {
        let mut next = [0u64; 5];
        for i in 0..4 {
            for j in 0..4 {
                next[i ^ j] += acc[i] * x[j];
            }
        }
        for c in next.iter_mut().take(4) {
            *c += acc[4] * x[4];
        }
        next[4] = acc[4] * x[..4].iter().sum::<u64>() + x[4] * acc[..4].iter().sum::<u64>();
        acc = next;
    }
    acc
}

struct SubCheck {
    id: &'static str,
    result: Check,
}

fn d4_context() -> Result<(Context, FiniteGroup), String> {
    let ctx = rep_context(GroupSpec::Dihedral(4))?;
    let group = ctx.group.as_ref().ok_or("no group")?.0.clone();
    for (i, n) in D4_NAMES.iter().enumerate() {
        ensure!(group.name(i) == *n, "unexpected D4 element order");
    }
    Ok((ctx, group))
}

fn criterion_3_parts() -> Result<Vec<SubCheck>, String> {
    let start = Instant::now();
    let (ctx, group) = d4_context()?;
    let model = &ctx.model;
    let ring = &ctx.ring;
    let mut parts = Vec::new();

    let a = if model.len() == 22 && model.unaggregated_len() == 22 {
        Ok("22 simples".to_string())
    } else {
        Err(format!("{} simples", model.len()))
    };
    parts.push(SubCheck { id: "3a", result: a });

    let b = (|| -> Check {
        let mut mismatches = Vec::new();
        for (e, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let terms = [
                ("1", D4Char::Chi(e, d)),
                ("r2", D4Char::Chi(e, d)),
                ("r", D4Char::Lambda(2 * e)),
                ("s", D4Char::Nu(0, d)),
                ("rs", D4Char::NuPrime(0, (e + d) % 2)),
            ];
            let label = format!("chi{e}{d}");
            let want = d4_expected(model, &group, &terms)?;
            let got = model.induce(&ring.simple(ring.index_of(&label).map_err(s)?)).map_err(s)?;
            if got != want {
                mismatches.push(format!("I({label}): reference {} vs computed {}", model.format_vector(&want), model.format_vector(&got)));
            }
        }
        let rho_terms = [
            ("1", D4Char::Rho),
            ("r2", D4Char::Rho),
            ("r", D4Char::Lambda(1)),
            ("r", D4Char::Lambda(2)),
            ("s", D4Char::Nu(1, 0)),
            ("s", D4Char::Nu(1, 1)),
            ("rs", D4Char::NuPrime(1, 0)),
            ("rs", D4Char::NuPrime(1, 1)),
        ];
        let want = d4_expected(model, &group, &rho_terms)?;
        let got = model.induce(&ring.simple(ring.index_of("rho").map_err(s)?)).map_err(s)?;
        if got != want {
            let diff: Vec<String> = (0..model.len())
                .filter(|&z| got[z] != want[z])
                .map(|z| format!("{} reference {} computed {}", model.label(z), want[z], got[z]))
                .collect();
            mismatches.push(format!("I(rho): {}", diff.join("; ")));
        }
        if mismatches.is_empty() {
            Ok("I(chi_ed) and I(rho) match entry for entry".into())
        } else {
            Err(mismatches.join(" | "))
        }
    })();
    parts.push(SubCheck { id: "3b", result: b });

    let c = (|| -> Check {
        let inv = model.invertibles();
        ensure!(inv.len() == 8, "{} invertibles", inv.len());
        ensure!(inv.iter().all(|&z| model.dim(z) == Some(1)), "an invertible has dimension != 1");
        let mut expected = BTreeSet::new();
        for rep in ["1", "r2"] {
            for (e, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                expected.insert(d4_find_simple(model, &group, rep, D4Char::Chi(e, d)).ok_or("unresolved")?);
            }
        }
        ensure!(inv.iter().copied().collect::<BTreeSet<_>>() == expected, "invertibles differ from the linear central simples");
        let extra: Vec<String> = ["1", "r2"]
            .iter()
            .map(|rep| d4_find_simple(model, &group, rep, D4Char::Rho).map(|z| model.label(z).to_string()))
            .collect::<Option<_>>()
            .ok_or("unresolved rho simple")?;
        ensure!(
            model.non_invertible_central_candidates() == extra,
            "excluded candidates {:?}, expected {extra:?}",
            model.non_invertible_central_candidates()
        );
        let notes = cli_json(&["scan", "--config", &config_path("d4.json"), "--json"])?;
        let note_text = notes["summary"]["notes"].to_string();
        ensure!(
            extra.iter().all(|l| note_text.contains(l.as_str())),
            "report notes do not flag {extra:?}: {note_text}"
        );
        Ok(format!("8 invertibles of dim 1; report flags {} as excluded", extra.join(", ")))
    })();
    parts.push(SubCheck { id: "3c", result: c });

    let d = (|| -> Check {
        let coeffs = [1, 2, 1, 3, 1];
        let x = labeled(ring, &[("chi00", 1), ("chi01", 2), ("chi10", 1), ("chi11", 3), ("rho", 1)])?;
        let f = ctx.autoequivalence(Some(&AutoequivalenceSpec::Automorphism(names(&["r", "rs"])))).map_err(s)?;
        let spec = ChainSpec::new(ring.clone(), model.clone(), f, x, ring.default_cutoff()).map_err(s)?;
        let report = scan(&spec, 1, 8, 8).map_err(s)?;
        ensure!(report.witness_count() == 8, "{} of 8 witnesses", report.witness_count());
        for k in 1..=8 {
            let p = d4_power(coeffs, k);
            ensure!(p[0] != p[1] && p[2] != p[3], "k={k}: X^k violates the separation condition");
            let got = spec.ring.power(&spec.x, k).map_err(s)?;
            let want = p.iter().map(|&c| big(c)).collect::<Vec<_>>();
            ensure!(got.coeffs() == want.as_slice(), "k={k}: X^k disagrees with the fusion oracle");
        }
        Ok("8/8 witnesses".into())
    })();
    parts.push(SubCheck { id: "3d", result: d });

    let took = start.elapsed();
    parts.push(SubCheck {
        id: "3t",
        result: if took < Duration::from_secs(5) {
            Ok(format!("{took:?}"))
        } else {
            Err(format!("took {took:?}, limit 5s"))
        },
    });
    Ok(parts)
}

/// The reference decomposition lists `lambda_1 + lambda_2` on `[r]` for
/// `I(rho)`; reciprocity forces `lambda_1 + lambda_3` since `rho(r2) = -2`.
/// The failure is accepted only if it is exactly that entry.
fn is_known_d4_discrepancy(parts: &[SubCheck]) -> bool {
    let failing: Vec<&SubCheck> = parts.iter().filter(|p| p.result.is_err()).collect();
    if failing.len() != 1 || failing[0].id != "3b" {
        return false;
    }
    let Ok((ctx, group)) = d4_context() else {
        return false;
    };
    let model = &ctx.model;
    let lambda = |j| d4_find_simple(model, &group, "r", D4Char::Lambda(j)).map(|z| model.label(z).to_string());
    let (Some(l2), Some(l3)) = (lambda(2), lambda(3)) else {
        return false;
    };
    let msg = failing[0].result.as_ref().unwrap_err();
    msg.starts_with("I(rho): ")
        && !msg.contains(" | ")
        && msg.contains(&format!("{l2} reference 1 computed 0"))
        && msg.contains(&format!("{l3} reference 0 computed 1"))
        && msg.matches(" reference ").count() == 2
}

// ---------------------------------------------------------------------------
// Character tables

fn hand_table(spec: &GroupSpec) -> Vec<Vec<Cyclotomic>> {
    let group = build_group(spec).unwrap();
    let n = group.order();
    let int = |v: i64| Cyclotomic::integer(4, v);
    match spec {
        GroupSpec::Abelian(orders) => {
            let a = AbelianGroup::new(orders.clone()).unwrap();
            let e = a.exponent();
            a.elements()
                .map(|y| {
                    (0..n)
                        .map(|i| {
                            let x = a.element(i);
                            let exp: u64 = x
                                .iter()
                                .zip(&y)
                                .zip(orders)
                                .map(|((xi, yi), ni)| xi * yi * (e / ni))
                                .sum();
                            Cyclotomic::root_of_unity(e as u32, (exp % e) as i64)
                        })
                        .collect()
                })
                .collect()
        }
        GroupSpec::Dihedral(3) => {
            let decode = |x: usize| (x % 3, x / 3);
            vec![
                (0..n).map(|_| int(1)).collect(),
                (0..n).map(|x| int(if decode(x).1 == 0 { 1 } else { -1 })).collect(),
                (0..n)
                    .map(|x| match decode(x) {
                        (0, 0) => int(2),
                        (_, 0) => int(-1),
                        _ => int(0),
                    })
                    .collect(),
            ]
        }
        GroupSpec::Dihedral(4) => {
            let mut rows: Vec<Vec<Cyclotomic>> = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|&(e, d)| (0..n).map(|x| D4Char::Chi(e, d).eval(d4_decode(&group, x))).collect())
                .collect();
            rows.push((0..n).map(|x| D4Char::Rho.eval(d4_decode(&group, x))).collect());
            rows
        }
        _ => unreachable!("no hand table"),
    }
}

fn check_table(name: &str, spec: GroupSpec) -> Result<(), String> {
    let group = build_group(&spec).map_err(s)?;
    let table = character_table(&group).map_err(s)?;
    let hand = hand_table(&spec);
    ensure!(table.len() == hand.len(), "{name}: {} rows, expected {}", table.len(), hand.len());
    let mut unused: Vec<Vec<Cyclotomic>> = (0..table.len()).map(|r| table.expand(r)).collect();
    for row in &hand {
        let pos = unused.iter().position(|r| r == row).ok_or(format!("{name}: hand row missing from the table"))?;
        unused.remove(pos);
    }
    ensure!(verify_orthogonality(&table), "{name}: built-in orthogonality check fails");
    let n = group.order() as i64;
    let expanded: Vec<Vec<Cyclotomic>> = (0..table.len()).map(|r| table.expand(r)).collect();
    for (i, a) in expanded.iter().enumerate() {
        for (j, b) in expanded.iter().enumerate() {
            let mut sum = Cyclotomic::zero(table.conductor);
            for g in 0..group.order() {
                sum = &sum + &(&a[g] * &b[g].conj());
            }
            let want = Cyclotomic::integer(table.conductor, if i == j { n } else { 0 });
            ensure!(sum == want, "{name}: rows {i},{j} not orthogonal");
        }
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            let mut sum = Cyclotomic::zero(table.conductor);
            for row in &expanded {
                sum = &sum + &(&row[g] * &row[h].conj());
            }
            let same_class = table.class_of[g] == table.class_of[h];
            let want = if same_class { group.centralizer(g).len() as i64 } else { 0 };
            ensure!(sum == Cyclotomic::integer(table.conductor, want), "{name}: columns {g},{h} not orthogonal");
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let cases = [
        ("Z/2", GroupSpec::Abelian(vec![2])),
        ("Z/2xZ/2", GroupSpec::Abelian(vec![2, 2])),
        ("Z/4", GroupSpec::Abelian(vec![4])),
        ("S3", GroupSpec::Dihedral(3)),
        ("D4", GroupSpec::Dihedral(4)),
    ];
    for (name, spec) in cases {
        check_table(name, spec)?;
    }
    Ok("Z/2, Z/2xZ/2, Z/4, S3, D4 match up to row order; row and column orthogonality exact".into())
}

// ---------------------------------------------------------------------------
// Tube dimensions

struct Fixture {
    name: &'static str,
    ctx: Context,
    x: ObjectVector,
}

fn tube_fixtures() -> Result<Vec<Fixture>, String> {
    let z2 = rep_context(GroupSpec::Abelian(vec![2]))?;
    let z2x = z2.ring.regular();
    let (d4, _) = d4_context()?;
    let d4x = d4.ring.regular();
    let ty = ty_context(vec![2], vec![vec![1]])?;
    let tyx = labeled(&ty.ring, &[("0", 1), ("m", 1)])?;
    Ok(vec![
        Fixture { name: "Rep(Z/2), 1+sigma", ctx: z2, x: z2x },
        Fixture { name: "Rep(D4), regular", ctx: d4, x: d4x },
        Fixture { name: "TY(Z/2), 1+m", ctx: ty, x: tyx },
    ])
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let mut detail = Vec::new();
    for fx in tube_fixtures()? {
        let ring = &fx.ctx.ring;
        let n = ring.strong_gen_index(&fx.x, ring.default_cutoff()).map_err(s)?;
        let mut distinct = BTreeSet::new();
        let mut per_k = Vec::new();
        for k in 1..=6 {
            let xk = ring.power(&fx.x, k).map_err(s)?;
            let hom = tube_dim_hom(ring, &xk).map_err(s)?;
            let center = tube_dim_center(&fx.ctx.model, ring, &xk).map_err(s)?;
            ensure!(hom == center, "{}: k={k} hom {hom} vs center {center}", fx.name);
            if fx.name.starts_with("Rep(Z/2)") {
                ensure!(hom == BigUint::from(4u32).pow(k as u32), "{}: k={k} gives {hom}, not 4^k", fx.name);
            }
            let covers = Cover::enumerate(k, n, 3);
            for cover in &covers {
                let chk = factorization_dim_check(ring, &fx.x, k, cover, ring.default_cutoff()).map_err(s)?;
                ensure!(
                    chk.contracted == hom,
                    "{}: k={k} cover {cover} contracts to {} vs {hom}",
                    fx.name,
                    chk.contracted
                );
                distinct.insert(cover.to_string());
            }
            per_k.push(covers.len());
        }
        ensure!(per_k[5] >= 2, "{}: fewer than two good covers at k=6", fx.name);
        detail.push(format!("{} ({} covers)", fx.name, distinct.len()));
    }
    let took = within("three-way check", start, Duration::from_secs(10))?;
    Ok(format!("hom = center = factorization for k<=6: {}; {took:?}", detail.join(", ")))
}

fn criterion_6() -> Check {
    let mut fixtures = tube_fixtures()?;
    let z2 = rep_context(GroupSpec::Abelian(vec![2]))?;
    let z2x = z2.ring.vector_u64(&[2, 1]).map_err(s)?;
    fixtures.push(Fixture { name: "Rep(Z/2), 2+sigma", ctx: z2, x: z2x });
    let (d4, _) = d4_context()?;
    let d4x = labeled(&d4.ring, &[("chi00", 1), ("chi01", 2), ("chi10", 1), ("chi11", 3), ("rho", 1)])?;
    fixtures.push(Fixture { name: "Rep(D4), generator", ctx: d4, x: d4x });
    let ty = ty_context(vec![2, 2], vec![vec![0, 1], vec![1, 0]])?;
    let tyx = labeled(&ty.ring, &[("(0,0)", 3), ("(0,1)", 2), ("(1,0)", 1), ("(1,1)", 1), ("m", 1)])?;
    fixtures.push(Fixture { name: "TY(Z/2xZ/2), generator", ctx: ty, x: tyx });
    let mut count = 0;
    for fx in &fixtures {
        let ring = &fx.ctx.ring;
        for k in 1..=6 {
            ensure!(local_embedding_bound(ring, &fx.x, k).map_err(s)?, "{}: bound fails at k={k}", fx.name);
            let tube = tube_dim_center(&fx.ctx.model, ring, &ring.power(&fx.x, k).map_err(s)?).map_err(s)?;
            for m in 0..k {
                let end = ring.power(&fx.x, m).map_err(s)?.end_dim();
                ensure!(end <= tube, "{}: End(X^{m}) = {end} > tube(X^{k}) = {tube}", fx.name);
                count += 1;
            }
        }
    }
    Ok(format!("{count} inequalities over {} fixtures, k<=6", fixtures.len()))
}

// ---------------------------------------------------------------------------
// Spread bound

fn spread_brute(n: usize, k: usize) -> SpreadBound {
    (0..=k)
        .filter(|&sp| k > 14 * n + 4 * sp && k > 6 * n + 12 * sp)
        .max()
        .map_or(SpreadBound::Vacuous, |sp| SpreadBound::Max(sp as u64))
}

fn criterion_7() -> Check {
    for n in 0..=5 {
        for k in 0..=200 {
            ensure!(spread_bound(n, k) == spread_brute(n, k), "n={n} k={k}: {} vs {}", spread_bound(n, k), spread_brute(n, k));
        }
    }
    ensure!(spread_bound(1, 14) == SpreadBound::Vacuous, "n=1 k=14");
    ensure!(spread_bound(1, 15) == SpreadBound::Max(0), "n=1 k=15");
    ensure!(spread_bound(1, 31) == SpreadBound::Max(2), "n=1 k=31");
    Ok("n<=5, k<=200 agree with brute force; (1,14) vacuous, (1,15) -> 0, (1,31) -> 2".into())
}

// ---------------------------------------------------------------------------
// Fourier / convolution

const SMALL_ABELIAN: &[&[u64]] = &[
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[2, 3],
    &[7],
    &[8],
    &[2, 4],
    &[2, 2, 2],
    &[9],
    &[3, 3],
    &[10],
    &[11],
    &[12],
    &[2, 6],
    &[13],
    &[14],
    &[15],
    &[16],
    &[4, 4],
    &[2, 8],
    &[2, 2, 4],
    &[2, 2, 2, 2],
];

fn fourier_case(orders: &[u64], f: &[u64], k: usize) -> Result<(), String> {
    let a = AbelianGroup::new(orders.to_vec()).map_err(s)?;
    let group = a.to_finite_group();
    let table = character_table(&group).map_err(s)?;
    let ring = rep_ring(&group, &table).map_err(s)?;
    let elems: Vec<Vec<u64>> = a.elements().collect();
    let row_of: Vec<usize> = a
        .characters()
        .map(|chi| {
            let values: Vec<Cyclotomic> = elems.iter().map(|x| a.evaluate(&chi, x)).collect();
            table.find_row_by_elements(&values).ok_or("character not in table".to_string())
        })
        .collect::<Result<_, _>>()?;

    let fb: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let mut coeffs = vec![BigUint::zero(); ring.rank()];
    for (y, &c) in f.iter().enumerate() {
        coeffs[row_of[y]] += c;
    }
    let x = ring.vector(coeffs).map_err(s)?;
    let xk = ring.power(&x, k).map_err(s)?;

    let hat = fourier(&a, &fb);
    let powered: Vec<Cyclotomic> = hat
        .iter()
        .map(|v| (0..k).fold(Cyclotomic::one(v.conductor()), |acc, _| &acc * v))
        .collect();
    let via_fourier = inverse_fourier(&a, &powered).map_err(s)?;

    let mut via_conv = vec![BigInt::zero(); a.order()];
    via_conv[0] = BigInt::one();
    for _ in 0..k {
        via_conv = convolve(&a, &via_conv, &fb);
    }
    for y in 0..a.order() {
        let fusion = BigInt::from(xk.get(row_of[y]).clone());
        ensure!(
            fusion == via_fourier[y] && fusion == via_conv[y],
            "A={orders:?} f={f:?} k={k}: character {y}: fusion {fusion}, fourier {}, convolution {}",
            via_fourier[y],
            via_conv[y]
        );
    }
    Ok(())
}

fn criterion_8() -> Check {
    let config = Config {
        cases: 50,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let strategy = (0..SMALL_ABELIAN.len()).prop_flat_map(|g| {
        let order: u64 = SMALL_ABELIAN[g].iter().product();
        (Just(g), prop::collection::vec(0u64..4, order as usize), 1usize..=5)
    });
    let cases = Cell::new(0usize);
    runner
        .run(&strategy, |(g, f, k)| {
            cases.set(cases.get() + 1);
            fourier_case(SMALL_ABELIAN[g], &f, k).map_err(TestCaseError::fail)
        })
        .map_err(s)?;
    ensure!(cases.get() >= 50, "only {} cases ran", cases.get());
    Ok(format!("{} seeded cases on groups of order <= 16: fusion = inverse Fourier = convolution", cases.get()))
}

// ---------------------------------------------------------------------------
// Tambara-Yamagami

/// `(n_a, n_m)` of `X^k` over `A = Z/2 x Z/2` with `m (x) m = sum_a a`.
fn ty_klein_power(x: [u64; 4], xm: u64, k: usize) -> ([u64; 4], u64) {
    let mut n = [1u64, 0, 0, 0];
    let mut nm = 0u64;
    for _ in 0..k {
        let mut next = [0u64; 4];
        for (a, slot) in next.iter_mut().enumerate() {
            *slot = (0..4).map(|b| n[b] * x[a ^ b]).sum::<u64>() + nm * xm;
        }
        let next_m = nm * x.iter().sum::<u64>() + xm * n.iter().sum::<u64>();
        n = next;
        nm = next_m;
    }
    (n, nm)
}

/// Twists `c` with `n_{phi^-1(a - c)} = n_a` for all `a`; element `(p, q)` has index `2p + q`.
fn ty_klein_fixing(n: &[u64; 4]) -> BTreeSet<usize> {
    let swap = |a: usize| ((a & 1) << 1) | (a >> 1);
    (0..4).filter(|&c| (0..4).all(|a| n[swap(a ^ c)] == n[a])).collect()
}

fn criterion_9() -> Check {
    const NAMES: [&str; 4] = ["(0,0)", "(0,1)", "(1,0)", "(1,1)"];
    let ctx = ty_context(vec![2, 2], vec![vec![0, 1], vec![1, 0]])?;
    let data = ctx.model.ty_data().ok_or("not a TY model")?;
    let elems: Vec<Vec<u64>> = data.group.elements().collect();
    for x in &elems {
        for y in &elems {
            let sw = |v: &Vec<u64>| vec![v[1], v[0]];
            ensure!(data.chi.exponent(&sw(x), &sw(y)) == data.chi.exponent(x, y), "swap is not an isometry");
        }
    }
    let f = ctx
        .autoequivalence(Some(&AutoequivalenceSpec::TyIsometry(names(&["(0,1)", "(1,0)"]))))
        .map_err(s)?;

    let bad = ty_context(vec![3, 3], vec![vec![1, 0], vec![0, 2]])?;
    let bad_data = bad.model.ty_data().ok_or("not a TY model")?;
    ensure!(
        bad_data.chi.exponent(&[1, 0], &[1, 0]) != bad_data.chi.exponent(&[0, 1], &[0, 1]),
        "diag(1,2) unexpectedly swap-invariant"
    );
    match build_autoequivalence(&bad.model, &AutoequivalenceSpec::TyIsometry(names(&["(0,1)", "(1,0)"]))) {
        Err(CenterError::NonIsometry { .. }) => {}
        other => return Err(format!("non-isometry accepted or misreported: {other:?}")),
    }

    let xa = [3, 2, 1, 1];
    let x = labeled(&ctx.ring, &[(NAMES[0], 3), (NAMES[1], 2), (NAMES[2], 1), (NAMES[3], 1), ("m", 1)])?;
    ensure!(!ty_klein_fixing(&xa).iter().any(|_| true), "generator is periodic up to a twist");
    let spec = ChainSpec::new(ctx.ring.clone(), ctx.model.clone(), f, x, ctx.ring.default_cutoff()).map_err(s)?;
    let report = scan(&spec, 1, 6, 6).map_err(s)?;
    ensure!(report.necessary_condition_only, "report not marked necessary-condition-only");
    let mut verdicts = Vec::new();
    for row in &report.rows {
        let k = row.check.k;
        let (n, _) = ty_klein_power(xa, 1, k);
        for (a, name) in NAMES.iter().enumerate() {
            let z = spec.model.index_of(&format!("X_{name}")).ok_or("missing X label")?;
            ensure!(row.check.m_k[z] == big(n[a]), "k={k}: X_{name} is {} vs oracle {}", row.check.m_k[z], n[a]);
        }
        let want: BTreeSet<String> = ty_klein_fixing(&n).iter().map(|&c| format!("X_{}", NAMES[c])).collect();
        let got = fixing_labels(&spec.model, &row.check.fixing);
        ensure!(got == want, "k={k}: fixing {got:?}, oracle {want:?}");
        verdicts.push(if row.check.is_witness() { 'W' } else { '.' });
    }
    let text = cli_text(&["scan", "--config", &config_path("ty_klein.json")])?;
    ensure!(text.contains(TY_BANNER), "text report lacks the banner");
    Ok(format!(
        "isometry accepted, Z/3xZ/3 diag(1,2) swap rejected; verdicts k=1..6 {} match the oracle; banner present",
        verdicts.iter().collect::<String>()
    ))
}

// ---------------------------------------------------------------------------
// Generator search

fn criterion_10() -> Check {
    let budget = Budget::default();
    let z2 = rep_context(GroupSpec::Abelian(vec![2]))?;
    let (d4, _) = d4_context()?;
    let mut found = Vec::new();
    for (name, ctx, spec) in [
        ("Z/2 e-m swap", &z2, AutoequivalenceSpec::Bicharacter(vec![vec![1]])),
        ("D4 F_phi", &d4, AutoequivalenceSpec::Automorphism(names(&["r", "rs"]))),
    ] {
        let f = ctx.autoequivalence(Some(&spec)).map_err(s)?;
        let x = match generator_search(&ctx.model, &ctx.ring, &f, &budget).map_err(s)? {
            SearchOutcome::Found { x, .. } => x,
            other => return Err(format!("{name}: {other:?}")),
        };
        let chain = ChainSpec::new(ctx.ring.clone(), ctx.model.clone(), f, x.clone(), ctx.ring.default_cutoff()).map_err(s)?;
        let report = scan(&chain, 1, 8, 8).map_err(s)?;
        ensure!(report.witness_count() == 8, "{name}: rescan has {} of 8 witnesses", report.witness_count());
        let c = x.to_u64().ok_or("huge candidate")?;
        if name.starts_with("Z/2") {
            let fixing = z2_scan_against_oracle(c[0], c[1], 8)?;
            ensure!(fixing.iter().all(BTreeSet::is_empty), "{name}: oracle finds a fixed k");
        } else {
            let idx = |l: &str| ctx.ring.index_of(l).map(|i| c[i]).map_err(s);
            ensure!(
                idx("chi00")? != idx("chi01")? && idx("chi10")? != idx("chi11")?,
                "{name}: candidate violates the separation condition"
            );
        }
        found.push(format!("{name} -> {}", ctx.ring.format_vector(&x)));
    }
    for (name, ctx) in [("Z/2", &z2), ("D4", &d4)] {
        let id = ctx.autoequivalence(None).map_err(s)?;
        match generator_search(&ctx.model, &ctx.ring, &id, &budget).map_err(s)? {
            SearchOutcome::Blocked { g } if g == ctx.model.unit() => {}
            other => return Err(format!("{name} identity: {other:?}")),
        }
    }
    Ok(format!("{}; identity blocked by the unit", found.join(", ")))
}

// ---------------------------------------------------------------------------
// CLI helpers

fn config_path(name: &str) -> String {
    format!("{}/../../configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli_text(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fusion-qca").chain(args.iter().copied());
    let code = fusion_qca::cli::run(argv, &mut out, &mut err);
    ensure!(code == 0, "cli {args:?} exited {code}: {}", String::from_utf8_lossy(&err));
    String::from_utf8(out).map_err(s)
}

fn cli_json(args: &[&str]) -> Result<serde_json::Value, String> {
    serde_json::from_str(&cli_text(args)?).map_err(s)
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let simple: Vec<Criterion> = vec![
        ("1", "Z/2 e-m swap, X = 2 triv + sgn, k = 1..12", criterion_1),
        ("2", "Z/2 e-m swap negative control, X regular, k = 1..12", criterion_2),
    ];
    let rest: Vec<Criterion> = vec![
        ("4", "character tables against hand tables", criterion_4),
        ("5", "tube dimension three-way identity", criterion_5),
        ("6", "local embedding inequality", criterion_6),
        ("7", "spread-bound arithmetic", criterion_7),
        ("8", "Fourier / convolution suite", criterion_8),
        ("9", "TY(Z/2xZ/2) swap, necessary-condition scan", criterion_9),
        ("10", "generator search", criterion_10),
    ];
    let mut failed = 0;
    let mut known = 0;
    let report = |id: &str, title: &str, result: &Check| match result {
        Ok(d) => println!("PASS {id:>2}  {title}: {d}"),
        Err(e) => println!("FAIL {id:>2}  {title}: {e}"),
    };
    for (id, title, f) in &simple {
        let r = f();
        failed += r.is_err() as usize;
        report(id, title, &r);
    }
    let title3 = "D4 center, F_phi (phi: r -> r, s -> rs), k = 1..8";
    match criterion_3_parts() {
        Err(e) => {
            failed += 1;
            report("3", title3, &Err(e));
        }
        Ok(parts) => {
            let summary: Vec<String> = parts
                .iter()
                .map(|p| match &p.result {
                    Ok(d) => format!("{} ok ({d})", p.id),
                    Err(e) => format!("{} FAILED ({e})", p.id),
                })
                .collect();
            let ok = parts.iter().all(|p| p.result.is_ok());
            let line: Check = if ok { Ok(summary.join("; ")) } else { Err(summary.join("; ")) };
            report("3", title3, &line);
            if !ok {
                if is_known_d4_discrepancy(&parts) {
                    known += 1;
                    println!("         known discrepancy: the reference lists lambda_1 + lambda_2 on [r] in I(rho); reciprocity gives lambda_1 + lambda_3");
                } else {
                    failed += 1;
                }
            }
        }
    }
    for (id, title, f) in &rest {
        let r = f();
        failed += r.is_err() as usize;
        report(id, title, &r);
    }
    println!("acceptance: {} passed, {} failed ({known} known discrepancy)", 10 - failed - known, failed + known);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
