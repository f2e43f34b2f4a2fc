//! Acceptance harness: one PASS/FAIL line per criterion with its runtime
//! and pinned budget. Exits nonzero when a criterion fails, except for the
//! pinned known failure of criterion 8 (see the line it prints).

use std::time::{Duration, Instant};

use level_lab::arith::primes_up_to;
use level_lab::charp::{
    endo_checks, literal_supersingularity_agreement, pairing_equality_check, quaternion_quotient_count,
    quotient_over, supersingular_j_enumeration,
};
use level_lab::congruence::ap_congruence;
use level_lab::curve::{registry_curve, EllipticCurve};
use level_lab::field::{Field, GaloisRing};
use level_lab::moduli::suite::{det_fibre_census, frobenius_suite, identity_suite};
use level_lab::polyalg::{
    form_orbits, groebner, monomials_of_degree, normal_form, projective_smooth, random_poly, registry_form,
    CoeffField, PolyRing, SparsePoly,
};
use level_lab::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    summary: String,
    /// A failure that is documented and whose exact shape is asserted.
    known_failure: bool,
}

fn pass_if(ok: bool, summary: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok, summary: summary.into(), known_failure: false })
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);
    let criteria: [Criterion; 9] = [
        ("1 congruence KO-A/KO-B mod 7, p <= 200", Duration::from_secs(10), c1),
        ("2 105.a2 replay", Duration::from_secs(120), c2),
        ("3 moduli identity suites", Duration::from_secs(60), c3),
        ("4 Frobenius-matrix laws", Duration::from_secs(120), c4),
        ("5 det fibre census N=3 q=7", Duration::from_secs(60), c5),
        ("6 pairing equality and endomorphism det", Duration::from_secs(30), c6),
        ("7 quaternion quotients", Duration::from_secs(60), c7),
        ("8 supersingularity cross-check", Duration::from_secs(120), c8),
        ("9 oracle equivalences", Duration::from_secs(300), c9),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, summary, known) = match outcome {
            Ok(o) => (o.ok && elapsed <= budget, o.summary, o.known_failure),
            Err(e) => (false, format!("error: {e}"), false),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        let note = if known { " [known failure, shape pinned]" } else { "" };
        println!(
            "{verdict} criterion {name}: {summary} ({:.2}s, budget {}s){note}",
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !ok && !known {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}

fn c1() -> Result<Outcome> {
    let r = ap_congruence(&registry_curve("KO-A")?, &registry_curve("KO-B")?, 7, 200)?;
    pass_if(
        r.all_agree && r.agree > 0,
        format!("{} good primes agree, {} disagree, {} skipped", r.agree, r.disagree, r.skipped),
    )
}

fn c2() -> Result<Outcome> {
    let j_equal = registry_curve("105a2-min")?.j_invariant() == registry_curve("105a2-red")?.j_invariant();
    let f = registry_form("hk-105a2-min")?;
    let smooth_q = projective_smooth(&f)?;
    let mut bad_good = Vec::new();
    for p in primes_up_to(50) {
        let smooth = projective_smooth(&f.reduce_mod(p)?)?;
        let expect = 105 % p != 0;
        if smooth != expect {
            bad_good.push(p);
        }
    }
    pass_if(
        j_equal && smooth_q && bad_good.is_empty(),
        format!(
            "j equal: {j_equal}; smooth over Q: {smooth_q}; smooth exactly at p <= 50 with p ∤ 105, singular at 3, 5, 7; mismatches: {bad_good:?}"
        ),
    )
}

fn c3() -> Result<Outcome> {
    const REQUIRED: [&str; 7] = [
        "D_{r,s}∘D_{d,t} ≅ D_{dr,s}",
        "w_d∘w_d' ≅ [δ]∘w_{dd'/δ²}",
        "D_{d,t} ≅ D_{1,t}∘w_d",
        "det∘D_{d,t} = d·det",
        "det∘w_d = d·det",
        "det∘[n] = n²·det",
        "degeneracy square commutes",
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, m, q) in [(5, 6, 31), (3, 4, 13)] {
        let r = identity_suite(n, m, q, 200, SEED, 8)?;
        let exercised = REQUIRED.iter().all(|id| r.identities.get(*id).is_some_and(|t| t.total > 0));
        let checks: usize = r.identities.values().map(|t| t.total).sum();
        ok &= r.passed() && r.trials == 200 && exercised;
        parts.push(format!(
            "({n},{m},{q}): {}/{} trials, {checks} checks, {} violations",
            r.trials_passed,
            r.trials,
            r.violations.len()
        ));
    }
    pass_if(ok, parts.join("; "))
}

fn c4() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, p) in [(3, 7), (5, 11), (7, 29)] {
        let r = frobenius_suite(n, p, 20, SEED)?;
        ok &= r.violations == 0 && r.cases.len() == 20;
        parts.push(format!("N={n} p={p}: {} curves, {} violations", r.cases.len(), r.violations));
    }
    pass_if(ok, parts.join("; "))
}

fn c5() -> Result<Outcome> {
    let (total, fibres) = det_fibre_census(3, 1, 7)?;
    let ok = fibres.keys().copied().collect::<Vec<_>>() == [1, 2] && fibres.values().all(|c| *c > 0);
    pass_if(ok, format!("{total} points, fibres {fibres:?}"))
}

fn c6() -> Result<Outcome> {
    let mut ok = true;
    let mut qs = Vec::new();
    for n in 1..=8u64 {
        let q = (2..)
            .find(|q: &u64| level_lab::arith::prime_power(*q).is_some() && (q - 1) % n == 0)
            .unwrap();
        let r = pairing_equality_check(n, q)?;
        ok &= r.equal && r.pairs_checked as u64 == n * n;
        qs.push(format!("{n}:{q}"));
    }
    let e = endo_checks(4, 5)?;
    ok &= e.det_multiplicative && e.unit_criterion && e.composition_matches_action;
    pass_if(
        ok,
        format!(
            "b1 = b2 for N:q in [{}]; N=4 over F_5: {} endomorphisms, {} units, det multiplicative {}, unit criterion {}",
            qs.join(", "),
            e.endomorphisms,
            e.automorphisms,
            e.det_multiplicative,
            e.unit_criterion
        ),
    )
}

fn c7() -> Result<Outcome> {
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, r) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let base = quaternion_quotient_count(p, r)?;
        let alt = quotient_over(&GaloisRing::alternative(p, r)?)?;
        let same = (base.units, base.kernel, base.quotient) == (alt.units, alt.kernel, alt.quotient);
        ok &= base.consistent() && alt.consistent() && base.kernel == p * p && same;
        parts.push(format!(
            "({p},{r}): units {}, kernel {}, quotient {}, alternative modulus {:?} agrees: {same}",
            base.units, base.kernel, base.quotient, alt.modulus
        ));
    }
    pass_if(ok, parts.join("; "))
}

/// The literal `(p±1)^2` criterion fails at `p = 3`, where supersingular
/// curves can have `a_3 = ±3` and `#E(F_9) = 7`. The failure set is pinned
/// exactly; the general criterion `p | t_2` and Frobenius stability must pass.
fn c8() -> Result<Outcome> {
    let r = literal_supersingularity_agreement(13, 50, 500, SEED)?;
    let literal_failures: Vec<(u64, u64, u64, i64)> = r
        .primes
        .iter()
        .flat_map(|e| e.literal_disagreements.iter().map(move |d| (e.p, d.a, d.b, d.ap)))
        .collect();
    // oracle for the pinned set: naive a_3 of every short curve over F_3
    let f3 = Field::prime(3)?;
    let mut expected = Vec::new();
    for a in 0..3u64 {
        for b in 0..3u64 {
            let Ok(e) = EllipticCurve::long_from_i64(&f3, [0, 0, 0, a as i64, b as i64]) else { continue };
            let n = e.points()?.len() as i64;
            let ap = 4 - n;
            if ap.abs() == 3 {
                expected.push((3, a, b, ap));
            }
        }
    }
    let shape_pinned = !expected.is_empty() && literal_failures == expected;
    let mut stable = true;
    for p in primes_up_to(50) {
        let js = supersingular_j_enumeration(p)?;
        stable &= !js.is_empty() && js.iter().all(|j| js.contains(&j.pow(p as u128)));
    }
    let curves: u64 = r.primes.iter().map(|e| e.curves).sum();
    let summary = format!(
        "{curves} curves; literal (p±1)^2 criterion agrees: {} ({} disagreements, all at p=3 with a_3=±3: {shape_pinned}); p | t2 criterion agrees: {}; j-lists Frobenius-stable for p <= 50: {stable}",
        r.literal_agrees,
        literal_failures.len(),
        r.t2_agrees
    );
    let ok = r.literal_agrees && r.t2_agrees && stable;
    Ok(Outcome {
        ok,
        summary,
        known_failure: !ok && shape_pinned && r.t2_agrees && stable,
    })
}

fn c9() -> Result<Outcome> {
    let (divpoly_ok, divpoly_cases) = divpoly_vs_scan()?;
    let mut census = Vec::new();
    let mut census_ok = true;
    for (p, d) in [(2u64, 3u32), (2, 4), (3, 3), (3, 4)] {
        let (ok, smooth, orbits) = smooth_vs_bruteforce(p, d)?;
        census_ok &= ok;
        census.push(format!("F_{p} deg {d}: {orbits} orbits, {smooth} smooth forms"));
    }
    let groebner_ok = groebner_idempotence()?;
    pass_if(
        divpoly_ok && census_ok && groebner_ok,
        format!(
            "divpoly vs group law: {divpoly_ok} ({divpoly_cases} point/n cases); smoothness vs singular-point search: {census_ok} [{}]; Groebner idempotent on 20 seeded ideals: {groebner_ok}",
            census.join(", ")
        ),
    )
}

fn divpoly_vs_scan() -> Result<(bool, usize)> {
    let mut cases = 0;
    for p in [5u64, 7, 11, 13] {
        let f = Field::prime(p)?;
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let Ok(e) = EllipticCurve::short_from_i64(&f, a, b) else { continue };
                for pt in e.points()? {
                    for n in 1..=10usize {
                        cases += 1;
                        if e.is_torsion_by_divpoly(&pt, n)? != e.mul(&pt, n as i128).is_infinity() {
                            return Ok((false, cases));
                        }
                    }
                }
            }
        }
    }
    Ok((true, cases))
}

/// `F_{p^k}` by addition and multiplication tables.
struct Tables {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    /// Index of the prime-field element `c`.
    embed: Vec<u16>,
}

impl Tables {
    fn new(p: u64, k: usize) -> Result<Self> {
        let f = Field::finite(p, k)?;
        let elems: Vec<_> = f.elements().collect();
        let q = elems.len();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                add[i * q + j] = (x + y).to_index() as u16;
                mul[i * q + j] = (x * y).to_index() as u16;
            }
        }
        let embed = (0..p).map(|c| f.from_i64(c as i64).to_index() as u16).collect();
        Ok(Tables { q, add, mul, embed })
    }

    fn projective_points(&self) -> Vec<[u16; 3]> {
        let q = self.q as u16;
        let mut pts = Vec::new();
        for y in 0..q {
            for z in 0..q {
                pts.push([1, y, z]);
            }
        }
        for z in 0..q {
            pts.push([0, 1, z]);
        }
        pts.push([0, 0, 1]);
        pts
    }
}

/// Does the form (coefficients against `monomials_of_degree(3, d)`) have a
/// point over the table field where it and all three partials vanish?
fn has_singular_point(t: &Tables, pts: &[[u16; 3]], mons: &[Vec<u32>], coeffs: &[u64], d: u32) -> bool {
    let q = t.q;
    let terms: Vec<(&Vec<u32>, u64)> = mons.iter().zip(coeffs).filter(|(_, c)| **c != 0).map(|(m, c)| (m, *c)).collect();
    let p = t.embed.len() as u64;
    let mul = |a: u16, b: u16| t.mul[a as usize * q + b as usize];
    let add = |a: u16, b: u16| t.add[a as usize * q + b as usize];
    let one = t.embed[1];
    pts.iter().any(|pt| {
        let mut pw = [[0u16; 5]; 3];
        for v in 0..3 {
            pw[v][0] = one;
            for e in 1..=d as usize {
                pw[v][e] = mul(pw[v][e - 1], pt[v]);
            }
        }
        let mut vals = [0u16; 4];
        for (m, c) in &terms {
            let mono = mul(mul(pw[0][m[0] as usize], pw[1][m[1] as usize]), pw[2][m[2] as usize]);
            vals[0] = add(vals[0], mul(t.embed[*c as usize], mono));
            for v in 0..3 {
                let e = m[v] as u64;
                let coeff = c * e % p;
                if coeff == 0 {
                    continue;
                }
                let mut rest = [m[0] as usize, m[1] as usize, m[2] as usize];
                rest[v] -= 1;
                let mono = mul(mul(pw[0][rest[0]], pw[1][rest[1]]), pw[2][rest[2]]);
                vals[v + 1] = add(vals[v + 1], mul(t.embed[coeff as usize], mono));
            }
        }
        vals.iter().all(|v| *v == 0)
    })
}

/// `projective_smooth` on every orbit of nonzero ternary forms against a
/// singular-point search. For cubics a singular point exists over `F_{p^2}`
/// or `F_{p^3}`; for quartics over `F_{p^3}` or `F_{p^4}`.
fn smooth_vs_bruteforce(p: u64, d: u32) -> Result<(bool, u64, usize)> {
    let ks: [usize; 2] = if d == 3 { [2, 3] } else { [3, 4] };
    let tables = [Tables::new(p, ks[0])?, Tables::new(p, ks[1])?];
    let pts = [tables[0].projective_points(), tables[1].projective_points()];
    let mons: Vec<Vec<u32>> = monomials_of_degree(3, d).into_iter().map(|m| m.0).collect();
    let ring = PolyRing::new(CoeffField::prime(p)?, &["x", "y", "z"])?;
    let orbits = form_orbits(p, d)?;
    let total: u64 = orbits.iter().map(|o| o.size).sum();
    let mut ok = total == p.pow(mons.len() as u32) - 1;
    let mut smooth_forms = 0;
    for o in &orbits {
        let f = SparsePoly::from_terms(
            &ring,
            mons.iter().zip(&o.coeffs).map(|(m, c)| (m.clone(), CoeffField::prime(p).unwrap().from_i64(*c as i64))).collect(),
        )?;
        let smooth = projective_smooth(&f)?;
        let singular = (0..2).any(|i| has_singular_point(&tables[i], &pts[i], &mons, &o.coeffs, d));
        ok &= smooth != singular;
        if smooth {
            smooth_forms += o.size;
        }
    }
    Ok((ok, smooth_forms, orbits.len()))
}

fn groebner_idempotence() -> Result<bool> {
    let mut ok = true;
    for field in [CoeffField::prime(7)?, CoeffField::Rationals] {
        let ring = PolyRing::new(field, &["x", "y", "z"])?;
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ seed);
            let gens: Vec<SparsePoly> = (0..3).map(|_| random_poly(&ring, &mut rng, 3, 3)).collect();
            let g = groebner(&gens)?;
            ok &= groebner(&g)? == g && gens.iter().all(|f| normal_form(f, &g).is_zero());
        }
    }
    Ok(ok)
}
