//! Acceptance suite. Prints one PASS/FAIL line per criterion with its
//! tolerance and wall time; exits non-zero when any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use blowup_core::blowup::{coordinate_charts, coordinate_charts_of, general_charts, rees_ideal};
use blowup_core::descent::{commutation_check, tschirnhaus, ExceptionalRecord, HypersurfaceFrame};
use blowup_core::game::{worst_case_rounds, GameState, ROUND_CAP};
use blowup_core::geometry::{order_along_prime, order_at_point, origin, symbolic_power_membership};
use blowup_core::groebner::macaulay_basis;
use blowup_core::resolve::{
    equiconstant_locus, replay_local_sequence, replay_trace, resolve_curve, resolve_curve_embedded,
    resolve_hypersurface_char0, resolve_monomial, snc_check_plane, LocalStep, NodeStatus, TraceStatus,
};
use blowup_core::ring::parse_poly;
use blowup_core::transform::{
    center_order, controlled_transform, strict_transform, strict_transform_via_macaulay, total_transform,
    weak_transform,
};
use blowup_core::{Field, Ideal, PrimeField, QRing, Rationals, RingContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn ring(vars: &[&str]) -> QRing {
    RingContext::new(Rationals, vars).unwrap()
}

fn q(v: i64) -> <Rationals as Field>::Elem {
    Rationals.from_i64(v)
}

struct Criterion {
    id: u32,
    name: &'static str,
    tolerance: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn rees_presentations() -> Check {
    let r = ring(&["x", "y", "z"]);
    let mut slowest = Duration::ZERO;
    for (center, relation) in
        [("x, y", "x*u2 - y*u1"), ("x, y^2", "x*u2 - y^2*u1"), ("x*y, z", "x*y*u2 - z*u1"), ("x, y*z", "x*u2 - y*z*u1")]
    {
        let start = Instant::now();
        let rees = e(rees_ideal(&e(Ideal::parse(&r, center))?))?;
        let want = e(Ideal::parse(&rees.ring, relation))?;
        ensure!(
            e(rees.ideal.contains_ideal(&want))? && e(want.contains_ideal(&rees.ideal))?,
            "({center}): {}",
            rees.ideal
        );
        ensure!(start.elapsed() < Duration::from_secs(1), "({center}) took {:?}", start.elapsed());
        slowest = slowest.max(start.elapsed());
    }
    let charts = e(general_charts(&e(Ideal::parse(&r, "x, y*z"))?))?;
    let singular = e(Ideal::parse(charts[0].target(), "x*t2 - y*z"))?;
    let smooth = e(Ideal::parse(charts[1].target(), "x - y*z*t1"))?;
    ensure!(e(charts[0].chart_ideal.equals(&singular))?, "first chart {}", charts[0].chart_ideal);
    ensure!(e(charts[1].chart_ideal.equals(&smooth))?, "second chart {}", charts[1].chart_ideal);
    Ok(format!("4 relations and 2 chart rings equal; slowest center {:.3} s", slowest.as_secs_f64()))
}

fn rees_nonregular() -> Check {
    let r = ring(&["x", "y"]);
    let rees = e(rees_ideal(&e(Ideal::parse(&r, "x^2, x*y, y^3"))?))?;
    let naive = e(rees.naive_ideal())?;
    let witness = e(parse_poly(&rees.ring, "y*u2^2 - u1*u3"))?;
    ensure!(e(rees.ideal.contains_ideal(&naive))?, "naive ideal not contained");
    ensure!(e(rees.ideal.contains(&witness))?, "witness not in the Rees ideal");
    ensure!(!e(naive.contains(&witness))?, "witness lies in the naive ideal");
    Ok(format!("witness {witness} separates the ideals"))
}

fn macaulay_and_space_curve() -> Check {
    let r = ring(&["x", "y", "z"]);
    let i = e(Ideal::parse(&r, "x^2 - y^3, x*y - z^3"))?;
    let mb = e(macaulay_basis(&i))?;
    let want = e(parse_poly(&r, "x*z^3 - y^4"))?;
    ensure!(mb.iter().any(|g| g == &want || *g == -want.clone()), "Macaulay basis {mb:?}");
    let charts = e(coordinate_charts_of(&e(Ideal::parse(&r, "x, y, z"))?))?;
    let expected =
        ["1 - x*y^3, y - x*z^3, z^3 - y^4", "x^2 - y, x - y*z^3, x*z^3 - 1", "x^2 - y^3*z, x*y - z, x - y^4"];
    for (chart, text) in charts.iter().zip(expected) {
        let want = e(Ideal::parse(&r, text))?;
        let got = e(strict_transform(&i, chart))?.ideal;
        ensure!(e(got.equals(&want))?, "{}: {got}", chart.name);
    }
    Ok(format!("{} basis elements; 3 charts equal", mb.len()))
}

fn plane_curve_transforms() -> Check {
    let r = ring(&["x", "y"]);
    let i = e(Ideal::parse(&r, "x^2 + y^17"))?;
    let charts = e(coordinate_charts(&r, &[0, 1]))?;
    let mut orders = Vec::new();
    for (chart, text, order) in [(&charts[0], "1 + x^15*y^17", 0), (&charts[1], "x^2 + y^15", 2)] {
        let got = e(strict_transform(&i, chart))?.ideal;
        ensure!(e(got.equals(&e(Ideal::parse(&r, text))?))?, "{}: {got}", chart.name);
        let o = e(order_at_point(&got, &origin(&Rationals, 2)))?.value;
        ensure!(o == Some(order), "{}: order {o:?}", chart.name);
        orders.push(order);
    }
    Ok(format!("strict transforms equal; orders at origin {orders:?}"))
}

fn weak_strict_gap() -> Check {
    let r = ring(&["x", "y"]);
    let i = e(Ideal::parse(&r, "x^2, y^3"))?;
    let chart = &e(coordinate_charts(&r, &[0, 1]))?[1];
    let d = e(center_order(&i, chart))?;
    let weak = e(weak_transform(&i, chart, d))?.ideal;
    let strict = e(strict_transform(&i, chart))?.ideal;
    ensure!(e(weak.equals(&e(Ideal::parse(&r, "x^2, y"))?))?, "weak {weak}");
    ensure!(e(strict.is_unit())?, "strict {strict}");
    Ok(format!("weak {weak}, strict {strict}"))
}

fn symbolic_powers() -> Check {
    let r = ring(&["x", "y", "z"]);
    let p = e(Ideal::parse(&r, "y^2 - x*z, y*z - x^3, z^2 - x^2*y"))?;
    let f = e(parse_poly(&r, "x^5 + x*y^3 + z^3 - 3*x^2*y*z"))?;
    let p2 = e(p.pow(2))?;
    let x = e(parse_poly(&r, "x"))?;
    ensure!(!e(p2.contains(&f))?, "f lies in I^2");
    ensure!(e(p2.contains(&e(x.try_mul(&f))?))?, "x*f is not in I^2");
    let ord = e(order_along_prime(&Ideal::principal(&f), &p))?.value;
    ensure!(ord == Some(2), "order along the curve {ord:?}");
    ensure!(e(symbolic_power_membership(&f, &p, 2))?.member, "f not in the symbolic square");
    Ok("f not in I^2, x*f in I^2, order 2".into())
}

fn tschirnhaus_cubic() -> Check {
    let r = ring(&["x", "y", "z"]);
    let f = e(parse_poly(&r, "x^3 + x^2*y*z + z^5"))?;
    let frame = HypersurfaceFrame { var: 0, base_point: origin(&Rationals, 3), order: 3 };
    let (_, g) = e(tschirnhaus(&f, &frame))?;
    let want = e(parse_poly(&r, "x^3 - 1/3*x*y^2*z^2 + 2/27*y^3*z^3 + z^5"))?;
    ensure!(g == want, "got {g}");
    Ok(g.to_string())
}

fn kangaroo_sequence() -> Check {
    let p2 = PrimeField::new(2).unwrap();
    let r = RingContext::new(p2, &["x", "y", "z"]).unwrap();
    let f = e(parse_poly(&r, "x^2 + y^7 + y*z^4"))?;
    let (zero, one) = (p2.zero(), p2.one());
    let steps = vec![
        LocalStep { center: vec![0, 1, 2], chart_var: 1, point: vec![zero, zero, zero] },
        LocalStep { center: vec![0, 1], chart_var: 1, point: vec![zero, zero, zero] },
        LocalStep { center: vec![0, 1, 2], chart_var: 2, point: vec![zero, zero, zero] },
        LocalStep { center: vec![0, 1, 2], chart_var: 2, point: vec![zero, one, zero] },
    ];
    let out = e(replay_local_sequence(&f, &ExceptionalRecord::new(), &steps))?;
    let expected = ["x^2 + y^3*(y^2 + z^4)", "x^2 + y*(y^2 + z^4)", "x^2 + y*z*(y^2 + z^2)", "x^2 + y^3*z^2 + y^2*z^2"];
    for (k, text) in expected.iter().enumerate() {
        let want = e(parse_poly(&r, text))?;
        ensure!(out[k + 1].strict == want, "step {}: {}", k + 1, out[k + 1].strict);
    }
    let orders: Vec<Option<u32>> = out.iter().map(|s| s.residual_order).collect();
    ensure!(orders == [Some(5), Some(2), Some(2), Some(2), Some(3)], "residual orders {orders:?}");
    Ok("residual orders 5, 2, 2, 2, 3".into())
}

fn resolution_drivers() -> Check {
    let limit = Duration::from_secs(10);
    let timed = |label: &str, start: Instant| -> Result<(), String> {
        ensure!(start.elapsed() < limit, "{label} took {:?}", start.elapsed());
        Ok(())
    };
    let r3 = ring(&["x", "y", "z"]);
    let start = Instant::now();
    let cone = resolve_hypersurface_char0(&e(parse_poly(&r3, "x^2 + y*z"))?, None, 16).map_err(|x| x.to_string())?;
    ensure!(
        cone.status == TraceStatus::Resolved && cone.step_count == 1,
        "cone: {:?} in {}",
        cone.status,
        cone.step_count
    );
    ensure!(e(replay_trace(&r3, &cone))?, "cone trace does not replay");
    timed("cone", start)?;

    let r2 = ring(&["x", "y"]);
    let cusp = e(parse_poly(&r2, "x^2 - y^3"))?;
    let start = Instant::now();
    let smooth = e(resolve_curve(&cusp, 16))?;
    ensure!(smooth.status == TraceStatus::Resolved && smooth.step_count == 1, "smooth cusp in {}", smooth.step_count);
    timed("smooth cusp", start)?;
    let start = Instant::now();
    let emb = e(resolve_curve_embedded(&cusp, 16))?;
    ensure!(emb.status == TraceStatus::Resolved && emb.step_count == 3, "embedded cusp in {}", emb.step_count);
    ensure!(e(replay_trace(&r2, &emb))?, "embedded trace does not replay");
    ensure!(emb.root.leaves().iter().all(|n| n.status == NodeStatus::Resolved), "unresolved leaf");
    let comps = [e(parse_poly(&r2, "y - 1"))?, e(parse_poly(&r2, "x"))?, e(parse_poly(&r2, "y"))?];
    let pts: Vec<_> = [[0, 1], [0, 0], [1, 0]].iter().map(|p| p.map(q).to_vec()).collect();
    ensure!(e(snc_check_plane(&comps, &pts))?.snc, "final chart is not snc");
    timed("embedded cusp", start)?;

    let start = Instant::now();
    let m = e(parse_poly(&r2, "x^2*y^3"))?;
    let mono = e(resolve_monomial(&m, &ExceptionalRecord::new(), 1, 16))?;
    ensure!(mono.status == TraceStatus::Resolved && mono.step_count == 2, "monomial in {}", mono.step_count);
    ensure!(e(replay_trace(&r2, &mono))?, "monomial trace does not replay");
    timed("monomial", start)?;
    Ok("cone 1, cusp smooth 1, cusp snc 3 (replayed), monomial 2".into())
}

fn random_poly_text(rng: &mut ChaCha8Rng, max_exp: u32, terms: usize, min_deg: u32) -> String {
    let mut parts = Vec::new();
    for _ in 0..terms {
        let mut c: i64 = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let mut ex: [u32; 3] = [rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp)];
        let deg: u32 = ex.iter().sum();
        if deg < min_deg {
            ex[rng.gen_range(0..3)] += min_deg - deg;
        }
        parts.push(format!("{c}*x^{}*y^{}*z^{}", ex[0], ex[1], ex[2]));
    }
    parts.join(" + ")
}

fn inclusion_chain(rng: &mut ChaCha8Rng, cases: usize) -> Result<usize, String> {
    let r = ring(&["x", "y", "z"]);
    let mut done = 0;
    while done < cases {
        let n = rng.gen_range(1..=3);
        let mut gens = vec![random_poly_text(rng, 3, n, 1)];
        if rng.gen_bool(0.5) {
            gens.push(random_poly_text(rng, 2, 2, 1));
        }
        let i = e(Ideal::parse(&r, &gens.join(", ")))?;
        if i.generators().is_empty() {
            continue;
        }
        let vars: Vec<usize> = if rng.gen_bool(0.5) { vec![0, 1, 2] } else { vec![0, 1] };
        let charts = e(coordinate_charts(&r, &vars))?;
        let chart = &charts[rng.gen_range(0..charts.len())];
        let d = e(center_order(&i, chart))?;
        let c = d.saturating_sub(rng.gen_range(0..3));
        let total = e(total_transform(&i, chart))?;
        let controlled = e(controlled_transform(&i, chart, c))?.ideal;
        let weak = e(weak_transform(&i, chart, d))?.ideal;
        let strict = e(strict_transform(&i, chart))?.ideal;
        ensure!(e(controlled.contains_ideal(&total))?, "I* not in I^! for {i}");
        ensure!(e(weak.contains_ideal(&controlled))?, "I^! not in I^v for {i}");
        ensure!(e(strict.contains_ideal(&weak))?, "I^v not in I^s for {i}");
        done += 1;
    }
    Ok(done)
}

fn macaulay_oracle_sweep() -> Result<usize, String> {
    let r = ring(&["x", "y", "z"]);
    let fixtures = [
        "x^2 - y^3, x*y - z^3",
        "x^2 - y^3",
        "x*y, x*z, y*z",
        "x^2 + y^2*z, y^3 - z^2",
        "x^3 - y^2, z^2 - x*y",
        "x*z - y^2, y*z - x^3, z^2 - x^2*y",
        "x^2, y^3",
        "x^2 + y^5, z",
    ];
    let centers: [&[usize]; 4] = [&[0, 1, 2], &[0, 1], &[0, 2], &[1, 2]];
    let mut n = 0;
    for text in fixtures {
        let i = e(Ideal::parse(&r, text))?;
        for vars in centers {
            for chart in e(coordinate_charts(&r, vars))? {
                let sat = e(strict_transform(&i, &chart))?.ideal;
                let mac = e(strict_transform_via_macaulay(&i, &chart))?;
                ensure!(e(sat.equals(&mac))?, "({text}) {}: {sat} vs {mac}", chart.name);
                n += 1;
            }
        }
    }
    Ok(n)
}

fn commutation_sweep() -> Result<usize, String> {
    let r = ring(&["x", "y", "z"]);
    let fixtures: [(&str, u32, &[usize]); 8] = [
        ("x^2 + y^3", 2, &[0, 1, 2]),
        ("x^2 + y^2*z^3 + z^5", 2, &[0, 1, 2]),
        ("x^3 + y^4 + z^5", 3, &[0, 1, 2]),
        ("x^3 + x*y^2*z^2 + z^5", 3, &[0, 1, 2]),
        ("x^2 + y*z^3", 2, &[0, 1, 2]),
        ("x^3 + y^3*z^2", 3, &[0, 1]),
        ("x^2 + y^4 + y^2*z", 2, &[0, 1]),
        ("x^2 - y^3, x*y^2 + z^4", 2, &[0, 1, 2]),
    ];
    let mut n = 0;
    for (text, o, vars) in fixtures {
        let i = e(Ideal::parse(&r, text))?;
        let frame = HypersurfaceFrame { var: 0, base_point: origin(&Rationals, 3), order: o };
        for chart in e(coordinate_charts(&r, vars))? {
            if chart.chart_var() == Some(0) {
                continue;
            }
            let rep = e(commutation_check(&i, &frame, &chart))?;
            ensure!(rep.equal, "({text}) {}: {} vs {}", chart.name, rep.left, rep.right);
            n += 1;
        }
    }
    Ok(n)
}

fn equiconstant_sweep(rng: &mut ChaCha8Rng, cases: usize) -> Result<usize, String> {
    let r = ring(&["x", "y", "z"]);
    let charts = e(coordinate_charts(&r, &[0, 1, 2]))?;
    let mut done = 0;
    while done < cases {
        let n = rng.gen_range(1..=4);
        let f = e(parse_poly(&r, &random_poly_text(rng, 3, n, 2)))?;
        if f.is_zero() {
            continue;
        }
        let o = f.order().unwrap();
        let chart = &charts[rng.gen_range(0..3)];
        let j = chart.chart_var().unwrap();
        let strict = e(strict_transform(&Ideal::principal(&f), chart))?.ideal;
        let mut p = vec![q(0); 3];
        for (k, slot) in p.iter_mut().enumerate() {
            if k != j {
                *slot = q(rng.gen_range(-2..=2));
            }
        }
        let at = e(order_at_point(&strict, &p))?.value.unwrap_or(u32::MAX);
        ensure!(at <= o, "{f}: order {at} > {o} on {}", chart.name);
        if let Some(points) = e(equiconstant_locus(&f, chart, o))?.points {
            for a in &points.points {
                ensure!(e(order_at_point(&strict, a))?.value == Some(o), "{f}: equiconstant point changes order");
            }
        }
        done += 1;
    }
    Ok(done)
}

fn zariski_nagata_sweep(rng: &mut ChaCha8Rng, cases: usize) -> Result<usize, String> {
    let r = ring(&["x", "y", "z"]);
    let pairs: [(&str, &str, &[[i64; 3]]); 4] = [
        ("y^2 - x*z, y*z - x^3, z^2 - x^2*y", "x^5 + x*y^3 + z^3 - 3*x^2*y*z", &[[0, 0, 0], [1, 1, 1], [8, 16, 32]]),
        ("x - y^2, z", "(x - y^2)^2 + z^3", &[[0, 0, 0], [1, 1, 0], [4, -2, 0]]),
        ("x, y", "x^3 + x*y*z + y^4", &[[0, 0, 0], [0, 0, 5]]),
        ("x - z, y", "(x - z)^2*y + y^3 + (x - z)^4", &[[0, 0, 0], [2, 0, 2]]),
    ];
    let mut n = 0;
    for (prime, f, points) in pairs {
        let p = e(Ideal::parse(&r, prime))?;
        let i = Ideal::principal(&e(parse_poly(&r, f))?);
        let along = e(order_along_prime(&i, &p))?.value.unwrap();
        for pt in points {
            let a: Vec<_> = pt.iter().map(|&v| q(v)).collect();
            let at = e(order_at_point(&i, &a))?.value.unwrap();
            ensure!(along <= at, "{f} along ({prime}): {along} > {at}");
            n += 1;
        }
    }
    while n < cases {
        let terms = rng.gen_range(1..=4);
        let f = e(parse_poly(&r, &random_poly_text(rng, 3, terms, 1)))?;
        if f.is_zero() {
            continue;
        }
        let line = rng.gen_range(0..3);
        let vars: Vec<usize> = (0..3).filter(|&k| k != line).collect();
        let i = Ideal::principal(&f);
        let along = e(order_along_prime(&i, &Ideal::of_vars(&r, &vars)))?.value.unwrap();
        let mut a = vec![q(0); 3];
        a[line] = q(rng.gen_range(-3..=3));
        let at = e(order_at_point(&i, &a))?.value.unwrap();
        ensure!(along <= at, "{f} along the line {line}: {along} > {at}");
        n += 1;
    }
    Ok(n)
}

fn plane_game_sweep() -> Result<usize, String> {
    fn extend(prefix: &mut Vec<Vec<u32>>, out: &mut Vec<GameState>) {
        if !prefix.is_empty() {
            out.push(GameState::new(prefix.clone()).unwrap());
        }
        let (lo_x, hi_y) = match prefix.last() {
            Some(p) => (p[0] + 1, p[1].checked_sub(1)),
            None => (0, Some(6)),
        };
        let Some(hi_y) = hi_y else { return };
        for x in lo_x..=6 {
            for y in 0..=hi_y {
                prefix.push(vec![x, y]);
                extend(prefix, out);
                prefix.pop();
            }
        }
    }
    let mut states = Vec::new();
    extend(&mut Vec::new(), &mut states);
    for s in &states {
        if let Err(stuck) = worst_case_rounds(s, ROUND_CAP) {
            return Err(format!("strategy stalls from {s} at {stuck}"));
        }
    }
    Ok(states.len())
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let chain = inclusion_chain(&mut rng, 200)?;
    let mac = macaulay_oracle_sweep()?;
    let comm = commutation_sweep()?;
    let equi = equiconstant_sweep(&mut rng, 200)?;
    let zn = zariski_nagata_sweep(&mut rng, 200)?;
    let game = plane_game_sweep()?;
    Ok(format!(
        "chain {chain} cases, Macaulay oracle {mac} charts, commutation {comm} charts, equiconstant {equi} cases, Zariski-Nagata {zn} pairs, game {game} states"
    ))
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_golden_suite() -> Result<Vec<(PathBuf, Vec<u8>)>, String> {
    let mut scripts: Vec<PathBuf> = e(fs::read_dir(golden_dir()))?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "bl"))
        .collect();
    scripts.sort();
    let mut out = Vec::new();
    for path in scripts {
        let mut bytes = Vec::new();
        for json in [false, true] {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_blowup"));
            if json {
                cmd.arg("--json");
            }
            let o = e(cmd.arg(&path).output())?;
            bytes.extend(o.stdout);
            bytes.extend(o.stderr);
            bytes.extend(format!("exit {:?}\n", o.status.code()).into_bytes());
        }
        out.push((path, bytes));
    }
    Ok(out)
}

fn determinism() -> Check {
    let first = run_golden_suite()?;
    let second = run_golden_suite()?;
    ensure!(first.len() == second.len(), "script count changed");
    for ((path, a), (_, b)) in first.iter().zip(&second) {
        ensure!(a == b, "{} differs between runs", path.display());
    }
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    Ok(format!("{} scripts, {bytes} bytes identical across two runs", first.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "Rees presentations",
            tolerance: "exact, two-way membership",
            limit: Duration::from_secs(4),
            run: rees_presentations,
        },
        Criterion {
            id: 2,
            name: "non-regular-sequence center",
            tolerance: "strict containment, explicit witness",
            limit: Duration::from_secs(5),
            run: rees_nonregular,
        },
        Criterion {
            id: 3,
            name: "Macaulay basis and space-curve charts",
            tolerance: "exact ideal equality",
            limit: Duration::from_secs(5),
            run: macaulay_and_space_curve,
        },
        Criterion {
            id: 4,
            name: "plane curve point blowup",
            tolerance: "exact",
            limit: Duration::from_secs(1),
            run: plane_curve_transforms,
        },
        Criterion {
            id: 5,
            name: "weak vs strict transform",
            tolerance: "exact",
            limit: Duration::from_secs(1),
            run: weak_strict_gap,
        },
        Criterion {
            id: 6,
            name: "symbolic square of a curve prime",
            tolerance: "three boolean checks",
            limit: Duration::from_secs(10),
            run: symbolic_powers,
        },
        Criterion {
            id: 7,
            name: "Tschirnhaus transformation",
            tolerance: "exact polynomial",
            limit: Duration::from_secs(1),
            run: tschirnhaus_cubic,
        },
        Criterion {
            id: 8,
            name: "characteristic-two kangaroo sequence",
            tolerance: "exact polynomials and orders",
            limit: Duration::from_secs(5),
            run: kangaroo_sequence,
        },
        Criterion {
            id: 9,
            name: "resolution drivers",
            tolerance: "exact step counts, replay oracle",
            limit: Duration::from_secs(40),
            run: resolution_drivers,
        },
        Criterion {
            id: 10,
            name: "property suites",
            tolerance: ">= 200 cases or full sweep",
            limit: Duration::from_secs(120),
            run: property_suites,
        },
        Criterion {
            id: 11,
            name: "determinism",
            tolerance: "byte-identical",
            limit: Duration::from_secs(60),
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {} ({}; {:.3} s, limit {} s): {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.tolerance,
            took.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
