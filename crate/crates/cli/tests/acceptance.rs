//! Acceptance criteria, one line each. Every check is exact.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use cantorkit_core::bitspace::{BitString, ClosedSet, CodeSet, DepthCap, OpenSet};
use cantorkit_core::domination::{
    class_from_witness, dominates_on, witness_from_class, SearchOutcome, StabilitySearch,
    TableFunctional, TableRow,
};
use cantorkit_core::formats;
use cantorkit_core::kc::{KraftChaitin, Request};
use cantorkit_core::machine::{encode_length, HaltingTimeline};
use cantorkit_core::mltest::{
    amplification_exponent, amplified_test, convert_test, extract_cover, ExtractCase, MlTest,
};
use cantorkit_core::{Dyadic, Outcome, UniversalMachine};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: DepthCap = DepthCap(64);

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + criterion)
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> BitString {
    BitString::from_bits((0..len).map(|_| rng.gen::<bool>()).collect::<Vec<_>>())
}

/// Random prefix-free set: each node of the full tree to `max_depth` is kept,
/// dropped or split.
fn random_code(rng: &mut ChaCha8Rng, max_depth: usize) -> CodeSet {
    fn grow(rng: &mut ChaCha8Rng, at: BitString, max_depth: usize, out: &mut Vec<BitString>) {
        let roll = rng.gen_range(0..10);
        if at.len() == max_depth || roll < 3 {
            if at.len() == max_depth && rng.gen() || roll < 2 {
                out.push(at);
            }
            return;
        }
        grow(rng, at.pushed(false), max_depth, out);
        grow(rng, at.pushed(true), max_depth, out);
    }
    let mut words = Vec::new();
    grow(rng, BitString::empty(), max_depth, &mut words);
    CodeSet::new(words, CAP).unwrap()
}

/// `2^{d - |σ|}` summed over the members: the number of depth-`d` words below them.
fn count_below(code: &CodeSet, d: usize) -> BigUint {
    code.iter()
        .map(|w| BigUint::from(1u8) << (d - w.len()))
        .sum()
}

fn seconds(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn measure_multiplicativity() -> Check {
    let mut rng = rng(1);
    let start = Instant::now();
    let depth = 12;
    for i in 0..1000 {
        let a = OpenSet::new(random_code(&mut rng, 6));
        let b = OpenSet::new(random_code(&mut rng, 6));
        let p = a.product(&b, CAP).map_err(|e| e.to_string())?;
        ensure!(
            p.measure() == &a.measure() * &b.measure(),
            "pair {i}: measure of {a} x {b}"
        );

        let mut closure = BTreeSet::new();
        for s in a.generators() {
            for t in b.generators() {
                let st = s.concat(t);
                for tail in BitString::all_of_length(depth - st.len()) {
                    closure.insert(st.concat(&tail));
                }
            }
        }
        ensure!(
            p.enumerate_depth(depth, CAP).unwrap() == closure,
            "pair {i}: enumeration of {a} x {b}"
        );
        let counted = count_below(a.code(), 6) * count_below(b.code(), 6);
        ensure!(
            BigUint::from(closure.len()) == counted,
            "pair {i}: closure size"
        );
    }
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(10),
        "took {}",
        seconds(elapsed)
    );
    Ok("1000 pairs at depth 12".into())
}

fn kraft_chaitin() -> Check {
    let mut rng = rng(2);
    let start = Instant::now();
    let full: BigUint = BigUint::from(1u8) << 16;
    let mut rejections = 0;
    for i in 0..1000 {
        // within weight: every request must be honoured
        let mut budget = full.clone();
        let mut lengths = Vec::new();
        for _ in 0..rng.gen_range(1..60) {
            let n = rng.gen_range(0..=16usize);
            let w = BigUint::from(1u8) << (16 - n);
            if w <= budget {
                budget -= &w;
                lengths.push(n);
            }
        }
        let mut kc = KraftChaitin::new();
        let mut codes: Vec<BitString> = Vec::new();
        for (j, &n) in lengths.iter().enumerate() {
            let code = kc
                .request(Request::new(n, BitString::from_index(j as u64)))
                .map_err(|e| format!("sequence {i}: request {j} of length {n}: {e}"))?;
            ensure!(code.len() == n, "sequence {i}: code {code} for length {n}");
            ensure!(
                codes
                    .iter()
                    .all(|c| !c.is_prefix_of(&code) && !code.is_prefix_of(c)),
                "sequence {i}: {code} is comparable with an earlier code"
            );
            codes.push(code);
        }

        // adversarial: keep requesting past the limit
        let mut kc = KraftChaitin::new();
        let mut spent = BigUint::from(0u8);
        let mut codes: Vec<BitString> = Vec::new();
        for j in 0..rng.gen_range(1..80) {
            let n = rng.gen_range(0..=6usize);
            let w = BigUint::from(1u8) << (16 - n);
            let free = kc.free_measure();
            let over = &spent + &w > full;
            match kc.request(Request::new(n, BitString::from_index(j))) {
                Ok(code) => {
                    ensure!(!over, "sequence {i}: request {j} accepted past weight 1");
                    ensure!(code.len() == n, "sequence {i}: code {code} for length {n}");
                    ensure!(
                        codes.iter().all(|c| !c.comparable(&code)),
                        "sequence {i}: {code} is comparable with an earlier code"
                    );
                    spent += w;
                    codes.push(code);
                }
                Err(_) => {
                    ensure!(over, "sequence {i}: request {j} rejected within weight 1");
                    ensure!(
                        kc.free_measure() == free,
                        "sequence {i}: rejection changed the state"
                    );
                    rejections += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(rejections > 0, "no adversarial request was rejected");
    ensure!(
        elapsed < Duration::from_secs(10),
        "took {}",
        seconds(elapsed)
    );
    Ok(format!("1000 + 1000 sequences, {rejections} rejections"))
}

/// Least `n ≥ 1` with `(1 - a/2^e)^n ≤ 2^-k`, by integer powers.
fn least_exponent(a: &BigUint, e: u32, k: u32) -> u32 {
    let den = BigUint::from(1u8) << e;
    let base = &den - a;
    (1..).find(|&n| (base.pow(n) << k) <= den.pow(n)).unwrap()
}

fn amplification() -> Check {
    let mut rng = rng(3);
    let quarter = Dyadic::new(1u8, 2);
    ensure!(
        amplification_exponent(&quarter, 1).map_err(|e| e.to_string())? == 3
            && least_exponent(&BigUint::from(1u8), 2, 1) == 3,
        "exponent for 1/4 at level 1 is not 3"
    );
    let mut instances = 0;
    while instances < 200 {
        let complement = random_code(&mut rng, 4);
        let counted = count_below(&complement, 4);
        if complement.len() > 3 || counted > BigUint::from(8u8) {
            continue;
        }
        let q_set = ClosedSet::from_complement(OpenSet::new(complement));
        let q_count = BigUint::from(16u8) - &counted;
        let max_level = rng.gen_range(1..=8);
        let test = amplified_test(&q_set, max_level, CAP).map_err(|e| e.to_string())?;
        ensure!(
            test.len() == max_level as usize + 1,
            "{q_set:?}: {} levels",
            test.len()
        );
        for (k, v) in test.levels().iter().enumerate() {
            let k = k as u32;
            ensure!(
                v.measure() <= Dyadic::pow2_neg(k),
                "{q_set:?}: level {k} has measure {}",
                v.measure()
            );
            let n = least_exponent(&q_count, 4, k);
            let expected = Dyadic::new(counted.clone(), 4).pow(n);
            ensure!(
                v.measure() == expected,
                "{q_set:?}: level {k} is not the {n}-th power"
            );
        }
        instances += 1;
    }
    Ok("200 closed sets up to level 8, exponent(1/4, 1) = 3".into())
}

/// A level of measure at most `2^-k` from words of length `k..=10`.
fn random_level(rng: &mut ChaCha8Rng, k: usize) -> OpenSet {
    let mut words: Vec<BitString> = Vec::new();
    let limit = BigUint::from(1u8) << (10 - k);
    let mut used = BigUint::from(0u8);
    for _ in 0..rng.gen_range(0..=6) {
        let len = rng.gen_range(k..=10);
        let w = random_word(rng, len);
        let weight = BigUint::from(1u8) << (10 - w.len());
        if &used + &weight <= limit && words.iter().all(|v| !v.comparable(&w)) {
            used += weight;
            words.push(w);
        }
    }
    OpenSet::new(CodeSet::new(words, CAP).unwrap())
}

fn conversion() -> Check {
    let mut rng = rng(4);
    let machine = UniversalMachine::standard();
    let mut generators = 0;
    for i in 0..100 {
        let levels = (0..=8).map(|k| random_level(&mut rng, k)).collect();
        let test = MlTest::new(levels, CAP).map_err(|e| e.to_string())?;
        let conv = convert_test(&test, &machine, &[], 1_000_000, CAP)
            .map_err(|e| format!("test {i}: {e}"))?;

        let mut weight = BigUint::from(0u8);
        for m in 0..=4usize {
            for sigma in test.levels()[2 * m].generators() {
                weight += BigUint::from(1u8) << (20 + m - 1 - sigma.len());
            }
        }
        ensure!(
            weight <= BigUint::from(1u8) << 20,
            "test {i}: weight above 1"
        );
        ensure!(
            conv.weight == Dyadic::new(weight, 20),
            "test {i}: reported weight {}",
            conv.weight
        );

        let c = conv.registration.constant as i64;
        for m in 0..=4usize {
            for sigma in test.levels()[2 * m].generators() {
                generators += 1;
                let shortest = conv
                    .table
                    .iter()
                    .filter(|(_, out)| *out == sigma)
                    .map(|(p, _)| p)
                    .min_by_key(|p| p.len())
                    .ok_or_else(|| format!("test {i}: no code for {sigma}"))?;
                ensure!(
                    shortest.len() + m <= sigma.len() + 1,
                    "test {i}: code for {sigma} too long"
                );

                // the registered program witnesses [σ] ⊆ S_{m-c-1}[t]
                let program = UniversalMachine::program(conv.registration.index, shortest);
                let Outcome::Halted { output, steps, .. } =
                    conv.machine.run(&program, &[], 1_000_000)
                else {
                    return Err(format!("test {i}: program for {sigma} does not halt"));
                };
                ensure!(
                    &output == sigma && steps <= 1_000_000,
                    "test {i}: program for {sigma}"
                );
                ensure!(
                    program.len() as i64 <= sigma.len() as i64 - (m as i64 - c - 1),
                    "test {i}: program for {sigma} longer than the shifted level allows"
                );
            }
        }
        ensure!(
            conv.levels.len() == 5,
            "test {i}: {} levels checked",
            conv.levels.len()
        );
        for l in &conv.levels {
            ensure!(
                l.universal_level == l.m as i64 - c - 1,
                "test {i}: level {} shifted wrongly",
                2 * l.m
            );
            ensure!(
                l.codes_short && l.contained && l.stage <= 1_000_000,
                "test {i}: level {} not embedded",
                2 * l.m
            );
        }
    }
    Ok(format!("100 tests, {generators} generators embedded"))
}

fn depth_words(u: &OpenSet, d: usize) -> BTreeSet<BitString> {
    u.enumerate_depth(d, CAP).unwrap()
}

fn extraction() -> Check {
    let mut rng = rng(5);
    let mut cases = [0usize; 2];
    let mut attempts = 0;
    while cases[0] + cases[1] < 200 {
        attempts += 1;
        ensure!(attempts < 100_000, "could not generate instances");
        let p = OpenSet::new(random_code(&mut rng, 3));
        if p.is_empty() || count_below(p.code(), 3) > BigUint::from(4u8) {
            continue;
        }
        let square = p.product(&p, CAP).unwrap();
        let mut extra: Vec<BitString> = Vec::new();
        for _ in 0..rng.gen_range(0..4) {
            let len = rng.gen_range(1..=6);
            let w = random_word(&mut rng, len);
            if !square.meets(&w) && extra.iter().all(|v| !v.comparable(&w)) {
                extra.push(w);
            }
        }
        let mut u = square
            .union(&OpenSet::new(CodeSet::new(extra, CAP).unwrap()), CAP)
            .unwrap();
        if rng.gen_bool(0.5) {
            u = u.union(&p, CAP).unwrap();
        }
        let d = 6;
        let u_count = depth_words(&u, d).len();
        if u_count == 1 << d {
            continue;
        }

        let x = extract_cover(&p, &u, CAP).map_err(|e| format!("{p:?} {u:?}: {e}"))?;
        let dv = d.max(x.cover.depth());
        let v_words = depth_words(&x.cover, dv);
        ensure!(
            depth_words(&p, dv).is_subset(&v_words),
            "{p:?} {u:?}: P not inside V"
        );
        ensure!(v_words.len() < 1 << dv, "{p:?} {u:?}: V has measure 1");
        ensure!(
            x.cover.measure() == Dyadic::new(v_words.len() as u64, dv as u32),
            "{p:?} {u:?}: measure of V"
        );
        match &x.case {
            ExtractCase::Localized { sigma } => {
                ensure!(
                    p.code().contains(sigma),
                    "{p:?} {u:?}: {sigma} is not a generator of P"
                );
                ensure!(
                    x.cover.generators().all(|t| u.covers(&sigma.concat(t))),
                    "{p:?} {u:?}: V is not U localized at {sigma}"
                );
                cases[0] += 1;
            }
            ExtractCase::Dense { epsilon } => {
                let lhs = &epsilon.complement().unwrap() * &x.cover.measure();
                ensure!(
                    lhs <= Dyadic::new(u_count as u64, d as u32),
                    "{p:?} {u:?}: (1 - e) mu V > mu U"
                );
                cases[1] += 1;
            }
        }
    }
    ensure!(
        cases[0] > 0 && cases[1] > 0,
        "only one case exercised: {cases:?}"
    );
    Ok(format!(
        "200 instances, {} localized and {} dense",
        cases[0], cases[1]
    ))
}

/// Rows for inputs `0..inputs`, each input on all words of its own length.
fn random_functional(rng: &mut ChaCha8Rng, depth: usize, inputs: u64) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for input in 0..inputs {
        let len = rng.gen_range(0..=depth);
        for prefix in BitString::all_of_length(len) {
            if rng.gen_bool(0.85) {
                let step = rng.gen_range(1..=30);
                rows.push(TableRow {
                    prefix,
                    input,
                    step,
                    value: rng.gen_range(0..=step),
                });
            }
        }
    }
    rows
}

/// `max(v, t)` over the rows for inputs below `n` on `x`; `None` if one is missing.
fn brute_phi(rows: &[TableRow], x: &BitString, n: u64) -> Option<u64> {
    (0..n).try_fold(0, |acc, m| {
        rows.iter()
            .find(|r| r.input == m && r.prefix.is_prefix_of(x))
            .map(|r| acc.max(r.step).max(r.value))
    })
}

fn domination_round_trip() -> Check {
    let mut rng = rng(6);
    for i in 0..200 {
        let depth = rng.gen_range(1..=8);
        let max_input = rng.gen_range(1..=3u64);
        let rows = random_functional(&mut rng, depth, max_input);
        let fnl = TableFunctional::new(rows.clone()).map_err(|e| e.to_string())?;

        let total: Vec<BitString> = BitString::all_of_length(depth)
            .filter(|x| brute_phi(&rows, x, max_input).is_some())
            .collect();
        let chosen: Vec<BitString> = total.into_iter().filter(|_| rng.gen_bool(0.8)).collect();
        let f_class =
            ClosedSet::from_open(&OpenSet::new(CodeSet::normalize(&chosen, CAP).unwrap()));

        let w = witness_from_class(&fnl, &f_class, depth, max_input, 1000, CAP, None)
            .map_err(|e| format!("functional {i}: {e}"))?;
        for n in 0..=max_input {
            let expected = 1 + chosen
                .iter()
                .map(|x| brute_phi(&rows, x, n).unwrap())
                .max()
                .unwrap_or(0);
            ensure!(
                w.function.get(n) == Some(expected),
                "functional {i}: f({n})"
            );
        }
        let dom = dominates_on(&fnl, &w.function, &f_class, depth, 1000, CAP, None)
            .map_err(|e| format!("functional {i}: {e}"))?;
        ensure!(dom.holds, "functional {i}: witness does not dominate");

        let back =
            class_from_witness(&fnl, &w.function, depth, CAP, None).map_err(|e| e.to_string())?;
        ensure!(
            f_class.subset(&back.class),
            "functional {i}: class not recovered"
        );
        let expected: BTreeSet<BitString> = BitString::all_of_length(depth)
            .filter(|x| {
                (0..=max_input).all(|n| {
                    brute_phi(&rows, x, n).is_some_and(|v| v <= w.function.values()[n as usize])
                })
            })
            .collect();
        let got: BTreeSet<BitString> = back
            .class
            .branches(depth, CAP)
            .unwrap()
            .into_iter()
            .collect();
        ensure!(
            got == expected,
            "functional {i}: recovered class differs from the brute-force one"
        );
    }
    Ok("200 functionals up to depth 8".into())
}

fn machine_soundness() -> Check {
    let mut rng = rng(7);
    let oracle: Vec<bool> = (0..16).map(|_| rng.gen()).collect();
    let mut machine = UniversalMachine::standard();
    let mut tables = Vec::new();
    for _ in 0..3 {
        let mut kc = KraftChaitin::new();
        for _ in 0..rng.gen_range(3..10) {
            let len = rng.gen_range(0..=8);
            let target = random_word(&mut rng, len);
            let _ = kc.request(Request::new(rng.gen_range(1..=7), target));
        }
        let table = kc.to_machine();
        let (next, reg) = machine.register(table.clone()).map_err(|e| e.to_string())?;
        machine = next;
        tables.push((reg, table));
    }

    let budget = 10_000;
    let mut domain = BTreeSet::new();
    let mut shortest: BTreeMap<BitString, usize> = BTreeMap::new();
    for len in 0..=12 {
        for p in BitString::all_of_length(len) {
            if let Outcome::Halted { output, .. } = machine.run(&p, &oracle, budget) {
                shortest.entry(output).or_insert(len);
                domain.insert(p);
            }
        }
    }
    for p in &domain {
        ensure!(
            (0..p.len()).all(|k| !domain.contains(&p.prefix(k))),
            "{p} extends a halting program"
        );
    }
    let kraft: BigUint = domain
        .iter()
        .map(|p| BigUint::from(1u8) << (12 - p.len()))
        .sum();
    ensure!(kraft <= BigUint::from(1u8) << 12, "Kraft sum above 1");
    for (w, &k) in &shortest {
        ensure!(
            machine.bounded_complexity(w, budget, &oracle) == Some(k),
            "complexity of {w}"
        );
    }

    let mut words = 0;
    for len in 0..=6 {
        for w in BitString::all_of_length(len) {
            words += 1;
            let mut previous = None;
            for t in 0..=60 {
                let k = machine.bounded_complexity(&w, t, &oracle);
                if let Some(before) = previous {
                    ensure!(k.is_some_and(|k| k <= before), "k({w}) grows at stage {t}");
                }
                previous = k.or(previous);
                ensure!(k == previous, "k({w}) returns to infinity at stage {t}");
            }
        }
    }

    let mut entries = 0;
    for (reg, table) in &tables {
        for (_, sigma) in table.iter() {
            entries += 1;
            let sub = table.complexity(sigma).unwrap();
            let k = machine
                .bounded_complexity(sigma, budget, &oracle)
                .ok_or_else(|| format!("{sigma} has no program"))?;
            ensure!(
                k <= sub + reg.index + 1,
                "overhead for {sigma} in slot {}",
                reg.index
            );
        }
    }
    Ok(format!(
        "{} halting programs of length <= 12, {words} words monotone, {entries} table entries",
        domain.len()
    ))
}

/// `U^{0'}(σ) ≠ X↾n`, with `0'` the approximation at the horizon.
fn differs(search: &StabilitySearch, x: &[bool], n: usize, sigma: &BitString) -> bool {
    let horizon = search.stage_bound();
    let oracle = search.timeline().oracle(horizon, horizon as usize);
    search
        .machine()
        .run(sigma, &oracle, horizon)
        .output()
        .map(BitString::as_bits)
        != Some(&x[..n])
}

fn stability_chain() -> Check {
    let mut rng = rng(8);
    let horizon = 150;
    let constant = 1;
    let mut agree = [0usize; 2];
    for i in 0..20 {
        let kind = i % 4;
        let (machine, program, x, n, settled);
        if kind < 2 {
            n = rng.gen_range(14..=20);
            let word = random_word(&mut rng, n);
            let mut kc = KraftChaitin::new();
            let mut noise = Vec::new();
            for _ in 0..rng.gen_range(0..4) {
                noise.push(Request::new(rng.gen_range(3..8), random_word(&mut rng, 6)));
            }
            let mut requests = noise;
            let at = rng.gen_range(0..=requests.len());
            requests.insert(at, Request::new(rng.gen_range(1..=3), word.clone()));
            let mut code = None;
            for r in requests {
                let is_word = r.target == word;
                let c = kc.request(r).map_err(|e| e.to_string())?;
                if is_word {
                    code = Some(c);
                }
            }
            let (m, reg) = UniversalMachine::standard()
                .register(kc.to_machine())
                .map_err(|e| e.to_string())?;
            program = UniversalMachine::program(reg.index, &code.unwrap());
            let Outcome::Halted { steps, .. } = m.run(&program, &[], horizon) else {
                return Err(format!("instance {i}: colliding program does not halt"));
            };
            settled = steps;
            let mut bits = word.into_bits();
            if kind == 1 {
                let flip = rng.gen_range(0..n);
                bits[flip] = !bits[flip];
            }
            bits.extend((0..4).map(|_| rng.gen::<bool>()));
            x = bits;
            machine = m;
        } else {
            n = rng.gen_range(22..=30);
            machine = UniversalMachine::standard();
            program = UniversalMachine::program(1, &encode_length(n as u64));
            let timeline = HaltingTimeline::new(&machine, horizon);
            let last = timeline.last_change_below(n);
            settled = (last + 1)
                .max(n as u64)
                .max(program.len() as u64 + n as u64);
            x = if kind == 2 {
                timeline.oracle(horizon, n)
            } else {
                let early = rng.gen_range(0..last);
                let bits = timeline.oracle(early, n);
                ensure!(
                    bits != timeline.oracle(horizon, n),
                    "instance {i}: stage {early} already final"
                );
                bits
            };
        }
        ensure!(
            program.len() + constant < n,
            "instance {i}: program too long"
        );
        let search = StabilitySearch::new(machine, constant, horizon);
        let direct = differs(&search, &x, n, &program);
        ensure!(
            direct == (kind % 2 == 1),
            "instance {i}: direct condition is {direct}"
        );
        for s in [settled, settled + 7] {
            match search.search(&x, n, &program, s) {
                SearchOutcome::Stage(t) => ensure!(
                    direct && t == s,
                    "instance {i}: stage {t} from {s} without a difference"
                ),
                SearchOutcome::Undetermined => {
                    ensure!(!direct, "instance {i}: difference not found from {s}")
                }
                SearchOutcome::OracleTooShort { position } => {
                    return Err(format!("instance {i}: oracle too short at {position}"))
                }
            }
        }
        agree[direct as usize] += 1;
    }
    Ok(format!(
        "20 instances, {} described and {} not",
        agree[0], agree[1]
    ))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Every verb, with the exit code it must give.
fn invocations() -> Vec<(Vec<&'static str>, i32)> {
    vec![
        (vec!["set-measure", "a.code"], 0),
        (vec!["set-measure", "nf.code"], 2),
        (vec!["set-product", "a.code", "b.code"], 0),
        (vec!["set-power", "a.code", "3"], 0),
        (vec!["set-localize", "u.code", "0"], 0),
        (vec!["kc-build", "r.txt"], 0),
        (vec!["kc-build", "bad.txt"], 1),
        (vec!["icm-build", "m.icm"], 0),
        (vec!["k-approx", "0110100110", "--table", "m.table"], 0),
        (vec!["k-approx", "101", "--oracle", "1011"], 0),
        (vec!["s-test", "--stage", "12", "-2"], 0),
        (
            vec!["s-test", "--stage", "12", "0", "--table", "m.table"],
            0,
        ),
        (vec!["halting-dump", "--stage", "40"], 0),
        (vec!["amplify", "q.code", "--max-level", "4"], 0),
        (vec!["amplify", "--bound", "1/2^2", "--max-level", "1"], 0),
        (vec!["convert-test", "t.test"], 0),
        (vec!["extract", "p1.code", "u1.code"], 0),
        (vec!["extract", "p.code", "u.code"], 0),
        (vec!["extract", "p1.code", "u3.code", "--power", "3"], 0),
        (vec!["tail", "q.code", "110"], 0),
        (vec!["phi", "f.tf", "01", "2"], 0),
        (
            vec![
                "witness",
                "f.tf",
                "c1.code",
                "--depth",
                "1",
                "--max-input",
                "2",
            ],
            0,
        ),
        (
            vec![
                "witness",
                "f.tf",
                "c1.code",
                "--depth",
                "1",
                "--max-input",
                "2",
                "--jobs",
                "3",
            ],
            0,
        ),
        (
            vec!["dominate", "f.tf", "w.txt", "c1.code", "--depth", "1"],
            0,
        ),
        (vec!["xi", "0110", "4", "0", "2"], 0),
        (vec!["xi", "0110", "12", "101", "0", "--constant", "2"], 1),
        (
            vec!["xi", "011010011010", "12", "101", "0", "--constant", "2"],
            0,
        ),
    ]
}

fn run_cli(args: &[&str], output: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cantorkit"));
    cmd.current_dir(fixtures())
        .env_remove("CANTORKIT_DEPTH_CAP")
        .args(args);
    if let Some(path) = output {
        cmd.arg("-o").arg(path);
    }
    cmd.output().expect("the binary runs")
}

/// Outputs that are themselves files of some format must parse back.
fn reparse(verb: &str, stdout: &str) -> Result<(), String> {
    let parsed = match verb {
        "set-product" | "set-power" | "set-localize" | "extract" => {
            formats::parse_code_set(stdout, CAP).map(drop)
        }
        "kc-build" | "icm-build" | "convert-test" => {
            formats::parse_machine_table(stdout, CAP).map(drop)
        }
        "amplify" if !stdout.starts_with("exponent") => formats::parse_test(stdout, CAP).map(drop),
        "witness" => formats::parse_witness(stdout).map(drop),
        _ => Ok(()),
    };
    parsed.map_err(|e| format!("{verb} output does not parse: {e}"))
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut verbs = BTreeSet::new();
    for (i, (args, code)) in invocations().into_iter().enumerate() {
        let first = run_cli(&args, None);
        let second = run_cli(&args, None);
        let shown = args.join(" ");
        ensure!(
            first.status.code() == Some(code),
            "`{shown}` exited with {:?}",
            first.status.code()
        );
        ensure!(
            first.stdout == second.stdout
                && first.stderr == second.stderr
                && first.status == second.status,
            "`{shown}` differs between runs"
        );
        if code == 0 {
            let file = dir.path().join(format!("{i}.out"));
            run_cli(&args, Some(&file));
            let written = std::fs::read(&file).map_err(|e| format!("`{shown}` -o: {e}"))?;
            ensure!(
                written == first.stdout,
                "`{shown}` -o differs from standard output"
            );
            reparse(args[0], &String::from_utf8_lossy(&first.stdout))?;
        } else {
            let stderr = String::from_utf8_lossy(&first.stderr);
            ensure!(
                stderr.starts_with(&format!("cantorkit {}: ", args[0])),
                "`{shown}` stderr: {stderr}"
            );
        }
        verbs.insert(args[0]);
    }
    ensure!(verbs.len() == 17, "{} verbs covered", verbs.len());
    Ok(format!(
        "{} invocations over {} verbs",
        invocations().len(),
        verbs.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("measure multiplicativity", measure_multiplicativity),
        ("kraft-chaitin assignment", kraft_chaitin),
        ("amplified tests", amplification),
        ("test conversion", conversion),
        ("cover extraction", extraction),
        ("witness round trip", domination_round_trip),
        ("machine soundness", machine_soundness),
        ("stability search", stability_chain),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = seconds(start.elapsed());
        match result {
            Ok(detail) => println!("criterion {}: pass  {name}: {detail} ({took})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {reason} ({took})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
