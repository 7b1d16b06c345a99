//! Exhaustive sweeps over `Z/n`: ring classification and per-theorem
//! verification reports. Ground truth comes from [`oracle`], which works on
//! raw residues; the constructive modules are then checked against it.

pub mod oracle;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::edr::find_pq;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::neat::{clean_decompose, neat_witness, prop5_backward, prop5_forward};
use crate::par::Exec;
use crate::ring::{Element, Ring};
use crate::rings::scan::SearchBounds;
use crate::toeplitz::{toeplitz_complete, toeplitz_diag_2x2, toeplitz_row_reduce};
use oracle::{gcd, Zn};

#[derive(Clone, Debug)]
pub struct LabConfig {
    /// Largest modulus accepted.
    pub bound: u64,
    pub exec: Exec,
    pub search: SearchBounds,
    /// Random 2x2 matrices per ring for the diagonalization sweep instead
    /// of all `n^4`.
    pub thm13_samples: Option<usize>,
    pub seed: u64,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig { bound: 30, exec: Exec::default(), search: SearchBounds::default(), thm13_samples: None, seed: 0 }
    }
}

fn modulus(ring: Ring, cfg: &LabConfig) -> Result<u64> {
    match ring {
        Ring::Modular(n) if n <= cfg.bound => Ok(n),
        Ring::Modular(n) => Err(Error::BoundExceeded(format!("Z/{n} exceeds the lab bound {}", cfg.bound))),
        other => Err(Error::InfiniteRing(other.to_string())),
    }
}

/// A quantified instance that failed, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub property: String,
    pub instance: Vec<String>,
    pub reason: String,
}

impl Counterexample {
    fn new(property: &str, instance: &[u64], reason: impl Into<String>) -> Self {
        Counterexample {
            property: property.to_string(),
            instance: instance.iter().map(u64::to_string).collect(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingClassification {
    pub ring: Ring,
    pub sr1: bool,
    pub ssr1: bool,
    pub toeplitz_ring: bool,
    pub neat_range_1: bool,
    pub witness_counterexamples: Vec<Counterexample>,
}

/// Sweeps `a` in parallel and collects what `check(a)` reports, in order.
fn sweep<F>(exec: Exec, n: u64, check: F) -> (u64, Vec<Counterexample>)
where
    F: Fn(u64) -> (u64, Vec<Counterexample>) + Sync + Send,
{
    exec.map_range(n as usize, |a| check(a as u64))
        .into_iter()
        .fold((0, Vec::new()), |(count, mut all), (c, fails)| {
            all.extend(fails);
            (count + c, all)
        })
}

pub fn classify(ring: Ring, cfg: &LabConfig) -> Result<RingClassification> {
    let n = modulus(ring, cfg)?;
    let zn = Zn::new(n);
    let toeplitz = zn.invertible_toeplitz();
    let neat = zn.neat_table();
    let (_, found) = sweep(cfg.exec, n, |a| {
        let mut out = Vec::new();
        for b in zn.elements() {
            if zn.toeplitz_reduce(&toeplitz, a, b).is_none() {
                out.push(Counterexample::new("toeplitz_ring", &[a, b], "no invertible Toeplitz T with (a, b)T = (d, 0)"));
            }
            if !zn.comax(&[a, b]) {
                continue;
            }
            if zn.sr1(a, b).is_none() {
                out.push(Counterexample::new("sr1", &[a, b], "no y with a + b*y a unit"));
            }
            if zn.ssr1(a, b).is_none() {
                out.push(Counterexample::new("ssr1", &[a, b], "no x with a^2 + b*x a unit"));
            }
            if !zn.elements().any(|t| neat[zn.add(a, zn.mul(b, t)) as usize]) {
                out.push(Counterexample::new("neat_range_1", &[a, b], "no t with a + b*t neat"));
            }
        }
        (0, out)
    });
    let clean = |p: &str| !found.iter().any(|c| c.property == p);
    Ok(RingClassification {
        ring,
        sr1: clean("sr1"),
        ssr1: clean("ssr1"),
        toeplitz_ring: clean("toeplitz_ring"),
        neat_range_1: clean("neat_range_1"),
        witness_counterexamples: found,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Toeplitz ring iff square stable range 1.
    Thm9_2,
    /// `(p, q)` witnesses iff factorizations `b + lambda*c = v*u`.
    Prop5,
    /// Factorizations `x + lambda*y = v*u` against two coprime pairs.
    Prop6,
    /// Quotients by neat elements are clean.
    Thm8,
    /// 2x2 diagonalization by Toeplitz factors.
    Thm13,
    /// Completion of unimodular rows to invertible Toeplitz matrices.
    Thm10,
}

impl Theorem {
    pub const ALL: [Theorem; 6] =
        [Theorem::Thm9_2, Theorem::Prop5, Theorem::Prop6, Theorem::Thm8, Theorem::Thm13, Theorem::Thm10];

    pub fn id(&self) -> &'static str {
        match self {
            Theorem::Thm9_2 => "THM9_2",
            Theorem::Prop5 => "PROP5",
            Theorem::Prop6 => "PROP6",
            Theorem::Thm8 => "THM8",
            Theorem::Thm13 => "THM13",
            Theorem::Thm10 => "THM10",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown theorem id {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub ring: Ring,
    pub theorem: Theorem,
    pub instances_checked: u64,
    pub failures: Vec<Counterexample>,
    /// Non-failing observations, e.g. factorizations whose `u`, `v` are not
    /// coprime.
    pub diagnostics: Vec<Counterexample>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_theorem(ring: Ring, theorem: Theorem, cfg: &LabConfig) -> Result<TheoremReport> {
    let n = modulus(ring, cfg)?;
    let zn = Zn::new(n);
    let (instances_checked, mut failures) = match theorem {
        Theorem::Thm9_2 => thm9_2(ring, &zn, cfg)?,
        Theorem::Thm10 => thm10(ring, &zn, cfg),
        Theorem::Prop5 => prop5(ring, &zn, cfg),
        Theorem::Prop6 => prop6(&zn, cfg),
        Theorem::Thm8 => thm8(ring, &zn, cfg),
        Theorem::Thm13 => thm13(ring, &zn, cfg),
    };
    let diagnostics = failures.iter().filter(|c| c.property == "diagnostic").cloned().collect();
    failures.retain(|c| c.property != "diagnostic");
    Ok(TheoremReport { ring, theorem, instances_checked, failures, diagnostics })
}

fn thm9_2(ring: Ring, zn: &Zn, cfg: &LabConfig) -> Result<(u64, Vec<Counterexample>)> {
    let class = classify(ring, cfg)?;
    let toeplitz = zn.invertible_toeplitz();
    let (count, mut fails) = sweep(cfg.exec, zn.n, |a| {
        let mut out = Vec::new();
        for b in zn.elements() {
            let oracle = zn.toeplitz_reduce(&toeplitz, a, b);
            let built = toeplitz_row_reduce(&ring.residue(a), &ring.residue(b), &cfg.search);
            match (&oracle, built) {
                (Some(_), Ok(red)) => {
                    if let Err(e) = red.verify() {
                        out.push(Counterexample::new("THM9_2", &[a, b], e.to_string()));
                    }
                }
                (None, Ok(_)) => out.push(Counterexample::new("THM9_2", &[a, b], "construction succeeded where no Toeplitz reduction exists")),
                (Some(_), Err(e)) => out.push(Counterexample::new("THM9_2", &[a, b], format!("construction failed: {e}"))),
                (None, Err(_)) => {}
            }
            if zn.comax(&[a, b]) {
                let to_unit = oracle.is_some_and(|(_, d)| zn.unit(d));
                if to_unit != zn.ssr1(a, b).is_some() {
                    out.push(Counterexample::new("THM9_2", &[a, b], "square stable range witness and Toeplitz reduction to (1, 0) disagree"));
                }
            }
        }
        (zn.n, out)
    });
    if class.ssr1 != class.toeplitz_ring {
        fails.push(Counterexample::new(
            "THM9_2",
            &[],
            format!("classification: ssr1 = {}, toeplitz_ring = {}", class.ssr1, class.toeplitz_ring),
        ));
    }
    Ok((count, fails))
}

fn thm10(ring: Ring, zn: &Zn, cfg: &LabConfig) -> (u64, Vec<Counterexample>) {
    sweep(cfg.exec, zn.n, |a| {
        let mut out = Vec::new();
        let mut count = 0;
        for b in zn.elements().filter(|&b| zn.comax(&[a, b])) {
            count += 1;
            let oracle = zn.sr1(zn.mul(a, a), zn.n - b % zn.n).is_some();
            match toeplitz_complete(&ring.residue(a), &ring.residue(b), &cfg.search) {
                Ok(t) => {
                    let first_row = t.a == ring.residue(a) && t.b == ring.residue(b);
                    if !first_row || !t.det().is_unit() {
                        out.push(Counterexample::new("THM10", &[a, b], "completion is not [[a, b], [x, a]] with unit determinant"));
                    }
                }
                Err(e) if oracle => out.push(Counterexample::new("THM10", &[a, b], format!("construction failed: {e}"))),
                Err(_) => out.push(Counterexample::new("THM10", &[a, b], "no completion exists")),
            }
        }
        (count, out)
    })
}

fn prop5(ring: Ring, zn: &Zn, cfg: &LabConfig) -> (u64, Vec<Counterexample>) {
    let factors = zn.factor_table();
    let e = |k: u64| ring.residue(k);
    sweep(cfg.exec, zn.n, |a| {
        let mut out = Vec::new();
        let mut count = 0;
        for b in zn.elements() {
            for c in zn.elements() {
                if !zn.comax(&[a, b, c]) {
                    continue;
                }
                count += 1;
                let inst = [a, b, c];
                let first = zn.elements().any(|p| {
                    zn.elements().any(|q| zn.comax(&[zn.mul(p, a), zn.add(zn.mul(p, b), zn.mul(q, c))]))
                });
                let second = zn.elements().any(|l| {
                    factors[zn.add(b, zn.mul(l, c)) as usize]
                        .iter()
                        .any(|&(v, u)| zn.comax(&[u, a]) && zn.comax(&[v, c]))
                });
                if first != second {
                    out.push(Counterexample::new("PROP5", &inst, format!("condition 1) is {first}, condition 2) is {second}")));
                    continue;
                }
                if !first {
                    continue;
                }
                let round = find_pq(&e(a), &e(b), &e(c), &cfg.search)
                    .and_then(|pq| prop5_forward(&e(a), &e(b), &e(c), &pq.p, &pq.q))
                    .and_then(|fw| {
                        fw.verify()?;
                        if !fw.uv_coprime {
                            out.push(Counterexample::new("diagnostic", &inst, format!("u = {}, v = {} are not coprime", fw.u, fw.v)));
                        }
                        let back = prop5_backward(&e(a), &e(b), &e(c), &fw.lambda, &fw.u, &fw.v, &cfg.search)?;
                        back.verify()
                    });
                if let Err(err) = round {
                    out.push(Counterexample::new("PROP5", &inst, format!("round trip failed: {err}")));
                }
            }
        }
        (count, out)
    })
}

fn prop6(zn: &Zn, cfg: &LabConfig) -> (u64, Vec<Counterexample>) {
    let factors = zn.factor_table();
    sweep(cfg.exec, zn.n, |x| {
        let mut out = Vec::new();
        let mut count = 0;
        for y in zn.elements().filter(|&y| zn.comax(&[x, y])) {
            for z in zn.elements() {
                for t in zn.elements().filter(|&t| zn.comax(&[z, t])) {
                    count += 1;
                    let ok = zn.elements().any(|l| {
                        factors[zn.add(x, zn.mul(l, y)) as usize]
                            .iter()
                            .any(|&(v, u)| zn.comax(&[v, z]) && zn.comax(&[u, t]))
                    });
                    if !ok {
                        out.push(Counterexample::new("PROP6", &[x, y, z, t], "no lambda with x + lambda*y = v*u as required"));
                    }
                }
            }
        }
        (count, out)
    })
}

fn thm8(ring: Ring, zn: &Zn, cfg: &LabConfig) -> (u64, Vec<Counterexample>) {
    let neat = zn.neat_table();
    let n = zn.n;
    sweep(cfg.exec, n, |c| {
        let mut out = Vec::new();
        if !neat[c as usize] {
            return (0, out);
        }
        let m = gcd(c, n);
        let idem = Zn::idempotents_mod(m);
        for x in 0..m {
            let clean = idem.iter().any(|&e| gcd((x + m - e) % m, m) == 1 || m == 1);
            if !clean {
                out.push(Counterexample::new("THM8", &[c, x], format!("{x} is not idempotent + unit mod {m}")));
            }
        }
        let mut count = 0;
        for a in zn.elements() {
            count += 1;
            let one_minus_a = zn.sub(1, a);
            let res = neat_witness(&ring.residue(c), &ring.residue(a), &ring.residue(one_minus_a)).and_then(|w| {
                (0..m)
                    .map(|x| clean_decompose(&w.r, &w.s, &ring.residue(a), &ring.residue(x)).map(|_| ()))
                    .collect::<Result<Vec<()>>>()
            });
            if let Err(e) = res {
                out.push(Counterexample::new("THM8", &[c, a], e.to_string()));
            }
        }
        (count, out)
    })
}

fn thm13_instance(ring: Ring, zn: &Zn, entries: [u64; 4], search: &SearchBounds) -> Option<Counterexample> {
    let [a, b, c, d] = entries;
    let rows = vec![vec![ring.residue(a), ring.residue(b)], vec![ring.residue(c), ring.residue(d)]];
    let m = Matrix::from_rows(ring, rows).expect("2x2");
    let fail = |why: String| Some(Counterexample::new("THM13", &entries, why));
    let diag = match toeplitz_diag_2x2(&m, search) {
        Ok(x) => x,
        Err(e) => return fail(format!("construction failed: {e}")),
    };
    if let Err(e) = diag.verify() {
        return fail(e.to_string());
    }
    let res = |e: &Element| e.as_residue().unwrap();
    let content = entries.iter().fold(zn.n, |g, &x| gcd(g, x));
    if res(&diag.e1) != content % zn.n {
        return fail(format!("e1 = {} but the entries generate ({content})", diag.e1));
    }
    let det = zn.sub(zn.mul(a, d), zn.mul(b, c));
    if gcd(zn.mul(res(&diag.e1), res(&diag.e2)), zn.n) != gcd(det, zn.n) {
        return fail("e1*e2 is not an associate of det A".into());
    }
    None
}

fn thm13(ring: Ring, zn: &Zn, cfg: &LabConfig) -> (u64, Vec<Counterexample>) {
    let n = zn.n;
    match cfg.thm13_samples {
        None => sweep(cfg.exec, n * n, |ab| {
            let (a, b) = (ab / n, ab % n);
            let out = (0..n * n)
                .filter_map(|cd| thm13_instance(ring, zn, [a, b, cd / n, cd % n], &cfg.search))
                .collect();
            (n * n, out)
        }),
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let samples: Vec<[u64; 4]> = (0..count).map(|_| std::array::from_fn(|_| rng.gen_range(0..n))).collect();
            let out = cfg
                .exec
                .map_range(samples.len(), |i| thm13_instance(ring, zn, samples[i], &cfg.search))
                .into_iter()
                .flatten()
                .collect();
            (count as u64, out)
        }
    }
}
