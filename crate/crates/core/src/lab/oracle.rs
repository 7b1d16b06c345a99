//! Brute-force predicates over `Z/n` on plain `u64` residues. Nothing here
//! calls the constructive modules, so the sweeps can hold them to account.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Residues over a fixed modulus.
#[derive(Clone, Debug)]
pub struct Zn {
    pub n: u64,
    units: Vec<bool>,
}

impl Zn {
    pub fn new(n: u64) -> Zn {
        Zn { n, units: (0..n).map(|x| gcd(x, n) == 1).collect() }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.n
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.n
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.n - b % self.n) % self.n
    }

    pub fn unit(&self, a: u64) -> bool {
        self.units[(a % self.n) as usize]
    }

    /// The residues generate the unit ideal.
    pub fn comax(&self, xs: &[u64]) -> bool {
        xs.iter().fold(self.n, |g, &x| gcd(g, x)) == 1
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.n
    }

    /// Some `y` with `a + b*y` a unit.
    pub fn sr1(&self, a: u64, b: u64) -> Option<u64> {
        self.elements().find(|&y| self.unit(self.add(a, self.mul(b, y))))
    }

    /// Some `x` with `a^2 + b*x` a unit.
    pub fn ssr1(&self, a: u64, b: u64) -> Option<u64> {
        self.sr1(self.mul(a, a), b)
    }

    /// All invertible Toeplitz matrices `(t0, t1, t2)` = `[[t0, t1], [t2, t0]]`.
    pub fn invertible_toeplitz(&self) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for t0 in self.elements() {
            for t1 in self.elements() {
                for t2 in self.elements() {
                    if self.unit(self.sub(self.mul(t0, t0), self.mul(t1, t2))) {
                        out.push((t0, t1, t2));
                    }
                }
            }
        }
        out
    }

    /// An invertible Toeplitz `T` with `(a, b) * T = (d, 0)`; the first
    /// entry `d` is returned alongside.
    pub fn toeplitz_reduce(&self, list: &[(u64, u64, u64)], a: u64, b: u64) -> Option<((u64, u64, u64), u64)> {
        list.iter().find_map(|&(t0, t1, t2)| {
            (self.add(self.mul(a, t1), self.mul(b, t0)) == 0)
                .then(|| ((t0, t1, t2), self.add(self.mul(a, t0), self.mul(b, t2))))
        })
    }

    /// `factors[w]` lists every `(v, u)` with `v*u = w`.
    pub fn factor_table(&self) -> Vec<Vec<(u64, u64)>> {
        let mut table = vec![Vec::new(); self.n as usize];
        for v in self.elements() {
            for u in self.elements() {
                table[self.mul(v, u) as usize].push((v, u));
            }
        }
        table
    }

    /// Neatness of every residue, by exhaustion over coprime `(b, c)` and
    /// factorizations `a = r*s`.
    pub fn neat_table(&self) -> Vec<bool> {
        let factors = self.factor_table();
        self.elements()
            .map(|a| {
                if a == 0 {
                    return false;
                }
                let pairs: Vec<(u64, u64)> =
                    factors[a as usize].iter().copied().filter(|&(r, s)| self.comax(&[r, s])).collect();
                self.elements().all(|b| {
                    self.elements().all(|c| {
                        !self.comax(&[b, c]) || pairs.iter().any(|&(r, s)| self.comax(&[r, b]) && self.comax(&[s, c]))
                    })
                })
            })
            .collect()
    }

    /// Idempotents of `Z/m` for a divisor `m` of `n`, by exhaustion.
    pub fn idempotents_mod(m: u64) -> Vec<u64> {
        (0..m).filter(|&e| e * e % m == e % m).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ring_facts() {
        let z6 = Zn::new(6);
        assert_eq!(z6.ssr1(2, 3), Some(1));
        assert!(z6.comax(&[2, 3]) && !z6.comax(&[2, 4]));
        let list = z6.invertible_toeplitz();
        assert!(list.contains(&(2, 3, 1)));
        let (_, d) = z6.toeplitz_reduce(&list, 2, 4).unwrap();
        assert_eq!(gcd(d, 6), 2);
        assert_eq!(Zn::idempotents_mod(12), vec![0, 1, 4, 9]);
        assert!(z6.neat_table()[1..].iter().all(|&x| x));
    }
}
