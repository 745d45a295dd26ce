//! Brute-force two-mode Fock simulation, used only to certify the phase-space formulas.

use num_complex::Complex64 as C;

pub struct TwoModeFock {
    cut: usize,
    amp: Vec<C>,
}

impl TwoModeFock {
    pub fn vacuum(cut: usize) -> Self {
        let mut amp = vec![C::new(0.0, 0.0); (cut + 1) * (cut + 1)];
        amp[0] = C::new(1.0, 0.0);
        Self { cut, amp }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.cut + 1) + j
    }

    /// Applies `a_k` (`dag = false`) or `a_k†` to `v`, dropping anything above the cutoff.
    fn ladder(&self, v: &[C], mode: usize, dag: bool) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); v.len()];
        for i in 0..=self.cut {
            for j in 0..=self.cut {
                let c = v[self.idx(i, j)];
                if c == C::new(0.0, 0.0) {
                    continue;
                }
                let n = if mode == 0 { i } else { j };
                let (target, f) = match (dag, n) {
                    (false, 0) => continue,
                    (false, n) => (n - 1, (n as f64).sqrt()),
                    (true, n) if n == self.cut => continue,
                    (true, n) => (n + 1, ((n + 1) as f64).sqrt()),
                };
                let k = if mode == 0 {
                    self.idx(target, j)
                } else {
                    self.idx(i, target)
                };
                out[k] += c * f;
            }
        }
        out
    }

    /// `exp(G)ψ` for a generator given as its action on a vector, by sub-stepped Taylor series.
    fn evolve(&mut self, gen: impl Fn(&Self, &[C]) -> Vec<C>, steps: usize) {
        for _ in 0..steps {
            let mut term = self.amp.clone();
            let mut acc = self.amp.clone();
            for k in 1..80 {
                term = gen(self, &term);
                let scale = 1.0 / (k as f64 * steps as f64);
                let mut norm = 0.0;
                for (a, t) in acc.iter_mut().zip(term.iter_mut()) {
                    *t *= scale;
                    *a += *t;
                    norm += t.norm_sqr();
                }
                if norm < 1e-34 {
                    break;
                }
            }
            self.amp = acc;
        }
    }

    /// `exp(β a_k† − β* a_k)`.
    pub fn displace(&mut self, mode: usize, beta: C) {
        let steps = 1 + (4.0 * beta.norm()).ceil() as usize;
        self.evolve(
            |s, v| {
                let up = s.ladder(v, mode, true);
                let down = s.ladder(v, mode, false);
                up.iter()
                    .zip(&down)
                    .map(|(u, d)| beta * u - beta.conj() * d)
                    .collect()
            },
            steps,
        );
    }

    /// `exp(χ a₀†a₁† − χ* a₀a₁)` with `χ = r e^{iϕ}`.
    pub fn two_mode_squeeze(&mut self, r: f64, phase: f64) {
        let chi = C::from_polar(r, phase);
        let steps = 1 + (20.0 * r).ceil() as usize;
        self.evolve(
            |s, v| {
                let up = s.ladder(&s.ladder(v, 1, true), 0, true);
                let down = s.ladder(&s.ladder(v, 1, false), 0, false);
                up.iter()
                    .zip(&down)
                    .map(|(u, d)| chi * u - chi.conj() * d)
                    .collect()
            },
            steps,
        );
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Population in the highest retained number states, a truncation diagnostic.
    pub fn edge_weight(&self) -> f64 {
        let mut w = 0.0;
        for i in 0..=self.cut {
            for j in 0..=self.cut {
                if i + 5 > self.cut || j + 5 > self.cut {
                    w += self.amp[self.idx(i, j)].norm_sqr();
                }
            }
        }
        w
    }

    /// Mean and variance of `a₀†a₀ + a₁†a₁`.
    pub fn number_sum(&self) -> (f64, f64) {
        let (mut m1, mut m2) = (0.0, 0.0);
        for i in 0..=self.cut {
            for j in 0..=self.cut {
                let p = self.amp[self.idx(i, j)].norm_sqr();
                let n = (i + j) as f64;
                m1 += p * n;
                m2 += p * n * n;
            }
        }
        (m1, m2 - m1 * m1)
    }

    /// Mean and variance of `a₀†a₀ − a₁†a₁`.
    pub fn number_difference(&self) -> (f64, f64) {
        let (mut m1, mut m2) = (0.0, 0.0);
        for i in 0..=self.cut {
            for j in 0..=self.cut {
                let p = self.amp[self.idx(i, j)].norm_sqr();
                let n = i as f64 - j as f64;
                m1 += p * n;
                m2 += p * n * n;
            }
        }
        (m1, m2 - m1 * m1)
    }

    /// First and second moments in the (x₀, p₀, x₁, p₁) ordering with vacuum σ = 1.
    pub fn moments(&self) -> ([f64; 4], [[f64; 4]; 4]) {
        let quad = |k: usize| -> Vec<C> {
            let (mode, is_p) = (k / 2, k % 2 == 1);
            let up = self.ladder(&self.amp, mode, true);
            let down = self.ladder(&self.amp, mode, false);
            up.iter()
                .zip(&down)
                .map(|(u, d)| if is_p { C::i() * (u - d) } else { u + d })
                .collect()
        };
        let r: Vec<Vec<C>> = (0..4).map(quad).collect();
        let inner = |a: &[C], b: &[C]| -> C { a.iter().zip(b).map(|(x, y)| x.conj() * y).sum() };
        let mut d = [0.0; 4];
        for k in 0..4 {
            d[k] = inner(&self.amp, &r[k]).re;
        }
        let mut s = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                s[i][j] = inner(&r[i], &r[j]).re - d[i] * d[j];
            }
        }
        (d, s)
    }
}
