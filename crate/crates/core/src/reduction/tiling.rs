//! Sampled verification that translates of a candidate domain cover the
//! ample cone, by height descent `h(x) = eta . x` over a generating set.

use std::collections::HashSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::polyhedral::PolyhedralCone;
use super::{GroupWord, ReductionResult};
use crate::error::{Error, Result};
use crate::exact::matrix::RationalMatrix;
use crate::exact::rational::{dot, rat, Rational};

pub const ETA_CANDIDATES: usize = 1000;
pub const ETA_WORD_LENGTH: usize = 4;

/// Generators acting on class coordinates by `x -> M x`, with their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSet {
    dim: usize,
    forward: Vec<RationalMatrix>,
    backward: Vec<RationalMatrix>,
    names: Vec<String>,
}

impl ActionSet {
    pub fn new(dim: usize, forward: Vec<RationalMatrix>, names: Vec<String>) -> Result<Self> {
        if forward.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(
                "generator size does not match the class space".into(),
            ));
        }
        let backward = forward
            .iter()
            .map(|m| {
                m.inverse()
                    .ok_or_else(|| Error::InvalidArgument("singular generator".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionSet {
            dim,
            forward,
            backward,
            names,
        })
    }

    pub fn with_inverses(
        forward: Vec<RationalMatrix>,
        backward: Vec<RationalMatrix>,
        names: Vec<String>,
    ) -> Self {
        let dim = forward.first().map_or(0, |m| m.rows());
        ActionSet {
            dim,
            forward,
            backward,
            names,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix(&self, generator: usize, inverted: bool) -> &RationalMatrix {
        if inverted {
            &self.backward[generator]
        } else {
            &self.forward[generator]
        }
    }

    /// Every generator and inverse, as letters.
    pub fn letters(&self) -> Vec<(usize, bool)> {
        (0..self.len())
            .flat_map(|g| [(g, false), (g, true)])
            .collect()
    }

    /// Freely reduced words of length `1..=max_len` with pairwise distinct,
    /// non-identity actions (shortest representative kept).
    pub fn words_up_to(&self, max_len: usize) -> Vec<(GroupWord, RationalMatrix)> {
        let identity = RationalMatrix::identity(self.dim);
        let mut seen: HashSet<RationalMatrix> = HashSet::new();
        seen.insert(identity);
        let mut out = Vec::new();
        let mut frontier = vec![(GroupWord::identity(), RationalMatrix::identity(self.dim))];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (word, m) in &frontier {
                for (g, inv) in self.letters() {
                    if word.letters().last() == Some(&(g, !inv)) {
                        continue;
                    }
                    let w = word.then(g, inv);
                    let wm = self.matrix(g, inv) * m;
                    if seen.insert(wm.clone()) {
                        out.push((w.clone(), wm.clone()));
                    }
                    next.push((w, wm));
                }
            }
            frontier = next;
        }
        out
    }
}

/// `eta` is fixed by no non-identity action `M^T` among the given words.
pub fn eta_is_admissible(eta: &[Rational], words: &[(GroupWord, RationalMatrix)]) -> bool {
    words.iter().all(|(_, m)| m.transpose().mul_vec(eta) != eta)
}

/// A dual point `eta = Gram c` with `c` ample and trivial stabilizer among
/// words of length at most four.
pub fn find_eta(
    gram: &RationalMatrix,
    base: &[Rational],
    is_ample: &(dyn Fn(&[Rational]) -> bool + Sync),
    actions: &ActionSet,
    seed: u64,
) -> Result<Vec<Rational>> {
    let words = actions.words_up_to(ETA_WORD_LENGTH);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..ETA_CANDIDATES {
        let c: Vec<Rational> = if attempt == 0 {
            base.to_vec()
        } else {
            base.iter()
                .map(|x| x * rat(8) + rat(rng.gen_range(-3..=3)))
                .collect()
        };
        if !is_ample(&c) {
            continue;
        }
        let eta = gram.mul_vec(&c);
        if eta_is_admissible(&eta, &words) {
            return Ok(eta);
        }
    }
    Err(Error::EtaExhausted {
        candidates: ETA_CANDIDATES,
    })
}

/// `{x : eta . M_w x >= eta . x}` over words of length at most `max_len`,
/// accepted only when pointed with every ray nef.
pub fn dirichlet_domain(
    eta: &[Rational],
    actions: &ActionSet,
    max_len: usize,
    is_nef: &dyn Fn(&[Rational]) -> bool,
) -> Result<PolyhedralCone> {
    let facets: Vec<Vec<Rational>> = actions
        .words_up_to(max_len)
        .iter()
        .map(|(_, m)| {
            m.transpose()
                .mul_vec(eta)
                .iter()
                .zip(eta)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>()
        })
        .filter(|f| f.iter().any(|x| !x.is_zero()))
        .collect();
    let cone = PolyhedralCone::from_facets(actions.dim(), &facets)?;
    if cone.rational_rays().iter().all(|r| is_nef(r)) {
        Ok(cone)
    } else {
        Err(Error::Inconsistent(
            "truncated Dirichlet cone leaves the nef cone".into(),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TilingSettings {
    pub samples: usize,
    pub seed: u64,
    pub max_steps: usize,
    pub plateau_depth: usize,
    pub plateau_width: usize,
    /// Half-width of the integer box that samples are drawn from.
    pub sample_bound: i64,
    pub overlap_samples: usize,
    pub overlap_word_length: usize,
}

impl Default for TilingSettings {
    fn default() -> Self {
        TilingSettings {
            samples: 1000,
            seed: 42,
            max_steps: 200,
            plateau_depth: 3,
            plateau_width: 16,
            sample_bound: 50,
            overlap_samples: 200,
            overlap_word_length: 3,
        }
    }
}

/// A candidate domain together with the group that should tile the cone with it.
pub struct TilingProblem<'a> {
    pub domain: &'a PolyhedralCone,
    pub actions: &'a ActionSet,
    pub eta: &'a [Rational],
    pub is_ample: &'a (dyn Fn(&[Rational]) -> bool + Sync),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleFailure {
    pub index: usize,
    pub class: Vec<Rational>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapWitness {
    pub point: Vec<Rational>,
    pub word: GroupWord,
    pub image: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub samples: usize,
    pub successes: usize,
    pub failures: Vec<SampleFailure>,
    pub max_steps_used: usize,
    pub total_steps: usize,
    /// Every success was re-checked by word evaluation and facet pairings.
    pub recheck_passed: bool,
    pub overlap_samples: usize,
    pub overlap: Option<OverlapWitness>,
}

impl TilingReport {
    pub fn success_rate(&self) -> f64 {
        if self.samples == 0 {
            1.0
        } else {
            self.successes as f64 / self.samples as f64
        }
    }

    pub fn mean_steps(&self) -> f64 {
        if self.successes == 0 {
            0.0
        } else {
            self.total_steps as f64 / self.successes as f64
        }
    }

    pub fn complete(&self) -> bool {
        self.successes == self.samples && self.recheck_passed && self.overlap.is_none()
    }
}

fn height(eta: &[Rational], x: &[Rational]) -> Rational {
    dot(eta, x)
}

enum Plateau {
    Inside(Vec<Rational>, GroupWord),
    Lower(Vec<Rational>, GroupWord),
    Stuck,
}

fn explore_plateau(
    problem: &TilingProblem<'_>,
    start: &[Rational],
    settings: &TilingSettings,
) -> Plateau {
    let h0 = height(problem.eta, start);
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    seen.insert(start.to_vec());
    let mut layer = vec![(start.to_vec(), GroupWord::identity())];
    for _ in 0..settings.plateau_depth {
        let mut next: Vec<(Rational, Vec<Rational>, GroupWord)> = Vec::new();
        for (x, word) in &layer {
            for (g, inv) in problem.actions.letters() {
                let y = problem.actions.matrix(g, inv).mul_vec(x);
                if !seen.insert(y.clone()) {
                    continue;
                }
                let w = word.then(g, inv);
                if problem.domain.contains(&y) {
                    return Plateau::Inside(y, w);
                }
                next.push((height(problem.eta, &y), y, w));
            }
        }
        next.sort();
        if let Some((h, y, w)) = next.first() {
            if *h < h0 {
                return Plateau::Lower(y.clone(), w.clone());
            }
        }
        next.truncate(settings.plateau_width);
        layer = next.into_iter().map(|(_, y, w)| (y, w)).collect();
    }
    Plateau::Stuck
}

/// Greedy strict descent of the height, with a bounded breadth-first search
/// across plateaus and local minima outside the domain.
pub fn reduce_class(
    problem: &TilingProblem<'_>,
    x: &[Rational],
    settings: &TilingSettings,
) -> std::result::Result<ReductionResult, String> {
    let mut current = x.to_vec();
    let mut word = GroupWord::identity();
    loop {
        if problem.domain.contains(&current) {
            let steps = word.len();
            return Ok(ReductionResult {
                input: x.to_vec(),
                word,
                reduced: current,
                steps,
            });
        }
        if word.len() >= settings.max_steps {
            return Err(format!("step budget {} exhausted", settings.max_steps));
        }
        let h = height(problem.eta, &current);
        let best = problem
            .actions
            .letters()
            .into_iter()
            .map(|(g, inv)| {
                let y = problem.actions.matrix(g, inv).mul_vec(&current);
                (height(problem.eta, &y), y, (g, inv))
            })
            .min();
        match best {
            Some((hy, y, (g, inv))) if hy < h => {
                current = y;
                word = word.then(g, inv);
            }
            _ => match explore_plateau(problem, &current, settings) {
                Plateau::Inside(y, w) | Plateau::Lower(y, w) => {
                    current = y;
                    word = word.followed_by(&w);
                }
                Plateau::Stuck => {
                    return Err(format!(
                        "local minimum of the height outside the domain after {} steps",
                        word.len()
                    ))
                }
            },
        }
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Random integer vector in the box accepted by the ampleness oracle.
pub fn sample_ample<R: Rng>(
    rng: &mut R,
    dim: usize,
    bound: i64,
    is_ample: &(dyn Fn(&[Rational]) -> bool + Sync),
) -> Option<Vec<Rational>> {
    (0..100_000).find_map(|_| {
        let x: Vec<Rational> = (0..dim)
            .map(|_| rat(rng.gen_range(-bound..=bound)))
            .collect();
        is_ample(&x).then_some(x)
    })
}

/// Looks for `p` in the interior with `M_w p` also in the interior for a
/// non-identity action of length at most `max_len`.
pub fn overlap_witness(
    domain: &PolyhedralCone,
    actions: &ActionSet,
    samples: usize,
    seed: u64,
    max_len: usize,
) -> Option<OverlapWitness> {
    if !domain.is_full_dimensional() {
        return None;
    }
    let words = actions.words_up_to(max_len);
    (0..samples).into_par_iter().find_map_first(|i| {
        let mut rng = sample_rng(seed ^ 0x006f_7665_726c_6170, i);
        let p = domain.sample_interior(&mut rng, 16);
        words.iter().find_map(|(w, m)| {
            let image = m.mul_vec(&p);
            domain.interior_contains(&image).then(|| OverlapWitness {
                point: p.clone(),
                word: w.clone(),
                image,
            })
        })
    })
}

pub fn verify_tiling(problem: &TilingProblem<'_>, settings: &TilingSettings) -> TilingReport {
    let dim = problem.domain.dim();
    let outcomes: Vec<std::result::Result<ReductionResult, SampleFailure>> = (0..settings.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(settings.seed, i);
            let Some(x) = sample_ample(&mut rng, dim, settings.sample_bound, problem.is_ample)
            else {
                return Err(SampleFailure {
                    index: i,
                    class: Vec::new(),
                    reason: "no ample class found in the sampling box".into(),
                });
            };
            reduce_class(problem, &x, settings).map_err(|reason| SampleFailure {
                index: i,
                class: x,
                reason,
            })
        })
        .collect();
    let mut report = TilingReport {
        samples: settings.samples,
        successes: 0,
        failures: Vec::new(),
        max_steps_used: 0,
        total_steps: 0,
        recheck_passed: true,
        overlap_samples: settings.overlap_samples,
        overlap: None,
    };
    for outcome in outcomes {
        match outcome {
            Ok(r) => {
                let recheck = r.word.apply(problem.actions, &r.input) == r.reduced
                    && problem.domain.contains(&r.reduced);
                report.recheck_passed &= recheck;
                report.successes += 1;
                report.total_steps += r.steps;
                report.max_steps_used = report.max_steps_used.max(r.steps);
            }
            Err(f) => report.failures.push(f),
        }
    }
    report.overlap = overlap_witness(
        problem.domain,
        problem.actions,
        settings.overlap_samples,
        settings.seed,
        settings.overlap_word_length,
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::gauss::{form_gram, gauss_action_set, minkowski_domain_p2, BinaryForm};

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn form_is_ample(x: &[Rational]) -> bool {
        x[0] > rat(0) && rat(4) * &x[0] * &x[2] - &x[1] * &x[1] > rat(0)
    }

    #[test]
    fn swap_stabilizes_diagonal_eta() {
        let swap = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let actions = ActionSet::new(2, vec![swap], vec!["s".into()]).unwrap();
        let words = actions.words_up_to(ETA_WORD_LENGTH);
        assert_eq!(words.len(), 1);
        assert!(eta_is_admissible(&v(&[1, 2]), &words));
        assert!(!eta_is_admissible(&v(&[1, 1]), &words));
    }

    #[test]
    fn eta_for_forms_has_trivial_stabilizer() {
        let actions = gauss_action_set();
        let eta = find_eta(&form_gram(), &v(&[1, 0, 1]), &form_is_ample, &actions, 7).unwrap();
        assert!(eta_is_admissible(
            &eta,
            &actions.words_up_to(ETA_WORD_LENGTH)
        ));
    }

    #[test]
    fn minkowski_domain_tiles_forms() {
        let actions = gauss_action_set();
        let domain = minkowski_domain_p2();
        let eta = find_eta(&form_gram(), &v(&[1, 0, 1]), &form_is_ample, &actions, 42).unwrap();
        let problem = TilingProblem {
            domain: &domain,
            actions: &actions,
            eta: &eta,
            is_ample: &form_is_ample,
        };
        let settings = TilingSettings {
            samples: 200,
            ..TilingSettings::default()
        };
        let report = verify_tiling(&problem, &settings);
        assert_eq!(report.successes, 200, "{:?}", report.failures.first());
        assert!(report.complete());
        let sample = reduce_class(&problem, &v(&[7, 10, 4]), &settings).unwrap();
        assert!(BinaryForm::from_vector(&sample.reduced)
            .unwrap()
            .is_reduced());
    }

    #[test]
    fn enlarged_domain_overlaps() {
        let actions = gauss_action_set();
        // b >= -a instead of b >= 0.
        let big = PolyhedralCone::from_facets(3, &[v(&[1, 1, 0]), v(&[1, -1, 0]), v(&[-1, 0, 1])])
            .unwrap();
        assert!(overlap_witness(&big, &actions, 100, 1, 3).is_some());
        assert!(overlap_witness(&minkowski_domain_p2(), &actions, 100, 1, 3).is_none());
    }
}
