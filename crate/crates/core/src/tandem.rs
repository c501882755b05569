//! Tandem walks: quadrant lattice walks with steps SE = (1,-1) and
//! (-p, q) for p, q >= 0, starting at (0, a) on the y-axis and ending
//! at (b, 0) on the x-axis.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain_err, parse_err, Error, Result};
use crate::walk::{Step, Walk};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TandemStep {
    SE,
    /// the step (-p, q)
    PQ(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TandemWalk {
    start_y: usize,
    steps: Vec<TandemStep>,
}

impl TandemWalk {
    /// Builds and checks quadrant confinement plus the end-on-x-axis
    /// condition.
    pub fn new(start_y: usize, steps: Vec<TandemStep>) -> Result<Self> {
        let w = TandemWalk { start_y, steps };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        let (mut x, mut y) = (0i64, self.start_y as i64);
        for (k, s) in self.steps.iter().enumerate() {
            match *s {
                TandemStep::SE => {
                    x += 1;
                    y -= 1;
                }
                TandemStep::PQ(p, q) => {
                    x -= p as i64;
                    y += q as i64;
                }
            }
            if x < 0 || y < 0 {
                return Err(domain_err(format!(
                    "walk leaves the quadrant after step {}",
                    k + 1
                )));
            }
        }
        if y != 0 {
            return Err(domain_err("walk does not end on the x-axis".to_string()));
        }
        Ok(())
    }

    pub fn start_y(&self) -> usize {
        self.start_y
    }

    pub fn steps(&self) -> &[TandemStep] {
        &self.steps
    }

    pub fn end_x(&self) -> usize {
        let mut x = 0i64;
        for s in &self.steps {
            match *s {
                TandemStep::SE => x += 1,
                TandemStep::PQ(p, _) => x -= p as i64,
            }
        }
        x as usize
    }

    /// (i, j) = (number of SE steps, number of (-p,q) steps).
    pub fn parameters(&self) -> (usize, usize) {
        let i = self
            .steps
            .iter()
            .filter(|s| matches!(s, TandemStep::SE))
            .count();
        (i, self.steps.len() - i)
    }

    /// Half-turn conjugate: reverse the step sequence and swap each
    /// (-p, q) into (-q, p).
    pub fn tau(&self) -> TandemWalk {
        let steps: Vec<TandemStep> = self
            .steps
            .iter()
            .rev()
            .map(|s| match *s {
                TandemStep::SE => TandemStep::SE,
                TandemStep::PQ(p, q) => TandemStep::PQ(q, p),
            })
            .collect();
        TandemWalk::new(self.end_x(), steps).expect("half-turn image stays in the quadrant")
    }
}

impl fmt::Display for TandemWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.start_y)?;
        for s in &self.steps {
            match *s {
                TandemStep::SE => write!(f, " SE")?,
                TandemStep::PQ(p, q) => write!(f, " (-{p},{q})")?,
            }
        }
        Ok(())
    }
}

impl FromStr for TandemWalk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = s
            .split_once(';')
            .ok_or_else(|| parse_err("missing ';' after the start height".to_string()))?;
        let start_y: usize = head
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad start height {:?}", head.trim())))?;
        let mut steps = Vec::new();
        for tok in rest.split_whitespace() {
            if tok == "SE" {
                steps.push(TandemStep::SE);
                continue;
            }
            let inner = tok
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| parse_err(format!("bad step token {tok:?}")))?;
            let (ps, qs) = inner
                .split_once(',')
                .ok_or_else(|| parse_err(format!("bad step token {tok:?}")))?;
            let p: i64 = ps
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad step token {tok:?}")))?;
            let q: usize = qs
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad step token {tok:?}")))?;
            if p > 0 {
                return Err(parse_err(format!(
                    "first coordinate of {tok:?} must be non-positive"
                )));
            }
            steps.push(TandemStep::PQ((-p) as usize, q));
        }
        TandemWalk::new(start_y, steps)
    }
}

/// E-counts per height of a walk from (0,0) to (i,j), as the vector
/// (c_0, ..., c_j).
fn counts(w: &Walk) -> Vec<usize> {
    w.e_counts()
}

/// Maps a chain (low, mid, up) with low <= mid <= up pointwise to its
/// tandem walk: E steps of mid become SE, the r-th N step becomes
/// (-beta_{r-1}, alpha_r) where alpha, beta are the height profiles of
/// low and up.
pub fn sigma(low: &Walk, mid: &Walk, up: &Walk) -> Result<TandemWalk> {
    check_triple(low, mid, up)?;
    let alpha = counts(low);
    let beta = counts(up);
    let mut steps = Vec::with_capacity(mid.len());
    let mut r = 0usize;
    for s in mid.steps() {
        match s {
            Step::E => steps.push(TandemStep::SE),
            Step::N => {
                r += 1;
                steps.push(TandemStep::PQ(beta[r - 1], alpha[r]));
            }
        }
    }
    TandemWalk::new(alpha[0], steps)
}

pub fn sigma_inverse(w: &TandemWalk) -> Result<(Walk, Walk, Walk)> {
    let mut alpha = vec![w.start_y()];
    let mut beta = Vec::new();
    let mut mid_steps = Vec::new();
    for s in w.steps() {
        match *s {
            TandemStep::SE => mid_steps.push(Step::E),
            TandemStep::PQ(p, q) => {
                beta.push(p);
                alpha.push(q);
                mid_steps.push(Step::N);
            }
        }
    }
    beta.push(w.end_x());
    let low = Walk::from_e_counts(&alpha);
    let mid = Walk::new(mid_steps);
    let up = Walk::from_e_counts(&beta);
    check_triple(&low, &mid, &up)?;
    Ok((low, mid, up))
}

fn check_triple(low: &Walk, mid: &Walk, up: &Walk) -> Result<()> {
    if !crate::walk::is_above(low, mid) || !crate::walk::is_above(mid, up) {
        return Err(domain_err(
            "triple is not an increasing chain of walks".to_string(),
        ));
    }
    Ok(())
}

/// Half-turn on triples: (mir(up), mir(mid), mir(low)).
pub fn tau_triple(low: &Walk, mid: &Walk, up: &Walk) -> Result<(Walk, Walk, Walk)> {
    check_triple(low, mid, up)?;
    Ok((up.mir(), mid.mir(), low.mir()))
}

/// All tandem walks with i SE steps, j other steps, start (0, a),
/// end (b, 0).
pub fn enumerate_tandem(i: usize, j: usize, a: usize, b: usize) -> Vec<TandemWalk> {
    let mut out = Vec::new();
    let mut steps = Vec::new();
    rec_tandem(i, j, a, b, 0, a, &mut steps, &mut out);
    out
}

fn rec_tandem(
    rem_se: usize,
    rem_pq: usize,
    a: usize,
    b: usize,
    x: usize,
    y: usize,
    steps: &mut Vec<TandemStep>,
    out: &mut Vec<TandemWalk>,
) {
    if rem_pq == 0 {
        // the rest must be SE steps straight down to (b, 0)
        if y == rem_se && x + rem_se == b {
            let mut all = steps.clone();
            all.extend(std::iter::repeat(TandemStep::SE).take(rem_se));
            out.push(TandemWalk::new(a, all).expect("validated by construction"));
        }
        return;
    }
    if rem_se > 0 && y > 0 {
        steps.push(TandemStep::SE);
        rec_tandem(rem_se - 1, rem_pq, a, b, x + 1, y - 1, steps, out);
        steps.pop();
    }
    // each later SE lowers y by one, so q can rise at most to rem_se - y
    for p in 0..=x {
        for q in 0..=(rem_se.saturating_sub(y)) {
            steps.push(TandemStep::PQ(p, q));
            rec_tandem(rem_se, rem_pq - 1, a, b, x - p, y + q, steps, out);
            steps.pop();
        }
    }
}
