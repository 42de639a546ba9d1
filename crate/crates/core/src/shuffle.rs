//! (n, α)-shuffles, their raise/lower conversions and remainder shuffles.
//!
//! A shuffle σ ∈ Sh(n, α) is a permutation of {1..n} increasing on σ(1..α) (the
//! transversal positions) and on σ(α+1..n) (the instantaneous positions).

use std::fmt;
use std::str::FromStr;

use crate::error::{MosaicError, Result};

pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shuffle {
    n: usize,
    alpha: usize,
    image: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

fn check_rank(n: usize) -> Result<()> {
    if n > MAX_RANK {
        Err(MosaicError::RankCap(n))
    } else {
        Ok(())
    }
}

impl Shuffle {
    /// Shuffle with the given (1-based) transversal positions.
    pub fn from_transversal(n: usize, transversal: &[usize]) -> Result<Self> {
        check_rank(n)?;
        let mut t = transversal.to_vec();
        t.sort_unstable();
        t.dedup();
        if t.len() != transversal.len() {
            return Err(MosaicError::Config("repeated transversal position".into()));
        }
        if let Some(&bad) = t.iter().find(|&&p| p == 0 || p > n) {
            return Err(MosaicError::IndexOutOfRange { index: bad, max: n });
        }
        let alpha = t.len();
        let mut image = t;
        image.extend((1..=n).filter(|p| !transversal.contains(p)));
        Ok(Self { n, alpha, image })
    }

    /// Shuffle whose transversal set is given by a bitmask (bit p−1 ↔ position p).
    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        let t: Vec<usize> = (1..=n).filter(|p| mask & (1 << (p - 1)) != 0).collect();
        Self::from_transversal(n, &t)
    }

    /// Validates an explicit image list.
    pub fn from_image(n: usize, alpha: usize, image: Vec<usize>) -> Result<Self> {
        check_rank(n)?;
        if image.len() != n || alpha > n {
            return Err(MosaicError::RankMismatch { expected: n, found: image.len() });
        }
        let mut seen = vec![false; n + 1];
        for &p in &image {
            if p == 0 || p > n || seen[p] {
                return Err(MosaicError::IndexOutOfRange { index: p, max: n });
            }
            seen[p] = true;
        }
        let inc = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
        if !inc(&image[..alpha]) || !inc(&image[alpha..]) {
            return Err(MosaicError::Config("shuffle halves must be increasing".into()));
        }
        Ok(Self { n, alpha, image })
    }

    /// The purely instantaneous shuffle 𝒮ⁿ = (|1 … n).
    pub fn instantaneous(n: usize) -> Self {
        Self { n, alpha: 0, image: (1..=n).collect() }
    }

    /// The purely transversal shuffle (1 … n|).
    pub fn transversal_all(n: usize) -> Self {
        Self { n, alpha: n, image: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// σ(p), 1-based.
    pub fn at(&self, p: usize) -> usize {
        self.image[p - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn transversal(&self) -> &[usize] {
        &self.image[..self.alpha]
    }

    pub fn instantaneous_positions(&self) -> &[usize] {
        &self.image[self.alpha..]
    }

    pub fn mask(&self) -> u32 {
        self.transversal().iter().fold(0, |m, p| m | (1 << (p - 1)))
    }

    pub fn is_transversal(&self, position: usize) -> bool {
        self.transversal().contains(&position)
    }

    /// σ⁻¹(position), 1-based.
    pub fn inverse(&self, position: usize) -> usize {
        self.image.iter().position(|&p| p == position).expect("position in range") + 1
    }

    /// σ^β: moves σ(β) into the instantaneous part. Returns (σ^β, p̆) with (σ^β)_{p̆} = σ.
    pub fn raise(&self, beta: usize) -> Result<(Self, usize)> {
        if beta == 0 || beta > self.alpha {
            return Err(MosaicError::IndexOutOfRange { index: beta, max: self.alpha });
        }
        let moved = self.image[beta - 1];
        let trans: Vec<usize> = self.transversal().iter().copied().filter(|&p| p != moved).collect();
        let mut inst = self.instantaneous_positions().to_vec();
        let pos = inst.partition_point(|&p| p < moved);
        inst.insert(pos, moved);
        let mut image = trans;
        image.extend(inst);
        Ok((Self { n: self.n, alpha: self.alpha - 1, image }, pos + 1))
    }

    /// σ_β: moves σ(α+β) into the transversal part. Returns (σ_β, p̆) with (σ_β)^{p̆} = σ.
    pub fn lower(&self, beta: usize) -> Result<(Self, usize)> {
        let m = self.n - self.alpha;
        if beta == 0 || beta > m {
            return Err(MosaicError::IndexOutOfRange { index: beta, max: m });
        }
        let moved = self.image[self.alpha + beta - 1];
        let mut trans = self.transversal().to_vec();
        let pos = trans.partition_point(|&p| p < moved);
        trans.insert(pos, moved);
        let inst = self.instantaneous_positions().iter().copied().filter(|&p| p != moved);
        let mut image = trans;
        image.extend(inst);
        Ok((Self { n: self.n, alpha: self.alpha + 1, image }, pos + 1))
    }

    pub fn convert(&self, beta: usize, dir: Direction) -> Result<(Self, usize)> {
        match dir {
            Direction::Raise => self.raise(beta),
            Direction::Lower => self.lower(beta),
        }
    }

    /// Word rendering: τ at transversal positions, S elsewhere (e.g. "SSτSτ").
    pub fn word(&self) -> String {
        (1..=self.n).map(|p| if self.is_transversal(p) { 'τ' } else { 'S' }).collect()
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &[usize]| s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({}|{})", join(self.transversal()), join(self.instantaneous_positions()))
    }
}

/// All σ ∈ Sh(n, α), lexicographically ordered by their transversal sets.
pub fn enumerate_shuffles(n: usize, alpha: usize) -> Result<Vec<Shuffle>> {
    check_rank(n)?;
    if alpha > n {
        return Err(MosaicError::IndexOutOfRange { index: alpha, max: n });
    }
    let mut out = Vec::new();
    let mut comb: Vec<usize> = (1..=alpha).collect();
    loop {
        out.push(Shuffle::from_transversal(n, &comb)?);
        // Next combination in lexicographic order.
        let mut i = alpha;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if comb[i] < n - (alpha - 1 - i) {
                comb[i] += 1;
                for k in i + 1..alpha {
                    comb[k] = comb[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All 2ⁿ shuffles in canonical order: α ascending, then lexicographic in T(σ).
pub fn canonical_shuffles(n: usize) -> Result<Vec<Shuffle>> {
    let mut out = Vec::with_capacity(1 << n);
    for alpha in 0..=n {
        out.extend(enumerate_shuffles(n, alpha)?);
    }
    Ok(out)
}

/// σ̌ = σ̃ \ σ|_{1..α}: drop σ's transversal positions from σ̃ and renumber in order.
pub fn remainder_shuffle(sigma_tilde: &Shuffle, sigma: &Shuffle) -> Result<Shuffle> {
    if sigma_tilde.n != sigma.n {
        return Err(MosaicError::RankMismatch { expected: sigma.n, found: sigma_tilde.n });
    }
    let keep = sigma.instantaneous_positions();
    let renum = |p: usize| keep.iter().position(|&q| q == p).map(|k| k + 1);
    let trans: Vec<usize> = sigma_tilde.transversal().iter().filter_map(|&p| renum(p)).collect();
    Shuffle::from_transversal(keep.len(), &trans)
}

/// A word over {♯, ♭}: ♯ at the transversal positions of σ̃, ♭ elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatWord(pub Shuffle);

impl FlatWord {
    pub fn sharp(n: usize) -> Self {
        Self(Shuffle::transversal_all(n))
    }

    pub fn flat(n: usize) -> Self {
        Self(Shuffle::instantaneous(n))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn shuffle(&self) -> &Shuffle {
        &self.0
    }

    /// Whether slot `position` (1-based) stays raised.
    pub fn is_sharp(&self, position: usize) -> bool {
        self.0.is_transversal(position)
    }

    /// All 2ⁿ words in canonical shuffle order.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        Ok(canonical_shuffles(n)?.into_iter().map(Self).collect())
    }
}

impl fmt::Display for FlatWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.n()).map(|p| if self.is_sharp(p) { '♯' } else { '♭' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for FlatWord {
    type Err = MosaicError;

    /// Accepts ♯/# /s/u for raised slots and ♭/b/f/l for lowered slots.
    fn from_str(s: &str) -> Result<Self> {
        let mut sharp = Vec::new();
        let mut n = 0;
        for c in s.chars() {
            n += 1;
            match c {
                '♯' | '#' | 's' | 'u' => sharp.push(n),
                '♭' | 'b' | 'f' | 'l' => {}
                _ => return Err(MosaicError::Config(format!("invalid flat-word character {c:?}"))),
            }
        }
        Ok(Self(Shuffle::from_transversal(n, &sharp)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(t: &[usize], n: usize) -> Shuffle {
        Shuffle::from_transversal(n, t).unwrap()
    }

    #[test]
    fn paper_example_conversions() {
        let s = sh(&[3, 5], 5);
        assert_eq!(s.to_string(), "(3 5|1 2 4)");
        assert_eq!(s.word(), "SSτSτ");
        let (up, p) = s.raise(2).unwrap();
        assert_eq!(up.to_string(), "(3|1 2 4 5)");
        assert_eq!(p, 4);
        assert_eq!(up.lower(4).unwrap().0, s);
        let (down, q) = s.lower(2).unwrap();
        assert_eq!(down.to_string(), "(2 3 5|1 4)");
        assert_eq!(q, 1);
        assert_eq!(down.raise(1).unwrap().0, s);
    }

    #[test]
    fn paper_example_remainder() {
        let st = sh(&[2, 5], 5);
        let s = sh(&[3, 5], 5);
        let r = remainder_shuffle(&st, &s).unwrap();
        assert_eq!(r.to_string(), "(2|1 3)");
        let set: Vec<usize> = (1..=s.n() - s.alpha())
            .filter(|&b| st.inverse(s.at(s.alpha() + b)) <= st.alpha())
            .collect();
        assert_eq!(set, vec![2]);
        let set2: Vec<usize> = (1..=r.n()).filter(|&b| r.inverse(b) <= r.alpha()).collect();
        assert_eq!(set, set2);
        assert_eq!(FlatWord(st).to_string(), "♭♯♭♭♯");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_shuffles(4, 2).unwrap().len(), 6);
        let e = enumerate_shuffles(0, 0).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].to_string(), "(|)");
        assert!(enumerate_shuffles(5, 2).unwrap().contains(&sh(&[3, 5], 5)));
        for n in 0..=8 {
            assert_eq!(canonical_shuffles(n).unwrap().len(), 1 << n);
        }
        assert_eq!(enumerate_shuffles(9, 1), Err(MosaicError::RankCap(9)));
    }

    #[test]
    fn exhaustive_round_trips_and_remainders() {
        for n in 0..=6 {
            let all = canonical_shuffles(n).unwrap();
            for s in &all {
                for b in 1..=s.alpha() {
                    let (u, p) = s.raise(b).unwrap();
                    assert_eq!(u.lower(p).unwrap().0, *s);
                }
                for b in 1..=n - s.alpha() {
                    let (d, p) = s.lower(b).unwrap();
                    assert_eq!(d.raise(p).unwrap().0, *s);
                }
                for st in &all {
                    let r = remainder_shuffle(st, s).unwrap();
                    for b in 1..=n - s.alpha() {
                        let lhs = st.inverse(s.at(s.alpha() + b)) <= st.alpha();
                        let rhs = r.inverse(b) <= r.alpha();
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(remainder_shuffle(s, s).unwrap(), Shuffle::instantaneous(n - s.alpha()));
            }
        }
    }

    #[test]
    fn out_of_range_conversions() {
        let s = sh(&[1], 2);
        assert!(matches!(s.raise(2), Err(MosaicError::IndexOutOfRange { .. })));
        assert!(matches!(s.lower(0), Err(MosaicError::IndexOutOfRange { .. })));
    }

    #[test]
    fn flat_word_parsing() {
        let w: FlatWord = "♯♭".parse().unwrap();
        assert!(w.is_sharp(1) && !w.is_sharp(2));
        assert_eq!("sf".parse::<FlatWord>().unwrap(), w);
        assert_eq!(FlatWord::sharp(3).to_string(), "♯♯♯");
        assert_eq!(FlatWord::flat(2).to_string(), "♭♭");
    }
}
