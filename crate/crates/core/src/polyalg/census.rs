//! Smoothness of every ternary form of a given degree over a small prime
//! field, one Groebner computation per orbit.
//!
//! Smoothness is invariant under linear substitutions and under scaling of
//! the form, so it suffices to decide it on one representative of each orbit
//! of `GL3(F_p) × F_p^*` acting on nonzero forms. Orbits are found by
//! union-find over all `p^n` coefficient vectors, applying the generators
//! as linear maps on packed coefficient lanes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{input, Error, Result};

use super::{projective_smooth, CoeffField, Monomial, PolyRing, Scalar, SparsePoly};

/// Largest number of forms `p^n` enumerated.
pub const CENSUS_CAP: u64 = 1 << 24;

/// Monomials of degree `d` in `nvars` variables, increasing in grevlex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(&mut Vec::new(), d, nvars, &mut out);
    }
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FormOrbit {
    /// Coefficients against [`monomials_of_degree`]`(3, degree)`; the
    /// representative has the smallest base-`p` index in its orbit.
    pub coeffs: Vec<u64>,
    pub size: u64,
}

/// Matrix of `F(x, y, z) ↦ F(g·(x, y, z))` on coefficient vectors.
fn substitution_matrix(p: u64, mons: &[Monomial], g: [[u64; 3]; 3]) -> Result<Vec<Vec<u64>>> {
    let ring = PolyRing::new(CoeffField::prime(p)?, &["x", "y", "z"])?;
    let lin: Vec<SparsePoly> = g
        .iter()
        .map(|row| {
            let terms = (0..3).map(|j| (Monomial::var(3, j, 1).0, Scalar::P(row[j]))).collect();
            SparsePoly::from_terms(&ring, terms)
        })
        .collect::<Result<_>>()?;
    let pos: BTreeMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = mons.len();
    let mut cols = vec![vec![0u64; n]; n];
    for (k, m) in mons.iter().enumerate() {
        let mut img = SparsePoly::one(&ring);
        for (i, e) in m.0.iter().enumerate() {
            img = img.mul(&lin[i].pow(*e));
        }
        for (mm, c) in img.terms() {
            let Scalar::P(c) = c else { unreachable!() };
            cols[k][pos[mm]] = *c;
        }
    }
    Ok(cols)
}

/// A linear map on base-`p` indices, evaluated chunkwise: each chunk of
/// input digits looks up its packed image, lanes are summed without carries
/// and then reduced mod `p` group by group.
struct PackedMap {
    chunk_tables: Vec<Vec<u128>>,
    chunk_len: usize,
    lane_bits: u32,
    decode: Vec<Vec<u64>>,
    lanes_per_group: usize,
}

impl PackedMap {
    fn new(p: u64, cols: &[Vec<u64>]) -> Result<Self> {
        let n = cols.len();
        let chunk_len = 5.min(n.max(1));
        let nchunks = n.div_ceil(chunk_len);
        let max_sum = nchunks as u64 * (p - 1);
        let lane_bits = 64 - max_sum.leading_zeros();
        if lane_bits as usize * n > 128 {
            return Err(Error::Resource("forms too large for packed orbit enumeration".into()));
        }
        let pack = |v: &[u64]| -> u128 {
            v.iter().enumerate().map(|(l, c)| (*c as u128) << (l as u32 * lane_bits)).sum()
        };
        let mut chunk_tables = Vec::new();
        for c in 0..nchunks {
            let lo = c * chunk_len;
            let hi = (lo + chunk_len).min(n);
            let size = p.pow((hi - lo) as u32) as usize;
            let mut table = Vec::with_capacity(size);
            for idx in 0..size {
                let mut img = vec![0u64; n];
                let mut rest = idx as u64;
                for col in &cols[lo..hi] {
                    let digit = rest % p;
                    rest /= p;
                    for (r, v) in img.iter_mut().enumerate() {
                        *v = (*v + digit * col[r]) % p;
                    }
                }
                table.push(pack(&img));
            }
            chunk_tables.push(table);
        }
        let lanes_per_group = (16 / lane_bits as usize).max(1);
        let mut decode = Vec::new();
        let mut lane = 0;
        while lane < n {
            let k = lanes_per_group.min(n - lane);
            let size = 1usize << (k as u32 * lane_bits);
            let mask = (1u64 << lane_bits) - 1;
            let table = (0..size as u64)
                .map(|bits| {
                    (0..k)
                        .rev()
                        .fold(0u64, |acc, l| acc * p + ((bits >> (l as u32 * lane_bits)) & mask) % p)
                })
                .collect();
            decode.push(table);
            lane += k;
        }
        Ok(PackedMap {
            chunk_tables,
            chunk_len,
            lane_bits,
            decode,
            lanes_per_group,
        })
    }

    fn apply(&self, p: u64, index: u64) -> u64 {
        let chunk_size = p.pow(self.chunk_len as u32);
        let mut rest = index;
        let mut packed = 0u128;
        for table in &self.chunk_tables {
            packed += table[(rest % chunk_size) as usize];
            rest /= chunk_size;
        }
        let group_bits = self.lanes_per_group as u32 * self.lane_bits;
        let group_scale = p.pow(self.lanes_per_group as u32);
        let mut out = 0u64;
        let mut scale = 1u64;
        for table in &self.decode {
            let bits = (packed & ((1u128 << group_bits) - 1)) as usize;
            out += table[bits % table.len()] * scale;
            packed >>= group_bits;
            scale = scale.saturating_mul(group_scale);
        }
        out
    }
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        let up = parent[parent[i as usize] as usize];
        parent[i as usize] = up;
        i = up;
    }
    i
}

fn primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|g| crate::arith::mult_order(*g, p) == Some(p - 1))
        .expect("prime fields have primitive roots")
}

/// Orbits of nonzero ternary forms of degree `degree` over `F_p` under
/// linear substitution and scaling, sorted by representative index.
pub fn form_orbits(p: u64, degree: u32) -> Result<Vec<FormOrbit>> {
    if !is_prime(p) || degree == 0 {
        return input("need a prime p and a positive degree");
    }
    let mons = monomials_of_degree(3, degree);
    let n = mons.len();
    let total = (p as u128).checked_pow(n as u32).filter(|t| *t <= CENSUS_CAP as u128).ok_or_else(|| {
        Error::Resource(format!("{p}^{n} forms exceed the census cap {CENSUS_CAP}"))
    })? as u64;
    let g = primitive_root(p);
    let mut gens: Vec<Vec<Vec<u64>>> = vec![
        substitution_matrix(p, &mons, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])?,
        substitution_matrix(p, &mons, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])?,
        substitution_matrix(p, &mons, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])?,
    ];
    if p > 2 {
        gens.push(substitution_matrix(p, &mons, [[g, 0, 0], [0, 1, 0], [0, 0, 1]])?);
        let scale: Vec<Vec<u64>> = (0..n)
            .map(|k| (0..n).map(|r| if r == k { g } else { 0 }).collect())
            .collect();
        gens.push(scale);
    }
    let maps: Vec<PackedMap> = gens.iter().map(|c| PackedMap::new(p, c)).collect::<Result<_>>()?;
    let mut parent: Vec<u32> = (0..total as u32).collect();
    for i in 1..total {
        for m in &maps {
            let j = m.apply(p, i);
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j as u32));
            if a != b {
                // the smaller index becomes the root, so roots are minimal
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    let mut sizes: BTreeMap<u32, u64> = BTreeMap::new();
    for i in 1..total as u32 {
        *sizes.entry(find(&mut parent, i)).or_insert(0) += 1;
    }
    Ok(sizes
        .into_iter()
        .map(|(rep, size)| {
            let mut rest = rep as u64;
            let coeffs = (0..n)
                .map(|_| {
                    let d = rest % p;
                    rest /= p;
                    d
                })
                .collect();
            FormOrbit { coeffs, size }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub form: String,
    pub orbit_size: u64,
    pub smooth: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub p: u64,
    pub degree: u32,
    /// Number of nonzero forms, `p^n - 1`.
    pub forms: u64,
    pub orbits: usize,
    pub smooth_forms: u64,
    pub singular_forms: u64,
    pub entries: Vec<CensusEntry>,
}

/// The ternary form in variables `x, y, z` with the given coefficients.
pub fn form_from_coeffs(p: u64, degree: u32, coeffs: &[u64]) -> Result<SparsePoly> {
    let ring = PolyRing::new(CoeffField::prime(p)?, &["x", "y", "z"])?;
    let mons = monomials_of_degree(3, degree);
    if coeffs.len() != mons.len() {
        return input("coefficient count differs from the number of monomials");
    }
    SparsePoly::from_terms(
        &ring,
        mons.into_iter().zip(coeffs).map(|(m, c)| (m.0, Scalar::P(c % p))).collect(),
    )
}

/// [`projective_smooth`] on every orbit of nonzero ternary forms.
pub fn smoothness_census(p: u64, degree: u32) -> Result<CensusReport> {
    let orbits = form_orbits(p, degree)?;
    let mut entries = Vec::with_capacity(orbits.len());
    let (mut smooth_forms, mut singular_forms) = (0, 0);
    for o in &orbits {
        let f = form_from_coeffs(p, degree, &o.coeffs)?;
        let smooth = projective_smooth(&f)?;
        if smooth {
            smooth_forms += o.size;
        } else {
            singular_forms += o.size;
        }
        entries.push(CensusEntry {
            form: f.to_string(),
            orbit_size: o.size,
            smooth,
        });
    }
    Ok(CensusReport {
        p,
        degree,
        forms: smooth_forms + singular_forms,
        orbits: orbits.len(),
        smooth_forms,
        singular_forms,
        entries,
    })
}
