use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::{Element, FiniteGroup, MAX_PERMUTATION_DEGREE};
use crate::error::{Error, Result};

/// Multiplication tables are precomputed up to this many elements.
const TABLE_LIMIT: usize = 1024;

/// A permutation group on `{0, ..., d-1}` enumerated by closure of its
/// generators. Elements are sorted lexicographically by image list, so the
/// identity permutation gets encoding 0. The product `a * b` applies `a`
/// first, then `b`.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    label: String,
    images: Vec<u8>,
    index: HashMap<u64, u32>,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
    generators: Vec<Element>,
}

fn pack(perm: &[u8]) -> u64 {
    perm.iter().fold(0u64, |acc, &i| (acc << 4) | u64::from(i))
}

impl PermutationGroup {
    /// Closure of the given generators (each an image list of length `degree`).
    pub fn from_generators(degree: usize, gens: &[Vec<u8>], label: String) -> Result<Self> {
        if degree == 0 || degree > MAX_PERMUTATION_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "permutation degree must lie in [1, {MAX_PERMUTATION_DEGREE}], got {degree}"
            )));
        }
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| (i as usize) >= degree) {
                return Err(Error::InvalidArgument(format!("{g:?} is not a permutation of degree {degree}")));
            }
            for &i in g {
                if std::mem::replace(&mut seen[i as usize], true) {
                    return Err(Error::InvalidArgument(format!("{g:?} repeats the point {i}")));
                }
            }
        }

        let identity: Vec<u8> = (0..degree as u8).collect();
        let mut found: HashMap<u64, Vec<u8>> = HashMap::new();
        found.insert(pack(&identity), identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q: Vec<u8> = p.iter().map(|&i| g[i as usize]).collect();
                let key = pack(&q);
                if let Entry::Vacant(slot) = found.entry(key) {
                    slot.insert(q.clone());
                    frontier.push(q);
                }
            }
        }
        let mut perms: Vec<Vec<u8>> = found.into_values().collect();
        perms.sort();

        let n = perms.len();
        let images: Vec<u8> = perms.concat();
        let index: HashMap<u64, u32> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (pack(p), i as u32))
            .collect();
        let mut group = PermutationGroup {
            degree,
            label,
            images,
            index,
            inverses: Vec::new(),
            table: None,
            generators: Vec::new(),
        };
        group.inverses = (0..n)
            .map(|a| {
                let p = group.image(a);
                let mut inv = vec![0u8; degree];
                for (i, &j) in p.iter().enumerate() {
                    inv[j as usize] = i as u8;
                }
                group.index[&pack(&inv)]
            })
            .collect();
        if n <= TABLE_LIMIT {
            let table = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| group.compose(a, b) as u32)
                .collect();
            group.table = Some(table);
        }
        let mut generator_ids: Vec<Element> = gens
            .iter()
            .map(|g| group.index[&pack(g)] as Element)
            .filter(|&x| x != 0)
            .collect();
        generator_ids.sort_unstable();
        generator_ids.dedup();
        group.generators = generator_ids;
        Ok(group)
    }

    pub fn symmetric(d: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if d >= 2 {
            let mut swap: Vec<u8> = (0..d as u8).collect();
            swap.swap(0, 1);
            gens.push(swap);
            let cycle: Vec<u8> = (0..d as u8).map(|i| (i + 1) % d as u8).collect();
            gens.push(cycle);
        }
        Self::from_generators(d, &gens, format!("symmetric({d})"))
    }

    pub fn alternating(d: usize) -> Result<Self> {
        let gens: Vec<Vec<u8>> = (2..d)
            .map(|k| {
                let mut p: Vec<u8> = (0..d as u8).collect();
                // 3-cycle 0 -> 1 -> k -> 0
                p[0] = 1;
                p[1] = k as u8;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_generators(d, &gens, format!("alternating({d})"))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Image list of the permutation with the given encoding.
    pub fn image(&self, x: Element) -> &[u8] {
        &self.images[x * self.degree..(x + 1) * self.degree]
    }

    pub fn encode(&self, perm: &[u8]) -> Option<Element> {
        self.index.get(&pack(perm)).map(|&i| i as Element)
    }

    fn compose(&self, a: Element, b: Element) -> Element {
        let pa = self.image(a);
        let pb = self.image(b);
        let key = pa
            .iter()
            .fold(0u64, |acc, &i| (acc << 4) | u64::from(pb[i as usize]));
        self.index[&key] as Element
    }
}

impl FiniteGroup for PermutationGroup {
    fn order(&self) -> usize {
        self.inverses.len()
    }

    fn multiply(&self, a: Element, b: Element) -> Element {
        match &self.table {
            Some(t) => t[a * self.order() + b] as Element,
            None => self.compose(a, b),
        }
    }

    fn inverse(&self, a: Element) -> Element {
        self.inverses[a] as Element
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }

    fn generators(&self) -> Option<Vec<Element>> {
        Some(self.generators.clone())
    }
}
