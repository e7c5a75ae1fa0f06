//! Blocks against weights: defect zero blocks as weights with `Q = 1`, and
//! the actions induced on blocks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::actions::{aut_on_characters, galois_on_character, ActionTable, GammaGenerator};
use crate::chartab::{Block, CharacterTable};
use crate::equivcheck::cyclic_orbit_types;
use crate::error::{Error, Result};
use crate::numtheory::{divisors, lcm};
use crate::perm::ClassData;
use crate::weights::WeightClassSet;

/// `(block index, weight class id)` for every defect zero block.
pub fn blocks_of_defect_zero_as_weights(
    table: &CharacterTable,
    blocks: &[Block],
    weights: &WeightClassSet,
) -> Result<Vec<(usize, usize)>> {
    let trivial: Vec<_> = weights.classes.iter().filter(|w| weights.radicals[w.radical].radical.order() == 1).collect();
    let dz: Vec<usize> = (0..blocks.len()).filter(|&b| blocks[b].defect == 0).collect();
    if dz.len() != trivial.len() {
        return Err(Error::Internal(format!(
            "{} blocks of defect zero but {} weight classes with Q = 1",
            dz.len(),
            trivial.len()
        )));
    }
    let mut out = Vec::new();
    for b in dz {
        let chi = blocks[b].characters[0];
        let w = trivial
            .iter()
            .find(|w| weights.radicals[w.radical].table.values()[w.character] == table.values()[chi])
            .ok_or_else(|| Error::Internal(format!("defect zero character {} has no weight", table.names()[chi])))?;
        out.push((b, w.id));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockActionView {
    pub labels: Vec<String>,
    pub defects: Vec<u32>,
    pub gamma: Vec<String>,
    /// Block permutation per generator.
    pub perms: Vec<Vec<usize>>,
}

fn block_label(blocks: &[Block], i: usize) -> String {
    if blocks[i].is_principal {
        format!("B{} (principal)", i + 1)
    } else {
        format!("B{}", i + 1)
    }
}

fn induced(blocks: &[Block], rows: &[usize]) -> Result<Vec<usize>> {
    let mut of_row = vec![0; rows.len()];
    for (b, block) in blocks.iter().enumerate() {
        for &c in &block.characters {
            of_row[c] = b;
        }
    }
    blocks
        .iter()
        .enumerate()
        .map(|(b, block)| {
            let target = of_row[rows[block.characters[0]]];
            if block.characters.iter().any(|&c| of_row[rows[c]] != target) {
                return Err(Error::Internal(format!("block B{} is split by the action", b + 1)));
            }
            if blocks[target].defect != block.defect {
                return Err(Error::Internal("the action changes a block defect".into()));
            }
            Ok(target)
        })
        .collect()
}

/// Block permutation for one generator.
pub fn block_permutation(table: &CharacterTable, classes: &ClassData, blocks: &[Block], gen: &GammaGenerator) -> Result<Vec<usize>> {
    let rows = match gen {
        GammaGenerator::Galois(s) => galois_on_character(table, s)?,
        GammaGenerator::Automorphism(a) => aut_on_characters(table, classes, a)?,
    };
    let perm = induced(blocks, &rows)?;
    if let Some(p) = blocks.iter().position(|b| b.is_principal) {
        if perm[p] != p {
            return Err(Error::Internal("the principal block is moved".into()));
        }
    }
    Ok(perm)
}

pub fn action_on_blocks(
    table: &CharacterTable,
    classes: &ClassData,
    blocks: &[Block],
    generators: &[GammaGenerator],
) -> Result<BlockActionView> {
    Ok(BlockActionView {
        labels: (0..blocks.len()).map(|i| block_label(blocks, i)).collect(),
        defects: blocks.iter().map(|b| b.defect).collect(),
        gamma: generators.iter().map(GammaGenerator::label).collect(),
        perms: generators.iter().map(|g| block_permutation(table, classes, blocks, g)).collect::<Result<_>>()?,
    })
}

/// `galois_on_blocks` for a single Galois element.
pub fn galois_on_blocks(
    table: &CharacterTable,
    classes: &ClassData,
    blocks: &[Block],
    sigma: &crate::actions::GaloisElement,
) -> Result<BlockActionView> {
    action_on_blocks(table, classes, blocks, &[GammaGenerator::Galois(sigma.clone())])
}

/// One generator's orbit types on `IBr(G)` without the defect zero
/// characters and on the weight classes with `Q ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutsideDefectZero {
    pub generator: String,
    pub order: u64,
    pub ibr: BTreeMap<u64, u64>,
    pub weights: BTreeMap<u64, u64>,
    pub agree: bool,
}

fn perm_order(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut o = 1;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            o = lcm(o, len);
        }
    }
    o
}

fn fixed_by_power(p: &[usize], d: u64, of: impl Iterator<Item = usize>) -> u64 {
    of.filter(|&x| {
        let mut y = x;
        for _ in 0..d {
            y = p[y];
        }
        y == x
    })
    .count() as u64
}

/// Compares generator `gen` of three action tables built from the same `Γ`:
/// `ibr` on `p`-regular classes, `characters` on `Irr(G)` and `weights` on
/// weight classes. The `IBr` side is read off by fixed points: the defect
/// zero characters are Brauer characters, so `γ^d` fixes
/// `|Fix_classes(γ^d)| - |Fix_dz(γ^d)|` of the others.
pub fn outside_defect_zero(
    table: &CharacterTable,
    weights: &WeightClassSet,
    ibr: &ActionTable,
    characters: &ActionTable,
    weight_action: &ActionTable,
    gen: usize,
) -> Result<OutsideDefectZero> {
    let dz = table.defect_zero(weights.prime);
    let outer: Vec<usize> =
        weights.classes.iter().filter(|w| weights.radicals[w.radical].radical.order() > 1).map(|w| w.id).collect();
    let (pi, pc, pw) = (&ibr.perms[gen], &characters.perms[gen], &weight_action.perms[gen]);
    if dz.iter().any(|&c| !dz.contains(&pc[c])) {
        return Err(Error::Internal("defect zero characters are not permuted among themselves".into()));
    }
    let n = lcm(lcm(perm_order(pi), perm_order(pc)), perm_order(pw));
    let ibr_total = (pi.len() - dz.len()) as u64;
    let mut fi = BTreeMap::new();
    let mut fw = BTreeMap::new();
    for d in divisors(n) {
        let classes_fixed = fixed_by_power(pi, d, 0..pi.len());
        let dz_fixed = fixed_by_power(pc, d, dz.iter().copied());
        let f = classes_fixed
            .checked_sub(dz_fixed)
            .ok_or_else(|| Error::Internal("more defect zero characters fixed than p-regular classes".into()))?;
        fi.insert(d, f);
        fw.insert(d, fixed_by_power(pw, d, outer.iter().copied()));
    }
    let ibr_types = cyclic_orbit_types(n, ibr_total, &fi)?.summary();
    let weight_types = cyclic_orbit_types(n, outer.len() as u64, &fw)?.summary();
    Ok(OutsideDefectZero {
        generator: ibr.gamma[gen].clone(),
        order: n,
        agree: ibr_types == weight_types,
        ibr: ibr_types,
        weights: weight_types,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{action_on_characters, action_on_weights, ibr_profile, GaloisElement};
    use crate::perm::{Permutation, PermutationGroup};
    use crate::weights::{enumerate_weights, radical_subgroups, ComputedTables};
    use crate::Limits;

    #[test]
    fn a5_bridge() {
        let gens = ["(1,2,3)", "(1,2,3,4,5)"].iter().map(|c| Permutation::parse_cycles(c, 5).unwrap()).collect();
        let g = PermutationGroup::from_generators(5, gens).unwrap();
        let limits = Limits::default();
        let cd = ClassData::compute(&g, &limits).unwrap();
        let table = CharacterTable::compute("A5", &g, &cd, &limits).unwrap();
        let blocks = table.block_partition(2).unwrap();
        let rads = radical_subgroups(&g, 2, &cd, &limits).unwrap();
        let w = enumerate_weights(&rads, 2, &ComputedTables { limits: limits.clone(), global: Some(&table) }, &limits).unwrap();
        let pairs = blocks_of_defect_zero_as_weights(&table, &blocks, &w).unwrap();
        assert_eq!(pairs.len(), 1);
        let sigma = GaloisElement::new(2, 1, cd.exponent()).unwrap();
        let view = galois_on_blocks(&table, &cd, &blocks, &sigma).unwrap();
        assert_eq!(view.perms[0], (0..blocks.len()).collect::<Vec<_>>());
        let gamma = [GammaGenerator::Galois(sigma)];
        let ibr = ibr_profile(&cd, 2, &gamma).unwrap();
        let chars = action_on_characters(&table, &cd, &gamma).unwrap();
        let wa = action_on_weights(&g, &w, &gamma).unwrap();
        let r = outside_defect_zero(&table, &w, &ibr, &chars, &wa, 0).unwrap();
        // the principal block: 3 Brauer characters, two of them swapped
        assert_eq!(r.ibr, BTreeMap::from([(1, 1), (2, 1)]));
        assert!(r.agree);
    }
}
