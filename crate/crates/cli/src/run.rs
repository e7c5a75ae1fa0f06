//! Executes a [`JobSpec`] and assembles the [`Report`].

use std::collections::BTreeMap;
use std::time::Instant;

use sha2::{Digest, Sha256};
use weightforge::actions::{
    action_on_characters, action_on_weights, aut_on_classes, check_galois_compatibility, galois_class_map,
    ibr_profile, ActionTable, AutomorphismFile, GaloisElement, GammaGenerator, Guarantee,
};
use weightforge::bridge::{action_on_blocks, blocks_of_defect_zero_as_weights, outside_defect_zero};
use weightforge::chartab::CharacterTable;
use weightforge::equivcheck::{build_bijection, gamma_set_isomorphic, Verdict};
use weightforge::numtheory::factorize;
use weightforge::perm::{ClassData, GroupFile, PermutationGroup};
use weightforge::weights::{awc_count_check, enumerate_weights, radical_subgroups, ComputedTables};
use weightforge::{Error, Result};

use crate::atlas::{Atlas, AtlasEntry};
use crate::job::{AutSource, Check, GroupSource, JobSpec};
use crate::report::*;

struct Clock {
    start: Instant,
    last: Instant,
    steps: Vec<(String, f64)>,
}

impl Clock {
    fn new() -> Self {
        let now = Instant::now();
        Clock { start: now, last: now, steps: Vec::new() }
    }

    fn lap(&mut self, step: &str) {
        let now = Instant::now();
        self.steps.push((step.to_string(), ms(now - self.last)));
        self.last = now;
    }

    fn finish(self) -> Timing {
        Timing { total_ms: ms(self.start.elapsed()), steps: self.steps }
    }
}

fn ms(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// ATLAS-style labels: element order followed by a letter per class of
/// that order, in canonical class order.
pub fn class_labels(classes: &ClassData) -> Vec<String> {
    let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
    classes
        .classes()
        .iter()
        .map(|c| {
            let k = seen.entry(c.element_order).or_insert(0);
            let label = format!("{}{}", c.element_order, letters(*k));
            *k += 1;
            label
        })
        .collect()
}

fn letters(mut k: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

fn factorization(n: u64) -> String {
    factorize(n)
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default()
}

fn names(labels: &[String], idx: &[Vec<usize>]) -> Vec<Vec<String>> {
    idx.iter().map(|o| o.iter().map(|&i| labels[i].clone()).collect()).collect()
}

/// Runs `job` against the atlas selected by the environment.
pub fn run(job: &JobSpec) -> Result<Report> {
    run_with_atlas(job, &Atlas::from_env()?)
}

pub fn run_with_atlas(job: &JobSpec, atlas: &Atlas) -> Result<Report> {
    job.validate()?;
    let mut clock = Clock::new();
    let checks = job.closed_checks();
    let limits = &job.limits;
    let mut inputs: Vec<(&str, String)> = Vec::new();

    let (entry, group_text): (Option<&AtlasEntry>, String) = match &job.group {
        GroupSource::Atlas(name) => {
            let e = atlas.entry(name)?;
            (Some(e), atlas.read(&e.group)?)
        }
        GroupSource::File(path) => (None, read_file(path)?),
    };
    inputs.push(("group", group_text.clone()));
    let gf = GroupFile::parse(&group_text)?;
    let name = entry.map(|e| e.name.clone()).unwrap_or_else(|| gf.name.clone());
    let group = gf.build()?;
    if let Some(expected) = entry.and_then(|e| e.order) {
        if group.order() != expected {
            return Err(Error::Validation {
                relation: "group order".into(),
                detail: format!("{name} generators give order {}, expected {expected}", group.order()),
            });
        }
    }
    let cd = ClassData::compute(&group, limits)?;
    let labels = class_labels(&cd);
    clock.lap("classes");

    // automorphism files are read up front so that they enter the digest
    let mut aut_texts = Vec::new();
    for a in &job.automorphisms {
        let text = match a {
            AutSource::Atlas => {
                let e = entry.ok_or_else(|| Error::Input("--aut atlas needs an atlas group".into()))?;
                let rel = e.automorphisms.as_ref().ok_or_else(|| Error::Input(format!("atlas entry {name} has no automorphisms")))?;
                atlas.read(rel)?
            }
            AutSource::File(path) => read_file(path)?,
        };
        inputs.push(("automorphisms", text.clone()));
        aut_texts.push(text);
    }
    let fixture: Option<(String, &str)> = match (&job.table_file, entry.and_then(|e| e.table.as_ref())) {
        (Some(path), _) => Some((read_file(path)?, "file")),
        (None, Some(rel)) if checks.contains(&Check::Table) => Some((atlas.read(rel)?, "fixture")),
        _ => None,
    };
    if let Some((text, _)) = &fixture {
        inputs.push(("table", text.clone()));
    }

    let mut gens: Vec<GammaGenerator> = Vec::new();
    let mut aut_names = Vec::new();
    if let Some(p) = job.prime {
        gens.push(GammaGenerator::Galois(GaloisElement::new(p, job.galois_t, cd.exponent())?));
    }
    for text in &aut_texts {
        for spec in AutomorphismFile::parse(text)?.validate(&group)? {
            aut_names.push(spec.name.clone());
            gens.push(GammaGenerator::Automorphism(spec));
        }
    }

    let echo = JobEcho {
        group: name.clone(),
        prime: job.prime,
        checks: checks.iter().map(|c| serde_json::to_value(c).unwrap().as_str().unwrap().to_string()).collect(),
        galois_t: job.galois_t,
        automorphisms: aut_names,
        max_order: limits.max_order,
        max_classes: limits.max_classes,
    };
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_vec(&echo).expect("job echo serializes"));
    hasher.update([u8::from(job.compute_table())]);
    for (kind, text) in &inputs {
        hasher.update(kind.as_bytes());
        hasher.update((text.len() as u64).to_le_bytes());
        hasher.update(text.as_bytes());
    }
    let input_digest = format!("sha256:{:x}", hasher.finalize());

    let mut verdicts = BTreeMap::new();
    let group_section = GroupSection {
        name: name.clone(),
        degree: group.degree(),
        order: group.order(),
        order_factorization: factorization(group.order()),
        classes: cd
            .classes()
            .iter()
            .zip(&labels)
            .map(|(c, l)| ClassRow { label: l.clone(), order: c.element_order, size: c.size, centralizer_order: c.centralizer_order })
            .collect(),
        p_regular_classes: job.prime.map(|p| cd.p_regular(p).iter().map(|&i| labels[i].clone()).collect()),
    };

    let mut report = Report {
        tool: ToolInfo { name: "weightforge".into(), version: env!("CARGO_PKG_VERSION").into() },
        input_digest,
        job: echo,
        group: group_section,
        table: None,
        blocks: None,
        weights: None,
        awc: None,
        orbits: None,
        gaw: None,
        verdicts: BTreeMap::new(),
        timing: Timing::default(),
    };

    if !checks.contains(&Check::Table) {
        report.timing = clock.finish();
        return Ok(report);
    }

    let (mut table, source, fixture_agrees) = load_table(job, &name, &group, &cd, fixture)?;
    if let Some(agrees) = fixture_agrees {
        verdicts.insert("table".to_string(), if agrees { "FIXTURE_AGREES" } else { "FIXTURE_MISMATCH" }.to_string());
    }
    if let Some(names) = entry.and_then(|e| e.character_names.clone()) {
        table.set_names(names)?;
    }
    if let Some(path) = &job.emit_table {
        std::fs::write(path, table.to_file().to_json()).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    for g in &gens {
        if let GammaGenerator::Galois(sigma) = g {
            check_galois_compatibility(&table, &cd, sigma)?;
        }
    }
    report.table = Some(TableSection {
        source: source.to_string(),
        names: table.names().to_vec(),
        degrees: table.degrees(),
        values: table.values().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        fixture_agrees,
    });
    clock.lap("table");

    let weights = match job.prime {
        Some(p) if checks.contains(&Check::Weights) => {
            let rads = radical_subgroups(&group, p, &cd, limits)?;
            let provider = ComputedTables { limits: limits.clone(), global: Some(&table) };
            let w = enumerate_weights(&rads, p, &provider, limits)?;
            report.weights = Some(WeightsSection {
                summary: w.report(),
                labels: w.classes.iter().map(|c| c.label.clone()).collect(),
            });
            clock.lap("weights");
            Some(w)
        }
        _ => None,
    };

    if let (Some(p), true) = (job.prime, checks.contains(&Check::Blocks)) {
        let blocks = table.block_partition(p)?;
        let action = action_on_blocks(&table, &cd, &blocks, &gens)?;
        let pairs = match &weights {
            Some(w) => Some(
                blocks_of_defect_zero_as_weights(&table, &blocks, w)?
                    .into_iter()
                    .map(|(b, wi)| (action.labels[b].clone(), w.classes[wi].label.clone()))
                    .collect(),
            ),
            None => None,
        };
        report.blocks = Some(BlocksSection {
            blocks: blocks
                .iter()
                .zip(&action.labels)
                .map(|(b, l)| BlockRow {
                    label: l.clone(),
                    defect: b.defect,
                    principal: b.is_principal,
                    characters: b.characters.iter().map(|&c| table.names()[c].clone()).collect(),
                })
                .collect(),
            defect_zero_weights: pairs,
            action,
        });
        clock.lap("blocks");
    }

    if let Some(w) = &weights {
        if checks.contains(&Check::Awc) {
            let awc = awc_count_check(&cd, w);
            verdicts.insert("awc".to_string(), if awc.equal { "EQUAL" } else { "UNEQUAL" }.to_string());
            report.awc = Some(awc);
        }
    }

    let characters = if checks.contains(&Check::Orbits) {
        let chars = action_on_characters(&table, &cd, &gens)?;
        let class_perms = gens
            .iter()
            .map(|g| match g {
                GammaGenerator::Galois(s) => Ok(galois_class_map(&cd, s)),
                GammaGenerator::Automorphism(a) => aut_on_classes(&cd, a),
            })
            .collect::<Result<Vec<_>>>()?;
        let on_classes = ActionTable {
            gamma: chars.gamma.clone(),
            labels: labels.clone(),
            perms: class_perms,
            guarantee: Guarantee::Explicit,
            power_relations: Vec::new(),
        };
        on_classes.validate()?;
        report.orbits = Some(OrbitsSection {
            gamma: chars.gamma.clone(),
            characters: names(&chars.labels, &chars.orbits()),
            classes: names(&labels, &on_classes.orbits()),
        });
        clock.lap("orbits");
        Some(chars)
    } else {
        None
    };

    if let (Some(p), Some(w), Some(chars), true) = (job.prime, &weights, &characters, checks.contains(&Check::Gaw)) {
        let wa = action_on_weights(&group, w, &gens)?;
        let ibr = ibr_profile(&cd, p, &gens)?;
        let iso = gamma_set_isomorphic(&wa, &ibr)?;
        verdicts.insert("gaw".to_string(), verdict_name(iso.verdict));
        let certificate =
            if iso.verdict == Verdict::Verified { Some(build_bijection(&wa, &ibr, iso.verdict, &name, p)?) } else { None };
        let outside =
            (0..gens.len()).map(|i| outside_defect_zero(&table, w, &ibr, chars, &wa, i)).collect::<Result<Vec<_>>>()?;
        let agree = outside.iter().all(|o| o.agree);
        verdicts.insert("gaw_outside_defect_zero".to_string(), if agree { "AGREE" } else { "DISAGREE" }.to_string());
        report.gaw = Some(GawSection { weights: wa, ibr, isomorphism: iso, certificate, outside_defect_zero: outside });
        clock.lap("gaw");
    }

    report.verdicts = verdicts;
    report.timing = clock.finish();
    Ok(report)
}

type LoadedTable = (CharacterTable, &'static str, Option<bool>);

fn load_table(
    job: &JobSpec,
    name: &str,
    group: &PermutationGroup,
    cd: &ClassData,
    fixture: Option<(String, &'static str)>,
) -> Result<LoadedTable> {
    match fixture {
        Some((text, source)) if !job.compute_table() => Ok((CharacterTable::load(&text, cd)?, source, None)),
        fixture => {
            let mut computed = CharacterTable::compute(name, group, cd, &job.limits)?;
            computed.verify()?;
            let mut agrees = None;
            if let Some((text, _)) = fixture {
                let reference = CharacterTable::load(&text, cd)?;
                let same = reference.values() == computed.values();
                if same {
                    computed.set_names(reference.names().to_vec())?;
                }
                agrees = Some(same);
            }
            Ok((computed, "computed", agrees))
        }
    }
}
