//! Raw structure constants: counts of stable subspaces by (sub, quotient) class.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::kronrep::{
    aut_order, classify, enumerate_classes, for_each_stable_pair, representative, sub_and_quotient, IsoClass, KronRep,
};

use super::convention::Grade;
use super::HallError;

/// `(sub class, quotient class, number of subspaces)`.
pub type Section = Vec<(IsoClass, IsoClass, u64)>;

/// Write-once caches shared by every convention at a fixed `q`.
///
/// The counts do not depend on the twist, so one store serves all
/// calibration candidates.
#[derive(Default)]
pub struct StructureStore {
    q: u32,
    classes: RwLock<HashMap<Grade, Arc<Vec<IsoClass>>>>,
    sections: RwLock<HashMap<(IsoClass, Grade), Arc<Section>>>,
    aut: RwLock<HashMap<IsoClass, BigUint>>,
}

/// Counts the stable subspaces of dimension `w` in the canonical model of
/// `z`, grouped by the classes of sub and quotient.
pub fn compute_section(z: &IsoClass, w: Grade) -> Result<Section, HallError> {
    let x = representative(z);
    let mut memo: HashMap<KronRep, IsoClass> = HashMap::new();
    let mut counts: HashMap<(IsoClass, IsoClass), u64> = HashMap::new();
    let mut err = None;
    for_each_stable_pair(&x, w, |w0, w1| {
        if err.is_some() {
            return;
        }
        let (s, t) = sub_and_quotient(&x, w0, w1);
        let mut look = |r: KronRep| -> Option<IsoClass> {
            if let Some(c) = memo.get(&r) {
                return Some(c.clone());
            }
            match classify(&r) {
                Ok(c) => {
                    memo.insert(r, c.clone());
                    Some(c)
                }
                Err(e) => {
                    err = Some(e);
                    None
                }
            }
        };
        if let (Some(cs), Some(ct)) = (look(s), look(t)) {
            *counts.entry((cs, ct)).or_insert(0) += 1;
        }
    })?;
    if let Some(e) = err {
        return Err(e.into());
    }
    let mut out: Section = counts.into_iter().map(|((s, t), n)| (s, t, n)).collect();
    out.sort();
    Ok(out)
}

impl StructureStore {
    pub fn new(q: u32) -> Self {
        StructureStore {
            q,
            ..Default::default()
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn classes(&self, d: Grade) -> Result<Arc<Vec<IsoClass>>, HallError> {
        if let Some(c) = self.classes.read().unwrap().get(&d) {
            return Ok(c.clone());
        }
        let list = Arc::new(enumerate_classes(d, self.q)?);
        Ok(self.classes.write().unwrap().entry(d).or_insert(list).clone())
    }

    pub fn aut(&self, c: &IsoClass) -> BigUint {
        if let Some(a) = self.aut.read().unwrap().get(c) {
            return a.clone();
        }
        let a = aut_order(c);
        self.aut.write().unwrap().insert(c.clone(), a.clone());
        a
    }

    pub fn section(&self, z: &IsoClass, w: Grade) -> Result<Arc<Section>, HallError> {
        let key = (z.clone(), w);
        if let Some(s) = self.sections.read().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = Arc::new(compute_section(z, w)?);
        Ok(self.sections.write().unwrap().entry(key).or_insert(s).clone())
    }

    /// Fills the sections of every class of grade `d` at sub-grade `w`, in
    /// parallel.
    pub fn prepare(&self, d: Grade, w: Grade) -> Result<(), HallError> {
        let classes = self.classes(d)?;
        let missing: Vec<&IsoClass> = {
            let map = self.sections.read().unwrap();
            classes
                .iter()
                .filter(|z| !map.contains_key(&((*z).clone(), w)))
                .collect()
        };
        let computed: Vec<(IsoClass, Section)> = missing
            .par_iter()
            .map(|z| compute_section(z, w).map(|s| ((*z).clone(), s)))
            .collect::<Result<_, _>>()?;
        let mut map = self.sections.write().unwrap();
        for (z, s) in computed {
            map.entry((z, w)).or_insert_with(|| Arc::new(s));
        }
        Ok(())
    }

    fn file_name(&self, d: Grade, tag: &str) -> String {
        format!("sc-q{}-d{}x{}-{}.json", self.q, d.0, d.1, tag)
    }

    /// Writes one JSON file per grade of the cached sections.
    pub fn save(&self, dir: &Path, tag: &str) -> Result<Vec<PathBuf>, HallError> {
        fs::create_dir_all(dir)?;
        let map = self.sections.read().unwrap();
        let mut by_grade: std::collections::BTreeMap<Grade, Vec<(&IsoClass, &Grade, &Section)>> = Default::default();
        for ((z, w), s) in map.iter() {
            by_grade.entry(z.dims()).or_default().push((z, w, s));
        }
        let mut written = Vec::new();
        for (d, mut entries) in by_grade {
            entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
            let rows: Vec<Value> = entries
                .iter()
                .map(|(z, w, s)| {
                    let terms: Vec<Value> = s.iter().map(|(a, b, n)| json!([a.to_json(), b.to_json(), n])).collect();
                    json!({"class": z.to_json(), "sub_dims": [w.0, w.1], "terms": terms})
                })
                .collect();
            let path = dir.join(self.file_name(d, tag));
            let body = json!({"q": self.q, "dims": [d.0, d.1], "convention": tag, "entries": rows});
            fs::write(&path, serde_json::to_string_pretty(&body)?)?;
            written.push(path);
        }
        Ok(written)
    }

    /// Loads every cache file for this `q` and tag found in `dir`.
    pub fn load(&self, dir: &Path, tag: &str) -> Result<usize, HallError> {
        let Ok(read) = fs::read_dir(dir) else {
            return Ok(0);
        };
        let prefix = format!("sc-q{}-", self.q);
        let suffix = format!("-{tag}.json");
        let mut loaded = 0;
        for entry in read {
            let path = entry?.path();
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
            if !(name.starts_with(&prefix) && name.ends_with(&suffix)) {
                continue;
            }
            let v: Value = serde_json::from_str(&fs::read_to_string(&path)?)?;
            let bad = || HallError::Cache(format!("malformed cache file {}", path.display()));
            let mut map = self.sections.write().unwrap();
            for row in v["entries"].as_array().ok_or_else(bad)? {
                let z = IsoClass::from_json(&row["class"])?;
                let w: (usize, usize) = serde_json::from_value(row["sub_dims"].clone())?;
                let mut sec = Section::new();
                for t in row["terms"].as_array().ok_or_else(bad)? {
                    let a = IsoClass::from_json(&t[0])?;
                    let b = IsoClass::from_json(&t[1])?;
                    let n = t[2].as_u64().ok_or_else(bad)?;
                    sec.push((a, b, n));
                }
                map.insert((z, w), Arc::new(sec));
                loaded += 1;
            }
        }
        Ok(loaded)
    }
}
