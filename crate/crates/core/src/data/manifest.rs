//! Corpus manifest: the list of subjects, their partitions, and where each
//! modality's raw files live. Validation is eager — a batch pipeline should
//! fail here, not hours into feature extraction.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Partition {
    Train,
    Dev,
    Test,
}

impl Partition {
    pub fn name(self) -> &'static str {
        match self {
            Partition::Train => "train",
            Partition::Dev => "dev",
            Partition::Test => "test",
        }
    }

    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "train" => Ok(Partition::Train),
            "dev" => Ok(Partition::Dev),
            "test" => Ok(Partition::Test),
            other => Err(Error::validation(format!("unknown partition tag '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SubjectEntry {
    pub id: String,
    pub partition: Partition,
    /// Modality name -> path of the raw input (file or directory).
    pub modalities: BTreeMap<String, PathBuf>,
    /// Gold annotation CSV; required for train/dev, optional for test.
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct CorpusManifest {
    pub subjects: Vec<SubjectEntry>,
}

impl CorpusManifest {
    pub fn subjects_in(&self, partition: Partition) -> impl Iterator<Item = &SubjectEntry> {
        self.subjects.iter().filter(move |s| s.partition == partition)
    }

    pub fn partition_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for s in &self.subjects {
            match s.partition {
                Partition::Train => counts.0 += 1,
                Partition::Dev => counts.1 += 1,
                Partition::Test => counts.2 += 1,
            }
        }
        counts
    }

    /// Sorted union of modality names over all subjects.
    pub fn modality_names(&self) -> Vec<String> {
        let mut names = BTreeSet::new();
        for s in &self.subjects {
            names.extend(s.modalities.keys().cloned());
        }
        names.into_iter().collect()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    subjects: Vec<RawSubject>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubject {
    id: String,
    partition: String,
    modalities: BTreeMap<String, String>,
    #[serde(default)]
    labels: Option<String>,
}

/// Load and fully validate a manifest document.
///
/// Relative paths inside the manifest resolve against the manifest file's
/// own directory. All referenced paths must exist; train and dev subjects
/// must have labels; subject ids must be unique.
pub fn load_manifest(path: &Path) -> Result<CorpusManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let raw: RawManifest =
        serde_json::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));

    let mut seen = BTreeSet::new();
    let mut subjects = Vec::with_capacity(raw.subjects.len());
    for s in raw.subjects {
        if !seen.insert(s.id.clone()) {
            return Err(Error::validation(format!("duplicate subject '{}'", s.id)));
        }
        let partition = Partition::parse(&s.partition)
            .map_err(|e| Error::validation(format!("subject '{}': {e}", s.id)))?;

        let mut modalities = BTreeMap::new();
        for (name, rel) in s.modalities {
            let resolved = resolve(base, &rel);
            if !resolved.exists() {
                return Err(Error::validation(format!(
                    "subject '{}', modality '{}': path {} does not exist",
                    s.id,
                    name,
                    resolved.display()
                )));
            }
            modalities.insert(name, resolved);
        }

        let labels = match s.labels {
            Some(rel) => {
                let resolved = resolve(base, &rel);
                if !resolved.exists() {
                    return Err(Error::validation(format!(
                        "subject '{}': labels path {} does not exist",
                        s.id,
                        resolved.display()
                    )));
                }
                Some(resolved)
            }
            None => None,
        };
        if labels.is_none() && partition != Partition::Test {
            return Err(Error::validation(format!(
                "subject '{}' in partition '{}' is missing a labels file",
                s.id,
                partition.name()
            )));
        }

        subjects.push(SubjectEntry {
            id: s.id,
            partition,
            modalities,
            labels,
        });
    }

    Ok(CorpusManifest { subjects })
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, content).unwrap();
        p
    }

    #[test]
    fn minimal_manifest_loads() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "feat_a.csv", "timestamp,f0\n0.0,1.0\n");
        write(dir.path(), "feat_b.csv", "timestamp,f0\n0.0,1.0\n");
        write(dir.path(), "labels.csv", "timestamp,arousal,valence,liking\n0.0,0,0,0\n");
        let manifest = write(
            dir.path(),
            "manifest.json",
            r#"{"subjects":[{"id":"s1","partition":"train",
                "modalities":{"a":"feat_a.csv","b":"feat_b.csv"},
                "labels":"labels.csv"}]}"#,
        );
        let m = load_manifest(&manifest).unwrap();
        assert_eq!(m.subjects.len(), 1);
        assert_eq!(m.subjects[0].modalities.len(), 2);
        assert_eq!(m.modality_names(), vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn duplicate_subject_rejected() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "l.csv", "x\n");
        let manifest = write(
            dir.path(),
            "manifest.json",
            r#"{"subjects":[
                {"id":"s1","partition":"train","modalities":{},"labels":"l.csv"},
                {"id":"s1","partition":"dev","modalities":{},"labels":"l.csv"}]}"#,
        );
        let err = load_manifest(&manifest).unwrap_err();
        assert!(err.to_string().contains("duplicate subject"), "{err}");
    }

    #[test]
    fn unknown_partition_rejected() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "l.csv", "x\n");
        let manifest = write(
            dir.path(),
            "manifest.json",
            r#"{"subjects":[{"id":"s1","partition":"validation","modalities":{},"labels":"l.csv"}]}"#,
        );
        let err = load_manifest(&manifest).unwrap_err();
        assert!(err.to_string().contains("unknown partition"), "{err}");
        assert!(err.to_string().contains("s1"), "{err}");
    }

    #[test]
    fn train_subject_requires_labels() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = write(
            dir.path(),
            "manifest.json",
            r#"{"subjects":[{"id":"s1","partition":"train","modalities":{}}]}"#,
        );
        let err = load_manifest(&manifest).unwrap_err();
        assert!(err.to_string().contains("missing a labels file"), "{err}");
    }

    #[test]
    fn test_subject_may_omit_labels() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = write(
            dir.path(),
            "manifest.json",
            r#"{"subjects":[{"id":"s1","partition":"test","modalities":{}}]}"#,
        );
        assert!(load_manifest(&manifest).is_ok());
    }

    #[test]
    fn missing_referenced_path_rejected() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "l.csv", "x\n");
        let manifest = write(
            dir.path(),
            "manifest.json",
            r#"{"subjects":[{"id":"s1","partition":"train",
                "modalities":{"a":"nope.csv"},"labels":"l.csv"}]}"#,
        );
        let err = load_manifest(&manifest).unwrap_err();
        assert!(err.to_string().contains("does not exist"), "{err}");
    }
}
