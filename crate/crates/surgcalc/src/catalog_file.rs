//! JSON form of the block catalog. Words are stored in the presentation DSL,
//! using the generator names of the presentation they live in.

use std::path::Path;

use serde::{Deserialize, Serialize};
use surgcalc_core::group::{parse_word, ParseError};
use surgcalc_core::surgery::catalog::{Class, Necklace, Section};
use surgcalc_core::surgery::{
    Catalog, CatalogEntry, EmbeddedSurfaceData, FibrationData, Kodaira, LagrangianTorusData, ManifoldBlock,
    Minimality, SurgeryError,
};
use surgcalc_core::{GroupPresentation, Word};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CatalogFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed catalog JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported catalog version {0}")]
    Version(u32),
    #[error("{context}: {source}")]
    Word { context: String, source: ParseError },
    #[error("{context}: {source}")]
    Surgery { context: String, source: SurgeryError },
    #[error("{context}: unknown value {value:?}")]
    Value { context: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl PresentationJson {
    pub fn of(p: &GroupPresentation) -> Self {
        PresentationJson {
            generators: p.generators().to_vec(),
            relators: p.relators().iter().map(|r| p.format_word(r)).collect(),
        }
    }

    pub fn word(&self, text: &str, context: &str) -> Result<Word, CatalogFileError> {
        parse_word(text, &self.generators).map_err(|source| CatalogFileError::Word {
            context: context.into(),
            source,
        })
    }

    pub fn to_presentation(&self, context: &str) -> Result<GroupPresentation, CatalogFileError> {
        let rels = self
            .relators
            .iter()
            .map(|r| self.word(r, context))
            .collect::<Result<Vec<_>, _>>()?;
        GroupPresentation::new(self.generators.clone(), rels).map_err(|e| CatalogFileError::Surgery {
            context: context.into(),
            source: e.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MinimalJson {
    Yes { reason: String },
    No,
    Unknown,
}

impl MinimalJson {
    pub fn of(m: &Minimality) -> Self {
        match m {
            Minimality::Yes(r) => MinimalJson::Yes { reason: r.clone() },
            Minimality::No => MinimalJson::No,
            Minimality::Unknown => MinimalJson::Unknown,
        }
    }

    fn to_core(&self) -> Minimality {
        match self {
            MinimalJson::Yes { reason } => Minimality::Yes(reason.clone()),
            MinimalJson::No => Minimality::No,
            MinimalJson::Unknown => Minimality::Unknown,
        }
    }
}

fn kodaira_from_str(s: &str, context: &str) -> Result<Kodaira, CatalogFileError> {
    Ok(match s {
        "-inf" => Kodaira::NegInfinity,
        "0" => Kodaira::Zero,
        "1" => Kodaira::One,
        "2" => Kodaira::Two,
        "unknown" => Kodaira::Unknown,
        _ => {
            return Err(CatalogFileError::Value {
                context: context.into(),
                value: s.into(),
            })
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub label: String,
    pub e: i64,
    pub sigma: i64,
    pub pi1: PresentationJson,
    pub minimal: MinimalJson,
    pub kodaira: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub name: String,
    pub genus: usize,
    pub self_int: i64,
    pub complement: PresentationJson,
    pub images: Vec<String>,
    pub meridian: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusJson {
    pub name: String,
    pub complement: PresentationJson,
    pub lambda: String,
    pub meridian: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceJson {
    pub components: usize,
    pub classes: Option<Vec<Class>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionJson {
    pub square: i64,
    pub class: Option<Class>,
    pub meets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationJson {
    pub name: String,
    pub n: u32,
    pub necklaces: Vec<NecklaceJson>,
    pub sections: Vec<SectionJson>,
    pub singular_fibers: Vec<u32>,
    pub class_a_fishtails: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub block: BlockJson,
    pub surfaces: Vec<SurfaceJson>,
    pub tori: Vec<TorusJson>,
    pub fibrations: Vec<FibrationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogJson {
    pub version: u32,
    pub entries: Vec<EntryJson>,
}

impl CatalogJson {
    pub fn of(c: &Catalog) -> Self {
        CatalogJson {
            version: FORMAT_VERSION,
            entries: c.entries.iter().map(entry_json).collect(),
        }
    }

    pub fn to_catalog(&self) -> Result<Catalog, CatalogFileError> {
        if self.version != FORMAT_VERSION {
            return Err(CatalogFileError::Version(self.version));
        }
        let entries = self.entries.iter().map(entry_core).collect::<Result<Vec<_>, _>>()?;
        Ok(Catalog { entries })
    }
}

fn entry_json(e: &CatalogEntry) -> EntryJson {
    let b = &e.block;
    EntryJson {
        block: BlockJson {
            label: b.label.clone(),
            e: b.e,
            sigma: b.sigma,
            pi1: PresentationJson::of(&b.pi1),
            minimal: MinimalJson::of(&b.minimal),
            kodaira: b.kodaira.to_string(),
        },
        surfaces: e
            .surfaces
            .iter()
            .map(|(name, s)| SurfaceJson {
                name: name.clone(),
                genus: s.genus,
                self_int: s.self_int,
                complement: PresentationJson::of(&s.complement),
                images: s.images.iter().map(|w| s.complement.format_word(w)).collect(),
                meridian: s.complement.format_word(&s.meridian),
            })
            .collect(),
        tori: e
            .tori
            .iter()
            .map(|(name, t)| TorusJson {
                name: name.clone(),
                complement: PresentationJson::of(&t.complement),
                lambda: t.complement.format_word(&t.lambda),
                meridian: t.complement.format_word(&t.meridian),
            })
            .collect(),
        fibrations: e
            .fibrations
            .iter()
            .map(|f| FibrationJson {
                name: f.name.clone(),
                n: f.n,
                necklaces: f
                    .necklaces
                    .iter()
                    .map(|n| NecklaceJson {
                        components: n.components,
                        classes: n.classes.clone(),
                    })
                    .collect(),
                sections: f
                    .sections
                    .iter()
                    .map(|s| SectionJson {
                        square: s.square,
                        class: s.class,
                        meets: s.meets.clone(),
                    })
                    .collect(),
                singular_fibers: f.singular_fibers.clone(),
                class_a_fishtails: f.class_a_fishtails,
            })
            .collect(),
    }
}

fn entry_core(e: &EntryJson) -> Result<CatalogEntry, CatalogFileError> {
    let label = &e.block.label;
    let surgery = |context: String| move |source| CatalogFileError::Surgery { context, source };
    let block = ManifoldBlock::new(
        label.clone(),
        e.block.e,
        e.block.sigma,
        e.block.pi1.to_presentation(&format!("{label}: pi1"))?,
    )
    .with_minimal(e.block.minimal.to_core())
    .with_kodaira(kodaira_from_str(&e.block.kodaira, &format!("{label}: kodaira"))?);
    let mut surfaces = Vec::new();
    for s in &e.surfaces {
        let ctx = format!("{label}: surface {}", s.name);
        let complement = s.complement.to_presentation(&ctx)?;
        let images = s
            .images
            .iter()
            .map(|w| s.complement.word(w, &ctx))
            .collect::<Result<Vec<_>, _>>()?;
        let meridian = s.complement.word(&s.meridian, &ctx)?;
        let data = EmbeddedSurfaceData::new(s.genus, s.self_int, complement, images, meridian)
            .map_err(surgery(ctx))?;
        surfaces.push((s.name.clone(), data));
    }
    let mut tori = Vec::new();
    for t in &e.tori {
        let ctx = format!("{label}: torus {}", t.name);
        let complement = t.complement.to_presentation(&ctx)?;
        let lambda = t.complement.word(&t.lambda, &ctx)?;
        let meridian = t.complement.word(&t.meridian, &ctx)?;
        let data = LagrangianTorusData::new(complement, lambda, meridian).map_err(surgery(ctx))?;
        tori.push((t.name.clone(), data));
    }
    let fibrations = e
        .fibrations
        .iter()
        .map(|f| FibrationData {
            name: f.name.clone(),
            n: f.n,
            necklaces: f
                .necklaces
                .iter()
                .map(|n| Necklace {
                    components: n.components,
                    classes: n.classes.clone(),
                })
                .collect(),
            sections: f
                .sections
                .iter()
                .map(|s| Section {
                    square: s.square,
                    class: s.class,
                    meets: s.meets.clone(),
                })
                .collect(),
            singular_fibers: f.singular_fibers.clone(),
            class_a_fishtails: f.class_a_fishtails,
        })
        .collect();
    Ok(CatalogEntry {
        block,
        surfaces,
        tori,
        fibrations,
    })
}

/// Pretty JSON with a trailing newline.
pub fn dump_catalog(c: &Catalog) -> String {
    let mut s = serde_json::to_string_pretty(&CatalogJson::of(c)).expect("catalog serializes");
    s.push('\n');
    s
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogFileError> {
    serde_json::from_str::<CatalogJson>(text)?.to_catalog()
}

pub fn load_catalog(path: &Path) -> Result<Catalog, CatalogFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_round_trips() {
        let c = Catalog::builtin();
        let text = dump_catalog(&c);
        let back = parse_catalog(&text).unwrap();
        assert_eq!(dump_catalog(&back), text);
        assert_eq!(back.entries.len(), c.entries.len());
        for (a, b) in c.entries.iter().zip(&back.entries) {
            assert_eq!(a.block.label, b.block.label);
            assert!(a.block.pi1.same_up_to_relator_form(&b.block.pi1));
            assert_eq!(a.fibrations, b.fibrations);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_catalog("{"), Err(CatalogFileError::Json(_))));
        assert!(matches!(
            parse_catalog(r#"{"version": 7, "entries": []}"#),
            Err(CatalogFileError::Version(7))
        ));
        let mut j = CatalogJson::of(&Catalog::builtin());
        j.entries[0].block.kodaira = "3".into();
        assert!(matches!(j.to_catalog(), Err(CatalogFileError::Value { .. })));
        let mut j = CatalogJson::of(&Catalog::builtin());
        j.entries[0].surfaces[0].images.pop();
        assert!(matches!(j.to_catalog(), Err(CatalogFileError::Surgery { .. })));
    }
}
