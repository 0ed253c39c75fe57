//! The stitch dictionary.
//!
//! Each entry says how many live stitches a stitch consumes from the working
//! needle, how many new stitches it creates, how its edges are scaled, and
//! which complexity class it belongs to. The bundled defaults are stored in
//! the same line format that override files use, so adding a stitch never
//! needs a code change.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Bundled dictionary, one stitch per line:
/// `name consumes produces yarn_factor loop_factor class [permutation]`.
pub const DEFAULT_DICTIONARY: &str = "\
# name        consumes produces yarn loop class [permutation]
co            0 1 1.0 1.0 0
yo            0 1 1.0 1.0 0
m1L           0 1 1.0 1.0 0
m1R           0 1 1.0 1.0 0
k             1 1 1.0 1.0 0
p             1 1 1.0 1.0 0
kfb           1 2 1.0 1.0 0
k2tog         2 1 1.0 1.0 0
ssk           2 1 1.0 1.0 0
p2tog         2 1 1.0 1.0 0
sl1-k2-psso   3 1 1.0 1.0 0
drop          1 0 1.0 1.0 0
c1b           2 2 1.0 1.0 1 1,0
c2b           4 4 1.0 1.0 1 2,3,0,1
";

/// Knitting complexity class: 0 planar, 1 oriented edge crossings
/// (cables, brioche, ...), 2 oriented nodes (double knitting).
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(into = "u8", try_from = "u8")]
pub enum ComplexityClass {
    #[default]
    Planar,
    OrientedEdges,
    OrientedNodes,
}

impl From<ComplexityClass> for u8 {
    fn from(class: ComplexityClass) -> u8 {
        match class {
            ComplexityClass::Planar => 0,
            ComplexityClass::OrientedEdges => 1,
            ComplexityClass::OrientedNodes => 2,
        }
    }
}

impl TryFrom<u8> for ComplexityClass {
    type Error = String;

    fn try_from(value: u8) -> std::result::Result<Self, String> {
        match value {
            0 => Ok(ComplexityClass::Planar),
            1 => Ok(ComplexityClass::OrientedEdges),
            2 => Ok(ComplexityClass::OrientedNodes),
            other => Err(format!("complexity class must be 0, 1 or 2, got {other}")),
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StitchDef {
    pub name: String,
    /// Live stitches popped from the working needle.
    pub consumes: usize,
    /// New stitches created.
    pub produces: usize,
    pub yarn_length_factor: f64,
    pub loop_length_factor: f64,
    pub complexity_class: ComplexityClass,
    /// Cable reordering: produced stitch `i` is pulled through popped stitch
    /// `permutation[i]`. `None` means the ordinary attachment rules.
    pub permutation: Option<Vec<usize>>,
}

impl StitchDef {
    /// Indices (in pop order) of the consumed stitches that the `produced`-th
    /// new stitch is pulled through.
    ///
    /// Decreases attach every popped stitch to the first new stitch; single
    /// stitch increases like kfb attach every new stitch to the one popped
    /// stitch.
    pub fn loop_sources(&self, produced: usize) -> Vec<usize> {
        if self.consumes == 0 {
            return Vec::new();
        }
        if let Some(perm) = &self.permutation {
            return vec![perm[produced]];
        }
        if self.consumes == 1 {
            return vec![0];
        }
        if produced == 0 {
            (0..self.consumes).collect()
        } else {
            Vec::new()
        }
    }

    fn parse_line(line: &str, line_no: usize) -> Result<Option<StitchDef>> {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            return Ok(None);
        }
        let err = |message: String| Error::Dictionary {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 6 && fields.len() != 7 {
            return Err(err(format!(
                "expected 6 or 7 fields, found {}",
                fields.len()
            )));
        }
        fn num<T: FromStr>(field: &str, what: &str) -> std::result::Result<T, String> {
            field
                .parse()
                .map_err(|_| format!("{what} `{field}` is not a valid number"))
        }
        let name = fields[0].to_string();
        let consumes: usize = num(fields[1], "consumes").map_err(err)?;
        let produces: usize = num(fields[2], "produces").map_err(err)?;
        let yarn_length_factor: f64 = num(fields[3], "yarn factor").map_err(err)?;
        let loop_length_factor: f64 = num(fields[4], "loop factor").map_err(err)?;
        let class: u8 = num(fields[5], "class").map_err(err)?;
        let complexity_class = ComplexityClass::try_from(class).map_err(err)?;
        let permutation = match fields.get(6) {
            Some(spec) => Some(
                spec.split(',')
                    .map(|p| num::<usize>(p, "permutation entry"))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(err)?,
            ),
            None => None,
        };
        let def = StitchDef {
            name,
            consumes,
            produces,
            yarn_length_factor,
            loop_length_factor,
            complexity_class,
            permutation,
        };
        def.validate().map_err(err)?;
        Ok(Some(def))
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.consumes == 0 && self.produces == 0 {
            return Err(format!(
                "`{}` neither consumes nor produces stitches",
                self.name
            ));
        }
        if !(self.yarn_length_factor.is_finite() && self.yarn_length_factor > 0.0) {
            return Err(format!("`{}` needs a positive yarn factor", self.name));
        }
        if !(self.loop_length_factor.is_finite() && self.loop_length_factor > 0.0) {
            return Err(format!("`{}` needs a positive loop factor", self.name));
        }
        if let Some(perm) = &self.permutation {
            if perm.len() != self.consumes || self.consumes != self.produces {
                return Err(format!(
                    "`{}`: a permutation needs consumes == produces == its length",
                    self.name
                ));
            }
            let mut seen = vec![false; perm.len()];
            for &p in perm {
                if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                    return Err(format!("`{}`: {perm:?} is not a permutation", self.name));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for StitchDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {}",
            self.name,
            self.consumes,
            self.produces,
            self.yarn_length_factor,
            self.loop_length_factor,
            self.complexity_class
        )?;
        if let Some(perm) = &self.permutation {
            let joined: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
            write!(f, " {}", joined.join(","))?;
        }
        Ok(())
    }
}

/// Immutable after construction; share freely.
#[derive(Debug, Clone)]
pub struct StitchDictionary {
    defs: Vec<StitchDef>,
    index: HashMap<String, usize>,
}

impl Default for StitchDictionary {
    fn default() -> Self {
        Self::parse(DEFAULT_DICTIONARY).expect("bundled stitch dictionary is valid")
    }
}

impl StitchDictionary {
    /// Parses a complete dictionary. Names must be unique.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dict = StitchDictionary {
            defs: Vec::new(),
            index: HashMap::new(),
        };
        for (i, line) in text.lines().enumerate() {
            if let Some(def) = StitchDef::parse_line(line, i + 1)? {
                if dict.index.contains_key(&def.name) {
                    return Err(Error::Dictionary {
                        line: i + 1,
                        message: format!("duplicate stitch `{}`", def.name),
                    });
                }
                dict.insert(def);
            }
        }
        Ok(dict)
    }

    /// Defaults plus the entries of an override file; an override replaces
    /// the bundled stitch of the same name.
    pub fn with_overrides(text: &str) -> Result<Self> {
        let overrides = Self::parse(text)?;
        let mut dict = Self::default();
        for def in overrides.defs {
            dict.insert(def);
        }
        Ok(dict)
    }

    fn insert(&mut self, def: StitchDef) {
        match self.index.get(&def.name) {
            Some(&i) => self.defs[i] = def,
            None => {
                self.index.insert(def.name.clone(), self.defs.len());
                self.defs.push(def);
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Result<&StitchDef> {
        self.index
            .get(name)
            .map(|&i| &self.defs[i])
            .ok_or_else(|| Error::UnknownStitch(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &StitchDef> {
        self.defs.iter()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Highest complexity class over every stitch the pattern uses,
    /// including the cast-on.
    pub fn classify_pattern(&self, pattern: &Pattern) -> Result<ComplexityClass> {
        let mut class = self.lookup("co")?.complexity_class;
        for row in &pattern.rows {
            for instr in row {
                if let Some(stitch) = instr.stitch() {
                    class = class.max(self.lookup(stitch)?.complexity_class);
                }
            }
        }
        Ok(class)
    }
}

/// Base edge lengths in stitch units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeLengthConfig {
    pub base_yarn_length: f64,
    pub base_loop_length: f64,
    /// Extra yarn length per dropped stitch, as a multiple of the yarn edge:
    /// the yarn edge after `d` drops is scaled by `1 + drop_multiplier * d`.
    pub drop_multiplier: f64,
}

impl Default for EdgeLengthConfig {
    fn default() -> Self {
        EdgeLengthConfig {
            base_yarn_length: 0.75,
            base_loop_length: 1.0,
            drop_multiplier: 1.0,
        }
    }
}

impl EdgeLengthConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.base_yarn_length) || !positive(self.base_loop_length) {
            return Err(Error::InvalidParameter(
                "base edge lengths must be positive".into(),
            ));
        }
        if self.base_yarn_length >= self.base_loop_length {
            return Err(Error::InvalidParameter(format!(
                "stitches are taller than wide: yarn length {} must be below loop length {}",
                self.base_yarn_length, self.base_loop_length
            )));
        }
        if !(self.drop_multiplier.is_finite() && self.drop_multiplier >= 0.0) {
            return Err(Error::InvalidParameter(
                "drop multiplier must be non-negative".into(),
            ));
        }
        Ok(())
    }
}
