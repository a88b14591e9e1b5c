use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ltl::{parse, Atom, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFormula {
    pub name: String,
    pub formula: Formula,
}

impl NamedFormula {
    pub fn new(name: impl Into<String>, formula: Formula) -> NamedFormula {
        NamedFormula {
            name: name.into(),
            formula,
        }
    }
}

/// Domain properties and goals over a declared set of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    name: String,
    atoms: Vec<Atom>,
    fusible: BTreeSet<Atom>,
    domain: Vec<NamedFormula>,
    goals: Vec<NamedFormula>,
}

fn scene_error(message: impl Into<String>) -> Error {
    Error::InvalidScene(message.into())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Scene {
    /// Builds a scene, checking that there is at least one goal, that every
    /// formula uses declared atoms only, that fusible atoms are declared and
    /// that names are unique. `fusible = None` makes every atom fusible.
    pub fn new(
        name: impl Into<String>,
        atoms: Vec<Atom>,
        fusible: Option<BTreeSet<Atom>>,
        domain: Vec<NamedFormula>,
        goals: Vec<NamedFormula>,
    ) -> Result<Scene> {
        if goals.is_empty() {
            return Err(scene_error("a scene needs at least one goal"));
        }
        let declared: BTreeSet<Atom> = atoms.iter().cloned().collect();
        if declared.len() != atoms.len() {
            return Err(scene_error("duplicate atom declaration"));
        }
        if let Some(bad) = atoms
            .iter()
            .find(|a| !is_identifier(a) || a.starts_with(['X', 'G', 'F']))
        {
            return Err(scene_error(format!("`{bad}` is not a valid atom name")));
        }
        let fusible = fusible.unwrap_or_else(|| declared.clone());
        if let Some(bad) = fusible.iter().find(|a| !declared.contains(*a)) {
            return Err(scene_error(format!("fusible atom `{bad}` is not declared")));
        }
        let mut names = BTreeSet::new();
        for nf in domain.iter().chain(&goals) {
            if !names.insert(nf.name.as_str()) {
                return Err(scene_error(format!("duplicate name `{}`", nf.name)));
            }
            if let Some(bad) = nf
                .formula
                .atoms()
                .into_iter()
                .find(|a| !declared.contains(a))
            {
                return Err(scene_error(format!(
                    "`{}` uses undeclared atom `{bad}`",
                    nf.name
                )));
            }
        }
        Ok(Scene {
            name: name.into(),
            atoms,
            fusible,
            domain,
            goals,
        })
    }

    /// Parses the scene file format.
    pub fn parse(text: &str) -> Result<Scene> {
        parse_scene(text)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn fusible(&self) -> &BTreeSet<Atom> {
        &self.fusible
    }

    pub fn domain(&self) -> &[NamedFormula] {
        &self.domain
    }

    pub fn goals(&self) -> &[NamedFormula] {
        &self.goals
    }

    pub fn goal(&self, i: usize) -> Result<&NamedFormula> {
        self.goals.get(i).ok_or(Error::GoalIndex {
            index: i,
            goals: self.goals.len(),
        })
    }

    pub fn goal_names(&self) -> Vec<String> {
        self.goals.iter().map(|g| g.name.clone()).collect()
    }

    pub fn with_fusible(&self, fusible: BTreeSet<Atom>) -> Result<Scene> {
        Scene::new(
            self.name.clone(),
            self.atoms.clone(),
            Some(fusible),
            self.domain.clone(),
            self.goals.clone(),
        )
    }

    /// Conjunction of the domain properties (`true` when there are none).
    pub fn dom(&self) -> Formula {
        Formula::conj(self.domain.iter().map(|d| d.formula.clone()))
    }

    /// Conjunction of all goals.
    pub fn all_goals(&self) -> Formula {
        Formula::conj(self.goals.iter().map(|g| g.formula.clone()))
    }

    /// Conjunction of all goals except goal `i` (`true` for one goal).
    pub fn goals_except(&self, i: usize) -> Formula {
        Formula::conj(
            self.goals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.formula.clone()),
        )
    }

    /// `Dom & G`.
    pub fn dom_and_goals(&self) -> Formula {
        Formula::conj(
            self.domain
                .iter()
                .chain(&self.goals)
                .map(|nf| nf.formula.clone()),
        )
    }

    /// `Dom & G` without goal `i`.
    pub fn dom_and_goals_except(&self, i: usize) -> Formula {
        Formula::conj(
            self.domain.iter().map(|d| d.formula.clone()).chain(
                self.goals
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g.formula.clone()),
            ),
        )
    }

    /// The negation of domain and goals, `!(Dom & G)`.
    pub fn ngd(&self) -> Formula {
        Formula::not(self.dom_and_goals())
    }

    /// The scene restricted to goals `i` and `j`; the other goals join the
    /// domain.
    pub fn reduced(&self, i: usize, j: usize) -> Result<Scene> {
        self.goal(i)?;
        self.goal(j)?;
        let mut domain = self.domain.clone();
        let mut goals = Vec::new();
        for (k, g) in self.goals.iter().enumerate() {
            if k == i || k == j {
                goals.push(g.clone());
            } else {
                domain.push(g.clone());
            }
        }
        Scene::new(
            self.name.clone(),
            self.atoms.clone(),
            Some(self.fusible.clone()),
            domain,
            goals,
        )
    }
}

fn parse_list(value: &str) -> Option<Vec<String>> {
    let inner = value.strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    Some(inner.split(',').map(|s| s.trim().to_string()).collect())
}

fn parse_string(value: &str) -> Option<&str> {
    let inner = value.strip_prefix('"')?.strip_suffix('"')?;
    (!inner.contains('"')).then_some(inner)
}

#[derive(PartialEq)]
enum Section {
    None,
    Scene,
    Domain,
    Goals,
}

fn parse_scene(text: &str) -> Result<Scene> {
    let mut section = Section::None;
    let mut name: Option<String> = None;
    let mut atoms: Option<Vec<Atom>> = None;
    let mut fusible: Option<BTreeSet<Atom>> = None;
    let mut domain = Vec::new();
    let mut goals = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Scene {
            line: line_no,
            message,
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') && !line.contains('=') {
            section = match &line[1..line.len() - 1] {
                "scene" => Section::Scene,
                "domain" => Section::Domain,
                "goals" => Section::Goals,
                other => return Err(err(format!("unknown section `[{other}]`"))),
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(err("expected `key = value`".into()));
        };
        let (key, value) = (key.trim(), value.trim());
        match section {
            Section::None => return Err(err("entry outside of a section".into())),
            Section::Scene => match key {
                "name" => {
                    let s = parse_string(value)
                        .ok_or_else(|| err("name must be a quoted string".into()))?;
                    if name.replace(s.to_string()).is_some() {
                        return Err(err("duplicate key `name`".into()));
                    }
                }
                "atoms" | "fusible" => {
                    let items = parse_list(value)
                        .ok_or_else(|| err(format!("{key} must be a list like [a, b]")))?;
                    if let Some(bad) = items.iter().find(|s| !is_identifier(s)) {
                        return Err(err(format!("`{bad}` is not an identifier")));
                    }
                    let items: Vec<Atom> = items.iter().map(|s| Atom::from(s.as_str())).collect();
                    let dup = if key == "atoms" {
                        atoms.replace(items).is_some()
                    } else {
                        fusible.replace(items.into_iter().collect()).is_some()
                    };
                    if dup {
                        return Err(err(format!("duplicate key `{key}`")));
                    }
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            },
            Section::Domain | Section::Goals => {
                if key.is_empty()
                    || !key
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
                {
                    return Err(err(format!("`{key}` is not a valid formula name")));
                }
                let text = parse_string(value)
                    .ok_or_else(|| err("formula must be a quoted string".into()))?;
                let formula = parse(text).map_err(|e| err(format!("in `{key}`: {e}")))?;
                let nf = NamedFormula::new(key, formula);
                if section == Section::Domain {
                    domain.push(nf);
                } else {
                    goals.push(nf);
                }
            }
        }
    }
    let name = name.ok_or_else(|| scene_error("missing `name` in [scene]"))?;
    let atoms = atoms.ok_or_else(|| scene_error("missing `atoms` in [scene]"))?;
    Scene::new(name, atoms, fusible, domain, goals)
}

/// Writes the scene in the file format accepted by [`Scene::parse`].
impl fmt::Display for Scene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &mut dyn Iterator<Item = &Atom>| {
            xs.map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
        };
        writeln!(f, "[scene]")?;
        writeln!(f, "name = \"{}\"", self.name)?;
        writeln!(f, "atoms = [{}]", list(&mut self.atoms.iter()))?;
        writeln!(f, "fusible = [{}]", list(&mut self.fusible.iter()))?;
        writeln!(f, "\n[domain]")?;
        for d in &self.domain {
            writeln!(f, "{} = \"{}\"", d.name, d.formula)?;
        }
        writeln!(f, "\n[goals]")?;
        for g in &self.goals {
            writeln!(f, "{} = \"{}\"", g.name, g.formula)?;
        }
        Ok(())
    }
}
