//! Named instances and instance files.

use std::fs;
use std::io::Read;
use std::path::Path;

use touriso::generators::{c3, circulant, circulant_default, lex_product, paley, random_tournament, transitive};
use touriso::Tournament;

use crate::CliError;

/// Parses a short instance description:
///
/// `c3`, `transitive:N`, `paley:Q`, `circulant:N`, `random:N` (seeded by
/// `seed`), or the path of a tournament file.
pub fn parse_spec(spec: &str, seed: u64) -> Result<Tournament, CliError> {
    let (name, arg) = match spec.split_once(':') {
        Some((name, arg)) => (name, Some(arg)),
        None => (spec, None),
    };
    let size = || -> Result<usize, CliError> {
        arg.ok_or_else(|| CliError::BadParameter(format!("'{spec}' needs a size, as in {name}:7")))?
            .parse()
            .map_err(|_| CliError::BadParameter(format!("bad size in '{spec}'")))
    };
    Ok(match name {
        "c3" if arg.is_none() => c3(),
        "transitive" => transitive(size()?),
        "paley" => paley(size()?)?,
        "circulant" => circulant_default(size()?)?,
        "random" => random_tournament(size()?, seed),
        _ if Path::new(spec).exists() => read_tournament(Path::new(spec))?,
        _ => return Err(CliError::BadParameter(format!("unknown instance '{spec}'"))),
    })
}

/// Reads a tournament file; `-` is standard input.
pub fn read_tournament(path: &Path) -> Result<Tournament, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(path.display().to_string(), e))?
    };
    Ok(text.parse()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    Random,
    Transitive,
    Paley,
    Circulant,
    Lexprod,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Transitive => "transitive",
            Family::Paley => "paley",
            Family::Circulant => "circulant",
            Family::Lexprod => "lexprod",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FamilyParams {
    pub n: Option<usize>,
    pub q: Option<usize>,
    pub residues: Option<Vec<usize>>,
    pub inner: Option<String>,
    pub outer: Option<String>,
}

pub fn generate(family: Family, p: &FamilyParams, seed: u64) -> Result<Tournament, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::BadParameter(format!("family {} needs --{flag}", family.name())))
    };
    Ok(match family {
        Family::Random => random_tournament(need(p.n, "n")?, seed),
        Family::Transitive => transitive(need(p.n, "n")?),
        Family::Paley => paley(need(p.q.or(p.n), "q")?)?,
        Family::Circulant => {
            let n = need(p.n, "n")?;
            match &p.residues {
                Some(r) => circulant(n, r)?,
                None => circulant_default(n)?,
            }
        }
        Family::Lexprod => {
            let outer = parse_spec(p.outer.as_deref().unwrap_or("c3"), seed)?;
            let inner = parse_spec(p.inner.as_deref().unwrap_or("c3"), seed)?;
            lex_product(&outer, &inner)
        }
    })
}

/// The member of `family` used by `bench` at size `n`. Lexicographic
/// products take `circulant:n` as the outer factor and `inner` (default
/// `c3`) inside.
pub fn bench_instance(family: Family, n: usize, inner: Option<&str>, seed: u64) -> Result<Tournament, CliError> {
    match family {
        Family::Lexprod => {
            let outer = circulant_default(n)?;
            let inner = parse_spec(inner.unwrap_or("c3"), seed)?;
            Ok(lex_product(&outer, &inner))
        }
        Family::Paley => Ok(paley(n)?),
        _ => generate(
            family,
            &FamilyParams {
                n: Some(n),
                ..FamilyParams::default()
            },
            seed,
        ),
    }
}
