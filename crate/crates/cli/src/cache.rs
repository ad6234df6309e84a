//! On-disk cache of transition graphs, keyed by polynomial, depth and
//! boundary rule.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use garsia_core::graph::TransitionGraph;
use garsia_core::numberfield::NumberFieldContext;

use crate::format;

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "GARSIA_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(GraphCache { dir })
    }

    /// Explicit directory if given, else the environment default.
    pub fn resolve(explicit: Option<&Path>) -> io::Result<Option<Self>> {
        match explicit {
            Some(p) => Self::new(p).map(Some),
            None => match std::env::var_os(CACHE_ENV) {
                Some(p) if !p.is_empty() => Self::new(PathBuf::from(p)).map(Some),
                _ => Ok(None),
            },
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, ctx: &NumberFieldContext, depth: Option<usize>) -> PathBuf {
        let key = format!(
            "graph-v1|{}|{}|{:?}",
            ctx.min_poly(),
            depth.map_or("complete".to_string(), |d| d.to_string()),
            ctx.config().boundary,
        );
        let name = hex::encode(Sha256::digest(key.as_bytes()));
        self.dir.join(format!("{name}.json"))
    }

    /// A cached graph, or `None` when absent or unreadable.
    pub fn load(&self, ctx: &NumberFieldContext, depth: Option<usize>) -> Option<TransitionGraph> {
        let text = fs::read_to_string(self.path(ctx, depth)).ok()?;
        let g = format::from_json(&text).ok()?;
        (g.min_poly() == ctx.min_poly() && !g.is_pruned()).then_some(g)
    }

    pub fn store(&self, ctx: &NumberFieldContext, depth: Option<usize>, g: &TransitionGraph) -> io::Result<()> {
        let text = format::to_json(g).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.to_string()))?;
        let path = self.path(ctx, depth);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }
}
