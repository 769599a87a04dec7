use std::fs;
use std::io::Read;

use anyhow::{bail, Context, Result};
use pcf_core::graph::Graph;
use pcf_core::kernel::{Coloring, ListAssignment};

/// Reads named inputs, each a file path or `-` for standard input (which can
/// be consumed only once per invocation).
#[derive(Default)]
pub struct Inputs {
    stdin_taken: bool,
}

impl Inputs {
    fn text(&mut self, what: &str, spec: &str) -> Result<String> {
        if spec == "-" {
            if self.stdin_taken {
                bail!("{what}: standard input is already used by another argument");
            }
            self.stdin_taken = true;
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).with_context(|| format!("{what}: reading standard input"))?;
            Ok(s)
        } else {
            fs::read_to_string(spec).with_context(|| format!("{what}: reading {spec}"))
        }
    }

    /// graph6 or edge list, chosen by the first non-empty line.
    pub fn graph(&mut self, spec: &str) -> Result<Graph> {
        let text = self.text("graph", spec)?;
        Graph::parse_auto(&text).with_context(|| format!("graph: parsing {spec}"))
    }

    /// `{"lists": [[…], …]}` with one list per vertex of `g`.
    pub fn lists(&mut self, spec: &str, g: &Graph) -> Result<ListAssignment> {
        let text = self.text("lists", spec)?;
        let lists = ListAssignment::from_json(&text).with_context(|| format!("lists: parsing {spec}"))?;
        if lists.len() != g.n() {
            bail!("lists: {} lists for a graph on {} vertices", lists.len(), g.n());
        }
        Ok(lists)
    }

    /// `{"colors": [c | null, …]}` with one entry per vertex of `g`.
    pub fn coloring(&mut self, spec: &str, g: &Graph) -> Result<Coloring> {
        let text = self.text("coloring", spec)?;
        let phi = Coloring::from_json(&text).with_context(|| format!("coloring: parsing {spec}"))?;
        if phi.len() != g.n() {
            bail!("coloring: {} entries for a graph on {} vertices", phi.len(), g.n());
        }
        Ok(phi)
    }
}
