//! Suite files: one generator config per block of `key=value` lines, blocks
//! separated by blank lines, `#` starting a comment line.

use pdag_core::generators::{EdgeRule, GeneratorConfig, GraphStyle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct SuiteError {
    pub line: usize,
    pub msg: String,
}

#[derive(Default)]
struct Block {
    first_line: usize,
    n: Option<usize>,
    edges: Option<EdgeRule>,
    style: Option<GraphStyle>,
    k: Option<usize>,
    seed: Option<u64>,
    background_arcs: Option<(u32, u32)>,
}

impl Block {
    fn is_empty(&self) -> bool {
        self.n.is_none()
            && self.edges.is_none()
            && self.style.is_none()
            && self.k.is_none()
            && self.seed.is_none()
            && self.background_arcs.is_none()
    }

    fn finish(self, default_seed: u64) -> Result<GeneratorConfig, SuiteError> {
        let n = self.n.ok_or(SuiteError {
            line: self.first_line,
            msg: "config block is missing `n`".into(),
        })?;
        let mut cfg = GeneratorConfig::new(
            n,
            self.edges.unwrap_or(EdgeRule::ThreeN),
            self.style.unwrap_or(GraphStyle::Uniform),
            self.seed.unwrap_or(default_seed),
        );
        if let Some(k) = self.k {
            cfg = cfg.with_k(k);
        }
        if let Some((lo, hi)) = self.background_arcs {
            cfg = cfg.with_background_arcs(lo, hi);
        }
        Ok(cfg)
    }
}

/// `LO..HI`, inclusive on both ends.
pub fn parse_arc_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("reversed range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

pub fn parse_suite(src: &str, default_seed: u64) -> Result<Vec<GeneratorConfig>, SuiteError> {
    let mut configs = Vec::new();
    let mut block = Block::default();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !block.is_empty() {
                configs.push(std::mem::take(&mut block).finish(default_seed)?);
            }
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(SuiteError {
            line: line_no,
            msg: format!("expected key=value, got `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if block.is_empty() {
            block.first_line = line_no;
        }
        let err = |msg: String| SuiteError { line: line_no, msg };
        match key {
            "n" => block.n = Some(value.parse().map_err(|_| err(format!("bad n `{value}`")))?),
            "edges" => block.edges = Some(value.parse().map_err(err)?),
            "style" => block.style = Some(value.parse().map_err(err)?),
            "k" => block.k = Some(value.parse().map_err(|_| err(format!("bad k `{value}`")))?),
            "seed" => {
                block.seed = Some(value.parse().map_err(|_| err(format!("bad seed `{value}`")))?)
            }
            "background_arcs" => {
                block.background_arcs = Some(parse_arc_range(value).map_err(err)?)
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    if !block.is_empty() {
        configs.push(block.finish(default_seed)?);
    }
    Ok(configs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks() {
        let src = "# suite\nn=128\nedges=3n\nstyle=uniform\nseed=42\n\nn=64\nedges=20\nstyle=chordal\nk=5\n";
        let cfgs = parse_suite(src, 7).unwrap();
        assert_eq!(cfgs.len(), 2);
        assert_eq!(cfgs[0].n, 128);
        assert_eq!(cfgs[0].seed, 42);
        assert_eq!(cfgs[1].style, GraphStyle::Chordal);
        assert_eq!(cfgs[1].k, 5);
        assert_eq!(cfgs[1].seed, 7); // default seed fills the gap
    }

    #[test]
    fn rejects_bad_lines() {
        let err = parse_suite("n=16\nbogus\n", 0).unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_suite("edges=3n\n", 0).unwrap_err();
        assert!(err.msg.contains("missing `n`"));
        let err = parse_suite("n=16\nwat=1\n", 0).unwrap_err();
        assert!(err.msg.contains("unknown key"));
    }

    #[test]
    fn arc_ranges() {
        assert_eq!(parse_arc_range("2..5").unwrap(), (2, 5));
        assert!(parse_arc_range("5..2").is_err());
        assert!(parse_arc_range("x").is_err());
    }
}
