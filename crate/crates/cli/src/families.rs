use anyhow::{anyhow, bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lrw::graph::{self, Graph};
use lrw::ramsey::lex_power;

fn num(params: &[String], i: usize, what: &str) -> Result<usize> {
    let s = params.get(i).ok_or_else(|| anyhow!("missing parameter {what}"))?;
    s.parse().map_err(|e| anyhow!("bad {what} {s:?}: {e}"))
}

fn arity(family: &str, params: &[String], k: usize) -> Result<()> {
    if params.len() != k {
        bail!("family {family} takes {k} parameter(s), got {}", params.len());
    }
    Ok(())
}

pub fn generate(family: &str, params: &[String], seed: u64) -> Result<Graph> {
    let g = match family {
        "halfgraph" => {
            arity(family, params, 1)?;
            graph::half_graph(num(params, 0, "k")?)?
        }
        "lozin" | "lozin-tilde" => {
            arity(family, params, 2)?;
            graph::lozin_h(num(params, 0, "rows")?, num(params, 1, "cols")?, family == "lozin-tilde")?
        }
        "lexpower" => {
            arity(family, params, 2)?;
            lex_power(&graph::named(&params[0])?, num(params, 1, "m")?)?
        }
        "path" | "cycle" | "clique" | "empty" => {
            arity(family, params, 1)?;
            let n = num(params, 0, "n")?;
            match family {
                "path" => graph::path(n),
                "cycle" => graph::cycle(n),
                "clique" => graph::complete(n),
                _ => Graph::empty(n),
            }
        }
        "random" => {
            arity(family, params, 2)?;
            let n = num(params, 0, "n")?;
            let p: f64 = params[1].parse().map_err(|e| anyhow!("bad edge probability {:?}: {e}", params[1]))?;
            if !(0.0..=1.0).contains(&p) {
                bail!("edge probability {p} outside [0, 1]");
            }
            graph::random_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
        }
        other => bail!(
            "unknown family {other:?} (expected halfgraph, lozin, lozin-tilde, lexpower, path, cycle, clique, empty, random)"
        ),
    };
    Ok(g)
}
