use std::io::Read;
use std::sync::Arc;

use serde_json::{json, Value};
use wdparam::acceptance::{self, Bounds, CRITERIA};
use wdparam::converse::reconstruct;
use wdparam::factors::{big_gamma, big_gamma_ratfun, divisor_ratfun, gamma_divisor, gamma_ratio, l_factor};
use wdparam::integrality::{det_integral, integral_predicates};
use wdparam::json::{
    divisor_json, divisor_pairs, parse_classical, parse_ctx, parse_divisor, parse_json, parse_semisimple,
    parse_summand, parse_wd, semisimple_json, sl2_json, Node, SCHEMA_VERSION,
};
use wdparam::moduli::{count_points, dimension_probe, orbit_counts};
use wdparam::monodromy::{enumerate_orbits, expected_monodromy_dim, is_open, monodromy_space, pole_order_at_1, rank_sequence};
use wdparam::plancherel::{check_multiplicativity, mu_classical, mu_gl};
use wdparam::{Base, Divisor, Error, FieldCtx, IrredSummand, LeviData, Result, SemisimpleParam, WDParam};

pub struct Report {
    pub value: Value,
    /// Tabular view used by `--format csv`.
    pub rows: Option<Vec<Value>>,
}

pub enum Outcome {
    Ok(Report),
    /// A checked identity or equivalence failed; the report holds both sides.
    Failed(Report),
}

impl Outcome {
    fn from_check(holds: bool, value: Value, rows: Option<Vec<Value>>) -> Self {
        let r = Report { value, rows };
        if holds {
            Outcome::Ok(r)
        } else {
            Outcome::Failed(r)
        }
    }
}

fn ok(value: Value) -> Result<Outcome> {
    Ok(Outcome::Ok(Report { value, rows: None }))
}

pub struct Session {
    q: Option<u64>,
    m: Option<u64>,
    seed: u64,
    bounds: Bounds,
    input: Option<String>,
}

pub fn parse_bounds(text: &str) -> Result<Bounds> {
    let mut b = Bounds::default();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::InvalidInput(format!("--bounds: cannot parse {part:?}"));
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        let v: u64 = v.trim().parse().map_err(|_| bad())?;
        match k.trim() {
            "max_n" => b.max_n = v as usize,
            "max_M" | "max_m" => b.max_m = v,
            "exhaustive_n" => b.exhaustive_n = v as usize,
            "exhaustive_M" | "exhaustive_m" => b.exhaustive_m = v,
            "samples" => b.samples = Some(v as usize),
            other => return Err(Error::InvalidInput(format!("--bounds: unknown key {other:?}"))),
        }
    }
    if b.max_n == 0 || b.max_m == 0 || b.exhaustive_m == 0 {
        return Err(Error::InvalidInput("--bounds: max_n, max_M and exhaustive_M must be positive".into()));
    }
    Ok(b)
}

impl Session {
    pub fn new(q: Option<u64>, m: Option<u64>, seed: u64, bounds: Option<&str>, input: Option<String>) -> Result<Self> {
        let bounds = match bounds {
            Some(s) => parse_bounds(s)?,
            None => Bounds::default(),
        };
        Ok(Session { q, m, seed, bounds, input })
    }

    fn document(&self) -> Result<Value> {
        let mut text = String::new();
        match self.input.as_deref() {
            None | Some("-") => {
                std::io::stdin()
                    .read_to_string(&mut text)
                    .map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
            }
            Some(path) => {
                text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?;
            }
        }
        let doc = parse_json(&text)?;
        let root = Node::root(&doc);
        if !doc.is_object() {
            return root.fail("expected an object");
        }
        if let Some(v) = root.with_opt("schema_version", |v| v.str().map(str::to_owned))? {
            if v != SCHEMA_VERSION {
                return root.with("schema_version", |n| {
                    n.fail(format!("unsupported schema version {v:?}, expected {SCHEMA_VERSION:?}"))
                });
            }
        }
        Ok(doc)
    }

    fn ctx(&self, doc: &Value) -> Result<Arc<FieldCtx>> {
        parse_ctx(Node::root(doc), self.m, self.q)
    }

    pub fn factors(&self) -> Result<Outcome> {
        let doc = self.document()?;
        let ctx = self.ctx(&doc)?;
        let root = Node::root(&doc);
        let w = root.with("param", |n| parse_wd(&ctx, Base::F, n))?;
        let tau = root.with_opt("tau", |n| parse_semisimple(&ctx, w.base(), n))?;
        let tau = tau.unwrap_or_else(|| w.ss().clone());
        ok(json!({
            "dim": w.dim(),
            "param": sl2_json(&w.to_sl2()?),
            "L": l_factor(&w)?.to_string(),
            "gamma_ratio": gamma_ratio(&w)?.to_string(),
            "gamma_divisor": divisor_json(&gamma_divisor(&w)?),
            "tau": semisimple_json(&tau),
            "Gamma_divisor": divisor_pairs(&big_gamma(&tau, w.ss())?),
        }))
    }

    pub fn gamma_div(&self) -> Result<Outcome> {
        let doc = self.document()?;
        let ctx = self.ctx(&doc)?;
        let root = Node::root(&doc);
        let tau = root.with("tau", |n| parse_semisimple(&ctx, Base::F, n))?;
        let phi = root.with("phi", |n| parse_semisimple(&ctx, tau.base(), n))?;
        let d = big_gamma(&tau, &phi)?;
        let ratio = big_gamma_ratfun(&tau, &phi)?;
        let agrees = divisor_ratfun(&ctx, &d)? == ratio;
        let value = json!({
            "Gamma_divisor": divisor_pairs(&d),
            "divisor": divisor_json(&d),
            "ratio": ratio.to_string(),
            "divisor_matches_ratio": agrees,
        });
        Ok(Outcome::from_check(agrees, value, None))
    }

    pub fn reconstruct(&self) -> Result<Outcome> {
        let doc = self.document()?;
        let ctx = self.ctx(&doc)?;
        let root = Node::root(&doc);
        if root.has("hidden") {
            let hidden = root.with("hidden", |n| parse_semisimple(&ctx, Base::F, n))?;
            let n = root.with_opt("n", |n| n.uint())?.map(|n| n as usize).unwrap_or(hidden.dim());
            let target = hidden.clone();
            let oracle = move |tau: &IrredSummand| -> Result<Divisor> {
                let t = SemisimpleParam::new(target.ctx(), target.base(), vec![tau.clone()])?;
                big_gamma(&t, &target)
            };
            let got = reconstruct(&oracle, n, &ctx, hidden.base())?;
            let matches = got.is_isomorphic(&hidden);
            let value = json!({
                "mode": "self-test",
                "recovered": semisimple_json(&got),
                "hidden": semisimple_json(&hidden),
                "matches": matches,
            });
            return Ok(Outcome::from_check(matches, value, None));
        }
        let base = wdparam::json::parse_base(root, Base::F)?;
        let n = root.with("n", |n| n.uint())? as usize;
        let table = root.with("table", |t| {
            t.each(|e| {
                let tau = e.with("tau", |x| parse_summand(&ctx, base, x))?;
                let d = e.with("divisor", |x| parse_divisor(&ctx, x))?;
                Ok((tau, d))
            })
        })?;
        let oracle = move |tau: &IrredSummand| -> Result<Divisor> {
            table
                .iter()
                .find(|(t, _)| t == tau)
                .map(|(_, d)| d.clone())
                .ok_or_else(|| Error::InvalidInput(format!("the oracle table has no entry for τ = {tau}")))
        };
        let got = reconstruct(&oracle, n, &ctx, base)?;
        ok(json!({ "mode": "table", "recovered": semisimple_json(&got) }))
    }

    pub fn monodromy(&self, max_n: Option<usize>) -> Result<Outcome> {
        let doc = self.document()?;
        let ctx = self.ctx(&doc)?;
        let root = Node::root(&doc);
        let w = root.with("param", |n| parse_wd(&ctx, Base::F, n))?;
        let max_n = match max_n {
            Some(n) => n,
            None => root.with_opt("max_n", |n| n.uint())?.map(|n| n as usize).unwrap_or(self.bounds.max_n),
        };
        let r = w.ss().clone();
        let orbits = enumerate_orbits(&r, max_n)?;
        let best = orbits.iter().map(|o| o.rank_seq.clone()).max().unwrap_or_default();
        let mut rows = Vec::new();
        let mut open_count = 0;
        let mut equivalent = true;
        let mut open_orbit = Value::Null;
        for o in &orbits {
            let open = is_open(&r, &o.n)?;
            let pole = pole_order_at_1(&WDParam::new(r.clone(), o.n.clone())?)?;
            let lexmax = o.rank_seq == best;
            equivalent &= open == (pole == 0) && open == lexmax;
            open_count += open as usize;
            if open {
                open_orbit = sl2_json(&o.sl2);
            }
            rows.push(json!({
                "orbit": o.sl2.to_string(),
                "rank_seq": o.rank_seq,
                "is_open": open,
                "pole_order_at_1": pole,
                "lex_max": lexmax,
            }));
        }
        equivalent &= open_count == 1;
        let dim_v = monodromy_space(&r).len();
        let pole0 = pole_order_at_1(&WDParam::semisimple(r.clone()))?;
        let given = json!({
            "rank_seq": rank_sequence(w.n()),
            "is_open": is_open(&r, w.n())?,
            "pole_order_at_1": pole_order_at_1(&w)?,
        });
        let value = json!({
            "r": semisimple_json(&r),
            "dim_V": dim_v,
            "expected_dim_V": expected_monodromy_dim(&r),
            "pole_order_at_N0": pole0,
            "orbits": rows,
            "open_orbit": open_orbit,
            "given": given,
            "equivalence_holds": equivalent,
            "dim_matches_pole_order": dim_v == pole0,
        });
        Ok(Outcome::from_check(equivalent && dim_v == pole0, value, Some(rows)))
    }

    pub fn integrality(&self, ell: Option<u64>) -> Result<Outcome> {
        let doc = self.document()?;
        let ctx = self.ctx(&doc)?;
        let root = Node::root(&doc);
        let w = root.with("param", |n| parse_wd(&ctx, Base::F, n))?;
        let ell = match ell {
            Some(l) => l,
            None => root.with("ell", |n| n.uint())?,
        };
        let rep = integral_predicates(&w, ell)?;
        let det = det_integral(&w, ell)?;
        let discrete = w.to_sl2()?.segments().len() == 1;
        let holds = rep.consistent() && (!discrete || rep.integral == det);
        let value = json!({
            "ell": ell,
            "integral": rep.integral,
            "frob_ss_integral": rep.frob_ss_integral,
            "ss_integral": rep.ss_integral,
            "git_integral": rep.git_integral,
            "det_integral": det,
            "discrete": discrete,
            "consistent": holds,
        });
        Ok(Outcome::from_check(holds, value, None))
    }

    pub fn plancherel(&self) -> Result<Outcome> {
        let doc = self.document()?;
        let ctx = self.ctx(&doc)?;
        let root = Node::root(&doc);
        let op = root.with("op", |n| n.str().map(str::to_owned))?;
        match op.as_str() {
            "mu_gl" => {
                let tau = root.with("tau", |n| parse_semisimple(&ctx, Base::F, n))?;
                let tau2 = root.with("tau2", |n| parse_semisimple(&ctx, tau.base(), n))?;
                ok(json!({ "op": op, "mu": mu_gl(&tau, &tau2)?.to_string() }))
            }
            "mu_classical" => {
                let pi = root.with("pi", |n| parse_classical(&ctx, n))?;
                let tau = root.with("tau", |n| parse_semisimple(&ctx, pi.kind().base(), n))?;
                ok(json!({
                    "op": op,
                    "kind": pi.kind().r_name(),
                    "mu": mu_classical(&tau, &pi)?.to_string(),
                }))
            }
            "multiplicativity" => {
                let data = root.with("levi", |n| parse_levi(&ctx, n))?;
                let check = check_multiplicativity(&data)?;
                let value = json!({
                    "op": op,
                    "case": data.case(),
                    "holds": check.holds,
                    "lhs": check.lhs.to_string(),
                    "rhs": check.rhs.to_string(),
                });
                Ok(Outcome::from_check(check.holds, value, None))
            }
            other => root.with("op", |n| {
                n.fail(format!("unknown op {other:?}; expected mu_gl, mu_classical or multiplicativity"))
            }),
        }
    }

    pub fn moduli_count(&self, n: usize, ell: u64, orbits: bool, probe: &[u64]) -> Result<Outcome> {
        let q = self
            .q
            .ok_or_else(|| Error::InvalidInput("moduli-count needs --q".into()))?;
        if n == 0 {
            return Err(Error::InvalidInput("--n must be positive".into()));
        }
        let mut value = json!({ "count": count_points(n, q, ell)? });
        if orbits {
            value["orbits"] = serde_json::to_value(orbit_counts(n, q, ell)?).expect("serializable");
        }
        let mut rows = None;
        if !probe.is_empty() {
            let table = serde_json::to_value(dimension_probe(n, q, probe)?).expect("serializable");
            rows = table.as_array().cloned();
            value["probe"] = table;
        }
        Ok(Outcome::Ok(Report { value, rows }))
    }

    pub fn selftest(&self, only: &[u8]) -> Result<Outcome> {
        for id in only {
            if !CRITERIA.iter().any(|c| c.0 == *id) {
                return Err(Error::InvalidInput(format!("--only: no criterion {id}")));
            }
        }
        let mut results = Vec::new();
        for &(id, _) in CRITERIA.iter() {
            if !only.is_empty() && !only.contains(&id) {
                continue;
            }
            let r = acceptance::run(id, self.seed, &self.bounds);
            eprintln!("{r}");
            results.push(r);
        }
        let passed = results.iter().all(|r| r.passed);
        let rows: Vec<Value> = results
            .iter()
            .map(|r| serde_json::to_value(r).expect("serializable"))
            .collect();
        let value = json!({
            "seed": self.seed,
            "bounds": self.bounds,
            "passed": passed,
            "criteria": rows,
        });
        Ok(Outcome::from_check(passed, value, Some(rows)))
    }
}

fn parse_levi(ctx: &Arc<FieldCtx>, n: Node<'_>) -> Result<LeviData> {
    let case = n.with("case", |c| c.str().map(str::to_owned))?;
    let list = |key: &str, base: Base| n.with(key, |l| l.each(|x| parse_semisimple(ctx, base, x)));
    match case.as_str() {
        "classical" => {
            let pi = n.with("pi", |x| parse_classical(ctx, x))?;
            let base = pi.kind().base();
            Ok(LeviData::Classical {
                tau: n.with("tau", |x| parse_semisimple(ctx, base, x))?,
                rho_prime: n.with("rho_prime", |x| parse_classical(ctx, x))?,
                rhos: list("rhos", base)?,
                pi,
            })
        }
        "inducing" => {
            let pi = n.with("pi", |x| parse_classical(ctx, x))?;
            Ok(LeviData::Inducing {
                taus: list("taus", pi.kind().base())?,
                pi,
            })
        }
        "general" => {
            let base = wdparam::json::parse_base(n, Base::F)?;
            Ok(LeviData::General {
                taus: list("taus", base)?,
                taus2: list("taus2", base)?,
            })
        }
        other => n.with("case", |c| {
            c.fail(format!("unknown case {other:?}; expected classical, inducing or general"))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        let b = parse_bounds("max_n=3, max_M=8,samples=5").unwrap();
        assert_eq!((b.max_n, b.max_m, b.samples), (3, 8, Some(5)));
        assert!(parse_bounds("max_n").is_err());
        assert!(parse_bounds("colour=3").is_err());
        assert!(parse_bounds("max_n=0").is_err());
    }
}
