//! `compute <sub> key=value…`: one closed form, printed as `p/q = decimal`
//! when the value is rational and as a decimal otherwise.

use std::collections::BTreeMap;
use std::str::FromStr;

use definetti_core::heisenberg::{
    coherent_bound, coherent_bound_exact, delta_number_space_exact, epsilon_heisenberg,
    ExactHeisenbergTriple, HeisenbergTriple,
};
use definetti_core::su2_cg::delta_su2;
use definetti_core::symmetric::{bound_exponential, closed_form_sum, epsilon, SymTriple};
use definetti_core::weights::exact_radius;
use definetti_core::{BigRational, DeltaValue, Direction, TwoJ, Weight};

use crate::render::{decimal_f64, exact, parse_rational};
use crate::{Error, Result};

pub const SUBCOMMANDS: [&str; 8] = [
    "su2-delta",
    "sym-epsilon",
    "sym-bound",
    "heis-delta",
    "heis-epsilon",
    "coherent-bound",
    "exact-radius",
    "closed-form-sum",
];

/// Usage line for one subcommand.
pub fn usage(sub: &str) -> Option<&'static str> {
    Some(match sub {
        "su2-delta" => "su2-delta j1=<j> j2=<j> j=<j> r=<int> [m2=<m>, default j2] [dir=down|up]",
        "sym-epsilon" => "sym-epsilon n=<int> k=<int> r=<int> d=<int>",
        "sym-bound" => "sym-bound n=<int> k=<int> r=<int> d=<int> [which=headline|intermediate]",
        "heis-delta" => "heis-delta mu=<q> nu=<q> Delta=<int> r=<int>",
        "heis-epsilon" => "heis-epsilon mu=<q> nu=<q> Delta=<int> r=<int>",
        "coherent-bound" => "coherent-bound n=<int> k=<int> r=<int>",
        "exact-radius" => "exact-radius d=<int> n=<int> k=<int> l=<int> | lambda=a,b,.. mu=.. nu=..",
        "closed-form-sum" => "closed-form-sum n=<int> k=<int> r=<int>",
        _ => return None,
    })
}

struct Params<'a> {
    sub: &'a str,
    values: BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn parse(sub: &'a str, args: &[String], allowed: &[&str]) -> Result<Self> {
        let mut values = BTreeMap::new();
        for arg in args {
            let (key, value) = arg
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected key=value, got {arg:?}")))?;
            if !allowed.contains(&key) {
                return Err(Error::Invalid(format!("{sub} does not take {key:?}")));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(Error::Invalid(format!("{key} given twice")));
            }
        }
        Ok(Params { sub, values })
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Invalid(format!("{} needs {key}=", self.sub)))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| Error::Invalid(format!("cannot parse {key}={raw}")))
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        if self.values.contains_key(key) {
            self.get(key)
        } else {
            Ok(default)
        }
    }

    fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    fn rational(&self, key: &str) -> Result<BigRational> {
        let raw = self.raw(key)?;
        parse_rational(raw).ok_or_else(|| Error::Invalid(format!("cannot parse {key}={raw}")))
    }

    fn weight(&self, key: &str) -> Result<Weight> {
        let raw = self.raw(key)?;
        let entries = raw
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Invalid(format!("cannot parse {key}={raw}")))?;
        Ok(Weight::new(entries)?)
    }
}

fn render_value(v: &DeltaValue) -> String {
    match v {
        DeltaValue::Exact(q) => exact(q),
        DeltaValue::Approx(x) => decimal_f64(*x),
    }
}

fn sym_triple(p: &Params) -> Result<SymTriple> {
    Ok(SymTriple::new(p.get("n")?, p.get("k")?, p.get("r")?, p.get("d")?)?)
}

fn excitation(p: &Params) -> Result<u64> {
    match (p.has("Delta"), p.has("delta")) {
        (true, true) => Err(Error::Invalid("give Delta= once".into())),
        (_, true) => p.get("delta"),
        _ => p.get("Delta"),
    }
}

/// Exact triple when both `mu` and `nu` parse as rationals.
fn heis_triples(p: &Params) -> Result<(HeisenbergTriple, ExactHeisenbergTriple)> {
    let (mu, nu) = (p.rational("mu")?, p.rational("nu")?);
    let exact = ExactHeisenbergTriple::new(mu, nu, excitation(p)?, p.get("r")?)?;
    Ok((exact.to_real(), exact))
}

/// Runs one subcommand and returns the line to print.
pub fn compute(sub: &str, args: &[String]) -> Result<String> {
    let heis_keys: &[&str] = &["mu", "nu", "Delta", "delta", "r"];
    match sub {
        "su2-delta" => {
            let p = Params::parse(sub, args, &["j1", "j2", "j", "r", "m2", "dir"])?;
            let j2: TwoJ = p.get("j2")?;
            let direction = match p.get_or("dir", "down".to_string())?.as_str() {
                "down" => Direction::Down,
                "up" => Direction::Up,
                other => return Err(Error::Invalid(format!("dir must be down or up, got {other}"))),
            };
            let report = delta_su2(p.get("j1")?, j2, p.get("j")?, p.get_or("m2", j2)?, p.get("r")?, direction)?;
            Ok(render_value(&report.delta))
        }
        "sym-epsilon" => {
            let p = Params::parse(sub, args, &["n", "k", "r", "d"])?;
            Ok(exact(&epsilon(&sym_triple(&p)?)))
        }
        "sym-bound" => {
            let p = Params::parse(sub, args, &["n", "k", "r", "d", "which"])?;
            let bound = bound_exponential(&sym_triple(&p)?)?;
            match p.get_or("which", "headline".to_string())?.as_str() {
                "headline" => Ok(decimal_f64(bound.headline)),
                "intermediate" => Ok(decimal_f64(bound.intermediate)),
                other => Err(Error::Invalid(format!("which must be headline or intermediate, got {other}"))),
            }
        }
        "heis-delta" => {
            let p = Params::parse(sub, args, heis_keys)?;
            let (_, t) = heis_triples(&p)?;
            Ok(render_value(&delta_number_space_exact(&t).delta))
        }
        "heis-epsilon" => {
            let p = Params::parse(sub, args, heis_keys)?;
            let (real, t) = heis_triples(&p)?;
            if t.excitation() == 0 && t.r() == 0 {
                let deficit = delta_number_space_exact(&t).deficit();
                let deficit = deficit.exact().expect("exact path");
                return Ok(exact(&(deficit * BigRational::from_integer(2.into()))));
            }
            Ok(decimal_f64(epsilon_heisenberg(&real)))
        }
        "coherent-bound" => {
            let p = Params::parse(sub, args, &["n", "k", "r"])?;
            let (n, k, r) = (p.get("n")?, p.get("k")?, p.get("r")?);
            Ok(match coherent_bound_exact(n, k, r)? {
                Some(q) => exact(&q),
                None => decimal_f64(coherent_bound(n, k, r)?),
            })
        }
        "exact-radius" => {
            let p = Params::parse(sub, args, &["d", "n", "k", "l", "lambda", "mu", "nu"])?;
            let (lambda, mu, nu) = if p.has("lambda") || p.has("mu") || p.has("nu") {
                (p.weight("lambda")?, p.weight("mu")?, p.weight("nu")?)
            } else {
                two_row_triple(p.get("d")?, p.get("n")?, p.get("k")?, p.get("l")?)?
            };
            Ok(exact_radius(&lambda, &mu, &nu)?.to_string())
        }
        "closed-form-sum" => {
            let p = Params::parse(sub, args, &["n", "k", "r"])?;
            Ok(exact(&closed_form_sum(p.get("n")?, p.get("k")?, p.get("r")?)?))
        }
        _ => Err(Error::Invalid(format!(
            "unknown compute subcommand {sub:?}; expected one of {}",
            SUBCOMMANDS.join(", ")
        ))),
    }
}

/// `λ = (n-ℓ, ℓ, 0, …)`, `μ = (k, 0, …)`, `ν = (n-k, 0, …)`.
fn two_row_triple(d: usize, n: i64, k: i64, l: i64) -> Result<(Weight, Weight, Weight)> {
    if d < 2 || !(0 <= k && k <= n) || !(0 <= l && 2 * l <= n) {
        return Err(Error::Invalid(format!("need d >= 2, 0 <= k <= n, 0 <= 2l <= n; got d={d} n={n} k={k} l={l}")));
    }
    let row = |a: i64, b: i64| {
        let mut v = vec![0; d];
        v[0] = a;
        v[1] = b;
        Weight::new(v)
    };
    Ok((row(n - l, l)?, row(k, 0)?, row(n - k, 0)?))
}
