//! Family and bijection dispatch shared by the binary and the C ABI:
//! token strings in, serialized objects out. Size caps default to the
//! verified ranges; passing a max overrides them in either direction.

use crate::bijection::{
    bernardi_bonichon, iota, iota_inverse, lambda, lambda_tilde, phi, phi_prime,
    phi_prime_inverse,
};
use crate::book::{chi, chi_inverse, xi, xi_inverse, ArcDiagram};
use crate::error::{domain_err, parse_err, Error, Result};
use crate::mobile::{
    enumerate_mobiles, enumerate_ternary, mobile_from, mobile_to_ternary, ternary_to_mobile,
    Mobile, TernaryTree,
};
use crate::orientation::{enumerate_sepdecs, SchnyderWood, SeparatingDecomposition};
use crate::planar::{enumerate_bipolar, enumerate_quadrangulations, BipolarOrientation};
use crate::series::{count_m_intervals, count_maps_refined, count_maps_total};
use crate::tamari::{enumerate_g, enumerate_i, enumerate_r, enumerate_s};
use crate::tandem::{enumerate_tandem, sigma, sigma_inverse, tau_triple, TandemWalk};
use crate::walk::Walk;

fn nums(family: &str, params: &[String], arity: usize) -> Result<Vec<usize>> {
    if params.len() != arity {
        return Err(parse_err(format!(
            "{family} takes {arity} parameter(s), got {}",
            params.len()
        )));
    }
    params
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| parse_err(format!("bad parameter {p:?}")))
        })
        .collect()
}

fn check_cap(family: &str, size: usize, default_cap: usize, max: Option<usize>) -> Result<()> {
    let cap = max.unwrap_or(default_cap);
    if size > cap {
        return Err(Error::Cap(format!(
            "size {size} exceeds the cap {cap} for {family}; raise it with --max"
        )));
    }
    Ok(())
}

fn triple_block((low, mid, up): &(Walk, Walk, Walk)) -> String {
    format!("{low}\n{mid}\n{up}\n")
}

fn pair_block((a, b): &(Walk, Walk)) -> String {
    format!("{a}\n{b}\n")
}

pub fn ensure_line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Members of an enumerable family as serialized blocks, each ending in a
/// newline. Map-shaped objects come out in canonical labeling.
pub fn family_members(family: &str, params: &[String], max: Option<usize>) -> Result<Vec<String>> {
    match family {
        "G" => {
            let p = nums(family, params, 2)?;
            check_cap(family, p[0] + p[1], 5, max)?;
            Ok(enumerate_g(p[0], p[1])?.iter().map(triple_block).collect())
        }
        "R" => {
            let p = nums(family, params, 2)?;
            check_cap(family, p[0] + p[1], 5, max)?;
            Ok(enumerate_r(p[0], p[1]).iter().map(triple_block).collect())
        }
        "S" => {
            let p = nums(family, params, 2)?;
            check_cap(family, p[0] + p[1], 5, max)?;
            Ok(enumerate_s(p[0], p[1])?.iter().map(pair_block).collect())
        }
        "I" => {
            let p = nums(family, params, 1)?;
            check_cap(family, p[0], 5, max)?;
            Ok(enumerate_i(p[0])?.iter().map(pair_block).collect())
        }
        "Q" => {
            let p = nums(family, params, 2)?;
            check_cap(family, p[0] + p[1], 4, max)?;
            let mut out = Vec::new();
            for q in enumerate_quadrangulations(p[0], p[1])? {
                out.push(q.canonicalize()?.write_text());
            }
            Ok(out)
        }
        "Sep" => {
            let p = nums(family, params, 2)?;
            check_cap(family, p[0] + p[1], 4, max)?;
            let mut out = Vec::new();
            for q in enumerate_quadrangulations(p[0], p[1])? {
                for sd in enumerate_sepdecs(&q) {
                    out.push(sd.canonicalize()?.write_text());
                }
            }
            Ok(out)
        }
        "B" => {
            let p = if params.len() == 4 {
                nums(family, params, 4)?
            } else {
                nums(family, params, 2)?
            };
            check_cap(family, p[0] + p[1], 4, max)?;
            let ab = if p.len() == 4 { Some((p[2], p[3])) } else { None };
            let mut out = Vec::new();
            for b in enumerate_bipolar(p[0], p[1], ab)? {
                out.push(b.canonicalize()?.write_text());
            }
            Ok(out)
        }
        "W" => {
            let p = if params.len() == 4 {
                nums(family, params, 4)?
            } else {
                nums(family, params, 2)?
            };
            check_cap(family, p[0] + p[1], 4, max)?;
            let (i, j) = (p[0], p[1]);
            let classes: Vec<(usize, usize)> = if p.len() == 4 {
                vec![(p[2], p[3])]
            } else {
                (0..=i)
                    .flat_map(|a| (0..=i).map(move |b| (a, b)))
                    .collect()
            };
            let mut out = Vec::new();
            for (a, b) in classes {
                out.extend(enumerate_tandem(i, j, a, b).iter().map(|w| format!("{w}\n")));
            }
            Ok(out)
        }
        "mobiles" => {
            let p = nums(family, params, 1)?;
            check_cap(family, p[0], 3, max)?;
            Ok(enumerate_mobiles(p[0])?
                .iter()
                .map(|m| ensure_line(m.write_text()))
                .collect())
        }
        "ternary" => {
            let p = nums(family, params, 2)?;
            check_cap(family, p[0] + p[1], 3, max)?;
            Ok(enumerate_ternary(p[0], p[1])?
                .iter()
                .map(|t| ensure_line(t.write_text()))
                .collect())
        }
        "formulaN" | "formulaNij" | "formulaM" => Err(domain_err(format!(
            "{family} is a closed formula, not an enumerable family"
        ))),
        other => Err(parse_err(format!("unknown family {other:?}"))),
    }
}

/// The exact size of a family, as a decimal string (counts can exceed
/// machine integers for the formula families).
pub fn cmd_count(family: &str, params: &[String], max: Option<usize>) -> Result<String> {
    match family {
        "formulaN" => {
            let p = nums(family, params, 1)?;
            Ok(count_maps_total(p[0] as u64)?.to_string())
        }
        "formulaNij" => {
            let p = nums(family, params, 2)?;
            Ok(count_maps_refined(p[0] as u64, p[1] as u64)?.to_string())
        }
        "formulaM" => {
            let p = nums(family, params, 2)?;
            Ok(count_m_intervals(p[0] as u64, p[1] as u64)?.to_string())
        }
        _ => Ok(family_members(family, params, max)?.len().to_string()),
    }
}

pub fn parse_triple(text: &str) -> Result<(Walk, Walk, Walk)> {
    let mut lines: Vec<&str> = text.lines().map(str::trim).collect();
    while lines.len() > 3 && lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    if lines.len() != 3 {
        return Err(parse_err(format!(
            "expected three walk lines, got {}",
            lines.len()
        )));
    }
    Ok((lines[0].parse()?, lines[1].parse()?, lines[2].parse()?))
}

/// Applies a transfer map to a serialized object and returns the image in
/// its canonical serialization.
pub fn cmd_map(bijection: &str, text: &str) -> Result<String> {
    match bijection {
        "phi" => {
            let sd = SeparatingDecomposition::parse_text(text)?;
            Ok(triple_block(&phi(&sd)?))
        }
        "phiprime" => {
            let sd = SeparatingDecomposition::parse_text(text)?;
            Ok(triple_block(&phi_prime(&sd)?))
        }
        "phiprime_inv" => {
            let (low, mid, up) = parse_triple(text)?;
            Ok(phi_prime_inverse(&low, &mid, &up)?.canonicalize()?.write_text())
        }
        "chi" => {
            let sd = SeparatingDecomposition::parse_text(text)?;
            Ok(chi(&sd)?.write_text())
        }
        "chi_inv" => {
            let ad = ArcDiagram::parse_text(text)?;
            Ok(chi_inverse(&ad)?.canonicalize()?.write_text())
        }
        "xi" => {
            let ad = ArcDiagram::parse_text(text)?;
            Ok(triple_block(&xi(&ad)))
        }
        "xi_inv" => {
            let (low, mid, up) = parse_triple(text)?;
            Ok(xi_inverse(&low, &mid, &up)?.write_text())
        }
        "sigma" => {
            let (low, mid, up) = parse_triple(text)?;
            Ok(ensure_line(sigma(&low, &mid, &up)?.to_string()))
        }
        "sigma_inv" => {
            let w: TandemWalk = text.trim().parse()?;
            Ok(triple_block(&sigma_inverse(&w)?))
        }
        "iota" => {
            let b = BipolarOrientation::parse_text(text)?;
            Ok(iota(&b)?.canonicalize()?.write_text())
        }
        "iota_inv" => {
            let sd = SeparatingDecomposition::parse_text(text)?;
            Ok(iota_inverse(&sd)?.canonicalize()?.write_text())
        }
        "lambda" => {
            let b = BipolarOrientation::parse_text(text)?;
            Ok(ensure_line(lambda(&b)?.to_string()))
        }
        "lambdatilde" => {
            let b = BipolarOrientation::parse_text(text)?;
            Ok(ensure_line(lambda_tilde(&b)?.to_string()))
        }
        "tau_triple" => {
            let (low, mid, up) = parse_triple(text)?;
            Ok(triple_block(&tau_triple(&low, &mid, &up)?))
        }
        "tau_tandem" => {
            let w: TandemWalk = text.trim().parse()?;
            Ok(ensure_line(w.tau().to_string()))
        }
        "tau_sepdec" => {
            let sd = SeparatingDecomposition::parse_text(text)?;
            Ok(sd.tau()?.canonicalize()?.write_text())
        }
        "bb" => {
            let w = SchnyderWood::parse_text(text)?;
            let (gamma, gamma_prime) = bernardi_bonichon(&w)?;
            Ok(format!("{gamma}\n{gamma_prime}\n"))
        }
        "mobile" => {
            let w = SchnyderWood::parse_text(text)?;
            Ok(ensure_line(mobile_from(&w)?.mobile.write_text()))
        }
        "ternary" => {
            let mob = Mobile::parse_text(text)?;
            Ok(ensure_line(mobile_to_ternary(&mob)?.write_text()))
        }
        "ternary_inv" => {
            let t = TernaryTree::parse_text(text)?;
            Ok(ensure_line(ternary_to_mobile(&t)?.write_text()))
        }
        other => Err(parse_err(format!("unknown bijection {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_tokens_are_parse_errors() {
        assert_eq!(cmd_count("X", &[], None).unwrap_err().exit_code(), 3);
        assert_eq!(cmd_map("X", "").unwrap_err().exit_code(), 3);
    }

    #[test]
    fn count_through_the_dispatch() {
        let p = |t: &[&str]| t.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(cmd_count("G", &p(&["1", "1"]), None).unwrap(), "4");
        assert_eq!(cmd_count("formulaN", &p(&["3"]), None).unwrap(), "22");
        assert_eq!(cmd_count("formulaM", &p(&["1", "3"]), None).unwrap(), "13");
        assert_eq!(
            cmd_count("G", &p(&["4", "4"]), None).unwrap_err().exit_code(),
            2
        );
        // the cap lifts: (3,3) sits above every default yet matches the formula
        assert_eq!(
            cmd_count("G", &p(&["3", "3"]), Some(6)).unwrap(),
            count_maps_refined(3, 3).unwrap().to_string()
        );
    }

    #[test]
    fn map_chain_through_the_dispatch() {
        let triple = "EN\nEN\nNE\n";
        let sd = cmd_map("phiprime_inv", triple).unwrap();
        assert_eq!(cmd_map("phiprime", &sd).unwrap(), triple);
        let w = cmd_map("sigma", triple).unwrap();
        assert_eq!(w, "1; SE (-0,0)\n");
        assert_eq!(cmd_map("sigma_inv", &w).unwrap(), triple);
    }
}
