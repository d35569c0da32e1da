//! Parsing of `name:p1,p2,...` distribution specifications.

use heavytail::{EpdParams, ReferenceModel};

/// Either an EPD parameter triple or a reference model.
#[derive(Debug, Clone, Copy)]
pub enum DistSpec {
    Epd(EpdParams),
    Reference(ReferenceModel),
}

fn params(spec: &str, name: &str, n: usize) -> Result<Vec<f64>, String> {
    let body = spec
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix(':'))
        .ok_or_else(|| format!("expected `{name}:<{n} comma-separated numbers>`"))?;
    let values: Vec<f64> = body
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number `{tok}` in `{spec}`"))
        })
        .collect::<Result<_, _>>()?;
    if values.len() != n {
        return Err(format!(
            "`{name}` takes {n} parameter(s), got {}",
            values.len()
        ));
    }
    Ok(values)
}

/// Parse a reference model specification such as `student-t:4` or
/// `pareto-mixture:2,2`.
pub fn parse_model(spec: &str) -> Result<ReferenceModel, String> {
    let name = spec.split(':').next().unwrap_or("");
    let model = match name {
        "burr" => {
            let p = params(spec, "burr", 3)?;
            ReferenceModel::burr(p[0], p[1], p[2])
        }
        "frechet" => {
            let p = params(spec, "frechet", 1)?;
            ReferenceModel::frechet(p[0])
        }
        "gpd" => {
            let p = params(spec, "gpd", 2)?;
            ReferenceModel::gpd(p[0], p[1])
        }
        "student-t" => {
            let p = params(spec, "student-t", 1)?;
            ReferenceModel::student_t(p[0])
        }
        "pareto-mixture" => {
            let p = params(spec, "pareto-mixture", 2)?;
            ReferenceModel::pareto_mixture(p[0], p[1])
        }
        "loggamma" => {
            let p = params(spec, "loggamma", 2)?;
            ReferenceModel::log_gamma(p[0], p[1])
        }
        other => {
            return Err(format!(
                "unknown model `{other}` (expected one of burr, frechet, gpd, student-t, \
                 pareto-mixture, loggamma)"
            ))
        }
    };
    model.map_err(|e| e.to_string())
}

/// Parse a distribution specification: `epd:gamma,delta,tau` or any
/// reference model.
pub fn parse_dist(spec: &str) -> Result<DistSpec, String> {
    if spec.starts_with("epd") {
        let p = params(spec, "epd", 3)?;
        return EpdParams::new(p[0], p[1], p[2])
            .map(DistSpec::Epd)
            .map_err(|e| e.to_string());
    }
    parse_model(spec).map(DistSpec::Reference)
}

/// Parse a `start:stop:step` grid of threshold counts.
pub fn parse_k_grid(spec: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected `start:stop:step`, got `{spec}`"));
    }
    let parse = |tok: &str| {
        tok.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad grid number `{tok}` in `{spec}`"))
    };
    let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if start == 0 || step == 0 || stop < start {
        return Err(format!(
            "grid `{spec}` must satisfy 1 <= start <= stop and step >= 1"
        ));
    }
    Ok((start..=stop).step_by(step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_models() {
        assert!(matches!(
            parse_model("student-t:4").unwrap(),
            ReferenceModel::StudentT { .. }
        ));
        assert!(matches!(
            parse_model("pareto-mixture:2,2").unwrap(),
            ReferenceModel::ParetoMixture { .. }
        ));
        assert!(parse_model("cauchy:1").is_err());
        assert!(parse_model("frechet:0").is_err());
        assert!(parse_model("burr:1,-1").is_err());
    }

    #[test]
    fn parses_dists() {
        assert!(matches!(
            parse_dist("epd:1,0,-1").unwrap(),
            DistSpec::Epd(_)
        ));
        assert!(parse_dist("epd:1,-2,-1").is_err());
        assert!(matches!(
            parse_dist("gpd:1,1").unwrap(),
            DistSpec::Reference(_)
        ));
    }

    #[test]
    fn parses_grids() {
        assert_eq!(parse_k_grid("10:50:20").unwrap(), vec![10, 30, 50]);
        assert_eq!(parse_k_grid("10:200:10").unwrap().len(), 20);
        assert!(parse_k_grid("10:5:1").is_err());
        assert!(parse_k_grid("0:5:1").is_err());
        assert!(parse_k_grid("1:5:0").is_err());
        assert!(parse_k_grid("1:5").is_err());
    }
}
